use std::path::PathBuf;

use m22v::covers::{
    class_lift_indices, find_complement, lift_subgroup, load_group, order6_survey, splits, splits_by_abelianization,
    splits_exhaustive, FaithfulGroup, GroupElement, Order6Kind, SlpWord,
};
use m22v::permgrp::{CycleType, Permutation, StabChain};
use m22v::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/groups")
}

fn group(name: &str) -> FaithfulGroup {
    load_group(&data(), name).unwrap()
}

fn word(name: &str, inputs: usize) -> SlpWord {
    let text = std::fs::read_to_string(data().join("m22/words").join(name)).unwrap();
    SlpWord::parse(&text, inputs).unwrap()
}

fn random_word(rng: &mut impl Rng, inputs: usize) -> SlpWord {
    let letters: Vec<(usize, i64)> = (0..rng.gen_range(5..30))
        .map(|_| (rng.gen_range(0..inputs), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    SlpWord::from_letters(inputs, &letters).unwrap()
}

#[test]
fn bundled_orders() {
    for (name, order, c) in [
        ("m22", 443_520u64, 1u64),
        ("aut-m22", 887_040, 1),
        ("2.m22", 887_040, 2),
        ("3.m22", 1_330_560, 3),
        ("4.m22", 1_774_080, 4),
        ("12.m22", 5_322_240, 12),
        ("3.aut-m22", 2_661_120, 3),
    ] {
        let g = group(name);
        assert_eq!(g.order_u64(), order, "{name}");
        assert_eq!(g.kernel_generator().order(), c, "{name}");
    }
}

#[test]
fn corrupt_generator_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    for name in ["m22", "2.m22"] {
        let dst = tmp.path().join(name);
        std::fs::create_dir_all(dst.join("words")).unwrap();
        for entry in walk(&data().join(name)) {
            let rel = entry.strip_prefix(data().join(name)).unwrap();
            std::fs::copy(&entry, dst.join(rel)).unwrap();
        }
    }
    // swap two images of the first generator of 2.M22
    let path = tmp.path().join("2.m22/gens.perm");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut images: Vec<&str> = lines[1].split(' ').collect();
    images.swap(0, 1);
    lines[1] = images.join(" ");
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    assert!(matches!(load_group(tmp.path(), "2.m22"), Err(Error::OrderMismatch { .. })));

    // garbage after the data
    std::fs::write(&path, text.clone() + "1 2 3\n").unwrap();
    assert!(matches!(load_group(tmp.path(), "2.m22"), Err(Error::Parse(_))));
    std::fs::write(&path, text).unwrap();
    assert!(load_group(tmp.path(), "2.m22").is_ok());
    assert!(matches!(load_group(tmp.path(), "nope"), Err(Error::MissingData(_))));
}

fn walk(dir: &std::path::Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn agl32_words_generate_order_1344() {
    let m22 = group("m22");
    let gens: Vec<Permutation> = word("agl32.slp", 2)
        .evaluate(m22.generators())
        .unwrap()
        .iter()
        .map(|g| g.as_perm().unwrap().clone())
        .collect();
    assert_eq!(StabChain::new(22, &gens, 5).order_u64(), Some(1344));
}

#[test]
fn trivial_subgroup_lifts_to_kernel() {
    for name in ["2.m22", "12.m22"] {
        let g = group(name);
        let identity = SlpWord::from_letters(2, &[]).unwrap();
        let lifted = lift_subgroup(&g, &identity, 1).unwrap();
        assert_eq!(lifted.elements.len() as u64, g.kernel_order());
        assert!(splits(&g, &identity, 1).unwrap());
    }
}

#[test]
fn agl32_splits_in_2m22() {
    let g = group("2.m22");
    let w = word("agl32.slp", 2);
    let lifted = lift_subgroup(&g, &w, 1344).unwrap();
    assert_eq!(lifted.elements.len(), 2688);
    assert!(splits_by_abelianization(&g, &lifted));
    let complement = find_complement(&g, &lifted).unwrap();
    let id = g.generators()[0].identity_like();
    let closed = m22v::covers::closure_capped(&complement, &id, 1344).unwrap();
    assert_eq!(closed.len(), 1344);
    assert!(!closed.contains(&g.kernel_generator()));
    // wrong order claimed for U
    assert!(matches!(lift_subgroup(&g, &w, 672), Err(Error::LiftSize { .. })));
}

#[test]
fn negative_controls() {
    let two = group("2.m22");
    let w = word("nonsplit960.slp", 2);
    let lifted = lift_subgroup(&two, &w, 960).unwrap();
    assert!(!splits_by_abelianization(&two, &lifted));
    assert!(!splits_exhaustive(&two, &lifted));

    // an element of order 4 all of whose lifts to 4.M22 have order 8
    let c4 = word("c4nonsplit.slp", 2);
    let four = group("4.m22");
    let x = c4.evaluate_one(four.generators()).unwrap();
    for z in four.kernel_elements() {
        assert_eq!(x.mul(&z).order(), 8);
    }
    assert!(!splits(&four, &c4, 4).unwrap());
    assert!(!splits(&group("12.m22"), &c4, 4).unwrap());
    assert!(splits(&two, &c4, 4).unwrap());
}

#[test]
fn order6_subgroups_split_in_every_cover() {
    let m22 = group("m22").perm_group().unwrap();
    let classes = order6_survey(&m22).unwrap();
    let kinds: Vec<(Order6Kind, usize)> = classes.iter().map(|c| (c.kind, c.orbit_size)).collect();
    assert_eq!(kinds.len(), 2);
    assert!(kinds.contains(&(Order6Kind::C6, 18480)));
    assert!(kinds.contains(&(Order6Kind::S3, 36960)));
    let covers: Vec<FaithfulGroup> = ["3.m22", "4.m22", "12.m22"].iter().map(|n| group(n)).collect();
    for class in &classes {
        let g = class.words.evaluate(m22.generators()).unwrap();
        assert_eq!(g, class.generators);
        let verdicts: Vec<bool> = covers.iter().map(|c| splits(c, &class.words, 6).unwrap()).collect();
        assert_eq!(verdicts, vec![true, true, true], "{:?}", class.kind);
        let lifted = lift_subgroup(&covers[2], &class.words, 6).unwrap();
        assert_eq!(lifted.elements.len(), 72);
    }
}

#[test]
fn survey_is_conjugation_closed_and_seed_independent() {
    let m22 = group("m22").perm_group().unwrap();
    let other = m22.clone().with_seed(99);
    let a = order6_survey(&m22).unwrap();
    let b = order6_survey(&other).unwrap();
    assert_eq!(a.len(), b.len());
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for class in &a {
        let g = m22.random_element(&mut rng);
        let conj: Vec<Permutation> = class.generators.iter().map(|x| x.conj(&g)).collect();
        // the conjugate has the same isomorphism type, so it lies in the orbit of that kind
        let kind = if conj.len() == 1 { Order6Kind::C6 } else { Order6Kind::S3 };
        assert!(a.iter().any(|c| c.kind == kind));
        assert_eq!(m22v::permgrp::closure(22, &conj, 10).unwrap().len(), 6);
    }
}

#[test]
fn splitting_is_conjugation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let four = group("4.m22");
    let two = group("2.m22");
    for (cover, file, u, expected) in [
        (&four, "c4nonsplit.slp", 4, false),
        (&two, "nonsplit960.slp", 960, false),
        (&two, "agl32.slp", 1344, true),
    ] {
        let w = word(file, 2);
        for _ in 0..3 {
            let h = random_word(&mut rng, 2);
            let parts: Vec<SlpWord> = w.split_outputs().iter().map(|p| p.conj(&h)).collect();
            let conj = SlpWord::join(&parts).unwrap();
            assert_eq!(splits(cover, &conj, u).unwrap(), expected, "{file}");
        }
    }
}

#[test]
fn abelianization_agrees_with_exhaustive_on_small_preimages() {
    let two = group("2.m22");
    let m22 = group("m22");
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 40 {
        // dihedral subgroups from pairs of involutions, and cyclic subgroups
        let mut gens = Vec::new();
        for _ in 0..rng.gen_range(1..3) {
            let w = random_word(&mut rng, 2);
            let n = w.evaluate_one(m22.generators()).unwrap().order();
            let e = if gens.is_empty() && rng.gen_bool(0.3) { 1 } else { n / 2 };
            if n % 2 == 1 && e != 1 {
                continue;
            }
            gens.push(w.pow(e.max(1) as i64));
        }
        if gens.is_empty() {
            continue;
        }
        let w = SlpWord::join(&gens).unwrap();
        let perms: Vec<Permutation> = w
            .evaluate(m22.generators())
            .unwrap()
            .iter()
            .map(|g| g.as_perm().unwrap().clone())
            .collect();
        let u = StabChain::new(22, &perms, 1).order_u64().unwrap() as usize;
        if u > 100 {
            continue;
        }
        let lifted = lift_subgroup(&two, &w, u).unwrap();
        assert_eq!(
            splits_by_abelianization(&two, &lifted),
            splits_exhaustive(&two, &lifted),
            "order {u}"
        );
        checked += 1;
    }
}

#[test]
fn quotient_correspondence_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cover = group("2.m22");
    let quotient = group("m22");
    for _ in 0..100 {
        let w = random_word(&mut rng, 2);
        let up = w.evaluate_one(cover.generators()).unwrap();
        let down = w.evaluate_one(quotient.generators()).unwrap();
        let projected = cover.word_for(&up).unwrap().evaluate_one(quotient.generators()).unwrap();
        assert_eq!(projected, down);
    }
}

#[test]
fn feit_indices_in_3aut() {
    let cover = group("3.aut-m22");
    let quotient = group("aut-m22");
    let specs = [
        (5, CycleType::parse("5^4.1^2").unwrap()),
        (2, CycleType::parse("2^7.1^8").unwrap()),
        (12, CycleType::parse("12.6.4").unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let lifts = class_lift_indices(&cover, &quotient, &specs, &mut rng, 1_000_000).unwrap();
    let f: Vec<u64> = lifts.iter().map(|l| l.f).collect();
    assert_eq!(f, vec![1, 3, 3]);
    assert_eq!(lifts[0].quotient_class_size, 887_040 / 10);
    assert_eq!(lifts[1].quotient_class_size, 887_040 / 2688);
    assert_eq!(lifts[2].quotient_class_size, 887_040 / 12);
    // the two lifts of the order-5 class outside its cover class have order 15
    assert_eq!(lifts[0].separated_exponents, vec![1, 2]);
    for l in &lifts {
        assert_eq!(3 % l.f, 0);
        let w = SlpWord::parse(&l.lift_word, 3).unwrap();
        let g: GroupElement = w.evaluate_one(cover.generators()).unwrap();
        assert_eq!(g.order(), l.order);
    }
}
