use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::permgrp::{PermGroup, Permutation, StabChain};

use super::element::{GroupElement, Matrix};
use super::gf::SmallField;
use super::slp::SlpWord;

/// Points allowed in the permutation action induced by a matrix group.
pub const VECTOR_ORBIT_CAP: usize = 4_000_000;
const CHAIN_SEED: u64 = 0x6d32_32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverManifest {
    pub dir: PathBuf,
    pub name: String,
    pub order: BigUint,
    pub kernel_order: u64,
    /// Central extension (the default); otherwise the kernel need only be normal.
    pub kernel_central: bool,
    pub generators: String,
    pub relators: Option<String>,
    pub kernel: Option<String>,
    /// Directory name of the quotient group, next to this one.
    pub quotient: Option<String>,
    pub origin: Option<String>,
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

impl CoverManifest {
    pub fn parse(dir: &Path, text: &str) -> Result<Self> {
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("manifest line {}: expected key = value", i + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            const KEYS: [&str; 9] = [
                "name",
                "order",
                "kernel_order",
                "kernel_central",
                "generators",
                "relators",
                "kernel",
                "quotient",
                "origin",
            ];
            if !KEYS.contains(&k) {
                return Err(Error::Parse(format!("manifest line {}: unknown key `{k}`", i + 1)));
            }
            if fields.insert(k, v).is_some() {
                return Err(Error::Parse(format!("manifest line {}: duplicate key `{k}`", i + 1)));
            }
        }
        let need = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| Error::Parse(format!("manifest lacks `{k}`")))
        };
        let order = need("order")?
            .parse::<BigUint>()
            .map_err(|_| Error::Parse("manifest order is not an integer".into()))?;
        let kernel_order = match fields.get("kernel_order") {
            Some(v) => v
                .parse::<u64>()
                .ok()
                .filter(|&c| c >= 1)
                .ok_or_else(|| Error::Parse("manifest kernel_order is not a positive integer".into()))?,
            None => 1,
        };
        let kernel_central = match fields.get("kernel_central").copied() {
            None | Some("true") => true,
            Some("false") => false,
            Some(v) => return Err(Error::Parse(format!("kernel_central must be true or false, not `{v}`"))),
        };
        let opt = |k: &str| fields.get(k).map(|v| v.to_string());
        let m = CoverManifest {
            dir: dir.to_path_buf(),
            name: need("name")?.to_string(),
            order,
            kernel_order,
            kernel_central,
            generators: need("generators")?.to_string(),
            relators: opt("relators"),
            kernel: opt("kernel"),
            quotient: opt("quotient"),
            origin: opt("origin"),
        };
        if m.kernel_order > 1 && (m.kernel.is_none() || m.quotient.is_none()) {
            return Err(Error::Parse(format!("{}: a cover needs `kernel` and `quotient`", m.name)));
        }
        Ok(m)
    }

    pub fn load(dir: &Path) -> Result<Self> {
        Self::parse(dir, &read_text(&dir.join("manifest"))?)
    }
}

/// Generators in `P <degree> <count>` format: one line of 1-based images per generator.
pub fn parse_perm_file(text: &str) -> Result<Vec<Permutation>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().unwrap_or("").split_whitespace().collect();
    let (degree, count) = match header.as_slice() {
        ["P", d, c] => (
            d.parse::<usize>().map_err(|_| Error::Parse(format!("bad degree `{d}`")))?,
            c.parse::<usize>().map_err(|_| Error::Parse(format!("bad count `{c}`")))?,
        ),
        _ => return Err(Error::Parse("permutation file must start with `P <degree> <count>`".into())),
    };
    let mut gens = Vec::with_capacity(count);
    for line in lines.by_ref().take(count) {
        let images = line
            .split_whitespace()
            .map(|t| match t.parse::<u32>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(Error::Parse(format!("bad image `{t}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if images.len() != degree {
            return Err(Error::Parse(format!("expected {degree} images, found {}", images.len())));
        }
        gens.push(Permutation::from_images(images)?);
    }
    if gens.len() != count {
        return Err(Error::Parse(format!("expected {count} generators, found {}", gens.len())));
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing data after the last generator".into()));
    }
    Ok(gens)
}

/// Generators in `M <q> <dim>` format followed by row-major entries, `dim^2` per matrix.
pub fn parse_mat_file(text: &str) -> Result<Vec<Matrix>> {
    let mut toks = text.split_whitespace();
    if toks.next() != Some("M") {
        return Err(Error::Parse("matrix file must start with `M <q> <dim>`".into()));
    }
    let mut num = |what: &str| -> Result<u32> {
        let t = toks.next().ok_or_else(|| Error::Parse(format!("missing {what}")))?;
        t.parse::<u32>().map_err(|_| Error::Parse(format!("bad {what} `{t}`")))
    };
    let q = num("field order")?;
    let dim = num("dimension")? as usize;
    if dim == 0 {
        return Err(Error::Parse("dimension 0".into()));
    }
    let field = Arc::new(SmallField::new(q)?);
    let entries = toks
        .map(|t| t.parse::<u16>().map_err(|_| Error::Parse(format!("bad entry `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    if entries.is_empty() || entries.len() % (dim * dim) != 0 {
        return Err(Error::Parse(format!(
            "{} entries is not a positive multiple of {}",
            entries.len(),
            dim * dim
        )));
    }
    entries
        .chunks(dim * dim)
        .map(|c| Matrix::new(field.clone(), dim, c.to_vec()))
        .collect()
}

/// How elements are turned into permutations for Schreier–Sims.
#[derive(Clone, Debug)]
enum Action {
    Natural,
    /// Union of the orbits of the standard basis vectors.
    Vectors {
        points: Vec<Vec<u16>>,
        index: HashMap<Vec<u16>, u32>,
    },
}

/// A group given by generators, with a verified order, and for a cover a verified
/// central kernel and quotient correspondence.
#[derive(Clone, Debug)]
pub struct FaithfulGroup {
    manifest: CoverManifest,
    gens: Vec<GroupElement>,
    action: Action,
    perm_gens: Vec<Permutation>,
    chain: StabChain,
    kernel: Option<GroupElement>,
    kernel_word: Option<SlpWord>,
    relators: Option<SlpWord>,
}

impl FaithfulGroup {
    /// Build from explicit generators and check the order against `manifest.order`.
    pub fn from_generators(manifest: CoverManifest, gens: Vec<GroupElement>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Parse(format!("{}: no generators", manifest.name)));
        }
        let action = match &gens[0] {
            GroupElement::Perm(_) => Action::Natural,
            GroupElement::Mat(m) => vector_action(m.dim(), &gens)?,
        };
        let mut g = FaithfulGroup {
            manifest,
            gens,
            action,
            perm_gens: Vec::new(),
            chain: StabChain::new(1, &[], CHAIN_SEED),
            kernel: None,
            kernel_word: None,
            relators: None,
        };
        g.perm_gens = g.gens.iter().map(|x| g.to_perm(x)).collect::<Result<_>>()?;
        let degree = g.perm_gens[0].degree();
        if g.perm_gens.iter().any(|p| p.degree() != degree) {
            return Err(Error::Parse(format!("{}: generators of different degrees", g.manifest.name)));
        }
        g.chain = StabChain::new(degree, &g.perm_gens, CHAIN_SEED);
        let found = g.chain.order();
        if found != g.manifest.order {
            return Err(Error::OrderMismatch {
                expected: g.manifest.order.to_string(),
                found: found.to_string(),
            });
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.manifest.name
    }

    pub fn manifest(&self) -> &CoverManifest {
        &self.manifest
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn order_u64(&self) -> u64 {
        self.chain.order_u64().expect("group orders here fit in u64")
    }

    pub fn kernel_order(&self) -> u64 {
        self.manifest.kernel_order
    }

    /// The designated central kernel generator (identity for a group without kernel).
    pub fn kernel_generator(&self) -> GroupElement {
        self.kernel.clone().unwrap_or_else(|| self.gens[0].identity_like())
    }

    pub fn kernel_word(&self) -> Option<&SlpWord> {
        self.kernel_word.as_ref()
    }

    pub fn relators(&self) -> Option<&SlpWord> {
        self.relators.as_ref()
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    /// The group in its permutation action (natural, or on vectors for matrices).
    pub fn perm_group(&self) -> Result<PermGroup> {
        PermGroup::new(self.perm_gens[0].degree(), self.perm_gens.clone())
    }

    pub fn to_perm(&self, x: &GroupElement) -> Result<Permutation> {
        match (&self.action, x) {
            (Action::Natural, GroupElement::Perm(p)) => Ok(p.clone()),
            (Action::Vectors { points, index }, GroupElement::Mat(m)) => {
                let images = points
                    .iter()
                    .map(|v| {
                        index
                            .get(&m.act(v))
                            .copied()
                            .ok_or_else(|| Error::NotFound("matrix does not preserve the vector orbit".into()))
                    })
                    .collect::<Result<Vec<u32>>>()?;
                Permutation::from_images(images)
            }
            _ => Err(Error::Parse("element representation differs from the group's".into())),
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.to_perm(x).map(|p| self.chain.contains(&p)).unwrap_or(false)
    }

    /// The powers `z^0, ..., z^(c-1)` of the kernel generator.
    pub fn kernel_elements(&self) -> Vec<GroupElement> {
        let z = self.kernel_generator();
        let mut out = vec![z.identity_like()];
        for _ in 1..self.kernel_order() {
            let next = out.last().expect("nonempty").mul(&z);
            out.push(next);
        }
        out
    }

    /// Exponent `j` with `x = z^j`, if `x` lies in the kernel.
    pub fn kernel_exponent(&self, x: &GroupElement) -> Option<u64> {
        self.kernel_elements().iter().position(|k| k == x).map(|j| j as u64)
    }

    /// A word over the generators evaluating to `x`, from the stabilizer chain.
    pub fn word_for(&self, x: &GroupElement) -> Result<SlpWord> {
        let p = self.to_perm(x)?;
        super::words::chain_word(&self.chain, &p)
    }
}

fn vector_action(dim: usize, gens: &[GroupElement]) -> Result<Action> {
    let mats: Vec<&Matrix> = gens
        .iter()
        .map(|g| match g {
            GroupElement::Mat(m) if m.dim() == dim => Ok(m),
            _ => Err(Error::Parse("mixed generator representations".into())),
        })
        .collect::<Result<_>>()?;
    let mut points: Vec<Vec<u16>> = Vec::new();
    let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
    for i in 0..dim {
        let mut e = vec![0u16; dim];
        e[i] = 1;
        if index.contains_key(&e) {
            continue;
        }
        let start = points.len();
        index.insert(e.clone(), start as u32);
        points.push(e);
        let mut next = start;
        while next < points.len() {
            let v = points[next].clone();
            next += 1;
            for m in &mats {
                let w = m.act(&v);
                if !index.contains_key(&w) {
                    if points.len() >= VECTOR_ORBIT_CAP {
                        return Err(Error::CapExceeded {
                            what: "vector orbit",
                            cap: VECTOR_ORBIT_CAP,
                        });
                    }
                    index.insert(w.clone(), points.len() as u32);
                    points.push(w);
                }
            }
        }
    }
    Ok(Action::Vectors { points, index })
}

fn load_generators(m: &CoverManifest) -> Result<Vec<GroupElement>> {
    let path = m.dir.join(&m.generators);
    let text = read_text(&path)?;
    let ctx = |e: Error| match e {
        Error::Parse(s) => Error::Parse(format!("{}: {s}", path.display())),
        other => other,
    };
    if m.generators.ends_with(".mat") {
        Ok(parse_mat_file(&text).map_err(ctx)?.into_iter().map(GroupElement::Mat).collect())
    } else {
        Ok(parse_perm_file(&text).map_err(ctx)?.into_iter().map(GroupElement::Perm).collect())
    }
}

fn load_word(m: &CoverManifest, file: &str, inputs: usize) -> Result<SlpWord> {
    let path = m.dir.join(file);
    SlpWord::parse(&read_text(&path)?, inputs).map_err(|e| match e {
        Error::Parse(s) => Error::Parse(format!("{}: {s}", path.display())),
        other => other,
    })
}

/// Load `data_dir/<name>`; for a cover, also its quotient, and verify the kernel and
/// the quotient correspondence.
pub fn load_group(data_dir: &Path, name: &str) -> Result<FaithfulGroup> {
    let dir = data_dir.join(name);
    if !dir.is_dir() {
        return Err(Error::MissingData(format!("group directory {}", dir.display())));
    }
    let manifest = CoverManifest::load(&dir)?;
    let quotient = match &manifest.quotient {
        Some(q) => Some(load_group(data_dir, q)?),
        None => None,
    };
    let gens = load_generators(&manifest)?;
    load_with_quotient(manifest, gens, quotient.as_ref())
}

/// The verification half of [`load_group`], on already parsed generators.
pub fn load_with_quotient(
    manifest: CoverManifest,
    gens: Vec<GroupElement>,
    quotient: Option<&FaithfulGroup>,
) -> Result<FaithfulGroup> {
    let c = manifest.kernel_order;
    let relators = match &manifest.relators {
        Some(f) => Some(load_word(&manifest, f, gens.len())?),
        None => None,
    };
    let kernel_word = match &manifest.kernel {
        Some(f) => Some(load_word(&manifest, f, gens.len())?),
        None => None,
    };
    let mut group = FaithfulGroup::from_generators(manifest, gens)?;
    group.relators = relators;
    if let Some(w) = &kernel_word {
        let z = w.evaluate_one(&group.gens)?;
        if z.order() != c {
            return Err(Error::Kernel(format!("kernel generator has order {}, expected {c}", z.order())));
        }
        group.kernel = Some(z.clone());
        group.kernel_word = Some(w.clone());
        for g in &group.gens {
            let image = z.conj(g);
            let ok = if group.manifest.kernel_central {
                image == z
            } else {
                group.kernel_exponent(&image).is_some()
            };
            if !ok {
                let what = if group.manifest.kernel_central { "central" } else { "normal" };
                return Err(Error::Kernel(format!("kernel generator is not {what}")));
            }
        }
    }
    match quotient {
        Some(q) => check_correspondence(&group, q)?,
        None => {
            if c > 1 {
                return Err(Error::Kernel("a cover needs its quotient".into()));
            }
            if let Some(r) = &group.relators {
                for (i, v) in r.evaluate(&group.gens)?.iter().enumerate() {
                    if !v.is_identity() {
                        return Err(Error::Relator(format!("relator {} is not trivial in {}", i + 1, group.name())));
                    }
                }
            }
        }
    }
    Ok(group)
}

/// Cover generators map index-wise to the quotient's; the quotient's defining relators
/// must evaluate into the kernel of the cover. With `|cover| = c |quotient|` this makes
/// the correspondence an isomorphism `cover / <z> -> quotient`.
fn check_correspondence(cover: &FaithfulGroup, quotient: &FaithfulGroup) -> Result<()> {
    if cover.gens.len() != quotient.gens.len() {
        return Err(Error::Relator(format!(
            "{} has {} generators, quotient {} has {}",
            cover.name(),
            cover.gens.len(),
            quotient.name(),
            quotient.gens.len()
        )));
    }
    let expected = quotient.order() * BigUint::from(cover.kernel_order());
    if expected != cover.order() {
        return Err(Error::OrderMismatch {
            expected: expected.to_string(),
            found: cover.order().to_string(),
        });
    }
    let rel = quotient
        .relators
        .as_ref()
        .ok_or_else(|| Error::MissingData(format!("relators for {}", quotient.name())))?;
    for (i, v) in rel.evaluate(&quotient.gens)?.iter().enumerate() {
        if !v.is_identity() {
            return Err(Error::Relator(format!("relator {} is not trivial in {}", i + 1, quotient.name())));
        }
    }
    for (i, v) in rel.evaluate(&cover.gens)?.iter().enumerate() {
        if cover.kernel_exponent(v).is_none() {
            return Err(Error::Relator(format!(
                "relator {} evaluates outside the kernel of {}",
                i + 1,
                cover.name()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parsing() {
        let text = "name = X\norder = 6\ngenerators = gens.perm\n";
        let m = CoverManifest::parse(Path::new("."), text).unwrap();
        assert_eq!(m.kernel_order, 1);
        assert!(CoverManifest::parse(Path::new("."), "name = X\norder = 6\ngenerators = g\nbogus = 1").is_err());
        assert!(CoverManifest::parse(Path::new("."), "name = X\norder = 6").is_err());
        let cover = "name = 2.X\norder = 12\nkernel_order = 2\ngenerators = g\n";
        assert!(CoverManifest::parse(Path::new("."), cover).is_err());
    }

    #[test]
    fn perm_file() {
        let g = parse_perm_file("P 3 2\n2 3 1\n2 1 3\n").unwrap();
        assert_eq!(g.len(), 2);
        assert!(parse_perm_file("P 3 1\n2 3 1\n2 1 3\n").is_err());
        assert!(parse_perm_file("P 3 1\n2 3 1 4\n").is_err());
        assert!(parse_perm_file("P 3 1\n2 2 1\n").is_err());
    }

    #[test]
    fn matrix_group_order() {
        // SL(2,3) = 2.A4, order 24
        let gens = parse_mat_file("M 3 2\n1 1 0 1\n1 0 1 1\n").unwrap();
        let manifest = CoverManifest::parse(Path::new("."), "name = SL(2,3)\norder = 24\ngenerators = g.mat").unwrap();
        let g = FaithfulGroup::from_generators(manifest, gens.into_iter().map(GroupElement::Mat).collect()).unwrap();
        assert_eq!(g.order_u64(), 24);
        assert!(parse_mat_file("M 3 2\n1 1 0").is_err());
        assert!(parse_mat_file("M 3 2\n1 1 1 1").is_err());
    }
}
