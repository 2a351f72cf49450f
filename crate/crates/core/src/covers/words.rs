//! Words for group elements from stabilizer-chain factorization.

use crate::error::{Error, Result};
use crate::permgrp::{GenOrigin, Permutation, StabChain};

use super::slp::{SlpWord, Source};

/// One program with an output per element, sharing the strong-generator definitions.
pub fn chain_words(chain: &StabChain, elements: &[Permutation]) -> Result<SlpWord> {
    let factors = elements
        .iter()
        .map(|g| {
            chain
                .factor(g)
                .ok_or_else(|| Error::NotFound("element is not in the group".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let origins = chain.origins();
    // strong generators reachable from the factorizations
    let mut needed = vec![false; origins.len()];
    let mut stack: Vec<usize> = factors.iter().flatten().map(|&(s, _)| s).collect();
    while let Some(s) = stack.pop() {
        if needed[s] {
            continue;
        }
        needed[s] = true;
        if let GenOrigin::Word(w) = &origins[s] {
            stack.extend(w.iter().map(|&(t, _)| t));
        }
    }
    let mut slot = vec![usize::MAX; origins.len()];
    let mut defs = Vec::new();
    for (s, origin) in origins.iter().enumerate() {
        if !needed[s] {
            continue;
        }
        slot[s] = defs.len();
        defs.push(match origin {
            GenOrigin::Input(i) => vec![(Source::Input(*i), false)],
            GenOrigin::Word(w) => w.iter().map(|&(t, inv)| (Source::Earlier(slot[t]), inv)).collect(),
        });
    }
    let outputs: Vec<Vec<(Source, bool)>> = factors
        .iter()
        .map(|f| f.iter().map(|&(s, inv)| (Source::Earlier(slot[s]), inv)).collect())
        .collect();
    SlpWord::from_product_dag(chain.num_inputs(), &defs, &outputs)
}

pub fn chain_word(chain: &StabChain, g: &Permutation) -> Result<SlpWord> {
    chain_words(chain, std::slice::from_ref(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn words_evaluate_back() {
        let gens = vec![
            Permutation::parse(7, "(1,2,3,4,5,6,7)").unwrap(),
            Permutation::parse(7, "(1,2)").unwrap(),
        ];
        let chain = StabChain::new(7, &gens, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let elems: Vec<Permutation> = (0..5).map(|_| chain.random_element(&mut rng)).collect();
        let w = chain_words(&chain, &elems).unwrap();
        assert_eq!(w.evaluate(&gens).unwrap(), elems);
        let reparsed = SlpWord::parse(&w.to_string(), 2).unwrap();
        assert_eq!(reparsed.evaluate(&gens).unwrap(), elems);
        let outside = Permutation::parse(8, "(1,8)").unwrap();
        let chain8 = StabChain::new(8, &[Permutation::parse(8, "(1,2)").unwrap()], 3);
        assert!(chain_word(&chain8, &outside).is_err());
    }
}
