use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::perm::Permutation;

/// Multiset of cycle lengths, stored in decreasing order (fixed points included).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    /// Parse `12.6.4` or `5^4.1^2` style notation.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for piece in text.trim().split('.') {
            let (len, mult) = match piece.split_once('^') {
                Some((l, m)) => (l, m),
                None => (piece, "1"),
            };
            let bad = || Error::Parse(format!("bad cycle type `{text}`"));
            let len: usize = len.parse().map_err(|_| bad())?;
            let mult: usize = mult.parse().map_err(|_| bad())?;
            if len == 0 || mult == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat(len).take(mult));
        }
        Ok(CycleType::new(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_cycles(&self) -> usize {
        self.0.len()
    }

    /// `n - #cycles`, the contribution to the Riemann–Hurwitz sum.
    pub fn index(&self) -> usize {
        self.degree() - self.num_cycles()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &p| acc.lcm(&(p as u64)))
    }

    pub fn is_even(&self) -> bool {
        self.index() % 2 == 0
    }

    /// Canonical element: cycles laid out over `0..n` in decreasing length order.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 0;
        for &len in &self.0 {
            cycles.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        Permutation::from_cycles(self.degree(), &cycles).expect("disjoint cycles")
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let len = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == len {
                j += 1;
            }
            if j - i == 1 {
                pieces.push(len.to_string());
            } else {
                pieces.push(format!("{len}^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", pieces.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation_roundtrip() {
        let t = CycleType::parse("5^4.1^2").unwrap();
        assert_eq!(t.parts(), &[5, 5, 5, 5, 1, 1]);
        assert_eq!(t.to_string(), "5^4.1^2");
        assert_eq!(CycleType::parse("12.6.4").unwrap().order(), 12);
        assert!(CycleType::parse("3.^2").is_err());
    }

    #[test]
    fn parities() {
        assert!(!CycleType::parse("12.6.4").unwrap().is_even());
        assert!(CycleType::parse("5^4.1^2").unwrap().is_even());
        assert!(!CycleType::parse("2^7.1^8").unwrap().is_even());
    }

    #[test]
    fn representative_has_type() {
        let t = CycleType::parse("4.3.3.1").unwrap();
        assert_eq!(t.representative().cycle_type(), t);
    }
}
