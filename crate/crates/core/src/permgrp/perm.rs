use std::fmt;

use crate::error::{Error, Result};

use super::cycle::CycleType;

/// Permutation of `{0, .., n-1}` stored as its image array.
///
/// Products compose left to right: `(a * b)(i) = b(a(i))`, the convention of
/// permutation-group software where points are acted on from the right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image list is not a bijection on 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees bijectivity.
    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    /// Build from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n || touched[a] {
                    return Err(Error::InvalidPermutation(format!("bad cycle entry {a}")));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parse either 1-based cycle notation `(1,2,3)(4,5)` (or `()`) or a whitespace
    /// separated 1-based image list.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = text;
            while !rest.is_empty() {
                let body_end = rest
                    .find(')')
                    .ok_or_else(|| Error::InvalidPermutation("unclosed cycle".into()))?;
                let body = rest[..body_end]
                    .strip_prefix('(')
                    .ok_or_else(|| Error::InvalidPermutation("expected `(`".into()))?;
                if !body.trim().is_empty() {
                    let cycle = body
                        .split(',')
                        .map(|s| parse_point(s, n))
                        .collect::<Result<Vec<_>>>()?;
                    cycles.push(cycle);
                }
                rest = rest[body_end + 1..].trim_start();
            }
            Self::from_cycles(n, &cycles)
        } else {
            let images = text
                .split_whitespace()
                .map(|s| parse_point(s, n).map(|v| v as u32))
                .collect::<Result<Vec<_>>>()?;
            if images.len() != n {
                return Err(Error::InvalidPermutation(format!(
                    "expected {n} images, found {}",
                    images.len()
                )));
            }
            Self::from_images(images)
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` first, then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `other^-1 * self * other`
    pub fn conj(&self, other: &Permutation) -> Permutation {
        // (g^-1 x g)(g(i)) = g(x(i))
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[v as usize];
        }
        Permutation { images }
    }

    /// Cycles of length at least 2, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.apply(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.apply(j);
            }
            parts.push(len);
        }
        CycleType::new(parts)
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().order()
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().is_even()
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.apply(i) == i
    }

    /// Write as 1-based cycle notation.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
                format!("({})", body.join(","))
            })
            .collect()
    }
}

fn parse_point(s: &str, n: usize) -> Result<usize> {
    let v: usize = s
        .trim()
        .parse()
        .map_err(|_| Error::InvalidPermutation(format!("bad point `{}`", s.trim())))?;
    if v == 0 || v > n {
        return Err(Error::InvalidPermutation(format!("point {v} outside 1..{n}")));
    }
    Ok(v - 1)
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_notations() {
        let a = Permutation::parse(5, "(1,2,3)(4,5)").unwrap();
        let b = Permutation::parse(5, "2 3 1 5 4").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_cycle_string(), "(1,2,3)(4,5)");
        assert!(Permutation::parse(5, "(1,2,6)").is_err());
        assert!(Permutation::parse(3, "1 1 2").is_err());
        assert!(Permutation::parse(3, "()").unwrap().is_identity());
    }

    #[test]
    fn composition_convention() {
        let a = Permutation::parse(3, "(1,2)").unwrap();
        let b = Permutation::parse(3, "(2,3)").unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).apply(0), 2);
        let c = a.conj(&b);
        assert_eq!(c, b.inverse().mul(&a).mul(&b));
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.pow(-3), a);
    }
}
