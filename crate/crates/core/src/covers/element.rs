use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::permgrp::Permutation;

use super::gf::SmallField;

/// Invertible square matrix over a small field, row-major, acting on row vectors.
#[derive(Clone)]
pub struct Matrix {
    field: Arc<SmallField>,
    dim: usize,
    entries: Vec<u16>,
}

impl Matrix {
    pub fn new(field: Arc<SmallField>, dim: usize, entries: Vec<u16>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Parse(format!("expected {} matrix entries, found {}", dim * dim, entries.len())));
        }
        if let Some(&e) = entries.iter().find(|&&e| e as u32 >= field.order()) {
            return Err(Error::Parse(format!("entry {e} is not an element of F_{}", field.order())));
        }
        let m = Matrix { field, dim, entries };
        if m.inverse_checked().is_none() {
            return Err(Error::Parse("matrix is singular".into()));
        }
        Ok(m)
    }

    pub fn identity(field: Arc<SmallField>, dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Matrix { field, dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<SmallField> {
        &self.field
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let (f, n) = (&self.field, self.dim);
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.entries[i * n + l];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[l * n + j];
                    if b != 0 {
                        out[i * n + j] = f.add(out[i * n + j], f.mul(a, b));
                    }
                }
            }
        }
        Matrix {
            field: self.field.clone(),
            dim: n,
            entries: out,
        }
    }

    /// `v * self`.
    pub fn act(&self, v: &[u16]) -> Vec<u16> {
        let (f, n) = (&self.field, self.dim);
        let mut out = vec![0u16; n];
        for (l, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..n {
                out[j] = f.add(out[j], f.mul(a, self.entries[l * n + j]));
            }
        }
        out
    }

    fn inverse_checked(&self) -> Option<Matrix> {
        let (f, n) = (&self.field, self.dim);
        let mut a = self.entries.clone();
        let mut inv = Matrix::identity(self.field.clone(), n).entries;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
                inv.swap(col * n + j, piv * n + j);
            }
            let s = f.inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], s);
                inv[col * n + j] = f.mul(inv[col * n + j], s);
            }
            for r in 0..n {
                let c = a[r * n + col];
                if r != col && c != 0 {
                    for j in 0..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(c, a[col * n + j]));
                        inv[r * n + j] = f.sub(inv[r * n + j], f.mul(c, inv[col * n + j]));
                    }
                }
            }
        }
        Some(Matrix {
            field: self.field.clone(),
            dim: n,
            entries: inv,
        })
    }

    pub fn inverse(&self) -> Matrix {
        self.inverse_checked().expect("matrices are invertible by construction")
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim;
        self.entries
            .iter()
            .enumerate()
            .all(|(i, &e)| e == u16::from(i / n == i % n))
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.entries == other.entries && self.field == other.field
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.entries.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix(F_{}, {}x{})", self.field.order(), self.dim, self.dim)
    }
}

/// A group element in whichever representation the data provides.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupElement {
    Perm(Permutation),
    Mat(Matrix),
}

impl GroupElement {
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(a.mul(b)),
            (GroupElement::Mat(a), GroupElement::Mat(b)) => GroupElement::Mat(a.mul(b)),
            _ => panic!("mixed permutation and matrix elements"),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Perm(a) => GroupElement::Perm(a.inverse()),
            GroupElement::Mat(a) => GroupElement::Mat(a.inverse()),
        }
    }

    pub fn identity_like(&self) -> GroupElement {
        match self {
            GroupElement::Perm(a) => GroupElement::Perm(Permutation::identity(a.degree())),
            GroupElement::Mat(a) => GroupElement::Mat(Matrix::identity(a.field.clone(), a.dim)),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Perm(a) => a.is_identity(),
            GroupElement::Mat(a) => a.is_identity(),
        }
    }

    pub fn pow(&self, e: i64) -> GroupElement {
        if let GroupElement::Perm(a) = self {
            return GroupElement::Perm(a.pow(e));
        }
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.identity_like();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// `other^-1 * self * other`
    pub fn conj(&self, other: &GroupElement) -> GroupElement {
        other.inverse().mul(self).mul(other)
    }

    pub fn commutes_with(&self, other: &GroupElement) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn order(&self) -> u64 {
        if let GroupElement::Perm(a) = self {
            return a.order();
        }
        let mut x = self.clone();
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul(self);
            n += 1;
        }
        n
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            GroupElement::Perm(a) => Some(a),
            GroupElement::Mat(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<SmallField> {
        Arc::new(SmallField::new(q).unwrap())
    }

    #[test]
    fn matrix_inverse_and_order() {
        let f = gf(3);
        let m = Matrix::new(f.clone(), 2, vec![1, 1, 0, 1]).unwrap();
        let g = GroupElement::Mat(m.clone());
        assert_eq!(g.order(), 3);
        assert!(g.mul(&g.inverse()).is_identity());
        assert_eq!(g.pow(-1), g.inverse());
        assert!(Matrix::new(f, 2, vec![1, 2, 2, 1]).is_err());
    }

    #[test]
    fn gf4_scalar() {
        let f = gf(4);
        // the generator of F_4^* has order 3
        let w = GroupElement::Mat(Matrix::new(f, 1, vec![2]).unwrap());
        assert_eq!(w.order(), 3);
    }

    #[test]
    fn act_is_right_action() {
        let f = gf(5);
        let a = Matrix::new(f.clone(), 2, vec![1, 2, 3, 4]).unwrap();
        let b = Matrix::new(f, 2, vec![0, 1, 1, 0]).unwrap();
        let v = vec![1, 3];
        assert_eq!(b.act(&a.act(&v)), a.mul(&b).act(&v));
    }
}
