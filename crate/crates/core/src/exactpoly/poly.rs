use std::ops::{Add, Mul, Neg, Sub};

use super::ring::Coefficient;

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of degree `i`.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^degree`
    pub fn monomial(c: C, degree: usize) -> Self {
        let mut coeffs = vec![C::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| C::from_i64(v)).collect())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn lc(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&C::from_i64(i as i64)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, at: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc.mul(at).add(c))
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Pseudo-remainder: `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    ///
    /// Panics on a zero divisor.
    pub fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("pseudo_rem by zero polynomial");
        let Some(mut rd) = self.degree() else {
            return Self::zero();
        };
        if rd < dd {
            return self.clone();
        }
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut steps = rd - dd + 1;
        while !rem.is_empty() && rd >= dd {
            let top = rem[rd].clone();
            for c in rem.iter_mut() {
                *c = c.mul(&lc);
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let idx = rd - dd + i;
                rem[idx] = rem[idx].sub(&top.mul(d));
            }
            steps -= 1;
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            match rem.len().checked_sub(1) {
                Some(d) => rd = d,
                None => break,
            }
        }
        let fix = lc.pow(steps as u32);
        Self::new(rem).scale(&fix)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder
    /// (or needs non-exact coefficient division).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        let Some(sd) = self.degree() else {
            return Some(Self::zero());
        };
        if sd < dd {
            return None;
        }
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![C::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = top.div_exact(&lc)?;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&q.mul(d));
            }
            quot[k] = q;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Self::new(quot))
    }

    /// Divide every coefficient exactly by `c`.
    pub fn div_scalar_exact(&self, c: &C) -> Option<Self> {
        self.coeffs
            .iter()
            .map(|a| a.div_exact(c))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect())
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Coefficient> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $method(self, rhs: Poly<C>) -> Poly<C> {
                $tr::$method(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coefficient> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    type P = Poly<BigInt>;

    #[test]
    fn trims_and_degrees() {
        let p = P::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(P::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn pseudo_remainder_identity() {
        // lc(b)^(deg a - deg b + 1) * a = q*b + r
        let a = P::from_i64s(&[3, 0, 1, 5]);
        let b = P::from_i64s(&[1, 2]);
        let r = a.pseudo_rem(&b);
        assert!(r.degree().unwrap_or(0) < 1);
        // r = 2^3 * a(-1/2)
        assert_eq!(r, P::from_i64s(&[8 * 3 + 2 - 5]));
    }

    #[test]
    fn exact_division() {
        let a = P::from_i64s(&[-1, 0, 1]);
        let b = P::from_i64s(&[-1, 1]);
        assert_eq!(a.div_exact(&b), Some(P::from_i64s(&[1, 1])));
        assert_eq!(P::from_i64s(&[1, 0, 1]).div_exact(&b), None);
    }

    #[test]
    fn compose_and_eval_agree() {
        let f = P::from_i64s(&[1, -3, 0, 2]);
        let g = P::from_i64s(&[2, 1]);
        let h = f.compose(&g);
        for x in -4..5 {
            let x = BigInt::from(x);
            assert_eq!(h.eval(&x), f.eval(&g.eval(&x)));
        }
    }
}
