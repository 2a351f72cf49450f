//! Resultants and discriminants by the subresultant pseudo-remainder sequence.
//!
//! Every division performed is exact in the coefficient domain, so the routines work
//! over `Z` as well as over `Z[t]` without passing to fractions.

use super::ring::Coefficient;
use super::Poly;
use crate::error::{Error, Result};

/// `Res(f, g) = lc(f)^deg(g) * prod g(a)` over the roots `a` of `f`.
pub fn resultant<C: Coefficient>(f: &Poly<C>, g: &Poly<C>) -> Result<C> {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        return Err(Error::ZeroPolynomial("resultant"));
    };
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign_negative = false;
    if df < dg {
        std::mem::swap(&mut a, &mut b);
        if df % 2 == 1 && dg % 2 == 1 {
            sign_negative = true;
        }
    }
    if b.degree() == Some(0) {
        let r = b.lc().pow(a.degree().unwrap() as u32);
        return Ok(if sign_negative { r.neg() } else { r });
    }

    let mut g_acc = C::one();
    let mut h_acc = C::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = g_acc.mul(&h_acc.pow(delta as u32));
        b = r
            .div_scalar_exact(&divisor)
            .ok_or(Error::Internal("subresultant division not exact"))?;
        g_acc = a.lc();
        h_acc = match delta {
            0 => h_acc,
            1 => g_acc.clone(),
            _ => g_acc
                .pow(delta as u32)
                .div_exact(&h_acc.pow(delta as u32 - 1))
                .ok_or(Error::Internal("subresultant h update not exact"))?,
        };
        match b.degree() {
            None => return Ok(C::zero()),
            Some(0) => break,
            Some(_) => continue,
        }
    }
    let da = a.degree().unwrap() as u32;
    let r = if da == 0 {
        h_acc
    } else {
        b.lc()
            .pow(da)
            .div_exact(&h_acc.pow(da - 1))
            .ok_or(Error::Internal("subresultant final step not exact"))?
    };
    Ok(if sign_negative { r.neg() } else { r })
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)` of a polynomial of degree `n >= 1`.
pub fn discriminant<C: Coefficient>(f: &Poly<C>) -> Result<C> {
    let n = f.degree().ok_or(Error::ZeroPolynomial("discriminant"))?;
    if n < 1 {
        return Err(Error::DegreeTooSmall { needed: 1, got: n });
    }
    if n == 1 {
        return Ok(C::one());
    }
    let res = resultant(f, &f.derivative())?;
    let d = res
        .div_exact(&f.lc())
        .ok_or(Error::Internal("discriminant: lc does not divide resultant"))?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { d.neg() } else { d })
}
