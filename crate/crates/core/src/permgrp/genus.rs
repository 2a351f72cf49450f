use crate::error::{Error, Result};

use super::cycle::CycleType;

/// `2g - 2 = -2n + sum_i (n - #cycles_i)` for a degree-`n` cover of the line.
pub fn rh_euler_characteristic(n: usize, types: &[CycleType]) -> Result<i64> {
    for t in types {
        if t.degree() != n {
            return Err(Error::InconsistentBranchData(format!(
                "cycle type {t} has degree {} but the cover has degree {n}",
                t.degree()
            )));
        }
    }
    Ok(-2 * n as i64 + types.iter().map(|t| t.index() as i64).sum::<i64>())
}

/// Genus from Riemann–Hurwitz; fails when `2g - 2` is odd or below `-2`.
pub fn rh_genus(n: usize, types: &[CycleType]) -> Result<u64> {
    let chi = rh_euler_characteristic(n, types)?;
    if chi % 2 != 0 || chi < -2 {
        return Err(Error::InconsistentBranchData(format!(
            "2g - 2 = {chi} does not give a genus"
        )));
    }
    Ok(((chi + 2) / 2) as u64)
}
