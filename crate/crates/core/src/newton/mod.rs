//! `p`-adic Newton polygons and the orbit-size fragments they force on the
//! decomposition group's action on roots.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::arith::{format_rational, padic_valuation};
use crate::exactpoly::RatPolynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub slope: BigRational,
    pub length: usize,
}

impl Segment {
    pub fn new(num: i64, den: i64, length: usize) -> Self {
        Segment {
            slope: BigRational::new(num.into(), den.into()),
            length,
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.slope), self.length)
    }
}

/// Lower convex hull of `(j, v_p(c_j))`, left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub prime: u64,
    /// Every finite-valuation point.
    pub points: Vec<(usize, i64)>,
    /// Hull vertices.
    pub vertices: Vec<(usize, i64)>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    /// The hull's height at abscissa `j` (which must lie within it).
    pub fn height_at(&self, j: usize) -> BigRational {
        let mut prev = self.vertices[0];
        for &(x, y) in &self.vertices[1..] {
            if j <= x {
                let dx = (x - prev.0) as i64;
                let t = BigRational::new(((j - prev.0) as i64).into(), dx.into());
                return BigRational::from_integer(prev.1.into()) + t * BigRational::from_integer((y - prev.1).into());
            }
            prev = (x, y);
        }
        BigRational::from_integer(prev.1.into())
    }

    pub fn segments_string(&self) -> String {
        let parts: Vec<String> = self.segments.iter().map(|s| s.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

fn cross(o: (usize, i64), a: (usize, i64), b: (usize, i64)) -> i128 {
    let (ax, ay) = (a.0 as i128 - o.0 as i128, a.1 as i128 - o.1 as i128);
    let (bx, by) = (b.0 as i128 - o.0 as i128, b.1 as i128 - o.1 as i128);
    ax * by - ay * bx
}

pub fn newton_polygon(f: &RatPolynomial, p: u64) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("newton_polygon"));
    }
    let mut points = Vec::new();
    for (j, c) in f.coeffs().iter().enumerate() {
        if let Some(v) = padic_valuation(c, p)? {
            points.push((j, v));
        }
    }
    // monotone chain; collinear middle points are dropped so segments are merged
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let segments = hull
        .windows(2)
        .map(|w| Segment {
            slope: BigRational::new((w[1].1 - w[0].1).into(), ((w[1].0 - w[0].0) as i64).into()),
            length: w[1].0 - w[0].0,
        })
        .collect();
    Ok(NewtonPolygon {
        prime: p,
        points,
        vertices: hull,
        segments,
    })
}

/// What a segment guarantees about the orbits of inertia on the roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Fragment {
    /// A rational root of its own local factor: a fixed point.
    FixedPoint,
    /// An orbit whose size is divisible by the given slope denominator (`> 1`).
    DivisibleBy(u64),
    /// Ramification index 1; no constraint.
    Unconstrained,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fragment::FixedPoint => write!(f, "fixed point"),
            Fragment::DivisibleBy(b) => write!(f, "orbit of size divisible by {b}"),
            Fragment::Unconstrained => write!(f, "unconstrained"),
        }
    }
}

/// Fragments emitted segment by segment: a slope `-a/b` of length `l` yields `l/b`
/// fragments of orbit size divisible by `b`; a slope-0 segment of length exactly 1 is a
/// fixed point.
pub fn orbit_constraints(np: &NewtonPolygon) -> Result<Vec<Fragment>> {
    let mut out = Vec::new();
    for seg in &np.segments {
        let b = seg.slope.denom().abs();
        let b = b.to_u64().ok_or(Error::Internal("slope denominator overflow"))?;
        if seg.length as u64 % b != 0 {
            return Err(Error::IrregularPolygon {
                length: seg.length,
                denominator: b,
            });
        }
        let count = seg.length / b as usize;
        let fragment = if seg.slope.is_zero() && seg.length == 1 {
            Fragment::FixedPoint
        } else if b > 1 {
            Fragment::DivisibleBy(b)
        } else {
            Fragment::Unconstrained
        };
        out.extend(std::iter::repeat(fragment).take(count));
    }
    out.sort();
    Ok(out)
}

/// The orbit-size constraint a fragment multiset imposes on a subgroup's orbit lengths
/// on the roots: fixed points and orbits of the demanded divisibility must all be
/// realized by distinct orbits.
pub fn orbits_compatible(orbit_lengths: &[usize], fragments: &[Fragment]) -> bool {
    let fixed = fragments.iter().filter(|f| **f == Fragment::FixedPoint).count();
    let mut demands: Vec<u64> = fragments
        .iter()
        .filter_map(|f| match f {
            Fragment::DivisibleBy(b) => Some(*b),
            _ => None,
        })
        .collect();
    demands.sort_unstable_by(|a, b| b.cmp(a));
    let mut pool: Vec<usize> = orbit_lengths.to_vec();
    let ones = pool.iter().filter(|&&l| l == 1).count();
    if ones < fixed {
        return false;
    }
    let mut removed = 0;
    pool.retain(|&l| {
        if l == 1 && removed < fixed {
            removed += 1;
            false
        } else {
            true
        }
    });
    match_demands(&demands, &mut pool)
}

fn match_demands(demands: &[u64], pool: &mut Vec<usize>) -> bool {
    let Some((&b, rest)) = demands.split_first() else {
        return true;
    };
    for i in 0..pool.len() {
        if (pool[i] as u64).is_multiple_of(b) {
            let taken = pool.remove(i);
            let ok = match_demands(rest, pool);
            pool.insert(i, taken);
            if ok {
                return true;
            }
        }
    }
    false
}

/// Integer value helper for tests and reports.
pub fn slope_pair(s: &Segment) -> (BigInt, BigInt, usize) {
    (s.slope.numer().clone(), s.slope.denom().clone(), s.length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::arith::rat;
    use crate::exactpoly::Poly;

    fn poly(c: &[(i64, i64)]) -> RatPolynomial {
        Poly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn small_examples() {
        let np = newton_polygon(&poly(&[(-3, 1), (0, 1), (1, 1)]), 3).unwrap();
        assert_eq!(np.segments, vec![Segment::new(-1, 2, 2)]);
        assert_eq!(orbit_constraints(&np).unwrap(), vec![Fragment::DivisibleBy(2)]);
        let np = newton_polygon(&poly(&[(1, 1), (1, 1), (1, 1)]), 3).unwrap();
        assert_eq!(np.segments, vec![Segment::new(0, 1, 2)]);
        assert_eq!(orbit_constraints(&np).unwrap(), vec![Fragment::Unconstrained; 2]);
    }

    #[test]
    fn collinear_points_merge() {
        // valuations 2, 1, 0 at 3
        let np = newton_polygon(&poly(&[(9, 1), (3, 1), (1, 1)]), 3).unwrap();
        assert_eq!(np.segments, vec![Segment::new(-1, 1, 2)]);
        assert_eq!(np.vertices, vec![(0, 2), (2, 0)]);
    }

    #[test]
    fn leading_zero_coefficients_skipped() {
        // X^3 + 5X, p = 5: points (1,1), (3,0)
        let np = newton_polygon(&poly(&[(0, 1), (5, 1), (0, 1), (1, 1)]), 5).unwrap();
        assert_eq!(np.total_length(), 2);
        assert_eq!(np.segments, vec![Segment::new(-1, 2, 2)]);
    }

    #[test]
    fn irregular_polygon_reported() {
        let np = NewtonPolygon {
            prime: 3,
            points: vec![],
            vertices: vec![],
            segments: vec![Segment::new(-1, 3, 2)],
        };
        assert!(matches!(orbit_constraints(&np), Err(Error::IrregularPolygon { .. })));
    }

    #[test]
    fn compatibility() {
        let frags = vec![Fragment::FixedPoint, Fragment::DivisibleBy(3)];
        assert!(orbits_compatible(&[1, 3, 4], &frags));
        assert!(!orbits_compatible(&[4, 4], &frags));
        assert!(!orbits_compatible(&[1, 1, 6], &[Fragment::FixedPoint, Fragment::DivisibleBy(4)]));
    }
}
