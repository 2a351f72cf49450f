//! Line-oriented text format for polynomials.
//!
//! ```text
//! P X 2
//! 0:15/1
//! 1:-7/1
//! 2:1/1
//! ```
//!
//! The header gives the variable name and degree (`-1` for zero); only nonzero
//! coefficients are listed, in increasing degree, as reduced fractions. A bivariate
//! polynomial is written as a `B <xvar> <tvar> <xdegree>` header followed, for every
//! nonzero `X`-coefficient, by an `X <j>` line and a nested univariate block in `t`.
//! Output is canonical, so canonical files round-trip byte for byte.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::arith::format_rational;
use super::{BiPolynomial, IntPolynomial, Poly, RatPolynomial};
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(format!("line {}: {}", line + 1, msg.into()))
}

pub fn write_rat(var: &str, f: &RatPolynomial) -> String {
    let mut out = String::new();
    write_rat_into(&mut out, var, f);
    out
}

fn write_rat_into(out: &mut String, var: &str, f: &RatPolynomial) {
    let deg = f.degree().map_or(-1, |d| d as i64);
    let _ = writeln!(out, "P {var} {deg}");
    for (i, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let _ = writeln!(out, "{i}:{}", format_rational(c));
        }
    }
}

pub fn write_int(var: &str, f: &IntPolynomial) -> String {
    write_rat(var, &f.map(|c| BigRational::from_integer(c.clone())))
}

pub fn write_bi(xvar: &str, tvar: &str, f: &BiPolynomial) -> String {
    let mut out = String::new();
    let deg = f.degree().map_or(-1, |d| d as i64);
    let _ = writeln!(out, "B {xvar} {tvar} {deg}");
    for (j, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let _ = writeln!(out, "X {j}");
        write_rat_into(&mut out, tvar, &c.map(|a| BigRational::from_integer(a.clone())));
    }
    out
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Err(Error::Parse("empty polynomial file".into()));
        }
        Ok(Lines {
            lines: body.split('\n').collect(),
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self) -> Result<&'a str> {
        let line = self
            .peek()
            .ok_or_else(|| parse_err(self.pos, "unexpected end of input"))?;
        self.pos += 1;
        Ok(line)
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.lines.len() {
            return Err(parse_err(self.pos, "trailing data"));
        }
        Ok(())
    }
}

fn parse_coeff_line(idx: usize, line: &str) -> Result<(usize, BigRational)> {
    let (deg, frac) = line
        .split_once(':')
        .ok_or_else(|| parse_err(idx, "expected `degree:num/den`"))?;
    let deg: usize = deg.parse().map_err(|_| parse_err(idx, "bad degree"))?;
    let (num, den) = frac
        .split_once('/')
        .ok_or_else(|| parse_err(idx, "expected `num/den`"))?;
    let num: BigInt = num.parse().map_err(|_| parse_err(idx, "bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| parse_err(idx, "bad denominator"))?;
    if den <= BigInt::zero() {
        return Err(parse_err(idx, "denominator must be positive"));
    }
    let q = BigRational::new(num.clone(), den.clone());
    if *q.numer() != num || *q.denom() != den {
        return Err(parse_err(idx, "fraction not in lowest terms"));
    }
    if q.is_zero() {
        return Err(parse_err(idx, "zero coefficients are not listed"));
    }
    Ok((deg, q))
}

fn parse_block(lines: &mut Lines<'_>) -> Result<(String, RatPolynomial)> {
    let header_idx = lines.pos;
    let header = lines.next()?;
    let parts: Vec<&str> = header.split(' ').collect();
    let [tag, var, deg] = parts[..] else {
        return Err(parse_err(header_idx, "expected `P <var> <degree>`"));
    };
    if tag != "P" || var.is_empty() {
        return Err(parse_err(header_idx, "expected `P <var> <degree>`"));
    }
    let deg: i64 = deg.parse().map_err(|_| parse_err(header_idx, "bad degree"))?;
    if deg < -1 {
        return Err(parse_err(header_idx, "bad degree"));
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut last: Option<usize> = None;
    while let Some(line) = lines.peek() {
        if !line.as_bytes().first().is_some_and(|b| b.is_ascii_digit()) {
            break;
        }
        let idx = lines.pos;
        let (d, q) = parse_coeff_line(idx, lines.next()?)?;
        if last.is_some_and(|l| d <= l) {
            return Err(parse_err(idx, "degrees must increase"));
        }
        last = Some(d);
        coeffs.resize(d + 1, BigRational::zero());
        coeffs[d] = q;
    }
    let actual = last.map_or(-1, |d| d as i64);
    if actual != deg {
        return Err(parse_err(header_idx, format!("header degree {deg} but data has {actual}")));
    }
    Ok((var.to_string(), Poly::new(coeffs)))
}

/// Parse a univariate block; returns the variable name and the polynomial.
pub fn parse_rat(text: &str) -> Result<(String, RatPolynomial)> {
    let mut lines = Lines::new(text)?;
    let out = parse_block(&mut lines)?;
    lines.finish()?;
    Ok(out)
}

fn to_integral(f: &RatPolynomial, idx: usize) -> Result<IntPolynomial> {
    if f.coeffs().iter().any(|c| !c.denom().is_one()) {
        return Err(parse_err(idx, "integer coefficients required"));
    }
    Ok(f.map(|c| c.numer().clone()))
}

pub fn parse_int(text: &str) -> Result<(String, IntPolynomial)> {
    let (var, f) = parse_rat(text)?;
    Ok((var, to_integral(&f, 0)?))
}

/// Parsed bivariate file: `(xvar, tvar, poly)`.
pub fn parse_bi(text: &str) -> Result<(String, String, BiPolynomial)> {
    let mut lines = Lines::new(text)?;
    let header = lines.next()?;
    let parts: Vec<&str> = header.split(' ').collect();
    let [tag, xvar, tvar, deg] = parts[..] else {
        return Err(parse_err(0, "expected `B <xvar> <tvar> <degree>`"));
    };
    if tag != "B" || xvar.is_empty() || tvar.is_empty() {
        return Err(parse_err(0, "expected `B <xvar> <tvar> <degree>`"));
    }
    let deg: i64 = deg.parse().map_err(|_| parse_err(0, "bad degree"))?;
    let mut coeffs: Vec<IntPolynomial> = Vec::new();
    let mut last: Option<usize> = None;
    while lines.peek().is_some() {
        let idx = lines.pos;
        let line = lines.next()?;
        let j: usize = line
            .strip_prefix("X ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(idx, "expected `X <degree>`"))?;
        if last.is_some_and(|l| j <= l) {
            return Err(parse_err(idx, "X degrees must increase"));
        }
        last = Some(j);
        let block_idx = lines.pos;
        let (var, c) = parse_block(&mut lines)?;
        if var != tvar {
            return Err(parse_err(block_idx, format!("expected variable {tvar}, found {var}")));
        }
        if c.is_zero() {
            return Err(parse_err(block_idx, "zero coefficients are not listed"));
        }
        coeffs.resize(j + 1, IntPolynomial::zero());
        coeffs[j] = to_integral(&c, block_idx)?;
    }
    lines.finish()?;
    let actual = last.map_or(-1, |d| d as i64);
    if actual != deg {
        return Err(parse_err(0, format!("header degree {deg} but data has {actual}")));
    }
    Ok((xvar.to_string(), tvar.to_string(), Poly::new(coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::arith::rat;

    #[test]
    fn univariate_roundtrip() {
        let f = Poly::new(vec![rat(12301875, 1), rat(0, 1), rat(-42189, 2), rat(1, 1)]);
        let text = write_rat("X", &f);
        assert_eq!(text, "P X 3\n0:12301875/1\n2:-42189/2\n3:1/1\n");
        let (var, g) = parse_rat(&text).unwrap();
        assert_eq!(var, "X");
        assert_eq!(g, f);
    }

    #[test]
    fn zero_polynomial() {
        let text = write_rat("s", &Poly::zero());
        assert_eq!(text, "P s -1\n");
        assert!(parse_rat(&text).unwrap().1.is_zero());
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_rat("P X 1\n1:1/1\n0:2/1\n").is_err());
        assert!(parse_rat("P X 1\n0:2/4\n1:1/1\n").is_err());
        assert!(parse_rat("P X 1\n1:1/1\njunk\n").is_err());
        assert!(parse_rat("P X 2\n1:1/1\n").is_err());
        assert!(parse_rat("P X 1\n1:0/1\n").is_err());
        assert!(parse_rat("P X 1\n1:1/1\n\n").is_err());
    }

    #[test]
    fn bivariate_roundtrip() {
        let f: BiPolynomial = Poly::new(vec![
            Poly::from_i64s(&[0, -1]),
            Poly::zero(),
            Poly::from_i64s(&[1]),
        ]);
        let text = write_bi("X", "t", &f);
        assert_eq!(text, "B X t 2\nX 0\nP t 1\n1:-1/1\nX 2\nP t 0\n0:1/1\n");
        assert_eq!(parse_bi(&text).unwrap().2, f);
        assert!(parse_bi("B X t 2\nX 0\nP s 1\n1:-1/1\nX 2\nP t 0\n0:1/1\n").is_err());
    }
}
