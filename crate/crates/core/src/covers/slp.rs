//! Straight-line programs in the Atlas style. Registers `r1..rk` start out holding the
//! `k` generators; each line defines one register:
//!
//! ```text
//! r3 = r1 * r2
//! r4 = inv r3
//! r5 = pow r1 6
//! r6 = gen 2
//! out r4 r5
//! ```
//!
//! Without an `out` line the program returns its last register.

use std::fmt;

use crate::error::{Error, Result};
use crate::permgrp::Permutation;

use super::element::GroupElement;

pub trait SlpElement: Clone {
    fn slp_mul(&self, other: &Self) -> Self;
    fn slp_inv(&self) -> Self;
    fn slp_pow(&self, e: i64) -> Self;
}

impl SlpElement for Permutation {
    fn slp_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn slp_inv(&self) -> Self {
        self.inverse()
    }
    fn slp_pow(&self, e: i64) -> Self {
        self.pow(e)
    }
}

impl SlpElement for GroupElement {
    fn slp_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn slp_inv(&self) -> Self {
        self.inverse()
    }
    fn slp_pow(&self, e: i64) -> Self {
        self.pow(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Mul(usize, usize),
    Inv(usize),
    Pow(usize, i64),
    Gen(usize),
}

/// Registers are 0-based internally and printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlpWord {
    inputs: usize,
    /// `(destination, operation)`
    lines: Vec<(usize, Op)>,
    outputs: Vec<usize>,
}

fn register(tok: &str, lineno: usize) -> Result<usize> {
    tok.strip_prefix('r')
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .map(|n| n - 1)
        .ok_or_else(|| Error::Parse(format!("line {lineno}: `{tok}` is not a register")))
}

impl SlpWord {
    /// The word returning generator `i` (0-based).
    pub fn generator(inputs: usize, i: usize) -> Self {
        SlpWord {
            inputs,
            lines: Vec::new(),
            outputs: vec![i],
        }
    }

    pub fn parse(text: &str, inputs: usize) -> Result<Self> {
        let mut defined = vec![true; inputs];
        let mut lines = Vec::new();
        let mut outputs = None;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if outputs.is_some() {
                return Err(Error::Parse(format!("line {lineno}: instruction after `out`")));
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let used = |r: usize, defined: &[bool]| -> Result<usize> {
                if defined.get(r).copied().unwrap_or(false) {
                    Ok(r)
                } else {
                    Err(Error::UndefinedRegister(format!("line {lineno}: r{}", r + 1)))
                }
            };
            if toks[0] == "out" {
                if toks.len() < 2 {
                    return Err(Error::Parse(format!("line {lineno}: `out` needs registers")));
                }
                let outs = toks[1..]
                    .iter()
                    .map(|t| register(t, lineno).and_then(|r| used(r, &defined)))
                    .collect::<Result<Vec<_>>>()?;
                outputs = Some(outs);
                continue;
            }
            if toks.len() < 3 || toks[1] != "=" {
                return Err(Error::Parse(format!("line {lineno}: cannot parse `{line}`")));
            }
            let dst = register(toks[0], lineno)?;
            let op = match &toks[2..] {
                [a, "*", b] => Op::Mul(used(register(a, lineno)?, &defined)?, used(register(b, lineno)?, &defined)?),
                ["inv", a] => Op::Inv(used(register(a, lineno)?, &defined)?),
                ["pow", a, e] => {
                    let e = e
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("line {lineno}: bad exponent `{e}`")))?;
                    Op::Pow(used(register(a, lineno)?, &defined)?, e)
                }
                ["gen", k] => {
                    let k = k
                        .parse::<usize>()
                        .ok()
                        .filter(|&k| k >= 1 && k <= inputs)
                        .ok_or_else(|| Error::UndefinedRegister(format!("line {lineno}: generator {k}")))?;
                    Op::Gen(k - 1)
                }
                _ => return Err(Error::Parse(format!("line {lineno}: cannot parse `{line}`"))),
            };
            if defined.len() <= dst {
                defined.resize(dst + 1, false);
            }
            defined[dst] = true;
            lines.push((dst, op));
        }
        let outputs = match outputs {
            Some(o) => o,
            None => vec![lines
                .last()
                .map(|&(d, _)| d)
                .ok_or(Error::Parse("empty program".into()))?],
        };
        Ok(SlpWord { inputs, lines, outputs })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Evaluate all outputs.
    pub fn evaluate<T: SlpElement>(&self, gens: &[T]) -> Result<Vec<T>> {
        if gens.len() != self.inputs {
            return Err(Error::Parse(format!(
                "program expects {} generators, got {}",
                self.inputs,
                gens.len()
            )));
        }
        let mut regs: Vec<Option<T>> = gens.iter().cloned().map(Some).collect();
        let get = |regs: &[Option<T>], r: usize| -> Result<T> {
            regs.get(r)
                .and_then(|x| x.clone())
                .ok_or_else(|| Error::UndefinedRegister(format!("r{}", r + 1)))
        };
        for &(dst, op) in &self.lines {
            let v = match op {
                Op::Mul(a, b) => get(&regs, a)?.slp_mul(&get(&regs, b)?),
                Op::Inv(a) => get(&regs, a)?.slp_inv(),
                Op::Pow(a, e) => get(&regs, a)?.slp_pow(e),
                Op::Gen(k) => gens[k].clone(),
            };
            if regs.len() <= dst {
                regs.resize(dst + 1, None);
            }
            regs[dst] = Some(v);
        }
        self.outputs.iter().map(|&r| get(&regs, r)).collect()
    }

    /// Evaluate a single-output program.
    pub fn evaluate_one<T: SlpElement>(&self, gens: &[T]) -> Result<T> {
        let mut v = self.evaluate(gens)?;
        if v.len() != 1 {
            return Err(Error::Parse(format!("expected one output, program has {}", v.len())));
        }
        Ok(v.remove(0))
    }

    /// Split into one single-output program per output.
    pub fn split_outputs(&self) -> Vec<SlpWord> {
        self.outputs
            .iter()
            .map(|&o| SlpWord {
                inputs: self.inputs,
                lines: self.lines.clone(),
                outputs: vec![o],
            })
            .collect()
    }

    fn next_register(&self) -> usize {
        self.lines.iter().map(|&(d, _)| d + 1).max().unwrap_or(0).max(self.inputs)
    }

    fn append(&mut self, op: Op) -> usize {
        let dst = self.next_register();
        self.lines.push((dst, op));
        dst
    }

    /// The single output raised to the power `e`.
    pub fn pow(&self, e: i64) -> SlpWord {
        let mut w = self.clone();
        let out = w.single_output();
        let r = w.append(Op::Pow(out, e));
        w.outputs = vec![r];
        w
    }

    /// Product of the single outputs of `self` and `other`, registers of `other` renumbered.
    pub fn times(&self, other: &SlpWord) -> SlpWord {
        let mut w = self.clone();
        let left = w.single_output();
        let shift = w.next_register();
        // fresh copies of the generators, so `other` may overwrite its own inputs
        for k in 0..other.inputs {
            w.lines.push((shift + k, Op::Gen(k)));
        }
        let map = |r: usize| r + shift;
        for &(d, op) in &other.lines {
            let op = match op {
                Op::Mul(a, b) => Op::Mul(map(a), map(b)),
                Op::Inv(a) => Op::Inv(map(a)),
                Op::Pow(a, e) => Op::Pow(map(a), e),
                Op::Gen(k) => Op::Gen(k),
            };
            w.lines.push((map(d), op));
        }
        let right = map(other.single_output());
        let r = w.append(Op::Mul(left, right));
        w.outputs = vec![r];
        w
    }

    /// `other^-1 * self * other` on single-output programs.
    pub fn conj(&self, other: &SlpWord) -> SlpWord {
        other.pow(-1).times(self).times(other)
    }

    /// One program whose outputs are the single outputs of `words`, in order.
    pub fn join(words: &[SlpWord]) -> Result<SlpWord> {
        let first = words.first().ok_or(Error::Parse("nothing to join".into()))?;
        let mut w = SlpWord {
            inputs: first.inputs,
            lines: Vec::new(),
            outputs: Vec::new(),
        };
        for part in words {
            if part.inputs != w.inputs {
                return Err(Error::Parse("joined programs differ in generator count".into()));
            }
            let shift = w.next_register();
            for k in 0..part.inputs {
                w.lines.push((shift + k, Op::Gen(k)));
            }
            for &(d, op) in &part.lines {
                let op = match op {
                    Op::Mul(a, b) => Op::Mul(a + shift, b + shift),
                    Op::Inv(a) => Op::Inv(a + shift),
                    Op::Pow(a, e) => Op::Pow(a + shift, e),
                    Op::Gen(k) => Op::Gen(k),
                };
                w.lines.push((d + shift, op));
            }
            w.outputs.push(part.single_output() + shift);
        }
        Ok(w)
    }

    fn single_output(&self) -> usize {
        assert_eq!(self.outputs.len(), 1, "single-output program expected");
        self.outputs[0]
    }

    /// Program for a word given as `(generator, exponent)` letters.
    pub fn from_letters(inputs: usize, letters: &[(usize, i64)]) -> Result<SlpWord> {
        let mut w = SlpWord {
            inputs,
            lines: Vec::new(),
            outputs: Vec::new(),
        };
        let mut acc: Option<usize> = None;
        for &(g, e) in letters {
            if g >= inputs {
                return Err(Error::UndefinedRegister(format!("generator {}", g + 1)));
            }
            let term = if e == 1 { g } else { w.append(Op::Pow(g, e)) };
            acc = Some(match acc {
                None => term,
                Some(a) => w.append(Op::Mul(a, term)),
            });
        }
        let out = match acc {
            Some(a) => a,
            // empty word: g1 * g1^-1
            None if inputs > 0 => {
                let i = w.append(Op::Inv(0));
                w.append(Op::Mul(0, i))
            }
            None => return Err(Error::Parse("empty word over no generators".into())),
        };
        w.outputs = vec![out];
        Ok(w)
    }

    /// Program for a list of words over a chain of intermediate products:
    /// `defs[i]` defines intermediate `i` as a product of earlier intermediates or
    /// inputs, `(Ok(input) | Err(intermediate), inverted)`; outputs are products of
    /// intermediates.
    pub fn from_product_dag(inputs: usize, defs: &[Vec<(Source, bool)>], outputs: &[Vec<(Source, bool)>]) -> Result<SlpWord> {
        let mut w = SlpWord {
            inputs,
            lines: Vec::new(),
            outputs: Vec::new(),
        };
        let mut regs: Vec<usize> = Vec::with_capacity(defs.len());
        let mut inverses: std::collections::HashMap<usize, usize> = Default::default();
        let mut product = |w: &mut SlpWord, regs: &[usize], terms: &[(Source, bool)]| -> Result<usize> {
            let mut acc: Option<usize> = None;
            for &(src, inv) in terms {
                let r = match src {
                    Source::Input(i) if i < inputs => i,
                    Source::Earlier(j) if j < regs.len() => regs[j],
                    _ => return Err(Error::UndefinedRegister(format!("{src:?}"))),
                };
                let r = if inv {
                    *inverses.entry(r).or_insert_with(|| w.append(Op::Inv(r)))
                } else {
                    r
                };
                acc = Some(match acc {
                    None => r,
                    Some(a) => w.append(Op::Mul(a, r)),
                });
            }
            match acc {
                Some(a) => Ok(a),
                None => {
                    let i = w.append(Op::Inv(0));
                    Ok(w.append(Op::Mul(0, i)))
                }
            }
        };
        for d in defs {
            let r = product(&mut w, &regs, d)?;
            regs.push(r);
        }
        for o in outputs {
            let r = product(&mut w, &regs, o)?;
            w.outputs.push(r);
        }
        Ok(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Input(usize),
    Earlier(usize),
}

impl fmt::Display for SlpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(d, op) in &self.lines {
            match op {
                Op::Mul(a, b) => writeln!(f, "r{} = r{} * r{}", d + 1, a + 1, b + 1)?,
                Op::Inv(a) => writeln!(f, "r{} = inv r{}", d + 1, a + 1)?,
                Op::Pow(a, e) => writeln!(f, "r{} = pow r{} {}", d + 1, a + 1, e)?,
                Op::Gen(k) => writeln!(f, "r{} = gen {}", d + 1, k + 1)?,
            }
        }
        write!(f, "out")?;
        for o in &self.outputs {
            write!(f, " r{}", o + 1)?;
        }
        writeln!(f)
    }
}
