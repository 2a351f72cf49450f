//! Registry of individually checkable claims, each producing a [`ClaimReport`].

mod pipelines;

use std::cell::{OnceCell, RefCell};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::rc::Rc;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::covers::{load_group, FaithfulGroup};
use crate::elkies::{CountReport, LAMBDA};
use crate::error::{Error, Result};
use crate::exactpoly::bundled::{load_bipoly, load_poly};
use crate::exactpoly::{BiPolynomial, RatPolynomial};
use crate::permgrp::DEFAULT_CLASS_CAP;
use crate::special::BranchReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Unverified,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unverified => "UNVERIFIED",
        })
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Asserted by the published computation under test.
    Stated,
    /// Fixed by an independent computation or a standard fact.
    Derived,
    /// No reference value applies (e.g. a non-default λ).
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub value: Value,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub status: Status,
    pub computed: Value,
    pub expected: Expected,
    pub runtime_ms: u64,
    pub seed: u64,
}

impl ClaimReport {
    /// One JSON line; `runtime_ms` is the only field that varies between identical runs.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub data_dir: PathBuf,
    pub threads: usize,
    pub seed: u64,
    pub lambda: u64,
    /// Good primes at which each branch-point pattern is confirmed.
    pub branch_primes: usize,
    /// Primes sampled for the Frobenius census of the degree-8 factor.
    pub census_primes: usize,
    /// Largest conjugacy class a breadth-first search may enumerate.
    pub class_cap: usize,
    pub checkpoint: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            data_dir: PathBuf::from("data"),
            threads: 1,
            seed: 0,
            lambda: LAMBDA,
            branch_primes: 20,
            census_primes: 500,
            class_cap: DEFAULT_CLASS_CAP,
            checkpoint: None,
        }
    }
}

impl Config {
    /// Set one `key = value` entry as found in a configuration file.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = |v: &str| -> Result<u64> {
            v.parse()
                .map_err(|_| Error::Parse(format!("`{key}` expects a non-negative integer, got `{v}`")))
        };
        match key {
            "data" | "data_dir" => self.data_dir = PathBuf::from(value),
            "threads" => self.threads = num(value)?.max(1) as usize,
            "seed" => self.seed = num(value)?,
            "lambda" => self.lambda = num(value)?,
            "branch_primes" => self.branch_primes = num(value)? as usize,
            "census_primes" | "sample_primes" => self.census_primes = num(value)? as usize,
            "class_cap" => self.class_cap = num(value)? as usize,
            "checkpoint" => self.checkpoint = Some(PathBuf::from(value)),
            _ => return Err(Error::Parse(format!("unknown configuration key `{key}`"))),
        }
        Ok(())
    }

    /// Apply a `key = value` file; blank lines and `#` comments are skipped.
    pub fn apply_file_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config line {}: `{raw}` has no `=`", i + 1)))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }
}

pub struct ClaimInfo {
    pub id: &'static str,
    pub description: &'static str,
    pub expected_runtime: &'static str,
}

const REGISTRY: &[ClaimInfo] = &[
    ClaimInfo {
        id: "branch-data",
        description: "branch points of f over Q(t) with inertia cycle types 5^4.1^2, 2^7.1^8, 12.6.4; index sum 42, genus 0",
        expected_runtime: "1 s",
    },
    ClaimInfo {
        id: "msub-square",
        description: "disc_X(f) becomes a square in Q(s) after t -> t(s)",
        expected_runtime: "1 s",
    },
    ClaimInfo {
        id: "selfcent-12",
        description: "an order-12 element of Aut(M22) has centralizer of order 12",
        expected_runtime: "5 s",
    },
    ClaimInfo {
        id: "elkies-genus",
        description: "genus 712 of the 4-set curve if the Galois group were S22",
        expected_runtime: "1 s",
    },
    ClaimInfo {
        id: "elkies-bound",
        description: "Hasse-Weil upper bound 4253666 at the prime 2160553 for genus 712",
        expected_runtime: "instant",
    },
    ClaimInfo {
        id: "elkies-count",
        description: "4289839 points on the 4-set curve over F_2160553",
        expected_runtime: "4 min per thread-equivalent",
    },
    ClaimInfo {
        id: "elkies-verdict",
        description: "the point count exceeds the bound, so the Galois group is not S22",
        expected_runtime: "shares elkies-count",
    },
    ClaimInfo {
        id: "split-6-12M22",
        description: "every subgroup of M22 of order 6 splits in 3.M22, 4.M22 and 12.M22",
        expected_runtime: "30 s",
    },
    ClaimInfo {
        id: "split-1344-2M22",
        description: "the subgroup AGL(3,2) of M22 splits in 2.M22",
        expected_runtime: "2 s",
    },
    ClaimInfo {
        id: "spec-35",
        description: "g(35, X) is unramified at 7",
        expected_runtime: "1 s",
    },
    ClaimInfo {
        id: "spec-11",
        description: "g(11^-5, X) is unramified at 11",
        expected_runtime: "1 s",
    },
    ClaimInfo {
        id: "spec-5",
        description: "g(5^-2, X) is unramified at 5",
        expected_runtime: "1 s",
    },
    ClaimInfo {
        id: "gtilde-divides",
        description: "the degree-8 polynomial g~ divides g(0, X); Frobenius census consistent with AGL(3,2)",
        expected_runtime: "2 s",
    },
    ClaimInfo {
        id: "newton-fig1",
        description: "3-adic Newton polygon of g~ has segments (-2,4), (-1/3,3), (0,1)",
        expected_runtime: "instant",
    },
    ClaimInfo {
        id: "decomp-3",
        description: "decomposition group at 3 of g~: orbit filter {C3,S3,A4,S4}, final candidates {C3,S3}",
        expected_runtime: "1 s",
    },
    ClaimInfo {
        id: "feit-f-indices",
        description: "class-lifting indices (f1,f2,f3) = (1,3,3) of classes 5A, 2B, 12A in 3.Aut(M22)",
        expected_runtime: "1 min",
    },
    ClaimInfo {
        id: "orbit-1-21",
        description: "a point stabilizer of Aut(M22) has orbit lengths 1 and 21",
        expected_runtime: "instant",
    },
];

pub fn list_claims() -> &'static [ClaimInfo] {
    REGISTRY
}

/// Cached inputs shared by the claims of one run.
pub(crate) struct Session<'a> {
    cfg: &'a Config,
    polys: RefCell<BTreeMap<&'static str, Rc<PolyData>>>,
    groups: RefCell<BTreeMap<String, Rc<FaithfulGroup>>>,
    branch: OnceCell<BranchReport>,
    genus: OnceCell<u64>,
    count: OnceCell<CountReport>,
}

pub(crate) enum PolyData {
    Bi(BiPolynomial),
    Uni(RatPolynomial),
}

fn cached<T>(cell: &OnceCell<T>, init: impl FnOnce() -> Result<T>) -> Result<&T> {
    if cell.get().is_none() {
        let v = init()?;
        let _ = cell.set(v);
    }
    Ok(cell.get().expect("just set"))
}

impl<'a> Session<'a> {
    fn new(cfg: &'a Config) -> Self {
        Session {
            cfg,
            polys: RefCell::default(),
            groups: RefCell::default(),
            branch: OnceCell::new(),
            genus: OnceCell::new(),
            count: OnceCell::new(),
        }
    }

    fn poly_path(&self, file: &str) -> Result<PathBuf> {
        let path = self.cfg.data_dir.join("poly").join(file);
        if !path.is_file() {
            return Err(Error::MissingData(format!("polynomial file {}", path.display())));
        }
        Ok(path)
    }

    fn poly(&self, name: &'static str) -> Result<Rc<PolyData>> {
        if let Some(p) = self.polys.borrow().get(name) {
            return Ok(p.clone());
        }
        let data = match name {
            "f" | "g" => PolyData::Bi(load_bipoly(&self.poly_path(&format!("{name}.bipoly"))?)?),
            _ => PolyData::Uni(load_poly(&self.poly_path(&format!("{name}.poly"))?)?),
        };
        let data = Rc::new(data);
        self.polys.borrow_mut().insert(name, data.clone());
        Ok(data)
    }

    fn bipoly(&self, name: &'static str) -> Result<BiPolynomial> {
        match &*self.poly(name)? {
            PolyData::Bi(f) => Ok(f.clone()),
            PolyData::Uni(_) => Err(Error::Internal("expected a bivariate polynomial")),
        }
    }

    fn unipoly(&self, name: &'static str) -> Result<RatPolynomial> {
        match &*self.poly(name)? {
            PolyData::Uni(f) => Ok(f.clone()),
            PolyData::Bi(_) => Err(Error::Internal("expected a univariate polynomial")),
        }
    }

    fn group(&self, name: &str) -> Result<Rc<FaithfulGroup>> {
        if let Some(g) = self.groups.borrow().get(name) {
            return Ok(g.clone());
        }
        let g = Rc::new(load_group(&self.cfg.data_dir.join("groups"), name)?);
        self.groups.borrow_mut().insert(name.to_string(), g.clone());
        Ok(g)
    }

    fn data_dir(&self) -> &Path {
        &self.cfg.data_dir
    }
}

fn check_data_dir(cfg: &Config) -> Result<()> {
    for sub in ["poly", "groups"] {
        let p = cfg.data_dir.join(sub);
        if !p.is_dir() {
            return Err(Error::MissingData(format!("directory {}", p.display())));
        }
    }
    Ok(())
}

/// Outcome of one pipeline before timing is attached.
pub(crate) struct Outcome {
    status: Status,
    computed: Value,
    expected: Value,
    provenance: Provenance,
}

fn run(session: &Session, id: &str) -> Result<ClaimReport> {
    let started = Instant::now();
    let outcome = pipelines::dispatch(session, id)?;
    Ok(ClaimReport {
        claim_id: id.to_string(),
        status: outcome.status,
        computed: outcome.computed,
        expected: Expected {
            value: outcome.expected,
            provenance: outcome.provenance,
        },
        runtime_ms: started.elapsed().as_millis() as u64,
        seed: session.cfg.seed,
    })
}

/// Run one claim, or every claim for `"all"`. An unknown id or an absent data
/// directory is an error; a claim whose pipeline fails is reported as FAIL.
pub fn verify(claim: &str, cfg: &Config) -> Result<Vec<ClaimReport>> {
    let ids: Vec<&str> = if claim == "all" {
        REGISTRY.iter().map(|c| c.id).collect()
    } else if REGISTRY.iter().any(|c| c.id == claim) {
        vec![claim]
    } else {
        return Err(Error::UnknownClaim(claim.to_string()));
    };
    check_data_dir(cfg)?;
    let session = Session::new(cfg);
    let mut out = Vec::with_capacity(ids.len());
    for id in ids {
        let started = Instant::now();
        match run(&session, id) {
            Ok(r) => out.push(r),
            Err(e @ Error::MissingData(_)) if claim != "all" => return Err(e),
            Err(e) => out.push(ClaimReport {
                claim_id: id.to_string(),
                status: Status::Fail,
                computed: serde_json::json!({ "error": e.to_string() }),
                expected: Expected {
                    value: Value::Null,
                    provenance: Provenance::None,
                },
                runtime_ms: started.elapsed().as_millis() as u64,
                seed: cfg.seed,
            }),
        }
    }
    Ok(out)
}

/// `(pass, fail, unverified)` counts.
pub fn tally(reports: &[ClaimReport]) -> (usize, usize, usize) {
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    (count(Status::Pass), count(Status::Fail), count(Status::Unverified))
}

/// Exit code for a set of reports: nonzero iff some claim failed.
pub fn exit_code(reports: &[ClaimReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

/// Fixed-width table for humans.
pub fn summary_table(reports: &[ClaimReport]) -> String {
    let mut s = format!("{:<18} {:<11} {:>10}\n", "claim", "status", "ms");
    for r in reports {
        s += &format!("{:<18} {:<11} {:>10}\n", r.claim_id, r.status.to_string(), r.runtime_ms);
    }
    let (p, f, u) = tally(reports);
    s += &format!("{p} passed, {f} failed, {u} unverified\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        assert!(ids.len() >= 17);
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), REGISTRY.len());
        for c in REGISTRY {
            assert!(pipelines::is_registered(c.id), "{}", c.id);
        }
    }

    #[test]
    fn config_file_parsing() {
        let mut cfg = Config::default();
        cfg.apply_file_text("# comment\nthreads = 4\n\nseed=9 # trailing\nlambda = 101\n").unwrap();
        assert_eq!((cfg.threads, cfg.seed, cfg.lambda), (4, 9, 101));
        assert!(cfg.apply_file_text("bogus = 1").is_err());
        assert!(cfg.apply_file_text("threads").is_err());
        assert!(cfg.apply_file_text("seed = -1").is_err());
    }

    #[test]
    fn unknown_claim() {
        assert!(matches!(
            verify("no-such-claim", &Config::default()),
            Err(Error::UnknownClaim(_))
        ));
    }

    #[test]
    fn missing_data_dir() {
        let cfg = Config {
            data_dir: PathBuf::from("/nonexistent/m22v"),
            ..Config::default()
        };
        assert!(matches!(verify("orbit-1-21", &cfg), Err(Error::MissingData(_))));
    }
}
