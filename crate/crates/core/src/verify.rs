//! Exhaustive verification: the extremal tree is the unique minimizer of the
//! Hosoya index, of `M(T, x)` at every sampled `x` and of the energy, plus
//! checks on the behaviour of `tau`.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::canon::{canonical_code, CanonicalCode};
use crate::enumerate::{enumerate_trees, EnumerationParams};
use crate::error::{Error, Result};
use crate::expansion::extremal_tree;
use crate::fmt::num;
use crate::matching::{free_matching_polynomial, tau_exact};
use crate::spectral::energy_spectral;
use crate::tree::{random_rooted_tree, RootedTree, TreeClassParams};

/// Energies closer than this to the minimum make the energy criterion
/// inconclusive.
pub const ENERGY_GUARD: f64 = 1e-9;

/// Largest `n` accepted by [`verify_minimizer`].
pub const VERIFY_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    /// `hosoya`, `M(x=p/q)` or `energy`.
    pub criterion: String,
    pub minimum: String,
    pub minimizer_code: CanonicalCode,
    /// Number of classes attaining the minimum (for energy: within the guard).
    pub minimizer_count: usize,
    pub unique: bool,
    pub matches_extremal: bool,
    /// Runner-up minus minimum, energy only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation: Option<f64>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub d: usize,
    pub tree_count: usize,
    pub x_samples: Vec<String>,
    pub extremal_code: CanonicalCode,
    pub criteria: Vec<CriterionResult>,
    /// The argmin is the same class for the Hosoya index and every `x`.
    pub x_independent: bool,
    pub status: Status,
    /// Wall time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub runtime: Duration,
}

struct Candidate {
    code: CanonicalCode,
    hosoya: BigUint,
    values: Vec<BigRational>,
    energy: f64,
}

/// Exact criterion: all minima, ties decided exactly.
fn exact_criterion<T: Ord + Clone, F: Fn(&Candidate) -> T>(
    name: String,
    cands: &[Candidate],
    extremal: &CanonicalCode,
    key: F,
    show: impl Fn(&T) -> String,
) -> CriterionResult {
    let best = cands.iter().map(&key).min().expect("class is never empty");
    let winners: Vec<&Candidate> = cands.iter().filter(|c| key(c) == best).collect();
    let code = winners.iter().map(|c| c.code.clone()).min().expect("at least one minimizer");
    let unique = winners.len() == 1;
    let matches_extremal = code == *extremal;
    CriterionResult {
        criterion: name,
        minimum: show(&best),
        minimizer_code: code,
        minimizer_count: winners.len(),
        unique,
        matches_extremal,
        separation: None,
        status: if unique && matches_extremal { Status::Pass } else { Status::Fail },
    }
}

fn energy_criterion(cands: &[Candidate], extremal: &CanonicalCode) -> CriterionResult {
    let mut order: Vec<&Candidate> = cands.iter().collect();
    order.sort_by(|a, b| a.energy.total_cmp(&b.energy).then_with(|| a.code.cmp(&b.code)));
    let best = order[0];
    let separation = order.get(1).map(|c| c.energy - best.energy);
    let count = order.iter().take_while(|c| c.energy - best.energy <= ENERGY_GUARD).count();
    let ambiguous = count > 1;
    let matches_extremal = best.code == *extremal;
    let status = if ambiguous {
        Status::Ambiguous
    } else if matches_extremal {
        Status::Pass
    } else {
        Status::Fail
    };
    CriterionResult {
        criterion: "energy".into(),
        minimum: num(best.energy),
        minimizer_code: best.code.clone(),
        minimizer_count: count,
        unique: !ambiguous,
        matches_extremal,
        separation,
        status,
    }
}

pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidParams(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(digits, scale));
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

/// Default `x` samples: `1/4, 1/2, 1, 2, 4`.
pub fn default_x_samples() -> Vec<BigRational> {
    ["1/4", "1/2", "1", "2", "4"].iter().map(|s| parse_rational(s).expect("literal")).collect()
}

/// Enumerates every tree on `n` vertices with maximum degree `d + 1` and
/// checks that `T*(n, d)` is the unique minimizer of each criterion.
pub fn verify_minimizer(n: usize, d: usize, x_samples: &[BigRational]) -> Result<VerificationReport> {
    let params = TreeClassParams::new(n, d)?;
    if n > VERIFY_LIMIT {
        return Err(Error::SizeLimit(format!("exhaustive verification is limited to n <= {VERIFY_LIMIT}")));
    }
    if x_samples.iter().any(|x| *x <= BigRational::zero()) {
        return Err(Error::InvalidParams("x samples must be positive".into()));
    }
    let start = Instant::now();
    let extremal = canonical_code(&extremal_tree(params)?);
    let trees: Vec<_> = enumerate_trees(&EnumerationParams::new(n, d + 1))?.collect();
    let cands: Vec<Candidate> = trees
        .par_iter()
        .map(|t| {
            let m = free_matching_polynomial(t);
            Candidate {
                code: canonical_code(t),
                hosoya: m.hosoya(),
                values: x_samples.iter().map(|x| m.eval_rational(x)).collect(),
                energy: energy_spectral(t).value,
            }
        })
        .collect();

    let mut criteria = vec![exact_criterion("hosoya".into(), &cands, &extremal, |c| c.hosoya.clone(), |v| v.to_string())];
    for (i, x) in x_samples.iter().enumerate() {
        criteria.push(exact_criterion(
            format!("M(x={})", rational_to_string(x)),
            &cands,
            &extremal,
            |c| c.values[i].clone(),
            rational_to_string,
        ));
    }
    let x_independent = criteria.windows(2).all(|w| w[0].minimizer_code == w[1].minimizer_code);
    criteria.push(energy_criterion(&cands, &extremal));

    let status = if criteria.iter().any(|c| c.status == Status::Fail) || !x_independent {
        Status::Fail
    } else if criteria.iter().any(|c| c.status == Status::Ambiguous) {
        Status::Ambiguous
    } else {
        Status::Pass
    };
    Ok(VerificationReport {
        n,
        d,
        tree_count: cands.len(),
        x_samples: x_samples.iter().map(rational_to_string).collect(),
        extremal_code: extremal,
        criteria,
        x_independent,
        status,
        runtime: start.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub pass: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new() -> Self {
        CheckReport { pass: true, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.pass = false;
            self.failures.push(what());
        }
    }
}

/// Sign of `t - 2/(1 + sqrt(1 + 4dx))`, decided exactly: for `0 < t < 2`,
/// `t < L` iff `t^2 (1 + 4dx) < (2 - t)^2`.
fn compare_with_limit(t: &BigRational, d: usize, x: &BigRational) -> std::cmp::Ordering {
    let two = BigRational::from_integer(BigInt::from(2));
    let disc = BigRational::one() + BigRational::from_integer(BigInt::from(4 * d)) * x;
    let lhs = t * t * disc;
    let rhs = (&two - t) * (&two - t);
    lhs.cmp(&rhs)
}

/// Checks `0 = tau(C_0) < tau(C_2) < ... < limit < ... < tau(C_3) < tau(C_1) = 1`
/// for `h <= h_max` in exact arithmetic at every sample.
pub fn verify_tau_monotonicity(d: usize, h_max: usize, x_samples: &[BigRational]) -> Result<CheckReport> {
    if h_max < 3 || d == 0 {
        return Err(Error::InvalidParams(format!("need d >= 1 and h_max >= 3, got d={d}, h_max={h_max}")));
    }
    let mut report = CheckReport::new();
    let dd = BigRational::from_integer(BigInt::from(d));
    for x in x_samples {
        let xs = rational_to_string(x);
        // tau(C_h) = 1/(1 + d x tau(C_{h-1})), tau(C_0) = 0
        let mut taus = vec![BigRational::zero()];
        for h in 1..=h_max {
            let prev = &taus[h - 1];
            taus.push((BigRational::one() + &dd * x * prev).recip());
        }
        report.check(taus[0].is_zero(), || format!("x={xs}: tau(C_0) != 0"));
        report.check(taus[1].is_one(), || format!("x={xs}: tau(C_1) != 1"));
        for h in 2..=h_max {
            let (prev, cur) = (&taus[h - 2], &taus[h]);
            if h % 2 == 0 {
                report.check(prev < cur, || format!("x={xs}: tau(C_{}) >= tau(C_{h})", h - 2));
                report.check(compare_with_limit(cur, d, x).is_lt(), || format!("x={xs}: tau(C_{h}) >= limit"));
            } else {
                report.check(prev > cur, || format!("x={xs}: tau(C_{}) <= tau(C_{h})", h - 2));
                report.check(compare_with_limit(cur, d, x).is_gt(), || format!("x={xs}: tau(C_{h}) <= limit"));
            }
        }
    }
    Ok(report)
}

/// Samples random rooted trees (every vertex with at most `d` children) and
/// checks `1/(dx + 1) <= tau(T, x) <= 1` exactly.
pub fn verify_tau_bounds(
    sample_count: usize,
    n_max: usize,
    d: usize,
    x_samples: &[BigRational],
    seed: u64,
) -> Result<CheckReport> {
    if sample_count == 0 || n_max == 0 || d == 0 {
        return Err(Error::InvalidParams("need sample_count, n_max, d >= 1".into()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let trees: Vec<RootedTree> = (0..sample_count)
        .map(|_| {
            let n = rand::Rng::gen_range(&mut rng, 1..=n_max);
            random_rooted_tree(&mut rng, n, d)
        })
        .collect();
    let mut report = CheckReport::new();
    let dd = BigRational::from_integer(BigInt::from(d));
    for (i, t) in trees.iter().enumerate() {
        for x in x_samples {
            let tau = tau_exact(t, x);
            let lower = (&dd * x + BigRational::one()).recip();
            report.check(tau >= lower && tau <= BigRational::one(), || {
                format!("tree {i} (n={}) at x={}: tau={}", t.len(), rational_to_string(x), rational_to_string(&tau))
            });
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifestRow {
    pub n: usize,
    pub d: usize,
    pub shard: usize,
    pub shard_count: usize,
    pub tree_count: usize,
    /// SHA-256 over the canonical codes of the shard, one per line.
    pub hash: String,
}

pub fn enumeration_manifest(n: usize, d: usize, shard_count: usize) -> Result<Vec<ManifestRow>> {
    (0..shard_count)
        .map(|shard| {
            let p = EnumerationParams::new(n, d + 1).with_shard(shard, shard_count);
            let mut hasher = Sha256::new();
            let mut tree_count = 0;
            for t in enumerate_trees(&p)? {
                hasher.update(canonical_code(&t).as_str().as_bytes());
                hasher.update(b"\n");
                tree_count += 1;
            }
            let hash = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
            Ok(ManifestRow { n, d, shard, shard_count, tree_count, hash })
        })
        .collect()
}

pub fn manifest_csv(rows: &[ManifestRow]) -> String {
    let mut out = String::from("n,d,shard,shard_count,tree_count,hash\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{},{}\n", r.n, r.d, r.shard, r.shard_count, r.tree_count, r.hash));
    }
    out
}
