//! Executable checks for the length identities over `p = X^2 + 2X + 2`, the
//! `X^2 + 4X + 8` counterexample, the negative-base length facts, the
//! exhaustive-search oracle and the lift to `p(X^k)`.
//!
//! Every check returns a [`VerificationReport`]. Sweeps are split into fixed
//! chunks that may run on several threads; partial results are concatenated
//! in chunk order and witness lists are sorted before truncation, so a report
//! does not depend on the number of workers.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cns::{CnsBase, DEFAULT_MAX_STEPS};
use crate::negabase;
use crate::penney::{PenneyScheme, SchemeViolation};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::trinomial::{lift_representation, seq_a, seq_b, trinomial, trinomial_length_set};

/// Longest witness list kept in a report. The full count is always recorded.
pub const MAX_LISTED: usize = 50;

const CHUNK: i64 = 2048;

/// One witness tuple: a label, integer values and an optional digit string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub values: Vec<i128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

impl Witness {
    pub fn new(label: &str, values: impl IntoIterator<Item = i128>) -> Self {
        Witness {
            label: label.to_string(),
            values: values.into_iter().collect(),
            text: None,
        }
    }

    pub fn with_text(mut self, text: impl Into<String>) -> Self {
        self.text = Some(text.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub params: BTreeMap<String, Value>,
    pub passed: bool,
    pub counterexample_count: u64,
    /// Number of counterexamples per label.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counterexample_kinds: BTreeMap<String, u64>,
    pub counterexamples: Vec<Witness>,
    pub witnesses: Vec<Witness>,
    /// Observations recorded without being asserted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unasserted: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// The same report with the timing removed.
    pub fn without_timing(&self) -> Self {
        VerificationReport {
            elapsed_ms: None,
            ..self.clone()
        }
    }
}

struct Builder {
    check_id: &'static str,
    params: BTreeMap<String, Value>,
    counterexamples: Vec<Witness>,
    witnesses: Vec<Witness>,
    unasserted: Vec<Witness>,
    started: Instant,
}

impl Builder {
    fn new(check_id: &'static str) -> Self {
        Builder {
            check_id,
            params: BTreeMap::new(),
            counterexamples: Vec::new(),
            witnesses: Vec::new(),
            unasserted: Vec::new(),
            started: Instant::now(),
        }
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    fn fail(&mut self, w: Witness) {
        self.counterexamples.push(w);
    }

    fn finish(mut self) -> VerificationReport {
        let count = self.counterexamples.len() as u64;
        let mut kinds = BTreeMap::new();
        for w in &self.counterexamples {
            *kinds.entry(w.label.clone()).or_insert(0) += 1;
        }
        for list in [
            &mut self.counterexamples,
            &mut self.witnesses,
            &mut self.unasserted,
        ] {
            list.sort();
            list.dedup();
            list.truncate(MAX_LISTED);
        }
        VerificationReport {
            check_id: self.check_id.to_string(),
            params: self.params,
            passed: count == 0,
            counterexample_count: count,
            counterexample_kinds: kinds,
            counterexamples: self.counterexamples,
            witnesses: self.witnesses,
            unasserted: self.unasserted,
            elapsed_ms: Some(self.started.elapsed().as_millis() as u64),
        }
    }
}

/// Runs `f` on the chunks of `lo..=hi` using `jobs` worker threads and
/// returns the results in chunk order.
fn par_chunks<R, F>(lo: i64, hi: i64, jobs: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(i64, i64) -> R + Sync,
{
    let mut chunks = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = hi.min(start.saturating_add(CHUNK - 1));
        chunks.push((start, end));
        if end == hi {
            break;
        }
        start = end + 1;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool starts");
    pool.install(|| chunks.par_iter().map(|&(a, b)| f(a, b)).collect())
}

fn standard_base() -> CnsBase<i64> {
    CnsBase::new(Poly::from_i64s(&[2, 2, 1])).expect("X^2 + 2X + 2 is a valid base")
}

fn p_length(base: &CnsBase<i64>, z: i64) -> usize {
    base.length(&z, DEFAULT_MAX_STEPS)
        .expect("every integer has an expansion over X^2 + 2X + 2")
}

/// `len_p(z)` for every `z` in `-range..=range`, indexed by `z + range`.
#[derive(Debug, Clone)]
pub struct LengthTable {
    range: i64,
    lengths: Vec<usize>,
}

impl LengthTable {
    pub fn compute(range: i64, jobs: usize) -> Self {
        let base = standard_base();
        let lengths = par_chunks(-range, range, jobs, |a, b| {
            (a..=b).map(|z| p_length(&base, z)).collect::<Vec<_>>()
        })
        .concat();
        LengthTable { range, lengths }
    }

    pub fn range(&self) -> i64 {
        self.range
    }

    pub fn get(&self, z: i64) -> usize {
        self.lengths[(z + self.range) as usize]
    }

    fn attained(&self, zs: impl Iterator<Item = i64>) -> BTreeSet<usize> {
        zs.map(|z| self.get(z)).collect()
    }
}

fn lengths_witness(label: &str, set: &BTreeSet<usize>) -> Witness {
    Witness::new(label, set.iter().map(|&l| l as i128))
}

/// `a(n)` for `n >= 1` up to the first value above `limit`.
fn a_values_up_to(limit: usize) -> Vec<usize> {
    (1u64..)
        .map(|n| seq_a::<i64>(n) as usize)
        .take_while(|&a| a <= limit)
        .collect()
}

/// Digit identity with the block-substitution conversion and the length
/// formula `len_p(z) = 4 (len_{-4}(z) - 1) + lambda(z)` on `-range..=range`.
pub fn check_length_formula(range: i64, jobs: usize) -> VerificationReport {
    let mut r = Builder::new("i");
    r.param("range", range);
    let base = standard_base();
    let scheme = PenneyScheme::<i64>::standard();
    let parts = par_chunks(-range, range, jobs, |a, b| {
        let mut bad = Vec::new();
        for z in a..=b {
            let direct = base
                .encode_digits(&z, DEFAULT_MAX_STEPS)
                .expect("representable");
            let converted = scheme.convert_digits(&z);
            let predicted = scheme.predicted_length(&z);
            if direct != converted {
                bad.push(Witness::new("digits", [z as i128]).with_text(format!(
                    "{} != {}",
                    crate::repr::format_digits(&direct),
                    crate::repr::format_digits(&converted)
                )));
            }
            if direct.len() != predicted {
                bad.push(Witness::new(
                    "length",
                    [z as i128, direct.len() as i128, predicted as i128],
                ));
            }
        }
        bad
    });
    parts.into_iter().flatten().for_each(|w| r.fail(w));
    for z in [0i64, 3] {
        let nega = negabase::length(&z, 4).expect("b = 4");
        r.witnesses.push(Witness::new(
            "sample",
            [
                z as i128,
                p_length(&base, z) as i128,
                nega as i128,
                scheme.lambda(&z) as i128,
            ],
        ));
    }
    r.finish()
}

/// The attained lengths on `-range..=range` are exactly the values `a(n)`
/// (`n >= 1`) up to the largest attained length.
pub fn check_length_set(range: i64, jobs: usize) -> VerificationReport {
    length_set_with(&LengthTable::compute(range, jobs))
}

fn length_set_with(table: &LengthTable) -> VerificationReport {
    let mut r = Builder::new("ii");
    r.param("range", table.range());
    let range = table.range();
    let attained = table.attained(-range..=range);
    let max = *attained.iter().next_back().expect("range is nonempty");
    let expected: BTreeSet<usize> = a_values_up_to(max).into_iter().collect();
    r.param("max_length", max);
    for &l in attained.difference(&expected) {
        r.fail(Witness::new("unexpected", [l as i128]));
    }
    for &l in expected.difference(&attained) {
        r.fail(Witness::new("missing", [l as i128]));
    }
    for &l in &attained {
        if l % 4 > 1 {
            r.fail(Witness::new("residue_mod_4", [l as i128]));
        }
    }
    r.witnesses.push(lengths_witness("attained", &attained));
    r.finish()
}

/// Positive and negative integers never share a length; positive lengths are
/// 1 or 4 mod 8 and negative lengths 5 or 0 mod 8.
pub fn check_sign_disjoint(range: i64, jobs: usize) -> VerificationReport {
    sign_disjoint_with(&LengthTable::compute(range, jobs))
}

fn sign_disjoint_with(table: &LengthTable) -> VerificationReport {
    let mut r = Builder::new("iii");
    let range = table.range();
    r.param("range", range);
    let pos = table.attained(1..=range);
    let neg = table.attained(-range..=-1);
    for &l in pos.intersection(&neg) {
        r.fail(Witness::new("shared", [l as i128]));
    }
    for &l in &pos {
        if !matches!(l % 8, 1 | 4) {
            r.fail(Witness::new("positive_mod_8", [l as i128]));
        }
    }
    for &l in &neg {
        if !matches!(l % 8, 5 | 0) {
            r.fail(Witness::new("negative_mod_8", [l as i128]));
        }
    }
    r.witnesses.push(lengths_witness("positive", &pos));
    r.witnesses.push(lengths_witness("negative", &neg));
    r.finish()
}

/// At the ends of each base `-4` length class the `p`-length jumps by 5.
///
/// For odd `l <= max_len` and `n` the largest positive integer of base `-4`
/// length `l`: `lambda(n) = 4`, `lambda(n+1) = 1`, `len_p(n) = 0 mod 4` and
/// `len_p(n+1) = len_p(n) + 5`. For even `l` the same holds with `n` the
/// least negative integer of length `l` and `n - 1` in place of `n + 1`.
pub fn check_boundary_jumps(max_len: usize) -> VerificationReport {
    let mut r = Builder::new("iv");
    r.param("max_length", max_len);
    let base = CnsBase::<i128>::new(Poly::from_i64s(&[2, 2, 1])).expect("valid base");
    let scheme = PenneyScheme::<i128>::standard();
    let len = |z: i128| base.length(&z, DEFAULT_MAX_STEPS).expect("representable");
    for l in 1..=max_len {
        let (min, max) = negabase::extremal_of_length::<i128>(4, l).expect("b = 4");
        let (label, n, next) = if l % 2 == 1 {
            ("odd", max, max + 1)
        } else {
            ("even", min, min - 1)
        };
        let row = Witness::new(
            label,
            [
                l as i128,
                n,
                scheme.lambda(&n) as i128,
                scheme.lambda(&next) as i128,
                len(n) as i128,
                len(next) as i128,
            ],
        );
        let ok = scheme.lambda(&n) == 4
            && scheme.lambda(&next) == 1
            && len(n) % 4 == 0
            && len(next) == len(n) + 5;
        if ok {
            r.witnesses.push(row);
        } else {
            r.fail(row);
        }
    }
    r.finish()
}

/// Sorted positive lengths are the pairs `(a(4n-3), a(4n-2))` and negative
/// lengths the pairs `(a(4n-1), a(4n))`, compared for the first `count` pairs
/// as far as the sweep reaches.
pub fn check_pair_subsequences(range: i64, count: usize, jobs: usize) -> VerificationReport {
    pair_subsequences_with(&LengthTable::compute(range, jobs), count)
}

fn pair_subsequences_with(table: &LengthTable, count: usize) -> VerificationReport {
    let mut r = Builder::new("v");
    let range = table.range();
    r.param("range", range).param("count", count);
    let sides = [
        ("positive", table.attained(1..=range), 3u64),
        ("negative", table.attained(-range..=-1), 1u64),
    ];
    for (label, attained, back) in sides {
        let mut expected = Vec::new();
        for n in 1..=count as u64 {
            let first = seq_a::<i64>(4 * n - back) as usize;
            let second = seq_a::<i64>(4 * n - back + 1) as usize;
            expected.push((first, second));
        }
        let Some(&max) = attained.iter().next_back() else {
            continue;
        };
        let cap = expected.last().map_or(0, |p| p.1).min(max);
        let wanted: BTreeSet<usize> = expected
            .iter()
            .flat_map(|&(x, y)| [x, y])
            .filter(|&l| l <= cap)
            .collect();
        let seen: BTreeSet<usize> = attained.iter().copied().filter(|&l| l <= cap).collect();
        for &l in seen.symmetric_difference(&wanted) {
            r.fail(Witness::new(label, [l as i128]));
        }
        for &(x, y) in &expected {
            if y <= cap {
                r.witnesses
                    .push(Witness::new(label, [x as i128, y as i128]));
            }
        }
    }
    r.finish()
}

/// For `0 < n < m` on either side of zero, `len_p(m) = len_p(n)` or
/// `len_p(m) >= len_p(n) + 3`.
pub fn check_gap3(range: i64, jobs: usize) -> VerificationReport {
    gap3_with(&LengthTable::compute(range, jobs))
}

fn gap3_with(table: &LengthTable) -> VerificationReport {
    let mut r = Builder::new("vi");
    let range = table.range();
    r.param("range", range);
    for (label, sign) in [("positive", 1i64), ("negative", -1)] {
        let mut top = table.get(sign);
        let mut steps = vec![top as i128];
        for k in 2..=range {
            let z = sign * k;
            let l = table.get(z);
            if l == top {
                continue;
            }
            if l < top + 3 {
                r.fail(Witness::new(label, [z as i128, l as i128, top as i128]));
            }
            if l > top {
                top = l;
                steps.push(l as i128);
            }
        }
        r.witnesses.push(Witness::new(label, steps));
    }
    r.finish()
}

fn sample_pairs(samples: usize, seed: u64, bound: i64) -> Vec<(i64, i64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)))
        .collect()
}

/// Bound on the magnitude of randomly sampled factors.
pub const SAMPLE_BOUND: i64 = 1_000_000;

/// `-2 <= lambda(x) + lambda(y) - lambda(xy) <= 7` on the grid
/// `|x|, |y| <= grid` and on `samples` seeded random pairs. Pairs with a zero
/// factor are recorded separately. The equality cases `(4, 5)` and
/// `(2, 410)` must be reproduced.
pub fn check_lambda_bounds(
    grid: i64,
    samples: usize,
    seed: u64,
    jobs: usize,
) -> VerificationReport {
    let mut r = Builder::new("vii");
    r.param("grid", grid)
        .param("samples", samples)
        .param("seed", seed)
        .param("sample_bound", SAMPLE_BOUND);
    let scheme = PenneyScheme::<i64>::standard();
    let delta = |x: i64, y: i64| {
        scheme.lambda(&x) as i64 + scheme.lambda(&y) as i64 - scheme.lambda(&(x * y)) as i64
    };

    #[derive(Default)]
    struct Tally {
        bad: Vec<Witness>,
        zero: Vec<i64>,
        low: u64,
        high: u64,
    }
    let scan = |pairs: &mut dyn Iterator<Item = (i64, i64)>| {
        let mut t = Tally::default();
        for (x, y) in pairs {
            let d = delta(x, y);
            if x == 0 || y == 0 {
                t.zero.push(d);
                continue;
            }
            if !(-2..=7).contains(&d) {
                t.bad
                    .push(Witness::new("bound", [x as i128, y as i128, d as i128]));
            }
            t.low += (d == -2) as u64;
            t.high += (d == 7) as u64;
        }
        t
    };
    let mut tallies = par_chunks(-grid, grid, jobs, |a, b| {
        scan(&mut (a..=b).flat_map(|x| (-grid..=grid).map(move |y| (x, y))))
    });
    tallies.push(scan(
        &mut sample_pairs(samples, seed, SAMPLE_BOUND).into_iter(),
    ));

    let (mut low, mut high, mut zero) = (0, 0, Vec::new());
    for t in tallies {
        t.bad.into_iter().for_each(|w| r.fail(w));
        low += t.low;
        high += t.high;
        zero.extend(t.zero);
    }
    r.param("lower_equalities", low)
        .param("upper_equalities", high);
    if let (Some(&lo), Some(&hi)) = (zero.iter().min(), zero.iter().max()) {
        r.unasserted.push(Witness::new(
            "zero_factor",
            [zero.len() as i128, lo as i128, hi as i128],
        ));
    }
    for (label, x, y, want) in [
        ("lower_equality", 4i64, 5i64, -2i64),
        ("upper_equality", 2, 410, 7),
    ] {
        let w = Witness::new(
            label,
            [
                x as i128,
                y as i128,
                scheme.lambda(&x) as i128,
                scheme.lambda(&y) as i128,
                scheme.lambda(&(x * y)) as i128,
            ],
        );
        if delta(x, y) == want {
            r.witnesses.push(w);
        } else {
            r.fail(w);
        }
    }
    r.finish()
}

/// `len_p(x + y) <= len_p(x) + len_p(y) + 2` and
/// `len_p(xy) <= len_p(x) + len_p(y) + 10` on the grid `|x|, |y| <= grid`
/// and on `samples` seeded random pairs, with `len_p(0) = 1`.
pub fn check_additive_bounds(
    grid: i64,
    samples: usize,
    seed: u64,
    jobs: usize,
) -> VerificationReport {
    let mut r = Builder::new("viii");
    r.param("grid", grid)
        .param("samples", samples)
        .param("seed", seed)
        .param("sample_bound", SAMPLE_BOUND);
    let table = LengthTable::compute(grid * grid.max(2), jobs);
    let base = standard_base();
    let check = |x: i64, y: i64, len: &dyn Fn(i64) -> usize, out: &mut Vec<Witness>| {
        let (lx, ly) = (len(x), len(y));
        let (ls, lp) = (len(x + y), len(x * y));
        let row = |label: &str, l: usize| {
            Witness::new(
                label,
                [x as i128, y as i128, l as i128, lx as i128, ly as i128],
            )
        };
        if ls > lx + ly + 2 {
            out.push(row("sum", ls));
        }
        if lp > lx + ly + 10 {
            out.push(row("product", lp));
        }
    };
    let parts = par_chunks(-grid, grid, jobs, |a, b| {
        let mut out = Vec::new();
        for x in a..=b {
            for y in -grid..=grid {
                check(x, y, &|z| table.get(z), &mut out);
            }
        }
        out
    });
    parts.into_iter().flatten().for_each(|w| r.fail(w));
    let pairs = sample_pairs(samples, seed, SAMPLE_BOUND);
    let parts = par_chunks(0, pairs.len() as i64 - 1, jobs, |a, b| {
        let mut out = Vec::new();
        for &(x, y) in &pairs[a as usize..=b as usize] {
            check(x, y, &|z| p_length(&base, z), &mut out);
        }
        out
    });
    parts.into_iter().flatten().for_each(|w| r.fail(w));
    for (x, y) in [(1i64, 1i64), (3, 3), (5, -5)] {
        let len = |z| p_length(&base, z) as i128;
        r.witnesses.push(Witness::new(
            "sample",
            [x as i128, y as i128, len(x + y), len(x * y), len(x), len(y)],
        ));
    }
    r.finish()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("digit sum {digit_sum} of {z} is not congruent to it modulo 5")]
    DigitSumIdentity { z: String, digit_sum: u64 },
}

/// Digit sum of `z` over `X^2 + 2X + 2` together with the derived value
/// `s_K = 2 (z - digit_sum) / 5` and a trace of the recurrence
/// `s_0 = z`, `s_1 = 0`, `s_2 = z/2`, `s_(k+1) = (s_(k-1) + s_(k-2)) / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitSumProbe<T = BigInt> {
    pub z: T,
    pub digit_sum: u64,
    pub s_k_derived: T,
    pub recurrence_trace: Vec<Ratio<BigInt>>,
    /// Whether three consecutive trace values coincide.
    pub stabilized: bool,
}

/// Fails when `z - digit_sum` is not divisible by 5 or `s_K` is odd.
pub fn digit_sum_probe<T: Scalar>(z: &T, max_iter: usize) -> Result<DigitSumProbe<T>, VerifyError> {
    let base = CnsBase::<T>::new(Poly::from_i64s(&[2, 2, 1])).expect("valid base");
    let rep = base
        .encode(z, DEFAULT_MAX_STEPS)
        .into_result()
        .expect("representable");
    let digit_sum = rep.digit_sum();
    let identity = || VerifyError::DigitSumIdentity {
        z: z.to_string(),
        digit_sum,
    };
    let twice = T::from_digit(2) * (z.clone() - T::from_int(digit_sum as i64));
    let (s_k, rem) = twice.div_rem(&T::from_digit(5));
    if !rem.is_zero() || !s_k.is_even() {
        return Err(identity());
    }

    let zr = Ratio::from_integer(BigInt::from_str(&z.to_string()).expect("decimal integer"));
    let half = Ratio::new(BigInt::from(1), BigInt::from(2));
    let mut trace = vec![
        zr.clone(),
        Ratio::from_integer(BigInt::from(0)),
        zr * half.clone(),
    ];
    while trace.len() < max_iter + 3 {
        let n = trace.len();
        let next = (trace[n - 2].clone() + trace[n - 3].clone()) * half.clone();
        trace.push(next);
    }
    let stabilized = trace.windows(3).any(|w| w[0] == w[1] && w[1] == w[2]);
    Ok(DigitSumProbe {
        z: z.clone(),
        digit_sum,
        s_k_derived: s_k,
        recurrence_trace: trace,
        stabilized,
    })
}

/// `digit_sum(z) = z (mod 5)` and `2 (z - digit_sum) / 5` even on
/// `-range..=range`. How often the recurrence trace stabilizes is recorded
/// but not asserted.
pub fn check_digit_sum(range: i64, max_iter: usize, jobs: usize) -> VerificationReport {
    let mut r = Builder::new("ix");
    r.param("range", range).param("max_iter", max_iter);
    let parts = par_chunks(-range, range, jobs, |a, b| {
        let mut bad = Vec::new();
        let mut stable = Vec::new();
        for z in a..=b {
            match digit_sum_probe(&z, max_iter) {
                Ok(probe) if probe.stabilized => stable.push(z),
                Ok(_) => {}
                Err(VerifyError::DigitSumIdentity { digit_sum, .. }) => {
                    bad.push(Witness::new("identity", [z as i128, digit_sum as i128]))
                }
            }
        }
        (bad, stable)
    });
    let mut stable = Vec::new();
    for (bad, s) in parts {
        bad.into_iter().for_each(|w| r.fail(w));
        stable.extend(s);
    }
    r.param("stabilized_count", stable.len());
    r.unasserted.push(Witness::new(
        "stabilized",
        stable.iter().take(MAX_LISTED).map(|&z| z as i128),
    ));
    for z in [2i64, -1, 0, 4] {
        if let Ok(p) = digit_sum_probe(&z, max_iter) {
            let last = p.recurrence_trace.last().expect("trace is nonempty");
            r.witnesses.push(
                Witness::new(
                    "probe",
                    [z as i128, p.digit_sum as i128, p.s_k_derived as i128],
                )
                .with_text(format!("trace ends at {last}")),
            );
        }
    }
    r.finish()
}

/// Expansions of `8q` over `X^2 + 4X + 8`, and the failure of the candidate
/// scheme `(X^2 + 4X + 8, 64, 4)`.
pub const REMARK_TABLE: [(i64, &str); 7] = [
    (8, "1340"),
    (16, "1200"),
    (24, "2540"),
    (32, "2400"),
    (40, "3740"),
    (48, "3600"),
    (56, "1470140"),
];

pub fn check_remark() -> VerificationReport {
    let mut r = Builder::new("remark");
    r.param("poly", "8,4,1").param("c", 64).param("d", 4);
    let p = Poly::<i64>::from_i64s(&[8, 4, 1]);
    let base = CnsBase::new(p.clone()).expect("valid base");
    for (z, want) in REMARK_TABLE {
        let got = base
            .encode(&z, DEFAULT_MAX_STEPS)
            .into_result()
            .map(|rep| rep.to_string())
            .unwrap_or_else(|e| e.to_string());
        let w = Witness::new("expansion", [z as i128, got.len() as i128]).with_text(got.clone());
        if got == want {
            r.witnesses.push(w);
        } else {
            r.fail(w.with_text(format!("{got} != {want}")));
        }
    }
    match PenneyScheme::build(p, 64, 4, DEFAULT_MAX_STEPS) {
        Err(SchemeViolation::BlockTooLong(digit, len)) => r
            .witnesses
            .push(Witness::new("block_too_long", [digit as i128, len as i128])),
        Err(other) => r.fail(Witness::new("scheme", []).with_text(format!("{other:?}"))),
        Ok(_) => r.fail(Witness::new("scheme", []).with_text("built")),
    }
    r.finish()
}

pub const NEGABASE_BASES: [u32; 4] = [2, 3, 4, 10];

/// Length facts for bases `-2, -3, -4, -10`: parity and monotone steps for
/// `1 <= n <= range`, roundtrip on `-range..=range`, the extremal integers
/// for lengths up to 12, and the sum bound `len(x+y) <= max + 1` and product
/// offset `len(xy) - len(x) - len(y) in {-3, -1, 1}` on the grid
/// `|x|, |y| <= 50` and on `samples` seeded random pairs.
pub fn check_negabase_proposition(
    range: i64,
    samples: usize,
    seed: u64,
    jobs: usize,
) -> VerificationReport {
    let mut r = Builder::new("negabase");
    r.param("range", range)
        .param("samples", samples)
        .param("seed", seed)
        .param("grid", 50)
        .param("bases", NEGABASE_BASES.to_vec());
    let len = |z: i64, b: u32| negabase::length(&z, b).expect("b >= 2");
    for b in NEGABASE_BASES {
        let bi = b as i128;
        let parts = par_chunks(1, range, jobs, |lo, hi| {
            let mut bad = Vec::new();
            for n in lo..=hi {
                let (lp, ln) = (len(n, b), len(-n, b));
                if lp % 2 != 1 || ln % 2 != 0 {
                    bad.push(Witness::new("parity", [bi, n as i128]));
                }
                if n > 1 && ![0, 2].contains(&(lp - len(n - 1, b))) {
                    bad.push(Witness::new("monotone", [bi, n as i128]));
                }
                if n > 1 && ![0, 2].contains(&(ln - len(-(n - 1), b))) {
                    bad.push(Witness::new("monotone", [bi, -n as i128]));
                }
                for z in [n, -n] {
                    let rep = negabase::encode(&z, b).expect("b >= 2");
                    if negabase::decode(&rep) != Ok(z) {
                        bad.push(Witness::new("roundtrip", [bi, z as i128]));
                    }
                }
            }
            bad
        });
        parts.into_iter().flatten().for_each(|w| r.fail(w));

        let l128 = |z: i128| negabase::length(&z, b).expect("b >= 2");
        for l in 1..=12usize {
            let (min, max) = negabase::extremal_of_length::<i128>(b, l).expect("b >= 2");
            // the class of length l is the interval [min, max]: its ends have
            // length l and the integers just outside it do not
            let (outward, inward) = if l % 2 == 1 {
                (max + 1, min - 1)
            } else {
                (min - 1, max + 1)
            };
            let ok = l128(min) == l
                && l128(max) == l
                && l128(outward) == l + 2
                && (l < 3 || l128(inward) == l - 2);
            if !ok {
                r.fail(Witness::new("extremal", [bi, l as i128, min, max]));
            }
        }

        let mut pairs: Vec<(i64, i64)> = (-50..=50)
            .flat_map(|x| (-50..=50).map(move |y| (x, y)))
            .collect();
        pairs.extend(sample_pairs(samples, seed ^ b as u64, SAMPLE_BOUND));
        for (x, y) in pairs {
            let (lx, ly) = (len(x, b), len(y, b));
            let ls = len(x + y, b);
            if ls > lx.max(ly) + 1 {
                r.fail(Witness::new(
                    "sum",
                    [bi, x as i128, y as i128, ls as i128, lx as i128, ly as i128],
                ));
            }
            if x != 0 && y != 0 {
                let e = len(x * y, b) as i64 - lx as i64 - ly as i64;
                if ![-3, -1, 1].contains(&e) {
                    r.fail(Witness::new(
                        "product",
                        [bi, x as i128, y as i128, e as i128],
                    ));
                }
            }
        }
    }
    r.witnesses.push(Witness::new(
        "extremal_b4",
        [1, 3, 4, 51, -12, -1, -204, -13],
    ));
    r.finish()
}

/// The encoder over `X^2 + 2X + 2` agrees with an exhaustive search over all
/// digit strings of at most `max_len` digits for every `|z| <= range`.
pub fn check_oracle(range: i64, max_len: usize) -> VerificationReport {
    let mut r = Builder::new("oracle");
    r.param("range", range).param("max_len", max_len);
    let base = standard_base();
    let table = base.brute_force_table(max_len);
    for z in -range..=range {
        let encoded = base.encode(&z, DEFAULT_MAX_STEPS).into_result().ok();
        let found = table.get(&z).cloned();
        if encoded != found {
            let show = |x: &Option<crate::repr::Representation<i64>>| {
                x.as_ref().map_or("none".to_string(), |r| r.to_string())
            };
            r.fail(Witness::new("mismatch", [z as i128]).with_text(format!(
                "{} vs {}",
                show(&encoded),
                show(&found)
            )));
        }
    }
    r.param("strings_found", table.len());
    r.finish()
}

/// For `m` in 2 and 3 and `|z| <= range`: the expansion over
/// `X^(2m) + 2X^m + 2` is the zero-interleaved expansion over `X^2 + 2X + 2`,
/// its length is `m (len_p - 1) + 1`, and every length lies in
/// `{m (a(n) - 1) + 1}`. For `m = 2` every attained length is a value
/// `b(n)`, the first [`LIFT_B_PREFIX`] values of `b` are attained, and
/// `b(n) = 2a(n+1) - 1` for `n <= seq_n`.
pub fn check_lift(range: i64, seq_n: u64) -> VerificationReport {
    let mut r = Builder::new("lift");
    r.param("range", range)
        .param("seq_n", seq_n)
        .param("m", vec![2, 3]);
    let base = standard_base();
    for m in [2usize, 3] {
        let lifted_base = CnsBase::new(trinomial::<i64>(m)).expect("valid base");
        let mut attained = BTreeSet::new();
        for z in -range..=range {
            let small = base
                .encode(&z, DEFAULT_MAX_STEPS)
                .into_result()
                .expect("representable");
            let direct = lifted_base.encode(&z, DEFAULT_MAX_STEPS).into_result();
            let lifted = lift_representation(&small, m).expect("m >= 2");
            if direct.as_ref() != Ok(&lifted) {
                r.fail(Witness::new("lift", [m as i128, z as i128]));
            }
            if lifted.len() != m * (small.len() - 1) + 1 {
                r.fail(Witness::new("length", [m as i128, z as i128]));
            }
            attained.insert(lifted.len());
        }
        let max = *attained.iter().next_back().expect("nonempty range");
        let allowed: BTreeSet<usize> = trinomial_length_set::<i64>(m as u64, max)
            .into_iter()
            .map(|v| v as usize)
            .filter(|&v| v <= max)
            .collect();
        for &l in attained.difference(&allowed) {
            r.fail(Witness::new("length_set", [m as i128, l as i128]));
        }
        if m == 2 {
            let b_values: Vec<usize> = (0..)
                .map(|n| seq_b::<i64>(n).expect("b(n) is defined") as usize)
                .take_while(|&v| v <= max)
                .collect();
            for &l in attained.iter().filter(|l| !b_values.contains(l)) {
                r.fail(Witness::new("b_sequence", [l as i128]));
            }
            for &l in b_values.iter().take(LIFT_B_PREFIX) {
                if !attained.contains(&l) {
                    r.fail(Witness::new("b_prefix", [l as i128]));
                }
            }
        }
        let mut w = vec![m as i128];
        w.extend(attained.iter().map(|&l| l as i128));
        r.witnesses.push(Witness::new("attained", w));
    }
    for n in 0..=seq_n {
        let b = seq_b::<i64>(n);
        if b != Ok(2 * seq_a::<i64>(n + 1) - 1) {
            r.fail(Witness::new("b_identity", [n as i128]));
        }
    }
    r.finish()
}

/// One selectable check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Viii,
    Ix,
    Remark,
    Negabase,
    Oracle,
    Lift,
}

impl CheckId {
    pub const ALL: [CheckId; 13] = [
        CheckId::I,
        CheckId::Ii,
        CheckId::Iii,
        CheckId::Iv,
        CheckId::V,
        CheckId::Vi,
        CheckId::Vii,
        CheckId::Viii,
        CheckId::Ix,
        CheckId::Remark,
        CheckId::Negabase,
        CheckId::Oracle,
        CheckId::Lift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::I => "i",
            CheckId::Ii => "ii",
            CheckId::Iii => "iii",
            CheckId::Iv => "iv",
            CheckId::V => "v",
            CheckId::Vi => "vi",
            CheckId::Vii => "vii",
            CheckId::Viii => "viii",
            CheckId::Ix => "ix",
            CheckId::Remark => "remark",
            CheckId::Negabase => "negabase",
            CheckId::Oracle => "oracle",
            CheckId::Lift => "lift",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown check {0:?}")]
pub struct UnknownCheck(pub String);

/// Parses `all` or a comma-separated list of check names.
pub fn parse_suite(text: &str) -> Result<Vec<CheckId>, UnknownCheck> {
    let mut out = BTreeSet::new();
    for part in text.split(',').map(str::trim) {
        if part == "all" {
            out.extend(CheckId::ALL);
            continue;
        }
        let id = CheckId::ALL
            .into_iter()
            .find(|c| c.name() == part)
            .ok_or_else(|| UnknownCheck(part.to_string()))?;
        out.insert(id);
    }
    Ok(out.into_iter().collect())
}

/// Parameters shared by a suite run. `range` overrides the sweep range of
/// checks i, ii, iii, v, vi, ix and negabase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub range: Option<i64>,
    pub samples: usize,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            range: None,
            samples: 10_000,
            seed: 1,
            jobs: 1,
        }
    }
}

pub const FORMULA_RANGE: i64 = 10_000;
pub const SWEEP_RANGE: i64 = 100_000;
pub const BOUNDARY_MAX_LEN: usize = 7;
pub const PAIR_COUNT: usize = 8;
pub const BOUND_GRID: i64 = 300;
pub const RECURRENCE_ITERATIONS: usize = 64;
pub const ORACLE_RANGE: i64 = 200;
pub const ORACLE_MAX_LEN: usize = 18;
pub const LIFT_RANGE: i64 = 1_000;
pub const LIFT_SEQ_N: u64 = 100;
pub const LIFT_B_PREFIX: usize = 8;

/// Runs the selected checks in order, sharing one length sweep.
pub fn run_suite(checks: &[CheckId], cfg: &SuiteConfig) -> Vec<VerificationReport> {
    let sweep = cfg.range.unwrap_or(SWEEP_RANGE);
    let needs_table = checks
        .iter()
        .any(|c| matches!(c, CheckId::Ii | CheckId::Iii | CheckId::V | CheckId::Vi));
    let table = needs_table.then(|| LengthTable::compute(sweep, cfg.jobs));
    let table = || table.as_ref().expect("computed above");
    checks
        .iter()
        .map(|&c| match c {
            CheckId::I => check_length_formula(cfg.range.unwrap_or(FORMULA_RANGE), cfg.jobs),
            CheckId::Ii => length_set_with(table()),
            CheckId::Iii => sign_disjoint_with(table()),
            CheckId::Iv => check_boundary_jumps(BOUNDARY_MAX_LEN),
            CheckId::V => pair_subsequences_with(table(), PAIR_COUNT),
            CheckId::Vi => gap3_with(table()),
            CheckId::Vii => check_lambda_bounds(BOUND_GRID, cfg.samples, cfg.seed, cfg.jobs),
            CheckId::Viii => check_additive_bounds(BOUND_GRID, cfg.samples, cfg.seed, cfg.jobs),
            CheckId::Ix => check_digit_sum(
                cfg.range.unwrap_or(FORMULA_RANGE),
                RECURRENCE_ITERATIONS,
                cfg.jobs,
            ),
            CheckId::Remark => check_remark(),
            CheckId::Negabase => check_negabase_proposition(sweep, cfg.samples, cfg.seed, cfg.jobs),
            CheckId::Oracle => check_oracle(ORACLE_RANGE, ORACLE_MAX_LEN),
            CheckId::Lift => check_lift(LIFT_RANGE, LIFT_SEQ_N),
        })
        .collect()
}

/// Parameters of a report as a compact `key=value` list.
pub fn describe_params(report: &VerificationReport) -> String {
    report
        .params
        .iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn small_sweeps_pass() {
        assert!(check_length_formula(500, 2).passed);
        assert!(check_length_set(2000, 1).passed);
        assert!(check_sign_disjoint(2000, 3).passed);
        assert!(check_gap3(2000, 1).passed);
        assert!(check_pair_subsequences(2000, 4, 1).passed);
        assert!(check_boundary_jumps(7).passed);
        assert!(check_remark().passed);
    }

    #[test]
    fn reports_do_not_depend_on_worker_count() {
        let one = check_lambda_bounds(40, 200, 9, 1).without_timing();
        let four = check_lambda_bounds(40, 200, 9, 4).without_timing();
        assert_eq!(one, four);
        let one = check_additive_bounds(40, 200, 9, 1).without_timing();
        let three = check_additive_bounds(40, 200, 9, 3).without_timing();
        assert_eq!(one.to_json_line(), three.to_json_line());
    }

    #[test]
    fn boundary_rows() {
        let r = check_boundary_jumps(2);
        let rows: Vec<_> = r
            .witnesses
            .iter()
            .map(|w| (w.label.as_str(), w.values.clone()))
            .collect();
        assert!(rows.contains(&("odd", vec![1, 3, 4, 1, 4, 9])));
        assert!(rows.contains(&("even", vec![2, -12, 4, 1, 8, 13])));
    }

    #[test]
    fn probe_examples() {
        let p = digit_sum_probe(&2i64, 10).unwrap();
        assert_eq!((p.digit_sum, p.s_k_derived), (2, 0));
        let p = digit_sum_probe(&-1i64, 10).unwrap();
        assert_eq!((p.digit_sum, p.s_k_derived), (4, -2));
        let p = digit_sum_probe(&0i64, 10).unwrap();
        assert!(p.stabilized);
        assert_eq!(p.recurrence_trace.len(), 13);
        let p = digit_sum_probe(&4i64, 60).unwrap();
        assert!(!p.stabilized);
        let limit = Ratio::new(BigInt::from(8), BigInt::from(5));
        let last = p.recurrence_trace.last().unwrap().clone();
        assert!((last - limit).abs() < Ratio::new(BigInt::from(1), BigInt::from(1_000_000)));
    }

    #[test]
    fn lambda_equalities_present() {
        let r = check_lambda_bounds(20, 50, 3, 2);
        assert!(r.passed);
        let labels: Vec<_> = r.witnesses.iter().map(|w| w.label.as_str()).collect();
        assert_eq!(labels, ["lower_equality", "upper_equality"]);
        assert_eq!(r.witnesses[0].values, [4, 5, 1, 1, 4]);
        assert_eq!(r.witnesses[1].values, [2, 410, 4, 4, 1]);
        assert_eq!(r.unasserted.len(), 1);
    }

    #[test]
    fn additive_bound_has_small_counterexamples() {
        let r = check_additive_bounds(5, 0, 0, 1);
        assert!(!r.passed);
        assert!(r
            .counterexamples
            .contains(&Witness::new("sum", [1, 3, 9, 1, 4])));
    }

    #[test]
    fn suite_parsing() {
        assert_eq!(parse_suite("all").unwrap().len(), 13);
        assert_eq!(
            parse_suite("ix,i,remark").unwrap(),
            [CheckId::I, CheckId::Ix, CheckId::Remark]
        );
        assert!(parse_suite("x").is_err());
    }

    #[test]
    fn report_json_roundtrip() {
        let r = check_remark();
        let line = r.without_timing().to_json_line();
        assert!(!line.contains("elapsed_ms"));
        let back: VerificationReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r.without_timing());
        assert!(r.to_json_line().contains("elapsed_ms"));
    }
}
