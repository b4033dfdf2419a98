//! Brute-force verifiers kept independent of the fast paths: pairwise
//! domination, polynomial fitting from sampled volumes, exhaustive checks of
//! the Macaulay-bracket lemmas, and seeded random lattice sets.
//!
//! Random sets come from Xoshiro256** seeded through SplitMix64
//! (`seed_from_u64`); every draw is `next_u64() % bound`, so the suites are
//! reproducible from the seed alone.

use crate::lattice::{for_each_of_order, LatticeSet, Multidegree, NumericalPolynomial};
use crate::numeric::{binomial, binomial_signed, bracket_u64};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("samples must sit at consecutive levels (gap after s = {0})")]
    NonConsecutive(u64),
    #[error("need at least {need} samples for degree {m}, got {got}")]
    TooFewSamples { need: usize, got: usize, m: usize },
    #[error("no stabilization: the fitted polynomial matches only the last {matched} samples")]
    NoStabilization { matched: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FitReport {
    pub polynomial: NumericalPolynomial,
    /// Earliest sampled level from which the fit agrees with every later sample.
    pub stabilization_level: u64,
    pub samples: Vec<(u64, BigInt)>,
}

/// Fits `p(t) = sum_{i<=m} a_i C(t+i,i)` to the last `m+1` samples and reports
/// where the fit starts to hold.
///
/// With backward differences `nabla^k p(t) = sum_{i>=k} a_i C(t+i-k, i-k)`,
/// evaluated at the last sample, the coefficients are solved from `a_m` down.
/// At least one sample beyond the fitting window must agree.
pub fn fit_numerical_polynomial(values: &[(u64, BigInt)], m: usize) -> Result<FitReport, OracleError> {
    let need = m + 2;
    if values.len() < need {
        return Err(OracleError::TooFewSamples {
            need,
            got: values.len(),
            m,
        });
    }
    for w in values.windows(2) {
        if w[1].0 != w[0].0 + 1 {
            return Err(OracleError::NonConsecutive(w[0].0));
        }
    }
    let window: Vec<BigInt> = values[values.len() - m - 1..].iter().map(|(_, v)| v.clone()).collect();
    let t = BigInt::from(values.last().expect("nonempty").0);
    // nabla[k] = k-th backward difference at the last sample
    let mut diffs = window.clone();
    let mut nabla = vec![diffs[m].clone()];
    for _ in 0..m {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        nabla.push(diffs.last().expect("window shrinks to one").clone());
    }
    let mut a = vec![BigInt::zero(); m + 1];
    for k in (0..=m).rev() {
        let mut rest = BigInt::zero();
        for (i, ai) in a.iter().enumerate().skip(k + 1) {
            rest += ai * binomial_signed(&(&t + (i - k)), (i - k) as u64);
        }
        a[k] = &nabla[k] - rest;
    }
    let polynomial = NumericalPolynomial::from_coeffs(a);
    let matched = values
        .iter()
        .rev()
        .take_while(|(s, v)| polynomial.eval(&BigInt::from(*s)) == *v)
        .count();
    if matched < need {
        return Err(OracleError::NoStabilization { matched });
    }
    Ok(FitReport {
        stabilization_level: values[values.len() - matched].0,
        polynomial,
        samples: values.to_vec(),
    })
}

/// Fits against brute-force volumes at levels `0..=t* + m + 3`, where `t*` is
/// the order of the componentwise maximum of the minimal elements.
pub fn fit_from_volumes(set: &LatticeSet) -> Result<FitReport, OracleError> {
    let top = set.corner().ord() + set.m() as u64 + 3;
    let samples = naive_volume_series(set, top)
        .into_iter()
        .enumerate()
        .map(|(s, v)| (s as u64, BigInt::from(v)))
        .collect::<Vec<_>>();
    fit_numerical_polynomial(&samples, set.m())
}

/// Pairwise domination test over the whole antichain.
pub fn naive_dominated(set: &LatticeSet, p: &[u64]) -> bool {
    set.minimals()
        .iter()
        .any(|q| q.entries().iter().zip(p).all(|(a, b)| a <= b))
}

pub fn naive_hilbert_samuel(set: &LatticeSet, d: u64) -> u64 {
    let mut count = 0;
    for_each_of_order(set.m(), d, |p| {
        if !naive_dominated(set, p) {
            count += 1;
        }
    });
    count
}

pub fn naive_volume(set: &LatticeSet, s: u64) -> u64 {
    (0..=s).map(|d| naive_hilbert_samuel(set, d)).sum()
}

/// Cumulative volumes for `s = 0..=upto`.
pub fn naive_volume_series(set: &LatticeSet, upto: u64) -> Vec<u64> {
    let mut acc = 0;
    (0..=upto)
        .map(|d| {
            acc += naive_hilbert_samuel(set, d);
            acc
        })
        .collect()
}

/// Quadratic minimal-element filter.
pub fn naive_minimal_elements(points: &[Multidegree]) -> Vec<Multidegree> {
    let mut out: Vec<Multidegree> = points
        .iter()
        .filter(|p| !points.iter().any(|q| q != *p && q.le_product(p)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Up to `max_points` random points of order at most `max_order`, reduced to
/// their minimal elements. Each unit of a point's order goes to a uniformly
/// drawn coordinate.
pub fn random_points(m: usize, max_order: u64, max_points: usize, seed: u64) -> Vec<Multidegree> {
    assert!(m >= 1, "dimension must be positive");
    let mut g = rng(seed);
    if max_points == 0 {
        return Vec::new();
    }
    let k = 1 + (g.next_u64() % max_points as u64) as usize;
    (0..k)
        .map(|_| {
            let d = g.next_u64() % (max_order + 1);
            let mut e = vec![0u64; m];
            for _ in 0..d {
                e[(g.next_u64() % m as u64) as usize] += 1;
            }
            Multidegree::new(e)
        })
        .collect()
}

pub fn random_lattice_set(m: usize, max_order: u64, max_points: usize, seed: u64) -> LatticeSet {
    LatticeSet::new(m, random_points(m, max_order, max_points, seed)).expect("uniform dimension")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    /// `a^<d> + b^<d> <= (a+b)^<d>`.
    Superadditive,
    /// `a, b <= N = C(m-1+d,d)`, `a + b <= N + c`: `a^<d> + b^<d> <= N^<d> + c^<d>`,
    /// strict when `a, b > 0` and `c = 0`.
    Saturated,
    /// Sums of brackets under `b_1 <= b_2 = ... = b_s = N`.
    Technical,
    /// Equal bracket sums with all `b_i = N` force the sequences to coincide.
    Rigidity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaRanges {
    /// Bound on `a`, `b` for the superadditive check.
    pub max_value: u64,
    pub max_d: u64,
    pub max_m: u64,
    /// Bound on sequence lengths `t`, `s`.
    pub max_len: usize,
}

impl LemmaRanges {
    pub fn for_lemma(lemma: Lemma) -> Self {
        match lemma {
            Lemma::Superadditive => LemmaRanges {
                max_value: 200,
                max_d: 4,
                max_m: 0,
                max_len: 0,
            },
            Lemma::Saturated => LemmaRanges {
                max_value: 0,
                max_d: 4,
                max_m: 5,
                max_len: 0,
            },
            Lemma::Technical | Lemma::Rigidity => LemmaRanges {
                max_value: 0,
                max_d: 3,
                max_m: 3,
                max_len: 4,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub checked: u64,
    pub violations: u64,
    pub first_counterexample: Option<String>,
}

impl LemmaReport {
    fn new(lemma: Lemma) -> Self {
        LemmaReport {
            lemma,
            checked: 0,
            violations: 0,
            first_counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(what());
            }
        }
    }
}

/// Bracket table `br[a] = a^<d>` for `a <= n`.
fn bracket_table(n: u64, d: u64) -> Vec<BigUint> {
    (0..=n).map(|a| bracket_u64(a, d)).collect()
}

/// Nondecreasing sequences of length `len` with entries in `lo..=hi`.
fn nondecreasing(len: usize, lo: u64, hi: u64, f: &mut impl FnMut(&[u64])) {
    fn go(buf: &mut Vec<u64>, len: usize, lo: u64, hi: u64, f: &mut impl FnMut(&[u64])) {
        if buf.len() == len {
            f(buf);
            return;
        }
        for v in lo..=hi {
            buf.push(v);
            go(buf, len, v, hi, f);
            buf.pop();
        }
    }
    go(&mut Vec::with_capacity(len), len, lo, hi, f);
}

pub fn exhaustive_lemma_check(lemma: Lemma, ranges: &LemmaRanges) -> LemmaReport {
    let mut rep = LemmaReport::new(lemma);
    match lemma {
        Lemma::Superadditive => {
            for d in 1..=ranges.max_d {
                let br = bracket_table(2 * ranges.max_value, d);
                for a in 0..=ranges.max_value {
                    for b in 0..=ranges.max_value {
                        let ok = &br[a as usize] + &br[b as usize] <= br[(a + b) as usize];
                        rep.record(ok, || format!("a={a} b={b} d={d}"));
                    }
                }
            }
        }
        Lemma::Saturated => {
            for m in 1..=ranges.max_m {
                for d in 1..=ranges.max_d {
                    let n: u64 = binomial(m - 1 + d, d).try_into().expect("desk-scale N");
                    let br = bracket_table(2 * n, d);
                    for a in 0..=n {
                        for b in 0..=n {
                            let c = (a + b).saturating_sub(n);
                            let lhs = &br[a as usize] + &br[b as usize];
                            let rhs = &br[n as usize] + &br[c as usize];
                            let ok = if a > 0 && b > 0 && c == 0 { lhs < rhs } else { lhs <= rhs };
                            rep.record(ok, || format!("m={m} d={d} a={a} b={b} c={c}"));
                        }
                    }
                }
            }
        }
        Lemma::Technical => {
            for m in 1..=ranges.max_m {
                for d in 1..=ranges.max_d {
                    let n: u64 = binomial(m - 1 + d, d).try_into().expect("desk-scale N");
                    let br = bracket_table(n, d);
                    let sum_br = |xs: &[u64]| xs.iter().map(|&x| br[x as usize].clone()).sum::<BigUint>();
                    for s in 1..=ranges.max_len {
                        // b_s = N; for s >= 2, b_1 ranges over 0..=N and b_2.. = N
                        let b1s: Vec<u64> = if s == 1 { vec![n] } else { (0..=n).collect() };
                        for b1 in b1s {
                            let mut bs = vec![n; s];
                            bs[0] = b1;
                            let b_sum: u64 = bs.iter().sum();
                            let b_br = sum_br(&bs);
                            for t in 1..=ranges.max_len {
                                nondecreasing(t, 0, n, &mut |a: &[u64]| {
                                    if a.iter().sum::<u64>() <= b_sum {
                                        let ok = sum_br(a) <= b_br;
                                        rep.record(ok, || format!("m={m} d={d} a={a:?} b={bs:?}"));
                                    }
                                });
                            }
                        }
                    }
                }
            }
        }
        Lemma::Rigidity => {
            for m in 1..=ranges.max_m {
                for d in 1..=ranges.max_d {
                    let n: u64 = binomial(m - 1 + d, d).try_into().expect("desk-scale N");
                    let br = bracket_table(n, d);
                    for s in 1..=ranges.max_len {
                        let b_sum = n * s as u64;
                        let b_br = &br[n as usize] * BigUint::from(s);
                        for t in 1..=ranges.max_len {
                            nondecreasing(t, 1, n, &mut |a: &[u64]| {
                                let a_br: BigUint = a.iter().map(|&x| br[x as usize].clone()).sum();
                                if a.iter().sum::<u64>() <= b_sum && a_br == b_br {
                                    let ok = t == s && a.iter().all(|&x| x == n);
                                    rep.record(ok, || format!("m={m} d={d} a={a:?} b=[{n}; {s}]"));
                                }
                            });
                        }
                    }
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{hilbert_samuel, minimal_elements, volume, Staircase};

    fn set(m: usize, pts: &[&[u64]]) -> LatticeSet {
        LatticeSet::new(m, pts.iter().map(|p| p.to_vec())).unwrap()
    }

    fn consts(c: &[i64]) -> NumericalPolynomial {
        NumericalPolynomial::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn fit_constant() {
        let samples: Vec<_> = (6..=12).map(|s| (s, BigInt::from(16))).collect();
        let rep = fit_numerical_polynomial(&samples, 2).unwrap();
        assert_eq!(rep.polynomial, consts(&[16]));
        assert!(rep.stabilization_level <= 6);
    }

    #[test]
    fn fit_top_binomial() {
        let samples: Vec<_> = (0..8u64).map(|s| (s, BigInt::from(binomial(s + 2, 2)))).collect();
        let rep = fit_numerical_polynomial(&samples, 2).unwrap();
        assert_eq!(rep.polynomial, consts(&[0, 0, 1]));
        assert_eq!(rep.stabilization_level, 0);
    }

    #[test]
    fn fit_column() {
        let rep = fit_from_volumes(&set(2, &[&[1, 0]])).unwrap();
        assert_eq!(rep.polynomial, consts(&[0, 1]));
    }

    #[test]
    fn fit_reports_stabilization() {
        // volume of {(4,0),(0,4)} is C(s+2,2) until s = 3, constant 16 from s = 6
        let rep = fit_from_volumes(&set(2, &[&[4, 0], &[0, 4]])).unwrap();
        assert_eq!(rep.polynomial, consts(&[16]));
        assert_eq!(rep.stabilization_level, 6);
    }

    #[test]
    fn fit_errors() {
        let few: Vec<_> = (0..3).map(|s| (s, BigInt::from(1))).collect();
        assert!(matches!(
            fit_numerical_polynomial(&few, 2),
            Err(OracleError::TooFewSamples { .. })
        ));
        let gap = vec![(0, BigInt::from(1)), (2, BigInt::from(1)), (3, BigInt::from(1))];
        assert!(matches!(fit_numerical_polynomial(&gap, 0), Err(OracleError::NonConsecutive(0))));
        // a jump in the last-but-window sample
        let mut bad: Vec<_> = (0..5).map(|s| (s, BigInt::from(3))).collect();
        bad[3].1 = BigInt::from(4);
        assert!(matches!(
            fit_numerical_polynomial(&bad, 0),
            Err(OracleError::NoStabilization { matched: 1 })
        ));
    }

    #[test]
    fn random_sets_are_reproducible() {
        assert_eq!(random_lattice_set(2, 5, 4, 42), random_lattice_set(2, 5, 4, 42));
        let e = random_lattice_set(2, 5, 4, 42);
        assert!((1..=4).contains(&e.len()));
        for seed in 0..20 {
            let e = random_lattice_set(3, 0, 4, seed);
            assert!(e.is_empty() || e.contains_zero());
            let e = random_lattice_set(3, 6, 5, seed);
            let again = minimal_elements(3, e.minimals().to_vec()).unwrap();
            assert_eq!(again, e);
        }
        assert!(random_lattice_set(2, 5, 0, 1).is_empty());
    }

    #[test]
    fn naive_minimal_matches_sorted_scan() {
        for seed in 0..30 {
            let pts = random_points(3, 8, 50, seed);
            let fast = minimal_elements(3, pts.clone()).unwrap();
            assert_eq!(fast.minimals(), naive_minimal_elements(&pts).as_slice());
        }
    }

    #[test]
    fn naive_counts_match_staircase() {
        for seed in 0..40 {
            let e = random_lattice_set(1 + (seed % 4) as usize, 6, 5, seed);
            let st = Staircase::new(&e);
            for d in 0..9 {
                assert_eq!(hilbert_samuel(&e, d), naive_hilbert_samuel(&e, d));
                assert_eq!(volume(&e, d), naive_volume(&e, d));
                for_each_of_order(e.m(), d, |p| assert_eq!(st.is_dominated(p), naive_dominated(&e, p)));
            }
        }
    }

    #[test]
    fn lemma_checks_small_ranges() {
        for lemma in [Lemma::Superadditive, Lemma::Saturated, Lemma::Technical, Lemma::Rigidity] {
            let mut ranges = LemmaRanges::for_lemma(lemma);
            ranges.max_value = ranges.max_value.min(30);
            ranges.max_len = ranges.max_len.min(3);
            let rep = exhaustive_lemma_check(lemma, &ranges);
            assert!(rep.checked > 0, "{lemma:?}");
            assert_eq!(rep.violations, 0, "{lemma:?}: {:?}", rep.first_counterexample);
        }
    }

    #[test]
    fn rigidity_sees_the_trivial_solution() {
        let rep = exhaustive_lemma_check(
            Lemma::Rigidity,
            &LemmaRanges {
                max_value: 0,
                max_d: 1,
                max_m: 1,
                max_len: 2,
            },
        );
        // m = 1: N = 1, only a = b qualifies
        assert_eq!(rep.checked, 2);
    }
}
