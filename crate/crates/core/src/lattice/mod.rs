//! Finite lattice sets in `N^m`: minimal antichains, volumes, Hilbert–Samuel
//! functions, compressedness and Kolchin polynomials.

mod connectivity;
mod kolchin;
mod polynomial;

pub use connectivity::{connectivity_check, dagger_witness, ConnectivityReport, PairConnectivity};
pub use kolchin::{coefficient_sums, family_polynomial, kolchin_polynomial, KolchinSolver};
pub use polynomial::NumericalPolynomial;

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("point {index} has length {found}, expected {expected}")]
    MixedDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("family members live in different ambient dimensions ({0} and {1})")]
    FamilyDimension(usize, usize),
}

/// A point of `N^m`, the exponent of a derivative operator.
///
/// `Ord` is the orderly ranking restricted to one copy of `N^m`: total order
/// first, then left-lexicographic on the coordinates. The product order is
/// [`Multidegree::le_product`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multidegree(Vec<u64>);

impl Multidegree {
    pub fn new(entries: Vec<u64>) -> Self {
        Multidegree(entries)
    }

    pub fn zero(m: usize) -> Self {
        Multidegree(vec![0; m])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.0
    }

    pub fn ord(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&u| u == 0)
    }

    /// `self <= other` componentwise.
    pub fn le_product(&self, other: &Multidegree) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Least upper bound under the product order.
    pub fn lub(&self, other: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.dim(), other.dim());
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl Ord for Multidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord()
            .cmp(&other.ord())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Multidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, u) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<u64>> for Multidegree {
    fn from(v: Vec<u64>) -> Self {
        Multidegree(v)
    }
}

/// Componentwise least upper bound.
pub fn lub(a: &Multidegree, b: &Multidegree) -> Multidegree {
    a.lub(b)
}

/// A finite subset of `N^m`, stored as its antichain of minimal elements in
/// ascending orderly-ranking order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeSet {
    m: usize,
    minimals: Vec<Multidegree>,
}

impl LatticeSet {
    pub fn empty(m: usize) -> Self {
        LatticeSet {
            m,
            minimals: Vec::new(),
        }
    }

    /// Reduces `points` to its minimal elements.
    pub fn new<I, P>(m: usize, points: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = P>,
        P: Into<Multidegree>,
    {
        let points: Vec<Multidegree> = points.into_iter().map(Into::into).collect();
        minimal_elements(m, points)
    }

    pub(crate) fn from_sorted_antichain(m: usize, minimals: Vec<Multidegree>) -> Self {
        LatticeSet { m, minimals }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn minimals(&self) -> &[Multidegree] {
        &self.minimals
    }

    pub fn len(&self) -> usize {
        self.minimals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minimals.is_empty()
    }

    pub fn contains_zero(&self) -> bool {
        self.minimals.first().is_some_and(Multidegree::is_zero)
    }

    /// Largest order among the minimal elements (0 for the empty set).
    pub fn max_ord(&self) -> u64 {
        self.minimals.iter().map(Multidegree::ord).max().unwrap_or(0)
    }

    /// `D`: sum of the orders of the minimal elements.
    pub fn ord_sum(&self) -> u64 {
        self.minimals.iter().map(Multidegree::ord).sum()
    }

    /// Componentwise maximum of the minimal elements.
    pub fn corner(&self) -> Multidegree {
        self.minimals
            .iter()
            .fold(Multidegree::zero(self.m), |acc, p| acc.lub(p))
    }

    /// Whether `point` lies above some minimal element.
    pub fn dominates(&self, point: &Multidegree) -> bool {
        self.minimals.iter().any(|q| q.le_product(point))
    }
}

impl fmt::Display for LatticeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.minimals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// The `<=`-minimal antichain of `points`.
///
/// Sorting by the orderly ranking puts every dominator before the points it
/// dominates, so one forward scan suffices.
pub fn minimal_elements(m: usize, mut points: Vec<Multidegree>) -> Result<LatticeSet, LatticeError> {
    if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.dim() != m) {
        return Err(LatticeError::MixedDimension {
            index,
            expected: m,
            found: p.dim(),
        });
    }
    points.sort();
    points.dedup();
    let mut kept: Vec<Multidegree> = Vec::with_capacity(points.len());
    for p in points {
        if !kept.iter().any(|q| q.le_product(&p)) {
            kept.push(p);
        }
    }
    Ok(LatticeSet::from_sorted_antichain(m, kept))
}

/// Leader sets `E_1, ..., E_n`, one per differential variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedFamily {
    m: usize,
    sets: Vec<LatticeSet>,
}

impl IndexedFamily {
    pub fn new(m: usize, sets: Vec<LatticeSet>) -> Result<Self, LatticeError> {
        if let Some(s) = sets.iter().find(|s| s.m() != m) {
            return Err(LatticeError::FamilyDimension(m, s.m()));
        }
        Ok(IndexedFamily { m, sets })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[LatticeSet] {
        &self.sets
    }
}

/// Calls `f` on every point of `N^m` of order exactly `d`, in ascending
/// lexicographic (hence orderly-ranking) order.
pub fn for_each_of_order<F: FnMut(&[u64])>(m: usize, d: u64, mut f: F) {
    fn rec<F: FnMut(&[u64])>(buf: &mut Vec<u64>, pos: usize, left: u64, f: &mut F) {
        let m = buf.len();
        if pos + 1 == m {
            buf[pos] = left;
            f(buf);
            return;
        }
        for u in 0..=left {
            buf[pos] = u;
            rec(buf, pos + 1, left - u, f);
        }
    }
    if m == 0 {
        if d == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0u64; m];
    rec(&mut buf, 0, d, &mut f);
}

const STAIRCASE_TABLE_LIMIT: usize = 1 << 22;

/// Domination test for a fixed antichain.
///
/// For `m >= 1` the table stores, for each prefix `p` of the first `m-1`
/// coordinates (clamped to the antichain's bounding box), the least last
/// coordinate among minimal elements whose prefix is `<= p`. A point is
/// dominated iff its last coordinate reaches that threshold.
pub struct Staircase<'a> {
    set: &'a LatticeSet,
    caps: Vec<u64>,
    strides: Vec<usize>,
    table: Option<Vec<u64>>,
}

impl<'a> Staircase<'a> {
    pub fn new(set: &'a LatticeSet) -> Self {
        let m = set.m();
        if m == 0 || set.is_empty() {
            return Staircase {
                set,
                caps: Vec::new(),
                strides: Vec::new(),
                table: None,
            };
        }
        let caps: Vec<u64> = (0..m - 1)
            .map(|i| set.minimals().iter().map(|p| p.entries()[i]).max().unwrap_or(0))
            .collect();
        let mut strides = vec![1usize; caps.len()];
        let mut size: usize = 1;
        for i in (0..caps.len()).rev() {
            strides[i] = size;
            size = match size.checked_mul(caps[i] as usize + 1) {
                Some(s) if s <= STAIRCASE_TABLE_LIMIT => s,
                _ => {
                    return Staircase {
                        set,
                        caps,
                        strides,
                        table: None,
                    }
                }
            };
        }
        let mut table = vec![u64::MAX; size];
        for p in set.minimals() {
            let e = p.entries();
            let idx: usize = (0..m - 1).map(|i| e[i] as usize * strides[i]).sum();
            table[idx] = table[idx].min(e[m - 1]);
        }
        // Row-major order visits p - e_i before p.
        let mut digits = vec![0u64; caps.len()];
        for idx in 0..size {
            let mut best = table[idx];
            for i in 0..digits.len() {
                if digits[i] > 0 {
                    best = best.min(table[idx - strides[i]]);
                }
            }
            table[idx] = best;
            for i in (0..digits.len()).rev() {
                if digits[i] < caps[i] {
                    digits[i] += 1;
                    break;
                }
                digits[i] = 0;
            }
        }
        Staircase {
            set,
            caps,
            strides,
            table: Some(table),
        }
    }

    pub fn is_dominated(&self, point: &[u64]) -> bool {
        if self.set.is_empty() {
            return false;
        }
        let m = self.set.m();
        if m == 0 {
            return true;
        }
        match &self.table {
            Some(table) => {
                let idx: usize = (0..m - 1)
                    .map(|i| point[i].min(self.caps[i]) as usize * self.strides[i])
                    .sum();
                table[idx] <= point[m - 1]
            }
            None => self
                .set
                .minimals()
                .iter()
                .any(|q| q.entries().iter().zip(point).all(|(a, b)| a <= b)),
        }
    }
}

/// `H_E(d)`: points of order `d` not dominated by `E`.
pub fn hilbert_samuel(set: &LatticeSet, d: u64) -> u64 {
    let stairs = Staircase::new(set);
    hilbert_samuel_with(&stairs, set.m(), d)
}

fn hilbert_samuel_with(stairs: &Staircase<'_>, m: usize, d: u64) -> u64 {
    let mut count = 0u64;
    for_each_of_order(m, d, |p| {
        if !stairs.is_dominated(p) {
            count += 1;
        }
    });
    count
}

/// `|V_E(s)|`: points of order at most `s` not dominated by `E`.
pub fn volume(set: &LatticeSet, s: u64) -> u64 {
    let stairs = Staircase::new(set);
    (0..=s).map(|d| hilbert_samuel_with(&stairs, set.m(), d)).sum()
}

/// Hilbert–Samuel values `H_E(0..=upto)`.
pub fn hilbert_samuel_series(set: &LatticeSet, upto: u64) -> Vec<u64> {
    let stairs = Staircase::new(set);
    (0..=upto)
        .map(|d| hilbert_samuel_with(&stairs, set.m(), d))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressionReport {
    pub compressed: bool,
    /// Largest order examined.
    pub cutoff: u64,
    /// `(xi, eta)` with `eta` ranked above `xi`, `xi` dominated and `eta` not.
    pub witness: Option<(Multidegree, Multidegree)>,
}

/// Cutoff used when none is given: one past the largest minimal order, plus `m`.
pub fn default_compression_cutoff(set: &LatticeSet) -> u64 {
    1 + set.max_ord() + set.m() as u64
}

/// Checks the compressed-set condition on every order up to `cutoff`.
///
/// Within one order the points are visited in ascending ranking; the set is
/// compressed there iff the dominated points form a final segment.
pub fn is_compressed(set: &LatticeSet, cutoff: u64) -> CompressionReport {
    let stairs = Staircase::new(set);
    let m = set.m();
    for d in 0..=cutoff {
        let mut first_dominated: Option<Vec<u64>> = None;
        let mut witness = None;
        for_each_of_order(m, d, |p| {
            if witness.is_some() {
                return;
            }
            if stairs.is_dominated(p) {
                if first_dominated.is_none() {
                    first_dominated = Some(p.to_vec());
                }
            } else if let Some(xi) = &first_dominated {
                witness = Some((Multidegree::new(xi.clone()), Multidegree::new(p.to_vec())));
            }
        });
        if witness.is_some() {
            return CompressionReport {
                compressed: false,
                cutoff,
                witness,
            };
        }
    }
    CompressionReport {
        compressed: true,
        cutoff,
        witness: None,
    }
}
