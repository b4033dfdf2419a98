//! The extremal staircase sequence `mu_1, ..., mu_L` starting at
//! `(r0, 0, ..., 0)`, its concatenations over `n` variables, and the type-`tau`
//! witness `M(r,m,n,tau)`.

use crate::bounds::{BoundError, Bounds, Limits};
use crate::lattice::{LatticeSet, Multidegree, NumericalPolynomial};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MuError {
    #[error("prefix length {ell} outside 1..={len}")]
    PrefixOutOfRange { ell: usize, len: usize },
    #[error("dimension m must be at least 1")]
    ZeroDimension,
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// Successor of `u` (already past `mu_1`), or `None` when the first `m - 1`
/// entries vanish.
fn successor(u: &[u64]) -> Option<Vec<u64>> {
    let m = u.len();
    if m < 2 {
        return None;
    }
    let mut next = u.to_vec();
    if u[m - 2] > 0 {
        // rule (ii)
        next[m - 2] -= 1;
        next[m - 1] = u[m - 1].checked_add(2)?;
        return Some(next);
    }
    // rule (i)
    let s = u[..m - 1].iter().rposition(|&x| x > 0)?;
    next[s] -= 1;
    next[s + 1] = u[m - 1].checked_add(2)?;
    next[m - 1] = 0;
    Some(next)
}

/// Streams the sequence lazily; the explicit list can be far longer than
/// anything worth storing.
#[derive(Debug, Clone)]
pub struct MuIter {
    next: Option<Vec<u64>>,
    index: u64,
}

impl MuIter {
    pub fn new(r0: u64, m: usize) -> Self {
        let mut first = vec![0; m];
        if m > 0 {
            first[0] = r0;
        }
        MuIter {
            next: Some(first),
            index: 0,
        }
    }
}

impl Iterator for MuIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let cur = self.next.take()?;
        self.index += 1;
        let m = cur.len();
        self.next = if self.index == 1 {
            // mu_2 = (r0-1, 1, 0, ..., 0); the rules start from mu_2
            (m >= 2 && cur[0] > 0).then(|| {
                let mut v = cur.clone();
                v[0] -= 1;
                v[1] = 1;
                v
            })
        } else {
            successor(&cur)
        };
        Some(cur)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuSequence {
    r0: u64,
    m: usize,
    elems: Vec<Multidegree>,
}

impl MuSequence {
    pub fn r0(&self) -> u64 {
        self.r0
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn elems(&self) -> &[Multidegree] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn last(&self) -> &Multidegree {
        self.elems.last().expect("a sequence has at least mu_1")
    }

    /// The first `ell` elements as a lattice set.
    pub fn prefix_set(&self, ell: usize) -> LatticeSet {
        LatticeSet::new(self.m, self.elems[..ell].iter().cloned()).expect("uniform dimension")
    }

    pub fn as_set(&self) -> LatticeSet {
        self.prefix_set(self.len())
    }
}

/// Builds the full sequence from `(r0, 0, ..., 0)`. `r0 = 0` gives the single
/// element `(0, ..., 0)`; `m = 1` gives the single element `(r0)`.
pub fn build_mu(r0: u64, m: usize, limits: &Limits) -> Result<MuSequence, MuError> {
    if m == 0 {
        return Err(MuError::ZeroDimension);
    }
    let mut elems = Vec::new();
    for (i, e) in MuIter::new(r0, m).enumerate() {
        if i as u64 >= limits.max_steps {
            return Err(BoundError::ExceedsCap {
                expression: format!(
                    "mu sequence from ({r0},0,...,0) in N^{m} (more than {} elements)",
                    limits.max_steps
                ),
            }
            .into());
        }
        elems.push(Multidegree::new(e));
    }
    Ok(MuSequence { r0, m, elems })
}

/// Sum of the last coordinates.
pub fn vol_mu(seq: &MuSequence) -> BigUint {
    seq.elems
        .iter()
        .map(|e| BigUint::from(*e.entries().last().expect("m >= 1")))
        .sum()
}

/// Closed form of the Kolchin polynomial of the first `ell` elements:
/// `sum_{i=1}^{m-1} c_{m-i} C(t+i,i) + c` with `mu_ell = (c_1, ..., c_m)` and
/// `c` the running sum of last coordinates.
pub fn omega_mu_prefix(seq: &MuSequence, ell: usize) -> Result<NumericalPolynomial, MuError> {
    if ell == 0 || ell > seq.len() {
        return Err(MuError::PrefixOutOfRange {
            ell,
            len: seq.len(),
        });
    }
    let m = seq.m;
    let c: u64 = seq.elems[..ell]
        .iter()
        .map(|e| e.entries()[m - 1])
        .sum();
    let top = seq.elems[ell - 1].entries();
    let mut coeffs = vec![BigInt::from(c)];
    coeffs.extend((1..m).map(|i| BigInt::from(top[m - i - 1])));
    Ok(NumericalPolynomial::from_coeffs(coeffs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuBlock {
    /// 1-based variable index; block `j` sits on variable `n - j + 1`.
    pub variable: usize,
    pub seq: MuSequence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcatenatedMu {
    pub r: u64,
    pub m: usize,
    pub n: usize,
    pub blocks: Vec<MuBlock>,
}

impl ConcatenatedMu {
    pub fn total_volume(&self) -> BigUint {
        self.blocks.iter().map(|b| vol_mu(&b.seq)).sum()
    }
}

fn start_as_u64(start: &BigUint, r: u64, m: usize, j: usize) -> Result<u64, BoundError> {
    start.to_u64().ok_or_else(|| BoundError::ExceedsCap {
        expression: format!("block {j} starts at C({r}, {m}, {}) = {} bits", j - 1, start.bits()),
    })
}

/// Blocks `j = 1..=n`, block `j` starting at `C^{j-1}_{r,m}`.
pub fn build_concatenated(
    r: u64,
    m: usize,
    n: usize,
    bounds: &mut Bounds,
) -> Result<ConcatenatedMu, MuError> {
    if m == 0 {
        return Err(MuError::ZeroDimension);
    }
    let limits = bounds.limits();
    let mut blocks = Vec::with_capacity(n);
    for j in 1..=n {
        let start = bounds.c(&BigUint::from(r), m as u64, (j - 1) as u64)?;
        let start = start_as_u64(&start, r, m, j)?;
        blocks.push(MuBlock {
            variable: n - j + 1,
            seq: build_mu(start, m, &limits)?,
        });
    }
    Ok(ConcatenatedMu { r, m, n, blocks })
}

/// `M(r,m,n,tau)` and its 1-based position in the last block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MFrak {
    pub value: u64,
    pub index: u64,
}

/// Streams the last block for the first element whose leading `m - tau - 1`
/// entries vanish and returns its `(m - tau)`-th entry.
pub fn m_frak(r: u64, m: usize, n: usize, tau: usize, bounds: &mut Bounds) -> Result<MFrak, MuError> {
    if m == 0 || n == 0 || tau >= m {
        return Err(BoundError::InvalidParameters(format!(
            "M needs 0 <= tau < m and n >= 1 (m={m}, n={n}, tau={tau})"
        ))
        .into());
    }
    let start = bounds.c(&BigUint::from(r), m as u64, (n - 1) as u64)?;
    let start = start_as_u64(&start, r, m, n)?;
    let lead = m - tau - 1;
    let cap = bounds.limits().max_steps;
    for (i, e) in MuIter::new(start, m).enumerate() {
        if i as u64 >= cap {
            break;
        }
        if e[..lead].iter().all(|&u| u == 0) {
            return Ok(MFrak {
                value: e[lead],
                index: i as u64 + 1,
            });
        }
    }
    Err(BoundError::ExceedsCap {
        expression: format!(
            "M(r={r}, m={m}, n={n}, tau={tau}) streams more than {cap} elements of the block from C({r}, {m}, {})",
            n - 1
        ),
    }
    .into())
}

/// `omega_{mu^(n)|l_tau} + sum_{j<n} omega_{mu^(j)}`, the polynomial the
/// type-`tau` bound is read from.
pub fn bound_polynomial(concat: &ConcatenatedMu, tau: usize) -> Result<NumericalPolynomial, MuError> {
    let Some((last, earlier)) = concat.blocks.split_last() else {
        return Ok(NumericalPolynomial::zero());
    };
    let lead = concat.m - tau.min(concat.m - 1) - 1;
    let ell = last
        .seq
        .elems()
        .iter()
        .position(|e| e.entries()[..lead].iter().all(|&u| u == 0))
        .expect("the last element always qualifies")
        + 1;
    let mut p = omega_mu_prefix(&last.seq, ell)?;
    for b in earlier {
        p += &NumericalPolynomial::constant(BigInt::from(vol_mu(&b.seq)));
    }
    Ok(p)
}
