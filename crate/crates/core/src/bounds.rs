//! Ackermann-based order bounds and the coefficient / typical-dimension
//! bounds built on them.
//!
//! Every quantity here is exact. Work is bounded by [`Limits`]: a bit-size cap
//! on intermediate integers and a step cap on loops (C iterations, rewrite
//! steps, F summations). Anything beyond the caps comes back as
//! [`BoundError::ExceedsCap`] carrying a symbolic description of where the
//! computation blew up.

use crate::numeric::binomial_big;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

/// Environment variable read by the CLI for the default bit cap.
pub const CAP_BITS_ENV: &str = "KOLCHIN_CAP_BITS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_bits: u64,
    pub max_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_bits: 1_000_000,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("bound astronomically large: {expression}")]
    ExceedsCap { expression: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

impl BoundError {
    fn cap(expression: impl Into<String>) -> Self {
        BoundError::ExceedsCap {
            expression: expression.into(),
        }
    }

    /// Appends an enclosing expression to a cap error.
    fn within(self, outer: impl fmt::Display) -> Self {
        match self {
            BoundError::ExceedsCap { expression } => BoundError::ExceedsCap {
                expression: format!("{expression} <- {outer}"),
            },
            other => other,
        }
    }
}

type Result<T> = std::result::Result<T, BoundError>;

/// How the Ackermann function is extended to `y = -1` inside `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AckermannExtension {
    /// `A(x,-1) = 1` for `x > 0` and `A(0,-1) = 0`, the value `y + 1` already gives.
    #[default]
    NegativeOne,
    /// `A(x,-1) = 1` for `x > 0`, plus the point override `A(0,1) = 0`.
    PointOverride,
}

/// The argument `F` receives in the volume recursion `nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VolumeArgument {
    /// `nu(x,y) = F(x-1, C^1_{y-1,x}) + nu(x,y-1)`; agrees with the staircase volume.
    #[default]
    Aligned,
    /// `nu(x,y) = F(x-1, C^1_{y-1,x} + 1) + nu(x,y-1)`.
    AsPrinted,
}

/// The Ackermann argument in the entry recursion `B^i`, `i >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryRecursion {
    /// `B^i = A(m-i+2, B^{i-1} - 2) + 1`; agrees with the staircase entries.
    #[default]
    Aligned,
    /// `B^i = A(m-i+2, B^{i-1} - 1) + 1`.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Conventions {
    pub ackermann: AckermannExtension,
    pub volume: VolumeArgument,
    pub entry: EntryRecursion,
}

/// Which formula produced a typical-dimension bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Formula {
    /// `tau = m`: `a_m <= n`.
    TranscendenceDegree,
    /// `tau = m - 1`: `a_{m-1} <= n r`.
    CodimensionOne,
    /// `r = 0`, `tau < m`: the polynomial vanishes.
    ZeroOrder,
    /// `m = 2`, `tau = 0`: `(4^n - 1)/3 * r^2`.
    PlanarClosedForm,
    /// `m >= 3`, `1 <= tau <= m-2`: `B^{m-tau}_{r,m,n}`.
    StaircaseEntry,
    /// `m >= 3`, `tau = 0`: `sum_i nu(m, C^{i-1}_{r,m})`.
    StaircaseVolume,
}

impl Formula {
    pub fn symbolic(self) -> &'static str {
        match self {
            Formula::TranscendenceDegree => "n",
            Formula::CodimensionOne => "n*r",
            Formula::ZeroOrder => "0",
            Formula::PlanarClosedForm => "(4^n-1)/3 * r^2",
            Formula::StaircaseEntry => "B^(m-tau)_(r,m,n)",
            Formula::StaircaseVolume => "sum_(i=1..n) nu(m, C^(i-1)_(r,m))",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub r: u64,
    pub m: u64,
    pub n: u64,
    pub tau: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundValue {
    Exact(BigUint),
    ExceedsCap { expression: String },
}

impl BoundValue {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            BoundValue::Exact(v) => Some(v),
            BoundValue::ExceedsCap { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub value: BoundValue,
    pub formula: Formula,
    pub params: BoundParams,
}

/// Coefficient-sum bound: `|a_m| + ... + |a_{m-j}| <= n D^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientBound {
    pub c: BigUint,
    pub d: BigUint,
    /// `n D^j` for `j = 0..=m`.
    pub sums: Vec<BigUint>,
}

fn show(v: &BigUint) -> String {
    if v.bits() <= 96 {
        v.to_string()
    } else {
        format!("<{}-bit integer>", v.bits())
    }
}

fn show_signed(v: &BigInt) -> String {
    if v.is_negative() {
        format!("-{}", show(v.magnitude()))
    } else {
        show(v.magnitude())
    }
}

fn to_steps(v: &BigUint) -> Option<u64> {
    v.to_u64()
}

/// Session object holding limits, conventions and memo tables. Tables are
/// owned by the session, so independent sessions never share state.
#[derive(Debug, Default)]
pub struct Bounds {
    limits: Limits,
    conventions: Conventions,
    steps: u64,
    /// `C^1_{r,m}` for `r = 0, 1, ...`, keyed by `m`.
    c1_tables: HashMap<u64, Vec<BigUint>>,
    ack_memo: HashMap<(u64, BigUint), BigUint>,
    f_memo: HashMap<(u64, BigUint), BigUint>,
}

impl Bounds {
    pub fn new(limits: Limits) -> Self {
        Bounds {
            limits,
            ..Default::default()
        }
    }

    pub fn with_conventions(limits: Limits, conventions: Conventions) -> Self {
        Bounds {
            limits,
            conventions,
            ..Default::default()
        }
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    fn step(&mut self, what: impl FnOnce() -> String) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limits.max_steps {
            return Err(BoundError::cap(format!(
                "{} (more than {} steps)",
                what(),
                self.limits.max_steps
            )));
        }
        Ok(())
    }

    fn check_bits(&self, v: BigUint, what: impl FnOnce() -> String) -> Result<BigUint> {
        if v.bits() > self.limits.max_bits {
            return Err(BoundError::cap(format!(
                "{} (more than {} bits)",
                what(),
                self.limits.max_bits
            )));
        }
        Ok(v)
    }

    // ---------------------------------------------------------------- Ackermann

    pub fn ackermann(&mut self, x: u64, y: &BigUint) -> Result<BigUint> {
        self.steps = 0;
        self.ack(x, y)
    }

    fn ack(&mut self, x: u64, y: &BigUint) -> Result<BigUint> {
        match x {
            0 => Ok(y + 1u32),
            1 => Ok(y + 2u32),
            2 => Ok(y * 2u32 + 3u32),
            3 => {
                // 2^(y+3) - 3
                let exp = match y.to_u64() {
                    Some(e) if e + 3 <= self.limits.max_bits => e + 3,
                    _ => {
                        return Err(BoundError::cap(format!(
                            "A(3, {}) = 2^({}+3)-3 (more than {} bits)",
                            show(y),
                            show(y),
                            self.limits.max_bits
                        )))
                    }
                };
                Ok((BigUint::one() << exp) - 3u32)
            }
            _ => {
                if *y >= BigUint::from(2u32) {
                    return Err(BoundError::cap(format!("A({x}, {})", show(y))));
                }
                let key = (x, y.clone());
                if let Some(v) = self.ack_memo.get(&key) {
                    return Ok(v.clone());
                }
                let v = if y.is_zero() {
                    self.ack(x - 1, &BigUint::one())
                } else {
                    let inner = self.ack(x, &(y - 1u32))?;
                    self.ack(x - 1, &inner)
                }
                .map_err(|e| e.within(format!("A({x}, {})", show(y))))?;
                let v = self.check_bits(v, || format!("A({x}, {})", show(y)))?;
                self.ack_memo.insert(key, v.clone());
                Ok(v)
            }
        }
    }

    /// Ackermann extended to `y = -1`.
    pub fn ackermann_ext(&mut self, x: u64, y: &BigInt) -> Result<BigUint> {
        self.steps = 0;
        self.ack_ext(x, y)
    }

    fn ack_ext(&mut self, x: u64, y: &BigInt) -> Result<BigUint> {
        if *y < BigInt::from(-1) {
            return Err(BoundError::InvalidParameters(format!(
                "A({x}, {y}) is undefined below y = -1"
            )));
        }
        if *y == BigInt::from(-1) {
            return Ok(if x > 0 { BigUint::one() } else { BigUint::zero() });
        }
        if x == 0
            && *y == BigInt::one()
            && self.conventions.ackermann == AckermannExtension::PointOverride
        {
            return Ok(BigUint::zero());
        }
        self.ack(x, y.magnitude())
    }

    // ---------------------------------------------------------------- C

    /// `C^1_{r,m}`, extending the per-`m` table as needed.
    fn c1(&mut self, r: &BigUint, m: u64) -> Result<BigUint> {
        let Some(target) = to_steps(r) else {
            return Err(BoundError::cap(format!("C({}, {m}, 1)", show(r))));
        };
        let table = self.c1_tables.entry(m).or_insert_with(|| vec![BigUint::zero()]);
        let have = table.len() as u64;
        if target < have {
            return Ok(table[target as usize].clone());
        }
        if target - have + 1 > self.limits.max_steps.saturating_sub(self.steps) {
            self.steps = self.limits.max_steps;
            return Err(BoundError::cap(format!(
                "C({}, {m}, 1) needs {} Ackermann iterations",
                show(r),
                show(r)
            )));
        }
        let mut cur = table.last().cloned().expect("seeded");
        let mut fresh = Vec::new();
        for i in have..=target {
            self.steps += 1;
            cur = self
                .ack(m - 1, &cur)
                .map_err(|e| e.within(format!("C({i}, {m}, 1)")))?;
            cur = self.check_bits(cur, || format!("C({i}, {m}, 1)"))?;
            fresh.push(cur.clone());
        }
        self.c1_tables.get_mut(&m).expect("inserted").extend(fresh);
        Ok(cur)
    }

    /// `C^n_{r,m}`, with `C^0_{r,m} = r`.
    pub fn c(&mut self, r: &BigUint, m: u64, n: u64) -> Result<BigUint> {
        self.steps = 0;
        self.c_inner(r, m, n)
    }

    fn c_inner(&mut self, r: &BigUint, m: u64, n: u64) -> Result<BigUint> {
        if m == 0 {
            return Err(BoundError::InvalidParameters("C requires m >= 1".into()));
        }
        let mut cur = r.clone();
        for k in 1..=n {
            cur = self
                .c1(&cur, m)
                .map_err(|e| e.within(format!("C({}, {m}, {k})", show(r))))?;
        }
        Ok(cur)
    }

    // ---------------------------------------------------------------- coefficient-sum bounds

    /// `D = C(C+m-1, C) * C` and `n D^j` for `j = 0..=m`, where `C = C^n_{r,m}`.
    pub fn coefficient_bound(&mut self, r: u64, m: u64, n: u64) -> Result<CoefficientBound> {
        self.steps = 0;
        let c = self
            .c_inner(&BigUint::from(r), m, n)
            .map_err(|e| e.within(format!("coefficient_bound(r={r}, m={m}, n={n})")))?;
        let d = binomial_big(&(&c + m - 1u32), m - 1) * &c;
        let d = self.check_bits(d, || format!("D for C^{n}_({r},{m})"))?;
        let mut sums = Vec::with_capacity(m as usize + 1);
        let mut pow = BigUint::one();
        for j in 0..=m {
            if j > 0 {
                if d.bits().saturating_mul(j) > self.limits.max_bits + 1 {
                    return Err(BoundError::cap(format!("n * D^{j} with D = {}", show(&d))));
                }
                pow *= &d;
            }
            sums.push(&pow * n);
        }
        Ok(CoefficientBound { c, d, sums })
    }

    /// `n * (C^n_{r,m})^m`.
    pub fn type_zero_alt_bound(&mut self, r: u64, m: u64, n: u64) -> Result<BigUint> {
        self.steps = 0;
        let c = self
            .c_inner(&BigUint::from(r), m, n)
            .map_err(|e| e.within(format!("type_zero_alt_bound(r={r}, m={m}, n={n})")))?;
        if c.bits().saturating_mul(m) > self.limits.max_bits + 1 {
            return Err(BoundError::cap(format!("n * C^{n}_({r},{m})^{m}")));
        }
        Ok(c.pow(m as u32) * n)
    }

    // ---------------------------------------------------------------- B, Omega, Upsilon

    /// `B^i_{r,m,n}` for `1 <= i <= m`.
    pub fn b(&mut self, r: u64, m: u64, n: u64, i: u64) -> Result<BigUint> {
        self.steps = 0;
        self.b_inner(r, m, n, i)
    }

    fn b_inner(&mut self, r: u64, m: u64, n: u64, i: u64) -> Result<BigUint> {
        if m == 0 || n == 0 || i == 0 || i > m {
            return Err(BoundError::InvalidParameters(format!(
                "B^{i} needs 1 <= i <= m, m >= 1, n >= 1 (m={m}, n={n})"
            )));
        }
        let label = |k: u64| format!("B^{k}(r={r}, m={m}, n={n})");
        let b1 = self
            .c_inner(&BigUint::from(r), m, n - 1)
            .map_err(|e| e.within(label(1)))?;
        if i == 1 {
            return Ok(b1);
        }
        if b1.is_zero() {
            return Ok(BigUint::zero());
        }
        let mut prev = self
            .c1(&(&b1 - 1u32), m)
            .map_err(|e| e.within(label(2)))?
            + 1u32;
        for k in 3..=i {
            let offset = match self.conventions.entry {
                EntryRecursion::Aligned => 2,
                EntryRecursion::AsPrinted => 1,
            };
            let arg = BigInt::from(prev.clone()) - offset;
            prev = self
                .ack_ext(m - k + 2, &arg)
                .map_err(|e| e.within(label(k)))?
                + 1u32;
            prev = self.check_bits(prev, || label(k))?;
        }
        Ok(prev)
    }

    /// Runs the entry rewrite system on the last block and returns the value
    /// at the first state whose leading `m - tau - 1` entries vanish.
    pub fn omega_alg(&mut self, r: u64, m: u64, n: u64, tau: u64) -> Result<BigUint> {
        self.steps = 0;
        if m == 0 || n == 0 || tau >= m {
            return Err(BoundError::InvalidParameters(format!(
                "Omega needs 0 <= tau < m and n >= 1 (m={m}, n={n}, tau={tau})"
            )));
        }
        let label = format!("Omega(r={r}, m={m}, n={n}, tau={tau})");
        let start = self
            .c_inner(&BigUint::from(r), m, n - 1)
            .map_err(|e| e.within(&label))?;
        if tau == m - 1 || start.is_zero() {
            return Ok(start);
        }
        let m = m as usize;
        let lead = m - tau as usize - 1;
        let mut state = vec![BigUint::zero(); m];
        state[0] = &start - 1u32;
        state[1] += 1u32;
        loop {
            if state[..lead].iter().all(Zero::is_zero) {
                return Ok(state[lead].clone());
            }
            self.step(|| label.clone())?;
            rewrite(&mut state, |_, _| {});
        }
    }

    /// Volume of the staircase block starting at `(r0, 0, ..., 0)`, accumulated
    /// along the rewrite system.
    pub fn upsilon_alg(&mut self, r0: &BigUint, m: u64) -> Result<BigUint> {
        self.steps = 0;
        self.upsilon_inner(r0, m)
    }

    fn upsilon_inner(&mut self, r0: &BigUint, m: u64) -> Result<BigUint> {
        if m == 0 {
            return Err(BoundError::InvalidParameters("Upsilon needs m >= 1".into()));
        }
        if r0.is_zero() {
            return Ok(BigUint::zero());
        }
        if m == 1 {
            return Ok(r0.clone());
        }
        let label = format!("Upsilon({}, {m})", show(r0));
        let m = m as usize;
        let mut state = vec![BigUint::zero(); m];
        state[0] = r0 - 1u32;
        state[1] += 1u32;
        // the start element's own last entry: 1 when m = 2, else 0
        let mut acc = state[m - 1].clone();
        loop {
            if state[..m - 1].iter().all(Zero::is_zero) {
                return Ok(acc);
            }
            self.step(|| label.clone())?;
            rewrite(&mut state, |run, last| {
                // entries last+2, last+4, ..., last+2*run
                acc += run * last + run * (run + 1u32);
            });
            acc = self.check_bits(acc, || label.clone())?;
        }
    }

    // ---------------------------------------------------------------- F and nu

    pub fn f(&mut self, x: u64, y: &BigInt) -> Result<BigUint> {
        self.steps = 0;
        self.f_inner(x, y)
    }

    fn f_inner(&mut self, x: u64, y: &BigInt) -> Result<BigUint> {
        if x == 0 {
            return Ok(BigUint::one());
        }
        if *y < BigInt::from(-1) {
            return Err(BoundError::InvalidParameters(format!("F({x}, {y})")));
        }
        if x == 1 {
            // y + 1 terms, each F(0, .) = 1
            return Ok((y + 1u32).magnitude().clone());
        }
        let key = (x, y.magnitude().clone());
        if !y.is_negative() {
            if let Some(v) = self.f_memo.get(&key) {
                return Ok(v.clone());
            }
        }
        let label = || format!("F({x}, {})", show_signed(y));
        let mut total = BigUint::zero();
        let mut i = BigInt::from(-1);
        while i < *y {
            self.step(label)?;
            let a = self.ack_ext(x, &i).map_err(|e| e.within(label()))?;
            total += self
                .f_inner(x - 1, &BigInt::from(a))
                .map_err(|e| e.within(label()))?;
            total = self.check_bits(total, label)?;
            i += 1;
        }
        if !y.is_negative() {
            self.f_memo.insert(key, total.clone());
        }
        Ok(total)
    }

    pub fn nu(&mut self, x: u64, y: &BigUint) -> Result<BigUint> {
        self.steps = 0;
        self.nu_inner(x, y)
    }

    fn nu_inner(&mut self, x: u64, y: &BigUint) -> Result<BigUint> {
        if x == 0 {
            return Err(BoundError::InvalidParameters("nu needs x >= 1".into()));
        }
        let label = || format!("nu({x}, {})", show(y));
        let Some(count) = to_steps(y) else {
            return Err(BoundError::cap(label()));
        };
        let mut total = BigUint::zero();
        for z in 0..count {
            self.step(label)?;
            let c = self.c1(&BigUint::from(z), x).map_err(|e| e.within(label()))?;
            let arg = match self.conventions.volume {
                VolumeArgument::Aligned => BigInt::from(c),
                VolumeArgument::AsPrinted => BigInt::from(c) + 1,
            };
            total += self.f_inner(x - 1, &arg).map_err(|e| e.within(label()))?;
            total = self.check_bits(total, label)?;
        }
        Ok(total)
    }

    // ---------------------------------------------------------------- dispatch

    /// Best available bound on the typical differential dimension `a_tau`.
    pub fn typical_dim_bound(&mut self, r: u64, m: u64, n: u64, tau: u64) -> Result<BoundResult> {
        if m == 0 || n == 0 || tau > m {
            return Err(BoundError::InvalidParameters(format!(
                "need m >= 1, n >= 1, 0 <= tau <= m (m={m}, n={n}, tau={tau})"
            )));
        }
        self.steps = 0;
        let params = BoundParams { r, m, n, tau };
        let (formula, value) = if tau == m {
            (Formula::TranscendenceDegree, Ok(BigUint::from(n)))
        } else if r == 0 {
            (Formula::ZeroOrder, Ok(BigUint::zero()))
        } else if tau == m - 1 {
            (Formula::CodimensionOne, Ok(BigUint::from(n) * r))
        } else if m == 2 {
            (Formula::PlanarClosedForm, Ok(planar_closed_form(r, n)))
        } else if tau >= 1 {
            (Formula::StaircaseEntry, self.b_inner(r, m, n, m - tau))
        } else {
            (Formula::StaircaseVolume, self.staircase_volume(r, m, n))
        };
        let value = match value {
            Ok(v) => BoundValue::Exact(v),
            Err(BoundError::ExceedsCap { expression }) => BoundValue::ExceedsCap {
                expression: format!(
                    "{} <- typical_dim_bound(r={r}, m={m}, n={n}, tau={tau}) = {}",
                    expression,
                    formula.symbolic()
                ),
            },
            Err(e) => return Err(e),
        };
        Ok(BoundResult {
            value,
            formula,
            params,
        })
    }

    /// `sum_{i=1}^{n} nu(m, C^{i-1}_{r,m})`.
    pub fn staircase_volume(&mut self, r: u64, m: u64, n: u64) -> Result<BigUint> {
        let mut total = BigUint::zero();
        let mut start = BigUint::from(r);
        for i in 1..=n {
            if i > 1 {
                start = self.c1(&start, m)?;
            }
            total += self
                .nu_inner(m, &start)
                .map_err(|e| e.within(format!("Vol of block {i}")))?;
        }
        Ok(total)
    }
}

/// One rewrite step on `state` (length `m >= 2`, not all of the first `m-1`
/// entries zero). A maximal run of rule (ii) is applied at once; `on_run` sees
/// the run length and the last entry before the run.
fn rewrite(state: &mut [BigUint], mut on_run: impl FnMut(&BigUint, &BigUint)) {
    let m = state.len();
    if !state[m - 2].is_zero() {
        let run = std::mem::take(&mut state[m - 2]);
        on_run(&run, &state[m - 1]);
        state[m - 1] += &run * 2u32;
        return;
    }
    let s = state[..m - 1]
        .iter()
        .rposition(|u| !u.is_zero())
        .expect("caller checks for the terminal shape");
    state[s] -= 1u32;
    state[s + 1] = std::mem::take(&mut state[m - 1]) + 2u32;
}

/// `(4^n - 1)/3 * r^2`, checking the division is exact.
pub fn planar_closed_form(r: u64, n: u64) -> BigUint {
    let num = (BigUint::one() << (2 * n)) - 1u32;
    let (q, rem) = num.div_rem(&BigUint::from(3u32));
    assert!(rem.is_zero(), "4^n - 1 is divisible by 3");
    q * r * r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn raw_ack(x: u64, y: u64) -> u64 {
        match (x, y) {
            (0, y) => y + 1,
            (x, 0) => raw_ack(x - 1, 1),
            (x, y) => raw_ack(x - 1, raw_ack(x, y - 1)),
        }
    }

    #[test]
    fn ackermann_matches_raw_recursion() {
        let mut b = Bounds::default();
        for x in 0..=3 {
            for y in 0..=8 {
                assert_eq!(b.ackermann(x, &big(y)).unwrap(), big(raw_ack(x, y)), "A({x},{y})");
            }
        }
        assert_eq!(b.ackermann(4, &big(0)).unwrap(), big(13));
        assert_eq!(b.ackermann(4, &big(1)).unwrap(), big(65533));
        assert!(matches!(b.ackermann(4, &big(2)), Err(BoundError::ExceedsCap { .. })));
        assert_eq!(b.ackermann(5, &big(0)).unwrap(), big(65533));
    }

    #[test]
    fn ackermann_closed_forms() {
        let mut b = Bounds::default();
        for y in 0..=12u64 {
            assert_eq!(b.ackermann(1, &big(y)).unwrap(), big(y + 2));
            assert_eq!(b.ackermann(2, &big(y)).unwrap(), big(2 * y + 3));
            assert_eq!(b.ackermann(3, &big(y)).unwrap(), big((1 << (y + 3)) - 3));
        }
        assert_eq!(b.ackermann(2, &big(0)).unwrap(), big(3));
    }

    #[test]
    fn ackermann_bit_cap() {
        let mut b = Bounds::new(Limits {
            max_bits: 64,
            max_steps: 10,
        });
        assert!(b.ackermann(3, &big(61)).is_ok());
        assert!(matches!(b.ackermann(3, &big(62)), Err(BoundError::ExceedsCap { .. })));
    }

    #[test]
    fn extended_ackermann() {
        let mut b = Bounds::default();
        assert_eq!(b.ackermann_ext(5, &BigInt::from(-1)).unwrap(), big(1));
        assert_eq!(b.ackermann_ext(1, &BigInt::from(3)).unwrap(), big(5));
        assert_eq!(b.ackermann_ext(0, &BigInt::from(-1)).unwrap(), big(0));
        assert_eq!(b.ackermann_ext(0, &BigInt::from(1)).unwrap(), big(2));
        let mut lit = Bounds::with_conventions(
            Limits::default(),
            Conventions {
                ackermann: AckermannExtension::PointOverride,
                ..Default::default()
            },
        );
        assert_eq!(lit.ackermann_ext(0, &BigInt::from(1)).unwrap(), big(0));
        assert_eq!(lit.ackermann_ext(1, &BigInt::from(3)).unwrap(), big(5));
    }

    #[test]
    fn c_closed_forms() {
        let mut b = Bounds::default();
        for r in 0..=30u64 {
            for n in 0..=6u64 {
                assert_eq!(b.c(&big(r), 1, n).unwrap(), big(r));
                assert_eq!(b.c(&big(r), 2, n).unwrap(), big((1 << n) * r));
            }
            if r <= 20 {
                assert_eq!(b.c(&big(r), 3, 1).unwrap(), big(3 * ((1 << r) - 1)));
            }
        }
        assert_eq!(b.c(&big(5), 3, 0).unwrap(), big(5));
        assert_eq!(b.c(&big(1), 4, 1).unwrap(), big(5));
        assert_eq!(b.c(&big(2), 4, 1).unwrap(), big(253));
    }

    #[test]
    fn c_cap_reports_chain() {
        let mut b = Bounds::default();
        let err = b.c(&big(2), 4, 2).unwrap_err();
        let BoundError::ExceedsCap { expression } = err else {
            panic!("expected cap")
        };
        assert!(expression.contains("C(2, 4, 2)"), "{expression}");
    }

    #[test]
    fn coefficient_bound_planar() {
        let mut b = Bounds::default();
        for r in 0..=20u64 {
            let cb = b.coefficient_bound(r, 2, 1).unwrap();
            assert_eq!(cb.d, big((2 * r + 1) * 2 * r));
            assert_eq!(cb.sums[2], big(4 * r * r * (2 * r + 1) * (2 * r + 1)));
        }
        let cb = b.coefficient_bound(0, 3, 4).unwrap();
        assert_eq!(cb.sums, vec![big(4), big(0), big(0), big(0)]);
        // m = 1: D = C = r, so n D^1 = n r
        let cb = b.coefficient_bound(7, 1, 3).unwrap();
        assert_eq!(cb.sums[1], big(21));
    }

    #[test]
    fn type_zero_alt_examples() {
        let mut b = Bounds::default();
        for r in 0..10u64 {
            assert_eq!(b.type_zero_alt_bound(r, 2, 1).unwrap(), big(4 * r * r));
            assert_eq!(b.type_zero_alt_bound(r, 1, 3).unwrap(), big(3 * r));
        }
        assert_eq!(b.type_zero_alt_bound(1, 3, 1).unwrap(), big(27));
    }

    #[test]
    fn b_examples() {
        let mut b = Bounds::default();
        for r in 1..=10u64 {
            assert_eq!(b.b(r, 3, 1, 2).unwrap(), big(3 * (1 << (r - 1)) - 2));
            for m in 1..=4 {
                assert_eq!(b.b(r, m, 1, 1).unwrap(), big(r));
            }
        }
        // r = 1, m = 3: staircase (1,0,0),(0,1,0),(0,0,2)
        assert_eq!(b.b(1, 3, 1, 3).unwrap(), big(2));
        let mut printed = Bounds::with_conventions(
            Limits::default(),
            Conventions {
                entry: EntryRecursion::AsPrinted,
                ..Default::default()
            },
        );
        assert_eq!(printed.b(1, 3, 1, 3).unwrap(), big(4));
    }

    #[test]
    fn omega_examples() {
        let mut b = Bounds::default();
        for r in 1..=8u64 {
            assert_eq!(b.omega_alg(r, 2, 1, 1).unwrap(), big(r));
            assert_eq!(b.omega_alg(r, 2, 1, 0).unwrap(), big(2 * r - 1));
        }
        assert_eq!(b.omega_alg(2, 3, 1, 1).unwrap(), big(4));
        assert_eq!(b.omega_alg(0, 3, 1, 0).unwrap(), big(0));
    }

    #[test]
    fn upsilon_examples() {
        let mut b = Bounds::default();
        for r in 0..=10u64 {
            assert_eq!(b.upsilon_alg(&big(r), 2).unwrap(), big(r * r));
            assert_eq!(b.upsilon_alg(&big(r), 1).unwrap(), big(r));
        }
        assert_eq!(b.upsilon_alg(&big(1), 3).unwrap(), big(2));
        assert_eq!(b.upsilon_alg(&big(2), 3).unwrap(), big(22));
        assert_eq!(b.upsilon_alg(&big(0), 4).unwrap(), big(0));
    }

    #[test]
    fn f_and_nu_base_cases() {
        let mut b = Bounds::default();
        for y in -1..10i64 {
            assert_eq!(b.f(0, &BigInt::from(y)).unwrap(), big(1));
        }
        for x in 1..4 {
            assert_eq!(b.nu(x, &big(0)).unwrap(), big(0));
        }
        // F(2, y) = (y+1)(y+2)
        for y in 0..20u64 {
            assert_eq!(b.f(2, &BigInt::from(y)).unwrap(), big((y + 1) * (y + 2)));
        }
    }

    #[test]
    fn nu_matches_planar_volume() {
        let mut b = Bounds::default();
        for r in 0..=6u64 {
            assert_eq!(b.nu(2, &big(r)).unwrap(), big(r * r));
            assert_eq!(b.nu(2, &big(2 * r)).unwrap(), big(4 * r * r));
        }
        let mut printed = Bounds::with_conventions(
            Limits::default(),
            Conventions {
                volume: VolumeArgument::AsPrinted,
                ..Default::default()
            },
        );
        assert_eq!(printed.nu(2, &big(3)).unwrap(), big(12));
    }

    #[test]
    fn dispatch_cases() {
        let mut b = Bounds::default();
        for r in 1..=6u64 {
            for n in 1..=4u64 {
                let v = b.typical_dim_bound(r, 2, n, 0).unwrap();
                assert_eq!(v.formula, Formula::PlanarClosedForm);
                assert_eq!(v.value.exact().unwrap(), &big(((1 << (2 * n)) - 1) / 3 * r * r));
                for m in 1..=4 {
                    let v = b.typical_dim_bound(r, m, n, m).unwrap();
                    assert_eq!(v.value.exact().unwrap(), &big(n));
                    let v = b.typical_dim_bound(r, m, n, m - 1).unwrap();
                    assert_eq!(v.value.exact().unwrap(), &big(n * r));
                }
            }
        }
        let v = b.typical_dim_bound(0, 3, 2, 1).unwrap();
        assert_eq!(v.formula, Formula::ZeroOrder);
        assert_eq!(v.value.exact().unwrap(), &big(0));
        let v = b.typical_dim_bound(5, 3, 1, 1).unwrap();
        assert_eq!(v.value.exact().unwrap(), &big(46));
        let v = b.typical_dim_bound(2, 4, 3, 1).unwrap();
        assert!(matches!(v.value, BoundValue::ExceedsCap { .. }));
        assert!(b.typical_dim_bound(1, 2, 1, 3).is_err());
    }

    #[test]
    fn planar_closed_form_values() {
        assert_eq!(planar_closed_form(3, 1), big(9));
        assert_eq!(planar_closed_form(1, 2), big(5));
        assert_eq!(planar_closed_form(2, 3), big(84));
    }

    #[test]
    fn rewrite_rules_are_exclusive() {
        // rule (ii) needs u_{m-1} > 0, rule (i) needs u_{m-1} = 0
        let mut s = vec![big(1), big(0), big(3)];
        rewrite(&mut s, |_, _| panic!("rule (i) expected"));
        assert_eq!(s, vec![big(0), big(5), big(0)]);
        let mut hit = false;
        rewrite(&mut s, |run, last| {
            hit = true;
            assert_eq!((run.clone(), last.clone()), (big(5), big(0)));
        });
        assert!(hit);
        assert_eq!(s, vec![big(0), big(0), big(10)]);
    }
}
