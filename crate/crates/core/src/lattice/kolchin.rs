use super::{IndexedFamily, LatticeSet, Multidegree, NumericalPolynomial};
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::HashMap;

/// Computes `omega_E` by splitting off the slice `u_k = 0` and translating the
/// rest down by one in coordinate `k`:
///
/// `omega_E(t) = omega_{E1}(t) + omega_{E2}(t-1)`
///
/// The pivot is the largest minimal element in the orderly ranking and `k` its
/// last nonzero coordinate. The translation chain is unrolled into a loop so
/// that the call depth only grows with the dimension; slices are memoized for
/// the lifetime of the solver.
#[derive(Debug, Default)]
pub struct KolchinSolver {
    memo: HashMap<LatticeSet, NumericalPolynomial>,
}

impl KolchinSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solve(&mut self, set: &LatticeSet) -> NumericalPolynomial {
        if let Some(p) = self.memo.get(set) {
            return p.clone();
        }
        let m = set.m();
        let mut slices = Vec::new();
        let mut cur = set.clone();
        let terminal = loop {
            if cur.is_empty() {
                break NumericalPolynomial::basis(m);
            }
            if cur.contains_zero() {
                break NumericalPolynomial::zero();
            }
            let pivot = cur.minimals().last().expect("nonempty");
            let k = pivot
                .entries()
                .iter()
                .rposition(|&u| u != 0)
                .expect("pivot is nonzero");
            let e1 = slice_at_zero(&cur, k);
            slices.push(self.solve(&e1));
            cur = translate_down(&cur, k);
        };
        let mut acc = terminal;
        for s in slices.iter().rev() {
            acc = s + &acc.shift_back();
        }
        self.memo.insert(set.clone(), acc.clone());
        acc
    }
}

/// `{u in N^{m-1} : (u with 0 inserted at k) in E}`.
fn slice_at_zero(set: &LatticeSet, k: usize) -> LatticeSet {
    // Projections of antichain members with u_k = 0 stay an antichain.
    let mut pts: Vec<Multidegree> = set
        .minimals()
        .iter()
        .filter(|p| p.entries()[k] == 0)
        .map(|p| {
            let mut e = p.entries().to_vec();
            e.remove(k);
            Multidegree::new(e)
        })
        .collect();
    pts.sort();
    LatticeSet::from_sorted_antichain(set.m() - 1, pts)
}

/// `{u : u + e_k in E}`.
fn translate_down(set: &LatticeSet, k: usize) -> LatticeSet {
    let mut shifted = Vec::new();
    let mut fixed = Vec::new();
    for p in set.minimals() {
        let mut e = p.entries().to_vec();
        if e[k] > 0 {
            e[k] -= 1;
            shifted.push(Multidegree::new(e));
        } else {
            fixed.push(Multidegree::new(e));
        }
    }
    // The only new dominations: a point with u_k = 0 above a translated point
    // that now has u_k = 0.
    let landed: Vec<&Multidegree> = shifted.iter().filter(|p| p.entries()[k] == 0).collect();
    fixed.retain(|q| !landed.iter().any(|p| p.le_product(q)));
    let mut pts = shifted;
    pts.extend(fixed);
    pts.sort();
    LatticeSet::from_sorted_antichain(set.m(), pts)
}

pub fn kolchin_polynomial(set: &LatticeSet) -> NumericalPolynomial {
    KolchinSolver::new().solve(set)
}

/// `omega_P = sum_j omega_{E_j}`.
pub fn family_polynomial(family: &IndexedFamily) -> NumericalPolynomial {
    let mut solver = KolchinSolver::new();
    family.sets().iter().map(|s| solver.solve(s)).sum()
}

/// `(S_0, ..., S_m)` with `S_j = |a_m| + ... + |a_{m-j}|`.
///
/// # Panics
/// If `p` has degree above `m`.
pub fn coefficient_sums(p: &NumericalPolynomial, m: usize) -> Vec<BigUint> {
    assert!(
        p.degree().is_none_or(|d| d <= m),
        "polynomial degree exceeds m = {m}"
    );
    let mut acc = BigUint::zero();
    (0..=m)
        .map(|j| {
            acc += p.coeff(m - j).magnitude();
            acc.clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::volume;
    use num_bigint::BigInt;

    fn set(m: usize, pts: &[&[u64]]) -> LatticeSet {
        LatticeSet::new(m, pts.iter().map(|p| p.to_vec())).unwrap()
    }

    fn consts(c: &[i64]) -> NumericalPolynomial {
        NumericalPolynomial::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn empty_set_gives_top_binomial() {
        for m in 0..5 {
            assert_eq!(kolchin_polynomial(&LatticeSet::empty(m)), NumericalPolynomial::basis(m));
        }
    }

    #[test]
    fn zero_element_gives_zero() {
        assert!(kolchin_polynomial(&set(3, &[&[0, 0, 0]])).is_zero());
    }

    #[test]
    fn square_staircase_is_constant_r_squared() {
        assert_eq!(kolchin_polynomial(&set(2, &[&[4, 0], &[0, 4]])), consts(&[16]));
        assert_eq!(kolchin_polynomial(&set(2, &[&[2, 0], &[1, 1], &[0, 3]])), consts(&[4]));
    }

    #[test]
    fn single_generator() {
        // E = {(1,0)}: column u_1 = 0, omega = t + 1
        assert_eq!(kolchin_polynomial(&set(2, &[&[1, 0]])), consts(&[0, 1]));
        // E = {(a)} in N^1: omega = a
        assert_eq!(kolchin_polynomial(&set(1, &[&[7]])), consts(&[7]));
    }

    #[test]
    fn matches_volume_on_hand_examples() {
        let cases = [
            set(3, &[&[2, 0, 1], &[0, 3, 0], &[1, 1, 1]]),
            set(3, &[&[0, 0, 2]]),
            set(2, &[&[3, 1], &[1, 4]]),
            set(4, &[&[1, 1, 0, 0], &[0, 0, 1, 2]]),
        ];
        for e in &cases {
            let p = kolchin_polynomial(e);
            let start = e.corner().ord();
            for s in start..start + e.m() as u64 + 4 {
                assert_eq!(p.eval_i64(s as i64), BigInt::from(volume(e, s)), "{e} s={s}");
            }
        }
    }

    #[test]
    fn family_examples() {
        let e1 = set(2, &[&[1, 0], &[0, 1]]);
        let fam = IndexedFamily::new(2, vec![e1.clone()]).unwrap();
        assert_eq!(family_polynomial(&fam), kolchin_polynomial(&e1));
        let fam = IndexedFamily::new(2, vec![LatticeSet::empty(2), LatticeSet::empty(2)]).unwrap();
        assert_eq!(family_polynomial(&fam), consts(&[0, 0, 2]));
        let fam = IndexedFamily::new(2, vec![e1, LatticeSet::empty(2)]).unwrap();
        assert_eq!(family_polynomial(&fam), consts(&[1, 0, 1]));
    }

    #[test]
    fn coefficient_sum_examples() {
        let s = coefficient_sums(&NumericalPolynomial::basis(3), 3);
        assert!(s.iter().all(|v| *v == BigUint::from(1u32)));
        assert!(coefficient_sums(&NumericalPolynomial::zero(), 2)
            .iter()
            .all(Zero::is_zero));
        let s = coefficient_sums(&consts(&[16]), 2);
        assert_eq!(s, vec![0u32.into(), 0u32.into(), 16u32.into()]);
    }
}
