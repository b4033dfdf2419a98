use super::{IndexedFamily, LatticeSet, Multidegree};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConnectivity {
    pub from: Multidegree,
    pub to: Multidegree,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub pairs: Vec<PairConnectivity>,
}

impl ConnectivityReport {
    pub fn all_connected(&self) -> bool {
        self.pairs.iter().all(|p| p.connected)
    }

    pub fn first_disconnected(&self) -> Option<&PairConnectivity> {
        self.pairs.iter().find(|p| !p.connected)
    }
}

/// Whether `from` reaches `to` through elements of `set` of order at most
/// `max_order`, each strictly below `LUB(from, to)` (the endpoints are always
/// admitted), where consecutive elements have `ord LUB <= max_lub`.
fn reachable(set: &[Multidegree], from: usize, to: usize, max_order: u64, max_lub: u64) -> bool {
    let bound = set[from].lub(&set[to]);
    let admissible: Vec<bool> = set
        .iter()
        .enumerate()
        .map(|(i, p)| {
            i == from || i == to || (p.ord() <= max_order && p.le_product(&bound) && *p != bound)
        })
        .collect();
    let mut seen = vec![false; set.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(i) = queue.pop_front() {
        if i == to {
            return true;
        }
        for j in 0..set.len() {
            if !seen[j] && admissible[j] && set[i].lub(&set[j]).ord() <= max_lub {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    false
}

fn pairs_with(set: &LatticeSet, max_order: u64, max_lub: u64) -> ConnectivityReport {
    let pts = set.minimals();
    let mut pairs = Vec::new();
    for i in 0..pts.len() {
        if pts[i].ord() > max_order {
            continue;
        }
        for j in i + 1..pts.len() {
            if pts[j].ord() > max_order {
                continue;
            }
            pairs.push(PairConnectivity {
                from: pts[i].clone(),
                to: pts[j].clone(),
                connected: reachable(pts, i, j, max_order, max_lub),
            });
        }
    }
    ConnectivityReport { pairs }
}

/// For every pair of distinct minimal elements of order at most `d - 1`,
/// decides whether the connecting sequence required for maximal
/// Hilbert–Samuel growth from `d - 1` to `d` exists.
pub fn connectivity_check(set: &LatticeSet, d: u64) -> ConnectivityReport {
    assert!(d > 1, "connectivity is defined for d > 1");
    pairs_with(set, d - 1, d)
}

/// A variable index `j` (1-based) and a pair of minimal elements of `E_j` of
/// order at most `h` that no admissible sequence connects with consecutive
/// LUB orders at most `h` (or `h + 1` when `primed`).
pub fn dagger_witness(
    family: &IndexedFamily,
    h: u64,
    primed: bool,
) -> Option<(usize, Multidegree, Multidegree)> {
    let max_lub = if primed { h + 1 } else { h };
    family.sets().iter().enumerate().find_map(|(j, e)| {
        pairs_with(e, h, max_lub)
            .first_disconnected()
            .map(|p| (j + 1, p.from.clone(), p.to.clone()))
    })
}
