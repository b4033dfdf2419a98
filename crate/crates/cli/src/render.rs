//! Plain-text renderings. Every function returns complete lines.

use kolchin::doc::{AckermannDoc, BoundDoc, MacaulayDoc, MuDoc, PolynomialDoc, VerifyDoc};
use std::fmt::Write;

fn points(ps: &[Vec<u64>]) -> String {
    ps.iter()
        .map(|p| {
            let inner: Vec<String> = p.iter().map(u64::to_string).collect();
            format!("({})", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn polynomial(d: &PolynomialDoc) -> String {
    let head = match d.degree {
        -1 => "0".to_string(),
        0 => format!("constant {}", d.expansion),
        _ => d.expansion.clone(),
    };
    let ty = d.differential_type.map_or("undefined".to_string(), |t| t.to_string());
    let lead = d.typical_dimension.as_ref().map_or("undefined".to_string(), |a| a.to_string());
    let mut out = format!("{head}; type {ty}; typical dim {lead}\n");
    let coeffs: Vec<String> = d.coefficients.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "coefficients (a_0..a_d): [{}]", coeffs.join(", "));
    let _ = writeln!(out, "degree: {}", d.degree);
    out
}

pub fn bound(d: &BoundDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "r={} m={} n={} tau={}", d.r, d.m, d.n, d.tau);
    let _ = writeln!(out, "formula: {}", d.symbolic);
    match (&d.value, &d.exceeds_cap) {
        (Some(v), _) => {
            let _ = writeln!(out, "bound: {v}");
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "bound: exceeds cap: {e}");
        }
        (None, None) => {}
    }
    if let Some(c) = &d.comparison {
        let sums: Vec<String> = c.coefficient_sums.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "coefficient bound: C={} D={} sums=[{}]", c.c, c.d, sums.join(", "));
        let _ = writeln!(out, "type-zero alternative: {}", c.type_zero_alternative);
    }
    if let Some(e) = &d.comparison_error {
        let _ = writeln!(out, "comparison: exceeds cap: {e}");
    }
    out
}

pub fn mu(d: &MuDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "r={} m={} n={}", d.r, d.m, d.n);
    for b in &d.blocks {
        let s = &b.sequence;
        let _ = writeln!(out, "block y_{} (r0={}, L={}): {}", b.variable, s.r0, s.points.len(), points(&s.points));
        let _ = writeln!(out, "  Vol {}", b.volume);
        for (l, (closed, exact)) in b.prefix_polynomials.iter().zip(&b.prefix_exact).enumerate() {
            if closed == exact {
                let _ = writeln!(out, "  prefix {}: {closed}", l + 1);
            } else {
                let _ = writeln!(out, "  prefix {}: {closed} (exact {exact})", l + 1);
            }
        }
    }
    let _ = writeln!(out, "Vol {}", d.total_volume);
    for row in &d.m_frak {
        match (&row.value, &row.index, &row.exceeds_cap) {
            (Some(v), Some(i), _) => {
                let _ = writeln!(out, "M(tau={}) = {v} at index {i}", row.tau);
            }
            (_, _, Some(e)) => {
                let _ = writeln!(out, "M(tau={}) exceeds cap: {e}", row.tau);
            }
            _ => {}
        }
    }
    out
}

pub fn macaulay(d: &MacaulayDoc) -> String {
    let terms: Vec<String> = d.representation.iter().map(|(k, i)| format!("C({k},{i})")).collect();
    let rep = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
    format!("{} = {rep}\n{}^<{}> = {}\n", d.a, d.a, d.d, d.bracket)
}

pub fn ackermann(d: &AckermannDoc) -> String {
    match (&d.value, &d.exceeds_cap) {
        (Some(v), _) => format!("A({}, {}) = {v}\n", d.x, d.y),
        (None, Some(e)) => format!("A({}, {}) exceeds cap: {e}\n", d.x, d.y),
        (None, None) => String::new(),
    }
}

pub fn verify(d: &VerifyDoc) -> String {
    let mut out = String::new();
    for r in &d.reports {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{}: {verdict} ({} checked, {} violations)", r.suite, r.checked, r.violations);
        if let Some(c) = &r.first_counterexample {
            let _ = writeln!(out, "  first counterexample: {c}");
        }
        for n in &r.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    let _ = writeln!(out, "seed {} samples {}: {}", d.seed, d.samples, if d.passed { "pass" } else { "FAIL" });
    out
}
