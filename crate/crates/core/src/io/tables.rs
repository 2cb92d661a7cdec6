//! CSV tables for curves, item summaries, diagnostics and recovery.

use std::fmt::Write as _;

use super::num;
use crate::csn::Skewness;
use crate::error::{Error, Result};
use crate::model::{icc, predictor};
use crate::summary::{ChainDiagnostics, ItemSummary, RecoveryReport};

/// `(θ, P(y = 1 | θ))` at `points` evenly spaced abilities in `[from, to]`.
pub fn icc_curve(
    a: f64,
    b: f64,
    c: f64,
    gamma: f64,
    from: f64,
    to: f64,
    points: usize,
) -> Result<Vec<(f64, f64)>> {
    if !(a > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("need a > 0 and finite b".into()));
    }
    if !(from.is_finite() && to.is_finite() && from < to) || points < 2 {
        return Err(Error::Domain("need from < to and at least 2 points".into()));
    }
    let g = Skewness::new(gamma)?;
    let step = (to - from) / (points - 1) as f64;
    (0..points)
        .map(|k| {
            let theta = if k == points - 1 {
                to
            } else {
                from + k as f64 * step
            };
            Ok((theta, icc(predictor(a, b, theta), g, c)?))
        })
        .collect()
}

pub fn format_curve(curve: &[(f64, f64)]) -> String {
    let mut out = String::from("theta,p\n");
    for (t, p) in curve {
        let _ = writeln!(out, "{},{}", num(*t), num(*p));
    }
    out
}

/// One row per item with posterior means, component probabilities and the
/// skewness of the modal component, then intervals and flags.
pub fn format_item_summaries(items: &[ItemSummary]) -> String {
    let mut out = String::from(
        "item,a,b,c,Z0,Z1,Z2,gamma,class,strength,a_lo,a_hi,b_lo,b_hi,c_lo,c_hi,gamma_lo,gamma_hi,weak_discrimination\n",
    );
    for s in items {
        let (glo, ghi) = match s.ci_gamma {
            Some(ci) => (num(ci.lo), num(ci.hi)),
            None => (String::new(), String::new()),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            s.item_id,
            num(s.post_mean_a),
            num(s.post_mean_b),
            num(s.post_mean_c),
            num(s.z_probs[0]),
            num(s.z_probs[1]),
            num(s.z_probs[2]),
            num(s.gamma_est),
            s.classification.label(),
            s.strength.label(),
            num(s.ci_a.lo),
            num(s.ci_a.hi),
            num(s.ci_b.lo),
            num(s.ci_b.hi),
            num(s.ci_c.lo),
            num(s.ci_c.hi),
            glo,
            ghi,
            s.weak_discrimination
        );
    }
    out
}

pub fn format_diagnostics(d: &ChainDiagnostics) -> String {
    let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
    let mut out = String::from("param,ess,rhat,constant\n");
    for p in &d.params {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            p.name,
            opt(p.ess),
            opt(p.rhat),
            p.constant
        );
    }
    out
}

/// Acceptance rates per chain and block.
pub fn format_acceptance(d: &ChainDiagnostics) -> String {
    let mut out = String::from("chain,block,accepted,proposed,rate\n");
    for (chain, acc) in &d.acceptance {
        for (name, t) in acc.blocks() {
            let rate = t.rate().map(num).unwrap_or_default();
            let _ = writeln!(out, "{chain},{name},{},{},{rate}", t.accepted, t.proposed);
        }
    }
    out
}

pub fn format_recovery(r: &RecoveryReport) -> String {
    let mut out = String::from("param,rmse,pearson\n");
    for (name, p) in [("a", &r.a), ("b", &r.b), ("theta", &r.theta)] {
        let _ = writeln!(out, "{name},{},{}", num(p.rmse), num(p.pearson));
    }
    out.push_str("\ntrue\\estimated,symmetric,negative,positive\n");
    for (label, row) in ["symmetric", "negative", "positive"]
        .iter()
        .zip(&r.confusion)
    {
        let _ = writeln!(out, "{label},{},{},{}", row[0], row[1], row[2]);
    }
    out
}
