//! Randomized verification of catalog cases.

use std::time::Instant;

use hypmetrics_core::{Domain, ExtendedPoint, MetricId, SupConfig};
use rand::Rng;
use rayon::prelude::*;

use super::catalog::{Check, Condition, Guard, InequalityCase, Relation};
use super::expr::{Evaluator, Expr};
use super::sample::{
    domain_of, family_supports, point_in, sample_image, sample_pair, stream, Sample, DIMENSIONS,
};
use crate::error::{Error, Result};
use crate::format::round_sig;
use crate::report::{CaseKind, CaseReport, Offending};

/// Offending inputs kept per report.
pub const MAX_OFFENDING: usize = 10;

/// Redraws allowed when a Möbius image is not representable.
const MAX_REDRAWS: usize = 64;

fn validate(case: &InequalityCase, n_samples: u64, slack: f64) -> Result<()> {
    if n_samples < 1 {
        return Err(Error::Config("n_samples must be at least 1".into()));
    }
    if !(slack >= 0.0 && slack.is_finite()) {
        return Err(Error::Config(format!("slack must be finite and >= 0, got {slack}")));
    }
    if case.domains.is_empty() {
        return Err(Error::Config(format!("{} has no domains to sample", case.id)));
    }
    if case.condition == Some(Condition::ConvexOnly) {
        if let Some(k) = case.domains.iter().find(|k| !k.is_convex()) {
            return Err(Error::Config(format!(
                "{} holds on convex domains only; `{}` is not convex",
                case.id,
                k.name()
            )));
        }
    }
    if let Some(family) = case.mobius {
        if let Some(k) = case.domains.iter().find(|k| !family_supports(family, **k)) {
            return Err(Error::Config(format!(
                "{} has no map family for `{}` domains",
                case.id,
                k.name()
            )));
        }
    }
    Ok(())
}

/// Draws sample `k` of `case`.
pub fn draw(case: &InequalityCase, seed: u64, k: u64) -> Sample {
    let mut rng = stream(seed, case.id, k);
    for _ in 0..MAX_REDRAWS {
        let kind = case.domains[rng.random_range(0..case.domains.len())];
        let dim = DIMENSIONS[rng.random_range(0..DIMENSIONS.len())];
        let domain = domain_of(&mut rng, kind, dim);
        let (x, y) = sample_pair(&mut rng, &domain);
        let z = case
            .triple
            .then(|| ExtendedPoint::Finite(point_in(&mut rng, &domain)));
        let image = match case.mobius {
            Some(family) => match sample_image(&mut rng, family, &domain, &x, &y) {
                Some(img) => Some(img),
                None => continue,
            },
            None => None,
        };
        return Sample {
            domain,
            x,
            y,
            z,
            image,
        };
    }
    panic!("{}: no admissible sample after {MAX_REDRAWS} draws", case.id);
}

fn guard_holds(guard: Guard, ev: &mut Evaluator<'_>) -> hypmetrics_core::Result<bool> {
    Ok(match guard {
        Guard::TriangularBelowOne => ev.metric(MetricId::Triangular, super::expr::Pair::XY)? < 1.0,
        Guard::MinAtLeastQuarterMax => {
            let r = ev.eval(&Expr::MinDist)?;
            let big = ev.eval(&Expr::MaxDist)?;
            r >= big / 4.0
        }
    })
}

/// Outcome of one relation on one sample.
struct Verdict {
    lhs: f64,
    rhs: f64,
    ok: bool,
    /// `lhs - rhs`, or `|lhs - rhs|` for equalities.
    margin: f64,
}

fn judge(rel: &Relation, lhs: f64, rhs: f64, slack: f64) -> Verdict {
    match rel {
        Relation::Le(..) => Verdict {
            lhs,
            rhs,
            ok: lhs <= rhs * (1.0 + slack) + slack,
            margin: lhs - rhs,
        },
        Relation::Near(_, _, tol) => {
            let diff = (lhs - rhs).abs();
            Verdict {
                lhs,
                rhs,
                ok: diff <= tol * rhs.abs().max(1.0),
                margin: diff,
            }
        }
    }
}

fn evaluate(
    check: &Check,
    ev: &mut Evaluator<'_>,
    slack: f64,
) -> hypmetrics_core::Result<Option<Verdict>> {
    if let Some(g) = check.guard {
        if !guard_holds(g, ev)? {
            return Ok(None);
        }
    }
    let lhs = ev.eval(check.relation.lhs())?;
    let rhs = ev.eval(check.relation.rhs())?;
    Ok(Some(judge(&check.relation, lhs, rhs, slack)))
}

#[derive(Default)]
struct SampleOutcome {
    offending: Option<Offending>,
    margin: Option<f64>,
    skips: u64,
    pseudo: bool,
}

fn coords(p: &ExtendedPoint) -> Vec<f64> {
    p.coords().map(<[f64]>::to_vec).unwrap_or_default()
}

fn offending(k: u64, s: &Sample, rel: &Relation, v: Option<&Verdict>, err: Option<String>) -> Offending {
    let finite = |x: f64| x.is_finite().then_some(x);
    Offending {
        sample: k,
        domain: s.domain.to_string(),
        x: coords(&s.x),
        y: coords(&s.y),
        z: s.z.as_ref().map(coords),
        image_domain: s.image.as_ref().map(|i| i.domain.to_string()),
        relation: rel.to_string(),
        lhs: v.and_then(|v| finite(v.lhs)),
        rhs: v.and_then(|v| finite(v.rhs)),
        error: err,
    }
}

fn run_sample(case: &InequalityCase, seed: u64, slack: f64, k: u64) -> SampleOutcome {
    let s = draw(case, seed, k);
    let mut out = SampleOutcome {
        pseudo: case.uses(MetricId::Alpha) && !alpha_is_metric(&s.domain),
        ..Default::default()
    };
    let mut ev = Evaluator::new(&s, SupConfig::default());
    for check in &case.checks {
        let verdict = match evaluate(check, &mut ev, slack) {
            Ok(Some(v)) => v,
            Ok(None) => {
                out.skips += 1;
                continue;
            }
            Err(e) => {
                out.offending = Some(offending(k, &s, &check.relation, None, Some(e.to_string())));
                return out;
            }
        };
        if verdict.margin.is_finite() {
            out.margin = Some(out.margin.map_or(verdict.margin, |m: f64| m.max(verdict.margin)));
        }
        if verdict.ok {
            continue;
        }
        // confirm with a finer boundary search before reporting
        let mut fine = Evaluator::new(&s, SupConfig::refined());
        match evaluate(check, &mut fine, slack) {
            Ok(Some(v)) if v.ok => continue,
            Ok(None) => continue,
            Ok(Some(v)) => {
                out.offending = Some(offending(k, &s, &check.relation, Some(&v), None));
                return out;
            }
            Err(e) => {
                out.offending = Some(offending(k, &s, &check.relation, None, Some(e.to_string())));
                return out;
            }
        }
    }
    out
}

/// Whether the Apollonian metric is a genuine metric on `domain`: its
/// complement must not lie on a sphere (or hyperplane).
pub fn alpha_is_metric(domain: &Domain) -> bool {
    !domain.complement_on_sphere()
}

/// Checks `case` on `n_samples` random inputs. Sample `k` depends only on
/// `(seed, case.id, k)`, so the report is independent of thread count.
pub fn check_case(case: &InequalityCase, n_samples: u64, seed: u64, slack: f64) -> Result<CaseReport> {
    validate(case, n_samples, slack)?;
    let start = Instant::now();
    let outcomes: Vec<SampleOutcome> = (0..n_samples)
        .into_par_iter()
        .map(|k| run_sample(case, seed, slack, k))
        .collect();

    let mut violations = 0;
    let mut kept = Vec::new();
    let mut max_slack: Option<f64> = None;
    let mut skips = 0;
    let mut pseudo = 0;
    for o in outcomes {
        if let Some(off) = o.offending {
            violations += 1;
            if kept.len() < MAX_OFFENDING {
                kept.push(off);
            }
        }
        if let Some(m) = o.margin {
            max_slack = Some(max_slack.map_or(m, |a| a.max(m)));
        }
        skips += o.skips;
        pseudo += o.pseudo as u64;
    }
    for off in &mut kept {
        off.x.iter_mut().for_each(|v| *v = round_sig(*v));
        off.y.iter_mut().for_each(|v| *v = round_sig(*v));
        if let Some(z) = &mut off.z {
            z.iter_mut().for_each(|v| *v = round_sig(*v));
        }
        off.lhs = off.lhs.map(round_sig);
        off.rhs = off.rhs.map(round_sig);
    }
    let config = SupConfig::default();
    Ok(CaseReport {
        kind: CaseKind::Case,
        case_id: case.id.to_string(),
        paper_ref: case.paper_ref.to_string(),
        samples: n_samples,
        violations,
        offending: kept,
        max_slack: max_slack.map(round_sig),
        seed,
        slack,
        pass: violations == 0,
        guarded_skips: skips,
        pseudo_metric_samples: case.uses(MetricId::Alpha).then_some(pseudo),
        sup_scan_samples: config.scan_samples,
        sup_tolerance: config.tolerance,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}
