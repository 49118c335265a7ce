//! Sharpness probes: one-parameter families along which a ratio or
//! difference of metrics tends to a sharp constant.

use std::f64::consts::LN_2;
use std::time::Instant;

use hypmetrics_core::{
    ball_automorphism, cayley_map, delta_metric, eta_metric, inversion_unit, j_metric, j_tilde,
    rho, triangular_ratio, u_metric, Domain, ExtendedPoint,
};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::round_sig;
use crate::report::ProbeReport;

use super::catalog::LN_3;

type CoreResult<T> = hypmetrics_core::Result<T>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `t → 0⁺`
    ToZero,
    /// `t → 1⁻`
    ToOneBelow,
    /// `t → 1⁺`
    ToOneAbove,
    /// `t → ∞`
    ToInfinity,
}

impl Direction {
    /// Distance of `t` from the limit point, `None` on the wrong side.
    fn gap(self, t: f64) -> Option<f64> {
        let g = match self {
            Direction::ToZero => t,
            Direction::ToOneBelow => 1.0 - t,
            Direction::ToOneAbove => t - 1.0,
            Direction::ToInfinity => 1.0 / t,
        };
        (g > 0.0 && g.is_finite()).then_some(g)
    }

    /// `t_k` for `k = 1..=6`, geometric toward the limit.
    pub fn default_schedule(self) -> Vec<f64> {
        (1..=6)
            .map(|k| {
                let e = 10f64.powi(-k);
                match self {
                    Direction::ToZero => e,
                    Direction::ToOneBelow => 1.0 - e,
                    Direction::ToOneAbove => 1.0 + e,
                    Direction::ToInfinity => 10f64.powi(k),
                }
            })
            .collect()
    }
}

/// One functional of a probe with its limit.
#[derive(Debug, Clone)]
pub struct ProbeSeries {
    pub name: &'static str,
    pub direction: Direction,
    pub expected_limit: f64,
    pub tolerance: f64,
    /// Overrides [`Direction::default_schedule`].
    pub schedule: Option<Vec<f64>>,
    pub min_points: usize,
    pub functional: fn(f64) -> CoreResult<f64>,
}

impl ProbeSeries {
    fn new(
        name: &'static str,
        direction: Direction,
        expected_limit: f64,
        tolerance: f64,
        functional: fn(f64) -> CoreResult<f64>,
    ) -> Self {
        ProbeSeries {
            name,
            direction,
            expected_limit,
            tolerance,
            schedule: None,
            min_points: 4,
            functional,
        }
    }

    pub fn schedule(&self) -> Vec<f64> {
        self.schedule
            .clone()
            .unwrap_or_else(|| self.direction.default_schedule())
    }
}

#[derive(Debug, Clone)]
pub struct SharpnessProbe {
    pub id: &'static str,
    pub paper_ref: &'static str,
    pub series: Vec<ProbeSeries>,
}

const DIM: usize = 2;

fn e(axis: usize, t: f64) -> ExtendedPoint {
    ExtendedPoint::on_axis(DIM, axis, t).expect("finite coordinate")
}

fn pt(c: [f64; DIM]) -> ExtendedPoint {
    ExtendedPoint::new(c.to_vec()).expect("finite coordinates")
}

fn ball() -> Domain {
    Domain::unit_ball(DIM).expect("dim 2")
}

fn half_space() -> Domain {
    Domain::upper_half_space(DIM).expect("dim 2")
}

/// `R^n \ {p}` as a subdomain of `R^n`.
fn punctured_at(p: [f64; DIM]) -> Domain {
    Domain::punctured(vec![p.to_vec()], true).expect("one removed point")
}

const TOP: usize = DIM - 1;

/// Inner parameter of the nested probe: `t → 1⁻` evaluated at this point.
pub const P1_INNER_T: f64 = 1.0 - 1e-8;

fn p1(s: f64) -> CoreResult<f64> {
    let (x, y) = (e(0, s), e(0, P1_INNER_T));
    Ok(u_metric(&ball(), &x, &y)? - rho(&ball(), &x, &y)?)
}

fn p2(t: f64) -> CoreResult<f64> {
    let h = half_space();
    let (x, y) = (e(TOP, 1.0), e(TOP, t));
    Ok(u_metric(&h, &x, &y)? - rho(&h, &x, &y)?)
}

fn p3_pair(t: f64) -> (Domain, ExtendedPoint, ExtendedPoint) {
    (punctured_at([1.0, 0.0]), e(0, t), e(0, -t))
}

fn p3_jt(t: f64) -> CoreResult<f64> {
    let (d, x, y) = p3_pair(t);
    Ok(u_metric(&d, &x, &y)? / j_tilde(&d, &x, &y)?)
}

fn p3_j(t: f64) -> CoreResult<f64> {
    let (d, x, y) = p3_pair(t);
    Ok(u_metric(&d, &x, &y)? / j_metric(&d, &x, &y)?)
}

fn p4(t: f64) -> CoreResult<f64> {
    let (d, x, y) = p3_pair(t);
    Ok(u_metric(&d, &x, &y)? - 2.0 * j_tilde(&d, &x, &y)?)
}

fn p5(t: f64) -> CoreResult<f64> {
    let d = punctured_at([1.0, 0.0]);
    let (x, y) = (e(0, 0.0), e(0, t));
    Ok(u_metric(&d, &x, &y)? / eta_metric(&d, &x, &y)?)
}

fn p6_pair(t: f64) -> (Domain, ExtendedPoint, ExtendedPoint) {
    (punctured_at([0.0, 0.0]), e(0, t), e(0, -t))
}

fn p6_u(t: f64) -> CoreResult<f64> {
    let (d, x, y) = p6_pair(t);
    u_metric(&d, &x, &y)
}

fn p6_eta(t: f64) -> CoreResult<f64> {
    let (d, x, y) = p6_pair(t);
    eta_metric(&d, &x, &y)
}

fn p6_s(t: f64) -> CoreResult<f64> {
    let (d, x, y) = p6_pair(t);
    triangular_ratio(&d, &x, &y)
}

fn p7(t: f64) -> CoreResult<f64> {
    let (d, x, y) = p3_pair(t);
    let s = triangular_ratio(&d, &x, &y)?;
    Ok(u_metric(&d, &x, &y)? / ((1.0 + s) / (1.0 - s)).ln())
}

fn p8(t: f64) -> CoreResult<f64> {
    let b = ball();
    let f = ball_automorphism(&[t, 0.0])?;
    let (x, y) = (e(0, 1.0 - t), e(0, t - 1.0));
    Ok(u_metric(&b, &f.apply(&x), &f.apply(&y))? / u_metric(&b, &x, &y)?)
}

fn p9_values(t: f64) -> CoreResult<(f64, f64)> {
    let f = cayley_map(DIM)?;
    let (x, y) = (e(TOP, t), e(TOP, 1.0 / t));
    let uh = u_metric(&half_space(), &x, &y)?;
    let ub = u_metric(&ball(), &f.apply(&x), &f.apply(&y))?;
    Ok((ub, uh))
}

fn p9_ratio(t: f64) -> CoreResult<f64> {
    let (ub, uh) = p9_values(t)?;
    Ok(ub / uh)
}

fn p9_additive(t: f64) -> CoreResult<f64> {
    let (ub, uh) = p9_values(t)?;
    Ok(uh - ub)
}

fn p10(t: f64) -> CoreResult<f64> {
    let h = half_space();
    let f = inversion_unit(DIM)?;
    let (x, y) = (pt([1.0, t]), pt([1.0, 1.0 / t]));
    Ok(u_metric(&h, &x, &y)? - u_metric(&h, &f.apply(&x), &f.apply(&y))?)
}

fn p11_delta(t: f64) -> CoreResult<f64> {
    let b = ball();
    let (x, y) = (e(0, t), e(0, -t));
    Ok(u_metric(&b, &x, &y)? - delta_metric(&b, &x, &y)?)
}

fn p11_closed(t: f64) -> CoreResult<f64> {
    let b = ball();
    let (x, y) = (e(0, t), e(0, -t));
    Ok(u_metric(&b, &x, &y)? - 2.0 * ((1.0 + t) / (1.0 - t)).ln())
}

fn p12(t: f64) -> CoreResult<f64> {
    let p = [0.0, 0.0];
    let d = punctured_at(p);
    let r = 2.0;
    let (x, y) = (pt([r, 0.0]), pt([r * t.cos(), r * t.sin()]));
    let c = hypmetrics_core::cassinian(&d, &x, &y)?;
    Ok(u_metric(&d, &x, &y)? - 2.0 * (r * c).ln_1p())
}

/// Exact identities are held to this absolute tolerance.
pub const IDENTITY_TOL: f64 = 1e-12;

pub fn probes() -> Vec<SharpnessProbe> {
    use Direction::*;
    let mut p1_series = ProbeSeries::new("u - rho", ToOneBelow, 2.0 * LN_2, 2e-3, p1);
    p1_series.schedule = Some(vec![1.0 - 1e-1, 1.0 - 1e-2, 1.0 - 1e-3]);
    p1_series.min_points = 3;
    vec![
        SharpnessProbe {
            id: "P1",
            paper_ref: "ball, x = s e1, y = t e1, t -> 1 then s -> 1: u - rho -> 2 log 2",
            series: vec![p1_series],
        },
        SharpnessProbe {
            id: "P2",
            paper_ref: "half-space, x = e_n, y = t e_n, t -> 0: u - rho -> 2 log 2",
            series: vec![ProbeSeries::new("u - rho", ToZero, 2.0 * LN_2, 2e-3, p2)],
        },
        SharpnessProbe {
            id: "P3",
            paper_ref: "R^n minus e1, x = -y = t e1, t -> 0: u/j_tilde -> 3, u/j -> 3",
            series: vec![
                ProbeSeries::new("u / j_tilde", ToZero, 3.0, 1e-3, p3_jt),
                ProbeSeries::new("u / j", ToZero, 3.0, 1e-3, p3_j),
            ],
        },
        SharpnessProbe {
            id: "P4",
            paper_ref: "R^n minus e1, x = -y = t e1, t -> 1: u - 2 j_tilde -> log 2",
            series: vec![ProbeSeries::new("u - 2 j_tilde", ToOneBelow, LN_2, 1e-2, p4)],
        },
        SharpnessProbe {
            id: "P5",
            paper_ref: "R^n minus e1, x = 0, y = t e1, t -> 1: u/eta -> 1",
            series: vec![ProbeSeries::new("u / eta", ToOneBelow, 1.0, 5e-2, p5)],
        },
        SharpnessProbe {
            id: "P6",
            paper_ref: "R^n minus 0, y = -x: u = 2 log 3, eta = 0, s = 1",
            series: vec![
                ProbeSeries::new("u", ToZero, 2.0 * LN_3, IDENTITY_TOL, p6_u),
                ProbeSeries::new("eta", ToZero, 0.0, IDENTITY_TOL, p6_eta),
                ProbeSeries::new("s", ToZero, 1.0, IDENTITY_TOL, p6_s),
            ],
        },
        SharpnessProbe {
            id: "P7",
            paper_ref: "R^n minus e1, y = -x = -t e1, t -> 0: u / log((1+s)/(1-s)) -> 3",
            series: vec![ProbeSeries::new("u / log((1+s)/(1-s))", ToZero, 3.0, 1e-3, p7)],
        },
        SharpnessProbe {
            id: "P8",
            paper_ref: "ball automorphism a = t e1, x = -y = (1-t) e1, t -> 1: u(fx,fy)/u(x,y) -> 3",
            series: vec![ProbeSeries::new("u(fx,fy) / u(x,y)", ToOneBelow, 3.0, 5e-2, p8)],
        },
        SharpnessProbe {
            id: "P9",
            paper_ref: "Cayley map, x = t e_n, y = e_n/t: u_B/u_H -> 1/3 (t -> 1), u_H - u_B -> 2 log 2 (t -> inf)",
            series: vec![
                ProbeSeries::new("u_B(fx,fy) / u_H(x,y)", ToOneAbove, 1.0 / 3.0, 5e-2, p9_ratio),
                ProbeSeries::new("u_H(x,y) - u_B(fx,fy)", ToInfinity, 2.0 * LN_2, 1e-3, p9_additive),
            ],
        },
        SharpnessProbe {
            id: "P10",
            paper_ref: "inversion in the unit sphere, x = e1 + t e_n, y = e1 + e_n/t, t -> 0: u_H - u_H(f) -> 2 log 2",
            series: vec![ProbeSeries::new("u_H(x,y) - u_H(fx,fy)", ToZero, 2.0 * LN_2, 1e-3, p10)],
        },
        SharpnessProbe {
            id: "P11",
            paper_ref: "ball diameter x = -y = t e1: u = delta = 2 log((1+t)/(1-t))",
            series: vec![
                ProbeSeries::new("u - delta", ToOneBelow, 0.0, IDENTITY_TOL, p11_delta),
                ProbeSeries::new("u - 2 log((1+t)/(1-t))", ToOneBelow, 0.0, IDENTITY_TOL, p11_closed),
            ],
        },
        SharpnessProbe {
            id: "P12",
            paper_ref: "R^n minus p, |x-p| = |y-p| = r: u = 2 log(1 + r c)",
            series: vec![ProbeSeries::new("u - 2 log(1 + r c)", ToZero, 0.0, IDENTITY_TOL, p12)],
        },
    ]
}

/// Deviations within this of each other count as non-increasing; below it
/// the sequence is at the binary64 floor of the families near the boundary.
const MONOTONE_EPS: f64 = 1e-9;

fn validate_schedule(series: &ProbeSeries, schedule: &[f64]) -> Result<()> {
    if schedule.len() < series.min_points {
        return Err(Error::Schedule(format!(
            "series `{}` needs at least {} schedule points, got {}",
            series.name,
            series.min_points,
            schedule.len()
        )));
    }
    let mut prev = f64::INFINITY;
    for &t in schedule {
        let gap = series.direction.gap(t).ok_or_else(|| {
            Error::Schedule(format!("t = {t} is not on the approach side of the limit"))
        })?;
        if gap >= prev {
            return Err(Error::Schedule(format!(
                "schedule must approach the limit strictly; t = {t} does not"
            )));
        }
        prev = gap;
    }
    Ok(())
}

/// Whether the last three deviations are non-increasing.
pub fn monotone_tail(deviations: &[f64]) -> bool {
    let n = deviations.len();
    let tail = &deviations[n.saturating_sub(3)..];
    tail.windows(2).all(|w| w[1] <= w[0] + MONOTONE_EPS)
}

/// Evaluates one series along `schedule` (or its default schedule).
pub fn run_series(
    probe: &SharpnessProbe,
    series: &ProbeSeries,
    schedule: Option<&[f64]>,
) -> Result<ProbeReport> {
    let start = Instant::now();
    let schedule = schedule.map(<[f64]>::to_vec).unwrap_or_else(|| series.schedule());
    validate_schedule(series, &schedule)?;
    let mut estimates = Vec::with_capacity(schedule.len());
    for &t in &schedule {
        let v = (series.functional)(t).map_err(|e| {
            Error::Schedule(format!("{} `{}` at t = {t}: {e}", probe.id, series.name))
        })?;
        if !v.is_finite() {
            return Err(Error::Schedule(format!(
                "{} `{}` is not finite at t = {t}",
                probe.id, series.name
            )));
        }
        estimates.push(v);
    }
    let deviations: Vec<f64> = estimates
        .iter()
        .map(|v| (v - series.expected_limit).abs())
        .collect();
    let final_estimate = *estimates.last().expect("non-empty schedule");
    let final_deviation = *deviations.last().expect("non-empty schedule");
    let monotone = monotone_tail(&deviations);
    Ok(ProbeReport {
        kind: Default::default(),
        case_id: probe.id.to_string(),
        paper_ref: probe.paper_ref.to_string(),
        series: series.name.to_string(),
        direction: series.direction,
        schedule: schedule.iter().map(|&t| round_sig(t)).collect(),
        estimates: estimates.iter().map(|&v| round_sig(v)).collect(),
        deviations: deviations.iter().map(|&v| round_sig(v)).collect(),
        expected_limit: round_sig(series.expected_limit),
        tolerance: series.tolerance,
        final_estimate: round_sig(final_estimate),
        final_deviation: round_sig(final_deviation),
        monotone,
        pass: final_deviation <= series.tolerance,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Runs every series of `probe`. `overrides` replaces the schedule of the
/// series with the given name.
pub fn run_probe(probe: &SharpnessProbe, overrides: &[(&str, Vec<f64>)]) -> Result<Vec<ProbeReport>> {
    for (name, _) in overrides {
        if !probe.series.iter().any(|s| s.name == *name) {
            return Err(Error::Schedule(format!("{} has no series `{name}`", probe.id)));
        }
    }
    probe
        .series
        .iter()
        .map(|s| {
            let schedule = overrides
                .iter()
                .find(|(name, _)| *name == s.name)
                .map(|(_, v)| v.as_slice());
            run_series(probe, s, schedule)
        })
        .collect()
}
