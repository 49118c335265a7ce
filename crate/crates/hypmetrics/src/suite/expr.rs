//! Scalar expressions over metric values of a sample.

use std::fmt;

use hypmetrics_core::{alpha_pair_form, Domain, ExtendedPoint, MetricId, SupConfig};

use super::sample::Sample;

/// Which two points a metric term is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pair {
    XY,
    XZ,
    ZY,
    /// `(f(x), f(y))` in the image domain `f(D)`.
    Image,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Metric(MetricId, Pair),
    /// Apollonian metric at `(x, y)` in its pair-supremum form.
    AlphaPairForm,
    /// `min{d(x), d(y)}`.
    MinDist,
    /// `max{d(x), d(y)}`.
    MaxDist,
    Const(f64),
    Log(Box<Expr>),
    Exp(Box<Expr>),
    Tanh(Box<Expr>),
    /// `Σ cᵢ eᵢ`, summed with Neumaier compensation.
    Sum(Vec<(f64, Expr)>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

pub fn m(id: MetricId) -> Expr {
    Expr::Metric(id, Pair::XY)
}

pub fn at(id: MetricId, pair: Pair) -> Expr {
    Expr::Metric(id, pair)
}

pub fn c(v: f64) -> Expr {
    Expr::Const(v)
}

pub fn log(e: Expr) -> Expr {
    Expr::Log(Box::new(e))
}

pub fn exp(e: Expr) -> Expr {
    Expr::Exp(Box::new(e))
}

pub fn tanh(e: Expr) -> Expr {
    Expr::Tanh(Box::new(e))
}

pub fn add(a: Expr, b: Expr) -> Expr {
    sum(vec![(1.0, a), (1.0, b)])
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    sum(vec![(1.0, a), (-1.0, b)])
}

pub fn scale(k: f64, e: Expr) -> Expr {
    sum(vec![(k, e)])
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    Expr::Mul(Box::new(a), Box::new(b))
}

pub fn div(a: Expr, b: Expr) -> Expr {
    Expr::Div(Box::new(a), Box::new(b))
}

fn sum(terms: Vec<(f64, Expr)>) -> Expr {
    // flatten nested sums so compensation sees every term
    let mut flat = Vec::with_capacity(terms.len());
    for (k, e) in terms {
        match e {
            Expr::Sum(inner) => flat.extend(inner.into_iter().map(|(j, e)| (k * j, e))),
            e => flat.push((k, e)),
        }
    }
    Expr::Sum(flat)
}

impl Expr {
    pub fn uses(&self, id: MetricId) -> bool {
        match self {
            Expr::Metric(m, _) => *m == id,
            Expr::AlphaPairForm => id == MetricId::Alpha,
            Expr::MinDist | Expr::MaxDist | Expr::Const(_) => false,
            Expr::Log(e) | Expr::Exp(e) | Expr::Tanh(e) => e.uses(id),
            Expr::Sum(t) => t.iter().any(|(_, e)| e.uses(id)),
            Expr::Mul(a, b) | Expr::Div(a, b) => a.uses(id) || b.uses(id),
        }
    }

    pub fn uses_pair(&self, pair: Pair) -> bool {
        match self {
            Expr::Metric(_, p) => *p == pair,
            Expr::AlphaPairForm => pair == Pair::XY,
            Expr::MinDist | Expr::MaxDist => pair == Pair::XY,
            Expr::Const(_) => false,
            Expr::Log(e) | Expr::Exp(e) | Expr::Tanh(e) => e.uses_pair(pair),
            Expr::Sum(t) => t.iter().any(|(_, e)| e.uses_pair(pair)),
            Expr::Mul(a, b) | Expr::Div(a, b) => a.uses_pair(pair) || b.uses_pair(pair),
        }
    }

    /// Metrics referenced anywhere in the expression.
    pub fn metrics(&self, out: &mut Vec<MetricId>) {
        match self {
            Expr::Metric(m, _) => {
                if !out.contains(m) {
                    out.push(*m)
                }
            }
            Expr::AlphaPairForm => {
                if !out.contains(&MetricId::Alpha) {
                    out.push(MetricId::Alpha)
                }
            }
            Expr::MinDist | Expr::MaxDist | Expr::Const(_) => {}
            Expr::Log(e) | Expr::Exp(e) | Expr::Tanh(e) => e.metrics(out),
            Expr::Sum(t) => t.iter().for_each(|(_, e)| e.metrics(out)),
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.metrics(out);
                b.metrics(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Metric(m, Pair::XY) => write!(f, "{m}(x,y)"),
            Expr::Metric(m, Pair::XZ) => write!(f, "{m}(x,z)"),
            Expr::Metric(m, Pair::ZY) => write!(f, "{m}(z,y)"),
            Expr::Metric(m, Pair::Image) => write!(f, "{m}'(fx,fy)"),
            Expr::AlphaPairForm => f.write_str("alpha_pair(x,y)"),
            Expr::MinDist => f.write_str("r"),
            Expr::MaxDist => f.write_str("R"),
            Expr::Const(v) => write!(f, "{}", crate::format::fmt_sig(*v)),
            Expr::Log(e) => write!(f, "log({e})"),
            Expr::Exp(e) => write!(f, "exp({e})"),
            Expr::Tanh(e) => write!(f, "th({e})"),
            Expr::Sum(t) => {
                f.write_str("(")?;
                for (i, (k, e)) in t.iter().enumerate() {
                    let sign = if *k < 0.0 { "-" } else { "+" };
                    if i > 0 {
                        write!(f, " {sign} ")?;
                    } else if *k < 0.0 {
                        f.write_str("-")?;
                    }
                    if k.abs() != 1.0 {
                        write!(f, "{}*", crate::format::fmt_sig(k.abs()))?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "{a}/{b}"),
        }
    }
}

/// Evaluates expressions on one sample, caching metric values so shared
/// terms of the two sides are computed once.
pub struct Evaluator<'a> {
    sample: &'a Sample,
    config: SupConfig,
    cache: Vec<((MetricId, Pair), f64)>,
    alpha_pair: Option<f64>,
}

impl<'a> Evaluator<'a> {
    pub fn new(sample: &'a Sample, config: SupConfig) -> Self {
        Evaluator {
            sample,
            config,
            cache: Vec::new(),
            alpha_pair: None,
        }
    }

    fn points(&self, pair: Pair) -> hypmetrics_core::Result<(&'a Domain, &'a ExtendedPoint, &'a ExtendedPoint)> {
        let s = self.sample;
        let missing = hypmetrics_core::Error::InvalidParameter("sample lacks the requested point");
        Ok(match pair {
            Pair::XY => (&s.domain, &s.x, &s.y),
            Pair::XZ => (&s.domain, &s.x, s.z.as_ref().ok_or(missing)?),
            Pair::ZY => (&s.domain, s.z.as_ref().ok_or(missing)?, &s.y),
            Pair::Image => {
                let img = s.image.as_ref().ok_or(missing)?;
                (&img.domain, &img.x, &img.y)
            }
        })
    }

    pub fn metric(&mut self, id: MetricId, pair: Pair) -> hypmetrics_core::Result<f64> {
        if let Some((_, v)) = self.cache.iter().find(|(k, _)| *k == (id, pair)) {
            return Ok(*v);
        }
        let (d, x, y) = self.points(pair)?;
        let v = id.evaluate_with(&self.config, d, x, y)?;
        self.cache.push(((id, pair), v));
        Ok(v)
    }

    pub fn eval(&mut self, e: &Expr) -> hypmetrics_core::Result<f64> {
        Ok(match e {
            Expr::Metric(id, pair) => self.metric(*id, *pair)?,
            Expr::AlphaPairForm => match self.alpha_pair {
                Some(v) => v,
                None => {
                    let s = self.sample;
                    let v = alpha_pair_form(&s.domain, &s.x, &s.y)?;
                    self.alpha_pair = Some(v);
                    v
                }
            },
            Expr::MinDist | Expr::MaxDist => {
                let s = self.sample;
                let dx = s.domain.distance_to_boundary(&s.x)?;
                let dy = s.domain.distance_to_boundary(&s.y)?;
                if matches!(e, Expr::MinDist) {
                    dx.min(dy)
                } else {
                    dx.max(dy)
                }
            }
            Expr::Const(v) => *v,
            Expr::Log(a) => self.eval(a)?.ln(),
            Expr::Exp(a) => self.eval(a)?.exp(),
            Expr::Tanh(a) => self.eval(a)?.tanh(),
            Expr::Sum(terms) => {
                let mut acc = Neumaier::default();
                for (k, t) in terms {
                    acc.add(k * self.eval(t)?);
                }
                acc.total()
            }
            Expr::Mul(a, b) => self.eval(a)? * self.eval(b)?,
            Expr::Div(a, b) => self.eval(a)? / self.eval(b)?,
        })
    }
}

/// Neumaier's improved Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let mut acc = Neumaier::default();
        for v in [1.0, 1e100, 1.0, -1e100] {
            acc.add(v);
        }
        assert_eq!(acc.total(), 2.0);
    }

    #[test]
    fn sums_flatten_and_display() {
        let e = add(scale(2.0, m(MetricId::JTilde)), c(2.0f64.ln()));
        match &e {
            Expr::Sum(t) => assert_eq!(t.len(), 2),
            _ => panic!("expected a sum"),
        }
        assert_eq!(e.to_string(), "(2*j_tilde(x,y) + 0.69314718056)");
        let e = sub(m(MetricId::U), add(m(MetricId::Rho), c(1.0)));
        assert_eq!(e.to_string(), "(u(x,y) - rho(x,y) - 1)");
    }
}
