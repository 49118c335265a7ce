//! Every checked inequality and every sharpness probe.

use std::f64::consts::LN_2;

use hypmetrics_core::MetricId::{self, *};

use super::expr::{add, at, c, div, exp, log, m, mul, scale, sub, tanh, Expr, Pair};
use super::probe::{probes, SharpnessProbe};
use super::sample::{DomainKind, MobiusFamily, ALL_KINDS, CONVEX_KINDS};

pub const LN_3: f64 = 1.098_612_288_668_109_8;

const BALL: &[DomainKind] = &[DomainKind::Ball];
const HALF: &[DomainKind] = &[DomainKind::HalfSpace];
const PUNCT_BALL: &[DomainKind] = &[DomainKind::Punctured, DomainKind::Ball];

/// Predicate a sample must satisfy for a relation to be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    /// `s(x,y) < 1`; the upper triangular-ratio bound is infinite otherwise.
    TriangularBelowOne,
    /// `min{d(x),d(y)} >= max{d(x),d(y)} / 4`.
    MinAtLeastQuarterMax,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    /// `lhs <= rhs`, up to the run's slack.
    Le(Expr, Expr),
    /// `|lhs - rhs| <= tol * max(1, |rhs|)`.
    Near(Expr, Expr, f64),
}

impl Relation {
    pub fn lhs(&self) -> &Expr {
        match self {
            Relation::Le(l, _) | Relation::Near(l, _, _) => l,
        }
    }

    pub fn rhs(&self) -> &Expr {
        match self {
            Relation::Le(_, r) | Relation::Near(_, r, _) => r,
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Relation::Le(l, r) => write!(f, "{l} <= {r}"),
            Relation::Near(l, r, t) => write!(f, "{l} == {r} (tol {t:e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub relation: Relation,
    pub guard: Option<Guard>,
}

/// Case-level requirement on the sampled domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    ConvexOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCase {
    pub id: &'static str,
    pub paper_ref: &'static str,
    pub domains: Vec<DomainKind>,
    /// Draw a third point `z` (triangle inequalities).
    pub triple: bool,
    pub mobius: Option<MobiusFamily>,
    pub condition: Option<Condition>,
    pub checks: Vec<Check>,
}

impl InequalityCase {
    fn new(id: &'static str, paper_ref: &'static str, domains: &[DomainKind]) -> Self {
        InequalityCase {
            id,
            paper_ref,
            domains: domains.to_vec(),
            triple: false,
            mobius: None,
            condition: None,
            checks: Vec::new(),
        }
    }

    fn le(mut self, lhs: Expr, rhs: Expr) -> Self {
        self.checks.push(Check {
            relation: Relation::Le(lhs, rhs),
            guard: None,
        });
        self
    }

    /// `a <= b <= c <= ...`
    fn chain(mut self, terms: Vec<Expr>) -> Self {
        for w in terms.windows(2) {
            self = self.le(w[0].clone(), w[1].clone());
        }
        self
    }

    fn near(mut self, lhs: Expr, rhs: Expr, tol: f64) -> Self {
        self.checks.push(Check {
            relation: Relation::Near(lhs, rhs, tol),
            guard: None,
        });
        self
    }

    fn guarded(mut self, guard: Guard) -> Self {
        self.checks.last_mut().expect("a check to guard").guard = Some(guard);
        self
    }

    fn convex_only(mut self) -> Self {
        self.condition = Some(Condition::ConvexOnly);
        self
    }

    fn with_map(mut self, family: MobiusFamily) -> Self {
        self.mobius = Some(family);
        self
    }

    fn triangle(id: &'static str, paper_ref: &'static str, metric: MetricId) -> Self {
        let mut case = InequalityCase::new(id, paper_ref, ALL_KINDS).le(
            m(metric),
            add(at(metric, Pair::XZ), at(metric, Pair::ZY)),
        );
        case.triple = true;
        case
    }

    /// Same case sampled on other domain kinds.
    pub fn on_domains(&self, kinds: &[DomainKind]) -> InequalityCase {
        InequalityCase {
            domains: kinds.to_vec(),
            ..self.clone()
        }
    }

    pub fn uses(&self, id: MetricId) -> bool {
        self.checks
            .iter()
            .any(|ch| ch.relation.lhs().uses(id) || ch.relation.rhs().uses(id))
    }

    pub fn metrics(&self) -> Vec<MetricId> {
        let mut out = Vec::new();
        for ch in &self.checks {
            ch.relation.lhs().metrics(&mut out);
            ch.relation.rhs().metrics(&mut out);
        }
        out
    }
}

pub struct Catalog {
    pub cases: Vec<InequalityCase>,
    pub probes: Vec<SharpnessProbe>,
}

impl Catalog {
    pub fn case(&self, id: &str) -> Option<&InequalityCase> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn probe(&self, id: &str) -> Option<&SharpnessProbe> {
        self.probes.iter().find(|p| p.id == id)
    }
}

pub fn catalog() -> Catalog {
    Catalog {
        cases: cases(),
        probes: probes(),
    }
}

fn half(e: Expr) -> Expr {
    scale(0.5, e)
}

pub fn cases() -> Vec<InequalityCase> {
    let u = || m(U);
    let two_log2 = || c(2.0 * LN_2);
    let two_log3 = || c(2.0 * LN_3);
    // 2 log(1 + t c(x,y))
    let c_bound = |k: f64, t: Expr| scale(k, log(add(c(1.0), mul(t, m(Cassinian)))));
    vec![
        InequalityCase::new("T-Z1-B", "u vs hyperbolic metric, ball: rho <= u <= 3 rho", BALL)
            .chain(vec![m(Rho), u(), scale(3.0, m(Rho))]),
        InequalityCase::new("T-Z1-H", "u vs hyperbolic metric, half-space: rho <= u <= 3 rho", HALF)
            .chain(vec![m(Rho), u(), scale(3.0, m(Rho))]),
        InequalityCase::new("T-C-B", "distance ratio vs hyperbolic, ball: rho/2 <= j <= rho", BALL)
            .chain(vec![half(m(Rho)), m(J), m(Rho)]),
        InequalityCase::new("T-C-H", "distance ratio vs hyperbolic, half-space: rho/2 <= j <= rho", HALF)
            .chain(vec![half(m(Rho)), m(J), m(Rho)]),
        InequalityCase::new("T-O3", "u vs j_tilde: 2 j_tilde <= u <= 4 j_tilde", ALL_KINDS)
            .chain(vec![scale(2.0, m(JTilde)), u(), scale(4.0, m(JTilde))]),
        InequalityCase::new("T-O4", "u vs j: j <= u <= 4 j", ALL_KINDS)
            .chain(vec![m(J), u(), scale(4.0, m(J))]),
        InequalityCase::new("T-JS", "j <= delta <= 2 j_tilde <= 2 j on every domain", ALL_KINDS)
            .chain(vec![m(J), m(Delta), scale(2.0, m(JTilde)), scale(2.0, m(J))]),
        InequalityCase::new("T-ALJ", "Apollonian vs j on convex domains: j <= alpha", CONVEX_KINDS)
            .le(m(J), m(Alpha))
            .convex_only(),
        InequalityCase::new(
            "T-PAH",
            "Seittenranta vs Apollonian: alpha <= delta <= log(e^alpha + 2) <= alpha + log 3",
            ALL_KINDS,
        )
        .chain(vec![
            m(Alpha),
            m(Delta),
            log(add(exp(m(Alpha)), c(2.0))),
            add(m(Alpha), c(LN_3)),
        ]),
        InequalityCase::new("T-LEMMA3", "half-Apollonian vs Apollonian: alpha/2 <= eta <= alpha", ALL_KINDS)
            .chain(vec![half(m(Alpha)), m(Eta), m(Alpha)]),
        InequalityCase::new(
            "T-EQU14",
            "triangular ratio vs j: th(j/2) <= s <= (e^j - 1)/2",
            ALL_KINDS,
        )
        .chain(vec![
            tanh(half(m(J))),
            m(Triangular),
            half(sub(exp(m(J)), c(1.0))),
        ]),
        InequalityCase::new("T-EQU2-B", "u vs hyperbolic, ball: rho - 2 log 2 <= u", BALL)
            .le(sub(m(Rho), two_log2()), u()),
        InequalityCase::new("T-32", "u vs hyperbolic, ball: u <= rho + 2 log 2", BALL)
            .le(u(), add(m(Rho), two_log2())),
        InequalityCase::new("T-35", "u vs hyperbolic, half-space: u <= rho + 2 log 2", HALF)
            .le(u(), add(m(Rho), two_log2())),
        InequalityCase::new("T-JG", "u <= 3 j_tilde", ALL_KINDS).le(u(), scale(3.0, m(JTilde))),
        InequalityCase::new("T-JG4", "u <= 3 j", ALL_KINDS).le(u(), scale(3.0, m(J))),
        InequalityCase::new("T-HG", "u <= 2 j_tilde + log 2", ALL_KINDS)
            .le(u(), add(scale(2.0, m(JTilde)), c(LN_2))),
        InequalityCase::new("T-HG-COR", "u <= 2 j + log 2", ALL_KINDS)
            .le(u(), add(scale(2.0, m(J)), c(LN_2))),
        InequalityCase::new("T-JG6", "u vs Seittenranta: delta <= u <= 3 delta", ALL_KINDS)
            .chain(vec![m(Delta), u(), scale(3.0, m(Delta))]),
        InequalityCase::new("T-EQU13", "u vs Seittenranta: delta/2 <= u <= 4 delta", ALL_KINDS)
            .chain(vec![half(m(Delta)), u(), scale(4.0, m(Delta))]),
        InequalityCase::new(
            "T-JG7",
            "u vs half-Apollonian: eta <= u <= 2 eta + 2 log 3",
            ALL_KINDS,
        )
        .chain(vec![m(Eta), u(), add(scale(2.0, m(Eta)), two_log3())]),
        InequalityCase::new("T-JG8", "u <= 4 log(2 + e^eta)", ALL_KINDS)
            .le(u(), scale(4.0, log(add(c(2.0), exp(m(Eta)))))),
        InequalityCase::new(
            "T-ETA-DOM",
            "2 eta + 2 log 3 <= 4 log(2 + e^eta) at sampled eta",
            ALL_KINDS,
        )
        .le(
            add(scale(2.0, m(Eta)), two_log3()),
            scale(4.0, log(add(c(2.0), exp(m(Eta))))),
        ),
        InequalityCase::new(
            "T-ALPHA",
            "u vs Apollonian: alpha <= u <= 2 alpha + 2 log 3",
            ALL_KINDS,
        )
        .chain(vec![m(Alpha), u(), add(scale(2.0, m(Alpha)), two_log3())]),
        InequalityCase::new("T-ALPHA-CONVEX", "u <= 3 alpha on convex domains", CONVEX_KINDS)
            .le(u(), scale(3.0, m(Alpha)))
            .convex_only(),
        InequalityCase::new("T-EQU12", "u >= 2 log(1 + r c), r = min d", ALL_KINDS)
            .le(c_bound(2.0, Expr::MinDist), u()),
        InequalityCase::new("T-EQU12-R", "u >= log(1 + R c)/2, R = max d", ALL_KINDS)
            .le(c_bound(0.5, Expr::MaxDist), u()),
        InequalityCase::new(
            "T-EQU12-DOM",
            "log(1 + R c)/2 <= 2 log(1 + r c) when r >= R/4",
            ALL_KINDS,
        )
        .le(c_bound(0.5, Expr::MaxDist), c_bound(2.0, Expr::MinDist))
        .guarded(Guard::MinAtLeastQuarterMax),
        InequalityCase::new(
            "T-S",
            "u vs triangular ratio: 2 log 3 s <= u <= 3 log((1+s)/(1-s))",
            ALL_KINDS,
        )
        .le(mul(two_log3(), m(Triangular)), u())
        .le(
            u(),
            scale(
                3.0,
                log(div(add(c(1.0), m(Triangular)), sub(c(1.0), m(Triangular)))),
            ),
        )
        .guarded(Guard::TriangularBelowOne),
        InequalityCase::new(
            "T-ALPHA-FORMS",
            "Apollonian metric: pair-supremum form equals sum form",
            PUNCT_BALL,
        )
        .near(Expr::AlphaPairForm, m(Alpha), 1e-9),
        InequalityCase::triangle("TRI-U", "triangle inequality for u", U),
        InequalityCase::triangle("TRI-J", "triangle inequality for j", J),
        InequalityCase::triangle("TRI-JT", "triangle inequality for j_tilde", JTilde),
        InequalityCase::triangle("TRI-DELTA", "triangle inequality for delta", Delta),
        InequalityCase::triangle("TRI-ETA", "triangle inequality for eta", Eta),
        InequalityCase::triangle("TRI-C", "triangle inequality for c", Cassinian),
        InequalityCase::triangle("TRI-S", "triangle inequality for s", Triangular),
        InequalityCase::new(
            "M1",
            "Moebius quasi-invariance: u/3 <= u'(fx,fy) <= 3u",
            ALL_KINDS,
        )
        .chain(vec![scale(1.0 / 3.0, u()), at(U, Pair::Image), scale(3.0, u())])
        .with_map(MobiusFamily::QuasiInvariance),
        InequalityCase::new(
            "M2",
            "ball automorphisms: |u(fx,fy) - u(x,y)| <= 2 log 2",
            BALL,
        )
        .chain(vec![sub(u(), two_log2()), at(U, Pair::Image), add(u(), two_log2())])
        .with_map(MobiusFamily::BallToBall),
        InequalityCase::new(
            "M3-HH",
            "half-space self-maps: |u(fx,fy) - u(x,y)| <= 2 log 2",
            HALF,
        )
        .chain(vec![sub(u(), two_log2()), at(U, Pair::Image), add(u(), two_log2())])
        .with_map(MobiusFamily::HalfSpaceToHalfSpace),
        InequalityCase::new(
            "M3-HB",
            "half-space onto ball: |u_B(fx,fy) - u_H(x,y)| <= 2 log 2",
            HALF,
        )
        .chain(vec![sub(u(), two_log2()), at(U, Pair::Image), add(u(), two_log2())])
        .with_map(MobiusFamily::HalfSpaceToBall),
    ]
}
