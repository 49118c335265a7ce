//! Random admissible inputs for the catalog.

use hypmetrics_core::point::vector;
use hypmetrics_core::{
    ball_automorphism, cayley_map, compose, inversion_unit, Domain, ExtendedPoint, Generator,
    MobiusMap,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Domain variants a case can be sampled on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Ball,
    HalfSpace,
    /// `R^n` minus finitely many points; `∞` is always a boundary point.
    Punctured,
}

impl DomainKind {
    pub fn is_convex(self) -> bool {
        !matches!(self, DomainKind::Punctured)
    }

    pub fn name(self) -> &'static str {
        match self {
            DomainKind::Ball => "ball",
            DomainKind::HalfSpace => "halfspace",
            DomainKind::Punctured => "punctured",
        }
    }
}

pub const ALL_KINDS: &[DomainKind] = &[DomainKind::Ball, DomainKind::HalfSpace, DomainKind::Punctured];
pub const CONVEX_KINDS: &[DomainKind] = &[DomainKind::Ball, DomainKind::HalfSpace];

/// Which Möbius map accompanies a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MobiusFamily {
    /// Map whose pole lies in the extended boundary of a punctured domain
    /// (so the image is again a punctured domain), ball automorphisms on the
    /// ball, and half-space maps onto the ball or onto itself.
    QuasiInvariance,
    BallToBall,
    HalfSpaceToHalfSpace,
    HalfSpaceToBall,
}

/// `f(D)` together with `f(x)`, `f(y)`.
#[derive(Debug, Clone)]
pub struct Image {
    pub domain: Domain,
    pub x: ExtendedPoint,
    pub y: ExtendedPoint,
}

#[derive(Debug, Clone)]
pub struct Sample {
    pub domain: Domain,
    pub x: ExtendedPoint,
    pub y: ExtendedPoint,
    pub z: Option<ExtendedPoint>,
    pub image: Option<Image>,
}

pub const DIMENSIONS: [usize; 3] = [2, 3, 4];

/// FNV-1a, used to fold a case id into the seed.
pub fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// RNG for sample `k` of case `case_id`. Depends only on `(seed, case_id, k)`.
pub fn stream(seed: u64, case_id: &str, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(case_id).rotate_left(17));
    rng.set_stream(k);
    rng
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| normal(rng)).collect();
        let n = vector::norm(&v);
        if n > 1e-9 {
            return vector::scale(&v, 1.0 / n);
        }
    }
}

/// Point of the unit ball: uniform half of the time, otherwise at radius
/// `1 - 10^-k` with `k` uniform in `1..=6`.
pub fn ball_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let dir = unit_vector(rng, dim);
    let r = if rng.random_bool(0.5) {
        rng.random::<f64>().powf(1.0 / dim as f64)
    } else {
        1.0 - 10f64.powi(-rng.random_range(1..=6))
    };
    vector::scale(&dir, r)
}

/// Gaussian horizontal part, height log-uniform in `[1e-6, 1e6]`.
pub fn half_space_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..dim - 1).map(|_| normal(rng)).collect();
    p.push(log_uniform(rng, 1e-6, 1e6));
    p
}

/// Random punctured domain with one to four removed points.
pub fn punctured_domain(rng: &mut ChaCha8Rng, dim: usize) -> Domain {
    loop {
        let k = rng.random_range(1..=4);
        let removed: Vec<Vec<f64>> = (0..k)
            .map(|_| (0..dim).map(|_| normal(rng)).collect())
            .collect();
        if let Ok(d) = Domain::punctured(removed, true) {
            return d;
        }
    }
}

/// Point near one of the removed points (Gaussian cloud of random scale) or
/// in the far field.
pub fn punctured_point(rng: &mut ChaCha8Rng, domain: &Domain) -> Vec<f64> {
    let removed = domain.removed_points().expect("punctured domain");
    let dim = domain.dim();
    loop {
        let p = if rng.random_bool(0.75) {
            let c = &removed[rng.random_range(0..removed.len())];
            let sigma = log_uniform(rng, 1e-3, 1.0);
            c.iter().map(|v| v + sigma * normal(rng)).collect()
        } else {
            vector::scale(&unit_vector(rng, dim), log_uniform(rng, 1.0, 1e3))
        };
        if domain.contains(&p) {
            return p;
        }
    }
}

pub fn domain_of(rng: &mut ChaCha8Rng, kind: DomainKind, dim: usize) -> Domain {
    match kind {
        DomainKind::Ball => Domain::unit_ball(dim).expect("dim >= 2"),
        DomainKind::HalfSpace => Domain::upper_half_space(dim).expect("dim >= 2"),
        DomainKind::Punctured => punctured_domain(rng, dim),
    }
}

/// A point of `domain` drawn from the distribution of its kind.
pub fn point_in(rng: &mut ChaCha8Rng, domain: &Domain) -> Vec<f64> {
    match domain {
        Domain::UnitBall { dim } => loop {
            let p = ball_point(rng, *dim);
            if domain.contains(&p) {
                return p;
            }
        },
        Domain::UpperHalfSpace { dim } => half_space_point(rng, *dim),
        Domain::FiniteComplement(_) => punctured_point(rng, domain),
    }
}

/// Two points of `domain`.
pub fn sample_pair(rng: &mut ChaCha8Rng, domain: &Domain) -> (ExtendedPoint, ExtendedPoint) {
    let x = point_in(rng, domain);
    let y = point_in(rng, domain);
    (ExtendedPoint::Finite(x), ExtendedPoint::Finite(y))
}

fn random_orthogonal(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while rows.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| normal(rng)).collect();
        for r in &rows {
            let d = vector::dot(&v, r);
            v = v.iter().zip(r).map(|(a, b)| a - d * b).collect();
        }
        let n = vector::norm(&v);
        if n > 1e-6 {
            rows.push(vector::scale(&v, 1.0 / n));
        }
    }
    rows
}

/// Random orientation-free affine similarity `x ↦ λQx + b`.
fn random_similarity(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Generator> {
    vec![
        Generator::Orthogonal(random_orthogonal(rng, dim)),
        Generator::Scaling(log_uniform(rng, 0.1, 10.0)),
        Generator::Translation((0..dim).map(|_| normal(rng)).collect()),
    ]
}

/// Self-map of the upper half-space: horizontal similarity and translation.
fn half_space_similarity(rng: &mut ChaCha8Rng, dim: usize) -> MobiusMap {
    let mut q = vec![vec![0.0; dim]; dim];
    let horizontal = random_orthogonal(rng, dim - 1);
    for (i, row) in horizontal.iter().enumerate() {
        q[i][..dim - 1].copy_from_slice(row);
    }
    q[dim - 1][dim - 1] = 1.0;
    let mut b: Vec<f64> = (0..dim - 1).map(|_| normal(rng)).collect();
    b.push(0.0);
    MobiusMap::from_generators(
        dim,
        vec![
            Generator::Orthogonal(q),
            Generator::Scaling(log_uniform(rng, 0.1, 10.0)),
            Generator::Translation(b),
        ],
    )
    .expect("valid generators")
}

/// Möbius map with pole in `P ∪ {∞}` for the punctured domain `R^n \ P`.
fn punctured_map(rng: &mut ChaCha8Rng, domain: &Domain) -> MobiusMap {
    let dim = domain.dim();
    let removed = domain.removed_points().expect("punctured domain");
    let mut gens = random_similarity(rng, dim);
    if rng.random_bool(0.5) {
        let pole = removed[rng.random_range(0..removed.len())].clone();
        gens.insert(
            0,
            Generator::SphereInversion {
                center: pole,
                radius: log_uniform(rng, 0.1, 10.0),
            },
        );
    }
    MobiusMap::from_generators(dim, gens).expect("valid generators")
}

fn ball_map(rng: &mut ChaCha8Rng, dim: usize) -> MobiusMap {
    // keep |a| <= 1 - 1e-3 so images stay resolvable in binary64
    let a = loop {
        let dir = unit_vector(rng, dim);
        let r = if rng.random_bool(0.5) {
            rng.random::<f64>()
        } else {
            1.0 - 10f64.powi(-rng.random_range(1..=3))
        };
        if r > 1e-6 {
            break vector::scale(&dir, r);
        }
    };
    let rot = MobiusMap::orthogonal(random_orthogonal(rng, dim)).expect("orthogonal");
    compose(&rot, &ball_automorphism(&a).expect("0 < |a| < 1"))
}

/// Draws the map for `family` and pushes the pair forward. Returns `None`
/// when an image falls outside the image domain in floating point.
pub fn sample_image(
    rng: &mut ChaCha8Rng,
    family: MobiusFamily,
    domain: &Domain,
    x: &ExtendedPoint,
    y: &ExtendedPoint,
) -> Option<Image> {
    let dim = domain.dim();
    let (f, image_domain) = match (family, domain) {
        (MobiusFamily::BallToBall, Domain::UnitBall { .. })
        | (MobiusFamily::QuasiInvariance, Domain::UnitBall { .. }) => {
            (ball_map(rng, dim), domain.clone())
        }
        (MobiusFamily::HalfSpaceToHalfSpace, Domain::UpperHalfSpace { .. }) => {
            let s = half_space_similarity(rng, dim);
            (compose(&inversion_unit(dim).ok()?, &s), domain.clone())
        }
        (MobiusFamily::HalfSpaceToBall, Domain::UpperHalfSpace { .. }) => {
            let s = half_space_similarity(rng, dim);
            (compose(&cayley_map(dim).ok()?, &s), Domain::unit_ball(dim).ok()?)
        }
        (MobiusFamily::QuasiInvariance, Domain::UpperHalfSpace { .. }) => {
            let s = half_space_similarity(rng, dim);
            if rng.random_bool(0.5) {
                (compose(&cayley_map(dim).ok()?, &s), Domain::unit_ball(dim).ok()?)
            } else {
                (compose(&inversion_unit(dim).ok()?, &s), domain.clone())
            }
        }
        (MobiusFamily::QuasiInvariance, Domain::FiniteComplement(_)) => {
            let f = punctured_map(rng, domain);
            let image = f.image_domain(domain).ok()?;
            (f, image)
        }
        _ => return None,
    };
    let fx = f.apply(x);
    let fy = f.apply(y);
    if image_domain.member(&fx).is_err() || image_domain.member(&fy).is_err() || fx == fy {
        return None;
    }
    Some(Image {
        domain: image_domain,
        x: fx,
        y: fy,
    })
}

/// Whether `family` is defined on domains of `kind`.
pub fn family_supports(family: MobiusFamily, kind: DomainKind) -> bool {
    match family {
        MobiusFamily::QuasiInvariance => true,
        MobiusFamily::BallToBall => kind == DomainKind::Ball,
        MobiusFamily::HalfSpaceToHalfSpace | MobiusFamily::HalfSpaceToBall => {
            kind == DomainKind::HalfSpace
        }
    }
}
