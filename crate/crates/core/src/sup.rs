//! Suprema over the boundary of a domain of functionals that depend on a
//! boundary point `p` only through `|x - p|` and `|y - p|`.
//!
//! For a finite boundary the supremum is an exact maximum. For the unit
//! sphere and the hyperplane `x_n = 0` such a functional is invariant under
//! the rotations fixing the plane through `x`, `y` and the center (resp. the
//! vertical plane through `x` and `y`), and it is monotone in the distance to
//! that plane, so the search reduces to one circle (ball) or one line
//! (half-space). Both are scanned on a uniform grid and refined by
//! golden-section search around every coarse local maximum and around the
//! feet of `x` and `y`, where the functionals peak when the points approach
//! the boundary.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::point::{vector, ExtendedPoint};

/// Scan/refine parameters of the continuous-boundary search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupConfig {
    pub scan_samples: usize,
    pub tolerance: f64,
}

impl SupConfig {
    /// A denser scan used when re-checking suspicious samples.
    pub fn refined() -> Self {
        SupConfig {
            scan_samples: 8192,
            tolerance: 1e-13,
        }
    }
}

impl Default for SupConfig {
    fn default() -> Self {
        SupConfig {
            scan_samples: 1024,
            tolerance: 1e-12,
        }
    }
}

/// Argmax of a boundary supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryWitness {
    pub point: ExtendedPoint,
    pub value: f64,
}

/// Supremum over the boundary of `f(|x - p|, |y - p|)` with the default
/// configuration. `at_infinity` is the value at `∞`, taken into account only
/// when `∞` is a boundary point of `domain`.
pub fn boundary_sup<F>(
    domain: &Domain,
    x: &[f64],
    y: &[f64],
    f: F,
    at_infinity: Option<f64>,
) -> Result<BoundaryWitness>
where
    F: Fn(f64, f64) -> f64,
{
    boundary_sup_with(&SupConfig::default(), domain, x, y, f, at_infinity)
}

pub fn boundary_sup_with<F>(
    config: &SupConfig,
    domain: &Domain,
    x: &[f64],
    y: &[f64],
    f: F,
    at_infinity: Option<f64>,
) -> Result<BoundaryWitness>
where
    F: Fn(f64, f64) -> f64,
{
    let dim = domain.dim();
    for c in [x, y] {
        if c.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
    }
    match domain {
        Domain::FiniteComplement(fc) => {
            let mut best: Option<BoundaryWitness> = None;
            for p in fc.removed() {
                let value = f(vector::dist(x, p), vector::dist(y, p));
                if best.as_ref().is_none_or(|b| value > b.value) {
                    best = Some(BoundaryWitness {
                        point: ExtendedPoint::Finite(p.clone()),
                        value,
                    });
                }
            }
            if let (true, Some(value)) = (fc.infinity_boundary(), at_infinity) {
                if best.as_ref().is_none_or(|b| value > b.value) {
                    best = Some(BoundaryWitness {
                        point: ExtendedPoint::Infinity,
                        value,
                    });
                }
            }
            best.ok_or(Error::EmptyBoundary)
        }
        Domain::UnitBall { .. } => {
            check_config(config)?;
            let frame = CircleFrame::new(x, y);
            let g = |phi: f64| {
                let (dx, dy) = frame.distances(phi);
                f(dx, dy)
            };
            let seeds = frame.seeds();
            let (phi, value) = maximize_periodic(&g, config, &seeds);
            Ok(BoundaryWitness {
                point: ExtendedPoint::Finite(frame.point(phi)),
                value,
            })
        }
        Domain::UpperHalfSpace { .. } => {
            check_config(config)?;
            let frame = LineFrame::new(x, y);
            let g = |theta: f64| {
                let (dx, dy) = frame.distances(theta);
                f(dx, dy)
            };
            let seeds = frame.seeds();
            let (theta, value) = maximize_interval(&g, config, &seeds);
            match at_infinity {
                Some(v) if v > value => Ok(BoundaryWitness {
                    point: ExtendedPoint::Infinity,
                    value: v,
                }),
                _ => Ok(BoundaryWitness {
                    point: ExtendedPoint::Finite(frame.point(theta)),
                    value,
                }),
            }
        }
    }
}

fn check_config(config: &SupConfig) -> Result<()> {
    if config.scan_samples < 3 || config.tolerance.is_nan() || config.tolerance <= 0.0 {
        return Err(Error::InvalidParameter("sup scan needs >= 3 samples and tolerance > 0"));
    }
    Ok(())
}

/// A refinement seed: parameter value and characteristic width of the peak
/// expected around it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Seed {
    pub center: f64,
    pub width: f64,
}

/// The great circle of the unit sphere through the directions of `x` and
/// `y`, parametrized by the angle from the first basis vector.
pub(crate) struct CircleFrame {
    u1: Vec<f64>,
    u2: Vec<f64>,
    nx: f64,
    ny: f64,
    ox: f64,
    oy: f64,
    ax: f64,
    ay: f64,
}

impl CircleFrame {
    pub(crate) fn new(x: &[f64], y: &[f64]) -> Self {
        let dim = x.len();
        let nx = vector::norm(x);
        let ny = vector::norm(y);
        let (reference, other) = if nx > 0.0 { (x, y) } else { (y, x) };
        let nref = vector::norm(reference);
        let u1 = if nref > 0.0 {
            vector::scale(reference, 1.0 / nref)
        } else {
            let mut e = vec![0.0; dim];
            e[0] = 1.0;
            e
        };
        let along = vector::dot(other, &u1);
        let w: Vec<f64> = other.iter().zip(&u1).map(|(o, u)| o - along * u).collect();
        let nw = vector::norm(&w);
        let u2 = if nw > 1e-300 && nw > 1e-15 * vector::norm(other) {
            vector::scale(&w, 1.0 / nw)
        } else {
            perpendicular(&u1)
        };
        // angle of the second point measured from u1 towards u2
        let beta = if nref > 0.0 && vector::norm(other) > 0.0 {
            vector::angle_between(reference, other)
        } else {
            0.0
        };
        let (ax, ay) = if nx > 0.0 { (0.0, beta) } else { (beta, 0.0) };
        CircleFrame {
            u1,
            u2,
            nx,
            ny,
            ox: vector::one_minus_norm(x),
            oy: vector::one_minus_norm(y),
            ax,
            ay,
        }
    }

    pub(crate) fn distances(&self, phi: f64) -> (f64, f64) {
        let sx = libm::sin(0.5 * (phi - self.ax));
        let sy = libm::sin(0.5 * (phi - self.ay));
        (
            libm::sqrt(self.ox * self.ox + 4.0 * self.nx * sx * sx),
            libm::sqrt(self.oy * self.oy + 4.0 * self.ny * sy * sy),
        )
    }

    pub(crate) fn point(&self, phi: f64) -> Vec<f64> {
        let (s, c) = libm::sincos(phi);
        self.u1
            .iter()
            .zip(&self.u2)
            .map(|(a, b)| c * a + s * b)
            .collect()
    }

    pub(crate) fn seeds(&self) -> Vec<Seed> {
        let mut seeds = Vec::with_capacity(4);
        if self.nx > 0.0 {
            seeds.push(Seed {
                center: self.ax,
                width: self.ox,
            });
        }
        if self.ny > 0.0 {
            seeds.push(Seed {
                center: self.ay,
                width: self.oy,
            });
        }
        seeds
    }
}

/// The line of the hyperplane `x_n = 0` through the feet of `x` and `y`,
/// parametrized by `theta ∈ (-π/2, π/2)` via `ξ = c + L tan θ`.
struct LineFrame {
    foot: Vec<f64>,
    dir: Vec<f64>,
    hx: f64,
    hy: f64,
    ay: f64,
    center: f64,
    scale: f64,
}

impl LineFrame {
    fn new(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        let xh = &x[..n - 1];
        let yh = &y[..n - 1];
        let diff = vector::sub(yh, xh);
        let ay = vector::norm(&diff);
        let dir = if ay > 0.0 {
            vector::scale(&diff, 1.0 / ay)
        } else {
            let mut e = vec![0.0; n - 1];
            e[0] = 1.0;
            e
        };
        let hx = x[n - 1];
        let hy = y[n - 1];
        LineFrame {
            foot: xh.to_vec(),
            dir,
            hx,
            hy,
            ay,
            center: 0.5 * ay,
            scale: ay + hx + hy,
        }
    }

    fn coordinate(&self, theta: f64) -> f64 {
        self.center + self.scale * libm::tan(theta)
    }

    fn distances(&self, theta: f64) -> (f64, f64) {
        let xi = self.coordinate(theta);
        (libm::hypot(xi, self.hx), libm::hypot(xi - self.ay, self.hy))
    }

    fn point(&self, theta: f64) -> Vec<f64> {
        let xi = self.coordinate(theta);
        let mut p: Vec<f64> = self
            .foot
            .iter()
            .zip(&self.dir)
            .map(|(f, d)| f + xi * d)
            .collect();
        p.push(0.0);
        p
    }

    fn seeds(&self) -> Vec<Seed> {
        let at = |xi: f64, h: f64| {
            let t = (xi - self.center) / self.scale;
            Seed {
                center: libm::atan(t),
                width: h / self.scale / (1.0 + t * t),
            }
        };
        vec![at(0.0, self.hx), at(self.ay, self.hy)]
    }
}

fn perpendicular(u: &[f64]) -> Vec<f64> {
    // Gram-Schmidt on the coordinate axis least aligned with u
    let k = u
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut e = vec![0.0; u.len()];
    e[k] = 1.0;
    let d = vector::dot(&e, u);
    let w: Vec<f64> = e.iter().zip(u).map(|(a, b)| a - d * b).collect();
    let nw = vector::norm(&w);
    vector::scale(&w, 1.0 / nw)
}

const MAX_LOCAL_BRACKETS: usize = 4;

/// Maximizes a `2π`-periodic function.
pub(crate) fn maximize_periodic<G: Fn(f64) -> f64>(
    g: &G,
    config: &SupConfig,
    seeds: &[Seed],
) -> (f64, f64) {
    let n = config.scan_samples;
    let h = 2.0 * PI / n as f64;
    let grid: Vec<f64> = (0..n).map(|k| -PI + h * k as f64).collect();
    let values: Vec<f64> = grid.iter().map(|&t| g(t)).collect();
    let mut best = argmax(&grid, &values);

    let mut locals: Vec<usize> = (0..n)
        .filter(|&k| {
            let prev = values[(k + n - 1) % n];
            let next = values[(k + 1) % n];
            values[k] >= prev && values[k] >= next
        })
        .collect();
    locals.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(core::cmp::Ordering::Equal));
    locals.truncate(MAX_LOCAL_BRACKETS);

    let mut brackets: Vec<(f64, f64, f64)> = locals
        .iter()
        .map(|&k| (grid[k] - h, grid[k] + h, config.tolerance))
        .collect();
    push_seed_brackets(&mut brackets, seeds, h, config.tolerance);
    for (a, b, tol) in brackets {
        let cand = golden_max(g, a, b, tol);
        if cand.1 > best.1 {
            best = cand;
        }
    }
    best
}

/// Maximizes a function on the open interval `(-π/2, π/2)`.
fn maximize_interval<G: Fn(f64) -> f64>(g: &G, config: &SupConfig, seeds: &[Seed]) -> (f64, f64) {
    let n = config.scan_samples;
    let h = PI / n as f64;
    let grid: Vec<f64> = (0..n).map(|k| -FRAC_PI_2 + h * (k as f64 + 0.5)).collect();
    let values: Vec<f64> = grid.iter().map(|&t| g(t)).collect();
    let mut best = argmax(&grid, &values);

    let mut locals: Vec<usize> = (0..n)
        .filter(|&k| {
            let prev = if k > 0 { values[k - 1] } else { f64::NEG_INFINITY };
            let next = if k + 1 < n { values[k + 1] } else { f64::NEG_INFINITY };
            values[k] >= prev && values[k] >= next
        })
        .collect();
    locals.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(core::cmp::Ordering::Equal));
    locals.truncate(MAX_LOCAL_BRACKETS);

    let lo = -FRAC_PI_2 + 1e-12;
    let hi = FRAC_PI_2 - 1e-12;
    let mut brackets: Vec<(f64, f64, f64)> = locals
        .iter()
        .map(|&k| (grid[k] - h, grid[k] + h, config.tolerance))
        .collect();
    push_seed_brackets(&mut brackets, seeds, h, config.tolerance);
    for (a, b, tol) in brackets {
        let (a, b) = (a.max(lo), b.min(hi));
        if a >= b {
            continue;
        }
        let cand = golden_max(g, a, b, tol);
        if cand.1 > best.1 {
            best = cand;
        }
    }
    best
}

// Peaks narrower than the scan spacing get a tolerance relative to their width.
fn push_seed_brackets(brackets: &mut Vec<(f64, f64, f64)>, seeds: &[Seed], h: f64, tol: f64) {
    for s in seeds {
        let local_tol = tol * (s.width / h).min(1.0);
        for w in [h, 8.0 * s.width, s.width] {
            if w > 0.0 && w <= h {
                brackets.push((s.center - w, s.center + w, local_tol));
            }
        }
    }
}

fn argmax(grid: &[f64], values: &[f64]) -> (f64, f64) {
    let mut best = (grid[0], values[0]);
    for (&t, &v) in grid.iter().zip(values).skip(1) {
        if v > best.1 {
            best = (t, v);
        }
    }
    best
}

/// Golden-section search for a maximum on `[a, b]`. Returns the best point
/// evaluated, so the result never falls below the interior probes.
pub(crate) fn golden_max<G: Fn(f64) -> f64>(g: &G, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    let mut best = if gc >= gd { (c, gc) } else { (d, gd) };
    for _ in 0..200 {
        if (b - a).abs() <= tol || c >= d {
            break;
        }
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
            if gc > best.1 {
                best = (c, gc);
            }
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
            if gd > best.1 {
                best = (d, gd);
            }
        }
    }
    best
}
