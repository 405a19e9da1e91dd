//! Seeded sampling of exact values for property tests and the acceptance
//! suite. All samplers draw from a ChaCha stream so runs are reproducible.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cfmaps::{detect_termination, TerminationCheck};
use crate::natext::{Endpoint, Interval, PlanePoint, Rect};
use crate::projline::{sector_of, ProjPoint};
use crate::qsqrt2::QSqrt2;
use crate::surface::{SurfacePoint, Trajectory};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An exact point (a + b√2)/den within about 1/den of the float target.
pub fn snap_to_qsqrt2<R: Rng>(rng: &mut R, target: f64, den: i64) -> QSqrt2 {
    let b = rng.gen_range(-den..=den);
    let a = ((target - b as f64 * std::f64::consts::SQRT_2 / den as f64) * den as f64).round()
        as i64;
    QSqrt2::from_parts(a, den, b, den)
}

/// A direction with θ uniform in the open sector Σ_i, snapped to an exact
/// value with denominator `den`.
pub fn direction_in_sector<R: Rng>(rng: &mut R, i: usize, den: i64) -> ProjPoint {
    loop {
        let lo = i as f64 * std::f64::consts::PI / 8.0;
        let theta = rng.gen_range(lo + 3e-3..lo + std::f64::consts::PI / 8.0 - 3e-3);
        let u = snap_to_qsqrt2(rng, 1.0 / theta.tan(), den);
        let p = ProjPoint::from_u(u);
        if sector_of(&p) == i {
            return p;
        }
    }
}

/// A direction with θ uniform in (π/8, π), i.e. u interior to Σ̄.
pub fn direction_in_sigma_bar<R: Rng>(rng: &mut R, den: i64) -> ProjPoint {
    let sector = rng.gen_range(1..8);
    direction_in_sector(rng, sector, den)
}

/// A direction anywhere in [0, π), uniform over sectors.
pub fn direction_any<R: Rng>(rng: &mut R, den: i64) -> ProjPoint {
    let sector = rng.gen_range(0..8);
    direction_in_sector(rng, sector, den)
}

/// A non-terminating direction (exact check up to `check_iters` steps).
pub fn nonterminating_direction<R: Rng>(rng: &mut R, den: i64, check_iters: usize) -> ProjPoint {
    loop {
        let p = direction_in_sigma_bar(rng, den);
        if !matches!(
            detect_termination(&p, check_iters),
            TerminationCheck::Terminating { .. }
        ) {
            return p;
        }
    }
}

/// An interior point of the octagon within the unit box around the center.
pub fn interior_point<R: Rng>(rng: &mut R) -> SurfacePoint {
    let den = 64;
    let x = QSqrt2::rational(rng.gen_range(-den..=den), den);
    let y = QSqrt2::rational(rng.gen_range(-den..=den), den);
    SurfacePoint::new(x, y).expect("the unit box is interior")
}

/// A random trajectory: interior start plus a direction in any sector.
pub fn trajectory<R: Rng>(rng: &mut R, den: i64) -> Trajectory {
    let start = interior_point(rng);
    Trajectory::from_u(start, &direction_any(rng, den)).expect("nonzero direction")
}

/// A nondegenerate interval [a, b] with b ≤ 1+√2 − margin, a ≥ −span.
pub fn interval_in_sigma<R: Rng>(rng: &mut R, span: f64, margin: f64) -> Interval {
    let silver = 1.0 + std::f64::consts::SQRT_2;
    loop {
        let mut x = rng.gen_range(-span..silver - margin);
        let mut y = rng.gen_range(-span..silver - margin);
        if (x - y).abs() < 1e-3 {
            continue;
        }
        if x > y {
            std::mem::swap(&mut x, &mut y);
        }
        let a = snap_to_qsqrt2(rng, x, 997);
        let b = snap_to_qsqrt2(rng, y, 997);
        if a < b && b < QSqrt2::silver() {
            return Interval::finite(a, b);
        }
    }
}

/// A v-interval inside (1+√2 + margin, hi_span).
pub fn interval_in_sigma0<R: Rng>(rng: &mut R, hi_span: f64, margin: f64) -> Interval {
    let silver = 1.0 + std::f64::consts::SQRT_2;
    loop {
        let mut x = rng.gen_range(silver + margin..hi_span);
        let mut y = rng.gen_range(silver + margin..hi_span);
        if (x - y).abs() < 1e-3 {
            continue;
        }
        if x > y {
            std::mem::swap(&mut x, &mut y);
        }
        let a = snap_to_qsqrt2(rng, x, 997);
        let b = snap_to_qsqrt2(rng, y, 997);
        if QSqrt2::silver() < a && a < b {
            return Interval::finite(a, b);
        }
    }
}

/// A rectangle inside Σ̄ × Σ̄₀ with the closure off the diagonal.
pub fn rect_in_domain<R: Rng>(rng: &mut R) -> Rect {
    Rect {
        u: interval_in_sigma(rng, 12.0, 0.05),
        v: interval_in_sigma0(rng, 40.0, 0.05),
    }
}

/// A natural-extension point with both coordinates interior.
pub fn plane_point<R: Rng>(rng: &mut R, den: i64) -> PlanePoint {
    let u = direction_in_sigma_bar(rng, den);
    let v = loop {
        let silver = 1.0 + std::f64::consts::SQRT_2;
        let target = rng.gen_range(silver + 1e-3..silver + 40.0);
        let q = snap_to_qsqrt2(rng, target, den);
        if q > QSqrt2::silver() {
            break ProjPoint::from_u(q);
        }
    };
    PlanePoint::new(u, v).expect("sampled inside the domain")
}

/// A point of the Gauss natural-extension domain D_Ĝ.
pub fn gauss_domain_point<R: Rng>(rng: &mut R, den: i64) -> PlanePoint {
    use crate::natext::{silver_plus_sqrt2, three_silver};
    let silver = 1.0 + std::f64::consts::SQRT_2;
    loop {
        let sector = rng.gen_range(1..8);
        let u = direction_in_sector(rng, sector, den);
        let (vlo, vhi) = match sector {
            1 => (silver_plus_sqrt2().to_float() + 1e-3, 40.0),
            7 => (silver + 1e-3, three_silver().to_float() - 1e-3),
            _ => (silver + 1e-3, 40.0),
        };
        let target = rng.gen_range(vlo..vhi);
        let q = snap_to_qsqrt2(rng, target, den);
        let v = ProjPoint::from_u(q);
        let Ok(p) = PlanePoint::new(u, v) else { continue };
        if crate::natext::in_gauss_domain(&p) {
            return p;
        }
    }
}

/// An extended interval that may reach −∞ on the left.
pub fn interval_maybe_unbounded<R: Rng>(rng: &mut R) -> Interval {
    if rng.gen_bool(0.25) {
        let b = interval_in_sigma(rng, 12.0, 0.05).hi;
        Interval::new(Endpoint::NegInf, b)
    } else {
        interval_in_sigma(rng, 12.0, 0.05)
    }
}
