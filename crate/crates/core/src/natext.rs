//! Natural extensions F̂ and Ĝ on two-coordinate domains, the two-sided
//! symbolic coding, and the invariant measures with closed-form evaluation.
//! Measure values are logarithms of exact Q(√2) ratios evaluated once in
//! double precision; quadrature appears only as a test oracle.

use crate::cfmaps::{backward_expand, cf_expand};
use crate::error::Error;
use crate::projline::{boundary_cot, gauss_sector_of, sector_of, GaussSector, ProjPoint};
use crate::qsqrt2::{farey_branch_matrix, gamma, jmap, nu, QSqrt2};

/// 1 + 2√2 = cot(γ(2π/8)), the lower v-endpoint of the D₁ fiber.
pub fn silver_plus_sqrt2() -> QSqrt2 {
    QSqrt2::from_parts(1, 1, 2, 1)
}

/// 3 + 3√2 = γ[cot(7π/8)], the upper v-endpoint of the D₇ fiber.
pub fn three_silver() -> QSqrt2 {
    QSqrt2::from_parts(3, 1, 3, 1)
}

/// An endpoint of an interval of extended inverse-slope values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    Finite(QSqrt2),
    PosInf,
}

impl Endpoint {
    pub fn cmp_ext(&self, other: &Endpoint) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        use Endpoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Equal,
            (NegInf, _) | (_, PosInf) => Less,
            (_, NegInf) | (PosInf, _) => Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }

    pub fn to_float(&self) -> f64 {
        match self {
            Endpoint::NegInf => f64::NEG_INFINITY,
            Endpoint::PosInf => f64::INFINITY,
            Endpoint::Finite(q) => q.to_float(),
        }
    }

    fn to_proj(&self) -> ProjPoint {
        match self {
            Endpoint::Finite(q) => ProjPoint::from_u(q.clone()),
            _ => ProjPoint::infinity(),
        }
    }
}

/// A closed interval of extended reals in the u coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

impl Interval {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Self {
        assert!(
            lo.cmp_ext(&hi) != std::cmp::Ordering::Greater,
            "interval endpoints out of order"
        );
        Interval { lo, hi }
    }

    pub fn finite(a: QSqrt2, b: QSqrt2) -> Self {
        if a <= b {
            Interval { lo: Endpoint::Finite(a), hi: Endpoint::Finite(b) }
        } else {
            Interval { lo: Endpoint::Finite(b), hi: Endpoint::Finite(a) }
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        use std::cmp::Ordering::*;
        let lo = if self.lo.cmp_ext(&other.lo) == Greater {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi.cmp_ext(&other.hi) == Less {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        match lo.cmp_ext(&hi) {
            Less => Some(Interval { lo, hi }),
            _ => None,
        }
    }

    /// The whole Σ̄ = [−∞, 1+√2].
    pub fn sigma_bar() -> Self {
        Interval::new(Endpoint::NegInf, Endpoint::Finite(QSqrt2::silver()))
    }

    /// The whole Σ̄₀ = [1+√2, +∞].
    pub fn sigma0_bar() -> Self {
        Interval::new(Endpoint::Finite(QSqrt2::silver()), Endpoint::PosInf)
    }
}

/// A u×v rectangle with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub u: Interval,
    pub v: Interval,
}

/// A point (u, v) of the natural-extension domain Σ̄ × Σ̄₀. The projective
/// infinity is read as θ = π in the u slot and θ = 0 in the v slot.
#[derive(Clone, Debug)]
pub struct PlanePoint {
    pub u: ProjPoint,
    pub v: ProjPoint,
}

impl PlanePoint {
    pub fn new(u: ProjPoint, v: ProjPoint) -> Result<Self, Error> {
        let u_ok = u.is_infinity() || u.cmp_u(&QSqrt2::silver()) <= 0;
        let v_ok = crate::cfmaps::in_sigma0_closure(&v);
        if u_ok && v_ok {
            Ok(PlanePoint { u, v })
        } else {
            Err(Error::OutOfDomain)
        }
    }

    /// The Farey branch acting at this point: determined by u alone.
    pub fn branch(&self) -> usize {
        if self.u.is_infinity() {
            7
        } else {
            sector_of(&self.u)
        }
    }
}

/// F̂(u, v) = (γν_i[u], γν_i[v]) for u ∈ Σ_i; a bijection of Σ̄ × Σ̄₀.
pub fn fhat(p: &PlanePoint) -> Result<PlanePoint, Error> {
    let i = p.branch();
    if i == 0 {
        return Err(Error::OutOfDomain);
    }
    let m = farey_branch_matrix(i);
    PlanePoint::new(p.u.apply_left(&m), p.v.apply_left(&m))
}

/// Inverse of F̂: the branch is read off from which set Σ_i′ = γν_iΣ̄₀
/// contains the v coordinate.
pub fn fhat_inverse(p: &PlanePoint) -> Result<PlanePoint, Error> {
    let t = p.v.apply_left(&gamma());
    let s = if t.is_infinity() { 7 } else { sector_of(&t) };
    if s == 0 {
        return Err(Error::OutOfDomain);
    }
    let i = jmap(s);
    let m_inv = nu(i).inverse().expect("nu invertible").mul(&gamma());
    PlanePoint::new(p.u.apply_left(&m_inv), p.v.apply_left(&m_inv))
}

/// The v-band γΣ̄_{j(i)} = image of Σ̄₀ under γν_i, with exact endpoints.
/// The seven bands tile Σ̄₀.
pub fn fhat_image_vband(i: usize) -> Interval {
    let j = jmap(i);
    // γ applied to the endpoints of Σ̄_j = [cot((j+1)π/8), cot(jπ/8)].
    let g = gamma();
    let lo_pt = if j == 7 {
        ProjPoint::infinity()
    } else {
        ProjPoint::from_u(boundary_cot(j + 1))
    };
    let hi_pt = ProjPoint::from_u(boundary_cot(j));
    let map = |p: &ProjPoint| -> Endpoint {
        let img = p.apply_left(&g);
        if img.is_infinity() {
            Endpoint::PosInf
        } else {
            Endpoint::Finite(img.u_value().expect("finite"))
        }
    };
    let (a, b) = (map(&lo_pt), map(&hi_pt));
    if a.cmp_ext(&b) == std::cmp::Ordering::Greater {
        Interval::new(b, a)
    } else {
        Interval::new(a, b)
    }
}

/// Two-sided coding of a natural-extension point: forward entries from the
/// expansion of u, backward entries from the backward expansion of v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSidedCode {
    /// s₀, s₁, ..., s_{m−1}
    pub forward: Vec<usize>,
    /// s_{−1}, s_{−2}, ..., s_{−m}
    pub backward: Vec<usize>,
}

pub fn two_sided_code(p: &PlanePoint, m: usize) -> Result<TwoSidedCode, Error> {
    let forward = cf_expand(&p.u, m).entries;
    let backward = backward_expand(&p.v, m)?;
    Ok(TwoSidedCode { forward, backward })
}

// ---------------------------------------------------------------------------
// Invariant measures.

/// The exact ratio whose logarithm is μ̂([a,b]×[c,d]) = ∬ du dv/(u−v)², or
/// None when the measure is infinite (a = −∞ and d = +∞ together).
pub fn mu_hat_ratio(rect: &Rect) -> Result<Option<QSqrt2>, Error> {
    use Endpoint::*;
    // The closure must avoid the diagonal: sup(u) < inf(v).
    let touches = match (&rect.u.hi, &rect.v.lo) {
        (Finite(b), Finite(c)) => b >= c,
        (PosInf, _) | (_, NegInf) => true,
        _ => false,
    };
    if touches {
        return Err(Error::DiagonalTouch);
    }
    if rect.u.is_degenerate() || rect.v.is_degenerate() {
        return Ok(Some(QSqrt2::one()));
    }
    let (a, b, c, d) = (&rect.u.lo, &rect.u.hi, &rect.v.lo, &rect.v.hi);
    let (Finite(b), Finite(c)) = (b, c) else {
        return Err(Error::OutOfDomain);
    };
    match (a, d) {
        (Finite(a), Finite(d)) => {
            // log( |b−d||a−c| / (|a−d||b−c|) )
            let num = &(b - d).abs() * &(a - c).abs();
            let den = &(a - d).abs() * &(b - c).abs();
            Ok(Some(&num / &den))
        }
        (Finite(a), PosInf) => Ok(Some(&(a - c).abs() / &(b - c).abs())),
        (NegInf, Finite(d)) => Ok(Some(&(b - d).abs() / &(b - c).abs())),
        (NegInf, PosInf) => Ok(None),
        _ => Err(Error::OutOfDomain),
    }
}

/// μ̂ of a rectangle (natural log of the exact ratio; +∞ when infinite).
pub fn mu_hat(rect: &Rect) -> Result<f64, Error> {
    Ok(match mu_hat_ratio(rect)? {
        Some(ratio) => ratio.to_float().ln(),
        None => f64::INFINITY,
    })
}

fn interval_from_endpoints(a: Endpoint, b: Endpoint) -> Interval {
    if a.cmp_ext(&b) == std::cmp::Ordering::Greater {
        Interval::new(b, a)
    } else {
        Interval::new(a, b)
    }
}

/// Preimage F̂⁻¹(R) as exact rectangles, one per branch meeting R.
pub fn fhat_preimage_rects(rect: &Rect) -> Vec<Rect> {
    let mut out = Vec::new();
    for i in 1..=7 {
        let band = fhat_image_vband(i);
        let Some(v_part) = rect.v.intersect(&band) else { continue };
        if v_part.is_degenerate() {
            continue;
        }
        let m_inv = nu(i).inverse().expect("nu invertible").mul(&gamma());
        let map_interval = |iv: &Interval, inf_is_neg: bool| -> Interval {
            let to_end = |p: &ProjPoint| -> Endpoint {
                let img = p.apply_left(&m_inv);
                if img.is_infinity() {
                    if inf_is_neg {
                        Endpoint::NegInf
                    } else {
                        Endpoint::PosInf
                    }
                } else {
                    Endpoint::Finite(img.u_value().expect("finite"))
                }
            };
            interval_from_endpoints(to_end(&iv.lo.to_proj()), to_end(&iv.hi.to_proj()))
        };
        // u-side lands in Σ̄_i (projective infinity read as −∞, possible
        // only for i = 7); v-side lands in Σ̄₀ (infinity read as +∞).
        out.push(Rect {
            u: map_interval(&rect.u, i == 7),
            v: map_interval(&v_part, false),
        });
    }
    out
}

/// μ̂(F̂⁻¹(R)) via the exact branch rectangles.
pub fn mu_hat_preimage(rect: &Rect) -> Result<f64, Error> {
    let mut total = 0.0;
    for r in fhat_preimage_rects(rect) {
        total += mu_hat(&r)?;
    }
    Ok(total)
}

/// The exact ratio whose log is μ([a,b]) = ∫ du/(1+√2−u), or None when
/// infinite (a = −∞ or b = 1+√2).
pub fn mu_farey_ratio(interval: &Interval) -> Result<Option<QSqrt2>, Error> {
    use Endpoint::*;
    let silver = QSqrt2::silver();
    let hi_ok = match &interval.hi {
        Finite(b) => *b <= silver,
        PosInf => false,
        NegInf => true,
    };
    if !hi_ok {
        return Err(Error::OutOfDomain);
    }
    match (&interval.lo, &interval.hi) {
        (Finite(a), Finite(b)) => {
            if *a == *b {
                return Ok(Some(QSqrt2::one()));
            }
            if *b == silver {
                return Ok(None);
            }
            Ok(Some(&(&silver - a) / &(&silver - b)))
        }
        (NegInf, _) => Ok(None),
        _ => Err(Error::OutOfDomain),
    }
}

/// μ([a, b]) = log((1+√2−a)/(1+√2−b)); infinite mass reported as +∞.
pub fn mu_farey(interval: &Interval) -> Result<f64, Error> {
    Ok(match mu_farey_ratio(interval)? {
        Some(r) => r.to_float().ln(),
        None => f64::INFINITY,
    })
}

/// The seven exact branch preimages F_i⁻¹([a,b]) ⊂ Σ̄_i, i = 1..7.
pub fn farey_preimage_intervals(interval: &Interval) -> Vec<Interval> {
    (1..=7)
        .map(|i| {
            let m_inv = nu(i).inverse().expect("nu invertible").mul(&gamma());
            let map = |e: &Endpoint| -> Endpoint {
                let img = e.to_proj().apply_left(&m_inv);
                if img.is_infinity() {
                    if i == 7 {
                        Endpoint::NegInf
                    } else {
                        Endpoint::PosInf
                    }
                } else {
                    Endpoint::Finite(img.u_value().expect("finite"))
                }
            };
            interval_from_endpoints(map(&interval.lo), map(&interval.hi))
        })
        .collect()
}

pub fn mu_farey_preimage(interval: &Interval) -> Result<f64, Error> {
    let mut total = 0.0;
    for piece in farey_preimage_intervals(interval) {
        total += mu_farey(&piece)?;
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// The Gauss natural extension and its measure.

/// The domain D_Ĝ = D₁ ∪ D_* ∪ D₇ of the natural extension of the Gauss
/// map, in u/v coordinates.
#[derive(Clone, Debug)]
pub struct GaussDomain {
    pub d1: Rect,
    pub dstar: Rect,
    pub d7: Rect,
}

pub fn gauss_domain() -> GaussDomain {
    let silver = QSqrt2::silver();
    GaussDomain {
        // D₁ = Σ₁ × [1+2√2, ∞]
        d1: Rect {
            u: Interval::finite(QSqrt2::one(), silver.clone()),
            v: Interval::new(Endpoint::Finite(silver_plus_sqrt2()), Endpoint::PosInf),
        },
        // D_* = (Σ₂ ∪ … ∪ Σ₆) × [1+√2, ∞]
        dstar: Rect {
            u: Interval::finite(-&silver, QSqrt2::one()),
            v: Interval::sigma0_bar(),
        },
        // D₇ = Σ₇ × [1+√2, 3+3√2]
        d7: Rect {
            u: Interval::new(Endpoint::NegInf, Endpoint::Finite(-&silver)),
            v: Interval::finite(silver.clone(), three_silver()),
        },
    }
}

/// The dual decomposition D₁′ ∪ D_*′ ∪ D₇′ of the same set, stacked in
/// disjoint v-bands (the Ĝ-images of D₁, D_*, D₇).
pub fn gauss_domain_dual() -> GaussDomain {
    let silver = QSqrt2::silver();
    GaussDomain {
        // D₁′ = [−∞, 1] × [1+√2, 1+2√2]
        d1: Rect {
            u: Interval::new(Endpoint::NegInf, Endpoint::Finite(QSqrt2::one())),
            v: Interval::finite(silver.clone(), silver_plus_sqrt2()),
        },
        // D_*′ = Σ̄ × [1+2√2, 3+3√2]
        dstar: Rect {
            u: Interval::sigma_bar(),
            v: Interval::finite(silver_plus_sqrt2(), three_silver()),
        },
        // D₇′ = [−(1+√2), 1+√2] × [3+3√2, ∞]
        d7: Rect {
            u: Interval::finite(-&silver, silver.clone()),
            v: Interval::new(Endpoint::Finite(three_silver()), Endpoint::PosInf),
        },
    }
}

fn point_in_rect(p: &PlanePoint, r: &Rect) -> bool {
    let coord_in = |pt: &ProjPoint, iv: &Interval, inf_is_neg: bool| -> bool {
        if pt.is_infinity() {
            return if inf_is_neg {
                iv.lo == Endpoint::NegInf
            } else {
                iv.hi == Endpoint::PosInf
            };
        }
        let lo_ok = match &iv.lo {
            Endpoint::NegInf => true,
            Endpoint::Finite(a) => pt.cmp_u(a) >= 0,
            Endpoint::PosInf => false,
        };
        let hi_ok = match &iv.hi {
            Endpoint::PosInf => true,
            Endpoint::Finite(b) => pt.cmp_u(b) <= 0,
            Endpoint::NegInf => false,
        };
        lo_ok && hi_ok
    };
    coord_in(&p.u, &r.u, true) && coord_in(&p.v, &r.v, false)
}

pub fn in_gauss_domain(p: &PlanePoint) -> bool {
    let d = gauss_domain();
    point_in_rect(p, &d.d1) || point_in_rect(p, &d.dstar) || point_in_rect(p, &d.d7)
}

/// Ĝ(u, v): the same (γν_k)ⁿ acts on both coordinates, with the branch
/// data (k, n) read off from u alone.
pub fn ghat(p: &PlanePoint) -> Result<(PlanePoint, GaussSector), Error> {
    if !in_gauss_domain(p) {
        return Err(Error::OutOfDomain);
    }
    let gs = gauss_sector_of(&p.u)?;
    let (k, n) = match &gs {
        GaussSector::Plain(i) => (*i, 1u32),
        GaussSector::Jump { k, n } => (*k, *n),
    };
    let m = farey_branch_matrix(k);
    let mut u = p.u.clone();
    let mut v = p.v.clone();
    for _ in 0..n {
        u = u.apply_left(&m);
        v = v.apply_left(&m);
    }
    Ok((PlanePoint { u, v }, gs))
}

/// Image rectangle Ĝ(D_{k,n}) (or Ĝ(Σ_i × Σ̄₀) for a middle branch i):
/// exact endpoints, used by the tiling checks.
pub fn ghat_branch_image(k: usize, n: u32) -> Rect {
    let m = farey_branch_matrix(k);
    let apply_n = |p: &ProjPoint, times: u32| -> ProjPoint {
        let mut q = p.clone();
        for _ in 0..times {
            q = q.apply_left(&m);
        }
        q
    };
    match k {
        1 => {
            // u-image [−∞, 1]; v-band (γν₁)ⁿ of [1+2√2, ∞].
            let lo = apply_n(&ProjPoint::from_u(silver_plus_sqrt2()), n);
            let hi = apply_n(&ProjPoint::infinity(), n);
            Rect {
                u: Interval::new(Endpoint::NegInf, Endpoint::Finite(QSqrt2::one())),
                v: Interval::finite(
                    lo.u_value().expect("finite after one step"),
                    hi.u_value().expect("finite after one step"),
                ),
            }
        }
        7 => {
            // u-image [−(1+√2), 1+√2]; v-band σⁿ of [1+√2, 3+3√2].
            let lo = apply_n(&ProjPoint::from_u(QSqrt2::silver()), n);
            let hi = apply_n(&ProjPoint::from_u(three_silver()), n);
            Rect {
                u: Interval::finite(-QSqrt2::silver(), QSqrt2::silver()),
                v: Interval::finite(
                    lo.u_value().expect("finite"),
                    hi.u_value().expect("finite"),
                ),
            }
        }
        i => {
            // Middle branch: u-image Σ̄, v-band γΣ̄_{j(i)}.
            Rect { u: Interval::sigma_bar(), v: fhat_image_vband(i) }
        }
    }
}

/// Piecewise-exact density of the Gauss invariant measure at u, as the
/// fiber integral of 1/(u−v)² over the v-section of D_Ĝ:
/// 1/(1+2√2−u) on Σ₁, 1/(1+√2−u) on Σ₂..Σ₆,
/// 1/(1+√2−u) − 1/(3+3√2−u) on Σ₇.
pub fn gauss_density_exact(u: &QSqrt2) -> Result<QSqrt2, Error> {
    let silver = QSqrt2::silver();
    if *u > silver {
        return Err(Error::OutOfDomain);
    }
    if *u > QSqrt2::one() {
        (&silver_plus_sqrt2() - u).inverse()
    } else if *u > -&silver {
        (&silver - u).inverse()
    } else {
        let a = (&silver - u).inverse()?;
        let b = (&three_silver() - u).inverse()?;
        Ok(&a - &b)
    }
}

pub fn gauss_density(u: f64) -> f64 {
    let silver = 1.0 + std::f64::consts::SQRT_2;
    if u > silver {
        return 0.0;
    }
    if u > 1.0 {
        1.0 / (1.0 + 2.0 * std::f64::consts::SQRT_2 - u)
    } else if u > -silver {
        1.0 / (silver - u)
    } else {
        1.0 / (silver - u) - 1.0 / (3.0 + 3.0 * std::f64::consts::SQRT_2 - u)
    }
}

/// Antiderivative of the Gauss density, continuous across the pieces and
/// normalized to vanish at u = −∞.
fn gauss_antiderivative(u: &Endpoint) -> f64 {
    let silver_f = QSqrt2::silver().to_float();
    let s2f = silver_plus_sqrt2().to_float();
    let t3f = three_silver().to_float();
    match u {
        Endpoint::NegInf => 0.0,
        Endpoint::PosInf => f64::NAN,
        Endpoint::Finite(q) => {
            let uf = q.to_float();
            let at_minus_silver = ((t3f + silver_f) / (silver_f + silver_f)).ln();
            let a_mid = |x: f64| -(silver_f - x).ln();
            if *q > QSqrt2::one() {
                let a_one = |x: f64| -(s2f - x).ln();
                at_minus_silver + (a_mid(1.0) - a_mid(-silver_f)) + (a_one(uf) - a_one(1.0))
            } else if *q > -QSqrt2::silver() {
                at_minus_silver + (a_mid(uf) - a_mid(-silver_f))
            } else {
                ((t3f - uf) / (silver_f - uf)).ln()
            }
        }
    }
}

/// μ_G([a, b]) in closed form (finite for every subinterval of Σ̄).
pub fn mu_gauss(interval: &Interval) -> Result<f64, Error> {
    let silver = QSqrt2::silver();
    let hi_ok = match &interval.hi {
        Endpoint::Finite(b) => *b <= silver,
        Endpoint::PosInf => false,
        Endpoint::NegInf => true,
    };
    if !hi_ok {
        return Err(Error::OutOfDomain);
    }
    Ok(gauss_antiderivative(&interval.hi) - gauss_antiderivative(&interval.lo))
}

/// Total mass of μ_G: ln(8 + 4√2) = 2 ln 2 + ln(2+√2).
pub fn gauss_total_mass() -> f64 {
    (8.0 + 4.0 * std::f64::consts::SQRT_2).ln()
}

/// μ_G(G⁻¹ I) in closed form. The five middle branches contribute exact
/// interval preimages; the two infinite parabolic branch families telescope
/// (via the Möbius invariance of dudv/(u−v)²) into single μ̂ rectangles:
///   Σ_{n≥1} μ_G((ν₁γ)ⁿ I′) = μ̂(I′ × [1+√2, 1+2√2]),  I′ = I ∩ [−∞, 1],
///   Σ_{n≥1} μ_G(σ⁻ⁿ I″) = μ̂(I″ × [3+3√2, ∞]),  I″ = I ∩ [−(1+√2), 1+√2].
pub fn mu_gauss_preimage(interval: &Interval) -> Result<f64, Error> {
    let silver = QSqrt2::silver();
    let mut total = 0.0;
    for i in 2..=6 {
        let m_inv = nu(i).inverse().expect("nu invertible").mul(&gamma());
        let map = |e: &Endpoint| -> Endpoint {
            Endpoint::Finite(
                e.to_proj()
                    .apply_left(&m_inv)
                    .u_value()
                    .expect("middle Σ̄_i is bounded"),
            )
        };
        let piece = interval_from_endpoints(map(&interval.lo), map(&interval.hi));
        total += mu_gauss(&piece)?;
    }
    let one_cap = Interval::new(Endpoint::NegInf, Endpoint::Finite(QSqrt2::one()));
    if let Some(i1) = interval.intersect(&one_cap) {
        if !i1.is_degenerate() {
            total += mu_hat(&Rect {
                u: i1,
                v: Interval::finite(silver.clone(), silver_plus_sqrt2()),
            })?;
        }
    }
    let mid_cap = Interval::finite(-&silver, silver.clone());
    if let Some(i7) = interval.intersect(&mid_cap) {
        if !i7.is_degenerate() {
            total += mu_hat(&Rect {
                u: i7,
                v: Interval::new(Endpoint::Finite(three_silver()), Endpoint::PosInf),
            })?;
        }
    }
    Ok(total)
}

/// Truncated direct branch sum for the parabolic families (partial sums of
/// the series the closed form above telescopes); cross-validation only.
pub fn mu_gauss_preimage_partial(interval: &Interval, n_max: u32) -> Result<f64, Error> {
    let silver = QSqrt2::silver();
    let mut total = 0.0;
    for i in 2..=6 {
        let m_inv = nu(i).inverse().expect("nu invertible").mul(&gamma());
        let map = |e: &Endpoint| -> Endpoint {
            Endpoint::Finite(e.to_proj().apply_left(&m_inv).u_value().expect("bounded"))
        };
        let piece = interval_from_endpoints(map(&interval.lo), map(&interval.hi));
        total += mu_gauss(&piece)?;
    }
    let pullback = |m: &crate::qsqrt2::Mat2, iv: &Interval, inf_is_neg: bool| -> Interval {
        let map = |e: &Endpoint| -> Endpoint {
            let img = e.to_proj().apply_left(m);
            if img.is_infinity() {
                if inf_is_neg {
                    Endpoint::NegInf
                } else {
                    Endpoint::PosInf
                }
            } else {
                Endpoint::Finite(img.u_value().expect("finite"))
            }
        };
        interval_from_endpoints(map(&iv.lo), map(&iv.hi))
    };
    let one_cap = Interval::new(Endpoint::NegInf, Endpoint::Finite(QSqrt2::one()));
    if let Some(i1) = interval.intersect(&one_cap) {
        let back = nu(1).mul(&gamma());
        let mut piece = i1;
        for _ in 1..=n_max {
            piece = pullback(&back, &piece, false);
            total += mu_gauss(&piece)?;
        }
    }
    let mid_cap = Interval::finite(-&silver, silver.clone());
    if let Some(i7) = interval.intersect(&mid_cap) {
        let back = nu(7).mul(&gamma());
        let mut piece = i7;
        for _ in 1..=n_max {
            piece = pullback(&back, &piece, true);
            total += mu_gauss(&piece)?;
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Floating-point orbits and histograms (statistical sanity only).

const SILVER_F: f64 = 1.0 + std::f64::consts::SQRT_2;

pub fn sector_f64(u: f64) -> usize {
    let boundaries = [
        SILVER_F,
        1.0,
        std::f64::consts::SQRT_2 - 1.0,
        0.0,
        1.0 - std::f64::consts::SQRT_2,
        -1.0,
        -SILVER_F,
    ];
    for (i, b) in boundaries.iter().enumerate() {
        if u > *b {
            return i;
        }
    }
    7
}

pub fn farey_f64(u: f64) -> f64 {
    let i = sector_f64(u);
    let [a, b, c, d] = farey_branch_matrix(i).to_floats();
    (a * u + b) / (c * u + d)
}

/// One Gauss step in floating point, with the jump time.
pub fn gauss_f64(u: f64) -> (f64, u32) {
    let i = sector_f64(u);
    let [a, b, c, d] = farey_branch_matrix(i).to_floats();
    let mut v = (a * u + b) / (c * u + d);
    let mut n = 1u32;
    if i == 1 || i == 7 {
        while sector_f64(v) == i && n < 1_000_000 {
            v = (a * v + b) / (c * v + d);
            n += 1;
        }
    }
    (v, n)
}

/// Equal-measure bin boundaries for μ_G (deciles for nbins = 10), found by
/// bisection on the closed-form cumulative measure.
pub fn gauss_equal_measure_bins(nbins: usize) -> Vec<f64> {
    let total = gauss_total_mass();
    let cdf = |u: f64| -> f64 {
        let q = float_to_qsqrt2(u);
        mu_gauss(&Interval::new(Endpoint::NegInf, Endpoint::Finite(q))).unwrap_or(0.0)
    };
    let mut edges = vec![f64::NEG_INFINITY];
    for k in 1..nbins {
        let target = total * k as f64 / nbins as f64;
        let (mut lo, mut hi) = (-1e9f64, SILVER_F);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if cdf(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        edges.push(0.5 * (lo + hi));
    }
    edges.push(SILVER_F);
    edges
}

fn float_to_qsqrt2(u: f64) -> QSqrt2 {
    // Dyadic snap: presentation-layer conversion only.
    let scaled = (u * (1u64 << 40) as f64).round();
    QSqrt2::new(
        num_rational::BigRational::new(
            num_bigint::BigInt::from(scaled as i128),
            num_bigint::BigInt::from(1u128 << 40),
        ),
        num_traits::Zero::zero(),
    )
}

#[derive(Clone, Debug)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl Histogram {
    pub fn frequencies(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.total.max(1) as f64)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitMap {
    Farey,
    Gauss,
}

/// Occupancy histogram of a floating-point orbit. For the Gauss map the
/// bins are equal-measure bins of μ_G; for the Farey map they are the
/// eight sectors (occupancy fractions).
pub fn birkhoff_histogram(
    map: OrbitMap,
    u0: f64,
    n_iters: usize,
    bins: usize,
) -> Result<Histogram, Error> {
    match map {
        OrbitMap::Gauss => {
            let edges = gauss_equal_measure_bins(bins);
            let mut counts = vec![0u64; bins];
            let mut u = u0;
            for _ in 0..n_iters {
                if !u.is_finite() || u > SILVER_F {
                    return Err(Error::ParabolicFixedPoint);
                }
                let k = edges
                    .partition_point(|e| *e <= u)
                    .saturating_sub(1)
                    .min(bins - 1);
                counts[k] += 1;
                u = gauss_f64(u).0;
            }
            Ok(Histogram { bin_edges: edges, counts, total: n_iters as u64 })
        }
        OrbitMap::Farey => {
            let mut counts = vec![0u64; 8];
            let mut u = u0;
            for _ in 0..n_iters {
                if !u.is_finite() {
                    return Err(Error::ParabolicFixedPoint);
                }
                counts[sector_f64(u)] += 1;
                u = farey_f64(u);
            }
            Ok(Histogram {
                bin_edges: (0..=8).map(|k| k as f64).collect(),
                counts,
                total: n_iters as u64,
            })
        }
    }
}

/// Composite Simpson quadrature (test-oracle quality: smooth integrands).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2) & !1usize;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let x = a + h * k as f64;
        acc += f(x) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// Quadrature value of the total Gauss mass: the independent oracle for
/// ln(8+4√2). The unbounded Σ₇ piece integrates through u = −1/s.
pub fn gauss_total_mass_quadrature(panels: usize) -> f64 {
    let s2 = 1.0 + 2.0 * std::f64::consts::SQRT_2;
    let t3 = 3.0 + 3.0 * std::f64::consts::SQRT_2;
    // One closure per smooth piece (the dispatching density jumps at the
    // piece boundaries, which would poison the endpoint weights).
    let p1 = simpson(|u: f64| 1.0 / (s2 - u), 1.0, SILVER_F, panels);
    let pm = simpson(|u: f64| 1.0 / (SILVER_F - u), -SILVER_F, 1.0, panels);
    let p7 = simpson(
        |s: f64| {
            if s == 0.0 {
                // lim_{s→0}: the integrand tends to t₃ − (1+√2) = 2+2√2.
                t3 - SILVER_F
            } else {
                (1.0 / (s * (s * SILVER_F + 1.0))) - (1.0 / (s * (s * t3 + 1.0)))
            }
        },
        0.0,
        1.0 / SILVER_F,
        panels,
    );
    p1 + pm + p7
}
