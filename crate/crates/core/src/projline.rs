//! Coordinates on RP¹: the inverse-slope coordinate u = x/y, angle
//! representatives in [0, π], sector membership for the Farey and Gauss maps,
//! and exact interval arithmetic on angle intervals.

use std::fmt;

use crate::error::Error;
use crate::qsqrt2::{clear_denominators, ActionSide, Mat2, MoebiusAction, QSqrt2};

/// A point of RP¹ in homogeneous Q(√2) coordinates (x : y), not both zero.
/// u = x/y is the inverse-slope coordinate; (1 : 0) is the point at infinity.
#[derive(Clone)]
pub struct ProjPoint {
    pub x: QSqrt2,
    pub y: QSqrt2,
}

pub type SectorIndex = usize;

impl ProjPoint {
    pub fn new(x: QSqrt2, y: QSqrt2) -> Self {
        assert!(!(x.is_zero() && y.is_zero()), "(0 : 0) is not projective");
        ProjPoint { x, y }
    }

    pub fn from_u(u: QSqrt2) -> Self {
        ProjPoint { x: u, y: QSqrt2::one() }
    }

    pub fn from_int(n: i64) -> Self {
        ProjPoint::from_u(QSqrt2::from_int(n))
    }

    pub fn infinity() -> Self {
        ProjPoint { x: QSqrt2::one(), y: QSqrt2::zero() }
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    /// Canonical representative: (x/y : 1), or (1 : 0) at infinity.
    pub fn canonical(&self) -> Self {
        if self.is_infinity() {
            ProjPoint::infinity()
        } else {
            ProjPoint { x: &self.x / &self.y, y: QSqrt2::one() }
        }
    }

    pub fn u_value(&self) -> Option<QSqrt2> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.x / &self.y)
        }
    }

    /// u as a float; infinity maps to +∞.
    pub fn u_float(&self) -> f64 {
        match self.u_value() {
            Some(u) => u.to_float(),
            None => f64::INFINITY,
        }
    }

    /// Left action u ↦ (au+b)/(cu+d) in homogeneous coordinates.
    pub fn apply_left(&self, m: &Mat2) -> ProjPoint {
        let (x, y) = MoebiusAction::left(m.clone()).apply_hom(&self.x, &self.y);
        ProjPoint::new(x, y)
    }

    /// Right action x ↦ (ax+c)/(bx+d) in homogeneous coordinates.
    pub fn apply_right(&self, m: &Mat2) -> ProjPoint {
        let (x, y) = MoebiusAction::right(m.clone()).apply_hom(&self.x, &self.y);
        ProjPoint::new(x, y)
    }

    /// x ↦ −1/x, the conjugacy between inverse slopes and boundary points.
    pub fn neg_reciprocal(&self) -> ProjPoint {
        ProjPoint::new(-&self.y, self.x.clone())
    }

    /// Exact comparison of u = x/y with a finite value c.
    /// Returns the sign of (u − c); the point at infinity compares as +∞.
    pub fn cmp_u(&self, c: &QSqrt2) -> i8 {
        if self.is_infinity() {
            return 1;
        }
        let diff = &self.x - &(c * &self.y);
        let (dz, _) = clear_denominators(&diff);
        let (yz, _) = clear_denominators(&self.y);
        dz.sign() * yz.sign()
    }

    /// Exact comparison of two finite points by their u values.
    pub fn cmp_points(&self, other: &ProjPoint) -> i8 {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => 0,
            (true, false) => 1,
            (false, true) => -1,
            (false, false) => {
                let cross = &self.x * &other.y - &other.x * &self.y;
                let (cz, _) = clear_denominators(&cross);
                let (y1, _) = clear_denominators(&self.y);
                let (y2, _) = clear_denominators(&other.y);
                cz.sign() * y1.sign() * y2.sign()
            }
        }
    }

    pub fn projectively_eq(&self, other: &ProjPoint) -> bool {
        (&self.x * &other.y - &other.x * &self.y).is_zero()
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.projectively_eq(other)
    }
}
impl Eq for ProjPoint {}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.x, self.y)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else {
            write!(f, "{}", &self.x / &self.y)
        }
    }
}

impl std::str::FromStr for ProjPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(ProjPoint::infinity());
        }
        Ok(ProjPoint::from_u(t.parse()?))
    }
}

/// cot(kπ/8) for k = 0..8 as projective points:
/// [∞, 1+√2, 1, √2−1, 0, −(√2−1), −1, −(1+√2), ∞].
pub fn sector_boundaries() -> Vec<ProjPoint> {
    let mut out = Vec::with_capacity(9);
    out.push(ProjPoint::infinity());
    for k in 1..8 {
        out.push(ProjPoint::from_u(boundary_cot(k)));
    }
    out.push(ProjPoint::infinity());
    out
}

/// cot(kπ/8) for k = 1..7 as a field element.
pub fn boundary_cot(k: usize) -> QSqrt2 {
    match k {
        1 => QSqrt2::silver(),
        2 => QSqrt2::one(),
        3 => QSqrt2::from_parts(-1, 1, 1, 1),
        4 => QSqrt2::zero(),
        5 => QSqrt2::from_parts(1, 1, -1, 1),
        6 => -QSqrt2::one(),
        7 => -QSqrt2::silver(),
        _ => panic!("boundary_cot is defined for k = 1..7"),
    }
}

/// The unique i with θ(u) ∈ [iπ/8, (i+1)π/8), using the representative
/// θ ∈ [0, π). The point at infinity takes the θ = 0 lift, hence sector 0.
pub fn sector_of(u: &ProjPoint) -> SectorIndex {
    if u.is_infinity() {
        return 0;
    }
    // Sector i holds u in (cot((i+1)π/8), cot(iπ/8)].
    for i in 0..7 {
        if u.cmp_u(&boundary_cot(i + 1)) > 0 {
            return i;
        }
    }
    7
}

/// True when u equals one of the cot(kπ/8) sector boundaries (including ∞).
pub fn is_sector_boundary(u: &ProjPoint) -> bool {
    if u.is_infinity() {
        return true;
    }
    (1..8).any(|k| u.cmp_u(&boundary_cot(k)) == 0)
}

/// Angle representative θ ∈ [0, π) of a direction, in floating point.
pub fn angle_from_u(u: &ProjPoint) -> f64 {
    if u.is_infinity() {
        return 0.0;
    }
    let theta = u.u_float().atan().mul_add(-1.0, std::f64::consts::FRAC_PI_2);
    // cot θ = u with θ ∈ (0, π): θ = π/2 − atan(u).
    if theta < 0.0 {
        theta + std::f64::consts::PI
    } else {
        theta
    }
}

/// Inexact inverse of `angle_from_u`: the float direction pair
/// (cos θ, sin θ), from which u ≈ cos θ / sin θ.
pub fn u_from_angle(theta: f64) -> (f64, f64) {
    (theta.cos(), theta.sin())
}

/// Gauss-map sector data: a plain middle sector, or a parabolic sector
/// Σ_{k,n} with k ∈ {1,7} recording the jump time n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaussSector {
    Plain(SectorIndex),
    Jump { k: SectorIndex, n: u32 },
}

/// Sector data for the Gauss map on Σ̄ (θ ∈ [π/8, π]).
///
/// Exact iteration of the Farey branch; the two parabolic fixed points
/// (u = 1+√2 and the θ = π point at infinity) are rejected.
pub fn gauss_sector_of(u: &ProjPoint) -> Result<GaussSector, Error> {
    if u.is_infinity() {
        return Err(Error::ParabolicFixedPoint);
    }
    let sector = sector_of(u);
    match sector {
        0 => Err(Error::OutOfDomain),
        1 => {
            if u.cmp_u(&QSqrt2::silver()) == 0 {
                return Err(Error::ParabolicFixedPoint);
            }
            let m = crate::qsqrt2::farey_branch_matrix(1);
            let mut v = u.apply_left(&m);
            let mut n = 1u32;
            while !v.is_infinity() && sector_of(&v) == 1 {
                v = v.apply_left(&m);
                n += 1;
            }
            Ok(GaussSector::Jump { k: 1, n })
        }
        7 => {
            let m = crate::qsqrt2::farey_branch_matrix(7);
            let mut v = u.apply_left(&m);
            let mut n = 1u32;
            while !v.is_infinity() && sector_of(&v) == 7 {
                v = v.apply_left(&m);
                n += 1;
            }
            Ok(GaussSector::Jump { k: 7, n })
        }
        i => Ok(GaussSector::Plain(i)),
    }
}

/// A point of the angle segment [0, π]: a projective point plus the lift
/// choice at infinity (θ = 0 versus θ = π).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnglePoint {
    Zero,
    Interior(ProjPoint),
    Pi,
}

impl AnglePoint {
    pub fn from_proj(p: &ProjPoint, end_sector: usize) -> Self {
        if p.is_infinity() {
            if end_sector == 0 {
                AnglePoint::Zero
            } else {
                AnglePoint::Pi
            }
        } else {
            AnglePoint::Interior(p.clone())
        }
    }

    pub fn theta_float(&self) -> f64 {
        match self {
            AnglePoint::Zero => 0.0,
            AnglePoint::Pi => std::f64::consts::PI,
            AnglePoint::Interior(p) => angle_from_u(p),
        }
    }

    /// Exact total order by the angle θ ∈ [0, π] (cot is decreasing).
    pub fn cmp_angle(&self, other: &AnglePoint) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        use AnglePoint::*;
        match (self, other) {
            (Zero, Zero) | (Pi, Pi) => Equal,
            (Zero, _) | (_, Pi) => Less,
            (_, Zero) | (Pi, _) => Greater,
            (Interior(p), Interior(q)) => match p.cmp_points(q) {
                1 => Less,
                -1 => Greater,
                _ => Equal,
            },
        }
    }
}

/// A closed angle interval [lo, hi] ⊆ [0, π] with exact endpoints.
#[derive(Clone, Debug)]
pub struct AngleInterval {
    pub lo: AnglePoint,
    pub hi: AnglePoint,
}

impl AngleInterval {
    pub fn new(a: AnglePoint, b: AnglePoint) -> Self {
        if a.cmp_angle(&b) == std::cmp::Ordering::Greater {
            AngleInterval { lo: b, hi: a }
        } else {
            AngleInterval { lo: a, hi: b }
        }
    }

    pub fn full() -> Self {
        AngleInterval { lo: AnglePoint::Zero, hi: AnglePoint::Pi }
    }

    /// The closed sector Σ̄_i.
    pub fn sector(i: usize) -> Self {
        let lo = if i == 0 {
            AnglePoint::Zero
        } else {
            AnglePoint::Interior(ProjPoint::from_u(boundary_cot(i)))
        };
        let hi = if i == 7 {
            AnglePoint::Pi
        } else {
            AnglePoint::Interior(ProjPoint::from_u(boundary_cot(i + 1)))
        };
        AngleInterval { lo, hi }
    }

    pub fn contains(&self, p: &AnglePoint) -> bool {
        use std::cmp::Ordering::Greater;
        self.lo.cmp_angle(p) != Greater && p.cmp_angle(&self.hi) != Greater
    }

    pub fn contains_interval(&self, other: &AngleInterval) -> bool {
        self.contains(&other.lo) && self.contains(&other.hi)
    }

    pub fn width_float(&self) -> f64 {
        (self.hi.theta_float() - self.lo.theta_float()).max(0.0)
    }

    /// Image under the inverse Farey branch F_i⁻¹ = ν_i⁻¹γ, which maps
    /// [0, π] homeomorphically onto Σ̄_i. An endpoint landing at the
    /// projective infinity takes the lift dictated by the target sector.
    pub fn apply_inverse_branch(&self, i: usize) -> AngleInterval {
        // The full circle has both lifts of infinity as its endpoints; its
        // branch image is the whole branch domain.
        if self.lo == AnglePoint::Zero && self.hi == AnglePoint::Pi {
            return AngleInterval::sector(i);
        }
        let m = crate::qsqrt2::nu(i)
            .inverse()
            .expect("nu invertible")
            .mul(&crate::qsqrt2::gamma());
        let map = |p: &AnglePoint| -> AnglePoint {
            let src = match p {
                AnglePoint::Zero | AnglePoint::Pi => ProjPoint::infinity(),
                AnglePoint::Interior(q) => q.clone(),
            };
            let img = src.apply_left(&m);
            AnglePoint::from_proj(&img, i)
        };
        AngleInterval::new(map(&self.lo), map(&self.hi))
    }

    /// Endpoints as a pair of projective points (lifts forgotten).
    pub fn endpoints_proj(&self) -> (ProjPoint, ProjPoint) {
        let to_proj = |p: &AnglePoint| match p {
            AnglePoint::Zero | AnglePoint::Pi => ProjPoint::infinity(),
            AnglePoint::Interior(q) => q.clone(),
        };
        (to_proj(&self.lo), to_proj(&self.hi))
    }
}

/// Side of the Möbius action used by the boundary coordinate change.
pub fn boundary_action(m: &Mat2) -> MoebiusAction {
    MoebiusAction { matrix: m.clone(), side: ActionSide::RightOnRows }
}
