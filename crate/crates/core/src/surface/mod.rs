//! The octagon translation surface S_O: geometry, trajectory tracing,
//! cutting-sequence generation, and the affine automorphisms used by
//! renormalization.

mod automorphism;
mod trace;

pub use automorphism::{
    affine_octagon_sides, apply_isometry, code_against_segments, derived_trajectory,
    normal_form_trajectory, psi_gamma, psi_sigma, reduce_to_octagon, renormalize_trajectory,
    LabeledSegment, RenormalizedTrajectory,
};
pub use trace::{cutting_sequence, trace, Crossing, TraceResult};

use once_cell::sync::Lazy;

use crate::error::Error;
use crate::projline::ProjPoint;
use crate::qsqrt2::{Mat2, QSqrt2};
use crate::symbolic::Letter;

/// Vertices of the regular octagon with side length 2, counterclockwise
/// from (1+√2, 1). All coordinates lie in Z[√2].
pub static VERTICES: Lazy<[(QSqrt2, QSqrt2); 8]> = Lazy::new(|| {
    let s = QSqrt2::silver();
    let one = QSqrt2::one();
    [
        (s.clone(), one.clone()),
        (one.clone(), s.clone()),
        (-&one, s.clone()),
        (-&s, one.clone()),
        (-&s, -&one),
        (-&one, -&s),
        (one.clone(), -&s),
        (s.clone(), -&one),
    ]
});

/// One side of the octagon: vertices i and i+1, its label, its outward
/// normal (integer Z[√2] pair), the supporting-line offset n·x = c, and the
/// identification translation onto the opposite side.
#[derive(Clone, Debug)]
pub struct Side {
    pub index: usize,
    pub label: Letter,
    pub normal: (QSqrt2, QSqrt2),
    pub offset: QSqrt2,
    pub translation: (QSqrt2, QSqrt2),
}

/// Side labels: A = horizontal pair (top/bottom sides), B = NE/SW diagonal
/// pair, C = vertical pair (left/right sides), D = NW/SE diagonal pair.
/// This is the unique assignment (up to the central relabeling) solving
/// label(ν_k s) = π_k(label(s)) against the permutation table.
pub fn side_label(i: usize) -> Letter {
    [
        Letter::B,
        Letter::A,
        Letter::D,
        Letter::C,
        Letter::B,
        Letter::A,
        Letter::D,
        Letter::C,
    ][i]
}

pub static SIDES: Lazy<[Side; 8]> = Lazy::new(|| {
    let one = QSqrt2::one();
    let zero = QSqrt2::zero();
    let diag = QSqrt2::from_parts(2, 1, 1, 1); // 2 + √2
    let axis = QSqrt2::silver(); // 1 + √2
    let wide = QSqrt2::from_parts(2, 1, 2, 1); // 2 + 2√2
    let normals = [
        (one.clone(), one.clone()),
        (zero.clone(), one.clone()),
        (-&one, one.clone()),
        (-&one, zero.clone()),
        (-&one, -&one),
        (zero.clone(), -&one),
        (one.clone(), -&one),
        (one.clone(), zero.clone()),
    ];
    let offsets = [
        diag.clone(),
        axis.clone(),
        diag.clone(),
        axis.clone(),
        diag.clone(),
        axis.clone(),
        diag.clone(),
        axis.clone(),
    ];
    let translations = [
        (-&diag, -&diag),
        (zero.clone(), -&wide),
        (diag.clone(), -&diag),
        (wide.clone(), zero.clone()),
        (diag.clone(), diag.clone()),
        (zero.clone(), wide.clone()),
        (-&diag, diag.clone()),
        (-&wide, zero.clone()),
    ];
    core::array::from_fn(|i| Side {
        index: i,
        label: side_label(i),
        normal: normals[i].clone(),
        offset: offsets[i].clone(),
        translation: translations[i].clone(),
    })
});

pub fn opposite_side(i: usize) -> usize {
    (i + 4) % 8
}

/// Where a point of the closed octagon sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Interior,
    /// On the open side i (not at a vertex).
    OnSide(usize),
    /// At a vertex; all eight vertices represent the single cone point.
    Singular,
}

/// A point of the surface, represented inside the closed octagon.
#[derive(Clone, Debug)]
pub struct SurfacePoint {
    pub x: QSqrt2,
    pub y: QSqrt2,
    pub location: PointLocation,
}

impl SurfacePoint {
    /// Classifies (x, y) against the eight supporting lines exactly.
    pub fn new(x: QSqrt2, y: QSqrt2) -> Result<Self, Error> {
        let mut on: Vec<usize> = Vec::new();
        for side in SIDES.iter() {
            let v = &(&side.normal.0 * &x) + &(&side.normal.1 * &y);
            match (&v - &side.offset).sign() {
                1 => return Err(Error::OutsideOctagon),
                0 => on.push(side.index),
                _ => {}
            }
        }
        let location = match on.len() {
            0 => PointLocation::Interior,
            1 => PointLocation::OnSide(on[0]),
            _ => PointLocation::Singular,
        };
        Ok(SurfacePoint { x, y, location })
    }

    pub fn origin() -> Self {
        SurfacePoint::new(QSqrt2::zero(), QSqrt2::zero()).expect("origin is interior")
    }

    pub fn is_singular(&self) -> bool {
        self.location == PointLocation::Singular
    }

    /// Equality as points of the surface: boundary representatives are
    /// identified with their opposite-side translates, vertices with each
    /// other.
    pub fn same_surface_point(&self, other: &SurfacePoint) -> bool {
        match (&self.location, &other.location) {
            (PointLocation::Singular, PointLocation::Singular) => true,
            (PointLocation::Singular, _) | (_, PointLocation::Singular) => false,
            (PointLocation::Interior, _) | (_, PointLocation::Interior) => {
                self.x == other.x && self.y == other.y
            }
            (PointLocation::OnSide(i), PointLocation::OnSide(j)) => {
                if self.x == other.x && self.y == other.y {
                    return true;
                }
                if *j == opposite_side(*i) {
                    let t = &SIDES[*i].translation;
                    &self.x + &t.0 == other.x && &self.y + &t.1 == other.y
                } else {
                    false
                }
            }
        }
    }

    pub fn to_floats(&self) -> (f64, f64) {
        (self.x.to_float(), self.y.to_float())
    }
}

/// A linear trajectory: a start point on the surface plus an exact,
/// nonzero velocity vector. Directions are projective for sector purposes;
/// the stored vector fixes the forward orientation for tracing.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub start: SurfacePoint,
    pub vx: QSqrt2,
    pub vy: QSqrt2,
}

impl Trajectory {
    pub fn new(start: SurfacePoint, vx: QSqrt2, vy: QSqrt2) -> Result<Self, Error> {
        if vx.is_zero() && vy.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(Trajectory { start, vx, vy })
    }

    /// Trajectory from a start point and inverse slope u = cot θ, traced in
    /// the upper half plane (velocity (u, 1), or (1, 0) at infinity).
    pub fn from_u(start: SurfacePoint, u: &ProjPoint) -> Result<Self, Error> {
        let (vx, vy) = if u.is_infinity() {
            (QSqrt2::one(), QSqrt2::zero())
        } else {
            (u.u_value().expect("finite"), QSqrt2::one())
        };
        Trajectory::new(start, vx, vy)
    }

    pub fn direction_proj(&self) -> ProjPoint {
        ProjPoint::new(self.vx.clone(), self.vy.clone())
    }

    /// The sector s(τ) of the trajectory direction.
    pub fn sector(&self) -> usize {
        crate::projline::sector_of(&self.direction_proj())
    }

    /// Postcompose with a linear map of the plane (the octagon must be
    /// invariant for the result to be a trajectory of S_O).
    pub fn map_linear(&self, m: &Mat2) -> Result<Trajectory, Error> {
        let (x, y) = m.apply_vec(&self.start.x, &self.start.y);
        let (vx, vy) = m.apply_vec(&self.vx, &self.vy);
        Ok(Trajectory { start: SurfacePoint::new(x, y)?, vx, vy })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsqrt2::nu;
    use crate::symbolic::pi;

    #[test]
    fn octagon_is_regular_with_side_two() {
        for i in 0..8 {
            let (ax, ay) = VERTICES[i].clone();
            let (bx, by) = VERTICES[(i + 1) % 8].clone();
            let len2 = &(&ax - &bx) * &(&ax - &bx) + &(&ay - &by) * &(&ay - &by);
            assert_eq!(len2, QSqrt2::from_int(4), "side {}", i);
        }
    }

    #[test]
    fn sides_are_supported_by_their_lines() {
        for side in SIDES.iter() {
            for v in [&VERTICES[side.index], &VERTICES[(side.index + 1) % 8]] {
                let dot = &(&side.normal.0 * &v.0) + &(&side.normal.1 * &v.1);
                assert_eq!(dot, side.offset, "side {}", side.index);
            }
        }
    }

    #[test]
    fn opposite_sides_are_identified_by_their_translation() {
        for side in SIDES.iter() {
            let opp = opposite_side(side.index);
            let (ax, ay) = VERTICES[side.index].clone();
            let moved = (&ax + &side.translation.0, &ay + &side.translation.1);
            // The translated endpoint lies on the opposite side's line.
            let line = &SIDES[opp];
            let dot = &(&line.normal.0 * &moved.0) + &(&line.normal.1 * &moved.1);
            assert_eq!(dot, line.offset, "side {} -> {}", side.index, opp);
            // Labels agree on opposite pairs; normals are opposite.
            assert_eq!(side.label, line.label);
            assert_eq!(-&side.normal.0, line.normal.0);
            assert_eq!(-&side.normal.1, line.normal.1);
        }
    }

    #[test]
    fn labeling_satisfies_the_permutation_constraint() {
        // label(ν_k s) = π_k(label(s)) for every k and side: apply ν_k to a
        // side's midpoint and find which side contains the image.
        for k in 0..8 {
            let m = nu(k);
            for side in SIDES.iter() {
                let (ax, ay) = VERTICES[side.index].clone();
                let (bx, by) = VERTICES[(side.index + 1) % 8].clone();
                let half = QSqrt2::rational(1, 2);
                let mid = (&(&ax + &bx) * &half, &(&ay + &by) * &half);
                let (ix, iy) = m.apply_vec(&mid.0, &mid.1);
                let image = SurfacePoint::new(ix, iy).expect("octagon is ν-invariant");
                let PointLocation::OnSide(j) = image.location else {
                    panic!("midpoint image should stay on the boundary");
                };
                assert_eq!(
                    SIDES[j].label,
                    pi(k).apply(side.label),
                    "k={} side={}",
                    k,
                    side.index
                );
            }
        }
    }

    #[test]
    fn surface_point_classification() {
        assert_eq!(SurfacePoint::origin().location, PointLocation::Interior);
        let on_top = SurfacePoint::new(QSqrt2::zero(), QSqrt2::silver()).unwrap();
        assert_eq!(on_top.location, PointLocation::OnSide(1));
        let vertex = SurfacePoint::new(QSqrt2::one(), QSqrt2::silver()).unwrap();
        assert_eq!(vertex.location, PointLocation::Singular);
        assert!(SurfacePoint::new(QSqrt2::from_int(3), QSqrt2::zero()).is_err());
    }

    #[test]
    fn boundary_identification_equality() {
        let top = SurfacePoint::new(QSqrt2::rational(1, 3), QSqrt2::silver()).unwrap();
        let bottom = SurfacePoint::new(QSqrt2::rational(1, 3), -QSqrt2::silver()).unwrap();
        assert!(top.same_surface_point(&bottom));
        assert!(bottom.same_surface_point(&top));
        let other = SurfacePoint::new(QSqrt2::rational(1, 2), -QSqrt2::silver()).unwrap();
        assert!(!top.same_surface_point(&other));
    }
}
