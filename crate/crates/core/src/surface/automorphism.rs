//! Affine automorphisms of S_O. Ψ_σ is realized through the two horizontal
//! cylinders of the surface (a double Dehn twist in the middle cylinder and
//! a single twist in the top/bottom one), which pins down the cut-and-paste
//! map without reference to any figure: the y-coordinate is preserved up to
//! the cylinder identifications and the sheared x-coordinate is reduced
//! inside the cylinder circumference. Ψ_γ = Ψ_σ ∘ Ψ_{ν₇}.

use num_bigint::BigInt;

use crate::error::Error;
use crate::qsqrt2::{gamma, nu, QSqrt2};
use crate::surface::{SurfacePoint, Trajectory, SIDES, VERTICES};
use crate::symbolic::{Letter, Word};

fn two_plus_sqrt2() -> QSqrt2 {
    QSqrt2::from_parts(2, 1, 1, 1)
}

fn shear_coefficient() -> QSqrt2 {
    // 2(1+√2)
    QSqrt2::from_parts(2, 1, 2, 1)
}

/// floor((value − base) / period) for period > 0, exactly. A float estimate
/// is corrected by exact comparisons.
fn floor_steps(value: &QSqrt2, base: &QSqrt2, period: &QSqrt2) -> BigInt {
    let est = ((value.to_float() - base.to_float()) / period.to_float()).floor();
    let mut k = BigInt::from(est as i64);
    loop {
        let shifted = value - &(&QSqrt2::new(k.clone().into(), num_traits::Zero::zero()) * period);
        if (&shifted - base).is_negative() {
            k -= 1;
            continue;
        }
        if (&(&shifted - base) - period).sign() >= 0 {
            k += 1;
            continue;
        }
        return k;
    }
}

fn times_int(q: &QSqrt2, k: &BigInt) -> QSqrt2 {
    q * &QSqrt2::new(num_rational::BigRational::from_integer(k.clone()), num_traits::Zero::zero())
}

/// The affine automorphism Ψ_σ applied to a point of the closed octagon.
pub fn psi_sigma(x: &QSqrt2, y: &QSqrt2) -> Result<(QSqrt2, QSqrt2), Error> {
    SurfacePoint::new(x.clone(), y.clone())?;
    let qx = x + &(&shear_coefficient() * y);
    let one = QSqrt2::one();
    let in_middle = (y - &one).sign() <= 0 && (y + &one).sign() >= 0;
    if in_middle {
        let base = -QSqrt2::silver();
        let period = QSqrt2::from_parts(2, 1, 2, 1);
        let k = floor_steps(&qx, &base, &period);
        return Ok((&qx - &times_int(&period, &k), y.clone()));
    }
    // Top/bottom cylinder, unrolled from the NW edge of the top trapezoid.
    let tps = two_plus_sqrt2();
    let (yhat, c) = if y.is_positive() {
        (y.clone(), &qx - y + &tps)
    } else {
        let yhat = y + &tps;
        (yhat.clone(), &(&qx - &yhat) + &(&tps + &tps))
    };
    let period = QSqrt2::from_parts(4, 1, 2, 1); // 4 + 2√2
    let k = floor_steps(&c, &QSqrt2::zero(), &period);
    let c_mod = &c - &times_int(&period, &k);
    let threshold = &(&tps + &tps) - &(&yhat + &yhat); // 2(2+√2) − 2ŷ
    if (&c_mod - &threshold).is_negative() {
        // Top trapezoid: x = ŷ − (2+√2) + c_mod.
        Ok((&(&yhat - &tps) + &c_mod, yhat))
    } else {
        // Bottom trapezoid: x = −ŷ + (c_mod − threshold), height ŷ − (2+√2).
        Ok((&(&c_mod - &threshold) - &yhat, &yhat - &tps))
    }
}

/// Ψ_γ = Ψ_σ ∘ Ψ_{ν₇} (γ = σν₇, and ν₇ is an isometry of the octagon).
pub fn psi_gamma(x: &QSqrt2, y: &QSqrt2) -> Result<(QSqrt2, QSqrt2), Error> {
    psi_sigma(&-x, y)
}

/// Postcompose a trajectory with the isometry ν_k.
pub fn apply_isometry(k: usize, traj: &Trajectory) -> Trajectory {
    traj.map_linear(&nu(k)).expect("the octagon is ν-invariant")
}

/// The normal form n(τ) = ν_{s(τ)} τ, whose direction lies in Σ̄₀.
pub fn normal_form_trajectory(traj: &Trajectory) -> Trajectory {
    apply_isometry(traj.sector(), traj)
}

/// The derived trajectory τ′ = Ψ_γ τ, defined when s(τ) = 0.
pub fn derived_trajectory(traj: &Trajectory) -> Result<Trajectory, Error> {
    let s = traj.sector();
    if s != 0 {
        return Err(Error::WrongSector { expected: 0, found: s });
    }
    let (vx, vy) = gamma().apply_vec(&traj.vx, &traj.vy);
    let (px, py) = psi_gamma(&traj.start.x, &traj.start.y)?;
    Trajectory::new(SurfacePoint::new(px, py)?, vx, vy)
}

#[derive(Clone, Debug)]
pub struct RenormalizedTrajectory {
    pub trajectory: Trajectory,
    pub sectors: Vec<usize>,
}

/// τ_{k+1} = n(τ_k)′: alternately normalize into Σ₀ and derive. Returns
/// τ_k and the sector sequence s₀ .. s_{k−1}.
pub fn renormalize_trajectory(traj: &Trajectory, k: usize) -> Result<RenormalizedTrajectory, Error> {
    let mut cur = traj.clone();
    let mut sectors = Vec::with_capacity(k);
    for _ in 0..k {
        let s = cur.sector();
        sectors.push(s);
        cur = derived_trajectory(&apply_isometry(s, &cur))?;
    }
    Ok(RenormalizedTrajectory { trajectory: cur, sectors })
}

/// Bounded breadth-first search over identification-translation sums: find
/// the translate of p inside the closed octagon, stopping at the first
/// depth level (≤ 4) that produces one. The translation group is dense in
/// the plane, so deeper levels would re-hit the octagon with inequivalent
/// points; candidates at the hitting level itself are still checked for
/// uniqueness up to the surface identifications.
pub fn reduce_to_octagon(x: &QSqrt2, y: &QSqrt2) -> Result<SurfacePoint, Error> {
    const DEPTH: usize = 4;
    let gens: Vec<(QSqrt2, QSqrt2)> = SIDES.iter().map(|s| s.translation.clone()).collect();
    let mut frontier = vec![(x.clone(), y.clone())];
    let mut seen: Vec<(QSqrt2, QSqrt2)> = frontier.clone();
    let collect = |level: &[(QSqrt2, QSqrt2)]| -> Vec<SurfacePoint> {
        let mut out: Vec<SurfacePoint> = Vec::new();
        for (px, py) in level {
            if let Ok(sp) = SurfacePoint::new(px.clone(), py.clone()) {
                if !out.iter().any(|c| c.same_surface_point(&sp)) {
                    out.push(sp);
                }
            }
        }
        out
    };
    for _ in 0..=DEPTH {
        let mut candidates = collect(&frontier);
        match candidates.len() {
            0 => {}
            1 => return Ok(candidates.pop().unwrap()),
            _ => return Err(Error::AmbiguousReduction),
        }
        let mut next = Vec::new();
        for (px, py) in &frontier {
            for (tx, ty) in &gens {
                let q = (px + tx, py + ty);
                if seen.iter().any(|(sx, sy)| *sx == q.0 && *sy == q.1) {
                    continue;
                }
                seen.push(q.clone());
                next.push(q);
            }
        }
        frontier = next;
    }
    Err(Error::NotReducible { depth: DEPTH })
}

/// A labeled straight segment inside the closed octagon: one reduced piece
/// of the image of an octagon side under an affine automorphism. `t0..t1`
/// is the parameter window within the original side.
#[derive(Clone, Debug)]
pub struct LabeledSegment {
    pub ax: QSqrt2,
    pub ay: QSqrt2,
    pub bx: QSqrt2,
    pub by: QSqrt2,
    pub label: Letter,
    pub source_side: usize,
    pub t0: QSqrt2,
    pub t1: QSqrt2,
}

impl LabeledSegment {
    fn is_degenerate(&self) -> bool {
        self.t0 == self.t1
    }

    fn point_at(&self, t: &QSqrt2) -> (QSqrt2, QSqrt2) {
        // t is a LOCAL parameter in [0,1] along this piece.
        let dx = &self.bx - &self.ax;
        let dy = &self.by - &self.ay;
        (&self.ax + &(&dx * t), &self.ay + &(&dy * t))
    }

    fn global_t(&self, local: &QSqrt2) -> QSqrt2 {
        &self.t0 + &(&(&self.t1 - &self.t0) * local)
    }

    fn sub(&self, l0: &QSqrt2, l1: &QSqrt2) -> LabeledSegment {
        let (ax, ay) = self.point_at(l0);
        let (bx, by) = self.point_at(l1);
        LabeledSegment {
            ax,
            ay,
            bx,
            by,
            label: self.label,
            source_side: self.source_side,
            t0: self.global_t(l0),
            t1: self.global_t(l1),
        }
    }
}

/// The eight octagon sides as labeled segments.
pub fn octagon_side_segments() -> Vec<LabeledSegment> {
    SIDES
        .iter()
        .map(|s| LabeledSegment {
            ax: VERTICES[s.index].0.clone(),
            ay: VERTICES[s.index].1.clone(),
            bx: VERTICES[(s.index + 1) % 8].0.clone(),
            by: VERTICES[(s.index + 1) % 8].1.clone(),
            label: s.label,
            source_side: s.index,
            t0: QSqrt2::zero(),
            t1: QSqrt2::one(),
        })
        .collect()
}

fn map_segment_linear(seg: &LabeledSegment, m: &crate::qsqrt2::Mat2) -> LabeledSegment {
    let (ax, ay) = m.apply_vec(&seg.ax, &seg.ay);
    let (bx, by) = m.apply_vec(&seg.bx, &seg.by);
    LabeledSegment { ax, ay, bx, by, ..seg.clone() }
}

/// Roots of the affine function f(t) = f0 + t (f1 − f0) at the given
/// values, kept when they fall strictly inside (0, 1).
fn interior_roots(f0: &QSqrt2, f1: &QSqrt2, values: &[QSqrt2]) -> Vec<QSqrt2> {
    let df = f1 - f0;
    let mut out = Vec::new();
    if df.is_zero() {
        return out;
    }
    for v in values {
        let t = &(v - f0) / &df;
        if t.is_positive() && (&t - &QSqrt2::one()).is_negative() {
            out.push(t);
        }
    }
    out
}

fn split_at(seg: &LabeledSegment, mut cuts: Vec<QSqrt2>) -> Vec<LabeledSegment> {
    cuts.push(QSqrt2::zero());
    cuts.push(QSqrt2::one());
    cuts.sort();
    cuts.dedup();
    cuts.windows(2)
        .map(|w| seg.sub(&w[0], &w[1]))
        .filter(|s| !s.is_degenerate())
        .collect()
}

/// Apply Ψ_σ to a segment inside the closed octagon, splitting it into the
/// reduced sub-segments.
fn psi_sigma_segment(seg: &LabeledSegment) -> Vec<LabeledSegment> {
    // Shear first (y is unchanged by σ).
    let sheared = {
        let coef = shear_coefficient();
        LabeledSegment {
            ax: &seg.ax + &(&coef * &seg.ay),
            bx: &seg.bx + &(&coef * &seg.by),
            ..seg.clone()
        }
    };
    // Split where the segment crosses the cylinder boundaries y = ±1.
    let band_cuts = interior_roots(&sheared.ay, &sheared.by, &[QSqrt2::one(), -QSqrt2::one()]);
    let mut out = Vec::new();
    for band_piece in split_at(&sheared, band_cuts) {
        let ymid = &(&band_piece.ay + &band_piece.by) * &QSqrt2::rational(1, 2);
        let one = QSqrt2::one();
        if (&ymid - &one).sign() <= 0 && (&ymid + &one).sign() >= 0 {
            out.extend(reduce_middle_piece(&band_piece));
        } else {
            out.extend(reduce_outer_piece(&band_piece, ymid.is_positive()));
        }
    }
    out
}

/// Middle cylinder: translate x by multiples of 2(1+√2) into
/// [−(1+√2), 1+√2), splitting where the multiple jumps.
fn reduce_middle_piece(piece: &LabeledSegment) -> Vec<LabeledSegment> {
    let base = -QSqrt2::silver();
    let period = QSqrt2::from_parts(2, 1, 2, 1);
    let k0 = floor_steps(&piece.ax, &base, &period);
    let k1 = floor_steps(&piece.bx, &base, &period);
    let (lo, hi) = if k0 <= k1 { (k0.clone(), k1.clone()) } else { (k1.clone(), k0.clone()) };
    let mut cut_values = Vec::new();
    let mut m = lo.clone() + 1;
    while m <= hi {
        cut_values.push(&base + &times_int(&period, &m));
        m += 1;
    }
    let cuts = interior_roots(&piece.ax, &piece.bx, &cut_values);
    split_at(piece, cuts)
        .into_iter()
        .map(|sub| {
            let xmid = &(&sub.ax + &sub.bx) * &QSqrt2::rational(1, 2);
            let k = floor_steps(&xmid, &base, &period);
            let shift = times_int(&period, &k);
            LabeledSegment { ax: &sub.ax - &shift, bx: &sub.bx - &shift, ..sub }
        })
        .collect()
}

/// Top/bottom cylinder: reduce the unrolled coordinate c modulo 4+2√2 and
/// split at the top/bottom-trapezoid threshold.
fn reduce_outer_piece(piece: &LabeledSegment, top_entry: bool) -> Vec<LabeledSegment> {
    let tps = two_plus_sqrt2();
    let period = QSqrt2::from_parts(4, 1, 2, 1);
    // Unrolled coordinate c(t) and height ŷ(t), both affine in t.
    let yhat = |y: &QSqrt2| if top_entry { y.clone() } else { y + &tps };
    let c_of = |x: &QSqrt2, y: &QSqrt2| {
        let yh = yhat(y);
        if top_entry {
            &(x - &yh) + &tps
        } else {
            &(x - &yh) + &(&tps + &tps)
        }
    };
    let c0 = c_of(&piece.ax, &piece.ay);
    let c1 = c_of(&piece.bx, &piece.by);
    // Wrap cuts at integer multiples of the period.
    let k0 = floor_steps(&c0, &QSqrt2::zero(), &period);
    let k1 = floor_steps(&c1, &QSqrt2::zero(), &period);
    let (lo, hi) = if k0 <= k1 { (k0.clone(), k1.clone()) } else { (k1.clone(), k0.clone()) };
    let mut wrap_values = Vec::new();
    let mut m = lo.clone() + 1;
    while m <= hi {
        wrap_values.push(times_int(&period, &m));
        m += 1;
    }
    let wrap_cuts = interior_roots(&c0, &c1, &wrap_values);
    let mut out = Vec::new();
    for wrapped in split_at(piece, wrap_cuts) {
        let wc0 = c_of(&wrapped.ax, &wrapped.ay);
        let wc1 = c_of(&wrapped.bx, &wrapped.by);
        let cmid = &(&wc0 + &wc1) * &QSqrt2::rational(1, 2);
        let k = floor_steps(&cmid, &QSqrt2::zero(), &period);
        let shift = times_int(&period, &k);
        // g(t) = c_mod(t) − threshold(t), affine; split at its root.
        let g_at = |x: &QSqrt2, y: &QSqrt2| {
            let yh = yhat(y);
            let c_mod = &c_of(x, y) - &shift;
            let threshold = &(&tps + &tps) - &(&yh + &yh);
            &c_mod - &threshold
        };
        let g0 = g_at(&wrapped.ax, &wrapped.ay);
        let g1 = g_at(&wrapped.bx, &wrapped.by);
        let threshold_cuts = interior_roots(&g0, &g1, &[QSqrt2::zero()]);
        for sub in split_at(&wrapped, threshold_cuts) {
            let map_point = |x: &QSqrt2, y: &QSqrt2, bottom: bool| -> (QSqrt2, QSqrt2) {
                let yh = yhat(y);
                let c_mod = &c_of(x, y) - &shift;
                if bottom {
                    let threshold = &(&tps + &tps) - &(&yh + &yh);
                    (&(&c_mod - &threshold) - &yh, &yh - &tps)
                } else {
                    (&(&yh - &tps) + &c_mod, yh)
                }
            };
            let gm = &(&g_at(&sub.ax, &sub.ay) + &g_at(&sub.bx, &sub.by))
                * &QSqrt2::rational(1, 2);
            let bottom = gm.sign() >= 0;
            let (ax, ay) = map_point(&sub.ax, &sub.ay, bottom);
            let (bx, by) = map_point(&sub.bx, &sub.by, bottom);
            out.push(LabeledSegment { ax, ay, bx, by, ..sub });
        }
    }
    out
}

fn psi_gamma_segment(seg: &LabeledSegment) -> Vec<LabeledSegment> {
    psi_sigma_segment(&map_segment_linear(seg, &nu(7)))
}

/// The images of the eight octagon sides under the affine automorphism
/// Ψ_{ν(k)} with ν(k) = ν_{s₀}⁻¹γ ⋯ ν_{s_{k−1}}⁻¹γ, each reduced into the
/// octagon as a union of labeled sub-segments.
pub fn affine_octagon_sides(word: &[usize]) -> Result<Vec<LabeledSegment>, Error> {
    for (j, &s) in word.iter().enumerate() {
        let ok = if j == 0 { s <= 7 } else { (1..=7).contains(&s) };
        if !ok {
            return Err(Error::InvalidPath(format!("entry {} at position {}", s, j)));
        }
    }
    let mut pieces = octagon_side_segments();
    for &s in word.iter().rev() {
        pieces = pieces.iter().flat_map(psi_gamma_segment).collect();
        let inv = nu(s).inverse().expect("nu invertible");
        pieces = pieces.iter().map(|p| map_segment_linear(p, &inv)).collect();
    }
    Ok(pieces)
}

fn cross(ax: &QSqrt2, ay: &QSqrt2, bx: &QSqrt2, by: &QSqrt2) -> QSqrt2 {
    &(ax * by) - &(ay * bx)
}

/// Code a trajectory against a family of labeled segments: walk the
/// trajectory chord by chord and read off the segment labels in crossing
/// order. Each chord contributes its crossings with parameter t ∈ (0, T],
/// so a crossing sitting exactly on the octagon boundary is counted once.
pub fn code_against_segments(
    traj: &Trajectory,
    segments: &[LabeledSegment],
    n_crossings: usize,
) -> Result<Word, Error> {
    let traced = crate::surface::trace(traj, n_crossings)?;
    let mut letters = Vec::new();
    let mut px = traj.start.x.clone();
    let mut py = traj.start.y.clone();
    for crossing in &traced.crossings {
        // Chord from (px, py) to the crossing point, direction (vx, vy).
        let t_exit = if !traj.vx.is_zero() {
            &(&crossing.x - &px) / &traj.vx
        } else {
            &(&crossing.y - &py) / &traj.vy
        };
        let mut hits: Vec<(QSqrt2, Letter)> = Vec::new();
        for seg in segments {
            let dx = &seg.bx - &seg.ax;
            let dy = &seg.by - &seg.ay;
            let denom = cross(&traj.vx, &traj.vy, &dx, &dy);
            if denom.is_zero() {
                continue;
            }
            let t = &cross(&(&seg.ax - &px), &(&seg.ay - &py), &dx, &dy) / &denom;
            if !t.is_positive() || (&t - &t_exit).is_positive() {
                continue;
            }
            let s = &cross(&(&seg.ax - &px), &(&seg.ay - &py), &traj.vx, &traj.vy) / &denom;
            if s.is_negative() || (&s - &QSqrt2::one()).is_positive() {
                continue;
            }
            hits.push((t, seg.label));
        }
        hits.sort_by(|a, b| a.0.cmp(&b.0));
        hits.dedup_by(|a, b| a.0 == b.0);
        letters.extend(hits.into_iter().map(|(_, l)| l));
        px = &crossing.x + &SIDES[crossing.side].translation.0;
        py = &crossing.y + &SIDES[crossing.side].translation.1;
    }
    Ok(Word::new(letters))
}
