//! The one-dimensional dynamics: the octagon Farey map F and its inverse
//! branches, additive continued-fraction expansions, the backward map F⁻ on
//! Σ̄₀, and the Gauss acceleration G with its jump times n₁/n₇.

use std::collections::HashMap;

use crate::error::Error;
use crate::projline::{
    gauss_sector_of, sector_of, AngleInterval, GaussSector, ProjPoint, SectorIndex,
};
use crate::qsqrt2::{farey_branch_matrix, gamma, jmap, nu, Mat2, QSqrt2};

/// One branch F_i = γν_i of the octagon Farey map, acting on Σ̄_i.
#[derive(Clone, Debug)]
pub struct FareyBranch {
    pub index: SectorIndex,
    pub matrix: Mat2,
}

impl FareyBranch {
    pub fn new(i: SectorIndex) -> Self {
        FareyBranch { index: i, matrix: farey_branch_matrix(i) }
    }

    pub fn domain(&self) -> AngleInterval {
        AngleInterval::sector(self.index)
    }

    pub fn inverse_matrix(&self) -> Mat2 {
        nu(self.index).inverse().expect("nu invertible").mul(&gamma())
    }
}

/// Sector index used by the itinerary: the projective infinity read as the
/// θ = 0 endpoint at step 0 and as the θ = π parabolic point afterwards.
pub fn itinerary_sector(u: &ProjPoint, step: usize) -> SectorIndex {
    if u.is_infinity() && step > 0 {
        7
    } else {
        sector_of(u)
    }
}

/// One step of the octagon Farey map; total on RP¹.
pub fn farey(u: &ProjPoint) -> ProjPoint {
    farey_step(u, 0).0
}

pub fn farey_step(u: &ProjPoint, step: usize) -> (ProjPoint, SectorIndex) {
    let i = itinerary_sector(u, step);
    (u.apply_left(&farey_branch_matrix(i)), i)
}

/// The inverse branch F_i⁻¹: Σ̄ → Σ̄_i, via (γν_i)⁻¹ = ν_i⁻¹γ.
pub fn farey_inverse(i: SectorIndex, u: &ProjPoint) -> Result<ProjPoint, Error> {
    if !u.is_infinity() && sector_of(u) == 0 {
        return Err(Error::OutOfRange);
    }
    Ok(u.apply_left(&FareyBranch::new(i).inverse_matrix()))
}

/// How a finite expansion window classified its tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Termination {
    /// The orbit hit a parabolic fixed point exactly at `step`; from there
    /// every entry equals `branch` (1 or 7).
    Exact { step: usize, branch: SectorIndex },
    /// The window ends in a run of ≥ `run` equal parabolic entries; true
    /// termination is a tail property, so this is only a suspicion.
    Suspected { branch: SectorIndex, run: usize },
    None,
}

/// A finite window of the octagon additive continued fraction of u:
/// entries s_k = sector(F^k u), with s_k = 0 only possible at k = 0.
#[derive(Clone, Debug)]
pub struct CFExpansion {
    pub entries: Vec<SectorIndex>,
    pub termination: Termination,
}

pub const TAIL_RUN_THRESHOLD: usize = 50;

pub fn cf_expand(u: &ProjPoint, m: usize) -> CFExpansion {
    cf_expand_with_threshold(u, m, TAIL_RUN_THRESHOLD)
}

pub fn cf_expand_with_threshold(u: &ProjPoint, m: usize, tail_threshold: usize) -> CFExpansion {
    let mut entries = Vec::with_capacity(m);
    let mut v = u.clone();
    let mut termination = Termination::None;
    for k in 0..m {
        if let Some(branch) = parabolic_branch(&v, k) {
            termination = Termination::Exact { step: k, branch };
            entries.resize(m, branch);
            break;
        }
        let (next, s) = farey_step(&v, k);
        entries.push(s);
        v = next;
    }
    if termination == Termination::None {
        if let Some(p) = parabolic_branch(&v, m) {
            // The orbit point after the window is exactly parabolic.
            termination = Termination::Exact { step: m, branch: p };
        } else if m >= tail_threshold {
            let tail = entries[m - tail_threshold..].to_vec();
            for branch in [1usize, 7] {
                if tail.iter().all(|&s| s == branch) {
                    termination = Termination::Suspected { branch, run: tail_threshold };
                }
            }
        }
    }
    CFExpansion { entries, termination }
}

/// Which parabolic fixed point the orbit point sits on, if any. At step 0
/// the point at infinity is read as θ = 0, which is not parabolic.
fn parabolic_branch(u: &ProjPoint, step: usize) -> Option<SectorIndex> {
    if u.is_infinity() {
        if step > 0 {
            Some(7)
        } else {
            None
        }
    } else if u.cmp_u(&QSqrt2::silver()) == 0 {
        Some(1)
    } else {
        None
    }
}

/// Exact terminating-direction detection for u ∈ Q(√2) ∪ {∞}: iterate until
/// the orbit hits a parabolic point (terminating) or revisits a value
/// (periodic, hence non-terminating), up to `max_iter`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminationCheck {
    Terminating { step: usize, branch: SectorIndex },
    PeriodicNonterminating { enters: usize, period: usize },
    Undetermined { iterations: usize },
}

pub fn detect_termination(u: &ProjPoint, max_iter: usize) -> TerminationCheck {
    let mut seen: HashMap<Option<QSqrt2>, usize> = HashMap::new();
    let mut v = u.clone();
    for k in 0..max_iter {
        if let Some(branch) = parabolic_branch(&v, k) {
            return TerminationCheck::Terminating { step: k, branch };
        }
        let key = v.u_value();
        if let Some(&enters) = seen.get(&key) {
            return TerminationCheck::PeriodicNonterminating { enters, period: k - enters };
        }
        seen.insert(key, k);
        v = farey_step(&v, k).0;
    }
    TerminationCheck::Undetermined { iterations: max_iter }
}

/// One step of the backward map F⁻ on Σ̄₀, with the branch entry i such
/// that v ∈ Σ_i′ = γν_iΣ₀. Since γ is an involution and ν_i⁻¹ = ν_{j(i)},
/// F⁻(v) = ν_{s}[γ v] where s = sector(γ v) and the entry is i = j(s).
pub fn backward_map(v: &ProjPoint) -> Result<(ProjPoint, SectorIndex), Error> {
    if !in_sigma0_closure(v) {
        return Err(Error::OutOfRange);
    }
    let t = v.apply_left(&gamma());
    let s = if t.is_infinity() { 7 } else { sector_of(&t) };
    debug_assert!(s >= 1);
    Ok((t.apply_left(&nu(s)), jmap(s)))
}

/// Entries s_{-1}, s_{-2}, ..., s_{-m} of the backward octagon additive
/// continued fraction of v ∈ Σ̄₀.
pub fn backward_expand(v: &ProjPoint, m: usize) -> Result<Vec<SectorIndex>, Error> {
    let mut entries = Vec::with_capacity(m);
    let mut w = v.clone();
    for _ in 0..m {
        let (next, i) = backward_map(&w)?;
        entries.push(i);
        w = next;
    }
    Ok(entries)
}

/// True when v lies in Σ̄₀ = [1+√2, ∞] (θ ∈ [0, π/8]).
pub fn in_sigma0_closure(v: &ProjPoint) -> bool {
    v.is_infinity() || v.cmp_u(&QSqrt2::silver()) >= 0
}

/// True when v sits exactly on a boundary of the partition {Σ_i′} of Σ̄₀.
pub fn on_backward_boundary(v: &ProjPoint) -> bool {
    let t = v.apply_left(&gamma());
    crate::projline::is_sector_boundary(&t)
}

/// The octagon Gauss map G, the jump transformation of F over the parabolic
/// sectors. Returns the image and the sector data (with jump time).
pub fn gauss(u: &ProjPoint) -> Result<(ProjPoint, GaussSector), Error> {
    let gs = gauss_sector_of(u)?;
    let image = match &gs {
        GaussSector::Plain(i) => u.apply_left(&farey_branch_matrix(*i)),
        GaussSector::Jump { k, n } => {
            let m = farey_branch_matrix(*k);
            let mut v = u.clone();
            for _ in 0..*n {
                v = v.apply_left(&m);
            }
            v
        }
    };
    Ok((image, gs))
}

/// Right endpoint of Σ_{1,n}: the n-th pullback (ν₁γ)ⁿ[1] of the Σ₁/Σ₂
/// boundary cot(π/4) = 1. n₁(u) = n exactly on ((ν₁γ)^{n-1}[1], (ν₁γ)ⁿ[1]].
pub fn sigma1n_endpoint(n: u32) -> ProjPoint {
    let m = nu(1).mul(&gamma());
    let mut p = ProjPoint::from_int(1);
    for _ in 0..n {
        p = p.apply_left(&m);
    }
    p
}

/// Left endpoint of Σ_{7,n}: σ⁻ⁿ[−(1+√2)] = −(2n+1)(1+√2).
/// n₇(u) = n exactly on (σ⁻ⁿ[−(1+√2)], σ^{-(n-1)}[−(1+√2)]].
pub fn sigma7n_endpoint(n: u32) -> ProjPoint {
    let factor = QSqrt2::from_int(-(2 * n as i64 + 1));
    ProjPoint::from_u(&factor * &QSqrt2::silver())
}

/// Sampled graph of F in angle coordinates, one polyline per branch.
pub fn farey_graph(samples_per_branch: usize) -> Vec<Vec<(f64, f64)>> {
    let pi = std::f64::consts::PI;
    (0..8)
        .map(|i| {
            let matrix = farey_branch_matrix(i);
            let lo = i as f64 * pi / 8.0;
            let hi = (i + 1) as f64 * pi / 8.0;
            sample_moebius_graph(&matrix, lo, hi, samples_per_branch)
        })
        .collect()
}

/// Sampled graph of G in angle coordinates: middle branches plus the first
/// `n_max` parabolic branches on each side.
pub fn gauss_graph(samples_per_branch: usize, n_max: u32) -> Vec<Vec<(f64, f64)>> {
    let mut polylines = Vec::new();
    for i in 2..=6usize {
        let pi = std::f64::consts::PI;
        polylines.push(sample_moebius_graph(
            &farey_branch_matrix(i),
            i as f64 * pi / 8.0,
            (i + 1) as f64 * pi / 8.0,
            samples_per_branch,
        ));
    }
    for k in [1usize, 7] {
        let base = farey_branch_matrix(k);
        let mut power = base.clone();
        for n in 1..=n_max {
            let (lo, hi) = jump_domain_angles(k, n);
            polylines.push(sample_moebius_graph(&power, lo, hi, samples_per_branch));
            power = base.mul(&power);
        }
    }
    polylines
}

fn jump_domain_angles(k: usize, n: u32) -> (f64, f64) {
    match k {
        1 => (
            crate::projline::angle_from_u(&sigma1n_endpoint(n)),
            crate::projline::angle_from_u(&sigma1n_endpoint(n - 1)),
        ),
        7 => (
            crate::projline::angle_from_u(&sigma7n_endpoint(n - 1)),
            crate::projline::angle_from_u(&sigma7n_endpoint(n)),
        ),
        _ => unreachable!(),
    }
}

fn sample_moebius_graph(m: &Mat2, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let [a, b, c, d] = m.to_floats();
    (0..=n)
        .map(|j| {
            let theta = lo + (hi - lo) * j as f64 / n as f64;
            let u = 1.0 / theta.tan();
            let fu = (a * u + b) / (c * u + d);
            let mut ft = std::f64::consts::FRAC_PI_2 - fu.atan();
            if ft < 0.0 {
                ft += std::f64::consts::PI;
            }
            (theta, ft)
        })
        .collect()}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline::boundary_cot;

    fn u(p: i64, q: i64, r: i64, s: i64) -> ProjPoint {
        ProjPoint::from_u(QSqrt2::from_parts(p, q, r, s))
    }

    #[test]
    fn farey_on_sector0_is_affine() {
        // F(3) = −3 + 2(1+√2) = 2√2 − 1.
        let image = farey(&ProjPoint::from_int(3));
        assert_eq!(image, u(-1, 1, 2, 1));
    }

    #[test]
    fn parabolic_fixed_points() {
        let silver = ProjPoint::from_u(QSqrt2::silver());
        assert_eq!(farey(&silver), silver);
        let inf = ProjPoint::infinity();
        assert_eq!(farey(&inf), ProjPoint::infinity());
    }

    #[test]
    fn inverse_roundtrip_per_branch() {
        let samples = [u(3, 1, 0, 1), u(1, 2, 1, 3), u(-5, 2, -1, 2), u(0, 1, -1, 3)];
        for p in &samples {
            let i = sector_of(p);
            let fp = farey(p);
            let back = farey_inverse(i, &fp).unwrap();
            assert_eq!(&back, p, "branch {}", i);
        }
    }

    #[test]
    fn branch_0_inverse_example() {
        let p = farey_inverse(0, &u(-1, 1, 2, 1)).unwrap();
        assert_eq!(p, ProjPoint::from_int(3));
    }

    #[test]
    fn branch_gluing_is_exact() {
        // Adjacent branches agree at the shared sector endpoint.
        for k in 1..8usize {
            let b = ProjPoint::from_u(boundary_cot(k));
            let left = b.apply_left(&farey_branch_matrix(k - 1));
            let right = b.apply_left(&farey_branch_matrix(k));
            assert_eq!(left, right, "gluing at cot({}π/8)", k);
        }
    }

    #[test]
    fn branches_are_monotone_bijections() {
        // Endpoint images frame Σ̄ and the Möbius derivative keeps one sign.
        for i in 0..8usize {
            let dom = AngleInterval::sector(i);
            let (lo, hi) = dom.endpoints_proj();
            let m = farey_branch_matrix(i);
            let img_lo = lo.apply_left(&m);
            let img_hi = hi.apply_left(&m);
            let det = m.det();
            assert!(m.is_unimodular());
            // Image endpoints are the two endpoints of Σ̄ in some order.
            let sigma_lo = ProjPoint::from_u(QSqrt2::silver());
            let matches = (img_lo == sigma_lo && img_hi.is_infinity())
                || (img_hi == sigma_lo && img_lo.is_infinity());
            assert!(matches, "branch {} image endpoints", i);
            // det sign = orientation of the branch in u-coordinates:
            // det(γν_i) = −det(ν_i), positive exactly for the reflections.
            assert_eq!(det.is_positive(), i % 2 == 1, "branch {}", i);
        }
    }

    #[test]
    fn expansion_basics() {
        let e = cf_expand(&ProjPoint::from_u(QSqrt2::silver()), 10);
        assert_eq!(e.entries, vec![1; 10]);
        assert!(matches!(e.termination, Termination::Exact { step: 0, .. }));

        let e0 = cf_expand(&ProjPoint::from_int(0), 8);
        assert_eq!(e0.entries[0], 4);
        // F(0) = branch-4 image of 0.
        let f0 = farey(&ProjPoint::from_int(0));
        assert_eq!(e0.entries[1], itinerary_sector(&f0, 1));
        // S* condition: s_k = 0 only at k = 0.
        assert!(e0.entries[1..].iter().all(|&s| s >= 1));
    }

    #[test]
    fn expansion_at_infinity() {
        // θ = 0 gives s₀ = 0 and then the θ = π parabolic tail.
        let e = cf_expand(&ProjPoint::infinity(), 6);
        assert_eq!(e.entries[0], 0);
        assert!(e.entries[1..].iter().all(|&s| s == 7));
    }

    #[test]
    fn s_star_condition_random() {
        for seed in 0..40i64 {
            let p = u(seed % 13 - 6, 5, (seed * 7) % 11 - 5, 7);
            let e = cf_expand(&p, 40);
            assert!(e.entries[1..].iter().all(|&s| (1..=7).contains(&s)), "u index {}", seed);
        }
    }

    #[test]
    fn termination_detection() {
        let silver = ProjPoint::from_u(QSqrt2::silver());
        assert_eq!(
            detect_termination(&silver, 10),
            TerminationCheck::Terminating { step: 0, branch: 1 }
        );
        // A preimage of the parabolic point terminates after a few steps
        // (branch 1 fixes the parabolic point, so go through branch 2).
        let pre = farey_inverse(3, &farey_inverse(2, &silver).unwrap()).unwrap();
        assert!(matches!(
            detect_termination(&pre, 20),
            TerminationCheck::Terminating { step: 2, branch: 1 }
        ));
    }

    #[test]
    fn backward_branch_table() {
        // Σ_i′ = γΣ_{j(i)}: check the j-pairing on exact sector endpoints.
        for i in 1..8usize {
            let j = jmap(i);
            // Endpoints of Σ̄_j mapped by γ must frame Σ_i′.
            let lo = if j == 7 {
                ProjPoint::infinity()
            } else {
                ProjPoint::from_u(boundary_cot(j + 1))
            };
            let hi = ProjPoint::from_u(boundary_cot(j.max(1)));
            for p in [lo, hi] {
                let v = p.apply_left(&gamma());
                assert!(in_sigma0_closure(&v), "γΣ̄_{} endpoint in Σ̄₀", j);
            }
            let _ = i;
        }
    }

    #[test]
    fn backward_map_is_continuous_at_partition_points() {
        // Interior partition points of {Σ_i′}: γ[cot(kπ/8)] for k = 1..7.
        for k in 1..8usize {
            let b = ProjPoint::from_u(boundary_cot(k)).apply_left(&gamma());
            if !in_sigma0_closure(&b) || b.is_infinity() {
                continue;
            }
            // Evaluate the two adjacent branch formulas ν_s γ and ν_{s±1} γ.
            let t = b.apply_left(&gamma());
            let s = sector_of(&t);
            let via_s = t.apply_left(&nu(s));
            let s_other = if t.cmp_u(&boundary_cot(s)) == 0 && s >= 1 { s - 1 } else { s + 1 };
            if (1..=7).contains(&s_other) {
                let via_other = t.apply_left(&nu(s_other));
                assert_eq!(via_s, via_other, "continuity at γ[cot({}π/8)]", k);
            }
        }
    }

    #[test]
    fn gauss_is_jump_transformation() {
        let samples = [u(11, 10, 0, 1), u(6, 5, 1, 100), u(0, 1, 1, 2), u(-9, 2, -1, 1)];
        for p in &samples {
            let (image, gs) = gauss(p).unwrap();
            let n = match gs {
                GaussSector::Plain(_) => 1,
                GaussSector::Jump { n, .. } => n,
            };
            let mut v = p.clone();
            for k in 0..n {
                v = farey_step(&v, k as usize + 1).0;
            }
            assert_eq!(image, v);
        }
    }

    #[test]
    fn gauss_boundary_convention() {
        // u = 1 (θ = π/4) belongs to Σ₂ under the half-open convention.
        let one = ProjPoint::from_int(1);
        let (image, gs) = gauss(&one).unwrap();
        assert_eq!(gs, GaussSector::Plain(2));
        assert_eq!(image, farey(&one));
    }

    #[test]
    fn sigma1n_endpoints_match_jump_times() {
        // n₁(u) = n exactly on ((ν₁γ)^{n-1}[1], (ν₁γ)ⁿ[1]].
        assert_eq!(sigma1n_endpoint(1), u(1, 1, 1, 2));
        for n in 1..=12u32 {
            let hi = sigma1n_endpoint(n);
            let lo = sigma1n_endpoint(n - 1);
            // Midpoint of the sub-sector in u-coordinates.
            let mid = ProjPoint::from_u(
                &(&lo.u_value().unwrap() + &hi.u_value().unwrap()) * &QSqrt2::rational(1, 2),
            );
            match gauss_sector_of(&mid).unwrap() {
                GaussSector::Jump { k: 1, n: got } => assert_eq!(got, n, "n₁ at level {}", n),
                other => panic!("expected Σ₁ jump, got {:?}", other),
            }
            // The right endpoint itself still has n₁ = n (half-open left).
            match gauss_sector_of(&hi).unwrap() {
                GaussSector::Jump { k: 1, n: got } => assert_eq!(got, n),
                other => panic!("expected Σ₁ jump, got {:?}", other),
            }
        }
    }

    #[test]
    fn sigma7n_endpoints_match_jump_times() {
        for n in 1..=12u32 {
            let lo = sigma7n_endpoint(n);
            let hi = sigma7n_endpoint(n - 1);
            let mid = ProjPoint::from_u(
                &(&lo.u_value().unwrap() + &hi.u_value().unwrap()) * &QSqrt2::rational(1, 2),
            );
            match gauss_sector_of(&mid).unwrap() {
                GaussSector::Jump { k: 7, n: got } => assert_eq!(got, n, "n₇ at level {}", n),
                other => panic!("expected Σ₇ jump, got {:?}", other),
            }
        }
    }
}
