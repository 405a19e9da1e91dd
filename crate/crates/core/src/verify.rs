//! The acceptance suite: one function per criterion, returning a
//! pass/fail record with details. The CLI `verify-all` subcommand and the
//! `acceptance` integration test both drive these.

use crate::cfmaps::{self, cf_expand, farey_step};

use crate::error::Error;
use crate::natext::{self, Endpoint, Interval, PlanePoint};
use crate::projline::{GaussSector, ProjPoint};
use crate::qsqrt2::QSqrt2;
use crate::sampling;
use crate::surface::{self, Trajectory};
use crate::symbolic;
use crate::teich;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:2} [{}] {} — {}",
            self.index,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.details
        )
    }
}

/// Worker count: OCTA_THREADS if set, else the machine parallelism.
pub fn thread_count() -> usize {
    std::env::var("OCTA_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        })
}

/// Run a closure over the items on `thread_count()` scoped workers,
/// collecting failure messages. Items carry their own seeds, so the
/// outcome does not depend on the thread count.
fn parallel_failures<T, F>(items: Vec<T>, f: F) -> Vec<String>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<(), String> + Sync,
{
    let workers = thread_count().max(1);
    let chunk = items.len().div_ceil(workers).max(1);
    let mut failures: Vec<String> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| scope.spawn(|| part.iter().filter_map(|t| f(t).err()).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            failures.extend(h.join().expect("worker panicked"));
        }
    });
    failures
}

fn result(index: usize, name: &'static str, failures: Vec<String>, detail: String) -> CriterionResult {
    if failures.is_empty() {
        CriterionResult { index, name, passed: true, details: detail }
    } else {
        let mut details = format!("{} failure(s); first: {}", failures.len(), failures[0]);
        if !detail.is_empty() {
            details.push_str(&format!(" [{}]", detail));
        }
        CriterionResult { index, name, passed: false, details }
    }
}

/// Criterion 1: c(ν_k τ) = π_k · c(τ) for all k on 200 random trajectories
/// with 200-letter prefixes, exactly.
pub fn criterion_1_relabeling() -> CriterionResult {
    let mut rng = sampling::rng(0xC0FF_EE01);
    let mut items = Vec::new();
    while items.len() < 200 {
        let traj = sampling::trajectory(&mut rng, 101);
        if surface::trace(&traj, 200).is_ok() {
            items.push(traj);
        }
    }
    let failures = parallel_failures(items, |traj| {
        let base = surface::trace(traj, 200).map_err(|e| e.to_string())?.word;
        for k in 0..8 {
            let mapped = surface::apply_isometry(k, traj);
            let word = surface::trace(&mapped, 200).map_err(|e| e.to_string())?.word;
            let expect = symbolic::permute(&base, k);
            if word.letters != expect.letters {
                return Err(format!("relabeling mismatch at k={}", k));
            }
        }
        Ok(())
    });
    result(1, "relabeling identity", failures, "200 trajectories x 8 isometries, 200 letters".into())
}

/// Criterion 2: derive(c(τ)) = c(Ψ_γ τ) on the truncation-adjusted window
/// for 1000 random Σ₀-trajectories.
pub fn criterion_2_derivation() -> CriterionResult {
    let mut rng = sampling::rng(0xC0FF_EE02);
    let mut items = Vec::new();
    while items.len() < 1000 {
        let start = sampling::interior_point(&mut rng);
        let dir = sampling::direction_in_sector(&mut rng, 0, 211);
        let traj = Trajectory::from_u(start, &dir).expect("nonzero");
        if surface::trace(&traj, 200).is_ok() {
            items.push(traj);
        }
    }
    let failures = parallel_failures(items, |traj| {
        let word = surface::trace(traj, 200).map_err(|e| e.to_string())?.word;
        let derived_word = symbolic::derive(&word);
        if derived_word.is_empty() {
            return Err("derived window empty".into());
        }
        let derived_traj = surface::derived_trajectory(traj).map_err(|e| e.to_string())?;
        let target = surface::trace(&derived_traj, derived_word.len() + 1)
            .map_err(|e| e.to_string())?
            .word;
        match derived_word.is_substring_of(&target) {
            Some(off) if off <= 1 => Ok(()),
            Some(off) => Err(format!("alignment offset {}", off)),
            None => Err("derived word not found in derived trajectory".into()),
        }
    });
    result(2, "derivation equivalence", failures, "1000 sector-0 trajectories, 200 letters".into())
}

/// Criterion 3: the renormalization diagram indices match the Farey
/// itinerary: 30 steps through trajectory renormalization, plus every
/// word-level stage a 600-letter prefix supports.
pub fn criterion_3_itinerary() -> CriterionResult {
    let mut rng = sampling::rng(0xC0FF_EE03);
    let mut items = Vec::new();
    while items.len() < 500 {
        let dir = sampling::nonterminating_direction(&mut rng, 997, 40);
        let start = sampling::interior_point(&mut rng);
        let traj = Trajectory::from_u(start, &dir).expect("nonzero");
        if surface::trace(&traj, 600).is_ok() {
            items.push((traj, dir));
        }
    }
    let failures = parallel_failures(items, |(traj, dir)| {
        let itinerary: Vec<usize> = {
            let mut v = Vec::new();
            let mut p = dir.clone();
            for step in 0..30 {
                let (next, s) = farey_step(&p, step);
                v.push(s);
                p = next;
            }
            v
        };
        let renorm = surface::renormalize_trajectory(traj, 30).map_err(|e| e.to_string())?;
        if renorm.sectors != itinerary {
            return Err("trajectory sector sequence differs from the itinerary".into());
        }
        let word = surface::trace(traj, 600).map_err(|e| e.to_string())?.word;
        let trace = symbolic::renormalize(&word, 30);
        let d: Vec<usize> = trace.diagram_indices();
        if d.len() < 3 {
            return Err(format!("only {} word-level stages available", d.len()));
        }
        if d[..] != itinerary[..d.len()] {
            return Err("word-level diagram indices differ from the itinerary".into());
        }
        Ok(())
    });
    result(
        3,
        "itinerary = diagram sequence",
        failures,
        "500 directions, 30 trajectory stages + word stages from 600 letters".into(),
    )
}

/// Criterion 4: the nested interval from 25 recognized entries contains
/// the true direction exactly and has float width < 1e−5.
pub fn criterion_4_recognition() -> CriterionResult {
    let mut rng = sampling::rng(0xC0FF_EE04);
    let items: Vec<ProjPoint> = (0..200)
        .map(|_| sampling::nonterminating_direction(&mut rng, 997, 40))
        .collect();
    let mut max_width: f64 = 0.0;
    let mut failures = Vec::new();
    for dir in &items {
        let entries = cf_expand(dir, 25).entries;
        let intervals = symbolic::nested_intervals(&entries);
        for pair in intervals.windows(2) {
            if !pair[0].contains_interval(&pair[1]) {
                failures.push("intervals are not nested".to_string());
            }
        }
        let last = intervals.last().expect("25 entries");
        if !symbolic::interval_contains_direction(last, dir) {
            failures.push(format!("direction {} escapes its interval", dir));
        }
        let width = last.width_float();
        max_width = max_width.max(width);
        if width >= 1e-5 {
            failures.push(format!("width {} at {}", width, dir));
        }
    }
    result(
        4,
        "direction recognition",
        failures,
        format!("200 directions, 25 entries, max width {:.3e}", max_width),
    )
}

/// Criterion 5: exact closed-form measure invariance for μ/F, μ̂/F̂ and
/// μ_G/G, each within 1e−12 over 100 random sets.
pub fn criterion_5_measures() -> CriterionResult {
    let mut rng = sampling::rng(0xC0FF_EE05);
    let mut failures = Vec::new();
    let mut max_delta: f64 = 0.0;
    for _ in 0..100 {
        let iv = sampling::interval_in_sigma(&mut rng, 12.0, 0.05);
        match (natext::mu_farey(&iv), natext::mu_farey_preimage(&iv)) {
            (Ok(direct), Ok(pre)) => {
                let d = (direct - pre).abs();
                max_delta = max_delta.max(d);
                if d >= 1e-12 {
                    failures.push(format!("farey delta {:.3e}", d));
                }
            }
            _ => failures.push("farey measure evaluation failed".into()),
        }
    }
    for _ in 0..100 {
        let rect = sampling::rect_in_domain(&mut rng);
        match (natext::mu_hat(&rect), natext::mu_hat_preimage(&rect)) {
            (Ok(direct), Ok(pre)) => {
                let d = (direct - pre).abs();
                max_delta = max_delta.max(d);
                if d >= 1e-12 {
                    failures.push(format!("fhat delta {:.3e}", d));
                }
            }
            _ => failures.push("fhat measure evaluation failed".into()),
        }
    }
    for _ in 0..100 {
        let iv = sampling::interval_maybe_unbounded(&mut rng);
        match (natext::mu_gauss(&iv), natext::mu_gauss_preimage(&iv)) {
            (Ok(direct), Ok(pre)) => {
                let d = (direct - pre).abs();
                max_delta = max_delta.max(d);
                if d >= 1e-12 {
                    failures.push(format!("gauss delta {:.3e}", d));
                }
            }
            _ => failures.push("gauss measure evaluation failed".into()),
        }
    }
    result(
        5,
        "measure invariance (closed forms)",
        failures,
        format!("3 x 100 sets, max |Δ| = {:.3e}", max_delta),
    )
}

/// Criterion 6: branch-image tilings with exact endpoints, and the shift
/// conjugacy of the two-sided coding to depth 40 on 1000 points.
pub fn criterion_6_natural_extension() -> CriterionResult {
    let mut failures = Vec::new();
    // Exact tiling of Σ̄₀ by the seven F̂-image v-bands.
    let mut bands: Vec<Interval> = (1..=7).map(natext::fhat_image_vband).collect();
    bands.sort_by(|a, b| a.lo.cmp_ext(&b.lo));
    if bands[0].lo != Endpoint::Finite(QSqrt2::silver()) || bands[6].hi != Endpoint::PosInf {
        failures.push("v-band tiling endpoints".into());
    }
    for w in bands.windows(2) {
        if w[0].hi != w[1].lo {
            failures.push("v-band tiling gap".into());
        }
    }
    // Exact stacking of the Ĝ branch images inside D_Ĝ.
    let mut mid: Vec<Interval> = (2..=6).map(|i| natext::ghat_branch_image(i, 1).v).collect();
    mid.sort_by(|a, b| a.lo.cmp_ext(&b.lo));
    if mid[0].lo != Endpoint::Finite(natext::silver_plus_sqrt2())
        || mid[4].hi != Endpoint::Finite(natext::three_silver())
    {
        failures.push("gauss middle band endpoints".into());
    }
    for w in mid.windows(2) {
        if w[0].hi != w[1].lo {
            failures.push("gauss middle band gap".into());
        }
    }
    let mut upper = Endpoint::Finite(natext::silver_plus_sqrt2());
    for n in 1..=12 {
        let band = natext::ghat_branch_image(1, n).v;
        if band.hi != upper {
            failures.push(format!("gauss Σ₁ band {} does not abut", n));
        }
        upper = band.lo.clone();
    }
    let mut lower = Endpoint::Finite(natext::three_silver());
    for n in 1..=12 {
        let band = natext::ghat_branch_image(7, n).v;
        if band.lo != lower {
            failures.push(format!("gauss Σ₇ band {} does not abut", n));
        }
        lower = band.hi.clone();
    }
    // Shift conjugacy on 1000 points to depth 40.
    let mut rng = sampling::rng(0xC0FF_EE06);
    let points: Vec<PlanePoint> = (0..1000).map(|_| sampling::plane_point(&mut rng, 499)).collect();
    let shift_failures = parallel_failures(points, |p| {
        let depth = 40;
        let code = natext::two_sided_code(p, depth + 1).map_err(|e| e.to_string())?;
        let image = natext::fhat(p).map_err(|e| e.to_string())?;
        let code_image = natext::two_sided_code(&image, depth).map_err(|e| e.to_string())?;
        if code_image.forward[..] != code.forward[1..depth + 1] {
            return Err("forward entries do not shift".into());
        }
        if code_image.backward[0] != code.forward[0] {
            return Err("shifted entry does not cross to the backward side".into());
        }
        if code_image.backward[1..depth] != code.backward[..depth - 1] {
            return Err("backward entries do not shift".into());
        }
        if !code.forward.iter().all(|&s| (1..=7).contains(&s)) {
            return Err("forward entry outside 1..7".into());
        }
        Ok(())
    });
    failures.extend(shift_failures);
    result(
        6,
        "natural-extension structure",
        failures,
        "exact tilings + shift conjugacy on 1000 points, depth 40".into(),
    )
}

/// Criterion 7: G is the jump transformation of F (10⁴ exact samples), the
/// Σ_{1,n}/Σ_{7,n} endpoint formulas hold for n ≤ 12, and the closed-form
/// total mass ln(8+4√2) matches quadrature within 1e−9.
pub fn criterion_7_gauss() -> CriterionResult {
    let mut rng = sampling::rng(0xC0FF_EE07);
    let mut failures = Vec::new();
    let items: Vec<ProjPoint> = (0..10_000)
        .map(|_| sampling::direction_in_sigma_bar(&mut rng, 499))
        .collect();
    let jump_failures = parallel_failures(items, |u| {
        let (image, gs) = cfmaps::gauss(u).map_err(|e| e.to_string())?;
        let n = match gs {
            GaussSector::Plain(_) => 1,
            GaussSector::Jump { n, .. } => n,
        };
        let mut v = u.clone();
        for step in 0..n {
            v = farey_step(&v, step as usize + 1).0;
        }
        if image != v {
            return Err(format!("G(u) != F^{}(u) at u = {}", n, u));
        }
        Ok(())
    });
    failures.extend(jump_failures);
    for n in 1..=12u32 {
        let hi = cfmaps::sigma1n_endpoint(n);
        let lo = cfmaps::sigma1n_endpoint(n - 1);
        let mid = ProjPoint::from_u(
            &(&lo.u_value().unwrap() + &hi.u_value().unwrap()) * &QSqrt2::rational(1, 2),
        );
        match crate::projline::gauss_sector_of(&mid) {
            Ok(GaussSector::Jump { k: 1, n: got }) if got == n => {}
            other => failures.push(format!("Σ(1,{}) endpoint check: {:?}", n, other)),
        }
        let hi7 = cfmaps::sigma7n_endpoint(n - 1);
        let lo7 = cfmaps::sigma7n_endpoint(n);
        let mid7 = ProjPoint::from_u(
            &(&lo7.u_value().unwrap() + &hi7.u_value().unwrap()) * &QSqrt2::rational(1, 2),
        );
        match crate::projline::gauss_sector_of(&mid7) {
            Ok(GaussSector::Jump { k: 7, n: got }) if got == n => {}
            other => failures.push(format!("Σ(7,{}) endpoint check: {:?}", n, other)),
        }
    }
    let closed = natext::gauss_total_mass();
    let quad = natext::gauss_total_mass_quadrature(40_000);
    let delta = (closed - quad).abs();
    if delta >= 1e-9 {
        failures.push(format!("total mass delta {:.3e}", delta));
    }
    result(
        7,
        "gauss acceleration",
        failures,
        format!("10⁴ jump samples; mass ln(8+4√2) vs quadrature Δ = {:.2e}", delta),
    )
}

/// Criterion 8: normalize_code(teich_code(θ)) equals the CF entries for 30
/// symbols on 500 non-cuspidal directions, and the float tracer agrees
/// with the exact coder wherever it stays clear of the ideal vertices.
pub fn criterion_8_geodesic_coding() -> CriterionResult {
    let mut rng = sampling::rng(0xC0FF_EE08);
    let mut items = Vec::new();
    while items.len() < 500 {
        let dir = sampling::nonterminating_direction(&mut rng, 1009, 40);
        if !teich::teich_code(&dir, 30).cuspidal {
            items.push(dir);
        }
    }
    let skipped = std::sync::atomic::AtomicUsize::new(0);
    let failures = parallel_failures(items, |dir| {
        let code = teich::teich_code(dir, 30);
        if code.cuspidal {
            return Err("unexpected cuspidal sample".into());
        }
        let normalized = teich::normalize_code(&code);
        let entries = cf_expand(dir, 30).entries;
        if normalized != entries {
            return Err(format!("normalized code differs from CF entries at {}", dir));
        }
        match teich::float_geodesic_code(dir, 30) {
            Ok(labels) => {
                if labels != code.labels {
                    return Err(format!("float tracer disagrees at {}", dir));
                }
            }
            Err(Error::TooCloseToVertex(_)) => {
                skipped.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            }
            Err(e) => return Err(format!("float tracer error {:?}", e)),
        }
        Ok(())
    });
    let sk = skipped.load(std::sync::atomic::Ordering::Relaxed);
    let mut failures = failures;
    if sk > 250 {
        failures.push(format!("float tracer skipped {}/500 samples", sk));
    }
    result(
        8,
        "geodesic coding",
        failures,
        format!("500 directions, 30 symbols; float tracer skipped {} near vertices", sk),
    )
}

/// Criterion 9: the cross-section first-return map equals F̂ exactly on
/// 1000 section points.
pub fn criterion_9_cross_section() -> CriterionResult {
    let mut rng = sampling::rng(0xC0FF_EE09);
    let points: Vec<PlanePoint> = (0..1000).map(|_| sampling::plane_point(&mut rng, 499)).collect();
    let failures = parallel_failures(points, |p| {
        let by_section = teich::cross_section_return(p).map_err(|e| e.to_string())?;
        let by_fhat = natext::fhat(p).map_err(|e| e.to_string())?;
        if by_section.u != by_fhat.u || by_section.v != by_fhat.v {
            return Err("cross-section return differs from fhat".into());
        }
        if !cfmaps::in_sigma0_closure(&by_section.v) {
            return Err("backward endpoint left the ℰ₀ arc".into());
        }
        Ok(())
    });
    result(9, "cross-section conjugacy", failures, "1000 section points, exact".into())
}

/// Criterion 10: a 10⁶-step Gauss orbit matches the normalized invariant
/// density within 5% per equal-measure decile bin; the Farey orbit spends
/// most of its time in the parabolic sectors.
pub fn criterion_10_statistics() -> CriterionResult {
    let mut failures = Vec::new();
    let hist = natext::birkhoff_histogram(natext::OrbitMap::Gauss, 0.377_214_903, 1_000_000, 10)
        .expect("generic seed orbit");
    let mut max_rel: f64 = 0.0;
    for (k, f) in hist.frequencies().iter().enumerate() {
        let rel = (f - 0.1).abs() / 0.1;
        max_rel = max_rel.max(rel);
        if rel >= 0.05 {
            failures.push(format!("decile {} frequency {:.4}", k, f));
        }
    }
    let occupancy = natext::birkhoff_histogram(natext::OrbitMap::Farey, 0.377_214_903, 1_000_000, 8)
        .expect("generic seed orbit");
    let freqs = occupancy.frequencies();
    let parabolic = freqs[1] + freqs[7];
    if parabolic <= 0.5 {
        failures.push(format!("parabolic occupancy only {:.3}", parabolic));
    }
    result(
        10,
        "statistical sanity",
        failures,
        format!(
            "10⁶ Gauss steps, max decile deviation {:.2}%; Farey parabolic occupancy {:.3}",
            max_rel * 100.0,
            parabolic
        ),
    )
}

pub fn run_criterion(index: usize) -> CriterionResult {
    match index {
        1 => criterion_1_relabeling(),
        2 => criterion_2_derivation(),
        3 => criterion_3_itinerary(),
        4 => criterion_4_recognition(),
        5 => criterion_5_measures(),
        6 => criterion_6_natural_extension(),
        7 => criterion_7_gauss(),
        8 => criterion_8_geodesic_coding(),
        9 => criterion_9_cross_section(),
        10 => criterion_10_statistics(),
        _ => panic!("criteria are numbered 1..=10"),
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=10).map(run_criterion).collect()
}
