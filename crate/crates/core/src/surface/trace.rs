//! Exact trajectory tracing. The inner loop works with points in
//! projective Z[√2] coordinates (x/w, y/w) so each crossing costs integer
//! ring operations only; denominators grow linearly with the crossing count.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::qsqrt2::{clear_denominators, QSqrt2, ZSqrt2};
use crate::surface::{Side, Trajectory, SIDES, VERTICES};
use crate::symbolic::{Letter, Word};

/// One boundary crossing: the exit point (on side `side`) in exact
/// coordinates, before applying the identification translation.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub x: QSqrt2,
    pub y: QSqrt2,
    pub side: usize,
    pub label: Letter,
}

#[derive(Clone, Debug)]
pub struct TraceResult {
    pub word: Word,
    pub crossings: Vec<Crossing>,
}

struct ZSide {
    normal: (ZSqrt2, ZSqrt2),
    offset: ZSqrt2,
    translation: (ZSqrt2, ZSqrt2),
    vertex_a: (ZSqrt2, ZSqrt2),
    vertex_b: (ZSqrt2, ZSqrt2),
}

fn zsides() -> Vec<ZSide> {
    let to_z = |q: &QSqrt2| -> ZSqrt2 {
        let (z, d) = clear_denominators(q);
        assert!(d == BigInt::from(1), "octagon data is integral");
        z
    };
    SIDES
        .iter()
        .map(|s: &Side| ZSide {
            normal: (to_z(&s.normal.0), to_z(&s.normal.1)),
            offset: to_z(&s.offset),
            translation: (to_z(&s.translation.0), to_z(&s.translation.1)),
            vertex_a: (to_z(&VERTICES[s.index].0), to_z(&VERTICES[s.index].1)),
            vertex_b: (
                to_z(&VERTICES[(s.index + 1) % 8].0),
                to_z(&VERTICES[(s.index + 1) % 8].1),
            ),
        })
        .collect()
}

struct ProjPlanar {
    x: ZSqrt2,
    y: ZSqrt2,
    w: ZSqrt2,
}

impl ProjPlanar {
    fn from_exact(x: &QSqrt2, y: &QSqrt2) -> Self {
        let (zx, dx) = clear_denominators(x);
        let (zy, dy) = clear_denominators(y);
        let d = num_integer::lcm(dx.clone(), dy.clone());
        ProjPlanar {
            x: zx.scale(&(&d / &dx)),
            y: zy.scale(&(&d / &dy)),
            w: ZSqrt2 { a: d, b: BigInt::zero() },
        }
    }

    /// Divide out the integer content of all six coordinates.
    fn reduce_content(&mut self) {
        let mut g = BigInt::zero();
        for part in [&self.x.a, &self.x.b, &self.y.a, &self.y.b, &self.w.a, &self.w.b] {
            g = num_integer::gcd(g, part.clone());
            if g == BigInt::from(1) {
                return;
            }
        }
        if g.is_zero() || g == BigInt::from(1) {
            return;
        }
        for part in [&mut self.x, &mut self.y, &mut self.w] {
            part.a = &part.a / &g;
            part.b = &part.b / &g;
        }
    }

    fn x_exact(&self) -> QSqrt2 {
        self.x.div_exact(&self.w)
    }

    fn y_exact(&self) -> QSqrt2 {
        self.y.div_exact(&self.w)
    }
}

/// Trace a trajectory through `n_crossings` boundary crossings, reading off
/// the labels of the sides crossed. Exact: a crossing landing on a vertex
/// raises `SingularHit` rather than perturbing.
pub fn trace(traj: &Trajectory, n_crossings: usize) -> Result<TraceResult, Error> {
    if traj.vx.is_zero() && traj.vy.is_zero() {
        return Err(Error::ZeroDirection);
    }
    if traj.start.is_singular() {
        return Err(Error::SingularHit { crossing: 0 });
    }
    let sides = zsides();
    // Direction cleared to Z[√2] once; scaling does not change the ray.
    let (wx, dx) = clear_denominators(&traj.vx);
    let (wy, dy) = clear_denominators(&traj.vy);
    let dlcm = num_integer::lcm(dx.clone(), dy.clone());
    let wx = wx.scale(&(&dlcm / &dx));
    let wy = wy.scale(&(&dlcm / &dy));

    // Per-side direction components n·w, fixed for the whole trace.
    let dirs: Vec<ZSqrt2> = sides
        .iter()
        .map(|s| s.normal.0.mul(&wx).add(&s.normal.1.mul(&wy)))
        .collect();

    let mut p = ProjPlanar::from_exact(&traj.start.x, &traj.start.y);
    if p.w.sign() < 0 {
        p.x = p.x.neg();
        p.y = p.y.neg();
        p.w = p.w.neg();
    }

    let mut letters = Vec::with_capacity(n_crossings);
    let mut crossings = Vec::with_capacity(n_crossings);

    for step in 0..n_crossings {
        // Exit-time numerators A_i = c_i w − n_i·(x, y); t_i = A_i / (w d_i).
        let mut best: Option<(usize, ZSqrt2)> = None;
        for (i, side) in sides.iter().enumerate() {
            let d = &dirs[i];
            if d.sign() <= 0 {
                continue;
            }
            let a = side
                .offset
                .mul(&p.w)
                .sub(&side.normal.0.mul(&p.x))
                .sub(&side.normal.1.mul(&p.y));
            match a.sign() {
                -1 => return Err(Error::OutsideOctagon),
                0 => return Err(Error::SingularHit { crossing: step }),
                _ => {}
            }
            let better = match &best {
                None => true,
                Some((j, a_best)) => {
                    // t_i < t_best  ⟺  A_i d_best < A_best d_i (d's positive).
                    a.mul(&dirs[*j]).sub(&a_best.mul(d)).sign() < 0
                }
            };
            if better {
                best = Some((i, a));
            }
        }
        let (side_idx, a) = best.ok_or(Error::ZeroDirection)?;
        let d = &dirs[side_idx];
        // Crossing point q = ((x d + A wx), (y d + A wy), w d).
        let q = ProjPlanar {
            x: p.x.mul(d).add(&a.mul(&wx)),
            y: p.y.mul(d).add(&a.mul(&wy)),
            w: p.w.mul(d),
        };
        let side = &sides[side_idx];
        for v in [&side.vertex_a, &side.vertex_b] {
            if q.x.sub(&v.0.mul(&q.w)).is_zero() && q.y.sub(&v.1.mul(&q.w)).is_zero() {
                return Err(Error::SingularHit { crossing: step });
            }
        }
        let label = SIDES[side_idx].label;
        letters.push(label);
        crossings.push(Crossing {
            x: q.x_exact(),
            y: q.y_exact(),
            side: side_idx,
            label,
        });
        // Re-enter through the opposite side.
        p = ProjPlanar {
            x: q.x.add(&side.translation.0.mul(&q.w)),
            y: q.y.add(&side.translation.1.mul(&q.w)),
            w: q.w,
        };
        if step % 16 == 15 {
            p.reduce_content();
        }
    }

    Ok(TraceResult { word: Word::new(letters), crossings })
}

/// Convenience: the cutting-sequence prefix alone.
pub fn cutting_sequence(traj: &Trajectory, n: usize) -> Result<Word, Error> {
    trace(traj, n).map(|r| r.word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projline::ProjPoint;
    use crate::surface::{PointLocation, SurfacePoint};

    fn start(px: i64, pq: i64, py: i64, qy: i64) -> SurfacePoint {
        SurfacePoint::new(QSqrt2::rational(px, pq), QSqrt2::rational(py, qy)).unwrap()
    }

    #[test]
    fn horizontal_trajectory_reads_only_c() {
        let traj = Trajectory::new(start(1, 7, 2, 7), QSqrt2::one(), QSqrt2::zero()).unwrap();
        let result = trace(&traj, 12).unwrap();
        assert_eq!(result.word.to_string(), "CCCCCCCCCCCC");
        for c in &result.crossings {
            assert_eq!(c.side, 7);
        }
    }

    #[test]
    fn aiming_at_a_vertex_is_singular() {
        let traj = Trajectory::new(
            SurfacePoint::origin(),
            QSqrt2::one(),
            QSqrt2::silver(),
        )
        .unwrap();
        assert!(matches!(trace(&traj, 5), Err(Error::SingularHit { crossing: 0 })));
    }

    #[test]
    fn cylinder_periodicity() {
        // Horizontal from a vertical-side midpoint height: one crossing of
        // C returns to the start point; the word is a run of C's.
        let p = SurfacePoint::new(-QSqrt2::silver(), QSqrt2::zero()).unwrap();
        assert_eq!(p.location, PointLocation::OnSide(3));
        let traj = Trajectory::new(p.clone(), QSqrt2::one(), QSqrt2::zero()).unwrap();
        let result = trace(&traj, 2).unwrap();
        assert_eq!(result.word.to_string(), "CC");
        // The exit point maps back to the start representative.
        let after = SurfacePoint::new(
            &result.crossings[0].x + &SIDES[result.crossings[0].side].translation.0,
            &result.crossings[0].y + &SIDES[result.crossings[0].side].translation.1,
        )
        .unwrap();
        assert!(after.same_surface_point(&p));
    }

    #[test]
    fn crossings_lie_exactly_on_their_sides() {
        let traj = Trajectory::from_u(
            start(1, 9, -2, 11),
            &ProjPoint::from_u(QSqrt2::from_parts(14, 5, 1, 3)),
        )
        .unwrap();
        let result = trace(&traj, 120).unwrap();
        for c in &result.crossings {
            let side = &SIDES[c.side];
            let residual = &(&side.normal.0 * &c.x) + &(&side.normal.1 * &c.y) - &side.offset;
            assert!(residual.is_zero(), "incidence residual must vanish");
        }
    }

    #[test]
    fn traced_words_are_admissible_in_their_sector_diagram() {
        let cases = [
            (QSqrt2::from_parts(3, 1, 1, 10), 0usize),
            (QSqrt2::from_parts(3, 2, 1, 5), 1),
            (QSqrt2::from_parts(1, 5, 1, 7), 3),
            (QSqrt2::from_parts(-5, 4, -1, 3), 6),
        ];
        for (u, expected_sector) in cases {
            let d = ProjPoint::from_u(u);
            assert_eq!(crate::projline::sector_of(&d), expected_sector);
            let traj = Trajectory::from_u(start(1, 8, 1, 9), &d).unwrap();
            let word = cutting_sequence(&traj, 140).unwrap();
            assert!(
                crate::symbolic::is_admissible(&word, expected_sector),
                "direction {:?}",
                d
            );
        }
    }
}
