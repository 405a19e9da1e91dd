//! Exact arithmetic in the quadratic field Q(√2) and 2×2 matrix / Möbius
//! algebra over it. Everything else in the crate is built on these types.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::Error;

pub type Rat = BigRational;

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// An element a + b√2 of Q(√2), with a, b rational.
///
/// `BigRational` keeps both coordinates in lowest terms with positive
/// denominator, so values have a unique representation and `Eq` is exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub a: Rat,
    pub b: Rat,
}

impl QSqrt2 {
    pub fn new(a: Rat, b: Rat) -> Self {
        QSqrt2 { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        QSqrt2::new(Rat::from_integer(n.into()), Rat::zero())
    }

    pub fn rational(p: i64, q: i64) -> Self {
        QSqrt2::new(Rat::new(p.into(), q.into()), Rat::zero())
    }

    /// p/q + (r/s)√2 from machine integers.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64) -> Self {
        QSqrt2::new(Rat::new(p.into(), q.into()), Rat::new(r.into(), s.into()))
    }

    pub fn zero() -> Self {
        QSqrt2::from_int(0)
    }

    pub fn one() -> Self {
        QSqrt2::from_int(1)
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(Rat::zero(), Rat::one())
    }

    /// 1 + √2 = cot(π/8), the silver ratio.
    pub fn silver() -> Self {
        QSqrt2::new(Rat::one(), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the real number a + b√2, computed without floating
    /// point: when a and b disagree in sign, compare a² with 2b².
    pub fn sign(&self) -> i8 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                // a and b have opposite signs; sign(a+b√2) = sa * sign(a² − 2b²)
                let a2 = &self.a * &self.a;
                let b2 = &self.b * &self.b * Rat::from_integer(2.into());
                sa * match a2.cmp(&b2) {
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Less => -1,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Galois conjugate a − b√2.
    pub fn conj(&self) -> Self {
        QSqrt2::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm a² − 2b² (a rational).
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - Rat::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QSqrt2::new(&self.a / &n, -(&self.b / &n)))
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Double-precision value of a + b√2.
    pub fn to_float(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * SQRT2
    }
}

fn rat_sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back for numerator/denominator beyond f64 range.
        let digits = 30;
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = (r * Rat::from_integer(scale)).to_integer();
        scaled.to_f64().unwrap_or(f64::NAN) / 1e30
    })
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: &QSqrt2) -> QSqrt2 {
                (&self).$method(rhs)
            }
        }
        impl $trait<QSqrt2> for &QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}
forward_binop!(Add, add);

impl Sub<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: &QSqrt2) -> QSqrt2 {
        QSqrt2::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}
forward_binop!(Sub, sub);

impl Mul<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: &QSqrt2) -> QSqrt2 {
        let two = Rat::from_integer(2.into());
        QSqrt2::new(
            &self.a * &rhs.a + two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}
forward_binop!(Mul, mul);

impl Div<&QSqrt2> for &QSqrt2 {
    type Output = QSqrt2;
    fn div(self, rhs: &QSqrt2) -> QSqrt2 {
        self * rhs.inverse().expect("division by zero in QSqrt2")
    }
}
forward_binop!(Div, div);

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a.clone(), -self.b.clone())
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        -&self
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self - other).sign() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        }
    }
}

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QSqrt2 {
    /// Serialized as "p/q+r/s*sqrt2" (denominators of 1 omitted).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt2", fmt_rat(&self.b));
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt2", fmt_rat(&self.a), fmt_rat(&(-self.b.clone())))
        } else {
            write!(f, "{}+{}*sqrt2", fmt_rat(&self.a), fmt_rat(&self.b))
        }
    }
}

impl fmt::Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for QSqrt2 {
    type Err = Error;

    /// Accepts "p/q", "r/s*sqrt2", "p/q+r/s*sqrt2", "p/q-r/s*sqrt2",
    /// with "sqrt2" alone standing for 1*sqrt2.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty QSqrt2 literal".into()));
        }
        // Split into at most two signed terms.
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
                if ch == '-' {
                    cur.push('-');
                }
            } else {
                cur.push(ch);
            }
        }
        terms.push(cur);
        if terms.len() > 2 {
            return Err(Error::Parse(format!("too many terms in '{}'", s)));
        }
        let mut a = Rat::zero();
        let mut b = Rat::zero();
        for term in &terms {
            let (coeff_str, is_sqrt2) = if let Some(rest) = term.strip_suffix("*sqrt2") {
                (rest.to_string(), true)
            } else if term.ends_with("sqrt2") {
                let rest = term.strip_suffix("sqrt2").unwrap();
                let coeff = match rest {
                    "" => "1".to_string(),
                    "-" => "-1".to_string(),
                    other => other.trim_end_matches('*').to_string(),
                };
                (coeff, true)
            } else {
                (term.clone(), false)
            };
            let coeff: Rat = coeff_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational '{}' in '{}'", coeff_str, s)))?;
            if is_sqrt2 {
                b += coeff;
            } else {
                a += coeff;
            }
        }
        Ok(QSqrt2::new(a, b))
    }
}

/// An element a + b√2 of the ring Z[√2]. Used internally where clearing
/// denominators keeps arithmetic to plain integer operations.
#[derive(Clone, PartialEq, Eq)]
pub struct ZSqrt2 {
    pub a: BigInt,
    pub b: BigInt,
}

impl ZSqrt2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        ZSqrt2 { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        ZSqrt2::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn sign(&self) -> i8 {
        let sa = int_sign(&self.a);
        let sb = int_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                let a2 = &self.a * &self.a;
                let b2 = BigInt::from(2) * &self.b * &self.b;
                sa * match a2.cmp(&b2) {
                    std::cmp::Ordering::Greater => 1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Less => -1,
                }
            }
        }
    }

    pub fn mul(&self, rhs: &ZSqrt2) -> ZSqrt2 {
        ZSqrt2 {
            a: &self.a * &rhs.a + BigInt::from(2) * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }

    pub fn add(&self, rhs: &ZSqrt2) -> ZSqrt2 {
        ZSqrt2 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }

    pub fn sub(&self, rhs: &ZSqrt2) -> ZSqrt2 {
        ZSqrt2 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }

    pub fn neg(&self) -> ZSqrt2 {
        ZSqrt2 { a: -self.a.clone(), b: -self.b.clone() }
    }

    pub fn scale(&self, k: &BigInt) -> ZSqrt2 {
        ZSqrt2 { a: &self.a * k, b: &self.b * k }
    }

    pub fn to_qsqrt2(&self) -> QSqrt2 {
        QSqrt2::new(Rat::from_integer(self.a.clone()), Rat::from_integer(self.b.clone()))
    }

    pub fn to_float(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * SQRT2
    }

    /// Exact quotient self / rhs in Q(√2).
    pub fn div_exact(&self, rhs: &ZSqrt2) -> QSqrt2 {
        let norm = &rhs.a * &rhs.a - BigInt::from(2) * &rhs.b * &rhs.b;
        assert!(!norm.is_zero(), "division by zero in ZSqrt2");
        // self * conj(rhs) / norm(rhs)
        let num = self.mul(&ZSqrt2 { a: rhs.a.clone(), b: -rhs.b.clone() });
        QSqrt2::new(Rat::new(num.a, norm.clone()), Rat::new(num.b, norm))
    }
}

fn int_sign(n: &BigInt) -> i8 {
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Debug for ZSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}*sqrt2", self.a, self.b)
    }
}

/// Clears denominators: returns (z, d) with x = z / d, d a positive integer.
pub fn clear_denominators(x: &QSqrt2) -> (ZSqrt2, BigInt) {
    let d = num_integer::lcm(x.a.denom().clone(), x.b.denom().clone());
    let a = x.a.numer() * (&d / x.a.denom());
    let b = x.b.numer() * (&d / x.b.denom());
    (ZSqrt2 { a, b }, d)
}

/// 2×2 matrix over Q(√2), row-major: first row (a b), second row (c d).
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: QSqrt2,
    pub b: QSqrt2,
    pub c: QSqrt2,
    pub d: QSqrt2,
}

impl Mat2 {
    pub fn new(a: QSqrt2, b: QSqrt2, c: QSqrt2, d: QSqrt2) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(QSqrt2::one(), QSqrt2::zero(), QSqrt2::zero(), QSqrt2::one())
    }

    pub fn det(&self) -> QSqrt2 {
        &self.a * &self.d - &self.b * &self.c
    }

    /// True when det = ±1 (all Veech-group elements built here are).
    pub fn is_unimodular(&self) -> bool {
        let det = self.det();
        det == QSqrt2::one() || det == -QSqrt2::one()
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2::new(
            &self.a * &rhs.a + &self.b * &rhs.c,
            &self.a * &rhs.b + &self.b * &rhs.d,
            &self.c * &rhs.a + &self.d * &rhs.c,
            &self.c * &rhs.b + &self.d * &rhs.d,
        )
    }

    pub fn inverse(&self) -> Result<Mat2, Error> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = det.inverse()?;
        Ok(Mat2::new(
            &self.d * &inv,
            -(&self.b * &inv),
            -(&self.c * &inv),
            &self.a * &inv,
        ))
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    /// True iff m1 = m2 or m1 = −m2 entrywise (PGL(2) equality).
    pub fn equal_up_to_sign(&self, other: &Mat2) -> bool {
        *self == *other || *self == other.neg()
    }

    /// Image of a plane vector under the linear map.
    pub fn apply_vec(&self, x: &QSqrt2, y: &QSqrt2) -> (QSqrt2, QSqrt2) {
        (&self.a * x + &self.b * y, &self.c * x + &self.d * y)
    }

    pub fn to_floats(&self) -> [f64; 4] {
        [
            self.a.to_float(),
            self.b.to_float(),
            self.c.to_float(),
            self.d.to_float(),
        ]
    }

    /// Serialized as the 4-tuple of entry strings, row-major.
    pub fn to_strings(&self) -> [String; 4] {
        [
            self.a.to_string(),
            self.b.to_string(),
            self.c.to_string(),
            self.d.to_string(),
        ]
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

/// Which side a matrix acts on under the fractional-linear conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionSide {
    /// Left action on the inverse-slope coordinate: u ↦ (au+b)/(cu+d).
    LeftOnColumns,
    /// Right action on the boundary coordinate: x ↦ (ax+c)/(bx+d).
    /// (On the real boundary the det<0 conjugate form coincides with this.)
    RightOnRows,
}

/// A matrix together with its action side.
#[derive(Clone, Debug)]
pub struct MoebiusAction {
    pub matrix: Mat2,
    pub side: ActionSide,
}

impl MoebiusAction {
    pub fn left(matrix: Mat2) -> Self {
        MoebiusAction { matrix, side: ActionSide::LeftOnColumns }
    }

    pub fn right(matrix: Mat2) -> Self {
        MoebiusAction { matrix, side: ActionSide::RightOnRows }
    }

    /// Action in homogeneous coordinates; no pole special-casing needed.
    pub fn apply_hom(&self, x: &QSqrt2, y: &QSqrt2) -> (QSqrt2, QSqrt2) {
        let m = &self.matrix;
        match self.side {
            ActionSide::LeftOnColumns => (&m.a * x + &m.b * y, &m.c * x + &m.d * y),
            ActionSide::RightOnRows => (&m.a * x + &m.c * y, &m.b * x + &m.d * y),
        }
    }
}

fn half_sqrt2() -> QSqrt2 {
    // 1/√2 stored exactly as (1/2)√2.
    QSqrt2::new(Rat::zero(), Rat::new(1.into(), 2.into()))
}

static NU: Lazy<[Mat2; 8]> = Lazy::new(|| {
    let h = half_sqrt2();
    let one = QSqrt2::one();
    let zero = QSqrt2::zero();
    [
        Mat2::new(one.clone(), zero.clone(), zero.clone(), one.clone()),
        Mat2::new(h.clone(), h.clone(), h.clone(), -&h),
        Mat2::new(h.clone(), h.clone(), -&h, h.clone()),
        Mat2::new(zero.clone(), one.clone(), one.clone(), zero.clone()),
        Mat2::new(zero.clone(), one.clone(), -&one, zero.clone()),
        Mat2::new(-&h, h.clone(), h.clone(), h.clone()),
        Mat2::new(-&h, h.clone(), -&h, -&h),
        Mat2::new(-&one, zero.clone(), zero.clone(), one.clone()),
    ]
});

/// The isometry ν_i ∈ D₈ sending the closed sector Σ̄_i to Σ̄₀.
pub fn nu(i: usize) -> Mat2 {
    NU[i].clone()
}

/// γ = [−1, 2(1+√2); 0, 1], the orientation-reversing renormalization move.
pub fn gamma() -> Mat2 {
    Mat2::new(
        -QSqrt2::one(),
        QSqrt2::new(Rat::from_integer(2.into()), Rat::from_integer(2.into())),
        QSqrt2::zero(),
        QSqrt2::one(),
    )
}

/// The Veech shear σ = [1, 2(1+√2); 0, 1] = γν₇.
pub fn sigma() -> Mat2 {
    Mat2::new(
        QSqrt2::one(),
        QSqrt2::new(Rat::from_integer(2.into()), Rat::from_integer(2.into())),
        QSqrt2::zero(),
        QSqrt2::one(),
    )
}

/// α: reflection of the octagon at the horizontal axis.
pub fn alpha() -> Mat2 {
    Mat2::new(QSqrt2::one(), QSqrt2::zero(), QSqrt2::zero(), -QSqrt2::one())
}

/// β: reflection at the line tilted by π/8 (equals ν₁).
pub fn beta() -> Mat2 {
    nu(1)
}

/// γ_i = ν_i⁻¹ γ ν_i, the reflection fixing side E_i of the ideal octagon.
pub fn gamma_i(i: usize) -> Mat2 {
    let n = nu(i);
    let n_inv = n.inverse().expect("nu is invertible");
    n_inv.mul(&gamma()).mul(&n)
}

/// The branch matrix γν_i of the octagon Farey map on Σ̄_i.
pub fn farey_branch_matrix(i: usize) -> Mat2 {
    gamma().mul(&nu(i))
}

/// j(i) with ν_{j(i)} = ν_i⁻¹ in PGL(2): j(2)=6, j(6)=2, j(i)=i otherwise.
pub fn jmap(i: usize) -> usize {
    match i {
        2 => 6,
        6 => 2,
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q_: i64, r: i64, s: i64) -> QSqrt2 {
        QSqrt2::from_parts(p, q_, r, s)
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q(1, 1, 1, 1).sign(), 1);
        assert_eq!(QSqrt2::zero().sign(), 0);
        // 3 − 2√2: 9 > 8, so positive.
        assert_eq!(q(3, 1, -2, 1).sign(), 1);
        assert_eq!(q(-3, 1, 2, 1).sign(), -1);
        assert_eq!(q(2, 1, -2, 1).sign(), -1);
        // √2 − 1 > 0 via the squaring case.
        assert_eq!(q(-1, 1, 1, 1).sign(), 1);
    }

    #[test]
    fn sign_matches_float() {
        for p in -6..=6 {
            for r in -6..=6 {
                let x = q(p, 3, r, 5);
                let f = x.to_float();
                if f.abs() > 1e-12 {
                    assert_eq!(x.sign() as f64, f.signum(), "at {}", x);
                }
            }
        }
    }

    #[test]
    fn gamma_is_involution() {
        assert_eq!(gamma().mul(&gamma()), Mat2::identity());
    }

    #[test]
    fn nu1_is_involution() {
        assert_eq!(nu(1).mul(&nu(1)), Mat2::identity());
    }

    #[test]
    fn gamma_nu7_is_sigma() {
        assert_eq!(gamma().mul(&nu(7)), sigma());
    }

    #[test]
    fn determinant_table() {
        assert_eq!(gamma().det(), -QSqrt2::one());
        assert_eq!(sigma().det(), QSqrt2::one());
        for i in [1usize, 3, 5, 7] {
            assert_eq!(nu(i).det(), -QSqrt2::one(), "nu_{} should reflect", i);
        }
        for i in [0usize, 2, 4, 6] {
            assert_eq!(nu(i).det(), QSqrt2::one(), "nu_{} should rotate", i);
        }
    }

    #[test]
    fn equal_up_to_sign_examples() {
        assert!(nu(4).equal_up_to_sign(&nu(4).neg()));
        // ν₃ν₁⁻¹ = −ν₆ (ν₁ is an involution).
        assert!(nu(3).mul(&nu(1)).equal_up_to_sign(&nu(6)));
        assert!(!nu(1).equal_up_to_sign(&nu(2)));
    }

    #[test]
    fn dihedral_dictionary_is_total() {
        // For every i, j there is exactly one k with ν_j ν_i⁻¹ = ±ν_k.
        for i in 0..8 {
            for j in 0..8 {
                let prod = nu(j).mul(&nu(i).inverse().unwrap());
                let hits: Vec<usize> =
                    (0..8).filter(|&k| prod.equal_up_to_sign(&nu(k))).collect();
                assert_eq!(hits.len(), 1, "nu_{} nu_{}^-1", j, i);
                if i == j {
                    assert_eq!(hits[0], 0);
                } else {
                    assert_ne!(hits[0], 0);
                }
            }
        }
    }

    #[test]
    fn gamma_i_are_involutions() {
        for i in 0..8 {
            let g = gamma_i(i);
            assert_eq!(g.mul(&g), Mat2::identity(), "gamma_{}", i);
            assert_eq!(g.det(), -QSqrt2::one());
        }
    }

    #[test]
    fn jmap_matches_inverse() {
        for i in 1..8 {
            assert!(nu(i)
                .inverse()
                .unwrap()
                .equal_up_to_sign(&nu(jmap(i))));
        }
    }

    #[test]
    fn to_float_examples() {
        assert!((QSqrt2::silver().to_float() - 2.414213562373095).abs() < 1e-14);
        assert_eq!(QSqrt2::zero().to_float(), 0.0);
        assert!((q(3, 1, 3, 1).to_float() - 7.242640687119285).abs() < 1e-14);
    }

    #[test]
    fn display_parse_roundtrip() {
        let samples = [
            q(3, 2, 1, 1),
            q(0, 1, -1, 2),
            q(-7, 3, 0, 1),
            QSqrt2::zero(),
            QSqrt2::silver(),
        ];
        for x in &samples {
            let s = x.to_string();
            let back: QSqrt2 = s.parse().unwrap();
            assert_eq!(&back, x, "roundtrip of {}", s);
        }
        assert_eq!("3/2+1*sqrt2".parse::<QSqrt2>().unwrap(), q(3, 2, 1, 1));
        assert_eq!("-sqrt2".parse::<QSqrt2>().unwrap(), q(0, 1, -1, 1));
        assert_eq!("2*sqrt2-1".parse::<QSqrt2>().unwrap(), q(-1, 1, 2, 1));
    }

    #[test]
    fn zsqrt2_division_recovers_quotient() {
        let x = ZSqrt2::new(7, -3);
        let y = ZSqrt2::new(2, 5);
        let q_ = x.div_exact(&y);
        let back = &q_ * &y.to_qsqrt2();
        assert_eq!(back, x.to_qsqrt2());
    }
}
