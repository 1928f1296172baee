//! Exact scalars: rationals, optionally extended by a single square root.
//!
//! A [`Scalar`] is `a + b·√d` with `a, b` rational and `d > 1` an integer
//! with no small square factors. When `b = 0` the radicand is dropped, so a
//! pure rational always compares equal to itself regardless of where it came
//! from. Combining two scalars that carry different radicands is a logic
//! error and panics; callers that accept user data check
//! [`Scalar::same_field`] first.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial-division bound used when extracting square factors of a radicand.
const SQUARE_FREE_TRIAL_BOUND: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    rational: BigRational,
    surd: BigRational,
    radicand: Option<BigInt>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar {
            rational: q,
            surd: BigRational::zero(),
            radicand: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` in lowest terms.
    ///
    /// Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `a + b·√d`. The radicand must be greater than one and not a perfect
    /// square; it is stored as given.
    pub fn with_surd(a: BigRational, b: BigRational, d: BigInt) -> Self {
        assert!(d > BigInt::one(), "radicand must exceed 1");
        if b.is_zero() {
            return Self::from_rational(a);
        }
        Scalar {
            rational: a,
            surd: b,
            radicand: Some(d),
        }
    }

    /// Exact square root of a non-negative rational, as `s·√d` with
    /// `d` the square-free part of `num·den`. Returns `None` for negative
    /// input.
    pub fn sqrt_rational(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        // sqrt(p/q) = sqrt(p*q) / q
        let pq = q.numer() * q.denom();
        let (square_root, free) = split_square(&pq);
        let coeff = BigRational::new(square_root, q.denom().clone());
        if free.is_one() {
            Some(Self::from_rational(coeff))
        } else {
            Some(Self::with_surd(BigRational::zero(), coeff, free))
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    pub fn radicand(&self) -> Option<&BigInt> {
        self.radicand.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_none()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.rational.is_one()
    }

    /// True when both scalars can be combined without mixing radicands.
    pub fn same_field(&self, other: &Scalar) -> bool {
        match (&self.radicand, &other.radicand) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    fn joint_radicand(&self, other: &Scalar) -> Option<BigInt> {
        match (&self.radicand, &other.radicand) {
            (Some(a), Some(b)) => {
                assert!(a == b, "mixed quadratic extensions: √{a} and √{b}");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn build(rational: BigRational, surd: BigRational, radicand: Option<BigInt>) -> Self {
        match radicand {
            Some(d) if !surd.is_zero() => Scalar {
                rational,
                surd,
                radicand: Some(d),
            },
            _ => Self::from_rational(rational),
        }
    }

    /// `a - b·√d`.
    pub fn conjugate(&self) -> Self {
        Scalar {
            rational: self.rational.clone(),
            surd: -self.surd.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Field norm `a² - d·b²`.
    pub fn norm(&self) -> BigRational {
        match &self.radicand {
            None => &self.rational * &self.rational,
            Some(d) => {
                &self.rational * &self.rational
                    - &self.surd * &self.surd * BigRational::from_integer(d.clone())
            }
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Self::build(
            &c.rational / &n,
            &c.surd / &n,
            c.radicand,
        ))
    }

    /// Exact sign of the real number `a + b·√d`.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.rational);
        let sb = sign_of(&self.surd);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with d·b²
        let d = BigRational::from_integer(self.radicand.clone().expect("surd without radicand"));
        let a2 = &self.rational * &self.rational;
        let b2d = &self.surd * &self.surd * d;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Floating approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        match &self.radicand {
            None => a,
            Some(d) => a + self.surd.to_f64().unwrap_or(f64::NAN) * d.to_f64().unwrap_or(f64::NAN).sqrt(),
        }
    }
}

fn sign_of(q: &BigRational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Writes `n = s²·f` with `f` free of square factors below the trial bound
/// (and free of a trailing perfect-square cofactor). Returns `(s, f)`.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut root = BigInt::one();
    let mut free = BigInt::one();
    let mut p: u32 = 2;
    while p <= SQUARE_FREE_TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut count = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            count += 1;
        }
        for _ in 0..count / 2 {
            root *= &bp;
        }
        if count % 2 == 1 {
            free *= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            root *= s;
        } else {
            free *= rest;
        }
    }
    (root, free)
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordering of the real numbers represented. Panics on mixed radicands.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        let d = self.joint_radicand(rhs);
        Scalar::build(&self.rational + &rhs.rational, &self.surd + &rhs.surd, d)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        let d = self.joint_radicand(rhs);
        Scalar::build(&self.rational - &rhs.rational, &self.surd - &rhs.surd, d)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let d = self.joint_radicand(rhs);
        match &d {
            None => Scalar::from_rational(&self.rational * &rhs.rational),
            Some(dv) => {
                let dq = BigRational::from_integer(dv.clone());
                let a = &self.rational * &rhs.rational + &self.surd * &rhs.surd * dq;
                let b = &self.rational * &rhs.surd + &self.surd * &rhs.rational;
                Scalar::build(a, b, d)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rational: -self.rational.clone(),
            surd: -self.surd.clone(),
            radicand: self.radicand.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Canonical rational text: `p` or `p/q` in lowest terms.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `p/q` for rationals, `p/q+r/s√d` (or `-`) for extended scalars.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radicand {
            None => write!(f, "{}", rational_string(&self.rational)),
            Some(d) => {
                let sep = if self.surd.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}√{}",
                    rational_string(&self.rational),
                    sep,
                    rational_string(&self.surd.abs()),
                    d
                )
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt2() -> Scalar {
        Scalar::with_surd(q(0, 1), q(1, 1), BigInt::from(2))
    }

    #[test]
    fn lowest_terms() {
        let x = Scalar::ratio(6, -4);
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(Scalar::ratio(4, 2).to_string(), "2");
    }

    #[test]
    fn surd_square_is_rational() {
        let s = sqrt2();
        let two = &s * &s;
        assert!(two.is_rational());
        assert_eq!(two, Scalar::from_int(2));
    }

    #[test]
    fn inverse_via_conjugate() {
        let x = Scalar::with_surd(q(3, 1), q(-1, 2), BigInt::from(5));
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, Scalar::one());
        assert!(Scalar::zero().inverse().is_none());
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(Scalar::sqrt_rational(&q(9, 4)).unwrap(), Scalar::ratio(3, 2));
        let r = Scalar::sqrt_rational(&q(8, 3)).unwrap();
        // sqrt(8/3) = sqrt(24)/3 = 2√6/3
        assert_eq!(r.radicand(), Some(&BigInt::from(6)));
        assert_eq!(r.surd_part(), &q(2, 3));
        assert_eq!(&r * &r, Scalar::ratio(8, 3));
        assert!(Scalar::sqrt_rational(&q(-1, 1)).is_none());
    }

    #[test]
    fn large_square_cofactor() {
        // 65537 is prime and above the trial bound
        let p = BigInt::from(65537u64);
        let n = &p * &p * BigInt::from(3);
        let (s, f) = split_square(&n);
        assert_eq!(s, p);
        assert_eq!(f, BigInt::from(3));
    }

    #[test]
    fn exact_sign() {
        // 3 - 2√2 > 0 since 9 > 8; 2 - 3√2 < 0 since 4 < 18
        let a = Scalar::with_surd(q(3, 1), q(-2, 1), BigInt::from(2));
        assert_eq!(a.signum(), 1);
        let b = Scalar::with_surd(q(2, 1), q(-3, 1), BigInt::from(2));
        assert_eq!(b.signum(), -1);
        assert!(sqrt2() > Scalar::ratio(141, 100));
        assert!(sqrt2() < Scalar::ratio(142, 100));
    }

    #[test]
    fn display_extension() {
        let a = Scalar::with_surd(q(1, 2), q(-3, 1), BigInt::from(7));
        assert_eq!(a.to_string(), "1/2-3√7");
        assert_eq!(sqrt2().to_string(), "0+1√2");
    }

    #[test]
    #[should_panic(expected = "mixed quadratic extensions")]
    fn mixed_fields_panic() {
        let a = sqrt2();
        let b = Scalar::with_surd(q(0, 1), q(1, 1), BigInt::from(3));
        let _ = &a + &b;
    }

    #[test]
    fn addition_two_ways() {
        // a/b + c/d == (ad + bc)/bd
        let lhs = Scalar::ratio(3, 7) + Scalar::ratio(-5, 11);
        let rhs = Scalar::ratio(3 * 11 - 5 * 7, 77);
        assert_eq!(lhs, rhs);
    }
}
