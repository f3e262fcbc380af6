//! Exact scalars over the Gaussian rationals `Q(i)`.
//!
//! A [`GaussianRational`] is `re + im*i` with both parts reduced rationals.
//! [`GaussianInt`] is the matching ring of integers `Z[i]`; it only exists so
//! that elimination can run fraction-free with exact divisions.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn i() -> Self {
        Self::from_parts(0, 1, 1, 1)
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(n.into()),
            im: BigRational::zero(),
        }
    }

    pub fn gaussian_integer(re: i64, im: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(re.into()),
            im: BigRational::from_integer(im.into()),
        }
    }

    /// `re_num/re_den + (im_num/im_den) i`. Panics on a zero denominator.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        GaussianRational {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    /// Least common multiple of the two denominators.
    pub(crate) fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Multiply by an integer that clears both denominators.
    pub(crate) fn to_gaussian_int(&self, multiplier: &BigInt) -> GaussianInt {
        let re = &self.re * BigRational::from_integer(multiplier.clone());
        let im = &self.im * BigRational::from_integer(multiplier.clone());
        debug_assert!(re.is_integer() && im.is_integer());
        GaussianInt {
            re: re.to_integer(),
            im: im.to_integer(),
        }
    }

    /// Square root inside `Q(i)`, when one exists.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        // (x + yi)^2 = a + bi  =>  x^2 = (a + |z|)/2, y^2 = (|z| - a)/2.
        let modulus = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(2.into());
        let x2 = (&self.re + &modulus) / &two;
        let y2 = (&modulus - &self.re) / &two;
        let x = rational_sqrt(&x2)?;
        let mut y = rational_sqrt(&y2)?;
        if !x.is_zero() && &x * &y * &two != self.im {
            y = -y;
        }
        let root = GaussianRational { re: x, im: y };
        (&root * &root == *self).then_some(root)
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational types underneath.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv().expect("division by zero in Q(i)")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for GaussianRational {
    fn sum<I: Iterator<Item = GaussianRational>>(iter: I) -> Self {
        iter.fold(GaussianRational::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Text form: `a/b`, `c/d*i`, or `a/b+c/d*i`; integer parts drop the
/// denominator and zero parts are omitted (`0` for zero).
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "" } else { "+" };
                write!(
                    f,
                    "{}{}{}*i",
                    fmt_rational(&self.re),
                    sign,
                    fmt_rational(&self.im)
                )
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational> {
    let bad = |msg: &str| Error::parse(format!("scalar {whole:?}"), msg);
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .trim_start_matches('+')
        .parse()
        .map_err(|_| bad("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| bad("bad denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn parse_imag_coefficient(s: &str, whole: &str) -> Result<BigRational> {
    let s = s.strip_suffix('*').unwrap_or(s);
    match s {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => parse_rational(s, whole),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts the canonical text form and a few lenient spellings
    /// (`i`, `-i`, `2i`, surrounding whitespace).
    fn from_str(raw: &str) -> Result<Self> {
        let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(format!("scalar {raw:?}"), "empty scalar"));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(parse_rational(&s, raw)?.into());
        };
        // split point: last sign that is not the leading character
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (parse_rational(&body[..k], raw)?, &body[k..]),
            None => (BigRational::zero(), body),
        };
        let im = parse_imag_coefficient(im, raw)?;
        Ok(GaussianRational { re, im })
    }
}

/// Element of `Z[i]`, used by fraction-free elimination.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub(crate) struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn one() -> Self {
        GaussianInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn sub(&self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    /// Division known to be exact (Bareiss invariant).
    pub fn div_exact(&self, rhs: &GaussianInt) -> GaussianInt {
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let re = &self.re * &rhs.re + &self.im * &rhs.im;
        let im = &self.im * &rhs.re - &self.re * &rhs.im;
        debug_assert!((&re % &norm).is_zero() && (&im % &norm).is_zero());
        GaussianInt {
            re: re / &norm,
            im: im / norm,
        }
    }

    pub fn to_rational(&self) -> GaussianRational {
        GaussianRational {
            re: BigRational::from_integer(self.re.clone()),
            im: BigRational::from_integer(self.im.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_integer(-1));
    }

    #[test]
    fn text_form_canonical() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::from_parts(2, 4, 0, 1).to_string(), "1/2");
        assert_eq!(GaussianRational::i().to_string(), "1*i");
        assert_eq!(GaussianRational::from_parts(-1, 3, -5, 2).to_string(), "-1/3-5/2*i");
        assert_eq!(GaussianRational::from_parts(3, 1, 1, 7).to_string(), "3+1/7*i");
    }

    #[test]
    fn parse_lenient_forms() {
        assert_eq!(q("i"), GaussianRational::i());
        assert_eq!(q("-i"), -GaussianRational::i());
        assert_eq!(q("2i"), GaussianRational::gaussian_integer(0, 2));
        assert_eq!(q(" 1 - i "), GaussianRational::gaussian_integer(1, -1));
        assert_eq!(q("-1/2+3/4*i"), GaussianRational::from_parts(-1, 2, 3, 4));
        assert_eq!(q("6/4"), GaussianRational::from_parts(3, 2, 0, 1));
        assert_eq!(q("+3"), GaussianRational::from_integer(3));
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<GaussianRational>().is_err());
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
        assert!("1+x*i".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn inverse_and_division() {
        let z = q("3-4*i");
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(&q("1+i") / &q("1-i"), GaussianRational::i());
    }

    #[test]
    fn square_roots() {
        assert_eq!(q("-1").sqrt().map(|r| &r * &r), Some(q("-1")));
        assert_eq!(q("2*i").sqrt().map(|r| &r * &r), Some(q("2*i")));
        assert_eq!(q("-5/4+3*i").sqrt().map(|r| &r * &r), Some(q("-5/4+3*i")));
        assert!(q("2").sqrt().is_none());
        assert_eq!(q("0").sqrt(), Some(q("0")));
    }

    #[test]
    fn gaussian_int_exact_division() {
        let a = GaussianInt { re: 3.into(), im: 4.into() };
        let b = GaussianInt { re: 1.into(), im: (-2).into() };
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&b), a);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalar() -> impl Strategy<Value = GaussianRational> {
            (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
                .prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
        }

        proptest! {
            #[test]
            fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a + &b, &b + &a);
                prop_assert_eq!(&a - &a, GaussianRational::zero());
                if let Some(inv) = a.inv() {
                    prop_assert_eq!(&a * &inv, GaussianRational::one());
                }
            }

            #[test]
            fn text_form_round_trips(a in scalar()) {
                let text = a.to_string();
                prop_assert_eq!(text.parse::<GaussianRational>().unwrap(), a);
            }

            #[test]
            fn parts_are_reduced(a in scalar()) {
                prop_assert!(a.re().denom().is_positive());
                prop_assert!(a.re().numer().gcd(a.re().denom()).is_one());
                prop_assert!(a.im().numer().gcd(a.im().denom()).is_one());
            }
        }
    }
}
