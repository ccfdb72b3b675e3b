//! Gaussian rationals `Q(i)` with arbitrary precision.
//!
//! Every coefficient in the workspace is a [`Scalar`]. Values are kept in
//! lowest terms with a positive denominator by `num-rational`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// `re + im*i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Mul,
    Inv,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Self {
        Scalar {
            re: BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            im: BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Scalar {
                re: self.re.recip(),
                im: BigRational::zero(),
            });
        }
        let n = self.norm();
        Ok(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// `(-1)^k` as a scalar.
    pub fn sign(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        }
    }

    pub fn apply(a: &Scalar, b: &Scalar, op: ScalarOp) -> Result<Scalar, ScalarError> {
        match op {
            ScalarOp::Add => Ok(a + b),
            ScalarOp::Mul => Ok(a * b),
            ScalarOp::Inv => a.inv(),
        }
    }

    /// Small integer value if this scalar is one.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar {
            re: r,
            im: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        Scalar {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        Scalar {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar {
                re: &self.re * &o.re,
                im: BigRational::zero(),
            };
        }
        Scalar {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        let mut acc = Scalar::one();
        for x in iter {
            acc *= &x;
        }
        acc
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return f.write_str("i");
            }
            if (-self.im.clone()).is_one() {
                return f.write_str("-i");
            }
            return write!(f, "{}*i", fmt_rat(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", fmt_rat(&self.re), fmt_rat(&-self.im.clone()))
        } else {
            write!(f, "{}+{}*i", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let ok = |t: &str| {
        let t = t.strip_prefix(['+', '-']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(num) || !ok(den) || den.starts_with(['+', '-']) {
        return None;
    }
    let n = BigInt::from_str(num).ok()?;
    let d = BigInt::from_str(den).ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Parses an imaginary part written as `r*i`, `ri`, `i` or `-i`.
fn parse_imag(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let body = s.strip_suffix('i')?.trim_end();
    let body = body.strip_suffix('*').unwrap_or(body).trim_end();
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        b => parse_rat(b),
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(text: &str) -> Result<Self, ScalarError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ScalarError::Parse(text.to_string());
        if s.is_empty() {
            return Err(err());
        }
        if !s.ends_with('i') {
            return parse_rat(&s).map(Scalar::from).ok_or_else(err);
        }
        // split at the last sign that is not the leading one
        let bytes = s.as_bytes();
        let mut cut = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'*' && bytes[k - 1] != b'/' {
                cut = Some(k);
                break;
            }
        }
        match cut {
            Some(k) => {
                let re = parse_rat(&s[..k]).ok_or_else(err)?;
                let im = parse_imag(&s[k..]).ok_or_else(err)?;
                Ok(Scalar { re, im })
            }
            None => {
                let im = parse_imag(&s).ok_or_else(err)?;
                Ok(Scalar {
                    re: BigRational::zero(),
                    im,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(&s("1/2") + &s("1/3"), s("5/6"));
    }

    #[test]
    fn i_squared() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let x = s("1+1*i");
        let y = x.inv().unwrap();
        assert_eq!(y, s("1/2-1/2*i"));
        assert_eq!(&x * &y, Scalar::one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("3/6"), Scalar::from_frac(1, 2));
        assert_eq!(s("-2/4+3*i"), Scalar::gaussian((-1, 2), (3, 1)));
        assert_eq!(s("2i"), Scalar::gaussian((0, 1), (2, 1)));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for t in ["0", "7", "-5/3", "1/2-1/2*i", "3*i", "-1/7*i", "2+9/4*i"] {
            assert_eq!(s(t).to_string(), t);
        }
    }

    #[test]
    fn denominators_are_normalized() {
        let x = s("-4/8");
        assert_eq!(x.re().denom(), &BigInt::from(2));
        assert_eq!(x.to_string(), "-1/2");
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
