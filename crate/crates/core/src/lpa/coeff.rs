use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A Gaussian rational `re + im·i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Coeff {
    re: BigRational,
    im: BigRational,
}

impl Coeff {
    pub fn new(re: BigRational, im: BigRational) -> Coeff {
        Coeff { re, im }
    }

    pub fn real(re: BigRational) -> Coeff {
        Coeff {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Coeff {
        Coeff::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d`; panics on `d = 0`.
    pub fn from_ratio(n: i64, d: i64) -> Coeff {
        Coeff::real(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> Coeff {
        Coeff {
            re: BigRational::new(re.0.into(), re.1.into()),
            im: BigRational::new(im.0.into(), im.1.into()),
        }
    }

    pub fn i() -> Coeff {
        Coeff {
            re: BigRational::zero(),
            im: BigRational::one(),
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

    pub fn conj(&self) -> Coeff {
        Coeff {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        let d = self.norm_sqr();
        Some(Coeff {
            re: &self.re / &d,
            im: -(&self.im / &d),
        })
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Parses the exact string forms `p/q` or `p` of both parts.
    pub fn parse(re: &str, im: &str) -> Result<Coeff, String> {
        Ok(Coeff {
            re: parse_rational(re)?,
            im: parse_rational(im)?,
        })
    }

    /// `(re, im)` as `p/q` strings, denominator always written.
    pub fn to_strings(&self) -> (String, String) {
        (ratio_string(&self.re), ratio_string(&self.im))
    }

    /// Matrix-entry form `p/q+r/s i` (or `p/q-r/s i`).
    pub fn entry_string(&self) -> String {
        let re = ratio_string(&self.re);
        if self.im.is_negative() {
            format!("{re}-{} i", ratio_string(&-&self.im))
        } else {
            format!("{re}+{} i", ratio_string(&self.im))
        }
    }

    pub fn parse_entry(s: &str) -> Result<Coeff, String> {
        let body = s
            .trim()
            .strip_suffix('i')
            .map(str::trim_end)
            .ok_or_else(|| format!("matrix entry `{s}` lacks the imaginary unit"))?;
        // split at the sign that separates the parts (not a leading sign)
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .last()
            .map(|(i, _)| i)
            .ok_or_else(|| format!("matrix entry `{s}` is not of the form a+b i"))?;
        let (re, im) = body.split_at(split);
        let im = im.strip_prefix('+').unwrap_or(im);
        Coeff::parse(re, im)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|e| format!("bad rational `{s}`: {e}"))?;
    let d = BigInt::from_str(d.trim()).map_err(|e| format!("bad rational `{s}`: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Zero for Coeff {
    fn zero() -> Coeff {
        Coeff::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Coeff {
    fn one() -> Coeff {
        Coeff::from_int(1)
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Coeff {
        Coeff::from_int(n)
    }
}

impl<'a> Add<&'a Coeff> for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &'a Coeff) -> Coeff {
        Coeff {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a Coeff> for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &'a Coeff) -> Coeff {
        Coeff {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a Coeff> for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &'a Coeff) -> Coeff {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Coeff::real(&self.re * &rhs.re);
        }
        Coeff {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: Coeff) -> Coeff {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Coeff> for Coeff {
            type Output = Coeff;
            fn $m(self, rhs: &'a Coeff) -> Coeff {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Coeff> for Coeff {
    fn mul_assign(&mut self, rhs: &Coeff) {
        *self = &*self * rhs;
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "({}-{}i)", self.re, -&self.im),
            (false, false) => write!(f, "({}+{}i)", self.re, self.im),
        }
    }
}
