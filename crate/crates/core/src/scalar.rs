//! Exact coefficients: rationals and univariate polynomials in the
//! deformation parameter `r`.
//!
//! A [`Scalar`] is an element of ℚ[r] stored densely by ascending power.
//! The representation is canonical (no trailing zero coefficients), so
//! structural equality is ring equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::ParseScalarError;

/// Arbitrary-precision rational number, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for building a rational from machine integers.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or an integer. Decimal points and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseScalarError> {
    let s = s.trim();
    let bad = || ParseScalarError::new(s);
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Element of ℚ[r]; `coeffs[k]` is the coefficient of `r^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    coeffs: Vec<Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The formal parameter `r`.
    pub fn r() -> Self {
        Self {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(q: Rational) -> Self {
        Self::from_coeffs(vec![q])
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// `q · r^k`
    pub fn monomial(q: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(q);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree of the polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when the value does not depend on `r`.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The value as a rational if it does not depend on `r`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Evaluates at `r = value` (Horner).
    pub fn specialize(&self, value: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * value + c)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplication by `r`.
    pub fn mul_r(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Scalar) -> (Scalar, Scalar) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Scalar::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (t, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + t] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Scalar::from_coeffs(quot), Scalar::from_coeffs(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Scalar) -> Option<Scalar> {
        let (q, rem) = self.div_rem(divisor);
        rem.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Scalar, b: &Scalar) -> Scalar {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, rem) = a.div_rem(&b);
            a = b;
            b = rem;
        }
        a.monic()
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        (0..exp).fold(Scalar::one(), |acc, _| &acc * self)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::constant(q)
    }
}

impl From<&Rational> for Scalar {
    fn from(q: &Rational) -> Self {
        Scalar::constant(q.clone())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        *self = Scalar::from_coeffs(std::mem::take(&mut self.coeffs));
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        *self = Scalar::from_coeffs(std::mem::take(&mut self.coeffs));
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Scalar::from_coeffs(coeffs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// Descending powers, e.g. `1/2*r^2 + 3`, `-22/5`, `2*r`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            };
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => f.write_str(&power)?,
                (_, false) => write!(f, "{abs}*{power}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseScalarError::new(s));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && idx > start {
                terms.push(&compact[start..idx]);
                start = idx;
            }
        }
        terms.push(&compact[start..]);

        let mut out = Scalar::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            let (coeff, power) = parse_term(body).ok_or_else(|| ParseScalarError::new(s))?;
            out += &Scalar::monomial(coeff * int(sign), power);
        }
        Ok(out)
    }
}

fn parse_term(body: &str) -> Option<(Rational, usize)> {
    let (coeff, var) = match body.find('r') {
        None => return parse_rational(body).ok().map(|q| (q, 0)),
        Some(0) => (Rational::one(), body),
        Some(pos) => {
            let c = body[..pos].strip_suffix('*')?;
            (parse_rational(c).ok()?, &body[pos..])
        }
    };
    let power = match var {
        "r" => 1,
        _ => var.strip_prefix("r^")?.parse().ok()?,
    };
    Some((coeff, power))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn r_times_r_is_r_squared() {
        assert_eq!(&Scalar::r() * &Scalar::r(), Scalar::monomial(int(1), 2));
    }

    #[test]
    fn half_plus_r_plus_half() {
        let a = &Scalar::constant(ratio(1, 2)) + &Scalar::r();
        assert_eq!(&a + &Scalar::constant(ratio(1, 2)), s("r + 1"));
    }

    #[test]
    fn level_four_factor_vanishes_at_special_value() {
        // (5r + 22)/2 assembled by multiplication
        let factor =
            &(&Scalar::r().scale(&int(5)) + &Scalar::from_i64(22)) * &Scalar::constant(ratio(1, 2));
        assert!(factor.specialize(&ratio(-22, 5)).is_zero());
        assert_eq!(factor.specialize(&int(1)), ratio(27, 2));
    }

    #[test]
    fn specialize_examples() {
        assert_eq!(Scalar::r().scale(&ratio(1, 2)).specialize(&int(2)), int(1));
        assert_eq!(Scalar::r().pow(2).specialize(&int(-1)), int(1));
        // (m^3 - m)/12 * r at m = 2, r = 1
        let central = Scalar::r().scale(&ratio(8 - 2, 12));
        assert_eq!(central.specialize(&int(1)), ratio(1, 2));
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(s("3 + 1/2*r^2").to_string(), "1/2*r^2 + 3");
        assert_eq!(Scalar::constant(ratio(-22, 5)).to_string(), "-22/5");
        assert_eq!(Scalar::r().scale(&int(2)).to_string(), "2*r");
        assert_eq!(s("-r^3 + r - 1").to_string(), "-r^3 + r - 1");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "1.5", "r^", "2r", "1/0", "x"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn division_and_gcd() {
        let a = s("r^2 - 1");
        let b = s("r + 1");
        assert_eq!(a.exact_div(&b), Some(s("r - 1")));
        assert_eq!(Scalar::gcd(&a, &s("2*r - 2")), s("r - 1"));
        let (q, rem) = s("r^2 + 1").div_rem(&s("r"));
        assert_eq!((q, rem), (s("r"), s("1")));
        assert!(s("r^2 + 1").exact_div(&s("r")).is_none());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("-22/5").unwrap(), ratio(-22, 5));
        assert_eq!(parse_rational("4/2").unwrap(), int(2));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
