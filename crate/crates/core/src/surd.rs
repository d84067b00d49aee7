//! Exact real numbers of the form `c₁ + c₂√m₂ + c₃√m₃ + …` with rational
//! coefficients and distinct squarefree radicands.
//!
//! Every such sum lives in a multiquadratic field `Q(√p₁, …, √pₙ)`, which is
//! closed under the field operations, and the square roots of distinct
//! squarefree integers are linearly independent over `Q`. The representation
//! is therefore canonical: two values are equal iff their term maps are equal.
//!
//! Sign determination never touches floating point. A value is split as
//! `a + b√p` for the largest prime `p` occurring in any radicand, where `a`
//! and `b` do not involve `√p`; the sign follows from the signs of `a`, `b`
//! and, when they disagree, from the sign of `a² − p·b²`, which involves one
//! prime fewer.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Splits `n` into `(s, r)` with `n = s²·r` and `r` squarefree.
pub fn squarefree_decompose(mut n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut outside = 1u64;
    let mut inside = 1u64;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        let mut e = 0u32;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        outside *= d.pow(e / 2);
        if e % 2 == 1 {
            inside *= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (outside, inside * n)
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && squarefree_decompose(n).0 == 1
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut best = 1;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        while n.is_multiple_of(d) {
            n /= d;
            best = d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        best = n;
    }
    best
}

/// An exact element of a multiquadratic extension of `Q`.
///
/// Keys of the term map are squarefree radicands (`1` is the rational part);
/// zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: BTreeMap<u64, BigRational>,
}

impl Surd {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::term(q, 1)
    }

    /// `coeff·√radicand`; the radicand need not be squarefree.
    pub fn term(coeff: BigRational, radicand: u64) -> Self {
        let mut out = Self::zero();
        if coeff.is_zero() || radicand == 0 {
            return out;
        }
        let (outside, inside) = squarefree_decompose(radicand);
        out.terms.insert(
            inside,
            coeff * BigRational::from_integer(BigInt::from(outside)),
        );
        out
    }

    pub fn sqrt(radicand: u64) -> Self {
        Self::term(BigRational::one(), radicand)
    }

    /// `p + q·√d`, the single-radicand form.
    pub fn quadratic(p: BigRational, q: BigRational, d: u64) -> Self {
        Self::from_rational(p) + Self::term(q, d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&m| m == 1)
    }

    pub fn rational_part(&self) -> BigRational {
        self.coefficient(1)
    }

    /// Coefficient of `√m` for squarefree `m` (zero when absent).
    pub fn coefficient(&self, m: u64) -> BigRational {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The value minus its rational part.
    pub fn irrational_part(&self) -> Surd {
        Surd {
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| m != 1)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.rational_part())
    }

    /// Squarefree radicands with a nonzero coefficient, excluding `1`.
    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied().filter(|&m| m != 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    fn largest_prime(&self) -> Option<u64> {
        self.radicands().map(largest_prime_factor).max()
    }

    /// Writes `self = a + b·√p` where neither `a` nor `b` involves `√p`.
    fn split(&self, p: u64) -> (Surd, Surd) {
        let mut a = Surd::zero();
        let mut b = Surd::zero();
        for (&m, c) in &self.terms {
            if m % p == 0 {
                b.terms.insert(m / p, c.clone());
            } else {
                a.terms.insert(m, c.clone());
            }
        }
        (a, b)
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let Some(p) = self.largest_prime() else {
            let q = self.rational_part();
            return if q.is_positive() {
                1
            } else if q.is_negative() {
                -1
            } else {
                0
            };
        };
        let (a, b) = self.split(p);
        let sa = a.signum();
        let sb = b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let p_surd = Surd::from_integer(p as i64);
        let norm = &(&a * &a) - &(&p_surd * &(&b * &b));
        if sa > 0 {
            norm.signum()
        } else {
            -norm.signum()
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Surd {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Surd> {
        if self.is_zero() {
            return None;
        }
        let Some(p) = self.largest_prime() else {
            return Some(Surd::from_rational(self.rational_part().recip()));
        };
        let (a, b) = self.split(p);
        let conj = &a - &(&b * &Surd::sqrt(p));
        let norm = self * &conj;
        norm.inv().map(|n| &conj * &n)
    }

    pub fn checked_div(&self, rhs: &Surd) -> Option<Surd> {
        rhs.inv().map(|r| self * &r)
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&m, c)| c.to_f64().unwrap_or(f64::NAN) * (m as f64).sqrt())
            .sum()
    }

    /// Parses `"p/q"`, `"p/q+r/s√"`, `"1+√2-3/2√5"` and similar.
    ///
    /// A `√` with no radicand after it refers to `default_radicand`.
    pub fn parse_with_radicand(input: &str, default_radicand: Option<u64>) -> Result<Self> {
        let cleaned: String = input
            .replace("sqrt", "√")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if cleaned.is_empty() {
            return Err(Error::Parse(format!("empty number `{input}`")));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in cleaned.char_indices() {
            if i > start && (ch == '+' || ch == '-') {
                pieces.push(&cleaned[start..i]);
                start = i;
            }
        }
        pieces.push(&cleaned[start..]);
        let mut total = Surd::zero();
        for piece in pieces {
            total += parse_term(piece, default_radicand)
                .map_err(|e| Error::Parse(format!("in `{input}`: {e}")))?;
        }
        Ok(total)
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad integer `{num}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad integer `{den}`"))?;
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(num, den))
}

fn parse_term(piece: &str, default_radicand: Option<u64>) -> std::result::Result<Surd, String> {
    let (negative, body) = match piece.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, piece.strip_prefix('+').unwrap_or(piece)),
    };
    if body.is_empty() {
        return Err(format!("dangling sign in `{piece}`"));
    }
    let value = match body.split_once('√') {
        None => Surd::from_rational(parse_rational(body)?),
        Some((coeff, radicand)) => {
            let coeff = coeff.trim_end_matches(['*', '·']);
            let coeff = if coeff.is_empty() {
                BigRational::one()
            } else {
                parse_rational(coeff)?
            };
            let radicand = radicand.trim_start_matches('(').trim_end_matches(')');
            let d = if radicand.is_empty() {
                default_radicand.ok_or("`√` without a radicand and none declared")?
            } else {
                radicand
                    .parse::<u64>()
                    .map_err(|_| format!("bad radicand `{radicand}`"))?
            };
            Surd::term(coeff, d)
        }
    };
    Ok(if negative { -value } else { value })
}

impl FromStr for Surd {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Surd::parse_with_radicand(s, None)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&m, c) in &self.terms {
            let mut body = if m == 1 {
                fmt_rational(&c.abs())
            } else if c.abs().is_one() {
                format!("√{m}")
            } else {
                format!("{}√{m}", fmt_rational(&c.abs()))
            };
            if c.is_negative() {
                body.insert(0, '-');
            } else if !first {
                body.insert(0, '+');
            }
            f.write_str(&body)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<i64> for Surd {
    fn from(n: i64) -> Self {
        Surd::from_integer(n)
    }
}

impl From<BigRational> for Surd {
    fn from(q: BigRational) -> Self {
        Surd::from_rational(q)
    }
}

impl AddAssign<&Surd> for Surd {
    fn add_assign(&mut self, rhs: &Surd) {
        for (&m, c) in &rhs.terms {
            let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(&m);
            }
        }
    }
}

impl AddAssign for Surd {
    fn add_assign(&mut self, rhs: Surd) {
        *self += &rhs;
    }
}

impl SubAssign<&Surd> for Surd {
    fn sub_assign(&mut self, rhs: &Surd) {
        *self += &(-rhs);
    }
}

impl Neg for &Surd {
    type Output = Surd;

    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for Surd {
    type Output = Surd;

    fn neg(self) -> Surd {
        -&self
    }
}

impl Add for &Surd {
    type Output = Surd;

    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Surd {
    type Output = Surd;

    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Surd {
    type Output = Surd;

    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &rhs.terms {
                // √m1·√m2 = g·√((m1/g)(m2/g)) with g = gcd(m1, m2)
                let g = m1.gcd(&m2);
                let m = (m1 / g) * (m2 / g);
                let c = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                let entry = out.terms.entry(m).or_insert_with(BigRational::zero);
                *entry += c;
                if entry.is_zero() {
                    out.terms.remove(&m);
                }
            }
        }
        out
    }
}

impl Div for &Surd {
    type Output = Surd;

    /// Panics on division by zero, like the rational types it wraps.
    fn div(self, rhs: &Surd) -> Surd {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident::$method:ident),*) => {$(
        impl $tr for Surd {
            type Output = Surd;
            fn $method(self, rhs: Surd) -> Surd {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Surd> for Surd {
            type Output = Surd;
            fn $method(self, rhs: &Surd) -> Surd {
                (&self).$method(rhs)
            }
        }
        impl $tr<Surd> for &Surd {
            type Output = Surd;
            fn $method(self, rhs: Surd) -> Surd {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Sum for Surd {
    fn sum<I: Iterator<Item = Surd>>(iter: I) -> Surd {
        iter.fold(Surd::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Surd> for Surd {
    fn sum<I: Iterator<Item = &'a Surd>>(iter: I) -> Surd {
        iter.fold(Surd::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn s(text: &str) -> Surd {
        text.parse().unwrap()
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decompose(12), (2, 3));
        assert_eq!(squarefree_decompose(72), (6, 2));
        assert_eq!(squarefree_decompose(1), (1, 1));
        assert_eq!(squarefree_decompose(97), (1, 97));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(18));
        assert_eq!(Surd::sqrt(8), Surd::term(q(2, 1), 2));
        assert_eq!(Surd::sqrt(9), Surd::from_integer(3));
    }

    #[test]
    fn quadratic_signs() {
        // -1 + √2 > 0 since 1 < 2
        assert_eq!(Surd::quadratic(q(-1, 1), q(1, 1), 2).signum(), 1);
        // 2 - 2√2 < 0 since 4 < 8
        assert_eq!(Surd::quadratic(q(2, 1), q(-2, 1), 2).signum(), -1);
        assert_eq!(Surd::quadratic(q(0, 1), q(0, 1), 2).signum(), 0);
        // 7 - 5√2: 49 vs 50
        assert_eq!(s("7-5√2").signum(), -1);
        assert_eq!(s("-7+5√2").signum(), 1);
        // 17/12 - √2: 289 vs 288
        assert_eq!(s("17/12-√2").signum(), 1);
    }

    #[test]
    fn multiquadratic_signs() {
        // √2 + √3 - √10 ≈ -0.016
        assert_eq!(s("√2+√3-√10").signum(), -1);
        // √2 + √3 - √5 - 1/2 ≈ 0.41
        assert_eq!(s("√2+√3-√5-1/2").signum(), 1);
        // √5 + √6 - √2 - √3 - 3/2 ≈ 0.039
        assert_eq!(s("√5+√6-√2-√3-3/2").signum(), 1);
    }

    #[test]
    fn field_operations() {
        let a = s("1+√2");
        let b = s("1-√2");
        assert_eq!(&a * &b, Surd::from_integer(-1));
        assert_eq!(a.inv().unwrap(), s("-1+√2"));
        let c = s("√2+√3");
        let ci = c.inv().unwrap();
        assert_eq!(&c * &ci, Surd::one());
        assert_eq!(ci, s("√3-√2"));
        assert_eq!(&Surd::sqrt(6) * &Surd::sqrt(10), Surd::term(q(2, 1), 15));
        assert!(Surd::zero().inv().is_none());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(
            Surd::parse_with_radicand("0+1√", Some(2)).unwrap(),
            Surd::sqrt(2)
        );
        assert_eq!(
            Surd::parse_with_radicand("1/2+3/4√", Some(5)).unwrap(),
            Surd::quadratic(q(1, 2), q(3, 4), 5)
        );
        assert_eq!(s("-3/6"), Surd::from_rational(q(-1, 2)));
        assert_eq!(s("2*sqrt3"), Surd::term(q(2, 1), 3));
        assert_eq!(
            Surd::parse_with_radicand("1+√", Some(0)).unwrap(),
            Surd::one()
        );
        assert!("√".parse::<Surd>().is_err());
        assert!("1/0".parse::<Surd>().is_err());
        assert!("abc".parse::<Surd>().is_err());
        assert!("".parse::<Surd>().is_err());
        assert!("1+".parse::<Surd>().is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(s("1+√2").to_string(), "1+√2");
        assert_eq!(s("-1/2√3").to_string(), "-1/2√3");
        assert_eq!(s("√2-1").to_string(), "-1+√2");
        assert_eq!(Surd::zero().to_string(), "0");
        assert_eq!(s("3/2-2√5+√7").to_string(), "3/2-2√5+√7");
    }

    fn arb_surd() -> impl Strategy<Value = Surd> {
        let radicands = prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 15]);
        prop::collection::vec((radicands, -20i64..20, 1i64..6), 0..4).prop_map(|terms| {
            terms
                .into_iter()
                .map(|(m, n, d)| Surd::term(q(n, d), m))
                .sum()
        })
    }

    proptest! {
        #[test]
        fn sign_agrees_with_float_when_far_from_zero(x in arb_surd()) {
            let approx = x.to_f64();
            if approx.abs() > 1e-6 {
                prop_assert_eq!(x.signum() as f64, approx.signum());
            }
        }

        #[test]
        fn display_parse_roundtrip(x in arb_surd()) {
            prop_assert_eq!(x.to_string().parse::<Surd>().unwrap(), x);
        }

        #[test]
        fn inverse_is_inverse(x in arb_surd()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inv().unwrap(), Surd::one());
        }

        #[test]
        fn sign_is_additive_order(x in arb_surd(), y in arb_surd()) {
            if x.is_positive() && y.is_positive() {
                prop_assert!((&x + &y).is_positive());
                prop_assert!((&x * &y).is_positive());
            }
        }
    }
}
