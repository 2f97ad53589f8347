//! Laurent polynomials in one variable `q` with integer coefficients.

use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QPolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{dividend} is not exactly divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
}

/// Dense Laurent polynomial: `coeffs[k]` is the coefficient of `q^(low + k)`.
///
/// Canonical form: no zero coefficient at either end, and the zero polynomial
/// is `low = 0, coeffs = []`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    low: i32,
    coeffs: Vec<i64>,
}

fn ck_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("q-polynomial coefficient overflow")
}

fn ck_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("q-polynomial coefficient overflow")
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, exp: i32) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    /// `1 + q^k`.
    pub fn one_plus_q_pow(k: i32) -> Self {
        Self::one() + Self::q_pow(k)
    }

    /// `1 - q^k`.
    pub fn one_minus_q_pow(k: i32) -> Self {
        Self::one() - Self::q_pow(k)
    }

    pub fn from_coeffs(low: i32, coeffs: Vec<i64>) -> Self {
        let mut p = QPoly { low, coeffs };
        p.normalize();
        p
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let terms: Vec<(i32, i64)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = ck_add(*slot, c);
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[k as usize]
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| (self.low + k as i32, c))
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.low >= 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn eval_at_one(&self) -> i128 {
        self.coeffs.iter().map(|&c| c as i128).sum()
    }

    pub fn eval(&self, x: i64) -> Option<i128> {
        if self.low < 0 && x == 0 {
            return None;
        }
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x as i128)?.checked_add(c as i128)?;
        }
        if self.low >= 0 {
            acc.checked_mul((x as i128).checked_pow(self.low as u32)?)
        } else {
            let d = (x as i128).checked_pow((-self.low) as u32)?;
            (acc % d == 0).then(|| acc / d)
        }
    }

    /// `q^n * p(1/q)`.
    pub fn reflect(&self, n: i32) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(hi) => {
                let mut c = self.coeffs.clone();
                c.reverse();
                Self::from_coeffs(n - hi, c)
            }
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        QPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_coeffs(
            self.low,
            self.coeffs.iter().map(|&c| ck_mul(c, k)).collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact quotient `self / divisor`; fails if the remainder is nonzero.
    ///
    /// The divisor's lowest coefficient must divide each step of the
    /// elimination, which holds for the unit-leading divisors used here.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly, QPolyError> {
        if divisor.is_zero() {
            return Err(QPolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let not_div = || QPolyError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let dl = divisor.coeffs.len();
        if self.coeffs.len() < dl {
            return Err(not_div());
        }
        let lead = divisor.coeffs[0];
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dl + 1;
        let mut quot = vec![0i64; qlen];
        // eliminate from the low end
        for k in 0..qlen {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            if c % lead != 0 {
                return Err(not_div());
            }
            let f = c / lead;
            quot[k] = f;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = ck_add(rem[k + j], -ck_mul(f, d));
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(not_div());
        }
        Ok(Self::from_coeffs(self.low - divisor.low, quot))
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let var = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ if latex => format!("q^{{{e}}}"),
                _ => format!("q^{e}"),
            };
            if var.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{mag}{var}"));
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl<'a> Add for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &'a QPoly) -> QPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = min(self.low, rhs.low);
        let hi = max(self.max_exp().unwrap(), rhs.max_exp().unwrap());
        let mut c = vec![0i64; (hi - lo + 1) as usize];
        for p in [self, rhs] {
            for (k, &x) in p.coeffs.iter().enumerate() {
                let i = (p.low - lo) as usize + k;
                c[i] = ck_add(c[i], x);
            }
        }
        QPoly::from_coeffs(lo, c)
    }
}

impl<'a> Sub for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &'a QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl<'a> Mul for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &'a QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[i + j] = ck_add(c[i + j], ck_mul(a, b));
            }
        }
        QPoly::from_coeffs(self.low + rhs.low, c)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for QPoly {
    fn product<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::one(), |a, b| &a * &b)
    }
}

/// Serialized as sorted `[exponent, coefficient]` pairs.
impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i32, i64)> = self.terms().collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(i32, i64)>::deserialize(d)?;
        Ok(QPoly::from_terms(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(pairs: &[(i32, i64)]) -> QPoly {
        QPoly::from_terms(pairs.iter().copied())
    }

    #[test]
    fn display() {
        assert_eq!(
            p(&[(5, 1), (6, 1), (8, 2), (0, -3)]).to_string(),
            "-3 + q^5 + q^6 + 2q^8"
        );
        assert_eq!(p(&[(-1, 1), (1, -1)]).to_string(), "q^-1 - q");
        assert_eq!(p(&[(12, 1)]).to_latex(), "q^{12}");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let m = p(&[(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 1), (7, 1)]);
        let quot = m.div_exact(&QPoly::one_plus_q_pow(3)).unwrap();
        assert_eq!(quot, p(&[(1, 1), (2, 1), (3, 1), (4, 1)]));
        let bad = p(&[(0, 1), (1, 1)]).div_exact(&QPoly::one_plus_q_pow(3));
        assert!(matches!(bad, Err(QPolyError::NotDivisible { .. })));
        assert_eq!(m.div_exact(&QPoly::zero()), Err(QPolyError::DivisionByZero));
        // Laurent dividend
        let l = p(&[(-1, 1), (0, 1)]);
        assert_eq!(
            l.div_exact(&QPoly::one_plus_q_pow(1)).unwrap(),
            QPoly::q_pow(-1)
        );
    }

    #[test]
    fn reflect_and_eval() {
        let m = p(&[(1, 1), (2, 1)]);
        assert_eq!(m.reflect(3), m);
        assert_eq!(m.eval_at_one(), 2);
        assert_eq!(m.eval(2), Some(6));
        assert_eq!(p(&[(-2, 4)]).eval(2), Some(1));
        assert!(!p(&[(-1, 1)]).is_polynomial());
    }

    fn arb_poly() -> impl Strategy<Value = QPoly> {
        (-4i32..4, prop::collection::vec(-5i64..6, 0..6))
            .prop_map(|(lo, c)| QPoly::from_coeffs(lo, c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn multiply_then_divide(a in arb_poly(), k in 1i32..7) {
            let d = QPoly::one_plus_q_pow(k);
            prop_assert_eq!((&a * &d).div_exact(&d).unwrap(), a);
        }
    }
}
