//! Closed-form graded multiplicities and the tests built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qpoly::QPoly;
use crate::rootdata::RootSystem;
use crate::weight::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("{0} is simply laced and has no highest short root")]
    SimplyLaced(String),
    #[error("{what} is not a polynomial with nonnegative coefficients: {value}")]
    NotPolynomial { what: String, value: String },
    #[error("invalid partition: {0}")]
    BadPartition(String),
}

/// Weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, ClosedFormError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(ClosedFormError::BadPartition(format!("{parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = (1..=self.parts[0])
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts: cols }
    }

    /// Boxes `(i, j)`, 1-based row and column.
    pub fn boxes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p).map(move |j| (i as u32 + 1, j)))
    }

    /// Arm plus leg plus one.
    pub fn hook(&self, i: u32, j: u32) -> u32 {
        let arm = self.parts[i as usize - 1] - j;
        let leg = self.parts[i as usize..].iter().filter(|&&p| p >= j).count() as u32;
        arm + leg + 1
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = ClosedFormError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ClosedFormError::BadPartition(s.to_string()))?;
        Partition::new(parts)
    }
}

fn require_short(rs: &RootSystem) -> Result<(), ClosedFormError> {
    if rs.is_simply_laced() {
        Err(ClosedFormError::SimplyLaced(rs.label()))
    } else {
        Ok(())
    }
}

fn check_poly(what: &str, p: QPoly) -> Result<QPoly, ClosedFormError> {
    if p.is_polynomial() && p.is_nonnegative() {
        Ok(p)
    } else {
        Err(ClosedFormError::NotPolynomial {
            what: what.to_string(),
            value: p.to_string(),
        })
    }
}

/// `prod_{i <= k} (1 + q^{2 m_i + 1})` over the first `k` exponents.
fn exponent_product(rs: &RootSystem, k: usize) -> QPoly {
    rs.exponents[..k]
        .iter()
        .map(|&m| QPoly::one_plus_q_pow(2 * m as i32 + 1))
        .product()
}

fn one_plus_q_inv() -> QPoly {
    QPoly::from_terms([(-1, 1), (0, 1)])
}

/// Graded multiplicity of the little adjoint module:
/// `(1 + q^-1) prod_{i<r} (1 + q^{2m_i+1}) q^{m_r + 1 - 2(r_s - 1) r_l} (1 - q^{4 r_l r_s}) / (1 - q^{4 r_l})`.
pub fn bazlov_gm(rs: &RootSystem) -> Result<QPoly, ClosedFormError> {
    require_short(rs)?;
    let r = rs.rank;
    let (rl, rsh) = (rs.r_l as i32, rs.r_s as i32);
    let m_r = *rs.exponents.last().unwrap() as i32;
    let ratio = QPoly::one_minus_q_pow(4 * rl * rsh)
        .div_exact(&QPoly::one_minus_q_pow(4 * rl))
        .expect("1 - q^{ab} is divisible by 1 - q^a");
    let p = &(&(&one_plus_q_inv() * &exponent_product(rs, r - 1))
        * &QPoly::q_pow(m_r + 1 - 2 * (rsh - 1) * rl))
        * &ratio;
    check_poly("GM_theta_s", p)
}

/// Degree of the lowest generator of the little adjoint covariants in `S(h)`.
pub fn n0(rs: &RootSystem) -> Result<u32, ClosedFormError> {
    require_short(rs)?;
    let m_r = *rs.exponents.last().unwrap();
    assert!(
        m_r % 2 == 1,
        "largest exponent of a non-simply-laced type is odd"
    );
    let half = m_r.div_ceil(2);
    if rs.r_s == 1 {
        return Ok(half);
    }
    let (rsh, rl) = (rs.r_s as u32, rs.r_l as u32);
    assert_eq!(
        half - (rsh - 1) * rl,
        2 * rl,
        "n0 branches disagree for {}",
        rs.label()
    );
    Ok(2 * rl)
}

/// `(1 + q^-1) prod_{i<r} (1 + q^{2m_i+1}) q^{2 n0} sum_{j < r_s} q^{2 j n0}`.
pub fn bazlov_product_form(rs: &RootSystem) -> Result<QPoly, ClosedFormError> {
    let n = n0(rs)? as i32;
    let geometric = QPoly::from_terms((0..rs.r_s as i32).map(|j| (2 * j * n, 1)));
    let p = &(&(&one_plus_q_inv() * &exponent_product(rs, rs.rank - 1)) * &QPoly::q_pow(2 * n))
        * &geometric;
    check_poly("product form", p)
}

/// Highest weight of `sl_n` attached to a partition of `n`: the coefficient
/// of `omega_i` counts the columns of length `i`.
pub fn partition_to_weight(p: &Partition) -> Weight {
    let n = p.n() as usize;
    let conj = p.conjugate();
    let mut a = vec![0i64; n - 1];
    for &len in conj.parts() {
        if (len as usize) < n {
            a[len as usize - 1] += 1;
        }
    }
    Weight::new(a)
}

/// Stembridge's hook formula for `M_lam(q)` in the exterior algebra of `sl_n`,
/// with the `q^2`-factorial read as `prod_{i<=n} (1 - q^{2i})`.
pub fn stembridge_gm(p: &Partition) -> Result<QPoly, ClosedFormError> {
    let n = p.n() as i32;
    let mut num: QPoly = (1..=n).map(|i| QPoly::one_minus_q_pow(2 * i)).product();
    let mut den = QPoly::one_plus_q_pow(1);
    for (i, j) in p.boxes() {
        let (i, j) = (i as i32, j as i32);
        num = &num * &QPoly::from_terms([(2 * i - 1, 1), (2 * j - 2, 1)]);
        den = &den * &QPoly::one_minus_q_pow(2 * p.hook(i as u32, j as u32) as i32);
    }
    let quotient = num
        .div_exact(&den)
        .map_err(|_| ClosedFormError::NotPolynomial {
            what: format!("hook formula at {p}"),
            value: "non-terminating quotient".to_string(),
        })?;
    check_poly(&format!("hook formula at {p}"), quotient)
}

/// Poincare polynomial of the invariants, `prod_i (1 + q^{2 m_i + 1})`.
pub fn invariant_poincare(rs: &RootSystem) -> QPoly {
    exponent_product(rs, rs.rank)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessVerdict {
    pub divisible: bool,
    pub quotient: Option<QPoly>,
    pub quotient_nonneg: bool,
    /// Quotient at `q = 1`, set when the quotient exists and is nonnegative.
    pub generator_count: Option<i128>,
    pub expected_count: i128,
}

impl FreenessVerdict {
    pub fn passes(&self) -> bool {
        self.divisible && self.quotient_nonneg && self.generator_count == Some(self.expected_count)
    }
}

/// Divides `m` by `prod_{i<r} (1 + q^{2 m_i + 1})` and compares the generator
/// count with `2 zero_dim`.
pub fn freeness_divisibility(m: &QPoly, rs: &RootSystem, zero_dim: u64) -> FreenessVerdict {
    let divisor = exponent_product(rs, rs.rank - 1);
    let expected_count = 2 * zero_dim as i128;
    match m.div_exact(&divisor) {
        Ok(q) => {
            let nonneg = q.is_polynomial() && q.is_nonnegative();
            FreenessVerdict {
                divisible: true,
                generator_count: nonneg.then(|| q.eval_at_one()),
                quotient: Some(q),
                quotient_nonneg: nonneg,
                expected_count,
            }
        }
        Err(_) => FreenessVerdict {
            divisible: false,
            quotient: None,
            quotient_nonneg: false,
            generator_count: None,
            expected_count,
        },
    }
}

/// Sparse polynomial in `m` variables with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct MPoly(BTreeMap<Vec<u32>, BigRational>);

impl MPoly {
    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        let e = self.0.entry(exps).or_insert_with(BigRational::zero);
        *e += c;
        self.0.retain(|_, v| !v.is_zero());
    }

    fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.0 {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn scale(&self, c: &BigRational) -> MPoly {
        let mut out = MPoly::default();
        for (e, v) in &self.0 {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::default();
        for (e, c) in &self.0 {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * BigRational::from_integer(BigInt::from(e[i])));
            }
        }
        out
    }

    /// Power sum `sum_i x_i^j`.
    fn power_sum(j: u32, m: usize) -> MPoly {
        let mut out = MPoly::default();
        for i in 0..m {
            let mut e = vec![0; m];
            e[i] = j;
            out.add_term(e, BigRational::one());
        }
        out
    }
}

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// Checks `sum_i d_i psi_k d_i psi_g = (k + g - 2) psi_{k + g - 2}` for the
/// normalized power sums `psi_j = p_j / j` in `m` variables. For `k = g = 1`
/// the right side is read as `p_0 = m`.
pub fn newton_pairing_identity_check(k: u32, g: u32, m: usize) -> bool {
    assert!(k >= 1 && g >= 1 && m >= 1);
    let psi = |j: u32| MPoly::power_sum(j, m).scale(&rat(1, j as i64));
    let (pk, pg) = (psi(k), psi(g));
    let lhs = (0..m).fold(MPoly::default(), |acc, i| {
        acc.add(&pk.derivative(i).mul(&pg.derivative(i)))
    });
    let d = k + g - 2;
    let rhs = if d == 0 {
        MPoly::power_sum(0, m)
    } else {
        psi(d).scale(&rat(d as i64, 1))
    };
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootType;

    fn sys(t: RootType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    fn poly(terms: &[(i32, i64)]) -> QPoly {
        QPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn bazlov_rank2() {
        let g2 = sys(RootType::G, 2);
        assert_eq!(
            bazlov_gm(&g2).unwrap(),
            poly(&[(5, 1), (6, 1), (8, 1), (9, 1)])
        );
        assert_eq!(bazlov_product_form(&g2).unwrap(), bazlov_gm(&g2).unwrap());
        let b2 = sys(RootType::B, 2);
        assert_eq!(
            bazlov_gm(&b2).unwrap(),
            poly(&[(3, 1), (4, 1), (6, 1), (7, 1)])
        );
        assert_eq!(bazlov_product_form(&b2).unwrap(), bazlov_gm(&b2).unwrap());
        assert_eq!(bazlov_gm(&sys(RootType::C, 3)).unwrap().eval_at_one(), 16);
        assert!(matches!(
            bazlov_gm(&sys(RootType::A, 3)),
            Err(ClosedFormError::SimplyLaced(_))
        ));
    }

    #[test]
    fn n0_values() {
        assert_eq!(n0(&sys(RootType::B, 3)).unwrap(), 3);
        assert_eq!(n0(&sys(RootType::F, 4)).unwrap(), 4);
        assert_eq!(n0(&sys(RootType::G, 2)).unwrap(), 3);
        for r in 2..=6 {
            assert_eq!(n0(&sys(RootType::C, r)).unwrap(), 2);
            assert_eq!(n0(&sys(RootType::B, r)).unwrap() as usize, r);
        }
    }

    #[test]
    fn partition_weights() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(partition_to_weight(&p("1,1,1,1")), Weight::zero(3));
        assert_eq!(partition_to_weight(&p("2,1,1")), Weight::new(vec![1, 0, 1]));
        assert_eq!(partition_to_weight(&p("4")), Weight::new(vec![4, 0, 0]));
        assert_eq!(partition_to_weight(&p("2,2")), Weight::new(vec![0, 2, 0]));
        for n in 2..=6 {
            let rs = sys(RootType::A, n as usize - 1);
            for q in Partition::all(n) {
                assert!(rs.in_root_lattice(&partition_to_weight(&q)));
            }
        }
    }

    #[test]
    fn partitions_and_hooks() {
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::all(8).len(), 22);
        let p: Partition = "3,1".parse().unwrap();
        assert_eq!(p.conjugate().parts(), &[2, 1, 1]);
        let hooks: Vec<u32> = p.boxes().map(|(i, j)| p.hook(i, j)).collect();
        assert_eq!(hooks, vec![4, 2, 1, 1]);
        assert!("0,1".parse::<Partition>().is_err());
    }

    #[test]
    fn stembridge_small() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(stembridge_gm(&p("2")).unwrap(), poly(&[(1, 1), (2, 1)]));
        assert_eq!(stembridge_gm(&p("1,1")).unwrap(), poly(&[(0, 1), (3, 1)]));
        assert_eq!(
            stembridge_gm(&p("3")).unwrap(),
            poly(&[(2, 1), (3, 1), (5, 1), (6, 1)])
        );
        assert_eq!(
            stembridge_gm(&p("2,1")).unwrap(),
            poly(&[(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 1), (7, 1)])
        );
    }

    #[test]
    fn invariant_products() {
        assert_eq!(
            invariant_poincare(&sys(RootType::A, 1)),
            poly(&[(0, 1), (3, 1)])
        );
        assert_eq!(
            invariant_poincare(&sys(RootType::A, 2)),
            &poly(&[(0, 1), (3, 1)]) * &poly(&[(0, 1), (5, 1)])
        );
        assert_eq!(invariant_poincare(&sys(RootType::E, 8)).eval_at_one(), 256);
    }

    #[test]
    fn freeness_examples() {
        let a2 = sys(RootType::A, 2);
        let adj = poly(&[(1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 1), (7, 1)]);
        let v = freeness_divisibility(&adj, &a2, 2);
        assert!(v.passes());
        assert_eq!(v.quotient, Some(poly(&[(1, 1), (2, 1), (3, 1), (4, 1)])));
        let g2 = sys(RootType::G, 2);
        let v = freeness_divisibility(&bazlov_gm(&g2).unwrap(), &g2, 1);
        assert_eq!(v.quotient, Some(poly(&[(5, 1), (6, 1)])));
        assert_eq!(v.generator_count, Some(2));
        let a1 = sys(RootType::A, 1);
        let v = freeness_divisibility(&poly(&[(0, 1), (3, 1)]), &a1, 1);
        assert!(v.passes());
        let v = freeness_divisibility(&poly(&[(1, 1), (2, 1)]), &a2, 1);
        assert!(!v.divisible && !v.passes());
    }

    #[test]
    fn newton_pairing() {
        assert!(newton_pairing_identity_check(2, 2, 3));
        assert!(newton_pairing_identity_check(3, 2, 4));
        assert!(newton_pairing_identity_check(2, 3, 2));
        assert!(newton_pairing_identity_check(1, 1, 3));
    }
}
