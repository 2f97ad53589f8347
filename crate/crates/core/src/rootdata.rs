//! Simple root systems of types A through G.
//!
//! Every system is built from a standard ambient model with exact rational
//! coordinates. The bilinear form is the ambient dot product rescaled so that
//! long roots have squared length 2. Positive roots are generated in the
//! simple-root basis by root-string closure, and weights are carried as integer
//! coordinates on the fundamental weights.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weight::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("no simple Lie algebra of type {tag}{rank}: {reason}")]
    InvalidType {
        tag: RootType,
        rank: usize,
        reason: &'static str,
    },
    #[error("unknown root system type tag {0:?}")]
    UnknownTag(String),
}

/// Cartan type tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub const ALL: [RootType; 7] = [
        RootType::A,
        RootType::B,
        RootType::C,
        RootType::D,
        RootType::E,
        RootType::F,
        RootType::G,
    ];

    /// Checks whether `(self, rank)` names a simple Lie algebra under the
    /// usual non-redundant ranges.
    pub fn validate(self, rank: usize) -> Result<(), RootDataError> {
        let reason = match self {
            RootType::A if rank >= 1 => return Ok(()),
            RootType::A => "type A needs rank >= 1",
            RootType::B | RootType::C if rank >= 2 => return Ok(()),
            RootType::B | RootType::C => "types B and C need rank >= 2",
            RootType::D if rank >= 4 => return Ok(()),
            RootType::D => "type D needs rank >= 4",
            RootType::E if (6..=8).contains(&rank) => return Ok(()),
            RootType::E => "type E exists only in ranks 6, 7, 8",
            RootType::F if rank == 4 => return Ok(()),
            RootType::F => "type F exists only in rank 4",
            RootType::G if rank == 2 => return Ok(()),
            RootType::G => "type G exists only in rank 2",
        };
        Err(RootDataError::InvalidType {
            tag: self,
            rank,
            reason,
        })
    }

    /// All valid `(type, rank)` pairs with `rank <= max_rank`, in a fixed order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<(RootType, usize)> {
        let mut out = Vec::new();
        for rank in 1..=max_rank {
            for tag in RootType::ALL {
                if tag.validate(rank).is_ok() {
                    out.push((tag, rank));
                }
            }
        }
        out
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::E => 'E',
            RootType::F => 'F',
            RootType::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for RootType {
    type Err = RootDataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "E" => Ok(RootType::E),
            "F" => Ok(RootType::F),
            "G" => Ok(RootType::G),
            other => Err(RootDataError::UnknownTag(other.to_string())),
        }
    }
}

/// A positive root, stored in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub root_coords: Vec<i64>,
    pub weight: Weight,
    pub height: i64,
    pub long: bool,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub type_tag: RootType,
    pub rank: usize,
    /// Simple roots in ambient coordinates.
    pub simple_roots: Vec<Vec<Rational64>>,
    /// Factor applied to the ambient dot product.
    pub form_scale: Rational64,
    /// Gram matrix `(alpha_i, alpha_j)` of the simple roots.
    pub gram: Vec<Vec<Rational64>>,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational64>>,
    weight_gram: Vec<Vec<Rational64>>,
    /// Positive roots sorted by height, then by root coordinates.
    pub positive_roots: Vec<Root>,
    pub fundamental_weights: Vec<Vec<Rational64>>,
    /// Half-sum of positive roots, ambient coordinates.
    pub rho: Vec<Rational64>,
    pub exponents: Vec<u32>,
    pub theta: Weight,
    pub theta_s: Option<Weight>,
    pub r_s: usize,
    pub r_l: usize,
}

fn q(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

fn half(n: i64) -> Rational64 {
    Rational64::new(n, 2)
}

fn unit(dim: usize, i: usize) -> Vec<Rational64> {
    let mut v = vec![Rational64::zero(); dim];
    v[i] = Rational64::one();
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<Rational64> {
    let mut v = unit(dim, i);
    v[j] -= Rational64::one();
    v
}

fn dot(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Standard ambient model: simple roots and the rescaling of the dot product.
fn ambient_model(tag: RootType, rank: usize) -> (Vec<Vec<Rational64>>, Rational64) {
    match tag {
        RootType::A => {
            let dim = rank + 1;
            ((0..rank).map(|i| diff(dim, i, i + 1)).collect(), q(1))
        }
        RootType::B => {
            let mut s: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            s.push(unit(rank, rank - 1));
            (s, q(1))
        }
        RootType::C => {
            let mut s: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            let mut last = vec![q(0); rank];
            last[rank - 1] = q(2);
            s.push(last);
            (s, half(1))
        }
        RootType::D => {
            let mut s: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            let mut last = vec![q(0); rank];
            last[rank - 2] = q(1);
            last[rank - 1] = q(1);
            s.push(last);
            (s, q(1))
        }
        RootType::E => {
            // Bourbaki model inside R^8; E6 and E7 use the first 6 or 7 roots.
            let mut s = Vec::with_capacity(8);
            let mut a1 = vec![half(-1); 8];
            a1[0] = half(1);
            a1[7] = half(1);
            s.push(a1);
            let mut a2 = vec![q(0); 8];
            a2[0] = q(1);
            a2[1] = q(1);
            s.push(a2);
            for i in 0..6 {
                s.push(diff(8, i + 1, i));
            }
            s.truncate(rank);
            (s, q(1))
        }
        RootType::F => {
            let s = vec![
                diff(4, 1, 2),
                diff(4, 2, 3),
                unit(4, 3),
                vec![half(1), half(-1), half(-1), half(-1)],
            ];
            (s, q(1))
        }
        RootType::G => {
            let s = vec![diff(3, 0, 1), vec![q(-2), q(1), q(1)]];
            (s, Rational64::new(1, 3))
        }
    }
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub(crate) fn invert(m: &[Vec<Rational64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m.to_vec();
    let mut inv: Vec<Vec<Rational64>> = (0..n).map(|i| unit(n, i)).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for j in 0..n {
                    let (ac, ic) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

impl RootSystem {
    pub fn new(type_tag: RootType, rank: usize) -> Result<Self, RootDataError> {
        type_tag.validate(rank)?;
        let (simple_roots, form_scale) = ambient_model(type_tag, rank);
        let gram: Vec<Vec<Rational64>> = simple_roots
            .iter()
            .map(|a| {
                simple_roots
                    .iter()
                    .map(|b| dot(a, b) * form_scale)
                    .collect()
            })
            .collect();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let v = gram[i][j] * q(2) / gram[j][j];
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let cartan_q: Vec<Vec<Rational64>> = cartan
            .iter()
            .map(|row| row.iter().map(|&x| q(x)).collect())
            .collect();
        let cartan_inv = invert(&cartan_q).expect("Cartan matrix of a simple type is invertible");

        // weight_gram = A^{-1} G A^{-T}, the form in fundamental coordinates.
        let mut weight_gram = vec![vec![q(0); rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let mut s = q(0);
                for k in 0..rank {
                    for l in 0..rank {
                        s += cartan_inv[i][k] * gram[k][l] * cartan_inv[j][l];
                    }
                }
                weight_gram[i][j] = s;
            }
        }

        let ambient_dim = simple_roots[0].len();
        let fundamental_weights: Vec<Vec<Rational64>> = (0..rank)
            .map(|i| {
                (0..ambient_dim)
                    .map(|d| {
                        (0..rank)
                            .map(|j| cartan_inv[i][j] * simple_roots[j][d])
                            .sum()
                    })
                    .collect()
            })
            .collect();

        let mut rs = RootSystem {
            type_tag,
            rank,
            simple_roots,
            form_scale,
            gram,
            cartan,
            cartan_inv,
            weight_gram,
            positive_roots: Vec::new(),
            fundamental_weights,
            rho: Vec::new(),
            exponents: Vec::new(),
            theta: Weight::zero(rank),
            theta_s: None,
            r_s: 0,
            r_l: 0,
        };
        rs.positive_roots = rs.generate_positive_roots();
        rs.rho = (0..ambient_dim)
            .map(|d| {
                let total: Rational64 = rs
                    .positive_roots
                    .iter()
                    .map(|r| rs.ambient_of_root_coords(&r.root_coords)[d])
                    .sum();
                total / q(2)
            })
            .collect();
        rs.exponents = exponents_from_heights(&rs.positive_roots);
        let long_len = q(2);
        rs.r_l = (0..rank).filter(|&i| rs.gram[i][i] == long_len).count();
        rs.r_s = rank - rs.r_l;
        rs.theta = rs
            .positive_roots
            .last()
            .map(|r| r.weight.clone())
            .expect("nonempty root system");
        rs.theta_s = rs
            .positive_roots
            .iter()
            .rev()
            .find(|r| !r.long)
            .map(|r| r.weight.clone());
        Ok(rs)
    }

    fn ambient_of_root_coords(&self, c: &[i64]) -> Vec<Rational64> {
        let dim = self.simple_roots[0].len();
        (0..dim)
            .map(|d| {
                c.iter()
                    .zip(&self.simple_roots)
                    .map(|(&ci, a)| q(ci) * a[d])
                    .sum()
            })
            .collect()
    }

    fn root_form(&self, a: &[i64], b: &[i64]) -> Rational64 {
        let mut s = q(0);
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += q(a[i] * b[j]) * self.gram[i][j];
            }
        }
        s
    }

    fn fund_of_root_coords(&self, c: &[i64]) -> Weight {
        Weight::new(
            (0..self.rank)
                .map(|j| (0..self.rank).map(|i| c[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    fn generate_positive_roots(&self) -> Vec<Root> {
        let r = self.rank;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut layer: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut c = vec![0; r];
                c[i] = 1;
                c
            })
            .collect();
        for c in &layer {
            seen.insert(c.clone());
        }
        let mut all = layer.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                let fund = self.fund_of_root_coords(beta);
                for i in 0..r {
                    // p - q = <beta, alpha_i^vee> along the alpha_i-string.
                    let mut p = 0;
                    let mut probe = beta.clone();
                    loop {
                        probe[i] -= 1;
                        if seen.contains(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let up = p - fund.coords()[i];
                    if up >= 1 {
                        let mut gamma = beta.clone();
                        gamma[i] += 1;
                        if seen.insert(gamma.clone()) {
                            next.push(gamma);
                        }
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        let mut roots: Vec<Root> = all
            .into_iter()
            .map(|c| {
                let len = self.root_form(&c, &c);
                Root {
                    height: c.iter().sum(),
                    weight: self.fund_of_root_coords(&c),
                    long: len == q(2),
                    root_coords: c,
                }
            })
            .collect();
        roots.sort_by(|a, b| {
            a.height
                .cmp(&b.height)
                .then_with(|| a.root_coords.cmp(&b.root_coords))
        });
        roots
    }

    pub fn dim_g(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.r_s == 0
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.type_tag, self.rank)
    }

    /// Root-basis coordinates of a weight (exact rationals).
    pub fn to_root_coords(&self, w: &Weight) -> Vec<Rational64> {
        let f = w.coords();
        (0..self.rank)
            .map(|j| {
                (0..self.rank)
                    .map(|i| q(f[i]) * self.cartan_inv[i][j])
                    .sum()
            })
            .collect()
    }

    /// Integral root coordinates, or `None` off the root lattice.
    pub fn root_lattice_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.to_root_coords(w)
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Weight with the given root-basis coordinates.
    pub fn from_root_coords(&self, c: &[i64]) -> Weight {
        self.fund_of_root_coords(c)
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.to_root_coords(w).iter().all(|c| c.is_integer())
    }

    /// Ambient coordinates of a weight.
    pub fn to_ambient(&self, w: &Weight) -> Vec<Rational64> {
        let dim = self.simple_roots[0].len();
        (0..dim)
            .map(|d| {
                w.coords()
                    .iter()
                    .zip(&self.fundamental_weights)
                    .map(|(&c, om)| q(c) * om[d])
                    .sum()
            })
            .collect()
    }

    /// The normalized invariant form on weights.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Rational64 {
        let (x, y) = (a.coords(), b.coords());
        let mut s = q(0);
        for i in 0..self.rank {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                if y[j] != 0 {
                    s += q(x[i] * y[j]) * self.weight_gram[i][j];
                }
            }
        }
        s
    }

    /// `lam >= mu`: the difference is a nonnegative integral combination of simple roots.
    pub fn dominance_geq(&self, lam: &Weight, mu: &Weight) -> bool {
        let d = lam - mu;
        self.to_root_coords(&d)
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Highest root and, for non-simply-laced types, the highest short root.
    pub fn highest_roots(&self) -> (Weight, Option<Weight>) {
        (self.theta.clone(), self.theta_s.clone())
    }

    pub fn rho_weight(&self) -> Weight {
        Weight::new(vec![1; self.rank])
    }

    pub fn two_rho(&self) -> Weight {
        Weight::new(vec![2; self.rank])
    }

    pub fn simple_reflect(&self, i: usize, w: &Weight) -> Weight {
        let k = w.coords()[i];
        if k == 0 {
            return w.clone();
        }
        let mut out = w.coords().to_vec();
        for (j, o) in out.iter_mut().enumerate() {
            *o -= k * self.cartan[i][j];
        }
        Weight::new(out)
    }

    /// The dominant element of the W-orbit of `w`, with the parity of the
    /// number of simple reflections used to reach it.
    pub fn dominant_rep(&self, w: &Weight) -> (Weight, bool) {
        let mut cur = w.coords().to_vec();
        let mut odd = false;
        while let Some(i) = cur.iter().position(|&c| c < 0) {
            let k = cur[i];
            for (j, c) in cur.iter_mut().enumerate() {
                *c -= k * self.cartan[i][j];
            }
            odd = !odd;
        }
        (Weight::new(cur), odd)
    }

    /// All roots of the system, positive ones first.
    pub fn all_roots(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self
            .positive_roots
            .iter()
            .map(|r| r.weight.clone())
            .collect();
        v.extend(self.positive_roots.iter().map(|r| -&r.weight));
        v
    }

    /// `prod (m_i + 1)`.
    pub fn weyl_order_from_exponents(&self) -> u128 {
        self.exponents.iter().map(|&m| m as u128 + 1).product()
    }

    /// Number of positive roots of each height, indexed by height.
    pub fn height_distribution(&self) -> Vec<usize> {
        height_counts(&self.positive_roots)
    }

    pub fn coroot_pairing(&self, w: &Weight, root: &Root) -> Rational64 {
        let a = &root.weight;
        self.inner(w, a) * q(2) / self.inner(a, a)
    }
}

fn height_counts(roots: &[Root]) -> Vec<usize> {
    let max_h = roots.iter().map(|r| r.height).max().unwrap_or(0) as usize;
    let mut counts = vec![0usize; max_h + 1];
    for r in roots {
        counts[r.height as usize] += 1;
    }
    counts
}

/// Exponents as the dual partition of the height distribution of positive roots.
fn exponents_from_heights(roots: &[Root]) -> Vec<u32> {
    let counts = height_counts(roots);
    let rank = counts.get(1).copied().unwrap_or(0);
    let mut ex: Vec<u32> = (1..=rank)
        .map(|j| counts.iter().skip(1).filter(|&&c| c >= j).count() as u32)
        .collect();
    ex.sort_unstable();
    ex
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: RootType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    #[test]
    fn rejects_invalid_pairs() {
        for (t, r) in [
            (RootType::A, 0),
            (RootType::B, 1),
            (RootType::C, 1),
            (RootType::D, 3),
            (RootType::E, 5),
            (RootType::E, 9),
            (RootType::F, 3),
            (RootType::G, 3),
        ] {
            assert!(RootSystem::new(t, r).is_err(), "{t}{r}");
        }
        assert!("X".parse::<RootType>().is_err());
    }

    #[test]
    fn a2_exponents_and_roots() {
        let a2 = rs(RootType::A, 2);
        assert_eq!(a2.positive_roots.len(), 3);
        assert_eq!(a2.exponents, vec![1, 2]);
        assert_eq!(a2.theta_s, None);
        assert_eq!(a2.theta, Weight::new(vec![1, 1]));
    }

    #[test]
    fn g2_f4_exponents() {
        let g2 = rs(RootType::G, 2);
        assert_eq!(g2.exponents, vec![1, 5]);
        assert_eq!((g2.r_s, g2.r_l), (1, 1));
        let f4 = rs(RootType::F, 4);
        assert_eq!(f4.exponents, vec![1, 5, 7, 11]);
        assert_eq!((f4.r_s, f4.r_l), (2, 2));
    }

    #[test]
    fn exceptional_sizes() {
        for (t, r, npos, ex) in [
            (RootType::E, 6, 36, vec![1, 4, 5, 7, 8, 11]),
            (RootType::E, 7, 63, vec![1, 5, 7, 9, 11, 13, 17]),
            (RootType::E, 8, 120, vec![1, 7, 11, 13, 17, 19, 23, 29]),
            (RootType::F, 4, 24, vec![1, 5, 7, 11]),
            (RootType::G, 2, 6, vec![1, 5]),
        ] {
            let s = rs(t, r);
            assert_eq!(s.positive_roots.len(), npos, "{t}{r}");
            assert_eq!(s.exponents, ex, "{t}{r}");
        }
    }

    #[test]
    fn highest_short_roots() {
        let b2 = rs(RootType::B, 2);
        assert_eq!(b2.theta_s, Some(Weight::new(vec![1, 0])));
        assert_eq!(b2.theta, Weight::new(vec![0, 2]));
        let g2 = rs(RootType::G, 2);
        assert_eq!(g2.theta_s, Some(Weight::new(vec![1, 0])));
        assert_eq!(g2.theta, Weight::new(vec![0, 1]));
        let c3 = rs(RootType::C, 3);
        assert_eq!(c3.theta_s, Some(Weight::new(vec![0, 1, 0])));
        assert_eq!(c3.theta, Weight::new(vec![2, 0, 0]));
        let f4 = rs(RootType::F, 4);
        assert_eq!(f4.theta_s, Some(Weight::new(vec![0, 0, 0, 1])));
        assert_eq!(f4.theta, Weight::new(vec![1, 0, 0, 0]));
    }

    #[test]
    fn short_root_counts_by_family() {
        for r in 2..=6 {
            assert_eq!(rs(RootType::B, r).r_s, 1);
            assert_eq!(rs(RootType::C, r).r_s, r - 1);
        }
        for (t, r) in [(RootType::A, 3), (RootType::D, 5), (RootType::E, 6)] {
            let s = rs(t, r);
            assert_eq!(s.r_s, 0);
            assert_eq!(s.r_l, r);
        }
    }

    #[test]
    fn dominance_examples() {
        let a2 = rs(RootType::A, 2);
        let alpha1 = a2.positive_roots[0].weight.clone();
        assert!(a2.dominance_geq(&a2.theta, &alpha1));
        assert!(!a2.dominance_geq(&alpha1, &a2.theta));
        let b2 = rs(RootType::B, 2);
        let ts = b2.theta_s.clone().unwrap();
        assert!(b2.dominance_geq(&(&ts * 2), &b2.theta));
        assert!(b2.dominance_geq(&b2.theta, &b2.theta));
        // difference outside the root lattice is incomparable, not an error
        let w1 = Weight::new(vec![1, 0]);
        assert!(!a2.dominance_geq(&w1, &Weight::zero(2)));
    }

    #[test]
    fn cartan_matches_gram() {
        for (t, r) in RootType::all_up_to_rank(8) {
            let s = rs(t, r);
            for i in 0..r {
                for j in 0..r {
                    let v = s.gram[i][j] * q(2) / s.gram[j][j];
                    assert_eq!(q(s.cartan[i][j]), v);
                }
            }
            // long roots normalized to squared length 2
            let max_len = (0..r).map(|i| s.gram[i][i]).max().unwrap();
            assert_eq!(max_len, q(2), "{t}{r}");
        }
    }

    #[test]
    fn fundamental_weights_are_dual_to_coroots() {
        for (t, r) in RootType::all_up_to_rank(6) {
            let s = rs(t, r);
            for i in 0..r {
                for j in 0..r {
                    let a = &s.simple_roots[j];
                    let v = dot(&s.fundamental_weights[i], a) * s.form_scale * q(2) / s.gram[j][j];
                    assert_eq!(v, if i == j { q(1) } else { q(0) }, "{t}{r}");
                }
            }
        }
    }

    #[test]
    fn weight_form_matches_ambient() {
        for (t, r) in RootType::all_up_to_rank(6) {
            let s = rs(t, r);
            let ws: Vec<Weight> = (0..r).map(|i| Weight::fundamental(r, i)).collect();
            for a in &ws {
                for b in s.all_roots().iter().chain(&ws) {
                    let amb = dot(&s.to_ambient(a), &s.to_ambient(b)) * s.form_scale;
                    assert_eq!(s.inner(a, b), amb, "{t}{r}");
                }
            }
            for root in &s.positive_roots {
                let sq = s.inner(&root.weight, &root.weight);
                assert_eq!(sq == q(2), root.long, "{t}{r}");
            }
        }
    }

    #[test]
    fn root_coord_roundtrip() {
        let f4 = rs(RootType::F, 4);
        for root in &f4.positive_roots {
            assert_eq!(
                f4.root_lattice_coords(&root.weight).unwrap(),
                root.root_coords
            );
            assert_eq!(f4.from_root_coords(&root.root_coords), root.weight);
        }
        let a1 = rs(RootType::A, 1);
        assert!(!a1.in_root_lattice(&Weight::new(vec![1])));
        assert!(a1.in_root_lattice(&Weight::new(vec![2])));
    }

    #[test]
    fn dominant_rep_of_negative_root() {
        let b3 = rs(RootType::B, 3);
        for root in &b3.positive_roots {
            let (d, _) = b3.dominant_rep(&-&root.weight);
            let expect = if root.long {
                b3.theta.clone()
            } else {
                b3.theta_s.clone().unwrap()
            };
            assert_eq!(d, expect);
        }
    }
}
