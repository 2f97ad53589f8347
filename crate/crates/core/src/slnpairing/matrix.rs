//! Exact matrices and permutations.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

/// Square matrix with exact rational entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

pub fn rat(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl RationalMatrix {
    pub fn zero(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Elementary matrix `E_ij` (0-based).
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, BigRational::one());
        m
    }

    pub fn from_ints(n: usize, v: &[i64]) -> Self {
        assert_eq!(v.len(), n * n);
        RationalMatrix {
            n,
            entries: v.iter().map(|&x| rat(x)).collect(),
        }
    }

    pub fn from_entries(n: usize, entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), n * n);
        RationalMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.n + j] = v;
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Splits off a positive integer `d` with `d * self` integral.
    pub fn to_scaled_ints(&self) -> (IntMatrix, BigInt) {
        let d = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let entries = self
            .entries
            .iter()
            .map(|x| {
                (x * BigRational::from_integer(d.clone()))
                    .to_integer()
                    .to_i128()
                    .expect("scaled entry fits in i128")
            })
            .collect();
        (IntMatrix { n: self.n, entries }, d)
    }

    /// Traceless integer matrix with entries uniform in `-9..=9`; the last
    /// diagonal entry absorbs the trace.
    pub fn random_traceless<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut v: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-9..=9)).collect();
        let tr: i64 = (0..n - 1).map(|i| v[i * n + i]).sum();
        v[n * n - 1] = -tr;
        Self::from_ints(n, &v)
    }

    /// `g X g^{-1}` for the unipotent `g = 1 + t E_ij`, `i != j`.
    pub fn conjugate_unipotent(&self, i: usize, j: usize, t: &BigRational) -> Self {
        let n = self.n;
        let mut g = Self::identity(n);
        g.set(i, j, t.clone());
        let mut ginv = Self::identity(n);
        ginv.set(i, j, -t.clone());
        &(&g * self) * &ginv
    }
}

impl<'a> Add for &'a RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &'a RationalMatrix) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub for &'a RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &'a RationalMatrix) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul for &'a RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &'a RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = RationalMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Integer matrix for the hot loops; every operation is overflow-checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub n: usize,
    pub entries: Vec<i128>,
}

fn ck_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("i128 overflow")
}

fn ck_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("i128 overflow")
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IntMatrix { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut entries = vec![0i128; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.entries[k * n + j];
                    if b != 0 {
                        entries[i * n + j] = ck_add(entries[i * n + j], ck_mul(a, b));
                    }
                }
            }
        }
        IntMatrix { n, entries }
    }

    pub fn trace(&self) -> i128 {
        (0..self.n).fold(0, |acc, i| ck_add(acc, self.entries[i * self.n + i]))
    }

    /// Trace of `self * rhs` without forming the product.
    pub fn trace_mul(&self, rhs: &IntMatrix) -> i128 {
        let n = self.n;
        let mut s = 0i128;
        for i in 0..n {
            for k in 0..n {
                s = ck_add(s, ck_mul(self.entries[i * n + k], rhs.entries[k * n + i]));
            }
        }
        s
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<i128> {
        self.entries[i * self.n..(i + 1) * self.n].to_vec()
    }
}

/// Determinant of the matrix whose columns are `cols`, by Bareiss elimination.
pub fn det_columns(cols: &[Vec<i128>]) -> i128 {
    let n = cols.len();
    // a[i][j] = cols[j][i]
    let mut a: Vec<i128> = (0..n * n).map(|k| cols[k % n][k / n]).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k * n + k] == 0 {
            match (k + 1..n).find(|&i| a[i * n + k] != 0) {
                Some(p) => {
                    for j in 0..n {
                        a.swap(k * n + j, p * n + j);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = ck_mul(a[i * n + j], a[k * n + k]) - ck_mul(a[i * n + k], a[k * n + j]);
                a[i * n + j] = v / prev;
            }
        }
        prev = a[k * n + k];
    }
    sign * a[n * n - 1]
}

/// Permutations of `0..n` as image vectors, `p[i]` the image of `i`.
pub type Perm = Vec<usize>;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut p: Perm = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
    }
}

pub fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// `(p o q)(i) = p(q(i))`.
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

pub fn big(k: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_basics() {
        let ps = permutations(4);
        assert_eq!(ps.len(), 24);
        assert_eq!(ps.iter().map(|p| sign(p)).sum::<i64>(), 0);
        for p in &ps {
            let q = inverse(p);
            assert_eq!(compose(p, &q), vec![0, 1, 2, 3]);
            for r in ps.iter().step_by(5) {
                assert_eq!(sign(&compose(p, r)), sign(p) * sign(r));
            }
        }
        assert_eq!(permutations(0).len(), 1);
    }

    #[test]
    fn determinants() {
        assert_eq!(det_columns(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(
            det_columns(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]),
            6
        );
        assert_eq!(det_columns(&[vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn scaling_and_conjugation() {
        let half = BigRational::new(1.into(), 2.into());
        let m = RationalMatrix::from_ints(2, &[1, 2, 3, -1]).scale(&half);
        let (im, d) = m.to_scaled_ints();
        assert_eq!(d, BigInt::from(2));
        assert_eq!(im.entries, vec![1, 2, 3, -1]);
        let c = m.conjugate_unipotent(0, 1, &rat(3));
        assert_eq!(c.trace(), m.trace());
        assert_eq!(binomial(7, 3), 35);
    }
}
