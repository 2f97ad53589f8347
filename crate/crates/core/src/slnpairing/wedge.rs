//! The exterior algebra of `sl_n` with the Koszul boundary and its adjoint.
//!
//! Basis: `E_ij` (`i != j`, row-major) followed by
//! `H_k = E_11 + ... + E_kk - k E_{k+1,k+1}`. Under `B(X, Y) = tr(XY)` the
//! basis is dual to itself up to scale: `E_ij` pairs with `E_ji`, and `H_k`
//! with itself with `B(H_k, H_k) = k(k+1)`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{rat, IntMatrix, RationalMatrix};

#[derive(Debug, Clone)]
pub struct SlBasis {
    pub n: usize,
    pub mats: Vec<RationalMatrix>,
    pub ints: Vec<IntMatrix>,
    pub labels: Vec<String>,
    dual: Vec<usize>,
    norm: Vec<BigRational>,
    /// `[b_i, b_j]` in basis coordinates.
    bracket: Vec<Vec<Vec<(usize, BigRational)>>>,
}

impl SlBasis {
    pub fn new(n: usize) -> Self {
        assert!(
            n >= 2 && n * n - 1 <= 63,
            "basis wedges are stored as 64-bit masks"
        );
        let mut mats = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    mats.push(RationalMatrix::elementary(n, i, j));
                    labels.push(format!("E{}{}", i + 1, j + 1));
                }
            }
        }
        for k in 1..n {
            let mut m = RationalMatrix::zero(n);
            for i in 0..k {
                m.set(i, i, BigRational::one());
            }
            m.set(k, k, rat(-(k as i64)));
            mats.push(m);
            labels.push(format!("H{k}"));
        }
        let dim = mats.len();
        let mut dual = vec![0; dim];
        let mut norm = vec![BigRational::zero(); dim];
        for i in 0..dim {
            for j in 0..dim {
                let b = (&mats[i] * &mats[j]).trace();
                if !b.is_zero() {
                    dual[i] = j;
                    norm[i] = b;
                }
            }
        }
        let ints = mats.iter().map(|m| m.to_scaled_ints().0).collect();
        let mut basis = SlBasis {
            n,
            mats,
            ints,
            labels,
            dual,
            norm,
            bracket: Vec::new(),
        };
        basis.bracket = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| basis.decompose(&basis.mats[i].commutator(&basis.mats[j])))
                    .collect()
            })
            .collect();
        basis
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    pub fn index_of_elementary(&self, i: usize, j: usize) -> usize {
        let label = format!("E{}{}", i + 1, j + 1);
        self.labels
            .iter()
            .position(|l| *l == label)
            .expect("off-diagonal")
    }

    /// Coordinates of a traceless matrix.
    pub fn decompose(&self, m: &RationalMatrix) -> Vec<(usize, BigRational)> {
        assert!(m.is_traceless());
        (0..self.dim())
            .filter_map(|i| {
                let c = (&self.mats[self.dual[i]] * m).trace() / &self.norm[i];
                (!c.is_zero()).then_some((i, c))
            })
            .collect()
    }

    /// `B(b_C, b_{C*})` for the dual index set `C*`; zero against every other set.
    fn mask_dual(&self, mask: u64) -> (u64, BigRational) {
        let idx = bits(mask);
        let duals: Vec<usize> = idx.iter().map(|&i| self.dual[i]).collect();
        let dmask = duals.iter().fold(0u64, |m, &d| m | 1 << d);
        let mut value: BigRational = idx.iter().map(|&i| self.norm[i].clone()).product();
        if sort_sign(&duals) < 0 {
            value = -value;
        }
        (dmask, value)
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Sign of the sorting permutation of distinct indices.
fn sort_sign(v: &[usize]) -> i64 {
    let mut inv = 0;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if v[a] > v[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Combination of basis wedges `b_{c_1} ^ ... ^ b_{c_k}`, `c` increasing,
/// keyed by the bitmask of `c`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WedgeElement {
    terms: BTreeMap<u64, BigRational>,
}

impl WedgeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * b_{i_1} ^ ... ^ b_{i_k}` in any index order.
    pub fn basis_wedge(indices: &[usize], c: BigRational) -> Self {
        let mut w = Self::zero();
        w.add_wedge(indices, c);
        w
    }

    fn add_wedge(&mut self, indices: &[usize], c: BigRational) {
        let mask = indices.iter().fold(0u64, |m, &i| m | 1 << i);
        if mask.count_ones() as usize != indices.len() {
            return;
        }
        let c = if sort_sign(indices) < 0 { -c } else { c };
        self.add_term(mask, c);
    }

    fn add_term(&mut self, mask: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, indices: &[usize]) -> BigRational {
        let mask = indices.iter().fold(0u64, |m, &i| m | 1 << i);
        let c = self
            .terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(BigRational::zero);
        if sort_sign(indices) < 0 {
            -c
        } else {
            c
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &BigRational)> {
        self.terms.iter().map(|(m, c)| (bits(*m), c))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(*m, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    /// `Some(c)` when `self = c * other` with `other != 0`.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        let (m, v) = other.terms.iter().next()?;
        let c = self.terms.get(m).cloned().unwrap_or_else(BigRational::zero) / v;
        (*self == other.scale(&c)).then_some(c)
    }

    /// `B(self, other)`, the trace form extended by determinants.
    pub fn pair(&self, other: &Self, basis: &SlBasis) -> BigRational {
        let mut s = BigRational::zero();
        for (m, v) in &self.terms {
            let (dm, b) = basis.mask_dual(*m);
            if let Some(u) = other.terms.get(&dm) {
                s += v * u * b;
            }
        }
        s
    }
}

/// Every increasing `k`-subset of `0..dim` as a bitmask.
pub fn subsets(dim: usize, k: usize) -> Vec<u64> {
    fn rec(dim: usize, k: usize, start: usize, mask: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for i in start..=dim - k {
            rec(dim, k - 1, i + 1, mask | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k <= dim {
        rec(dim, k, 0, 0, &mut out);
    }
    out
}

/// `d(x_1 ^ ... ^ x_k) = sum_{i<j} (-1)^{i+j+1} [x_i, x_j] ^ x_1 ^ .. x_i^ .. x_j^ .. ^ x_k`.
pub fn koszul_boundary(w: &WedgeElement, basis: &SlBasis) -> WedgeElement {
    let mut out = WedgeElement::zero();
    for (mask, c) in &w.terms {
        let idx = bits(*mask);
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                let s = if (i + j) % 2 == 1 {
                    c.clone()
                } else {
                    -c.clone()
                };
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != i && p != j)
                    .map(|(_, &x)| x)
                    .collect();
                for (m, sc) in &basis.bracket[idx[i]][idx[j]] {
                    let mut v = vec![*m];
                    v.extend(&rest);
                    out.add_wedge(&v, &s * sc);
                }
            }
        }
    }
    out
}

/// The adjoint of the boundary under `B`: `B(delta w, u) = B(w, d u)`.
pub fn koszul_delta(w: &WedgeElement, degree: usize, basis: &SlBasis) -> WedgeElement {
    let mut out = WedgeElement::zero();
    for d in subsets(basis.dim(), degree + 1) {
        let bd = WedgeElement {
            terms: BTreeMap::from([(d, BigRational::one())]),
        };
        let c = w.pair(&koszul_boundary(&bd, basis), basis);
        if c.is_zero() {
            continue;
        }
        // the B-dual of b_D is b_{D*} / B(b_{D*}, b_D)
        let (dm, b) = basis.mask_dual(d);
        out.add_term(dm, c / b);
    }
    out
}

/// The element `w` with `B(w, u) = form(u)`, from the values of an
/// alternating `k`-form on increasing basis tuples.
pub fn form_to_wedge<F>(k: usize, basis: &SlBasis, mut form: F) -> WedgeElement
where
    F: FnMut(&[usize]) -> BigRational,
{
    let mut out = WedgeElement::zero();
    for c in subsets(basis.dim(), k) {
        let v = form(&bits(c));
        if v.is_zero() {
            continue;
        }
        let (dm, b) = basis.mask_dual(c);
        out.add_term(dm, v / b);
    }
    out
}
