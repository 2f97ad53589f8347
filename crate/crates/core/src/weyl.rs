//! Explicit enumeration of the Weyl group acting on fundamental-weight coordinates.

use std::collections::{BTreeSet, VecDeque};

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::rootdata::RootSystem;
use crate::weight::Weight;

pub const DEFAULT_MAX_ORDER: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("Weyl group of {label} has order {order}, above the enumeration cap {cap}")]
    BudgetExceeded {
        label: String,
        order: u128,
        cap: u128,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Row-major `r x r` matrix; acts on column vectors of fundamental coordinates.
    pub matrix: Vec<i64>,
    /// A reduced word in the simple reflections (0-based indices).
    pub word: Vec<usize>,
    pub sign: i64,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        let c = w.coords();
        let r = c.len();
        let out = (0..r)
            .map(|i| (0..r).map(|j| self.matrix[i * r + j] * c[j]).sum())
            .collect();
        Weight::new(out)
    }

    pub fn compose(&self, other: &WeylElement, rank: usize) -> Vec<i64> {
        mat_mul(&self.matrix, &other.matrix, rank)
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    pub order: usize,
    rank: usize,
}

fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += x * b[k * r + j];
            }
        }
    }
    out
}

/// Matrix of the simple reflection `s_i` on fundamental coordinates.
fn reflection_matrix(rs: &RootSystem, i: usize) -> Vec<i64> {
    let r = rs.rank;
    let mut m = vec![0; r * r];
    for j in 0..r {
        m[j * r + j] = 1;
        m[j * r + i] -= rs.cartan[i][j];
    }
    m
}

fn determinant(m: &[i64], r: usize) -> i64 {
    // Bareiss fraction-free elimination.
    let mut a: Vec<i128> = m.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..r {
        if a[k * r + k] == 0 {
            match (k + 1..r).find(|&i| a[i * r + k] != 0) {
                Some(p) => {
                    for j in 0..r {
                        a.swap(k * r + j, p * r + j);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..r {
            for j in k + 1..r {
                a[i * r + j] = (a[i * r + j] * a[k * r + k] - a[i * r + k] * a[k * r + j]) / prev;
            }
        }
        prev = a[k * r + k];
    }
    (sign * a[r * r - 1]) as i64
}

impl WeylGroup {
    /// Breadth-first enumeration; the identity comes first and ties are broken
    /// by the index of the last simple reflection.
    pub fn generate(rs: &RootSystem) -> Result<Self, WeylError> {
        Self::generate_with_cap(rs, DEFAULT_MAX_ORDER)
    }

    pub fn generate_with_cap(rs: &RootSystem, cap: u128) -> Result<Self, WeylError> {
        let order = rs.weyl_order_from_exponents();
        if order > cap {
            return Err(WeylError::BudgetExceeded {
                label: rs.label(),
                order,
                cap,
            });
        }
        let r = rs.rank;
        let gens: Vec<Vec<i64>> = (0..r).map(|i| reflection_matrix(rs, i)).collect();
        let rho = rs.rho_weight();
        let mut identity = vec![0; r * r];
        for i in 0..r {
            identity[i * r + i] = 1;
        }
        let mut elements = vec![WeylElement {
            matrix: identity,
            word: Vec::new(),
            sign: 1,
        }];
        let mut seen: FxHashMap<Weight, usize> = FxHashMap::default();
        seen.insert(rho.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(&elements[idx].matrix, g, r);
                let probe = WeylElement {
                    matrix: m,
                    word: Vec::new(),
                    sign: 0,
                };
                let key = probe.apply(&rho);
                if seen.contains_key(&key) {
                    continue;
                }
                let mut word = elements[idx].word.clone();
                word.push(i);
                let sign = if word.len() % 2 == 0 { 1 } else { -1 };
                seen.insert(key, elements.len());
                queue.push_back(elements.len());
                elements.push(WeylElement {
                    matrix: probe.matrix,
                    word,
                    sign,
                });
            }
        }
        let n = elements.len();
        Ok(WeylGroup {
            elements,
            order: n,
            rank: r,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn determinant(&self, e: &WeylElement) -> i64 {
        determinant(&e.matrix, self.rank)
    }

    /// Index of the element with the given matrix, if present.
    pub fn find(&self, matrix: &[i64]) -> Option<usize> {
        self.elements.iter().position(|e| e.matrix == matrix)
    }

    pub fn inverse_matrix(&self, e: &WeylElement) -> Vec<i64> {
        // reversed word
        let r = self.rank;
        let mut m = vec![0; r * r];
        for i in 0..r {
            m[i * r + i] = 1;
        }
        for &i in e.word.iter().rev() {
            let s = self
                .elements
                .iter()
                .find(|x| x.word == [i])
                .expect("generator");
            m = mat_mul(&m, &s.matrix, r);
        }
        m
    }
}

/// Full W-orbit of `mu`.
pub fn orbit(group: &WeylGroup, mu: &Weight) -> BTreeSet<Weight> {
    group.elements.iter().map(|w| w.apply(mu)).collect()
}

/// Orbit by closure under simple reflections; does not need the group.
pub fn orbit_by_reflections(rs: &RootSystem, mu: &Weight) -> Vec<Weight> {
    let mut seen: rustc_hash::FxHashSet<Weight> = Default::default();
    let mut out = vec![mu.clone()];
    seen.insert(mu.clone());
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for i in 0..rs.rank {
            if cur.coords()[i] == 0 {
                continue;
            }
            let next = rs.simple_reflect(i, &cur);
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootType;

    fn group(t: RootType, r: usize) -> (RootSystem, WeylGroup) {
        let rs = RootSystem::new(t, r).unwrap();
        let w = WeylGroup::generate(&rs).unwrap();
        (rs, w)
    }

    #[test]
    fn orders() {
        for (t, r, n) in [
            (RootType::A, 2, 6),
            (RootType::G, 2, 12),
            (RootType::F, 4, 1152),
            (RootType::B, 5, 3840),
            (RootType::D, 5, 1920),
        ] {
            let (_, w) = group(t, r);
            assert_eq!(w.order, n, "{t}{r}");
        }
    }

    #[test]
    fn identity_first_and_signs() {
        let (_, w) = group(RootType::B, 3);
        assert!(w.elements[0].word.is_empty());
        for e in &w.elements {
            assert_eq!(e.sign, w.determinant(e));
        }
        assert_eq!(w.elements.iter().map(|e| e.sign).sum::<i64>(), 0);
    }

    #[test]
    fn budget_refusal() {
        let rs = RootSystem::new(RootType::E, 8).unwrap();
        match WeylGroup::generate_with_cap(&rs, 1000) {
            Err(WeylError::BudgetExceeded { order, .. }) => assert_eq!(order, 696_729_600),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn orbit_examples() {
        let (a2, w) = group(RootType::A, 2);
        assert_eq!(orbit(&w, &Weight::zero(2)).len(), 1);
        let roots: BTreeSet<Weight> = a2.all_roots().into_iter().collect();
        assert_eq!(orbit(&w, &a2.theta), roots);

        let (b2, w) = group(RootType::B, 2);
        let ts = b2.theta_s.clone().unwrap();
        let short: BTreeSet<Weight> = b2
            .positive_roots
            .iter()
            .filter(|r| !r.long)
            .flat_map(|r| [r.weight.clone(), -&r.weight])
            .collect();
        assert_eq!(short.len(), 4);
        assert_eq!(orbit(&w, &ts), short);
        let by_refl: BTreeSet<Weight> = orbit_by_reflections(&b2, &ts).into_iter().collect();
        assert_eq!(by_refl, short);
    }

    #[test]
    fn elements_permute_roots() {
        let (g2, w) = group(RootType::G, 2);
        let roots: BTreeSet<Weight> = g2.all_roots().into_iter().collect();
        for e in &w.elements {
            let img: BTreeSet<Weight> = roots.iter().map(|r| e.apply(r)).collect();
            assert_eq!(img, roots);
        }
    }

    #[test]
    fn inverse_and_closure_sampled() {
        let (_, w) = group(RootType::C, 3);
        let r = w.rank();
        for (k, e) in w.elements.iter().enumerate().step_by(7) {
            let inv = w.inverse_matrix(e);
            assert!(w.find(&inv).is_some());
            let prod = mat_mul(&e.matrix, &inv, r);
            assert_eq!(Some(0), w.find(&prod));
            let other = &w.elements[(k * 13 + 5) % w.order];
            assert!(w.find(&e.compose(other, r)).is_some());
        }
    }
}
