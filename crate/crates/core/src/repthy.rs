//! Irreducible modules: Freudenthal multiplicities, the Weyl dimension
//! formula, the smallness criterion, and graded multiplicities in the
//! exterior algebra by the alternating Weyl sum.

use std::collections::{BTreeMap, VecDeque};

use num_rational::{Ratio, Rational64};
use num_traits::{Signed, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::gradedchar::GradedCharacter;
use crate::qpoly::QPoly;
use crate::rootdata::RootSystem;
use crate::weight::Weight;
use crate::weyl::orbit_by_reflections;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("weight {weight} has {got} coordinates, expected {rank}")]
    RankMismatch {
        weight: Weight,
        got: usize,
        rank: usize,
    },
    #[error("Freudenthal total {freudenthal} disagrees with Weyl dimension {weyl} for {weight}")]
    DimensionMismatch {
        weight: Weight,
        freudenthal: u128,
        weyl: u128,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepInfo {
    pub highest_weight: Weight,
    pub dim: u128,
    /// Multiplicity of every weight, including non-dominant ones.
    pub weight_mults: BTreeMap<Weight, u64>,
    pub zero_weight_dim: u64,
}

impl IrrepInfo {
    pub fn dominant_mults(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.weight_mults.iter().filter(|(w, _)| w.is_dominant())
    }
}

fn check_dominant(rs: &RootSystem, lam: &Weight) -> Result<(), RepError> {
    if lam.rank() != rs.rank {
        return Err(RepError::RankMismatch {
            weight: lam.clone(),
            got: lam.rank(),
            rank: rs.rank,
        });
    }
    if !lam.is_dominant() {
        return Err(RepError::NotDominant(lam.clone()));
    }
    Ok(())
}

/// `prod_{alpha > 0} (lam + rho, alpha) / (rho, alpha)`.
pub fn weyl_dimension(rs: &RootSystem, lam: &Weight) -> u128 {
    let rho = rs.rho_weight();
    let shifted = lam + &rho;
    let mut num = Ratio::<i128>::from_integer(1);
    for a in &rs.positive_roots {
        let x = rs.inner(&shifted, &a.weight);
        let y = rs.inner(&rho, &a.weight);
        let x = Ratio::new(*x.numer() as i128, *x.denom() as i128);
        let y = Ratio::new(*y.numer() as i128, *y.denom() as i128);
        num = num * x / y;
    }
    assert!(num.is_integer(), "Weyl dimension is not integral");
    num.to_integer().to_u128().expect("positive dimension")
}

/// Dominant weights below `lam`, ordered by increasing depth `height(lam - mu)`.
pub fn dominant_weights_below(rs: &RootSystem, lam: &Weight) -> Vec<Weight> {
    let mut seen: FxHashSet<Weight> = FxHashSet::default();
    let mut out = vec![lam.clone()];
    seen.insert(lam.clone());
    let mut queue = VecDeque::from([lam.clone()]);
    while let Some(mu) = queue.pop_front() {
        for a in &rs.positive_roots {
            let nu = &mu - &a.weight;
            if nu.is_dominant() && seen.insert(nu.clone()) {
                out.push(nu.clone());
                queue.push_back(nu);
            }
        }
    }
    let depth = |w: &Weight| -> Rational64 { rs.to_root_coords(&(lam - w)).into_iter().sum() };
    out.sort_by(|a, b| depth(a).cmp(&depth(b)).then_with(|| b.cmp(a)));
    out
}

/// Freudenthal multiplicities on the dominant chamber.
pub fn dominant_multiplicities(
    rs: &RootSystem,
    lam: &Weight,
) -> Result<Vec<(Weight, u64)>, RepError> {
    check_dominant(rs, lam)?;
    let rho = rs.rho_weight();
    let lr = lam + &rho;
    let top = rs.inner(&lr, &lr);
    let order = dominant_weights_below(rs, lam);
    let mut mult: FxHashMap<Weight, u64> = FxHashMap::default();
    mult.insert(lam.clone(), 1);
    let mut out = vec![(lam.clone(), 1)];
    for mu in order.iter().skip(1) {
        let mut acc = Rational64::zero();
        for a in &rs.positive_roots {
            let mut k = 1;
            loop {
                let nu = mu + &(&a.weight * k);
                let (dom, _) = rs.dominant_rep(&nu);
                let Some(&m) = mult.get(&dom) else { break };
                acc += Rational64::from_integer(m as i64) * rs.inner(&nu, &a.weight);
                k += 1;
            }
        }
        let mr = mu + &rho;
        let denom = top - rs.inner(&mr, &mr);
        let m = acc * Rational64::from_integer(2) / denom;
        assert!(
            m.is_integer() && !m.is_negative(),
            "Freudenthal produced {m} at {mu}"
        );
        let m = m.to_integer() as u64;
        if m > 0 {
            mult.insert(mu.clone(), m);
            out.push((mu.clone(), m));
        }
    }
    Ok(out)
}

pub fn irrep_info(rs: &RootSystem, lam: &Weight) -> Result<IrrepInfo, RepError> {
    let dominant = dominant_multiplicities(rs, lam)?;
    let mut weight_mults = BTreeMap::new();
    let mut total: u128 = 0;
    for (mu, m) in &dominant {
        for w in orbit_by_reflections(rs, mu) {
            total += *m as u128;
            weight_mults.insert(w, *m);
        }
    }
    let dim = weyl_dimension(rs, lam);
    if dim != total {
        return Err(RepError::DimensionMismatch {
            weight: lam.clone(),
            freudenthal: total,
            weyl: dim,
        });
    }
    let zero_weight_dim = weight_mults
        .get(&Weight::zero(rs.rank))
        .copied()
        .unwrap_or(0);
    Ok(IrrepInfo {
        highest_weight: lam.clone(),
        dim,
        weight_mults,
        zero_weight_dim,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smallness {
    pub small: bool,
    /// The dominant root `eta` with `lam >= 2 eta`, when not small.
    pub witness: Option<Weight>,
}

/// `lam` is small iff `lam` is not above `2 theta` or `2 theta_s`.
pub fn is_small(rs: &RootSystem, lam: &Weight) -> Smallness {
    let mut etas = vec![rs.theta.clone()];
    etas.extend(rs.theta_s.clone());
    for eta in etas {
        if rs.dominance_geq(lam, &(&eta * 2)) {
            return Smallness {
                small: false,
                witness: Some(eta),
            };
        }
    }
    Smallness {
        small: true,
        witness: None,
    }
}

/// Smallness from the definition: no weight of `L(lam)` is twice a root.
pub fn is_small_by_weights(rs: &RootSystem, info: &IrrepInfo) -> bool {
    rs.all_roots()
        .iter()
        .all(|a| !info.weight_mults.contains_key(&(a * 2)))
}

/// Criterion verdict, asserted against the definition.
pub fn is_small_checked(rs: &RootSystem, lam: &Weight) -> Result<Smallness, RepError> {
    let verdict = is_small(rs, lam);
    let info = irrep_info(rs, lam)?;
    assert_eq!(
        verdict.small,
        is_small_by_weights(rs, &info),
        "smallness criterion disagrees with the weights of L({lam})"
    );
    Ok(verdict)
}

/// `M_lam(q) = sum_w eps(w) c(w(lam + rho) - rho)`.
///
/// The orbit of the regular weight `lam + rho` is walked once; terms with
/// the same dominant representative are merged before querying the
/// character, so cancelling pairs cost nothing.
pub fn graded_multiplicity(
    rs: &RootSystem,
    lam: &Weight,
    ch: &GradedCharacter,
) -> Result<QPoly, RepError> {
    check_dominant(rs, lam)?;
    if !rs.in_root_lattice(lam) {
        return Ok(QPoly::zero());
    }
    let rho = rs.rho_weight();
    let mut grouped: BTreeMap<Weight, i64> = BTreeMap::new();
    for x in orbit_by_reflections(rs, &(lam + &rho)) {
        let (_, odd) = rs.dominant_rep(&x);
        let sign = if odd { -1 } else { 1 };
        let (dom, _) = rs.dominant_rep(&(&x - &rho));
        *grouped.entry(dom).or_default() += sign;
    }
    let mut total = QPoly::zero();
    for (dom, s) in grouped {
        if s != 0 {
            total = &total + &ch.coefficient(&dom).scale(s);
        }
    }
    assert!(
        total.is_polynomial() && total.is_nonnegative(),
        "graded multiplicity of L({lam}) is not a nonnegative polynomial: {total}"
    );
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedchar::CharacterMode;
    use crate::rootdata::RootType;
    use crate::weyl::WeylGroup;

    fn sys(t: RootType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    #[test]
    fn little_adjoint_data() {
        for (t, d) in [(RootType::B, 5), (RootType::G, 7)] {
            let rs = sys(t, 2);
            let info = irrep_info(&rs, rs.theta_s.as_ref().unwrap()).unwrap();
            assert_eq!((info.dim, info.zero_weight_dim), (d, 1));
        }
        let c3 = sys(RootType::C, 3);
        let info = irrep_info(&c3, c3.theta_s.as_ref().unwrap()).unwrap();
        assert_eq!((info.dim, info.zero_weight_dim), (14, 2));
        let triv = irrep_info(&c3, &Weight::zero(3)).unwrap();
        assert_eq!((triv.dim, triv.zero_weight_dim), (1, 1));
    }

    #[test]
    fn adjoint_dimension_and_rank() {
        for (t, r) in RootType::all_up_to_rank(4) {
            let rs = sys(t, r);
            let info = irrep_info(&rs, &rs.theta).unwrap();
            assert_eq!(info.dim as usize, rs.dim_g(), "{t}{r}");
            assert_eq!(info.zero_weight_dim as usize, r);
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let rs = sys(RootType::A, 2);
        assert!(matches!(
            irrep_info(&rs, &Weight::new(vec![1, -1])),
            Err(RepError::NotDominant(_))
        ));
    }

    /// Brute-force weights of a tensor power of the natural module of sl3.
    #[test]
    fn freudenthal_matches_tensor_expansion() {
        let rs = sys(RootType::A, 2);
        // weights of V, in fundamental coordinates
        let v = [vec![1, 0], vec![-1, 1], vec![0, -1]];
        let mut tensor: BTreeMap<Weight, i64> = BTreeMap::new();
        for a in &v {
            for b in &v {
                for c in &v {
                    let w = Weight::new((0..2).map(|i| a[i] + b[i] + c[i]).collect());
                    *tensor.entry(w).or_default() += 1;
                }
            }
        }
        // V^{x3} = S^3 V + 2 L(1,1) + trivial
        let mut expect: BTreeMap<Weight, i64> = BTreeMap::new();
        for (lam, k) in [(vec![3, 0], 1), (vec![1, 1], 2), (vec![0, 0], 1)] {
            for (w, m) in irrep_info(&rs, &Weight::new(lam)).unwrap().weight_mults {
                *expect.entry(w).or_default() += k * m as i64;
            }
        }
        assert_eq!(tensor, expect);
    }

    #[test]
    fn weight_mults_are_invariant() {
        let rs = sys(RootType::B, 2);
        let w = WeylGroup::generate(&rs).unwrap();
        let info = irrep_info(&rs, &Weight::new(vec![2, 2])).unwrap();
        for (mu, m) in &info.weight_mults {
            for e in &w.elements {
                assert_eq!(info.weight_mults.get(&e.apply(mu)), Some(m));
            }
        }
    }

    #[test]
    fn smallness() {
        let a2 = sys(RootType::A, 2);
        assert!(is_small_checked(&a2, &a2.theta).unwrap().small);
        assert!(
            is_small_checked(&a2, &Weight::new(vec![3, 0]))
                .unwrap()
                .small
        );
        let v = is_small_checked(&a2, &(&a2.theta * 2)).unwrap();
        assert_eq!(v.witness, Some(a2.theta.clone()));
        let b2 = sys(RootType::B, 2);
        let ts = b2.theta_s.clone().unwrap();
        assert!(is_small_checked(&b2, &ts).unwrap().small);
        assert_eq!(is_small_checked(&b2, &(&ts * 2)).unwrap().witness, Some(ts));
    }

    #[test]
    fn criterion_matches_definition_rank2() {
        for t in [RootType::A, RootType::B, RootType::G] {
            let rs = sys(t, 2);
            for a in 0..6 {
                for b in 0..6 {
                    is_small_checked(&rs, &Weight::new(vec![a, b])).unwrap();
                }
            }
        }
    }

    #[test]
    fn sl2_graded_multiplicities() {
        let rs = sys(RootType::A, 1);
        let ch = GradedCharacter::new(&rs, CharacterMode::Full).unwrap();
        let gm = |k| graded_multiplicity(&rs, &Weight::new(vec![k]), &ch).unwrap();
        assert_eq!(gm(2), QPoly::from_terms([(1, 1), (2, 1)]));
        assert_eq!(gm(0), QPoly::from_terms([(0, 1), (3, 1)]));
        assert!(gm(1).is_zero());
        assert!(gm(4).is_zero());
    }

    #[test]
    fn g2_little_adjoint() {
        let rs = sys(RootType::G, 2);
        let ch = GradedCharacter::new(&rs, CharacterMode::Full).unwrap();
        let m = graded_multiplicity(&rs, rs.theta_s.as_ref().unwrap(), &ch).unwrap();
        assert_eq!(m, QPoly::from_terms([(5, 1), (6, 1), (8, 1), (9, 1)]));
    }

    /// The graded multiplicities recompose the whole character.
    #[test]
    fn decomposition_recovers_dimension() {
        for (t, r) in [
            (RootType::A, 2),
            (RootType::B, 2),
            (RootType::G, 2),
            (RootType::A, 3),
        ] {
            let rs = sys(t, r);
            let ch = GradedCharacter::new(&rs, CharacterMode::Full).unwrap();
            let mut total = QPoly::zero();
            for w in ch
                .support()
                .unwrap()
                .into_iter()
                .filter(|w| w.is_dominant())
            {
                let m = graded_multiplicity(&rs, &w, &ch).unwrap();
                if !m.is_zero() {
                    let d = weyl_dimension(&rs, &w) as i64;
                    total = &total + &m.scale(d);
                }
            }
            assert_eq!(
                total,
                QPoly::one_plus_q_pow(1).pow(rs.dim_g() as u32),
                "{t}{r}"
            );
        }
    }

    #[test]
    fn invariants_and_palindromes() {
        for (t, r) in RootType::all_up_to_rank(3) {
            let rs = sys(t, r);
            let ch = GradedCharacter::new(&rs, CharacterMode::Targeted).unwrap();
            let inv = graded_multiplicity(&rs, &Weight::zero(r), &ch).unwrap();
            let expect: QPoly = rs
                .exponents
                .iter()
                .map(|&m| QPoly::one_plus_q_pow(2 * m as i32 + 1))
                .product();
            assert_eq!(inv, expect, "{t}{r}");
            let adj = graded_multiplicity(&rs, &rs.theta, &ch).unwrap();
            assert_eq!(adj.reflect(rs.dim_g() as i32), adj);
        }
    }
}
