//! The covariants `Phi`, `Psi`, their duals, and the pairing `(Psi, Phi*)`.
//!
//! Top exterior powers are trivialized by `e_1 ^ ... ^ e_n -> 1`, so every
//! covariant value is a determinant. The pairing is computed two ways: as
//! a wedge product of polarized forms summed against the canonical element
//! of `S^n V (x) S^n V*`, and as the alternated sum of trace monomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::matrix::{
    compose, det_columns, factorial, inverse, permutations, sign, IntMatrix, Perm, RationalMatrix,
};
use super::trace::{scale_all, trace_cycles, trace_cycles_int};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("expected {expected} matrices of size {n}, got {got}")]
    Arity {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("argument {0} is not traceless")]
    NotTraceless(usize),
    #[error("the two evaluation paths disagree: direct {direct}, trace form {trace}")]
    PathMismatch {
        direct: BigRational,
        trace: BigRational,
    },
}

fn det_rational(cols: &[Vec<BigRational>]) -> BigRational {
    let n = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect();
    let mut det = BigRational::from_integer(1.into());
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    det
}

fn check_arity(v: &[BigRational], ms: &[RationalMatrix], k: usize) {
    let n = v.len();
    assert_eq!(ms.len(), k, "wrong number of matrices");
    assert!(ms.iter().all(|m| m.size() == n), "dimension mismatch");
}

/// `Phi(v)(A_1, ..., A_n) = det[A_1 v | ... | A_n v]`.
pub fn phi_eval(v: &[BigRational], ms: &[RationalMatrix]) -> BigRational {
    check_arity(v, ms, v.len());
    det_rational(&ms.iter().map(|m| m.apply(v)).collect::<Vec<_>>())
}

/// `Psi(v)(A_1, ..., A_{n-1}) = det[A_1 v | ... | A_{n-1} v | v]`.
pub fn psi_eval(v: &[BigRational], ms: &[RationalMatrix]) -> BigRational {
    check_arity(v, ms, v.len() - 1);
    let mut cols: Vec<Vec<BigRational>> = ms.iter().map(|m| m.apply(v)).collect();
    cols.push(v.to_vec());
    det_rational(&cols)
}

/// `Phi*(gamma)(B_1, ..., B_n) = det[B_1^t gamma | ... | B_n^t gamma]`.
pub fn phi_star_eval(gamma: &[BigRational], ms: &[RationalMatrix]) -> BigRational {
    let ts: Vec<RationalMatrix> = ms.iter().map(|m| m.transpose()).collect();
    phi_eval(gamma, &ts)
}

pub fn psi_star_eval(gamma: &[BigRational], ms: &[RationalMatrix]) -> BigRational {
    let ts: Vec<RationalMatrix> = ms.iter().map(|m| m.transpose()).collect();
    psi_eval(gamma, &ts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovariantKind {
    Phi,
    Psi,
    PhiStar,
    PsiStar,
}

/// A covariant evaluated on monomials `e_{a_1} ... e_{a_n}` of `S^n V`
/// (or of `S^n V*` for the starred kinds) through its polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CovariantForm {
    pub n: usize,
    pub kind: CovariantKind,
}

impl CovariantForm {
    pub fn new(n: usize, kind: CovariantKind) -> Self {
        CovariantForm { n, kind }
    }

    /// Number of matrix arguments.
    pub fn degree(&self) -> usize {
        match self.kind {
            CovariantKind::Phi | CovariantKind::PhiStar => self.n,
            CovariantKind::Psi | CovariantKind::PsiStar => self.n - 1,
        }
    }

    /// `n!` times the polarized value, over integers.
    pub(crate) fn eval_int_scaled(
        &self,
        monomial: &[usize],
        ms: &[IntMatrix],
        perms: &[Perm],
    ) -> i128 {
        let n = self.n;
        let starred = matches!(self.kind, CovariantKind::PhiStar | CovariantKind::PsiStar);
        let mut acc = 0i128;
        let mut cols = vec![Vec::new(); n];
        for s in perms {
            for (h, m) in ms.iter().enumerate() {
                let a = monomial[s[h]];
                // M e_a is column a; M^t eps_a is row a
                cols[h] = if starred { m.row(a) } else { m.column(a) };
            }
            if ms.len() < n {
                let mut e = vec![0i128; n];
                e[monomial[s[n - 1]]] = 1;
                cols[n - 1] = e;
            }
            acc = acc.checked_add(det_columns(&cols)).expect("i128 overflow");
        }
        acc
    }

    pub fn eval(&self, monomial: &[usize], ms: &[RationalMatrix]) -> BigRational {
        assert_eq!(monomial.len(), self.n);
        assert_eq!(ms.len(), self.degree(), "wrong number of matrices");
        let (ints, denom) = scale_all(ms);
        let perms = permutations(self.n);
        let v = self.eval_int_scaled(monomial, &ints, &perms);
        BigRational::new(BigInt::from(v), denom * BigInt::from(factorial(self.n)))
    }
}

/// Nondecreasing index sequences in `0..n` of length `n`.
pub fn monomials(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut Vec::new(), &mut out);
    out
}

/// Number of orderings of a sorted multi-index: `n! / prod mult!`.
pub fn orderings(monomial: &[usize]) -> u64 {
    let mut d = 1;
    let mut run = 1;
    for w in monomial.windows(2) {
        if w[0] == w[1] {
            run += 1;
            d *= run;
        } else {
            run = 1;
        }
    }
    factorial(monomial.len()) / d
}

/// Subsets of `0..m` of size `k` with the sign of the shuffle `(S, S^c)`.
pub fn shuffles(m: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>, i64)> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let s: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let c: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 0).collect();
        let order: Vec<usize> = s.iter().chain(&c).copied().collect();
        out.push((s, c, sign(&order)));
    }
    out
}

fn check_args(n: usize, xs: &[RationalMatrix]) -> Result<(), PairingError> {
    if xs.len() != 2 * n - 1 || xs.iter().any(|x| x.size() != n) {
        return Err(PairingError::Arity {
            n,
            expected: 2 * n - 1,
            got: xs.len(),
        });
    }
    if let Some(i) = xs.iter().position(|x| !x.is_traceless()) {
        return Err(PairingError::NotTraceless(i));
    }
    Ok(())
}

/// `(psi ^ phi*)` summed over the canonical element, with the wedge product
/// of an `(n-1)`-form and an `n`-form expanded over shuffles.
pub fn pairing_direct(n: usize, xs: &[RationalMatrix]) -> Result<BigRational, PairingError> {
    check_args(n, xs)?;
    let (ints, denom) = scale_all(xs);
    let perms = permutations(n);
    let psi = CovariantForm::new(n, CovariantKind::Psi);
    let phis = CovariantForm::new(n, CovariantKind::PhiStar);
    let sh = shuffles(2 * n - 1, n - 1);
    let mut total = 0i128;
    for a in monomials(n) {
        let mut inner = 0i128;
        for (s, c, sg) in &sh {
            let xa: Vec<IntMatrix> = s.iter().map(|&i| ints[i].clone()).collect();
            let xb: Vec<IntMatrix> = c.iter().map(|&i| ints[i].clone()).collect();
            let l = psi.eval_int_scaled(&a, &xa, &perms);
            if l == 0 {
                continue;
            }
            let r = phis.eval_int_scaled(&a, &xb, &perms);
            inner = inner
                .checked_add(*sg as i128 * l.checked_mul(r).expect("i128 overflow"))
                .expect("i128 overflow");
        }
        total = total
            .checked_add(
                inner
                    .checked_mul(orderings(&a) as i128)
                    .expect("i128 overflow"),
            )
            .expect("i128 overflow");
    }
    let nf = BigInt::from(factorial(n));
    Ok(BigRational::new(BigInt::from(total), denom * &nf * &nf))
}

/// `counts[lambda][kappa]`: number of `(sigma, tau)` with
/// `sigma^{-1} tau lambda = kappa`, indexed by position in `permutations(n)`.
fn triple_counts(perms: &[Perm]) -> Vec<Vec<u64>> {
    let index = |p: &Perm| perms.binary_search(p).expect("listed permutation");
    let mut counts = vec![vec![0u64; perms.len()]; perms.len()];
    for s in perms {
        let si = inverse(s);
        for t in perms {
            let st = compose(&si, t);
            for (li, l) in perms.iter().enumerate() {
                counts[li][index(&compose(&st, l))] += 1;
            }
        }
    }
    counts
}

/// `C_n^{-1} Alt` of `(n!)^{-2} sum_{sigma,tau,lambda} eps(lambda)
/// phi_{sigma^{-1} tau lambda}(B_{lambda(1)} A_1, ..., B_{lambda(n-1)} A_{n-1}, B_{lambda(n)})`
/// with `(A_1, ..., A_{n-1}, B_1, ..., B_n) = (X_1, ..., X_{2n-1})`.
pub fn pairing_trace_form(n: usize, xs: &[RationalMatrix]) -> Result<BigRational, PairingError> {
    check_args(n, xs)?;
    let (ints, denom) = scale_all(xs);
    let m = 2 * n - 1;
    let perms = permutations(n);
    let counts = triple_counts(&perms);
    let lsigns: Vec<i128> = perms.iter().map(|p| sign(p) as i128).collect();
    let cycles: Vec<Vec<Vec<usize>>> = perms.iter().map(|k| trace_cycles(k)).collect();
    let mut pair = vec![vec![None; m]; m];
    for p in 0..m {
        for q in 0..m {
            if p != q {
                pair[p][q] = Some(ints[p].mul(&ints[q]));
            }
        }
    }
    let mut total = 0i128;
    let mut ws: Vec<&IntMatrix> = vec![&ints[0]; n];
    for pi in permutations(m) {
        let (a, b) = pi.split_at(n - 1);
        let mut f = 0i128;
        for (li, l) in perms.iter().enumerate() {
            for h in 0..n - 1 {
                ws[h] = pair[b[l[h]]][a[h]].as_ref().unwrap();
            }
            ws[n - 1] = &ints[b[l[n - 1]]];
            let mut g = 0i128;
            for (ki, cyc) in cycles.iter().enumerate() {
                let c = counts[li][ki] as i128;
                if c != 0 {
                    g = g
                        .checked_add(c * trace_cycles_int(cyc, &ws))
                        .expect("i128 overflow");
                }
            }
            f = f.checked_add(lsigns[li] * g).expect("i128 overflow");
        }
        total = total
            .checked_add(sign(&pi) as i128 * f)
            .expect("i128 overflow");
    }
    let nf = BigInt::from(factorial(n));
    let norm = &nf * &nf * &nf * BigInt::from(factorial(n - 1));
    Ok(BigRational::new(BigInt::from(total), denom * norm))
}

/// `(Psi, Phi*)` on `2n - 1` traceless matrices, by both paths.
pub fn pairing_psi_phistar(n: usize, xs: &[RationalMatrix]) -> Result<BigRational, PairingError> {
    let direct = pairing_direct(n, xs)?;
    let trace = pairing_trace_form(n, xs)?;
    if direct != trace {
        return Err(PairingError::PathMismatch { direct, trace });
    }
    Ok(direct)
}

/// `(-1)^{n(n-1)/2} / n!`.
pub fn pairing_constant(n: usize) -> BigRational {
    let s = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    BigRational::new(BigInt::from(s), BigInt::from(factorial(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slnpairing::matrix::rat;
    use crate::slnpairing::trace::trace_t;
    use rand::SeedableRng;

    fn sl2() -> (RationalMatrix, RationalMatrix, RationalMatrix) {
        (
            RationalMatrix::from_ints(2, &[0, 1, 0, 0]),
            RationalMatrix::from_ints(2, &[1, 0, 0, -1]),
            RationalMatrix::from_ints(2, &[0, 0, 1, 0]),
        )
    }

    #[test]
    fn psi_small_values() {
        let (e, _, f) = sl2();
        let e1 = vec![rat(1), rat(0)];
        assert_eq!(psi_eval(&e1, &[e]), rat(0));
        assert_eq!(psi_eval(&e1, &[f]), rat(-1));
    }

    #[test]
    fn polarization_restricts_to_diagonal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let ms: Vec<RationalMatrix> = (0..3)
            .map(|_| RationalMatrix::random_traceless(3, &mut rng))
            .collect();
        let e0 = vec![rat(1), rat(0), rat(0)];
        for (kind, k, direct) in [
            (CovariantKind::Phi, 3, phi_eval(&e0, &ms)),
            (CovariantKind::Psi, 2, psi_eval(&e0, &ms[..2])),
            (CovariantKind::PhiStar, 3, phi_star_eval(&e0, &ms)),
            (CovariantKind::PsiStar, 2, psi_star_eval(&e0, &ms[..2])),
        ] {
            assert_eq!(
                CovariantForm::new(3, kind).eval(&[0, 0, 0], &ms[..k]),
                direct
            );
        }
    }

    #[test]
    fn covariants_alternate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let ms: Vec<RationalMatrix> = (0..3)
            .map(|_| RationalMatrix::random_traceless(3, &mut rng))
            .collect();
        let phi = CovariantForm::new(3, CovariantKind::Phi);
        let mut sw = ms.clone();
        sw.swap(0, 2);
        assert_eq!(phi.eval(&[0, 1, 1], &sw), -phi.eval(&[0, 1, 1], &ms));
    }

    #[test]
    fn combinatorics() {
        assert_eq!(monomials(3).len(), 10);
        assert_eq!(monomials(4).len(), 35);
        assert_eq!(orderings(&[0, 0, 1]), 3);
        assert_eq!(orderings(&[0, 1, 2]), 6);
        assert_eq!(
            shuffles(3, 1).iter().map(|s| s.2).collect::<Vec<_>>(),
            [1, -1, 1]
        );
    }

    #[test]
    fn sl2_example() {
        let (e, h, f) = sl2();
        let xs = [e.clone(), h.clone(), f.clone()];
        assert_eq!(pairing_psi_phistar(2, &xs).unwrap(), rat(3));
        assert_eq!(pairing_constant(2) * trace_t(1, &xs).unwrap(), rat(3));
        assert!(pairing_psi_phistar(2, &[e.clone(), e.clone(), f])
            .unwrap()
            .is_zero());
        assert!(matches!(
            pairing_direct(2, &[e.clone(), h.clone(), RationalMatrix::identity(2)]),
            Err(PairingError::NotTraceless(2))
        ));
    }

    #[test]
    fn paths_agree_n3() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..3 {
            let xs: Vec<RationalMatrix> = (0..5)
                .map(|_| RationalMatrix::random_traceless(3, &mut rng))
                .collect();
            let p = pairing_psi_phistar(3, &xs).unwrap();
            assert_eq!(p, pairing_constant(3) * trace_t(2, &xs).unwrap());
        }
    }
}
