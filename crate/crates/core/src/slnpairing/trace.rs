//! Standard polynomials, the invariants `T_i`, and trace monomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::matrix::{inverse, permutations, sign, IntMatrix, RationalMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("T_{i} takes {expected} matrices, got {got}")]
    Arity {
        i: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrices of different sizes")]
    SizeMismatch,
    #[error("empty argument list")]
    Empty,
}

fn check_sizes(ms: &[RationalMatrix]) -> Result<usize, TraceError> {
    let n = ms.first().ok_or(TraceError::Empty)?.size();
    if ms.iter().any(|m| m.size() != n) {
        return Err(TraceError::SizeMismatch);
    }
    Ok(n)
}

/// `St_k(x_1, ..., x_k) = sum_sigma eps(sigma) x_{sigma(1)} ... x_{sigma(k)}`.
pub fn standard_poly(ms: &[RationalMatrix]) -> Result<RationalMatrix, TraceError> {
    let n = check_sizes(ms)?;
    let mut acc = RationalMatrix::zero(n);
    for p in permutations(ms.len()) {
        let prod = p.iter().skip(1).fold(ms[p[0]].clone(), |a, &i| &a * &ms[i]);
        acc = if sign(&p) > 0 {
            &acc + &prod
        } else {
            &acc - &prod
        };
    }
    Ok(acc)
}

/// Scales every matrix to an integer one; returns the product of the scales.
pub(crate) fn scale_all(ms: &[RationalMatrix]) -> (Vec<IntMatrix>, BigInt) {
    let mut denom = BigInt::from(1);
    let ints = ms
        .iter()
        .map(|m| {
            let (im, d) = m.to_scaled_ints();
            denom *= d;
            im
        })
        .collect();
    (ints, denom)
}

/// `sum_sigma eps(sigma) tr(x_{sigma(1)} ... x_{sigma(k)})` over integers,
/// walking permutations depth-first with shared prefix products.
pub(crate) fn trace_standard_int(ms: &[IntMatrix]) -> i128 {
    fn rec(
        ms: &[IntMatrix],
        used: &mut Vec<bool>,
        prefix: &IntMatrix,
        parity: i128,
        depth: usize,
        acc: &mut i128,
    ) {
        let k = ms.len();
        if depth == k - 1 {
            let last = used.iter().position(|u| !u).unwrap();
            // sign of the completed permutation: parity tracks inversions
            let inv_last = used[last + 1..].iter().filter(|&&u| u).count() as i128;
            let s = if (parity + inv_last) % 2 == 0 { 1 } else { -1 };
            *acc = acc
                .checked_add(s * prefix.trace_mul(&ms[last]))
                .expect("i128 overflow");
            return;
        }
        for i in 0..k {
            if used[i] {
                continue;
            }
            // elements already placed that exceed i form inversions
            let inv = used[i + 1..].iter().filter(|&&u| u).count() as i128;
            used[i] = true;
            let next = prefix.mul(&ms[i]);
            rec(ms, used, &next, parity + inv, depth + 1, acc);
            used[i] = false;
        }
    }
    let k = ms.len();
    if k == 1 {
        return ms[0].trace();
    }
    let mut acc = 0;
    let mut used = vec![false; k];
    rec(ms, &mut used, &IntMatrix::identity(ms[0].n), 0, 0, &mut acc);
    acc
}

/// `T_i = tr St_{2i+1}(A_1, ..., A_{2i+1})`.
pub fn trace_t(i: usize, ms: &[RationalMatrix]) -> Result<BigRational, TraceError> {
    if ms.len() != 2 * i + 1 {
        return Err(TraceError::Arity {
            i,
            expected: 2 * i + 1,
            got: ms.len(),
        });
    }
    check_sizes(ms)?;
    let (ints, denom) = scale_all(ms);
    Ok(BigRational::new(
        BigInt::from(trace_standard_int(&ints)),
        denom,
    ))
}

/// Cycles of `mu`, each listed as `i, mu^{-1}(i), mu^{-2}(i), ...` from its
/// smallest element.
pub fn trace_cycles(mu: &[usize]) -> Vec<Vec<usize>> {
    let inv = inverse(mu);
    let mut seen = vec![false; mu.len()];
    let mut out = Vec::new();
    for start in 0..mu.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cyc.push(j);
            j = inv[j];
        }
        out.push(cyc);
    }
    out
}

/// `phi_mu(W) = prod over cycles of tr(W_i W_{mu^{-1}(i)} ...)`; on rank-one
/// matrices `W_i = w_i gamma_i^t` this is `prod_i <w_i | gamma_{mu(i)}>`.
pub fn trace_monomial(mu: &[usize], ws: &[RationalMatrix]) -> BigRational {
    assert_eq!(mu.len(), ws.len());
    let (ints, denom) = scale_all(ws);
    BigRational::new(BigInt::from(trace_monomial_int(mu, &ints)), denom)
}

pub(crate) fn trace_monomial_int(mu: &[usize], ws: &[IntMatrix]) -> i128 {
    let refs: Vec<&IntMatrix> = ws.iter().collect();
    trace_cycles_int(&trace_cycles(mu), &refs)
}

/// `trace_monomial_int` with the cycle decomposition supplied.
pub(crate) fn trace_cycles_int(cycles: &[Vec<usize>], ws: &[&IntMatrix]) -> i128 {
    let mut out = 1i128;
    for cyc in cycles {
        let t = match cyc.len() {
            1 => ws[cyc[0]].trace(),
            2 => ws[cyc[0]].trace_mul(ws[cyc[1]]),
            _ => {
                let head = cyc[..cyc.len() - 1]
                    .iter()
                    .skip(2)
                    .fold(ws[cyc[0]].mul(ws[cyc[1]]), |a, &i| a.mul(ws[i]));
                head.trace_mul(ws[*cyc.last().unwrap()])
            }
        };
        out = out.checked_mul(t).expect("i128 overflow");
        if out == 0 {
            break;
        }
    }
    out
}
