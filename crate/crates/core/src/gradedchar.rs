//! The graded character of the exterior algebra of `g`,
//! `(1 + q)^r * prod_{alpha in Delta} (1 + q e^alpha)`.
//!
//! Full mode expands the product over all roots and keeps every weight.
//! Targeted mode only expands the positive half `P(beta) = [e^beta] prod_{alpha > 0} (1 + q e^alpha)`
//! and answers a query at `mu` by the convolution
//! `sum_beta P(beta) * P(beta - mu)`, using that the negative half is the
//! mirror image of the positive one. Queries are reduced to the dominant
//! chamber first since the character is W-invariant.

use std::sync::Mutex;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qpoly::QPoly;
use crate::rootdata::RootSystem;
use crate::weight::Weight;

pub const MAX_RANK: usize = 8;

/// Root-basis coordinates packed for hashing.
pub type Key = [i16; MAX_RANK];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharacterError {
    #[error("full expansion of {label} is disabled above rank {max_rank}; use targeted mode")]
    FullRankLimit { label: String, max_rank: usize },
    #[error(
        "full expansion of {label} needs about {needed} coefficient slots, over the budget of {budget}; use targeted mode"
    )]
    MemoryBudget {
        label: String,
        needed: usize,
        budget: usize,
    },
    #[error("root coordinate {0} does not fit the packed key")]
    KeyRange(i64),
    #[error("coefficients of {label} (dimension {dim}) overflow 64-bit integers")]
    CoefficientRange { label: String, dim: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterMode {
    Full,
    Targeted,
}

impl std::fmt::Display for CharacterMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CharacterMode::Full => "full",
            CharacterMode::Targeted => "targeted",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CharacterConfig {
    pub max_full_rank: usize,
    /// Cap on stored coefficients (summed over weights) in full mode.
    pub max_full_slots: usize,
}

impl Default for CharacterConfig {
    fn default() -> Self {
        CharacterConfig {
            max_full_rank: 4,
            max_full_slots: 120_000_000,
        }
    }
}

pub fn pack(coords: &[i64]) -> Result<Key, CharacterError> {
    let mut k = [0i16; MAX_RANK];
    for (slot, &c) in k.iter_mut().zip(coords) {
        *slot = i16::try_from(c).map_err(|_| CharacterError::KeyRange(c))?;
    }
    Ok(k)
}

pub fn unpack(key: &Key, rank: usize) -> Vec<i64> {
    key[..rank].iter().map(|&c| c as i64).collect()
}

fn shifted(key: &Key, delta: &Key, sign: i16) -> Key {
    let mut out = *key;
    for (o, d) in out.iter_mut().zip(delta) {
        *o += sign * d;
    }
    out
}

/// Coefficients of `q^0, q^1, ...` with no trailing zeros required.
type Dense = Vec<i64>;

fn add_shifted_q(target: &mut Dense, src: &Dense) {
    if target.len() < src.len() + 1 {
        target.resize(src.len() + 1, 0);
    }
    for (k, &c) in src.iter().enumerate() {
        target[k + 1] += c;
    }
}

/// Multiplies the table by `1 + q e^{sign * alpha}`.
fn apply_factor(table: &FxHashMap<Key, Dense>, alpha: &Key, sign: i16) -> FxHashMap<Key, Dense> {
    let mut next = table.clone();
    next.reserve(table.len() / 4);
    for (k, p) in table {
        let t = shifted(k, alpha, sign);
        add_shifted_q(next.entry(t).or_default(), p);
    }
    next
}

fn dense_to_qpoly(d: &Dense) -> QPoly {
    QPoly::from_coeffs(0, d.clone())
}

fn dense_mul_acc(acc: &mut Dense, a: &Dense, b: &Dense) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    if acc.len() < a.len() + b.len() - 1 {
        acc.resize(a.len() + b.len() - 1, 0);
    }
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += x * y;
        }
    }
}

enum Storage {
    Full(FxHashMap<Key, Dense>),
    Targeted {
        half: FxHashMap<Key, Dense>,
        memo: Mutex<FxHashMap<Weight, QPoly>>,
    },
}

pub struct GradedCharacter {
    rs: RootSystem,
    mode: CharacterMode,
    cartan_factor: QPoly,
    two_rho: Vec<i64>,
    storage: Storage,
}

impl std::fmt::Debug for GradedCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedCharacter")
            .field("algebra", &self.rs.label())
            .field("mode", &self.mode)
            .field("stored", &self.stored_len())
            .finish()
    }
}

fn positive_keys(rs: &RootSystem) -> Result<Vec<Key>, CharacterError> {
    rs.positive_roots
        .iter()
        .map(|r| pack(&r.root_coords))
        .collect()
}

/// `[e^beta] prod_{alpha > 0} (1 + q e^alpha)` over all subset sums.
fn expand_positive_half(rs: &RootSystem) -> Result<FxHashMap<Key, Dense>, CharacterError> {
    let mut table: FxHashMap<Key, Dense> = FxHashMap::default();
    table.insert([0; MAX_RANK], vec![1]);
    for a in positive_keys(rs)? {
        table = apply_factor(&table, &a, 1);
    }
    Ok(table)
}

/// Rough slot count of the full expansion: subset-sum support of the positive
/// half grown by the zonotope doubling, times the degree range.
fn estimate_full_slots(half_len: usize, rank: usize, npos: usize) -> usize {
    half_len.saturating_mul(1 << rank).saturating_mul(npos + 1)
}

impl GradedCharacter {
    pub fn new(rs: &RootSystem, mode: CharacterMode) -> Result<Self, CharacterError> {
        Self::with_config(rs, mode, CharacterConfig::default())
    }

    pub fn with_config(
        rs: &RootSystem,
        mode: CharacterMode,
        config: CharacterConfig,
    ) -> Result<Self, CharacterError> {
        // all coefficients together sum to 2^dim
        if rs.dim_g() > 62 {
            return Err(CharacterError::CoefficientRange {
                label: rs.label(),
                dim: rs.dim_g(),
            });
        }
        let storage = match mode {
            CharacterMode::Full => {
                if rs.rank > config.max_full_rank {
                    return Err(CharacterError::FullRankLimit {
                        label: rs.label(),
                        max_rank: config.max_full_rank,
                    });
                }
                let half = expand_positive_half(rs)?;
                let needed = estimate_full_slots(half.len(), rs.rank, rs.positive_roots.len());
                if needed > config.max_full_slots {
                    return Err(CharacterError::MemoryBudget {
                        label: rs.label(),
                        needed,
                        budget: config.max_full_slots,
                    });
                }
                let mut table = half;
                for a in positive_keys(rs)? {
                    table = apply_factor(&table, &a, -1);
                }
                Storage::Full(table)
            }
            CharacterMode::Targeted => Storage::Targeted {
                half: expand_positive_half(rs)?,
                memo: Mutex::new(FxHashMap::default()),
            },
        };
        Ok(Self::assemble(rs, mode, storage))
    }

    fn assemble(rs: &RootSystem, mode: CharacterMode, storage: Storage) -> Self {
        let two_rho = rs
            .root_lattice_coords(&rs.two_rho())
            .expect("2 rho is in the root lattice");
        GradedCharacter {
            rs: rs.clone(),
            mode,
            cartan_factor: QPoly::one_plus_q_pow(1).pow(rs.rank as u32),
            two_rho,
            storage,
        }
    }

    /// Rebuilds a character from stored `(root coordinates, coefficients)` entries,
    /// as written by [`GradedCharacter::stored_entries`].
    pub fn from_stored_entries(
        rs: &RootSystem,
        mode: CharacterMode,
        entries: Vec<(Vec<i64>, Vec<i64>)>,
    ) -> Result<Self, CharacterError> {
        let mut table = FxHashMap::default();
        for (c, d) in entries {
            table.insert(pack(&c)?, d);
        }
        let storage = match mode {
            CharacterMode::Full => Storage::Full(table),
            CharacterMode::Targeted => Storage::Targeted {
                half: table,
                memo: Mutex::new(FxHashMap::default()),
            },
        };
        Ok(Self::assemble(rs, mode, storage))
    }

    /// The stored table, sorted by root coordinates. In full mode these are
    /// the root-part coefficients of every weight (the Cartan factor is
    /// applied on read); in targeted mode the positive half.
    pub fn stored_entries(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let table = match &self.storage {
            Storage::Full(t) => t,
            Storage::Targeted { half, .. } => half,
        };
        let r = self.rs.rank;
        let mut v: Vec<(Vec<i64>, Vec<i64>)> = table
            .iter()
            .map(|(k, d)| {
                let mut d = d.clone();
                while d.last() == Some(&0) {
                    d.pop();
                }
                (unpack(k, r), d)
            })
            .collect();
        v.sort();
        v
    }

    pub fn mode(&self) -> CharacterMode {
        self.mode
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn stored_len(&self) -> usize {
        match &self.storage {
            Storage::Full(t) => t.len(),
            Storage::Targeted { half, .. } => half.len(),
        }
    }

    /// Every weight with nonzero coefficient, for full mode.
    pub fn support(&self) -> Option<Vec<Weight>> {
        match &self.storage {
            Storage::Full(t) => {
                let mut v: Vec<Weight> = t
                    .keys()
                    .map(|k| self.rs.from_root_coords(&unpack(k, self.rs.rank)))
                    .collect();
                v.sort();
                Some(v)
            }
            Storage::Targeted { .. } => None,
        }
    }

    /// Graded coefficient of `e^mu`; zero off the support.
    pub fn coefficient(&self, mu: &Weight) -> QPoly {
        let Some(c) = self.rs.root_lattice_coords(mu) else {
            return QPoly::zero();
        };
        // every weight of the exterior algebra lies below 2 rho
        if c.iter().zip(&self.two_rho).any(|(x, t)| x > t) {
            return QPoly::zero();
        }
        match &self.storage {
            Storage::Full(table) => {
                let Ok(k) = pack(&c) else {
                    return QPoly::zero();
                };
                table
                    .get(&k)
                    .map(|d| &dense_to_qpoly(d) * &self.cartan_factor)
                    .unwrap_or_default()
            }
            Storage::Targeted { half, memo } => {
                let (dom, _) = self.rs.dominant_rep(mu);
                if let Some(p) = memo.lock().unwrap().get(&dom) {
                    return p.clone();
                }
                let dc = self
                    .rs
                    .root_lattice_coords(&dom)
                    .expect("orbit stays in the root lattice");
                let p = if dc.iter().zip(&self.two_rho).any(|(x, t)| x > t) {
                    QPoly::zero()
                } else {
                    &Self::convolve(half, &dc, self.rs.rank) * &self.cartan_factor
                };
                memo.lock().unwrap().insert(dom, p.clone());
                p
            }
        }
    }

    /// `sum_beta P(beta) P(beta - mu)` over the positive half table.
    fn convolve(half: &FxHashMap<Key, Dense>, mu: &[i64], rank: usize) -> QPoly {
        let Ok(m) = pack(mu) else {
            return QPoly::zero();
        };
        let mut acc: Dense = Vec::new();
        for (beta, p) in half {
            let mut ok = true;
            let mut other = [0i16; MAX_RANK];
            for i in 0..rank {
                other[i] = beta[i] - m[i];
                if other[i] < 0 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            if let Some(q) = half.get(&other) {
                dense_mul_acc(&mut acc, p, q);
            }
        }
        dense_to_qpoly(&acc)
    }

    /// Weights where `q^dim c(-mu)(1/q) = c(mu)` or `c(s_i mu) = c(mu)` fails,
    /// computed from the stored table; `None` in targeted mode.
    pub fn symmetry_defects(&self) -> Option<Vec<Weight>> {
        let support = self.support()?;
        let n = self.rs.dim_g() as i32;
        let bad = support
            .into_iter()
            .filter(|w| {
                let p = self.coefficient(w);
                p.reflect(n) != self.coefficient(&-w)
                    || (0..self.rs.rank)
                        .any(|i| self.coefficient(&self.rs.simple_reflect(i, w)) != p)
            })
            .collect();
        Some(bad)
    }

    /// Number of cached dominant queries (targeted mode).
    pub fn memo_len(&self) -> usize {
        match &self.storage {
            Storage::Full(_) => 0,
            Storage::Targeted { memo, .. } => memo.lock().unwrap().len(),
        }
    }
}
