//! Census of small modules and their freeness verdicts, and the type A
//! partition scan.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closedforms::{
    freeness_divisibility, partition_to_weight, stembridge_gm, ClosedFormError, FreenessVerdict,
    Partition,
};
use crate::gradedchar::{CharacterError, CharacterMode, GradedCharacter};
use crate::qpoly::QPoly;
use crate::repthy::{graded_multiplicity, irrep_info, is_small, weyl_dimension, RepError};
use crate::rootdata::{RootSystem, RootType};
use crate::weight::Weight;

pub const DEFAULT_BOX_BOUND: i64 = 10;
const MAX_BOX_BOUND: i64 = 40;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(
        "small weight {weight} lies within 2 of the box bound {bound}; rerun with a larger bound"
    )]
    Margin { weight: Weight, bound: i64 },
    #[error("box bound must be at least 1, got {0}")]
    BadBound(i64),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error("partition scan needs 4 <= n <= 8, got {0}")]
    ScanRange(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Trivial,
    Adjoint,
    LittleAdjoint,
    SymmetricPower,
    SymmetricPowerDual,
    Other,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Trivial => "trivial",
            Classification::Adjoint => "adjoint",
            Classification::LittleAdjoint => "little_adjoint",
            Classification::SymmetricPower => "symmetric_power",
            Classification::SymmetricPowerDual => "symmetric_power_dual",
            Classification::Other => "other",
        }
    }
}

pub fn classify(rs: &RootSystem, lam: &Weight) -> Classification {
    let r = rs.rank;
    if lam.is_zero() {
        return Classification::Trivial;
    }
    if *lam == rs.theta {
        return Classification::Adjoint;
    }
    if rs.theta_s.as_ref() == Some(lam) {
        return Classification::LittleAdjoint;
    }
    if rs.type_tag == RootType::A {
        let n = r as i64 + 1;
        if *lam == &Weight::fundamental(r, 0) * n {
            return Classification::SymmetricPower;
        }
        if *lam == &Weight::fundamental(r, r - 1) * n {
            return Classification::SymmetricPowerDual;
        }
    }
    Classification::Other
}

/// Dominant root-lattice small weights in `[0, bound]^r`, sorted by
/// dimension then coordinates.
///
/// Non-smallness is inherited upward: if `lam >= 2 eta` then
/// `lam + mu >= 2 eta` for every dominant root-lattice `mu`. The scan
/// therefore accepts the box only when no small weight comes within 2 of
/// its boundary.
pub fn enumerate_small_weights(rs: &RootSystem, bound: i64) -> Result<Vec<Weight>, CensusError> {
    if bound < 1 {
        return Err(CensusError::BadBound(bound));
    }
    let r = rs.rank;
    let mut found = Vec::new();
    let mut cur = vec![0i64; r];
    loop {
        let w = Weight::new(cur.clone());
        if rs.in_root_lattice(&w) && is_small(rs, &w).small {
            if cur.iter().any(|&c| c > bound - 2) {
                return Err(CensusError::Margin { weight: w, bound });
            }
            found.push(w);
        }
        // odometer
        let mut i = 0;
        loop {
            if i == r {
                let mut keyed: Vec<(u128, Weight)> = found
                    .into_iter()
                    .map(|w| (weyl_dimension(rs, &w), w))
                    .collect();
                keyed.sort();
                return Ok(keyed.into_iter().map(|(_, w)| w).collect());
            }
            cur[i] += 1;
            if cur[i] <= bound {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Doubles the box bound until the margin certificate holds.
pub fn enumerate_small_weights_auto(
    rs: &RootSystem,
    start: i64,
) -> Result<(Vec<Weight>, i64), CensusError> {
    let mut bound = start;
    loop {
        match enumerate_small_weights(rs, bound) {
            Ok(v) => return Ok((v, bound)),
            Err(CensusError::Margin { .. }) if bound < MAX_BOX_BOUND => bound *= 2,
            Err(e) => return Err(e),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusRow {
    pub weight: Weight,
    pub dim: u128,
    pub zero_weight_dim: u64,
    /// `None` for small weights.
    pub is_small_witness: Option<Weight>,
    pub gm: QPoly,
    pub reeder_ok: bool,
    pub verdict: FreenessVerdict,
    pub classification: Classification,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusReport {
    pub algebra: String,
    pub type_tag: RootType,
    pub rank: usize,
    pub box_bound: i64,
    pub mode: CharacterMode,
    pub rows: Vec<CensusRow>,
    /// Weights of the rows whose verdict passes, in row order.
    pub passes: Vec<Weight>,
    pub incomplete: bool,
    /// Departures from the expected outcome, one line each.
    pub anomalies: Vec<String>,
}

impl CensusReport {
    /// Complete, every Reeder check holds, and the passing rows are exactly
    /// the expected classes.
    pub fn matches_expectation(&self) -> bool {
        !self.incomplete && self.anomalies.is_empty()
    }

    pub fn pass_classes(&self) -> Vec<Classification> {
        self.rows
            .iter()
            .filter(|r| r.verdict.passes())
            .map(|r| r.classification)
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    pub box_bound: i64,
    pub mode: CharacterMode,
    pub budget: Option<Duration>,
}

impl CensusOptions {
    pub fn for_rank(rank: usize) -> Self {
        CensusOptions {
            box_bound: DEFAULT_BOX_BOUND,
            mode: if rank <= 4 {
                CharacterMode::Full
            } else {
                CharacterMode::Targeted
            },
            budget: None,
        }
    }
}

/// Classes whose small modules are expected to pass the freeness test.
pub fn expected_classes(rs: &RootSystem) -> Vec<Classification> {
    let mut v = vec![Classification::Trivial, Classification::Adjoint];
    if !rs.is_simply_laced() {
        v.push(Classification::LittleAdjoint);
    }
    if rs.type_tag == RootType::A && rs.rank >= 2 {
        v.push(Classification::SymmetricPower);
        v.push(Classification::SymmetricPowerDual);
    }
    v
}

pub fn census_row(
    rs: &RootSystem,
    ch: &GradedCharacter,
    lam: &Weight,
) -> Result<CensusRow, CensusError> {
    let info = irrep_info(rs, lam)?;
    let gm = graded_multiplicity(rs, lam, ch)?;
    let reeder = (1i128 << rs.rank) * info.zero_weight_dim as i128;
    let verdict = freeness_divisibility(&gm, rs, info.zero_weight_dim);
    Ok(CensusRow {
        weight: lam.clone(),
        dim: info.dim,
        zero_weight_dim: info.zero_weight_dim,
        is_small_witness: is_small(rs, lam).witness,
        reeder_ok: gm.eval_at_one() == reeder,
        verdict,
        gm,
        classification: classify(rs, lam),
    })
}

pub fn run_census(rs: &RootSystem, opts: CensusOptions) -> Result<CensusReport, CensusError> {
    let start = Instant::now();
    let ch = match GradedCharacter::new(rs, opts.mode) {
        Ok(ch) => ch,
        Err(e @ (CharacterError::FullRankLimit { .. } | CharacterError::MemoryBudget { .. })) => {
            return Ok(CensusReport {
                algebra: rs.label(),
                type_tag: rs.type_tag,
                rank: rs.rank,
                box_bound: opts.box_bound,
                mode: opts.mode,
                rows: Vec::new(),
                passes: Vec::new(),
                incomplete: true,
                anomalies: vec![e.to_string()],
            })
        }
        Err(e) => return Err(e.into()),
    };
    run_census_with(rs, &ch, opts, start)
}

/// Census against a prebuilt character; `start` anchors the time budget.
pub fn run_census_with(
    rs: &RootSystem,
    ch: &GradedCharacter,
    opts: CensusOptions,
    start: Instant,
) -> Result<CensusReport, CensusError> {
    let (weights, box_bound) = enumerate_small_weights_auto(rs, opts.box_bound)?;
    let out_of_time = || opts.budget.is_some_and(|b| start.elapsed() > b);
    let computed: Vec<Option<CensusRow>> = weights
        .par_iter()
        .map(|w| {
            if out_of_time() {
                Ok(None)
            } else {
                census_row(rs, ch, w).map(Some)
            }
        })
        .collect::<Result<_, CensusError>>()?;
    let incomplete = computed.iter().any(Option::is_none);
    let rows: Vec<CensusRow> = computed.into_iter().flatten().collect();

    let expected = expected_classes(rs);
    let mut anomalies = Vec::new();
    if incomplete {
        anomalies.push(format!(
            "time budget exhausted after {} of {} rows",
            rows.len(),
            weights.len()
        ));
    }
    for row in &rows {
        if !row.reeder_ok {
            anomalies.push(format!("Reeder identity fails at {}", row.weight));
        }
        let expect_pass = expected.contains(&row.classification);
        if row.verdict.passes() != expect_pass {
            anomalies.push(format!(
                "{} {} ({}) {}",
                if expect_pass {
                    "expected pass fails:"
                } else {
                    "unexpected pass:"
                },
                row.weight,
                row.classification.as_str(),
                row.gm
            ));
        }
    }
    if !incomplete {
        for c in &expected {
            if !rows.iter().any(|r| r.classification == *c) {
                anomalies.push(format!("no small row classified {}", c.as_str()));
            }
        }
    }
    let passes = rows
        .iter()
        .filter(|r| r.verdict.passes())
        .map(|r| r.weight.clone())
        .collect();
    Ok(CensusReport {
        algebra: rs.label(),
        type_tag: rs.type_tag,
        rank: rs.rank,
        box_bound,
        mode: ch.mode(),
        rows,
        passes,
        incomplete,
        anomalies,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanRow {
    pub partition: Partition,
    pub weight: Weight,
    pub gm: QPoly,
    pub divisible: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionScan {
    pub n: u32,
    pub divisor: QPoly,
    pub rows: Vec<ScanRow>,
    /// Divisible rows are exactly `(n)` and `(2, 1^{n-2})`.
    pub confirmed: bool,
}

/// Divisibility of the hook-formula multiplicity by
/// `prod_{i=1}^{n-2} (1 + q^{2i+1})` over every nontrivial partition of `n`.
pub fn type_a_partition_scan(n: u32) -> Result<PartitionScan, CensusError> {
    if !(4..=8).contains(&n) {
        return Err(CensusError::ScanRange(n));
    }
    let divisor: QPoly = (1..=n as i32 - 2)
        .map(|i| QPoly::one_plus_q_pow(2 * i + 1))
        .product();
    let mut expected = vec![Partition::new(vec![n])?];
    let mut hook = vec![2];
    hook.extend(std::iter::repeat_n(1, n as usize - 2));
    expected.push(Partition::new(hook)?);
    let mut rows = Vec::new();
    for p in Partition::all(n) {
        if p.parts()[0] == 1 {
            continue;
        }
        let gm = stembridge_gm(&p)?;
        let divisible = gm.div_exact(&divisor).is_ok();
        rows.push(ScanRow {
            weight: partition_to_weight(&p),
            partition: p,
            gm,
            divisible,
        });
    }
    let confirmed = rows
        .iter()
        .all(|r| r.divisible == expected.contains(&r.partition));
    Ok(PartitionScan {
        n,
        divisor,
        rows,
        confirmed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(t: RootType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    #[test]
    fn a2_small_weights() {
        let got = enumerate_small_weights(&sys(RootType::A, 2), 10).unwrap();
        let want: Vec<Weight> = [[0, 0], [1, 1], [0, 3], [3, 0]]
            .iter()
            .map(|c| Weight::new(c.to_vec()))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn margin_refusal_and_escalation() {
        let rs = sys(RootType::A, 2);
        assert!(matches!(
            enumerate_small_weights(&rs, 2),
            Err(CensusError::Margin { .. })
        ));
        let (v, b) = enumerate_small_weights_auto(&rs, 2).unwrap();
        assert_eq!((v.len(), b), (4, 8));
    }

    #[test]
    fn b2_contains_both_adjoints() {
        let rs = sys(RootType::B, 2);
        let v = enumerate_small_weights(&rs, 10).unwrap();
        assert!(v.contains(&rs.theta));
        assert!(v.contains(rs.theta_s.as_ref().unwrap()));
        assert!(v.contains(&Weight::zero(2)));
    }

    #[test]
    fn rank2_censuses() {
        let a2 = run_census(&sys(RootType::A, 2), CensusOptions::for_rank(2)).unwrap();
        assert!(a2.matches_expectation(), "{:?}", a2.anomalies);
        assert_eq!(a2.passes.len(), 4);
        let b2 = run_census(&sys(RootType::B, 2), CensusOptions::for_rank(2)).unwrap();
        assert!(b2.matches_expectation(), "{:?}", b2.anomalies);
        assert_eq!(b2.passes.len(), 3);
        let g2 = run_census(&sys(RootType::G, 2), CensusOptions::for_rank(2)).unwrap();
        let row = g2
            .rows
            .iter()
            .find(|r| r.classification == Classification::LittleAdjoint)
            .unwrap();
        assert_eq!(row.gm, QPoly::from_terms([(5, 1), (6, 1), (8, 1), (9, 1)]));
        assert_eq!(row.verdict.generator_count, Some(2));
    }

    #[test]
    fn full_mode_refused_at_rank5() {
        let rs = sys(RootType::A, 5);
        let opts = CensusOptions {
            mode: CharacterMode::Full,
            ..CensusOptions::for_rank(5)
        };
        let rep = run_census(&rs, opts).unwrap();
        assert!(rep.incomplete && rep.rows.is_empty());
    }

    #[test]
    fn partition_scans() {
        let s4 = type_a_partition_scan(4).unwrap();
        assert!(s4.confirmed);
        let div: Vec<String> = s4
            .rows
            .iter()
            .filter(|r| r.divisible)
            .map(|r| r.partition.to_string())
            .collect();
        assert_eq!(div, ["(4)", "(2,1,1)"]);
        assert!(
            !s4.rows
                .iter()
                .find(|r| r.partition.parts() == [2, 2])
                .unwrap()
                .divisible
        );
        let s5 = type_a_partition_scan(5).unwrap();
        assert!(s5.confirmed);
        assert_eq!(s5.rows.iter().filter(|r| r.divisible).count(), 2);
        assert!(type_a_partition_scan(3).is_err());
    }
}
