use std::path::Path;
use std::time::{Duration, Instant};

use lambdag::census::{
    self, expected_classes, type_a_partition_scan, CensusOptions, Classification,
};
use lambdag::closedforms::{
    bazlov_gm, bazlov_product_form, freeness_divisibility, n0, newton_pairing_identity_check,
    partition_to_weight, stembridge_gm, Partition,
};
use lambdag::gradedchar::{CharacterError, CharacterMode, GradedCharacter};
use lambdag::repthy::{graded_multiplicity, irrep_info, is_small};
use lambdag::slnpairing::verify::verify_section3;
use lambdag::weyl::WeylGroup;
use lambdag::{QPoly, RootSystem, RootType, Weight};
use serde_json::json;
use thiserror::Error;

use crate::cache::load_or_build;
use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn character_error(e: CharacterError) -> CliError {
    match e {
        CharacterError::FullRankLimit { .. } | CharacterError::MemoryBudget { .. } => {
            CliError::Budget(e.to_string())
        }
        other => usage(other),
    }
}

pub struct Context<'a> {
    pub cache_dir: Option<&'a Path>,
    pub budget: Option<Duration>,
    pub start: Instant,
}

impl Context<'_> {
    fn character(&self, rs: &RootSystem, mode: CharacterMode) -> Result<GradedCharacter, CliError> {
        load_or_build(rs, mode, self.cache_dir)
            .map(|(ch, _)| ch)
            .map_err(character_error)
    }
}

pub struct Outcome {
    pub report: Report,
    /// Set when the work stopped early or ran over `--budget-seconds`.
    pub budget_note: Option<String>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome {
            report,
            budget_note: None,
        }
    }
}

fn algebra(t: RootType, r: usize) -> Result<RootSystem, CliError> {
    RootSystem::new(t, r).map_err(usage)
}

fn default_mode(rs: &RootSystem) -> CharacterMode {
    CensusOptions::for_rank(rs.rank).mode
}

/// Largest Weyl group enumerated to cross-check the order formula.
const WEYL_ENUMERATION_CAP: u128 = 1_000_000;

pub fn roots(t: RootType, r: usize) -> Result<Outcome, CliError> {
    let rs = algebra(t, r)?;
    let mut rep = Report::new("roots");
    rep.input("type", t).input("rank", r);
    let npos = rs.positive_roots.len();
    rep.result("algebra", rs.label())
        .result("dim", rs.dim_g())
        .result("positive_roots", npos)
        .result("exponents", json!(rs.exponents))
        .result("weyl_order", rs.weyl_order_from_exponents())
        .result("cartan", json!(rs.cartan))
        .result("highest_root", rs.theta.to_string())
        .result(
            "highest_short_root",
            rs.theta_s.as_ref().map_or("none".into(), |w| w.to_string()),
        )
        .result("long_roots", rs.r_l)
        .result("short_roots", rs.r_s)
        .result("heights", json!(rs.height_distribution()));
    let exp_sum: usize = rs.exponents.iter().map(|&m| m as usize).sum();
    rep.check_eq("positive roots = sum of exponents", npos, exp_sum);
    let dim_from_exp: usize = rs.exponents.iter().map(|&m| 2 * m as usize + 1).sum();
    rep.check_eq("dim = sum (2 m_i + 1)", rs.dim_g(), dim_from_exp);
    if rs.weyl_order_from_exponents() <= WEYL_ENUMERATION_CAP {
        let w = WeylGroup::generate_with_cap(&rs, WEYL_ENUMERATION_CAP).map_err(usage)?;
        rep.check_eq(
            "|W| = prod (m_i + 1)",
            w.order as u128,
            rs.weyl_order_from_exponents(),
        );
    }
    Ok(rep.into())
}

pub fn gm(ctx: &Context, t: RootType, r: usize, weight: &Weight) -> Result<Outcome, CliError> {
    let rs = algebra(t, r)?;
    let ch = ctx.character(&rs, default_mode(&rs))?;
    let m = graded_multiplicity(&rs, weight, &ch).map_err(usage)?;
    let info = irrep_info(&rs, weight).map_err(usage)?;
    let small = is_small(&rs, weight).small;
    let mut rep = Report::new("gm");
    rep.input("type", t)
        .input("rank", r)
        .input("weight", weight);
    rep.result("gm", m.clone())
        .result("dim", info.dim)
        .result("zero_weight_dim", info.zero_weight_dim)
        .result("small", small);
    rep.check(
        "nonnegative polynomial",
        m.is_polynomial() && m.is_nonnegative(),
        m.clone(),
        "nonnegative",
    );
    if small && rs.in_root_lattice(weight) {
        rep.check_eq(
            "M(1) = 2^r dim L(lambda)_0",
            m.eval_at_one(),
            (1i128 << r) * info.zero_weight_dim as i128,
        );
    }
    Ok(rep.into())
}

fn bazlov_checks(rep: &mut Report, rs: &RootSystem, ch: &GradedCharacter) -> Result<(), CliError> {
    let theta_s = rs
        .theta_s
        .clone()
        .ok_or_else(|| usage(format!("{} is simply laced", rs.label())))?;
    let formula = bazlov_gm(rs).map_err(usage)?;
    let product = bazlov_product_form(rs).map_err(usage)?;
    let oracle = graded_multiplicity(rs, &theta_s, ch).map_err(usage)?;
    let z = irrep_info(rs, &theta_s).map_err(usage)?.zero_weight_dim;
    let verdict = freeness_divisibility(&oracle, rs, z);
    let label = rs.label();
    rep.check_eq(
        &format!("{label}: closed form = oracle"),
        formula.clone(),
        oracle,
    );
    rep.check_eq(
        &format!("{label}: product form = closed form"),
        product,
        formula,
    );
    rep.check(
        &format!("{label}: generator count = 2 dim L(theta_s)_0"),
        verdict.passes(),
        json!(verdict.generator_count),
        verdict.expected_count,
    );
    Ok(())
}

pub fn bazlov(ctx: &Context, t: RootType, r: usize) -> Result<Outcome, CliError> {
    let rs = algebra(t, r)?;
    if rs.is_simply_laced() {
        return Err(usage(format!(
            "{} is simply laced; no short roots",
            rs.label()
        )));
    }
    let ch = ctx.character(&rs, default_mode(&rs))?;
    let mut rep = Report::new("bazlov");
    rep.input("type", t).input("rank", r);
    rep.result(
        "highest_short_root",
        rs.theta_s.as_ref().unwrap().to_string(),
    )
    .result("n0", n0(&rs).map_err(usage)? as u64)
    .result("gm", bazlov_gm(&rs).map_err(usage)?);
    bazlov_checks(&mut rep, &rs, &ch)?;
    Ok(rep.into())
}

fn stembridge_check(
    rep: &mut Report,
    p: &Partition,
    ch: &GradedCharacter,
) -> Result<QPoly, CliError> {
    let rs = ch.root_system();
    let lam = partition_to_weight(p);
    let formula = stembridge_gm(p).map_err(usage)?;
    let oracle = graded_multiplicity(rs, &lam, ch).map_err(usage)?;
    rep.check_eq(
        &format!("{p}: hook formula = oracle"),
        formula.clone(),
        oracle,
    );
    Ok(formula)
}

pub fn stembridge(ctx: &Context, p: &Partition) -> Result<Outcome, CliError> {
    let n = p.n() as usize;
    if n < 2 {
        return Err(usage("the partition must have size at least 2"));
    }
    let rs = algebra(RootType::A, n - 1)?;
    let ch = ctx.character(&rs, default_mode(&rs))?;
    let mut rep = Report::new("stembridge");
    rep.input("partition", p.to_string());
    rep.result("algebra", rs.label())
        .result("weight", partition_to_weight(p).to_string());
    let f = stembridge_check(&mut rep, p, &ch)?;
    rep.result("gm", f);
    Ok(rep.into())
}

fn class_list(v: &[Classification]) -> serde_json::Value {
    let mut names: Vec<&str> = v.iter().map(|c| c.as_str()).collect();
    names.sort();
    names.dedup();
    json!(names)
}

pub fn census(
    ctx: &Context,
    t: RootType,
    r: usize,
    mode: Option<CharacterMode>,
    box_bound: Option<i64>,
) -> Result<Outcome, CliError> {
    let rs = algebra(t, r)?;
    let mut opts = CensusOptions::for_rank(r);
    if let Some(m) = mode {
        opts.mode = m;
    }
    if let Some(b) = box_bound {
        opts.box_bound = b;
    }
    opts.budget = ctx.budget;
    let ch = ctx.character(&rs, opts.mode)?;
    let report = census::run_census_with(&rs, &ch, opts, ctx.start).map_err(usage)?;
    let mut rep = Report::new("census");
    rep.input("type", t)
        .input("rank", r)
        .input("mode", opts.mode)
        .input("box_bound", opts.box_bound);
    rep.result("algebra", report.algebra.clone())
        .result("box_bound_used", report.box_bound)
        .result("small_weights", report.rows.len());
    for row in &report.rows {
        rep.result(
            &format!("row {}", row.weight),
            json!({
                "class": row.classification.as_str(),
                "dim": row.dim,
                "zero_weight_dim": row.zero_weight_dim,
                "gm": row.gm,
                "divisible": row.verdict.divisible,
                "generator_count": row.verdict.generator_count,
                "passes": row.verdict.passes(),
            }),
        );
    }
    let reeder = report.rows.iter().filter(|r| r.reeder_ok).count();
    rep.check_eq("Reeder identity on every row", reeder, report.rows.len());
    rep.check(
        "passing classes are exactly the expected ones",
        report.matches_expectation(),
        class_list(&report.pass_classes()),
        class_list(&expected_classes(&rs)),
    );
    if !report.anomalies.is_empty() {
        rep.result("anomalies", json!(report.anomalies));
    }
    let budget_note = report.incomplete.then(|| report.anomalies.join("; "));
    Ok(Outcome {
        report: rep,
        budget_note,
    })
}

pub fn scan_a(n: u32) -> Result<Outcome, CliError> {
    let scan = type_a_partition_scan(n).map_err(usage)?;
    let mut rep = Report::new("scan-a");
    rep.input("n", n);
    rep.result("divisor", scan.divisor.clone());
    for row in &scan.rows {
        rep.result(
            &row.partition.to_string(),
            json!({ "gm": row.gm, "divisible": row.divisible }),
        );
    }
    let divisible: Vec<String> = scan
        .rows
        .iter()
        .filter(|r| r.divisible)
        .map(|r| r.partition.to_string())
        .collect();
    let mut hook = vec![2];
    hook.extend(std::iter::repeat_n(1, n as usize - 2));
    let expected = vec![
        Partition::new(vec![n]).unwrap().to_string(),
        Partition::new(hook).unwrap().to_string(),
    ];
    rep.check(
        "divisible exactly for (n) and (2,1^(n-2))",
        scan.confirmed,
        json!(divisible),
        json!(expected),
    );
    Ok(rep.into())
}

pub fn verify_sl(n: usize, trials: usize, seed: u64) -> Result<Outcome, CliError> {
    let r = verify_section3(n, trials, seed).map_err(usage)?;
    let mut rep = Report::new("verify-sl");
    rep.input("n", n)
        .input("trials", trials)
        .input("seed", seed);
    rep.seed = Some(seed);
    rep.result("basis_tuples", r.basis_tuples)
        .result("measured_constant", json!(r.measured_constant))
        .result("expected_constant", r.expected_constant.clone())
        .result("convention_delta", json!(r.convention_delta))
        .result("delta_psi_constant", json!(r.delta_psi_constant))
        .result("laplacian_constant", json!(r.laplacian_constant))
        .result("gm_n_omega1", r.gm_n_omega1.clone());
    if !r.failures.is_empty() {
        rep.result("failures", json!(r.failures));
    }
    let mismatches = r
        .failures
        .iter()
        .filter(|f| f.check == "evaluation paths")
        .count();
    rep.check_eq("both pairing paths agree", mismatches, 0usize);
    rep.check(
        "pairing proportional to T_(n-1)",
        r.proportional,
        json!(r.measured_constant),
        "tuple-independent",
    );
    rep.check(
        "constant = (-1)^C(n,2) / n!",
        r.constant_matches(),
        json!(r.measured_constant),
        r.expected_constant.clone(),
    );
    rep.check_eq("pairing and T are Ad-invariant", r.ad_invariant, true);
    rep.check_eq("boundary of Psi vanishes", r.boundary_psi_zero, true);
    rep.check(
        "delta Psi = c' Phi, c' != 0",
        r.delta_psi_constant.is_some(),
        json!(r.delta_psi_constant),
        "nonzero",
    );
    rep.check(
        "boundary of delta Psi = c Psi, c != 0",
        r.laplacian_constant.is_some(),
        json!(r.laplacian_constant),
        "nonzero",
    );
    rep.check_eq(
        "Psi(e1) is a multiple of E12^...^E1n",
        r.psi_e1_is_wedge,
        true,
    );
    rep.check_eq(
        "M_(n omega_1) = (q^(n-1) + q^n) prod (1 + q^(2i+1))",
        r.gm_n_omega1.clone(),
        r.gm_expected.clone(),
    );
    rep.check_eq(
        "M_(n omega_1)(1) = 2^(n-1)",
        r.invariant_dim,
        1i128 << (n - 1),
    );
    Ok(rep.into())
}

/// Property suite over every simple type of rank at most 3.
pub fn selftest(ctx: &Context) -> Result<Outcome, CliError> {
    let mut rep = Report::new("selftest");
    rep.input("max_rank", 3);
    for (t, r) in RootType::all_up_to_rank(3) {
        let rs = algebra(t, r)?;
        let label = rs.label();
        let w = WeylGroup::generate(&rs).map_err(usage)?;
        rep.check_eq(
            &format!("{label}: |W| = prod (m_i + 1)"),
            w.order as u128,
            rs.weyl_order_from_exponents(),
        );
        let ch = ctx.character(&rs, CharacterMode::Full)?;
        let defects = ch.symmetry_defects().expect("full mode");
        rep.check(
            &format!("{label}: character palindromic and W-invariant"),
            defects.is_empty(),
            defects.len(),
            0usize,
        );
        let adj = rs.theta.clone();
        let m = graded_multiplicity(&rs, &adj, &ch).map_err(usage)?;
        let verdict = freeness_divisibility(&m, &rs, r as u64);
        rep.check(
            &format!("{label}: adjoint generator count = 2r"),
            verdict.passes() && verdict.expected_count == 2 * r as i128,
            json!(verdict.generator_count),
            2 * r as i128,
        );
        if !rs.is_simply_laced() {
            bazlov_checks(&mut rep, &rs, &ch)?;
        }
        let opts = CensusOptions {
            budget: ctx.budget,
            ..CensusOptions::for_rank(r)
        };
        let c = census::run_census_with(&rs, &ch, opts, ctx.start).map_err(usage)?;
        rep.check(
            &format!("{label}: census passes"),
            c.matches_expectation(),
            class_list(&c.pass_classes()),
            class_list(&expected_classes(&rs)),
        );
    }
    for n in 2..=4u32 {
        let rs = algebra(RootType::A, n as usize - 1)?;
        let ch = ctx.character(&rs, CharacterMode::Full)?;
        for p in Partition::all(n) {
            stembridge_check(&mut rep, &p, &ch)?;
        }
    }
    let newton_ok =
        (1..=4).all(|k| (1..=4).all(|g| (1..=3).all(|m| newton_pairing_identity_check(k, g, m))));
    rep.check_eq(
        "Newton pairing identity, k, g <= 4, m <= 3",
        newton_ok,
        true,
    );
    let scan = type_a_partition_scan(4).map_err(usage)?;
    rep.check_eq("partition scan n = 4", scan.confirmed, true);
    let sl2 = verify_section3(2, 5, 0).map_err(usage)?;
    rep.check(
        "sl2 pairing identity and Koszul checks",
        sl2.passes() && sl2.constant_matches(),
        json!(sl2.measured_constant),
        sl2.expected_constant,
    );
    Ok(rep.into())
}
