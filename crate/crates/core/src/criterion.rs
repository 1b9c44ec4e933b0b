//! The rank-g certification pipeline.
//!
//! [`evaluate`] checks the hypotheses and compares the dimension bound on the
//! degeneracy locus with `g - 1`. [`quick_criterion`] is the coarser test
//! `dim J1(f)_beta <= K^2 + 1`. Neither ever claims that a rank-g deformation
//! does not exist.

use std::fmt;
use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::divisor::{
    canonical_divisor, canonical_self_intersection, genus, h0, intersect, is_ample, pic_class,
    TorusDivisor,
};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::jacobian::JacobianSystem;
use crate::poly::{monomial_basis_of_class, parse_polynomial, CoxPolynomial};

pub const DEFAULT_ATTEMPTS: u32 = 32;
pub const DEFAULT_SEED: u64 = 0x5EED_2024;

/// Coefficient range for random multipliers.
const SAMPLE_RANGE: RangeInclusive<i64> = -3..=3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Precondition {
    BetaAmple,
    Nondegenerate,
    J1TwoBetaTwoKNonzero,
    BetaDotKNegative,
    BetaPlusKAmple,
    BetaPlusTwoKAmple,
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Precondition::BetaAmple => "beta ample",
            Precondition::Nondegenerate => "f nondegenerate",
            Precondition::J1TwoBetaTwoKNonzero => "J1(f)_(2beta+2K) != 0",
            Precondition::BetaDotKNegative => "beta.K < 0",
            Precondition::BetaPlusKAmple => "beta+K ample",
            Precondition::BetaPlusTwoKAmple => "beta+2K ample",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "failed", rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive,
    PreconditionFailed(Vec<Precondition>),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified => write!(f, "certified"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
            Verdict::PreconditionFailed(list) => {
                let names: Vec<String> = list.iter().map(ToString::to_string).collect();
                write!(f, "precondition failed: {}", names.join(", "))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Full,
    Quick,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dimensions {
    pub s_beta: usize,
    pub s_beta_k: usize,
    pub s_beta_2k: usize,
    pub s_2beta_2k: usize,
    pub j1_beta: usize,
    pub j1_2beta_2k: usize,
    pub r1_beta: usize,
    /// `dim E_g = 2 dim S_{beta+2K}`.
    pub e_g: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Preconditions {
    pub beta_ample: bool,
    pub nondegenerate: String,
    pub j1_2beta_2k_nonzero: bool,
    pub beta_dot_k: i64,
    pub beta_plus_k_ample: bool,
    pub beta_plus_2k_ample: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub variant: Variant,
    pub surface: String,
    pub pic_basis: String,
    pub beta: Vec<i64>,
    pub beta_representative: Vec<i64>,
    pub genus: i64,
    pub dims: Dimensions,
    pub preconditions: Preconditions,
    pub bound_value: i64,
    pub k_squared: i64,
    pub quick_threshold: i64,
    pub verdict: Verdict,
}

fn describe_fan(fan: &Fan) -> String {
    let rays: Vec<String> = fan
        .rays()
        .iter()
        .zip(fan.labels())
        .map(|(r, l)| format!("{l}={r}"))
        .collect();
    format!("rays {}", rays.join(" "))
}

fn as_i64(n: usize) -> i64 {
    i64::try_from(n).expect("dimension fits in i64")
}

struct Computed {
    report: CriterionReport,
    failed_common: Vec<Precondition>,
}

fn compute(fan: &Fan, d_beta: &TorusDivisor, f: &CoxPolynomial, variant: Variant) -> Result<Computed> {
    d_beta.check_len(fan)?;
    let sys = JacobianSystem::new(fan, f.clone())?;
    let beta = pic_class(fan, d_beta);
    if &beta != sys.beta() {
        return Err(Error::ClassMismatch(format!(
            "f has class {} but the divisor has class {beta}",
            sys.beta()
        )));
    }
    let k = canonical_divisor(fan);
    let d_bk = d_beta + &k;
    let d_b2k = &d_bk + &k;
    let d_2b2k = &(2 * d_beta) + &(2 * &k);

    let s_beta = h0(fan, d_beta);
    let s_beta_k = h0(fan, &d_bk);
    let s_beta_2k = h0(fan, &d_b2k);
    let s_2beta_2k = h0(fan, &d_2b2k);
    let j1_beta = sys.j1_piece(&beta)?.dim();
    let j1_2beta_2k = sys.j1_piece(&sys.class_combo(2, 2))?.dim();

    let beta_ample = is_ample(fan, d_beta);
    let g = as_i64(s_beta_k);
    if beta_ample {
        let adj = genus(fan, d_beta)?;
        if adj != g {
            return Err(Error::Internal(format!(
                "dim S_(beta+K) = {g} but adjunction gives genus {adj}"
            )));
        }
    }

    let verdict = sys.nondegenerate_decide();
    let beta_dot_k = intersect(fan, d_beta, &k);
    let preconditions = Preconditions {
        beta_ample,
        nondegenerate: verdict.status_string(),
        j1_2beta_2k_nonzero: j1_2beta_2k > 0,
        beta_dot_k,
        beta_plus_k_ample: is_ample(fan, &d_bk),
        beta_plus_2k_ample: is_ample(fan, &d_b2k),
    };
    let mut failed_common = Vec::new();
    if !preconditions.beta_ample {
        failed_common.push(Precondition::BetaAmple);
    }
    if !verdict.is_nondegenerate() {
        failed_common.push(Precondition::Nondegenerate);
    }
    if !preconditions.j1_2beta_2k_nonzero {
        failed_common.push(Precondition::J1TwoBetaTwoKNonzero);
    }
    if beta_dot_k >= 0 {
        failed_common.push(Precondition::BetaDotKNegative);
    }

    let bound_value =
        as_i64(j1_beta) + as_i64(s_2beta_2k) - as_i64(s_beta) - 2 * as_i64(s_beta_2k);
    let k_squared = canonical_self_intersection(fan);
    let report = CriterionReport {
        variant,
        surface: describe_fan(fan),
        pic_basis: fan.pic_basis_id(),
        beta: beta.coords.clone(),
        beta_representative: d_beta.coeffs.clone(),
        genus: g,
        dims: Dimensions {
            s_beta,
            s_beta_k,
            s_beta_2k,
            s_2beta_2k,
            j1_beta,
            j1_2beta_2k,
            r1_beta: s_beta - j1_beta,
            e_g: 2 * s_beta_2k,
        },
        preconditions,
        bound_value,
        k_squared,
        quick_threshold: k_squared + 1,
        verdict: Verdict::Inconclusive,
    };
    Ok(Computed {
        report,
        failed_common,
    })
}

/// Full criterion: certified when the hypotheses hold and the bound is below `g - 1`.
pub fn evaluate(fan: &Fan, d_beta: &TorusDivisor, f: &CoxPolynomial) -> Result<CriterionReport> {
    let Computed {
        mut report,
        failed_common,
    } = compute(fan, d_beta, f, Variant::Full)?;
    report.verdict = if !failed_common.is_empty() {
        Verdict::PreconditionFailed(failed_common)
    } else if report.bound_value < report.genus - 1 {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

/// Quick criterion: `dim J1(f)_beta <= K^2 + 1`, which additionally needs
/// `beta + K` and `beta + 2K` ample.
pub fn quick_criterion(fan: &Fan, d_beta: &TorusDivisor, f: &CoxPolynomial) -> Result<CriterionReport> {
    let Computed {
        mut report,
        mut failed_common,
    } = compute(fan, d_beta, f, Variant::Quick)?;
    if !report.preconditions.beta_plus_k_ample {
        failed_common.push(Precondition::BetaPlusKAmple);
    }
    if !report.preconditions.beta_plus_2k_ample {
        failed_common.push(Precondition::BetaPlusTwoKAmple);
    }
    report.verdict = if !failed_common.is_empty() {
        Verdict::PreconditionFailed(failed_common)
    } else if as_i64(report.dims.j1_beta) <= report.quick_threshold {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let variant = match self.variant {
            Variant::Full => "full bound",
            Variant::Quick => "quick (K^2+1)",
        };
        writeln!(f, "criterion: {variant}")?;
        writeln!(f, "surface: {}", self.surface)?;
        writeln!(
            f,
            "beta: ({}) in basis {}, representative {:?}",
            join(&self.beta),
            self.pic_basis,
            self.beta_representative
        )?;
        writeln!(f, "g = {}", self.genus)?;
        let d = &self.dims;
        writeln!(f, "dim S_beta          = {}", d.s_beta)?;
        writeln!(f, "dim S_(beta+K)      = {}", d.s_beta_k)?;
        writeln!(f, "dim S_(beta+2K)     = {}", d.s_beta_2k)?;
        writeln!(f, "dim S_(2beta+2K)    = {}", d.s_2beta_2k)?;
        writeln!(f, "dim J1_beta         = {}", d.j1_beta)?;
        writeln!(f, "dim J1_(2beta+2K)   = {}", d.j1_2beta_2k)?;
        writeln!(f, "dim R1_beta         = {}", d.r1_beta)?;
        writeln!(f, "dim E_g             = {}", d.e_g)?;
        let p = &self.preconditions;
        writeln!(f, "beta ample: {}", yes(p.beta_ample))?;
        writeln!(f, "nondegeneracy: {}", p.nondegenerate)?;
        writeln!(f, "J1_(2beta+2K) nonzero: {}", yes(p.j1_2beta_2k_nonzero))?;
        writeln!(f, "beta.K = {}", p.beta_dot_k)?;
        writeln!(f, "beta+K ample: {}", yes(p.beta_plus_k_ample))?;
        writeln!(f, "beta+2K ample: {}", yes(p.beta_plus_2k_ample))?;
        writeln!(
            f,
            "bound = {} + {} - {} - 2*{} = {} (g-1 = {})",
            d.j1_beta,
            d.s_2beta_2k,
            d.s_beta,
            d.s_beta_2k,
            self.bound_value,
            self.genus - 1
        )?;
        writeln!(
            f,
            "K^2 = {}, quick threshold K^2+1 = {}",
            self.k_squared, self.quick_threshold
        )?;
        writeln!(f, "verdict: {}", self.verdict)
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Rank of multiplication by `eta` from `R1_(beta+K)` to `R1_(2beta+K)`.
pub fn deformation_rank(sys: &JacobianSystem, eta: &CoxPolynomial) -> Result<usize> {
    sys.multiplication_rank(eta, &sys.class_combo(1, 1), &sys.class_combo(2, 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeformationSearch {
    Found {
        eta: CoxPolynomial,
        rank: usize,
        /// 1-based attempt at which `eta` was drawn.
        attempt: u32,
        matrix: Vec<Vec<BigRational>>,
    },
    NotFound {
        best_rank: usize,
        attempts: u32,
    },
}

/// Samples `eta` in `S_beta` until multiplication `R1_(beta+K) -> R1_(2beta+K)`
/// has rank `g`. Refuses unless [`evaluate`] certifies.
pub fn find_rank_g_deformation(
    fan: &Fan,
    d_beta: &TorusDivisor,
    f: &CoxPolynomial,
    attempts: u32,
    seed: u64,
) -> Result<DeformationSearch> {
    if attempts == 0 {
        return Err(Error::InvalidArgument("attempts must be positive".into()));
    }
    let report = evaluate(fan, d_beta, f)?;
    if !report.verdict.is_certified() {
        return Err(Error::Precondition(format!(
            "the criterion is not certified ({}); a rank-g deformation is not guaranteed",
            report.verdict
        )));
    }
    let g = usize::try_from(report.genus).map_err(|_| Error::Internal("negative genus".into()))?;
    let sys = JacobianSystem::new(fan, f.clone())?;
    let map = sys.multiplication_map(&sys.class_combo(1, 1), &sys.class_combo(2, 1))?;
    let basis = monomial_basis_of_class(fan, sys.beta());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_rank = 0;
    for attempt in 1..=attempts {
        let terms: Vec<_> = basis
            .iter()
            .map(|m| (m.clone(), BigRational::from_integer(rng.gen_range(SAMPLE_RANGE).into())))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let eta = CoxPolynomial::from_terms(fan.n(), terms)?;
        let matrix = map.matrix(&eta)?;
        let rank = crate::linalg::rank(&matrix);
        if rank == g {
            return Ok(DeformationSearch::Found {
                eta,
                rank,
                attempt,
                matrix,
            });
        }
        best_rank = best_rank.max(rank);
    }
    Ok(DeformationSearch::NotFound {
        best_rank,
        attempts,
    })
}

/// `f_d = x1^d x2^3 + x3^(d-3) x4^3 + x3^d x2^3 + x1^(d-3) x4^3` on `H_1`, of class `d D1 + 3 D2`.
pub fn hirzebruch_family(d: u32) -> Result<(Fan, TorusDivisor, CoxPolynomial)> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("the family needs d >= 3, got {d}")));
    }
    let fan = Fan::hirzebruch(1);
    let text = format!(
        "x1^{d}*x2^3 + x3^{e}*x4^3 + x3^{d}*x2^3 + x1^{e}*x4^3",
        e = d - 3
    );
    let f = parse_polynomial(&text, fan.labels())?;
    let beta = TorusDivisor::new(vec![i64::from(d), 3, 0, 0]);
    Ok((fan, beta, f))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub d: u32,
    pub r1_beta: usize,
    pub j1_beta: usize,
    pub genus: i64,
    pub bound_value: i64,
    pub verdict: Verdict,
}

/// Hilbert function of `R1(f_d)` at `beta` plus the criterion for each `d`.
pub fn paper_table(ds: RangeInclusive<u32>) -> Result<Vec<TableRow>> {
    ds.map(|d| {
        let (fan, beta, f) = hirzebruch_family(d)?;
        let report = evaluate(&fan, &beta, &f)?;
        Ok(TableRow {
            d,
            r1_beta: report.dims.r1_beta,
            j1_beta: report.dims.j1_beta,
            genus: report.genus,
            bound_value: report.bound_value,
            verdict: report.verdict,
        })
    })
    .collect()
}

pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!(
            "d = {}: {}    (J1_beta = {}, g = {}, bound = {}, {})\n",
            r.d, r.r1_beta, r.j1_beta, r.genus, r.bound_value, r.verdict
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d5_report() {
        let (fan, beta, f) = hirzebruch_family(5).unwrap();
        let r = evaluate(&fan, &beta, &f).unwrap();
        assert_eq!(r.genus, 5);
        assert_eq!(
            (r.dims.s_beta, r.dims.s_beta_2k, r.dims.s_2beta_2k, r.dims.j1_beta),
            (18, 0, 12, 7)
        );
        assert_eq!(r.bound_value, 1);
        assert_eq!(r.verdict, Verdict::Certified);
        assert_eq!(r.quick_threshold, 9);
    }

    #[test]
    fn quick_fails_on_family() {
        let (fan, beta, f) = hirzebruch_family(6).unwrap();
        let r = quick_criterion(&fan, &beta, &f).unwrap();
        assert_eq!(r.verdict, Verdict::PreconditionFailed(vec![Precondition::BetaPlusTwoKAmple]));
    }

    #[test]
    fn class_mismatch_is_reported() {
        let (fan, _, f) = hirzebruch_family(5).unwrap();
        let wrong = TorusDivisor::new(vec![4, 3, 0, 0]);
        assert!(matches!(evaluate(&fan, &wrong, &f), Err(Error::ClassMismatch(_))));
    }

    #[test]
    fn family_needs_d_at_least_three() {
        assert!(hirzebruch_family(2).is_err());
    }

    #[test]
    fn table_text() {
        let rows = paper_table(5..=5).unwrap();
        assert!(render_table(&rows).starts_with("d = 5: 11 "));
    }
}
