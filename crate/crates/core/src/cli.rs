//! Command-line front end. [`run`] never touches the process: it returns the exit
//! code and both output streams so the binary and the tests share one path.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::criterion::{
    self, paper_table, render_table, DeformationSearch, DEFAULT_ATTEMPTS, DEFAULT_SEED,
};
use crate::divisor::{
    canonical_divisor, canonical_self_intersection, genus, intersect, is_ample, pic_class,
    pic_rank, polytope, representative, PicClass,
};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::io::{fan_from_json, polynomial_from_json, polynomial_to_json, PolynomialJson};
use crate::jacobian::{JacobianSystem, SubspaceDump, DEFAULT_K_MAX};
use crate::poly::{monomial_basis_of_class, parse_polynomial, CoxPolynomial, Exponents};

#[derive(Debug, Parser)]
#[command(
    name = "toricjac",
    version,
    about = "Toric Jacobian rings of curves on smooth toric surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Builtin surface: hirzebruch:R, p2 or p1xp1
    #[arg(long, global = true, conflicts_with = "fan_file")]
    surface: Option<String>,

    /// Fan JSON file: {"rays": [[a,b],...], "labels": [...]}
    #[arg(long, global = true)]
    fan_file: Option<PathBuf>,

    /// Picard coordinates of beta, e.g. 5,3
    #[arg(long, global = true, allow_hyphen_values = true)]
    class: Option<String>,

    /// Target class as an expression in beta and K, e.g. 2β+2K or 2b+2K
    #[arg(long, global = true, allow_hyphen_values = true)]
    class_of: Option<String>,

    /// Polynomial in the fan's variables, or fD for the Hirzebruch family of degree D
    #[arg(long, global = true, conflicts_with = "poly_file", allow_hyphen_values = true)]
    poly: Option<String>,

    /// Polynomial JSON file: {"terms": [{"exps": [...], "coeff": "p/q"}, ...]}
    #[arg(long, global = true)]
    poly_file: Option<PathBuf>,

    /// Largest power of the irrelevant ideal tried by the saturation certificate
    #[arg(long, global = true, default_value_t = DEFAULT_K_MAX)]
    kmax: u32,

    /// Number of random multipliers tried by find-eta
    #[arg(long, global = true, default_value_t = DEFAULT_ATTEMPTS)]
    attempts: u32,

    /// Seed for find-eta
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Include the echelon bases of the computed subspaces (hilbert)
    #[arg(long, global = true)]
    dump_subspaces: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fan data, Picard group and intersection numbers; with --class, data of that class
    DescribeSurface,
    /// Monomial basis of a graded piece of the Cox ring
    Basis,
    /// Decide nondegeneracy of f and try the saturation certificate
    Nondegenerate,
    /// Dimensions of S, J0(f), J(f), J1(f) and R1(f) in one class
    Hilbert,
    /// Full rank-g criterion
    Criterion,
    /// Criterion dim J1(f)_beta <= K^2 + 1
    QuickCriterion,
    /// Search for eta with multiplication rank g
    FindEta,
    /// R1(f_d)_beta on the first Hirzebruch surface for a range of d
    PaperTable {
        #[arg(long, default_value_t = 5)]
        from: u32,
        #[arg(long, default_value_t = 10)]
        to: u32,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_INVALID
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::DescribeSurface => describe_surface(cli),
        Command::Basis => basis(cli),
        Command::Nondegenerate => nondegenerate(cli),
        Command::Hilbert => hilbert(cli),
        Command::Criterion => run_criterion(cli, false),
        Command::QuickCriterion => run_criterion(cli, true),
        Command::FindEta => find_eta(cli),
        Command::PaperTable { from, to } => table(cli, *from, *to),
    }
}

pub fn parse_surface(name: &str) -> Result<Fan> {
    match name {
        "p2" => Ok(Fan::projective_plane()),
        "p1xp1" => Ok(Fan::p1_x_p1()),
        _ => {
            let r = name
                .strip_prefix("hirzebruch:")
                .ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "unknown surface {name:?}; expected hirzebruch:R, p2 or p1xp1"
                    ))
                })?
                .parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("bad Hirzebruch index in {name:?}")))?;
            Ok(Fan::hirzebruch(r))
        }
    }
}

fn fan(cli: &Cli) -> Result<Fan> {
    match (&cli.surface, &cli.fan_file) {
        (Some(s), _) => parse_surface(s),
        (None, Some(path)) => fan_from_json(&std::fs::read_to_string(path)?),
        (None, None) => Err(Error::InvalidArgument(
            "a surface is required: use --surface or --fan-file".into(),
        )),
    }
}

/// Picard coordinates such as `5,3`.
pub fn parse_class(text: &str, fan: &Fan) -> Result<PicClass> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad class coordinate {s:?} in {text:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != pic_rank(fan) {
        return Err(Error::Length {
            expected: pic_rank(fan),
            got: coords.len(),
        });
    }
    Ok(PicClass::new(coords))
}

/// Coefficients `(a, b)` of an expression `a beta + b K`.
pub fn parse_class_expr(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("bad class expression {text:?}; expected e.g. 2β+2K"));
    let src: String = text
        .replace("beta", "β")
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == 'b' || c == 'B' { 'β' } else { c })
        .collect();
    if src.is_empty() {
        return Err(bad());
    }
    let (mut a, mut b) = (0i64, 0i64);
    let mut chars = src.chars().peekable();
    let mut first = true;
    while chars.peek().is_some() {
        let mut sign = 1;
        match chars.peek() {
            Some('+') => {
                chars.next();
            }
            Some('-') => {
                sign = -1;
                chars.next();
            }
            _ if !first => return Err(bad()),
            _ => {}
        }
        first = false;
        let mut digits = String::new();
        while let Some(c) = chars.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(*c);
            chars.next();
        }
        let n: i64 = if digits.is_empty() {
            1
        } else {
            digits.parse().map_err(|_| bad())?
        };
        if chars.peek() == Some(&'*') {
            chars.next();
        }
        match chars.next() {
            Some('β') => a += sign * n,
            Some('K') => b += sign * n,
            _ => return Err(bad()),
        }
    }
    Ok((a, b))
}

fn family_degree(text: &str) -> Option<u32> {
    text.strip_prefix('f')?.parse().ok()
}

fn polynomial(cli: &Cli, fan: &Fan) -> Result<Option<CoxPolynomial>> {
    match (&cli.poly, &cli.poly_file) {
        (Some(text), _) => {
            if let Some(d) = family_degree(text) {
                let (h1, _, f) = criterion::hirzebruch_family(d)?;
                if h1.rays() != fan.rays() {
                    return Err(Error::InvalidArgument(format!(
                        "{text} is defined on hirzebruch:1 only"
                    )));
                }
                return Ok(Some(f));
            }
            Ok(Some(parse_polynomial(text, fan.labels())?))
        }
        (None, Some(path)) => Ok(Some(polynomial_from_json(&std::fs::read_to_string(path)?, fan)?)),
        (None, None) => Ok(None),
    }
}

fn require_polynomial(cli: &Cli, fan: &Fan) -> Result<CoxPolynomial> {
    polynomial(cli, fan)?.ok_or_else(|| {
        Error::InvalidArgument("a polynomial is required: use --poly or --poly-file".into())
    })
}

/// `beta` from `--class`, else from the class of `f`; checks they agree.
fn beta(cli: &Cli, fan: &Fan, f: Option<&CoxPolynomial>) -> Result<Option<PicClass>> {
    let given = cli.class.as_deref().map(|t| parse_class(t, fan)).transpose()?;
    let of_f = match f {
        Some(p) => p.class(fan)?,
        None => None,
    };
    match (given, of_f) {
        (Some(g), Some(c)) if g != c => Err(Error::ClassMismatch(format!(
            "--class {g} differs from the class {c} of the polynomial"
        ))),
        (Some(g), _) => Ok(Some(g)),
        (None, c) => Ok(c),
    }
}

/// The class a command works in: `--class-of` resolved against beta, else beta.
fn target_class(cli: &Cli, fan: &Fan, beta: Option<&PicClass>) -> Result<PicClass> {
    let beta = beta.ok_or_else(|| {
        Error::InvalidArgument("a class is required: use --class, or --poly to define beta".into())
    })?;
    match &cli.class_of {
        None => Ok(beta.clone()),
        Some(expr) => {
            let (a, b) = parse_class_expr(expr)?;
            let k = pic_class(fan, &canonical_divisor(fan));
            Ok(&(a * beta) + &(b * &k))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn coords(c: &PicClass) -> String {
    format!("({})", join(&c.coords))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct SurfaceInfo {
    rays: Vec<[i64; 2]>,
    labels: Vec<String>,
    ccw_order: Vec<usize>,
    maximal_cones: Vec<(usize, usize)>,
    pic_rank: usize,
    pic_basis: String,
    self_intersections: Vec<i64>,
    canonical_class: Vec<i64>,
    k_squared: i64,
    irrelevant_generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<ClassInfo>,
}

#[derive(Serialize)]
struct ClassInfo {
    class: Vec<i64>,
    representative: Vec<i64>,
    ample: bool,
    h0: usize,
    self_intersection: i64,
    dot_k: i64,
    arithmetic_genus: i64,
    polytope_vertices: Vec<[String; 2]>,
}

fn describe_surface(cli: &Cli) -> Result<String> {
    let fan = fan(cli)?;
    let labels = fan.labels().to_vec();
    let k = canonical_divisor(&fan);
    let class = cli
        .class
        .as_deref()
        .map(|t| -> Result<ClassInfo> {
            let c = parse_class(t, &fan)?;
            let d = representative(&fan, &c);
            let p = polytope(&fan, &d);
            Ok(ClassInfo {
                class: c.coords.clone(),
                representative: d.coeffs.clone(),
                ample: is_ample(&fan, &d),
                h0: p.points.len(),
                self_intersection: intersect(&fan, &d, &d),
                dot_k: intersect(&fan, &d, &k),
                arithmetic_genus: genus(&fan, &d)?,
                polytope_vertices: p
                    .vertices
                    .iter()
                    .map(|v| [v[0].to_string(), v[1].to_string()])
                    .collect(),
            })
        })
        .transpose()?;
    let info = SurfaceInfo {
        rays: fan.rays().iter().map(|r| r.0).collect(),
        labels: labels.clone(),
        ccw_order: fan.ccw_order().to_vec(),
        maximal_cones: fan.maximal_cones().to_vec(),
        pic_rank: pic_rank(&fan),
        pic_basis: fan.pic_basis_id(),
        self_intersections: fan.self_intersection_numbers(),
        canonical_class: pic_class(&fan, &k).coords,
        k_squared: canonical_self_intersection(&fan),
        irrelevant_generators: fan
            .irrelevant_generators()
            .into_iter()
            .map(|e| Exponents(e).render(&labels))
            .collect(),
        class,
    };
    if cli.json {
        return to_json(&info);
    }
    let mut out = String::new();
    let rays: Vec<String> = fan
        .rays()
        .iter()
        .zip(&labels)
        .map(|(r, l)| format!("{l}={r}"))
        .collect();
    writeln!(out, "rays: {}", rays.join(" ")).unwrap();
    let order: Vec<&str> = info.ccw_order.iter().map(|&i| labels[i].as_str()).collect();
    writeln!(out, "counterclockwise: {}", order.join(" ")).unwrap();
    let cones: Vec<String> = info
        .maximal_cones
        .iter()
        .map(|&(i, j)| format!("{{{},{}}}", labels[i], labels[j]))
        .collect();
    writeln!(out, "maximal cones: {}", cones.join(" ")).unwrap();
    writeln!(out, "Pic rank {} basis {}", info.pic_rank, info.pic_basis).unwrap();
    writeln!(out, "D_i^2: {}", join(&info.self_intersections)).unwrap();
    writeln!(
        out,
        "K = ({}), K^2 = {}",
        join(&info.canonical_class),
        info.k_squared
    )
    .unwrap();
    writeln!(
        out,
        "irrelevant ideal: ({})",
        info.irrelevant_generators.join(", ")
    )
    .unwrap();
    if let Some(c) = &info.class {
        writeln!(
            out,
            "class ({}): representative {:?}",
            join(&c.class),
            c.representative
        )
        .unwrap();
        writeln!(out, "  ample: {}", if c.ample { "yes" } else { "no" }).unwrap();
        writeln!(out, "  h0 = {}", c.h0).unwrap();
        writeln!(out, "  D^2 = {}, D.K = {}", c.self_intersection, c.dot_k).unwrap();
        writeln!(out, "  arithmetic genus = {}", c.arithmetic_genus).unwrap();
        let verts: Vec<String> = c
            .polytope_vertices
            .iter()
            .map(|v| format!("({},{})", v[0], v[1]))
            .collect();
        writeln!(out, "  polytope vertices: {}", verts.join(" ")).unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct BasisInfo {
    class: Vec<i64>,
    dim: usize,
    monomials: Vec<String>,
}

fn basis(cli: &Cli) -> Result<String> {
    let fan = fan(cli)?;
    let f = polynomial(cli, &fan)?;
    let beta = beta(cli, &fan, f.as_ref())?;
    let class = target_class(cli, &fan, beta.as_ref())?;
    let monomials: Vec<String> = monomial_basis_of_class(&fan, &class)
        .iter()
        .map(|e| e.render(fan.labels()))
        .collect();
    let info = BasisInfo {
        class: class.coords.clone(),
        dim: monomials.len(),
        monomials,
    };
    if cli.json {
        return to_json(&info);
    }
    let mut out = format!("S_{} has dimension {}\n", coords(&class), info.dim);
    for m in &info.monomials {
        writeln!(out, "  {m}").unwrap();
    }
    Ok(out)
}

#[derive(Serialize)]
struct NondegInfo {
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<crate::jacobian::ChartWitness>,
    certificate: String,
    kmax: u32,
}

fn nondegenerate(cli: &Cli) -> Result<String> {
    let fan = fan(cli)?;
    let f = require_polynomial(cli, &fan)?;
    beta(cli, &fan, Some(&f))?;
    let sys = JacobianSystem::new(&fan, f)?;
    let decision = sys.nondegenerate_decide();
    let certificate = sys.saturation_certificate(cli.kmax)?;
    let info = NondegInfo {
        status: decision.status_string(),
        witness: decision.witness.clone(),
        certificate: certificate.status_string(),
        kmax: cli.kmax,
    };
    if cli.json {
        return to_json(&info);
    }
    let mut out = format!("chart decision: {}\n", info.status);
    if let Some(w) = &info.witness {
        writeln!(out, "  {}", w.description).unwrap();
    }
    writeln!(
        out,
        "saturation certificate (k_max = {}): {}",
        info.kmax, info.certificate
    )
    .unwrap();
    Ok(out)
}

#[derive(Serialize)]
struct HilbertInfo {
    class: Vec<i64>,
    dim_s: usize,
    dim_j0: usize,
    dim_j: usize,
    dim_j1: usize,
    dim_r1: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    subspaces: Option<Dumps>,
}

#[derive(Serialize)]
struct Dumps {
    j0: SubspaceDump,
    j: SubspaceDump,
    j1: SubspaceDump,
}

fn hilbert(cli: &Cli) -> Result<String> {
    let fan = fan(cli)?;
    let f = require_polynomial(cli, &fan)?;
    let beta = beta(cli, &fan, Some(&f))?;
    let class = target_class(cli, &fan, beta.as_ref())?;
    let sys = JacobianSystem::new(&fan, f)?;
    let j0 = sys.j0_piece(&class)?;
    let j = sys.j_piece(&class)?;
    let j1 = sys.j1_piece(&class)?;
    let labels = fan.labels();
    let info = HilbertInfo {
        class: class.coords.clone(),
        dim_s: j1.ambient_dim(),
        dim_j0: j0.dim(),
        dim_j: j.dim(),
        dim_j1: j1.dim(),
        dim_r1: j1.codim(),
        subspaces: cli.dump_subspaces.then(|| Dumps {
            j0: j0.dump(labels),
            j: j.dump(labels),
            j1: j1.dump(labels),
        }),
    };
    if cli.json || cli.dump_subspaces {
        return to_json(&info);
    }
    let mut out = format!("class {} in basis {}\n", coords(&class), fan.pic_basis_id());
    writeln!(out, "dim S  = {}", info.dim_s).unwrap();
    writeln!(out, "dim J0 = {}", info.dim_j0).unwrap();
    writeln!(out, "dim J  = {}", info.dim_j).unwrap();
    writeln!(out, "dim J1 = {}", info.dim_j1).unwrap();
    writeln!(out, "dim R1 = {}", info.dim_r1).unwrap();
    Ok(out)
}

fn criterion_inputs(cli: &Cli) -> Result<(Fan, crate::divisor::TorusDivisor, CoxPolynomial)> {
    let fan = fan(cli)?;
    let f = require_polynomial(cli, &fan)?;
    let beta = beta(cli, &fan, Some(&f))?
        .ok_or_else(|| Error::InvalidArgument("f must be nonzero".into()))?;
    let d = representative(&fan, &beta);
    Ok((fan, d, f))
}

fn run_criterion(cli: &Cli, quick: bool) -> Result<String> {
    let (fan, d, f) = criterion_inputs(cli)?;
    let report = if quick {
        criterion::quick_criterion(&fan, &d, &f)?
    } else {
        criterion::evaluate(&fan, &d, &f)?
    };
    if cli.json {
        to_json(&report)
    } else {
        Ok(report.to_string())
    }
}

#[derive(Serialize)]
struct EtaInfo {
    found: bool,
    seed: u64,
    attempts: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    attempt: Option<u32>,
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta_terms: Option<PolynomialJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<String>>>,
}

fn find_eta(cli: &Cli) -> Result<String> {
    let (fan, d, f) = criterion_inputs(cli)?;
    let search = criterion::find_rank_g_deformation(&fan, &d, &f, cli.attempts, cli.seed)?;
    let info = match &search {
        DeformationSearch::Found {
            eta,
            rank,
            attempt,
            matrix,
        } => EtaInfo {
            found: true,
            seed: cli.seed,
            attempts: cli.attempts,
            attempt: Some(*attempt),
            rank: *rank,
            eta: Some(eta.render(fan.labels())),
            eta_terms: Some(polynomial_to_json(eta)),
            matrix: Some(
                matrix
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect())
                    .collect(),
            ),
        },
        DeformationSearch::NotFound {
            best_rank,
            attempts,
        } => EtaInfo {
            found: false,
            seed: cli.seed,
            attempts: *attempts,
            attempt: None,
            rank: *best_rank,
            eta: None,
            eta_terms: None,
            matrix: None,
        },
    };
    if cli.json {
        return to_json(&info);
    }
    let mut out = String::new();
    match (&info.eta, &info.matrix) {
        (Some(eta), Some(matrix)) => {
            writeln!(
                out,
                "found eta at attempt {} of {} (seed {}), rank {}",
                info.attempt.unwrap_or_default(),
                info.attempts,
                info.seed,
                info.rank
            )
            .unwrap();
            writeln!(out, "eta = {eta}").unwrap();
            writeln!(out, "matrix R1_(beta+K) -> R1_(2beta+K):").unwrap();
            for row in matrix {
                writeln!(out, "  [{}]", row.join(", ")).unwrap();
            }
        }
        _ => {
            writeln!(
                out,
                "no eta of rank g in {} attempts (seed {}); best rank {}",
                info.attempts, info.seed, info.rank
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn table(cli: &Cli, from: u32, to: u32) -> Result<String> {
    if from > to {
        return Err(Error::InvalidArgument(format!("empty range {from}..{to}")));
    }
    let rows = paper_table(from..=to)?;
    if cli.json {
        to_json(&rows)
    } else {
        Ok(render_table(&rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_expressions() {
        assert_eq!(parse_class_expr("2β+2K").unwrap(), (2, 2));
        assert_eq!(parse_class_expr("beta + K").unwrap(), (1, 1));
        assert_eq!(parse_class_expr("3b+2K").unwrap(), (3, 2));
        assert_eq!(parse_class_expr("-K").unwrap(), (0, -1));
        assert_eq!(parse_class_expr("2*beta - K").unwrap(), (2, -1));
        assert!(parse_class_expr("2x").is_err());
        assert!(parse_class_expr("").is_err());
        assert!(parse_class_expr("β2K").is_err());
    }

    #[test]
    fn surfaces() {
        assert_eq!(parse_surface("hirzebruch:2").unwrap(), Fan::hirzebruch(2));
        assert_eq!(parse_surface("p2").unwrap().n(), 3);
        assert!(parse_surface("p3").is_err());
        assert!(parse_surface("hirzebruch:x").is_err());
    }

    #[test]
    fn class_coordinates() {
        let f = Fan::hirzebruch(1);
        assert_eq!(parse_class("5,3", &f).unwrap(), PicClass::new(vec![5, 3]));
        assert!(matches!(parse_class("5", &f), Err(Error::Length { .. })));
        assert!(matches!(parse_class("5,x", &f), Err(Error::Parse(_))));
    }
}
