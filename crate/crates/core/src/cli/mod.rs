//! Command-line front end. Every command builds a JSON report carrying `"schema": 1`; plain
//! output flattens that report into `key: value` lines.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 validation failure, 3 disagreement.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::arrangements::{analyze, Arrangement, ArrangementError};
use crate::cones::{check_homogeneous, halve_weights, is_quadratic, realify, AnyCone, ConeError, ConeFile, WeightedCone};
use crate::dgla::weights::{mc_grid_compare, render_vector};
use crate::dgla::{check_dgla_axioms, check_weight_axioms, reduce_to_quadratic, truncate, DglaError, DglaFile, Wdgla};
use crate::exactalg::{ExactError, Field, GaussianRational, Rational};
use crate::germ::{deformation_oracle, quadratic_cone, GermError, OracleConfig};
use crate::grouprep::{parse_presentation, parse_representation, GroupError, LieAlgebra, Representation};
use crate::mhs::{
    check_mhs, dec_filtration, deligne_splitting, gr_weight, weight_support, FilteredComplexFile, FilteredSpaceFile,
    MhsError,
};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "quadgerm", version, about = "Exact deformation germs, DGLA reductions, mixed Hodge linear algebra and arrangement bounds")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the JSON report instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quadratic cone of the germ at a representation.
    Cone(RepArgs),
    /// Compare cone membership with order-by-order liftability.
    Oracle {
        #[command(flatten)]
        rep: RepArgs,
        /// Artin order c of ℚ[t]/t^c.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=6))]
        order: u8,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Weighted DGLA operations.
    Dgla {
        #[command(subcommand)]
        action: DglaAction,
    },
    /// Weighted homogeneous cone operations.
    Cones {
        #[command(subcommand)]
        action: ConesAction,
    },
    /// Mixed Hodge structure operations.
    Mhs {
        #[command(subcommand)]
        action: MhsAction,
    },
    /// Intersection profile, braid count, Betti bounds and classification of a line arrangement.
    Arrangement {
        path: PathBuf,
        /// Cover levels N, comma separated.
        #[arg(long = "N", value_delimiter = ',', default_values_t = [2u64, 3])]
        levels: Vec<u64>,
    },
}

#[derive(Args, Debug)]
pub struct RepArgs {
    pub presentation: PathBuf,
    pub representation: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum DglaAction {
    /// DGLA and weight axioms.
    Check { path: PathBuf },
    /// Bigraded cohomology.
    Cohomology { path: PathBuf },
    /// Quotient by the truncation ideal.
    Truncate { path: PathBuf },
    /// Truncate, then reduce to the quadratic cone; `--order` adds the exhaustive grid comparison.
    Reduce {
        path: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=6))]
        order: Option<u8>,
        /// Grid size cap for the comparison.
        #[arg(long, default_value_t = 20000)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConesAction {
    /// Homogeneity and quadraticity.
    Check { path: PathBuf },
    /// Real form of a cone over ℚ(i).
    Realify { path: PathBuf },
    /// Halve every weight.
    Halve { path: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum MhsAction {
    /// Hodge numbers and the Deligne splitting of a filtered space.
    Split { path: PathBuf },
    /// Dec filtration and weights on cohomology of a filtered complex.
    Dec { path: PathBuf },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn invalid(message: impl ToString) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn exact_code(e: &ExactError) -> i32 {
    if matches!(e, ExactError::Parse(_)) {
        1
    } else {
        2
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let code = match &e {
            GroupError::Parse { .. } => 1,
            GroupError::Exact(x) => exact_code(x),
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<GermError> for Failure {
    fn from(e: GermError) -> Self {
        match e {
            GermError::Group(g) => g.into(),
            other => invalid(other),
        }
    }
}

impl From<DglaError> for Failure {
    fn from(e: DglaError) -> Self {
        let code = match &e {
            DglaError::Exact(x) => exact_code(x),
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<ConeError> for Failure {
    fn from(e: ConeError) -> Self {
        let code = match &e {
            ConeError::Exact(x) => exact_code(x),
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<MhsError> for Failure {
    fn from(e: MhsError) -> Self {
        let code = match &e {
            MhsError::Exact(x) => exact_code(x),
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<ArrangementError> for Failure {
    fn from(e: ArrangementError) -> Self {
        let code = match &e {
            ArrangementError::Parse { .. } | ArrangementError::Range(_) => 1,
            ArrangementError::Exact(x) => exact_code(x),
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// A command's report and its exit code.
struct Outcome {
    report: Value,
    code: i32,
}

fn ok(report: Value) -> Result<Outcome, Failure> {
    Ok(Outcome { report, code: 0 })
}

fn load_rep(args: &RepArgs) -> Result<Representation, Failure> {
    let pres = parse_presentation(&read(&args.presentation)?)?;
    let rep = parse_representation(&read(&args.representation)?, &pres)?;
    rep.validate()?;
    Ok(rep)
}

fn cmd_cone(args: &RepArgs) -> Result<Outcome, Failure> {
    let rep = load_rep(args)?;
    let c = quadratic_cone(&rep)?;
    let n = c.relations.len();
    let summary = if n == 0 { "0 relations (smooth)".to_string() } else { format!("{n} relations") };
    ok(json!({
        "dims": c.dims,
        "variables": c.variables,
        "relations": c.relation_strings(),
        "summary": summary,
    }))
}

fn cmd_oracle(args: &RepArgs, order: u8, samples: usize, seed: u64) -> Result<Outcome, Failure> {
    let rep = load_rep(args)?;
    let report = deformation_oracle(&rep, &OracleConfig { order: order as usize, samples, seed })?;
    let witnesses: Vec<_> = report.entries.iter().filter(|e| !e.agrees).take(10).collect();
    let agreements = report.entries.len() - report.disagreements;
    let code = if report.disagreements > 0 { 3 } else { 0 };
    Ok(Outcome {
        report: json!({
            "order": report.order,
            "samples": report.entries.len(),
            "dims": report.dims,
            "relations": report.relations,
            "agreements": agreements,
            "disagreements": report.disagreements,
            "witnesses": witnesses,
        }),
        code,
    })
}

fn load_dgla(path: &Path) -> Result<Wdgla, Failure> {
    let file = DglaFile::parse(&read(path)?).map_err(|e| usage(e.to_string()))?;
    Ok(file.to_dgla()?)
}

/// The Lie algebra the weight axioms compare `L₀⁰` against: the augmentation target when one is
/// declared, otherwise `L₀⁰` itself.
fn weight_zero_lie(l: &Wdgla) -> Result<LieAlgebra, Failure> {
    if let Some(aug) = l.augmentation() {
        return Ok(aug.target().clone());
    }
    let idx = l.indices(0, 0);
    let n = idx.len();
    let mut s = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            for (k, c) in l.basis_bracket(i, j) {
                let pos = idx.iter().position(|x| x == k).ok_or_else(|| invalid("bracket of weight 0 leaves L_0^0"))?;
                s[a][b][pos] = c.clone();
            }
        }
    }
    let names = idx.iter().map(|&i| l.basis()[i].name.clone()).collect();
    LieAlgebra::new(names, s).map_err(invalid)
}

fn bigrade_dims(l: &Wdgla) -> Vec<Value> {
    l.bigrades()
        .into_iter()
        .map(|(j, i)| json!({"degree": j, "weight": i, "dim": l.indices(j, i).len()}))
        .collect()
}

fn cmd_dgla(action: &DglaAction) -> Result<Outcome, Failure> {
    match action {
        DglaAction::Check { path } => {
            let l = load_dgla(path)?;
            let axioms = check_dgla_axioms(&l);
            let weights = check_weight_axioms(&l, &weight_zero_lie(&l)?);
            let code = if axioms.passed() && weights.passed() { 0 } else { 2 };
            Ok(Outcome {
                report: json!({
                    "dim": l.dim(),
                    "axioms_passed": axioms.passed(),
                    "axiom_violations": axioms.violations,
                    "weight_axioms_passed": weights.passed(),
                    "weight_violations": weights.violations,
                }),
                code,
            })
        }
        DglaAction::Cohomology { path } => {
            let l = load_dgla(path)?;
            let pieces: Vec<Value> = l
                .cohomology()
                .into_iter()
                .filter(|p| p.dim > 0)
                .map(|p| {
                    let reps: Vec<String> = p.representatives.iter().map(|v| render_vector(&l, v)).collect();
                    json!({"degree": p.degree, "weight": p.weight, "dim": p.dim, "representatives": reps})
                })
                .collect();
            let totals: Vec<usize> = (0..=l.max_degree()).map(|j| l.cohomology_dim(j)).collect();
            ok(json!({"dim": l.dim(), "totals": totals, "pieces": pieces}))
        }
        DglaAction::Truncate { path } => {
            let l = load_dgla(path)?;
            let t = truncate(&l)?;
            let verified = t.projection.violations().is_empty() && t.report.holds();
            ok(json!({
                "dim": l.dim(),
                "ideal_dim": t.ideal_dim,
                "quotient_dim": t.quotient.dim(),
                "quotient_bigrades": bigrade_dims(&t.quotient),
                "quasi_iso": t.report,
                "projection_verified": verified,
                "quotient": DglaFile::from_dgla(&t.quotient),
            }))
        }
        DglaAction::Reduce { path, order, samples } => {
            let l = load_dgla(path)?;
            let t = truncate(&l)?;
            let q = &t.quotient;
            let r = reduce_to_quadratic(q)?;
            let mut report = json!({
                "ideal_dim": t.ideal_dim,
                "checks": r.checks,
                "relations": r.cone.relation_strings(),
                "unhalved": ConeFile::from_cone(&r.unhalved, None),
                "cone": ConeFile::from_cone(&r.cone, None),
            });
            let mut code = 0;
            if let Some(c) = order {
                let grid = mc_grid_compare(q, &r, *c as usize, *samples)?;
                if !grid.mismatches.is_empty() {
                    code = 3;
                }
                report["grid"] = json!(grid);
            }
            Ok(Outcome { report, code })
        }
    }
}

fn load_cone(path: &Path) -> Result<AnyCone, Failure> {
    let file: ConeFile = serde_json::from_str(&read(path)?).map_err(|e| usage(format!("JSON: {e}")))?;
    Ok(file.to_cone()?)
}

fn cone_check<F: Field>(c: &WeightedCone<F>) -> Outcome {
    let degrees = check_homogeneous(c);
    let homogeneous = degrees.iter().all(|d| d.degree.is_some());
    let quadratic = homogeneous && is_quadratic(c).unwrap_or(false);
    Outcome {
        report: json!({
            "variables": c.nvars(),
            "relations": c.relation_strings(),
            "degrees": degrees,
            "homogeneous": homogeneous,
            "quadratic": quadratic,
        }),
        code: if homogeneous { 0 } else { 2 },
    }
}

fn cmd_cones(action: &ConesAction) -> Result<Outcome, Failure> {
    match action {
        ConesAction::Check { path } => Ok(match load_cone(path)? {
            AnyCone::Rational(c) => cone_check(&c),
            AnyCone::Gaussian(c) => cone_check(&c),
        }),
        ConesAction::Realify { path } => {
            let c = match load_cone(path)? {
                AnyCone::Gaussian(c) => c,
                AnyCone::Rational(c) => {
                    let rels = c.relations().iter().map(|p| p.map_field(|x| GaussianRational::real(x.clone()))).collect();
                    WeightedCone::unchecked(c.names().to_vec(), c.weights().to_vec(), rels)?
                }
            };
            let r = realify(&c)?;
            let degrees_before = c.degrees()?;
            let degrees_after = r.degrees()?;
            let preserved = degrees_after.chunks(2).zip(&degrees_before).all(|(pair, d)| pair.iter().all(|x| x == d));
            ok(json!({
                "variables": [c.nvars(), r.nvars()],
                "relation_counts": [c.relations().len(), r.relations().len()],
                "degrees_preserved": preserved,
                "cone": ConeFile::from_cone(&r, None),
            }))
        }
        ConesAction::Halve { path } => {
            let file = match load_cone(path)? {
                AnyCone::Rational(c) => ConeFile::from_cone(&halve_weights(&c)?, None),
                AnyCone::Gaussian(c) => ConeFile::from_cone(&halve_weights(&c)?, Some("gaussian")),
            };
            ok(json!({"cone": file}))
        }
    }
}

fn keyed<K: std::fmt::Display, V: serde::Serialize>(pairs: impl IntoIterator<Item = (K, V)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn cmd_mhs(action: &MhsAction) -> Result<Outcome, Failure> {
    match action {
        MhsAction::Split { path } => {
            let file = FilteredSpaceFile::parse(&read(path)?).map_err(|e| usage(e.to_string()))?;
            let v = file.to_space()?;
            let numbers = check_mhs(&v)?;
            let s = deligne_splitting(&v)?;
            let gr = gr_weight(&v);
            let pieces: Vec<Value> = s
                .pieces
                .iter()
                .map(|p| {
                    let basis: Vec<Vec<String>> = p.space.basis().iter().map(|b| strings(b)).collect();
                    json!({"p": p.p, "q": p.q, "dim": p.dim, "basis": basis})
                })
                .collect();
            let code = if s.checks.all() { 0 } else { 3 };
            Ok(Outcome {
                report: json!({
                    "dim": v.dim(),
                    "gr_weight": keyed(gr.iter()),
                    "pure": gr.len() <= 1,
                    "hodge_numbers": keyed(numbers.iter().map(|((p, q), h)| (format!("{p},{q}"), h))),
                    "pieces": pieces,
                    "checks": s.checks,
                }),
                code,
            })
        }
        MhsAction::Dec { path } => {
            let file = FilteredComplexFile::parse(&read(path)?).map_err(|e| usage(e.to_string()))?;
            let c = file.to_complex()?;
            let r = dec_filtration(&c)?;
            let supports = (0..c.len()).map(|n| weight_support(&c, n)).collect::<Result<Vec<_>, _>>()?;
            let cohomology: Vec<usize> = (0..c.len()).map(|n| c.cohomology_dim(n)).collect();
            let code = if r.preserved_by_d && r.cohomology_identity { 0 } else { 3 };
            Ok(Outcome {
                report: json!({
                    "dims": c.dims(),
                    "cohomology": cohomology,
                    "dec": FilteredComplexFile::from_complex(&r.complex).w,
                    "preserved_by_d": r.preserved_by_d,
                    "cohomology_identity": r.cohomology_identity,
                    "failure": r.failure,
                    "weight_support": supports,
                }),
                code,
            })
        }
    }
}

fn cmd_arrangement(path: &Path, levels: &[u64]) -> Result<Outcome, Failure> {
    let l = Arrangement::parse(&read(path)?)?;
    let report = analyze(&l, levels)?;
    ok(serde_json::to_value(report).map_err(invalid)?)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Cone(_) => "cone",
        Command::Oracle { .. } => "oracle",
        Command::Dgla { action } => match action {
            DglaAction::Check { .. } => "dgla check",
            DglaAction::Cohomology { .. } => "dgla cohomology",
            DglaAction::Truncate { .. } => "dgla truncate",
            DglaAction::Reduce { .. } => "dgla reduce",
        },
        Command::Cones { action } => match action {
            ConesAction::Check { .. } => "cones check",
            ConesAction::Realify { .. } => "cones realify",
            ConesAction::Halve { .. } => "cones halve",
        },
        Command::Mhs { action } => match action {
            MhsAction::Split { .. } => "mhs split",
            MhsAction::Dec { .. } => "mhs dec",
        },
        Command::Arrangement { .. } => "arrangement",
    }
}

fn execute(cfg: &RunConfig) -> Result<Outcome, Failure> {
    match &cfg.command {
        Command::Cone(args) => cmd_cone(args),
        Command::Oracle { rep, order, samples } => cmd_oracle(rep, *order, *samples, cfg.seed),
        Command::Dgla { action } => cmd_dgla(action),
        Command::Cones { action } => cmd_cones(action),
        Command::Mhs { action } => cmd_mhs(action),
        Command::Arrangement { path, levels } => cmd_arrangement(path, levels),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = xs.iter().map(scalar_text).collect();
            out.push(format!("{prefix}: [{}]", items.join(", ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        scalar => out.push(format!("{prefix}: {}", scalar_text(scalar))),
    }
}

/// Plain-text rendering: one `path: value` line per scalar or scalar list of the JSON report.
pub fn plain_text(report: &Value) -> String {
    let mut lines = Vec::new();
    flatten("", report, &mut lines);
    lines.join("\n") + "\n"
}

fn with_header(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA));
    map.insert("command".into(), json!(command));
    match body {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("result".into(), other);
        }
    }
    Value::Object(map)
}

fn emit(cfg: &RunConfig, report: &Value, out: &mut dyn Write, err: &mut dyn Write) -> bool {
    let text = if cfg.json {
        serde_json::to_string_pretty(report).expect("JSON values serialize") + "\n"
    } else {
        plain_text(report)
    };
    let result = match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match result {
        Ok(()) => true,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            false
        }
    }
}

/// Parse `args` (program name first), run the command, write the report and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    1
                }
            };
        }
    };
    let name = command_name(&cfg.command);
    match execute(&cfg) {
        Ok(outcome) => {
            if !emit(&cfg, &with_header(name, outcome.report), out, err) {
                return 1;
            }
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            if cfg.json {
                let report = with_header(name, json!({"error": f.message, "exit": f.code}));
                emit(&cfg, &report, out, err);
            }
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn order_out_of_range_is_usage_error() {
        let (code, _, err) = run_str(&["quadgerm", "oracle", "a.pres", "b.rep", "--order", "7"]);
        assert_eq!(code, 1);
        assert!(err.contains("7"));
    }

    #[test]
    fn missing_file_is_usage_error() {
        let (code, _, err) = run_str(&["quadgerm", "arrangement", "/nonexistent/file"]);
        assert_eq!(code, 1);
        assert!(err.contains("cannot read"));
    }

    #[test]
    fn plain_is_projection() {
        let v = json!({"schema": 1, "a": {"b": [1, 2]}, "c": [{"d": "x"}], "e": null});
        assert_eq!(plain_text(&v), "a.b: [1, 2]\nc[0].d: x\ne: none\nschema: 1\n");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["quadgerm", "--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("arrangement"));
    }
}
