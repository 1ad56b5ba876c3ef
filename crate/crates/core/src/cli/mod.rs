//! The `mactt` command line.
//!
//! Every verb reads its inputs, runs one library operation and prints a
//! deterministic report. Exit codes: `0` when every check passes, `1` when a
//! check fails, `2` on unreadable or malformed input.

mod report;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{digest, Report};

use crate::constructors::{pi_dependent, selected_pullback, sigma_dependent};
use crate::error::Error;
use crate::hfcore::{
    eval_bounded, hf_compare, parse_formula, parse_functions, parse_literal, print_functions, quotient_min, separation,
    Env, FinFunction, HfSet,
};
use crate::kan::{factorize, id_type, is_acyclic_fibration, is_fibration, CellKind};
use crate::sset::{
    natural_maps, parse_sset_document, print_sset_document, simplices_at, terminal_sset, validate_presheaf,
    SSetDocument, SimplicialMap,
};
use crate::wtype::{enumerate_wterms, konig_report, parse_signature, poly_iterate, seq_decode, seq_encode};

/// Environment variable holding the default truncation.
pub const TRUNCATION_VAR: &str = "MACTT_TRUNCATION";

#[derive(Parser, Debug)]
#[command(
    name = "mactt",
    version,
    about = "Finite simplicial sets, Kan fibrations and W-types over hereditarily finite sets"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Common {
    /// Truncation degree; defaults to MACTT_TRUNCATION, then to the input file.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    /// Print `key=value` lines instead of the full report.
    #[arg(long, global = true)]
    summary: bool,
    /// Also write the full report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Print the wall-clock duration on standard error.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Horn,
    Boundary,
}

impl From<Kind> for CellKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Horn => CellKind::Horn,
            Kind::Boundary => CellKind::Boundary,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Check a `.sset`, `.sig` or `.fun` file and its round trip through the printer.
    Validate { file: PathBuf },
    /// Compare natural maps out of each representable with simplices.
    Yoneda { file: PathBuf },
    /// Check the lifting property of a map against horns or boundaries.
    KanCheck {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        nmax: Option<usize>,
        /// Lift against boundary inclusions instead of horns.
        #[arg(long)]
        acyclic: bool,
    },
    /// Factor a map by staged cell filling.
    Factorize {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
        #[arg(long, value_enum, default_value = "horn")]
        kind: Kind,
        #[arg(long, default_value_t = 1)]
        stages: usize,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Selected pullback of `h` along `f` from a `.fun` file.
    Pullback {
        file: PathBuf,
        #[arg(long, default_value = "f")]
        f: String,
        #[arg(long, default_value = "h")]
        h: String,
    },
    /// Dependent sum of `k` along `f`.
    Sigma {
        file: PathBuf,
        #[arg(long, default_value = "k")]
        k: String,
        #[arg(long, default_value = "f")]
        f: String,
    },
    /// Dependent product of `k` along `f`.
    Pi {
        file: PathBuf,
        #[arg(long, default_value = "k")]
        k: String,
        #[arg(long, default_value = "f")]
        f: String,
    },
    /// Path object of a fibration.
    IdType {
        file: PathBuf,
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 1)]
        stages: usize,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Terms, iterates and finiteness data of a signature.
    Wtype {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Evaluate a closed bounded formula, or separate a set by one.
    HfEval {
        formula: String,
        /// `name=literal`, repeatable.
        #[arg(long = "bind")]
        bind: Vec<String>,
        /// Variable to separate on; needs `--from`.
        #[arg(long, requires = "from")]
        select: Option<String>,
        #[arg(long)]
        from: Option<String>,
    },
    /// Minimal representatives of a set modulo a relation in `x` and `y`.
    Quotient {
        set: String,
        #[arg(long)]
        relation: String,
    },
}

type Outcome<T> = std::result::Result<T, String>;

fn located(source: &str, e: Error) -> String {
    match e {
        Error::Parse { line, column, message } => format!("{source}:{line}:{column}: {message}"),
        other => format!("{source}: {other}"),
    }
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs the command line with the process environment and standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(TRUNCATION_VAR).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, env.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line with an explicit truncation setting and streams.
pub fn run_with<I, T>(args: I, env_truncation: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let truncation = match (cli.common.trunc, env_truncation) {
        (Some(d), _) => Some(d),
        (None, Some(v)) => match v.trim().parse() {
            Ok(d) => Some(d),
            Err(_) => {
                let _ = writeln!(err, "{TRUNCATION_VAR}: expected a number, found `{v}`");
                return 2;
            }
        },
        (None, None) => None,
    };
    let report = match dispatch(&cli.verb, truncation) {
        Ok(r) => r,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            return 2;
        }
    };
    let text = report.render();
    if let Some(path) = &cli.common.report {
        if let Err(e) = std::fs::write(path, &text) {
            let _ = writeln!(err, "{}: {e}", path.display());
            return 2;
        }
    }
    let shown = if cli.common.summary {
        report.render_summary()
    } else {
        text
    };
    let _ = out.write_all(shown.as_bytes());
    if cli.common.timing {
        let _ = writeln!(err, "duration_ms={}", start.elapsed().as_millis());
    }
    if report.passed() {
        0
    } else {
        1
    }
}

fn dispatch(verb: &Verb, truncation: Option<usize>) -> Outcome<Report> {
    match verb {
        Verb::Validate { file } => validate(file, truncation),
        Verb::Yoneda { file } => yoneda(file, truncation),
        Verb::KanCheck {
            file,
            map,
            nmax,
            acyclic,
        } => kan_check(file, map.as_deref(), *nmax, *acyclic, truncation),
        Verb::Factorize {
            file,
            map,
            kind,
            stages,
            nmax,
        } => factorize_verb(file, map.as_deref(), (*kind).into(), *stages, *nmax, truncation),
        Verb::Pullback { file, f, h } => pullback(file, f, h),
        Verb::Sigma { file, k, f } => dependent(file, k, f, "sigma"),
        Verb::Pi { file, k, f } => dependent(file, k, f, "pi"),
        Verb::IdType {
            file,
            map,
            stages,
            nmax,
        } => id_type_verb(file, map.as_deref(), *stages, *nmax, truncation),
        Verb::Wtype { file, depth } => wtype(file, *depth),
        Verb::HfEval {
            formula,
            bind,
            select,
            from,
        } => hf_eval(formula, bind, select.as_deref(), from.as_deref()),
        Verb::Quotient { set, relation } => quotient(set, relation),
    }
}

struct Loaded {
    name: String,
    text: String,
}

fn load(report: &mut Report, path: &Path) -> Outcome<Loaded> {
    let text = read(path)?;
    let name = path.display().to_string();
    report.input(&name, text.as_bytes());
    Ok(Loaded { name, text })
}

fn load_document(report: &mut Report, path: &Path, truncation: Option<usize>) -> Outcome<SSetDocument> {
    let input = load(report, path)?;
    let doc = parse_sset_document(&input.text).map_err(|e| located(&input.name, e))?;
    let file_d = doc.objects.iter().map(|(_, x)| x.truncation()).max().unwrap_or(0);
    let d = truncation.map_or(file_d, |t| t.min(file_d));
    report.value("truncation", d);
    doc.truncated(d).map_err(|e| located(&input.name, e))
}

/// The map named `name`, the only map of the file, or the map of the only
/// object to the point.
fn select_map(doc: &SSetDocument, name: Option<&str>) -> Outcome<(String, SimplicialMap)> {
    if let Some(name) = name {
        return doc
            .map(name)
            .cloned()
            .map(|f| (name.to_string(), f))
            .ok_or_else(|| format!("no map named `{name}`"));
    }
    match (doc.maps.as_slice(), doc.objects.as_slice()) {
        ([(name, f)], _) => Ok((name.clone(), f.clone())),
        ([], [(name, x)]) => {
            let pt = Arc::new(terminal_sset(x.truncation()));
            let carrier = (0..x.len()).map(|s| x.dim(s)).collect();
            let f = SimplicialMap::new(x.clone(), pt, carrier).map_err(|e| e.to_string())?;
            Ok((format!("{name} -> point"), f))
        }
        ([], _) => Err("the file has no map; name one with --map".into()),
        _ => Err("the file has several maps; choose one with --map".into()),
    }
}

fn check_nmax(nmax: Option<usize>, d: usize) -> Outcome<usize> {
    match nmax {
        Some(n) if n > d => Err(format!("--nmax {n} exceeds truncation {d}")),
        Some(n) => Ok(n),
        None => Ok(d),
    }
}

fn validate(path: &Path, truncation: Option<usize>) -> Outcome<Report> {
    let mut report = Report::new("validate");
    match path.extension().and_then(|e| e.to_str()) {
        Some("sig") => {
            let input = load(&mut report, path)?;
            let sig = parse_signature(&input.text).map_err(|e| located(&input.name, e))?;
            report.value("operators", sig.len());
            let again = parse_signature(&sig.to_string()).map_err(|e| e.to_string())?;
            report.check("round trip", again == sig);
        }
        Some("fun") => {
            let input = load(&mut report, path)?;
            let fs = parse_functions(&input.text).map_err(|e| located(&input.name, e))?;
            for (name, f) in &fs {
                report.line(format!(
                    "function {name}: {} -> {} ok",
                    f.domain().len(),
                    f.codomain().len()
                ));
            }
            let again = parse_functions(&print_functions(&fs)).map_err(|e| e.to_string())?;
            report.check("round trip", again == fs);
        }
        _ => {
            let doc = load_document(&mut report, path, truncation)?;
            let single = doc.objects.len() == 1;
            let mut all_ok = true;
            for (name, x) in &doc.objects {
                let violations = validate_presheaf(x);
                let label = if single {
                    "presheaf".to_string()
                } else {
                    format!("presheaf {name}")
                };
                if violations.is_empty() {
                    report.value(&label, "ok");
                } else {
                    all_ok = false;
                    report.value(&label, format!("{} violations", violations.len()));
                    report.line(format!("first violation: {}", violations[0]));
                }
            }
            for (name, f) in &doc.maps {
                report.line(format!("map {name}: {} simplices, simplicial", f.source().len()));
            }
            report.check("presheaf", all_ok);
            let printed = print_sset_document(&doc);
            let again = parse_sset_document(&printed).map_err(|e| e.to_string())?;
            let same = again.objects.len() == doc.objects.len()
                && again
                    .objects
                    .iter()
                    .zip(&doc.objects)
                    .all(|(a, b)| a.0 == b.0 && *a.1 == *b.1)
                && again.maps.len() == doc.maps.len()
                && again.maps.iter().zip(&doc.maps).all(|(a, b)| a.0 == b.0 && a.1 == b.1);
            report.check("round trip", same);
        }
    }
    Ok(report)
}

fn yoneda(path: &Path, truncation: Option<usize>) -> Outcome<Report> {
    let mut report = Report::new("yoneda");
    let doc = load_document(&mut report, path, truncation)?;
    let mut ok = true;
    for (name, x) in &doc.objects {
        for n in 0..=x.truncation() {
            let simplices = simplices_at(x, n).map_err(|e| e.to_string())?.len();
            let maps = natural_maps(n, x).map_err(|e| e.to_string())?.len();
            ok &= simplices == maps;
            report.line(format!("{name} n={n}: simplices {simplices}, maps from Δ[{n}] {maps}"));
        }
    }
    report.check("yoneda", ok);
    Ok(report)
}

fn kan_check(
    path: &Path,
    map: Option<&str>,
    nmax: Option<usize>,
    acyclic: bool,
    truncation: Option<usize>,
) -> Outcome<Report> {
    let mut report = Report::new("kan-check");
    let doc = load_document(&mut report, path, truncation)?;
    let (name, f) = select_map(&doc, map)?;
    let nmax = check_nmax(nmax, f.source().truncation())?;
    report.value("map", &name);
    report.value("nmax", nmax);
    let (label, result) = if acyclic {
        ("acyclic fibration", is_acyclic_fibration(&f, nmax))
    } else {
        ("fibration", is_fibration(&f, nmax))
    };
    let result = result.map_err(|e| e.to_string())?;
    report.value("squares", result.squares);
    match &result.witness {
        None => report.value(label, "yes"),
        Some(w) => {
            report.value(label, "no");
            report.value("witness", w.cell);
            report.line(format!("square: {}", w.display(&f)));
        }
    }
    report.check(label, result.holds());
    Ok(report)
}

fn counts_by_dim(x: &crate::sset::TruncatedSimplicialSet) -> String {
    (0..=x.truncation())
        .map(|n| x.count(n).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn factorize_verb(
    path: &Path,
    map: Option<&str>,
    kind: CellKind,
    stages: usize,
    nmax: Option<usize>,
    truncation: Option<usize>,
) -> Outcome<Report> {
    let mut report = Report::new("factorize");
    let doc = load_document(&mut report, path, truncation)?;
    let (name, f) = select_map(&doc, map)?;
    let d = f.source().truncation();
    let nmax = nmax.unwrap_or(d);
    report.value("map", &name);
    report.value("kind", kind);
    report.value("nmax", nmax);
    let fac = factorize(&f, kind, stages, nmax).map_err(|e| located(&path.display().to_string(), e))?;
    report.value("stages requested", stages);
    report.value("stages run", fac.stages_run);
    report.value("source simplices", counts_by_dim(f.source()));
    report.value("middle simplices", counts_by_dim(&fac.z));
    report.value("cells", fac.cells.len());
    report.value("simplices added", fac.added());
    report.value("remaining squares", fac.remaining);
    for l in fac.report().lines() {
        report.line(l);
    }
    report.check("p after j is f", fac.p.after(&fac.j).map(|g| g == f).unwrap_or(false));
    report.check("j monic", fac.j.is_monic());
    report.check("presheaf", validate_presheaf(&fac.z).is_empty());
    report.check(
        "terms well formed",
        (0..fac.z.len()).all(|s| fac.term(s).is_well_formed(&fac.signature) && fac.term(s).code() == fac.z.id(s)),
    );
    Ok(report)
}

fn id_type_verb(
    path: &Path,
    map: Option<&str>,
    stages: usize,
    nmax: Option<usize>,
    truncation: Option<usize>,
) -> Outcome<Report> {
    let mut report = Report::new("id-type");
    let doc = load_document(&mut report, path, truncation)?;
    let (name, p) = select_map(&doc, map)?;
    let nmax = check_nmax(nmax, p.source().truncation())?;
    report.value("map", &name);
    report.value("nmax", nmax);
    match id_type(&p, stages, nmax) {
        Err(Error::NotFibration(w)) => {
            report.value("fibration", "no");
            report.line(format!("square: {w}"));
            report.check("fibration", false);
        }
        Err(e) => return Err(e.to_string()),
        Ok(id) => {
            report.value("fibration", "yes");
            report.value("pullback simplices", counts_by_dim(&id.pullback.object));
            let hit: BTreeSet<usize> = id.diagonal.carrier().iter().copied().collect();
            let object = &id.pullback.object;
            let by_dim: Vec<String> = (0..=object.truncation())
                .map(|n| hit.iter().filter(|&&s| object.dim(s) == n).count().to_string())
                .collect();
            report.value("diagonal image", by_dim.join(","));
            report.value("path object simplices", counts_by_dim(&id.factorization.z));
            report.value("cells", id.factorization.cells.len());
            report.value("remaining squares", id.factorization.remaining);
            for l in id.factorization.report().lines() {
                report.line(l);
            }
            report.check(
                "endpoints after r is the diagonal",
                id.endpoints().after(id.r()).map(|g| g == id.diagonal).unwrap_or(false),
            );
            report.check("r monic", id.r().is_monic());
        }
    }
    Ok(report)
}

fn load_functions(report: &mut Report, path: &Path) -> Outcome<Vec<(String, FinFunction)>> {
    let input = load(report, path)?;
    parse_functions(&input.text).map_err(|e| located(&input.name, e))
}

fn named<'a>(fs: &'a [(String, FinFunction)], name: &str) -> Outcome<&'a FinFunction> {
    fs.iter()
        .find(|(n, _)| n == name)
        .map(|(_, f)| f)
        .ok_or_else(|| format!("no function named `{name}`"))
}

fn pullback(path: &Path, f_name: &str, h_name: &str) -> Outcome<Report> {
    let mut report = Report::new("pullback");
    let fs = load_functions(&mut report, path)?;
    let (f, h) = (named(&fs, f_name)?, named(&fs, h_name)?);
    let cone = selected_pullback(f, h).map_err(|e| e.to_string())?;
    report.value("apex", &cone.apex);
    report.value("leg", cone.leg.encode());
    report.value("top", cone.top.encode());
    for (i, (a, c)) in cone.pairs.iter().enumerate() {
        report.line(format!("#{i} = ({a}, {c})"));
    }
    let commutes = f.after(&cone.leg).ok() == h.after(&cone.top).ok();
    report.check("square commutes", commutes);
    Ok(report)
}

fn dependent(path: &Path, k_name: &str, f_name: &str, verb: &str) -> Outcome<Report> {
    let mut report = Report::new(verb);
    let fs = load_functions(&mut report, path)?;
    let (k, f) = (named(&fs, k_name)?, named(&fs, f_name)?);
    let result = if verb == "sigma" {
        sigma_dependent(k, f)
    } else {
        pi_dependent(k, f)
    }
    .map_err(|e| e.to_string())?;
    report.value("result", result.encode());
    let sizes: Vec<String> = result.fiber_sizes().iter().map(|s| s.to_string()).collect();
    report.value("fiber sizes", sizes.join(","));
    let expected: Vec<usize> = f
        .codomain()
        .members()
        .iter()
        .map(|b| {
            let fiber = f.fiber(b);
            if verb == "sigma" {
                fiber.members().iter().map(|a| k.fiber_size(a)).sum()
            } else {
                fiber.members().iter().map(|a| k.fiber_size(a)).product()
            }
        })
        .collect();
    report.check("fiber sizes", result.fiber_sizes() == expected);
    report.check("canonical", crate::hfcore::canonical_over_base(&result) == result);
    Ok(report)
}

fn wtype(path: &Path, depth: usize) -> Outcome<Report> {
    let mut report = Report::new("wtype");
    let input = load(&mut report, path)?;
    let sig = parse_signature(&input.text).map_err(|e| located(&input.name, e))?;
    report.value("operators", sig.len());
    report.value("depth", depth);
    let terms = enumerate_wterms(&sig, depth);
    let iterates = poly_iterate(&sig, depth);
    let sizes: Vec<String> = iterates.sizes().iter().map(|s| s.to_string()).collect();
    report.value("iterate sizes", sizes.join(","));
    report.value("terms", terms.len());
    for t in &terms {
        report.line(t.display(&sig).to_string());
    }
    let konig = konig_report(&sig, depth);
    for l in konig.to_string().lines() {
        report.line(l);
    }
    let codes: BTreeSet<&HfSet> = terms.iter().map(|t| t.code()).collect();
    let last = iterates.stages.last().expect("stage 0 always exists");
    report.check(
        "terms match iterate",
        codes.len() == last.len() && last.members().iter().all(|m| codes.contains(m)),
    );
    report.check(
        "sequence round trip",
        terms.iter().all(|t| seq_decode(&sig, &seq_encode(t)).as_ref() == Ok(t)),
    );
    report.check("finite heights", konig.within_bounds);
    Ok(report)
}

fn parse_bindings(bind: &[String]) -> Outcome<Env> {
    let mut env = Env::new();
    for b in bind {
        let (name, lit) = b
            .split_once('=')
            .ok_or_else(|| format!("--bind {b}: expected name=literal"))?;
        let value = parse_literal(lit).map_err(|e| located(&format!("--bind {name}"), e))?;
        env.insert(name.trim().to_string(), value);
    }
    Ok(env)
}

fn hf_eval(formula: &str, bind: &[String], select: Option<&str>, from: Option<&str>) -> Outcome<Report> {
    let mut report = Report::new("hf-eval");
    report.input("formula", formula.as_bytes());
    let phi = parse_formula(formula).map_err(|e| located("formula", e))?;
    let env = parse_bindings(bind)?;
    for (name, value) in &env {
        report.line(format!("bind {name} = {value}"));
    }
    match (select, from) {
        (Some(var), Some(set)) => {
            let s = parse_literal(set).map_err(|e| located("--from", e))?;
            let result = separation(&s, var, &phi, &env).map_err(|e| e.to_string())?;
            report.value("result", &result);
            report.value("size", result.len());
            report.check("subset", result.is_subset(&s));
        }
        _ => {
            let value = eval_bounded(&phi, &env).map_err(|e| e.to_string())?;
            report.value("value", value);
        }
    }
    Ok(report)
}

fn quotient(set: &str, relation: &str) -> Outcome<Report> {
    let mut report = Report::new("quotient");
    report.input("set", set.as_bytes());
    report.input("relation", relation.as_bytes());
    let a = parse_literal(set).map_err(|e| located("set", e))?;
    let phi = parse_formula(relation).map_err(|e| located("relation", e))?;
    let eval_error = std::cell::RefCell::new(None);
    let related = |x: &HfSet, y: &HfSet| {
        let env: Env = [("x".to_string(), x.clone()), ("y".to_string(), y.clone())]
            .into_iter()
            .collect();
        eval_bounded(&phi, &env).unwrap_or_else(|e| {
            eval_error.borrow_mut().get_or_insert(e);
            false
        })
    };
    let result = quotient_min(&a, related);
    if let Some(e) = eval_error.into_inner() {
        return Err(located("relation", e));
    }
    match result {
        Err(Error::NotEquivalence { property, witness }) => {
            report.value("equivalence", format!("not {property}"));
            report.line(format!("witness: {witness}"));
            report.check("equivalence", false);
        }
        Err(e) => return Err(e.to_string()),
        Ok(reps) => {
            report.value("classes", reps.len());
            let listed: Vec<String> = reps.members().iter().map(|r| r.to_string()).collect();
            report.value("representatives", listed.join(" "));
            let minimal = reps.members().iter().all(|r| {
                let env = |x: &HfSet| -> Env {
                    [("x".to_string(), r.clone()), ("y".to_string(), x.clone())]
                        .into_iter()
                        .collect()
                };
                a.members()
                    .iter()
                    .filter(|x| eval_bounded(&phi, &env(x)).unwrap_or(false))
                    .all(|x| hf_compare(r, x).is_le())
            });
            report.check("equivalence", true);
            report.check("classwise minimal", minimal);
        }
    }
    Ok(report)
}
