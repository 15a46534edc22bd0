//! Command-line surface: family specs in, classifications, quotients,
//! limits, and measures out, in text, JSON, or CSV.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use salemforge_core::graph::{build, char_poly, FamilySpec, Graph};
use salemforge_core::mahler::{classify_small_measure, graph_mahler, SearchBounds, Threshold};
use salemforge_core::pisot::{
    bertin_family, convergence_report, fig_smallpisot_left, fig_smallpisot_right,
    pisot_graph_quotient, pisot_limit, BertinDirection, GrowthSpec, PisotGraph,
};
use salemforge_core::ratfunc::RatFunc;
use salemforge_core::realalg::{format_rational_sig, RealAlgebraic};
use salemforge_core::rooted::{
    build_recipe, decompose_salem_tree, nu, parse_entry, quotient, salem_tree_type_a,
    salem_tree_type_b, table_row, verify_catalogue, Decomposition, RootedTree,
};
use salemforge_core::salem::{classify, reciprocal_poly, SalemClassification};

#[derive(Parser)]
#[command(name = "salemforge", version, about = "Salem graphs, rooted-tree quotients, Pisot limits, and graph Mahler measures")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Target precision for real outputs, e.g. 1e-12 (also via
    /// SALEMFORGE_PRECISION).
    #[arg(long, global = true)]
    precision: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial of a graph.
    Charpoly(GraphArg),
    /// Reciprocal polynomial z^n χ(z + 1/z) (or its bipartite half).
    Reciprocal(GraphArg),
    /// Classify a graph: cyclotomic, Salem (trivial or not), or neither.
    Classify(GraphArg),
    /// Quotient of a rooted catalogue tree as a reduced rational function.
    Quotient { entry: String },
    /// ν-value (quotient at z = 1) of a rooted catalogue tree.
    Nu { entry: String },
    /// Build a family graph and print it.
    Build(GraphArg),
    /// Join rooted trees to a new center vertex and classify.
    SalemA {
        #[arg(required = true)]
        entries: Vec<String>,
    },
    /// Join two rooted trees by an edge between their roots and classify.
    SalemB { left: String, right: String },
    /// Find a center or central edge certifying a Salem tree's structure.
    Decompose { recipe: String },
    /// Pisot limit of a growth family (built-in figure name or --spec file).
    PisotLimit(SpecArg),
    /// Quotient of a colored tree at a root vertex.
    PisotQuotient {
        figure: String,
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// The k-parameterized colored-tree family and its limit.
    Bertin {
        k: usize,
        #[arg(long, value_enum, default_value_t = Direction::Below)]
        direction: Direction,
        #[arg(long)]
        extra_white: bool,
    },
    /// τ-convergence table for a growth family.
    Convergence {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 6)]
        from: usize,
        #[arg(long, default_value_t = 16)]
        to: usize,
    },
    /// Mahler measure of a graph by the eigenvalue product.
    Mahler(GraphArg),
    /// Enumerate trees (and small graphs) with measure below a threshold.
    Search {
        #[arg(long, default_value_t = 13)]
        max_arm: usize,
        #[arg(long, default_value_t = 40)]
        max_vertices: usize,
        /// `rho` for the golden ratio, or a decimal cutoff.
        #[arg(long, default_value = "rho")]
        threshold: String,
        #[arg(long)]
        precision: Option<String>,
    },
    /// Reproduce a recipe-table row: τ, its minimal polynomial, and the
    /// decomposition certificate.
    Table { recipe: String },
    /// Check every catalogue entry against its printed quotient and ν.
    VerifyCatalogue {
        #[arg(long, default_value_t = 30)]
        max_n: usize,
    },
}

#[derive(Args)]
struct GraphArg {
    /// Family spec like T(1,2,6), Q(3,13,3), E8, ~D7, P12, C9 — or a path
    /// to a graph file.
    graph: String,
}

#[derive(Args)]
struct SpecArg {
    /// Built-in figure name: fig-smallpisot-left or fig-smallpisot-right.
    name: Option<String>,
    /// Path to a growth-spec JSON file.
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Direction {
    Below,
    Above,
}

enum CliError {
    Usage(String),
    Domain(String),
}

type CliResult = Result<(), CliError>;

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn domain<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = match resolve_precision(cli.precision.as_deref()) {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let out = Output {
        format: cli.format,
        sig: sig_digits(&precision),
        precision,
    };
    match run(cli.command, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    match e {
        CliError::Usage(msg) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        CliError::Domain(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

struct Output {
    format: Format,
    precision: BigRational,
    sig: usize,
}

fn run(cmd: Command, out: &Output) -> CliResult {
    match cmd {
        Command::Charpoly(arg) => {
            let (name, g) = resolve_graph(&arg.graph)?;
            let chi = char_poly(&g);
            emit_poly(out, &name, "char_poly", &chi)
        }
        Command::Reciprocal(arg) => {
            let (name, g) = resolve_graph(&arg.graph)?;
            let r = reciprocal_poly(&g);
            emit_poly(out, &name, "reciprocal", &r)
        }
        Command::Classify(arg) => {
            let (name, g) = resolve_graph(&arg.graph)?;
            let cls = classify(&g);
            emit_classification(out, &name, &g, &cls)
        }
        Command::Quotient { entry } => {
            let t = parse_entry(&entry).map_err(usage)?.tree;
            emit_quotient(out, &entry, &quotient(&t))
        }
        Command::Nu { entry } => {
            let t = parse_entry(&entry).map_err(usage)?.tree;
            let v = nu(&t);
            match out.format {
                Format::Text => println!("{v}"),
                Format::Json => emit_json(json!({ "entry": entry, "nu": v.to_string() })),
                Format::Csv => {
                    println!("entry,nu");
                    println!("{},{}", csv_field(&entry), csv_field(&v.to_string()));
                }
            }
            Ok(())
        }
        Command::Build(arg) => {
            let (name, g) = resolve_graph(&arg.graph)?;
            match out.format {
                Format::Text => print!("{}", g.to_text()),
                Format::Json => {
                    emit_json(json!({ "spec": name, "graph": serde_json::to_value(&g).unwrap() }))
                }
                Format::Csv => {
                    println!("spec,n,edges");
                    let edges: Vec<String> =
                        g.edges().iter().map(|&(i, j)| format!("{i}-{j}")).collect();
                    println!("{},{},{}", csv_field(&name), g.n(), csv_field(&edges.join(" ")));
                }
            }
            Ok(())
        }
        Command::SalemA { entries } => {
            let trees = parse_trees(&entries)?;
            let (tree, cls) = salem_tree_type_a(&trees).map_err(domain)?;
            let name = format!("type-a[{}]", entries.join(","));
            emit_classification(out, &name, tree.graph(), &cls)
        }
        Command::SalemB { left, right } => {
            let l = parse_entry(&left).map_err(usage)?.tree;
            let r = parse_entry(&right).map_err(usage)?.tree;
            let (tree, cls) = salem_tree_type_b(&l, &r).map_err(domain)?;
            let name = format!("type-b[{left},{right}]");
            emit_classification(out, &name, tree.graph(), &cls)
        }
        Command::Decompose { recipe } => {
            let t = build_recipe(&recipe).map_err(usage)?;
            let d = decompose_salem_tree(t.graph()).map_err(domain)?;
            emit_decomposition(out, &recipe, &d)
        }
        Command::PisotLimit(spec) => {
            let (name, gs) = resolve_growth_spec(&spec)?;
            let limit = pisot_limit(&gs).map_err(domain)?;
            let theta = format_algebraic(&limit.theta, out);
            match out.format {
                Format::Text => {
                    println!("minpoly: {}", limit.minpoly.to_pretty());
                    println!("leading: {}", limit.leading.to_pretty());
                    println!("theta: {theta}");
                }
                Format::Json => emit_json(json!({
                    "spec": name,
                    "minpoly": serde_json::to_value(&limit.minpoly).unwrap(),
                    "leading": serde_json::to_value(&limit.leading).unwrap(),
                    "theta": theta,
                    "precision": out.sig,
                })),
                Format::Csv => {
                    println!("spec,minpoly,leading,theta");
                    println!(
                        "{},{},{},{theta}",
                        csv_field(&name),
                        csv_field(&limit.minpoly.to_string()),
                        csv_field(&limit.leading.to_string())
                    );
                }
            }
            Ok(())
        }
        Command::PisotQuotient { figure, root } => {
            let pg = resolve_figure(&figure)?;
            let q = pisot_graph_quotient(&pg, root).map_err(domain)?;
            emit_quotient(out, &format!("{figure}@{root}"), &q)
        }
        Command::Bertin { k, direction, extra_white } => {
            if k == 0 {
                return Err(CliError::Usage("k must be at least 1".into()));
            }
            let dir = match direction {
                Direction::Below => BertinDirection::Below,
                Direction::Above => BertinDirection::Above,
            };
            let fam = bertin_family(k, dir, extra_white);
            let q = pisot_graph_quotient(&fam.pisot_graph, fam.center).map_err(domain)?;
            let limit = pisot_limit(&fam.pisot_graph.growth_spec()).map_err(domain)?;
            let theta = format_algebraic(&limit.theta, out);
            match out.format {
                Format::Text => {
                    println!("family: k = {k}, {}", direction_name(direction));
                    println!("quotient: ({}) / ({})", q.num().to_pretty(), q.den().to_pretty());
                    println!("theta: {theta}");
                    println!("theta minpoly: {}", limit.minpoly.to_pretty());
                    if fam.inferred {
                        println!("note: subtree shapes reconstructed from stated quotients");
                    }
                }
                Format::Json => emit_json(json!({
                    "k": k,
                    "direction": direction_name(direction),
                    "extra_white": extra_white,
                    "inferred": fam.inferred,
                    "quotient": { "num": serde_json::to_value(q.num()).unwrap(),
                                  "den": serde_json::to_value(q.den()).unwrap() },
                    "theta": theta,
                    "theta_minpoly": serde_json::to_value(&limit.minpoly).unwrap(),
                    "precision": out.sig,
                })),
                Format::Csv => {
                    println!("k,direction,extra_white,inferred,quotient_num,quotient_den,theta");
                    println!(
                        "{k},{},{extra_white},{},{},{},{theta}",
                        direction_name(direction),
                        fam.inferred,
                        csv_field(&q.num().to_string()),
                        csv_field(&q.den().to_string())
                    );
                }
            }
            Ok(())
        }
        Command::Convergence { spec, from, to } => {
            if from < 1 || to < from {
                return Err(CliError::Usage(format!("bad length range {from}..{to}")));
            }
            let (name, gs) = resolve_growth_spec(&spec)?;
            let report = convergence_report(&gs, from..=to).map_err(domain)?;
            let theta = format_algebraic(&report.theta, out);
            let rows: Vec<(Vec<usize>, String, String)> = report
                .rows
                .iter()
                .map(|r| {
                    let mut tau = r.tau.clone();
                    (
                        r.lengths.clone(),
                        format_algebraic_owned(&mut tau, out),
                        format_rational_sig(&r.gap, out.sig),
                    )
                })
                .collect();
            match out.format {
                Format::Text => {
                    println!("theta: {theta}  ({})", report.minpoly.to_pretty());
                    for (lengths, tau, gap) in &rows {
                        let ls: Vec<String> = lengths.iter().map(usize::to_string).collect();
                        println!("m = {:>3}: tau = {tau}  gap = {gap}", ls.join(","));
                    }
                }
                Format::Json => emit_json(json!({
                    "spec": name,
                    "theta": theta,
                    "minpoly": serde_json::to_value(&report.minpoly).unwrap(),
                    "monotone": report.monotone,
                    "rows": rows.iter().map(|(l, t, g)| json!({
                        "lengths": l, "tau": t, "gap": g,
                    })).collect::<Vec<_>>(),
                    "precision": out.sig,
                })),
                Format::Csv => {
                    let arity = rows.first().map_or(0, |(l, _, _)| l.len());
                    let mut header: Vec<String> =
                        (1..=arity).map(|i| format!("len{i}")).collect();
                    header.push("tau".into());
                    header.push("gap".into());
                    println!("{}", header.join(","));
                    for (lengths, tau, gap) in &rows {
                        let mut cells: Vec<String> =
                            lengths.iter().map(usize::to_string).collect();
                        cells.push(tau.clone());
                        cells.push(gap.clone());
                        println!("{}", cells.join(","));
                    }
                }
            }
            Ok(())
        }
        Command::Mahler(arg) => {
            let (name, g) = resolve_graph(&arg.graph)?;
            let r = graph_mahler(&g, &out.precision);
            let measure = r.measure.to_decimal(out.sig);
            match out.format {
                Format::Text => {
                    println!("measure: {measure}");
                    println!("eigs > 2: {}", r.eigs_gt_2);
                    println!("salem: {}", r.salem_tag());
                    if let Some(p) = &r.minpoly {
                        println!("minpoly: {}", p.to_pretty());
                    }
                }
                Format::Json => emit_json(json!({
                    "spec": name,
                    "measure": measure,
                    "eigs_gt_2": r.eigs_gt_2,
                    "salem": r.is_salem,
                    "minpoly": r.minpoly.as_ref().map(|p| serde_json::to_value(p).unwrap()),
                    "precision": out.sig,
                })),
                Format::Csv => {
                    println!("spec,measure,eigs_gt_2,salem,minpoly");
                    println!(
                        "{},{measure},{},{},{}",
                        csv_field(&name),
                        r.eigs_gt_2,
                        r.is_salem,
                        csv_field(&r.minpoly.as_ref().map_or(String::new(), |p| p.to_string()))
                    );
                }
            }
            Ok(())
        }
        Command::Search { max_arm, max_vertices, threshold, precision } => {
            let threshold = parse_threshold(&threshold)?;
            let sig = match precision.as_deref() {
                Some(p) => sig_digits(&parse_positive_decimal(p)?),
                None => out.sig,
            };
            let results = classify_small_measure(
                &SearchBounds::new(max_arm, max_vertices),
                &threshold,
            );
            match out.format {
                Format::Text => {
                    for r in &results {
                        println!(
                            "{}  M = {}  eigs>2 = {}  {}",
                            r.id,
                            r.measure.to_decimal(sig),
                            r.eigs_gt_2,
                            r.salem_tag()
                        );
                    }
                    println!("total: {}", results.len());
                }
                Format::Json => emit_json(json!({
                    "results": results.iter().map(|r| json!({
                        "spec": r.id,
                        "measure": r.measure.to_decimal(sig),
                        "eigs_gt_2": r.eigs_gt_2,
                        "salem": r.is_salem,
                        "minpoly": r.minpoly.as_ref().map(|p| serde_json::to_value(p).unwrap()),
                    })).collect::<Vec<_>>(),
                    "precision": sig,
                })),
                Format::Csv => {
                    println!("spec,measure,eigs_gt_2,salem,minpoly");
                    for r in &results {
                        println!(
                            "{},{},{},{},{}",
                            csv_field(&r.id),
                            r.measure.to_decimal(sig),
                            r.eigs_gt_2,
                            r.is_salem,
                            csv_field(&r.minpoly.as_ref().map_or(String::new(), |p| p.to_string()))
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Table { recipe } => {
            let (tree, cls) = table_row(&recipe).map_err(usage)?;
            if !cls.is_salem() {
                return Err(CliError::Domain(format!(
                    "{recipe} does not classify as a Salem tree"
                )));
            }
            let d = decompose_salem_tree(tree.graph()).map_err(domain)?;
            let (tau, minpoly) = salem_parts(&cls, out);
            match out.format {
                Format::Text => {
                    println!("tau: {tau}");
                    println!("minpoly: {}", minpoly.to_pretty());
                    println!("decomposition: {}", decomposition_text(&d));
                }
                Format::Json => emit_json(json!({
                    "recipe": recipe,
                    "tau": tau,
                    "minpoly": serde_json::to_value(&minpoly).unwrap(),
                    "decomposition": decomposition_json(&d),
                    "precision": out.sig,
                })),
                Format::Csv => {
                    println!("recipe,tau,minpoly,decomposition");
                    println!(
                        "{},{tau},{},{}",
                        csv_field(&recipe),
                        csv_field(&minpoly.to_string()),
                        csv_field(&decomposition_text(&d))
                    );
                }
            }
            Ok(())
        }
        Command::VerifyCatalogue { max_n } => {
            let report = verify_catalogue(max_n);
            match out.format {
                Format::Text => {
                    println!("checked: {}", report.checked);
                    for m in &report.mismatches {
                        println!("mismatch: {m:?}");
                    }
                    for (a, b) in &report.equal_quotient_pairs {
                        println!("equal quotients: {a} = {b}");
                    }
                    println!(
                        "result: {}",
                        if report.mismatches.is_empty() { "ok" } else { "MISMATCH" }
                    );
                }
                Format::Json => emit_json(json!({
                    "checked": report.checked,
                    "mismatches": report.mismatches.iter().map(|m| format!("{m:?}")).collect::<Vec<_>>(),
                    "equal_quotient_pairs": report.equal_quotient_pairs,
                })),
                Format::Csv => {
                    println!("checked,mismatches,equal_quotient_pairs");
                    let pairs: Vec<String> = report
                        .equal_quotient_pairs
                        .iter()
                        .map(|(a, b)| format!("{a}={b}"))
                        .collect();
                    println!(
                        "{},{},{}",
                        report.checked,
                        report.mismatches.len(),
                        csv_field(&pairs.join(" "))
                    );
                }
            }
            if report.mismatches.is_empty() {
                Ok(())
            } else {
                Err(CliError::Domain("catalogue mismatches found".into()))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Argument resolution
// ---------------------------------------------------------------------------

/// A family-spec string, or a path to a graph file as the escape hatch.
fn resolve_graph(arg: &str) -> Result<(String, Graph), CliError> {
    match FamilySpec::parse(arg) {
        Ok(spec) => {
            let g = build(spec).map_err(domain)?;
            Ok((arg.to_string(), g))
        }
        Err(spec_err) => {
            if Path::new(arg).is_file() {
                let text = fs::read_to_string(arg)
                    .map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?;
                let g = Graph::parse_text(&text).map_err(domain)?;
                Ok((arg.to_string(), g))
            } else {
                Err(CliError::Usage(format!(
                    "{arg}: not a family spec ({spec_err}) and not a file"
                )))
            }
        }
    }
}

fn parse_trees(entries: &[String]) -> Result<Vec<RootedTree>, CliError> {
    entries
        .iter()
        .map(|e| Ok(parse_entry(e).map_err(usage)?.tree))
        .collect()
}

fn resolve_figure(name: &str) -> Result<PisotGraph, CliError> {
    match name {
        "fig-smallpisot-left" => Ok(fig_smallpisot_left()),
        "fig-smallpisot-right" => Ok(fig_smallpisot_right()),
        other => Err(CliError::Usage(format!(
            "unknown figure {other}; expected fig-smallpisot-left or fig-smallpisot-right"
        ))),
    }
}

fn resolve_growth_spec(spec: &SpecArg) -> Result<(String, GrowthSpec), CliError> {
    match (&spec.name, &spec.spec) {
        (Some(name), None) => Ok((name.clone(), resolve_figure(name)?.growth_spec())),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            Ok((path.clone(), GrowthSpec::from_json(&text).map_err(domain)?))
        }
        _ => Err(CliError::Usage(
            "give exactly one of a figure name or --spec <file>".into(),
        )),
    }
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Below => "below",
        Direction::Above => "above",
    }
}

fn parse_threshold(s: &str) -> Result<Threshold, CliError> {
    if s.eq_ignore_ascii_case("rho") {
        Ok(Threshold::Rho)
    } else {
        Ok(Threshold::Value(parse_positive_decimal(s)?))
    }
}

// ---------------------------------------------------------------------------
// Precision
// ---------------------------------------------------------------------------

fn resolve_precision(flag: Option<&str>) -> Result<BigRational, CliError> {
    if let Some(s) = flag {
        return parse_positive_decimal(s);
    }
    if let Ok(s) = std::env::var("SALEMFORGE_PRECISION") {
        if !s.is_empty() {
            return parse_positive_decimal(&s);
        }
    }
    Ok(BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12)))
}

/// Parses decimal notation with an optional exponent, e.g. `1e-12`,
/// `0.0005`, `2.5E-9`.
fn parse_positive_decimal(s: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("{s}: expected a positive decimal like 1e-12"));
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if shift >= 0 {
        BigRational::from_integer(numer * ten.pow(shift as u32))
    } else {
        BigRational::new(numer, ten.pow(-shift as u32))
    };
    if value.is_zero() || value.is_negative() {
        return Err(bad());
    }
    Ok(value)
}

/// Significant digits implied by a precision like 1e-12.
fn sig_digits(precision: &BigRational) -> usize {
    let mut p = BigRational::one();
    let ten = BigRational::from_integer(BigInt::from(10u32));
    let mut k = 0;
    while p > *precision && k < 40 {
        p /= &ten;
        k += 1;
    }
    k.max(3)
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

fn emit_json(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_poly(out: &Output, name: &str, what: &str, p: &salemforge_core::poly::IntPoly) -> CliResult {
    match out.format {
        Format::Text => println!("{}", p.to_pretty()),
        Format::Json => emit_json(json!({
            "spec": name,
            what: serde_json::to_value(p).unwrap(),
            "pretty": p.to_pretty(),
        })),
        Format::Csv => {
            println!("spec,{what}");
            println!("{},{}", csv_field(name), csv_field(&p.to_string()));
        }
    }
    Ok(())
}

fn emit_quotient(out: &Output, name: &str, q: &RatFunc) -> CliResult {
    match out.format {
        Format::Text => println!("({}) / ({})", q.num().to_pretty(), q.den().to_pretty()),
        Format::Json => emit_json(json!({
            "entry": name,
            "num": serde_json::to_value(q.num()).unwrap(),
            "den": serde_json::to_value(q.den()).unwrap(),
            "pretty": format!("({}) / ({})", q.num().to_pretty(), q.den().to_pretty()),
        })),
        Format::Csv => {
            println!("entry,num,den");
            println!(
                "{},{},{}",
                csv_field(name),
                csv_field(&q.num().to_string()),
                csv_field(&q.den().to_string())
            );
        }
    }
    Ok(())
}

fn emit_classification(
    out: &Output,
    name: &str,
    g: &Graph,
    cls: &SalemClassification,
) -> CliResult {
    match out.format {
        Format::Text => {
            println!("graph: {name}  (n = {})", g.n());
            println!("tag: {}", cls.tag());
            match cls {
                SalemClassification::SalemTrivial { tau, quadratic } => {
                    println!("tau: {}", format_algebraic(tau, out));
                    println!("minpoly: {}", quadratic.to_pretty());
                }
                SalemClassification::SalemNontrivial { tau, minpoly, reciprocal } => {
                    println!("tau: {}", format_algebraic(tau, out));
                    println!("minpoly: {}", minpoly.to_pretty());
                    println!("reciprocal: {reciprocal}");
                }
                SalemClassification::NotSalem { eigs_above_2, eigs_below_minus_2, bipartite } => {
                    println!(
                        "eigs above 2: {eigs_above_2}, below -2: {eigs_below_minus_2}, bipartite: {bipartite}"
                    );
                }
                SalemClassification::Cyclotomic => {}
            }
        }
        Format::Json => emit_json(cls.to_json(g, out.sig)),
        Format::Csv => {
            println!("graph,n,tag,tau,minpoly");
            let (tau, minpoly) = match cls {
                SalemClassification::SalemTrivial { .. }
                | SalemClassification::SalemNontrivial { .. } => {
                    let (t, p) = salem_parts(cls, out);
                    (t, p.to_string())
                }
                _ => (String::new(), String::new()),
            };
            println!(
                "{},{},{},{tau},{}",
                csv_field(name),
                g.n(),
                cls.tag(),
                csv_field(&minpoly)
            );
        }
    }
    Ok(())
}

/// τ printed at the output precision plus its minimal polynomial.
fn salem_parts(cls: &SalemClassification, out: &Output) -> (String, salemforge_core::poly::IntPoly) {
    match cls {
        SalemClassification::SalemTrivial { tau, quadratic } => {
            (format_algebraic(tau, out), quadratic.clone())
        }
        SalemClassification::SalemNontrivial { tau, minpoly, .. } => {
            (format_algebraic(tau, out), minpoly.clone())
        }
        _ => unreachable!("caller checked is_salem"),
    }
}

fn format_algebraic(x: &RealAlgebraic, out: &Output) -> String {
    let mut copy = x.clone();
    format_algebraic_owned(&mut copy, out)
}

fn format_algebraic_owned(x: &mut RealAlgebraic, out: &Output) -> String {
    let extra = &out.precision / BigRational::from_integer(BigInt::from(100u32));
    x.refine_to(&extra);
    x.to_decimal(out.sig)
}

fn emit_decomposition(out: &Output, recipe: &str, d: &Decomposition) -> CliResult {
    match out.format {
        Format::Text => println!("{}", decomposition_text(d)),
        Format::Json => emit_json(json!({
            "recipe": recipe,
            "decomposition": decomposition_json(d),
        })),
        Format::Csv => {
            println!("recipe,kind,where");
            let (kind, place) = match d {
                Decomposition::TypeA { center } => ("type-a", center.to_string()),
                Decomposition::TypeB { edge } => ("type-b", format!("{}-{}", edge.0, edge.1)),
            };
            println!("{},{kind},{place}", csv_field(recipe));
        }
    }
    Ok(())
}

fn decomposition_text(d: &Decomposition) -> String {
    match d {
        Decomposition::TypeA { center } => {
            format!("type (a): deleting vertex {center} leaves only cyclotomic components")
        }
        Decomposition::TypeB { edge } => {
            format!("type (b): join across the edge {}-{}", edge.0, edge.1)
        }
    }
}

fn decomposition_json(d: &Decomposition) -> serde_json::Value {
    match d {
        Decomposition::TypeA { center } => json!({ "kind": "type-a", "center": center }),
        Decomposition::TypeB { edge } => json!({ "kind": "type-b", "edge": [edge.0, edge.1] }),
    }
}
