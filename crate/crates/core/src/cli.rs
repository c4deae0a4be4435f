//! The `schubert` command line.
//!
//! Exit status: 0 on success, 1 for a failed computation, 2 for usage and
//! input errors, 3 when a resource limit refuses the job.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cache::{TableCache, ENV_VAR};
use crate::cartan::{CartanMatrix, GroupName};
use crate::characteristics::{structure_matrix, ProductCalculator};
use crate::classes::{resolve_atom, ClassAtom, Monomial};
use crate::error::{Error, Result};
use crate::oracle::{crosscheck, grassmannian_shape, lr_coefficient, Partition};
use crate::presentation::{
    big_json, find_generators, find_relations, polynomial_terms_json, schubert_polynomials_with, GeneratorSet,
    Projection,
};
use crate::weyl::{enumerate_cosets_with_limits, CosetIndex, CosetTable, Limits};

#[derive(Debug, Parser)]
#[command(name = "schubert", version, about = "Exact integer Schubert calculus on flag manifolds G/P")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
struct GroupArgs {
    /// Builtin group: A<n>, B<n>, C<n>, D<n>, E6, E7, E8, F4 or G2
    #[arg(long, required_unless_present = "cartan_file", conflicts_with = "cartan_file")]
    group: Option<String>,

    /// JSON file {"rank": n, "entries": [[..], ..]} with a Cartan matrix
    #[arg(long)]
    cartan_file: Option<PathBuf>,

    /// Parabolic subset K as comma-separated node numbers, e.g. 4 or 1,2,3,4
    #[arg(long = "k", value_delimiter = ',', required = true, num_args = 1..)]
    k: Vec<usize>,

    /// Only enumerate cosets up to this length
    #[arg(long)]
    max_len: Option<usize>,

    /// Refuse tables with more cosets than this
    #[arg(long, default_value_t = 10_000_000)]
    max_cosets: usize,

    /// Directory for cached coset tables
    #[arg(long, env = ENV_VAR)]
    cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Args)]
struct GeneratorArgs {
    /// Generator classes for y<d> names and presentations, e.g.
    /// "[2] [5,4,2] [6,5,4,2] [1,3,6,5,4,2]"; chosen automatically if absent
    #[arg(long)]
    generators: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the minimal coset representatives with their minimized words
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Characteristic c^w of a monomial in Schubert classes
    Char {
        #[command(flatten)]
        group: GroupArgs,
        /// Target class w: `top` or a class such as (8,2) or [3,4]
        #[arg(long, default_value = "top")]
        w: String,
        /// Monomial such as "c1^3 c2^2", "y1^21" or "[4]x5"
        #[arg(long, required_unless_present_any = ["batch", "structure_matrix"])]
        classes: Option<String>,
        /// Read one monomial per line from stdin
        #[arg(long)]
        batch: bool,
        /// Print the structure matrix of w instead of a characteristic
        #[arg(long)]
        structure_matrix: bool,
        #[command(flatten)]
        gens: GeneratorArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Schubert expansion of s_u * s_v
    Multiply {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[command(flatten)]
        gens: GeneratorArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generators and relations of H*(G/P) up to a degree
    Present {
        #[command(flatten)]
        group: GroupArgs,
        /// Degree bound; defaults to the dimension of G/P
        #[arg(long)]
        max_deg: Option<usize>,
        #[command(flatten)]
        gens: GeneratorArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Schubert polynomials of all classes of one degree
    Schubpoly {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        deg: usize,
        #[command(flatten)]
        gens: GeneratorArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Type-A checks by Littlewood-Richardson tableaux
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Littlewood-Richardson coefficient c^nu_{lam,mu}
    Lr {
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare every product on a Grassmannian with the LR rule
    Crosscheck {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Parse(_) | Error::InvalidSeriesRank { .. } | Error::EmptyK => 2,
        _ => 1,
    }
}

/// Runs the command line with explicit streams; returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut warn = |w: String| {
        let _ = writeln!(err, "warning: {w}");
    };
    let result = execute(cli, stdin, out, &mut warn);
    match result {
        Ok(code) => code,
        // a reader such as `head` went away; not an error of ours
        Err(Error::Io { path, .. }) if path.as_os_str() == CLOSED_STDOUT => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

struct Job {
    label: String,
    table: CosetTable,
}

const CLOSED_STDOUT: &str = "<stdout, closed>";

fn io_err(e: std::io::Error) -> Error {
    let path = if e.kind() == std::io::ErrorKind::BrokenPipe { CLOSED_STDOUT } else { "<stdout>" };
    Error::Io { path: PathBuf::from(path), message: e.to_string() }
}

fn load_group(g: &GroupArgs, warn: &mut dyn FnMut(String)) -> Result<Job> {
    let (cartan, label) = match (&g.group, &g.cartan_file) {
        (Some(name), _) => {
            let name: GroupName = name.parse()?;
            (CartanMatrix::from_name(name)?, name.to_string())
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Io { path: path.clone(), message: e.to_string() })?;
            let c: CartanMatrix = serde_json::from_str(&text).map_err(|e| Error::NotCartan(e.to_string()))?;
            let label = c.builtin_name().map(|n| n.to_string()).unwrap_or_else(|| "custom".into());
            (c, label)
        }
        (None, None) => return Err(Error::Parse("one of --group or --cartan-file is required".into())),
    };
    let limits = Limits { max_cosets: g.max_cosets };
    let table = match &g.cache_dir {
        Some(dir) => TableCache::new(dir).get_or_compute(&cartan, &g.k, g.max_len, limits, warn)?,
        None => enumerate_cosets_with_limits(&cartan, &g.k, g.max_len, limits)?,
    };
    Ok(Job { label, table })
}

fn generator_set(table: &CosetTable, spec: &Option<String>, degree: usize) -> Result<GeneratorSet> {
    match spec {
        Some(text) => {
            let m = Monomial::parse(text)?;
            let mut idx = vec![];
            for f in &m.factors {
                if matches!(f.atom, ClassAtom::Generator { .. }) {
                    return Err(Error::Parse("generators must be given as classes, not y<d> names".into()));
                }
                idx.push(resolve_atom(&f.atom, table, None)?);
            }
            GeneratorSet::new(table, &idx)
        }
        None => find_generators(table, degree.min(table.top_length())),
    }
}

fn class_json(table: &CosetTable, idx: CosetIndex) -> Value {
    json!({"m": idx.m, "i": idx.i, "word": table.word(idx).map(|w| w.0.clone()).unwrap_or_default()})
}

fn resolve_single(text: &str, table: &CosetTable, gens: Option<&GeneratorSet>) -> Result<CosetIndex> {
    let m = Monomial::parse(text)?;
    match m.factors.as_slice() {
        [f] if f.power == 1 => resolve_atom(&f.atom, table, gens),
        _ => Err(Error::Parse(format!("{text:?} must name a single class"))),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', ' ']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_json(out: &mut dyn Write, v: &Value, compact: bool) -> Result<()> {
    let s = if compact { serde_json::to_string(v) } else { serde_json::to_string_pretty(v) };
    writeln!(out, "{}", s.expect("values serialize")).map_err(io_err)
}

fn execute(cli: Cli, stdin: &mut dyn BufRead, out: &mut dyn Write, warn: &mut dyn FnMut(String)) -> Result<i32> {
    match cli.command {
        Command::Decompose { group, output } => {
            let job = load_group(&group, warn)?;
            decompose(&job, output.format, out)?;
        }
        Command::Char { group, w, classes, batch, structure_matrix: show_matrix, gens, output } => {
            let job = load_group(&group, warn)?;
            let t = &job.table;
            let target = if w == "top" { t.top_element()?.0 } else { resolve_single(&w, t, None)? };
            if show_matrix {
                let a = structure_matrix(t.cartan(), t.word(target)?.letters())?;
                match output.format {
                    Format::Json => emit_json(out, &json!({"schema": "structure-matrix/1", "w": class_json(t, target), "entries": a.entries()}), false)?,
                    _ => {
                        for row in a.entries() {
                            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                            let sep = if output.format == Format::Csv { "," } else { " " };
                            writeln!(out, "{}", cells.join(sep)).map_err(io_err)?;
                        }
                    }
                }
                return Ok(0);
            }
            let queries: Vec<String> = if batch {
                stdin
                    .lines()
                    .map(|l| l.map_err(|e| Error::Io { path: PathBuf::from("<stdin>"), message: e.to_string() }))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                    .collect()
            } else {
                vec![classes.clone().unwrap_or_default()]
            };
            if output.format == Format::Csv {
                writeln!(out, "classes,value").map_err(io_err)?;
            }
            if !batch {
                let m = Monomial::parse(&queries[0])?;
                let gs = match m.max_generator_degree() {
                    0 => None,
                    d => Some(generator_set(t, &gens.generators, d)?),
                };
                let factors = m.resolve(t, gs.as_ref())?;
                let value = ProductCalculator::new(t).characteristic(target, &factors)?;
                write_char(out, output.format, &job, target, &m, &factors, &value, false)?;
                return Ok(0);
            }
            // batch: a failing line is reported in place and the rest still run
            let parsed: Vec<Result<Monomial>> = queries.iter().map(|q| Monomial::parse(q)).collect();
            let degree = parsed.iter().flatten().map(|m| m.max_generator_degree()).max().unwrap_or(0);
            let gs = if degree > 0 { Some(generator_set(t, &gens.generators, degree)?) } else { None };
            let mut calc = ProductCalculator::new(t);
            let mut status = 0;
            for (q, m) in queries.iter().zip(parsed) {
                let result = m.and_then(|m| {
                    let factors = m.resolve(t, gs.as_ref())?;
                    let value = calc.characteristic(target, &factors)?;
                    Ok((m, factors, value))
                });
                match result {
                    Ok((m, factors, value)) => write_char(out, output.format, &job, target, &m, &factors, &value, true)?,
                    Err(e @ Error::ResourceLimit(_)) => return Err(e),
                    Err(e) => {
                        status = status.max(exit_code(&e));
                        write_char_error(out, output.format, q.trim(), &e)?;
                    }
                }
            }
            return Ok(status);
        }
        Command::Multiply { group, u, v, gens, output } => {
            let job = load_group(&group, warn)?;
            let t = &job.table;
            let wanted = [Monomial::parse(&u)?, Monomial::parse(&v)?];
            let degree = wanted.iter().map(|m| m.max_generator_degree()).max().unwrap_or(0);
            let gs = if degree > 0 { Some(generator_set(t, &gens.generators, degree)?) } else { None };
            let ui = resolve_single(&u, t, gs.as_ref())?;
            let vi = resolve_single(&v, t, gs.as_ref())?;
            let e = ProductCalculator::new(t).multiply(ui, vi)?;
            match output.format {
                Format::Json => {
                    let terms: Vec<Value> = e
                        .terms
                        .iter()
                        .map(|(w, c)| {
                            let mut o = class_json(t, *w);
                            o["coef"] = big_json(c);
                            o
                        })
                        .collect();
                    emit_json(
                        out,
                        &json!({"schema": "expansion/1", "group": job.label, "K": t.k(), "u": class_json(t, ui), "v": class_json(t, vi), "terms": terms}),
                        false,
                    )?;
                }
                Format::Text => {
                    if e.is_empty() {
                        writeln!(out, "0").map_err(io_err)?;
                    }
                    for (w, c) in &e.terms {
                        writeln!(out, "{w} {} : {c}", t.word(*w)?).map_err(io_err)?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "m,i,word,coef").map_err(io_err)?;
                    for (w, c) in &e.terms {
                        writeln!(out, "{},{},{},{c}", w.m, w.i, csv_field(&t.word(*w)?.to_string())).map_err(io_err)?;
                    }
                }
            }
        }
        Command::Present { group, max_deg, gens, output } => {
            let job = load_group(&group, warn)?;
            let t = &job.table;
            let bound = max_deg.unwrap_or(t.top_length());
            let gs = generator_set(t, &gens.generators, bound)?;
            let p = find_relations(t, &gs, bound)?;
            match output.format {
                Format::Json => emit_json(out, &p.to_json(t, &job.label), false)?,
                Format::Text => {
                    let names = gs.names();
                    for (g, name) in gs.iter().zip(&names) {
                        writeln!(out, "{name} = s{} {}", g.index, t.word(g.index)?).map_err(io_err)?;
                    }
                    for r in &p.relations {
                        writeln!(out, "r{}: {} = 0", r.degree, r.polynomial.display_with(&names)).map_err(io_err)?;
                    }
                    writeln!(out, "bound: {}", p.bound).map_err(io_err)?;
                }
                Format::Csv => {
                    let names = gs.names();
                    writeln!(out, "kind,degree,name_or_polynomial").map_err(io_err)?;
                    for (g, name) in gs.iter().zip(&names) {
                        writeln!(out, "generator,{},{}", g.degree, csv_field(name)).map_err(io_err)?;
                    }
                    for r in &p.relations {
                        writeln!(out, "relation,{},{}", r.degree, csv_field(&r.polynomial.display_with(&names))).map_err(io_err)?;
                    }
                }
            }
        }
        Command::Schubpoly { group, deg, gens, output } => {
            let job = load_group(&group, warn)?;
            let t = &job.table;
            let gs = generator_set(t, &gens.generators, deg)?;
            let mut proj = Projection::new(t, &gs);
            let polys = schubert_polynomials_with(&mut proj, deg)?;
            let names = gs.names();
            match output.format {
                Format::Json => {
                    let items: Vec<Value> = polys
                        .iter()
                        .map(|s| {
                            let mut o = class_json(t, s.class);
                            o["polynomial"] = json!(s.polynomial.display_with(&names));
                            o["terms"] = json!(polynomial_terms_json(&s.polynomial));
                            o
                        })
                        .collect();
                    let g: Vec<Value> = gs
                        .iter()
                        .zip(&names)
                        .map(|(g, n)| {
                            let mut o = class_json(t, g.index);
                            o["name"] = json!(n);
                            o
                        })
                        .collect();
                    emit_json(
                        out,
                        &json!({"schema": "schubert-polynomials/1", "group": job.label, "K": t.k(), "degree": deg, "generators": g, "polynomials": items}),
                        false,
                    )?;
                }
                Format::Text => {
                    for s in &polys {
                        writeln!(out, "s{} = {}", s.class, s.polynomial.display_with(&names)).map_err(io_err)?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "m,i,polynomial").map_err(io_err)?;
                    for s in &polys {
                        writeln!(out, "{},{},{}", s.class.m, s.class.i, csv_field(&s.polynomial.display_with(&names))).map_err(io_err)?;
                    }
                }
            }
        }
        Command::Oracle { command: OracleCommand::Lr { lam, mu, nu, output } } => {
            let (l, m, n): (Partition, Partition, Partition) = (lam.parse()?, mu.parse()?, nu.parse()?);
            let c = lr_coefficient(&l, &m, &n)?;
            match output.format {
                Format::Json => emit_json(out, &json!({"schema": "lr/1", "lam": l.parts(), "mu": m.parts(), "nu": n.parts(), "value": c}), false)?,
                Format::Text => writeln!(out, "{c}").map_err(io_err)?,
                Format::Csv => writeln!(out, "lam,mu,nu,value\n{},{},{},{c}", csv_field(&l.to_string()), csv_field(&m.to_string()), csv_field(&n.to_string())).map_err(io_err)?,
            }
        }
        Command::Oracle { command: OracleCommand::Crosscheck { group, output } } => {
            let job = load_group(&group, warn)?;
            let (n, k) = grassmannian_shape(&job.table)?;
            let r = crosscheck(&job.table)?;
            match output.format {
                Format::Json => emit_json(
                    out,
                    &json!({
                        "schema": "crosscheck/1", "n": n, "k": k, "triples": r.triples, "pieri_checks": r.pieri_checks,
                        "mismatches": r.mismatches.iter().map(|m| m.to_string()).collect::<Vec<_>>(), "negatives": r.negatives,
                        "passed": r.passed(),
                    }),
                    false,
                )?,
                _ => {
                    writeln!(out, "G({n},{k}): {} triples, {} Pieri checks, {} mismatches", r.triples, r.pieri_checks, r.mismatches.len()).map_err(io_err)?;
                    if let Some(m) = r.mismatches.first() {
                        writeln!(out, "first mismatch: {m}").map_err(io_err)?;
                    }
                }
            }
            if !r.passed() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn decompose(job: &Job, format: Format, out: &mut dyn Write) -> Result<()> {
    let t = &job.table;
    match format {
        Format::Json => {
            let mut v = t.to_json(&job.label);
            v["max_length"] = json!(t.max_length_bound());
            emit_json(out, &v, false)
        }
        Format::Text => {
            let betti: Vec<String> = t.betti().iter().map(|b| b.to_string()).collect();
            writeln!(out, "# {} K={:?} cosets={} complete={}", job.label, t.k(), t.len(), t.is_complete()).map_err(io_err)?;
            writeln!(out, "# betti {}", betti.join(" ")).map_err(io_err)?;
            for (idx, e) in t.iter() {
                if idx.m == 0 {
                    continue;
                }
                writeln!(out, "w_{{{},{}}} = {}", idx.m, idx.i, e.word()).map_err(io_err)?;
            }
            Ok(())
        }
        Format::Csv => {
            writeln!(out, "m,i,word").map_err(io_err)?;
            for (idx, e) in t.iter() {
                writeln!(out, "{},{},{}", idx.m, idx.i, csv_field(&e.word().to_string())).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn write_char_error(out: &mut dyn Write, format: Format, query: &str, e: &Error) -> Result<()> {
    match format {
        Format::Text => writeln!(out, "{query} = error: {e}").map_err(io_err),
        Format::Csv => writeln!(out, "{},{}", csv_field(query), csv_field(&format!("error: {e}"))).map_err(io_err),
        Format::Json => emit_json(out, &json!({"schema": "characteristic/1", "classes": query, "error": e.to_string()}), true),
    }
}

fn write_char(
    out: &mut dyn Write,
    format: Format,
    job: &Job,
    w: CosetIndex,
    m: &Monomial,
    factors: &[CosetIndex],
    value: &BigInt,
    compact: bool,
) -> Result<()> {
    let t = &job.table;
    match format {
        Format::Text => writeln!(out, "{m} = {value}").map_err(io_err),
        Format::Csv => writeln!(out, "{},{value}", csv_field(&m.to_string())).map_err(io_err),
        Format::Json => emit_json(
            out,
            &json!({
                "schema": "characteristic/1",
                "group": job.label,
                "K": t.k(),
                "w": class_json(t, w),
                "classes": m.to_string(),
                "factors": factors.iter().map(|&f| class_json(t, f)).collect::<Vec<_>>(),
                "value": big_json(value),
            }),
            compact,
        ),
    }
}
