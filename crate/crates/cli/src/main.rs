use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gerstenhaber::bracket::{BarArg, BracketEngine};
use gerstenhaber::cochain::{invariant_basis, is_in_h, is_invariant, proj_h, Cochain};
use gerstenhaber::hecke::{hecke_parameter_space, mu1, pbw_relations, HeckeParam};
use gerstenhaber::io::{load_cochain, load_group};
use gerstenhaber::verify::{self, sample};
use gerstenhaber::{BasisId, BasisTable, Error, Group, Poly, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

mod render;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "gerstenhaber", version, about = "Exact Gerstenhaber brackets for S(V) # G")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for the bracket sums (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    #[arg(long, default_value_t = 0, global = true, value_parser = clap::value_parser!(u8).range(0..=2))]
    verbosity: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, conjugacy classes, kernel and eigenvalues.
    GroupInfo {
        #[arg(long)]
        group: PathBuf,
    },
    /// Basis of (H^p)^G up to polynomial degree d.
    CohomologyBasis {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        poly_degree: u32,
    },
    /// Gerstenhaber bracket of two cocycles.
    Bracket {
        #[arg(long)]
        group: PathBuf,
        /// Two cocycle files.
        #[arg(long, num_args = 2, required = true)]
        cocycle: Vec<PathBuf>,
    },
    /// Square bracket [a, a].
    Square {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Square brackets of invariant degree-2 cocycles.
    PoissonScan {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        poly_degree: u32,
        /// Random combinations to test besides the basis.
        #[arg(long, default_value_t = 4)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graded Hecke parameter space and PBW relations.
    HeckeParams {
        #[arg(long)]
        group: PathBuf,
    },
    /// First multiplication map of the deformation defined by a cocycle.
    Mu1 {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// Algebra element `poly@word`, e.g. `x1^2@g`; the word defaults to 1.
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Randomized consistency suites.
    Verify {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 1)]
        poly_degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

fn emit(format: Format, out: &Output) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
        Format::Text => print!("{}", out.text),
    }
}

fn note(verbosity: u8, level: u8, msg: &str) {
    if verbosity >= level {
        eprintln!("{msg}");
    }
}

fn parse_bar_arg(group: &Group, s: &str) -> Result<BarArg> {
    let (poly, word) = match s.rsplit_once('@') {
        Some((p, w)) => (p, w),
        None => (s, "1"),
    };
    let f = Poly::parse(poly, group.dim(), BasisId::Standard, &['x', 'v'], group.conductor())?;
    Ok(BarArg::new(f, group.parse_word(word)?))
}

/// Load a cocycle, projecting onto `H` with a warning when needed.
fn load_h(group: &Group, path: &PathBuf, verbosity: u8) -> Result<Cochain> {
    let c = load_cochain(group, path)?;
    let table = BasisTable::new();
    if is_in_h(group, &table, &c) {
        return Ok(c);
    }
    eprintln!("warning: {} does not lie in H; using its projection", path.display());
    let p = proj_h(group, &table, &c);
    note(verbosity, 1, &format!("projected cocycle:\n{}", p.display(group)));
    Ok(p)
}

fn bracket_output(group: &Group, engine: &BracketEngine, a: &Cochain, b: &Cochain, verbosity: u8) -> Result<Output> {
    let invariant = is_invariant(group, a) && is_invariant(group, b);
    if !invariant {
        eprintln!("note: inputs are not G-invariant; the result is class-level only");
    }
    if verbosity >= 2 {
        for t in engine.trace(a, b)? {
            if !t.prebracket.is_zero() {
                eprintln!(
                    "[[^{} α_{}, ^{} β_{}]]:\n{}",
                    group.word(t.a),
                    group.word(t.g),
                    group.word(t.b),
                    group.word(t.h),
                    t.prebracket.display(group)
                );
            }
        }
    }
    let r = engine.bracket(a, b)?;
    if verbosity >= 1 {
        for (g, _) in r.components() {
            eprintln!("support {} (class of {})", group.word(g), group.word(group.class_of(g).rep));
        }
    }
    let zero = r.is_zero();
    let json = json!({ "bracket": render::cochain(group, &r)?, "zero": zero, "invariant_inputs": invariant });
    let text = format!("{}\nzero in cohomology: {zero}\n", render::cochain_text(group, &r));
    Ok(Output { json, text, ok: true })
}

fn run(cli: &Cli) -> Result<Output> {
    gerstenhaber::par::set_threads(cli.jobs);
    let v = cli.verbosity;
    match &cli.command {
        Command::GroupInfo { group } => {
            let g = load_group(group)?;
            Ok(Output { json: render::group_info(&g), text: render::group_info_text(&g), ok: true })
        }
        Command::CohomologyBasis { group, degree, poly_degree } => {
            let g = load_group(group)?;
            let basis = invariant_basis(&g, &BasisTable::new(), *degree, *poly_degree)?;
            let items = basis.iter().map(|c| render::cochain(&g, c)).collect::<Result<Vec<_>>>()?;
            let mut text = format!("dim {}\n", basis.len());
            for (k, c) in basis.iter().enumerate() {
                text.push_str(&format!("#{}\n{}\n", k + 1, render::cochain_text(&g, c)));
            }
            Ok(Output { json: json!({ "dim": basis.len(), "basis": items }), text, ok: true })
        }
        Command::Bracket { group, cocycle } => {
            let g = load_group(group)?;
            let a = load_h(&g, &cocycle[0], v)?;
            let b = load_h(&g, &cocycle[1], v)?;
            bracket_output(&g, &BracketEngine::new(&g), &a, &b, v)
        }
        Command::Square { group, cocycle } => {
            let g = load_group(group)?;
            let a = load_h(&g, cocycle, v)?;
            bracket_output(&g, &BracketEngine::new(&g), &a, &a, v)
        }
        Command::PoissonScan { group, poly_degree, samples, seed } => {
            let g = load_group(group)?;
            let basis = invariant_basis(&g, &BasisTable::new(), 2, *poly_degree)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut items: Vec<(String, Cochain)> =
                basis.iter().enumerate().map(|(k, c)| (format!("basis #{}", k + 1), c.clone())).collect();
            for k in 0..*samples {
                if let Some(c) = sample::combination(&g, &basis, 3, &mut rng) {
                    items.push((format!("sample #{}", k + 1), c));
                }
            }
            let engine = BracketEngine::new(&g);
            let mut rows = Vec::new();
            let mut text = format!("{:<12} {:<8} {}\n", "item", "on K", "square zero");
            for (label, c) in &items {
                let on_k = c.support().iter().any(|&x| g.in_kernel(x));
                let sq = engine.square(c)?;
                note(v, 1, &format!("{label}:\n{}", c.display(&g)));
                text.push_str(&format!("{label:<12} {:<8} {}\n", on_k, sq.is_zero()));
                rows.push(json!({ "item": label, "cocycle": render::cochain(&g, c)?, "on_kernel": on_k, "square_zero": sq.is_zero() }));
            }
            Ok(Output { json: json!({ "items": rows }), text, ok: true })
        }
        Command::HeckeParams { group } => {
            let g = load_group(group)?;
            let report = hecke_parameter_space(&g);
            let space = gerstenhaber::hecke::constant_cocycle_space(&g)?;
            let mut text = render::hecke_text(&report);
            let mut rels = Vec::new();
            for (k, c) in space.iter().enumerate() {
                let r = pbw_relations(&g, &HeckeParam::from_cochain(c)?);
                text.push_str(&format!("parameter #{}\n", k + 1));
                for x in &r {
                    text.push_str(&format!("  {}\n", x.text));
                }
                rels.push(serde_json::to_value(&r)?);
            }
            let json = json!({ "classes": serde_json::to_value(&report)?, "dim": space.len(), "relations": rels });
            Ok(Output { json, text, ok: true })
        }
        Command::Mu1 { group, cocycle, left, right } => {
            let g = load_group(group)?;
            let a = load_cochain(&g, cocycle)?;
            let l = parse_bar_arg(&g, left)?;
            let r = parse_bar_arg(&g, right)?;
            let m = mu1(&g, &a, &l, &r)?;
            let shift = m.degree_shift.map(|s| format!("{s}")).unwrap_or_else(|| "n/a".into());
            let text = format!(
                "{}\ndegree shift: {shift}{}\n",
                render::alg_elem_text(&g, &m.value),
                if m.constant { " (constant cocycle: graded Hecke case)" } else { "" }
            );
            let json = json!({
                "value": render::alg_elem(&g, &m.value)?,
                "degree_shift": m.degree_shift,
                "constant": m.constant,
            });
            Ok(Output { json, text, ok: true })
        }
        Command::Verify { group, poly_degree, seed } => {
            let g = load_group(group)?;
            let report = verify::run(&g, *poly_degree, *seed)?;
            let mut text = String::new();
            for s in &report.suites {
                let status = if s.failed == 0 { "ok" } else { "FAIL" };
                text.push_str(&format!("{:<30} {:>4} checked {:>4} failed  {status}\n", s.name, s.checked, s.failed));
            }
            let ok = report.passed();
            Ok(Output { json: json!({ "suites": serde_json::to_value(&report.suites)?, "passed": ok }), text, ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(cli.format, &out);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    e.exit_code() as u8
}
