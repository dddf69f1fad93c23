use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use zakfiber_core::frame::{gabor_frame_check, riesz_check, translate_frame_check, FrameReport};
use zakfiber_core::instances::{example, ExampleParams};
use zakfiber_core::io::{self, ArrayDump, FamilyFile, FunctionFile, Pair, RepFile, SubgroupSpec, SCHEMA};
use zakfiber_core::linalg::{max_abs_diff, norm_sqr, C64, CMat};
use zakfiber_core::rep::{
    bracket, embed_as_translation, isometry_t, orthogonal_generators, orthonormal_by_bracket, orthonormal_direct,
    rep_frame_check, rep_riesz_check,
};
use zakfiber_core::verify::{self, Scope};
use zakfiber_core::zak::ZakContext;
use zakfiber_core::{Error, FiniteGroup, GroupSpec, Result};

#[derive(Parser)]
#[command(name = "zakfiber", version, about = "Zak transforms, fiberization and frame criteria on finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zak transform (and fiberization when G is abelian) of one function.
    Zak {
        #[command(flatten)]
        input: Input,
        /// Function file.
        #[arg(long)]
        function: PathBuf,
    },
    /// Frame or Riesz bounds of a translate or Gabor family, direct and fiberwise.
    Frames {
        #[command(flatten)]
        input: Input,
        /// Family file.
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum, default_value = "translate")]
        mode: Mode,
    },
    /// Write finite analogues of the classical Zak settings.
    Examples {
        #[arg(value_parser = zakfiber_core::instances::EXAMPLE_NAMES)]
        name: String,
        #[arg(long = "N", default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Ambient rank for lattice and plane.
        #[arg(long = "n", default_value_t = 2)]
        dims: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        j: u32,
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        family_size: usize,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Bracket analysis of a unitary representation of a finite abelian group.
    Rep {
        /// Representation file.
        #[arg(long)]
        rep: PathBuf,
        /// Also embed the representation into a translation representation.
        #[arg(long)]
        embed: bool,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Args)]
struct Input {
    /// Group spec as JSON; overrides the group stored in the input file.
    #[arg(long)]
    group: Option<String>,
    /// Comma-separated generator indices of H.
    #[arg(long)]
    subgroup: Option<String>,
    /// Haar weight of H.
    #[arg(long)]
    subgroup_weight: Option<f64>,
    /// `minimal` or `random:SEED`.
    #[arg(long, default_value = "minimal")]
    transversal: String,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Translate,
    Riesz,
    Gabor,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Transversal {
    Minimal,
    Random(u64),
}

fn parse_transversal(s: &str) -> Result<Transversal> {
    if s == "minimal" {
        return Ok(Transversal::Minimal);
    }
    s.strip_prefix("random:")
        .and_then(|seed| seed.parse().ok())
        .map(Transversal::Random)
        .ok_or_else(|| Error::InvalidParameter(format!("transversal must be minimal or random:SEED, got {s:?}")))
}

fn parse_generators(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Error::InvalidParameter(format!("bad generator {t:?}"))))
        .collect()
}

impl Input {
    fn group(&self, stored: &GroupSpec) -> Result<Arc<FiniteGroup>> {
        let spec = match &self.group {
            Some(text) => serde_json::from_str::<GroupSpec>(text).map_err(|e| Error::Schema(format!("--group: {e}")))?,
            None => stored.clone(),
        };
        Ok(Arc::new(spec.build()?))
    }

    fn context(&self, stored_group: &GroupSpec, stored_sub: Option<&SubgroupSpec>) -> Result<Arc<ZakContext>> {
        let group = self.group(stored_group)?;
        let spec = match (&self.subgroup, stored_sub) {
            (Some(gens), _) => SubgroupSpec {
                generators: parse_generators(gens)?,
                weight: self.subgroup_weight.unwrap_or(1.0),
            },
            (None, Some(s)) => SubgroupSpec {
                generators: s.generators.clone(),
                weight: self.subgroup_weight.unwrap_or(s.weight),
            },
            (None, None) => return Err(Error::InvalidParameter("no subgroup given".into())),
        };
        let sub = spec.build(&group)?;
        match parse_transversal(&self.transversal)? {
            Transversal::Minimal => ZakContext::minimal(group, sub),
            Transversal::Random(seed) => ZakContext::randomized(group, sub, seed),
        }
    }
}

#[derive(Serialize)]
struct ZakSummary {
    norm_error: f64,
    round_trip_error: f64,
    intertwining_residual: f64,
    fiber_norm_error: Option<f64>,
    zak_fiber_link_residual: Option<f64>,
}

#[derive(Serialize)]
struct ZakReport {
    schema: &'static str,
    group: String,
    subgroup: Vec<usize>,
    transversal: Vec<usize>,
    zak: ArrayDump,
    fiberization: Option<ArrayDump>,
    summary: ZakSummary,
}

fn cmd_zak(input: &Input, function: &Path) -> Result<String> {
    let file: FunctionFile = io::read_json(function)?;
    let ctx = input.context(&file.group, None)?;
    let f = io::function_values(&file, ctx.group())?;
    let w = ctx.group().weight();
    let nf = norm_sqr(&f, w).sqrt();
    let z = ctx.zak(&f)?;
    let back = ctx.zak_inverse(&z)?;
    let peak = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut intertwining: f64 = 0.0;
    for &xi in ctx.subgroup().members() {
        let k = ctx.view().local(xi).expect("member of H");
        let moved = ctx.zak(&ctx.translate(&f, xi)?)?;
        let expect = CMat::from_fn(z.values().nrows(), z.values().ncols(), |a, c| ctx.dual().chi(a, k).conj() * z.values()[(a, c)]);
        intertwining = intertwining.max((moved.values() - expect).camax());
    }
    let rel = |x: f64| if nf > 0.0 { (x - nf).abs() / nf } else { x };
    let (fiberization, fiber_norm_error, link) = if ctx.abelian().is_some() {
        let t = ctx.fiberize(&f)?;
        let link = (ctx.zak_to_fiber(&z)?.values() - t.values()).camax();
        (Some(ArrayDump::fiber(&t)), Some(rel(t.norm_sqr().sqrt())), Some(link))
    } else {
        (None, None, None)
    };
    let report = ZakReport {
        schema: SCHEMA,
        group: ctx.group().label().to_string(),
        subgroup: ctx.subgroup().members().to_vec(),
        transversal: ctx.cosets().transversal().to_vec(),
        zak: ArrayDump::zak(&z),
        fiberization,
        summary: ZakSummary {
            norm_error: rel(z.norm_sqr().sqrt()),
            round_trip_error: if peak > 0.0 { max_abs_diff(&back, &f) / peak } else { max_abs_diff(&back, &f) },
            intertwining_residual: intertwining,
            fiber_norm_error,
            zak_fiber_link_residual: link,
        },
    };
    match input.format {
        Format::Json => io::to_json(&report),
        Format::Csv => {
            let mut out = String::from("alpha,coset,re,im\n");
            for (a, row) in report.zak.values.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    writeln!(out, "{a},{c},{:e},{:e}", v[0], v[1]).expect("string write");
                }
            }
            Ok(out)
        }
    }
}

fn cmd_frames(input: &Input, family: &Path, mode: Mode) -> Result<String> {
    let file: FamilyFile = io::read_json(family)?;
    let ctx = input.context(&file.group, file.subgroup.as_ref())?;
    let fam = file.family();
    for f in &fam {
        if f.len() != ctx.group().order() {
            return Err(Error::DimensionMismatch { expected: ctx.group().order(), found: f.len() });
        }
    }
    let report: FrameReport = match mode {
        Mode::Translate => translate_frame_check(&ctx, &fam)?,
        Mode::Riesz => riesz_check(&ctx, &fam)?,
        Mode::Gabor => gabor_frame_check(&ctx, &fam)?.0,
    };
    match input.format {
        Format::Json => io::to_json(&report),
        Format::Csv => Ok(report.per_fiber_csv()),
    }
}

fn cmd_examples(name: &str, params: &ExampleParams, out: &Path) -> Result<String> {
    std::fs::create_dir_all(out)?;
    let mut listing = String::new();
    for (stem, file) in example(name, params)? {
        let path = out.join(format!("{stem}.json"));
        std::fs::write(&path, io::to_json(&file)?)?;
        writeln!(listing, "{}", path.display()).expect("string write");
    }
    Ok(listing)
}

#[derive(Serialize)]
struct GeneratorReport {
    thetas: Vec<Vec<Pair>>,
    cross_bracket_residual: f64,
    dimension_defect: usize,
}

#[derive(Serialize)]
struct EmbedReport {
    ambient_order: usize,
    intertwining_residual: f64,
    isometry_residual: f64,
    invariant: bool,
}

#[derive(Serialize)]
struct RepReport {
    schema: &'static str,
    group: String,
    dim: usize,
    /// `bracket_table[i][j][α] = [φ_i, φ_j](α)`.
    bracket_table: Vec<Vec<Vec<Pair>>>,
    generators: GeneratorReport,
    t_isometry_residual: f64,
    t_intertwining_residual: f64,
    frame: FrameReport,
    riesz: Option<FrameReport>,
    orthonormal_by_bracket: bool,
    orthonormal_direct: bool,
    embedding: Option<EmbedReport>,
}

fn cmd_rep(path: &Path, embed: bool, format: Format) -> Result<String> {
    let file: RepFile = io::read_json(path)?;
    let rep = file.build()?;
    let d = rep.dim();
    let family: Vec<Vec<C64>> = match file.family() {
        Some(f) => f,
        None => (0..d).map(|k| (0..d).map(|i| C64::new(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()).collect(),
    };
    for f in &family {
        if f.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: f.len() });
        }
    }
    let table = family
        .iter()
        .map(|phi| family.iter().map(|psi| bracket(&rep, phi, psi).map(|b| io::to_pairs(&b))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let gens = orthogonal_generators(&rep)?;
    let (cross, defect) = gens.validity(&rep)?;
    let (mut iso, mut inter): (f64, f64) = (0.0, 0.0);
    for phi in &family {
        let tp = isometry_t(&rep, &gens, phi)?;
        let nt: f64 = tp.iter().map(|v| v.norm_sqr()).sum::<f64>() * rep.dual().weight();
        iso = iso.max((nt - norm_sqr(phi, 1.0)).abs());
        for x in 0..rep.group().order() {
            let moved = isometry_t(&rep, &gens, &rep.apply(x, phi))?;
            let expect = CMat::from_fn(tp.nrows(), tp.ncols(), |a, i| rep.chi(a, x) * tp[(a, i)]);
            inter = inter.max((moved - expect).camax());
        }
    }
    let riesz = if rep.group().weight() == 1.0 { Some(rep_riesz_check(&rep, &gens, &family)?) } else { None };
    let embedding = if embed {
        let e = embed_as_translation(&rep, &gens)?;
        Some(EmbedReport {
            ambient_order: e.context.group().order(),
            intertwining_residual: e.intertwining_residual,
            isometry_residual: e.isometry_residual,
            invariant: e.invariant,
        })
    } else {
        None
    };
    let report = RepReport {
        schema: SCHEMA,
        group: rep.group().label().to_string(),
        dim: d,
        bracket_table: table,
        generators: GeneratorReport {
            thetas: gens.thetas().iter().map(|t| io::to_pairs(t)).collect(),
            cross_bracket_residual: cross,
            dimension_defect: defect,
        },
        t_isometry_residual: iso,
        t_intertwining_residual: inter,
        frame: rep_frame_check(&rep, &gens, &family)?,
        riesz,
        orthonormal_by_bracket: orthonormal_by_bracket(&rep, &family)?,
        orthonormal_direct: orthonormal_direct(&rep, &family)?,
        embedding,
    };
    match format {
        Format::Json => io::to_json(&report),
        Format::Csv => {
            let mut out = String::from("i,j,alpha,re,im\n");
            for (i, row) in report.bracket_table.iter().enumerate() {
                for (j, b) in row.iter().enumerate() {
                    for (a, v) in b.iter().enumerate() {
                        writeln!(out, "{i},{j},{a},{:e},{:e}", v[0], v[1]).expect("string write");
                    }
                }
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    seed: u64,
    passed: bool,
    criteria: Vec<verify::CriterionResult>,
}

fn cmd_verify(scope: &str, seed: u64, format: Format) -> Result<(String, bool)> {
    let scope: Scope = scope.parse()?;
    let results = verify::run(scope, seed)?;
    for r in &results {
        eprintln!("{}", r.line());
        for f in &r.failures {
            eprintln!("    {f}");
        }
    }
    let passed = results.iter().all(|r| r.passed);
    let text = match format {
        Format::Json => io::to_json(&VerifyReport { schema: SCHEMA, seed, passed, criteria: results })?,
        Format::Csv => {
            let mut out = String::from("id,name,passed,instances,worst_ratio\n");
            for r in &results {
                writeln!(out, "{},{},{},{},{:e}", r.id, r.name, r.passed, r.instances, r.worst_ratio).expect("string write");
            }
            out
        }
    };
    Ok((text, passed))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn configure_threads() {
    if let Some(n) = std::env::var("ZAKFIBER_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Zak { input, function } => emit(&cmd_zak(&input, &function)?, input.output.as_deref())?,
        Command::Frames { input, family, mode } => emit(&cmd_frames(&input, &family, mode)?, input.output.as_deref())?,
        Command::Examples { name, n, d, m, dims, p, k, j, q, seed, family_size, out } => {
            let params = ExampleParams { n, d, m, dims, p, k, j, q, seed, family_size };
            print!("{}", cmd_examples(&name, &params, &out)?);
        }
        Command::Rep { rep, embed, output, format } => emit(&cmd_rep(&rep, embed, format)?, output.as_deref())?,
        Command::Verify { scope, seed, output, format } => {
            let (text, passed) = cmd_verify(&scope, seed, format)?;
            emit(&text, output.as_deref())?;
            return Ok(passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_contract() { 3 } else { 2 })
        }
    }
}
