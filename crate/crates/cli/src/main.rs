use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use shape_forge::enumerate::{
    check_record, enumerate_shapes, verify_completeness, EnumerationConfig, Provenance, VocabularyConfig,
};
use shape_forge::multipoly::slater_basis;
use shape_forge::qseries::{shape_poly, state_count_series, Statistics};
use shape_forge::shiftops::apply_symword;
use shape_forge::Error;
use shape_forge_cli::schema::ShapeSet;
use shape_forge_cli::{dot, report};

#[derive(Parser)]
#[command(name = "shape-forge", version, about = "Shape polynomials and fermion shape enumeration")]
struct Cli {
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,

    /// Worker threads.
    #[arg(long, env = "SHAPE_FORGE_THREADS", global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the shape polynomial.
    Poly {
        #[arg(short = 'N')]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(long, conflicts_with = "boson")]
        fermion: bool,
        #[arg(long)]
        boson: bool,
    },
    /// Enumerate shapes; writes shapes.json, tree.dot and report.txt.
    Gen(GenArgs),
    /// Replay and re-check a shapes.json file.
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = 6000)]
        explicit_limit: usize,
    },
    /// Antisymmetric state counts per grade.
    Count {
        #[arg(short = 'N')]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(short, long = "max-grade")]
        g: usize,
        /// Cross-check against an enumeration of Slater labels.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(short = 'N')]
    n: usize,
    #[arg(short)]
    d: usize,
    #[arg(long, default_value_t = 4)]
    max_letters: usize,
    #[arg(long, default_value_t = 3)]
    max_amount: u32,
    #[arg(long, default_value_t = 4)]
    max_drop: u32,
    /// Output directory.
    #[arg(short, long, default_value = ".")]
    out: PathBuf,
    /// Largest state count at which the explicit module span is built.
    #[arg(long, default_value_t = 6000)]
    explicit_limit: usize,
}

/// Exit statuses other than success.
#[derive(Debug)]
enum Failure {
    Usage(anyhow::Error),
    Incomplete(anyhow::Error),
    Histogram(anyhow::Error),
    Replay(anyhow::Error),
    Other(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Incomplete(_) => 3,
            Failure::Histogram(_) => 4,
            Failure::Replay(_) => 5,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Usage(e) | Failure::Incomplete(e) | Failure::Histogram(e) | Failure::Replay(e) | Failure::Other(e) => e,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            warn!("could not size the thread pool: {e}");
        }
    }
    let result = match cli.command {
        Command::Poly { n, d, fermion: _, boson } => cmd_poly(n, d, boson),
        Command::Gen(args) => cmd_gen(&args),
        Command::Verify { path, explicit_limit } => cmd_verify(&path, explicit_limit),
        Command::Count { n, d, g, oracle } => cmd_count(n, d, g, oracle),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow!(msg.into()))
}

fn cmd_poly(n: usize, d: usize, boson: bool) -> CmdResult {
    if d == 0 {
        return Err(usage("d must be at least 1"));
    }
    let stats = if boson { Statistics::Boson } else { Statistics::Fermion };
    let p = shape_poly(n, d, stats);
    println!("{p}");
    let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    println!("[{}]", coeffs.join(","));
    Ok(())
}

fn cmd_count(n: usize, d: usize, g: usize, oracle: bool) -> CmdResult {
    if d == 0 {
        return Err(usage("d must be at least 1"));
    }
    let series = state_count_series(n, d, g);
    println!("{}", if oracle { "grade states slater" } else { "grade states" });
    let mut mismatch = None;
    for (grade, c) in series.coeffs().iter().enumerate() {
        if oracle {
            let slater = if n == 0 { usize::from(grade == 0) } else { slater_basis(n, d, grade).len() };
            println!("{grade} {c} {slater}");
            if *c != slater.into() && mismatch.is_none() {
                mismatch = Some(grade);
            }
        } else {
            println!("{grade} {c}");
        }
    }
    match mismatch {
        Some(grade) => Err(Failure::Other(anyhow!("state count and Slater enumeration disagree at grade {grade}"))),
        None => Ok(()),
    }
}

fn cmd_gen(args: &GenArgs) -> CmdResult {
    let (n, d) = (args.n, args.d);
    if n == 0 || d == 0 {
        return Err(usage("N and d must be at least 1"));
    }
    if d.is_multiple_of(2) {
        return Err(usage(format!("enumeration needs an odd dimension, got d = {d}")));
    }
    let config = EnumerationConfig {
        vocabulary: VocabularyConfig { max_letters: args.max_letters, max_amount: args.max_amount, max_drop: args.max_drop },
        ..Default::default()
    };
    let mut run = match enumerate_shapes(n, d, &config) {
        Ok(run) => run,
        Err(e @ Error::HistogramMismatch { .. }) => return Err(Failure::Histogram(e.into())),
        Err(e @ Error::EmptyVocabulary) => return Err(Failure::Usage(e.into())),
        Err(e) => return Err(Failure::Other(e.into())),
    };
    info!("{} shapes, checking completeness", run.shapes.len());
    let completeness = verify_completeness(n, d, &run.polys(), args.explicit_limit);
    if let Ok(c) = &completeness {
        run.report.completeness = Some(c.clone());
    }

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let set = ShapeSet::from_enumeration(n, d, &run)?;
    write(args.out.join("shapes.json"), set.to_json()?)?;
    write(args.out.join("tree.dot"), dot::render(&run.shapes, &run.tree))?;
    write(args.out.join("report.txt"), report::render(&run, run.report.completeness.as_ref()))?;
    println!("{} shapes written to {}", run.shapes.len(), args.out.display());

    if !run.report.histogram_matches() {
        return Err(Failure::Histogram(anyhow!("grade histogram differs from the shape polynomial")));
    }
    match completeness {
        Ok(_) => Ok(()),
        Err(e @ Error::Incomplete { .. }) => Err(Failure::Incomplete(e.into())),
        Err(e) => Err(Failure::Other(e.into())),
    }
}

fn write(path: PathBuf, contents: String) -> anyhow::Result<()> {
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

fn cmd_verify(path: &PathBuf, explicit_limit: usize) -> CmdResult {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::Usage)?;
    let replay = |e: anyhow::Error| Failure::Replay(e);
    let set = ShapeSet::from_json(&text).map_err(replay)?;
    let (n, d) = (set.n, set.d);
    if n == 0 || d == 0 || d % 2 == 0 {
        return Err(Failure::Replay(anyhow!("file describes N = {n}, d = {d}")));
    }
    let records = set.records().map_err(replay)?;
    let tree = set.branching_tree().map_err(replay)?;

    let expected = shape_poly(n, d, Statistics::Fermion);
    if records.is_empty() {
        return Err(Failure::Replay(anyhow!("no shapes")));
    }
    for (i, r) in records.iter().enumerate() {
        let bad = |msg: String| Failure::Replay(anyhow!("shape {}: {msg}", r.id));
        if r.id != i {
            return Err(bad(format!("ids must be dense, found {} at position {i}", r.id)));
        }
        if let Some(p) = r.provenance.parent() {
            if p >= i {
                return Err(bad(format!("parent {p} does not precede it")));
            }
        }
        check_record(&records, i).map_err(|f| Failure::Replay(anyhow!("{f}")))?;
        if !r.poly.is_antisymmetric() {
            return Err(bad("not antisymmetric".into()));
        }
        if r.poly.content() != 1.into() || r.poly.leading_term().is_none_or(|(_, c)| *c <= 0.into()) {
            return Err(bad("not in canonical form".into()));
        }
        if set.shape_poly.get(r.grade).copied().unwrap_or(0) == 0 {
            return Err(bad(format!("no shapes belong at grade {}", r.grade)));
        }
    }

    let mut found = vec![0u64; set.shape_poly.len()];
    records.iter().for_each(|r| found[r.grade] += 1);
    let want: Vec<u64> = expected.coeffs().iter().map(|c| u64::try_from(c).unwrap_or(u64::MAX)).collect();
    if set.shape_poly != want || found != want {
        return Err(Failure::Replay(anyhow!("grade histogram {found:?} differs from the shape polynomial {want:?}")));
    }

    if tree.edges.len() + 1 != records.len() {
        return Err(Failure::Replay(anyhow!("{} tree edges for {} shapes", tree.edges.len(), records.len())));
    }
    for r in records.iter().skip(1) {
        let incoming: Vec<_> = tree.edges.iter().filter(|e| e.child == r.id).collect();
        let ok = match (&incoming[..], &r.provenance) {
            ([e], Provenance::Derived { parent, word, .. }) => e.parent == *parent && e.word.as_ref() == Some(word),
            ([e], Provenance::Oracle { .. }) => e.parent == tree.root && e.word.is_none(),
            _ => false,
        };
        if !ok {
            return Err(Failure::Replay(anyhow!("shape {}: tree edge disagrees with provenance", r.id)));
        }
    }
    for x in &tree.extra_edges {
        let (Some(from), Some(to)) = (records.get(x.from), records.get(x.to)) else {
            return Err(Failure::Replay(anyhow!("extra edge {} -> {} names an unknown shape", x.from, x.to)));
        };
        let factor = &x.content * num_bigint::BigInt::from(x.sign);
        if apply_symword(&x.word, &from.poly) != to.poly.scale(&factor) {
            return Err(Failure::Replay(anyhow!("shape {}: extra edge from {} does not replay", x.to, x.from)));
        }
    }

    let polys: Vec<_> = records.iter().map(|r| r.poly.clone()).collect();
    match verify_completeness(n, d, &polys, explicit_limit) {
        Ok(c) => {
            println!("{} shapes verified (quotient rank {})", records.len(), c.quotient_rank);
            Ok(())
        }
        Err(e @ Error::Incomplete { .. }) => Err(Failure::Incomplete(e.into())),
        Err(e) => Err(Failure::Replay(e.into())),
    }
}
