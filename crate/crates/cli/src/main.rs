use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use baumsweet::automata::{self, Dfao};
use baumsweet::fps::Series;
use baumsweet::kernel::{kernel_empirical, kernel_exact, representatives};
use baumsweet::linrep::{self, Guess};
use baumsweet::seq::{self, SeqId};
use baumsweet::verify::{self, Profile};
use baumsweet::words;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "baumsweet",
    version,
    about = "Baum-Sweet type sequences, their formal inverses, and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a prefix of a sequence.
    Gen {
        seqid: String,
        #[arg(short = 'n', default_value_t = 32)]
        n: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Print coefficients 0..N of the formal inverse of a series.
    Invert {
        /// C, D, C_r:<r>, D_r:<r> or thue_morse
        #[arg(long)]
        series: String,
        #[arg(short = 'n', default_value_t = 32)]
        n: usize,
    },
    /// Emit one of the fixture automata.
    Automaton(AutomatonArgs),
    /// Print kernel classes, exact for an automaton and prefix-based for a sequence.
    Kernel {
        target: String,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value_t = 256)]
        bound: usize,
    },
    /// Guess a 2-regular linear representation of a sequence.
    Linrep {
        seqid: String,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        /// Prefix length used for guessing.
        #[arg(long, default_value_t = 4096)]
        len: usize,
    },
    /// Run a word identity, or `freq <family> -n N` for a frequency estimate.
    Words {
        target: String,
        family: Option<String>,
        #[arg(short = 'n', default_value_t = 20)]
        n: usize,
    },
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AutomatonArgs {
    /// fig1, fig2, fig3 or fig4:<r>
    name: String,
    #[arg(long, conflicts_with = "json")]
    dot: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    rebase: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "quick")]
    profile: String,
    #[arg(long = "check")]
    checks: Vec<String>,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Override a bound, as key=value.
    #[arg(long = "set")]
    sets: Vec<String>,
}

enum Failure {
    Usage(String),
    Unmet,
    Io(String),
}

type Run = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn io(e: impl std::fmt::Display) -> Failure {
    Failure::Io(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Gen { seqid, n, csv } => gen(&seqid, n, csv),
        Command::Invert { series, n } => invert(&series, n),
        Command::Automaton(a) => automaton(a),
        Command::Kernel {
            target,
            depth,
            bound,
        } => kernel(&target, depth, bound),
        Command::Linrep {
            seqid,
            max_dim,
            len,
        } => linrep_cmd(&seqid, max_dim, len),
        Command::Words { target, family, n } => words_cmd(&target, family.as_deref(), n),
        Command::Verify(v) => verify_cmd(v),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Unmet) => ExitCode::from(1),
    }
}

fn gen(seqid: &str, n: usize, csv: bool) -> Run {
    let id: SeqId = seqid.parse().map_err(usage)?;
    let prefix = seq::generate(id, n).map_err(usage)?;
    if csv {
        print!("{}", prefix.to_csv());
    } else {
        println!("{}", prefix.to_line());
    }
    Ok(())
}

fn parse_r(spec: &str, r: &str) -> Result<u32, Failure> {
    let r: u32 = r
        .parse()
        .map_err(|_| usage(format!("bad parameter in {spec:?}")))?;
    seq::check_r(r).map_err(usage)?;
    Ok(r)
}

fn invert(spec: &str, n: usize) -> Run {
    let series: Series = match spec.split_once(':') {
        None => match spec {
            "C" => seq::c_series_r(2, n),
            "D" => seq::d_series_r(2, n),
            "thue_morse" => seq::thue_morse_series(n),
            _ => return Err(usage(format!("unknown series {spec:?}"))),
        },
        Some(("C_r", r)) => seq::c_series_r(parse_r(spec, r)?, n),
        Some(("D_r", r)) => seq::d_series_r(parse_r(spec, r)?, n),
        Some(_) => return Err(usage(format!("unknown series {spec:?}"))),
    };
    let inv = series.reversion().map_err(usage)?;
    let bits = inv.bits().expect("series over F_2");
    let parts: Vec<String> = bits.iter().map(u8::to_string).collect();
    println!("{}", parts.join(" "));
    Ok(())
}

fn automaton(a: AutomatonArgs) -> Run {
    let mut dfao = automata::fixture(&a.name).map_err(usage)?;
    if let Some(m) = a.rebase {
        dfao = dfao.rebase(m).map_err(usage)?;
    }
    let text = if a.json {
        let mut s = serde_json::to_string_pretty(&dfao.to_json()).map_err(io)?;
        s.push('\n');
        s
    } else {
        dfao.to_dot()
    };
    match a.out {
        Some(path) => fs::write(&path, text).map_err(io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn kernel(target: &str, depth: u32, bound: usize) -> Run {
    if let Ok(dfao) = automata::fixture(target) {
        return kernel_of_automaton(target, &dfao);
    }
    let id: SeqId = target.parse().map_err(usage)?;
    let len = 2usize
        .checked_pow(depth)
        .and_then(|k| k.checked_mul(bound))
        .ok_or_else(|| usage("depth and bound too large"))?;
    let prefix = seq::generate(id, len).map_err(usage)?;
    let emp = kernel_empirical(&prefix.values, 2, depth, bound).map_err(usage)?;
    println!(
        "{id}: {} classes at depth {depth}, bound {bound} (prefix heuristic)",
        emp.classes
    );
    for e in representatives(&emp.elements) {
        println!("class {}: i={} j={}", e.class, e.i, e.j);
    }
    Ok(())
}

fn kernel_of_automaton(name: &str, dfao: &Dfao) -> Run {
    let elems = kernel_exact(dfao).map_err(usage)?;
    println!(
        "{name}: {} kernel elements (exact, base {})",
        elems.len(),
        dfao.base()
    );
    for e in elems {
        println!("class {}: i={} j={}", e.class, e.i, e.j);
    }
    Ok(())
}

fn linrep_cmd(seqid: &str, max_dim: usize, len: usize) -> Run {
    let id: SeqId = seqid.parse().map_err(usage)?;
    let len = len.max(linrep::min_guess_len(2, max_dim));
    let prefix = seq::generate(id, len).map_err(usage)?;
    match linrep::linrep_guess(&prefix.values, 2, max_dim).map_err(usage)? {
        Guess::Found(rep) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&rep.to_json()).map_err(io)?
            );
        }
        Guess::Failed { rank_profile } => {
            println!("no representation of dimension <= {max_dim} from {len} terms");
            println!("rank profile {rank_profile:?} (evidence only)");
        }
    }
    Ok(())
}

fn words_cmd(target: &str, family: Option<&str>, n: usize) -> Run {
    if target == "freq" {
        let family = family.ok_or_else(|| usage("words freq needs a family"))?;
        let est = words::frequency_estimate(family, n).map_err(usage)?;
        println!("{est}");
        return Ok(());
    }
    if family.is_some() {
        return Err(usage(format!("unexpected argument after {target:?}")));
    }
    let o = words::check_word_identity(target).map_err(usage)?;
    let verdict = if o.holds { "holds" } else { "fails" };
    match o.first_mismatch {
        Some(i) => println!("{target}: {verdict} (first mismatch at {i}): {}", o.detail),
        None => println!("{target}: {verdict}: {}", o.detail),
    }
    if o.holds {
        Ok(())
    } else {
        Err(Failure::Unmet)
    }
}

fn verify_cmd(v: VerifyArgs) -> Run {
    let profile: Profile = v.profile.parse().map_err(usage)?;
    let mut overrides = Vec::new();
    for s in &v.sets {
        let (k, val) = s
            .split_once('=')
            .ok_or_else(|| usage(format!("--set expects key=value, got {s:?}")))?;
        let val: u64 = val
            .parse()
            .map_err(|_| usage(format!("bad value in {s:?}")))?;
        overrides.push((k.to_string(), val));
    }
    let report = verify::run_selected(profile, &v.checks, &overrides, v.jobs).map_err(usage)?;
    print!("{}", report.to_table());
    if let Some(path) = v.json {
        let mut s = report.to_json();
        s.push('\n');
        fs::write(&path, s).map_err(io)?;
    }
    if report.all_met() {
        Ok(())
    } else {
        Err(Failure::Unmet)
    }
}
