use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, ValueEnum};

use involution::bench::{gen_benchmark, Benchmark};
use involution::buchberger::buchberger_reduced_gb;
use involution::engine::{involutive_basis_v1, involutive_basis_v2, involutivity_witness, Completion};
use involution::hilbert::{hilbert_table, HilbertInput};
use involution::input::{format_polynomial, parse_system, ProblemFile};
use involution::{Criteria, Division, EngineConfig, Error, MonomialOrder, OutputKind, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    V1,
    V2,
}

/// Compute involutive and reduced Gröbner bases of polynomial systems.
#[derive(Parser, Debug)]
#[command(name = "invo", version)]
struct Args {
    /// Problem file; `-` reads standard input.
    #[arg(required_unless_present = "bench", conflicts_with = "bench")]
    file: Option<PathBuf>,
    /// Built-in benchmark instead of a file, e.g. cyclic:5 or katsura:4.
    #[arg(long)]
    bench: Option<String>,
    /// lex, deglex or degrevlex; overrides the file header.
    #[arg(long)]
    order: Option<String>,
    /// janet, pommaret or lexinduced; overrides the file header.
    #[arg(long)]
    division: Option<String>,
    /// none, 1, 1,2, 1,2,3 or 1,2,3,4.
    #[arg(long, default_value = "1,2,3,4")]
    criteria: String,
    #[arg(long, value_enum, default_value = "v2")]
    algorithm: Algorithm,
    /// Head reduce only the minimal-degree part of the queue (the default;
    /// lex always uses full head reduction).
    #[arg(long, conflicts_with = "full_head")]
    partial_head: bool,
    /// Head reduce the whole queue before every selection.
    #[arg(long)]
    full_head: bool,
    /// Upper bound on prolongation degrees; 0 disables it. Pommaret
    /// defaults to the sum of input degrees plus the number of variables.
    #[arg(long)]
    degree_bound: Option<u32>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// involutive, groebner or both.
    #[arg(long, default_value = "both")]
    output: String,
    /// Print HF(s) and HP(s) for s = 0..=S.
    #[arg(long, value_name = "S")]
    hilbert: Option<u32>,
    /// Print completion statistics.
    #[arg(long)]
    stats: bool,
    /// Check the result against the Buchberger oracle and the involutivity
    /// certificate.
    #[arg(long)]
    verify: bool,
    /// Write statistics and timings as CSV (phase,counter,value).
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

enum Failure {
    Parse(String),
    Bound(String),
    Verify(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Bound(_) => 3,
            Failure::Verify(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Bound(m) | Failure::Verify(m) | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Parse(e.to_string()),
            Error::BoundExceeded { .. } => Failure::Bound(e.to_string()),
            other => Failure::Other(other.to_string()),
        }
    }
}

struct Timings(Vec<(&'static str, Duration)>);

impl Timings {
    fn time<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0.push((phase, start.elapsed()));
        out
    }
}

fn load(args: &Args) -> Result<ProblemFile, Failure> {
    if let Some(name) = &args.bench {
        let bench: Benchmark = name.parse().map_err(|e: Error| Failure::Parse(e.to_string()))?;
        let order = match &args.order {
            Some(o) => parse_order(o)?,
            None => MonomialOrder::DegRevLex,
        };
        return Ok(gen_benchmark(bench, order)?);
    }
    let path = args.file.as_ref().expect("clap requires a file or --bench");
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Other(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?
    };
    let mut file = parse_system(&text)?;
    if let Some(o) = &args.order {
        let order = parse_order(o)?;
        file.polys = file.polys.iter().map(|p| p.with_order(order)).collect();
        file.order = order;
    }
    Ok(file)
}

fn parse_order(name: &str) -> Result<MonomialOrder, Failure> {
    MonomialOrder::from_name(name).ok_or_else(|| Failure::Parse(format!("unknown order '{name}'")))
}

fn config(args: &Args, file: &ProblemFile) -> Result<EngineConfig, Failure> {
    let division = match &args.division {
        Some(d) => Division::from_name(d).ok_or_else(|| Failure::Parse(format!("unknown division '{d}'")))?,
        None => file.division.unwrap_or(Division::Janet),
    };
    let criteria = Criteria::parse(&args.criteria).map_err(|e| Failure::Parse(e.to_string()))?;
    let output = OutputKind::from_name(&args.output)
        .ok_or_else(|| Failure::Parse(format!("unknown output kind '{}'", args.output)))?;
    let degree_bound = match args.degree_bound {
        Some(b) => b,
        None if !division.is_noetherian() => {
            file.polys.iter().map(Polynomial::total_degree).sum::<u32>() + file.vars.len() as u32
        }
        None => 0,
    };
    let cfg = EngineConfig {
        criteria,
        partial_head_reduction: !args.full_head,
        degree_bound,
        workers: args.workers,
        output,
        ..EngineConfig::new(file.order, division)
    };
    cfg.validate()?;
    Ok(cfg)
}

fn section(out: &mut String, title: &str, polys: &[Polynomial], vars: &[String]) {
    let _ = writeln!(out, "# {title} ({} elements)", polys.len());
    for p in polys {
        let _ = writeln!(out, "{}", format_polynomial(p, vars));
    }
}

fn verify(result: &Completion, input: &[Polynomial], cfg: &EngineConfig) -> Result<usize, Failure> {
    if let Some((i, var)) = involutivity_witness(&result.basis, cfg.order, cfg.division)? {
        return Err(Failure::Verify(format!(
            "basis element {} has a prolongation by x{} with nonzero normal form",
            i + 1,
            var + 1
        )));
    }
    let mut oracle = buchberger_reduced_gb(input, cfg.order)?;
    let mut mine = result.groebner.clone();
    oracle.sort_by(|a, b| cfg.order.cmp(b.lm(), a.lm()));
    mine.sort_by(|a, b| cfg.order.cmp(b.lm(), a.lm()));
    if oracle != mine {
        return Err(Failure::Verify(format!(
            "reduced Gröbner basis differs from the oracle ({} vs {} elements)",
            mine.len(),
            oracle.len()
        )));
    }
    Ok(oracle.len())
}

fn run(args: &Args) -> Result<(), Failure> {
    let mut timings = Timings(Vec::new());
    let file = timings.time("parse", || load(args))?;
    let cfg = config(args, &file)?;
    let result = timings.time("completion", || match args.algorithm {
        Algorithm::V1 => involutive_basis_v1(&file.polys, &cfg),
        Algorithm::V2 => involutive_basis_v2(&file.polys, &cfg),
    })?;

    let mut out = String::new();
    if matches!(cfg.output, OutputKind::Involutive | OutputKind::Both) {
        section(&mut out, &format!("{} basis", cfg.division), &result.basis, &file.vars);
    }
    if matches!(cfg.output, OutputKind::Groebner | OutputKind::Both) {
        section(&mut out, "reduced Gröbner basis", &result.groebner, &file.vars);
    }
    if let Some(smax) = args.hilbert {
        let lms: Vec<_> = result.basis.iter().map(|p| p.lm().clone()).collect();
        let input = HilbertInput::from_leading_monomials(file.vars.len(), &lms, cfg.division)?;
        let table = timings.time("hilbert", || hilbert_table(&input, smax))?;
        let _ = writeln!(out, "# hilbert (s HF HP), stable from s = {}", input.stabilization_degree());
        for (s, hf, hp) in table {
            let _ = writeln!(out, "{s} {hf} {hp}");
        }
    }
    if args.stats {
        let _ = writeln!(out, "# statistics");
        for (name, value) in result.stats.counters() {
            let _ = writeln!(out, "{name} {value}");
        }
        let _ = writeln!(out, "swell_factor {:.2}", result.stats.swell_factor());
    }
    print!("{out}");

    let verified = if args.verify {
        let n = timings.time("verify", || verify(&result, &file.polys, &cfg));
        match n {
            Ok(n) => {
                println!("# verified against the oracle ({n} elements)");
                Some(n)
            }
            Err(e) => {
                report_timings(&timings);
                write_csv(args, &result, &timings, None)?;
                return Err(e);
            }
        }
    } else {
        None
    };
    report_timings(&timings);
    write_csv(args, &result, &timings, verified)
}

fn report_timings(timings: &Timings) {
    let parts: Vec<String> = timings.0.iter().map(|(p, d)| format!("{p} {d:.2?}")).collect();
    eprintln!("time: {}", parts.join(", "));
}

fn write_csv(args: &Args, result: &Completion, timings: &Timings, verified: Option<usize>) -> Result<(), Failure> {
    let Some(path) = &args.csv else { return Ok(()) };
    let mut text = String::from("phase,counter,value\n");
    for (name, value) in result.stats.counters() {
        let _ = writeln!(text, "completion,{name},{value}");
    }
    let _ = writeln!(text, "completion,basis_size,{}", result.basis.len());
    let _ = writeln!(text, "completion,groebner_size,{}", result.groebner.len());
    if let Some(n) = verified {
        let _ = writeln!(text, "verify,oracle_size,{n}");
    }
    for (phase, d) in &timings.0 {
        let _ = writeln!(text, "{phase},wall_us,{}", d.as_micros());
    }
    std::fs::write(path, text).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
