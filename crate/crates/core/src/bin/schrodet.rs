use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use schrodet::asymptotics::shifted_limit;
use schrodet::eulermaclaurin::{EulerMaclaurin, Lemma};
use schrodet::experiments::{
    fit_power_law, kms_check, read_csv, run_sweep, shift_invariance_check, write_records, Check,
    NSet, OutputFormat, Scenario,
};
use schrodet::series::ms_constant;
use schrodet::{
    AsymptoticPrediction, OffDiagonalSign, Phi, PiecewiseFunction, PiecewisePotential,
    Result, SchrodingerMatrix,
};

#[derive(Parser)]
#[command(name = "schrodet", version, about = "Determinants of discrete Schrödinger matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Potential file in the piecewise grammar.
    #[arg(long, short = 'p')]
    potential: Option<PathBuf>,
    /// A single smooth expression in x, on the default domain.
    #[arg(long, short = 'e')]
    expr: Option<String>,
}

impl Source {
    fn text(&self) -> Result<String> {
        match (&self.potential, &self.expr) {
            // Scenario files work too; their settings are ignored here.
            (Some(path), _) => Ok(Scenario::potential_text(&std::fs::read_to_string(path)?)),
            (None, Some(e)) => Ok(format!("piece [-0.25, 1.25]: {e}")),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }

    fn potential(&self) -> Result<PiecewisePotential> {
        PiecewisePotential::parse(&self.text()?)
    }

    fn function(&self) -> Result<PiecewiseFunction> {
        PiecewiseFunction::parse(&self.text()?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Sign {
    Minus,
    Plus,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaKind {
    Endpoint,
    Shifted,
    Jump,
}

#[derive(Subcommand)]
enum Command {
    /// Log determinant of one matrix T_n(f; ε).
    Det {
        #[command(flatten)]
        source: Source,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        epsilon: f64,
        #[arg(long, value_enum, default_value = "minus")]
        sign: Sign,
    },
    /// Print G, α, the jump parameters and the envelope.
    Predict {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        epsilon: f64,
    },
    /// Run the n-sweep described by a scenario file.
    Sweep {
        scenario: PathBuf,
        /// Overrides the scenario's output; `-` writes to stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Fit A·n^b and A·B^n to the error column of a sweep CSV.
    Fit { records: PathBuf },
    /// Trace of φ(T_n) / n against the symbol average.
    Kms {
        #[command(flatten)]
        source: Source,
        #[arg(short)]
        n: usize,
        /// Power p in φ(s) = s^p, at most 4.
        #[arg(long, default_value_t = 2, conflicts_with = "log")]
        power: u32,
        /// Use φ(s) = log s.
        #[arg(long)]
        log: bool,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        epsilon: f64,
    },
    /// Moment gap between two shifts, next to their determinant limits.
    ShiftCheck {
        #[command(flatten)]
        source: Source,
        #[arg(short)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps_a: f64,
        #[arg(long, allow_hyphen_values = true)]
        eps_b: f64,
    },
    /// Residual table for one summation formula, as CSV.
    EmCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "endpoint")]
        lemma: LemmaKind,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        epsilon: f64,
        /// Orders, e.g. `64..4096` or `64, 128, 256`.
        #[arg(long, default_value = "64, 128, 256, 512, 1024, 2048, 4096")]
        n: String,
    },
    /// Fourier coefficients V_k at both endpoints and the series constant E(f).
    MsSeries {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        order: Option<usize>,
    },
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn det(source: &Source, n: usize, epsilon: f64, sign: Sign) -> Result<()> {
    let f = source.potential()?;
    let sign = match sign {
        Sign::Minus => OffDiagonalSign::Minus,
        Sign::Plus => OffDiagonalSign::Plus,
    };
    let m = SchrodingerMatrix::build(&f, n, epsilon, sign)?;
    let g_log = schrodet::asymptotics::geometric_mean_log(&f)?;
    let d = m.det_log()?.with_geometric_mean(g_log);
    print_json(&json!({
        "n": n,
        "epsilon": epsilon,
        "log_det": d.log_det,
        "log_g": g_log,
        "ratio": d.ratio(),
    }))
}

fn predict(source: &Source, epsilon: f64) -> Result<()> {
    let f = source.potential()?;
    let p = AsymptoticPrediction::with_epsilon(&f, epsilon)?;
    let jumps: Vec<_> = p
        .jumps
        .iter()
        .map(|j| {
            json!({
                "c": j.c,
                "side": j.side,
                "beta": j.beta,
                "gamma": j.gamma,
                "denominator": schrodet::asymptotics::rational_denominator(j.c),
            })
        })
        .collect();
    print_json(&json!({
        "g": p.g_log.exp(),
        "log_g": p.g_log,
        "epsilon": p.epsilon,
        "alpha": p.alpha,
        "jumps": jumps,
        "envelope": p.envelope(),
    }))
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) if p.as_os_str() != "-" => Box::new(BufWriter::new(File::create(p)?)),
        _ => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn sweep(path: &PathBuf, output: Option<PathBuf>, format: Option<Format>) -> Result<()> {
    let s = Scenario::from_file(path)?;
    let records = run_sweep(&s)?;
    let format = format.map(OutputFormat::from).unwrap_or(s.format);
    let target = output.or_else(|| s.output.clone());
    let mut out = open_output(target.as_ref())?;
    write_records(&records, format, &mut out)?;
    out.flush()?;

    // Secondary checks go to stderr so stdout stays machine-readable.
    let n_max = s.n_set.values().into_iter().max().unwrap_or(1);
    if s.has(Check::Fit) {
        let fit = fit_power_law(&records)?;
        eprintln!(
            "fit: {:.6} n^{:.6} (rss {:.4}); exponential rss {:.4}; preferred {:?}",
            fit.power.a, fit.power.b, fit.power.rss, fit.exponential.rss, fit.preferred
        );
    }
    if s.has(Check::Kms) {
        let k = kms_check(&s.potential, n_max.min(2000), Phi::Power(2), s.epsilon)?;
        eprintln!("kms s^2: n={} lhs={:.8} rhs={:.8} gap={:.3e}", k.n, k.lhs, k.rhs, k.gap);
    }
    if s.has(Check::EigsInvariance) && s.epsilon != 1.0 {
        let gap = shift_invariance_check(&s.potential, n_max.min(2000), 1.0, s.epsilon)?;
        eprintln!("moment gap vs epsilon=1: {gap:.3e}");
    }
    if s.has(Check::Ms) && !s.potential.has_jumps() {
        let e = ms_constant(&s.potential, None)?;
        eprintln!("series constant E(f) = {:.12}", e.value);
    }
    Ok(())
}

fn fit(path: &PathBuf) -> Result<()> {
    let records = read_csv(File::open(path)?)?;
    let report = fit_power_law(&records)?;
    print_json(&serde_json::to_value(report)?)
}

fn kms(source: &Source, n: usize, power: u32, log: bool, epsilon: f64) -> Result<()> {
    let f = source.potential()?;
    let phi = if log { Phi::Log } else { Phi::Power(power) };
    let k = kms_check(&f, n, phi, epsilon)?;
    print_json(&serde_json::to_value(k)?)
}

fn shift_check(source: &Source, n: usize, eps_a: f64, eps_b: f64) -> Result<()> {
    let f = source.potential()?;
    let gap = shift_invariance_check(&f, n, eps_a, eps_b)?;
    let (la, lb) = if f.has_jumps() {
        (None, None)
    } else {
        (Some(shifted_limit(&f, eps_a)?), Some(shifted_limit(&f, eps_b)?))
    };
    print_json(&json!({
        "n": n,
        "eps_a": eps_a,
        "eps_b": eps_b,
        "moment_gap": gap,
        "limit_a": la,
        "limit_b": lb,
    }))
}

fn em_check(source: &Source, lemma: LemmaKind, epsilon: f64, n: &str) -> Result<()> {
    let g = source.function()?;
    let ns = n.parse::<NSet>()?.values();
    let lemma = match lemma {
        LemmaKind::Endpoint => Lemma::Endpoint,
        LemmaKind::Shifted => Lemma::Shifted(epsilon),
        LemmaKind::Jump => Lemma::Jump,
    };
    let table = EulerMaclaurin::new(&g)?.residual_table(lemma, &ns)?;
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["n", "exact", "formula", "residual", "residual_n"])?;
    for row in &table {
        w.write_record([
            row.n.to_string(),
            format!("{:.16e}", row.exact_sum),
            format!("{:.16e}", row.formula_value),
            format!("{:.16e}", row.residual),
            format!("{:.16e}", row.scaled_residual()),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn ms_series(source: &Source, order: Option<usize>) -> Result<()> {
    let f = source.potential()?;
    let e = ms_constant(&f, order)?;
    let mut out = io::stdout().lock();
    writeln!(out, "k,v_k(0),v_k(1)")?;
    for k in 0..=e.order as i64 {
        writeln!(out, "{k},{:.16e},{:.16e}", e.at_zero.v(k), e.at_one.v(k))?;
    }
    writeln!(out)?;
    writeln!(out, "E(f) = {:.15}", e.value)?;
    writeln!(out, "order K = {}, truncation bound {:.3e}", e.order, e.truncation_bound)?;
    match (e.kac_limit, e.discrepancy()) {
        (Some(kac), Some(ratio)) => {
            writeln!(out, "kac limit = {kac:.15}")?;
            writeln!(out, "E(f) / kac limit = {ratio:.15}")?;
            if (ratio - 1.0).abs() > 1e-8 {
                writeln!(
                    out,
                    "note: the displayed series differs from the determinant limit; \
                     for constant f this factor is rho(f)"
                )?;
            }
        }
        _ => writeln!(out, "kac limit: not defined (potential has jumps)")?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Det {
            source,
            n,
            epsilon,
            sign,
        } => det(&source, n, epsilon, sign),
        Command::Predict { source, epsilon } => predict(&source, epsilon),
        Command::Sweep {
            scenario,
            output,
            format,
        } => sweep(&scenario, output, format),
        Command::Fit { records } => fit(&records),
        Command::Kms {
            source,
            n,
            power,
            log,
            epsilon,
        } => kms(&source, n, power, log, epsilon),
        Command::ShiftCheck {
            source,
            n,
            eps_a,
            eps_b,
        } => shift_check(&source, n, eps_a, eps_b),
        Command::EmCheck {
            source,
            lemma,
            epsilon,
            n,
        } => em_check(&source, lemma, epsilon, &n),
        Command::MsSeries { source, order } => ms_series(&source, order),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
