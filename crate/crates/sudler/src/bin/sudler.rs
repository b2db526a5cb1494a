//! Command-line front end.
//!
//! Data goes to --out (or stdout), diagnostics to stderr. Exit codes:
//! 0 all requested computations completed within tolerance, 2 spec/selector
//! parse error, 3 argument outside a validity range, 1 anything else.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sudler::alpha::AlphaSpec;
use sudler::analysis::{convergence_probe, figure_data, FigureData, FigureId, SubsequenceSelector};
use sudler::cf::ConvergentTable;
use sudler::error::Error;
use sudler::ostrowski::{d_t_bruteforce, d_t_formula, encode, OstrowskiBase};
use sudler::product::{
    c_asymptotic, decompose, estimate_with_log_p, log_b_asymptotic, DEFAULT_PRECISION_BITS,
};
use sudler::report::{
    self, comment_line, figure_rows, probe_rows, sudler_row, write_csv, Series, FIGURE_HEADER,
    PROBE_HEADER, SUDLER_HEADER,
};

const RESIDUAL_TOLERANCE: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "sudler", version, about = "Sudler products along best-approximation denominators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Alpha spec: golden | e | quad:<pre>|<period> | twos:<start> |
    /// tm:<a>,<b> | explicit:<d1,...>;fill=<k>
    #[arg(long)]
    alpha: String,

    /// Certified precision for alpha and derived quantities.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: u32,

    /// Cap on worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,

    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print coefficients and convergents p_n, q_n.
    Convergents {
        #[command(flatten)]
        common: Common,
        /// Number of coefficients.
        #[arg(long)]
        n: usize,
    },
    /// Digit expansion of t in the base α_n⁻ (reversed coefficient prefix).
    Ostrowski {
        #[command(flatten)]
        common: Common,
        /// Base index n (the base has n-1 coefficients).
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u64,
    },
    /// Discrepancy sums D_t in base α_n⁻: digit closed form next to the
    /// direct sum, for t = 1..=tmax.
    Dt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tmax: u64,
    },
    /// Full evaluation over an index range: decomposition and estimator.
    Sudler {
        #[command(flatten)]
        common: Common,
        /// Inclusive index range, e.g. 5..18.
        #[arg(long, value_parser = parse_range)]
        n_range: (usize, usize),
    },
    /// A·B·C split of P_{q_n} with the residual against direct evaluation.
    Decompose {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_range)]
        n_range: (usize, usize),
    },
    /// Discrepancy-driven estimate of P_{q_n} next to the actual value.
    Estimate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_range)]
        n_range: (usize, usize),
        /// Truncation override for the log B double sum (default ⌊√q_n⌋).
        #[arg(long)]
        tau: Option<u64>,
        /// Truncation override for the C product (default ⌊√q_n⌋).
        #[arg(long)]
        kappa: Option<u64>,
    },
    /// Convergence probe of P_{q_{n_i}} along an index subsequence.
    Probe {
        #[command(flatten)]
        common: Common,
        /// Selector: mod:<l>,<k> | twos[:<start>] | indices:<n1,n2,...> | pow4
        #[arg(long)]
        select: String,
        /// Number of subsequence steps to take.
        #[arg(long, default_value_t = 12)]
        imax: usize,
    },
    /// Reproduction figure data: fig1a | fig1b | fig2a | fig2b.
    Figure {
        id: String,
        /// Certified precision for alpha and derived quantities.
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
        #[arg(long)]
        threads: Option<usize>,
        /// Output directory for <id>.csv (and <id>.svg).
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// csv or csv+svg.
        #[arg(long, default_value = "csv+svg")]
        format: String,
    },
    /// Run the built-in invariant suite and print a pass/fail table.
    Selfcheck {
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| "expected <start>..<end>".to_string())?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad start {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad end {b:?}"))?;
    if a == 0 || b < a {
        return Err("need 1 <= start <= end".into());
    }
    Ok((a, b))
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => 2,
        Error::OutOfValidity { .. } => 3,
        _ => 1,
    }
}

fn configure_threads(threads: Option<usize>) {
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn out_writer(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    match path {
        Some(p) => Ok(Box::new(File::create(p)?)),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn run() -> Result<(), (u8, String)> {
    let cli = Cli::parse();
    let fail = |e: Error| (exit_code_for(&e), e.to_string());
    let io_fail = |e: io::Error| (1u8, e.to_string());

    match cli.command {
        Command::Convergents { common, n } => {
            configure_threads(common.threads);
            let spec: AlphaSpec = common.alpha.parse().map_err(fail)?;
            let table = ConvergentTable::for_spec(&spec, n).map_err(fail)?;
            let rows = (0..=table.max_index()).map(|i| {
                vec![
                    i.to_string(),
                    if i >= 1 {
                        table.coeff(i).to_string()
                    } else {
                        String::new()
                    },
                    table.p(i).to_string(),
                    table.q(i).to_string(),
                ]
            });
            write_csv(
                out_writer(&common.out).map_err(io_fail)?,
                &comment_line(&spec.to_string(), common.precision_bits),
                &["n", "a_n", "p_n", "q_n"],
                rows,
            )
            .map_err(io_fail)?;
        }
        Command::Ostrowski { common, n, t } => {
            configure_threads(common.threads);
            let spec: AlphaSpec = common.alpha.parse().map_err(fail)?;
            let base = OstrowskiBase::head_base(&spec, n).map_err(fail)?;
            let digits = encode(&base, t).map_err(fail)?;
            let mut w = out_writer(&common.out).map_err(io_fail)?;
            writeln!(w, "{}", digits.render()).map_err(io_fail)?;
        }
        Command::Dt { common, n, tmax } => {
            configure_threads(common.threads);
            let spec: AlphaSpec = common.alpha.parse().map_err(fail)?;
            let base = OstrowskiBase::head_base(&spec, n).map_err(fail)?;
            let beta = base.value();
            let mut rows = Vec::new();
            let mut mismatch = false;
            for t in 1..=tmax {
                let formula = d_t_formula(&base, t).map_err(fail)?;
                let brute = d_t_bruteforce(&beta, t);
                mismatch |= formula != brute;
                let digits = encode(&base, t).map_err(fail)?;
                rows.push(vec![
                    t.to_string(),
                    formula.to_string(),
                    brute.to_string(),
                    digits.significant_len().to_string(),
                ]);
            }
            write_csv(
                out_writer(&common.out).map_err(io_fail)?,
                &comment_line(&spec.to_string(), common.precision_bits),
                &["t", "Dt_formula", "Dt_bruteforce", "N(t)"],
                rows,
            )
            .map_err(io_fail)?;
            if mismatch {
                return Err((1, "closed form disagreed with the direct sum".into()));
            }
        }
        Command::Sudler { common, n_range } => {
            emit_sudler_csv(&common, n_range, true)?;
        }
        Command::Decompose { common, n_range } => {
            emit_sudler_csv(&common, n_range, false)?;
        }
        Command::Estimate {
            common,
            n_range,
            tau,
            kappa,
        } => {
            configure_threads(common.threads);
            let spec: AlphaSpec = common.alpha.parse().map_err(fail)?;
            let mut rows = Vec::new();
            let mut worst = 0.0f64;
            for n in n_range.0..=n_range.1 {
                let point = decompose(&spec, n, common.precision_bits).map_err(fail)?;
                worst = worst.max(point.residual);
                let est = estimate_with_log_p(&spec, n, common.precision_bits, point.log_p)
                    .map_err(fail)?;
                let b_asym =
                    log_b_asymptotic(&spec, n, tau, common.precision_bits).map_err(fail)?;
                let c_asym = c_asymptotic(&spec, n, kappa, common.precision_bits).map_err(fail)?;
                rows.push(vec![
                    spec.to_string(),
                    n.to_string(),
                    est.q_n.to_string(),
                    report::f(est.c_n),
                    report::f(est.s_n),
                    report::f(est.core),
                    report::f(est.log_p.exp()),
                    report::f(est.ratio),
                    report::f(est.y_n),
                    report::f(est.unbounded_estimate),
                    report::f(b_asym),
                    report::f(c_asym),
                ]);
            }
            write_csv(
                out_writer(&common.out).map_err(io_fail)?,
                &comment_line(&spec.to_string(), common.precision_bits),
                &[
                    "spec",
                    "n",
                    "q_n",
                    "c_n",
                    "S_n",
                    "core",
                    "P",
                    "ratio",
                    "Y_n",
                    "unbounded_estimate",
                    "log_B_asymptotic",
                    "C_asymptotic",
                ],
                rows,
            )
            .map_err(io_fail)?;
            if worst >= RESIDUAL_TOLERANCE {
                return Err((1, format!("decomposition residual {worst:e} above tolerance")));
            }
        }
        Command::Probe {
            common,
            select,
            imax,
        } => {
            configure_threads(common.threads);
            let spec: AlphaSpec = common.alpha.parse().map_err(fail)?;
            let selector: SubsequenceSelector = select.parse().map_err(fail)?;
            let report = convergence_probe(&spec, &selector, imax, common.precision_bits)
                .map_err(fail)?;
            if report.truncated {
                eprintln!(
                    "warning: desk bound q_n <= {} reached; emitting partial subsequence",
                    sudler::analysis::DESK_BOUND_Q
                );
            }
            write_csv(
                out_writer(&common.out).map_err(io_fail)?,
                &comment_line(&spec.to_string(), common.precision_bits),
                &PROBE_HEADER,
                probe_rows(&report),
            )
            .map_err(io_fail)?;
            if report.max_residual >= RESIDUAL_TOLERANCE {
                return Err((
                    1,
                    format!(
                        "decomposition residual {:e} above tolerance",
                        report.max_residual
                    ),
                ));
            }
        }
        Command::Figure {
            id,
            precision_bits,
            threads,
            out,
            format,
        } => {
            configure_threads(threads);
            let id: FigureId = id.parse().map_err(fail)?;
            let with_svg = match format.as_str() {
                "csv" => false,
                "csv+svg" => true,
                other => {
                    return Err((2, format!("unknown format {other:?} (csv or csv+svg)")));
                }
            };
            let data = figure_data(id, precision_bits).map_err(fail)?;
            if data.truncated {
                eprintln!(
                    "warning: desk bound q_n <= {} reached; figure data is partial",
                    sudler::analysis::DESK_BOUND_Q
                );
            }
            std::fs::create_dir_all(&out).map_err(io_fail)?;
            let csv_path = out.join(format!("{id}.csv"));
            let mut comment = comment_line(&data.spec.to_string(), precision_bits);
            if data.truncated {
                comment.push_str(" truncated=true");
            }
            write_csv(
                File::create(&csv_path).map_err(io_fail)?,
                &comment,
                &FIGURE_HEADER,
                figure_rows(&data),
            )
            .map_err(io_fail)?;
            eprintln!("wrote {}", csv_path.display());
            if with_svg {
                let svg_path = out.join(format!("{id}.svg"));
                std::fs::write(&svg_path, figure_svg(&data)).map_err(io_fail)?;
                eprintln!("wrote {}", svg_path.display());
            }
        }
        Command::Selfcheck { threads } => {
            configure_threads(threads);
            let outcomes = sudler::selfcheck::run_all();
            let width = outcomes.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &outcomes {
                println!(
                    "{:width$}  {}  {}",
                    c.name,
                    if c.pass { "PASS" } else { "FAIL" },
                    c.detail
                );
            }
            if !sudler::selfcheck::all_pass(&outcomes) {
                return Err((1, "selfcheck failed".into()));
            }
        }
    }
    Ok(())
}

fn emit_sudler_csv(
    common: &Common,
    n_range: (usize, usize),
    with_estimator: bool,
) -> Result<(), (u8, String)> {
    let fail = |e: Error| (exit_code_for(&e), e.to_string());
    configure_threads(common.threads);
    let spec: AlphaSpec = common.alpha.parse().map_err(fail)?;
    let bits = common.precision_bits;
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    for n in n_range.0..=n_range.1 {
        let point = decompose(&spec, n, bits).map_err(fail)?;
        worst = worst.max(point.residual);
        let est = if with_estimator && point.q_n >= 9 {
            Some(estimate_with_log_p(&spec, n, bits, point.log_p).map_err(fail)?)
        } else {
            None
        };
        rows.push(sudler_row(&spec.to_string(), &point, est.as_ref()));
    }
    write_csv(
        out_writer(&common.out).map_err(|e| (1u8, e.to_string()))?,
        &comment_line(&spec.to_string(), bits),
        &SUDLER_HEADER,
        rows,
    )
    .map_err(|e| (1u8, e.to_string()))?;
    if worst >= RESIDUAL_TOLERANCE {
        return Err((1, format!("decomposition residual {worst:e} above tolerance")));
    }
    Ok(())
}

fn figure_svg(data: &FigureData) -> String {
    let mut series: Vec<Series> = Vec::new();
    for row in &data.rows {
        let point = (row.n as f64, row.p);
        match series.iter_mut().find(|s| s.label == row.series) {
            Some(s) => s.points.push(point),
            None => series.push(Series {
                label: row.series.clone(),
                points: vec![point],
            }),
        }
    }
    report::scatter_svg(&data.id.to_string(), "n", "P_{q_n}", &series)
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
