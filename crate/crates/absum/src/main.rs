//! Command line front end. Every subcommand computes one of the library's
//! summatory functions or constants and emits a small CSV or JSON table;
//! `verify` runs the acceptance checklist.
//!
//! Exit codes: 0 success, 1 computational failure (including a failed
//! verification), 2 usage error.

use std::error::Error;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use absum::constants::{c_series, c_rk, TruncationConfig};
use absum::fit::{fit_log_poly, fit_slope, kratzel_report, prop1_report, SamplePoint};
use absum::report::{Cell, Table};
use absum::sieve::{
    dk_shift_grid_auto, dk_shift_sum, dk_shift_sum_auto, max_a, q_sum, q_sum_auto,
    q_sum_grid_auto, sieve_a, sieve_dk, squarefull_count, t_sum, SieveConfig,
};
use absum::suite::{run_all, render, Budget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BudgetArg {
    Small,
    Full,
}

#[derive(Debug, Parser)]
#[command(name = "absum", version, about = "Summatory functions of the abelian group counting function")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (default: one per core). Results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Sieve segment length in elements (>= 65536). Results do not depend
    /// on this.
    #[arg(long, global = true)]
    segment_len: Option<usize>,

    /// Lookahead margin for shifted sums; must be at least A(x). When unset,
    /// a too-small default is retried automatically.
    #[arg(long, global = true)]
    margin: Option<u64>,
}

#[derive(Debug, Clone, Copy, clap::Args)]
struct CutoffArgs {
    /// Euler product truncation: primes below this enter exactly
    #[arg(long)]
    pmax: Option<u64>,

    /// Terms per local prime series
    #[arg(long)]
    amax: Option<u32>,

    /// Squarefull support truncated at this bound
    #[arg(long)]
    smax: Option<u64>,

    /// Coprimality sum truncated at this modulus
    #[arg(long)]
    dmax: Option<u64>,
}

impl CutoffArgs {
    fn to_config(self) -> TruncationConfig {
        let d = TruncationConfig::default();
        TruncationConfig {
            prime_cutoff: self.pmax.unwrap_or(d.prime_cutoff),
            exponent_cutoff: self.amax.unwrap_or(d.exponent_cutoff),
            zeta_cutoff: d.zeta_cutoff,
            squarefull_cutoff: self.smax.unwrap_or(d.squarefull_cutoff),
            d_cutoff: self.dmax.unwrap_or(d.d_cutoff),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// a(n) for n in [lo, hi)
    Asieve {
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Vec<u64>,
    },
    /// d_k(n) for n in [lo, hi), k in {2, 3, 4}
    Dksieve {
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Vec<u64>,
        #[arg(long, value_name = "K")]
        k_div: u32,
    },
    /// Q(x) = sum_{n<=x} a(n + a(n))
    Qsum {
        #[arg(long)]
        x: u64,
    },
    /// T(x; k, r) = sum of a(m) over m <= x with m = k mod r
    Tsum {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        k: u64,
    },
    /// sum_{n<=x} d_k(n + a(n))
    Dkshift {
        #[arg(long)]
        x: u64,
        #[arg(long, value_name = "K")]
        k_div: u32,
    },
    /// A(x) = max_{n<=x} a(n)
    Maxa {
        #[arg(long)]
        x: u64,
    },
    /// Number of squarefull integers <= u
    Sqfull {
        #[arg(long, value_name = "U")]
        x: u64,
    },
    /// The progression density constant c(r, k)
    Crk {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        cutoffs: CutoffArgs,
    },
    /// The mean value constant C of Q(x)
    Cconst {
        #[command(flatten)]
        cutoffs: CutoffArgs,
    },
    /// Fit the main term of Q (or of the shifted d_k sum) on a doubling grid
    /// ending at x
    Fit {
        #[arg(long)]
        x: u64,
        /// Fit the shifted d_k sum instead of Q
        #[arg(long, value_name = "K")]
        k_div: Option<u32>,
    },
    /// Progression sums against their predicted densities
    Prop1 {
        #[arg(long)]
        x: u64,
        /// Moduli, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<u64>,
        /// Residues, comma separated (default: 1 for every modulus)
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<u64>>,
    },
    /// Extremal order diagnostic over decade cuts
    Kratzel {
        #[arg(long)]
        x: u64,
    },
    /// Run the acceptance checklist
    Verify {
        #[arg(long, value_enum, default_value_t = BudgetArg::Small)]
        budget: BudgetArg,
    },
}

fn sieve_config(cli: &Cli) -> Result<SieveConfig, Box<dyn Error>> {
    let mut cfg = SieveConfig::new();
    if let Some(len) = cli.segment_len {
        cfg = cfg.with_segment_len(len)?;
    }
    if let Some(m) = cli.margin {
        cfg = cfg.with_margin(m);
    }
    Ok(cfg)
}

fn render_table(t: &Table, format: Format) -> String {
    match format {
        Format::Csv => t.to_csv(),
        Format::Json => {
            let mut s = t.to_json();
            s.push('\n');
            s
        }
    }
}

/// Two-part output (used by `fit`): named tables, CSV blocks separated by a
/// blank line, JSON as one object.
fn render_parts(parts: &[(&str, Table)], format: Format) -> String {
    match format {
        Format::Csv => parts
            .iter()
            .map(|(_, t)| t.to_csv())
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let body = parts
                .iter()
                .map(|(name, t)| format!("\"{name}\": {}", t.to_json()))
                .collect::<Vec<_>>()
                .join(",\n");
            format!("{{\n{body}\n}}\n")
        }
    }
}

fn grid_to(x: u64) -> Vec<u64> {
    let mut xs = Vec::new();
    if x == 0 {
        return xs;
    }
    let mut cut = 10_000u64.min(x);
    while cut <= x {
        xs.push(cut);
        match cut.checked_mul(2) {
            Some(next) if next <= x => cut = next,
            _ => break,
        }
    }
    xs
}

fn run(cli: &Cli) -> Result<(String, bool), Box<dyn Error>> {
    let sc = sieve_config(cli)?;
    let strict_margin = cli.margin.is_some();
    let text = match &cli.cmd {
        Cmd::Asieve { range } => {
            let w = sieve_a(range[0], range[1], &sc)?;
            let mut t = Table::new(vec!["n", "a"]);
            for n in w.offset()..w.offset() + w.len() as u64 {
                t.push(vec![Cell::U(n), Cell::U(w.get(n).unwrap().into())]);
            }
            render_table(&t, cli.format)
        }
        Cmd::Dksieve { range, k_div } => {
            let w = sieve_dk(range[0], range[1], *k_div, &sc)?;
            let mut t = Table::new(vec!["n", "d"]);
            for n in w.offset()..w.offset() + w.len() as u64 {
                t.push(vec![Cell::U(n), Cell::U(w.get(n).unwrap())]);
            }
            render_table(&t, cli.format)
        }
        Cmd::Qsum { x } => {
            let s = if strict_margin {
                q_sum(*x, &sc)?
            } else {
                q_sum_auto(*x, &sc)?
            };
            let mut t = Table::new(vec!["x", "Q"]);
            t.push(vec![Cell::U(*x), Cell::U(s.value)]);
            render_table(&t, cli.format)
        }
        Cmd::Tsum { x, r, k } => {
            let v = t_sum(*x, *k, *r, &sc)?;
            let mut t = Table::new(vec!["x", "r", "k", "T"]);
            t.push(vec![Cell::U(*x), Cell::U(*r), Cell::U(*k), Cell::U(v)]);
            render_table(&t, cli.format)
        }
        Cmd::Dkshift { x, k_div } => {
            let s = if strict_margin {
                dk_shift_sum(*x, *k_div, &sc)?
            } else {
                dk_shift_sum_auto(*x, *k_div, &sc)?
            };
            let mut t = Table::new(vec!["x", "k", "S"]);
            t.push(vec![Cell::U(*x), Cell::U(*k_div as u64), Cell::U(s.value)]);
            render_table(&t, cli.format)
        }
        Cmd::Maxa { x } => {
            let a = max_a(*x, &sc)?;
            let mut t = Table::new(vec!["x", "A"]);
            t.push(vec![Cell::U(*x), Cell::U(a)]);
            render_table(&t, cli.format)
        }
        Cmd::Sqfull { x } => {
            let mut t = Table::new(vec!["u", "count"]);
            t.push(vec![Cell::U(*x), Cell::U(squarefull_count(*x))]);
            render_table(&t, cli.format)
        }
        Cmd::Crk { r, k, cutoffs } => {
            let res = c_rk(*r, *k, &cutoffs.to_config())?;
            let mut t = Table::new(vec!["r", "k", "c", "tail"]);
            t.push(vec![
                Cell::U(*r),
                Cell::U(*k),
                Cell::F(res.value),
                Cell::F(res.tail_estimate),
            ]);
            render_table(&t, cli.format)
        }
        Cmd::Cconst { cutoffs } => {
            let tc = cutoffs.to_config();
            let res = c_series(&tc)?;
            let mut t = Table::new(vec!["S_max", "D_max", "C", "tail"]);
            t.push(vec![
                Cell::U(tc.squarefull_cutoff),
                Cell::U(tc.d_cutoff),
                Cell::F(res.value),
                Cell::F(res.tail_estimate),
            ]);
            render_table(&t, cli.format)
        }
        Cmd::Fit { x, k_div } => {
            let xs = grid_to(*x);
            let fit = match k_div {
                None => {
                    let g = q_sum_grid_auto(&xs, &sc)?;
                    let samples: Vec<SamplePoint> = xs
                        .iter()
                        .zip(&g.values)
                        .map(|(&x, &value)| SamplePoint { x, value })
                        .collect();
                    fit_slope(&samples)?
                }
                Some(k) => {
                    let g = dk_shift_grid_auto(&xs, *k, &sc)?;
                    let samples: Vec<SamplePoint> = xs
                        .iter()
                        .zip(&g.values)
                        .map(|(&x, &value)| SamplePoint { x, value })
                        .collect();
                    fit_log_poly(&samples, *k as usize - 1)?
                }
            };
            let mut coefs = Table::new(vec!["coef_index", "coef_value"]);
            for (i, c) in fit.coefficients.iter().enumerate() {
                coefs.push(vec![Cell::U(i as u64), Cell::F(*c)]);
            }
            let mut resid = Table::new(vec!["x", "residual"]);
            for (&x, r) in xs.iter().zip(&fit.residuals) {
                resid.push(vec![Cell::U(x), Cell::F(*r)]);
            }
            render_parts(&[("coefficients", coefs), ("residuals", resid)], cli.format)
        }
        Cmd::Prop1 { x, r, k } => {
            let ks = match k {
                Some(ks) => {
                    if ks.len() != r.len() {
                        return Err("`--k` must list one residue per modulus".into());
                    }
                    ks.clone()
                }
                None => vec![1; r.len()],
            };
            let pairs: Vec<(u64, u64)> = r.iter().copied().zip(ks).collect();
            let rows = prop1_report(&[*x], &pairs, &TruncationConfig::default(), &sc)?;
            let mut t = Table::new(vec!["x", "r", "k", "T", "pred", "err", "norm_err", "flag"]);
            for row in rows {
                t.push(vec![
                    Cell::U(row.x),
                    Cell::U(row.r),
                    Cell::U(row.k),
                    Cell::U(row.t),
                    Cell::F(row.pred),
                    Cell::F(row.err),
                    Cell::F(row.norm_err),
                    Cell::U(row.small_x as u64),
                ]);
            }
            render_table(&t, cli.format)
        }
        Cmd::Kratzel { x } => {
            let rows = kratzel_report(*x, &sc)?;
            let mut t = Table::new(vec!["x", "A", "L"]);
            for row in rows {
                t.push(vec![Cell::U(row.x), Cell::U(row.a_max), Cell::F(row.l_value)]);
            }
            render_table(&t, cli.format)
        }
        Cmd::Verify { budget } => {
            let b = match budget {
                BudgetArg::Small => Budget::Small,
                BudgetArg::Full => Budget::Full,
            };
            let outcomes = run_all(b);
            let ok = outcomes.iter().all(|o| o.pass);
            return Ok((render(&outcomes), ok));
        }
    };
    Ok((text, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // results are thread-count independent; this only affects speed
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(&cli) {
        Ok((text, ok)) => {
            let wrote = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = wrote {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
