use std::path::PathBuf;
use std::process::ExitCode;

use bgw::dvv::{b_to_c, BgwTable};
use bgw::exactnum::PiMultiple;
use bgw::harness::{self, CheckKind, CheckReport};
use bgw::partitions::IndexVector;
use bgw::{kappa, painleve, series, Rational};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bgw", version, about = "Exact BGW intersection numbers")]
struct Cli {
    /// Significant digits for decimal output.
    #[arg(long, global = true, default_value_t = 12)]
    digits: usize,
    /// Exit with status 1 when a conjecture check finds a counterexample.
    #[arg(long, global = true)]
    strict_conjectures: bool,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cache file loaded before and written after the command.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// B(d), C(d) and the bracket; `d^n` (e.g. `100^10`) uses the window routine.
    Compute { partition: String },
    /// C(d) over the partitions of g - 1 with the common denominator.
    Table {
        #[arg(long)]
        g: u64,
    },
    Check {
        which: CheckName,
        #[arg(long, default_value_t = 12)]
        gmax: u64,
        /// X range for `bounds`.
        #[arg(long, default_value_t = 26)]
        xmax: u64,
        /// Part count limit for `cross`.
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Plot data for `intervals`.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    Series {
        which: SeriesName,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value = "1,1")]
        lambda: String,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    Painleve {
        which: PainleveName,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 10)]
        n: u64,
    },
    Kappa {
        which: KappaName,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value = "")]
        d: String,
        #[arg(long, default_value_t = 4)]
        g: u64,
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
    Cache {
        which: CacheOp,
        #[arg(long)]
        path: PathBuf,
        /// Fill the table up to this X before saving.
        #[arg(long, default_value_t = 0)]
        xmax: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckName {
    Nesting,
    Monotone,
    Integrality,
    Cross,
    Bounds,
    Intervals,
    Band,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesName {
    Gamma,
    Ck,
    Chatk,
    Wd,
    Wlambda,
    Subexp,
}

#[derive(Clone, Copy, ValueEnum)]
enum PainleveName {
    Y,
    Ydn,
    Vdn,
    Residual,
}

#[derive(Clone, Copy, ValueEnum)]
enum KappaName {
    Number,
    Table,
    Volume,
    Gprs,
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheOp {
    Save,
    Load,
}

type Res<T> = Result<T, Box<dyn std::error::Error>>;

fn parse_partition(s: &str) -> Res<Vec<u32>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(s.parse::<IndexVector>()?.0)
}

fn series_strings(s: &series::AsymptoticSeries) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

struct Ctx {
    digits: usize,
    json: bool,
    strict: bool,
}

impl Ctx {
    fn emit(&self, text: String, value: serde_json::Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        } else {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
    }

    /// Exit status contribution of a finished check.
    fn verdict(&self, reports: &[CheckReport]) -> bool {
        reports.iter().all(|r| r.passed() || (r.kind == CheckKind::Conjecture && !self.strict))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let table = BgwTable::global();
    if let Some(p) = &cli.cache {
        if p.exists() {
            if let Err(e) = harness::cache_load_into(table, p) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let ctx = Ctx { digits: cli.digits, json: cli.json, strict: cli.strict_conjectures };
    let out = run(&ctx, table, cli.cmd);
    if let Some(p) = &cli.cache {
        if let Err(e) = harness::cache_save(table, p) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(ctx: &Ctx, table: &BgwTable, cmd: Cmd) -> Res<bool> {
    let digits = ctx.digits;
    match cmd {
        Cmd::Compute { partition } => {
            if let Some((d, n)) = partition.split_once('^') {
                let (d, n): (u32, u32) = (d.trim().parse()?, n.trim().parse()?);
                let key = vec![d; n as usize];
                let b = bgw::resolvent::b_power(d, n)?;
                let c = b_to_c(&key, &b);
                let deficit = harness::power_deficit(d, n, 6.min(digits))?;
                let ok = deficit.parse::<f64>().map_or(false, |v| v > 0.0 && v < 1.0);
                ctx.emit(
                    format!("C({d}^{n}) = {}\n1 - Chat = {deficit}\n", harness::numeric_rational(&c, digits)),
                    json!({"d": d, "n": n, "C": c.to_string(), "one_minus_chat": deficit, "in_unit_interval": ok}),
                );
                return Ok(ok);
            }
            let d = parse_partition(&partition)?;
            let b = table.b(&d)?;
            let c = table.c(&d)?;
            let br = harness::bracket(table, &d)?;
            ctx.emit(
                format!(
                    "<tau> = {br}\nB = {b}\nC = {c}\nC ~ {}\n",
                    harness::numeric(&PiMultiple::rational(c.clone()), digits)?
                ),
                json!({"d": d, "bracket": br.to_string(), "B": b.to_string(), "C": c.to_string(),
                       "decimal": harness::numeric_rational(&c, digits)}),
            );
            Ok(true)
        }
        Cmd::Table { g } => {
            let t = harness::cli_table(table, g)?;
            ctx.emit(t.to_string(), serde_json::to_value(&t)?);
            Ok(true)
        }
        Cmd::Check { which, gmax, xmax, nmax, csv } => {
            let reports = match which {
                CheckName::Nesting => vec![harness::check_nesting(table, gmax)?],
                CheckName::Monotone => vec![harness::check_monotone(table, gmax)?],
                CheckName::Integrality => harness::check_integrality(table, gmax)?,
                CheckName::Cross => vec![harness::check_cross(table, gmax, nmax)?],
                CheckName::Bounds => vec![harness::check_bounds(table, xmax)?],
                CheckName::Band => {
                    let (k, at) = harness::band_constant(table, gmax)?;
                    let k = harness::numeric_rational(&k, 6);
                    ctx.emit(
                        format!("max g |C(d) - 1/pi| over 2 <= g <= {gmax}: K = {k} at ({at})\n"),
                        json!({"gmax": gmax, "K": k, "at": at}),
                    );
                    return Ok(true);
                }
                CheckName::Intervals => {
                    let s = harness::check_interval_stats(table, gmax)?;
                    if let Some(p) = csv {
                        std::fs::write(p, s.csv())?;
                    }
                    ctx.emit(s.to_string(), serde_json::to_value(&s)?);
                    return Ok(true);
                }
            };
            let text: String = reports.iter().map(|r| r.to_string()).collect();
            ctx.emit(text, serde_json::to_value(&reports)?);
            Ok(ctx.verdict(&reports))
        }
        Cmd::Series { which, order, d, lambda, n } => {
            match which {
                SeriesName::Gamma => {
                    let s = series::gamma_series(order);
                    ctx.emit(format!("pi gamma(X) = {s}\n"), json!(series_strings(&s)));
                }
                SeriesName::Ck | SeriesName::Chatk => {
                    let hat = matches!(which, SeriesName::Chatk);
                    let mut text = String::new();
                    let mut vals = Vec::new();
                    for k in 0..=order.min(series::CHAT_POLY_MAX_K) {
                        let p = if hat { series::chat_poly(k)? } else { series::c_poly(k)? };
                        text.push_str(&format!("{}_{k} = {p}\n", if hat { "chat" } else { "c" }));
                        vals.push(p.to_string());
                    }
                    ctx.emit(text, json!(vals));
                }
                SeriesName::Wd => {
                    let s = series::w_d_closed(d, order)?;
                    ctx.emit(format!("W_{d}(X) = {s}\n"), json!(series_strings(&s)));
                }
                SeriesName::Wlambda => {
                    let lam = parse_partition(&lambda)?;
                    let s = series::w_lambda(&lam, order)?;
                    ctx.emit(format!("W_({lambda})(X) = {s}\n"), json!(series_strings(&s)));
                }
                SeriesName::Subexp => {
                    let b = series::subexp_b_series(n, order)?;
                    let l = series::l_n_series(n, order)?;
                    ctx.emit(
                        format!("b(n = {n}) in 1/d: {b}\nL_{n} = {l}\n"),
                        json!({"b": series_strings(&b), "L": series_strings(&l)}),
                    );
                }
            }
            Ok(true)
        }
        Cmd::Painleve { which, d, n } => {
            let seq = match which {
                PainleveName::Y => painleve::y_g_seq(n)?,
                PainleveName::Ydn => painleve::y_dn_seq(d, n)?,
                PainleveName::Vdn => painleve::v_dn_seq(&painleve::p34_solve(d, n)?),
                PainleveName::Residual => {
                    let y = painleve::p34_solve(d, n)?;
                    let r = painleve::p34_residual(d, &y)?;
                    let zero = r.iter().all(|x| x == &Rational::from_integer(0.into()));
                    let m = painleve::m_residual(4)?;
                    let m_zero = m.iter().all(|p| p.is_zero());
                    ctx.emit(
                        format!("p34 residual through n = {n}: {}\nm-polynomial residual: {}\n",
                            if zero { "zero" } else { "NONZERO" },
                            if m_zero { "zero" } else { "NONZERO" }),
                        json!({"p34_residual_zero": zero, "m_residual_zero": m_zero}),
                    );
                    return Ok(zero && m_zero);
                }
            };
            let vals = seq.to_strings();
            let text: String = vals
                .iter()
                .enumerate()
                .map(|(i, v)| format!("{}\t{v}\n", seq.start + i as u64))
                .collect();
            ctx.emit(text, json!({"kind": seq.kind, "d": seq.d, "start": seq.start, "values": vals}));
            Ok(true)
        }
        Cmd::Kappa { which, m, d, g, n } => {
            match which {
                KappaName::Number => {
                    let dd = parse_partition(&d)?;
                    let v = kappa::kappa_number(m, &dd)?;
                    let c = kappa::c_kappa(m, &dd)?;
                    ctx.emit(
                        format!("<kappa^{m} tau({d})> = {v}\nC({m};{d}) = {c} ~ {}\n", harness::numeric_rational(&c, digits)),
                        json!({"value": v.to_string(), "C": c.to_string()}),
                    );
                }
                KappaName::Table => {
                    let (den, rows) = kappa::kappa_table(g)?;
                    let mut text = format!("g = {g}, D = {den}\n");
                    for r in &rows {
                        text.push_str(&format!("({};{})\t{}\t{}\t{}\n", r.m, r.d, r.value, r.decimal, r.scaled));
                    }
                    ctx.emit(text, json!({"g": g, "denominator": den.to_string(), "rows": rows}));
                }
                KappaName::Volume => {
                    let v = kappa::sw_volume(g, n)?;
                    ctx.emit(format!("V_({g},{n}) = {v}\n"), json!(v.to_string()));
                }
                KappaName::Gprs => {
                    let dd = parse_partition(&d)?;
                    let r = kappa::gprs_ratio(g, &dd, digits)?;
                    ctx.emit(format!("ratio at g = {g}: {r}\n"), json!(r));
                }
            }
            Ok(true)
        }
        Cmd::Cache { which, path, xmax } => {
            match which {
                CacheOp::Save => {
                    table.warm(xmax);
                    harness::cache_save(table, &path)?;
                    ctx.emit(format!("saved {} records\n", table.len()), json!({"records": table.len()}));
                }
                CacheOp::Load => {
                    let t = harness::cache_load(&path)?;
                    ctx.emit(
                        format!("loaded {} records, x_max = {}\n", t.len(), t.x_max()),
                        json!({"records": t.len(), "x_max": t.x_max()}),
                    );
                }
            }
            Ok(true)
        }
    }
}
