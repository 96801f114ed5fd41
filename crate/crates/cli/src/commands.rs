//! Subcommand definitions and dispatch.

use clap::{Args, Parser, Subcommand, ValueEnum};
use extfd::extbessel::{generating_bilateral, generating_shift, BesselParams, EvalRoute, ExtBessel};
use extfd::exthyp::{ext_beta_quad, ExtBetaParams};
use extfd::fracdiff::{complex_pfd, ext_frac_deriv_quad, frac_deriv_rational, ExtFracParams};
use extfd::numkernel::QuadConfig;
use extfd::transforms::{
    laplace_ext_bessel_closed, laplace_ext_bessel_numeric, mellin_1f1_closed, mellin_ext_bessel_negated,
    mellin_1f1_check, mellin_ext_bessel_numeric, mellin_ext_beta_closed, mellin_ext_beta_numeric,
};
use extfd::extbessel::Form;
use extfd::C64;

use crate::audit;
use crate::emit::{self, Format, Record};
use crate::error::CliError;
use crate::parse::parse_rational;

#[derive(Debug, Parser)]
#[command(name = "extfd", version, about = "Extended Bessel, beta and fractional-derivative toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Significant digits, 1 to 17.
    #[arg(long, global = true, default_value_t = 16)]
    pub precision: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// I_v(q;x), or one of its generating sums.
    Eval(EvalArgs),
    /// The extended beta function B_{v,q}^{(mu,sigma)}(x,y;p).
    Beta(BetaArgs),
    /// Extended fractional derivative of a rational expression.
    Fd(FdArgs),
    /// Complex partial fractions of a rational expression.
    Pfd(PfdArgs),
    /// Mellin transforms.
    Mellin(MellinArgs),
    /// Laplace transform of I_v(q;x).
    Laplace(LaplaceArgs),
    /// Check the published identities.
    Audit(AuditArgs),
    /// I_v(q;x) on a uniform grid, as CSV.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generating {
    Bilateral,
    Shift,
}

#[derive(Debug, Args)]
pub struct Order {
    #[arg(long, allow_hyphen_values = true)]
    pub v: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub order: Order,
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
    #[arg(long, default_value = "integral")]
    pub route: EvalRoute,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum)]
    pub generating: Option<Generating>,
    /// z for the bilateral sum.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// t for the shift sum.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, default_value_t = 40)]
    pub truncate: usize,
}

#[derive(Debug, Args)]
pub struct BetaParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: f64,
    #[command(flatten)]
    pub order: Order,
}

#[derive(Debug, Args)]
pub struct BetaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[command(flatten)]
    pub params: BetaParamArgs,
    #[arg(long, default_value = "integral")]
    pub route: EvalRoute,
}

#[derive(Debug, Args)]
pub struct FdArgs {
    pub expr: String,
    #[arg(long, allow_hyphen_values = true)]
    pub at: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: String,
    #[command(flatten)]
    pub params: BetaParamArgs,
    /// `series` uses the partial-fraction closed form, `integral` the operator
    /// quadrature.
    #[arg(long, default_value = "series")]
    pub route: EvalRoute,
}

#[derive(Debug, Args)]
pub struct PfdArgs {
    pub expr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MellinOf {
    /// I_v(q;-x), the convergent reading.
    Bessel,
    Kummer,
    Beta,
}

#[derive(Debug, Args)]
pub struct MellinArgs {
    #[arg(long, value_enum, default_value = "bessel")]
    pub of: MellinOf,
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// 1F1 parameters.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Extended beta arguments and parameters.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// `hyp` for the closed form, `integral` for quadrature.
    #[arg(long, default_value = "hyp")]
    pub route: EvalRoute,
}

#[derive(Debug, Args)]
pub struct LaplaceArgs {
    #[command(flatten)]
    pub order: Order,
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, default_value = "hyp")]
    pub route: EvalRoute,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Identity ids, or `all`.
    pub ids: Vec<String>,
    /// Print the identity ids and exit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub order: Order,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[arg(long, default_value = "integral")]
    pub route: EvalRoute,
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(text: &str) -> Result<C64, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Usage(format!("'{text}' is not a number of the form a, bi or a+bi"));
    let real = |t: &str| -> Result<f64, CliError> {
        let x: f64 = t.parse().map_err(|_| bad())?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(bad())
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(C64::new(real(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(t)?,
    };
    Ok(C64::new(re, im))
}

fn order(o: &Order) -> Result<BesselParams, CliError> {
    Ok(BesselParams::new(parse_complex(&o.v)?, parse_complex(&o.q)?))
}

fn tolerance(tol: Option<f64>) -> Result<Option<QuadConfig>, CliError> {
    match tol {
        None => Ok(None),
        Some(t) if t.is_finite() && t > 0.0 => Ok(Some(QuadConfig::with_tol(t))),
        Some(t) => Err(CliError::Usage(format!("--tol must be positive, got {t}"))),
    }
}

fn bessel(params: BesselParams, route: EvalRoute, tol: Option<f64>) -> Result<ExtBessel, CliError> {
    let b = ExtBessel::new(params, route)?;
    Ok(match tolerance(tol)? {
        Some(q) => b.with_quad(q),
        None => b,
    })
}

fn beta_params(a: &BetaParamArgs) -> Result<ExtBetaParams, CliError> {
    let o = order(&a.order)?;
    let params = ExtBetaParams::new(o.v, o.q, parse_complex(&a.p)?, a.mu, a.sigma);
    params.validate()?;
    Ok(params)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("--{flag} is required here")))
}

/// Runs one invocation and returns (stdout text, exit code).
pub fn run(cli: &Cli) -> Result<(String, i32), CliError> {
    emit::check_precision(cli.precision)?;
    let (fmt, prec) = (cli.format, cli.precision);
    let record = |r: Record| emit::emit_record(&r, fmt, prec).map(|s| (s, 0));
    match &cli.command {
        Command::Eval(a) => {
            let params = order(&a.order)?;
            let x = parse_complex(&a.at)?;
            match a.generating {
                None => {
                    let e = bessel(params, a.route, a.tol)?.eval_full(x)?;
                    record(Record::from_quad(&e.quad_result(), a.route.name()))
                }
                Some(Generating::Bilateral) => {
                    let z = parse_complex(required(&a.z, "z")?)?;
                    let v = generating_bilateral(x, z, a.truncate)?;
                    record(Record::exact(v, format!("bilateral sum, |n| <= {}", a.truncate)))
                }
                Some(Generating::Shift) => {
                    let t = parse_complex(required(&a.t, "t")?)?;
                    let v = generating_shift(params, x, t, a.truncate)?;
                    record(Record::exact(v, format!("shift sum, k < {}", a.truncate + 1)))
                }
            }
        }
        Command::Beta(a) => {
            let params = beta_params(&a.params)?;
            let q = ext_beta_quad(parse_complex(&a.x)?, parse_complex(&a.y)?, &params, a.route)?;
            record(Record::from_quad(&q, format!("integral, kernel {}", a.route.name())))
        }
        Command::Fd(a) => {
            let parsed = parse_rational(&a.expr)?;
            let b = beta_params(&a.params)?;
            let params = ExtFracParams {
                alpha: parse_complex(&a.alpha)?,
                eta: parse_complex(&a.eta)?,
                p: b.p,
                mu: b.mu,
                sigma: b.sigma,
                v: b.v,
                q: b.q,
            };
            let z = parse_complex(&a.at)?;
            match a.route {
                EvalRoute::Integral => {
                    if z.im != 0.0 || z.re <= 0.0 {
                        return Err(CliError::Usage("the integral route needs a positive real --at".into()));
                    }
                    let rf = parsed.rf;
                    let q = ext_frac_deriv_quad(|t| Ok(rf.eval(&C64::new(t, 0.0))), z, &params)?;
                    record(Record::from_quad(&q, "integral"))
                }
                _ => {
                    let d = frac_deriv_rational(&parsed.rf, z, &params)?;
                    let mut r = Record::exact(d.value, "partial fractions");
                    r.branch_notes = d.warnings.iter().map(|w| w.message.clone()).collect();
                    record(r)
                }
            }
        }
        Command::Pfd(a) => {
            let parsed = parse_rational(&a.expr)?;
            Ok((emit::emit_pfd(&complex_pfd(&parsed.rf), fmt, prec)?, 0))
        }
        Command::Mellin(a) => {
            let s = parse_complex(&a.s)?;
            let numeric = a.route == EvalRoute::Integral;
            match a.of {
                MellinOf::Bessel => {
                    let p = BesselParams::new(
                        parse_complex(required(&a.v, "v")?)?,
                        parse_complex(required(&a.q, "q")?)?,
                    );
                    if numeric {
                        record(Record::from_quad(&mellin_ext_bessel_numeric(p, s)?, "integral"))
                    } else {
                        record(Record::exact(mellin_ext_bessel_negated(p, s)?, "closed"))
                    }
                }
                MellinOf::Kummer => {
                    let al = parse_complex(required(&a.a, "a")?)?;
                    let be = parse_complex(required(&a.b, "b")?)?;
                    if numeric {
                        let q = mellin_1f1_check(al, be, s)?.numeric;
                        record(Record::from_quad(&q, "integral"))
                    } else {
                        record(Record::exact(mellin_1f1_closed(al, be, s)?, "closed"))
                    }
                }
                MellinOf::Beta => {
                    let o = BesselParams::new(
                        parse_complex(required(&a.v, "v")?)?,
                        parse_complex(required(&a.q, "q")?)?,
                    );
                    let p = parse_complex(required(&a.p, "p")?)?;
                    let (mu, sigma) = match (a.mu, a.sigma) {
                        (Some(m), Some(g)) => (m, g),
                        _ => return Err(CliError::Usage("--mu and --sigma are required here".into())),
                    };
                    let params = ExtBetaParams::new(o.v, o.q, p, mu, sigma);
                    params.validate()?;
                    let x = parse_complex(required(&a.x, "x")?)?;
                    let y = parse_complex(required(&a.y, "y")?)?;
                    if numeric {
                        record(Record::from_quad(&mellin_ext_beta_numeric(x, y, &params, s)?, "integral"))
                    } else {
                        record(Record::exact(mellin_ext_beta_closed(x, y, &params, s, Form::Corrected)?, "closed"))
                    }
                }
            }
        }
        Command::Laplace(a) => {
            let p = order(&a.order)?;
            let s = parse_complex(&a.s)?;
            if a.route == EvalRoute::Integral {
                record(Record::from_quad(&laplace_ext_bessel_numeric(p, s)?, "integral"))
            } else {
                record(Record::exact(laplace_ext_bessel_closed(p, s)?, "closed"))
            }
        }
        Command::Audit(a) => {
            if a.list {
                let ids: Vec<&str> = audit::IDENTITIES.iter().map(|i| i.id).collect();
                return Ok((ids.join("\n") + "\n", 0));
            }
            let records = audit::run_audit(&a.ids)?;
            Ok((audit::emit_audit(&records, fmt, prec)?, audit::exit_code(&records)))
        }
        Command::Table(a) => table(a, prec).map(|s| (s, 0)),
    }
}

fn table(a: &TableArgs, prec: usize) -> Result<String, CliError> {
    if a.steps < 2 || !(a.from.is_finite() && a.to.is_finite()) {
        return Err(CliError::Usage("table needs finite --from/--to and --steps >= 2".into()));
    }
    let b = bessel(order(&a.order)?, a.route, a.tol)?;
    let xs: Vec<f64> = (0..a.steps)
        .map(|k| a.from + (a.to - a.from) * k as f64 / (a.steps - 1) as f64)
        .collect();
    let rows: Vec<Result<String, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = xs
            .iter()
            .map(|&x| {
                let b = &b;
                scope.spawn(move || {
                    let e = b.eval_full(C64::new(x, 0.0))?;
                    let r = Record::from_quad(&e.quad_result(), a.route.name());
                    Ok(format!("{},{}", emit::num(x, prec), emit::record_csv_row(&r, prec)))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("table worker panicked")).collect()
    });
    let mut out = format!("x,{}\n", emit::RECORD_HEADER);
    for row in rows {
        out.push_str(&row?);
        out.push('\n');
    }
    Ok(out)
}
