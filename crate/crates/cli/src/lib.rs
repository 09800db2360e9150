//! Command-line front end for `heiscurve-core`.
//!
//! [`run`] parses arguments, dispatches to the library and writes a report.
//! Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 size
//! guard exceeded (override with `--force` or `HEISCURVE_GUARD`).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use heiscurve::curves::{self, congruence_refutation, rh_genus};
use heiscurve::cuspidal;
use heiscurve::cyclotomic;
use heiscurve::dessin;
use heiscurve::heisenberg::{HeisElement, HeisParams};
use heiscurve::homology;
use heiscurve::nilpotent::LevelParams;
use heiscurve::perm::PermAction;
use heiscurve::psl2;
use heiscurve::words::FreeWord;
use heiscurve::Error;

pub mod output;
pub mod verify;

pub use output::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

pub const GUARD_ENV: &str = "HEISCURVE_GUARD";

#[derive(Debug, Parser)]
#[command(name = "heiscurve", version, about = "Heisenberg coverings of Fermat curves")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Ignore the size guard.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus and cusps of a covering of X(2), from H_{M,N,L} or a permutation pair.
    Genus {
        #[arg(long, requires_all = ["n", "l"], conflicts_with = "action")]
        m: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        l: Option<u64>,
        /// JSON file with {"px": [...], "py": [...]}.
        #[arg(long)]
        action: Option<PathBuf>,
    },
    /// All valid (M,N,L) with M,N <= bound whose curve has the given genus.
    ClassifyGenus {
        #[arg(long, default_value_t = 12)]
        bound: u64,
        #[arg(long)]
        target: i64,
    },
    /// H_1(X'_N; Z) from the modular-symbol presentation.
    Homology {
        #[arg(long)]
        n: u64,
        /// Also compare with the closed-form lattices.
        #[arg(long)]
        closed_form: bool,
    },
    /// Cuspidal divisor class group of the Fermat curve F_N.
    Cuspidal {
        #[arg(long)]
        n: u64,
    },
    /// Identities in Z[mu_N].
    CyclotomicChecks {
        #[arg(long)]
        n: u64,
        /// Include the reduction table above 11 (N = 5 only).
        #[arg(long)]
        mod11: bool,
    },
    /// Dessin of X'_N: writes DOT and prints counts.
    Dessin {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out: PathBuf,
        /// Also write the JSON form.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Finite images in PSL2(Z/n).
    Psl2 {
        /// Modulus.
        #[arg(long)]
        n: u32,
        /// Also report the image of Phi_N (modulus 3 only).
        #[arg(long)]
        phi: Option<u64>,
    },
    /// Level/index certificates for Phi_N and Phi'_N.
    Congruence {
        #[arg(long)]
        n: u64,
    },
    /// Arithmetic in H_{M,N,L}.
    Heisenberg {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        #[arg(value_enum)]
        op: HeisOp,
        /// Element "a,c,b".
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        /// Word in A, a, B, b.
        #[arg(long)]
        word: Option<String>,
    },
    /// Run the acceptance suite.
    Verify {
        /// Smaller samples and no N = 7 homology.
        #[arg(long)]
        quick: bool,
        /// Restrict to these criteria (1-10).
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HeisOp {
    Order,
    Exponent,
    Center,
    Mul,
    Inv,
    Pow,
    ElementOrder,
    Word,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Guard(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Guard { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Guard limit from the environment, defaulting to the library default.
pub fn guard_limit() -> u64 {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(homology::DEFAULT_GUARD)
}

struct Ctx {
    force: bool,
    limit: u64,
}

impl Ctx {
    fn limit(&self) -> u64 {
        if self.force {
            u64::MAX
        } else {
            self.limit
        }
    }

    fn guard(&self, what: &'static str, value: u64) -> CliResult<()> {
        if value > self.limit() {
            return Err(Error::Guard {
                what,
                value,
                limit: self.limit,
            }
            .into());
        }
        Ok(())
    }

    fn guard_cube(&self, n: u64) -> CliResult<()> {
        self.guard("N^3", n.saturating_pow(3))
    }
}

fn to_value<T: Serialize>(v: &T) -> CliResult<Value> {
    Ok(serde_json::to_value(v)?)
}

fn parse_element(p: &HeisParams, s: &str) -> CliResult<HeisElement> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("element {s:?}: {e}")))?;
    match parts[..] {
        [a, c, b] => Ok(p.element(a, c, b)),
        _ => Err(CliError::Usage(format!("element {s:?} must be \"a,c,b\""))),
    }
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> CliResult<T> {
    v.clone()
        .ok_or_else(|| CliError::Usage(format!("--{name} is required for this operation")))
}

fn heisenberg(ctx: &Ctx, p: HeisParams, op: HeisOp, g: &Option<String>, h: &Option<String>, k: Option<i64>, word: &Option<String>) -> CliResult<Value> {
    let params = json!({"M": p.m, "N": p.n, "L": p.l});
    let result = match op {
        HeisOp::Order => json!(p.order()),
        HeisOp::Exponent => {
            ctx.guard("MNL", p.order())?;
            json!({"exponent": p.exponent(), "closed_form": p.closed_form_exponent()})
        }
        HeisOp::Center => json!(p.center_order()),
        HeisOp::Mul => {
            let x = parse_element(&p, &need(g, "g")?)?;
            let y = parse_element(&p, &need(h, "h")?)?;
            to_value(&p.mul(&x, &y))?
        }
        HeisOp::Inv => to_value(&p.inv(&parse_element(&p, &need(g, "g")?)?))?,
        HeisOp::Pow => {
            let x = parse_element(&p, &need(g, "g")?)?;
            to_value(&p.pow(&x, need(&k, "k")?))?
        }
        HeisOp::ElementOrder => json!(p.element_order(&parse_element(&p, &need(g, "g")?)?)),
        HeisOp::Word => {
            let w: FreeWord = need(word, "word")?.parse()?;
            json!({"word": w.to_string(), "image": to_value(&p.from_word(&w))?})
        }
    };
    Ok(json!({"params": params, "op": format!("{op:?}"), "result": result}))
}

fn genus_action(ctx: &Ctx, label: Value, action: &PermAction) -> CliResult<Value> {
    ctx.guard("degree", action.degree() as u64)?;
    let data = rh_genus(action)?;
    let widths = curves::cusp_widths_and_level(action)?;
    Ok(json!({
        "source": label,
        "degree": data.degree,
        "genus": data.genus,
        "cusp_count": data.cusp_count,
        "cusps": to_value(&data.cusps)?,
        "level": widths.level,
    }))
}

fn congruence(ctx: &Ctx, n: u64) -> CliResult<Value> {
    ctx.guard_cube(n)?;
    let lp = LevelParams::new(n)?;
    let phi = HeisParams::new(n, n, 1)?;
    let phi_prime = HeisParams::new(n, n, lp.n_prime)?;
    let cert_phi = congruence_refutation(&phi.regular_action(), phi.order())?;
    let cert_prime = congruence_refutation(&phi_prime.regular_action(), phi_prime.order())?;
    Ok(json!({
        "N": n,
        "Phi_N": to_value(&cert_phi)?,
        "Phi_prime_N": to_value(&cert_prime)?,
    }))
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> CliResult<(Value, i32)> {
    let value = match cmd {
        Command::Genus { m, n, l, action } => match (m, n, l, action) {
            (Some(m), Some(n), Some(l), None) => {
                let p = HeisParams::new(*m, *n, *l)?;
                ctx.guard("MNL", p.order())?;
                let mut v = genus_action(ctx, json!({"M": m, "N": n, "L": l}), &p.regular_action())?;
                v["closed_form_genus"] = json!(curves::genus_closed_form(*m, *n, *l)?);
                v
            }
            (None, None, None, Some(path)) => {
                let text = std::fs::read_to_string(path)?;
                let action: PermAction = serde_json::from_str(&text)?;
                genus_action(ctx, json!(path.display().to_string()), &action)?
            }
            _ => return Err(CliError::Usage("give either --m --n --l or --action".into())),
        },
        Command::ClassifyGenus { bound, target } => {
            ctx.guard("bound^3", bound.saturating_pow(3))?;
            let triples = curves::classify_small_genus(*bound, *target);
            json!({
                "bound": bound,
                "target": target,
                "triples": triples.iter().map(|&(m, n, l)| json!({"M": m, "N": n, "L": l})).collect::<Vec<_>>(),
            })
        }
        Command::Homology { n, closed_form } => {
            let r = homology::homology_report(*n, ctx.limit())?;
            let mut v = to_value(&r)?;
            if *closed_form {
                v["closed_form"] = to_value(&homology::closed_form_check(*n)?)?;
            }
            v
        }
        Command::Cuspidal { n } => {
            ctx.guard_cube(*n)?;
            to_value(&cuspidal::cuspidal_report(*n)?)?
        }
        Command::CyclotomicChecks { n, mod11 } => {
            ctx.guard_cube(*n)?;
            to_value(&cyclotomic::cyclotomic_report(*n, *mod11)?)?
        }
        Command::Dessin { n, out, json: json_path } => {
            ctx.guard_cube(*n)?;
            let d = dessin::x_prime_dessin(*n)?;
            std::fs::write(out, dessin::export_dot(&d))?;
            if let Some(p) = json_path {
                std::fs::write(p, dessin::export_json(&d))?;
            }
            let mut v = json!({
                "N": n,
                "counts": to_value(&d.counts())?,
                "genus": dessin::dessin_genus(&d)?,
                "dot": out.display().to_string(),
            });
            if let Some(p) = json_path {
                v["json"] = json!(p.display().to_string());
            }
            if n % 2 == 1 {
                v["adjacency"] = to_value(&dessin::adjacency_rule_check(*n)?)?;
            }
            v
        }
        Command::Psl2 { n, phi } => {
            let image = psl2::gamma2_image(*n)?;
            let mut v = json!({
                "modulus": n,
                "psl2_order": psl2::psl2_order(*n)?,
                "gamma2_image_order": image.order(),
                "derived_image_order": psl2::derived_closure(&image).order(),
            });
            if n % 2 == 0 {
                v["gamma2_index"] = json!(psl2::gamma2_index_mod(*n)?);
            }
            if let Some(big_n) = phi {
                if *n != 3 {
                    return Err(CliError::Usage("--phi needs modulus 3".into()));
                }
                let s = psl2::phi_image_mod3(*big_n)?;
                v["phi_image"] = json!({"N": big_n, "order": s.order(), "is_d3": s == psl2::d3()});
            }
            v
        }
        Command::Congruence { n } => congruence(ctx, *n)?,
        Command::Heisenberg { m, n, l, op, g, h, k, word } => {
            heisenberg(ctx, HeisParams::new(*m, *n, *l)?, *op, g, h, *k, word)?
        }
        Command::Verify { quick, criteria } => {
            if let Some(bad) = criteria.iter().find(|&&c| !(1..=10).contains(&c)) {
                return Err(CliError::Usage(format!("criterion {bad} is not in 1-10")));
            }
            let report = verify::run_criteria(*quick, criteria);
            let code = if report.ok() { EXIT_OK } else { EXIT_FAIL };
            return Ok((to_value(&report)?, code));
        }
    };
    Ok((value, EXIT_OK))
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let ctx = Ctx {
        force: cli.force,
        limit: guard_limit(),
    };
    let is_verify = matches!(cli.command, Command::Verify { .. });
    match dispatch(&ctx, &cli.command) {
        Ok((value, code)) => {
            let text = if is_verify && cli.format == Format::Text {
                output::verify_text(&value)
            } else {
                output::render(&value, cli.format)
            };
            if writeln!(out, "{}", text.trim_end()).is_err() {
                return EXIT_FAIL;
            }
            code
        }
        Err(e) => {
            let (code, msg) = match e {
                CliError::Usage(m) => (EXIT_USAGE, m),
                CliError::Guard(m) => (EXIT_GUARD, format!("{m} (use --force or set {GUARD_ENV})")),
                CliError::Io(m) => (EXIT_USAGE, m),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
