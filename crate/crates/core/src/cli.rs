//! Command-line interface.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error (including a
//! game-count guard overrun).

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::exactalg::text::laurent_to_latex;
use crate::exactalg::{to_latex, to_text, MPoly, RLaurent, RatMPoly};
use crate::games::{
    bar_order_dag, barmon_games, barmon_recursion, barmon_transition, check_guard, count_games, enumerate_games,
    game_tree_dot, game_weight, BarMonomialCache,
};
use crate::interp::{Family, JackContext};
use crate::shapes::{Composition, Partition};
use crate::verify::{Suite, DEFAULT_GUARD};

#[derive(Parser, Debug)]
#[command(name = "barmon", version, about = "Bar monomials, bar games and interpolation Jack polynomials")]
pub struct Cli {
    /// Number of variables (required by every command).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of games to enumerate for one shape.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    pub guard: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Games,
    Transition,
    Recursion,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GamesAction {
    List,
    Count,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Alpha,
    Rdelta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Letter {
    E,
    F,
    J,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Raw,
    Scaled,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the bar monomial x^{bar eta}.
    Compute {
        #[arg(long)]
        eta: String,
        #[arg(long, value_enum, default_value_t = Method::Transition)]
        method: Method,
    },
    /// Enumerate, count or draw the bar games on eta.
    Games {
        #[arg(value_enum)]
        action: GamesAction,
        #[arg(long)]
        eta: String,
    },
    /// Print a member of a polynomial family.
    Interp {
        #[arg(value_enum, ignore_case = true)]
        family: Letter,
        #[arg(value_enum)]
        variant: Variant,
        #[arg(long)]
        index: String,
    },
    /// Run a verification suite (or `all`).
    Audit(AuditArgs),
    /// Evaluate a binomial coefficient (-r)^{|lambda|} J^{r delta}_lambda(-mu - r delta).
    Binomial {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(value_enum, default_value_t = Mode::Scaled)]
        mode: Mode,
        /// `F` evaluates F^{r delta}_lambda at -bar mu for compositions.
        #[arg(long, value_enum, ignore_case = true, default_value_t = Letter::J)]
        family: Letter,
    },
    /// Export the bar order on {gamma : |gamma| <= max_norm} as DOT.
    Poset {
        #[arg(long)]
        max_norm: u32,
    },
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    /// Suite name: theoremA, theoremB, theoremC, vanishing, cross, lemma,
    /// uniqueness, structural, intertwining, or all.
    pub suite: String,
    #[arg(long)]
    pub max_norm: u32,
}

enum Outcome {
    Ok,
    CheckFailed,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn parse_comp(s: &str, n: usize) -> Result<Composition> {
    let c: Composition = s.parse()?;
    if c.n() != n {
        return Err(Error::Parse(format!("{s:?} has {} parts but --n is {n}", c.n())));
    }
    Ok(c)
}

fn render_poly(p: &MPoly, format: Format) -> String {
    match format {
        Format::Text => to_text(p),
        Format::Json => serde_json::to_string(p).expect("MPoly serializes"),
        Format::Latex => to_latex(p),
    }
}

fn render_laurent(c: &RLaurent, format: Format) -> String {
    match format {
        Format::Text => c.to_string(),
        Format::Json => serde_json::to_string(c).expect("RLaurent serializes"),
        Format::Latex => laurent_to_latex(c),
    }
}

fn render_rat(p: &RatMPoly, format: Format) -> String {
    if let Some(m) = p.to_mpoly() {
        return render_poly(&m, format);
    }
    match format {
        Format::Text => p.to_string(),
        Format::Json => serde_json::json!({ "num": p.num(), "den": p.den() }).to_string(),
        Format::Latex => format!("\\frac{{{}}}{{{}}}", to_latex(p.num()), laurent_to_latex(p.den())),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::CheckFailed) => 1,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::result::Result<Outcome, Usage> {
    let n = match cli.n {
        Some(n) if n >= 1 => n,
        Some(_) => return Err(Usage("--n must be at least 1".into())),
        None => return Err(Usage("--n is required".into())),
    };
    let fmt = cli.format;
    let guard_hint = |e: Error| match e {
        Error::GuardExceeded(g) => Usage(format!(
            "more than {g} games; raise --guard or use --method transition"
        )),
        e => Usage(e.to_string()),
    };
    let w = |out: &mut dyn Write, s: String| {
        let _ = writeln!(out, "{s}");
    };
    match &cli.command {
        Command::Compute { eta, method } => {
            let eta = parse_comp(eta, n)?;
            let cache = BarMonomialCache::new(n);
            let result = match method {
                Method::Games => {
                    check_guard(&eta, cli.guard).map_err(guard_hint)?;
                    barmon_games(&eta)
                }
                Method::Transition => barmon_transition(&eta, &cache),
                Method::Recursion => barmon_recursion(&eta),
                Method::All => {
                    let t = barmon_transition(&eta, &cache);
                    let r = barmon_recursion(&eta);
                    let g = match check_guard(&eta, cli.guard) {
                        Ok(()) => Some(barmon_games(&eta)),
                        Err(_) => {
                            let _ = writeln!(err, "note: game enumeration skipped (guard {})", cli.guard);
                            None
                        }
                    };
                    let mut ok = r == t;
                    if !ok {
                        let _ = writeln!(err, "transition: {}\nrecursion:  {}", to_text(&t), to_text(&r));
                    }
                    if let Some(g) = g.filter(|g| *g != t) {
                        ok = false;
                        let _ = writeln!(err, "transition: {}\ngames:      {}", to_text(&t), to_text(&g));
                    }
                    if !ok {
                        return Ok(Outcome::CheckFailed);
                    }
                    t
                }
            };
            w(out, render_poly(&result, fmt));
        }
        Command::Games { action, eta } => {
            let eta = parse_comp(eta, n)?;
            match action {
                GamesAction::Count => w(out, count_games(&eta).to_string()),
                GamesAction::Dot => w(out, game_tree_dot(&eta, cli.guard).map_err(guard_hint)?),
                GamesAction::List => {
                    check_guard(&eta, cli.guard).map_err(guard_hint)?;
                    match fmt {
                        Format::Json => {
                            let games: Vec<_> = enumerate_games(&eta).collect();
                            w(out, serde_json::to_string_pretty(&games).expect("games serialize"));
                        }
                        _ => {
                            for (i, g) in enumerate_games(&eta).enumerate() {
                                let shapes: Vec<String> = g.shapes().iter().map(|c| format!("({c})")).collect();
                                let weight = match fmt {
                                    Format::Latex => to_latex(&game_weight(&g)),
                                    _ => to_text(&game_weight(&g)),
                                };
                                w(out, format!("{i}: {} | {weight}", shapes.join(" > ")));
                            }
                        }
                    }
                }
            }
        }
        Command::Interp { family, variant, index } => {
            let letter = format!("{family:?}");
            let variant = format!("{variant:?}");
            let fam = Family::from_parts(&letter, &variant)?;
            let index = parse_comp(index, n)?;
            let ctx = JackContext::new(n);
            let entry = ctx.entry(fam, &index)?;
            match fmt {
                Format::Json => w(out, serde_json::to_string(&entry).expect("entry serializes")),
                _ => w(out, render_rat(&entry.value, fmt)),
            }
        }
        Command::Audit(a) => {
            let suites: Vec<Suite> = if a.suite.eq_ignore_ascii_case("all") {
                Suite::ALL.to_vec()
            } else {
                vec![a.suite.parse()?]
            };
            let mut passed = true;
            let mut reports = Vec::new();
            for s in suites {
                let rep = s.run(a.max_norm, n, cli.guard);
                passed &= rep.passed();
                reports.push(rep);
            }
            match fmt {
                Format::Json => w(
                    out,
                    if reports.len() == 1 {
                        reports[0].to_json()
                    } else {
                        serde_json::to_string_pretty(&reports).expect("reports serialize")
                    },
                ),
                _ => {
                    for r in &reports {
                        let _ = write!(out, "{}", r.to_text());
                    }
                }
            }
            if !passed {
                return Ok(Outcome::CheckFailed);
            }
        }
        Command::Binomial {
            lambda,
            mu,
            mode,
            family,
        } => {
            let ctx = JackContext::new(n);
            let lam = parse_comp(lambda, n)?;
            let mu = parse_comp(mu, n)?;
            let scaled = *mode == Mode::Scaled;
            let value = match family {
                Letter::J => ctx.binomial_value(&Partition::new(lam)?, &Partition::new(mu)?, scaled)?,
                Letter::F => {
                    let raw = ctx.f_rdelta_at_neg_rho(&lam, &mu)?;
                    if scaled {
                        let mut s = RLaurent::r_pow(lam.size() as i32);
                        if lam.size() % 2 == 1 {
                            s = -s;
                        }
                        raw * s
                    } else {
                        raw
                    }
                }
                other => return Err(Usage(format!("binomial supports --family J or F, not {other:?}"))),
            };
            w(out, render_laurent(&value, fmt));
        }
        Command::Poset { max_norm } => {
            let dag = bar_order_dag(*max_norm, n);
            match fmt {
                Format::Json => w(out, serde_json::to_string(&dag).expect("dag serializes")),
                _ => {
                    let _ = write!(out, "{}", dag.to_dot());
                }
            }
        }
    }
    Ok(Outcome::Ok)
}
