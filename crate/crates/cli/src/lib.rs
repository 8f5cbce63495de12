//! Command-line front end for `computable-chaos`.
//!
//! [`run`] parses an argument vector, calls the library, and returns a
//! [`CommandResult`] whose status maps onto the process exit code. Every
//! subcommand is a thin adapter: the values it prints are the library's
//! outputs, formatted as exact rationals (with an optional truncated decimal
//! column when `--decimals` is given).

pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use computable_chaos::baker::{baker_creal_fn, baker_orbit, baker_step, sensitivity_witness};
use computable_chaos::discrete::{detect_cycle, grid_orbit, grid_table, min_separation_eta, GridState};
use computable_chaos::encoding::{decode_rational, encode_rational, translate, EncodingId};
use computable_chaos::limit::{diss_iter_approx, discontinuity_witness, first_date_below, limit_state};
use computable_chaos::measured::{reach_n, successors_with_witnesses, Readout};
use computable_chaos::murec::{conjugate_eval, corpus, EvalOutcome, RecFn};
use computable_chaos::realfn::{apply, CReal};
use computable_chaos::selfcheck;
use computable_chaos::{Error, Natural, Rational};

pub use output::{Document, Field, Format, Status, Table};

#[derive(Debug, Parser)]
#[command(
    name = "computable-chaos",
    version,
    about = "Computable yet unpredictable: exact experiments with the tent-shaped baker map",
    long_about = "Computes the relation between the initial state of a dynamical system and \
its state at a finite date, exactly, in three readings: real positions, finitely many \
positions, and positions seen through a finite-precision measuring device. Also provides \
the supporting encodings of rationals, partial recursive functions, and a dissipative \
system whose limit state is discontinuous."
)]
struct Cli {
    /// Seed for every sampled property check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Step budget for partial recursive evaluation.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    fuel: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Kv)]
    format: Format,

    /// Add truncated decimal expansions with this many digits.
    #[arg(long, global = true)]
    decimals: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode a rational as a natural number.
    Encode {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        rational: Rational,
        #[arg(long, value_parser = parse_encoding, default_value = "canonical")]
        encoding: EncodingId,
    },
    /// Decode a natural number back into a rational.
    Decode {
        #[arg(long, value_parser = parse_natural)]
        code: Natural,
        #[arg(long, value_parser = parse_encoding, default_value = "canonical")]
        encoding: EncodingId,
    },
    /// Re-encode a code from one encoding into the other.
    Translate {
        #[arg(long, value_parser = parse_natural)]
        code: Natural,
        #[arg(long, value_parser = parse_encoding)]
        from: EncodingId,
        #[arg(long, value_parser = parse_encoding)]
        to: EncodingId,
    },
    /// Evaluate a partial recursive program.
    MurecEval(MurecArgs),
    /// One step of the baker map.
    BakerStep {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        x: Rational,
    },
    /// Orbit b^k(x) for k = 0..n.
    BakerOrbit {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long)]
        n: u32,
    },
    /// Approximate b^n(x) to within eps through the computable-real interface.
    BakerApprox {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        x: Rational,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        eps: Rational,
    },
    /// Two starting points within eta that reach a and ap after n steps.
    Sensitivity {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        eta: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        ap: Rational,
    },
    /// Orbit of a grid state and the cycle it falls into.
    GridSim {
        #[arg(long)]
        resolution: u64,
        #[arg(long)]
        index: u64,
        #[arg(long)]
        steps: u64,
    },
    /// The complete step table of a grid.
    GridTable {
        #[arg(long)]
        resolution: u64,
    },
    /// Readouts that can follow a readout.
    MeasuredSucc {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        readout: String,
        /// Also list a position in the readout's cell realizing each successor.
        #[arg(long)]
        witnesses: bool,
    },
    /// Readouts reachable from a readout in exactly n steps.
    MeasuredReach {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        readout: String,
        #[arg(long)]
        steps: u32,
    },
    /// Limit states of x -> x^2: discontinuity witnesses and convergence table.
    LimitDemo {
        #[arg(long, value_parser = parse_rational, default_value = "9/10")]
        x: Rational,
        /// Last date of the convergence table.
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        /// Accuracy of the convergence table entries.
        #[arg(long, value_parser = parse_rational, default_value = "1/1000000")]
        eps: Rational,
        #[arg(long, value_parser = parse_rational, default_value = "1/1000")]
        threshold: Rational,
        /// Witnesses are produced for eta = 10^-1 .. 10^-max_exp.
        #[arg(long, default_value_t = 6)]
        max_exp: u32,
    },
    /// Run the built-in property suites.
    Check,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "source")]
struct MurecSource {
    /// Program file.
    #[arg(long)]
    program: Option<PathBuf>,
    /// Shipped program: add, mul, pred, monus, sign.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Debug, Args)]
struct MurecArgs {
    #[command(flatten)]
    source: MurecSource,
    /// Comma-separated natural arguments.
    #[arg(long, conflicts_with = "rationals", allow_hyphen_values = true)]
    args: Option<String>,
    /// Comma-separated rational arguments, passed through the canonical encoding.
    #[arg(long, allow_hyphen_values = true)]
    rationals: Option<String>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_natural(s: &str) -> Result<Natural, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a natural number: {s:?}"));
    }
    s.parse().map_err(|_| format!("not a natural number: {s:?}"))
}

fn parse_encoding(s: &str) -> Result<EncodingId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of one invocation.
#[derive(Debug, Clone)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Document,
    pub format: Format,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn render(&self) -> String {
        self.payload.render(self.format)
    }
}

fn status_of(err: &Error) -> Status {
    match err {
        Error::NotACode(_) => Status::NotACode,
        Error::Diverged { .. } => Status::Diverged,
        Error::Parse(_) => Status::UsageError,
        Error::IllFormed(_)
        | Error::ArityMismatch { .. }
        | Error::Domain(_)
        | Error::InvalidState(_) => Status::DomainError,
    }
}

/// Runs one command line. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Status::Ok,
                _ => Status::UsageError,
            };
            let mut payload = Document::new();
            if status != Status::Ok {
                payload.scalar("status", status.name());
            }
            payload.text("message", e.render().to_string());
            return CommandResult {
                status,
                payload,
                format: Format::Kv,
            };
        }
    };

    let ctx = Ctx {
        decimals: cli.decimals,
    };
    let name = command_name(&cli.command);
    let mut payload = Document::new();
    payload.scalar("command", name);
    let status = match dispatch(&cli, &ctx) {
        Ok((status, body)) => {
            payload.scalar("status", status.name());
            for (k, f) in body.entries() {
                push_field(&mut payload, k, f.clone());
            }
            status
        }
        Err(err) => {
            let status = status_of(&err);
            payload.scalar("status", status.name());
            if let Error::Diverged { fuel } = err {
                payload.scalar("fuel_spent", fuel);
            }
            payload.scalar("error", err);
            status
        }
    };
    CommandResult {
        status,
        payload,
        format: cli.format,
    }
}

fn push_field(doc: &mut Document, key: &str, field: Field) {
    match field {
        Field::Scalar(s) => doc.scalar(key, s),
        Field::List(items) => doc.list(key, items),
        Field::Table(t) => doc.table(key, t),
        Field::Text(t) => doc.text(key, t),
    };
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Encode { .. } => "encode",
        Command::Decode { .. } => "decode",
        Command::Translate { .. } => "translate",
        Command::MurecEval(_) => "murec-eval",
        Command::BakerStep { .. } => "baker-step",
        Command::BakerOrbit { .. } => "baker-orbit",
        Command::BakerApprox { .. } => "baker-approx",
        Command::Sensitivity { .. } => "sensitivity",
        Command::GridSim { .. } => "grid-sim",
        Command::GridTable { .. } => "grid-table",
        Command::MeasuredSucc { .. } => "measured-succ",
        Command::MeasuredReach { .. } => "measured-reach",
        Command::LimitDemo { .. } => "limit-demo",
        Command::Check => "check",
    }
}

struct Ctx {
    decimals: Option<u32>,
}

impl Ctx {
    /// `key=r`, plus `key_decimal=...` when decimals were requested.
    fn rational(&self, doc: &mut Document, key: &str, r: &Rational) {
        doc.scalar(key, r);
        if let Some(k) = self.decimals {
            doc.scalar(&format!("{key}_decimal"), r.to_decimal(k));
        }
    }

    fn columns<'a>(&self, base: &[&'a str]) -> Vec<&'a str> {
        let mut cols = base.to_vec();
        if self.decimals.is_some() {
            cols.push("decimal");
        }
        cols
    }

    /// Row cells ending in `r`, with its decimal form appended if requested.
    fn row(&self, mut cells: Vec<String>, r: &Rational) -> Vec<String> {
        cells.push(r.to_string());
        if let Some(k) = self.decimals {
            cells.push(r.to_decimal(k));
        }
        cells
    }
}

type Outcome = Result<(Status, Document), Error>;

fn ok(doc: Document) -> Outcome {
    Ok((Status::Ok, doc))
}

fn dispatch(cli: &Cli, ctx: &Ctx) -> Outcome {
    let mut doc = Document::new();
    match &cli.command {
        Command::Encode { rational, encoding } => {
            doc.scalar("rational", rational)
                .scalar("encoding", encoding)
                .scalar("code", encode_rational(rational, *encoding));
            ok(doc)
        }
        Command::Decode { code, encoding } => {
            let r = decode_rational(code, *encoding)?;
            doc.scalar("code", code).scalar("encoding", encoding);
            ctx.rational(&mut doc, "rational", &r);
            doc.scalar("sign", r.sign_bit())
                .scalar("num", r.numer_abs())
                .scalar("den", r.denom());
            ok(doc)
        }
        Command::Translate { code, from, to } => {
            let out = translate(code, *from, *to)?;
            doc.scalar("from", from)
                .scalar("to", to)
                .scalar("input", code)
                .scalar("rational", decode_rational(code, *from)?)
                .scalar("code", out);
            ok(doc)
        }
        Command::MurecEval(args) => murec_eval(args, cli.fuel, ctx),
        Command::BakerStep { x } => {
            let y = baker_step(x)?;
            ctx.rational(&mut doc, "x", x);
            ctx.rational(&mut doc, "value", &y);
            ok(doc)
        }
        Command::BakerOrbit { x, n } => {
            let orbit = baker_orbit(x, *n)?;
            let mut table = Table::new(ctx.columns(&["k", "value"]));
            for (k, v) in orbit.iter().enumerate() {
                table.push(ctx.row(vec![k.to_string()], v));
            }
            doc.scalar("x", x).scalar("n", n).table("orbit", table);
            ok(doc)
        }
        Command::BakerApprox { x, n, eps } => {
            let f = baker_creal_fn(*n);
            let value = apply(&f, &CReal::from_rational(x.clone()), eps)?;
            doc.scalar("x", x).scalar("n", n).scalar("eps", eps);
            doc.scalar("eta", f.modulus(eps));
            ctx.rational(&mut doc, "value", &value);
            ok(doc)
        }
        Command::Sensitivity { eta, a, ap } => {
            let w = sensitivity_witness(eta, a, ap)?;
            w.verify()?;
            doc.scalar("eta", &w.eta).scalar("a", &w.a).scalar("ap", &w.ap);
            doc.scalar("n", w.n);
            ctx.rational(&mut doc, "x0", &w.x0);
            ctx.rational(&mut doc, "x0p", &w.x0p);
            doc.scalar("distance", (&w.x0 - &w.x0p).abs())
                .scalar("final_distance", (&w.a - &w.ap).abs());
            ok(doc)
        }
        Command::GridSim {
            resolution,
            index,
            steps,
        } => {
            let start = GridState::new(*resolution, *index)?;
            let cycle = detect_cycle(start)?;
            let mut table = Table::new(ctx.columns(&["k", "index", "position"]));
            for (k, s) in grid_orbit(start, *steps)?.iter().enumerate() {
                table.push(ctx.row(vec![k.to_string(), s.index().to_string()], &s.position()));
            }
            doc.scalar("resolution", resolution)
                .scalar("index", index)
                .scalar("steps", steps)
                .scalar("eta", min_separation_eta(*resolution)?)
                .scalar("cycle_entry", cycle.entry)
                .scalar("cycle_length", cycle.length)
                .table("orbit", table);
            ok(doc)
        }
        Command::GridTable { resolution } => {
            let mut table = Table::new(["index", "next"]);
            for (i, j) in grid_table(*resolution)? {
                table.push(vec![i.to_string(), j.to_string()]);
            }
            doc.scalar("resolution", resolution)
                .scalar("states", resolution + 1)
                .table("table", table);
            ok(doc)
        }
        Command::MeasuredSucc {
            d,
            readout,
            witnesses,
        } => {
            let m = Readout::parse(readout, *d)?;
            let succ = successors_with_witnesses(m)?;
            doc.scalar("d", d)
                .scalar("readout", m)
                .list("successors", succ.iter().map(|s| s.readout));
            if *witnesses {
                let mut table = Table::new(ctx.columns(&["successor", "witness"]));
                for s in &succ {
                    table.push(ctx.row(vec![s.readout.to_string()], &s.witness));
                }
                doc.table("witnesses", table);
            }
            ok(doc)
        }
        Command::MeasuredReach { d, readout, steps } => {
            let m = Readout::parse(readout, *d)?;
            let reach = reach_n(m, *steps)?;
            doc.scalar("d", d)
                .scalar("readout", m)
                .scalar("steps", steps)
                .scalar("count", reach.len())
                .list("reachable", reach.readouts());
            ok(doc)
        }
        Command::LimitDemo {
            x,
            max_n,
            eps,
            threshold,
            max_exp,
        } => {
            let mut witnesses = Table::new(["eta", "x", "xp", "limit_x", "limit_xp", "gap"]);
            for j in 1..=*max_exp {
                let w = discontinuity_witness(&Rational::inv_pow10(j))?;
                w.verify()?;
                witnesses.push(vec![
                    w.eta.to_string(),
                    w.x.to_string(),
                    w.xp.to_string(),
                    limit_state(&w.x)?.to_string(),
                    limit_state(&w.xp)?.to_string(),
                    w.gap.to_string(),
                ]);
            }
            let mut table = Table::new(ctx.columns(&["n", "approx"]));
            for n in 0..=*max_n {
                let v = diss_iter_approx(x, n, eps)?;
                table.push(ctx.row(vec![n.to_string()], &v));
            }
            doc.scalar("x", x)
                .scalar("limit", limit_state(x)?)
                .scalar("eps", eps)
                .scalar("threshold", threshold);
            match first_date_below(x, threshold, *max_n)? {
                Some(n) => doc.scalar("first_date_below", n),
                None => doc.scalar("first_date_below", "none"),
            };
            doc.table("witnesses", witnesses).table("convergence", table);
            ok(doc)
        }
        Command::Check => {
            let outcomes = selfcheck::run_all(cli.seed);
            let mut table = Table::new(["suite", "result", "detail"]);
            for o in &outcomes {
                table.push(vec![
                    o.name.to_string(),
                    if o.passed() { "pass" } else { "fail" }.to_string(),
                    o.failure.clone().unwrap_or_else(|| "-".into()),
                ]);
            }
            let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.name).collect();
            doc.scalar("seed", cli.seed)
                .scalar("suites", outcomes.len())
                .scalar("failed", failed.len())
                .table("results", table);
            let status = if failed.is_empty() {
                Status::Ok
            } else {
                Status::DomainError
            };
            Ok((status, doc))
        }
    }
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn murec_eval(args: &MurecArgs, fuel: u64, ctx: &Ctx) -> Outcome {
    let (name, term) = match (&args.source.program, &args.source.builtin) {
        (Some(path), _) => {
            let src = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            (path.display().to_string(), src.parse::<RecFn>()?)
        }
        (None, Some(b)) => {
            let t = corpus::by_name(b)
                .ok_or_else(|| Error::Parse(format!("no shipped program named {b:?}")))?;
            (b.clone(), t)
        }
        (None, None) => unreachable!("clap requires a program source"),
    };
    let mut doc = Document::new();
    doc.scalar("program", name)
        .scalar("term", &term)
        .scalar("arity", term.arity()?)
        .scalar("fuel", fuel);

    if let Some(list) = &args.rationals {
        let rs = split_list(list)
            .map(str::parse::<Rational>)
            .collect::<Result<Vec<_>, _>>()?;
        doc.list("rationals", &rs);
        let value = conjugate_eval(&term, &rs, fuel)?;
        ctx.rational(&mut doc, "value", &value);
        return ok(doc);
    }

    let nats = split_list(args.args.as_deref().unwrap_or(""))
        .map(|t| parse_natural(t).map_err(Error::Parse))
        .collect::<Result<Vec<_>, _>>()?;
    doc.list("args", &nats);
    match term.eval(&nats, fuel)? {
        EvalOutcome::Value(v) => {
            doc.scalar("value", v);
            ok(doc)
        }
        EvalOutcome::Diverged { fuel_spent } => {
            doc.scalar("fuel_spent", fuel_spent);
            Ok((Status::Diverged, doc))
        }
    }
}
