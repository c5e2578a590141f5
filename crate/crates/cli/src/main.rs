//! `mzvff`: closed forms, series, residues and identity checks for multiple zeta functions
//! over function fields.

use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mzvff::bundled;
use mzvff::exactalg::default_names;
use mzvff::exactalg::wire::{RationalFunctionDoc, SeriesDoc};
use mzvff::oracle::{self, is_prime, truncated_series_b, truncated_series_enum};
use mzvff::verify::{self, VerifyOptions, FAMILIES};
use mzvff::zeta_genus::{self as genus, uv_names};
use mzvff::zeta_polyring::{self as poly, DoublePole, PolyZetaContext};
use mzvff::zeta_rational as g0;
use mzvff::{Error, FactoredRational, FunctionFieldSpec, TruncatedSeries};

#[derive(Parser)]
#[command(name = "mzvff", version, about = "Exact multiple zeta functions over function fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed form as a rational function.
    ClosedForm(FieldArgs),
    /// Print the power-series coefficients on the box [0, N]^d.
    Series(SeriesArgs),
    /// Residue of Z_2(F_q[T]) along one of its polar lines, times log(q).
    Residue(ResidueArgs),
    /// Truncated Euler product of Z_d(F_q[T]) in the tail coordinates y_k.
    Euler(EulerArgs),
    /// Check a field spec document and print its normalized form.
    ValidateSpec(SpecArgs),
    /// Run the identity checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ring {
    /// F_q[T]
    Poly,
    /// F_q(T), genus 0
    Rational,
    /// A function field of genus >= 1 given by --spec
    Genus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Closed,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Coords {
    /// x_k = q^{-s_k}
    X,
    /// u = x1 x2, v = x2 (genus closed forms only)
    Uv,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long, value_enum, default_value = "poly")]
    ring: Ring,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Spec file, a bundled spec name, or "-" for standard input.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 4)]
    trunc: usize,
    #[arg(long, value_enum, default_value = "closed")]
    source: Source,
    #[arg(long, value_enum, default_value = "x")]
    coords: Coords,
}

#[derive(Args)]
struct ResidueArgs {
    #[arg(long)]
    q: u64,
    /// "w=1" or "s+w=2".
    #[arg(long)]
    pole: String,
    /// Residue variable, "s" or "w".
    #[arg(long = "in")]
    var: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct EulerArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Largest irreducible degree D kept in the product.
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    spec: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated check families.
    #[arg(long)]
    only: Option<String>,
    /// Comma-separated values of q.
    #[arg(long)]
    q: Option<String>,
    /// Depths as "1,2" or "1..3".
    #[arg(long)]
    depth: Option<String>,
    #[arg(long)]
    trunc: Option<usize>,
    /// Run the spec-dependent checks on this spec instead of the bundled set.
    #[arg(long)]
    spec: Option<String>,
    /// List the check families and exit.
    #[arg(long)]
    list: bool,
    /// Corrupt one coefficient in the named family (harness self-test).
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Failure of a command, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IdentityViolation(_) => 1,
            Error::InvalidSpec { .. } => 3,
            Error::BudgetExceeded { .. } => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn read_spec(arg: &str) -> Result<FunctionFieldSpec, Failure> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("reading standard input: {e}")))?;
        buf
    } else if Path::new(arg).exists() {
        std::fs::read_to_string(arg).map_err(|e| usage(format!("reading {arg}: {e}")))?
    } else {
        let name = arg.strip_suffix(".json").unwrap_or(arg);
        match bundled::bundled(name) {
            Some(b) => b.json.to_string(),
            None => return Err(usage(format!("no spec file or bundled spec named {arg:?}"))),
        }
    };
    Ok(FunctionFieldSpec::from_json(&text)?)
}

fn require_q(q: Option<u64>) -> Result<u64, Failure> {
    q.ok_or_else(|| usage("--q is required for this ring"))
}

fn require_spec(spec: &Option<String>) -> Result<FunctionFieldSpec, Failure> {
    let spec = read_spec(spec.as_deref().ok_or_else(|| usage("--ring genus needs --spec"))?)?;
    if spec.genus() == 0 {
        return Err(usage("--ring genus needs a spec of genus >= 1; use --ring rational for genus 0"));
    }
    Ok(spec)
}

fn genus_depth_two(depth: usize) -> Result<(), Failure> {
    if depth != 2 {
        return Err(usage(format!(
            "closed form is available at depth 2 only for genus >= 1 (got depth {depth}); \
             use `series --source oracle` for other depths"
        )));
    }
    Ok(())
}

/// The closed form with the names of its variables.
fn closed_form(args: &FieldArgs, coords: Coords) -> Result<(FactoredRational, Vec<String>), Failure> {
    if coords == Coords::Uv && args.ring != Ring::Genus {
        return Err(usage("--coords uv applies to --ring genus only"));
    }
    match args.ring {
        Ring::Poly => {
            let ctx = PolyZetaContext::new(require_q(args.q)?, args.depth)?;
            Ok((poly::closed_form_poly(&ctx), default_names(args.depth)))
        }
        Ring::Rational => Ok((
            g0::closed_form_genus0(require_q(args.q)?, args.depth)?,
            default_names(args.depth),
        )),
        Ring::Genus => {
            let spec = require_spec(&args.spec)?;
            genus_depth_two(args.depth)?;
            let form = genus::closed_form_genus_d2(&spec)?;
            Ok(match coords {
                Coords::Uv => (form.total, uv_names()),
                Coords::X => (form.total_in_x(), default_names(2)),
            })
        }
    }
}

fn cmd_closed_form(args: &FieldArgs) -> CmdResult {
    // genus closed forms print in (u, v), the coordinates they are built in
    let coords = if args.ring == Ring::Genus { Coords::Uv } else { Coords::X };
    let (f, names) = closed_form(args, coords)?;
    match args.format {
        Format::Text => println!("{}", f.render_with(&names)),
        Format::Json => print_json(&serde_json::to_value(RationalFunctionDoc::from_rational(&f, &names)).unwrap()),
    }
    Ok(0)
}

fn check_box(depth: usize, trunc: usize) -> Result<(), Failure> {
    let budget = oracle::budget_from_env();
    let needed = (trunc as u128 + 1).saturating_pow(depth as u32);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget }.into());
    }
    Ok(())
}

fn cmd_series(args: &SeriesArgs) -> CmdResult {
    let field = &args.field;
    let n = args.trunc;
    let (series, names): (TruncatedSeries, Vec<String>) = match args.source {
        Source::Closed => {
            let depth = if field.ring == Ring::Genus { 2 } else { field.depth };
            check_box(depth, n)?;
            let (f, names) = closed_form(field, args.coords)?;
            (f.series_expand(n)?, names)
        }
        Source::Oracle => {
            if args.coords == Coords::Uv {
                return Err(usage("the oracle series is in x coordinates; drop --coords uv"));
            }
            check_box(field.depth, n)?;
            let d = field.depth;
            if d == 0 {
                return Err(usage("depth must be at least 1"));
            }
            let s = match field.ring {
                Ring::Poly => {
                    let q = require_q(field.q)?;
                    if is_prime(q) {
                        truncated_series_enum(q, d, n, oracle::budget_from_env())?
                    } else {
                        oracle::truncated_series_poly_weights(q, d, n)
                    }
                }
                Ring::Rational => truncated_series_b(&FunctionFieldSpec::rational(require_q(field.q)?)?, d, n),
                Ring::Genus => truncated_series_b(&require_spec(&field.spec)?, d, n),
            };
            (s, default_names(d))
        }
    };
    match field.format {
        Format::Text => println!("{}", series.render_with(&names)),
        Format::Json => print_json(&serde_json::to_value(SeriesDoc::from_series(&series, &names)).unwrap()),
    }
    Ok(0)
}

fn cmd_residue(args: &ResidueArgs) -> CmdResult {
    let pole = DoublePole::parse(&args.pole, args.var.as_deref())?;
    let r = poly::scaled_residue_d2(args.q, pole)?;
    let names = default_names(2);
    let value = r.value.render_with(&names);
    match args.format {
        Format::Text => {
            println!("{value} × 1/log({})", args.q);
            println!("in s, w: {} × 1/log({})", r.s_form, args.q);
        }
        Format::Json => print_json(&json!({
            "pole": pole.to_string(),
            "subvariety": r.subvariety.to_string(),
            "value": RationalFunctionDoc::from_rational(&r.value, &names),
            "s_form": r.s_form,
            "scale": format!("1/log({})", args.q),
        })),
    }
    Ok(0)
}

fn cmd_euler(args: &EulerArgs) -> CmdResult {
    let ctx = PolyZetaContext::new(args.q, args.depth)?;
    check_box(args.depth, args.max_degree)?;
    let series = poly::euler_truncation(&ctx, args.max_degree)?;
    let agreement = poly::euler_agreement(&ctx, args.max_degree)?;
    let names: Vec<String> = (1..=args.depth).map(|k| format!("y{k}")).collect();
    match args.format {
        Format::Text => {
            println!("{}", series.render_with(&names));
            println!(
                "closed form agreement: {} monomials compared, {} mismatches",
                agreement.compared,
                agreement.mismatches.len()
            );
        }
        Format::Json => print_json(&json!({
            "series": SeriesDoc::from_series(&series, &names),
            "compared": agreement.compared,
            "mismatches": agreement.mismatches.len(),
        })),
    }
    Ok(if agreement.agrees() { 0 } else { 1 })
}

fn cmd_validate_spec(args: &SpecArgs) -> CmdResult {
    let spec = read_spec(&args.spec)?;
    match args.format {
        Format::Text => {
            println!(
                "valid: q={} genus={} class_number={} b={:?}",
                spec.q(),
                spec.genus(),
                spec.class_number(),
                spec.b_initial()
            );
            let z = spec.one_var_zeta().reduce();
            println!("Z(K, t) = {}", z.render_with(&["t".to_string()]));
        }
        Format::Json => print_json(&spec.to_json()),
    }
    Ok(0)
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| usage(format!("bad {what} value {s:?}"))))
        .collect()
}

/// `"1..3"` and `"1..=3"` both mean 1, 2, 3; otherwise a comma-separated list.
fn parse_range(text: &str) -> Result<Vec<usize>, Failure> {
    let Some((lo, hi)) = text.split_once("..") else {
        return parse_list(text, "depth");
    };
    let bad = || usage(format!("bad range {text:?}"));
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
    Ok((lo..=hi).collect())
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    if args.list {
        for (family, anchor) in FAMILIES {
            println!("{family:<24} {anchor}");
        }
        return Ok(0);
    }
    let opts = VerifyOptions {
        only: args.only.as_deref().map(|s| parse_list(s, "family")).transpose()?,
        qs: args.q.as_deref().map(|s| parse_list(s, "q")).transpose()?,
        depths: args.depth.as_deref().map(parse_range).transpose()?,
        trunc: args.trunc,
        specs: args
            .spec
            .as_deref()
            .map(|s| read_spec(s).map(|spec| vec![(s.to_string(), spec)]))
            .transpose()?,
        fault: args.inject_fault.clone(),
        budget: oracle::budget_from_env(),
    };
    let report = verify::run(&opts)?;
    match args.format {
        Format::Text => println!("{report}"),
        Format::Json => print_json(&report.to_json()),
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::ClosedForm(a) => cmd_closed_form(a),
        Command::Series(a) => cmd_series(a),
        Command::Residue(a) => cmd_residue(a),
        Command::Euler(a) => cmd_euler(a),
        Command::ValidateSpec(a) => cmd_validate_spec(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("mzvff: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
