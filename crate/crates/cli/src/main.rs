//! `qtwist`: command-line front end for the quartic-twist toolkit.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use quartic_twist::ascurves::{tower_stats, TowerCurve};
use quartic_twist::binfield::{parse_hex, FieldCtx};
use quartic_twist::elliptic::{
    build_quartic_twist, check_twist_isomorphism, e_count_bruteforce, e_extremality, e_point_count_formula,
    rank_theorem,
};
use quartic_twist::families::{hermitian_family, quintic_example, trace_family, FamilyInstance};
use quartic_twist::fibration::{fiber_type_table, grid_row, shioda_tate_check, tate_algorithm_at_infinity};
use quartic_twist::polyalg::UniPoly;
use quartic_twist::verify::{run_all, DEFAULT_SEED};
use quartic_twist::{Error, Result};

const EXIT_HELP: &str = "Exit codes: 0 success, 1 a verification failed, 2 parse error, \
                         3 precondition violated, 4 internal consistency failure.";

#[derive(Parser)]
#[command(name = "qtwist", version, about = "Quartic twists of y^2 + y = x^3 + x in characteristic 2", after_help = EXIT_HELP)]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON (the default format).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV; only `fiber grid` supports it.
    #[arg(long, global = true)]
    csv: bool,
    /// Add wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arithmetic in GF(2^m).
    #[command(subcommand)]
    Field(FieldCmd),
    /// Genera and point counts of the tower r^2 + r = A, s^2 + s = rA + B.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// The curve E: y^2 + y = x^3 + x.
    #[command(subcommand)]
    E(ECmd),
    /// The quartic twist E_{A,B}.
    #[command(subcommand)]
    Twist(TwistCmd),
    /// The fiber at infinity.
    Fiber(FiberArgs),
    /// The worked families.
    #[command(subcommand)]
    Examples(ExamplesCmd),
    /// Run all acceptance criteria; exits 1 if any fails.
    VerifyAll {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args, Clone)]
struct FieldArg {
    /// `m` or `m:modulus-hex`, e.g. `4` or `4:13`.
    #[arg(long, default_value = "1")]
    field: String,
}

#[derive(Args, Clone)]
struct ElementArgs {
    #[command(flatten)]
    field: FieldArg,
    /// Element as hex bits in the polynomial basis.
    #[arg(long)]
    a: String,
}

#[derive(Args, Clone)]
struct PairArgs {
    #[command(flatten)]
    field: FieldArg,
    /// Coefficients of A, comma-separated hex, lowest degree first.
    #[arg(long = "A")]
    a: String,
    /// Coefficients of B, comma-separated hex, lowest degree first.
    #[arg(long = "B", default_value = "0")]
    b: String,
}

#[derive(Subcommand)]
enum FieldCmd {
    Info(FieldArg),
    Trace(ElementArgs),
    SolveWp(ElementArgs),
    Sqrt(ElementArgs),
}

#[derive(Subcommand)]
enum CurveCmd {
    Stats {
        #[command(flatten)]
        pair: PairArgs,
        /// Count over GF(2^(m k)).
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
}

#[derive(Subcommand)]
enum ECmd {
    /// #E(F_{2^{2n}}) by formula and enumeration.
    Count {
        #[arg(long)]
        n: u32,
    },
    /// Counts for n = 1..=max.
    Table {
        #[arg(long, default_value_t = 8)]
        max: u32,
    },
}

#[derive(Subcommand)]
enum TwistCmd {
    Build(PairArgs),
    Verify(PairArgs),
    Rank {
        #[command(flatten)]
        pair: PairArgs,
        /// Rank over GF(2^(m k)); m k must be even.
        #[arg(long, default_value_t = 2)]
        ext: u32,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct FiberArgs {
    #[arg(long = "degA", requires = "deg_b")]
    deg_a: Option<usize>,
    #[arg(long = "degB", requires = "deg_a")]
    deg_b: Option<usize>,
    #[command(subcommand)]
    cmd: Option<FiberCmd>,
}

#[derive(Subcommand)]
enum FiberCmd {
    /// Tate's algorithm on a concrete E_{A,B}, compared with the table.
    Run(PairArgs),
    /// Table rows for all odd degrees up to `max`.
    Grid {
        #[arg(long, default_value_t = 15)]
        max: usize,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    Quintic,
    Hermitian {
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    Trace {
        #[arg(long, default_value_t = 3)]
        m: u32,
    },
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: BTreeMap<&'static str, String>,
    outputs: Value,
    checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

impl Report {
    fn new(command: &str, outputs: Value) -> Self {
        Report { command: command.into(), inputs: BTreeMap::new(), outputs, checks: BTreeMap::new(), elapsed_ms: None }
    }

    fn input(mut self, k: &'static str, v: impl ToString) -> Self {
        self.inputs.insert(k, v.to_string());
        self
    }

    fn check(mut self, k: impl Into<String>, v: bool) -> Self {
        self.checks.insert(k.into(), v);
        self
    }

    fn ok(&self) -> bool {
        self.checks.values().all(|&v| v)
    }
}

enum Output {
    Json(Report),
    Csv(String),
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn field_of(arg: &FieldArg) -> Result<FieldCtx> {
    FieldCtx::parse(&arg.field)
}

fn element(args: &ElementArgs) -> Result<(FieldCtx, quartic_twist::binfield::FieldElt)> {
    let f = field_of(&args.field)?;
    let a = f.elt(parse_hex(&args.a)?)?;
    Ok((f, a))
}

fn pair(args: &PairArgs) -> Result<(FieldCtx, UniPoly, UniPoly)> {
    let f = field_of(&args.field)?;
    let a = UniPoly::parse(&f, &args.a)?;
    let b = UniPoly::parse(&f, &args.b)?;
    Ok((f, a, b))
}

fn extension(base: &FieldCtx, k: u32) -> Result<FieldCtx> {
    if k == 0 {
        return Err(Error::Precondition("--ext must be positive".into()));
    }
    FieldCtx::new(base.degree() * k)
}

fn pair_inputs(r: Report, f: &FieldCtx, a: &UniPoly, b: &UniPoly) -> Report {
    r.input("field", f.spec_string()).input("A", a.to_hex_list()).input("B", b.to_hex_list())
}

fn family_report(command: &str, inst: &FamilyInstance) -> Report {
    let mut r = Report::new(command, to_value(inst)).input("base_field", inst.base_field.spec_string());
    for c in &inst.checks {
        r = r.check(c.name.clone(), c.passed);
    }
    r
}

fn run(cli: &Cli) -> Result<Output> {
    if cli.csv && !matches!(&cli.command, Command::Fiber(FiberArgs { cmd: Some(FiberCmd::Grid { .. }), .. })) {
        return Err(Error::Parse("--csv is only supported by `fiber grid`".into()));
    }
    let report = match &cli.command {
        Command::Field(cmd) => match cmd {
            FieldCmd::Info(arg) => {
                let f = field_of(arg)?;
                let out = json!({
                    "m": f.degree(),
                    "modulus": format!("{:x}", f.modulus()),
                    "size": f.size(),
                    "generator": format!("{:x}", f.generator().bits()),
                    "primitive_element": format!("{:x}", f.primitive_element().bits()),
                });
                Report::new("field info", out).input("field", f.spec_string())
            }
            FieldCmd::Trace(args) => {
                let (f, a) = element(args)?;
                Report::new("field trace", json!({ "trace": f.trace(a) }))
                    .input("field", f.spec_string())
                    .input("a", format!("{:x}", a.bits()))
            }
            FieldCmd::SolveWp(args) => {
                let (f, a) = element(args)?;
                let roots = f.solve_wp(a).map(|(z0, z1)| [format!("{:x}", z0.bits()), format!("{:x}", z1.bits())]);
                let ok = f.solve_wp(a).is_none_or(|(z0, _)| z0 * z0 + z0 == a);
                Report::new("field solve-wp", json!({ "roots": roots, "trace": f.trace(a) }))
                    .input("field", f.spec_string())
                    .input("a", format!("{:x}", a.bits()))
                    .check("root_satisfies_equation", ok)
            }
            FieldCmd::Sqrt(args) => {
                let (f, a) = element(args)?;
                let s = a.sqrt();
                Report::new("field sqrt", json!({ "sqrt": format!("{:x}", s.bits()) }))
                    .input("field", f.spec_string())
                    .input("a", format!("{:x}", a.bits()))
                    .check("square_matches", s.square() == a)
            }
        },
        Command::Curve(CurveCmd::Stats { pair: p, ext }) => {
            let (f, a, b) = pair(p)?;
            let big = extension(&f, *ext)?;
            let tower = TowerCurve::new(&f, a.clone(), b.clone())?;
            let stats = tower_stats(&tower, &big)?;
            let within = quartic_twist::ascurves::CurveStats::new(stats.genus_c, stats.count_c, &big)
                .within_weil_bound(big.size());
            pair_inputs(Report::new("curve stats", to_value(&stats)), &f, &a, &b)
                .input("ext", ext)
                .check("weil_bound", within)
        }
        Command::E(ECmd::Count { n }) => {
            let formula = e_point_count_formula(*n)?;
            let brute = e_count_bruteforce(&FieldCtx::new(2 * n)?);
            let out = json!({ "formula": formula, "brute": brute, "extremal": e_extremality(*n)? });
            Report::new("e count", out).input("n", n).check("formula_matches_enumeration", formula == brute)
        }
        Command::E(ECmd::Table { max }) => {
            let mut rows = Vec::new();
            let mut ok = true;
            for n in 1..=*max {
                let formula = e_point_count_formula(n)?;
                let brute = e_count_bruteforce(&FieldCtx::new(2 * n)?);
                ok &= formula == brute;
                rows.push(json!({ "n": n, "formula": formula, "brute": brute, "extremal": e_extremality(n)? }));
            }
            Report::new("e table", Value::Array(rows)).input("max", max).check("formula_matches_enumeration", ok)
        }
        Command::Twist(cmd) => match cmd {
            TwistCmd::Build(p) => {
                let (f, a, b) = pair(p)?;
                let twist = build_quartic_twist(&a, &b)?;
                let inv = twist.invariants();
                let out = json!({
                    "curve": to_value(&twist),
                    "discriminant": inv.discriminant.to_hex_list(),
                    "c4": inv.c4.to_hex_list(),
                });
                pair_inputs(Report::new("twist build", out), &f, &a, &b)
                    .check("discriminant_is_1", inv.discriminant.to_hex_list() == "1")
            }
            TwistCmd::Verify(p) => {
                let (f, a, b) = pair(p)?;
                let iso = check_twist_isomorphism(&f, &a, &b)?;
                let out = json!({
                    "forward_residual": iso.forward.to_string(),
                    "inverse_residual": iso.inverse.to_string(),
                    "composition_residuals": iso.compositions.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                });
                pair_inputs(Report::new("twist verify", out), &f, &a, &b).check("isomorphism", iso.holds())
            }
            TwistCmd::Rank { pair: p, ext } => {
                let (f, a, b) = pair(p)?;
                let big = extension(&f, *ext)?;
                let tower = TowerCurve::new(&f, a.clone(), b.clone())?;
                let (norm, n) = tower.normalized();
                let rep = rank_theorem(&norm, &big)?;
                let out = json!({ "normalized": to_value(&n), "rank": to_value(&rep) });
                pair_inputs(Report::new("twist rank", out), &f, &a, &b).input("ext", ext)
            }
        },
        Command::Fiber(args) => match (&args.cmd, args.deg_a, args.deg_b) {
            (None, Some(da), Some(db)) => {
                let rep = shioda_tate_check(da, db)?;
                Report::new("fiber", to_value(&rep))
                    .input("degA", da)
                    .input("degB", db)
                    .check("shioda_tate", rep.shioda_tate_ok)
            }
            (None, _, _) => return Err(Error::Parse("fiber needs --degA and --degB, or a subcommand".into())),
            (Some(FiberCmd::Run(p)), _, _) => {
                let (f, a, b) = pair(p)?;
                let tate = tate_algorithm_at_infinity(&f, &a, &b)?;
                let table = fiber_type_table(a.degree().unwrap_or(0), b.degree().unwrap_or(0))?;
                let out = json!({ "tate": tate.to_string(), "table": table.to_string() });
                pair_inputs(Report::new("fiber run", out), &f, &a, &b).check("tate_matches_table", tate == table)
            }
            (Some(FiberCmd::Grid { max }), _, _) => {
                let mut rows = Vec::new();
                for da in (1..=*max).step_by(2) {
                    for db in (1..=*max).step_by(2) {
                        rows.push(grid_row(da, db)?);
                    }
                }
                if cli.csv {
                    return Ok(Output::Csv(grid_csv(&rows)?));
                }
                let ok = rows.iter().all(|r| r.shioda_tate_ok && r.r as u64 == r.rank_formula);
                Report::new("fiber grid", to_value(&rows)).input("max", max).check("grid_consistent", ok)
            }
        },
        Command::Examples(cmd) => match cmd {
            ExamplesCmd::Quintic => family_report("examples quintic", &quintic_example()?),
            ExamplesCmd::Hermitian { n } => family_report("examples hermitian", &hermitian_family(*n)?).input("n", n),
            ExamplesCmd::Trace { m } => family_report("examples trace", &trace_family(*m)?).input("m", m),
        },
        Command::VerifyAll { seed } => {
            let results = run_all(*seed);
            let mut r = Report::new("verify-all", to_value(&results)).input("seed", seed);
            for c in &results {
                r = r.check(format!("{:02}_{}", c.id, c.name), c.passed);
            }
            r
        }
    };
    Ok(Output::Json(report))
}

fn grid_csv(rows: &[quartic_twist::fibration::GridRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Consistency(format!("csv: {e}"));
    w.write_record(["degA", "degB", "euler_n", "type", "components", "b2", "r", "rank_formula", "shioda_tate_ok"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.deg_a.to_string(),
            r.deg_b.to_string(),
            r.euler_n.to_string(),
            r.kodaira.to_string(),
            r.components.to_string(),
            r.b2.to_string(),
            r.r.to_string(),
            r.rank_formula.to_string(),
            r.shioda_tate_ok.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Consistency(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        e if e.is_internal() => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let start = Instant::now();
    match run(&cli) {
        Ok(Output::Csv(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Json(mut report)) => {
            if cli.timing {
                report.elapsed_ms = Some(start.elapsed().as_millis());
            }
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
