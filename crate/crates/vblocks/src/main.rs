mod config;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigUint;

use veronese_blocks::confblocks::{
    cb_intersect_kequalsell, cb_intersect_omega1, rank, rank_by_enumeration, rank_recurrence,
    SL2WeightVector,
};
use veronese_blocks::core::{FCurve, Rational};
use veronese_blocks::veronese::{
    intersect, intersect_symmetric, jensen_app_class, jensen_closed_form, jensen_vector, on_wall,
    phi, sigma, standard_weights, symmetric_class, WeightData,
};
use veronese_blocks::verify::{
    check_determinant_lemma, check_increasing, check_kequalsell, check_proportionality,
    check_same_face, check_wall_independence, poscomb_decompose, CheckReport,
};
use veronese_blocks::Error;

use config::Settings;
use report::{Format, Payload, Report};

/// Anything that should stop the run with exit code 1.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
}

impl Failure {
    pub fn usage(msg: impl ToString) -> Failure {
        Failure::Usage(msg.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) => write!(f, "{}", m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "vblocks",
    version,
    about = "Exact intersection numbers for Veronese quotient and sl2 conformal block divisors"
)]
struct Cli {
    /// key = value file supplying any flag not given on the command line
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// write the report to PATH instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// recheck every rank and closed-form value by an independent route
    #[arg(long, global = true)]
    check_oracle: bool,

    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// degree assigned to a subset of the markings
    Sigma(SigmaArgs),
    /// intersection number of an F-curve with the quotient divisor
    Intersect(IntersectArgs),
    /// boundary-basis class of the level-ell symmetric divisor
    Class(PairArgs),
    /// sl2 conformal block rank of a weight vector
    Rank(RankArgs),
    /// conformal block divisor intersection with a basis F-curve
    CbIntersect(CbArgs),
    /// run one of the consistency checks
    Verify(VerifyArgs),
    /// tabulate values over a range
    Table(TableArgs),
}

#[derive(Args, Default)]
struct DatumArgs {
    /// level of the standard weight datum
    #[arg(long)]
    ell: Option<i64>,

    /// genus parameter of the standard datum; n = 2g+2
    #[arg(long)]
    g: Option<i64>,

    /// degree of an explicit weight datum
    #[arg(long)]
    d: Option<i64>,

    /// gamma of an explicit weight datum, as p/q
    #[arg(long)]
    gamma: Option<String>,

    /// comma-separated explicit weights, each p/q
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args, Default)]
struct SigmaArgs {
    #[command(flatten)]
    datum: DatumArgs,

    /// comma-separated marking labels forming the subset
    #[arg(long)]
    labels: Option<String>,
}

#[derive(Args, Default)]
struct IntersectArgs {
    #[command(flatten)]
    datum: DatumArgs,

    /// symmetric F-curve profile, four comma-separated part sizes
    #[arg(long)]
    profile: Option<String>,

    /// labeled partition into four blocks, pipe-separated: 1,2|3|4|5,6,7,8
    #[arg(long)]
    parts: Option<String>,
}

#[derive(Args, Default)]
struct PairArgs {
    /// level
    #[arg(long)]
    ell: Option<i64>,

    /// genus parameter; n = 2g+2
    #[arg(long)]
    g: Option<i64>,
}

#[derive(Args, Default)]
struct RankArgs {
    /// level
    #[arg(long)]
    ell: Option<i64>,

    /// comma-separated sl2 weights
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args, Default)]
struct CbArgs {
    /// level
    #[arg(long)]
    ell: Option<i64>,

    /// weights omega_1^(2g+2); basis index i runs over 1..=g
    #[arg(long)]
    g: Option<i64>,

    /// weights ell*omega_1^n on n markings (even); excludes --g
    #[arg(long)]
    n: Option<i64>,

    /// basis F-curve index
    #[arg(long)]
    i: Option<i64>,
}

#[derive(Args, Default)]
struct VerifyArgs {
    #[command(subcommand)]
    check: Option<Check>,
}

#[derive(Subcommand)]
enum Check {
    /// decompose the conformal block vector as a positive combination
    Poscomb(PairArgs),
    /// basis intersections increase along the parity chain
    Increasing(PairArgs),
    /// two-by-two rank determinants are nonnegative
    Determinant(DetArgs),
    /// conformal block and quotient divisor vectors have equal zero sets
    SameFace(PairArgs),
    /// level-ell divisor with all weights ell is ell times the level-one divisor
    Kequalsell(KeqArgs),
    /// the two vectors are proportional exactly where expected
    Proportionality(PairArgs),
    /// intersection numbers do not depend on the wall degree choice
    Wall(WallArgs),
}

#[derive(Args, Default)]
struct DetArgs {
    /// level
    #[arg(long)]
    ell: Option<i64>,

    /// largest number of unit weights tested
    #[arg(long)]
    imax: Option<i64>,
}

#[derive(Args, Default)]
struct KeqArgs {
    /// level
    #[arg(long)]
    ell: Option<i64>,

    /// number of markings (even, at least 6)
    #[arg(long)]
    n: Option<i64>,
}

#[derive(Args, Default)]
struct WallArgs {
    #[command(flatten)]
    datum: DatumArgs,

    /// cap on the number of F-curves scanned
    #[arg(long = "max-curves")]
    max_curves: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Jensen,
    Ranks,
    Classes,
    CbVectors,
}

impl FromStr for TableKind {
    type Err = String;

    fn from_str(s: &str) -> Result<TableKind, String> {
        match s {
            "jensen" => Ok(TableKind::Jensen),
            "ranks" => Ok(TableKind::Ranks),
            "classes" => Ok(TableKind::Classes),
            "cb-vectors" => Ok(TableKind::CbVectors),
            other => Err(format!(
                "expected jensen, ranks, classes, or cb-vectors, got {:?}",
                other
            )),
        }
    }
}

#[derive(Args, Default)]
struct TableArgs {
    /// what to tabulate
    #[arg(value_enum)]
    kind: Option<TableKind>,

    /// level
    #[arg(long)]
    ell: Option<i64>,

    /// genus parameter; n = 2g+2
    #[arg(long)]
    g: Option<i64>,

    /// largest j for the rank triangle
    #[arg(long)]
    jmax: Option<i64>,

    /// range guard; larger requests are refused with a cost estimate
    #[arg(long)]
    limit: Option<i64>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f);
            1
        }
    }
}

fn execute(cli: Cli) -> Result<i32, Failure> {
    let settings = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::empty(),
    };
    let format = match cli.format {
        Some(f) => f,
        None => match settings.get_str("format") {
            Some(raw) => raw
                .parse::<Format>()
                .map_err(|e| Failure::usage(format!("config format = {}: {}", raw, e)))?,
            None => Format::Plain,
        },
    };
    let out = cli
        .out
        .clone()
        .or_else(|| settings.get_str("out").map(PathBuf::from));
    let oracle = cli.check_oracle || settings.get_bool("check-oracle")?;
    let command = match cli.command {
        Some(c) => c,
        None => command_from_config(&settings)?,
    };
    let report = dispatch(command, &settings, oracle)?;
    let text = report.render(format);
    match &out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {}", path.display(), e)))?,
        None => print!("{}", text),
    }
    if oracle && report.pass != Some(false) {
        for (k, v) in &report.extras {
            if k.starts_with("oracle") {
                eprintln!("{}: {}", k, v);
            }
        }
    }
    Ok(exit_code(&report))
}

/// A failed claim is the one outcome that exits 2; usage problems exit 1
/// before a report exists.
fn exit_code(report: &Report) -> i32 {
    if report.pass == Some(false) {
        2
    } else {
        0
    }
}

fn command_from_config(s: &Settings) -> Result<Cmd, Failure> {
    let name = s.get_str("command").ok_or_else(|| {
        Failure::usage("no command given; pass a subcommand or command = ... in a config file")
    })?;
    match name {
        "sigma" => Ok(Cmd::Sigma(SigmaArgs::default())),
        "intersect" => Ok(Cmd::Intersect(IntersectArgs::default())),
        "class" => Ok(Cmd::Class(PairArgs::default())),
        "rank" => Ok(Cmd::Rank(RankArgs::default())),
        "cb-intersect" => Ok(Cmd::CbIntersect(CbArgs::default())),
        "verify" => Ok(Cmd::Verify(VerifyArgs::default())),
        "table" => Ok(Cmd::Table(TableArgs::default())),
        other => Err(Failure::usage(format!("unknown command {:?} in config", other))),
    }
}

fn check_from_config(s: &Settings) -> Result<Check, Failure> {
    let name = s.get_str("check").ok_or_else(|| {
        Failure::usage("verify needs a check; pass a subcommand or check = ... in a config file")
    })?;
    match name {
        "poscomb" => Ok(Check::Poscomb(PairArgs::default())),
        "increasing" => Ok(Check::Increasing(PairArgs::default())),
        "determinant" => Ok(Check::Determinant(DetArgs::default())),
        "same-face" => Ok(Check::SameFace(PairArgs::default())),
        "kequalsell" => Ok(Check::Kequalsell(KeqArgs::default())),
        "proportionality" => Ok(Check::Proportionality(PairArgs::default())),
        "wall" => Ok(Check::Wall(WallArgs::default())),
        other => Err(Failure::usage(format!("unknown check {:?} in config", other))),
    }
}

fn dispatch(cmd: Cmd, s: &Settings, oracle: bool) -> Result<Report, Failure> {
    match cmd {
        Cmd::Sigma(a) => cmd_sigma(a, s, oracle),
        Cmd::Intersect(a) => cmd_intersect(a, s, oracle),
        Cmd::Class(a) => cmd_class(a, s, oracle),
        Cmd::Rank(a) => cmd_rank(a, s, oracle),
        Cmd::CbIntersect(a) => cmd_cb_intersect(a, s, oracle),
        Cmd::Verify(a) => cmd_verify(a, s),
        Cmd::Table(a) => cmd_table(a, s, oracle),
    }
}

fn missing(name: &str) -> Failure {
    Failure::usage(format!(
        "missing required parameter --{} (flag or config)",
        name
    ))
}

fn opt_i64(name: &str, flag: Option<i64>, s: &Settings) -> Result<Option<i64>, Failure> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => s.get_parsed::<i64>(name),
    }
}

fn need_i64(name: &str, flag: Option<i64>, s: &Settings) -> Result<i64, Failure> {
    opt_i64(name, flag, s)?.ok_or_else(|| missing(name))
}

fn opt_u64(name: &str, flag: Option<u64>, s: &Settings) -> Result<Option<u64>, Failure> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => s.get_parsed::<u64>(name),
    }
}

fn opt_str(name: &str, flag: Option<String>, s: &Settings) -> Option<String> {
    flag.or_else(|| s.get_str(name).map(str::to_string))
}

fn need_str(name: &str, flag: Option<String>, s: &Settings) -> Result<String, Failure> {
    opt_str(name, flag, s).ok_or_else(|| missing(name))
}

fn parse_list<T: FromStr>(raw: &str, what: &str) -> Result<Vec<T>, Failure>
where
    T::Err: fmt::Display,
{
    raw.split(',')
        .map(|piece| {
            let piece = piece.trim();
            piece.parse::<T>().map_err(|e| {
                Failure::usage(format!("{}: bad entry {:?}: {}", what, piece, e))
            })
        })
        .collect()
}

fn parse_profile(raw: &str) -> Result<[usize; 4], Failure> {
    let v: Vec<usize> = parse_list(raw, "profile")?;
    if v.len() != 4 {
        return Err(Failure::usage(format!(
            "profile needs exactly 4 part sizes, got {}",
            v.len()
        )));
    }
    Ok([v[0], v[1], v[2], v[3]])
}

fn parse_parts(raw: &str) -> Result<[Vec<usize>; 4], Failure> {
    let blocks: Vec<&str> = raw.split('|').collect();
    if blocks.len() != 4 {
        return Err(Failure::usage(format!(
            "parts needs exactly 4 blocks separated by |, got {}",
            blocks.len()
        )));
    }
    let mut out: [Vec<usize>; 4] = [vec![], vec![], vec![], vec![]];
    for (slot, block) in out.iter_mut().zip(&blocks) {
        *slot = parse_list(block, "parts")?;
    }
    Ok(out)
}

struct ResolvedDatum {
    w: WeightData,
    standard: Option<(i64, i64)>,
    inputs: Vec<(String, String)>,
}

fn resolve_datum(a: &DatumArgs, s: &Settings) -> Result<ResolvedDatum, Failure> {
    let ell = opt_i64("ell", a.ell, s)?;
    let g = opt_i64("g", a.g, s)?;
    let d = opt_i64("d", a.d, s)?;
    let gamma = opt_str("gamma", a.gamma.clone(), s);
    let weights = opt_str("weights", a.weights.clone(), s);
    let std_given = ell.is_some() || g.is_some();
    let explicit_given = d.is_some() || gamma.is_some() || weights.is_some();
    if std_given && explicit_given {
        return Err(Failure::usage(
            "give either --ell/--g (standard weights) or --d/--gamma/--weights (explicit), not both",
        ));
    }
    if std_given {
        let ell = ell.ok_or_else(|| missing("ell"))?;
        let g = g.ok_or_else(|| missing("g"))?;
        let w = standard_weights(ell, g)?;
        Ok(ResolvedDatum {
            w,
            standard: Some((ell, g)),
            inputs: vec![("ell".into(), ell.to_string()), ("g".into(), g.to_string())],
        })
    } else if explicit_given {
        let d = d.ok_or_else(|| missing("d"))?;
        let gamma_raw = gamma.ok_or_else(|| missing("gamma"))?;
        let weights_raw = weights.ok_or_else(|| missing("weights"))?;
        let gamma: Rational = gamma_raw
            .parse()
            .map_err(|e| Failure::usage(format!("gamma {:?}: {}", gamma_raw, e)))?;
        let weight_list: Vec<Rational> = parse_list(&weights_raw, "weights")?;
        let echo_gamma = gamma.to_string();
        let echo_weights: Vec<String> = weight_list.iter().map(|x| x.to_string()).collect();
        let w = WeightData::new(d, gamma, weight_list)?;
        Ok(ResolvedDatum {
            w,
            standard: None,
            inputs: vec![
                ("d".into(), d.to_string()),
                ("gamma".into(), echo_gamma),
                ("weights".into(), echo_weights.join(",")),
            ],
        })
    } else {
        Err(Failure::usage(
            "no weight datum; give --ell/--g or --d/--gamma/--weights",
        ))
    }
}

fn cmd_sigma(a: SigmaArgs, s: &Settings, oracle: bool) -> Result<Report, Failure> {
    let datum = resolve_datum(&a.datum, s)?;
    let raw = need_str("labels", a.labels, s)?;
    let mut labels: Vec<usize> = parse_list(&raw, "labels")?;
    let n = datum.w.n();
    labels.sort_unstable();
    for pair in labels.windows(2) {
        if pair[0] == pair[1] {
            return Err(Failure::usage(format!("label {} repeated", pair[0])));
        }
    }
    for &x in &labels {
        if x < 1 || x > n {
            return Err(Failure::usage(format!("label {} outside 1..={}", x, n)));
        }
    }
    let value = sigma(&labels, &datum.w);
    let echo: Vec<String> = labels.iter().map(|x| x.to_string()).collect();
    let mut report = Report::new("sigma");
    report.inputs = datum.inputs;
    report = report
        .input("labels", echo.join(","))
        .extra("phi", phi(&labels, &datum.w))
        .extra("on_wall", on_wall(&labels, &datum.w));
    report.payload = Payload::Value(value.to_string());
    if oracle {
        report = report.extra("oracle", "no rank or closed-form quantities in this command");
    }
    Ok(report)
}

fn cmd_intersect(a: IntersectArgs, s: &Settings, oracle: bool) -> Result<Report, Failure> {
    let datum = resolve_datum(&a.datum, s)?;
    let profile = opt_str("profile", a.profile, s);
    let parts = opt_str("parts", a.parts, s);
    let mut report = Report::new("intersect");
    report.inputs = datum.inputs.clone();
    let (curve, value) = match (profile, parts) {
        (Some(_), Some(_)) => {
            return Err(Failure::usage("give --profile or --parts, not both"));
        }
        (None, None) => {
            return Err(Failure::usage("give --profile (symmetric) or --parts (labeled)"));
        }
        (Some(raw), None) => {
            let prof = parse_profile(&raw)?;
            let f = veronese_blocks::core::fcurve_from_profile(datum.w.n(), prof)?;
            let value = intersect_symmetric(&f, &datum.w)?;
            let echo: Vec<String> = f.profile().iter().map(|x| x.to_string()).collect();
            report = report.input("profile", echo.join(","));
            (f.representative(), value)
        }
        (None, Some(raw)) => {
            let blocks = parse_parts(&raw)?;
            let f = FCurve::new(datum.w.n(), blocks)?;
            let value = intersect(&f, &datum.w)?;
            let echo: Vec<String> = f
                .parts()
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            report = report.input("parts", echo.join("|"));
            (f, value)
        }
    };
    if oracle {
        let mut note = String::from("value invariant under 3 part reorderings");
        for order in [[1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]] {
            let alt = intersect(&curve.permuted(order), &datum.w)?;
            if alt != value {
                report.pass = Some(false);
                report.witness = Some(format!(
                    "reordering {:?} gives {} instead of {}",
                    order, alt, value
                ));
                break;
            }
        }
        if report.pass.is_none() {
            if let Some((ell, g)) = datum.standard {
                let p = curve.profile();
                if p[0] == 1 && p[1] == 1 {
                    let closed = jensen_closed_form(ell, g, p[2] as i64)?;
                    if closed != value {
                        report.pass = Some(false);
                        report.witness = Some(format!(
                            "closed form gives {} instead of {}",
                            closed, value
                        ));
                    } else {
                        note.push_str("; matches the closed form");
                    }
                }
            }
            report = report.extra("oracle", note);
        }
    }
    report.payload = Payload::Value(value.to_string());
    Ok(report)
}

fn cmd_class(a: PairArgs, s: &Settings, oracle: bool) -> Result<Report, Failure> {
    let ell = need_i64("ell", a.ell, s)?;
    let g = need_i64("g", a.g, s)?;
    let vector = jensen_vector(ell, g)?;
    let class = symmetric_class(&vector)?;
    let mut report = Report::new("class")
        .input("ell", ell)
        .input("g", g);
    let rows: Vec<Vec<String>> = (0..class.len())
        .map(|idx| vec![(idx + 2).to_string(), class.coeff(idx + 1).to_string()])
        .collect();
    report.payload = Payload::Table {
        columns: vec!["r".into(), "coefficient".into()],
        rows,
    };
    report.plain_value = Some(class.to_string());
    if oracle {
        let closed = jensen_app_class(ell, g)?;
        if closed.coeffs() != class.coeffs() {
            report.pass = Some(false);
            report.witness = Some(format!(
                "closed-form class {} differs from pipeline {}",
                closed, class
            ));
            return Ok(report);
        }
        let d = g + 1 - ell;
        let mut note = String::from("coefficients match the closed form");
        if d >= 2 {
            let w = standard_weights(ell, g)?;
            for i in 1..=g {
                let prof = [1, 1, i as usize, (2 * g - i) as usize];
                let f = veronese_blocks::core::fcurve_from_profile(w.n(), prof)?;
                let full = intersect_symmetric(&f, &w)?;
                if &full != vector.value(i as usize) {
                    report.pass = Some(false);
                    report.witness = Some(format!(
                        "full formula gives {} at i = {} instead of {}",
                        full,
                        i,
                        vector.value(i as usize)
                    ));
                    return Ok(report);
                }
            }
            note.push_str(&format!(
                "; vector entries match the full formula ({} checks)",
                g
            ));
        } else {
            note.push_str("; full-formula recheck skipped (d = 1)");
        }
        report = report.extra("oracle", note);
    }
    Ok(report)
}

fn cmd_rank(a: RankArgs, s: &Settings, oracle: bool) -> Result<Report, Failure> {
    let ell = need_i64("ell", a.ell, s)?;
    let raw = need_str("weights", a.weights, s)?;
    let weights: Vec<i64> = parse_list(&raw, "weights")?;
    let echo: Vec<String> = weights.iter().map(|x| x.to_string()).collect();
    let v = SL2WeightVector::new(ell, weights)?;
    let value = rank(&v);
    let mut report = Report::new("rank")
        .input("ell", ell)
        .input("weights", echo.join(","));
    if oracle {
        let brute = rank_by_enumeration(&v)?;
        if brute != value {
            report.pass = Some(false);
            report.witness = Some(format!(
                "path enumeration gives {} instead of {}",
                brute, value
            ));
        } else {
            report = report.extra("oracle", "rank agrees with exhaustive path enumeration");
        }
    }
    report.payload = Payload::Value(value.to_string());
    Ok(report)
}

fn enumerate_pow(ell: i64, k: i64, reps: usize, t: i64) -> Result<BigUint, Failure> {
    let mut weights = vec![k; reps];
    weights.push(t);
    let v = SL2WeightVector::new(ell, weights)?;
    Ok(rank_by_enumeration(&v)?)
}

fn cmd_cb_intersect(a: CbArgs, s: &Settings, oracle: bool) -> Result<Report, Failure> {
    let ell = need_i64("ell", a.ell, s)?;
    let i = need_i64("i", a.i, s)?;
    let g = opt_i64("g", a.g, s)?;
    let n = opt_i64("n", a.n, s)?;
    let mut report = Report::new("cb-intersect").input("ell", ell);
    let (value, factors, multiplier) = match (g, n) {
        (Some(_), Some(_)) => {
            return Err(Failure::usage("give --g or --n, not both"));
        }
        (None, None) => {
            return Err(Failure::usage(
                "give --g (weights omega_1^(2g+2)) or --n (weights ell*omega_1^n)",
            ));
        }
        (Some(g), None) => {
            report = report.input("g", g);
            let value = cb_intersect_omega1(ell, g, i)?;
            (value, vec![(1, i as usize), (1, (2 * g - i) as usize)], 1)
        }
        (None, Some(n)) => {
            report = report.input("n", n);
            let value = cb_intersect_kequalsell(ell, n, i)?;
            (value, vec![(ell, (n - i - 2) as usize), (ell, i as usize)], ell)
        }
    };
    report = report.input("i", i);
    if oracle {
        let mut product = BigUint::from(multiplier as u64);
        for &(k, reps) in &factors {
            if reps + 1 > 12 {
                return Err(Failure::usage(format!(
                    "--check-oracle needs every rank vector within 12 weights; a factor here has {}",
                    reps + 1
                )));
            }
            product *= enumerate_pow(ell, k, reps, ell)?;
        }
        if product != value {
            report.pass = Some(false);
            report.witness = Some(format!(
                "path enumeration gives {} instead of {}",
                product, value
            ));
        } else {
            report = report.extra(
                "oracle",
                "both rank factors agree with exhaustive path enumeration",
            );
        }
    }
    report.payload = Payload::Value(value.to_string());
    Ok(report)
}

fn report_from_check(inputs: Vec<(String, String)>, rep: CheckReport) -> Report {
    let mut report = Report::new("verify");
    report = report.extra("checked", rep.checked);
    for (k, v) in &rep.details {
        if !inputs.iter().any(|(key, _)| key == k) {
            report = report.extra(k, v);
        }
    }
    report.inputs = inputs;
    report.pass = Some(rep.pass);
    report.witness = rep.witness;
    report
}

fn pair_inputs(check: &str, ell: i64, g: i64) -> Vec<(String, String)> {
    vec![
        ("check".into(), check.into()),
        ("ell".into(), ell.to_string()),
        ("g".into(), g.to_string()),
    ]
}

fn cmd_verify(a: VerifyArgs, s: &Settings) -> Result<Report, Failure> {
    let check = match a.check {
        Some(c) => c,
        None => check_from_config(s)?,
    };
    match check {
        Check::Poscomb(p) => {
            let ell = need_i64("ell", p.ell, s)?;
            let g = need_i64("g", p.g, s)?;
            let mut report = Report::new("verify");
            report.inputs = pair_inputs("poscomb", ell, g);
            match poscomb_decompose(ell, g) {
                Ok(dec) => {
                    let rows: Vec<Vec<String>> = dec
                        .coefficients
                        .iter()
                        .map(|(j, c)| vec![j.to_string(), c.to_string()])
                        .collect();
                    report.payload = Payload::Table {
                        columns: vec!["level".into(), "coefficient".into()],
                        rows,
                    };
                    report = report.extra("residual", "0");
                    report.pass = Some(true);
                }
                Err(Error::Falsified { claim, witness }) => {
                    report.pass = Some(false);
                    report.witness = Some(format!("{}: {}", claim, witness));
                }
                Err(e) => return Err(e.into()),
            }
            Ok(report)
        }
        Check::Increasing(p) => {
            let ell = need_i64("ell", p.ell, s)?;
            let g = need_i64("g", p.g, s)?;
            let rep = check_increasing(ell, g)?;
            Ok(report_from_check(pair_inputs("increasing", ell, g), rep))
        }
        Check::Determinant(dargs) => {
            let ell = need_i64("ell", dargs.ell, s)?;
            let imax = need_i64("imax", dargs.imax, s)?;
            let rep = check_determinant_lemma(ell, imax)?;
            let inputs = vec![
                ("check".into(), "determinant".into()),
                ("ell".into(), ell.to_string()),
                ("imax".into(), imax.to_string()),
            ];
            Ok(report_from_check(inputs, rep))
        }
        Check::SameFace(p) => {
            let ell = need_i64("ell", p.ell, s)?;
            let g = need_i64("g", p.g, s)?;
            let rep = check_same_face(ell, g)?;
            Ok(report_from_check(pair_inputs("same-face", ell, g), rep))
        }
        Check::Kequalsell(k) => {
            let ell = need_i64("ell", k.ell, s)?;
            let n = need_i64("n", k.n, s)?;
            let rep = check_kequalsell(ell, n)?;
            let inputs = vec![
                ("check".into(), "kequalsell".into()),
                ("ell".into(), ell.to_string()),
                ("n".into(), n.to_string()),
            ];
            Ok(report_from_check(inputs, rep))
        }
        Check::Proportionality(p) => {
            let ell = need_i64("ell", p.ell, s)?;
            let g = need_i64("g", p.g, s)?;
            let rep = check_proportionality(ell, g)?;
            Ok(report_from_check(pair_inputs("proportionality", ell, g), rep))
        }
        Check::Wall(wargs) => {
            let datum = resolve_datum(&wargs.datum, s)?;
            let cap = opt_u64("max-curves", wargs.max_curves, s)?.unwrap_or(5000);
            let rep = check_wall_independence(&datum.w, cap)?;
            let mut inputs = vec![("check".into(), "wall".into())];
            inputs.extend(datum.inputs);
            inputs.push(("max-curves".into(), cap.to_string()));
            Ok(report_from_check(inputs, rep))
        }
    }
}

fn thread_count() -> Result<usize, Failure> {
    match std::env::var("VERONESE_BLOCKS_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)),
        Err(e) => Err(Failure::usage(format!("VERONESE_BLOCKS_THREADS: {}", e))),
        Ok(raw) => raw
            .parse::<usize>()
            .ok()
            .filter(|&k| k >= 1)
            .ok_or_else(|| {
                Failure::usage(format!(
                    "VERONESE_BLOCKS_THREADS = {:?}: expected a positive integer",
                    raw
                ))
            }),
    }
}

fn par_rows<F>(count: usize, threads: usize, cell: F) -> Result<Vec<Vec<String>>, Failure>
where
    F: Fn(usize) -> Result<Vec<String>, Failure> + Sync,
{
    let threads = threads.max(1).min(count.max(1));
    let chunk = (count + threads - 1) / threads;
    let mut slots: Vec<Option<Result<Vec<String>, Failure>>> = Vec::with_capacity(count);
    slots.resize_with(count, || None);
    std::thread::scope(|scope| {
        let cell = &cell;
        let mut rest: &mut [Option<Result<Vec<String>, Failure>>] = &mut slots;
        let mut start = 0;
        while !rest.is_empty() {
            let take = chunk.min(rest.len());
            let (head, tail) = rest.split_at_mut(take);
            rest = tail;
            let base = start;
            start += take;
            scope.spawn(move || {
                for (off, slot) in head.iter_mut().enumerate() {
                    *slot = Some(cell(base + off));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.unwrap()).collect()
}

fn refuse(kind: &str, param: &str, value: i64, limit: i64, cells: i64) -> Failure {
    Failure::usage(format!(
        "table {} with {} = {} exceeds the limit {}: about {} exact cells; raise --limit to proceed",
        kind, param, value, limit, cells
    ))
}

fn cmd_table(a: TableArgs, s: &Settings, oracle: bool) -> Result<Report, Failure> {
    let kind = match a.kind {
        Some(k) => k,
        None => match s.get_str("kind") {
            Some(raw) => raw
                .parse::<TableKind>()
                .map_err(|e| Failure::usage(format!("config kind = {}: {}", raw, e)))?,
            None => {
                return Err(Failure::usage(
                    "table needs a kind: jensen, ranks, classes, or cb-vectors",
                ))
            }
        },
    };
    let limit = opt_i64("limit", a.limit, s)?.unwrap_or(12);
    if limit < 1 {
        return Err(Failure::usage(format!("limit must be positive, got {}", limit)));
    }
    let threads = thread_count()?;
    match kind {
        TableKind::Jensen => {
            let g = need_i64("g", a.g, s)?;
            if g < 1 {
                return Err(Failure::usage(format!("g must be positive, got {}", g)));
            }
            if g > limit {
                return Err(refuse("jensen", "g", g, limit, g * g));
            }
            let count = (g * g) as usize;
            let rows = par_rows(count, threads, |idx| {
                let ell = (idx as i64) / g + 1;
                let i = (idx as i64) % g + 1;
                let value = jensen_closed_form(ell, g, i)?;
                Ok(vec![ell.to_string(), i.to_string(), value.to_string()])
            })?;
            let mut report = Report::new("table")
                .input("kind", "jensen")
                .input("g", g);
            if oracle {
                let mut checked = 0;
                let mut skipped = 0;
                for (idx, row) in rows.iter().enumerate() {
                    let ell = (idx as i64) / g + 1;
                    let i = (idx as i64) % g + 1;
                    if g + 1 - ell < 2 {
                        skipped += 1;
                        continue;
                    }
                    let w = standard_weights(ell, g)?;
                    let prof = [1, 1, i as usize, (2 * g - i) as usize];
                    let f = veronese_blocks::core::fcurve_from_profile(w.n(), prof)?;
                    let full = intersect_symmetric(&f, &w)?;
                    if full.to_string() != row[2] {
                        report.pass = Some(false);
                        report.witness = Some(format!(
                            "full formula gives {} at ell = {}, i = {} instead of {}",
                            full, ell, i, row[2]
                        ));
                        break;
                    }
                    checked += 1;
                }
                if report.pass.is_none() {
                    report = report.extra(
                        "oracle",
                        format!(
                            "{} cells match the full formula; {} skipped (d = 1)",
                            checked, skipped
                        ),
                    );
                }
            }
            report.payload = Payload::Table {
                columns: vec!["ell".into(), "i".into(), "value".into()],
                rows,
            };
            Ok(report)
        }
        TableKind::Ranks => {
            let ell = need_i64("ell", a.ell, s)?;
            if ell < 1 {
                return Err(Failure::usage(format!("ell must be positive, got {}", ell)));
            }
            let jmax = need_i64("jmax", a.jmax, s)?;
            if jmax < 0 {
                return Err(Failure::usage(format!("jmax must be nonnegative, got {}", jmax)));
            }
            if jmax > limit {
                return Err(refuse("ranks", "jmax", jmax, limit, (jmax + 1) * (ell + 1)));
            }
            if oracle && jmax > 11 {
                return Err(Failure::usage(
                    "--check-oracle needs every rank vector within 12 weights; use jmax <= 11",
                ));
            }
            let width = ell + 1;
            let count = ((jmax + 1) * width) as usize;
            let rows = par_rows(count, threads, |idx| {
                let j = (idx as i64) / width;
                let t = (idx as i64) % width;
                let value = rank_recurrence(ell, j, t)?;
                Ok(vec![j.to_string(), t.to_string(), value.to_string()])
            })?;
            let mut report = Report::new("table")
                .input("kind", "ranks")
                .input("ell", ell)
                .input("jmax", jmax);
            if oracle {
                for (idx, row) in rows.iter().enumerate() {
                    let j = (idx as i64) / width;
                    let t = (idx as i64) % width;
                    let brute = enumerate_pow(ell, 1, j as usize, t)?;
                    if brute.to_string() != row[2] {
                        report.pass = Some(false);
                        report.witness = Some(format!(
                            "path enumeration gives {} at j = {}, t = {} instead of {}",
                            brute, j, t, row[2]
                        ));
                        break;
                    }
                }
                if report.pass.is_none() {
                    report = report.extra(
                        "oracle",
                        format!("{} cells match exhaustive path enumeration", count),
                    );
                }
            }
            report.payload = Payload::Table {
                columns: vec!["j".into(), "t".into(), "rank".into()],
                rows,
            };
            Ok(report)
        }
        TableKind::Classes => {
            let g = need_i64("g", a.g, s)?;
            if g < 1 {
                return Err(Failure::usage(format!("g must be positive, got {}", g)));
            }
            if g > limit {
                return Err(refuse("classes", "g", g, limit, g * g));
            }
            let count = (g * g) as usize;
            let rows = par_rows(count, threads, |idx| {
                let ell = (idx as i64) / g + 1;
                let r = (idx as i64) % g + 2;
                let class = jensen_app_class(ell, g)?;
                let coeff = class.coeff((r - 1) as usize);
                Ok(vec![ell.to_string(), r.to_string(), coeff.to_string()])
            })?;
            let mut report = Report::new("table")
                .input("kind", "classes")
                .input("g", g);
            if oracle {
                for ell in 1..=g {
                    let pipeline = symmetric_class(&jensen_vector(ell, g)?)?;
                    for r in 2..=g + 1 {
                        let idx = ((ell - 1) * g + (r - 2)) as usize;
                        let coeff = pipeline.coeff((r - 1) as usize);
                        if coeff.to_string() != rows[idx][2] {
                            report.pass = Some(false);
                            report.witness = Some(format!(
                                "pipeline gives {} at ell = {}, r = {} instead of {}",
                                coeff, ell, r, rows[idx][2]
                            ));
                        }
                    }
                }
                if report.pass.is_none() {
                    report = report.extra(
                        "oracle",
                        format!("{} cells match the intersection pipeline", count),
                    );
                }
            }
            report.payload = Payload::Table {
                columns: vec!["ell".into(), "r".into(), "coefficient".into()],
                rows,
            };
            Ok(report)
        }
        TableKind::CbVectors => {
            let g = need_i64("g", a.g, s)?;
            if g < 1 {
                return Err(Failure::usage(format!("g must be positive, got {}", g)));
            }
            if g > limit {
                return Err(refuse("cb-vectors", "g", g, limit, g * g));
            }
            if oracle && 2 * g > 12 {
                return Err(Failure::usage(
                    "--check-oracle needs every rank vector within 12 weights; use g <= 6",
                ));
            }
            let count = (g * g) as usize;
            let rows = par_rows(count, threads, |idx| {
                let ell = (idx as i64) / g + 1;
                let i = (idx as i64) % g + 1;
                let value = cb_intersect_omega1(ell, g, i)?;
                Ok(vec![ell.to_string(), i.to_string(), value.to_string()])
            })?;
            let mut report = Report::new("table")
                .input("kind", "cb-vectors")
                .input("g", g);
            if oracle {
                for (idx, row) in rows.iter().enumerate() {
                    let ell = (idx as i64) / g + 1;
                    let i = (idx as i64) % g + 1;
                    let product = enumerate_pow(ell, 1, i as usize, ell)?
                        * enumerate_pow(ell, 1, (2 * g - i) as usize, ell)?;
                    if product.to_string() != row[2] {
                        report.pass = Some(false);
                        report.witness = Some(format!(
                            "path enumeration gives {} at ell = {}, i = {} instead of {}",
                            product, ell, i, row[2]
                        ));
                        break;
                    }
                }
                if report.pass.is_none() {
                    report = report.extra(
                        "oracle",
                        format!("{} cells match exhaustive path enumeration", count),
                    );
                }
            }
            report.payload = Payload::Table {
                columns: vec!["ell".into(), "i".into(), "value".into()],
                rows,
            };
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_follows_pass_field() {
        let mut report = Report::new("verify");
        assert_eq!(exit_code(&report), 0);
        report.pass = Some(true);
        assert_eq!(exit_code(&report), 0);
        report.pass = Some(false);
        assert_eq!(exit_code(&report), 2);
    }

    #[test]
    fn profile_parsing_rejects_wrong_arity() {
        assert!(parse_profile("1,1,2").is_err());
        assert!(parse_profile("1,1,2,x").is_err());
        assert_eq!(parse_profile("1,1,2,4").unwrap(), [1, 1, 2, 4]);
    }

    #[test]
    fn parts_parsing_needs_four_blocks() {
        assert!(parse_parts("1,2|3|4").is_err());
        let blocks = parse_parts("1,2|3|4|5,6").unwrap();
        assert_eq!(blocks[0], vec![1, 2]);
        assert_eq!(blocks[3], vec![5, 6]);
    }
}
