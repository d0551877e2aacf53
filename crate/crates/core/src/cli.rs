//! Command-line front end. Every command is deterministic; exit status is 0
//! on success (or membership), 1 on non-membership or a failed oracle run,
//! and 2 on malformed input or flags.
//!
//! CSV headers:
//!
//! | command | header |
//! |---|---|
//! | member | `member,kind,index` |
//! | rays | `label,den_exp,numer` (numer entries separated by spaces) |
//! | decompose | `index,ray,alpha` |
//! | simplicial | `i,d` |
//! | betti-bounds | `row,column,value` |
//! | realize | `ell,power,mult` |
//! | cross-section | `vertex,c2,c1` |
//! | oracle | `trials,passed,failed,seed,rng` |
//!
//! With `--decimal`, every rational column `x` is followed by `x_decimal`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::betti::{betti_bounds, BettiTable};
use crate::cones::{
    enumerate_p_rays, enumerate_q_rays, membership, q31_cross_section_verified, r_decompose,
    r_extreme_rays, r_membership_dim_restricted, thm_one_coefficients, Certificate, ConeId,
    ConeKind, CrossSectionPoint, RayLabel, Violation,
};
use crate::error::Error;
use crate::oracle::{macaulay_campaign, CampaignConfig, CampaignReport};
use crate::ratcalc::{format_rat, parse_rat, rat_to_f64, serde_rat, Poly, Rat};
use crate::realize::{clear_denominators, realize_p_ray, verify_realization, Realization};
use crate::series::{poly_tail_to_genfun, GenFun};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Cone {
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    #[value(name = "R")]
    R,
}

#[derive(Debug, Parser)]
#[command(name = "hilbert-cones", version, about = "Exact computations with cones of Hilbert functions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Add display-only decimal approximations (csv and text).
    #[arg(long, global = true)]
    decimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ConeArgs {
    #[arg(long, value_enum)]
    cone: Cone,
    #[arg(long)]
    n: usize,
    /// Degree bound for P and Q.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<i64>,
    /// Regularity bound for R.
    #[arg(long)]
    m: Option<usize>,
}

impl ConeArgs {
    fn id(&self) -> Result<ConeId, CliError> {
        let (kind, bound) = match (self.cone, self.a, self.m) {
            (Cone::P, Some(a), None) => (ConeKind::P, a),
            (Cone::Q, Some(a), None) => (ConeKind::Q, a),
            (Cone::R, None, Some(m)) => (ConeKind::R, m as i64),
            (Cone::R, _, _) => return Err(CliError::usage("cone R takes --m and no --a")),
            _ => return Err(CliError::usage("cones P and Q take --a and no --m")),
        };
        Ok(ConeId::new(kind, self.n, bound)?)
    }
}

/// Exactly one of the three input forms.
#[derive(Debug, Args)]
struct InputArgs {
    /// File holding a series as JSON.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Series as inline JSON, e.g. '{"den_exp":2,"numer":["1","2"]}'.
    #[arg(long)]
    series: Option<String>,
    /// Hilbert function given by a polynomial in j, coefficients ascending:
    /// "1,3" is h(j) = 1 + 3j for all j >= 0.
    #[arg(long, allow_hyphen_values = true)]
    hf_poly: Option<String>,
}

impl InputArgs {
    fn read(&self) -> Result<GenFun, CliError> {
        match (&self.input, &self.series, &self.hf_poly) {
            (Some(path), None, None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
                parse_series(&text).map_err(|e| CliError::usage(format!("{}: {}", path.display(), e.message)))
            }
            (None, Some(json), None) => parse_series(json),
            (None, None, Some(list)) => {
                let p = Poly::new(parse_list(list)?);
                Ok(poly_tail_to_genfun(&p, 0))
            }
            _ => Err(CliError::usage(
                "give exactly one of --input, --series, --hf-poly",
            )),
        }
    }
}

fn parse_series(json: &str) -> Result<GenFun, CliError> {
    serde_json::from_str(json).map_err(|e| CliError::usage(format!("invalid series JSON: {e}")))
}

fn parse_list(list: &str) -> Result<Vec<Rat>, CliError> {
    list.split(',')
        .map(|x| parse_rat(x).map_err(CliError::from))
        .collect()
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cone membership with a certificate.
    Member {
        #[command(flatten)]
        cone: ConeArgs,
        /// For R only: restrict to modules of dimension at most this.
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Extreme rays; partition entries are bounded by --max-part for P and Q.
    Rays {
        #[command(flatten)]
        cone: ConeArgs,
        #[arg(long, default_value_t = 3)]
        max_part: u32,
    },
    /// Coordinates in the extreme rays of R(n, m).
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Coordinates of a truncated sequence in the artinian rays.
    Simplicial {
        #[arg(long)]
        n: usize,
        /// Comma-separated h(0), h(1), ...
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Number of coordinates (defaults to one less than the values).
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Upper bounds on the Betti table of a module in R(n, m).
    BettiBounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Module realizing an extreme ray of P(n, a) under T.
    Realize {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        /// power:K, lambda:P1,P2,..., or mu:... (empty for the empty partition)
        #[arg(long)]
        label: String,
        /// Clear denominators so every multiplicity is an integer.
        #[arg(long)]
        integer: bool,
    },
    /// Vertices of the cross-section c1 + c2 + c3 = 1 of Q(3, -1).
    CrossSection {
        #[arg(long, default_value_t = 30)]
        i_max: usize,
        /// Check each vertex against H_j for j up to this.
        #[arg(long, default_value_t = 200)]
        verify_upto: usize,
    },
    /// Seeded Macaulay campaign over random monomial ideals (needs --seed).
    Oracle {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        maxdeg: u32,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        gens: usize,
        #[arg(long, default_value_t = 12)]
        degree_limit: u32,
    },
}

#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotInCone { .. } => 1,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError {
            code: 2,
            message: e.to_string(),
        }
    }
}

/// One ray and its series, as emitted by `rays`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayEntry {
    pub label: RayLabel,
    pub series: GenFun,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionEntry {
    pub ray: RayLabel,
    #[serde(with = "serde_rat")]
    pub alpha: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub member: bool,
    pub coefficients: Vec<DecompositionEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialCoordinates {
    pub nonneg: bool,
    #[serde(with = "crate::ratcalc::serde_rat::vec")]
    pub coefficients: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossSectionRow {
    pub vertex: String,
    #[serde(with = "serde_rat")]
    pub c2: Rat,
    #[serde(with = "serde_rat")]
    pub c1: Rat,
}

struct Ctx {
    format: Format,
    decimal: bool,
    seed: Option<u64>,
}

impl Ctx {
    fn json<T: Serialize>(&self, v: &T) -> String {
        let mut s = serde_json::to_string_pretty(v).expect("serializable");
        s.push('\n');
        s
    }

    /// CSV with a decimal column after each column listed in `rational`.
    fn csv(&self, header: &[&str], rational: &[usize], rows: Vec<Vec<String>>) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let expand = |row: &[String]| -> Vec<String> {
            let mut out = Vec::with_capacity(row.len() * 2);
            for (k, cell) in row.iter().enumerate() {
                out.push(cell.clone());
                if self.decimal && rational.contains(&k) {
                    out.push(decimal_of(cell));
                }
            }
            out
        };
        let mut head: Vec<String> = Vec::new();
        for (k, h) in header.iter().enumerate() {
            head.push(h.to_string());
            if self.decimal && rational.contains(&k) {
                head.push(format!("{h}_decimal"));
            }
        }
        w.write_record(&head)?;
        for row in &rows {
            w.write_record(expand(row))?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("utf-8 csv"))
    }

    fn rational(&self, r: &Rat) -> String {
        if self.decimal {
            format!("{} (~{:.6})", format_rat(r), rat_to_f64(r))
        } else {
            format_rat(r)
        }
    }
}

fn decimal_of(cell: &str) -> String {
    parse_rat(cell).map_or_else(|_| String::new(), |r| format!("{:.6}", rat_to_f64(&r)))
}

fn certificate_text(cert: &Certificate) -> String {
    match cert.violation {
        None => "member".into(),
        Some(Violation::Coefficient(j)) => format!("not member: coefficient {j}"),
        Some(Violation::Facet(i)) => format!("not member: facet {i}"),
        Some(Violation::Infinity) => "not member: infinity".into(),
        Some(Violation::Equality(i)) => format!("not member: equality {i}"),
    }
}

fn cmd_member(ctx: &Ctx, cone: &ConeArgs, dim: Option<usize>, input: &InputArgs) -> Result<(String, i32), CliError> {
    let id = cone.id()?;
    let g = input.read()?;
    let cert = match dim {
        Some(d) if id.kind == ConeKind::R => r_membership_dim_restricted(&g, id.n, id.bound as usize, d)?,
        Some(_) => return Err(CliError::usage("--dim applies to cone R only")),
        None => membership(id, &g)?,
    };
    let code = if cert.member { 0 } else { 1 };
    let out = match ctx.format {
        Format::Json => ctx.json(&cert),
        Format::Text => certificate_text(&cert) + "\n",
        Format::Csv => {
            let (kind, index) = match cert.violation {
                None => (String::new(), String::new()),
                Some(Violation::Coefficient(j)) => ("coefficient".into(), j.to_string()),
                Some(Violation::Facet(i)) => ("facet".into(), i.to_string()),
                Some(Violation::Infinity) => ("infinity".into(), String::new()),
                Some(Violation::Equality(i)) => ("equality".into(), i.to_string()),
            };
            ctx.csv(&["member", "kind", "index"], &[], vec![vec![cert.member.to_string(), kind, index]])?
        }
    };
    Ok((out, code))
}

fn cmd_rays(ctx: &Ctx, cone: &ConeArgs, max_part: u32) -> Result<String, CliError> {
    let id = cone.id()?;
    let rays = match id.kind {
        ConeKind::P => enumerate_p_rays(id.n, id.bound, max_part)?,
        ConeKind::Q => enumerate_q_rays(id.n, id.bound, max_part)?,
        ConeKind::R => r_extreme_rays(id.n, id.bound as usize),
    };
    let entries: Vec<RayEntry> = rays
        .into_iter()
        .map(|(label, series)| RayEntry { label, series })
        .collect();
    Ok(match ctx.format {
        Format::Json => ctx.json(&entries),
        Format::Text => entries
            .iter()
            .map(|e| format!("{}\t{}\n", e.label, serde_json::to_string(&e.series).expect("json")))
            .collect(),
        Format::Csv => {
            let rows = entries
                .iter()
                .map(|e| {
                    let numer: Vec<String> = e.series.numer().coeffs().iter().map(format_rat).collect();
                    vec![e.label.to_string(), e.series.den_exp().to_string(), numer.join(" ")]
                })
                .collect();
            ctx.csv(&["label", "den_exp", "numer"], &[], rows)?
        }
    })
}

fn cmd_decompose(ctx: &Ctx, n: usize, m: usize, input: &InputArgs) -> Result<String, CliError> {
    let g = input.read()?;
    let alpha = r_decompose(&g, n, m)?;
    let coefficients: Vec<DecompositionEntry> = r_extreme_rays(n, m)
        .into_iter()
        .zip(alpha)
        .map(|((ray, _), alpha)| DecompositionEntry { ray, alpha })
        .collect();
    let out = Decomposition {
        member: coefficients.iter().all(|c| !c.alpha.is_negative()),
        coefficients,
    };
    Ok(match ctx.format {
        Format::Json => ctx.json(&out),
        Format::Text => {
            let mut s = format!("member: {}\n", out.member);
            for c in &out.coefficients {
                s += &format!("{}\t{}\n", c.ray, ctx.rational(&c.alpha));
            }
            s
        }
        Format::Csv => {
            let rows = out
                .coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| vec![k.to_string(), c.ray.to_string(), format_rat(&c.alpha)])
                .collect();
            ctx.csv(&["index", "ray", "alpha"], &[2], rows)?
        }
    })
}

fn cmd_simplicial(ctx: &Ctx, n: usize, values: &str, cutoff: Option<usize>) -> Result<String, CliError> {
    let h = parse_list(values)?;
    let cutoff = cutoff.unwrap_or(h.len().saturating_sub(1));
    let coefficients = thm_one_coefficients(&h, n, cutoff)?;
    let out = SimplicialCoordinates {
        nonneg: coefficients.iter().all(|c| !c.is_negative()),
        coefficients,
    };
    Ok(match ctx.format {
        Format::Json => ctx.json(&out),
        Format::Text => {
            let mut s = format!("nonneg: {}\n", out.nonneg);
            for (i, d) in out.coefficients.iter().enumerate() {
                s += &format!("d_{}\t{}\n", i + 1, ctx.rational(d));
            }
            s
        }
        Format::Csv => {
            let rows = out
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, d)| vec![(i + 1).to_string(), format_rat(d)])
                .collect();
            ctx.csv(&["i", "d"], &[1], rows)?
        }
    })
}

fn betti_output(ctx: &Ctx, t: &BettiTable, cols: usize) -> Result<String, CliError> {
    Ok(match ctx.format {
        Format::Json => ctx.json(t),
        Format::Text => t.render_text(cols),
        Format::Csv => {
            let mut rows: Vec<_> = t.entries().map(|(i, j, v)| (j, i, v.clone())).collect();
            rows.sort();
            let rows = rows
                .into_iter()
                .map(|(j, i, v)| vec![j.to_string(), i.to_string(), format_rat(&v)])
                .collect();
            ctx.csv(&["row", "column", "value"], &[2], rows)?
        }
    })
}

fn cmd_realize(ctx: &Ctx, n: usize, a: i64, label: &str, integer: bool) -> Result<String, CliError> {
    let label: RayLabel = label.parse()?;
    let mut r = realize_p_ray(&label, n, a)?;
    if integer {
        r = clear_denominators(&r);
    }
    if !verify_realization(&r, &label, n, a)? {
        return Err(CliError {
            code: 1,
            message: format!("realization of {label} failed verification"),
        });
    }
    realization_output(ctx, &r)
}

fn realization_output(ctx: &Ctx, r: &Realization) -> Result<String, CliError> {
    Ok(match ctx.format {
        Format::Json => ctx.json(r),
        Format::Text => {
            let mut s = format!("scalar: {}\nworking_a: {}\n", ctx.rational(&r.scalar), r.working_a);
            for (m, c) in &r.modules.summands {
                s += &format!("S/<x_0..x_{}>^{}\t{}\n", m.ell - 1, m.power, ctx.rational(c));
            }
            s
        }
        Format::Csv => {
            let rows = r
                .modules
                .summands
                .iter()
                .map(|(m, c)| vec![m.ell.to_string(), m.power.to_string(), format_rat(c)])
                .collect();
            ctx.csv(&["ell", "power", "mult"], &[2], rows)?
        }
    })
}

fn cmd_cross_section(ctx: &Ctx, i_max: usize, verify_upto: usize) -> Result<String, CliError> {
    let rows: Vec<CrossSectionRow> = q31_cross_section_verified(i_max, verify_upto)?
        .into_iter()
        .map(|CrossSectionPoint { vertex, c2, c1 }| CrossSectionRow {
            vertex: vertex.to_string(),
            c2,
            c1,
        })
        .collect();
    Ok(match ctx.format {
        Format::Json => ctx.json(&rows),
        Format::Text => rows
            .iter()
            .map(|r| format!("{}\t({}, {})\n", r.vertex, ctx.rational(&r.c2), ctx.rational(&r.c1)))
            .collect(),
        Format::Csv => {
            let rows = rows
                .iter()
                .map(|r| vec![r.vertex.clone(), format_rat(&r.c2), format_rat(&r.c1)])
                .collect();
            ctx.csv(&["vertex", "c2", "c1"], &[1, 2], rows)?
        }
    })
}

fn cmd_oracle(ctx: &Ctx, vars: usize, maxdeg: u32, trials: usize, gens: usize, degree_limit: u32) -> Result<(String, i32), CliError> {
    let seed = ctx.seed.ok_or_else(|| CliError::usage("oracle needs --seed"))?;
    let report: CampaignReport = macaulay_campaign(CampaignConfig {
        vars,
        maxdeg,
        gens,
        trials,
        seed,
        degree_limit,
    })?;
    let code = if report.failures.is_empty() { 0 } else { 1 };
    let out = match ctx.format {
        Format::Json => ctx.json(&report),
        Format::Text => {
            let mut s = format!(
                "{}/{} pass\nrng: {} seed: {}\n",
                report.passed, trials, report.rng, seed
            );
            for f in &report.failures {
                s += &format!(
                    "trial {} seed {}: {}\n",
                    f.trial,
                    f.seed,
                    serde_json::to_string(&f.ideal).expect("json")
                );
            }
            s
        }
        Format::Csv => ctx.csv(
            &["trials", "passed", "failed", "seed", "rng"],
            &[],
            vec![vec![
                trials.to_string(),
                report.passed.to_string(),
                report.failures.len().to_string(),
                seed.to_string(),
                report.rng.clone(),
            ]],
        )?,
    };
    Ok((out, code))
}

fn dispatch(cli: &Cli) -> Result<(String, i32), CliError> {
    let ctx = Ctx {
        format: cli.format,
        decimal: cli.decimal,
        seed: cli.seed,
    };
    let ok = |s: String| (s, 0);
    match &cli.command {
        Command::Member { cone, dim, input } => cmd_member(&ctx, cone, *dim, input),
        Command::Rays { cone, max_part } => cmd_rays(&ctx, cone, *max_part).map(ok),
        Command::Decompose { n, m, input } => cmd_decompose(&ctx, *n, *m, input).map(ok),
        Command::Simplicial { n, values, cutoff } => cmd_simplicial(&ctx, *n, values, *cutoff).map(ok),
        Command::BettiBounds { n, m, input } => {
            let g = input.read()?;
            betti_output(&ctx, &betti_bounds(&g, *n, *m)?, n + 1).map(ok)
        }
        Command::Realize { n, a, label, integer } => cmd_realize(&ctx, *n, *a, label, *integer).map(ok),
        Command::CrossSection { i_max, verify_upto } => cmd_cross_section(&ctx, *i_max, *verify_upto).map(ok),
        Command::Oracle {
            vars,
            maxdeg,
            trials,
            gens,
            degree_limit,
        } => cmd_oracle(&ctx, *vars, *maxdeg, *trials, *gens, *degree_limit),
    }
}

/// Run with explicit arguments and streams; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: cannot write output: {e}");
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
