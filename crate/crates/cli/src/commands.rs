//! Subcommand definitions and their table builders.

use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use quatfield::asymptotics::{
    bulk_kernel_kk, bulk_kernel_limit, bulk_rho_mainterm, bulk_rho_two_index, center_hermite,
    center_rho_delta_approx, density_limit_check, pr_abscissa, pr_weighted_hermite,
    radial_limit_check, BulkCoordinates, BULK_EPSILON, PR_PHI_MARGIN,
};
use quatfield::kernel::{
    cd_weighted, intensity_lebesgue_radial, kernel_at, kernel_at_weighted, radial_density,
    rho_delta_weighted,
};
use quatfield::moments::{det_d, monomial_inner};
use quatfield::numeric::ln_factorial;
use quatfield::orthopoly::{
    beta, h_norm, hermite_function, hermite_monic, ln_h_norm, p_poly, q_poly, weighted_q_scaled,
};
use quatfield::sampler::{estimate, radial_ks_distance, SamplerConfig, MIN_ESTIMATOR_SAMPLES};
use quatfield::PureQuaternion;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{float_json, Cell, Document, Format, Meta, Table};
use crate::parallel::{par_map, sample_parallel};
use crate::verify::{self, Suite, VerifyOptions};

/// Largest `nmax` accepted by `tables` and `poly`.
pub const MAX_TABLE_DEGREE: usize = 50;

#[derive(Debug, Parser)]
#[command(
    name = "quatfield",
    version,
    about = "Quaternion orthogonal polynomials, kernels, asymptotics and sampling"
)]
pub struct Cli {
    /// Output format; `verify` defaults to json, everything else to csv.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monomial scalar products, monic P_n with h_n and beta_n, Q_n, and moment determinants.
    Tables(TablesArgs),
    /// Coefficients of P_n, Q_n or monic Hermite polynomials.
    Poly(PolyArgs),
    /// Kernel values K_n(x, y) with their (rho, delta) decomposition.
    Kernel(KernelArgs),
    /// One-point intensity with respect to Lebesgue measure.
    Density(GridArgs),
    /// Radial density 4 pi r^2 rho_n(r) f(r).
    Radial(GridArgs),
    /// Finite-n exact values against their large-n approximations.
    Asymptotics(AsymptoticsArgs),
    /// Data behind the three figures.
    Figures(FiguresArgs),
    /// Rejection sampling of the n + 1 point field (n <= 2).
    Sample(SampleArgs),
    /// Runs the acceptance criteria and reports measured values against bounds.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Block {
    Table1,
    Table2,
    Table3,
    Det,
}

#[derive(Debug, Args, Serialize)]
pub struct TablesArgs {
    /// Highest degree (at most 50).
    #[arg(long, default_value_t = 9)]
    pub nmax: usize,
    /// Table written in CSV mode; JSON always carries all four.
    #[arg(long, value_enum, default_value_t = Block::Table2)]
    pub block: Block,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    P,
    Q,
    Hermite,
}

#[derive(Debug, Args, Serialize)]
pub struct PolyArgs {
    #[arg(long, value_enum, default_value_t = Family::P)]
    pub family: Family,
    #[arg(long, default_value_t = 0)]
    pub nmin: usize,
    /// Highest degree (at most 50).
    #[arg(long, default_value_t = 9)]
    pub nmax: usize,
}

fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(v).map_err(|_| "expected three comma-separated numbers".to_string())
}

#[derive(Debug, Args, Serialize)]
pub struct KernelArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// First point `a,b,c`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, default_value = "0.6,0.0,0.8")]
    pub x: [f64; 3],
    /// Second point `a,b,c`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, default_value = "0.0,1.0,0.0")]
    pub y: [f64; 3],
    /// Sweep both radii over `grid` values in `(0, smax]` along the directions of x and y.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 3.0)]
    pub smax: f64,
    /// Report K e^{-(s^2+t^2)/4} and weighted rho, delta (finite for large n).
    #[arg(long)]
    pub weighted: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct GridArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Number of radii in `[0, rmax]`.
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    /// Upper radius; defaults to 2 sqrt(n + 2) + 2.
    #[arg(long)]
    pub rmax: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// 2 sqrt(n) rho_n^Leb(2 sqrt(n) s) against the limit density.
    Density,
    /// Radial density against sqrt(1 - s^2)/pi.
    Radial,
    /// Rescaled bulk kernel KK_n against sinc, u = v = i.
    Bulk,
    /// Weighted rho_n(s, t) in the bulk against the two-index approximation.
    BulkRho,
    /// Weighted rho_n(s, t) in the bulk against the printed main term.
    BulkRhoPrinted,
    /// Weighted rho_n(s, t) near the origin.
    CenterRho,
    /// Weighted (-1)^n delta_n(s, t) near the origin.
    CenterDelta,
    /// Plancherel-Rotach approximation of the normalized Hermite function.
    HermitePr,
    /// Fixed-s approximation of H_n(s).
    HermiteCenter,
}

#[derive(Debug, Args, Serialize)]
pub struct AsymptoticsArgs {
    #[arg(long, value_enum, default_value_t = Regime::Density)]
    pub regime: Regime,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Points per swept parameter.
    #[arg(long, default_value_t = 25)]
    pub grid: usize,
    /// Threads for the sweep.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct FiguresArgs {
    /// Figure id: 1, 2 or 3.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub which: u8,
    /// Smallest n (figure 2 uses even n only).
    #[arg(long)]
    pub nmin: Option<usize>,
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Grid points along the abscissa.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Accepted configurations.
    #[arg(long, default_value_t = 10_000)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = verify::VERIFY_SEED)]
    pub seed: u64,
    /// Run only these criteria (comma-separated ids).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteArg {
    Fast,
    All,
}

/// A usage or domain error; the process exits with 2.
#[derive(Debug)]
pub struct CommandError(pub String);

impl From<quatfield::Error> for CommandError {
    fn from(e: quatfield::Error) -> Self {
        CommandError(e.to_string())
    }
}

/// What a command produced and how to print it.
#[derive(Debug)]
pub struct Outcome {
    pub document: Document,
    /// Table written in CSV mode when the document has several.
    pub block: Option<String>,
    pub format: Format,
    /// Ids of failed acceptance criteria (only `verify` fills this).
    pub failed: Vec<u32>,
    /// Progress lines for stderr.
    pub log: Vec<String>,
}

type CmdResult<T> = Result<T, CommandError>;

fn usage<T>(msg: impl Into<String>) -> CmdResult<T> {
    Err(CommandError(msg.into()))
}

fn meta_for<A: Serialize>(command: &str, argv: &[String], args: &A) -> Meta {
    let mut m = Meta::new(command, argv);
    if let Ok(Value::Object(map)) = serde_json::to_value(args) {
        m.parameters = map;
    }
    m
}

fn big(x: BigInt) -> Cell {
    Cell::BigInt(x.to_string())
}

fn linspace(a: f64, b: f64, m: usize) -> Vec<f64> {
    match m {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..m)
            .map(|i| a + (b - a) * i as f64 / (m - 1) as f64)
            .collect(),
    }
}

fn check_nmax(nmax: usize) -> CmdResult<()> {
    if nmax > MAX_TABLE_DEGREE {
        return usage(format!(
            "--nmax {nmax} exceeds the maximum {MAX_TABLE_DEGREE}"
        ));
    }
    Ok(())
}

/// Runs a parsed command and returns the document plus the CSV block to print.
pub fn execute(cli: &Cli, argv: &[String]) -> CmdResult<Outcome> {
    let fmt = |d: Format| cli.format.unwrap_or(d);
    let plain = |document: Document, format: Format| Outcome {
        document,
        block: None,
        format,
        failed: Vec::new(),
        log: Vec::new(),
    };
    Ok(match &cli.command {
        Command::Tables(a) => Outcome {
            block: serde_json::to_value(a.block)
                .ok()
                .and_then(|v| v.as_str().map(String::from)),
            ..plain(tables(a, argv)?, fmt(Format::Csv))
        },
        Command::Poly(a) => plain(poly(a, argv)?, fmt(Format::Csv)),
        Command::Kernel(a) => plain(kernel(a, argv)?, fmt(Format::Csv)),
        Command::Density(a) => plain(grid_density(a, argv, "density")?, fmt(Format::Csv)),
        Command::Radial(a) => plain(grid_density(a, argv, "radial")?, fmt(Format::Csv)),
        Command::Asymptotics(a) => plain(asymptotics(a, argv)?, fmt(Format::Csv)),
        Command::Figures(a) => plain(figures(a, argv)?, fmt(Format::Csv)),
        Command::Sample(a) => {
            let format = fmt(Format::Csv);
            plain(sample(a, argv, format)?, format)
        }
        Command::Verify(a) => {
            let (document, reports) = run_verify(a, argv)?;
            Outcome {
                failed: reports
                    .iter()
                    .filter(|r| !r.passed())
                    .map(|r| r.id)
                    .collect(),
                log: reports.iter().map(|r| r.line()).collect(),
                ..plain(document, fmt(Format::Json))
            }
        }
    })
}

/// Table 1 block, Table 2, Table 3 and the moment determinants up to `nmax`.
pub fn tables(a: &TablesArgs, argv: &[String]) -> CmdResult<Document> {
    check_nmax(a.nmax)?;
    let mut doc = Document::new(meta_for("tables", argv, a));
    let mut t1 = Table::new("table1", &["m", "n", "value"]);
    for m in 0..=a.nmax {
        for n in 0..=a.nmax {
            t1.push(vec![m.into(), n.into(), big(monomial_inner(m, n))]);
        }
    }
    let mut t2 = Table::new("table2", &["n", "P_n", "h_n", "beta_n"]);
    let mut t3 = Table::new("table3", &["n", "Q_n"]);
    for n in 0..=a.nmax {
        let b = if n == 0 { Cell::Empty } else { big(beta(n)?) };
        t2.push(vec![
            n.into(),
            p_poly(n).to_string_in("z").into(),
            big(h_norm(n)),
            b,
        ]);
        t3.push(vec![n.into(), q_poly(n).to_string_in("x").into()]);
    }
    let mut det = Table::new("det", &["n", "D_n", "abs_ratio", "h_n"]);
    let mut prev = BigInt::from(1);
    for n in 0..=a.nmax {
        let d = det_d(n);
        let abs = if d < BigInt::from(0) {
            -d.clone()
        } else {
            d.clone()
        };
        det.push(vec![n.into(), big(d), big(&abs / &prev), big(h_norm(n))]);
        prev = abs;
    }
    doc.tables = vec![t1, t2, t3, det];
    Ok(doc)
}

pub fn poly(a: &PolyArgs, argv: &[String]) -> CmdResult<Document> {
    check_nmax(a.nmax)?;
    if a.nmin > a.nmax {
        return usage("--nmin exceeds --nmax");
    }
    let mut doc = Document::new(meta_for("poly", argv, a));
    let t = match a.family {
        Family::P => {
            let mut t = Table::new("p", &["n", "P_n", "h_n", "beta_n"]);
            for n in a.nmin..=a.nmax {
                let b = if n == 0 { Cell::Empty } else { big(beta(n)?) };
                t.push(vec![
                    n.into(),
                    p_poly(n).to_string_in("z").into(),
                    big(h_norm(n)),
                    b,
                ]);
            }
            t
        }
        Family::Q => {
            let mut t = Table::new("q", &["n", "Q_n"]);
            for n in a.nmin..=a.nmax {
                t.push(vec![n.into(), q_poly(n).to_string_in("x").into()]);
            }
            t
        }
        Family::Hermite => {
            let mut t = Table::new("hermite", &["n", "H_n"]);
            for n in a.nmin..=a.nmax {
                t.push(vec![n.into(), hermite_monic(n).to_string_in("x").into()]);
            }
            t
        }
    };
    doc.tables.push(t);
    Ok(doc)
}

const KERNEL_COLUMNS: [&str; 10] = [
    "n", "s", "t", "u_dot_v", "rho", "delta", "K_real", "K_i", "K_j", "K_k",
];

fn kernel_row(n: usize, x: PureQuaternion, y: PureQuaternion, weighted: bool) -> Vec<Cell> {
    let (s, t) = (x.norm(), y.norm());
    let (u, v) = (x.polar().0, y.polar().0);
    let k = if weighted {
        kernel_at_weighted(n, x, y)
    } else {
        kernel_at(n, x, y)
    };
    let (rho, delta) = match rho_delta_weighted(n, s, t) {
        Ok((r, d)) => {
            let w = if weighted {
                1.0
            } else {
                (0.25 * (s * s + t * t)).exp()
            };
            (Cell::Float(r * w), Cell::Float(d * w))
        }
        Err(_) => (Cell::Empty, Cell::Empty),
    };
    vec![
        n.into(),
        s.into(),
        t.into(),
        u.dot(v).into(),
        rho,
        delta,
        k.w.into(),
        k.x.into(),
        k.y.into(),
        k.z.into(),
    ]
}

pub fn kernel(a: &KernelArgs, argv: &[String]) -> CmdResult<Document> {
    let x = PureQuaternion::new(a.x[0], a.x[1], a.x[2]);
    let y = PureQuaternion::new(a.y[0], a.y[1], a.y[2]);
    let mut doc = Document::new(meta_for("kernel", argv, a));
    let mut t = Table::new("kernel", &KERNEL_COLUMNS);
    match a.grid {
        None => t.push(kernel_row(a.n, x, y, a.weighted)),
        Some(g) => {
            if a.smax.is_nan() || a.smax <= 0.0 {
                return usage("--smax must be positive");
            }
            let (u, v) = (x.polar().0, y.polar().0);
            let radii: Vec<f64> = (1..=g).map(|i| a.smax * i as f64 / g as f64).collect();
            for &s in &radii {
                for &r in &radii {
                    t.push(kernel_row(a.n, u.scale(s), v.scale(r), a.weighted));
                }
            }
        }
    }
    doc.tables.push(t);
    Ok(doc)
}

pub fn grid_density(a: &GridArgs, argv: &[String], which: &str) -> CmdResult<Document> {
    let rmax = a.rmax.unwrap_or(2.0 * (a.n as f64 + 2.0).sqrt() + 2.0);
    if rmax.is_nan() || rmax <= 0.0 || a.grid < 2 {
        return usage("need --rmax > 0 and --grid ≥ 2");
    }
    let mut doc = Document::new(meta_for(which, argv, a));
    let mut t = Table::new(which, &["n", "r", "density"]);
    for r in linspace(0.0, rmax, a.grid) {
        let d = if which == "radial" {
            radial_density(a.n, r)?
        } else {
            intensity_lebesgue_radial(a.n, r)
        };
        t.push(vec![a.n.into(), r.into(), d.into()]);
    }
    doc.tables.push(t);
    Ok(doc)
}

const ASYMPTOTIC_COLUMNS: [&str; 9] = [
    "n", "regime", "p1", "p2", "p3", "exact", "approx", "abs_err", "rel_err",
];

fn asym_row(n: usize, regime: &str, p: [Option<f64>; 3], exact: f64, approx: f64) -> Vec<Cell> {
    let abs = (exact - approx).abs();
    let rel = if approx != 0.0 {
        abs / approx.abs()
    } else {
        abs
    };
    let pc = |x: Option<f64>| x.map_or(Cell::Empty, Cell::Float);
    vec![
        n.into(),
        regime.into(),
        pc(p[0]),
        pc(p[1]),
        pc(p[2]),
        exact.into(),
        approx.into(),
        abs.into(),
        rel.into(),
    ]
}

pub fn asymptotics(a: &AsymptoticsArgs, argv: &[String]) -> CmdResult<Document> {
    let n = a.n;
    if n == 0 || a.grid < 2 {
        return usage("need --n ≥ 1 and --grid ≥ 2");
    }
    let name = serde_json::to_value(a.regime)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default();
    let g = a.grid;
    type Job = [f64; 3];
    let jobs: Vec<Job> = match a.regime {
        Regime::Density | Regime::Radial => linspace(0.2, 0.8, g)
            .into_iter()
            .map(|s| [s, 0.0, 0.0])
            .collect(),
        Regime::Bulk => {
            let mut v = Vec::new();
            for x0 in [0.3, 0.5, 0.7] {
                for tau in linspace(-2.0, 2.0, g) {
                    v.push([0.0, tau, x0]);
                }
            }
            v
        }
        Regime::BulkRho | Regime::BulkRhoPrinted => {
            let r = (n as f64).sqrt();
            let pts = linspace((BULK_EPSILON + 0.1) * r, (2.0 - BULK_EPSILON - 0.1) * r, g);
            let mut v = Vec::new();
            for &s in &pts {
                for &t in &pts {
                    if s != t {
                        v.push([s, t, 0.0]);
                    }
                }
            }
            v
        }
        Regime::CenterRho | Regime::CenterDelta => {
            let pts = linspace(0.5, 3.0, g);
            pts.iter()
                .flat_map(|&s| pts.iter().map(move |&t| [s, t, 0.0]))
                .collect()
        }
        Regime::HermitePr => linspace(PI / 3.0, 2.0 * PI / 3.0, g)
            .into_iter()
            .map(|p| [p, 0.0, 0.0])
            .collect(),
        Regime::HermiteCenter => linspace(0.5, 3.0, g)
            .into_iter()
            .map(|s| [s, 0.0, 0.0])
            .collect(),
    };
    let regime = a.regime;
    let rows = par_map(a.workers, jobs, |p| -> CmdResult<Vec<Cell>> {
        Ok(match regime {
            Regime::Density => {
                let c = density_limit_check(n, p[0])?;
                asym_row(n, &name, [Some(p[0]), None, None], c.approx, c.limit)
            }
            Regime::Radial => {
                let c = radial_limit_check(n, p[0])?;
                asym_row(n, &name, [Some(p[0]), None, None], c.approx, c.limit)
            }
            Regime::Bulk => {
                let u = PureQuaternion::I;
                let kk = bulk_kernel_kk(n, u, p[0], u, p[1], p[2])?;
                let lim = bulk_kernel_limit(u, p[0], u, p[1]);
                asym_row(n, &name, [Some(p[0]), Some(p[1]), Some(p[2])], kk.w, lim.w)
            }
            Regime::BulkRho | Regime::BulkRhoPrinted => {
                let exact = cd_weighted(n, p[0], p[1]);
                let approx = if regime == Regime::BulkRho {
                    bulk_rho_two_index(n, p[0], p[1])?
                } else {
                    bulk_rho_mainterm(n, p[0], p[1])?
                };
                asym_row(n, &name, [Some(p[0]), Some(p[1]), None], exact, approx)
            }
            Regime::CenterRho | Regime::CenterDelta => {
                let (ra, da) = center_rho_delta_approx(n, p[0], p[1])?;
                let (exact, approx) = if regime == Regime::CenterRho {
                    (cd_weighted(n, p[0], p[1]), ra)
                } else {
                    (cd_weighted(n, p[0], -p[1]), da)
                };
                asym_row(n, &name, [Some(p[0]), Some(p[1]), None], exact, approx)
            }
            Regime::HermitePr => {
                let approx = pr_weighted_hermite(n, p[0])?;
                let exact = hermite_function(n, pr_abscissa(n, p[0]));
                asym_row(
                    n,
                    &name,
                    [Some(p[0]), Some(pr_abscissa(n, p[0])), None],
                    exact,
                    approx.mantissa,
                )
            }
            Regime::HermiteCenter => {
                let s = p[0];
                let approx = center_hermite(n, s)?;
                let exact = hermite_function(n, s)
                    * (0.25 * s * s + 0.5 * ln_factorial(n) - approx.ln_scale).exp();
                asym_row(n, &name, [Some(s), None, None], exact, approx.mantissa)
            }
        })
    });
    let mut doc = Document::new(meta_for("asymptotics", argv, a));
    let mut t = Table::new("asymptotics", &ASYMPTOTIC_COLUMNS);
    for r in rows {
        t.push(r?);
    }
    doc.tables.push(t);
    if regime == Regime::HermitePr {
        doc.extra
            .insert("phi_margin".into(), float_json(PR_PHI_MARGIN));
    }
    Ok(doc)
}

/// `h_n^{−3/4} Q_n(√(3n) x)`: the magnitude of `h_n^{−3/4} P_n(i√(3n) x)`.
fn figure1_value(n: usize, x: f64) -> f64 {
    let s = (3.0 * n as f64).sqrt() * x;
    let w = weighted_q_scaled(n, s);
    w.mantissa * (w.ln_scale + 0.25 * s * s - 0.25 * ln_h_norm(n)).exp()
}

pub fn figures(a: &FiguresArgs, argv: &[String]) -> CmdResult<Document> {
    if a.grid < 2 {
        return usage("--grid must be at least 2");
    }
    let mut doc = Document::new(meta_for("figures", argv, a));
    match a.which {
        1 => {
            let (lo, hi) = (a.nmin.unwrap_or(1), a.nmax.unwrap_or(10));
            if lo > hi {
                return usage("--nmin exceeds --nmax");
            }
            let mut t = Table::new("figure1", &["x", "value", "n"]);
            for n in lo..=hi {
                for x in linspace(-1.0, 1.0, a.grid) {
                    t.push(vec![x.into(), figure1_value(n, x).into(), n.into()]);
                }
            }
            doc.tables.push(t);
        }
        2 => {
            let (lo, hi) = (a.nmin.unwrap_or(2), a.nmax.unwrap_or(64));
            if lo > hi {
                return usage("--nmin exceeds --nmax");
            }
            let smax = 2.0 * (hi as f64 + 2.0).sqrt() + 2.0;
            let mut t = Table::new("figure2", &["x", "value", "n"]);
            for n in (lo..=hi).filter(|n| n % 2 == 0) {
                for s in linspace(0.0, smax, a.grid) {
                    let v = cd_weighted(n, s, s) / (n + 1) as f64;
                    t.push(vec![s.into(), v.into(), n.into()]);
                }
            }
            doc.tables.push(t);
        }
        _ => {
            let n = a.nmax.unwrap_or(2000);
            let mut t = Table::new("figure3", &["phi", "x", "value", "n", "exact"]);
            let u = PureQuaternion::I;
            let phis = linspace(0.8f64.acos(), 0.2f64.acos(), 5);
            for &phi in &phis {
                let x0 = phi.cos().clamp(BULK_EPSILON, 1.0 - BULK_EPSILON);
                for tau in linspace(-6.0, 6.0, a.grid) {
                    let lim = bulk_kernel_limit(u, 0.0, u, tau).w;
                    let exact = match BulkCoordinates::new(n, x0, 0.0, tau) {
                        Ok(_) => Cell::Float(bulk_kernel_kk(n, u, 0.0, u, tau, x0)?.w),
                        Err(_) => Cell::Empty,
                    };
                    t.push(vec![phi.into(), tau.into(), lim.into(), n.into(), exact]);
                }
            }
            doc.tables.push(t);
        }
    }
    Ok(doc)
}

pub fn sample(a: &SampleArgs, argv: &[String], format: Format) -> CmdResult<Document> {
    if a.count == 0 {
        return usage("--count must be positive");
    }
    let cfg = SamplerConfig::new(a.n, a.count, a.seed).with_workers(a.workers);
    cfg.validate()?;
    let run = sample_parallel(&cfg)?;
    let mut doc = Document::new(meta_for("sample", argv, a).seed(a.seed));
    doc.extra
        .insert("acceptance_rate".into(), float_json(run.acceptance_rate()));
    doc.extra
        .insert("max_ratio".into(), float_json(run.max_ratio));
    doc.extra.insert("proposals".into(), json!(run.proposals));
    doc.extra.insert("accepted".into(), json!(run.accepted));
    match format {
        Format::Csv => {
            let mut t = Table::new("configurations", &["config", "point", "x", "y", "z"]);
            for (i, c) in run.configurations.iter().enumerate() {
                for (j, p) in c.points.iter().enumerate() {
                    t.push(vec![i.into(), j.into(), p.x.into(), p.y.into(), p.z.into()]);
                }
            }
            doc.tables.push(t);
        }
        Format::Json => {
            let radii = verify::radii(&run);
            doc.extra.insert(
                "radial_ks".into(),
                float_json(radial_ks_distance(a.n, &radii)?),
            );
            if run.configurations.len() >= MIN_ESTIMATOR_SAMPLES {
                let est = estimate(&run)?;
                let hist = |h: &quatfield::sampler::Histogram| {
                    json!({
                        "edges": h.edges.iter().map(|&e| float_json(e)).collect::<Vec<_>>(),
                        "counts": h.counts,
                        "outside": h.outside,
                    })
                };
                doc.extra
                    .insert("radial_histogram".into(), hist(&est.radial));
                if a.n >= 1 {
                    doc.extra
                        .insert("angular_histogram".into(), hist(&est.angular));
                    doc.extra.insert(
                        "angular_max_bin_sigma".into(),
                        float_json(verify::angular_max_sigma(&run).map_err(CommandError)?),
                    );
                }
            } else {
                doc.extra.insert(
                    "histograms".into(),
                    json!(format!(
                        "omitted: fewer than {MIN_ESTIMATOR_SAMPLES} configurations"
                    )),
                );
            }
        }
    }
    Ok(doc)
}

/// Runs the selected criteria.
pub fn run_verify(
    a: &VerifyArgs,
    argv: &[String],
) -> CmdResult<(Document, Vec<verify::CriterionReport>)> {
    let opts = VerifyOptions {
        suite: match a.suite {
            SuiteArg::Fast => Suite::Fast,
            SuiteArg::All => Suite::All,
        },
        workers: a.workers.max(1),
        seed: a.seed,
    };
    let ids: Vec<u32> = if a.only.is_empty() {
        (1..=verify::CRITERIA).collect()
    } else {
        a.only.clone()
    };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > verify::CRITERIA) {
        return usage(format!("no criterion {bad}"));
    }
    let mut reports = Vec::new();
    for id in ids {
        reports.push(verify::run_criterion(id, &opts));
    }
    let mut doc = Document::new(meta_for("verify", argv, a).seed(a.seed));
    let mut t = Table::new(
        "checks",
        &["id", "title", "check", "value", "bound", "passed"],
    );
    for r in &reports {
        for c in &r.checks {
            let bound = match c.bound {
                verify::Bound::AtMost(b) => format!("<= {}", crate::output::format_float(b)),
                verify::Bound::Below(b) => format!("< {}", crate::output::format_float(b)),
                verify::Bound::Within(lo, hi) => {
                    format!(
                        "[{}, {}]",
                        crate::output::format_float(lo),
                        crate::output::format_float(hi)
                    )
                }
                verify::Bound::Info => String::new(),
            };
            t.push(vec![
                (r.id as usize).into(),
                r.title.into(),
                c.name.clone().into(),
                c.value.into(),
                bound.into(),
                Cell::Bool(c.passed),
            ]);
        }
    }
    let report = verify::report_json(&reports);
    if let Value::Object(m) = report {
        doc.extra = m;
    }
    doc.tables.push(t);
    Ok((doc, reports))
}
