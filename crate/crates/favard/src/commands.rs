use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use favard_core::digits::{DigitSystem, Limits};
use favard_core::projection::{
    counting_function, farey_sequence, projection_measure, x_lambda_measure_estimate,
    x_lambda_member, ProjectedMeasure, Slope, Window, XLambdaEstimate, XLambdaMembership,
};
use favard_core::quadrature::{favard_length, least_squares, NodePlacement, QuadratureSpec};
use favard_core::rational::{self, Rational};
use favard_core::spectral::{
    band_integrals, chi, f_hat, nu_hat, plancherel_check, spectrum, zero_set_structure_check,
    zero_set_structure_search, Transform,
};
use favard_core::tiling::{
    direction_analysis, exponent_report, DirectionAnalysis, ExponentReport, DEFAULT_MAX_MODULUS,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::args::*;
use crate::error::{CliError, CliResult};

/// Digit system as written to JSON outputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemOut {
    #[serde(rename = "K")]
    pub k: u64,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    #[serde(rename = "B")]
    pub b: Vec<u64>,
}

impl From<&DigitSystem> for SystemOut {
    fn from(ds: &DigitSystem) -> Self {
        SystemOut {
            k: ds.base(),
            a: ds.a().to_vec(),
            b: ds.b().to_vec(),
        }
    }
}

fn system(args: &SystemArgs) -> CliResult<(DigitSystem, Limits)> {
    let ds = DigitSystem::new(
        args.k.unwrap_or(4),
        args.a.as_deref().unwrap_or(&[0, 3]),
        args.b.as_deref().unwrap_or(&[0, 3]),
    )?;
    let limits = match args.cap {
        Some(0) => return Err(CliError::usage("--cap must be positive")),
        Some(cap) => Limits::with_cap(cap.into()),
        None => Limits::default(),
    };
    Ok((ds, limits))
}

fn slope(text: Option<&str>, default: &str) -> CliResult<Slope> {
    Ok(Slope::parse(text.unwrap_or(default))?)
}

fn rational_slope(text: Option<&str>, default: &str) -> CliResult<(u64, u64)> {
    let s = slope(text, default)?;
    Ok(s.as_rational().expect("parsed slopes are rational"))
}

fn require<T>(value: Option<T>, flag: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::usage(format!("missing --{flag}")))
}

fn sink<'a>(out: &Option<PathBuf>, stdout: &'a mut dyn Write) -> CliResult<Box<dyn Write + 'a>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(stdout),
    })
}

fn write_json<T: Serialize>(out: &Option<PathBuf>, stdout: &mut dyn Write, value: &T) -> CliResult<()> {
    let mut w = sink(out, stdout)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn window(arg: Option<WindowArg>) -> Window {
    match arg {
        Some(WindowArg::Shadow) => Window::Shadow,
        _ => Window::Unit,
    }
}

pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunctionOut {
    pub breakpoints: Vec<String>,
    pub values: Vec<u64>,
    pub sup: u64,
    pub integral: String,
    pub l2_norm_sq: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectOut {
    pub system: SystemOut,
    pub n: u32,
    pub slope: String,
    pub measure: ProjectedMeasure,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub step_function: Option<StepFunctionOut>,
}

pub fn project(args: ProjectArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let (ds, limits) = system(&args.system)?;
    let n = args.n.unwrap_or(1);
    let (q, r) = rational_slope(args.t.as_deref(), "0")?;
    let measure = projection_measure(&ds, n, q, r, &limits)?;
    let step_function = if args.step_function {
        let f = counting_function(&ds, n, q, r, window(args.window), &limits)?;
        Some(StepFunctionOut {
            breakpoints: (0..f.breakpoints.len())
                .map(|i| rational::to_string(&f.breakpoint(i)))
                .collect(),
            values: f.values.clone(),
            sup: f.sup(),
            integral: rational::to_string(&f.integral()),
            l2_norm_sq: rational::to_string(&f.l2_norm_sq()),
        })
    } else {
        None
    };
    let out = ProjectOut {
        system: SystemOut::from(&ds),
        n,
        slope: format!("{q}/{r}"),
        measure,
        step_function,
    };
    if args.format == Some(Format::Json) {
        return write_json(&args.out, stdout, &out);
    }
    let mut w = sink(&args.out, stdout)?;
    writeln!(
        w,
        "{} × cosθ = {}",
        rational::to_string(&out.measure.rational_part),
        out.measure.value
    )?;
    if let Some(f) = &out.step_function {
        writeln!(w, "x,value")?;
        for (i, x) in f.breakpoints.iter().enumerate() {
            writeln!(w, "{x},{}", f.values.get(i).copied().unwrap_or(0))?;
        }
        writeln!(w, "sup = {}, integral = {}, l2_norm_sq = {}", f.sup, f.integral, f.l2_norm_sq)?;
    }
    w.flush()?;
    Ok(())
}

/// One CSV row per level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FavardRow {
    pub n: u32,
    pub nodes: usize,
    pub favard_estimate: f64,
    pub error_bound: Option<f64>,
    pub n_times_favard: f64,
    pub power_bound: Option<f64>,
}

pub fn read_favard_csv(path: &Path) -> CliResult<Vec<FavardRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    let rows = reader.deserialize().collect::<Result<Vec<FavardRow>, _>>()?;
    Ok(rows)
}

pub fn favard(args: FavardArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let out = require(args.out.clone(), "out")?;
    let (ds, limits) = system(&args.system)?;
    let n_max = args.n_max.unwrap_or(6);
    let n_min = args.n_min.unwrap_or(n_max.min(1));
    if n_min > n_max {
        return Err(CliError::usage("--n-min exceeds --n-max"));
    }
    let nodes = args.nodes.unwrap_or(256);
    let placement = match args.placement.unwrap_or(PlacementArg::Theta) {
        PlacementArg::Theta => NodePlacement::UniformTheta,
        PlacementArg::T => NodePlacement::UniformT,
        PlacementArg::Farey => NodePlacement::Farey {
            order: nodes as u64,
        },
    };
    let spec = QuadratureSpec {
        nodes,
        placement,
        refinements: args.refinements.unwrap_or(3),
    };
    if let Some(p) = args.p {
        if !(p > 0.0) {
            return Err(CliError::usage("--p must be positive"));
        }
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let est = favard_length(&ds, n, &spec, &limits)?;
        rows.push(FavardRow {
            n,
            nodes: est.steps.last().map_or(0, |s| s.nodes),
            favard_estimate: est.estimate,
            error_bound: est.error_bound,
            n_times_favard: n as f64 * est.estimate,
            power_bound: args.p.filter(|_| n > 0).map(|p| (n as f64).powf(-1.0 / p)),
        });
    }
    let mut writer = csv::Writer::from_path(&out)?;
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush()?;

    writeln!(stdout, "wrote {} row(s) to {}", rows.len(), out.display())?;
    let fit: Vec<&FavardRow> = rows.iter().filter(|r| r.n > 0).collect();
    if fit.len() >= 2 {
        let xs: Vec<f64> = fit.iter().map(|r| (r.n as f64).ln()).collect();
        let ys: Vec<f64> = fit.iter().map(|r| r.favard_estimate.ln()).collect();
        let (slope, intercept) = least_squares(&xs, &ys);
        let nonincreasing = rows.windows(2).all(|w| w[1].favard_estimate <= w[0].favard_estimate);
        writeln!(
            stdout,
            "fit Fav(E_n) ≈ {:.6}·n^-{:.6}; nonincreasing: {nonincreasing}",
            intercept.exp(),
            -slope
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TilingOut {
    pub system: SystemOut,
    pub analysis: DirectionAnalysis,
    pub exponents: ExponentReport,
}

pub fn tiling(args: TilingArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let (ds, limits) = system(&args.system)?;
    let q = require(args.q, "q")?;
    let r = require(args.r, "r")?;
    let analysis = direction_analysis(
        &ds,
        q,
        r,
        args.n_probe.unwrap_or(4),
        args.m_max.unwrap_or(DEFAULT_MAX_MODULUS),
        &limits,
    )?;
    let exponents = exponent_report(&ds, q, r)?;
    let out = TilingOut {
        system: SystemOut::from(&ds),
        analysis,
        exponents,
    };
    write_json(&args.out, stdout, &out)
}

fn point(args: PointArgs, stdout: &mut dyn Write, transform: Transform) -> CliResult<()> {
    let (ds, _) = system(&args.system)?;
    let n = args.n.unwrap_or(1);
    let t = slope(args.t.as_deref(), "0")?.value();
    let xi = require(args.xi, "xi")?;
    let z = match transform {
        Transform::NuHat => nu_hat(&ds, n, t, xi),
        Transform::FHat => f_hat(&ds, n, t, xi),
    };
    let mut w = sink(&args.out, stdout)?;
    writeln!(w, "{}", format_complex(z))?;
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub xi: f64,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

pub fn spectral(command: SpectralCommand, stdout: &mut dyn Write) -> CliResult<()> {
    match command {
        SpectralCommand::NuHat(args) => point(args, stdout, Transform::NuHat),
        SpectralCommand::FHat(args) => point(args, stdout, Transform::FHat),
        SpectralCommand::Chi(args) => {
            let xi = require(args.xi, "xi")?;
            let mut w = sink(&args.out, stdout)?;
            writeln!(w, "{}", format_complex(chi(xi)))?;
            w.flush()?;
            Ok(())
        }
        SpectralCommand::Spectrum(args) => {
            let (ds, limits) = system(&args.system)?;
            let s = slope(args.t.as_deref(), "0")?;
            let transform = match args.transform.unwrap_or(TransformArg::NuHat) {
                TransformArg::NuHat => Transform::NuHat,
                TransformArg::FHat => Transform::FHat,
            };
            let lo = args.lo.unwrap_or(0.0);
            let hi = require(args.hi, "hi")?;
            let step = args.step.unwrap_or_else(|| favard_core::spectral::default_step(s.value()));
            let grid = spectrum(&ds, args.n.unwrap_or(1), &s, transform, lo, hi, step, &limits)?;
            let mut writer = csv::Writer::from_writer(sink(&args.out, stdout)?);
            for (xi, z) in grid.xs.iter().zip(&grid.values) {
                writer.serialize(SpectrumRow {
                    xi: *xi,
                    re: z.re,
                    im: z.im,
                    abs: z.norm(),
                })?;
            }
            writer.flush()?;
            Ok(())
        }
        SpectralCommand::Integral(args) => {
            let (ds, limits) = system(&args.system)?;
            let s = slope(args.t.as_deref(), "0")?;
            let n = args.n.unwrap_or(1);
            let m = args.m.unwrap_or(1);
            let big_n = args.big_n.unwrap_or(n + m);
            let report = band_integrals(&ds, big_n, n, m, &s, args.step, args.delta, &limits)?;
            write_json(&args.out, stdout, &report)
        }
        SpectralCommand::Plancherel(args) => {
            let (ds, limits) = system(&args.system)?;
            let (q, r) = rational_slope(args.t.as_deref(), "0")?;
            let report = plancherel_check(
                &ds,
                args.n.unwrap_or(1),
                q,
                r,
                args.xi_max.unwrap_or(1000.0),
                args.step,
                &limits,
            )?;
            write_json(&args.out, stdout, &report)
        }
        SpectralCommand::Zeros(args) => {
            let (ds, limits) = system(&args.system)?;
            let m = args.m.unwrap_or(1);
            let delta = require(args.delta, "delta")?;
            let q = args.q.unwrap_or(2);
            let r = args.r.unwrap_or(1);
            let report = match args.modulus {
                Some(modulus) => zero_set_structure_check(
                    &ds, m, delta, args.epsilon, q, r, modulus, args.step, args.resolution, &limits,
                )?,
                None => {
                    let analysis = direction_analysis(&ds, q, r, 1, DEFAULT_MAX_MODULUS, &limits)?;
                    let cert = analysis.certificate.ok_or_else(|| {
                        CliError::usage(format!("no tiling certificate for {q}/{r}; pass --modulus"))
                    })?;
                    zero_set_structure_search(
                        &ds,
                        m,
                        delta,
                        args.epsilon,
                        q,
                        r,
                        cert.modulus,
                        cert.d.len() as u64,
                        args.step,
                        args.resolution,
                        &limits,
                    )?
                }
            };
            write_json(&args.out, stdout, &report)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum XLambdaOut {
    Single(XLambdaMembership),
    Grid(XLambdaEstimate),
}

/// `count` distinct reduced slopes `q/r ∈ [0, 1]` with `r ≤ max_denominator`.
pub fn random_slopes(count: usize, max_denominator: u64, seed: u64) -> Vec<(u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let available = farey_sequence(max_denominator).len();
    let mut out: Vec<(u64, u64)> = Vec::with_capacity(count.min(available));
    while out.len() < count.min(available) {
        let r = rng.gen_range(1..=max_denominator);
        let q = rng.gen_range(0..=r);
        let g = gcd(q, r);
        let s = (q / g, r / g);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn x_lambda(args: XLambdaArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let (ds, limits) = system(&args.system)?;
    let big_n = args.big_n.unwrap_or(3);
    let lambda: Rational = rational::parse(&require(args.lambda.clone(), "lambda")?)?;
    let w = window(args.window);
    let out = if let Some(t) = args.t.as_deref() {
        let (q, r) = rational_slope(Some(t), "0")?;
        XLambdaOut::Single(x_lambda_member(&ds, big_n, q, r, &lambda, w, &limits)?)
    } else {
        let grid = match args.random_slopes {
            Some(count) => {
                let max_den = args.max_denominator.unwrap_or(16);
                if count == 0 || max_den == 0 {
                    return Err(CliError::usage("--random-slopes and --max-denominator must be positive"));
                }
                random_slopes(count, max_den, args.seed.unwrap_or(0))
            }
            None => farey_sequence(args.farey_order.unwrap_or(8)),
        };
        XLambdaOut::Grid(x_lambda_measure_estimate(&ds, big_n, &lambda, &grid, w, &limits)?)
    };
    write_json(&args.out, stdout, &out)
}
