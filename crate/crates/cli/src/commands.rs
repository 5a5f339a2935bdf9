use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::io::Write;
use std::path::{Path, PathBuf};

use quatpw::fixtures::{nodes_for_step, random_compact_spectrum, rng};
use quatpw::hardy::{boundary_trace, hardy_membership, rk_halfspace, rk_reproduce, synthesize_hardy, BoundaryTrace, HalfLineSpectrum};
use quatpw::paley_wiener::{reproduce, synthesize_compact, CompactSpectrum};
use quatpw::qft::{default_frequency_grid, essential_deviation, qft_left};
use quatpw::sampling::{estimate_tail_energy, truncation_bound, wks_reconstruct_checked, SampleSet};
use quatpw::slice::SliceFunction;
use quatpw::verify::{run_suite, Report, Suite, VerifyConfig};
use quatpw::{ImaginaryUnit, LineSamples, Quaternion, UniformGrid};
use serde::{Deserialize, Serialize};

use crate::args::{KernelArgs, QftArgs, ReconstructArgs, SynthArgs, VerifyArgs};
use crate::error::CliError;
use crate::io::{
    evaluations_csv, line_samples_csv, read_json, sample_set_csv, spectrum_csv, to_json, write_atomic, write_json,
};

/// Window order of generated spectra.
const GENERATED_ORDER: i32 = 8;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum AnySpectrum {
    Compact(CompactSpectrum),
    HalfLine(HalfLineSpectrum),
}

#[derive(Debug, Serialize)]
struct Manifest {
    kind: &'static str,
    spectrum_grid: UniformGrid,
    spectrum_unit: ImaginaryUnit,
    slice_unit: ImaginaryUnit,
    #[serde(skip_serializing_if = "Option::is_none")]
    line_grid: Option<UniformGrid>,
    offset: f64,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    trunc_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    quadrature: &'static str,
    output: PathBuf,
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

pub fn synth(a: &SynthArgs) -> Result<(), CliError> {
    let (spectrum, seed) = match (&a.spectrum, a.band) {
        (Some(path), _) => (read_json::<AnySpectrum>(path)?, None),
        (None, Some(band)) => {
            if !(band > 0.0 && band.is_finite()) {
                return Err(CliError::Usage(format!("--band must be positive, got {band}")));
            }
            let reach = a.trunc_k.map_or(a.extent, |k| a.extent.max(PI * k as f64 / band));
            let n = nodes_for_step(band, (PI / (4.0 * reach.max(1.0))).min(0.05));
            let unit = a.unit.unwrap_or(ImaginaryUnit::I);
            let s = random_compact_spectrum(&mut rng(a.seed), band, n, unit, GENERATED_ORDER)?;
            if let Some(p) = &a.spectrum_out {
                write_json(p, &s)?;
            }
            (AnySpectrum::Compact(s), Some(a.seed))
        }
        (None, None) => return Err(CliError::Usage("synth needs --spectrum FILE or --band A".into())),
    };
    if !(a.extent > 0.0 && a.grid_step > 0.0) {
        return Err(CliError::Usage("--extent and --grid-step must be positive".into()));
    }
    match spectrum {
        AnySpectrum::Compact(s) => synth_compact(a, s, seed),
        AnySpectrum::HalfLine(s) => synth_half_line(a, s, seed),
    }
}

fn synth_compact(a: &SynthArgs, s: CompactSpectrum, seed: Option<u64>) -> Result<(), CliError> {
    s.validate()?;
    let f = synthesize_compact(&s)?;
    let unit = a.unit.unwrap_or(s.unit);
    let offset = a.offset.unwrap_or(0.0);
    let mut manifest = Manifest {
        kind: "compact",
        spectrum_grid: s.grid,
        spectrum_unit: s.unit,
        slice_unit: unit,
        line_grid: None,
        offset,
        trunc_k: a.trunc_k,
        seed,
        quadrature: "trapezoid",
        output: a.out.clone(),
    };
    if let Some(k) = a.trunc_k {
        if offset != 0.0 {
            return Err(CliError::Usage("--trunc-K samples the real line; drop --offset".into()));
        }
        let set = SampleSet::from_fn(s.band, k, |x| f.eval(Quaternion::real(x)))?;
        write_output(&a.out, a.csv, &set, sample_set_csv)?;
    } else {
        let grid = UniformGrid::symmetric(a.extent, a.grid_step)?;
        let samples = LineSamples::from_fn(grid, |x| f.eval(unit.at(x, offset)))?.with_unit(unit);
        write_output(&a.out, a.csv, &samples, line_samples_csv)?;
        manifest.line_grid = Some(grid);
    }
    write_json(&manifest_path(&a.out), &manifest)
}

fn synth_half_line(a: &SynthArgs, s: HalfLineSpectrum, seed: Option<u64>) -> Result<(), CliError> {
    s.validate()?;
    if a.trunc_k.is_some() {
        return Err(CliError::Usage("--trunc-K applies to compact spectra only".into()));
    }
    let unit = a.unit.unwrap_or(s.unit);
    let offset = a.offset.unwrap_or(1.0);
    let grid = UniformGrid::symmetric(a.extent, a.grid_step)?;
    let samples = if offset == 0.0 {
        boundary_trace(&s, unit, grid)?.samples()
    } else {
        // vertical line x = offset on the slice of `unit`
        let values = grid
            .nodes()
            .into_iter()
            .map(|y| synthesize_hardy(&s, unit.at(offset, y)))
            .collect::<Result<Vec<_>, _>>()?;
        LineSamples::new(grid, values)?.with_unit(unit)
    };
    write_output(&a.out, a.csv, &samples, line_samples_csv)?;
    let manifest = Manifest {
        kind: "half-line",
        spectrum_grid: s.grid,
        spectrum_unit: s.unit,
        slice_unit: unit,
        line_grid: Some(grid),
        offset,
        trunc_k: None,
        seed,
        quadrature: "trapezoid",
        output: a.out.clone(),
    };
    write_json(&manifest_path(&a.out), &manifest)
}

fn write_output<T: Serialize>(
    path: &Path,
    csv: bool,
    value: &T,
    to_csv: impl Fn(&T) -> Result<Vec<u8>, CliError>,
) -> Result<(), CliError> {
    let bytes = if csv { to_csv(value)? } else { to_json(value)? };
    write_atomic(path, &bytes)
}

#[derive(Debug, Serialize)]
struct EssentialReport {
    units: Vec<ImaginaryUnit>,
    max_deviation: f64,
    tolerance: f64,
    halfline_support: bool,
    pass: bool,
}

pub fn qft(a: &QftArgs) -> Result<(), CliError> {
    let inputs = a
        .input
        .iter()
        .map(|p| read_json::<LineSamples>(p))
        .collect::<Result<Vec<_>, _>>()?;
    for s in &inputs {
        s.validate()?;
    }
    if !a.essential {
        let [f] = inputs.as_slice() else {
            return Err(CliError::Usage("several inputs need --essential".into()));
        };
        let unit = a.unit.or(f.unit).unwrap_or(ImaginaryUnit::I);
        let s = qft_left(f, unit)?;
        return write_output(&a.out, a.csv, &s, spectrum_csv);
    }

    let traces: Vec<BoundaryTrace> = match inputs.as_slice() {
        [single] => {
            let unit = a.unit.or(single.unit).unwrap_or(ImaginaryUnit::I);
            let base = BoundaryTrace::new(unit, single.clone())?;
            let diagonal = ImaginaryUnit::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0)?;
            [ImaginaryUnit::I, ImaginaryUnit::J, diagonal]
                .into_iter()
                .map(|u| base.transport(u))
                .collect::<Result<_, _>>()?
        }
        many => {
            if a.unit.is_some() {
                return Err(CliError::Usage("--unit conflicts with several traces; each carries its own".into()));
            }
            let grid = many[0].grid;
            if many.iter().any(|s| s.grid != grid) {
                return Err(CliError::Input("boundary traces must share one grid".into()));
            }
            many.iter()
                .map(|s| BoundaryTrace::from_samples(s.clone()))
                .collect::<Result<_, _>>()?
        }
    };
    let samples: Vec<LineSamples> = traces.iter().map(BoundaryTrace::samples).collect();
    let essential = essential_deviation(&samples, default_frequency_grid(&samples[0].grid)?)?;
    let halfline_support = hardy_membership(&traces[0], 2.0, a.support_tol)?;
    let report = EssentialReport {
        units: traces.iter().map(BoundaryTrace::unit).collect(),
        max_deviation: essential.max_deviation,
        tolerance: a.tol,
        halfline_support,
        pass: essential.max_deviation <= a.tol && halfline_support,
    };
    write_output(&a.out, a.csv, &essential.spectrum, spectrum_csv)?;
    print_json(&report)?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "not a Hardy boundary trace: deviation {:e}, half-line support {}",
            report.max_deviation, report.halfline_support
        )))
    }
}

#[derive(Debug, Serialize)]
struct Reconstruction {
    band: f64,
    #[serde(rename = "K")]
    k: usize,
    strip: f64,
    method: &'static str,
    points: Vec<Quaternion>,
    values: Vec<Quaternion>,
    /// Absent when the samples do not decay.
    tail_energy: Option<f64>,
    truncation_bound: Option<f64>,
}

pub fn reconstruct(a: &ReconstructArgs) -> Result<(), CliError> {
    let mut set: SampleSet = read_json(&a.samples)?;
    set.validate()?;
    if let Some(k) = a.trunc_k {
        set = set.truncate(k)?;
    }
    if !(a.strip >= 0.0) {
        return Err(CliError::Usage("--strip must be nonnegative".into()));
    }
    let points: Vec<Quaternion> = match (&a.points, a.at) {
        (Some(path), _) => read_json(path)?,
        (None, Some(q)) => vec![q],
        (None, None) => return Err(CliError::Usage("reconstruct needs --points FILE or --at w,x,y,z".into())),
    };
    let values = if a.kernel {
        let k = set.k as i64;
        let grid = UniformGrid::new(set.node(-k), set.node(k), set.values.len())?;
        let line = LineSamples::new(grid, set.values.clone())?;
        points
            .iter()
            .map(|&q| {
                wks_reconstruct_checked(&set, q, a.strip)?;
                reproduce(&line, set.band, q)
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        points
            .iter()
            .map(|&q| wks_reconstruct_checked(&set, q, a.strip))
            .collect::<Result<Vec<_>, _>>()?
    };
    let tail = estimate_tail_energy(&set);
    let bound = if tail.is_finite() {
        Some(truncation_bound(set.band, a.strip, 2.0, tail)?)
    } else {
        None
    };
    if a.csv {
        return write_atomic(&a.out, &evaluations_csv(&points, &values)?);
    }
    let out = Reconstruction {
        band: set.band,
        k: set.k,
        strip: a.strip,
        method: if a.kernel { "kernel" } else { "series" },
        points,
        values,
        tail_energy: tail.is_finite().then_some(tail),
        truncation_bound: bound,
    };
    write_json(&a.out, &out)
}

/// Suite names understood by `verify`: the library suites plus `cli`.
pub const CLI_SUITE: &str = "cli";

pub fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let names: Vec<&str> = a.suite.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(CliError::Usage(format!(
            "no suite given; choose from {}, {CLI_SUITE}",
            Suite::ALL.map(Suite::name).join(", ")
        )));
    }
    let mut suites = Vec::with_capacity(names.len());
    for name in &names {
        if *name == CLI_SUITE {
            suites.push(None);
        } else {
            let s = name.parse::<Suite>().map_err(|e| CliError::Usage(e.to_string()))?;
            suites.push(Some(s));
        }
    }
    let config = VerifyConfig {
        seed: a.seed,
        trunc_k: a.trunc_k,
    };
    let mut reports = Vec::with_capacity(suites.len());
    for s in suites {
        reports.push(match s {
            Some(s) => run_suite(s, &config)?,
            None => crate::cli_suite::run(a.seed)?,
        });
    }
    let bytes = match reports.as_slice() {
        [one] => to_json(one)?,
        many => to_json(&many)?,
    };
    match &a.out {
        Some(path) => {
            write_atomic(path, &bytes)?;
            for r in &reports {
                eprint!("{}", summary(r));
            }
        }
        None => write_stdout(&bytes)?,
    }
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.pass).map(move |c| format!("{}/{}", r.suite, c.name)))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("failed checks: {}", failed.join(", "))))
    }
}

fn summary(r: &Report) -> String {
    r.checks
        .iter()
        .map(|c| {
            let tag = if c.pass { "pass" } else { "FAIL" };
            format!("{tag} {}/{} {:.3e} <= {:.3e}\n", r.suite, c.name, c.max_error, c.tolerance)
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct KernelValue {
    q1: Quaternion,
    q2: Quaternion,
    value: Quaternion,
}

#[derive(Debug, Serialize)]
struct Reproduced {
    unit: ImaginaryUnit,
    point: Quaternion,
    value: Quaternion,
}

pub fn kernel_eval(a: &KernelArgs) -> Result<(), CliError> {
    let bytes = match (a.q1, a.q2, &a.trace, a.at) {
        (Some(q1), Some(q2), None, _) => to_json(&KernelValue {
            q1,
            q2,
            value: rk_halfspace(q1, q2)?,
        })?,
        (None, _, Some(path), Some(at)) => {
            let samples: LineSamples = read_json(path)?;
            let trace = BoundaryTrace::from_samples(samples)?;
            to_json(&Reproduced {
                unit: trace.unit(),
                point: at,
                value: rk_reproduce(&trace, at)?,
            })?
        }
        _ => return Err(CliError::Usage("kernel-eval needs --q1 and --q2, or --trace FILE with --at".into())),
    };
    match &a.out {
        Some(path) => write_atomic(path, &bytes),
        None => write_stdout(&bytes),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    write_stdout(&to_json(value)?)
}

fn write_stdout(bytes: &[u8]) -> Result<(), CliError> {
    std::io::stdout()
        .write_all(bytes)
        .map_err(|e| CliError::io(Path::new("<stdout>"), e))
}
