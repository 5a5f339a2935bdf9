//! Checks of the command-line surface itself: file fidelity, the exit-code
//! table and reproducible bytes.

use std::f64::consts::PI;
use std::io;

use quatpw::fixtures::{random_compact_spectrum, random_quaternion, random_unit, rng, TestRng};
use quatpw::hardy::{BoundaryTrace, HalfLineSpectrum};
use quatpw::paley_wiener::CompactSpectrum;
use quatpw::sampling::SampleSet;
use quatpw::verify::{run_suite, Check, Report, Suite, VerifyConfig};
use quatpw::{Error, ImaginaryUnit, LineSamples, Quaternion, Spectrum, UniformGrid};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::commands::CLI_SUITE;
use crate::error::CliError;
use crate::io::to_json;

/// Counts value or byte mismatches after one write→read→write cycle.
fn round_trip<T: Serialize + DeserializeOwned + PartialEq>(x: &T) -> Result<usize, CliError> {
    let bytes = to_json(x)?;
    let back: T = serde_json::from_slice(&bytes).map_err(Error::from)?;
    Ok(usize::from(&back != x) + usize::from(to_json(&back)? != bytes))
}

fn values(g: &mut TestRng, n: usize) -> Vec<Quaternion> {
    (0..n).map(|_| random_quaternion(g, 1e3)).collect()
}

fn json_round_trip(g: &mut TestRng) -> Result<Check, CliError> {
    let line = UniformGrid::symmetric(3.0, 0.5)?;
    let n = line.n;
    let unit = random_unit(g);
    let samples = LineSamples::new(line, values(g, n))?.with_unit(unit);
    let spectrum = Spectrum::new(line, unit, values(g, n))?;
    let compact = random_compact_spectrum(g, PI, 33, unit, 4)?;
    let mut half_values = values(g, 9);
    half_values[0] = Quaternion::ZERO;
    let half = HalfLineSpectrum::new(8.0, 9, unit, half_values)?;
    let set = SampleSet::new(2.5, 4, values(g, 9))?;
    let trace = BoundaryTrace::new(unit, samples.clone())?;
    let report = Report {
        suite: "x".into(),
        checks: vec![Check::new("c", 1.0 / 3.0, 1e-300)],
        seed: u64::MAX,
    };
    let points = values(g, 5);
    let mismatches = round_trip(&line)?
        + round_trip(&samples)?
        + round_trip(&spectrum)?
        + round_trip::<CompactSpectrum>(&compact)?
        + round_trip(&half)?
        + round_trip(&set)?
        + round_trip(&trace)?
        + round_trip(&report)?
        + round_trip(&points)?;
    Ok(Check::new("json-round-trip", mismatches as f64, 0.0))
}

fn exit_code_contract() -> Check {
    let table = [
        (CliError::Usage(String::new()), 2),
        (CliError::Core(Error::InvalidArgument(String::new())), 2),
        (CliError::Core(Error::Truncation(String::new())), 3),
        (CliError::Core(Error::Invariant(String::new())), 4),
        (CliError::Failed(String::new()), 4),
        (CliError::Core(Error::Domain(String::new())), 5),
        (CliError::io(std::path::Path::new("x"), io::Error::other("x")), 1),
    ];
    let wrong = table.iter().filter(|(e, code)| e.exit_code() != *code).count();
    Check::new("exit-code-contract", wrong as f64, 0.0)
}

fn deterministic_bytes(seed: u64) -> Result<Check, CliError> {
    let config = VerifyConfig {
        seed,
        ..VerifyConfig::default()
    };
    let a = to_json(&run_suite(Suite::Structure, &config)?)?;
    let b = to_json(&run_suite(Suite::Structure, &config)?)?;
    let c = to_json(&random_compact_spectrum(&mut rng(seed), 2.0, 101, ImaginaryUnit::K, 8)?)?;
    let d = to_json(&random_compact_spectrum(&mut rng(seed), 2.0, 101, ImaginaryUnit::K, 8)?)?;
    Ok(Check::flag("deterministic-bytes", a == b && c == d))
}

pub fn run(seed: u64) -> Result<Report, CliError> {
    let mut g = rng(seed);
    Ok(Report {
        suite: CLI_SUITE.into(),
        checks: vec![json_round_trip(&mut g)?, exit_code_contract(), deterministic_bytes(seed)?],
        seed,
    })
}
