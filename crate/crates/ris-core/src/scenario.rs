//! Scenario description files: a sectioned key-value (TOML) format fixing the
//! enclosure geometry, dipole parameters, RIS layout, perturber, and the
//! frequency band. A scenario file plus a seed fully determines every number
//! the pipeline produces.
//!
//! Three scenarios ship with the crate and can be referenced by name instead
//! of a path: `default-n21` (the canonical 21-element scene), `small-n10`
//! (used wherever exhaustive ground truth is needed), and `tiny-n4` (a
//! seconds-scale scene for smoke tests and demos).

use serde::Deserialize;
use std::path::Path;

use crate::config::FrequencyGrid;
use crate::error::{Error, Result};
use crate::physics::{Dipole, Environment, RisElement};

pub const SCHEMA_VERSION: u32 = 1;

pub const BUILTIN_DEFAULT_N21: &str = "default-n21";
pub const BUILTIN_SMALL_N10: &str = "small-n10";
pub const BUILTIN_TINY_N4: &str = "tiny-n4";

const DEFAULT_N21_TOML: &str = include_str!("../scenarios/default_n21.scn");
const SMALL_N10_TOML: &str = include_str!("../scenarios/small_n10.scn");
const TINY_N4_TOML: &str = include_str!("../scenarios/tiny_n4.scn");

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    /// Propagation speed used to convert frequency to wavenumber.
    #[serde(default = "default_wave_speed")]
    pub wave_speed: f64,
    pub frequency: FrequencyBand,
    pub enclosure: Enclosure,
    /// Fixed irregular scatterers inside the enclosure.
    #[serde(default)]
    pub scatterers: Vec<DipoleSpec>,
    pub tx: DipoleSpec,
    pub rx: DipoleSpec,
    pub ris: RisSpec,
    pub perturber: PerturberSpec,
}

fn default_wave_speed() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrequencyBand {
    pub f_min: f64,
    pub f_max: f64,
    pub bins: usize,
}

/// Closed polygon of wall vertices, sampled into dipoles every `spacing`
/// length units along each edge.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Enclosure {
    pub vertices: Vec<[f64; 2]>,
    pub spacing: f64,
    pub resonance: f64,
    pub linewidth: f64,
    pub coupling: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DipoleSpec {
    pub position: [f64; 2],
    pub resonance: f64,
    pub linewidth: f64,
    pub coupling: f64,
}

impl DipoleSpec {
    fn to_dipole(&self) -> Dipole {
        Dipole {
            position: self.position,
            resonance: self.resonance,
            linewidth: self.linewidth,
            coupling: self.coupling,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RisSpec {
    pub positions: Vec<[f64; 2]>,
    /// Element resonance in state 0, detuned below the band.
    pub resonance_off: f64,
    /// Element resonance in state 1, inside the band.
    pub resonance_on: f64,
    pub linewidth: f64,
    pub coupling: f64,
}

/// Rigid rotating object: dipole offsets relative to `pivot`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerturberSpec {
    pub pivot: [f64; 2],
    #[serde(default)]
    pub offsets: Vec<[f64; 2]>,
    pub resonance: f64,
    pub linewidth: f64,
    pub coupling: f64,
}

impl Scenario {
    /// Parses scenario text, reporting the offending line on failure.
    pub fn parse(text: &str) -> Result<Scenario> {
        toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|span| text[..span.start.min(text.len())].lines().count().max(1))
                .unwrap_or(1);
            Error::parse(line, e.message().to_string())
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Scenario> {
        let text = std::fs::read_to_string(path)?;
        Scenario::parse(&text)
    }

    /// One of the scenarios shipped with the crate, by name.
    pub fn builtin(name: &str) -> Option<Scenario> {
        let text = match name {
            BUILTIN_DEFAULT_N21 => DEFAULT_N21_TOML,
            BUILTIN_SMALL_N10 => SMALL_N10_TOML,
            BUILTIN_TINY_N4 => TINY_N4_TOML,
            _ => return None,
        };
        Some(Scenario::parse(text).expect("builtin scenario must parse"))
    }

    /// Resolves a `--scenario` argument: a builtin name or a file path.
    pub fn resolve(name_or_path: &str) -> Result<Scenario> {
        if let Some(s) = Scenario::builtin(name_or_path) {
            return Ok(s);
        }
        Scenario::load(name_or_path)
    }

    pub fn n_ris(&self) -> usize {
        self.ris.positions.len()
    }

    pub fn bins(&self) -> usize {
        self.frequency.bins
    }
}

/// Instantiates the dipole scene a scenario describes. Deterministic.
pub fn build_environment(scenario: &Scenario) -> Result<Environment> {
    if scenario.schema_version != SCHEMA_VERSION {
        return Err(Error::validation(format!(
            "unsupported scenario schema version {} (expected {SCHEMA_VERSION})",
            scenario.schema_version
        )));
    }
    if scenario.ris.positions.is_empty() {
        return Err(Error::validation("scenario must define at least one RIS element"));
    }
    if scenario.enclosure.vertices.len() < 3 {
        return Err(Error::validation("enclosure polygon needs at least three vertices"));
    }
    if !(scenario.enclosure.spacing.is_finite() && scenario.enclosure.spacing > 0.0) {
        return Err(Error::validation("wall dipole spacing must be positive"));
    }

    let grid = FrequencyGrid::linspace(
        scenario.frequency.f_min,
        scenario.frequency.f_max,
        scenario.frequency.bins,
    )?;

    let mut statics = sample_walls(&scenario.enclosure);
    statics.extend(scenario.scatterers.iter().map(DipoleSpec::to_dipole));

    let ris: Vec<RisElement> = scenario
        .ris
        .positions
        .iter()
        .map(|&position| RisElement {
            position,
            resonance_off: scenario.ris.resonance_off,
            resonance_on: scenario.ris.resonance_on,
            linewidth: scenario.ris.linewidth,
            coupling: scenario.ris.coupling,
        })
        .collect();

    let perturber: Vec<Dipole> = scenario
        .perturber
        .offsets
        .iter()
        .map(|&offset| Dipole {
            position: offset,
            resonance: scenario.perturber.resonance,
            linewidth: scenario.perturber.linewidth,
            coupling: scenario.perturber.coupling,
        })
        .collect();

    Environment::new(
        statics,
        scenario.tx.to_dipole(),
        scenario.rx.to_dipole(),
        ris,
        perturber,
        scenario.perturber.pivot,
        grid,
        scenario.wave_speed,
    )
}

/// Walks the closed polygon and places a wall dipole every ~`spacing` units.
/// Each edge gets round(len/spacing) evenly spaced dipoles starting at its
/// first vertex, so vertices are sampled exactly once.
fn sample_walls(enclosure: &Enclosure) -> Vec<Dipole> {
    let verts = &enclosure.vertices;
    let mut out = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        let b = verts[(i + 1) % verts.len()];
        let len = crate::physics::distance(a, b);
        let count = ((len / enclosure.spacing).round() as usize).max(1);
        for j in 0..count {
            let t = j as f64 / count as f64;
            out.push(Dipole {
                position: [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])],
                resonance: enclosure.resonance,
                linewidth: enclosure.linewidth,
                coupling: enclosure.coupling,
            });
        }
    }
    out
}
