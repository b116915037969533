//! Two-dimensional coupled-dipole model of an irregular metallic enclosure
//! holding a transmitter, a receiver, an N-element binary-tunable RIS, and a
//! rigid perturbing object that rotates about a fixed pivot.
//!
//! Every dipole carries a Lorentzian inverse polarizability
//! `1/α(f) = (f_res² − f² − i·γ·f) / coupling²` on the diagonal of the
//! interaction matrix; off-diagonal entries are the free-space 2D Green's
//! function `(i/4)·H0⁽¹⁾(k·|r_j − r_k|)` with `k = 2π f / wave_speed`.
//! The channel is the (rx, tx) entry of the inverted matrix, scaled by the
//! tx and rx coupling strengths.
//!
//! RIS element states are two resonance frequencies per dipole: state 0
//! detuned below the band, state 1 inside it.
//!
//! Dipole ordering inside the matrix: enclosure walls and fixed scatterers,
//! then tx, rx, the N RIS elements, and finally the perturber dipoles.

pub mod bessel;
pub mod matrix;

mod channel;

pub use channel::{
    channel_response, channel_response_fast, sample_moments, AngleFactorization, ConfigSolver,
};

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::config::{FrequencyGrid, RisConfiguration};
use crate::error::{Error, Result};

/// Minimum separation between any two dipoles; closer pairs are treated as
/// overlapping and rejected.
pub const MIN_DIPOLE_SEPARATION: f64 = 1e-9;

/// A single polarizable scatterer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dipole {
    /// 2D coordinates, arbitrary length units.
    pub position: [f64; 2],
    pub resonance: f64,
    pub linewidth: f64,
    pub coupling: f64,
}

impl Dipole {
    fn validate(&self, what: &str) -> Result<()> {
        let ok = self.position.iter().all(|c| c.is_finite())
            && self.resonance > 0.0
            && self.resonance.is_finite()
            && self.linewidth > 0.0
            && self.linewidth.is_finite()
            && self.coupling > 0.0
            && self.coupling.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::validation(format!("{what}: dipole parameters must be positive and finite")))
        }
    }
}

/// One binary-tunable RIS element: a dipole whose resonance frequency is
/// switched between two values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RisElement {
    pub position: [f64; 2],
    /// Resonance in state 0 (detuned).
    pub resonance_off: f64,
    /// Resonance in state 1 (in band).
    pub resonance_on: f64,
    pub linewidth: f64,
    pub coupling: f64,
}

impl RisElement {
    fn as_dipole(&self, bit: u8) -> Dipole {
        Dipole {
            position: self.position,
            resonance: if bit == 1 { self.resonance_on } else { self.resonance_off },
            linewidth: self.linewidth,
            coupling: self.coupling,
        }
    }

    /// Diagonal-entry shift when the element switches 0 → 1. Constant in f
    /// whenever both states share linewidth and coupling.
    fn state_shift(&self, f: f64) -> Complex64 {
        inverse_polarizability(self.resonance_on, self.linewidth, self.coupling, f)
            - inverse_polarizability(self.resonance_off, self.linewidth, self.coupling, f)
    }
}

/// Orientation of the perturbing object, radians in [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturberState {
    angle: f64,
}

impl PerturberState {
    /// Wraps any finite angle into [0, 2π).
    pub fn new(angle: f64) -> Self {
        PerturberState { angle: angle.rem_euclid(TAU) }
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }
}

/// The full scattering scene. Immutable once built.
#[derive(Debug, Clone)]
pub struct Environment {
    statics: Vec<Dipole>,
    tx: Dipole,
    rx: Dipole,
    ris: Vec<RisElement>,
    /// Perturber dipoles; positions are offsets relative to `pivot`.
    perturber: Vec<Dipole>,
    pivot: [f64; 2],
    grid: FrequencyGrid,
    wave_speed: f64,
}

impl Environment {
    pub fn new(
        statics: Vec<Dipole>,
        tx: Dipole,
        rx: Dipole,
        ris: Vec<RisElement>,
        perturber: Vec<Dipole>,
        pivot: [f64; 2],
        grid: FrequencyGrid,
        wave_speed: f64,
    ) -> Result<Self> {
        if ris.is_empty() {
            return Err(Error::validation("environment needs at least one RIS element"));
        }
        if !(wave_speed.is_finite() && wave_speed > 0.0) {
            return Err(Error::validation("wave speed must be positive"));
        }
        for d in &statics {
            d.validate("static dipole")?;
        }
        tx.validate("tx")?;
        rx.validate("rx")?;
        for r in &ris {
            r.as_dipole(0).validate("ris element (state 0)")?;
            r.as_dipole(1).validate("ris element (state 1)")?;
        }
        for d in &perturber {
            d.validate("perturber dipole")?;
        }

        let mut fixed_positions: Vec<[f64; 2]> = statics.iter().map(|d| d.position).collect();
        fixed_positions.push(tx.position);
        fixed_positions.push(rx.position);
        fixed_positions.extend(ris.iter().map(|r| r.position));
        check_distinct(&fixed_positions, "fixed dipoles")?;
        let offsets: Vec<[f64; 2]> = perturber.iter().map(|d| d.position).collect();
        check_distinct(&offsets, "perturber dipoles")?;

        Ok(Environment { statics, tx, rx, ris, perturber, pivot, grid, wave_speed })
    }

    pub fn n_ris(&self) -> usize {
        self.ris.len()
    }

    pub fn bins(&self) -> usize {
        self.grid.len()
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn perturber_count(&self) -> usize {
        self.perturber.len()
    }

    /// Count of dipoles that do not rotate: walls, scatterers, tx, rx, RIS.
    pub fn static_count(&self) -> usize {
        self.statics.len() + 2 + self.ris.len()
    }

    pub fn dipole_count(&self) -> usize {
        self.static_count() + self.perturber.len()
    }

    pub fn tx_index(&self) -> usize {
        self.statics.len()
    }

    pub fn rx_index(&self) -> usize {
        self.statics.len() + 1
    }

    pub fn ris_index(&self, element: usize) -> usize {
        self.statics.len() + 2 + element
    }

    pub fn wavenumber(&self, f: f64) -> f64 {
        TAU * f / self.wave_speed
    }

    /// Drops the perturber; the resulting scene is fully deterministic in the
    /// orientation argument.
    pub fn without_perturber(&self) -> Environment {
        let mut env = self.clone();
        env.perturber.clear();
        env
    }

    pub(crate) fn channel_scale(&self) -> f64 {
        self.tx.coupling * self.rx.coupling
    }

    fn check_config(&self, config: &RisConfiguration) -> Result<()> {
        if config.len() != self.ris.len() {
            return Err(Error::validation(format!(
                "configuration has {} elements, environment has {}",
                config.len(),
                self.ris.len()
            )));
        }
        Ok(())
    }

    /// Dipoles of the non-rotating block, with RIS states resolved.
    fn static_dipoles(&self, config: &RisConfiguration) -> Vec<Dipole> {
        let mut out = Vec::with_capacity(self.static_count());
        out.extend_from_slice(&self.statics);
        out.push(self.tx);
        out.push(self.rx);
        out.extend(self.ris.iter().zip(config.bits()).map(|(r, &b)| r.as_dipole(b)));
        out
    }

    /// Perturber dipoles placed at orientation `state`.
    fn perturber_dipoles(&self, state: PerturberState) -> Vec<Dipole> {
        let (sin, cos) = state.angle.sin_cos();
        self.perturber
            .iter()
            .map(|d| {
                let [ox, oy] = d.position;
                Dipole {
                    position: [
                        self.pivot[0] + cos * ox - sin * oy,
                        self.pivot[1] + sin * ox + cos * oy,
                    ],
                    ..*d
                }
            })
            .collect()
    }

    fn all_dipoles(&self, config: &RisConfiguration, state: PerturberState) -> Vec<Dipole> {
        let mut out = self.static_dipoles(config);
        out.extend(self.perturber_dipoles(state));
        out
    }
}

fn check_distinct(positions: &[[f64; 2]], what: &str) -> Result<()> {
    for i in 0..positions.len() {
        for j in (i + 1)..positions.len() {
            if distance(positions[i], positions[j]) < MIN_DIPOLE_SEPARATION {
                return Err(Error::validation(format!(
                    "{what}: positions {i} and {j} overlap at ({}, {})",
                    positions[i][0], positions[i][1]
                )));
            }
        }
    }
    Ok(())
}

#[inline]
pub(crate) fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    (dx * dx + dy * dy).sqrt()
}

#[inline]
pub(crate) fn inverse_polarizability(resonance: f64, linewidth: f64, coupling: f64, f: f64) -> Complex64 {
    Complex64::new(resonance * resonance - f * f, -linewidth * f) / (coupling * coupling)
}

/// Free-space 2D Green's function (i/4)·H0⁽¹⁾(k·d).
#[inline]
pub(crate) fn greens_2d(k: f64, d: f64) -> Complex64 {
    let h = bessel::hankel0(k * d);
    // (i/4)(J0 + iY0) = (−Y0 + iJ0)/4
    Complex64::new(-0.25 * h.im, 0.25 * h.re)
}

/// Assembles the coupled-dipole interaction matrix for an explicit dipole
/// list at frequency `f`.
pub(crate) fn assemble(dipoles: &[Dipole], k: f64, f: f64) -> Result<matrix::CMatrix> {
    let n = dipoles.len();
    let mut m = matrix::CMatrix::zeros(n, n);
    for (i, d) in dipoles.iter().enumerate() {
        m.set(i, i, inverse_polarizability(d.resonance, d.linewidth, d.coupling, f));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let d = distance(dipoles[i].position, dipoles[j].position);
            if d < MIN_DIPOLE_SEPARATION {
                return Err(Error::numerical(format!(
                    "dipoles {i} and {j} overlap during assembly (separation {d:.3e})"
                )));
            }
            let g = greens_2d(k, d);
            m.set(i, j, g);
            m.set(j, i, g);
        }
    }
    Ok(m)
}

/// The full interaction matrix for (configuration, orientation, frequency).
///
/// Symmetric by construction; the diagonal holds inverse polarizabilities and
/// RIS rows reflect the configured bit.
pub fn interaction_matrix(
    env: &Environment,
    config: &RisConfiguration,
    state: PerturberState,
    f: f64,
) -> Result<matrix::CMatrix> {
    env.check_config(config)?;
    if !(f.is_finite() && f > 0.0) {
        return Err(Error::validation(format!("frequency must be positive, got {f}")));
    }
    let dipoles = env.all_dipoles(config, state);
    assemble(&dipoles, env.wavenumber(f), f)
}

#[cfg(test)]
mod tests;
