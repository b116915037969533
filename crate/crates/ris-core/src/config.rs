//! Shared domain types: RIS configurations and the value vectors that flow
//! between the simulator, the surrogate, and the rate estimators.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Ordered vector of binary element states; the optimizer's search variable.
///
/// Indexing convention: bit `j` of the packed integer form is element `j`,
/// least-significant bit first, so the exhaustive sweep order over indices
/// `0..2^n` is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RisConfiguration {
    bits: Vec<u8>,
}

impl RisConfiguration {
    /// Builds a configuration from raw bits. Every entry must be 0 or 1.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::validation("configuration must have at least one element"));
        }
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::validation(format!("configuration entries must be 0/1, got {bad}")));
        }
        Ok(RisConfiguration { bits })
    }

    pub fn zeros(n: usize) -> Self {
        RisConfiguration { bits: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn bit(&self, j: usize) -> u8 {
        self.bits[j]
    }

    /// Bitwise complement.
    pub fn complement(&self) -> Self {
        RisConfiguration { bits: self.bits.iter().map(|b| 1 - b).collect() }
    }

    /// `"0"`/`"1"` string, element 0 first. Inverse of [`RisConfiguration::parse_bits`].
    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect()
    }

    pub fn parse_bits(s: &str) -> Result<Self> {
        let bits: Vec<u8> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::validation(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<_>>()?;
        RisConfiguration::new(bits)
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        RisConfiguration { bits }
    }
}

/// Decodes `index` into its length-`n` binary expansion, bit 0 least significant.
pub fn config_from_index(index: u64, n: usize) -> Result<RisConfiguration> {
    if n == 0 {
        return Err(Error::validation("element count must be positive"));
    }
    if n > 63 {
        return Err(Error::validation(format!("index encoding supports at most 63 elements, got {n}")));
    }
    if index >= (1u64 << n) {
        return Err(Error::validation(format!("index {index} out of range for {n} elements")));
    }
    let bits = (0..n).map(|j| ((index >> j) & 1) as u8).collect();
    Ok(RisConfiguration { bits })
}

/// Packs a configuration back into its index. Inverse of [`config_from_index`].
///
/// Panics if the configuration has more than 63 elements.
pub fn index_of(config: &RisConfiguration) -> u64 {
    assert!(config.len() <= 63, "index encoding supports at most 63 elements");
    config
        .bits
        .iter()
        .enumerate()
        .fold(0u64, |acc, (j, &b)| acc | ((b as u64) << j))
}

/// Strictly increasing positive frequencies defining the analysis bins.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    frequencies: Vec<f64>,
}

impl FrequencyGrid {
    pub fn new(frequencies: Vec<f64>) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::validation("frequency grid must have at least one bin"));
        }
        for (i, &f) in frequencies.iter().enumerate() {
            if !(f.is_finite() && f > 0.0) {
                return Err(Error::validation(format!("frequency {f} at bin {i} must be positive")));
            }
            if i > 0 && f <= frequencies[i - 1] {
                return Err(Error::validation("frequencies must be strictly increasing"));
            }
        }
        Ok(FrequencyGrid { frequencies })
    }

    /// Uniform grid of `bins` frequencies spanning `[f_min, f_max]` inclusive.
    pub fn linspace(f_min: f64, f_max: f64, bins: usize) -> Result<Self> {
        if bins == 0 {
            return Err(Error::validation("bin count must be positive"));
        }
        if bins == 1 {
            return FrequencyGrid::new(vec![f_min]);
        }
        let step = (f_max - f_min) / (bins - 1) as f64;
        FrequencyGrid::new((0..bins).map(|i| f_min + step * i as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }
}

/// Complex transfer coefficients, one per frequency bin, for a single
/// environment realization.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSample {
    response: Vec<Complex64>,
}

impl ChannelSample {
    pub fn new(response: Vec<Complex64>) -> Result<Self> {
        if response.is_empty() {
            return Err(Error::validation("channel sample must have at least one bin"));
        }
        if let Some((i, _)) = response.iter().enumerate().find(|(_, h)| !h.is_finite()) {
            return Err(Error::numerical(format!("non-finite channel response at bin {i}")));
        }
        Ok(ChannelSample { response })
    }

    pub fn len(&self) -> usize {
        self.response.len()
    }

    pub fn is_empty(&self) -> bool {
        self.response.is_empty()
    }

    pub fn response(&self) -> &[Complex64] {
        &self.response
    }

    /// Per-bin squared magnitudes |H(f_i)|².
    pub fn squared_magnitudes(&self) -> Vec<f64> {
        self.response.iter().map(|h| h.norm_sqr()).collect()
    }
}

/// Per-bin mean squared channel magnitude; the surrogate's regression target.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector {
    moments: Vec<f64>,
}

impl MomentVector {
    pub fn new(moments: Vec<f64>) -> Result<Self> {
        if moments.is_empty() {
            return Err(Error::validation("moment vector must have at least one bin"));
        }
        if let Some((i, &m)) = moments.iter().enumerate().find(|(_, m)| !(m.is_finite() && **m >= 0.0)) {
            return Err(Error::validation(format!("moment {m} at bin {i} must be finite and non-negative")));
        }
        Ok(MomentVector { moments })
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.moments
    }
}

/// Input spectral power per bin.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerAllocation {
    rho: Vec<f64>,
}

impl PowerAllocation {
    pub fn new(rho: Vec<f64>) -> Result<Self> {
        if rho.is_empty() {
            return Err(Error::validation("power allocation must have at least one bin"));
        }
        if let Some((i, &p)) = rho.iter().enumerate().find(|(_, p)| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::validation(format!("power {p} at bin {i} must be finite and non-negative")));
        }
        Ok(PowerAllocation { rho })
    }

    /// Unity power at every bin.
    pub fn unity(bins: usize) -> Self {
        PowerAllocation { rho: vec![1.0; bins] }
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.rho
    }
}

/// Receiver noise variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    noise_variance: f64,
}

impl LinkBudget {
    pub fn new(noise_variance: f64) -> Result<Self> {
        if !(noise_variance.is_finite() && noise_variance > 0.0) {
            return Err(Error::validation(format!("noise variance must be positive, got {noise_variance}")));
        }
        Ok(LinkBudget { noise_variance })
    }

    pub fn noise_variance(&self) -> f64 {
        self.noise_variance
    }
}
