//! One-dimensional analogue of the plate geometry, at zero temperature.
//!
//! Only normal incidence survives in 1D, so each wall is described by the
//! `s` coefficient at `q = 0`. Rotated to the imaginary axis, the force on
//! a normalization area `𝒜` carried by one channel is
//!
//! ```text
//! F𝒜 = (ħ/π) ∫₀^∞ dξ (ξ/c) X e^{−2ξd/c} / (1 − X e^{−2ξd/c}),   X = r_{j+} r_{j−}
//!    = ħc/(4πd²) ∫₀^∞ dt t e^{−t} X / (1 − X e^{−t}),            t = 2ξd/c
//! ```
//!
//! and two channels (the two polarizations) contribute for real plates.
//! Results are forces in newtons for `𝒜 = 1 m²`, not pressures.

use alloc::format;
use core::f64::consts::PI;

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_laguerre, GaussRule, QuadratureSettings};
use crate::stack::{Layer, Polarization, ReflectionPair, Stack};

/// Force on `𝒜 = 1 m²` between ideal mirrors, per channel:
/// `πħc/(24 d²)`.
pub fn casimir_ideal_1d(d: f64) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain(format!(
            "wall separation must be positive, got {d}"
        )));
    }
    Ok(PI * HBAR * SPEED_OF_LIGHT / (24.0 * d * d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneDForceResult {
    /// N, for a unit normalization area.
    pub force_per_area_unit: f64,
    /// Ratio to the ideal-mirror value with the same channel count.
    pub f_over_f0_1d: f64,
    pub rel_err_estimate: f64,
    pub evaluations: usize,
    /// 1 for a single channel, 2 when both polarizations are counted.
    pub channels: u32,
}

/// The 1D reflection coefficients: the `s` coefficients at normal incidence.
pub fn reflect_1d(stack: &Stack, xi: f64) -> Result<ReflectionPair> {
    if xi.is_nan() || xi <= 0.0 {
        return Err(Error::domain(format!(
            "1D reflection needs ξ > 0, got {xi}"
        )));
    }
    stack.reflection_pair(Polarization::S, xi, 0.0)
}

fn channel_integral(stack: &Stack, rule: &GaussRule) -> Result<f64> {
    let d = stack.gap_width();
    let integral = rule.try_integrate(|t| {
        let xi = SPEED_OF_LIGHT * t / (2.0 * d);
        let x = reflect_1d(stack, xi)?.product();
        Ok(if x == 0.0 {
            0.0
        } else {
            t * x / (1.0 - x * libm::exp(-t))
        })
    })?;
    Ok(HBAR * SPEED_OF_LIGHT / (4.0 * PI * d * d) * integral)
}

fn force_1d(
    stack: &Stack,
    settings: &QuadratureSettings,
    channels: u32,
) -> Result<OneDForceResult> {
    settings.validate()?;
    let full = gauss_laguerre(settings.radial_order)?;
    let half = gauss_laguerre(settings.halved().radial_order)?;
    let f = channel_integral(stack, &full)?;
    let f_half = channel_integral(stack, &half)?;
    let rel = if f == 0.0 {
        if f_half == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        libm::fabs((f - f_half) / f)
    };
    let ideal = casimir_ideal_1d(stack.gap_width())?;
    let force = channels as f64 * f;
    Ok(OneDForceResult {
        force_per_area_unit: force,
        f_over_f0_1d: force / (channels as f64 * ideal),
        rel_err_estimate: rel,
        evaluations: full.len() + half.len(),
        channels,
    })
}

/// Single-channel 1D force.
pub fn force_1d_zero_temperature(
    stack: &Stack,
    settings: &QuadratureSettings,
) -> Result<OneDForceResult> {
    force_1d(stack, settings, 1)
}

/// Both channels counted, for an arbitrary stack.
pub fn force_1d_both_channels(
    stack: &Stack,
    settings: &QuadratureSettings,
) -> Result<OneDForceResult> {
    force_1d(stack, settings, 2)
}

/// Two identical plates facing each other across a gap `d`. `wall` lists
/// one plate from the gap outward, ending with its outer half-space.
pub fn force_1d_identical_plates(
    wall: &[Layer],
    d: f64,
    settings: &QuadratureSettings,
) -> Result<OneDForceResult> {
    let stack = Stack::mirrored(wall, d)?;
    force_1d(&stack, settings, 2)
}
