//! Long- and short-distance laws and tools to check them against the full
//! integral.
//!
//! At large separations only small `κ` survive the `e^{−2κd}` damping, so
//! the pressure is governed by the `κ → 0+` ("static") limits of angular
//! averages of reflection products:
//!
//! * generic walls: `F ≈ F₀/(2ζ(4)) Σ_σ ⟨Li₄(r_{j+}^σ r_{j−}^σ)⟩`, a `d⁻⁴` law;
//! * both walls a single dielectric slab backed by vacuum: each coefficient
//!   vanishes like `κ`, giving `F ≈ 15ħc/(16π²d⁶) Σ_σ R̄_σ`;
//! * one such slab facing a generic wall: `d⁻⁵`.
//!
//! At short separations the retardation drops out and
//! `F ≈ ħ/(8π²d³) ∫₀^∞ dξ Li₃(x(ξ))` with
//! `x = (ε₊ − 1)(ε₋ − 1)/((ε₊ + 1)(ε₋ + 1))` built from the two layers that
//! face the gap. For identical Drude-Lorentz walls with small damping this
//! integral has the closed form
//! `F = ħ/(2πd³) √(ω₀² + Ω²/2) L̃i₂(Ω⁴/(64 (ω₀² + Ω²/2)²))`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::force::casimir_ideal;
use crate::materials::{DrudeLorentzParams, Permittivity};
use crate::quadrature::{gauss_laguerre, gauss_legendre, NeumaierSum, QuadratureSettings};
use crate::specialfn::{li3, li4, tilde_li2, zeta4};
use crate::stack::{Layer, Polarization, Stack, Thickness};

/// Default safety factor applied to the `≫` conditions on `d`.
pub const DEFAULT_MARGIN: f64 = 100.0;

/// Number of rungs in the default `κ` ladder.
pub const LADDER_RUNGS: usize = 8;

/// Top of the default ladder is `LADDER_START / d_ref`.
pub const LADDER_START: f64 = 1e-2;

/// Number of terms in the termwise `⟨Li₄⟩` evaluation.
pub const LI4_TERMS: usize = 30;

/// Closed-form short-distance law requires `γ₀ ≤ GAMMA_SMALLNESS · 2Ω`.
pub const GAMMA_SMALLNESS: f64 = 0.1;

/// Largest acceptable relative spread of the last two Richardson
/// estimates before the extrapolation is declared unreliable.
const EXTRAPOLATION_TOL: f64 = 1e-4;

/// Large-distance behaviour predicted from the wall structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceLaw {
    /// `d⁻⁴`
    Standard,
    /// `d⁻⁵`, one single-slab wall.
    Mixed,
    /// `d⁻⁶`, two single-slab walls.
    Slab,
}

impl DistanceLaw {
    pub fn exponent(self) -> i32 {
        match self {
            DistanceLaw::Standard => -4,
            DistanceLaw::Mixed => -5,
            DistanceLaw::Slab => -6,
        }
    }
}

/// A wall, listed from the gap outward, is a single slab when it holds
/// exactly one non-vacuum layer, that layer is a finite dielectric and the
/// outer half-space is vacuum.
pub fn is_single_slab_wall<'a>(wall: impl IntoIterator<Item = &'a Layer>) -> bool {
    let mut slabs = 0;
    for layer in wall {
        if layer.material.is_vacuum() {
            continue;
        }
        match layer.thickness {
            Thickness::Finite(_) if layer.material.is_dielectric() => slabs += 1,
            _ => return false,
        }
    }
    slabs == 1
}

pub fn classify_distance_law(stack: &Stack) -> DistanceLaw {
    let up = is_single_slab_wall(stack.upper_wall());
    let down = is_single_slab_wall(stack.lower_wall());
    match (up, down) {
        (true, true) => DistanceLaw::Slab,
        (false, false) => DistanceLaw::Standard,
        _ => DistanceLaw::Mixed,
    }
}

/// Lower bounds on `d` (before a margin factor) beyond which the long-distance
/// laws apply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityScales {
    /// `max_l c/ξ_l`.
    pub frequency: f64,
    /// `max_l √ε_l(iξ_l) d_l` over finite wall layers.
    pub geometric: f64,
}

impl ValidityScales {
    pub fn max(&self) -> f64 {
        self.frequency.max(self.geometric)
    }
}

pub fn validity_scales(stack: &Stack) -> Result<ValidityScales> {
    let mut scales = ValidityScales {
        frequency: 0.0,
        geometric: 0.0,
    };
    let gap = stack.gap_index();
    for (i, layer) in stack.layers().iter().enumerate() {
        if i == gap {
            continue;
        }
        let Some(xi) = layer.material.characteristic_frequency() else {
            continue;
        };
        scales.frequency = scales.frequency.max(SPEED_OF_LIGHT / xi);
        if let Thickness::Finite(d) = layer.thickness {
            let eps = layer.material.epsilon(xi)?;
            scales.geometric = scales.geometric.max(libm::sqrt(eps) * d);
        }
    }
    Ok(scales)
}

/// Decreasing `κ_k = κ₀ 2^{−k}` with `κ₀ = 10⁻²/d_ref`, `d_ref` the largest
/// validity scale (or the gap width when the stack has none). Tabulated
/// layers also raise `d_ref` to `c/ξ` of their first node, so that the
/// ladder stays where the table holds its static value and the samples
/// remain smooth in `κ`.
pub fn kappa_ladder(stack: &Stack) -> Result<Vec<f64>> {
    let mut d_ref = validity_scales(stack)?.max();
    for layer in stack.layers() {
        if let Permittivity::Tabulated(t) = &layer.material {
            if let Some((xi, _)) = t.points().find(|&(xi, _)| xi > 0.0) {
                d_ref = d_ref.max(SPEED_OF_LIGHT / xi);
            }
        }
    }
    if d_ref == 0.0 {
        d_ref = stack.gap_width();
    }
    let k0 = LADDER_START / d_ref;
    Ok((0..LADDER_RUNGS)
        .map(|k| k0 * libm::ldexp(1.0, -(k as i32)))
        .collect())
}

/// A limit value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    pub error: f64,
}

/// Richardson extrapolation to `κ = 0` of samples taken on a ladder halving
/// at each rung, assuming an error expansion in integer powers of `κ`.
pub fn richardson(samples: &[f64]) -> Result<Extrapolated> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::usage("extrapolation needs at least two samples"));
    }
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric(
            "non-finite sample in extrapolation ladder",
            f64::NAN,
            f64::NAN,
        ));
    }
    let scale = samples.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
    let mut column: Vec<f64> = samples.to_vec();
    let mut diagonal = Vec::with_capacity(n);
    diagonal.push(column[n - 1]);
    for j in 1..n {
        let factor = libm::ldexp(1.0, j as i32) - 1.0;
        let next: Vec<f64> = column
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / factor)
            .collect();
        column = next;
        diagonal.push(*column.last().unwrap_or(&f64::NAN));
    }
    let value = diagonal[n - 1];
    let error = libm::fabs(diagonal[n - 1] - diagonal[n - 2]);
    let reference = libm::fabs(value).max(1e-10 * scale);
    if error > EXTRAPOLATION_TOL * reference {
        return Err(Error::numeric(
            format!("κ → 0 extrapolation did not settle (spread {error:e})"),
            value,
            error,
        ));
    }
    Ok(Extrapolated { value, error })
}

/// `∫₀^{π/2} dφ sin φ h(x_σ(κ, φ))` at one `κ`.
fn angular_average(
    stack: &Stack,
    sigma: Polarization,
    kappa: f64,
    settings: &QuadratureSettings,
    mut h: impl FnMut(f64) -> Result<f64>,
) -> Result<f64> {
    let rule = settings.angular_rule()?;
    rule.try_integrate(|phi| {
        let xi = SPEED_OF_LIGHT * kappa * libm::cos(phi);
        let q = kappa * libm::sin(phi);
        let x = stack.reflection_pair(sigma, xi, q)?.product();
        Ok(libm::sin(phi) * h(x)?)
    })
}

fn check_ladder(ladder: &[f64]) -> Result<()> {
    if ladder.len() < 2
        || ladder.iter().any(|&k| !(k > 0.0 && k.is_finite()))
        || ladder
            .windows(2)
            .any(|w| (w[1] - 0.5 * w[0]).abs() > 1e-12 * w[0])
    {
        return Err(Error::usage(
            "κ ladder must be positive and halve at each rung",
        ));
    }
    Ok(())
}

/// `lim_{κ→0+} ∫₀^{π/2} dφ sin φ (r_{j+}^σ r_{j−}^σ)^m`.
pub fn static_average(
    stack: &Stack,
    sigma: Polarization,
    m: u32,
    ladder: &[f64],
    settings: &QuadratureSettings,
) -> Result<Extrapolated> {
    if m == 0 {
        return Err(Error::usage("static averages start at m = 1"));
    }
    check_ladder(ladder)?;
    let samples = ladder
        .iter()
        .map(|&k| angular_average(stack, sigma, k, settings, |x| Ok(libm::pow(x, m as f64))))
        .collect::<Result<Vec<_>>>()?;
    richardson(&samples)
}

/// `lim_{κ→0+} ∫₀^{π/2} dφ sin φ Li₄(r_{j+}^σ r_{j−}^σ)`, with the
/// polylogarithm evaluated at each node.
pub fn li4_average(
    stack: &Stack,
    sigma: Polarization,
    ladder: &[f64],
    settings: &QuadratureSettings,
) -> Result<Extrapolated> {
    check_ladder(ladder)?;
    let samples = ladder
        .iter()
        .map(|&k| angular_average(stack, sigma, k, settings, li4))
        .collect::<Result<Vec<_>>>()?;
    richardson(&samples)
}

/// `Σ_{m=1}^{M} ⟨x^m⟩/m⁴` from the individual static averages.
pub fn li4_average_termwise(
    stack: &Stack,
    sigma: Polarization,
    terms: usize,
    ladder: &[f64],
    settings: &QuadratureSettings,
) -> Result<Extrapolated> {
    let mut value = NeumaierSum::new();
    let mut error = 0.0;
    for m in 1..=terms {
        let a = static_average(stack, sigma, m as u32, ladder, settings)?;
        let w = libm::pow(m as f64, -4.0);
        value.add(a.value * w);
        error += a.error * w;
    }
    // |⟨x^m⟩| ≤ 1 bounds the discarded terms
    let remainder = zeta4() - (1..=terms).map(|m| libm::pow(m as f64, -4.0)).sum::<f64>();
    Ok(Extrapolated {
        value: value.value(),
        error: error + remainder,
    })
}

/// Long-distance `d⁻⁴` law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardLaw {
    /// `⟨Li₄⟩` for `s` and `p`.
    pub li4_average: [Extrapolated; 2],
}

impl StandardLaw {
    /// `F₀(d)/(2ζ(4)) Σ_σ ⟨Li₄⟩`.
    pub fn pressure(&self, d: f64) -> Result<f64> {
        let sum: f64 = self.li4_average.iter().map(|a| a.value).sum();
        Ok(casimir_ideal(d)? / (2.0 * zeta4()) * sum)
    }
}

pub fn long_distance_standard(stack: &Stack, settings: &QuadratureSettings) -> Result<StandardLaw> {
    let law = classify_distance_law(stack);
    if law != DistanceLaw::Standard {
        return Err(Error::usage(format!(
            "the d⁻⁴ law needs two non-slab walls, this stack follows d^{}",
            law.exponent()
        )));
    }
    let ladder = kappa_ladder(stack)?;
    let mut averages = [Extrapolated {
        value: 0.0,
        error: 0.0,
    }; 2];
    for (slot, sigma) in averages.iter_mut().zip(Polarization::BOTH) {
        let mut a = li4_average(stack, sigma, &ladder, settings)?;
        // |Li₄(x)| ≤ ζ(4) for |x| ≤ 1
        a.value = a.value.clamp(-zeta4(), zeta4());
        *slot = a;
    }
    Ok(StandardLaw {
        li4_average: averages,
    })
}

/// `R̄_σ = lim_{κ→0+} κ⁻² ∫₀^{π/2} dφ sin φ r_{j+}^σ r_{j−}^σ`, in m².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabCoefficients {
    pub r_bar: [Extrapolated; 2],
}

pub fn slab_coefficients(
    stack: &Stack,
    ladder: &[f64],
    settings: &QuadratureSettings,
) -> Result<SlabCoefficients> {
    let law = classify_distance_law(stack);
    if law != DistanceLaw::Slab {
        return Err(Error::usage(format!(
            "slab coefficients need two single-slab walls, this stack follows d^{}",
            law.exponent()
        )));
    }
    check_ladder(ladder)?;
    let mut r_bar = [Extrapolated {
        value: 0.0,
        error: 0.0,
    }; 2];
    for (slot, sigma) in r_bar.iter_mut().zip(Polarization::BOTH) {
        let samples = ladder
            .iter()
            .map(|&k| Ok(angular_average(stack, sigma, k, settings, Ok)? / (k * k)))
            .collect::<Result<Vec<_>>>()?;
        *slot = richardson(&samples)?;
    }
    Ok(SlabCoefficients { r_bar })
}

/// Long-distance `d⁻⁶` law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabLaw {
    pub coefficients: SlabCoefficients,
}

impl SlabLaw {
    /// `15ħc/(16π² d⁶) Σ_σ R̄_σ`.
    pub fn pressure(&self, d: f64) -> Result<f64> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::domain(format!(
                "wall separation must be positive, got {d}"
            )));
        }
        let sum: f64 = self.coefficients.r_bar.iter().map(|r| r.value).sum();
        Ok(15.0 * HBAR * SPEED_OF_LIGHT / (16.0 * PI * PI) * sum / libm::pow(d, 6.0))
    }
}

pub fn long_distance_slab(stack: &Stack, settings: &QuadratureSettings) -> Result<SlabLaw> {
    let ladder = kappa_ladder(stack)?;
    Ok(SlabLaw {
        coefficients: slab_coefficients(stack, &ladder, settings)?,
    })
}

/// Non-retarded `d⁻³` law, `F = coefficient / d³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortDistanceLaw {
    /// N·m.
    pub coefficient: f64,
}

impl ShortDistanceLaw {
    pub fn pressure(&self, d: f64) -> Result<f64> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::domain(format!(
                "wall separation must be positive, got {d}"
            )));
        }
        Ok(self.coefficient / (d * d * d))
    }
}

/// Frequencies bracketing the variation of `ε(iξ)`.
fn frequency_span(material: &Permittivity) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    let mut push = |w: f64| {
        if w > 0.0 && w.is_finite() {
            lo = lo.min(w);
            hi = hi.max(w);
        }
    };
    match material {
        Permittivity::DrudeLorentz(p) => {
            push(p.omega0());
            push(p.omega_p());
            push(p.gamma0());
        }
        Permittivity::Tabulated(t) => {
            for (xi, _) in t.points() {
                push(xi);
            }
        }
        Permittivity::Vacuum | Permittivity::PerfectMirror => {}
    }
    (hi > 0.0).then_some((lo, hi))
}

/// `ħ/(16π²) ∫₀^∞ dξ ∫₀^∞ dv v² x e^{−v}/(1 − x e^{−v})`, the coefficient of
/// the short-distance law, from the two layers adjacent to the gap.
///
/// The `v` integral runs on Gauss-Laguerre nodes, the `ξ` integral on unit
/// panels in `ln ξ` spanning the materials' frequency scales by eight
/// decades below and five above.
pub fn short_distance_numeric(
    stack: &Stack,
    settings: &QuadratureSettings,
) -> Result<ShortDistanceLaw> {
    let j = stack.gap_index();
    let above = &stack.layers()[j + 1].material;
    let below = &stack.layers()[j - 1].material;
    if above.is_perfect_mirror() || below.is_perfect_mirror() {
        return Err(Error::usage(
            "the short-distance law has no finite limit for perfect mirrors",
        ));
    }
    let (Some(a), Some(b)) = (frequency_span(above), frequency_span(below)) else {
        return Ok(ShortDistanceLaw { coefficient: 0.0 });
    };
    let lo = libm::log(a.0.min(b.0) * 1e-8);
    let hi = libm::log(a.1.max(b.1) * 1e5);
    let panels = libm::ceil(hi - lo) as usize;
    let width = (hi - lo) / panels as f64;
    let v_rule = gauss_laguerre(settings.radial_order / 2)?;
    let panel_order = settings.panel_order();
    let contrast = |eps: f64| (eps - 1.0) / (eps + 1.0);
    let mut total = NeumaierSum::new();
    for p in 0..panels {
        let s0 = lo + p as f64 * width;
        let rule = gauss_legendre(panel_order, s0, s0 + width)?;
        for (s, w) in rule.iter() {
            let xi = libm::exp(s);
            let x = contrast(above.epsilon(xi)?) * contrast(below.epsilon(xi)?);
            if x == 0.0 {
                continue;
            }
            let inner = v_rule.integrate(|v| v * v * x / (1.0 - x * libm::exp(-v)));
            total.add(w * xi * inner);
        }
    }
    Ok(ShortDistanceLaw {
        coefficient: HBAR / (16.0 * PI * PI) * total.value(),
    })
}

/// `α² = (ω₀² − γ₀²/4)/Ω²`.
pub fn alpha_squared(params: &DrudeLorentzParams) -> f64 {
    let (w0, wp, g) = (params.omega0(), params.omega_p(), params.gamma0());
    (w0 * w0 - g * g / 4.0) / (wp * wp)
}

fn check_small_damping(params: &DrudeLorentzParams) -> Result<()> {
    let (w0, wp, g) = (params.omega0(), params.omega_p(), params.gamma0());
    if g > GAMMA_SMALLNESS * 2.0 * wp {
        return Err(Error::domain(format!(
            "closed form needs γ₀ ≪ 2Ω, got γ₀ = {g:e}, 2Ω = {:e}",
            2.0 * wp
        )));
    }
    if g * g / 4.0 >= w0 * w0 {
        return Err(Error::domain(format!(
            "closed form needs γ₀²/4 < ω₀², got γ₀²/4 = {:e}, ω₀² = {:e}",
            g * g / 4.0,
            w0 * w0
        )));
    }
    Ok(())
}

/// `ħ/(2πd³) √(ω₀² + Ω²/2) L̃i₂(Ω⁴/(64 (ω₀² + Ω²/2)²))` for identical
/// Drude-Lorentz half-spaces.
pub fn short_distance_closed_form(params: &DrudeLorentzParams, d: f64) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain(format!(
            "wall separation must be positive, got {d}"
        )));
    }
    if params.omega_p() == 0.0 {
        return Ok(0.0);
    }
    check_small_damping(params)?;
    let (w0, wp) = (params.omega0(), params.omega_p());
    let s = w0 * w0 + wp * wp / 2.0;
    let z = wp * wp * wp * wp / (64.0 * s * s);
    Ok(HBAR / (2.0 * PI * d * d * d) * libm::sqrt(s) * tilde_li2(z)?)
}

/// Relative error bound `(γ₀/Ω) f(α² + ½)` of the closed form, with
/// `f(x) = Li₃(x⁻²/4) / (8π √x L̃i₂(x⁻²/64))`.
pub fn short_distance_error_bound(params: &DrudeLorentzParams) -> Result<f64> {
    if params.gamma0() == 0.0 {
        return Ok(0.0);
    }
    if params.omega_p() == 0.0 {
        return Err(Error::domain("error bound needs Ω > 0"));
    }
    check_small_damping(params)?;
    let x = alpha_squared(params) + 0.5;
    let f =
        li3(1.0 / (4.0 * x * x))? / (8.0 * PI * libm::sqrt(x) * tilde_li2(1.0 / (64.0 * x * x))?);
    Ok(params.gamma0() / params.omega_p() * f)
}

/// `−d ln F / d ln d` at an interior point of a sampled curve, by centered
/// differences.
pub fn local_exponent(curve: &[(f64, f64)], at_index: usize) -> Result<f64> {
    if at_index == 0 || at_index + 1 >= curve.len() {
        return Err(Error::usage(format!(
            "local exponent needs an interior index, got {at_index} of {}",
            curve.len()
        )));
    }
    let (d0, f0) = curve[at_index - 1];
    let (d1, f1) = curve[at_index + 1];
    if !(d0 > 0.0 && d1 > d0 && f0 > 0.0 && f1 > 0.0) {
        return Err(Error::domain(
            "local exponent needs increasing positive distances and positive pressures",
        ));
    }
    Ok(-(libm::log(f1) - libm::log(f0)) / (libm::log(d1) - libm::log(d0)))
}
