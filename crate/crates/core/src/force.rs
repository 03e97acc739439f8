//! Casimir pressure in the vacuum gap, at zero and at finite temperature.
//!
//! Attractive pressure is reported as positive, so that the ideal-mirror
//! value `F₀ = ħcπ²/(240 d⁴)` and every `F/F₀` come out positive.
//!
//! At zero temperature the pressure is written in polar coordinates
//! `ξ = cκ cos φ`, `q = κ sin φ`:
//!
//! ```text
//! F = ħc/(2π²) ∫₀^∞ dκ κ³ e^{−2κd} ∫₀^{π/2} dφ sin φ Σ_σ x_σ / (1 − x_σ e^{−2κd})
//! ```
//!
//! with `x_σ = r_{j+}^σ r_{j−}^σ`. With `t = 2κd` the radial integral is
//! either done by Gauss-Laguerre or, after `u = e^{−t}`, on the unit
//! interval with panels graded toward `u = 0`.
//!
//! At temperature `T` the frequency integral becomes the Matsubara sum
//!
//! ```text
//! F = (k_B T/π) Σ'_m ∫_{ξ_m/c}^∞ dκ κ² e^{−2κd} Σ_σ x_σ / (1 − x_σ e^{−2κd})
//! ```

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::materials::Permittivity;
use crate::quadrature::{
    gauss_laguerre, graded_unit_rule, matsubara_sum, GaussRule, MatsubaraSettings, NeumaierSum,
    QuadratureSettings, Scheme,
};
use crate::stack::Stack;

/// `F₀(d) = ħcπ²/(240 d⁴)`.
pub fn casimir_ideal(d: f64) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain(format!(
            "wall separation must be positive, got {d}"
        )));
    }
    let d2 = d * d;
    Ok(HBAR * SPEED_OF_LIGHT * PI * PI / (240.0 * d2 * d2))
}

/// Integration scheme that produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeLabel {
    Laguerre,
    FiniteDomain,
    Matsubara,
}

impl SchemeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeLabel::Laguerre => "laguerre",
            SchemeLabel::FiniteDomain => "finite_domain",
            SchemeLabel::Matsubara => "matsubara",
        }
    }
}

impl From<Scheme> for SchemeLabel {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Laguerre => SchemeLabel::Laguerre,
            Scheme::FiniteDomain => SchemeLabel::FiniteDomain,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// N/m², attractive positive.
    pub pressure: f64,
    pub f_over_f0: f64,
    /// `|F(order) − F(order/2)| / |F(order)|`, combined with the Matsubara
    /// tail estimate at finite temperature.
    pub rel_err_estimate: f64,
    /// Number of reflection-coefficient evaluations.
    pub evaluations: usize,
    pub scheme_used: SchemeLabel,
    /// Matsubara frequencies summed; zero at zero temperature.
    pub matsubara_terms: usize,
}

impl ForceResult {
    fn new(
        pressure: f64,
        d: f64,
        rel_err: f64,
        evaluations: usize,
        scheme: SchemeLabel,
    ) -> Result<Self> {
        let f0 = casimir_ideal(d)?;
        Ok(Self {
            pressure,
            f_over_f0: pressure / f0,
            rel_err_estimate: rel_err,
            evaluations,
            scheme_used: scheme,
            matsubara_terms: 0,
        })
    }
}

/// Thermal state of the field.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Mode {
    #[default]
    ZeroTemperature,
    /// Temperature in kelvin.
    FiniteTemperature(f64),
}

/// `Σ_σ x_σ/(1 − x_σ e^{−2κd})` at `ξ = cκ cos φ`, `q = κ sin φ`.
pub fn gap_integrand(stack: &Stack, kappa: f64, phi: f64) -> Result<f64> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::domain(format!("κ must be positive, got {kappa}")));
    }
    if !(0.0..=core::f64::consts::FRAC_PI_2).contains(&phi) {
        return Err(Error::domain(format!("φ must lie in [0, π/2], got {phi}")));
    }
    let xi = SPEED_OF_LIGHT * kappa * libm::cos(phi);
    let q = kappa * libm::sin(phi);
    let u = libm::exp(-2.0 * kappa * stack.gap_width());
    polarization_sum(stack, xi, q, u)
}

#[inline]
fn polarization_sum(stack: &Stack, xi: f64, q: f64, u: f64) -> Result<f64> {
    let pairs = stack.reflection_pairs(xi, q)?;
    let mut total = 0.0;
    for pair in pairs {
        let x = pair.product();
        if x != 0.0 {
            total += x / (1.0 - x * u);
        }
    }
    Ok(total)
}

/// Radial nodes `t` and weights for `∫₀^∞ t³ e^{−t} g(t) dt ≈ Σ w g(t)`,
/// with `u = e^{−t}` kept alongside to avoid recomputing it.
#[derive(Debug, Clone)]
struct RadialRule {
    t: Vec<f64>,
    u: Vec<f64>,
    w: Vec<f64>,
}

impl RadialRule {
    fn new(settings: &QuadratureSettings) -> Result<Self> {
        match settings.scheme {
            Scheme::Laguerre => {
                let g = gauss_laguerre(settings.radial_order)?;
                let mut rule = Self {
                    t: Vec::new(),
                    u: Vec::new(),
                    w: Vec::new(),
                };
                for (t, w) in g.iter() {
                    if w == 0.0 {
                        continue;
                    }
                    rule.t.push(t);
                    rule.u.push(libm::exp(-t));
                    rule.w.push(w * t * t * t);
                }
                Ok(rule)
            }
            Scheme::FiniteDomain => {
                let g = graded_unit_rule(settings.panel_order())?;
                let mut rule = Self {
                    t: Vec::new(),
                    u: Vec::new(),
                    w: Vec::new(),
                };
                for (u, w) in g.iter() {
                    let t = -libm::log(u);
                    rule.t.push(t);
                    rule.u.push(u);
                    rule.w.push(w * t * t * t);
                }
                Ok(rule)
            }
        }
    }
}

#[derive(Debug, Clone)]
struct ZeroTemperatureRule {
    radial: RadialRule,
    angular: GaussRule,
    /// `(sin φ, cos φ)` at the angular nodes.
    trig: Vec<(f64, f64)>,
}

impl ZeroTemperatureRule {
    fn new(settings: &QuadratureSettings) -> Result<Self> {
        let angular = settings.angular_rule()?;
        let trig = angular
            .nodes
            .iter()
            .map(|&phi| (libm::sin(phi), libm::cos(phi)))
            .collect();
        Ok(Self {
            radial: RadialRule::new(settings)?,
            angular,
            trig,
        })
    }

    fn evaluations(&self) -> usize {
        self.radial.t.len() * self.angular.len()
    }

    fn pressure(&self, stack: &Stack) -> Result<f64> {
        let d = stack.gap_width();
        let mut outer = NeumaierSum::new();
        for ((&t, &u), &w) in self.radial.t.iter().zip(&self.radial.u).zip(&self.radial.w) {
            let kappa = t / (2.0 * d);
            let mut inner = NeumaierSum::new();
            for (&a, &(s, c)) in self.angular.weights.iter().zip(&self.trig) {
                let g = polarization_sum(stack, SPEED_OF_LIGHT * kappa * c, kappa * s, u)?;
                inner.add(a * s * g);
            }
            outer.add(w * inner.value());
        }
        let d2 = 4.0 * d * d;
        Ok(HBAR * SPEED_OF_LIGHT / (2.0 * PI * PI) * outer.value() / (d2 * d2))
    }
}

#[derive(Debug, Clone)]
struct FiniteTemperatureRule {
    full: GaussRule,
    half: GaussRule,
}

impl FiniteTemperatureRule {
    fn new(settings: &QuadratureSettings) -> Result<Self> {
        Ok(Self {
            full: gauss_laguerre(settings.radial_order)?,
            half: gauss_laguerre(settings.halved().radial_order)?,
        })
    }

    /// `∫_{κmin}^∞ dκ κ² e^{−2κd} Σ_σ x/(1 − x e^{−2κd})` with the given rule.
    fn term(rule: &GaussRule, stack: &Stack, xi: f64) -> Result<f64> {
        let d = stack.gap_width();
        let k_min = xi / SPEED_OF_LIGHT;
        let damping = libm::exp(-2.0 * k_min * d);
        if damping == 0.0 {
            return Ok(0.0);
        }
        let mut acc = NeumaierSum::new();
        for (t, w) in rule.iter() {
            if w == 0.0 {
                continue;
            }
            let dk = t / (2.0 * d);
            let kappa = k_min + dk;
            let q = libm::sqrt(dk * (kappa + k_min));
            let u = damping * libm::exp(-t);
            acc.add(w * kappa * kappa * polarization_sum(stack, xi, q, u)?);
        }
        Ok(damping * acc.value() / (2.0 * d))
    }
}

/// Prebuilt quadrature rules for repeated force evaluations.
#[derive(Debug, Clone)]
pub struct ForceEngine {
    mode: Mode,
    quadrature: QuadratureSettings,
    matsubara: MatsubaraSettings,
    rules: Rules,
}

#[derive(Debug, Clone)]
enum Rules {
    Zero {
        full: ZeroTemperatureRule,
        half: ZeroTemperatureRule,
    },
    Finite(FiniteTemperatureRule),
}

impl ForceEngine {
    pub fn new(
        mode: Mode,
        quadrature: QuadratureSettings,
        matsubara: MatsubaraSettings,
    ) -> Result<Self> {
        quadrature.validate()?;
        let rules = match mode {
            Mode::ZeroTemperature => Rules::Zero {
                full: ZeroTemperatureRule::new(&quadrature)?,
                half: ZeroTemperatureRule::new(&quadrature.halved())?,
            },
            Mode::FiniteTemperature(t) => {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(Error::domain(format!(
                        "temperature must be positive, got {t}"
                    )));
                }
                matsubara.validate()?;
                Rules::Finite(FiniteTemperatureRule::new(&quadrature)?)
            }
        };
        Ok(Self {
            mode,
            quadrature,
            matsubara,
            rules,
        })
    }

    pub fn zero_temperature(settings: QuadratureSettings) -> Result<Self> {
        Self::new(
            Mode::ZeroTemperature,
            settings,
            MatsubaraSettings::default(),
        )
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn quadrature(&self) -> &QuadratureSettings {
        &self.quadrature
    }

    pub fn matsubara(&self) -> &MatsubaraSettings {
        &self.matsubara
    }

    pub fn evaluate(&self, stack: &Stack) -> Result<ForceResult> {
        let d = stack.gap_width();
        match (&self.rules, self.mode) {
            (Rules::Zero { full, half }, _) => {
                let p = full.pressure(stack)?;
                let p_half = half.pressure(stack)?;
                if !p.is_finite() {
                    return Err(Error::numeric(
                        "zero-temperature quadrature produced a non-finite value",
                        p,
                        f64::NAN,
                    ));
                }
                ForceResult::new(
                    p,
                    d,
                    relative_change(p, p_half),
                    full.evaluations() + half.evaluations(),
                    self.quadrature.scheme.into(),
                )
            }
            (Rules::Finite(rule), Mode::FiniteTemperature(temperature)) => {
                let mut coarse = NeumaierSum::new();
                let mut evaluations = 0usize;
                let exact_static = has_finite_static_limit(stack);
                let sum = matsubara_sum(
                    |m, xi| {
                        let xi = if m == 0 && exact_static { 0.0 } else { xi };
                        let fine = FiniteTemperatureRule::term(&rule.full, stack, xi)?;
                        let c = FiniteTemperatureRule::term(&rule.half, stack, xi)?;
                        coarse.add(if m == 0 { 0.5 * c } else { c });
                        evaluations += rule.full.len() + rule.half.len();
                        Ok(fine)
                    },
                    &self.matsubara,
                    temperature,
                )?;
                let scale = BOLTZMANN * temperature / PI;
                let p = scale * sum.value;
                let tail_rel = if sum.value == 0.0 {
                    0.0
                } else {
                    libm::fabs(sum.tail / sum.value)
                };
                let mut r = ForceResult::new(
                    p,
                    d,
                    relative_change(sum.value, coarse.value()).max(tail_rel),
                    evaluations,
                    SchemeLabel::Matsubara,
                )?;
                r.matsubara_terms = sum.terms;
                Ok(r)
            }
            (Rules::Finite(_), Mode::ZeroTemperature) => unreachable!("rules follow the mode"),
        }
    }
}

/// Whether the static term can be taken at `ξ = 0` itself. Otherwise (a
/// metal with `ε(0) = ∞`) it is evaluated at `ξ₀ = xi0_fraction · ξ₁`.
fn has_finite_static_limit(stack: &Stack) -> bool {
    stack.layers().iter().all(|l| match &l.material {
        Permittivity::Vacuum | Permittivity::PerfectMirror => true,
        m => m.epsilon_static().map(f64::is_finite).unwrap_or(false),
    })
}

fn relative_change(fine: f64, coarse: f64) -> f64 {
    if fine == 0.0 {
        if coarse == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        libm::fabs((fine - coarse) / fine)
    }
}

pub fn force_zero_temperature(stack: &Stack, settings: &QuadratureSettings) -> Result<ForceResult> {
    ForceEngine::zero_temperature(*settings)?.evaluate(stack)
}

pub fn force_finite_temperature(
    stack: &Stack,
    temperature: f64,
    msettings: &MatsubaraSettings,
    qsettings: &QuadratureSettings,
) -> Result<ForceResult> {
    ForceEngine::new(Mode::FiniteTemperature(temperature), *qsettings, *msettings)?.evaluate(stack)
}

/// Pressure for each gap width in `d_grid`, the rest of the stack fixed.
/// Failures are recorded per point.
pub fn force_vs_distance(
    stack: &Stack,
    d_grid: &[f64],
    engine: &ForceEngine,
) -> Result<Vec<(f64, Result<ForceResult>)>> {
    if d_grid.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
        return Err(Error::usage(
            "distance grid must contain positive finite values",
        ));
    }
    if d_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::usage("distance grid must be strictly increasing"));
    }
    Ok(d_grid
        .iter()
        .map(|&d| (d, stack.with_gap_width(d).and_then(|s| engine.evaluate(&s))))
        .collect())
}
