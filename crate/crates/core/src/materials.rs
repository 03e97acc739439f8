//! Layer permittivities evaluated on the positive imaginary frequency axis.
//!
//! On `ω = iξ` with `ξ ≥ 0` every causal, passive permittivity is real and
//! at least one, so this module only ever hands out plain `f64` values.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Single-resonance Drude-Lorentz oscillator
/// `ε(ω) = 1 − Ω² / (ω² + iγ₀ω − ω₀²)`.
///
/// On the imaginary axis this becomes `ε(iξ) = 1 + Ω² / (ξ² + γ₀ξ + ω₀²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeLorentzParams {
    omega0: f64,
    omega_p: f64,
    gamma0: f64,
}

impl DrudeLorentzParams {
    /// Dielectric (silicon-like) parameters: ω₀ = 2.0e15, Ω = 6.536e15, γ₀ = 9.859e12 s⁻¹.
    pub const SI_LIKE: Self = Self {
        omega0: 2.0e15,
        omega_p: 6.536e15,
        gamma0: 9.859e12,
    };

    /// Metal-like (magnesium-like) parameters: ω₀ = 1.0e9, Ω = 1.6176e16, γ₀ = 9.7e14 s⁻¹.
    pub const MG_LIKE: Self = Self {
        omega0: 1.0e9,
        omega_p: 1.6176e16,
        gamma0: 9.7e14,
    };

    pub fn new(omega0: f64, omega_p: f64, gamma0: f64) -> Result<Self> {
        for (name, v) in [("omega0", omega0), ("omega_p", omega_p), ("gamma0", gamma0)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain(format!(
                    "Drude-Lorentz {name} must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(Self {
            omega0,
            omega_p,
            gamma0,
        })
    }

    /// Transverse resonance frequency ω₀, rad/s.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Plasma frequency Ω, rad/s.
    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    /// Absorption parameter γ₀, rad/s.
    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn with_omega0(self, omega0: f64) -> Result<Self> {
        Self::new(omega0, self.omega_p, self.gamma0)
    }

    pub fn with_omega_p(self, omega_p: f64) -> Result<Self> {
        Self::new(self.omega0, omega_p, self.gamma0)
    }

    pub fn with_gamma0(self, gamma0: f64) -> Result<Self> {
        Self::new(self.omega0, self.omega_p, gamma0)
    }

    fn epsilon(&self, xi: f64) -> Result<f64> {
        if self.omega_p == 0.0 {
            return Ok(1.0);
        }
        let denom = xi * xi + self.gamma0 * xi + self.omega0 * self.omega0;
        if denom == 0.0 {
            return Err(Error::domain(
                "Drude-Lorentz permittivity diverges at ξ = 0 when ω₀ = 0",
            ));
        }
        Ok(1.0 + self.omega_p * self.omega_p / denom)
    }

    /// Lowest resonance for dielectrics, plasma frequency for metals (ω₀ = 0).
    pub fn characteristic_frequency(&self) -> f64 {
        if self.omega0 > 0.0 {
            self.omega0
        } else {
            self.omega_p
        }
    }
}

/// Tabulated `ε(iξ)` on a strictly increasing frequency grid.
///
/// Between nodes the table is interpolated linearly in `(ln ξ, ln(ε − 1))`.
/// A segment whose left node sits at `ξ = 0` is interpolated linearly in `ξ`
/// instead, and segments touching `ε = 1` fall back to linear interpolation
/// of `ε − 1`. Below the first node the first value is held; above the last
/// node `ε = 1 + C/ξ²`, matched at the last node.
#[derive(Debug, Clone, PartialEq)]
pub struct PermittivityTable {
    xi: Vec<f64>,
    eps: Vec<f64>,
}

impl PermittivityTable {
    pub fn new(points: &[(f64, f64)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("permittivity table needs at least one point"));
        }
        let mut xi = Vec::with_capacity(points.len());
        let mut eps = Vec::with_capacity(points.len());
        for (i, &(x, e)) in points.iter().enumerate() {
            if !x.is_finite() || x < 0.0 {
                return Err(Error::domain(format!(
                    "table point {i}: frequency must be finite and non-negative, got {x}"
                )));
            }
            if !e.is_finite() || e < 1.0 {
                return Err(Error::domain(format!(
                    "table point {i}: ε(iξ) must be finite and ≥ 1, got {e}"
                )));
            }
            if let Some(&prev) = xi.last() {
                if x <= prev {
                    return Err(Error::domain(format!(
                        "table point {i}: frequencies must be strictly increasing"
                    )));
                }
            }
            xi.push(x);
            eps.push(e);
        }
        if *xi.last().unwrap() <= 0.0 {
            return Err(Error::domain("table must extend to a positive frequency"));
        }
        Ok(Self { xi, eps })
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xi.iter().copied().zip(self.eps.iter().copied())
    }

    fn epsilon(&self, xi: f64) -> f64 {
        let n = self.xi.len();
        if xi <= self.xi[0] {
            return self.eps[0];
        }
        let (x_last, e_last) = (self.xi[n - 1], self.eps[n - 1]);
        if xi >= x_last {
            let ratio = x_last / xi;
            return 1.0 + (e_last - 1.0) * ratio * ratio;
        }
        // first node strictly above xi; 1 ≤ hi ≤ n − 1 here
        let hi = self.xi.partition_point(|&x| x <= xi);
        let (x0, x1) = (self.xi[hi - 1], self.xi[hi]);
        let (e0, e1) = (self.eps[hi - 1] - 1.0, self.eps[hi] - 1.0);
        let s = if x0 == 0.0 {
            xi / x1
        } else {
            libm::log(xi / x0) / libm::log(x1 / x0)
        };
        let excess = if e0 > 0.0 && e1 > 0.0 {
            e0 * libm::exp(s * libm::log(e1 / e0))
        } else {
            e0 + s * (e1 - e0)
        };
        1.0 + excess
    }

    fn characteristic_frequency(&self) -> Option<f64> {
        let e0 = self.eps[0] - 1.0;
        if e0 <= 0.0 {
            return None;
        }
        self.xi
            .iter()
            .zip(&self.eps)
            .find(|&(_, &e)| e - 1.0 <= 0.5 * e0)
            .map(|(&x, _)| x)
            .or(self.xi.last().copied())
            .filter(|&x| x > 0.0)
    }
}

/// Material model of one layer.
#[derive(Debug, Clone, PartialEq)]
pub enum Permittivity {
    Vacuum,
    /// Ideal reflector (Ω → ∞). Never evaluated as a permittivity: the stack
    /// short-circuits its reflection coefficients to `r^s = −1`, `r^p = +1`.
    PerfectMirror,
    DrudeLorentz(DrudeLorentzParams),
    Tabulated(PermittivityTable),
}

impl Permittivity {
    /// `ε(iξ)` for `ξ ≥ 0`.
    pub fn epsilon(&self, xi: f64) -> Result<f64> {
        if !xi.is_finite() || xi < 0.0 {
            return Err(Error::domain(format!(
                "imaginary frequency must be finite and non-negative, got {xi}"
            )));
        }
        match self {
            Permittivity::Vacuum => Ok(1.0),
            Permittivity::PerfectMirror => Err(Error::usage(
                "perfect mirror has no finite permittivity; its reflection must be short-circuited",
            )),
            Permittivity::DrudeLorentz(p) => p.epsilon(xi),
            Permittivity::Tabulated(t) => Ok(t.epsilon(xi)),
        }
    }

    /// `ε(i·0)`.
    pub fn epsilon_static(&self) -> Result<f64> {
        self.epsilon(0.0)
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self, Permittivity::Vacuum)
    }

    pub fn is_perfect_mirror(&self) -> bool {
        matches!(self, Permittivity::PerfectMirror)
    }

    /// Finite, non-trivial static permittivity: the kind of layer that makes a
    /// thin slab reflect like `O(κ d)` at long wavelengths.
    pub fn is_dielectric(&self) -> bool {
        match self {
            Permittivity::Vacuum | Permittivity::PerfectMirror => false,
            _ => self.epsilon_static().map(|e| e > 1.0).unwrap_or(false),
        }
    }

    /// Scale `ξ_l` on which `ε(iξ)` varies: ω₀ for dielectrics, Ω for metals,
    /// half-excess frequency for tables. `None` for vacuum and perfect mirrors.
    pub fn characteristic_frequency(&self) -> Option<f64> {
        match self {
            Permittivity::Vacuum | Permittivity::PerfectMirror => None,
            Permittivity::DrudeLorentz(p) => {
                Some(p.characteristic_frequency()).filter(|&w| w > 0.0)
            }
            Permittivity::Tabulated(t) => t.characteristic_frequency(),
        }
    }
}

impl From<DrudeLorentzParams> for Permittivity {
    fn from(p: DrudeLorentzParams) -> Self {
        Permittivity::DrudeLorentz(p)
    }
}

/// Free-function form of [`Permittivity::epsilon`].
pub fn epsilon_imag_axis(model: &Permittivity, xi: f64) -> Result<f64> {
    model.epsilon(xi)
}

/// Free-function form of [`Permittivity::epsilon_static`].
pub fn epsilon_static(model: &Permittivity) -> Result<f64> {
    model.epsilon_static()
}
