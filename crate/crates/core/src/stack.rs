//! Planar multilayer geometry and generalized reflection coefficients.
//!
//! Layers are indexed `0..=n` from bottom to top. Layers `0` and `n` are
//! half-spaces, everything in between has a finite thickness, and the vacuum
//! gap sits at `gap_index`. The upper wall is `gap_index + 1..=n`, the lower
//! wall `0..gap_index`.
//!
//! Reflection coefficients are built by the downward (upper wall) or upward
//! (lower wall) recursion
//!
//! ```text
//! r_l = (a + e·r_{l±1}) / (1 + a·e·r_{l±1}),   e = exp(−2 κ_{l±1} d_{l±1})
//! ```
//!
//! where `a` is the single-interface coefficient between layer `l` and its
//! neighbour. On the imaginary axis `|a| ≤ 1` and `|e·r| ≤ 1`, so every
//! step stays in `[−1, 1]`.

use alloc::format;
use alloc::vec::Vec;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::materials::Permittivity;

/// Beyond this `2κd` the slab attenuation factor is below the f64 underflow
/// threshold and is taken as exactly zero.
const UNDERFLOW_EXPONENT: f64 = 745.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Thickness {
    Finite(f64),
    SemiInfinite,
}

impl Thickness {
    pub fn finite(self) -> Option<f64> {
        match self {
            Thickness::Finite(d) => Some(d),
            Thickness::SemiInfinite => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub thickness: Thickness,
    pub material: Permittivity,
}

impl Layer {
    pub fn slab(thickness: f64, material: impl Into<Permittivity>) -> Self {
        Self {
            thickness: Thickness::Finite(thickness),
            material: material.into(),
        }
    }

    pub fn half_space(material: impl Into<Permittivity>) -> Self {
        Self {
            thickness: Thickness::SemiInfinite,
            material: material.into(),
        }
    }

    pub fn vacuum(thickness: f64) -> Self {
        Self::slab(thickness, Permittivity::Vacuum)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    S,
    P,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::S, Polarization::P];

    fn index(self) -> usize {
        match self {
            Polarization::S => 0,
            Polarization::P => 1,
        }
    }

    /// Reflection coefficient of an ideal mirror.
    pub fn ideal_reflection(self) -> f64 {
        match self {
            Polarization::S => -1.0,
            Polarization::P => 1.0,
        }
    }
}

/// Generalized reflection coefficients `r_{j+}` (upper wall) and `r_{j−}`
/// (lower wall) seen from the gap, for one polarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub plus: f64,
    pub minus: f64,
}

impl ReflectionPair {
    pub fn product(&self) -> f64 {
        self.plus * self.minus
    }
}

/// Ordered layers with a vacuum gap.
#[derive(Debug, Clone, PartialEq)]
pub struct Stack {
    layers: Vec<Layer>,
    gap: usize,
}

impl Stack {
    /// Validates the layout. The gap layer must already be vacuum.
    pub fn new(layers: Vec<Layer>, gap_index: usize) -> Result<Self> {
        let n = layers.len();
        if n < 3 {
            return Err(Error::usage(format!(
                "a stack needs at least three layers (two walls and a gap), got {n}"
            )));
        }
        if gap_index == 0 || gap_index >= n - 1 {
            return Err(Error::usage(format!(
                "gap index must satisfy 0 < j < {}, got {gap_index}",
                n - 1
            )));
        }
        for (i, layer) in layers.iter().enumerate() {
            let outer = i == 0 || i == n - 1;
            match (outer, layer.thickness) {
                (true, Thickness::Finite(_)) => {
                    return Err(Error::usage(format!(
                        "layer {i}: outer layers must be semi-infinite"
                    )))
                }
                (false, Thickness::SemiInfinite) => {
                    return Err(Error::usage(format!(
                        "layer {i}: inner layers must have finite thickness"
                    )))
                }
                (false, Thickness::Finite(d)) if !(d.is_finite() && d > 0.0) => {
                    return Err(Error::usage(format!(
                        "layer {i}: thickness must be finite and positive, got {d}"
                    )))
                }
                _ => {}
            }
        }
        if !layers[gap_index].material.is_vacuum() {
            return Err(Error::usage(format!(
                "gap layer {gap_index} must be vacuum"
            )));
        }
        Ok(Self {
            layers,
            gap: gap_index,
        })
    }

    /// Like [`Stack::new`] but forces the gap permittivity to unity.
    /// The flag reports whether the gap material had to be replaced.
    pub fn with_vacuum_gap(mut layers: Vec<Layer>, gap_index: usize) -> Result<(Self, bool)> {
        let coerced = match layers.get_mut(gap_index) {
            Some(layer) if !layer.material.is_vacuum() => {
                layer.material = Permittivity::Vacuum;
                true
            }
            _ => false,
        };
        Self::new(layers, gap_index).map(|s| (s, coerced))
    }

    /// Two half-space walls around a gap of width `d`.
    pub fn symmetric_half_spaces(material: impl Into<Permittivity>, d: f64) -> Result<Self> {
        let m = material.into();
        Self::new(
            alloc::vec![
                Layer::half_space(m.clone()),
                Layer::vacuum(d),
                Layer::half_space(m)
            ],
            1,
        )
    }

    /// Two identical slabs of thickness `slab` backed by vacuum.
    pub fn symmetric_slabs(material: impl Into<Permittivity>, slab: f64, d: f64) -> Result<Self> {
        let m = material.into();
        Self::new(
            alloc::vec![
                Layer::half_space(Permittivity::Vacuum),
                Layer::slab(slab, m.clone()),
                Layer::vacuum(d),
                Layer::slab(slab, m),
                Layer::half_space(Permittivity::Vacuum),
            ],
            2,
        )
    }

    /// Mirror-symmetric stack built from one wall, listed from the gap outward.
    /// The last entry of `wall` is the outer half-space.
    pub fn mirrored(wall: &[Layer], d: f64) -> Result<Self> {
        let mut layers: Vec<Layer> = wall.iter().rev().cloned().collect();
        let gap = layers.len();
        layers.push(Layer::vacuum(d));
        layers.extend(wall.iter().cloned());
        Self::new(layers, gap)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn gap_index(&self) -> usize {
        self.gap
    }

    /// Wall separation `d_j`.
    pub fn gap_width(&self) -> f64 {
        self.layers[self.gap].thickness.finite().unwrap_or(f64::NAN)
    }

    /// Copy with the gap thickness replaced.
    pub fn with_gap_width(&self, d: f64) -> Result<Self> {
        let mut layers = self.layers.clone();
        layers[self.gap].thickness = Thickness::Finite(d);
        Self::new(layers, self.gap)
    }

    /// Layers above the gap, nearest first.
    pub fn upper_wall(&self) -> &[Layer] {
        &self.layers[self.gap + 1..]
    }

    /// Layers below the gap, nearest first (reversed order).
    pub fn lower_wall(&self) -> impl DoubleEndedIterator<Item = &Layer> + ExactSizeIterator {
        self.layers[..self.gap].iter().rev()
    }

    /// Stack turned upside down; swaps the roles of the two walls.
    pub fn reversed(&self) -> Self {
        let layers: Vec<Layer> = self.layers.iter().rev().cloned().collect();
        let gap = layers.len() - 1 - self.gap;
        Self { layers, gap }
    }

    /// `r_{j+}^σ`.
    pub fn reflect_up(&self, sigma: Polarization, xi: f64, q: f64) -> Result<f64> {
        check_point(xi, q)?;
        Ok(wall_reflection(self.layers[self.gap..].iter().rev(), xi, q)?[sigma.index()])
    }

    /// `r_{j−}^σ`.
    pub fn reflect_down(&self, sigma: Polarization, xi: f64, q: f64) -> Result<f64> {
        check_point(xi, q)?;
        Ok(wall_reflection(self.layers[..=self.gap].iter(), xi, q)?[sigma.index()])
    }

    pub fn reflection_pair(&self, sigma: Polarization, xi: f64, q: f64) -> Result<ReflectionPair> {
        let [s, p] = self.reflection_pairs(xi, q)?;
        Ok(match sigma {
            Polarization::S => s,
            Polarization::P => p,
        })
    }

    /// Both polarizations in one pass over the layers.
    pub fn reflection_pairs(&self, xi: f64, q: f64) -> Result<[ReflectionPair; 2]> {
        check_point(xi, q)?;
        let up = wall_reflection(self.layers[self.gap..].iter().rev(), xi, q)?;
        let down = wall_reflection(self.layers[..=self.gap].iter(), xi, q)?;
        Ok([
            ReflectionPair {
                plus: up[0],
                minus: down[0],
            },
            ReflectionPair {
                plus: up[1],
                minus: down[1],
            },
        ])
    }
}

fn check_point(xi: f64, q: f64) -> Result<()> {
    if !(xi.is_finite() && q.is_finite() && xi >= 0.0 && q >= 0.0) {
        return Err(Error::domain(format!(
            "reflection requested at invalid point ξ = {xi}, q = {q}"
        )));
    }
    if xi == 0.0 && q == 0.0 {
        return Err(Error::domain(
            "reflection coefficients are undefined at ξ = q = 0",
        ));
    }
    Ok(())
}

/// `κ = √(ξ² ε(iξ)/c² + q²)`, the imaginary-axis propagation constant.
pub fn kappa(material: &Permittivity, xi: f64, q: f64) -> Result<f64> {
    let eps = material.epsilon(xi)?;
    Ok(kappa_with(eps, xi, q))
}

#[inline]
fn kappa_with(eps: f64, xi: f64, q: f64) -> f64 {
    let k0 = xi / SPEED_OF_LIGHT;
    libm::sqrt(k0 * k0 * eps + q * q)
}

/// Reflection coefficient of a single interface seen from medium `a`.
pub fn single_interface(
    sigma: Polarization,
    kappa_a: f64,
    kappa_b: f64,
    eps_a: f64,
    eps_b: f64,
) -> f64 {
    match sigma {
        Polarization::S => (kappa_a - kappa_b) / (kappa_a + kappa_b),
        Polarization::P => {
            let k = kappa_a / kappa_b;
            let e = eps_a / eps_b;
            (k - e) / (k + e)
        }
    }
}

#[inline]
fn attenuation(kappa: f64, thickness: Thickness) -> f64 {
    match thickness {
        Thickness::SemiInfinite => 0.0,
        Thickness::Finite(d) => {
            let x = 2.0 * kappa * d;
            if x > UNDERFLOW_EXPONENT {
                0.0
            } else {
                libm::exp(-x)
            }
        }
    }
}

#[inline]
fn step(a: f64, e: f64, r: f64) -> f64 {
    let x = e * r;
    (a + x) / (1.0 + a * x)
}

/// Runs the recursion over `far_to_near`, which starts at the outer
/// half-space and ends at the gap. Returns `[r^s, r^p]` at the gap.
fn wall_reflection<'a>(
    mut far_to_near: impl Iterator<Item = &'a Layer>,
    xi: f64,
    q: f64,
) -> Result<[f64; 2]> {
    let outer = far_to_near
        .next()
        .ok_or_else(|| Error::usage("empty wall"))?;
    let mut r = [0.0, 0.0];
    // (κ, ε, thickness) of the previous (farther) layer; None if it is a perfect mirror
    let mut prev = if outer.material.is_perfect_mirror() {
        None
    } else {
        let eps = outer.material.epsilon(xi)?;
        Some((kappa_with(eps, xi, q), eps, outer.thickness))
    };
    for layer in far_to_near {
        if layer.material.is_perfect_mirror() {
            // whatever lies beyond is screened; the next step short-circuits
            prev = None;
            continue;
        }
        let eps = layer.material.epsilon(xi)?;
        let k = kappa_with(eps, xi, q);
        match prev {
            None => r = [-1.0, 1.0],
            Some((k_prev, eps_prev, d_prev)) => {
                let e = attenuation(k_prev, d_prev);
                let a_s = single_interface(Polarization::S, k, k_prev, eps, eps_prev);
                let a_p = single_interface(Polarization::P, k, k_prev, eps, eps_prev);
                r = [step(a_s, e, r[0]), step(a_p, e, r[1])];
            }
        }
        prev = Some((k, eps, layer.thickness));
    }
    Ok(r)
}
