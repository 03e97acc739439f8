//! Fixed Gauss rules, graded composite rules and the Matsubara summation
//! driver.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::constants::{BOLTZMANN, HBAR};
use crate::error::{Error, Result};

/// Largest order accepted by the Gauss rule constructors.
pub const MAX_ORDER: usize = 1024;

/// Smallest `u` reached by the graded finite-domain panels.
const U_FLOOR: f64 = 1e-12;

/// Ratio between consecutive angular panels near `φ = π/2`.
const ANGULAR_PANEL_RATIO: f64 = 4.0;

/// Nodes and weights of a quadrature rule, `∫ f ≈ Σ wᵢ f(xᵢ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = NeumaierSum::new();
        for (x, w) in self.iter() {
            acc.add(w * f(x));
        }
        acc.value()
    }

    pub fn try_integrate(&self, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
        let mut acc = NeumaierSum::new();
        for (x, w) in self.iter() {
            acc.add(w * f(x)?);
        }
        Ok(acc.value())
    }

    fn append(&mut self, other: GaussRule) {
        self.nodes.extend(other.nodes);
        self.weights.extend(other.weights);
    }
}

/// Compensated (Kahan-Babuška-Neumaier) summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::config(format!(
            "quadrature order must be at least 2, got {order}"
        )));
    }
    if order > MAX_ORDER {
        return Err(Error::config(format!(
            "quadrature order {order} exceeds the supported maximum {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// Gauss-Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre(order: usize, a: f64, b: f64) -> Result<GaussRule> {
    check_order(order)?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::config(format!("invalid interval [{a}, {b}]")));
    }
    let n = order;
    let half = (b - a) / 2.0;
    let mid = (b + a) / 2.0;
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if libm::fabs(dz) < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        // nodes in ascending order
        nodes[i] = mid - half * z;
        nodes[n - 1 - i] = mid + half * z;
        weights[i] = half * w;
        weights[n - 1 - i] = half * w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = mid;
    }
    Ok(GaussRule { nodes, weights })
}

/// `(P_n(z), P_n'(z))`.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Gauss-Laguerre rule for `∫₀^∞ e^{−t} f(t) dt`.
pub fn gauss_laguerre(order: usize) -> Result<GaussRule> {
    gauss_laguerre_generalized(order, 0.0)
}

/// Generalized Gauss-Laguerre rule for `∫₀^∞ t^α e^{−t} f(t) dt`, `α > −1`.
///
/// Nodes start from the eigenvalues of the Jacobi matrix and are polished
/// by Newton steps on a rescaled three-term recurrence. Weights are
/// assembled in log space so that high orders neither overflow nor lose
/// the leading nodes' accuracy; weights below the f64 range come out as 0.
pub fn gauss_laguerre_generalized(order: usize, alpha: f64) -> Result<GaussRule> {
    check_order(order)?;
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::config(format!(
            "Laguerre exponent must exceed −1, got {alpha}"
        )));
    }
    let n = order;
    let mut diag: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
    let mut off: Vec<f64> = (0..n)
        .map(|i| {
            let k = (i + 1) as f64;
            libm::sqrt(k * (k + alpha))
        })
        .collect();
    off[n - 1] = 0.0;
    tridiagonal_eigenvalues(&mut diag, &mut off)?;
    diag.sort_by(f64::total_cmp);

    let log_norm = libm::lgamma(n as f64 + alpha + 1.0) - libm::lgamma(n as f64 + 1.0);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &guess in &diag {
        let mut x = guess;
        for _ in 0..8 {
            let l = laguerre_scaled(n, alpha, x);
            let dx = l.value / l.derivative;
            if !dx.is_finite() {
                break;
            }
            x -= dx;
            if libm::fabs(dx) <= 1e-15 * x {
                break;
            }
        }
        // w = Γ(n+α+1)/n! / (x L_n'(x)²); the derivative is largest at a
        // root, unlike L_{n±1} which nearly vanish at the smallest nodes
        let l = laguerre_scaled(n, alpha, x);
        let log_w =
            log_norm - libm::log(x) - 2.0 * (libm::log(libm::fabs(l.derivative)) + l.log_scale);
        nodes.push(x);
        weights.push(libm::exp(log_w));
    }
    Ok(GaussRule { nodes, weights })
}

/// `L_n^α` and its derivative, both divided by `e^{log_scale}`.
struct LaguerreEval {
    value: f64,
    derivative: f64,
    log_scale: f64,
}

fn laguerre_scaled(n: usize, alpha: f64, x: f64) -> LaguerreEval {
    let (mut p0, mut p1) = (1.0, 1.0 + alpha - x);
    let (mut d0, mut d1) = (0.0, -1.0);
    let mut log_scale = 0.0;
    for k in 1..n {
        let kf = k as f64;
        let a = 2.0 * kf + 1.0 + alpha - x;
        let b = kf + alpha;
        let p2 = (a * p1 - b * p0) / (kf + 1.0);
        let d2 = (a * d1 - p1 - b * d0) / (kf + 1.0);
        (p0, p1, d0, d1) = (p1, p2, d1, d2);
        let m = libm::fabs(p1).max(libm::fabs(d1));
        if m > 1e100 {
            p0 /= m;
            p1 /= m;
            d0 /= m;
            d1 /= m;
            log_scale += libm::log(m);
        }
    }
    LaguerreEval {
        value: p1,
        derivative: d1,
        log_scale,
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL.
/// On return `d` holds the eigenvalues, `e` is destroyed.
fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = libm::fabs(d[m]) + libm::fabs(d[m + 1]);
                if libm::fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::numeric(
                    "tridiagonal eigenvalue iteration did not converge",
                    0.0,
                    0.0,
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + libm::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Composite Gauss-Legendre rule on `[0, π/2]` whose panels shrink
/// geometrically toward `φ = π/2`.
///
/// Reflection coefficients of low-frequency (metal-like) media vary on a
/// scale `ξ/(cκ) = cos φ ≪ 1`, so the neighbourhood of grazing `φ` needs
/// resolution that a single smooth rule cannot give.
pub fn graded_angular_rule(order: usize, levels: usize) -> Result<GaussRule> {
    if levels == 0 {
        return gauss_legendre(order, 0.0, FRAC_PI_2);
    }
    let panel = (order / 4).max(4);
    // ψ = π/2 − φ breakpoints
    let mut edges = Vec::with_capacity(levels + 2);
    edges.push(0.0);
    let mut psi = FRAC_PI_2 / libm::pow(ANGULAR_PANEL_RATIO, levels as f64);
    for _ in 0..=levels {
        edges.push(psi);
        psi *= ANGULAR_PANEL_RATIO;
    }
    let mut rule = GaussRule {
        nodes: Vec::new(),
        weights: Vec::new(),
    };
    // outermost panel first so that φ ascends
    for w in edges.windows(2).rev() {
        let (psi_lo, psi_hi) = (w[0], w[1]);
        let top = psi_hi == *edges.last().unwrap_or(&FRAC_PI_2);
        let k = if top { order.max(panel) } else { panel };
        rule.append(gauss_legendre(k, FRAC_PI_2 - psi_hi, FRAC_PI_2 - psi_lo)?);
    }
    Ok(rule)
}

/// Composite Gauss-Legendre rule on `[0, 1]` with dyadic panels
/// `[2^{−k−1}, 2^{−k}]` down to about `1e−12`, for integrands carrying
/// `ln³ u`.
pub fn graded_unit_rule(panel_order: usize) -> Result<GaussRule> {
    let mut rule = GaussRule {
        nodes: Vec::new(),
        weights: Vec::new(),
    };
    let mut edges = alloc::vec![1.0];
    let mut u = 1.0;
    while u > U_FLOOR {
        u *= 0.5;
        edges.push(u);
    }
    edges.push(0.0);
    for w in edges.windows(2).rev() {
        rule.append(gauss_legendre(panel_order, w[1], w[0])?);
    }
    Ok(rule)
}

/// Zero-temperature radial integration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    /// Gauss-Laguerre in `t = 2κd`. Converges only algebraically for
    /// metals, whose reflection coefficients go like `1 − O(√t)`.
    Laguerre,
    /// Graded Gauss-Legendre in `u = e^{−2κd}` on `[0, 1]`.
    #[default]
    FiniteDomain,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub radial_order: usize,
    pub angular_order: usize,
    /// Number of geometrically shrinking angular panels near grazing angles.
    pub angular_levels: usize,
    pub scheme: Scheme,
    pub target_rel_err: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            radial_order: 80,
            angular_order: 40,
            angular_levels: 14,
            scheme: Scheme::FiniteDomain,
            target_rel_err: 1e-8,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("radial_order", self.radial_order),
            ("angular_order", self.angular_order),
        ] {
            if v < 4 {
                return Err(Error::config(format!("{name} must be at least 4, got {v}")));
            }
            if v > MAX_ORDER {
                return Err(Error::config(format!(
                    "{name} must not exceed {MAX_ORDER}, got {v}"
                )));
            }
        }
        if self.angular_levels > 40 {
            return Err(Error::config(format!(
                "angular_levels must not exceed 40, got {}",
                self.angular_levels
            )));
        }
        if !(self.target_rel_err > 0.0 && self.target_rel_err < 0.1) {
            return Err(Error::config(format!(
                "target_rel_err must lie in (0, 0.1), got {}",
                self.target_rel_err
            )));
        }
        Ok(())
    }

    /// Same settings at half the radial and angular orders.
    pub fn halved(&self) -> Self {
        Self {
            radial_order: (self.radial_order / 2).max(2),
            angular_order: (self.angular_order / 2).max(2),
            ..*self
        }
    }

    pub fn doubled(&self) -> Self {
        Self {
            radial_order: self.radial_order * 2,
            angular_order: self.angular_order * 2,
            ..*self
        }
    }

    pub fn angular_rule(&self) -> Result<GaussRule> {
        graded_angular_rule(self.angular_order, self.angular_levels)
    }

    /// Legendre order used on each finite-domain panel.
    pub fn panel_order(&self) -> usize {
        (self.radial_order / 5).max(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraSettings {
    /// The static term is evaluated at `ξ₀ = xi0_fraction · ξ₁` when some
    /// layer has `ε(0) = ∞`, and at `ξ = 0` otherwise.
    pub xi0_fraction: f64,
    pub tail_rel_tol: f64,
    pub max_terms: usize,
}

impl Default for MatsubaraSettings {
    fn default() -> Self {
        Self {
            xi0_fraction: 1e-3,
            tail_rel_tol: 1e-8,
            max_terms: 200_000,
        }
    }
}

impl MatsubaraSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.xi0_fraction > 0.0 && self.xi0_fraction <= 0.1) {
            return Err(Error::config(format!(
                "xi0_fraction must lie in (0, 0.1], got {}",
                self.xi0_fraction
            )));
        }
        if !(self.tail_rel_tol > 0.0 && self.tail_rel_tol.is_finite()) {
            return Err(Error::config(format!(
                "tail_rel_tol must be positive, got {}",
                self.tail_rel_tol
            )));
        }
        if self.max_terms < 4 {
            return Err(Error::config(format!(
                "max_terms must be at least 4, got {}",
                self.max_terms
            )));
        }
        Ok(())
    }
}

/// First Matsubara frequency `2π k_B T / ħ`.
pub fn matsubara_frequency(temperature: f64) -> f64 {
    2.0 * PI * BOLTZMANN * temperature / HBAR
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraSum {
    pub value: f64,
    /// Number of frequencies evaluated, including `m = 0`.
    pub terms: usize,
    /// Geometric estimate of the discarded remainder.
    pub tail: f64,
}

/// `Σ_{m≥0} (1 − δ_{m0}/2) term(m, ξ_m)` with `ξ_m = m ξ₁` and the static
/// term taken at `ξ₀ = xi0_fraction · ξ₁`.
///
/// Stops once the ratio-test remainder of the last three non-zero terms
/// drops below `tail_rel_tol` times the running sum, or once three
/// consecutive terms vanish.
pub fn matsubara_sum(
    mut term: impl FnMut(usize, f64) -> Result<f64>,
    settings: &MatsubaraSettings,
    temperature: f64,
) -> Result<MatsubaraSum> {
    settings.validate()?;
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    let xi1 = matsubara_frequency(temperature);
    let mut acc = NeumaierSum::new();
    let mut last = [0.0f64; 3];
    let mut nonzero = 0usize;
    let mut zero_run = 0usize;
    let mut tail = f64::INFINITY;
    for m in 0..settings.max_terms {
        let xi = if m == 0 {
            settings.xi0_fraction * xi1
        } else {
            m as f64 * xi1
        };
        let mut t = term(m, xi)?;
        if m == 0 {
            t *= 0.5;
        }
        if !t.is_finite() {
            return Err(Error::numeric(
                format!("Matsubara term {m} is not finite"),
                acc.value(),
                f64::INFINITY,
            ));
        }
        acc.add(t);
        if t == 0.0 {
            zero_run += 1;
            if zero_run >= 3 {
                return Ok(MatsubaraSum {
                    value: acc.value(),
                    terms: m + 1,
                    tail: 0.0,
                });
            }
            continue;
        }
        zero_run = 0;
        last = [last[1], last[2], t];
        nonzero += 1;
        // the halved static term does not follow the trend of the rest
        if nonzero >= 3 && m >= 3 {
            let r = (libm::fabs(last[2] / last[1])).max(libm::fabs(last[1] / last[0]));
            if r < 1.0 {
                tail = libm::fabs(last[2]) * r / (1.0 - r);
                if tail < settings.tail_rel_tol * libm::fabs(acc.value()) {
                    return Ok(MatsubaraSum {
                        value: acc.value(),
                        terms: m + 1,
                        tail,
                    });
                }
            } else {
                tail = f64::INFINITY;
            }
        }
    }
    Err(Error::numeric(
        format!(
            "Matsubara sum not converged within {} terms",
            settings.max_terms
        ),
        acc.value(),
        tail,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_examples() {
        let r = gauss_legendre(16, 0.0, FRAC_PI_2).unwrap();
        assert_relative_eq!(r.integrate(libm::sin), 1.0, max_relative = 1e-14);
        let r = gauss_legendre(2, 0.0, 1.0).unwrap();
        assert_relative_eq!(r.integrate(|u| u * u), 1.0 / 3.0, max_relative = 1e-15);
        let r = gauss_legendre(7, -1.0, 1.0).unwrap();
        assert_relative_eq!(r.weights.iter().sum::<f64>(), 2.0, max_relative = 1e-15);
        assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(r.nodes[3], 0.0);
    }

    #[test]
    fn legendre_exact_for_polynomials() {
        for n in [3usize, 10, 37, 200] {
            let r = gauss_legendre(n, -2.0, 3.0).unwrap();
            let deg = 2 * n - 1;
            let exact = (libm::pow(3.0, (deg + 1) as f64) - libm::pow(-2.0, (deg + 1) as f64))
                / (deg + 1) as f64;
            assert_relative_eq!(
                r.integrate(|x| libm::pow(x, deg as f64)),
                exact,
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn log_cubed_on_graded_panels() {
        let r = graded_unit_rule(16).unwrap();
        let v = r.integrate(|u| {
            let l = libm::log(u);
            l * l * l
        });
        assert!((v + 6.0).abs() < 1e-6, "{v}");
    }

    #[test]
    fn laguerre_examples() {
        let r = gauss_laguerre(8).unwrap();
        assert_relative_eq!(r.integrate(|_| 1.0), 1.0, max_relative = 1e-14);
        let r = gauss_laguerre(4).unwrap();
        assert_relative_eq!(r.integrate(|t| t * t * t), 6.0, max_relative = 1e-12);
    }

    #[test]
    fn laguerre_high_order_moments() {
        for n in [80usize, 200, 400, 1024] {
            let r = gauss_laguerre(n).unwrap();
            assert_eq!(r.len(), n);
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            assert_relative_eq!(r.integrate(|_| 1.0), 1.0, max_relative = 1e-12);
            // Γ(k+1)
            let mut fact = 1.0;
            for k in 1..=10 {
                fact *= k as f64;
                assert_relative_eq!(
                    r.integrate(|t| libm::pow(t, k as f64)),
                    fact,
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn generalized_laguerre_moments() {
        for alpha in [-0.5, 1.0, 3.0, 2.5] {
            let r = gauss_laguerre_generalized(60, alpha).unwrap();
            for k in 0..6 {
                let exact = libm::tgamma(alpha + 1.0 + k as f64);
                assert_relative_eq!(
                    r.integrate(|t| libm::pow(t, k as f64)),
                    exact,
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn order_limits() {
        assert!(matches!(gauss_laguerre(1), Err(Error::Config(_))));
        assert!(matches!(
            gauss_laguerre(MAX_ORDER + 1),
            Err(Error::Config(_))
        ));
        assert!(gauss_legendre(4, 1.0, 1.0).is_err());
        assert!(gauss_laguerre_generalized(4, -1.0).is_err());
    }

    #[test]
    fn angular_rule_covers_quarter_circle() {
        let r = graded_angular_rule(40, 14).unwrap();
        assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(r.nodes[0] > 0.0 && *r.nodes.last().unwrap() < FRAC_PI_2);
        assert_relative_eq!(r.integrate(libm::sin), 1.0, max_relative = 1e-14);
        assert_relative_eq!(r.integrate(libm::cos), 1.0, max_relative = 1e-14);
        // resolves a sharp feature at grazing angles
        let w = 1e-6;
        let exact = libm::atan(FRAC_PI_2 / w) * w;
        let v = r.integrate(|phi| {
            let psi = FRAC_PI_2 - phi;
            w * w / (psi * psi + w * w)
        });
        assert_relative_eq!(v, exact, max_relative = 1e-9);
    }

    #[test]
    fn matsubara_examples() {
        let s = MatsubaraSettings::default();
        let r = matsubara_sum(|_, _| Ok(0.0), &s, 300.0).unwrap();
        assert_eq!(r.value, 0.0);
        assert_relative_eq!(matsubara_frequency(300.0), 2.468e14, max_relative = 1e-3);
        let r = matsubara_sum(|m, _| Ok(libm::pow(2.0, -(m as f64))), &s, 300.0).unwrap();
        assert!((r.value - 1.5).abs() <= 1.5 * s.tail_rel_tol, "{}", r.value);
        assert!(r.tail <= s.tail_rel_tol * r.value);
    }

    #[test]
    fn matsubara_frequencies_passed_through() {
        let s = MatsubaraSettings::default();
        let xi1 = matsubara_frequency(10.0);
        let mut seen = std::vec::Vec::new();
        let _ = matsubara_sum(
            |m, xi| {
                seen.push((m, xi));
                Ok(libm::exp(-(m as f64)))
            },
            &s,
            10.0,
        )
        .unwrap();
        assert_eq!(seen[0], (0, 1e-3 * xi1));
        assert_eq!(seen[3], (3, 3.0 * xi1));
    }

    #[test]
    fn matsubara_divergence_reports_partial_sum() {
        let s = MatsubaraSettings {
            max_terms: 50,
            ..Default::default()
        };
        match matsubara_sum(|_, _| Ok(1.0), &s, 1.0) {
            Err(Error::Numeric { partial, tail, .. }) => {
                assert_eq!(partial, 49.5);
                assert!(tail.is_infinite());
            }
            other => panic!("{other:?}"),
        }
        assert!(matsubara_sum(|_, _| Ok(1.0), &s, 0.0).is_err());
    }

    #[test]
    fn compensated_sum() {
        let mut s = NeumaierSum::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }
}
