//! Polylogarithms of real argument in `[−1, 1]`, `ζ(4)`, the modified
//! dilogarithm `L̃i₂` and the short-distance integrals `I_m`.

use alloc::format;
use core::f64::consts::PI;

use crate::constants::ZETA3;
use crate::error::{Error, Result};
use crate::quadrature::NeumaierSum;

const ZETA2: f64 = PI * PI / 6.0;

/// Bernoulli numbers `B_{2j}`, `j = 1..=20`.
const BERNOULLI_EVEN: [f64; 20] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
];

/// Order of the polylogarithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolyLogOrder {
    Two,
    Three,
    Four,
}

impl PolyLogOrder {
    pub fn s(self) -> u32 {
        match self {
            PolyLogOrder::Two => 2,
            PolyLogOrder::Three => 3,
            PolyLogOrder::Four => 4,
        }
    }
}

impl TryFrom<u32> for PolyLogOrder {
    type Error = Error;

    fn try_from(s: u32) -> Result<Self> {
        match s {
            2 => Ok(PolyLogOrder::Two),
            3 => Ok(PolyLogOrder::Three),
            4 => Ok(PolyLogOrder::Four),
            _ => Err(Error::domain(format!(
                "polylogarithm order {s} is not supported"
            ))),
        }
    }
}

pub fn zeta4() -> f64 {
    PI * PI * PI * PI / 90.0
}

/// `ζ(n)` at the integers the log-series touches: `n ≤ 4`, `n ≠ 1`.
fn zeta_int(n: i32) -> f64 {
    match n {
        4 => zeta4(),
        3 => ZETA3,
        2 => ZETA2,
        0 => -0.5,
        n if n < 0 && n % 2 == 0 => 0.0,
        n if n < 0 => {
            // ζ(1 − 2j) = −B_{2j} / 2j
            let two_j = (1 - n) as usize;
            -BERNOULLI_EVEN[two_j / 2 - 1] / two_j as f64
        }
        _ => unreachable!("ζ({n}) is not needed"),
    }
}

/// `Li_s(x) = Σ_{m≥1} x^m / m^s` for `|x| ≤ 1`.
pub fn polylog(order: PolyLogOrder, x: f64) -> Result<f64> {
    if !(x.is_finite() && libm::fabs(x) <= 1.0) {
        return Err(Error::domain(format!(
            "polylogarithm argument {x} outside [−1, 1]"
        )));
    }
    let s = order.s();
    Ok(if libm::fabs(x) <= 0.5 {
        direct_series(s, x)
    } else if x > 0.0 {
        near_one(s, x)
    } else {
        // Li_s(x) + Li_s(−x) = 2^{1−s} Li_s(x²)
        let x2 = x * x;
        let even = if x2 <= 0.5 {
            direct_series(s, x2)
        } else {
            near_one(s, x2)
        };
        libm::ldexp(even, 1 - s as i32) - near_one(s, -x)
    })
}

pub fn li2(x: f64) -> Result<f64> {
    polylog(PolyLogOrder::Two, x)
}

pub fn li3(x: f64) -> Result<f64> {
    polylog(PolyLogOrder::Three, x)
}

pub fn li4(x: f64) -> Result<f64> {
    polylog(PolyLogOrder::Four, x)
}

fn direct_series(s: u32, x: f64) -> f64 {
    let mut power = x;
    let mut sum = 0.0;
    let mut m = 1u32;
    loop {
        let term = power / libm::pow(m as f64, s as f64);
        sum += term;
        if libm::fabs(term) <= 1e-18 * libm::fabs(sum) || power == 0.0 {
            return sum;
        }
        power *= x;
        m += 1;
    }
}

/// Expansion about `x = 1` in `μ = ln x`, valid for `|μ| < 2π`:
/// `Li_s(e^μ) = μ^{s−1}/(s−1)! [H_{s−1} − ln(−μ)] + Σ_{k≠s−1} ζ(s−k) μ^k/k!`.
fn near_one(s: u32, x: f64) -> f64 {
    let mu = libm::log(x);
    let s = s as i32;
    let mut sum = 0.0;
    let mut power = 1.0; // μ^k / k!
    for k in 0..60 {
        if k != s - 1 {
            let term = zeta_int(s - k) * power;
            sum += term;
            if k > s && libm::fabs(power) < 1e-20 {
                break;
            }
        } else if mu != 0.0 {
            let harmonic: f64 = (1..=k).map(|i| 1.0 / i as f64).sum();
            sum += power * (harmonic - libm::log(-mu));
        }
        power *= mu / (k + 1) as f64;
    }
    sum
}

/// Largest argument accepted by [`tilde_li2`]: the series radius, where the
/// terms still fall like `m^{−3.5}`.
pub const TILDE_LI2_MAX: f64 = 1.0 / 16.0;

/// `L̃i₂(z) = ½ Σ_{m≥1} Γ(4m−1)/Γ(2m)² · z^m/m³` for `0 ≤ z ≤ 1/16`.
///
/// Consecutive terms are related by
/// `t_{m+1}/t_m = z · 2(16m²−1)/(m(2m+1)) · m³/(m+1)³`,
/// which keeps every term in range without evaluating the gamma functions.
pub fn tilde_li2(z: f64) -> Result<f64> {
    if !(z.is_finite() && (0.0..=TILDE_LI2_MAX).contains(&z)) {
        return Err(Error::domain(format!(
            "modified dilogarithm argument {z} outside [0, {TILDE_LI2_MAX}]"
        )));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let limit_ratio = 16.0 * z;
    let mut term = z;
    let mut sum = NeumaierSum::new();
    let mut m = 1.0f64;
    while m < 1e9 {
        sum.add(term);
        // ratios increase toward 16z, terms fall at least like m^{−3.5}
        let tail = term * (limit_ratio / (1.0 - limit_ratio)).min(m / 2.5);
        if tail <= 1e-15 * sum.value() {
            break;
        }
        let ratio =
            z * 2.0 * (16.0 * m * m - 1.0) / (m * (2.0 * m + 1.0)) * libm::pow(m / (m + 1.0), 3.0);
        term *= ratio;
        m += 1.0;
    }
    Ok(sum.value())
}

/// `I_m = 2^{−2m−1} ∫_{−∞}^{∞} dy (y² + α² + ½)^{−2m}`, evaluated by residues as
/// `π 2^{1−6m} Γ(4m−1)/Γ(2m)² (α² + ½)^{½−2m}`.
pub fn residue_integral(m: u32, alpha_sq: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("I_m requires m ≥ 1"));
    }
    let a = alpha_sq + 0.5;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!(
            "I_m requires α² + 1/2 > 0, got α² = {alpha_sq}"
        )));
    }
    let m = m as f64;
    let log_value =
        libm::log(PI) + (1.0 - 6.0 * m) * core::f64::consts::LN_2 + libm::lgamma(4.0 * m - 1.0)
            - 2.0 * libm::lgamma(2.0 * m)
            + (0.5 - 2.0 * m) * libm::log(a);
    Ok(libm::exp(log_value))
}
