//! Slow independent reference paths shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod 7/15 by recursive bisection.
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> f64 {
    let (whole, _) = gk15(&mut f, a, b);
    let mut stack = vec![(a, b, 0u32)];
    let mut total = 0.0;
    let mut compensation = 0.0;
    while let Some((lo, hi, depth)) = stack.pop() {
        let (value, err) = gk15(&mut f, lo, hi);
        if err <= rel_tol * whole.abs().max(1e-300) * ((hi - lo) / (b - a)).max(1e-3) || depth > 50
        {
            let y = value - compensation;
            let t = total + y;
            compensation = (t - total) - y;
            total = t;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    total
}

/// `∫_a^∞ f` through `x = a + t/(1 − t)`.
pub fn integrate_to_infinity(mut f: impl FnMut(f64) -> f64, a: f64, rel_tol: f64) -> f64 {
    integrate(
        |t| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = 1.0 - t;
            f(a + t / s) / (s * s)
        },
        0.0,
        1.0,
        rel_tol,
    )
}

pub const FRACTION_BITS: u32 = 320;

/// Exact fixed-point image of a finite f64.
pub fn to_fixed(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::from(0);
    }
    let bits = x.abs().to_bits();
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let (mantissa, e) = if exponent == 0 {
        (bits & ((1 << 52) - 1), -1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), exponent - 1075)
    };
    let shift = e + FRACTION_BITS as i64;
    assert!(shift >= 0, "argument too small for the fixed-point scale");
    let v = BigInt::from(mantissa) << shift as usize;
    if x < 0.0 {
        -v
    } else {
        v
    }
}

pub fn from_fixed(v: &BigInt) -> f64 {
    let top = v >> (FRACTION_BITS as usize - 100);
    let m = i128::try_from(&top).expect("fixed-point value out of range");
    m as f64 * 2f64.powi(-100)
}

pub fn fixed_mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> FRACTION_BITS as usize
}

/// `Σ_{m≥1} x^m / m^s`, summed until the terms drop below `2^−200`.
pub fn polylog_series(s: u32, x: f64) -> f64 {
    let x = to_fixed(x);
    let floor = BigInt::from(1) << (FRACTION_BITS as usize - 200);
    let mut power = x.clone();
    let mut sum = BigInt::from(0);
    let mut m = 1u64;
    loop {
        let term = &power / BigInt::from(m).pow(s);
        if term.magnitude() < floor.magnitude() {
            break;
        }
        sum += term;
        power = fixed_mul(&power, &x);
        m += 1;
    }
    from_fixed(&sum)
}

/// `½ Σ_{m≥1} C(4m−2, 2m−1) z^m / m³`, carrying `C(4m−2, 2m−1) z^m` in
/// fixed point through the exact integer ratio of consecutive binomials.
pub fn tilde_li2_series(z: f64) -> f64 {
    let z = to_fixed(z);
    let floor = BigInt::from(1) << (FRACTION_BITS as usize - 200);
    let mut scaled: BigInt = z.clone() * 2; // C(2, 1) z
    let mut sum = BigInt::from(0);
    let mut m = 1u64;
    loop {
        let term = &scaled / BigInt::from(m).pow(3);
        if term.magnitude() < floor.magnitude() {
            break;
        }
        sum += term;
        // C(4m+2, 2m+1)/C(4m−2, 2m−1) = (4m+2)(4m+1)(4m)(4m−1) / ((2m+1)(2m))²
        let n = BigInt::from(m);
        let num = (4 * &n + 2) * (4 * &n + 1) * (4 * &n) * (4 * &n - 1);
        let den = (2 * &n + 1) * (2 * &n) * (2 * &n + 1) * (2 * &n);
        scaled = fixed_mul(&(scaled * num / den), &z);
        m += 1;
    }
    from_fixed(&sum) / 2.0
}
