use casimir_core::asymptotics::*;
use casimir_core::force::*;
use casimir_core::quadrature::*;
use casimir_core::*;

const SI: DrudeLorentzParams = DrudeLorentzParams::SI_LIKE;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn mixed() -> Stack {
    Stack::new(
        vec![
            Layer::half_space(Permittivity::Vacuum),
            Layer::slab(1e-7, SI),
            Layer::vacuum(1e-6),
            Layer::half_space(SI),
        ],
        2,
    )
    .unwrap()
}

/// Pressures on a log grid starting at `start`, quarter decades apart.
fn curve(s: &Stack, start: f64, points: usize) -> Vec<(f64, f64)> {
    let engine = ForceEngine::zero_temperature(QuadratureSettings::default()).unwrap();
    let grid: Vec<f64> = (0..points)
        .map(|i| start * 10f64.powf(0.25 * i as f64))
        .collect();
    force_vs_distance(s, &grid, &engine)
        .unwrap()
        .into_iter()
        .map(|(d, r)| (d, r.unwrap().pressure))
        .collect()
}

#[test]
fn long_distance_exponents() {
    let cases = [
        (
            Stack::symmetric_half_spaces(SI, 1e-6).unwrap(),
            DistanceLaw::Standard,
            0.1,
        ),
        (
            Stack::symmetric_slabs(SI, 1e-7, 1e-6).unwrap(),
            DistanceLaw::Slab,
            0.15,
        ),
        (mixed(), DistanceLaw::Mixed, 0.15),
    ];
    for (s, law, tol) in cases {
        assert_eq!(classify_distance_law(&s), law);
        let start = DEFAULT_MARGIN * validity_scales(&s).unwrap().max();
        let c = curve(&s, start, 9);
        for i in 1..8 {
            let e = local_exponent(&c, i).unwrap();
            assert!(
                (e + law.exponent() as f64).abs() <= tol,
                "{law:?} at {:e}: {e}",
                c[i].0
            );
        }
    }
}

#[test]
fn standard_law_matches_full_integral() {
    let s = Stack::symmetric_half_spaces(SI, 1e-6).unwrap();
    let law = long_distance_standard(&s, &QuadratureSettings::default()).unwrap();
    let start = DEFAULT_MARGIN * validity_scales(&s).unwrap().max();
    let c = curve(&s, start, 9);
    let (d, p) = *c.last().unwrap();
    assert!(rel(law.pressure(d).unwrap(), p) < 0.05);
    for (d, _) in c {
        assert!(law.pressure(d).unwrap() <= casimir_ideal(d).unwrap());
    }
}

#[test]
fn li4_average_agrees_with_termwise_sum() {
    let s = Stack::symmetric_half_spaces(SI, 1e-6).unwrap();
    let settings = QuadratureSettings::default();
    let ladder = kappa_ladder(&s).unwrap();
    for sigma in Polarization::BOTH {
        let direct = li4_average(&s, sigma, &ladder, &settings).unwrap();
        let termwise = li4_average_termwise(&s, sigma, LI4_TERMS, &ladder, &settings).unwrap();
        assert!((direct.value - termwise.value).abs() <= termwise.error + direct.error + 1e-12);
    }
}

#[test]
fn static_averages_are_stable_under_ladder_refinement() {
    let settings = QuadratureSettings::default();
    for s in [Stack::symmetric_half_spaces(SI, 1e-6).unwrap(), mixed()] {
        let ladder = kappa_ladder(&s).unwrap();
        let finer: Vec<f64> = ladder.iter().map(|k| 0.5 * k).collect();
        for sigma in Polarization::BOTH {
            let a = static_average(&s, sigma, 1, &ladder, &settings).unwrap();
            let b = static_average(&s, sigma, 1, &finer, &settings).unwrap();
            // the mixed stack averages to zero; the products are bounded by one
            assert!(
                (a.value - b.value).abs() <= 1e-6 * a.value.abs() + 1e-12,
                "{a:?} {b:?}"
            );
        }
    }
}

#[test]
fn slab_law_in_the_sixth_power_regime() {
    let s = Stack::symmetric_slabs(SI, 1e-7, 1e-6).unwrap();
    let law = long_distance_slab(&s, &QuadratureSettings::default()).unwrap();
    let start = 300.0 * validity_scales(&s).unwrap().max();
    let c = curve(&s, start, 5);
    for (d, p) in c {
        assert!(rel(law.pressure(d).unwrap(), p) < 0.10, "d = {d:e}");
    }
}

#[test]
fn thin_slab_coefficients_scale_with_thickness_squared() {
    let settings = QuadratureSettings::default();
    let thin = Stack::symmetric_slabs(SI, 1e-8, 1e-6).unwrap();
    let thick = Stack::symmetric_slabs(SI, 2e-8, 1e-6).unwrap();
    // same ladder so only the thickness changes
    let ladder = kappa_ladder(&thick).unwrap();
    let a = slab_coefficients(&thin, &ladder, &settings).unwrap();
    let b = slab_coefficients(&thick, &ladder, &settings).unwrap();
    for i in 0..2 {
        assert!(rel(b.r_bar[i].value, 4.0 * a.r_bar[i].value) < 1e-6);
    }
}

#[test]
fn short_distance_laws() {
    let settings = QuadratureSettings::default();
    let d = 5e-9;
    let s = Stack::symmetric_half_spaces(SI, d).unwrap();
    let full = force_zero_temperature(&s, &settings).unwrap().pressure;
    let numeric = short_distance_numeric(&s, &settings)
        .unwrap()
        .pressure(d)
        .unwrap();
    let closed = short_distance_closed_form(&SI, d).unwrap();
    assert!(rel(numeric, full) < 0.10);
    // the bound is relative to the closed-form value
    assert!((closed - numeric).abs() / closed <= short_distance_error_bound(&SI).unwrap());

    let lossless = SI.with_gamma0(0.0).unwrap();
    let s0 = Stack::symmetric_half_spaces(lossless, d).unwrap();
    let numeric0 = short_distance_numeric(&s0, &settings)
        .unwrap()
        .pressure(d)
        .unwrap();
    assert!(rel(short_distance_closed_form(&lossless, d).unwrap(), numeric0) < 1e-6);
}

#[test]
fn standard_law_for_tabulated_walls() {
    let table = PermittivityTable::new(&[
        (1e12, 3.8),
        (1e14, 3.6),
        (1e15, 2.9),
        (1e16, 1.4),
        (1e17, 1.01),
    ])
    .unwrap();
    let s = Stack::symmetric_half_spaces(Permittivity::Tabulated(table), 1e-7).unwrap();
    let law = long_distance_standard(&s, &QuadratureSettings::default()).unwrap();
    // beyond the first node the table is static and the law becomes exact
    let d = DEFAULT_MARGIN * casimir_core::constants::SPEED_OF_LIGHT / 1e12;
    let full = force_zero_temperature(
        &s.with_gap_width(d).unwrap(),
        &QuadratureSettings::default(),
    )
    .unwrap();
    assert!(rel(law.pressure(d).unwrap(), full.pressure) < 0.05);
}
