use std::f64::consts::PI;

use slabqed::oracle::{convergence_study, default_ladder, free_space_self_test, Oracle, QuadratureSpec};
use slabqed::rates::total_ratio;
use slabqed::{DipoleOrientation, PlateConfiguration};

#[test]
fn free_space_normalization_two_ways() {
    let report = free_space_self_test(&QuadratureSpec::default()).unwrap();
    println!(
        "continuum {:.9e}, wide slab {:.9e}, relative difference {:.3e}",
        report.continuum, report.wide_slab, report.relative_difference
    );
    assert!(report.relative_difference < 5e-3);
}

#[test]
fn halving_the_width_barely_moves_the_ratio() {
    let base = QuadratureSpec::default();
    let points = [
        (PlateConfiguration::CC, 5.0, 1.25, DipoleOrientation::Perpendicular),
        (PlateConfiguration::PP, 10.0, 2.5, DipoleOrientation::Parallel),
        (PlateConfiguration::CP, 20.0, 18.0, DipoleOrientation::Isotropic),
    ];
    let wide = Oracle::new(base.with_delta_width(1e-4)).unwrap();
    let narrow = Oracle::new(base.with_delta_width(5e-5)).unwrap();
    for (config, l, s, orientation) in points {
        let a = wide.ratio(config, l, s, orientation).unwrap();
        let b = narrow.ratio(config, l, s, orientation).unwrap();
        assert!((a - b).abs() / b < 2e-3, "{config} {l} {s}: {a} vs {b}");
    }
}

#[test]
fn ladder_settles_on_the_closed_form() {
    let (config, l, s, orientation) = (PlateConfiguration::PP, 20.0, 10.0, DipoleOrientation::Isotropic);
    let rows = convergence_study(config, l, s, orientation, &default_ladder()).unwrap();
    let closed = total_ratio(config, l, s, orientation).unwrap().iso_ratio;
    let last = rows.last().unwrap().ratio;
    let prev = rows[rows.len() - 2].ratio;
    assert!((last - prev).abs() / last < 1e-3);
    assert!((last - closed).abs() / closed < 1e-3);
    // The widest Lorentzian is visibly off; the ladder must close the gap.
    let first_err = (rows[0].ratio - closed).abs();
    assert!((last - closed).abs() < first_err);
}

#[test]
fn cc_uniform_tm_mode_carries_the_perpendicular_floor() {
    // Below pi only the n = 0 TM mode of CC propagates: 3 pi / (2 l).
    let oracle = Oracle::new(QuadratureSpec::default()).unwrap();
    let l = 2.0;
    let r = oracle.ratio(PlateConfiguration::CC, l, 0.7, DipoleOrientation::Perpendicular).unwrap();
    assert!((r / (1.5 * PI / l) - 1.0).abs() < 1e-3, "{r}");
    let par = oracle.ratio(PlateConfiguration::CC, l, 0.7, DipoleOrientation::Parallel).unwrap();
    assert!(par < 1e-3, "{par}");
}
