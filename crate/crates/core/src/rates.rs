//! Closed-form emission-rate ratios as finite sums over resonant modes.
//!
//! With `l = k0 L`, `s = k0 z` and `x_n = k_z(n) / k0`, every ratio has the
//! form
//!
//! ```text
//! A_perp / A0_perp = (3 pi / l)  sum_n w_n (1 - x_n^2) Z_n(s)^2
//! A_par  / A0_par  = (3 pi / 2l) sum_n w_n (1 + x_n^2) T_n(s)^2
//! ```
//!
//! where `Z_n` and `T_n` are the longitudinal profiles of the normal and
//! tangential field components, and `w_n` is one half for a uniform-in-`z`
//! mode and one otherwise. The sum runs over `x_n <= 1`.
//!
//! | setup | `x_n l / pi` | `Z_n`   | `T_n`   | uniform mode     |
//! |-------|--------------|---------|---------|------------------|
//! | CP    | `n + 1/2`    | cos     | sin     | none             |
//! | PP    | `n`          | sin     | cos     | TE, adds to par  |
//! | CC    | `n`          | cos     | sin     | TM, adds to perp |

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::modes::max_mode_index;
use crate::types::{canonicalize, DipoleOrientation, Family, Geometry, PlateConfiguration, RateRatios, Transition};

/// Reduced Planck constant in erg s.
pub const HBAR_CGS: f64 = 1.054_571_817e-27;
/// Speed of light in cm / s.
pub const C_CGS: f64 = 2.997_924_58e10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Component {
    Perp,
    Par,
}

/// `None` for `s` selects the slab average of the squared profile.
fn component_ratio(family: Family, component: Component, l: f64, s: Option<f64>) -> f64 {
    let n_max = max_mode_index(PlateConfiguration::from(family), l);
    let half_shift = if family == Family::ConductorPermeable { 0.5 } else { 0.0 };
    // Z_n is cos for CP and CC, sin for PP; T_n is the other one.
    let normal_is_cos = family != Family::PermeablePermeable;
    let use_cos = match component {
        Component::Perp => normal_is_cos,
        Component::Par => !normal_is_cos,
    };
    let first = match family {
        Family::ConductorPermeable => 0,
        _ => 1,
    };

    let mut sum = match (family, component) {
        (Family::ConductorConductor, Component::Perp) | (Family::PermeablePermeable, Component::Par) => 0.5,
        _ => 0.0,
    };
    for n in first..=n_max {
        let q = n as f64 + half_shift;
        let x = q * PI / l;
        let factor = match component {
            Component::Perp => (1.0 - x * x).max(0.0),
            Component::Par => 1.0 + x * x,
        };
        let shape = match s {
            Some(s) => {
                let (sin, cos) = (q * PI * s / l).sin_cos();
                if use_cos {
                    cos * cos
                } else {
                    sin * sin
                }
            }
            None => 0.5,
        };
        sum += factor * shape;
    }
    let prefactor = match component {
        Component::Perp => 3.0 * PI / l,
        Component::Par => 1.5 * PI / l,
    };
    prefactor * sum
}

fn canonical(config: PlateConfiguration, l: f64, s: f64) -> Result<(Family, Geometry)> {
    let (config, geom) = canonicalize(config, Geometry::new(l, s)?);
    Ok((config.family(), geom))
}

/// `A_perp / A0_perp` for a dipole along the plate normal.
pub fn perp_ratio(config: PlateConfiguration, l: f64, s: f64) -> Result<f64> {
    let (family, geom) = canonical(config, l, s)?;
    Ok(component_ratio(family, Component::Perp, geom.l(), Some(geom.s())))
}

/// `A_par / A0_par` for a dipole parallel to the plates.
pub fn par_ratio(config: PlateConfiguration, l: f64, s: f64) -> Result<f64> {
    let (family, geom) = canonical(config, l, s)?;
    Ok(component_ratio(family, Component::Par, geom.l(), Some(geom.s())))
}

pub fn total_ratio(config: PlateConfiguration, l: f64, s: f64, orientation: DipoleOrientation) -> Result<RateRatios> {
    let (family, geom) = canonical(config, l, s)?;
    let (w_perp, w_par) = orientation.weights();
    let perp = if w_perp > 0.0 {
        component_ratio(family, Component::Perp, geom.l(), Some(geom.s()))
    } else {
        0.0
    };
    let par = if w_par > 0.0 {
        component_ratio(family, Component::Par, geom.l(), Some(geom.s()))
    } else {
        0.0
    };
    Ok(RateRatios::for_orientation(perp, par, orientation))
}

/// Ratio averaged over atom positions across the gap, `(1/l) int_0^l ratio ds`.
pub fn slab_average(config: PlateConfiguration, l: f64, orientation: DipoleOrientation) -> Result<f64> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidSeparation(l));
    }
    let family = config.family();
    let (w_perp, w_par) = orientation.weights();
    let mut avg = 0.0;
    if w_perp > 0.0 {
        avg += w_perp * component_ratio(family, Component::Perp, l, None);
    }
    if w_par > 0.0 {
        avg += w_par * component_ratio(family, Component::Par, l, None);
    }
    Ok(avg)
}

/// Free-space emission rates in 1/s, split by dipole component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeSpaceRates {
    pub par: f64,
    pub perp: f64,
    pub total: f64,
}

/// Einstein coefficient `4 |d|^2 omega0^3 / (3 hbar c^3)` in Gaussian units.
pub fn free_space_rate(t: &Transition) -> FreeSpaceRates {
    free_space_rate_with(t, HBAR_CGS, C_CGS)
}

/// [`free_space_rate`] with explicit values of `hbar` and `c`.
pub fn free_space_rate_with(t: &Transition, hbar: f64, c: f64) -> FreeSpaceRates {
    let scale = 4.0 * t.omega0().powi(3) / (3.0 * hbar * c.powi(3));
    let par = scale * t.d_par_sq();
    let perp = scale * t.d_perp_sq();
    FreeSpaceRates {
        par,
        perp,
        total: par + perp,
    }
}

/// Separation below which one dipole component cannot radiate at all.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuppressionReport {
    pub config: PlateConfiguration,
    pub orientation: DipoleOrientation,
    /// Analytic threshold in `l`, `None` when the rate never vanishes.
    pub threshold_l: Option<f64>,
    /// Onset of a nonzero rate located by scanning and bisecting the ratio at
    /// the midplane, `None` when the ratio is already positive at the start of
    /// the scan.
    pub numeric_l: Option<f64>,
    /// Whether the ratio is exactly zero across a grid of positions for
    /// separations just below the numeric threshold. Always true without a
    /// window.
    pub zero_for_all_s: bool,
}

impl SuppressionReport {
    pub fn has_window(&self) -> bool {
        self.threshold_l.is_some()
    }
}

const SCAN_START: f64 = 1e-3;
const SCAN_STEP: f64 = 1e-2;
const SCAN_STOP: f64 = 4.0 * PI;
const BISECTION_TOL: f64 = 1e-12;

fn analytic_threshold(family: Family, component: Component) -> Option<f64> {
    match (family, component) {
        // The lowest CP mode has k_z = pi / 2L, so nothing propagates below it.
        (Family::ConductorPermeable, _) => Some(0.5 * PI),
        (Family::PermeablePermeable, Component::Perp) => Some(PI),
        (Family::ConductorConductor, Component::Par) => Some(PI),
        _ => None,
    }
}

/// Smallest `l` at which `ratio(l, l/2)` becomes positive, or `None` when it
/// is positive from the first scan point.
fn scan_onset(f: impl Fn(f64) -> f64) -> Option<f64> {
    if f(SCAN_START) > 0.0 {
        return None;
    }
    let mut lo = SCAN_START;
    let mut hi = lo;
    while hi < SCAN_STOP {
        hi = (hi + SCAN_STEP).min(SCAN_STOP);
        if f(hi) > 0.0 {
            break;
        }
        lo = hi;
    }
    if f(hi) <= 0.0 {
        return None;
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Analytic suppression threshold, confirmed by a numeric scan of the ratio.
///
/// Thresholds: CP (either component) `pi/2`, PP perpendicular `pi`, CC
/// parallel `pi`. PP parallel and CC perpendicular keep a uniform mode and
/// never vanish.
pub fn suppression_threshold(config: PlateConfiguration, orientation: DipoleOrientation) -> Result<SuppressionReport> {
    let component = match orientation {
        DipoleOrientation::Perpendicular => Component::Perp,
        DipoleOrientation::Parallel => Component::Par,
        DipoleOrientation::Isotropic => return Err(Error::UnsupportedOrientation("iso")),
    };
    let family = config.family();
    let at_midplane = |l: f64| component_ratio(family, component, l, Some(0.5 * l));
    let numeric_l = scan_onset(at_midplane);

    let zero_for_all_s = match numeric_l {
        Some(edge) => {
            let below = [0.1, 0.5, 0.9, 0.999].map(|f| f * edge);
            below.into_iter().chain([edge - 1e-6]).all(|l| {
                (0..=100).all(|i| component_ratio(family, component, l, Some(l * i as f64 / 100.0)) == 0.0)
            })
        }
        None => true,
    };

    Ok(SuppressionReport {
        config,
        orientation,
        threshold_l: analytic_threshold(family, component),
        numeric_l,
        zero_for_all_s,
    })
}
