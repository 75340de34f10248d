//! Vacuum mode functions of the vector potential between two ideal plates.
//!
//! Profiles are "reduced": the `sqrt(2 / V)` normalization prefactor is
//! dropped, so TE and TM profiles both have unit-order amplitude. The mode
//! dependence on the transverse coordinates is `exp(i k_par . r_par)`, and the
//! transverse direction entering both polarizations is the unit vector
//! `k_par / |k_par|` (taken as `x` when `k_par = 0`).
//!
//! | setup | `k_z(n)`       | TE transverse part | TM `A_z` part |
//! |-------|----------------|--------------------|---------------|
//! | CC    | `n pi / L`     | `sin(k_z z)`       | `cos(k_z z)`  |
//! | CP    | `(n + 1/2) pi / L` | `sin(k_z z)`   | `cos(k_z z)`  |
//! | PP    | `n pi / L`     | `cos(k_z z)`       | `sin(k_z z)`  |
//!
//! The TM transverse part follows from the Coulomb gauge `div A = 0`.
//! A permeable plate below a conducting one is the CP profile reflected
//! through the midplane, with `A_z` changing sign.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::types::{Family, Material, PlateConfiguration};

/// Complex vector amplitude `(A_x, A_y, A_z)` of a reduced mode profile.
pub type ModeProfile = [C64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    /// `A` purely transverse to the plate normal.
    TE,
    /// `A` has a component along the plate normal.
    TM,
}

impl Polarization {
    pub const BOTH: [Self; 2] = [Self::TE, Self::TM];

    pub fn label(&self) -> &'static str {
        match self {
            Self::TE => "TE",
            Self::TM => "TM",
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Quantum numbers of one slab mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeIndex {
    /// Transverse wavevector `(k_x, k_y)`, in inverse units of the slab length.
    pub k_par: [f64; 2],
    /// Longitudinal index.
    pub n: u32,
    pub pol: Polarization,
}

impl ModeIndex {
    pub fn new(k_par: [f64; 2], n: u32, pol: Polarization) -> Self {
        Self { k_par, n, pol }
    }

    pub fn k_par_norm(&self) -> f64 {
        self.k_par[0].hypot(self.k_par[1])
    }

    fn k_par_hat(&self) -> [f64; 2] {
        let kp = self.k_par_norm();
        if kp > 0.0 {
            [self.k_par[0] / kp, self.k_par[1] / kp]
        } else {
            [1.0, 0.0]
        }
    }
}

/// A plate configuration together with a physical separation `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slab {
    config: PlateConfiguration,
    separation: f64,
}

impl Slab {
    pub fn new(config: PlateConfiguration, separation: f64) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(Error::InvalidSeparation(separation));
        }
        Ok(Self { config, separation })
    }

    pub fn config(&self) -> PlateConfiguration {
        self.config
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn longitudinal_wavenumber(&self, n: u32) -> f64 {
        longitudinal_wavenumber(self.config, self.separation, n)
    }

    /// Total wavenumber `sqrt(|k_par|^2 + k_z^2)` of a mode.
    pub fn wavenumber(&self, mode: &ModeIndex) -> f64 {
        mode.k_par_norm().hypot(self.longitudinal_wavenumber(mode.n))
    }

    fn check_mode(&self, mode: &ModeIndex) -> Result<()> {
        if normalization_weight(self.config, mode.n, mode.pol).is_none() {
            return Err(Error::NullMode {
                config: self.config.label(),
                n: mode.n,
                pol: mode.pol.label(),
            });
        }
        if !(mode.k_par[0].is_finite() && mode.k_par[1].is_finite()) {
            return Err(Error::InvalidQuadrature("non-finite transverse wavevector".into()));
        }
        if self.wavenumber(mode) == 0.0 {
            return Err(Error::ZeroFrequency);
        }
        Ok(())
    }

    fn check_position(&self, z: f64) -> Result<()> {
        if !(z.is_finite() && z >= 0.0) {
            return Err(Error::InvalidPosition(z));
        }
        if z > self.separation {
            return Err(Error::PositionOutsideSlab {
                s: z,
                l: self.separation,
            });
        }
        Ok(())
    }

    /// Profile value and its analytic `z` derivative at `position`.
    fn evaluate(&self, mode: &ModeIndex, position: [f64; 3]) -> (ModeProfile, ModeProfile) {
        let [x, y, z] = position;
        let phase = C64::from_polar(1.0, mode.k_par[0] * x + mode.k_par[1] * y);
        let (value, dz) = if self.config.is_reflected() {
            let (v, d) = self.canonical_parts(mode, self.separation - z);
            // z -> L - z flips both the z component and the z derivative.
            ([v[0], v[1], -v[2]], [-d[0], -d[1], d[2]])
        } else {
            self.canonical_parts(mode, z)
        };
        (value.map(|c| c * phase), dz.map(|c| c * phase))
    }

    fn canonical_parts(&self, mode: &ModeIndex, z: f64) -> (ModeProfile, ModeProfile) {
        let kz = self.longitudinal_wavenumber(mode.n);
        let kp = mode.k_par_norm();
        let [hx, hy] = mode.k_par_hat();
        let (sin, cos) = (kz * z).sin_cos();
        let zero = C64::new(0.0, 0.0);
        let family = self.config.family();
        match mode.pol {
            Polarization::TE => {
                // (k_hat x z_hat) f(z)
                let (f, df) = match family {
                    Family::PermeablePermeable => (cos, -kz * sin),
                    _ => (sin, kz * cos),
                };
                (
                    [C64::new(hy * f, 0.0), C64::new(-hx * f, 0.0), zero],
                    [C64::new(hy * df, 0.0), C64::new(-hx * df, 0.0), zero],
                )
            }
            Polarization::TM => {
                let k = kp.hypot(kz);
                let (a, b) = (kp / k, kz / k);
                // z part a g(z), transverse part i c b h(z) k_hat
                let (g, dg, h, dh, c) = match family {
                    Family::PermeablePermeable => (sin, kz * cos, cos, -kz * sin, 1.0),
                    _ => (cos, -kz * sin, sin, kz * cos, -1.0),
                };
                let t = C64::new(0.0, c * b * h);
                let dt = C64::new(0.0, c * b * dh);
                (
                    [t * hx, t * hy, C64::new(a * g, 0.0)],
                    [dt * hx, dt * hy, C64::new(a * dg, 0.0)],
                )
            }
        }
    }
}

pub fn longitudinal_wavenumber(config: PlateConfiguration, separation: f64, n: u32) -> f64 {
    let n = f64::from(n);
    match config.family() {
        Family::ConductorPermeable => (n + 0.5) * PI / separation,
        _ => n * PI / separation,
    }
}

/// Weight of a mode in a sum over normalized modes, relative to the
/// `sqrt(2 / V)` normalization. Uniform-in-`z` modes normalize with
/// `sqrt(1 / V)` and get one half; modes that vanish identically get `None`.
pub fn normalization_weight(config: PlateConfiguration, n: u32, pol: Polarization) -> Option<f64> {
    match (config.family(), pol, n) {
        (Family::ConductorConductor, Polarization::TE, 0) => None,
        (Family::ConductorConductor, Polarization::TM, 0) => Some(0.5),
        (Family::PermeablePermeable, Polarization::TM, 0) => None,
        (Family::PermeablePermeable, Polarization::TE, 0) => Some(0.5),
        _ => Some(1.0),
    }
}

/// Reduced profile of `mode` at `position = (x, y, z)`, `0 <= z <= L`.
pub fn mode_profile(slab: &Slab, mode: &ModeIndex, position: [f64; 3]) -> Result<ModeProfile> {
    slab.check_mode(mode)?;
    slab.check_position(position[2])?;
    Ok(slab.evaluate(mode, position).0)
}

/// Largest absolute boundary-condition violation of `mode` over both plates.
///
/// A conducting plate requires `A_x = A_y = dA_z/dz = 0`, a permeable one
/// `dA_x/dz = dA_y/dz = A_z = 0`. Derivatives are analytic and divided by the
/// mode wavenumber, so the residual is relative to the unit amplitude scale.
pub fn boundary_residual(slab: &Slab, mode: &ModeIndex) -> Result<f64> {
    slab.check_mode(mode)?;
    let k = slab.wavenumber(mode);
    let config = slab.config();
    let plates = [(0.0, config.lower), (slab.separation(), config.upper)];
    let mut worst = 0.0f64;
    for (z, material) in plates {
        let (value, dz) = slab.evaluate(mode, [0.0, 0.0, z]);
        let conditions = match material {
            Material::Conductor => [value[0].norm(), value[1].norm(), dz[2].norm() / k],
            Material::Permeable => [dz[0].norm() / k, dz[1].norm() / k, value[2].norm()],
        };
        worst = conditions.into_iter().fold(worst, f64::max);
    }
    Ok(worst)
}

/// `|div A|` by central differences of step `h`, taken along the mode's own
/// frame `(k_hat, z_hat x k_hat, z_hat)`.
///
/// The position must satisfy `h < z < L - h`.
pub fn divergence_residual(slab: &Slab, mode: &ModeIndex, position: [f64; 3], h: f64) -> Result<f64> {
    slab.check_mode(mode)?;
    let z = position[2];
    if !(h > 0.0 && z - h > 0.0 && z + h < slab.separation()) {
        return Err(Error::InvalidPosition(z));
    }
    let [hx, hy] = mode.k_par_hat();
    let axes = [[hx, hy, 0.0], [-hy, hx, 0.0], [0.0, 0.0, 1.0]];
    let mut div = C64::new(0.0, 0.0);
    for e in axes {
        let shifted = |sign: f64| {
            let p = [
                position[0] + sign * h * e[0],
                position[1] + sign * h * e[1],
                position[2] + sign * h * e[2],
            ];
            let a = slab.evaluate(mode, p).0;
            a[0] * e[0] + a[1] * e[1] + a[2] * e[2]
        };
        div += (shifted(1.0) - shifted(-1.0)) / (2.0 * h);
    }
    Ok(div.norm())
}

/// Largest longitudinal index that can be resonant with the transition,
/// or `-1` when no mode propagates.
///
/// CP: `floor(l / pi - 1/2)`; CC and PP: `floor(l / pi)`. A mode exactly at
/// its onset (zero transverse wavenumber) is counted.
pub fn max_mode_index(config: PlateConfiguration, l: f64) -> i64 {
    let x = match config.family() {
        Family::ConductorPermeable => l / PI - 0.5,
        _ => l / PI,
    };
    (x.floor() as i64).max(-1)
}

/// Distance in `l` to the nearest separation at which a new longitudinal
/// mode starts to propagate (`n >= 1` for CC and PP, `n >= 0` for CP).
pub fn distance_to_onset(config: PlateConfiguration, l: f64) -> f64 {
    match config.family() {
        Family::ConductorPermeable => {
            let n = (l / PI - 0.5).round().max(0.0);
            (l - (n + 0.5) * PI).abs()
        }
        _ => {
            let n = (l / PI).round().max(1.0);
            (l - n * PI).abs()
        }
    }
}
