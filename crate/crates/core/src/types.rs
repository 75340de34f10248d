//! Domain types shared by the mode, rate and oracle modules.
//!
//! Everything downstream works in dimensionless units: the transition
//! wavenumber `k0 = omega0 / c` is set to one, so the plate separation is
//! `l = k0 L` and the atom sits at `s = k0 z`, measured from the lower plate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Ideal plate material.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Material {
    /// Perfect conductor, `eps -> inf`: tangential E and normal B vanish.
    Conductor,
    /// Infinitely permeable plate, `mu -> inf`: tangential B vanishes.
    Permeable,
}

/// The pair of plates, at `z = 0` (lower) and `z = L` (upper).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PlateConfiguration {
    pub lower: Material,
    pub upper: Material,
}

/// The three physically distinct setups. A permeable lower plate under a
/// conducting upper plate is the mirror image of [`Family::ConductorPermeable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    ConductorConductor,
    ConductorPermeable,
    PermeablePermeable,
}

impl PlateConfiguration {
    pub const CC: Self = Self::new(Material::Conductor, Material::Conductor);
    pub const CP: Self = Self::new(Material::Conductor, Material::Permeable);
    pub const PC: Self = Self::new(Material::Permeable, Material::Conductor);
    pub const PP: Self = Self::new(Material::Permeable, Material::Permeable);

    pub const fn new(lower: Material, upper: Material) -> Self {
        Self { lower, upper }
    }

    pub fn family(&self) -> Family {
        use Material::*;
        match (self.lower, self.upper) {
            (Conductor, Conductor) => Family::ConductorConductor,
            (Conductor, Permeable) | (Permeable, Conductor) => Family::ConductorPermeable,
            (Permeable, Permeable) => Family::PermeablePermeable,
        }
    }

    /// True for the orientation that needs a reflection to become canonical.
    pub fn is_reflected(&self) -> bool {
        *self == Self::PC
    }

    pub fn label(&self) -> &'static str {
        use Material::*;
        match (self.lower, self.upper) {
            (Conductor, Conductor) => "cc",
            (Conductor, Permeable) => "cp",
            (Permeable, Conductor) => "pc",
            (Permeable, Permeable) => "pp",
        }
    }
}

impl fmt::Display for PlateConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PlateConfiguration {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cc" => Ok(Self::CC),
            "cp" => Ok(Self::CP),
            "pc" => Ok(Self::PC),
            "pp" => Ok(Self::PP),
            other => Err(format!("unknown plate configuration '{other}' (expected cc, cp, pc or pp)")),
        }
    }
}

impl From<Family> for PlateConfiguration {
    fn from(family: Family) -> Self {
        match family {
            Family::ConductorConductor => Self::CC,
            Family::ConductorPermeable => Self::CP,
            Family::PermeablePermeable => Self::PP,
        }
    }
}

/// Dimensionless plate separation `l = k0 L` and atom position `s = k0 z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    l: f64,
    s: f64,
}

impl Geometry {
    pub fn new(l: f64, s: f64) -> Result<Self> {
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidSeparation(l));
        }
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::InvalidPosition(s));
        }
        if s > l {
            return Err(Error::PositionOutsideSlab { s, l });
        }
        Ok(Self { l, s })
    }

    /// Atom on the midplane, `s = l / 2`.
    pub fn midpoint(l: f64) -> Result<Self> {
        Self::new(l, 0.5 * l)
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Reflection `z -> L - z`.
    pub fn mirrored(&self) -> Self {
        Self {
            l: self.l,
            s: self.l - self.s,
        }
    }
}

/// Maps a configuration onto one of CC, CP or PP.
///
/// The permeable-below/conductor-above arrangement is reflected onto CP,
/// taking `s` to `l - s`. All other inputs come back unchanged, so the map is
/// idempotent.
pub fn canonicalize(config: PlateConfiguration, geom: Geometry) -> (PlateConfiguration, Geometry) {
    if config.is_reflected() {
        (PlateConfiguration::CP, geom.mirrored())
    } else {
        (config, geom)
    }
}

/// Gaussian-unit transition data: angular frequency in rad/s and squared
/// dipole components in statC^2 cm^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    omega0: f64,
    d_par_sq: f64,
    d_perp_sq: f64,
}

impl Transition {
    pub fn new(omega0: f64, d_par_sq: f64, d_perp_sq: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::InvalidTransition("omega0 must be positive and finite"));
        }
        if !(d_par_sq.is_finite() && d_par_sq >= 0.0) {
            return Err(Error::InvalidTransition("|d_par|^2 must be nonnegative and finite"));
        }
        if !(d_perp_sq.is_finite() && d_perp_sq >= 0.0) {
            return Err(Error::InvalidTransition("|d_perp|^2 must be nonnegative and finite"));
        }
        Ok(Self {
            omega0,
            d_par_sq,
            d_perp_sq,
        })
    }

    /// Splits `|d|^2` with the spherical-average weights 1/3 and 2/3.
    pub fn isotropic(omega0: f64, d_sq: f64) -> Result<Self> {
        Self::new(omega0, 2.0 * d_sq / 3.0, d_sq / 3.0)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn d_par_sq(&self) -> f64 {
        self.d_par_sq
    }

    pub fn d_perp_sq(&self) -> f64 {
        self.d_perp_sq
    }

    pub fn d_sq(&self) -> f64 {
        self.d_par_sq + self.d_perp_sq
    }
}

/// Orientation of the transition dipole relative to the plate normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DipoleOrientation {
    Perpendicular,
    Parallel,
    /// Spherical average over dipole directions.
    Isotropic,
}

impl DipoleOrientation {
    pub const ALL: [Self; 3] = [Self::Perpendicular, Self::Parallel, Self::Isotropic];

    /// `(perpendicular, parallel)` weights of the squared dipole moment.
    pub fn weights(&self) -> (f64, f64) {
        match self {
            Self::Perpendicular => (1.0, 0.0),
            Self::Parallel => (0.0, 1.0),
            Self::Isotropic => (1.0 / 3.0, 2.0 / 3.0),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Perpendicular => "perp",
            Self::Parallel => "par",
            Self::Isotropic => "iso",
        }
    }
}

impl fmt::Display for DipoleOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for DipoleOrientation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "perp" | "perpendicular" => Ok(Self::Perpendicular),
            "par" | "parallel" => Ok(Self::Parallel),
            "iso" | "isotropic" => Ok(Self::Isotropic),
            other => Err(format!("unknown orientation '{other}' (expected perp, par or iso)")),
        }
    }
}

/// Emission rates relative to free space.
///
/// `iso_ratio` is the total `A21 / A21^0` for the orientation the ratios were
/// computed for: `w_perp * perp_ratio + w_par * par_ratio` with the weights of
/// [`DipoleOrientation::weights`]. Components an orientation does not couple
/// to are reported as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRatios {
    pub perp_ratio: f64,
    pub par_ratio: f64,
    pub iso_ratio: f64,
}

impl RateRatios {
    pub fn for_orientation(perp: f64, par: f64, orientation: DipoleOrientation) -> Self {
        let (wp, wq) = orientation.weights();
        let perp_ratio = if wp > 0.0 { perp } else { 0.0 };
        let par_ratio = if wq > 0.0 { par } else { 0.0 };
        Self {
            perp_ratio,
            par_ratio,
            iso_ratio: wp * perp_ratio + wq * par_ratio,
        }
    }
}
