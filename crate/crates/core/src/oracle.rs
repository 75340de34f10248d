//! Brute-force golden-rule evaluation of the emission rate.
//!
//! The rate is proportional to `sum_modes (1/omega) |A_mode(r) . d|^2
//! delta(omega - omega0)`. Here the sum is carried out literally: every
//! longitudinal index with `k_z <= k_max`, both polarizations, and a
//! radial x angular grid over the transverse wavevector plane, with the
//! profiles taken from [`crate::modes`] and the delta function replaced by a
//! normalized Lorentzian of half-width `eta`. The same broadened sum is done
//! for free space over a continuum of `k_z`, and the ratio of the two is
//! returned, so the quantization volume, `hbar` and the overall prefactor
//! drop out.
//!
//! Units: `k0 = omega0 = c = 1`. Transverse mode density is `Area / (2 pi)^2`
//! and slab modes carry `|A|^2 = (2 / V) |profile|^2`, which leaves a factor
//! `2 / l` per mode relative to free-space plane waves.
//!
//! The radial coordinate is integrated in `omega` (where `k_par dk_par =
//! omega domega`) with Gauss-Legendre panels graded geometrically towards
//! the Lorentzian peak, so widths down to `1e-6` are resolved on a fixed
//! node budget. The angular grid is uniform and exact for the trigonometric
//! dependence of `|A . d|^2` on the azimuth.
//!
//! Nothing here depends on the closed-form rates.

use std::f64::consts::PI;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};
use crate::modes::{mode_profile, normalization_weight, ModeIndex, Polarization, Slab};
use crate::types::{DipoleOrientation, Geometry, PlateConfiguration};

const GAUSS_ORDER: usize = 16;
/// Relative change on grid doubling above which a result is rejected.
pub const CONVERGENCE_TOL: f64 = 5e-3;
/// Ratios below this are compared on an absolute scale.
pub const RATIO_FLOOR: f64 = 0.05;

/// Discretization of the mode sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Cutoff on `|k_par|` and on `k_z`, in units of `k0`.
    pub k_max: f64,
    /// Radial nodes per longitudinal index.
    pub radial: usize,
    /// Azimuthal nodes.
    pub angular: usize,
    /// Lorentzian half-width as a fraction of `omega0`.
    pub delta_width: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            k_max: 2.0,
            radial: 512,
            angular: 64,
            delta_width: 1e-5,
        }
    }
}

impl QuadratureSpec {
    pub const MIN_RADIAL: usize = 512;
    pub const MIN_ANGULAR: usize = 64;
    pub const MAX_DELTA_WIDTH: f64 = 0.05;

    pub fn new(k_max: f64, radial: usize, angular: usize, delta_width: f64) -> Result<Self> {
        let spec = Self {
            k_max,
            radial,
            angular,
            delta_width,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k_max.is_finite() && self.k_max >= 2.0) {
            return Err(Error::InvalidQuadrature(format!("k_max must be >= 2, got {}", self.k_max)));
        }
        if self.radial < Self::MIN_RADIAL || self.angular < Self::MIN_ANGULAR {
            return Err(Error::InvalidQuadrature(format!(
                "grid must be at least {}x{}, got {}x{}",
                Self::MIN_RADIAL,
                Self::MIN_ANGULAR,
                self.radial,
                self.angular
            )));
        }
        if !(self.delta_width > 0.0 && self.delta_width <= Self::MAX_DELTA_WIDTH) {
            return Err(Error::InvalidQuadrature(format!(
                "delta width must lie in (0, {}], got {}",
                Self::MAX_DELTA_WIDTH,
                self.delta_width
            )));
        }
        Ok(())
    }

    pub fn with_delta_width(self, delta_width: f64) -> Self {
        Self { delta_width, ..self }
    }

    pub fn with_radial(self, radial: usize) -> Self {
        Self { radial, ..self }
    }

    /// Same spec with twice the radial nodes.
    pub fn refined(self) -> Self {
        self.with_radial(2 * self.radial)
    }

    fn panels(&self) -> usize {
        self.radial.div_ceil(GAUSS_ORDER).max(2)
    }
}

/// Refinement ladder ending at the default spec.
pub fn default_ladder() -> Vec<QuadratureSpec> {
    let base = QuadratureSpec::default();
    vec![
        base.with_delta_width(1e-3),
        base.with_delta_width(1e-4),
        base.with_delta_width(1e-5),
        base.with_delta_width(1e-5).refined(),
    ]
}

fn lorentzian(omega: f64, eta: f64) -> f64 {
    let x = omega - 1.0;
    eta / (PI * (x * x + eta * eta))
}

/// Composite Gauss-Legendre nodes on `[a, b]` with panel widths growing
/// geometrically away from `focus` (clamped into the interval), starting at
/// `scale`.
fn graded_nodes(a: f64, b: f64, focus: f64, scale: f64, panels: usize, rule: &GaussLegendre) -> Vec<(f64, f64)> {
    let focus = focus.clamp(a, b);
    let (left, right) = (focus - a, b - focus);
    let (m_left, m_right) = match (left > 0.0, right > 0.0) {
        (true, true) => (panels / 2, panels - panels / 2),
        (true, false) => (panels, 0),
        _ => (0, panels),
    };
    let side = |length: f64, m: usize| -> Vec<f64> {
        if m == 0 {
            return Vec::new();
        }
        if m == 1 {
            return vec![length];
        }
        let s0 = scale.min(length);
        let growth = (length / s0).powf(1.0 / (m - 1) as f64);
        (0..m).map(|j| if j + 1 == m { length } else { s0 * growth.powi(j as i32) }).collect()
    };
    let mut breaks: Vec<f64> = side(left, m_left).into_iter().rev().map(|d| focus - d).collect();
    breaks.push(focus);
    breaks.extend(side(right, m_right).into_iter().map(|d| focus + d));

    let mut nodes = Vec::with_capacity((breaks.len() - 1) * GAUSS_ORDER);
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        nodes.extend(rule.iter().map(|&(x, wt)| (mid + half * x, half * wt)));
    }
    nodes
}

/// Per-axis sums `(S_x, S_y, S_z)` of `|A_i|^2`-weighted broadened mode sums.
type AxisSums = [f64; 3];

fn orientation_ratio(slab: AxisSums, free: AxisSums, orientation: DipoleOrientation) -> f64 {
    let weights = match orientation {
        DipoleOrientation::Perpendicular => [0.0, 0.0, 1.0],
        DipoleOrientation::Parallel => [1.0, 0.0, 0.0],
        DipoleOrientation::Isotropic => [1.0 / 3.0; 3],
    };
    let num: f64 = weights.iter().zip(slab).map(|(w, s)| w * s).sum();
    let den: f64 = weights.iter().zip(free).map(|(w, f)| w * f).sum();
    num / den
}

struct Grid {
    spec: QuadratureSpec,
    rule: GaussLegendre,
    azimuths: Vec<(f64, f64)>,
}

impl Grid {
    fn new(spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        let rule = GaussLegendre::new(GAUSS_ORDER).map_err(|e| Error::InvalidQuadrature(e.to_string()))?;
        let m = spec.angular;
        let dphi = 2.0 * PI / m as f64;
        let azimuths = (0..m).map(|j| (dphi * (j as f64 + 0.5)).sin_cos()).collect();
        Ok(Self { spec, rule, azimuths })
    }

    fn radial_nodes(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        graded_nodes(a, b, 1.0, self.spec.delta_width, self.spec.panels(), &self.rule)
    }

    fn dphi(&self) -> f64 {
        2.0 * PI / self.spec.angular as f64
    }

    /// Broadened slab sum at `(0, 0, s)` for separation `l`.
    fn slab_sums(&self, config: PlateConfiguration, l: f64, s: f64) -> Result<AxisSums> {
        let slab = Slab::new(config, l)?;
        let k_max = self.spec.k_max;
        let eta = self.spec.delta_width;
        let position = [0.0, 0.0, s];
        let mut total = [0.0; 3];
        for n in 0u32.. {
            let kz = slab.longitudinal_wavenumber(n);
            if kz > k_max {
                break;
            }
            let top = k_max.hypot(kz);
            let nodes = self.radial_nodes(kz, top);
            for pol in Polarization::BOTH {
                let Some(weight) = normalization_weight(config, n, pol) else {
                    continue;
                };
                let mut per_mode = [0.0; 3];
                for &(omega, w) in &nodes {
                    let kp = (omega * omega - kz * kz).max(0.0).sqrt();
                    let mut ring = [0.0; 3];
                    for &(sin, cos) in &self.azimuths {
                        let mode = ModeIndex::new([kp * cos, kp * sin], n, pol);
                        let a = mode_profile(&slab, &mode, position)?;
                        for i in 0..3 {
                            ring[i] += a[i].norm_sqr();
                        }
                    }
                    // k_par dk_par / omega = domega
                    let factor = w * lorentzian(omega, eta);
                    for i in 0..3 {
                        per_mode[i] += factor * ring[i];
                    }
                }
                for i in 0..3 {
                    total[i] += weight * per_mode[i];
                }
            }
        }
        let scale = (2.0 / l) * self.dphi() / (4.0 * PI * PI);
        Ok(total.map(|t| t * scale))
    }

    /// Broadened free-space sum over plane waves in the cylinder
    /// `|k_z| <= k_max`, `|k_par| <= k_max`.
    fn free_sums(&self) -> AxisSums {
        let k_max = self.spec.k_max;
        let eta = self.spec.delta_width;
        let outer = graded_nodes(0.0, k_max, 1.0, eta, self.spec.panels(), &self.rule);
        let mut total = [0.0; 3];
        for &(kz, wz) in &outer {
            let top = k_max.hypot(kz);
            let inner = graded_nodes(kz, top, 1.0, eta, self.spec.panels(), &self.rule);
            let mut slice = [0.0; 3];
            for &(omega, w) in &inner {
                let kp = (omega * omega - kz * kz).max(0.0).sqrt();
                let (a, b) = (kp / omega, kz / omega);
                let mut ring = [0.0; 3];
                for &(sin, cos) in &self.azimuths {
                    // TE: k_hat x z_hat; TM: a z_hat - b k_hat
                    let te = [sin, -cos, 0.0];
                    let tm = [-b * cos, -b * sin, a];
                    for i in 0..3 {
                        ring[i] += te[i] * te[i] + tm[i] * tm[i];
                    }
                }
                let factor = w * lorentzian(omega, eta);
                for i in 0..3 {
                    slice[i] += factor * ring[i];
                }
            }
            for i in 0..3 {
                total[i] += wz * slice[i];
            }
        }
        // Both signs of k_z.
        let scale = 2.0 * self.dphi() / (8.0 * PI * PI * PI);
        total.map(|t| t * scale)
    }
}

/// Golden-rule evaluator for one quadrature spec, holding the free-space
/// normalization for the spec and for its refined twin.
pub struct Oracle {
    grid: Grid,
    fine: Grid,
    free: AxisSums,
    free_fine: AxisSums,
}

impl Oracle {
    pub fn new(spec: QuadratureSpec) -> Result<Self> {
        let grid = Grid::new(spec)?;
        let fine = Grid::new(spec.refined())?;
        let free = grid.free_sums();
        let free_fine = fine.free_sums();
        Ok(Self {
            grid,
            fine,
            free,
            free_fine,
        })
    }

    pub fn spec(&self) -> QuadratureSpec {
        self.grid.spec
    }

    /// Ratio on this spec's grid without the convergence check.
    pub fn raw_ratio(&self, config: PlateConfiguration, l: f64, s: f64, orientation: DipoleOrientation) -> Result<f64> {
        let geom = Geometry::new(l, s)?;
        let sums = self.grid.slab_sums(config, geom.l(), geom.s())?;
        Ok(orientation_ratio(sums, self.free, orientation))
    }

    /// Ratio on this spec's grid, rejected with [`Error::NonConvergence`]
    /// when doubling the radial grid moves it by more than 0.5%.
    pub fn ratio(&self, config: PlateConfiguration, l: f64, s: f64, orientation: DipoleOrientation) -> Result<f64> {
        let coarse = self.raw_ratio(config, l, s, orientation)?;
        let sums = self.fine.slab_sums(config, l, s)?;
        let fine = orientation_ratio(sums, self.free_fine, orientation);
        let change = (fine - coarse).abs() / fine.abs().max(RATIO_FLOOR);
        if change > CONVERGENCE_TOL {
            return Err(Error::NonConvergence { coarse, fine, change });
        }
        Ok(coarse)
    }

    /// Free-space normalization per Cartesian dipole axis.
    pub fn free_space_sums(&self) -> [f64; 3] {
        self.free
    }
}

/// One-shot brute-force ratio. Builds the free-space normalization each
/// call; reuse an [`Oracle`] for many points.
pub fn bruteforce_ratio(
    config: PlateConfiguration,
    l: f64,
    s: f64,
    orientation: DipoleOrientation,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Oracle::new(*spec)?.ratio(config, l, s, orientation)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub spec: QuadratureSpec,
    pub ratio: f64,
}

/// Ratios along a refinement ladder of at least three specs.
pub fn convergence_study(
    config: PlateConfiguration,
    l: f64,
    s: f64,
    orientation: DipoleOrientation,
    ladder: &[QuadratureSpec],
) -> Result<Vec<ConvergenceRow>> {
    if ladder.len() < 3 {
        return Err(Error::InvalidQuadrature(format!(
            "a convergence ladder needs at least 3 specs, got {}",
            ladder.len()
        )));
    }
    let geom = Geometry::new(l, s)?;
    ladder
        .iter()
        .map(|&spec| {
            let grid = Grid::new(spec)?;
            let sums = grid.slab_sums(config, geom.l(), geom.s())?;
            Ok(ConvergenceRow {
                spec,
                ratio: orientation_ratio(sums, grid.free_sums(), orientation),
            })
        })
        .collect()
}

/// Free-space normalization computed two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeSpaceSelfTest {
    /// Isotropic continuum sum.
    pub continuum: f64,
    /// Isotropic slab sum for a very wide gap, averaged over atom positions.
    pub wide_slab: f64,
    pub relative_difference: f64,
}

/// Separation used for the wide-slab side of [`free_space_self_test`].
pub const WIDE_SLAB_L: f64 = 1e4;

/// Compares the continuum free-space sum with the slab sum at `l = 10^4`,
/// averaged over two incommensurate atom positions, for CP plates.
pub fn free_space_self_test(spec: &QuadratureSpec) -> Result<FreeSpaceSelfTest> {
    let grid = Grid::new(*spec)?;
    let free = grid.free_sums();
    let continuum = free.iter().sum::<f64>() / 3.0;
    let positions = [0.5 * (5f64.sqrt() - 1.0), std::f64::consts::FRAC_1_SQRT_2 - 0.3];
    let mut wide_slab = 0.0;
    for frac in positions {
        let sums = grid.slab_sums(PlateConfiguration::CP, WIDE_SLAB_L, frac * WIDE_SLAB_L)?;
        wide_slab += sums.iter().sum::<f64>() / 3.0;
    }
    wide_slab /= positions.len() as f64;
    Ok(FreeSpaceSelfTest {
        continuum,
        wide_slab,
        relative_difference: (wide_slab - continuum).abs() / continuum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::default().validate().is_ok());
        assert!(QuadratureSpec::new(1.5, 512, 64, 1e-3).is_err());
        assert!(QuadratureSpec::new(2.0, 256, 64, 1e-3).is_err());
        assert!(QuadratureSpec::new(2.0, 512, 32, 1e-3).is_err());
        assert!(QuadratureSpec::new(2.0, 512, 64, 0.0).is_err());
        assert!(QuadratureSpec::new(2.0, 512, 64, 0.1).is_err());
        assert!(QuadratureSpec::new(2.0, 512, 64, 0.05).is_ok());
    }

    #[test]
    fn graded_nodes_integrate_a_narrow_lorentzian() {
        let rule = GaussLegendre::new(GAUSS_ORDER).unwrap();
        for eta in [1e-2, 1e-4, 1e-6] {
            let nodes = graded_nodes(0.0, 3.0, 1.0, eta, 32, &rule);
            assert_eq!(nodes.len(), 32 * GAUSS_ORDER);
            let got: f64 = nodes.iter().map(|&(x, w)| w * lorentzian(x, eta)).sum();
            let exact = ((3.0 - 1.0) / eta).atan() / PI + (1.0 / eta).atan() / PI;
            assert!((got - exact).abs() < 1e-10, "eta {eta}: {got} vs {exact}");
        }
    }

    #[test]
    fn graded_nodes_with_focus_outside() {
        let rule = GaussLegendre::new(GAUSS_ORDER).unwrap();
        let nodes = graded_nodes(1.5, 2.5, 1.0, 1e-5, 32, &rule);
        let got: f64 = nodes.iter().map(|&(x, w)| w * x * x).sum();
        let exact = (2.5f64.powi(3) - 1.5f64.powi(3)) / 3.0;
        assert!((got - exact).abs() < 1e-12);
    }

    #[test]
    fn free_space_sums_match_the_continuum_integral() {
        // Exact: (8 pi / 3) int omega L(omega - 1) domega / (2 pi)^3 -> 1/(3 pi^2)
        // per axis as eta -> 0, up to O(eta) tails.
        let grid = Grid::new(QuadratureSpec::default().with_delta_width(1e-6)).unwrap();
        let free = grid.free_sums();
        let expected = 1.0 / (3.0 * PI * PI);
        for v in free {
            assert!((v / expected - 1.0).abs() < 1e-4, "{v} vs {expected}");
        }
    }

    #[test]
    fn hand_values() {
        let oracle = Oracle::new(QuadratureSpec::default()).unwrap();
        let cp = oracle
            .ratio(PlateConfiguration::CP, PI, FRAC_PI_2, DipoleOrientation::Perpendicular)
            .unwrap();
        assert!((cp / 1.125 - 1.0).abs() < 1e-3, "{cp}");
        let pp = oracle
            .ratio(PlateConfiguration::PP, FRAC_PI_2, 0.3, DipoleOrientation::Parallel)
            .unwrap();
        assert!((pp / 1.5 - 1.0).abs() < 1e-3, "{pp}");
    }

    #[test]
    fn below_threshold_scales_with_width() {
        let base = QuadratureSpec::default();
        let wide = Oracle::new(base.with_delta_width(1e-3)).unwrap();
        let narrow = Oracle::new(base.with_delta_width(1e-5)).unwrap();
        let r_wide = wide
            .ratio(PlateConfiguration::CP, 1.0, 0.4, DipoleOrientation::Perpendicular)
            .unwrap();
        let r_narrow = narrow
            .ratio(PlateConfiguration::CP, 1.0, 0.4, DipoleOrientation::Perpendicular)
            .unwrap();
        assert!(r_wide > 0.0 && r_wide < 10.0 * 1e-3, "{r_wide}");
        assert!(r_narrow < 10.0 * 1e-5, "{r_narrow}");
        assert!(r_narrow < r_wide / 10.0);
    }

    #[test]
    fn repeated_evaluation_is_bit_identical() {
        let spec = QuadratureSpec::default();
        let a = bruteforce_ratio(PlateConfiguration::CC, 5.0, 1.25, DipoleOrientation::Isotropic, &spec).unwrap();
        let b = bruteforce_ratio(PlateConfiguration::CC, 5.0, 1.25, DipoleOrientation::Isotropic, &spec).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn pc_matches_reflected_cp() {
        let oracle = Oracle::new(QuadratureSpec::default()).unwrap();
        for orientation in [DipoleOrientation::Perpendicular, DipoleOrientation::Parallel] {
            let a = oracle.raw_ratio(PlateConfiguration::PC, 5.0, 1.0, orientation).unwrap();
            let b = oracle.raw_ratio(PlateConfiguration::CP, 5.0, 4.0, orientation).unwrap();
            assert!((a - b).abs() < 1e-12 * b.max(1.0));
        }
    }

    #[test]
    fn convergence_ladder() {
        let rows = convergence_study(
            PlateConfiguration::CP,
            5.0,
            2.0,
            DipoleOrientation::Parallel,
            &default_ladder(),
        )
        .unwrap();
        let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
        let n = ratios.len();
        assert!(rel(ratios[n - 2], ratios[n - 1]) < 1e-3, "{ratios:?}");
        // eta 1e-4 -> 1e-5 at the same grid
        assert!(rel(ratios[1], ratios[2]) < 2e-3, "{ratios:?}");
        // radial grid doubled at the same eta
        assert!(rel(ratios[2], ratios[3]) < 1e-3, "{ratios:?}");

        assert!(convergence_study(
            PlateConfiguration::CP,
            5.0,
            2.0,
            DipoleOrientation::Parallel,
            &default_ladder()[..2]
        )
        .is_err());
    }

    #[test]
    fn invalid_geometry_is_rejected() {
        let oracle = Oracle::new(QuadratureSpec::default()).unwrap();
        assert!(oracle.ratio(PlateConfiguration::CP, 1.0, 2.0, DipoleOrientation::Parallel).is_err());
        assert!(oracle.ratio(PlateConfiguration::CP, 0.0, 0.0, DipoleOrientation::Parallel).is_err());
    }
}
