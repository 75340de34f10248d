//! Sweeps, figure tables and CSV serialization behind the `slabqed` binary.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::error::Error;
use crate::rates::total_ratio;
use crate::types::{DipoleOrientation, PlateConfiguration, RateRatios};

pub const CSV_HEADER: &str = "config,orientation,l,s,perp_ratio,par_ratio,iso_ratio";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;
pub const EXIT_NON_CONVERGENCE: i32 = 4;

pub const DEFAULT_GRID: usize = 1000;
/// Default `l` range of the separation sweeps in figures 3 and 4.
pub const DEFAULT_L_RANGE: (f64, f64) = (0.01, 10.0);

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    CheckFailed(String),
    NonConvergence(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io(_) => EXIT_USAGE,
            Self::CheckFailed(_) => EXIT_CHECK_FAILED,
            Self::NonConvergence(_) => EXIT_NON_CONVERGENCE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(msg) | Self::CheckFailed(msg) | Self::NonConvergence(msg) => f.write_str(msg),
            Self::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } => Self::NonConvergence(e.to_string()),
            other => Self::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

/// One output line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub config: PlateConfiguration,
    pub orientation: DipoleOrientation,
    pub l: f64,
    pub s: f64,
    pub ratios: RateRatios,
}

impl CsvRow {
    pub fn compute(config: PlateConfiguration, orientation: DipoleOrientation, l: f64, s: f64) -> Result<Self, Error> {
        Ok(Self {
            config,
            orientation,
            l,
            s,
            ratios: total_ratio(config, l, s, orientation)?,
        })
    }
}

impl fmt::Display for CsvRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{},{}",
            self.config,
            self.orientation,
            format_real(self.l),
            format_real(self.s),
            format_real(self.ratios.perp_ratio),
            format_real(self.ratios.par_ratio),
            format_real(self.ratios.iso_ratio),
        )
    }
}

/// Formats with 12 significant digits in the style of C's `%.12g`:
/// positional notation for decimal exponents in `[-4, 12)`, scientific
/// otherwise, trailing zeros removed.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };

    if (-4..12).contains(&exp) {
        let body = if exp >= 0 {
            let split = exp as usize + 1;
            format!("{}.{}", &digits[..split], &digits[split..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        let body = body.trim_end_matches('0').trim_end_matches('.');
        format!("{sign}{body}")
    } else {
        let frac = digits[1..].trim_end_matches('0');
        let mant = if frac.is_empty() {
            digits[..1].to_string()
        } else {
            format!("{}.{}", &digits[..1], frac)
        };
        let esign = if exp < 0 { '-' } else { '+' };
        format!("{sign}{mant}e{esign}{:02}", exp.abs())
    }
}

/// `count` uniformly spaced points from `start` to `stop`, both included.
pub fn uniform_grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    let step = (stop - start) / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
        .collect()
}

fn check_range(start: f64, stop: f64, count: usize) -> Result<(), CliError> {
    if count < 2 {
        return Err(CliError::Usage(format!("grid needs at least 2 points, got {count}")));
    }
    if !(start.is_finite() && stop.is_finite() && start < stop) {
        return Err(CliError::Usage(format!("sweep range must satisfy start < stop, got {start}..{stop}")));
    }
    Ok(())
}

/// Fixed separation `l`, atom position swept over `[start, stop]`.
pub fn sweep_s(
    config: PlateConfiguration,
    orientation: DipoleOrientation,
    l: f64,
    start: f64,
    stop: f64,
    count: usize,
) -> Result<Vec<CsvRow>, CliError> {
    check_range(start, stop, count)?;
    if start < 0.0 {
        return Err(CliError::Usage(format!("s sweep must start at s >= 0, got {start}")));
    }
    if stop > l {
        return Err(CliError::Usage(format!("s exceeds l (s = {stop}, l = {l})")));
    }
    uniform_grid(start, stop, count)
        .into_iter()
        .map(|s| CsvRow::compute(config, orientation, l, s).map_err(CliError::from))
        .collect()
}

/// Separation swept over `[start, stop]` with the atom on the midplane.
pub fn sweep_l(
    config: PlateConfiguration,
    orientation: DipoleOrientation,
    start: f64,
    stop: f64,
    count: usize,
) -> Result<Vec<CsvRow>, CliError> {
    check_range(start, stop, count)?;
    if start <= 0.0 {
        return Err(CliError::Usage(format!("l sweep must start at l > 0, got {start}")));
    }
    uniform_grid(start, stop, count)
        .into_iter()
        .map(|l| CsvRow::compute(config, orientation, l, 0.5 * l).map_err(CliError::from))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// CC and CP, position sweep.
    Fig1,
    /// CC and PP, position sweep.
    Fig2,
    /// CC parallel and PP perpendicular, separation sweep at the midplane.
    Fig3,
    /// CP perpendicular, separation sweep at the midplane.
    Fig4,
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig1" => Ok(Self::Fig1),
            "fig2" => Ok(Self::Fig2),
            "fig3" => Ok(Self::Fig3),
            "fig4" => Ok(Self::Fig4),
            other => Err(format!("unknown figure '{other}' (expected fig1, fig2, fig3 or fig4)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOptions {
    /// Separation for the position sweeps of figures 1 and 2. Required there.
    pub l: Option<f64>,
    pub grid: usize,
    /// Orientation for figures 1 and 2.
    pub orientation: DipoleOrientation,
    /// Separation range for figures 3 and 4.
    pub l_range: (f64, f64),
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            l: None,
            grid: DEFAULT_GRID,
            orientation: DipoleOrientation::Isotropic,
            l_range: DEFAULT_L_RANGE,
        }
    }
}

pub fn figure_rows(figure: Figure, opts: &FigureOptions) -> Result<Vec<CsvRow>, CliError> {
    use DipoleOrientation::*;
    use PlateConfiguration as P;

    let position_sweep = |configs: [PlateConfiguration; 2]| -> Result<Vec<CsvRow>, CliError> {
        let l = opts.l.ok_or_else(|| {
            CliError::Usage("fig1 and fig2 need --l: the plate separation of these curves is a free parameter".into())
        })?;
        if !(l.is_finite() && l > 0.0) {
            return Err(CliError::Usage(format!("plate separation must be positive, got l = {l}")));
        }
        let mut rows = Vec::with_capacity(2 * opts.grid);
        for config in configs {
            rows.extend(sweep_s(config, opts.orientation, l, 0.0, l, opts.grid)?);
        }
        Ok(rows)
    };
    let (start, stop) = opts.l_range;

    match figure {
        Figure::Fig1 => position_sweep([P::CC, P::CP]),
        Figure::Fig2 => position_sweep([P::CC, P::PP]),
        Figure::Fig3 => {
            let mut rows = sweep_l(P::CC, Parallel, start, stop, opts.grid)?;
            rows.extend(sweep_l(P::PP, Perpendicular, start, stop, opts.grid)?);
            Ok(rows)
        }
        Figure::Fig4 => sweep_l(P::CP, Perpendicular, start, stop, opts.grid),
    }
}

pub fn write_csv<W: Write>(mut out: W, rows: &[CsvRow]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{row}")?;
    }
    out.flush()
}

/// Parses CSV text written by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(CSV_HEADER) => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 7 {
                return Err(format!("line {}: expected 7 fields, got {}", i + 2, fields.len()));
            }
            let real = |j: usize| {
                fields[j]
                    .parse::<f64>()
                    .map_err(|e| format!("line {}: field {}: {e}", i + 2, j + 1))
            };
            Ok(CsvRow {
                config: fields[0].parse()?,
                orientation: fields[1].parse()?,
                l: real(2)?,
                s: real(3)?,
                ratios: RateRatios {
                    perp_ratio: real(4)?,
                    par_ratio: real(5)?,
                    iso_ratio: real(6)?,
                },
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(format_real(0.0), "0");
        assert_eq!(format_real(1.125), "1.125");
        assert_eq!(format_real(1.5), "1.5");
        assert_eq!(format_real(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_real(-2.0), "-2");
        assert_eq!(format_real(1000.0), "1000");
        assert_eq!(format_real(1e-7), "1e-07");
        assert_eq!(format_real(1.25e-5), "1.25e-05");
        assert_eq!(format_real(0.000123), "0.000123");
        assert_eq!(format_real(123456789012345.0), "1.23456789012e+14");
        assert_eq!(format_real(9.9999999999999), "10");
    }

    #[test]
    fn formatted_values_keep_twelve_digits() {
        for x in [0.1, 1.0 / 3.0, 2.0f64.sqrt() * 1e3, 7.77e-3, 123.456] {
            let back: f64 = format_real(x).parse().unwrap();
            assert!((back - x).abs() <= 5e-12 * x.abs(), "{x} -> {back}");
        }
    }

    #[test]
    fn grid_includes_endpoints() {
        let g = uniform_grid(0.01, 10.0, 1000);
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[999], 10.0);
    }

    #[test]
    fn sweeps_validate_ranges() {
        let c = PlateConfiguration::CP;
        let o = DipoleOrientation::Isotropic;
        assert!(sweep_s(c, o, 5.0, 0.0, 6.0, 10).is_err());
        assert!(sweep_s(c, o, 5.0, 2.0, 1.0, 10).is_err());
        assert!(sweep_s(c, o, 5.0, 0.0, 5.0, 1).is_err());
        assert!(sweep_l(c, o, 0.0, 5.0, 10).is_err());
        assert_eq!(sweep_l(c, o, 1.0, 5.0, 10).unwrap().len(), 10);
    }

    #[test]
    fn figures_need_separation_for_position_sweeps() {
        let err = figure_rows(Figure::Fig1, &FigureOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        let opts = FigureOptions {
            l: Some(10.0),
            grid: 11,
            ..FigureOptions::default()
        };
        let rows = figure_rows(Figure::Fig2, &opts).unwrap();
        assert_eq!(rows.len(), 22);
        assert_eq!(rows[0].config, PlateConfiguration::CC);
        assert_eq!(rows[11].config, PlateConfiguration::PP);
    }

    #[test]
    fn csv_round_trip() {
        let opts = FigureOptions {
            grid: 50,
            ..FigureOptions::default()
        };
        let rows = figure_rows(Figure::Fig3, &opts).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert!(!text.contains('\r'));
        let parsed = parse_csv(&text).unwrap();
        assert_eq!(parsed.len(), rows.len());
        for (a, b) in parsed.iter().zip(&rows) {
            assert_eq!((a.config, a.orientation), (b.config, b.orientation));
            assert!((a.ratios.iso_ratio - b.ratios.iso_ratio).abs() <= 1e-11 * b.ratios.iso_ratio.abs().max(1.0));
        }
    }
}
