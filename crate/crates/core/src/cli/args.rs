//! Command-line arguments and their translation into surfaces, points and grids.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::geodesic::EngineConfig;
use crate::ratio::{linear_grid, log_grid};
use crate::surface::{ChartPoint, Surface};

#[derive(Debug, Parser)]
#[command(name = "right-ratio", version, about = "Right ratios, curvature recovery and axiom probes on analytic surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Right ratios over an r grid, one CSV row per sample.
    #[command(allow_negative_numbers = true)]
    Ratio(RatioArgs),
    /// Inner and outer equator curves of the torus with tube radius 0.5 and centre radius 2.5.
    #[command(allow_negative_numbers = true)]
    Fig2(Fig2Args),
    /// Gaussian curvature recovered from the small-r right ratios.
    #[command(allow_negative_numbers = true)]
    Curvature(CurvatureArgs),
    /// Distance axioms, perpendicular feet and round intersections.
    #[command(allow_negative_numbers = true)]
    Axioms(AxiomsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    Plane,
    Sphere,
    Torus,
    Cone,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_enum)]
    pub surface: SurfaceArg,
    /// Sphere radius.
    #[arg(long = "R", default_value_t = 1.0)]
    pub sphere_radius: f64,
    /// Torus centre-circle radius.
    #[arg(long = "Rc", default_value_t = 2.5)]
    pub center_radius: f64,
    /// Torus tube radius.
    #[arg(long = "rt", default_value_t = 0.5)]
    pub tube_radius: f64,
    /// Cone half-angle in radians.
    #[arg(long, conflicts_with = "sector")]
    pub alpha: Option<f64>,
    /// Cone development angle in radians (2π·sin α).
    #[arg(long)]
    pub sector: Option<f64>,
}

impl SurfaceArgs {
    pub fn build(&self) -> Result<Surface, String> {
        let s = match self.surface {
            SurfaceArg::Plane => Ok(Surface::plane()),
            SurfaceArg::Sphere => Surface::sphere(self.sphere_radius),
            SurfaceArg::Torus => Surface::torus(self.center_radius, self.tube_radius),
            SurfaceArg::Cone => match (self.alpha, self.sector) {
                (Some(a), None) => Surface::cone(a),
                (None, Some(b)) => Surface::cone_from_sector(b),
                _ => return Err("cone needs --alpha or --sector".into()),
            },
        };
        s.map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointArg {
    Inner,
    Outer,
    Equator,
    Chart(f64, f64),
}

impl FromStr for PointArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inner" => Ok(PointArg::Inner),
            "outer" => Ok(PointArg::Outer),
            "equator" => Ok(PointArg::Equator),
            _ => {
                let (u, v) = s.split_once(',').ok_or_else(|| format!("expected a preset or u,v, got {s:?}"))?;
                let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
                Ok(PointArg::Chart(parse(u)?, parse(v)?))
            }
        }
    }
}

impl PointArg {
    fn name(&self) -> String {
        match self {
            PointArg::Inner => "inner".into(),
            PointArg::Outer => "outer".into(),
            PointArg::Equator => "equator".into(),
            PointArg::Chart(u, v) => format!("{u},{v}"),
        }
    }

    pub fn resolve(&self, surface: &Surface) -> Result<ChartPoint, String> {
        let p = match (*self, surface) {
            (PointArg::Chart(u, v), _) => ChartPoint::new(u, v),
            (PointArg::Inner, Surface::Torus { .. }) => ChartPoint::new(PI, 0.0),
            (PointArg::Outer, Surface::Torus { .. }) => ChartPoint::new(0.0, 0.0),
            (PointArg::Equator, Surface::Sphere { .. }) => ChartPoint::new(PI / 2.0, 0.0),
            (preset, s) => return Err(format!("point preset {} does not apply to the {}", preset.name(), s.kind())),
        };
        surface.check_regular(p).map_err(|e| e.to_string())?;
        Ok(surface.reduce(p))
    }
}

/// `min:max:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("expected min:max:count, got {s:?}"));
        };
        let f = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
        let g = GridSpec {
            min: f(min)?,
            max: f(max)?,
            count: count.trim().parse().map_err(|e| format!("{count:?}: {e}"))?,
        };
        if !(g.min > 0.0 && g.max.is_finite()) {
            return Err("grid minimum must be positive".into());
        }
        match g.count {
            0 => Err("grid count must be at least 1".into()),
            1 if g.min != g.max => Err("a single-sample grid needs min = max".into()),
            1 => Ok(g),
            _ if g.max <= g.min => Err("grid maximum must exceed the minimum".into()),
            _ => Ok(g),
        }
    }
}

#[derive(Debug, Clone, Args)]
#[group(multiple = false)]
pub struct GridArgs {
    /// Linear grid `min:max:count`.
    #[arg(long = "r")]
    pub linear: Option<GridSpec>,
    /// Log-spaced grid `min:max:count`.
    #[arg(long = "r-log")]
    pub log: Option<GridSpec>,
}

impl GridArgs {
    /// The requested grid, or `None` to use the surface default.
    pub fn build(&self) -> Option<Vec<f64>> {
        match (self.linear, self.log) {
            (Some(g), _) => Some(linear_grid(g.min, g.max, g.count)),
            (_, Some(g)) => Some(log_grid(g.min, g.max, g.count)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// Integration error tolerance per unit length.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest integration step.
    #[arg(long)]
    pub max_step: Option<f64>,
    /// Use closed-form distances on the plane, sphere and cone.
    #[arg(long)]
    pub closed_form: bool,
}

impl EngineArgs {
    pub fn build(&self) -> Result<EngineConfig, String> {
        let mut cfg = EngineConfig::default();
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err("--tol must be positive".into());
            }
            cfg.tolerance = t;
        }
        if let Some(h) = self.max_step {
            if !(h > 0.0) {
                return Err("--max-step must be positive".into());
            }
            cfg.max_step = h;
        }
        cfg.prefer_closed_form = self.closed_form;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct RatioArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// `inner`, `outer` (torus), `equator` (sphere) or `u,v`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: PointArg,
    /// Frame rotation angle in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    /// Repeat the curve at this many frame angles spread over a quarter turn.
    #[arg(long)]
    pub frame_sweep: Option<usize>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// CSV output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Optional SVG plot of ratio against r/scale.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Fig2Args {
    #[arg(long = "Rc", default_value_t = 2.5)]
    pub center_radius: f64,
    #[arg(long = "rt", default_value_t = 0.5)]
    pub tube_radius: f64,
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Accepted for uniformity with the other commands; the curves use no randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CurvatureArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub point: PointArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Append a CSV row here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AxiomsArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Write the report table here as well.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_grid() {
        let g: GridSpec = "0.1:2:10".parse().unwrap();
        assert_eq!(g, GridSpec { min: 0.1, max: 2.0, count: 10 });
        assert!("0.5:0.5:1".parse::<GridSpec>().is_ok());
        assert!("0:1:5".parse::<GridSpec>().is_err());
        assert!("1:0.5:5".parse::<GridSpec>().is_err());
        assert!("1:2".parse::<GridSpec>().is_err());
    }

    #[test]
    fn parse_point() {
        assert_eq!("inner".parse::<PointArg>().unwrap(), PointArg::Inner);
        assert_eq!("-1,2.5".parse::<PointArg>().unwrap(), PointArg::Chart(-1.0, 2.5));
        assert!("north".parse::<PointArg>().is_err());
        let sphere = Surface::sphere(1.0).unwrap();
        assert!(PointArg::Inner.resolve(&sphere).is_err());
        assert!(PointArg::Chart(0.0, 0.0).resolve(&sphere).is_err());
    }

    #[test]
    fn command_line() {
        let cli = Cli::try_parse_from(["right-ratio", "ratio", "--surface", "plane", "--point", "0,0", "--r", "0.1:2:10"]).unwrap();
        let Command::Ratio(a) = cli.command else { panic!() };
        assert_eq!(a.grid.build().unwrap().len(), 10);
        assert!(Cli::try_parse_from(["right-ratio", "ratio", "--surface", "plane", "--point", "0,0", "--r", "0.1:2:10", "--r-log", "0.1:2:10"]).is_err());
    }
}
