use std::path::{Path, PathBuf};

use gvpairs::golden::Golden;
use gvpairs::mukai::K3Lattice;
use gvpairs::pairs::{Geometry, Orientation, ReportInsertions};
use serde::Deserialize;

use crate::Format;

pub const DEFAULT_TRUNC: i64 = 32;
pub const DEFAULT_D_MIN: u64 = 1;
pub const DEFAULT_D_MAX: u64 = 7;

/// Flat JSON config file. Every field is optional; command-line flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub trunc: Option<i64>,
    pub d_min: Option<u64>,
    pub d_max: Option<u64>,
    pub geometry: Option<String>,
    pub format: Option<String>,
    pub orientation: Option<String>,
    pub golden: Option<PathBuf>,
    pub insertions: Option<ReportInsertions>,
    pub lattice: Option<K3Lattice>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

#[derive(Debug)]
pub struct RunConfig {
    pub trunc: i64,
    pub d_min: u64,
    pub d_max: u64,
    /// `None` means every geometry that has a report.
    pub geometry: Option<Geometry>,
    pub format: Format,
    pub orientation: Orientation,
    pub golden: Golden,
    pub insertions: ReportInsertions,
    pub lattice: K3Lattice,
}

/// Values given on the command line, before merging with the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub trunc: Option<i64>,
    pub d_min: Option<u64>,
    pub d_max: Option<u64>,
    pub geometry: Option<String>,
    pub format: Option<Format>,
    pub orientation: Option<String>,
    pub golden: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        _ => Err(format!("format must be json or csv, got {s:?}")),
    }
}

impl RunConfig {
    pub fn resolve(flags: Overrides, file: Option<ConfigFile>) -> Result<Self, String> {
        let file = file.unwrap_or_default();
        let trunc = flags.trunc.or(file.trunc).unwrap_or(DEFAULT_TRUNC);
        let d_min = flags.d_min.or(file.d_min).unwrap_or(DEFAULT_D_MIN);
        let d_max = flags.d_max.or(file.d_max).unwrap_or(DEFAULT_D_MAX);
        let geometry = flags
            .geometry
            .or(file.geometry)
            .filter(|g| g != "all")
            .map(|g| g.parse::<Geometry>().map_err(|e| e.to_string()))
            .transpose()?;
        let format = match flags.format {
            Some(f) => f,
            None => file.format.as_deref().map(parse_format).transpose()?.unwrap_or(Format::Json),
        };
        let orientation = flags
            .orientation
            .or(file.orientation)
            .map(|o| o.parse::<Orientation>().map_err(|e| e.to_string()))
            .transpose()?
            .unwrap_or_default();
        let golden = match flags.golden.or(file.golden) {
            Some(p) => Golden::load(&p).map_err(|e| e.to_string())?,
            None => Golden::builtin(),
        };
        let lattice = file.lattice.unwrap_or_default();
        lattice.validate().map_err(|e| e.to_string())?;
        let cfg = RunConfig {
            trunc,
            d_min,
            d_max,
            geometry,
            format,
            orientation,
            golden,
            insertions: file.insertions.unwrap_or_default(),
            lattice,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.d_min < 1 || self.d_min > self.d_max {
            return Err(format!("need 1 <= d-min <= d-max, got {}..={}", self.d_min, self.d_max));
        }
        if self.trunc < self.d_max as i64 + 2 {
            return Err(format!("trunc {} too small for d-max {} (need trunc >= d-max + 2)", self.trunc, self.d_max));
        }
        self.insertions.gamma1.validate().map_err(|e| e.to_string())?;
        self.insertions.gamma2.validate().map_err(|e| e.to_string())?;
        Ok(())
    }
}
