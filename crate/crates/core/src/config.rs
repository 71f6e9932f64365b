//! Run configuration files.
//!
//! A run file is TOML with optional top-level `out_dir` and `threads` keys and
//! one table per subcommand:
//!
//! ```toml
//! out_dir = "results"
//!
//! [vacuum]
//! omega = 1.0
//! a = 6.2831853
//! ```
//!
//! Command-line flags use the same names as the keys of the subcommand's
//! table. [`resolve_section`] overlays them on the file before deserializing,
//! so a flag and a file key can never disagree about meaning.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::bogoliubov::DeltaLadder;
use crate::error::{Error, Result};
use crate::feasibility::ScalingScenario;
use crate::modes::{FourierConfig, Sampling, Window};
use crate::quad::QuadConfig;

fn positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Config(format!("{name} must be positive and finite, got {x}")));
    }
    Ok(())
}

fn positive_grid(name: &str, xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::Config(format!("{name} must not be empty")));
    }
    xs.iter().try_for_each(|&x| positive(name, x))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadrantConfig {
    pub a: f64,
    /// Grid of events over [−extent, extent]² for the round-trip table.
    pub extent: f64,
    pub points: usize,
    /// A single event to classify, if both coordinates are given.
    pub t: Option<f64>,
    pub z: Option<f64>,
}

impl Default for QuadrantConfig {
    fn default() -> Self {
        QuadrantConfig { a: 1.0, extent: 10.0, points: 41, t: None, z: None }
    }
}

impl QuadrantConfig {
    pub fn validate(&self) -> Result<()> {
        positive("a", self.a)?;
        positive("extent", self.extent)?;
        if self.points < 2 {
            return Err(Error::Config("points must be at least 2".into()));
        }
        if self.t.is_some() != self.z.is_some() {
            return Err(Error::Config("t and z must be given together".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModesConfig {
    pub a: f64,
    pub omega_over_a: Vec<f64>,
    pub v_min: f64,
    pub v_max: f64,
    pub points: usize,
    /// Window scales, in units of 1/a, from coarse to fine.
    pub sigmas: Vec<f64>,
    pub window_order: u32,
    pub span: f64,
    /// Sampling cell width in units of 1/a.
    pub cell_width: f64,
}

impl Default for ModesConfig {
    fn default() -> Self {
        ModesConfig {
            a: 1.0,
            omega_over_a: vec![0.5, 1.0, 2.0],
            v_min: 1e-3,
            v_max: 10.0,
            points: 101,
            sigmas: vec![4.0, 8.0, 16.0, 32.0],
            window_order: 4,
            span: 8.0,
            cell_width: 0.05,
        }
    }
}

impl ModesConfig {
    pub fn validate(&self) -> Result<()> {
        positive("a", self.a)?;
        positive_grid("omega_over_a", &self.omega_over_a)?;
        positive("v_min", self.v_min)?;
        positive("v_max", self.v_max)?;
        if self.v_min >= self.v_max {
            return Err(Error::Config("v_min must be below v_max".into()));
        }
        if self.points < 2 {
            return Err(Error::Config("points must be at least 2".into()));
        }
        positive_grid("sigmas", &self.sigmas)?;
        positive("span", self.span)?;
        positive("cell_width", self.cell_width)?;
        for cfg in self.refinements() {
            cfg.cells()?;
        }
        Ok(())
    }

    pub fn refinements(&self) -> Vec<FourierConfig> {
        self.sigmas
            .iter()
            .map(|&s| FourierConfig {
                window: Window::Analytic { sigma: s / self.a, order: self.window_order },
                span: self.span,
                cell_width: self.cell_width / self.a,
                sampling: Sampling::CellAverage,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BogoliubovConfig {
    pub a: f64,
    pub omega_over_a: Vec<f64>,
    pub k: Vec<f64>,
    /// First regulator as a multiple of k.
    pub delta_first: f64,
    pub delta_ratio: f64,
    pub delta_levels: usize,
    pub quad: QuadConfig,
}

impl Default for BogoliubovConfig {
    fn default() -> Self {
        let ladder = DeltaLadder::default();
        BogoliubovConfig {
            a: 1.0,
            omega_over_a: vec![0.5, 1.0, 2.0],
            k: vec![0.5, 1.0, 2.0],
            delta_first: ladder.first,
            delta_ratio: ladder.ratio,
            delta_levels: ladder.levels,
            quad: QuadConfig::default(),
        }
    }
}

impl BogoliubovConfig {
    pub fn validate(&self) -> Result<()> {
        positive("a", self.a)?;
        positive_grid("omega_over_a", &self.omega_over_a)?;
        positive_grid("k", &self.k)?;
        positive("delta_first", self.delta_first)?;
        if !(self.delta_ratio > 1.0 && self.delta_ratio.is_finite()) {
            return Err(Error::Config("delta_ratio must exceed 1".into()));
        }
        if self.delta_levels < 3 {
            return Err(Error::Config("delta_levels must be at least 3".into()));
        }
        self.quad.validate()
    }

    pub fn ladder(&self) -> DeltaLadder {
        DeltaLadder { first: self.delta_first, ratio: self.delta_ratio, levels: self.delta_levels }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VacuumConfig {
    pub omega: f64,
    pub a: f64,
    /// Defaults to the smallest truncation with deficit below 1e−12.
    pub n_trunc: Option<usize>,
}

impl Default for VacuumConfig {
    fn default() -> Self {
        VacuumConfig { omega: 1.0, a: 1.0, n_trunc: None }
    }
}

impl VacuumConfig {
    pub fn validate(&self) -> Result<()> {
        positive("omega", self.omega)?;
        positive("a", self.a)?;
        if self.n_trunc == Some(0) {
            return Err(Error::Config("n_trunc must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorConfig {
    pub a: f64,
    pub energy_over_a: Vec<f64>,
    /// Regulator ladder in units of 1/a, decreasing geometrically.
    pub epsilons: Vec<f64>,
    /// Half-range of the Δ integral, in units of 1/a.
    pub delta_range: f64,
    /// Switching window and its regulator, in units of 1/a.
    pub window_start: f64,
    pub window_end: f64,
    pub window_epsilon: f64,
    pub identity_samples: usize,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        DetectorConfig {
            a: 1.0,
            energy_over_a: vec![-2.0, -1.0, -0.5, 0.5, 1.0, 2.0],
            epsilons: vec![1e-2, 1e-3, 1e-4],
            delta_range: 200.0,
            window_start: -5.0,
            window_end: 5.0,
            window_epsilon: 1e-3,
            identity_samples: 1000,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<()> {
        positive("a", self.a)?;
        if self.energy_over_a.is_empty() || self.energy_over_a.iter().any(|e| !e.is_finite()) {
            return Err(Error::Config("energy_over_a must be a non-empty list of finite values".into()));
        }
        crate::richardson::ladder_ratio(&self.epsilons)?;
        if self.epsilons[0] >= std::f64::consts::PI {
            return Err(Error::Config("epsilons must stay below π/a".into()));
        }
        positive("delta_range", self.delta_range)?;
        positive("window_epsilon", self.window_epsilon)?;
        if !(self.window_start.is_finite() && self.window_end.is_finite()) || self.window_start > self.window_end {
            return Err(Error::Config("window_start must not exceed window_end".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FeasibilityConfig {
    /// Target temperature in kelvin.
    pub temperature: f64,
    /// Path of a scenario file.
    pub scenario: Option<String>,
}

impl Default for FeasibilityConfig {
    fn default() -> Self {
        FeasibilityConfig { temperature: 1.0, scenario: None }
    }
}

impl FeasibilityConfig {
    pub fn validate(&self) -> Result<()> {
        positive("temperature", self.temperature)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub out_dir: Option<String>,
    pub threads: Option<usize>,
    pub quadrant: Option<QuadrantConfig>,
    pub modes: Option<ModesConfig>,
    pub bogoliubov: Option<BogoliubovConfig>,
    pub vacuum: Option<VacuumConfig>,
    pub detector: Option<DetectorConfig>,
    pub feasibility: Option<FeasibilityConfig>,
}

impl RunConfig {
    /// Parse and validate a whole run file.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if cfg.threads == Some(0) {
            return Err(Error::Config("threads must be positive".into()));
        }
        if let Some(c) = &cfg.quadrant {
            c.validate()?;
        }
        if let Some(c) = &cfg.modes {
            c.validate()?;
        }
        if let Some(c) = &cfg.bogoliubov {
            c.validate()?;
        }
        if let Some(c) = &cfg.vacuum {
            c.validate()?;
        }
        if let Some(c) = &cfg.detector {
            c.validate()?;
        }
        if let Some(c) = &cfg.feasibility {
            c.validate()?;
        }
        Ok(cfg)
    }
}

/// Parse run-file text into a TOML table without interpreting it.
pub fn parse_document(text: &str) -> Result<Table> {
    text.parse::<Table>().map_err(|e| Error::Parse(e.to_string()))
}

/// Deserialize the `section` table of `doc` after overlaying `overrides`.
pub fn resolve_section<T: DeserializeOwned>(doc: &Table, section: &str, overrides: Table) -> Result<T> {
    let mut table = match doc.get(section) {
        None => Table::new(),
        Some(Value::Table(t)) => t.clone(),
        Some(_) => return Err(Error::Config(format!("`{section}` must be a table"))),
    };
    for (key, value) in overrides {
        table.insert(key, value);
    }
    T::deserialize(Value::Table(table)).map_err(|e| Error::Config(format!("[{section}] {e}")))
}

/// A thermalization scenario file: TOML with keys `a`, `t1`, `t2`, `e_bar_1`.
pub fn parse_scenario(text: &str) -> Result<ScalingScenario> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        a: f64,
        t1: f64,
        t2: f64,
        e_bar_1: f64,
    }
    let raw: Raw = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let s = ScalingScenario { a: raw.a, t1: raw.t1, t2: raw.t2, e_bar_1: raw.e_bar_1 };
    s.validate().map_err(|e| Error::Config(e.to_string()))?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections_with_defaults() {
        let cfg = RunConfig::parse(
            r#"
            out_dir = "out"
            [vacuum]
            omega = 2.0
            [detector]
            energy_over_a = [1.0]
            "#,
        )
        .unwrap();
        assert_eq!(cfg.out_dir.as_deref(), Some("out"));
        let v = cfg.vacuum.unwrap();
        assert_eq!((v.omega, v.a, v.n_trunc), (2.0, 1.0, None));
        assert_eq!(cfg.detector.unwrap().epsilons, vec![1e-2, 1e-3, 1e-4]);
        assert!(cfg.modes.is_none());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(RunConfig::parse("[vacuum]\nomegaa = 1.0"), Err(Error::Parse(_))));
        assert!(matches!(RunConfig::parse("[vacuum]\nomega = -1.0"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::parse("threads = 0"), Err(Error::Config(_))));
        assert!(RunConfig::parse("[detector]\nepsilons = [1e-3, 1e-2, 1e-1]").is_err());
        assert!(RunConfig::parse("[bogoliubov]\ndelta_levels = 2").is_err());
        assert!(RunConfig::parse("[quadrant]\nt = 1.0").is_err());
        assert!(RunConfig::parse("not toml at all [").is_err());
    }

    #[test]
    fn overrides_replace_file_keys() {
        let doc = parse_document("[vacuum]\nomega = 2.0\na = 3.0").unwrap();
        let mut flags = Table::new();
        flags.insert("a".into(), Value::Float(6.5));
        flags.insert("n_trunc".into(), Value::Integer(12));
        let v: VacuumConfig = resolve_section(&doc, "vacuum", flags).unwrap();
        assert_eq!((v.omega, v.a, v.n_trunc), (2.0, 6.5, Some(12)));

        let empty: VacuumConfig = resolve_section(&Table::new(), "vacuum", Table::new()).unwrap();
        assert_eq!(empty, VacuumConfig::default());
        let bad = parse_document("vacuum = 3").unwrap();
        assert!(resolve_section::<VacuumConfig>(&bad, "vacuum", Table::new()).is_err());
    }

    #[test]
    fn scenario_files() {
        let s = parse_scenario("a = 8.2e11\nt1 = 1e-9\nt2 = 1e-6\ne_bar_1 = 1e9").unwrap();
        assert_eq!(s.t2, 1e-6);
        assert!(parse_scenario("a = 1.0\nt1 = 2.0\nt2 = 1.0\ne_bar_1 = 1.0").is_err());
        assert!(parse_scenario("a = 1.0\nt1 = 1.0").is_err());
        assert!(parse_scenario("a = 1.0\nt1 = 1.0\nt2 = 2.0\ne_bar_1 = 1.0\nextra = 1").is_err());
    }

    #[test]
    fn defaults_round_trip_through_toml() {
        let cfg = RunConfig {
            out_dir: None,
            threads: Some(2),
            quadrant: Some(QuadrantConfig::default()),
            modes: Some(ModesConfig::default()),
            bogoliubov: Some(BogoliubovConfig::default()),
            vacuum: Some(VacuumConfig::default()),
            detector: Some(DetectorConfig::default()),
            feasibility: Some(FeasibilityConfig::default()),
        };
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::parse(&text).unwrap(), cfg);
    }
}
