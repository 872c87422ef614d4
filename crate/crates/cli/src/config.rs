//! Run configuration: TOML file plus command-line overrides.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use spinpath::spin::LorentzRepresentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub characters: f64,
    pub kernel: f64,
    pub spin_check: f64,
    pub propagator: f64,
    pub fock: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            characters: 1e-10,
            kernel: 1e-8,
            spin_check: 1e-9,
            propagator: 1e-3,
            fock: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Haar {
    pub class_nodes: usize,
    pub angle: usize,
    pub polar: usize,
    pub azimuth: usize,
}

impl Default for Haar {
    fn default() -> Self {
        Self {
            class_nodes: 64,
            angle: 96,
            polar: 24,
            azimuth: 40,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelSection {
    pub taus: Vec<f64>,
}

impl Default for KernelSection {
    fn default() -> Self {
        Self {
            taus: vec![0.1, 0.3, 0.5, 1.0, 5.0, 20.0],
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpinCheckSection {
    pub reps: Vec<String>,
    pub samples: usize,
    pub max_rapidity: f64,
}

impl Default for SpinCheckSection {
    fn default() -> Self {
        Self {
            reps: vec!["scalar".into(), "dirac".into(), "vector".into()],
            samples: 100,
            max_rapidity: 1.5,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PropagatorSection {
    pub mass: f64,
    pub reps: Vec<String>,
    pub points: Vec<[f64; 4]>,
}

impl Default for PropagatorSection {
    fn default() -> Self {
        let mut points = vec![[0.0; 4]];
        for t in [0.5, 1.0, 2.0, 3.0, 4.0] {
            points.push([t, 0.3 * t, -0.2 * t, 0.1 * t]);
            points.push([-t, 0.1 * t, 0.2 * t, -0.3 * t]);
        }
        for r in [0.5, 1.0, 2.0, 4.0] {
            points.push([0.3 * r, r, 0.0, 0.0]);
        }
        Self {
            mass: 1.0,
            reps: vec!["scalar".into(), "dirac".into()],
            points,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FockSection {
    pub max_n: usize,
    pub trials: usize,
    pub vertex_demo: bool,
}

impl Default for FockSection {
    fn default() -> Self {
        Self {
            max_n: 4,
            trials: 3,
            vertex_demo: true,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub ell_max: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Overrides every per-suite tolerance when set.
    pub tol: Option<f64>,
    pub tolerances: Tolerances,
    pub haar: Haar,
    pub kernel: KernelSection,
    pub spin_check: SpinCheckSection,
    pub propagator: PropagatorSection,
    pub fock: FockSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            ell_max: 8.0,
            format: Format::Csv,
            out: None,
            tol: None,
            tolerances: Tolerances::default(),
            haar: Haar::default(),
            kernel: KernelSection::default(),
            spin_check: SpinCheckSection::default(),
            propagator: PropagatorSection::default(),
            fock: FockSection::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }

    pub fn validate(&self) -> Result<(), String> {
        let t = &self.tolerances;
        let all = [t.characters, t.kernel, t.spin_check, t.propagator, t.fock];
        if all.iter().chain(self.tol.iter()).any(|x| !(*x > 0.0)) {
            return Err("tolerances must be positive".into());
        }
        if spinpath::repr::SpinLabel::from_f64(self.ell_max).is_err() {
            return Err(format!(
                "ell_max must be a non-negative multiple of 1/2, got {}",
                self.ell_max
            ));
        }
        if self.haar.class_nodes < 2
            || self.haar.angle < 2
            || self.haar.polar < 2
            || self.haar.azimuth < 1
        {
            return Err("quadrature node counts are too small".into());
        }
        if self.kernel.taus.iter().any(|t| !(*t > 0.0)) {
            return Err("kernel taus must be positive".into());
        }
        if !(self.propagator.mass > 0.0) {
            return Err("propagator mass must be positive".into());
        }
        if self.spin_check.samples == 0 || !(self.spin_check.max_rapidity >= 0.0) {
            return Err("spin_check needs samples > 0 and max_rapidity >= 0".into());
        }
        if self.fock.max_n == 0 || self.fock.max_n > spinpath::fock::DEFAULT_MAX_PARTICLES {
            return Err(format!(
                "fock.max_n must be in 1..={}",
                spinpath::fock::DEFAULT_MAX_PARTICLES
            ));
        }
        self.spin_check_reps()?;
        self.propagator_reps()?;
        Ok(())
    }

    pub fn tolerance(&self, suite: fn(&Tolerances) -> f64) -> f64 {
        self.tol.unwrap_or_else(|| suite(&self.tolerances))
    }

    pub fn ell_max_label(&self) -> spinpath::repr::SpinLabel {
        spinpath::repr::SpinLabel::from_f64(self.ell_max).expect("validated")
    }

    pub fn spin_check_reps(&self) -> Result<Vec<LorentzRepresentation>, String> {
        parse_reps(&self.spin_check.reps)
    }

    pub fn propagator_reps(&self) -> Result<Vec<LorentzRepresentation>, String> {
        parse_reps(&self.propagator.reps)
    }
}

fn parse_reps(names: &[String]) -> Result<Vec<LorentzRepresentation>, String> {
    names
        .iter()
        .map(|n| n.parse().map_err(|e: spinpath::Error| e.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        RunConfig::default().validate().unwrap();
    }

    #[test]
    fn parses_sections() {
        let c: RunConfig = toml::from_str(
            "seed = 7\nell_max = 2.5\nformat = \"json\"\n[tolerances]\nkernel = 1e-6\n[propagator]\nreps = [\"vector\"]\n",
        )
        .unwrap();
        c.validate().unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.tolerance(|t| t.kernel), 1e-6);
        assert_eq!(c.tolerances.fock, 1e-12);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(toml::from_str::<RunConfig>("unknown = 1").is_err());
        let c: RunConfig = toml::from_str("ell_max = 0.3").unwrap();
        assert!(c.validate().is_err());
        let c: RunConfig = toml::from_str("[spin_check]\nreps = [\"tensor\"]").unwrap();
        assert!(c.validate().is_err());
        let c: RunConfig = toml::from_str("tol = -1.0").unwrap();
        assert!(c.validate().is_err());
    }
}
