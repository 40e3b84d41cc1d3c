//! TOML configuration for chain verification and diagrams.
//!
//! ```toml
//! schema_version = 1
//! family = "M5"
//!
//! [functions]
//! Phi = "exp(t)"
//!
//! [thresholds]
//! C = 2.0
//!
//! [verify]          # all optional
//! samples = 1000
//! seed = 0
//! tol = 1e-9
//! t_max = 10.0
//!
//! [diagram]         # all optional
//! property = "E4"   # a class tag, or "evolution"
//! field = "complex"
//! window = [0.0, 4.0, 0.0, 4.0]   # s_min, s_max, t_min, t_max
//! resolution = 64
//! cell_px = 8
//! ```

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::scalar::Field;

use super::diagram::{Property, Window};
use super::family::{ChainFamilySpec, FamilyId};
use super::verify::Sampling;
use super::CeaError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,
    family: String,
    #[serde(default)]
    functions: BTreeMap<String, String>,
    #[serde(default)]
    thresholds: BTreeMap<String, f64>,
    #[serde(default)]
    verify: RawVerify,
    #[serde(default)]
    diagram: RawDiagram,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVerify {
    samples: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
    t_max: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    property: Option<String>,
    field: Option<String>,
    window: Option<[f64; 4]>,
    resolution: Option<usize>,
    cell_px: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct VerifySettings {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub sampling: Sampling,
}

#[derive(Clone, Debug)]
pub struct DiagramSettings {
    pub property: Property,
    pub field: Field,
    pub window: Window,
    pub resolution: usize,
    pub cell_px: usize,
}

#[derive(Clone, Debug)]
pub struct CeaConfig {
    pub spec: ChainFamilySpec,
    pub verify: VerifySettings,
    pub diagram: DiagramSettings,
}

impl CeaConfig {
    pub fn parse(text: &str) -> Result<Self, CeaError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CeaError::Config(e.to_string()))?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(CeaError::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                raw.schema_version
            )));
        }
        let id: FamilyId = raw.family.parse()?;
        let functions: Vec<(&str, &str)> = raw
            .functions
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .collect();
        let mut threshold = None;
        for (name, value) in &raw.thresholds {
            if Some(name.as_str()) != id.threshold_name() {
                return Err(CeaError::Config(format!("{id} has no threshold `{name}`")));
            }
            threshold = Some(*value);
        }
        let spec = ChainFamilySpec::new(id, &functions, threshold)?;
        let sampling = Sampling {
            t_max: raw.verify.t_max.unwrap_or(10.0),
            ..Sampling::default()
        };
        if !(sampling.t_max.is_finite() && sampling.t_max > 0.3 + 6.0 * sampling.eps) {
            return Err(CeaError::Config(format!(
                "t_max too small: {}",
                sampling.t_max
            )));
        }
        let tol = raw.verify.tol.unwrap_or(1e-9);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CeaError::Config(format!("tol must be positive, got {tol}")));
        }
        let verify = VerifySettings {
            samples: raw.verify.samples.unwrap_or(1000),
            seed: raw.verify.seed.unwrap_or(0),
            tol,
            sampling,
        };
        let field = match raw.diagram.field {
            Some(f) => f
                .parse()
                .map_err(|e: crate::scalar::ScalarParseError| CeaError::Config(e.0))?,
            None => Field::Complex,
        };
        let property = match raw.diagram.property {
            Some(p) => p.parse()?,
            None => Property::Evolution,
        };
        let window = match raw.diagram.window {
            Some([s_min, s_max, t_min, t_max]) => Window {
                s_min,
                s_max,
                t_min,
                t_max,
            },
            None => Window::square(0.0, sampling.t_max),
        };
        let diagram = DiagramSettings {
            property,
            field,
            window,
            resolution: raw.diagram.resolution.unwrap_or(64),
            cell_px: raw.diagram.cell_px.unwrap_or(8).max(1),
        };
        Ok(Self {
            spec,
            verify,
            diagram,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Tag;

    #[test]
    fn full_config() {
        let cfg = CeaConfig::parse(
            r#"
schema_version = 1
family = "M5"
[functions]
Phi = "exp(t)"
[thresholds]
C = 2.0
[verify]
samples = 10
seed = 3
[diagram]
property = "E4"
window = [0.0, 4.0, 0.0, 4.0]
resolution = 16
"#,
        )
        .unwrap();
        assert_eq!(cfg.spec.id(), FamilyId::M5);
        assert_eq!(cfg.spec.threshold(), Some(2.0));
        assert_eq!(cfg.verify.samples, 10);
        assert_eq!(cfg.verify.tol, 1e-9);
        assert_eq!(cfg.diagram.property, Property::Class(Tag::E4));
        assert_eq!(cfg.diagram.resolution, 16);
    }

    #[test]
    fn rejections() {
        let bad = [
            "schema_version = 2\nfamily = \"M0\"",
            "family = \"M0\"",
            "schema_version = 1\nfamily = \"M9\"",
            "schema_version = 1\nfamily = \"M2\"\n[functions]\nsigma = \"s\"\n[thresholds]\nC = 1.0",
            "schema_version = 1\nfamily = \"M0\"\nbogus = 1",
            "schema_version = 1\nfamily = \"M1\"\n[functions]\nrho = \"s +\"\nphi = \"1\"",
        ];
        for text in bad {
            assert!(CeaConfig::parse(text).is_err(), "{text}");
        }
    }
}
