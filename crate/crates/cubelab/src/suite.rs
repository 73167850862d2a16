//! Declarative suites: a JSON config names functions, a target space, and
//! evaluators; `run_suite` produces reports in a deterministic order
//! (function-major, evaluator order within each function).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cube::CubeFunction;
use crate::error::{Error, Result};
use crate::fileio::{self, SpaceDescriptor};
use crate::ineq;
use crate::quad::QuadratureSpec;
use crate::report::InequalityReport;
use crate::space::NormedSpace;
use crate::weights::WeightFunction;
use crate::zoo;

pub const SUITE_VERSION: u32 = 1;

fn default_version() -> u32 {
    SUITE_VERSION
}

/// Where a suite function comes from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum FunctionSource {
    /// A function file (path relative to the config file).
    File { path: String },
    /// A zoo spec string such as `tribes:w=2,s=4`.
    Zoo { spec: String },
    /// The whole named corpus up to `max_n`.
    StandardZoo { max_n: usize },
    RandomBoolean { n: usize, seed: u64 },
    RandomVector {
        n: usize,
        d: usize,
        seed: u64,
        model: String,
    },
}

/// One evaluator invocation with its parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EvaluatorSpec {
    Poincare,
    KklVector {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t2: Option<f64>,
    },
    TypeP {
        p: f64,
        tp: f64,
    },
    Talagrand {
        h: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t2: Option<f64>,
    },
    TalagrandEps {
        eps: f64,
    },
    KklBoolean,
    KklCorollary,
    Hypercontractivity {
        p: f64,
        q: f64,
        t: f64,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Rows,
    Structured,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct QuadOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_panels: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    #[serde(default = "default_version")]
    pub version: u32,
    pub name: String,
    pub functions: Vec<FunctionSource>,
    /// Space applied to every function; defaults to the scalar target for
    /// `d = 1` and `l_2^d` otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceDescriptor>,
    pub evaluators: Vec<EvaluatorSpec>,
    #[serde(default)]
    pub quadrature: QuadOverrides,
    #[serde(default)]
    pub format: OutputFormat,
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: SuiteConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if config.version != SUITE_VERSION {
            return Err(Error::Config(format!(
                "unsupported suite version {}",
                config.version
            )));
        }
        if config.functions.is_empty() {
            return Err(Error::Config("no functions listed".into()));
        }
        if config.evaluators.is_empty() {
            return Err(Error::Config("no evaluators listed".into()));
        }
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn quadrature_spec(&self) -> QuadratureSpec {
        let mut spec = QuadratureSpec::default();
        if let Some(tol) = self.quadrature.rel_tol {
            spec.rel_tol = tol;
        }
        if let Some(panels) = self.quadrature.max_panels {
            spec.max_panels = panels;
        }
        spec
    }
}

fn materialize(source: &FunctionSource, base_dir: &Path) -> Result<Vec<(String, CubeFunction)>> {
    match source {
        FunctionSource::File { path } => {
            let full: PathBuf = if Path::new(path).is_absolute() {
                path.into()
            } else {
                base_dir.join(path)
            };
            let (f, _) = fileio::load_function(&full)?;
            Ok(vec![(format!("file:{path}"), f)])
        }
        FunctionSource::Zoo { spec } => Ok(vec![(format!("zoo:{spec}"), zoo::from_spec(spec)?)]),
        FunctionSource::StandardZoo { max_n } => Ok(zoo::standard_zoo(*max_n)
            .into_iter()
            .map(|(name, f)| (format!("zoo:{name}"), f))
            .collect()),
        FunctionSource::RandomBoolean { n, seed } => Ok(vec![(
            format!("random-boolean:n={n},seed={seed}"),
            zoo::random_boolean(*n, *seed)?,
        )]),
        FunctionSource::RandomVector { n, d, seed, model } => {
            let model_kind = match model.as_str() {
                "cube" => zoo::VectorModel::Cube,
                "sphere" => zoo::VectorModel::Sphere,
                other => {
                    return Err(Error::Config(format!("unknown vector model {other:?}")));
                }
            };
            Ok(vec![(
                format!("random-vector:n={n},d={d},seed={seed},model={model}"),
                zoo::random_vector(*n, *d, *seed, model_kind)?,
            )])
        }
    }
}

fn space_for(config: &SuiteConfig, f: &CubeFunction) -> Result<NormedSpace> {
    match &config.space {
        Some(descriptor) => {
            let space = descriptor.to_normed()?;
            if space.d != f.d() {
                return Err(Error::VectorDimensionMismatch {
                    got: f.d(),
                    expected: space.d,
                });
            }
            Ok(space)
        }
        None => NormedSpace::lq(f.d(), 2.0),
    }
}

fn require_t2(space: &NormedSpace, explicit: Option<f64>) -> Result<f64> {
    explicit.or(space.type2_bound).ok_or_else(|| {
        Error::Config("no T2 bound: the space carries none and the evaluator gives none".into())
    })
}

fn run_evaluator(
    spec: &EvaluatorSpec,
    f: &CubeFunction,
    space: &NormedSpace,
    quad: &QuadratureSpec,
) -> Result<InequalityReport> {
    match spec {
        EvaluatorSpec::Poincare => ineq::eval_poincare(f, space),
        EvaluatorSpec::KklVector { t2 } => {
            ineq::eval_kkl_vector(f, space, require_t2(space, *t2)?, None)
        }
        EvaluatorSpec::TypeP { p, tp } => ineq::eval_type_p(f, space, *p, *tp, None),
        EvaluatorSpec::Talagrand { h, t2 } => {
            let weight = WeightFunction::registry(h)?;
            ineq::eval_talagrand_general(f, space, &weight, require_t2(space, *t2)?, quad)
        }
        EvaluatorSpec::TalagrandEps { eps } => ineq::eval_talagrand_eps_ratio(f, space, *eps),
        EvaluatorSpec::KklBoolean => ineq::eval_kkl_boolean(f),
        EvaluatorSpec::KklCorollary => ineq::eval_kkl_corollary(f),
        EvaluatorSpec::Hypercontractivity { p, q, t } => {
            ineq::check_hypercontractivity(f, *p, *q, *t, space)
        }
    }
}

/// Runs every evaluator on every function, in order. `base_dir` anchors
/// relative file paths (usually the config's directory).
pub fn run_suite(config: &SuiteConfig, base_dir: &Path) -> Result<Vec<InequalityReport>> {
    let quad = config.quadrature_spec();
    let mut reports = Vec::new();
    for source in &config.functions {
        for (name, f) in materialize(source, base_dir)? {
            let space = space_for(config, &f)?;
            for evaluator in &config.evaluators {
                let mut report = run_evaluator(evaluator, &f, &space, &quad)?;
                report.inputs = if report.inputs.is_empty() {
                    format!("fn={name}")
                } else {
                    format!("fn={name};{}", report.inputs)
                };
                reports.push(report);
            }
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report;

    #[test]
    fn parity_kkl_suite() {
        let config = SuiteConfig::from_json(
            r#"{
                "name": "demo",
                "functions": [{"source": "zoo", "spec": "parity:n=2,mask=3"}],
                "evaluators": [{"kind": "kkl_boolean"}]
            }"#,
        )
        .unwrap();
        let reports = run_suite(&config, Path::new(".")).unwrap();
        assert_eq!(reports.len(), 1);
        assert!((reports[0].slack - 8.0).abs() < 1e-12);
        assert!(reports[0].inputs.starts_with("fn=zoo:parity"));
    }

    #[test]
    fn dictator_corollary_formats_infinite_slack() {
        let config = SuiteConfig::from_json(
            r#"{
                "name": "inf",
                "functions": [{"source": "zoo", "spec": "dictator:n=1,j=1"}],
                "evaluators": [{"kind": "kkl_corollary"}],
                "format": "rows"
            }"#,
        )
        .unwrap();
        let reports = run_suite(&config, Path::new(".")).unwrap();
        assert!(reports[0].pass);
        assert!(reports[0].slack.is_infinite());
        let mut buf = Vec::new();
        report::emit_rows(&reports, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains(",inf,"));
    }

    #[test]
    fn mixed_suite_is_reproducible() {
        let config = SuiteConfig::from_json(
            r#"{
                "name": "mixed",
                "functions": [{"source": "random_boolean", "n": 6, "seed": 7}],
                "evaluators": [
                    {"kind": "poincare"},
                    {"kind": "hypercontractivity", "p": 1.3333333333333333, "q": 2.0, "t": 0.56}
                ]
            }"#,
        )
        .unwrap();
        let a = run_suite(&config, Path::new(".")).unwrap();
        let b = run_suite(&config, Path::new(".")).unwrap();
        assert_eq!(a.len(), 2);
        let mut buf_a = Vec::new();
        let mut buf_b = Vec::new();
        report::emit_rows(&a, &mut buf_a).unwrap();
        report::emit_rows(&b, &mut buf_b).unwrap();
        assert_eq!(buf_a, buf_b);
    }

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::from_json("{}").is_err());
        assert!(SuiteConfig::from_json(
            r#"{"name": "x", "functions": [], "evaluators": [{"kind": "poincare"}]}"#
        )
        .is_err());
        assert!(SuiteConfig::from_json(
            r#"{"version": 3, "name": "x",
                "functions": [{"source": "zoo", "spec": "majority:n=3"}],
                "evaluators": [{"kind": "poincare"}]}"#
        )
        .is_err());
    }

    #[test]
    fn missing_t2_is_a_config_error() {
        // l_1.5 has no built-in type-2 bound and none is supplied
        let config = SuiteConfig::from_json(
            r#"{
                "name": "no-t2",
                "functions": [{"source": "random_vector", "n": 2, "d": 2, "seed": 1, "model": "cube"}],
                "space": {"kind": "lq", "d": 2, "q": 1.5},
                "evaluators": [{"kind": "kkl_vector"}]
            }"#,
        )
        .unwrap();
        assert!(matches!(
            run_suite(&config, Path::new(".")),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn standard_zoo_source_expands() {
        let config = SuiteConfig::from_json(
            r#"{
                "name": "zoo",
                "functions": [{"source": "standard_zoo", "max_n": 4}],
                "evaluators": [{"kind": "kkl_boolean"}]
            }"#,
        )
        .unwrap();
        let reports = run_suite(&config, Path::new(".")).unwrap();
        assert!(reports.len() > 3);
        assert!(reports.iter().all(|r| r.pass));
    }
}
