//! Experiment configuration: JSON schema (version "1") and validation into
//! library objects.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::criterion::VerdictKind;
use crate::inner::{Atom, BlaschkeProduct, BlaschkeZero, InnerFunction, SingularInner};
use crate::nevanlinna::SelfMap;
use crate::numerics::{DiskRuleSpec, MultiPolynomial, Polynomial};
use crate::C64;

pub const CONFIG_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    VerifyLp,
    VerifyStanton,
    Counting,
    Criterion,
    Kernel,
    Basis,
    Cohn,
    Probe,
    Heatmap,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::VerifyLp => "verify-lp",
            Task::VerifyStanton => "verify-stanton",
            Task::Counting => "counting",
            Task::Criterion => "criterion",
            Task::Kernel => "kernel",
            Task::Basis => "basis",
            Task::Cohn => "cohn",
            Task::Probe => "probe",
            Task::Heatmap => "heatmap",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: String,
    #[serde(default)]
    pub task: Option<Task>,
    /// Name of a built-in pair supplying `phi` and `theta`.
    #[serde(default)]
    pub catalog: Option<String>,
    #[serde(default)]
    pub phi: Option<PhiSpec>,
    #[serde(default)]
    pub theta: Option<ThetaSpec>,
    /// Coefficients of the test function `f`, ascending degree.
    #[serde(default)]
    pub f: Option<Vec<C64>>,
    #[serde(default)]
    pub numerics: Numerics,
    #[serde(default)]
    pub output: OutputSpec,
    /// Verdict the criterion task must reproduce.
    #[serde(default)]
    pub expect: Option<VerdictKind>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PhiSpec {
    Polynomial {
        #[serde(default = "one")]
        dim: usize,
        #[serde(default)]
        coeffs: Option<Vec<C64>>,
        #[serde(default)]
        terms: Option<Vec<TermSpec>>,
    },
    Blaschke {
        zeros: Vec<ZeroSpec>,
        #[serde(default)]
        rotation: Option<C64>,
    },
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub alpha: Vec<u32>,
    pub c: C64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroSpec {
    pub point: C64,
    #[serde(default = "one_u32")]
    pub multiplicity: u32,
}

fn one_u32() -> u32 {
    1
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSpec {
    #[serde(default)]
    pub zeros: Vec<ZeroSpec>,
    #[serde(default)]
    pub rotation: Option<C64>,
    #[serde(default)]
    pub atoms: Vec<AtomSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    pub point: C64,
    pub mass: f64,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Numerics {
    pub radii: Option<Vec<f64>>,
    pub angular_count: Option<usize>,
    pub refine: Option<bool>,
    pub sphere_n: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub disk: Option<DiskRuleSpec>,
    /// Evaluation points; drawn at random from `seed` when absent.
    pub points: Option<Vec<C64>>,
    pub sample_count: Option<usize>,
    /// Cohn exponents.
    pub p: Option<Vec<f64>>,
    pub grid_n: Option<usize>,
    pub level: Option<f64>,
    pub heat_radial: Option<usize>,
    pub heat_angular: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

/// A field path with a message, e.g. `phi.zeros[1].point`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

pub fn parse(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "<root>".to_string() } else { path };
        ConfigError::new(field, e.into_inner().to_string())
    })?;
    if config.version != CONFIG_VERSION {
        return Err(ConfigError::new(
            "version",
            format!("unsupported version {:?}, expected {CONFIG_VERSION:?}", config.version),
        ));
    }
    Ok(config)
}

/// Everything a task needs, validated.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub task: Task,
    pub phi: Option<SelfMap>,
    pub theta: Option<InnerFunction>,
    pub f: Polynomial,
    pub numerics: Numerics,
    pub seed: u64,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub expect: Option<VerdictKind>,
}

impl Experiment {
    pub fn require_phi(&self) -> Result<&SelfMap, ConfigError> {
        self.phi
            .as_ref()
            .ok_or_else(|| ConfigError::new("phi", format!("required by task {}", self.task.name())))
    }

    pub fn require_theta(&self) -> Result<&InnerFunction, ConfigError> {
        self.theta.as_ref().ok_or_else(|| {
            ConfigError::new("theta", format!("required by task {}", self.task.name()))
        })
    }
}

pub struct Overrides {
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
}

pub fn validate(
    config: ExperimentConfig,
    task: Task,
    overrides: Overrides,
) -> Result<Experiment, ConfigError> {
    if let Some(t) = config.task {
        if t != task {
            return Err(ConfigError::new(
                "task",
                format!("config is for {} but {} was requested", t.name(), task.name()),
            ));
        }
    }
    let (mut phi, mut theta) = (None, None);
    if let Some(name) = &config.catalog {
        let entry = catalog::lookup(name)
            .ok_or_else(|| ConfigError::new("catalog", format!("unknown entry {name:?}")))?;
        phi = Some(entry.phi);
        theta = Some(entry.theta);
    }
    if let Some(spec) = &config.phi {
        phi = Some(build_phi(spec)?);
    }
    if let Some(spec) = &config.theta {
        theta = Some(build_theta(spec, "theta")?);
    }
    let f = match &config.f {
        Some(c) => Polynomial::new(c.clone()),
        None => Polynomial::monomial(C64::new(1.0, 0.0), 1),
    };
    let n = &config.numerics;
    if let Some(radii) = &n.radii {
        for (i, &r) in radii.iter().enumerate() {
            if !(r > 0.0 && r < 1.0) {
                return Err(ConfigError::new(format!("numerics.radii[{i}]"), format!("{r} is not in (0, 1)")));
            }
            if i > 0 && !(r > radii[i - 1]) {
                return Err(ConfigError::new(format!("numerics.radii[{i}]"), "radii must increase"));
            }
        }
    }
    if let Some(points) = &n.points {
        for (i, w) in points.iter().enumerate() {
            if !(w.norm() < 1.0) {
                return Err(ConfigError::new(
                    format!("numerics.points[{i}]"),
                    format!("{w} is not inside the unit disk"),
                ));
            }
        }
    }
    if let Some(p) = &n.p {
        for (i, &x) in p.iter().enumerate() {
            if !(x > 0.0 && x < 1.0) {
                return Err(ConfigError::new(format!("numerics.p[{i}]"), format!("{x} is not in (0, 1)")));
            }
        }
    }
    if let Some(d) = &n.disk {
        if d.order == 0 || d.angular == 0 {
            return Err(ConfigError::new("numerics.disk", "order and angular must be positive"));
        }
    }
    for (field, v) in [
        ("numerics.angular_count", n.angular_count),
        ("numerics.sphere_n", n.sphere_n),
        ("numerics.sample_count", n.sample_count),
        ("numerics.heat_radial", n.heat_radial),
        ("numerics.heat_angular", n.heat_angular),
    ] {
        if v == Some(0) {
            return Err(ConfigError::new(field, "must be positive"));
        }
    }
    if let Some(g) = n.grid_n {
        if g < crate::criterion::MIN_GRID {
            return Err(ConfigError::new("numerics.grid_n", format!("must be at least {}", crate::criterion::MIN_GRID)));
        }
    }
    if let Some(l) = n.level {
        if !(l > 0.0 && l < 1.0) {
            return Err(ConfigError::new("numerics.level", format!("{l} is not in (0, 1)")));
        }
    }
    let tol = overrides.tol.or(n.tol);
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(ConfigError::new("numerics.tol", format!("{t} must be positive")));
        }
    }
    Ok(Experiment {
        task,
        phi,
        theta,
        f,
        seed: overrides.seed.or(n.seed).unwrap_or(0),
        tol,
        out: overrides.out.or(config.output.path.clone()),
        format: config.output.format,
        numerics: config.numerics,
        expect: config.expect,
    })
}

fn build_zeros(zeros: &[ZeroSpec], field: &str) -> Result<Vec<BlaschkeZero>, ConfigError> {
    zeros
        .iter()
        .enumerate()
        .map(|(i, z)| {
            if !(z.point.norm() < 1.0) {
                return Err(ConfigError::new(
                    format!("{field}.zeros[{i}].point"),
                    format!("|a| = {} is not below 1", z.point.norm()),
                ));
            }
            if z.multiplicity == 0 {
                return Err(ConfigError::new(format!("{field}.zeros[{i}].multiplicity"), "must be at least 1"));
            }
            Ok(BlaschkeZero {
                point: z.point,
                multiplicity: z.multiplicity,
            })
        })
        .collect()
}

fn build_blaschke(
    zeros: &[ZeroSpec],
    rotation: Option<C64>,
    field: &str,
) -> Result<BlaschkeProduct, ConfigError> {
    let zeros = build_zeros(zeros, field)?;
    BlaschkeProduct::new(zeros, rotation.unwrap_or(C64::new(1.0, 0.0)))
        .map_err(|e| ConfigError::new(format!("{field}.rotation"), e.to_string()))
}

fn build_phi(spec: &PhiSpec) -> Result<SelfMap, ConfigError> {
    let map = match spec {
        PhiSpec::Polynomial { dim, coeffs, terms } => {
            let p = match (coeffs, terms) {
                (Some(c), None) => {
                    if *dim != 1 {
                        return Err(ConfigError::new("phi.coeffs", "only valid for dim 1; use terms"));
                    }
                    MultiPolynomial::from_univariate(&Polynomial::new(c.clone()))
                }
                (None, Some(t)) => {
                    let mut p = MultiPolynomial::zero(*dim)
                        .map_err(|e| ConfigError::new("phi.dim", e.to_string()))?;
                    for (i, term) in t.iter().enumerate() {
                        p.add_term(term.alpha.clone(), term.c)
                            .map_err(|e| ConfigError::new(format!("phi.terms[{i}].alpha"), e.to_string()))?;
                    }
                    p
                }
                _ => return Err(ConfigError::new("phi", "give exactly one of coeffs or terms")),
            };
            SelfMap::polynomial(p)
        }
        PhiSpec::Blaschke { zeros, rotation } => {
            SelfMap::blaschke(build_blaschke(zeros, *rotation, "phi")?)
        }
    };
    map.map_err(|e| ConfigError::new("phi", e.to_string()))
}

fn build_theta(spec: &ThetaSpec, field: &str) -> Result<InnerFunction, ConfigError> {
    let blaschke = if spec.zeros.is_empty() && spec.rotation.is_none() {
        None
    } else {
        Some(build_blaschke(&spec.zeros, spec.rotation, field)?)
    };
    let singular = if spec.atoms.is_empty() {
        None
    } else {
        let atoms = spec
            .atoms
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if !(a.mass > 0.0) {
                    return Err(ConfigError::new(format!("{field}.atoms[{i}].mass"), "must be positive"));
                }
                if ((a.point.norm() - 1.0).abs()) > crate::inner::ATOM_TOL {
                    return Err(ConfigError::new(
                        format!("{field}.atoms[{i}].point"),
                        format!("|ζ| = {} is not 1", a.point.norm()),
                    ));
                }
                Ok(Atom {
                    point: a.point,
                    mass: a.mass,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Some(SingularInner::new(atoms).map_err(|e| ConfigError::new(format!("{field}.atoms"), e.to_string()))?)
    };
    InnerFunction::new(blaschke, singular).map_err(|e| ConfigError::new(field, e.to_string()))
}
