//! JSON run descriptions and their validation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use casimir_core::force::Mode;
use casimir_core::quadrature::{MatsubaraSettings, QuadratureSettings, Scheme};
use casimir_core::{DrudeLorentzParams, Layer, Permittivity, PermittivityTable, Stack};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const GAP_COERCION_WARNING: &str = "gap permittivity set equal to unity";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub materials: BTreeMap<String, MaterialSpec>,
    pub stack: StackSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matsubara: Option<MatsubaraSpec>,
    #[serde(default)]
    pub mode: ModeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    SiLike,
    MgLike,
}

impl Preset {
    pub fn params(self) -> DrudeLorentzParams {
        match self {
            Preset::SiLike => DrudeLorentzParams::SI_LIKE,
            Preset::MgLike => DrudeLorentzParams::MG_LIKE,
        }
    }
}

/// A material definition. Oscillator fields override the preset's.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MaterialSpec {
    DrudeLorentz {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        preset: Option<Preset>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omega0: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        omega_p: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gamma0: Option<f64>,
    },
    /// `[ξ, ε(iξ)]` pairs.
    #[serde(alias = "table")]
    Tabulated {
        points: Vec<(f64, f64)>,
    },
    Vacuum,
    PerfectMirror,
}

/// Either a name (from `materials` or a built-in) or an inline definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaterialRef {
    Name(String),
    Inline(MaterialSpec),
}

const BUILTIN_NAMES: [&str; 4] = ["vacuum", "perfect_mirror", "si_like", "mg_like"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerSpec {
    pub material: MaterialRef,
    /// Omitted or `"semi_infinite"` for the two outer half-spaces.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thickness: Option<ThicknessSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ThicknessSpec {
    /// Metres.
    Finite(f64),
    SemiInfinite(SemiInfinite),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SemiInfinite {
    SemiInfinite,
}

impl ThicknessSpec {
    fn finite(self) -> Option<f64> {
        match self {
            ThicknessSpec::Finite(t) => Some(t),
            ThicknessSpec::SemiInfinite(_) => None,
        }
    }
}

/// Layers listed bottom to top.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackSpec {
    pub layers: Vec<LayerSpec>,
    /// May be omitted for three-layer stacks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_index: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeSpec {
    Laguerre,
    FiniteDomain,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radial_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angular_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angular_levels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_rel_err: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatsubaraSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi0_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_terms: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    #[default]
    ZeroT,
    /// Temperature in kelvin.
    FiniteT(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(String),
    Many(Vec<String>),
}

impl OneOrMany {
    fn as_slice(&self) -> &[String] {
        match self {
            OneOrMany::One(s) => std::slice::from_ref(s),
            OneOrMany::Many(v) => v,
        }
    }
}

/// One sweep axis. Every listed parameter is set to the axis value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub parameter: OneOrMany,
    pub scale: Scale,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axes: Vec<AxisSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

/// Every problem found in a configuration, each prefixed by its field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration ({} problem", self.0.len())?;
        if self.0.len() != 1 {
            write!(f, "s")?;
        }
        write!(f, "):")?;
        for e in &self.0 {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

/// Oscillator field addressed by a sweep parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscillatorField {
    Omega0,
    OmegaP,
    Gamma0,
}

impl OscillatorField {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "omega0" => Some(Self::Omega0),
            "omega_p" => Some(Self::OmegaP),
            "gamma0" => Some(Self::Gamma0),
            _ => None,
        }
    }
}

/// A resolved sweep parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    /// Width of the vacuum gap.
    Gap,
    LayerThickness(usize),
    LayerOscillator(usize, OscillatorField),
    /// Every layer built from the named material.
    Material(String, OscillatorField),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub targets: Vec<Target>,
    pub values: Vec<f64>,
}

/// Material of one layer, with oscillator parameters kept as plain numbers
/// so that sweeps can overwrite them.
#[derive(Debug, Clone, PartialEq)]
pub enum MaterialModel {
    Vacuum,
    PerfectMirror,
    Oscillator {
        omega0: f64,
        omega_p: f64,
        gamma0: f64,
    },
    Table(PermittivityTable),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayerModel {
    pub thickness: Option<f64>,
    pub material: MaterialModel,
    /// Name of the `materials` entry the layer came from.
    pub source: Option<String>,
}

/// A stack whose parameters can still be changed.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub layers: Vec<LayerModel>,
    pub gap_index: usize,
}

impl Model {
    pub fn gap_width(&self) -> f64 {
        self.layers[self.gap_index].thickness.unwrap_or(f64::NAN)
    }

    pub fn set(&mut self, target: &Target, value: f64) {
        match target {
            Target::Gap => self.layers[self.gap_index].thickness = Some(value),
            Target::LayerThickness(i) => self.layers[*i].thickness = Some(value),
            Target::LayerOscillator(i, field) => {
                set_field(&mut self.layers[*i].material, *field, value)
            }
            Target::Material(name, field) => {
                for layer in &mut self.layers {
                    if layer.source.as_deref() == Some(name) {
                        set_field(&mut layer.material, *field, value);
                    }
                }
            }
        }
    }

    pub fn to_stack(&self) -> casimir_core::Result<Stack> {
        let layers = self
            .layers
            .iter()
            .map(|l| {
                let material = match &l.material {
                    MaterialModel::Vacuum => Permittivity::Vacuum,
                    MaterialModel::PerfectMirror => Permittivity::PerfectMirror,
                    MaterialModel::Oscillator {
                        omega0,
                        omega_p,
                        gamma0,
                    } => DrudeLorentzParams::new(*omega0, *omega_p, *gamma0)?.into(),
                    MaterialModel::Table(t) => Permittivity::Tabulated(t.clone()),
                };
                Ok(match l.thickness {
                    Some(t) => Layer::slab(t, material),
                    None => Layer::half_space(material),
                })
            })
            .collect::<casimir_core::Result<Vec<_>>>()?;
        Stack::new(layers, self.gap_index)
    }
}

fn set_field(material: &mut MaterialModel, field: OscillatorField, value: f64) {
    if let MaterialModel::Oscillator {
        omega0,
        omega_p,
        gamma0,
    } = material
    {
        match field {
            OscillatorField::Omega0 => *omega0 = value,
            OscillatorField::OmegaP => *omega_p = value,
            OscillatorField::Gamma0 => *gamma0 = value,
        }
    }
}

/// A validated run.
#[derive(Debug, Clone)]
pub struct Run {
    pub model: Model,
    /// The model's stack at its configured parameters.
    pub stack: Stack,
    pub quadrature: QuadratureSettings,
    pub matsubara: MatsubaraSettings,
    pub mode: Mode,
    pub axes: Vec<Axis>,
    pub output: OutputSpec,
    pub warnings: Vec<String>,
}

impl Run {
    pub fn point_count(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }
}

pub fn read_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::Config(ConfigErrors(vec![format!(
            "{}: cannot read: {e}",
            path.display()
        )]))
    })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<RunConfig, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Config(ConfigErrors(vec![format!("JSON: {e}")])))
}

/// Reads and validates a configuration file.
pub fn parse_config(path: &Path) -> Result<Run, CliError> {
    let config = read_config(path)?;
    config.validate().map_err(CliError::Config)
}

impl RunConfig {
    pub fn validate(&self) -> Result<Run, ConfigErrors> {
        let mut errors = Vec::new();
        let mut warnings = Vec::new();

        let mut named = BTreeMap::new();
        for (name, spec) in &self.materials {
            let path = format!("materials.{name}");
            if BUILTIN_NAMES.contains(&name.as_str()) {
                errors.push(format!("{path}: '{name}' is a built-in material name"));
                continue;
            }
            if let Some(m) = resolve_spec(spec, &path, &mut errors) {
                named.insert(name.clone(), m);
            }
        }

        let layers_spec = &self.stack.layers;
        let n = layers_spec.len();
        if n < 3 {
            errors.push(format!(
                "stack.layers: need at least three layers (two walls and a gap), got {n}"
            ));
        }
        let gap_index = match self.stack.gap_index {
            Some(j) => {
                if n >= 3 && !(j > 0 && j < n - 1) {
                    errors.push(format!(
                        "stack.gap_index: must lie between 1 and {}, got {j}",
                        n.saturating_sub(2)
                    ));
                }
                j
            }
            None if n == 3 => 1,
            None => {
                if n > 3 {
                    errors.push(
                        "stack.gap_index: required when the stack has more than three layers"
                            .into(),
                    );
                }
                1
            }
        };

        let mut layers = Vec::with_capacity(n);
        for (i, spec) in layers_spec.iter().enumerate() {
            let path = format!("stack.layers[{i}]");
            let outer = i == 0 || i + 1 == n;
            let thickness = spec.thickness.and_then(ThicknessSpec::finite);
            match (outer, thickness) {
                (true, Some(_)) => errors.push(format!(
                    "{path}.thickness: outer layers are semi-infinite, remove the thickness"
                )),
                (false, None) => {
                    errors.push(format!("{path}.thickness: missing for an inner layer"))
                }
                (false, Some(t)) if !(t.is_finite() && t > 0.0) => errors.push(format!(
                    "{path}.thickness: must be finite and positive, got {t:e}"
                )),
                _ => {}
            }
            let (material, source) = match &spec.material {
                MaterialRef::Name(name) => match builtin(name).or_else(|| named.get(name).cloned())
                {
                    Some(m) => (Some(m), named.contains_key(name).then(|| name.clone())),
                    None => {
                        if !self.materials.contains_key(name) {
                            errors.push(format!("{path}.material: unknown material '{name}'"));
                        }
                        (None, None)
                    }
                },
                MaterialRef::Inline(spec) => (
                    resolve_spec(spec, &format!("{path}.material"), &mut errors),
                    None,
                ),
            };
            if let Some(mut material) = material {
                if i == gap_index && material != MaterialModel::Vacuum {
                    warnings.push(format!("{path}.material: {GAP_COERCION_WARNING}"));
                    material = MaterialModel::Vacuum;
                }
                layers.push(LayerModel {
                    thickness,
                    material,
                    source,
                });
            }
        }

        let quadrature = self.quadrature_settings();
        if let Err(e) = quadrature.validate() {
            errors.push(format!("quadrature: {e}"));
        }
        let matsubara = self.matsubara_settings();
        let mode = match self.mode {
            ModeSpec::ZeroT => Mode::ZeroTemperature,
            ModeSpec::FiniteT(t) => {
                if !(t.is_finite() && t > 0.0) {
                    errors.push(format!(
                        "mode.finite_t: temperature must be positive, got {t}"
                    ));
                }
                if let Err(e) = matsubara.validate() {
                    errors.push(format!("matsubara: {e}"));
                }
                Mode::FiniteTemperature(t)
            }
        };

        let model = Model { layers, gap_index };
        let mut axes = Vec::new();
        if let Some(sweep) = &self.sweep {
            if sweep.axes.is_empty() || sweep.axes.len() > 2 {
                errors.push(format!(
                    "sweep.axes: need one or two axes, got {}",
                    sweep.axes.len()
                ));
            }
            for (k, axis) in sweep.axes.iter().enumerate() {
                let path = format!("sweep.axes[{k}]");
                let mut targets = Vec::new();
                for p in axis.parameter.as_slice() {
                    match parse_target(p, &model, layers_spec.len(), &self.materials) {
                        Ok(t) => targets.push(t),
                        Err(e) => errors.push(format!("{path}.parameter: {e}")),
                    }
                }
                if targets.is_empty() && axis.parameter.as_slice().is_empty() {
                    errors.push(format!("{path}.parameter: empty parameter list"));
                }
                match axis_values(axis) {
                    Ok(values) => axes.push(Axis { targets, values }),
                    Err(e) => errors.push(format!("{path}: {e}")),
                }
            }
        }

        if !errors.is_empty() {
            return Err(ConfigErrors(errors));
        }
        let stack = model
            .to_stack()
            .map_err(|e| ConfigErrors(vec![format!("stack: {e}")]))?;
        for w in &warnings {
            log::warn!("{w}");
        }
        Ok(Run {
            model,
            stack,
            quadrature,
            matsubara,
            mode,
            axes,
            output: self.output.clone().unwrap_or_default(),
            warnings,
        })
    }

    fn quadrature_settings(&self) -> QuadratureSettings {
        let mut s = QuadratureSettings::default();
        if let Some(q) = &self.quadrature {
            s.radial_order = q.radial_order.unwrap_or(s.radial_order);
            s.angular_order = q.angular_order.unwrap_or(s.angular_order);
            s.angular_levels = q.angular_levels.unwrap_or(s.angular_levels);
            s.target_rel_err = q.target_rel_err.unwrap_or(s.target_rel_err);
            if let Some(scheme) = q.scheme {
                s.scheme = match scheme {
                    SchemeSpec::Laguerre => Scheme::Laguerre,
                    SchemeSpec::FiniteDomain => Scheme::FiniteDomain,
                };
            }
        }
        s
    }

    fn matsubara_settings(&self) -> MatsubaraSettings {
        let mut s = MatsubaraSettings::default();
        if let Some(m) = &self.matsubara {
            s.xi0_fraction = m.xi0_fraction.unwrap_or(s.xi0_fraction);
            s.tail_rel_tol = m.tail_rel_tol.unwrap_or(s.tail_rel_tol);
            s.max_terms = m.max_terms.unwrap_or(s.max_terms);
        }
        s
    }
}

fn builtin(name: &str) -> Option<MaterialModel> {
    let oscillator = |p: DrudeLorentzParams| MaterialModel::Oscillator {
        omega0: p.omega0(),
        omega_p: p.omega_p(),
        gamma0: p.gamma0(),
    };
    match name {
        "vacuum" => Some(MaterialModel::Vacuum),
        "perfect_mirror" => Some(MaterialModel::PerfectMirror),
        "si_like" => Some(oscillator(Preset::SiLike.params())),
        "mg_like" => Some(oscillator(Preset::MgLike.params())),
        _ => None,
    }
}

fn resolve_spec(
    spec: &MaterialSpec,
    path: &str,
    errors: &mut Vec<String>,
) -> Option<MaterialModel> {
    match spec {
        MaterialSpec::Vacuum => Some(MaterialModel::Vacuum),
        MaterialSpec::PerfectMirror => Some(MaterialModel::PerfectMirror),
        MaterialSpec::Tabulated { points } => match PermittivityTable::new(points) {
            Ok(t) => Some(MaterialModel::Table(t)),
            Err(e) => {
                errors.push(format!("{path}.points: {e}"));
                None
            }
        },
        MaterialSpec::DrudeLorentz {
            preset,
            omega0,
            omega_p,
            gamma0,
        } => {
            let base = preset.map(Preset::params);
            let mut missing = false;
            let mut pick = |v: Option<f64>, from: Option<f64>, field: &str| match v.or(from) {
                Some(x) => x,
                None => {
                    errors.push(format!("{path}.{field}: required without a preset"));
                    missing = true;
                    f64::NAN
                }
            };
            let w0 = pick(*omega0, base.map(|b| b.omega0()), "omega0");
            let wp = pick(*omega_p, base.map(|b| b.omega_p()), "omega_p");
            let g = pick(*gamma0, base.map(|b| b.gamma0()), "gamma0");
            if missing {
                return None;
            }
            match DrudeLorentzParams::new(w0, wp, g) {
                Ok(p) => Some(MaterialModel::Oscillator {
                    omega0: p.omega0(),
                    omega_p: p.omega_p(),
                    gamma0: p.gamma0(),
                }),
                Err(e) => {
                    errors.push(format!("{path}: {e}"));
                    None
                }
            }
        }
    }
}

/// Parameter paths: `gap`, `layers[i].thickness`, `layers[i].omega0`
/// (also `omega_p`, `gamma0`) and `materials.NAME.omega0` etc.
fn parse_target(
    path: &str,
    model: &Model,
    n_layers: usize,
    materials: &BTreeMap<String, MaterialSpec>,
) -> Result<Target, String> {
    if path == "gap" {
        return Ok(Target::Gap);
    }
    if let Some(rest) = path.strip_prefix("layers[") {
        let (index, field) = rest
            .split_once("].")
            .ok_or_else(|| format!("cannot parse '{path}'"))?;
        let i: usize = index
            .parse()
            .map_err(|_| format!("bad layer index in '{path}'"))?;
        if i >= n_layers {
            return Err(format!(
                "'{path}': layer index {i} out of range (stack has {n_layers} layers)"
            ));
        }
        if field == "thickness" {
            if i == 0 || i + 1 == n_layers {
                return Err(format!("'{path}': outer layers have no thickness"));
            }
            return Ok(if i == model.gap_index {
                Target::Gap
            } else {
                Target::LayerThickness(i)
            });
        }
        let f = OscillatorField::parse(field)
            .ok_or_else(|| format!("unknown field '{field}' in '{path}'"))?;
        return match model.layers.get(i).map(|l| &l.material) {
            Some(MaterialModel::Oscillator { .. }) => Ok(Target::LayerOscillator(i, f)),
            Some(_) => Err(format!(
                "'{path}': layer {i} is not a Drude-Lorentz material"
            )),
            // the layer itself failed validation and is reported there
            None => Ok(Target::LayerOscillator(i, f)),
        };
    }
    if let Some(rest) = path.strip_prefix("materials.") {
        let (name, field) = rest
            .rsplit_once('.')
            .ok_or_else(|| format!("cannot parse '{path}'"))?;
        let f = OscillatorField::parse(field)
            .ok_or_else(|| format!("unknown field '{field}' in '{path}'"))?;
        return match materials.get(name) {
            Some(MaterialSpec::DrudeLorentz { .. }) => Ok(Target::Material(name.to_string(), f)),
            Some(_) => Err(format!(
                "'{path}': material '{name}' is not a Drude-Lorentz material"
            )),
            None => Err(format!("'{path}': no material named '{name}' in materials")),
        };
    }
    Err(format!("unknown parameter '{path}'"))
}

fn axis_values(axis: &AxisSpec) -> Result<Vec<f64>, String> {
    let AxisSpec {
        min,
        max,
        count,
        scale,
        ..
    } = *axis;
    if !(min.is_finite() && max.is_finite()) {
        return Err(format!("min and max must be finite, got {min} and {max}"));
    }
    if count == 0 {
        return Err("count must be at least 1".into());
    }
    if count == 1 {
        if min != max {
            return Err(format!(
                "a single-point axis needs min = max, got {min} and {max}"
            ));
        }
    } else if min >= max {
        return Err(format!("min must be below max, got {min} and {max}"));
    }
    if scale == Scale::Log && min <= 0.0 {
        return Err(format!("log scale needs min > 0, got {min}"));
    }
    if count == 1 {
        return Ok(vec![min]);
    }
    let last = (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i == 0 {
                return min;
            }
            if i == count - 1 {
                return max;
            }
            let s = i as f64 / last;
            match scale {
                Scale::Linear => min + s * (max - min),
                Scale::Log => (min.ln() + s * (max.ln() - min.ln())).exp(),
            }
        })
        .collect())
}
