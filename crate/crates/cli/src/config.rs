//! Resolved run configuration: preset, then config file, then flags.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use kakeya_core::bounds::{BoundParams, RLambdaConvention, DEFAULT_QUAD_TOL};
use kakeya_core::optimizer::SEC41_LAMBDA;
use kakeya_core::oracle::DEFAULT_SEED;

use crate::args::{Emit, GlobalArgs, Preset};
use crate::CliError;

pub const SEED_ENV: &str = "KAKEYA_SEED";
pub const DEFAULT_DIGITS: usize = 6;

/// The published optimum of the constrained problem.
pub fn sec41_point() -> BoundParams {
    BoundParams {
        a: 0.06473,
        r0: 0.22785,
        p: 0.88794,
        lambda: SEC41_LAMBDA,
        convention: RLambdaConvention::Reproducing,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub params: BoundParams,
    pub preset: Option<Preset>,
    pub quad_tol: f64,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub emit: BTreeSet<Emit>,
    pub digits: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            params: BoundParams::theorem(),
            preset: None,
            quad_tol: DEFAULT_QUAD_TOL,
            seed: DEFAULT_SEED,
            output_dir: PathBuf::from("."),
            emit: BTreeSet::new(),
            digits: DEFAULT_DIGITS,
        }
    }
}

/// Values read from a config file or flags; `None` means not given.
#[derive(Debug, Clone, Default)]
struct Layer {
    a: Option<f64>,
    r0: Option<f64>,
    p: Option<f64>,
    lambda: Option<f64>,
    quad_tol: Option<f64>,
    seed: Option<u64>,
    preset: Option<Preset>,
    convention: Option<RLambdaConvention>,
    output_dir: Option<PathBuf>,
    emit: Option<Vec<Emit>>,
    digits: Option<usize>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_preset(s: &str) -> Result<Preset, CliError> {
    match s {
        "theorem" => Ok(Preset::Theorem),
        "cunningham" => Ok(Preset::Cunningham),
        "sec41" => Ok(Preset::Sec41),
        other => Err(usage(format!("unknown preset {other:?}"))),
    }
}

fn parse_emit(s: &str) -> Result<Vec<Emit>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| match x {
            "csv" => Ok(Emit::Csv),
            "svg" => Ok(Emit::Svg),
            "json" => Ok(Emit::Json),
            other => Err(usage(format!("unknown emit format {other:?}"))),
        })
        .collect()
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| usage(format!("invalid value {value:?} for {key}")))
}

fn parse_convention(s: &str) -> Result<RLambdaConvention, CliError> {
    s.parse::<RLambdaConvention>()
        .map_err(|e| usage(e.to_string()))
}

/// Parses a flat `key = value` file. Blank lines and `#` comments are
/// ignored; keys may use `-` or `_`.
fn parse_file(text: &str, origin: &Path) -> Result<Layer, CliError> {
    let mut layer = Layer::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            usage(format!("{}:{}: expected key = value", origin.display(), n + 1))
        })?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "a" => layer.a = Some(parse_num(&key, value)?),
            "r0" => layer.r0 = Some(parse_num(&key, value)?),
            "p" => layer.p = Some(parse_num(&key, value)?),
            "lambda" => layer.lambda = Some(parse_num(&key, value)?),
            "quad_tol" => layer.quad_tol = Some(parse_num(&key, value)?),
            "seed" => layer.seed = Some(parse_num(&key, value)?),
            "digits" => layer.digits = Some(parse_num(&key, value)?),
            "preset" => layer.preset = Some(parse_preset(value)?),
            "rlambda_convention" => layer.convention = Some(parse_convention(value)?),
            "output_dir" => layer.output_dir = Some(PathBuf::from(value)),
            "emit" => layer.emit = Some(parse_emit(value)?),
            other => {
                return Err(usage(format!(
                    "{}:{}: unknown key {other:?}",
                    origin.display(),
                    n + 1
                )))
            }
        }
    }
    Ok(layer)
}

fn flag_layer(g: &GlobalArgs) -> Result<Layer, CliError> {
    Ok(Layer {
        a: g.a,
        r0: g.r0,
        p: g.p,
        lambda: g.lambda,
        quad_tol: g.quad_tol,
        seed: g.seed,
        preset: g.preset,
        convention: g.rlambda_convention.as_deref().map(parse_convention).transpose()?,
        output_dir: g.output_dir.clone(),
        emit: g.emit.clone(),
        digits: g.digits,
    })
}

fn preset_params(preset: Option<Preset>) -> BoundParams {
    match preset {
        Some(Preset::Sec41) => sec41_point(),
        _ => BoundParams::theorem(),
    }
}

impl Config {
    /// Resolves flags against an optional config file and `KAKEYA_SEED`.
    pub fn resolve(g: &GlobalArgs, env_seed: Option<&str>) -> Result<Self, CliError> {
        let file = match &g.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                parse_file(&text, path)?
            }
            None => Layer::default(),
        };
        let flags = flag_layer(g)?;
        let preset = flags.preset.or(file.preset);
        let mut cfg = Config {
            params: preset_params(preset),
            preset,
            ..Config::default()
        };
        for layer in [&file, &flags] {
            cfg.apply(layer);
        }
        if flags.seed.is_none() && file.seed.is_none() {
            if let Some(s) = env_seed.filter(|s| !s.trim().is_empty()) {
                cfg.seed = parse_num(SEED_ENV, s.trim())?;
            }
        }
        if !(cfg.quad_tol.is_finite() && cfg.quad_tol > 0.0) {
            return Err(usage(format!("--quad-tol must be > 0, got {}", cfg.quad_tol)));
        }
        if cfg.digits == 0 || cfg.digits > 17 {
            return Err(usage("--digits must lie in 1..=17"));
        }
        Ok(cfg)
    }

    fn apply(&mut self, l: &Layer) {
        let p = &mut self.params;
        p.a = l.a.unwrap_or(p.a);
        p.r0 = l.r0.unwrap_or(p.r0);
        p.p = l.p.unwrap_or(p.p);
        p.lambda = l.lambda.unwrap_or(p.lambda);
        p.convention = l.convention.unwrap_or(p.convention);
        self.quad_tol = l.quad_tol.unwrap_or(self.quad_tol);
        self.seed = l.seed.unwrap_or(self.seed);
        self.digits = l.digits.unwrap_or(self.digits);
        if let Some(dir) = &l.output_dir {
            self.output_dir = dir.clone();
        }
        if let Some(emit) = &l.emit {
            self.emit = emit.iter().copied().collect();
        }
    }

    pub fn emits(&self, e: Emit) -> bool {
        self.emit.contains(&e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_parsing() {
        let text = "# comment\na = 0.05\nr0=0.2 # trailing\nrlambda-convention = paper-literal\nemit = csv, json\n";
        let l = parse_file(text, Path::new("x")).unwrap();
        assert_eq!(l.a, Some(0.05));
        assert_eq!(l.r0, Some(0.2));
        assert_eq!(l.convention, Some(RLambdaConvention::PaperLiteral));
        assert_eq!(l.emit, Some(vec![Emit::Csv, Emit::Json]));
        assert!(parse_file("nope = 1", Path::new("x")).is_err());
        assert!(parse_file("a 1", Path::new("x")).is_err());
    }

    #[test]
    fn seed_precedence() {
        let g = GlobalArgs::default();
        assert_eq!(Config::resolve(&g, None).unwrap().seed, DEFAULT_SEED);
        assert_eq!(Config::resolve(&g, Some("19")).unwrap().seed, 19);
        let g = GlobalArgs { seed: Some(3), ..GlobalArgs::default() };
        assert_eq!(Config::resolve(&g, Some("19")).unwrap().seed, 3);
        assert!(Config::resolve(&GlobalArgs::default(), Some("x")).is_err());
    }

    #[test]
    fn flags_override_preset() {
        let g = GlobalArgs {
            preset: Some(Preset::Sec41),
            a: Some(0.06),
            ..GlobalArgs::default()
        };
        let cfg = Config::resolve(&g, None).unwrap();
        assert_eq!(cfg.params.a, 0.06);
        assert_eq!(cfg.params.r0, 0.22785);
    }
}
