//! Run configuration: flat `key = value` files merged with flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use givental_core::quad::Method;

use crate::grid::GridSpec;
use crate::UsageError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "GIVENTAL_OUT_DIR";

/// Values read from a config file; vectors come from repeated keys or
/// comma lists.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, Vec<String>>,
}

const KEYS: &[&str] = &[
    "n", "lambda", "hbar", "tol", "eps", "grid", "point", "seed", "threads", "out_dir", "method", "fd_step", "output", "charts",
];

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| UsageError::new(format!("config line {}: expected key = value", lineno + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(UsageError::new(format!("config line {}: unknown key `{k}`", lineno + 1)));
            }
            values.entry(k.to_string()).or_default().push(v.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Ok(Self::parse(&text)?)
    }

    pub fn scalar(&self, key: &str) -> Option<&str> {
        self.values.get(key).and_then(|v| v.last()).map(String::as_str)
    }

    /// Repeated entries joined as one comma list.
    pub fn list(&self, key: &str) -> Option<String> {
        self.values.get(key).map(|v| v.join(","))
    }
}

/// Fully merged and validated parameters of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub lambda: Vec<f64>,
    pub hbar: f64,
    pub tol: Option<f64>,
    pub eps: f64,
    pub grid: Option<GridSpec>,
    pub point: Vec<f64>,
    pub seed: u64,
    pub threads: usize,
    pub out_dir: PathBuf,
    pub method: Option<Method>,
    pub fd_step: f64,
    pub output: Option<String>,
    pub charts: usize,
}

/// Raw, possibly missing values from flags and file before validation.
#[derive(Debug, Default, Clone)]
pub struct Partial {
    pub n: Option<usize>,
    pub lambda: Option<String>,
    pub hbar: Option<f64>,
    pub tol: Option<f64>,
    pub eps: Option<f64>,
    pub grid: Option<String>,
    pub point: Option<String>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out_dir: Option<PathBuf>,
    pub method: Option<String>,
    pub fd_step: Option<f64>,
    pub output: Option<String>,
    pub charts: Option<usize>,
}

fn parse_field<T: std::str::FromStr>(field: &str, v: &str) -> Result<T, UsageError> {
    v.trim().parse().map_err(|_| UsageError::new(format!("field `{field}`: cannot parse `{v}`")))
}

pub fn parse_list(field: &str, v: &str) -> Result<Vec<f64>, UsageError> {
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_field::<f64>(field, s)).collect()
}

impl Partial {
    /// Fill gaps from the file; flags already set win.
    pub fn with_file(mut self, file: &ConfigFile) -> Result<Self, UsageError> {
        fn take<T: std::str::FromStr>(slot: &mut Option<T>, file: &ConfigFile, key: &str) -> Result<(), UsageError> {
            if slot.is_none() {
                if let Some(v) = file.scalar(key) {
                    *slot = Some(parse_field(key, v)?);
                }
            }
            Ok(())
        }
        take(&mut self.n, file, "n")?;
        take(&mut self.hbar, file, "hbar")?;
        take(&mut self.tol, file, "tol")?;
        take(&mut self.eps, file, "eps")?;
        take(&mut self.seed, file, "seed")?;
        take(&mut self.threads, file, "threads")?;
        take(&mut self.fd_step, file, "fd_step")?;
        take(&mut self.charts, file, "charts")?;
        take(&mut self.method, file, "method")?;
        take(&mut self.output, file, "output")?;
        if self.out_dir.is_none() {
            self.out_dir = file.scalar("out_dir").map(PathBuf::from);
        }
        if self.lambda.is_none() {
            self.lambda = file.list("lambda");
        }
        if self.point.is_none() {
            self.point = file.list("point");
        }
        if self.grid.is_none() {
            self.grid = file.list("grid");
        }
        Ok(self)
    }

    pub fn finish(self, command: &str) -> Result<RunConfig, UsageError> {
        let n = self.n.ok_or_else(|| UsageError::new("field `n`: required"))?;
        let lambda = match &self.lambda {
            Some(v) => parse_list("lambda", v)?,
            None => vec![0.0; n],
        };
        let point = match &self.point {
            Some(v) => parse_list("point", v)?,
            None => vec![0.0; n],
        };
        let method = match &self.method {
            Some(m) => Some(Method::parse(m).ok_or_else(|| UsageError::new(format!("field `method`: unknown `{m}`")))?),
            None => None,
        };
        let grid = match &self.grid {
            Some(g) => Some(GridSpec::parse(g)?),
            None => None,
        };
        let out_dir = self
            .out_dir
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        let cfg = RunConfig {
            command: command.to_string(),
            n,
            lambda,
            hbar: self.hbar.unwrap_or(1.0),
            tol: self.tol,
            eps: self.eps.unwrap_or(1e-12),
            grid,
            point,
            seed: self.seed.unwrap_or(0),
            threads: self.threads.unwrap_or(0),
            out_dir,
            method,
            fd_step: self.fd_step.unwrap_or(0.02),
            output: self.output,
            charts: self.charts.unwrap_or(100),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.n < 1 {
            return Err(UsageError::new("field `n`: must be at least 1"));
        }
        if self.lambda.len() != self.n {
            return Err(UsageError::new(format!("field `lambda`: expected {} values, got {}", self.n, self.lambda.len())));
        }
        if self.point.len() != self.n {
            return Err(UsageError::new(format!("field `point`: expected {} values, got {}", self.n, self.point.len())));
        }
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(UsageError::new("field `hbar`: must be positive"));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(UsageError::new("field `tol`: must be positive"));
            }
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(UsageError::new("field `eps`: must lie in (0, 1)"));
        }
        if !(self.fd_step > 0.0) {
            return Err(UsageError::new("field `fd_step`: must be positive"));
        }
        if self.charts == 0 {
            return Err(UsageError::new("field `charts`: must be positive"));
        }
        if let Some(g) = &self.grid {
            g.check_rank(self.n)?;
        }
        if self.method == Some(Method::ClosedForm) && self.n != 2 {
            return Err(UsageError::new("field `method`: closed-form is only available for n = 2"));
        }
        Ok(())
    }

    pub fn quad(&self) -> givental_core::quad::QuadConfig {
        let mut q = givental_core::quad::QuadConfig { hbar: self.hbar, eps: self.eps, seed: self.seed, ..Default::default() };
        if let Some(t) = self.tol {
            q.rel_tol = t;
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_and_overrides() {
        let f = ConfigFile::parse("# run\nn = 2\nlambda = 1\nlambda = -1\nhbar=0.5\ngrid = x1=-1:1:3\ngrid = x2=0\n").unwrap();
        let p = Partial { hbar: Some(1.0), ..Default::default() }.with_file(&f).unwrap();
        let c = p.finish("wavefunction").unwrap();
        assert_eq!(c.lambda, vec![1.0, -1.0]);
        assert_eq!(c.hbar, 1.0);
        assert_eq!(c.grid.unwrap().len(), 3);
    }

    #[test]
    fn errors_name_the_field() {
        let e = Partial { n: Some(3), lambda: Some("1,2".into()), ..Default::default() }.finish("x").unwrap_err();
        assert!(e.to_string().contains("`lambda`"));
        let e = ConfigFile::parse("speed = 3").unwrap_err();
        assert!(e.to_string().contains("speed"));
        let e = Partial { n: Some(2), tol: Some(-1.0), ..Default::default() }.finish("x").unwrap_err();
        assert!(e.to_string().contains("`tol`"));
    }
}
