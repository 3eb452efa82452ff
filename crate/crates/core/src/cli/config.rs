use crate::error::{Error, Result};
use crate::scalars::{Params, Rat};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Which scalar tower `gen` and `apply` compute in, and what the verify
/// suites may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Free generators; exact suites fall back to seeded rational samples.
    Symbolic,
    /// Exact rationals.
    Rational,
    /// Rational inputs evaluated in arbitrary-precision floating point.
    Numeric,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "rational" | "exact" => Ok(Mode::Rational),
            "numeric" => Ok(Mode::Numeric),
            _ => Err(Error::Config(format!("unknown mode '{s}' (expected symbolic, rational or numeric)"))),
        }
    }
}

/// Everything a subcommand needs, after merging file and flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    /// Explicit generator values `t0, t0~, t1, t1~, s`; `None` means seeded
    /// samples for exact suites and the default sample for quadrature.
    #[serde(serialize_with = "ser_params")]
    pub params: Option<[Rat; 5]>,
    pub seed: u64,
    /// Decimal digits for quadrature.
    pub precision: usize,
    /// Highest moment degree certified when a weight is first used.
    pub truncation: i64,
    pub samples: usize,
    pub relation_degree: i64,
    pub family_degree: i64,
    pub shift_degree: i64,
    pub matrix_degree: i64,
    pub norm_max: i64,
    pub adjoint_degree: i64,
    pub limit_degree: i64,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn ser_params<S: serde::Serializer>(p: &Option<[Rat; 5]>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        None => s.serialize_none(),
        Some(v) => s.collect_seq(v.iter().map(|x| x.to_string())),
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Rational,
            params: None,
            seed: 42,
            precision: 128,
            truncation: 16,
            samples: 3,
            relation_degree: 6,
            family_degree: 8,
            shift_degree: 6,
            matrix_degree: 6,
            norm_max: 4,
            adjoint_degree: 4,
            limit_degree: 6,
            out: None,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("{key}: cannot parse '{v}'")))
}

fn parse_params(v: &str) -> Result<Option<[Rat; 5]>> {
    if v == "default" {
        return Ok(Some(Params::numeric_default().generators().map(|g| g.clone())));
    }
    if v == "seeded" {
        return Ok(None);
    }
    let vals: Vec<Rat> = v.split(',').map(|x| parse_num("params", x.trim())).collect::<Result<_>>()?;
    let arr: [Rat; 5] = vals
        .try_into()
        .map_err(|_| Error::Config("params: expected five values t0,t0~,t1,t1~,s".into()))?;
    Params::new(arr[0].clone(), arr[1].clone(), arr[2].clone(), arr[3].clone(), arr[4].clone())
        .map_err(|e| Error::Config(format!("params: {e}")))?;
    Ok(Some(arr))
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "mode" => self.mode = v.parse()?,
            "params" => self.params = parse_params(v)?,
            "seed" => self.seed = parse_num(key, v)?,
            "precision" => self.precision = parse_num(key, v)?,
            "truncation" => self.truncation = parse_num(key, v)?,
            "samples" => self.samples = parse_num(key, v)?,
            "relation_degree" => self.relation_degree = parse_num(key, v)?,
            "family_degree" => self.family_degree = parse_num(key, v)?,
            "shift_degree" => self.shift_degree = parse_num(key, v)?,
            "matrix_degree" => self.matrix_degree = parse_num(key, v)?,
            "norm_max" => self.norm_max = parse_num(key, v)?,
            "adjoint_degree" => self.adjoint_degree = parse_num(key, v)?,
            "limit_degree" => self.limit_degree = parse_num(key, v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Parses flat `key = value` lines; `#` starts a comment.
    pub fn parse_str(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(k, v).map_err(|e| match e {
                Error::Config(m) => Error::Config(format!("line {}: {m}", i + 1)),
                e => e,
            })?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut c = RunConfig::default();
        c.parse_str(&text)?;
        Ok(c)
    }

    pub fn explicit_params(&self) -> Option<Params<Rat>> {
        self.params
            .as_ref()
            .map(|v| Params::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()).expect("validated"))
    }

    /// Parameters for quadrature suites.
    pub fn numeric_params(&self) -> Result<Params<Rat>> {
        if self.mode == Mode::Symbolic {
            return Err(Error::Config(
                "this suite needs numeric parameters; set mode = numeric or rational (symbolic generators cannot be integrated)".into(),
            ));
        }
        Ok(self.explicit_params().unwrap_or_else(Params::numeric_default))
    }

    /// Parameters for exact suites: the explicit set, or seeded samples.
    pub fn exact_samples(&self, count: usize) -> Result<Vec<Params<Rat>>> {
        match (self.mode, self.explicit_params()) {
            (Mode::Symbolic, _) | (_, None) => crate::suites::rational_samples(self.seed, count),
            (_, Some(p)) => Ok(vec![p; count.min(1)]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn file_then_flags() {
        let mut c = RunConfig::default();
        c.parse_str("# sample\nmode = numeric\nparams = 1/2, 5/4, 1/4, 6/5, 1/2  # default\nseed=7\n").unwrap();
        assert_eq!(c.mode, Mode::Numeric);
        assert_eq!(c.seed, 7);
        assert_eq!(c.params.as_ref().unwrap()[1], rat(5, 4));
        c.set("seed", "9").unwrap();
        assert_eq!(c.seed, 9);
    }

    #[test]
    fn bad_lines_are_config_errors() {
        let mut c = RunConfig::default();
        assert!(matches!(c.parse_str("nonsense"), Err(Error::Config(_))));
        assert!(matches!(c.parse_str("colour = red"), Err(Error::Config(_))));
        assert!(matches!(c.parse_str("params = 1,2,3"), Err(Error::Config(_))));
        assert!(matches!(c.parse_str("params = 0,1,1,1,1"), Err(Error::Config(_))));
        assert!(matches!(c.parse_str("mode = fuzzy"), Err(Error::Config(_))));
    }

    #[test]
    fn symbolic_mode_rejects_quadrature() {
        let c = RunConfig { mode: Mode::Symbolic, ..Default::default() };
        assert!(matches!(c.numeric_params(), Err(Error::Config(_))));
        assert_eq!(c.exact_samples(3).unwrap().len(), 3);
    }
}
