//! Suite configuration: defaults, a `key = value` file, then flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub primes: Vec<u64>,
    pub val_bound: u32,
    pub weights: Vec<u32>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            primes: vec![2, 3, 5],
            val_bound: 3,
            weights: vec![2, 4, 6, 8, 10],
            samples: 200,
            seed: 1,
            tol: 1e-8,
            format: Format::Text,
            out: None,
        }
    }
}

/// Optional settings from a config file or the command line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub primes: Option<Vec<u64>>,
    pub val_bound: Option<u32>,
    pub weights: Option<Vec<u32>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

/// Upper limits keeping runs and enumerations bounded.
pub const MAX_VAL_BOUND: u32 = 8;
pub const MAX_WEIGHT: u32 = 40;
pub const MAX_SUBRING_INDEX: u64 = 500;

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>> {
    v.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| anyhow::anyhow!("bad entry {:?} for {}", x, key)))
        .collect()
}

impl Overrides {
    /// Parse `key = value` lines; `#` starts a comment.
    pub fn parse_file_contents(text: &str) -> Result<Self> {
        let mut o = Overrides::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').with_context(|| format!("line {}: expected key = value", n + 1))?;
            let (k, v) = (k.trim().replace('-', "_"), v.trim());
            let bad = || format!("line {}: bad value {:?} for {}", n + 1, v, k);
            match k.as_str() {
                "primes" | "p" => o.primes = Some(parse_list(&k, v)?),
                "val_bound" => o.val_bound = Some(v.parse().with_context(bad)?),
                "weights" => o.weights = Some(parse_list(&k, v)?),
                "samples" => o.samples = Some(v.parse().with_context(bad)?),
                "seed" => o.seed = Some(v.parse().with_context(bad)?),
                "tol" => o.tol = Some(v.parse().with_context(bad)?),
                "format" => {
                    o.format = Some(match v {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        _ => bail!(bad()),
                    })
                }
                "out" => o.out = Some(PathBuf::from(v)),
                _ => bail!("line {}: unknown key {:?}", n + 1, k),
            }
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse_file_contents(&text)
    }

    /// Fields set in `other` win.
    pub fn then(self, other: Overrides) -> Overrides {
        Overrides {
            primes: other.primes.or(self.primes),
            val_bound: other.val_bound.or(self.val_bound),
            weights: other.weights.or(self.weights),
            samples: other.samples.or(self.samples),
            seed: other.seed.or(self.seed),
            tol: other.tol.or(self.tol),
            format: other.format.or(self.format),
            out: other.out.or(self.out),
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl SuiteConfig {
    pub fn resolve(o: Overrides) -> Result<Self> {
        let d = SuiteConfig::default();
        let c = SuiteConfig {
            primes: o.primes.unwrap_or(d.primes),
            val_bound: o.val_bound.unwrap_or(d.val_bound),
            weights: o.weights.unwrap_or(d.weights),
            samples: o.samples.unwrap_or(d.samples),
            seed: o.seed.unwrap_or(d.seed),
            tol: o.tol.unwrap_or(d.tol),
            format: o.format.unwrap_or(d.format),
            out: o.out,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            bail!("at least one prime is required");
        }
        if let Some(p) = self.primes.iter().find(|p| !is_prime(**p)) {
            bail!("{} is not prime", p);
        }
        if let Some(w) = self.weights.iter().find(|w| **w < 2 || **w % 2 != 0 || **w > MAX_WEIGHT) {
            bail!("weight {} must be even, at least 2 and at most {}", w, MAX_WEIGHT);
        }
        if self.val_bound > MAX_VAL_BOUND {
            bail!("val-bound {} exceeds {}", self.val_bound, MAX_VAL_BOUND);
        }
        if self.samples == 0 {
            bail!("samples must be positive");
        }
        if !(self.tol > 0.0) {
            bail!("tol must be positive");
        }
        Ok(())
    }
}
