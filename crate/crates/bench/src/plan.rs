use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use phaseshift::{EngineConfig, TolerancePolicy, Variant};

use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    #[value(name = "by_k")]
    ByK,
    #[value(name = "by_n", alias = "by_N")]
    ByN,
    #[value(name = "by_sigma")]
    BySigma,
}

impl Sweep {
    /// CSV column that varies along the sweep.
    pub fn column(self) -> &'static str {
        match self {
            Sweep::ByK => "k",
            Sweep::ByN => "N",
            Sweep::BySigma => "sigma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Det,
    Lv,
}

impl VariantArg {
    pub fn label(self) -> &'static str {
        match self {
            VariantArg::Det => "det",
            VariantArg::Lv => "lv",
        }
    }
}

impl fmt::Display for VariantArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdaptiveArg {
    On,
    Off,
}

/// Engine settings shared by every grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineTemplate {
    pub variant: VariantArg,
    pub adaptive: bool,
    pub c1: f64,
    pub c2: f64,
    /// `ε = 1/(epsilon_denom·N)`.
    pub epsilon_denom: f64,
    /// Fixed aliasing tolerance; `None` keeps `τ = p/N`.
    pub tau: Option<f64>,
    pub max_passes: Option<usize>,
}

impl Default for EngineTemplate {
    fn default() -> Self {
        Self {
            variant: VariantArg::Det,
            adaptive: true,
            c1: 5.0,
            c2: 10.0,
            epsilon_denom: 2.0,
            tau: None,
            max_passes: None,
        }
    }
}

impl EngineTemplate {
    /// Concrete configuration for one trial.
    pub fn config(&self, n: u64, sigma: f64, seed: u64) -> EngineConfig {
        let mut cfg = EngineConfig::new(n);
        cfg.variant = match self.variant {
            VariantArg::Det => Variant::Deterministic,
            VariantArg::Lv => Variant::LasVegas,
        };
        cfg.adaptive = self.adaptive;
        cfg.c1 = self.c1;
        cfg.c2 = self.c2;
        cfg.epsilon = 1.0 / (self.epsilon_denom * n as f64);
        if let Some(t) = self.tau {
            cfg.tolerance = TolerancePolicy::Fixed(t);
        }
        cfg.max_passes = self.max_passes;
        cfg.seed = seed;
        if sigma > 0.0 {
            cfg = cfg.noisy(sigma);
        }
        cfg
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub k: usize,
    pub n: u64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub sweep: Sweep,
    pub ks: Vec<usize>,
    pub ns: Vec<u64>,
    pub sigmas: Vec<f64>,
    pub trials: usize,
    pub engine: EngineTemplate,
    pub out: Option<PathBuf>,
    /// Trial `i` uses seed `seed + i`.
    pub seed: u64,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<(), BenchError> {
        let usage = |m: String| Err(BenchError::Usage(m));
        if self.ks.is_empty() || self.ns.is_empty() || self.sigmas.is_empty() {
            return usage("every grid axis needs at least one value".into());
        }
        if self.trials == 0 {
            return usage("--trials must be at least 1".into());
        }
        for &n in &self.ns {
            if n < 2 || n % 2 != 0 {
                return usage(format!("bandwidth {n} must be even and at least 2"));
            }
        }
        for &k in &self.ks {
            if k == 0 {
                return usage("k must be at least 1".into());
            }
            for &n in &self.ns {
                if k as u64 > n / 2 {
                    return usage(format!("k={k} exceeds N/2 for N={n}"));
                }
            }
        }
        for &s in &self.sigmas {
            if !(s >= 0.0 && s.is_finite()) {
                return usage(format!("sigma {s} must be finite and nonnegative"));
            }
        }
        let e = &self.engine;
        if !(e.c1 > 1.0 && e.c1.is_finite()) {
            return usage("--c1 must exceed 1".into());
        }
        if e.variant == VariantArg::Lv && !(e.c2 > e.c1 && e.c2.is_finite()) {
            return usage("--c2 must exceed --c1".into());
        }
        if !(e.epsilon_denom >= 1.0 && e.epsilon_denom.is_finite()) {
            return usage("--epsilon-denom must be at least 1".into());
        }
        if let Some(t) = e.tau {
            if !(t > 0.0 && t < 1.0) {
                return usage("--tau must lie in (0, 1)".into());
            }
        }
        if e.max_passes == Some(0) {
            return usage("--max-passes must be at least 1".into());
        }
        Ok(())
    }

    /// Grid points in output order: bandwidth, then sparsity, then noise,
    /// each in the order given.
    pub fn grid(&self) -> Vec<GridPoint> {
        let mut out = Vec::new();
        for &n in &self.ns {
            for &k in &self.ks {
                for &sigma in &self.sigmas {
                    out.push(GridPoint { k, n, sigma });
                }
            }
        }
        out
    }
}

/// Parses `1048576`, `2^20` or `1<<20`.
pub fn parse_size(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let pow = |base: &str, exp: &str| -> Result<u64, String> {
        let b: u64 = base.trim().parse().map_err(|e| format!("{s}: {e}"))?;
        let e: u32 = exp.trim().parse().map_err(|e| format!("{s}: {e}"))?;
        b.checked_pow(e).ok_or_else(|| format!("{s}: overflow"))
    };
    if let Some((b, e)) = s.split_once('^') {
        pow(b, e)
    } else if let Some((a, sh)) = s.split_once("<<") {
        let a: u64 = a.trim().parse().map_err(|e| format!("{s}: {e}"))?;
        let sh: u32 = sh.trim().parse().map_err(|e| format!("{s}: {e}"))?;
        a.checked_shl(sh)
            .filter(|v| v >> sh == a)
            .ok_or_else(|| format!("{s}: overflow"))
    } else {
        s.parse().map_err(|e| format!("{s}: {e}"))
    }
}
