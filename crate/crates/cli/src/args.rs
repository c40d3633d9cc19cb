use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use hgc_core::{Flavor, Parameters, Sector, Window};
use serde::Deserialize;

use crate::Usage;

#[derive(Parser, Debug)]
#[command(name = "hgc", version, about = "Exact computations in hairy graph complexes")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format for reports.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for sweeps; never changes results.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file with default values; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffKind {
    Split,
    Join,
    Full,
    Prime,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ParamArgs {
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct WindowArgs {
    /// A, Abar or Aprime.
    #[arg(long)]
    pub flavor: Option<String>,
    /// all, trees, ut, w0 or primed.
    #[arg(long)]
    pub sector: Option<String>,
    /// Maximum number of internal vertices.
    #[arg(long = "max-v")]
    pub max_v: Option<usize>,
    /// Maximum number of hairs.
    #[arg(long = "max-h")]
    pub max_h: Option<usize>,
    /// Maximum number of edges; defaults to the trivalent bound.
    #[arg(long = "max-e")]
    pub max_e: Option<usize>,
    /// Shorthand for the bounds, e.g. `V=5,H=5` or `V=4,H=4,E=7`.
    #[arg(long)]
    pub window: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List canonical basis graphs by degree.
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Apply a differential to a graph or formal sum.
    Diff {
        #[arg(long, value_enum)]
        kind: DiffKind,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check d∘d = 0 on every basis graph of a window.
    D2check {
        #[command(flatten)]
        params: ParamArgs,
        /// Without --flavor all three differentials are checked.
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Betti numbers of a sector.
    Homology {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        window: WindowArgs,
        /// `d` or `a..b`; without window bounds the covering window is used.
        #[arg(long)]
        degree: Option<String>,
    },
    /// Betti numbers of the mapping cone of Abar → A.
    Cone {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        degree: Option<String>,
    },
    /// The map Φ from the primed complex.
    Phi {
        #[command(subcommand)]
        action: PhiCommand,
    },
    /// L∞ relations.
    Linf {
        #[command(subcommand)]
        action: LinfCommand,
    },
    /// Maurer–Cartan checks.
    Mc {
        #[command(subcommand)]
        action: McCommand,
    },
    /// Apply the differential twisted by a Maurer–Cartan element.
    Twist {
        #[arg(long)]
        pi: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Nonvanishing of the named diagrams against their parity rules.
    ParityTable {
        /// `small` or a list such as `2,5;3,7`.
        #[arg(long, default_value = "small")]
        grid: String,
    },
    /// Run the acceptance criteria.
    VerifyAll {
        #[arg(long, default_value = "small")]
        grid: String,
        /// Subset of criteria, e.g. `2,3,4`.
        #[arg(long, value_delimiter = ',')]
        criteria: Option<Vec<u8>>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PhiCommand {
    /// Chain map, factorization and round trip on a window.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Φ of a primed element.
    Apply {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum LinfCommand {
    /// Arity 2 runs over all pairs; arity 3 over seeded random triples.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        arity: u8,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum McCommand {
    Check {
        /// Lomega or Tomega, or any named diagram.
        #[arg(long)]
        name: String,
        #[command(flatten)]
        params: ParamArgs,
    },
}

/// Defaults read from `--config`.
#[derive(Deserialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub flavor: Option<String>,
    pub sector: Option<String>,
    pub max_v: Option<usize>,
    pub max_h: Option<usize>,
    pub max_e: Option<usize>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Config> {
        let Some(path) = path else { return Ok(Config::default()) };
        let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
        Ok(serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?)
    }
}

pub const DEFAULT_MAX: usize = 4;

impl ParamArgs {
    pub fn resolve(&self, cfg: &Config) -> anyhow::Result<Parameters> {
        let m = self.m.or(cfg.m).ok_or_else(|| Usage("--m is required".into()))?;
        let n = self.n.or(cfg.n).ok_or_else(|| Usage("--n is required".into()))?;
        Ok(Parameters::new(m, n)?)
    }
}

/// Parse `V=5,H=5[,E=7]`.
fn parse_window_spec(s: &str) -> anyhow::Result<(Option<usize>, Option<usize>, Option<usize>)> {
    let (mut v, mut h, mut e) = (None, None, None);
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, val) = part.split_once('=').ok_or_else(|| Usage(format!("bad window entry {part:?}")))?;
        let val: usize = val.trim().parse().map_err(|_| Usage(format!("bad window entry {part:?}")))?;
        match key.trim() {
            "V" | "v" => v = Some(val),
            "H" | "h" => h = Some(val),
            "E" | "e" => e = Some(val),
            other => return Err(Usage(format!("unknown window key {other:?}")).into()),
        }
    }
    Ok((v, h, e))
}

impl WindowArgs {
    pub fn flavor(&self, cfg: &Config) -> anyhow::Result<Option<Flavor>> {
        Ok(self.flavor.as_deref().or(cfg.flavor.as_deref()).map(Flavor::from_name).transpose()?)
    }

    pub fn sector(&self, cfg: &Config) -> anyhow::Result<Sector> {
        Ok(self.sector.as_deref().or(cfg.sector.as_deref()).map(Sector::from_name).transpose()?.unwrap_or(Sector::All))
    }

    /// Explicit bounds, if any were given.
    pub fn bounds(&self, cfg: &Config) -> anyhow::Result<Option<(usize, usize, Option<usize>)>> {
        let (wv, wh, we) = match &self.window {
            Some(s) => parse_window_spec(s)?,
            None => (None, None, None),
        };
        let v = self.max_v.or(wv).or(cfg.max_v);
        let h = self.max_h.or(wh).or(cfg.max_h);
        let e = self.max_e.or(we).or(cfg.max_e);
        Ok(match (v, h) {
            (None, None) => None,
            (v, h) => Some((v.unwrap_or(DEFAULT_MAX), h.unwrap_or(DEFAULT_MAX), e)),
        })
    }

    pub fn build(&self, p: Parameters, flavor: Flavor, sector: Sector, cfg: &Config) -> anyhow::Result<Window> {
        let (v, h, e) = self.bounds(cfg)?.unwrap_or((DEFAULT_MAX, DEFAULT_MAX, None));
        let w = Window::new(p, flavor, sector, v, h)?;
        Ok(match e {
            Some(e) => w.with_max_edges(e),
            None => w,
        })
    }
}

/// Parse `d` or `a..b` (inclusive).
pub fn parse_degrees(s: &str) -> anyhow::Result<std::ops::RangeInclusive<i64>> {
    let bad = || Usage(format!("bad degree range {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: i64 = a.parse().map_err(|_| bad())?;
    let b: i64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad().into());
    }
    Ok(a..=b)
}

/// `small` or `m,n;m,n;...`.
pub fn parse_grid(s: &str) -> anyhow::Result<Vec<Parameters>> {
    if s == "small" {
        return Ok(hgc_core::verify::small_grid());
    }
    s.split(';')
        .map(|pair| {
            let (m, n) = pair.split_once(',').ok_or_else(|| Usage(format!("bad grid entry {pair:?}")))?;
            let m: u32 = m.trim().parse().map_err(|_| Usage(format!("bad grid entry {pair:?}")))?;
            let n: u32 = n.trim().parse().map_err(|_| Usage(format!("bad grid entry {pair:?}")))?;
            Ok(Parameters::new(m, n)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_spec() {
        assert_eq!(parse_window_spec("V=5,H=5").unwrap(), (Some(5), Some(5), None));
        assert_eq!(parse_window_spec("V=4, H=3, E=7").unwrap(), (Some(4), Some(3), Some(7)));
        assert!(parse_window_spec("X=1").is_err());
        assert!(parse_window_spec("V=a").is_err());
    }

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("3").unwrap(), 3..=3);
        assert_eq!(parse_degrees("-1..4").unwrap(), -1..=4);
        assert_eq!(parse_degrees("1..=2").unwrap(), 1..=2);
        assert!(parse_degrees("4..1").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("small").unwrap().len(), 4);
        assert_eq!(parse_grid("2,5;3,7").unwrap().len(), 2);
        assert!(parse_grid("2,4").is_err());
    }

    #[test]
    fn flags_override_config() {
        let cfg = Config { m: Some(3), n: Some(7), max_v: Some(2), ..Config::default() };
        let p = ParamArgs { m: Some(2), n: None }.resolve(&cfg).unwrap();
        assert_eq!((p.m(), p.n()), (2, 7));
        let w = WindowArgs { max_h: Some(3), ..WindowArgs::default() };
        assert_eq!(w.bounds(&cfg).unwrap(), Some((2, 3, None)));
    }
}
