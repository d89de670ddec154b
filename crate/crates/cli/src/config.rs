use std::path::PathBuf;

use clap::{Args, ValueEnum};
use crystalpoly::registry::{self, Builtin};
use crystalpoly::{CartanData, Error, Mode, Sequence, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Generate,
    Rank2,
    An,
    GoldenIota1,
    GoldenIota0,
}

/// Where the Cartan datum, word and weight come from.
#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Built-in type: a1xa1, a2, b2, c2, g2, a1tilde, a<n> or an(<n>).
    #[arg(long, conflicts_with = "cartan")]
    pub builtin: Option<String>,

    /// JSON Cartan file `{"rank": n, "matrix": [[..]], "labels": [..]}`.
    #[arg(long)]
    pub cartan: Option<PathBuf>,

    /// Index word, leftmost token is i_1 (e.g. "1 2" or "1,2,3").
    #[arg(long)]
    pub iota: Option<String>,

    /// Highest weight as comma-separated pairings ⟨h_i, λ⟩.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "binf")]
    pub lambda: Option<String>,

    /// Work in B(∞) instead of B(λ).
    #[arg(long)]
    pub binf: bool,

    /// Worker threads; values above 1 enable the parallel code paths.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

/// Validated settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cartan: CartanData,
    pub iota: Sequence,
    pub mode: Mode,
    pub support: usize,
    pub jobs: usize,
}

impl RunConfig {
    pub fn parallel(&self) -> bool {
        self.jobs > 1
    }

    pub fn lambda(&self) -> Option<&Weight> {
        self.mode.lambda()
    }
}

pub struct Resolved {
    pub cartan: CartanData,
    pub builtin: Option<Builtin>,
}

pub fn resolve_cartan(src: &SourceArgs) -> Result<Resolved, Error> {
    match (&src.builtin, &src.cartan) {
        (Some(name), _) => {
            let b = registry::lookup(name)?;
            Ok(Resolved {
                cartan: b.cartan.clone(),
                builtin: Some(b),
            })
        }
        (None, Some(path)) => Ok(Resolved {
            cartan: CartanData::from_json(&std::fs::read_to_string(path)?)?,
            builtin: None,
        }),
        (None, None) => Err(Error::Parse("pass --builtin or --cartan".into())),
    }
}

pub fn parse_mode(src: &SourceArgs, rank: usize) -> Result<Mode, Error> {
    match (&src.lambda, src.binf) {
        (Some(text), _) => {
            let w: Weight = text.parse()?;
            w.check_rank(rank)?;
            if !w.is_dominant() {
                return Err(Error::InvalidWeight(format!("{w} is not dominant")));
            }
            Ok(Mode::Highest(w))
        }
        (None, true) => Ok(Mode::Infinity),
        (None, false) => Err(Error::Parse("pass --lambda or --binf".into())),
    }
}

/// Builds the run configuration.
///
/// The word defaults to the built-in's periodic word, then to `1 2 … n`. The
/// support bound defaults to `max(ℓ(w_0), depth + period - 1)`, which covers every
/// position a depth-`depth` element reached so far in practice; an explicit bound
/// below `max(depth, 1)` is rejected.
pub fn build(src: &SourceArgs, depth: usize, support: Option<usize>) -> Result<RunConfig, Error> {
    let Resolved { cartan, builtin } = resolve_cartan(src)?;
    let rank = cartan.rank();
    let iota = match (&src.iota, &builtin) {
        (Some(text), _) => Sequence::parse(text, rank)?,
        (None, Some(b)) => b.iota.clone(),
        (None, None) => Sequence::new((1..=rank).collect(), rank)?,
    };
    let mode = parse_mode(src, rank)?;
    let floor = depth.max(1);
    let support = match support {
        Some(k) if k < floor => {
            return Err(Error::Parse(format!(
                "--support {k} is below max(depth, 1) = {floor}"
            )));
        }
        Some(k) => k,
        None => builtin
            .as_ref()
            .and_then(Builtin::longest_length)
            .unwrap_or(0)
            .max(floor + iota.period().len() - 1),
    };
    if src.jobs == 0 {
        return Err(Error::Parse("--jobs must be at least 1".into()));
    }
    Ok(RunConfig {
        cartan,
        iota,
        mode,
        support,
        jobs: src.jobs,
    })
}
