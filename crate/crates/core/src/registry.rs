//! Built-in Cartan data with a canonical word and, for finite types, a reduced
//! longest word. Extra data can be supplied as `<name>.json` Cartan files in the
//! directory named by `CRYSTALPOLY_BUILTIN_DIR`.

use std::path::PathBuf;

use crate::cartan::{CartanData, Sequence};
use crate::error::{Error, Result};
use crate::special::ReducedWord;

pub const BUILTIN_DIR_ENV: &str = "CRYSTALPOLY_BUILTIN_DIR";

#[derive(Debug, Clone)]
pub struct Builtin {
    pub name: String,
    pub cartan: CartanData,
    /// Periodic word used when none is given.
    pub iota: Sequence,
    /// A reduced longest word in position order, for finite types.
    pub longest_word: Option<ReducedWord>,
}

impl Builtin {
    pub fn longest_length(&self) -> Option<usize> {
        self.longest_word.as_ref().map(ReducedWord::len)
    }

    /// `(c1, c2)` for rank-2 data.
    pub fn rank2_pair(&self) -> Option<(i64, i64)> {
        (self.cartan.rank() == 2).then(|| (-self.cartan.pairing(1, 2), -self.cartan.pairing(2, 1)))
    }
}

pub const BUILTIN_NAMES: [&str; 7] = ["a1xa1", "a2", "b2", "c2", "g2", "a1tilde", "an(n)"];

fn rank2(name: &str, c1: u32, c2: u32, word: Option<Vec<usize>>) -> Result<Builtin> {
    let cartan = CartanData::rank2(c1, c2)?;
    let longest_word = match word {
        Some(w) => {
            let len = w.len();
            Some(ReducedWord::new(w, &cartan, len)?)
        }
        None => None,
    };
    Ok(Builtin {
        name: name.into(),
        iota: Sequence::new(vec![1, 2], 2)?,
        cartan,
        longest_word,
    })
}

/// `1..n, 1..n-1, …, 1` in position order: the nonzero positions of the
/// periodic `A_n` word.
pub fn type_a_longest_word(n: usize) -> Vec<usize> {
    (0..n).flat_map(|skip| 1..=n - skip).collect()
}

fn type_a(n: usize) -> Result<Builtin> {
    let cartan = CartanData::type_a(n)?;
    let longest = n * (n + 1) / 2;
    Ok(Builtin {
        name: format!("a{n}"),
        iota: Sequence::new((1..=n).collect(), n)?,
        longest_word: Some(ReducedWord::new(type_a_longest_word(n), &cartan, longest)?),
        cartan,
    })
}

fn parse_type_a(name: &str) -> Option<usize> {
    let digits = name
        .strip_prefix("an(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| name.strip_prefix('a'))?;
    digits.parse::<usize>().ok().filter(|&n| n >= 1)
}

pub fn lookup(name: &str) -> Result<Builtin> {
    let key = name.trim().to_ascii_lowercase();
    match key.as_str() {
        "a1xa1" => rank2("a1xa1", 0, 0, Some(vec![1, 2])),
        "b2" => rank2("b2", 2, 1, Some(vec![1, 2, 1, 2])),
        "c2" => rank2("c2", 1, 2, Some(vec![1, 2, 1, 2])),
        "g2" => rank2("g2", 1, 3, Some(vec![1, 2, 1, 2, 1, 2])),
        "a1tilde" => rank2("a1tilde", 2, 2, None),
        _ => {
            if let Some(n) = parse_type_a(&key) {
                return type_a(n);
            }
            from_dir(&key)
        }
    }
}

fn from_dir(name: &str) -> Result<Builtin> {
    let Some(dir) = std::env::var_os(BUILTIN_DIR_ENV) else {
        return Err(Error::UnknownBuiltin(name.into()));
    };
    if name.contains(['/', '\\']) || name.starts_with('.') {
        return Err(Error::UnknownBuiltin(name.into()));
    }
    let path = PathBuf::from(dir).join(format!("{name}.json"));
    if !path.is_file() {
        return Err(Error::UnknownBuiltin(name.into()));
    }
    let cartan = CartanData::from_json(&std::fs::read_to_string(path)?)?;
    let n = cartan.rank();
    Ok(Builtin {
        name: name.into(),
        iota: Sequence::new((1..=n).collect(), n)?,
        cartan,
        longest_word: None,
    })
}
