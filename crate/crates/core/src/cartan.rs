//! Cartan data, weights and index sequences.
//!
//! Indices `i ∈ I` and sequence positions `k` are 1-based throughout the public
//! API. A weight is stored by its pairings `⟨h_i, λ⟩`, which is all any of the
//! crystal formulas consume.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generalized Cartan matrix `a[i][j] = ⟨h_i, α_j⟩`.
///
/// Symmetrizability is not checked: nothing in this crate uses the invariant
/// inner product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanData {
    pairing: Vec<Vec<i64>>,
    labels: Option<Vec<String>>,
}

/// On-disk form: `{"rank": n, "matrix": [[...]], "labels": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CartanFile {
    pub rank: usize,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl CartanData {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartan(format!(
                    "row {} has length {}, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!(
                    "diagonal entry ({0},{0}) is {1}, expected 2",
                    i + 1,
                    row[i]
                )));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if a > 0 {
                    return Err(Error::InvalidCartan(format!(
                        "off-diagonal entry ({},{}) is positive",
                        i + 1,
                        j + 1
                    )));
                }
                if (a == 0) != (matrix[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "zero pattern is not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self {
            pairing: matrix,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.rank() {
            return Err(Error::InvalidCartan(format!(
                "{} labels for rank {}",
                labels.len(),
                self.rank()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// The rank-2 datum with `⟨h_1,α_2⟩ = -c1` and `⟨h_2,α_1⟩ = -c2`.
    pub fn rank2(c1: u32, c2: u32) -> Result<Self> {
        Self::new(vec![vec![2, -(c1 as i64)], vec![-(c2 as i64), 2]])
    }

    /// Type `A_n` with the standard labelling.
    pub fn type_a(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCartan("A_0 has no simple roots".into()));
        }
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Self::new(matrix)
    }

    pub fn from_file(file: CartanFile) -> Result<Self> {
        if file.rank != file.matrix.len() {
            return Err(Error::InvalidCartan(format!(
                "rank {} does not match a {}-row matrix",
                file.rank,
                file.matrix.len()
            )));
        }
        let data = Self::new(file.matrix)?;
        match file.labels {
            Some(labels) => data.with_labels(labels),
            None => Ok(data),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> CartanFile {
        CartanFile {
            rank: self.rank(),
            matrix: self.pairing.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pairing.len()
    }

    /// `⟨h_i, α_j⟩` for 1-based `i`, `j`.
    #[inline]
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.pairing[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// Indices `1..=rank`.
    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank()
    }
}

/// A weight in pairing coordinates: `coeffs[i-1] = ⟨h_i, λ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    coeffs: Vec<i64>,
}

impl Weight {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coeffs: vec![0; rank],
        }
    }

    /// The fundamental weight `Λ_i` (1-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i - 1] = 1;
        Self { coeffs }
    }

    pub fn dominant_for(cartan: &CartanData, coeffs: Vec<i64>) -> Result<Self> {
        let w = Self::new(coeffs);
        w.check_rank(cartan.rank())?;
        if !w.is_dominant() {
            return Err(Error::InvalidWeight(format!("{w} is not dominant")));
        }
        Ok(w)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.coeffs.len() != rank {
            return Err(Error::InvalidWeight(format!(
                "{} coefficients for rank {rank}",
                self.coeffs.len()
            )));
        }
        Ok(())
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// `⟨h_i, λ⟩` (1-based).
    #[inline]
    pub fn pairing(&self, i: usize) -> i64 {
        self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `"1,0,2"` (commas and/or whitespace).
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = split_tokens(s)
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coefficient `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        Ok(Self::new(coeffs))
    }
}

fn split_tokens(s: &str) -> impl Iterator<Item = &str> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
}

/// An infinite index sequence `ι = ⋯ i_2 i_1`, stored as a period
/// `(i_1, …, i_m)` repeated forever.
///
/// Every index of the Cartan datum must occur in the period, so each index
/// occurs infinitely often in `ι`. Adjacent repeats (`i_k = i_{k+1}`) are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    period: Vec<usize>,
}

impl Sequence {
    pub fn new(period: Vec<usize>, rank: usize) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidSequence("empty period".into()));
        }
        if let Some(&bad) = period.iter().find(|&&i| i == 0 || i > rank) {
            return Err(Error::InvalidSequence(format!(
                "index {bad} outside 1..={rank}"
            )));
        }
        for i in 1..=rank {
            if !period.contains(&i) {
                return Err(Error::InvalidSequence(format!(
                    "index {i} never occurs, so it is not repeated infinitely often"
                )));
            }
        }
        Ok(Self { period })
    }

    /// Parses a space/comma separated word; the leftmost token is `i_1`.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let period = split_tokens(s)
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad sequence index `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(period, rank)
    }

    pub fn period(&self) -> &[usize] {
        &self.period
    }

    /// `i_k` for `k ≥ 1`.
    #[inline]
    pub fn index(&self, k: usize) -> usize {
        debug_assert!(k >= 1);
        self.period[(k - 1) % self.period.len()]
    }

    /// `k^(+)`: the next position after `k` carrying the same index.
    pub fn k_plus(&self, k: usize) -> usize {
        let i = self.index(k);
        (k + 1..=k + self.period.len())
            .find(|&l| self.index(l) == i)
            .expect("every period position recurs within one period")
    }

    /// `k^(-)`: the previous position carrying the same index, or 0.
    pub fn k_minus(&self, k: usize) -> usize {
        let i = self.index(k);
        (1..k).rev().find(|&l| self.index(l) == i).unwrap_or(0)
    }

    /// `ι^(i)`: the first position carrying index `i`.
    pub fn iota_first(&self, i: usize) -> usize {
        self.period
            .iter()
            .position(|&j| j == i)
            .map(|p| p + 1)
            .expect("sequence contains every index")
    }

    /// Positions `1..=len` as `(k, i_k)`.
    pub fn positions(&self, len: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=len).map(move |k| (k, self.index(k)))
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.period.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}
