//! The crystal structures on finitely supported integer sequences `(…, x_2, x_1)`
//! indexed by a periodic word `ι`, realizing `B(∞)` and `B(λ)`.
//!
//! Position `k` carries the index `i_k`. With
//!
//! ```text
//! σ_k       = x_k + Σ_{j>k} ⟨h_{i_k}, α_{i_j}⟩ x_j
//! σ_0^(i)   = -⟨h_i, λ⟩ + Σ_{j≥1} ⟨h_i, α_{i_j}⟩ x_j
//! σ^(i)     = max_{k : i_k = i} σ_k
//! M^(i)     = { k : i_k = i, σ_k = σ^(i) }
//! ```
//!
//! `f̃_i` adds 1 at `min M^(i)` and `ẽ_i` subtracts 1 at `max M^(i)`. In highest
//! weight mode `f̃_i` vanishes unless `σ^(i) > σ_0^(i)` and `ẽ_i` vanishes unless
//! `σ^(i) > 0` and `σ^(i) ≥ σ_0^(i)`. In `B(∞)` mode the `σ_0` comparisons are
//! dropped.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Sequence, Weight};
use crate::crystal::{
    check_strict_morphism, connected_component, connected_component_par, Crystal, ExtInt, Letter,
    TensorCrystal, TensorElem, Violation, ViolationKind,
};
use crate::error::{Error, Result};
use crate::graph::CrystalGraph;

/// Which crystal the coordinates realize.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "binf")]
    Infinity,
    #[serde(rename = "lambda")]
    Highest(Weight),
}

impl Mode {
    pub fn lambda(&self) -> Option<&Weight> {
        match self {
            Mode::Infinity => None,
            Mode::Highest(w) => Some(w),
        }
    }
}

/// A finitely supported integer sequence; only nonzero entries are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZVector {
    coords: BTreeMap<usize, i64>,
}

impl ZVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_map(coords: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let mut v = Self::zero();
        for (k, x) in coords {
            if k == 0 {
                return Err(Error::Parse("positions start at 1".into()));
            }
            v.set(k, x);
        }
        Ok(v)
    }

    /// `dense[0]` is `x_1`, `dense[1]` is `x_2`, and so on.
    pub fn from_dense(dense: &[i64]) -> Self {
        let mut v = Self::zero();
        for (k, &x) in dense.iter().enumerate() {
            v.set(k + 1, x);
        }
        v
    }

    /// `(x_1, …, x_len)`.
    pub fn to_dense(&self, len: usize) -> Vec<i64> {
        (1..=len).map(|k| self.get(k)).collect()
    }

    pub fn get(&self, k: usize) -> i64 {
        self.coords.get(&k).copied().unwrap_or(0)
    }

    pub fn set(&mut self, k: usize, x: i64) {
        if x == 0 {
            self.coords.remove(&k);
        } else {
            self.coords.insert(k, x);
        }
    }

    pub fn add(&mut self, k: usize, delta: i64) {
        self.set(k, self.get(k) + delta);
    }

    /// Largest position with a nonzero entry, 0 for the zero vector.
    pub fn support_max(&self) -> usize {
        self.coords.keys().next_back().copied().unwrap_or(0)
    }

    pub fn total(&self) -> i64 {
        self.coords.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.values().all(|&x| x >= 0)
    }

    pub fn coords(&self) -> &BTreeMap<usize, i64> {
        &self.coords
    }

    /// Converts to the tensor `(-x_len)_{i_len} ⊗ ⋯ ⊗ (-x_1)_{i_1}`, followed by
    /// `r_λ` when `lambda` is given.
    pub fn to_tensor(
        &self,
        seq: &Sequence,
        len: usize,
        lambda: Option<&Weight>,
    ) -> Result<TensorElem> {
        if self.support_max() > len {
            return Err(Error::SupportOverflow {
                position: self.support_max(),
                bound: len,
            });
        }
        let mut letters: Vec<Letter> = (1..=len)
            .rev()
            .map(|k| Letter::elem(seq.index(k), -self.get(k)))
            .collect();
        if let Some(w) = lambda {
            letters.push(Letter::Unit(w.clone()));
        }
        TensorElem::new(letters).map_err(|_| {
            Error::ShapeMismatch("cannot encode a zero-length tensor without r_λ".into())
        })
    }

    /// Inverse of [`ZVector::to_tensor`]: the rightmost elementary letter is position 1.
    pub fn from_tensor(t: &TensorElem, seq: &Sequence) -> Result<Self> {
        let pairs = t.pairs();
        let len = pairs.len();
        let mut v = Self::zero();
        for (offset, &(index, value)) in pairs.iter().enumerate() {
            let k = len - offset;
            if seq.index(k) != index {
                return Err(Error::ShapeMismatch(format!(
                    "letter at position {k} has index {index}, the word has {}",
                    seq.index(k)
                )));
            }
            v.set(k, -value);
        }
        Ok(v)
    }
}

impl fmt::Display for ZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.support_max();
        if len == 0 {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = (1..=len).rev().map(|k| self.get(k).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// JSON document `{"coords": {"k": x_k}, "mode": "binf" | {"lambda": [...]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZVectorDoc {
    pub coords: ZVector,
    pub mode: Mode,
}

/// `M^(i)` summary: `σ^(i)`, `min M^(i)`, and `max M^(i)` (`None` when infinite).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MSet {
    pub sigma: i64,
    pub min: usize,
    pub max: Option<usize>,
}

/// Everything the actions need, computed in one right-to-left sweep.
#[derive(Debug, Clone)]
struct Analysis {
    m: Vec<MSet>,
    /// `Σ_{j≥1} ⟨h_i, α_{i_j}⟩ x_j` per index.
    total: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct ZCrystal {
    cartan: CartanData,
    seq: Sequence,
    mode: Mode,
}

impl ZCrystal {
    pub fn new(cartan: CartanData, seq: Sequence, mode: Mode) -> Result<Self> {
        for &i in seq.period() {
            cartan.check_index(i)?;
        }
        if let Mode::Highest(ref w) = mode {
            w.check_rank(cartan.rank())?;
        }
        Ok(Self { cartan, seq, mode })
    }

    pub fn sequence(&self) -> &Sequence {
        &self.seq
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    pub fn sigma_k(&self, x: &ZVector, k: usize) -> i64 {
        let ik = self.seq.index(k);
        x.get(k)
            + x.coords
                .range(k + 1..)
                .map(|(&j, &xj)| self.cartan.pairing(ik, self.seq.index(j)) * xj)
                .sum::<i64>()
    }

    pub fn sigma_0(&self, x: &ZVector, i: usize) -> Result<i64> {
        let lambda = self.mode.lambda().ok_or_else(|| {
            Error::ModeMismatch("σ_0 is only defined in highest-weight mode".into())
        })?;
        self.cartan.check_index(i)?;
        Ok(-lambda.pairing(i) + self.analyze(x).total[i - 1])
    }

    pub fn m_set(&self, x: &ZVector, i: usize) -> MSet {
        self.analyze(x).m[i - 1]
    }

    fn analyze(&self, x: &ZVector) -> Analysis {
        let n = self.cartan.rank();
        let len = x.support_max();
        let mut suffix = vec![0i64; n];
        let mut best: Vec<Option<(i64, usize, usize)>> = vec![None; n];
        for k in (1..=len).rev() {
            let ik = self.seq.index(k);
            let sigma = x.get(k) + suffix[ik - 1];
            best[ik - 1] = Some(match best[ik - 1] {
                None => (sigma, k, k),
                Some((s, _, _)) if sigma > s => (sigma, k, k),
                Some((s, _, hi)) if sigma == s => (s, k, hi),
                Some(other) => other,
            });
            let xk = x.get(k);
            if xk != 0 {
                for l in 1..=n {
                    suffix[l - 1] += self.cartan.pairing(l, ik) * xk;
                }
            }
        }
        let m = (1..=n)
            .map(|i| {
                // Positions past the support all have σ_k = 0.
                let beyond = self.first_position_after(i, len);
                match best[i - 1] {
                    Some((s, lo, hi)) if s > 0 => MSet {
                        sigma: s,
                        min: lo,
                        max: Some(hi),
                    },
                    Some((0, lo, _)) => MSet {
                        sigma: 0,
                        min: lo,
                        max: None,
                    },
                    _ => MSet {
                        sigma: 0,
                        min: beyond,
                        max: None,
                    },
                }
            })
            .collect();
        Analysis { m, total: suffix }
    }

    fn first_position_after(&self, i: usize, len: usize) -> usize {
        let mut k = len + 1;
        while self.seq.index(k) != i {
            k += 1;
        }
        k
    }

    fn sigma0_of(&self, a: &Analysis, i: usize) -> Option<i64> {
        self.mode.lambda().map(|w| -w.pairing(i) + a.total[i - 1])
    }

    fn weight_of(&self, a: &Analysis) -> Vec<i64> {
        self.cartan
            .indices()
            .map(|j| self.mode.lambda().map_or(0, |w| w.pairing(j)) - a.total[j - 1])
            .collect()
    }

    /// `(⟨h_j, wt⟩ for all j, ε_i for all i, φ_i for all i)`.
    pub fn wt_eps_phi(&self, x: &ZVector) -> (Vec<i64>, Vec<i64>, Vec<i64>) {
        let a = self.analyze(x);
        let wt = self.weight_of(&a);
        let eps: Vec<i64> = self
            .cartan
            .indices()
            .map(|i| self.eps_from(&a, i))
            .collect();
        let phi = eps.iter().zip(&wt).map(|(e, w)| e + w).collect();
        (wt, eps, phi)
    }

    fn eps_from(&self, a: &Analysis, i: usize) -> i64 {
        let s = a.m[i - 1].sigma;
        match self.sigma0_of(a, i) {
            Some(s0) => s.max(s0),
            None => s,
        }
    }

    /// The crystal element at the root of every BFS: the zero vector.
    pub fn highest(&self) -> ZVector {
        ZVector::zero()
    }

    pub fn bfs(&self, depth: usize) -> CrystalGraph<ZVector> {
        connected_component(self, ZVector::zero(), depth)
    }

    pub fn bfs_par(&self, depth: usize) -> CrystalGraph<ZVector> {
        connected_component_par(self, ZVector::zero(), depth)
    }
}

impl Crystal for ZCrystal {
    type Elem = ZVector;

    fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    fn weight(&self, x: &ZVector) -> Vec<i64> {
        self.weight_of(&self.analyze(x))
    }

    fn epsilon(&self, x: &ZVector, i: usize) -> ExtInt {
        ExtInt::Fin(self.eps_from(&self.analyze(x), i))
    }

    fn phi(&self, x: &ZVector, i: usize) -> ExtInt {
        let a = self.analyze(x);
        ExtInt::Fin(self.eps_from(&a, i) + self.weight_of(&a)[i - 1])
    }

    fn f_tilde(&self, x: &ZVector, i: usize) -> Option<ZVector> {
        let a = self.analyze(x);
        let m = a.m[i - 1];
        if let Some(s0) = self.sigma0_of(&a, i) {
            if m.sigma <= s0 {
                return None;
            }
        }
        let mut out = x.clone();
        out.add(m.min, 1);
        Some(out)
    }

    fn e_tilde(&self, x: &ZVector, i: usize) -> Option<ZVector> {
        let a = self.analyze(x);
        let m = a.m[i - 1];
        if m.sigma <= 0 {
            return None;
        }
        if let Some(s0) = self.sigma0_of(&a, i) {
            if m.sigma < s0 {
                return None;
            }
        }
        let mut out = x.clone();
        out.add(m.max.expect("finite when σ > 0"), -1);
        Some(out)
    }
}

/// Enumerates `f̃`-descendants of the zero vector up to `depth`.
pub fn bfs_enumerate(
    cartan: &CartanData,
    seq: &Sequence,
    mode: Mode,
    depth: usize,
) -> Result<CrystalGraph<ZVector>> {
    Ok(ZCrystal::new(cartan.clone(), seq.clone(), mode)?.bfs(depth))
}

/// Checks the coordinate-to-tensor bridge `x ↦ (-x_len)_{i_len} ⊗ ⋯ ⊗ (-x_1)_{i_1} [⊗ r_λ]`
/// on `sample`: `wt`, `ε_i`, `φ_i` and `f̃_i` must agree exactly, as must `ẽ_i`
/// wherever it is nonzero on coordinates. Where `ẽ_i x = 0` the truncated tensor
/// has no `u_∞` head to absorb the action, so the tensor result is only required
/// to leave the nonnegative cone.
pub fn check_tensor_bridge(z: &ZCrystal, sample: &[ZVector], len: usize) -> Vec<Violation> {
    let cartan = z.cartan();
    let tensor = TensorCrystal::new(cartan);
    let lambda = z.mode().lambda();
    let encode = |x: &ZVector| x.to_tensor(z.sequence(), len, lambda).ok();
    let indices: Vec<usize> = cartan.indices().collect();
    let mut out = Vec::new();
    for x in sample {
        let lifted = encode(x);
        let Some(t) = lifted else {
            out.push(Violation {
                element: x.to_string(),
                index: None,
                kind: ViolationKind::Weight,
                detail: format!("support exceeds the tensor length {len}"),
            });
            continue;
        };
        let mut found =
            check_strict_morphism(z, &tensor, encode, std::slice::from_ref(x), &indices);
        found.retain(|v| v.kind != ViolationKind::CommutesE);
        out.extend(found);
        for &i in &indices {
            let te = tensor.e_tilde(&t, i);
            let ok = match z.e_tilde(x, i) {
                Some(ze) => encode(&ze) == te,
                None => te.is_none_or(|te| {
                    ZVector::from_tensor(&te, z.sequence()).is_ok_and(|v| !v.is_nonnegative())
                }),
            };
            if !ok {
                out.push(Violation {
                    element: x.to_string(),
                    index: Some(i),
                    kind: ViolationKind::CommutesE,
                    detail: "ẽ disagrees with the tensor action".into(),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::check_axioms;

    fn sl2() -> (CartanData, Sequence) {
        (
            CartanData::type_a(1).unwrap(),
            Sequence::new(vec![1], 1).unwrap(),
        )
    }

    fn a3_iota0() -> (CartanData, Sequence) {
        let c = CartanData::type_a(3).unwrap();
        let s = Sequence::parse("1 2 3 2 1 2", 3).unwrap();
        (c, s)
    }

    #[test]
    fn sigma_examples() {
        let (c, s) = sl2();
        let z = ZCrystal::new(c, s, Mode::Infinity).unwrap();
        let x = ZVector::from_dense(&[1]);
        assert_eq!(z.sigma_k(&x, 1), 1);
        assert_eq!(z.sigma_k(&x, 2), 0);

        let (c, s) = a3_iota0();
        let z = ZCrystal::new(c, s, Mode::Infinity).unwrap();
        assert_eq!(z.sigma_k(&x, 1), 1);
        assert_eq!(z.sigma_k(&x, 5), 0);
        assert!(z.sigma_0(&x, 1).is_err());
    }

    #[test]
    fn sigma0_examples() {
        let (c, s) = sl2();
        let z = ZCrystal::new(c, s, Mode::Highest(Weight::new(vec![2]))).unwrap();
        assert_eq!(z.sigma_0(&ZVector::zero(), 1).unwrap(), -2);
        assert_eq!(z.sigma_0(&ZVector::from_dense(&[1]), 1).unwrap(), 0);
    }

    #[test]
    fn m_set_examples() {
        let (c, s) = sl2();
        let z = ZCrystal::new(c, s, Mode::Infinity).unwrap();
        assert_eq!(
            z.m_set(&ZVector::zero(), 1),
            MSet {
                sigma: 0,
                min: 1,
                max: None
            }
        );
        assert_eq!(
            z.m_set(&ZVector::from_dense(&[1]), 1),
            MSet {
                sigma: 1,
                min: 1,
                max: Some(1)
            }
        );

        let c = CartanData::rank2(2, 2).unwrap();
        let s = Sequence::new(vec![1, 2], 2).unwrap();
        let z = ZCrystal::new(c, s, Mode::Infinity).unwrap();
        let m = z.m_set(&ZVector::from_dense(&[2, 1]), 1);
        assert_eq!(m.sigma, 0);
        assert_eq!(m.min, 1);
        assert_eq!(m.max, None);
    }

    #[test]
    fn min_m_can_lie_past_the_support() {
        let (c, s) = a3_iota0();
        let z = ZCrystal::new(c, s, Mode::Infinity).unwrap();
        assert_eq!(z.m_set(&ZVector::zero(), 3).min, 3);
        // x_1 = 1 gives σ_1 = 1 and σ_5 = 0; index 3 first appears at position 3.
        let x = ZVector::from_dense(&[1]);
        assert_eq!(z.m_set(&x, 3).min, 3);
        assert_eq!(z.m_set(&x, 1).min, 1);
    }

    #[test]
    fn sl2_actions() {
        let (c, s) = sl2();
        let z = ZCrystal::new(c.clone(), s.clone(), Mode::Highest(Weight::new(vec![2]))).unwrap();
        let x2 = z
            .f_tilde(&z.f_tilde(&ZVector::zero(), 1).unwrap(), 1)
            .unwrap();
        assert_eq!(x2, ZVector::from_dense(&[2]));
        assert_eq!(z.f_tilde(&x2, 1), None);
        assert_eq!(z.e_tilde(&x2, 1), Some(ZVector::from_dense(&[1])));
        assert_eq!(z.e_tilde(&ZVector::zero(), 1), None);

        let zi = ZCrystal::new(c.clone(), s.clone(), Mode::Infinity).unwrap();
        let mut x = ZVector::zero();
        for _ in 0..3 {
            x = zi.f_tilde(&x, 1).unwrap();
        }
        assert_eq!(x, ZVector::from_dense(&[3]));
        assert_eq!(zi.weight(&x), vec![-6]);
        assert_eq!(zi.e_tilde(&ZVector::zero(), 1), None);

        let z0 = ZCrystal::new(c, s, Mode::Highest(Weight::new(vec![0]))).unwrap();
        assert_eq!(z0.f_tilde(&ZVector::zero(), 1), None);
    }

    #[test]
    fn wt_eps_phi_at_zero() {
        let c = CartanData::type_a(2).unwrap();
        let s = Sequence::new(vec![1, 2], 2).unwrap();
        let z =
            ZCrystal::new(c.clone(), s.clone(), Mode::Highest(Weight::new(vec![1, 2]))).unwrap();
        assert_eq!(
            z.wt_eps_phi(&ZVector::zero()),
            (vec![1, 2], vec![0, 0], vec![1, 2])
        );
        let z = ZCrystal::new(c, s, Mode::Highest(Weight::new(vec![0, 0]))).unwrap();
        assert_eq!(
            z.wt_eps_phi(&ZVector::zero()),
            (vec![0, 0], vec![0, 0], vec![0, 0])
        );
    }

    #[test]
    fn a2_fundamental_bfs() {
        let c = CartanData::type_a(2).unwrap();
        let s = Sequence::new(vec![1, 2], 2).unwrap();
        let g = bfs_enumerate(&c, &s, Mode::Highest(Weight::new(vec![1, 0])), 4).unwrap();
        let mut nodes: Vec<ZVector> = g.nodes().to_vec();
        nodes.sort();
        let mut expected = vec![
            ZVector::zero(),
            ZVector::from_dense(&[1]),
            ZVector::from_dense(&[1, 1]),
        ];
        expected.sort();
        assert_eq!(nodes, expected);
    }

    #[test]
    fn bfs_depth_is_total() {
        let c = CartanData::rank2(1, 2).unwrap();
        let s = Sequence::new(vec![1, 2], 2).unwrap();
        let z = ZCrystal::new(c, s, Mode::Infinity).unwrap();
        let g = z.bfs(5);
        for (idx, x) in g.nodes().iter().enumerate() {
            assert_eq!(x.total(), g.depth(idx) as i64);
            assert!(x.coords().values().all(|&v| v > 0));
        }
        assert!(check_axioms(&z, g.nodes()).is_empty());
    }

    #[test]
    fn tensor_bridge_intertwines() {
        let (c, s) = a3_iota0();
        let lambda = Weight::new(vec![1, 1, 0]);
        let z = ZCrystal::new(c.clone(), s.clone(), Mode::Highest(lambda.clone())).unwrap();
        let g = z.bfs(4);
        let len = 4 + s.period().len();
        let v = check_tensor_bridge(&z, g.nodes(), len);
        assert!(v.is_empty(), "{v:?}");

        let zi = ZCrystal::new(c, s.clone(), Mode::Infinity).unwrap();
        let g = zi.bfs(4);
        assert!(check_tensor_bridge(&zi, g.nodes(), len).is_empty());
    }

    #[test]
    fn tensor_roundtrip() {
        let (_, s) = a3_iota0();
        let x = ZVector::from_dense(&[1, 0, 2]);
        let t = x.to_tensor(&s, 4, None).unwrap();
        assert_eq!(t.pairs(), vec![(2, 0), (3, -2), (2, 0), (1, -1)]);
        assert_eq!(ZVector::from_tensor(&t, &s).unwrap(), x);
        assert!(x.to_tensor(&s, 2, None).is_err());
    }

    #[test]
    fn json_document() {
        let doc = ZVectorDoc {
            coords: ZVector::from_dense(&[2, 0, 1]),
            mode: Mode::Highest(Weight::new(vec![1, 0])),
        };
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(text, r#"{"coords":{"1":2,"3":1},"mode":{"lambda":[1,0]}}"#);
        let back: ZVectorDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        let binf: ZVectorDoc = serde_json::from_str(r#"{"coords":{},"mode":"binf"}"#).unwrap();
        assert_eq!(binf.mode, Mode::Infinity);
    }
}
