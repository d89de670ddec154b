//! Abstract crystals, the elementary crystals `B_i` and `R_λ`, tensor products,
//! connected-component enumeration and strict-morphism checking.
//!
//! Tensor products follow Kashiwara's convention:
//!
//! ```text
//! ε_i(b1⊗b2) = max(ε_i(b1), ε_i(b2) - ⟨h_i, wt b1⟩)
//! φ_i(b1⊗b2) = max(φ_i(b2), φ_i(b1) + ⟨h_i, wt b2⟩)
//! f̃_i(b1⊗b2) = f̃_i b1 ⊗ b2  if φ_i(b1) > ε_i(b2), else b1 ⊗ f̃_i b2
//! ẽ_i(b1⊗b2) = ẽ_i b1 ⊗ b2  if φ_i(b1) ≥ ε_i(b2), else b1 ⊗ ẽ_i b2
//! ```
//!
//! The ideal element `0` is modelled as `None`.

use std::collections::VecDeque;
use std::fmt;
use std::hash::Hash;
use std::ops::Add;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Weight};
use crate::error::{Error, Result};
use crate::graph::CrystalGraph;

/// `Z ⊔ {-∞}` with `max(-∞, x) = x` and `-∞ + x = -∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
}

impl ExtInt {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            ExtInt::NegInf => None,
        }
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: i64) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(v + rhs),
            ExtInt::NegInf => ExtInt::NegInf,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::NegInf => write!(f, "-inf"),
        }
    }
}

/// A crystal over a fixed Cartan datum. Indices are 1-based.
pub trait Crystal {
    type Elem: Clone + Eq + Hash + fmt::Debug;

    fn cartan(&self) -> &CartanData;

    /// `⟨h_j, wt(b)⟩` for `j = 1..=rank`.
    fn weight(&self, b: &Self::Elem) -> Vec<i64>;

    fn epsilon(&self, b: &Self::Elem, i: usize) -> ExtInt;

    fn phi(&self, b: &Self::Elem, i: usize) -> ExtInt;

    fn f_tilde(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem>;

    fn e_tilde(&self, b: &Self::Elem, i: usize) -> Option<Self::Elem>;

    fn rank(&self) -> usize {
        self.cartan().rank()
    }
}

/// One tensor factor: `(x)_i ∈ B_i` or the single element `r_λ ∈ R_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Elementary { index: usize, value: i64 },
    Unit(Weight),
}

impl Letter {
    pub fn elem(index: usize, value: i64) -> Self {
        Letter::Elementary { index, value }
    }

    /// `(ε_i, φ_i, ⟨h_i, wt⟩)` of a single factor.
    fn data(&self, cartan: &CartanData, i: usize) -> FactorData {
        match *self {
            Letter::Elementary { index, value } => {
                let w = value * cartan.pairing(i, index);
                if index == i {
                    FactorData {
                        eps: ExtInt::Fin(-value),
                        phi: ExtInt::Fin(value),
                        wt: w,
                    }
                } else {
                    FactorData {
                        eps: ExtInt::NegInf,
                        phi: ExtInt::NegInf,
                        wt: w,
                    }
                }
            }
            Letter::Unit(ref lambda) => FactorData {
                eps: ExtInt::Fin(-lambda.pairing(i)),
                phi: ExtInt::Fin(0),
                wt: lambda.pairing(i),
            },
        }
    }

    fn act(&self, i: usize, delta: i64) -> Option<Letter> {
        match *self {
            Letter::Elementary { index, value } if index == i => Some(Letter::Elementary {
                index,
                value: value + delta,
            }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct FactorData {
    eps: ExtInt,
    phi: ExtInt,
    wt: i64,
}

impl FactorData {
    /// Data of `self ⊗ rhs`.
    fn tensor(self, rhs: FactorData) -> FactorData {
        FactorData {
            eps: self.eps.max(rhs.eps + (-self.wt)),
            phi: rhs.phi.max(self.phi + rhs.wt),
            wt: self.wt + rhs.wt,
        }
    }
}

/// Bracketing used to evaluate a multi-factor tensor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Bracketing {
    /// `((b1⊗b2)⊗b3)⊗⋯`
    #[default]
    Left,
    /// `b1⊗(b2⊗(b3⊗⋯))`
    Right,
}

/// An element `b1⊗⋯⊗bN` of a tensor product of elementary crystals, optionally
/// ending in `r_λ`. Letters are stored left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElem {
    letters: Vec<Letter>,
}

impl TensorElem {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::ShapeMismatch("empty tensor".into()));
        }
        let last = letters.len() - 1;
        if letters[..last].iter().any(|l| matches!(l, Letter::Unit(_))) {
            return Err(Error::ShapeMismatch(
                "the unit letter r_λ may only appear last".into(),
            ));
        }
        Ok(Self { letters })
    }

    /// Builds `(v_1)_{i_1} ⊗ (v_2)_{i_2} ⊗ ⋯` from `(index, value)` pairs, left to right.
    pub fn from_pairs(pairs: &[(usize, i64)]) -> Self {
        Self {
            letters: pairs.iter().map(|&(i, v)| Letter::elem(i, v)).collect(),
        }
    }

    pub fn with_unit(mut self, lambda: Weight) -> Self {
        if matches!(self.letters.last(), Some(Letter::Unit(_))) {
            self.letters.pop();
        }
        self.letters.push(Letter::Unit(lambda));
        self
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn unit(&self) -> Option<&Weight> {
        match self.letters.last() {
            Some(Letter::Unit(w)) => Some(w),
            _ => None,
        }
    }

    /// The elementary letters, without a trailing `r_λ`.
    pub fn elementary(&self) -> &[Letter] {
        match self.letters.last() {
            Some(Letter::Unit(_)) => &self.letters[..self.letters.len() - 1],
            _ => &self.letters,
        }
    }

    /// `(index, value)` of every elementary letter, left to right.
    pub fn pairs(&self) -> Vec<(usize, i64)> {
        self.elementary()
            .iter()
            .map(|l| match *l {
                Letter::Elementary { index, value } => (index, value),
                Letter::Unit(_) => unreachable!("unit letters are excluded"),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// JSON encoding: a list of `[i, x]` pairs plus an optional `["r", [λ...]]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.letters
                .iter()
                .map(|l| match l {
                    Letter::Elementary { index, value } => serde_json::json!([index, value]),
                    Letter::Unit(w) => serde_json::json!(["r", w.coeffs()]),
                })
                .collect(),
        )
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let items = value
            .as_array()
            .ok_or_else(|| Error::Parse("tensor element must be a JSON array".into()))?;
        let mut letters = Vec::with_capacity(items.len());
        for item in items {
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse(format!("bad letter {item}")))?;
            if pair[0].as_str() == Some("r") {
                let coeffs: Vec<i64> = serde_json::from_value(pair[1].clone())?;
                letters.push(Letter::Unit(Weight::new(coeffs)));
            } else {
                let index = pair[0]
                    .as_u64()
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad letter index in {item}")))?;
                let value = pair[1]
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("bad letter value in {item}")))?;
                letters.push(Letter::elem(index as usize, value));
            }
        }
        Self::new(letters)
    }

    fn check_indices(&self, cartan: &CartanData) -> Result<()> {
        for l in &self.letters {
            match l {
                Letter::Elementary { index, .. } => cartan.check_index(*index)?,
                Letter::Unit(w) => w.check_rank(cartan.rank())?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::Elementary { index, value } => format!("({value})_{index}"),
                Letter::Unit(w) => format!("r_{w}"),
            })
            .collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

/// The crystal structure on tensor products of `B_i`'s (and `R_λ`).
#[derive(Debug, Clone, Copy)]
pub struct TensorCrystal<'a> {
    cartan: &'a CartanData,
    bracketing: Bracketing,
}

impl<'a> TensorCrystal<'a> {
    pub fn new(cartan: &'a CartanData) -> Self {
        Self {
            cartan,
            bracketing: Bracketing::Left,
        }
    }

    pub fn with_bracketing(cartan: &'a CartanData, bracketing: Bracketing) -> Self {
        Self { cartan, bracketing }
    }

    pub fn validate(&self, b: &TensorElem) -> Result<()> {
        b.check_indices(self.cartan)
    }

    fn factor_data(&self, b: &TensorElem, i: usize) -> Vec<FactorData> {
        b.letters.iter().map(|l| l.data(self.cartan, i)).collect()
    }

    /// `(ε_i, φ_i, ⟨h_i, wt⟩)` of the whole tensor.
    pub fn eps_phi_wt(&self, b: &TensorElem, i: usize) -> (ExtInt, ExtInt, i64) {
        let data = self.factor_data(b, i);
        let total = match self.bracketing {
            Bracketing::Left => data
                .iter()
                .copied()
                .reduce(FactorData::tensor)
                .expect("non-empty tensor"),
            Bracketing::Right => data
                .iter()
                .rev()
                .copied()
                .reduce(|acc, d| d.tensor(acc))
                .expect("non-empty tensor"),
        };
        (total.eps, total.phi, total.wt)
    }

    /// Position of the factor `f̃_i` (`raise = false`) or `ẽ_i` (`raise = true`) acts on.
    fn acting_position(&self, b: &TensorElem, i: usize, raise: bool) -> usize {
        let data = self.factor_data(b, i);
        let n = data.len();
        let go_left = |phi_left: ExtInt, eps_right: ExtInt| {
            if raise {
                phi_left >= eps_right
            } else {
                phi_left > eps_right
            }
        };
        match self.bracketing {
            Bracketing::Left => {
                // prefix[m] = data of b_1⊗⋯⊗b_{m+1}
                let mut prefix = Vec::with_capacity(n);
                let mut acc = data[0];
                prefix.push(acc);
                for d in &data[1..] {
                    acc = acc.tensor(*d);
                    prefix.push(acc);
                }
                let mut m = n - 1;
                while m > 0 {
                    if go_left(prefix[m - 1].phi, data[m].eps) {
                        m -= 1;
                    } else {
                        return m;
                    }
                }
                0
            }
            Bracketing::Right => {
                // suffix[m] = data of b_{m+1}⊗⋯⊗b_n
                let mut suffix = vec![data[n - 1]; n];
                for m in (0..n - 1).rev() {
                    suffix[m] = data[m].tensor(suffix[m + 1]);
                }
                for m in 0..n - 1 {
                    if go_left(data[m].phi, suffix[m + 1].eps) {
                        return m;
                    }
                }
                n - 1
            }
        }
    }

    fn act(&self, b: &TensorElem, i: usize, raise: bool) -> Option<TensorElem> {
        let pos = self.acting_position(b, i, raise);
        let letter = b.letters[pos].act(i, if raise { 1 } else { -1 })?;
        let mut out = b.clone();
        out.letters[pos] = letter;
        Some(out)
    }
}

impl Crystal for TensorCrystal<'_> {
    type Elem = TensorElem;

    fn cartan(&self) -> &CartanData {
        self.cartan
    }

    fn weight(&self, b: &TensorElem) -> Vec<i64> {
        self.cartan
            .indices()
            .map(|j| b.letters.iter().map(|l| l.data(self.cartan, j).wt).sum())
            .collect()
    }

    fn epsilon(&self, b: &TensorElem, i: usize) -> ExtInt {
        self.eps_phi_wt(b, i).0
    }

    fn phi(&self, b: &TensorElem, i: usize) -> ExtInt {
        self.eps_phi_wt(b, i).1
    }

    fn f_tilde(&self, b: &TensorElem, i: usize) -> Option<TensorElem> {
        self.act(b, i, false)
    }

    fn e_tilde(&self, b: &TensorElem, i: usize) -> Option<TensorElem> {
        self.act(b, i, true)
    }
}

/// BFS closure of `seed` under all `f̃_i`, up to `depth` applications.
pub fn connected_component<C: Crystal>(
    crystal: &C,
    seed: C::Elem,
    depth: usize,
) -> CrystalGraph<C::Elem> {
    let mut graph = CrystalGraph::new(seed);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        if graph.depth(u) >= depth {
            continue;
        }
        for i in crystal.cartan().indices() {
            if let Some(v) = crystal.f_tilde(graph.node(u), i) {
                let (idx, fresh) = graph.insert(v, graph.depth(u) + 1);
                graph.add_edge(u, i, idx);
                if fresh {
                    queue.push_back(idx);
                }
            }
        }
    }
    graph
}

/// Layer-parallel variant of [`connected_component`]. Successors are computed in
/// parallel and merged in the sequential order, so the output is identical.
pub fn connected_component_par<C>(crystal: &C, seed: C::Elem, depth: usize) -> CrystalGraph<C::Elem>
where
    C: Crystal + Sync,
    C::Elem: Send + Sync,
{
    let mut graph = CrystalGraph::new(seed);
    let mut layer = vec![0usize];
    for d in 0..depth {
        let successors: Vec<Vec<(usize, C::Elem)>> = layer
            .par_iter()
            .map(|&u| {
                crystal
                    .cartan()
                    .indices()
                    .filter_map(|i| crystal.f_tilde(graph.node(u), i).map(|v| (i, v)))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&u, succ) in layer.iter().zip(successors) {
            for (i, v) in succ {
                let (idx, fresh) = graph.insert(v, d + 1);
                graph.add_edge(u, i, idx);
                if fresh {
                    next.push(idx);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    graph
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Weight,
    Epsilon,
    Phi,
    CommutesE,
    CommutesF,
    /// `φ_i = ε_i + ⟨h_i, wt⟩` fails.
    PhiEpsWeight,
    /// `wt` does not shift by `±α_i` under `ẽ_i`/`f̃_i`.
    WeightShift,
    /// `ẽ_i b2 = b1 ⇔ f̃_i b1 = b2` fails.
    Adjointness,
    /// `ε_i = -∞` but `ẽ_i` or `f̃_i` does not vanish.
    NegInfAction,
    /// `ε_i`/`φ_i` disagree with the length of the `ẽ_i`/`f̃_i` string.
    StringLength,
    /// Left and right bracketings disagree.
    Associativity,
    /// A braid map composed with its inverse is not the identity.
    Involution,
    /// A braid map does not conserve its letter sums.
    Conservation,
    /// The two expressions of the six-letter braid map disagree.
    AltForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub element: String,
    pub index: Option<usize>,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(
                f,
                "{:?} at i={i} on {}: {}",
                self.kind, self.element, self.detail
            ),
            None => write!(f, "{:?} on {}: {}", self.kind, self.element, self.detail),
        }
    }
}

/// Checks that `map` is a strict morphism on `sample`: `wt`, `ε_i`, `φ_i` are
/// preserved and `map` commutes with `ẽ_i`, `f̃_i` (with `0 ↦ 0`).
pub fn check_strict_morphism<A, B, F>(
    domain: &A,
    codomain: &B,
    map: F,
    sample: &[A::Elem],
    indices: &[usize],
) -> Vec<Violation>
where
    A: Crystal,
    B: Crystal,
    F: Fn(&A::Elem) -> Option<B::Elem>,
{
    let mut out = Vec::new();
    let apply = |b: Option<A::Elem>| b.and_then(|b| map(&b));
    for b in sample {
        let image = map(b);
        let describe = || format!("{b:?}");
        if let Some(ref img) = image {
            if domain.weight(b) != codomain.weight(img) {
                out.push(Violation {
                    element: describe(),
                    index: None,
                    kind: ViolationKind::Weight,
                    detail: format!("{:?} vs {:?}", domain.weight(b), codomain.weight(img)),
                });
            }
        }
        for &i in indices {
            if let Some(ref img) = image {
                let (e0, e1) = (domain.epsilon(b, i), codomain.epsilon(img, i));
                if e0 != e1 {
                    out.push(Violation {
                        element: describe(),
                        index: Some(i),
                        kind: ViolationKind::Epsilon,
                        detail: format!("{e0} vs {e1}"),
                    });
                }
                let (p0, p1) = (domain.phi(b, i), codomain.phi(img, i));
                if p0 != p1 {
                    out.push(Violation {
                        element: describe(),
                        index: Some(i),
                        kind: ViolationKind::Phi,
                        detail: format!("{p0} vs {p1}"),
                    });
                }
            }
            let lhs = apply(domain.f_tilde(b, i));
            let rhs = image.as_ref().and_then(|img| codomain.f_tilde(img, i));
            if lhs != rhs {
                out.push(Violation {
                    element: describe(),
                    index: Some(i),
                    kind: ViolationKind::CommutesF,
                    detail: format!("map(f b) = {lhs:?}, f(map b) = {rhs:?}"),
                });
            }
            let lhs = apply(domain.e_tilde(b, i));
            let rhs = image.as_ref().and_then(|img| codomain.e_tilde(img, i));
            if lhs != rhs {
                out.push(Violation {
                    element: describe(),
                    index: Some(i),
                    kind: ViolationKind::CommutesE,
                    detail: format!("map(e b) = {lhs:?}, e(map b) = {rhs:?}"),
                });
            }
        }
    }
    out
}

/// Checks the crystal axioms on every element of `sample`:
/// `φ_i = ε_i + ⟨h_i,wt⟩`, the `±α_i` weight shifts, `ẽ_i`/`f̃_i` adjointness and
/// vanishing of both operators where `ε_i = -∞`.
pub fn check_axioms<C: Crystal>(crystal: &C, sample: &[C::Elem]) -> Vec<Violation> {
    let cartan = crystal.cartan();
    let mut out = Vec::new();
    for b in sample {
        let wt = crystal.weight(b);
        for i in cartan.indices() {
            let push = |out: &mut Vec<Violation>, kind, detail: String| {
                out.push(Violation {
                    element: format!("{b:?}"),
                    index: Some(i),
                    kind,
                    detail,
                })
            };
            let eps = crystal.epsilon(b, i);
            let phi = crystal.phi(b, i);
            match (eps, phi) {
                (ExtInt::Fin(e), ExtInt::Fin(p)) if p != e + wt[i - 1] => push(
                    &mut out,
                    ViolationKind::PhiEpsWeight,
                    format!("φ={p}, ε={e}, ⟨h,wt⟩={}", wt[i - 1]),
                ),
                (ExtInt::Fin(_), ExtInt::NegInf) | (ExtInt::NegInf, ExtInt::Fin(_)) => push(
                    &mut out,
                    ViolationKind::PhiEpsWeight,
                    format!("φ={phi}, ε={eps}"),
                ),
                _ => {}
            }
            let e = crystal.e_tilde(b, i);
            let f = crystal.f_tilde(b, i);
            if eps == ExtInt::NegInf && (e.is_some() || f.is_some()) {
                push(&mut out, ViolationKind::NegInfAction, "ε=-∞".into());
            }
            for (target, sign) in [(&e, 1i64), (&f, -1i64)] {
                if let Some(t) = target {
                    let shifted: Vec<i64> = cartan
                        .indices()
                        .map(|j| wt[j - 1] + sign * cartan.pairing(j, i))
                        .collect();
                    let actual = crystal.weight(t);
                    if actual != shifted {
                        push(
                            &mut out,
                            ViolationKind::WeightShift,
                            format!("expected {shifted:?}, got {actual:?}"),
                        );
                    }
                }
            }
            if let Some(ref up) = e {
                if crystal.f_tilde(up, i).as_ref() != Some(b) {
                    push(&mut out, ViolationKind::Adjointness, "f(e b) ≠ b".into());
                }
            }
            if let Some(ref down) = f {
                if crystal.e_tilde(down, i).as_ref() != Some(b) {
                    push(&mut out, ViolationKind::Adjointness, "e(f b) ≠ b".into());
                }
            }
        }
    }
    out
}

/// Checks `ε_i(b) = max{k : ẽ_i^k b ≠ 0}` and, when `check_phi`,
/// `φ_i(b) = max{k : f̃_i^k b ≠ 0}`, the defining properties of `B(λ)` and
/// (for `ε` only) `B(∞)`.
pub fn check_string_lengths<C: Crystal>(
    crystal: &C,
    sample: &[C::Elem],
    check_phi: bool,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let string_ok = |b: &C::Elem, i: usize, expected: ExtInt, raise: bool| -> bool {
        let Some(n) = expected.finite().filter(|&n| n >= 0) else {
            return false;
        };
        let step = |x: &C::Elem| {
            if raise {
                crystal.e_tilde(x, i)
            } else {
                crystal.f_tilde(x, i)
            }
        };
        let mut cur = b.clone();
        for _ in 0..n {
            match step(&cur) {
                Some(next) => cur = next,
                None => return false,
            }
        }
        step(&cur).is_none()
    };
    for b in sample {
        for i in crystal.cartan().indices() {
            let eps = crystal.epsilon(b, i);
            if !string_ok(b, i, eps, true) {
                out.push(Violation {
                    element: format!("{b:?}"),
                    index: Some(i),
                    kind: ViolationKind::StringLength,
                    detail: format!("ε={eps} does not match the ẽ-string"),
                });
            }
            if check_phi {
                let phi = crystal.phi(b, i);
                if !string_ok(b, i, phi, false) {
                    out.push(Violation {
                        element: format!("{b:?}"),
                        index: Some(i),
                        kind: ViolationKind::StringLength,
                        detail: format!("φ={phi} does not match the f̃-string"),
                    });
                }
            }
        }
    }
    out
}

/// Compares left- and right-bracketed evaluation of `ε_i`, `φ_i`, `ẽ_i`, `f̃_i`.
pub fn check_associativity(cartan: &CartanData, sample: &[TensorElem]) -> Vec<Violation> {
    let left = TensorCrystal::with_bracketing(cartan, Bracketing::Left);
    let right = TensorCrystal::with_bracketing(cartan, Bracketing::Right);
    let mut out = Vec::new();
    for b in sample {
        for i in cartan.indices() {
            let l = (
                left.eps_phi_wt(b, i),
                left.e_tilde(b, i),
                left.f_tilde(b, i),
            );
            let r = (
                right.eps_phi_wt(b, i),
                right.e_tilde(b, i),
                right.f_tilde(b, i),
            );
            if l != r {
                out.push(Violation {
                    element: b.to_string(),
                    index: Some(i),
                    kind: ViolationKind::Associativity,
                    detail: format!("left {l:?} vs right {r:?}"),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> CartanData {
        CartanData::type_a(1).unwrap()
    }

    fn a2() -> CartanData {
        CartanData::type_a(2).unwrap()
    }

    #[test]
    fn ext_int_order_and_arithmetic() {
        assert!(ExtInt::NegInf < ExtInt::Fin(i64::MIN));
        assert_eq!(ExtInt::NegInf.max(ExtInt::Fin(-3)), ExtInt::Fin(-3));
        assert_eq!(ExtInt::NegInf + 5, ExtInt::NegInf);
        assert_eq!(ExtInt::Fin(2) + 5, ExtInt::Fin(7));
    }

    #[test]
    fn two_letter_fold() {
        let c = sl2();
        let t = TensorCrystal::new(&c);
        let b = TensorElem::from_pairs(&[(1, -1), (1, 0)]);
        assert_eq!(t.eps_phi_wt(&b, 1), (ExtInt::Fin(2), ExtInt::Fin(0), -2));
    }

    #[test]
    fn single_letters() {
        let c = a2();
        let t = TensorCrystal::new(&c);
        let b = TensorElem::from_pairs(&[(1, 0)]);
        assert_eq!(t.eps_phi_wt(&b, 1), (ExtInt::Fin(0), ExtInt::Fin(0), 0));
        assert_eq!(t.epsilon(&b, 2), ExtInt::NegInf);
        assert_eq!(t.e_tilde(&b, 1), Some(TensorElem::from_pairs(&[(1, 1)])));
        assert_eq!(t.f_tilde(&b, 1), Some(TensorElem::from_pairs(&[(1, -1)])));
        assert_eq!(t.f_tilde(&b, 2), None);
    }

    #[test]
    fn unit_letter() {
        let c = sl2();
        let t = TensorCrystal::new(&c);
        let r = TensorElem::new(vec![Letter::Unit(Weight::new(vec![2]))]).unwrap();
        assert_eq!(t.eps_phi_wt(&r, 1), (ExtInt::Fin(-2), ExtInt::Fin(0), 2));
        assert_eq!(t.f_tilde(&r, 1), None);
        assert_eq!(t.e_tilde(&r, 1), None);
    }

    #[test]
    fn unit_must_be_last() {
        let letters = vec![Letter::Unit(Weight::new(vec![1])), Letter::elem(1, 0)];
        assert!(TensorElem::new(letters).is_err());
    }

    #[test]
    fn f_tilde_picks_rightmost_factor_on_ties() {
        let c = a2();
        let t = TensorCrystal::new(&c);
        let b = TensorElem::from_pairs(&[(1, 0), (2, 0), (1, 0)]);
        let fb = t.f_tilde(&b, 1).unwrap();
        assert_eq!(fb, TensorElem::from_pairs(&[(1, 0), (2, 0), (1, -1)]));
        assert_eq!(t.e_tilde(&fb, 1), Some(b));
    }

    #[test]
    fn sl2_binf_times_unit_cuts_at_m() {
        // f̃^n u_∞ ⊗ r_m is encoded by the letter (-n)_1 followed by r_m.
        let c = sl2();
        let t = TensorCrystal::new(&c);
        let m = 2;
        let elem = |n: i64| TensorElem::from_pairs(&[(1, -n)]).with_unit(Weight::new(vec![m]));
        assert_eq!(t.f_tilde(&elem(0), 1), Some(elem(1)));
        assert_eq!(t.f_tilde(&elem(1), 1), Some(elem(2)));
        assert_eq!(t.f_tilde(&elem(2), 1), None);
        assert_eq!(t.f_tilde(&elem(5), 1), None);
    }

    #[test]
    fn component_of_sl2_unit_is_a_chain() {
        let c = sl2();
        let t = TensorCrystal::new(&c);
        let seed = TensorElem::from_pairs(&[(1, 0)]).with_unit(Weight::new(vec![2]));
        let g = connected_component(&t, seed.clone(), 10);
        assert_eq!(g.len(), 3);
        assert_eq!(g.edges().len(), 2);
        let g0 = connected_component(&t, seed, 0);
        assert_eq!(g0.len(), 1);
        assert!(g0.edges().is_empty());
    }

    #[test]
    fn parallel_bfs_matches_sequential() {
        let c = a2();
        let t = TensorCrystal::new(&c);
        let seed = TensorElem::from_pairs(&[(1, 0), (2, 0), (1, 0), (2, 0)]);
        let a = connected_component(&t, seed.clone(), 4);
        let b = connected_component_par(&t, seed, 4);
        assert_eq!(a.nodes(), b.nodes());
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn identity_is_a_strict_morphism() {
        let c = a2();
        let t = TensorCrystal::new(&c);
        let sample: Vec<TensorElem> = (-3..=3)
            .flat_map(|x| (-3..=3).map(move |y| TensorElem::from_pairs(&[(1, x), (2, y)])))
            .collect();
        assert!(check_strict_morphism(&t, &t, |b| Some(b.clone()), &sample, &[1, 2]).is_empty());
        assert!(check_axioms(&t, &sample).is_empty());
        assert!(check_associativity(&c, &sample).is_empty());
    }

    #[test]
    fn plain_swap_is_not_a_morphism_when_indices_interact() {
        let c = a2();
        let t = TensorCrystal::new(&c);
        let sample: Vec<TensorElem> = (-2..=2)
            .flat_map(|x| (-2..=2).map(move |y| TensorElem::from_pairs(&[(1, x), (2, y)])))
            .collect();
        let swap = |b: &TensorElem| {
            let p = b.pairs();
            Some(TensorElem::from_pairs(&[p[1], p[0]]))
        };
        assert!(!check_strict_morphism(&t, &t, swap, &sample, &[1, 2]).is_empty());
    }

    #[test]
    fn json_encoding() {
        let b = TensorElem::from_pairs(&[(1, -2), (2, 3)]).with_unit(Weight::new(vec![1, 0]));
        let v = b.to_json();
        assert_eq!(v.to_string(), r#"[[1,-2],[2,3],["r",[1,0]]]"#);
        assert_eq!(TensorElem::from_json(&v).unwrap(), b);
        assert!(TensorElem::from_json(&serde_json::json!([[0, 1]])).is_err());
    }
}
