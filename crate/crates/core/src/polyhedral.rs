//! Affine forms on `Q^∞`, the piecewise-linear operators `S_k` / `Ŝ_k`, and the
//! inequality systems they generate.
//!
//! ```text
//! β_k^(+) = x_k + Σ_{k<j<k⁺} ⟨h_{i_k}, α_{i_j}⟩ x_j + x_{k⁺}
//! β_k^(-) = β_{k⁻}^(+)                                   if k⁻ > 0
//!         = -⟨h_{i_k}, λ⟩ + Σ_{1≤j<k} ⟨h_{i_k}, α_{i_j}⟩ x_j + x_k   if k⁻ = 0
//! Ŝ_k φ   = φ - φ_k β_k^(+)  if φ_k > 0,   φ - φ_k β_k^(-)  otherwise
//! ```
//!
//! In `B(∞)` mode the `k⁻ = 0` branch of `β^(-)` is the zero form.
//!
//! Generation works on a restricted model: positions above the support bound `K`
//! are pinned to zero. Dropping those coefficients commutes with `Ŝ_k` for
//! `k ≤ K`, so the generated set is exactly the slice `{x : x_k = 0, k > K}` of
//! the full system.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Sequence, Weight};
use crate::error::{Error, Result};
use crate::zcrystal::{Mode, ZVector};

/// `c + Σ φ_k x_k` with exact rational coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: BTreeMap<usize, Rational64>,
    constant: Rational64,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant_form(c: i64) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            constant: Rational64::from_integer(c),
        }
    }

    /// The coordinate function `x_k`.
    pub fn var(k: usize) -> Self {
        let mut f = Self::zero();
        f.set_coeff(k, Rational64::one());
        f
    }

    pub fn from_ints(constant: i64, coeffs: &[(usize, i64)]) -> Self {
        let mut f = Self::constant_form(constant);
        for &(k, c) in coeffs {
            f.add_coeff(k, Rational64::from_integer(c));
        }
        f
    }

    pub fn constant(&self) -> Rational64 {
        self.constant
    }

    pub fn coeff(&self, k: usize) -> Rational64 {
        self.coeffs
            .get(&k)
            .copied()
            .unwrap_or_else(Rational64::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Rational64> {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: Rational64) {
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn add_coeff(&mut self, k: usize, c: Rational64) {
        let v = self.coeff(k) + c;
        self.set_coeff(k, v);
    }

    pub fn add_constant(&mut self, c: Rational64) {
        self.constant += c;
    }

    /// `self + s·other`.
    pub fn add_scaled(&mut self, other: &LinearForm, s: Rational64) {
        if s.is_zero() {
            return;
        }
        self.constant += other.constant * s;
        for (&k, &c) in &other.coeffs {
            self.add_coeff(k, c * s);
        }
    }

    pub fn scaled(&self, s: Rational64) -> LinearForm {
        let mut out = LinearForm::zero();
        out.add_scaled(self, s);
        out
    }

    /// Largest position with a nonzero coefficient, 0 for a constant form.
    pub fn support_max(&self) -> usize {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// Drops every coefficient at a position above `bound`.
    pub fn restrict(&mut self, bound: usize) {
        self.coeffs.retain(|&k, _| k <= bound);
    }

    pub fn is_integral(&self) -> bool {
        self.constant.is_integer() && self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn evaluate(&self, x: &ZVector) -> Rational64 {
        if self.is_integral() {
            let v = self.constant.to_integer()
                + self
                    .coeffs
                    .iter()
                    .map(|(&k, c)| c.to_integer() * x.get(k))
                    .sum::<i64>();
            return Rational64::from_integer(v);
        }
        self.coeffs
            .iter()
            .fold(self.constant, |acc, (&k, &c)| acc + c * x.get(k))
    }

    /// Positive integer multiple of the form with integer coefficients, as
    /// `(constant, coeffs)`. The sign of every value is preserved.
    fn integer_multiple(&self) -> (i64, BTreeMap<usize, i64>) {
        let lcm = self
            .coeffs
            .values()
            .fold(*self.constant.denom(), |acc, c| acc.lcm(c.denom()));
        let scale = |r: &Rational64| (r * Rational64::from_integer(lcm)).to_integer();
        (
            scale(&self.constant),
            self.coeffs.iter().map(|(&k, c)| (k, scale(c))).collect(),
        )
    }

    /// Expression text such as `1 + x_1 − x_2`; the zero form renders as `0`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if !self.constant.is_zero() || self.coeffs.is_empty() {
            out.push_str(&signed_leading(self.constant));
        }
        for (&k, &c) in &self.coeffs {
            let mag = c.abs();
            let factor = if mag.is_one() {
                String::new()
            } else if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('−');
                }
            } else {
                out.push_str(if c.is_negative() { " − " } else { " + " });
            }
            out.push_str(&format!("{factor}x_{k}"));
        }
        out
    }

    pub fn render_inequality(&self) -> String {
        format!("{} ≥ 0", self.render())
    }

    pub fn to_doc(&self) -> FormDoc {
        FormDoc {
            constant: ratio_text(self.constant),
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, &c)| (k, ratio_text(c)))
                .collect(),
        }
    }

    pub fn from_doc(doc: &FormDoc) -> Result<Self> {
        let parse = |s: &str| {
            s.trim()
                .parse::<Rational64>()
                .map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
        };
        let mut f = LinearForm {
            coeffs: BTreeMap::new(),
            constant: parse(&doc.constant)?,
        };
        for (&k, c) in &doc.coeffs {
            if k == 0 {
                return Err(Error::Parse("positions start at 1".into()));
            }
            f.add_coeff(k, parse(c)?);
        }
        Ok(f)
    }
}

fn signed_leading(r: Rational64) -> String {
    if r.is_negative() {
        format!("−{}", r.abs())
    } else {
        r.to_string()
    }
}

fn ratio_text(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for LinearForm {
    type Output = LinearForm;

    fn add(mut self, rhs: LinearForm) -> LinearForm {
        self.add_scaled(&rhs, Rational64::one());
        self
    }
}

impl Sub for LinearForm {
    type Output = LinearForm;

    fn sub(mut self, rhs: LinearForm) -> LinearForm {
        self.add_scaled(&rhs, -Rational64::one());
        self
    }
}

impl Neg for LinearForm {
    type Output = LinearForm;

    fn neg(self) -> LinearForm {
        self.scaled(-Rational64::one())
    }
}

/// JSON shape of one inequality `const + Σ coeffs[k]·x_k ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    #[serde(rename = "const")]
    pub constant: String,
    pub coeffs: BTreeMap<usize, String>,
}

/// How a generated form was first reached: the seed and the operators applied, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub seed: LinearForm,
    pub ops: Vec<usize>,
}

impl Derivation {
    /// For example `Ŝ_5 Ŝ_2 Ŝ_1(x_1)`; `hat` selects `Ŝ` over `S`.
    pub fn render(&self, hat: bool) -> String {
        let op = if hat { "Ŝ" } else { "S" };
        let mut s: Vec<String> = self.ops.iter().rev().map(|k| format!("{op}_{k}")).collect();
        s.push(format!("({})", self.seed));
        s.join(" ")
    }
}

/// A deduplicated inequality system `{φ ≥ 0}`.
#[derive(Debug, Clone)]
pub struct FormSet {
    pub forms: BTreeSet<LinearForm>,
    pub saturated: bool,
    /// Positions above this bound are identically zero on the described set.
    pub support_bound: usize,
    pub mode: Mode,
    pub generation_log: BTreeMap<LinearForm, Derivation>,
}

impl FormSet {
    /// A closed-form system; it is complete by construction.
    pub fn closed(
        forms: impl IntoIterator<Item = LinearForm>,
        support_bound: usize,
        mode: Mode,
    ) -> Self {
        Self {
            forms: forms.into_iter().collect(),
            saturated: true,
            support_bound,
            mode,
            generation_log: BTreeMap::new(),
        }
    }

    pub fn contains(&self, f: &LinearForm) -> bool {
        self.forms.contains(f)
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn to_docs(&self) -> Vec<FormDoc> {
        self.forms.iter().map(LinearForm::to_doc).collect()
    }

    pub fn render_text(&self) -> String {
        self.forms
            .iter()
            .map(|f| f.render_inequality())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Parses `[{"const": "p/q", "coeffs": {"k": "p/q"}}, ...]`.
pub fn forms_from_json(text: &str) -> Result<Vec<LinearForm>> {
    let docs: Vec<FormDoc> = serde_json::from_str(text)?;
    docs.iter().map(LinearForm::from_doc).collect()
}

/// Cartan datum, word and mode: everything `β^(±)` and `Ŝ_k` depend on.
#[derive(Debug, Clone)]
pub struct Realization {
    cartan: CartanData,
    seq: Sequence,
    mode: Mode,
}

impl Realization {
    pub fn new(cartan: CartanData, seq: Sequence, mode: Mode) -> Result<Self> {
        for &i in seq.period() {
            cartan.check_index(i)?;
        }
        if let Mode::Highest(ref w) = mode {
            w.check_rank(cartan.rank())?;
        }
        Ok(Self { cartan, seq, mode })
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn sequence(&self) -> &Sequence {
        &self.seq
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    fn middle_sum(&self, f: &mut LinearForm, i: usize, from: usize, to: usize) {
        for j in from + 1..to {
            f.add_coeff(
                j,
                Rational64::from_integer(self.cartan.pairing(i, self.seq.index(j))),
            );
        }
    }

    pub fn beta_plus(&self, k: usize) -> LinearForm {
        let ik = self.seq.index(k);
        let kp = self.seq.k_plus(k);
        let mut f = LinearForm::var(k);
        self.middle_sum(&mut f, ik, k, kp);
        f.add_coeff(kp, Rational64::one());
        f
    }

    pub fn beta_minus(&self, k: usize) -> LinearForm {
        let km = self.seq.k_minus(k);
        if km > 0 {
            return self.beta_plus(km);
        }
        match self.mode {
            Mode::Infinity => LinearForm::zero(),
            Mode::Highest(ref lambda) => {
                let ik = self.seq.index(k);
                let mut f = LinearForm::constant_form(-lambda.pairing(ik));
                self.middle_sum(&mut f, ik, 0, k);
                f.add_coeff(k, Rational64::one());
                f
            }
        }
    }

    /// `λ^(i) = -β^(-)_{ι^(i)}`; only meaningful in highest-weight mode.
    pub fn lambda_seed(&self, i: usize) -> Result<LinearForm> {
        if self.mode.lambda().is_none() {
            return Err(Error::ModeMismatch("λ-seeds need a highest weight".into()));
        }
        self.cartan.check_index(i)?;
        Ok(-self.beta_minus(self.seq.iota_first(i)))
    }

    /// `S_k` in `B(∞)` mode, `Ŝ_k` in highest-weight mode.
    pub fn s_hat(&self, form: &LinearForm, k: usize) -> LinearForm {
        let c = form.coeff(k);
        if c.is_zero() {
            return form.clone();
        }
        let beta = if c.is_positive() {
            self.beta_plus(k)
        } else {
            self.beta_minus(k)
        };
        let mut out = form.clone();
        out.add_scaled(&beta, -c);
        out
    }

    pub fn seeds(&self, support_bound: usize) -> Result<Vec<LinearForm>> {
        let mut seeds: Vec<LinearForm> = (1..=support_bound).map(LinearForm::var).collect();
        if self.mode.lambda().is_some() {
            for i in self.cartan.indices() {
                let first = self.seq.iota_first(i);
                if first > support_bound {
                    return Err(Error::SupportOverflow {
                        position: first,
                        bound: support_bound,
                    });
                }
                seeds.push(self.lambda_seed(i)?);
            }
        }
        Ok(seeds)
    }
}

/// Bounds for [`generate_xi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    pub support_bound: usize,
    pub max_rounds: usize,
    pub max_forms: Option<usize>,
    pub parallel: bool,
}

impl GenerateOptions {
    pub fn new(support_bound: usize) -> Self {
        Self {
            support_bound,
            max_rounds: 64,
            max_forms: None,
            parallel: false,
        }
    }
}

/// Closes the seeds under `Ŝ_k` (`1 ≤ k ≤ K`) in rounds until no new form
/// appears. The result is marked unsaturated if a round or size limit is hit first.
pub fn generate_xi(real: &Realization, opts: GenerateOptions) -> Result<FormSet> {
    let bound = opts.support_bound;
    if bound == 0 {
        return Err(Error::SupportOverflow { position: 1, bound });
    }
    let mut forms = BTreeSet::new();
    let mut log = BTreeMap::new();
    let mut frontier = Vec::new();
    for seed in real.seeds(bound)? {
        if forms.insert(seed.clone()) {
            log.insert(
                seed.clone(),
                Derivation {
                    seed: seed.clone(),
                    ops: Vec::new(),
                },
            );
            frontier.push(seed);
        }
    }

    let expand = |f: &LinearForm| -> Vec<(usize, LinearForm)> {
        f.coeffs()
            .keys()
            .filter(|&&k| k <= bound)
            .filter_map(|&k| {
                let mut g = real.s_hat(f, k);
                g.restrict(bound);
                (g != *f).then_some((k, g))
            })
            .collect()
    };

    let mut rounds = 0;
    let mut capped = false;
    while !frontier.is_empty() && rounds < opts.max_rounds && !capped {
        let candidates: Vec<Vec<(usize, LinearForm)>> = if opts.parallel {
            frontier.par_iter().map(expand).collect()
        } else {
            frontier.iter().map(expand).collect()
        };
        let mut next = Vec::new();
        'merge: for (parent, succ) in frontier.iter().zip(candidates) {
            for (k, g) in succ {
                if forms.contains(&g) {
                    continue;
                }
                let mut derivation: Derivation = log[parent].clone();
                derivation.ops.push(k);
                forms.insert(g.clone());
                log.insert(g.clone(), derivation);
                next.push(g);
                if opts.max_forms.is_some_and(|m| forms.len() >= m) {
                    capped = true;
                    break 'merge;
                }
            }
        }
        frontier = next;
        rounds += 1;
    }

    Ok(FormSet {
        forms,
        saturated: frontier.is_empty() && !capped,
        support_bound: bound,
        mode: real.mode().clone(),
        generation_log: log,
    })
}

/// Result of a positivity or ampleness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport<W> {
    pub ok: bool,
    pub witnesses: Vec<W>,
}

/// Every coefficient at a first-occurrence position (`k⁻ = 0`) must be `≥ 0`.
/// Witnesses are `(form, k)` pairs. Only the generated (truncated) set is inspected.
pub fn check_positivity(xi: &FormSet, seq: &Sequence) -> Result<CheckReport<(LinearForm, usize)>> {
    if !xi.saturated {
        return Err(Error::Unsaturated);
    }
    if xi.mode != Mode::Infinity {
        return Err(Error::ModeMismatch(
            "positivity is a property of the B(∞) system".into(),
        ));
    }
    let witnesses: Vec<(LinearForm, usize)> = xi
        .forms
        .iter()
        .flat_map(|f| {
            f.coeffs()
                .iter()
                .filter(|(&k, c)| seq.k_minus(k) == 0 && c.is_negative())
                .map(move |(&k, _)| (f.clone(), k))
        })
        .collect();
    Ok(CheckReport {
        ok: witnesses.is_empty(),
        witnesses,
    })
}

/// Every constant term must be `≥ 0`, i.e. the zero vector satisfies the system.
pub fn check_ample(xi: &FormSet) -> Result<CheckReport<LinearForm>> {
    if !xi.saturated {
        return Err(Error::Unsaturated);
    }
    if xi.mode == Mode::Infinity {
        return Err(Error::ModeMismatch(
            "ampleness is a property of a highest-weight system".into(),
        ));
    }
    let witnesses: Vec<LinearForm> = xi
        .forms
        .iter()
        .filter(|f| f.constant().is_negative())
        .cloned()
        .collect();
    Ok(CheckReport {
        ok: witnesses.is_empty(),
        witnesses,
    })
}

pub fn member(xi: &FormSet, x: &ZVector) -> Result<bool> {
    if !xi.saturated {
        return Err(Error::Unsaturated);
    }
    if x.support_max() > xi.support_bound {
        return Err(Error::SupportOverflow {
            position: x.support_max(),
            bound: xi.support_bound,
        });
    }
    Ok(xi.forms.iter().all(|f| !f.evaluate(x).is_negative()))
}

/// All `x ≥ 0` supported on `1..=K` with `Σ x_k ≤ total` satisfying every form.
pub fn enumerate_lattice_points(xi: &FormSet, total: usize) -> Result<BTreeSet<ZVector>> {
    if !xi.saturated {
        return Err(Error::Unsaturated);
    }
    let k_max = xi.support_bound;
    let system: Vec<IntForm> = xi.forms.iter().map(|f| IntForm::new(f, k_max)).collect();
    let mut out = BTreeSet::new();
    let mut x = vec![0i64; k_max + 1];
    let mut partial: Vec<i64> = system.iter().map(|f| f.constant).collect();
    dfs(&system, 1, total as i64, &mut x, &mut partial, &mut out);
    Ok(out)
}

/// Integer-scaled form with dense coefficients and, per position `p`, the
/// largest positive coefficient among positions `≥ p`.
struct IntForm {
    constant: i64,
    coeffs: Vec<i64>,
    suffix_max: Vec<i64>,
}

impl IntForm {
    fn new(f: &LinearForm, k_max: usize) -> Self {
        let (constant, sparse) = f.integer_multiple();
        let mut coeffs = vec![0i64; k_max + 2];
        for (k, c) in sparse {
            if k <= k_max {
                coeffs[k] = c;
            }
        }
        let mut suffix_max = vec![0i64; k_max + 2];
        for p in (1..=k_max).rev() {
            suffix_max[p] = suffix_max[p + 1].max(coeffs[p]);
        }
        Self {
            constant,
            coeffs,
            suffix_max,
        }
    }
}

fn dfs(
    system: &[IntForm],
    pos: usize,
    budget: i64,
    x: &mut Vec<i64>,
    partial: &mut Vec<i64>,
    out: &mut BTreeSet<ZVector>,
) {
    // Any form that cannot be rescued by the remaining budget prunes the branch.
    if system
        .iter()
        .zip(partial.iter())
        .any(|(f, &p)| p + budget * f.suffix_max[pos] < 0)
    {
        return;
    }
    let k_max = x.len() - 1;
    if pos > k_max {
        out.insert(ZVector::from_dense(&x[1..]));
        return;
    }
    for v in 0..=budget {
        x[pos] = v;
        for (f, p) in system.iter().zip(partial.iter_mut()) {
            *p += f.coeffs[pos] * v;
        }
        dfs(system, pos + 1, budget - v, x, partial, out);
        for (f, p) in system.iter().zip(partial.iter_mut()) {
            *p -= f.coeffs[pos] * v;
        }
    }
    x[pos] = 0;
}

/// Convenience: the `Mode` for a weight, or `B(∞)` when absent.
pub fn mode_for(lambda: Option<Weight>) -> Mode {
    lambda.map_or(Mode::Infinity, Mode::Highest)
}
