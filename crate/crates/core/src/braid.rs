//! Piecewise-linear crystal isomorphisms between the mirrored tensor products
//! `B_i⊗B_j⊗⋯` and `B_j⊗B_i⊗⋯` of elementary crystals.
//!
//! With `c1 = -⟨h_i, α_j⟩`, `c2 = -⟨h_j, α_i⟩` and `k = c1·c2 ≤ 3`, the map
//! `φ^(k)_{ij}` acts on `2, 3, 4, 6` letters for `k = 0, 1, 2, 3`. Its inverse is
//! `φ^(k)_{ji}`, i.e. the same formulas with `c1` and `c2` exchanged.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::crystal::{
    check_strict_morphism, Letter, TensorCrystal, TensorElem, Violation, ViolationKind,
};
use crate::error::{Error, Result};

/// `x_+ = max(x, 0)`.
fn pos(x: i64) -> i64 {
    x.max(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidContext {
    pub i: usize,
    pub j: usize,
    pub c1: i64,
    pub c2: i64,
}

impl BraidContext {
    pub fn new(cartan: &CartanData, i: usize, j: usize) -> Result<Self> {
        cartan.check_index(i)?;
        cartan.check_index(j)?;
        if i == j {
            return Err(Error::InvalidBraid("i and j must differ".into()));
        }
        Self::checked(i, j, -cartan.pairing(i, j), -cartan.pairing(j, i))
    }

    /// The abstract pair `i = 1`, `j = 2` with the given `c1`, `c2`.
    pub fn from_pair(c1: i64, c2: i64) -> Result<Self> {
        Self::checked(1, 2, c1, c2)
    }

    fn checked(i: usize, j: usize, c1: i64, c2: i64) -> Result<Self> {
        let allowed = matches!(
            (c1, c2),
            (0, 0) | (1, 1) | (1, 2) | (2, 1) | (1, 3) | (3, 1)
        );
        if !allowed {
            return Err(Error::InvalidBraid(format!(
                "(c1, c2) = ({c1}, {c2}) has no braid-type isomorphism; need c1·c2 ≤ 3"
            )));
        }
        Ok(Self { i, j, c1, c2 })
    }

    pub fn k(&self) -> i64 {
        self.c1 * self.c2
    }

    /// Number of letters the map consumes.
    pub fn letter_count(&self) -> usize {
        match self.k() {
            0 => 2,
            1 => 3,
            2 => 4,
            _ => 6,
        }
    }

    /// Context of the inverse map: `i` and `j` (hence `c1` and `c2`) exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            i: self.j,
            j: self.i,
            c1: self.c2,
            c2: self.c1,
        }
    }

    /// The rank-2 Cartan datum on `{i, j}` relabelled to `{1, 2}`.
    pub fn rank2_cartan(&self) -> CartanData {
        CartanData::rank2(self.c1 as u32, self.c2 as u32).expect("validated pair")
    }

    /// Index pattern of the domain, left to right: `i, j, i, …`.
    pub fn pattern(&self) -> Vec<usize> {
        (0..self.letter_count())
            .map(|p| if p % 2 == 0 { self.i } else { self.j })
            .collect()
    }
}

/// φ^(k) on raw letter values `(x, y, …)` of `(x)_i⊗(y)_j⊗⋯`. Returns the values
/// of `(X)_j⊗(Y)_i⊗⋯`.
pub fn phi_values(ctx: &BraidContext, v: &[i64]) -> Result<Vec<i64>> {
    if v.len() != ctx.letter_count() {
        return Err(Error::ShapeMismatch(format!(
            "φ^({}) takes {} letters, got {}",
            ctx.k(),
            ctx.letter_count(),
            v.len()
        )));
    }
    let (c1, c2) = (ctx.c1, ctx.c2);
    Ok(match ctx.k() {
        0 => vec![v[1], v[0]],
        1 => {
            let (x, y, z) = (v[0], v[1], v[2]);
            let t = pos(-x + y - z);
            vec![z + t, x + z, y - z - t]
        }
        2 => {
            let (x, y, z, w) = (v[0], v[1], v[2], v[3]);
            let p = pos(x - c1 * y + z);
            let s = pos(-c2 * x + y - w + c2 * p);
            let t = pos(-x + z - c1 * w + p);
            vec![w + s, x + c1 * w + t, y - s, z - c1 * w - t]
        }
        _ => phi3_altform(c1, c2, v).to_vec(),
    })
}

/// φ^(3) through its max/min expressions.
pub fn phi3_altform(c1: i64, c2: i64, v: &[i64]) -> [i64; 6] {
    let (x, y, z, u, vv, w) = (v[0], v[1], v[2], v[3], v[4], v[5]);
    let big_x = [
        -c2 * x + y,
        -2 * y + c2 * z,
        -c2 * z + 2 * u,
        -u + c2 * vv,
        w,
    ]
    .into_iter()
    .max()
    .unwrap();
    let big_y = [
        -x + z,
        x - 2 * c1 * y + 3 * z,
        x - 3 * z + 2 * c1 * u,
        x - c1 * u + 3 * vv,
        x + c1 * w,
    ]
    .into_iter()
    .max()
    .unwrap();
    let big_v = [
        c2 * x + w,
        3 * y - c2 * z + w,
        2 * c2 * z - 3 * u + w,
        3 * u - 2 * c2 * vv + w,
        u - w,
    ]
    .into_iter()
    .min()
    .unwrap();
    let big_w = [x, c1 * y - z, 2 * z - c1 * u, c1 * u - 2 * vv, vv - c1 * w]
        .into_iter()
        .min()
        .unwrap();
    [
        big_x,
        big_y,
        y + u + w - big_x - big_v,
        x + z + vv - big_y - big_w,
        big_v,
        big_w,
    ]
}

/// φ^(3) through nested `(·)_+` clamps.
pub fn phi3_nested(c1: i64, c2: i64, v: &[i64]) -> [i64; 6] {
    let (x, y, z, u, vv, w) = (v[0], v[1], v[2], v[3], v[4], v[5]);
    let a = -x + c1 * y - z;
    let b = -y + c2 * z - u;
    let c = -z + c1 * u - vv;
    let d = -u + c2 * vv - w;
    let ap = pos(a);
    let big_x = w + pos(d + pos(c2 * c + pos(2 * b + c2 * ap)));
    let big_y = x + c1 * w + pos(c1 * d + pos(3 * c + pos(2 * c1 * b + 2 * ap)));
    let big_v = u - w - pos(2 * d + pos(2 * c2 * c + pos(3 * b + c2 * ap)));
    let big_w = vv - c1 * w - pos(c1 * d + pos(2 * c + pos(c1 * b + ap)));
    [
        big_x,
        big_y,
        y + u + w - big_x - big_v,
        x + z + vv - big_y - big_w,
        big_v,
        big_w,
    ]
}

fn window_values(ctx: &BraidContext, letters: &[Letter]) -> Result<Vec<i64>> {
    let pattern = ctx.pattern();
    if letters.len() != pattern.len() {
        return Err(Error::ShapeMismatch(format!(
            "expected {} letters, got {}",
            pattern.len(),
            letters.len()
        )));
    }
    letters
        .iter()
        .zip(&pattern)
        .map(|(l, &want)| match *l {
            Letter::Elementary { index, value } if index == want => Ok(value),
            ref other => Err(Error::ShapeMismatch(format!(
                "expected a letter of index {want}, found {other:?}"
            ))),
        })
        .collect()
}

fn mirrored_letters(ctx: &BraidContext, values: &[i64]) -> Vec<Letter> {
    ctx.swapped()
        .pattern()
        .into_iter()
        .zip(values)
        .map(|(index, &value)| Letter::elem(index, value))
        .collect()
}

/// φ^(k)_{ij} on `(x)_i⊗(y)_j⊗⋯`.
pub fn phi(ctx: &BraidContext, input: &TensorElem) -> Result<TensorElem> {
    let values = window_values(ctx, input.letters())?;
    TensorElem::new(mirrored_letters(ctx, &phi_values(ctx, &values)?))
}

/// φ^(k)_{ji}, the inverse of [`phi`].
pub fn phi_inverse(ctx: &BraidContext, input: &TensorElem) -> Result<TensorElem> {
    phi(&ctx.swapped(), input)
}

/// φ^(3)_{ij} evaluated with the nested-clamp expressions instead of max/min.
pub fn phi3_nested_tensor(ctx: &BraidContext, input: &TensorElem) -> Result<TensorElem> {
    if ctx.k() != 3 {
        return Err(Error::ShapeMismatch(
            "nested form exists only for k = 3".into(),
        ));
    }
    let values = window_values(ctx, input.letters())?;
    TensorElem::new(mirrored_letters(ctx, &phi3_nested(ctx.c1, ctx.c2, &values)))
}

/// Applies φ to a contiguous window of a longer tensor. Positions count elementary
/// letters from the right (position 1 is the rightmost), so the highest window
/// position is the leftmost letter and must carry index `i`. A trailing `r_λ` is
/// left untouched.
pub fn apply_at(ctx: &BraidContext, word: &TensorElem, window: &[usize]) -> Result<TensorElem> {
    if window.len() != ctx.letter_count() {
        return Err(Error::ShapeMismatch(format!(
            "window has {} positions, φ^({}) needs {}",
            window.len(),
            ctx.k(),
            ctx.letter_count()
        )));
    }
    let mut sorted = window.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[1] != w[0] + 1) || sorted[0] == 0 {
        return Err(Error::ShapeMismatch(format!(
            "window {window:?} is not contiguous"
        )));
    }
    let n = word.elementary().len();
    let top = *sorted.last().unwrap();
    if top > n {
        return Err(Error::ShapeMismatch(format!(
            "window reaches position {top} but the word has {n} letters"
        )));
    }
    let start = n - top;
    let end = n - sorted[0] + 1;
    let values = window_values(ctx, &word.letters()[start..end])?;
    let mapped = mirrored_letters(ctx, &phi_values(ctx, &values)?);
    let mut letters = word.letters().to_vec();
    letters.splice(start..end, mapped);
    TensorElem::new(letters)
}

/// `{"i": 1, "j": 2, "window": [4, 5, 6]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidDescriptor {
    pub i: usize,
    pub j: usize,
    pub window: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub c1: i64,
    pub c2: i64,
    pub seed: u64,
    pub inputs: usize,
    pub morphism_violations: usize,
    pub involution_violations: usize,
    pub conservation_violations: usize,
    pub altform_violations: usize,
    /// The first few violations, for diagnosis.
    pub samples: Vec<Violation>,
}

impl FuzzReport {
    pub fn total_violations(&self) -> usize {
        self.morphism_violations
            + self.involution_violations
            + self.conservation_violations
            + self.altform_violations
    }
}

/// Sums preserved by φ^(k): the `j`-letters of the output add up to the
/// `j`-letters of the input, and likewise for `i`.
fn conserved(ctx: &BraidContext, input: &[i64], output: &[i64]) -> bool {
    let sum_every_other = |v: &[i64], start: usize| v.iter().skip(start).step_by(2).sum::<i64>();
    match ctx.k() {
        0 => output == [input[1], input[0]],
        _ => {
            sum_every_other(output, 0) == sum_every_other(input, 1)
                && sum_every_other(output, 1) == sum_every_other(input, 0)
        }
    }
}

/// Runs the strict-morphism, involution, conservation and (for `k = 3`)
/// alternative-form checks on `n` seeded random inputs in `[-range, range]^len`.
pub fn fuzz_suite(ctx: &BraidContext, n: usize, seed: u64, range: i64) -> FuzzReport {
    const KEEP: usize = 8;
    let abstract_ctx = BraidContext::from_pair(ctx.c1, ctx.c2).expect("validated pair");
    let cartan = abstract_ctx.rank2_cartan();
    let tensor = TensorCrystal::new(&cartan);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FuzzReport {
        c1: ctx.c1,
        c2: ctx.c2,
        seed,
        inputs: n,
        ..FuzzReport::default()
    };
    let pattern = abstract_ctx.pattern();
    let keep = |report: &mut FuzzReport, v: Violation| {
        if report.samples.len() < KEEP {
            report.samples.push(v);
        }
    };
    for _ in 0..n {
        let values: Vec<i64> = (0..pattern.len())
            .map(|_| rng.gen_range(-range..=range))
            .collect();
        let input = TensorElem::new(
            pattern
                .iter()
                .zip(&values)
                .map(|(&i, &v)| Letter::elem(i, v))
                .collect(),
        )
        .expect("non-empty");
        let map = |b: &TensorElem| phi(&abstract_ctx, b).ok();
        let found =
            check_strict_morphism(&tensor, &tensor, map, std::slice::from_ref(&input), &[1, 2]);
        report.morphism_violations += found.len();
        for v in found {
            keep(&mut report, v);
        }

        let image = phi(&abstract_ctx, &input).expect("shape checked");
        let back = phi_inverse(&abstract_ctx, &image).expect("mirrored shape");
        if back != input {
            report.involution_violations += 1;
            keep(
                &mut report,
                Violation {
                    element: input.to_string(),
                    index: None,
                    kind: ViolationKind::Involution,
                    detail: format!("φ_ji(φ_ij(b)) = {back}"),
                },
            );
        }
        let out: Vec<i64> = image.pairs().into_iter().map(|(_, v)| v).collect();
        if !conserved(&abstract_ctx, &values, &out) {
            report.conservation_violations += 1;
            keep(
                &mut report,
                Violation {
                    element: input.to_string(),
                    index: None,
                    kind: ViolationKind::Conservation,
                    detail: format!("letter sums not conserved: {out:?}"),
                },
            );
        }
        if abstract_ctx.k() == 3 {
            let nested = phi3_nested(ctx.c1, ctx.c2, &values);
            if nested[..] != out[..] {
                report.altform_violations += 1;
                keep(
                    &mut report,
                    Violation {
                        element: input.to_string(),
                        index: None,
                        kind: ViolationKind::AltForm,
                        detail: format!("max/min {out:?} vs nested {nested:?}"),
                    },
                );
            }
        }
    }
    report
}
