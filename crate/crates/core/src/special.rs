//! Closed-form inequality systems (rank 2 and type `A_n`), reduced longest words
//! and the support-truncation predicates checked on `B(∞)`.

use std::collections::BTreeSet;

use crate::cartan::{CartanData, Sequence, Weight};
use crate::error::{Error, Result};
use crate::polyhedral::{FormSet, LinearForm};
use crate::zcrystal::{Mode, ZCrystal, ZVector};

/// `P_k(X)` from `P_0 = 1`, `P_1 = X`, `P_k = X·P_{k-1} - P_{k-2}`.
pub fn chebyshev(k: usize, x: i64) -> i64 {
    let (mut prev, mut cur) = (1i64, x);
    match k {
        0 => 1,
        _ => {
            for _ in 1..k {
                let next = x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `a_0 = 0`, `a_1 = 1`, `a_{2k} = c1·P_{k-1}(X)`, `a_{2k+1} = P_k(X) + P_{k-1}(X)`
/// with `X = c1·c2 - 2`.
pub fn a_sequence(c1: i64, c2: i64, l: usize) -> i64 {
    let x = c1 * c2 - 2;
    match l {
        0 => 0,
        1 => 1,
        _ if l.is_multiple_of(2) => c1 * chebyshev(l / 2 - 1, x),
        _ => {
            let k = l / 2;
            chebyshev(k, x) + chebyshev(k - 1, x)
        }
    }
}

/// Minimal `l` with `a_{l+1} < 0`; `None` stands for `+∞` (`c1·c2 ≥ 4`).
pub fn l_max(c1: i64, c2: i64) -> Option<usize> {
    if c1 * c2 >= 4 {
        return None;
    }
    (0..).find(|&l| a_sequence(c1, c2, l + 1) < 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Data {
    pub c1: i64,
    pub c2: i64,
    pub l_max: Option<usize>,
}

impl Rank2Data {
    pub fn new(c1: i64, c2: i64) -> Self {
        Self {
            c1,
            c2,
            l_max: l_max(c1, c2),
        }
    }

    pub fn x(&self) -> i64 {
        self.c1 * self.c2 - 2
    }

    pub fn a(&self, l: usize) -> i64 {
        a_sequence(self.c1, self.c2, l)
    }

    /// `a'_l = a_l(c2, c1)`.
    pub fn a_prime(&self, l: usize) -> i64 {
        a_sequence(self.c2, self.c1, l)
    }
}

/// The rank-2 system for `ι = ⋯2121` (`i_1 = 1`).
///
/// In highest-weight mode the forms are `λ_1 - x_1`, and for `1 ≤ l < L`,
/// `a_l x_l - a_{l-1} x_{l+1}` and `λ_2 + a'_{l+1} x_l - a'_l x_{l+1}`, plus `x_k`
/// for `k ≤ L`. `L` is `l_max`, or `window` when `l_max = ∞`. Positions above `L`
/// are zero. In `B(∞)` mode only the `λ`-free forms are kept.
pub fn rank2_system(c1: i64, c2: i64, mode: &Mode, window: usize) -> Result<FormSet> {
    if let Mode::Highest(ref w) = mode {
        w.check_rank(2)?;
        if !w.is_dominant() {
            return Err(Error::InvalidWeight(format!("{w} is not dominant")));
        }
    }
    let data = Rank2Data::new(c1, c2);
    let bound = data.l_max.unwrap_or(window);
    if bound == 0 {
        return Err(Error::SupportOverflow { position: 1, bound });
    }
    let mut forms: Vec<LinearForm> = (1..=bound).map(LinearForm::var).collect();
    for l in 1..bound {
        forms.push(LinearForm::from_ints(
            0,
            &[(l, data.a(l)), (l + 1, -data.a(l - 1))],
        ));
    }
    if let Mode::Highest(ref w) = mode {
        forms.push(LinearForm::from_ints(w.pairing(1), &[(1, -1)]));
        for l in 1..bound {
            forms.push(LinearForm::from_ints(
                w.pairing(2),
                &[(l, data.a_prime(l + 1)), (l + 1, -data.a_prime(l))],
            ));
        }
    }
    Ok(FormSet::closed(forms, bound, mode.clone()))
}

/// Flat position of the double index `(j; i)` for type `A_n`.
pub fn an_position(n: usize, j: usize, i: usize) -> usize {
    (j - 1) * n + i
}

/// The type `A_n` system for `ι` with period `1, 2, …, n` (position order).
///
/// Chains `x_{1;i} ≥ x_{2;i-1} ≥ ⋯ ≥ x_{i;1} ≥ 0`, equalities `x_{j;i} = 0` for
/// `i + j > n + 1` as paired forms, and in highest-weight mode
/// `λ_i ≥ x_{j;i-j+1} - x_{j;i-j}` for `1 ≤ j ≤ i ≤ n`. Positions run over `1..=n²`.
pub fn an_system(n: usize, mode: &Mode) -> Result<FormSet> {
    if n == 0 {
        return Err(Error::InvalidCartan("A_0 has no indices".into()));
    }
    if let Mode::Highest(ref w) = mode {
        w.check_rank(n)?;
        if !w.is_dominant() {
            return Err(Error::InvalidWeight(format!("{w} is not dominant")));
        }
    }
    let pos = |j: usize, i: usize| an_position(n, j, i);
    let mut forms = Vec::new();
    for i in 1..=n {
        for m in 1..i {
            forms.push(LinearForm::from_ints(
                0,
                &[(pos(m, i - m + 1), 1), (pos(m + 1, i - m), -1)],
            ));
        }
        forms.push(LinearForm::var(pos(i, 1)));
    }
    for j in 1..=n {
        for i in 1..=n {
            if i + j > n + 1 {
                forms.push(LinearForm::from_ints(0, &[(pos(j, i), 1)]));
                forms.push(LinearForm::from_ints(0, &[(pos(j, i), -1)]));
            }
        }
    }
    if let Mode::Highest(ref w) = mode {
        for i in 1..=n {
            for j in 1..=i {
                let mut coeffs = vec![(pos(j, i - j + 1), -1)];
                if i > j {
                    coeffs.push((pos(j, i - j), 1));
                }
                forms.push(LinearForm::from_ints(w.pairing(i), &coeffs));
            }
        }
    }
    Ok(FormSet::closed(forms, n * n, mode.clone()))
}

/// A word `i_1, …, i_N` in position order, claimed to be a reduced expression of
/// the longest Weyl group element. Only its length is validated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWord {
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(letters: Vec<usize>, cartan: &CartanData, longest: usize) -> Result<Self> {
        for &i in &letters {
            cartan.check_index(i)?;
        }
        if letters.len() != longest {
            return Err(Error::InvalidSequence(format!(
                "a longest word has length {longest}, got {}",
                letters.len()
            )));
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word repeated forever.
    pub fn sequence(&self, rank: usize) -> Result<Sequence> {
        Sequence::new(self.letters.clone(), rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationViolation {
    /// `x_k ≠ 0` for some `k` beyond the longest-word length.
    BeyondLongest { position: usize },
    /// `x_l ≠ 0` although `i_l = i_{l-1}`.
    RepeatedLetter { position: usize },
}

#[derive(Debug, Clone)]
pub struct TruncationReport {
    pub nodes: usize,
    pub max_support: usize,
    pub violations: Vec<(ZVector, TruncationViolation)>,
}

/// Runs `B(∞)` BFS for `ι = word word word ⋯` and checks that every node vanishes
/// past position `N` and at every position repeating its predecessor's index.
pub fn truncation_check(
    cartan: &CartanData,
    word: &ReducedWord,
    depth: usize,
) -> Result<TruncationReport> {
    let seq = word.sequence(cartan.rank())?;
    let z = ZCrystal::new(cartan.clone(), seq.clone(), Mode::Infinity)?;
    let graph = z.bfs(depth);
    let n = word.len();
    let mut violations = Vec::new();
    let mut max_support = 0;
    for x in graph.nodes() {
        max_support = max_support.max(x.support_max());
        for &k in x.coords().keys() {
            if k > n {
                violations.push((
                    x.clone(),
                    TruncationViolation::BeyondLongest { position: k },
                ));
            }
            if k > 1 && seq.index(k) == seq.index(k - 1) {
                violations.push((
                    x.clone(),
                    TruncationViolation::RepeatedLetter { position: k },
                ));
            }
        }
    }
    Ok(TruncationReport {
        nodes: graph.len(),
        max_support,
        violations,
    })
}

/// Positions `l ≥ 2` up to `len` whose index repeats the previous one.
pub fn repeated_positions(seq: &Sequence, len: usize) -> BTreeSet<usize> {
    (2..=len)
        .filter(|&l| seq.index(l) == seq.index(l - 1))
        .collect()
}

/// Type `A_3` word `1 2 3 1 2 1` (position order) and the inequalities describing
/// its `B(∞)` image, or its `B(λ)` image for `λ = (m_1, m_2, m_3)`.
pub fn golden_iota1(lambda: Option<&Weight>) -> Result<FormSet> {
    let mut forms = vec![
        LinearForm::from_ints(0, &[(1, 1)]),
        LinearForm::from_ints(0, &[(2, 1), (4, -1)]),
        LinearForm::from_ints(0, &[(4, 1)]),
        LinearForm::from_ints(0, &[(3, 1), (5, -1)]),
        LinearForm::from_ints(0, &[(5, 1), (6, -1)]),
        LinearForm::from_ints(0, &[(6, 1)]),
    ];
    if let Some(w) = lambda {
        w.check_rank(3)?;
        let (m1, m2, m3) = (w.pairing(1), w.pairing(2), w.pairing(3));
        forms.extend([
            LinearForm::from_ints(m1, &[(1, -1)]),
            LinearForm::from_ints(m2, &[(2, -1), (1, 1)]),
            LinearForm::from_ints(m2, &[(4, -1)]),
            LinearForm::from_ints(m3, &[(3, -1), (2, 1)]),
            LinearForm::from_ints(m3, &[(5, -1), (4, 1)]),
            LinearForm::from_ints(m3, &[(6, -1)]),
        ]);
    }
    Ok(FormSet::closed(forms, 6, mode_of(lambda)))
}

/// Type `A_3` word `1 2 3 2 1 2` (position order), the image of [`golden_iota1`]
/// under the braid map on positions 4, 5, 6.
pub fn golden_iota0(lambda: Option<&Weight>) -> Result<FormSet> {
    let mut forms = vec![
        LinearForm::from_ints(0, &[(1, 1)]),
        LinearForm::from_ints(0, &[(4, 1)]),
        LinearForm::from_ints(0, &[(3, 1), (4, -1), (6, -1)]),
        LinearForm::from_ints(0, &[(2, 1), (4, 1), (5, -1)]),
        LinearForm::from_ints(0, &[(5, 1), (6, -1)]),
        LinearForm::from_ints(0, &[(6, 1)]),
        LinearForm::from_ints(0, &[(2, 1), (6, -1)]),
    ];
    if let Some(w) = lambda {
        w.check_rank(3)?;
        let (m1, m2, m3) = (w.pairing(1), w.pairing(2), w.pairing(3));
        forms.extend([
            LinearForm::from_ints(m1, &[(1, -1)]),
            LinearForm::from_ints(m3, &[(4, -1)]),
            LinearForm::from_ints(m2, &[(2, -1), (1, 1)]),
            LinearForm::from_ints(m2, &[(5, -1), (4, 1)]),
            LinearForm::from_ints(m2, &[(6, -1)]),
            LinearForm::from_ints(m3, &[(3, -1), (2, 1)]),
        ]);
    }
    Ok(FormSet::closed(forms, 6, mode_of(lambda)))
}

fn mode_of(lambda: Option<&Weight>) -> Mode {
    lambda.map_or(Mode::Infinity, |w| Mode::Highest(w.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::enumerate_lattice_points;
    use crate::zcrystal::bfs_enumerate;

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev(0, 17), 1);
        assert_eq!(chebyshev(2, 2), 3);
        for k in 0..10 {
            assert_eq!(chebyshev(k, 2), k as i64 + 1);
        }
        for x in -3..=3 {
            assert_eq!(chebyshev(2, x), x * x - 1);
            assert_eq!(chebyshev(3, x), x * x * x - 2 * x);
        }
    }

    #[test]
    fn a_sequence_values() {
        let seq: Vec<i64> = (0..=6).map(|l| a_sequence(3, 1, l)).collect();
        assert_eq!(seq, vec![0, 1, 3, 2, 3, 1, 0]);
        for l in 0..12 {
            assert_eq!(a_sequence(2, 2, l), l as i64);
        }
        assert_eq!(a_sequence(2, 1, 2), 2);
        assert_eq!(a_sequence(2, 1, 3), 1);
    }

    #[test]
    fn l_max_table() {
        assert_eq!(l_max(0, 0), Some(2));
        assert_eq!(l_max(1, 1), Some(3));
        assert_eq!(l_max(1, 2), Some(4));
        assert_eq!(l_max(2, 1), Some(4));
        assert_eq!(l_max(1, 3), Some(6));
        assert_eq!(l_max(3, 1), Some(6));
        assert_eq!(l_max(2, 2), None);
        assert_eq!(l_max(1, 4), None);
    }

    #[test]
    fn a2_rank2_counts() {
        let xi = rank2_system(1, 1, &Mode::Highest(Weight::new(vec![1, 0])), 0).unwrap();
        assert_eq!(enumerate_lattice_points(&xi, 2).unwrap().len(), 3);
        let zero = rank2_system(1, 1, &Mode::Highest(Weight::new(vec![0, 0])), 0).unwrap();
        assert_eq!(enumerate_lattice_points(&zero, 6).unwrap().len(), 1);
        assert!(rank2_system(1, 1, &Mode::Highest(Weight::new(vec![-1, 0])), 0).is_err());
    }

    #[test]
    fn affine_rank2_forms() {
        let xi = rank2_system(2, 2, &Mode::Highest(Weight::new(vec![1, 1])), 5).unwrap();
        assert_eq!(xi.support_bound, 5);
        for l in 1..5usize {
            let l_i = l as i64;
            assert!(xi.contains(&LinearForm::from_ints(0, &[(l, l_i), (l + 1, -(l_i - 1))])));
            assert!(xi.contains(&LinearForm::from_ints(1, &[(l, l_i + 1), (l + 1, -l_i)])));
        }
        assert!(xi.contains(&LinearForm::from_ints(1, &[(1, -1)])));
        let x = ZVector::from_dense(&[1, 2]);
        assert!(crate::polyhedral::member(&xi, &x).unwrap());
    }

    #[test]
    fn an_small_cases() {
        let xi = an_system(1, &Mode::Highest(Weight::new(vec![2]))).unwrap();
        assert_eq!(enumerate_lattice_points(&xi, 5).unwrap().len(), 3);

        let a3 = an_system(3, &Mode::Highest(Weight::new(vec![0, 1, 0]))).unwrap();
        assert_eq!(enumerate_lattice_points(&a3, 6).unwrap().len(), 6);
        let a3 = an_system(3, &Mode::Highest(Weight::new(vec![0, 0, 1]))).unwrap();
        let pts = enumerate_lattice_points(&a3, 6).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().any(|x| x.get(7) > 0));
    }

    #[test]
    fn a2_systems_agree() {
        for lambda in [[0, 0], [1, 0], [0, 1], [1, 1], [2, 1]] {
            let mode = Mode::Highest(Weight::new(lambda.to_vec()));
            let r2 = enumerate_lattice_points(&rank2_system(1, 1, &mode, 0).unwrap(), 8).unwrap();
            let an = enumerate_lattice_points(&an_system(2, &mode).unwrap(), 8).unwrap();
            assert_eq!(r2, an, "λ = {lambda:?}");
        }
    }

    #[test]
    fn rank2_matches_bfs_in_both_modes() {
        let c = CartanData::rank2(1, 2).unwrap();
        let s = Sequence::new(vec![1, 2], 2).unwrap();
        for mode in [Mode::Infinity, Mode::Highest(Weight::new(vec![1, 1]))] {
            let xi = rank2_system(1, 2, &mode, 0).unwrap();
            let pts = enumerate_lattice_points(&xi, 6).unwrap();
            let bfs: BTreeSet<ZVector> = bfs_enumerate(&c, &s, mode, 6)
                .unwrap()
                .nodes()
                .iter()
                .cloned()
                .collect();
            assert_eq!(pts, bfs);
        }
    }

    #[test]
    fn truncation_on_a2_and_sl2() {
        let a2 = CartanData::type_a(2).unwrap();
        let word = ReducedWord::new(vec![1, 2, 1], &a2, 3).unwrap();
        let report = truncation_check(&a2, &word, 6).unwrap();
        assert!(report.violations.is_empty());
        assert!(report.max_support <= 3);
        assert!(ReducedWord::new(vec![1, 2], &a2, 3).is_err());

        let sl2 = CartanData::type_a(1).unwrap();
        let word = ReducedWord::new(vec![1], &sl2, 1).unwrap();
        let report = truncation_check(&sl2, &word, 6).unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(report.max_support, 1);
        assert!(repeated_positions(&word.sequence(1).unwrap(), 4).contains(&2));
    }

    #[test]
    fn golden_sets_have_expected_shapes() {
        assert_eq!(golden_iota1(None).unwrap().len(), 6);
        assert_eq!(golden_iota0(None).unwrap().len(), 7);
        let w = Weight::new(vec![1, 1, 1]);
        assert_eq!(golden_iota1(Some(&w)).unwrap().len(), 12);
        assert!(golden_iota0(Some(&Weight::new(vec![1]))).is_err());
    }
}
