//! Independent oracles shared by the integration tests.

use std::collections::BTreeSet;

use crystalpoly::CartanData;

/// Positive roots of the root system whose Cartan matrix is `a` (`a[i][j] = ⟨h_i, α_j⟩`),
/// in the basis of simple roots, by closing the simple roots under reflections.
/// Only meaningful for finite types.
pub fn positive_roots(a: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = a.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut roots: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut frontier: Vec<Vec<i64>> = simple;
    while let Some(beta) = frontier.pop() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| a[i][j] * beta[j]).sum();
            let mut r = beta.clone();
            r[i] -= pairing;
            if r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c > 0) && roots.insert(r.clone()) {
                frontier.push(r);
            }
        }
    }
    roots
}

/// Weyl dimension formula `∏ ⟨α^∨, λ+ρ⟩ / ⟨α^∨, ρ⟩` over positive coroots, which
/// are the positive roots of the transposed matrix.
pub fn weyl_dimension(cartan: &CartanData, lambda: &[i64]) -> u128 {
    let n = cartan.rank();
    let transposed: Vec<Vec<i64>> = (1..=n)
        .map(|i| (1..=n).map(|j| cartan.pairing(j, i)).collect())
        .collect();
    let (mut num, mut den) = (1u128, 1u128);
    for coroot in positive_roots(&transposed) {
        let shifted: i64 = coroot.iter().zip(lambda).map(|(c, m)| c * (m + 1)).sum();
        let rho: i64 = coroot.iter().sum();
        num *= shifted as u128;
        den *= rho as u128;
    }
    num / den
}
