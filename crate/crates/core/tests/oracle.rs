mod common;

use common::{positive_roots, weyl_dimension};
use crystalpoly::registry::lookup;
use crystalpoly::zcrystal::bfs_enumerate;
use crystalpoly::{Mode, Weight};

fn matrix(name: &str) -> Vec<Vec<i64>> {
    let c = lookup(name).unwrap().cartan;
    let n = c.rank();
    (1..=n)
        .map(|i| (1..=n).map(|j| c.pairing(i, j)).collect())
        .collect()
}

#[test]
fn positive_root_counts() {
    for (name, count) in [
        ("a1xa1", 2),
        ("a2", 3),
        ("b2", 4),
        ("c2", 4),
        ("g2", 6),
        ("a3", 6),
        ("a4", 10),
    ] {
        assert_eq!(positive_roots(&matrix(name)).len(), count, "{name}");
    }
}

#[test]
fn frozen_dimensions() {
    let cases: [(&str, &[i64], u128); 9] = [
        ("a2", &[1, 0], 3),
        ("a2", &[1, 1], 8),
        ("a2", &[2, 1], 15),
        ("b2", &[1, 0], 4),
        ("b2", &[0, 1], 5),
        ("g2", &[1, 0], 14),
        ("g2", &[0, 1], 7),
        ("a3", &[1, 1, 1], 64),
        ("a3", &[2, 1, 0], 45),
    ];
    for (name, lambda, dim) in cases {
        assert_eq!(
            weyl_dimension(&lookup(name).unwrap().cartan, lambda),
            dim,
            "{name} {lambda:?}"
        );
    }
}

#[test]
fn full_crystals_have_weyl_dimension() {
    let cases: [(&str, &[i64]); 8] = [
        ("a1xa1", &[2, 1]),
        ("a2", &[2, 1]),
        ("b2", &[1, 1]),
        ("c2", &[1, 1]),
        ("g2", &[1, 0]),
        ("g2", &[0, 1]),
        ("a3", &[1, 0, 1]),
        ("a4", &[0, 1, 0, 0]),
    ];
    for (name, lambda) in cases {
        let b = lookup(name).unwrap();
        let mode = Mode::Highest(Weight::new(lambda.to_vec()));
        let graph = bfs_enumerate(&b.cartan, &b.iota, mode, 64).unwrap();
        assert_eq!(
            graph.len() as u128,
            weyl_dimension(&b.cartan, lambda),
            "{name} {lambda:?}"
        );
    }
}
