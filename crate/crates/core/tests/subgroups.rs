use std::collections::BTreeSet;

use proptest::prelude::*;
use xdelta_core::arith::{self, closure, enumerate_subgroups, project_pi_d, SubgroupDelta};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn units(n: u64) -> Vec<u64> {
    if n <= 2 {
        return vec![1];
    }
    (1..n).filter(|&a| gcd(a, n) == 1).collect()
}

/// Smallest multiplicatively closed set containing `seed`, by saturation.
fn saturate(n: u64, seed: &[u64]) -> BTreeSet<u64> {
    let m = n.max(1);
    let mut set: BTreeSet<u64> = seed.iter().map(|&a| a % m).collect();
    set.insert(1 % m);
    loop {
        let products: Vec<u64> = set
            .iter()
            .flat_map(|&a| set.iter().map(move |&b| a * b % m))
            .collect();
        let before = set.len();
        set.extend(products);
        if set.len() == before {
            return set;
        }
    }
}

/// Subgroups containing −1 for `N ≥ 3`, by saturating every triple of units. Every
/// subgroup of `(Z/N)*` for `N ≤ 30` is generated by at most three elements.
fn subgroups_by_triples(n: u64) -> BTreeSet<Vec<u64>> {
    let u = units(n);
    let minus = n - 1;
    let mut out = BTreeSet::new();
    for &a in &u {
        for &b in &u {
            for &c in &u {
                let set = saturate(n, &[minus, a, b, c]);
                out.insert(set.into_iter().collect());
            }
        }
    }
    out
}

/// Subgroups containing −1, by testing every subset of units for closure.
fn subgroups_by_subsets(n: u64) -> usize {
    let u = units(n);
    let minus = if n <= 2 { 1 } else { n - 1 };
    let rest: Vec<u64> = u
        .iter()
        .copied()
        .filter(|&a| a != 1 && a != minus)
        .collect();
    let mut count = 0;
    for mask in 0u32..(1 << rest.len()) {
        let mut set: BTreeSet<u64> = [1, minus].into_iter().collect();
        set.extend(
            (0..rest.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rest[i]),
        );
        if set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&(a * b % n.max(1)))))
        {
            count += 1;
        }
    }
    count
}

#[test]
fn subgroup_count_matches_subsets() {
    for n in 2..=30u64 {
        if units(n).len() > 16 {
            continue;
        }
        let computed = enumerate_subgroups(n).unwrap().len();
        assert_eq!(computed, subgroups_by_subsets(n), "N = {n}");
    }
}

#[test]
fn subgroup_sets_match_triples() {
    for n in 3..=30u64 {
        let computed: BTreeSet<Vec<u64>> = enumerate_subgroups(n)
            .unwrap()
            .iter()
            .map(|d| d.residues().to_vec())
            .collect();
        assert_eq!(computed, subgroups_by_triples(n), "N = {n}");
    }
}

#[test]
fn enumeration_examples() {
    let thirteen = enumerate_subgroups(13).unwrap();
    let proper: Vec<String> = thirteen
        .iter()
        .filter(|d| d.is_proper_intermediate())
        .map(ToString::to_string)
        .collect();
    assert_eq!(proper, ["{±1, ±5}", "{±1, ±3, ±4}"]);
    for n in 1..=12 {
        assert!(enumerate_subgroups(n)
            .unwrap()
            .iter()
            .all(|d| !d.is_proper_intermediate()));
    }
}

#[test]
fn projection_divides_order() {
    for n in 1..=60u64 {
        for delta in enumerate_subgroups(n).unwrap() {
            for d in arith::divisors(n).unwrap() {
                let image = project_pi_d(&delta, d).unwrap();
                assert_eq!(
                    delta.order() % image.size(),
                    0,
                    "N = {n}, d = {d}, Δ = {delta}"
                );
            }
        }
    }
}

fn brute_phi(n: u64) -> u64 {
    (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
}

proptest! {
    #[test]
    fn totient_is_multiplicative(a in 1u64..400, b in 1u64..400) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(
            arith::euler_phi(a).unwrap() * arith::euler_phi(b).unwrap(),
            arith::euler_phi(a * b).unwrap()
        );
    }

    #[test]
    fn totient_matches_count(n in 1u64..2000) {
        prop_assert_eq!(arith::euler_phi(n).unwrap(), brute_phi(n));
    }

    #[test]
    fn closure_is_idempotent(n in 3u64..200, gens in prop::collection::vec(1i64..400, 0..4)) {
        let gens: Vec<i64> = gens.into_iter().filter(|&g| gcd(g as u64, n) == 1).collect();
        let delta = closure(n, &gens).unwrap();
        let again: Vec<i64> = delta.residues().iter().map(|&r| r as i64).collect();
        prop_assert_eq!(closure(n, &again).unwrap(), delta.clone());
        let rebuilt = SubgroupDelta::from_residues(n, delta.residues()).unwrap();
        prop_assert_eq!(rebuilt, delta.clone());
        prop_assert!(delta.contains(1) && delta.contains(n - 1));
        prop_assert_eq!(delta.residues().to_vec(), saturate(n, delta.residues()).into_iter().collect::<Vec<_>>());
    }
}
