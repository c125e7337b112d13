use xdelta_core::arith::{self, enumerate_subgroups, SubgroupDelta};
use xdelta_core::modcurve::{self, cusp_orbits, genus};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn primes_of(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Genus of `X₀(N)` from the classical closed formula, in twelfths.
fn classical_g0(n: u64) -> i64 {
    let ps = primes_of(n);
    let mu = ps.iter().fold(n, |acc, &p| acc / p * (p + 1)) as i64;
    let nu2: i64 = if n.is_multiple_of(4) {
        0
    } else {
        ps.iter()
            .map(|&p| match p {
                2 => 1,
                p if p % 4 == 1 => 2,
                _ => 0,
            })
            .product()
    };
    let nu3: i64 = if n.is_multiple_of(9) {
        0
    } else {
        ps.iter()
            .map(|&p| match p {
                3 => 1,
                p if p % 3 == 1 => 2,
                _ => 0,
            })
            .product()
    };
    let cusps: i64 = divisors(n).iter().map(|&d| phi(gcd(d, n / d)) as i64).sum();
    let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    assert_eq!(twelve_g % 12, 0);
    twelve_g / 12
}

/// Genus of `X₁(N)` from the classical closed formula.
fn classical_g1(n: u64) -> i64 {
    if n <= 4 {
        return 0;
    }
    let ps = primes_of(n);
    let mut index = (n * n) as i64;
    for &p in &ps {
        index = index / (p * p) as i64 * (p * p - 1) as i64;
    }
    let cusp_sum: i64 = divisors(n)
        .iter()
        .map(|&d| (phi(d) * phi(n / d)) as i64)
        .sum();
    let twenty_four_g = 24 + index - 6 * cusp_sum;
    assert_eq!(twenty_four_g % 24, 0);
    twenty_four_g / 24
}

#[test]
fn degenerations_match_classical_formulas() {
    for n in 1..=150u64 {
        let g1 = genus(n, &SubgroupDelta::plus_minus_one(n).unwrap())
            .unwrap()
            .genus;
        let g0 = genus(n, &SubgroupDelta::full(n).unwrap()).unwrap().genus;
        assert_eq!(g1 as i64, classical_g1(n), "g1({n})");
        assert_eq!(g0 as i64, classical_g0(n), "g0({n})");
    }
}

#[test]
fn genus_identity_for_every_subgroup() {
    for n in 1..=150u64 {
        for delta in enumerate_subgroups(n).unwrap() {
            let inv = genus(n, &delta).unwrap();
            let lhs = 12 * (inv.genus as i64 - 1)
                + 3 * inv.nu2 as i64
                + 4 * inv.nu3 as i64
                + 6 * inv.nu_inf as i64;
            assert_eq!(lhs, inv.mu as i64, "N = {n}, Δ = {delta}");
        }
    }
}

#[test]
fn covering_monotonicity() {
    for n in 1..=100u64 {
        let all = enumerate_subgroups(n).unwrap();
        let genera: Vec<u64> = all.iter().map(|d| genus(n, d).unwrap().genus).collect();
        for (i, small) in all.iter().enumerate() {
            for (j, large) in all.iter().enumerate() {
                if small.is_subgroup_of(large) {
                    assert!(genera[i] >= genera[j], "N = {n}: {small} ⊆ {large}");
                }
            }
        }
    }
}

#[test]
fn cusp_identities_per_divisor() {
    for n in 1..=120u64 {
        for delta in enumerate_subgroups(n).unwrap() {
            let degree = delta.index_in_units();
            for c in cusp_orbits(n, &delta).unwrap() {
                let d = c.divisor;
                assert_eq!(c.orbit_count * c.image_size, phi(d) * phi(n / d));
                assert_eq!(c.e_p1 * c.e_p2, c.e_total);
                assert_eq!(c.e_total, gcd(d, n / d));
                assert_eq!(c.e_p1, delta.order() / c.image_size);
                // cusps of X_Δ over the φ((d, N/d)) cusps of X₀ add up to the degree
                assert_eq!(
                    c.orbit_count * c.e_p2,
                    degree * phi(gcd(d, n / d)),
                    "N = {n}, d = {d}, Δ = {delta}"
                );
            }
        }
    }
}

#[test]
fn index_is_degree_over_x0() {
    for n in 1..=150u64 {
        let full = SubgroupDelta::full(n).unwrap();
        let mu0 = modcurve::index_mu(n, &full).unwrap();
        for delta in enumerate_subgroups(n).unwrap() {
            assert_eq!(
                modcurve::index_mu(n, &delta).unwrap(),
                mu0 * arith::euler_phi(n).unwrap() / delta.order()
            );
        }
    }
}
