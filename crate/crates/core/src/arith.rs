//! Number-theoretic primitives and the subgroups `{±1} ⊆ Δ ⊆ (Z/NZ)*`.
//!
//! Subgroups are stored as full sorted residue lists. For `N = 1` and `N = 2`
//! the unit group is the trivial group `{1}` and `±1` coincide.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Levels above this are refused unless a caller supplies its own ceiling.
pub const DEFAULT_LEVEL_CEILING: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("argument must be a positive integer, got 0")]
    Zero,
    #[error("generator {residue} is not coprime to the level {level}")]
    NotCoprime { residue: i64, level: u64 },
    #[error("{divisor} does not divide the level {level}")]
    NotDivisor { divisor: u64, level: u64 },
    #[error("level {level} exceeds the ceiling {ceiling}")]
    LevelTooLarge { level: u64, ceiling: u64 },
    #[error("residues {residues:?} do not form a subgroup of (Z/{level}Z)* containing ±1")]
    NotSubgroup { level: u64, residues: Vec<u64> },
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, primes in increasing order.
pub fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

pub fn prime_divisors(n: u64) -> Result<Vec<u64>, ArithError> {
    Ok(factorize(n)?.into_iter().map(|(p, _)| p).collect())
}

/// Euler's totient, `φ(1) = 1`.
pub fn euler_phi(n: u64) -> Result<u64, ArithError> {
    let mut phi = n;
    for (p, _) in factorize(n)? {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// All positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Result<Vec<u64>, ArithError> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n)? {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Canonical representative of `r` modulo `n`; everything is `1` modulo 1.
fn reduce(r: i64, n: u64) -> u64 {
    if n == 1 {
        1
    } else {
        r.rem_euclid(n as i64) as u64
    }
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    if n == 1 {
        1
    } else {
        ((a as u128 * b as u128) % n as u128) as u64
    }
}

fn minus_one(n: u64) -> u64 {
    if n <= 2 {
        1
    } else {
        n - 1
    }
}

fn check_ceiling(level: u64, ceiling: u64) -> Result<(), ArithError> {
    if level == 0 {
        return Err(ArithError::Zero);
    }
    if level > ceiling {
        return Err(ArithError::LevelTooLarge { level, ceiling });
    }
    Ok(())
}

/// The unit group `(Z/NZ)*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    level: u64,
    residues: Vec<u64>,
}

impl UnitGroup {
    pub fn new(level: u64) -> Result<Self, ArithError> {
        check_ceiling(level, DEFAULT_LEVEL_CEILING)?;
        let residues = if level <= 2 {
            vec![1]
        } else {
            (1..level).filter(|&r| gcd(r, level) == 1).collect()
        };
        Ok(Self { level, residues })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn order(&self) -> usize {
        self.residues.len()
    }
}

/// A subgroup `Δ` of `(Z/NZ)*` containing `±1`, as a sorted residue list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupDelta {
    level: u64,
    residues: Vec<u64>,
}

impl SubgroupDelta {
    /// `{±1}`, the subgroup belonging to `X₁(N)`.
    pub fn plus_minus_one(level: u64) -> Result<Self, ArithError> {
        closure(level, &[])
    }

    /// The whole unit group, the subgroup belonging to `X₀(N)`.
    pub fn full(level: u64) -> Result<Self, ArithError> {
        let units = UnitGroup::new(level)?;
        Ok(Self {
            level,
            residues: units.residues,
        })
    }

    /// Validates a complete residue list. Order and duplicates in the input
    /// do not matter.
    pub fn from_residues(level: u64, residues: &[u64]) -> Result<Self, ArithError> {
        check_ceiling(level, DEFAULT_LEVEL_CEILING)?;
        let set: BTreeSet<u64> = residues.iter().map(|&r| reduce(r as i64, level)).collect();
        let not_subgroup = || ArithError::NotSubgroup {
            level,
            residues: residues.to_vec(),
        };
        if let Some(&r) = set.iter().find(|&&r| gcd(r, level) != 1) {
            return Err(ArithError::NotCoprime {
                residue: r as i64,
                level,
            });
        }
        if !set.contains(&1) || !set.contains(&minus_one(level)) {
            return Err(not_subgroup());
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&mul_mod(a, b, level)) {
                    return Err(not_subgroup());
                }
            }
        }
        Ok(Self {
            level,
            residues: set.into_iter().collect(),
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// `|Δ|`.
    pub fn order(&self) -> u64 {
        self.residues.len() as u64
    }

    pub fn contains(&self, r: u64) -> bool {
        self.residues
            .binary_search(&reduce(r as i64, self.level))
            .is_ok()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupDelta) -> bool {
        self.level == other.level && self.residues.iter().all(|&r| other.contains(r))
    }

    pub fn is_plus_minus_one(&self) -> bool {
        self.residues.len() <= 2
    }

    pub fn is_full(&self) -> bool {
        self.order() == euler_phi(self.level).unwrap_or(0)
    }

    /// Strictly between `{±1}` and the full unit group.
    pub fn is_proper_intermediate(&self) -> bool {
        !self.is_plus_minus_one() && !self.is_full()
    }

    /// Index `[(Z/NZ)* : Δ]`, the degree of `X_Δ(N) → X₀(N)`.
    pub fn index_in_units(&self) -> u64 {
        euler_phi(self.level).unwrap_or(0) / self.order()
    }

    /// Representatives of `Δ/{±1}`: the residues `r ≤ N/2`.
    pub fn half_residues(&self) -> impl Iterator<Item = u64> + '_ {
        let level = self.level;
        self.residues
            .iter()
            .copied()
            .filter(move |&r| level <= 2 || 2 * r < level)
    }
}

impl fmt::Display for SubgroupDelta {
    /// Writes `{±1, ±5}` style notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, r) in self.half_residues().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if self.level <= 2 {
                write!(f, "{r}")?;
            } else {
                write!(f, "±{r}")?;
            }
        }
        f.write_str("}")
    }
}

/// Smallest subgroup of `(Z/NZ)*` containing the generators and `±1`.
pub fn closure(level: u64, generators: &[i64]) -> Result<SubgroupDelta, ArithError> {
    closure_with_ceiling(level, generators, DEFAULT_LEVEL_CEILING)
}

pub fn closure_with_ceiling(
    level: u64,
    generators: &[i64],
    ceiling: u64,
) -> Result<SubgroupDelta, ArithError> {
    check_ceiling(level, ceiling)?;
    for &g in generators {
        if gcd(reduce(g, level), level) != 1 {
            return Err(ArithError::NotCoprime { residue: g, level });
        }
    }
    let mut group = SubgroupMask::plus_minus_one(level);
    for &g in generators {
        group.adjoin(reduce(g, level));
    }
    Ok(group.into_subgroup())
}

/// Membership bitmap used while building subgroups.
#[derive(Clone)]
struct SubgroupMask {
    level: u64,
    member: Vec<bool>,
    elements: Vec<u64>,
}

impl SubgroupMask {
    fn plus_minus_one(level: u64) -> Self {
        let mut mask = Self {
            level,
            member: vec![false; level.max(2) as usize],
            elements: Vec::new(),
        };
        mask.insert(1);
        mask.insert(minus_one(level));
        mask
    }

    fn from_subgroup(delta: &SubgroupDelta) -> Self {
        let mut mask = Self {
            level: delta.level,
            member: vec![false; delta.level.max(2) as usize],
            elements: Vec::new(),
        };
        for &r in &delta.residues {
            mask.insert(r);
        }
        mask
    }

    fn insert(&mut self, r: u64) {
        if !self.member[r as usize] {
            self.member[r as usize] = true;
            self.elements.push(r);
        }
    }

    fn contains(&self, r: u64) -> bool {
        self.member[r as usize]
    }

    /// Replaces the group `H` by `<H, g>`, the union of the cosets `H·g^k`.
    fn adjoin(&mut self, g: u64) {
        if self.contains(g) {
            return;
        }
        let base = self.elements.clone();
        let mut power = g;
        while !self.contains(power) {
            for &h in &base {
                let x = mul_mod(h, power, self.level);
                self.insert(x);
            }
            power = mul_mod(power, g, self.level);
        }
    }

    fn into_subgroup(mut self) -> SubgroupDelta {
        self.elements.sort_unstable();
        SubgroupDelta {
            level: self.level,
            residues: self.elements,
        }
    }
}

/// Every subgroup `{±1} ⊆ Δ ⊆ (Z/NZ)*`, sorted by `(|Δ|, residues)`.
pub fn enumerate_subgroups(level: u64) -> Result<Vec<SubgroupDelta>, ArithError> {
    enumerate_subgroups_with_ceiling(level, DEFAULT_LEVEL_CEILING)
}

pub fn enumerate_subgroups_with_ceiling(
    level: u64,
    ceiling: u64,
) -> Result<Vec<SubgroupDelta>, ArithError> {
    check_ceiling(level, ceiling)?;
    let units = UnitGroup::new(level)?;
    let start = closure(level, &[])?;
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    seen.insert(start.residues.clone());
    let mut queue = vec![start];
    let mut found = Vec::new();
    // Every subgroup arises from {±1} by adjoining one generator at a time.
    while let Some(h) = queue.pop() {
        let mask = SubgroupMask::from_subgroup(&h);
        for &g in units.residues() {
            if mask.contains(g) {
                continue;
            }
            let mut bigger = mask.clone();
            bigger.adjoin(g);
            let sub = bigger.into_subgroup();
            if seen.insert(sub.residues.clone()) {
                queue.push(sub);
            }
        }
        found.push(h);
    }
    found.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.residues.cmp(&b.residues))
    });
    Ok(found)
}

/// Image `π_d(Δ)` of `Δ` in `(Z/lcm(d, N/d)Z)*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectedImage {
    pub modulus: u64,
    pub residues: Vec<u64>,
}

impl ProjectedImage {
    pub fn size(&self) -> u64 {
        self.residues.len() as u64
    }
}

pub fn project_pi_d(delta: &SubgroupDelta, d: u64) -> Result<ProjectedImage, ArithError> {
    let level = delta.level;
    if d == 0 || !level.is_multiple_of(d) {
        return Err(ArithError::NotDivisor { divisor: d, level });
    }
    let modulus = lcm(d, level / d);
    let residues: BTreeSet<u64> = delta
        .residues
        .iter()
        .map(|&r| reduce(r as i64, modulus))
        .collect();
    Ok(ProjectedImage {
        modulus,
        residues: residues.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    fn brute_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), Ok(1));
        assert_eq!(brute_phi(21), 12);
        assert_eq!(euler_phi(21), Ok(12));
        assert_eq!(brute_phi(32), 16);
        assert_eq!(euler_phi(32), Ok(16));
        assert_eq!(euler_phi(0), Err(ArithError::Zero));
        for n in 1..500 {
            assert_eq!(euler_phi(n).unwrap(), brute_phi(n), "n = {n}");
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap(), [1]);
        assert_eq!(divisors(21).unwrap(), [1, 3, 7, 21]);
        assert_eq!(divisors(32).unwrap(), [1, 2, 4, 8, 16, 32]);
        assert_eq!(divisors(0), Err(ArithError::Zero));
        for n in 1..300 {
            assert_eq!(divisors(n).unwrap(), brute_divisors(n));
        }
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure(21, &[8]).unwrap().residues(), [1, 8, 13, 20]);
        assert_eq!(closure(13, &[1]).unwrap().residues(), [1, 12]);
        assert_eq!(closure(13, &[5]).unwrap().residues(), [1, 5, 8, 12]);
        assert_eq!(closure(1, &[]).unwrap().residues(), [1]);
        assert_eq!(closure(2, &[1]).unwrap().residues(), [1]);
        assert_eq!(closure(21, &[-13]).unwrap().residues(), [1, 8, 13, 20]);
    }

    #[test]
    fn closure_rejects_non_coprime_generator() {
        assert_eq!(
            closure(21, &[8, 14]),
            Err(ArithError::NotCoprime {
                residue: 14,
                level: 21
            })
        );
        assert_eq!(
            closure(12, &[0]),
            Err(ArithError::NotCoprime {
                residue: 0,
                level: 12
            })
        );
    }

    #[test]
    fn enumerate_examples() {
        let subs = enumerate_subgroups(13).unwrap();
        let lists: Vec<&[u64]> = subs.iter().map(|s| s.residues()).collect();
        assert_eq!(
            lists,
            [
                &[1, 12][..],
                &[1, 5, 8, 12][..],
                &[1, 3, 4, 9, 10, 12][..],
                &(1..13).collect::<Vec<_>>()[..],
            ]
        );
        assert_eq!(enumerate_subgroups(12).unwrap().len(), 2);
        assert_eq!(enumerate_subgroups(1).unwrap().len(), 1);
        assert_eq!(enumerate_subgroups(2).unwrap().len(), 1);
    }

    #[test]
    fn ceiling_is_enforced() {
        assert_eq!(
            enumerate_subgroups_with_ceiling(101, 100),
            Err(ArithError::LevelTooLarge {
                level: 101,
                ceiling: 100
            })
        );
        assert!(matches!(
            enumerate_subgroups(DEFAULT_LEVEL_CEILING + 1),
            Err(ArithError::LevelTooLarge { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let delta = closure(32, &[15]).unwrap();
        assert_eq!(delta.residues(), [1, 15, 17, 31]);
        let img = project_pi_d(&delta, 4).unwrap();
        assert_eq!(img.modulus, 8);
        assert_eq!(img.residues, [1, 7]);
        assert_eq!(img.size(), 2);

        let same = project_pi_d(&delta, 1).unwrap();
        assert_eq!(same.modulus, 32);
        assert_eq!(same.residues, delta.residues());

        let pm = closure(21, &[]).unwrap();
        let img = project_pi_d(&pm, 3).unwrap();
        assert_eq!((img.modulus, img.residues), (21, vec![1, 20]));

        // lcm(2, 1) = 2: the trivial group.
        let two = SubgroupDelta::full(2).unwrap();
        assert_eq!(project_pi_d(&two, 2).unwrap().size(), 1);
        assert_eq!(
            project_pi_d(&delta, 3),
            Err(ArithError::NotDivisor {
                divisor: 3,
                level: 32
            })
        );
    }

    #[test]
    fn from_residues_validates() {
        assert!(SubgroupDelta::from_residues(40, &[1, 9, 31, 39]).is_ok());
        assert!(matches!(
            SubgroupDelta::from_residues(13, &[1, 5, 12]),
            Err(ArithError::NotSubgroup { .. })
        ));
        assert!(matches!(
            SubgroupDelta::from_residues(13, &[1, 5, 8]),
            Err(ArithError::NotSubgroup { .. })
        ));
        assert!(matches!(
            SubgroupDelta::from_residues(12, &[1, 2, 11]),
            Err(ArithError::NotCoprime { .. })
        ));
    }

    #[test]
    fn display_uses_plus_minus_notation() {
        let delta = closure(13, &[3]).unwrap();
        assert_eq!(alloc::format!("{delta}"), "{±1, ±3, ±4}");
        assert_eq!(alloc::format!("{}", closure(1, &[]).unwrap()), "{1}");
    }
}
