//! Genus of `X_Δ(N)` together with its elliptic points, cusps, and the
//! ramification of cusps in the tower `X₁(N) → X_Δ(N) → X₀(N)`.

use alloc::vec::Vec;

use num_rational::Ratio;
use thiserror::Error;

use crate::arith::{self, ArithError, SubgroupDelta};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("subgroup has level {delta_level}, expected {level}")]
    LevelMismatch { level: u64, delta_level: u64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
    /// Never produced by valid input; indicates a bug.
    #[error("internal inconsistency at level {level}: {what}")]
    Inconsistent { level: u64, what: &'static str },
}

/// `μ, ν₂, ν₃, ν∞` and the genus of one `X_Δ(N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveInvariants {
    pub level: u64,
    pub delta: SubgroupDelta,
    /// Index of `Γ̄_Δ(N)` in `PSL₂(Z)`.
    pub mu: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub nu_inf: u64,
    pub genus: u64,
}

/// Cusp data for the divisor `d` of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspOrbitData {
    pub divisor: u64,
    /// Cusps of `X_Δ(N)` over the cusps of `X₁(N)` with `(y, N) = d`.
    pub orbit_count: u64,
    /// Ramification of such a cusp in `X₁(N) → X₀(N)`, equal to `(N/d, d)`.
    pub e_total: u64,
    /// Ramification in `X₁(N) → X_Δ(N)`, equal to `|Δ| / |π_d(Δ)|`.
    pub e_p1: u64,
    /// Ramification in `X_Δ(N) → X₀(N)`.
    pub e_p2: u64,
    /// `|π_d(Δ)|`.
    pub image_size: u64,
}

fn check_level(level: u64, delta: &SubgroupDelta) -> Result<(), CurveError> {
    if delta.level() != level {
        return Err(CurveError::LevelMismatch {
            level,
            delta_level: delta.level(),
        });
    }
    Ok(())
}

/// `N ∏_{p | N} (1 + 1/p) · φ(N)/|Δ|`.
pub fn index_mu(level: u64, delta: &SubgroupDelta) -> Result<u64, CurveError> {
    check_level(level, delta)?;
    let mut gamma0_index = level;
    for p in arith::prime_divisors(level)? {
        gamma0_index = gamma0_index / p * (p + 1);
    }
    Ok(gamma0_index * delta.index_in_units())
}

fn elliptic_count(level: u64, delta: &SubgroupDelta, poly: impl Fn(u64) -> u64) -> u64 {
    let solutions = delta
        .residues()
        .iter()
        .filter(|&&b| poly(b).is_multiple_of(level))
        .count() as u64;
    solutions * delta.index_in_units()
}

/// Elliptic points of order 2: solutions of `b² + 1 ≡ 0` inside `Δ`.
pub fn nu2(level: u64, delta: &SubgroupDelta) -> Result<u64, CurveError> {
    check_level(level, delta)?;
    Ok(elliptic_count(level, delta, |b| b * b + 1))
}

/// Elliptic points of order 3: solutions of `b² − b + 1 ≡ 0` inside `Δ`.
pub fn nu3(level: u64, delta: &SubgroupDelta) -> Result<u64, CurveError> {
    check_level(level, delta)?;
    Ok(elliptic_count(level, delta, |b| b * b - b + 1))
}

pub fn cusp_orbits(level: u64, delta: &SubgroupDelta) -> Result<Vec<CuspOrbitData>, CurveError> {
    check_level(level, delta)?;
    let inconsistent = |what| CurveError::Inconsistent { level, what };
    let mut out = Vec::new();
    for d in arith::divisors(level)? {
        let image_size = arith::project_pi_d(delta, d)?.size();
        let phis = arith::euler_phi(d)? * arith::euler_phi(level / d)?;
        if phis % image_size != 0 {
            return Err(inconsistent("cusp orbit count is not integral"));
        }
        if !delta.order().is_multiple_of(image_size) {
            return Err(inconsistent("|π_d(Δ)| does not divide |Δ|"));
        }
        let e_total = arith::gcd(d, level / d);
        let e_p1 = delta.order() / image_size;
        if !e_total.is_multiple_of(e_p1) {
            return Err(inconsistent("e_p1 does not divide (d, N/d)"));
        }
        out.push(CuspOrbitData {
            divisor: d,
            orbit_count: phis / image_size,
            e_total,
            e_p1,
            e_p2: e_total / e_p1,
            image_size,
        });
    }
    Ok(out)
}

pub fn nu_inf(level: u64, delta: &SubgroupDelta) -> Result<u64, CurveError> {
    Ok(cusp_orbits(level, delta)?
        .iter()
        .map(|c| c.orbit_count)
        .sum())
}

/// Evaluates `g = 1 + μ/12 − ν₂/4 − ν₃/3 − ν∞/2` exactly.
pub fn genus(level: u64, delta: &SubgroupDelta) -> Result<CurveInvariants, CurveError> {
    let mu = index_mu(level, delta)?;
    let nu2 = nu2(level, delta)?;
    let nu3 = nu3(level, delta)?;
    let nu_inf = nu_inf(level, delta)?;
    let r = |n: u64, d: i64| Ratio::new(n as i64, d);
    let g = Ratio::from_integer(1) + r(mu, 12) - r(nu2, 4) - r(nu3, 3) - r(nu_inf, 2);
    if !g.is_integer() {
        return Err(CurveError::Inconsistent {
            level,
            what: "genus is not an integer",
        });
    }
    if *g.numer() < 0 {
        return Err(CurveError::Inconsistent {
            level,
            what: "genus is negative",
        });
    }
    Ok(CurveInvariants {
        level,
        delta: delta.clone(),
        mu,
        nu2,
        nu3,
        nu_inf,
        genus: g.to_integer() as u64,
    })
}
