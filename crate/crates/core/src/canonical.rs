//! Canonical-ideal tests on a basis `f₁, …, f_g` of weight-2 cusp forms.
//!
//! Relations of degree `k` among the `f_i` are read off the truncated
//! q-expansions. A relation of degree `k` is a weight-`2k` cusp form on a
//! group of index `μ`; it vanishes identically once it vanishes past
//! `q^{⌈kμ/6⌉}`, which is what [`certify_precision`] encodes. Below that
//! threshold results are reported as heuristic.

use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::SubgroupDelta;
use crate::modcurve::{self, CurveError};
use crate::qlinalg::{self, LinalgError, Monomial, QSeries, RelationBasis};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("canonical tests need genus at least 3, got {genus}")]
    GenusTooSmall { genus: u64 },
    #[error("expected {expected} forms (the genus), got {got}")]
    WrongFormCount { expected: u64, got: usize },
    #[error("form {index} has a nonzero constant term")]
    NotCuspForm { index: usize },
    #[error("degree-{degree} relations need precision at least {required}, have {got}")]
    InsufficientPrecision {
        degree: usize,
        required: usize,
        got: usize,
    },
    #[error("the Petri count applies to genus at least 5, got {genus}")]
    PetriGenus { genus: u64 },
    #[error(
        "{r2} quadrics is the hyperelliptic count; the Petri count needs a non-hyperelliptic curve"
    )]
    PetriHyperelliptic { r2: usize },
    #[error("monomial {monomial} uses a variable beyond x{genus}")]
    VariableOutOfRange { monomial: Monomial, genus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Refuse to run below the vanishing threshold.
    Certify,
    /// Run at any precision and mark results heuristic.
    Probe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grade {
    Certified,
    Heuristic,
}

/// Precision needed before degree-`degree` relations read from q-expansions
/// are proven: `⌈2·degree·μ/12⌉ + 1`.
pub fn certify_precision(mu: u64, degree: usize) -> usize {
    (2 * degree as u64 * mu).div_ceil(12) as usize + 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub level: u64,
    pub delta: SubgroupDelta,
    pub genus: u64,
    pub mu: u64,
    pub forms: Vec<QSeries>,
    /// Common precision of all forms.
    pub precision: usize,
    pub mode: Mode,
}

impl CanonicalBasis {
    /// Validates the forms against the curve. Forms of differing precision
    /// are cut to the shortest.
    pub fn new(
        delta: SubgroupDelta,
        forms: Vec<QSeries>,
        mode: Mode,
    ) -> Result<Self, CanonicalError> {
        let level = delta.level();
        let inv = modcurve::genus(level, &delta)?;
        if inv.genus < 3 {
            return Err(CanonicalError::GenusTooSmall { genus: inv.genus });
        }
        if forms.len() as u64 != inv.genus {
            return Err(CanonicalError::WrongFormCount {
                expected: inv.genus,
                got: forms.len(),
            });
        }
        if let Some(index) = forms.iter().position(|f| !f.coeff(0).is_zero()) {
            return Err(CanonicalError::NotCuspForm { index });
        }
        let precision = forms.iter().map(QSeries::precision).min().unwrap_or(0);
        let basis = Self {
            level,
            delta,
            genus: inv.genus,
            mu: inv.mu,
            forms: forms.iter().map(|f| f.truncate(precision)).collect(),
            precision,
            mode,
        };
        basis.check_precision(2)?;
        Ok(basis)
    }

    pub fn certify_threshold(&self, degree: usize) -> usize {
        certify_precision(self.mu, degree)
    }

    fn check_precision(&self, degree: usize) -> Result<(), CanonicalError> {
        let required = match self.mode {
            Mode::Certify => self.certify_threshold(degree),
            Mode::Probe => degree,
        };
        if self.precision < required {
            return Err(CanonicalError::InsufficientPrecision {
                degree,
                required,
                got: self.precision,
            });
        }
        Ok(())
    }

    /// Grade of relations of the given degree computed from this basis.
    pub fn grade(&self, degree: usize) -> Grade {
        if self.mode == Mode::Certify && self.precision >= self.certify_threshold(degree) {
            Grade::Certified
        } else {
            Grade::Heuristic
        }
    }

    /// Same forms replaced by `M·f` for an invertible `g × g` matrix `M`.
    pub fn change_basis(&self, matrix: &[Vec<BigRational>]) -> Result<Self, CanonicalError> {
        let forms = matrix
            .iter()
            .map(|row| QSeries::linear_combination(row, &self.forms))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.delta.clone(), forms, self.mode)
    }
}

/// A relation space together with how far it can be trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRelations {
    pub relations: RelationBasis,
    pub grade: Grade,
}

/// All degree-`degree` relations among the forms.
pub fn relations(basis: &CanonicalBasis, degree: usize) -> Result<GradedRelations, CanonicalError> {
    basis.check_precision(degree)?;
    let monomials = qlinalg::monomial_order(basis.genus as usize, degree);
    let products = qlinalg::monomial_products(&basis.forms, &monomials);
    Ok(GradedRelations {
        relations: qlinalg::relation_kernel(&products, monomials)?,
        grade: basis.grade(degree),
    })
}

/// The degree-2 part of the canonical ideal.
pub fn quadratic_relations(basis: &CanonicalBasis) -> Result<GradedRelations, CanonicalError> {
    relations(basis, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HyperellipticTest {
    Hyperelliptic,
    NotHyperelliptic,
    /// Neither expected count; the data cannot decide.
    Inconsistent,
}

/// A hyperelliptic canonical image lies on `(g−1)(g−2)/2` independent
/// quadrics, a non-hyperelliptic one on `(g−2)(g−3)/2`.
pub fn hyperelliptic_test(genus: u64, r2: usize) -> HyperellipticTest {
    if genus < 3 {
        return HyperellipticTest::Inconsistent;
    }
    let r2 = r2 as u64;
    if r2 == (genus - 1) * (genus - 2) / 2 {
        HyperellipticTest::Hyperelliptic
    } else if r2 == (genus - 2) * (genus - 3) / 2 {
        HyperellipticTest::NotHyperelliptic
    } else {
        HyperellipticTest::Inconsistent
    }
}

/// Dimension of the cubic part of the ideal of a canonical curve that is
/// cut out by quadrics: `(g−3)(g²+6g−10)/6`.
pub fn expected_cubic_relations(genus: u64) -> u64 {
    genus.saturating_sub(3) * (genus * genus + 6 * genus - 10) / 6
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PetriVerdict {
    NotTrigonal,
    Trigonal,
    /// Positive cubic count at genus 6, where a smooth plane quintic is the
    /// other possibility.
    TrigonalOrPlaneQuintic,
    Indeterminate,
}

/// Cubic generator count derived from a space of quadrics alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriCount {
    pub genus: u64,
    pub r2: usize,
    pub r3_expected: u64,
    /// `dim span{x_i·Q_j}`.
    pub dim_l_prime: u64,
    pub cubic_generators: u64,
    pub verdict: PetriVerdict,
}

/// Counts cubic generators from the quadrics: `r3_expected − dim L′`, where
/// `L′` is spanned by the products `x_i·Q_j`.
pub fn petri_count(genus: u64, quadrics: &RelationBasis) -> PetriCount {
    let g = genus as usize;
    let cubics = qlinalg::monomial_order(g, 3);
    let index: alloc::collections::BTreeMap<&Monomial, usize> =
        cubics.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::with_capacity(g * quadrics.dimension());
    for i in 0..g {
        let x = Monomial(alloc::vec![i]);
        for q in &quadrics.vectors {
            let mut row = alloc::vec![BigRational::zero(); cubics.len()];
            for (m, c) in quadrics.monomials.iter().zip(q) {
                if !c.is_zero() {
                    row[index[&m.times(&x)]] += c;
                }
            }
            rows.push(row);
        }
    }
    let dim_l_prime = qlinalg::rank_of_rows(cubics.len(), &rows) as u64;
    let r3_expected = expected_cubic_relations(genus);
    let r2 = quadrics.dimension();
    let consistent = r2 as u64 == (genus.saturating_sub(2)) * (genus.saturating_sub(3)) / 2
        && dim_l_prime <= r3_expected;
    let cubic_generators = r3_expected.saturating_sub(dim_l_prime);
    let verdict = if !consistent {
        PetriVerdict::Indeterminate
    } else if cubic_generators == 0 {
        PetriVerdict::NotTrigonal
    } else if genus == 6 {
        PetriVerdict::TrigonalOrPlaneQuintic
    } else {
        PetriVerdict::Trigonal
    };
    PetriCount {
        genus,
        r2,
        r3_expected,
        dim_l_prime,
        cubic_generators,
        verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriReport {
    pub count: PetriCount,
    /// Dimension of the cubic relations read directly from products
    /// `f_if_jf_k`, when the precision allows it.
    pub r3_observed: Option<u64>,
    /// Grade of the count. Truncated series can only gain relations, so a
    /// non-hyperelliptic quadric count pins down the true quadric space at
    /// any precision and the count is then certified.
    pub grade: Grade,
    pub quadrics: RelationBasis,
}

/// Petri's criterion on a genus ≥ 5 basis.
pub fn petri_test(basis: &CanonicalBasis) -> Result<PetriReport, CanonicalError> {
    if basis.genus < 5 {
        return Err(CanonicalError::PetriGenus { genus: basis.genus });
    }
    let quad = quadratic_relations(basis)?;
    let r2 = quad.relations.dimension();
    let test = hyperelliptic_test(basis.genus, r2);
    if test == HyperellipticTest::Hyperelliptic {
        return Err(CanonicalError::PetriHyperelliptic { r2 });
    }
    let count = petri_count(basis.genus, &quad.relations);
    let cubic_ok = match basis.mode {
        Mode::Certify => basis.precision >= basis.certify_threshold(3),
        Mode::Probe => basis.precision >= 3,
    };
    let r3_observed = cubic_ok.then(|| {
        let monomials = qlinalg::monomial_order(basis.genus as usize, 3);
        let products = qlinalg::monomial_products(&basis.forms, &monomials);
        (monomials.len() - qlinalg::product_rank(&products)) as u64
    });
    Ok(PetriReport {
        count,
        r3_observed,
        grade: if test == HyperellipticTest::NotHyperelliptic {
            Grade::Certified
        } else {
            quad.grade
        },
        quadrics: quad.relations,
    })
}

/// Whether the polynomial vanishes on the forms to the basis precision.
pub fn verify_relation(
    basis: &CanonicalBasis,
    monomials: &[Monomial],
    coeffs: &[BigRational],
) -> Result<bool, CanonicalError> {
    if monomials.len() != coeffs.len() {
        return Err(LinalgError::DimensionMismatch {
            expected: monomials.len(),
            got: coeffs.len(),
        }
        .into());
    }
    if let Some(m) = monomials
        .iter()
        .find(|m| m.0.iter().any(|&v| v as u64 >= basis.genus))
    {
        return Err(CanonicalError::VariableOutOfRange {
            monomial: m.clone(),
            genus: basis.genus,
        });
    }
    let products = qlinalg::monomial_products(&basis.forms, monomials);
    Ok(QSeries::linear_combination(coeffs, &products)?.is_zero())
}
