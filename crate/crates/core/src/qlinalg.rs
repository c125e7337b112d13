//! Truncated q-series over `Q` and exact linear algebra for finding the
//! polynomial relations satisfied by products of series.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("a series needs at least one coefficient")]
    EmptySeries,
    #[error("no products were supplied")]
    EmptyProducts,
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// `a₀ + a₁q + … + a_P q^P + O(q^{P+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self, LinalgError> {
        if coeffs.is_empty() {
            return Err(LinalgError::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self, LinalgError> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(precision: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); precision + 1],
        }
    }

    /// The series is known modulo `q^{precision + 1}`.
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let keep = precision.min(self.precision()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Sum truncated to the smaller precision.
    pub fn add(&self, other: &QSeries) -> Self {
        let p = self.precision().min(other.precision());
        Self {
            coeffs: (0..=p)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        }
    }

    /// `Σ cᵢ·sᵢ`, truncated to the smallest precision involved.
    pub fn linear_combination(
        coeffs: &[BigRational],
        series: &[QSeries],
    ) -> Result<Self, LinalgError> {
        if coeffs.len() != series.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: series.len(),
                got: coeffs.len(),
            });
        }
        let p = series
            .iter()
            .map(QSeries::precision)
            .min()
            .ok_or(LinalgError::EmptyProducts)?;
        let mut out = QSeries::zero(p);
        for (c, s) in coeffs.iter().zip(series) {
            if c.is_zero() {
                continue;
            }
            for n in 0..=p {
                if !s.coeffs[n].is_zero() {
                    out.coeffs[n] += c * &s.coeffs[n];
                }
            }
        }
        Ok(out)
    }
}

/// Cauchy product truncated to `min(P_a, P_b)`.
///
/// For cusp forms the product is in fact determined one term further; that
/// extra term is deliberately not used.
pub fn series_mul(a: &QSeries, b: &QSeries) -> QSeries {
    let p = a.precision().min(b.precision());
    let mut coeffs = vec![BigRational::zero(); p + 1];
    for (i, ai) in a.coeffs[..=p].iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs[..=p - i].iter().enumerate() {
            if !bj.is_zero() {
                coeffs[i + j] += ai * bj;
            }
        }
    }
    QSeries { coeffs }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        series_mul(self, rhs)
    }
}

/// Dense matrix of rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn row_vectors(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.cols, &self.row_vectors())
    }

    /// Reduced row echelon form: the nonzero rows and their pivot columns.
    pub fn rref(&self) -> Echelon {
        rref_of_rows(self.cols, &self.row_vectors())
    }

    /// Reduced echelon basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let echelon = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &echelon.pivots {
            is_pivot[p] = true;
        }
        let basis: Vec<Vec<BigRational>> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (row, &p) in echelon.rows.iter().zip(&echelon.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect();
        rref_of_rows(self.cols, &basis).rows
    }
}

/// Output of [`RationalMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<BigRational>>,
    pub pivots: Vec<usize>,
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g > BigInt::one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

/// Fraction-free elimination on integer rows, keeping every row primitive.
///
/// Returns the pivot columns; afterwards rows `0..pivots.len()` carry the
/// pivots and the remaining rows are zero. With `reduce_above` the entries
/// above each pivot are cleared too.
fn eliminate(rows: &mut [Vec<BigInt>], cols: usize, reduce_above: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // Smallest nonzero entry in the column; ties go to the earliest row.
        let mut best: Option<usize> = None;
        for i in r..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            if best.is_none_or(|b| rows[i][c].magnitude() < rows[b][c].magnitude()) {
                best = Some(i);
            }
        }
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        let support: Vec<usize> = (0..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let targets = after
            .iter_mut()
            .chain(before.iter_mut().filter(|_| reduce_above));
        for row in targets {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let m_row = &pivot_row[c] / &g;
            let m_piv = &row[c] / &g;
            if !m_row.is_one() {
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x *= &m_row;
                    }
                }
            }
            for &j in &support {
                row[j] -= &m_piv * &pivot_row[j];
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| clear_denominators(r))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

pub(crate) fn rank_of_rows(cols: usize, rows: &[Vec<BigRational>]) -> usize {
    let mut ints = integer_rows(rows);
    eliminate(&mut ints, cols, false).len()
}

pub(crate) fn rref_of_rows(cols: usize, rows: &[Vec<BigRational>]) -> Echelon {
    let mut ints = integer_rows(rows);
    let pivots = eliminate(&mut ints, cols, true);
    let rows = ints
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.into_iter()
                .map(|x| BigRational::new(x, lead.clone()))
                .collect()
        })
        .collect();
    Echelon { rows, pivots }
}

/// A monomial `x_{i₁}·x_{i₂}·…` as nondecreasing zero-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Product of two monomials.
    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    /// `x1^2*x3`, one-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let var = self.0[i];
            let mut e = 1;
            while i + e < self.0.len() && self.0[i + e] == var {
                e += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", var + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            i += e;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Monomials of one degree in `nvars` variables, graded lexicographic with
/// `x₁ > x₂ > …`, largest first.
pub fn monomial_order(nvars: usize, degree: usize) -> Vec<Monomial> {
    fn extend(
        nvars: usize,
        degree: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Monomial>,
    ) {
        if cur.len() == degree {
            out.push(Monomial(cur.clone()));
            return;
        }
        for v in start..nvars {
            cur.push(v);
            extend(nvars, degree, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(nvars, degree, 0, &mut Vec::new(), &mut out);
    out
}

/// Products `∏ f_i` for each monomial, built from shorter products.
pub fn monomial_products(forms: &[QSeries], monomials: &[Monomial]) -> Vec<QSeries> {
    let mut cache: alloc::collections::BTreeMap<Vec<usize>, QSeries> = Default::default();
    let mut product = |m: &Monomial| -> QSeries {
        let mut key: Vec<usize> = Vec::new();
        let mut acc: Option<QSeries> = None;
        for &v in &m.0 {
            key.push(v);
            acc = Some(match cache.get(&key) {
                Some(s) => s.clone(),
                None => {
                    let s = match &acc {
                        None => forms[v].clone(),
                        Some(prev) => series_mul(prev, &forms[v]),
                    };
                    cache.insert(key.clone(), s.clone());
                    s
                }
            });
        }
        acc.unwrap_or_else(|| QSeries::zero(0))
    };
    monomials.iter().map(&mut product).collect()
}

/// Reduced echelon basis of the linear relations among products indexed by
/// a monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationBasis {
    pub monomials: Vec<Monomial>,
    /// Rows in reduced echelon form with respect to `monomials`.
    pub vectors: Vec<Vec<BigRational>>,
    /// Precision of the series the relations were read from, if any.
    pub precision: Option<usize>,
}

impl RelationBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn degree(&self) -> usize {
        self.monomials.first().map_or(0, Monomial::degree)
    }

    /// Builds a basis from arbitrary polynomials; the span is re-echelonized.
    pub fn from_polynomials(
        monomials: Vec<Monomial>,
        polys: &[Vec<BigRational>],
    ) -> Result<Self, LinalgError> {
        for p in polys {
            if p.len() != monomials.len() {
                return Err(LinalgError::DimensionMismatch {
                    expected: monomials.len(),
                    got: p.len(),
                });
            }
        }
        let vectors = rref_of_rows(monomials.len(), polys).rows;
        Ok(Self {
            monomials,
            vectors,
            precision: None,
        })
    }

    /// Each relation scaled to integer coefficients with content 1 and a
    /// positive leading coefficient.
    pub fn cleared(&self) -> Vec<Vec<BigInt>> {
        self.vectors
            .iter()
            .map(|v| {
                let mut row = clear_denominators(v);
                if row
                    .iter()
                    .find(|x| !x.is_zero())
                    .is_some_and(|x| x.is_negative())
                {
                    row.iter_mut().for_each(|x| *x = -x.clone());
                }
                row
            })
            .collect()
    }

    pub fn render(&self) -> Vec<String> {
        self.cleared()
            .iter()
            .map(|row| render_polynomial(&self.monomials, row))
            .collect()
    }
}

/// `x1^2 - x2^2 + x2*x3 - x3^2` style rendering of integer coefficients.
pub fn render_polynomial(monomials: &[Monomial], coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (m, c) in monomials.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let mag = c.magnitude();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag}*");
        }
        let _ = write!(out, "{m}");
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Kernel of the coefficient matrix whose columns are `products`, read to
/// their common precision.
pub fn relation_kernel(
    products: &[QSeries],
    monomials: Vec<Monomial>,
) -> Result<RelationBasis, LinalgError> {
    if products.is_empty() {
        return Err(LinalgError::EmptyProducts);
    }
    if products.len() != monomials.len() {
        return Err(LinalgError::DimensionMismatch {
            expected: monomials.len(),
            got: products.len(),
        });
    }
    let p = products.iter().map(QSeries::precision).min().unwrap_or(0);
    let rows: Vec<Vec<BigRational>> = (0..=p)
        .map(|n| products.iter().map(|s| s.coeffs[n].clone()).collect())
        .collect();
    let matrix = RationalMatrix::from_rows(products.len(), rows)?;
    Ok(RelationBasis {
        monomials,
        vectors: matrix.kernel(),
        precision: Some(p),
    })
}

/// Rank of the coefficient matrix of `products`, i.e. the number of
/// monomials minus the dimension of the relation space.
pub fn product_rank(products: &[QSeries]) -> usize {
    let p = products.iter().map(QSeries::precision).min().unwrap_or(0);
    let rows: Vec<Vec<BigRational>> = (0..=p)
        .map(|n| products.iter().map(|s| s.coeffs[n].clone()).collect())
        .collect();
    rank_of_rows(products.len(), &rows)
}
