//! Gonality classification of `X_Δ(N)`: the Abramovich index bound, the
//! covering filter through `X₀(N)`, canonical-ideal tests, and the three
//! gold tables of intermediate curves.
//!
//! "Trigonal" follows the tables' usage: gonality at most 3 when `g ≤ 2`,
//! exactly 3 when `g ≥ 3`. A hyperelliptic curve of genus ≥ 3 is therefore
//! not trigonal.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::arith::{self, ArithError, SubgroupDelta};
use crate::canonical::{
    self, CanonicalBasis, CanonicalError, Grade, HyperellipticTest, PetriVerdict,
};
use crate::modcurve::{self, CurveError};

/// Numerator and denominator of the constant `12000/119` in `D < (12000/119)·Gon`.
pub const ABRAMOVICH_NUMERATOR: u64 = 12000;
pub const ABRAMOVICH_DENOMINATOR: u64 = 119;

/// Lower bound for the first Laplacian eigenvalue behind the constant.
pub const LAMBDA_1_LOWER: &str = "0.238";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GonalityBound {
    pub mu: u64,
    pub gonality_lower_bound: u64,
}

/// `⌊119μ/12000⌋ + 1`.
pub fn abramovich_bound(mu: u64) -> GonalityBound {
    GonalityBound {
        mu,
        gonality_lower_bound: ABRAMOVICH_DENOMINATOR * mu / ABRAMOVICH_NUMERATOR + 1,
    }
}

/// Whether an index-`mu` curve is forced to have gonality above `d`.
///
/// The bound is strict, so equality `119μ = 12000d` also excludes `d`; this
/// can only happen when `119 | d`.
pub fn rules_out_gonality(mu: u64, d: u64) -> bool {
    ABRAMOVICH_DENOMINATOR * mu >= ABRAMOVICH_NUMERATOR * d
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableId {
    /// `g₀(N) ≤ 2`.
    LowGenus = 1,
    /// `X₀(N)` hyperelliptic with `g₀(N) > 2`.
    Hyperelliptic = 2,
    /// `X₀(N)` trigonal but not sub-hyperelliptic.
    Trigonal = 3,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::LowGenus, TableId::Hyperelliptic, TableId::Trigonal];

    pub fn new(id: u8) -> Option<Self> {
        match id {
            1 => Some(Self::LowGenus),
            2 => Some(Self::Hyperelliptic),
            3 => Some(Self::Trigonal),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    fn text(self) -> &'static str {
        match self {
            Self::LowGenus => TABLE_1,
            Self::Hyperelliptic => TABLE_2,
            Self::Trigonal => TABLE_3,
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

const TABLE_1: &str = include_str!("../../../data/tables/table1.tsv");
const TABLE_2: &str = include_str!("../../../data/tables/table2.tsv");
const TABLE_3: &str = include_str!("../../../data/tables/table3.tsv");

/// SHA-256 of the embedded table files, in table order.
pub const TABLE_SHA256: [&str; 3] = [
    "9e0707c6fd4d1e4fc7b124bd1c0adbc2c5964e67bffa97e0d50f884c0b5458a7",
    "dfcb1e495ebd00dfc24764bc7b0127950549eb743dfd754c35792d2c75b4f295",
    "22ec57f00bb170c2aed55c2181e4c0c8895b66bc6d6fcdd726f68e395686c772",
];

/// Raw text of an embedded table file.
pub fn table_source(id: TableId) -> &'static str {
    id.text()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Marker {
    None,
    /// Gonality 2 excluded by the index bound.
    Dagger,
    /// Gonality 3 excluded by the index bound.
    DoubleDagger,
}

impl Marker {
    pub fn symbol(self) -> &'static str {
        match self {
            Marker::None => "",
            Marker::Dagger => "†",
            Marker::DoubleDagger => "‡",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub table: TableId,
    pub level: u64,
    /// `None` for levels without a proper intermediate subgroup.
    pub delta: Option<SubgroupDelta>,
    pub genus: Option<u64>,
    pub marker: Marker,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: &'static str },
    #[error("line {line}: {source}")]
    Residues { line: usize, source: ArithError },
}

/// Parses the table line format `N<TAB>residues<TAB>genus<TAB>marker`.
pub fn parse_table(table: TableId, text: &str) -> Result<Vec<TableRow>, TableError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let bad = |reason| TableError::Malformed { line, reason };
        let fields: Vec<&str> = raw.split('\t').collect();
        let [n, residues, genus, marker] = fields[..] else {
            return Err(bad("expected four tab-separated fields"));
        };
        let level: u64 = n.parse().map_err(|_| bad("level is not an integer"))?;
        let delta = match residues {
            "-" => None,
            list => {
                let values = list
                    .split(',')
                    .map(str::parse)
                    .collect::<Result<Vec<u64>, _>>()
                    .map_err(|_| bad("residue is not an integer"))?;
                Some(
                    SubgroupDelta::from_residues(level, &values)
                        .map_err(|source| TableError::Residues { line, source })?,
                )
            }
        };
        let genus = match genus {
            "-" => None,
            g => Some(g.parse().map_err(|_| bad("genus is not an integer"))?),
        };
        let marker = match marker {
            "0" => Marker::None,
            "1" => Marker::Dagger,
            "2" => Marker::DoubleDagger,
            _ => return Err(bad("marker must be 0, 1 or 2")),
        };
        if delta.is_none() != genus.is_none() {
            return Err(bad("residues and genus must both be '-' or both present"));
        }
        rows.push(TableRow {
            table,
            level,
            delta,
            genus,
            marker,
        });
    }
    Ok(rows)
}

/// The embedded transcription of one table.
pub fn table_rows(table: TableId) -> Vec<TableRow> {
    parse_table(table, table.text()).expect("embedded table data parses")
}

pub fn all_table_rows() -> Vec<TableRow> {
    TableId::ALL.into_iter().flat_map(table_rows).collect()
}

/// Levels `N` whose `X₀(N)` can have gonality at most `d`, for `d ∈ {2, 3}`.
/// A `d`-gonal `X_Δ(N)` forces a `d`-gonal `X₀(N)`, so only these levels
/// can carry such curves.
pub fn candidate_levels(d: u64) -> Option<BTreeSet<u64>> {
    let tables: &[TableId] = match d {
        2 => &[TableId::LowGenus, TableId::Hyperelliptic],
        3 => &TableId::ALL,
        _ => return None,
    };
    Some(
        tables
            .iter()
            .flat_map(|&t| table_rows(t))
            .map(|row| row.level)
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowMismatch {
    Genus {
        transcribed: u64,
        computed: u64,
    },
    /// A marked row whose index does not exceed the marker's threshold, or an
    /// unmarked hyperelliptic-table row whose index does.
    Marker {
        transcribed: Marker,
        computed: Marker,
    },
    /// A '-' row at a level that has proper intermediate subgroups.
    NotEmpty {
        count: usize,
    },
    Curve(CurveError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproducedRow {
    pub row: TableRow,
    pub mu: Option<u64>,
    pub computed_genus: Option<u64>,
    pub computed_marker: Marker,
    pub mismatches: Vec<RowMismatch>,
}

impl ReproducedRow {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn computed_marker(table: TableId, mu: u64) -> Marker {
    if table != TableId::Hyperelliptic && rules_out_gonality(mu, 3) {
        Marker::DoubleDagger
    } else if rules_out_gonality(mu, 2) {
        Marker::Dagger
    } else {
        Marker::None
    }
}

/// Recomputes genus and marker for every row of a table.
///
/// Only three marker facts are checked: a † row must exceed the gonality-2
/// threshold, a ‡ row the gonality-3 threshold, and an unmarked row of the
/// hyperelliptic table must not exceed the gonality-2 threshold.
pub fn reproduce_table(table: TableId) -> Vec<ReproducedRow> {
    table_rows(table).into_iter().map(reproduce_row).collect()
}

fn reproduce_row(row: TableRow) -> ReproducedRow {
    let mut out = ReproducedRow {
        mu: None,
        computed_genus: None,
        computed_marker: Marker::None,
        mismatches: Vec::new(),
        row,
    };
    let Some(delta) = &out.row.delta else {
        match arith::enumerate_subgroups(out.row.level) {
            Ok(all) => {
                let count = all.iter().filter(|d| d.is_proper_intermediate()).count();
                if count > 0 {
                    out.mismatches.push(RowMismatch::NotEmpty { count });
                }
            }
            Err(e) => out.mismatches.push(RowMismatch::Curve(e.into())),
        }
        return out;
    };
    let inv = match modcurve::genus(out.row.level, delta) {
        Ok(inv) => inv,
        Err(e) => {
            out.mismatches.push(RowMismatch::Curve(e));
            return out;
        }
    };
    out.mu = Some(inv.mu);
    out.computed_genus = Some(inv.genus);
    out.computed_marker = computed_marker(out.row.table, inv.mu);
    if let Some(g) = out.row.genus {
        if g != inv.genus {
            out.mismatches.push(RowMismatch::Genus {
                transcribed: g,
                computed: inv.genus,
            });
        }
    }
    let marker_ok = match out.row.marker {
        Marker::Dagger => rules_out_gonality(inv.mu, 2),
        Marker::DoubleDagger => rules_out_gonality(inv.mu, 3),
        Marker::None => out.row.table != TableId::Hyperelliptic || !rules_out_gonality(inv.mu, 2),
    };
    if !marker_ok {
        out.mismatches.push(RowMismatch::Marker {
            transcribed: out.row.marker,
            computed: out.computed_marker,
        });
    }
    out
}

/// Proper intermediate subgroups at one level, computed and transcribed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationCheck {
    pub level: u64,
    pub computed: BTreeSet<SubgroupDelta>,
    pub transcribed: BTreeSet<SubgroupDelta>,
}

impl EnumerationCheck {
    pub fn missing(&self) -> impl Iterator<Item = &SubgroupDelta> {
        self.computed.difference(&self.transcribed)
    }

    pub fn extra(&self) -> impl Iterator<Item = &SubgroupDelta> {
        self.transcribed.difference(&self.computed)
    }

    pub fn is_match(&self) -> bool {
        self.computed == self.transcribed
    }
}

/// Compares, for every level in the tables, the enumerated proper
/// intermediate subgroups with the transcribed ones.
pub fn check_enumeration() -> Result<Vec<EnumerationCheck>, ArithError> {
    let rows = all_table_rows();
    let levels: BTreeSet<u64> = rows.iter().map(|r| r.level).collect();
    levels
        .into_iter()
        .map(|level| {
            let computed = arith::enumerate_subgroups(level)?
                .into_iter()
                .filter(SubgroupDelta::is_proper_intermediate)
                .collect();
            let transcribed = rows
                .iter()
                .filter(|r| r.level == level)
                .filter_map(|r| r.delta.clone())
                .collect();
            Ok(EnumerationCheck {
                level,
                computed,
                transcribed,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    SubHyperelliptic,
    Hyperelliptic,
    Trigonal,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::SubHyperelliptic => "sub-hyperelliptic",
            Property::Hyperelliptic => "hyperelliptic",
            Property::Trigonal => "trigonal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvidenceTag {
    GenusRule,
    AbramovichBound,
    CoveringArgument,
    QuadricCount,
    PetriCount,
    PaperAsserted,
}

impl fmt::Display for EvidenceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvidenceTag::GenusRule => "genus rule",
            EvidenceTag::AbramovichBound => "Abramovich bound",
            EvidenceTag::CoveringArgument => "covering argument",
            EvidenceTag::QuadricCount => "quadric count",
            EvidenceTag::PetriCount => "Petri count",
            EvidenceTag::PaperAsserted => "paper-asserted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvidenceGrade {
    /// Exact computation, or forms at certify precision.
    Computed,
    /// Forms below the certify threshold.
    Heuristic,
    /// Taken from the published classification, not recomputed here.
    PaperAsserted,
}

impl fmt::Display for EvidenceGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvidenceGrade::Computed => "computed",
            EvidenceGrade::Heuristic => "heuristic",
            EvidenceGrade::PaperAsserted => "paper-asserted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evidence {
    pub tag: EvidenceTag,
    pub grade: EvidenceGrade,
    pub detail: String,
    /// Properties this fact decided, in the order decided.
    pub settled: Vec<(Property, Answer)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub level: u64,
    pub delta: SubgroupDelta,
    pub genus: u64,
    pub mu: u64,
    pub bound: GonalityBound,
    pub sub_hyperelliptic: Answer,
    pub hyperelliptic: Answer,
    pub trigonal: Answer,
    pub evidence: Vec<Evidence>,
}

impl ClassificationVerdict {
    pub fn answer(&self, property: Property) -> Answer {
        match property {
            Property::SubHyperelliptic => self.sub_hyperelliptic,
            Property::Hyperelliptic => self.hyperelliptic,
            Property::Trigonal => self.trigonal,
        }
    }

    fn slot(&mut self, property: Property) -> &mut Answer {
        match property {
            Property::SubHyperelliptic => &mut self.sub_hyperelliptic,
            Property::Hyperelliptic => &mut self.hyperelliptic,
            Property::Trigonal => &mut self.trigonal,
        }
    }

    /// Records a fact, applying only the answers still unknown. Facts that
    /// settle nothing are kept only when `always` is set.
    fn record(
        &mut self,
        tag: EvidenceTag,
        grade: EvidenceGrade,
        detail: String,
        claims: &[(Property, Answer)],
        always: bool,
    ) {
        let mut settled = Vec::new();
        for &(property, answer) in claims {
            let slot = self.slot(property);
            if *slot == Answer::Unknown && answer != Answer::Unknown {
                *slot = answer;
                settled.push((property, answer));
            }
        }
        if always || !settled.is_empty() {
            self.evidence.push(Evidence {
                tag,
                grade,
                detail,
                settled,
            });
        }
    }

    /// A curve of genus 3 or 4 that is not hyperelliptic has gonality 3; one
    /// of genus ≥ 3 that is hyperelliptic has gonality 2.
    /// The fact inherits the grade of whatever settled hyperellipticity.
    fn close_low_genus(&mut self) {
        if self.genus < 3 || self.trigonal != Answer::Unknown {
            return;
        }
        let grade = self
            .evidence
            .iter()
            .find(|e| e.settled.iter().any(|(p, _)| *p == Property::Hyperelliptic))
            .map_or(EvidenceGrade::Computed, |e| e.grade);
        match self.hyperelliptic {
            Answer::No if self.genus <= 4 => self.record(
                EvidenceTag::GenusRule,
                grade,
                format!(
                    "every non-hyperelliptic curve of genus {} has gonality 3",
                    self.genus
                ),
                &[(Property::Trigonal, Answer::Yes)],
                false,
            ),
            Answer::Yes => self.record(
                EvidenceTag::GenusRule,
                grade,
                String::from("a hyperelliptic curve of genus at least 3 has gonality 2"),
                &[(Property::Trigonal, Answer::No)],
                false,
            ),
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(
        "forms belong to level {forms_level} with Δ = {forms_delta}, not to the requested curve"
    )]
    FormsMismatch {
        forms_level: u64,
        forms_delta: SubgroupDelta,
    },
}

fn grade_of(grade: Grade) -> EvidenceGrade {
    match grade {
        Grade::Certified => EvidenceGrade::Computed,
        Grade::Heuristic => EvidenceGrade::Heuristic,
    }
}

/// Runs the classification pipeline: genus rule, index bound, covering
/// filter, canonical-ideal tests on `forms`, then the published
/// classification of proper intermediate curves. Each stage only decides
/// what earlier stages left unknown.
pub fn classify(
    level: u64,
    delta: &SubgroupDelta,
    forms: Option<&CanonicalBasis>,
) -> Result<ClassificationVerdict, ClassifyError> {
    if let Some(basis) = forms {
        if basis.level != level || basis.delta != *delta {
            return Err(ClassifyError::FormsMismatch {
                forms_level: basis.level,
                forms_delta: basis.delta.clone(),
            });
        }
    }
    let inv = modcurve::genus(level, delta)?;
    let bound = abramovich_bound(inv.mu);
    let mut v = ClassificationVerdict {
        level,
        delta: delta.clone(),
        genus: inv.genus,
        mu: inv.mu,
        bound,
        sub_hyperelliptic: Answer::Unknown,
        hyperelliptic: Answer::Unknown,
        trigonal: Answer::Unknown,
        evidence: Vec::new(),
    };
    use Answer::{No, Yes};
    use Property::{Hyperelliptic, SubHyperelliptic, Trigonal};

    if inv.genus <= 2 {
        let hyper = if inv.genus == 2 { Yes } else { No };
        v.record(
            EvidenceTag::GenusRule,
            EvidenceGrade::Computed,
            format!("genus {} curves have gonality at most 2", inv.genus),
            &[
                (SubHyperelliptic, Yes),
                (Hyperelliptic, hyper),
                (Trigonal, Yes),
            ],
            true,
        );
    }

    if rules_out_gonality(inv.mu, 2) {
        let mut claims = alloc::vec![(SubHyperelliptic, No), (Hyperelliptic, No)];
        let mut detail = format!("119·{} > 12000·2", inv.mu);
        if rules_out_gonality(inv.mu, 3) {
            claims.push((Trigonal, No));
            detail = format!("119·{} > 12000·3", inv.mu);
        }
        detail.push_str(&format!(
            ", gonality at least {}",
            bound.gonality_lower_bound
        ));
        v.record(
            EvidenceTag::AbramovichBound,
            EvidenceGrade::Computed,
            detail,
            &claims,
            false,
        );
    }

    let x0_note = |d| format!("X0({level}) has gonality above {d}, so every X_Δ({level}) does");
    if !candidate_levels(2).unwrap_or_default().contains(&level) {
        v.record(
            EvidenceTag::CoveringArgument,
            EvidenceGrade::Computed,
            x0_note(2),
            &[(SubHyperelliptic, No), (Hyperelliptic, No)],
            false,
        );
    }
    if !candidate_levels(3).unwrap_or_default().contains(&level) {
        v.record(
            EvidenceTag::CoveringArgument,
            EvidenceGrade::Computed,
            x0_note(3),
            &[(Trigonal, No)],
            false,
        );
    }
    v.close_low_genus();

    if let Some(basis) = forms {
        classify_with_forms(&mut v, basis)?;
        v.close_low_genus();
    }

    if delta.is_proper_intermediate() {
        let special = level == 21 && delta.order() == 4 && delta.contains(8);
        v.record(
            EvidenceTag::PaperAsserted,
            EvidenceGrade::PaperAsserted,
            String::from("X_{±1,±8}(21) is the only hyperelliptic proper intermediate curve"),
            &[
                (Hyperelliptic, if special { Yes } else { No }),
                (
                    SubHyperelliptic,
                    if special || inv.genus <= 1 { Yes } else { No },
                ),
            ],
            false,
        );
        v.close_low_genus();
        let trigonal = inv.genus <= 2 || (inv.genus <= 4 && !special);
        v.record(
            EvidenceTag::PaperAsserted,
            EvidenceGrade::PaperAsserted,
            String::from("trigonal exactly when g ≤ 2, or g ∈ {3, 4} and not hyperelliptic"),
            &[(Trigonal, if trigonal { Yes } else { No })],
            false,
        );
    }
    Ok(v)
}

fn classify_with_forms(
    v: &mut ClassificationVerdict,
    basis: &CanonicalBasis,
) -> Result<(), ClassifyError> {
    use Answer::{No, Yes};
    use Property::{Hyperelliptic, SubHyperelliptic, Trigonal};

    let quad = canonical::quadratic_relations(basis)?;
    let r2 = quad.relations.dimension();
    let g = basis.genus;
    let grade = grade_of(quad.grade);
    let test = canonical::hyperelliptic_test(g, r2);
    // Truncation can only add relations, so a low-precision count is an upper
    // bound: it proves "not hyperelliptic" but not the converse.
    let (claims, verdict, grade): (&[_], _, _) = match (test, grade) {
        (HyperellipticTest::Hyperelliptic, EvidenceGrade::Heuristic) => (
            &[],
            "hyperelliptic count, possibly inflated below the certify threshold",
            grade,
        ),
        (HyperellipticTest::Hyperelliptic, _) => (
            &[(SubHyperelliptic, Yes), (Hyperelliptic, Yes)],
            "hyperelliptic",
            grade,
        ),
        (HyperellipticTest::NotHyperelliptic, _) => (
            &[(SubHyperelliptic, No), (Hyperelliptic, No)],
            "not hyperelliptic",
            EvidenceGrade::Computed,
        ),
        (HyperellipticTest::Inconsistent, _) => (&[], "inconsistent with both counts", grade),
    };
    v.record(
        EvidenceTag::QuadricCount,
        grade,
        format!(
            "{r2} independent quadrics at precision {}: {verdict} (expected {} or {})",
            basis.precision,
            (g - 1) * (g - 2) / 2,
            (g - 2) * (g - 3) / 2
        ),
        claims,
        true,
    );
    if g < 5 || test != HyperellipticTest::NotHyperelliptic {
        return Ok(());
    }
    let report = canonical::petri_test(basis)?;
    let c = &report.count;
    let (claims, verdict): (&[_], _) = match c.verdict {
        PetriVerdict::NotTrigonal => (&[(Trigonal, No)], "no cubic generators, not trigonal"),
        PetriVerdict::Trigonal => (&[(Trigonal, Yes)], "cubic generators needed, trigonal"),
        PetriVerdict::TrigonalOrPlaneQuintic => {
            (&[], "cubic generators needed, trigonal or a plane quintic")
        }
        PetriVerdict::Indeterminate => (&[], "indeterminate"),
    };
    let observed = match report.r3_observed {
        Some(r3) => format!(", {r3} cubic relations observed"),
        None => String::new(),
    };
    v.record(
        EvidenceTag::PetriCount,
        grade_of(report.grade),
        format!(
            "dim L' = {} of {} expected{observed}: {} cubic generators, {verdict}",
            c.dim_l_prime, c.r3_expected, c.cubic_generators
        ),
        claims,
        true,
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::closure;

    #[test]
    fn bound_examples() {
        assert_eq!(abramovich_bound(210).gonality_lower_bound, 3);
        assert_eq!(abramovich_bound(342).gonality_lower_bound, 4);
        assert_eq!(abramovich_bound(96).gonality_lower_bound, 1);
        assert!(rules_out_gonality(210, 2));
        assert!(!rules_out_gonality(168, 2));
        assert!(rules_out_gonality(342, 3));
        assert!(!rules_out_gonality(201, 2));
        assert!(rules_out_gonality(12000, 119));
        assert_eq!(abramovich_bound(12000).gonality_lower_bound, 120);
    }

    #[test]
    fn bound_agrees_with_rule() {
        for mu in 1..5000 {
            let b = abramovich_bound(mu).gonality_lower_bound;
            assert!(b == 1 || rules_out_gonality(mu, b - 1));
            assert!(!rules_out_gonality(mu, b));
        }
    }

    #[test]
    fn tables_parse() {
        assert_eq!(table_rows(TableId::LowGenus).len(), 52);
        assert_eq!(table_rows(TableId::Hyperelliptic).len(), 32);
        assert_eq!(table_rows(TableId::Trigonal).len(), 24);
        assert!(parse_table(TableId::LowGenus, "13\t1,5\t0\t0\n").is_err());
        assert_eq!(
            parse_table(TableId::LowGenus, "13\t-\t0\t0\n"),
            Err(TableError::Malformed {
                line: 1,
                reason: "residues and genus must both be '-' or both present"
            })
        );
        assert!(matches!(
            parse_table(TableId::LowGenus, "# c\n13 1,5,8,12 0 0\n"),
            Err(TableError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn candidates() {
        let two = candidate_levels(2).unwrap();
        let three = candidate_levels(3).unwrap();
        assert!(two.contains(&30) && !two.contains(&34));
        assert!(three.contains(&34) && three.contains(&81));
        assert!(two.is_subset(&three));
        assert_eq!(candidate_levels(4), None);
    }

    #[test]
    fn reproduce_examples() {
        let find = |t, level, order| {
            reproduce_table(t)
                .into_iter()
                .find(|r| {
                    r.row.level == level
                        && r.row.delta.as_ref().map(SubgroupDelta::order) == Some(order)
                })
                .unwrap()
        };
        let r = find(TableId::LowGenus, 29, 14);
        assert_eq!(
            (r.computed_genus, r.computed_marker),
            (Some(4), Marker::None)
        );
        assert!(r.is_match());
        let r = find(TableId::Hyperelliptic, 71, 14);
        assert_eq!(
            (r.computed_genus, r.computed_marker),
            (Some(26), Marker::Dagger)
        );
        assert!(r.is_match());
        let r = find(TableId::Trigonal, 64, 16);
        assert_eq!(
            (r.computed_genus, r.computed_marker),
            (Some(5), Marker::None)
        );
    }

    #[test]
    fn classify_examples() {
        let v = classify(37, &closure(37, &[6]).unwrap(), None).unwrap();
        assert_eq!(v.trigonal, Answer::No);
        assert_eq!(v.evidence[0].tag, EvidenceTag::AbramovichBound);

        let v = classify(24, &closure(24, &[5]).unwrap(), None).unwrap();
        assert_eq!(
            (v.genus, v.hyperelliptic, v.trigonal),
            (3, Answer::No, Answer::Yes)
        );

        let v = classify(13, &closure(13, &[5]).unwrap(), None).unwrap();
        assert_eq!(v.trigonal, Answer::Yes);
        assert_eq!(v.evidence.len(), 1);
        assert_eq!(v.evidence[0].tag, EvidenceTag::GenusRule);

        let v = classify(42, &closure(42, &[]).unwrap(), None).unwrap();
        assert_eq!((v.hyperelliptic, v.trigonal), (Answer::No, Answer::No));
        assert!(v
            .evidence
            .iter()
            .all(|e| e.tag != EvidenceTag::PaperAsserted));

        let v = classify(21, &closure(21, &[8]).unwrap(), None).unwrap();
        assert_eq!((v.hyperelliptic, v.trigonal), (Answer::Yes, Answer::No));
        assert_eq!(v.evidence[0].grade, EvidenceGrade::PaperAsserted);
    }
}
