//! Plain-text, Markdown and CSV rendering. All output is deterministic.

use std::fmt::Write as _;

use xdelta_core::arith::SubgroupDelta;
use xdelta_core::canonical::{Grade, PetriReport, PetriVerdict};
use xdelta_core::gonality::{
    abramovich_bound, ClassificationVerdict, EnumerationCheck, Marker, ReproducedRow, RowMismatch,
    TableId,
};
use xdelta_core::modcurve::{CurveInvariants, CuspOrbitData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Plain,
}

pub fn grade_label(grade: Grade) -> &'static str {
    match grade {
        Grade::Certified => "certified",
        Grade::Heuristic => "heuristic",
    }
}

pub fn genus_report(inv: &CurveInvariants, orbits: &[CuspOrbitData]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "level {}", inv.level);
    let _ = writeln!(out, "delta {} (order {})", inv.delta, inv.delta.order());
    let _ = writeln!(out, "mu {}", inv.mu);
    let _ = writeln!(out, "nu2 {}", inv.nu2);
    let _ = writeln!(out, "nu3 {}", inv.nu3);
    let _ = writeln!(out, "nu_inf {}", inv.nu_inf);
    let _ = writeln!(out, "genus {}", inv.genus);
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:>6} {:>7} {:>6} {:>7} {:>5} {:>5}",
        "d", "cusps", "|pi_d|", "e", "e_p1", "e_p2"
    );
    for c in orbits {
        let _ = writeln!(
            out,
            "{:>6} {:>7} {:>6} {:>7} {:>5} {:>5}",
            c.divisor, c.orbit_count, c.image_size, c.e_total, c.e_p1, c.e_p2
        );
    }
    out
}

fn bound_flag(mu: u64) -> String {
    let b = abramovich_bound(mu).gonality_lower_bound;
    if b >= 3 {
        format!("gonality >= {b}")
    } else {
        String::new()
    }
}

pub fn enumerate_report(level: u64, rows: &[(SubgroupDelta, CurveInvariants)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "level {level}: {} subgroups", rows.len());
    for (delta, inv) in rows {
        let kind = if delta.is_plus_minus_one() && delta.is_full() {
            "X1 = X0"
        } else if delta.is_plus_minus_one() {
            "X1"
        } else if delta.is_full() {
            "X0"
        } else {
            "intermediate"
        };
        let line = format!(
            "{:>4} {:<12} mu {:>6} genus {:>5}  {:<40} {}",
            delta.order(),
            kind,
            inv.mu,
            inv.genus,
            delta.to_string(),
            bound_flag(inv.mu)
        );
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out
}

fn answer_line(out: &mut String, label: &str, answer: impl std::fmt::Display) {
    let _ = writeln!(out, "{label:<18} {answer}");
}

pub fn verdict_report(v: &ClassificationVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "level {}", v.level);
    let _ = writeln!(out, "delta {}", v.delta);
    let _ = writeln!(out, "genus {}", v.genus);
    let _ = writeln!(
        out,
        "mu {} (gonality >= {})",
        v.mu, v.bound.gonality_lower_bound
    );
    answer_line(&mut out, "sub-hyperelliptic", v.sub_hyperelliptic);
    answer_line(&mut out, "hyperelliptic", v.hyperelliptic);
    answer_line(&mut out, "trigonal", v.trigonal);
    let _ = writeln!(out, "evidence:");
    for (i, e) in v.evidence.iter().enumerate() {
        let settled: Vec<String> = e.settled.iter().map(|(p, a)| format!("{p} {a}")).collect();
        let settled = if settled.is_empty() {
            String::new()
        } else {
            format!(" => {}", settled.join(", "))
        };
        let _ = writeln!(
            out,
            "  {}. [{}, {}] {}{settled}",
            i + 1,
            e.tag,
            e.grade,
            e.detail
        );
    }
    out
}

pub fn petri_report(report: &PetriReport) -> String {
    let c = &report.count;
    let mut out = String::new();
    let _ = writeln!(out, "genus {}", c.genus);
    let _ = writeln!(out, "quadrics {}", c.r2);
    for q in report.quadrics.render() {
        let _ = writeln!(out, "  {q}");
    }
    let _ = writeln!(out, "r3_expected {}", c.r3_expected);
    let _ = writeln!(out, "dim_L' {}", c.dim_l_prime);
    if let Some(r3) = report.r3_observed {
        let _ = writeln!(out, "r3_observed {r3}");
    }
    let _ = writeln!(out, "cubic_generators {}", c.cubic_generators);
    let verdict = match c.verdict {
        PetriVerdict::NotTrigonal => "not trigonal",
        PetriVerdict::Trigonal => "trigonal",
        PetriVerdict::TrigonalOrPlaneQuintic => "trigonal or a smooth plane quintic",
        PetriVerdict::Indeterminate => "indeterminate",
    };
    let _ = writeln!(out, "verdict {verdict} ({})", grade_label(report.grade));
    out
}

/// `Δ_i` labels per level, in table order.
fn labels(rows: &[ReproducedRow]) -> Vec<String> {
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        if r.row.delta.is_none() {
            out.push("-".to_owned());
            continue;
        }
        let k = rows[..=i]
            .iter()
            .filter(|o| o.row.level == r.row.level && o.row.delta.is_some())
            .count();
        out.push(format!("D{k}"));
    }
    out
}

fn marker_code(m: Marker) -> &'static str {
    match m {
        Marker::None => "0",
        Marker::Dagger => "1",
        Marker::DoubleDagger => "2",
    }
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_owned(), |g| g.to_string())
}

fn status(r: &ReproducedRow) -> &'static str {
    if r.is_match() {
        "ok"
    } else {
        "MISMATCH"
    }
}

pub fn table_report(table: TableId, rows: &[ReproducedRow], format: Format) -> String {
    let labels = labels(rows);
    let mut out = String::new();
    match format {
        Format::Csv => {
            let _ = writeln!(
                out,
                "table,N,delta,residues,genus,computed_genus,mu,marker,computed_marker,status"
            );
            for (r, label) in rows.iter().zip(&labels) {
                let residues = r.row.delta.as_ref().map_or_else(
                    || "-".to_owned(),
                    |d| {
                        d.residues()
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    },
                );
                let _ = writeln!(
                    out,
                    "{table},{},{label},{residues},{},{},{},{},{},{}",
                    r.row.level,
                    opt(r.row.genus),
                    opt(r.computed_genus),
                    opt(r.mu),
                    marker_code(r.row.marker),
                    marker_code(r.computed_marker),
                    status(r)
                );
            }
        }
        Format::Md => {
            let _ = writeln!(out, "| N | Δ | g_Δ(N) | computed | μ | check |");
            let _ = writeln!(out, "|---|---|---|---|---|---|");
            for (r, label) in rows.iter().zip(&labels) {
                let delta = match &r.row.delta {
                    None => "-".to_owned(),
                    Some(d) => format!("Δ{}{} = {d}", &label[1..], r.row.marker.symbol()),
                };
                let _ = writeln!(
                    out,
                    "| {} | {delta} | {} | {} | {} | {} |",
                    r.row.level,
                    opt(r.row.genus),
                    opt(r.computed_genus),
                    opt(r.mu),
                    status(r)
                );
            }
        }
        Format::Plain => {
            for (r, label) in rows.iter().zip(&labels) {
                let delta = r
                    .row
                    .delta
                    .as_ref()
                    .map_or_else(|| "-".to_owned(), ToString::to_string);
                let line = format!(
                    "{:>3} {:<3} {:<2} {:>4} {:>4} {:>5} {:<9} {}",
                    r.row.level,
                    label,
                    r.row.marker.symbol(),
                    opt(r.row.genus),
                    opt(r.computed_genus),
                    opt(r.mu),
                    status(r),
                    delta
                );
                let _ = writeln!(out, "{}", line.trim_end());
            }
        }
    }
    out
}

pub fn mismatch_lines(table: TableId, rows: &[ReproducedRow]) -> Vec<String> {
    let labels = labels(rows);
    let mut out = Vec::new();
    for (r, label) in rows.iter().zip(&labels) {
        for m in &r.mismatches {
            let what = match m {
                RowMismatch::Genus {
                    transcribed,
                    computed,
                } => {
                    format!("transcribed genus {transcribed}, computed {computed}")
                }
                RowMismatch::Marker {
                    transcribed,
                    computed,
                } => format!(
                    "transcribed marker {}, index {} gives {}",
                    marker_code(*transcribed),
                    opt(r.mu),
                    marker_code(*computed)
                ),
                RowMismatch::NotEmpty { count } => {
                    format!("'-' row but {count} proper intermediate subgroups")
                }
                RowMismatch::Curve(e) => e.to_string(),
            };
            out.push(format!("table {table} N={} {label}: {what}", r.row.level));
        }
    }
    out
}

pub fn enumeration_lines(checks: &[EnumerationCheck]) -> Vec<String> {
    let mut out = Vec::new();
    for c in checks {
        for d in c.missing() {
            out.push(format!("N={}: {d} missing from the tables", c.level));
        }
        for d in c.extra() {
            out.push(format!(
                "N={}: {d} in the tables but not enumerated",
                c.level
            ));
        }
    }
    out
}
