//! Emitters for the reasoning-profile tables and the syllogism table, as CSV
//! or markdown. Grades print at six decimals; cells whose source closed form
//! is unusable are flagged rather than dropped.

use crate::grade::Grade;
use crate::inference::{profile_gmp, profile_gmt, syllogism_check, Modifier};
use crate::relation::{CompositionRule, ImplicationKind};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl TableFormat {
    pub fn parse(name: &str) -> Option<TableFormat> {
        match name.trim().to_ascii_lowercase().as_str() {
            "csv" => Some(TableFormat::Csv),
            "markdown" | "md" => Some(TableFormat::Markdown),
            _ => None,
        }
    }
}

const PONENS_MODIFIERS: [Modifier; 4] = [
    Modifier::Identity,
    Modifier::Very,
    Modifier::MoreOrLess,
    Modifier::Not,
];

const TOLLENS_MODIFIERS: [Modifier; 4] = [
    Modifier::Not,
    Modifier::NotVery,
    Modifier::NotMoreOrLess,
    Modifier::Identity,
];

fn sweep() -> impl Iterator<Item = Grade> {
    (0..=10).map(|k| Grade::clamped(k as f64 / 10.0))
}

fn ponens_flag(kind: ImplicationKind) -> &'static str {
    match kind {
        ImplicationKind::Rstar => "flagged: formula misprint in source",
        _ => "",
    }
}

fn tollens_flag(kind: ImplicationKind) -> &'static str {
    match kind {
        ImplicationKind::Rdelta | ImplicationKind::Rstar => {
            "flagged: closed form unparseable in source"
        }
        _ => "",
    }
}

fn profile_table(
    grid_n: usize,
    format: TableFormat,
    modifiers: [Modifier; 4],
    sweep_name: &str,
    flag: fn(ImplicationKind) -> &'static str,
    profile: fn(ImplicationKind, Modifier, Grade, usize, CompositionRule) -> Grade,
) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            let _ = writeln!(out, "kind,modifier,{sweep_name},value,note");
            for kind in ImplicationKind::ALL {
                for modifier in modifiers {
                    for b in sweep() {
                        let v = profile(kind, modifier, b, grid_n, CompositionRule::MaxMin);
                        let _ = writeln!(
                            out,
                            "{},{},{:.1},{:.6},{}",
                            kind.name(),
                            modifier.name(),
                            b.value(),
                            v.value(),
                            flag(kind)
                        );
                    }
                }
            }
        }
        TableFormat::Markdown => {
            let _ = write!(out, "| kind |");
            for m in modifiers {
                let _ = write!(out, " {} |", m.name());
            }
            let _ = writeln!(out, " note |");
            let _ = write!(out, "|---|");
            for _ in modifiers {
                let _ = write!(out, "---|");
            }
            let _ = writeln!(out, "---|");
            for kind in ImplicationKind::ALL {
                let _ = write!(out, "| {} |", kind.name());
                for modifier in modifiers {
                    let cells: Vec<String> = sweep()
                        .map(|b| {
                            format!(
                                "{:.6}",
                                profile(kind, modifier, b, grid_n, CompositionRule::MaxMin).value()
                            )
                        })
                        .collect();
                    let _ = write!(out, " {} |", cells.join(" "));
                }
                let _ = writeln!(out, " {} |", flag(kind));
            }
        }
    }
    out
}

/// Modus ponens profiles for all kinds × {A, very A, more-or-less A, not A},
/// at μ_B ∈ {0, 0.1, …, 1}.
pub fn ponens_table(grid_n: usize, format: TableFormat) -> String {
    profile_table(grid_n, format, PONENS_MODIFIERS, "mu_B", ponens_flag, profile_gmp)
}

/// Modus tollens profiles for all kinds × {not B, not very B,
/// not more-or-less B, B}, at μ_A ∈ {0, 0.1, …, 1}.
pub fn tollens_table(grid_n: usize, format: TableFormat) -> String {
    profile_table(grid_n, format, TOLLENS_MODIFIERS, "mu_A", tollens_flag, profile_gmt)
}

/// The syllogism table: holds/fails per kind with the worst gap and witness.
pub fn syllogism_table(grid_n: usize, rule: CompositionRule, format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            let _ = writeln!(out, "kind,holds,worst_gap,witness_a,witness_c");
            for kind in ImplicationKind::ALL {
                let r = syllogism_check(kind, rule, grid_n);
                let _ = writeln!(
                    out,
                    "{},{},{:.6},{:.6},{:.6}",
                    kind.name(),
                    if r.holds { "yes" } else { "no" },
                    r.worst_gap,
                    r.witness.0.value(),
                    r.witness.1.value()
                );
            }
        }
        TableFormat::Markdown => {
            let _ = writeln!(out, "| kind | syllogism | worst gap | witness |");
            let _ = writeln!(out, "|---|---|---|---|");
            for kind in ImplicationKind::ALL {
                let r = syllogism_check(kind, rule, grid_n);
                let _ = writeln!(
                    out,
                    "| {} | {} | {:.6} | ({:.2}, {:.2}) |",
                    kind.name(),
                    if r.holds { "o" } else { "x" },
                    r.worst_gap,
                    r.witness.0.value(),
                    r.witness.1.value()
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ponens_csv_contains_the_rm_identity_profile() {
        let csv = ponens_table(200, TableFormat::Csv);
        // (R_m, A) at b = 0.2 is 0.5 ∨ 0.2 = 0.5
        assert!(csv.lines().any(|l| l.starts_with("R_m,identity,0.2,0.5000")), "{csv}");
        // star row is flagged
        assert!(csv.lines().any(|l| l.starts_with("R_star,") && l.contains("flagged")));
    }

    #[test]
    fn tollens_csv_flags_delta_and_star() {
        let csv = tollens_table(200, TableFormat::Csv);
        for kind in ["R_delta", "R_star"] {
            assert!(csv
                .lines()
                .filter(|l| l.starts_with(kind))
                .all(|l| l.contains("flagged")));
        }
    }

    #[test]
    fn syllogism_markdown_marks_rows() {
        let md = syllogism_table(51, CompositionRule::MaxMin, TableFormat::Markdown);
        assert!(md.lines().any(|l| l.starts_with("| R_s | o")));
        assert!(md.lines().any(|l| l.starts_with("| R_m | x")));
    }

    #[test]
    fn emission_is_deterministic() {
        assert_eq!(ponens_table(100, TableFormat::Csv), ponens_table(100, TableFormat::Csv));
    }
}
