//! Stable serialized forms of the computation results: a JSON schema with
//! fixed field names and a markdown rendering that mirrors the
//! classification tables row for row. Serialization is deterministic
//! (struct-ordered fields, no wall-clock data), so identical runs produce
//! byte-identical reports.

use serde::{Deserialize, Serialize};

use crate::catalog::{CaseOutcome, CatalogReport};
use crate::tensor::{CheckResult, ComputationMode, PieceSummary, TensorSquareReport};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupJson {
    pub name: String,
    pub order: u64,
    pub presentation: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PieceJson {
    pub order: u64,
    pub structure: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<u64>>,
}

impl PieceJson {
    fn from_summary(s: &PieceSummary) -> Self {
        PieceJson {
            order: s.order,
            structure: s.structure.to_string(),
            invariant_factors: s.invariant_factors.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MultiplierJson {
    pub invariant_factors: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct StatsJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu_order: Option<u64>,
    pub strategy: String,
    pub mode: String,
    pub total_cosets_defined: u64,
    pub coincidences: u64,
    pub peak_live_cosets: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReportJson {
    pub group: GroupJson,
    pub tensor_square: PieceJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exterior_square: Option<PieceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nabla: Option<PieceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j2: Option<PieceJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schur_multiplier: Option<MultiplierJson>,
    pub checks: Vec<CheckJson>,
    pub stats: StatsJson,
}

fn check_json(c: &CheckResult) -> CheckJson {
    CheckJson {
        name: c.name.clone(),
        status: match c.status {
            crate::tensor::CheckStatus::Pass => "pass".into(),
            crate::tensor::CheckStatus::Fail => "fail".into(),
            crate::tensor::CheckStatus::NotApplicable => "not-applicable".into(),
        },
        detail: c.detail.clone(),
    }
}

pub fn report_json(report: &TensorSquareReport) -> ReportJson {
    let mode = match report.mode {
        ComputationMode::Full => "full",
        ComputationMode::OrderOnly => "order-only",
    };
    let tensor_square = match &report.detail {
        Some(d) => PieceJson::from_summary(&d.tensor),
        None => PieceJson {
            order: report.tensor_order,
            structure: "not computed".into(),
            invariant_factors: None,
        },
    };
    ReportJson {
        group: GroupJson {
            name: report.group_name.clone(),
            order: report.group_order,
            presentation: report.presentation_text.clone(),
        },
        tensor_square,
        exterior_square: report
            .detail
            .as_ref()
            .map(|d| PieceJson::from_summary(&d.exterior)),
        nabla: report
            .detail
            .as_ref()
            .map(|d| PieceJson::from_summary(&d.nabla)),
        j2: report.detail.as_ref().map(|d| PieceJson::from_summary(&d.j2)),
        schur_multiplier: report.detail.as_ref().map(|d| MultiplierJson {
            invariant_factors: d.schur_multiplier.invariant_factors().to_vec(),
        }),
        checks: report.checks.iter().map(check_json).collect(),
        stats: StatsJson {
            nu_order: report.stats.nu_order,
            strategy: report.stats.strategy.clone(),
            mode: mode.into(),
            total_cosets_defined: report.stats.enumeration.total_cosets_defined,
            coincidences: report.stats.enumeration.coincidences,
            peak_live_cosets: report.stats.enumeration.peak_live_cosets as u64,
        },
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CaseJson {
    pub id: String,
    pub theorem: String,
    pub verdict: String,
    pub provenance: String,
    pub mismatches: Vec<String>,
    pub case_checks: Vec<CheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SummaryJson {
    pub pass: usize,
    pub fail: usize,
    pub degraded: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CatalogJson {
    pub summary: SummaryJson,
    pub cases: Vec<CaseJson>,
}

pub fn catalog_json(report: &CatalogReport) -> CatalogJson {
    let (pass, fail, degraded) = report.counts();
    CatalogJson {
        summary: SummaryJson {
            pass,
            fail,
            degraded,
        },
        cases: report.cases.iter().map(case_json).collect(),
    }
}

fn case_json(case: &CaseOutcome) -> CaseJson {
    CaseJson {
        id: case.id.clone(),
        theorem: case.theorem.to_string(),
        verdict: case.verdict.to_string(),
        provenance: match case.provenance {
            crate::catalog::Provenance::Paper => "paper".into(),
            crate::catalog::Provenance::Derived => "derived".into(),
        },
        mismatches: case.mismatches.clone(),
        case_checks: case.case_checks.iter().map(check_json).collect(),
        report: case.report.as_ref().map(report_json),
    }
}

pub fn catalog_json_string(report: &CatalogReport) -> String {
    let mut s = serde_json::to_string_pretty(&catalog_json(report)).expect("serializable");
    s.push('\n');
    s
}

pub fn report_json_string(report: &TensorSquareReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(report)).expect("serializable");
    s.push('\n');
    s
}

/// One markdown table per theorem, one row per case.
pub fn catalog_markdown(report: &CatalogReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let (pass, fail, degraded) = report.counts();
    writeln!(out, "# Verification report").unwrap();
    writeln!(out).unwrap();
    writeln!(
        out,
        "{pass} passed, {fail} failed, {degraded} degraded ({} cases)",
        report.cases.len()
    )
    .unwrap();
    let mut current = String::new();
    for case in &report.cases {
        let theorem = case.theorem.to_string();
        if theorem != current {
            writeln!(out).unwrap();
            writeln!(out, "## Theorem {theorem}").unwrap();
            writeln!(out).unwrap();
            writeln!(
                out,
                "| case | group | order | G' | M(G) | tensor order | structure | verdict |"
            )
            .unwrap();
            writeln!(out, "|---|---|---|---|---|---|---|---|").unwrap();
            current = theorem;
        }
        let (d_order, m, t_order, structure) = match &case.report {
            Some(r) => {
                let m = r
                    .schur_multiplier()
                    .map(|m| m.to_string())
                    .unwrap_or_else(|| "?".into());
                let structure = r
                    .detail
                    .as_ref()
                    .map(|d| d.tensor.structure.to_string())
                    .unwrap_or_else(|| "not computed".into());
                let d = r
                    .group_table
                    .as_ref()
                    .map(|g| g.derived_subgroup().order().to_string())
                    .unwrap_or_else(|| "?".into());
                (d, m, r.tensor_order.to_string(), structure)
            }
            None => ("?".into(), "?".into(), "?".into(), "constructor failed".into()),
        };
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            case.id, case.group_name, case.group_order, d_order, m, t_order, structure, case.verdict
        )
        .unwrap();
        for mm in &case.mismatches {
            writeln!(out, "|  |  |  |  |  |  | mismatch: {mm} | |").unwrap();
        }
    }
    out
}

/// Markdown summary of a single computation.
pub fn report_markdown(report: &TensorSquareReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "# {}", report.group_name).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "- presentation: `{}`", report.presentation_text).unwrap();
    writeln!(out, "- order: {}", report.group_order).unwrap();
    writeln!(out, "- tensor square order: {}", report.tensor_order).unwrap();
    if let Some(d) = &report.detail {
        writeln!(out, "- tensor square: {}", d.tensor.structure).unwrap();
        writeln!(out, "- exterior square: {}", d.exterior.structure).unwrap();
        writeln!(out, "- nabla: {}", d.nabla.structure).unwrap();
        writeln!(out, "- J2: {}", d.j2.structure).unwrap();
        writeln!(out, "- Schur multiplier: {}", d.schur_multiplier).unwrap();
    } else {
        writeln!(out, "- structure: not computed (order-only mode)").unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "| check | status | detail |").unwrap();
    writeln!(out, "|---|---|---|").unwrap();
    for c in &report.checks {
        let status = match c.status {
            crate::tensor::CheckStatus::Pass => "pass",
            crate::tensor::CheckStatus::Fail => "fail",
            crate::tensor::CheckStatus::NotApplicable => "n/a",
        };
        writeln!(out, "| {} | {} | {} |", c.name, status, c.detail).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::tensor::{compute_tensor_square, TensorConfig};

    #[test]
    fn report_json_round_trips() {
        let p = parse_presentation("a, b | a^3, b^2, (a b)^2").unwrap();
        let report = compute_tensor_square(&p, &TensorConfig::default()).unwrap();
        let json = report_json_string(&report);
        let parsed: ReportJson = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report_json(&report));
        let reprinted = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
        assert_eq!(json, reprinted);
    }

    #[test]
    fn catalog_json_round_trips() {
        let config = crate::catalog::VerifyConfig::default();
        let report = crate::catalog::verify("all", Some("A/S3"), &config);
        let json = catalog_json_string(&report);
        let parsed: CatalogJson = serde_json::from_str(&json).unwrap();
        let reprinted = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
        assert_eq!(json, reprinted);
        assert_eq!(parsed.summary.pass, 1);
    }

    #[test]
    fn schema_field_names_are_stable() {
        let p = parse_presentation("a, b | a^3, b^2, (a b)^2").unwrap();
        let report = compute_tensor_square(&p, &TensorConfig::default()).unwrap();
        let json = report_json_string(&report);
        for field in [
            "\"group\"",
            "\"tensor_square\"",
            "\"exterior_square\"",
            "\"nabla\"",
            "\"j2\"",
            "\"schur_multiplier\"",
            "\"invariant_factors\"",
            "\"checks\"",
            "\"stats\"",
            "\"name\"",
            "\"order\"",
            "\"presentation\"",
            "\"structure\"",
        ] {
            assert!(json.contains(field), "missing {field} in {json}");
        }
    }
}
