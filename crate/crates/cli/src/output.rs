//! JSON and text renderings of mining results and source reports.

use std::fmt::Write as _;

use evmine_core::edb::cell_to_json;
use evmine_core::reliability::SourceReport;
use evmine_core::{AttributeSchema, MinedPattern};
use serde_json::{json, Value};

/// Support rounded to nine decimals.
pub fn round9(x: f64) -> f64 {
    format!("{x:.9}").parse().expect("formatted float parses")
}

pub fn pattern_to_json(mp: &MinedPattern, schema: &[AttributeSchema]) -> Value {
    let items: Vec<Value> = mp
        .pattern
        .items()
        .iter()
        .map(|it| {
            json!({
                "attribute": schema[it.attribute].name,
                "attribute_id": it.attribute,
                "bba": cell_to_json(&it.bba),
            })
        })
        .collect();
    json!({ "support": round9(mp.support), "items": items })
}

pub fn patterns_document(
    patterns: &[MinedPattern],
    schema: &[AttributeSchema],
    minsup: f64,
    maxlen: usize,
    rows: usize,
) -> Value {
    json!({
        "minsup": minsup,
        "maxlen": maxlen,
        "rows": rows,
        "pattern_count": patterns.len(),
        "patterns": patterns.iter().map(|p| pattern_to_json(p, schema)).collect::<Vec<_>>(),
    })
}

pub fn report_to_json(report: &SourceReport, schema: &[AttributeSchema]) -> Value {
    json!({
        "source": report.source,
        "verdict": report.verdict,
        "positivity": report.positivity,
        "minsup_used": report.minsup_used,
        "best_pattern": report.best_pattern.as_ref().map(|p| pattern_to_json(p, schema)),
        "per_question_mode": report.per_question_mode,
    })
}

pub fn report_to_text(report: &SourceReport) -> String {
    let mut out = String::new();
    let source = report.source.as_deref().unwrap_or("(unnamed)");
    let _ = writeln!(out, "source: {source}");
    let Some(best) = &report.best_pattern else {
        let _ = writeln!(
            out,
            "no full-coverage frequent pattern at any ladder threshold"
        );
        return out;
    };
    let _ = writeln!(
        out,
        "best full-coverage pattern: support {:.6} (found at minsup {})",
        best.support,
        report
            .minsup_used
            .map_or("-".to_string(), |m| m.to_string())
    );
    let _ = writeln!(
        out,
        "{:<10} {:<10} {:>8} {:>8}  confidence",
        "question", "answer", "mass", "Θ"
    );
    for q in &report.per_question_mode {
        let _ = writeln!(
            out,
            "{:<10} {:<10} {:>8.3} {:>8.3}  {}",
            q.question, q.evaluation, q.mass_on_answer, q.ignorance, q.confidence
        );
    }
    if let (Some(p), Some(v)) = (report.positivity, report.verdict) {
        let _ = writeln!(out, "positivity: {p:.4}");
        let _ = writeln!(out, "verdict: {v} reliability");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use evmine_core::reliability::{assess_source, AssessConfig};
    use evmine_core::samples;

    #[test]
    fn rounding() {
        assert_eq!(round9(0.733_202_042_4), 0.733202042);
        assert_eq!(round9(1.0), 1.0);
    }

    #[test]
    fn report_renderings() {
        let db = samples::s1_db();
        let r = assess_source(&db, &AssessConfig::default()).unwrap();
        let v = report_to_json(&r, db.attributes());
        assert_eq!(v["verdict"], "moderate");
        assert_eq!(v["best_pattern"]["items"].as_array().unwrap().len(), 4);
        assert_eq!(v["per_question_mode"][2]["evaluation"], "High");
        let t = report_to_text(&r);
        assert!(t.contains("verdict: moderate reliability"));
        assert!(t.contains("Q3         High"));
    }
}
