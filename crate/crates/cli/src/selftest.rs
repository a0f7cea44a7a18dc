//! Built-in checks on the bundled samples: the treatment example, the
//! single-item supports of the survey sample and its source assessment.

use std::sync::Arc;
use std::time::Instant;

use evmine_core::evidence::commitment;
use evmine_core::miner::{extract_items, Item};
use evmine_core::reliability::{assess_source, AssessConfig, Verdict};
use evmine_core::{samples, support, MassFunction, Pattern};

pub struct Check {
    pub name: &'static str,
    pub detail: String,
    pub passed: bool,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        detail,
        passed,
    }
}

fn near(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol
}

pub fn treatment_example() -> Check {
    let start = Instant::now();
    let db = samples::treatment_db();
    let c1 = commitment(db.cell(0, 0), db.cell(1, 0)).unwrap();
    let c2 = commitment(db.cell(0, 1), db.cell(1, 1)).unwrap();
    let items: Vec<Arc<Item>> = extract_items(&db).into_iter().map(Arc::new).collect();
    let s = support(&Pattern::new(items).unwrap(), &db.pl_project());
    let elapsed = start.elapsed();
    let passed = near(c1, 0.826795, 1e-6)
        && near(c2, 0.564110, 1e-6)
        && near(s, 0.733202, 1e-6)
        && elapsed.as_secs_f64() < 1e-3;
    check(
        "treatment example",
        passed,
        format!(
            "C(m11,m21)={c1:.6} C(m12,m22)={c2:.6} support={s:.6} in {:.3} ms",
            elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn certain_support(attribute: usize, element: &str) -> f64 {
    let db = samples::s1_db();
    let frame = db.attributes()[attribute].frame.clone();
    let item = Item::new(0, attribute, MassFunction::certain(frame, element).unwrap());
    support(
        &Pattern::new(vec![Arc::new(item)]).unwrap(),
        &db.pl_project(),
    )
}

pub fn survey_single_items() -> Check {
    let q3 = certain_support(2, "High");
    let q1 = certain_support(0, "Moderate");
    check(
        "survey single-item supports",
        near(q3, 0.404619, 1e-4) && near(q1, 0.293219, 1e-4),
        format!("Q3=High {q3:.6}, Q1=Moderate {q1:.6}"),
    )
}

pub fn survey_assessment() -> Check {
    let db = samples::s1_db();
    let report = match assess_source(&db, &AssessConfig::default()) {
        Ok(r) => r,
        Err(e) => return check("survey assessment", false, e.to_string()),
    };
    let Some(best) = &report.best_pattern else {
        return check(
            "survey assessment",
            false,
            "no full-coverage pattern".into(),
        );
    };
    let answers: Vec<String> = report
        .per_question_mode
        .iter()
        .map(|q| q.evaluation.to_string())
        .collect();
    let passed = answers == ["Moderate", "Moderate", "High", "Moderate"]
        && near(best.support, 0.095528, 1e-5)
        && report.verdict == Some(Verdict::Moderate);
    check(
        "survey assessment",
        passed,
        format!(
            "best {} support {:.6}, verdict {}",
            answers.join("/"),
            best.support,
            report.verdict.map_or("-".into(), |v| v.to_string())
        ),
    )
}

pub fn run() -> Vec<Check> {
    // first call pays for thread-pool and allocator warm-up
    let _ = treatment_example();
    vec![
        treatment_example(),
        survey_single_items(),
        survey_assessment(),
    ]
}
