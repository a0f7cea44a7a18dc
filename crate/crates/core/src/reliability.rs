//! Source reliability from full-coverage frequent patterns.
//!
//! The best pattern holding one item per question is taken as the panel's
//! shared opinion of the source. Its positivity is the pignistic expectation
//! of the answer rank, scaled to `[0, 1]` and averaged over questions; fixed
//! cut-points turn that into a verdict.

use std::fmt;

use serde::Serialize;

use crate::edb::{AttributeSchema, EvidentialDatabase};
use crate::error::{Error, Result};
use crate::ingest::{ConfidenceMap, Scale};
use crate::miner::{opminer, MinedPattern, MinerConfig, Pattern};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    High,
    Moderate,
    Low,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::High => "high",
            Verdict::Moderate => "moderate",
            Verdict::Low => "low",
        })
    }
}

/// Summary of one question's item in the best pattern.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuestionMode {
    pub question: String,
    /// Answer with the largest pignistic probability.
    pub evaluation: Scale,
    /// Mass on the singleton answer.
    pub mass_on_answer: f64,
    /// Mass on the whole frame.
    pub ignorance: f64,
    /// Confidence label whose discount factor is nearest the ignorance mass.
    pub confidence: Scale,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SourceReport {
    pub source: Option<String>,
    pub best_pattern: Option<MinedPattern>,
    /// Ladder threshold at which the best pattern was found.
    pub minsup_used: Option<f64>,
    pub per_question_mode: Vec<QuestionMode>,
    pub positivity: Option<f64>,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssessConfig {
    ladder: Vec<f64>,
    high_cut: f64,
    moderate_cut: f64,
    confmap: ConfidenceMap,
    parallel: bool,
}

impl Default for AssessConfig {
    fn default() -> Self {
        AssessConfig {
            ladder: vec![0.3, 0.2, 0.1, 0.05],
            high_cut: 0.75,
            moderate_cut: 0.45,
            confmap: ConfidenceMap::default(),
            parallel: true,
        }
    }
}

impl AssessConfig {
    /// Thresholds are tried largest first; each must lie in `(0, 1]`.
    pub fn with_ladder(mut self, ladder: &[f64]) -> Result<Self> {
        if ladder.is_empty() {
            return Err(Error::Config("minsup ladder is empty".into()));
        }
        if let Some(bad) = ladder.iter().find(|&&m| !(m > 0.0 && m <= 1.0)) {
            return Err(Error::Config(format!("ladder value {bad} not in (0, 1]")));
        }
        let mut ladder = ladder.to_vec();
        ladder.sort_by(|a, b| b.total_cmp(a));
        ladder.dedup();
        self.ladder = ladder;
        Ok(self)
    }

    pub fn with_cut_points(mut self, high: f64, moderate: f64) -> Result<Self> {
        if !(0.0 <= moderate && moderate <= high && high <= 1.0) {
            return Err(Error::Config(format!(
                "cut points must satisfy 0 <= moderate ({moderate}) <= high ({high}) <= 1"
            )));
        }
        self.high_cut = high;
        self.moderate_cut = moderate;
        Ok(self)
    }

    pub fn with_confidence_map(mut self, confmap: ConfidenceMap) -> Self {
        self.confmap = confmap;
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn ladder(&self) -> &[f64] {
        &self.ladder
    }

    pub fn verdict(&self, positivity: f64) -> Verdict {
        if positivity >= self.high_cut {
            Verdict::High
        } else if positivity >= self.moderate_cut {
            Verdict::Moderate
        } else {
            Verdict::Low
        }
    }
}

/// Patterns covering every attribute, by support descending (ties by item order).
pub fn full_coverage_patterns(
    frequent: &[MinedPattern],
    schema: &[AttributeSchema],
) -> Vec<MinedPattern> {
    let n = schema.len();
    let mut out: Vec<MinedPattern> = frequent
        .iter()
        .filter(|m| n > 0 && m.pattern.len() == n)
        .cloned()
        .collect();
    out.sort_by(|a, b| {
        b.support
            .total_cmp(&a.support)
            .then_with(|| a.pattern.item_ids().cmp(&b.pattern.item_ids()))
    });
    out
}

fn check_scale_frame(elements: &[String]) -> Result<()> {
    let ok = elements.len() == Scale::ALL.len()
        && elements.iter().zip(Scale::ALL).all(|(e, s)| e == s.name());
    if ok {
        Ok(())
    } else {
        Err(Error::Frame(format!(
            "positivity needs the five-degree scale frame, found {elements:?}"
        )))
    }
}

/// Mean over items of `Σ BetP(θ)·rank(θ)/4`, ranks VeryLow = 0 … VeryHigh = 4.
pub fn positivity_score(pattern: &Pattern) -> Result<f64> {
    if pattern.is_empty() {
        return Err(Error::Config("positivity of an empty pattern".into()));
    }
    let mut total = 0.0;
    for it in pattern.items() {
        check_scale_frame(it.bba.frame().elements())?;
        let betp = it.bba.pignistic();
        total += Scale::ALL
            .iter()
            .map(|s| betp[s.index()] * f64::from(s.rank()) / 4.0)
            .sum::<f64>();
    }
    Ok(total / pattern.len() as f64)
}

fn question_modes(
    pattern: &Pattern,
    schema: &[AttributeSchema],
    confmap: &ConfidenceMap,
) -> Vec<QuestionMode> {
    pattern
        .items()
        .iter()
        .map(|it| {
            let betp = it.bba.pignistic();
            let evaluation = Scale::ALL
                .into_iter()
                .max_by(|a, b| betp[a.index()].total_cmp(&betp[b.index()]).then(b.cmp(a)))
                .expect("scale is nonempty");
            let frame = it.bba.frame();
            let ignorance = it.bba.mass(frame.full());
            QuestionMode {
                question: schema[it.attribute].name.clone(),
                evaluation,
                mass_on_answer: it
                    .bba
                    .mass(crate::evidence::SubsetMask::singleton(evaluation.index())),
                ignorance,
                confidence: confmap.nearest(ignorance),
            }
        })
        .collect()
}

/// Mines the database, keeps the best full-coverage pattern found at the
/// largest ladder threshold that yields one, and scores it.
pub fn assess_source(db: &EvidentialDatabase, config: &AssessConfig) -> Result<SourceReport> {
    let mut report = SourceReport {
        source: db.source().map(str::to_string),
        best_pattern: None,
        minsup_used: None,
        per_question_mode: Vec::new(),
        positivity: None,
        verdict: None,
    };
    let lowest = *config.ladder.last().expect("ladder is nonempty");
    // result sets nest as minsup grows, so one run at the lowest rung
    // answers every rung
    let mined = opminer(
        db,
        &MinerConfig::new(lowest)?.with_parallel(config.parallel),
    );
    let full = full_coverage_patterns(&mined, db.attributes());
    let Some(best) = full.into_iter().next() else {
        return Ok(report);
    };
    report.minsup_used = config.ladder.iter().copied().find(|&m| best.support >= m);
    for it in best.pattern.items() {
        check_scale_frame(it.bba.frame().elements())?;
    }
    let positivity = positivity_score(&best.pattern)?;
    report.per_question_mode = question_modes(&best.pattern, db.attributes(), &config.confmap);
    report.positivity = Some(positivity);
    report.verdict = Some(config.verdict(positivity));
    report.best_pattern = Some(best);
    Ok(report)
}
