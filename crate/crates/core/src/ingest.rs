//! Survey ingestion: expert answers become certain BBAs, and each answer's
//! confidence discounts it toward ignorance.
//!
//! CSV layout: `expert,source,Q1,conf1,Q2,conf2,...`. Labels are matched
//! case-insensitively against the five-degree scale; spaces, hyphens and
//! underscores are ignored, and the short forms `Ver`, `Hig`, `Mo`, `Lo`,
//! `VLo` are accepted. An answer with both cells blank is a missing answer
//! and becomes a vacuous BBA.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::edb::{AttributeSchema, EvidentialDatabase};
use crate::error::{Error, Result};
use crate::evidence::{FrameOfDiscernment, MassFunction};

/// Five-degree evaluation scale, also used for confidences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Scale {
    VeryHigh,
    High,
    Moderate,
    Low,
    VeryLow,
}

impl Scale {
    /// Frame order.
    pub const ALL: [Scale; 5] = [
        Scale::VeryHigh,
        Scale::High,
        Scale::Moderate,
        Scale::Low,
        Scale::VeryLow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scale::VeryHigh => "VeryHigh",
            Scale::High => "High",
            Scale::Moderate => "Moderate",
            Scale::Low => "Low",
            Scale::VeryLow => "VeryLow",
        }
    }

    /// VeryLow = 0 … VeryHigh = 4.
    pub fn rank(self) -> u8 {
        4 - self.index() as u8
    }

    /// Position in the frame.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn parse(label: &str) -> Option<Scale> {
        let key: String = label
            .chars()
            .filter(|c| !matches!(c, ' ' | '-' | '_'))
            .flat_map(char::to_lowercase)
            .collect();
        match key.as_str() {
            "veryhigh" | "ver" | "vh" => Some(Scale::VeryHigh),
            "high" | "hig" | "h" => Some(Scale::High),
            "moderate" | "mod" | "mo" | "m" => Some(Scale::Moderate),
            "low" | "lo" | "l" => Some(Scale::Low),
            "verylow" | "vlo" | "vl" => Some(Scale::VeryLow),
            _ => None,
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The questionnaire frame: `{VeryHigh, High, Moderate, Low, VeryLow}`.
pub fn scale_frame() -> Arc<FrameOfDiscernment> {
    FrameOfDiscernment::shared(Scale::ALL.map(Scale::name)).expect("scale frame is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Answer {
    pub evaluation: Scale,
    pub confidence: Scale,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyRecord {
    pub expert: String,
    pub source: String,
    /// One entry per question; `None` for a missing answer.
    pub answers: Vec<Option<Answer>>,
}

/// Parsed survey file: question names plus records in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survey {
    pub questions: Vec<String>,
    pub records: Vec<SurveyRecord>,
}

impl Survey {
    /// Sources in order of first appearance.
    pub fn sources(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.records {
            if !out.contains(&r.source.as_str()) {
                out.push(&r.source);
            }
        }
        out
    }
}

/// Confidence label to discount factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceMap {
    #[serde(rename = "VeryHigh")]
    pub very_high: f64,
    #[serde(rename = "High")]
    pub high: f64,
    #[serde(rename = "Moderate")]
    pub moderate: f64,
    #[serde(rename = "Low")]
    pub low: f64,
    #[serde(rename = "VeryLow")]
    pub very_low: f64,
}

impl Default for ConfidenceMap {
    fn default() -> Self {
        ConfidenceMap {
            very_high: 0.0,
            high: 0.2,
            moderate: 0.4,
            low: 0.6,
            very_low: 0.8,
        }
    }
}

impl ConfidenceMap {
    pub fn alpha(&self, confidence: Scale) -> f64 {
        match confidence {
            Scale::VeryHigh => self.very_high,
            Scale::High => self.high,
            Scale::Moderate => self.moderate,
            Scale::Low => self.low,
            Scale::VeryLow => self.very_low,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for c in Scale::ALL {
            let a = self.alpha(c);
            if !(0.0..=1.0).contains(&a) {
                return Err(Error::Range(format!(
                    "confidence {c} maps to {a}, outside [0, 1]"
                )));
            }
        }
        Ok(())
    }

    /// Reads the JSON override. Keys missing from the file keep their defaults.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: BTreeMap<String, f64> = serde_json::from_str(text)
            .map_err(|e| Error::schema("$", format!("confidence map: {e}")))?;
        let mut map = ConfidenceMap::default();
        for (key, alpha) in raw {
            let scale = Scale::parse(&key)
                .ok_or_else(|| Error::schema(format!("$.{key}"), "unknown confidence label"))?;
            match scale {
                Scale::VeryHigh => map.very_high = alpha,
                Scale::High => map.high = alpha,
                Scale::Moderate => map.moderate = alpha,
                Scale::Low => map.low = alpha,
                Scale::VeryLow => map.very_low = alpha,
            }
        }
        map.validate()?;
        Ok(map)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json_str(&text)
    }

    /// The confidence label whose factor is closest to `alpha`.
    pub fn nearest(&self, alpha: f64) -> Scale {
        Scale::ALL
            .into_iter()
            .min_by(|a, b| {
                let da = (self.alpha(*a) - alpha).abs();
                let db = (self.alpha(*b) - alpha).abs();
                da.total_cmp(&db)
            })
            .expect("scale is nonempty")
    }
}

pub fn parse_survey_csv(path: impl AsRef<Path>) -> Result<Survey> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_survey_reader(file)
}

pub fn parse_survey_str(text: &str) -> Result<Survey> {
    parse_survey_reader(text.as_bytes())
}

pub fn parse_survey_reader<R: Read>(reader: R) -> Result<Survey> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records_iter = rdr.records();

    let label_err = |line: u64, column: usize, message: String| Error::Label {
        line,
        column,
        message,
    };

    let header = match records_iter.next() {
        None => return Err(label_err(1, 1, "empty survey file".into())),
        Some(h) => h.map_err(|e| label_err(1, 1, e.to_string()))?,
    };
    let width = header.len();
    if width < 4 || width % 2 != 0 {
        return Err(label_err(
            1,
            width,
            "header must be expert,source followed by question/confidence pairs".into(),
        ));
    }
    if !header[0].eq_ignore_ascii_case("expert") {
        return Err(label_err(
            1,
            1,
            format!("expected \"expert\", found {:?}", &header[0]),
        ));
    }
    if !header[1].eq_ignore_ascii_case("source") {
        return Err(label_err(
            1,
            2,
            format!("expected \"source\", found {:?}", &header[1]),
        ));
    }
    let questions: Vec<String> = (2..width)
        .step_by(2)
        .map(|c| header[c].to_string())
        .collect();
    for (k, q) in questions.iter().enumerate() {
        if q.is_empty() || questions[..k].contains(q) {
            return Err(label_err(1, 3 + 2 * k, format!("bad question name {q:?}")));
        }
    }

    let mut records = Vec::new();
    for rec in records_iter {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            label_err(line, 1, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if rec.len() != width {
            return Err(label_err(
                line,
                rec.len().min(width) + 1,
                format!("expected {width} fields, found {}", rec.len()),
            ));
        }
        let mut answers = Vec::with_capacity(questions.len());
        for k in 0..questions.len() {
            let (ec, cc) = (2 + 2 * k, 3 + 2 * k);
            let (eval, conf) = (&rec[ec], &rec[cc]);
            if eval.is_empty() && conf.is_empty() {
                answers.push(None);
                continue;
            }
            let evaluation = Scale::parse(eval).ok_or_else(|| {
                label_err(line, ec + 1, format!("unknown evaluation label {eval:?}"))
            })?;
            let confidence = Scale::parse(conf).ok_or_else(|| {
                label_err(line, cc + 1, format!("unknown confidence label {conf:?}"))
            })?;
            answers.push(Some(Answer {
                evaluation,
                confidence,
            }));
        }
        records.push(SurveyRecord {
            expert: rec[0].to_string(),
            source: rec[1].to_string(),
            answers,
        });
    }
    Ok(Survey { questions, records })
}

/// Writes a survey in the same CSV layout `parse_survey_*` reads.
pub fn write_survey_csv<W: Write>(survey: &Survey, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let to_err = |e: csv::Error| Error::schema("$", e.to_string());
    let mut header = vec!["expert".to_string(), "source".to_string()];
    for (k, q) in survey.questions.iter().enumerate() {
        header.push(q.clone());
        header.push(format!("conf{}", k + 1));
    }
    w.write_record(&header).map_err(to_err)?;
    for r in &survey.records {
        let mut fields = vec![r.expert.clone(), r.source.clone()];
        for a in &r.answers {
            match a {
                Some(a) => {
                    fields.push(a.evaluation.name().into());
                    fields.push(a.confidence.name().into());
                }
                None => fields.extend([String::new(), String::new()]),
            }
        }
        w.write_record(&fields).map_err(to_err)?;
    }
    w.flush().map_err(|e| Error::io("<survey output>", e))
}

/// The BBA for one answer: a certain BBA on the evaluation, discounted by the
/// confidence's factor. Missing answers are vacuous.
pub fn answer_bba(
    frame: &Arc<FrameOfDiscernment>,
    answer: Option<Answer>,
    confmap: &ConfidenceMap,
) -> Result<MassFunction> {
    match answer {
        None => Ok(MassFunction::vacuous(frame.clone())),
        Some(a) => MassFunction::certain(frame.clone(), a.evaluation.name())?
            .discount(confmap.alpha(a.confidence)),
    }
}

/// One database per source, in order of first appearance; rows keep input order.
pub fn build_edb(survey: &Survey, confmap: &ConfidenceMap) -> Result<Vec<EvidentialDatabase>> {
    survey
        .sources()
        .into_iter()
        .map(|s| build_source_edb(survey, confmap, s))
        .collect()
}

/// The database for a single source. Unknown sources yield an empty database.
pub fn build_source_edb(
    survey: &Survey,
    confmap: &ConfidenceMap,
    source: &str,
) -> Result<EvidentialDatabase> {
    confmap.validate()?;
    let frame = scale_frame();
    let attributes: Vec<AttributeSchema> = survey
        .questions
        .iter()
        .enumerate()
        .map(|(j, q)| AttributeSchema::new(j, q.clone(), frame.clone()))
        .collect();
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for r in survey.records.iter().filter(|r| r.source == source) {
        let row = r
            .answers
            .iter()
            .map(|a| answer_bba(&frame, *a, confmap))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        labels.push(Some(r.expert.clone()));
    }
    Ok(EvidentialDatabase::with_labels(attributes, rows, labels)?.with_source(source))
}
