//! Bundled sample data: the two-practitioner treatment database and the
//! eleven-expert survey for source S1.

use crate::edb::{AttributeSchema, EvidentialDatabase};
use crate::evidence::{FrameOfDiscernment, MassFunction};
use crate::ingest::{self, ConfidenceMap, Survey};

/// Contents of `data/s1_sample.csv`.
pub const S1_SAMPLE_CSV: &str = include_str!("../../../data/s1_sample.csv");

/// Two practitioners rating two treatments over `{Good, Average, Bad}`.
///
/// | row | T1                | T2                          |
/// |-----|-------------------|-----------------------------|
/// | P1  | Good 0.7, Θ 0.3   | Good 0.4, Average 0.2, Θ 0.4 |
/// | P2  | Good 0.6, Θ 0.4   | Good 0.3, Θ 0.7             |
pub fn treatment_db() -> EvidentialDatabase {
    let attributes: Vec<AttributeSchema> = ["T1", "T2"]
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let frame = FrameOfDiscernment::shared(["Good", "Average", "Bad"]).unwrap();
            AttributeSchema::new(j, *name, frame)
        })
        .collect();
    let cell = |j: usize, parts: &[(&[&str], f64)]| {
        let f = &attributes[j].frame;
        MassFunction::new(
            f.clone(),
            parts
                .iter()
                .map(|(names, v)| (f.subset(names).unwrap(), *v)),
        )
        .unwrap()
    };
    const THETA: &[&str] = &["Good", "Average", "Bad"];
    let rows = vec![
        vec![
            cell(0, &[(&["Good"], 0.7), (THETA, 0.3)]),
            cell(1, &[(&["Good"], 0.4), (&["Average"], 0.2), (THETA, 0.4)]),
        ],
        vec![
            cell(0, &[(&["Good"], 0.6), (THETA, 0.4)]),
            cell(1, &[(&["Good"], 0.3), (THETA, 0.7)]),
        ],
    ];
    let labels = vec![Some("P1".to_string()), Some("P2".to_string())];
    EvidentialDatabase::with_labels(attributes, rows, labels).unwrap()
}

pub fn s1_survey() -> Survey {
    ingest::parse_survey_str(S1_SAMPLE_CSV).expect("bundled survey parses")
}

/// The S1 survey ingested with the default confidence map.
pub fn s1_db() -> EvidentialDatabase {
    ingest::build_source_edb(&s1_survey(), &ConfidenceMap::default(), "S1")
        .expect("bundled survey ingests")
}
