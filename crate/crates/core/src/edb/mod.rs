//! Evidential database model: attribute schema, rows of BBAs, plausibility
//! projection and the JSON file format.

mod json;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evidence::{plausibility, FrameOfDiscernment, MassFunction, PlausibilityVector};

pub use json::{cell_from_json, cell_to_json, from_json_str, load_json, save_json, to_json_string};

#[derive(Clone, Debug, PartialEq)]
pub struct AttributeSchema {
    pub id: usize,
    pub name: String,
    pub frame: Arc<FrameOfDiscernment>,
}

impl AttributeSchema {
    pub fn new(id: usize, name: impl Into<String>, frame: Arc<FrameOfDiscernment>) -> Self {
        AttributeSchema {
            id,
            name: name.into(),
            frame,
        }
    }
}

/// `d` rows by `n` attributes, exactly one BBA per cell.
///
/// Missing answers are stored as vacuous BBAs. Construction checks the table
/// shape only; [`EvidentialDatabase::validate`] checks every cell.
#[derive(Clone, Debug, PartialEq)]
pub struct EvidentialDatabase {
    source: Option<String>,
    attributes: Vec<AttributeSchema>,
    rows: Vec<Vec<MassFunction>>,
    row_labels: Vec<Option<String>>,
}

impl EvidentialDatabase {
    pub fn new(attributes: Vec<AttributeSchema>, rows: Vec<Vec<MassFunction>>) -> Result<Self> {
        let labels = vec![None; rows.len()];
        Self::with_labels(attributes, rows, labels)
    }

    pub fn with_labels(
        attributes: Vec<AttributeSchema>,
        rows: Vec<Vec<MassFunction>>,
        row_labels: Vec<Option<String>>,
    ) -> Result<Self> {
        for (j, a) in attributes.iter().enumerate() {
            if a.id != j {
                return Err(Error::schema(
                    format!("$.attributes[{j}]"),
                    format!("attribute id {} does not match its position", a.id),
                ));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(Error::schema(
                    format!("$.rows[{i}].cells"),
                    format!("expected {} cells, found {}", attributes.len(), row.len()),
                ));
            }
        }
        if row_labels.len() != rows.len() {
            return Err(Error::schema(
                "$.rows",
                format!("{} labels for {} rows", row_labels.len(), rows.len()),
            ));
        }
        Ok(EvidentialDatabase {
            source: None,
            attributes,
            rows,
            row_labels,
        })
    }

    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = Some(source.into());
        self
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    pub fn attributes(&self) -> &[AttributeSchema] {
        &self.attributes
    }

    pub fn rows(&self) -> &[Vec<MassFunction>] {
        &self.rows
    }

    pub fn row_labels(&self) -> &[Option<String>] {
        &self.row_labels
    }

    pub fn cell(&self, row: usize, attribute: usize) -> &MassFunction {
        &self.rows[row][attribute]
    }

    /// `d`.
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// `n`.
    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn column(&self, attribute: usize) -> impl Iterator<Item = &MassFunction> + '_ {
        self.rows.iter().map(move |r| &r[attribute])
    }

    /// Every violated invariant, scanned to the end.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for (j, a) in self.attributes.iter().enumerate() {
            if self.attributes[..j].iter().any(|b| b.name == a.name) {
                out.push(Violation {
                    row: None,
                    attribute: Some(j),
                    message: format!("duplicate attribute name {:?}", a.name),
                });
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                let frame = &self.attributes[j].frame;
                if cell.frame() != frame {
                    out.push(Violation {
                        row: Some(i),
                        attribute: Some(j),
                        message: format!(
                            "cell frame {} differs from column frame {frame}",
                            cell.frame()
                        ),
                    });
                }
                for message in cell.violations() {
                    out.push(Violation {
                        row: Some(i),
                        attribute: Some(j),
                        message,
                    });
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn pl_project(&self) -> PlProjection {
        pl_project(self)
    }
}

/// One invariant violation with its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub row: Option<usize>,
    pub attribute: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.row, self.attribute) {
            (Some(r), Some(a)) => write!(f, "row {r}, attribute {a}: {}", self.message),
            (None, Some(a)) => write!(f, "attribute {a}: {}", self.message),
            (Some(r), None) => write!(f, "row {r}: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

pub fn validate(db: &EvidentialDatabase) -> std::result::Result<(), Vec<Violation>> {
    db.validate()
}

/// Plausibility vector of every cell, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PlProjection {
    cells: Vec<Vec<PlausibilityVector>>,
}

impl PlProjection {
    pub fn get(&self, row: usize, attribute: usize) -> &PlausibilityVector {
        &self.cells[row][attribute]
    }

    pub fn num_rows(&self) -> usize {
        self.cells.len()
    }

    pub fn rows(&self) -> &[Vec<PlausibilityVector>] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

pub fn pl_project(db: &EvidentialDatabase) -> PlProjection {
    let cells = db
        .rows
        .par_iter()
        .map(|row| row.iter().map(plausibility).collect())
        .collect();
    PlProjection { cells }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::{MassFunction, SubsetMask};
    use crate::samples;

    #[test]
    fn treatment_db_validates() {
        let db = samples::treatment_db();
        assert_eq!(db.num_rows(), 2);
        assert_eq!(db.num_attributes(), 2);
        assert!(validate(&db).is_ok());
    }

    #[test]
    fn validate_reports_coordinates() {
        let db = samples::treatment_db();
        let f = db.attributes()[1].frame.clone();
        let mut rows = db.rows().to_vec();
        rows[1][1] =
            MassFunction::new_unchecked(f.clone(), [(SubsetMask(1), 0.5), (SubsetMask(2), 0.4)]);
        rows[0][1] = MassFunction::new_unchecked(f, [(SubsetMask(0b1000), 1.0)]);
        let bad = EvidentialDatabase::new(db.attributes().to_vec(), rows).unwrap();
        let errs = validate(&bad).unwrap_err();
        assert_eq!(errs.len(), 2);
        assert_eq!((errs[0].row, errs[0].attribute), (Some(0), Some(1)));
        assert!(errs[0].message.contains("element index"));
        assert_eq!((errs[1].row, errs[1].attribute), (Some(1), Some(1)));
        assert!(errs[1].message.contains("sum"));
    }

    #[test]
    fn validate_flags_foreign_frames() {
        let db = samples::treatment_db();
        let mut rows = db.rows().to_vec();
        let other = FrameOfDiscernment::shared(["x", "y", "z"]).unwrap();
        rows[0][0] = MassFunction::vacuous(other);
        let bad = EvidentialDatabase::new(db.attributes().to_vec(), rows).unwrap();
        let errs = validate(&bad).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].message.contains("differs"));
    }

    #[test]
    fn shape_is_checked() {
        let db = samples::treatment_db();
        let mut rows = db.rows().to_vec();
        rows[0].pop();
        assert!(matches!(
            EvidentialDatabase::new(db.attributes().to_vec(), rows),
            Err(Error::Schema { .. })
        ));
    }

    #[test]
    fn projection_of_treatment_db() {
        let proj = samples::treatment_db().pl_project();
        assert_eq!(proj.num_rows(), 2);
        // mask order {G},{A},{G,A},{B},{G,B},{A,B},Θ
        let want = [1.0, 0.3, 1.0, 0.3, 1.0, 0.3, 1.0];
        for (a, b) in proj.get(0, 0).values().iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_of_vacuous_and_empty() {
        let f = FrameOfDiscernment::shared(["a", "b", "c", "d"]).unwrap();
        let attrs = vec![
            AttributeSchema::new(0, "x", f.clone()),
            AttributeSchema::new(1, "y", f.clone()),
        ];
        let rows = vec![vec![MassFunction::vacuous(f.clone()), MassFunction::vacuous(f)]; 3];
        let db = EvidentialDatabase::new(attrs.clone(), rows).unwrap();
        let proj = db.pl_project();
        assert!(proj
            .rows()
            .iter()
            .flatten()
            .all(|v| v.values().iter().all(|&x| x == 1.0)));

        let empty = EvidentialDatabase::new(attrs, vec![]).unwrap();
        assert!(empty.pl_project().is_empty());
    }
}
