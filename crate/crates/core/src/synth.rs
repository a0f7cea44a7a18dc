//! Seeded synthetic evidential databases and minsup sweeps.
//!
//! Generator: ChaCha8 (`rand_chacha`) seeded with `seed_from_u64(seed)`.
//! Uniform reals are `(next_u64 >> 11) * 2^-53`; uniform integers below `n`
//! are the high 64 bits of `next_u64 * n`. Draw order per cell, row-major:
//!
//! 1. one real; below `p_certain` the cell is certain on element
//!    `uniform_below(N)` and nothing else is drawn;
//! 2. otherwise `j = 1 + uniform_below(k)` focal sets, then one real: below
//!    one half, `Θ` is taken as the first focal set;
//! 3. remaining focal sets are `1 + uniform_below(2^N - 1)`, redrawn on repeat;
//! 4. `j - 1` reals, sorted; their gaps (with 0 and 1) are the masses, in the
//!    order the focal sets were chosen.
//!
//! This layout is part of the format: the same config always yields the same
//! database.

use std::fmt::Write as _;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::edb::{AttributeSchema, EvidentialDatabase};
use crate::error::{Error, Result};
use crate::evidence::{FrameOfDiscernment, MassFunction, SubsetMask, MAX_FRAME_SIZE};
use crate::miner::{extract_items, opminer, MinerConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub rows: usize,
    pub attributes: usize,
    pub frame_size: usize,
    pub max_focal: usize,
    pub p_certain: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            rows: 100,
            attributes: 4,
            frame_size: 3,
            max_focal: 3,
            p_certain: 0.5,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.frame_size == 0 || self.frame_size > MAX_FRAME_SIZE {
            return Err(Error::Config(format!(
                "frame size {} not in 1..={MAX_FRAME_SIZE}",
                self.frame_size
            )));
        }
        let subsets = (1usize << self.frame_size) - 1;
        if self.max_focal == 0 || self.max_focal > subsets {
            return Err(Error::Config(format!(
                "max focal {} not in 1..={subsets}",
                self.max_focal
            )));
        }
        if !(0.0..=1.0).contains(&self.p_certain) {
            return Err(Error::Config(format!(
                "p_certain {} not in [0, 1]",
                self.p_certain
            )));
        }
        Ok(())
    }
}

pub(crate) fn unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub(crate) fn uniform_below(rng: &mut impl RngCore, n: u64) -> u64 {
    ((u128::from(rng.next_u64()) * u128::from(n)) >> 64) as u64
}

pub fn generate(config: &SynthConfig) -> Result<EvidentialDatabase> {
    config.validate()?;
    let names: Vec<String> = (0..config.frame_size).map(|i| format!("e{i}")).collect();
    let frame = FrameOfDiscernment::shared(names)?;
    let attributes: Vec<AttributeSchema> = (0..config.attributes)
        .map(|j| AttributeSchema::new(j, format!("A{}", j + 1), frame.clone()))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let full = frame.full();
    let subsets = frame.powerset_len() as u64;

    let mut rows = Vec::with_capacity(config.rows);
    for _ in 0..config.rows {
        let mut row = Vec::with_capacity(config.attributes);
        for _ in 0..config.attributes {
            if unit(&mut rng) < config.p_certain {
                let e = uniform_below(&mut rng, config.frame_size as u64) as usize;
                row.push(MassFunction::new(
                    frame.clone(),
                    [(SubsetMask::singleton(e), 1.0)],
                )?);
                continue;
            }
            let j = 1 + uniform_below(&mut rng, config.max_focal as u64) as usize;
            let mut chosen: Vec<SubsetMask> = Vec::with_capacity(j);
            if unit(&mut rng) < 0.5 {
                chosen.push(full);
            }
            while chosen.len() < j {
                let m = SubsetMask(1 + uniform_below(&mut rng, subsets) as u32);
                if !chosen.contains(&m) {
                    chosen.push(m);
                }
            }
            let mut cuts: Vec<f64> = (0..j - 1).map(|_| unit(&mut rng)).collect();
            cuts.sort_by(f64::total_cmp);
            cuts.push(1.0);
            let mut prev = 0.0;
            let masses: Vec<f64> = cuts
                .iter()
                .map(|&c| {
                    let m = c - prev;
                    prev = c;
                    m
                })
                .collect();
            row.push(MassFunction::new(
                frame.clone(),
                chosen.into_iter().zip(masses),
            )?);
        }
        rows.push(row);
    }
    EvidentialDatabase::new(attributes, rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub minsup: f64,
    pub pattern_count: usize,
    pub wall_ms: f64,
}

/// Mines once per threshold. Thresholds must be strictly increasing.
pub fn sweep(
    db: &EvidentialDatabase,
    minsups: &[f64],
    maxlen: Option<usize>,
    parallel: bool,
) -> Result<Vec<SweepPoint>> {
    if minsups.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(
            "minsup list must be strictly increasing".into(),
        ));
    }
    minsups
        .iter()
        .map(|&minsup| {
            let mut cfg = MinerConfig::new(minsup)?.with_parallel(parallel);
            if let Some(k) = maxlen {
                cfg = cfg.with_maxlen(k)?;
            }
            let start = Instant::now();
            let pattern_count = opminer(db, &cfg).len();
            Ok(SweepPoint {
                minsup,
                pattern_count,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: &str = "minsup,pattern_count,wall_ms";

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for p in points {
        let _ = writeln!(out, "{},{},{:.3}", p.minsup, p.pattern_count, p.wall_ms);
    }
    out
}

/// Cell count versus extracted item count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ItemReduction {
    pub cells: usize,
    pub items: usize,
}

pub fn item_reduction(db: &EvidentialDatabase) -> ItemReduction {
    ItemReduction {
        cells: db.num_rows() * db.num_attributes(),
        items: extract_items(db).len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn all_certain_when_p_is_one() {
        let cfg = SynthConfig {
            rows: 2,
            attributes: 2,
            frame_size: 3,
            max_focal: 2,
            p_certain: 1.0,
            seed: 11,
        };
        let db = generate(&cfg).unwrap();
        assert_eq!(
            db.rows()
                .iter()
                .flatten()
                .filter(|m| m.is_certain())
                .count(),
            4
        );
    }

    #[test]
    fn seeded_and_reproducible() {
        let cfg = SynthConfig {
            seed: 99,
            ..SynthConfig::default()
        };
        assert_eq!(generate(&cfg).unwrap(), generate(&cfg).unwrap());
        let other = SynthConfig {
            seed: 100,
            ..cfg.clone()
        };
        assert_ne!(generate(&cfg).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn focal_count_bounded() {
        let cfg = SynthConfig {
            rows: 50,
            attributes: 3,
            frame_size: 4,
            max_focal: 3,
            p_certain: 0.0,
            seed: 5,
        };
        let db = generate(&cfg).unwrap();
        assert!(db
            .rows()
            .iter()
            .flatten()
            .all(|m| (1..=3).contains(&m.focal().len())));
    }

    #[test]
    fn full_powerset_focal() {
        let cfg = SynthConfig {
            rows: 3,
            attributes: 1,
            frame_size: 3,
            max_focal: 7,
            p_certain: 0.0,
            seed: 1,
        };
        assert!(generate(&cfg).unwrap().validate().is_ok());
    }

    #[test]
    fn config_errors() {
        let bad = [
            SynthConfig {
                frame_size: 0,
                ..Default::default()
            },
            SynthConfig {
                frame_size: 17,
                ..Default::default()
            },
            SynthConfig {
                max_focal: 0,
                ..Default::default()
            },
            SynthConfig {
                frame_size: 2,
                max_focal: 4,
                ..Default::default()
            },
            SynthConfig {
                p_certain: 1.5,
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(generate(&c).is_err(), "{c:?}");
        }
    }

    #[test]
    fn sweep_counts() {
        let db = samples::s1_db();
        let pts = sweep(&db, &[0.1, 0.2, 0.3, 0.4], None, true).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts
            .windows(2)
            .all(|w| w[0].pattern_count >= w[1].pattern_count));
        let beyond = sweep(&db, &[1.0], None, true).unwrap();
        assert_eq!(beyond[0].pattern_count, 0);
        assert!(sweep(&db, &[0.2, 0.2], None, true).is_err());
        let csv = sweep_csv(&pts[..1]);
        assert!(csv.starts_with("minsup,pattern_count,wall_ms\n0.1,"));
        assert_eq!(csv.lines().count(), 2);
    }

    #[test]
    fn items_fewer_than_cells_on_survey() {
        let r = item_reduction(&samples::s1_db());
        assert_eq!(r.cells, 44);
        assert!(r.items < r.cells);
    }
}
