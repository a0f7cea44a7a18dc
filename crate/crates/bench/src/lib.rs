//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use evmine_core::miner::{extract_items, Item};
use evmine_core::synth::{generate, SynthConfig};
use evmine_core::{EvidentialDatabase, Pattern};

pub fn synthetic(
    rows: usize,
    attributes: usize,
    frame_size: usize,
    seed: u64,
) -> EvidentialDatabase {
    generate(&SynthConfig {
        rows,
        attributes,
        frame_size,
        max_focal: 3,
        p_certain: 0.5,
        seed,
    })
    .expect("valid synthetic config")
}

/// One item from each of the first `len` attributes.
pub fn fixed_pattern(db: &EvidentialDatabase, len: usize) -> Pattern {
    let items = extract_items(db);
    let picked: Vec<Arc<Item>> = (0..len)
        .filter_map(|a| {
            items
                .iter()
                .find(|it| it.attribute == a)
                .cloned()
                .map(Arc::new)
        })
        .collect();
    Pattern::new(picked).expect("distinct attributes")
}
