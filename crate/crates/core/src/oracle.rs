//! Brute-force reference implementations for testing.
//!
//! Nothing here reuses the optimized kernels: plausibility is a double loop
//! over (subset, focal set) pairs, recomputed on every use, and mining is
//! plain enumeration of every item combination. Single-threaded.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::edb::EvidentialDatabase;
use crate::error::{Error, Result};
use crate::evidence::{MassFunction, EPS_PL};
use crate::miner::{extract_items, Item, MinedPattern, MinerConfig, Pattern};
use crate::synth::uniform_below;

/// Desk-scale limits for [`bruteforce_mine`].
pub const MAX_ROWS: usize = 16;
pub const MAX_ATTRIBUTES: usize = 5;
pub const MAX_FRAME: usize = 4;

/// `Pl(A)` for every nonempty `A`, indexed by `mask - 1`, by direct summation.
pub fn naive_plausibility(m: &MassFunction) -> Vec<f64> {
    let n = m.frame().len();
    let mut out = Vec::with_capacity((1 << n) - 1);
    for a in 1u32..(1 << n) {
        let mut pl = 0.0;
        for &(b, mass) in m.focal() {
            if a & b.bits() != 0 {
                pl += mass;
            }
        }
        out.push(pl);
    }
    out
}

pub fn naive_commitment(pattern: &MassFunction, row: &MassFunction) -> f64 {
    let p = naive_plausibility(pattern);
    let r = naive_plausibility(row);
    if p.iter().zip(&r).any(|(x, y)| *x > *y + EPS_PL) {
        return 0.0;
    }
    let norm: f64 = p
        .iter()
        .zip(&r)
        .map(|(x, y)| (y - x) * (y - x))
        .sum::<f64>()
        .sqrt();
    (1.0 - norm).max(0.0)
}

/// Support by direct evaluation against the database's BBAs.
pub fn naive_support(pattern: &Pattern, db: &EvidentialDatabase) -> f64 {
    naive_support_with(pattern, db, &naive_commitment)
}

fn naive_support_with(
    pattern: &Pattern,
    db: &EvidentialDatabase,
    commit: &dyn Fn(&MassFunction, &MassFunction) -> f64,
) -> f64 {
    if pattern.is_empty() {
        return 1.0;
    }
    let d = db.num_rows();
    if d == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..d {
        let mut product = 1.0;
        for it in pattern.items() {
            product *= commit(&it.bba, db.cell(i, it.attribute));
        }
        total += product;
    }
    total / d as f64
}

fn check_size(db: &EvidentialDatabase) -> Result<()> {
    if db.num_rows() > MAX_ROWS {
        return Err(Error::Size(format!("{} rows > {MAX_ROWS}", db.num_rows())));
    }
    if db.num_attributes() > MAX_ATTRIBUTES {
        return Err(Error::Size(format!(
            "{} attributes > {MAX_ATTRIBUTES}",
            db.num_attributes()
        )));
    }
    if let Some(a) = db.attributes().iter().find(|a| a.frame.len() > MAX_FRAME) {
        return Err(Error::Size(format!(
            "attribute {:?} has {} elements > {MAX_FRAME}",
            a.name,
            a.frame.len()
        )));
    }
    Ok(())
}

/// Every combination of at most `maxlen` items (one per attribute), kept when
/// its naive support reaches `minsup`. No pruning.
pub fn bruteforce_mine(db: &EvidentialDatabase, config: &MinerConfig) -> Result<Vec<MinedPattern>> {
    check_size(db)?;
    let items: Vec<Arc<Item>> = extract_items(db).into_iter().map(Arc::new).collect();
    let n = db.num_attributes();
    let maxlen = config.effective_maxlen(n);
    let by_attr: Vec<Vec<Arc<Item>>> = (0..n)
        .map(|j| {
            items
                .iter()
                .filter(|it| it.attribute == j)
                .cloned()
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    // choice[j] = 0 means "no item on j", otherwise item choice[j] - 1
    let mut choice = vec![0usize; n];
    loop {
        let chosen: Vec<Arc<Item>> = choice
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, &c)| by_attr[j][c - 1].clone())
            .collect();
        if !chosen.is_empty() && chosen.len() <= maxlen {
            let pattern = Pattern::new(chosen).expect("one item per attribute");
            let support = naive_support(&pattern, db);
            if support >= config.minsup() {
                out.push(MinedPattern { pattern, support });
            }
        }
        // odometer increment
        let mut j = 0;
        loop {
            if j == n {
                out.sort_by(MinedPattern::canonical_cmp);
                return Ok(out);
            }
            choice[j] += 1;
            if choice[j] <= by_attr[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// Level-wise mining with the unordered join: every frequent pattern of the
/// current level is joined with every item on a different attribute, and
/// duplicates are removed afterwards.
pub fn literal_join_mine(
    db: &EvidentialDatabase,
    config: &MinerConfig,
) -> Result<Vec<MinedPattern>> {
    check_size(db)?;
    let items: Vec<Arc<Item>> = extract_items(db).into_iter().map(Arc::new).collect();
    let maxlen = config.effective_maxlen(db.num_attributes());
    let mut out = Vec::new();
    let mut candidates: BTreeSet<Vec<usize>> = items.iter().map(|it| vec![it.id]).collect();
    let mut size = 1;
    while !candidates.is_empty() && size <= maxlen {
        let mut frequent = Vec::new();
        for ids in &candidates {
            let pattern = Pattern::new(ids.iter().map(|&k| items[k].clone()).collect())
                .expect("candidates never share an attribute");
            let support = naive_support(&pattern, db);
            if support >= config.minsup() {
                frequent.push(MinedPattern { pattern, support });
            }
        }
        let mut next = BTreeSet::new();
        for mp in &frequent {
            for it in &items {
                if mp
                    .pattern
                    .items()
                    .iter()
                    .all(|x| x.attribute != it.attribute)
                {
                    let mut ids = mp.pattern.item_ids();
                    ids.push(it.id);
                    ids.sort_unstable();
                    next.insert(ids);
                }
            }
        }
        out.extend(frequent);
        candidates = next;
        size += 1;
    }
    out.sort_by(MinedPattern::canonical_cmp);
    Ok(out)
}

/// One `(X, X ∪ {y})` pair whose support went up.
#[derive(Clone, Debug, PartialEq)]
pub struct AntiMonotonicityViolation {
    /// `(attribute, row)` coordinates of the cells used as items of `X`.
    pub base: Vec<(usize, usize)>,
    /// Coordinates of the added item `y`.
    pub added: (usize, usize),
    pub support_base: f64,
    pub support_extended: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AntiMonotonicityReport {
    pub trials: usize,
    pub violations: Vec<AntiMonotonicityViolation>,
}

impl AntiMonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples random pairs `(X, X ∪ {y})` with items drawn from the database's
/// cells and checks `support(X ∪ {y}) <= support(X) + 1e-12`, using the
/// production support computation.
pub fn check_antimonotonicity(
    db: &EvidentialDatabase,
    trials: usize,
    seed: u64,
) -> AntiMonotonicityReport {
    let proj = db.pl_project();
    check_pairs(db, trials, seed, |p| crate::miner::support(p, &proj))
}

/// Same sampling, with supports computed from a caller-supplied commitment
/// function (used to confirm the checker catches a broken measure).
pub fn check_antimonotonicity_with(
    db: &EvidentialDatabase,
    trials: usize,
    seed: u64,
    commit: &dyn Fn(&MassFunction, &MassFunction) -> f64,
) -> AntiMonotonicityReport {
    check_pairs(db, trials, seed, |p| naive_support_with(p, db, commit))
}

fn check_pairs(
    db: &EvidentialDatabase,
    trials: usize,
    seed: u64,
    support: impl Fn(&Pattern) -> f64,
) -> AntiMonotonicityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (d, n) = (db.num_rows(), db.num_attributes());
    let mut violations = Vec::new();
    if d == 0 || n == 0 {
        return AntiMonotonicityReport {
            trials: 0,
            violations,
        };
    }
    let cell_item = |attribute: usize, row: usize| {
        Arc::new(Item::new(0, attribute, db.cell(row, attribute).clone()))
    };
    for _ in 0..trials {
        // random attribute order; the first k go to X, the next one is y
        let mut attrs: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            attrs.swap(i, uniform_below(&mut rng, i as u64 + 1) as usize);
        }
        let k = uniform_below(&mut rng, n as u64) as usize;
        let base: Vec<(usize, usize)> = attrs[..k]
            .iter()
            .map(|&a| (a, uniform_below(&mut rng, d as u64) as usize))
            .collect();
        let added = (attrs[k], uniform_below(&mut rng, d as u64) as usize);

        let x = Pattern::new(base.iter().map(|&(a, r)| cell_item(a, r)).collect())
            .expect("distinct attributes");
        let xy = x
            .with_item(cell_item(added.0, added.1))
            .expect("fresh attribute");
        let (sx, sxy) = (support(&x), support(&xy));
        if sxy > sx + 1e-12 {
            violations.push(AntiMonotonicityViolation {
                base,
                added,
                support_base: sx,
                support_extended: sxy,
            });
        }
    }
    AntiMonotonicityReport { trials, violations }
}
