//! Level-wise opinion pattern mining.
//!
//! Items are the most committed BBAs of each column. A pattern holds at most
//! one item per attribute; its support is the row-average of the product of
//! the items' commitment scores against the row's cells. Every factor lies in
//! `[0, 1]`, so adding an item can only lower support, which is what makes
//! Apriori pruning sound.
//!
//! Internally each item's commitment scores are computed once, against every
//! row, and stored sparsely (rows with a zero score are dropped). A pattern
//! keeps the sparse per-row product of its items, so extending it by one item
//! is a merge of two sorted row lists.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;

use crate::edb::{pl_project, EvidentialDatabase, PlProjection};
use crate::error::{Error, Result};
use crate::evidence::{commitment_pl, plausibility, MassFunction, PlausibilityVector};

/// A BBA tagged with its attribute, with its plausibility cached.
#[derive(Clone, Debug, PartialEq)]
pub struct Item {
    /// Position in the extracted item list (attribute-major, canonical order).
    pub id: usize,
    pub attribute: usize,
    pub bba: MassFunction,
    pub pl: PlausibilityVector,
}

impl Item {
    pub fn new(id: usize, attribute: usize, bba: MassFunction) -> Self {
        let pl = plausibility(&bba);
        Item {
            id,
            attribute,
            bba,
            pl,
        }
    }
}

/// Items on distinct attributes, sorted by attribute.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Pattern {
    items: Vec<Arc<Item>>,
}

impl Pattern {
    pub fn new(mut items: Vec<Arc<Item>>) -> Result<Self> {
        items.sort_by_key(|it| it.attribute);
        if items.windows(2).any(|w| w[0].attribute == w[1].attribute) {
            return Err(Error::Config(
                "a pattern holds at most one item per attribute".into(),
            ));
        }
        Ok(Pattern { items })
    }

    pub fn empty() -> Self {
        Pattern::default()
    }

    pub fn items(&self) -> &[Arc<Item>] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn attributes(&self) -> Vec<usize> {
        self.items.iter().map(|it| it.attribute).collect()
    }

    pub fn item_ids(&self) -> Vec<usize> {
        self.items.iter().map(|it| it.id).collect()
    }

    pub fn max_attribute(&self) -> Option<usize> {
        self.items.last().map(|it| it.attribute)
    }

    /// `self ∪ {item}`, or `None` when the attribute is already taken.
    pub fn with_item(&self, item: Arc<Item>) -> Option<Pattern> {
        if self.items.iter().any(|it| it.attribute == item.attribute) {
            return None;
        }
        let mut items = self.items.clone();
        items.push(item);
        items.sort_by_key(|it| it.attribute);
        Some(Pattern { items })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinedPattern {
    pub pattern: Pattern,
    pub support: f64,
}

impl MinedPattern {
    /// Output order: length, attribute ids, support descending, item ids.
    pub fn canonical_cmp(&self, other: &MinedPattern) -> Ordering {
        self.pattern
            .len()
            .cmp(&other.pattern.len())
            .then_with(|| self.pattern.attributes().cmp(&other.pattern.attributes()))
            .then_with(|| other.support.total_cmp(&self.support))
            .then_with(|| self.pattern.item_ids().cmp(&other.pattern.item_ids()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinerConfig {
    minsup: f64,
    maxlen: Option<usize>,
    parallel: bool,
}

impl MinerConfig {
    /// `minsup` must lie in `[0, 1]`; zero is taken as the smallest positive
    /// threshold, so only patterns with nonzero support are reported.
    pub fn new(minsup: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&minsup) {
            return Err(Error::Config(format!("minsup {minsup} not in (0, 1]")));
        }
        Ok(MinerConfig {
            minsup: minsup.max(f64::MIN_POSITIVE),
            maxlen: None,
            parallel: true,
        })
    }

    /// Longest pattern to report. Values above the attribute count are capped.
    pub fn with_maxlen(mut self, maxlen: usize) -> Result<Self> {
        if maxlen == 0 {
            return Err(Error::Config("maxlen must be at least 1".into()));
        }
        self.maxlen = Some(maxlen);
        Ok(self)
    }

    /// Evaluate candidate supports on the rayon pool. Results do not depend on it.
    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn minsup(&self) -> f64 {
        self.minsup
    }

    pub fn maxlen(&self) -> Option<usize> {
        self.maxlen
    }

    pub fn parallel(&self) -> bool {
        self.parallel
    }

    pub fn effective_maxlen(&self, num_attributes: usize) -> usize {
        self.maxlen.unwrap_or(num_attributes).min(num_attributes)
    }
}

/// Most committed BBAs per column, attribute-major.
///
/// Cells with equal plausibility (within tolerance) collapse to the first one
/// seen. A cell is kept unless another distinct cell of its column is
/// strictly below it in plausibility order. Within a column, items are
/// ordered by their plausibility vectors compared entry by entry.
pub fn extract_items(db: &EvidentialDatabase) -> Vec<Item> {
    extract_items_with(db, &pl_project(db))
}

pub fn extract_items_with(db: &EvidentialDatabase, proj: &PlProjection) -> Vec<Item> {
    let per_column: Vec<Vec<(MassFunction, PlausibilityVector)>> = (0..db.num_attributes())
        .into_par_iter()
        .map(|j| most_committed(db, proj, j))
        .collect();
    let mut items = Vec::new();
    for (j, column) in per_column.into_iter().enumerate() {
        for (bba, pl) in column {
            items.push(Item {
                id: items.len(),
                attribute: j,
                bba,
                pl,
            });
        }
    }
    items
}

fn most_committed(
    db: &EvidentialDatabase,
    proj: &PlProjection,
    attribute: usize,
) -> Vec<(MassFunction, PlausibilityVector)> {
    let mut distinct: Vec<usize> = Vec::new();
    let mut exact: HashSet<Vec<u64>> = HashSet::new();
    for i in 0..db.num_rows() {
        let pl = proj.get(i, attribute);
        let key: Vec<u64> = pl.values().iter().map(|v| v.to_bits()).collect();
        if !exact.insert(key) {
            continue;
        }
        if distinct
            .iter()
            .any(|&k| proj.get(k, attribute).approx_eq(pl))
        {
            continue;
        }
        distinct.push(i);
    }
    let mut kept: Vec<(MassFunction, PlausibilityVector)> = distinct
        .iter()
        .filter(|&&i| {
            let pl = proj.get(i, attribute);
            !distinct
                .iter()
                .any(|&k| k != i && proj.get(k, attribute).dominated_by(pl))
        })
        .map(|&i| {
            (
                db.cell(i, attribute).clone(),
                proj.get(i, attribute).clone(),
            )
        })
        .collect();
    kept.sort_by(|a, b| lex_cmp(a.1.values(), b.1.values()));
    kept
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Row-average of the product of per-item commitment scores.
///
/// The empty pattern has support 1. On a database with no rows any nonempty
/// pattern has support 0.
pub fn support(pattern: &Pattern, proj: &PlProjection) -> f64 {
    if pattern.is_empty() {
        return 1.0;
    }
    let d = proj.num_rows();
    if d == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    for row in proj.rows() {
        let mut product = 1.0;
        for it in pattern.items() {
            product *= commitment_pl(&it.pl, &row[it.attribute]);
            if product == 0.0 {
                break;
            }
        }
        total += product;
    }
    total / d as f64
}

/// Extends every frequent pattern by each item on a later attribute.
///
/// Each candidate is produced exactly once, from its prefix without the
/// last attribute.
pub fn generate_candidates(frequent_k: &[MinedPattern], items: &[Arc<Item>]) -> Vec<Pattern> {
    let mut out = Vec::new();
    for mp in frequent_k {
        let after = mp.pattern.max_attribute();
        for it in items {
            if after.is_some_and(|a| it.attribute <= a) {
                continue;
            }
            if let Some(p) = mp.pattern.with_item(it.clone()) {
                out.push(p);
            }
        }
    }
    out
}

/// Sparse per-row values: rows in ascending order, zeros omitted.
#[derive(Clone, Debug, Default)]
struct RowValues {
    rows: Vec<u32>,
    values: Vec<f64>,
}

impl RowValues {
    fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    fn times(&self, other: &RowValues) -> RowValues {
        let mut out = RowValues::default();
        let (mut a, mut b) = (0, 0);
        while a < self.rows.len() && b < other.rows.len() {
            match self.rows[a].cmp(&other.rows[b]) {
                Ordering::Less => a += 1,
                Ordering::Greater => b += 1,
                Ordering::Equal => {
                    let v = self.values[a] * other.values[b];
                    if v != 0.0 {
                        out.rows.push(self.rows[a]);
                        out.values.push(v);
                    }
                    a += 1;
                    b += 1;
                }
            }
        }
        out
    }
}

struct Node {
    items: Vec<usize>,
    products: RowValues,
    support: f64,
}

/// Mines every pattern over the extracted items with support `>= minsup` and
/// at most `maxlen` items, in canonical order.
pub fn opminer(db: &EvidentialDatabase, config: &MinerConfig) -> Vec<MinedPattern> {
    let proj = pl_project(db);
    let items: Vec<Arc<Item>> = extract_items_with(db, &proj)
        .into_iter()
        .map(Arc::new)
        .collect();
    mine_items(&proj, &items, config)
}

/// Level-wise mining over a given item list (ids must match positions).
pub fn mine_items(
    proj: &PlProjection,
    items: &[Arc<Item>],
    config: &MinerConfig,
) -> Vec<MinedPattern> {
    let d = proj.num_rows();
    if d == 0 || items.is_empty() {
        return Vec::new();
    }
    let num_attributes = proj.rows()[0].len();
    let maxlen = config.effective_maxlen(num_attributes);
    let minsup = config.minsup();
    let scale = 1.0 / d as f64;

    let factor = |it: &Arc<Item>| {
        let mut rv = RowValues::default();
        for (i, row) in proj.rows().iter().enumerate() {
            let c = commitment_pl(&it.pl, &row[it.attribute]);
            if c != 0.0 {
                rv.rows.push(i as u32);
                rv.values.push(c);
            }
        }
        rv
    };
    let factors: Vec<RowValues> = if config.parallel() {
        items.par_iter().map(factor).collect()
    } else {
        items.iter().map(factor).collect()
    };

    // first item index on each attribute strictly after a given one
    let mut start_after = vec![items.len(); num_attributes + 1];
    for a in (0..num_attributes).rev() {
        start_after[a] = items
            .iter()
            .position(|it| it.attribute > a)
            .unwrap_or(items.len());
    }

    let mut level: Vec<Node> = items
        .iter()
        .enumerate()
        .map(|(k, _)| Node {
            items: vec![k],
            support: factors[k].sum() * scale,
            products: factors[k].clone(),
        })
        .filter(|n| n.support >= minsup)
        .collect();

    let mut out: Vec<MinedPattern> = Vec::new();
    let mut size = 1;
    while !level.is_empty() && size <= maxlen {
        out.extend(level.iter().map(|n| to_mined(n, items)));
        if size == maxlen {
            break;
        }
        let frequent: HashSet<&[usize]> = level.iter().map(|n| n.items.as_slice()).collect();
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for (p, node) in level.iter().enumerate() {
            let last_attr = items[*node.items.last().unwrap()].attribute;
            for k in start_after[last_attr]..items.len() {
                if all_subsets_frequent(&node.items, k, &frequent) {
                    candidates.push((p, k));
                }
            }
        }
        let eval = |&(p, k): &(usize, usize)| {
            let parent = &level[p];
            let products = parent.products.times(&factors[k]);
            let support = products.sum() * scale;
            (support >= minsup).then(|| {
                let mut ids = parent.items.clone();
                ids.push(k);
                Node {
                    items: ids,
                    products,
                    support,
                }
            })
        };
        let next: Vec<Node> = if config.parallel() {
            candidates.par_iter().filter_map(eval).collect()
        } else {
            candidates.iter().filter_map(eval).collect()
        };
        level = next;
        size += 1;
    }
    out.sort_by(MinedPattern::canonical_cmp);
    out
}

/// Apriori check: every k-subset of `prefix ∪ {extra}` that drops one prefix
/// item must itself be frequent. Dropping `extra` gives `prefix`, known frequent.
fn all_subsets_frequent(prefix: &[usize], extra: usize, frequent: &HashSet<&[usize]>) -> bool {
    if prefix.len() < 2 {
        return true;
    }
    let mut buf: Vec<usize> = Vec::with_capacity(prefix.len());
    (0..prefix.len()).all(|skip| {
        buf.clear();
        buf.extend(
            prefix
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v),
        );
        buf.push(extra);
        frequent.contains(buf.as_slice())
    })
}

fn to_mined(node: &Node, items: &[Arc<Item>]) -> MinedPattern {
    MinedPattern {
        pattern: Pattern {
            items: node.items.iter().map(|&k| items[k].clone()).collect(),
        },
        support: node.support,
    }
}
