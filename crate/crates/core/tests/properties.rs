use std::sync::Arc;

use evmine_core::edb::{from_json_str, to_json_string};
use evmine_core::evidence::{
    commitment, discount, pl_leq, plausibility, FrameOfDiscernment, MassFunction, SubsetMask,
};
use evmine_core::miner::{extract_items, opminer, support, Item, MinerConfig, Pattern};
use evmine_core::oracle::{bruteforce_mine, literal_join_mine, naive_plausibility, naive_support};
use evmine_core::synth::{generate, SynthConfig};
use proptest::prelude::*;

fn frame(n: usize) -> Arc<FrameOfDiscernment> {
    FrameOfDiscernment::shared((0..n).map(|i| format!("h{i}"))).unwrap()
}

fn bba_on(n: usize) -> impl Strategy<Value = MassFunction> {
    let full = (1u32 << n) - 1;
    prop::collection::vec((1..=full, 1u32..100), 1..6).prop_map(move |parts| {
        let total: u32 = parts.iter().map(|(_, w)| w).sum();
        MassFunction::new(
            frame(n),
            parts
                .into_iter()
                .map(|(m, w)| (SubsetMask(m), f64::from(w) / f64::from(total))),
        )
        .unwrap()
    })
}

fn bba() -> impl Strategy<Value = MassFunction> {
    (1usize..=4).prop_flat_map(bba_on)
}

fn triple() -> impl Strategy<Value = (MassFunction, MassFunction, MassFunction)> {
    (1usize..=4).prop_flat_map(|n| (bba_on(n), bba_on(n), bba_on(n)))
}

fn small_db_config() -> impl Strategy<Value = SynthConfig> {
    (
        1usize..=8,
        1usize..=4,
        1usize..=3,
        0.0f64..=1.0,
        any::<u64>(),
    )
        .prop_map(
            |(rows, attributes, frame_size, p_certain, seed)| SynthConfig {
                rows,
                attributes,
                frame_size,
                max_focal: ((1 << frame_size) - 1).min(3),
                p_certain,
                seed,
            },
        )
}

proptest! {
    #[test]
    fn plausibility_matches_double_loop(m in bba()) {
        let fast = plausibility(&m);
        let slow = naive_plausibility(&m);
        for (a, b) in fast.values().iter().zip(&slow) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn plausibility_bounds_and_monotonicity(m in bba()) {
        let pl = plausibility(&m);
        let full = m.frame().full();
        prop_assert!((pl.get(full) - 1.0).abs() < 1e-9);
        for a in 1..=full.bits() {
            let pa = pl.get(SubsetMask(a));
            prop_assert!((-1e-12..=1.0 + 1e-9).contains(&pa));
            for b in 1..=full.bits() {
                if a & !b == 0 {
                    prop_assert!(pa <= pl.get(SubsetMask(b)) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn pl_leq_is_a_preorder((a, b, c) in triple()) {
        prop_assert!(pl_leq(&a, &a).unwrap());
        if pl_leq(&a, &b).unwrap() && pl_leq(&b, &c).unwrap() {
            // tolerance can stack across two steps
            let (pa, pc) = (plausibility(&a), plausibility(&c));
            prop_assert!(pa.values().iter().zip(pc.values()).all(|(x, y)| *x <= *y + 2e-9));
        }
    }

    #[test]
    fn commitment_range_and_identity((a, b, _c) in triple()) {
        prop_assert_eq!(commitment(&a, &a).unwrap(), 1.0);
        let c = commitment(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
        if c == 1.0 {
            prop_assert!(plausibility(&a).approx_eq(&plausibility(&b)));
        }
    }

    #[test]
    fn discounting_behaves(m in bba(), a1 in 0.0f64..=1.0, a2 in 0.0f64..=1.0) {
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let (dl, dh) = (discount(&m, lo).unwrap(), discount(&m, hi).unwrap());
        for d in [&dl, &dh] {
            prop_assert!((d.total_mass() - 1.0).abs() <= 1e-9);
            prop_assert!(d.violations().is_empty());
        }
        prop_assert!(pl_leq(&dl, &dh).unwrap());
    }

    #[test]
    fn json_round_trip(cfg in small_db_config()) {
        let db = generate(&cfg).unwrap();
        prop_assert_eq!(from_json_str(&to_json_string(&db)).unwrap(), db);
    }

    #[test]
    fn projection_matches_oracle(cfg in small_db_config()) {
        let db = generate(&cfg).unwrap();
        let proj = db.pl_project();
        for i in 0..db.num_rows() {
            for j in 0..db.num_attributes() {
                let slow = naive_plausibility(db.cell(i, j));
                for (a, b) in proj.get(i, j).values().iter().zip(&slow) {
                    prop_assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn support_matches_naive(cfg in small_db_config(), pick in any::<u64>()) {
        let db = generate(&cfg).unwrap();
        let items: Vec<Arc<Item>> = extract_items(&db).into_iter().map(Arc::new).collect();
        let chosen: Vec<Arc<Item>> = (0..db.num_attributes())
            .filter(|j| pick >> j & 1 == 1)
            .filter_map(|j| items.iter().find(|it| it.attribute == j).cloned())
            .collect();
        let p = Pattern::new(chosen).unwrap();
        let s = support(&p, &db.pl_project());
        prop_assert!((s - naive_support(&p, &db)).abs() < 1e-9);
        prop_assert!((0.0..=1.0).contains(&s));
    }

    #[test]
    fn opminer_equals_bruteforce(cfg in small_db_config(), tenth in 1u32..=9) {
        let db = generate(&cfg).unwrap();
        let mc = MinerConfig::new(f64::from(tenth) / 10.0).unwrap();
        let fast = opminer(&db, &mc);
        let brute = bruteforce_mine(&db, &mc).unwrap();
        let literal = literal_join_mine(&db, &mc).unwrap();
        prop_assert_eq!(fast.len(), brute.len());
        prop_assert_eq!(fast.len(), literal.len());
        for ((a, b), c) in fast.iter().zip(&brute).zip(&literal) {
            prop_assert_eq!(a.pattern.item_ids(), b.pattern.item_ids());
            prop_assert_eq!(a.pattern.item_ids(), c.pattern.item_ids());
            prop_assert!((a.support - b.support).abs() < 1e-9);
        }
    }

    #[test]
    fn apriori_soundness_and_nesting(cfg in small_db_config(), lo in 1u32..=5, gap in 1u32..=4) {
        let db = generate(&cfg).unwrap();
        let (m1, m2) = (f64::from(lo) / 10.0, f64::from(lo + gap) / 10.0);
        let loose = opminer(&db, &MinerConfig::new(m1).unwrap());
        let tight = opminer(&db, &MinerConfig::new(m2).unwrap());
        let proj = db.pl_project();
        for mp in &loose {
            prop_assert!(mp.support >= m1);
            let items = mp.pattern.items();
            for skip in 0..items.len() {
                let sub: Vec<_> = items.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, it)| it.clone()).collect();
                prop_assert!(support(&Pattern::new(sub).unwrap(), &proj) >= m1);
            }
        }
        let loose_ids: Vec<Vec<usize>> = loose.iter().map(|m| m.pattern.item_ids()).collect();
        for mp in &tight {
            prop_assert!(loose_ids.contains(&mp.pattern.item_ids()));
        }
    }

    #[test]
    fn adding_an_item_never_raises_support(cfg in small_db_config(), pick in any::<u64>()) {
        let db = generate(&cfg).unwrap();
        let proj = db.pl_project();
        let items: Vec<Arc<Item>> = extract_items(&db).into_iter().map(Arc::new).collect();
        let mut p = Pattern::empty();
        let mut prev = support(&p, &proj);
        for (k, it) in items.iter().enumerate() {
            if pick >> (k % 64) & 1 == 0 {
                continue;
            }
            if let Some(next) = p.with_item(it.clone()) {
                let s = support(&next, &proj);
                prop_assert!(s <= prev + 1e-12);
                p = next;
                prev = s;
            }
        }
    }
}

#[test]
fn generated_databases_validate() {
    for seed in 0..1000 {
        let frame_size = 1 + (seed as usize % 5);
        let cfg = SynthConfig {
            rows: 5,
            attributes: 3,
            frame_size,
            max_focal: (1 + (seed as usize % 3)).min((1 << frame_size) - 1),
            p_certain: 0.3,
            seed,
        };
        let db = generate(&cfg).unwrap();
        assert!(db.validate().is_ok(), "seed {seed}");
    }
}
