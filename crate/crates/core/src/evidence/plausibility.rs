use std::sync::Arc;

use super::{FrameOfDiscernment, MassFunction, SubsetMask, EPS_PL};
use crate::error::{Error, Result};

/// Dense plausibility over every nonempty subset; entry `mask - 1` holds `Pl(mask)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlausibilityVector {
    frame: Arc<FrameOfDiscernment>,
    values: Vec<f64>,
}

impl PlausibilityVector {
    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, mask: SubsetMask) -> f64 {
        self.values[mask.bits() as usize - 1]
    }

    /// Pointwise `self <= other` within [`EPS_PL`]. Frames must already match.
    pub fn dominated_by(&self, other: &PlausibilityVector) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| *a <= *b + EPS_PL)
    }

    /// Entrywise equality within [`EPS_PL`].
    pub fn approx_eq(&self, other: &PlausibilityVector) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| (a - b).abs() <= EPS_PL)
    }
}

/// Plausibility of every nonempty subset.
///
/// Uses `Pl(A) = Σm − Bel(Θ \ A)`; the belief table comes from a subset-sum
/// (zeta) transform over the dense powerset, or from a direct scan of the
/// focal sets when there are fewer focal sets than frame elements.
pub fn plausibility(m: &MassFunction) -> PlausibilityVector {
    let frame = m.frame().clone();
    let n = frame.len();
    let size = 1usize << n;
    let full = size - 1;
    let focal = m.focal();

    let values = if focal.len() < n {
        (1..size)
            .map(|a| {
                focal
                    .iter()
                    .filter(|(b, _)| b.bits() as usize & a != 0)
                    .map(|(_, v)| v)
                    .sum()
            })
            .collect()
    } else {
        let mut bel = vec![0.0f64; size];
        for &(mask, v) in focal {
            bel[mask.bits() as usize] += v;
        }
        for bit in 0..n {
            let step = 1usize << bit;
            for mask in 0..size {
                if mask & step != 0 {
                    bel[mask] += bel[mask ^ step];
                }
            }
        }
        let total = bel[full];
        (1..size).map(|a| total - bel[full ^ a]).collect()
    };
    PlausibilityVector { frame, values }
}

fn same_frame(a: &FrameOfDiscernment, b: &FrameOfDiscernment) -> Result<()> {
    if std::ptr::eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::FrameMismatch(format!("{a} vs {b}")))
    }
}

/// `m1 ⊑pl m2`: `m1` is at least as committed as `m2`.
pub fn pl_leq(m1: &MassFunction, m2: &MassFunction) -> Result<bool> {
    same_frame(m1.frame(), m2.frame())?;
    Ok(plausibility(m1).dominated_by(&plausibility(m2)))
}

/// Commitment score of a pattern BBA against a row BBA, in `[0, 1]`.
///
/// Zero unless the row's plausibility dominates the pattern's pointwise;
/// otherwise one minus the L2 distance between the two plausibility vectors,
/// clamped at zero.
pub fn commitment(pattern: &MassFunction, row: &MassFunction) -> Result<f64> {
    same_frame(pattern.frame(), row.frame())?;
    Ok(commitment_pl(&plausibility(pattern), &plausibility(row)))
}

/// [`commitment`] on precomputed plausibility vectors of the same frame.
#[inline]
pub fn commitment_pl(pattern: &PlausibilityVector, row: &PlausibilityVector) -> f64 {
    debug_assert_eq!(pattern.values.len(), row.values.len());
    let mut sq = 0.0;
    for (p, r) in pattern.values.iter().zip(&row.values) {
        if *p > *r + EPS_PL {
            return 0.0;
        }
        let d = r - p;
        sq += d * d;
    }
    (1.0 - sq.sqrt()).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evidence::{certain_bba, make_bba, vacuous_bba};

    fn gab() -> Arc<FrameOfDiscernment> {
        FrameOfDiscernment::shared(["G", "A", "B"]).unwrap()
    }

    fn bba(f: &Arc<FrameOfDiscernment>, parts: &[(&[&str], f64)]) -> MassFunction {
        make_bba(
            f.clone(),
            parts
                .iter()
                .map(|(names, v)| (f.subset(names).unwrap(), *v)),
        )
        .unwrap()
    }

    const THETA: &[&str] = &["G", "A", "B"];

    // Mask order: {G}, {A}, {G,A}, {B}, {G,B}, {A,B}, Θ.
    fn by_mask(g: f64, a: f64, b: f64, ga: f64, gb: f64, ab: f64, t: f64) -> Vec<f64> {
        vec![g, a, ga, b, gb, ab, t]
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn treatment_plausibilities() {
        let f = gab();
        let m11 = bba(&f, &[(&["G"], 0.7), (THETA, 0.3)]);
        let pl = plausibility(&m11);
        assert!(close(
            pl.values(),
            &by_mask(1.0, 0.3, 0.3, 1.0, 1.0, 0.3, 1.0)
        ));

        let m12 = bba(&f, &[(&["G"], 0.4), (&["A"], 0.2), (THETA, 0.4)]);
        let pl = plausibility(&m12);
        assert!(close(
            pl.values(),
            &by_mask(0.8, 0.6, 0.4, 1.0, 0.8, 0.6, 1.0)
        ));
    }

    #[test]
    fn certain_and_vacuous_plausibility() {
        let f = gab();
        let pl = plausibility(&certain_bba(f.clone(), "G").unwrap());
        for a in 1..8u32 {
            let want = if a & 1 != 0 { 1.0 } else { 0.0 };
            assert_eq!(pl.get(SubsetMask(a)), want);
        }
        let pl = plausibility(&vacuous_bba(f));
        assert!(pl.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        let f = gab();
        // three focal sets on a 3-frame takes the zeta path, two take the scan
        let m = bba(&f, &[(&["G"], 0.2), (&["A", "B"], 0.5), (THETA, 0.3)]);
        let zeta = plausibility(&m);
        for a in 1..8u32 {
            let direct: f64 = m
                .focal()
                .iter()
                .filter(|(b, _)| b.bits() & a != 0)
                .map(|(_, v)| v)
                .sum();
            assert!((zeta.get(SubsetMask(a)) - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn pl_ordering_examples() {
        let f = gab();
        let m11 = bba(&f, &[(&["G"], 0.7), (THETA, 0.3)]);
        let m21 = bba(&f, &[(&["G"], 0.6), (THETA, 0.4)]);
        assert!(pl_leq(&m11, &m21).unwrap());
        assert!(!pl_leq(&m21, &m11).unwrap());
        let g = certain_bba(f.clone(), "G").unwrap();
        let a = certain_bba(f.clone(), "A").unwrap();
        assert!(pl_leq(&g, &vacuous_bba(f)).unwrap());
        assert!(!pl_leq(&g, &a).unwrap());
        assert!(!pl_leq(&a, &g).unwrap());
        let other = FrameOfDiscernment::shared(["x", "y"]).unwrap();
        assert!(matches!(
            pl_leq(&g, &vacuous_bba(other)),
            Err(Error::FrameMismatch(_))
        ));
    }

    #[test]
    fn commitment_examples() {
        let f = gab();
        let m11 = bba(&f, &[(&["G"], 0.7), (THETA, 0.3)]);
        let m21 = bba(&f, &[(&["G"], 0.6), (THETA, 0.4)]);
        let c = commitment(&m11, &m21).unwrap();
        assert!((c - (1.0 - 0.03f64.sqrt())).abs() < 1e-12);
        assert!((c - 0.826795).abs() < 1e-6);
        assert_eq!(commitment(&m11, &m11).unwrap(), 1.0);
        assert_eq!(commitment(&m21, &m11).unwrap(), 0.0);

        let g = certain_bba(f.clone(), "G").unwrap();
        assert_eq!(commitment(&g, &vacuous_bba(f)).unwrap(), 0.0);
    }
}
