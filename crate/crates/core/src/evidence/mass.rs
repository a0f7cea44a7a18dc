use std::fmt;
use std::sync::Arc;

use super::{FrameOfDiscernment, SubsetMask, EPS_MASS};
use crate::error::{Error, Result};

/// A normalized basic belief assignment over one frame.
///
/// Focal sets are stored sparsely, sorted by mask, with strictly positive
/// masses summing to one within [`EPS_MASS`]. The empty set never appears.
#[derive(Clone, PartialEq)]
pub struct MassFunction {
    frame: Arc<FrameOfDiscernment>,
    focal: Vec<(SubsetMask, f64)>,
}

impl MassFunction {
    /// Validating constructor. Duplicate masks are summed and zero masses dropped.
    pub fn new(
        frame: Arc<FrameOfDiscernment>,
        assignments: impl IntoIterator<Item = (SubsetMask, f64)>,
    ) -> Result<Self> {
        let mut focal: Vec<(SubsetMask, f64)> = Vec::new();
        for (mask, mass) in assignments {
            if !frame.contains_mask(mask) {
                return Err(Error::FrameMismatch(format!(
                    "mask {:#b} lies outside {frame}",
                    mask.bits()
                )));
            }
            if !mass.is_finite() || mass < 0.0 {
                return Err(Error::Range(format!(
                    "mass {mass} is not a finite non-negative number"
                )));
            }
            if mass == 0.0 {
                continue;
            }
            if mask.is_empty() {
                return Err(Error::EmptyFocal { mass });
            }
            match focal.iter_mut().find(|(m, _)| *m == mask) {
                Some(entry) => entry.1 += mass,
                None => focal.push((mask, mass)),
            }
        }
        let sum: f64 = focal.iter().map(|(_, m)| m).sum();
        if (sum - 1.0).abs() > EPS_MASS {
            return Err(Error::MassSum {
                sum,
                tolerance: EPS_MASS,
            });
        }
        focal.sort_by_key(|(m, _)| *m);
        Ok(MassFunction { frame, focal })
    }

    /// Stores the assignments without any checks (sorted by mask only).
    ///
    /// Used by loaders that collect every violation through
    /// [`MassFunction::violations`] instead of stopping at the first one.
    pub fn new_unchecked(
        frame: Arc<FrameOfDiscernment>,
        assignments: impl IntoIterator<Item = (SubsetMask, f64)>,
    ) -> Self {
        let mut focal: Vec<_> = assignments.into_iter().collect();
        focal.sort_by_key(|(m, _)| *m);
        MassFunction { frame, focal }
    }

    /// `m({element}) = 1`.
    pub fn certain(frame: Arc<FrameOfDiscernment>, element: &str) -> Result<Self> {
        let mask = frame.singleton(element)?;
        Ok(MassFunction {
            frame,
            focal: vec![(mask, 1.0)],
        })
    }

    /// `m(Θ) = 1`, total ignorance.
    pub fn vacuous(frame: Arc<FrameOfDiscernment>) -> Self {
        let full = frame.full();
        MassFunction {
            frame,
            focal: vec![(full, 1.0)],
        }
    }

    pub fn frame(&self) -> &Arc<FrameOfDiscernment> {
        &self.frame
    }

    pub fn focal(&self) -> &[(SubsetMask, f64)] {
        &self.focal
    }

    pub fn mass(&self, mask: SubsetMask) -> f64 {
        self.focal
            .binary_search_by_key(&mask, |(m, _)| *m)
            .map(|i| self.focal[i].1)
            .unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.focal.iter().map(|(_, m)| m).sum()
    }

    pub fn is_vacuous(&self) -> bool {
        self.focal.len() == 1 && self.focal[0].0 == self.frame.full()
    }

    /// A single singleton focal set.
    pub fn is_certain(&self) -> bool {
        self.focal.len() == 1 && self.focal[0].0.len() == 1
    }

    /// At most two focal sets, and `Θ` is one of them when there are two.
    pub fn is_simple(&self) -> bool {
        match self.focal.len() {
            1 => true,
            2 => self.focal.iter().any(|(m, _)| *m == self.frame.full()),
            _ => false,
        }
    }

    /// Every broken invariant, as human-readable messages. Empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, (mask, mass)) in self.focal.iter().enumerate() {
            if !self.frame.contains_mask(*mask) {
                out.push(format!(
                    "focal mask {:#b} references an element index >= {}",
                    mask.bits(),
                    self.frame.len()
                ));
            }
            if mask.is_empty() && *mass != 0.0 {
                out.push(format!("empty set carries mass {mass}"));
            }
            if !mass.is_finite() || *mass <= 0.0 {
                out.push(format!(
                    "focal set {:#b} has non-positive mass {mass}",
                    mask.bits()
                ));
            }
            if i > 0 && self.focal[i - 1].0 == *mask {
                out.push(format!("focal set {:#b} listed twice", mask.bits()));
            }
        }
        let sum = self.total_mass();
        if sum.is_nan() || (sum - 1.0).abs() > EPS_MASS {
            out.push(format!("masses sum to {sum}, expected 1"));
        }
        out
    }

    /// Classical discounting with reliability factor `alpha`: a fraction
    /// `alpha` of every mass moves to `Θ`.
    pub fn discount(&self, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::Range(format!(
                "discount factor {alpha} not in [0, 1]"
            )));
        }
        let full = self.frame.full();
        let keep = 1.0 - alpha;
        let mut focal: Vec<(SubsetMask, f64)> = self
            .focal
            .iter()
            .filter(|(m, _)| *m != full)
            .map(|&(m, v)| (m, keep * v))
            .filter(|&(_, v)| v > 0.0)
            .collect();
        let on_theta = keep * self.mass(full) + alpha;
        if on_theta > 0.0 {
            focal.push((full, on_theta));
        }
        focal.sort_by_key(|(m, _)| *m);
        Ok(MassFunction {
            frame: self.frame.clone(),
            focal,
        })
    }

    /// Pignistic probability: each focal mass split evenly among its elements.
    /// Indexed by frame element.
    pub fn pignistic(&self) -> Vec<f64> {
        let mut betp = vec![0.0; self.frame.len()];
        for &(mask, mass) in &self.focal {
            let share = mass / f64::from(mask.len());
            for i in mask.elements() {
                betp[i] += share;
            }
        }
        betp
    }
}

impl fmt::Debug for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &(mask, mass)) in self.focal.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if mask == self.frame.full() {
                write!(f, "Θ:{mass}")?;
            } else {
                write!(f, "{}:{mass}", self.frame.names(mask).join("|"))?;
            }
        }
        f.write_str("}")
    }
}

/// Free-function form of [`MassFunction::new`].
pub fn make_bba(
    frame: Arc<FrameOfDiscernment>,
    assignments: impl IntoIterator<Item = (SubsetMask, f64)>,
) -> Result<MassFunction> {
    MassFunction::new(frame, assignments)
}

pub fn certain_bba(frame: Arc<FrameOfDiscernment>, element: &str) -> Result<MassFunction> {
    MassFunction::certain(frame, element)
}

pub fn vacuous_bba(frame: Arc<FrameOfDiscernment>) -> MassFunction {
    MassFunction::vacuous(frame)
}

pub fn discount(m: &MassFunction, alpha: f64) -> Result<MassFunction> {
    m.discount(alpha)
}

pub fn pignistic(m: &MassFunction) -> Vec<f64> {
    m.pignistic()
}
