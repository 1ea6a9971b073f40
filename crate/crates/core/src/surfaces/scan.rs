//! Grids of fibre cardinalities over a box in `H`.

use rayon::prelude::*;
use serde::Serialize;

use super::{fiber_cardinality, FiberReport, HomoPoly};
use crate::error::{Error, Result};
use crate::qcore::Quaternion;

/// Largest grid accepted by [`discriminant_scan`].
pub const MAX_SCAN_CELLS: usize = 64 * 64 * 64 * 64;

/// Axis-aligned box `lo[k] <= q_k <= hi[k]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanBox {
    pub lo: [f64; 4],
    pub hi: [f64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiberFlag {
    ContainedFiber,
    Tangency,
    Generic,
}

impl FiberFlag {
    pub fn name(self) -> &'static str {
        match self {
            FiberFlag::ContainedFiber => "contained-fiber",
            FiberFlag::Tangency => "tangency",
            FiberFlag::Generic => "generic",
        }
    }

    fn of(r: &FiberReport) -> FiberFlag {
        if r.contained {
            FiberFlag::ContainedFiber
        } else if r.tangent() {
            FiberFlag::Tangency
        } else {
            FiberFlag::Generic
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanCell {
    pub q: Quaternion,
    pub fiber: FiberReport,
    pub flag: FiberFlag,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminantReport {
    pub degree: u32,
    pub region: ScanBox,
    pub resolution: [usize; 4],
    pub cells: Vec<ScanCell>,
}

impl DiscriminantReport {
    pub fn count(&self, flag: FiberFlag) -> usize {
        self.cells.iter().filter(|c| c.flag == flag).count()
    }

    /// `q0,q1,q2,q3,count,flags`, one row per cell in grid order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q0,q1,q2,q3,count,flags\n");
        for c in &self.cells {
            let q = c.q.to_array();
            out.push_str(&format!("{},{},{},{},{},{}\n", q[0], q[1], q[2], q[3], c.fiber.count, c.flag.name()));
        }
        out
    }
}

fn axis(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
    if n == 1 {
        lo
    } else {
        lo + (hi - lo) * k as f64 / (n - 1) as f64
    }
}

/// Fibre cardinalities on a `res[0] x .. x res[3]` grid including the box
/// corners. Cells are computed in parallel and returned in row-major order
/// with `q3` varying fastest.
pub fn discriminant_scan(p: &HomoPoly, region: ScanBox, res: [usize; 4]) -> Result<DiscriminantReport> {
    let total = res.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n)).unwrap_or(usize::MAX);
    if total > MAX_SCAN_CELLS {
        return Err(Error::TooLarge { requested: total, limit: MAX_SCAN_CELLS });
    }
    if res.contains(&0) {
        return Err(Error::Invalid("resolution must be positive on every axis".into()));
    }
    let cells = (0..total)
        .into_par_iter()
        .map(|idx| {
            let mut rest = idx;
            let mut q = [0.0; 4];
            for k in (0..4).rev() {
                q[k] = axis(region.lo[k], region.hi[k], res[k], rest % res[k]);
                rest /= res[k];
            }
            let q = Quaternion::new(q[0], q[1], q[2], q[3]);
            let fiber = fiber_cardinality(p, q);
            let flag = FiberFlag::of(&fiber);
            ScanCell { q, fiber, flag }
        })
        .collect();
    Ok(DiscriminantReport { degree: p.degree(), region, resolution: res, cells })
}
