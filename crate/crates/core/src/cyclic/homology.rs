//! Hochschild, cyclic and periodic cyclic homology from the cached complexes.

use serde::Serialize;

use super::bicomplex::CyclicComplexes;
use crate::error::{Error, Result};
use crate::exactlin::complex::induced_rank;
use crate::exactlin::{dense, SparseMatrix};
use crate::scalar::Q;

/// One computed homology dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub theory: String,
    pub degree: i64,
    pub dim: usize,
}

/// Periodic cyclic homology as the limit of `HC_{parity + 2j}` along `S`.
///
/// `base_ranks[t]` is the rank of `S^t : HC_{parity+2t} → HC_parity` and
/// `image_ranks[j]` the rank of `S^{L−j}` from the top level into level `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicReport {
    pub parity: i64,
    pub levels: Vec<i64>,
    pub base_ranks: Vec<usize>,
    pub image_ranks: Vec<usize>,
    pub stable_from: Option<usize>,
    pub dim: Option<usize>,
}

impl PeriodicReport {
    pub fn stabilized(&self) -> bool {
        self.dim.is_some()
    }

    /// Number of `S` steps from the top level to level 0.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Ranks around one piece of the SBI sequence, all maps on homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SbiNode {
    pub node: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

/// `dim C_n − rank d_n − rank d_{n+1}` with the bookkeeping checked.
fn homology(dim: usize, r_out: usize, r_in: usize, what: &str) -> Result<usize> {
    dim.checked_sub(r_out + r_in).ok_or_else(|| {
        Error::Invariant(format!(
            "{what}: ranks exceed dimension (complex not square-zero?)"
        ))
    })
}

fn power(maps: &[std::sync::Arc<SparseMatrix>], cols: usize) -> SparseMatrix {
    let mut acc = SparseMatrix::identity(cols);
    for m in maps {
        acc = m.mul(&acc);
    }
    acc
}

impl CyclicComplexes {
    fn check(&self, n: i64) -> Result<()> {
        self.window().check_homological(n)
    }

    pub fn hh_dim(&self, n: i64) -> Result<usize> {
        self.check(n)?;
        if n < 0 {
            return Ok(0);
        }
        homology(
            self.piece(n)?.len(),
            self.b_rank(n)?,
            self.b_rank(n + 1)?,
            "HH",
        )
    }

    /// `HC_n` from the first-quadrant total complex.
    pub fn hc_dim(&self, n: i64) -> Result<usize> {
        self.check(n)?;
        if n < 0 {
            return Ok(0);
        }
        homology(
            self.tot_dim(n)?,
            self.tot_rank(n)?,
            self.tot_rank(n + 1)?,
            "HC",
        )
    }

    /// `HC_n` from the λ-complex `C_n / Im(1 − λ)`.
    pub fn hc_lambda_dim(&self, n: i64) -> Result<usize> {
        self.check(n)?;
        if n < 0 {
            return Ok(0);
        }
        let coinv = |k: i64| -> Result<usize> {
            Ok(self.piece(k)?.len() - self.one_minus_lambda(k)?.rank())
        };
        let bar_rank = |k: i64| -> Result<usize> {
            if k <= 0 {
                return Ok(0);
            }
            let oml = self.one_minus_lambda(k - 1)?;
            let stacked = self.b(k)?.hstack(&oml);
            Ok(stacked.rank() - oml.rank())
        };
        homology(coinv(n)?, bar_rank(n)?, bar_rank(n + 1)?, "HC lambda")
    }

    /// `HC_n` from the normalized `(b, B)` bicomplex. Needs a unit.
    pub fn hc_bb_dim(&self, n: i64) -> Result<usize> {
        self.check(n)?;
        if n < 0 {
            return Ok(0);
        }
        homology(
            self.bb_dim(n)?,
            self.bb_rank(n)?,
            self.bb_rank(n + 1)?,
            "HC (b,B)",
        )
    }

    /// `dim HC^k`, from the transposed total complex.
    pub fn hc_cohomology_dim(&self, k: i64) -> Result<usize> {
        self.check(k)?;
        if k < 0 {
            return Ok(0);
        }
        let out = self.tot(k + 1)?.transpose().rank();
        let inn = self.tot(k)?.transpose().rank();
        homology(self.tot_dim(k)?, out, inn, "HC^k")
    }

    /// Rank of `S : HC_n → HC_{n−2}`.
    pub fn s_rank(&self, n: i64) -> Result<usize> {
        self.check(n)?;
        if n < 2 {
            return Ok(0);
        }
        induced_rank(&*self.tot(n)?, &*self.s_map(n)?, &*self.tot(n - 1)?)
    }

    /// Rank of `I : HH_n → HC_n`.
    pub fn i_rank(&self, n: i64) -> Result<usize> {
        self.check(n)?;
        if n < 0 {
            return Ok(0);
        }
        induced_rank(&*self.b(n)?, &self.inclusion(n)?, &*self.tot(n + 1)?)
    }

    /// Composite `S^t : Tot_n → Tot_{n−2t}`.
    pub fn s_power(&self, n: i64, t: usize) -> Result<SparseMatrix> {
        let maps = (0..t)
            .map(|i| self.s_map(n - 2 * i as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok(power(&maps, self.tot_dim(n)?))
    }

    /// Rank of `S^t : HC_n → HC_{n−2t}`.
    pub fn s_power_rank(&self, n: i64, t: usize) -> Result<usize> {
        self.check(n)?;
        let tgt = n - 2 * t as i64;
        if tgt < 0 {
            return Ok(0);
        }
        induced_rank(&*self.tot(n)?, &self.s_power(n, t)?, &*self.tot(tgt + 1)?)
    }

    /// Explicit connecting map `HC_{n−2} → HH_{n−1}` of the SBI sequence:
    /// lift a cycle two columns to the right, apply the total differential,
    /// and move the result into the Hochschild column with the contraction `s`.
    /// Returns representatives of the images in `C_{n−1}`.
    pub fn connecting_images(&self, n: i64) -> Result<Vec<Vec<Q>>> {
        let src_deg = n - 2;
        if src_deg < 0 {
            return Ok(Vec::new());
        }
        let d = self.tot(src_deg)?;
        let cycles = dense::kernel(&d.to_dense(), d.cols());
        let layout = self.tot_layout(n)?;
        let shift = layout[0] + layout[1];
        let tot_n = self.tot(n)?;
        let c0 = self.piece(n - 1)?.len();
        let c1 = self.piece(n - 2)?.len();
        let oml = self.one_minus_lambda(n - 1)?;
        let contraction = if self.algebra().unit().is_some() {
            Some(self.contraction(n - 2)?)
        } else {
            None
        };
        let bp = self.b_prime(n - 1)?;
        let mut images = Vec::with_capacity(cycles.len());
        for z in cycles {
            let mut lifted = vec![Q::from_integer(0.into()); tot_n.cols()];
            lifted[shift..shift + z.len()].clone_from_slice(&z);
            let dz = tot_n.apply(&lifted);
            let (x0, rest) = dz.split_at(c0);
            let x1 = &rest[..c1];
            if rest[c1..].iter().any(|v| *v != Q::from_integer(0.into())) {
                return Err(Error::Invariant(
                    "lifted cycle leaves columns 0 and 1".into(),
                ));
            }
            let y = match &contraction {
                Some(s) => s.apply(x1),
                None => dense::solve(&bp.to_dense(), bp.cols(), x1).ok_or_else(|| {
                    Error::Invariant("b' column not acyclic; SBI needs a unit".into())
                })?,
            };
            let corr = oml.apply(&y);
            images.push(x0.iter().zip(&corr).map(|(a, b)| a + b).collect());
        }
        Ok(images)
    }

    /// Rank of the connecting map `HC_{n−2} → HH_{n−1}`.
    pub fn connecting_rank(&self, n: i64) -> Result<usize> {
        self.check(n - 1)?;
        let images = self.connecting_images(n)?;
        let b = self.b(n)?;
        let rows = b.rows();
        let cols: Vec<Vec<(usize, Q)>> = images
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| **x != Q::from_integer(0.into()))
                    .map(|(i, x)| (i, x.clone()))
                    .collect()
            })
            .collect();
        let img = SparseMatrix::from_columns(rows, cols);
        let bc = self.b(n - 1)?;
        if !bc.mul(&img).is_zero() {
            return Err(Error::Invariant(
                "connecting map image is not a Hochschild cycle".into(),
            ));
        }
        Ok(b.hstack(&img).rank() - self.b_rank(n)?)
    }

    /// Rank exactness of `HH_n → HC_n → HC_{n−2} → HH_{n−1}` at each node,
    /// for `n` up to `max_n`.
    pub fn sbi_check(&self, max_n: i64) -> Result<Vec<SbiNode>> {
        let mut nodes = Vec::new();
        for n in 0..=max_n {
            let hh = self.hh_dim(n)?;
            let hc = self.hc_dim(n)?;
            let i_n = self.i_rank(n)?;
            let s_n = self.s_rank(n)?;
            let b_into_hh = self.connecting_rank(n + 1)?;
            nodes.push(SbiNode {
                node: format!("HH_{n}"),
                dim: hh,
                rank_in: b_into_hh,
                rank_out: i_n,
                exact: hh - i_n == b_into_hh,
            });
            nodes.push(SbiNode {
                node: format!("HC_{n}"),
                dim: hc,
                rank_in: i_n,
                rank_out: s_n,
                exact: hc - s_n == i_n,
            });
            if n >= 2 {
                let hc2 = self.hc_dim(n - 2)?;
                let b_out = self.connecting_rank(n)?;
                nodes.push(SbiNode {
                    node: format!("HC_{} (via S from HC_{n})", n - 2),
                    dim: hc2,
                    rank_in: s_n,
                    rank_out: b_out,
                    exact: hc2 - b_out == s_n,
                });
            }
        }
        Ok(nodes)
    }

    /// Periodic homology of the given parity from the `S`-ladder inside the
    /// reliable range. Needs at least two `S` steps; `dim` is `None` if the
    /// ladder has not settled.
    pub fn hp(&self, parity: i64) -> Result<PeriodicReport> {
        self.hp_with_depth(parity, None)
    }

    /// As [`Self::hp`], capping the number of `S` steps.
    pub fn hp_with_depth(&self, parity: i64, max_steps: Option<usize>) -> Result<PeriodicReport> {
        let parity = parity.rem_euclid(2);
        let bound = self.window().reliable_bound();
        let mut levels: Vec<i64> = (0..)
            .map(|j| parity + 2 * j)
            .take_while(|&n| n <= bound)
            .collect();
        if let Some(k) = max_steps {
            levels.truncate(k + 1);
        }
        if levels.len() < 3 {
            return Err(Error::WindowExceeded(format!(
                "HP{parity} needs three ladder levels within the reliable bound {bound}"
            )));
        }
        let top = levels.len() - 1;
        let base_ranks = (0..=top)
            .map(|t| self.s_power_rank(levels[t], t))
            .collect::<Result<Vec<_>>>()?;
        let image_ranks = (0..=top)
            .map(|j| self.s_power_rank(levels[top], top - j))
            .collect::<Result<Vec<_>>>()?;
        let last = base_ranks[top];
        let stable_from = (1..=top).find(|&t| base_ranks[t..].iter().all(|&r| r == last));
        let settled = stable_from.is_some_and(|t| t < top) && image_ranks[1] == image_ranks[0];
        Ok(PeriodicReport {
            parity,
            levels,
            base_ranks,
            image_ranks,
            stable_from,
            dim: settled.then_some(last),
        })
    }

    /// Rank on `HP` of a chain map `φ` given at the base level: the rank of
    /// `φ ∘ S^L : HC_{top} → HC'_{base + k}`, where `phi_at_base` maps
    /// `Tot_base → Tot'_{base+k}` and `target` hosts the image.
    pub fn hp_map_rank(
        &self,
        report: &PeriodicReport,
        phi_at_base: &SparseMatrix,
        target: &CyclicComplexes,
        k: i64,
    ) -> Result<usize> {
        let top = *report.levels.last().expect("nonempty ladder");
        let steps = report.depth();
        let composite = phi_at_base.mul(&self.s_power(top, steps)?);
        let base = report.levels[0];
        induced_rank(&*self.tot(top)?, &composite, &*target.tot(base + k + 1)?)
    }
}
