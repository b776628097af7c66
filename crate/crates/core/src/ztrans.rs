//! The stable translation quiver `ZΔ` and its affine automorphisms.
//!
//! `Δ` is oriented with every edge pointing toward the higher label. For an
//! edge `j - j'` with `j < j'` the quiver `ZΔ` has arrows
//! `(i, j) -> (i, j')` and `(i, j') -> (i + 1, j)`, and `τ(i, j) = (i - 1, j)`.

use alloc::vec::Vec;
use core::fmt;

use crate::dynkin::{AutomorphismKind, DiagramAutomorphism, DynkinDiagram, Family};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZVertex {
    pub i: i64,
    pub j: u32,
}

impl ZVertex {
    pub const fn new(i: i64, j: u32) -> Self {
        ZVertex { i, j }
    }
}

impl fmt::Display for ZVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Targets of the arrows leaving `v`, sorted.
pub fn arrows_out(d: &DynkinDiagram, v: ZVertex) -> Vec<ZVertex> {
    let mut out: Vec<ZVertex> = d
        .neighbors(v.j)
        .iter()
        .map(|&k| {
            if k > v.j {
                ZVertex::new(v.i, k)
            } else {
                ZVertex::new(v.i + 1, k)
            }
        })
        .collect();
    out.sort_unstable();
    out
}

/// Sources of the arrows entering `v`, sorted.
pub fn arrows_in(d: &DynkinDiagram, v: ZVertex) -> Vec<ZVertex> {
    let mut inn: Vec<ZVertex> = d
        .neighbors(v.j)
        .iter()
        .map(|&k| {
            if k < v.j {
                ZVertex::new(v.i, k)
            } else {
                ZVertex::new(v.i - 1, k)
            }
        })
        .collect();
    inn.sort_unstable();
    inn
}

pub fn is_arrow(d: &DynkinDiagram, from: ZVertex, to: ZVertex) -> bool {
    d.neighbors(from.j).contains(&to.j)
        && if to.j > from.j {
            to.i == from.i
        } else {
            to.i == from.i + 1
        }
}

pub fn tau(v: ZVertex) -> ZVertex {
    ZVertex::new(v.i - 1, v.j)
}

pub fn tau_inverse(v: ZVertex) -> ZVertex {
    ZVertex::new(v.i + 1, v.j)
}

/// An automorphism `(i, j) ↦ (i + s(j), g(j))` of `ZΔ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineAutomorphism {
    family: Family,
    rank: u32,
    g: DiagramAutomorphism,
    shifts: Vec<i64>,
}

impl AffineAutomorphism {
    /// Assembles an automorphism from its diagram part and per-row shifts.
    /// Fails if the map does not send arrows of `ZΔ` to arrows.
    pub fn new(d: &DynkinDiagram, g: DiagramAutomorphism, shifts: Vec<i64>) -> Result<Self> {
        if g.images().len() != d.rank() as usize || shifts.len() != d.rank() as usize {
            return Err(Error::DiagramMismatch);
        }
        let f = AffineAutomorphism {
            family: d.family(),
            rank: d.rank(),
            g,
            shifts,
        };
        if !f.preserves_arrows(d) {
            return Err(Error::InvalidQuiver(
                "map does not preserve the arrows of ZΔ".into(),
            ));
        }
        Ok(f)
    }

    /// `τ^{-k}`; `k = 1` is `τ^{-1}` and `k = -1` is `τ`.
    pub fn translation(d: &DynkinDiagram, k: i64) -> Self {
        AffineAutomorphism {
            family: d.family(),
            rank: d.rank(),
            g: DiagramAutomorphism::identity(d.rank()),
            shifts: alloc::vec![k; d.rank() as usize],
        }
    }

    pub fn identity(d: &DynkinDiagram) -> Self {
        Self::translation(d, 0)
    }

    pub fn tau(d: &DynkinDiagram) -> Self {
        Self::translation(d, -1)
    }

    pub fn tau_inverse(d: &DynkinDiagram) -> Self {
        Self::translation(d, 1)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn diagram_part(&self) -> &DiagramAutomorphism {
        &self.g
    }

    pub fn shift(&self, j: u32) -> i64 {
        self.shifts[j as usize - 1]
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    pub fn min_shift(&self) -> i64 {
        self.shifts.iter().copied().min().unwrap_or(0)
    }

    pub fn max_shift(&self) -> i64 {
        self.shifts.iter().copied().max().unwrap_or(0)
    }

    pub fn apply(&self, v: ZVertex) -> ZVertex {
        ZVertex::new(v.i + self.shift(v.j), self.g.apply(v.j))
    }

    pub fn apply_inverse(&self, v: ZVertex) -> ZVertex {
        let j = self.g.inverse().apply(v.j);
        ZVertex::new(v.i - self.shift(j), j)
    }

    /// `Some(k)` if this is exactly `τ^{-k}`.
    pub fn as_translation(&self) -> Option<i64> {
        let k = *self.shifts.first()?;
        (self.g.is_identity() && self.shifts.iter().all(|&s| s == k)).then_some(k)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineAutomorphism) -> Result<AffineAutomorphism> {
        if self.family != other.family || self.rank != other.rank {
            return Err(Error::DiagramMismatch);
        }
        let shifts = (1..=self.rank)
            .map(|j| other.shift(j) + self.shift(other.g.apply(j)))
            .collect();
        Ok(AffineAutomorphism {
            family: self.family,
            rank: self.rank,
            g: self.g.compose(&other.g),
            shifts,
        })
    }

    pub fn inverse(&self) -> AffineAutomorphism {
        let g_inv = self.g.inverse();
        let shifts = (1..=self.rank)
            .map(|j| -self.shift(g_inv.apply(j)))
            .collect();
        AffineAutomorphism {
            family: self.family,
            rank: self.rank,
            g: g_inv,
            shifts,
        }
    }

    pub fn power(&self, k: u32) -> AffineAutomorphism {
        let mut acc = AffineAutomorphism {
            family: self.family,
            rank: self.rank,
            g: DiagramAutomorphism::identity(self.rank),
            shifts: alloc::vec![0; self.rank as usize],
        };
        for _ in 0..k {
            acc = self.compose(&acc).expect("same diagram");
        }
        acc
    }

    /// Checks on the column `i = 0`; enough because the map commutes with τ.
    pub fn preserves_arrows(&self, d: &DynkinDiagram) -> bool {
        if self.family != d.family() || self.rank != d.rank() {
            return false;
        }
        d.vertices().all(|j| {
            let v = ZVertex::new(0, j);
            let image = self.apply(v);
            let out = arrows_out(d, v);
            out.len() == d.neighbors(image.j).len()
                && out.iter().all(|&w| is_arrow(d, image, self.apply(w)))
        })
    }
}

/// The suspension of the derived category, acting on `ZΔ`.
///
/// For `A_n` and `E_6` the flip reverses the orientation of the arms, so the
/// shift depends on the row; the rows fixed by the flip move by `h/2`.
pub fn sigma(d: &DynkinDiagram) -> AffineAutomorphism {
    let n = d.rank();
    let (kind, shifts): (AutomorphismKind, Vec<i64>) = match (d.family(), n) {
        (Family::A, _) => (AutomorphismKind::Flip, (1..=n as i64).collect()),
        (Family::D, _) => {
            let kind = if n % 2 == 1 {
                AutomorphismKind::Flip
            } else {
                AutomorphismKind::Identity
            };
            (kind, alloc::vec![n as i64 - 1; n as usize])
        }
        (Family::E, 6) => (AutomorphismKind::Flip, alloc::vec![4, 5, 6, 7, 8, 6]),
        (Family::E, 7) => (AutomorphismKind::Identity, alloc::vec![9; 7]),
        (Family::E, _) => (AutomorphismKind::Identity, alloc::vec![15; 8]),
    };
    let g = d.automorphism(kind).expect("flip exists where used");
    AffineAutomorphism::new(d, g, shifts).expect("suspension preserves arrows")
}

/// `τ^{-1} Σ^u`, the automorphism whose orbit category is the
/// `u`-cluster category.
pub fn phi(d: &DynkinDiagram, u: u32) -> AffineAutomorphism {
    AffineAutomorphism::tau_inverse(d)
        .compose(&sigma(d).power(u))
        .expect("same diagram")
}

/// The Serre functor `S = Στ` on vertices.
pub fn serre(d: &DynkinDiagram, v: ZVertex) -> ZVertex {
    sigma(d).apply(tau(v))
}
