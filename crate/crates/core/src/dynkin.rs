//! Simply-laced Dynkin diagrams with a fixed vertex labelling.
//!
//! Labels run over `1..=rank`:
//!
//! * `A_n`: the path `1 - 2 - ... - n`;
//! * `D_n`: the path `1 - ... - (n-2)` with `n-1` and `n` both attached to `n-2`;
//! * `E_n`: the path `1 - ... - (n-1)` with `n` attached to `3`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        })
    }
}

impl core::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            _ => Err(Error::Unrecognized(s.into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AutomorphismKind {
    Identity,
    Flip,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynkinDiagram {
    family: Family,
    rank: u32,
    edges: Vec<(u32, u32)>,
    adjacency: Vec<Vec<u32>>,
}

impl DynkinDiagram {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let valid = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !valid {
            return Err(Error::InvalidRank { family, rank });
        }

        let mut edges = Vec::with_capacity(rank as usize - 1);
        match family {
            Family::A => edges.extend((1..rank).map(|j| (j, j + 1))),
            Family::D => {
                edges.extend((1..rank - 2).map(|j| (j, j + 1)));
                edges.push((rank - 2, rank - 1));
                edges.push((rank - 2, rank));
            }
            Family::E => {
                edges.extend((1..rank - 1).map(|j| (j, j + 1)));
                edges.push((3, rank));
            }
        }
        edges.sort_unstable();

        let mut adjacency = alloc::vec![Vec::new(); rank as usize];
        for &(a, b) in &edges {
            adjacency[a as usize - 1].push(b);
            adjacency[b as usize - 1].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(DynkinDiagram {
            family,
            rank,
            edges,
            adjacency,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Edges as pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn vertices(&self) -> RangeInclusive<u32> {
        1..=self.rank
    }

    pub fn contains(&self, j: u32) -> bool {
        (1..=self.rank).contains(&j)
    }

    /// Neighbours of `j` in increasing label order.
    pub fn neighbors(&self, j: u32) -> &[u32] {
        &self.adjacency[j as usize - 1]
    }

    pub fn coxeter_number(&self) -> u32 {
        match (self.family, self.rank) {
            (Family::A, n) => n + 1,
            (Family::D, n) => 2 * n - 2,
            (Family::E, 6) => 12,
            (Family::E, 7) => 18,
            (Family::E, _) => 30,
        }
    }

    pub fn automorphism(&self, kind: AutomorphismKind) -> Result<DiagramAutomorphism> {
        let n = self.rank;
        let images = match (kind, self.family) {
            (AutomorphismKind::Identity, _) => self.vertices().collect(),
            (AutomorphismKind::Flip, Family::A) => self.vertices().map(|j| n + 1 - j).collect(),
            (AutomorphismKind::Flip, Family::D) => self
                .vertices()
                .map(|j| match j {
                    j if j == n - 1 => n,
                    j if j == n => n - 1,
                    j => j,
                })
                .collect(),
            (AutomorphismKind::Flip, Family::E) if n == 6 => alloc::vec![5, 4, 3, 2, 1, 6],
            (AutomorphismKind::Flip, Family::E) => {
                return Err(Error::NoSuchAutomorphism {
                    family: self.family,
                    rank: n,
                })
            }
        };
        Ok(DiagramAutomorphism { images })
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A permutation of the diagram labels, stored as `images[j - 1] = g(j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    images: Vec<u32>,
}

impl DiagramAutomorphism {
    pub fn identity(rank: u32) -> Self {
        DiagramAutomorphism {
            images: (1..=rank).collect(),
        }
    }

    /// Builds a permutation from its image list; `None` if it is not a
    /// permutation of `1..=len`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &j in &images {
            if j == 0 || j as usize > n || seen[j as usize - 1] {
                return None;
            }
            seen[j as usize - 1] = true;
        }
        Some(DiagramAutomorphism { images })
    }

    pub fn apply(&self, j: u32) -> u32 {
        self.images[j as usize - 1]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, &j)| j as usize == k + 1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiagramAutomorphism) -> DiagramAutomorphism {
        DiagramAutomorphism {
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn inverse(&self) -> DiagramAutomorphism {
        let mut images = alloc::vec![0; self.images.len()];
        for (k, &j) in self.images.iter().enumerate() {
            images[j as usize - 1] = k as u32 + 1;
        }
        DiagramAutomorphism { images }
    }

    /// Order of the permutation (1 or 2 for every automorphism used here).
    pub fn order(&self) -> u32 {
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = self.compose(&power);
            k += 1;
        }
        k
    }

    pub fn maps_edges_to_edges(&self, d: &DynkinDiagram) -> bool {
        d.edges().iter().all(|&(a, b)| {
            let (x, y) = (self.apply(a), self.apply(b));
            d.neighbors(x).contains(&y)
        })
    }
}
