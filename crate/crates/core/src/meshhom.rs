//! Hom dimensions in mesh categories.
//!
//! Two independent routes:
//!
//! * [`hammock`] knits `y ↦ dim Hom(x, y)` on `ZΔ` column by column from the
//!   additive recursion of AR triangles; orbit quivers sum it over the
//!   covering group ([`hom_dim_orbit`], [`hom_matrix`]).
//! * the oracle presents the path category modulo the mesh ideal (and,
//!   optionally, modulo all paths through a killed vertex set) degree by
//!   degree with exact rational linear algebra. It needs no covering data and
//!   therefore also computes Homs of quotient categories.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::dynkin::DynkinDiagram;
use crate::error::{Error, Result};
use crate::linalg::{unit, Quotient, Rational, Subspace};
use crate::tquiver::TranslationQuiver;
use crate::ztrans::{self, ZVertex};

/// `y ↦ dim Hom(x, y)` in the mesh category of `ZΔ`, finitely supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammockFunction {
    base: ZVertex,
    values: BTreeMap<ZVertex, u64>,
}

impl HammockFunction {
    pub fn base(&self) -> ZVertex {
        self.base
    }

    pub fn value(&self, y: ZVertex) -> u64 {
        self.values.get(&y).copied().unwrap_or(0)
    }

    /// Vertices with nonzero value, in `(i, j)` order.
    pub fn support(&self) -> impl Iterator<Item = (ZVertex, u64)> + '_ {
        self.values.iter().map(|(&z, &v)| (z, v))
    }
}

/// Knits the hammock starting at `x`:
/// `f(m) = Σ_{w→m} f(w) − f(τm) + δ(m = x) + δ(m = Σx)`.
///
/// # Panics
///
/// If a value turns negative, which would mean the suspension formula is
/// inconsistent with the quiver.
pub fn hammock(d: &DynkinDiagram, x: ZVertex) -> HammockFunction {
    let rank = d.rank() as usize;
    let h = i64::from(d.coxeter_number());
    let sx = ztrans::sigma(d).apply(x);
    let last_needed = sx.i + h;
    let hard_stop = x.i + 4 * h + 4;

    let mut values = BTreeMap::new();
    let mut prev = alloc::vec![0i64; rank];
    let mut col = x.i;
    loop {
        let mut cur = alloc::vec![0i64; rank];
        for j in d.vertices() {
            let m = ZVertex::new(col, j);
            let mut f: i64 = d
                .neighbors(j)
                .iter()
                .map(|&k| {
                    if k < j {
                        cur[k as usize - 1]
                    } else {
                        prev[k as usize - 1]
                    }
                })
                .sum();
            f -= prev[j as usize - 1];
            f += i64::from(m == x) + i64::from(m == sx);
            assert!(f >= 0, "negative hammock value {f} at {m} from {x} on {d}");
            cur[j as usize - 1] = f;
            if f > 0 {
                values.insert(m, f as u64);
            }
        }
        let zero = cur.iter().all(|&f| f == 0);
        if zero && col > last_needed {
            break;
        }
        assert!(
            col < hard_stop,
            "hammock from {x} on {d} does not terminate"
        );
        prev = cur;
        col += 1;
    }
    HammockFunction { base: x, values }
}

/// `dim Hom(x̄, ȳ)` in the orbit category, `Σ_k dim Hom(x, φ^k y)`.
pub fn hom_dim_orbit(q: &TranslationQuiver, x: usize, y: usize) -> Result<u64> {
    Ok(hom_row(q, x)?[checked(q, y)?])
}

/// `dim Hom(x̄, −)` for every vertex of an orbit quiver.
pub fn hom_row(q: &TranslationQuiver, x: usize) -> Result<Vec<u64>> {
    let cover = q.covering().ok_or(Error::MissingCoveringData)?;
    let lift = q.label(checked(q, x)?).ok_or(Error::MissingCoveringData)?;
    let mut row = alloc::vec![0u64; q.len()];
    for (z, value) in hammock(cover.diagram(), lift).support() {
        let class = cover.class_of(z).expect("every vertex of ZΔ has an orbit");
        row[class] += value;
    }
    Ok(row)
}

fn checked(q: &TranslationQuiver, v: usize) -> Result<usize> {
    if v < q.len() {
        Ok(v)
    } else {
        Err(Error::UnknownVertex(v))
    }
}

/// Square matrix of Hom dimensions, indexed by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMatrix {
    entries: Vec<Vec<u64>>,
}

impl HomMatrix {
    pub fn from_rows(entries: Vec<Vec<u64>>) -> Self {
        HomMatrix { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.entries[x][y]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// The matrix with index `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> HomMatrix {
        let n = self.len();
        let mut entries = alloc::vec![alloc::vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                entries[perm[x]][perm[y]] = self.entries[x][y];
            }
        }
        HomMatrix { entries }
    }

    /// Principal submatrix on `keep` (in that order).
    pub fn restrict(&self, keep: &[usize]) -> HomMatrix {
        HomMatrix {
            entries: keep
                .iter()
                .map(|&x| keep.iter().map(|&y| self.entries[x][y]).collect())
                .collect(),
        }
    }
}

/// Hom matrix through the covering (hammock route).
pub fn hom_matrix(q: &TranslationQuiver) -> Result<HomMatrix> {
    if q.covering().is_none() {
        return Err(Error::MissingCoveringData);
    }
    let entries = (0..q.len()).map(|x| hom_row(q, x)).collect::<Result<_>>()?;
    Ok(HomMatrix { entries })
}

/// A finite quiver with a partial translation, seen as a mesh category.
struct MeshFrame {
    inn: Vec<Vec<usize>>,
    out: Vec<Vec<usize>>,
    tau: Vec<Option<usize>>,
    killed: Vec<bool>,
}

/// The degree-`L` part of `Hom(x, y)`: the space spanned by paths of length
/// `L`, presented as a quotient of `⊕_{w→y} V_{L-1}(x, w)`.
#[derive(Clone)]
struct Piece {
    quotient: Quotient,
    /// Offset of each in-neighbour's block in the free space.
    offsets: BTreeMap<usize, usize>,
}

impl MeshFrame {
    fn from_quiver(q: &TranslationQuiver, killed: &BTreeSet<usize>) -> Self {
        MeshFrame {
            inn: (0..q.len()).map(|v| q.arrows_in(v).to_vec()).collect(),
            out: (0..q.len()).map(|v| q.arrows_out(v).to_vec()).collect(),
            tau: (0..q.len()).map(|v| Some(q.tau(v))).collect(),
            killed: (0..q.len()).map(|v| killed.contains(&v)).collect(),
        }
    }

    fn len(&self) -> usize {
        self.inn.len()
    }

    /// `dim Hom(x, y)` for every `y`, summed over all path lengths.
    fn hom_from(&self, x: usize, max_len: usize) -> Result<Vec<u64>> {
        let n = self.len();
        let mut total = alloc::vec![0u64; n];
        if self.killed[x] {
            return Ok(total);
        }
        let mut older: Vec<Option<Piece>> = alloc::vec![None; n];
        let mut current: Vec<Option<Piece>> = alloc::vec![None; n];
        current[x] = Some(Piece {
            quotient: Quotient::free(1),
            offsets: BTreeMap::new(),
        });
        total[x] = 1;

        for _ in 0..max_len {
            let next = self.next_layer(&older, &current);
            let mut any = false;
            for (y, piece) in next.iter().enumerate() {
                if let Some(p) = piece {
                    total[y] += p.quotient.dim() as u64;
                    any = true;
                }
            }
            if !any {
                return Ok(total);
            }
            older = core::mem::replace(&mut current, next);
        }
        Err(Error::WindowTooSmall)
    }

    fn next_layer(&self, older: &[Option<Piece>], current: &[Option<Piece>]) -> Vec<Option<Piece>> {
        (0..self.len())
            .map(|z| {
                if self.killed[z] {
                    return None;
                }
                let mut offsets = BTreeMap::new();
                let mut free = 0;
                for &w in &self.inn[z] {
                    if let Some(p) = &current[w] {
                        offsets.insert(w, free);
                        free += p.quotient.dim();
                    }
                }
                if free == 0 {
                    return None;
                }
                let mut relations = Subspace::new(free);
                if let Some(Some(t)) = self
                    .tau
                    .get(z)
                    .copied()
                    .map(|t| t.filter(|&t| older[t].is_some()))
                {
                    let source = older[t].as_ref().expect("checked above");
                    for k in 0..source.quotient.dim() {
                        let mut rel = alloc::vec![Rational::default(); free];
                        for (&w, &off) in &offsets {
                            if !self.out[t].contains(&w) {
                                continue;
                            }
                            let composed =
                                compose(current[w].as_ref().expect("in offsets"), t, source, k);
                            for (c, value) in composed.into_iter().enumerate() {
                                rel[off + c] += value;
                            }
                        }
                        relations.insert(rel);
                    }
                }
                let quotient = Quotient::new(relations);
                (quotient.dim() > 0).then_some(Piece { quotient, offsets })
            })
            .collect()
    }
}

/// Post-composes basis vector `k` of `V(x, t)` with the arrow `t → w`,
/// giving coordinates in `V(x, w)`.
fn compose(target: &Piece, t: usize, source: &Piece, k: usize) -> Vec<Rational> {
    let off = target.offsets[&t];
    let mut v = alloc::vec![Rational::default(); target.quotient.ambient_dim()];
    let coords = unit(source.quotient.dim(), k);
    for (c, value) in coords.into_iter().enumerate() {
        v[off + c] = value;
    }
    target.quotient.project(v)
}

/// Oracle Hom matrix of `k(Γ) / ⟨killed⟩`: paths modulo mesh relations and
/// modulo every path through a killed vertex. Killed rows and columns are 0.
pub fn oracle_hom_matrix(q: &TranslationQuiver, killed: &BTreeSet<usize>) -> Result<HomMatrix> {
    let frame = MeshFrame::from_quiver(q, killed);
    let max_len = q.len() + 2;
    let entries = (0..q.len())
        .map(|x| frame.hom_from(x, max_len))
        .collect::<Result<_>>()?;
    Ok(HomMatrix { entries })
}

pub fn oracle_hom_row(
    q: &TranslationQuiver,
    killed: &BTreeSet<usize>,
    x: usize,
) -> Result<Vec<u64>> {
    checked(q, x)?;
    MeshFrame::from_quiver(q, killed).hom_from(x, q.len() + 2)
}

/// Columns `[start, start + width)` of `ZΔ` as a finite mesh frame.
fn window_frame(
    d: &DynkinDiagram,
    start: i64,
    width: i64,
) -> (MeshFrame, impl Fn(ZVertex) -> Option<usize>) {
    let rank = d.rank() as usize;
    let index = move |z: ZVertex| -> Option<usize> {
        (start..start + width)
            .contains(&z.i)
            .then(|| (z.i - start) as usize * rank + (z.j as usize - 1))
    };
    let count = width as usize * rank;
    let vertex = |k: usize| ZVertex::new(start + (k / rank) as i64, (k % rank) as u32 + 1);
    let frame = MeshFrame {
        inn: (0..count)
            .map(|k| {
                ztrans::arrows_in(d, vertex(k))
                    .into_iter()
                    .filter_map(index)
                    .collect()
            })
            .collect(),
        out: (0..count)
            .map(|k| {
                ztrans::arrows_out(d, vertex(k))
                    .into_iter()
                    .filter_map(index)
                    .collect()
            })
            .collect(),
        tau: (0..count).map(|k| index(ztrans::tau(vertex(k)))).collect(),
        killed: alloc::vec![false; count],
    };
    (frame, index)
}

fn window_hom(d: &DynkinDiagram, x: ZVertex, y: ZVertex, width: i64) -> Result<u64> {
    let (frame, index) = window_frame(d, x.i, width);
    let Some(target) = index(y) else {
        return Ok(0);
    };
    let source = index(x).expect("window starts at x");
    let row = frame.hom_from(source, frame.len() + 1)?;
    Ok(row[target])
}

/// Oracle `dim Hom(x, y)` in the mesh category of `ZΔ`, computed on a
/// finite window of columns starting at `x`. The window is doubled until the
/// answer is stable (one retry).
pub fn oracle_mesh_hom(d: &DynkinDiagram, x: ZVertex, y: ZVertex) -> Result<u64> {
    if !d.contains(x.j) || !d.contains(y.j) {
        return Err(Error::InvalidQuiver("vertex outside the diagram".into()));
    }
    if y.i < x.i {
        return Ok(0);
    }
    let base = 2 * i64::from(d.coxeter_number()) + (y.i - x.i) + 1;
    let first = window_hom(d, x, y, base)?;
    let second = window_hom(d, x, y, 2 * base)?;
    if first == second {
        return Ok(first);
    }
    let third = window_hom(d, x, y, 4 * base)?;
    if second == third {
        Ok(second)
    } else {
        Err(Error::WindowTooSmall)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::Family;
    use crate::tquiver::orbit_quiver;
    use crate::ztrans::phi;

    fn diag(family: Family, n: u32) -> DynkinDiagram {
        DynkinDiagram::new(family, n).unwrap()
    }

    #[test]
    fn a2_hammock() {
        let f = hammock(&diag(Family::A, 2), ZVertex::new(0, 1));
        assert_eq!(f.value(ZVertex::new(0, 1)), 1);
        assert_eq!(f.value(ZVertex::new(0, 2)), 1);
        assert_eq!(f.value(ZVertex::new(1, 1)), 0);
        assert_eq!(f.value(ZVertex::new(1, 2)), 0);
        assert_eq!(f.support().count(), 2);
    }

    #[test]
    fn a1_hammock_is_a_point() {
        // the mesh category of ZA_1 has no arrows: only End(x) survives
        let f = hammock(&diag(Family::A, 1), ZVertex::new(0, 1));
        assert_eq!(
            f.support().collect::<Vec<_>>(),
            alloc::vec![(ZVertex::new(0, 1), 1)]
        );
        assert_eq!(
            oracle_mesh_hom(&diag(Family::A, 1), ZVertex::new(0, 1), ZVertex::new(1, 1)),
            Ok(0)
        );
    }

    #[test]
    fn oracle_small_cases() {
        let a2 = diag(Family::A, 2);
        let x = ZVertex::new(0, 1);
        assert_eq!(oracle_mesh_hom(&a2, x, x), Ok(1));
        assert_eq!(oracle_mesh_hom(&a2, x, ZVertex::new(1, 1)), Ok(0));
        assert_eq!(oracle_mesh_hom(&a2, x, ZVertex::new(0, 2)), Ok(1));
    }

    #[test]
    fn orbit_hom_examples() {
        let d = diag(Family::A, 1);
        let q = orbit_quiver(&d, &phi(&d, 3)).unwrap();
        for x in 0..q.len() {
            assert_eq!(hom_dim_orbit(&q, x, x), Ok(1));
        }
        assert_eq!(hom_dim_orbit(&q, 0, 9), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn missing_covering() {
        let d = diag(Family::A, 3);
        let q = orbit_quiver(&d, &phi(&d, 2)).unwrap();
        let del = q
            .delete_tau_stable(&q.vertices_in_rows(&[1].into_iter().collect()))
            .unwrap();
        assert_eq!(hom_matrix(&del.quiver), Err(Error::MissingCoveringData));
        assert!(oracle_hom_matrix(&del.quiver, &BTreeSet::new()).is_ok());
    }

    #[test]
    fn killed_source_is_zero() {
        let d = diag(Family::A, 2);
        let q = orbit_quiver(&d, &phi(&d, 1)).unwrap();
        let killed: BTreeSet<usize> = [0].into_iter().collect();
        let row = oracle_hom_row(&q, &killed, 0).unwrap();
        assert!(row.iter().all(|&v| v == 0));
    }
}
