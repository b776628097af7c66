//! Finite stable translation quivers: orbit quivers of `ZΔ`, τ-orbits,
//! deletion of τ-stable vertex sets and isomorphism testing.

mod iso;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

pub use iso::is_isomorphic;

use crate::dynkin::{DynkinDiagram, Family};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;
use crate::ztrans::{self, AffineAutomorphism, ZVertex};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuiverMeta {
    pub family: Option<Family>,
    pub rank: Option<u32>,
    pub level: Option<u32>,
    pub standard: bool,
    pub connected: bool,
    /// Whether the mesh property was checked when the quiver was built.
    pub mesh_validated: bool,
}

/// How a quiver arises as `ZΔ / ⟨φ⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    diagram: DynkinDiagram,
    phi: AffineAutomorphism,
    index: BTreeMap<ZVertex, usize>,
}

impl Covering {
    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn phi(&self) -> &AffineAutomorphism {
        &self.phi
    }

    /// The orbit element with the smallest non-negative column.
    pub fn canonical_lift(&self, mut v: ZVertex) -> ZVertex {
        while v.i < 0 {
            v = self.phi.apply(v);
        }
        loop {
            let prev = self.phi.apply_inverse(v);
            if prev.i < 0 {
                return v;
            }
            v = prev;
        }
    }

    /// Quiver vertex of the orbit of `v`.
    pub fn class_of(&self, v: ZVertex) -> Option<usize> {
        if !self.diagram.contains(v.j) {
            return None;
        }
        self.index.get(&self.canonical_lift(v)).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationQuiver {
    labels: Vec<Option<ZVertex>>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    tau: Vec<usize>,
    tau_inv: Vec<usize>,
    meta: QuiverMeta,
    covering: Option<Covering>,
}

/// Result of removing a τ-stable set: the quotient quiver and, for each of
/// its vertices, the id it had in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deletion {
    pub quiver: TranslationQuiver,
    pub kept: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub vertex_count: usize,
    pub arrow_count: usize,
    /// First vertex whose mesh fails, if any.
    pub mesh_violation: Option<usize>,
    pub components: usize,
    pub connected: bool,
}

impl ValidationReport {
    pub fn mesh_ok(&self) -> bool {
        self.mesh_violation.is_none()
    }
}

impl TranslationQuiver {
    /// Builds a quiver from raw parts, checking that the translation is a
    /// bijection and that arrows are valid, loop-free and multiplicity-free.
    /// The mesh property is checked only if `meta.mesh_validated` is set.
    pub fn from_parts(
        labels: Vec<Option<ZVertex>>,
        arrows: &[(usize, usize)],
        tau: Vec<usize>,
        mut meta: QuiverMeta,
    ) -> Result<Self> {
        let n = labels.len();
        if tau.len() != n {
            return Err(Error::InvalidQuiver(format!(
                "translation has {} entries for {n} vertices",
                tau.len()
            )));
        }
        let mut tau_inv = alloc::vec![usize::MAX; n];
        for (v, &t) in tau.iter().enumerate() {
            if t >= n || core::mem::replace(&mut tau_inv[t], v) != usize::MAX {
                return Err(Error::InvalidQuiver(
                    "translation is not a permutation".into(),
                ));
            }
        }
        let mut out = alloc::vec![Vec::new(); n];
        let mut inn = alloc::vec![Vec::new(); n];
        for &(a, b) in arrows {
            if a >= n {
                return Err(Error::UnknownVertex(a));
            }
            if b >= n {
                return Err(Error::UnknownVertex(b));
            }
            if a == b {
                return Err(Error::InvalidQuiver(format!("loop at vertex {a}")));
            }
            out[a].push(b);
            inn[b].push(a);
        }
        for (a, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::ArrowMultiplicity { from: a, to: w[0] });
            }
        }
        for list in &mut inn {
            list.sort_unstable();
        }
        let check_mesh = meta.mesh_validated;
        meta.connected = false;
        let mut q = TranslationQuiver {
            labels,
            out,
            inn,
            tau,
            tau_inv,
            meta,
            covering: None,
        };
        if check_mesh {
            q.check_mesh()?;
        }
        q.meta.connected = q.connected_components().len() == 1;
        Ok(q)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: usize) -> Option<ZVertex> {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Option<ZVertex>] {
        &self.labels
    }

    pub fn arrows_out(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn arrows_in(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// All arrows in `(source, target)` order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().map(move |&b| (a, b)))
    }

    pub fn arrow_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn has_arrow(&self, a: usize, b: usize) -> bool {
        self.out[a].binary_search(&b).is_ok()
    }

    pub fn tau(&self, v: usize) -> usize {
        self.tau[v]
    }

    pub fn translation(&self) -> &[usize] {
        &self.tau
    }

    pub fn tau_inverse(&self, v: usize) -> usize {
        self.tau_inv[v]
    }

    pub fn meta(&self) -> &QuiverMeta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut QuiverMeta {
        &mut self.meta
    }

    pub fn covering(&self) -> Option<&Covering> {
        self.covering.as_ref()
    }

    /// Ensures `{a : a -> m} = {b : τm -> b}` for every vertex `m`.
    pub fn check_mesh(&self) -> Result<()> {
        match (0..self.len()).find(|&m| self.inn[m] != self.out[self.tau[m]]) {
            Some(vertex) => Err(Error::MeshViolation { vertex }),
            None => Ok(()),
        }
    }

    /// Cycles of the translation, each sorted, ordered by smallest member.
    pub fn tau_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.len()];
        let mut orbits = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                orbit.push(v);
                v = self.tau[v];
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Length of the τ-orbit through each vertex.
    pub fn tau_orbit_lengths(&self) -> Vec<usize> {
        let mut lengths = alloc::vec![0; self.len()];
        for orbit in self.tau_orbits() {
            for &v in &orbit {
                lengths[v] = orbit.len();
            }
        }
        lengths
    }

    /// Weak components with respect to arrows and translation, each sorted,
    /// ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.len());
        for (a, b) in self.arrows() {
            uf.union(a, b);
        }
        for (v, &t) in self.tau.iter().enumerate() {
            uf.union(v, t);
        }
        uf.classes()
    }

    pub fn validate(&self) -> ValidationReport {
        let components = self.connected_components().len();
        ValidationReport {
            vertex_count: self.len(),
            arrow_count: self.arrow_count(),
            mesh_violation: self.check_mesh().err().map(|e| match e {
                Error::MeshViolation { vertex } => vertex,
                _ => unreachable!(),
            }),
            components,
            connected: components == 1,
        }
    }

    /// Vertices whose `ZΔ` label lies in one of `rows`.
    pub fn vertices_in_rows(&self, rows: &BTreeSet<u32>) -> BTreeSet<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_some_and(|z| rows.contains(&z.j)))
            .map(|(v, _)| v)
            .collect()
    }

    /// Removes a τ-stable vertex set together with all arrows touching it.
    /// The translation of the result is the restriction of `τ`.
    pub fn delete_tau_stable(&self, deleted: &BTreeSet<usize>) -> Result<Deletion> {
        if let Some(&v) = deleted.iter().find(|&&v| v >= self.len()) {
            return Err(Error::UnknownVertex(v));
        }
        if let Some(&witness) = deleted.iter().find(|&&v| !deleted.contains(&self.tau[v])) {
            return Err(Error::NotTauStable { witness });
        }
        let kept: Vec<usize> = (0..self.len()).filter(|v| !deleted.contains(v)).collect();
        let mut new_id = alloc::vec![usize::MAX; self.len()];
        for (k, &v) in kept.iter().enumerate() {
            new_id[v] = k;
        }
        let labels = kept.iter().map(|&v| self.labels[v]).collect();
        let arrows: Vec<(usize, usize)> = self
            .arrows()
            .filter(|(a, b)| new_id[*a] != usize::MAX && new_id[*b] != usize::MAX)
            .map(|(a, b)| (new_id[a], new_id[b]))
            .collect();
        let tau = kept.iter().map(|&v| new_id[self.tau[v]]).collect();
        // labels still refer to the source diagram, but the level does not
        // describe the quotient
        let meta = QuiverMeta {
            level: None,
            mesh_validated: false,
            ..self.meta.clone()
        };
        let quiver = TranslationQuiver::from_parts(labels, &arrows, tau, meta)?;
        Ok(Deletion { quiver, kept })
    }

    /// The same quiver with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<TranslationQuiver> {
        let n = self.len();
        if perm.len() != n {
            return Err(Error::InvalidQuiver(
                "relabelling has the wrong length".into(),
            ));
        }
        let mut inverse = alloc::vec![usize::MAX; n];
        for (v, &p) in perm.iter().enumerate() {
            if p >= n || inverse[p] != usize::MAX {
                return Err(Error::InvalidQuiver(
                    "relabelling is not a permutation".into(),
                ));
            }
            inverse[p] = v;
        }
        let labels = inverse.iter().map(|&v| self.labels[v]).collect();
        let arrows: Vec<(usize, usize)> = self.arrows().map(|(a, b)| (perm[a], perm[b])).collect();
        let tau = inverse.iter().map(|&v| perm[self.tau[v]]).collect();
        // labels still refer to the source diagram, but the level does not
        // describe the quotient
        let meta = QuiverMeta {
            level: None,
            mesh_validated: false,
            ..self.meta.clone()
        };
        let mut q = TranslationQuiver::from_parts(labels, &arrows, tau, meta)?;
        q.meta.mesh_validated = self.meta.mesh_validated;
        q.covering = self.covering.as_ref().map(|c| Covering {
            diagram: c.diagram.clone(),
            phi: c.phi.clone(),
            index: c.index.iter().map(|(&z, &v)| (z, perm[v])).collect(),
        });
        Ok(q)
    }

    /// Attaches covering data to a quiver whose labels are canonical lifts
    /// under `phi`, checking that the labelling really is a covering.
    pub fn with_covering(
        mut self,
        diagram: DynkinDiagram,
        phi: AffineAutomorphism,
    ) -> Result<Self> {
        let rebuilt = orbit_quiver(&diagram, &phi)?;
        if rebuilt.len() != self.len() {
            return Err(Error::InvalidQuiver(
                "vertex count does not match the covering".into(),
            ));
        }
        let cover = rebuilt.covering.expect("orbit quivers carry a covering");
        let mut to_rebuilt = Vec::with_capacity(self.len());
        for label in &self.labels {
            let v = label
                .and_then(|z| cover.index.get(&z).copied())
                .ok_or_else(|| Error::InvalidQuiver("labels are not canonical lifts".into()))?;
            to_rebuilt.push(v);
        }
        for v in 0..self.len() {
            let r = to_rebuilt[v];
            let mapped: Vec<usize> = {
                let mut m: Vec<usize> = self.out[v].iter().map(|&w| to_rebuilt[w]).collect();
                m.sort_unstable();
                m
            };
            if mapped != rebuilt.out[r] || to_rebuilt[self.tau[v]] != rebuilt.tau[r] {
                return Err(Error::InvalidQuiver(
                    "arrows or translation differ from the covering".into(),
                ));
            }
        }
        let mut from_rebuilt = alloc::vec![usize::MAX; self.len()];
        for (v, &r) in to_rebuilt.iter().enumerate() {
            if core::mem::replace(&mut from_rebuilt[r], v) != usize::MAX {
                return Err(Error::InvalidQuiver("two vertices share a lift".into()));
            }
        }
        self.covering = Some(Covering {
            diagram,
            phi,
            index: cover
                .index
                .iter()
                .map(|(&z, &r)| (z, from_rebuilt[r]))
                .collect(),
        });
        Ok(self)
    }
}

/// `ZΔ / ⟨f⟩` for an automorphism moving every row strictly to the right.
///
/// Vertices are ordered by their canonical lift (smallest non-negative
/// column, then row).
pub fn orbit_quiver(d: &DynkinDiagram, f: &AffineAutomorphism) -> Result<TranslationQuiver> {
    if f.family() != d.family() || f.rank() != d.rank() {
        return Err(Error::DiagramMismatch);
    }
    if let Some(row) = d.vertices().find(|&j| f.shift(j) < 1) {
        return Err(Error::NotRightward {
            row,
            shift: f.shift(row),
        });
    }
    let rank = d.rank() as usize;
    let width = 2 * f.max_shift() + 2;
    let slot = |z: ZVertex| -> Option<usize> {
        (0..width)
            .contains(&z.i)
            .then(|| z.i as usize * rank + (z.j as usize - 1))
    };
    let vertex_at = |k: usize| ZVertex::new((k / rank) as i64, (k % rank) as u32 + 1);

    let total = width as usize * rank;
    let mut uf = UnionFind::new(total);
    for k in 0..total {
        if let Some(w) = slot(f.apply(vertex_at(k))) {
            uf.union(k, w);
        }
    }

    // classes come out ordered by smallest slot, i.e. by (column, row) of the
    // canonical lift
    let classes = uf.classes();
    let mut class_of = alloc::vec![0usize; total];
    for (c, members) in classes.iter().enumerate() {
        for &k in members {
            class_of[k] = c;
        }
    }
    let labels: Vec<Option<ZVertex>> = classes.iter().map(|m| Some(vertex_at(m[0]))).collect();

    let mut arrows = Vec::new();
    let mut tau = Vec::with_capacity(classes.len());
    for (c, members) in classes.iter().enumerate() {
        let lift = members
            .iter()
            .map(|&k| vertex_at(k))
            .find(|z| z.i >= 1)
            .expect("window holds a lift in column >= 1");
        let mut targets: Vec<usize> = ztrans::arrows_out(d, lift)
            .into_iter()
            .map(|z| class_of[slot(z).expect("inside window")])
            .collect();
        targets.sort_unstable();
        if let Some(w) = targets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::ArrowMultiplicity { from: c, to: w[0] });
        }
        arrows.extend(targets.into_iter().map(|t| (c, t)));
        tau.push(class_of[slot(ztrans::tau(lift)).expect("inside window")]);
    }

    let meta = QuiverMeta {
        family: Some(d.family()),
        rank: Some(d.rank()),
        level: None,
        standard: true,
        connected: false,
        mesh_validated: true,
    };
    let mut q = TranslationQuiver::from_parts(labels, &arrows, tau, meta)?;
    q.covering = Some(Covering {
        diagram: d.clone(),
        phi: f.clone(),
        index: q
            .labels
            .iter()
            .enumerate()
            .map(|(v, z)| (z.expect("orbit quivers are labelled"), v))
            .collect(),
    });
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ztrans::phi;
    use alloc::vec;

    fn diag(family: Family, n: u32) -> DynkinDiagram {
        DynkinDiagram::new(family, n).unwrap()
    }

    #[test]
    fn a1_cyclic() {
        let d = diag(Family::A, 1);
        let q = orbit_quiver(&d, &phi(&d, 3)).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.arrow_count(), 0);
        assert_eq!(q.tau_orbits(), vec![vec![0, 1, 2, 3]]);
        assert!(q.meta().connected);
    }

    #[test]
    fn counts() {
        let a3 = diag(Family::A, 3);
        assert_eq!(orbit_quiver(&a3, &phi(&a3, 1)).unwrap().len(), 9);
        let e7 = diag(Family::E, 7);
        assert_eq!(orbit_quiver(&e7, &phi(&e7, 2)).unwrap().len(), 133);
    }

    #[test]
    fn not_rightward() {
        let d = diag(Family::A, 2);
        let err = orbit_quiver(&d, &AffineAutomorphism::identity(&d)).unwrap_err();
        assert_eq!(err, Error::NotRightward { row: 1, shift: 0 });
    }

    #[test]
    fn d5_exceptional_orbits() {
        let d = diag(Family::D, 5);
        for (u, expected) in [(1u32, vec![10usize]), (2, vec![9, 9])] {
            let q = orbit_quiver(&d, &phi(&d, u)).unwrap();
            let exceptional: BTreeSet<u32> = [4, 5].into_iter().collect();
            let rows = q.vertices_in_rows(&exceptional);
            let lengths: Vec<usize> = q
                .tau_orbits()
                .into_iter()
                .filter(|o| rows.contains(&o[0]))
                .map(|o| o.len())
                .collect();
            assert_eq!(lengths, expected);
        }
    }

    #[test]
    fn deletion_examples() {
        let d = diag(Family::A, 5);
        let q = orbit_quiver(&d, &phi(&d, 1)).unwrap();
        assert_eq!(q.len(), 20);

        let same = q.delete_tau_stable(&BTreeSet::new()).unwrap();
        assert_eq!(
            same.quiver.arrows().collect::<Vec<_>>(),
            q.arrows().collect::<Vec<_>>()
        );
        assert_eq!(same.quiver.translation(), q.translation());

        let x = q.vertices_in_rows(&[1, 2, 4, 5].into_iter().collect());
        let del = q.delete_tau_stable(&x).unwrap();
        assert_eq!(del.quiver.len(), 4);
        assert_eq!(del.quiver.tau_orbits().len(), 1);
        assert!(!del.quiver.meta().mesh_validated);
        assert!(del.quiver.meta().standard);

        let row1 = q.vertices_in_rows(&[1].into_iter().collect());
        match q.delete_tau_stable(&row1) {
            Err(Error::NotTauStable { witness }) => {
                assert!(row1.contains(&witness));
                assert!(!row1.contains(&q.tau(witness)));
            }
            other => panic!("expected NotTauStable, got {other:?}"),
        }
    }

    #[test]
    fn deleting_middle_row_disconnects() {
        let d = diag(Family::A, 3);
        let q = orbit_quiver(&d, &phi(&d, 2)).unwrap();
        let x = q.vertices_in_rows(&[2].into_iter().collect());
        let del = q.delete_tau_stable(&x).unwrap();
        assert!(del.quiver.connected_components().len() >= 2);
        assert!(!del.quiver.meta().connected);
    }

    #[test]
    fn empty_quiver() {
        let q = TranslationQuiver::from_parts(vec![], &[], vec![], QuiverMeta::default()).unwrap();
        let report = q.validate();
        assert_eq!(report.components, 0);
        assert!(report.mesh_ok());
    }

    #[test]
    fn malformed_parts() {
        let meta = QuiverMeta::default();
        assert!(matches!(
            TranslationQuiver::from_parts(vec![None, None], &[], vec![0, 0], meta.clone()),
            Err(Error::InvalidQuiver(_))
        ));
        assert_eq!(
            TranslationQuiver::from_parts(
                vec![None, None],
                &[(0, 1), (0, 1)],
                vec![0, 1],
                meta.clone()
            ),
            Err(Error::ArrowMultiplicity { from: 0, to: 1 })
        );
        assert_eq!(
            TranslationQuiver::from_parts(vec![None], &[(0, 3)], vec![0], meta.clone()),
            Err(Error::UnknownVertex(3))
        );
        let checked = QuiverMeta {
            mesh_validated: true,
            ..meta
        };
        assert_eq!(
            TranslationQuiver::from_parts(vec![None, None], &[(0, 1)], vec![0, 1], checked),
            Err(Error::MeshViolation { vertex: 0 })
        );
    }

    #[test]
    fn covering_lookup() {
        let d = diag(Family::A, 5);
        let f = phi(&d, 1);
        let q = orbit_quiver(&d, &f).unwrap();
        let cover = q.covering().unwrap();
        for v in 0..q.len() {
            let z = q.label(v).unwrap();
            assert_eq!(cover.class_of(z), Some(v));
            assert_eq!(cover.class_of(f.apply(f.apply(z))), Some(v));
            assert_eq!(cover.class_of(f.apply_inverse(z)), Some(v));
        }
        let rebuilt = q.clone().with_covering(d.clone(), f.clone()).unwrap();
        assert_eq!(rebuilt.covering(), q.covering());
    }
}
