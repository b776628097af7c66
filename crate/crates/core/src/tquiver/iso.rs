//! Translation-quiver isomorphism: colour refinement followed by
//! backtracking in vertex-id order.
//!
//! Candidates are tried in increasing order for vertex `0, 1, 2, ...` of the
//! first quiver, so the witness returned is the lexicographically least
//! isomorphism.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::TranslationQuiver;

const UNMAPPED: usize = usize::MAX;

/// A bijection `f` (as `f[v]` for each vertex `v` of `a`) preserving arrows
/// and commuting with the translations, if one exists.
pub fn is_isomorphic(a: &TranslationQuiver, b: &TranslationQuiver) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.arrow_count() != b.arrow_count() {
        return None;
    }
    let (colors_a, colors_b) = refine(a, b)?;
    Matcher::new(a, b, &colors_a, &colors_b).run()
}

/// Joint colour refinement on both quivers. `None` if the colour histograms
/// ever differ.
fn refine(a: &TranslationQuiver, b: &TranslationQuiver) -> Option<(Vec<usize>, Vec<usize>)> {
    let initial = |q: &TranslationQuiver| -> Vec<(usize, usize, usize)> {
        let lengths = q.tau_orbit_lengths();
        (0..q.len())
            .map(|v| (q.arrows_in(v).len(), q.arrows_out(v).len(), lengths[v]))
            .collect()
    };
    let (mut ca, mut cb) = compress(&initial(a), &initial(b))?;
    let mut classes = count_classes(&ca, &cb);
    loop {
        let (na, nb) = compress(&signatures(a, &ca), &signatures(b, &cb))?;
        let next = count_classes(&na, &nb);
        ca = na;
        cb = nb;
        if next == classes {
            return Some((ca, cb));
        }
        classes = next;
    }
}

type Signature = (usize, Vec<usize>, Vec<usize>, usize, usize);

fn signatures(q: &TranslationQuiver, colors: &[usize]) -> Vec<Signature> {
    (0..q.len())
        .map(|v| {
            let mut out: Vec<usize> = q.arrows_out(v).iter().map(|&w| colors[w]).collect();
            let mut inn: Vec<usize> = q.arrows_in(v).iter().map(|&w| colors[w]).collect();
            out.sort_unstable();
            inn.sort_unstable();
            (
                colors[v],
                out,
                inn,
                colors[q.tau(v)],
                colors[q.tau_inverse(v)],
            )
        })
        .collect()
}

/// Replaces keys by dense ids shared between both sides and compares the
/// resulting histograms.
fn compress<K: Ord + Clone>(a: &[K], b: &[K]) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut counts: BTreeMap<&K, (usize, usize)> = BTreeMap::new();
    for k in a {
        counts.entry(k).or_default().0 += 1;
    }
    for k in b {
        counts.entry(k).or_default().1 += 1;
    }
    if counts.values().any(|(x, y)| x != y) {
        return None;
    }
    let ids: BTreeMap<&K, usize> = counts.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    Some((
        a.iter().map(|k| ids[k]).collect(),
        b.iter().map(|k| ids[k]).collect(),
    ))
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    a.iter().chain(b).max().map_or(0, |m| m + 1)
}

struct Matcher<'q> {
    a: &'q TranslationQuiver,
    b: &'q TranslationQuiver,
    colors_a: &'q [usize],
    colors_b: &'q [usize],
    tau_inv_a: Vec<usize>,
    tau_inv_b: Vec<usize>,
    by_color_b: BTreeMap<usize, Vec<usize>>,
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl<'q> Matcher<'q> {
    fn new(
        a: &'q TranslationQuiver,
        b: &'q TranslationQuiver,
        colors_a: &'q [usize],
        colors_b: &'q [usize],
    ) -> Self {
        let inverse = |q: &TranslationQuiver| (0..q.len()).map(|v| q.tau_inverse(v)).collect();
        let mut by_color_b: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &c) in colors_b.iter().enumerate() {
            by_color_b.entry(c).or_default().push(v);
        }
        Matcher {
            a,
            b,
            colors_a,
            colors_b,
            tau_inv_a: inverse(a),
            tau_inv_b: inverse(b),
            by_color_b,
            forward: alloc::vec![UNMAPPED; a.len()],
            backward: alloc::vec![UNMAPPED; b.len()],
        }
    }

    fn run(mut self) -> Option<Vec<usize>> {
        let n = self.a.len();
        if n == 0 {
            return Some(Vec::new());
        }
        let mut stack: Vec<(Vec<usize>, usize)> = Vec::with_capacity(n);
        stack.push((self.candidates(0), 0));
        loop {
            let v = stack.len() - 1;
            let (ref cands, ref mut next) = stack[v];
            if self.forward[v] != UNMAPPED {
                self.backward[self.forward[v]] = UNMAPPED;
                self.forward[v] = UNMAPPED;
            }
            let mut chosen = None;
            while *next < cands.len() {
                let c = cands[*next];
                *next += 1;
                if self.backward[c] == UNMAPPED && self.consistent(v, c) {
                    chosen = Some(c);
                    break;
                }
            }
            match chosen {
                Some(c) => {
                    self.forward[v] = c;
                    self.backward[c] = v;
                    if v + 1 == n {
                        return Some(self.forward);
                    }
                    let cands = self.candidates(v + 1);
                    stack.push((cands, 0));
                }
                None => {
                    stack.pop();
                    if stack.is_empty() {
                        return None;
                    }
                }
            }
        }
    }

    /// Candidate images of `v`, narrowed by an already mapped neighbour.
    fn candidates(&self, v: usize) -> Vec<usize> {
        let (a, b) = (self.a, self.b);
        let mut cands: Vec<usize> = if self.forward[a.tau(v)] != UNMAPPED {
            alloc::vec![self.tau_inv_b[self.forward[a.tau(v)]]]
        } else if self.forward[self.tau_inv_a[v]] != UNMAPPED {
            alloc::vec![b.tau(self.forward[self.tau_inv_a[v]])]
        } else if let Some(&u) = a
            .arrows_in(v)
            .iter()
            .find(|&&u| self.forward[u] != UNMAPPED)
        {
            b.arrows_out(self.forward[u]).to_vec()
        } else if let Some(&u) = a
            .arrows_out(v)
            .iter()
            .find(|&&u| self.forward[u] != UNMAPPED)
        {
            b.arrows_in(self.forward[u]).to_vec()
        } else {
            self.by_color_b
                .get(&self.colors_a[v])
                .cloned()
                .unwrap_or_default()
        };
        cands.retain(|&c| self.colors_b[c] == self.colors_a[v]);
        cands.sort_unstable();
        cands
    }

    fn consistent(&self, v: usize, c: usize) -> bool {
        let (a, b) = (self.a, self.b);
        let f = &self.forward;
        let g = &self.backward;

        let tv = a.tau(v);
        if f[tv] != UNMAPPED && f[tv] != b.tau(c) {
            return false;
        }
        let tiv = self.tau_inv_a[v];
        if f[tiv] != UNMAPPED && f[tiv] != self.tau_inv_b[c] {
            return false;
        }
        let tc = b.tau(c);
        if g[tc] != UNMAPPED && g[tc] != tv {
            return false;
        }
        let tic = self.tau_inv_b[c];
        if g[tic] != UNMAPPED && g[tic] != tiv {
            return false;
        }
        // self-translation (fixed points) must match too
        if (tv == v) != (tc == c) {
            return false;
        }

        a.arrows_out(v)
            .iter()
            .all(|&u| f[u] == UNMAPPED || b.has_arrow(c, f[u]))
            && a.arrows_in(v)
                .iter()
                .all(|&u| f[u] == UNMAPPED || b.has_arrow(f[u], c))
            && b.arrows_out(c)
                .iter()
                .all(|&w| g[w] == UNMAPPED || a.has_arrow(v, g[w]))
            && b.arrows_in(c)
                .iter()
                .all(|&w| g[w] == UNMAPPED || a.has_arrow(g[w], v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{DynkinDiagram, Family};
    use crate::tquiver::orbit_quiver;
    use crate::ztrans::phi;

    fn cluster(family: Family, n: u32, u: u32) -> TranslationQuiver {
        let d = DynkinDiagram::new(family, n).unwrap();
        orbit_quiver(&d, &phi(&d, u)).unwrap()
    }

    #[test]
    fn reflexive_gives_identity() {
        let q = cluster(Family::D, 4, 1);
        let witness = is_isomorphic(&q, &q).unwrap();
        // D4 has symmetries, but the identity is the lexicographically least
        assert_eq!(witness, (0..q.len()).collect::<Vec<_>>());
    }

    #[test]
    fn relabelled_copy() {
        let q = cluster(Family::A, 3, 1);
        let n = q.len();
        let perm: Vec<usize> = (0..n).map(|v| (v * 4 + 3) % n).collect();
        let r = q.relabel(&perm).unwrap();
        let w = is_isomorphic(&q, &r).unwrap();
        for (x, y) in q.arrows() {
            assert!(r.has_arrow(w[x], w[y]));
        }
        for v in 0..n {
            assert_eq!(w[q.tau(v)], r.tau(w[v]));
        }
    }

    #[test]
    fn different_counts() {
        assert!(is_isomorphic(&cluster(Family::D, 5, 1), &cluster(Family::D, 5, 2)).is_none());
    }

    #[test]
    fn same_quiver_different_translation() {
        // D6 (no switch) against D5-like switched rows would differ in orbit lengths;
        // here: A2 level 2 vs A1 level ... compare quivers with equal counts
        let a = cluster(Family::A, 1, 5); // 6 vertices, one orbit
        let d = DynkinDiagram::new(Family::A, 1).unwrap();
        let b = orbit_quiver(&d, &crate::ztrans::AffineAutomorphism::translation(&d, 3)).unwrap();
        let two = {
            // two disjoint 3-cycles
            let labels = alloc::vec![None; 6];
            TranslationQuiver::from_parts(
                labels,
                &[],
                alloc::vec![1, 2, 0, 4, 5, 3],
                Default::default(),
            )
            .unwrap()
        };
        assert_eq!(b.len(), 3);
        assert!(is_isomorphic(&a, &two).is_none());
    }
}
