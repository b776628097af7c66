//! DOT and plain-text renderings, and JSON shapes for Hom matrices and
//! verification reports.

use std::fmt::Write;

use arquiver_core::{DeletionWitness, HomMatrix, TranslationQuiver, VerificationReport};
use serde::Serialize;

fn vertex_name(q: &TranslationQuiver, v: usize, orbit_of: &[usize]) -> String {
    match q.label(v) {
        Some(z) => format!("{},{}", z.i, z.j),
        None => format!("o{}", orbit_of[v]),
    }
}

fn orbit_index(q: &TranslationQuiver) -> Vec<usize> {
    let mut orbit_of = vec![0; q.len()];
    for (k, orbit) in q.tau_orbits().iter().enumerate() {
        for &v in orbit {
            orbit_of[v] = k;
        }
    }
    orbit_of
}

/// Solid edges for arrows, dashed edges labelled `tau` from `v` to `τv`.
pub fn dot(q: &TranslationQuiver) -> String {
    let orbit_of = orbit_index(q);
    let mut s = String::from("digraph quiver {\n");
    for v in 0..q.len() {
        writeln!(s, "  {v} [label=\"{}\"];", vertex_name(q, v, &orbit_of)).unwrap();
    }
    for (a, b) in q.arrows() {
        writeln!(s, "  {a} -> {b};").unwrap();
    }
    for v in 0..q.len() {
        writeln!(s, "  {v} -> {} [style=dashed, label=\"tau\"];", q.tau(v)).unwrap();
    }
    s.push_str("}\n");
    s
}

pub fn text(q: &TranslationQuiver) -> String {
    let orbit_of = orbit_index(q);
    let meta = q.meta();
    let mut s = String::new();
    if let (Some(f), Some(r)) = (meta.family, meta.rank) {
        write!(s, "{f}{r}").unwrap();
        if let Some(u) = meta.level {
            write!(s, " level {u}").unwrap();
        }
        s.push_str(": ");
    }
    writeln!(
        s,
        "{} vertices, {} arrows, {} tau-orbits, connected: {}",
        q.len(),
        q.arrow_count(),
        q.tau_orbits().len(),
        meta.connected
    )
    .unwrap();
    for v in 0..q.len() {
        write!(s, "{v} [{}] tau={}", vertex_name(q, v, &orbit_of), q.tau(v)).unwrap();
        if !q.arrows_out(v).is_empty() {
            let targets: Vec<String> = q.arrows_out(v).iter().map(usize::to_string).collect();
            write!(s, " -> {}", targets.join(" ")).unwrap();
        }
        s.push('\n');
    }
    s
}

#[derive(Debug, Serialize)]
pub struct HomDocument {
    pub vertices: Vec<Option<[i64; 2]>>,
    pub matrix: Vec<Vec<u64>>,
}

impl HomDocument {
    pub fn new(q: &TranslationQuiver, m: &HomMatrix) -> Self {
        HomDocument {
            vertices: (0..q.len())
                .map(|v| q.label(v).map(|z| [z.i, i64::from(z.j)]))
                .collect(),
            matrix: m.rows().to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClusterRefDocument {
    pub family: String,
    pub rank: u32,
    pub level: u32,
}

impl From<arquiver_core::ClusterRef> for ClusterRefDocument {
    fn from(c: arquiver_core::ClusterRef) -> Self {
        ClusterRefDocument {
            family: c.family.to_string(),
            rank: c.rank,
            level: c.level,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HypothesisDocument {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct WitnessDocument {
    pub orbits: Vec<usize>,
    pub rows: Vec<u32>,
}

impl From<&DeletionWitness> for WitnessDocument {
    fn from(w: &DeletionWitness) -> Self {
        WitnessDocument {
            orbits: w.orbits.clone(),
            rows: w.rows.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ExceptionalDocument {
    pub quotient: Vec<usize>,
    pub target: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub source: ClusterRefDocument,
    pub target: ClusterRefDocument,
    pub hypotheses: Vec<HypothesisDocument>,
    pub deletion: WitnessDocument,
    pub tau_stable: bool,
    pub quotient_vertices: Vec<usize>,
    pub quotient_connected: bool,
    pub target_vertex_count: usize,
    pub isomorphic: bool,
    pub iso_witness: Option<Vec<usize>>,
    pub hom_checked: Option<bool>,
    pub exceptional_orbits: Option<ExceptionalDocument>,
    pub open_question: Option<&'static str>,
    pub assumptions: &'static str,
}

impl From<&VerificationReport> for ReportDocument {
    fn from(r: &VerificationReport) -> Self {
        ReportDocument {
            source: r.source.into(),
            target: r.target.into(),
            hypotheses: r
                .hypotheses
                .iter()
                .map(|h| HypothesisDocument {
                    name: h.name,
                    holds: h.holds,
                })
                .collect(),
            deletion: (&r.deletion).into(),
            tau_stable: r.tau_stable,
            quotient_vertices: r.quotient_vertices.clone(),
            quotient_connected: r.quotient_connected,
            target_vertex_count: r.target_vertex_count,
            isomorphic: r.is_isomorphic(),
            iso_witness: r.iso_witness.clone(),
            hom_checked: r.hom_checked,
            exceptional_orbits: r
                .exceptional_orbits
                .as_ref()
                .map(|(q, t)| ExceptionalDocument {
                    quotient: q.clone(),
                    target: t.clone(),
                }),
            open_question: r.open_question,
            assumptions: r.assumptions,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use arquiver_core::{cluster_quiver, Family};

    #[test]
    fn dot_marks_translation() {
        let (q, _) = cluster_quiver(Family::A, 1, 1).unwrap();
        assert_eq!(
            dot(&q),
            "digraph quiver {\n  0 [label=\"0,1\"];\n  1 [label=\"1,1\"];\n  \
             0 -> 1 [style=dashed, label=\"tau\"];\n  1 -> 0 [style=dashed, label=\"tau\"];\n}\n"
        );
    }

    #[test]
    fn text_summary_line() {
        let (q, _) = cluster_quiver(Family::A, 3, 1).unwrap();
        let t = text(&q);
        assert!(t.starts_with("A3 level 1: 9 vertices, 12 arrows, 2 tau-orbits, connected: true\n"));
        assert_eq!(t.lines().count(), 10);
    }
}
