//! The JSON quiver file format.

use arquiver_core::ztrans::AffineAutomorphism;
use arquiver_core::{
    DiagramAutomorphism, DynkinDiagram, Family, QuiverMeta, TranslationQuiver, ZVertex,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed quiver document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    Version(u32),
    #[error("vertex ids must be 0..N-1 in order; found {found} at position {position}")]
    Ids { position: usize, found: usize },
    #[error("unknown family {0:?}")]
    Family(String),
    #[error(transparent)]
    Quiver(#[from] arquiver_core::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDocument {
    pub format_version: u32,
    pub meta: MetaDocument,
    pub vertices: Vec<VertexDocument>,
    pub arrows: Vec<[usize; 2]>,
    pub tau: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaDocument {
    pub family: Option<String>,
    pub rank: Option<u32>,
    pub level: Option<u32>,
    pub standard: bool,
    pub connected: bool,
    pub mesh_validated: bool,
    pub covering: Option<CoveringDocument>,
}

/// `φ` as the images of the diagram part and the per-row shifts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringDocument {
    pub family: String,
    pub rank: u32,
    pub images: Vec<u32>,
    pub shifts: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDocument {
    pub id: usize,
    /// `[i, j]` in `ZΔ`, absent for unlabelled vertices.
    pub label: Option<[i64; 2]>,
    /// Index of the vertex's τ-orbit.
    pub orbit: usize,
}

fn parse_family(s: &str) -> Result<Family, DocumentError> {
    s.parse().map_err(|_| DocumentError::Family(s.to_owned()))
}

impl QuiverDocument {
    pub fn from_quiver(q: &TranslationQuiver) -> Self {
        let mut orbit_of = vec![0; q.len()];
        for (k, orbit) in q.tau_orbits().iter().enumerate() {
            for &v in orbit {
                orbit_of[v] = k;
            }
        }
        let meta = q.meta();
        QuiverDocument {
            format_version: FORMAT_VERSION,
            meta: MetaDocument {
                family: meta.family.map(|f| f.to_string()),
                rank: meta.rank,
                level: meta.level,
                standard: meta.standard,
                connected: meta.connected,
                mesh_validated: meta.mesh_validated,
                covering: q.covering().map(|c| CoveringDocument {
                    family: c.diagram().family().to_string(),
                    rank: c.diagram().rank(),
                    images: c.phi().diagram_part().images().to_vec(),
                    shifts: c.phi().shifts().to_vec(),
                }),
            },
            vertices: (0..q.len())
                .map(|v| VertexDocument {
                    id: v,
                    label: q.label(v).map(|z| [z.i, i64::from(z.j)]),
                    orbit: orbit_of[v],
                })
                .collect(),
            arrows: q.arrows().map(|(a, b)| [a, b]).collect(),
            tau: q.translation().to_vec(),
        }
    }

    pub fn to_quiver(&self) -> Result<TranslationQuiver, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::Version(self.format_version));
        }
        if let Some((position, v)) = self.vertices.iter().enumerate().find(|(k, v)| v.id != *k) {
            return Err(DocumentError::Ids {
                position,
                found: v.id,
            });
        }
        let labels = self
            .vertices
            .iter()
            .map(|v| {
                v.label
                    .map(|[i, j]| {
                        u32::try_from(j).map(|j| ZVertex::new(i, j)).map_err(|_| {
                            arquiver_core::Error::InvalidQuiver(format!("row {j} out of range"))
                        })
                    })
                    .transpose()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arrows: Vec<(usize, usize)> = self.arrows.iter().map(|&[a, b]| (a, b)).collect();
        let meta = QuiverMeta {
            family: self.meta.family.as_deref().map(parse_family).transpose()?,
            rank: self.meta.rank,
            level: self.meta.level,
            standard: self.meta.standard,
            connected: false,
            mesh_validated: self.meta.mesh_validated,
        };
        let mut q = TranslationQuiver::from_parts(labels, &arrows, self.tau.clone(), meta)?;
        if let Some(c) = &self.meta.covering {
            let d = DynkinDiagram::new(parse_family(&c.family)?, c.rank)?;
            let g = DiagramAutomorphism::from_images(c.images.clone()).ok_or_else(|| {
                arquiver_core::Error::InvalidQuiver("covering images are not a permutation".into())
            })?;
            let phi = AffineAutomorphism::new(&d, g, c.shifts.clone())?;
            q = q.with_covering(d, phi)?;
        }
        Ok(q)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}
