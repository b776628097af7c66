#![no_std]
//! Combinatorial engine for Auslander-Reiten quivers of higher cluster
//! categories of Dynkin type and their quotients by τ-stable vertex sets.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cluster;
pub mod dynkin;
pub mod error;
pub mod linalg;
pub mod meshhom;
pub mod theorems;
pub mod tquiver;
mod unionfind;
pub mod ztrans;

pub use cluster::{
    cluster_quiver, cluster_spec, shape_classify, ClusterQuiverSpec, ShapeReport, Twist,
};
pub use dynkin::{AutomorphismKind, DiagramAutomorphism, DynkinDiagram, Family};
pub use error::{Error, Result};
pub use meshhom::{hammock, hom_matrix, oracle_hom_matrix, HammockFunction, HomMatrix};
pub use theorems::{
    corollary_params, search_quotients, verify_theorem_a, verify_theorem_d, verify_theorem_e,
    ClusterRef, DeletionWitness, ECase, Hypothesis, VerificationReport,
};
pub use tquiver::{
    is_isomorphic, orbit_quiver, Covering, Deletion, QuiverMeta, TranslationQuiver,
    ValidationReport,
};
pub use ztrans::{AffineAutomorphism, ZVertex};
