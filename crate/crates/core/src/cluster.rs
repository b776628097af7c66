//! AR quivers of `u`-cluster categories, `ZΔ / ⟨τ^{-1} Σ^u⟩`, and their
//! global shape.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::dynkin::{DynkinDiagram, Family};
use crate::error::{Error, Result};
use crate::tquiver::{orbit_quiver, TranslationQuiver};
use crate::ztrans::phi;

/// Diagram part of `τ^{-1} Σ^u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Twist {
    None,
    /// Reflection in the centre line: the Möbius band of types `A` and `E_6`.
    Reflect,
    /// The two exceptional rows of `D_n` are exchanged.
    SwapExceptional,
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Twist::None => "none",
            Twist::Reflect => "reflect",
            Twist::SwapExceptional => "swap-exceptional",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterQuiverSpec {
    pub family: Family,
    pub rank: u32,
    pub level: u32,
    /// `φ^pairing = τ^{-period}` where `pairing` is the order of the diagram
    /// part of `φ`; the rectangle length is `period / pairing`.
    pub period: u64,
    pub pairing: u64,
    pub twist: Twist,
}

impl ClusterQuiverSpec {
    /// Rectangle length as a reduced fraction `(numerator, denominator)`.
    pub fn rectangle_length(&self) -> (u64, u64) {
        let g = gcd(self.period, self.pairing);
        (self.period / g, self.pairing / g)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn cluster_spec(d: &DynkinDiagram, u: u32) -> Result<ClusterQuiverSpec> {
    if u == 0 {
        return Err(Error::InvalidLevel(u));
    }
    let f = phi(d, u);
    let pairing = f.diagram_part().order();
    let period = f
        .power(pairing)
        .as_translation()
        .expect("a power of φ is a pure translation") as u64;
    let odd = u % 2 == 1;
    let twist = match (d.family(), d.rank()) {
        (Family::A, _) | (Family::E, 6) if odd => Twist::Reflect,
        (Family::D, n) if odd && n % 2 == 1 => Twist::SwapExceptional,
        _ => Twist::None,
    };
    Ok(ClusterQuiverSpec {
        family: d.family(),
        rank: d.rank(),
        level: u,
        period,
        pairing: u64::from(pairing),
        twist,
    })
}

/// The AR quiver of the `u`-cluster category of the given Dynkin type.
pub fn cluster_quiver(
    family: Family,
    rank: u32,
    u: u32,
) -> Result<(TranslationQuiver, ClusterQuiverSpec)> {
    let d = DynkinDiagram::new(family, rank)?;
    let spec = cluster_spec(&d, u)?;
    let mut q = orbit_quiver(&d, &phi(&d, u))?;
    q.meta_mut().level = Some(u);
    q.meta_mut().standard = true;
    Ok((q, spec))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub band_width: u32,
    pub length: (u64, u64),
    pub twist: Twist,
    pub tau_orbit_count: usize,
    /// Lengths of the τ-orbits through the two exceptional rows (type `D`
    /// only), in orbit order.
    pub exceptional_orbit_lengths: Vec<usize>,
}

/// Reads the τ-orbit structure off `q` and checks it against `spec`.
pub fn shape_classify(q: &TranslationQuiver, spec: &ClusterQuiverSpec) -> Result<ShapeReport> {
    let d = DynkinDiagram::new(spec.family, spec.rank)?;
    let mismatch = |what: alloc::string::String| Err(Error::SpecMismatch(what));

    if q.len() as u64 * spec.pairing != u64::from(spec.rank) * spec.period {
        return mismatch(format!(
            "{} vertices, expected rank x length = {} x {}/{}",
            q.len(),
            spec.rank,
            spec.period,
            spec.pairing
        ));
    }

    let f = phi(&d, spec.level);
    let g = f.diagram_part();
    let orbits = q.tau_orbits();
    let row_of = |v: usize| q.label(v).map(|z| z.j);

    // one τ-orbit per cycle of the diagram part on the rows
    let mut row_cycles: BTreeSet<BTreeSet<u32>> = BTreeSet::new();
    for j in d.vertices() {
        row_cycles.insert([j, g.apply(j)].into_iter().collect());
    }
    if orbits.len() != row_cycles.len() {
        return mismatch(format!(
            "{} tau-orbits, expected {}",
            orbits.len(),
            row_cycles.len()
        ));
    }
    for orbit in &orbits {
        let rows: BTreeSet<u32> = orbit.iter().filter_map(|&v| row_of(v)).collect();
        if !row_cycles.contains(&rows) {
            return mismatch(format!("tau-orbit covers rows {rows:?}"));
        }
        let expected = spec.period * rows.len() as u64 / spec.pairing;
        if orbit.len() as u64 != expected {
            return mismatch(format!(
                "tau-orbit of length {}, expected {expected}",
                orbit.len()
            ));
        }
    }

    let exceptional_orbit_lengths: Vec<usize> = if spec.family == Family::D {
        let n = spec.rank;
        orbits
            .iter()
            .filter(|o| {
                o.iter()
                    .any(|&v| matches!(row_of(v), Some(j) if j == n || j == n - 1))
            })
            .map(Vec::len)
            .collect()
    } else {
        Vec::new()
    };
    if spec.family == Family::D {
        let swapped = spec.twist == Twist::SwapExceptional;
        let expected_count = if swapped { 1 } else { 2 };
        if exceptional_orbit_lengths.len() != expected_count {
            return mismatch(format!(
                "{} exceptional tau-orbits with twist {}",
                exceptional_orbit_lengths.len(),
                spec.twist
            ));
        }
    }

    Ok(ShapeReport {
        band_width: spec.rank,
        length: spec.rectangle_length(),
        twist: spec.twist,
        tau_orbit_count: orbits.len(),
        exceptional_orbit_lengths,
    })
}
