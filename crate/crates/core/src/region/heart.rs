use crate::charge::{Scaled, Tsd};
use crate::error::{Error, Result};
use crate::model::Lattice;
use crate::quiver_core::{euclidean_diagram, StarQuiver};
use crate::with_scaled;
use num_traits::Signed;
use petgraph::algo::is_isomorphic;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The quiver Γ′ through the cut, with vertices named after the τ-orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum HeartClass {
    NonConcentrated,
    /// `section_cut[u] = j` picks `τʲX_u`, the last object of its orbit with negative charge.
    Concentrated { section_cut: BTreeMap<String, i64>, quiver: InducedQuiver },
}

impl HeartClass {
    pub fn is_concentrated(&self) -> bool {
        matches!(self, Self::Concentrated { .. })
    }
}

/// Non-concentrated iff `Im z > 0`; otherwise the heart is a single slice cut out by the
/// sign change of `Z` along each τ-orbit.
pub fn classify_heart(tsd: &Tsd) -> Result<HeartClass> {
    let lat = Lattice::cached(tsd.weights())?;
    let sp = Scaled::from_tsd(tsd, lat.charges.small_ok());
    let table = &lat.charges;
    if let Some((k, u)) = with_scaled!(&sp, p => p.degenerate_vertex(table)) {
        return Err(Error::Degenerate(format!("Z vanishes at {}@{k}", lat.section.label(u))));
    }
    if tsd.z_im().is_positive() {
        return Ok(HeartClass::NonConcentrated);
    }
    let p = lat.period();
    let mut cut = Vec::with_capacity(lat.section.len());
    for u in 0..lat.section.len() {
        let first = with_scaled!(&sp, s => s.first_positive(table, u));
        let lo = *first.iter().min().expect("period is positive");
        let hi = *first.iter().max().expect("period is positive");
        if hi - lo >= p {
            return Err(not_a_section(tsd, format!("orbit of {} changes sign more than once", lat.section.label(u)))?);
        }
        cut.push(lo - 1);
    }
    let quiver = match induced_quiver(&lat.section, &cut) {
        Ok(q) => q,
        Err(m) => return Err(not_a_section(tsd, m)?),
    };
    let diagram = euclidean_diagram(tsd.weights().euclidean_type());
    if !is_isomorphic(&lat.section.underlying_graph(), &diagram) {
        return Err(Error::Invariant("section graph is not the Euclidean diagram".into()));
    }
    let section_cut = cut.iter().enumerate().map(|(u, &j)| (lat.section.label(u).to_string(), j)).collect();
    Ok(HeartClass::Concentrated { section_cut, quiver })
}

/// A broken cut on a member contradicts the classification; outside the region it only
/// means the datum was not totally semi-stable.
fn not_a_section(tsd: &Tsd, msg: String) -> Result<Error> {
    Ok(if super::is_member(tsd)? {
        Error::Invariant(msg)
    } else {
        Error::InvalidDatum(format!("datum is outside the region: {msg}"))
    })
}

fn induced_quiver(section: &StarQuiver, cut: &[i64]) -> std::result::Result<InducedQuiver, String> {
    let name = |u: usize| section.label(u).to_string();
    let mut arrows = Vec::with_capacity(section.arrows.len());
    for &(u, v) in &section.arrows {
        // the mesh joins (k,u) -> (k,v) and (k+1,v) -> (k,u)
        if cut[u] == cut[v] {
            arrows.push((name(u), name(v)));
        } else if cut[v] == cut[u] + 1 {
            arrows.push((name(v), name(u)));
        } else {
            return Err(format!("cut at {}@{} and {}@{} is not connected", name(u), cut[u], name(v), cut[v]));
        }
    }
    Ok(InducedQuiver { vertices: (0..section.len()).map(name).collect(), arrows })
}
