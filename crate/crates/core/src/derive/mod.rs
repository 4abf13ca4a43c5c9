//! Symbolic charges, the inequalities carried by arrows, and comparison of the derived
//! system with the closed-form families.

pub mod fm;
pub mod form;
pub mod listed;

pub use fm::{Feasibility, Implication};
pub use form::{Inequality, IntForm, LinearForm, Sense};
pub use listed::{listed_instances, ListedInstance, Reading};

use crate::batch;
use crate::charge::charge_form;
use crate::error::{Error, Result};
use crate::model::Lattice;
use crate::num::{fmt_q, Q};
use crate::quiver_core::{ar_window, EuclideanType, WeightData};
use num_traits::Signed;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

/// `Z = r·z + s(μ)` with `s` affine in the free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicCharge {
    pub r: Q,
    pub s: LinearForm,
}

/// Charge of `τᵏ X_u` as a function of the datum.
pub fn symbolic_charge(lat: &Lattice, u: usize, k: i64) -> Result<SymbolicCharge> {
    if u >= lat.section.len() {
        return Err(Error::IndexOutOfRange(format!("vertex {u} of {}", lat.section.len())));
    }
    let f = charge_form(&lat.cox, &lat.cox.shifted_class(k, u))?;
    Ok(SymbolicCharge { r: f.r, s: LinearForm { coeffs: f.lin, constant: f.cst } })
}

/// `φ(X) ≤ φ(Y)` for `Im z > 0`, i.e. `s_X·r_Y − s_Y·r_X ≥ 0`. Both ranks must be positive.
pub fn arrow_inequality(x: &SymbolicCharge, y: &SymbolicCharge, provenance: impl Into<String>) -> Result<Inequality> {
    if !x.r.is_positive() || !y.r.is_positive() {
        return Err(Error::NonPositiveRank);
    }
    let form = x.s.scale(&y.r).sub(&y.s.scale(&x.r));
    Ok(Inequality { form: form.canonical(), sense: Sense::NonStrict, provenance: provenance.into() })
}

/// Arrow inequalities for every arrow with base shift in `[k_lo, k_hi)`, deduplicated by
/// canonical form (first provenance kept), zero forms dropped.
pub fn arrow_forms(lat: &Lattice, k_lo: i64, k_hi: i64) -> Result<Vec<Inequality>> {
    if k_lo >= k_hi {
        return Ok(Vec::new());
    }
    let win = ar_window(&lat.cox, &lat.section, k_lo, k_hi);
    let mut charges = BTreeMap::new();
    let mut charge = |v: (i64, usize)| -> Result<SymbolicCharge> {
        if let Some(c) = charges.get(&v) {
            return Ok(Clone::clone(c));
        }
        let c = symbolic_charge(lat, v.1, v.0)?;
        charges.insert(v, c.clone());
        Ok(c)
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in win.arrows.iter().filter(|a| a.base < k_hi) {
        let ineq = arrow_inequality(&charge(a.from)?, &charge(a.to)?, a.id(&lat.section))?;
        if ineq.form.is_zero() || !seen.insert(ineq.form.clone()) {
            continue;
        }
        out.push(ineq);
    }
    Ok(out)
}

/// True when positivity of the parts alone forces the inequality.
pub fn ambient_implied(w: &WeightData, ineq: &Inequality) -> Result<bool> {
    let amb = fm::ambient_system(w);
    Ok(fm::implies(w.free_vars(), &amb, &[], &(ineq.form.clone(), ineq.sense))? == Implication::Implied)
}

/// The derived region: one τ-period of arrow inequalities, minus those implied by positivity.
/// Empty for type A.
pub fn derive_region(w: &WeightData) -> Result<Vec<Inequality>> {
    let lat = Lattice::cached(w)?;
    let forms = arrow_forms(&lat, 0, lat.period())?;
    let keep = batch::map(&forms, |f| ambient_implied(w, f).map(|t| !t));
    let mut out = Vec::new();
    for (f, k) in forms.into_iter().zip(keep) {
        if k? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Listed families under a reading, as canonical half-spaces (first instance id as provenance).
pub fn listed_region(w: &WeightData, reading: Reading) -> Vec<Inequality> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for inst in listed_instances(w, reading) {
        let form = inst.slack().canonical();
        if form.is_zero() || !seen.insert(form.clone()) {
            continue;
        }
        out.push(Inequality { form, sense: Sense::NonStrict, provenance: inst.id });
    }
    out
}

/// An inequality of one system together with a point of the other system that violates it.
#[derive(Debug, Clone, Serialize)]
pub struct Separation {
    pub inequality: Inequality,
    pub pretty: String,
    /// Free-variable values, by variable name.
    pub witness: BTreeMap<String, String>,
    #[serde(skip)]
    pub point: Vec<Q>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// Inequalities of the first system that fail somewhere on the second.
    pub first_not_implied: Vec<Separation>,
    pub second_not_implied: Vec<Separation>,
}

fn one_direction(w: &WeightData, from: &[Inequality], to: &[Inequality]) -> Result<Vec<Separation>> {
    let nv = w.free_vars();
    let amb = fm::ambient_system(w);
    let premises: Vec<(IntForm, Sense)> = to.iter().map(|i| (i.form.clone(), i.sense)).collect();
    let present: HashSet<(&IntForm, Sense)> = to.iter().map(|i| i.key()).collect();
    let verdicts = batch::map(from, |ineq| {
        if present.contains(&ineq.key()) {
            return Ok(Implication::Implied);
        }
        fm::implies(nv, &amb, &premises, &(ineq.form.clone(), ineq.sense))
    });
    let mut out = Vec::new();
    for (ineq, v) in from.iter().zip(verdicts) {
        if let Implication::Refuted(point) = v? {
            let witness =
                point.iter().enumerate().map(|(t, x)| {
                    let (i, j) = w.var_at(t);
                    (w.var_name(i, j), fmt_q(x))
                }).collect();
            out.push(Separation { inequality: ineq.clone(), pretty: ineq.form.pretty(w), witness, point });
        }
    }
    Ok(out)
}

/// Decides whether two systems cut out the same subset of the open μ-simplex product.
pub fn polytope_equivalent(w: &WeightData, first: &[Inequality], second: &[Inequality]) -> Result<EquivalenceReport> {
    if w.free_vars() > fm::MAX_VARS {
        return Err(Error::TooManyVariables(w.free_vars()));
    }
    let a = one_direction(w, first, second)?;
    let b = one_direction(w, second, first)?;
    Ok(EquivalenceReport { equivalent: a.is_empty() && b.is_empty(), first_not_implied: a, second_not_implied: b })
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadingComparison {
    pub reading: Reading,
    pub listed: usize,
    pub equivalent: bool,
}

/// Everything `derive` reports for one weight type.
#[derive(Debug, Clone, Serialize)]
pub struct DeriveReport {
    #[serde(rename = "type")]
    pub type_tag: String,
    pub weights: Vec<u32>,
    pub period: u64,
    pub arrow_forms: usize,
    pub derived: Vec<DerivedLine>,
    pub listed: usize,
    pub equivalent: bool,
    pub comparison: EquivalenceReport,
    pub readings: Vec<ReadingComparison>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivedLine {
    #[serde(flatten)]
    pub inequality: Inequality,
    pub pretty: String,
}

pub fn derive_report(w: &WeightData) -> Result<DeriveReport> {
    let lat = Lattice::cached(w)?;
    let all = arrow_forms(&lat, 0, lat.period())?;
    let derived = derive_region(w)?;
    let listed = listed_region(w, Reading::Coupled);
    let comparison = polytope_equivalent(w, &derived, &listed)?;
    let mut readings = Vec::new();
    // only E7 and E8 have lines where a ± touches several index families
    if matches!(w.euclidean_type(), EuclideanType::E(7) | EuclideanType::E(8)) {
        for r in [Reading::Coupled, Reading::Anti, Reading::Independent] {
            let sys = listed_region(w, r);
            let eq = r == Reading::Coupled && comparison.equivalent
                || polytope_equivalent(w, &derived, &sys)?.equivalent;
            readings.push(ReadingComparison { reading: r, listed: sys.len(), equivalent: eq });
        }
    }
    Ok(DeriveReport {
        type_tag: w.euclidean_type().tag(),
        weights: w.weights().to_vec(),
        period: w.period(),
        arrow_forms: all.len(),
        derived: derived.iter().map(|i| DerivedLine { inequality: i.clone(), pretty: i.form.pretty(w) }).collect(),
        listed: listed.len(),
        equivalent: comparison.equivalent,
        comparison,
        readings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qi};
    use crate::quiver_core::classify_weights;

    fn lat(ws: &[u32]) -> std::sync::Arc<Lattice> {
        Lattice::cached(&classify_weights(ws).unwrap()).unwrap()
    }

    #[test]
    fn e6_first_arrow() {
        let l = lat(&[2, 3, 3]);
        let x0 = l.section.index_of("X0").unwrap();
        let x1 = l.section.index_of("X1").unwrap();
        let zx0 = symbolic_charge(&l, x0, 0).unwrap();
        let zx1 = symbolic_charge(&l, x1, 0).unwrap();
        assert_eq!(zx0.r, qi(1));
        assert!(zx0.s.is_zero());
        assert_eq!(zx1.r, q(2, 3));
        let ineq = arrow_inequality(&zx0, &zx1, "X0->X1@0").unwrap();
        // a1 + (b1 − b3) + (c1 − c3) ≥ 0, one of the absolute-value lines
        assert_eq!(ineq.form.pretty(&l.weights), "a1 + 2b1 + b2 + 2c1 + c2 - 2");
        let listed = listed_instances(&l.weights, Reading::Coupled);
        let inst = listed.iter().find(|i| i.id == "E6.L2.i=1.j=3.k=3.sign=-").unwrap();
        assert_eq!(inst.slack().canonical(), ineq.form);
    }

    #[test]
    fn non_positive_rank_is_rejected() {
        let l = lat(&[2, 2, 2]);
        let s = SymbolicCharge { r: qi(0), s: LinearForm::zero(l.weights.free_vars()) };
        let p = symbolic_charge(&l, 0, 0).unwrap();
        assert!(matches!(arrow_inequality(&s, &p, ""), Err(Error::NonPositiveRank)));
    }

    #[test]
    fn one_period_suffices() {
        for ws in [[2u32, 2, 3], [2, 3, 3], [2, 3, 4]] {
            let l = lat(&ws);
            let p = l.period();
            let one: HashSet<_> = arrow_forms(&l, 0, p).unwrap().into_iter().map(|i| i.form).collect();
            let two: HashSet<_> = arrow_forms(&l, 0, 2 * p).unwrap().into_iter().map(|i| i.form).collect();
            let shifted: HashSet<_> = arrow_forms(&l, -3, p - 3).unwrap().into_iter().map(|i| i.form).collect();
            assert_eq!(one, two, "{ws:?}");
            assert_eq!(one, shifted, "{ws:?}");
        }
    }

    #[test]
    fn type_a_region_is_everything() {
        for ws in [[3u32, 2], [4, 1], [2, 2]] {
            assert!(derive_region(&classify_weights(&ws).unwrap()).unwrap().is_empty(), "{ws:?}");
        }
    }

    #[test]
    fn e6_derived_equals_listed_syntactically() {
        let w = classify_weights(&[2, 3, 3]).unwrap();
        let d: HashSet<_> = derive_region(&w).unwrap().into_iter().map(|i| i.form).collect();
        let l: HashSet<_> = listed_region(&w, Reading::Coupled).into_iter().map(|i| i.form).collect();
        assert_eq!(d, l);
    }

    #[test]
    fn separation_witness_is_checked() {
        let w = classify_weights(&[2, 2, 3]).unwrap();
        let listed = listed_region(&w, Reading::Coupled);
        let rep = polytope_equivalent(&w, &listed, &listed[..2]).unwrap();
        assert!(!rep.equivalent);
        for s in &rep.first_not_implied {
            assert!(!s.inequality.holds(&s.point));
            assert!(listed[..2].iter().all(|i| i.holds(&s.point)));
        }
    }
}
