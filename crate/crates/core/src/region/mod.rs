//! Closed-form membership in the total-semi-stability region, the contraction flow and
//! heart classification.

mod heart;

pub use heart::{classify_heart, HeartClass, InducedQuiver};

use crate::charge::{Scaled, Tsd};
use crate::derive::{listed_instances, IntForm, LinearForm, ListedInstance, Reading};
use num_bigint::BigInt;
use crate::error::{Error, Result};
use crate::model::Lattice;
use crate::num::{fmt_q, Int, Q};
use crate::quiver_core::WeightData;
use crate::with_scaled;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// One failed inequality (closed form) or arrow (oracle), with the two compared values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub id: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub indices: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub member: bool,
    pub nondegenerate: bool,
    /// Vertex `τᵏX` with vanishing charge, as `"X@k"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate_at: Option<String>,
    pub violations: Vec<Violation>,
    /// Shift range the oracle scanned.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
}

impl MembershipReport {
    pub(crate) fn new(nondegenerate: bool, degenerate_at: Option<String>, violations: Vec<Violation>) -> Self {
        Self { member: nondegenerate && violations.is_empty(), nondegenerate, degenerate_at, violations, window: None }
    }
}

/// The listed system of a type with instances grouped by canonical form.
#[derive(Debug)]
pub struct CompiledRegion {
    pub instances: Vec<ListedInstance>,
    pub forms: Vec<IntForm>,
    /// Instances sharing each form.
    pub groups: Vec<Vec<usize>>,
    /// Integer `(coefficients, constant)` of each instance's two sides.
    sides: Vec<[(Vec<i64>, i64); 2]>,
    small_ok: bool,
}

fn integral(f: &LinearForm) -> (Vec<i64>, i64) {
    let int = |x: &Q| {
        assert!(x.is_integer(), "listed inequalities have integer coefficients");
        i64::try_from(x.to_integer()).expect("coefficient fits i64")
    };
    (f.coeffs.iter().map(int).collect(), int(&f.constant))
}

impl CompiledRegion {
    pub fn new(w: &WeightData) -> Self {
        let instances = listed_instances(w, Reading::Coupled);
        let mut index: HashMap<IntForm, usize> = HashMap::new();
        let mut forms = Vec::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (t, inst) in instances.iter().enumerate() {
            let f = inst.slack().canonical();
            let g = *index.entry(f.clone()).or_insert_with(|| {
                forms.push(f);
                groups.push(Vec::new());
                forms.len() - 1
            });
            groups[g].push(t);
        }
        let sides: Vec<[(Vec<i64>, i64); 2]> = instances.iter().map(|i| [integral(&i.lhs), integral(&i.rhs)]).collect();
        let small_ok = forms
            .iter()
            .map(|f| (&f.coeffs, f.constant))
            .chain(sides.iter().flatten().map(|(c, k)| (c, *k)))
            .all(|(c, k)| c.iter().chain([&k]).all(|x| x.abs() < 1 << 16));
        Self { instances, forms, groups, sides, small_ok }
    }

    pub fn cached(w: &WeightData) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<WeightData, Arc<CompiledRegion>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("region cache poisoned");
        guard.entry(w.clone()).or_insert_with(|| Arc::new(Self::new(w))).clone()
    }

    /// Every canonical form evaluated at the datum, as `(denominator, numerators)`.
    pub fn form_values(&self, tsd: &Tsd) -> (BigInt, Vec<BigInt>) {
        let sp = Scaled::from_tsd(tsd, self.small_ok);
        with_scaled!(&sp, p => {
            (p.den.to_big(), self.forms.iter().map(|f| p.form(&f.coeffs, f.constant).to_big()).collect())
        })
    }
}

fn scaled_for(tsd: &Tsd, lat: &Lattice, reg: &CompiledRegion) -> Scaled {
    Scaled::from_tsd(tsd, lat.charges.small_ok() && reg.small_ok)
}

/// Closed-form membership: non-degeneracy plus every listed inequality (non-strict).
pub fn check_membership(tsd: &Tsd) -> Result<MembershipReport> {
    let lat = Lattice::cached(tsd.weights())?;
    let reg = CompiledRegion::cached(tsd.weights());
    let sp = scaled_for(tsd, &lat, &reg);
    let (degenerate, violations) = with_scaled!(&sp, p => {
        let side = |(c, k): &(Vec<i64>, i64)| fmt_q(&Q::new(p.form(c, *k).to_big(), p.den.to_big()));
        let mut violations = Vec::new();
        for (g, f) in reg.forms.iter().enumerate() {
            if !p.form(&f.coeffs, f.constant).is_negative() {
                continue;
            }
            for &t in &reg.groups[g] {
                let inst = &reg.instances[t];
                let [lhs, rhs] = &reg.sides[t];
                violations.push(Violation { id: inst.id.clone(), indices: inst.indices.clone(), lhs: side(lhs), rhs: side(rhs) });
            }
        }
        (p.degenerate_vertex(&lat.charges), violations)
    });
    let mut violations = violations;
    violations.sort_by(|a, b| a.id.cmp(&b.id));
    let at = degenerate.map(|(k, u)| format!("{}@{k}", lat.section.label(u)));
    Ok(MembershipReport::new(degenerate.is_none(), at, violations))
}

/// Membership verdict only; skips building the violation list.
pub fn is_member(tsd: &Tsd) -> Result<bool> {
    let lat = Lattice::cached(tsd.weights())?;
    let reg = CompiledRegion::cached(tsd.weights());
    let sp = scaled_for(tsd, &lat, &reg);
    Ok(with_scaled!(&sp, p => {
        reg.forms.iter().all(|f| !p.form(&f.coeffs, f.constant).is_negative())
            && p.degenerate_vertex(&lat.charges).is_none()
    }))
}

/// `Z(τᵏX) ≠ 0` on every vector bundle of the section orbits.
pub fn nondegenerate(tsd: &Tsd) -> Result<bool> {
    if !tsd.is_real() {
        return Ok(true);
    }
    let lat = Lattice::cached(tsd.weights())?;
    let sp = Scaled::from_tsd(tsd, lat.charges.small_ok());
    Ok(with_scaled!(&sp, p => p.degenerate_vertex(&lat.charges).is_none()))
}

/// Linear interpolation `t·tsd1 + (1−t)·tsd0` of partitions and `z`.
pub fn contraction_flow(tsd0: &Tsd, tsd1: &Tsd, t: &Q) -> Result<Tsd> {
    if tsd0.weights() != tsd1.weights() {
        return Err(Error::WeightMismatch);
    }
    if !tsd0.z_im().is_positive() {
        return Err(Error::NotNonConcentrated);
    }
    if t.is_negative() || *t > Q::one() {
        return Err(Error::InvalidDatum(format!("flow parameter {} outside [0, 1]", fmt_q(t))));
    }
    if t.is_zero() {
        return Ok(tsd0.clone());
    }
    if t.is_one() {
        return Ok(tsd1.clone());
    }
    let s = Q::one() - t;
    let lerp = |a: &Q, b: &Q| t * b + &s * a;
    let mu = tsd0
        .branches()
        .iter()
        .zip(tsd1.branches())
        .map(|(p0, p1)| p0.iter().zip(p1).map(|(a, b)| lerp(a, b)).collect())
        .collect();
    Tsd::new(tsd0.weights().clone(), mu, lerp(tsd0.z_re(), tsd1.z_re()), lerp(tsd0.z_im(), tsd1.z_im()))
}
