use super::lattice::IntMatrix;
use super::quiver::StarQuiver;
use super::weights::{EuclideanType, WeightData};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Neg, Sub};

/// Integer vector in the dimension-vector basis of the opposite of the section quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KClass(pub Vec<i64>);

impl KClass {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn basis(n: usize, u: usize) -> Self {
        let mut v = vec![0; n];
        v[u] = 1;
        Self(v)
    }

    pub fn scale(&self, a: i64) -> Self {
        Self(self.0.iter().map(|x| a * x).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, o: &KClass) -> KClass {
        KClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, o: &KClass) -> KClass {
        KClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass(self.0.iter().map(|a| -a).collect())
    }
}

/// Lattice data of one weight type: Euler form, Coxeter matrix, imaginary root,
/// rank functional, the line bundle `P₀`, the exceptional simples and the charge basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterData {
    pub weights: WeightData,
    pub euler: IntMatrix,
    pub euler_inv: IntMatrix,
    /// Symmetrized Euler form `E + Eᵀ`.
    pub cartan: IntMatrix,
    pub phi: IntMatrix,
    pub phi_inv: IntMatrix,
    pub delta: KClass,
    /// `r(v) = vᵀ E δ`; integer valued with `r(P₀) = 1`.
    pub rank_functional: Vec<i64>,
    pub period: u64,
    /// `Φᵖ = I + κ·δ·rᵀ`.
    pub kappa: i64,
    /// Classes `[X_u]` of the section vertices (projectives of the opposite quiver).
    pub section_classes: Vec<KClass>,
    pub p0: KClass,
    /// Section vertex whose charge is the datum's `z`: `P0` for A and D, `X0` for E.
    pub anchor: usize,
    /// `simples[i-1][j-1] = [Sᵢʲ]`, with `Φ·[Sᵢʲ] = [Sᵢ^{j−1}]`.
    pub simples: Vec<Vec<KClass>>,
    /// Inverse of the matrix with columns `P₀, δ, Sᵢʲ (j < wᵢ)`.
    pub charge_basis_inv: IntMatrix,
}

/// Where a line bundle `O(x_i)` sits on the section: `τᵏ X_u`.
struct Pin {
    branch: usize,
    vertex: &'static str,
    shift: i64,
}

fn pins(w: &WeightData) -> (Option<&'static str>, Vec<Pin>) {
    let pin = |branch, vertex, shift| Pin { branch, vertex, shift };
    match w.euclidean_type() {
        EuclideanType::A { p, q } => {
            let at = |i: usize, wi: u32| if wi > 1 { if i == 1 { "P1^1" } else { "P2^1" } } else { "Pinf" };
            (Some("P0"), vec![pin(1, at(1, p), 0), pin(2, at(2, q), 0)])
        }
        EuclideanType::D(_) => (Some("P0"), vec![pin(1, "P1^1", 0), pin(2, "P2^1", 0)]),
        EuclideanType::E(6) => (None, vec![pin(2, "X5", 0), pin(3, "X6", 0)]),
        // X₆ = τ⁻¹P₃¹
        EuclideanType::E(7) => (None, vec![pin(2, "X7", 0), pin(3, "X6", 1)]),
        // X₈ = τP₂¹
        EuclideanType::E(_) => (None, vec![pin(2, "X8", -1)]),
    }
}

impl CoxeterData {
    pub fn n(&self) -> usize {
        self.euler.dim()
    }

    pub fn euler_form(&self, x: &KClass, y: &KClass) -> i64 {
        self.euler.bilinear(&x.0, &y.0)
    }

    pub fn rank(&self, v: &KClass) -> i64 {
        v.0.iter().zip(&self.rank_functional).map(|(a, b)| a * b).sum()
    }

    pub fn apply_phi(&self, v: &KClass) -> KClass {
        KClass(self.phi.mul_vec(&v.0))
    }

    pub fn apply_phi_inv(&self, v: &KClass) -> KClass {
        KClass(self.phi_inv.mul_vec(&v.0))
    }

    /// `Φᵏ·v` for any integer `k`.
    pub fn tau_power(&self, k: i64, v: &KClass) -> KClass {
        let mut out = v.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k > 0 { self.apply_phi(&out) } else { self.apply_phi_inv(&out) };
        }
        out
    }

    /// `[τᵏ X_u]`.
    pub fn shifted_class(&self, k: i64, u: usize) -> KClass {
        self.tau_power(k, &self.section_classes[u])
    }

    /// Coordinates `(c₀, c_δ, c_i^j …)` in the charge basis.
    pub fn charge_coords(&self, v: &KClass) -> Vec<i64> {
        self.charge_basis_inv.mul_vec(&v.0)
    }

    pub fn anchor_class(&self) -> &KClass {
        &self.section_classes[self.anchor]
    }

    fn is_simple_like(&self, v: &KClass, w: u32) -> bool {
        if self.rank(v) != 0 || self.euler_form(v, v) != 1 {
            return false;
        }
        let mut u = v.clone();
        let mut total = v.clone();
        for _ in 1..w {
            u = self.apply_phi(&u);
            if &u == v {
                return false;
            }
            total = &total + &u;
        }
        &self.apply_phi(&u) == v && total == self.delta
    }

    fn orbit(&self, v: &KClass) -> Vec<KClass> {
        let mut out = vec![v.clone()];
        let mut u = self.apply_phi(v);
        while &u != v {
            out.push(u.clone());
            u = self.apply_phi(&u);
        }
        out
    }
}

/// Builds the lattice data for a section quiver.
pub fn coxeter_data(section: &StarQuiver, w: &WeightData) -> Result<CoxeterData> {
    let n = section.len();
    if n != w.rank() {
        return Err(Error::DimensionMismatch { expected: w.rank(), got: n });
    }
    if !section.is_acyclic() {
        return Err(Error::Invariant("section quiver has an oriented cycle".into()));
    }
    let mut euler = IntMatrix::identity(n);
    for &(u, v) in &section.arrows {
        // a section arrow u → v is an arrow v → u of the opposite quiver
        euler[(v, u)] -= 1;
    }
    let det = euler.det();
    let euler_inv = euler.inverse().ok_or(Error::SingularEuler(det))?;
    let phi = euler_inv.mul(&euler.transpose()).neg();
    let phi_inv = phi.inverse().ok_or_else(|| Error::Invariant("Coxeter matrix not invertible".into()))?;
    let cartan = euler.add(&euler.transpose());

    let ker = cartan.kernel();
    if ker.len() != 1 {
        return Err(Error::Invariant(format!("radical has dimension {}", ker.len())));
    }
    let mut delta = ker.into_iter().next().unwrap();
    if delta.iter().any(|x| *x < 0) {
        delta = delta.into_iter().map(|x| -x).collect();
    }
    if delta.iter().any(|x| *x <= 0) {
        return Err(Error::Invariant("imaginary root is not sincere".into()));
    }
    let rank_functional = euler.mul_vec(&delta);
    let delta = KClass(delta);
    let section_classes: Vec<KClass> = (0..n).map(|u| KClass(euler_inv.row(u).to_vec())).collect();

    let period = w.period();
    let (p0_pin, pinned) = pins(w);
    let anchor = match w.euclidean_type() {
        EuclideanType::E(_) => section.index_of("X0"),
        _ => section.index_of("P0"),
    }
    .ok_or_else(|| Error::Invariant("section lacks its anchor vertex".into()))?;

    let mut cox = CoxeterData {
        weights: w.clone(),
        euler,
        euler_inv,
        cartan,
        phi,
        phi_inv,
        delta,
        rank_functional,
        period,
        kappa: 0,
        section_classes,
        p0: KClass::zero(n),
        anchor,
        simples: Vec::new(),
        charge_basis_inv: IntMatrix::identity(n),
    };
    cox.kappa = find_kappa(&cox)?;

    let vertex = |label: &str| section.index_of(label).ok_or_else(|| Error::Invariant(format!("missing vertex {label}")));
    let pinned_classes: Vec<(usize, KClass)> = pinned
        .iter()
        .map(|p| Ok((p.branch, cox.shifted_class(p.shift, vertex(p.vertex)?))))
        .collect::<Result<_>>()?;

    // Rank-one classes of the vector-bundle component within two periods of the section.
    let reach = 2 * period as i64;
    let mut line_bundles: Vec<KClass> = Vec::new();
    for u in 0..n {
        for k in -reach..=reach {
            let c = cox.shifted_class(k, u);
            if cox.rank(&c) == 1 && !line_bundles.contains(&c) {
                line_bundles.push(c);
            }
        }
    }

    cox.p0 = match p0_pin {
        Some(label) => cox.section_classes[vertex(label)?].clone(),
        None => {
            let found: Vec<&KClass> = line_bundles
                .iter()
                .filter(|c| pinned_classes.iter().all(|(i, l)| cox.is_simple_like(&(l - c), w.weight(*i))))
                .collect();
            match found.as_slice() {
                [one] => (*one).clone(),
                _ => return Err(Error::Invariant(format!("{} candidates for the structure sheaf", found.len()))),
            }
        }
    };
    if cox.rank(&cox.p0) != 1 {
        return Err(Error::Invariant("r(P0) != 1".into()));
    }

    let mut simples: Vec<Vec<KClass>> = Vec::new();
    for i in 1..=w.l() {
        let wi = w.weight(i);
        if wi == 1 {
            if let Some((_, l)) = pinned_classes.iter().find(|(b, _)| *b == i) {
                if (l - &cox.p0) != cox.delta {
                    return Err(Error::Invariant(format!("branch {i}: O(x) - O is not delta")));
                }
            }
            simples.push(vec![cox.delta.clone()]);
            continue;
        }
        let first = if let Some((_, l)) = pinned_classes.iter().find(|(b, _)| *b == i) {
            let s = l - &cox.p0;
            if !cox.is_simple_like(&s, wi) {
                return Err(Error::Invariant(format!("branch {i}: pinned line bundle gives no exceptional simple")));
            }
            s
        } else {
            let taken: Vec<KClass> = simples.iter().flatten().cloned().collect();
            let mut orbits: Vec<Vec<KClass>> = Vec::new();
            for c in &line_bundles {
                let v = c - &cox.p0;
                if cox.is_simple_like(&v, wi) && !taken.contains(&v) && !orbits.iter().any(|o| o.contains(&v)) {
                    orbits.push(cox.orbit(&v));
                }
            }
            let [orbit] = orbits.as_slice() else {
                return Err(Error::Invariant(format!("branch {i}: {} candidate tubes", orbits.len())));
            };
            // Sᵢ^{wᵢ} is the simple receiving the map from O.
            let top = orbit
                .iter()
                .find(|s| cox.euler_form(&cox.p0, s) == 1)
                .ok_or_else(|| Error::Invariant(format!("branch {i}: no simple pairs with O")))?;
            cox.apply_phi_inv(top)
        };
        let mut row = vec![first];
        for _ in 1..wi {
            let next = cox.apply_phi_inv(row.last().unwrap());
            row.push(next);
        }
        simples.push(row);
    }
    cox.simples = simples;

    // Charge basis P₀, δ, Sᵢʲ (j < wᵢ).
    let mut cols = vec![cox.p0.clone(), cox.delta.clone()];
    for i in 1..=w.l() {
        for j in 1..w.weight(i) {
            cols.push(cox.simples[i - 1][j as usize - 1].clone());
        }
    }
    let mut basis = IntMatrix::zeros(n);
    for (c, col) in cols.iter().enumerate() {
        for r in 0..n {
            basis[(r, c)] = col.0[r];
        }
    }
    cox.charge_basis_inv = basis
        .inverse()
        .ok_or_else(|| Error::Invariant(format!("charge basis is not unimodular (det {})", basis.det())))?;
    validate(&cox)?;
    Ok(cox)
}

fn find_kappa(cox: &CoxeterData) -> Result<i64> {
    let n = cox.n();
    let m = cox.phi.pow(cox.period as u32).sub(&IntMatrix::identity(n));
    let u = (0..n).find(|&u| cox.rank_functional[u] != 0).ok_or_else(|| Error::Invariant("rank functional vanishes".into()))?;
    let t = (0..n).find(|&t| cox.delta.0[t] != 0).unwrap();
    let num = m[(t, u)];
    let den = cox.delta.0[t] * cox.rank_functional[u];
    if num % den != 0 {
        return Err(Error::Invariant("Phi^p - I is not an integer multiple of delta r^T".into()));
    }
    let kappa = num / den;
    for r in 0..n {
        for c in 0..n {
            if m[(r, c)] != kappa * cox.delta.0[r] * cox.rank_functional[c] {
                return Err(Error::Invariant("Phi^p - I is not rank one along delta".into()));
            }
        }
    }
    if kappa == 0 {
        return Err(Error::Invariant("kappa vanishes".into()));
    }
    Ok(kappa)
}

fn validate(cox: &CoxeterData) -> Result<()> {
    let fail = |m: String| Err(Error::Invariant(m));
    if cox.apply_phi(&cox.delta) != cox.delta {
        return fail("Phi does not fix delta".into());
    }
    if cox.rank(&cox.delta) != 0 {
        return fail("r(delta) != 0".into());
    }
    for (i, row) in cox.simples.iter().enumerate() {
        let w = row.len();
        let total = row.iter().skip(1).fold(row[0].clone(), |acc, s| &acc + s);
        if total != cox.delta {
            return fail(format!("branch {}: simples do not sum to delta", i + 1));
        }
        for j in 0..w {
            if cox.apply_phi(&row[(j + 1) % w]) != row[j] {
                return fail(format!("branch {}: tube not cyclic", i + 1));
            }
            let expected = i64::from(j + 1 == w && w > 1);
            if w > 1 && cox.euler_form(&cox.p0, &row[j]) != expected {
                return fail(format!("branch {}: <O, S^{}> != {expected}", i + 1, j + 1));
            }
        }
    }
    Ok(())
}

/// The class `[Sᵢʲ]`; `j` is read modulo `wᵢ`, so `j = 0` names `Sᵢ^{wᵢ}`.
pub fn exceptional_simple_class(cox: &CoxeterData, i: usize, j: i64) -> Result<KClass> {
    if i == 0 || i > cox.simples.len() {
        return Err(Error::IndexOutOfRange(format!("branch {i} (l = {})", cox.simples.len())));
    }
    let jj = cox.weights.wrap(i, j);
    Ok(cox.simples[i - 1][jj as usize - 1].clone())
}
