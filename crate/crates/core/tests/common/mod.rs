//! Fixtures transcribed from the published E6/E7/E8 tables, shared by the integration
//! and acceptance suites.
#![allow(dead_code)]

use toss_core::model::Lattice;
use toss_core::quiver_core::{classify_weights, KClass};

pub struct TableCase {
    pub weights: [u32; 3],
    /// Rows `dim(X0)`, `dim(S_i^j)` keyed by `"X0"` or `"S{i}{j}"`.
    pub basis_rows: Vec<(&'static str, Vec<i64>)>,
    /// `dim(τᵏ X_u)` rows.
    pub further_dims: Vec<(i64, &'static str, Vec<i64>)>,
    /// `m·[τᵏ X_u] = row · basis`, in the order of `basis_rows`.
    pub coeff_rows: Vec<(i64, &'static str, i64, Vec<i64>)>,
}

pub fn e6() -> TableCase {
    TableCase {
        weights: [2, 3, 3],
        basis_rows: vec![
            ("X0", vec![1, 0, 0, 0, 0, 0, 0]),
            ("S11", vec![1, 1, 1, 1, 0, 0, 0]),
            ("S12", vec![2, 1, 1, 1, 1, 1, 1]),
            ("S21", vec![1, 1, 1, 0, 0, 1, 0]),
            ("S23", vec![1, 0, 1, 1, 0, 0, 1]),
            ("S31", vec![1, 1, 0, 1, 0, 0, 1]),
            ("S33", vec![1, 0, 1, 1, 0, 1, 0]),
        ],
        further_dims: vec![
            (0, "X0", vec![1, 0, 0, 0, 0, 0, 0]),
            (-1, "X0", vec![2, 1, 1, 1, 0, 0, 0]),
            (0, "X1", vec![1, 1, 0, 0, 0, 0, 0]),
            (0, "X2", vec![1, 0, 1, 0, 0, 0, 0]),
            (0, "X3", vec![1, 0, 0, 1, 0, 0, 0]),
            (0, "X4", vec![1, 1, 0, 0, 1, 0, 0]),
            (0, "X5", vec![1, 0, 1, 0, 0, 1, 0]),
            (0, "X6", vec![1, 0, 0, 1, 0, 0, 1]),
            (1, "X4", vec![0, 0, 0, 0, -1, 0, 0]),
            (1, "X5", vec![0, 0, 0, 0, 0, -1, 0]),
            (1, "X6", vec![0, 0, 0, 0, 0, 0, -1]),
        ],
        coeff_rows: vec![
            (0, "X0", 1, vec![1, 0, 0, 0, 0, 0, 0]),
            (-1, "X0", 1, vec![1, 1, 0, 0, 0, 0, 0]),
            (0, "X1", 3, vec![2, 1, 0, 1, -1, 1, -1]),
            (0, "X2", 3, vec![2, 1, 0, 1, 2, -2, -1]),
            (0, "X3", 3, vec![2, 1, 0, -2, -1, 1, 2]),
            (0, "X4", 3, vec![1, 2, 3, -1, -2, -1, -2]),
            (0, "X5", 3, vec![1, -1, 0, 2, 1, -1, 1]),
            (0, "X6", 3, vec![1, -1, 0, -1, 1, 2, 1]),
            (1, "X4", 3, vec![1, -1, -3, 2, 1, 2, 1]),
            (1, "X5", 3, vec![1, 2, 0, -1, 1, -1, -2]),
            (1, "X6", 3, vec![1, 2, 0, -1, -2, -1, 1]),
        ],
    }
}

pub fn e7() -> TableCase {
    TableCase {
        weights: [2, 3, 4],
        basis_rows: vec![
            ("X0", vec![1, 0, 0, 0, 0, 0, 0, 0]),
            ("S11", vec![2, 1, 2, 1, 1, 1, 1, 0]),
            ("S12", vec![2, 1, 1, 2, 1, 1, 0, 1]),
            ("S21", vec![2, 1, 1, 1, 1, 1, 1, 1]),
            ("S22", vec![1, 1, 1, 1, 0, 0, 0, 0]),
            ("S31", vec![1, 1, 1, 0, 1, 0, 0, 0]),
            ("S32", vec![1, 0, 1, 1, 1, 0, 1, 0]),
            ("S33", vec![1, 1, 0, 1, 0, 1, 0, 0]),
        ],
        further_dims: vec![
            (0, "X0", vec![1, 0, 0, 0, 0, 0, 0, 0]),
            (-1, "X0", vec![2, 1, 1, 1, 0, 0, 0, 0]),
            (0, "X1", vec![1, 1, 0, 0, 0, 0, 0, 0]),
            (0, "X2", vec![1, 0, 1, 0, 0, 0, 0, 0]),
            (0, "X3", vec![1, 0, 0, 1, 0, 0, 0, 0]),
            (0, "X4", vec![1, 0, 1, 0, 1, 0, 0, 0]),
            (0, "X5", vec![1, 0, 0, 1, 0, 1, 0, 0]),
            (0, "X6", vec![1, 0, 1, 0, 1, 0, 1, 0]),
            (0, "X7", vec![1, 0, 0, 1, 0, 1, 0, 1]),
            (1, "X4", vec![0, 0, 0, 0, -1, 0, -1, 0]),
            (1, "X5", vec![0, 0, 0, 0, 0, -1, 0, -1]),
            (1, "X6", vec![0, 0, 0, 0, 0, 0, -1, 0]),
            (1, "X7", vec![0, 0, 0, 0, 0, 0, 0, -1]),
        ],
        coeff_rows: vec![
            (0, "X0", 1, vec![1, 0, 0, 0, 0, 0, 0, 0]),
            (-1, "X0", 1, vec![1, 0, 0, 0, 1, 0, 0, 0]),
            (0, "X1", 2, vec![1, -1, -1, 1, 1, 1, 0, 1]),
            (0, "X2", 4, vec![3, 3, 1, -1, 1, -1, -2, -3]),
            (0, "X3", 4, vec![3, -1, 1, -1, 1, -1, 2, 1]),
            (0, "X4", 2, vec![1, 1, 1, -1, -1, 1, 0, -1]),
            (0, "X5", 2, vec![1, 1, 1, -1, -1, -1, 0, 1]),
            (0, "X6", 4, vec![1, 1, -1, 1, -1, 1, 2, -1]),
            (0, "X7", 4, vec![1, 1, 3, 1, -1, -3, -2, -1]),
            (1, "X4", 2, vec![1, 1, 1, -1, 1, -1, -2, -1]),
            (1, "X5", 2, vec![1, -1, -1, -1, 1, 1, 2, 1]),
            (1, "X6", 4, vec![1, 1, 3, -3, -1, 1, -2, -1]),
            (1, "X7", 4, vec![1, 1, -1, -3, -1, 1, 2, 3]),
        ],
    }
}

pub fn e8() -> TableCase {
    TableCase {
        weights: [2, 3, 5],
        basis_rows: vec![
            ("X0", vec![1, 0, 0, 0, 0, 0, 0, 0, 0]),
            ("S11", vec![3, 1, 2, 3, 1, 2, 2, 1, 1]),
            ("S12", vec![3, 2, 2, 2, 1, 2, 1, 1, 0]),
            ("S21", vec![2, 1, 2, 1, 1, 1, 1, 0, 0]),
            ("S22", vec![2, 1, 1, 2, 1, 1, 1, 1, 0]),
            ("S31", vec![1, 0, 1, 1, 1, 1, 0, 0, 0]),
            ("S32", vec![1, 1, 0, 1, 0, 1, 1, 0, 0]),
            ("S33", vec![1, 0, 1, 1, 0, 1, 1, 1, 0]),
            ("S34", vec![2, 1, 1, 1, 1, 1, 1, 1, 1]),
        ],
        further_dims: vec![
            (0, "X0", vec![1, 0, 0, 0, 0, 0, 0, 0, 0]),
            (-1, "X0", vec![2, 1, 1, 1, 0, 0, 0, 0, 0]),
            (0, "X1", vec![1, 1, 0, 0, 0, 0, 0, 0, 0]),
            (0, "X2", vec![1, 0, 1, 0, 0, 0, 0, 0, 0]),
            (0, "X3", vec![1, 0, 0, 1, 0, 0, 0, 0, 0]),
            (0, "X4", vec![1, 0, 1, 0, 1, 0, 0, 0, 0]),
            (0, "X5", vec![1, 0, 0, 1, 0, 1, 0, 0, 0]),
            (0, "X6", vec![1, 0, 0, 1, 0, 1, 1, 0, 0]),
            (0, "X7", vec![1, 0, 0, 1, 0, 1, 1, 1, 0]),
            (0, "X8", vec![1, 0, 0, 1, 0, 1, 1, 1, 1]),
            (1, "X4", vec![0, 0, 0, 0, -1, 0, 0, 0, 0]),
            (1, "X5", vec![0, 0, 0, 0, 0, -1, -1, -1, -1]),
            (1, "X6", vec![0, 0, 0, 0, 0, 0, -1, -1, -1]),
            (1, "X7", vec![0, 0, 0, 0, 0, 0, 0, -1, -1]),
            (1, "X8", vec![0, 0, 0, 0, 0, 0, 0, 0, -1]),
        ],
        coeff_rows: vec![
            (0, "X0", 1, vec![1, 0, 0, 0, 0, 0, 0, 0, 0]),
            (-1, "X0", 1, vec![1, 1, 1, 0, 0, -1, -1, -1, -1]),
            (0, "X1", 2, vec![1, 0, 1, 0, 0, -1, 0, -1, 0]),
            (0, "X2", 3, vec![2, 1, 1, 1, -1, -1, -2, 0, -1]),
            (0, "X3", 6, vec![5, 4, 1, -2, 2, -1, -2, -3, -4]),
            (0, "X4", 3, vec![1, -1, -1, 2, 1, 1, -1, 0, 1]),
            (0, "X5", 3, vec![2, 1, 1, -2, -1, 2, 1, 0, -1]),
            (0, "X6", 2, vec![1, 0, -1, 0, 0, 1, 2, 1, 0]),
            (0, "X7", 3, vec![1, -1, -1, -1, 1, 1, 2, 3, 1]),
            (0, "X8", 6, vec![1, 2, -1, -4, -2, 1, 2, 3, 4]),
            (1, "X4", 3, vec![1, 2, 2, -1, -2, -2, -1, 0, -2]),
            (1, "X5", 3, vec![2, 1, 1, 1, 2, -1, -2, -3, -4]),
            (1, "X6", 2, vec![1, 0, 1, 0, 0, 1, 0, -1, -2]),
            (1, "X7", 3, vec![1, -1, -1, 2, 1, 1, 2, 0, -2]),
            (1, "X8", 6, vec![1, -4, -1, 2, 4, 1, 2, 3, -2]),
        ],
    }
}

pub fn lattice(w: &[u32]) -> Lattice {
    Lattice::new(&classify_weights(w).unwrap()).unwrap()
}

/// Resolves a basis-row key to the implementation's class.
pub fn basis_class(lat: &Lattice, key: &str) -> KClass {
    if key == "X0" {
        return lat.cox.section_classes[lat.section.index_of("X0").unwrap()].clone();
    }
    let i = key[1..2].parse::<usize>().unwrap();
    let j = key[2..].parse::<usize>().unwrap();
    lat.cox.simples[i - 1][j - 1].clone()
}

/// Mismatch descriptions for one table; empty when every row reproduces exactly.
pub fn table_mismatches(case: &TableCase) -> Vec<String> {
    let lat = lattice(&case.weights);
    let mut out = Vec::new();
    for (key, row) in &case.basis_rows {
        let got = basis_class(&lat, key);
        if &got.0 != row {
            out.push(format!("dim({key}): expected {row:?}, got {:?}", got.0));
        }
    }
    for (k, v, row) in &case.further_dims {
        let got = lat.cox.shifted_class(*k, lat.section.index_of(v).unwrap());
        if &got.0 != row {
            out.push(format!("dim(tau^{k} {v}): expected {row:?}, got {:?}", got.0));
        }
    }
    let basis: Vec<KClass> = case.basis_rows.iter().map(|(key, _)| basis_class(&lat, key)).collect();
    for (k, v, m, row) in &case.coeff_rows {
        let lhs = lat.cox.shifted_class(*k, lat.section.index_of(v).unwrap()).scale(*m);
        let rhs = row.iter().zip(&basis).fold(KClass::zero(lat.cox.n()), |acc, (c, b)| &acc + &b.scale(*c));
        if lhs != rhs {
            out.push(format!("{m}[tau^{k} {v}]: expected {:?}, got {:?}", rhs.0, lhs.0));
        }
    }
    out
}

/// One symbolic charge row `m·Z(τᵏX_u) = c·z₀ + Σ coef·μᵢʲ`, terms as `(i, j, coef)`.
pub struct ChargeRow {
    pub shift: i64,
    pub vertex: &'static str,
    pub m: i64,
    pub z0: i64,
    pub terms: Vec<(usize, i64, i64)>,
}

fn row(shift: i64, vertex: &'static str, m: i64, z0: i64, terms: &[(usize, i64, i64)]) -> ChargeRow {
    ChargeRow { shift, vertex, m, z0, terms: terms.to_vec() }
}

/// The eleven E6 charge formulas (`a = μ₁`, `b = μ₂`, `c = μ₃`).
pub fn e6_charges() -> Vec<ChargeRow> {
    vec![
        row(0, "X0", 1, 1, &[]),
        row(-1, "X0", 1, 1, &[(1, 1, -1)]),
        row(0, "X1", 3, 2, &[(1, 1, -1), (2, 1, -1), (2, 3, 1), (3, 1, -1), (3, 3, 1)]),
        row(0, "X2", 3, 2, &[(1, 1, -1), (2, 3, -1), (2, 2, 1), (3, 2, -1), (3, 1, 1)]),
        row(0, "X3", 3, 2, &[(1, 1, -1), (2, 2, -1), (2, 1, 1), (3, 3, -1), (3, 2, 1)]),
        row(0, "X4", 3, 1, &[(1, 2, -1), (2, 2, -1), (2, 3, 1), (3, 2, -1), (3, 3, 1)]),
        row(0, "X5", 3, 1, &[(1, 2, -1), (2, 1, -1), (2, 2, 1), (3, 3, -1), (3, 1, 1)]),
        row(0, "X6", 3, 1, &[(1, 2, -1), (2, 3, -1), (2, 1, 1), (3, 1, -1), (3, 2, 1)]),
        row(1, "X4", 3, 1, &[(1, 1, -1), (1, 2, 1), (2, 1, -1), (2, 2, 1), (3, 1, -1), (3, 2, 1)]),
        row(1, "X5", 3, 1, &[(1, 1, -1), (1, 2, 1), (2, 3, -1), (2, 1, 1), (3, 2, -1), (3, 3, 1)]),
        row(1, "X6", 3, 1, &[(1, 1, -1), (1, 2, 1), (2, 2, -1), (2, 3, 1), (3, 3, -1), (3, 1, 1)]),
    ]
}

/// Mismatches between the symbolic charges and [`e6_charges`], compared exactly after
/// eliminating the last part of each branch.
pub fn e6_charge_mismatches() -> Vec<String> {
    use toss_core::derive::{symbolic_charge, LinearForm};
    use toss_core::num::qi;
    let lat = lattice(&[2, 3, 3]);
    let w = &lat.weights;
    let mut out = Vec::new();
    for r in e6_charges() {
        let u = lat.section.index_of(r.vertex).unwrap();
        let got = symbolic_charge(&lat, u, r.shift).unwrap();
        let want = r.terms.iter().fold(LinearForm::zero(w.free_vars()), |acc, &(i, j, c)| acc.add(&LinearForm::mu(w, i, j).scale_i(c)));
        let got_s = got.s.scale_i(r.m);
        if &got.r * qi(r.m) != qi(r.z0) || got_s != want {
            out.push(format!("{}Z(tau^{} {}): z0 coefficient {}, form {:?}", r.m, r.shift, r.vertex, &got.r * qi(r.m), got_s.canonical()));
        }
    }
    out
}
