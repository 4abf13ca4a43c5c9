//! The closed-form inequality families of each Euclidean type, instantiated over all
//! cyclic indices.
//!
//! Letters: D uses `μᵢʲ` directly; E uses `a = μ₁`, `b = μ₂`, `c = μ₃`. Every instance is
//! `lhs ≤ rhs`; indices in ids are 1-based.

use crate::derive::form::LinearForm;
use crate::quiver_core::{EuclideanType, WeightData};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// How a `±` shared by several index families is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    /// One sign for every family in the line.
    #[default]
    Coupled,
    /// The `b` family takes the opposite sign.
    Anti,
    /// Every family chooses its sign freely.
    Independent,
}

impl std::str::FromStr for Reading {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "coupled" => Ok(Self::Coupled),
            "anti" => Ok(Self::Anti),
            "independent" => Ok(Self::Independent),
            _ => Err(format!("unknown reading {s:?} (coupled, anti, independent)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListedInstance {
    pub id: String,
    pub line: String,
    pub indices: BTreeMap<String, String>,
    pub lhs: LinearForm,
    pub rhs: LinearForm,
}

impl ListedInstance {
    /// `rhs − lhs`, which must be non-negative.
    pub fn slack(&self) -> LinearForm {
        self.rhs.sub(&self.lhs)
    }
}

struct Builder<'a> {
    w: &'a WeightData,
    tag: String,
    out: Vec<ListedInstance>,
}

impl Builder<'_> {
    fn mu(&self, i: usize, j: i64) -> LinearForm {
        LinearForm::mu(self.w, i, j)
    }

    fn push(&mut self, line: &str, idx: &[(&str, String)], lhs: LinearForm, rhs: LinearForm) {
        let mut id = format!("{}.{line}", self.tag);
        for (k, v) in idx {
            id.push_str(&format!(".{k}={v}"));
        }
        let indices = idx.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.out.push(ListedInstance { id, line: line.to_string(), indices, lhs, rhs });
    }
}

fn sgn(s: i64) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

/// Sign assignments `(sa, sb, sc)` for a line whose `±` touches the given families.
fn sign_patterns(reading: Reading, families: &[char]) -> Vec<(String, [i64; 3])> {
    let slot = |f: char| match f {
        'a' => 0,
        'b' => 1,
        _ => 2,
    };
    let mut out = Vec::new();
    match reading {
        Reading::Coupled | Reading::Anti => {
            for s in [1, -1] {
                let mut v = [s; 3];
                if reading == Reading::Anti {
                    v[1] = -s;
                }
                out.push((sgn(s).to_string(), v));
            }
        }
        Reading::Independent => {
            for mask in 0..(1u32 << families.len()) {
                let mut v = [1i64; 3];
                let mut label = String::new();
                for (t, &f) in families.iter().enumerate() {
                    let s = if mask >> t & 1 == 1 { -1 } else { 1 };
                    v[slot(f)] = s;
                    label.push_str(sgn(s));
                }
                out.push((label, v));
            }
        }
    }
    out
}

/// Every instance of the listed families for the type; empty for type A.
pub fn listed_instances(w: &WeightData, reading: Reading) -> Vec<ListedInstance> {
    let mut b = Builder { w, tag: w.euclidean_type().tag(), out: Vec::new() };
    match w.euclidean_type() {
        EuclideanType::A { .. } => {}
        EuclideanType::D(_) => d_lines(&mut b),
        EuclideanType::E(6) => e6_lines(&mut b),
        EuclideanType::E(7) => e7_lines(&mut b, reading),
        EuclideanType::E(_) => e8_lines(&mut b, reading),
    }
    b.out
}

fn d_lines(b: &mut Builder) {
    let m = b.w.weight(3) as i64;
    for j in 1..=m {
        let rhs = b.mu(3, j);
        for (line, other) in [("L1", b.mu(2, 2)), ("L2", b.mu(2, 1))] {
            let diff = b.mu(1, 1).sub(&other);
            b.push(line, &[("j", j.to_string()), ("sign", "+".into())], diff.clone(), rhs.clone());
            b.push(line, &[("j", j.to_string()), ("sign", "-".into())], diff.scale_i(-1), rhs.clone());
        }
    }
}

fn ijk(i: i64, j: i64, k: i64) -> Vec<(&'static str, String)> {
    vec![("i", i.to_string()), ("j", j.to_string()), ("k", k.to_string())]
}

fn with_sign(mut v: Vec<(&'static str, String)>, s: &str) -> Vec<(&'static str, String)> {
    v.push(("sign", s.to_string()));
    v
}

fn for_ijk(w: &WeightData, mut f: impl FnMut(i64, i64, i64)) {
    for i in 1..=w.weight(1) as i64 {
        for j in 1..=w.weight(2) as i64 {
            for k in 1..=w.weight(3) as i64 {
                f(i, j, k)
            }
        }
    }
}

fn e6_lines(b: &mut Builder) {
    let w = b.w.clone();
    let a = |b: &Builder, i| b.mu(1, i);
    let bb = |b: &Builder, j| b.mu(2, j);
    let c = |b: &Builder, k| b.mu(3, k);
    for_ijk(&w, |i, j, k| {
        b.push("L1", &ijk(i, j, k), a(b, i), bb(b, j).add(&c(b, k)));
        let e = bb(b, j + 1).sub(&bb(b, j)).add(&c(b, k + 1).sub(&c(b, k)));
        b.push("L2", &with_sign(ijk(i, j, k), "+"), e.clone(), a(b, i));
        b.push("L2", &with_sign(ijk(i, j, k), "-"), e.scale_i(-1), a(b, i));
    });
}

fn e7_lines(b: &mut Builder, reading: Reading) {
    let w = b.w.clone();
    let a = |b: &Builder, i| b.mu(1, i);
    let bb = |b: &Builder, j| b.mu(2, j);
    let c = |b: &Builder, k| b.mu(3, k);
    let pats = sign_patterns(reading, &['b', 'c']);
    for_ijk(&w, |i, j, k| {
        b.push("L1", &ijk(i, j, k), a(b, i), bb(b, j).add(&c(b, k)));
        b.push("L2", &ijk(i, j, k), bb(b, j), c(b, k - 1).add(&c(b, k + 1)));
        for (label, [_, sb, sc]) in &pats {
            let (sb, sc) = (*sb, *sc);
            let db = bb(b, j).sub(&bb(b, j + sb));
            let rhs3 = c(b, k).scale_i(2).add(&c(b, k + sc));
            b.push("L3", &with_sign(ijk(i, j, k), label), a(b, i).add(&db), rhs3.clone());
            let lhs4 = a(b, i).sub(&a(b, i + 1)).add(&db);
            b.push("L4", &with_sign(ijk(i, j, k), label), lhs4, rhs3.sub(&c(b, k - sc)));
        }
    });
}

fn e8_lines(b: &mut Builder, reading: Reading) {
    let w = b.w.clone();
    let a = |b: &Builder, i| b.mu(1, i);
    let bb = |b: &Builder, j| b.mu(2, j);
    let c = |b: &Builder, k| b.mu(3, k);
    let bc = sign_patterns(reading, &['b', 'c']);
    let abc = sign_patterns(reading, &['a', 'b', 'c']);
    for_ijk(&w, |i, j, k| {
        let cc = c(b, k - 1).add(&c(b, k + 1));
        b.push("L1", &ijk(i, j, k), bb(b, j), cc.clone());
        b.push("L2a", &ijk(i, j, k), cc.clone(), a(b, i));
        b.push("L2b", &ijk(i, j, k), a(b, i), bb(b, j).add(&c(b, k)));
        for (label, [_, sb, sc]) in &bc {
            let (sb, sc) = (*sb, *sc);
            let idx = with_sign(ijk(i, j, k), label);
            let db = bb(b, j).sub(&bb(b, j + sb));
            b.push("L3", &idx, a(b, i).add(&db), c(b, k).scale_i(2).add(&c(b, k + sc)));
            b.push("L4", &idx, db.clone(), cc.sub(&c(b, k + 2 * sc)));
            let weighted = c(b, k - sc).add(&c(b, k).scale_i(2)).add(&c(b, k + sc).scale_i(3));
            let db2 = bb(b, j).sub(&bb(b, j + 2 * sb));
            b.push("L5", &idx, a(b, i).scale_i(2).add(&db2), weighted.clone());
            let db_back = bb(b, j).sub(&bb(b, j - sb));
            b.push("L6", &idx, weighted.sub(&c(b, k + 2 * sc)), a(b, i).scale_i(3).add(&db_back.scale_i(2)));
        }
        for (label, [sa, sb, sc]) in &abc {
            let (sa, sb, sc) = (*sa, *sb, *sc);
            let lhs = a(b, i).sub(&a(b, i + sa)).add(&bb(b, j).sub(&bb(b, j + sb).scale_i(2)));
            let rhs = c(b, k - 2 * sc)
                .scale_i(2)
                .add(&c(b, k - sc))
                .sub(&c(b, k + sc))
                .sub(&c(b, k + 2 * sc).scale_i(2));
            b.push("L7", &with_sign(ijk(i, j, k), label), lhs, rhs);
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_core::classify_weights;

    #[test]
    fn instance_counts() {
        let d = classify_weights(&[2, 2, 3]).unwrap();
        assert_eq!(listed_instances(&d, Reading::Coupled).len(), 3 * 4);
        let e6 = classify_weights(&[2, 3, 3]).unwrap();
        assert_eq!(listed_instances(&e6, Reading::Coupled).len(), 18 * 3);
        let e8 = classify_weights(&[2, 3, 5]).unwrap();
        assert_eq!(listed_instances(&e8, Reading::Coupled).len(), 30 * (3 + 4 * 2 + 2));
        assert_eq!(listed_instances(&e8, Reading::Independent).len(), 30 * (3 + 4 * 4 + 8));
        assert!(listed_instances(&classify_weights(&[3, 2]).unwrap(), Reading::Coupled).is_empty());
    }

    #[test]
    fn ids_carry_indices_and_sign() {
        let e7 = classify_weights(&[2, 3, 4]).unwrap();
        let all = listed_instances(&e7, Reading::Coupled);
        assert!(all.iter().any(|x| x.id == "E7.L3.i=1.j=2.k=1.sign=+"));
        let d = classify_weights(&[2, 2, 4]).unwrap();
        assert_eq!(listed_instances(&d, Reading::Coupled)[0].id, "D6.L1.j=1.sign=+");
    }

    #[test]
    fn uniform_point_satisfies_every_instance() {
        use crate::num::Q;
        use num_bigint::BigInt;
        for ws in [[2u32, 2, 5], [2, 3, 3], [2, 3, 4], [2, 3, 5]] {
            let w = classify_weights(&ws).unwrap();
            let x: Vec<Q> = (0..w.free_vars())
                .map(|t| Q::new(BigInt::from(1), BigInt::from(w.weight(w.var_at(t).0))))
                .collect();
            for r in [Reading::Coupled, Reading::Anti, Reading::Independent] {
                for inst in listed_instances(&w, r) {
                    assert!(inst.slack().eval(&x) >= Q::from_integer(0.into()), "{}", inst.id);
                }
            }
        }
    }
}
