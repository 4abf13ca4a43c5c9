use crate::error::{Error, Result};
use crate::num::lcm_u64;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EuclideanType {
    A { p: u32, q: u32 },
    D(u32),
    E(u32),
}

impl EuclideanType {
    /// Short CLI tag: `A32`, `D6`, `E8`.
    pub fn tag(&self) -> String {
        match self {
            Self::A { p, q } => format!("A{p}{q}"),
            Self::D(n) => format!("D{n}"),
            Self::E(n) => format!("E{n}"),
        }
    }

    pub fn is_a(&self) -> bool {
        matches!(self, Self::A { .. })
    }
}

impl fmt::Display for EuclideanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A { p, q } => write!(f, "A({p},{q})"),
            Self::D(n) => write!(f, "D({n})"),
            Self::E(n) => write!(f, "E({n})"),
        }
    }
}

/// Weight tuple in canonical order: `(p,q)` for type A, `(2,2,n-2)` for D, `(2,3,n-3)` for E.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightData {
    weights: Vec<u32>,
    euclidean_type: EuclideanType,
}

impl WeightData {
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn euclidean_type(&self) -> EuclideanType {
        self.euclidean_type
    }

    pub fn l(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i - 1]
    }

    /// Rank of the Grothendieck group: `2 + Σ (wᵢ − 1)`.
    pub fn rank(&self) -> usize {
        2 + self.weights.iter().map(|w| *w as usize - 1).sum::<usize>()
    }

    pub fn period(&self) -> u64 {
        self.weights.iter().fold(1, |acc, w| lcm_u64(acc, *w as u64))
    }

    /// Number of free μ variables once `μᵢ^{wᵢ}` is eliminated.
    pub fn free_vars(&self) -> usize {
        self.rank() - 2
    }

    /// Position of the free variable `μᵢʲ` (1-based `i`, `1 ≤ j < wᵢ`).
    pub fn var_index(&self, i: usize, j: u32) -> usize {
        debug_assert!(j >= 1 && j < self.weight(i));
        self.weights[..i - 1].iter().map(|w| *w as usize - 1).sum::<usize>() + j as usize - 1
    }

    /// Inverse of [`Self::var_index`].
    pub fn var_at(&self, mut t: usize) -> (usize, u32) {
        for (i, w) in self.weights.iter().enumerate() {
            let len = *w as usize - 1;
            if t < len {
                return (i + 1, t as u32 + 1);
            }
            t -= len;
        }
        panic!("variable index out of range")
    }

    /// Human-readable variable name: a/b/c notation for E types, `mu{i}^{j}` otherwise.
    pub fn var_name(&self, i: usize, j: u32) -> String {
        match self.euclidean_type {
            EuclideanType::E(_) => format!("{}{}", ["a", "b", "c"][i - 1], j),
            _ => format!("mu{i}^{j}"),
        }
    }

    /// Reduces a cyclic superscript to the range `1..=wᵢ`.
    pub fn wrap(&self, i: usize, j: i64) -> u32 {
        let w = self.weight(i) as i64;
        ((j - 1).rem_euclid(w) + 1) as u32
    }
}

impl fmt::Display for WeightData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.euclidean_type, self.weights)
    }
}

/// Classifies a weight tuple. Weight-one entries are dropped; type A keeps two branches
/// (padding with 1) in the given order, D and E are sorted.
pub fn classify_weights(weights: &[u32]) -> Result<WeightData> {
    if weights.contains(&0) {
        return Err(Error::InvalidWeights(format!("{weights:?}: weights must be at least 1")));
    }
    let mut ws: Vec<u32> = weights.iter().copied().filter(|w| *w > 1).collect();
    if ws.len() > 3 {
        return Err(Error::NotTame(weights.to_vec()));
    }
    if ws.len() <= 2 {
        ws.resize(2, 1);
        let (p, q) = (ws[0], ws[1]);
        return Ok(WeightData { weights: ws, euclidean_type: EuclideanType::A { p, q } });
    }
    ws.sort_unstable();
    let ty = match (ws[0], ws[1], ws[2]) {
        (2, 2, m) => EuclideanType::D(m + 2),
        (2, 3, m @ 3..=5) => EuclideanType::E(m + 3),
        _ => return Err(Error::NotTame(weights.to_vec())),
    };
    Ok(WeightData { weights: ws, euclidean_type: ty })
}

/// Parses a CLI type tag (`A32`, `D6`, `E7`) into canonical weight data.
pub fn weights_from_tag(tag: &str) -> Result<WeightData> {
    let bad = || Error::InvalidWeights(format!("unknown type tag {tag:?} (expected A<p><q>, D<n> or E6/E7/E8)"));
    let (head, rest) = tag.split_at(tag.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let digits = |s: &str| s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<Vec<u32>>>();
    match head.to_ascii_uppercase().as_str() {
        "A" => {
            let d = digits(rest)?;
            if d.len() != 2 || d.contains(&0) {
                return Err(bad());
            }
            classify_weights(&d)
        }
        "D" => {
            let n: u32 = rest.parse().map_err(|_| bad())?;
            if n < 4 {
                return Err(bad());
            }
            classify_weights(&[2, 2, n - 2])
        }
        "E" => match rest {
            "6" | "7" | "8" => classify_weights(&[2, 3, rest.parse::<u32>().unwrap() - 3]),
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification_table() {
        assert_eq!(classify_weights(&[2, 2, 4]).unwrap().euclidean_type(), EuclideanType::D(6));
        assert_eq!(classify_weights(&[2, 3, 3]).unwrap().euclidean_type(), EuclideanType::E(6));
        assert_eq!(classify_weights(&[3, 2, 2]).unwrap().weights(), &[2, 2, 3]);
        assert_eq!(classify_weights(&[3, 2, 1]).unwrap().euclidean_type(), EuclideanType::A { p: 3, q: 2 });
        assert_eq!(classify_weights(&[1, 1]).unwrap().weights(), &[1, 1]);
        assert_eq!(classify_weights(&[4]).unwrap().euclidean_type(), EuclideanType::A { p: 4, q: 1 });
    }

    #[test]
    fn wild_and_tubular_rejected() {
        for w in [&[2, 3, 6][..], &[3, 3, 3], &[2, 4, 4], &[2, 3, 7], &[2, 2, 2, 2]] {
            assert!(matches!(classify_weights(w), Err(Error::NotTame(_))), "{w:?}");
        }
        assert!(matches!(classify_weights(&[0, 2]), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn rank_matches_diagram_size() {
        assert_eq!(classify_weights(&[3, 2]).unwrap().rank(), 5);
        assert_eq!(classify_weights(&[2, 2, 2]).unwrap().rank(), 5);
        assert_eq!(classify_weights(&[2, 2, 4]).unwrap().rank(), 7);
        assert_eq!(classify_weights(&[2, 3, 3]).unwrap().rank(), 7);
        assert_eq!(classify_weights(&[2, 3, 4]).unwrap().rank(), 8);
        assert_eq!(classify_weights(&[2, 3, 5]).unwrap().rank(), 9);
    }

    #[test]
    fn tags_round_trip() {
        for tag in ["A32", "A11", "D4", "D8", "E6", "E7", "E8"] {
            assert_eq!(weights_from_tag(tag).unwrap().euclidean_type().tag(), tag);
        }
        assert!(weights_from_tag("E9").is_err());
        assert!(weights_from_tag("D3").is_err());
        assert!(weights_from_tag("A3").is_err());
    }

    #[test]
    fn variable_indexing() {
        let w = classify_weights(&[2, 3, 4]).unwrap();
        assert_eq!(w.free_vars(), 6);
        for t in 0..6 {
            let (i, j) = w.var_at(t);
            assert_eq!(w.var_index(i, j), t);
        }
        assert_eq!(w.var_name(3, 2), "c2");
        assert_eq!(w.wrap(3, 0), 4);
        assert_eq!(w.wrap(3, 5), 1);
    }
}
