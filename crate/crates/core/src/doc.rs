//! JSON wire format for stability data. Rationals travel as `"num/den"` strings.

use crate::charge::Tsd;
use crate::error::{Error, Result};
use crate::num::{fmt_q, parse_q, Q};
use crate::quiver_core::classify_weights;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZDoc {
    pub re: String,
    pub im: String,
}

/// `mu` maps the 1-based branch index to that branch's partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TsdDocument {
    pub weights: Vec<u32>,
    pub mu: BTreeMap<String, Vec<String>>,
    pub z: ZDoc,
}

fn invalid(msg: String) -> Error {
    Error::InvalidDatum(msg)
}

fn rational(field: &str, s: &str) -> Result<Q> {
    parse_q(s).ok_or_else(|| invalid(format!("{field}: {s:?} is not a rational \"num/den\"")))
}

impl TsdDocument {
    pub fn from_tsd(tsd: &Tsd) -> Self {
        let mu = tsd
            .branches()
            .iter()
            .enumerate()
            .map(|(i, part)| ((i + 1).to_string(), part.iter().map(fmt_q).collect()))
            .collect();
        Self { weights: tsd.weights().weights().to_vec(), mu, z: ZDoc { re: fmt_q(tsd.z_re()), im: fmt_q(tsd.z_im()) } }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed document: {e}")))
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let out = if pretty { serde_json::to_string_pretty(self) } else { serde_json::to_string(self) };
        out.expect("documents always serialize")
    }

    /// Validates and converts. Branches are put in canonical order (weight-one branches
    /// dropped, D and E sorted by weight, A padded to two branches); errors name the branch
    /// as written in the document.
    pub fn to_tsd(&self) -> Result<Tsd> {
        let l = self.weights.len();
        if let Some(key) = self.mu.keys().find(|k| k.parse::<usize>().map_or(true, |i| i == 0 || i > l)) {
            return Err(invalid(format!("mu: unknown branch key {key:?} (expected 1..={l})")));
        }
        let mut branches: Vec<(u32, Vec<Q>)> = Vec::with_capacity(l);
        for (i, &w) in self.weights.iter().enumerate() {
            let key = (i + 1).to_string();
            let parts = match self.mu.get(&key) {
                Some(raw) => raw
                    .iter()
                    .enumerate()
                    .map(|(j, s)| rational(&format!("mu[{key}][{}]", j + 1), s))
                    .collect::<Result<Vec<Q>>>()?,
                None if w == 1 => vec![Q::from_integer(1.into())],
                None => return Err(invalid(format!("mu: branch {key} (weight {w}) is missing"))),
            };
            check_branch(&key, w, &parts)?;
            branches.push((w, parts));
        }
        branches.retain(|(w, _)| *w > 1);
        let weights = classify_weights(&self.weights)?;
        if weights.euclidean_type().is_a() {
            while branches.len() < 2 {
                branches.push((1, vec![Q::from_integer(1.into())]));
            }
        } else {
            branches.sort_by_key(|(w, _)| *w);
        }
        let re = rational("z.re", &self.z.re)?;
        let im = rational("z.im", &self.z.im)?;
        Tsd::new(weights, branches.into_iter().map(|(_, p)| p).collect(), re, im)
    }
}

/// Checks one branch against its written position so messages match the input.
fn check_branch(key: &str, w: u32, parts: &[Q]) -> Result<()> {
    if parts.len() != w as usize {
        return Err(invalid(format!("branch {key}: expected {w} parts, got {}", parts.len())));
    }
    if let Some(j) = parts.iter().position(|x| *x <= Q::from_integer(0.into())) {
        return Err(invalid(format!("branch {key}: part {} = {} is not positive", j + 1, fmt_q(&parts[j]))));
    }
    let total: Q = parts.iter().sum();
    if total != Q::from_integer(1.into()) {
        return Err(invalid(format!("branch {key}: partition sums to {}, expected 1", fmt_q(&total))));
    }
    Ok(())
}

pub fn parse_tsd(text: &str) -> Result<Tsd> {
    TsdDocument::from_json(text)?.to_tsd()
}
