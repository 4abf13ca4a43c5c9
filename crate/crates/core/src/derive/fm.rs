//! Fourier–Motzkin elimination over exact integers with history-based pruning.
//!
//! Decides feasibility of small strict/non-strict systems and extracts a rational witness by
//! back-substitution. Pruning only ever drops derived rows, so an infeasibility verdict is
//! always sound; every witness is re-checked against the input. Implication queries run as a
//! cutting-plane loop: only premises violated by the current witness enter the elimination.

use crate::derive::form::{IntForm, Sense};
use crate::error::{Error, Result};
use crate::num::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Variable count above which elimination is refused.
pub const MAX_VARS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Infeasible,
    /// A point satisfying every constraint.
    Feasible(Vec<Q>),
}

#[derive(Debug, Clone)]
struct Row {
    a: Vec<i128>,
    b: i128,
    strict: bool,
    hist: Vec<u64>,
    /// Variables occurring in some row of the history.
    vars: u32,
}

impl Row {
    fn new(f: &IntForm, sense: Sense, origin: usize, words: usize) -> Self {
        let mut hist = vec![0u64; words];
        hist[origin / 64] |= 1 << (origin % 64);
        let vars = f.coeffs.iter().enumerate().filter(|(_, c)| **c != 0).fold(0u32, |m, (t, _)| m | 1 << t);
        Self {
            vars,
            a: f.coeffs.iter().map(|&c| c as i128).collect(),
            b: f.constant as i128,
            strict: sense == Sense::Strict,
            hist,
        }
    }

    fn popcount(&self) -> u32 {
        self.hist.iter().map(|w| w.count_ones()).sum()
    }

    fn support(&self) -> u32 {
        self.a.iter().enumerate().filter(|(_, c)| **c != 0).fold(0u32, |m, (t, _)| m | 1 << t)
    }

    /// History bound: explicitly or implicitly eliminated variables, capped by the step count.
    fn redundant(&self, eliminated: u32) -> bool {
        let gone = (self.vars & !self.support()).count_ones().min(eliminated);
        self.popcount() > gone + 1
    }

    fn normalize(&mut self) {
        let g = self.a.iter().chain([&self.b]).fold(0i128, |acc, x| acc.gcd(x));
        if g > 1 {
            self.a.iter_mut().for_each(|x| *x /= g);
            self.b /= g;
        }
    }

    fn eval(&self, x: &[Q]) -> Q {
        self.a
            .iter()
            .zip(x)
            .filter(|(c, _)| **c != 0)
            .fold(Q::from_integer(BigInt::from(self.b)), |acc, (c, v)| acc + Q::from_integer(BigInt::from(*c)) * v)
    }
}

fn checked_combo(p: &Row, n: &Row, v: usize) -> Result<Row> {
    let fp = -n.a[v];
    let fn_ = p.a[v];
    let lin = |x: i128, y: i128| -> Result<i128> {
        x.checked_mul(fp)
            .and_then(|s| y.checked_mul(fn_).and_then(|t| s.checked_add(t)))
            .ok_or(Error::Overflow)
    };
    let a = p.a.iter().zip(&n.a).map(|(&x, &y)| lin(x, y)).collect::<Result<Vec<_>>>()?;
    let b = lin(p.b, n.b)?;
    let hist = p.hist.iter().zip(&n.hist).map(|(x, y)| x | y).collect();
    let mut r = Row { a, b, strict: p.strict || n.strict, hist, vars: p.vars | n.vars };
    r.normalize();
    Ok(r)
}

type RowIndex = std::collections::HashMap<Vec<i128>, Vec<usize>>;

fn hist_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// `a` bounds at least as tightly as `b` (same coefficient vector).
fn dominates(a: &Row, b: &Row) -> bool {
    a.b < b.b || (a.b == b.b && (a.strict || !b.strict))
}

/// Among rows with identical coefficients a row is dropped only for one that is at least as
/// tight and whose history is a subset, so the pruning bound never discards needed rows.
fn insert_dedup(rows: &mut Vec<Row>, index: &mut RowIndex, r: Row) {
    let slots = index.entry(r.a.clone()).or_default();
    for &at in slots.iter() {
        let old = &rows[at];
        if dominates(old, &r) && hist_subset(&old.hist, &r.hist) && r.vars & !old.vars == 0 {
            return;
        }
        if dominates(&r, old) && hist_subset(&r.hist, &old.hist) && old.vars & !r.vars == 0 {
            rows[at] = r;
            return;
        }
    }
    slots.push(rows.len());
    rows.push(r);
}

/// Decides `∃x: f(x) ≥ 0 / > 0` for every row; on success returns a witness.
pub fn solve(nv: usize, system: &[(IntForm, Sense)]) -> Result<Feasibility> {
    if nv > MAX_VARS {
        return Err(Error::TooManyVariables(nv));
    }
    let words = system.len().div_ceil(64).max(1);
    let mut rows: Vec<Row> = Vec::new();
    {
        let mut index = RowIndex::new();
        for (o, (f, s)) in system.iter().enumerate() {
            debug_assert_eq!(f.coeffs.len(), nv);
            let mut r = Row::new(f, *s, o, words);
            r.normalize();
            if let Some(bad) = trivially(&r) {
                if bad {
                    return Ok(Feasibility::Infeasible);
                }
                continue;
            }
            insert_dedup(&mut rows, &mut index, r);
        }
    }
    let mut remaining: Vec<usize> = (0..nv).collect();
    let mut stages: Vec<(usize, Vec<Row>)> = Vec::with_capacity(nv);
    for step in 0..nv {
        // cheapest variable: fewest generated pairs
        let (pos, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = rows.iter().filter(|r| r.a[v] > 0).count();
                let n = rows.iter().filter(|r| r.a[v] < 0).count();
                (p * n) as i64 - (p + n) as i64
            })
            .unwrap();
        remaining.swap_remove(pos);
        let (touch, keep): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| r.a[v] != 0);
        let mut next = Vec::new();
        let mut index = RowIndex::new();
        for r in keep {
            insert_dedup(&mut next, &mut index, r);
        }
        for p in touch.iter().filter(|r| r.a[v] > 0) {
            for n in touch.iter().filter(|r| r.a[v] < 0) {
                let c = checked_combo(p, n, v)?;
                if c.redundant(step as u32 + 1) {
                    continue;
                }
                match trivially(&c) {
                    Some(true) => return Ok(Feasibility::Infeasible),
                    Some(false) => continue,
                    None => insert_dedup(&mut next, &mut index, c),
                }
            }
        }
        stages.push((v, touch));
        rows = next;
    }
    let mut x = vec![Q::zero(); nv];
    for (v, touch) in stages.iter().rev() {
        x[*v] = pick(*v, touch, &x)?;
    }
    for (f, s) in system {
        let r = Row::new(f, *s, 0, 1);
        let val = r.eval(&x);
        if val.is_negative() || (r.strict && val.is_zero()) {
            return Err(Error::Invariant("elimination witness violates the input system".into()));
        }
    }
    Ok(Feasibility::Feasible(x))
}

/// `Some(true)` if a constant row is violated, `Some(false)` if it is a tautology.
fn trivially(r: &Row) -> Option<bool> {
    if r.a.iter().any(|c| *c != 0) {
        return None;
    }
    Some(r.b < 0 || (r.b == 0 && r.strict))
}

/// Value for variable `v` inside the interval cut out by `touch` with later variables fixed.
fn pick(v: usize, touch: &[Row], x: &[Q]) -> Result<Q> {
    let mut lo: Option<(Q, bool)> = None;
    let mut hi: Option<(Q, bool)> = None;
    for r in touch {
        let av = Q::from_integer(BigInt::from(r.a[v]));
        let mut rest = Q::from_integer(BigInt::from(r.b));
        for (t, &c) in r.a.iter().enumerate() {
            if t != v && c != 0 {
                rest += Q::from_integer(BigInt::from(c)) * &x[t];
            }
        }
        let bound = -rest / &av;
        if av.is_positive() {
            lo = Some(match lo {
                Some((b, s)) if b > bound => (b, s),
                Some((b, s)) if b == bound => (b, s || r.strict),
                _ => (bound, r.strict),
            });
        } else {
            hi = Some(match hi {
                Some((b, s)) if b < bound => (b, s),
                Some((b, s)) if b == bound => (b, s || r.strict),
                _ => (bound, r.strict),
            });
        }
    }
    let one = Q::one();
    Ok(match (lo, hi) {
        (None, None) => Q::zero(),
        (Some((l, s)), None) => if s { l + one } else { l },
        (None, Some((h, s))) => if s { h - one } else { h },
        (Some((l, ls)), Some((h, hs))) => {
            if l < h {
                (l + h) / Q::from_integer(BigInt::from(2))
            } else if l == h && !ls && !hs {
                l
            } else {
                return Err(Error::Invariant("empty interval during back-substitution".into()));
            }
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Implication {
    Implied,
    /// Satisfies the ambient system and every premise, and violates the candidate.
    Refuted(Vec<Q>),
}

/// Does `ambient ∧ premises` imply `candidate`? Premises enter lazily, two per round.
pub fn implies(
    nv: usize,
    ambient: &[(IntForm, Sense)],
    premises: &[(IntForm, Sense)],
    candidate: &(IntForm, Sense),
) -> Result<Implication> {
    if nv > MAX_VARS {
        return Err(Error::TooManyVariables(nv));
    }
    // ¬(f ≥ 0) is −f > 0; ¬(f > 0) is −f ≥ 0
    let negated = (
        candidate.0.neg(),
        match candidate.1 {
            Sense::NonStrict => Sense::Strict,
            Sense::Strict => Sense::NonStrict,
        },
    );
    let mut active = vec![false; premises.len()];
    loop {
        let mut sys: Vec<(IntForm, Sense)> = ambient.to_vec();
        sys.extend(premises.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p.clone()));
        sys.push(negated.clone());
        match solve(nv, &sys)? {
            Feasibility::Infeasible => return Ok(Implication::Implied),
            Feasibility::Feasible(x) => {
                let violated: Vec<(Q, usize)> = premises
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| !active[*t])
                    .filter_map(|(t, (f, s))| {
                        let v = f.eval(&x);
                        let bad = v.is_negative() || (*s == Sense::Strict && v.is_zero());
                        bad.then(|| (v / Q::from_integer(BigInt::from(norm1(f)).max(BigInt::one())), t))
                    })
                    .collect();
                if violated.is_empty() {
                    return Ok(Implication::Refuted(x));
                }
                // one cut most aligned with the candidate, one most violated
                active[most_aligned(&candidate.0, premises, &violated)] = true;
                active[violated.iter().min_by(|a, b| a.0.cmp(&b.0)).unwrap().1] = true;
            }
        }
    }
}

/// Cosine ranking is a heuristic only; floating point cannot affect the verdict.
fn most_aligned(c: &IntForm, premises: &[(IntForm, Sense)], violated: &[(Q, usize)]) -> usize {
    let cf: Vec<f64> = c.coeffs.iter().map(|&x| x as f64).collect();
    let sim = |t: usize| {
        let f = &premises[t].0.coeffs;
        let dot: f64 = f.iter().zip(&cf).map(|(a, b)| *a as f64 * b).sum();
        let n = f.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
        if n == 0.0 {
            f64::NEG_INFINITY
        } else {
            dot / n
        }
    };
    violated.iter().map(|v| v.1).max_by(|a, b| sim(*a).total_cmp(&sim(*b))).unwrap()
}

fn norm1(f: &IntForm) -> i64 {
    f.coeffs.iter().map(|c| c.abs()).sum()
}

/// Strict positivity of every part: `μᵢʲ > 0` including the eliminated last part.
pub fn ambient_system(w: &crate::quiver_core::WeightData) -> Vec<(IntForm, Sense)> {
    let nv = w.free_vars();
    let mut out = Vec::new();
    for i in 1..=w.l() {
        let wi = w.weight(i);
        if wi == 1 {
            continue;
        }
        let mut last = IntForm { coeffs: vec![0; nv], constant: 1 };
        for j in 1..wi {
            let t = w.var_index(i, j);
            let mut f = IntForm { coeffs: vec![0; nv], constant: 0 };
            f.coeffs[t] = 1;
            out.push((f, Sense::Strict));
            last.coeffs[t] = -1;
        }
        out.push((last, Sense::Strict));
    }
    out
}
