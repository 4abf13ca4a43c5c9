use super::coxeter::{CoxeterData, KClass};
use super::quiver::StarQuiver;
use serde::Serialize;

/// An arrow of the translation quiver ℤΓ restricted to a window of τ-shifts.
///
/// For a section arrow `u → v` with index `section_arrow`, the window holds
/// `(k,u) → (k,v)` (`mesh = false`) and `(k+1,v) → (k,u)` (`mesh = true`), both tagged with `base = k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowArrow {
    pub from: (i64, usize),
    pub to: (i64, usize),
    pub base: i64,
    pub section_arrow: usize,
    pub mesh: bool,
}

impl WindowArrow {
    /// Stable identifier `"u->v@k"` or `"tau.v->u@k"`.
    pub fn id(&self, section: &StarQuiver) -> String {
        let (u, v) = section.arrows[self.section_arrow];
        if self.mesh {
            format!("tau.{}->{}@{}", section.label(v), section.label(u), self.base)
        } else {
            format!("{}->{}@{}", section.label(u), section.label(v), self.base)
        }
    }
}

#[derive(Debug, Clone)]
pub struct ARWindow {
    pub k_min: i64,
    pub k_max: i64,
    pub vertices: Vec<(i64, usize)>,
    pub arrows: Vec<WindowArrow>,
    n: usize,
    classes: Vec<KClass>,
}

impl ARWindow {
    /// `[τᵏ X_u] = Φᵏ·[X_u]`; panics outside the window.
    pub fn class_of(&self, k: i64, u: usize) -> &KClass {
        assert!(k >= self.k_min && k <= self.k_max && u < self.n, "vertex outside window");
        &self.classes[(k - self.k_min) as usize * self.n + u]
    }
}

/// Builds the mesh window over shifts `k_min..=k_max`. Arrows are ordered by
/// `(base, section arrow, section before mesh)`.
pub fn ar_window(cox: &CoxeterData, section: &StarQuiver, k_min: i64, k_max: i64) -> ARWindow {
    assert!(k_min <= k_max, "empty window");
    let n = section.len();
    let mut classes = Vec::with_capacity(n * (k_max - k_min + 1) as usize);
    let mut level: Vec<KClass> = (0..n).map(|u| cox.shifted_class(k_min, u)).collect();
    for k in k_min..=k_max {
        if k > k_min {
            level = level.iter().map(|c| cox.apply_phi(c)).collect();
        }
        classes.extend(level.iter().cloned());
    }
    let vertices = (k_min..=k_max).flat_map(|k| (0..n).map(move |u| (k, u))).collect();
    let mut arrows = Vec::new();
    for k in k_min..=k_max {
        for (a, &(u, v)) in section.arrows.iter().enumerate() {
            arrows.push(WindowArrow { from: (k, u), to: (k, v), base: k, section_arrow: a, mesh: false });
            if k < k_max {
                arrows.push(WindowArrow { from: (k + 1, v), to: (k, u), base: k, section_arrow: a, mesh: true });
            }
        }
    }
    ARWindow { k_min, k_max, vertices, arrows, n, classes }
}
