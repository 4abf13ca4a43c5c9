use super::weights::{EuclideanType, WeightData};
use petgraph::graph::UnGraph;
use serde::{Deserialize, Serialize};

/// A finite quiver with labelled vertices. Arrows may repeat (Kronecker).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<(usize, usize)>,
    pub source: Option<usize>,
    pub sink: Option<usize>,
}

impl StarQuiver {
    fn build(vertices: Vec<String>, named_arrows: &[(String, String)], source: Option<&str>, sink: Option<&str>) -> Self {
        let idx = |s: &str| vertices.iter().position(|v| v == s).unwrap_or_else(|| panic!("unknown vertex {s}"));
        let arrows = named_arrows.iter().map(|(a, b)| (idx(a), idx(b))).collect();
        let source = source.map(idx);
        let sink = sink.map(idx);
        Self { vertices, arrows, source, sink }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn label(&self, u: usize) -> &str {
        &self.vertices[u]
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for &(_, b) in &self.arrows {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&u| indeg[u] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &(a, b) in &self.arrows {
                if a == u {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        seen == n
    }

    /// Underlying undirected multigraph.
    pub fn underlying_graph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::new_undirected();
        let nodes: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for &(a, b) in &self.arrows {
            g.add_edge(nodes[a], nodes[b], ());
        }
        g
    }
}

fn chain_labels(prefix: &str, i: usize, w: u32) -> Vec<String> {
    (1..w).map(|j| format!("{prefix}{i}^{j}")).collect()
}

fn star(w: &WeightData, prefix: &str, zero: &str, inf: &str) -> StarQuiver {
    let mut vertices = vec![zero.to_string()];
    let mut arrows = Vec::new();
    for i in 1..=w.l() {
        let chain = chain_labels(prefix, i, w.weight(i));
        let mut path = vec![zero.to_string()];
        path.extend(chain.iter().cloned());
        path.push(inf.to_string());
        arrows.extend(path.windows(2).map(|p| (p[0].clone(), p[1].clone())));
        vertices.extend(chain);
    }
    vertices.push(inf.to_string());
    StarQuiver::build(vertices, &arrows, Some(zero), Some(inf))
}

/// The canonical quiver: `l` chains `V₀ → Vᵢ¹ → … → Vᵢ^{wᵢ−1} → V_∞`.
pub fn canonical_quiver(w: &WeightData) -> StarQuiver {
    star(w, "V", "V0", "Vinf")
}

fn named(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn xs(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("X{i}")).collect()
}

/// The slice of the vector-bundle AR component used as the computational section.
/// Type A uses the canonical quiver with projective labels `P0, Pᵢʲ, Pinf`.
pub fn section_quiver(w: &WeightData) -> StarQuiver {
    match w.euclidean_type() {
        EuclideanType::A { .. } => star(w, "P", "P0", "Pinf"),
        EuclideanType::D(n) => {
            let m = n as usize - 3;
            let mut vertices = vec!["P0".to_string(), "X0".to_string()];
            vertices.extend((1..=m).map(|i| format!("X{i}")));
            vertices.push("P1^1".into());
            vertices.push("P2^1".into());
            let mut arrows = named(&[("P0", "X1"), ("X0", "X1")]);
            arrows.extend((1..m).map(|i| (format!("X{i}"), format!("X{}", i + 1))));
            arrows.push((format!("X{m}"), "P1^1".into()));
            arrows.push((format!("X{m}"), "P2^1".into()));
            StarQuiver::build(vertices, &arrows, None, None)
        }
        EuclideanType::E(6) => StarQuiver::build(
            xs(7),
            &named(&[("X0", "X1"), ("X0", "X2"), ("X0", "X3"), ("X1", "X4"), ("X2", "X5"), ("X3", "X6")]),
            Some("X0"),
            None,
        ),
        EuclideanType::E(7) => StarQuiver::build(
            xs(8),
            &named(&[("X0", "X1"), ("X0", "X2"), ("X0", "X3"), ("X2", "X4"), ("X4", "X6"), ("X3", "X5"), ("X5", "X7")]),
            Some("X0"),
            None,
        ),
        EuclideanType::E(_) => StarQuiver::build(
            xs(9),
            &named(&[
                ("X0", "X1"),
                ("X0", "X2"),
                ("X0", "X3"),
                ("X2", "X4"),
                ("X3", "X5"),
                ("X5", "X6"),
                ("X6", "X7"),
                ("X7", "X8"),
            ]),
            Some("X0"),
            None,
        ),
    }
}

/// The affine Dynkin diagram of the type, built directly from its textbook shape.
pub fn euclidean_diagram(ty: EuclideanType) -> UnGraph<(), ()> {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let n_vertices;
    match ty {
        EuclideanType::A { p, q } => {
            let n = (p + q) as usize;
            n_vertices = n;
            if n == 2 {
                edges.extend([(0, 1), (0, 1)]);
            } else {
                edges.extend((0..n).map(|i| (i, (i + 1) % n)));
            }
        }
        EuclideanType::D(n) => {
            let n = n as usize;
            n_vertices = n + 1;
            let spine = n - 3;
            edges.extend((0..spine.saturating_sub(1)).map(|i| (i, i + 1)));
            edges.extend([(0, spine), (0, spine + 1), (spine - 1, spine + 2), (spine - 1, spine + 3)]);
        }
        EuclideanType::E(n) => {
            let arms: &[usize] = match n {
                6 => &[2, 2, 2],
                7 => &[1, 3, 3],
                _ => &[1, 2, 5],
            };
            let mut next = 1;
            for &len in arms {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            n_vertices = next;
        }
    }
    let mut g = UnGraph::new_undirected();
    let nodes: Vec<_> = (0..n_vertices).map(|_| g.add_node(())).collect();
    for (a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    g
}
