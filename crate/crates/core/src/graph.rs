//! Weighted undirected graphs and their Laplacians.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use faer::Mat;

use crate::error::{Error, Result};

/// Which Laplacian to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LaplacianKind {
    /// `D − A`
    Combinatorial,
    /// `D^{-1/2} (D − A) D^{-1/2}`
    #[default]
    Normalized,
}

impl fmt::Display for LaplacianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LaplacianKind::Combinatorial => "comb",
            LaplacianKind::Normalized => "norm",
        })
    }
}

impl FromStr for LaplacianKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "comb" | "combinatorial" => Ok(LaplacianKind::Combinatorial),
            "norm" | "normalized" => Ok(LaplacianKind::Normalized),
            other => Err(Error::InvalidArgument(format!(
                "unknown Laplacian kind {other:?} (expected comb or norm)"
            ))),
        }
    }
}

/// An edge with canonical endpoints `i < j` and a strictly positive weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

/// Weighted undirected graph without self-loops or parallel edges.
///
/// Edges are stored canonicalized (`i < j`) and sorted, so two graphs built
/// from the same edge set in any order compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n_nodes: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl Graph {
    pub fn new<I>(n_nodes: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n_nodes == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut seen = HashSet::new();
        let mut canonical = Vec::new();
        for (a, b, w) in edges {
            canonical.push(canonical_edge(n_nodes, a, b, w, &mut seen)?);
        }
        Ok(Self::from_canonical(n_nodes, canonical))
    }

    fn from_canonical(n_nodes: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_by_key(|e| (e.i, e.j));
        let mut neighbors = vec![Vec::new(); n_nodes];
        for e in &edges {
            neighbors[e.i].push((e.j, e.weight));
            neighbors[e.j].push((e.i, e.weight));
        }
        Graph {
            n_nodes,
            edges,
            neighbors,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.neighbors[node]
    }

    /// Weighted degrees `d_i = Σ_j A_ij`.
    pub fn degrees(&self) -> DegreeVector {
        DegreeVector(
            self.neighbors
                .iter()
                .map(|adj| adj.iter().map(|&(_, w)| w).sum())
                .collect(),
        )
    }

    /// Dense symmetric adjacency matrix.
    pub fn adjacency(&self) -> Mat<f64> {
        let mut a = Mat::zeros(self.n_nodes, self.n_nodes);
        for e in &self.edges {
            a[(e.i, e.j)] = e.weight;
            a[(e.j, e.i)] = e.weight;
        }
        a
    }

    /// Breadth-first check that every node is reachable from node 0.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n_nodes];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &self.neighbors[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n_nodes
    }

    /// Assembles the dense Laplacian of the requested kind.
    ///
    /// Each off-diagonal value is computed once and written to both
    /// triangles, so the result is exactly symmetric.
    pub fn laplacian(&self, kind: LaplacianKind) -> Result<Mat<f64>> {
        let n = self.n_nodes;
        let deg = self.degrees();
        let mut l = Mat::zeros(n, n);
        match kind {
            LaplacianKind::Combinatorial => {
                for (i, &d) in deg.iter().enumerate() {
                    l[(i, i)] = d;
                }
                for e in &self.edges {
                    l[(e.i, e.j)] = -e.weight;
                    l[(e.j, e.i)] = -e.weight;
                }
            }
            LaplacianKind::Normalized => {
                let inv_sqrt = deg.inv_sqrt()?;
                for i in 0..n {
                    l[(i, i)] = 1.0;
                }
                for e in &self.edges {
                    let v = -e.weight * inv_sqrt[e.i] * inv_sqrt[e.j];
                    l[(e.i, e.j)] = v;
                    l[(e.j, e.i)] = v;
                }
            }
        }
        Ok(l)
    }

    /// Evaluates `xᵀ L x` as a sum over edges without assembling `L`.
    pub fn laplacian_quadratic_form(&self, kind: LaplacianKind, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_nodes {
            return Err(Error::LengthMismatch {
                expected: self.n_nodes,
                got: x.len(),
            });
        }
        let scale: Vec<f64> = match kind {
            LaplacianKind::Combinatorial => vec![1.0; self.n_nodes],
            LaplacianKind::Normalized => self.degrees().inv_sqrt()?,
        };
        Ok(self
            .edges
            .iter()
            .map(|e| {
                let diff = x[e.i] * scale[e.i] - x[e.j] * scale[e.j];
                e.weight * diff * diff
            })
            .sum())
    }

    /// Applies `L` to a vector using the edge list.
    pub fn apply_laplacian(&self, kind: LaplacianKind, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_nodes {
            return Err(Error::LengthMismatch {
                expected: self.n_nodes,
                got: x.len(),
            });
        }
        let deg = self.degrees();
        let mut out = vec![0.0; self.n_nodes];
        match kind {
            LaplacianKind::Combinatorial => {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = deg[i] * x[i];
                }
                for e in &self.edges {
                    out[e.i] -= e.weight * x[e.j];
                    out[e.j] -= e.weight * x[e.i];
                }
            }
            LaplacianKind::Normalized => {
                let s = deg.inv_sqrt()?;
                out.copy_from_slice(x);
                for e in &self.edges {
                    let c = e.weight * s[e.i] * s[e.j];
                    out[e.i] -= c * x[e.j];
                    out[e.j] -= c * x[e.i];
                }
            }
        }
        Ok(out)
    }
}

fn canonical_edge(
    n_nodes: usize,
    a: usize,
    b: usize,
    w: f64,
    seen: &mut HashSet<(usize, usize)>,
) -> Result<Edge> {
    for index in [a, b] {
        if index >= n_nodes {
            return Err(Error::NodeOutOfRange { index, n_nodes });
        }
    }
    if a == b {
        return Err(Error::SelfLoop(a));
    }
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    if !(w.is_finite() && w > 0.0) {
        return Err(Error::InvalidWeight { i, j, weight: w });
    }
    if !seen.insert((i, j)) {
        return Err(Error::DuplicateEdge(i, j));
    }
    Ok(Edge { i, j, weight: w })
}

/// Weighted node degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeVector(Vec<f64>);

impl DegreeVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `1/√d_i`, failing on the first isolated node.
    pub fn inv_sqrt(&self) -> Result<Vec<f64>> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if d > 0.0 {
                    Ok(1.0 / d.sqrt())
                } else {
                    Err(Error::IsolatedNode(i))
                }
            })
            .collect()
    }
}

impl std::ops::Deref for DegreeVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Parses an edge list: one `i j [w]` per line, `#` starts a comment.
///
/// The node count is `max index + 1` unless `n_nodes` overrides it.
pub fn parse_edge_list(text: &str, n_nodes: Option<usize>) -> Result<Graph> {
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `i j [w]`, found {} fields", fields.len()),
            });
        }
        let index = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid node index {s:?}"),
            })
        };
        let i = index(fields[0])?;
        let j = index(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => s.parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid weight {s:?}"),
            })?,
            None => 1.0,
        };
        raw.push((line_no, i, j, w));
    }
    let inferred = raw
        .iter()
        .map(|&(_, i, j, _)| i.max(j) + 1)
        .max()
        .unwrap_or(0);
    let n = n_nodes.unwrap_or(inferred);
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(raw.len());
    for (line_no, i, j, w) in raw {
        edges.push(canonical_edge(n, i, j, w, &mut seen).map_err(|e| e.at_line(line_no))?);
    }
    Ok(Graph::from_canonical(n, edges))
}

pub fn load_edge_list(path: impl AsRef<Path>, n_nodes: Option<usize>) -> Result<Graph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, n_nodes)
}
