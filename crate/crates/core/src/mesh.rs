//! Triangle meshes: ASCII OFF input/output, connectivity graphs, and
//! synthetic sphere meshes.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl TriMesh {
    /// Unique undirected edges, canonical `(lo, hi)` and sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set = BTreeSet::new();
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                set.insert((a.min(b), a.max(b)));
            }
        }
        set.into_iter().collect()
    }

    /// Number of faces incident to every unique edge.
    pub fn edge_face_counts(&self) -> HashMap<(usize, usize), usize> {
        let mut counts = HashMap::new();
        for f in &self.faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        counts
    }

    /// One node per vertex and one unit-weight edge per unique mesh edge.
    pub fn to_graph(&self) -> Result<Graph> {
        Graph::new(
            self.vertices.len(),
            self.edges().into_iter().map(|(a, b)| (a, b, 1.0)),
        )
    }

    pub fn to_off(&self) -> String {
        let mut out = String::from("OFF\n");
        let _ = writeln!(
            out,
            "{} {} {}",
            self.vertices.len(),
            self.faces.len(),
            self.edges().len()
        );
        for v in &self.vertices {
            let _ = writeln!(out, "{:.17e} {:.17e} {:.17e}", v[0], v[1], v[2]);
        }
        for f in &self.faces {
            let _ = writeln!(out, "3 {} {} {}", f[0], f[1], f[2]);
        }
        out
    }

    /// Regular icosahedron on the unit sphere (12 vertices, 20 faces).
    pub fn icosahedron() -> Self {
        let t = (1.0 + 5f64.sqrt()) / 2.0;
        let raw = [
            [-1.0, t, 0.0],
            [1.0, t, 0.0],
            [-1.0, -t, 0.0],
            [1.0, -t, 0.0],
            [0.0, -1.0, t],
            [0.0, 1.0, t],
            [0.0, -1.0, -t],
            [0.0, 1.0, -t],
            [t, 0.0, -1.0],
            [t, 0.0, 1.0],
            [-t, 0.0, -1.0],
            [-t, 0.0, 1.0],
        ];
        let faces = vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        TriMesh {
            vertices: raw.iter().map(|&v| normalize(v)).collect(),
            faces,
        }
    }

    /// Icosahedron refined `levels` times by 1→4 midpoint subdivision, with
    /// vertices projected onto the unit sphere. Has `10·4^levels + 2` vertices.
    pub fn icosphere(levels: u32) -> Self {
        let mut mesh = Self::icosahedron();
        for _ in 0..levels {
            let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
            let mut faces = Vec::with_capacity(mesh.faces.len() * 4);
            let old_faces = std::mem::take(&mut mesh.faces);
            let mut midpoint = |a: usize, b: usize, verts: &mut Vec<[f64; 3]>| {
                *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
                    let (p, q) = (verts[a], verts[b]);
                    verts.push(normalize([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                    verts.len() - 1
                })
            };
            for [a, b, c] in old_faces {
                let ab = midpoint(a, b, &mut mesh.vertices);
                let bc = midpoint(b, c, &mut mesh.vertices);
                let ca = midpoint(c, a, &mut mesh.vertices);
                faces.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
            }
            mesh.faces = faces;
        }
        mesh
    }
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Parses an ASCII OFF file with triangle faces.
///
/// Accepts `#` comments, blank lines, counts on the header line
/// (`OFF V F E`), and trailing per-face colour values.
pub fn parse_off(text: &str) -> Result<TriMesh> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::Mesh("empty file".into()))?;
    let mut header_fields = header.split_whitespace();
    if header_fields.next() != Some("OFF") {
        return Err(Error::Parse {
            line: header_line,
            message: "missing OFF header".into(),
        });
    }
    let rest: Vec<&str> = header_fields.collect();
    let (count_line, counts): (usize, Vec<&str>) = if rest.is_empty() {
        let (n, l) = lines
            .next()
            .ok_or_else(|| Error::Mesh("missing counts line".into()))?;
        (n, l.split_whitespace().collect())
    } else {
        (header_line, rest)
    };
    if counts.len() < 2 {
        return Err(Error::Parse {
            line: count_line,
            message: "expected `V F [E]` counts".into(),
        });
    }
    let count = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            line: count_line,
            message: format!("invalid count {s:?}"),
        })
    };
    let n_vertices = count(counts[0])?;
    let n_faces = count(counts[1])?;

    let mut vertices = Vec::with_capacity(n_vertices);
    for _ in 0..n_vertices {
        let (line, l) = lines
            .next()
            .ok_or_else(|| Error::Mesh(format!("expected {n_vertices} vertices")))?;
        let coords: Vec<f64> = l
            .split_whitespace()
            .take(3)
            .map(|s| s.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse {
                line,
                message: "invalid vertex coordinate".into(),
            })?;
        if coords.len() != 3 {
            return Err(Error::Parse {
                line,
                message: "vertex needs 3 coordinates".into(),
            });
        }
        vertices.push([coords[0], coords[1], coords[2]]);
    }

    let mut faces = Vec::with_capacity(n_faces);
    for _ in 0..n_faces {
        let (line, l) = lines
            .next()
            .ok_or_else(|| Error::Mesh(format!("expected {n_faces} faces")))?;
        let fields: Vec<&str> = l.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid face entry {s:?}"),
            })
        };
        let arity = parse(fields[0])?;
        if arity != 3 {
            return Err(Error::Parse {
                line,
                message: format!("non-triangle face with {arity} vertices"),
            });
        }
        if fields.len() < 4 {
            return Err(Error::Parse {
                line,
                message: "triangle face needs 3 vertex indices".into(),
            });
        }
        let mut f = [0usize; 3];
        for (slot, s) in f.iter_mut().zip(&fields[1..4]) {
            let idx = parse(s)?;
            if idx >= n_vertices {
                return Err(Error::Parse {
                    line,
                    message: format!("face index {idx} out of range for {n_vertices} vertices"),
                });
            }
            *slot = idx;
        }
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return Err(Error::Parse {
                line,
                message: "degenerate face repeats a vertex".into(),
            });
        }
        faces.push(f);
    }
    Ok(TriMesh { vertices, faces })
}

pub fn load_off(path: impl AsRef<Path>) -> Result<TriMesh> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_off(&text)
}

/// Reads an OFF mesh and returns its unit-weight connectivity graph.
pub fn load_mesh_off(path: impl AsRef<Path>) -> Result<Graph> {
    load_off(path)?.to_graph()
}
