//! The triangulated disk D(p/q) glued from one fan per expansion term.

mod emit;

pub use emit::{emit, DiagramJson, Format};

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::farey::{evaluate, Expansion, FareyError, Fraction, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Farey(#[from] FareyError),
    #[error("expansion {0} does not glue into a disk (repeated triangle)")]
    Degenerate(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub label: Fraction,
    pub parity: Parity,
    pub on_top: bool,
    pub on_bottom: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub term: i64,
    pub pivot: usize,
    pub triangles: Vec<usize>,
    pub initial_edge: [usize; 2],
    pub terminal_edge: [usize; 2],
}

#[derive(Clone, Debug)]
pub struct Diagram {
    fraction: Fraction,
    expansion: Expansion,
    vertices: Vec<Vertex>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    fans: Vec<Fan>,
    top_path: Vec<usize>,
    bottom_path: Vec<usize>,
    // neighbours of each vertex in angular order, boundary ray first and last
    rotations: Vec<Vec<usize>>,
    edge_tris: HashMap<[usize; 2], Vec<usize>>,
    by_label: HashMap<Fraction, usize>,
}

type Vector = (i64, i64);

fn add(a: Vector, b: Vector) -> Result<Vector, FareyError> {
    Ok((
        a.0.checked_add(b.0).ok_or(FareyError::Overflow)?,
        a.1.checked_add(b.1).ok_or(FareyError::Overflow)?,
    ))
}

fn sub(a: Vector, b: Vector) -> Result<Vector, FareyError> {
    add(a, (-b.0, -b.1))
}

/// Third vertex of the Farey triangle on edge `{p, r}` that is not `q`.
fn other(p: Vector, r: Vector, q: Vector) -> Result<Vector, FareyError> {
    let plus = add(p, r)?;
    if Fraction::from_vector(plus) == Fraction::from_vector(q) {
        sub(p, r)
    } else {
        Ok(plus)
    }
}

pub(crate) fn edge_key(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

struct Builder {
    labels: Vec<Fraction>,
    by_label: HashMap<Fraction, usize>,
    triangles: Vec<[usize; 3]>,
    seen: HashMap<[usize; 3], usize>,
}

impl Builder {
    fn vertex(&mut self, v: Vector) -> usize {
        let f = Fraction::from_vector(v);
        if let Some(&id) = self.by_label.get(&f) {
            return id;
        }
        self.labels.push(f);
        self.by_label.insert(f, self.labels.len() - 1);
        self.labels.len() - 1
    }
}

/// Glues the fans of `e` into a diagram and validates the result.
///
/// Fan `i` pivots on the last rim vertex of fan `i-1`; its initial edge is the
/// terminal edge of fan `i-1`. When consecutive terms have the same sign the
/// fans also share the triangle on that edge, otherwise the new fan opens on
/// the far side of it.
pub fn build_diagram(e: &Expansion) -> Result<Diagram, DiagramError> {
    let value = evaluate(e)?;
    let mut b = Builder {
        labels: Vec::new(),
        by_label: HashMap::new(),
        triangles: Vec::new(),
        seen: HashMap::new(),
    };
    b.vertex((1, 0));
    b.vertex((0, 1));

    let mut fans = Vec::new();
    let mut prev: Option<(Vector, Vec<Vector>, i64)> = None;
    for &a in e.terms() {
        let s = a.signum();
        let (pivot, r0, r1) = match &prev {
            None => ((0, 1), (1, 0), (s, 1)),
            Some((pp, rim, ps)) => {
                let p = rim[rim.len() - 1];
                let x = rim[rim.len() - 2];
                let r1 = if *ps == s { x } else { other(p, *pp, x)? };
                (p, *pp, r1)
            }
        };
        let mut rim = vec![r0, r1];
        for m in 1..a.unsigned_abs() as usize {
            rim.push(other(pivot, rim[m], rim[m - 1])?);
        }
        let pid = b.vertex(pivot);
        let ids: Vec<usize> = rim.iter().map(|&v| b.vertex(v)).collect();
        let mut tris = Vec::new();
        for w in ids.windows(2) {
            let mut t = [pid, w[0], w[1]];
            t.sort_unstable();
            let shared = prev.is_some() && b.triangles.last() == Some(&t);
            let idx = if shared {
                b.triangles.len() - 1
            } else {
                if b.seen.contains_key(&t) {
                    return Err(DiagramError::Degenerate(e.to_string()));
                }
                b.triangles.push(t);
                b.seen.insert(t, b.triangles.len() - 1);
                b.triangles.len() - 1
            };
            tris.push(idx);
        }
        fans.push(Fan {
            term: a,
            pivot: pid,
            triangles: tris,
            initial_edge: edge_key(pid, ids[0]),
            terminal_edge: edge_key(pid, ids[ids.len() - 1]),
        });
        prev = Some((pivot, rim, s));
    }

    let end = b
        .by_label
        .get(&value)
        .copied()
        .ok_or_else(|| DiagramError::Invalid(format!("value {value} is not a vertex")))?;
    let last = fans.last().expect("nonempty expansion");
    if !last.terminal_edge.contains(&end) || last.pivot == end {
        return Err(DiagramError::Invalid(format!(
            "last rim vertex is not {value}"
        )));
    }

    let mut edge_tris: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
    for (i, t) in b.triangles.iter().enumerate() {
        for k in [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]] {
            edge_tris.entry(k).or_default().push(i);
        }
    }
    let mut edges: Vec<[usize; 2]> = edge_tris.keys().copied().collect();
    edges.sort_unstable();

    let n = b.labels.len();
    let mut boundary_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, ts) in &edge_tris {
        if ts.len() == 1 {
            boundary_adj[k[0]].push(k[1]);
            boundary_adj[k[1]].push(k[0]);
        }
    }
    if boundary_adj.iter().any(|a| a.len() != 2) {
        return Err(DiagramError::Degenerate(e.to_string()));
    }
    let walk = |first: usize| -> Result<Vec<usize>, DiagramError> {
        let mut path = vec![0, first];
        while *path.last().unwrap() != end {
            if path.len() > n {
                return Err(DiagramError::Degenerate(e.to_string()));
            }
            let (u, w) = (path[path.len() - 2], path[path.len() - 1]);
            let next = if boundary_adj[w][0] == u {
                boundary_adj[w][1]
            } else {
                boundary_adj[w][0]
            };
            path.push(next);
        }
        Ok(path)
    };
    let zero = 1; // 0/1 was inserted second
    if !boundary_adj[0].contains(&zero) {
        return Err(DiagramError::Degenerate(e.to_string()));
    }
    let top_path = walk(zero)?;
    let other_first = if boundary_adj[0][0] == zero {
        boundary_adj[0][1]
    } else {
        boundary_adj[0][0]
    };
    let bottom_path = walk(other_first)?;

    let mut vertices: Vec<Vertex> = b
        .labels
        .iter()
        .enumerate()
        .map(|(id, &label)| Vertex {
            id,
            label,
            parity: label.parity(),
            on_top: false,
            on_bottom: false,
        })
        .collect();
    for &v in &top_path {
        vertices[v].on_top = true;
    }
    for &v in &bottom_path {
        vertices[v].on_bottom = true;
    }

    let rotations = (0..n)
        .map(|v| rotation(v, &boundary_adj[v], &b.triangles, &edge_tris))
        .collect::<Result<Vec<_>, _>>()?;

    let d = Diagram {
        fraction: value,
        expansion: e.clone(),
        vertices,
        edges,
        triangles: b.triangles,
        fans,
        top_path,
        bottom_path,
        rotations,
        edge_tris,
        by_label: b.by_label,
    };
    d.validate()?;
    Ok(d)
}

/// Neighbours of `v` walked through its triangles from one boundary ray to the other.
fn rotation(
    v: usize,
    boundary: &[usize],
    triangles: &[[usize; 3]],
    edge_tris: &HashMap<[usize; 2], Vec<usize>>,
) -> Result<Vec<usize>, DiagramError> {
    let start = boundary[0].min(boundary[1]);
    let mut rays = vec![start];
    let mut from_tri = usize::MAX;
    loop {
        let cur = *rays.last().unwrap();
        let next_tri = edge_tris[&edge_key(v, cur)]
            .iter()
            .copied()
            .find(|&t| t != from_tri);
        let Some(t) = next_tri else { break };
        let w = triangles[t]
            .iter()
            .copied()
            .find(|&x| x != v && x != cur)
            .expect("triangle has three vertices");
        rays.push(w);
        from_tri = t;
        if rays.len() > triangles.len() + 1 {
            return Err(DiagramError::Invalid(format!(
                "vertex {v} is not a disk corner"
            )));
        }
    }
    Ok(rays)
}

impl Diagram {
    pub fn fraction(&self) -> Fraction {
        self.fraction
    }

    pub fn expansion(&self) -> &Expansion {
        &self.expansion
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id]
    }

    pub fn label(&self, id: usize) -> Fraction {
        self.vertices[id].label
    }

    pub fn vertex_by_label(&self, f: Fraction) -> Option<usize> {
        self.by_label.get(&f).copied()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn fans(&self) -> &[Fan] {
        &self.fans
    }

    pub fn top_path(&self) -> &[usize] {
        &self.top_path
    }

    pub fn bottom_path(&self) -> &[usize] {
        &self.bottom_path
    }

    /// Vertex `1/0`.
    pub fn start(&self) -> usize {
        0
    }

    /// Vertex carrying the value of the expansion.
    pub fn end(&self) -> usize {
        *self.top_path.last().unwrap()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    /// Index of the ray `v -> w` in the angular order at `v`.
    pub fn ray_position(&self, v: usize, w: usize) -> Option<usize> {
        self.rotations[v].iter().position(|&x| x == w)
    }

    /// Triangles containing the edge `{a, b}`; empty if it is not an edge.
    pub fn edge_triangles(&self, a: usize, b: usize) -> &[usize] {
        self.edge_tris
            .get(&edge_key(a, b))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn is_boundary_edge(&self, a: usize, b: usize) -> bool {
        self.edge_triangles(a, b).len() == 1
    }

    pub fn triangles_at(&self, v: usize) -> usize {
        self.rotations[v].len() - 1
    }

    /// Checks every structural invariant; returns the first violation found.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let bad = |m: String| Err(DiagramError::Invalid(m));
        let v = self.vertices.len();
        if self.triangles.len() + 2 != v {
            return bad(format!(
                "{} triangles for {v} vertices",
                self.triangles.len()
            ));
        }
        if self.edges.len() + 3 != 2 * v {
            return bad(format!("{} edges for {v} vertices", self.edges.len()));
        }
        for &[a, b] in &self.edges {
            let (x, y) = (self.label(a), self.label(b));
            let det = x.num() as i128 * y.den() as i128 - y.num() as i128 * x.den() as i128;
            if det.abs() != 1 {
                return bad(format!("edge {x} {y} fails the Farey condition"));
            }
            let k = self.edge_triangles(a, b).len();
            if k == 0 || k > 2 {
                return bad(format!("edge {x} {y} lies on {k} triangles"));
            }
        }
        for t in &self.triangles {
            let p: Vec<Parity> = t.iter().map(|&i| self.vertices[i].parity).collect();
            if p[0] == p[1] || p[0] == p[2] || p[1] == p[2] {
                return bad(format!("triangle {t:?} repeats a parity"));
            }
        }
        for vx in &self.vertices {
            if vx.parity != vx.label.parity() || !(vx.on_top || vx.on_bottom) {
                return bad(format!("vertex {} misplaced", vx.label));
            }
        }

        let terms = self.expansion.terms();
        let mut expected = 0i64;
        for (i, (fan, &a)) in self.fans.iter().zip(terms).enumerate() {
            if fan.triangles.len() as u64 != a.unsigned_abs() {
                return bad(format!("fan {i} has {} triangles", fan.triangles.len()));
            }
            expected += a.abs() + 2;
            if i == 0 {
                continue;
            }
            let before = &self.fans[i - 1];
            let common = fan
                .triangles
                .iter()
                .filter(|t| before.triangles.contains(t))
                .count();
            if before.terminal_edge != fan.initial_edge {
                return bad(format!("fans {} and {i} are not glued", i - 1));
            }
            if terms[i - 1].signum() == a.signum() {
                expected -= 3;
                if common != 1 {
                    return bad(format!("fans {} and {i} share {common} triangles", i - 1));
                }
            } else {
                expected -= 2;
                if common != 0 {
                    return bad(format!("fans {} and {i} share {common} triangles", i - 1));
                }
            }
        }
        if expected != v as i64 {
            return bad(format!("{v} vertices, fan count predicts {expected}"));
        }

        let (s, t) = (self.start(), self.end());
        for path in [&self.top_path, &self.bottom_path] {
            if path.first() != Some(&s) || path.last() != Some(&t) {
                return bad("boundary path endpoints".into());
            }
        }
        let top_edges: Vec<[usize; 2]> = self
            .top_path
            .windows(2)
            .map(|w| edge_key(w[0], w[1]))
            .collect();
        if self
            .bottom_path
            .windows(2)
            .any(|w| top_edges.contains(&edge_key(w[0], w[1])))
        {
            return bad("top and bottom paths share an edge".into());
        }
        if self.top_path.len() + self.bottom_path.len() != v + 2 {
            return bad("boundary paths do not cover the vertices".into());
        }
        Ok(())
    }

    /// Vertex ids grouped by label, for stable lookups in tests and output.
    pub fn labels(&self) -> BTreeMap<Fraction, usize> {
        self.by_label.iter().map(|(&f, &i)| (f, i)).collect()
    }
}
