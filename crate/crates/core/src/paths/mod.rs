//! Channels, corner numbers and allowable paths in D(p/q).

mod construct;
mod search;

pub use construct::{constructive_path, whitehead_two_channel_path, WhiteheadPath};
pub use search::{
    exhaustive_allowable_paths, search_obstruction, AllowablePaths, ObstructionSearch,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::farey::{Expansion, Fraction, Parity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("vertex {0} is not an interior vertex of the path")]
    NotOnPath(Fraction),
    #[error("malformed path: {0}")]
    Malformed(String),
    #[error("path is not allowable: {0}")]
    NotAllowable(String),
    #[error("path enumeration passed the bound of {0} complete paths")]
    BoundExceeded(usize),
    #[error("expansion {0} has an odd term")]
    NotEvenExpansion(Expansion),
    #[error("{0} has expansion [2,...,2]; no channel gives a corner above 2")]
    AllTwosExpansion(Fraction),
    #[error("{0} is outside the range 1 < p < q-1 with p even and q odd")]
    NotCanonical(Fraction),
    #[error("no constructive allowable path found for {0}")]
    NoConstructivePath(Fraction),
    #[error("twisted Whitehead link needs |r| > 2, got {0}")]
    TooFewTwists(i64),
    #[error("no two-channel allowable path for r = {0}")]
    NoTwoChannelPath(i64),
}

/// An arc through two adjacent triangles `A X Y` and `B X Y` whose off-edge
/// vertices `A`, `B` are both o/o.
///
/// At `A` the arc leaves alongside the edge `A along_a`, at `B` it arrives
/// alongside `B along_b`; `along_a` and `along_b` are the two ends of the
/// shared edge, so each edge gives two channels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Channel {
    pub tri_a: usize,
    pub tri_b: usize,
    pub shared_edge: [usize; 2],
    pub endpoint_a: usize,
    pub endpoint_b: usize,
    pub along_a: usize,
    pub along_b: usize,
}

impl Channel {
    /// Ray position the arc occupies at one of its endpoints.
    pub fn position_at(&self, d: &Diagram, v: usize) -> Option<usize> {
        if v == self.endpoint_a {
            d.ray_position(v, self.along_a)
        } else if v == self.endpoint_b {
            d.ray_position(v, self.along_b)
        } else {
            None
        }
    }

    pub fn other_end(&self, v: usize) -> Option<usize> {
        if v == self.endpoint_a {
            Some(self.endpoint_b)
        } else if v == self.endpoint_b {
            Some(self.endpoint_a)
        } else {
            None
        }
    }
}

/// Every channel of the diagram, in edge order, both attachments per edge.
pub fn find_channels(d: &Diagram) -> Vec<Channel> {
    let mut out = Vec::new();
    for &[x, y] in d.edges() {
        let tris = d.edge_triangles(x, y);
        if tris.len() != 2 {
            continue;
        }
        let off = |t: usize| {
            d.triangles()[t]
                .iter()
                .copied()
                .find(|&v| v != x && v != y)
                .expect("triangle vertex off the edge")
        };
        let (ta, tb) = (tris[0].min(tris[1]), tris[0].max(tris[1]));
        let (a, b) = (off(ta), off(tb));
        if d.vertex(a).parity != Parity::OddOdd || d.vertex(b).parity != Parity::OddOdd {
            continue;
        }
        for (along_a, along_b) in [(y, x), (x, y)] {
            out.push(Channel {
                tri_a: ta,
                tri_b: tb,
                shared_edge: [x, y],
                endpoint_a: a,
                endpoint_b: b,
                along_a,
                along_b,
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arc {
    Edge {
        from: usize,
        to: usize,
    },
    Channel {
        channel: Channel,
        from: usize,
        to: usize,
    },
}

impl Arc {
    pub fn from(&self) -> usize {
        match *self {
            Arc::Edge { from, .. } | Arc::Channel { from, .. } => from,
        }
    }

    pub fn to(&self) -> usize {
        match *self {
            Arc::Edge { to, .. } | Arc::Channel { to, .. } => to,
        }
    }

    pub fn is_channel(&self) -> bool {
        matches!(self, Arc::Channel { .. })
    }

    fn position_at(&self, d: &Diagram, v: usize) -> Option<usize> {
        match *self {
            Arc::Edge { from, to } => {
                let w = if v == from { to } else { from };
                d.ray_position(v, w)
            }
            Arc::Channel { channel, .. } => channel.position_at(d, v),
        }
    }

    fn check(&self, d: &Diagram) -> Result<(), PathError> {
        match *self {
            Arc::Edge { from, to } if d.edge_triangles(from, to).is_empty() => Err(
                PathError::Malformed(format!("{} {} is not an edge", d.label(from), d.label(to))),
            ),
            Arc::Channel { channel, from, to } if channel.other_end(from) != Some(to) => Err(
                PathError::Malformed("channel endpoints do not match the arc".into()),
            ),
            _ => Ok(()),
        }
    }
}

/// A simple path from `1/0` to the diagram's endpoint with its corner numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramPath {
    arcs: Vec<Arc>,
    vertices: Vec<usize>,
    // (vertex, c(v)) for every interior vertex, in path order
    corners: Vec<(usize, usize)>,
}

impl DiagramPath {
    pub fn new(d: &Diagram, arcs: Vec<Arc>) -> Result<Self, PathError> {
        let first = arcs
            .first()
            .ok_or_else(|| PathError::Malformed("empty path".into()))?;
        if first.from() != d.start() || arcs.last().unwrap().to() != d.end() {
            return Err(PathError::Malformed("path must run from 1/0 to p/q".into()));
        }
        let mut vertices = vec![first.from()];
        for (i, arc) in arcs.iter().enumerate() {
            arc.check(d)?;
            if i > 0 && arcs[i - 1].to() != arc.from() {
                return Err(PathError::Malformed(format!(
                    "arcs {} and {i} do not meet",
                    i - 1
                )));
            }
            vertices.push(arc.to());
        }
        let mut seen = vertices.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != vertices.len() {
            return Err(PathError::Malformed("path revisits a vertex".into()));
        }
        let corners = arcs
            .windows(2)
            .map(|w| {
                let v = w[0].to();
                let pin = w[0].position_at(d, v).expect("arc ends at v");
                let pout = w[1].position_at(d, v).expect("arc starts at v");
                (v, pin.abs_diff(pout))
            })
            .collect();
        Ok(DiagramPath {
            arcs,
            vertices,
            corners,
        })
    }

    /// Path that walks boundary or interior edges through the given vertices.
    pub fn from_vertices(d: &Diagram, vs: &[usize]) -> Result<Self, PathError> {
        let arcs = vs
            .windows(2)
            .map(|w| Arc::Edge {
                from: w[0],
                to: w[1],
            })
            .collect();
        Self::new(d, arcs)
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn corners(&self) -> &[(usize, usize)] {
        &self.corners
    }

    pub fn channel_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_channel()).count()
    }
}

/// Number of triangles between the two arcs of `path` meeting at `v`.
pub fn corner_number(d: &Diagram, path: &DiagramPath, v: usize) -> Result<usize, PathError> {
    path.corners
        .iter()
        .find(|&&(w, _)| w == v)
        .map(|&(_, c)| c)
        .ok_or_else(|| PathError::NotOnPath(d.label(v)))
}

/// An allowable path: at least one channel and every corner at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllowableCertificate {
    pub path: DiagramPath,
    pub channel_count: usize,
    pub min_corner: usize,
    pub max_corner: usize,
    /// First vertex attaining `max_corner`.
    pub witness: Option<(usize, usize)>,
}

impl AllowableCertificate {
    pub fn new(path: DiagramPath) -> Result<Self, PathError> {
        let channel_count = path.channel_count();
        if channel_count == 0 {
            return Err(PathError::NotAllowable("no channel".into()));
        }
        let min_corner = path.corners.iter().map(|c| c.1).min().unwrap_or(0);
        let max_corner = path.corners.iter().map(|c| c.1).max().unwrap_or(0);
        if min_corner < 2 {
            return Err(PathError::NotAllowable(format!("corner {min_corner}")));
        }
        let witness = path.corners.iter().copied().find(|c| c.1 == max_corner);
        Ok(AllowableCertificate {
            path,
            channel_count,
            min_corner,
            max_corner,
            witness,
        })
    }

    pub fn summary(&self, d: &Diagram) -> PathSummary {
        let arcs = self
            .path
            .arcs
            .iter()
            .map(|a| match *a {
                Arc::Edge { from, to } => ArcJson {
                    kind: ArcKind::Edge,
                    from: d.label(from),
                    to: d.label(to),
                    across: None,
                },
                Arc::Channel { channel, from, to } => ArcJson {
                    kind: ArcKind::Channel,
                    from: d.label(from),
                    to: d.label(to),
                    across: Some(channel.shared_edge.map(|v| d.label(v))),
                },
            })
            .collect();
        PathSummary {
            path: PathJson {
                vertices: self.path.vertices.iter().map(|&v| d.label(v)).collect(),
                arcs,
                corners: self
                    .path
                    .corners
                    .iter()
                    .map(|&(v, c)| (d.label(v), c))
                    .collect(),
            },
            channels: self.channel_count,
            min_corner: self.min_corner,
            max_corner: self.max_corner,
            witness_vertex: self.witness.map(|w| d.label(w.0)),
            witness_corner: self.witness.map(|w| w.1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcKind {
    Edge,
    Channel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcJson {
    pub kind: ArcKind,
    pub from: Fraction,
    pub to: Fraction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub across: Option<[Fraction; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub vertices: Vec<Fraction>,
    pub arcs: Vec<ArcJson>,
    pub corners: Vec<(Fraction, usize)>,
}

/// Label-based view of a certificate, independent of vertex numbering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSummary {
    pub path: PathJson,
    pub channels: usize,
    pub min_corner: usize,
    pub max_corner: usize,
    pub witness_vertex: Option<Fraction>,
    pub witness_corner: Option<usize>,
}
