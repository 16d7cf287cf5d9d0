use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Diagram;
use crate::farey::{Expansion, Fraction, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: usize,
    pub label: Fraction,
    pub parity: Parity,
    pub top: bool,
    pub bottom: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub term: i64,
    pub triangles: Vec<usize>,
}

/// Serialized form of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub fraction: Fraction,
    pub expansion: Expansion,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub fans: Vec<FanJson>,
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            fraction: d.fraction(),
            expansion: d.expansion().clone(),
            vertices: d
                .vertices()
                .iter()
                .map(|v| VertexJson {
                    id: v.id,
                    label: v.label,
                    parity: v.parity,
                    top: v.on_top,
                    bottom: v.on_bottom,
                })
                .collect(),
            edges: d.edges().to_vec(),
            triangles: d.triangles().to_vec(),
            fans: d
                .fans()
                .iter()
                .map(|f| FanJson {
                    term: f.term,
                    triangles: f.triangles.clone(),
                })
                .collect(),
        }
    }
}

pub fn emit(d: &Diagram, format: Format) -> String {
    match format {
        Format::Json => {
            serde_json::to_string_pretty(&DiagramJson::from(d)).expect("diagram serializes")
        }
        Format::Dot => dot(d),
    }
}

fn dot(d: &Diagram) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph \"D({})\" {{", d.fraction());
    s.push_str("  node [shape=circle, fontsize=10];\n");
    for v in d.vertices() {
        let _ = writeln!(
            s,
            "  v{} [label=\"{}\", xlabel=\"{}\"];",
            v.id, v.label, v.parity
        );
    }
    let (start, end) = (d.start(), d.end());
    let interior = |p: &[usize]| -> Vec<String> {
        p.iter()
            .filter(|&&v| v != start && v != end)
            .map(|v| format!("v{v}"))
            .collect()
    };
    let _ = writeln!(s, "  {{ rank=min; v{start}; }}");
    let _ = writeln!(
        s,
        "  {{ rank=same; {}; }}",
        interior(d.top_path()).join("; ")
    );
    let _ = writeln!(
        s,
        "  {{ rank=same; {}; }}",
        interior(d.bottom_path()).join("; ")
    );
    let _ = writeln!(s, "  {{ rank=max; v{end}; }}");
    for &[a, b] in d.edges() {
        let style = if d.is_boundary_edge(a, b) {
            "solid"
        } else {
            "dashed"
        };
        let _ = writeln!(s, "  v{a} -- v{b} [style={style}];");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;

    fn diagram(t: &[i64]) -> Diagram {
        build_diagram(&Expansion::new(t.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn json_counts() {
        let j: DiagramJson = serde_json::from_str(&emit(&diagram(&[4]), Format::Json)).unwrap();
        assert_eq!(
            (
                j.vertices.len(),
                j.edges.len(),
                j.triangles.len(),
                j.fans.len()
            ),
            (6, 9, 4, 1)
        );
        let j: DiagramJson =
            serde_json::from_str(&emit(&diagram(&[2, -2, -4, 2]), Format::Json)).unwrap();
        assert_eq!(
            (j.vertices.len(), j.edges.len(), j.triangles.len()),
            (11, 19, 9)
        );
        assert_eq!(j.fraction.to_string(), "16/41");
    }

    #[test]
    fn dot_is_an_undirected_graph() {
        let text = emit(&diagram(&[4]), Format::Dot);
        assert!(text.starts_with("graph "));
        assert!(!text.contains("->"));
        assert_eq!(text.matches(" -- ").count(), 9);
        assert_eq!(text.matches('{').count(), text.matches('}').count());
        assert!(text.contains("rank=same"));
    }

    #[test]
    fn output_is_deterministic() {
        let a = emit(&diagram(&[2, -2, -4, 2]), Format::Json);
        let b = emit(&diagram(&[2, -2, -4, 2]), Format::Json);
        assert_eq!(a, b);
    }
}
