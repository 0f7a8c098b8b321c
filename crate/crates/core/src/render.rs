//! Grid export: JSON, DOT and SVG.
//!
//! Node coordinates are the planar embedding; row 0 is drawn at the bottom.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Grid, Params};
use crate::local::DomSet;

#[derive(Serialize)]
struct NodeJson {
    col: usize,
    row: usize,
    block: usize,
    internal: bool,
}

#[derive(Serialize)]
struct GridJson<'a> {
    params: &'a Params,
    nodes: Vec<NodeJson>,
    edges: Vec<[usize; 2]>,
}

pub fn grid_json(grid: &Grid) -> serde_json::Value {
    let doc = GridJson {
        params: grid.params(),
        nodes: (0..grid.len())
            .map(|v| {
                let c = grid.coord(v);
                NodeJson {
                    col: c.col,
                    row: c.row,
                    block: grid.block_of(v),
                    internal: grid.is_internal(v),
                }
            })
            .collect(),
        edges: grid.edges().map(|(u, v)| [u, v]).collect(),
    };
    serde_json::to_value(doc).expect("grid document serializes")
}

/// DOT with pinned positions. Boundary nodes are shaded; members of `set`,
/// when given, are filled black.
pub fn to_dot(grid: &Grid, set: Option<&DomSet>) -> String {
    let mut s = String::new();
    s.push_str("graph G {\n");
    s.push_str("  node [shape=circle, width=0.15, fixedsize=true, label=\"\", style=filled];\n");
    for v in 0..grid.len() {
        let c = grid.coord(v);
        let fill = match set {
            Some(d) if d.contains(v) => "black",
            _ if grid.is_internal(v) => "white",
            _ => "gray80",
        };
        let _ = writeln!(
            s,
            "  n{v} [pos=\"{},{}!\", block={}, internal={}, fillcolor=\"{fill}\"];",
            c.col,
            c.row,
            grid.block_of(v),
            grid.is_internal(v)
        );
    }
    for (u, v) in grid.edges() {
        let _ = writeln!(s, "  n{u} -- n{v};");
    }
    s.push_str("}\n");
    s
}

const SPACING: usize = 20;
const MARGIN: usize = 20;
const PALETTE: [&str; 4] = ["#000000", "#d62728", "#1f77b4", "#2ca02c"];

/// Straight-line drawing with shaded boundary areas. Each overlay is drawn as
/// filled nodes in its own color, later overlays on top.
pub fn svg_string(grid: &Grid, overlays: &[DomSet]) -> Result<String> {
    for d in overlays {
        if d.universe() != grid.len() {
            return Err(Error::InvalidParams(format!(
                "overlay has {} entries, grid has {} nodes",
                d.universe(),
                grid.len()
            )));
        }
    }
    let p = grid.params();
    let (w, h) = (p.width(), p.m());
    let x = |col: usize| MARGIN + col * SPACING;
    let y = |row: usize| MARGIN + (h - 1 - row) * SPACING;
    let half = SPACING / 2;
    let width = 2 * MARGIN + (w - 1) * SPACING;
    let height = 2 * MARGIN + (h - 1) * SPACING;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(
        s,
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>"
    );

    let (m, t, mp) = (p.m(), p.t(), p.m_prime());
    for b in 0..p.r() {
        let left = x(b * m) - half;
        let _ = writeln!(
            s,
            "<rect class=\"boundary\" x=\"{left}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#d9d9d9\" stroke=\"#808080\"/>",
            y(h - 1) - half,
            m * SPACING,
            m * SPACING
        );
        if mp > 0 {
            let _ = writeln!(
                s,
                "<rect class=\"internal\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>",
                x(b * m + t) - half,
                y(m - 1 - t) - half,
                mp * SPACING,
                mp * SPACING
            );
        }
    }
    for (u, v) in grid.edges() {
        let (a, c) = (grid.coord(u), grid.coord(v));
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#404040\" stroke-width=\"1\"/>",
            x(a.col),
            y(a.row),
            x(c.col),
            y(c.row)
        );
    }
    for v in 0..grid.len() {
        let c = grid.coord(v);
        let fill = overlays
            .iter()
            .enumerate()
            .rev()
            .find(|(_, d)| d.contains(v))
            .map(|(i, _)| PALETTE[i % PALETTE.len()])
            .unwrap_or("#ffffff");
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{fill}\" stroke=\"#000000\"/>",
            x(c.col),
            y(c.row)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_svg(grid: &Grid, overlays: &[DomSet], path: &Path) -> Result<()> {
    let svg = svg_string(grid, overlays)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::build_grid;

    fn fig() -> Grid {
        build_grid(Params::new(7, 3, 1).unwrap())
    }

    #[test]
    fn json_document_shape() {
        let g = fig();
        let v = grid_json(&g);
        assert_eq!(v["nodes"].as_array().unwrap().len(), 147);
        assert_eq!(v["edges"].as_array().unwrap().len(), g.edge_count());
        assert_eq!(
            v["nodes"][0],
            serde_json::json!({"col": 0, "row": 0, "block": 0, "internal": false})
        );
        assert_eq!(v["params"]["m"], 7);
    }

    #[test]
    fn svg_layout_and_determinism() {
        let g = fig();
        let a = svg_string(&g, &[]).unwrap();
        assert_eq!(a, svg_string(&g, &[]).unwrap());
        assert_eq!(a.matches("class=\"boundary\"").count(), 3);
        assert_eq!(a.matches("class=\"internal\"").count(), 3);
        assert_eq!(a.matches("<circle").count(), 147);
        assert!(a.contains("width=\"100\" height=\"100\" fill=\"#ffffff\""));
    }

    #[test]
    fn svg_overlay_fills_members() {
        let g = fig();
        let d = DomSet::from_members(g.len(), [0, 5]);
        let s = svg_string(&g, &[d]).unwrap();
        assert_eq!(s.matches("fill=\"#000000\" stroke").count(), 2);
        assert!(svg_string(&g, &[DomSet::empty(3)]).is_err());
    }

    #[test]
    fn svg_write_error_names_path() {
        let g = fig();
        let err = render_svg(&g, &[], Path::new("/nonexistent/dir/out.svg")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/out.svg"));
    }

    #[test]
    fn dot_has_all_nodes_and_edges() {
        let g = fig();
        let d = to_dot(&g, None);
        assert_eq!(d.matches(" -- ").count(), g.edge_count());
        assert!(d.contains("n0 [pos=\"0,0!\", block=0, internal=false"));
    }
}
