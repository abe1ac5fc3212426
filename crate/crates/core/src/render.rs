//! Deterministic chart and cell-diagram rendering.
//!
//! The ASCII grid uses `•` for a class (a digit when a bidegree holds several),
//! `|` for h0 edges, `/` for h1 edges and `@` for elided tower tops. The SVG
//! output uses integer coordinates only, circles per class, vertical segments
//! for h0 and unit-slope segments for h1; provenance tags become CSS classes
//! so recolored facsimiles diff cleanly. Both renderers are pure functions of
//! their inputs, byte for byte.

use crate::chart::ExtChart;
use crate::module::{GradedModule, Variance};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct RenderSpec {
    pub stem_min: i32,
    pub stem_max: i32,
    pub s_min: i32,
    pub s_max: i32,
    /// SVG cell size in pixels.
    pub cell: i32,
    /// Towers taller than this are cut and marked.
    pub elide_towers_above: i32,
    pub show_labels: bool,
}

impl RenderSpec {
    pub fn for_chart(c: &ExtChart) -> Self {
        RenderSpec {
            stem_min: 0,
            stem_max: c.stem_max,
            s_min: 0,
            s_max: c.s_max,
            cell: 20,
            elide_towers_above: c.s_max,
            show_labels: false,
        }
    }

    pub fn window(mut self, stem_min: i32, stem_max: i32, s_min: i32, s_max: i32) -> Self {
        self.stem_min = stem_min;
        self.stem_max = stem_max;
        self.s_min = s_min;
        self.s_max = s_max;
        self
    }
}

/// Columns where a tower is cut by the elision threshold: the marker row.
fn elided_columns(c: &ExtChart, spec: &RenderSpec) -> Vec<i32> {
    let cut = spec.elide_towers_above.max(1);
    if cut >= spec.s_max {
        return Vec::new();
    }
    let mut out = Vec::new();
    for n in spec.stem_min..=spec.stem_max {
        // A column is elided when classes continue past the cut with h0 full
        // rank from the cut row upward.
        let continues = (cut..spec.s_max).all(|s| c.dim(n, s) > 0)
            && c.dim(n, spec.s_max) > 0
            && (cut..spec.s_max).all(|s| c.h0_matrix(n, s).rank() == c.dim(n, s));
        if continues && c.dim(n, cut) > 0 {
            out.push(n);
        }
    }
    out
}

pub fn render_ascii(c: &ExtChart, spec: &RenderSpec) -> String {
    let cut = spec.elide_towers_above.max(1).min(spec.s_max);
    let elided = elided_columns(c, spec);
    let drawn_top = if elided.is_empty() { spec.s_max } else { cut };
    // Two text rows per filtration: an edge row above each class row.
    let width = (spec.stem_max - spec.stem_min + 1) as usize;
    let mut grid: Vec<Vec<char>> = Vec::new();
    let rows = 2 * (drawn_top - spec.s_min + 1) as usize + 1;
    for _ in 0..rows {
        grid.push(vec![' '; 2 * width]);
    }
    let class_row = |s: i32| -> usize { rows - 1 - 2 * (s - spec.s_min) as usize };
    let col = |n: i32| -> usize { 2 * (n - spec.stem_min) as usize };
    for n in spec.stem_min..=spec.stem_max {
        for s in spec.s_min..=drawn_top {
            let d = c.dim(n, s);
            if d == 0 {
                continue;
            }
            let ch = match d {
                1 => '•',
                2..=9 => char::from_digit(d as u32, 10).unwrap(),
                _ => '#',
            };
            grid[class_row(s)][col(n)] = ch;
            if s < drawn_top && c.h0_matrix(n, s).rank() > 0 {
                grid[class_row(s) - 1][col(n)] = '|';
            }
            if s < drawn_top && n < spec.stem_max && c.h1_matrix(n, s).rank() > 0 {
                grid[class_row(s) - 1][col(n) + 1] = '/';
            }
        }
    }
    for &n in &elided {
        grid[0][col(n)] = '@';
    }
    let mut out = String::new();
    for (r, row) in grid.iter().enumerate() {
        let level = spec.s_min + ((rows - 1 - r) / 2) as i32;
        let s_label = if (rows - 1 - r) % 2 == 0 && level <= drawn_top {
            format!("{level:>3} ")
        } else {
            String::from("    ")
        };
        let line: String = row.iter().collect();
        out.push_str(&s_label);
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str("    ");
    for n in spec.stem_min..=spec.stem_max {
        if n % 4 == 0 {
            let lbl = format!("{n}");
            out.push_str(&lbl);
            for _ in lbl.len()..8 {
                out.push(' ');
            }
        }
    }
    out.push('\n');
    let clipped: usize = c
        .classes
        .iter()
        .filter(|(&(n, s), v)| {
            !v.is_empty()
                && (n < spec.stem_min || n > spec.stem_max || s < spec.s_min || s > drawn_top)
        })
        .map(|(_, v)| v.len())
        .sum();
    if clipped > 0 || !elided.is_empty() {
        out.push_str(&format!(
            "# window stems {}..{}, s {}..{}; {} classes outside, {} towers elided\n",
            spec.stem_min, spec.stem_max, spec.s_min, drawn_top, clipped, elided.len()
        ));
    }
    out
}

fn svg_class_positions(c: &ExtChart, spec: &RenderSpec) -> Vec<(String, i32, i32, String)> {
    // (label, x, y, css class); multiple classes in a bidegree spread
    // horizontally in deterministic label order.
    let cell = spec.cell;
    let mut out = Vec::new();
    for (&(n, s), labels) in &c.classes {
        if n < spec.stem_min || n > spec.stem_max || s < spec.s_min || s > spec.s_max {
            continue;
        }
        let k = labels.len() as i32;
        for (i, l) in labels.iter().enumerate() {
            let x0 = (n - spec.stem_min + 1) * cell;
            let spread = if k == 1 { 0 } else { (2 * i as i32 - (k - 1)) * cell / (2 * k) };
            let y = (spec.s_max - s + 1) * cell;
            let tag = c.tags.get(l).cloned().unwrap_or_else(|| String::from("cls"));
            out.push((l.clone(), x0 + spread, y, tag));
        }
    }
    out
}

pub fn render_svg(c: &ExtChart, spec: &RenderSpec) -> String {
    let cell = spec.cell;
    let w = (spec.stem_max - spec.stem_min + 2) * cell;
    let h = (spec.s_max - spec.s_min + 2) * cell;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">\n"
    ));
    out.push_str(
        "<style>.cls{fill:#000}.black{fill:#000}.red{fill:#b22}.grid{stroke:#ddd;stroke-width:1}\n\
         .h0{stroke:#000;stroke-width:1}.h1{stroke:#000;stroke-width:1}.lbl{font:8px monospace}</style>\n",
    );
    for n in spec.stem_min..=spec.stem_max {
        if n % 4 == 0 {
            let x = (n - spec.stem_min + 1) * cell;
            out.push_str(&format!(
                "<line class=\"grid\" x1=\"{x}\" y1=\"{cell}\" x2=\"{x}\" y2=\"{}\"/>\n",
                h - cell
            ));
            out.push_str(&format!(
                "<text class=\"lbl\" x=\"{x}\" y=\"{}\">{n}</text>\n",
                h - cell / 2
            ));
        }
    }
    let positions = svg_class_positions(c, spec);
    let find = |label: &str| positions.iter().find(|p| p.0 == label);
    // Edges first so dots overlay them.
    for (from, to, kind) in c.edge_list() {
        if let (Some(a), Some(b)) = (find(&from), find(&to)) {
            out.push_str(&format!(
                "<line class=\"{kind}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                a.1, a.2, b.1, b.2
            ));
        }
    }
    for (label, x, y, tag) in &positions {
        out.push_str(&format!("<circle class=\"{tag}\" cx=\"{x}\" cy=\"{y}\" r=\"{}\"/>\n", cell / 8));
        if spec.show_labels {
            out.push_str(&format!(
                "<text class=\"lbl\" x=\"{}\" y=\"{}\">{label}</text>\n",
                x + cell / 6,
                y - cell / 6
            ));
        }
    }
    for a in &c.annotations {
        if a.stem >= spec.stem_min && a.stem <= spec.stem_max {
            let x = (a.stem - spec.stem_min + 1) * cell;
            let y = (spec.s_max - a.s.min(spec.s_max) + 1) * cell;
            out.push_str(&format!(
                "<text class=\"lbl\" x=\"{x}\" y=\"{y}\">{}</text>\n",
                a.kind
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Cell diagram of a homology module: one node per basis element laid out by
/// degree, straight edges for Sq^1, arcs for Sq^2.
pub fn render_cell_diagram(m: &GradedModule, cell: i32, cap: usize) -> String {
    assert_eq!(m.variance, Variance::Lowering);
    assert!(m.total_dim() <= cap, "diagram capped at {cap} cells");
    let height: usize = (m.min_degree()..=m.max_degree()).map(|d| m.dim(d)).max().unwrap_or(0);
    let w = (m.max_degree() - m.min_degree() + 2) * cell;
    let h = (height as i32 + 2) * cell + cell / 2;
    let pos = |d: i32, i: usize| -> (i32, i32) {
        ((d - m.min_degree() + 1) * cell, (i as i32 + 1) * cell)
    };
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {w} {h}\" width=\"{w}\" height=\"{h}\">\n"
    ));
    out.push_str(
        "<style>.cell{fill:#fff;stroke:#000}.sq1{stroke:#000;fill:none}.sq2{stroke:#000;fill:none}\n\
         .lbl{font:8px monospace}</style>\n",
    );
    // Sq^1: straight; the action lowers degree, so edges run right to left.
    for d in m.min_degree()..=m.max_degree() {
        let a1 = m.action(1, d);
        for i in 0..a1.rows() {
            for j in 0..a1.cols() {
                if a1.get(i, j) {
                    let (x1, y1) = pos(d, i);
                    let (x2, y2) = pos(d - 1, j);
                    out.push_str(&format!(
                        "<line class=\"sq1\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>\n"
                    ));
                }
            }
        }
        let a2 = m.action(2, d);
        for i in 0..a2.rows() {
            for j in 0..a2.cols() {
                if a2.get(i, j) {
                    let (x1, y1) = pos(d, i);
                    let (x2, y2) = pos(d - 2, j);
                    let mx = (x1 + x2) / 2;
                    let my = y1.min(y2) - cell / 2;
                    out.push_str(&format!(
                        "<path class=\"sq2\" d=\"M {x1} {y1} Q {mx} {my} {x2} {y2}\"/>\n"
                    ));
                }
            }
        }
    }
    for d in m.min_degree()..=m.max_degree() {
        for i in 0..m.dim(d) {
            let (x, y) = pos(d, i);
            out.push_str(&format!("<circle class=\"cell\" cx=\"{x}\" cy=\"{y}\" r=\"{}\"/>\n", cell / 6));
        }
        if m.dim(d) > 0 {
            let (x, _) = pos(d, 0);
            out.push_str(&format!(
                "<text class=\"lbl\" x=\"{x}\" y=\"{}\">{d}</text>\n",
                h - cell / 2
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{ext_chart, reference_bo_chart};
    use crate::module::{moore, trivial_module, Algebra};
    use crate::spectra::{brown_gitler, moore_smash_bg1};
    use crate::steenrod::subalgebra_operators;

    #[test]
    fn ascii_empty_and_single() {
        let alg = subalgebra_operators(1, 12).unwrap();
        let empty = ext_chart(&trivial_module(Algebra::A1).suspend(50), &alg, 4, 4);
        // A module entirely above the window yields an empty grid.
        let c = empty.unwrap();
        let spec = RenderSpec::for_chart(&c);
        let text = render_ascii(&c, &spec);
        assert!(text.contains("0"));
        assert!(!text.contains('•'));

        let one = ext_chart(&trivial_module(Algebra::A1), &alg, 2, 0).unwrap();
        let text = render_ascii(&one, &RenderSpec::for_chart(&one));
        assert_eq!(text.matches('•').count(), 1);
    }

    #[test]
    fn ascii_bo_window() {
        let alg = subalgebra_operators(1, 12).unwrap();
        let c = reference_bo_chart(&alg, 2, 6).unwrap();
        let spec = RenderSpec::for_chart(&c);
        let text = render_ascii(&c, &spec);
        // Tower column at stem 0 with h0 bars, dots at (1,1) and (2,2) with
        // h1 slashes out of (0,0) and (1,1).
        assert!(text.matches('|').count() >= 5);
        assert_eq!(text.matches('/').count(), 2);
        // Deterministic output.
        assert_eq!(text, render_ascii(&c, &spec));
    }

    #[test]
    fn svg_counts_match() {
        let alg = subalgebra_operators(1, 12).unwrap();
        let c = ext_chart(&brown_gitler(2).unwrap(), &alg, 12, 8).unwrap();
        let spec = RenderSpec::for_chart(&c);
        let svg = render_svg(&c, &spec);
        assert_eq!(svg.matches("<circle").count(), c.total_classes());
        assert_eq!(
            svg.matches("<line class=\"h0\"").count() + svg.matches("<line class=\"h1\"").count(),
            c.edge_list().len()
        );
        assert_eq!(svg, render_svg(&c, &spec));
    }

    #[test]
    fn cell_diagrams() {
        let m = moore();
        let svg = render_cell_diagram(&m, 24, 100);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("class=\"sq1\"").count(), 1);

        let bg1 = brown_gitler(1).unwrap();
        let svg = render_cell_diagram(&bg1, 24, 100);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg.matches("class=\"sq1\"").count(), 1);
        assert_eq!(svg.matches("class=\"sq2\"").count(), 1);

        // Six cells, three straight edges, three arcs.
        let mb1 = moore_smash_bg1().unwrap();
        let svg = render_cell_diagram(&mb1, 24, 100);
        assert_eq!(svg.matches("<circle").count(), 6);
        assert_eq!(svg.matches("class=\"sq1\"").count(), 3);
        assert_eq!(svg.matches("class=\"sq2\"").count(), 3);
    }

    #[test]
    fn no_overlapping_circles() {
        let alg = subalgebra_operators(1, 12).unwrap();
        let c = ext_chart(&brown_gitler(2).unwrap(), &alg, 12, 8).unwrap();
        let spec = RenderSpec::for_chart(&c);
        let pos = svg_class_positions(&c, &spec);
        for (i, a) in pos.iter().enumerate() {
            for b in pos.iter().skip(i + 1) {
                assert!(
                    (a.1, a.2) != (b.1, b.2),
                    "classes {} and {} coincide at ({}, {})",
                    a.0,
                    b.0,
                    a.1,
                    a.2
                );
            }
        }
    }

    #[test]
    fn tower_elision_marker() {
        let alg = subalgebra_operators(1, 12).unwrap();
        let c = reference_bo_chart(&alg, 4, 10).unwrap();
        let mut spec = RenderSpec::for_chart(&c);
        spec.elide_towers_above = 3;
        let text = render_ascii(&c, &spec);
        // The stem-0 tower is cut at the threshold and marked.
        assert!(text.contains('@'));
        assert!(text.contains("towers elided"));
    }

    #[test]
    fn facsimile_svg_matches_golden() {
        let golden = include_str!("golden/tmf_stem32.svg");
        let alg = subalgebra_operators(1, 12).unwrap();
        let tmf = crate::spectra::ring_homology(crate::spectra::Ring::Tmf, 54).unwrap();
        let c = ext_chart(&tmf.module, &alg, 32, 16).unwrap();
        let spec = RenderSpec::for_chart(&c);
        let svg = render_svg(&c, &spec);
        assert_eq!(svg, golden, "facsimile drifted from the committed golden");
        // Every class is drawn at its own spot at the default cell size.
        let pos = svg_class_positions(&c, &spec);
        assert_eq!(pos.len(), c.total_classes());
        for (i, a) in pos.iter().enumerate() {
            for b in pos.iter().skip(i + 1) {
                assert!((a.1, a.2) != (b.1, b.2), "overlap at ({}, {})", a.1, a.2);
            }
        }
    }
}
