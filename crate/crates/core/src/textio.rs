//! Line-oriented text formats for modules and charts.
//!
//! MODULE v1:
//! ```text
//! MODULE v1 <name> bound=<D> alg=A(n)
//! B <degree> <label>
//! ACT <gen> <degree> <row-bitstring>
//! ```
//! One B line per basis element in degree order; one ACT line per basis
//! element (row) of each generator matrix, emitted only for degrees where both
//! source and target are nonzero. Labels may contain spaces (everything after
//! the second field).
//!
//! CHART v1:
//! ```text
//! CHART v1 stem_max=<a> s_max=<b>
//! C <stem> <s> <label>
//! E <h0|h1> <label_from> <label_to>
//! A <type> <stem> <s> <text>
//! ```
//! C lines sorted by (stem, s, label); E and A lines sorted lexicographically.
//! Output is byte-reproducible for equal inputs.

use crate::chart::{Annotation, ExtChart};
use crate::error::{Error, Result};
use crate::f2::BitMatrix;
use crate::module::{Algebra, GradedModule, Variance};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

fn sanitize(name: &str) -> String {
    name.chars().map(|c| if c.is_whitespace() { '_' } else { c }).collect()
}

pub fn serialize_module(m: &GradedModule) -> String {
    assert_eq!(m.variance, Variance::Lowering, "serialization is for homology modules");
    let n = match m.algebra {
        Algebra::A1 => 1,
        Algebra::A2 => 2,
    };
    let bound = m.truncated.unwrap_or(m.max_degree());
    let mut out = format!("MODULE v1 {} bound={} alg=A({})\n", sanitize(&m.name), bound, n);
    for d in m.min_degree()..=m.max_degree() {
        for l in m.labels(d) {
            out.push_str(&format!("B {d} {l}\n"));
        }
    }
    for &g in m.algebra.generator_degrees() {
        for d in m.min_degree()..=m.max_degree() {
            let mat = m.action(g, d);
            if mat.rows() == 0 || mat.cols() == 0 {
                continue;
            }
            for i in 0..mat.rows() {
                let mut bits = String::with_capacity(mat.cols());
                for j in 0..mat.cols() {
                    bits.push(if mat.get(i, j) { '1' } else { '0' });
                }
                out.push_str(&format!("ACT Sq{g} {d} {bits}\n"));
            }
        }
    }
    out
}

pub fn parse_module(text: &str) -> Result<GradedModule> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty module file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "MODULE" || fields[1] != "v1" {
        return Err(Error::Parse(format!("bad module header `{header}`")));
    }
    let name = fields[2].to_string();
    let bound: i32 = fields[3]
        .strip_prefix("bound=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse("bad bound field".into()))?;
    let algebra = match fields[4] {
        "alg=A(1)" => Algebra::A1,
        "alg=A(2)" => Algebra::A2,
        other => return Err(Error::Parse(format!("bad algebra field `{other}`"))),
    };

    let mut basis: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut act_rows: BTreeMap<(i32, i32), Vec<String>> = BTreeMap::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let (kind, rest) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad line `{line}`")))?;
        match kind {
            "B" => {
                let (deg, label) = rest
                    .split_once(' ')
                    .ok_or_else(|| Error::Parse(format!("bad B line `{line}`")))?;
                let d: i32 =
                    deg.parse().map_err(|_| Error::Parse(format!("bad degree in `{line}`")))?;
                basis.entry(d).or_default().push(label.to_string());
            }
            "ACT" => {
                let mut it = rest.splitn(3, ' ');
                let gen = it.next().ok_or_else(|| Error::Parse("short ACT line".into()))?;
                let deg = it.next().ok_or_else(|| Error::Parse("short ACT line".into()))?;
                let bits = it.next().ok_or_else(|| Error::Parse("short ACT line".into()))?;
                let g: i32 = gen
                    .strip_prefix("Sq")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad generator in `{line}`")))?;
                let d: i32 =
                    deg.parse().map_err(|_| Error::Parse(format!("bad degree in `{line}`")))?;
                act_rows.entry((g, d)).or_default().push(bits.to_string());
            }
            _ => return Err(Error::Parse(format!("unknown line kind `{kind}`"))),
        }
    }
    if basis.is_empty() {
        return Err(Error::Parse("module has no basis lines".into()));
    }
    let min = *basis.keys().next().unwrap();
    let max = *basis.keys().last().unwrap();
    let by_degree: Vec<Vec<String>> =
        (min..=max).map(|d| basis.get(&d).cloned().unwrap_or_default()).collect();
    let dim = |d: i32| -> usize {
        if d < min || d > max {
            0
        } else {
            by_degree[(d - min) as usize].len()
        }
    };
    let mut parse_failure = None;
    let module = GradedModule::build(
        &name,
        algebra,
        Variance::Lowering,
        min,
        max,
        by_degree.clone(),
        |g, d| {
            let rows = dim(d);
            let cols = dim(d - g);
            let mut mat = BitMatrix::zeros(rows, cols);
            if rows == 0 || cols == 0 {
                return mat;
            }
            match act_rows.get(&(g, d)) {
                Some(bitrows) if bitrows.len() == rows => {
                    for (i, bits) in bitrows.iter().enumerate() {
                        if bits.len() != cols {
                            parse_failure =
                                Some(format!("row width mismatch at Sq{g} degree {d}"));
                            continue;
                        }
                        for (j, ch) in bits.chars().enumerate() {
                            if ch == '1' {
                                mat.set(i, j, true);
                            }
                        }
                    }
                }
                Some(_) => {
                    parse_failure = Some(format!("row count mismatch at Sq{g} degree {d}"));
                }
                None => {
                    parse_failure = Some(format!("missing ACT rows for Sq{g} at degree {d}"));
                }
            }
            mat
        },
    );
    if let Some(msg) = parse_failure {
        return Err(Error::Parse(msg));
    }
    let mut module = module;
    // The file certifies content through the recorded bound.
    module.truncated = Some(bound);
    Ok(module)
}

pub fn serialize_chart(c: &ExtChart) -> String {
    let mut out = format!("CHART v1 stem_max={} s_max={}\n", c.stem_max, c.s_max);
    let mut class_lines = Vec::new();
    for (&(n, s), labels) in &c.classes {
        for l in labels {
            class_lines.push(((n, s, l.clone()), format!("C {n} {s} {l}\n")));
        }
    }
    class_lines.sort();
    for (_, l) in class_lines {
        out.push_str(&l);
    }
    let mut edge_lines: Vec<String> = c
        .edge_list()
        .into_iter()
        .map(|(from, to, kind)| format!("E {kind} {from} {to}\n"))
        .collect();
    edge_lines.sort();
    for l in edge_lines {
        out.push_str(&l);
    }
    let mut ann_lines: Vec<String> = c
        .annotations
        .iter()
        .map(|a| format!("A {} {} {} {}\n", a.kind, a.stem, a.s, a.text))
        .collect();
    ann_lines.sort();
    for l in ann_lines {
        out.push_str(&l);
    }
    out
}

pub fn parse_chart(text: &str) -> Result<ExtChart> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty chart file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "CHART" || fields[1] != "v1" {
        return Err(Error::Parse(format!("bad chart header `{header}`")));
    }
    let stem_max: i32 = fields[2]
        .strip_prefix("stem_max=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse("bad stem_max".into()))?;
    let s_max: i32 = fields[3]
        .strip_prefix("s_max=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse("bad s_max".into()))?;

    let mut classes: BTreeMap<(i32, i32), Vec<String>> = BTreeMap::new();
    let mut position: BTreeMap<String, (i32, i32, usize)> = BTreeMap::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    let mut annotations = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let mut it = line.splitn(2, ' ');
        let kind = it.next().unwrap();
        let rest = it.next().unwrap_or("");
        match kind {
            "C" => {
                let mut f = rest.splitn(3, ' ');
                let n: i32 = f
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad C line `{line}`")))?;
                let s: i32 = f
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad C line `{line}`")))?;
                let label = f
                    .next()
                    .ok_or_else(|| Error::Parse(format!("bad C line `{line}`")))?
                    .to_string();
                let entry = classes.entry((n, s)).or_default();
                position.insert(label.clone(), (n, s, entry.len()));
                entry.push(label);
            }
            "E" => {
                let mut f = rest.splitn(3, ' ');
                let kind = f
                    .next()
                    .ok_or_else(|| Error::Parse(format!("bad E line `{line}`")))?
                    .to_string();
                let from = f
                    .next()
                    .ok_or_else(|| Error::Parse(format!("bad E line `{line}`")))?
                    .to_string();
                let to = f
                    .next()
                    .ok_or_else(|| Error::Parse(format!("bad E line `{line}`")))?
                    .to_string();
                edges.push((kind, from, to));
            }
            "A" => {
                let mut f = rest.splitn(4, ' ');
                let akind = f
                    .next()
                    .ok_or_else(|| Error::Parse(format!("bad A line `{line}`")))?
                    .to_string();
                let stem: i32 = f
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad A line `{line}`")))?;
                let s: i32 = f
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad A line `{line}`")))?;
                let text = f.next().unwrap_or("").to_string();
                annotations.push(Annotation { kind: akind, stem, s, text });
            }
            _ => return Err(Error::Parse(format!("unknown chart line `{line}`"))),
        }
    }

    let mut h0: BTreeMap<(i32, i32), BitMatrix> = BTreeMap::new();
    let mut h1: BTreeMap<(i32, i32), BitMatrix> = BTreeMap::new();
    for (kind, from, to) in edges {
        let &(n, s, i) = position
            .get(&from)
            .ok_or_else(|| Error::Parse(format!("edge from unknown class `{from}`")))?;
        let &(n2, s2, j) = position
            .get(&to)
            .ok_or_else(|| Error::Parse(format!("edge to unknown class `{to}`")))?;
        let (map, expect) = match kind.as_str() {
            "h0" => (&mut h0, (n, s + 1)),
            "h1" => (&mut h1, (n + 1, s + 1)),
            other => return Err(Error::Parse(format!("unknown edge kind `{other}`"))),
        };
        if (n2, s2) != expect {
            return Err(Error::Parse(format!("edge `{from}`→`{to}` has the wrong shape")));
        }
        let rows = classes.get(&(n, s)).map_or(0, |v| v.len());
        let cols = classes.get(&(n2, s2)).map_or(0, |v| v.len());
        let m = map
            .entry((n, s))
            .or_insert_with(|| BitMatrix::zeros(rows, cols));
        m.set(i, j, true);
    }

    Ok(ExtChart {
        stem_max,
        s_max,
        classes,
        tags: BTreeMap::new(),
        h0,
        h1,
        annotations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::ext_chart;
    use crate::spectra::{brown_gitler, ring_homology, Ring};
    use crate::steenrod::subalgebra_operators;

    #[test]
    fn module_roundtrip() {
        let bg2 = brown_gitler(2).unwrap();
        let text = serialize_module(&bg2);
        assert!(text.starts_with("MODULE v1 bg:2 bound=7 alg=A(1)\n"));
        assert!(text.contains("B 7 z3\n"));
        let back = parse_module(&text).unwrap();
        assert_eq!(serialize_module(&back), text);
        for d in 0..=7 {
            assert_eq!(back.dim(d), bg2.dim(d));
            for g in [1, 2] {
                assert_eq!(back.action(g, d), bg2.action(g, d), "Sq{g} at {d}");
            }
        }
    }

    #[test]
    fn module_roundtrip_tmf() {
        let tmf = ring_homology(Ring::Tmf, 20).unwrap().module;
        let text = serialize_module(&tmf);
        let back = parse_module(&text).unwrap();
        assert_eq!(serialize_module(&back), text);
        assert_eq!(back.algebra, Algebra::A2);
    }

    #[test]
    fn chart_roundtrip() {
        let alg = subalgebra_operators(1, 12).unwrap();
        let c = ext_chart(&brown_gitler(2).unwrap(), &alg, 12, 8).unwrap();
        let text = serialize_chart(&c);
        let back = parse_chart(&text).unwrap();
        assert_eq!(serialize_chart(&back), text);
        assert_eq!(back.classes, c.classes);
        // The parsed h0/h1 matrices agree where nonzero.
        for (&k, m) in &c.h0 {
            assert_eq!(back.h0_matrix(k.0, k.1), *m);
        }
        for (&k, m) in &c.h1 {
            assert_eq!(back.h1_matrix(k.0, k.1), *m);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_module("HELLO\n").is_err());
        assert!(parse_chart("CHART v2 stem_max=1 s_max=1\n").is_err());
        assert!(parse_chart("CHART v1 stem_max=1 s_max=1\nE h0 a b\n").is_err());
    }
}
