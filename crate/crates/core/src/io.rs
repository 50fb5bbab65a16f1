//! Line-oriented text formats.
//!
//! Instances use DIMACS `.col` conventions: `p <n> <m>` (or `p edge <n> <m>`),
//! `e <u> <v>` with 1-based vertices, `c` comments. An optional `k <int>`
//! line sets the palette and `l <v> <c>...` lines restrict single lists.
//! Formulas are `v <n>` followed by `c <g> <h> <i>` per clause. Certificates
//! are `v <vertex> <colour>` lines.

use std::fmt::Write as _;

use crate::colour::{Colour, ColourSet, MAX_COLOURS};
use crate::colouring::Colouring;
use crate::error::{Error, Result};
use crate::gadget::NaeFormula;
use crate::graph::{Graph, VertexId};
use crate::instance::Instance;

/// A parsed instance file.
#[derive(Clone, Debug)]
pub struct InstanceFile {
    pub graph: Graph,
    /// Palette size from a `k` line, if any.
    pub k: Option<u8>,
    /// Explicit `l` lines as `(vertex, list)`.
    pub lists: Vec<(VertexId, ColourSet)>,
}

impl InstanceFile {
    /// Build an instance; `default_k` applies when the file has no `k` line.
    pub fn into_instance(self, default_k: u8) -> Result<Instance> {
        let k = self.k.unwrap_or(default_k);
        if k == 0 || k > MAX_COLOURS {
            return Err(Error::usage(format!("palette size {k} outside 1..={MAX_COLOURS}")));
        }
        let mut lists = vec![ColourSet::full(k); self.graph.id_bound()];
        for (v, l) in self.lists {
            lists[v.index()] = l;
        }
        Instance::with_lists(self.graph, lists, k)
    }
}

fn fields(line: &str) -> (Option<&str>, Vec<&str>) {
    let mut it = line.split_whitespace();
    (it.next(), it.collect())
}

fn number<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, found {s:?}")))
}

fn vertex(line: usize, s: &str, n: usize) -> Result<VertexId> {
    let v: usize = number(line, s, "a vertex number")?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(VertexId(v as u32 - 1))
}

/// Parse a graph with optional `k` and `l` lines.
pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let mut graph: Option<Graph> = None;
    let mut k = None;
    let mut lists = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let (head, rest) = fields(raw);
        match head {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                let nums: Vec<&str> = rest.iter().copied().filter(|s| *s != "edge" && *s != "col").collect();
                if nums.len() != 2 {
                    return Err(Error::parse(line, "expected `p <n> <m>`"));
                }
                let n: usize = number(line, nums[0], "a vertex count")?;
                let _: usize = number(line, nums[1], "an edge count")?;
                if n > u32::MAX as usize {
                    return Err(Error::parse(line, "vertex count too large"));
                }
                graph = Some(Graph::new(n));
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, "edge before the problem line"))?;
                if rest.len() != 2 {
                    return Err(Error::parse(line, "expected `e <u> <v>`"));
                }
                let n = g.id_bound();
                let (u, v) = (vertex(line, rest[0], n)?, vertex(line, rest[1], n)?);
                g.add_edge(u, v)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            Some("k") => {
                if rest.len() != 1 {
                    return Err(Error::parse(line, "expected `k <int>`"));
                }
                let value: u8 = number(line, rest[0], "a palette size")?;
                if value == 0 || value > MAX_COLOURS {
                    return Err(Error::parse(line, format!("palette size outside 1..={MAX_COLOURS}")));
                }
                k = Some(value);
            }
            Some("l") => {
                let g = graph
                    .as_ref()
                    .ok_or_else(|| Error::parse(line, "list before the problem line"))?;
                let Some((&v, colours)) = rest.split_first() else {
                    return Err(Error::parse(line, "expected `l <v> <colours>`"));
                };
                let v = vertex(line, v, g.id_bound())?;
                let mut set = ColourSet::EMPTY;
                for c in colours {
                    let c: Colour = number(line, c, "a colour")?;
                    if c == 0 || c > MAX_COLOURS {
                        return Err(Error::parse(line, format!("colour {c} outside 1..={MAX_COLOURS}")));
                    }
                    set = set.with(c);
                }
                lists.push((v, set));
            }
            Some(other) => {
                return Err(Error::parse(line, format!("unknown line type {other:?}")));
            }
        }
    }
    let graph = graph.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing problem line"))?;
    Ok(InstanceFile { graph, k, lists })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    Ok(parse_instance(text)?.graph)
}

/// Live vertices in ascending order; position `i` is written as `i + 1`.
fn numbering(g: &Graph) -> (Vec<VertexId>, Vec<usize>) {
    let verts: Vec<VertexId> = g.vertices().collect();
    let mut number = vec![0; g.id_bound()];
    for (i, v) in verts.iter().enumerate() {
        number[v.index()] = i + 1;
    }
    (verts, number)
}

/// Write a graph, renumbering live vertices to `1..=n` in id order.
pub fn write_graph(g: &Graph) -> String {
    let (verts, number) = numbering(g);
    let mut out = format!("p {} {}\n", verts.len(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", number[u.index()], number[v.index()]);
    }
    out
}

/// Write a graph with a `k` line and an `l` line for every list that is not
/// the full palette.
pub fn write_instance(inst: &Instance) -> String {
    let g = inst.graph();
    let (verts, number) = numbering(g);
    let mut out = write_graph(g);
    let _ = writeln!(out, "k {}", inst.k());
    let full = ColourSet::full(inst.k());
    for v in verts {
        let l = inst.list(v);
        if l != full {
            let _ = write!(out, "l {}", number[v.index()]);
            for c in l.iter() {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
    }
    out
}

pub fn parse_formula(text: &str) -> Result<NaeFormula> {
    let mut n = None;
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let (head, rest) = fields(raw);
        match head {
            None => {}
            Some("v") => {
                if rest.len() != 1 || n.is_some() {
                    return Err(Error::parse(line, "expected a single `v <n>` line"));
                }
                n = Some(number::<usize>(line, rest[0], "a variable count")?);
            }
            Some("c") => {
                let count = n.ok_or_else(|| Error::parse(line, "clause before `v` line"))?;
                if rest.len() != 3 {
                    return Err(Error::parse(line, "expected `c <g> <h> <i>`"));
                }
                let mut clause = [0u32; 3];
                for (slot, s) in clause.iter_mut().zip(&rest) {
                    *slot = number(line, s, "a variable")?;
                    if *slot == 0 || *slot as usize > count {
                        return Err(Error::parse(line, format!("variable {slot} outside 1..={count}")));
                    }
                }
                clauses.push(clause);
            }
            Some(other) => {
                return Err(Error::parse(line, format!("unknown line type {other:?}")));
            }
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, "missing `v <n>` line"))?;
    NaeFormula::new(n, clauses)
}

pub fn write_formula(f: &NaeFormula) -> String {
    f.to_string()
}

/// `v <vertex> <colour>` lines with 1-based vertex numbers taken from ids.
pub fn write_certificate(c: &Colouring) -> String {
    let mut out = String::new();
    for (v, colour) in c.iter() {
        let _ = writeln!(out, "v {} {colour}", v.0 + 1);
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<Colouring> {
    let mut col = Colouring::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let (head, rest) = fields(raw);
        match head {
            None | Some("c") => {}
            Some("v") if rest.len() == 2 => {
                let v = vertex(line, rest[0], u32::MAX as usize)?;
                let c: Colour = number(line, rest[1], "a colour")?;
                if col.get(v).is_some() {
                    return Err(Error::parse(line, format!("vertex {} coloured twice", v.0 + 1)));
                }
                col.set(v, c);
            }
            Some(_) => return Err(Error::parse(line, "expected `v <vertex> <colour>`")),
        }
    }
    Ok(col)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::petersen();
        let text = write_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.vertex_count(), 10);
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn dimacs_variants() {
        let g = parse_graph("c hello\np edge 3 2\ne 1 2\ne 2 3\ne 3 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(parse_graph("p 2 1\ne 1 3\n").is_err());
        assert!(parse_graph("p 2 1\ne 1 1\n").is_err());
        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("").is_err());
        assert!(matches!(parse_graph("p 2 0\nx\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn instance_round_trip() {
        let text = "p 3 2\ne 1 2\ne 2 3\nk 3\nl 1 1 2\nl 3 3\n";
        let inst = parse_instance(text).unwrap().into_instance(3).unwrap();
        assert_eq!(inst.list(VertexId(0)), ColourSet::from_colours([1, 2]));
        assert_eq!(inst.list(VertexId(1)), ColourSet::full(3));
        assert_eq!(write_instance(&inst), text);
        let bad = parse_instance("p 1 0\nk 2\nl 1 3\n").unwrap().into_instance(3);
        assert!(bad.is_err());
    }

    #[test]
    fn formula_and_certificate() {
        let f = parse_formula("v 4\nc 1 2 3\nc 2 3 4\n").unwrap();
        assert_eq!(f.clauses().len(), 2);
        assert_eq!(parse_formula(&write_formula(&f)).unwrap().clauses(), f.clauses());
        assert!(parse_formula("v 2\nc 1 2 3\n").is_err());
        let col: Colouring = [(VertexId(0), 2), (VertexId(4), 1)].into_iter().collect();
        let text = write_certificate(&col);
        assert_eq!(text, "v 1 2\nv 5 1\n");
        assert_eq!(parse_certificate(&text).unwrap(), col);
        assert!(parse_certificate("v 1 2\nv 1 3\n").is_err());
    }
}
