//! Line-oriented graph records:
//!
//! ```text
//! pantgraph g=0 n=3
//! edges: 0-1, 2-3, 4-5
//! vertices: [0,2,4] [1] [3] [5]
//! leaves: 1:1, 2:3, 3:5
//! ```

use super::{Dart, PantGraph};
use crate::error::ParseError;

pub(super) fn write_graph(g: &PantGraph) -> String {
    let list = |items: Vec<String>, sep: &str| {
        if items.is_empty() {
            String::new()
        } else {
            format!(" {}", items.join(sep))
        }
    };
    let c = g.counts();
    let edges = g.edges().iter().map(|[a, b]| format!("{a}-{b}")).collect();
    let vertices = g
        .vertices()
        .iter()
        .map(|b| {
            let inner: Vec<String> = b.iter().map(|d| d.to_string()).collect();
            format!("[{}]", inner.join(","))
        })
        .collect();
    let leaves = g.leaves().iter().map(|(l, d)| format!("{l}:{d}")).collect();
    format!(
        "pantgraph g={} n={}\nedges:{}\nvertices:{}\nleaves:{}\n",
        c.genus,
        c.boundary,
        list(edges, ", "),
        list(vertices, " "),
        list(leaves, ", ")
    )
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, offset: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.no, offset + 1, msg)
    }

    fn body(&self, prefix: &str) -> Result<(&'a str, usize), ParseError> {
        match self.text.strip_prefix(prefix) {
            Some(rest) => Ok((rest, prefix.len())),
            None => Err(self.err(0, format!("expected `{prefix}`"))),
        }
    }
}

fn number<T: std::str::FromStr>(line: &Line, s: &str, offset: usize) -> Result<T, ParseError> {
    s.trim()
        .parse()
        .map_err(|_| line.err(offset, format!("expected a number, found `{}`", s.trim())))
}

/// Splits `s` on `sep`, yielding trimmed non-empty pieces with their byte
/// offsets relative to `s`.
fn pieces(s: &str, sep: char) -> impl Iterator<Item = (&str, usize)> {
    let mut offset = 0;
    s.split(sep).filter_map(move |p| {
        let start = offset;
        offset += p.len() + 1;
        let lead = p.len() - p.trim_start().len();
        let t = p.trim();
        (!t.is_empty()).then_some((t, start + lead))
    })
}

fn parse_record(lines: &[Line]) -> Result<PantGraph, ParseError> {
    let header = &lines[0];
    let (rest, off) = header.body("pantgraph")?;
    let mut declared = (None, None);
    for (tok, o) in pieces(rest, ' ') {
        if let Some(v) = tok.strip_prefix("g=") {
            declared.0 = Some(number::<u32>(header, v, off + o + 2)?);
        } else if let Some(v) = tok.strip_prefix("n=") {
            declared.1 = Some(number::<u32>(header, v, off + o + 2)?);
        } else {
            return Err(header.err(off + o, format!("unexpected `{tok}`")));
        }
    }
    let (Some(g), Some(n)) = declared else {
        return Err(header.err(0, "header needs g= and n="));
    };
    let Some(el) = lines.get(1) else {
        return Err(ParseError::new(header.no + 1, 1, "missing `edges:` line"));
    };
    let (rest, off) = el.body("edges:")?;
    let mut edges: Vec<[Dart; 2]> = Vec::new();
    for (tok, o) in pieces(rest, ',') {
        let Some((a, b)) = tok.split_once('-') else {
            return Err(el.err(off + o, "expected `a-b`"));
        };
        edges.push([
            number(el, a, off + o)?,
            number(el, b, off + o + a.len() + 1)?,
        ]);
    }
    let Some(vl) = lines.get(2) else {
        return Err(ParseError::new(el.no + 1, 1, "missing `vertices:` line"));
    };
    let (rest, off) = vl.body("vertices:")?;
    let mut vertices: Vec<Vec<Dart>> = Vec::new();
    for (tok, o) in pieces(rest, ' ') {
        let inner = tok
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| vl.err(off + o, "expected `[d,d,...]`"))?;
        let mut block = Vec::new();
        for (d, p) in pieces(inner, ',') {
            block.push(number(vl, d, off + o + 1 + p)?);
        }
        vertices.push(block);
    }
    let Some(ll) = lines.get(3) else {
        return Err(ParseError::new(vl.no + 1, 1, "missing `leaves:` line"));
    };
    let (rest, off) = ll.body("leaves:")?;
    let mut leaves = Vec::new();
    for (tok, o) in pieces(rest, ',') {
        let Some((l, d)) = tok.split_once(':') else {
            return Err(ll.err(off + o, "expected `label:dart`"));
        };
        leaves.push((
            number(ll, l, off + o)?,
            number(ll, d, off + o + l.len() + 1)?,
        ));
    }
    if let Some(extra) = lines.get(4) {
        return Err(extra.err(0, "unexpected line in graph record"));
    }
    let graph = PantGraph::new(edges, vertices, leaves)
        .map_err(|e| ParseError::new(header.no, 1, e.to_string()))?;
    if graph.validate().is_empty() {
        let c = graph.counts();
        if (c.genus, c.boundary) != (g, n) {
            return Err(header.err(
                off,
                format!(
                    "header says g={g} n={n} but graph has g={} n={}",
                    c.genus, c.boundary
                ),
            ));
        }
    }
    Ok(graph)
}

fn records(s: &str) -> Vec<Vec<Line<'_>>> {
    let mut out: Vec<Vec<Line>> = Vec::new();
    let mut cur = Vec::new();
    for (i, text) in s.lines().enumerate() {
        let text = text.trim_end();
        if text.trim().is_empty() || text.trim_start().starts_with('#') {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            continue;
        }
        cur.push(Line { no: i + 1, text });
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub(super) fn parse_graph(s: &str) -> Result<PantGraph, ParseError> {
    let recs = records(s);
    match recs.len() {
        0 => Err(ParseError::new(1, 1, "empty input")),
        1 => parse_record(&recs[0]),
        _ => Err(ParseError::new(
            recs[1][0].no,
            1,
            "more than one graph record",
        )),
    }
}

pub(super) fn parse_graphs(s: &str) -> Result<Vec<PantGraph>, ParseError> {
    records(s).iter().map(|r| parse_record(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::samples;
    use super::*;

    #[test]
    fn tripod_text() {
        let t = samples::tripod().to_text();
        assert_eq!(
            t,
            "pantgraph g=0 n=3\nedges: 0-1, 2-3, 4-5\nvertices: [0,2,4] [1] [3] [5]\nleaves: 1:1, 2:3, 3:5\n"
        );
        assert_eq!(PantGraph::parse(&t).unwrap(), samples::tripod());
    }

    #[test]
    fn closed_graph_has_empty_leaf_list() {
        let t = samples::theta().to_text();
        assert!(t.ends_with("leaves:\n"));
        assert_eq!(PantGraph::parse(&t).unwrap().to_text(), t);
    }

    #[test]
    fn errors_carry_positions() {
        let e = PantGraph::parse("pantgraph g=0 n=3\nedges: 0-1, 2-x\nvertices:\nleaves:\n")
            .unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.column, 15);
        let e = PantGraph::parse("pantgraph g=0 n=3\nedge: 0-1\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
    }

    #[test]
    fn header_must_match() {
        let t = samples::tripod().to_text().replace("n=3", "n=4");
        assert!(PantGraph::parse(&t).is_err());
    }

    #[test]
    fn multiple_records() {
        let t = format!("{}\n{}", samples::theta(), samples::dumbbell());
        let gs = PantGraph::parse_many(&t).unwrap();
        assert_eq!(gs, vec![samples::theta(), samples::dumbbell()]);
    }
}
