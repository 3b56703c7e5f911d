//! Complex text records and DOT export:
//!
//! ```text
//! complex type=S g=0 n=4
//! vertices
//! 0 <key hex>
//! edges
//! 0 0 1 F e=4 v=AD
//! cells
//! triangle: 0+,1+,2- @ 0 F e=4 v=AD F e=4 v=AC F e=4 v=AD
//! ```

use std::fmt::Write;

use super::{
    Cell, CellKind, CellTemplateMatch, ComplexType, Edge, EdgeKind, Letter, TwoComplex, Vertex,
};
use crate::error::ParseError;
use crate::graph::{CanonicalKey, PantGraph};
use crate::moves::{parse_moves, DecoratedPantGraph, MoveSpec};

fn word_text(word: &[Letter]) -> String {
    let parts: Vec<String> = word
        .iter()
        .map(|&(e, s)| format!("{e}{}", if s > 0 { '+' } else { '-' }))
        .collect();
    parts.join(",")
}

fn moves_text(moves: &[MoveSpec]) -> String {
    let parts: Vec<String> = moves.iter().map(|m| m.to_string()).collect();
    parts.join(" ")
}

pub(super) fn write_complex(c: &TwoComplex) -> String {
    let mut s = String::new();
    let ty = c.ty.name();
    writeln!(s, "complex type={ty} g={} n={}", c.g, c.n).unwrap();
    s.push_str("vertices\n");
    for (i, v) in c.vertices.iter().enumerate() {
        writeln!(s, "{i} {}", v.key.to_hex()).unwrap();
    }
    s.push_str("edges\n");
    for (i, e) in c.edges.iter().enumerate() {
        writeln!(s, "{i} {} {} {}", e.src, e.dst, e.witness).unwrap();
    }
    s.push_str("cells\n");
    for cell in &c.cells {
        write!(s, "{}: {}", cell.kind, word_text(&cell.boundary)).unwrap();
        if let Some(m) = &cell.witness {
            write!(s, " @ {} {}", m.vertex, moves_text(&m.moves)).unwrap();
        }
        s.push('\n');
    }
    s
}

pub(super) fn write_dot(c: &TwoComplex) -> String {
    let mut s = String::new();
    let ty = c.ty.name();
    writeln!(s, "graph {ty}_{}_{} {{", c.g, c.n).unwrap();
    for (i, v) in c.vertices.iter().enumerate() {
        writeln!(s, "  v{i} [label=\"{}\"];", v.key.digest()).unwrap();
    }
    for (i, e) in c.edges.iter().enumerate() {
        let color = match e.kind {
            EdgeKind::F => "black",
            EdgeKind::Tau => "blue",
        };
        writeln!(
            s,
            "  v{} -- v{} [color={color}, label=\"e{i}\"];",
            e.src, e.dst
        )
        .unwrap();
    }
    s.push_str("}\n");
    s
}

struct Cursor<'a> {
    no: usize,
    text: &'a str,
}

impl Cursor<'_> {
    fn err(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.no, col + 1, msg)
    }
}

/// Whitespace tokens with byte offsets.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    s.split_whitespace()
        .map(|t| (t.as_ptr() as usize - s.as_ptr() as usize, t))
        .collect()
}

fn num<T: std::str::FromStr>(
    line: &Cursor,
    tok: Option<&(usize, &str)>,
    what: &str,
) -> Result<T, ParseError> {
    match tok {
        Some(&(off, t)) => t
            .parse()
            .map_err(|_| line.err(off, format!("expected {what}, found `{t}`"))),
        None => Err(line.err(line.text.len(), format!("missing {what}"))),
    }
}

fn parse_word(line: &Cursor, s: &str, base: usize) -> Result<Vec<Letter>, ParseError> {
    let mut out = Vec::new();
    let mut off = 0;
    for part in s.split(',') {
        let lead = part.len() - part.trim_start().len();
        let p = part.trim();
        let col = base + off + lead;
        off += part.len() + 1;
        if p.is_empty() {
            continue;
        }
        let (body, sign) = match p.as_bytes()[p.len() - 1] {
            b'+' => (&p[..p.len() - 1], 1),
            b'-' => (&p[..p.len() - 1], -1),
            _ => return Err(line.err(col, "letter must end in `+` or `-`")),
        };
        let e = body
            .parse()
            .map_err(|_| line.err(col, format!("bad edge id `{body}`")))?;
        out.push((e, sign));
    }
    Ok(out)
}

fn shift(e: ParseError, line: &Cursor, base: usize) -> ParseError {
    ParseError::new(line.no, base + e.column, e.message)
}

pub(super) fn parse_complex(s: &str) -> Result<TwoComplex, ParseError> {
    let lines: Vec<Cursor> = s
        .lines()
        .enumerate()
        .map(|(i, t)| Cursor {
            no: i + 1,
            text: t.trim_end(),
        })
        .filter(|c| !c.text.trim().is_empty() && !c.text.trim_start().starts_with('#'))
        .collect();
    let header = lines
        .first()
        .ok_or_else(|| ParseError::new(1, 1, "empty input"))?;
    let toks = tokens(header.text);
    if toks.first().map(|t| t.1) != Some("complex") {
        return Err(header.err(0, "expected `complex`"));
    }
    let (mut ty, mut g, mut n) = (None, None, None);
    for &(off, t) in &toks[1..] {
        if let Some(v) = t.strip_prefix("type=") {
            ty = Some(match v {
                "S" => ComplexType::S,
                "Sdec" => ComplexType::Sdec,
                _ => return Err(header.err(off + 5, format!("unknown type `{v}`"))),
            });
        } else if let Some(v) = t.strip_prefix("g=") {
            g = Some(num::<u32>(header, Some(&(off + 2, v)), "genus")?);
        } else if let Some(v) = t.strip_prefix("n=") {
            n = Some(num::<u32>(header, Some(&(off + 2, v)), "boundary count")?);
        } else {
            return Err(header.err(off, format!("unexpected `{t}`")));
        }
    }
    let (Some(ty), Some(g), Some(n)) = (ty, g, n) else {
        return Err(header.err(0, "header needs type=, g= and n="));
    };
    let mut complex = TwoComplex {
        ty,
        g,
        n,
        vertices: Vec::new(),
        edges: Vec::new(),
        cells: Vec::new(),
    };
    let mut section = "";
    for line in &lines[1..] {
        let t = line.text.trim();
        if matches!(t, "vertices" | "edges" | "cells") {
            let expected = match section {
                "" => "vertices",
                "vertices" => "edges",
                "edges" => "cells",
                _ => "",
            };
            if t != expected {
                return Err(line.err(0, format!("expected section `{expected}`")));
            }
            section = match t {
                "vertices" => "vertices",
                "edges" => "edges",
                _ => "cells",
            };
            continue;
        }
        match section {
            "vertices" => complex
                .vertices
                .push(parse_vertex(line, ty, complex.vertices.len())?),
            "edges" => complex.edges.push(parse_edge(line, complex.edges.len())?),
            "cells" => complex.cells.push(parse_cell(line)?),
            _ => return Err(line.err(0, "expected a section header")),
        }
    }
    if section != "cells" {
        return Err(ParseError::new(
            lines.last().map_or(1, |l| l.no + 1),
            1,
            "missing section",
        ));
    }
    Ok(complex)
}

fn parse_vertex(line: &Cursor, ty: ComplexType, expect: usize) -> Result<Vertex, ParseError> {
    let toks = tokens(line.text);
    let id: usize = num(line, toks.first(), "vertex id")?;
    if id != expect {
        return Err(line.err(toks[0].0, format!("expected vertex id {expect}")));
    }
    let &(off, hex) = toks
        .get(1)
        .ok_or_else(|| line.err(line.text.len(), "missing key"))?;
    if toks.len() > 2 {
        return Err(line.err(toks[2].0, "trailing input"));
    }
    let key = CanonicalKey::from_hex(hex).ok_or_else(|| line.err(off, "key is not hex"))?;
    let bad = || line.err(off, "key does not encode a graph");
    match ty {
        ComplexType::S => {
            let (graph, _) = PantGraph::try_from_key(&key).ok_or_else(bad)?;
            Ok(Vertex {
                key,
                graph,
                positions: Vec::new(),
            })
        }
        ComplexType::Sdec => {
            let d = DecoratedPantGraph::try_from_key(&key).ok_or_else(bad)?;
            Ok(Vertex {
                graph: d.base().clone(),
                positions: d.positions().to_vec(),
                key,
            })
        }
    }
}

fn parse_edge(line: &Cursor, expect: usize) -> Result<Edge, ParseError> {
    let toks = tokens(line.text);
    let id: usize = num(line, toks.first(), "edge id")?;
    if id != expect {
        return Err(line.err(toks[0].0, format!("expected edge id {expect}")));
    }
    let src = num(line, toks.get(1), "source vertex")?;
    let dst = num(line, toks.get(2), "target vertex")?;
    let &(off, _) = toks
        .get(3)
        .ok_or_else(|| line.err(line.text.len(), "missing move"))?;
    let moves = parse_moves(&line.text[off..]).map_err(|e| shift(e, line, off))?;
    let &[witness] = moves.as_slice() else {
        return Err(line.err(off, "expected exactly one move"));
    };
    let kind = match witness {
        MoveSpec::F { .. } => EdgeKind::F,
        MoveSpec::Tau { .. } => EdgeKind::Tau,
    };
    Ok(Edge {
        src,
        dst,
        kind,
        witness,
    })
}

fn parse_cell(line: &Cursor) -> Result<Cell, ParseError> {
    let text = line.text;
    let colon = text
        .find(':')
        .ok_or_else(|| line.err(0, "expected `kind:`"))?;
    let kind_s = text[..colon].trim();
    let kind = CellKind::from_name(kind_s)
        .ok_or_else(|| line.err(0, format!("unknown cell kind `{kind_s}`")))?;
    let rest = &text[colon + 1..];
    let (word_s, witness_s) = match rest.find('@') {
        Some(at) => (&rest[..at], Some((colon + 1 + at + 1, &rest[at + 1..]))),
        None => (rest, None),
    };
    let boundary = parse_word(line, word_s, colon + 1)?;
    let witness = match witness_s {
        None => None,
        Some((base, w)) => {
            let toks = tokens(w);
            let vertex = num(
                line,
                toks.first().map(|&(o, t)| (base + o, t)).as_ref(),
                "vertex id",
            )?;
            let moves = match toks.get(1) {
                Some(&(o, _)) => parse_moves(&w[o..]).map_err(|e| shift(e, line, base + o))?,
                None => Vec::new(),
            };
            Some(CellTemplateMatch::new(vertex, moves))
        }
    };
    Ok(Cell {
        kind,
        boundary,
        witness,
    })
}
