//! Text interchange: edge lists, arc lists, graph6 and digraph6.
//!
//! Parse errors carry the byte offset of the offending token.

use super::{LabeledGraph, Orientation, MAX_VERTICES};
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

/// Input format of a graph file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

/// graph6 when the first non-empty line carries the graph6 header or decodes as graph6.
///
/// A lone label such as `a` is a one-vertex edge list: its leading byte announces 34
/// vertices with no adjacency bytes behind it.
pub fn detect_format(text: &str) -> GraphFormat {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with(GRAPH6_HEADER) => GraphFormat::Graph6,
        Some(l) if !l.starts_with('#') && parse_graph6(l).is_ok() => GraphFormat::Graph6,
        _ => GraphFormat::EdgeList,
    }
}

/// Parses either format, chosen by [`detect_format`].
pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    match detect_format(text) {
        GraphFormat::Graph6 => {
            let start = text.len() - text.trim_start().len();
            parse_graph6(text.trim()).map_err(|e| match e {
                Error::Parse { offset, message } => parse_err(offset + start, message),
                e => e,
            })
        }
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

/// Tokens of one line (comment stripped) with their byte offsets in the whole text.
fn lines_with_tokens(text: &str) -> impl Iterator<Item = (usize, Vec<(usize, &str)>)> {
    let mut offset = 0;
    text.split_inclusive('\n').map(move |raw| {
        let line_start = offset;
        offset += raw.len();
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut pos = 0;
        for piece in body.split(|c: char| c.is_whitespace()) {
            if !piece.is_empty() {
                tokens.push((line_start + pos, piece));
            }
            pos += piece.len() + 1;
        }
        (line_start, tokens)
    })
}

fn declared_vertices(
    tokens: &[(usize, &str)],
    add: &mut dyn FnMut(usize, &str) -> Result<()>,
) -> Result<bool> {
    let Some(&(_, head)) = tokens.first() else {
        return Ok(false);
    };
    let rest: Vec<(usize, &str)> = if head == "vertices:" {
        tokens[1..].to_vec()
    } else if let Some(tail) = head.strip_prefix("vertices:") {
        let mut v = vec![(tokens[0].0 + "vertices:".len(), tail)];
        v.extend_from_slice(&tokens[1..]);
        v
    } else {
        return Ok(false);
    };
    for (off, label) in rest {
        add(off, label)?;
    }
    Ok(true)
}

/// Edge-list text: optional `vertices: a b c` line, then one `u v` pair per line.
/// A line holding a single label adds that vertex.
pub fn parse_edge_list(text: &str) -> Result<LabeledGraph> {
    let mut g = LabeledGraph::new(Vec::<String>::new())?;
    let mut seen_content = false;
    for (line_start, tokens) in lines_with_tokens(text) {
        if tokens.is_empty() {
            continue;
        }
        if !seen_content {
            seen_content = true;
            let mut add = |off: usize, label: &str| -> Result<()> {
                g.add_vertex(label).map(|_| ()).map_err(|e| match e {
                    Error::LabelCollision(l) => parse_err(off, format!("vertex `{l}` declared twice")),
                    e => e,
                })
            };
            if declared_vertices(&tokens, &mut add)? {
                continue;
            }
        }
        if tokens.len() == 1 {
            intern(&mut g, tokens[0])?;
            continue;
        }
        if tokens.len() != 2 {
            let off = tokens.get(2).map_or(line_start, |t| t.0);
            return Err(parse_err(off, "expected exactly two vertices per edge line"));
        }
        let (u, v) = (tokens[0], tokens[1]);
        if u.1 == v.1 {
            return Err(parse_err(u.0, format!("loop at vertex `{}`", u.1)));
        }
        let ui = intern(&mut g, u)?;
        let vi = intern(&mut g, v)?;
        if g.has_edge(ui, vi) {
            return Err(parse_err(u.0, format!("duplicate edge {}-{}", u.1, v.1)));
        }
        g.add_edge(ui, vi)?;
    }
    Ok(g)
}

fn intern(g: &mut LabeledGraph, (off, label): (usize, &str)) -> Result<usize> {
    match g.index_of(label) {
        Some(i) => Ok(i),
        None => g.add_vertex(label).map_err(|e| parse_err(off, e.to_string())),
    }
}

/// Edge-list text with an explicit vertex line, edges in index order.
pub fn to_edge_list(g: &LabeledGraph) -> String {
    let mut s = String::from("vertices:");
    for l in g.labels() {
        s.push(' ');
        s.push_str(l);
    }
    s.push('\n');
    for (u, v) in g.edges() {
        s.push_str(&format!("{} {}\n", g.label(u), g.label(v)));
    }
    s
}

/// Arc-list text: optional `vertices:` line, then one `u > v` per line.
pub fn parse_arc_list(text: &str) -> Result<Orientation> {
    let mut o = Orientation::new(Vec::<String>::new())?;
    let mut seen_content = false;
    for (line_start, tokens) in lines_with_tokens(text) {
        if tokens.is_empty() {
            continue;
        }
        if !seen_content {
            seen_content = true;
            let mut add = |off: usize, label: &str| -> Result<()> {
                o.add_vertex(label).map(|_| ()).map_err(|e| match e {
                    Error::LabelCollision(l) => parse_err(off, format!("vertex `{l}` declared twice")),
                    e => e,
                })
            };
            if declared_vertices(&tokens, &mut add)? {
                continue;
            }
        }
        // Accept `u > v`, `u >v`, `u> v` and `u>v`.
        let joined: Vec<(usize, &str)> = tokens
            .iter()
            .flat_map(|&(off, t)| split_arrow(off, t))
            .collect();
        if joined.len() != 3 || joined[1].1 != ">" {
            return Err(parse_err(line_start, "expected an arc `u > v`"));
        }
        let (u, v) = (joined[0], joined[2]);
        if u.1 == v.1 {
            return Err(parse_err(u.0, format!("loop at vertex `{}`", u.1)));
        }
        let ui = intern_arc(&mut o, u)?;
        let vi = intern_arc(&mut o, v)?;
        if o.underlying().has_edge(ui, vi) {
            return Err(parse_err(u.0, format!("pair {}-{} is already joined", u.1, v.1)));
        }
        o.add_arc(ui, vi)?;
    }
    Ok(o)
}

fn split_arrow(off: usize, t: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in t.char_indices() {
        if c == '>' {
            if i > start {
                out.push((off + start, &t[start..i]));
            }
            out.push((off + i, ">"));
            start = i + 1;
        }
    }
    if start < t.len() {
        out.push((off + start, &t[start..]));
    }
    out
}

fn intern_arc(o: &mut Orientation, (off, label): (usize, &str)) -> Result<usize> {
    match o.underlying().index_of(label) {
        Some(i) => Ok(i),
        None => o.add_vertex(label).map_err(|e| parse_err(off, e.to_string())),
    }
}

pub fn to_arc_list(o: &Orientation) -> String {
    let mut s = String::from("vertices:");
    for l in o.labels() {
        s.push(' ');
        s.push_str(l);
    }
    s.push('\n');
    for (u, v) in o.arcs() {
        s.push_str(&format!("{} > {}\n", o.label(u), o.label(v)));
    }
    s
}

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    } else {
        out.extend_from_slice(&[126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
}

fn pack_bits(bits: impl Iterator<Item = bool>, out: &mut Vec<u8>) {
    let mut acc = 0u8;
    let mut k = 0;
    for b in bits {
        acc = acc << 1 | b as u8;
        k += 1;
        if k == 6 {
            out.push(acc + 63);
            acc = 0;
            k = 0;
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
}

/// graph6 encoding: size header, then the upper triangle column by column.
pub fn to_graph6(g: &LabeledGraph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let bits = (1..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    pack_bits(bits.map(|(i, j)| g.has_edge(i, j)), &mut out);
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// digraph6 encoding: `&`, size header, then the full adjacency matrix row by row.
pub fn to_digraph6(o: &Orientation) -> String {
    let n = o.n();
    let mut out = vec![b'&'];
    encode_n(n, &mut out);
    let bits = (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    pack_bits(bits.map(|(i, j)| o.has_arc(i, j)), &mut out);
    String::from_utf8(out).expect("digraph6 is ASCII")
}

/// Reads the size header at `bytes[pos..]`; returns `(n, next position)`.
fn decode_n(bytes: &[u8], pos: usize) -> Result<(usize, usize)> {
    let get = |i: usize| -> Result<usize> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(_) => Err(parse_err(i, "byte outside the 6-bit range 63..=126")),
            None => Err(parse_err(i, "truncated size header")),
        }
    };
    let first = get(pos)?;
    if first < 63 {
        return Ok((first, pos + 1));
    }
    if bytes.get(pos + 1) == Some(&126) {
        let mut n = 0;
        for i in pos + 2..pos + 8 {
            n = n << 6 | get(i)?;
        }
        return Ok((n, pos + 8));
    }
    let mut n = 0;
    for i in pos + 1..pos + 4 {
        n = n << 6 | get(i)?;
    }
    Ok((n, pos + 4))
}

/// Unpacks `count` bits starting at `pos`; the byte string must end exactly after them.
fn unpack_bits(bytes: &[u8], pos: usize, count: usize) -> Result<Vec<bool>> {
    let needed = count.div_ceil(6);
    if bytes.len() < pos + needed {
        return Err(parse_err(bytes.len(), format!("expected {needed} data bytes")));
    }
    if bytes.len() > pos + needed {
        return Err(parse_err(pos + needed, "trailing bytes after graph data"));
    }
    let mut bits = Vec::with_capacity(needed * 6);
    for (i, &b) in bytes[pos..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(pos + i, "byte outside the 6-bit range 63..=126"));
        }
        let v = b - 63;
        for k in (0..6).rev() {
            bits.push(v >> k & 1 == 1);
        }
    }
    if bits[count..].iter().any(|&b| b) {
        return Err(parse_err(bytes.len() - 1, "nonzero padding bits"));
    }
    bits.truncate(count);
    Ok(bits)
}

fn check_size(n: usize, offset: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(parse_err(
            offset,
            format!("{n} vertices; at most {MAX_VERTICES} are supported"),
        ));
    }
    Ok(())
}

/// Parses one graph6 string (optional `>>graph6<<` prefix, trailing newline allowed).
/// Vertices are labeled `"0"`, `"1"`, ...
pub fn parse_graph6(s: &str) -> Result<LabeledGraph> {
    let bytes = s.strip_suffix('\n').unwrap_or(s).as_bytes();
    let start = if bytes.starts_with(GRAPH6_HEADER.as_bytes()) {
        GRAPH6_HEADER.len()
    } else {
        0
    };
    let (n, pos) = decode_n(bytes, start)?;
    check_size(n, start)?;
    let bits = unpack_bits(bytes, pos, n * n.saturating_sub(1) / 2)?;
    let mut g = LabeledGraph::indexed(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Parses a digraph6 string into an orientation; mutual arcs and loops are rejected.
pub fn parse_digraph6(s: &str) -> Result<Orientation> {
    let bytes = s.strip_suffix('\n').unwrap_or(s).as_bytes();
    if bytes.first() != Some(&b'&') {
        return Err(parse_err(0, "digraph6 must start with `&`"));
    }
    let (n, pos) = decode_n(bytes, 1)?;
    check_size(n, 1)?;
    let bits = unpack_bits(bytes, pos, n * n)?;
    let mut o = Orientation::new((0..n).map(|i| i.to_string()))?;
    for i in 0..n {
        for j in 0..n {
            if bits[i * n + j] {
                o.add_arc(i, j)
                    .map_err(|e| parse_err(pos + (i * n + j) / 6, e.to_string()))?;
            }
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn edge_list_path() {
        let g = parse_edge_list("a b\nb c").unwrap();
        assert_eq!(g.labels(), ["a", "b", "c"]);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn edge_list_loop_is_an_error() {
        let e = parse_edge_list("a a").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 0, ref message } if message.contains("loop")));
    }

    #[test]
    fn edge_list_details() {
        let g = parse_edge_list("# header\nvertices: x y z\nx y # trailing\n\n").unwrap();
        assert_eq!(g.labels(), ["x", "y", "z"]);
        assert_eq!(g.edge_count(), 1);
        let e = parse_edge_list("a b\nb a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 4, .. }));
        let e = parse_edge_list("a b c\n").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 4, .. }));
        let g = named::grotzsch();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip_of_the_example() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(to_graph6(&g), "D?{");
    }

    #[test]
    fn graph6_known_encodings() {
        // Standard encodings produced by common graph tools.
        assert_eq!(to_graph6(&named::cycle(5)), "Dhc");
        assert_eq!(to_graph6(&named::complete(4)), "C~");
        assert_eq!(to_graph6(&LabeledGraph::indexed(0).unwrap()), "?");
        assert_eq!(to_graph6(&LabeledGraph::indexed(1).unwrap()), "@");
        let big = LabeledGraph::indexed(63).unwrap();
        let s = to_graph6(&big);
        assert!(s.starts_with("~??~"));
        assert_eq!(parse_graph6(&s).unwrap().n(), 63);
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_graph6("D?{?"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse_graph6("D?"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_graph6("D? "), Err(Error::Parse { offset: 2, .. })));
        // "A_" is K2; "A`" sets a padding bit.
        assert!(parse_graph6("A_").is_ok());
        assert!(matches!(parse_graph6("A`"), Err(Error::Parse { offset: 1, .. })));
        assert!(parse_graph6(">>graph6<<D?{\n").is_ok());
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("D?{\n"), GraphFormat::Graph6);
        assert_eq!(detect_format("a b\n"), GraphFormat::EdgeList);
        assert_eq!(detect_format("vertices: a\n"), GraphFormat::EdgeList);
        assert_eq!(detect_format("# c\nDhc"), GraphFormat::EdgeList);
        assert_eq!(detect_format("a\nb\nc\n"), GraphFormat::EdgeList);
        assert_eq!(parse_graph("a\nb\nc\n").unwrap().n(), 3);
        assert_eq!(parse_graph("\n  Dhc\n").unwrap(), named::cycle(5));
    }

    #[test]
    fn arc_lists() {
        let o = parse_arc_list("a > b\nb>c\nvertices: q").unwrap_err();
        assert!(matches!(o, Error::Parse { .. }));
        let o = parse_arc_list("vertices: a b c d\na > b\nb>c\n").unwrap();
        assert_eq!(o.arcs(), vec![(0, 1), (1, 2)]);
        assert_eq!(o.n(), 4);
        assert_eq!(parse_arc_list(&to_arc_list(&o)).unwrap(), o);
        assert!(parse_arc_list("a > b\nb > a\n").is_err());
        assert!(parse_arc_list("a b\n").is_err());
    }

    #[test]
    fn digraph6_round_trip() {
        let o = named::pentagon_digraph();
        let s = to_digraph6(&o);
        let back = parse_digraph6(&s).unwrap();
        assert_eq!(back.arcs(), o.arcs());
        // "&A_" sets the diagonal bit of vertex 0.
        assert!(parse_digraph6("&A_").is_err());
        assert_eq!(parse_digraph6("&AO").unwrap().arcs(), vec![(0, 1)]);
        assert!(parse_digraph6("A_").is_err());
    }
}
