//! graph6 and the native multipole text format.
//!
//! Multipole text: a header line `n k f` (vertices, semiedges, isolated
//! edges) followed by one line per edge. An edge end is either a 0-based
//! vertex `u` or a 1-based semiedge slot `*i`, so links read `u v`, dangling
//! edges `u *i` and isolated edges `*i *j`. Lines starting with `#` are
//! ignored.

use super::{End, GraphError, Multipole};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes a graph6 line into its order and edge list. Edges come in
/// column-major upper-triangle order: `(i, j)` with `i < j`, sorted by `j`
/// then `i`.
pub fn decode_graph6(line: &str) -> Result<(usize, Vec<(usize, usize)>), GraphError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Parse("empty graph6 line".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Parse(format!("byte {b} outside the graph6 range")));
    }
    let (n, body) = if bytes[0] != 126 {
        (usize::from(bytes[0] - 63), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(GraphError::Parse("truncated graph6 size".into()));
        }
        (sextets(&bytes[1..4]), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(GraphError::Parse("truncated graph6 size".into()));
        }
        (sextets(&bytes[2..8]), &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() != needed {
        return Err(GraphError::Parse(format!(
            "graph6 body has {} bytes, expected {needed} for n = {n}",
            body.len()
        )));
    }
    let bit = |t: usize| (body[t / 6] - 63) >> (5 - t % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut t = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(t) {
                edges.push((i, j));
            }
            t += 1;
        }
    }
    Ok((n, edges))
}

fn sextets(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | usize::from(b - 63))
}

/// Parses a graph6 line as a cubic graph.
pub fn parse_graph6(line: &str) -> Result<Multipole, GraphError> {
    let (n, edges) = decode_graph6(line)?;
    Multipole::from_edges(n, &edges)
}

/// Encodes a simple graph in graph6.
pub fn write_graph6(g: &Multipole) -> Result<String, GraphError> {
    if !g.is_graph() {
        return Err(GraphError::Unrepresentable(format!("graph6 cannot hold a {}-pole", g.size())));
    }
    if !g.is_simple() {
        return Err(GraphError::Unrepresentable("graph6 cannot hold parallel edges".into()));
    }
    let n = g.order();
    let mut out = String::new();
    let push = |out: &mut String, v: usize| out.push(char::from(63 + v as u8));
    if n <= 62 {
        push(&mut out, n);
    } else if n <= 258_047 {
        out.push('~');
        for s in [12, 6, 0] {
            push(&mut out, (n >> s) & 63);
        }
    } else {
        out.push_str("~~");
        for s in [30, 24, 18, 12, 6, 0] {
            push(&mut out, (n >> s) & 63);
        }
    }
    let mut acc = 0;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | usize::from(g.multiplicity(i, j) > 0);
            filled += 1;
            if filled == 6 {
                push(&mut out, acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        push(&mut out, acc << (6 - filled));
    }
    Ok(out)
}

fn parse_end(tok: &str, k: usize) -> Result<End, GraphError> {
    if let Some(slot) = tok.strip_prefix('*') {
        let i: usize = slot
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad semiedge token {tok:?}")))?;
        if i == 0 || i > k {
            return Err(GraphError::Parse(format!("semiedge slot {i} outside 1..={k}")));
        }
        Ok(End::Semi(i - 1))
    } else {
        tok.parse()
            .map(End::Vertex)
            .map_err(|_| GraphError::Parse(format!("bad vertex token {tok:?}")))
    }
}

fn parse_usize(tok: Option<&str>, what: &str) -> Result<usize, GraphError> {
    tok.ok_or_else(|| GraphError::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| GraphError::Parse(format!("bad {what}")))
}

/// Parses one multipole record.
pub fn parse_multipole(text: &str) -> Result<Multipole, GraphError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| GraphError::Parse("empty multipole record".into()))?;
    let mut it = header.split_whitespace();
    let n = parse_usize(it.next(), "vertex count")?;
    let k = parse_usize(it.next(), "semiedge count")?;
    let f = parse_usize(it.next(), "isolated edge count")?;
    if it.next().is_some() {
        return Err(GraphError::Parse(format!("header {header:?} has extra fields")));
    }
    let mut ends = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = toks[..] else {
            return Err(GraphError::Parse(format!("edge line {line:?} needs two ends")));
        };
        ends.push((parse_end(a, k)?, parse_end(b, k)?));
    }
    let isolated = ends
        .iter()
        .filter(|(a, b)| matches!((a, b), (End::Semi(_), End::Semi(_))))
        .count();
    if isolated != f {
        return Err(GraphError::Parse(format!("header declares {f} isolated edges, found {isolated}")));
    }
    Multipole::new(n, k, &ends)
}

/// Writes a multipole in text form; edges appear in edge-id order with their
/// ends in dart order, so `parse_multipole` restores the same multipole.
pub fn write_multipole(g: &Multipole) -> String {
    let fmt_end = |e: End| match e {
        End::Vertex(v) => v.to_string(),
        End::Semi(s) => format!("*{}", s + 1),
    };
    let mut out = format!("{} {} {}\n", g.order(), g.size(), g.isolated_count());
    for (a, b) in g.all_ends() {
        out.push_str(&fmt_end(a));
        out.push(' ');
        out.push_str(&fmt_end(b));
        out.push('\n');
    }
    out
}

/// Splits a text of blank-line separated multipole records.
pub fn parse_multipole_catalog(text: &str) -> Result<Vec<Multipole>, GraphError> {
    let mut records = Vec::new();
    let mut current = String::new();
    for line in text.lines().chain(std::iter::once("")) {
        if line.trim().is_empty() {
            if current.lines().any(|l| !l.trim().starts_with('#') && !l.trim().is_empty()) {
                records.push(parse_multipole(&current)?);
            }
            current.clear();
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    Ok(records)
}
