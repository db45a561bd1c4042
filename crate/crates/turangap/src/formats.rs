//! Graph file formats: graph6 and a plain edge list.

use std::fmt::Write as _;
use std::path::Path;

use turangap_core::{Graph, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("graph6: {0}")]
    Graph6(&'static str),
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl GraphFormat {
    pub fn extension(self) -> &'static str {
        match self {
            GraphFormat::Graph6 => "g6",
            GraphFormat::EdgeList => "edges",
        }
    }

    /// Guess from the file extension, falling back to the content.
    pub fn detect(path: &Path, content: &str) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6" | "graph6") => GraphFormat::Graph6,
            Some("edges" | "txt" | "el") => GraphFormat::EdgeList,
            _ => {
                let first = content.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim();
                let looks_g6 = !first.is_empty()
                    && !first.contains(char::is_whitespace)
                    && first.bytes().all(|b| (63..=126).contains(&b));
                if looks_g6 && first.parse::<usize>().is_err() {
                    GraphFormat::Graph6
                } else {
                    GraphFormat::EdgeList
                }
            }
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let (mut acc, mut bits) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("printable ascii")
}

pub fn from_graph6(s: &str) -> Result<Graph, FormatError> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Graph6("empty input"));
    }
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6("byte outside 63..=126"));
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (val(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(FormatError::Graph6("truncated size"));
        }
        ((val(bytes[1]) << 12) | (val(bytes[2]) << 6) | val(bytes[3]), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(FormatError::Graph6("truncated size"));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | val(b));
        (n, &bytes[8..])
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if rest.len() != pairs.div_ceil(6) {
        return Err(FormatError::Graph6("body length does not match vertex count"));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = val(rest[idx / 6]);
            if byte >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// `n m` on the first line, then one `u v` per line.
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Reads `n [m]` and then `u v` lines; `#` starts a comment.
pub fn from_edge_list(s: &str) -> Result<Graph, FormatError> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, msg: &str| FormatError::EdgeList {
        line,
        msg: msg.to_string(),
    };
    let (hl, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let n: usize = nums
        .first()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| err(hl, "header must start with the vertex count"))?;
    let m: Option<usize> = match nums.get(1) {
        Some(t) => Some(t.parse().map_err(|_| err(hl, "bad edge count"))?),
        None => None,
    };
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(err(ln, "expected two vertex numbers")),
        }
    }
    if let Some(m) = m {
        if m != edges.len() {
            return Err(err(hl, &format!("header says {m} edges, found {}", edges.len())));
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn render(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => {
            let mut s = to_graph6(g);
            s.push('\n');
            s
        }
        GraphFormat::EdgeList => to_edge_list(g),
    }
}

pub fn parse(content: &str, format: GraphFormat) -> Result<Graph, FormatError> {
    match format {
        GraphFormat::Graph6 => from_graph6(content.lines().next().unwrap_or("")),
        GraphFormat::EdgeList => from_edge_list(content),
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, FormatError> {
    let content = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&content, GraphFormat::detect(path, &content))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        // the 5-cycle 0-1-2-3-4-0 is "Dhc" in graph6
        assert_eq!(to_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(from_graph6("Dhc").unwrap(), Graph::cycle(5));
        assert_eq!(from_graph6(">>graph6<<C~").unwrap(), Graph::complete(4));
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("D").is_err());
        assert!(from_graph6("D h").is_err());
        assert!(from_edge_list("3 1\n0 1\n1 2\n").is_err());
        assert!(from_edge_list("3\n0 3\n").is_err());
        assert!(from_edge_list("x\n").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::cycle(7);
        assert_eq!(from_edge_list(&to_edge_list(&g)).unwrap(), g);
        let with_comments = "# pentagon\n5\n0 1 # first\n1 2\n2 3\n3 4\n4 0\n";
        assert_eq!(from_edge_list(with_comments).unwrap(), Graph::cycle(5));
    }

    #[test]
    fn large_header() {
        let g = Graph::path(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn detection() {
        assert_eq!(GraphFormat::detect(Path::new("a.g6"), ""), GraphFormat::Graph6);
        assert_eq!(GraphFormat::detect(Path::new("a"), "Dhc\n"), GraphFormat::Graph6);
        assert_eq!(GraphFormat::detect(Path::new("a"), "5 5\n0 1\n"), GraphFormat::EdgeList);
    }
}
