//! Plain-text graph format: a header line `n m`, then `m` lines `u v` with
//! 0-based vertices, each edge listed once with `u < v`. Blank lines and
//! lines starting with `#` are ignored.

use std::path::Path;

use super::{Graph, GraphError};

impl Graph {
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, msg: &str| GraphError::Parse { line, msg: msg.to_string() };
        let pair = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
            let nums: Vec<&str> = l.split_whitespace().collect();
            if nums.len() != 2 {
                return Err(err(line, "expected two integers"));
            }
            let parse = |s: &str| s.parse::<usize>().map_err(|_| err(line, "not a non-negative integer"));
            Ok((parse(nums[0])?, parse(nums[1])?))
        };

        let (line, header) = lines.next().ok_or_else(|| err(1, "missing `n m` header"))?;
        let (n, m) = pair(line, header)?;
        let mut g = Graph::empty(n);
        let mut read = 0;
        for (line, l) in lines {
            let (u, v) = pair(line, l)?;
            if u >= v {
                return Err(err(line, "edges must be written with u < v"));
            }
            if v >= n {
                return Err(err(line, "vertex out of range"));
            }
            if !g.add_edge(u, v) {
                return Err(err(line, "duplicate edge"));
            }
            read += 1;
        }
        if read != m {
            return Err(err(line, &format!("header announces {m} edges, found {read}")));
        }
        Ok(g)
    }

    pub fn read_text_file(path: &Path) -> Result<Graph, GraphError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GraphError::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
        Graph::from_text(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::hypercube_graph;

    #[test]
    fn round_trip() {
        let q3 = hypercube_graph(3).unwrap();
        let text = q3.to_text();
        assert!(text.starts_with("8 12\n0 1\n"));
        assert_eq!(Graph::from_text(&text).unwrap(), q3);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = Graph::from_text("# triangle\n3 3\n\n0 1\n0 2\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "3\n", "3 1\n1 0\n", "3 1\n0 3\n", "3 2\n0 1\n0 1\n", "3 2\n0 1\n", "3 1\n0 x\n"] {
            assert!(matches!(Graph::from_text(bad), Err(GraphError::Parse { .. })), "{bad:?}");
        }
    }
}
