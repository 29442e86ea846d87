//! Construction, parsing, and transformation of the graph families under study.
//!
//! All graphs are finite, simple, and undirected; adjacency is kept symmetric
//! with a zero diagonal by construction. Canonical vertex labelings for the
//! named families are fixed (see `docs/constructions.md`) so spectra and
//! certificates reproduce byte for byte.

use crate::eigen::SymmetricMatrix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge endpoint {index} out of range for {n} vertices")]
    EndpointOutOfRange { index: usize, n: usize },
    #[error("loop edge ({vertex},{vertex}) not allowed")]
    LoopEdge { vertex: usize },
    #[error("malformed edge list at line {line}: {reason}")]
    MalformedEdgeList { line: usize, reason: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at position {position} outside the printable range [63,126]")]
    InvalidByte { position: usize, byte: u8 },
    #[error("extended graph6 sizes (n > 62) are not supported")]
    ExtendedSizeUnsupported,
    #[error("truncated graph6 body: need {expected} data bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing graph6 data: need {expected} data bytes, found {found}")]
    TrailingData { expected: usize, found: usize },
    #[error("graph on {n} vertices does not fit the one-byte graph6 size form (n <= 62)")]
    TooLarge { n: usize },
    #[error("the zero-vertex graph6 encoding is not supported")]
    ZeroVertices,
}

/// Simple undirected graph on vertices 0..n-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>, // row-major n*n, symmetric, false diagonal
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "graph must have at least one vertex");
        Self {
            n,
            adj: vec![false; n * n],
        }
    }

    /// Duplicate pairs collapse; (i,j) and (j,i) describe the same edge.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            if i >= n {
                return Err(GraphError::EndpointOutOfRange { index: i, n });
            }
            if j >= n {
                return Err(GraphError::EndpointOutOfRange { index: j, n });
            }
            if i == j {
                return Err(GraphError::LoopEdge { vertex: i });
            }
            g.adj[i * n + j] = true;
            g.adj[j * n + i] = true;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(v, u)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Edges as (i, j) with i < j, row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Complement graph: entrywise A(g) + A(complement) = J - I.
    pub fn complement(&self) -> Graph {
        let n = self.n;
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g.adj[i * n + j] = !self.adj[i * n + j];
                }
            }
        }
        g
    }

    /// Replaces every vertex by a t-clique and every edge by a complete join;
    /// block form of the adjacency is (A + I) o J_t - I.
    pub fn closed_blowup(&self, t: usize) -> Graph {
        assert!(t >= 1, "blowup factor must be positive");
        let n = self.n;
        let mut g = Graph::empty(n * t);
        for vi in 0..n {
            for si in 0..t {
                for vj in 0..n {
                    for sj in 0..t {
                        let a = vi * t + si;
                        let b = vj * t + sj;
                        if a == b {
                            continue;
                        }
                        if vi == vj || self.has_edge(vi, vj) {
                            g.adj[a * (n * t) + b] = true;
                        }
                    }
                }
            }
        }
        g
    }

    pub fn adjacency_matrix(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(self.n, |i, j| {
            if i != j && self.has_edge(i, j) {
                1.0
            } else {
                0.0
            }
        })
    }
}

/// Disjoint union of k cliques of size m: vertices i, j adjacent iff they
/// fall in the same block of m consecutive labels.
pub fn union_cliques(k: usize, m: usize) -> Graph {
    assert!(k >= 1 && m >= 1, "clique parameters must be positive");
    let n = k * m;
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if i / m == j / m {
                g.adj[i * n + j] = true;
                g.adj[j * n + i] = true;
            }
        }
    }
    g
}

/// The 12-vertex 5-regular icosahedral graph with the fixed labeling:
/// apex 0, upper 5-cycle 1..=5, lower 5-cycle 6..=10, apex 11.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::with_capacity(30);
    for i in 1..=5usize {
        edges.push((0, i));
        edges.push((i, 1 + (i % 5))); // upper cycle
        edges.push((11, i + 5));
        edges.push((i + 5, 6 + (i % 5))); // lower cycle
        edges.push((i, i + 5)); // antiprism struts
        edges.push((i, 6 + (i % 5)));
    }
    Graph::from_edge_list(12, &edges).expect("fixed construction")
}

/// Paley graph on the 9-element field GF(3)[x]/(x^2 + 1): vertex 3a + b
/// stands for a + b x, and u ~ v iff u - v is a nonzero square, i.e. one of
/// {1, 2, x, 2x}. Concretely: adjacent iff the pairs differ in exactly one
/// coordinate, which is the 3x3 rook's graph.
pub fn paley9() -> Graph {
    let mut edges = Vec::new();
    for a1 in 0..3usize {
        for b1 in 0..3usize {
            for a2 in 0..3usize {
                for b2 in 0..3usize {
                    let u = 3 * a1 + b1;
                    let v = 3 * a2 + b2;
                    if u < v {
                        let da = (3 + a1 - a2) % 3;
                        let db = (3 + b1 - b2) % 3;
                        // nonzero squares of GF(9) are +-1 and +-x
                        if (da == 0) != (db == 0) {
                            edges.push((u, v));
                        }
                    }
                }
            }
        }
    }
    Graph::from_edge_list(9, &edges).expect("fixed construction")
}

const G6_BIAS: u8 = 63;
const G6_MAX_N: usize = 62;

/// Decodes the one-byte-size graph6 form (n <= 62). Pair bits run
/// column-major over (i, j) with i < j, ordered by j then i, six bits per
/// byte, high bit first.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (position, &byte) in bytes.iter().enumerate() {
        if !(G6_BIAS..=126).contains(&byte) {
            return Err(Graph6Error::InvalidByte { position, byte });
        }
    }
    if bytes[0] == 126 {
        // '~' introduces the multi-byte size forms
        return Err(Graph6Error::ExtendedSizeUnsupported);
    }
    let n = (bytes[0] - G6_BIAS) as usize;
    if n == 0 {
        return Err(Graph6Error::ZeroVertices);
    }
    let body = &bytes[1..];
    let bit_count = n * (n - 1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData {
            expected,
            found: body.len(),
        });
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - G6_BIAS;
            if (byte >> (5 - bit % 6)) & 1 == 1 {
                g.adj[i * n + j] = true;
                g.adj[j * n + i] = true;
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Inverse of [`parse_graph6`], restricted to the same one-byte size form.
pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > G6_MAX_N {
        return Err(Graph6Error::TooLarge { n });
    }
    let mut out = vec![G6_BIAS + n as u8];
    let bit_count = n * (n - 1) / 2;
    out.resize(1 + bit_count.div_ceil(6), G6_BIAS);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                out[1 + bit / 6] += 1 << (5 - bit % 6);
            }
            bit += 1;
        }
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ascii"))
}

/// Edge-list text format: first line "n", then one "i j" pair per line
/// (0-based, whitespace-separated). Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, l)| (idx + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines.next().ok_or(GraphError::MalformedEdgeList {
        line: 1,
        reason: "missing vertex-count header".into(),
    })?;
    let n: usize = header.parse().map_err(|_| GraphError::MalformedEdgeList {
        line,
        reason: format!("expected vertex count, found {header:?}"),
    })?;
    if n == 0 {
        return Err(GraphError::MalformedEdgeList {
            line,
            reason: "vertex count must be positive".into(),
        });
    }

    let mut edges = Vec::new();
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize, GraphError> {
            tok.ok_or(GraphError::MalformedEdgeList {
                line,
                reason: "expected \"i j\"".into(),
            })?
            .parse()
            .map_err(|_| GraphError::MalformedEdgeList {
                line,
                reason: format!("expected \"i j\", found {l:?}"),
            })
        };
        let i = parse(parts.next())?;
        let j = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(GraphError::MalformedEdgeList {
                line,
                reason: format!("expected \"i j\", found {l:?}"),
            });
        }
        edges.push((i, j));
    }
    Graph::from_edge_list(n, &edges)
}
