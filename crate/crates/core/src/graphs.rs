//! Simple undirected graphs stored as GF(2) adjacency rows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, VertexSet, MAX_WIDTH};

/// Largest graph accepted by [`canonical_form`].
pub const CANONICAL_MAX_N: usize = 8;

/// Simple graph on vertices `1..=n`; row `v` of the adjacency is `N_v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<BitVec>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self { n, adj: vec![BitVec::zero(n); n] })
    }

    /// Builds a graph from 1-indexed edges; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry and the zero diagonal.
    pub fn from_adjacency(rows: Vec<BitVec>) -> Result<Self> {
        let n = rows.len();
        check_n(n)?;
        for (i, r) in rows.iter().enumerate() {
            if r.width() != n {
                return Err(Error::WidthMismatch { left: n, right: r.width() });
            }
            if r.bit(i) {
                return Err(Error::SelfLoop(i + 1));
            }
            for j in 0..n {
                if r.bit(j) != rows[j].bit(i) {
                    return Err(Error::Parse(format!("adjacency not symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(Self { n, adj: rows })
    }

    fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        self.adj[u - 1] = self.adj[u - 1].with_bit(v - 1, on);
        self.adj[v - 1] = self.adj[v - 1].with_bit(u - 1, on);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbourhood `N_v` of a 1-indexed vertex.
    pub fn neighbors(&self, v: usize) -> BitVec {
        self.adj[v - 1]
    }

    pub fn adjacency(&self) -> &[BitVec] {
        &self.adj
    }

    pub fn adjacency_matrix(&self) -> BitMatrix {
        BitMatrix::new(self.n, self.adj.clone()).expect("rows share the vertex count")
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n && self.adj[u - 1].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.weight() as usize).sum::<usize>() / 2
    }

    /// Number of edges of the induced subgraph `G[ξ]`.
    pub fn induced_edge_count(&self, xi: VertexSet) -> u32 {
        let mut twice = 0;
        for j in 0..self.n {
            if xi.bit(j) {
                twice += (self.adj[j] & xi).weight();
            }
        }
        twice / 2
    }

    pub fn vertex_set(&self) -> VertexSet {
        BitVec::full(self.n)
    }

    /// Graph whose edge set is the symmetric difference of the two edge sets.
    pub fn symmetric_difference(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::WidthMismatch { left: self.n, right: other.n });
        }
        let adj = self.adj.iter().zip(&other.adj).map(|(a, b)| *a ^ *b).collect();
        Ok(Graph { n: self.n, adj })
    }

    /// Relabels vertex `v` as `perm[v - 1]` (1-indexed permutation).
    pub fn relabeled(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::WidthMismatch { left: self.n, right: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p == 0 || p > self.n || seen[p - 1] {
                return Err(Error::Parse(format!("not a permutation: {perm:?}")));
            }
            seen[p - 1] = true;
        }
        let edges: Vec<(usize, usize)> =
            self.edges().into_iter().map(|(u, v)| (perm[u - 1], perm[v - 1])).collect();
        Graph::from_edges(self.n, &edges)
    }

    /// Upper-triangle bits, pair `(1,2)` most significant; defines the canonical order.
    fn triangle_key(&self) -> u64 {
        let mut key = 0u64;
        for u in 1..=self.n {
            for v in u + 1..=self.n {
                key = key << 1 | self.has_edge(u, v) as u64;
            }
        }
        key
    }

    /// Edge-list text: first line `n`, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the edge-list text format; `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad vertex count `{header}`")))?;
        let mut edges = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = parts.as_slice() else {
                return Err(Error::Parse(format!("expected `u v`, got `{line}`")));
            };
            let parse = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex `{s}`")));
            edges.push((parse(u)?, parse(v)?));
        }
        Graph::from_edges(n, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_WIDTH {
        Err(Error::VertexCount(n))
    } else {
        Ok(())
    }
}

/// Named graphs: `star:n`, `cycle:n`, `complete:n`, `path:n`, `empty:n`,
/// `k4minus1`, `house` and `bistar`.
///
/// Stars are centred on vertex 1.
pub fn named(spec: &str) -> Result<Graph> {
    let spec = spec.trim();
    match spec {
        // K4 without the edge {2,4}
        "k4minus1" => return Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)]),
        "house" => {
            return Graph::from_edges(
                5,
                &[(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)],
            )
        }
        // complete bipartite K_{3,2} on {1,2,3} | {4,5}
        "bistar" => {
            return Graph::from_edges(5, &[(1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)])
        }
        _ => {}
    }
    let (family, size) = spec.split_once(':').ok_or_else(|| Error::UnknownGraph(spec.to_string()))?;
    let n: usize = size
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex count in `{spec}`")))?;
    check_n(n)?;
    let edges: Vec<(usize, usize)> = match family.trim() {
        "star" => (2..=n).map(|v| (1, v)).collect(),
        "path" => (1..n).map(|v| (v, v + 1)).collect(),
        "cycle" => {
            if n < 3 {
                return Err(Error::Parse(format!("cycle needs at least 3 vertices, got {n}")));
            }
            (1..n).map(|v| (v, v + 1)).chain(std::iter::once((n, 1))).collect()
        }
        "complete" => (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect(),
        "empty" => Vec::new(),
        _ => return Err(Error::UnknownGraph(spec.to_string())),
    };
    Graph::from_edges(n, &edges)
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Encodes a graph in graph6 format.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 2..=n {
        for u in 1..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

/// Decodes a graph6 string (optionally with the `>>graph6<<` header).
pub fn parse_graph6(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let first = *bytes.first().ok_or_else(|| Error::Parse("empty graph6 string".into()))?;
    if !(63..=126).contains(&first) {
        return Err(Error::Parse(format!("bad graph6 header byte {first}")));
    }
    if first == 126 {
        return Err(Error::TooLarge { what: "graph6 input", max: MAX_WIDTH, n: 63 });
    }
    let n = (first - 63) as usize;
    if n == 0 || n > MAX_WIDTH {
        return Err(Error::VertexCount(n));
    }
    let nbits = n * (n - 1) / 2;
    let payload = &bytes[1..];
    let expected = nbits.div_ceil(6);
    if payload.len() != expected {
        return Err(Error::Parse(format!(
            "graph6 payload has {} bytes, expected {expected} for n={n}",
            payload.len()
        )));
    }
    let mut bits = Vec::with_capacity(expected * 6);
    for &b in payload {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("bad graph6 payload byte {b}")));
        }
        let v = b - 63;
        for k in (0..6).rev() {
            bits.push(v >> k & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Error::Parse("nonzero graph6 padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 2..=n {
        for u in 1..v {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Vertex subsets `A | B` covering all vertices, both nonempty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    a: VertexSet,
    b: VertexSet,
}

impl Bipartition {
    pub fn new(a: VertexSet) -> Result<Self> {
        let b = a.complement();
        if a.is_zero() || b.is_zero() {
            return Err(Error::Partition("both sides must be nonempty".into()));
        }
        Ok(Self { a, b })
    }

    /// Partition of `n` vertices with the listed 1-indexed vertices on side A.
    pub fn from_vertices(n: usize, a: &[usize]) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &v in a {
            if !seen.insert(v) {
                return Err(Error::Partition(format!("vertex {v} listed twice")));
            }
        }
        Self::new(BitVec::from_vertices(n, a)?)
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        self.b
    }

    pub fn n(&self) -> usize {
        self.a.width()
    }
}

/// Lexicographically least relabeling of `g`, with the permutation that produces it.
///
/// Brute force over all `n!` permutations, so restricted to `n ≤ 8`.
pub fn canonical_form(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    let n = g.n();
    if n > CANONICAL_MAX_N {
        return Err(Error::TooLarge { what: "canonical_form", max: CANONICAL_MAX_N, n });
    }
    let mut perm: Vec<usize> = (1..=n).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    permute(&mut perm, 0, &mut |p| {
        let key = relabel_key(g, p);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, p.to_vec()));
        }
    });
    let (_, perm) = best.expect("at least one permutation");
    Ok((g.relabeled(&perm)?, perm))
}

fn relabel_key(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut inverse = vec![0; n];
    for (v, &p) in perm.iter().enumerate() {
        inverse[p - 1] = v + 1;
    }
    let mut key = 0u64;
    for u in 1..=n {
        for v in u + 1..=n {
            key = key << 1 | g.has_edge(inverse[u - 1], inverse[v - 1]) as u64;
        }
    }
    key
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

impl Graph {
    /// Graph whose edges are selected by `mask`: bit `k` is the `k`-th pair
    /// `(u, v)`, `u < v`, in lexicographic order.
    pub fn from_pair_mask(n: usize, mask: u64) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for u in 1..=n {
            for v in u + 1..=n {
                if k < 64 && mask >> k & 1 == 1 {
                    g.set_edge(u, v, true);
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Ordering key used by [`canonical_form`].
    pub fn canonical_key(&self) -> u64 {
        self.triangle_key()
    }
}
