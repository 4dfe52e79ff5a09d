//! Digraphs of matrices and their disjoint cycle covers.
//!
//! A permutation `σ` with `∏ M[i][σ(i)] ≠ 0` is the same thing as a set of
//! vertex-disjoint directed cycles in the digraph of `M` that together visit
//! every vertex. Summing `sgn · weight` over those covers gives `det M`, which
//! is how the exact characteristic polynomials in this crate are computed.
//!
//! Vertices are numbered from 1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::exact::{GaussInt, MultiPoly, SquareMatrix};

/// Largest dimension accepted by [`det_cofactor`].
pub const COFACTOR_MAX_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("edge {0} refers to a vertex outside 1..={1}")]
    VertexOutOfRange(EdgeKey, usize),
    #[error("edge {0} appears twice")]
    DuplicateEdge(EdgeKey),
    #[error("vertex {0} has no untagged self-loop to split")]
    MissingSelfLoop(usize),
    #[error("split weights at vertex {vertex} sum to {sum}, loop weight is {loop_weight}")]
    SplitMismatch {
        vertex: usize,
        sum: MultiPoly,
        loop_weight: MultiPoly,
    },
    #[error("edge {0} is both required and forbidden")]
    FilterConflict(EdgeKey),
    #[error("Jacobi digraph of size {m} needs {m} diagonal and {off} off-diagonal weight pairs, got {diag} and {got}")]
    LengthMismatch {
        m: usize,
        off: usize,
        diag: usize,
        got: usize,
    },
    #[error("cofactor expansion is limited to dimension {max}, got {n}")]
    DimensionTooLarge { n: usize, max: usize },
}

/// Identifies an edge. Self-loops produced by [`refine_self_loops`] carry a
/// tag (1 for the first split weight, 2 for the second) so both can coexist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    pub source: usize,
    pub target: usize,
    pub tag: Option<u8>,
}

impl EdgeKey {
    pub fn new(source: usize, target: usize) -> Self {
        EdgeKey {
            source,
            target,
            tag: None,
        }
    }

    pub fn tagged(source: usize, target: usize, tag: u8) -> Self {
        EdgeKey {
            source,
            target,
            tag: Some(tag),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.source, self.target)?;
        if let Some(t) = self.tag {
            write!(f, "_{t}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub key: EdgeKey,
    pub weight: MultiPoly,
}

/// A weighted directed graph on vertices `1..=n`. Zero-weight edges are
/// dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    edges: Vec<Edge>,
    // per source vertex (0-based), edge indices ordered by (target, tag)
    out: Vec<Vec<usize>>,
}

impl WeightedDigraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, CoverError> {
        let mut edges: Vec<Edge> = edges.into_iter().filter(|e| !e.weight.is_zero()).collect();
        edges.sort_by_key(|e| e.key);
        for e in &edges {
            let k = e.key;
            if k.source == 0 || k.target == 0 || k.source > n || k.target > n {
                return Err(CoverError::VertexOutOfRange(k, n));
            }
        }
        if let Some(w) = edges.windows(2).find(|w| w[0].key == w[1].key) {
            return Err(CoverError::DuplicateEdge(w[0].key));
        }
        let mut out = vec![Vec::new(); n];
        for (idx, e) in edges.iter().enumerate() {
            out[e.key.source - 1].push(idx);
        }
        Ok(WeightedDigraph { n, edges, out })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Edges sorted by key.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, key: &EdgeKey) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(key, |e| e.key)
            .ok()
            .map(|i| &self.edges[i])
    }
}

/// The digraph of `m`: an edge `(i, j)` of weight `m[i][j]` for every nonzero
/// entry.
pub fn digraph_of_matrix(m: &SquareMatrix<MultiPoly>) -> WeightedDigraph {
    let n = m.dim();
    let edges = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| Edge {
        key: EdgeKey::new(i + 1, j + 1),
        weight: m[(i, j)].clone(),
    });
    WeightedDigraph::new(n, edges).expect("matrix indices are always in range")
}

/// Replaces the untagged self-loop at each listed vertex by two tagged loops
/// of weights `w1` (tag 1) and `w2` (tag 2). Zero weights are left out.
pub fn refine_self_loops(
    graph: &WeightedDigraph,
    split: &BTreeMap<usize, (MultiPoly, MultiPoly)>,
) -> Result<WeightedDigraph, CoverError> {
    let mut edges: Vec<Edge> = graph.edges.clone();
    for (&vertex, (w1, w2)) in split {
        let key = EdgeKey::new(vertex, vertex);
        let pos = edges
            .iter()
            .position(|e| e.key == key)
            .ok_or(CoverError::MissingSelfLoop(vertex))?;
        let sum = w1 + w2;
        if sum != edges[pos].weight {
            return Err(CoverError::SplitMismatch {
                vertex,
                sum,
                loop_weight: edges[pos].weight.clone(),
            });
        }
        edges.remove(pos);
        edges.push(Edge {
            key: EdgeKey::tagged(vertex, vertex, 1),
            weight: w1.clone(),
        });
        edges.push(Edge {
            key: EdgeKey::tagged(vertex, vertex, 2),
            weight: w2.clone(),
        });
    }
    WeightedDigraph::new(graph.n, edges)
}

/// The path digraph with loops of a Jacobi matrix of size `m`: loop weights
/// `diag[i]`, and for each neighbouring pair `off[i] = (M[i][i+1], M[i+1][i])`.
pub fn jacobi_digraph(
    m: usize,
    diag: &[MultiPoly],
    off: &[(MultiPoly, MultiPoly)],
) -> Result<WeightedDigraph, CoverError> {
    let want_off = m.saturating_sub(1);
    if diag.len() != m || off.len() != want_off {
        return Err(CoverError::LengthMismatch {
            m,
            off: want_off,
            diag: diag.len(),
            got: off.len(),
        });
    }
    let loops = diag.iter().enumerate().map(|(i, w)| Edge {
        key: EdgeKey::new(i + 1, i + 1),
        weight: w.clone(),
    });
    let hops = off.iter().enumerate().flat_map(|(i, (up, down))| {
        [
            Edge {
                key: EdgeKey::new(i + 1, i + 2),
                weight: up.clone(),
            },
            Edge {
                key: EdgeKey::new(i + 2, i + 1),
                weight: down.clone(),
            },
        ]
    });
    WeightedDigraph::new(m, loops.chain(hops).collect::<Vec<_>>())
}

/// `J_m` with every weight equal to one.
pub fn jacobi_unit(m: usize) -> WeightedDigraph {
    let diag = vec![MultiPoly::one(); m];
    let off = vec![(MultiPoly::one(), MultiPoly::one()); m.saturating_sub(1)];
    jacobi_digraph(m, &diag, &off).expect("lengths match by construction")
}

/// Restricts which covers [`enumerate_covers`] yields.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverFilter {
    required: BTreeSet<EdgeKey>,
    forbidden: BTreeSet<EdgeKey>,
    two_cycles: Option<usize>,
}

impl CoverFilter {
    /// Accepts every cover.
    pub fn all() -> Self {
        CoverFilter::default()
    }

    pub fn new(
        required: impl IntoIterator<Item = EdgeKey>,
        forbidden: impl IntoIterator<Item = EdgeKey>,
        two_cycles: Option<usize>,
    ) -> Result<Self, CoverError> {
        let required: BTreeSet<_> = required.into_iter().collect();
        let forbidden: BTreeSet<_> = forbidden.into_iter().collect();
        if let Some(&k) = required.intersection(&forbidden).next() {
            return Err(CoverError::FilterConflict(k));
        }
        Ok(CoverFilter {
            required,
            forbidden,
            two_cycles,
        })
    }

    /// Only covers with exactly `p` cycles of length two.
    pub fn two_cycles(p: usize) -> Self {
        CoverFilter {
            two_cycles: Some(p),
            ..CoverFilter::default()
        }
    }

    pub fn required(&self) -> &BTreeSet<EdgeKey> {
        &self.required
    }

    pub fn forbidden(&self) -> &BTreeSet<EdgeKey> {
        &self.forbidden
    }

    pub fn exact_two_cycles(&self) -> Option<usize> {
        self.two_cycles
    }
}

/// A disjoint cycle cover together with its sign and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCover {
    /// Each cycle as its edge sequence, starting at its smallest vertex.
    pub cycles: Vec<Vec<EdgeKey>>,
    /// `(-1)^(n - #cycles)`.
    pub sign: i8,
    pub weight: MultiPoly,
}

impl CycleCover {
    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn two_cycle_count(&self) -> usize {
        self.cycles.iter().filter(|c| c.len() == 2).count()
    }

    /// Successor map: entry `i - 1` is the vertex that `i` points to.
    pub fn successors(&self) -> Vec<usize> {
        let n = self.cycles.iter().map(Vec::len).sum();
        let mut succ = vec![0; n];
        for e in self.cycles.iter().flatten() {
            succ[e.source - 1] = e.target;
        }
        succ
    }

    pub fn edges(&self) -> impl Iterator<Item = &EdgeKey> {
        self.cycles.iter().flatten()
    }

    /// `sign · weight`, the cover's contribution to the determinant.
    pub fn signed_weight(&self) -> MultiPoly {
        if self.sign < 0 {
            -&self.weight
        } else {
            self.weight.clone()
        }
    }
}

/// `(1)_2(2 3) sign=-1 weight=...`; tags are shown on tagged loops.
impl fmt::Display for CycleCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            f.write_str("()")?;
        }
        for cycle in &self.cycles {
            let verts: Vec<String> = cycle.iter().map(|e| e.source.to_string()).collect();
            write!(f, "({})", verts.join(" "))?;
            if let [e] = cycle.as_slice() {
                if let Some(t) = e.tag {
                    write!(f, "_{t}")?;
                }
            }
        }
        write!(f, " sign={:+} weight={}", self.sign, self.weight)
    }
}

struct Frame {
    from: usize,
    start: usize,
    depth: usize,
    next: usize,
    chosen: Option<usize>,
    opened: bool,
}

/// Lazy depth-first enumeration of the covers of a digraph.
///
/// Each new cycle starts at the smallest uncovered vertex; outgoing edges are
/// tried in `(target, tag)` order, so the output order is deterministic.
pub struct Covers<'g> {
    graph: &'g WeightedDigraph,
    forbidden: Vec<bool>,
    required_out: Vec<Option<usize>>,
    required_in: Vec<Option<usize>>,
    two_cycles: Option<usize>,
    covered: Vec<bool>,
    open_two_cycles: usize,
    stack: Vec<Frame>,
    started: bool,
    done: bool,
}

/// Every disjoint cycle cover of `graph` that satisfies `filter`, each once.
pub fn enumerate_covers<'g>(graph: &'g WeightedDigraph, filter: &CoverFilter) -> Covers<'g> {
    let n = graph.n;
    let mut done = false;
    let mut forbidden = vec![false; graph.edges.len()];
    for k in &filter.forbidden {
        if let Ok(i) = graph.edges.binary_search_by_key(k, |e| e.key) {
            forbidden[i] = true;
        }
    }
    let mut required_out = vec![None; n];
    let mut required_in = vec![None; n];
    for k in &filter.required {
        let Ok(i) = graph.edges.binary_search_by_key(k, |e| e.key) else {
            // a required edge the graph lacks rules out every cover
            done = true;
            continue;
        };
        let (s, t) = (k.source - 1, k.target - 1);
        if required_out[s].is_some_and(|j| j != i) || required_in[t].is_some_and(|j| j != i) {
            done = true;
        }
        required_out[s] = Some(i);
        required_in[t] = Some(i);
    }
    Covers {
        graph,
        forbidden,
        required_out,
        required_in,
        two_cycles: filter.two_cycles,
        covered: vec![false; n],
        open_two_cycles: 0,
        stack: Vec::new(),
        started: false,
        done,
    }
}

impl Covers<'_> {
    fn admissible(&self, e: usize, frame: &Frame) -> bool {
        let key = self.graph.edges[e].key;
        let t = key.target - 1;
        if self.forbidden[e]
            || self.required_out[frame.from].is_some_and(|r| r != e)
            || self.required_in[t].is_some_and(|r| r != e)
        {
            return false;
        }
        if t == frame.start {
            let closes_two = frame.depth == 2;
            !(closes_two && self.two_cycles.is_some_and(|p| self.open_two_cycles >= p))
        } else {
            !self.covered[t]
        }
    }

    fn toggle(&mut self, e: usize, from_depth: usize, start: usize, on: bool) {
        let t = self.graph.edges[e].key.target - 1;
        if t != start {
            self.covered[t] = on;
        } else if from_depth == 2 {
            if on {
                self.open_two_cycles += 1;
            } else {
                self.open_two_cycles -= 1;
            }
        }
    }

    fn snapshot(&self) -> CycleCover {
        let mut cycles = Vec::new();
        let mut current = Vec::new();
        let mut weight = MultiPoly::one();
        for f in &self.stack {
            let e = &self.graph.edges[f.chosen.expect("complete cover has every edge chosen")];
            current.push(e.key);
            weight = &weight * &e.weight;
            if e.key.target - 1 == f.start {
                cycles.push(std::mem::take(&mut current));
            }
        }
        let parity = (self.graph.n - cycles.len()) % 2;
        CycleCover {
            cycles,
            sign: if parity == 0 { 1 } else { -1 },
            weight,
        }
    }
}

impl Iterator for Covers<'_> {
    type Item = CycleCover;

    fn next(&mut self) -> Option<CycleCover> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.graph.n == 0 {
                self.done = true;
                return self.two_cycles.is_none_or(|p| p == 0).then(|| CycleCover {
                    cycles: Vec::new(),
                    sign: 1,
                    weight: MultiPoly::one(),
                });
            }
            self.covered[0] = true;
            self.stack.push(Frame {
                from: 0,
                start: 0,
                depth: 1,
                next: 0,
                chosen: None,
                opened: true,
            });
        }
        loop {
            let Some(top) = self.stack.len().checked_sub(1) else {
                self.done = true;
                return None;
            };
            let (from, start, depth) = {
                let f = &self.stack[top];
                (f.from, f.start, f.depth)
            };
            if let Some(e) = self.stack[top].chosen.take() {
                self.toggle(e, depth, start, false);
            }
            let outs = &self.graph.out[from];
            let mut found = None;
            while self.stack[top].next < outs.len() {
                let e = outs[self.stack[top].next];
                self.stack[top].next += 1;
                if self.admissible(e, &self.stack[top]) {
                    found = Some(e);
                    break;
                }
            }
            let Some(e) = found else {
                let f = self.stack.pop().expect("stack is non-empty");
                if f.opened {
                    self.covered[f.start] = false;
                }
                continue;
            };
            self.toggle(e, depth, start, true);
            self.stack[top].chosen = Some(e);
            let t = self.graph.edges[e].key.target - 1;
            if t != start {
                self.stack.push(Frame {
                    from: t,
                    start,
                    depth: depth + 1,
                    next: 0,
                    chosen: None,
                    opened: false,
                });
                continue;
            }
            match self.covered.iter().position(|&c| !c) {
                Some(s) => {
                    self.covered[s] = true;
                    self.stack.push(Frame {
                        from: s,
                        start: s,
                        depth: 1,
                        next: 0,
                        chosen: None,
                        opened: true,
                    });
                }
                None => {
                    if self.two_cycles.is_none_or(|p| p == self.open_two_cycles) {
                        return Some(self.snapshot());
                    }
                }
            }
        }
    }
}

/// `Σ sgn(η) w(η)` over all disjoint cycle covers, i.e. the determinant of
/// the matrix the digraph came from.
///
/// Walks the same search tree as [`enumerate_covers`] but carries the running
/// product down the tree, so covers sharing a prefix share its product.
pub fn det_by_covers(graph: &WeightedDigraph) -> MultiPoly {
    let mut walker = DetWalker {
        graph,
        covered: vec![false; graph.n],
        total: MultiPoly::zero(),
    };
    match graph.n {
        0 => MultiPoly::one(),
        _ => {
            walker.covered[0] = true;
            walker.extend(0, 0, 0, &MultiPoly::one());
            walker.total
        }
    }
}

struct DetWalker<'g> {
    graph: &'g WeightedDigraph,
    covered: Vec<bool>,
    total: MultiPoly,
}

impl DetWalker<'_> {
    fn extend(&mut self, from: usize, start: usize, closed: usize, acc: &MultiPoly) {
        for &e in &self.graph.out[from] {
            let edge = &self.graph.edges[e];
            let t = edge.key.target - 1;
            if t != start && self.covered[t] {
                continue;
            }
            let acc = acc * &edge.weight;
            if t != start {
                self.covered[t] = true;
                self.extend(t, start, closed, &acc);
                self.covered[t] = false;
                continue;
            }
            match self.covered.iter().position(|&c| !c) {
                Some(s) => {
                    self.covered[s] = true;
                    self.extend(s, s, closed + 1, &acc);
                    self.covered[s] = false;
                }
                None => {
                    if (self.graph.n - closed - 1).is_multiple_of(2) {
                        self.total += &acc;
                    } else {
                        self.total -= &acc;
                    }
                }
            }
        }
    }
}

/// Determinant by first-row cofactor expansion, skipping zero entries.
/// Independent of the cover machinery; meant as a cross-check on small inputs.
pub fn det_cofactor(m: &SquareMatrix<MultiPoly>) -> Result<MultiPoly, CoverError> {
    let n = m.dim();
    if n > COFACTOR_MAX_DIM {
        return Err(CoverError::DimensionTooLarge {
            n,
            max: COFACTOR_MAX_DIM,
        });
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor(m, &rows, &cols))
}

fn cofactor(m: &SquareMatrix<MultiPoly>, rows: &[usize], cols: &[usize]) -> MultiPoly {
    let Some((&r, rest_rows)) = rows.split_first() else {
        return MultiPoly::one();
    };
    let mut acc = MultiPoly::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &m[(r, c)];
        if entry.is_zero() {
            continue;
        }
        let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry * &cofactor(m, rest_rows, &minor_cols);
        if pos % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

/// `S(m, p)` by enumeration: the number of covers of `J_m` with exactly `p`
/// two-cycles.
pub fn s_count(m: usize, p: usize) -> u128 {
    let graph = jacobi_unit(m);
    enumerate_covers(&graph, &CoverFilter::two_cycles(p)).count() as u128
}

/// `S(m, p) = C(m - p, p)`, zero when `2p > m`.
pub fn s_closed(m: usize, p: usize) -> u128 {
    if 2 * p > m {
        return 0;
    }
    binomial((m - p) as u128, p as u128)
}

/// `S(m, p)` with the index conventions used by convolution sums: zero for
/// negative `m` or `p`.
pub fn s_signed(m: i64, p: i64) -> u128 {
    if m < 0 || p < 0 {
        return 0;
    }
    s_closed(m as usize, p as usize)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) fn gauss_from_count(c: u128) -> GaussInt {
    GaussInt::from(num_bigint::BigInt::from(c))
}
