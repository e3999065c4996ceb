//! Gadget and reduction-instance generators.
//!
//! This module is the instance factory of the crate. It builds:
//!
//! * the ten-vertex *ONCF-gadget* whose two-coloring behaviour makes clause
//!   checking possible ([`gen_oncf_gadget`]);
//! * the recursive family `G_k` with partial CNCF-chromatic number exactly
//!   `k` ([`gen_gk`]);
//! * the palette gadget `C_q` that pins `q` mutually distinct colors in any
//!   q-CNCF-coloring ([`gen_palette`]);
//! * the subdivided clique, a tight instance for open-neighborhood bounds
//!   ([`gen_subdivided_clique`]);
//! * four reductions: 3-CNF satisfiability to 2-ONCF-colorability
//!   ([`sat_to_2oncf`]), proper q-colorability to q-ONCF-colorability by
//!   edge subdivision ([`qcol_to_oncf`]), proper q-colorability to
//!   q-CNCF-colorability by attaching `G_q` / `G_{q−1}` copies
//!   ([`qcol_to_cncf`]), and Monotone Exact Sat to the 2-CNCF extension
//!   problem ([`mes_to_extension`]).
//!
//! Everything here is deterministic: vertices are numbered in construction
//! order, so repeated runs emit identical documents and golden files stay
//! stable. Generators that designate special vertices return a
//! [`LabeledGraph`], which pairs the graph with an injective name → vertex
//! map serialized as `l <name> <vertex-id>` lines (ids 1-based, matching
//! the `.gr` format).

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::Coloring;

// ---------------------------------------------------------------------------
// Labeled graphs
// ---------------------------------------------------------------------------

/// A graph together with named designated vertices.
///
/// Labels are injective (two names never share a vertex, one name never
/// appears twice) and are kept in insertion order, which for generated
/// instances is construction order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    graph: Graph,
    labels: Vec<(String, usize)>,
}

impl LabeledGraph {
    /// Wraps a graph with an empty label map.
    pub fn new(graph: Graph) -> Self {
        LabeledGraph {
            graph,
            labels: Vec::new(),
        }
    }

    /// The underlying graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Consumes the wrapper and returns the underlying graph.
    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// All labels in insertion order.
    pub fn labels(&self) -> &[(String, usize)] {
        &self.labels
    }

    /// Looks up a labeled vertex by name.
    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }

    /// Attaches a label. The vertex must exist, the name must contain no
    /// whitespace, and neither the name nor the vertex may be labeled yet.
    pub fn add_label(&mut self, name: impl Into<String>, v: usize) -> Result<()> {
        let name = name.into();
        if v >= self.graph.n() {
            return Err(Error::invalid(format!(
                "label {name} points at vertex {} but the graph has {} vertices",
                v + 1,
                self.graph.n()
            )));
        }
        if name.is_empty() || name.chars().any(|c| c.is_whitespace()) {
            return Err(Error::invalid(format!(
                "label {name:?} must be non-empty and contain no whitespace"
            )));
        }
        if self.labels.iter().any(|(n, _)| *n == name) {
            return Err(Error::invalid(format!("duplicate label {name}")));
        }
        if self.labels.iter().any(|&(_, w)| w == v) {
            return Err(Error::invalid(format!(
                "vertex {} already carries a label",
                v + 1
            )));
        }
        self.labels.push((name, v));
        Ok(())
    }

    /// Serializes the label map as `l <name> <vertex-id>` lines with
    /// 1-based vertex ids, one label per line, in insertion order.
    pub fn serialize_labels(&self) -> String {
        let mut out = String::new();
        for (name, v) in &self.labels {
            out.push_str(&format!("l {name} {}\n", v + 1));
        }
        out
    }

    /// Parses a label document (`l <name> <vertex-id>` lines, `c …` comment
    /// lines and blank lines allowed) against a graph on `n` vertices.
    /// Returns labels in file order.
    pub fn parse_labels(text: &str, n: usize) -> Result<Vec<(String, usize)>> {
        let mut labels: Vec<(String, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") {
                continue;
            }
            let mut parts = trimmed.split_whitespace();
            match (parts.next(), parts.next(), parts.next(), parts.next()) {
                (Some("l"), Some(name), Some(id), None) => {
                    let id: usize = id
                        .parse()
                        .map_err(|_| Error::format(line, format!("bad vertex id {id:?}")))?;
                    if id == 0 || id > n {
                        return Err(Error::format(
                            line,
                            format!("vertex id {id} out of range 1..={n}"),
                        ));
                    }
                    if labels.iter().any(|(existing, _)| existing == name) {
                        return Err(Error::format(line, format!("duplicate label {name}")));
                    }
                    if labels.iter().any(|&(_, v)| v == id - 1) {
                        return Err(Error::format(
                            line,
                            format!("vertex {id} already carries a label"),
                        ));
                    }
                    labels.push((name.to_string(), id - 1));
                }
                _ => {
                    return Err(Error::format(
                        line,
                        format!("expected `l <name> <vertex-id>`, got {trimmed:?}"),
                    ))
                }
            }
        }
        Ok(labels)
    }
}

// ---------------------------------------------------------------------------
// Construction-order graph builder
// ---------------------------------------------------------------------------

/// Accumulates vertices (numbered in creation order), edges, and labels,
/// then freezes into a [`LabeledGraph`]. All generators go through this so
/// their vertex numbering is reproducible.
struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Vec<(String, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            n: 0,
            edges: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Creates the next vertex and returns its id.
    fn vertex(&mut self) -> usize {
        let v = self.n;
        self.n += 1;
        v
    }

    /// Creates the next vertex with a label attached.
    fn labeled(&mut self, name: impl Into<String>) -> usize {
        let v = self.vertex();
        self.labels.push((name.into(), v));
        v
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    /// Adds an edge from `hub` to every vertex in `verts`.
    fn join(&mut self, hub: usize, verts: &[usize]) {
        for &v in verts {
            self.edge(hub, v);
        }
    }

    fn finish(self) -> LabeledGraph {
        let graph = Graph::from_edges(self.n, &self.edges)
            .expect("generators construct simple graphs by design");
        let mut lg = LabeledGraph::new(graph);
        for (name, v) in self.labels {
            lg.add_label(name, v)
                .expect("generator label maps are injective by design");
        }
        lg
    }
}

// ---------------------------------------------------------------------------
// The ONCF-gadget
// ---------------------------------------------------------------------------

/// Gadget edges as 1-based label pairs. The interaction points are
/// `g_1,g_2,g_3` (inputs) and `g_10` (output); internally the gadget is a
/// six-cycle `g_4 g_6 g_8 g_7 g_5 g_2` with pendants `g_1` (on `g_4`),
/// `g_3` (on `g_5`) and the tail `g_8–g_9–g_10`.
const GADGET_EDGES: [(usize, usize); 10] = [
    (1, 4),
    (2, 4),
    (2, 5),
    (3, 5),
    (4, 6),
    (5, 7),
    (6, 8),
    (7, 8),
    (8, 9),
    (9, 10),
];

/// Adds one ten-vertex gadget to the builder and returns the ids of
/// `g_1..g_10` in order. Labels are left to the caller.
fn add_gadget(b: &mut Builder) -> [usize; 10] {
    let ids: [usize; 10] = std::array::from_fn(|_| b.vertex());
    for (x, y) in GADGET_EDGES {
        b.edge(ids[x - 1], ids[y - 1]);
    }
    ids
}

/// Builds the ten-vertex ONCF-gadget with vertices labeled `g_1..g_10`.
///
/// Under any two-coloring that makes the open neighborhoods of `g_4..g_9`
/// conflict-free, an all-red input `g_1 = g_2 = g_3 = red` forces `g_9`
/// red; while any input with at least one blue vertex extends to such a
/// coloring with `g_9` blue, `g_8` red, and `g_4 = g_5 = g_10` blue. The
/// exhaustive test suite sweeps all `2^10` colorings to pin both facts.
pub fn gen_oncf_gadget() -> LabeledGraph {
    let mut b = Builder::new();
    let ids = add_gadget(&mut b);
    for (i, &v) in ids.iter().enumerate() {
        // Labels are attached after construction so `add_gadget` stays
        // label-free for reuse inside reductions.
        b.labels.push((format!("g_{}", i + 1), v));
    }
    b.finish()
}

// ---------------------------------------------------------------------------
// The recursive family G_k
// ---------------------------------------------------------------------------

/// Recursively adds a copy of `G_k` to the builder and returns the ids of
/// all its vertices. `G_1` is a single vertex; `G_2` is a claw with one
/// edge subdivided; `G_k` for `k ≥ 3` is a k-clique where every clique
/// vertex is fully joined to two fresh `G_{k−1}` copies and every clique
/// edge is fully joined to two fresh `G_{k−2}` copies.
///
/// Construction order (clique first, then per-vertex copies, then per-edge
/// copies) makes reverse id order a good elimination order: eliminating a
/// copy touches only that copy plus its one or two attachment vertices, so
/// the resulting decomposition has width at most `k − 1`.
fn build_gk(b: &mut Builder, k: usize) -> Vec<usize> {
    match k {
        0 => unreachable!("callers validate k ≥ 1"),
        1 => vec![b.vertex()],
        2 => {
            let center = b.vertex();
            let leaf_a = b.vertex();
            let leaf_b = b.vertex();
            let mid = b.vertex();
            let leaf_c = b.vertex();
            b.edge(center, leaf_a);
            b.edge(center, leaf_b);
            b.edge(center, mid);
            b.edge(mid, leaf_c);
            vec![center, leaf_a, leaf_b, mid, leaf_c]
        }
        _ => {
            let clique: Vec<usize> = (0..k).map(|_| b.vertex()).collect();
            for i in 0..k {
                for j in i + 1..k {
                    b.edge(clique[i], clique[j]);
                }
            }
            let mut all = clique.clone();
            for &v in &clique {
                for _ in 0..2 {
                    let copy = build_gk(b, k - 1);
                    b.join(v, &copy);
                    all.extend_from_slice(&copy);
                }
            }
            for i in 0..k {
                for j in i + 1..k {
                    for _ in 0..2 {
                        let copy = build_gk(b, k - 2);
                        b.join(clique[i], &copy);
                        b.join(clique[j], &copy);
                        all.extend_from_slice(&copy);
                    }
                }
            }
            all
        }
    }
}

/// Builds `G_k`, the recursive family whose partial CNCF-chromatic number
/// is exactly `k`. The top-level core (the k-clique for `k ≥ 3`, the claw
/// center for `k = 2`, the single vertex for `k = 1`) is labeled
/// `u_1..u_k`.
///
/// Sizes follow `|G_1| = 1`, `|G_2| = 5`, and
/// `|G_{k+1}| = (k+1)(1 + 2|G_k|) + k(k+1)|G_{k−1}|`.
pub fn gen_gk(k: usize) -> Result<LabeledGraph> {
    if k < 1 {
        return Err(Error::invalid("gen_gk requires k ≥ 1"));
    }
    let mut b = Builder::new();
    let ids = build_gk(&mut b, k);
    let core = if k <= 2 { 1 } else { k };
    for i in 0..core {
        b.labels.push((format!("u_{}", i + 1), ids[i]));
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// The palette gadget C_q
// ---------------------------------------------------------------------------

/// Builds the palette gadget `C_q` for `q ≥ 3`: a clique `c_1..c_q`, prime
/// vertices `c_i'` adjacent to every `c_j` with `j ≠ i`, and, for each of
/// the edges among these distinguished vertices, two fresh `G_{q−1}`
/// copies fully joined to both endpoints.
///
/// In any q-CNCF-coloring of a graph containing `C_q` as an induced
/// subgraph with no outside edges into its copy interiors, the vertices
/// `c_1..c_q` receive q pairwise distinct colors and `c_i'` matches `c_i`;
/// conversely the gadget itself admits such a coloring. Labels: `c_i` and
/// `c_ip` (the prime vertices).
pub fn gen_palette(q: usize) -> Result<LabeledGraph> {
    if q < 3 {
        return Err(Error::invalid("gen_palette requires q ≥ 3"));
    }
    let mut b = Builder::new();
    let c: Vec<usize> = (0..q).map(|i| b.labeled(format!("c_{}", i + 1))).collect();
    let cp: Vec<usize> = (0..q)
        .map(|i| b.labeled(format!("c_{}p", i + 1)))
        .collect();
    let mut distinguished_edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            b.edge(c[i], c[j]);
            distinguished_edges.push((c[i], c[j]));
        }
    }
    for i in 0..q {
        for j in 0..q {
            if j != i {
                b.edge(cp[i], c[j]);
                distinguished_edges.push((cp[i], c[j]));
            }
        }
    }
    for (u, v) in distinguished_edges {
        for _ in 0..2 {
            let copy = build_gk(&mut b, q - 1);
            b.join(u, &copy);
            b.join(v, &copy);
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// Subdivided cliques
// ---------------------------------------------------------------------------

/// Builds the subdivision of `K_q` (`q ≥ 3`): the `q` branch vertices come
/// first, then one subdivider per clique edge in lexicographic pair order,
/// for `q + q(q−1)/2` vertices total. These instances need exactly `q`
/// colors under open-neighborhood conflict-free coloring while having a
/// vertex cover of size `q`.
pub fn gen_subdivided_clique(q: usize) -> Result<Graph> {
    if q < 3 {
        return Err(Error::invalid("gen_subdivided_clique requires q ≥ 3"));
    }
    let mut b = Builder::new();
    let branch: Vec<usize> = (0..q).map(|_| b.vertex()).collect();
    for i in 0..q {
        for j in i + 1..q {
            let mid = b.vertex();
            b.edge(branch[i], mid);
            b.edge(branch[j], mid);
        }
    }
    Ok(b.finish().into_graph())
}

// ---------------------------------------------------------------------------
// 3-SAT → 2-ONCF-colorability
// ---------------------------------------------------------------------------

/// A literal of a CNF formula: a 0-based variable index plus sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lit {
    /// 0-based variable index.
    pub var: usize,
    /// True for a negated occurrence.
    pub negated: bool,
}

impl Lit {
    /// Positive literal on variable `var`.
    pub fn pos(var: usize) -> Self {
        Lit {
            var,
            negated: false,
        }
    }

    /// Negated literal on variable `var`.
    pub fn neg(var: usize) -> Self {
        Lit { var, negated: true }
    }
}

/// Encodes a 3-CNF formula as a graph that is 2-ONCF-colorable exactly
/// when the formula is satisfiable.
///
/// Construction: a palette path `R–R'–B–B'`; per variable `i` a path
/// `u_i–v_i–w_i` (coloring `u_i` red means "true"); per clause `j` one
/// ONCF-gadget whose `g_10` is tied to `R`, plus connector vertices
/// `s_j_b` joining gadget input `g_b` to `u_i` for a positive literal on
/// variable `i` and to `w_i` for a negated one. A clause with all three
/// inputs forced red would force `g_9` red and clash with red `R` in the
/// open neighborhood of `g_10`.
///
/// Labels: `R`, `Rp`, `B`, `Bp`, `u_i`/`v_i`/`w_i`, `g_j_1..g_j_10`, and
/// `s_j_1..s_j_3`. Every clause must have exactly three literals.
pub fn sat_to_2oncf(num_vars: usize, clauses: &[Vec<Lit>]) -> Result<LabeledGraph> {
    for (j, clause) in clauses.iter().enumerate() {
        if clause.len() != 3 {
            return Err(Error::invalid(format!(
                "clause {} has {} literals; expected exactly 3",
                j + 1,
                clause.len()
            )));
        }
        for lit in clause {
            if lit.var >= num_vars {
                return Err(Error::invalid(format!(
                    "clause {} uses variable {} but the formula has {num_vars}",
                    j + 1,
                    lit.var + 1
                )));
            }
        }
    }
    let mut b = Builder::new();
    let r = b.labeled("R");
    let rp = b.labeled("Rp");
    let bl = b.labeled("B");
    let blp = b.labeled("Bp");
    b.edge(r, rp);
    b.edge(rp, bl);
    b.edge(bl, blp);
    let mut u = Vec::with_capacity(num_vars);
    let mut w = Vec::with_capacity(num_vars);
    for i in 0..num_vars {
        let ui = b.labeled(format!("u_{}", i + 1));
        let vi = b.labeled(format!("v_{}", i + 1));
        let wi = b.labeled(format!("w_{}", i + 1));
        b.edge(ui, vi);
        b.edge(vi, wi);
        u.push(ui);
        w.push(wi);
    }
    for (j, clause) in clauses.iter().enumerate() {
        let g = add_gadget(&mut b);
        for (i, &v) in g.iter().enumerate() {
            b.labels.push((format!("g_{}_{}", j + 1, i + 1), v));
        }
        b.edge(g[9], r);
        for (bi, lit) in clause.iter().enumerate() {
            let s = b.labeled(format!("s_{}_{}", j + 1, bi + 1));
            b.edge(s, g[bi]);
            let anchor = if lit.negated { w[lit.var] } else { u[lit.var] };
            b.edge(s, anchor);
        }
    }
    Ok(b.finish())
}

// ---------------------------------------------------------------------------
// Proper coloring → ONCF coloring (edge subdivision)
// ---------------------------------------------------------------------------

/// Subdivides every edge of `g` once: the original vertices keep their ids
/// and lose all mutual edges; subdivider `n + e` sits on the `e`-th edge in
/// `g.edges()` order. For inputs without isolated vertices, the result is
/// q-ONCF-colorable exactly when `g` is properly q-colorable (an isolated
/// vertex stays isolated and makes the output structurally uncolorable).
pub fn qcol_to_oncf(g: &Graph) -> Graph {
    let mut b = Builder::new();
    let orig: Vec<usize> = (0..g.n()).map(|_| b.vertex()).collect();
    for (u, v) in g.edges() {
        let mid = b.vertex();
        b.edge(orig[u], mid);
        b.edge(orig[v], mid);
    }
    b.finish().into_graph()
}

// ---------------------------------------------------------------------------
// Proper coloring → CNCF coloring (G_k attachments)
// ---------------------------------------------------------------------------

/// Rebuilds `g` with conflict-free scaffolding so that, for `q ≥ 3`, the
/// output is q-CNCF-colorable exactly when `g` is properly q-colorable:
/// every original vertex is fully joined to two fresh `G_q` copies, and
/// every original edge gains two fresh `G_{q−1}` copies fully joined to
/// both endpoints. Original vertices keep their ids; copies follow in
/// construction order (per-vertex copies first, then per-edge copies), so
/// reverse id order is an elimination order of width at most
/// `max(n_original − 1, q)`.
pub fn qcol_to_cncf(g: &Graph, q: usize) -> Result<Graph> {
    if q < 3 {
        return Err(Error::invalid("qcol_to_cncf requires q ≥ 3"));
    }
    let mut b = Builder::new();
    let orig: Vec<usize> = (0..g.n()).map(|_| b.vertex()).collect();
    for (u, v) in g.edges() {
        b.edge(orig[u], orig[v]);
    }
    for &v in &orig {
        for _ in 0..2 {
            let copy = build_gk(&mut b, q);
            b.join(v, &copy);
        }
    }
    for (u, v) in g.edges() {
        for _ in 0..2 {
            let copy = build_gk(&mut b, q - 1);
            b.join(orig[u], &copy);
            b.join(orig[v], &copy);
        }
    }
    Ok(b.finish().into_graph())
}

// ---------------------------------------------------------------------------
// Monotone Exact Sat → 2-CNCF extension
// ---------------------------------------------------------------------------

/// Encodes a monotone formula (each clause a set of 0-based variable
/// indices) as an instance of the 2-CNCF extension problem: a graph, a
/// vertex cover, and a precoloring of exactly the cover such that the
/// precoloring extends to a 2-CNCF-coloring exactly when some assignment
/// sets exactly one variable per clause to true.
///
/// Construction: anchors `R_1, R_2` (red) and `B_1` (blue) with edge
/// `R_1–B_1`; one red clause vertex per clause, adjacent to `R_1`; one
/// blue variable vertex per variable, adjacent to `R_2`; and one uncovered
/// connector per clause–variable incidence, adjacent to its clause and
/// variable vertices. A clause vertex sees two fixed reds, so exactly one
/// of its connectors must go blue; a variable vertex forces all its
/// connectors to share a color. Duplicate variables within a clause are
/// collapsed. Every clause must be non-empty (a clause with no variables
/// can never contain exactly one true variable).
pub fn mes_to_extension(
    num_vars: usize,
    clauses: &[Vec<usize>],
) -> Result<(Graph, VertexSet, Coloring)> {
    for (i, clause) in clauses.iter().enumerate() {
        if clause.is_empty() {
            return Err(Error::invalid(format!("clause {} is empty", i + 1)));
        }
        for &var in clause {
            if var >= num_vars {
                return Err(Error::invalid(format!(
                    "clause {} uses variable {} but the formula has {num_vars}",
                    i + 1,
                    var + 1
                )));
            }
        }
    }
    let mut b = Builder::new();
    let r1 = b.vertex();
    let r2 = b.vertex();
    let b1 = b.vertex();
    b.edge(r1, b1);
    let u: Vec<usize> = (0..clauses.len())
        .map(|_| {
            let ui = b.vertex();
            b.edge(ui, r1);
            ui
        })
        .collect();
    let v: Vec<usize> = (0..num_vars)
        .map(|_| {
            let vj = b.vertex();
            b.edge(vj, r2);
            vj
        })
        .collect();
    for (i, clause) in clauses.iter().enumerate() {
        let mut vars: Vec<usize> = clause.clone();
        vars.sort_unstable();
        vars.dedup();
        for j in vars {
            let w = b.vertex();
            b.edge(w, u[i]);
            b.edge(w, v[j]);
        }
    }
    let graph = b.finish().into_graph();
    let mut cover_ids = vec![r1, r2, b1];
    cover_ids.extend_from_slice(&u);
    cover_ids.extend_from_slice(&v);
    let cover = VertexSet::from_ids(&cover_ids)?;
    let mut pre = Coloring::new(graph.n(), 2);
    pre.set(r1, 1)?;
    pre.set(r2, 1)?;
    pre.set(b1, 2)?;
    for &ui in &u {
        pre.set(ui, 1)?;
    }
    for &vj in &v {
        pre.set(vj, 2)?;
    }
    Ok((graph, cover, pre))
}
