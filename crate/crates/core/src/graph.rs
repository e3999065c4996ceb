//! Graph representation, `.gr` parsing/serialization, and exact computation
//! of small structural parameters.
//!
//! Vertices are `0..n-1` internally and 1-indexed in file formats. The
//! adjacency structure is kept canonical at all times: symmetric, self-loop
//! free, duplicate free, and with every neighbor list sorted ascending, so
//! two graphs are equal exactly when their adjacency lists are equal.
//!
//! Besides the representation this module offers three exact helpers used by
//! the bound and kernelization pipelines: minimum vertex cover and minimum
//! feedback vertex set (bounded search trees behind explicit size guards —
//! they are NP-hard conveniences for desk-scale inputs, not contributions),
//! and the star / edge-star classifier that drives the two-coloring special
//! cases.

use crate::error::{Error, Result};

/// Default vertex-count guard for [`min_vertex_cover`].
pub const VC_GUARD_DEFAULT: usize = 64;
/// Default vertex-count guard for [`min_fvs`].
pub const FVS_GUARD_DEFAULT: usize = 40;

/// An undirected simple graph in canonical adjacency-list form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    /// `adj[v]` is the sorted list of neighbors of `v`.
    adj: Vec<Vec<usize>>,
    /// Number of edges.
    m: usize,
}

impl Graph {
    /// Creates an edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, silently deduplicating repeated
    /// edges. Errors on self-loops or out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// True if the edge `{u, v}` is present.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// Inserts the edge `{u, v}` if absent; errors on self-loops or
    /// out-of-range endpoints. Duplicate insertions are silently ignored,
    /// mirroring the parser's deduplication of repeated edge lines.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for n = {n}"
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Ok(());
        }
        let pos_v = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos_v, v);
        let pos_u = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos_u, u);
        self.m += 1;
        Ok(())
    }

    /// All edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// True when the graph has at most one connected component.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The subgraph induced by `verts` (need not be sorted; duplicates are
    /// an error). Returns the subgraph together with the list mapping new
    /// vertex ids to original ids (sorted ascending).
    pub fn induced(&self, verts: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut map = verts.to_vec();
        map.sort_unstable();
        if map.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate vertex in induced-subgraph set"));
        }
        if let Some(&v) = map.last() {
            if v >= self.n() {
                return Err(Error::invalid(format!(
                    "vertex {v} out of range for n = {}",
                    self.n()
                )));
            }
        }
        let mut g = Graph::new(map.len());
        for (i, &u) in map.iter().enumerate() {
            for &w in &self.adj[u] {
                if let Ok(j) = map.binary_search(&w) {
                    if i < j {
                        g.add_edge(i, j)?;
                    }
                }
            }
        }
        Ok((g, map))
    }

    /// Parses the `.gr` edge-list format: optional comment lines starting
    /// with `c`, one header `p cf <n> <m>`, then `m` whitespace-separated
    /// `"<u> <v>"` lines with 1-indexed endpoints. Repeated edges are
    /// deduplicated silently; self-loops and out-of-range endpoints are
    /// format errors carrying the offending line number.
    pub fn parse_gr(text: &str) -> Result<Graph> {
        let mut g: Option<Graph> = None;
        let mut declared_m = 0usize;
        let mut seen_edges = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line == "c" || line.starts_with("c ") {
                continue;
            }
            let mut tok = line.split_whitespace();
            let first = tok.next().unwrap();
            if first == "p" {
                if g.is_some() {
                    return Err(Error::format(lineno, "duplicate problem header"));
                }
                let kind = tok
                    .next()
                    .ok_or_else(|| Error::format(lineno, "header missing problem id"))?;
                if kind != "cf" {
                    return Err(Error::format(
                        lineno,
                        format!("unsupported problem id '{kind}' (expected 'cf')"),
                    ));
                }
                let n: usize = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::format(lineno, "header missing vertex count"))?;
                declared_m = tok
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::format(lineno, "header missing edge count"))?;
                if tok.next().is_some() {
                    return Err(Error::format(lineno, "trailing tokens after header"));
                }
                g = Some(Graph::new(n));
                continue;
            }
            let g = g
                .as_mut()
                .ok_or_else(|| Error::format(lineno, "edge line before 'p cf' header"))?;
            let u: usize = first
                .parse()
                .map_err(|_| Error::format(lineno, format!("bad vertex id '{first}'")))?;
            let vtok = tok
                .next()
                .ok_or_else(|| Error::format(lineno, "edge line needs two endpoints"))?;
            let v: usize = vtok
                .parse()
                .map_err(|_| Error::format(lineno, format!("bad vertex id '{vtok}'")))?;
            if tok.next().is_some() {
                return Err(Error::format(lineno, "trailing tokens after edge"));
            }
            let n = g.n();
            if u < 1 || u > n || v < 1 || v > n {
                return Err(Error::format(
                    lineno,
                    format!("endpoint out of range 1..={n}"),
                ));
            }
            if u == v {
                return Err(Error::format(lineno, format!("self-loop at vertex {u}")));
            }
            seen_edges += 1;
            g.add_edge(u - 1, v - 1)
                .map_err(|e| Error::format(lineno, e.to_string()))?;
        }
        let g = g.ok_or_else(|| Error::format(1, "missing 'p cf' header"))?;
        if seen_edges != declared_m {
            return Err(Error::format(
                1,
                format!("header declares {declared_m} edges but {seen_edges} edge lines found"),
            ));
        }
        Ok(g)
    }

    /// Serializes to canonical `.gr` text (header plus lexicographically
    /// ordered edges, 1-indexed). `parse_gr ∘ to_gr` is the identity.
    pub fn to_gr(&self) -> String {
        let mut out = format!("p cf {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    /// Builds a set from arbitrary ids, sorting and rejecting duplicates.
    pub fn from_ids(ids: &[usize]) -> Result<Self> {
        let mut members = ids.to_vec();
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate vertex id in set"));
        }
        Ok(VertexSet { members })
    }

    /// The sorted member list.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// True when the set is empty.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// True when every edge of `g` has at least one endpoint in the set.
    pub fn is_vertex_cover(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| self.contains(u) || self.contains(v))
    }

    /// True when deleting the set from `g` leaves an acyclic graph.
    pub fn is_fvs(&self, g: &Graph) -> bool {
        let rest: Vec<usize> = (0..g.n()).filter(|&v| !self.contains(v)).collect();
        match g.induced(&rest) {
            Ok((h, _)) => is_forest(&h),
            Err(_) => false,
        }
    }

    /// Parses a vertex-set file: one 1-indexed id per line, blank lines and
    /// `c`-comments ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ids = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line == "c" || line.starts_with("c ") {
                continue;
            }
            let id: usize = line
                .parse()
                .map_err(|_| Error::format(idx + 1, format!("bad vertex id '{line}'")))?;
            if id == 0 {
                return Err(Error::format(idx + 1, "vertex ids are 1-indexed"));
            }
            ids.push(id - 1);
        }
        VertexSet::from_ids(&ids)
    }

    /// Serializes to the vertex-set file format (one 1-indexed id per line).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for &v in &self.members {
            out.push_str(&format!("{}\n", v + 1));
        }
        out
    }
}

/// True when `g` contains no cycle.
pub fn is_forest(g: &Graph) -> bool {
    // A graph is a forest iff every component has |E| = |V| - 1; globally,
    // m = n - #components.
    g.m() + g.components().len() == g.n()
}

/// Outcome of [`classify_star`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarClass {
    /// One center adjacent to all other vertices, no further edges.
    Star,
    /// A central edge `{u, v}` such that every other vertex `w` has
    /// `N(w) = {u, v}`.
    EdgeStar,
    /// Neither of the above.
    Neither,
}

/// Classifies a connected graph on at least two vertices as a star, an
/// edge-star, or neither.
///
/// A *star* has a center adjacent to every other vertex with no other edges
/// (`K_2` counts, with either endpoint as center). An *edge-star* has a
/// central edge `{u, v}` with every remaining vertex adjacent to exactly
/// `u` and `v`; a triangle is the smallest example. Stars take precedence
/// when both definitions apply.
pub fn classify_star(g: &Graph) -> Result<StarClass> {
    let n = g.n();
    if n < 2 {
        return Err(Error::invalid("classify_star requires at least 2 vertices"));
    }
    if !g.is_connected() {
        return Err(Error::invalid("classify_star requires a connected graph"));
    }
    // Star: some center has degree n-1 and the graph has exactly n-1 edges.
    if g.m() == n - 1 && (0..n).any(|v| g.degree(v) == n - 1) {
        return Ok(StarClass::Star);
    }
    // Edge-star: try every edge {u, v} as the central edge.
    for (u, v) in g.edges() {
        let ok = (0..n)
            .filter(|&w| w != u && w != v)
            .all(|w| g.neighbors(w) == [u.min(v), u.max(v)]);
        if ok {
            return Ok(StarClass::EdgeStar);
        }
    }
    Ok(StarClass::Neither)
}

/// Exact minimum vertex cover via a bounded search tree, branching on a
/// maximum-degree vertex (`v` in the cover, or all of `N(v)`). Guarded to
/// `n ≤ max_n` because the graph is held as 64-bit vertex masks.
pub fn min_vertex_cover_with_guard(g: &Graph, max_n: usize) -> Result<VertexSet> {
    let n = g.n();
    let limit = max_n.min(64);
    if n > limit {
        return Err(Error::guard(
            "min_vertex_cover vertices",
            limit as u128,
            n as u128,
        ));
    }
    let masks: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();

    // Greedy upper bound: repeatedly take a maximum-degree vertex.
    let mut best: u64 = {
        let mut cover = 0u64;
        let mut live = masks.clone();
        loop {
            let pick = (0..n)
                .filter(|&v| cover & (1 << v) == 0)
                .max_by_key(|&v| live[v].count_ones());
            match pick {
                Some(v) if live[v] != 0 => {
                    cover |= 1 << v;
                    for w in 0..n {
                        live[w] &= !(1 << v);
                    }
                    live[v] = 0;
                }
                _ => break,
            }
        }
        cover
    };

    // Branch on the residual graph `alive`: every edge inside `alive` is
    // uncovered. `chosen` is the cover built so far.
    fn branch(masks: &[u64], alive: u64, chosen: u64, best: &mut u64) {
        if chosen.count_ones() >= best.count_ones() {
            return;
        }
        let n = masks.len();
        let mut max_v = usize::MAX;
        let mut max_d = 0u32;
        for v in 0..n {
            if alive & (1 << v) == 0 {
                continue;
            }
            let d = (masks[v] & alive).count_ones();
            if d > max_d {
                max_d = d;
                max_v = v;
            }
        }
        if max_d == 0 {
            // No uncovered edges remain.
            *best = chosen;
            return;
        }
        if max_d == 1 {
            // Residual graph is a matching: take one endpoint per edge.
            let mut cover = chosen;
            let mut rest = alive;
            for v in 0..n {
                if rest & (1 << v) == 0 {
                    continue;
                }
                let nb = masks[v] & rest;
                if nb != 0 {
                    cover |= 1 << v;
                    rest &= !(1 << v);
                    rest &= !nb;
                }
            }
            if cover.count_ones() < best.count_ones() {
                *best = cover;
            }
            return;
        }
        let v = max_v;
        // Either v is in the cover …
        branch(masks, alive & !(1 << v), chosen | (1 << v), best);
        // … or it is not, forcing all of N(v) in.
        let nv = masks[v] & alive;
        branch(
            masks,
            alive & !(1 << v) & !nv,
            chosen | nv,
            best,
        );
    }

    let alive = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    branch(&masks, alive, 0, &mut best);
    VertexSet::from_ids(&(0..n).filter(|&v| best & (1 << v) != 0).collect::<Vec<_>>())
}

/// [`min_vertex_cover_with_guard`] at the default guard of
/// [`VC_GUARD_DEFAULT`] vertices.
pub fn min_vertex_cover(g: &Graph) -> Result<VertexSet> {
    min_vertex_cover_with_guard(g, VC_GUARD_DEFAULT)
}

/// Exact minimum feedback vertex set via iterative deepening: strip
/// degree-≤-1 vertices, find a shortest cycle, and branch on which of its
/// vertices joins the solution. Guarded to `n ≤ max_n`.
pub fn min_fvs_with_guard(g: &Graph, max_n: usize) -> Result<VertexSet> {
    let n = g.n();
    if n > max_n {
        return Err(Error::guard("min_fvs vertices", max_n as u128, n as u128));
    }

    /// Repeatedly deletes vertices of degree ≤ 1 (they lie on no cycle).
    fn strip(adj: &mut Vec<Vec<usize>>, alive: &mut Vec<bool>) {
        loop {
            let mut changed = false;
            for v in 0..adj.len() {
                if alive[v] && adj[v].len() <= 1 {
                    alive[v] = false;
                    changed = true;
                    let nbs = std::mem::take(&mut adj[v]);
                    for w in nbs {
                        adj[w].retain(|&x| x != v);
                    }
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// Shortest cycle through BFS from every vertex; returns its vertices.
    fn shortest_cycle(adj: &[Vec<usize>], alive: &[bool]) -> Option<Vec<usize>> {
        let n = adj.len();
        let mut best: Option<Vec<usize>> = None;
        for s in 0..n {
            if !alive[s] {
                continue;
            }
            // BFS tree from s; the first non-tree edge closing back on the
            // two BFS branches yields a short cycle through s.
            let mut parent = vec![usize::MAX; n];
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        // Found a cycle: path(s→u) + edge + path(w→s).
                        let mut pu = vec![u];
                        let mut x = u;
                        while x != s {
                            x = parent[x];
                            pu.push(x);
                        }
                        let mut pw = vec![w];
                        let mut y = w;
                        while y != s {
                            y = parent[y];
                            pw.push(y);
                        }
                        let mut cyc = pu;
                        for z in pw {
                            if !cyc.contains(&z) {
                                cyc.push(z);
                            }
                        }
                        if best.as_ref().map_or(true, |b| cyc.len() < b.len()) {
                            best = Some(cyc);
                        }
                        break 'bfs;
                    }
                }
            }
        }
        best
    }

    fn search(
        adj: &Vec<Vec<usize>>,
        alive: &Vec<bool>,
        budget: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        let mut adj = adj.clone();
        let mut alive = alive.clone();
        strip(&mut adj, &mut alive);
        let cyc = match shortest_cycle(&adj, &alive) {
            None => return true,
            Some(c) => c,
        };
        if budget == 0 {
            return false;
        }
        for &v in &cyc {
            let mut adj2 = adj.clone();
            let mut alive2 = alive.clone();
            alive2[v] = false;
            let nbs = std::mem::take(&mut adj2[v]);
            for w in nbs {
                adj2[w].retain(|&x| x != v);
            }
            chosen.push(v);
            if search(&adj2, &alive2, budget - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let alive = vec![true; n];
    for budget in 0..=n {
        let mut chosen = Vec::new();
        if search(&adj, &alive, budget, &mut chosen) {
            return VertexSet::from_ids(&chosen);
        }
    }
    unreachable!("deleting all vertices always leaves a forest")
}

/// [`min_fvs_with_guard`] at the default guard of [`FVS_GUARD_DEFAULT`]
/// vertices.
pub fn min_fvs(g: &Graph) -> Result<VertexSet> {
    min_fvs_with_guard(g, FVS_GUARD_DEFAULT)
}
