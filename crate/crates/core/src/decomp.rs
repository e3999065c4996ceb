//! Tree decompositions: validation, heuristic construction via min-fill
//! elimination, conversion to the nice form used by the dynamic programming,
//! and the `.td` file format.
//!
//! A tree decomposition assigns a bag of vertices to every node of a tree so
//! that (i) every vertex occurs in some bag, (ii) every edge is contained in
//! some bag, and (iii) the occurrences of each vertex induce a connected
//! subtree. The *nice* form additionally types every node as leaf,
//! introduce, forget, or join, and is normalized here so that the root bag
//! and all leaf bags equal `{z}` for a fixed vertex `z` (the lowest-indexed
//! vertex) — bags are therefore never empty, which the coloring DP relies
//! on.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A rooted-format-free tree decomposition: bags on the nodes of an
/// undirected tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Number of vertices of the associated graph.
    n: usize,
    /// Sorted bag per tree node.
    bags: Vec<Vec<usize>>,
    /// Undirected tree edges between node ids.
    edges: Vec<(usize, usize)>,
}

/// Outcome of [`validate_td`]: either all three decomposition properties
/// hold, or a report naming the first violated property with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdCheck {
    /// All properties hold.
    Ok,
    /// Human-readable description of the first violation found.
    Violation(String),
}

impl TdCheck {
    /// True for [`TdCheck::Ok`].
    pub fn is_ok(&self) -> bool {
        matches!(self, TdCheck::Ok)
    }
}

impl TreeDecomposition {
    /// Builds a decomposition from parts. Bags are sorted and deduplicated;
    /// structural validity is *not* checked here (see [`validate_td`]).
    pub fn new(n: usize, bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> Self {
        let mut bags = bags;
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { n, bags, edges }
    }

    /// Vertex count of the associated graph.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of tree nodes.
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// The sorted bag of node `i`.
    pub fn bag(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    /// All bags.
    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    /// Undirected tree edges.
    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Width = maximum bag size − 1 (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// Adjacency lists of the node tree.
    fn node_adj(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    /// Parses the `.td` format: header `s td <#bags> <width+1> <n>`, bag
    /// lines `b <bag-id> <v1> <v2> …`, then tree-edge lines `<i> <j>`;
    /// 1-indexed, `c`-comment lines allowed. The declared width field must
    /// match the actual maximum bag size.
    pub fn parse_td(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line == "c" || line.starts_with("c ") {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "s" => {
                    if header.is_some() {
                        return Err(Error::format(lineno, "duplicate solution header"));
                    }
                    if toks.len() != 5 || toks[1] != "td" {
                        return Err(Error::format(lineno, "expected 's td <#bags> <width+1> <n>'"));
                    }
                    let nums: Vec<usize> = toks[2..]
                        .iter()
                        .map(|s| s.parse())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| Error::format(lineno, "bad number in header"))?;
                    header = Some((nums[0], nums[1], nums[2]));
                    bags = vec![None; nums[0]];
                }
                "b" => {
                    let (nb, _, n) = header
                        .ok_or_else(|| Error::format(lineno, "bag line before 's td' header"))?;
                    if toks.len() < 2 {
                        return Err(Error::format(lineno, "bag line needs an id"));
                    }
                    let id: usize = toks[1]
                        .parse()
                        .map_err(|_| Error::format(lineno, "bad bag id"))?;
                    if id < 1 || id > nb {
                        return Err(Error::format(lineno, format!("bag id out of range 1..={nb}")));
                    }
                    if bags[id - 1].is_some() {
                        return Err(Error::format(lineno, format!("bag {id} defined twice")));
                    }
                    let mut verts = Vec::new();
                    for t in &toks[2..] {
                        let v: usize = t
                            .parse()
                            .map_err(|_| Error::format(lineno, format!("bad vertex id '{t}'")))?;
                        if v < 1 || v > n {
                            return Err(Error::format(
                                lineno,
                                format!("bag vertex out of range 1..={n}"),
                            ));
                        }
                        verts.push(v - 1);
                    }
                    verts.sort_unstable();
                    verts.dedup();
                    bags[id - 1] = Some(verts);
                }
                _ => {
                    let (nb, _, _) = header
                        .ok_or_else(|| Error::format(lineno, "edge line before 's td' header"))?;
                    if toks.len() != 2 {
                        return Err(Error::format(lineno, "tree-edge line needs two node ids"));
                    }
                    let a: usize = toks[0]
                        .parse()
                        .map_err(|_| Error::format(lineno, "bad node id"))?;
                    let b: usize = toks[1]
                        .parse()
                        .map_err(|_| Error::format(lineno, "bad node id"))?;
                    if a < 1 || a > nb || b < 1 || b > nb {
                        return Err(Error::format(lineno, format!("node id out of range 1..={nb}")));
                    }
                    edges.push((a - 1, b - 1));
                }
            }
        }
        let (nb, w1, n) = header.ok_or_else(|| Error::format(1, "missing 's td' header"))?;
        let bags: Vec<Vec<usize>> = bags
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or_else(|| Error::format(1, format!("bag {} never defined", i + 1))))
            .collect::<Result<_>>()?;
        let max_bag = bags.iter().map(|b| b.len()).max().unwrap_or(0);
        if max_bag != w1 {
            return Err(Error::format(
                1,
                format!("header declares width+1 = {w1} but largest bag has {max_bag} vertices"),
            ));
        }
        let _ = nb;
        Ok(TreeDecomposition { n, bags, edges })
    }

    /// Serializes to canonical `.td` text.
    pub fn to_td(&self) -> String {
        let mut out = format!(
            "s td {} {} {}\n",
            self.bags.len(),
            self.bags.iter().map(|b| b.len()).max().unwrap_or(0),
            self.n
        );
        for (i, b) in self.bags.iter().enumerate() {
            out.push_str(&format!("b {}", i + 1));
            for &v in b {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        out
    }
}

/// Checks the three decomposition properties, reporting the first violation:
/// node-tree shape, vertex coverage, occurrence connectivity, then edge
/// coverage. Violations are reported as values, never thrown.
pub fn validate_td(g: &Graph, t: &TreeDecomposition) -> TdCheck {
    if t.n() != g.n() {
        return TdCheck::Violation(format!(
            "decomposition is for {} vertices but graph has {}",
            t.n(),
            g.n()
        ));
    }
    let nodes = t.node_count();
    if nodes == 0 {
        return if g.n() == 0 {
            TdCheck::Ok
        } else {
            TdCheck::Violation("decomposition has no nodes".into())
        };
    }
    // Tree shape: connected and acyclic, i.e. connected with nodes-1 edges.
    if t.edges.len() != nodes - 1 {
        return TdCheck::Violation(format!(
            "node tree has {} edges for {} nodes (need {})",
            t.edges.len(),
            nodes,
            nodes - 1
        ));
    }
    let adj = t.node_adj();
    let mut seen = vec![false; nodes];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut cnt = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                cnt += 1;
                stack.push(w);
            }
        }
    }
    if cnt != nodes {
        return TdCheck::Violation("node tree is disconnected".into());
    }
    // Bag contents in range.
    for (i, b) in t.bags.iter().enumerate() {
        if let Some(&v) = b.last() {
            if v >= g.n() {
                return TdCheck::Violation(format!(
                    "bag {} contains out-of-range vertex {}",
                    i + 1,
                    v + 1
                ));
            }
        }
    }
    // Vertex coverage.
    let mut occurs = vec![Vec::new(); g.n()];
    for (i, b) in t.bags.iter().enumerate() {
        for &v in b {
            occurs[v].push(i);
        }
    }
    for v in 0..g.n() {
        if occurs[v].is_empty() {
            return TdCheck::Violation(format!("vertex {} not in any bag", v + 1));
        }
    }
    // Occurrence connectivity: BFS inside occurrence set.
    for v in 0..g.n() {
        let occ = &occurs[v];
        let inside = |x: usize| t.bags[x].binary_search(&v).is_ok();
        let mut seen = vec![false; nodes];
        let mut stack = vec![occ[0]];
        seen[occ[0]] = true;
        let mut cnt = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if inside(w) && !seen[w] {
                    seen[w] = true;
                    cnt += 1;
                    stack.push(w);
                }
            }
        }
        if cnt != occ.len() {
            return TdCheck::Violation(format!("vertex {} occurrences not connected", v + 1));
        }
    }
    // Edge coverage.
    for (u, v) in g.edges() {
        let covered = occurs[u].iter().any(|&i| t.bags[i].binary_search(&v).is_ok());
        if !covered {
            return TdCheck::Violation(format!("edge {{{}, {}}} not covered", u + 1, v + 1));
        }
    }
    TdCheck::Ok
}

/// Builds a tree decomposition from an elimination order (a permutation of
/// the vertices): eliminating `v` records the bag `{v} ∪ N_live(v)` and
/// turns the live neighborhood into a clique. The result is always a valid
/// decomposition; its width depends on the order.
pub fn elimination_td(g: &Graph, order: &[usize]) -> Result<TreeDecomposition> {
    let n = g.n();
    if order.len() != n {
        return Err(Error::invalid("elimination order must list every vertex once"));
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::invalid("elimination order must be a permutation"));
        }
        pos[v] = i;
    }
    // Live adjacency as sorted vecs (n is desk-scale).
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut alive = vec![true; n];
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut node_of = vec![usize::MAX; n];
    let mut edges = Vec::new();
    for (step, &v) in order.iter().enumerate() {
        let nbs: Vec<usize> = adj[v].iter().copied().filter(|&w| alive[w]).collect();
        let mut bag = nbs.clone();
        bag.push(v);
        bag.sort_unstable();
        node_of[v] = step;
        bags.push(bag);
        // Clique-ify the live neighborhood.
        for i in 0..nbs.len() {
            for j in i + 1..nbs.len() {
                let (a, b) = (nbs[i], nbs[j]);
                if !adj[a].contains(&b) {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        alive[v] = false;
    }
    // Connect each node to the node of the earliest-eliminated other bag
    // member; bags whose vertex had no live neighbors start new components.
    let mut roots = Vec::new();
    for (step, &v) in order.iter().enumerate() {
        let next = bags[step]
            .iter()
            .copied()
            .filter(|&w| w != v)
            .min_by_key(|&w| pos[w]);
        match next {
            Some(w) => edges.push((step, node_of[w])),
            None => roots.push(step),
        }
    }
    // Chain component roots so the node tree is connected.
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    Ok(TreeDecomposition { n, bags, edges })
}

/// Heuristic tree decomposition via the min-fill elimination order:
/// repeatedly eliminate a vertex whose live neighborhood needs the fewest
/// fill edges (lowest index on ties). Exact on trees (width 1) and chordal
/// graphs (width = clique number − 1).
pub fn heuristic_td(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).to_vec()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best_v = usize::MAX;
        let mut best_fill = usize::MAX;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let nbs: Vec<usize> = adj[v].iter().copied().filter(|&w| alive[w]).collect();
            let mut fill = 0;
            for i in 0..nbs.len() {
                for j in i + 1..nbs.len() {
                    if !adj[nbs[i]].contains(&nbs[j]) {
                        fill += 1;
                    }
                }
            }
            if fill < best_fill {
                best_fill = fill;
                best_v = v;
            }
        }
        let v = best_v;
        let nbs: Vec<usize> = adj[v].iter().copied().filter(|&w| alive[w]).collect();
        for i in 0..nbs.len() {
            for j in i + 1..nbs.len() {
                let (a, b) = (nbs[i], nbs[j]);
                if !adj[a].contains(&b) {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        alive[v] = false;
        order.push(v);
    }
    elimination_td(g, &order).expect("min-fill order is a permutation")
}

/// Node kind in a nice tree decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// No children; bag is `{z}`.
    Leaf,
    /// One child; bag = child bag plus the named vertex.
    Introduce(usize),
    /// One child; bag = child bag minus the named vertex.
    Forget(usize),
    /// Two children with bags identical to this node's bag.
    Join,
}

/// A rooted nice tree decomposition with non-empty bags: the root bag and
/// every leaf bag equal `{z}` for the fixed vertex `z` (lowest index).
#[derive(Debug, Clone)]
pub struct NiceTreeDecomposition {
    kinds: Vec<NodeKind>,
    bags: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
    z: usize,
}

impl NiceTreeDecomposition {
    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    /// Kind of node `i`.
    pub fn kind(&self, i: usize) -> NodeKind {
        self.kinds[i]
    }

    /// Sorted bag of node `i`.
    pub fn bag(&self, i: usize) -> &[usize] {
        &self.bags[i]
    }

    /// Children of node `i` (0, 1, or 2 of them).
    pub fn node_children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    /// Root node id.
    pub fn root(&self) -> usize {
        self.root
    }

    /// The fixed vertex present in the root and all leaf bags.
    pub fn z(&self) -> usize {
        self.z
    }

    /// Width = maximum bag size − 1.
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1) - 1
    }

    /// Node ids in post order (children before parents), deterministic.
    pub fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.node_count());
        // Iterative post-order with an explicit stack.
        let mut stack = vec![(self.root, false)];
        while let Some((u, expanded)) = stack.pop() {
            if expanded {
                out.push(u);
            } else {
                stack.push((u, true));
                for &c in self.children[u].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Reads the nice decomposition as a plain one (same nodes, bags, and
    /// tree edges, kinds erased).
    pub fn to_plain(&self, n: usize) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (u, ch) in self.children.iter().enumerate() {
            for &c in ch {
                edges.push((u, c));
            }
        }
        TreeDecomposition {
            n,
            bags: self.bags.clone(),
            edges,
        }
    }

    /// Checks every nice-form invariant against `g`: kind/bag relations,
    /// `{z}` at root and leaves, and validity as a plain decomposition.
    pub fn validate_nice(&self, g: &Graph) -> TdCheck {
        for i in 0..self.node_count() {
            let bag = &self.bags[i];
            let ch = &self.children[i];
            let rel_ok = match self.kinds[i] {
                NodeKind::Leaf => ch.is_empty() && bag == &[self.z],
                NodeKind::Introduce(v) => {
                    ch.len() == 1 && {
                        let mut expect = self.bags[ch[0]].clone();
                        match expect.binary_search(&v) {
                            Err(p) => {
                                expect.insert(p, v);
                                bag == &expect
                            }
                            Ok(_) => false,
                        }
                    }
                }
                NodeKind::Forget(v) => {
                    ch.len() == 1 && {
                        let mut expect = self.bags[ch[0]].clone();
                        match expect.binary_search(&v) {
                            Ok(p) => {
                                expect.remove(p);
                                bag == &expect
                            }
                            Err(_) => false,
                        }
                    }
                }
                NodeKind::Join => {
                    ch.len() == 2 && self.bags[ch[0]] == *bag && self.bags[ch[1]] == *bag
                }
            };
            if !rel_ok {
                return TdCheck::Violation(format!(
                    "node {} violates its {:?} bag relation",
                    i, self.kinds[i]
                ));
            }
            if bag.is_empty() {
                return TdCheck::Violation(format!("node {i} has an empty bag"));
            }
        }
        if self.bags[self.root] != [self.z] {
            return TdCheck::Violation("root bag is not {z}".into());
        }
        validate_td(g, &self.to_plain(g.n()))
    }
}

/// Converts a valid tree decomposition into the nice form: the fixed vertex
/// `z` (lowest index) is added to every bag, the tree is rooted at its
/// lowest-indexed leaf node, transitions become forget/introduce chains,
/// multi-child nodes are binarized into left-deep joins, and the top is
/// forgotten down to `{z}`. Width grows by at most one (from the
/// z-augmentation).
pub fn make_nice(g: &Graph, t: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    if g.n() == 0 {
        return Err(Error::invalid("make_nice requires a non-empty graph"));
    }
    if let TdCheck::Violation(msg) = validate_td(g, t) {
        return Err(Error::invalid(format!("input decomposition invalid: {msg}")));
    }
    let z = 0usize;
    // z-augmented bags.
    let bags: Vec<Vec<usize>> = t
        .bags
        .iter()
        .map(|b| {
            let mut b = b.clone();
            if let Err(p) = b.binary_search(&z) {
                b.insert(p, z);
            }
            b
        })
        .collect();
    let nodes = bags.len();
    let adj = t.node_adj();
    // Root at the lowest-indexed leaf (or node 0 for a single node).
    let r = (0..nodes)
        .find(|&i| adj[i].len() <= 1)
        .expect("a tree always has a leaf");

    struct Builder {
        kinds: Vec<NodeKind>,
        bags: Vec<Vec<usize>>,
        children: Vec<Vec<usize>>,
    }
    impl Builder {
        fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
            self.kinds.push(kind);
            self.bags.push(bag);
            self.children.push(children);
            self.kinds.len() - 1
        }
        /// Chain of introduces from `{z}`-leaf up to `target`.
        fn build_leaf_chain(&mut self, z: usize, target: &[usize]) -> usize {
            let mut cur = self.push(NodeKind::Leaf, vec![z], vec![]);
            let mut bag = vec![z];
            for &v in target.iter().filter(|&&v| v != z) {
                let p = bag.binary_search(&v).unwrap_err();
                bag.insert(p, v);
                cur = self.push(NodeKind::Introduce(v), bag.clone(), vec![cur]);
            }
            cur
        }
        /// Forget-then-introduce chain transforming `from` into `to` on top
        /// of node `cur`.
        fn build_transition(&mut self, mut cur: usize, from: &[usize], to: &[usize]) -> usize {
            let mut bag = from.to_vec();
            for &v in from.iter().filter(|v| to.binary_search(v).is_err()) {
                let p = bag.binary_search(&v).unwrap();
                bag.remove(p);
                cur = self.push(NodeKind::Forget(v), bag.clone(), vec![cur]);
            }
            for &v in to.iter().filter(|v| from.binary_search(v).is_err()) {
                let p = bag.binary_search(&v).unwrap_err();
                bag.insert(p, v);
                cur = self.push(NodeKind::Introduce(v), bag.clone(), vec![cur]);
            }
            cur
        }
    }

    let mut b = Builder {
        kinds: Vec::new(),
        bags: Vec::new(),
        children: Vec::new(),
    };

    // Transform the rooted tree bottom-up; explicit stack to avoid deep
    // recursion on path-like decompositions.
    let mut parent = vec![usize::MAX; nodes];
    let mut dfs_order = Vec::with_capacity(nodes);
    let mut stack = vec![r];
    let mut visited = vec![false; nodes];
    visited[r] = true;
    while let Some(u) = stack.pop() {
        dfs_order.push(u);
        for &w in &adj[u] {
            if !visited[w] {
                visited[w] = true;
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    // top[x] = built node whose bag equals bags[x], covering x's subtree.
    let mut top = vec![usize::MAX; nodes];
    for &x in dfs_order.iter().rev() {
        let kids: Vec<usize> = adj[x].iter().copied().filter(|&w| parent[w] == x).collect();
        let mut built: Option<usize> = None;
        for &c in &kids {
            let lifted = b.build_transition(top[c], &bags[c], &bags[x]);
            built = Some(match built {
                None => lifted,
                Some(acc) => b.push(NodeKind::Join, bags[x].clone(), vec![acc, lifted]),
            });
        }
        top[x] = match built {
            // A leaf of the rooted tree: introduce chain from {z}.
            None => b.build_leaf_chain(z, &bags[x]),
            Some(node) => node,
        };
    }
    // Forget the root bag down to {z}.
    let root = b.build_transition(top[r], &bags[r], &[z]);
    Ok(NiceTreeDecomposition {
        kinds: b.kinds,
        bags: b.bags,
        children: b.children,
        root,
        z,
    })
}
