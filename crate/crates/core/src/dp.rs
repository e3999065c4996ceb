//! Treewidth dynamic programming for q-ONCF / q-CNCF colorability, with
//! precoloring constraints, witness extraction, and a subset-convolution
//! join.
//!
//! # State design
//!
//! At a decomposition node with bag `X`, a state assigns each bag vertex a
//! triple `(c1, c2, f)`: `c1(v)` is `v`'s tentative color, `c2(v)` the color
//! that must occur *exactly once* in `v`'s open (resp. closed) neighborhood,
//! and `f(v) ∈ {0,1}` records whether a neighbor of `v` colored `c2(v)` has
//! already been **forgotten** below this node. Keeping `f` lazy — counting
//! only forgotten neighbors, with bag-internal occurrences recounted from
//! `c1` on demand — makes the join rule exact: the children's forgotten sets
//! are disjoint, so `f = g + h` with `g(v) = h(v) = 1` rejected is correct
//! without reference to bag-internal colors.
//!
//! Every stored state additionally satisfies the pruning invariant
//! `f(v) + |{w ∈ N(v) ∩ X : c1(w) = c2(v)}| (+ [c1(v) = c2(v)] closed) ≤ 1`
//! for all bag vertices: once a witness color occurs twice around `v` the
//! state can never reach an accepting root, so such states are never
//! materialized (states with DP value 0 are implicit). A vertex's
//! requirement is finalized when it is forgotten — all of its neighbors lie
//! in its subtree by then — demanding a total count of exactly one; the
//! vertex `z` that the nice form keeps everywhere is finalized at the root.
//!
//! Tables are sorted vectors of states packed into `u64` keys (one base-2q²
//! digit per bag position), so table size is bounded by `(2q²)^{|bag|}`,
//! guarded by [`DpConfig::max_states`].

use crate::convolution::subset_convolution_ring;
use crate::decomp::{NiceTreeDecomposition, NodeKind, TdCheck};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::Coloring;

/// Default ceiling on `(2q²)^{|bag|}`, the per-node state universe.
pub const MAX_STATES_DEFAULT: u128 = 1_000_000_000_000;
/// Default join ground-set size above which the fast convolution replaces
/// the naive pairwise merge.
pub const JOIN_CUTOFF_DEFAULT: usize = 8;

/// Which conflict-free variant to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfMode {
    /// Open neighborhoods `N(v)`.
    Oncf,
    /// Closed neighborhoods `N[v]`.
    Cncf,
}

/// Tuning knobs for the solver.
#[derive(Debug, Clone)]
pub struct DpConfig {
    /// Guard: error out when `(2q²)^{|bag|}` exceeds this.
    pub max_states: u128,
    /// Join nodes with more than this many relevant f-bits use the fast
    /// subset convolution; smaller ones merge naively.
    pub join_cutoff: usize,
    /// Debug mode: run both join paths and assert they agree.
    pub check_joins: bool,
}

impl Default for DpConfig {
    fn default() -> Self {
        DpConfig {
            max_states: MAX_STATES_DEFAULT,
            join_cutoff: JOIN_CUTOFF_DEFAULT,
            check_joins: false,
        }
    }
}

/// Size diagnostics of one solver run.
#[derive(Debug, Clone, Default)]
pub struct DpStats {
    /// Decomposition nodes processed.
    pub nodes: usize,
    /// Largest materialized table.
    pub max_table: usize,
    /// Whether every table stayed within its `(2q²)^{|bag|}` bound.
    pub tables_within_bound: bool,
}

/// Outcome of a decision run.
#[derive(Debug, Clone)]
pub struct DpDecision {
    /// Whether a coloring exists.
    pub colorable: bool,
    /// Present on some structural `no` answers (e.g. "isolated vertex").
    pub reason: Option<String>,
    /// Size diagnostics.
    pub stats: DpStats,
}

/// Decides whether `g` admits a total q-ONCF-coloring agreeing with the
/// optional precoloring, by dynamic programming over the nice decomposition.
/// A graph with an isolated vertex is a structural `no` (its open
/// neighborhood is empty).
pub fn dp_oncf(
    g: &Graph,
    t: &NiceTreeDecomposition,
    q: usize,
    pre: Option<&Coloring>,
) -> Result<DpDecision> {
    dp_oncf_with(g, t, q, pre, &DpConfig::default())
}

/// [`dp_oncf`] with explicit configuration.
pub fn dp_oncf_with(
    g: &Graph,
    t: &NiceTreeDecomposition,
    q: usize,
    pre: Option<&Coloring>,
    cfg: &DpConfig,
) -> Result<DpDecision> {
    if (0..g.n()).any(|v| g.degree(v) == 0) {
        return Ok(DpDecision {
            colorable: false,
            reason: Some("isolated vertex".into()),
            stats: DpStats::default(),
        });
    }
    let run = solve(CfMode::Oncf, g, t, q, pre, cfg, false)?;
    Ok(run.decision())
}

/// Decides whether `g` admits a total q-CNCF-coloring agreeing with the
/// optional precoloring. Isolated vertices are fine here (`N[v] = {v}`).
pub fn dp_cncf(
    g: &Graph,
    t: &NiceTreeDecomposition,
    q: usize,
    pre: Option<&Coloring>,
) -> Result<DpDecision> {
    dp_cncf_with(g, t, q, pre, &DpConfig::default())
}

/// [`dp_cncf`] with explicit configuration.
pub fn dp_cncf_with(
    g: &Graph,
    t: &NiceTreeDecomposition,
    q: usize,
    pre: Option<&Coloring>,
    cfg: &DpConfig,
) -> Result<DpDecision> {
    let run = solve(CfMode::Cncf, g, t, q, pre, cfg, false)?;
    Ok(run.decision())
}

/// Extracts a coloring witnessing a `yes` answer (`None` on a no-instance):
/// the DP is re-run keeping all tables, an accepting root state is chosen,
/// and predecessor states are re-derived downward node by node. The result
/// is total, passes the corresponding verifier, and agrees with `pre`.
pub fn extract_witness(
    g: &Graph,
    t: &NiceTreeDecomposition,
    q: usize,
    pre: Option<&Coloring>,
    mode: CfMode,
) -> Result<Option<Coloring>> {
    extract_witness_with(g, t, q, pre, mode, &DpConfig::default())
}

/// [`extract_witness`] with explicit configuration.
pub fn extract_witness_with(
    g: &Graph,
    t: &NiceTreeDecomposition,
    q: usize,
    pre: Option<&Coloring>,
    mode: CfMode,
    cfg: &DpConfig,
) -> Result<Option<Coloring>> {
    if mode == CfMode::Oncf && (0..g.n()).any(|v| g.degree(v) == 0) {
        return Ok(None);
    }
    if g.n() == 0 {
        return Ok(Some(Coloring::new(0, q)));
    }
    let run = solve(mode, g, t, q, pre, cfg, true)?;
    let Some(root_state) = run.accept else {
        return Ok(None);
    };
    let tables = run.tables.expect("tables kept for witness extraction");
    let ctx = Ctx::new(mode, g, t, q);
    let mut colors = vec![0usize; g.n()];
    let mut record = |v: usize, c1: usize| {
        debug_assert!(colors[v] == 0 || colors[v] == c1 + 1, "inconsistent trace");
        colors[v] = c1 + 1;
    };
    let mut stack = vec![(t.root(), root_state)];
    while let Some((node, key)) = stack.pop() {
        let bag = t.bag(node);
        let digits = ctx.decode(key, bag.len());
        match t.kind(node) {
            NodeKind::Leaf => {
                record(bag[0], ctx.c1(digits[0]));
            }
            NodeKind::Introduce(v) => {
                let child = t.node_children(node)[0];
                let p = bag.binary_search(&v).expect("introduced vertex in bag");
                record(v, ctx.c1(digits[p]));
                let mut child_digits = digits.clone();
                child_digits.remove(p);
                let child_key = ctx.encode(&child_digits);
                debug_assert!(tables[child].binary_search(&child_key).is_ok());
                stack.push((child, child_key));
            }
            NodeKind::Forget(v) => {
                let child = t.node_children(node)[0];
                let pred = tables[child]
                    .iter()
                    .find(|&&ck| ctx.forget_one(child, v, ck) == Some(key))
                    .copied()
                    .ok_or_else(|| Error::Internal("no forget predecessor on trace".into()))?;
                stack.push((child, pred));
            }
            NodeKind::Join => {
                let ch = t.node_children(node);
                let (group, fmask) = ctx.split(key, bag.len());
                let mut found = false;
                // Enumerate submasks of fmask present in the left child.
                let mut ma = fmask;
                loop {
                    let ka = ctx.merge(group, ma, bag.len());
                    let kb = ctx.merge(group, fmask & !ma, bag.len());
                    if tables[ch[0]].binary_search(&ka).is_ok()
                        && tables[ch[1]].binary_search(&kb).is_ok()
                    {
                        stack.push((ch[0], ka));
                        stack.push((ch[1], kb));
                        found = true;
                        break;
                    }
                    if ma == 0 {
                        break;
                    }
                    ma = (ma - 1) & fmask;
                }
                if !found {
                    return Err(Error::Internal("no join predecessors on trace".into()));
                }
            }
        }
    }
    let witness = Coloring::from_vec(q, colors)?;
    debug_assert!(witness.is_total());
    Ok(Some(witness))
}

/// Immutable solver context: problem parameters plus digit codecs.
struct Ctx<'a> {
    mode: CfMode,
    g: &'a Graph,
    t: &'a NiceTreeDecomposition,
    q: usize,
    base: u64,
}

/// One run's output.
struct Run {
    accept: Option<u64>,
    tables: Option<Vec<Vec<u64>>>,
    stats: DpStats,
}

impl Run {
    fn decision(self) -> DpDecision {
        DpDecision {
            colorable: self.accept.is_some(),
            reason: None,
            stats: self.stats,
        }
    }
}

impl<'a> Ctx<'a> {
    fn new(mode: CfMode, g: &'a Graph, t: &'a NiceTreeDecomposition, q: usize) -> Self {
        Ctx {
            mode,
            g,
            t,
            q,
            base: (2 * q * q) as u64,
        }
    }

    fn c1(&self, d: u16) -> usize {
        d as usize % self.q
    }

    fn c2(&self, d: u16) -> usize {
        (d as usize / self.q) % self.q
    }

    fn fbit(&self, d: u16) -> usize {
        d as usize / (self.q * self.q)
    }

    fn digit(&self, c1: usize, c2: usize, f: usize) -> u16 {
        (c1 + self.q * c2 + self.q * self.q * f) as u16
    }

    fn decode(&self, mut key: u64, len: usize) -> Vec<u16> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push((key % self.base) as u16);
            key /= self.base;
        }
        out
    }

    fn encode(&self, digits: &[u16]) -> u64 {
        let mut key = 0u64;
        for &d in digits.iter().rev() {
            key = key * self.base + d as u64;
        }
        key
    }

    /// Splits a key into its (c1,c2)-only group key and the f bitmask.
    fn split(&self, key: u64, len: usize) -> (u64, u32) {
        let digits = self.decode(key, len);
        let mut mask = 0u32;
        let mut stripped = digits.clone();
        for (p, d) in digits.iter().enumerate() {
            if self.fbit(*d) == 1 {
                mask |= 1 << p;
                stripped[p] = *d - (self.q * self.q) as u16;
            }
        }
        (self.encode(&stripped), mask)
    }

    /// Reassembles a key from a group key and an f bitmask.
    fn merge(&self, group: u64, mask: u32, len: usize) -> u64 {
        let mut digits = self.decode(group, len);
        for p in 0..len {
            if mask & (1 << p) != 0 {
                digits[p] += (self.q * self.q) as u16;
            }
        }
        self.encode(&digits)
    }

    /// Positions (within `bag`) of each bag member's bag-internal neighbors.
    fn bag_adj(&self, bag: &[usize]) -> Vec<Vec<usize>> {
        bag.iter()
            .map(|&v| {
                self.g
                    .neighbors(v)
                    .iter()
                    .filter_map(|w| bag.binary_search(w).ok())
                    .collect()
            })
            .collect()
    }

    /// `hits[p]` = forgotten witnesses + bag-internal witnesses (+ self for
    /// closed neighborhoods) of the vertex at position `p`. Stored states
    /// keep every entry ≤ 1.
    fn hits(&self, digits: &[u16], adj: &[Vec<usize>]) -> Vec<u8> {
        (0..digits.len())
            .map(|p| {
                let want = self.c2(digits[p]);
                let mut h = self.fbit(digits[p]) as u8;
                for &pw in &adj[p] {
                    if self.c1(digits[pw]) == want {
                        h += 1;
                    }
                }
                if self.mode == CfMode::Cncf && self.c1(digits[p]) == want {
                    h += 1;
                }
                h
            })
            .collect()
    }

    /// Applies the forget-node transform for vertex `v` to one child state:
    /// `None` when the state dies (the forgotten vertex's witness count is
    /// not exactly one), otherwise the resulting key at the parent.
    fn forget_one(&self, child: usize, v: usize, child_key: u64) -> Option<u64> {
        let cbag = self.t.bag(child);
        let p = cbag.binary_search(&v).expect("forgotten vertex in child bag");
        let mut digits = self.decode(child_key, cbag.len());
        let adj = self.bag_adj(cbag);
        // Finalize v: all of N(v) lies in bag ∪ forgotten now.
        let want = self.c2(digits[p]);
        let mut total = self.fbit(digits[p]) as u8;
        for &pw in &adj[p] {
            if self.c1(digits[pw]) == want {
                total += 1;
            }
        }
        if self.mode == CfMode::Cncf && self.c1(digits[p]) == want {
            total += 1;
        }
        if total != 1 {
            return None;
        }
        // v becomes a forgotten witness for bag neighbors awaiting its color.
        let cv = self.c1(digits[p]);
        for &pw in &adj[p] {
            if self.c2(digits[pw]) == cv {
                debug_assert_eq!(self.fbit(digits[pw]), 0, "pruning invariant violated");
                digits[pw] += (self.q * self.q) as u16;
            }
        }
        digits.remove(p);
        Some(self.encode(&digits))
    }

    /// Merges the f-mask sets of one (c1,c2) group at a join node, naively.
    fn join_group_naive(&self, ma: &[u32], mb: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        for &a in ma {
            for &b in mb {
                if a & b == 0 {
                    out.push(a | b);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Same merge through the fast subset convolution: masks are compressed
    /// onto the union of occurring bits, 0/1 indicators are convolved over
    /// the integer ring, and masks with a positive pair count survive.
    fn join_group_convolution(&self, ma: &[u32], mb: &[u32]) -> Result<Vec<u32>> {
        let union: u32 = ma.iter().chain(mb).fold(0, |u, &m| u | m);
        let bits: Vec<u32> = (0..32).filter(|i| union & (1 << i) != 0).collect();
        let compress = |m: u32| -> usize {
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| m & (1 << b) != 0)
                .fold(0usize, |acc, (i, _)| acc | (1 << i))
        };
        let expand = |c: usize| -> u32 {
            bits.iter()
                .enumerate()
                .filter(|(i, _)| c & (1 << i) != 0)
                .fold(0u32, |acc, (_, &b)| acc | (1 << b))
        };
        let size = 1usize << bits.len();
        let mut fa = vec![0i64; size];
        let mut fb = vec![0i64; size];
        for &m in ma {
            fa[compress(m)] = 1;
        }
        for &m in mb {
            fb[compress(m)] = 1;
        }
        let conv = subset_convolution_ring(&fa, &fb)?;
        Ok((0..size).filter(|&c| conv[c] > 0).map(expand).collect())
    }
}

/// Runs the table computation bottom-up. With `keep_tables` every node's
/// table is retained for witness tracing; otherwise child tables are freed
/// as soon as they are consumed.
fn solve(
    mode: CfMode,
    g: &Graph,
    t: &NiceTreeDecomposition,
    q: usize,
    pre: Option<&Coloring>,
    cfg: &DpConfig,
    keep_tables: bool,
) -> Result<Run> {
    if q == 0 {
        return Err(Error::invalid("q must be at least 1"));
    }
    if g.n() == 0 {
        // Vacuously colorable; there is no decomposition to walk.
        return Ok(Run {
            accept: Some(0),
            tables: Some(Vec::new()),
            stats: DpStats {
                nodes: 0,
                max_table: 0,
                tables_within_bound: true,
            },
        });
    }
    if let Some(p) = pre {
        if p.n() != g.n() {
            return Err(Error::invalid(format!(
                "precoloring has {} entries but graph has {} vertices",
                p.n(),
                g.n()
            )));
        }
        if p.q() != q {
            return Err(Error::invalid(format!(
                "precoloring palette {} does not match q = {q}",
                p.q()
            )));
        }
    }
    if let TdCheck::Violation(msg) = t.validate_nice(g) {
        return Err(Error::invalid(format!("decomposition not valid/nice: {msg}")));
    }
    let base = (2 * q * q) as u128;
    let max_bag = (0..t.node_count()).map(|i| t.bag(i).len()).max().unwrap_or(0);
    // Packing states into u64 keys needs base^{bag} within 2^62.
    let limit = cfg.max_states.min(1u128 << 62);
    let mut need: u128 = 1;
    for _ in 0..max_bag {
        need = need.saturating_mul(base);
    }
    if need > limit {
        return Err(Error::guard("dp state universe", limit, need));
    }

    let ctx = Ctx::new(mode, g, t, q);
    let mut tables: Vec<Vec<u64>> = vec![Vec::new(); t.node_count()];
    let mut stats = DpStats {
        nodes: t.node_count(),
        max_table: 0,
        tables_within_bound: true,
    };

    for i in t.post_order() {
        let bag = t.bag(i);
        let table: Vec<u64> = match t.kind(i) {
            NodeKind::Leaf => {
                let z = bag[0];
                let want = pre.and_then(|p| p.get(z)).map(|c| c - 1);
                let mut out = Vec::new();
                for a in 0..q {
                    if want.is_some_and(|w| w != a) {
                        continue;
                    }
                    for b in 0..q {
                        out.push(ctx.digit(a, b, 0) as u64);
                    }
                }
                out
            }
            NodeKind::Introduce(v) => {
                let child = t.node_children(i)[0];
                let child_bag = t.bag(child);
                let child_table = std::mem::take(&mut tables[child]);
                let p = bag.binary_search(&v).expect("introduced vertex in bag");
                let adj = ctx.bag_adj(bag);
                let child_adj = ctx.bag_adj(child_bag);
                let want = pre.and_then(|pc| pc.get(v)).map(|c| c - 1);
                // Positions of v's neighbors in this bag and in the child's.
                let vnb: Vec<usize> = adj[p].clone();
                let unshift = |px: usize| if px > p { px - 1 } else { px };
                let mut out = Vec::with_capacity(child_table.len() * q * q);
                let mut digits = Vec::with_capacity(bag.len());
                for &ck in &child_table {
                    let cd = ctx.decode(ck, child_bag.len());
                    let chits = ctx.hits(&cd, &child_adj);
                    for a in 0..q {
                        if want.is_some_and(|w| w != a) {
                            continue;
                        }
                        // Adding v's color bumps bag neighbors whose witness
                        // color is a; any of them already at one dies.
                        if vnb
                            .iter()
                            .any(|&px| {
                                let pc = unshift(px);
                                ctx.c2(cd[pc]) == a && chits[pc] >= 1
                            })
                        {
                            continue;
                        }
                        for b in 0..q {
                            // v's own witness count so far: bag neighbors
                            // colored b, plus itself in the closed variant.
                            let mut hv = vnb
                                .iter()
                                .filter(|&&px| ctx.c1(cd[unshift(px)]) == b)
                                .count();
                            if mode == CfMode::Cncf && a == b {
                                hv += 1;
                            }
                            if hv >= 2 {
                                continue;
                            }
                            let mut nd = cd.clone();
                            nd.insert(p, ctx.digit(a, b, 0));
                            digits.clear();
                            digits.extend_from_slice(&nd);
                            out.push(ctx.encode(&digits));
                        }
                    }
                }
                if keep_tables {
                    tables[child] = child_table;
                }
                out
            }
            NodeKind::Forget(v) => {
                let child = t.node_children(i)[0];
                let child_table = std::mem::take(&mut tables[child]);
                let mut out: Vec<u64> = child_table
                    .iter()
                    .filter_map(|&ck| ctx.forget_one(child, v, ck))
                    .collect();
                out.sort_unstable();
                out.dedup();
                if keep_tables {
                    tables[child] = child_table;
                }
                out
            }
            NodeKind::Join => {
                let ch = t.node_children(i).to_vec();
                let ta = std::mem::take(&mut tables[ch[0]]);
                let tb = std::mem::take(&mut tables[ch[1]]);
                let len = bag.len();
                let split_all = |tt: &[u64]| -> Vec<(u64, u32)> {
                    let mut v: Vec<(u64, u32)> = tt.iter().map(|&k| ctx.split(k, len)).collect();
                    v.sort_unstable();
                    v
                };
                let ga = split_all(&ta);
                let gb = split_all(&tb);
                let mut out = Vec::new();
                let (mut ia, mut ib) = (0usize, 0usize);
                while ia < ga.len() && ib < gb.len() {
                    let (ka, _) = ga[ia];
                    let (kb, _) = gb[ib];
                    if ka < kb {
                        ia += 1;
                        continue;
                    }
                    if kb < ka {
                        ib += 1;
                        continue;
                    }
                    let sa = ia;
                    while ia < ga.len() && ga[ia].0 == ka {
                        ia += 1;
                    }
                    let sb = ib;
                    while ib < gb.len() && gb[ib].0 == ka {
                        ib += 1;
                    }
                    let masks_a: Vec<u32> = ga[sa..ia].iter().map(|&(_, m)| m).collect();
                    let masks_b: Vec<u32> = gb[sb..ib].iter().map(|&(_, m)| m).collect();
                    let union: u32 = masks_a.iter().chain(&masks_b).fold(0, |u, &m| u | m);
                    let merged = if union.count_ones() as usize > cfg.join_cutoff {
                        let fast = ctx.join_group_convolution(&masks_a, &masks_b)?;
                        if cfg.check_joins {
                            let naive = ctx.join_group_naive(&masks_a, &masks_b);
                            debug_join_check(&fast, &naive)?;
                        }
                        fast
                    } else {
                        let naive = ctx.join_group_naive(&masks_a, &masks_b);
                        if cfg.check_joins {
                            let fast = ctx.join_group_convolution(&masks_a, &masks_b)?;
                            debug_join_check(&fast, &naive)?;
                        }
                        naive
                    };
                    for m in merged {
                        out.push(ctx.merge(ka, m, len));
                    }
                }
                if keep_tables {
                    tables[ch[0]] = ta;
                    tables[ch[1]] = tb;
                }
                out
            }
        };
        let mut table = table;
        table.sort_unstable();
        table.dedup();
        // Tables are subsets of the (2q²)^{|bag|} universe by construction;
        // record that the bound indeed held.
        let mut bound: u128 = 1;
        for _ in 0..bag.len() {
            bound = bound.saturating_mul(base);
        }
        if (table.len() as u128) > bound {
            stats.tables_within_bound = false;
        }
        stats.max_table = stats.max_table.max(table.len());
        tables[i] = table;
    }

    // Root acceptance: bag is {z}; z's requirement is finalized here.
    let root = t.root();
    let accept = tables[root]
        .iter()
        .copied()
        .find(|&k| {
            let d = k as u16;
            let f = ctx.fbit(d);
            match mode {
                CfMode::Oncf => f == 1,
                CfMode::Cncf => {
                    let self_hit = usize::from(ctx.c1(d) == ctx.c2(d));
                    f + self_hit == 1
                }
            }
        });
    Ok(Run {
        accept,
        tables: if keep_tables { Some(tables) } else { None },
        stats,
    })
}

/// Asserts the two join merges agree (sorted sets of masks).
fn debug_join_check(fast: &[u32], naive: &[u32]) -> Result<()> {
    let mut f = fast.to_vec();
    f.sort_unstable();
    if f != naive {
        return Err(Error::Internal(
            "join merge mismatch between convolution and naive paths".into(),
        ));
    }
    Ok(())
}
