//! Ground truth: coloring verifiers straight from the definitions, and
//! brute-force reference solvers.
//!
//! A coloring is *ONCF* (open-neighborhood conflict-free) when every open
//! neighborhood `N(v)` contains a color that occurs exactly once in it, and
//! *CNCF* (closed-neighborhood conflict-free) when the same holds for every
//! closed neighborhood `N[v]`. Partial colorings leave vertices uncolored;
//! uncolored vertices contribute no color, but every vertex — colored or
//! not — must still see a uniquely colored vertex, so an all-uncolored
//! neighborhood is a violation.
//!
//! The brute solvers enumerate assignments lexicographically (vertex 0 most
//! significant) behind an explicit enumeration guard, and are the oracles
//! the treewidth DP and the kernelization are tested against.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default ceiling on the number of assignments a brute solver may visit.
pub const ENUM_GUARD_DEFAULT: u128 = 100_000_000;

/// A (possibly partial) coloring with colors `1..=q`; `0` means uncolored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    q: usize,
    colors: Vec<usize>,
}

impl Coloring {
    /// All-uncolored coloring on `n` vertices with palette `1..=q`.
    pub fn new(n: usize, q: usize) -> Self {
        Coloring {
            q,
            colors: vec![0; n],
        }
    }

    /// Builds from a raw vector (`0` = uncolored), validating the range.
    pub fn from_vec(q: usize, colors: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = colors.iter().find(|&&c| c > q) {
            return Err(Error::invalid(format!("color {bad} exceeds palette size {q}")));
        }
        Ok(Coloring { q, colors })
    }

    /// Palette size.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.colors.len()
    }

    /// Color of `v`, or `None` when uncolored.
    pub fn get(&self, v: usize) -> Option<usize> {
        match self.colors[v] {
            0 => None,
            c => Some(c),
        }
    }

    /// Raw color of `v` (`0` = uncolored).
    pub fn raw(&self, v: usize) -> usize {
        self.colors[v]
    }

    /// Assigns `color` (`1..=q`, or `0` to uncolor) to `v`.
    pub fn set(&mut self, v: usize, color: usize) -> Result<()> {
        if color > self.q {
            return Err(Error::invalid(format!(
                "color {color} exceeds palette size {}",
                self.q
            )));
        }
        self.colors[v] = color;
        Ok(())
    }

    /// True when every vertex is colored.
    pub fn is_total(&self) -> bool {
        self.colors.iter().all(|&c| c != 0)
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.q + 1];
        let mut cnt = 0;
        for &c in &self.colors {
            if c != 0 && !seen[c] {
                seen[c] = true;
                cnt += 1;
            }
        }
        cnt
    }

    /// Parses a coloring file: lines `"<v> <color>"`, 1-indexed vertices,
    /// color `0` (or absence of a line) meaning uncolored; `c`-comment and
    /// blank lines are ignored.
    pub fn parse(text: &str, n: usize, q: usize) -> Result<Self> {
        let mut colors = vec![0usize; n];
        let mut seen = vec![false; n];
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line == "c" || line.starts_with("c ") {
                continue;
            }
            let mut tok = line.split_whitespace();
            let v: usize = tok
                .next()
                .unwrap()
                .parse()
                .map_err(|_| Error::format(lineno, "bad vertex id"))?;
            let c: usize = tok
                .next()
                .ok_or_else(|| Error::format(lineno, "line needs '<v> <color>'"))?
                .parse()
                .map_err(|_| Error::format(lineno, "bad color"))?;
            if tok.next().is_some() {
                return Err(Error::format(lineno, "trailing tokens"));
            }
            if v < 1 || v > n {
                return Err(Error::format(lineno, format!("vertex out of range 1..={n}")));
            }
            if c > q {
                return Err(Error::format(lineno, format!("color out of range 0..={q}")));
            }
            if seen[v - 1] {
                return Err(Error::format(lineno, format!("vertex {v} colored twice")));
            }
            seen[v - 1] = true;
            colors[v - 1] = c;
        }
        Ok(Coloring { q, colors })
    }

    /// Serializes to the coloring file format, one line per vertex.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (v, &c) in self.colors.iter().enumerate() {
            out.push_str(&format!("{} {}\n", v + 1, c));
        }
        out
    }
}

/// True when the open neighborhood of `v` contains a color occurring
/// exactly once (uncolored neighbors contribute nothing).
pub fn oncf_ok_at(g: &Graph, c: &Coloring, v: usize) -> bool {
    has_unique_color(g.neighbors(v).iter().copied().map(|w| c.raw(w)), c.q())
}

/// True when the closed neighborhood of `v` contains a color occurring
/// exactly once among its colored members.
pub fn cncf_ok_at(g: &Graph, c: &Coloring, v: usize) -> bool {
    has_unique_color(
        g.neighbors(v)
            .iter()
            .copied()
            .map(|w| c.raw(w))
            .chain(std::iter::once(c.raw(v))),
        c.q(),
    )
}

/// Whether the multiset of raw colors (0 = uncolored, ignored) has an
/// element of multiplicity exactly one.
fn has_unique_color(colors: impl Iterator<Item = usize>, q: usize) -> bool {
    // Count into a small stack-ish buffer; q is desk-scale.
    let mut counts = vec![0u32; q + 1];
    for c in colors {
        if c != 0 {
            counts[c] += 1;
        }
    }
    counts[1..].iter().any(|&k| k == 1)
}

/// Verifies an ONCF coloring: `Ok(None)` when every open neighborhood has a
/// uniquely colored vertex, otherwise `Ok(Some(v))` with the lowest-index
/// violating vertex. The coloring must be total (partial → error); an
/// isolated vertex always violates (its open neighborhood is empty).
pub fn verify_oncf(g: &Graph, c: &Coloring) -> Result<Option<usize>> {
    check_coloring_shape(g, c)?;
    if !c.is_total() {
        return Err(Error::invalid("verify_oncf requires a total coloring"));
    }
    Ok((0..g.n()).find(|&v| !oncf_ok_at(g, c, v)))
}

/// Verifies a (possibly partial) CNCF coloring: `Ok(None)` when every
/// closed neighborhood has a uniquely colored vertex among its colored
/// members, otherwise `Ok(Some(v))` with the lowest-index violating vertex.
pub fn verify_cncf(g: &Graph, c: &Coloring) -> Result<Option<usize>> {
    check_coloring_shape(g, c)?;
    Ok((0..g.n()).find(|&v| !cncf_ok_at(g, c, v)))
}

fn check_coloring_shape(g: &Graph, c: &Coloring) -> Result<()> {
    if c.n() != g.n() {
        return Err(Error::invalid(format!(
            "coloring has {} entries but graph has {} vertices",
            c.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Guard helper: errors unless `base^exp ≤ limit`.
fn check_enum_guard(base: usize, exp: usize, limit: u128) -> Result<()> {
    let mut total: u128 = 1;
    for _ in 0..exp {
        total = total.saturating_mul(base as u128);
        if total > limit {
            return Err(Error::guard("brute-force assignments", limit, total));
        }
    }
    Ok(())
}

/// Odometer over `digits^slots` assignments in lexicographic order (slot 0
/// most significant); calls `f` on each until it returns `true`, and
/// reports whether any call did.
fn enumerate_assignments(
    slots: usize,
    lo: usize,
    hi: usize,
    mut f: impl FnMut(&[usize]) -> bool,
) -> bool {
    let mut cur = vec![lo; slots];
    loop {
        if f(&cur) {
            return true;
        }
        // Increment from the least significant end.
        let mut i = slots;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if cur[i] < hi {
                cur[i] += 1;
                break;
            }
            cur[i] = lo;
        }
    }
}

/// Least `q ≤ q_max` admitting a total q-ONCF-coloring, or `None`. Returns
/// `None` immediately when the graph has an isolated vertex (its empty open
/// neighborhood can never be conflict-free). Enumeration is guarded by
/// `max_assignments`.
pub fn brute_chi_on_with_guard(
    g: &Graph,
    q_max: usize,
    max_assignments: u128,
) -> Result<Option<usize>> {
    let n = g.n();
    if (0..n).any(|v| g.degree(v) == 0) {
        return Ok(None);
    }
    check_enum_guard(q_max.max(1), n, max_assignments)?;
    for q in 1..=q_max {
        let mut c = Coloring::new(n, q);
        let found = enumerate_assignments(n, 1, q, |assign| {
            c.colors.copy_from_slice(assign);
            (0..n).all(|v| oncf_ok_at(g, &c, v))
        });
        if found {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// [`brute_chi_on_with_guard`] with the default guard.
pub fn brute_chi_on(g: &Graph, q_max: usize) -> Result<Option<usize>> {
    brute_chi_on_with_guard(g, q_max, ENUM_GUARD_DEFAULT)
}

/// Least `q ≤ q_max` admitting a q-CNCF-coloring, or `None`. With
/// `partial`, colorings may leave vertices uncolored (the enumeration is
/// over `(q+1)^n` assignments) — this computes the partial variant of the
/// closed-neighborhood chromatic number.
pub fn brute_chi_cn_with_guard(
    g: &Graph,
    q_max: usize,
    partial: bool,
    max_assignments: u128,
) -> Result<Option<usize>> {
    let n = g.n();
    let base = if partial { q_max + 1 } else { q_max.max(1) };
    check_enum_guard(base, n, max_assignments)?;
    for q in 1..=q_max {
        let lo = if partial { 0 } else { 1 };
        let mut c = Coloring::new(n, q);
        let found = enumerate_assignments(n, lo, q, |assign| {
            c.colors.copy_from_slice(assign);
            (0..n).all(|v| cncf_ok_at(g, &c, v))
        });
        if found {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// [`brute_chi_cn_with_guard`] with the default guard.
pub fn brute_chi_cn(g: &Graph, q_max: usize, partial: bool) -> Result<Option<usize>> {
    brute_chi_cn_with_guard(g, q_max, partial, ENUM_GUARD_DEFAULT)
}

/// Decides whether the precoloring `pre` (which must color exactly the
/// vertex cover `s`) extends to a total q-CNCF-coloring, by enumerating all
/// completions of `V ∖ s`.
pub fn brute_extension_cncf_with_guard(
    g: &Graph,
    s: &VertexSet,
    pre: &Coloring,
    q: usize,
    max_assignments: u128,
) -> Result<bool> {
    check_coloring_shape(g, pre)?;
    if !s.is_vertex_cover(g) {
        return Err(Error::invalid("extension requires s to be a vertex cover"));
    }
    if pre.q() != q {
        return Err(Error::invalid(format!(
            "precoloring palette {} does not match q = {q}",
            pre.q()
        )));
    }
    for v in 0..g.n() {
        let colored = pre.get(v).is_some();
        if colored != s.contains(v) {
            return Err(Error::invalid(
                "precoloring must color exactly the cover vertices",
            ));
        }
    }
    let free: Vec<usize> = (0..g.n()).filter(|&v| !s.contains(v)).collect();
    check_enum_guard(q.max(1), free.len(), max_assignments)?;
    let mut c = pre.clone();
    let found = enumerate_assignments(free.len(), 1, q, |assign| {
        for (i, &v) in free.iter().enumerate() {
            c.colors[v] = assign[i];
        }
        (0..g.n()).all(|v| cncf_ok_at(g, &c, v))
    });
    Ok(found)
}

/// [`brute_extension_cncf_with_guard`] with the default guard.
pub fn brute_extension_cncf(g: &Graph, s: &VertexSet, pre: &Coloring, q: usize) -> Result<bool> {
    brute_extension_cncf_with_guard(g, s, pre, q, ENUM_GUARD_DEFAULT)
}
