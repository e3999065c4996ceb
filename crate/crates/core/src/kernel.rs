//! Kernelization for 2-color closed-neighborhood conflict-free coloring,
//! parameterized by a vertex cover of size `k`.
//!
//! Two kernels are implemented.
//!
//! * **Polynomial-root CSP kernel** ([`kernelize_2cncf`]): the input graph is
//!   first thinned so that, outside the cover, only ≤ 3 representatives of
//!   every low-degree twin class survive ([`preprocess_mark`]). The coloring
//!   problem on the thinned graph is then written as a system of polynomial
//!   equations over {0,1} assignments ([`build_csp`]), variables of
//!   high-degree non-cover vertices are eliminated by an exact interpolation
//!   substitution ([`substitute_outside_vars`]), and each piece of the system
//!   is shrunk to a linearly independent subset of constraints by exact
//!   rational Gaussian elimination ([`reduce_constraints`]). The result is an
//!   equisatisfiable system with O(k²) variables and O(k⁶) constraints.
//! * **Extension kernel** ([`kernelize_extension`]): given a 2-coloring of
//!   the cover, the question whether it extends to a full conflict-free
//!   coloring is reduced to an instance with O(k²) vertices by propagating
//!   forced colors, keeping two witnesses of each color around every cover
//!   vertex, and thinning twin classes.
//!
//! All arithmetic in this module is exact: coefficients are
//! arbitrary-precision rationals ([`BigRational`]) and no floating point is
//! used anywhere.
//!
//! # CSP file format
//!
//! [`CspInstance::serialize`] emits a JSON document and
//! [`CspInstance::parse`] reads it back bit-exactly:
//!
//! ```text
//! {
//!   "constraints": [
//!     [ {"coeff": "1/1", "vars": ["r_1"]}, {"coeff": "-1/1", "vars": []} ]
//!   ],
//!   "variables": ["r_1", "b_1"]
//! }
//! ```
//!
//! * `variables` is an array of distinct, non-empty names.
//! * `constraints` is an array of constraints; each constraint is an array
//!   of terms and asserts that the sum of its terms equals zero under every
//!   admissible {0,1} assignment.
//! * Each term has an exact rational `coeff` written `"p/q"` (`q` > 0) and a
//!   `vars` array naming the variables of one multilinear monomial (empty =
//!   constant term). Every name in `vars` must appear in `variables`.
//!
//! Serialization lists the terms of a constraint in graded lexicographic
//! monomial order and never emits zero coefficients; parsing accepts
//! unsorted or repeated monomials and merges them (repeated variables inside
//! one term are collapsed, since x² = x on {0,1}).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::Coloring;

/// Color code for "red" in the extension kernel (palette {1, 2}).
const RED: usize = 1;
/// Color code for "blue" in the extension kernel (palette {1, 2}).
const BLUE: usize = 2;

/// Variable-count guard for [`solve_csp_brute`].
const CSP_BRUTE_VAR_LIMIT: usize = 24;

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// A multilinear monomial: a sorted, duplicate-free list of variable ids.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Monomial(Vec<usize>);

impl Ord for Monomial {
    /// Graded lexicographic order: lower total degree first, then
    /// lexicographic on the sorted variable lists.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multilinear polynomial with exact rational coefficients, interpreted
/// as a function on {0,1} assignments of its variables.
///
/// Multilinearity is maintained as an invariant: every product collapses
/// repeated variables (x² = x, which is valid on {0,1}), so a polynomial is
/// identically zero on {0,1} assignments exactly when it has no terms.
/// Terms are kept in graded lexicographic order and zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial::default()
    }

    /// A constant polynomial.
    pub fn constant(c: BigRational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Vec::new(), c);
        p
    }

    /// A constant polynomial from an integer.
    pub fn from_int(c: i64) -> Self {
        Polynomial::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The polynomial consisting of a single variable.
    pub fn variable(v: usize) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(vec![v], BigRational::one());
        p
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging
    /// duplicates and collapsing repeated variables within a monomial.
    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<usize>, BigRational)>) -> Self {
        let mut p = Polynomial::zero();
        for (vars, c) in terms {
            p.add_term(vars, c);
        }
        p
    }

    /// Adds `coeff · Π vars` to the polynomial. `vars` may be unsorted and
    /// may repeat variables; repeats collapse (x² = x on {0,1}).
    pub fn add_term(&mut self, mut vars: Vec<usize>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        vars.sort_unstable();
        vars.dedup();
        let key = Monomial(vars);
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            // Re-borrow immutably to find and remove the cancelled term.
            let dead: Vec<Monomial> = self
                .terms
                .iter()
                .filter(|(_, c)| c.is_zero())
                .map(|(m, _)| m.clone())
                .collect();
            for m in dead {
                self.terms.remove(&m);
            }
        }
    }

    /// True when the polynomial has no terms (the zero function on {0,1}).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree after multilinear collapse; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    /// Iterates terms in graded lexicographic order as
    /// (sorted variable ids, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &BigRational)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// The sorted list of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut vars: Vec<usize> = self.terms.keys().flat_map(|m| m.0.iter().copied()).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// True when `var` occurs in some term.
    pub fn mentions(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0.binary_search(&var).is_ok())
    }

    /// Evaluates at a {0,1} assignment given as a boolean slice indexed by
    /// variable id (true = 1).
    pub fn eval01(&self, assign: &[bool]) -> BigRational {
        let mut sum = BigRational::zero();
        for (m, c) in &self.terms {
            if m.0.iter().all(|&v| assign[v]) {
                sum += c;
            }
        }
        sum
    }

    /// Multiplies every coefficient by `c`.
    pub fn scaled(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut p = Polynomial::zero();
        for (m, k) in &self.terms {
            p.add_term(m.0.clone(), k * c);
        }
        p
    }

    /// Replaces every occurrence of `var` by the polynomial `replacement`.
    /// The substitution is exact on {0,1} assignments whenever `replacement`
    /// takes values in {0,1} there.
    pub fn substitute(&self, var: usize, replacement: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.0.binary_search(&var).is_ok() {
                let rest: Vec<usize> = m.0.iter().copied().filter(|&u| u != var).collect();
                let mut stub = Polynomial::zero();
                stub.add_term(rest, c.clone());
                out = &out + &(&stub * replacement);
            } else {
                out.add_term(m.0.clone(), c.clone());
            }
        }
        out
    }

    /// Renames variables through `f` (merging any monomials that collide).
    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_term(m.0.iter().map(|&v| f(v)).collect(), c.clone());
        }
        out
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.0.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut vars = ma.0.clone();
                vars.extend_from_slice(&mb.0);
                out.add_term(vars, ca * cb);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// The interpolation polynomial g
// ---------------------------------------------------------------------------

/// Evaluates the cubic interpolation polynomial
///
/// ```text
/// g(x, N) = -(N - x)(x - 1)(N - 2(x + 1)) / (N (N - 2))
/// ```
///
/// which satisfies g(0, N) = g(N−1, N) = 1 and g(1, N) = g(N, N) = 0 for
/// every integer N ∉ {0, 2}. Given that exactly x of the N neighbors of a
/// degree-N vertex are red, g(x, N) is 1 when the vertex itself must be red
/// (its closed neighborhood needs red to appear exactly once) and 0 when it
/// must be blue.
pub fn g_eval(x: &BigRational, n: i64) -> Result<BigRational> {
    if n == 0 || n == 2 {
        return Err(Error::invalid(format!(
            "g(x, N) is undefined at N = {n}: denominator N·(N−2) vanishes"
        )));
    }
    let nn = BigRational::from_integer(BigInt::from(n));
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let numerator = (&nn - x) * (x - &one) * (&nn - &two * (x + &one));
    Ok(-numerator / (&nn * (&nn - &two)))
}

/// [`g_eval`] composed with a polynomial argument: expands g(x, N) with the
/// polynomial `x` substituted for the indeterminate, keeping all arithmetic
/// exact and multilinear.
fn g_poly(x: &Polynomial, n: i64) -> Result<Polynomial> {
    if n == 0 || n == 2 {
        return Err(Error::invalid(format!(
            "g(x, N) is undefined at N = {n}: denominator N·(N−2) vanishes"
        )));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let f1 = &Polynomial::from_int(n) - x;
    let f2 = x - &Polynomial::from_int(1);
    // N − 2(x + 1) = (N − 2) − 2x.
    let f3 = &Polynomial::from_int(n - 2) - &x.scaled(&two);
    let numerator = &(&f1 * &f2) * &f3;
    let denom = BigRational::from_integer(BigInt::from(n) * BigInt::from(n - 2));
    Ok(numerator.scaled(&(-BigRational::one() / denom)))
}

// ---------------------------------------------------------------------------
// CSP instances
// ---------------------------------------------------------------------------

/// A system of polynomial equality constraints over named {0,1} variables.
///
/// Each constraint is a [`Polynomial`] over variable *indices* into the
/// name list and asserts value 0; the instance is satisfiable when some
/// {0,1} assignment zeroes every constraint simultaneously.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    variables: Vec<String>,
    constraints: Vec<Polynomial>,
}

impl CspInstance {
    /// Builds an instance, checking that variable names are non-empty and
    /// distinct and that every constraint only mentions declared variables.
    pub fn new(variables: Vec<String>, constraints: Vec<Polynomial>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for name in &variables {
            if name.is_empty() {
                return Err(Error::invalid("empty variable name"));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::invalid(format!("duplicate variable name '{name}'")));
            }
        }
        for (i, c) in constraints.iter().enumerate() {
            if let Some(&v) = c.support().last() {
                if v >= variables.len() {
                    return Err(Error::invalid(format!(
                        "constraint {i} mentions variable index {v} outside the declared list"
                    )));
                }
            }
        }
        Ok(CspInstance {
            variables,
            constraints,
        })
    }

    /// The declared variable names, in index order.
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// The constraint polynomials.
    pub fn constraints(&self) -> &[Polynomial] {
        &self.constraints
    }

    /// Serializes to the JSON document format described in the module docs:
    /// deterministic, graded-lex term order, coefficients as `"p/q"`.
    pub fn serialize(&self) -> String {
        let constraints: Vec<Value> = self
            .constraints
            .iter()
            .map(|p| {
                let terms: Vec<Value> = p
                    .terms()
                    .map(|(vars, c)| {
                        let names: Vec<Value> = vars
                            .iter()
                            .map(|&v| Value::String(self.variables[v].clone()))
                            .collect();
                        json!({
                            "coeff": format!("{}/{}", c.numer(), c.denom()),
                            "vars": names,
                        })
                    })
                    .collect();
                Value::Array(terms)
            })
            .collect();
        let doc = json!({
            "variables": self.variables,
            "constraints": constraints,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("json encoding cannot fail");
        text.push('\n');
        text
    }

    /// Parses the JSON document format. Syntax errors report the line of
    /// the failure; structural violations (unknown keys, undeclared
    /// variable names, zero or malformed coefficients) are invalid-input
    /// errors.
    pub fn parse(text: &str) -> Result<CspInstance> {
        let doc: Value = serde_json::from_str(text)
            .map_err(|e| Error::format(e.line(), format!("bad csp json: {e}")))?;
        let obj = doc
            .as_object()
            .ok_or_else(|| Error::invalid("csp document must be a json object"))?;
        if obj.len() != 2 || !obj.contains_key("variables") || !obj.contains_key("constraints") {
            return Err(Error::invalid(
                "csp document must contain exactly the keys 'variables' and 'constraints'",
            ));
        }
        let var_values = obj["variables"]
            .as_array()
            .ok_or_else(|| Error::invalid("'variables' must be an array"))?;
        let mut variables = Vec::with_capacity(var_values.len());
        for v in var_values {
            let name = v
                .as_str()
                .ok_or_else(|| Error::invalid("variable names must be strings"))?;
            variables.push(name.to_string());
        }
        let index: BTreeMap<&str, usize> = variables
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let con_values = obj["constraints"]
            .as_array()
            .ok_or_else(|| Error::invalid("'constraints' must be an array"))?;
        let mut constraints = Vec::with_capacity(con_values.len());
        for (ci, cv) in con_values.iter().enumerate() {
            let terms = cv
                .as_array()
                .ok_or_else(|| Error::invalid(format!("constraint {ci} must be an array")))?;
            let mut p = Polynomial::zero();
            for tv in terms {
                let term = tv
                    .as_object()
                    .ok_or_else(|| Error::invalid(format!("constraint {ci}: term must be an object")))?;
                if term.len() != 2 || !term.contains_key("coeff") || !term.contains_key("vars") {
                    return Err(Error::invalid(format!(
                        "constraint {ci}: term must contain exactly the keys 'coeff' and 'vars'"
                    )));
                }
                let coeff_str = term["coeff"].as_str().ok_or_else(|| {
                    Error::invalid(format!("constraint {ci}: 'coeff' must be a string"))
                })?;
                let coeff = parse_rational(coeff_str).ok_or_else(|| {
                    Error::invalid(format!(
                        "constraint {ci}: coefficient '{coeff_str}' is not of the form p/q with q > 0"
                    ))
                })?;
                if coeff.is_zero() {
                    return Err(Error::invalid(format!(
                        "constraint {ci}: zero coefficients may not be stored"
                    )));
                }
                let var_names = term["vars"].as_array().ok_or_else(|| {
                    Error::invalid(format!("constraint {ci}: 'vars' must be an array"))
                })?;
                let mut vars = Vec::with_capacity(var_names.len());
                for nv in var_names {
                    let name = nv.as_str().ok_or_else(|| {
                        Error::invalid(format!("constraint {ci}: monomial entries must be strings"))
                    })?;
                    let &vi = index.get(name).ok_or_else(|| {
                        Error::invalid(format!(
                            "constraint {ci}: variable '{name}' is not in the variable list"
                        ))
                    })?;
                    vars.push(vi);
                }
                p.add_term(vars, coeff);
            }
            constraints.push(p);
        }
        CspInstance::new(variables, constraints)
    }
}

/// Parses `"p/q"` with integer `p` and positive integer `q`.
fn parse_rational(s: &str) -> Option<BigRational> {
    let (p, q) = s.split_once('/')?;
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q <= BigInt::zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

// ---------------------------------------------------------------------------
// Marked graphs and preprocessing
// ---------------------------------------------------------------------------

/// A graph together with a vertex cover, the set of vertices the
/// kernelization marked for keeping, and (for the extension kernel) the
/// partial coloring carried by cover and marked vertices.
#[derive(Debug, Clone)]
pub struct MarkedGraph {
    /// The (re-indexed) kernel graph.
    pub graph: Graph,
    /// The vertex cover, re-indexed into `graph`.
    pub cover: VertexSet,
    /// Marked vertices kept by the kernelization; disjoint from `cover`.
    pub marked: VertexSet,
    /// For the extension kernel: the partial coloring of `cover ∪ marked`.
    pub coloring: Option<Coloring>,
    /// Maps each vertex of `graph` back to its id in the input graph.
    pub orig_ids: Vec<usize>,
}

/// Checks that `s` is a vertex cover of `g` with in-range members.
fn validate_cover(g: &Graph, s: &VertexSet) -> Result<()> {
    if let Some(&v) = s.members().last() {
        if v >= g.n() {
            return Err(Error::invalid(format!(
                "cover vertex {v} out of range for n = {}",
                g.n()
            )));
        }
    }
    if !s.is_vertex_cover(g) {
        return Err(Error::invalid("kernelization requires s to be a vertex cover"));
    }
    Ok(())
}

/// Twin-thinning preprocessing for the 2-color closed-neighborhood kernel.
///
/// Every vertex outside the cover `s` has all its neighbors inside `s`. For
/// each neighborhood `X ⊆ s` with `|X| ≤ 2` (the empty set included), the
/// three lowest-indexed non-cover vertices whose neighborhood is exactly
/// `X` are marked; every unmarked non-cover vertex of degree ≤ 2 is then
/// deleted. Non-cover vertices of degree ≥ 3 are always kept (and stay
/// unmarked). The surviving graph is 2-colorable in the closed-neighborhood
/// conflict-free sense if and only if the input is: a deleted vertex has
/// three surviving twins, of which at most two can repeat each closed-
/// neighborhood color pattern, so its own constraint is always satisfiable
/// and its deletion never changes any other vertex's neighborhood multiset
/// by more than a repeated color.
pub fn preprocess_mark(g: &Graph, s: &VertexSet) -> Result<MarkedGraph> {
    validate_cover(g, s)?;
    let n = g.n();
    // Group low-degree non-cover vertices by exact neighborhood; vertex ids
    // are pushed in ascending order, so `take(3)` keeps the lowest indices.
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        if s.contains(v) || g.degree(v) > 2 {
            continue;
        }
        let mut key = g.neighbors(v).to_vec();
        key.sort_unstable();
        groups.entry(key).or_default().push(v);
    }
    let mut marked: Vec<usize> = groups
        .values()
        .flat_map(|vs| vs.iter().copied().take(3))
        .collect();
    marked.sort_unstable();
    let keep: Vec<usize> = (0..n)
        .filter(|&v| s.contains(v) || g.degree(v) >= 3 || marked.binary_search(&v).is_ok())
        .collect();
    let (graph, orig_ids) = g.induced(&keep)?;
    let reindex = |old: usize| -> usize {
        orig_ids
            .binary_search(&old)
            .expect("kept vertices appear in the induced map")
    };
    let cover = VertexSet::from_ids(&s.members().iter().map(|&v| reindex(v)).collect::<Vec<_>>())?;
    let marked = VertexSet::from_ids(&marked.iter().map(|&v| reindex(v)).collect::<Vec<_>>())?;
    Ok(MarkedGraph {
        graph,
        cover,
        marked,
        coloring: None,
        orig_ids,
    })
}

// ---------------------------------------------------------------------------
// CSP construction
// ---------------------------------------------------------------------------

/// The variable names for a marked graph: `r_i`/`b_i` per vertex, where `i`
/// is the 1-based id of the vertex in the *original* graph. Variable index
/// convention: vertex `v` of `mg.graph` owns indices `2v` (red) and
/// `2v + 1` (blue).
fn csp_variable_names(mg: &MarkedGraph) -> Vec<String> {
    (0..mg.graph.n())
        .flat_map(|v| {
            let orig = mg.orig_ids[v] + 1;
            [format!("r_{orig}"), format!("b_{orig}")]
        })
        .collect()
}

/// Encodes 2-color closed-neighborhood conflict-free colorability of
/// `mg.graph` as a polynomial-root CSP over {0,1} variables r_v, b_v
/// (r_v = 1 ⟺ v is red; b_v = 1 ⟺ v is blue).
///
/// Constraints are emitted in three blocks, in this order:
///
/// 1. **Choice**: for every vertex `v`, `r_v + b_v − 1 = 0` (exactly one
///    color).
/// 2. **Conflict-freeness**: for every vertex `v`,
///    `(−1 + Σ_{u ∈ N[v]} r_u) · (−1 + Σ_{u ∈ N[v]} b_u) = 0` (its closed
///    neighborhood has exactly one red or exactly one blue member).
/// 3. **Degree window**: for every non-cover unmarked vertex `v` with
///    degree `d` and `x = Σ_{u ∈ N(v)} r_u`,
///    `x (x − 1) (x − (d − 1)) (x − d) = 0` — among v's neighbors the red
///    count must be 0, 1, d−1, or d, which are exactly the counts that
///    leave v a color choice making its own closed neighborhood
///    conflict-free.
///
/// The instance is satisfiable over {0,1} if and only if `mg.graph` has a
/// 2-color closed-neighborhood conflict-free coloring.
pub fn build_csp(mg: &MarkedGraph) -> CspInstance {
    let gp = &mg.graph;
    let np = gp.n();
    let variables = csp_variable_names(mg);
    let r = |v: usize| Polynomial::variable(2 * v);
    let b = |v: usize| Polynomial::variable(2 * v + 1);
    let mut constraints = Vec::with_capacity(2 * np);
    for v in 0..np {
        constraints.push(&(&r(v) + &b(v)) - &Polynomial::from_int(1));
    }
    for v in 0..np {
        let mut sum_r = &r(v) - &Polynomial::from_int(1);
        let mut sum_b = &b(v) - &Polynomial::from_int(1);
        for &u in gp.neighbors(v) {
            sum_r = &sum_r + &r(u);
            sum_b = &sum_b + &b(u);
        }
        constraints.push(&sum_r * &sum_b);
    }
    for v in 0..np {
        if mg.cover.contains(v) || mg.marked.contains(v) {
            continue;
        }
        let d = gp.degree(v) as i64;
        let mut x = Polynomial::zero();
        for &u in gp.neighbors(v) {
            x = &x + &r(u);
        }
        let p = &(&x * &(&x - &Polynomial::from_int(1)))
            * &(&(&x - &Polynomial::from_int(d - 1)) * &(&x - &Polynomial::from_int(d)));
        constraints.push(p);
    }
    CspInstance::new(variables, constraints)
        .expect("generated constraints reference declared variables")
}

/// Positions of the three [`build_csp`] blocks for a marked graph with
/// `np` vertices: choice block `0..np`, conflict-freeness block
/// `np..2·np`, degree-window block after that (outside vertices in
/// ascending order).
fn build_constraint_vertex(mg: &MarkedGraph, position: usize) -> BuildTag {
    let np = mg.graph.n();
    if position < np {
        BuildTag::Choice(position)
    } else if position < 2 * np {
        BuildTag::ConflictFree(position - np)
    } else {
        let outside: Vec<usize> = (0..np)
            .filter(|&v| !mg.cover.contains(v) && !mg.marked.contains(v))
            .collect();
        BuildTag::DegreeWindow(outside[position - 2 * np])
    }
}

/// Which vertex and block a [`build_csp`] constraint came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BuildTag {
    Choice(usize),
    ConflictFree(usize),
    DegreeWindow(usize),
}

// ---------------------------------------------------------------------------
// Variable elimination
// ---------------------------------------------------------------------------

/// The replacement polynomials for eliminated variables, indexed by old
/// variable index: `r_v → g(Σ_{u∈N(v)} r_u, deg v)` and `b_v → 1 − that`
/// for every non-cover unmarked vertex `v`.
fn substitution_map(mg: &MarkedGraph) -> Result<Vec<Option<Polynomial>>> {
    let gp = &mg.graph;
    let np = gp.n();
    let mut subs: Vec<Option<Polynomial>> = vec![None; 2 * np];
    for v in 0..np {
        if mg.cover.contains(v) || mg.marked.contains(v) {
            continue;
        }
        if gp.degree(v) < 3 {
            return Err(Error::Internal(format!(
                "eliminated vertex {v} has degree {} < 3 after preprocessing",
                gp.degree(v)
            )));
        }
        if let Some(&u) = gp.neighbors(v).iter().find(|&&u| !mg.cover.contains(u)) {
            return Err(Error::Internal(format!(
                "eliminated vertex {v} has neighbor {u} outside the cover"
            )));
        }
        let mut x = Polynomial::zero();
        for &u in gp.neighbors(v) {
            x = &x + &Polynomial::variable(2 * u);
        }
        let f = g_poly(&x, gp.degree(v) as i64)?;
        subs[2 * v + 1] = Some(&Polynomial::from_int(1) - &f);
        subs[2 * v] = Some(f);
    }
    Ok(subs)
}

/// Eliminates the variables of non-cover unmarked vertices and returns the
/// shrunk instance together with, for each surviving constraint, its index
/// in the input constraint list.
fn substitute_impl(csp: &CspInstance, mg: &MarkedGraph) -> Result<(CspInstance, Vec<usize>)> {
    if csp.variables() != csp_variable_names(mg).as_slice() {
        return Err(Error::invalid(
            "csp instance does not match the marked graph it is being reduced against",
        ));
    }
    let subs = substitution_map(mg)?;
    let kept_vars: Vec<usize> = (0..subs.len()).filter(|&i| subs[i].is_none()).collect();
    let mut new_index: Vec<Option<usize>> = vec![None; subs.len()];
    for (new, &old) in kept_vars.iter().enumerate() {
        new_index[old] = Some(new);
    }
    let variables: Vec<String> = kept_vars
        .iter()
        .map(|&i| csp.variables[i].clone())
        .collect();
    let mut constraints = Vec::new();
    let mut kept_positions = Vec::new();
    for (ci, c) in csp.constraints.iter().enumerate() {
        let mut p = c.clone();
        for var in c.support() {
            if let Some(f) = &subs[var] {
                p = p.substitute(var, f);
            }
        }
        if p.is_zero() {
            // Identically zero after elimination (e.g. the choice
            // constraint of an eliminated vertex, f_v + (1 − f_v) − 1):
            // trivially satisfied, so it is dropped.
            continue;
        }
        let q = p.map_vars(|v| {
            new_index[v].expect("eliminated variables cannot survive substitution")
        });
        constraints.push(q);
        kept_positions.push(ci);
    }
    Ok((CspInstance::new(variables, constraints)?, kept_positions))
}

/// Eliminates the r/b variables of every non-cover unmarked vertex `v` by
/// substituting the interpolation polynomial
/// `f_v = g(Σ_{u∈N(v)} r_u, deg v)` for `r_v` and `1 − f_v` for `b_v`.
///
/// On the red counts that the degree-window constraint of `v` allows
/// (0, 1, deg−1, deg), `f_v` takes exactly the {0,1} value that a correct
/// color choice for `v` must take, so satisfiability is preserved in both
/// directions. Constraints that become identically zero are dropped; the
/// variable list shrinks to the cover and marked vertices. An instance
/// without eliminated vertices is returned unchanged.
pub fn substitute_outside_vars(csp: &CspInstance, mg: &MarkedGraph) -> Result<CspInstance> {
    substitute_impl(csp, mg).map(|(instance, _)| instance)
}

// ---------------------------------------------------------------------------
// Constraint reduction
// ---------------------------------------------------------------------------

/// Keeps a maximal linearly independent subset of the constraints, in input
/// order, by exact rational Gaussian elimination on their coefficient
/// vectors over the multilinear monomial basis.
///
/// Every constraint must have degree ≤ `d`. The output is a subset of the
/// input with the same variable list and equal coefficient-matrix rank, of
/// size at most (#variables)^d + 1; every {0,1} assignment satisfying the
/// output satisfies the input, because each discarded constraint is a
/// rational linear combination of kept ones.
pub fn reduce_constraints(csp: &CspInstance, d: usize) -> Result<CspInstance> {
    for (i, c) in csp.constraints.iter().enumerate() {
        if c.degree() > d {
            return Err(Error::invalid(format!(
                "constraint {i} has degree {} above the bound {d}",
                c.degree()
            )));
        }
    }
    // Column index per monomial that actually occurs (absent monomials
    // contribute zero coordinates and never affect independence).
    let mut columns: BTreeMap<Monomial, usize> = BTreeMap::new();
    for c in &csp.constraints {
        for (m, _) in &c.terms {
            let next = columns.len();
            columns.entry(m.clone()).or_insert(next);
        }
    }
    let width = columns.len();
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut kept = Vec::new();
    for c in &csp.constraints {
        let mut row = vec![BigRational::zero(); width];
        for (m, coeff) in &c.terms {
            row[columns[m]] = coeff.clone();
        }
        for (i, &pc) in pivot_cols.iter().enumerate() {
            if !row[pc].is_zero() {
                let factor = row[pc].clone();
                for j in 0..width {
                    let delta = &factor * &basis[i][j];
                    row[j] -= delta;
                }
            }
        }
        if let Some(lead) = row.iter().position(|x| !x.is_zero()) {
            let inv = row[lead].clone();
            for x in &mut row {
                *x /= inv.clone();
            }
            pivot_cols.push(lead);
            basis.push(row);
            kept.push(c.clone());
        }
    }
    CspInstance::new(csp.variables.clone(), kept)
}

// ---------------------------------------------------------------------------
// Full pipeline
// ---------------------------------------------------------------------------

/// Size accounting for [`kernelize_2cncf_audited`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelAudit {
    /// Vertices surviving preprocessing.
    pub kernel_vertices: usize,
    /// Variables after elimination (2 per cover or marked vertex).
    pub variable_count: usize,
    /// Constraints kept verbatim (the conflict-freeness constraints of
    /// cover vertices) — always the cover size.
    pub part_cover: usize,
    /// Constraints mentioning a marked-vertex variable, before reduction.
    pub part1_before: usize,
    /// The same after degree-2 reduction.
    pub part1_after: usize,
    /// Remaining constraints (cover variables only), before reduction.
    pub part2_before: usize,
    /// The same after degree-6 reduction.
    pub part2_after: usize,
}

/// [`kernelize_2cncf`] with size accounting for audits and tests.
pub fn kernelize_2cncf_audited(g: &Graph, s: &VertexSet) -> Result<(CspInstance, KernelAudit)> {
    let mg = preprocess_mark(g, s)?;
    let full = build_csp(&mg);
    let (shrunk, kept_positions) = substitute_impl(&full, &mg)?;

    // Variables belonging to marked vertices, in the shrunk index space.
    let np = mg.graph.n();
    let kept_vertices: Vec<usize> = (0..np)
        .filter(|&v| mg.cover.contains(v) || mg.marked.contains(v))
        .collect();
    let mut is_marked_var = vec![false; shrunk.variables().len()];
    for (rank, &v) in kept_vertices.iter().enumerate() {
        if mg.marked.contains(v) {
            is_marked_var[2 * rank] = true;
            is_marked_var[2 * rank + 1] = true;
        }
    }

    // Partition: the conflict-freeness constraints of cover vertices are
    // kept verbatim; everything else is reduced at degree 2 when it
    // mentions a marked-vertex variable (such constraints belong to marked
    // vertices, whose neighbors all lie in the cover) and at degree 6
    // otherwise.
    let mut part_cover = Vec::new();
    let mut part1 = Vec::new();
    let mut part2 = Vec::new();
    for (pos, &orig) in kept_positions.iter().enumerate() {
        let c = shrunk.constraints()[pos].clone();
        match build_constraint_vertex(&mg, orig) {
            BuildTag::ConflictFree(v) if mg.cover.contains(v) => part_cover.push(c),
            _ => {
                if c.support().iter().any(|&v| is_marked_var[v]) {
                    part1.push(c);
                } else {
                    part2.push(c);
                }
            }
        }
    }
    let part1_before = part1.len();
    let part2_before = part2.len();
    let part1_reduced = reduce_constraints(
        &CspInstance::new(shrunk.variables().to_vec(), part1)?,
        2,
    )?;
    let part2_reduced = reduce_constraints(
        &CspInstance::new(shrunk.variables().to_vec(), part2)?,
        6,
    )?;
    let audit = KernelAudit {
        kernel_vertices: np,
        variable_count: shrunk.variables().len(),
        part_cover: part_cover.len(),
        part1_before,
        part1_after: part1_reduced.constraints().len(),
        part2_before,
        part2_after: part2_reduced.constraints().len(),
    };
    let mut constraints = part_cover;
    constraints.extend_from_slice(part1_reduced.constraints());
    constraints.extend_from_slice(part2_reduced.constraints());
    Ok((
        CspInstance::new(shrunk.variables().to_vec(), constraints)?,
        audit,
    ))
}

/// The full kernelization pipeline for 2-color closed-neighborhood
/// conflict-free coloring parameterized by a vertex cover `s` of size `k`:
/// twin-thinning preprocessing, CSP construction, variable elimination,
/// and per-part constraint reduction.
///
/// The output instance is satisfiable over {0,1} if and only if `g` has a
/// 2-color closed-neighborhood conflict-free coloring. It has O(k²)
/// variables, and at most |V'|² + 1 (marked part) + (2k)⁶ + 1 (cover part)
/// + k (verbatim part) constraints, where |V'| is the variable count.
pub fn kernelize_2cncf(g: &Graph, s: &VertexSet) -> Result<CspInstance> {
    kernelize_2cncf_audited(g, s).map(|(instance, _)| instance)
}

// ---------------------------------------------------------------------------
// Brute-force CSP solving
// ---------------------------------------------------------------------------

/// Compiled constraint for fast exhaustive evaluation: each term as a
/// variable bitmask plus its coefficient. Coefficients are cleared of
/// denominators; the integer form is used when everything fits `i128`
/// with headroom, the exact rational form otherwise.
enum CompiledTerms {
    Int(Vec<(u32, i128)>),
    Rat(Vec<(u32, BigRational)>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn compile_constraint(p: &Polynomial) -> CompiledTerms {
    let masked: Vec<(u32, &BigRational)> = p
        .terms()
        .map(|(vars, c)| {
            let mask = vars.iter().fold(0u32, |m, &v| m | (1u32 << v));
            (mask, c)
        })
        .collect();
    // Try to clear denominators into i128 with room to sum all terms.
    let mut lcm: u128 = 1;
    let mut ok = true;
    for (_, c) in &masked {
        match c.denom().to_u128() {
            Some(d) if d > 0 => {
                let g = gcd_u128(lcm, d);
                match (lcm / g).checked_mul(d) {
                    Some(l) => lcm = l,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            _ => {
                ok = false;
                break;
            }
        }
    }
    if ok {
        let budget = i128::MAX / (masked.len() as i128 + 1);
        let mut ints = Vec::with_capacity(masked.len());
        for (mask, c) in &masked {
            let scale = BigInt::from(lcm / c.denom().to_u128().expect("checked above"));
            let scaled = c.numer() * scale;
            match scaled.to_i128() {
                Some(v) if v.checked_abs().is_some_and(|a| a <= budget) => {
                    ints.push((*mask, v))
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return CompiledTerms::Int(ints);
        }
    }
    CompiledTerms::Rat(masked.into_iter().map(|(m, c)| (m, c.clone())).collect())
}

impl CompiledTerms {
    fn is_zero_at(&self, assign: u32) -> bool {
        match self {
            CompiledTerms::Int(terms) => {
                let mut sum: i128 = 0;
                for &(mask, c) in terms {
                    if assign & mask == mask {
                        sum += c;
                    }
                }
                sum == 0
            }
            CompiledTerms::Rat(terms) => {
                let mut sum = BigRational::zero();
                for (mask, c) in terms {
                    if assign & mask == *mask {
                        sum += c;
                    }
                }
                sum.is_zero()
            }
        }
    }
}

/// Exhaustively decides satisfiability of the instance over {0,1}
/// assignments. Guarded at 24 variables; all arithmetic stays exact.
pub fn solve_csp_brute(csp: &CspInstance) -> Result<bool> {
    let nv = csp.variables().len();
    if nv > CSP_BRUTE_VAR_LIMIT {
        return Err(Error::guard(
            "csp brute-force variables",
            CSP_BRUTE_VAR_LIMIT as u128,
            nv as u128,
        ));
    }
    let compiled: Vec<CompiledTerms> = csp.constraints.iter().map(compile_constraint).collect();
    let total: u64 = 1u64 << nv;
    for assign in 0..total {
        let assign = assign as u32;
        if compiled.iter().all(|c| c.is_zero_at(assign)) {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Extension kernel
// ---------------------------------------------------------------------------

/// Result of [`kernelize_extension`]: either the instance is already known
/// to be a no-instance, or a small equivalent instance.
#[derive(Debug, Clone)]
pub enum ExtensionKernel {
    /// Some vertex sees two red and two blue precolored neighbors, so no
    /// extension can make its closed neighborhood conflict-free.
    TrivialNo,
    /// An equivalent instance: `graph` with cover `cover ∪ marked`,
    /// precolored by `coloring`.
    Kernel(MarkedGraph),
}

/// Kernel for the extension problem: given a 2-coloring `pre` of a vertex
/// cover `s` (color 1 = red, color 2 = blue; the roles are symmetric),
/// decide-preserving shrink of the question whether `pre` extends to a
/// 2-color closed-neighborhood conflict-free coloring of all of `g`.
///
/// Steps:
///
/// 1. If any vertex has ≥ 2 red and ≥ 2 blue precolored neighbors, its
///    closed neighborhood can never be conflict-free — trivial no.
/// 2. Every non-cover vertex of degree ≥ 3 has all neighbors precolored,
///    and its own color is forced: only-red or one-red neighborhoods force
///    blue (red must stay unique or become unique via the vertex itself
///    being blue is impossible, so the forced color keeps the unique
///    witness); symmetrically for blue. Non-cover vertices are pairwise
///    non-adjacent, so one pass suffices.
/// 3. Around every cover vertex, two red and two blue colored neighbors
///    are marked as witnesses when they exist (preferring cover neighbors
///    and already-marked vertices, then lowest index); unmarked non-cover
///    vertices of degree ≥ 3 are deleted. Their forced colors make them
///    recolorable-free: any deleted vertex's constraint was satisfiable,
///    and the kept witnesses pin every cover vertex's color counts.
/// 4. The remaining non-cover vertices (all of degree ≤ 2) are thinned to
///    ≤ 3 representatives per exact neighborhood, lowest indices first.
///
/// The output instance extends if and only if the input does, and its
/// vertex count is O(|s|²).
pub fn kernelize_extension(g: &Graph, s: &VertexSet, pre: &Coloring) -> Result<ExtensionKernel> {
    validate_cover(g, s)?;
    if pre.n() != g.n() {
        return Err(Error::invalid(format!(
            "precoloring covers {} vertices but the graph has {}",
            pre.n(),
            g.n()
        )));
    }
    if pre.q() != 2 {
        return Err(Error::invalid(format!(
            "extension kernel requires a 2-color precoloring, got q = {}",
            pre.q()
        )));
    }
    let n = g.n();
    for v in 0..n {
        if pre.get(v).is_some() != s.contains(v) {
            return Err(Error::invalid(
                "precoloring must color exactly the cover vertices",
            ));
        }
    }

    // Step 1: immediate obstruction.
    for v in 0..n {
        let mut red = 0usize;
        let mut blue = 0usize;
        for &u in g.neighbors(v) {
            match pre.get(u) {
                Some(RED) => red += 1,
                Some(BLUE) => blue += 1,
                _ => {}
            }
        }
        if red >= 2 && blue >= 2 {
            return Ok(ExtensionKernel::TrivialNo);
        }
    }

    // Step 2: forced colors for high-degree non-cover vertices. Their
    // neighbors all lie in the cover, hence are all precolored.
    let mut coloring = pre.clone();
    for v in 0..n {
        if s.contains(v) || g.degree(v) < 3 {
            continue;
        }
        let mut red = 0usize;
        let mut blue = 0usize;
        for &u in g.neighbors(v) {
            match pre.get(u) {
                Some(RED) => red += 1,
                Some(BLUE) => blue += 1,
                _ => {
                    return Err(Error::Internal(format!(
                        "non-cover vertex {v} has an uncolored neighbor {u}"
                    )))
                }
            }
        }
        let forced = if blue == 0 {
            // All ≥ 3 neighbors red: v red would leave no unique color.
            BLUE
        } else if red == 0 {
            RED
        } else if red >= 2 && blue == 1 {
            // v blue would pair up the lone blue witness.
            RED
        } else if red == 1 && blue >= 2 {
            BLUE
        } else {
            // red ≥ 2 and blue ≥ 2 was ruled out in step 1; degree ≥ 3
            // rules out red + blue < 3.
            return Err(Error::Internal(format!(
                "unclassified forced-color case at vertex {v}: {red} red, {blue} blue"
            )));
        };
        coloring.set(v, forced)?;
    }

    // Step 3: witness marking around each cover vertex, then deletion of
    // unmarked high-degree non-cover vertices.
    let mut marked = vec![false; n];
    for &u in s.members() {
        for color in [RED, BLUE] {
            let mut kept = 0usize;
            // Cover neighbors survive unconditionally, so they fill the
            // quota first; then already-marked vertices; then fresh marks
            // by ascending index.
            for &w in g.neighbors(u) {
                if kept < 2 && s.contains(w) && pre.get(w) == Some(color) {
                    kept += 1;
                }
            }
            for pass in 0..2 {
                for &w in g.neighbors(u) {
                    if kept >= 2 {
                        break;
                    }
                    if s.contains(w) || coloring.get(w) != Some(color) {
                        continue;
                    }
                    if (pass == 0 && marked[w]) || (pass == 1 && !marked[w]) {
                        marked[w] = true;
                        kept += 1;
                    }
                }
            }
        }
    }

    // Step 4: thin the surviving low-degree non-cover vertices to ≤ 3 per
    // exact neighborhood (their neighborhoods lie inside the cover and are
    // unaffected by the deletions).
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        if s.contains(v) || g.degree(v) >= 3 {
            continue;
        }
        let mut key = g.neighbors(v).to_vec();
        key.sort_unstable();
        groups.entry(key).or_default().push(v);
    }
    let mut thinned = vec![false; n];
    for vs in groups.values() {
        for &v in vs.iter().take(3) {
            thinned[v] = true;
        }
    }

    let keep: Vec<usize> = (0..n)
        .filter(|&v| s.contains(v) || marked[v] || thinned[v])
        .collect();
    let (graph, orig_ids) = g.induced(&keep)?;
    let reindex = |old: usize| -> usize {
        orig_ids
            .binary_search(&old)
            .expect("kept vertices appear in the induced map")
    };
    let cover = VertexSet::from_ids(&s.members().iter().map(|&v| reindex(v)).collect::<Vec<_>>())?;
    let marked_ids: Vec<usize> = (0..n).filter(|&v| marked[v]).map(reindex).collect();
    let marked_set = VertexSet::from_ids(&marked_ids)?;
    let mut kernel_coloring = Coloring::new(graph.n(), 2);
    for (new, &old) in orig_ids.iter().enumerate() {
        if s.contains(old) || marked[old] {
            kernel_coloring.set(new, coloring.raw(old))?;
        }
    }
    Ok(ExtensionKernel::Kernel(MarkedGraph {
        graph,
        cover,
        marked: marked_set,
        coloring: Some(kernel_coloring),
        orig_ids,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_subdivided_clique;
    use crate::graph::min_vertex_cover;
    use crate::oracle::{brute_chi_cn, brute_extension_cncf};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SEED: u64 = 42;

    fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn int(p: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(p))
    }

    /// Random graph whose edges all touch {0, .., k−1}, so its minimum
    /// vertex cover has size ≤ k.
    fn random_cover_graph(rng: &mut ChaCha8Rng, n: usize, k: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..k.min(n) {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        from_edges(n, &edges)
    }

    fn two_cncf_colorable(g: &Graph) -> bool {
        brute_chi_cn(g, 2, false).unwrap().is_some()
    }

    #[test]
    fn polynomial_ops_collapse_squares_and_order_terms() {
        let x = Polynomial::variable(0);
        let y = Polynomial::variable(1);

        // (x + 1)² = x² + 2x + 1 collapses to 3x + 1 on {0,1}.
        let p = &(&x + &Polynomial::from_int(1)) * &(&x + &Polynomial::from_int(1));
        assert_eq!(p.degree(), 1);
        assert_eq!(p.eval01(&[true]), int(4));
        assert_eq!(p.eval01(&[false]), int(1));

        // (x + y)² = x + 2xy + y.
        let q = &(&x + &y) * &(&x + &y);
        assert_eq!(q.degree(), 2);
        let terms: Vec<(Vec<usize>, BigRational)> = q
            .terms()
            .map(|(m, c)| (m.to_vec(), c.clone()))
            .collect();
        assert_eq!(
            terms,
            vec![
                (vec![0], int(1)),
                (vec![1], int(1)),
                (vec![0, 1], int(2)),
            ]
        );

        // Graded-lex order: constant, then degree-1 by index, then pairs.
        let mut r = Polynomial::zero();
        r.add_term(vec![0, 1], int(5));
        r.add_term(vec![2], int(3));
        r.add_term(vec![], int(7));
        r.add_term(vec![1, 2], int(2));
        let order: Vec<Vec<usize>> = r.terms().map(|(m, _)| m.to_vec()).collect();
        assert_eq!(order, vec![vec![], vec![2], vec![0, 1], vec![1, 2]]);

        // Cancellation removes terms entirely.
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.degree(), 0);

        // Substitution: 3x + 1 with x ↦ y becomes 3y + 1.
        let s = p.substitute(0, &Polynomial::variable(1));
        assert_eq!(s, &y.scaled(&int(3)) + &Polynomial::from_int(1));
    }

    #[test]
    fn g_eval_interpolation_identities() {
        for n in 3..=20i64 {
            assert_eq!(g_eval(&int(0), n).unwrap(), int(1), "g(0,{n})");
            assert_eq!(g_eval(&int(n - 1), n).unwrap(), int(1), "g(N-1,{n})");
            assert_eq!(g_eval(&int(1), n).unwrap(), int(0), "g(1,{n})");
            assert_eq!(g_eval(&int(n), n).unwrap(), int(0), "g(N,{n})");
        }
        assert_eq!(g_eval(&int(2), 5).unwrap(), rat(1, 5));
        assert!(g_eval(&int(1), 0).is_err());
        assert!(g_eval(&int(1), 2).is_err());

        // The polynomial expansion matches pointwise evaluation.
        let x = &(&Polynomial::variable(0) + &Polynomial::variable(1)) + &Polynomial::variable(2);
        let f = g_poly(&x, 3).unwrap();
        for mask in 0..8u32 {
            let assign = [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0];
            let count = assign.iter().filter(|&&b| b).count() as i64;
            assert_eq!(f.eval01(&assign), g_eval(&int(count), 3).unwrap());
        }
    }

    #[test]
    fn csp_json_round_trip_and_rejections() {
        let mut c1 = Polynomial::zero();
        c1.add_term(vec![0], int(1));
        c1.add_term(vec![], int(-1));
        let mut c2 = Polynomial::zero();
        c2.add_term(vec![0, 1], rat(-7, 3));
        c2.add_term(vec![1], rat(1, 2));
        let csp = CspInstance::new(
            vec!["r_1".into(), "b_1".into()],
            vec![c1, c2, Polynomial::zero()],
        )
        .unwrap();
        let text = csp.serialize();
        let back = CspInstance::parse(&text).unwrap();
        assert_eq!(back, csp);
        assert_eq!(back.serialize(), text);

        // Hand-written documents may repeat monomials; they merge.
        let merged = CspInstance::parse(
            r#"{"variables": ["x"], "constraints": [[
                {"coeff": "1/2", "vars": ["x", "x"]},
                {"coeff": "1/2", "vars": ["x"]},
                {"coeff": "-1/1", "vars": []}
            ]]}"#,
        )
        .unwrap();
        let mut expect = Polynomial::zero();
        expect.add_term(vec![0], int(1));
        expect.add_term(vec![], int(-1));
        assert_eq!(merged.constraints(), &[expect]);

        // Malformed documents are rejected.
        assert!(CspInstance::parse("{").is_err());
        assert!(CspInstance::parse(r#"{"variables": ["x"]}"#).is_err());
        assert!(CspInstance::parse(
            r#"{"variables": ["x"], "constraints": [], "extra": 1}"#
        )
        .is_err());
        assert!(CspInstance::parse(
            r#"{"variables": ["x"], "constraints": [[{"coeff": "1/1", "vars": ["y"]}]]}"#
        )
        .is_err());
        assert!(CspInstance::parse(
            r#"{"variables": ["x"], "constraints": [[{"coeff": "1/0", "vars": ["x"]}]]}"#
        )
        .is_err());
        assert!(CspInstance::parse(
            r#"{"variables": ["x"], "constraints": [[{"coeff": "0/1", "vars": ["x"]}]]}"#
        )
        .is_err());
        assert!(CspInstance::parse(
            r#"{"variables": ["x"], "constraints": [[{"coeff": "1.5/1", "vars": ["x"]}]]}"#
        )
        .is_err());
        assert!(CspInstance::parse(
            r#"{"variables": ["x", "x"], "constraints": []}"#
        )
        .is_err());
        assert!(CspInstance::parse(
            r#"{"variables": ["x"], "constraints": [[{"coeff": "1/1", "vars": ["x"], "pow": 2}]]}"#
        )
        .is_err());
        assert!(CspInstance::new(vec!["x".into()], vec![Polynomial::variable(1)]).is_err());
    }

    #[test]
    fn preprocess_thins_twin_leaves_and_keeps_high_degree() {
        // Star on 6 vertices, cover = {center}: the 5 leaves share the
        // neighborhood {center}; 3 survive, 2 are deleted.
        let star = from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let s = VertexSet::from_ids(&[0]).unwrap();
        let mg = preprocess_mark(&star, &s).unwrap();
        assert_eq!(mg.graph.n(), 4);
        assert_eq!(mg.cover.members(), &[0]);
        assert_eq!(mg.marked.members(), &[1, 2, 3]);
        assert_eq!(mg.orig_ids, vec![0, 1, 2, 3]);
        assert_eq!(mg.graph.m(), 3);

        // Non-cover vertices of degree ≥ 3 are kept unmarked; nothing is
        // deleted when every non-cover vertex has degree ≥ 3.
        let g = from_edges(
            5,
            &[
                (0, 1),
                (1, 2),
                (0, 3),
                (1, 3),
                (2, 3),
                (0, 4),
                (1, 4),
                (2, 4),
            ],
        );
        let s = VertexSet::from_ids(&[0, 1, 2]).unwrap();
        let mg = preprocess_mark(&g, &s).unwrap();
        assert_eq!(mg.graph.n(), 5);
        assert!(mg.marked.is_empty());
        assert_eq!(mg.graph, g);

        // Marked-count bound: ≤ 3(k + k²).
        let k = s.len();
        assert!(mg.marked.len() <= 3 * (k + k * k));

        // A non-cover pair with an edge between them is rejected.
        let bad = from_edges(3, &[(0, 1), (1, 2)]);
        let not_cover = VertexSet::from_ids(&[0]).unwrap();
        assert!(preprocess_mark(&bad, &not_cover).is_err());
        let out_of_range = VertexSet::from_ids(&[7]).unwrap();
        assert!(preprocess_mark(&bad, &out_of_range).is_err());
    }

    #[test]
    fn preprocess_preserves_two_color_solvability() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut shrunk = 0usize;
        for trial in 0..100 {
            let n = 4 + rng.gen_range(0..9);
            let k = 1 + rng.gen_range(0..5);
            let g = random_cover_graph(&mut rng, n, k, 2.5 / n as f64);
            let s = min_vertex_cover(&g).unwrap();
            assert!(s.len() <= k);
            let mg = preprocess_mark(&g, &s).unwrap();
            // Every non-cover unmarked vertex has degree ≥ 3 afterwards.
            for v in 0..mg.graph.n() {
                if !mg.cover.contains(v) && !mg.marked.contains(v) {
                    assert!(mg.graph.degree(v) >= 3);
                }
            }
            if mg.graph.n() < n {
                shrunk += 1;
            }
            assert_eq!(
                two_cncf_colorable(&mg.graph),
                two_cncf_colorable(&g),
                "trial {trial}: preprocessing changed the answer"
            );
        }
        assert!(shrunk > 10, "suite should exercise deletions, got {shrunk}");
    }

    #[test]
    fn degree_window_polynomial_has_the_right_roots() {
        // Five cover vertices 0..5 and one non-cover vertex adjacent to
        // all of them: the degree-window constraint for it is
        // x(x−1)(x−4)(x−5) over x = Σ r_u.
        let edges: Vec<(usize, usize)> = (0..5).map(|u| (u, 5)).collect();
        let g = from_edges(6, &edges);
        let s = VertexSet::from_ids(&[0, 1, 2, 3, 4]).unwrap();
        let mg = preprocess_mark(&g, &s).unwrap();
        assert_eq!(mg.graph.n(), 6);
        let csp = build_csp(&mg);
        // Blocks: 6 choice + 6 conflict-freeness + 1 degree-window.
        assert_eq!(csp.constraints().len(), 13);
        let window = &csp.constraints()[12];

        let mut x = Polynomial::zero();
        for u in 0..5 {
            x = &x + &Polynomial::variable(2 * u);
        }
        let direct = &(&x * &(&x - &Polynomial::from_int(1)))
            * &(&(&x - &Polynomial::from_int(4)) * &(&x - &Polynomial::from_int(5)));
        assert_eq!(window, &direct);
        assert_eq!(window.degree(), 4);

        // Value check at red counts 0, 1, 2, 4, 5.
        let eval_at = |reds: usize| {
            let mut assign = vec![false; 12];
            for u in 0..reds {
                assign[2 * u] = true;
            }
            window.eval01(&assign)
        };
        assert_eq!(eval_at(0), int(0));
        assert_eq!(eval_at(1), int(0));
        assert_eq!(eval_at(4), int(0));
        assert_eq!(eval_at(5), int(0));
        assert_eq!(eval_at(2), int(2 * 1 * 2 * 3));
    }

    #[test]
    fn csp_and_kernel_match_brute_coloring_exhaustively() {
        // Every graph on up to 4 vertices, via edge-mask enumeration.
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            for mask in 0..(1u32 << pairs.len()) {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                let g = from_edges(n, &edges);
                let s = min_vertex_cover(&g).unwrap();
                let expected = two_cncf_colorable(&g);
                let mg = preprocess_mark(&g, &s).unwrap();
                let built = build_csp(&mg);
                assert_eq!(
                    solve_csp_brute(&built).unwrap(),
                    expected,
                    "raw csp disagrees on n={n} mask={mask}"
                );
                let kernel = kernelize_2cncf(&g, &s).unwrap();
                assert_eq!(
                    solve_csp_brute(&kernel).unwrap(),
                    expected,
                    "kernel disagrees on n={n} mask={mask}"
                );
            }
        }
    }

    #[test]
    fn substitution_is_identity_without_eliminated_vertices() {
        let triangle = from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let s = VertexSet::from_ids(&[0, 1, 2]).unwrap();
        let mg = preprocess_mark(&triangle, &s).unwrap();
        let csp = build_csp(&mg);
        let after = substitute_outside_vars(&csp, &mg).unwrap();
        assert_eq!(after, csp);

        // Mismatched instance and marked graph is rejected.
        let other = CspInstance::new(vec!["x".into()], vec![]).unwrap();
        assert!(substitute_outside_vars(&other, &mg).is_err());
    }

    #[test]
    fn substitution_eliminates_high_degree_vertices_and_bounds_degree() {
        // Cover {0,1,2,3}, one eliminated vertex adjacent to all of it.
        let g = from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]);
        let s = VertexSet::from_ids(&[0, 1, 2, 3]).unwrap();
        let mg = preprocess_mark(&g, &s).unwrap();
        let csp = build_csp(&mg);
        let after = substitute_outside_vars(&csp, &mg).unwrap();
        assert_eq!(after.variables().len(), 8);
        assert_eq!(
            after.variables()[0..2],
            ["r_1".to_string(), "b_1".to_string()]
        );
        for c in after.constraints() {
            assert!(c.degree() <= 6, "degree {} exceeds 6", c.degree());
        }
        // The eliminated vertex's choice constraint vanished: 5 choice
        // constraints → 4, conflict-freeness 5, degree-window 1.
        assert_eq!(after.constraints().len(), 4 + 5 + 1);
        assert_eq!(
            solve_csp_brute(&after).unwrap(),
            solve_csp_brute(&csp).unwrap()
        );

        // At degree 3 the window x(x−1)(x−2)(x−3) admits every red count
        // in 0..=3, so its multilinear form over three variables is
        // already the zero polynomial and elimination drops it too.
        let g3 = from_edges(4, &[(0, 3), (1, 3), (2, 3)]);
        let s3 = VertexSet::from_ids(&[0, 1, 2]).unwrap();
        let mg3 = preprocess_mark(&g3, &s3).unwrap();
        let csp3 = build_csp(&mg3);
        assert_eq!(csp3.constraints().len(), 9);
        assert!(csp3.constraints()[8].is_zero());
        let after3 = substitute_outside_vars(&csp3, &mg3).unwrap();
        assert_eq!(after3.constraints().len(), 3 + 4);
        assert_eq!(
            solve_csp_brute(&after3).unwrap(),
            solve_csp_brute(&csp3).unwrap()
        );
    }

    #[test]
    fn substitution_preserves_brute_satisfiability() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for trial in 0..100 {
            let n = 4 + rng.gen_range(0..5);
            let k = 1 + rng.gen_range(0..5);
            let g = random_cover_graph(&mut rng, n, k, 3.0 / n as f64);
            let s = min_vertex_cover(&g).unwrap();
            let mg = preprocess_mark(&g, &s).unwrap();
            let csp = build_csp(&mg);
            let after = substitute_outside_vars(&csp, &mg).unwrap();
            let full = solve_csp_brute(&csp).unwrap();
            let shrunk = solve_csp_brute(&after).unwrap();
            let graph_answer = two_cncf_colorable(&g);
            assert_eq!(full, graph_answer, "trial {trial}: raw csp wrong");
            assert_eq!(shrunk, graph_answer, "trial {trial}: substituted csp wrong");
        }
    }

    #[test]
    fn reduction_keeps_an_independent_subset_in_order() {
        let x = Polynomial::variable(0);
        let y = Polynomial::variable(1);
        let xm1 = &x - &Polynomial::from_int(1);
        let twice = xm1.scaled(&int(2));
        let xy1 = &(&x + &y) - &Polynomial::from_int(1);

        // Duplicate constraints: one survives.
        let dup = CspInstance::new(
            vec!["x".into(), "y".into()],
            vec![xm1.clone(), xm1.clone()],
        )
        .unwrap();
        let r = reduce_constraints(&dup, 1).unwrap();
        assert_eq!(r.constraints(), &[xm1.clone()]);

        // {x−1, 2x−2, x+y−1} has rank 2; the kept subset preserves input
        // order and object identity.
        let csp = CspInstance::new(
            vec!["x".into(), "y".into()],
            vec![xm1.clone(), twice, xy1.clone()],
        )
        .unwrap();
        let r = reduce_constraints(&csp, 2).unwrap();
        assert_eq!(r.constraints(), &[xm1.clone(), xy1.clone()]);
        assert_eq!(r.variables(), csp.variables());

        // Reducing again changes nothing (the output is already a basis).
        let rr = reduce_constraints(&r, 2).unwrap();
        assert_eq!(rr, r);

        // Degree bound violations are rejected.
        let cubic = &(&x * &y) * &Polynomial::variable(2);
        let bad = CspInstance::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![cubic],
        )
        .unwrap();
        assert!(reduce_constraints(&bad, 2).is_err());
    }

    #[test]
    fn reduction_preserves_satisfiability_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for trial in 0..100 {
            let nv = 2 + rng.gen_range(0..7);
            let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let nc = 3 + rng.gen_range(0..10);
            let mut constraints = Vec::new();
            for _ in 0..nc {
                let mut p = Polynomial::zero();
                for _ in 0..(1 + rng.gen_range(0..4)) {
                    let deg = rng.gen_range(0..=3.min(nv));
                    let mut vars = Vec::new();
                    for _ in 0..deg {
                        vars.push(rng.gen_range(0..nv));
                    }
                    let c = loop {
                        let c = rng.gen_range(-3i64..=3);
                        if c != 0 {
                            break c;
                        }
                    };
                    p.add_term(vars, int(c));
                }
                constraints.push(p);
            }
            let csp = CspInstance::new(names, constraints).unwrap();
            let reduced = reduce_constraints(&csp, 3).unwrap();
            assert!(reduced.constraints().len() <= csp.constraints().len());
            assert!(reduced.constraints().len() <= nv.pow(3) + 1);
            // Kept constraints appear in the input, in order.
            let mut cursor = 0usize;
            for kept in reduced.constraints() {
                while cursor < csp.constraints().len() && &csp.constraints()[cursor] != kept {
                    cursor += 1;
                }
                assert!(cursor < csp.constraints().len(), "kept constraint not in input");
                cursor += 1;
            }
            assert_eq!(
                solve_csp_brute(&reduced).unwrap(),
                solve_csp_brute(&csp).unwrap(),
                "trial {trial}: reduction changed satisfiability"
            );
        }
    }

    #[test]
    fn kernel_pipeline_small_goldens() {
        // K_2 with one endpoint as cover: satisfiable (color them apart).
        let k2 = from_edges(2, &[(0, 1)]);
        let s = VertexSet::from_ids(&[0]).unwrap();
        let (csp, audit) = kernelize_2cncf_audited(&k2, &s).unwrap();
        assert!(solve_csp_brute(&csp).unwrap());
        assert_eq!(audit.part_cover, 1);
        assert!(two_cncf_colorable(&k2));

        // Triangle.
        let tri = from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let s = min_vertex_cover(&tri).unwrap();
        let kernel = kernelize_2cncf(&tri, &s).unwrap();
        assert_eq!(solve_csp_brute(&kernel).unwrap(), two_cncf_colorable(&tri));

        // Subdivided K_4.
        let sub4 = gen_subdivided_clique(4).unwrap();
        let s = min_vertex_cover(&sub4).unwrap();
        let (kernel, audit) = kernelize_2cncf_audited(&sub4, &s).unwrap();
        let k = s.len();
        assert_eq!(audit.part_cover, k);
        assert!(audit.part1_after <= audit.variable_count.pow(2) + 1);
        assert!(audit.part2_after <= (2 * k).pow(6) + 1);
        assert!(audit.part1_after <= audit.part1_before);
        assert!(audit.part2_after <= audit.part2_before);
        assert_eq!(
            solve_csp_brute(&kernel).unwrap(),
            two_cncf_colorable(&sub4)
        );
    }

    #[test]
    fn kernel_pipeline_agrees_with_brute_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut yes = 0usize;
        let mut no = 0usize;
        for trial in 0..100 {
            let n = 4 + rng.gen_range(0..7);
            let k = 1 + rng.gen_range(0..5);
            let g = random_cover_graph(&mut rng, n, k, 3.0 / n as f64);
            let s = min_vertex_cover(&g).unwrap();
            let (kernel, audit) = kernelize_2cncf_audited(&g, &s).unwrap();
            assert_eq!(audit.part_cover, s.len());
            assert!(audit.part1_after <= audit.variable_count.pow(2) + 1);
            assert!(audit.part2_after <= (2 * s.len()).pow(6) + 1);
            let got = solve_csp_brute(&kernel).unwrap();
            let expected = two_cncf_colorable(&g);
            assert_eq!(got, expected, "trial {trial}");
            if expected {
                yes += 1;
            } else {
                no += 1;
            }
        }
        assert!(yes > 0 && no > 0, "suite should mix answers: {yes} yes, {no} no");
    }

    #[test]
    fn csp_brute_goldens_and_guard() {
        let empty = CspInstance::new(vec!["x".into()], vec![]).unwrap();
        assert!(solve_csp_brute(&empty).unwrap());

        let falsum = CspInstance::new(vec![], vec![Polynomial::from_int(1)]).unwrap();
        assert!(!solve_csp_brute(&falsum).unwrap());

        let xy = &(&Polynomial::variable(0) * &Polynomial::variable(1))
            - &Polynomial::from_int(1);
        let sat = CspInstance::new(vec!["x".into(), "y".into()], vec![xy]).unwrap();
        assert!(solve_csp_brute(&sat).unwrap());

        let names: Vec<String> = (0..25).map(|i| format!("v{i}")).collect();
        let wide = CspInstance::new(names, vec![]).unwrap();
        let err = solve_csp_brute(&wide).unwrap_err();
        assert!(err.is_guard());
    }

    #[test]
    fn extension_kernel_obstruction_and_identity() {
        // A vertex with two red and two blue cover neighbors: no coloring
        // of it can leave a unique color in its closed neighborhood.
        let g = from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]);
        let s = VertexSet::from_ids(&[0, 1, 2, 3]).unwrap();
        let mut pre = Coloring::new(5, 2);
        pre.set(0, RED).unwrap();
        pre.set(1, RED).unwrap();
        pre.set(2, BLUE).unwrap();
        pre.set(3, BLUE).unwrap();
        match kernelize_extension(&g, &s, &pre).unwrap() {
            ExtensionKernel::TrivialNo => {}
            ExtensionKernel::Kernel(_) => panic!("expected a trivial no"),
        }
        assert!(!brute_extension_cncf(&g, &s, &pre, 2).unwrap());

        // All non-cover vertices have degree ≤ 2 and distinct
        // neighborhoods: the kernel is the input itself.
        let path = from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let s = VertexSet::from_ids(&[1, 2]).unwrap();
        let mut pre = Coloring::new(4, 2);
        pre.set(1, RED).unwrap();
        pre.set(2, BLUE).unwrap();
        match kernelize_extension(&path, &s, &pre).unwrap() {
            ExtensionKernel::Kernel(mg) => {
                assert_eq!(mg.graph, path);
                assert_eq!(mg.cover, s);
                assert!(mg.marked.is_empty());
                assert_eq!(mg.orig_ids, vec![0, 1, 2, 3]);
                assert_eq!(mg.coloring.as_ref().unwrap(), &pre);
            }
            ExtensionKernel::TrivialNo => panic!("expected a kernel"),
        }
    }

    #[test]
    fn extension_kernel_validation_errors() {
        let path = from_edges(3, &[(0, 1), (1, 2)]);
        let cover = VertexSet::from_ids(&[1]).unwrap();
        let mut pre = Coloring::new(3, 2);
        pre.set(1, RED).unwrap();

        // Not a cover.
        let not_cover = VertexSet::from_ids(&[0]).unwrap();
        let mut bad_pre = Coloring::new(3, 2);
        bad_pre.set(0, RED).unwrap();
        assert!(kernelize_extension(&path, &not_cover, &bad_pre).is_err());

        // Wrong palette size.
        let mut q3 = Coloring::new(3, 3);
        q3.set(1, RED).unwrap();
        assert!(kernelize_extension(&path, &cover, &q3).is_err());

        // Precoloring must color exactly the cover.
        let empty_pre = Coloring::new(3, 2);
        assert!(kernelize_extension(&path, &cover, &empty_pre).is_err());
        let mut extra = pre.clone();
        extra.set(0, BLUE).unwrap();
        assert!(kernelize_extension(&path, &cover, &extra).is_err());

        // Wrong coloring length.
        let short = Coloring::new(2, 2);
        assert!(kernelize_extension(&path, &cover, &short).is_err());
    }

    #[test]
    fn extension_kernel_agrees_with_brute_and_stays_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut yes = 0usize;
        let mut no = 0usize;
        let mut trivial = 0usize;
        for trial in 0..100 {
            let n = 5 + rng.gen_range(0..10);
            let kmax = 1 + rng.gen_range(0..6);
            let g = random_cover_graph(&mut rng, n, kmax, 3.0 / n as f64);
            let s = min_vertex_cover(&g).unwrap();
            let mut pre = Coloring::new(n, 2);
            for &v in s.members() {
                pre.set(v, rng.gen_range(RED..=BLUE)).unwrap();
            }
            let expected = brute_extension_cncf(&g, &s, &pre, 2).unwrap();
            let k = s.len();
            match kernelize_extension(&g, &s, &pre).unwrap() {
                ExtensionKernel::TrivialNo => {
                    assert!(!expected, "trial {trial}: trivial no on a yes instance");
                    trivial += 1;
                }
                ExtensionKernel::Kernel(mg) => {
                    let new_cover_ids: Vec<usize> = mg
                        .cover
                        .members()
                        .iter()
                        .chain(mg.marked.members())
                        .copied()
                        .collect();
                    let new_cover = VertexSet::from_ids(&new_cover_ids).unwrap();
                    let coloring = mg.coloring.as_ref().unwrap();
                    let got =
                        brute_extension_cncf(&mg.graph, &new_cover, coloring, 2).unwrap();
                    assert_eq!(got, expected, "trial {trial}");
                    // Size accounting: the new cover stays within 3k and
                    // the kernel within the quadratic vertex budget. An
                    // empty cover (edgeless graph) is degenerate: nothing
                    // is precolored and twin thinning keeps at most the 3
                    // representatives of the empty neighborhood class.
                    assert!(
                        new_cover.len() <= 3 * k,
                        "trial {trial}: cover grew to {} from k = {k}",
                        new_cover.len()
                    );
                    let budget = if k == 0 { 3 } else { 9 * k * k + 3 * k + k };
                    assert!(
                        mg.graph.n() <= budget,
                        "trial {trial}: kernel has {} vertices at k = {k}",
                        mg.graph.n()
                    );
                    // Non-cover unmarked vertices all have degree ≤ 2.
                    for v in 0..mg.graph.n() {
                        if !new_cover.contains(v) {
                            assert!(mg.graph.degree(v) <= 2);
                        }
                    }
                }
            }
            if expected {
                yes += 1;
            } else {
                no += 1;
            }
        }
        assert!(yes > 0 && no > 0, "suite should mix answers: {yes} yes, {no} no");
        let _ = trivial;
    }
}
