//! The power-norm index `p_A = sup{k ≥ 1 : ‖A^k‖ = ‖A‖^k}` and the nilpotency
//! index `n_A = sup{k ≥ 1 : A^k ≠ 0}` (0 for the zero matrix), with the
//! predicates built on them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matkernel::{hermitian_rank, operator_norm, spectral_radius, ComplexMatrix, ToleranceConfig};

/// A value in `{0, 1, 2, …} ∪ {∞}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexValue {
    Finite(usize),
    Infinite,
}

impl IndexValue {
    pub fn is_infinite(self) -> bool {
        matches!(self, IndexValue::Infinite)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            IndexValue::Finite(k) => Some(k),
            IndexValue::Infinite => None,
        }
    }
}

impl PartialOrd for IndexValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IndexValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (IndexValue::Finite(a), IndexValue::Finite(b)) => a.cmp(b),
            (IndexValue::Finite(_), IndexValue::Infinite) => Ordering::Less,
            (IndexValue::Infinite, IndexValue::Finite(_)) => Ordering::Greater,
            (IndexValue::Infinite, IndexValue::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexValue::Finite(k) => write!(f, "{k}"),
            IndexValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Serialized as a JSON integer, or the string `"inf"`.
impl Serialize for IndexValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            IndexValue::Finite(k) => s.serialize_u64(*k as u64),
            IndexValue::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for IndexValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(k) => Ok(IndexValue::Finite(k as usize)),
            Raw::Str(s) if s == "inf" => Ok(IndexValue::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("invalid index value {s:?}"))),
        }
    }
}

/// `p_A`, decided on `Â = A/‖A‖` with relative slack `eps_norm`.
///
/// Since `‖Â^k‖` is non-increasing, the scan stops at the first power whose
/// norm drops below `1 − eps_norm`; surviving `k = n` means `p_A = ∞`.
pub fn power_norm_index(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<IndexValue> {
    let n = a.ensure_square("power_norm_index")?;
    let norm = operator_norm(a, cfg);
    if norm == 0.0 {
        return Err(Error::Domain("power norm index is undefined for the zero matrix".into()));
    }
    let unit = a.scale_real(1.0 / norm);
    let mut power = unit.clone();
    for k in 1..=n {
        if operator_norm(&power, cfg) < 1.0 - cfg.eps_norm {
            return Ok(IndexValue::Finite(k - 1));
        }
        power = &power * &unit;
    }
    Ok(IndexValue::Infinite)
}

/// `n_A` from dense powers.
///
/// `A^k` counts as zero when `‖A^k‖_F ≤ eps_struct · ‖|A|^k‖_F`, where `|A|` is
/// the entrywise modulus. Rounding in a computed `A^k` is bounded entrywise by
/// a small multiple of `|A|^k`, and for nonnegative `A` the two norms agree,
/// so the test is exact on nonnegative input and invariant under `A ↦ cA`.
pub fn nilpotency_index_dense(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<IndexValue> {
    let n = a.ensure_square("nilpotency_index_dense")?;
    let modulus = a.abs();
    let mut power = a.clone();
    let mut bound = modulus.clone();
    for k in 1..=n {
        let p = power.frobenius_norm();
        if p == 0.0 || p <= cfg.eps_struct * bound.frobenius_norm() {
            return Ok(IndexValue::Finite(k - 1));
        }
        power = &power * a;
        bound = &bound * &modulus;
    }
    Ok(IndexValue::Infinite)
}

/// Directed support graph of a nonnegative matrix: edge `i → j` iff `b_ij > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportGraph {
    n: usize,
    adj: Vec<bool>,
}

impl SupportGraph {
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut adj = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                adj[i * n + j] = edge(i, j);
            }
        }
        Self { n, adj }
    }

    /// Rejects any negative or non-real entry.
    pub fn from_nonnegative(b: &ComplexMatrix) -> Result<Self> {
        let n = b.ensure_square("support graph")?;
        for i in 0..n {
            for j in 0..n {
                let z = b[(i, j)];
                if z.im != 0.0 {
                    return Err(Error::Domain(format!("entry ({}, {}) is not real: {z}", i + 1, j + 1)));
                }
                if z.re < 0.0 {
                    return Err(Error::Domain(format!("entry ({}, {}) is negative: {}", i + 1, j + 1, z.re)));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| b[(i, j)].re > 0.0))
    }

    /// Floating-point variant: entries within `eps_struct · max_entry` of the
    /// nonnegative reals are accepted, and edges need `b_ij` above that cutoff.
    pub fn from_nonnegative_approx(b: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        let n = b.ensure_square("support graph")?;
        let cutoff = cfg.eps_struct * b.max_abs();
        for i in 0..n {
            for j in 0..n {
                let z = b[(i, j)];
                if z.im.abs() > cutoff {
                    return Err(Error::Domain(format!("entry ({}, {}) is not real: {z}", i + 1, j + 1)));
                }
                if z.re < -cutoff {
                    return Err(Error::Domain(format!("entry ({}, {}) is negative: {}", i + 1, j + 1, z.re)));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| b[(i, j)].re > cutoff))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.has_edge(i, j))
    }

    pub fn has_self_loop(&self) -> bool {
        (0..self.n).any(|i| self.has_edge(i, i))
    }

    /// Connectivity of the undirected graph with edges `{i, j}`, `i ≠ j`.
    pub fn is_weakly_connected(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && i != j && (self.has_edge(i, j) || self.has_edge(j, i)) {
                    seen[j] = true;
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == n
    }

    /// Strongly connected components (Tarjan), in reverse topological order.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        struct State {
            index: Vec<Option<usize>>,
            low: Vec<usize>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            next: usize,
            out: Vec<Vec<usize>>,
        }
        fn visit(g: &SupportGraph, v: usize, st: &mut State) {
            st.index[v] = Some(st.next);
            st.low[v] = st.next;
            st.next += 1;
            st.stack.push(v);
            st.on_stack[v] = true;
            for w in g.successors(v) {
                match st.index[w] {
                    None => {
                        visit(g, w, st);
                        st.low[v] = st.low[v].min(st.low[w]);
                    }
                    Some(iw) if st.on_stack[w] => st.low[v] = st.low[v].min(iw),
                    Some(_) => {}
                }
            }
            if Some(st.low[v]) == st.index[v] {
                let mut comp = Vec::new();
                while let Some(w) = st.stack.pop() {
                    st.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                st.out.push(comp);
            }
        }
        let n = self.n;
        let mut st = State {
            index: vec![None; n],
            low: vec![0; n],
            on_stack: vec![false; n],
            stack: Vec::new(),
            next: 0,
            out: Vec::new(),
        };
        for v in 0..n {
            if st.index[v].is_none() {
                visit(self, v, &mut st);
            }
        }
        st.out
    }

    /// True iff some directed cycle exists (self-loops included).
    pub fn has_cycle(&self) -> bool {
        self.has_self_loop() || self.strong_components().iter().any(|c| c.len() > 1)
    }

    /// Longest directed path length in edges, or `None` when a cycle exists.
    pub fn longest_path(&self) -> Option<usize> {
        if self.has_cycle() {
            return None;
        }
        // Tarjan emits sinks first, so one pass in that order suffices.
        let mut memo = vec![0usize; self.n];
        for comp in self.strong_components() {
            let v = comp[0];
            memo[v] = self.successors(v).map(|w| memo[w] + 1).max().unwrap_or(0);
        }
        Some(memo.into_iter().max().unwrap_or(0))
    }

    /// `n_B` of any nonnegative matrix with this support pattern.
    pub fn nilpotency_index(&self) -> IndexValue {
        match self.longest_path() {
            Some(k) => IndexValue::Finite(k),
            None => IndexValue::Infinite,
        }
    }
}

/// `n_B` for nonnegative `B` from its digraph: `∞` iff a directed cycle
/// exists, otherwise the longest path length. No floating tolerance.
pub fn nilpotency_index_graph(b: &ComplexMatrix) -> Result<IndexValue> {
    Ok(SupportGraph::from_nonnegative(b)?.nilpotency_index())
}

/// For `‖A‖ = 1`: `A` has a unitary part iff `ρ(A) = 1`.
pub fn has_unitary_part(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    a.ensure_square("has_unitary_part")?;
    let norm = operator_norm(a, cfg);
    if (norm - 1.0).abs() > cfg.eps_norm {
        return Err(Error::Contract(format!(
            "unitary-part detection needs ‖A‖ = 1, got {norm}; normalize first"
        )));
    }
    Ok(spectral_radius(a, cfg)? >= 1.0 - cfg.eps_norm)
}

/// Contraction with spectrum in the open unit disc and `rank(I − A*A) = 1`.
pub fn is_class_sn(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    let n = a.ensure_square("is_class_sn")?;
    if operator_norm(a, cfg) > 1.0 + cfg.eps_norm {
        return Ok(false);
    }
    if spectral_radius(a, cfg)? >= 1.0 - cfg.eps_norm {
        return Ok(false);
    }
    let defect = &ComplexMatrix::identity(n) - &(&a.adjoint() * a);
    Ok(hermitian_rank(&defect, cfg)? == 1)
}
