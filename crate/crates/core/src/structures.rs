//! Named matrix families, the Halmos unitary dilation, irreducibility of
//! symmetric nonnegative matrices, and block-shift detection.

use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::indices::SupportGraph;
use crate::matkernel::{operator_norm, psd_sqrt, real_part, ComplexMatrix, ToleranceConfig, C64, ONE, ZERO};

/// `J_n`: ones on the superdiagonal.
pub fn jordan_block(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Domain("Jordan block needs n ≥ 1".into()));
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| if j == i + 1 { ONE } else { ZERO }))
}

/// Companion matrix of `z^n + a_1 z^{n−1} + … + a_n`: superdiagonal ones and
/// last row `−a_n … −a_1`. `coeffs[j]` is `a_{j+1}`.
pub fn companion(coeffs: &[C64]) -> Result<ComplexMatrix> {
    let n = coeffs.len();
    if n < 2 {
        return Err(Error::Domain(format!("companion matrix needs n ≥ 2 coefficients, got {n}")));
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        if i == n - 1 {
            -coeffs[n - 1 - j]
        } else if j == i + 1 {
            ONE
        } else {
            ZERO
        }
    }))
}

/// Block-shift matrix with `blocks[j]` on the first block superdiagonal.
pub fn block_shift(blocks: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let sizes = chain_sizes(blocks)?;
    let n: usize = sizes.iter().sum();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut offset = 0;
    for (j, block) in blocks.iter().enumerate() {
        out.set_block(offset, offset + sizes[j], block);
        offset += sizes[j];
    }
    Ok(out)
}

fn chain_sizes(blocks: &[ComplexMatrix]) -> Result<Vec<usize>> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::Dimension("block shift needs at least one block".into()))?;
    let mut sizes = vec![first.rows()];
    for (j, block) in blocks.iter().enumerate() {
        if block.rows() != *sizes.last().unwrap() {
            return Err(Error::Dimension(format!(
                "block {} has {} rows but block {} has {} columns",
                j + 1,
                block.rows(),
                j,
                sizes.last().unwrap()
            )));
        }
        sizes.push(block.cols());
    }
    Ok(sizes)
}

/// Upper-triangular `S_n` matrix with eigenvalues `lambdas` (all in the open
/// unit disc): `a_ij = sqrt(1−|λ_i|²) sqrt(1−|λ_j|²) ∏_{i<k<j} (−conj λ_k)`.
pub fn sn_matrix(lambdas: &[C64]) -> Result<ComplexMatrix> {
    let n = lambdas.len();
    if n == 0 {
        return Err(Error::Domain("S_n matrix needs at least one eigenvalue".into()));
    }
    if let Some(z) = lambdas.iter().find(|z| z.norm() >= 1.0) {
        return Err(Error::Domain(format!("eigenvalue {z} is not in the open unit disc")));
    }
    let defect: Vec<f64> = lambdas.iter().map(|z| (1.0 - z.norm_sqr()).sqrt()).collect();
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = lambdas[i];
        let mut prod = ONE;
        for j in i + 1..n {
            a[(i, j)] = prod * (defect[i] * defect[j]);
            prod *= -lambdas[j].conj();
        }
    }
    Ok(a)
}

/// `U = [[A, (I−AA*)^{1/2}], [(I−A*A)^{1/2}, −A*]]` for a contraction `A`.
pub fn halmos_dilation(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let n = a.ensure_square("halmos_dilation")?;
    let norm = operator_norm(a, cfg);
    if norm > 1.0 + cfg.eps_norm {
        return Err(Error::Contract(format!("dilation needs a contraction, got ‖A‖ = {norm}")));
    }
    let id = ComplexMatrix::identity(n);
    let adj = a.adjoint();
    let top = psd_sqrt(&(&id - &(a * &adj)), cfg)?;
    let bottom = psd_sqrt(&(&id - &(&adj * a)), cfg)?;
    let mut u = ComplexMatrix::zeros(2 * n, 2 * n);
    u.set_block(0, 0, a);
    u.set_block(0, n, &top);
    u.set_block(n, 0, &bottom);
    u.set_block(n, n, &adj.scale_real(-1.0));
    Ok(u)
}

/// Connectivity test for a real symmetric nonnegative `H`; the `1×1` zero
/// matrix counts as reducible.
pub fn is_irreducible_sym_nonneg(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<bool> {
    let n = h.ensure_square("is_irreducible_sym_nonneg")?;
    let cutoff = cfg.eps_struct * h.max_abs();
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            if z.im.abs() > cutoff || z.re < -cutoff {
                return Err(Error::Domain(format!("entry ({}, {}) = {z} is not a nonnegative real", i + 1, j + 1)));
            }
            if (z - h[(j, i)]).norm() > cutoff {
                return Err(Error::Domain(format!("matrix is not symmetric at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    if n == 1 {
        return Ok(h[(0, 0)].re > 0.0);
    }
    Ok(SupportGraph::from_fn(n, |i, j| h[(i, j)].re > cutoff).is_weakly_connected())
}

/// Permutation matrix with row `i` carrying its one in column `mapping[i]`.
/// Serialized as the 1-based mapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationMatrix {
    mapping: Vec<usize>,
}

impl PermutationMatrix {
    /// `mapping` is 0-based.
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        if n == 0 {
            return Err(Error::Dimension("permutation of order 0".into()));
        }
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::Domain(format!("{mapping:?} is not a permutation of 0..{n}")));
            }
        }
        Ok(Self { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Self { mapping: (0..n).collect() }
    }

    pub fn order(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.mapping.iter().map(|m| m + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.order()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        Self { mapping: inv }
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.order();
        ComplexMatrix::from_fn(n, n, |i, j| if self.mapping[i] == j { ONE } else { ZERO })
    }

    /// `P B Pᵀ`, i.e. entry `(i, j)` is `b[mapping[i], mapping[j]]`.
    pub fn conjugate(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let n = self.order();
        assert_eq!((b.rows(), b.cols()), (n, n), "permutation order mismatch");
        ComplexMatrix::from_fn(n, n, |i, j| b[(self.mapping[i], self.mapping[j])])
    }
}

impl Serialize for PermutationMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// Witness that `P B Pᵀ` is block-shift: `permutation` lists the original
/// indices in level order, `blocks[j]` joins level `j` to level `j+1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockShiftDecomposition {
    pub permutation: PermutationMatrix,
    pub level_sizes: Vec<usize>,
    pub blocks: Vec<ComplexMatrix>,
}

impl BlockShiftDecomposition {
    /// Number of blocks `k`.
    pub fn shift_count(&self) -> usize {
        self.blocks.len()
    }

    /// The block-shift form `P B Pᵀ`.
    pub fn block_form(&self) -> ComplexMatrix {
        block_shift(&self.blocks).expect("blocks are chained by construction")
    }

    /// The source matrix `Pᵀ (block form) P`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.permutation.inverse().conjugate(&self.block_form())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decomposition serializes")
    }
}

/// Level of each vertex under edge constraints `ℓ(j) = ℓ(i) + 1` for every
/// `i → j`, shifted to start at 0. `None` on any conflict (self-loops
/// included), on a disconnected symmetrized graph, or when no edge exists.
pub fn block_shift_levels(g: &SupportGraph) -> Option<Vec<usize>> {
    let n = g.order();
    let mut level: Vec<Option<i64>> = vec![None; n];
    level[0] = Some(0);
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let li = level[i].unwrap();
        for j in 0..n {
            let mut want = Vec::with_capacity(2);
            if g.has_edge(i, j) {
                want.push(li + 1);
            }
            if g.has_edge(j, i) {
                want.push(li - 1);
            }
            for w in want {
                match level[j] {
                    None => {
                        level[j] = Some(w);
                        queue.push_back(j);
                    }
                    Some(lj) if lj != w => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let level: Vec<i64> = level.into_iter().collect::<Option<_>>()?;
    let min = *level.iter().min().unwrap();
    let level: Vec<usize> = level.iter().map(|&l| (l - min) as usize).collect();
    if level.iter().all(|&l| l == 0) {
        return None;
    }
    Some(level)
}

/// Block-shift decomposition of a nonnegative `B` whose real part is
/// irreducible, or `None` when `B` is not permutationally similar to a
/// block-shift matrix.
pub fn detect_block_shift(b: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Option<BlockShiftDecomposition>> {
    let n = b.ensure_square("detect_block_shift")?;
    let graph = SupportGraph::from_nonnegative_approx(b, cfg)?;
    if !is_irreducible_sym_nonneg(&real_part(b)?, cfg)? {
        return Err(Error::Domain(
            "block-shift detection requires re B to be irreducible; the level assignment is not unique otherwise".into(),
        ));
    }
    let Some(level) = block_shift_levels(&graph) else {
        return Ok(None);
    };
    let levels = level.iter().max().unwrap() + 1;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| level[i]);
    let mut level_sizes = vec![0; levels];
    for &l in &level {
        level_sizes[l] += 1;
    }
    let permutation = PermutationMatrix::new(order)?;
    let form = permutation.conjugate(b);
    let mut blocks = Vec::with_capacity(levels - 1);
    let mut offset = 0;
    for j in 0..levels - 1 {
        blocks.push(form.block(offset, offset + level_sizes[j], level_sizes[j], level_sizes[j + 1]));
        offset += level_sizes[j];
    }
    Ok(Some(BlockShiftDecomposition { permutation, level_sizes, blocks }))
}

/// `v_j = sqrt(2/(k+2)) sin(jπ/(k+2))`, `j = 1…k+1`, a unit vector with
/// `⟨J_{k+1} v, v⟩ = cos(π/(k+2))`.
pub fn extremal_vector_jordan(k: usize) -> Result<Vec<C64>> {
    if k == 0 {
        return Err(Error::Domain("extremal vector needs k ≥ 1".into()));
    }
    let h = (k + 2) as f64;
    let c = (2.0 / h).sqrt();
    Ok((1..=k + 1)
        .map(|j| C64::new(c * (j as f64 * std::f64::consts::PI / h).sin(), 0.0))
        .collect())
}

pub const GALLERY_LABELS: [&str; 3] = ["example_3_4", "thm_2_13_counterexample", "prop_2_14_remark"];

/// Default parameter `a` of the `J_2 ⊕ [a]` family.
pub const COUNTEREXAMPLE_DEFAULT_A: f64 = 0.5;

/// `b = sqrt(2/(3+√5))`.
pub fn prop_2_14_scale() -> f64 {
    (2.0 / (3.0 + 5f64.sqrt())).sqrt()
}

/// `A = J_3` and `B = [[0, −√2, 1], [0, 0, 1], [0, 0, √2/2]]`.
pub fn example_3_4() -> (ComplexMatrix, ComplexMatrix) {
    let r2 = 2f64.sqrt();
    let b = ComplexMatrix::from_real_rows(&[&[0.0, -r2, 1.0], &[0.0, 0.0, 1.0], &[0.0, 0.0, r2 / 2.0]])
        .expect("literal matrix");
    (jordan_block(3).unwrap(), b)
}

/// `J_2 ⊕ [a]` for `0 < |a| ≤ 1/2`.
pub fn thm_2_13_counterexample(a: C64) -> Result<ComplexMatrix> {
    if !(a.norm() > 0.0 && a.norm() <= 0.5) {
        return Err(Error::Domain(format!("counterexample needs 0 < |a| ≤ 1/2, got {a}")));
    }
    Ok(jordan_block(2)?.direct_sum(&ComplexMatrix::diagonal(&[a])))
}

/// `A = J_3 ⊕ B` with `B = b·[[0, 1, 1], [0, 0, 1], [0, 0, 0]]`.
pub fn prop_2_14_remark() -> (ComplexMatrix, ComplexMatrix) {
    let b = prop_2_14_scale();
    let small = ComplexMatrix::from_real_rows(&[&[0.0, b, b], &[0.0, 0.0, b], &[0.0, 0.0, 0.0]]).expect("literal matrix");
    (jordan_block(3).unwrap().direct_sum(&small), small)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GalleryEntry {
    pub label: &'static str,
    pub matrices: Vec<(&'static str, ComplexMatrix)>,
}

impl GalleryEntry {
    pub fn get(&self, name: &str) -> Option<&ComplexMatrix> {
        self.matrices.iter().find(|(n, _)| *n == name).map(|(_, m)| m)
    }
}

/// One gallery entry by label; `param` is `a` for the counterexample family.
pub fn gallery_entry(label: &str, param: Option<f64>) -> Result<GalleryEntry> {
    if param.is_some() && label != "thm_2_13_counterexample" {
        return Err(Error::Usage(format!("gallery entry {label} takes no parameter")));
    }
    let matrices = match label {
        "example_3_4" => {
            let (a, b) = example_3_4();
            vec![("A", a), ("B", b)]
        }
        "thm_2_13_counterexample" => {
            let a = param.unwrap_or(COUNTEREXAMPLE_DEFAULT_A);
            vec![("A", thm_2_13_counterexample(C64::new(a, 0.0))?)]
        }
        "prop_2_14_remark" => {
            let (a, b) = prop_2_14_remark();
            vec![("A", a), ("B", b)]
        }
        other => {
            return Err(Error::Usage(format!(
                "unknown gallery label {other:?}; expected one of {}",
                GALLERY_LABELS.join(", ")
            )))
        }
    };
    let label = GALLERY_LABELS.iter().find(|l| **l == label).unwrap();
    Ok(GalleryEntry { label, matrices })
}

pub fn paper_example_gallery() -> Vec<GalleryEntry> {
    GALLERY_LABELS.iter().map(|l| gallery_entry(l, None).expect("known label")).collect()
}
