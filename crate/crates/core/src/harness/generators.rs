//! Seeded random matrix families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::SupportGraph;
use crate::matkernel::{operator_norm, ComplexMatrix, ToleranceConfig, C64, ONE, ZERO};
use crate::numrange::numerical_radius;
use crate::structures::{block_shift, is_irreducible_sym_nonneg, jordan_block, sn_matrix, PermutationMatrix};

const RESAMPLE_CAP: usize = 10_000;

/// Root seed of a deterministic generator stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed(pub u64);

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Seed {
    pub fn value(self) -> u64 {
        self.0
    }

    /// Independent stream for sub-task `index` (e.g. one trial of a suite).
    pub fn derive(self, index: u64) -> Seed {
        Seed(splitmix64(self.0 ^ splitmix64(index)))
    }

    /// Stream keyed by a name, so suites sharing a root seed do not overlap.
    pub fn derive_str(self, tag: &str) -> Seed {
        tag.bytes().fold(self, |s, b| s.derive(b as u64 + 1))
    }

    pub fn rng(self) -> Gen {
        Gen::new(self)
    }
}

/// Random matrix generator over a ChaCha stream.
#[derive(Clone, Debug)]
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: Seed) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed.0) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn phase(&mut self) -> C64 {
        C64::from_polar(1.0, self.uniform(0.0, std::f64::consts::TAU))
    }

    /// Standard complex Gaussian: real and imaginary parts `N(0, 1/2)`.
    pub fn gaussian(&mut self) -> C64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Uniform point of the disc of radius `r`.
    pub fn disc_point(&mut self, r: f64) -> C64 {
        C64::from_polar(r * self.uniform(0.0, 1.0).sqrt(), self.uniform(0.0, std::f64::consts::TAU))
    }

    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.gaussian())
    }

    /// Ginibre matrix scaled to operator norm 1.
    pub fn contraction(&mut self, n: usize) -> ComplexMatrix {
        let cfg = ToleranceConfig::default();
        let g = self.ginibre(n, n);
        let once = g.scale_real(1.0 / operator_norm(&g, &cfg));
        once.scale_real(1.0 / operator_norm(&once, &cfg))
    }

    /// Product of `n` random Householder reflections and a diagonal of phases.
    pub fn unitary(&mut self, n: usize) -> ComplexMatrix {
        let mut u = ComplexMatrix::diagonal(&(0..n).map(|_| self.phase()).collect::<Vec<_>>());
        for _ in 0..n {
            let v: Vec<C64> = (0..n).map(|_| self.gaussian()).collect();
            let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            let h = ComplexMatrix::from_fn(n, n, |i, j| {
                let d = if i == j { ONE } else { ZERO };
                d - v[i] * v[j].conj() * (2.0 / vv)
            });
            u = &u * &h;
        }
        u
    }

    /// `U A U*` for a random unitary `U`.
    pub fn unitary_similarity(&mut self, a: &ComplexMatrix) -> ComplexMatrix {
        let u = self.unitary(a.rows());
        &(&u * a) * &u.adjoint()
    }

    pub fn permutation(&mut self, n: usize) -> PermutationMatrix {
        let mut m: Vec<usize> = (0..n).collect();
        m.shuffle(&mut self.rng);
        PermutationMatrix::new(m).expect("shuffled identity")
    }

    /// Entry in `{0} ∪ [0.1, 1]`, nonzero with probability `density`.
    pub fn nonneg_entry(&mut self, density: f64) -> f64 {
        if self.coin(density) {
            self.uniform(0.1, 1.0)
        } else {
            0.0
        }
    }

    pub fn nonneg_matrix(&mut self, rows: usize, cols: usize, density: f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(self.nonneg_entry(density), 0.0))
    }

    /// Nonnegative `m×m` matrix with irreducible real part: entries in
    /// `{0} ∪ [0.1, 1]`, resampled until the symmetrized graph is connected.
    pub fn nonneg_irreducible(&mut self, m: usize, density: f64) -> Result<ComplexMatrix> {
        if m < 2 || !(density > 0.0 && density <= 1.0) {
            return Err(Error::Domain(format!("need m ≥ 2 and 0 < density ≤ 1, got m={m}, density={density}")));
        }
        let cfg = ToleranceConfig::default();
        for _ in 0..RESAMPLE_CAP {
            let b = self.nonneg_matrix(m, m, density);
            if is_irreducible_sym_nonneg(&crate::matkernel::real_part(&b)?, &cfg)? {
                return Ok(b);
            }
        }
        Err(Error::Generation(format!(
            "no irreducible sample after {RESAMPLE_CAP} draws (m={m}, density={density})"
        )))
    }

    /// Random composition of `n` into `parts` positive sizes.
    pub fn composition(&mut self, n: usize, parts: usize) -> Vec<usize> {
        assert!(parts >= 1 && parts <= n);
        let mut cuts: Vec<usize> = (1..n).collect();
        cuts.shuffle(&mut self.rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
        cuts.sort();
        let mut sizes = Vec::with_capacity(parts);
        let mut prev = 0;
        for c in cuts.into_iter().chain(std::iter::once(n)) {
            sizes.push(c - prev);
            prev = c;
        }
        sizes
    }

    /// Nonnegative block-shift matrix with `level_sizes.len() − 1` blocks,
    /// connected symmetrized graph and nilpotency index equal to the block
    /// count, in block-shift order.
    pub fn nonneg_block_shift(&mut self, level_sizes: &[usize], density: f64) -> Result<ComplexMatrix> {
        let k = level_sizes.len().checked_sub(1).filter(|&k| k >= 1).ok_or_else(|| {
            Error::Domain("block shift needs at least two levels".into())
        })?;
        for _ in 0..RESAMPLE_CAP {
            let mut blocks = Vec::with_capacity(k);
            for j in 0..k {
                let (r, c) = (level_sizes[j], level_sizes[j + 1]);
                let mut block = self.nonneg_matrix(r, c, density);
                // Every vertex gets an edge into the previous level and out
                // of the next one, so the longest path spans all levels.
                for col in 0..c {
                    if (0..r).all(|row| block[(row, col)].re == 0.0) {
                        let row = self.int(0, r - 1);
                        block[(row, col)] = C64::new(self.uniform(0.1, 1.0), 0.0);
                    }
                }
                for row in 0..r {
                    if (0..c).all(|col| block[(row, col)].re == 0.0) {
                        let col = self.int(0, c - 1);
                        block[(row, col)] = C64::new(self.uniform(0.1, 1.0), 0.0);
                    }
                }
                blocks.push(block);
            }
            let b = block_shift(&blocks)?;
            let g = SupportGraph::from_nonnegative(&b)?;
            if g.is_weakly_connected() && g.longest_path() == Some(k) {
                return Ok(b);
            }
        }
        Err(Error::Generation(format!("no connected block shift with levels {level_sizes:?}")))
    }

    /// Block-shift matrix with Ginibre blocks in block-shift order.
    pub fn complex_block_shift(&mut self, level_sizes: &[usize]) -> ComplexMatrix {
        let blocks: Vec<ComplexMatrix> =
            level_sizes.windows(2).map(|w| self.ginibre(w[0], w[1])).collect();
        block_shift(&blocks).expect("chained sizes")
    }

    /// Random `S_n` matrix with eigenvalues in the disc of radius `r < 1`.
    pub fn sn_matrix(&mut self, n: usize, r: f64) -> ComplexMatrix {
        let lambdas: Vec<C64> = (0..n).map(|_| self.disc_point(r)).collect();
        sn_matrix(&lambdas).expect("eigenvalues inside the unit disc")
    }

    /// Strictly upper-triangular Ginibre matrix (nilpotent).
    pub fn strictly_upper(&mut self, n: usize) -> ComplexMatrix {
        let mut a = self.ginibre(n, n);
        for i in 0..n {
            for j in 0..=i {
                a[(i, j)] = ZERO;
            }
        }
        a
    }

    /// Contraction `C` of order `size` rescaled so that `w(C) = target`,
    /// with `‖C‖ ≤ norm_cap`. Resamples the direction until feasible.
    pub fn contraction_with_radius(&mut self, size: usize, target: f64, norm_cap: f64) -> Result<ComplexMatrix> {
        let cfg = ToleranceConfig::default();
        for _ in 0..RESAMPLE_CAP {
            let c = self.contraction(size);
            let w = numerical_radius(&c, &cfg)?;
            let s = target / w;
            if s <= norm_cap {
                return Ok(c.scale_real(s));
            }
        }
        Err(Error::Generation(format!("no contraction of order {size} with w = {target} and norm ≤ {norm_cap}")))
    }

    /// `J_{k+1} ⊕ C` with `‖C‖ ≤ c_norm` and `C` of order `c_size` (possibly 0).
    pub fn jordan_plus_small(&mut self, k: usize, c_size: usize, c_norm: f64) -> ComplexMatrix {
        let j = jordan_block(k + 1).expect("k + 1 ≥ 1");
        if c_size == 0 {
            return j;
        }
        let c = self.contraction(c_size).scale_real(self.uniform(0.0, c_norm));
        j.direct_sum(&c)
    }
}

pub fn gen_contraction(n: usize, seed: Seed) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(seed.rng().contraction(n))
}

pub fn gen_unitary(n: usize, seed: Seed) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(seed.rng().unitary(n))
}

pub fn gen_nonneg_irreducible(m: usize, density: f64, seed: Seed) -> Result<ComplexMatrix> {
    seed.rng().nonneg_irreducible(m, density)
}

pub fn gen_sn_matrix(n: usize, seed: Seed) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    Ok(seed.rng().sn_matrix(n, 0.9))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indices::{is_class_sn, nilpotency_index_graph, IndexValue};
    use crate::matkernel::real_part;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn contraction_has_unit_norm_and_is_deterministic() {
        let a = gen_contraction(4, Seed(7)).unwrap();
        assert!((operator_norm(&a, &cfg()) - 1.0).abs() <= 1e-12);
        assert_eq!(a, gen_contraction(4, Seed(7)).unwrap());
        assert_ne!(a, gen_contraction(4, Seed(8)).unwrap());
    }

    #[test]
    fn unitary_is_unitary() {
        for n in 1..=6 {
            let u = gen_unitary(n, Seed(n as u64)).unwrap();
            assert!((&u.adjoint() * &u).max_abs_diff(&ComplexMatrix::identity(n)) <= 1e-10);
            assert!((numerical_radius(&u, &cfg()).unwrap() - 1.0).abs() < 1e-8);
            assert!(crate::indices::has_unitary_part(&u, &cfg()).unwrap());
        }
    }

    #[test]
    fn nonneg_irreducible_properties() {
        for s in 0..20 {
            let b = gen_nonneg_irreducible(4, 0.3, Seed(s)).unwrap();
            assert!(b.is_nonnegative(0.0));
            assert!(is_irreducible_sym_nonneg(&real_part(&b).unwrap(), &cfg()).unwrap());
        }
        let full = gen_nonneg_irreducible(3, 1.0, Seed(1)).unwrap();
        assert!(full.as_slice().iter().all(|z| z.re > 0.0));
        let two = gen_nonneg_irreducible(2, 0.05, Seed(3)).unwrap();
        assert!(two[(0, 1)].re > 0.0 || two[(1, 0)].re > 0.0);
        assert!(matches!(gen_nonneg_irreducible(1, 0.5, Seed(0)), Err(Error::Domain(_))));
    }

    #[test]
    fn block_shift_generator_has_requested_index() {
        let mut g = Seed(11).rng();
        for _ in 0..20 {
            let sizes = g.composition(5, 3);
            assert_eq!(sizes.iter().sum::<usize>(), 5);
            let b = g.nonneg_block_shift(&sizes, 0.5).unwrap();
            assert_eq!(nilpotency_index_graph(&b).unwrap(), IndexValue::Finite(2));
        }
    }

    #[test]
    fn sn_generator() {
        for s in 0..5 {
            assert!(is_class_sn(&gen_sn_matrix(4, Seed(s)).unwrap(), &cfg()).unwrap());
        }
    }

    #[test]
    fn derived_seeds_differ() {
        let s = Seed(5);
        assert_ne!(s.derive(0), s.derive(1));
        assert_ne!(s.derive_str("prop_1_1"), s.derive_str("prop_1_2"));
        assert_eq!(s.derive(3), Seed(5).derive(3));
    }
}
