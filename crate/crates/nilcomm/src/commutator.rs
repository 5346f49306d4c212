//! The centralizer of a nilpotent Jordan matrix and its nilpotent part.
//!
//! Fixes the Jordan matrix `B` of a partition `lambda` acting on a basis
//! `e_{ijk}` indexed by distinct part size `i`, block repetition `j`, and
//! chain depth `k` (`B e_{ijk} = e_{ij,k+1}`, zero past the chain end).
//! Provides:
//!
//! - the coefficient parameterization of the centralizer (chain-to-chain
//!   shift maps) and a sampler for generic nilpotent commuting matrices;
//! - the explicit witness matrix `C` that commutes with `B`, is nilpotent,
//!   and makes the pair `(C, B)` cyclic and cocyclic, with both sign
//!   conventions for the chain-length difference used in its definition;
//! - cyclicity tests with spanning certificates.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::{basis_vector, EchelonSpan, ExactMatrix};
use crate::partition::Partition;

/// Block layout of the Jordan basis of a partition: distinct sizes with
/// multiplicities, and global offsets for each chain.
#[derive(Debug, Clone)]
pub struct JordanLayout {
    sizes: Vec<usize>,
    mults: Vec<usize>,
    group_offsets: Vec<usize>,
    n: usize,
}

impl JordanLayout {
    pub fn new(lambda: &Partition) -> Self {
        let mut sizes = Vec::new();
        let mut mults = Vec::new();
        for &part in lambda.parts() {
            if sizes.last() == Some(&part) {
                *mults.last_mut().expect("parallel to sizes") += 1;
            } else {
                sizes.push(part);
                mults.push(1);
            }
        }
        let mut group_offsets = Vec::with_capacity(sizes.len());
        let mut offset = 0;
        for (s, m) in sizes.iter().zip(&mults) {
            group_offsets.push(offset);
            offset += s * m;
        }
        JordanLayout { sizes, mults, group_offsets, n: lambda.n() }
    }

    /// Number of distinct part sizes.
    pub fn groups(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, g: usize) -> usize {
        self.sizes[g]
    }

    pub fn mult(&self, g: usize) -> usize {
        self.mults[g]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Offset of chain `(g, j)`, 0-based.
    pub fn chain_offset(&self, g: usize, j: usize) -> usize {
        self.group_offsets[g] + j * self.sizes[g]
    }

    /// Range of plain block indices (in the sorted part list) forming
    /// group `g`.
    pub fn group_blocks(&self, g: usize) -> std::ops::Range<usize> {
        let before: usize = self.mults[..g].iter().sum();
        before..before + self.mults[g]
    }
}

/// 1-based basis address `e_{ijk}`: distinct-size index `i`, repetition
/// `j`, depth `k`. Out-of-range triples denote the zero vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JordanBasisIndex {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl JordanBasisIndex {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        JordanBasisIndex { i, j, k }
    }

    /// Global 0-based coordinate, or `None` for the zero vector.
    pub fn to_global(&self, layout: &JordanLayout) -> Option<usize> {
        if self.i < 1 || self.i > layout.groups() {
            return None;
        }
        let g = self.i - 1;
        if self.j < 1 || self.j > layout.mult(g) || self.k < 1 || self.k > layout.size(g) {
            return None;
        }
        Some(layout.chain_offset(g, self.j - 1) + self.k - 1)
    }
}

/// Block-diagonal nilpotent Jordan matrix of `lambda`: each chain is
/// shifted one step deeper (`B e_{ijk} = e_{ij,k+1}`).
pub fn jordan_matrix(lambda: &Partition, field: PrimeField) -> ExactMatrix {
    assert!(!lambda.is_empty(), "jordan_matrix needs a nonempty partition");
    let n = lambda.n();
    let mut m = ExactMatrix::zeros(n, field);
    let mut offset = 0;
    for &part in lambda.parts() {
        for k in 0..part - 1 {
            m.set(offset + k + 1, offset + k, 1);
        }
        offset += part;
    }
    m
}

/// Dimension of the full centralizer: `sum over block pairs (a, b) of
/// min(lambda_a, lambda_b)`.
pub fn centralizer_dim(lambda: &Partition) -> usize {
    let parts = lambda.parts();
    parts
        .iter()
        .flat_map(|&a| parts.iter().map(move |&b| a.min(b)))
        .sum()
}

/// An element of the centralizer of the Jordan matrix, parameterized by
/// chain-to-chain shift coefficients.
///
/// For blocks `a` (size `q`) and `b` (size `m`), a commuting map sending
/// chain `b` into chain `a` is determined by the image of the chain top,
/// which must lie in the deepest `min(q, m)` positions of chain `a`. The
/// coefficient `(a, b, s)` scales the map landing `s` steps below the
/// shallowest legal position; `s = 0` between equal-size blocks is the
/// chain isomorphism.
#[derive(Debug, Clone)]
pub struct CentralizerElement {
    lambda: Partition,
    field: PrimeField,
    coeffs: Vec<u64>,
    pair_offsets: Vec<usize>,
    matrix: ExactMatrix,
}

impl CentralizerElement {
    pub fn from_coeffs(lambda: &Partition, field: PrimeField, coeffs: Vec<u64>) -> Self {
        let pair_offsets = Self::pair_offsets(lambda);
        assert_eq!(
            coeffs.len(),
            *pair_offsets.last().expect("nonempty"),
            "coefficient count must equal the centralizer dimension"
        );
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        let matrix = Self::realize(lambda, field, &coeffs, &pair_offsets);
        CentralizerElement { lambda: lambda.clone(), field, coeffs, pair_offsets, matrix }
    }

    /// Uniformly random coefficients.
    pub fn random<R: Rng + ?Sized>(lambda: &Partition, field: PrimeField, rng: &mut R) -> Self {
        let count = centralizer_dim(lambda);
        let coeffs = (0..count).map(|_| field.sample(rng)).collect();
        Self::from_coeffs(lambda, field, coeffs)
    }

    fn pair_offsets(lambda: &Partition) -> Vec<usize> {
        let parts = lambda.parts();
        let l = parts.len();
        let mut offsets = Vec::with_capacity(l * l + 1);
        let mut acc = 0;
        for a in 0..l {
            for b in 0..l {
                offsets.push(acc);
                acc += parts[a].min(parts[b]);
            }
        }
        offsets.push(acc);
        offsets
    }

    fn realize(
        lambda: &Partition,
        field: PrimeField,
        coeffs: &[u64],
        pair_offsets: &[usize],
    ) -> ExactMatrix {
        let parts = lambda.parts();
        let l = parts.len();
        let mut block_offsets = Vec::with_capacity(l);
        let mut off = 0;
        for &p in parts {
            block_offsets.push(off);
            off += p;
        }
        let mut m = ExactMatrix::zeros(lambda.n(), field);
        for a in 0..l {
            for b in 0..l {
                let depth = parts[a].min(parts[b]);
                let base = pair_offsets[a * l + b];
                let start = parts[a].saturating_sub(parts[b]);
                for s in 0..depth {
                    let c = coeffs[base + s];
                    if c == 0 {
                        continue;
                    }
                    // Diagonal of length depth - s, landing s below the
                    // shallowest legal row of block a.
                    for t in 0..depth - s {
                        let row = block_offsets[a] + start + s + t;
                        let col = block_offsets[b] + t;
                        m.set(row, col, field.add(m.get(row, col), c));
                    }
                }
            }
        }
        m
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn coeff(&self, a: usize, b: usize, s: usize) -> u64 {
        let l = self.lambda.len();
        let base = self.pair_offsets[a * l + b];
        debug_assert!(base + s < self.pair_offsets[a * l + b + 1]);
        self.coeffs[base + s]
    }

    fn set_coeff(&mut self, a: usize, b: usize, s: usize, value: u64) {
        let l = self.lambda.len();
        let base = self.pair_offsets[a * l + b];
        self.coeffs[base + s] = self.field.reduce(value);
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// The realized matrix (cached at construction).
    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// Coefficient-wise sum; realization is linear in the coefficients.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.lambda, other.lambda);
        assert_eq!(self.field, other.field);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect();
        Self::from_coeffs(&self.lambda, self.field, coeffs)
    }
}

/// Draws a generic nilpotent element of the centralizer.
///
/// An element of the centralizer is nilpotent exactly when, for every
/// group of equal-size blocks, the square matrix of its chain-isomorphism
/// coefficients within the group is nilpotent. The sampler draws all
/// coefficients uniformly and then replaces each group matrix by
/// `Q T Q^{-1}` with `Q` random invertible and `T` random strictly upper
/// triangular, which parameterizes the whole nilpotent cone of the group.
/// Nilpotency of the result is verified, not assumed.
pub fn sample_centralizer_nilpotent<R: Rng + ?Sized>(
    lambda: &Partition,
    field: PrimeField,
    rng: &mut R,
) -> CentralizerElement {
    assert!(!lambda.is_empty(), "sampling needs a nonempty partition");
    let mut elt = CentralizerElement::random(lambda, field, rng);
    let layout = JordanLayout::new(lambda);
    for g in 0..layout.groups() {
        let blocks = layout.group_blocks(g);
        let r = blocks.len();
        let strict = ExactMatrix::from_fn(r, field, |i, j| {
            if j > i {
                field.sample(rng)
            } else {
                0
            }
        });
        let q = ExactMatrix::random_invertible(r, field, rng);
        let q_inv = q.inverse().expect("just sampled invertible");
        let group = q.mul(&strict).mul(&q_inv);
        for (ai, a) in blocks.clone().enumerate() {
            for (bi, b) in blocks.clone().enumerate() {
                elt.set_coeff(a, b, 0, group.get(ai, bi));
            }
        }
    }
    let elt = CentralizerElement::from_coeffs(lambda, field, elt.coeffs.clone());
    debug_assert!(elt.matrix().commutes_with(&jordan_matrix(lambda, field)));
    assert!(elt.matrix().is_nilpotent(), "group-nilpotent element must be nilpotent");
    elt
}

/// A nilpotent matrix commuting with the Jordan matrix of `lambda`,
/// generically of the dominance-maximal Jordan type.
pub fn sample_nilpotent_commuting<R: Rng + ?Sized>(
    lambda: &Partition,
    field: PrimeField,
    rng: &mut R,
) -> ExactMatrix {
    sample_centralizer_nilpotent(lambda, field, rng).matrix().clone()
}

/// Sign convention for the chain-length difference in the witness matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaSign {
    /// `delta_i = lambda_i - lambda_{i-1}` (non-positive shift).
    AsWritten,
    /// `delta_i = lambda_{i-1} - lambda_i` (positive shift; aligns chain
    /// ends).
    Negated,
}

impl std::fmt::Display for DeltaSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DeltaSign::AsWritten => write!(f, "as-written"),
            DeltaSign::Negated => write!(f, "negated"),
        }
    }
}

/// The explicit witness construction for `lambda`.
pub struct CyclicWitness {
    /// The witness matrix `C`.
    pub c: ExactMatrix,
    /// `e_{111}`, the cyclic candidate for `(C, B)`.
    pub v: Vec<u64>,
    /// `e_{1, r_1, lambda_1}`, the cyclic candidate for the transposes.
    pub w: Vec<u64>,
}

/// Builds the witness matrix from its basis action:
///
/// - `C e_{ijk} = e_{i,j+1,k}` while `j < r_i`;
/// - `C e_{i,r_i,k} = e_{i+1,1,k} + e_{i-1,1,k+delta_i}`,
///
/// with `delta_i` per the chosen sign convention and out-of-range targets
/// contributing zero.
pub fn cyclic_witness(lambda: &Partition, field: PrimeField, sign: DeltaSign) -> CyclicWitness {
    assert!(!lambda.is_empty(), "witness needs a nonempty partition");
    let layout = JordanLayout::new(lambda);
    let n = layout.n();
    let mut c = ExactMatrix::zeros(n, field);
    for g in 0..layout.groups() {
        let size = layout.size(g);
        let mult = layout.mult(g);
        for j in 0..mult {
            for k in 0..size {
                let col = layout.chain_offset(g, j) + k;
                if j + 1 < mult {
                    let row = layout.chain_offset(g, j + 1) + k;
                    c.set(row, col, field.add(c.get(row, col), 1));
                    continue;
                }
                // Last repetition: descend to the next group...
                if g + 1 < layout.groups() && k < layout.size(g + 1) {
                    let row = layout.chain_offset(g + 1, 0) + k;
                    c.set(row, col, field.add(c.get(row, col), 1));
                }
                // ... and ascend to the previous one with the depth shift.
                if g > 0 {
                    let shifted = match sign {
                        DeltaSign::Negated => Some(k + layout.size(g - 1) - layout.size(g)),
                        DeltaSign::AsWritten => {
                            (k + layout.size(g)).checked_sub(layout.size(g - 1))
                        }
                    };
                    if let Some(k2) = shifted {
                        if k2 < layout.size(g - 1) {
                            let row = layout.chain_offset(g - 1, 0) + k2;
                            c.set(row, col, field.add(c.get(row, col), 1));
                        }
                    }
                }
            }
        }
    }
    let v = basis_vector(n, JordanBasisIndex::new(1, 1, 1).to_global(&layout).expect("in range"));
    let w_idx = JordanBasisIndex::new(1, layout.mult(0), layout.size(0))
        .to_global(&layout)
        .expect("in range");
    let w = basis_vector(n, w_idx);
    CyclicWitness { c, v, w }
}

/// Spanning evidence for a cyclicity test: the monomials `A^i B^j`
/// (graded order) whose images of `v` were accepted as new pivots.
#[derive(Debug, Clone, Serialize)]
pub struct CyclicCertificate {
    pub vector: Vec<u64>,
    pub monomials: Vec<(usize, usize)>,
    pub rank: usize,
}

impl CyclicCertificate {
    pub fn is_spanning(&self, n: usize) -> bool {
        self.rank == n
    }
}

/// Tests whether `span{A^i B^j v : 0 <= i, j <= n-1}` is the full space.
/// Images are generated in graded order with early exit once `n`
/// independent vectors are found.
pub fn is_cyclic(
    a: &ExactMatrix,
    b: &ExactMatrix,
    v: &[u64],
) -> Result<(bool, CyclicCertificate)> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
    }
    if !a.commutes_with(b) {
        return Err(Error::NonCommuting);
    }
    let n = a.n();
    assert_eq!(v.len(), n);
    let mut grid: Vec<Vec<Option<Vec<u64>>>> = vec![vec![None; n]; n];
    let mut span = EchelonSpan::new(n, a.field());
    let mut monomials = Vec::new();
    'outer: for d in 0..=2 * (n - 1) {
        for i in d.saturating_sub(n - 1)..=d.min(n - 1) {
            let j = d - i;
            let vec = if d == 0 {
                v.to_vec()
            } else if i > 0 {
                a.mul_vec(grid[i - 1][j].as_ref().expect("graded order"))
            } else {
                b.mul_vec(grid[i][j - 1].as_ref().expect("graded order"))
            };
            if span.insert(vec.clone()) {
                monomials.push((i, j));
                if span.rank() == n {
                    break 'outer;
                }
            }
            grid[i][j] = Some(vec);
        }
    }
    let rank = span.rank();
    let cert = CyclicCertificate { vector: v.to_vec(), monomials, rank };
    Ok((rank == n, cert))
}

/// A pencil point `alpha * q(B) + beta * C` that failed the nilpotency
/// check, with the polynomial coefficients `q_1..q_{lambda_1 - 1}`.
#[derive(Debug, Clone, Serialize)]
pub struct PencilFailure {
    pub alpha: u64,
    pub beta: u64,
    pub poly: Vec<u64>,
}

/// Verification record for the witness construction of one partition.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub lambda: Partition,
    pub n: usize,
    pub delta_sign: DeltaSign,
    pub commutes: bool,
    /// First entry where `BC` and `CB` disagree, if any.
    pub commute_mismatch: Option<(usize, usize)>,
    pub c_nilpotent: bool,
    pub v_cyclic: bool,
    pub w_cocyclic: bool,
    pub pencil_trials: usize,
    pub pencil_failures: Vec<PencilFailure>,
}

impl WitnessReport {
    pub fn all_pass(&self) -> bool {
        self.commutes
            && self.c_nilpotent
            && self.v_cyclic
            && self.w_cocyclic
            && self.pencil_failures.is_empty()
    }
}

/// Checks the four witness properties under one sign convention:
/// commutation with `B`, nilpotency of `C`, cyclicity of `v` for `(C, B)`
/// and of `w` for the transposes, plus `pencil_trials` random pencils
/// `alpha * q(B) + beta * C` (with `q` a random polynomial with zero
/// constant term, so it shares the strict chain-triangularity of `C`).
/// The degenerate pencil point `alpha = beta = 0` is always included.
pub fn verify_witness<R: Rng + ?Sized>(
    lambda: &Partition,
    field: PrimeField,
    sign: DeltaSign,
    pencil_trials: usize,
    rng: &mut R,
) -> WitnessReport {
    let b = jordan_matrix(lambda, field);
    let witness = cyclic_witness(lambda, field, sign);
    let c = &witness.c;
    let bc = b.mul(c);
    let cb = c.mul(&b);
    let commutes = bc == cb;
    let commute_mismatch = if commutes {
        None
    } else {
        let n = b.n();
        (0..n * n)
            .map(|idx| (idx / n, idx % n))
            .find(|&(i, j)| bc.get(i, j) != cb.get(i, j))
    };
    let c_nilpotent = c.is_nilpotent();
    let (v_cyclic, w_cocyclic) = if commutes {
        let v_ok = is_cyclic(c, &b, &witness.v).map(|(ok, _)| ok).unwrap_or(false);
        let w_ok = is_cyclic(&c.transpose(), &b.transpose(), &witness.w)
            .map(|(ok, _)| ok)
            .unwrap_or(false);
        (v_ok, w_ok)
    } else {
        (false, false)
    };

    let max_deg = lambda.part(0) - 1;
    let b_powers: Vec<ExactMatrix> = {
        let mut powers = Vec::with_capacity(max_deg);
        let mut acc = b.clone();
        for _ in 0..max_deg {
            powers.push(acc.clone());
            acc = acc.mul(&b);
        }
        powers
    };
    let mut pencil_failures = Vec::new();
    let mut run_trial = |alpha: u64, beta: u64, poly: Vec<u64>| {
        let mut a_q = ExactMatrix::zeros(b.n(), field);
        for (coeff, power) in poly.iter().zip(&b_powers) {
            if *coeff != 0 {
                a_q = a_q.add(&power.scale(*coeff));
            }
        }
        let pencil = a_q.scale(alpha).add(&c.scale(beta));
        if !pencil.is_nilpotent() {
            pencil_failures.push(PencilFailure { alpha, beta, poly });
        }
    };
    run_trial(0, 0, vec![0; max_deg]);
    for _ in 0..pencil_trials {
        let alpha = field.sample(rng);
        let beta = field.sample(rng);
        let poly: Vec<u64> = (0..max_deg).map(|_| field.sample(rng)).collect();
        run_trial(alpha, beta, poly);
    }

    WitnessReport {
        lambda: lambda.clone(),
        n: lambda.n(),
        delta_sign: sign,
        commutes,
        commute_mismatch,
        c_nilpotent,
        v_cyclic,
        w_cocyclic,
        pencil_trials: pencil_trials + 1,
        pencil_failures,
    }
}

/// Runs [`verify_witness`] under the as-written convention first and falls
/// back to the negated one, returning the first report that passes (or the
/// negated report when neither does). The report records which convention
/// was validated.
pub fn verify_witness_auto<R: Rng + ?Sized>(
    lambda: &Partition,
    field: PrimeField,
    pencil_trials: usize,
    rng: &mut R,
) -> WitnessReport {
    let as_written = verify_witness(lambda, field, DeltaSign::AsWritten, pencil_trials, rng);
    if as_written.all_pass() {
        return as_written;
    }
    verify_witness(lambda, field, DeltaSign::Negated, pencil_trials, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn jordan_matrix_examples() {
        let f = field();
        let j2 = jordan_matrix(&part(&[2]), f);
        assert_eq!((j2.get(0, 0), j2.get(0, 1), j2.get(1, 0), j2.get(1, 1)), (0, 0, 1, 0));
        assert!(jordan_matrix(&part(&[1, 1, 1]), f).is_zero());
        let j = jordan_matrix(&part(&[4, 2, 1]), f);
        assert_eq!(j.jordan_type().unwrap(), part(&[4, 2, 1]));
    }

    #[test]
    fn centralizer_dim_examples() {
        assert_eq!(centralizer_dim(&part(&[2, 1])), 5);
        assert_eq!(centralizer_dim(&part(&[5])), 5);
        assert_eq!(centralizer_dim(&part(&[1, 1])), 4);
    }

    #[test]
    fn centralizer_dim_matches_commutation_operator_nullity() {
        // Oracle: nullity of X -> XB - BX on the n^2-dimensional space.
        let f = field();
        for lam in [part(&[2, 1]), part(&[3, 1]), part(&[2, 2]), part(&[1, 1, 1])] {
            let n = lam.n();
            let b = jordan_matrix(&lam, f);
            let mut span = EchelonSpan::new(n * n, f);
            let mut rank = 0;
            for u in 0..n {
                for v in 0..n {
                    let mut e = ExactMatrix::zeros(n, f);
                    e.set(u, v, 1);
                    let image = e.mul(&b).sub(&b.mul(&e));
                    if span.insert(image.flatten()) {
                        rank += 1;
                    }
                }
            }
            assert_eq!(n * n - rank, centralizer_dim(&lam), "{lam}");
        }
    }

    #[test]
    fn centralizer_elements_commute_exactly() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for lam in [part(&[3, 2, 2, 1]), part(&[4, 1]), part(&[2, 2, 2])] {
            let b = jordan_matrix(&lam, f);
            for _ in 0..5 {
                let elt = CentralizerElement::random(&lam, f, &mut rng);
                assert!(elt.matrix().commutes_with(&b), "{lam}");
            }
        }
    }

    #[test]
    fn realization_is_linear_in_coefficients() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for lam in [part(&[3, 2, 1]), part(&[2, 2]), part(&[4])] {
            let x = CentralizerElement::random(&lam, f, &mut rng);
            let y = CentralizerElement::random(&lam, f, &mut rng);
            let sum = x.add(&y);
            assert_eq!(sum.matrix().clone(), x.matrix().add(y.matrix()));
        }
    }

    #[test]
    fn sampled_elements_are_exactly_nilpotent_and_commuting() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for n in 1..=8 {
            for lam in partitions_of(n) {
                let b = jordan_matrix(&lam, f);
                let r = lam.r();
                for _ in 0..3 {
                    let a = sample_nilpotent_commuting(&lam, f, &mut rng);
                    assert!(a.commutes_with(&b));
                    assert!(a.pow(n).is_zero(), "A^n = 0 exactly");
                    assert!(a.rank() <= n - r, "rank bound for {lam}");
                }
            }
        }
    }

    #[test]
    fn generic_type_for_trivial_jordan_structure() {
        // B = 0: the centralizer is everything, so a generic nilpotent
        // element is regular.
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for n in [2usize, 3, 5] {
            let ones = Partition::new(vec![1; n]).unwrap();
            let a = sample_nilpotent_commuting(&ones, f, &mut rng);
            assert_eq!(a.jordan_type().unwrap(), part(&[n]));
        }
    }

    #[test]
    fn stable_partition_samples_keep_their_type() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let lam = part(&[5, 3, 1]);
        for _ in 0..10 {
            let a = sample_nilpotent_commuting(&lam, f, &mut rng);
            assert_eq!(a.jordan_type().unwrap(), lam);
        }
    }

    #[test]
    fn generic_frequency_for_two_ar_blocks() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let lam = part(&[4, 4, 3, 3, 2]);
        let expected = part(&[14, 2]);
        let hits = (0..20)
            .filter(|_| {
                sample_nilpotent_commuting(&lam, f, &mut rng).jordan_type().unwrap() == expected
            })
            .count();
        assert!(hits >= 19, "only {hits}/20 samples hit the generic type");
    }

    #[test]
    fn witness_for_single_block_is_zero() {
        let f = field();
        let lam = part(&[6]);
        let witness = cyclic_witness(&lam, f, DeltaSign::Negated);
        assert!(witness.c.is_zero());
        let b = jordan_matrix(&lam, f);
        let (ok, _) = is_cyclic(&witness.c, &b, &witness.v).unwrap();
        assert!(ok, "chain top generates under B alone");
    }

    #[test]
    fn witness_for_two_equal_blocks_swaps_chains() {
        let f = field();
        let lam = part(&[2, 2]);
        let witness = cyclic_witness(&lam, f, DeltaSign::Negated);
        let b = jordan_matrix(&lam, f);
        // Chain 1 maps onto chain 2, chain 2 to zero.
        for (row, col, want) in [(2, 0, 1), (3, 1, 1), (0, 2, 0), (1, 3, 0)] {
            assert_eq!(witness.c.get(row, col), want);
        }
        assert_eq!(witness.c.mul(&b), b.mul(&witness.c));
        assert!(witness.c.mul(&witness.c).is_zero());
    }

    #[test]
    fn figure_example_witness_passes() {
        let f = field();
        let lam = Partition::parse("4^2,3^2,2,1^2").unwrap();
        assert_eq!(lam.n(), 18);
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let report = verify_witness_auto(&lam, f, 10, &mut rng);
        assert!(report.all_pass(), "{report:?}");
        assert_eq!(report.delta_sign, DeltaSign::Negated);
        // w is the top chain's end within the first group: e_{1,2,4}.
        let layout = JordanLayout::new(&lam);
        let witness = cyclic_witness(&lam, f, DeltaSign::Negated);
        let idx = JordanBasisIndex::new(1, 2, 4).to_global(&layout).unwrap();
        assert_eq!(witness.w, basis_vector(18, idx));
    }

    #[test]
    fn as_written_sign_can_break_commutation() {
        let f = field();
        let report = verify_witness(
            &part(&[3, 2]),
            f,
            DeltaSign::AsWritten,
            2,
            &mut ChaCha8Rng::seed_from_u64(71),
        );
        assert!(!report.commutes);
        assert!(report.commute_mismatch.is_some());
    }

    #[test]
    fn witness_passes_for_all_small_partitions() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for n in 1..=6 {
            for lam in partitions_of(n) {
                let report = verify_witness_auto(&lam, f, 4, &mut rng);
                assert!(report.all_pass(), "{lam}: {report:?}");
            }
        }
    }

    #[test]
    fn cyclicity_examples() {
        let f = field();
        let n = 5;
        let b = jordan_matrix(&part(&[n]), f);
        let zero = ExactMatrix::zeros(n, f);
        let (top, cert) = is_cyclic(&zero, &b, &basis_vector(n, 0)).unwrap();
        assert!(top);
        assert!(cert.is_spanning(n));
        assert_eq!(cert.monomials.len(), n);
        let (bottom, cert) = is_cyclic(&zero, &b, &basis_vector(n, n - 1)).unwrap();
        assert!(!bottom);
        assert_eq!(cert.rank, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        let x = ExactMatrix::random(3, f, &mut rng);
        let y = ExactMatrix::random(3, f, &mut rng);
        assert_eq!(is_cyclic(&x, &y, &basis_vector(3, 0)).unwrap_err(), Error::NonCommuting);
    }

    #[test]
    fn cyclicity_is_scale_invariant() {
        let f = field();
        let lam = part(&[3, 2, 2]);
        let b = jordan_matrix(&lam, f);
        let witness = cyclic_witness(&lam, f, DeltaSign::Negated);
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for _ in 0..10 {
            let c = f.sample_nonzero(&mut rng);
            let scaled: Vec<u64> = witness.v.iter().map(|&x| f.mul(x, c)).collect();
            let (plain, _) = is_cyclic(&witness.c, &b, &witness.v).unwrap();
            let (scaled_ok, _) = is_cyclic(&witness.c, &b, &scaled).unwrap();
            assert_eq!(plain, scaled_ok);
        }
    }

    #[test]
    fn basis_index_out_of_range_is_zero() {
        let layout = JordanLayout::new(&part(&[4, 4, 2]));
        assert_eq!(JordanBasisIndex::new(1, 1, 1).to_global(&layout), Some(0));
        assert_eq!(JordanBasisIndex::new(1, 2, 3).to_global(&layout), Some(6));
        assert_eq!(JordanBasisIndex::new(2, 1, 2).to_global(&layout), Some(9));
        assert_eq!(JordanBasisIndex::new(0, 1, 1).to_global(&layout), None);
        assert_eq!(JordanBasisIndex::new(1, 3, 1).to_global(&layout), None);
        assert_eq!(JordanBasisIndex::new(2, 1, 3).to_global(&layout), None);
        assert_eq!(JordanBasisIndex::new(3, 1, 1).to_global(&layout), None);
    }
}
