//! Dense exact linear algebra over a prime field.
//!
//! Immutable square matrices of residues, with rank, nullspace, powers,
//! nilpotency and Jordan type. Elimination is plain row reduction with
//! modular inverses; products accumulate in `u128` and reduce once per
//! entry.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::partition::Partition;

/// Jordan type of a nilpotent matrix: the partition of its block sizes.
pub type JordanType = Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    field: PrimeField,
    entries: Vec<u64>,
}

impl ExactMatrix {
    pub fn zeros(n: usize, field: PrimeField) -> Self {
        ExactMatrix { n, field, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        let mut m = Self::zeros(n, field);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(n: usize, field: PrimeField, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(field.reduce(f(i, j)));
            }
        }
        ExactMatrix { n, field, entries }
    }

    pub fn from_rows(rows: &[Vec<u64>], field: PrimeField) -> Self {
        let n = rows.len();
        Self::from_fn(n, field, |i, j| rows[i][j])
    }

    /// Uniformly random matrix.
    pub fn random<R: Rng + ?Sized>(n: usize, field: PrimeField, rng: &mut R) -> Self {
        let entries = (0..n * n).map(|_| field.sample(rng)).collect();
        ExactMatrix { n, field, entries }
    }

    /// Rejection-samples until the matrix is invertible. At the default
    /// prime a rejection is a ~1/p event, so this returns on the first
    /// draw essentially always.
    pub fn random_invertible<R: Rng + ?Sized>(n: usize, field: PrimeField, rng: &mut R) -> Self {
        assert!(n >= 1);
        loop {
            let m = Self::random(n, field, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.n + j] = self.field.reduce(v);
    }

    /// Row-major flattening, the convention used for matrices-as-vectors
    /// throughout (echelon forms over the flattened space depend on it).
    pub fn flatten(&self) -> Vec<u64> {
        self.entries.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.p(), right: other.field.p() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("matrix addition shape");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        ExactMatrix { n: self.n, field: self.field, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("matrix subtraction shape");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        ExactMatrix { n: self.n, field: self.field, entries }
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = self.field.reduce(c);
        let entries = self.entries.iter().map(|&a| self.field.mul(a, c)).collect();
        ExactMatrix { n: self.n, field: self.field, entries }
    }

    /// Product, i-k-j loop order with zero skipping; entries stay reduced
    /// below 2^31 so `u128` accumulation is exact.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other).expect("matrix product shape");
        let n = self.n;
        let p = self.field.p() as u128;
        let mut entries = vec![0u64; n * n];
        let mut acc = vec![0u128; n];
        for i in 0..n {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik == 0 {
                    continue;
                }
                let aik = aik as u128;
                let row = &other.entries[k * n..(k + 1) * n];
                for (a, &b) in acc.iter_mut().zip(row) {
                    *a += aik * b as u128;
                }
            }
            for (e, &a) in entries[i * n..(i + 1) * n].iter_mut().zip(acc.iter()) {
                *e = (a % p) as u64;
            }
        }
        ExactMatrix { n, field: self.field, entries }
    }

    /// Matrix-vector product `Mv`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.n);
        let p = self.field.p() as u128;
        (0..self.n)
            .map(|i| {
                let row = &self.entries[i * self.n..(i + 1) * self.n];
                let acc: u128 = row.iter().zip(v).map(|(&a, &b)| a as u128 * b as u128).sum();
                (acc % p) as u64
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        ExactMatrix { n, field: self.field, entries }
    }

    pub fn pow(&self, mut exp: usize) -> Self {
        let mut acc = Self::identity(self.n, self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Rank by row reduction on a working copy.
    pub fn rank(&self) -> usize {
        let mut span = EchelonSpan::new(self.n, self.field);
        for i in 0..self.n {
            span.insert(self.entries[i * self.n..(i + 1) * self.n].to_vec());
        }
        span.rank()
    }

    /// Basis of the right kernel `{v : Mv = 0}`.
    pub fn nullspace_basis(&self) -> Vec<Vec<u64>> {
        let n = self.n;
        let f = self.field;
        // Reduced row echelon form.
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot_row) = (rank..n).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot_row);
            let inv = f.inv(rows[rank][col]);
            for x in rows[rank].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let factor = row[col];
                    for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                        *x = f.sub(*x, f.mul(factor, pv));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == n {
                break;
            }
        }
        let mut basis = Vec::with_capacity(n - rank);
        for free in 0..n {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rows[r][free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse via Gauss-Jordan on the augmented matrix, or `None` when
    /// singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let f = self.field;
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut r = self.entries[i * n..(i + 1) * n].to_vec();
                r.extend((0..n).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| rows[r][col] != 0)?;
            rows.swap(col, pivot);
            let inv = f.inv(rows[col][col]);
            for x in rows[col].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && row[col] != 0 {
                    let factor = row[col];
                    for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                        *x = f.sub(*x, f.mul(factor, pv));
                    }
                }
            }
        }
        Some(Self::from_fn(n, f, |i, j| rows[i][n + j]))
    }

    /// Nilpotency test by repeated squaring: `M^(2^ceil(log2 n)) == 0`.
    pub fn is_nilpotent(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut m = self.clone();
        let mut e = 1usize;
        while e < self.n {
            if m.is_zero() {
                return true;
            }
            m = m.mul(&m);
            e *= 2;
        }
        m.is_zero()
    }

    /// Smallest `e` with `M^e = 0`, or `None` if not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        if self.is_zero() {
            return Some(if self.n == 0 { 0 } else { 1 });
        }
        let mut m = self.clone();
        for e in 2..=self.n {
            m = m.mul(self);
            if m.is_zero() {
                return Some(e);
            }
        }
        None
    }

    /// Jordan type of a nilpotent matrix: the partition whose conjugate has
    /// k-th part `rank(M^{k-1}) - rank(M^k)`, from consecutive powers with
    /// early exit once the rank reaches zero.
    pub fn jordan_type(&self) -> Result<JordanType> {
        let mut diffs = Vec::new();
        let mut prev_rank = self.n;
        let mut power = self.clone();
        loop {
            let r = power.rank();
            if r >= prev_rank {
                // Rank stalled above zero: some eigenvalue is nonzero.
                return Err(Error::NotNilpotent);
            }
            diffs.push(prev_rank - r);
            prev_rank = r;
            if r == 0 {
                break;
            }
            if diffs.len() > self.n {
                return Err(Error::NotNilpotent);
            }
            power = power.mul(self);
        }
        let conj = Partition::new(diffs).expect("rank differences are weakly decreasing");
        debug_assert_eq!(conj.n(), self.n);
        Ok(conj.conjugate())
    }
}

/// Standard basis vector `e_idx` of dimension `n`.
pub fn basis_vector(n: usize, idx: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[idx] = 1;
    v
}

/// Incrementally built echelonized span of vectors of a fixed dimension.
/// Rows are kept fully reduced with unit pivots, so membership reduction
/// is deterministic.
#[derive(Debug, Clone)]
pub struct EchelonSpan {
    dim: usize,
    field: PrimeField,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl EchelonSpan {
    pub fn new(dim: usize, field: PrimeField) -> Self {
        EchelonSpan { dim, field, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the span; the result is zero iff `v` is in it.
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc] != 0 {
                let factor = v[pc];
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(factor, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Inserts a vector; returns true when the rank grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // Back-substitute into existing rows to keep them reduced.
        for row in self.rows.iter_mut() {
            if row[pc] != 0 {
                let factor = row[pc];
                for (r, &x) in row.iter_mut().zip(&v) {
                    *r = f.sub(*r, f.mul(factor, x));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutator::jordan_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = field();
        assert_eq!(ExactMatrix::identity(5, f).rank(), 5);
        assert_eq!(ExactMatrix::zeros(4, f).rank(), 0);
        assert_eq!(jordan_matrix(&part(&[4]), f).rank(), 3);
    }

    #[test]
    fn nullspace_examples() {
        let f = field();
        assert_eq!(ExactMatrix::zeros(3, f).nullspace_basis().len(), 3);
        assert!(ExactMatrix::identity(4, f).nullspace_basis().is_empty());
        let j3 = jordan_matrix(&part(&[3]), f);
        let ns = j3.nullspace_basis();
        assert_eq!(ns.len(), 1);
        // Kernel of the chain shift is the end of the chain, up to scale.
        let v = &ns[0];
        assert_eq!((v[0], v[1]), (0, 0));
        assert_ne!(v[2], 0);
        for b in &ns {
            assert!(j3.mul_vec(b).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn nilpotency_examples() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert!(jordan_matrix(&part(&[4, 2, 1]), f).is_nilpotent());
        assert!(!ExactMatrix::identity(6, f).is_nilpotent());
        let strict = ExactMatrix::from_fn(7, f, |i, j| {
            if j > i {
                f.sample(&mut rng)
            } else {
                0
            }
        });
        assert!(strict.is_nilpotent());
        assert_eq!(jordan_matrix(&part(&[3, 1]), f).nilpotency_index(), Some(3));
        assert_eq!(ExactMatrix::identity(3, f).nilpotency_index(), None);
    }

    #[test]
    fn jordan_type_examples() {
        let f = field();
        let j = jordan_matrix(&part(&[4, 2, 1]), f);
        assert_eq!(j.jordan_type().unwrap(), part(&[4, 2, 1]));
        assert_eq!(
            ExactMatrix::zeros(3, f).jordan_type().unwrap(),
            part(&[1, 1, 1])
        );
        assert_eq!(
            ExactMatrix::identity(3, f).jordan_type(),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn jordan_type_recovers_every_type_up_to_12() {
        let f = field();
        for n in 1..=12 {
            for lam in crate::partition::partitions_of(n) {
                let j = jordan_matrix(&lam, f);
                assert_eq!(j.jordan_type().unwrap(), lam);
                assert_eq!(lam.len(), n - j.rank(), "parts = n - rank for {lam}");
            }
        }
    }

    #[test]
    fn jordan_type_is_conjugation_invariant() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        // The named example: a random conjugate of the (3,1) Jordan matrix.
        let j = jordan_matrix(&part(&[3, 1]), f);
        let p = ExactMatrix::random_invertible(4, f, &mut rng);
        let conj = conjugate_by(&j, &p, f);
        assert_eq!(conj.jordan_type().unwrap(), part(&[3, 1]));

        for trial in 0..100 {
            let n = 1 + (trial % 12);
            let lam = crate::partition::partitions_of(n)
                .nth(trial % 3)
                .unwrap_or(part(&[1]));
            let j = jordan_matrix(&lam, f);
            let p = ExactMatrix::random_invertible(n, f, &mut rng);
            assert_eq!(conjugate_by(&j, &p, f).jordan_type().unwrap(), lam);
        }
    }

    fn conjugate_by(m: &ExactMatrix, p: &ExactMatrix, _f: PrimeField) -> ExactMatrix {
        let inv = p.inverse().expect("P is invertible");
        p.mul(m).mul(&inv)
    }

    #[test]
    fn inverse_round_trip() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let m = ExactMatrix::random_invertible(6, f, &mut rng);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), ExactMatrix::identity(6, f));
        assert_eq!(inv.mul(&m), ExactMatrix::identity(6, f));
        assert!(jordan_matrix(&part(&[3, 2]), f).inverse().is_none());
    }

    #[test]
    fn rank_agrees_with_transpose_rank() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=10 {
            let m = ExactMatrix::random(n, f, &mut rng);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn random_invertible_examples() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let one = ExactMatrix::random_invertible(1, f, &mut rng);
        assert_ne!(one.get(0, 0), 0);
        assert_eq!(ExactMatrix::random_invertible(8, f, &mut rng).rank(), 8);
        // Rejection rate: the singular fraction is about 1/p, so direct
        // draws are invertible essentially always.
        for _ in 0..50 {
            let mut attempts = 0;
            loop {
                attempts += 1;
                if ExactMatrix::random(6, f, &mut rng).rank() == 6 {
                    break;
                }
            }
            assert!(attempts <= 2, "unexpected rejection streak");
        }
    }

    #[test]
    fn echelon_span_basics() {
        let f = field();
        let mut span = EchelonSpan::new(3, f);
        assert!(span.insert(vec![0, 2, 1]));
        assert!(span.insert(vec![1, 1, 0]));
        assert!(!span.insert(vec![2, 4, 1]), "dependent vector");
        assert_eq!(span.rank(), 2);
        assert!(span.contains(&[1, 3, 1]));
        assert!(!span.contains(&[0, 0, 1]));
    }

    #[test]
    fn power_and_product_consistency() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let m = ExactMatrix::random(5, f, &mut rng);
        assert_eq!(m.pow(0), ExactMatrix::identity(5, f));
        assert_eq!(m.pow(3), m.mul(&m).mul(&m));
        let a = ExactMatrix::random(5, f, &mut rng);
        let b = ExactMatrix::random(5, f, &mut rng);
        let c = ExactMatrix::random(5, f, &mut rng);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }
}
