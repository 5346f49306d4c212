//! The unital commutative algebra generated by a commuting pair of
//! nilpotent matrices.
//!
//! The algebra is spanned by the monomials `A^a B^b` with exponents below
//! `n`; bases are echelonized over the row-major flattening of matrices.
//! The maximal ideal is spanned by the positive-degree monomials, and its
//! `i`-th power equals the span of the monomials of total degree at least
//! `i`: products of `i` positive-degree monomials have degree at least
//! `i`, and conversely any monomial of degree `a + b >= i` factors into
//! `i` positive-degree monomials. The Hilbert function is read off that
//! filtration; a randomized closure check (`m^i * m` inside `m^{i+1}`)
//! backs this up in the tests.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{basis_vector, EchelonSpan, ExactMatrix};
use crate::partition::HilbertFunction;

/// Monomials `A^a B^b` in graded order, with zero powers pruned.
struct MonomialGrid {
    n: usize,
    /// `grid[a][b] = A^a B^b`; rows stop once the power of `A` vanishes,
    /// columns once the power of `B` does.
    grid: Vec<Vec<ExactMatrix>>,
}

impl MonomialGrid {
    fn build(a: &ExactMatrix, b: &ExactMatrix) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
        }
        if a.field() != b.field() {
            return Err(Error::FieldMismatch { left: a.field().p(), right: b.field().p() });
        }
        if !a.commutes_with(b) {
            return Err(Error::NonCommuting);
        }
        let n = a.n();
        let mut rows: Vec<Vec<ExactMatrix>> = Vec::new();
        let mut b_row = vec![ExactMatrix::identity(n, a.field())];
        for _ in 1..n {
            let next = b_row.last().expect("nonempty").mul(b);
            if next.is_zero() {
                break;
            }
            b_row.push(next);
        }
        rows.push(b_row);
        for _ in 1..n {
            let prev = rows.last().expect("nonempty");
            let lead = prev[0].mul(a);
            if lead.is_zero() {
                break;
            }
            let mut row = Vec::with_capacity(prev.len());
            row.push(lead);
            for m in &prev[1..] {
                let next = m.mul(a);
                if next.is_zero() {
                    break;
                }
                row.push(next);
            }
            rows.push(row);
        }
        Ok(MonomialGrid { n, grid: rows })
    }

    fn max_degree(&self) -> usize {
        self.grid
            .iter()
            .enumerate()
            .map(|(a, row)| a + row.len() - 1)
            .max()
            .unwrap_or(0)
    }

    /// All nonzero monomials of total degree `d`, as `(a, b, matrix)`.
    fn degree(&self, d: usize) -> impl Iterator<Item = (usize, usize, &ExactMatrix)> {
        self.grid.iter().enumerate().filter_map(move |(a, row)| {
            let b = d.checked_sub(a)?;
            row.get(b).map(|m| (a, b, m))
        })
    }
}

/// One element of an echelonized algebra basis, tagged with the monomial
/// it came from.
#[derive(Debug, Clone)]
pub struct BasisElement {
    pub monomial: (usize, usize),
    pub degree: usize,
    pub matrix: ExactMatrix,
}

/// Echelonized basis of the unital algebra generated by a commuting
/// nilpotent pair.
#[derive(Debug)]
pub struct MatrixAlgebraBasis {
    n: usize,
    a: ExactMatrix,
    b: ExactMatrix,
    elements: Vec<BasisElement>,
    span: EchelonSpan,
}

impl MatrixAlgebraBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn generators(&self) -> (&ExactMatrix, &ExactMatrix) {
        (&self.a, &self.b)
    }

    /// Membership of an arbitrary matrix in the algebra.
    pub fn contains(&self, m: &ExactMatrix) -> bool {
        self.span.contains(&m.flatten())
    }
}

/// Echelon basis of `span{A^a B^b : 0 <= a, b <= n-1}`, built in graded
/// order. Both generators must be nilpotent (which also bounds the
/// exponents: powers at or beyond `n` vanish).
pub fn algebra_basis(a: &ExactMatrix, b: &ExactMatrix) -> Result<MatrixAlgebraBasis> {
    if !a.is_nilpotent() || !b.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let grid = MonomialGrid::build(a, b)?;
    let n = grid.n;
    let mut span = EchelonSpan::new(n * n, a.field());
    let mut elements = Vec::new();
    for d in 0..=grid.max_degree() {
        for (pa, pb, m) in grid.degree(d) {
            if span.insert(m.flatten()) {
                elements.push(BasisElement { monomial: (pa, pb), degree: d, matrix: m.clone() });
            }
        }
    }
    Ok(MatrixAlgebraBasis { n, a: a.clone(), b: b.clone(), elements, span })
}

/// Dimensions of the powers of the maximal ideal, `dims[i] = dim m^i`
/// (`m^0` is the whole algebra), strictly decreasing to the final zero.
#[derive(Debug, Clone, Serialize)]
pub struct FiltrationProfile {
    pub dims: Vec<usize>,
    pub hilbert: HilbertFunction,
}

/// Computes the ideal-power filtration via the graded spans of monomials
/// of total degree at least `i`.
pub fn filtration_profile(a: &ExactMatrix, b: &ExactMatrix) -> Result<FiltrationProfile> {
    if !a.is_nilpotent() || !b.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let grid = MonomialGrid::build(a, b)?;
    let n = grid.n;
    let max_degree = grid.max_degree();
    let mut span = EchelonSpan::new(n * n, a.field());
    // dim m^d for d = max_degree..0, built by inserting degrees downward.
    let mut dims_rev = Vec::with_capacity(max_degree + 1);
    for d in (0..=max_degree).rev() {
        for (_, _, m) in grid.degree(d) {
            span.insert(m.flatten());
        }
        dims_rev.push(span.rank());
    }
    let mut dims: Vec<usize> = dims_rev.into_iter().rev().collect();
    dims.push(0);
    let values: Vec<usize> = dims.windows(2).map(|w| w[0] - w[1]).collect();
    let hilbert = HilbertFunction::new(values).expect("local filtration drops strictly");
    Ok(FiltrationProfile { dims, hilbert })
}

/// The Hilbert function `(h_0, ..., h_k)` of the algebra of the pair.
pub fn hilbert_function(a: &ExactMatrix, b: &ExactMatrix) -> Result<HilbertFunction> {
    Ok(filtration_profile(a, b)?.hilbert)
}

/// Dimension of the socle `{z in the algebra : zA = 0 and zB = 0}`,
/// computed inside the algebra as the kernel of `z -> (zA, zB)` restricted
/// to basis coordinates.
pub fn socle_dim(a: &ExactMatrix, b: &ExactMatrix) -> Result<usize> {
    let basis = algebra_basis(a, b)?;
    Ok(socle_dim_of(&basis))
}

fn socle_dim_of(basis: &MatrixAlgebraBasis) -> usize {
    let (a, b) = basis.generators();
    let n = basis.n();
    let mut span = EchelonSpan::new(2 * n * n, a.field());
    let mut rank = 0;
    for elt in basis.elements() {
        let mut image = elt.matrix.mul(a).flatten();
        image.extend(elt.matrix.mul(b).flatten());
        if span.insert(image) {
            rank += 1;
        }
    }
    basis.dim() - rank
}

/// Gorenstein test: one-dimensional socle.
pub fn is_gorenstein_pair(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    Ok(socle_dim(a, b)? == 1)
}

/// Searches for a cyclic vector of the pair and of the transposed pair.
/// Candidates: 16 random vectors, every standard basis vector, then 16
/// random vectors again. A pair whose algebra has dimension below `n`
/// cannot act cyclically and short-circuits to `false`.
pub fn is_cyclic_cocyclic<R: Rng + ?Sized>(
    a: &ExactMatrix,
    b: &ExactMatrix,
    rng: &mut R,
) -> Result<(bool, bool)> {
    let grid = MonomialGrid::build(a, b)?;
    let n = grid.n;
    let mut dim_span = EchelonSpan::new(n * n, a.field());
    for d in 0..=grid.max_degree() {
        for (_, _, m) in grid.degree(d) {
            dim_span.insert(m.flatten());
        }
    }
    if dim_span.rank() < n {
        return Ok((false, false));
    }
    let cyclic = search_cyclic(a, b, rng)?;
    let cocyclic = search_cyclic(&a.transpose(), &b.transpose(), rng)?;
    Ok((cyclic, cocyclic))
}

fn search_cyclic<R: Rng + ?Sized>(
    a: &ExactMatrix,
    b: &ExactMatrix,
    rng: &mut R,
) -> Result<bool> {
    let n = a.n();
    let field = a.field();
    let random_batch = |rng: &mut R| -> Vec<Vec<u64>> {
        (0..16)
            .map(|_| (0..n).map(|_| field.sample(rng)).collect())
            .collect()
    };
    let mut candidates = random_batch(rng);
    candidates.extend((0..n).map(|i| basis_vector(n, i)));
    candidates.extend(random_batch(rng));
    for v in candidates {
        let (ok, _) = crate::commutator::is_cyclic(a, b, &v)?;
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Consistency report tying the cyclic/cocyclic property to the
/// Gorenstein and trapezoid-shape conclusions for a full-dimension pair.
#[derive(Debug, Clone, Serialize)]
pub struct GorensteinReport {
    pub n: usize,
    pub dim: usize,
    pub socle_dim: usize,
    pub gorenstein: bool,
    pub cyclic: bool,
    pub cocyclic: bool,
    pub hilbert: HilbertFunction,
    pub macaulay_admissible: bool,
    pub hilbert_ends_in_one: bool,
    pub violations: Vec<String>,
}

impl GorensteinReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for a pair whose algebra has dimension exactly `n`, that a
/// cyclic and cocyclic action implies a one-dimensional socle and a
/// trapezoid-admissible Hilbert function ending in 1. Violated
/// implications are reported with their witnesses. Pairs with smaller
/// algebras are rejected with [`Error::DeficientDimension`].
pub fn gorenstein_consistency<R: Rng + ?Sized>(
    a: &ExactMatrix,
    b: &ExactMatrix,
    rng: &mut R,
) -> Result<GorensteinReport> {
    let basis = algebra_basis(a, b)?;
    let n = basis.n();
    let dim = basis.dim();
    if dim < n {
        return Err(Error::DeficientDimension { dim, n });
    }
    let socle = socle_dim_of(&basis);
    let gorenstein = socle == 1;
    let (cyclic, cocyclic) = is_cyclic_cocyclic(a, b, rng)?;
    let hilbert = hilbert_function(a, b)?;
    let macaulay = hilbert.is_macaulay_admissible();
    let hk_is_one = *hilbert.values().last().expect("nonempty") == 1;

    let mut violations = Vec::new();
    if cyclic && cocyclic {
        if !gorenstein {
            violations.push(format!(
                "cyclic and cocyclic pair has socle dimension {socle} instead of 1"
            ));
        }
        if !macaulay {
            violations.push(format!(
                "cyclic and cocyclic pair has non-admissible Hilbert function {hilbert}"
            ));
        }
        if !hk_is_one {
            violations.push(format!("Hilbert function {hilbert} does not end in 1"));
        }
    }
    Ok(GorensteinReport {
        n,
        dim,
        socle_dim: socle,
        gorenstein,
        cyclic,
        cocyclic,
        hilbert,
        macaulay_admissible: macaulay,
        hilbert_ends_in_one: hk_is_one,
        violations,
    })
}
