//! Estimation of the generic commuting Jordan type by dominance-maximal
//! sampling, cross-validation against the two-part closed form, and sweeps
//! checking shape, idempotency, part count and rank over all partitions of
//! a given weight.
//!
//! Sampling is deterministic: every sample draws from a stream derived
//! from `(master seed, context tag, partition, sample index)`, so sweeps
//! merge identically regardless of thread count or execution order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::Serializer;
use serde::Serialize;

use crate::algebra;
use crate::commutator::sample_nilpotent_commuting;
use crate::field::PrimeField;
use crate::partition::{partitions_of, Partition};

/// Context tags separating derived random streams.
pub mod stream {
    pub const SAMPLE: u64 = 1;
    pub const WITNESS: u64 = 2;
    pub const GORENSTEIN: u64 = 3;
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-(seed, tag, partition, index) random stream.
pub fn derive_rng(master_seed: u64, tag: u64, lambda: &Partition, index: u64) -> ChaCha8Rng {
    let mut h = splitmix64(master_seed);
    h = splitmix64(h ^ tag);
    h = splitmix64(h ^ lambda.len() as u64);
    for &part in lambda.parts() {
        h = splitmix64(h ^ part as u64);
    }
    h = splitmix64(h ^ index);
    ChaCha8Rng::seed_from_u64(h)
}

/// Estimation parameters shared across commands and sweeps.
#[derive(Debug, Clone, Copy)]
pub struct EstimateOptions {
    pub field: PrimeField,
    pub seed: u64,
    pub samples: usize,
    /// Also collect Hilbert-function evidence per sample (costlier).
    pub with_hilbert: bool,
}

impl EstimateOptions {
    pub fn new(field: PrimeField, seed: u64, samples: usize) -> Self {
        EstimateOptions { field, seed, samples, with_hilbert: false }
    }

    pub fn with_hilbert(mut self, yes: bool) -> Self {
        self.with_hilbert = yes;
        self
    }
}

/// Anomaly and check-failure flags attached to a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Flag {
    /// Two sampled types were dominance-maximal simultaneously.
    IncomparableMaxima,
    /// Estimated type disagrees with the applicable closed form.
    ClosedFormMismatch { closed: Partition },
    /// The index formula changes when the segment start is capped below
    /// the number of parts.
    OblakRangeDisagreement,
    /// Estimated type has a consecutive gap below two.
    GapsViolation,
    /// Re-estimating on the estimate moved it.
    NotIdempotent { d_of_d: Partition },
    /// Estimated part count differs from the almost-rectangular count.
    PartCountMismatch { expected: usize },
    /// Estimate fails to dominate the input partition.
    NotDominating,
    /// No sample attained rank `n - r`.
    RankShortfall { expected: usize, observed: usize },
    /// Hilbert evidence disagrees with the estimated type.
    HilbertMismatch,
}

impl std::fmt::Display for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flag::IncomparableMaxima => write!(f, "incomparable-maxima"),
            Flag::ClosedFormMismatch { closed } => {
                write!(f, "closed-form-mismatch(expected {closed})")
            }
            Flag::OblakRangeDisagreement => write!(f, "oblak-range-disagreement"),
            Flag::GapsViolation => write!(f, "gaps-violation"),
            Flag::NotIdempotent { d_of_d } => write!(f, "not-idempotent(got {d_of_d})"),
            Flag::PartCountMismatch { expected } => {
                write!(f, "part-count-mismatch(expected {expected})")
            }
            Flag::NotDominating => write!(f, "not-dominating"),
            Flag::RankShortfall { expected, observed } => {
                write!(f, "rank-shortfall(expected {expected}, observed {observed})")
            }
            Flag::HilbertMismatch => write!(f, "hilbert-mismatch"),
        }
    }
}

impl Serialize for Flag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Jordan type observed in a sample run, with its multiplicity.
#[derive(Debug, Clone, Serialize)]
pub struct TypeFrequency {
    pub jordan_type: Partition,
    pub count: usize,
}

/// The result record for one partition.
#[derive(Debug, Clone, Serialize)]
pub struct DMapReport {
    pub lambda: Partition,
    pub n: usize,
    pub r: usize,
    pub estimated_d: Partition,
    pub closed_form: Option<Partition>,
    /// Greatest nilpotency index observed across samples.
    pub index_observed: usize,
    /// Greatest rank observed across samples.
    pub max_rank_observed: usize,
    pub samples: usize,
    pub prime: u64,
    pub seed: u64,
    /// Distinct sampled types with frequencies, largest first.
    pub type_frequencies: Vec<TypeFrequency>,
    /// Dominance-maximum of the Hilbert-function partitions over the
    /// full-dimension samples, when collected.
    pub hilbert_max: Option<Partition>,
    /// Samples whose algebra had dimension `n`, when collected.
    pub hilbert_full_dim_samples: Option<usize>,
    /// Samples whose Hilbert partition equals the estimate, when collected.
    pub hilbert_equal_count: Option<usize>,
    pub flags: Vec<Flag>,
}

impl DMapReport {
    pub fn has_anomalies(&self) -> bool {
        !self.flags.is_empty()
    }

    /// Stable when the estimate equals the input.
    pub fn stable(&self) -> bool {
        self.estimated_d == self.lambda
    }
}

struct SampleOutcome {
    jordan_type: Partition,
    rank: usize,
    hilbert_lambda: Option<Partition>,
}

fn draw_sample(lambda: &Partition, opts: &EstimateOptions, index: u64) -> SampleOutcome {
    let mut rng = derive_rng(opts.seed, stream::SAMPLE, lambda, index);
    let a = sample_nilpotent_commuting(lambda, opts.field, &mut rng);
    let jordan_type = a.jordan_type().expect("sampled matrices are nilpotent");
    let rank = lambda.n() - jordan_type.len();
    let hilbert_lambda = if opts.with_hilbert {
        let b = crate::commutator::jordan_matrix(lambda, opts.field);
        let basis = algebra::algebra_basis(&a, &b).expect("sampled pair is admissible");
        if basis.dim() == lambda.n() {
            let h = algebra::hilbert_function(&a, &b).expect("sampled pair is admissible");
            Some(h.lambda_of_h())
        } else {
            None
        }
    } else {
        None
    };
    SampleOutcome { jordan_type, rank, hilbert_lambda }
}

/// Dominance-maximal elements of a list of same-weight partitions.
fn dominance_maxima(types: &[Partition]) -> Vec<Partition> {
    let mut maxima: Vec<Partition> = Vec::new();
    for cand in types {
        if maxima.contains(cand) {
            continue;
        }
        let strictly_dominated = types.iter().any(|other| {
            other != cand
                && other.dominates(cand).expect("same weight")
                && !cand.dominates(other).expect("same weight")
        });
        if !strictly_dominated {
            maxima.push(cand.clone());
        }
    }
    maxima
}

/// Estimates the generic commuting Jordan type of `lambda` from repeated
/// samples: the estimate is the dominance-maximum of the observed types.
/// Incomparable maxima are flagged (non-fatal, re-run with more samples or
/// a larger prime) and broken towards the lexicographically largest
/// candidate.
pub fn estimate_d(lambda: &Partition, opts: &EstimateOptions) -> DMapReport {
    assert!(opts.samples >= 1, "need at least one sample");
    assert!(!lambda.is_empty(), "estimation needs a nonempty partition");
    let outcomes: Vec<SampleOutcome> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|idx| draw_sample(lambda, opts, idx))
        .collect();

    let mut flags = Vec::new();
    let observed: Vec<Partition> = outcomes.iter().map(|o| o.jordan_type.clone()).collect();
    let maxima = dominance_maxima(&observed);
    if maxima.len() > 1 {
        flags.push(Flag::IncomparableMaxima);
    }
    let estimated_d = maxima.iter().max().cloned().expect("at least one sample");

    let mut type_frequencies: Vec<TypeFrequency> = Vec::new();
    for t in &observed {
        match type_frequencies.iter_mut().find(|tf| &tf.jordan_type == t) {
            Some(tf) => tf.count += 1,
            None => type_frequencies.push(TypeFrequency { jordan_type: t.clone(), count: 1 }),
        }
    }
    type_frequencies.sort_by(|a, b| b.jordan_type.cmp(&a.jordan_type));

    let index_observed = observed.iter().map(|t| t.part(0)).max().expect("samples >= 1");
    let max_rank_observed = outcomes.iter().map(|o| o.rank).max().expect("samples >= 1");

    let r = lambda.r();
    let closed_form = lambda.d_closed_form();
    if let Some(closed) = &closed_form {
        if closed != &estimated_d {
            flags.push(Flag::ClosedFormMismatch { closed: closed.clone() });
        }
    }
    if lambda.oblak_range_disagrees() {
        flags.push(Flag::OblakRangeDisagreement);
    }

    let (hilbert_max, hilbert_full_dim_samples, hilbert_equal_count) = if opts.with_hilbert {
        let hilbert_types: Vec<Partition> =
            outcomes.iter().filter_map(|o| o.hilbert_lambda.clone()).collect();
        let full = hilbert_types.len();
        let max = dominance_maxima(&hilbert_types).into_iter().max();
        let equal = hilbert_types.iter().filter(|t| **t == estimated_d).count();
        if let Some(m) = &max {
            if m != &estimated_d {
                flags.push(Flag::HilbertMismatch);
            }
        }
        (max, Some(full), Some(equal))
    } else {
        (None, None, None)
    };

    DMapReport {
        lambda: lambda.clone(),
        n: lambda.n(),
        r,
        estimated_d,
        closed_form,
        index_observed,
        max_rank_observed,
        samples: opts.samples,
        prime: opts.field.p(),
        seed: opts.seed,
        type_frequencies,
        hilbert_max,
        hilbert_full_dim_samples,
        hilbert_equal_count,
        flags,
    }
}

/// Greatest nilpotency index over the sampled elements: the least `e` with
/// `A^e = 0`, maximized over samples. Equals the largest part of the
/// dominance-maximal sampled type.
pub fn max_index_observed(lambda: &Partition, opts: &EstimateOptions) -> usize {
    estimate_d(lambda, opts).index_observed
}

/// Sweep over every partition of `n`, with the per-partition checks on the
/// estimated type folded into report flags.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub n: usize,
    pub samples: usize,
    pub prime: u64,
    pub seed: u64,
    pub reports: Vec<DMapReport>,
    pub all_gaps_ge2: bool,
    pub all_idempotent: bool,
    pub all_closed_form_agree: bool,
    pub all_part_counts_equal_r: bool,
}

impl SweepResult {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.flags.is_empty())
    }
}

/// Estimates `mu` for one partition and folds the theorem-level checks
/// into the report flags:
///
/// (a) consecutive parts of `mu` differ by at least two;
/// (b) re-estimating on `mu` returns `mu` (idempotency, end to end
///     through the sampler);
/// (c) `mu` has as many parts as the almost-rectangular count of `lambda`;
/// (d) `mu` matches the closed form when that applies (flagged inside the
///     estimator);
/// (e) `mu` dominates `lambda`;
/// (f) some sample attains the maximal rank `n - r`.
pub fn checked_report(lambda: &Partition, opts: &EstimateOptions) -> DMapReport {
    let mut report = estimate_d(lambda, opts);
    let mu = report.estimated_d.clone();
    if !mu.has_gaps_ge_two() {
        report.flags.push(Flag::GapsViolation);
    }
    let again = estimate_d(&mu, opts);
    if again.estimated_d != mu {
        report.flags.push(Flag::NotIdempotent { d_of_d: again.estimated_d });
    }
    if mu.len() != report.r {
        report.flags.push(Flag::PartCountMismatch { expected: report.r });
    }
    if !mu.dominates(lambda).expect("same weight") {
        report.flags.push(Flag::NotDominating);
    }
    let expected_rank = lambda.n() - report.r;
    if report.max_rank_observed != expected_rank {
        report.flags.push(Flag::RankShortfall {
            expected: expected_rank,
            observed: report.max_rank_observed,
        });
    }
    report
}

/// Runs [`checked_report`] over every partition of `n`. Failures become
/// flags on the affected report, never fatal errors.
pub fn verify_theorem(n: usize, opts: &EstimateOptions) -> SweepResult {
    assert!(n >= 1);
    let lambdas: Vec<Partition> = partitions_of(n).collect();
    let reports: Vec<DMapReport> = lambdas
        .par_iter()
        .map(|lambda| checked_report(lambda, opts))
        .collect();

    let all_gaps_ge2 = reports.iter().all(|r| !r.flags.contains(&Flag::GapsViolation));
    let all_idempotent = reports
        .iter()
        .all(|r| !r.flags.iter().any(|f| matches!(f, Flag::NotIdempotent { .. })));
    let all_closed_form_agree = reports
        .iter()
        .all(|r| !r.flags.iter().any(|f| matches!(f, Flag::ClosedFormMismatch { .. })));
    let all_part_counts_equal_r = reports
        .iter()
        .all(|r| !r.flags.iter().any(|f| matches!(f, Flag::PartCountMismatch { .. })));

    SweepResult {
        n,
        samples: opts.samples,
        prime: opts.field.p(),
        seed: opts.seed,
        reports,
        all_gaps_ge2,
        all_idempotent,
        all_closed_form_agree,
        all_part_counts_equal_r,
    }
}
