//! Numerical partial sums of the convergence series `sum_nu q^{E(nu)}`.
//!
//! The sum runs over dominant integer coweights ordered by the L1 height
//! `height(nu) = sum of semisimple coroot coordinates + sum of |torus
//! coordinates|`. Terms are half-integer powers of `q`, evaluated in `f64`
//! as powers of `sqrt(q)` by binary exponentiation, so runs are
//! deterministic across platforms.
//!
//! Partial sums are reported at four height checkpoints. Each checkpoint is
//! recomputed by a fresh enumeration from height zero rather than by
//! resuming the previous one, so the reported values are independent of how
//! the height range is partitioned.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::exponent::ExponentForm;
use crate::reps::WeightRep;
use crate::rootdata::{Coweight, RootDatum};
use crate::Rat;

/// L1 height of an integer coweight: semisimple coordinates (nonnegative on
/// dominant points) plus absolute torus coordinates.
pub fn height(rd: &RootDatum, nu: &[i64]) -> i64 {
    assert_eq!(nu.len(), rd.dim(), "coweight length mismatch");
    let ss = rd.ss_rank();
    nu[..ss].iter().sum::<i64>() + nu[ss..].iter().map(|c| c.abs()).sum::<i64>()
}

/// Visit every dominant integer coweight of height at most `height_cap`, in
/// ascending lexicographic coordinate order (semisimple coordinates scan
/// `0..`, torus coordinates scan from negative to positive).
pub fn enumerate_dominant<F: FnMut(&[i64])>(rd: &RootDatum, height_cap: u32, mut visit: F) {
    let d = rd.dim();
    let mut coords = vec![0i64; d];
    scan(rd, &mut coords, 0, i64::from(height_cap), &mut visit);
}

fn scan<F: FnMut(&[i64])>(
    rd: &RootDatum,
    coords: &mut Vec<i64>,
    idx: usize,
    remaining: i64,
    visit: &mut F,
) {
    let d = rd.dim();
    if idx == d {
        if rd.is_dominant(coords) {
            visit(coords);
        }
        return;
    }
    if idx < rd.ss_rank() {
        for v in 0..=remaining {
            coords[idx] = v;
            scan(rd, coords, idx + 1, remaining - v, visit);
        }
    } else {
        for v in -remaining..=remaining {
            coords[idx] = v;
            scan(rd, coords, idx + 1, remaining - v.abs(), visit);
        }
    }
    coords[idx] = 0;
}

/// Collect the enumeration into a vector (testing and small heights).
pub fn dominant_points(rd: &RootDatum, height_cap: u32) -> Vec<Coweight> {
    let mut out = Vec::new();
    enumerate_dominant(rd, height_cap, |nu| out.push(nu.to_vec()));
    out
}

/// One recomputed partial sum.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCheckpoint {
    pub h: u32,
    /// Number of dominant coweights of height at most `h`.
    pub count: u64,
    /// Partial sum of `q^{E(nu)}` over those coweights.
    pub sum: f64,
}

/// Tail-behavior hint read off the last quarter of the height range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictHint {
    Growing,
    Stabilizing,
}

impl fmt::Display for VerdictHint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictHint::Growing => "growing",
            VerdictHint::Stabilizing => "stabilizing",
        })
    }
}

/// Partial-sum report for one `(group, rep, q, height_cap)` run.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesReport {
    pub q: u64,
    pub height_cap: u32,
    /// Checkpoints at roughly quarter, half, three-quarter and full height.
    pub partial_sums: Vec<SeriesCheckpoint>,
    /// Number of terms in the full sum (count at `height_cap`).
    pub term_count: u64,
    /// `Growing` iff the last quarter of the range contributes more than a
    /// tenth of the total.
    pub verdict_hint: VerdictHint,
    /// Largest exponent `E(nu)` among the summed terms.
    pub max_term_exponent: Rat,
}

/// Errors from the numerical series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    DimensionMismatch { expected: usize, got: usize },
    /// Residue cardinalities below 2 do not occur.
    BadQ { q: u64 },
    /// A term `q^{two_e/2}` exceeded the `f64` range.
    TermOverflow { nu: Coweight, two_e: i64 },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::DimensionMismatch { expected, got } => {
                write!(f, "representation has dimension {got}, group needs {expected}")
            }
            SeriesError::BadQ { q } => write!(f, "residue cardinality must be at least 2, got {q}"),
            SeriesError::TermOverflow { nu, two_e } => {
                write!(f, "term q^({two_e}/2) at nu = (")?;
                for (i, c) in nu.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ") overflows f64")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// Integer power by repeated squaring; negative exponents invert once at the
/// end, keeping the rounding sequence fixed.
fn pow_i(base: f64, exp: i64) -> f64 {
    let mut e = exp.unsigned_abs();
    let mut acc = 1.0f64;
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b *= b;
        e >>= 1;
    }
    if exp < 0 {
        1.0 / acc
    } else {
        acc
    }
}

fn sum_up_to(
    rd: &RootDatum,
    ef: &ExponentForm,
    sqrt_q: f64,
    h: u32,
) -> Result<(u64, f64, i64), SeriesError> {
    let mut count = 0u64;
    let mut sum = 0.0f64;
    let mut max_two_e = i64::MIN;
    let mut failure: Option<SeriesError> = None;
    enumerate_dominant(rd, h, |nu| {
        if failure.is_some() {
            return;
        }
        let two_e = ef.two_e(nu);
        let term = pow_i(sqrt_q, two_e);
        sum += term;
        if !term.is_finite() || !sum.is_finite() {
            failure = Some(SeriesError::TermOverflow { nu: nu.to_vec(), two_e });
            return;
        }
        count += 1;
        if two_e > max_two_e {
            max_two_e = two_e;
        }
    });
    if let Some(err) = failure {
        return Err(err);
    }
    Ok((count, sum, max_two_e))
}

/// Sum `q^{E(nu)}` over dominant coweights of height at most `height_cap`,
/// with independently recomputed checkpoints and a tail hint.
pub fn partial_sum(
    rd: &RootDatum,
    rep: &WeightRep,
    q: u64,
    height_cap: u32,
) -> Result<SeriesReport, SeriesError> {
    if rep.dim != rd.dim() {
        return Err(SeriesError::DimensionMismatch { expected: rd.dim(), got: rep.dim });
    }
    if q < 2 {
        return Err(SeriesError::BadQ { q });
    }
    let ef = ExponentForm::new(rd, rep).expect("dimensions already checked");
    let sqrt_q = libm::sqrt(q as f64);

    let mut heights = vec![height_cap / 4, height_cap / 2, height_cap * 3 / 4, height_cap];
    heights.dedup();
    let mut partial_sums = Vec::with_capacity(heights.len());
    let mut max_two_e = 0i64;
    for &h in &heights {
        let (count, sum, pass_max) = sum_up_to(rd, &ef, sqrt_q, h)?;
        if h == height_cap {
            max_two_e = pass_max;
        }
        partial_sums.push(SeriesCheckpoint { h, count, sum });
    }
    let full = partial_sums.last().expect("height_cap checkpoint always present");
    let term_count = full.count;
    let s_full = full.sum;

    let quarter = height_cap.div_ceil(4);
    let (_, s_earlier, _) = sum_up_to(rd, &ef, sqrt_q, height_cap - quarter.min(height_cap))?;
    let verdict_hint = if s_full - s_earlier > s_full / 10.0 {
        VerdictHint::Growing
    } else {
        VerdictHint::Stabilizing
    };

    Ok(SeriesReport {
        q,
        height_cap,
        partial_sums,
        term_count,
        verdict_hint,
        max_term_exponent: Rat::new(max_two_e.into(), 2.into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::parse_rep;
    use crate::rootdata::root_datum_from_descriptor;

    fn points(group: &str, h: u32) -> Vec<Coweight> {
        dominant_points(&root_datum_from_descriptor(group).unwrap(), h)
    }

    #[test]
    fn rank_one_heights() {
        assert_eq!(points("A1", 3), vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn rank_two_dominance_filter() {
        assert_eq!(points("A2", 2), vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn torus_scans_both_signs() {
        assert_eq!(
            points("T1", 2),
            vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn lexicographic_order_with_torus() {
        assert_eq!(
            points("T2", 1),
            vec![vec![-1, 0], vec![0, -1], vec![0, 0], vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn heights_agree_with_the_enumeration_budget() {
        let rd = root_datum_from_descriptor("A2 x T1").unwrap();
        for nu in dominant_points(&rd, 4) {
            assert!(height(&rd, &nu) <= 4, "{nu:?}");
        }
        // every point of height <= 3 also appears at cap 4
        let small = dominant_points(&rd, 3);
        let large = dominant_points(&rd, 4);
        for nu in &small {
            assert!(large.contains(nu));
        }
        assert!(small.len() < large.len());
    }

    #[test]
    fn boundary_series_counts_terms() {
        // E = 0 at every dominant point, so S_h = h + 1 exactly.
        let rd = root_datum_from_descriptor("A1").unwrap();
        let rep = parse_rep(&rd, "adjoint").unwrap();
        let report = partial_sum(&rd, &rep, 2, 40).unwrap();
        assert_eq!(report.term_count, 41);
        let full = report.partial_sums.last().unwrap();
        assert_eq!(full.sum, 41.0);
        assert_eq!(report.verdict_hint, VerdictHint::Growing);
        assert_eq!(report.max_term_exponent, Rat::new(0.into(), 1.into()));
        assert_eq!(
            report.partial_sums.iter().map(|c| c.h).collect::<Vec<_>>(),
            vec![10, 20, 30, 40]
        );
    }

    #[test]
    fn geometric_series_stabilizes() {
        // E(m) = -2m, so at q = 2 the terms are 4^{-m} with limit 4/3.
        let rd = root_datum_from_descriptor("A1").unwrap();
        let rep = parse_rep(&rd, "pow(adjoint, 2)").unwrap();
        let report = partial_sum(&rd, &rep, 2, 30).unwrap();
        let full = report.partial_sums.last().unwrap();
        assert!((full.sum - 4.0 / 3.0).abs() < 1e-12, "{}", full.sum);
        assert_eq!(report.verdict_hint, VerdictHint::Stabilizing);
        assert_eq!(report.max_term_exponent, Rat::new(0.into(), 1.into()));
    }

    #[test]
    fn checkpoints_recompute_from_scratch() {
        let rd = root_datum_from_descriptor("A1 x T1").unwrap();
        let rep = parse_rep(&rd, "config(standard, 1)").unwrap();
        let report = partial_sum(&rd, &rep, 3, 13).unwrap();
        let ef = ExponentForm::new(&rd, &rep).unwrap();
        let sqrt_q = libm::sqrt(3.0);
        for cp in &report.partial_sums {
            let (count, sum, _) = sum_up_to(&rd, &ef, sqrt_q, cp.h).unwrap();
            assert_eq!(cp.count, count);
            assert_eq!(cp.sum.to_bits(), sum.to_bits(), "h = {}", cp.h);
        }
    }

    #[test]
    fn checkpoint_sums_are_monotone() {
        let rd = root_datum_from_descriptor("A1 x T3").unwrap();
        let rep = parse_rep(&rd, "config(standard, 3)").unwrap();
        let report = partial_sum(&rd, &rep, 2, 24).unwrap();
        let sums: Vec<f64> = report.partial_sums.iter().map(|c| c.sum).collect();
        for pair in sums.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        let counts: Vec<u64> = report.partial_sums.iter().map(|c| c.count).collect();
        for pair in counts.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        // at this cap the truncation still clips the charge boxes of the
        // middle strata, so the tail is honestly reported as growing; the
        // hint flips to stabilizing at larger caps
        assert_eq!(report.verdict_hint, VerdictHint::Growing);
        let deep = partial_sum(&rd, &rep, 2, 72).unwrap();
        assert_eq!(deep.verdict_hint, VerdictHint::Stabilizing);
    }

    #[test]
    fn bad_q_is_rejected() {
        let rd = root_datum_from_descriptor("A1").unwrap();
        let rep = parse_rep(&rd, "adjoint").unwrap();
        assert_eq!(partial_sum(&rd, &rep, 1, 5), Err(SeriesError::BadQ { q: 1 }));
        assert_eq!(partial_sum(&rd, &rep, 0, 5), Err(SeriesError::BadQ { q: 0 }));
    }

    #[test]
    fn overflow_names_the_offending_term() {
        // With no weights E(m) = 2m, so 2^{2m} leaves f64 at m = 512.
        let rd = root_datum_from_descriptor("A1").unwrap();
        let rep = parse_rep(&rd, "zero").unwrap();
        let err = partial_sum(&rd, &rep, 2, 600).unwrap_err();
        assert_eq!(err, SeriesError::TermOverflow { nu: vec![512], two_e: 2048 });
        assert!(alloc::format!("{err}").contains("nu = (512)"));
    }

    #[test]
    fn trivial_group_sums_to_one() {
        let rd = root_datum_from_descriptor("T0").unwrap();
        let rep = parse_rep(&rd, "zero").unwrap();
        let report = partial_sum(&rd, &rep, 5, 8).unwrap();
        assert_eq!(report.term_count, 1);
        for cp in &report.partial_sums {
            assert_eq!(cp.sum, 1.0);
            assert_eq!(cp.count, 1);
        }
        assert_eq!(report.verdict_hint, VerdictHint::Stabilizing);
    }

    #[test]
    fn half_integer_exponents_round_trip() {
        // T1 with a single charge-1 weight: E(u) = -|u|/2 ... E(u) = -u/2 for
        // u >= 0 and u/2 for u < 0, so terms come in powers of sqrt(q).
        let rd = root_datum_from_descriptor("T1").unwrap();
        let rep = parse_rep(&rd, "weights[(1):1]").unwrap();
        let report = partial_sum(&rd, &rep, 4, 2).unwrap();
        // points -2, -1, 0, 1, 2 with E = -1, -1/2, 0, -1/2, -1
        let expected = 2.0 * (1.0 / 4.0) + 2.0 * (1.0 / 2.0) + 1.0;
        let full = report.partial_sums.last().unwrap();
        assert!((full.sum - expected).abs() < 1e-15);
        assert_eq!(report.max_term_exponent, Rat::new(0.into(), 1.into()));
    }

    #[test]
    fn pow_i_matches_iterated_multiplication() {
        let base = libm::sqrt(2.0);
        let mut acc = 1.0;
        for e in 0..64i64 {
            assert!((pow_i(base, e) - acc).abs() <= acc * 1e-12, "e = {e}");
            acc *= base;
        }
        assert!((pow_i(base, -2) * 2.0 - 1.0).abs() < 1e-15);
        assert_eq!(pow_i(2.0, 10), 1024.0);
        assert_eq!(pow_i(2.0, -10), 1.0 / 1024.0);
    }
}
