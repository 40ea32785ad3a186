//! The central decision procedure: is `[V/G]` square-integrable?
//!
//! By the weight criterion this is equivalent to negativity of the concave,
//! positively homogeneous exponent `E` on the nonzero dominant cone, which
//! reduces to an exact linear program on a compact cross-section of the cone.
//!
//! The cross-section used here is the unit sphere of the L1-height
//! `height(nu) = sum of semisimple coroot coordinates + sum of |torus
//! coordinates|`. Torus coordinates carry both signs, so the section is not a
//! single simplex in generator space: the hull of the generators `+e_j, -e_j`
//! would contain the origin, where every linear functional vanishes and the
//! maximum would be spuriously pinned at `>= 0`. Instead the section is swept
//! orthant by orthant in the torus coordinates; on each orthant the cone is
//! pointed, `|x|_1` is linear in the generator coefficients, and `max E` is a
//! plain LP. The overall maximum `M` decides:
//!
//! * `M < 0`: square-integrable; `E(nu) <= M * height(nu)` on the whole cone,
//!   so the series is dominated by geometric decay. The per-orthant dual
//!   solutions form the convergence certificate.
//! * `M >= 0`: not square-integrable; the maximizing point scales to a
//!   nonzero dominant lattice witness `nu*` with `E(nu*) >= 0`, a face of the
//!   cone contributing infinitely many non-decaying terms.
//!
//! Orthants that differ by a permutation of torus coordinates leaving the
//! weight multiset invariant give equal maxima, so only one representative
//! per symmetry class is solved (the certificate records the classes).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exponent::ExponentForm;
use crate::linalg;
use crate::ratlp::{
    check_optimal, solve_lp, CertificateError, Constraint, LinearProgram, LpOutcome, OptimalPoint,
    Relation, VarBound,
};
use crate::reps::{builtin_rep, is_weyl_symmetric, power, BuiltinKind, WeightRep};
use crate::rootdata::{Coweight, RootDatum};
use crate::Rat;

/// Convention tag recorded in every verdict.
pub const LATTICE_CONVENTION: &str =
    "coweights in simple-coroot coordinates (simply-connected semisimple factors) \
     x standard torus cocharacter lattice";

/// Normalization note: the magnitude of M depends on the section choice.
pub const NORMALIZATION_NOTE: &str =
    "M = max of E over dominant coweights of unit L1-height; \
     the sign of M is normalization-independent, the magnitude is not";

/// Identifying information carried by a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictMetadata {
    pub group: String,
    pub rep: String,
    pub lattice: &'static str,
    pub normalization: &'static str,
}

/// Solved data for one torus-sign orthant of the decision LP.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthantCertificate {
    /// Sign of each torus coordinate on this orthant (`+1`/`-1`), empty when
    /// the group has no torus factor.
    pub torus_signs: Vec<i8>,
    /// Maximum of `E` over this orthant's section.
    pub value: Rat,
    /// Primal LP point (generator coefficients, then one slack per weight).
    pub primal: Vec<Rat>,
    /// Dual certificate of the orthant LP.
    pub dual: Vec<Rat>,
}

/// Convergence certificate: one solved LP per representative orthant.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceCertificate {
    /// Torus coordinates grouped into classes interchangeable without
    /// changing the weight multiset; one orthant per sign-multiset is solved.
    pub torus_classes: Vec<Vec<usize>>,
    pub orthants: Vec<OrthantCertificate>,
}

/// Outcome of the decision procedure.
#[derive(Clone, Debug, PartialEq)]
pub struct L2Verdict {
    pub is_l2: bool,
    /// Exact maximum `M` of `E` on the unit-height section; `None` encodes
    /// negative infinity (trivial group, empty section).
    pub max_value: Option<Rat>,
    /// Present exactly when `is_l2`.
    pub certificate: Option<ConvergenceCertificate>,
    /// Primitive dominant lattice point with `E >= 0`; present iff not L2.
    pub witness: Option<Coweight>,
    pub metadata: VerdictMetadata,
}

impl L2Verdict {
    /// Machine-readable one-line rendering:
    /// `verdict=<L2|NOT_L2> M=<p/q> witness=<ints|-> certificate=<present|->`.
    pub fn verdict_line(&self) -> String {
        use core::fmt::Write as _;
        let mut out = String::new();
        let _ = write!(
            out,
            "verdict={} M=",
            if self.is_l2 { "L2" } else { "NOT_L2" }
        );
        match &self.max_value {
            Some(m) => {
                let _ = write!(out, "{m}");
            }
            None => out.push_str("-inf"),
        }
        out.push_str(" witness=");
        match &self.witness {
            Some(w) => {
                for (i, c) in w.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "{c}");
                }
                if w.is_empty() {
                    out.push('-');
                }
            }
            None => out.push('-'),
        }
        out.push_str(" certificate=");
        out.push_str(if self.certificate.is_some() { "present" } else { "-" });
        out
    }
}

/// Errors from the decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecideError {
    DimensionMismatch { expected: usize, got: usize },
    /// Witness coordinates exceeded the machine-integer range.
    WitnessOverflow,
}

impl fmt::Display for DecideError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecideError::DimensionMismatch { expected, got } => {
                write!(f, "representation has dimension {got}, group needs {expected}")
            }
            DecideError::WitnessOverflow => write!(f, "witness coordinates overflow i64"),
        }
    }
}

impl core::error::Error for DecideError {}

/// Cone generators split by shape: the dominant-cone generators of the
/// semisimple part, and the torus directions keyed by coordinate and sign.
struct SplitGenerators {
    ss: Vec<Coweight>,
    torus: BTreeMap<(usize, i8), Vec<Coweight>>,
}

fn split_generators(rd: &RootDatum) -> SplitGenerators {
    let ss_rank = rd.ss_rank();
    let d = rd.dim();
    let mut ss = Vec::new();
    let mut torus: BTreeMap<(usize, i8), Vec<Coweight>> = BTreeMap::new();
    for gen in &rd.cone_generators {
        let torus_support: Vec<usize> =
            (ss_rank..d).filter(|&c| gen[c] != 0).collect();
        if torus_support.is_empty() {
            ss.push(gen.clone());
        } else {
            assert!(
                torus_support.len() == 1 && gen[..ss_rank].iter().all(|&c| c == 0),
                "cone generator mixes torus and semisimple support"
            );
            let c = torus_support[0];
            let sign = if gen[c] > 0 { 1i8 } else { -1 };
            torus.entry((c - ss_rank, sign)).or_default().push(gen.clone());
        }
    }
    SplitGenerators { ss, torus }
}

/// Group torus coordinates into classes whose transpositions leave the
/// weight multiset invariant.
fn torus_symmetry_classes(rd: &RootDatum, rep: &WeightRep) -> Vec<Vec<usize>> {
    let ss = rd.ss_rank();
    let r = rd.torus_rank();
    let multiset: BTreeMap<&[i64], u64> =
        rep.entries.iter().map(|(w, m)| (w.as_slice(), *m)).collect();
    let swap_invariant = |a: usize, b: usize| -> bool {
        rep.entries.iter().all(|(w, m)| {
            let mut swapped = w.clone();
            swapped.swap(ss + a, ss + b);
            multiset.get(swapped.as_slice()) == Some(m)
        })
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..r {
        if let Some(class) = classes.iter_mut().find(|c| swap_invariant(c[0], j)) {
            class.push(j);
        } else {
            classes.push(vec![j]);
        }
    }
    classes
}

/// One sign pattern per orbit of `{+1,-1}^r` under the class symmetries:
/// within a class only the number of minus signs matters.
fn canonical_sign_patterns(classes: &[Vec<usize>], r: usize) -> Vec<Vec<i8>> {
    let mut patterns = vec![vec![1i8; r]];
    for class in classes {
        let mut extended = Vec::with_capacity(patterns.len() * (class.len() + 1));
        for pattern in &patterns {
            for minus_count in 0..=class.len() {
                let mut p = pattern.clone();
                for &coord in class.iter().take(minus_count) {
                    p[coord] = -1;
                }
                extended.push(p);
            }
        }
        patterns = extended;
    }
    patterns
}

fn l1_norm(v: &[i64]) -> i64 {
    v.iter().map(|c| c.abs()).sum()
}

/// Generators selected for one orthant, in deterministic order.
fn orthant_generators(split: &SplitGenerators, pattern: &[i8]) -> Vec<Coweight> {
    let mut gens: Vec<Coweight> = split.ss.clone();
    for (j, &sign) in pattern.iter().enumerate() {
        let dirs = split
            .torus
            .get(&(j, sign))
            .expect("every torus coordinate has generators of both signs");
        gens.extend(dirs.iter().cloned());
    }
    gens
}

/// Build the `max E` LP over one orthant's unit-height section.
///
/// Variables: one coefficient `t_i >= 0` per generator, then one slack
/// `s_a >= 0` per nonzero weight. Constraints: `+/- <lambda_a, x> <= s_a`
/// for `x = sum t_i g_i`, and the height normalization `sum t_i |g_i|_1 = 1`.
/// Objective: `<2rho, x> - (1/2) sum d_a s_a`.
fn orthant_lp(rd: &RootDatum, weights: &[(&[i64], u64)], gens: &[Coweight]) -> LinearProgram {
    let k = gens.len();
    let w = weights.len();
    let n = k + w;
    let mut objective = vec![Rat::zero(); n];
    for (i, g) in gens.iter().enumerate() {
        objective[i] = Rat::from_integer(rd.pairing(&rd.two_rho, g).into());
    }
    for (a, (_, mult)) in weights.iter().enumerate() {
        objective[k + a] = Rat::new(-BigInt::from(*mult), 2.into());
    }
    let mut constraints = Vec::with_capacity(2 * w + 1);
    for (a, (weight, _)) in weights.iter().enumerate() {
        let pairings: Vec<i64> = gens.iter().map(|g| rd.pairing(weight, g)).collect();
        for sign in [1i64, -1] {
            let mut coeffs = vec![Rat::zero(); n];
            for (i, &p) in pairings.iter().enumerate() {
                coeffs[i] = Rat::from_integer((sign * p).into());
            }
            coeffs[k + a] = -Rat::one();
            constraints.push(Constraint {
                coeffs,
                relation: Relation::Le,
                rhs: Rat::zero(),
            });
        }
    }
    let mut norm = vec![Rat::zero(); n];
    for (i, g) in gens.iter().enumerate() {
        norm[i] = Rat::from_integer(l1_norm(g).into());
    }
    constraints.push(Constraint { coeffs: norm, relation: Relation::Eq, rhs: Rat::one() });
    LinearProgram { objective, constraints, bounds: vec![VarBound::NonNegative; n] }
}

fn nonzero_weights(rep: &WeightRep) -> Vec<(&[i64], u64)> {
    rep.entries
        .iter()
        .filter(|(w, _)| w.iter().any(|&c| c != 0))
        .map(|(w, m)| (w.as_slice(), *m))
        .collect()
}

/// Scale the rational section point to a primitive integer coweight.
fn primitive_witness(point: &[Rat]) -> Result<Coweight, DecideError> {
    let denom = linalg::common_denominator(point);
    let cleared: Vec<BigInt> = point
        .iter()
        .map(|x| {
            let scaled = x * Rat::from_integer(denom.clone());
            debug_assert!(scaled.denom().is_one());
            scaled.numer().clone()
        })
        .collect();
    let mut gcd = BigInt::zero();
    for c in &cleared {
        gcd = gcd.gcd(c);
    }
    assert!(!gcd.is_zero(), "witness section point is nonzero by normalization");
    cleared
        .iter()
        .map(|c| i64::try_from(&(c / &gcd)).map_err(|_| DecideError::WitnessOverflow))
        .collect()
}

/// Decide square-integrability of `[V/G]`.
pub fn decide_l2(rd: &RootDatum, rep: &WeightRep) -> Result<L2Verdict, DecideError> {
    if rep.dim != rd.dim() {
        return Err(DecideError::DimensionMismatch { expected: rd.dim(), got: rep.dim });
    }
    let metadata = VerdictMetadata {
        group: rd.to_descriptor(),
        rep: rep.to_descriptor(),
        lattice: LATTICE_CONVENTION,
        normalization: NORMALIZATION_NOTE,
    };
    if rd.dim() == 0 {
        // Trivial group: the section is empty, the series is the single term
        // q^{E(0)} = 1, and the stack is a finite quotient of a point.
        return Ok(L2Verdict {
            is_l2: true,
            max_value: None,
            certificate: Some(ConvergenceCertificate {
                torus_classes: Vec::new(),
                orthants: Vec::new(),
            }),
            witness: None,
            metadata,
        });
    }

    let weights = nonzero_weights(rep);
    let split = split_generators(rd);
    let classes = torus_symmetry_classes(rd, rep);
    let patterns = canonical_sign_patterns(&classes, rd.torus_rank());

    let mut orthants: Vec<OrthantCertificate> = Vec::with_capacity(patterns.len());
    let mut best: Option<(usize, Vec<Coweight>)> = None;
    for pattern in &patterns {
        let gens = orthant_generators(&split, pattern);
        let lp = orthant_lp(rd, &weights, &gens);
        let outcome = solve_lp(&lp).expect("orthant LP is well-formed by construction");
        let LpOutcome::Optimal(opt) = outcome else {
            unreachable!("orthant LP is feasible and bounded");
        };
        let is_better = match &best {
            None => true,
            Some((idx, _)) => opt.value > orthants[*idx].value,
        };
        orthants.push(OrthantCertificate {
            torus_signs: pattern.clone(),
            value: opt.value,
            primal: opt.primal,
            dual: opt.dual,
        });
        if is_better {
            best = Some((orthants.len() - 1, gens));
        }
    }
    let (best_idx, best_gens) = best.expect("at least the all-plus orthant exists");
    let m = orthants[best_idx].value.clone();
    let is_l2 = m.is_negative();

    let witness = if is_l2 {
        None
    } else {
        let t = &orthants[best_idx].primal[..best_gens.len()];
        let point: Vec<Rat> = (0..rd.dim())
            .map(|c| {
                let mut acc = Rat::zero();
                for (i, g) in best_gens.iter().enumerate() {
                    if g[c] != 0 {
                        acc += &t[i] * Rat::from_integer(g[c].into());
                    }
                }
                acc
            })
            .collect();
        let nu = primitive_witness(&point)?;
        // Re-verify independently of the LP tableau.
        let ef = ExponentForm::new(rd, rep).expect("dimensions already checked");
        assert!(rd.is_dominant(&nu), "witness must be dominant");
        assert!(!ef.exponent_at(&nu).is_negative(), "witness must have E >= 0");
        Some(nu)
    };

    Ok(L2Verdict {
        is_l2,
        max_value: Some(m),
        certificate: if is_l2 {
            Some(ConvergenceCertificate { torus_classes: classes, orthants })
        } else {
            None
        },
        witness,
        metadata,
    })
}

/// Reasons a verdict fails independent re-verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    MetadataMismatch,
    MissingWitness,
    WitnessZero,
    WitnessNotPrimitive,
    WitnessNotDominant,
    WitnessExponentNegative,
    MissingCertificate,
    CertificateShape,
    OrthantLp { orthant: usize, error: CertificateError },
    OrthantValueNotNegative { orthant: usize },
    MaxValueMismatch,
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::MetadataMismatch => write!(f, "verdict metadata does not match inputs"),
            VerifyError::MissingWitness => write!(f, "divergence verdict lacks a witness"),
            VerifyError::WitnessZero => write!(f, "witness is the zero coweight"),
            VerifyError::WitnessNotPrimitive => write!(f, "witness coordinates share a factor"),
            VerifyError::WitnessNotDominant => write!(f, "witness is not dominant"),
            VerifyError::WitnessExponentNegative => write!(f, "witness has E < 0"),
            VerifyError::MissingCertificate => write!(f, "convergence verdict lacks a certificate"),
            VerifyError::CertificateShape => {
                write!(f, "certificate orthants do not match the canonical sweep")
            }
            VerifyError::OrthantLp { orthant, error } => {
                write!(f, "orthant {orthant} certificate fails: {error}")
            }
            VerifyError::OrthantValueNotNegative { orthant } => {
                write!(f, "orthant {orthant} maximum is not negative")
            }
            VerifyError::MaxValueMismatch => {
                write!(f, "recorded M differs from the orthant maxima")
            }
        }
    }
}

impl core::error::Error for VerifyError {}

/// Re-verify a verdict from scratch: witnesses by direct exponent
/// evaluation, certificates by rebuilding each orthant LP and substituting
/// the stored primal/dual pair into the optimality conditions.
pub fn verify_verdict(
    rd: &RootDatum,
    rep: &WeightRep,
    verdict: &L2Verdict,
) -> Result<(), VerifyError> {
    if verdict.metadata.group != rd.to_descriptor() || verdict.metadata.rep != rep.to_descriptor()
    {
        return Err(VerifyError::MetadataMismatch);
    }
    if !verdict.is_l2 {
        let Some(nu) = &verdict.witness else {
            return Err(VerifyError::MissingWitness);
        };
        if nu.iter().all(|&c| c == 0) {
            return Err(VerifyError::WitnessZero);
        }
        let mut gcd: i64 = 0;
        for &c in nu {
            gcd = gcd.gcd(&c);
        }
        if gcd != 1 {
            return Err(VerifyError::WitnessNotPrimitive);
        }
        if !rd.is_dominant(nu) {
            return Err(VerifyError::WitnessNotDominant);
        }
        let ef = ExponentForm::new(rd, rep).map_err(|_| VerifyError::MetadataMismatch)?;
        if ef.exponent_at(nu).is_negative() {
            return Err(VerifyError::WitnessExponentNegative);
        }
        return Ok(());
    }

    if rd.dim() == 0 {
        return if verdict.certificate.is_some() {
            Ok(())
        } else {
            Err(VerifyError::MissingCertificate)
        };
    }
    let Some(cert) = &verdict.certificate else {
        return Err(VerifyError::MissingCertificate);
    };
    let classes = torus_symmetry_classes(rd, rep);
    if cert.torus_classes != classes {
        return Err(VerifyError::CertificateShape);
    }
    let patterns = canonical_sign_patterns(&classes, rd.torus_rank());
    if cert.orthants.len() != patterns.len() {
        return Err(VerifyError::CertificateShape);
    }
    let weights = nonzero_weights(rep);
    let split = split_generators(rd);
    let mut max_seen: Option<Rat> = None;
    for (idx, (orthant, pattern)) in cert.orthants.iter().zip(&patterns).enumerate() {
        if orthant.torus_signs != *pattern {
            return Err(VerifyError::CertificateShape);
        }
        let gens = orthant_generators(&split, pattern);
        let lp = orthant_lp(rd, &weights, &gens);
        let opt = OptimalPoint {
            value: orthant.value.clone(),
            primal: orthant.primal.clone(),
            dual: orthant.dual.clone(),
        };
        check_optimal(&lp, &opt).map_err(|error| VerifyError::OrthantLp { orthant: idx, error })?;
        if !orthant.value.is_negative() {
            return Err(VerifyError::OrthantValueNotNegative { orthant: idx });
        }
        if max_seen.as_ref().is_none_or(|m| orthant.value > *m) {
            max_seen = Some(orthant.value.clone());
        }
    }
    if verdict.max_value != max_seen {
        return Err(VerifyError::MaxValueMismatch);
    }
    Ok(())
}

/// Closed-form special cases, never consulting the LP.
///
/// Applies to: torus-only groups (square-integrable iff the weights span the
/// rational character space), a single `A_1` factor with a Weyl-symmetric
/// multiset (the `sum_{n>0} n dim V_n > 2` criterion), and adjoint powers of
/// a semisimple group (square-integrable iff the number of copies is `> 1`).
pub fn closed_form_check(rd: &RootDatum, rep: &WeightRep) -> Option<bool> {
    if rep.dim != rd.dim() {
        return None;
    }
    if rd.ss_rank() == 0 {
        let rows: Vec<Vec<i64>> = rep.entries.iter().map(|(w, _)| w.clone()).collect();
        return Some(linalg::int_rank(&rows) == rd.torus_rank());
    }
    if rd.torus_rank() == 0
        && rd.spec.factors.len() == 1
        && rd.spec.factors[0].label == crate::rootdata::TypeLabel::A
        && rd.spec.factors[0].rank == 1
    {
        if !is_weyl_symmetric(rd, rep) {
            return None;
        }
        return Some(sl2_positive_weight_sum(rep) > 2);
    }
    if rd.torus_rank() == 0 {
        let adj = builtin_rep(rd, BuiltinKind::Adjoint).expect("adjoint exists for any group");
        let adj_dim = adj.total_dim();
        let total = rep.total_dim();
        if adj_dim > 0 && total.is_multiple_of(adj_dim) {
            let copies = total / adj_dim;
            if copies >= 1 && power(&adj, copies).ok().as_ref() == Some(rep) {
                return Some(copies > 1);
            }
        }
    }
    None
}

fn sl2_positive_weight_sum(rep: &WeightRep) -> i64 {
    rep.entries
        .iter()
        .filter(|(w, _)| w[0] > 0)
        .map(|(w, m)| w[0] * i64::try_from(*m).expect("multiplicity fits in i64"))
        .sum()
}

/// Very-good test for `[V/SL_2]`, equivalent to square-integrability:
/// `sum_{n>0} n dim V_n > 2`.
///
/// Panics unless `rep` is in single-`A_1` coordinates (dimension 1).
pub fn very_good_sl2(rep: &WeightRep) -> bool {
    assert_eq!(rep.dim, 1, "very_good_sl2 takes a representation of a single A_1");
    sl2_positive_weight_sum(rep) > 2
}

/// Very-good test for the projective configuration stack with `r` points:
/// the two-point locus needs codimension `r - 2 > 1` and the one-point locus
/// `r - 1 > 2`, i.e. `r >= 4`.
pub fn very_good_config(r: u64) -> bool {
    r.saturating_sub(2) > 1 && r.saturating_sub(1) > 2
}
