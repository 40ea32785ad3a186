//! Cartan-cell volumes: the exact counting side of the convergence series.
//!
//! For a dominant integer coweight `nu` the corresponding Cartan cell has
//! volume `|G/P_nu(F_q)| / q^{dim G/P_nu} * q^{<2rho, nu>}`, where `P_nu` is
//! the parabolic stabilizing `nu` and the flag count is the coset Poincare
//! polynomial of the Weyl group evaluated at `q`. Multiplying by the
//! determinant and negative-part factors of the weight multiset gives the
//! exact integral term `T(nu)`, a rational number times an optional factor
//! of `sqrt(q)`.
//!
//! The series term `q^{E(nu)}` and the integral term agree up to the coset
//! Poincare ratio, which is sandwiched between `1` and the Weyl order. This
//! module computes all three exactly, so the series layer can be
//! cross-checked against honest point counts.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exponent::ExponentForm;
use crate::reps::WeightRep;
use crate::rootdata::{Coweight, RootDatum, Weight};
use crate::Rat;

/// Default bound on the Weyl order before enumeration refuses to run.
pub const DEFAULT_WEYL_CAP: u64 = 1_000_000;

/// One Weyl element, stored as the images of the basis vectors on both
/// sides of the pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Columns of the coweight action: `coweight_columns[k] = w(e_k)`.
    pub coweight_columns: Vec<Coweight>,
    /// Columns of the weight action.
    pub weight_columns: Vec<Weight>,
    /// Minimal number of simple reflections producing the element.
    pub length: u32,
}

impl WeylElement {
    pub fn apply_coweight(&self, nu: &[i64]) -> Coweight {
        apply_columns(&self.coweight_columns, nu)
    }

    pub fn apply_weight(&self, weight: &[i64]) -> Weight {
        apply_columns(&self.weight_columns, weight)
    }
}

fn apply_columns(columns: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    assert_eq!(columns.len(), v.len(), "matrix/vector dimension mismatch");
    let mut out = vec![0i64; v.len()];
    for (col, &coeff) in columns.iter().zip(v) {
        if coeff != 0 {
            for (o, &c) in out.iter_mut().zip(col) {
                *o += coeff * c;
            }
        }
    }
    out
}

/// The full Weyl group with lengths, ordered by `(length, matrix)`.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    pub order: u64,
}

/// Errors from Weyl enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeylError {
    CapExceeded { order: BigInt, cap: u64 },
}

impl fmt::Display for WeylError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylError::CapExceeded { order, cap } => {
                write!(f, "Weyl group order {order} exceeds the cap {cap}")
            }
        }
    }
}

impl core::error::Error for WeylError {}

/// Enumerate the Weyl group by breadth-first closure under the simple
/// reflections, provided its tabulated order does not exceed `cap`.
pub fn weyl_elements(rd: &RootDatum, cap: u64) -> Result<WeylGroup, WeylError> {
    let order_big = rd.weyl_order();
    if order_big > BigInt::from(cap) {
        return Err(WeylError::CapExceeded { order: order_big, cap });
    }
    let order = order_big.to_u64().expect("order fits after the cap check");

    let d = rd.dim();
    let identity: Vec<Vec<i64>> = (0..d)
        .map(|k| {
            let mut e = vec![0i64; d];
            e[k] = 1;
            e
        })
        .collect();
    let mut seen: BTreeSet<Vec<Coweight>> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut elements = vec![WeylElement {
        coweight_columns: identity.clone(),
        weight_columns: identity,
        length: 0,
    }];
    let mut frontier: Vec<usize> = vec![0];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &idx in &frontier {
            for j in 0..rd.ss_rank() {
                let cw: Vec<Coweight> = elements[idx]
                    .coweight_columns
                    .iter()
                    .map(|col| rd.reflect_coweight(j, col))
                    .collect();
                if seen.insert(cw.clone()) {
                    let wt: Vec<Weight> = elements[idx]
                        .weight_columns
                        .iter()
                        .map(|col| rd.reflect_weight(j, col))
                        .collect();
                    elements.push(WeylElement {
                        coweight_columns: cw,
                        weight_columns: wt,
                        length: depth,
                    });
                    next.push(elements.len() - 1);
                }
            }
        }
        frontier = next;
    }
    assert_eq!(
        elements.len() as u64, order,
        "generated group size disagrees with the tabulated order"
    );
    elements.sort_by(|a, b| {
        (a.length, &a.coweight_columns).cmp(&(b.length, &b.coweight_columns))
    });
    Ok(WeylGroup { elements, order })
}

/// Parabolic attached to a dominant coweight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicData {
    pub nu: Coweight,
    /// Simple roots pairing to zero with `nu` (indices into the Cartan).
    pub stabilized_simples: Vec<usize>,
    /// Dimension of `G/P`: the number of positive roots moved by `nu`.
    pub dim_gp: u32,
    /// Coefficients of the coset Poincare polynomial
    /// `sum_{w in W^P} t^{l(w)}`; index = exponent.
    pub coset_poincare: Vec<u64>,
}

impl ParabolicData {
    /// Evaluate the coset Poincare polynomial at an integer.
    pub fn poincare_at(&self, q: u64) -> BigInt {
        let q = BigInt::from(q);
        let mut acc = BigInt::zero();
        for &c in self.coset_poincare.iter().rev() {
            acc = acc * &q + BigInt::from(c);
        }
        acc
    }
}

/// Errors from the volume layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VolumeError {
    DimensionMismatch { expected: usize, got: usize },
    NotDominant { nu: Coweight },
    BadQ { q: u64 },
    Weyl(WeylError),
}

impl fmt::Display for VolumeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VolumeError::DimensionMismatch { expected, got } => {
                write!(f, "coweight or representation has dimension {got}, group needs {expected}")
            }
            VolumeError::NotDominant { nu } => {
                write!(f, "coweight {nu:?} is not dominant")
            }
            VolumeError::BadQ { q } => {
                write!(f, "residue cardinality must be at least 2, got {q}")
            }
            VolumeError::Weyl(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for VolumeError {}

impl From<WeylError> for VolumeError {
    fn from(e: WeylError) -> Self {
        VolumeError::Weyl(e)
    }
}

fn check_nu(rd: &RootDatum, nu: &[i64]) -> Result<(), VolumeError> {
    if nu.len() != rd.dim() {
        return Err(VolumeError::DimensionMismatch { expected: rd.dim(), got: nu.len() });
    }
    if !rd.is_dominant(nu) {
        return Err(VolumeError::NotDominant { nu: nu.to_vec() });
    }
    Ok(())
}

/// Compute the parabolic data of a dominant coweight: stabilized simple
/// roots, minimal coset representatives, and their length generating
/// polynomial.
pub fn parabolic_data(rd: &RootDatum, nu: &[i64], cap: u64) -> Result<ParabolicData, VolumeError> {
    check_nu(rd, nu)?;
    let weyl = weyl_elements(rd, cap)?;
    parabolic_from_weyl(rd, nu, &weyl)
}

fn parabolic_from_weyl(
    rd: &RootDatum,
    nu: &[i64],
    weyl: &WeylGroup,
) -> Result<ParabolicData, VolumeError> {
    let stabilized: Vec<usize> = (0..rd.ss_rank())
        .filter(|&j| rd.simple_root_pairing(j, nu) == 0)
        .collect();
    let dim_gp = rd
        .positive_roots
        .iter()
        .filter(|alpha| rd.pairing(alpha, nu) > 0)
        .count() as u32;

    let positives: BTreeSet<&Weight> = rd.positive_roots.iter().collect();
    let is_positive_root = |v: &Weight| -> bool {
        if positives.contains(v) {
            return true;
        }
        let neg: Weight = v.iter().map(|c| -c).collect();
        assert!(positives.contains(&neg), "Weyl image of a root must be a root");
        false
    };

    let mut histogram: BTreeMap<u32, u64> = BTreeMap::new();
    let mut stabilizer = 0u64;
    for w in &weyl.elements {
        let minimal = stabilized
            .iter()
            .all(|&i| is_positive_root(&w.apply_weight(&rd.simple_root(i))));
        if minimal {
            *histogram.entry(w.length).or_insert(0) += 1;
        }
        if w.apply_coweight(nu) == nu {
            stabilizer += 1;
        }
    }
    let degree = *histogram.keys().next_back().expect("identity is always minimal");
    assert_eq!(
        degree, dim_gp,
        "longest coset representative must match the cell dimension"
    );
    let mut coset_poincare = vec![0u64; degree as usize + 1];
    for (len, count) in histogram {
        coset_poincare[len as usize] = count;
    }
    let coset_count: u64 = coset_poincare.iter().sum();
    assert_eq!(
        coset_count * stabilizer,
        weyl.order,
        "coset count times stabilizer order must equal the Weyl order"
    );
    Ok(ParabolicData {
        nu: nu.to_vec(),
        stabilized_simples: stabilized,
        dim_gp,
        coset_poincare,
    })
}

/// Number of `F_q` points of the partial flag variety `G/P_nu`.
pub fn flag_point_count(
    rd: &RootDatum,
    nu: &[i64],
    q: u64,
    cap: u64,
) -> Result<BigInt, VolumeError> {
    if q < 2 {
        return Err(VolumeError::BadQ { q });
    }
    Ok(parabolic_data(rd, nu, cap)?.poincare_at(q))
}

/// Exact integer power of `q` with rational fallback for negative exponents.
fn q_pow(q: u64, e: i64) -> Rat {
    let p = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Volume of the Cartan cell indexed by `nu`:
/// `|G/P_nu(F_q)| / q^{dim G/P_nu} * q^{<2rho, nu>}`.
pub fn cartan_cell_volume(
    rd: &RootDatum,
    nu: &[i64],
    q: u64,
    cap: u64,
) -> Result<Rat, VolumeError> {
    if q < 2 {
        return Err(VolumeError::BadQ { q });
    }
    let para = parabolic_data(rd, nu, cap)?;
    let flag = para.poincare_at(q);
    let exponent = rd.pairing(&rd.two_rho, nu) - i64::from(para.dim_gp);
    Ok(Rat::from_integer(flag) * q_pow(q, exponent))
}

/// A rational number times an optional factor of `sqrt(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtQVal {
    pub rational: Rat,
    pub times_sqrt_q: bool,
}

impl SqrtQVal {
    pub fn approx(&self, q: u64) -> f64 {
        let base = self.rational.to_f64().expect("finite rational");
        if self.times_sqrt_q {
            base * libm::sqrt(q as f64)
        } else {
            base
        }
    }

    /// Exact rendering, e.g. `3/2` or `1/4*sqrt(2)`.
    pub fn render(&self, q: u64) -> String {
        if self.times_sqrt_q {
            alloc::format!("{}*sqrt({q})", self.rational)
        } else {
            alloc::format!("{}", self.rational)
        }
    }
}

struct HalfPower {
    flag: BigInt,
    /// Twice the exponent of `q` multiplying the flag count.
    two_exp: i64,
}

fn integral_term_parts(
    rd: &RootDatum,
    rep: &WeightRep,
    nu: &[i64],
    q: u64,
    cap: u64,
) -> Result<(HalfPower, ParabolicData), VolumeError> {
    if rep.dim != rd.dim() {
        return Err(VolumeError::DimensionMismatch { expected: rd.dim(), got: rep.dim });
    }
    if q < 2 {
        return Err(VolumeError::BadQ { q });
    }
    let para = parabolic_data(rd, nu, cap)?;
    let flag = para.poincare_at(q);
    let ef = ExponentForm::new(rd, rep).expect("dimensions already checked");
    let two_det = (ef.det_exponent(nu) * Rat::from_integer(2.into()))
        .to_integer()
        .to_i64()
        .expect("determinant exponent fits in i64");
    let two_exp = 2 * (rd.pairing(&rd.two_rho, nu) - i64::from(para.dim_gp))
        + two_det
        + 2 * ef.negative_part(nu);
    Ok((HalfPower { flag, two_exp }, para))
}

fn half_power_value(parts: &HalfPower, q: u64) -> SqrtQVal {
    let k = parts.two_exp.div_euclid(2);
    let rem = parts.two_exp.rem_euclid(2);
    SqrtQVal {
        rational: Rat::from_integer(parts.flag.clone()) * q_pow(q, k),
        times_sqrt_q: rem == 1,
    }
}

/// Exact value of the orbital integral term
/// `T(nu) = cell_volume(nu) * q^{det_exponent(nu) + negative_part(nu)}`.
pub fn integral_term(
    rd: &RootDatum,
    rep: &WeightRep,
    nu: &[i64],
    q: u64,
    cap: u64,
) -> Result<SqrtQVal, VolumeError> {
    let (parts, _) = integral_term_parts(rd, rep, nu, q, cap)?;
    Ok(half_power_value(&parts, q))
}

/// The ratio `T(nu) / q^{E(nu)}`, always a plain rational in
/// `[1, |W|]`: the half-integer parts of the two exponents cancel, leaving
/// the coset Poincare polynomial normalized by its top term.
pub fn sandwich_ratio(
    rd: &RootDatum,
    rep: &WeightRep,
    nu: &[i64],
    q: u64,
    cap: u64,
) -> Result<Rat, VolumeError> {
    let (parts, _) = integral_term_parts(rd, rep, nu, q, cap)?;
    Ok(checked_ratio(rd, rep, nu, q, &parts))
}

fn checked_ratio(rd: &RootDatum, rep: &WeightRep, nu: &[i64], q: u64, parts: &HalfPower) -> Rat {
    let ef = ExponentForm::new(rd, rep).expect("dimensions already checked");
    let shift = parts.two_exp - ef.two_e(nu);
    assert_eq!(shift % 2, 0, "sqrt(q) factors must cancel in the ratio");
    let ratio = Rat::from_integer(parts.flag.clone()) * q_pow(q, shift / 2);
    assert!(ratio >= Rat::one(), "ratio below the lower sandwich bound");
    assert!(
        ratio <= Rat::from_integer(rd.weyl_order()),
        "ratio above the Weyl-order sandwich bound"
    );
    ratio
}

/// Everything the volume cross-check produces for one `(nu, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CellVolumeReport {
    pub nu: Coweight,
    pub q: u64,
    pub flag_count: BigInt,
    pub cell_volume: Rat,
    pub integral_term: SqrtQVal,
    pub sandwich_ratio: Rat,
}

impl fmt::Display for CellVolumeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu=")?;
        if self.nu.is_empty() {
            write!(f, "-")?;
        } else {
            for (i, c) in self.nu.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
        }
        write!(
            f,
            " q={} flag_count={} cell_volume={} integral_term={} ratio={}",
            self.q,
            self.flag_count,
            self.cell_volume,
            self.integral_term.render(self.q),
            self.sandwich_ratio,
        )
    }
}

/// Compute the full volume report for one dominant coweight.
pub fn cell_volume_report(
    rd: &RootDatum,
    rep: &WeightRep,
    nu: &[i64],
    q: u64,
    cap: u64,
) -> Result<CellVolumeReport, VolumeError> {
    let (parts, para) = integral_term_parts(rd, rep, nu, q, cap)?;
    let cell_exponent = rd.pairing(&rd.two_rho, nu) - i64::from(para.dim_gp);
    let cell_volume = Rat::from_integer(parts.flag.clone()) * q_pow(q, cell_exponent);
    let ratio = checked_ratio(rd, rep, nu, q, &parts);
    Ok(CellVolumeReport {
        nu: nu.to_vec(),
        q,
        flag_count: parts.flag.clone(),
        cell_volume,
        integral_term: half_power_value(&parts, q),
        sandwich_ratio: ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::parse_rep;
    use crate::rootdata::root_datum_from_descriptor;
    use crate::series::dominant_points;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn rank_one_projective_line() {
        let rd = root_datum_from_descriptor("A1").unwrap();
        let rep = parse_rep(&rd, "adjoint").unwrap();
        for m in 1..=4 {
            let report = cell_volume_report(&rd, &rep, &[m], 2, DEFAULT_WEYL_CAP).unwrap();
            assert_eq!(report.flag_count, BigInt::from(3), "m = {m}");
            assert_eq!(
                report.cell_volume,
                Rat::new(3.into(), 2.into()) * q_pow(2, 2 * m),
                "m = {m}"
            );
            // the integral term is flat in m: the cell growth exactly
            // cancels the exponent decay on the boundary case
            assert_eq!(report.integral_term, SqrtQVal {
                rational: Rat::new(3.into(), 2.into()),
                times_sqrt_q: false,
            });
            assert_eq!(report.sandwich_ratio, Rat::new(3.into(), 2.into()));
        }
        let at_one = cell_volume_report(&rd, &rep, &[1], 2, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(at_one.cell_volume, rat(6));
        assert_eq!(
            alloc::format!("{at_one}"),
            "nu=1 q=2 flag_count=3 cell_volume=6 integral_term=3/2 ratio=3/2"
        );
    }

    #[test]
    fn zero_coweight_has_unit_cell() {
        let rd = root_datum_from_descriptor("A1").unwrap();
        let rep = parse_rep(&rd, "adjoint").unwrap();
        let report = cell_volume_report(&rd, &rep, &[0], 2, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(report.flag_count, BigInt::one());
        assert_eq!(report.cell_volume, rat(1));
        assert_eq!(report.integral_term.rational, rat(1));
        assert_eq!(report.sandwich_ratio, rat(1));
        let para = parabolic_data(&rd, &[0], DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(para.stabilized_simples, vec![0]);
        assert_eq!(para.dim_gp, 0);
        assert_eq!(para.coset_poincare, vec![1]);
    }

    #[test]
    fn rank_two_full_flag_and_wall() {
        let rd = root_datum_from_descriptor("A2").unwrap();
        // regular: the full flag variety of SL_3 over F_2
        let para = parabolic_data(&rd, &[1, 1], DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(para.coset_poincare, vec![1, 2, 2, 1]);
        assert_eq!(para.dim_gp, 3);
        assert_eq!(flag_point_count(&rd, &[1, 1], 2, DEFAULT_WEYL_CAP).unwrap(), BigInt::from(21));
        // wall (primitive point of the alpha_2 = 0 face): the projective
        // plane
        let para = parabolic_data(&rd, &[2, 1], DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(para.stabilized_simples, vec![1]);
        assert_eq!(para.coset_poincare, vec![1, 1, 1]);
        assert_eq!(para.dim_gp, 2);
        assert_eq!(flag_point_count(&rd, &[2, 1], 2, DEFAULT_WEYL_CAP).unwrap(), BigInt::from(7));
        assert_eq!(flag_point_count(&rd, &[2, 1], 3, DEFAULT_WEYL_CAP).unwrap(), BigInt::from(13));
        // cell volume at the regular point
        let vol = cartan_cell_volume(&rd, &[1, 1], 2, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(vol, Rat::new(21.into(), 8.into()) * q_pow(2, 4));
    }

    #[test]
    fn torus_sqrt_factor() {
        let rd = root_datum_from_descriptor("T1").unwrap();
        let rep = parse_rep(&rd, "weights[(1):1]").unwrap();
        let report = cell_volume_report(&rd, &rep, &[-3], 2, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(report.flag_count, BigInt::one());
        assert_eq!(report.cell_volume, rat(1));
        // T = q^{3/2 - 3} = 2^{-3/2}
        assert_eq!(report.integral_term, SqrtQVal {
            rational: Rat::new(1.into(), 4.into()),
            times_sqrt_q: true,
        });
        assert_eq!(report.integral_term.render(2), "1/4*sqrt(2)");
        assert!((report.integral_term.approx(2) - 0.35355339059327373).abs() < 1e-16);
        assert_eq!(report.sandwich_ratio, rat(1));
    }

    #[test]
    fn weyl_orders_match_the_tabulated_values() {
        for (group, order) in [
            ("A1", 2u64),
            ("A2", 6),
            ("A3", 24),
            ("B2", 8),
            ("C3", 48),
            ("G2", 12),
            ("A1 x A1 x T2", 4),
            ("T3", 1),
        ] {
            let rd = root_datum_from_descriptor(group).unwrap();
            let weyl = weyl_elements(&rd, DEFAULT_WEYL_CAP).unwrap();
            assert_eq!(weyl.order, order, "{group}");
            assert_eq!(weyl.elements.len() as u64, order, "{group}");
            // exactly one longest element, of length = number of positive
            // roots
            let max_len = weyl.elements.iter().map(|w| w.length).max().unwrap();
            assert_eq!(max_len as usize, rd.positive_roots.len(), "{group}");
            let longest: Vec<_> =
                weyl.elements.iter().filter(|w| w.length == max_len).collect();
            assert_eq!(longest.len(), 1, "{group}");
        }
    }

    #[test]
    fn lengths_count_inversions() {
        let rd = root_datum_from_descriptor("B2").unwrap();
        let weyl = weyl_elements(&rd, DEFAULT_WEYL_CAP).unwrap();
        let positives: BTreeSet<&Weight> = rd.positive_roots.iter().collect();
        for w in &weyl.elements {
            let inversions = rd
                .positive_roots
                .iter()
                .filter(|alpha| {
                    let image = w.apply_weight(alpha);
                    !positives.contains(&image)
                })
                .count();
            assert_eq!(inversions as u32, w.length);
        }
    }

    #[test]
    fn weyl_preserves_the_pairing() {
        let rd = root_datum_from_descriptor("G2").unwrap();
        let weyl = weyl_elements(&rd, DEFAULT_WEYL_CAP).unwrap();
        let weight = vec![2, -1];
        let nu = vec![3, 1];
        let base = rd.pairing(&weight, &nu);
        for w in &weyl.elements {
            assert_eq!(rd.pairing(&w.apply_weight(&weight), &w.apply_coweight(&nu)), base);
        }
    }

    #[test]
    fn cap_refuses_large_groups() {
        let rd = root_datum_from_descriptor("E8").unwrap();
        let err = weyl_elements(&rd, DEFAULT_WEYL_CAP).unwrap_err();
        assert_eq!(err, WeylError::CapExceeded {
            order: BigInt::from(696729600u64),
            cap: DEFAULT_WEYL_CAP,
        });
        let rd = root_datum_from_descriptor("A2").unwrap();
        assert!(weyl_elements(&rd, 5).is_err());
        assert!(weyl_elements(&rd, 6).is_ok());
    }

    #[test]
    fn sandwich_bounds_hold_across_points() {
        for group in ["A1", "A2", "B2", "G2"] {
            let rd = root_datum_from_descriptor(group).unwrap();
            let rep = parse_rep(&rd, "adjoint").unwrap();
            let order = Rat::from_integer(rd.weyl_order());
            for nu in dominant_points(&rd, 3) {
                for q in [2u64, 3, 5] {
                    let ratio = sandwich_ratio(&rd, &rep, &nu, q, DEFAULT_WEYL_CAP).unwrap();
                    assert!(ratio >= Rat::one(), "{group} {nu:?} q={q}");
                    assert!(ratio <= order, "{group} {nu:?} q={q}");
                }
            }
        }
    }

    #[test]
    fn term_equals_cell_times_exponent_factor() {
        // numeric agreement of the two ways to assemble T
        let rd = root_datum_from_descriptor("A2 x T1").unwrap();
        let rep = parse_rep(&rd, "config(standard, 1)").unwrap();
        let ef = ExponentForm::new(&rd, &rep).unwrap();
        for nu in dominant_points(&rd, 2) {
            let report = cell_volume_report(&rd, &rep, &nu, 3, DEFAULT_WEYL_CAP).unwrap();
            let cell = report.cell_volume.to_f64().unwrap();
            let factor_exp = ef.det_exponent(&nu).to_f64().unwrap()
                + ef.negative_part(&nu) as f64;
            let expected = cell * libm::pow(3.0, factor_exp);
            let got = report.integral_term.approx(3);
            assert!(
                (got - expected).abs() <= expected.abs() * 1e-12 + 1e-12,
                "nu = {nu:?}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let rd = root_datum_from_descriptor("A1").unwrap();
        let rep = parse_rep(&rd, "adjoint").unwrap();
        assert_eq!(
            cell_volume_report(&rd, &rep, &[-1], 2, DEFAULT_WEYL_CAP),
            Err(VolumeError::NotDominant { nu: vec![-1] })
        );
        assert_eq!(
            cell_volume_report(&rd, &rep, &[1, 2], 2, DEFAULT_WEYL_CAP),
            Err(VolumeError::DimensionMismatch { expected: 1, got: 2 })
        );
        assert_eq!(
            cell_volume_report(&rd, &rep, &[1], 1, DEFAULT_WEYL_CAP),
            Err(VolumeError::BadQ { q: 1 })
        );
    }

    #[test]
    fn trivial_group_report() {
        let rd = root_datum_from_descriptor("T0").unwrap();
        let rep = parse_rep(&rd, "zero").unwrap();
        let report = cell_volume_report(&rd, &rep, &[], 2, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(report.flag_count, BigInt::one());
        assert_eq!(report.cell_volume, rat(1));
        assert_eq!(report.sandwich_ratio, rat(1));
        assert_eq!(
            alloc::format!("{report}"),
            "nu=- q=2 flag_count=1 cell_volume=1 integral_term=1 ratio=1"
        );
    }
}
