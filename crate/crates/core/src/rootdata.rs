//! Root data for split reductive groups of the form `G_ss x T`, where `G_ss`
//! is a product of simply-connected simple factors and `T` is a split torus.
//!
//! Coordinate conventions, fixed once for the whole crate:
//! * weights (characters) are written in the fundamental-weight basis on each
//!   simple factor and in the standard character basis on the torus;
//! * coweights (cocharacters) are written in the simple-coroot basis on each
//!   simple factor and in the standard cocharacter basis on the torus;
//! * with those bases the canonical pairing is the plain integer dot product.
//!
//! The Cartan matrix entry `cartan[i][j]` is `<alpha_j, alpha_i^vee>`, so the
//! fundamental-weight coordinates of the simple root `alpha_j` form column
//! `j`, and a coweight `nu` is dominant exactly when every column pairs
//! nonnegatively with it.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg;
use crate::Rat;

/// A weight in the coordinates described in the module docs.
pub type Weight = Vec<i64>;

/// A coweight in the coordinates described in the module docs.
pub type Coweight = Vec<i64>;

/// Cartan type of a simple factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub fn letter(self) -> char {
        match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        }
    }

    /// Permitted ranks, chosen so that every listed type is distinct: the
    /// low-rank coincidences (`C_2 = B_2`, `D_3 = A_3`, ...) are rejected.
    fn allowed_ranks(self) -> &'static str {
        match self {
            TypeLabel::A => "n >= 1",
            TypeLabel::B => "n >= 2",
            TypeLabel::C => "n >= 3",
            TypeLabel::D => "n >= 4",
            TypeLabel::E => "n in {6, 7, 8}",
            TypeLabel::F => "n = 4",
            TypeLabel::G => "n = 2",
        }
    }

    fn rank_ok(self, rank: usize) -> bool {
        match self {
            TypeLabel::A => rank >= 1,
            TypeLabel::B => rank >= 2,
            TypeLabel::C => rank >= 3,
            TypeLabel::D => rank >= 4,
            TypeLabel::E => (6..=8).contains(&rank),
            TypeLabel::F => rank == 4,
            TypeLabel::G => rank == 2,
        }
    }
}

/// One simple factor, e.g. `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleFactor {
    pub label: TypeLabel,
    pub rank: usize,
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label.letter(), self.rank)
    }
}

/// A group shape: an ordered list of simple factors plus a split torus.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupSpec {
    pub factors: Vec<SimpleFactor>,
    pub torus_rank: usize,
}

impl GroupSpec {
    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn dim(&self) -> usize {
        self.semisimple_rank() + self.torus_rank
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for factor in &self.factors {
            if !first {
                write!(f, " x ")?;
            }
            write!(f, "{factor}")?;
            first = false;
        }
        if self.torus_rank > 0 || first {
            if !first {
                write!(f, " x ")?;
            }
            write!(f, "T{}", self.torus_rank)?;
        }
        Ok(())
    }
}

/// Errors from group-descriptor parsing or root-datum construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupError {
    /// Unexpected character or premature end of the descriptor.
    Syntax { pos: usize, expected: &'static str },
    /// A type letter outside `A`..`G`, `T`.
    UnknownLabel { pos: usize, label: char },
    /// Factor rank outside the allowed range for its type.
    RankOutOfRange { factor: String, allowed: &'static str },
    /// A cocharacter of `SL_n` must have coordinates summing to zero.
    DiagonalNotTraceless { sum: i64 },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::Syntax { pos, expected } => {
                write!(f, "syntax error at byte {pos}: expected {expected}")
            }
            GroupError::UnknownLabel { pos, label } => {
                write!(f, "unknown type label '{label}' at byte {pos}")
            }
            GroupError::RankOutOfRange { factor, allowed } => {
                write!(f, "rank out of range for factor {factor}: allowed {allowed}")
            }
            GroupError::DiagonalNotTraceless { sum } => {
                write!(f, "diagonal cocharacter entries must sum to 0, got {sum}")
            }
        }
    }
}

impl core::error::Error for GroupError {}

/// Parse a group descriptor such as `"A1 x T3"` or `"b2 x a2 x t1"`.
///
/// Factors are separated by `x`, case and surrounding whitespace are ignored,
/// and multiple torus factors sum their ranks.
pub fn parse_group(text: &str) -> Result<GroupSpec, GroupError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut spec = GroupSpec::default();
    let mut saw_torus = false;

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return Err(GroupError::Syntax {
                pos,
                expected: "a factor such as A2 or T1",
            });
        }
        let label_pos = pos;
        let letter = bytes[pos].to_ascii_uppercase() as char;
        pos += 1;
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if pos == digits_start {
            return Err(GroupError::Syntax {
                pos,
                expected: "a rank after the type letter",
            });
        }
        let rank: usize = text[digits_start..pos].parse().map_err(|_| GroupError::Syntax {
            pos: digits_start,
            expected: "a rank that fits in a machine integer",
        })?;
        if letter == 'T' {
            spec.torus_rank += rank;
            saw_torus = true;
        } else {
            let label = match letter {
                'A' => TypeLabel::A,
                'B' => TypeLabel::B,
                'C' => TypeLabel::C,
                'D' => TypeLabel::D,
                'E' => TypeLabel::E,
                'F' => TypeLabel::F,
                'G' => TypeLabel::G,
                other => {
                    return Err(GroupError::UnknownLabel {
                        pos: label_pos,
                        label: other,
                    })
                }
            };
            let factor = SimpleFactor { label, rank };
            if !label.rank_ok(rank) {
                return Err(GroupError::RankOutOfRange {
                    factor: format!("{factor}"),
                    allowed: label.allowed_ranks(),
                });
            }
            spec.factors.push(factor);
        }
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos].eq_ignore_ascii_case(&b'x') {
            pos += 1;
        } else {
            return Err(GroupError::Syntax {
                pos,
                expected: "'x' between factors",
            });
        }
    }
    if spec.factors.is_empty() && !saw_torus {
        return Err(GroupError::Syntax {
            pos: 0,
            expected: "at least one factor",
        });
    }
    Ok(spec)
}

/// Root datum of `G_ss x T` in the fixed coordinates, with everything the
/// decision and volume layers need precomputed.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub spec: GroupSpec,
    /// Block-diagonal Cartan matrix of the semisimple part;
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots as full-dimension weights (torus coordinates zero),
    /// grouped by factor and sorted by height inside each factor.
    pub positive_roots: Vec<Weight>,
    /// Generators of the dominant cone: per factor the primitive fundamental
    /// coweights, then `+e_j, -e_j` for each torus coordinate.
    pub cone_generators: Vec<Coweight>,
    /// Sum of the positive roots: `2` in every fundamental-weight coordinate.
    pub two_rho: Weight,
    /// Half-open coordinate ranges `[start, end)` of each simple factor.
    pub factor_spans: Vec<(usize, usize)>,
}

impl RootDatum {
    /// Total coweight-space dimension `d`.
    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn ss_rank(&self) -> usize {
        self.spec.semisimple_rank()
    }

    pub fn torus_rank(&self) -> usize {
        self.spec.torus_rank
    }

    /// Canonical pairing of a weight with a coweight.
    ///
    /// Panics if either vector has the wrong dimension.
    pub fn pairing(&self, weight: &[i64], nu: &[i64]) -> i64 {
        assert_eq!(weight.len(), self.dim(), "pairing: weight has wrong dimension");
        assert_eq!(nu.len(), self.dim(), "pairing: coweight has wrong dimension");
        weight.iter().zip(nu).map(|(&w, &n)| w * n).sum()
    }

    /// Pairing `<alpha_j, nu>` with the `j`-th simple root, `j < ss_rank()`.
    pub fn simple_root_pairing(&self, j: usize, nu: &[i64]) -> i64 {
        assert!(j < self.ss_rank(), "simple_root_pairing: no such simple root");
        assert_eq!(nu.len(), self.dim(), "simple_root_pairing: coweight has wrong dimension");
        (0..self.ss_rank()).map(|i| self.cartan[i][j] * nu[i]).sum()
    }

    /// Whether `nu` lies in the dominant cone (torus coordinates are free).
    pub fn is_dominant(&self, nu: &[i64]) -> bool {
        (0..self.ss_rank()).all(|j| self.simple_root_pairing(j, nu) >= 0)
    }

    /// The simple root `alpha_j` as a full-dimension weight.
    pub fn simple_root(&self, j: usize) -> Weight {
        assert!(j < self.ss_rank(), "simple_root: no such simple root");
        let mut out = vec![0i64; self.dim()];
        for (o, row) in out.iter_mut().zip(&self.cartan) {
            *o = row[j];
        }
        out
    }

    /// Simple reflection `s_j` applied to a weight.
    pub fn reflect_weight(&self, j: usize, weight: &[i64]) -> Weight {
        assert_eq!(weight.len(), self.dim(), "reflect_weight: wrong dimension");
        let coeff = weight[j];
        let mut out = weight.to_vec();
        for (o, row) in out.iter_mut().zip(&self.cartan) {
            *o -= coeff * row[j];
        }
        out
    }

    /// Simple reflection `s_j` applied to a coweight.
    pub fn reflect_coweight(&self, j: usize, nu: &[i64]) -> Coweight {
        let coeff = self.simple_root_pairing(j, nu);
        let mut out = nu.to_vec();
        out[j] -= coeff;
        out
    }

    /// Order of the Weyl group, from the classical product formulas.
    pub fn weyl_order(&self) -> BigInt {
        self.spec
            .factors
            .iter()
            .map(|f| factor_weyl_order(*f))
            .product()
    }

    /// Canonical descriptor string that `parse_group` accepts.
    pub fn to_descriptor(&self) -> String {
        format!("{}", self.spec)
    }
}

fn factorial(n: usize) -> BigInt {
    let mut out = BigInt::one();
    for k in 2..=n {
        out *= BigInt::from(k);
    }
    out
}

fn factor_weyl_order(f: SimpleFactor) -> BigInt {
    let n = f.rank;
    match f.label {
        TypeLabel::A => factorial(n + 1),
        TypeLabel::B | TypeLabel::C => (BigInt::one() << n) * factorial(n),
        TypeLabel::D => (BigInt::one() << (n - 1)) * factorial(n),
        TypeLabel::G => BigInt::from(12),
        TypeLabel::F => BigInt::from(1152),
        TypeLabel::E => match n {
            6 => BigInt::from(51_840u64),
            7 => BigInt::from(2_903_040u64),
            _ => BigInt::from(696_729_600u64),
        },
    }
}

/// Cartan matrix of one simple factor, entry `[i][j] = <alpha_j, alpha_i^vee>`.
fn factor_cartan(f: SimpleFactor) -> Vec<Vec<i64>> {
    let n = f.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut chain = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match f.label {
        TypeLabel::A => {
            for i in 1..n {
                chain(i - 1, i);
            }
        }
        TypeLabel::B => {
            for i in 1..n {
                chain(i - 1, i);
            }
            // last root short: <alpha_{n-1}, alpha_n^vee> = -2
            c[n - 1][n - 2] = -2;
        }
        TypeLabel::C => {
            for i in 1..n {
                chain(i - 1, i);
            }
            // last root long: <alpha_n, alpha_{n-1}^vee> = -2
            c[n - 2][n - 1] = -2;
        }
        TypeLabel::D => {
            for i in 1..n - 1 {
                chain(i - 1, i);
            }
            chain(n - 3, n - 1);
        }
        TypeLabel::G => {
            c[0][1] = -1;
            c[1][0] = -3;
        }
        TypeLabel::F => {
            chain(0, 1);
            chain(1, 2);
            chain(2, 3);
            c[2][1] = -2;
        }
        TypeLabel::E => {
            // Chain 1-3-4-5-6(-7-8) with node 2 attached to node 4,
            // in 0-based coordinates.
            chain(0, 2);
            chain(2, 3);
            chain(3, 4);
            chain(4, 5);
            if n >= 7 {
                chain(5, 6);
            }
            if n == 8 {
                chain(6, 7);
            }
            chain(1, 3);
        }
    }
    c
}

/// Positive roots of one factor in its local fundamental-weight coordinates,
/// computed as the reflection closure of the simple roots.
fn factor_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    // Track each root both in fundamental-weight coordinates (`fw`) and in
    // simple-root coordinates (`sr`); positivity is read from `sr`.
    let mut seen: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    for j in 0..n {
        let fw: Vec<i64> = (0..n).map(|i| cartan[i][j]).collect();
        let mut sr = vec![0i64; n];
        sr[j] = 1;
        seen.push((fw, sr));
        queue.push(j);
    }
    let mut head = 0;
    while head < queue.len() {
        let idx = queue[head];
        head += 1;
        for j in 0..n {
            let (fw, sr) = &seen[idx];
            let coeff = fw[j];
            let mut nfw = fw.clone();
            for i in 0..n {
                nfw[i] -= coeff * cartan[i][j];
            }
            let mut nsr = sr.clone();
            nsr[j] -= coeff;
            if !seen.iter().any(|(_, s)| *s == nsr) {
                seen.push((nfw, nsr));
                queue.push(seen.len() - 1);
            }
        }
    }
    let mut positives: Vec<(Vec<i64>, Vec<i64>)> = seen
        .into_iter()
        .filter(|(_, sr)| sr.iter().all(|&c| c >= 0))
        .collect();
    positives.sort_by_key(|(_, sr)| {
        let height: i64 = sr.iter().sum();
        (height, core::cmp::Reverse(sr.clone()))
    });
    positives.into_iter().map(|(fw, _)| fw).collect()
}

/// Primitive fundamental coweights of one factor in simple-coroot
/// coordinates: the rows of the inverse Cartan matrix with denominators
/// cleared and content divided out.
fn factor_cone_generators(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let rational: Vec<Vec<Rat>> = cartan
        .iter()
        .map(|row| row.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    let inverse = linalg::invert(&rational).expect("Cartan matrices are invertible");
    (0..n)
        .map(|i| {
            let row = &inverse[i];
            let denom = linalg::common_denominator(row);
            let cleared: Vec<BigInt> = row
                .iter()
                .map(|x| {
                    let scaled = x * Rat::from_integer(denom.clone());
                    debug_assert!(scaled.denom().is_one());
                    scaled.numer().clone()
                })
                .collect();
            let mut gcd = BigInt::zero();
            for x in &cleared {
                gcd = num_integer::Integer::gcd(&gcd, x);
            }
            cleared
                .iter()
                .map(|x| {
                    let reduced = x / &gcd;
                    i64::try_from(&reduced).expect("generator coordinates fit in i64")
                })
                .collect()
        })
        .collect()
}

/// Build the full root datum for a validated group shape.
pub fn build_root_datum(spec: &GroupSpec) -> Result<RootDatum, GroupError> {
    for f in &spec.factors {
        if !f.label.rank_ok(f.rank) {
            return Err(GroupError::RankOutOfRange {
                factor: format!("{f}"),
                allowed: f.label.allowed_ranks(),
            });
        }
    }
    let ss = spec.semisimple_rank();
    let d = spec.dim();
    let mut cartan = vec![vec![0i64; ss]; ss];
    let mut positive_roots: Vec<Weight> = Vec::new();
    let mut cone_generators: Vec<Coweight> = Vec::new();
    let mut factor_spans = Vec::new();
    let mut offset = 0usize;
    for f in &spec.factors {
        let block = factor_cartan(*f);
        let n = f.rank;
        for i in 0..n {
            for j in 0..n {
                cartan[offset + i][offset + j] = block[i][j];
            }
        }
        for local in factor_positive_roots(&block) {
            let mut root = vec![0i64; d];
            root[offset..offset + n].copy_from_slice(&local);
            positive_roots.push(root);
        }
        for local in factor_cone_generators(&block) {
            let mut gen = vec![0i64; d];
            gen[offset..offset + n].copy_from_slice(&local);
            cone_generators.push(gen);
        }
        factor_spans.push((offset, offset + n));
        offset += n;
    }
    for j in 0..spec.torus_rank {
        for sign in [1i64, -1] {
            let mut gen = vec![0i64; d];
            gen[ss + j] = sign;
            cone_generators.push(gen);
        }
    }
    let mut two_rho = vec![0i64; d];
    two_rho[..ss].fill(2);
    Ok(RootDatum {
        spec: spec.clone(),
        cartan,
        positive_roots,
        cone_generators,
        two_rho,
        factor_spans,
    })
}

/// Convenience: parse a descriptor and build its root datum in one step.
pub fn root_datum_from_descriptor(text: &str) -> Result<RootDatum, GroupError> {
    build_root_datum(&parse_group(text)?)
}

/// Convert an `SL_n` cocharacter given as an integer diagonal
/// `(nu_1, ..., nu_n)` with zero sum into simple-coroot coordinates
/// `(m_1, ..., m_{n-1})`, `m_i = nu_1 + ... + nu_i`.
///
/// The diagonal is dominant (non-increasing) exactly when the result is a
/// dominant coweight of `A_{n-1}`.
pub fn type_a_coroot_from_diagonal(diag: &[i64]) -> Result<Vec<i64>, GroupError> {
    let sum: i64 = diag.iter().sum();
    if sum != 0 {
        return Err(GroupError::DiagonalNotTraceless { sum });
    }
    let mut out = Vec::with_capacity(diag.len().saturating_sub(1));
    let mut acc = 0i64;
    for &x in &diag[..diag.len().saturating_sub(1)] {
        acc += x;
        out.push(acc);
    }
    Ok(out)
}

/// Inverse of [`type_a_coroot_from_diagonal`]: recover the integer diagonal
/// of length `m.len() + 1` from simple-coroot coordinates.
pub fn type_a_diagonal_from_coroot(m: &[i64]) -> Vec<i64> {
    let n = m.len() + 1;
    let mut out = Vec::with_capacity(n);
    let mut prev = 0i64;
    for &x in m {
        out.push(x - prev);
        prev = x;
    }
    out.push(-prev);
    out
}
