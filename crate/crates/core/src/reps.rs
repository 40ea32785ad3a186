//! Weight multisets of finite-dimensional representations, the builtin
//! example representations, and the textual descriptor grammar for them.
//!
//! A representation enters the decision procedure only through its weight
//! multiset, so that is all [`WeightRep`] stores: distinct weights in the
//! crate's fixed coordinates together with positive multiplicities, kept in
//! lexicographic order so every downstream report is reproducible
//! byte-for-byte.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::rootdata::{build_root_datum, GroupError, GroupSpec, RootDatum, Weight};

/// Weight multiset of a representation, in canonical (lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightRep {
    /// Distinct weights with positive multiplicities, sorted lexicographically.
    pub entries: Vec<(Weight, u64)>,
    /// Ambient coordinate dimension `d` (needed when `entries` is empty).
    pub dim: usize,
}

impl WeightRep {
    pub fn total_dim(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Render as a `weights[...]` descriptor that [`parse_rep`] accepts.
    pub fn to_descriptor(&self) -> String {
        let mut out = String::from("weights[");
        for (i, (w, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push('(');
            for (j, c) in w.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{c}");
            }
            let _ = write!(out, "):{m}");
        }
        out.push(']');
        out
    }
}

/// Errors from representation construction or descriptor parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepError {
    /// A weight vector's length differs from the root datum dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// Multiplicities must be at least 1.
    ZeroMultiplicity,
    /// A multiplicity computation exceeded the integer range.
    MultiplicityOverflow,
    /// Builtin representation not defined for this group.
    UnsupportedBuiltin { kind: String, group: String },
    /// Combination of representations over different-dimensional root data.
    MixedRootData,
    /// Descriptor syntax error at a byte position.
    Syntax { pos: usize, expected: &'static str },
    /// Unreadable or out-of-range number at a byte position.
    Number { pos: usize },
    /// `config(...)` used over a group that is not `ss x T_r`.
    ConfigShape { expected: String, got: String },
    /// Error while building an auxiliary root datum.
    Group(GroupError),
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::DimensionMismatch { expected, got } => {
                write!(f, "weight vector has length {got}, expected {expected}")
            }
            RepError::ZeroMultiplicity => write!(f, "multiplicities must be positive"),
            RepError::MultiplicityOverflow => write!(f, "multiplicity overflow"),
            RepError::UnsupportedBuiltin { kind, group } => {
                write!(f, "builtin representation '{kind}' is not defined for group {group}")
            }
            RepError::MixedRootData => write!(f, "representations are over different root data"),
            RepError::Syntax { pos, expected } => {
                write!(f, "syntax error at byte {pos}: expected {expected}")
            }
            RepError::Number { pos } => write!(f, "bad number at byte {pos}"),
            RepError::ConfigShape { expected, got } => {
                write!(f, "config(..) needs group {expected}, got {got}")
            }
            RepError::Group(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for RepError {}

impl From<GroupError> for RepError {
    fn from(e: GroupError) -> Self {
        RepError::Group(e)
    }
}

fn canonicalize(map: BTreeMap<Weight, u64>, dim: usize) -> WeightRep {
    WeightRep {
        entries: map.into_iter().filter(|(_, m)| *m > 0).collect(),
        dim,
    }
}

/// Build a representation from raw (weight, multiplicity) pairs; duplicate
/// weights merge by summing multiplicities.
pub fn rep_from_weights(rd: &RootDatum, raw: &[(Weight, u64)]) -> Result<WeightRep, RepError> {
    let d = rd.dim();
    let mut map: BTreeMap<Weight, u64> = BTreeMap::new();
    for (w, m) in raw {
        if w.len() != d {
            return Err(RepError::DimensionMismatch { expected: d, got: w.len() });
        }
        if *m == 0 {
            return Err(RepError::ZeroMultiplicity);
        }
        let slot = map.entry(w.clone()).or_insert(0);
        *slot = slot.checked_add(*m).ok_or(RepError::MultiplicityOverflow)?;
    }
    Ok(canonicalize(map, d))
}

/// Builtin representation kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    /// Vector representation of a single classical factor.
    Standard,
    /// All roots plus the zero weight with multiplicity the semisimple rank.
    Adjoint,
    /// Irreducible `(n+1)`-dimensional representation of a single `A_1`.
    Sl2Irrep(u32),
    /// The zero representation.
    Zero,
}

impl fmt::Display for BuiltinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinKind::Standard => write!(f, "standard"),
            BuiltinKind::Adjoint => write!(f, "adjoint"),
            BuiltinKind::Sl2Irrep(n) => write!(f, "sl2({n})"),
            BuiltinKind::Zero => write!(f, "zero"),
        }
    }
}

/// Full Weyl orbit of a weight under the simple reflections.
fn weyl_orbit(rd: &RootDatum, start: Weight) -> Vec<Weight> {
    let mut seen: Vec<Weight> = vec![start];
    let mut head = 0;
    while head < seen.len() {
        let current = seen[head].clone();
        head += 1;
        for j in 0..rd.ss_rank() {
            let image = rd.reflect_weight(j, &current);
            if !seen.contains(&image) {
                seen.push(image);
            }
        }
    }
    seen
}

/// Construct a builtin representation over `rd`.
pub fn builtin_rep(rd: &RootDatum, kind: BuiltinKind) -> Result<WeightRep, RepError> {
    let unsupported = || RepError::UnsupportedBuiltin {
        kind: format!("{kind}"),
        group: rd.to_descriptor(),
    };
    match kind {
        BuiltinKind::Zero => Ok(WeightRep { entries: Vec::new(), dim: rd.dim() }),
        BuiltinKind::Adjoint => {
            let mut raw: Vec<(Weight, u64)> = Vec::new();
            for root in &rd.positive_roots {
                raw.push((root.clone(), 1));
                raw.push((root.iter().map(|&c| -c).collect(), 1));
            }
            let ss = rd.ss_rank() as u64;
            if ss > 0 {
                raw.push((vec![0; rd.dim()], ss));
            }
            rep_from_weights(rd, &raw)
        }
        BuiltinKind::Sl2Irrep(n) => {
            use crate::rootdata::TypeLabel;
            let single_a1 = rd.torus_rank() == 0
                && rd.spec.factors.len() == 1
                && rd.spec.factors[0].label == TypeLabel::A
                && rd.spec.factors[0].rank == 1;
            if !single_a1 {
                return Err(unsupported());
            }
            let n = i64::from(n);
            let raw: Vec<(Weight, u64)> = (0..=n).map(|k| (vec![n - 2 * k], 1)).collect();
            rep_from_weights(rd, &raw)
        }
        BuiltinKind::Standard => {
            use crate::rootdata::TypeLabel;
            if rd.torus_rank() != 0 || rd.spec.factors.len() != 1 {
                return Err(unsupported());
            }
            let factor = rd.spec.factors[0];
            let classical = matches!(
                factor.label,
                TypeLabel::A | TypeLabel::B | TypeLabel::C | TypeLabel::D
            );
            if !classical {
                return Err(unsupported());
            }
            let mut highest = vec![0i64; rd.dim()];
            highest[0] = 1;
            let mut raw: Vec<(Weight, u64)> =
                weyl_orbit(rd, highest).into_iter().map(|w| (w, 1)).collect();
            if factor.label == TypeLabel::B {
                // odd orthogonal vector representation carries the zero weight
                raw.push((vec![0; rd.dim()], 1));
            }
            rep_from_weights(rd, &raw)
        }
    }
}

/// Direct sum of finitely many representations over the same root datum.
pub fn direct_sum(reps: &[WeightRep]) -> Result<WeightRep, RepError> {
    let Some(first) = reps.first() else {
        return Err(RepError::MixedRootData);
    };
    let d = first.dim;
    let mut map: BTreeMap<Weight, u64> = BTreeMap::new();
    for rep in reps {
        if rep.dim != d {
            return Err(RepError::MixedRootData);
        }
        for (w, m) in &rep.entries {
            let slot = map.entry(w.clone()).or_insert(0);
            *slot = slot.checked_add(*m).ok_or(RepError::MultiplicityOverflow)?;
        }
    }
    Ok(canonicalize(map, d))
}

/// Tensor product: convolution of the weight multisets.
pub fn tensor(a: &WeightRep, b: &WeightRep) -> Result<WeightRep, RepError> {
    if a.dim != b.dim {
        return Err(RepError::MixedRootData);
    }
    let mut map: BTreeMap<Weight, u64> = BTreeMap::new();
    for (wa, ma) in &a.entries {
        for (wb, mb) in &b.entries {
            let w: Weight = wa.iter().zip(wb).map(|(&x, &y)| x + y).collect();
            let m = ma.checked_mul(*mb).ok_or(RepError::MultiplicityOverflow)?;
            let slot = map.entry(w).or_insert(0);
            *slot = slot.checked_add(m).ok_or(RepError::MultiplicityOverflow)?;
        }
    }
    Ok(canonicalize(map, a.dim))
}

/// Dual representation: every weight negated.
pub fn dual(a: &WeightRep) -> WeightRep {
    let map: BTreeMap<Weight, u64> = a
        .entries
        .iter()
        .map(|(w, m)| (w.iter().map(|&c| -c).collect(), *m))
        .collect();
    canonicalize(map, a.dim)
}

/// `r`-fold direct sum; `r = 0` gives the zero representation.
pub fn power(a: &WeightRep, r: u64) -> Result<WeightRep, RepError> {
    let mut map: BTreeMap<Weight, u64> = BTreeMap::new();
    for (w, m) in &a.entries {
        let scaled = m.checked_mul(r).ok_or(RepError::MultiplicityOverflow)?;
        map.insert(w.clone(), scaled);
    }
    Ok(canonicalize(map, a.dim))
}

/// Configuration-space representation: `r` copies of `base`, the `j`-th copy
/// twisted by the `j`-th character of a fresh rank-`r` torus.
///
/// Returns the enlarged root datum `ss x T_r` together with the
/// representation whose entries are `(lambda, e_j)` for each base entry
/// `lambda` and each `j`.
pub fn configuration_rep(
    ss_spec: &GroupSpec,
    base: &WeightRep,
    r: usize,
) -> Result<(RootDatum, WeightRep), RepError> {
    if ss_spec.torus_rank != 0 {
        return Err(RepError::ConfigShape {
            expected: String::from("a semisimple group (no torus factor)"),
            got: format!("{ss_spec}"),
        });
    }
    if base.dim != ss_spec.dim() {
        return Err(RepError::DimensionMismatch { expected: ss_spec.dim(), got: base.dim });
    }
    if r < 1 {
        return Err(RepError::ConfigShape {
            expected: String::from("a positive number of copies"),
            got: String::from("r = 0"),
        });
    }
    let mut spec = ss_spec.clone();
    spec.torus_rank = r;
    let rd = build_root_datum(&spec)?;
    let ss = ss_spec.dim();
    let mut raw: Vec<(Weight, u64)> = Vec::with_capacity(base.entries.len() * r);
    for j in 0..r {
        for (w, m) in &base.entries {
            let mut ext = vec![0i64; ss + r];
            ext[..ss].copy_from_slice(w);
            ext[ss + j] = 1;
            raw.push((ext, *m));
        }
    }
    let rep = rep_from_weights(&rd, &raw)?;
    Ok((rd, rep))
}

/// Whether reflecting any entry's semisimple coordinates by a simple
/// reflection lands on an entry of equal multiplicity.
///
/// This is a lint, not a validity requirement: the decision procedure
/// consumes arbitrary weight multisets.
pub fn is_weyl_symmetric(rd: &RootDatum, rep: &WeightRep) -> bool {
    if rep.dim != rd.dim() {
        return false;
    }
    let lookup: BTreeMap<&Weight, u64> = rep.entries.iter().map(|(w, m)| (w, *m)).collect();
    for (w, m) in &rep.entries {
        for j in 0..rd.ss_rank() {
            let image = rd.reflect_weight(j, w);
            if lookup.get(&image) != Some(m) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Descriptor grammar
// ---------------------------------------------------------------------------

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn bytes(&self) -> &[u8] {
        self.text.as_bytes()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes().get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8, expected: &'static str) -> Result<(), RepError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(RepError::Syntax { pos: self.pos, expected })
        }
    }

    fn ident(&mut self) -> Result<(String, usize), RepError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.bytes()[self.pos].is_ascii_alphanumeric() || self.bytes()[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(RepError::Syntax { pos: start, expected: "a representation name" });
        }
        Ok((self.text[start..self.pos].to_ascii_lowercase(), start))
    }

    fn integer(&mut self) -> Result<i64, RepError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes().get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| RepError::Number { pos: start })
    }

    fn unsigned(&mut self) -> Result<u64, RepError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.bytes()[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| RepError::Number { pos: start })
    }
}

/// Parse a representation descriptor over a fixed root datum.
///
/// Grammar: `adjoint`, `standard`, `zero`, `sl2(n)`, `sum(rep, rep, ...)`,
/// `pow(rep, r)`, `tensor(rep, rep)`, `dual(rep)`, `config(rep, r)` and
/// weight literals `weights[(c1,...,cd):m, ...]`. `config` may appear only
/// at top level and requires the group to be `ss x T_r`.
pub fn parse_rep(rd: &RootDatum, text: &str) -> Result<WeightRep, RepError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let rep = if peek_keyword(&mut p)? == "config" {
        parse_config(rd, &mut p)?
    } else {
        parse_expr(rd, &mut p)?
    };
    p.skip_ws();
    if p.pos != text.len() {
        return Err(RepError::Syntax { pos: p.pos, expected: "end of descriptor" });
    }
    Ok(rep)
}

fn peek_keyword(p: &mut Parser<'_>) -> Result<String, RepError> {
    let save = p.pos;
    let (word, _) = p.ident()?;
    p.pos = save;
    Ok(word)
}

fn parse_config(rd: &RootDatum, p: &mut Parser<'_>) -> Result<WeightRep, RepError> {
    let (_, _) = p.ident()?; // consume "config"
    p.expect(b'(', "'(' after config")?;
    let ss_spec = GroupSpec { factors: rd.spec.factors.clone(), torus_rank: 0 };
    let ss_rd = build_root_datum(&ss_spec)?;
    let base = parse_expr(&ss_rd, p)?;
    p.expect(b',', "',' before the copy count")?;
    let copies_pos = p.pos;
    let r = p.unsigned()?;
    p.expect(b')', "')' closing config")?;
    if r < 1 {
        return Err(RepError::Number { pos: copies_pos });
    }
    let r = usize::try_from(r).map_err(|_| RepError::Number { pos: copies_pos })?;
    if rd.torus_rank() != r {
        return Err(RepError::ConfigShape {
            expected: format!("{} x T{}", ss_spec, r),
            got: rd.to_descriptor(),
        });
    }
    let (built_rd, rep) = configuration_rep(&ss_spec, &base, r)?;
    debug_assert_eq!(built_rd.spec, rd.spec);
    Ok(rep)
}

fn parse_expr(rd: &RootDatum, p: &mut Parser<'_>) -> Result<WeightRep, RepError> {
    let (word, word_pos) = p.ident()?;
    match word.as_str() {
        "adjoint" => builtin_rep(rd, BuiltinKind::Adjoint),
        "standard" => builtin_rep(rd, BuiltinKind::Standard),
        "zero" => builtin_rep(rd, BuiltinKind::Zero),
        "sl2" => {
            p.expect(b'(', "'(' after sl2")?;
            let pos = p.pos;
            let n = p.unsigned()?;
            let n = u32::try_from(n).map_err(|_| RepError::Number { pos })?;
            p.expect(b')', "')' closing sl2")?;
            builtin_rep(rd, BuiltinKind::Sl2Irrep(n))
        }
        "sum" => {
            p.expect(b'(', "'(' after sum")?;
            let mut parts = vec![parse_expr(rd, p)?];
            while p.peek() == Some(b',') {
                p.pos += 1;
                parts.push(parse_expr(rd, p)?);
            }
            p.expect(b')', "')' closing sum")?;
            direct_sum(&parts)
        }
        "pow" => {
            p.expect(b'(', "'(' after pow")?;
            let base = parse_expr(rd, p)?;
            p.expect(b',', "',' before the exponent")?;
            let r = p.unsigned()?;
            p.expect(b')', "')' closing pow")?;
            power(&base, r)
        }
        "tensor" => {
            p.expect(b'(', "'(' after tensor")?;
            let a = parse_expr(rd, p)?;
            p.expect(b',', "',' between tensor factors")?;
            let b = parse_expr(rd, p)?;
            p.expect(b')', "')' closing tensor")?;
            tensor(&a, &b)
        }
        "dual" => {
            p.expect(b'(', "'(' after dual")?;
            let a = parse_expr(rd, p)?;
            p.expect(b')', "')' closing dual")?;
            Ok(dual(&a))
        }
        "config" => Err(RepError::Syntax {
            pos: word_pos,
            expected: "config(...) only at the top level",
        }),
        "weights" => {
            p.expect(b'[', "'[' after weights")?;
            let mut raw: Vec<(Weight, u64)> = Vec::new();
            if p.peek() != Some(b']') {
                loop {
                    p.expect(b'(', "'(' opening a weight vector")?;
                    let mut coords = Vec::new();
                    if p.peek() != Some(b')') {
                        loop {
                            coords.push(p.integer()?);
                            match p.peek() {
                                Some(b',') => {
                                    p.pos += 1;
                                }
                                _ => break,
                            }
                        }
                    }
                    p.expect(b')', "')' closing a weight vector")?;
                    p.expect(b':', "':' before the multiplicity")?;
                    let m = p.unsigned()?;
                    raw.push((coords, m));
                    match p.peek() {
                        Some(b',') => {
                            p.pos += 1;
                        }
                        _ => break,
                    }
                }
            }
            p.expect(b']', "']' closing weights")?;
            rep_from_weights(rd, &raw)
        }
        _ => Err(RepError::Syntax {
            pos: word_pos,
            expected: "one of adjoint, standard, zero, sl2, sum, pow, tensor, dual, config, weights",
        }),
    }
}
