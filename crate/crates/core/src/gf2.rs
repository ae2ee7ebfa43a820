//! Exact linear algebra over `F_2^m` for multisign vectors.
//!
//! A multisign is an m-bit vector (m <= 64) packed into one machine word,
//! so addition is a single XOR and every element is its own inverse. All
//! constructions in the library reduce to span, rank and coset arithmetic
//! on these vectors.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, BitXor};
use std::str::FromStr;

use thiserror::Error;

/// Largest supported sign dimension: one machine word.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension {0} out of range 1..={MAX_DIM}")]
    DimensionRange(usize),
    #[error("cannot classify an empty set")]
    EmptySet,
    #[error("invalid multisign literal {0:?}")]
    BadLiteral(String),
}

/// An element of `F_2^m`, the label of an edge and the sum-type of circles.
///
/// Component 0 is the most significant bit of the text form, so the derived
/// ordering on `bits` agrees with lexicographic order on bit strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisign {
    dim: u8,
    bits: u64,
}

impl Multisign {
    /// The identity element `e = (0,...,0)` of dimension `m`.
    pub fn zero(m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} out of range");
        Multisign { dim: m as u8, bits: 0 }
    }

    /// Builds a multisign from a raw word; bits above `m` are masked off.
    pub fn from_bits(bits: u64, m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m), "dimension {m} out of range");
        let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        Multisign { dim: m as u8, bits: bits & mask }
    }

    /// The unit vector with component `i` set (component 0 is leftmost).
    pub fn unit(m: usize, i: usize) -> Self {
        assert!(i < m, "component {i} out of range for dimension {m}");
        Self::from_bits(1u64 << (m - 1 - i), m)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Component `i` in `{0, 1}`.
    pub fn component(&self, i: usize) -> u8 {
        assert!(i < self.dim());
        ((self.bits >> (self.dim() - 1 - i)) & 1) as u8
    }

    /// Componentwise XOR; `None` on dimension mismatch.
    pub fn checked_add(&self, other: &Multisign) -> Result<Multisign, Gf2Error> {
        if self.dim != other.dim {
            return Err(Gf2Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(Multisign { dim: self.dim, bits: self.bits ^ other.bits })
    }
}

impl Add for Multisign {
    type Output = Multisign;

    fn add(self, other: Multisign) -> Multisign {
        assert_eq!(self.dim, other.dim, "multisign dimension mismatch");
        Multisign { dim: self.dim, bits: self.bits ^ other.bits }
    }
}

impl BitXor for Multisign {
    type Output = Multisign;

    fn bitxor(self, other: Multisign) -> Multisign {
        // Addition over F_2^m is componentwise xor, so the two operators agree.
        #[allow(clippy::suspicious_arithmetic_impl)]
        {
            self + other
        }
    }
}

impl fmt::Display for Multisign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            write!(f, "{}", self.component(i))?;
        }
        Ok(())
    }
}

impl FromStr for Multisign {
    type Err = Gf2Error;

    /// Parses the fixed-width bit-string form, most significant bit first.
    fn from_str(s: &str) -> Result<Self, Gf2Error> {
        let m = s.len();
        if !(1..=MAX_DIM).contains(&m) {
            return Err(Gf2Error::BadLiteral(s.to_string()));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                _ => return Err(Gf2Error::BadLiteral(s.to_string())),
            }
        }
        Ok(Multisign { dim: m as u8, bits })
    }
}

/// A basis of a subspace of `F_2^m` in reduced row-echelon form.
///
/// Rows are kept sorted by pivot position (most significant first) and each
/// pivot column is zero in every other row, so reduction against the rows
/// decides span membership and yields canonical coset representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Basis {
    dim: u8,
    rows: Vec<Multisign>,
}

impl Gf2Basis {
    /// The rank-0 basis of dimension `m`.
    pub fn empty(m: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&m));
        Gf2Basis { dim: m as u8, rows: Vec::new() }
    }

    /// Reduced echelon basis of the span of `vs`. Empty input gives rank 0.
    pub fn span(vs: &[Multisign], m: usize) -> Result<Self, Gf2Error> {
        let mut basis = Gf2Basis::empty(m);
        for v in vs {
            if v.dim() != m {
                return Err(Gf2Error::DimensionMismatch(v.dim(), m));
            }
            basis.insert(*v);
        }
        Ok(basis)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Multisign] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Inserts `v`, returning true iff it extended the span.
    pub fn insert(&mut self, v: Multisign) -> bool {
        assert_eq!(v.dim(), self.dim(), "basis dimension mismatch");
        let v = self.reduce(v);
        if v.is_zero() {
            return false;
        }
        let pivot = 63 - v.bits().leading_zeros();
        // Clear the new pivot column in existing rows, then insert in order.
        for row in &mut self.rows {
            if (row.bits() >> pivot) & 1 == 1 {
                *row = *row + v;
            }
        }
        let pos = self
            .rows
            .partition_point(|row| row.bits().leading_zeros() < v.bits().leading_zeros());
        self.rows.insert(pos, v);
        true
    }

    /// Canonical coset representative of `v` modulo the span.
    ///
    /// The result is zero in every pivot column, which makes it the
    /// lexicographically smallest element of `v + span`.
    pub fn reduce(&self, mut v: Multisign) -> Multisign {
        assert_eq!(v.dim(), self.dim());
        for row in &self.rows {
            let pivot = 63 - row.bits().leading_zeros();
            if (v.bits() >> pivot) & 1 == 1 {
                v = v + *row;
            }
        }
        v
    }

    pub fn contains(&self, v: Multisign) -> bool {
        self.reduce(v).is_zero()
    }

    /// All `2^rank` elements of the span, in ascending order.
    pub fn enumerate(&self) -> Vec<Multisign> {
        assert!(self.rank() <= 24, "span too large to materialize");
        let mut out = Vec::with_capacity(1 << self.rank());
        for mask in 0u32..(1u32 << self.rank()) {
            let mut v = Multisign::zero(self.dim());
            for (i, row) in self.rows.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    v = v + *row;
                }
            }
            out.push(v);
        }
        out.sort();
        out
    }
}

/// Coefficients `a` with `sum a_i vs_i = target`, if `target` is in the span.
///
/// Gaussian elimination with recorded column operations; deterministic, the
/// first solution in pivot order.
pub fn solve_combination(
    vs: &[Multisign],
    target: Multisign,
) -> Result<Option<Vec<bool>>, Gf2Error> {
    let m = target.dim();
    // Pivot rows together with the input-index combination that produced them.
    let mut rows: Vec<(Multisign, Vec<bool>)> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        if v.dim() != m {
            return Err(Gf2Error::DimensionMismatch(v.dim(), m));
        }
        let mut w = *v;
        let mut combo = vec![false; vs.len()];
        combo[i] = true;
        for (row, row_combo) in &rows {
            let pivot = 63 - row.bits().leading_zeros();
            if (w.bits() >> pivot) & 1 == 1 {
                w = w + *row;
                for (c, rc) in combo.iter_mut().zip(row_combo) {
                    *c ^= rc;
                }
            }
        }
        if !w.is_zero() {
            rows.push((w, combo));
        }
    }
    let mut t = target;
    let mut combo = vec![false; vs.len()];
    for (row, row_combo) in &rows {
        let pivot = 63 - row.bits().leading_zeros();
        if (t.bits() >> pivot) & 1 == 1 {
            t = t + *row;
            for (c, rc) in combo.iter_mut().zip(row_combo) {
                *c ^= rc;
            }
        }
    }
    if t.is_zero() {
        Ok(Some(combo))
    } else {
        Ok(None)
    }
}

/// Classification of a realized multisign set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealizationVerdict {
    /// The set is all of `F_2^m`.
    Full,
    /// The set is the span of the basis (contains the identity).
    Subspace(Gf2Basis),
    /// The set is `offset + span(basis)` with `offset` not in the span.
    /// `offset` is the lexicographically smallest element of the set.
    Affine { offset: Multisign, basis: Gf2Basis },
    /// Not a coset of any subspace; the witness set is carried verbatim.
    Other(BTreeSet<Multisign>),
    /// No verdict could be established.
    Unknown,
}

impl RealizationVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            RealizationVerdict::Full => "Full",
            RealizationVerdict::Subspace(_) => "Subspace",
            RealizationVerdict::Affine { .. } => "Affine",
            RealizationVerdict::Other(_) => "Other",
            RealizationVerdict::Unknown => "Unknown",
        }
    }

    /// The realized set this verdict describes, if it determines one.
    pub fn realized_set(&self, m: usize) -> Option<BTreeSet<Multisign>> {
        match self {
            RealizationVerdict::Full => {
                let full = Gf2Basis::span(
                    &(0..m).map(|i| Multisign::unit(m, i)).collect::<Vec<_>>(),
                    m,
                )
                .expect("unit vectors share dimension");
                Some(full.enumerate().into_iter().collect())
            }
            RealizationVerdict::Subspace(b) => Some(b.enumerate().into_iter().collect()),
            RealizationVerdict::Affine { offset, basis } => {
                Some(basis.enumerate().into_iter().map(|v| v + *offset).collect())
            }
            RealizationVerdict::Other(set) => Some(set.clone()),
            RealizationVerdict::Unknown => None,
        }
    }

    /// Stable one-line text schema: `verdict=<kind> offset=<bits> basis=<bits,...>`.
    pub fn schema_line(&self, m: usize) -> String {
        let zero = Multisign::zero(m);
        match self {
            RealizationVerdict::Full => {
                let basis: Vec<String> =
                    (0..m).map(|i| Multisign::unit(m, i).to_string()).collect();
                format!("verdict=Full offset={zero} basis={}", basis.join(","))
            }
            RealizationVerdict::Subspace(b) => {
                let basis: Vec<String> = b.rows().iter().map(|r| r.to_string()).collect();
                format!("verdict=Subspace offset={zero} basis={}", basis.join(","))
            }
            RealizationVerdict::Affine { offset, basis } => {
                let rows: Vec<String> = basis.rows().iter().map(|r| r.to_string()).collect();
                format!("verdict=Affine offset={offset} basis={}", rows.join(","))
            }
            RealizationVerdict::Other(set) => {
                let elems: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                format!("verdict=Other offset={zero} set={}", elems.join(","))
            }
            RealizationVerdict::Unknown => "verdict=Unknown".to_string(),
        }
    }
}

/// Classifies a nonempty set of multisigns as full space, subspace, affine
/// subspace, or other.
pub fn classify_set(set: &BTreeSet<Multisign>, m: usize) -> Result<RealizationVerdict, Gf2Error> {
    if set.is_empty() {
        return Err(Gf2Error::EmptySet);
    }
    for v in set {
        if v.dim() != m {
            return Err(Gf2Error::DimensionMismatch(v.dim(), m));
        }
    }
    if m <= 24 && set.len() == 1usize << m {
        return Ok(RealizationVerdict::Full);
    }
    // Lexicographically smallest element is the canonical offset.
    let offset = *set.iter().next().expect("set is nonempty");
    let diffs: Vec<Multisign> = set.iter().map(|v| *v + offset).collect();
    let basis = Gf2Basis::span(&diffs, m)?;
    if set.len() == 1usize << basis.rank() {
        // The differences span a space of exactly |set| elements, so the set
        // is the whole coset offset + span.
        if offset.is_zero() {
            Ok(RealizationVerdict::Subspace(basis))
        } else {
            Ok(RealizationVerdict::Affine { offset, basis })
        }
    } else {
        Ok(RealizationVerdict::Other(set.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(s: &str) -> Multisign {
        s.parse().unwrap()
    }

    #[test]
    fn add_is_componentwise_xor() {
        assert_eq!(ms("01") + ms("10"), ms("11"));
        assert_eq!(ms("110") + ms("110"), ms("000"));
        assert_eq!(ms("101") + ms("000"), ms("101"));
    }

    #[test]
    fn add_rejects_dimension_mismatch() {
        assert_eq!(
            ms("01").checked_add(&ms("011")),
            Err(Gf2Error::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn text_round_trip_is_msb_first() {
        let v = ms("1010");
        assert_eq!(v.component(0), 1);
        assert_eq!(v.component(1), 0);
        assert_eq!(v.to_string(), "1010");
        assert_eq!(Multisign::unit(4, 0), ms("1000"));
    }

    #[test]
    fn span_basis_examples() {
        let b = Gf2Basis::span(&[ms("10"), ms("01"), ms("11")], 2).unwrap();
        assert_eq!(b.rank(), 2);
        let b = Gf2Basis::span(&[ms("110"), ms("110")], 3).unwrap();
        assert_eq!(b.rank(), 1);
        let b = Gf2Basis::span(&[], 3).unwrap();
        assert_eq!(b.rank(), 0);
    }

    #[test]
    fn span_basis_is_idempotent() {
        let b = Gf2Basis::span(&[ms("110"), ms("011"), ms("101")], 3).unwrap();
        let b2 = Gf2Basis::span(b.rows(), 3).unwrap();
        assert_eq!(b.rows(), b2.rows());
    }

    #[test]
    fn solve_combination_standard_basis() {
        let vs = [ms("100"), ms("010"), ms("001")];
        let a = solve_combination(&vs, ms("101")).unwrap().unwrap();
        assert_eq!(a, vec![true, false, true]);
    }

    #[test]
    fn solve_combination_not_in_span() {
        assert_eq!(solve_combination(&[ms("11")], ms("01")).unwrap(), None);
    }

    /// Brute-force oracle: try all 2^t coefficient vectors.
    fn brute_solve(vs: &[Multisign], target: Multisign) -> Option<Vec<bool>> {
        for mask in 0u32..(1 << vs.len()) {
            let mut acc = Multisign::zero(target.dim());
            for (i, v) in vs.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    acc = acc + *v;
                }
            }
            if acc == target {
                return Some((0..vs.len()).map(|i| (mask >> i) & 1 == 1).collect());
            }
        }
        None
    }

    #[test]
    fn solve_combination_agrees_with_brute_force() {
        let vs = [ms("110"), ms("011"), ms("101")];
        let target = ms("000");
        let a = solve_combination(&vs, target).unwrap().unwrap();
        let mut acc = Multisign::zero(3);
        for (i, v) in vs.iter().enumerate() {
            if a[i] {
                acc = acc + *v;
            }
        }
        assert_eq!(acc, target);
        assert!(brute_solve(&vs, target).is_some());
        // One of the two valid solutions, verified above by re-addition.
        assert!(a == vec![false, false, false] || a == vec![true, true, true]);
    }

    #[test]
    fn classify_set_examples() {
        let full: BTreeSet<_> = [ms("00"), ms("01"), ms("10"), ms("11")].into_iter().collect();
        assert_eq!(classify_set(&full, 2).unwrap(), RealizationVerdict::Full);

        let sub: BTreeSet<_> = [ms("00"), ms("11")].into_iter().collect();
        match classify_set(&sub, 2).unwrap() {
            RealizationVerdict::Subspace(b) => assert_eq!(b.rows(), &[ms("11")]),
            v => panic!("expected subspace, got {v:?}"),
        }

        let coset: BTreeSet<_> = [ms("01"), ms("10")].into_iter().collect();
        match classify_set(&coset, 2).unwrap() {
            RealizationVerdict::Affine { offset, basis } => {
                assert_eq!(offset, ms("01"));
                assert_eq!(basis.rows(), &[ms("11")]);
            }
            v => panic!("expected affine, got {v:?}"),
        }

        let other: BTreeSet<_> = [ms("00"), ms("01"), ms("10")].into_iter().collect();
        assert!(matches!(classify_set(&other, 2).unwrap(), RealizationVerdict::Other(_)));

        assert_eq!(classify_set(&BTreeSet::new(), 2), Err(Gf2Error::EmptySet));
    }

    #[test]
    fn verdict_schema_lines() {
        let sub: BTreeSet<_> = [ms("00"), ms("11")].into_iter().collect();
        let v = classify_set(&sub, 2).unwrap();
        assert_eq!(v.schema_line(2), "verdict=Subspace offset=00 basis=11");
    }

    #[test]
    fn verdict_realized_set_round_trips() {
        for set in [
            [ms("00"), ms("11")].into_iter().collect::<BTreeSet<_>>(),
            [ms("01"), ms("10")].into_iter().collect(),
            [ms("00"), ms("01"), ms("11")].into_iter().collect(),
        ] {
            let v = classify_set(&set, 2).unwrap();
            assert_eq!(v.realized_set(2).unwrap(), set);
        }
    }
}
