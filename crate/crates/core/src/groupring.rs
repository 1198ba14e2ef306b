//! Exact arithmetic in the integral group ring of a free group and in its
//! abelianization (integer Laurent polynomials), plus matrices over both.
//!
//! Coefficients are arbitrary-precision: free derivatives of long words
//! overflow fixed-width integers. Terms are stored in a canonical
//! graded-lexicographic order so printed output is byte-stable.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::words::{Endomorphism, ReducedWord};

/// An integer linear combination of reduced words (an element of the group
/// ring ZF_n). No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    rank: usize,
    terms: BTreeMap<ReducedWord, BigInt>,
}

impl GroupRingElem {
    pub fn zero(rank: usize) -> Self {
        GroupRingElem {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(ReducedWord::identity(rank), BigInt::one())
    }

    pub fn from_word(w: ReducedWord) -> Self {
        Self::monomial(w, BigInt::one())
    }

    pub fn monomial(w: ReducedWord, coeff: BigInt) -> Self {
        let rank = w.rank();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(w, coeff);
        }
        GroupRingElem { rank, terms }
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (ReducedWord, BigInt)>,
    ) -> Result<Self> {
        let mut out = GroupRingElem::zero(rank);
        for (w, c) in terms {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: (word, coefficient) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&ReducedWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &ReducedWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, w: ReducedWord, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &GroupRingElem) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupRingElem) -> Result<GroupRingElem> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GroupRingElem) -> Result<GroupRingElem> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GroupRingElem {
        GroupRingElem {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> GroupRingElem {
        if c.is_zero() {
            return GroupRingElem::zero(self.rank);
        }
        GroupRingElem {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Non-commutative product; word concatenation on singleton terms.
    pub fn mul(&self, other: &GroupRingElem) -> Result<GroupRingElem> {
        self.check_rank(other)?;
        let mut out = GroupRingElem::zero(self.rank);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.multiply(v)?, a * b);
            }
        }
        Ok(out)
    }

    /// The involution induced by `w -> w^-1` on group elements.
    pub fn bar(&self) -> GroupRingElem {
        GroupRingElem {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.invert(), c.clone()))
                .collect(),
        }
    }

    /// Sum of coefficients: the ring homomorphism to the integers.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Image in the Laurent-polynomial ring of the abelianization:
    /// each word maps to its exponent vector.
    pub fn abelianize(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(w.exponent_vector(), c.clone());
        }
        out
    }

    /// Entrywise transport through an endomorphism (`phi` applied to every word).
    pub fn apply_endo(&self, phi: &Endomorphism) -> Result<GroupRingElem> {
        let mut out = GroupRingElem::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(phi.apply(w)?, c.clone());
        }
        Ok(out)
    }
}

fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &BigInt,
    body: Option<String>,
) -> fmt::Result {
    let mag = coeff.abs();
    let sign_str = if coeff.is_negative() {
        if first {
            "-"
        } else {
            " - "
        }
    } else if first {
        ""
    } else {
        " + "
    };
    match body {
        None => write!(f, "{sign_str}{mag}"),
        Some(b) => {
            if mag.is_one() {
                write!(f, "{sign_str}{b}")
            } else {
                write!(f, "{sign_str}{mag}\u{b7}{b}")
            }
        }
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let body = if w.is_empty() {
                None
            } else {
                Some(w.to_string())
            };
            write_signed_term(f, i == 0, c, body)?;
        }
        Ok(())
    }
}

/// Exponent vector ordered graded-lexicographically (total absolute degree
/// first), so constants print before monomials of higher degree.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ExpVec(Vec<i64>);

impl ExpVec {
    fn grade(&self) -> i64 {
        self.0.iter().map(|e| e.abs()).sum()
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.grade(), &self.0).cmp(&(other.grade(), &other.0))
    }
}

/// An integer Laurent polynomial in `rank` commuting invertible variables,
/// keyed by exponent vector. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<ExpVec, BigInt>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], BigInt::one())
    }

    pub fn monomial(exps: Vec<i64>, coeff: BigInt) -> Self {
        let rank = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(ExpVec(exps), coeff);
        }
        LaurentPoly { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: (exponent vector, coefficient) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.0.as_slice(), c))
    }

    fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ExpVec(exps)) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigInt {
        self.terms
            .get(&ExpVec(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = LaurentPoly::zero(self.rank);
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                let e: Vec<i64> = e1.0.iter().zip(&e2.0).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        Ok(out)
    }

    /// Exponent negation: the image of the group-ring involution.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (ExpVec(e.0.iter().map(|x| -x).collect()), c.clone()))
                .collect(),
        }
    }

    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The units of the integer Laurent ring are exactly the signed monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().expect("one term").abs().is_one()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let vars: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &exp)| exp != 0)
                    .map(|(j, &exp)| {
                        if exp == 1 {
                            format!("x{}", j + 1)
                        } else {
                            format!("x{}^{}", j + 1, exp)
                        }
                    })
                    .collect();
            let body = if vars.is_empty() {
                None
            } else {
                Some(vars.join(" "))
            };
            write_signed_term(f, i == 0, c, body)?;
        }
        Ok(())
    }
}

/// A rectangular matrix over the group ring, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GRMatrix {
    rank: usize,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElem>,
}

impl GRMatrix {
    pub fn new(rank: usize, rows: usize, cols: usize, entries: Vec<GroupRingElem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: e.rank(),
                });
            }
        }
        Ok(GRMatrix {
            rank,
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(rank: usize, n: usize) -> Self {
        let mut entries = vec![GroupRingElem::zero(rank); n * n];
        for i in 0..n {
            entries[i * n + i] = GroupRingElem::one(rank);
        }
        GRMatrix {
            rank,
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-indexed position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElem {
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn mul(&self, other: &GRMatrix) -> Result<GRMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "matrix shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 1..=self.rows {
            for j in 1..=other.cols {
                let mut acc = GroupRingElem::zero(self.rank);
                for k in 1..=self.cols {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        GRMatrix::new(self.rank, self.rows, other.cols, entries)
    }

    /// Applies `phi` to every entry.
    pub fn transport(&self, phi: &Endomorphism) -> Result<GRMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.apply_endo(phi))
            .collect::<Result<Vec<_>>>()?;
        GRMatrix::new(self.rank, self.rows, self.cols, entries)
    }

    pub fn abelianize(&self) -> LaurentMatrix {
        LaurentMatrix {
            rank: self.rank,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(GroupRingElem::abelianize).collect(),
        }
    }

    /// Entrywise augmentation, as an integer matrix.
    pub fn augmentation(&self) -> Vec<Vec<BigInt>> {
        (1..=self.rows)
            .map(|i| {
                (1..=self.cols)
                    .map(|j| self.entry(i, j).augmentation())
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for GRMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            let row: Vec<String> = (1..=self.cols)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "[ {} ]", row.join(" , "))?;
        }
        Ok(())
    }
}

/// A rectangular matrix over the Laurent ring, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rank: usize,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn new(rank: usize, rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: e.rank(),
                });
            }
        }
        Ok(LaurentMatrix {
            rank,
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(rank: usize, n: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(rank); n * n];
        for i in 0..n {
            entries[i * n + i] = LaurentPoly::one(rank);
        }
        LaurentMatrix {
            rank,
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "matrix shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 1..=self.rows {
            for j in 1..=other.cols {
                let mut acc = LaurentPoly::zero(self.rank);
                for k in 1..=self.cols {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        LaurentMatrix::new(self.rank, self.rows, other.cols, entries)
    }

    /// Exact determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.det_unchecked())
    }

    fn det_unchecked(&self) -> LaurentPoly {
        let n = self.rows;
        match n {
            0 => LaurentPoly::one(self.rank),
            1 => self.entry(1, 1).clone(),
            _ => {
                let mut acc = LaurentPoly::zero(self.rank);
                for j in 1..=n {
                    let e = self.entry(1, j);
                    if e.is_zero() {
                        continue;
                    }
                    let minor_entries: Vec<LaurentPoly> = (2..=n)
                        .flat_map(|r| {
                            (1..=n)
                                .filter(|c| *c != j)
                                .map(move |c| self.entry(r, c).clone())
                        })
                        .collect();
                    let minor =
                        LaurentMatrix::new(self.rank, n - 1, n - 1, minor_entries).expect("shape");
                    let term = e.mul(&minor.det_unchecked()).expect("equal ranks");
                    acc = if j % 2 == 1 {
                        acc.add(&term).expect("equal ranks")
                    } else {
                        acc.sub(&term).expect("equal ranks")
                    };
                }
                acc
            }
        }
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            let row: Vec<String> = (1..=self.cols)
                .map(|j| self.entry(i, j).to_string())
                .collect();
            writeln!(f, "[ {} ]", row.join(" , "))?;
        }
        Ok(())
    }
}
