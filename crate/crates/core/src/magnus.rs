//! Truncated non-commutative Magnus expansion, lower-central-series degrees,
//! Lyndon bases of the free Lie ring, and coordinates of homogeneous Lie
//! elements.
//!
//! The expansion sends `x_i` to `1 + X_i` in the ring of integer power series
//! in non-commuting variables, truncated at a total-degree bound. A word lies
//! in the k-th lower-central-series term exactly when its expansion is
//! `1 + (terms of degree >= k)`, which turns membership and coset tests into
//! finite computations. Cosets of `Gamma^m` inside `Gamma^k` are represented
//! canonically by the series truncated below degree `m`; only the first
//! (degree-k) projection onto the free Lie ring is exposed as coordinates,
//! since the finer splitting of the quotient is not canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::words::ReducedWord;

/// A monomial in the non-commuting variables `X_1..X_n`, stored as the
/// sequence of (1-indexed) variable indices. Ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.len(), &self.0).cmp(&(other.0.len(), &other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.0 {
            write!(f, "X{i}")?;
        }
        Ok(())
    }
}

/// An integer power series in `X_1..X_n` truncated at total degree `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    rank: usize,
    bound: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl TruncSeries {
    pub fn one(rank: usize, bound: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(Vec::new()), BigInt::one());
        TruncSeries { rank, bound, terms }
    }

    pub fn zero(rank: usize, bound: usize) -> Self {
        TruncSeries {
            rank,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial(Vec::new()))
                .is_some_and(|c| c.is_one())
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The homogeneous part of the given degree, as monomial/coefficient pairs.
    pub fn homogeneous_part(&self, degree: usize) -> BTreeMap<Monomial, BigInt> {
        self.terms
            .iter()
            .filter(|(m, _)| m.degree() == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }

    /// Smallest positive degree with a nonzero term, if any.
    pub fn lowest_positive_degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .filter(|(m, _)| m.degree() > 0)
            .map(|(m, _)| m.degree())
            .min()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() || m.degree() > self.bound {
            return;
        }
        match self.terms.entry(m) {
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

    fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        if self.bound != other.bound {
            return Err(Error::LevelMismatch {
                left: self.bound,
                right: other.bound,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Truncated product: monomials concatenate, degrees above the bound drop.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let mut out = TruncSeries::zero(self.rank, self.bound);
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                if m1.degree() + m2.degree() > self.bound {
                    continue;
                }
                let mut m = m1.0.clone();
                m.extend_from_slice(&m2.0);
                out.add_term(Monomial(m), a * b);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() {
                if i == 0 {
                    "-"
                } else {
                    " - "
                }
            } else if i == 0 {
                ""
            } else {
                " + "
            };
            if m.degree() == 0 {
                write!(f, "{sign}{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{mag}\u{b7}{m}")?;
            }
        }
        Ok(())
    }
}

/// Expansion of a single letter: `1 + X_i` for a generator, the truncated
/// alternating geometric series for its inverse.
fn letter_series(rank: usize, bound: usize, gen: usize, sign: i8) -> TruncSeries {
    let mut s = TruncSeries::one(rank, bound);
    if sign > 0 {
        s.add_term(Monomial(vec![gen]), BigInt::one());
    } else {
        let mut coeff = BigInt::one();
        for d in 1..=bound {
            coeff = -coeff;
            s.add_term(Monomial(vec![gen; d]), coeff.clone());
        }
    }
    s
}

/// The Magnus expansion of a word, truncated at total degree `bound >= 1`.
pub fn magnus(w: &ReducedWord, bound: usize) -> Result<TruncSeries> {
    if bound == 0 {
        return Err(Error::invalid("degree bound must be at least 1"));
    }
    let mut out = TruncSeries::one(w.rank(), bound);
    for l in w.letters() {
        let s = letter_series(w.rank(), bound, l.gen(), l.sign());
        out = out.mul(&s)?;
    }
    Ok(out)
}

/// Position of a word in the lower central series, as detected by the Magnus
/// expansion truncated at a caller-chosen bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcsDegree {
    /// The smallest degree with a nonzero expansion term.
    Finite(usize),
    /// All terms up to the bound vanish but the word is nonempty;
    /// the degree is at least the stored value (bound + 1).
    AtLeast(usize),
    /// The empty word lies in every term of the series.
    Infinite,
}

impl LcsDegree {
    /// Whether the degree is at least `k`.
    pub fn at_least(&self, k: usize) -> bool {
        match self {
            LcsDegree::Finite(d) => *d >= k,
            LcsDegree::AtLeast(d) => *d >= k,
            LcsDegree::Infinite => true,
        }
    }
}

impl fmt::Display for LcsDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcsDegree::Finite(d) => write!(f, "{d}"),
            LcsDegree::AtLeast(d) => write!(f, ">= {d}"),
            LcsDegree::Infinite => write!(f, "infinite"),
        }
    }
}

/// Smallest `k` such that the expansion of `w` has a nonzero degree-`k` term,
/// computed with truncation bound `bound >= 1`.
pub fn lcs_degree(w: &ReducedWord, bound: usize) -> Result<LcsDegree> {
    if w.is_empty() {
        return Ok(LcsDegree::Infinite);
    }
    let s = magnus(w, bound)?;
    Ok(match s.lowest_positive_degree() {
        Some(d) => LcsDegree::Finite(d),
        None => LcsDegree::AtLeast(bound + 1),
    })
}

/// Whether `w` lies in the `k`-th lower-central-series term. Requires
/// `bound >= k`; the test only inspects degrees below `k`.
pub fn in_gamma(w: &ReducedWord, k: usize, bound: usize) -> Result<bool> {
    if bound < k {
        return Err(Error::invalid(format!(
            "truncation bound {bound} is below the level {k}"
        )));
    }
    Ok(lcs_degree(w, bound)?.at_least(k))
}

/// Membership test at the minimal truncation: inspects degrees `1..k-1` only.
pub(crate) fn in_gamma_min(w: &ReducedWord, k: usize) -> bool {
    if k <= 1 || w.is_empty() {
        return true;
    }
    lcs_degree(w, k - 1).expect("bound >= 1").at_least(k)
}

/// All Lyndon words of length `degree` over `{1..rank}`, lexicographically
/// ordered (Duval's generation).
pub fn lyndon_words(rank: usize, degree: usize) -> Result<Vec<Vec<usize>>> {
    if rank == 0 || degree == 0 {
        return Err(Error::invalid(
            "lyndon_words requires rank >= 1 and degree >= 1",
        ));
    }
    let mut out = Vec::new();
    let mut w = vec![1usize];
    loop {
        if degree.is_multiple_of(w.len()) {
            // w is Lyndon; repetitions of it reach the target length
            if w.len() == degree {
                out.push(w.clone());
            }
        }
        // extend periodically to full length, then increment the tail
        let mut t = Vec::with_capacity(degree);
        while t.len() < degree {
            t.push(w[t.len() % w.len()]);
        }
        while let Some(&last) = t.last() {
            if last == rank {
                t.pop();
            } else {
                break;
            }
        }
        if t.is_empty() {
            break;
        }
        *t.last_mut().expect("nonempty") += 1;
        w = t;
    }
    Ok(out)
}

/// Rank of the degree-`degree` part of the free Lie ring on `rank` generators
/// (the necklace-counting formula); equals the number of Lyndon words.
pub fn witt_rank(rank: usize, degree: usize) -> Result<u64> {
    if rank == 0 || degree == 0 {
        return Err(Error::invalid(
            "witt_rank requires rank >= 1 and degree >= 1",
        ));
    }
    let mut total: i128 = 0;
    for d in 1..=degree {
        if !degree.is_multiple_of(d) {
            continue;
        }
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        total += mu as i128 * (rank as i128).pow((degree / d) as u32);
    }
    debug_assert!(total >= 0 && total % degree as i128 == 0);
    Ok((total / degree as i128) as u64)
}

fn moebius(mut n: usize) -> i32 {
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Standard factorization of a Lyndon word `l = uv` with `v` the longest
/// proper Lyndon suffix.
fn standard_factorization(l: &[usize]) -> (Vec<usize>, Vec<usize>) {
    debug_assert!(l.len() >= 2);
    // the longest proper suffix that is Lyndon is the lexicographically
    // smallest proper suffix
    let mut best = 1;
    for i in 2..l.len() {
        if l[i..] < l[best..] {
            best = i;
        }
    }
    (l[..best].to_vec(), l[best..].to_vec())
}

/// The group-word realization of the standard Lyndon bracketing:
/// single letters map to generators, `[u, v]` to the commutator word.
pub fn lyndon_bracketing_word(l: &[usize], rank: usize) -> Result<ReducedWord> {
    if l.is_empty() {
        return Err(Error::invalid("empty Lyndon word"));
    }
    if l.len() == 1 {
        return ReducedWord::generator(rank, l[0]);
    }
    let (u, v) = standard_factorization(l);
    let a = lyndon_bracketing_word(&u, rank)?;
    let b = lyndon_bracketing_word(&v, rank)?;
    ReducedWord::commutator(&a, &b)
}

/// The homogeneous associative polynomial of the standard Lyndon bracketing:
/// `[P, Q] = PQ - QP` on monomial maps.
fn lyndon_bracketing_poly(l: &[usize]) -> BTreeMap<Monomial, BigInt> {
    if l.len() == 1 {
        let mut m = BTreeMap::new();
        m.insert(Monomial(vec![l[0]]), BigInt::one());
        return m;
    }
    let (u, v) = standard_factorization(l);
    let p = lyndon_bracketing_poly(&u);
    let q = lyndon_bracketing_poly(&v);
    let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (m1, a) in &p {
        for (m2, b) in &q {
            let mut uv = m1.0.clone();
            uv.extend_from_slice(&m2.0);
            poly_push(&mut out, Monomial(uv), a * b);
            let mut vu = m2.0.clone();
            vu.extend_from_slice(&m1.0);
            poly_push(&mut out, Monomial(vu), -(a * b));
        }
    }
    out
}

fn poly_push(out: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
    let entry = out.entry(m.clone()).or_insert_with(BigInt::zero);
    *entry += c;
    if entry.is_zero() {
        out.remove(&m);
    }
}

/// Integer coordinates over the Lyndon basis of the degree-`degree` part of
/// the free Lie ring on `rank` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieVector {
    rank: usize,
    degree: usize,
    coords: Vec<BigInt>,
}

impl LieVector {
    pub fn zero(rank: usize, degree: usize) -> Result<Self> {
        let n = lyndon_words(rank, degree)?.len();
        Ok(LieVector {
            rank,
            degree,
            coords: vec![BigInt::zero(); n],
        })
    }

    pub(crate) fn from_coords(rank: usize, degree: usize, coords: Vec<BigInt>) -> Result<Self> {
        let n = lyndon_words(rank, degree)?.len();
        if coords.len() != n {
            return Err(Error::invalid("coordinate length mismatch"));
        }
        Ok(LieVector {
            rank,
            degree,
            coords,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coordinates in the lexicographic order of the Lyndon words.
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &LieVector) -> Result<LieVector> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        if self.degree != other.degree {
            return Err(Error::LevelMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(LieVector {
            rank: self.rank,
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> LieVector {
        LieVector {
            rank: self.rank,
            degree: self.degree,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for LieVector {
    /// Nonzero coordinates as `c·[bracketing]` terms, `0` if all vanish.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words = lyndon_words(self.rank, self.degree).map_err(|_| fmt::Error)?;
        let mut first = true;
        for (l, c) in words.iter().zip(&self.coords) {
            if c.is_zero() {
                continue;
            }
            let bracket = bracket_name(l);
            let mag = c.abs();
            let sign = if c.is_negative() {
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
            if mag.is_one() {
                write!(f, "{sign}{bracket}")?;
            } else {
                write!(f, "{sign}{mag}\u{b7}{bracket}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn bracket_name(l: &[usize]) -> String {
    if l.len() == 1 {
        return format!("x{}", l[0]);
    }
    let (u, v) = standard_factorization(l);
    format!("[{},{}]", bracket_name(&u), bracket_name(&v))
}

/// Expresses a homogeneous degree-`degree` component (a Lie element given as
/// an associative polynomial) in the Lyndon basis by triangular elimination.
/// Each Lyndon bracketing expands with its own word as lexicographically
/// least monomial, coefficient 1; this unitriangularity is asserted.
pub(crate) fn lie_eliminate(
    rank: usize,
    degree: usize,
    mut component: BTreeMap<Monomial, BigInt>,
) -> Result<Vec<BigInt>> {
    let words = lyndon_words(rank, degree)?;
    let mut coords = Vec::with_capacity(words.len());
    for l in &words {
        let c = component
            .get(&Monomial(l.clone()))
            .cloned()
            .unwrap_or_else(BigInt::zero);
        if !c.is_zero() {
            let poly = lyndon_bracketing_poly(l);
            debug_assert!(poly.get(&Monomial(l.clone())).is_some_and(|v| v.is_one()));
            debug_assert!(poly.keys().min().map(|m| &m.0) == Some(l));
            for (m, a) in poly {
                let entry = component.entry(m.clone()).or_insert_with(BigInt::zero);
                *entry -= &c * a;
                if entry.is_zero() {
                    component.remove(&m);
                }
            }
        }
        coords.push(c);
    }
    if !component.is_empty() {
        return Err(Error::invalid(
            "homogeneous component is not a Lie element; elimination left a residue",
        ));
    }
    Ok(coords)
}

/// Coordinates of the class of `w` in `Gamma^k / Gamma^{k+1}` over the Lyndon
/// basis, computed from the degree-`k` part of the Magnus expansion.
/// Errors if `w` does not lie in `Gamma^k` (reporting the actual degree).
pub fn lie_coordinates(w: &ReducedWord, k: usize) -> Result<LieVector> {
    if k == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let s = magnus(w, k)?;
    if let Some(d) = s.lowest_positive_degree() {
        if d < k {
            return Err(Error::NotInGamma {
                required: k,
                actual: LcsDegree::Finite(d).to_string(),
            });
        }
    }
    let coords = lie_eliminate(w.rank(), k, s.homogeneous_part(k))?;
    Ok(LieVector {
        rank: w.rank(),
        degree: k,
        coords,
    })
}

/// Canonical encoding of the coset of `Gamma^m` represented by `w` inside
/// `Gamma^k`: the Magnus expansion truncated at degree `m - 1`. Two words in
/// `Gamma^k` get equal encodings exactly when they agree modulo `Gamma^m`.
pub fn coset_series(w: &ReducedWord, k: usize, m: usize) -> Result<TruncSeries> {
    if m <= k || k == 0 {
        return Err(Error::invalid(format!(
            "coset levels must satisfy 1 <= k < m, got k={k}, m={m}"
        )));
    }
    let s = magnus(w, m - 1)?;
    if let Some(d) = s.lowest_positive_degree() {
        if d < k {
            return Err(Error::NotInGamma {
                required: k,
                actual: LcsDegree::Finite(d).to_string(),
            });
        }
    }
    Ok(s)
}

/// A word representing the Lie-ring element with the given coordinates:
/// the product of Lyndon bracketing words raised to the coordinates.
pub fn word_from_lie(v: &LieVector) -> Result<ReducedWord> {
    let words = lyndon_words(v.rank, v.degree)?;
    let mut out = ReducedWord::identity(v.rank);
    for (l, c) in words.iter().zip(&v.coords) {
        if c.is_zero() {
            continue;
        }
        let exp = i64::try_from(c.clone())
            .map_err(|_| Error::invalid("Lie coordinate too large to realize as a word"))?;
        let b = lyndon_bracketing_word(l, v.rank)?;
        out = out.multiply(&b.pow(exp))?;
    }
    Ok(out)
}
