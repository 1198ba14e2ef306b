//! Free-group words and endomorphisms.
//!
//! Words are kept freely reduced at all times: the constructor cancels
//! adjacent inverse pairs, so equality of values is equality in the free
//! group. Generators are 1-indexed (`x1..xn`) and every word carries its
//! rank, so mixing ranks fails loudly instead of silently embedding.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// A single generator occurrence `x_gen^sign` with `sign` in `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    gen: usize,
    sign: i8,
}

impl Letter {
    pub fn new(gen: usize, sign: i8) -> Result<Self> {
        if gen == 0 {
            return Err(Error::invalid("generator indices start at 1"));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::invalid(format!(
                "letter sign must be +1 or -1, got {sign}"
            )));
        }
        Ok(Letter { gen, sign })
    }

    pub fn gen(&self) -> usize {
        self.gen
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn inverse(&self) -> Letter {
        Letter {
            gen: self.gen,
            sign: -self.sign,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.sign == -other.sign
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        // positive letter sorts before its inverse
        (self.gen, -self.sign).cmp(&(other.gen, -other.sign))
    }
}

/// A freely reduced word in the free group of the given rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ReducedWord {
    /// Graded-lexicographic: shorter words first, then letterwise.
    /// This is the canonical term order used for printing group-ring elements.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.letters.len(), &self.letters).cmp(&(other.letters.len(), &other.letters))
    }
}

fn reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for l in letters {
        if stack.last().is_some_and(|top| top.cancels(&l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

impl ReducedWord {
    /// The empty word (group identity).
    pub fn identity(rank: usize) -> Self {
        ReducedWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_i`.
    pub fn generator(rank: usize, i: usize) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::GeneratorIndex { gen: i, rank });
        }
        Ok(ReducedWord {
            rank,
            letters: vec![Letter { gen: i, sign: 1 }],
        })
    }

    /// Builds a word from arbitrary letters, freely reducing them.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        for l in &letters {
            if l.gen > rank {
                return Err(Error::GeneratorIndex { gen: l.gen, rank });
            }
        }
        Ok(ReducedWord {
            rank,
            letters: reduce(letters),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &ReducedWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// Freely reduced concatenation.
    pub fn multiply(&self, other: &ReducedWord) -> Result<ReducedWord> {
        self.check_rank(other)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last().is_some_and(|top| top.cancels(&l)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Ok(ReducedWord {
            rank: self.rank,
            letters,
        })
    }

    pub fn invert(&self) -> ReducedWord {
        ReducedWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// `self^exp` for any integer exponent.
    pub fn pow(&self, exp: i64) -> ReducedWord {
        let base = if exp < 0 { self.invert() } else { self.clone() };
        let mut out = ReducedWord::identity(self.rank);
        for _ in 0..exp.unsigned_abs() {
            out = out.multiply(&base).expect("equal ranks");
        }
        out
    }

    /// Commutator `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &ReducedWord, b: &ReducedWord) -> Result<ReducedWord> {
        a.multiply(b)?.multiply(&a.invert())?.multiply(&b.invert())
    }

    /// `w self w^-1`.
    pub fn conjugate_by(&self, w: &ReducedWord) -> Result<ReducedWord> {
        w.multiply(self)?.multiply(&w.invert())
    }

    /// Net exponent of generator `i`.
    pub fn exponent_sum(&self, i: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == i)
            .map(|l| l.sign as i64)
            .sum()
    }

    /// Exponent vector over all generators (image in the free abelianization).
    pub fn exponent_vector(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for l in &self.letters {
            v[l.gen - 1] += l.sign as i64;
        }
        v
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_letters(f, &self.letters, |g| format!("x{g}"))
    }
}

/// Prints letters with run-length exponents, e.g. `x1 x2^-1 x1^2`; the empty
/// word prints as `1`.
pub(crate) fn format_letters(
    f: &mut fmt::Formatter<'_>,
    letters: &[Letter],
    name: impl Fn(usize) -> String,
) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "1");
    }
    let mut first = true;
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1usize;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        let exp = l.sign as i64 * run as i64;
        if !first {
            write!(f, " ")?;
        }
        first = false;
        if exp == 1 {
            write!(f, "{}", name(l.gen))?;
        } else {
            write!(f, "{}^{}", name(l.gen), exp)?;
        }
        i += run;
    }
    Ok(())
}

/// The boundary word of a genus-`g` surface with one boundary component:
/// the product of commutators `[x_i, x_{g+i}]` for `i = 1..g`, in rank `2g`.
/// `g = 0` yields the empty word in rank 0.
pub fn boundary_word(g: usize) -> ReducedWord {
    let rank = 2 * g;
    let mut out = ReducedWord::identity(rank);
    for i in 1..=g {
        let a = ReducedWord::generator(rank, i).expect("i <= 2g");
        let b = ReducedWord::generator(rank, g + i).expect("g+i <= 2g");
        let c = ReducedWord::commutator(&a, &b).expect("equal ranks");
        out = out.multiply(&c).expect("equal ranks");
    }
    out
}

/// An endomorphism of the free group, given by the images of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endomorphism {
    rank: usize,
    images: Vec<ReducedWord>,
}

impl Endomorphism {
    pub fn new(rank: usize, images: Vec<ReducedWord>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::invalid(format!(
                "expected {rank} generator images, got {}",
                images.len()
            )));
        }
        for w in &images {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
        }
        Ok(Endomorphism { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        let images = (1..=rank)
            .map(|i| ReducedWord::generator(rank, i).expect("i <= rank"))
            .collect();
        Endomorphism { rank, images }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Image of `x_i` (1-indexed).
    pub fn image(&self, i: usize) -> Result<&ReducedWord> {
        self.images
            .get(i.wrapping_sub(1))
            .ok_or(Error::GeneratorIndex {
                gen: i,
                rank: self.rank,
            })
    }

    pub fn images(&self) -> &[ReducedWord] {
        &self.images
    }

    /// Applies the endomorphism to a word, reducing the result.
    pub fn apply(&self, w: &ReducedWord) -> Result<ReducedWord> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: w.rank(),
            });
        }
        let mut letters: Vec<Letter> = Vec::new();
        for l in w.letters() {
            let img = &self.images[l.gen() - 1];
            if l.sign() > 0 {
                letters.extend_from_slice(img.letters());
            } else {
                letters.extend(img.letters().iter().rev().map(Letter::inverse));
            }
        }
        ReducedWord::from_letters(self.rank, letters)
    }

    /// Composition `self . other`: generator images of `other` pushed through `self`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>>>()?;
        Endomorphism::new(self.rank, images)
    }

    /// Matrix of the induced map on the free abelianization; entry `(i, j)`
    /// is the net exponent of `x_i` in the image of `x_j`.
    pub fn abelianization_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.rank;
        let mut m = vec![vec![BigInt::from(0); n]; n];
        for (j, w) in self.images.iter().enumerate() {
            for (i, e) in w.exponent_vector().into_iter().enumerate() {
                m[i][j] = BigInt::from(e);
            }
        }
        m
    }
}

impl fmt::Display for Endomorphism {
    /// Endomorphism file format: one `x<i> -> <word>` line per generator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            writeln!(f, "x{} -> {}", i + 1, w)?;
        }
        Ok(())
    }
}

/// Generator alphabet accepted by the parser. Plain words use `x`-atoms only;
/// acyclic-system files also allow `g`-atoms for coefficient generators.
/// `g1..gp` map to indices `1..=p`, `x1..xm` to `p+1..=p+m`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Alphabet {
    pub coeff_rank: usize,
    pub var_rank: usize,
}

impl Alphabet {
    fn total(&self) -> usize {
        self.coeff_rank + self.var_rank
    }
}

/// Parses a word over `x1..x<rank>` using the shared grammar
/// (whitespace or `*` separators, `^` exponents, `[a,b]` commutators,
/// parentheses, `1` for the empty word).
pub fn parse_word(text: &str, rank: usize) -> Result<ReducedWord> {
    parse_with_alphabet(
        text,
        Alphabet {
            coeff_rank: 0,
            var_rank: rank,
        },
    )
}

pub(crate) fn parse_with_alphabet(text: &str, alphabet: Alphabet) -> Result<ReducedWord> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        alphabet,
    };
    let letters = p.parse_word(&[])?;
    p.skip_seps();
    if p.pos < p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    ReducedWord::from_letters(alphabet.total(), letters)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    alphabet: Alphabet,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_seps(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() || c == b'*' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Parses a word up to (not consuming) any of the stop bytes.
    fn parse_word(&mut self, stops: &[u8]) -> Result<Vec<Letter>> {
        self.skip_seps();
        // "1" denotes the empty word and must stand alone
        if self.peek() == Some(b'1') {
            let save = self.pos;
            self.pos += 1;
            self.skip_seps();
            match self.peek() {
                None => return Ok(Vec::new()),
                Some(c) if stops.contains(&c) => return Ok(Vec::new()),
                _ => {
                    self.pos = save;
                    return Err(self.err("'1' (empty word) cannot be followed by more items"));
                }
            }
        }
        let mut letters = Vec::new();
        loop {
            self.skip_seps();
            match self.peek() {
                None => break,
                Some(c) if stops.contains(&c) => break,
                Some(_) => {
                    let item = self.parse_item()?;
                    letters.extend(item);
                }
            }
        }
        if letters.is_empty() && stops.is_empty() {
            return Err(self.err("empty input; write '1' for the empty word"));
        }
        Ok(letters)
    }

    fn parse_item(&mut self) -> Result<Vec<Letter>> {
        let atom = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.parse_int()?;
            let mut out = Vec::new();
            if exp >= 0 {
                for _ in 0..exp {
                    out.extend_from_slice(&atom);
                }
            } else {
                let inv: Vec<Letter> = atom.iter().rev().map(Letter::inverse).collect();
                for _ in 0..-exp {
                    out.extend_from_slice(&inv);
                }
            }
            Ok(out)
        } else {
            Ok(atom)
        }
    }

    fn parse_atom(&mut self) -> Result<Vec<Letter>> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let idx = self.parse_index()?;
                if idx > self.alphabet.var_rank {
                    return Err(self.err(format!(
                        "generator x{idx} exceeds rank {}",
                        self.alphabet.var_rank
                    )));
                }
                Ok(vec![Letter {
                    gen: self.alphabet.coeff_rank + idx,
                    sign: 1,
                }])
            }
            Some(b'g') => {
                self.pos += 1;
                if self.alphabet.coeff_rank == 0 {
                    return Err(self.err("'g' generators are only allowed in acyclic-system files"));
                }
                let idx = self.parse_index()?;
                if idx > self.alphabet.coeff_rank {
                    return Err(self.err(format!(
                        "coefficient generator g{idx} exceeds count {}",
                        self.alphabet.coeff_rank
                    )));
                }
                Ok(vec![Letter { gen: idx, sign: 1 }])
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.parse_word(b",")?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ',' in commutator"));
                }
                self.pos += 1;
                let b = self.parse_word(b"]")?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']' closing commutator"));
                }
                self.pos += 1;
                // [a,b] = a b a^-1 b^-1
                let mut out = Vec::with_capacity(2 * (a.len() + b.len()));
                out.extend_from_slice(&a);
                out.extend_from_slice(&b);
                out.extend(a.iter().rev().map(Letter::inverse));
                out.extend(b.iter().rev().map(Letter::inverse));
                Ok(out)
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.parse_word(b")")?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn parse_index(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a generator index"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        let idx: usize = s
            .parse()
            .map_err(|_| self.err(format!("generator index '{s}' out of range")))?;
        if idx == 0 {
            return Err(self.err("generator indices start at 1"));
        }
        Ok(idx)
    }

    fn parse_int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start || (self.pos == start + 1 && self.bytes[start] == b'-') {
            return Err(self.err("expected an integer exponent"));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        s.parse()
            .map_err(|_| self.err(format!("exponent '{s}' out of range")))
    }
}

/// Parses an endomorphism file: one `x<i> -> <word>` line per generator,
/// `#` comments, every index `1..=n` present exactly once. The rank is the
/// number of generator lines.
pub fn parse_endomorphism_file(text: &str) -> Result<Endomorphism> {
    let mut lines: BTreeMap<usize, String> = BTreeMap::new();
    let mut offset = 0usize;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.trim_end_matches('\n');
        let content = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let arrow = content.find("->").ok_or(Error::Syntax {
            pos: line_start,
            msg: "expected 'x<i> -> <word>'".into(),
        })?;
        let lhs = content[..arrow].trim();
        let rhs = content[arrow + 2..].trim();
        let idx: usize =
            lhs.strip_prefix('x')
                .and_then(|s| s.parse().ok())
                .ok_or(Error::Syntax {
                    pos: line_start,
                    msg: format!("left-hand side '{lhs}' is not a generator"),
                })?;
        if lines.insert(idx, rhs.to_string()).is_some() {
            return Err(Error::Syntax {
                pos: line_start,
                msg: format!("generator x{idx} defined twice"),
            });
        }
    }
    let rank = lines.len();
    if rank == 0 {
        return Err(Error::Syntax {
            pos: 0,
            msg: "no generator lines found".into(),
        });
    }
    let expected: Vec<usize> = (1..=rank).collect();
    let got: Vec<usize> = lines.keys().copied().collect();
    if got != expected {
        return Err(Error::Syntax {
            pos: 0,
            msg: format!("generator indices {got:?} do not cover 1..={rank}"),
        });
    }
    let images = lines
        .values()
        .map(|rhs| parse_word(rhs, rank))
        .collect::<Result<Vec<_>>>()?;
    Endomorphism::new(rank, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::psi;

    fn w(text: &str, rank: usize) -> ReducedWord {
        parse_word(text, rank).unwrap()
    }

    #[test]
    fn parse_commutator_sugar() {
        assert_eq!(w("[x1,x2]", 2), w("x1 x2 x1^-1 x2^-1", 2));
        assert_eq!(w("[x1,x2]", 2).len(), 4);
    }

    #[test]
    fn parse_reduces() {
        assert!(w("x1 x1^-1", 1).is_empty());
        assert_eq!(w("x1 * x2 * x2^-1 * x3", 3), w("x1 x3", 3));
        assert_eq!(w("(x1 x2)^2", 2), w("x1 x2 x1 x2", 2));
        assert_eq!(w("x1^-3", 1).len(), 3);
        assert_eq!(w("1", 2), ReducedWord::identity(2));
    }

    #[test]
    fn parse_roundtrip() {
        for text in ["1", "x1 x2^-1", "x1^2 x2 x1^-3", "[x1,[x1,x2]]"] {
            let word = w(text, 2);
            let printed = word.to_string();
            assert_eq!(w(&printed, 2), word, "round-trip through {printed:?}");
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_word("x1 x9", 2) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_word("x1 [x2", 2).is_err());
        assert!(parse_word("g1", 2).is_err());
        assert!(parse_word("1 x1", 2).is_err());
    }

    #[test]
    fn multiply_and_invert() {
        let a = w("x1 x2", 3);
        let b = w("x2^-1 x3", 3);
        assert_eq!(a.multiply(&b).unwrap(), w("x1 x3", 3));
        assert_eq!(a.invert(), w("x2^-1 x1^-1", 3));
        assert!(a.multiply(&a.invert()).unwrap().is_empty());
        assert_eq!(
            w("[x1,x2]", 2).invert(),
            w("[x2,x1]", 2),
            "commutator inverse swaps arguments"
        );
        let mismatch = a.multiply(&w("x1", 2));
        assert!(matches!(mismatch, Err(Error::RankMismatch { .. })));
        // identity element
        assert_eq!(ReducedWord::identity(3).multiply(&a).unwrap(), a);
    }

    #[test]
    fn apply_is_a_homomorphism() {
        let psi = psi();
        assert_eq!(
            psi.apply(&w("x1", 2)).unwrap(),
            w("x1 x2 x1 x2^-1 x1^-1", 2)
        );
        assert!(psi.apply(&w("x1 x1^-1", 2)).unwrap().is_empty());
        let id = Endomorphism::identity(2);
        let word = w("[x1,x2] x1^3", 2);
        assert_eq!(id.apply(&word).unwrap(), word);
        let u = w("x1 x2", 2);
        let v = w("x2^-1 x1", 2);
        assert_eq!(
            psi.apply(&u.multiply(&v).unwrap()).unwrap(),
            psi.apply(&u)
                .unwrap()
                .multiply(&psi.apply(&v).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn compose_examples() {
        let psi = psi();
        let id = Endomorphism::identity(2);
        assert_eq!(id.compose(&psi).unwrap(), psi);
        assert_eq!(psi.compose(&id).unwrap(), psi);
        // psi fixes x2, hence so does psi . psi
        let sq = psi.compose(&psi).unwrap();
        assert_eq!(sq.image(2).unwrap(), &w("x2", 2));
        // no candidate inverse exists: a couple of natural guesses fail
        for candidate in [
            Endomorphism::new(2, vec![w("x1 x2^-1 x1^-1 x2 x1", 2), w("x2", 2)]).unwrap(),
            Endomorphism::new(2, vec![w("x2 x1^-1 x2^-1 x1 x1", 2), w("x2", 2)]).unwrap(),
        ] {
            let c = psi.compose(&candidate).unwrap();
            assert_ne!(c, Endomorphism::identity(2));
        }
    }

    #[test]
    fn boundary_words() {
        assert_eq!(boundary_word(1), w("[x1,x2]", 2));
        assert_eq!(boundary_word(2), w("[x1,x3] [x2,x4]", 4));
        assert!(boundary_word(0).is_empty());
        for g in 1..=3 {
            let z = boundary_word(g);
            for i in 1..=2 * g {
                assert_eq!(z.exponent_sum(i), 0, "zeta has zero net exponent");
            }
        }
    }

    #[test]
    fn endomorphism_file_roundtrip() {
        let text = "# sample\nx1 -> x1 x2 x1 x2^-1 x1^-1\nx2 -> x2\n";
        let e = parse_endomorphism_file(text).unwrap();
        assert_eq!(e, psi());
        let printed = e.to_string();
        assert_eq!(parse_endomorphism_file(&printed).unwrap(), e);
        assert!(parse_endomorphism_file("x1 -> x1\nx3 -> x3\n").is_err());
        assert!(parse_endomorphism_file("x1 -> x1\nx1 -> x1\n").is_err());
    }
}
