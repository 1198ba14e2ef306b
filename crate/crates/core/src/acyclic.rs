//! Acyclic equation systems over free nilpotent coefficient groups and their
//! unique-solution fixed-point solver.
//!
//! A system has `m` variables `x1..xm` and coefficients from the free
//! nilpotent group on `g1..gp` of class `c` (so commutators of weight `c + 1`
//! vanish; the class-`c` quotient is the free group modulo the (c+1)-st
//! lower-central-series term). Every equation word must have zero net
//! exponent in every variable. Substitution then contracts modulo the lower
//! central series: seed vectors agreeing modulo `Gamma^j` evaluate to vectors
//! agreeing modulo `Gamma^{j+1}`, so `c` iterations from any seed reach the
//! unique solution; one extra verification pass guards the bound.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::magnus;
use crate::words::{self, Alphabet, Letter, ReducedWord};

/// A word mixing coefficient generators `g1..gp` and variables `x1..xm`,
/// freely reduced. Internally the combined alphabet has the coefficient
/// generators first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemWord {
    coeff_rank: usize,
    var_count: usize,
    word: ReducedWord,
}

impl SystemWord {
    pub fn parse(text: &str, coeff_rank: usize, var_count: usize) -> Result<Self> {
        let word = words::parse_with_alphabet(
            text,
            Alphabet {
                coeff_rank,
                var_rank: var_count,
            },
        )?;
        Ok(SystemWord {
            coeff_rank,
            var_count,
            word,
        })
    }

    pub fn coeff_rank(&self) -> usize {
        self.coeff_rank
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    /// Net exponent of the variable `x_j` (1-indexed).
    pub fn variable_exponent(&self, j: usize) -> i64 {
        self.word.exponent_sum(self.coeff_rank + j)
    }

    /// Whether every variable has zero net exponent.
    pub fn is_acyclic(&self) -> bool {
        (1..=self.var_count).all(|j| self.variable_exponent(j) == 0)
    }

    /// Substitutes values (words over the coefficient generators) for the
    /// variables and keeps coefficient letters, reducing the result.
    pub fn evaluate(&self, values: &[ReducedWord]) -> Result<ReducedWord> {
        if values.len() != self.var_count {
            return Err(Error::invalid(format!(
                "expected {} variable values, got {}",
                self.var_count,
                values.len()
            )));
        }
        for v in values {
            if v.rank() != self.coeff_rank {
                return Err(Error::RankMismatch {
                    left: self.coeff_rank,
                    right: v.rank(),
                });
            }
        }
        let mut letters: Vec<Letter> = Vec::new();
        for l in self.word.letters() {
            if l.gen() <= self.coeff_rank {
                letters.push(*l);
            } else {
                let value = &values[l.gen() - self.coeff_rank - 1];
                if l.sign() > 0 {
                    letters.extend_from_slice(value.letters());
                } else {
                    letters.extend(value.letters().iter().rev().map(Letter::inverse));
                }
            }
        }
        ReducedWord::from_letters(self.coeff_rank, letters)
    }
}

impl fmt::Display for SystemWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.coeff_rank;
        words::format_letters(f, self.word.letters(), |g| {
            if g <= p {
                format!("g{g}")
            } else {
                format!("x{}", g - p)
            }
        })
    }
}

/// An acyclic system `x_i = w_i(x)` over the free class-`class` nilpotent
/// group on `coeff_rank` generators.
#[derive(Debug, Clone)]
pub struct AcyclicSystem {
    var_count: usize,
    coeff_rank: usize,
    class: usize,
    equations: Vec<SystemWord>,
}

impl AcyclicSystem {
    pub fn new(
        coeff_rank: usize,
        var_count: usize,
        class: usize,
        equations: Vec<SystemWord>,
    ) -> Result<Self> {
        if class == 0 {
            return Err(Error::invalid("nilpotency class must be at least 1"));
        }
        if equations.len() != var_count {
            return Err(Error::invalid(format!(
                "expected {} equations, got {}",
                var_count,
                equations.len()
            )));
        }
        for (idx, eq) in equations.iter().enumerate() {
            if eq.coeff_rank != coeff_rank || eq.var_count != var_count {
                return Err(Error::invalid(format!(
                    "equation {} uses a different alphabet",
                    idx + 1
                )));
            }
            for j in 1..=var_count {
                let e = eq.variable_exponent(j);
                if e != 0 {
                    return Err(Error::NotAcyclic {
                        index: idx + 1,
                        variable: j,
                        exponent: e,
                    });
                }
            }
        }
        Ok(AcyclicSystem {
            var_count,
            coeff_rank,
            class,
            equations,
        })
    }

    /// Parses the system file format: a header
    /// `vars m=<m> coeff p=<p> class=<c>`, then `m` lines `x<i> = <word>`
    /// using the shared grammar with `g`-atoms enabled; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut equations: Vec<(usize, String)> = Vec::new();
        let mut offset = 0usize;
        for raw in text.split_inclusive('\n') {
            let line_start = offset;
            offset += raw.len();
            let line = raw.trim_end_matches('\n');
            let content = match line.find('#') {
                Some(i) => &line[..i],
                None => line,
            };
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            if header.is_none() {
                let mut m = None;
                let mut p = None;
                let mut c = None;
                if let Some(rest) = content.strip_prefix("vars") {
                    for tok in rest.split_whitespace() {
                        if let Some(v) = tok.strip_prefix("m=") {
                            m = v.parse().ok();
                        } else if let Some(v) = tok.strip_prefix("p=") {
                            p = v.parse().ok();
                        } else if let Some(v) = tok.strip_prefix("class=") {
                            c = v.parse().ok();
                        } else if tok != "coeff" {
                            return Err(Error::Syntax {
                                pos: line_start,
                                msg: format!("unexpected header token '{tok}'"),
                            });
                        }
                    }
                }
                match (m, p, c) {
                    (Some(m), Some(p), Some(c)) => header = Some((m, p, c)),
                    _ => {
                        return Err(Error::Syntax {
                            pos: line_start,
                            msg: "expected header 'vars m=<m> coeff p=<p> class=<c>'".into(),
                        })
                    }
                }
                continue;
            }
            let eq = content.find('=').ok_or(Error::Syntax {
                pos: line_start,
                msg: "expected 'x<i> = <word>'".into(),
            })?;
            let lhs = content[..eq].trim();
            let rhs = content[eq + 1..].trim();
            let idx: usize =
                lhs.strip_prefix('x')
                    .and_then(|s| s.parse().ok())
                    .ok_or(Error::Syntax {
                        pos: line_start,
                        msg: format!("left-hand side '{lhs}' is not a variable"),
                    })?;
            equations.push((idx, rhs.to_string()));
        }
        let (m, p, c) = header.ok_or(Error::Syntax {
            pos: 0,
            msg: "missing system header".into(),
        })?;
        if equations.len() != m {
            return Err(Error::Syntax {
                pos: 0,
                msg: format!(
                    "header declares m={m} but found {} equations",
                    equations.len()
                ),
            });
        }
        let mut ordered: Vec<Option<SystemWord>> = vec![None; m];
        for (idx, rhs) in equations {
            if idx == 0 || idx > m {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: format!("variable x{idx} outside 1..={m}"),
                });
            }
            if ordered[idx - 1].is_some() {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: format!("variable x{idx} defined twice"),
                });
            }
            ordered[idx - 1] = Some(SystemWord::parse(&rhs, p, m)?);
        }
        let equations: Vec<SystemWord> = ordered
            .into_iter()
            .enumerate()
            .map(|(i, eq)| {
                eq.ok_or(Error::Syntax {
                    pos: 0,
                    msg: format!("variable x{} has no equation", i + 1),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        AcyclicSystem::new(p, m, c, equations)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn coeff_rank(&self) -> usize {
        self.coeff_rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn equations(&self) -> &[SystemWord] {
        &self.equations
    }

    fn step(&self, values: &[ReducedWord]) -> Result<Vec<ReducedWord>> {
        self.equations
            .iter()
            .map(|eq| eq.evaluate(values))
            .collect()
    }

    fn values_equal(&self, a: &[ReducedWord], b: &[ReducedWord]) -> Result<bool> {
        for (u, v) in a.iter().zip(b) {
            let diff = u.multiply(&v.invert())?;
            if !magnus::in_gamma_min(&diff, self.class + 1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn iterate(&self, mut values: Vec<ReducedWord>) -> Result<Vec<ReducedWord>> {
        for _ in 0..self.class {
            values = self.step(&values)?;
        }
        Ok(values)
    }

    /// Runs the contraction iteration from the all-identity seed for `class`
    /// rounds and verifies the result is a fixed point in the coefficient
    /// group.
    pub fn solve(&self) -> Result<NilpotentSolution> {
        let seed = vec![ReducedWord::identity(self.coeff_rank); self.var_count];
        let values = self.iterate(seed)?;
        let again = self.step(&values)?;
        if !self.values_equal(&values, &again)? {
            return Err(Error::NotStabilized {
                iterations: self.class,
                class: self.class,
            });
        }
        Ok(NilpotentSolution {
            coeff_rank: self.coeff_rank,
            class: self.class,
            values,
        })
    }

    /// Re-runs the iteration from `trials` random seed vectors and checks
    /// every run lands on the solution. Deterministic for a fixed `seed`.
    pub fn verify_uniqueness(&self, trials: usize, seed: u64) -> Result<bool> {
        let solution = self.solve()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max_len = 2 * (self.class + 1);
        for _ in 0..trials {
            let start: Vec<ReducedWord> = (0..self.var_count)
                .map(|_| random_word(&mut rng, self.coeff_rank, max_len))
                .collect::<Result<Vec<_>>>()?;
            let values = self.iterate(start)?;
            if !self.values_equal(&values, &solution.values)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Result<ReducedWord> {
    if rank == 0 {
        return Ok(ReducedWord::identity(0));
    }
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let gen = rng.gen_range(1..=rank);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            Letter::new(gen, sign)
        })
        .collect::<Result<Vec<_>>>()?;
    ReducedWord::from_letters(rank, letters)
}

/// A solution vector: one coefficient-group element per variable. The words
/// are representatives; equality downstream is coset equality at the class.
#[derive(Debug, Clone)]
pub struct NilpotentSolution {
    coeff_rank: usize,
    class: usize,
    values: Vec<ReducedWord>,
}

impl NilpotentSolution {
    pub fn coeff_rank(&self) -> usize {
        self.coeff_rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn values(&self) -> &[ReducedWord] {
        &self.values
    }

    /// Whether the i-th value equals the given word in the coefficient group.
    pub fn value_equals(&self, i: usize, w: &ReducedWord) -> Result<bool> {
        let v = self
            .values
            .get(i.wrapping_sub(1))
            .ok_or(Error::invalid(format!("no variable x{i}")))?;
        let diff = v.multiply(&w.invert())?;
        Ok(magnus::in_gamma_min(&diff, self.class + 1))
    }

    /// The i-th value printed over the coefficient generators `g1..gp`.
    pub fn value_string(&self, i: usize) -> Result<String> {
        struct G<'a>(&'a ReducedWord);
        impl fmt::Display for G<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                words::format_letters(f, self.0.letters(), |g| format!("g{g}"))
            }
        }
        let v = self
            .values
            .get(i.wrapping_sub(1))
            .ok_or(Error::invalid(format!("no variable x{i}")))?;
        Ok(G(v).to_string())
    }
}

impl fmt::Display for NilpotentSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            write!(f, "x{} = ", i + 1)?;
            words::format_letters(f, v.letters(), |g| format!("g{g}"))?;
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abelian_example_system() -> AcyclicSystem {
        // x1 = g1 x1 g2 x2 x1^-1 x2^-1 ; x2 = x1 g3 x1^-1, abelian coefficients
        let eq1 = SystemWord::parse("g1 x1 g2 x2 x1^-1 x2^-1", 3, 2).unwrap();
        let eq2 = SystemWord::parse("x1 g3 x1^-1", 3, 2).unwrap();
        AcyclicSystem::new(3, 2, 1, vec![eq1, eq2]).unwrap()
    }

    #[test]
    fn acyclicity_checks() {
        let eq = SystemWord::parse("g1 x1 g2 x2 x1^-1 x2^-1", 3, 2).unwrap();
        assert!(eq.is_acyclic());
        let eq = SystemWord::parse("x1 g3 x1^-1", 3, 2).unwrap();
        assert!(eq.is_acyclic());
        let eq = SystemWord::parse("x1", 3, 2).unwrap();
        assert!(!eq.is_acyclic());
        assert_eq!(eq.variable_exponent(1), 1);
        let bad = AcyclicSystem::new(
            3,
            2,
            1,
            vec![
                SystemWord::parse("x1 x2", 3, 2).unwrap(),
                SystemWord::parse("g1", 3, 2).unwrap(),
            ],
        );
        assert!(matches!(bad, Err(Error::NotAcyclic { index: 1, .. })));
    }

    #[test]
    fn solves_abelian_example() {
        let sys = abelian_example_system();
        let sol = sys.solve().unwrap();
        assert!(sol
            .value_equals(1, &words::parse_word("x1 x2", 3).unwrap())
            .unwrap()); // g1 g2 in the internal alphabet
        assert!(sol
            .value_equals(2, &words::parse_word("x3", 3).unwrap())
            .unwrap()); // g3
        assert_eq!(sol.to_string(), "x1 = g1 g2\nx2 = g3\n");
        assert!(sys.verify_uniqueness(20, 7).unwrap());
    }

    #[test]
    fn constant_system() {
        let eq = SystemWord::parse("g1", 2, 1).unwrap();
        for class in 1..=3 {
            let sys = AcyclicSystem::new(2, 1, class, vec![eq.clone()]).unwrap();
            let sol = sys.solve().unwrap();
            assert!(sol
                .value_equals(1, &words::parse_word("x1", 2).unwrap())
                .unwrap());
            assert!(sys.verify_uniqueness(5, 1).unwrap());
        }
    }

    #[test]
    fn commutator_equation_has_trivial_solution() {
        // x1 = [g1, x1] over class 2: iterating from 1 stays at 1
        let eq = SystemWord::parse("[g1, x1]", 2, 1).unwrap();
        let sys = AcyclicSystem::new(2, 1, 2, vec![eq.clone()]).unwrap();
        let sol = sys.solve().unwrap();
        assert!(sol.values()[0].is_empty());
        // ... and at class 3 every seed converges to the same value
        let sys = AcyclicSystem::new(2, 1, 3, vec![eq]).unwrap();
        assert!(sys.verify_uniqueness(20, 3).unwrap());
    }

    #[test]
    fn file_format_round_trip() {
        let text = "# example\nvars m=2 coeff p=3 class=1\nx1 = g1 x1 g2 x2 x1^-1 x2^-1\nx2 = x1 g3 x1^-1\n";
        let sys = AcyclicSystem::parse_file(text).unwrap();
        assert_eq!(sys.var_count(), 2);
        assert_eq!(sys.coeff_rank(), 3);
        assert_eq!(sys.class(), 1);
        let sol = sys.solve().unwrap();
        assert_eq!(sol.to_string(), "x1 = g1 g2\nx2 = g3\n");
        assert!(AcyclicSystem::parse_file("vars m=1 coeff p=1 class=1\nx1 = x1 x1\n").is_err());
        assert!(AcyclicSystem::parse_file("x1 = g1\n").is_err());
    }

    #[test]
    fn mixed_word_display_round_trips() {
        let eq = SystemWord::parse("g1 x1 [g2, x2] x1^-1", 3, 2).unwrap();
        let printed = eq.to_string();
        let reparsed = SystemWord::parse(&printed, 3, 2).unwrap();
        assert_eq!(eq, reparsed);
    }
}
