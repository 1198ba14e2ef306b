//! Free nilpotent quotients `N_k = F_n / Gamma^k`, their automorphisms, and
//! the boundary-word condition.
//!
//! Elements and automorphisms are carried by word/endomorphism lifts;
//! equality is always coset equality, decided through the Magnus expansion.
//! An endomorphism induces an automorphism of every `N_k` as soon as its
//! abelianization matrix is unimodular, so construction is gated on that
//! integer determinant alone.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::foxrep;
use crate::intmat;
use crate::magnus::{self, lie_coordinates, word_from_lie};
use crate::words::{boundary_word, Endomorphism, ReducedWord};

/// An element of `N_k`, stored as a word representative.
#[derive(Debug, Clone)]
pub struct NkElement {
    rank: usize,
    k: usize,
    rep: ReducedWord,
}

impl NkElement {
    pub fn new(k: usize, rep: ReducedWord) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("nilpotency level k must be at least 1"));
        }
        Ok(NkElement {
            rank: rep.rank(),
            k,
            rep,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> usize {
        self.k
    }

    pub fn representative(&self) -> &ReducedWord {
        &self.rep
    }

    /// Coset equality: whether the two representatives differ by an element
    /// of `Gamma^k`.
    pub fn equal(&self, other: &NkElement) -> Result<bool> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        if self.k != other.k {
            return Err(Error::LevelMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let diff = self.rep.multiply(&other.rep.invert())?;
        Ok(magnus::in_gamma_min(&diff, self.k))
    }
}

/// Whether two words represent the same element of `N_k`.
pub fn nk_equal(a: &NkElement, b: &NkElement) -> Result<bool> {
    a.equal(b)
}

/// An automorphism of `N_k`, stored as a 2-connected endomorphism lift.
/// Any two lifts differing by `Gamma^k`-valued perturbations induce the same
/// automorphism; all comparisons go through coset equality.
#[derive(Debug, Clone)]
pub struct AutNk {
    rank: usize,
    k: usize,
    lift: Endomorphism,
}

/// The automorphism of `N_k` induced by a 2-connected endomorphism.
/// Rejects inputs whose abelianization determinant is not +-1, reporting the
/// determinant.
pub fn phi_k(phi: &Endomorphism, k: usize) -> Result<AutNk> {
    if k == 0 {
        return Err(Error::invalid("nilpotency level k must be at least 1"));
    }
    let (ok, det) = foxrep::is_two_connected(phi);
    if !ok {
        return Err(Error::NotTwoConnected { det });
    }
    Ok(AutNk {
        rank: phi.rank(),
        k,
        lift: phi.clone(),
    })
}

impl AutNk {
    pub fn identity(rank: usize, k: usize) -> Result<Self> {
        phi_k(&Endomorphism::identity(rank), k)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> usize {
        self.k
    }

    pub fn lift(&self) -> &Endomorphism {
        &self.lift
    }

    fn check_compatible(&self, other: &AutNk) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        if self.k != other.k {
            return Err(Error::LevelMismatch {
                left: self.k,
                right: other.k,
            });
        }
        Ok(())
    }

    /// Group law: composition of lifts.
    pub fn compose(&self, other: &AutNk) -> Result<AutNk> {
        self.check_compatible(other)?;
        Ok(AutNk {
            rank: self.rank,
            k: self.k,
            lift: self.lift.compose(&other.lift)?,
        })
    }

    /// Coset equality of generator images at level `k`.
    pub fn equal(&self, other: &AutNk) -> Result<bool> {
        self.check_compatible(other)?;
        for i in 1..=self.rank {
            let diff = self
                .lift
                .image(i)?
                .multiply(&other.lift.image(i)?.invert())?;
            if !magnus::in_gamma_min(&diff, self.k) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_identity(&self) -> Result<bool> {
        self.equal(&AutNk::identity(self.rank, self.k)?)
    }

    /// The same automorphism viewed at a lower level.
    pub fn project(&self, k: usize) -> Result<AutNk> {
        if k == 0 || k > self.k {
            return Err(Error::LevelMismatch {
                left: self.k,
                right: k,
            });
        }
        Ok(AutNk {
            rank: self.rank,
            k,
            lift: self.lift.clone(),
        })
    }

    /// Inverse in `Aut N_k`: inverts the abelianization over the integers and
    /// then removes the remaining defect degree by degree through the Lie
    /// coordinates. Terminates after at most `k - 2` correction rounds.
    pub fn invert(&self) -> Result<AutNk> {
        let n = self.rank;
        let inv = intmat::unimodular_inverse(&self.lift.abelianization_matrix())?;
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let mut w = ReducedWord::identity(n);
            for (i, row) in inv.iter().enumerate() {
                let e = i64::try_from(row[j].clone())
                    .map_err(|_| Error::invalid("abelianization inverse entry out of range"))?;
                w = w.multiply(&ReducedWord::generator(n, i + 1)?.pow(e))?;
            }
            images.push(w);
        }
        let mut g = Endomorphism::new(n, images)?;
        for level in 2..self.k {
            let c = self.lift.compose(&g)?;
            let mut eta_images = Vec::with_capacity(n);
            for i in 1..=n {
                let xi = ReducedWord::generator(n, i)?;
                let d = c.image(i)?.multiply(&xi.invert())?;
                // by induction the defect lies in Gamma^level
                let coords = lie_coordinates(&d, level)?;
                let u = word_from_lie(&coords.neg())?;
                eta_images.push(xi.multiply(&u)?);
            }
            g = g.compose(&Endomorphism::new(n, eta_images)?)?;
        }
        let inverse = AutNk {
            rank: n,
            k: self.k,
            lift: g,
        };
        debug_assert!(self.compose(&inverse)?.is_identity()?);
        Ok(inverse)
    }

    /// Whether the stored lift maps the boundary word to itself modulo
    /// `Gamma^{k+1}`. This is a sufficient certificate for lying in the image
    /// of the boundary-preserving subgroup; a failing certificate says
    /// nothing about other lifts.
    pub fn boundary_certificate(&self, genus: usize) -> Result<bool> {
        if !self.rank.is_multiple_of(2) {
            return Err(Error::RankNotEven { rank: self.rank });
        }
        if self.rank != 2 * genus {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: 2 * genus,
            });
        }
        let zeta = boundary_word(genus);
        let moved = self.lift.apply(&zeta)?.multiply(&zeta.invert())?;
        Ok(magnus::in_gamma_min(&moved, self.k + 1))
    }

    /// Surjectivity witness: the stored 2-connected lift realizes this
    /// automorphism, i.e. `phi_k(realize())` equals `self`.
    pub fn realize(&self) -> Endomorphism {
        self.lift.clone()
    }

    /// As `realize`, but additionally requires the boundary certificate.
    pub fn realize_aut0(&self, genus: usize) -> Result<Endomorphism> {
        if !self.boundary_certificate(genus)? {
            return Err(Error::CertificateFailed { k: self.k });
        }
        Ok(self.lift.clone())
    }

    /// Serialization: the endomorphism file with a level header.
    pub fn to_file_string(&self) -> String {
        format!("# level k={}\n{}", self.k, self.lift)
    }
}

/// See [`AutNk::boundary_certificate`].
pub fn is_aut0(a: &AutNk, genus: usize) -> Result<bool> {
    a.boundary_certificate(genus)
}

/// See [`AutNk::realize_aut0`].
pub fn realize_aut0(a: &AutNk, genus: usize) -> Result<Endomorphism> {
    a.realize_aut0(genus)
}

impl fmt::Display for AutNk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_file_string())
    }
}

/// Abelianization determinant, exposed for diagnostics.
pub fn abelianization_det(phi: &Endomorphism) -> BigInt {
    foxrep::is_two_connected(phi).1
}
