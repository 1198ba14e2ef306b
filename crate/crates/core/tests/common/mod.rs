//! Shared helpers for the integration suites: an independent
//! commutator-collection oracle for lower-central-series membership, and
//! seeded random generators for words and endomorphisms.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jcalc_core::words::{Endomorphism, Letter, ReducedWord};
use jcalc_core::{lyndon_words, parse_word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn w(text: &str, rank: usize) -> ReducedWord {
    parse_word(text, rank).unwrap()
}

/// The running 2-connected non-automorphism example.
pub fn psi() -> Endomorphism {
    Endomorphism::new(2, vec![w("x1 x2 x1 x2^-1 x1^-1", 2), w("x2", 2)]).unwrap()
}

// ---------------------------------------------------------------------------
// Collection oracle
// ---------------------------------------------------------------------------

/// Normal forms in a free nilpotent group of small class, computed purely by
/// commutator collection over a table of basic commutators. Independent of
/// the Magnus-expansion machinery: the only primitives are the group axioms
/// and the commutator identities
///   [a, bc] = [a,b] . b[a,c]b^-1        [ab, c] = a[b,c]a^-1 . [a,c]
///   g t g^-1 = t . [t^-1, g]            [x,y]^-1 = [y,x]
/// with everything of weight above the class discarded.
pub struct Collector {
    class: usize,
    /// weight of each basic commutator (ids 0..)
    weight: Vec<usize>,
    /// (a, b) -> id of the basic commutator [b_a, b_b]
    pair_to_id: HashMap<(usize, usize), usize>,
}

type BLetter = (usize, i8);

impl Collector {
    /// Basic commutators on `n` generators up to the given class, in the
    /// standard inductive order: `[b_a, b_b]` is basic when `a > b` and, if
    /// `b_a = [p, q]`, also `q <= b_b`.
    pub fn new(n: usize, class: usize) -> Self {
        let mut weight: Vec<usize> = vec![1; n];
        let mut def: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut pair_to_id = HashMap::new();
        for target in 2..=class {
            let known = weight.len();
            for a in 0..known {
                for b in 0..known {
                    if weight[a] + weight[b] != target || a <= b {
                        continue;
                    }
                    if let Some((_, q)) = def[a] {
                        if q > b {
                            continue;
                        }
                    }
                    let id = weight.len();
                    weight.push(target);
                    def.push(Some((a, b)));
                    pair_to_id.insert((a, b), id);
                }
            }
        }
        Collector {
            class,
            weight,
            pair_to_id,
        }
    }

    fn min_weight(&self, word: &[BLetter]) -> usize {
        word.iter()
            .map(|(id, _)| self.weight[*id])
            .min()
            .unwrap_or(self.class + 1)
    }

    fn inv(word: &[BLetter]) -> Vec<BLetter> {
        word.iter().rev().map(|(id, s)| (*id, -s)).collect()
    }

    /// `g t g^-1` as `t . [t^-1, g]`.
    fn conj(&self, g: &[BLetter], t: &[BLetter]) -> Vec<BLetter> {
        let mut out = t.to_vec();
        out.extend(self.comm(&Self::inv(t), g));
        out
    }

    /// The commutator `[u, v]` expressed as a word in basic commutators,
    /// truncated at the class.
    fn comm(&self, u: &[BLetter], v: &[BLetter]) -> Vec<BLetter> {
        if u.is_empty() || v.is_empty() {
            return Vec::new();
        }
        if self.min_weight(u) + self.min_weight(v) > self.class {
            return Vec::new();
        }
        if u.len() == 1 && v.len() == 1 {
            return self.comm_letters(u[0], v[0]);
        }
        if v.len() > 1 {
            // [u, v0 w] = [u, v0] . v0 [u, w] v0^-1
            let head = &v[..1];
            let tail = &v[1..];
            let mut out = self.comm(u, head);
            out.extend(self.conj(head, &self.comm(u, tail)));
            return out;
        }
        // [u0 t, v] = u0 [t, v] u0^-1 . [u0, v]
        let head = &u[..1];
        let tail = &u[1..];
        let mut out = self.conj(head, &self.comm(tail, v));
        out.extend(self.comm(head, v));
        out
    }

    fn comm_letters(&self, a: BLetter, b: BLetter) -> Vec<BLetter> {
        let (ida, sa) = a;
        let (idb, sb) = b;
        if ida == idb {
            return Vec::new(); // powers of one element commute
        }
        match (sa, sb) {
            (1, 1) => {
                if ida > idb {
                    match self.pair_to_id.get(&(ida, idb)) {
                        Some(&id) => vec![(id, 1)],
                        None => panic!(
                            "collection table incomplete: [b{ida}, b{idb}] is not basic at this class"
                        ),
                    }
                } else {
                    // [a, b] = [b, a]^-1
                    Self::inv(&self.comm_letters(b, a))
                }
            }
            (-1, 1) => {
                // [a^-1, b] = [b, a] . [[a, b], a^-1]
                let cab = self.comm_letters((ida, 1), b);
                let mut out = Self::inv(&cab);
                out.extend(self.comm(&cab, &[(ida, -1)]));
                out
            }
            (1, -1) => {
                // [a, b^-1] = [b, a] . [[a, b], b^-1]
                let cab = self.comm_letters(a, (idb, 1));
                let mut out = Self::inv(&cab);
                out.extend(self.comm(&cab, &[(idb, -1)]));
                out
            }
            (-1, -1) => {
                // [a^-1, b^-1] = [a, b] . [[b, a], a^-1 b^-1]
                let cab = self.comm_letters((ida, 1), (idb, 1));
                let mut out = cab.clone();
                out.extend(self.comm(&Self::inv(&cab), &[(ida, -1), (idb, -1)]));
                out
            }
            _ => unreachable!("letter signs are +-1"),
        }
    }

    /// Exponent vector over the basic commutators: the normal form
    /// `b_0^{e_0} b_1^{e_1} ...` of the given word.
    pub fn normal_form(&self, letters: &[BLetter]) -> Vec<i64> {
        let mut word: Vec<BLetter> = letters
            .iter()
            .filter(|(id, _)| self.weight[*id] <= self.class)
            .copied()
            .collect();
        let mut guard = 0usize;
        loop {
            guard += 1;
            assert!(guard < 2_000_000, "collection did not terminate");
            let mut changed = false;
            let mut i = 0;
            while i + 1 < word.len() {
                let u = word[i];
                let v = word[i + 1];
                if u.0 == v.0 && u.1 == -v.1 {
                    word.drain(i..=i + 1);
                    changed = true;
                    i = i.saturating_sub(1);
                } else if u.0 > v.0 {
                    // u v = v u [u^-1, v^-1]
                    let correction = self.comm(&[(u.0, -u.1)], &[(v.0, -v.1)]);
                    word[i] = v;
                    word[i + 1] = u;
                    for (offset, l) in correction.into_iter().enumerate() {
                        word.insert(i + 2 + offset, l);
                    }
                    changed = true;
                } else {
                    i += 1;
                }
            }
            if !changed {
                break;
            }
        }
        let mut exps = vec![0i64; self.weight.len()];
        for (id, s) in word {
            exps[id] += s as i64;
        }
        exps
    }

    /// Membership of a free-group word in the k-th lower-central-series term
    /// (requires `class >= k - 1`): trivial normal form in the class-(k-1)
    /// quotient.
    pub fn in_gamma(&self, word: &ReducedWord, k: usize) -> bool {
        assert!(
            self.class >= k - 1,
            "collector class too small for level {k}"
        );
        let letters: Vec<BLetter> = word
            .letters()
            .iter()
            .map(|l| (l.gen() - 1, l.sign()))
            .collect();
        // membership in Gamma^k means triviality in F/Gamma^k, a class-(k-1)
        // group: ignore basics of weight >= k
        self.normal_form(&letters)
            .iter()
            .enumerate()
            .all(|(id, e)| self.weight[id] >= k || *e == 0)
    }
}

// ---------------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------------

pub fn random_reduced_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| {
            Letter::new(
                rng.gen_range(1..=rank),
                if rng.gen_bool(0.5) { 1 } else { -1 },
            )
            .unwrap()
        })
        .collect();
    ReducedWord::from_letters(rank, letters).unwrap()
}

/// The Nielsen-style generating set: transvections `x_i -> x_i x_j^{+-1}`,
/// inversions `x_i -> x_i^-1`, and adjacent swaps.
pub fn nielsen_generators(rank: usize) -> Vec<Endomorphism> {
    let mut out = Vec::new();
    let gen = |i: usize| ReducedWord::generator(rank, i).unwrap();
    for i in 1..=rank {
        for j in 1..=rank {
            if i == j {
                continue;
            }
            for sign in [1i64, -1] {
                let mut images: Vec<ReducedWord> = (1..=rank).map(gen).collect();
                images[i - 1] = gen(i).multiply(&gen(j).pow(sign)).unwrap();
                out.push(Endomorphism::new(rank, images).unwrap());
            }
        }
    }
    for i in 1..=rank {
        let mut images: Vec<ReducedWord> = (1..=rank).map(gen).collect();
        images[i - 1] = gen(i).invert();
        out.push(Endomorphism::new(rank, images).unwrap());
    }
    for i in 1..rank {
        let mut images: Vec<ReducedWord> = (1..=rank).map(gen).collect();
        images.swap(i - 1, i);
        out.push(Endomorphism::new(rank, images).unwrap());
    }
    out
}

pub fn random_automorphism(rng: &mut ChaCha8Rng, rank: usize, factors: usize) -> Endomorphism {
    let gens = nielsen_generators(rank);
    let mut out = Endomorphism::identity(rank);
    for _ in 0..factors {
        let pick = &gens[rng.gen_range(0..gens.len())];
        out = out.compose(pick).unwrap();
    }
    out
}

/// A random word in the k-th lower-central-series term: a product of a few
/// conjugated (and possibly inverted) weight-k Lyndon bracketing words.
pub fn random_gamma_word(
    rng: &mut ChaCha8Rng,
    rank: usize,
    k: usize,
    factors: usize,
) -> ReducedWord {
    let basis = lyndon_words(rank, k).unwrap();
    let mut out = ReducedWord::identity(rank);
    for _ in 0..factors {
        let l = &basis[rng.gen_range(0..basis.len())];
        let mut c = jcalc_core::magnus::lyndon_bracketing_word(l, rank).unwrap();
        if rng.gen_bool(0.5) {
            c = c.invert();
        }
        let u = random_reduced_word(rng, rank, 2);
        out = out.multiply(&c.conjugate_by(&u).unwrap()).unwrap();
    }
    out
}

/// A single-generator insertion `x_i -> x_i c` with `c` in the k-th
/// lower-central-series term; the other generators are fixed. Lies in the
/// k-th filtration level by construction.
pub fn random_insertion(rng: &mut ChaCha8Rng, rank: usize, k: usize) -> Endomorphism {
    let i = rng.gen_range(1..=rank);
    let factors = rng.gen_range(1..=2);
    let c = random_gamma_word(rng, rank, k, factors);
    let gen = |i: usize| ReducedWord::generator(rank, i).unwrap();
    let mut images: Vec<ReducedWord> = (1..=rank).map(gen).collect();
    images[i - 1] = gen(i).multiply(&c).unwrap();
    Endomorphism::new(rank, images).unwrap()
}

/// A random product of insertions: an element of the k-th filtration level.
pub fn random_filtration_element(
    rng: &mut ChaCha8Rng,
    rank: usize,
    k: usize,
    factors: usize,
) -> Endomorphism {
    let mut out = Endomorphism::identity(rank);
    for _ in 0..factors {
        out = out.compose(&random_insertion(rng, rank, k)).unwrap();
    }
    out
}

/// A random boundary-certified automorphism of `N_k` at genus 1: a product of
/// exact boundary-preserving transvections and weight-k insertions.
pub fn certified_autnk(r: &mut ChaCha8Rng, k: usize) -> jcalc_core::nilpotent::AutNk {
    // all four transvections fix the boundary word exactly
    let t1 = Endomorphism::new(2, vec![w("x1 x2", 2), w("x2", 2)]).unwrap();
    let t1i = Endomorphism::new(2, vec![w("x1 x2^-1", 2), w("x2", 2)]).unwrap();
    let t2 = Endomorphism::new(2, vec![w("x1", 2), w("x2 x1^-1", 2)]).unwrap();
    let t2i = Endomorphism::new(2, vec![w("x1", 2), w("x2 x1", 2)]).unwrap();
    let gens = [t1, t1i, t2, t2i];
    let mut out = Endomorphism::identity(2);
    for _ in 0..r.gen_range(1..=3) {
        out = out.compose(&gens[r.gen_range(0..gens.len())]).unwrap();
    }
    if r.gen_bool(0.7) {
        out = out.compose(&random_insertion(r, 2, k)).unwrap();
    }
    jcalc_core::nilpotent::phi_k(&out, k).unwrap()
}

/// Exhaustive enumeration of freely reduced words of length `0..=max_len`.
pub fn all_reduced_words(rank: usize, max_len: usize) -> Vec<ReducedWord> {
    let mut out = vec![ReducedWord::identity(rank)];
    let mut frontier: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &frontier {
            for gen in 1..=rank {
                for sign in [1i8, -1] {
                    let l = Letter::new(gen, sign).unwrap();
                    if let Some(last) = prefix.last() {
                        if last.gen() == gen && last.sign() == -sign {
                            continue;
                        }
                    }
                    let mut word = prefix.clone();
                    word.push(l);
                    out.push(ReducedWord::from_letters(rank, word.clone()).unwrap());
                    next.push(word);
                }
            }
        }
        frontier = next;
    }
    out
}
