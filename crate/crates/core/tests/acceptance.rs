//! Acceptance suite: every criterion runs as one test, checks its exact
//! expected values (no tolerances — all arithmetic is exact), enforces its
//! runtime budget, and prints one pass line (visible with `--nocapture`).
//!
//! Run with `cargo test --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use rand::Rng;

use jcalc_core::acyclic::{AcyclicSystem, SystemWord};
use jcalc_core::groupring::{GroupRingElem, LaurentPoly};
use jcalc_core::johnson::{check_action_trivial, johnson, refined_johnson, refined_kernel_level};
use jcalc_core::magnus::lyndon_bracketing_word;
use jcalc_core::nilpotent::phi_k;
use jcalc_core::words::{Endomorphism, ReducedWord};
use jcalc_core::{
    crossed_check, filtration_level, fox_derivative, in_gamma, intmat, lyndon_words, magnus_rep,
    witt_rank,
};

fn finish(id: u32, label: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "criterion {id} exceeded its {budget:?} budget: {elapsed:?}"
    );
    println!("criterion {id:2} PASS ({elapsed:>10.3?}) {label}");
}

fn gw(text: &str) -> GroupRingElem {
    GroupRingElem::from_word(w(text, 2))
}

#[test]
fn criterion_01_magnus_representation_of_psi() {
    let start = Instant::now();
    let r = magnus_rep(&psi()).unwrap();
    let e11 = gw("1")
        .add(&gw("x2^-1 x1^-1"))
        .unwrap()
        .sub(&gw("x1 x2 x1^-1 x2^-1 x1^-1"))
        .unwrap();
    let e21 = gw("x1^-1").sub(&gw("x2 x1^-1 x2^-1 x1^-1")).unwrap();
    assert_eq!(r.entry(1, 1), &e11, "entry (1,1)");
    assert_eq!(r.entry(2, 1), &e21, "entry (2,1)");
    assert!(r.entry(1, 2).is_zero(), "entry (1,2)");
    assert_eq!(r.entry(2, 2), &GroupRingElem::one(2), "entry (2,2)");
    finish(
        1,
        "Magnus representation matrix of the example",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_abelianized_determinant_obstruction() {
    let start = Instant::now();
    let o = jcalc_core::automorphism_obstruction(&psi()).unwrap();
    let expected = LaurentPoly::one(2)
        .add(&LaurentPoly::monomial(vec![-1, -1], BigInt::from(1)))
        .unwrap()
        .sub(&LaurentPoly::monomial(vec![-1, 0], BigInt::from(1)))
        .unwrap();
    assert_eq!(o.det, expected, "determinant");
    assert!(!o.unit, "determinant must not be a unit");
    assert!(o.verdict().contains("NOT a free-group automorphism"));
    assert_eq!(o.augmentation, BigInt::from(1));
    finish(
        2,
        "abelianized determinant and non-unit verdict",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_03_johnson_value_of_psi() {
    let start = Instant::now();
    let j = johnson(&psi(), 2).unwrap();
    assert_eq!(
        j.value(1).unwrap().coords(),
        &[BigInt::from(-1)],
        "value on x1 is -1 on the Lyndon basis element [x1,x2]"
    );
    assert!(j.value(2).unwrap().is_zero(), "value on x2 is zero");
    finish(
        3,
        "first Johnson value of the example",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_04_acyclic_system_solution() {
    let start = Instant::now();
    let sys = AcyclicSystem::new(
        3,
        2,
        1,
        vec![
            SystemWord::parse("g1 x1 g2 x2 x1^-1 x2^-1", 3, 2).unwrap(),
            SystemWord::parse("x1 g3 x1^-1", 3, 2).unwrap(),
        ],
    )
    .unwrap();
    let sol = sys.solve().unwrap();
    let g = |i: usize| ReducedWord::generator(3, i).unwrap();
    assert!(sol.value_equals(1, &g(1).multiply(&g(2)).unwrap()).unwrap());
    assert!(sol.value_equals(2, &g(3)).unwrap());
    assert_eq!(sol.to_string(), "x1 = g1 g2\nx2 = g3\n");
    assert!(sys.verify_uniqueness(20, 0).unwrap());
    finish(
        4,
        "abelian acyclic system and 20-seed uniqueness",
        start,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_05_fox_fundamental_identity() {
    let start = Instant::now();
    let mut r = rng(505);
    for trial in 0..200 {
        let rank = r.gen_range(1..=4);
        let word = random_reduced_word(&mut r, rank, 40);
        let mut acc = GroupRingElem::zero(rank);
        for i in 1..=rank {
            let xi = GroupRingElem::from_word(ReducedWord::generator(rank, i).unwrap());
            let factor = xi.sub(&GroupRingElem::one(rank)).unwrap();
            acc = acc
                .add(&fox_derivative(&word, i).unwrap().mul(&factor).unwrap())
                .unwrap();
        }
        let rhs = GroupRingElem::from_word(word.clone())
            .sub(&GroupRingElem::one(rank))
            .unwrap();
        assert_eq!(acc, rhs, "trial {trial} on {word}");
    }
    finish(
        5,
        "fundamental identity on 200 random words",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_06_crossed_homomorphism_law() {
    let start = Instant::now();
    let mut r = rng(606);
    for trial in 0..50 {
        let rank = r.gen_range(2..=3);
        let pick = |r: &mut rand_chacha::ChaCha8Rng| {
            if r.gen_bool(0.5) {
                random_automorphism(r, rank, 3)
            } else {
                random_filtration_element(r, rank, 2, 2)
            }
        };
        let phi = pick(&mut r);
        let psi = pick(&mut r);
        assert!(
            crossed_check(&phi, &psi).unwrap(),
            "crossed law fails on trial {trial}"
        );
    }
    finish(
        6,
        "crossed-homomorphism law on 50 random pairs",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_07_gamma_membership_oracle_equivalence() {
    let start = Instant::now();
    let collector = Collector::new(2, 3);
    let words = all_reduced_words(2, 8);
    assert_eq!(words.len(), 13_121);
    let mut checked = 0u64;
    for word in &words {
        for k in 2..=4usize {
            let via_magnus = in_gamma(word, k, k).unwrap();
            let via_collection = collector.in_gamma(word, k);
            assert_eq!(
                via_magnus, via_collection,
                "disagreement at k={k} on {word}"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 39_363);
    finish(
        7,
        "expansion vs collection on all words of length <= 8",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_08_action_triviality() {
    let start = Instant::now();
    let mut r = rng(808);
    for trial in 0..100 {
        let k = if trial % 2 == 0 { 2 } else { 3 };
        let phi_factors = r.gen_range(1..=2);
        let phi = random_filtration_element(&mut r, 2, k, phi_factors);
        let word_factors = r.gen_range(1..=2);
        let word = random_gamma_word(&mut r, 2, k, word_factors);
        assert!(
            check_action_trivial(&phi, &word, k).unwrap(),
            "action not trivial at trial {trial}, k={k}"
        );
    }
    finish(
        8,
        "action triviality on 100 random (phi, w) pairs",
        start,
        Duration::from_secs(60),
    );
}

/// The exhaustive generator-insertion family at rank 2: `x_i -> x_i c` for
/// every Lyndon bracketing `c` of the given weight and every generator.
fn insertion_family(weight: usize) -> Vec<Endomorphism> {
    let mut out = Vec::new();
    for l in lyndon_words(2, weight).unwrap() {
        let c = lyndon_bracketing_word(&l, 2).unwrap();
        for i in 1..=2usize {
            let gen = |j: usize| ReducedWord::generator(2, j).unwrap();
            let mut images: Vec<ReducedWord> = (1..=2).map(gen).collect();
            images[i - 1] = gen(i).multiply(&c).unwrap();
            out.push(Endomorphism::new(2, images).unwrap());
        }
    }
    out
}

#[test]
fn criterion_09_refinement_exactness_and_rank() {
    let start = Instant::now();
    for k in 2..=3usize {
        for weight in k..=2 * k - 1 {
            for phi in insertion_family(weight) {
                // p1 compatibility
                let refined = refined_johnson(&phi, k).unwrap();
                let plain = johnson(&phi, k).unwrap();
                assert_eq!(
                    refined.first_projection().unwrap(),
                    plain,
                    "p1 of the refinement at k={k}, weight {weight}"
                );
                // kernel exactness, with the two sides computed independently
                let vanishes = refined.is_zero();
                let level = filtration_level(&phi, 2 * k - 1).unwrap();
                assert_eq!(
                    vanishes,
                    level >= 2 * k - 1,
                    "kernel characterization at k={k}, weight {weight}"
                );
                assert_eq!(vanishes, weight >= 2 * k - 1);
                // refined_kernel_level re-asserts the equivalence internally
                assert_eq!(refined_kernel_level(&phi, k).unwrap(), vanishes);
            }
        }
    }
    // span of sampled refined values at k = 3: insertions of weights 3..4
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for weight in 3..=4usize {
        for phi in insertion_family(weight) {
            rows.push(refined_johnson(&phi, 3).unwrap().coordinates());
        }
    }
    assert_eq!(rows.len(), 10);
    let expected = 2 * (witt_rank(2, 3).unwrap() + witt_rank(2, 4).unwrap()) as usize;
    assert_eq!(expected, 10);
    assert_eq!(intmat::rank(&rows), expected, "span rank of refined values");
    finish(
        9,
        "refinement exactness and span rank 10",
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_10_surjectivity_witness_round_trip() {
    let start = Instant::now();
    let mut r = rng(1010);
    for trial in 0..20 {
        // random unimodular abelianization plus random degree-2 corrections
        let linear_factors = r.gen_range(1..=4);
        let linear = random_automorphism(&mut r, 2, linear_factors);
        let correction_factors = r.gen_range(1..=2);
        let correction = random_filtration_element(&mut r, 2, 2, correction_factors);
        let endo = linear.compose(&correction).unwrap();
        let target = phi_k(&endo, 3).unwrap();
        let lift = target.realize();
        assert!(jcalc_core::is_two_connected(&lift).0, "trial {trial}");
        let back = phi_k(&lift, 3).unwrap();
        assert!(back.equal(&target).unwrap(), "round trip at trial {trial}");
    }
    finish(
        10,
        "20 random targets realized and round-tripped",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_11_group_inversion() {
    let start = Instant::now();
    let mut r = rng(1111);
    for trial in 0..20 {
        let k = r.gen_range(2..=4);
        let linear_factors = r.gen_range(1..=3);
        let linear = random_automorphism(&mut r, 2, linear_factors);
        let twist_factors = r.gen_range(0..=2);
        let twist = random_filtration_element(&mut r, 2, 2, twist_factors);
        let a = phi_k(&linear.compose(&twist).unwrap(), k).unwrap();
        let inv = a.invert().unwrap();
        assert!(
            a.compose(&inv).unwrap().is_identity().unwrap(),
            "a . a^-1 = id at trial {trial}, k={k}"
        );
        assert!(
            inv.compose(&a).unwrap().is_identity().unwrap(),
            "a^-1 . a = id at trial {trial}, k={k}"
        );
    }
    finish(
        11,
        "inverse law for 20 random automorphisms, k <= 4",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_12_boundary_certificate_multiplicativity() {
    let start = Instant::now();
    let mut r = rng(1212);
    for trial in 0..20 {
        let k = r.gen_range(2..=3);
        let a = certified_autnk(&mut r, k);
        let b = certified_autnk(&mut r, k);
        assert!(
            a.boundary_certificate(1).unwrap(),
            "trial {trial}: left factor"
        );
        assert!(
            b.boundary_certificate(1).unwrap(),
            "trial {trial}: right factor"
        );
        assert!(
            a.compose(&b).unwrap().boundary_certificate(1).unwrap(),
            "trial {trial}: composite certificate, k={k}"
        );
    }
    finish(
        12,
        "certificate closure for 20 certified pairs",
        start,
        Duration::from_secs(30),
    );
}
