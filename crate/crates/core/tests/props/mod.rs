//! Randomized property checks shared by the `properties` test target and the
//! CLI acceptance suite. Each check runs `cases` random inputs from a fixed
//! seed and returns the first counterexample as an error string.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use pptlab_core::echelon::{echelon_reduce, EchelonBasis};
use pptlab_core::ideal::{frobenius_components, multiplier_box};
use pptlab_core::ladder::containment_profile;
use pptlab_core::{
    delta, splitting_sequence, u_single, Context, HypersurfaceInput, LiftPoly, Monomial, ResIdeal,
    ResPoly,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Integer polynomial: exponent vector -> coefficient.
pub type IntPoly = Vec<(Vec<u32>, i64)>;

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

/// Like [`run`] for checks that may skip an input; fails unless at least
/// `cases` inputs were actually exercised.
fn run_counted<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<bool, TestCaseError>,
) -> Result<(), String> {
    let used = std::sync::atomic::AtomicU32::new(0);
    // Oversample so that skipped inputs do not starve the count.
    runner(cases * 2)
        .run(&strategy, |v| {
            if test(v)? {
                used.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let used = used.into_inner();
    if used < cases {
        return Err(format!("only {used} of {} inputs were usable", cases * 2));
    }
    Ok(())
}

fn ctx(p: u32, n: usize) -> Arc<Context> {
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    Context::new(p, &names).unwrap()
}

fn int_poly(n: usize, max_exp: u32, max_terms: usize, coeff: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -coeff..=coeff),
        0..=max_terms,
    )
}

fn lift(ctx: &Arc<Context>, f: &IntPoly) -> LiftPoly {
    LiftPoly::from_terms(
        ctx,
        f.iter().map(|(e, c)| (Monomial::new(e).unwrap(), *c)),
    )
}

fn res(ctx: &Arc<Context>, f: &IntPoly) -> ResPoly {
    ResPoly::from_terms(
        ctx,
        f.iter().map(|(e, c)| (Monomial::new(e).unwrap(), *c)),
    )
}

/// (p, N) with N ≤ 3.
fn small_setting() -> impl Strategy<Value = (u32, usize)> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..=3)
}

/// Δ over the integers, reduced mod p, as an oracle independent of Z/p^2.
fn delta_over_z(p: u32, f: &IntPoly) -> HashMap<Vec<u32>, i64> {
    let mut acc: HashMap<Vec<u32>, i128> = HashMap::new();
    for (e, c) in f {
        *acc.entry(e.clone()).or_insert(0) += *c as i128;
    }
    let base: Vec<(Vec<u32>, i128)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    let mut power: HashMap<Vec<u32>, i128> = HashMap::from([(vec![0; base.first().map_or(0, |t| t.0.len())], 1)]);
    for _ in 0..p {
        let mut next: HashMap<Vec<u32>, i128> = HashMap::new();
        for (a, ca) in &power {
            for (b, cb) in &base {
                let m: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *next.entry(m).or_insert(0) += ca * cb;
            }
        }
        power = next;
    }
    for (e, c) in &base {
        let m: Vec<u32> = e.iter().map(|x| x * p).collect();
        *power.entry(m).or_insert(0) -= c;
    }
    let p = p as i128;
    power
        .into_iter()
        .filter_map(|(m, c)| {
            assert_eq!(c % p, 0, "f^p - φ(f) must be divisible by p");
            let r = (c / p).rem_euclid(p) as i64;
            (r != 0).then_some((m, r))
        })
        .collect()
}

fn as_map(g: &ResPoly) -> HashMap<Vec<u32>, i64> {
    let n = g.ctx().nvars();
    g.terms()
        .iter()
        .map(|(m, c)| (m.exps()[..n].to_vec(), *c as i64))
        .collect()
}

fn binom(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

pub fn ring_axioms(cases: u32) -> Result<(), String> {
    let s = small_setting().prop_flat_map(|(p, n)| {
        (Just(p), Just(n), int_poly(n, 4, 4, 40), int_poly(n, 4, 4, 40), int_poly(n, 4, 4, 40))
    });
    run(cases, s, |(p, n, a, b, c)| {
        let k = ctx(p, n);
        let (a, b, c) = (lift(&k, &a), lift(&k, &b), lift(&k, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&(&a - &b) + &b) == a);
        Ok(())
    })
}

pub fn frobenius_homomorphism(cases: u32) -> Result<(), String> {
    let s = small_setting()
        .prop_flat_map(|(p, n)| (Just(p), Just(n), int_poly(n, 3, 4, 40), int_poly(n, 3, 4, 40)));
    run(cases, s, |(p, n, a, b)| {
        let k = ctx(p, n);
        let (a, b) = (lift(&k, &a), lift(&k, &b));
        let phi = |x: &LiftPoly| x.frobenius_substitute().unwrap();
        prop_assert_eq!(phi(&(&a * &b)), &phi(&a) * &phi(&b));
        prop_assert_eq!(phi(&(&a + &b)), &phi(&a) + &phi(&b));
        // φ(a) ≡ a^p mod p.
        prop_assert_eq!(phi(&a).project_mod_p(), a.project_mod_p().pow(p as u64).unwrap());
        // p·a / p = ā.
        prop_assert_eq!(a.scale(p as i64).exact_div_p().unwrap(), a.project_mod_p());
        Ok(())
    })
}

pub fn delta_product_rule(cases: u32) -> Result<(), String> {
    let s = small_setting()
        .prop_flat_map(|(p, n)| (Just(p), Just(n), int_poly(n, 3, 4, 40), int_poly(n, 3, 4, 40)));
    run(cases, s, |(p, n, f, g)| {
        let k = ctx(p, n);
        let (f, g) = (lift(&k, &f), lift(&k, &g));
        let (fb, gb) = (f.project_mod_p(), g.project_mod_p());
        let lhs = delta(&(&f * &g));
        let rhs = &(&fb.pow(p as u64).unwrap() * &delta(&g)) + &(&gb.pow(p as u64).unwrap() * &delta(&f));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn delta_sum_rule(cases: u32) -> Result<(), String> {
    let s = small_setting()
        .prop_flat_map(|(p, n)| (Just(p), Just(n), int_poly(n, 3, 4, 40), int_poly(n, 3, 4, 40)));
    run(cases, s, |(p, n, f, g)| {
        let k = ctx(p, n);
        let (f, g) = (lift(&k, &f), lift(&k, &g));
        let (fb, gb) = (f.project_mod_p(), g.project_mod_p());
        let mut rhs = &delta(&f) + &delta(&g);
        for i in 1..p as u64 {
            let c = binom(p as u64, i) / p as i64;
            let term = &fb.pow(i).unwrap() * &gb.pow(p as u64 - i).unwrap();
            rhs = &rhs + &term.scale(c);
        }
        prop_assert_eq!(delta(&(&f + &g)), rhs);
        Ok(())
    })
}

/// Δ computed on Z/p^2 agrees with Δ over Z of any integer pre-image,
/// including pre-images perturbed by p^2·g.
pub fn delta_mod_p2_stability(cases: u32) -> Result<(), String> {
    let s = small_setting().prop_flat_map(|(p, n)| {
        (Just(p), Just(n), int_poly(n, 3, 4, 30), int_poly(n, 3, 3, 5))
    });
    run(cases, s, |(p, n, f, g)| {
        let k = ctx(p, n);
        let q = (p * p) as i64;
        let mut perturbed = f.clone();
        perturbed.extend(g.iter().map(|(e, c)| (e.clone(), c * q)));
        let computed = as_map(&delta(&lift(&k, &f)));
        prop_assert_eq!(&delta_over_z(p, &f), &computed);
        prop_assert_eq!(&delta_over_z(p, &perturbed), &computed);
        Ok(())
    })
}

pub fn u_semilinearity(cases: u32) -> Result<(), String> {
    let s = small_setting()
        .prop_flat_map(|(p, n)| (Just(p), Just(n), int_poly(n, 3, 4, 10), int_poly(n, 12, 6, 10)));
    run(cases, s, |(p, n, g, h)| {
        let k = ctx(p, n);
        let (g, h) = (res(&k, &g), res(&k, &h));
        let lhs = u_single(&(&g.frobenius().unwrap() * &h));
        prop_assert_eq!(lhs, &g * &u_single(&h));
        Ok(())
    })
}

/// u(x^a) = x^{(a - (p-1))/p} when every a_i ≡ p-1 mod p, else 0.
pub fn u_basis_law() -> Result<(), String> {
    for p in [2u32, 3, 5] {
        let k = ctx(p, 2);
        for a in 0..3 * p {
            for b in 0..3 * p {
                let x = ResPoly::monomial(&k, Monomial::new(&[a, b]).unwrap(), 1);
                let want = if a % p == p - 1 && b % p == p - 1 {
                    ResPoly::monomial(&k, Monomial::new(&[a / p, b / p]).unwrap(), 1)
                } else {
                    ResPoly::zero(&k)
                };
                if u_single(&x) != want {
                    return Err(format!("u(x^{a} y^{b}) at p = {p}"));
                }
            }
        }
    }
    Ok(())
}

/// u_image(J) ⊆ 𝔪 ⟺ J ⊆ 𝔪^{[p]}, with the right side checked both on
/// generators and by enumerating u(x^a g) over the multiplier box.
pub fn fedder_duality(cases: u32) -> Result<(), String> {
    let s = (prop::sample::select(vec![2u32, 3]), 1usize..=2).prop_flat_map(|(p, n)| {
        (
            Just(p),
            Just(n),
            prop::collection::vec((int_poly(n, 2 * p, 4, 5), 0..n), 1..=3),
            any::<bool>(),
        )
    });
    run(cases, s, |(p, n, gens, inside)| {
        let k = ctx(p, n);
        let gens: Vec<ResPoly> = gens
            .iter()
            .map(|(g, i)| {
                let g = res(&k, g);
                if inside {
                    g.mul_monomial(&Monomial::var(*i, p)).unwrap()
                } else {
                    g
                }
            })
            .collect();
        let j = ResIdeal::new(&k, gens.iter()).unwrap();
        let image_in_m = j.u_image().unwrap().gens().iter().all(|g| g.constant_term() == 0);
        let by_gens = j.in_frobenius_power(1);
        let by_box = gens.iter().all(|g| {
            multiplier_box(&k)
                .iter()
                .all(|m| u_single(&g.mul_monomial(m).unwrap()).constant_term() == 0)
        });
        prop_assert_eq!(image_in_m, by_gens);
        prop_assert_eq!(by_gens, by_box);
        if inside {
            prop_assert!(by_gens);
        }
        Ok(())
    })
}

/// u_image((g k)) ⊆ u_image((g)): every Frobenius component of g k lies in
/// the span of bounded multiples of the components of g.
pub fn u_image_monotone(cases: u32) -> Result<(), String> {
    let s = (prop::sample::select(vec![2u32, 3]), 1usize..=2).prop_flat_map(|(p, n)| {
        (Just(p), Just(n), int_poly(n, 5, 4, 5), int_poly(n, 3, 3, 5))
    });
    run(cases, s, |(p, n, g, kk)| {
        let c = ctx(p, n);
        let (g, kk) = (res(&c, &g), res(&c, &kk));
        let d = kk.total_degree().unwrap_or(0) as u32;
        let mut span = EchelonBasis::new(&c);
        for (_, comp) in frobenius_components(&g) {
            for a in 0..=d {
                for b in 0..=if n == 2 { d } else { 0 } {
                    let e: Vec<u32> = if n == 2 { vec![a, b] } else { vec![a] };
                    span.insert(&comp.mul_monomial(&Monomial::new(&e).unwrap()).unwrap())
                        .unwrap();
                }
            }
        }
        for (_, comp) in frobenius_components(&(&g * &kk)) {
            prop_assert!(span.contains(&comp), "component {} not reached", comp);
        }
        Ok(())
    })
}

pub fn echelon_span(cases: u32) -> Result<(), String> {
    let s = small_setting().prop_flat_map(|(p, n)| {
        (Just(p), Just(n), prop::collection::vec(int_poly(n, 3, 5, 10), 0..=6))
    });
    run(cases, s, |(p, n, gens)| {
        let k = ctx(p, n);
        let gens: Vec<ResPoly> = gens.iter().map(|g| res(&k, g)).collect();
        let reduced = echelon_reduce(&k, gens.iter()).unwrap();
        let mut from_gens = EchelonBasis::new(&k);
        for g in &gens {
            from_gens.insert(g).unwrap();
        }
        let mut from_reduced = EchelonBasis::new(&k);
        for r in &reduced {
            from_reduced.insert(r).unwrap();
        }
        prop_assert_eq!(from_gens.rank(), reduced.len());
        for g in &gens {
            prop_assert!(from_reduced.contains(g));
        }
        for r in &reduced {
            prop_assert!(from_gens.contains(r));
        }
        Ok(())
    })
}

/// Random inputs in 𝔪 with f̄ ≠ 0, over p ∈ {2, 3} and N ≤ 2.
fn hypersurface() -> impl Strategy<Value = (u32, usize, IntPoly)> {
    (prop::sample::select(vec![2u32, 3]), 1usize..=2).prop_flat_map(|(p, n)| {
        let f = int_poly(n, 4, 4, 20).prop_filter("constant term", |f| {
            f.iter().all(|(e, _)| e.iter().any(|&x| x > 0))
        });
        (Just(p), Just(n), f)
    })
}

fn input(p: u32, n: usize, f: &IntPoly) -> Option<HypersurfaceInput> {
    let k = ctx(p, n);
    HypersurfaceInput::validate(&k, lift(&k, f)).ok()
}

pub fn prefix_stability(cases: u32) -> Result<(), String> {
    run_counted(cases, hypersurface(), |(p, n, f)| {
        let Some(h) = input(p, n, &f) else {
            return Ok(false);
        };
        let short = splitting_sequence(&h, 2).unwrap();
        let long = splitting_sequence(&h, 4).unwrap();
        prop_assert_eq!(&short.values[..], &long.values[..3]);
        Ok(true)
    })
}

pub fn mod_p2_invariance(cases: u32) -> Result<(), String> {
    let s = hypersurface().prop_flat_map(|(p, n, f)| (Just(p), Just(n), Just(f), int_poly(n, 4, 4, 5)));
    run_counted(cases, s, |(p, n, f, g)| {
        let Some(h) = input(p, n, &f) else {
            return Ok(false);
        };
        let q = (p * p) as i64;
        let mut perturbed = f.clone();
        perturbed.extend(g.iter().map(|(e, c)| (e.clone(), c * q)));
        let h2 = input(p, n, &perturbed).expect("same class mod p^2");
        prop_assert_eq!(h.delta_f(), h2.delta_f());
        prop_assert_eq!(
            splitting_sequence(&h, 3).unwrap().values,
            splitting_sequence(&h2, 3).unwrap().values
        );
        Ok(true)
    })
}

pub fn downward_closure(cases: u32) -> Result<(), String> {
    run_counted(cases, hypersurface(), |(p, n, f)| {
        let Some(h) = input(p, n, &f) else {
            return Ok(false);
        };
        let seq = splitting_sequence(&h, 3).unwrap();
        for step in 1..=seq.depth() {
            let prefix = &seq.values[1..step];
            if prefix.contains(&p) {
                break;
            }
            let profile = containment_profile(&h, prefix).unwrap();
            prop_assert!(profile[0], "s = 0 fails at step {}", step);
            let count = profile.iter().take_while(|&&b| b).count();
            prop_assert!(profile[count..].iter().all(|&b| !b), "profile {:?}", profile);
            prop_assert_eq!(count as u32 - 1, seq.values[step]);
        }
        Ok(true)
    })
}
