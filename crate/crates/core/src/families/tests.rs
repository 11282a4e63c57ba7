use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::stability::{certify_stability, direct_iterate_oracle, parse_poly, Budget, Method, Verdict};
use crate::tower::canonical_field;

fn field(q: u64) -> LevelField {
    canonical_field(q).unwrap()
}

fn poly(k: &LevelField, s: &str) -> Poly<FieldElement> {
    parse_poly(k, s).unwrap()
}

fn nonzero(k: &LevelField) -> Vec<FieldElement> {
    k.elements().into_iter().skip(1).collect()
}

#[test]
fn quad_build_examples() {
    let k = field(5);
    let inst = QuadraticFamilyInstance::build(&k, &k.one(), &k.from_int(2)).unwrap();
    assert_eq!(inst.f(), &poly(&k, "1,1,1"));

    let k = field(13);
    let inst = QuadraticFamilyInstance::build(&k, &k.one(), &k.from_int(2)).unwrap();
    let ring = PolyRing::new(k.clone());
    assert_eq!(ring.discriminant(inst.f()).unwrap(), k.from_int(2));

    let k = field(5);
    let err = QuadraticFamilyInstance::build(&k, &k.zero(), &k.from_int(2));
    assert!(matches!(err, Err(Error::ZeroParameter("b"))));
    let k = field(4);
    let err = QuadraticFamilyInstance::build(&k, &k.one(), &k.one());
    assert!(matches!(err, Err(Error::EvenCharacteristic)));
}

#[test]
fn quad_discriminant_is_delta() {
    for q in [5, 13] {
        let k = field(q);
        let ring = PolyRing::new(k.clone());
        for b in nonzero(&k) {
            for delta in nonzero(&k) {
                let inst = QuadraticFamilyInstance::build(&k, &b, &delta).unwrap();
                assert_eq!(ring.discriminant(inst.f()).unwrap(), delta);
            }
        }
    }
}

#[test]
fn quad_shift_parametrization_agrees() {
    // 4ab + 2c = δ with the shifted form b(x+a)^2 + c(x+a) - a
    let k = field(13);
    for a in k.elements() {
        for b in nonzero(&k) {
            for c in k.elements() {
                let delta = k.add(&k.mul(&k.from_int(4), &k.mul(&a, &b)), &k.mul(&k.from_int(2), &c));
                let by_shift = QuadraticFamilyInstance::from_shift_params(&k, &a, &b, &c);
                match QuadraticFamilyInstance::build(&k, &b, &delta) {
                    Ok(inst) => assert_eq!(by_shift.unwrap().f(), inst.f()),
                    Err(_) => assert!(by_shift.is_err()),
                }
            }
        }
    }
}

#[test]
fn quad_is_stable_examples() {
    let k = field(5);
    let stable = |k: &LevelField, d: i64| QuadraticFamilyInstance::build(k, &k.one(), &k.from_int(d)).unwrap().is_stable();
    assert!(stable(&k, 2));
    assert!(!stable(&k, 4));
    assert!(!stable(&field(7), 3));
}

#[test]
fn delta_recurrence_examples() {
    let k = field(5);
    let out = QuadraticFamilyInstance::build(&k, &k.one(), &k.from_int(2))
        .unwrap()
        .delta_recurrence_check(4)
        .unwrap();
    assert!(out.holds());
    assert!(out.all_nonsquare());
    assert_eq!(out.deltas[0], "2");

    let k = field(13);
    let out = QuadraticFamilyInstance::build(&k, &k.from_int(3), &k.from_int(2))
        .unwrap()
        .delta_recurrence_check(4)
        .unwrap();
    assert!(out.holds() && out.all_nonsquare());

    let k = field(7);
    let out = QuadraticFamilyInstance::build(&k, &k.one(), &k.from_int(3))
        .unwrap()
        .delta_recurrence_check(1)
        .unwrap();
    assert!(out.holds());
    assert_eq!(out.square, [false, true]);
}

#[test]
fn delta_one_is_square_when_q_is_3_mod_4() {
    for q in [7, 11] {
        let k = field(q);
        for b in nonzero(&k) {
            for delta in nonzero(&k) {
                if k.is_square(&delta).unwrap() {
                    continue;
                }
                let inst = QuadraticFamilyInstance::build(&k, &b, &delta).unwrap();
                let out = inst.delta_recurrence_check(1).unwrap();
                assert!(out.holds());
                assert_eq!(out.square, [false, true], "b={b:?} delta={delta:?}");
            }
        }
    }
}

#[test]
fn quad_counts() {
    let budget = Budget::default();
    let k = field(5);
    let count = quad_count_lower_bound(&k).unwrap();
    assert_eq!(count.count, 8);
    assert_eq!(count.stated_bound, 12);
    assert_eq!(count.prior_bound, 4);
    for inst in &count.instances {
        let r = certify_stability(&k, inst.f(), 6, Method::Generic, &budget).unwrap();
        assert!(r.stable_to_depth());
    }
    for b in nonzero(&k) {
        for delta in nonzero(&k) {
            if k.is_square(&delta).unwrap() {
                let inst = QuadraticFamilyInstance::build(&k, &b, &delta).unwrap();
                let r = certify_stability(&k, inst.f(), 2, Method::Generic, &budget).unwrap();
                assert_eq!(r.first_reducible, Some(0));
            }
        }
    }

    let k = field(13);
    let count = quad_count_lower_bound(&k).unwrap();
    assert_eq!(count.count, 72);
    for inst in count.instances.iter().step_by(9) {
        let r = certify_stability(&k, inst.f(), 4, Method::Generic, &budget).unwrap();
        assert!(r.stable_to_depth());
    }
    assert!(matches!(quad_count_lower_bound(&field(7)), Err(Error::WrongResidueClass(_))));
}

#[test]
fn cubic2_examples() {
    let k = field(2);
    let inst = CubicChar2FamilyInstance::build(&k, &k.one(), &k.one()).unwrap();
    assert_eq!(inst.f(), &poly(&k, "1,0,1,1"));
    assert!(inst.is_stable());

    let k = field(4);
    let inst = CubicChar2FamilyInstance::build(&k, &k.one(), &k.one()).unwrap();
    let ring = PolyRing::new(k.clone());
    assert_eq!(inst.is_stable(), ring.is_irreducible(inst.f()));

    let k = field(8);
    let violating = nonzero(&k)
        .into_iter()
        .flat_map(|a| nonzero(&k).into_iter().map(move |b| (a.clone(), b)))
        .find_map(|(a, b)| CubicChar2FamilyInstance::build(&k, &a, &b).err());
    assert!(matches!(violating, Some(Error::HypothesisViolated(_))));
    assert!(matches!(
        CubicChar2FamilyInstance::build(&field(3), &field(3).one(), &field(3).one()),
        Err(Error::WrongResidueClass(_))
    ));
}

#[test]
fn cubic_beta_recurrence() {
    let k = field(2);
    let inst = CubicChar2FamilyInstance::build(&k, &k.one(), &k.one()).unwrap();
    let out = inst.beta_recurrence_check(4).unwrap();
    assert!(out.holds());
    assert_eq!(out.irreducible, [true; 5]);

    let chain = crate::stability::ChainTrace::new(&k, inst.f(), Default::default()).unwrap();
    assert!(k.is_one(&inst.beta_at(&chain, 0).unwrap()));

    for q in [4, 8, 16] {
        let k = field(q);
        for a in nonzero(&k) {
            for b in nonzero(&k) {
                let Ok(inst) = CubicChar2FamilyInstance::build(&k, &a, &b) else { continue };
                if inst.is_stable() {
                    assert!(inst.beta_recurrence_check(2).unwrap().holds());
                }
            }
        }
    }
}

#[test]
fn trace_inverse_identity_exhaustive() {
    for m in 1..=6u32 {
        let k = field(1 << m);
        for u in k.elements().into_iter().skip(2) {
            assert!(trace_inverse_identity_holds(&k, &u).unwrap(), "m={m}");
        }
    }
    assert!(trace_inverse_identity_holds(&field(4), &field(4).one()).is_err());
}

#[test]
fn trace_inverse_identity_sampled() {
    let mut rng = ChaCha8Rng::seed_from_u64(crate::PROPERTY_SEED + 3);
    for _ in 0..500 {
        let m = rng.gen_range(1..=8u32);
        let k = field(1 << m);
        if m == 1 {
            continue;
        }
        let u = k.element(rng.gen_range(2..1u64 << m));
        assert!(trace_inverse_identity_holds(&k, &u).unwrap());
    }
}

#[test]
fn cubic_trinomial_claim_against_engine() {
    assert!(trinomial_stability_claim(1));
    assert!(trinomial_stability_claim(2));
    assert!(!trinomial_stability_claim(3));

    // x^3 + x + 1 splits completely over F_8.
    let k = field(8);
    let ring = PolyRing::new(k.clone());
    assert_eq!(ring.roots_in_field(&poly(&k, "1,1,0,1")).len(), 3);

    // Over F_2 and F_4 the second iterate already factors, so the engine
    // records the first reducible depth as 1.
    for q in [2, 4] {
        let k = field(q);
        let f = poly(&k, "1,1,0,1");
        let r = certify_stability(&k, &f, 3, Method::Generic, &Budget::default()).unwrap();
        assert_eq!(r.first_reducible, Some(1));
        assert!(direct_iterate_oracle(&k, &f, 1, 27).unwrap());
        assert!(!direct_iterate_oracle(&k, &f, 2, 27).unwrap());
    }
}

#[test]
fn cubic_stability_matches_irreducibility() {
    let budget = Budget::default();
    for m in 1..=4u32 {
        let k = field(1 << m);
        let ring = PolyRing::new(k.clone());
        for a in nonzero(&k) {
            for b in nonzero(&k) {
                let Ok(inst) = CubicChar2FamilyInstance::build(&k, &a, &b) else { continue };
                let r = certify_stability(&k, inst.f(), 3, Method::Generic, &budget).unwrap();
                if ring.is_irreducible(inst.f()) {
                    assert!(r.stable_to_depth(), "m={m} f={}", ring.format(inst.f()));
                } else {
                    assert_eq!(r.first_reducible, Some(0));
                }
            }
        }
    }
}

#[test]
fn quartic_examples() {
    let k = field(5);
    let inst = QuarticFamilyInstance::build(&k, &k.one(), &k.from_int(2)).unwrap();
    let ring = PolyRing::new(k.clone());
    let expected = ring.add(&shifted_power(&ring, &k.from_int(3), &k.one(), 4), &ring.constant(k.from_int(4)));
    assert_eq!(inst.f(), &expected);
    assert!(inst.is_stable());
    for method in [Method::Generic, Method::TheoremDriven] {
        let r = certify_stability(&k, inst.f(), 4, method, &Budget::default()).unwrap();
        assert!(r.stable_to_depth());
    }
    let out = inst.beta_recurrence_check(3).unwrap();
    assert!(out.holds());
    assert_eq!(out.nonsquare, [true; 4]);

    let inst = QuarticFamilyInstance::build(&k, &k.one(), &k.from_int(4)).unwrap();
    assert!(!inst.is_stable());
    assert!(!ring.is_irreducible(inst.f()));

    let k = field(9);
    let g = nonzero(&k).into_iter().find(|x| !k.is_square(x).unwrap()).unwrap();
    assert!(!QuarticFamilyInstance::build(&k, &g, &g).unwrap().is_stable());

    assert!(matches!(
        QuarticFamilyInstance::build(&field(7), &field(7).one(), &field(7).one()),
        Err(Error::WrongResidueClass(_))
    ));
    assert!(matches!(
        QuarticFamilyInstance::build(&k, &k.zero(), &k.one()),
        Err(Error::ZeroParameter("a"))
    ));
}

#[test]
fn quartic_beta_recurrence_sweep() {
    for q in [5, 9, 13] {
        let k = field(q);
        for a in nonzero(&k) {
            for b in nonzero(&k) {
                let inst = QuarticFamilyInstance::build(&k, &a, &b).unwrap();
                let out = inst.beta_recurrence_check(1).unwrap();
                assert!(out.holds());
                assert_eq!(out.nonsquare[0], inst.is_stable());
                if inst.is_stable() {
                    assert!(out.nonsquare[1]);
                }
            }
        }
    }
}

#[test]
fn quartic3_examples() {
    let k = field(3);
    let one = k.one();
    let inst = QuarticChar3FamilyInstance::build(&k, &one, &one, &one).unwrap();
    let chain = crate::stability::ChainTrace::new(&k, inst.f(), Default::default()).unwrap();
    assert!(k.is_one(&inst.beta_at(&chain, 0).unwrap()));
    let lv = inst.level_check(&chain, 0).unwrap();
    assert_eq!(lv.resolvent_roots, 1);
    assert_eq!(lv.root_nonsquare, Some(true));
    assert!(lv.irreducible);

    assert!(matches!(
        QuarticChar3FamilyInstance::build(&k, &one, &one, &k.zero()),
        Err(Error::ZeroParameter("c"))
    ));
}

#[test]
fn quartic3_agrees_with_generic() {
    let budget = Budget::default();
    for q in [3, 9] {
        let k = field(q);
        let depth = if q == 3 { 3 } else { 1 };
        let ring = PolyRing::new(k.clone());
        for a in k.elements() {
            for b in nonzero(&k) {
                for c in nonzero(&k) {
                    let inst = QuarticChar3FamilyInstance::build(&k, &a, &b, &c).unwrap();
                    let lv0 = inst.level_check(
                        &crate::stability::ChainTrace::new(&k, inst.f(), Default::default()).unwrap(),
                        0,
                    );
                    assert_eq!(lv0.unwrap().irreducible, ring.is_irreducible(inst.f()));
                    let th = inst.certify(depth, &budget).unwrap();
                    let gen = certify_stability(&k, inst.f(), depth, Method::Generic, &budget).unwrap();
                    assert_eq!(th.verdicts(), gen.verdicts(), "f={}", ring.format(inst.f()));
                    assert!(th.certificate.is_none());
                }
            }
        }
    }
}

#[test]
fn theorem_driven_agrees_with_generic() {
    let budget = Budget::default();
    let mut polys: Vec<(LevelField, Poly<FieldElement>, usize)> = Vec::new();
    for q in [5, 13] {
        let k = field(q);
        for b in nonzero(&k).into_iter().take(3) {
            for delta in nonzero(&k) {
                let inst = QuadraticFamilyInstance::build(&k, &b, &delta).unwrap();
                polys.push((k.clone(), inst.f().clone(), 3));
            }
        }
    }
    for q in [2, 4, 8] {
        let k = field(q);
        for a in nonzero(&k) {
            for b in nonzero(&k) {
                if let Ok(inst) = CubicChar2FamilyInstance::build(&k, &a, &b) {
                    polys.push((k.clone(), inst.f().clone(), 3));
                }
            }
        }
    }
    for q in [5, 9, 13] {
        let k = field(q);
        for a in nonzero(&k).into_iter().take(4) {
            for b in nonzero(&k) {
                let inst = QuarticFamilyInstance::build(&k, &a, &b).unwrap();
                polys.push((k.clone(), inst.f().clone(), 2));
            }
        }
    }
    for (k, f, depth) in polys {
        assert!(FamilyShape::detect(&k, &f).is_some());
        let th = certify_stability(&k, &f, depth, Method::TheoremDriven, &budget).unwrap();
        let gen = certify_stability(&k, &f, depth, Method::Generic, &budget).unwrap();
        assert_eq!(th.verdicts(), gen.verdicts(), "f={}", k.tower().format_poly(&f));
        assert_eq!(th.certificate, gen.certificate);
        if th.verdicts()[0] == Verdict::Irreducible && th.certificate.is_some() {
            assert!(th.stable_to_depth());
        }
    }
}

#[test]
fn detection_rejects_non_members() {
    let k = field(2);
    assert!(FamilyShape::detect(&k, &poly(&k, "1,1,0,1")).is_none());
    let k = field(7);
    // b = 1, δ = 2 gives x^2 + x + 5; x^2 + x + 1 has discriminant 4 ≠ 2
    assert!(matches!(FamilyShape::detect(&k, &poly(&k, "5,1,1")), Some(FamilyShape::Quadratic(_))));
    assert!(FamilyShape::detect(&k, &poly(&k, "1,1,1")).is_none());
    let k = field(5);
    assert!(FamilyShape::detect(&k, &poly(&k, "1,0,0,0,1")).is_none());
}
