//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `EXPECTED_FAILURES` are known to contradict exact
//! computation; they still run in full and print FAIL, but only an
//! unexpected failure makes the process exit non-zero. Set
//! `ACCEPTANCE_STRICT=1` to fail on any FAIL line.

use std::collections::HashSet;
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stablepoly::census::{run_census, CensusOptions};
use stablepoly::classify::{cubic_trinomial_pattern, parity_check, quartic_binomial_irreducible, quartic_char3_classify};
use stablepoly::families::{
    quad_count_lower_bound, trace_inverse_identity_holds, trinomial_stability_claim, CubicChar2FamilyInstance,
    QuadraticFamilyInstance, QuarticChar3FamilyInstance, QuarticFamilyInstance, CUBIC_CHAR2_TAG, QUADRATIC_TAG,
};
use stablepoly::stability::{base_field, direct_iterate_oracle, parse_poly, sr_check};
use stablepoly::{
    certify_stability, Budget, ChainTrace, Field, FieldElement, LevelField, Method, Poly, PolyRing,
    PROPERTY_SEED,
};

type Check = Result<String, Box<dyn std::error::Error>>;

/// x^3 + x + 1 is reducible at the second iterate over F_2, F_4, F_16 and
/// F_32, so the stability half of that criterion cannot hold.
const EXPECTED_FAILURES: &[usize] = &[4];

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+).into());
        }
    };
}

fn nonzero(k: &LevelField) -> Vec<FieldElement> {
    k.elements().into_iter().skip(1).collect()
}

/// Every polynomial of degree `d` over a small field, or only the monic ones.
fn all_polys(k: &LevelField, d: usize, monic: bool) -> Vec<Poly<FieldElement>> {
    let ring = PolyRing::new(k.clone());
    let elems = k.elements();
    let q = elems.len();
    let leads: Vec<FieldElement> = if monic { vec![k.one()] } else { nonzero(k) };
    let mut out = Vec::new();
    for lead in &leads {
        for idx in 0..q.pow(d as u32) {
            let mut c = Vec::with_capacity(d + 1);
            let mut n = idx;
            for _ in 0..d {
                c.push(elems[n % q].clone());
                n /= q;
            }
            c.push(lead.clone());
            out.push(ring.from_coeffs(c));
        }
    }
    out
}

fn conjecture_to_depth_eight() -> Check {
    let budget = Budget::default();
    let k = base_field(2)?;
    let f = parse_poly(&k, "1,0,1,1")?;
    let th = certify_stability(&k, &f, 8, Method::TheoremDriven, &budget)?;
    ensure!(th.stable_to_depth() && th.levels.len() == 9, "theorem-driven verdicts {}", th.verdict_string());
    ensure!(th.certificate.as_deref() == Some(CUBIC_CHAR2_TAG), "certificate {:?}", th.certificate);
    let gen = certify_stability(&k, &f, 6, Method::Generic, &budget)?;
    ensure!(gen.verdicts() == th.verdicts()[..7], "generic verdicts {}", gen.verdict_string());
    for n in 1..=5 {
        ensure!(direct_iterate_oracle(&k, &f, n, 243)?, "f^({n}) reducible by direct factorization");
    }
    Ok("levels 0..=8 irreducible; generic agrees to 6; iterates up to degree 243 irreducible".into())
}

fn quadratic_dichotomy() -> Check {
    let budget = Budget::default();
    let mut stable = 0;
    for q in [5, 13] {
        let k = base_field(q)?;
        for b in nonzero(&k) {
            for delta in nonzero(&k) {
                if k.is_square(&delta)? {
                    continue;
                }
                let inst = QuadraticFamilyInstance::build(&k, &b, &delta)?;
                let r = certify_stability(&k, inst.f(), 8, Method::TheoremDriven, &budget)?;
                ensure!(r.stable_to_depth(), "q={q} {} gives {}", r.poly, r.verdict_string());
                ensure!(r.certificate.as_deref() == Some(QUADRATIC_TAG), "q={q} {} not certified by the family", r.poly);
                let rec = inst.delta_recurrence_check(8)?;
                ensure!(rec.holds() && rec.all_nonsquare(), "q={q} {}: discriminant recurrence {:?}", r.poly, rec);
                stable += 1;
            }
        }
    }
    let mut dying = 0;
    for q in [7, 11] {
        let k = base_field(q)?;
        for b in nonzero(&k) {
            for delta in nonzero(&k) {
                if k.is_square(&delta)? {
                    continue;
                }
                let inst = QuadraticFamilyInstance::build(&k, &b, &delta)?;
                let rec = inst.delta_recurrence_check(1)?;
                ensure!(!rec.square[0] && rec.square[1], "q={q} b={b:?} delta={delta:?}: {:?}", rec.square);
                ensure!(!direct_iterate_oracle(&k, inst.f(), 2, 4)?, "q={q}: f^(2) irreducible");
                dying += 1;
            }
        }
    }
    Ok(format!("{stable} instances stable to depth 8 with the discriminant recurrence; {dying} instances reducible at f^(2)"))
}

fn quadratic_census() -> Check {
    let budget = Budget::default();
    let k = base_field(5)?;
    let (rows, summary) = run_census(&k, &CensusOptions::new(5, 2, 6), &budget)?;
    ensure!(rows.len() == 100, "census has {} rows", rows.len());
    ensure!(summary.stated_bound == 12 && summary.prior_bound == 4, "bounds {summary:?}");
    ensure!(summary.stable_to_depth as u64 >= summary.stated_bound, "only {} stable", summary.stable_to_depth);
    ensure!(summary.stable_to_depth as u64 >= summary.prior_bound, "only {} stable", summary.stable_to_depth);
    let count = quad_count_lower_bound(&k)?;
    let distinct: HashSet<_> = count.instances.iter().map(|i| i.f().clone()).collect();
    ensure!(count.count == 8 && distinct.len() == 8, "family count {}", count.count);
    let stable_polys: HashSet<&str> = rows.iter().filter(|r| r.stable_to_depth).map(|r| r.poly.as_str()).collect();
    let ring = PolyRing::new(k.clone());
    for inst in &count.instances {
        let s = ring.format(inst.f());
        ensure!(stable_polys.contains(s.as_str()), "family member {s} not stable in the census");
    }
    let q = 5u64;
    Ok(format!(
        "{} of 100 stable to depth 6 (bound {}, prior bound {}); family {} distinct = (q-1)(q-1)/2, \
         counting (q+1)/2 non-squares would give {}",
        summary.stable_to_depth,
        summary.stated_bound,
        summary.prior_bound,
        count.count,
        (q - 1) * (q + 1) / 2
    ))
}

fn trinomial_and_biconditional() -> Check {
    let budget = Budget::default();
    let mut failures = Vec::new();
    for m in 1..=5u32 {
        let k = base_field(1 << m)?;
        let f = parse_poly(&k, "1,1,0,1")?;
        let r = certify_stability(&k, &f, 5, Method::TheoremDriven, &budget)?;
        let claim = trinomial_stability_claim(m as usize);
        let ok = if claim { r.stable_to_depth() } else { r.first_reducible == Some(0) };
        if !ok {
            failures.push(format!("m={m} verdicts {}", r.verdict_string()));
        }
    }
    let mut checked = 0;
    for m in 1..=4u32 {
        let k = base_field(1 << m)?;
        let ring = PolyRing::new(k.clone());
        for a in nonzero(&k) {
            for b in nonzero(&k) {
                let Ok(inst) = CubicChar2FamilyInstance::build(&k, &a, &b) else { continue };
                let r = certify_stability(&k, inst.f(), 3, Method::Generic, &budget)?;
                let level0 = ring.is_irreducible(inst.f());
                if r.stable_to_depth() != level0 || (!level0 && r.first_reducible != Some(0)) {
                    failures.push(format!("m={m} {} verdicts {}", r.poly, r.verdict_string()));
                }
                checked += 1;
            }
        }
    }
    // x^3 + x^2 + 1 is the a = b = 1 member of the family the trinomial claim rests on
    let mut companion = Vec::new();
    for m in [1u32, 2, 4, 5] {
        let k = base_field(1 << m)?;
        let r = certify_stability(&k, &parse_poly(&k, "1,0,1,1")?, 5, Method::TheoremDriven, &budget)?;
        companion.push(format!("m={m} {}", r.verdict_string()));
    }
    let companion = companion.join(", ");
    let k2 = base_field(2)?;
    let second_iterate = direct_iterate_oracle(&k2, &parse_poly(&k2, "1,1,0,1")?, 2, 9)?;
    ensure!(
        failures.is_empty(),
        "{}; direct factorization of f^(2) over F_2: {}; biconditional checked on {checked} family instances; \
         x^3+x^2+1 for comparison: {companion}",
        failures.join("; "),
        if second_iterate { "irreducible" } else { "reducible" }
    );
    Ok(format!("x^3+x+1 verdicts as claimed; biconditional holds on {checked} family instances; x^3+x^2+1: {companion}"))
}

fn trace_identities() -> Check {
    let mut elements = 0;
    for m in 1..=6u32 {
        let k = base_field(1 << m)?;
        for u in k.elements().into_iter().skip(2) {
            ensure!(trace_inverse_identity_holds(&k, &u)?, "m={m} u={u:?}");
            elements += 1;
        }
    }
    let mut chains = 0;
    let mut levels = 0;
    let k = base_field(2)?;
    let seed = CubicChar2FamilyInstance::build(&k, &k.one(), &k.one())?;
    let out = seed.beta_recurrence_check(5)?;
    ensure!(out.holds(), "x^3+x^2+1 chain: {out:?}");
    chains += 1;
    levels += out.trace_identity.len();
    for m in 1..=4u32 {
        let k = base_field(1 << m)?;
        for a in nonzero(&k) {
            for b in nonzero(&k) {
                let Ok(inst) = CubicChar2FamilyInstance::build(&k, &a, &b) else { continue };
                if !inst.is_stable() {
                    continue;
                }
                let out = inst.beta_recurrence_check(3)?;
                ensure!(out.holds(), "m={m} a={a:?} b={b:?}: {out:?}");
                chains += 1;
                levels += out.trace_identity.len();
            }
        }
    }
    Ok(format!("{elements} elements exhaustive; trace identity on {levels} levels of {chains} chains"))
}

fn cubic_classifier() -> Check {
    let mut cases = 0;
    for m in 1..=5u32 {
        let k = base_field(1 << m)?;
        let ring = PolyRing::new(k.clone());
        for a in k.elements() {
            for b in nonzero(&k) {
                let v = cubic_trinomial_pattern(&k, &a, &b)?;
                let f = ring.from_coeffs(vec![b.clone(), a.clone(), k.zero(), k.one()]);
                let oracle = ring.factor_pattern(&f);
                ensure!(v.pattern == oracle, "m={m} {}: {} vs {}", ring.format(&f), v.pattern, oracle);
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} trinomials match"))
}

fn quartic_binomials() -> Check {
    let budget = Budget::default();
    let mut binomials = 0;
    for q in [5, 9, 13] {
        let k = base_field(q)?;
        let ring = PolyRing::new(k.clone());
        for a in nonzero(&k) {
            let f = ring.from_coeffs(vec![k.neg(&a), k.zero(), k.zero(), k.zero(), k.one()]);
            ensure!(quartic_binomial_irreducible(&k, &a)? == ring.is_irreducible(&f), "q={q} a={a:?}");
            binomials += 1;
        }
    }
    let k = base_field(5)?;
    let (mut stable, mut dead) = (0, 0);
    for a in nonzero(&k) {
        for b in nonzero(&k) {
            let inst = QuarticFamilyInstance::build(&k, &a, &b)?;
            if k.is_square(&k.mul(&a, &b))? {
                let r = certify_stability(&k, inst.f(), 4, Method::Generic, &budget)?;
                ensure!(r.first_reducible == Some(0), "square ab: {} gives {}", r.poly, r.verdict_string());
                dead += 1;
            } else {
                let r = certify_stability(&k, inst.f(), 4, Method::TheoremDriven, &budget)?;
                ensure!(r.stable_to_depth(), "{} gives {}", r.poly, r.verdict_string());
                let rec = inst.beta_recurrence_check(4)?;
                ensure!(rec.holds(), "{}: recurrence {:?}", r.poly, rec.recurrence);
                stable += 1;
            }
        }
    }
    Ok(format!("{binomials} binomials match; {stable} stable to depth 4 with the recurrence; {dead} reducible at depth 0"))
}

fn quartic_char3() -> Check {
    let budget = Budget::default();
    let mut cases = 0;
    for q in [3, 9, 27] {
        let k = base_field(q)?;
        let ring = PolyRing::new(k.clone());
        for c in nonzero(&k) {
            for d in k.elements() {
                let v = quartic_char3_classify(&k, &c, &d)?;
                let h = ring.from_coeffs(vec![d.clone(), c.clone(), k.zero(), k.zero(), k.one()]);
                let oracle = ring.factor_pattern(&h);
                ensure!(v.pattern == oracle, "q={q} {}: {} vs {}", ring.format(&h), v.pattern, oracle);
                cases += 1;
            }
        }
    }
    // F_3 has only 12 family instances; the sample is filled from F_9.
    let mut sample = Vec::new();
    let k3 = base_field(3)?;
    for a in k3.elements() {
        for b in nonzero(&k3) {
            for c in nonzero(&k3) {
                sample.push(QuarticChar3FamilyInstance::build(&k3, &a, &b, &c)?);
            }
        }
    }
    let k9 = base_field(9)?;
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);
    let mut seen = HashSet::new();
    while sample.len() < 50 {
        let idx = (rng.gen_range(0..9), rng.gen_range(1..9), rng.gen_range(1..9));
        if seen.insert(idx) {
            let el = |i: u64| k9.element(i);
            sample.push(QuarticChar3FamilyInstance::build(&k9, &el(idx.0), &el(idx.1), &el(idx.2))?);
        }
    }
    let f3 = sample.iter().filter(|i| i.field().characteristic() == 3 && i.field().degree() == 1).count();
    for inst in &sample {
        let th = inst.certify(3, &budget)?;
        let gen = certify_stability(inst.field(), inst.f(), 3, Method::Generic, &budget)?;
        ensure!(th.verdicts() == gen.verdicts(), "{}: {} vs {}", th.poly, th.verdict_string(), gen.verdict_string());
    }
    Ok(format!(
        "{cases} quartics match; resolvent certification agrees with generic to depth 3 on {} instances ({f3} over F_3, {} over F_9)",
        sample.len(),
        sample.len() - f3
    ))
}

fn infrastructure() -> Check {
    // F_5 up to F_{5^256}, built along the chain of x^2 + x + 1
    let k5 = base_field(5)?;
    let mut chain = ChainTrace::new(&k5, &parse_poly(&k5, "1,1,1")?, Default::default())?;
    for _ in 0..8 {
        chain = chain.extend_known(true)?;
    }
    let tower = chain.tower().clone();
    ensure!(tower.height() == 8, "tower height {}", tower.height());
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED + 9);
    let mut squares = 0;
    for i in 0..1000 {
        let level = i % 9;
        let coeffs = (0..tower.dim(level)).map(|_| rng.gen_range(0..5)).collect();
        let a = tower.element_from_residues(level, coeffs)?;
        let descent = tower.is_square(&a)?;
        ensure!(descent == tower.is_square_euler(&a)?, "level {level}: {}", tower.format(&a));
        squares += descent as usize;
    }
    ensure!(squares > 0 && squares < 1000, "degenerate sample: {squares} squares");

    let mut parity = 0;
    for q in [5, 7] {
        let k = base_field(q)?;
        let ring = PolyRing::new(k.clone());
        for d in 2..=4 {
            for f in all_polys(&k, d, true) {
                if !ring.is_squarefree(&f) {
                    continue;
                }
                ensure!(parity_check(&k, &f)?.consistent, "q={q} {}", ring.format(&f));
                parity += 1;
            }
        }
    }

    let budget = Budget::default();
    let k = base_field(5)?;
    for f in all_polys(&k, 2, false) {
        ensure!(sr_check(&k, &f, 2, 2, &budget)?.holds, "quadratic over F_5 not shift-resistant");
    }
    let k = base_field(3)?;
    for f in all_polys(&k, 4, false) {
        ensure!(sr_check(&k, &f, 4, 2, &budget)?.holds, "quartic over F_3 not shift-resistant");
    }
    let k = base_field(2)?;
    let out = sr_check(&k, &parse_poly(&k, "1,0,0,0,1,1")?, 5, 1, &budget)?;
    ensure!(!out.holds && out.witness == Some((1, "0".to_string())), "x^5+x^4+1: {out:?}");
    Ok(format!(
        "1000 residue tests ({squares} squares) up to height 8; parity law on {parity} monics; \
         shift-resistance examples and witness (1, 0) reproduced"
    ))
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, fn() -> Check); 9] = [
        (1, "x^3+x^2+1 over F_2 stable to depth 8", conjecture_to_depth_eight),
        (2, "quadratic family dichotomy", quadratic_dichotomy),
        (3, "quadratic census over F_5", quadratic_census),
        (4, "x^3+x+1 over F_{2^m} and the cubic biconditional", trinomial_and_biconditional),
        (5, "trace identities", trace_identities),
        (6, "cubic trinomial classifier", cubic_classifier),
        (7, "quartic binomials and quartic family", quartic_binomials),
        (8, "characteristic-3 quartic classifier and resolvent certification", quartic_char3),
        (9, "residues, parity law, shift-resistance", infrastructure),
    ];
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    // numeric arguments select criteria; anything else (cargo's flags) is ignored
    let only: HashSet<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (id, name, check) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}").into())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id} PASS [{secs:.1}s] {name}: {detail}"),
            Err(e) => {
                let expected = EXPECTED_FAILURES.contains(&id);
                let tag = if expected { " (expected)" } else { "" };
                println!("criterion {id} FAIL{tag} [{secs:.1}s] {name}: {e}");
                if strict || !expected {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
