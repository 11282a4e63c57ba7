//! Depth-limited certification against materialized iterates over every
//! field with at most 8 elements. Iterate degrees are capped per sweep.

use rayon::prelude::*;
use stablepoly::stability::{base_field, certify_stability, direct_iterate_oracle, iterate_degree};
use stablepoly::{Budget, Field, Method, PolyRing};

fn sweep(q: u64, d: usize, cap: u128) {
    let k = base_field(q).unwrap();
    let ring = PolyRing::new(k.clone());
    let elems = k.elements();
    let max_n = (1..).take_while(|&n| iterate_degree(d, n) <= cap).last().unwrap() as usize;
    let budget = Budget::default().allow_depth(max_n);
    let total = (q as usize).pow(d as u32) * (q as usize - 1);
    (0..total).into_par_iter().for_each(|mut idx| {
        let mut c = Vec::new();
        for _ in 0..d {
            c.push(elems[idx % q as usize].clone());
            idx /= q as usize;
        }
        c.push(elems[1 + idx].clone());
        let f = ring.from_coeffs(c);
        let r = certify_stability(&k, &f, max_n - 1, Method::Generic, &budget).unwrap();
        // once a level fails, every later iterate stays reducible
        let last = r.first_reducible.map_or(max_n, |n0| (n0 + 3).min(max_n));
        for n in 1..=last {
            let expect = r.first_reducible.is_none_or(|n0| n <= n0);
            assert_eq!(
                direct_iterate_oracle(&k, &f, n as u32, cap).unwrap(),
                expect,
                "q={q} f={} n={n}",
                ring.format(&f)
            );
        }
    });
}

#[test]
fn quadratics_over_fields_up_to_8() {
    for q in [2, 3, 4, 5, 7, 8] {
        sweep(q, 2, 243);
    }
}

#[test]
fn cubics_over_fields_up_to_8() {
    for q in [2, 3] {
        sweep(q, 3, 243);
    }
    for q in [4, 5, 7, 8] {
        sweep(q, 3, 81);
    }
}
