use stablepoly::census::{run_census, CensusOptions, DEFAULT_CENSUS_MAX_Q};
use stablepoly::stability::base_field;
use stablepoly::{Budget, Error, Method};

fn census(q: u64, degree: usize, depth: usize, family_only: bool) -> stablepoly::Result<(Vec<stablepoly::census::CensusRow>, stablepoly::census::CensusSummary)> {
    let opts = CensusOptions {
        family_only,
        ..CensusOptions::new(q, degree, depth)
    };
    run_census(&base_field(q).unwrap(), &opts, &Budget::default())
}

#[test]
fn quadratic_census_over_f5_meets_both_bounds() {
    let (rows, summary) = census(5, 2, 6, false).unwrap();
    assert_eq!(rows.len(), 100);
    assert_eq!(summary.total, 100);
    assert_eq!((summary.stated_bound, summary.prior_bound), (12, 4));
    assert!(summary.stable_to_depth as u64 >= summary.stated_bound);
    assert!(rows.iter().enumerate().all(|(i, r)| r.index == i));
}

#[test]
fn family_census_over_f5() {
    let (rows, summary) = census(5, 2, 6, true).unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(summary.stable_to_depth, 8);
    assert!(rows.iter().all(|r| r.certificate.as_deref() == Some("quadratic-nonsquare-discriminant-family")));
    let mut polys: Vec<&str> = rows.iter().map(|r| r.poly.as_str()).collect();
    polys.sort();
    polys.dedup();
    assert_eq!(polys.len(), 8);
}

#[test]
fn over_f7_only_the_family_dies_at_depth_one() {
    // Family members (δ a non-square) all fail at depth 1.
    let (rows, summary) = census(7, 2, 2, true).unwrap();
    assert_eq!(rows.len(), 18);
    assert_eq!(summary.stable_to_depth, 0);
    assert!(rows.iter().all(|r| r.first_reducible == Some(1)));
    // Other quadratics can survive longer: 36 of the 294 have f, f^(2), f^(3)
    // irreducible (count from an independent factorizer).
    let (rows, summary) = census(7, 2, 2, false).unwrap();
    assert_eq!(rows.len(), 294);
    assert_eq!(summary.stable_to_depth, 36);
}

#[test]
fn census_is_deterministic() {
    let a = census(3, 3, 2, false).unwrap().0;
    let b = census(3, 3, 2, false).unwrap().0;
    let line = |r: &stablepoly::census::CensusRow| format!("{r:?}");
    assert_eq!(a.iter().map(line).collect::<Vec<_>>(), b.iter().map(line).collect::<Vec<_>>());

    let generic = run_census(
        &base_field(3).unwrap(),
        &CensusOptions {
            method: Method::Generic,
            ..CensusOptions::new(3, 3, 2)
        },
        &Budget::default(),
    )
    .unwrap()
    .0;
    let verdicts = |rows: &[stablepoly::census::CensusRow]| rows.iter().map(|r| r.verdicts.clone()).collect::<Vec<_>>();
    assert_eq!(verdicts(&a), verdicts(&generic));
}

#[test]
fn family_census_in_other_degrees() {
    let (rows, summary) = census(4, 3, 2, true).unwrap();
    assert!(!rows.is_empty());
    assert_eq!(rows.iter().all(|r| r.certificate.is_some()), summary.stable_to_depth == rows.len());
    let (rows, summary) = census(5, 4, 2, true).unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(summary.stable_to_depth, 8);
    let (rows, _) = census(3, 4, 1, true).unwrap();
    assert_eq!(rows.len(), 12);
}

#[test]
fn census_caps() {
    assert_eq!(DEFAULT_CENSUS_MAX_Q, [27, 9, 5]);
    assert!(matches!(census(29, 2, 1, false), Err(Error::SizeCapExceeded(_))));
    assert!(matches!(census(7, 4, 1, false), Err(Error::SizeCapExceeded(_))));
    assert!(matches!(census(5, 5, 1, false), Err(Error::DegreeUnsupported(5))));
}
