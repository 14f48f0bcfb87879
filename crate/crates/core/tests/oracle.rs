//! Closed forms against exhaustive enumeration of Prüfer codes.

use degree_trees::counting::{count_forbidden_inclusion_exclusion, count_forbidden_series, count_via_rational_series};
use degree_trees::stats::{central_moment, covariance, expectation, mixed_central_moment, variance};
use degree_trees::{
    count_allowed, oracle_count, oracle_degree_statistics, BigRational, DegreeRule, DegreeSet, JointLaw,
};

fn q(v: u32) -> BigRational {
    BigRational::from_integer(v.into())
}

#[test]
fn allowed_counts_match_enumeration() {
    for n in 2..=8 {
        for p in DegreeSet::subsets_containing_one(6) {
            let rule = DegreeRule::Allowed(p.clone());
            let brute = oracle_count(&rule, n).unwrap();
            assert_eq!(count_allowed(&p, n).unwrap(), brute, "P = {p}, n = {n}");
            assert_eq!(count_via_rational_series(&rule, n).unwrap(), brute, "P = {p}, n = {n}");
        }
    }
}

#[test]
fn forbidden_counts_match_enumeration() {
    for n in 2..=8 {
        for f in DegreeSet::subsets_of_range(2, 5) {
            let brute = oracle_count(&DegreeRule::Forbidden(f.clone()), n).unwrap();
            assert_eq!(count_forbidden_series(&f, n).unwrap(), brute, "F = {f}, n = {n}");
            assert_eq!(count_forbidden_inclusion_exclusion(&f, n).unwrap(), brute, "F = {f}, n = {n}");
        }
    }
}

fn central_from_law(law: &JointLaw, k1: usize, k2: usize) -> BigRational {
    let m1 = law.expect(|x| q(x[0]));
    let m2 = law.expect(|x| q(x[1]));
    law.expect(|x| num_traits::pow(q(x[0]) - &m1, k1) * num_traits::pow(q(x[1]) - &m2, k2))
}

#[test]
fn moments_match_enumeration() {
    for n in 4..=7u32 {
        let nu = n as usize;
        for d1 in 1..n {
            for d2 in d1 + 1..n {
                let law = oracle_degree_statistics(nu, &[d1, d2]).unwrap();
                assert_eq!(expectation(d1, nu).unwrap(), law.expect(|x| q(x[0])));
                assert_eq!(expectation(d2, nu).unwrap(), law.expect(|x| q(x[1])));
                assert_eq!(variance(d1, nu).unwrap(), central_from_law(&law, 2, 0));
                assert_eq!(variance(d2, nu).unwrap(), central_from_law(&law, 0, 2));
                assert_eq!(covariance(d1, d2, nu).unwrap(), central_from_law(&law, 1, 1));
                for k in 1..=4 {
                    assert_eq!(central_moment(d1, k, nu).unwrap(), central_from_law(&law, k, 0), "d={d1} k={k} n={n}");
                    assert_eq!(central_moment(d2, k, nu).unwrap(), central_from_law(&law, 0, k), "d={d2} k={k} n={n}");
                }
                for k1 in 1..=3 {
                    for k2 in 1..=4 - k1 {
                        assert_eq!(
                            mixed_central_moment(d1, d2, k1, k2, nu).unwrap(),
                            central_from_law(&law, k1, k2),
                            "({d1},{d2}) ({k1},{k2}) n={n}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn small_tree_spot_values() {
    let law = oracle_degree_statistics(4, &[1, 2]).unwrap();
    assert_eq!(law.total(), 16);
    assert_eq!(law.expect(|x| q(x[0])), BigRational::new(9.into(), 4.into()));
    assert_eq!(central_from_law(&law, 1, 1), BigRational::new((-3).into(), 8.into()));
}
