//! Root systems against the classification tables.

use ecl_core::rootsys::{Family, Rat, RootSystem};
use ecl_core::Error;
use num_traits::Signed;
use proptest::prelude::*;

const ALL: [(Family, usize); 15] = [
    (Family::A, 1),
    (Family::A, 3),
    (Family::A, 6),
    (Family::B, 2),
    (Family::B, 4),
    (Family::C, 3),
    (Family::C, 4),
    (Family::D, 4),
    (Family::D, 5),
    (Family::E6, 6),
    (Family::E7, 7),
    (Family::E8, 8),
    (Family::F4, 4),
    (Family::G2, 2),
    (Family::B, 3),
];

fn det(m: &[Vec<Rat>]) -> Rat {
    // Fraction-exact Gaussian elimination.
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let n = a.len();
    let mut d = Rat::from_integer(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != Rat::from_integer(0)) else {
            return Rat::from_integer(0);
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            let pivot = a[c].clone();
            for (x, v) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * v;
            }
        }
    }
    d
}

/// Determinant of the Cartan matrix by the classification.
fn cartan_det(f: Family, r: usize) -> i64 {
    match f {
        Family::A => r as i64 + 1,
        Family::B | Family::C => 2,
        Family::D => 4,
        Family::E6 => 3,
        Family::E7 => 2,
        Family::E8 | Family::F4 | Family::G2 => 1,
    }
}

fn highest_root_height(f: Family, r: usize) -> usize {
    // Coxeter number minus one.
    match f {
        Family::A => r,
        Family::B | Family::C => 2 * r - 1,
        Family::D => 2 * r - 3,
        Family::E6 => 11,
        Family::E7 => 17,
        Family::E8 => 29,
        Family::F4 => 11,
        Family::G2 => 5,
    }
}

#[test]
fn cartan_determinants_match_the_classification() {
    for (f, r) in ALL {
        let rs = RootSystem::build(f, r).unwrap();
        let s = rs.simple_roots();
        let cartan: Vec<Vec<Rat>> = s
            .iter()
            .map(|a| s.iter().map(|b| rs.cartan_integer(a, b)).collect())
            .collect();
        assert_eq!(det(&cartan), Rat::from_integer(cartan_det(f, r)), "{f}{r}");
        for (i, row) in cartan.iter().enumerate() {
            assert_eq!(row[i], Rat::from_integer(2));
            for (j, &c) in row.iter().enumerate() {
                if i != j {
                    assert!(c <= Rat::from_integer(0) && c.is_integer(), "{f}{r} entry {c}");
                }
            }
        }
    }
}

#[test]
fn heights_reach_the_coxeter_number() {
    for (f, r) in ALL {
        let rs = RootSystem::build(f, r).unwrap();
        let max = rs
            .positive_roots()
            .iter()
            .map(|a| rs.simple_coordinates(a).iter().fold(Rat::from_integer(0), |s, c| s + c))
            .max()
            .unwrap();
        assert_eq!(max, Rat::from_integer(highest_root_height(f, r) as i64), "{f}{r}");
    }
}

#[test]
fn positive_roots_are_nonnegative_integer_combinations() {
    for (f, r) in ALL {
        let rs = RootSystem::build(f, r).unwrap();
        for a in rs.positive_roots() {
            let c = rs.simple_coordinates(a);
            assert!(
                c.iter().all(|x| x.is_integer() && *x >= Rat::from_integer(0)),
                "{f}{r}: {:?}",
                a.0
            );
        }
    }
}

#[test]
fn dual_coxeter_numbers() {
    let table = [
        (Family::A, 3, 4),
        (Family::B, 3, 5),
        (Family::C, 3, 4),
        (Family::D, 5, 8),
        (Family::E6, 6, 12),
        (Family::E7, 7, 18),
        (Family::E8, 8, 30),
        (Family::F4, 4, 9),
        (Family::G2, 2, 4),
    ];
    for (f, r, h) in table {
        assert_eq!(
            RootSystem::build(f, r).unwrap().dual_coxeter().unwrap(),
            Rat::from_integer(h),
            "{f}{r}"
        );
    }
}

#[test]
fn root_strings_have_length_at_most_four() {
    let rs = RootSystem::build(Family::G2, 2).unwrap();
    let roots = rs.roots();
    let mut longest = 0;
    for a in roots {
        for b in roots {
            if a != b && *a != b.neg() {
                let (p, q) = rs.root_string(a, b).unwrap();
                assert_eq!(Rat::from_integer(p - q), rs.cartan_integer(b, a));
                longest = longest.max(p + q + 1);
            }
        }
    }
    assert_eq!(longest, 4);
}

#[test]
fn unsupported_labels_and_ranks() {
    assert!(matches!(RootSystem::from_label("H", 3), Err(Error::Unsupported { .. })));
    assert!(matches!(
        RootSystem::build(Family::D, 2),
        Err(Error::Unsupported { .. })
    ));
    assert!(matches!(
        RootSystem::build(Family::E6, 7),
        Err(Error::Unsupported { .. })
    ));
    assert!(matches!(
        RootSystem::build(Family::A, 0),
        Err(Error::Unsupported { .. })
    ));
}

#[test]
fn sum_pair_classes_count_all_sum_pairs() {
    for (f, r) in ALL {
        let rs = RootSystem::build(f, r).unwrap();
        let total: usize = rs.classify_sum_pairs().values().sum();
        assert_eq!(total, rs.sum_pairs().len(), "{f}{r}");
    }
}

fn any_system() -> impl Strategy<Value = RootSystem> {
    (0..ALL.len()).prop_map(|i| RootSystem::build(ALL[i].0, ALL[i].1).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_permute_roots_and_preserve_the_form(rs in any_system(), i in 0usize..1000, j in 0usize..1000, k in 0usize..1000) {
        let roots = rs.roots();
        let (a, b, c) = (&roots[i % roots.len()], &roots[j % roots.len()], &roots[k % roots.len()]);
        let (sb, sc) = (rs.reflect_root(a, b), rs.reflect_root(a, c));
        prop_assert!(rs.is_root(&sb));
        prop_assert_eq!(rs.ip(&sb, &sc), rs.ip(b, c));
        prop_assert_eq!(rs.reflect_root(a, &sb), b.clone());
        prop_assert_eq!(rs.reflect_root(a, a), a.neg());
    }

    #[test]
    fn cartan_integers_are_small_integers(rs in any_system(), i in 0usize..1000, j in 0usize..1000) {
        let roots = rs.roots();
        let (a, b) = (&roots[i % roots.len()], &roots[j % roots.len()]);
        let c = rs.cartan_integer(b, a);
        prop_assert!(c.is_integer() && c.abs() <= Rat::from_integer(3));
        if rs.ip(a, b) < Rat::from_integer(0) && *a != b.neg() {
            prop_assert!(rs.is_root(&a.add(b)));
        }
    }
}
