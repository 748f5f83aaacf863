use proptest::prelude::*;

use otb_core::arrangement::compute_flats;
use otb_core::exactmath::{binomial, rank, rat, MPoly, Monomial, RatMatrix, Rational};
use otb_core::resonance::search_multinets;
use otb_core::scroll::{is_one_generic, multiplication_matrix, MultiplicationMatrix};
use otb_core::{builtin, poincare_polynomial, Arrangement};

fn small_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |v| {
            RatMatrix::from_rows(c, v.chunks(c).map(|row| row.iter().map(|&x| rat(x)).collect()).collect())
        })
    })
}

fn cubic_poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..6).prop_map(|terms| {
        let mut p = MPoly::zero(3);
        for ((a, b, c), k) in terms {
            p.add_term(Monomial(vec![a, b, c]), rat(k));
        }
        p
    })
}

fn arrangement() -> impl Strategy<Value = Arrangement> {
    prop::collection::vec([-3i64..=3, -3i64..=3, -3i64..=3], 3..8).prop_filter_map("not a valid arrangement", |rows| {
        let forms: Vec<[Rational; 3]> = rows.iter().map(|r| [rat(r[0]), rat(r[1]), rat(r[2])]).collect();
        Arrangement::new(None, forms).ok()
    })
}

fn braid_gamma() -> MultiplicationMatrix {
    let a = builtin("braid-a3").unwrap();
    let cert = search_multinets(&a, 3, 1).unwrap().remove(0);
    multiplication_matrix(&a, &cert).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in small_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn multiplication_distributes(p in cubic_poly(), q in cubic_poly(), r in cubic_poly()) {
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
    }

    #[test]
    fn double_count_and_poincare(a in arrangement()) {
        let d = a.len() as u64;
        let incidences: u64 = a.flats().iter().map(|p| binomial(p.mu as u64 + 1, 2)).sum();
        prop_assert_eq!(binomial(d, 2), incidences);
        let p = poincare_polynomial(&a);
        prop_assert!(p.divisible_by_one_plus_t());
        prop_assert_eq!(p.coeffs[2], a.mu_sum() as i64);
    }

    #[test]
    fn flats_are_permutation_equivariant(perm in Just((0..9).collect::<Vec<usize>>()).prop_shuffle(), name in prop::sample::select(vec!["9_3_1", "9_3_2", "b3"])) {
        let a = builtin(name).unwrap();
        let forms: Vec<_> = perm.iter().map(|&k| a.forms()[k].clone()).collect();
        let permuted = compute_flats(&forms);
        let mut mapped: Vec<(Vec<Rational>, Vec<usize>)> = a
            .flats()
            .iter()
            .map(|p| {
                let mut lines: Vec<usize> = p.lines.iter().map(|&l| perm.iter().position(|&k| k == l).unwrap()).collect();
                lines.sort_unstable();
                (p.point.to_vec(), lines)
            })
            .collect();
        let mut got: Vec<(Vec<Rational>, Vec<usize>)> = permuted.iter().map(|p| (p.point.to_vec(), p.lines.clone())).collect();
        mapped.sort();
        got.sort();
        prop_assert_eq!(mapped, got);
    }

    #[test]
    fn one_genericity_is_invariant(
        (p, q, r, s) in (-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5).prop_filter("singular", |(p, q, r, s)| p * s - q * r != 0),
        cols in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let g = braid_gamma();
        let e = &g.entries;
        let mix = |j: usize, x: i64, z: i64| &e[0][j].scale(&rat(x)) + &e[1][j].scale(&rat(z));
        let rows = vec![
            cols.iter().map(|&j| mix(j, p, q)).collect(),
            cols.iter().map(|&j| mix(j, r, s)).collect(),
        ];
        prop_assert!(is_one_generic(&MultiplicationMatrix::from_entries(rows)));
    }

    #[test]
    fn a_new_line_through_no_flat_meets_only_in_double_points(a in arrangement(), f in [-7i64..=7, -7i64..=7, -7i64..=7]) {
        let form = [rat(f[0]), rat(f[1]), rat(f[2])];
        let through_flat = a.flats().iter().any(|p| {
            p.point.iter().zip(&form).map(|(x, c)| x * c).sum::<Rational>() == rat(0)
        });
        if let (false, Ok(b)) = (through_flat, a.with_line(form)) {
            let new = b.len() - 1;
            for p in b.flats().iter().filter(|p| p.contains(new)) {
                prop_assert_eq!(p.mu, 1);
            }
            prop_assert_eq!(b.flats().len(), a.flats().len() + a.len());
        }
    }
}
