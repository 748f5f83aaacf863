use otb_core::builtin;
use otb_core::koszul::{betti_table, expected_k_polynomial, tor_dimension};

#[test]
fn nine_three_tables() {
    let t1 = betti_table(&builtin("9_3_1").unwrap()).unwrap();
    assert_eq!(t1.totals(), vec![1, 13, 77, 156, 145, 66, 12]);
    assert_eq!(t1.row(1), vec![0, 9, 2, 0, 0, 0, 0]);
    assert_eq!(t1.row(2), vec![0, 4, 75, 156, 145, 66, 12]);
    let t2 = betti_table(&builtin("9_3_2").unwrap()).unwrap();
    assert_eq!(t2.totals(), vec![1, 11, 75, 156, 145, 66, 12]);
    assert_eq!(t2.row(1), vec![0, 9, 0, 0, 0, 0, 0]);
    assert_eq!(t2.row(2), vec![0, 2, 75, 156, 145, 66, 12]);
}

#[test]
fn k_polynomial_matches_hilbert_series() {
    for name in otb_core::arrangement::BUILTIN_NAMES {
        let a = builtin(name).unwrap();
        let t = betti_table(&a).unwrap();
        let expected = expected_k_polynomial(&a);
        assert_eq!(t.k_polynomial(), expected, "{name}");
        assert_eq!(t.projective_dimension(), a.len() - 3, "{name}");
    }
}

#[test]
fn direct_strands_agree_at_the_ends() {
    for name in ["9_3_1", "9_3_2"] {
        let a = builtin(name).unwrap();
        let t = betti_table(&a).unwrap();
        for i in [0, 1, 2, 7, 8, 9] {
            for s in 0..=2 {
                let v = tor_dimension(&a, i, i + s, false).unwrap();
                assert_eq!(v.value, t.get(i, i + s), "{name} b_{i},{}", i + s);
            }
        }
    }
}

#[test]
fn strand_three_vanishes() {
    for name in otb_core::arrangement::BUILTIN_NAMES {
        let a = builtin(name).unwrap();
        for i in 0..=4 {
            let v = tor_dimension(&a, i, i + 3, true).unwrap();
            assert_eq!(v.value, 0, "{name} i={i}");
        }
    }
}
