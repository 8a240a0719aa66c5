//! Layout and defining-representation checks against frozen reference grids,
//! plus the combinatorial properties of the root-system labels.

use lieosc::definingrep::{build_layout, build_rep, check_cartan_weyl, layout_label_grid, metric_form};
use lieosc::rootsys::{algebra_dim, Family, RootSystem};
use lieosc::scalar::{rat, rat_int, Surd};
use lieosc::SurdMat;

fn grid(family: Family, rank: usize) -> Vec<Vec<String>> {
    let cells = build_layout(family, rank).unwrap();
    let dim = family.defining_dim(rank);
    layout_label_grid(&cells, dim)
}

fn assert_grid(actual: &[Vec<String>], expected: &[&[&str]]) {
    for (i, row) in expected.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            assert_eq!(
                actual[i][j], *want,
                "cell ({},{}) mismatch: got {:?}, want {:?}",
                i + 1,
                j + 1,
                actual[i][j],
                want
            );
        }
    }
}

#[test]
fn c2_layout_matches_reference() {
    let g = grid(Family::C, 2);
    assert_grid(
        &g,
        &[
            &["x"],
            &["1", "x"],
            &["12", "r2*2", "x"],
            &["r2*112", "12", "-1", "x"],
        ],
    );
}

#[test]
fn c3_layout_matches_reference() {
    let g = grid(Family::C, 3);
    assert_grid(
        &g,
        &[
            &["x"],
            &["1", "x"],
            &["12", "2", "x"],
            &["123", "23", "r2*3", "x"],
            &["1223", "r2*223", "23", "-2", "x"],
            &["r2*11223", "1223", "123", "-12", "-1", "x"],
        ],
    );
}

#[test]
fn b2_layout_matches_reference() {
    let g = grid(Family::B, 2);
    assert_grid(
        &g,
        &[
            &["x"],
            &["1", "x"],
            &["12", "2", "0"],
            &["122", "0", "-2", "x"],
            &["0", "-122", "-12", "-1", "x"],
        ],
    );
}

#[test]
fn b3_layout_matches_reference() {
    let g = grid(Family::B, 3);
    assert_grid(
        &g,
        &[
            &["x"],
            &["1", "x"],
            &["12", "2", "x"],
            &["123", "23", "3", "0"],
            &["1233", "233", "0", "-3", "x"],
            &["12233", "0", "-233", "-23", "-2", "x"],
            &["0", "-12233", "-1233", "-123", "-12", "-1", "x"],
        ],
    );
}

#[test]
fn d4_layout_matches_reference() {
    let g = grid(Family::D, 4);
    assert_grid(
        &g,
        &[
            &["x"],
            &["1", "x"],
            &["12", "2", "x"],
            &["123", "23", "3", "x"],
            &["124", "24", "4", "0", "x"],
            &["1234", "234", "0", "-4", "-3", "x"],
            &["12234", "0", "-234", "-24", "-23", "-2", "x"],
            &["0", "-12234", "-1234", "-124", "-123", "-12", "-1", "x"],
        ],
    );
}

#[test]
fn d3_layout_matches_reference() {
    let g = grid(Family::D, 3);
    assert_grid(
        &g,
        &[
            &["x"],
            &["1", "x"],
            &["12", "2", "x"],
            &["13", "3", "0", "x"],
            &["123", "0", "-3", "-2", "x"],
            &["0", "-123", "-13", "-12", "-1", "x"],
        ],
    );
}

fn strip_sign(word: &str) -> String {
    word.trim_start_matches('-').trim_start_matches("r2*").to_string()
}

/// Deleting row and column n+1 from the d_n layout must reproduce the
/// reduced schematic label-for-label (signs are re-inserted afterwards, so
/// only the root words are compared).
#[test]
fn d_family_reduced_displays() {
    let expected_d4: &[&[&str]] = &[
        &["x"],
        &["1", "x"],
        &["12", "2", "x"],
        &["123", "23", "3", "x"],
        &["1234", "234", "0", "4", "x"],
        &["12234", "0", "234", "24", "2", "x"],
        &["0", "12234", "1234", "124", "12", "1", "x"],
    ];
    let expected_d3: &[&[&str]] = &[
        &["x"],
        &["1", "x"],
        &["12", "2", "x"],
        &["123", "0", "3", "x"],
        &["0", "123", "13", "1", "x"],
    ];
    for (rank, expected) in [(4usize, expected_d4), (3, expected_d3)] {
        let g = grid(Family::D, rank);
        let dim = 2 * rank;
        let keep: Vec<usize> = (0..dim).filter(|&k| k != rank).collect();
        for (i, &gi) in keep.iter().enumerate() {
            for (j, &gj) in keep.iter().enumerate().take(i + 1) {
                let got = strip_sign(&g[gi][gj]);
                assert_eq!(
                    got,
                    expected[i][j],
                    "reduced cell ({},{}) of d_{rank}",
                    i + 1,
                    j + 1
                );
            }
        }
    }
}

/// For b and c layouts the label of every interior cell is the multiset sum
/// of the simple labels along the sub-diagonal segment it subtends.
#[test]
fn segment_sum_rule() {
    for (family, rank) in [(Family::C, 3), (Family::C, 4), (Family::B, 3), (Family::B, 4)] {
        let roots = RootSystem::new(family, rank).unwrap();
        let g = grid(family, rank);
        let dim = family.defining_dim(rank);
        let simple_at = |k: usize| -> Vec<usize> {
            // sub-diagonal cell (k+1, k), 1-based
            let w = strip_sign(&g[k][k - 1]);
            vec![w.parse::<usize>().unwrap()]
        };
        for i in 3..=dim {
            for j in 1..=(i - 2) {
                let mut multiset: Vec<usize> = Vec::new();
                for k in j..i {
                    multiset.extend(simple_at(k));
                }
                multiset.sort_unstable();
                let word: String = multiset.iter().map(|x| x.to_string()).collect();
                let cell = strip_sign(&g[i - 1][j - 1]);
                if roots.index_of_label(&word).is_some() {
                    assert_eq!(cell, word, "cell ({i},{j}) of {family}{rank}");
                } else {
                    assert_eq!(cell, "0", "cell ({i},{j}) of {family}{rank} should be 0");
                }
            }
        }
    }
}

/// When α+β is a positive root its label is the multiset union of the labels
/// of α and β.
#[test]
fn root_sum_closure() {
    for (family, rank) in [
        (Family::A, 4),
        (Family::B, 4),
        (Family::C, 4),
        (Family::D, 5),
        (Family::B, 6),
        (Family::C, 6),
        (Family::D, 6),
    ] {
        let rs = RootSystem::new(family, rank).unwrap();
        for a in &rs.positive {
            for b in &rs.positive {
                let sum: Vec<i64> = a.vector.iter().zip(&b.vector).map(|(x, y)| x + y).collect();
                if let Some(k) = rs.index_of_vector(&sum) {
                    assert_eq!(rs.positive[k].label, a.label.merge(&b.label));
                }
            }
        }
    }
}

#[test]
fn positive_count_matches_dimension() {
    for (family, max_rank) in [(Family::A, 6), (Family::B, 6), (Family::C, 6), (Family::D, 6)] {
        for rank in family.min_rank()..=max_rank {
            let rs = RootSystem::new(family, rank).unwrap();
            let dim = algebra_dim(family, rank).unwrap();
            assert_eq!(2 * rs.positive.len() + rank, dim);
        }
    }
}

/// Brute-force oracle for the algebra dimension: enumerate the closed-form
/// root sets directly and count.
#[test]
fn algebra_dim_against_enumeration_oracle() {
    let count_roots = |family: Family, n: usize| -> usize {
        let mut count = 0;
        for i in 0..n {
            for j in 0..n {
                if i < j {
                    count += 2; // l_i − l_j and l_i + l_j
                }
            }
            match family {
                Family::B => count += 1, // l_i
                Family::C => count += 1, // 2l_i
                _ => {}
            }
        }
        count
    };
    for n in 2..=6 {
        assert_eq!(algebra_dim(Family::B, n).unwrap(), 2 * count_roots(Family::B, n) + n);
        assert_eq!(algebra_dim(Family::C, n).unwrap(), 2 * count_roots(Family::C, n) + n);
        if n >= 3 {
            assert_eq!(algebra_dim(Family::D, n).unwrap(), 2 * count_roots(Family::D, n) + n);
        }
    }
    assert_eq!(algebra_dim(Family::D, 3).unwrap(), 15);
    assert_eq!(algebra_dim(Family::B, 2).unwrap(), 10);
    assert_eq!(algebra_dim(Family::C, 2).unwrap(), 10);
}

#[test]
fn metric_squares() {
    for (family, rank, sign) in [
        (Family::C, 2, -1i64),
        (Family::C, 3, -1),
        (Family::B, 3, 1),
        (Family::D, 4, 1),
    ] {
        let g = metric_form(family, rank).unwrap();
        let dim = family.defining_dim(rank);
        let want = SurdMat::scaled_identity(dim, Surd::from_int(sign));
        assert_eq!(g.matmul(&g), want);
    }
}

/// The stated quick check: a random rational combination A = Σ a_i x_i has
/// Tr A² = 2 Σ a_i² and satisfies the transpose constraint.
#[test]
fn random_combination_trace_and_transpose() {
    for (family, rank) in [(Family::C, 2), (Family::B, 2), (Family::D, 3)] {
        let rep = build_rep(family, rank).unwrap();
        let coeffs: Vec<_> = (0..rep.dim_g())
            .map(|i| rat((7 * i as i64 + 3) % 11 - 5, (i as i64 % 3) + 1))
            .collect();
        let mut a = SurdMat::zeros(rep.dim_v, rep.dim_v);
        for (c, x) in coeffs.iter().zip(&rep.basis_x) {
            a = a.add(&x.scale_rational(c));
        }
        let mut want = rat_int(0);
        for c in &coeffs {
            want += c * c * rat_int(2);
        }
        assert_eq!(a.matmul(&a).trace(), Surd::from_rational(want));
        assert_eq!(a.transpose(), rep.metric_conjugate(&a).neg());
    }
}

#[test]
fn cartan_weyl_ladder_eigenvectors() {
    let rep = build_rep(Family::C, 2).unwrap();
    // [h, e_1] carries the root (1, −1)
    let e1 = &rep.ladders[0];
    assert_eq!(e1.label.word(), "1");
    let expect = [1i64, -1];
    for (r, h) in rep.cartan.iter().enumerate() {
        let comm = SurdMat::commutator(h, &e1.plus);
        assert_eq!(comm, e1.plus.scale_rational(&rat_int(expect[r])));
    }
    let report = check_cartan_weyl(&rep);
    assert!(report.pass);
    // self-commutators vanish
    for lp in &rep.ladders {
        assert!(SurdMat::commutator(&lp.plus, &lp.plus).is_zero());
    }
}
