//! Cross-validation of the curvature decision procedures: closed form
//! against generic PSD test, degree patterns against exact verdicts,
//! pending-vertex shortcut, numeric curvature values, and the optimality
//! of the second-sphere elimination.

mod common;

use cdg_core::{
    alpha, cd_at, cd_at_generic, cd_at_girth5, cd_graph, curvature_value_at,
    degree_pattern_normalized, degree_pattern_physical, gamma2_at, girth5_form, local_forms,
    make_cycle, make_path, make_spider, make_star, pending_cd, q_count, reduced_form, Dimension,
    LaplacianMode, LocalForms, Rational, Scalar, Vertex, WeightedGraph,
};
use common::{
    degree_multisets, depth2_tree, family_fixtures, petersen, random_unweighted, random_weighted,
    rng,
};
use num::Zero;
use rand::Rng;

fn rational_k_grid() -> Vec<Rational> {
    vec![
        Rational::from_int(-1),
        Rational::ratio(-1, 10),
        Rational::zero(),
        Rational::ratio(1, 10),
        Rational::from_int(1),
    ]
}

fn rational_dims() -> Vec<Dimension<Rational>> {
    vec![
        Dimension::finite(Rational::from_int(2)).unwrap(),
        Dimension::finite(Rational::from_int(3)).unwrap(),
        Dimension::finite(Rational::from_int(5)).unwrap(),
        Dimension::Infinite,
    ]
}

fn float_k_grid() -> Vec<f64> {
    vec![-1.0, -0.1, 0.0, 0.1, 1.0]
}

fn float_dims() -> Vec<Dimension<f64>> {
    vec![
        Dimension::finite(2.0).unwrap(),
        Dimension::finite(3.0).unwrap(),
        Dimension::finite(5.0).unwrap(),
        Dimension::Infinite,
    ]
}

fn girth5_vertices(g: &WeightedGraph) -> Vec<Vertex> {
    g.vertices()
        .filter(|&x| g.girth_at(x).unwrap().at_least(5))
        .collect()
}

#[test]
fn closed_form_agrees_with_generic_test_on_fixtures() {
    for mode in [LaplacianMode::Normalized, LaplacianMode::Physical] {
        for g in family_fixtures(mode) {
            for x in girth5_vertices(&g) {
                for k in rational_k_grid() {
                    for dim in rational_dims() {
                        assert_eq!(
                            cd_at_girth5(&g, &k, &dim, x).unwrap(),
                            cd_at_generic(&g, &k, &dim, x).unwrap(),
                            "mode {mode} vertex {x} K {k} n {dim}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn closed_form_agrees_with_generic_test_on_random_weighted_graphs() {
    let mut rng = rng(0xd0a1);
    for _ in 0..120 {
        let n = rng.gen_range(4..=10);
        let extra = rng.gen_range(0..=2);
        let g = random_weighted(&mut rng, n, extra);
        for x in girth5_vertices(&g) {
            for &k in &float_k_grid() {
                for dim in float_dims() {
                    assert_eq!(
                        cd_at_girth5(&g, &k, &dim, x).unwrap(),
                        cd_at_generic(&g, &k, &dim, x).unwrap(),
                        "vertex {x} K {k} n {dim}"
                    );
                }
            }
        }
    }
}

#[test]
fn closed_form_quadratic_is_twice_the_reduced_form() {
    let mut rng = rng(0x2f01);
    for _ in 0..60 {
        let n = rng.gen_range(4..=10);
        let g = random_unweighted(&mut rng, n, 1, LaplacianMode::Normalized);
        for x in girth5_vertices(&g) {
            let k = Rational::ratio(-3, 7);
            let dim = Dimension::finite(Rational::from_int(4)).unwrap();
            let t = girth5_form(&g, &k, &dim, x).unwrap();
            let (_, r) = reduced_form(&g, &k, &dim, x).unwrap();
            let two = Rational::from_int(2);
            assert_eq!(t.dim(), r.dim());
            for i in 0..t.dim() {
                for j in i..t.dim() {
                    assert_eq!(*t.get(i, j), two.clone() * r.get(i, j).clone());
                }
            }
        }
    }
}

#[test]
fn degree_patterns_decide_cd_on_every_depth2_pattern() {
    let k0 = Rational::zero();
    let inf = Dimension::Infinite;
    for center_degree in 1..=6 {
        for pattern in degree_multisets(6, center_degree) {
            let normalized = depth2_tree(&pattern, LaplacianMode::Normalized);
            assert_eq!(
                degree_pattern_normalized(&normalized, 0).unwrap(),
                cd_at::<Rational>(&normalized, &k0, &inf, 0).unwrap(),
                "normalized pattern {pattern:?}"
            );
            let physical = depth2_tree(&pattern, LaplacianMode::Physical);
            assert_eq!(
                degree_pattern_physical(&physical, 0).unwrap(),
                cd_at::<Rational>(&physical, &k0, &inf, 0).unwrap(),
                "physical pattern {pattern:?}"
            );
        }
    }
}

#[test]
fn generic_route_confirms_patterns_on_a_sample() {
    let k0 = Rational::zero();
    let inf = Dimension::Infinite;
    for center_degree in 1..=6 {
        for (i, pattern) in degree_multisets(6, center_degree).iter().enumerate() {
            if i % 7 != 0 {
                continue;
            }
            let g = depth2_tree(pattern, LaplacianMode::Normalized);
            assert_eq!(
                cd_at_generic::<Rational>(&g, &k0, &inf, 0).unwrap(),
                degree_pattern_normalized(&g, 0).unwrap(),
                "pattern {pattern:?}"
            );
        }
    }
}

#[test]
fn pending_shortcut_agrees_with_the_full_test() {
    let k0 = Rational::zero();
    let inf = Dimension::Infinite;
    let mut rng = rng(0xbead);
    for _ in 0..40 {
        let n = rng.gen_range(2..=9);
        let mode = if n % 2 == 0 {
            LaplacianMode::Normalized
        } else {
            LaplacianMode::Physical
        };
        let g = random_unweighted(&mut rng, n, 0, mode);
        for x in g.vertices() {
            if g.combinatorial_degree(x).unwrap() == 1 {
                assert_eq!(
                    pending_cd::<Rational>(&g, x).unwrap(),
                    cd_at::<Rational>(&g, &k0, &inf, x).unwrap()
                );
            }
        }
    }
    for legs in 3..=8 {
        let g = make_star(legs, LaplacianMode::Physical).unwrap();
        assert_eq!(pending_cd::<Rational>(&g, 1).unwrap(), legs <= 5);
        assert_eq!(
            cd_at::<Rational>(&g, &k0, &inf, 1).unwrap(),
            legs <= 5,
            "star with {legs} legs"
        );
    }
}

#[test]
fn alpha_simplifies_to_the_unweighted_formulas() {
    let mut rng = rng(0xa1fa);
    for _ in 0..30 {
        let n = rng.gen_range(3..=9);
        let extra = rng.gen_range(0..=4);
        let normalized = random_unweighted(&mut rng, n, extra, LaplacianMode::Normalized);
        for x in normalized.vertices() {
            let d_x = normalized.combinatorial_degree(x).unwrap() as i64;
            for &y in normalized.neighbors(x).unwrap() {
                let d_y = normalized.combinatorial_degree(y).unwrap() as i64;
                let expected =
                    Rational::from_int(d_x) * (Rational::from_int(1) - Rational::ratio(2, d_y));
                assert_eq!(alpha::<Rational>(&normalized, x, y).unwrap(), expected);
            }
        }
        let physical = random_unweighted(&mut rng, n, extra, LaplacianMode::Physical);
        for x in physical.vertices() {
            let d_x = physical.combinatorial_degree(x).unwrap() as i64;
            for &y in physical.neighbors(x).unwrap() {
                let d_y = physical.combinatorial_degree(y).unwrap() as i64;
                let expected = Rational::ratio(d_x + d_y, 2) - Rational::from_int(2);
                assert_eq!(alpha::<Rational>(&physical, x, y).unwrap(), expected);
            }
        }
    }
}

#[test]
fn nonnegative_curvature_bounds_alpha_and_q_at_large_girth() {
    let k0 = Rational::zero();
    let inf = Dimension::Infinite;
    let one = Rational::from_int(1);
    for mode in [LaplacianMode::Normalized, LaplacianMode::Physical] {
        for g in family_fixtures(mode) {
            for x in girth5_vertices(&g) {
                if g.combinatorial_degree(x).unwrap() < 2 {
                    continue;
                }
                if !cd_at::<Rational>(&g, &k0, &inf, x).unwrap() {
                    continue;
                }
                for &y in g.neighbors(x).unwrap() {
                    assert!(alpha::<Rational>(&g, x, y).unwrap() < one, "alpha({x},{y})");
                }
                assert!(q_count(&g, x).unwrap().1 <= 1, "q at {x}");
            }
        }
    }
}

#[test]
fn monotone_in_curvature_bound_and_dimension() {
    let ks = rational_k_grid();
    let dims = rational_dims();
    let mut rng = rng(0x303);
    for _ in 0..30 {
        let n = rng.gen_range(4..=9);
        let g = random_unweighted(&mut rng, n, 1, LaplacianMode::Normalized);
        for x in g.vertices() {
            for dim in &dims {
                let verdicts: Vec<bool> =
                    ks.iter().map(|k| cd_at(&g, k, dim, x).unwrap()).collect();
                for pair in verdicts.windows(2) {
                    assert!(
                        pair[0] || !pair[1],
                        "verdict may only flip from holds to fails as K grows"
                    );
                }
            }
            for k in &ks {
                let by_dim: Vec<bool> = dims
                    .iter()
                    .map(|dim| cd_at(&g, k, dim, x).unwrap())
                    .collect();
                for pair in by_dim.windows(2) {
                    assert!(pair[1] || !pair[0], "larger dimension is weaker");
                }
            }
        }
    }
}

#[test]
fn float_and_rational_verdicts_agree_off_the_boundary() {
    let mut rng = rng(0x5e7);
    for _ in 0..40 {
        let n = rng.gen_range(3..=8);
        let extra = rng.gen_range(0..=3);
        let g = random_unweighted(&mut rng, n, extra, LaplacianMode::Normalized);
        for x in g.vertices() {
            for (kf, kr) in float_k_grid().into_iter().zip(rational_k_grid()) {
                let float = cd_at(&g, &kf, &Dimension::Infinite, x).unwrap();
                let exact = cd_at::<Rational>(&g, &kr, &Dimension::Infinite, x).unwrap();
                assert_eq!(float, exact, "vertex {x} K {kr}");
            }
        }
    }
}

#[test]
fn curvature_value_sits_on_the_feasibility_edge() {
    let g = make_cycle(5, LaplacianMode::Normalized).unwrap();
    for x in g.vertices() {
        let value = curvature_value_at(&g, &Dimension::Infinite, x).unwrap();
        assert!(value >= 0.0);
        assert!(cd_at(&g, &(value - 1e-6), &Dimension::Infinite, x).unwrap());
        assert!(!cd_at(&g, &(value + 1e-6), &Dimension::Infinite, x).unwrap());
    }

    let g = petersen(LaplacianMode::Normalized);
    for x in g.vertices() {
        assert!(curvature_value_at(&g, &Dimension::Infinite, x).unwrap() < 0.0);
    }

    let star5 = make_star(5, LaplacianMode::Physical).unwrap();
    let pendant_value = curvature_value_at(&star5, &Dimension::Infinite, 1).unwrap();
    assert!(
        pendant_value.abs() <= 1e-9,
        "boundary pendant: {pendant_value}"
    );
}

#[test]
fn negative_fixtures_fail_as_predicted() {
    let k0 = Rational::zero();
    let inf = Dimension::Infinite;

    let g = petersen(LaplacianMode::Normalized);
    for x in g.vertices() {
        assert!(!cd_at::<Rational>(&g, &k0, &inf, x).unwrap());
    }

    let spider = make_spider(&[3, 1, 1], LaplacianMode::Normalized).unwrap();
    assert!(!cd_graph::<Rational>(&spider, &k0, &inf).unwrap());

    let bad = depth2_tree(&[2, 3], LaplacianMode::Normalized);
    assert!(!cd_at::<Rational>(&bad, &k0, &inf, 0).unwrap());
    let good = depth2_tree(&[1, 3], LaplacianMode::Normalized);
    assert!(cd_at::<Rational>(&good, &k0, &inf, 0).unwrap());
}

#[test]
fn doubled_parent_value_minimizes_the_outer_sphere_contribution() {
    let k0 = Rational::zero();
    let inf: Dimension<Rational> = Dimension::Infinite;
    let mut rng = rng(0x5c42);
    let mut checked = 0;
    while checked < 60 {
        let n = rng.gen_range(5..=10);
        let extra = rng.gen_range(0..=1);
        let g = random_unweighted(&mut rng, n, extra, LaplacianMode::Normalized);
        let x = rng.gen_range(0..n);
        if !g.girth_at(x).unwrap().at_least(5) {
            continue;
        }
        let forms: LocalForms<Rational> = local_forms(&g, x).unwrap();
        if forms.coords.len() == forms.sphere1_len {
            continue;
        }
        checked += 1;

        let (s1_coords, reduced) = reduced_form(&g, &k0, &inf, x).unwrap();
        let s1_values: Vec<Rational> = (0..s1_coords.len())
            .map(|_| Rational::from_int(rng.gen_range(-9..=9)))
            .collect();
        let minimum = reduced.quadratic(&s1_values);

        let mut f = vec![Rational::zero(); n];
        for (i, &y) in s1_coords.iter().enumerate() {
            f[y] = s1_values[i].clone();
        }
        for &z in &forms.coords[forms.sphere1_len..] {
            let parents: Vec<Vertex> = g
                .neighbors(z)
                .unwrap()
                .iter()
                .copied()
                .filter(|&y| g.is_edge(x, y).unwrap())
                .collect();
            assert_eq!(parents.len(), 1, "large girth forces a unique parent");
            f[z] = Rational::from_int(2) * f[parents[0]].clone();
        }
        let substituted = gamma2_at(&g, &f, &f, x).unwrap();
        assert_eq!(minimum, substituted);
    }
}

#[test]
fn path_interiors_are_flat_in_both_modes() {
    for mode in [LaplacianMode::Normalized, LaplacianMode::Physical] {
        let g = make_path(10, mode).unwrap();
        let k0 = Rational::zero();
        for x in g.vertices() {
            let end_distance = g.distance(x, 0).unwrap().min(g.distance(x, 10).unwrap());
            if end_distance >= 3 {
                assert!(cd_at::<Rational>(&g, &k0, &Dimension::Infinite, x).unwrap());
            }
        }
    }
}
