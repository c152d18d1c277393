use sgx_core::families::{
    g_poly, gamma, kn_minus, kn_plus, pq1_poly, pq2_poly, q2_matrix, sigma, sigma_partition, u1, u1_partition,
};
use sgx_core::forbidden::{book_count, count_unbalanced_triangles, friendship_count, is_forbidden_free};
use sgx_core::iso::is_switching_isomorphic;
use sgx_core::search::{classify, enumerate_extremal, ClassificationTag};
use sgx_core::spectra::{
    char_poly_exact, eigenvalues_symmetric, index, quotient_matrix, spectral_radius, spectrum,
    verify_quotient_spectrum, Matrix, Poly,
};
use sgx_core::switching::{is_switching_equivalent, switching_normal_form};
use sgx_core::{Error, ForbiddenSpec, Sign, SignedGraph, SwitchSet};

const P: Sign = Sign::Positive;
const N: Sign = Sign::Negative;

fn triangle(signs: [Sign; 3]) -> SignedGraph {
    SignedGraph::new(3, &[(0, 1, signs[0]), (1, 2, signs[1]), (0, 2, signs[2])]).unwrap()
}

fn cycle(n: usize, negative: &[usize]) -> SignedGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, if negative.contains(&i) { N } else { P })).collect();
    SignedGraph::new(n, &edges).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn poly(c: &[i64]) -> Poly {
    Poly::from_i64(c)
}

#[test]
fn construction() {
    let g = SignedGraph::new(3, &[(0, 1, N), (1, 2, P), (0, 2, P)]).unwrap();
    assert_eq!(g.m(), 3);
    assert_eq!(g.count_unbalanced_triangles(), 1);
    assert!(matches!(SignedGraph::new(2, &[(0, 0, P)]), Err(Error::SelfLoop(0))));
    let e = SignedGraph::empty(4).unwrap();
    assert_eq!((e.n(), e.m()), (4, 0));
    assert!(e.is_balanced());
}

#[test]
fn switching_basics() {
    let g = triangle([N, P, P]);
    let h = g.switch(&SwitchSet::new([2])).unwrap();
    assert_eq!(h.cycle_sign(&[0, 1, 2]).unwrap(), N);
    assert_eq!(h.count_unbalanced_triangles(), 1);
    let k = gamma(6, 4).unwrap();
    assert_eq!(k.switch(&SwitchSet::empty()).unwrap(), k);
    assert_eq!(k.switch(&SwitchSet::full(6)).unwrap(), k);
}

#[test]
fn balance() {
    assert!(kn_plus(6).unwrap().is_balanced());
    assert!(!triangle([N, N, N]).is_balanced());
    let p4 = SignedGraph::new(4, &[(0, 1, P), (1, 2, N), (2, 3, P)]).unwrap();
    assert!(p4.is_balanced());
}

#[test]
fn cycle_signs() {
    assert_eq!(triangle([N, P, P]).cycle_sign(&[0, 1, 2]).unwrap(), N);
    assert_eq!(triangle([N, N, P]).cycle_sign(&[0, 1, 2]).unwrap(), P);
    assert_eq!(cycle(4, &[]).cycle_sign(&[0, 1, 2, 3]).unwrap(), P);
}

#[test]
fn unbalanced_triangle_lists() {
    // u = 5, v1 = 0.
    assert_eq!(gamma(6, 4).unwrap().unbalanced_triangles(), vec![[0, 1, 5], [0, 2, 5]]);
    assert!(kn_plus(5).unwrap().unbalanced_triangles().is_empty());
    let k6 = kn_minus(6, &[(2, 4)]).unwrap();
    let tris = k6.unbalanced_triangles();
    assert_eq!(tris.len(), 4);
    assert!(tris.iter().all(|t| t.contains(&2) && t.contains(&4)));
}

#[test]
fn normal_forms() {
    let one = switching_normal_form(&triangle([N, P, P]));
    assert_eq!(one.residual, vec![(1, 2, N)]);
    assert_eq!(switching_normal_form(&triangle([N, N, N])), one);
    let tree = SignedGraph::new(5, &[(0, 1, N), (0, 2, P), (2, 3, N), (2, 4, N)]).unwrap();
    assert!(switching_normal_form(&tree).residual.is_empty());
}

#[test]
fn switching_equivalence() {
    assert!(is_switching_equivalent(&triangle([N, P, P]), &triangle([N, N, N])).unwrap());
    assert!(!is_switching_equivalent(&triangle([N, P, P]), &triangle([P, P, P])).unwrap());
    assert!(!is_switching_equivalent(&cycle(4, &[0]), &cycle(4, &[0, 1])).unwrap());
}

#[test]
fn switching_isomorphism() {
    let g = gamma(6, 4).unwrap();
    let h = g.relabel(&[3, 0, 5, 1, 4, 2]).unwrap().switch(&SwitchSet::new([0, 4])).unwrap();
    assert!(is_switching_isomorphic(&g, &h).unwrap());
    assert!(!is_switching_isomorphic(&g, &gamma(6, 5).unwrap()).unwrap());
    let one = kn_minus(4, &[(0, 1)]).unwrap();
    let matching = kn_minus(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(!is_switching_isomorphic(&one, &matching).unwrap());
}

#[test]
fn eigenvalues() {
    let s = spectrum(&kn_plus(4).unwrap());
    for (got, want) in s.values.iter().zip([3.0, -1.0, -1.0, -1.0]) {
        assert!(close(*got, want, 1e-9));
    }
    let s = spectrum(&triangle([N, P, P]));
    for (got, want) in s.values.iter().zip([1.0, 1.0, -2.0]) {
        assert!(close(*got, want, 1e-9));
    }
    let one = eigenvalues_symmetric(&Matrix::from_rows(vec![vec![5.0]]).unwrap(), 1e-12).unwrap();
    assert_eq!(one.values, vec![5.0]);
}

#[test]
fn index_and_radius() {
    assert!(close(index(&gamma(6, 3).unwrap()), 4.0, 1e-9));
    assert!(close(index(&kn_plus(6).unwrap()), 5.0, 1e-9));
    assert!(close(index(&gamma(6, 6).unwrap()), 4.4645, 1e-3));
    assert!(close(spectral_radius(&triangle([N, P, P])), 2.0, 1e-9));
    assert!(close(spectral_radius(&kn_plus(6).unwrap()), 5.0, 1e-9));
    assert_eq!(spectral_radius(&SignedGraph::empty(4).unwrap()), 0.0);
}

#[test]
fn characteristic_polynomials() {
    assert_eq!(char_poly_exact(&kn_plus(3).unwrap().adjacency()).unwrap().as_poly(), &poly(&[-2, -3, 0, 1]));
    assert_eq!(char_poly_exact(&q2_matrix(9)).unwrap().as_poly(), &poly(&[6, 17, -19, -5, 1]));
    let zero = Matrix::from_rows(vec![vec![0i64, 0], vec![0, 0]]).unwrap();
    assert_eq!(char_poly_exact(&zero).unwrap().as_poly(), &poly(&[0, 0, 1]));
}

#[test]
fn quotients() {
    for (n, t) in [(9, 3), (10, 4), (12, 7)] {
        let q =
            quotient_matrix(&sigma(1, t - 1, n - t - 2).unwrap().adjacency(), &sigma_partition(1, t - 1, n - t - 2))
                .unwrap();
        assert!(q.equitable);
        let (n, t) = (n as i64, t as i64);
        let want = vec![
            vec![0, -1, 1, t - 1, 0],
            vec![-1, 0, 0, t - 1, n - t - 2],
            vec![1, 0, 0, t - 1, n - t - 2],
            vec![1, 1, 1, t - 2, n - t - 2],
            vec![0, 1, 1, t - 1, n - t - 3],
        ];
        assert_eq!(q.to_integer().unwrap().to_rows(), want);
    }
    let q = quotient_matrix(&u1(9).unwrap().adjacency(), &u1_partition(9)).unwrap();
    assert!(q.equitable);
    assert_eq!(q.to_integer().unwrap(), q2_matrix(9));
    let k4 = kn_plus(4).unwrap().adjacency();
    let q = quotient_matrix(&k4, &[vec![0], vec![1], vec![2], vec![3]]).unwrap();
    assert!(q.equitable);
    assert_eq!(q.to_integer().unwrap(), k4);
}

#[test]
fn quotient_spectrum_containment() {
    let r = verify_quotient_spectrum(&sigma(1, 3, 4).unwrap(), &sigma_partition(1, 3, 4), 1e-8).unwrap();
    assert!(r.contained);
    assert_eq!(r.residual.len(), 5);
    assert!(r.residual_within(&[-1.0, 0.0]));
    let r = verify_quotient_spectrum(&u1(9).unwrap(), &u1_partition(9), 1e-8).unwrap();
    assert!(r.contained && r.residual.len() == 5 && r.residual_within(&[-1.0, 0.0]));
    let singletons: Vec<Vec<usize>> = (0..5).map(|v| vec![v]).collect();
    let r = verify_quotient_spectrum(&kn_plus(5).unwrap(), &singletons, 1e-8).unwrap();
    assert!(r.contained && r.residual.is_empty());
}

#[test]
fn families() {
    let g = gamma(6, 3).unwrap();
    assert_eq!((g.n(), g.m(), g.count_unbalanced_triangles()), (6, 12, 1));
    assert!(close(index(&g), 4.0, 1e-9));
    for n in 4..9 {
        let g = gamma(n, n).unwrap();
        assert_eq!(g.m(), n * (n - 1) / 2);
        assert_eq!(g.negative_edge_count(), 1);
    }
    assert_eq!(gamma(6, 4).unwrap().count_unbalanced_triangles(), 2);

    let s = sigma(1, 3, 4).unwrap();
    assert_eq!((s.degree(0), s.degree(1)), (5, 8));
    // The S block comes right after v1 and v2.
    assert!(!s.has_edge(1, 2));
    assert_eq!(s.count_unbalanced_triangles(), 3);
    assert!(is_forbidden_free(&s, &ForbiddenSpec::tc3(4)));
    let s0 = sigma(0, 3, 2).unwrap();
    assert_eq!(s0.neighbors(0).collect::<Vec<_>>(), vec![1, 2, 3, 4]);

    let u = u1(9).unwrap();
    assert_eq!((u.degree(0), u.degree(1), u.degree(8)), (7, 7, 6));
    assert_eq!(u.count_unbalanced_triangles(), 6);
    assert_eq!(u1(5).unwrap().count_unbalanced_triangles(), 2);
    assert_eq!(kn_minus(4, &[(0, 1), (2, 3)]).unwrap().count_unbalanced_triangles(), 4);
}

#[test]
fn closed_forms() {
    assert_eq!(g_poly(6, 3).as_poly(), &poly(&[8, -6, -3, 1]));
    assert!(close(g_poly(6, 3).largest_real_root().unwrap(), 4.0, 1e-12));
    assert_eq!(g_poly(10, 4).as_poly(), &poly(&[23, -11, -7, 1]));
    assert_eq!(pq1_poly(9, 4).as_poly(), &poly(&[24, 52, 2, -22, -4, 1]));
    assert_eq!(pq2_poly(9).as_poly(), &poly(&[6, 17, -19, -5, 1]));
}

#[test]
fn triangle_counts_by_family() {
    for n in 5..11 {
        for t in 3..=n {
            assert_eq!(gamma(n, t).unwrap().count_unbalanced_triangles(), t - 2);
        }
        assert_eq!(u1(n).unwrap().count_unbalanced_triangles(), n - 3);
        assert_eq!(kn_minus(n, &[(0, 1)]).unwrap().count_unbalanced_triangles(), n - 2);
    }
    for (s, t, r) in [(0, 1, 3), (1, 2, 2), (2, 4, 1), (3, 3, 3)] {
        assert_eq!(sigma(s, t, r).unwrap().count_unbalanced_triangles(), t);
    }
}

#[test]
fn forbidden_configurations() {
    assert_eq!(count_unbalanced_triangles(&gamma(9, 5).unwrap()), 3);
    assert_eq!(count_unbalanced_triangles(&kn_plus(7).unwrap()), 0);
    assert_eq!(count_unbalanced_triangles(&kn_minus(6, &[(0, 1)]).unwrap()), 4);
    for n in 6..10 {
        for t in 2..=n - 2 {
            assert!(is_forbidden_free(&gamma(n, t + 1).unwrap(), &ForbiddenSpec::tc3(t)));
        }
        for t in 2..6 {
            assert!(is_forbidden_free(&kn_minus(n, &[(0, 1)]).unwrap(), &ForbiddenSpec::friendship(t)));
        }
    }
    let bowtie = SignedGraph::new(5, &[(0, 1, N), (1, 2, P), (0, 2, P), (2, 3, N), (3, 4, P), (2, 4, P)]).unwrap();
    assert!(!is_forbidden_free(&bowtie, &ForbiddenSpec::friendship(2)));

    let b = book_count(&gamma(6, 4).unwrap());
    assert_eq!((b.edge, b.count), (Some((0, 5)), 2));
    let f = friendship_count(&kn_plus(8).unwrap());
    assert_eq!((f.vertex, f.count), (0, 0));
    let b = book_count(&u1(9).unwrap());
    assert_eq!((b.edge, b.count), (Some((0, 1)), 6));
}

#[test]
fn enumeration_examples() {
    let r = enumerate_extremal(6, &ForbiddenSpec::tc3(2), 1).unwrap();
    assert_eq!(r.top_ties().len(), 1);
    assert_eq!(r.entries[0].tag, ClassificationTag::Gamma { n: 6, t: 3 });
    assert!(close(r.entries[0].index, 4.0, 1e-9));

    let r = enumerate_extremal(6, &ForbiddenSpec::tc3(5), 1).unwrap();
    assert_eq!(r.entries[0].tag, ClassificationTag::Gamma { n: 6, t: 6 });

    let r = enumerate_extremal(6, &ForbiddenSpec::tc3(3), 1).unwrap();
    assert_eq!(r.entries[0].tag, ClassificationTag::Gamma { n: 6, t: 4 });
    assert!(close(r.entries[0].index, g_poly(6, 4).largest_real_root().unwrap(), 1e-8));
}

#[test]
fn classification_examples() {
    assert_eq!(classify(&gamma(9, 4).unwrap()).unwrap(), ClassificationTag::Gamma { n: 9, t: 4 });
    let g = sigma(1, 4, 3).unwrap().relabel(&[9, 2, 7, 0, 4, 1, 8, 3, 6, 5]).unwrap();
    let g = g.switch(&SwitchSet::new([1, 2, 3])).unwrap();
    assert_eq!(classify(&g).unwrap(), ClassificationTag::Sigma { s: 1, t: 4, r: 3 });
    let c5 = SignedGraph::new(7, &[(0, 1, N), (1, 2, N), (2, 3, N), (3, 4, N), (0, 4, N)]).unwrap();
    assert_eq!(classify(&c5).unwrap(), ClassificationTag::Other);
}
