//! Library results against independent brute-force computations.

mod common;

use common::*;
use num_bigint::BigInt;
use rulealg::algebra::{superpose, superpose_power};
use rulealg::catalog::{self, hw_antipode_closed_form, hw_element, structural_graphs, vertex_identity};
use rulealg::graph::{automorphism_count, disjoint_union, enumerate_injective_partial_morphisms};
use rulealg::hopf::antipode;
use rulealg::{compose_r, Coeff, Element, Multigraph, RewritingType};

#[test]
fn automorphisms_match_permutation_oracle() {
    let mut graphs: Vec<Multigraph> = structural_graphs().into_iter().map(|(_, g)| g).collect();
    let e = Multigraph::new(2, vec![(0, 1)]).unwrap();
    graphs.push(disjoint_union(&e, &e));
    graphs.push(Multigraph::discrete(4));
    graphs.push(Multigraph::new(3, vec![(0, 0), (1, 1), (0, 1), (0, 1)]).unwrap());
    graphs.push(Multigraph::new(6, vec![(0, 1), (2, 3), (4, 5)]).unwrap());
    graphs.push(Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap());
    for g in graphs {
        if g.edge_count() > 7 {
            continue;
        }
        assert_eq!(automorphism_count(&g), brute_automorphisms(&g), "{g}");
    }
}

#[test]
fn aut_of_union_has_swap_factor() {
    let e = Multigraph::new(2, vec![(0, 1)]).unwrap();
    let ee = disjoint_union(&e, &e);
    assert_eq!(brute_automorphisms(&ee), 2u32.into());
    let c = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
    let ce = disjoint_union(&c, &e);
    assert_eq!(automorphism_count(&ce), automorphism_count(&c) * automorphism_count(&e));
}

#[test]
fn morphism_enumeration_matches_brute_force() {
    let mut rng = rng(7);
    for _ in 0..60 {
        let g = random_rule(&mut rng).input;
        let h = random_rule(&mut rng).input;
        let mut count = 0;
        for fv in partial_injections(g.vertex_count(), h.vertex_count()) {
            for fe in partial_injections(g.edge_count(), h.edge_count()) {
                let ok = fe.iter().enumerate().all(|(e, img)| match img {
                    None => true,
                    Some(f) => {
                        let (s, t) = g.edges()[e];
                        let (hs, ht) = h.edges()[*f];
                        fv[s] == Some(hs) && fv[t] == Some(ht)
                    }
                });
                count += usize::from(ok);
            }
        }
        assert_eq!(enumerate_injective_partial_morphisms(&g, &h).len(), count, "{g} into {h}");
    }
}

#[test]
fn matches_agree_with_definitional_composites() {
    let mut rng = rng(11);
    for _ in 0..120 {
        let da = random_diagram(&mut rng, 2);
        let db = random_diagram(&mut rng, 2);
        assert_eq!(library_composites(&da, &db), brute_composites(&da, &db), "A = {da}, B = {db}");
    }
}

#[test]
fn antipode_matches_convolution_powers() {
    let mut rng = rng(13);
    assert_eq!(antipode(&Element::unit()), convolution_antipode(&Element::unit()));
    for _ in 0..40 {
        let mut x = Element::basis(&random_diagram(&mut rng, 3));
        if rng_bool(&mut rng) {
            x = superpose(&x, &Element::basis(&random_nonempty_rule(&mut rng)));
        }
        if x.max_degree() > 3 {
            continue;
        }
        assert_eq!(antipode(&x), convolution_antipode(&x), "{x}");
    }
}

fn rng_bool(r: &mut impl rand::Rng) -> bool {
    r.gen_bool(0.5)
}

#[test]
fn degree_three_antipode_formula() {
    let mut rng = rng(17);
    for _ in 0..25 {
        let parts: Vec<Element> = (0..3)
            .map(|_| {
                let d = random_diagram(&mut rng, 2);
                Element::basis(&d.components()[0])
            })
            .collect();
        let x = superpose(&superpose(&parts[0], &parts[1]), &parts[2]);
        let expected = degree3_antipode([&parts[0], &parts[1], &parts[2]]);
        assert_eq!(antipode(&x), expected);
        assert_eq!(convolution_antipode(&x), expected);
    }
}

#[test]
fn hw_antipode_convolution_and_closed_form() {
    for r in 0..=2 {
        for s in 0..=2 {
            for t in 0..=2 {
                let d = hw_element(r, s, t);
                assert_eq!(convolution_antipode(&d), hw_antipode_closed_form(r, s, t), "d({r},{s},{t})");
            }
        }
    }
    let d = hw_element(1, 1, 0);
    assert_eq!(antipode(&d), &d + &catalog::d_e());
}

#[test]
fn vertex_identity_powers_follow_falling_factorials() {
    for n in 0..=5 {
        let coeffs = falling_factorial_coefficients(n);
        assert_eq!(coeffs, catalog::falling_factorial_expand(n));
        for t in RewritingType::ALL {
            let mut power = Element::unit();
            let mut rhs = Element::zero();
            for c in &coeffs {
                rhs = &rhs + &power.scale(&Coeff::from_integer(c.clone()));
                power = compose_r(&power, &vertex_identity(), t).unwrap();
            }
            assert_eq!(superpose_power(&vertex_identity(), n), rhs, "n = {n}, {t}");
        }
    }
    assert_eq!(falling_factorial_coefficients(3), [0, 2, -3, 1].map(BigInt::from).to_vec());
}
