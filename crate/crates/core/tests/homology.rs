mod common;

use common::{cp2, torus};
use psw_core::complex::{projective_space, verify_closed_manifold, SimplicialComplex};
use psw_core::homology::{mod2_betti_by_rank, rho2_on_homology, IntegralHomology, Mod2Homology};
use std::time::Instant;

fn check(k: &SimplicialComplex, betti: &[usize], torsion: &[&[u64]], mod2: &[usize]) {
    let t0 = Instant::now();
    let h = IntegralHomology::compute(k).unwrap();
    assert_eq!(h.betti(), betti, "{}", k.name());
    let want: Vec<Vec<u64>> = torsion.iter().map(|t| t.to_vec()).collect();
    assert_eq!(h.torsion(), want, "{}", k.name());
    let m2 = Mod2Homology::compute(k).unwrap();
    assert_eq!(m2.betti(), mod2, "{}", k.name());
    eprintln!("{}: {:?} reduced to {:?}", k.name(), t0.elapsed(), h.reduced_sizes());
}

#[test]
fn tori() {
    check(&torus(3), &[1, 3, 3, 1], &[&[], &[], &[], &[]], &[1, 3, 3, 1]);
    check(&torus(4), &[1, 4, 6, 4, 1], &[&[], &[], &[], &[], &[]], &[1, 4, 6, 4, 1]);
}

#[test]
fn five_torus() {
    let t5 = torus(5);
    assert_eq!(t5.f_vector(), vec![243, 7533, 43740, 94770, 87480, 29160]);
    check(&t5, &[1, 5, 10, 10, 5, 1], &[&[] as &[u64]; 6], &[1, 5, 10, 10, 5, 1]);
}

#[test]
fn projective_spaces() {
    let rp3 = projective_space(3).unwrap();
    check(&rp3, &[1, 0, 0, 1], &[&[], &[2], &[], &[]], &[1, 1, 1, 1]);
    let rp4 = projective_space(4).unwrap();
    check(&rp4, &[1, 0, 0, 0, 0], &[&[], &[2], &[], &[2], &[]], &[1, 1, 1, 1, 1]);
    let h = IntegralHomology::compute(&rp3).unwrap();
    let m2 = Mod2Homology::compute(&rp3).unwrap();
    assert_eq!(rho2_on_homology(&h, &m2, 1).unwrap().image_dimension(), 1);
    assert_eq!(rho2_on_homology(&h, &m2, 2).unwrap().image_dimension(), 0);
}

#[test]
fn complex_projective_plane() {
    let k = cp2();
    assert!(verify_closed_manifold(&k).orientable);
    check(&k, &[1, 0, 1, 0, 1], &[&[] as &[u64]; 5], &[1, 0, 1, 0, 1]);
    assert_eq!(mod2_betti_by_rank(&k), vec![1, 0, 1, 0, 1]);
}

#[test]
fn rho2_is_onto_for_four_torus() {
    let t4 = torus(4);
    let h = IntegralHomology::compute(&t4).unwrap();
    let m2 = Mod2Homology::compute(&t4).unwrap();
    assert_eq!(m2.dimension(2), 6);
    assert_eq!(rho2_on_homology(&h, &m2, 2).unwrap().image_dimension(), 6);
}

#[test]
fn generators_are_cycles_and_classes_round_trip() {
    let k = projective_space(3).unwrap();
    let h = IntegralHomology::compute(&k).unwrap();
    for g in h.groups() {
        for (i, c) in g.generators().enumerate() {
            if g.degree > 0 {
                assert!(psw_core::chains::boundary(&k, c).unwrap().is_zero());
            }
            let class = h.class_of(&k, c).unwrap();
            let mut coords: Vec<i64> = class.free.clone();
            coords.extend(class.torsion.iter().map(|&t| t as i64));
            let mut want = vec![0i64; g.num_generators()];
            want[i] = 1;
            assert_eq!(coords, want);
        }
    }
}

#[test]
fn boundary_of_boundary_vanishes() {
    use psw_core::chains::{boundary, Chain, Ring};
    use rand::Rng;
    let mut r = common::rng(11);
    for k in [common::rp2(), cp2(), torus(3), projective_space(3).unwrap()] {
        for ring in [Ring::Z, Ring::Z2] {
            for t in 0..100 {
                let d = 2 + t % (k.dimension() - 1);
                let coeffs = (0..k.count(d)).map(|_| r.gen_range(-5..=5)).collect();
                let c = Chain::new(d, ring, coeffs);
                assert!(boundary(&k, &boundary(&k, &c).unwrap()).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn euler_characteristic_and_duality() {
    for k in [common::rp2(), cp2(), torus(3), projective_space(3).unwrap(), projective_space(4).unwrap()] {
        let h = IntegralHomology::compute(&k).unwrap();
        let m2 = Mod2Homology::compute(&k).unwrap();
        let chi: i64 = h.betti().iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(chi, k.euler_characteristic());
        let b2 = m2.betti();
        let m = k.dimension();
        for i in 0..=m {
            assert_eq!(b2[i], b2[m - i], "{}", k.name());
        }
        if verify_closed_manifold(&k).orientable {
            let b = h.betti();
            for i in 0..=m {
                assert_eq!(b[i], b[m - i], "{}", k.name());
            }
        }
    }
}

#[test]
fn torsion_certificates_hold() {
    use psw_core::chains::boundary;
    for k in [common::rp2(), projective_space(3).unwrap(), projective_space(4).unwrap()] {
        let h = IntegralHomology::compute(&k).unwrap();
        for g in h.groups() {
            for ((gen, t), cert) in g.torsion_generators.iter().zip(&g.torsion_certificates) {
                assert_eq!(boundary(&k, cert).unwrap(), gen.scale(*t as i64).unwrap());
            }
        }
    }
}

#[test]
fn homology_is_invariant_under_relabeling() {
    use rand::seq::SliceRandom;
    let mut r = common::rng(12);
    for k in [cp2(), torus(3), projective_space(3).unwrap()] {
        let h = IntegralHomology::compute(&k).unwrap();
        for _ in 0..5 {
            let mut perm: Vec<i64> = k.labels().to_vec();
            perm.shuffle(&mut r);
            let labels = k.labels().to_vec();
            let relabeled = k
                .relabeled(|v| perm[labels.iter().position(|&l| l == v).unwrap()] * 3 + 100)
                .unwrap();
            let h2 = IntegralHomology::compute(&relabeled).unwrap();
            assert_eq!(h.betti(), h2.betti());
            assert_eq!(h.torsion(), h2.torsion());
            assert_eq!(mod2_betti_by_rank(&relabeled), Mod2Homology::compute(&relabeled).unwrap().betti());
        }
    }
}
