#![allow(dead_code)]

use psw_core::chains::{Cochain, Ring};
use psw_core::complex::{boundary_of_simplex, parse_complex, staircase_product, SimplicialComplex};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sphere(k: usize) -> SimplicialComplex {
    boundary_of_simplex(k).unwrap()
}

pub fn torus(n: usize) -> SimplicialComplex {
    let c = sphere(1);
    let mut t = c.clone();
    for _ in 1..n {
        t = staircase_product(&t, &c);
    }
    t
}

pub fn rp2() -> SimplicialComplex {
    parse_complex(
        r#"{"name":"RP2","dimension":2,"facets":[[1,2,3],[1,3,4],[1,4,5],[1,5,6],[1,2,6],
            [2,3,5],[3,4,6],[2,4,5],[3,5,6],[2,4,6]]}"#,
    )
    .unwrap()
}

pub fn cp2() -> SimplicialComplex {
    let facets: [[i64; 5]; 36] = [
        [0, 1, 2, 3, 4], [0, 1, 2, 3, 5], [0, 1, 2, 4, 5], [0, 1, 6, 7, 8], [0, 2, 6, 7, 8],
        [1, 2, 6, 7, 8], [3, 4, 5, 6, 7], [3, 4, 5, 6, 8], [3, 4, 5, 7, 8], [0, 1, 3, 4, 7],
        [0, 1, 4, 6, 7], [0, 2, 3, 5, 6], [0, 2, 3, 6, 8], [0, 3, 5, 6, 8], [1, 2, 4, 5, 8],
        [1, 2, 5, 7, 8], [1, 3, 4, 6, 7], [2, 4, 5, 7, 8], [0, 1, 3, 5, 7], [0, 1, 5, 7, 8],
        [0, 2, 4, 5, 6], [0, 2, 4, 6, 7], [0, 3, 5, 7, 8], [1, 2, 3, 4, 8], [1, 2, 3, 6, 8],
        [1, 3, 4, 6, 8], [2, 4, 5, 6, 7], [0, 1, 4, 5, 8], [0, 1, 4, 6, 8], [0, 2, 3, 4, 7],
        [0, 2, 3, 7, 8], [0, 4, 5, 6, 8], [1, 2, 3, 5, 6], [1, 2, 5, 6, 7], [1, 3, 5, 6, 7],
        [2, 3, 4, 7, 8],
    ];
    let f: Vec<Vec<i64>> = facets.iter().map(|s| s.iter().map(|v| v + 1).collect()).collect();
    SimplicialComplex::from_facets("CP2", 4, &f).unwrap()
}

pub fn random_cochain(k: &SimplicialComplex, degree: usize, ring: Ring, rng: &mut ChaCha8Rng) -> Cochain {
    let coeffs = (0..k.count(degree))
        .map(|_| match ring {
            Ring::Z2 => rng.gen_range(0..2),
            Ring::Z => rng.gen_range(-3..=3),
        })
        .collect();
    Cochain::new(degree, ring, coeffs)
}
