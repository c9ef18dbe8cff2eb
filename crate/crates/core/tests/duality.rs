//! The dual of morphisms: naturality, contravariance and quotient maps.

use tensym::algebra::check_congruence;
use tensym::duality::{DualSpace, MapDirection};
use tensym::{
    build_corpus, check_homomorphism, check_tms_function, congruences_bruteforce, dual_function,
    epsilon_iso, quotient, samples, sigma_iso, validate_tms_space, Guards, StructureMap,
    TmsAlgebra,
};

/// Every homomorphism between two small algebras, by trying all maps.
fn homomorphisms(a: &TmsAlgebra, b: &TmsAlgebra) -> Vec<StructureMap> {
    let (n, k) = (a.len(), b.len());
    let mut out = Vec::new();
    let mut map = vec![0; n];
    loop {
        if check_homomorphism(&map, a, b).unwrap().passed() {
            out.push(StructureMap::algebra(map.clone()));
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            map[i] += 1;
            if map[i] < k {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

fn small_algebras() -> Vec<TmsAlgebra> {
    let corpus = build_corpus(2, &[1]).unwrap();
    let mut out: Vec<TmsAlgebra> = corpus.entries.into_iter().map(|e| e.algebra).collect();
    out.extend([samples::b2(), samples::k3(), samples::dm4(), samples::b4()]);
    out.retain(|a| a.len() <= 4);
    out
}

#[test]
fn identity_goes_to_identity() {
    for a in small_algebras() {
        let id = StructureMap::identity(MapDirection::AlgebraToAlgebra, a.len());
        let f = dual_function(&id, &a, &a).unwrap();
        let points = DualSpace::of(&a).unwrap().space.len();
        assert_eq!(
            f,
            StructureMap::identity(MapDirection::SpaceToSpace, points)
        );
    }
}

#[test]
fn duals_of_homomorphisms_are_tms_functions_and_natural() {
    let algebras = small_algebras();
    let mut seen = 0;
    for a in &algebras {
        for b in &algebras {
            if a.m() != b.m() {
                continue;
            }
            let (da, db) = (DualSpace::of(a).unwrap(), DualSpace::of(b).unwrap());
            for h in homomorphisms(a, b) {
                let f = dual_function(&h, a, b).unwrap();
                let report = check_tms_function(&f, &db.space, &da.space);
                assert!(report.passed(), "{report}");
                // σ_A(x) pulled back along Φ(h) is σ_B(h(x))
                for x in a.elements() {
                    let image = da.sigma(x);
                    let pulled = (0..db.space.len())
                        .filter(|&p| image >> f.images[p] & 1 == 1)
                        .fold(0u64, |acc, p| acc | 1 << p);
                    assert_eq!(pulled, db.sigma(h.images[x]));
                }
                seen += 1;
            }
        }
    }
    assert!(seen > 20, "only {seen} homomorphisms");
}

#[test]
fn composition_is_reversed() {
    let algebras = small_algebras();
    for a in &algebras {
        for b in &algebras {
            for c in &algebras {
                if a.m() != b.m() || b.m() != c.m() {
                    continue;
                }
                for h in homomorphisms(a, b) {
                    for k in homomorphisms(b, c) {
                        let kh = h.then(&k);
                        let lhs = dual_function(&kh, a, c).unwrap();
                        let rhs = dual_function(&k, b, c)
                            .unwrap()
                            .then(&dual_function(&h, a, b).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn quotient_maps_dualize_to_injective_tms_functions() {
    for a in small_algebras() {
        let da = DualSpace::of(&a).unwrap();
        for theta in congruences_bruteforce(&a, &Guards::default())
            .unwrap()
            .congruences
        {
            check_congruence(&a, &theta).unwrap();
            let (q_alg, q) = quotient(&a, &theta).unwrap();
            let dq = DualSpace::of(&q_alg).unwrap();
            let f = dual_function(&StructureMap::algebra(q), &a, &q_alg).unwrap();
            assert!(check_tms_function(&f, &dq.space, &da.space).passed());
            let mut images = f.images.clone();
            images.sort_unstable();
            images.dedup();
            assert_eq!(images.len(), f.images.len());
        }
    }
}

#[test]
fn non_homomorphisms_are_refused() {
    let k3 = samples::k3();
    let b2 = samples::b2();
    // collapses c onto 0, breaking N
    let h = StructureMap::algebra(vec![0, 0, 1]);
    assert!(dual_function(&h, &k3, &b2).is_err());
}

#[test]
fn sample_round_trips() {
    for (_, a) in samples::named_algebras().into_iter().take(4) {
        assert!(sigma_iso(&a).unwrap().1.passed());
    }
    for s in [samples::point_space(), samples::four_cycle_space()] {
        assert!(validate_tms_space(&s).passed());
        assert!(epsilon_iso(&s).unwrap().1.passed());
    }
    assert!(sigma_iso(&samples::b2_t3_failing()).is_err());
    assert!(epsilon_iso(&samples::chain_identity_space()).is_err());
}
