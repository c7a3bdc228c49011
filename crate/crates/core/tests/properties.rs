//! Structural invariants, checked on random inputs and exhaustively on
//! small groups.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qmodels::cyclic::{
    build_cyclic_model, cycle_fill, semidirect_stationarity, verify_half_liberation, CyclicModelData,
};
use qmodels::exact::{rat, Cyc, ExactMatrix};
use qmodels::group::{
    abelian_dual, catalog, extend_automorphism, generate, quotient_data, AbelianGroup, AutoMap, Perm, PermGroup,
};
use qmodels::magic::{
    bichon_build, convolution_idempotency, fixed_point_matrix, haar_state_classical, model_state, quasi_flat_check,
    stationarity_check, verify_magic, DualPresentation, MagicModel, OrbitStructure, Reference,
};
use qmodels::quasiflat::{classical_model_from_family, latin_family_search, LatinFamily, SparseLatinSquare};
use qmodels::rep::Representation;
use qmodels::thoma::{
    averaged_character_trace, check_stationarity, evaluate_at_character, frobenius_trace, induce, FiniteData,
    VirtuallyAbelian,
};

fn perm(images: &[usize]) -> Perm {
    Perm::from_images(images).unwrap()
}

fn alternating4() -> PermGroup {
    PermGroup::generated_by(4, &[perm(&[2, 3, 1, 4]), perm(&[1, 3, 4, 2])]).unwrap()
}

fn small_groups() -> Vec<PermGroup> {
    vec![
        catalog::symmetric(3),
        catalog::symmetric(4),
        catalog::cyclic(6),
        catalog::dihedral(4),
        catalog::dihedral(6),
        catalog::klein_s4(),
        catalog::klein_s6(),
        catalog::s3_times_z2(),
        alternating4(),
    ]
}

/// (Γ, Λ) with Λ abelian normal, |Γ| ≤ 24.
fn virtually_abelian_pairs() -> Vec<FiniteData> {
    let pairs = vec![
        (catalog::symmetric(3), catalog::cyclic_in(3, &[1, 2, 3])),
        (catalog::dihedral(4), catalog::rotations(4)),
        (catalog::dihedral(4), catalog::klein_s4()),
        (catalog::cyclic(6), catalog::cyclic(6)),
        (catalog::dihedral(6), catalog::rotations(6)),
        (alternating4(), catalog::klein_s4()),
        (catalog::symmetric(4), catalog::klein_s4()),
        (catalog::s3_times_z2(), PermGroup::trivial(5)),
    ];
    pairs.into_iter().map(|(g, l)| FiniteData::new(g, l).unwrap()).collect()
}

fn random_cyc(rng: &mut ChaCha8Rng, n: usize) -> Cyc {
    let coeffs = (0..n).map(|_| rat(rng.random_range(-5..=5), rng.random_range(1..=4))).collect();
    Cyc::from_coeffs(coeffs).unwrap()
}

#[test]
fn cyclotomic_ring_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=24 {
        for _ in 0..1000 {
            let (a, b, c) = (random_cyc(&mut rng, n), random_cyc(&mut rng, n), random_cyc(&mut rng, n));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c), "n = {n}");
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c), "n = {n}");
            assert_eq!(&a * &b, &b * &a);
            assert_eq!((&a - &b).is_zero(), a == b);
            assert!((&a - &a).is_zero());
            // conj is an involutive ring automorphism
            assert_eq!(a.conj().conj(), a);
            assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            let norm = &a * &a.conj();
            assert_eq!(norm.conj(), norm);
        }
    }
}

#[test]
fn generated_groups_are_closed() {
    for g in small_groups() {
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                let ab = g.element(a).compose(g.element(b));
                assert_eq!(g.index_of(&ab), Some(g.mul_idx(a, b)));
            }
        }
    }
}

#[test]
fn quotient_tables_are_groups() {
    for d in virtually_abelian_pairs() {
        let q = quotient_data(d.gamma(), d.lambda()).unwrap();
        let t = &q.table;
        let m = t.order();
        assert_eq!(m * d.lambda().order(), d.gamma().order());
        for a in 0..m {
            assert_eq!(t.mul(a, t.inv(a)), 0);
            for b in 0..m {
                for c in 0..m {
                    assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)));
                }
            }
        }
    }
}

#[test]
fn character_orthogonality() {
    for factors in [vec![2], vec![3], vec![2, 2], vec![2, 4], vec![6], vec![3, 3]] {
        let group = AbelianGroup::finite(factors).unwrap();
        let dual = abelian_dual(&group).unwrap();
        let elements = group.elements().unwrap();
        assert_eq!(dual.len(), elements.len());
        for (i, chi) in dual.iter().enumerate() {
            assert!(dual[i + 1..].iter().all(|psi| psi != chi));
            for psi in &dual {
                assert!(dual.contains(&chi.mul(psi, &group)));
            }
            let total = elements.iter().fold(Cyc::zero(), |acc, g| &acc + &chi.eval(&group, g));
            let expected = if chi.is_trivial() { Cyc::integer(elements.len() as i64) } else { Cyc::zero() };
            assert_eq!(total, expected);
        }
    }
}

#[test]
fn inner_automorphisms_invert() {
    for g in small_groups() {
        for h in g.elements() {
            let images: Vec<Perm> = g.generators().iter().map(|x| h.compose(x).compose(&h.inverse())).collect();
            let sigma = extend_automorphism(&g, &images).unwrap();
            assert!(sigma.compose(&sigma.inverse(&g), &g).is_identity());
            assert!(sigma.is_multiplicative(&g));
            assert_eq!(sigma, AutoMap::conjugation(&g, h).unwrap());
        }
    }
}

#[test]
fn spectral_idempotents_of_permutation_matrices() {
    for g in [catalog::symmetric(4), catalog::cyclic(6), catalog::dihedral(5)] {
        let exponent = (0..g.order()).map(|x| g.element(x).order()).fold(1, num_integer::lcm);
        for x in 0..g.order() {
            let u = catalog::permutation_matrix(g.element(x));
            for k in [exponent, 2 * exponent].into_iter().filter(|&k| k <= 12) {
                let parts = u.spectral_idempotents(k, 0.0).unwrap();
                let mut sum = ExactMatrix::zeros(u.rows(), u.rows());
                for (a, p) in parts.iter().enumerate() {
                    assert!(p.is_projection(0.0));
                    assert_eq!(Cyc::integer(p.rank(0.0) as i64), p.trace());
                    for q in &parts[a + 1..] {
                        assert!((p * q).is_zero(0.0));
                    }
                    sum = sum.try_add(p).unwrap();
                }
                assert_eq!(sum, ExactMatrix::identity(u.rows()));
            }
        }
    }
}

#[test]
fn induced_models_exhaustive() {
    for d in virtually_abelian_pairs() {
        let lattice = d.lattice().clone();
        let dual = abelian_dual(&lattice).unwrap();
        let elements = d.gamma().elements().to_vec();
        let induced: Vec<_> = elements.iter().map(|g| induce(&d, g).unwrap()).collect();
        for (a, g) in elements.iter().enumerate() {
            assert!(induced[a].is_monomial());
            for (b, h) in elements.iter().enumerate() {
                let gh = d.gamma().index_of(&g.compose(h)).unwrap();
                let product = induced[a].mul(&induced[b], &lattice);
                for x in 0..product.size() {
                    for y in 0..product.size() {
                        assert_eq!(product.entry(x, y), induced[gh].entry(x, y));
                    }
                }
            }
            for chi in &dual {
                let direct = evaluate_at_character(&induced[a], &lattice, chi).unwrap().trace();
                assert_eq!(frobenius_trace(&d, chi, g).unwrap(), direct);
            }
            let expected = if g.is_identity() { Cyc::integer(d.coset_count() as i64) } else { Cyc::zero() };
            assert_eq!(averaged_character_trace(&d, g).unwrap(), expected);
        }
        assert!(check_stationarity(&d, 1).unwrap().stationary);
    }
}

#[test]
fn latin_families_exhaustive() {
    for g in [catalog::cyclic_in(3, &[1, 2, 3]), catalog::klein_s4(), catalog::dihedral(4), catalog::rotations(4)] {
        let k = OrbitStructure::classical(&g).common_size.unwrap();
        let family = latin_family_search(&g, k).unwrap().family().cloned().unwrap();
        let cert = classical_model_from_family(&g, &family, 2).unwrap();
        assert!(cert.all_pass());
        let bad = LatinFamily { members: vec![g.element(0).clone(); k] };
        for h in g.elements() {
            let moved = family.translate(h);
            assert!(moved.is_valid());
            assert!(moved.validate_for(&g).is_ok());
            assert!(!bad.translate(h).is_valid());
            let square = SparseLatinSquare::from_family(&moved).unwrap();
            assert_eq!(square.to_family().unwrap(), moved);
        }
    }
}

#[test]
fn stationary_models_are_idempotent_and_quasi_flat() {
    for g in [catalog::cyclic_in(3, &[1, 2, 3]), catalog::klein_s4(), catalog::dihedral(4)] {
        let k = OrbitStructure::classical(&g).common_size.unwrap();
        let family = latin_family_search(&g, k).unwrap().family().cloned().unwrap();
        let model = classical_model_from_family(&g, &family, 2).unwrap().model;
        let orbits = OrbitStructure::classical(&g);
        let reference = Reference::Classical(g.clone());
        assert!(stationarity_check(&reference, &model, 2, 0.0).unwrap().stationary);
        let phi = model_state(&model, 2);
        assert!(convolution_idempotency(&phi, 2, 0.0).idempotent);
        assert!(quasi_flat_check(&model, &orbits, 0.0).unwrap().quasi_flat);
        let fixed = fixed_point_matrix(&phi, &orbits, 0.0);
        assert!(fixed.is_projection && fixed.fixes_all_one && fixed.matches_orbits);
        assert_eq!(phi.table(2), haar_state_classical(&g, 2).table(2));
        row_traces_sum_to_one(&model);
    }
}

fn row_traces_sum_to_one(model: &MagicModel<Cyc>) {
    assert!(verify_magic(model, 0.0).pass);
    let n = model.n();
    for x in 0..model.point_count() {
        for i in 0..n {
            let total = (0..n).fold(Cyc::zero(), |acc, j| &acc + &model.fiber(x, i, j).ntrace());
            assert_eq!(total, Cyc::one());
        }
    }
}

#[test]
fn semidirect_homomorphism_exhaustive() {
    // |L|·K ≤ 24
    let s3 = catalog::symmetric(3);
    let cases = vec![
        (catalog::cyclic(5), extend_automorphism(&catalog::cyclic(5), &[perm(&[5, 1, 2, 3, 4])]).unwrap(), 2),
        (catalog::cyclic(7), extend_automorphism(&catalog::cyclic(7), &[perm(&[3, 4, 5, 6, 7, 1, 2])]).unwrap(), 3),
        (s3.clone(), AutoMap::conjugation(&s3, &perm(&[2, 1, 3])).unwrap(), 2),
        (catalog::cyclic(4), extend_automorphism(&catalog::cyclic(4), &[perm(&[4, 1, 2, 3])]).unwrap(), 2),
        (catalog::klein_s4(), AutoMap::identity(&catalog::klein_s4()), 4),
    ];
    for (l, sigma, k) in cases {
        assert!(l.order() * k <= 24);
        let cert = semidirect_stationarity(&l, &sigma, k).unwrap();
        assert!(cert.homomorphism && cert.unital && cert.stationary, "{cert:?}");
        assert_eq!(cert.basis_size, l.order() * k);
    }
}

#[test]
fn self_conjugate_groups_give_orthogonal_half_liberation() {
    // σ = entrywise conjugation, which is inversion on these diagonal groups
    for n in [3, 4, 5, 6] {
        let l = catalog::cyclic(n);
        let z = Cyc::root_of_unity(n, 1);
        let v = ExactMatrix::diag(&[z.clone(), z.conj()]);
        let inverse = l.generators()[0].inverse();
        let data = CyclicModelData::new(&l, &[v], &[inverse], 2, 0.0).unwrap();
        let model = build_cyclic_model(&data).unwrap();
        let r = verify_half_liberation(&model, 0.0);
        assert!(r.self_adjoint_entries && r.abc_cba == Some(true) && r.pass, "{r:?}");
    }
}

fn random_perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(&v).unwrap())
}

fn small_cyc() -> impl Strategy<Value = Cyc> {
    (1usize..=12, prop::collection::vec((-4i64..=4, 1i64..=3), 12))
        .prop_map(|(n, cs)| Cyc::from_coeffs(cs[..n].iter().map(|&(p, q)| rat(p, q)).collect()).unwrap())
}

/// Nonzero entries lie on a single cyclic diagonal c − r ≡ s (mod K).
fn single_cyclic_diagonal(m: &ExactMatrix) -> bool {
    let k = m.rows();
    let shifts: std::collections::BTreeSet<usize> = (0..k)
        .flat_map(|r| (0..k).map(move |c| (r, c)))
        .filter(|&(r, c)| !m[(r, c)].is_zero())
        .map(|(r, c)| (c + k - r) % k)
        .collect();
    shifts.len() <= 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cycle_fill_products_are_diagonal(xs in prop::collection::vec(small_cyc(), 1..6), ys in prop::collection::vec(small_cyc(), 6)) {
        let k = xs.len();
        let a = cycle_fill(&xs);
        let b = cycle_fill(&ys[..k]);
        prop_assert!((&a * &b.adjoint()).is_diagonal(0.0));
        prop_assert!((&a.adjoint() * &b).is_diagonal(0.0));
    }

    #[test]
    fn cyclic_model_words_stay_on_one_diagonal(
        k in 1usize..=4,
        word in prop::collection::vec((0usize..2, 0usize..2, any::<bool>()), 1..=4),
    ) {
        // L = Z_12 acting diagonally, σ = g ↦ g^5 has order 2
        let l = catalog::cyclic(12);
        let z = Cyc::root_of_unity(12, 1);
        let v = ExactMatrix::diag(&[z.clone(), z.pow(7)]);
        let gen = &l.generators()[0];
        let sigma = (1..5).fold(gen.clone(), |acc, _| acc.compose(gen));
        let kk = if k % 2 == 0 { k } else { 2 * k };
        let data = CyclicModelData::new(&l, &[v], &[sigma], kk, 0.0).unwrap();
        let model = build_cyclic_model(&data).unwrap();
        for x in 0..model.point_count() {
            let mut acc = ExactMatrix::identity(kk);
            for &(i, j, adjoint) in &word {
                let e = model.fiber(x, i, j);
                acc = &acc * &(if adjoint { e.adjoint() } else { e.clone() });
            }
            prop_assert!(single_cyclic_diagonal(&acc));
        }
    }

    #[test]
    fn latin_square_round_trip(g in prop::sample::select(vec![0usize, 1, 2]), shift in 0usize..24) {
        let groups = [catalog::klein_s4(), catalog::dihedral(4), catalog::rotations(4)];
        let group = &groups[g];
        let family = latin_family_search(group, 4).unwrap().family().cloned().unwrap();
        let moved = family.translate(group.element(shift % group.order()));
        let square = SparseLatinSquare::from_family(&moved).unwrap();
        prop_assert_eq!(square.to_family().unwrap(), moved);
        let json = serde_json::to_string(&square).unwrap();
        prop_assert!(json.contains('1'));
    }

    #[test]
    fn closure_of_random_generators(a in random_perm(5), b in random_perm(5)) {
        let g = generate(5, &[a, b], 120).unwrap();
        prop_assert_eq!(120 % g.order(), 0);
        for x in 0..g.order() {
            prop_assert_eq!(g.mul_idx(x, g.inv_idx(x)), 0);
            for y in 0..g.order() {
                prop_assert!(g.index_of(&g.element(x).compose(g.element(y))).is_some());
            }
        }
    }

    #[test]
    fn projections_have_rank_equal_to_trace(p in random_perm(6), k in 1usize..=6) {
        let u = catalog::permutation_matrix(&p);
        let order = p.order();
        let kk = order * k;
        prop_assume!(kk <= 12);
        for q in u.spectral_idempotents(kk, 0.0).unwrap() {
            prop_assert!(q.is_projection(0.0));
            prop_assert_eq!(Cyc::integer(q.rank(0.0) as i64), q.trace());
        }
    }

    #[test]
    fn block_models_are_circulant(p in random_perm(4)) {
        let k = p.order();
        let u = catalog::permutation_matrix(&p);
        let model = bichon_build(&[k], &[u], 0.0).unwrap();
        prop_assert!(verify_magic(&model, 0.0).pass);
        for r in 0..k {
            for c in 0..k {
                prop_assert_eq!(model.fiber(0, r, c), model.fiber(0, 0, (c + k - r) % k));
            }
        }
        let gamma = generate(4, std::slice::from_ref(&p), 24).unwrap();
        let dual = DualPresentation::new(&gamma, &[p]).unwrap();
        let stationary = stationarity_check(&Reference::Dual(dual), &model, 2, 0.0).unwrap().stationary;
        let phi = model_state(&model, 2);
        prop_assert!(!stationary || convolution_idempotency(&phi, 2, 0.0).idempotent);
    }

    #[test]
    fn representations_are_multiplicative(g in prop::sample::select(vec![0usize, 1, 2, 3])) {
        let group = [catalog::symmetric(3), catalog::dihedral(4), catalog::klein_s6(), alternating4()][g].clone();
        let reg = Representation::<Cyc>::regular(&group);
        prop_assert!(reg.is_multiplicative(0.0));
        prop_assert!(reg.images().iter().all(|m| m.is_unitary(0.0)));
        let float = reg.to_float();
        prop_assert!(float.is_multiplicative(1e-9));
    }
}
