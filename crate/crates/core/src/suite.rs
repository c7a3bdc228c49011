//! The acceptance suite: each criterion is a function returning named
//! checks, and [`run_suite`] folds them into one deterministic report.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclic::{
    build_cyclic_model, semidirect_stationarity, verify_half_liberation, verify_k_symmetry, CyclicModelData,
};
use crate::error::Result;
use crate::exact::{rat, Cyc, ExactMatrix, FloatMatrix, Matrix, Scalar};
use crate::group::{catalog, generate, Perm, PermGroup};
use crate::magic::words::format_word;
use crate::magic::{
    bichon_build, convolution_idempotency, fixed_point_matrix, fixed_point_matrix_classical, model_state,
    quasi_flat_check, stationarity_check, verify_magic, DualPresentation, MagicModel, OrbitStructure, Reference,
};
use crate::quasiflat::{
    classical_model_from_family, derangement_scan, family_model, latin_family_search, trace_vector_check,
    uniform_check, LatinFamily, LatinSearchResult,
};
use crate::rep::Representation;
use crate::report::{strip_timing, Mode, Report, RunConfig, Status};
use crate::thoma::{check_stationarity, FiniteData};

/// Tolerance for the seeded random-conjugate comparison.
pub const RANDOM_CONJUGATE_TOL: f64 = 1e-8;
/// Random conjugates drawn per K.
pub const RANDOM_CONJUGATES: usize = 200;
/// Float re-verification tolerance when the run is in exact mode.
pub const FLOAT_AGREEMENT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

fn check(name: impl Into<String>, pass: bool, detail: Value) -> Check {
    Check { name: name.into(), pass, detail }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub elapsed_ms: f64,
}

impl CriterionOutcome {
    fn new(id: u8, title: &str, checks: Vec<Check>, start: Instant) -> Self {
        CriterionOutcome {
            id,
            title: title.into(),
            pass: checks.iter().all(|c| c.pass),
            checks,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn failing_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Re-enumerates a catalog group under the configured element cap.
fn capped(g: PermGroup, cap: usize) -> Result<PermGroup> {
    generate(g.degree(), g.generators(), cap)
}

fn regular_generator_images(g: &PermGroup) -> Vec<ExactMatrix> {
    let reg = Representation::<Cyc>::regular(g);
    g.generator_indices().iter().map(|&i| reg.image(i).clone()).collect()
}

pub const TITLES: [&str; 11] = [
    "counterexample: Klein four-group in S_6 has no Latin family",
    "induced-representation models are stationary",
    "Latin families give certified classical quasi-flat models",
    "collapsed dihedral model is a negative control",
    "block models from finite-order unitaries",
    "cyclic model over the dihedral group D_5",
    "trace vectors versus spectral multiplicities",
    "fixed-point projections",
    "K-symmetry of cyclic models",
    "uniform presentations",
    "determinism and float agreement",
];

pub fn criterion_1(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let g = capped(catalog::klein_s6(), cfg.cap)?;
    let orbits = OrbitStructure::classical(&g);
    let derangements = derangement_scan(&g);
    let search = latin_family_search(&g, 2)?;
    let no_family = matches!(search, LatinSearchResult::NoFamily { exhaustive: true, .. });
    let checks = vec![
        check("three orbits of size 2", orbits.sizes == vec![2, 2, 2] && orbits.quasi_transitive, json!(orbits.blocks)),
        check("no derangements", derangements.is_empty(), json!(derangements.len())),
        check("exhaustive no-family certificate", no_family, serde_json::to_value(&search).expect("json")),
    ];
    Ok(CriterionOutcome::new(1, TITLES[0], checks, start))
}

pub fn criterion_2(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let cases = [
        ("S_3 over A_3", catalog::symmetric(3), catalog::cyclic_in(3, &[1, 2, 3])),
        ("D_4 over Z_4", catalog::dihedral(4), catalog::cyclic(4)),
        ("Z_6 over Z_6", catalog::cyclic(6), catalog::cyclic(6)),
    ];
    let mut checks = Vec::new();
    for (name, gamma, lambda) in cases {
        let case_start = Instant::now();
        let data = FiniteData::new(capped(gamma, cfg.cap)?, capped(lambda, cfg.cap)?)?;
        let cert = check_stationarity(&data, 0)?;
        let pass = cert.stationary
            && cert.frobenius_agrees == Some(true)
            && cert.character_average_agrees == Some(true)
            && cert.elements_checked == data.gamma().order();
        checks.push(check(
            name,
            pass,
            json!({
                "index": cert.index,
                "elements_checked": cert.elements_checked,
                "frobenius_agrees": cert.frobenius_agrees,
                "first_failure": cert.first_failure,
                "elapsed_ms": case_start.elapsed().as_secs_f64() * 1e3,
            }),
        ));
    }
    Ok(CriterionOutcome::new(2, TITLES[1], checks, start))
}

fn criterion_3_groups() -> [(&'static str, PermGroup, usize); 3] {
    [
        ("Z_3 in S_3", catalog::cyclic_in(3, &[1, 2, 3]), 3),
        ("Klein four-group in S_4", catalog::klein_s4(), 4),
        ("D_4 in S_4", catalog::dihedral(4), 4),
    ]
}

pub fn criterion_3(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (name, g, k) in criterion_3_groups() {
        let case_start = Instant::now();
        let g = capped(g, cfg.cap)?;
        let search = latin_family_search(&g, k)?;
        let Some(fam) = search.family() else {
            checks.push(check(name, false, json!("no Latin family found")));
            continue;
        };
        let cert = classical_model_from_family(&g, fam, 2)?;
        let idem = convolution_idempotency(&model_state(&cert.model, 2), 2, 0.0);
        checks.push(check(
            name,
            cert.all_pass() && idem.idempotent,
            json!({
                "family": fam.members.iter().map(Perm::to_string).collect::<Vec<_>>(),
                "magic": cert.magic.pass,
                "quasi_flat": cert.quasi_flat.quasi_flat,
                "stationary": cert.stationarity.stationary,
                "words_checked": cert.stationarity.words_checked,
                "idempotent": idem.idempotent,
                "elapsed_ms": case_start.elapsed().as_secs_f64() * 1e3,
            }),
        ));
    }
    Ok(CriterionOutcome::new(3, TITLES[2], checks, start))
}

/// The rotation family of D_4 placed on a single point.
pub fn collapsed_dihedral_model() -> Result<MagicModel<Cyc>> {
    let fam = LatinFamily { members: catalog::rotations(4).elements().to_vec() };
    family_model(&[Perm::identity(4)], &fam)
}

pub fn criterion_4(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let d4 = capped(catalog::dihedral(4), cfg.cap)?;
    let model = collapsed_dihedral_model()?;
    let cert = stationarity_check(&Reference::Classical(d4), &model, 2, 0.0)?;
    let expected_word = format_word(&[(1, 1), (2, 2)]);
    let mismatch_ok = cert.first_mismatch.as_ref().is_some_and(|m| {
        m.word == expected_word
            && m.model == Cyc::rational(rat(1, 4)).to_json()
            && m.reference == Cyc::rational(rat(1, 8)).to_json()
    });
    let idem = convolution_idempotency(&model_state(&model, 2), 2, 0.0);
    let checks = vec![
        check(
            "stationarity fails at u(1,1)u(2,2) with 1/4 against 1/8",
            !cert.stationary && mismatch_ok,
            json!(cert.first_mismatch),
        ),
        check(
            "convolution idempotency fails at length 2",
            !idem.idempotent,
            json!({ "idempotent": idem.idempotent, "first_failure": idem.first_failure }),
        ),
    ];
    Ok(CriterionOutcome::new(4, TITLES[3], checks, start))
}

/// Entries of each block depend only on (c − r) mod K_i.
pub fn is_block_circulant<S: Scalar>(model: &MagicModel<S>, sizes: &[usize], tol: f64) -> bool {
    let mut start = 0;
    for &k in sizes {
        for r in 0..k {
            for c in 0..k {
                let a = model.fiber(0, start + r, start + c);
                let b = model.fiber(0, start, start + (c + k - r) % k);
                if !a.approx_eq(b, tol) {
                    return false;
                }
            }
        }
        start += k;
    }
    true
}

fn criterion_5_groups() -> [(&'static str, PermGroup); 3] {
    [("Z_2", catalog::cyclic(2)), ("Z_3", catalog::cyclic(3)), ("Z_2 x Z_2", catalog::abelian_product(&[2, 2]))]
}

pub fn criterion_5(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (name, g) in criterion_5_groups() {
        let g = capped(g, cfg.cap)?;
        let gens = regular_generator_images(&g);
        let sizes: Vec<usize> = g.generators().iter().map(Perm::order).collect();
        let model = bichon_build(&sizes, &gens, 0.0)?;
        let magic = verify_magic(&model, 0.0).pass;
        let circulant = is_block_circulant(&model, &sizes, 0.0);
        let reg = Representation::<Cyc>::regular(&g);
        let delta = (0..g.order()).all(|x| reg.image(x).ntrace() == if x == 0 { Cyc::one() } else { Cyc::zero() });
        let dual = DualPresentation::new(&g, g.generators())?;
        let words = stationarity_check(&Reference::Dual(dual), &model, 2, 0.0)?;
        checks.push(check(
            name,
            magic && circulant && delta && words.stationary,
            json!({
                "magic": magic,
                "circulant": circulant,
                "trace_is_delta": delta,
                "word_stationarity": words.stationary,
                "words_checked": words.words_checked,
            }),
        ));
    }
    Ok(CriterionOutcome::new(5, TITLES[4], checks, start))
}

/// L = ⟨diag(ζ_5, ζ_5⁻¹)⟩ ≅ Z_5 with σ = inversion and K = 2.
pub fn d5_cyclic_data(cap: usize) -> Result<CyclicModelData<Cyc>> {
    let l = capped(catalog::cyclic(5), cap)?;
    let g = l.generators()[0].clone();
    let v = ExactMatrix::diag(&[Cyc::root_of_unity(5, 1), Cyc::root_of_unity(5, -1)]);
    CyclicModelData::new(&l, &[v], &[g.inverse()], 2, 0.0)
}

/// Cyclic models with K = 1, 2, 3.
pub fn cyclic_examples(cap: usize) -> Result<Vec<(&'static str, CyclicModelData<Cyc>)>> {
    let z3 = capped(catalog::cyclic(3), cap)?;
    let k1 = CyclicModelData::new(
        &z3,
        &[ExactMatrix::diag(&[Cyc::root_of_unity(3, 1), Cyc::root_of_unity(3, 2)])],
        &[z3.generators()[0].clone()],
        1,
        0.0,
    )?;
    let z7 = capped(catalog::cyclic(7), cap)?;
    let g = z7.generators()[0].clone();
    let k3 = CyclicModelData::new(
        &z7,
        &[ExactMatrix::diag(&[Cyc::root_of_unity(7, 1), Cyc::root_of_unity(7, 2)])],
        &[g.compose(&g)],
        3,
        0.0,
    )?;
    Ok(vec![("K = 1 over Z_3", k1), ("K = 2 over Z_5", d5_cyclic_data(cap)?), ("K = 3 over Z_7", k3)])
}

pub fn criterion_6(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let data = d5_cyclic_data(cfg.cap)?;
    let model = build_cyclic_model(&data)?;
    let half = verify_half_liberation(&model, 0.0);
    let semi = semidirect_stationarity(data.group(), data.sigma(), 2)?;
    let checks = vec![
        check(
            "half-liberation relations",
            half.pass && half.unitary && half.diagonal_products && half.commuting && half.abc_cba == Some(true),
            serde_json::to_value(&half).expect("json"),
        ),
        check(
            "semidirect stationarity on 10 basis elements",
            semi.stationary && semi.basis_size == 10,
            json!({ "homomorphism": semi.homomorphism, "unital": semi.unital, "basis_size": semi.basis_size, "first_failure": semi.first_failure }),
        ),
    ];
    Ok(CriterionOutcome::new(6, TITLES[5], checks, start))
}

/// diag(ζ_K^a if a ∈ S else 1) for the subset S encoded by `mask`.
pub fn diagonal_pattern(k: usize, mask: u32) -> ExactMatrix {
    let d: Vec<Cyc> =
        (0..k).map(|a| if mask & (1 << a) != 0 { Cyc::root_of_unity(k, a as i64) } else { Cyc::one() }).collect();
    ExactMatrix::diag(&d)
}

/// Haar-random unitary from Gram–Schmidt on a complex Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> FloatMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v: Vec<Complex64> =
            (0..n).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
        for u in &cols {
            let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        cols.push(v);
    }
    Matrix::from_fn(n, n, |r, c| cols[c][r])
}

/// V·diag(ζ^{e_1}, …, ζ^{e_K})·V*: half the draws use a permutation of all
/// K roots, the rest independent uniform exponents.
pub fn random_conjugate(k: usize, rng: &mut ChaCha8Rng) -> FloatMatrix {
    let exps: Vec<usize> = if rng.random_bool(0.5) {
        let mut e: Vec<usize> = (0..k).collect();
        for i in (1..k).rev() {
            e.swap(i, rng.random_range(0..=i));
        }
        e
    } else {
        (0..k).map(|_| rng.random_range(0..k)).collect()
    };
    let d = Matrix::diag(&exps.iter().map(|&a| Complex64::root_of_unity(k, a as i64)).collect::<Vec<_>>());
    let v = random_unitary(k, rng);
    &(&v * &d) * &v.adjoint()
}

pub fn criterion_7(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let mut disagreements = Vec::new();
    let mut patterns = 0;
    for k in 1..=6usize {
        for mask in 0..(1u32 << k) {
            let r = trace_vector_check(&diagonal_pattern(k, mask), k, 0.0)?;
            patterns += 1;
            if !r.agrees {
                disagreements.push(json!({ "k": k, "mask": mask }));
            }
        }
    }
    let mut random_disagreements = Vec::new();
    let mut uniform_count = Vec::new();
    for k in 2..=6usize {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(k as u64));
        let mut uniform = 0;
        for t in 0..RANDOM_CONJUGATES {
            let u = random_conjugate(k, &mut rng);
            let r = trace_vector_check(&u, k, RANDOM_CONJUGATE_TOL)?;
            uniform += usize::from(r.uniform);
            if !r.agrees {
                random_disagreements.push(json!({ "k": k, "sample": t }));
            }
        }
        uniform_count.push(json!({ "k": k, "uniform": uniform, "samples": RANDOM_CONJUGATES }));
    }
    let checks = vec![
        check(
            "all diagonal patterns, exact",
            disagreements.is_empty(),
            json!({ "patterns": patterns, "disagreements": disagreements }),
        ),
        check(
            "seeded random conjugates, float",
            random_disagreements.is_empty(),
            json!({ "tolerance": RANDOM_CONJUGATE_TOL, "per_k": uniform_count, "disagreements": random_disagreements }),
        ),
    ];
    Ok(CriterionOutcome::new(7, TITLES[6], checks, start))
}

pub fn criterion_8(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let transitive = [("Z_4", catalog::cyclic(4)), ("D_4", catalog::dihedral(4)), ("S_4", catalog::symmetric(4))];
    let j4 = Matrix::from_fn(4, 4, |_, _| Cyc::rational(rat(1, 4)));
    for (name, g) in transitive {
        let r = fixed_point_matrix_classical(&capped(g, cfg.cap)?);
        let exact_projection = &r.q * &r.q == r.q && r.q.adjoint() == r.q;
        checks.push(check(format!("{name} in S_4"), r.q == j4 && exact_projection && r.fixes_all_one, json!(r.q)));
    }
    let r = fixed_point_matrix_classical(&capped(catalog::klein_s6(), cfg.cap)?);
    let half = Matrix::from_fn(2, 2, |_, _| Cyc::rational(rat(1, 2)));
    let expected = ExactMatrix::block_diag(&[half.clone(), half.clone(), half]);
    let exact_projection = &r.q * &r.q == r.q && r.q.adjoint() == r.q;
    checks.push(check("Klein four-group in S_6", r.q == expected && exact_projection && r.matches_orbits, json!(r.q)));
    Ok(CriterionOutcome::new(8, TITLES[7], checks, start))
}

pub fn criterion_9(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (name, data) in cyclic_examples(cfg.cap)? {
        let model = build_cyclic_model(&data)?;
        let r = verify_k_symmetry(&model, 0.0);
        checks.push(check(name, r.pass && r.k == data.k(), json!(r)));
    }
    let z2 = capped(catalog::cyclic(2), cfg.cap)?;
    let dual = bichon_build(&[2], &regular_generator_images(&z2), 0.0)?;
    let r = verify_k_symmetry(&dual, 0.0);
    checks.push(check("block model of Z_2 has no K-symmetry", !r.pass, json!(r)));
    Ok(CriterionOutcome::new(9, TITLES[8], checks, start))
}

pub fn criterion_10(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let v = capped(catalog::abelian_product(&[2, 2]), cfg.cap)?;
    let s3 = capped(catalog::s3_transpositions(), cfg.cap)?;
    let sz = capped(catalog::s3_times_z2(), cfg.cap)?;
    let cv = uniform_check(&v, v.generators())?;
    let cs = uniform_check(&s3, s3.generators())?;
    let cz = uniform_check(&sz, sz.generators())?;
    let checks = vec![
        check("Z_2 x Z_2 is uniform", cv.uniform, json!(cv)),
        check("S_3 with two transpositions is uniform", cs.uniform, json!(cs)),
        check(
            "S_3 x Z_2 is not uniform, failing the symmetry condition",
            !cz.uniform && cz.failing_conditions.contains(&4),
            json!(cz),
        ),
    ];
    Ok(CriterionOutcome::new(10, TITLES[9], checks, start))
}

fn float_close(a: &Cyc, b: &Complex64, tol: f64) -> bool {
    (a.to_complex() - b).norm() <= tol
}

/// Re-runs the exact certifications in double precision and compares.
pub fn float_agreement(cfg: &RunConfig, tol: f64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    // classical quasi-flat models, and the fixed-point matrix of their state
    let mut ok = true;
    for (_, g, k) in criterion_3_groups() {
        let g = capped(g, cfg.cap)?;
        let fam = latin_family_search(&g, k)?.family().cloned().expect("family exists");
        let exact = family_model(g.elements(), &fam)?;
        let float = exact.to_float();
        let orbits = OrbitStructure::classical(&g);
        let reference = Reference::Classical(g.clone());
        ok &= verify_magic(&float, tol).pass;
        ok &= quasi_flat_check(&float, &orbits, tol)?.quasi_flat;
        ok &= stationarity_check(&reference, &float, 2, tol)?.stationary;
        let fe = fixed_point_matrix(&model_state(&exact, 1), &orbits, 0.0);
        let ff = fixed_point_matrix(&model_state(&float, 1), &orbits, tol);
        ok &= ff.is_projection && ff.matches_orbits;
        ok &= fe.q.entries().iter().zip(ff.q.entries()).all(|(a, b)| float_close(a, b, tol));
    }
    checks.push(check("classical models", ok, Value::Null));

    let model = collapsed_dihedral_model()?;
    let d4 = Reference::Classical(capped(catalog::dihedral(4), cfg.cap)?);
    let fc = stationarity_check(&d4, &model.to_float(), 2, tol)?;
    let ec = stationarity_check(&d4, &model, 2, 0.0)?;
    let same_word = fc.first_mismatch.as_ref().map(|m| &m.word) == ec.first_mismatch.as_ref().map(|m| &m.word);
    checks.push(check("collapsed dihedral mismatch", !fc.stationary && same_word, Value::Null));

    let mut ok = true;
    for (_, g) in criterion_5_groups() {
        let g = capped(g, cfg.cap)?;
        let gens = regular_generator_images(&g);
        let sizes: Vec<usize> = g.generators().iter().map(Perm::order).collect();
        let exact = bichon_build(&sizes, &gens, 0.0)?;
        let float = bichon_build(&sizes, &gens.iter().map(Matrix::to_float).collect::<Vec<_>>(), tol)?;
        ok &= verify_magic(&float, tol).pass && is_block_circulant(&float, &sizes, tol);
        for i in 0..exact.n() {
            for j in 0..exact.n() {
                ok &= exact.fiber(0, i, j).to_float().approx_eq(float.fiber(0, i, j), tol);
            }
        }
    }
    checks.push(check("block models", ok, Value::Null));

    let mut ok = true;
    for (_, data) in cyclic_examples(cfg.cap)? {
        let float = build_cyclic_model(&data)?.to_float();
        ok &= verify_half_liberation(&float, tol).pass && verify_k_symmetry(&float, tol).pass;
    }
    checks.push(check("cyclic models", ok, Value::Null));

    let mut ok = true;
    for k in 1..=6usize {
        for mask in 0..(1u32 << k) {
            let u = diagonal_pattern(k, mask);
            let e = trace_vector_check(&u, k, 0.0)?;
            let f = trace_vector_check(&u.to_float(), k, tol)?;
            ok &= e.uniform == f.uniform && e.multiplicities == f.multiplicities && f.agrees;
        }
    }
    checks.push(check("diagonal trace vectors", ok, Value::Null));

    let mut ok = true;
    for (gamma, lambda) in
        [(catalog::symmetric(3), catalog::cyclic_in(3, &[1, 2, 3])), (catalog::dihedral(4), catalog::cyclic(4))]
    {
        let data = FiniteData::new(capped(gamma, cfg.cap)?, capped(lambda, cfg.cap)?)?;
        let group = crate::thoma::VirtuallyAbelian::lattice(&data).clone();
        for chi in crate::group::abelian_dual(&group)? {
            for g in data.gamma().elements() {
                let m = crate::thoma::evaluate_at_character(&crate::thoma::induce(&data, g)?, &group, &chi)?;
                let fr = crate::thoma::frobenius_trace(&data, &chi, g)?;
                ok &= float_close(&fr, &m.to_float().trace(), tol);
            }
        }
    }
    checks.push(check("Frobenius traces", ok, Value::Null));
    Ok(checks)
}

/// Criteria 1–10 with timing stripped, as compact JSON.
fn deterministic_fingerprint(cfg: &RunConfig) -> Result<String> {
    let outcomes = run_criteria(cfg, 10)?;
    let mut v = serde_json::to_value(&outcomes).expect("json");
    strip_timing(&mut v);
    Ok(v.to_string())
}

pub fn criterion_11(cfg: &RunConfig) -> Result<CriterionOutcome> {
    let start = Instant::now();
    let first = deterministic_fingerprint(cfg)?;
    let second = deterministic_fingerprint(cfg)?;
    let tol = match cfg.mode {
        Mode::Float => cfg.tol,
        Mode::Exact => FLOAT_AGREEMENT_TOL,
    };
    let mut checks =
        vec![check("criteria 1-10 byte-identical across two runs", first == second, json!({ "bytes": first.len() }))];
    checks.extend(float_agreement(cfg, tol)?.into_iter().map(|mut c| {
        c.name = format!("float agreement: {}", c.name);
        c.detail = json!({ "tolerance": tol });
        c
    }));
    Ok(CriterionOutcome::new(11, TITLES[10], checks, start))
}

pub type CriterionFn = fn(&RunConfig) -> Result<CriterionOutcome>;

pub const CRITERIA: [CriterionFn; 11] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
];

fn run_criteria(cfg: &RunConfig, upto: usize) -> Result<Vec<CriterionOutcome>> {
    CRITERIA[..upto].iter().map(|f| f(cfg)).collect()
}

/// Runs every criterion in order. A construction error anywhere yields an
/// error report.
pub fn run_suite(cfg: &RunConfig) -> Report {
    let start = Instant::now();
    let report = match run_criteria(cfg, CRITERIA.len()) {
        Ok(outcomes) => {
            let pass = outcomes.iter().all(|o| o.pass);
            let witnesses = outcomes
                .iter()
                .flat_map(|o| {
                    o.failing_checks()
                        .into_iter()
                        .map(move |c| json!({ "criterion": o.id, "check": c.name, "detail": c.detail }))
                })
                .collect();
            let status = if pass { Status::Pass } else { Status::Fail };
            Report::with_status("suite", cfg, status, witnesses, serde_json::to_value(&outcomes).expect("json"))
        }
        Err(e) => Report::error("suite", cfg, &e),
    };
    report.timed(start.elapsed().as_secs_f64() * 1e3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..6 {
            assert!(random_unitary(n, &mut rng).is_unitary(1e-10));
        }
        let u = random_conjugate(4, &mut rng);
        assert!(u.finite_order_powers(4, 1e-9).is_ok());
    }

    #[test]
    fn diagonal_patterns() {
        // full set and the set missing 0 both give every root once
        assert!(trace_vector_check(&diagonal_pattern(3, 0b111), 3, 0.0).unwrap().uniform);
        assert!(trace_vector_check(&diagonal_pattern(3, 0b110), 3, 0.0).unwrap().uniform);
        assert!(!trace_vector_check(&diagonal_pattern(3, 0b010), 3, 0.0).unwrap().uniform);
    }

    #[test]
    fn cap_error_surfaces() {
        let cfg = RunConfig { cap: 1, ..RunConfig::default() };
        let r = run_suite(&cfg);
        assert_eq!(r.status, Status::Error);
        assert_eq!(r.status.exit_code(), 2);
    }
}
