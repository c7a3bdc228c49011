//! Latin families, classical quasi-flat models, uniform presentations, and
//! the trace-vector criterion for finite-order unitaries.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{Cyc, Matrix, Rational, Scalar};
use crate::group::{abelianization, extend_automorphism, Perm, PermGroup};
use crate::magic::{
    bichon_build, quasi_flat_check, stationarity_check, verify_magic, MagicModel, MagicReport, OrbitStructure,
    QuasiFlatReport, Reference, StationarityCertificate,
};

/// σ_1, …, σ_K with σ_1(m), …, σ_K(m) pairwise distinct for every point m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinFamily {
    pub members: Vec<Perm>,
}

impl LatinFamily {
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn degree(&self) -> usize {
        self.members.first().map_or(0, Perm::degree)
    }

    pub fn is_valid(&self) -> bool {
        let n = self.degree();
        self.members.iter().all(|s| s.degree() == n)
            && (0..n).all(|m| {
                let mut seen: Vec<usize> = self.members.iter().map(|s| s.apply0(m)).collect();
                seen.sort_unstable();
                seen.windows(2).all(|w| w[0] != w[1])
            })
    }

    /// Valid, and every member lies in `g` with the orbits of size K.
    pub fn validate_for(&self, g: &PermGroup) -> Result<()> {
        if self.members.is_empty() || !self.is_valid() {
            return Err(Error::InvalidFamily("values at some point repeat".into()));
        }
        if let Some(s) = self.members.iter().find(|s| !g.contains(s)) {
            return Err(Error::InvalidFamily(format!("{s} is not in the group")));
        }
        let orbits = OrbitStructure::classical(g);
        if orbits.common_size != Some(self.k()) {
            return Err(Error::InvalidFamily(format!("family size {} does not match the orbit size", self.k())));
        }
        Ok(())
    }

    /// The family translated on the left by g.
    pub fn translate(&self, g: &Perm) -> LatinFamily {
        LatinFamily { members: self.members.iter().map(|s| g.compose(s)).collect() }
    }
}

/// N×N array over {∗, 1..K}: cell (i, j) holds k when σ_k(j) = i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseLatinSquare {
    n: usize,
    k: usize,
    // row-major, 1-based symbols
    cells: Vec<Option<usize>>,
}

impl SparseLatinSquare {
    pub fn from_family(fam: &LatinFamily) -> Result<Self> {
        if !fam.is_valid() {
            return Err(Error::InvalidFamily("values at some point repeat".into()));
        }
        let n = fam.degree();
        let mut cells = vec![None; n * n];
        for (k, s) in fam.members.iter().enumerate() {
            for j in 0..n {
                cells[s.apply0(j) * n + j] = Some(k + 1);
            }
        }
        Ok(SparseLatinSquare { n, k: fam.k(), cells })
    }

    pub fn from_cells(n: usize, k: usize, cells: Vec<Option<usize>>) -> Result<Self> {
        if cells.len() != n * n || cells.iter().flatten().any(|&s| s == 0 || s > k) {
            return Err(Error::InvalidFamily("malformed sparse Latin square".into()));
        }
        let square = SparseLatinSquare { n, k, cells };
        square.to_family()?;
        Ok(square)
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<usize> {
        self.cells[i * self.n + j]
    }

    /// σ_k(j) = the row holding k in column j.
    pub fn to_family(&self) -> Result<LatinFamily> {
        let n = self.n;
        let mut members = Vec::with_capacity(self.k);
        for k in 1..=self.k {
            let mut images = Vec::with_capacity(n);
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&i| self.cell(i, j) == Some(k)).collect();
                if rows.len() != 1 {
                    return Err(Error::InvalidFamily(format!(
                        "symbol {k} occurs {} times in column {}",
                        rows.len(),
                        j + 1
                    )));
                }
                images.push(rows[0] + 1);
            }
            members.push(Perm::from_images(&images).map_err(|e| Error::InvalidFamily(e.to_string()))?);
        }
        Ok(LatinFamily { members })
    }

    /// Rows with `*` for empty cells.
    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.cell(i, j).map_or("*".to_string(), |k| k.to_string())).collect())
            .collect()
    }
}

impl Serialize for SparseLatinSquare {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.rows().serialize(s)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LatinSearchResult {
    Found {
        family: LatinFamily,
        square: SparseLatinSquare,
        nodes_explored: u64,
    },
    /// Every increasing sequence starting at the identity was examined.
    NoFamily {
        exhaustive: bool,
        nodes_explored: u64,
    },
}

impl LatinSearchResult {
    pub fn family(&self) -> Option<&LatinFamily> {
        match self {
            LatinSearchResult::Found { family, .. } => Some(family),
            LatinSearchResult::NoFamily { .. } => None,
        }
    }

    pub fn nodes_explored(&self) -> u64 {
        match self {
            LatinSearchResult::Found { nodes_explored, .. } | LatinSearchResult::NoFamily { nodes_explored, .. } => {
                *nodes_explored
            }
        }
    }
}

/// Searches for the lexicographically first family σ_1 = e < σ_2 < … < σ_K
/// (by element index) with pointwise distinct values.
///
/// Two elements can coexist in a family exactly when they disagree at every
/// point, so this is a K-clique search in that compatibility graph. The
/// first-level branches (choice of σ_2) run in parallel; each explores until
/// its first solution, and the lowest successful branch wins, so both the
/// family and the node count are independent of scheduling.
pub fn latin_family_search(g: &PermGroup, k: usize) -> Result<LatinSearchResult> {
    let orbits = OrbitStructure::classical(g);
    if !orbits.quasi_transitive || orbits.common_size != Some(k) {
        return Err(Error::NotQuasiTransitive);
    }
    let els = g.elements();
    let n = g.degree();
    let compatible = |a: usize, b: usize| (0..n).all(|m| els[a].apply0(m) != els[b].apply0(m));
    if k == 1 {
        let family = LatinFamily { members: vec![els[0].clone()] };
        let square = SparseLatinSquare::from_family(&family)?;
        return Ok(LatinSearchResult::Found { family, square, nodes_explored: 1 });
    }
    // candidates for σ_2.. are the derangements
    let cands: Vec<usize> = (1..els.len()).filter(|&a| compatible(0, a)).collect();

    fn extend(
        chosen: &mut Vec<usize>,
        pool: &[usize],
        k: usize,
        compatible: &dyn Fn(usize, usize) -> bool,
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        if chosen.len() == k {
            return true;
        }
        for (t, &c) in pool.iter().enumerate() {
            if pool.len() - t < k - chosen.len() {
                break;
            }
            chosen.push(c);
            let next: Vec<usize> = pool[t + 1..].iter().copied().filter(|&d| compatible(c, d)).collect();
            if extend(chosen, &next, k, compatible, nodes) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    let branches: Vec<(u64, Option<Vec<usize>>)> = (0..cands.len())
        .into_par_iter()
        .map(|t| {
            let first = cands[t];
            let pool: Vec<usize> = cands[t + 1..].iter().copied().filter(|&d| compatible(first, d)).collect();
            let mut chosen = vec![0, first];
            let mut nodes = 0;
            let found = extend(&mut chosen, &pool, k, &compatible, &mut nodes);
            (nodes, found.then_some(chosen))
        })
        .collect();

    // root node plus each branch up to and including the winning one
    let winner = branches.iter().position(|(_, f)| f.is_some());
    let upto = winner.map_or(branches.len(), |w| w + 1);
    let nodes_explored = 1 + branches[..upto].iter().map(|(n, _)| n).sum::<u64>();
    Ok(match winner {
        Some(w) => {
            let idx = branches[w].1.as_ref().expect("winner has a family");
            let family = LatinFamily { members: idx.iter().map(|&i| els[i].clone()).collect() };
            let square = SparseLatinSquare::from_family(&family)?;
            LatinSearchResult::Found { family, square, nodes_explored }
        }
        None => LatinSearchResult::NoFamily { exhaustive: true, nodes_explored },
    })
}

/// Fixed-point-free elements of G, in enumeration order.
pub fn derangement_scan(g: &PermGroup) -> Vec<Perm> {
    g.elements().iter().filter(|s| s.is_derangement()).cloned().collect()
}

/// The model over the given points (uniform weights): at point x the entry
/// P_ij is E_kk for the unique k with σ_k(x(j)) = i, and 0 otherwise.
pub fn family_model(points: &[Perm], fam: &LatinFamily) -> Result<MagicModel<Cyc>> {
    if !fam.is_valid() || fam.members.is_empty() {
        return Err(Error::InvalidFamily("values at some point repeat".into()));
    }
    let n = fam.degree();
    let k = fam.k();
    let weight = Rational::new(1.into(), (points.len() as i64).into());
    let tables = points
        .iter()
        .map(|x| {
            let mut entries = vec![Matrix::zeros(k, k); n * n];
            for j in 0..n {
                for (slot, s) in fam.members.iter().enumerate() {
                    let i = s.apply0(x.apply0(j));
                    entries[i * n + j] = Matrix::unit(k, slot, slot);
                }
            }
            entries
        })
        .collect();
    MagicModel::new(n, k, vec![weight; points.len()], tables)
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifiedModel {
    #[serde(skip)]
    pub model: MagicModel<Cyc>,
    pub magic: MagicReport,
    pub quasi_flat: QuasiFlatReport,
    pub stationarity: StationarityCertificate,
}

impl CertifiedModel {
    pub fn all_pass(&self) -> bool {
        self.magic.pass && self.quasi_flat.quasi_flat && self.stationarity.stationary
    }
}

/// The classical quasi-flat model over X = G, with its three certificates.
pub fn classical_model_from_family(g: &PermGroup, fam: &LatinFamily, max_len: usize) -> Result<CertifiedModel> {
    fam.validate_for(g)?;
    let orbits = OrbitStructure::classical(g);
    let model = family_model(g.elements(), fam)?.with_orbits(orbits.clone());
    let magic = verify_magic(&model, 0.0);
    let quasi_flat = quasi_flat_check(&model, &orbits, 0.0)?;
    let stationarity = stationarity_check(&Reference::Classical(g.clone()), &model, max_len, 0.0)?;
    Ok(CertifiedModel { model, magic, quasi_flat, stationarity })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct UniformCertificate {
    pub uniform: bool,
    /// Numbers of the failing conditions among 1–4.
    pub failing_conditions: Vec<u8>,
    pub generation: bool,
    pub common_order: Option<usize>,
    pub orders: Vec<usize>,
    pub abelianization: Vec<u64>,
    pub abelian_surjection: bool,
    /// 1-based generator pairs whose swap does not extend to an automorphism.
    pub failing_swaps: Vec<(usize, usize)>,
}

/// Conditions: (1) the generators generate Γ; (2) they share an order K;
/// (3) g_i ↦ e_i defines a surjection onto Z_K^M; (4) every transposition
/// of the generators extends to an automorphism of Γ.
pub fn uniform_check(gamma: &PermGroup, generators: &[Perm]) -> Result<UniformCertificate> {
    let sub = PermGroup::generated_by(gamma.degree(), generators)?;
    let generation = sub.order() == gamma.order() && sub.is_subgroup_of(gamma);
    let orders: Vec<usize> = generators.iter().map(Perm::order).collect();
    let common_order = (!orders.is_empty() && orders.iter().all(|&o| o == orders[0])).then(|| orders[0]);
    let ab = abelianization(&sub);
    let abelian_surjection = common_order.is_some_and(|k| ab.surjects_onto_coordinates(k as u64));
    let mut failing_swaps = Vec::new();
    for a in 0..generators.len() {
        for b in a + 1..generators.len() {
            let mut images = generators.to_vec();
            images.swap(a, b);
            if extend_automorphism(&sub, &images).is_err() {
                failing_swaps.push((a + 1, b + 1));
            }
        }
    }
    let mut failing_conditions = Vec::new();
    for (c, ok) in
        [(1, generation), (2, common_order.is_some()), (3, abelian_surjection), (4, failing_swaps.is_empty())]
    {
        if !ok {
            failing_conditions.push(c);
        }
    }
    Ok(UniformCertificate {
        uniform: failing_conditions.is_empty(),
        failing_conditions,
        generation,
        common_order,
        orders,
        abelianization: ab.invariant_factors,
        abelian_surjection,
        failing_swaps,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TraceVectorReport {
    pub trace_vector: Vec<Value>,
    pub uniform: bool,
    pub multiplicities: Vec<usize>,
    /// The trace criterion and the multiplicity criterion gave the same answer.
    pub agrees: bool,
}

/// T = (Tr U^a)_{a<K} equals (K, 0, …, 0), cross-checked against the
/// eigenvalue multiplicities all being one.
pub fn trace_vector_check<S: Scalar>(u: &Matrix<S>, k: usize, tol: f64) -> Result<TraceVectorReport> {
    let powers = u.finite_order_powers(k, tol)?;
    let traces: Vec<S> = powers.iter().map(Matrix::trace).collect();
    let target =
        |a: usize| if a == 0 { S::from_rational(&Rational::from_integer((k as i64).into())) } else { S::zero() };
    let uniform = traces.iter().enumerate().all(|(a, t)| t.approx_eq(&target(a), tol * k as f64));
    let multiplicities = u.spectral_multiplicities(k, tol)?;
    let flat = multiplicities.iter().all(|&m| m == 1);
    Ok(TraceVectorReport {
        trace_vector: traces.iter().map(Scalar::to_json).collect(),
        uniform,
        agrees: uniform == flat,
        multiplicities,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DualFlatCertificate {
    pub pass: bool,
    /// (generator, point) pairs failing the trace criterion, 1-based generator.
    pub witnesses: Vec<(usize, usize)>,
    /// Quasi-flatness of the block model built from each fiber.
    pub block_model_quasi_flat: bool,
    pub agrees: bool,
}

/// Every U_i(x) must have uniformly distributed eigenvalues; compared with
/// quasi-flatness of the block magic model built from each fiber.
pub fn quasiflat_dual_check<S: Scalar>(fibers: &[Vec<Matrix<S>>], k: usize, tol: f64) -> Result<DualFlatCertificate> {
    let mut witnesses = Vec::new();
    let mut agrees = true;
    let mut block_flat = true;
    for (x, gens) in fibers.iter().enumerate() {
        for (i, u) in gens.iter().enumerate() {
            let r = trace_vector_check(u, k, tol)?;
            agrees &= r.agrees;
            if !r.uniform {
                witnesses.push((i + 1, x));
            }
        }
        let model = bichon_build(&vec![k; gens.len()], gens, tol)?;
        let flat = quasi_flat_check(&model, &OrbitStructure::dual(&vec![k; gens.len()]), tol)
            .map(|r| r.quasi_flat)
            .unwrap_or(false);
        block_flat &= flat;
    }
    let pass = witnesses.is_empty();
    Ok(DualFlatCertificate {
        pass,
        witnesses,
        block_model_quasi_flat: block_flat,
        agrees: agrees && pass == block_flat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactMatrix;
    use crate::group::catalog;
    use crate::magic::{convolution_idempotency, model_state, words::haar_state_classical};
    use crate::rep::Representation;

    fn p(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn klein_s6_has_no_family() {
        let g = catalog::klein_s6();
        assert!(derangement_scan(&g).is_empty());
        match latin_family_search(&g, 2).unwrap() {
            LatinSearchResult::NoFamily { exhaustive, nodes_explored } => {
                assert!(exhaustive);
                assert_eq!(nodes_explored, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(latin_family_search(&g, 3).unwrap_err(), Error::NotQuasiTransitive);
    }

    #[test]
    fn klein_s4_family_is_whole_group() {
        let g = catalog::klein_s4();
        assert_eq!(derangement_scan(&g).len(), 3);
        let res = latin_family_search(&g, 4).unwrap();
        let fam = res.family().unwrap();
        let mut members = fam.members.clone();
        members.sort_by_key(|s| g.index_of(s));
        assert_eq!(members, g.elements().to_vec());
    }

    #[test]
    fn regular_cyclic_family_is_all_powers() {
        let g = catalog::cyclic(5);
        let fam = latin_family_search(&g, 5).unwrap().family().unwrap().clone();
        let r = &g.generators()[0];
        for s in &fam.members {
            assert!((0..5).any(|e| *s == (0..e).fold(Perm::identity(5), |acc, _| acc.compose(r))));
        }
        assert_eq!(fam.k(), 5);
    }

    #[test]
    fn search_finds_lexicographic_minimum() {
        // brute-force oracle over increasing index tuples
        let g = catalog::dihedral(4);
        let res = latin_family_search(&g, 4).unwrap();
        let got: Vec<usize> = res.family().unwrap().members.iter().map(|s| g.index_of(s).unwrap()).collect();
        let n = g.order();
        let mut best = None;
        'outer: for a in 1..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let fam = LatinFamily { members: [0, a, b, c].iter().map(|&i| g.element(i).clone()).collect() };
                    if fam.is_valid() {
                        best = Some(vec![0, a, b, c]);
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(Some(got), best);
    }

    #[test]
    fn square_round_trip() {
        let g = catalog::klein_s4();
        let fam = latin_family_search(&g, 4).unwrap().family().unwrap().clone();
        let sq = SparseLatinSquare::from_family(&fam).unwrap();
        assert_eq!(sq.to_family().unwrap(), fam);
        let z3 = catalog::abelian_product(&[3, 3]);
        assert!(latin_family_search(&z3, 3).unwrap().family().is_some());
        let fam = latin_family_search(&z3, 3).unwrap().family().unwrap().clone();
        let sq = SparseLatinSquare::from_family(&fam).unwrap();
        let cells: Vec<Option<usize>> = (0..36).map(|e| sq.cell(e / 6, e % 6)).collect();
        assert_eq!(SparseLatinSquare::from_cells(6, 3, cells).unwrap(), sq);
        assert!(SparseLatinSquare::from_cells(2, 1, vec![Some(1), Some(1), None, None]).is_err());
    }

    #[test]
    fn left_translation_invariance() {
        let g = catalog::dihedral(4);
        let els = g.elements();
        for a in 0..els.len() {
            for b in 0..els.len() {
                for c in 0..els.len() {
                    for d in 0..els.len() {
                        let fam = LatinFamily {
                            members: vec![els[a].clone(), els[b].clone(), els[c].clone(), els[d].clone()],
                        };
                        let valid = fam.is_valid();
                        for x in els.iter().step_by(3) {
                            assert_eq!(fam.translate(x).is_valid(), valid);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classical_models_certify() {
        for (g, k) in [(catalog::cyclic_in(3, &[1, 2, 3]), 3), (catalog::klein_s4(), 4), (catalog::dihedral(4), 4)] {
            let fam = latin_family_search(&g, k).unwrap().family().unwrap().clone();
            let cert = classical_model_from_family(&g, &fam, 2).unwrap();
            assert!(cert.all_pass(), "{cert:?}");
            let phi = model_state(&cert.model, 2);
            assert!(convolution_idempotency(&phi, 2, 0.0).idempotent);
        }
    }

    #[test]
    fn collapsed_dihedral_model_is_not_stationary() {
        let d4 = catalog::dihedral(4);
        let rot = catalog::rotations(4);
        let fam = LatinFamily { members: rot.elements().to_vec() };
        let model = family_model(&[Perm::identity(4)], &fam).unwrap();
        assert!(verify_magic(&model, 0.0).pass);
        let cert = stationarity_check(&Reference::Classical(d4.clone()), &model, 2, 0.0).unwrap();
        assert!(!cert.stationary);
        let phi = model_state(&model, 2);
        assert_eq!(phi.get(&[(1, 1), (2, 2)]), Some(&Cyc::rational(crate::exact::rat(1, 4))));
        let haar = haar_state_classical(&d4, 2);
        assert_eq!(haar.get(&[(1, 1), (2, 2)]), Some(&Cyc::rational(crate::exact::rat(1, 8))));
        // the collapsed state is the Haar state of the rotation subgroup
        assert_eq!(phi, haar_state_classical(&rot, 2));
    }

    #[test]
    fn invalid_families() {
        let g = catalog::klein_s4();
        let bad = LatinFamily { members: vec![Perm::identity(4), Perm::identity(4)] };
        assert!(matches!(classical_model_from_family(&g, &bad, 2), Err(Error::InvalidFamily(_))));
        let outside = LatinFamily { members: vec![Perm::identity(4), p(4, &[&[1, 2, 3, 4]])] };
        assert!(matches!(outside.validate_for(&g), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn uniform_examples() {
        let v = catalog::abelian_product(&[2, 2]);
        let c = uniform_check(&v, v.generators()).unwrap();
        assert!(c.uniform, "{c:?}");

        let z3sq = catalog::abelian_product(&[3, 3]);
        assert!(uniform_check(&z3sq, z3sq.generators()).unwrap().uniform);

        let s3 = catalog::s3_transpositions();
        let c = uniform_check(&s3, s3.generators()).unwrap();
        assert_eq!(c.common_order, Some(2));
        assert!(c.failing_swaps.is_empty());
        assert_eq!(c.abelianization, vec![2]);

        let sz = catalog::s3_times_z2();
        let c = uniform_check(&sz, sz.generators()).unwrap();
        assert!(!c.uniform);
        assert!(c.failing_conditions.contains(&4));
        assert!(c.failing_swaps.contains(&(1, 3)) && c.failing_swaps.contains(&(2, 3)));
        assert!(!c.failing_swaps.contains(&(1, 2)));

        let partial = uniform_check(&catalog::symmetric(4), &[p(4, &[&[1, 2]])]).unwrap();
        assert_eq!(partial.failing_conditions, vec![1]);
    }

    #[test]
    fn trace_vectors() {
        let d = ExactMatrix::diag(&[Cyc::one(), Cyc::integer(-1)]);
        let r = trace_vector_check(&d, 2, 0.0).unwrap();
        assert!(r.uniform && r.agrees);
        let r = trace_vector_check(&ExactMatrix::identity(2), 2, 0.0).unwrap();
        assert!(!r.uniform && r.agrees);
        assert_eq!(r.multiplicities, vec![2, 0]);
        for k in 2..=6 {
            let g = catalog::cyclic(k);
            let u = Representation::<Cyc>::regular(&g).image(g.generator_indices()[0]).clone();
            let r = trace_vector_check(&u, k, 0.0).unwrap();
            assert!(r.uniform && r.agrees);
        }
        assert_eq!(
            trace_vector_check(&ExactMatrix::diag(&[Cyc::root_of_unity(3, 1)]), 2, 0.0).unwrap_err(),
            Error::NotFiniteOrder { k: 2 }
        );
    }

    #[test]
    fn dual_flat_checks() {
        let z3 = catalog::cyclic(3);
        let u = Representation::<Cyc>::regular(&z3).image(z3.generator_indices()[0]).clone();
        let c = quasiflat_dual_check(&[vec![u.clone(), u.clone()]], 3, 0.0).unwrap();
        assert!(c.pass && c.block_model_quasi_flat && c.agrees);
        let c = quasiflat_dual_check(&[vec![u.clone()], vec![ExactMatrix::identity(3)]], 3, 0.0).unwrap();
        assert!(!c.pass && c.agrees);
        assert_eq!(c.witnesses, vec![(1, 1)]);
    }
}
