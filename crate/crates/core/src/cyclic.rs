//! Cyclic models u_ij ↦ τ[v_ij^{(1)}, …, v_ij^{(K)}] built from a finite
//! L ⊂ U_N and an order-K automorphism σ, with v^{(r)}(g) = v(σ^r(g)).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Cyc, Matrix, Rational, Scalar};
use crate::group::{extend_automorphism, AutoMap, Perm, PermGroup};
use crate::magic::MagicModel;
use crate::rep::Representation;

/// K×K matrix with x_r at (r, r−1 mod K), 0-based: row 0 carries x_1 in the
/// last column.
pub fn cycle_fill<S: Scalar>(xs: &[S]) -> Matrix<S> {
    let k = xs.len();
    Matrix::from_fn(k, k, |r, c| if c == (r + k - 1) % k { xs[r].clone() } else { S::zero() })
}

/// Block version of [`cycle_fill`] for equal-size square blocks.
pub fn cycle_fill_blocks<S: Scalar>(xs: &[Matrix<S>]) -> Result<Matrix<S>> {
    let k = xs.len();
    let d = xs.first().map_or(0, Matrix::rows);
    if xs.iter().any(|x| x.rows() != d || x.cols() != d) {
        return Err(Error::ShapeMismatch("cycle blocks must be square of equal size".into()));
    }
    Ok(Matrix::from_fn(k * d, k * d, |r, c| {
        let (br, bc) = (r / d, c / d);
        if bc == (br + k - 1) % k {
            xs[br][(r % d, c % d)].clone()
        } else {
            S::zero()
        }
    }))
}

/// L with a unitary representation v and an automorphism σ of order dividing K.
#[derive(Clone, Debug)]
pub struct CyclicModelData<S> {
    v: Representation<S>,
    sigma: AutoMap,
    k: usize,
}

impl<S: Scalar> CyclicModelData<S> {
    /// `generator_images` are v of the generators of `l`; `sigma_images` are
    /// the images under σ of the same generators.
    pub fn new(
        l: &PermGroup,
        generator_images: &[Matrix<S>],
        sigma_images: &[Perm],
        k: usize,
        tol: f64,
    ) -> Result<Self> {
        let v = Representation::from_generators(l, generator_images, tol)?;
        let sigma = extend_automorphism(l, sigma_images).map_err(|e| Error::InvalidAutomorphism(e.to_string()))?;
        Self::from_parts(v, sigma, k)
    }

    pub fn from_parts(v: Representation<S>, sigma: AutoMap, k: usize) -> Result<Self> {
        if k == 0 || !sigma.power(k, v.group()).is_identity() {
            return Err(Error::InvalidAutomorphism(format!("σ^{k} is not the identity")));
        }
        Ok(CyclicModelData { v, sigma, k })
    }

    pub fn group(&self) -> &PermGroup {
        self.v.group()
    }

    pub fn representation(&self) -> &Representation<S> {
        &self.v
    }

    pub fn sigma(&self) -> &AutoMap {
        &self.sigma
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// The cyclic model over X = L with uniform weights; the fiber of u_ij at g
/// is cycle_fill(v_ij(σ(g)), …, v_ij(σ^K(g))).
pub fn build_cyclic_model<S: Scalar>(data: &CyclicModelData<S>) -> Result<MagicModel<S>> {
    let l = data.group();
    let n = data.v.dim();
    let k = data.k;
    let powers: Vec<AutoMap> = (1..=k).map(|r| data.sigma.power(r, l)).collect();
    let weight = Rational::new(1.into(), (l.order() as i64).into());
    let points = (0..l.order())
        .map(|g| {
            let twisted: Vec<&Matrix<S>> = powers.iter().map(|p| data.v.image(p.apply(g))).collect();
            (0..n * n)
                .map(|e| {
                    let xs: Vec<S> = twisted.iter().map(|m| m[(e / n, e % n)].clone()).collect();
                    cycle_fill(&xs)
                })
                .collect()
        })
        .collect();
    MagicModel::new(n, k, vec![weight; l.order()], points)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HalfLiberationReport {
    pub pass: bool,
    /// U = (u_ij) and Ū = (u_ij^*) unitary in every fiber.
    pub unitary: bool,
    /// All u_ij u_kl^* and u_ij^* u_kl diagonal.
    pub diagonal_products: bool,
    /// The family {ab^*, a^*b} commutes pairwise.
    pub commuting: bool,
    pub self_adjoint_entries: bool,
    /// abc = cba on all triples, checked when every entry is self-adjoint.
    pub abc_cba: Option<bool>,
    /// ab = ba for K = 1, ab·cd = cd·ab over entries and adjoints for K = 2.
    pub low_k_relations: Option<bool>,
    pub witnesses: Vec<String>,
}

fn assemble<S: Scalar>(model: &MagicModel<S>, x: usize, adjoint: bool) -> Matrix<S> {
    let (n, k) = (model.n(), model.dim());
    Matrix::from_fn(n * k, n * k, |r, c| {
        let m = model.fiber(x, r / k, c / k);
        if adjoint {
            m[(c % k, r % k)].conj()
        } else {
            m[(r % k, c % k)].clone()
        }
    })
}

/// Checks the half-liberation relations fiber by fiber.
pub fn verify_half_liberation<S: Scalar>(model: &MagicModel<S>, tol: f64) -> HalfLiberationReport {
    let n = model.n();
    let mut witnesses = Vec::new();
    let (mut unitary, mut diagonal, mut commuting, mut abc) = (true, true, true, true);
    let mut low_k = true;
    let self_adjoint = (0..model.point_count()).all(|x| model.point_entries(x).iter().all(|m| m.is_self_adjoint(tol)));
    for x in 0..model.point_count() {
        let entries = model.point_entries(x);
        let adjoints: Vec<Matrix<S>> = entries.iter().map(Matrix::adjoint).collect();
        if !assemble(model, x, false).is_unitary(tol) || !assemble(model, x, true).is_unitary(tol) {
            unitary = false;
            witnesses.push(format!("point {x}: U or its entrywise adjoint is not unitary"));
        }
        let mut family = Vec::with_capacity(2 * entries.len() * entries.len());
        for (a, a_star) in entries.iter().zip(&adjoints) {
            for (b, b_star) in entries.iter().zip(&adjoints) {
                family.push(a * b_star);
                family.push(a_star * b);
            }
        }
        if let Some(pos) = family.iter().position(|m| !m.is_diagonal(tol)) {
            diagonal = false;
            let (a, b) = (pos / 2 / entries.len(), pos / 2 % entries.len());
            witnesses.push(format!(
                "point {x}: product of u({},{}) and u({},{}) is not diagonal",
                a / n + 1,
                a % n + 1,
                b / n + 1,
                b % n + 1
            ));
        }
        'outer: for (i, p) in family.iter().enumerate() {
            for q in &family[i + 1..] {
                if !p.commutes_with(q, tol) {
                    commuting = false;
                    witnesses.push(format!("point {x}: the family ab*, a*b does not commute"));
                    break 'outer;
                }
            }
        }
        if self_adjoint {
            'abc: for a in entries {
                for b in entries {
                    let ab = a * b;
                    for c in entries {
                        if !(&ab * c).approx_eq(&(&(c * b) * a), tol) {
                            abc = false;
                            witnesses.push(format!("point {x}: abc ≠ cba"));
                            break 'abc;
                        }
                    }
                }
            }
        }
        match model.dim() {
            1 => {
                let all: Vec<&Matrix<S>> = entries.iter().chain(&adjoints).collect();
                if !all.iter().all(|a| all.iter().all(|b| a.commutes_with(b, tol))) {
                    low_k = false;
                    witnesses.push(format!("point {x}: entries do not commute"));
                }
            }
            2 => {
                let all: Vec<&Matrix<S>> = entries.iter().chain(&adjoints).collect();
                let pairs: Vec<Matrix<S>> = all.iter().flat_map(|a| all.iter().map(move |b| *a * *b)).collect();
                if !pairs.iter().all(|p| pairs.iter().all(|q| p.commutes_with(q, tol))) {
                    low_k = false;
                    witnesses.push(format!("point {x}: products ab and cd do not commute"));
                }
            }
            _ => {}
        }
    }
    let abc_cba = self_adjoint.then_some(abc);
    let low_k_relations = (model.dim() <= 2).then_some(low_k);
    HalfLiberationReport {
        pass: unitary && diagonal && commuting && abc_cba != Some(false) && low_k_relations != Some(false),
        unitary,
        diagonal_products: diagonal,
        commuting,
        self_adjoint_entries: self_adjoint,
        abc_cba,
        low_k_relations,
        witnesses,
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BasisValue {
    pub element: String,
    pub model: String,
    pub haar: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SemidirectCertificate {
    pub stationary: bool,
    pub homomorphism: bool,
    pub unital: bool,
    pub basis_size: usize,
    pub values: Vec<BasisValue>,
    pub first_failure: Option<String>,
}

/// ρ(f) as one K×K matrix per point of L.
type PointMatrices = Vec<Matrix<Cyc>>;

/// ρ(δ_g ⊗ τ^i): at point h, entry (r, c) is δ_g(σ^{r+1}(h)) when c ≡ r − i.
fn rho(l: &PermGroup, powers: &[AutoMap], k: usize, g: usize, i: usize) -> PointMatrices {
    (0..l.order())
        .map(|h| {
            Matrix::from_fn(k, k, |r, c| {
                if (c + i) % k == r % k && powers[r].apply(h) == g {
                    Cyc::one()
                } else {
                    Cyc::zero()
                }
            })
        })
        .collect()
}

/// Certifies that ρ: δ_g ⊗ τ^i ↦ τ^i[δ_g^{(1)}, …, δ_g^{(K)}] is a unital
/// homomorphism from the crossed product C(L) ⋊ Z_K, with multiplication
/// (δ_g ⊗ τ^i)(δ_h ⊗ τ^j) = δ_{g,σ^i(h)} δ_g ⊗ τ^{i+j}, and that
/// (tr ⊗ ∫_L)ρ equals the Haar functional δ_g ⊗ τ^i ↦ δ_{i,0}/|L|.
pub fn semidirect_stationarity(l: &PermGroup, sigma: &AutoMap, k: usize) -> Result<SemidirectCertificate> {
    if k == 0 || !sigma.power(k, l).is_identity() {
        return Err(Error::InvalidAutomorphism(format!("σ^{k} is not the identity")));
    }
    let m = l.order();
    // powers[r] = σ^{r+1}
    let powers: Vec<AutoMap> = (1..=k).map(|r| sigma.power(r, l)).collect();
    let sigma_pow: Vec<AutoMap> = (0..k).map(|i| sigma.power(i, l)).collect();
    let basis: Vec<(usize, usize)> = (0..m).flat_map(|g| (0..k).map(move |i| (g, i))).collect();
    let images: Vec<PointMatrices> = basis.iter().map(|&(g, i)| rho(l, &powers, k, g, i)).collect();
    let zero: PointMatrices = vec![Matrix::zeros(k, k); m];
    let describe = |g: usize, i: usize| format!("δ[{}]⊗τ^{i}", l.element(g));
    let mut first_failure = None;

    let mut homomorphism = true;
    'pairs: for (a, &(g, i)) in basis.iter().enumerate() {
        for (b, &(h, j)) in basis.iter().enumerate() {
            let lhs: PointMatrices = images[a].iter().zip(&images[b]).map(|(x, y)| x * y).collect();
            let rhs = if g == sigma_pow[i].apply(h) { &images[g * k + (i + j) % k] } else { &zero };
            if &lhs != rhs {
                homomorphism = false;
                first_failure = Some(format!("ρ not multiplicative on {} · {}", describe(g, i), describe(h, j)));
                break 'pairs;
            }
        }
    }

    let unit = (0..m).fold(zero.clone(), |acc, g| {
        acc.iter().zip(&images[g * k]).map(|(x, y)| x.try_add(y).expect("same shape")).collect()
    });
    let unital = unit.iter().all(|u| *u == Matrix::identity(k));

    let inv_m = Rational::new(1.into(), (m as i64).into());
    let mut values = Vec::with_capacity(basis.len());
    let mut stationary = true;
    for (a, &(g, i)) in basis.iter().enumerate() {
        let model = images[a].iter().fold(Cyc::zero(), |acc, x| &acc + &x.ntrace()).scale(&inv_m);
        let haar = if i == 0 { Cyc::rational(inv_m.clone()) } else { Cyc::zero() };
        if model != haar {
            stationary = false;
            first_failure.get_or_insert_with(|| format!("(tr⊗∫)ρ differs from Haar on {}", describe(g, i)));
        }
        values.push(BasisValue { element: describe(g, i), model: model.to_string(), haar: haar.to_string() });
    }
    Ok(SemidirectCertificate {
        stationary: stationary && homomorphism && unital,
        homomorphism,
        unital,
        basis_size: basis.len(),
        values,
        first_failure,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KSymmetryReport {
    pub pass: bool,
    pub k: usize,
    /// (point, i, j), 1-based entry indices.
    pub witnesses: Vec<(usize, usize, usize)>,
}

/// Checks D P D⁻¹ = ζ_K P for D = diag(1, ζ_K, …, ζ_K^{K−1}) on every fiber
/// entry, K being the model dimension.
pub fn verify_k_symmetry<S: Scalar>(model: &MagicModel<S>, tol: f64) -> KSymmetryReport {
    let k = model.dim();
    let n = model.n();
    let d = Matrix::diag(&(0..k).map(|a| S::root_of_unity(k, a as i64)).collect::<Vec<_>>());
    let d_inv = d.adjoint();
    let zeta = S::root_of_unity(k, 1);
    let mut witnesses = Vec::new();
    for x in 0..model.point_count() {
        for e in 0..n * n {
            let p = &model.point_entries(x)[e];
            if !(&(&d * p) * &d_inv).approx_eq(&p.scale(&zeta), tol) {
                witnesses.push((x, e / n + 1, e % n + 1));
            }
        }
    }
    KSymmetryReport { pass: witnesses.is_empty(), k, witnesses }
}
