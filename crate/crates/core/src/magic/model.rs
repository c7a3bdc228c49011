use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::fnmatrix::validate_weights;
use crate::exact::{Cyc, FnMatrix, Matrix, Rational, Scalar};
use crate::group::{orbits_classical, PermGroup};

/// A matrix model u_ij ↦ P_ij(x) ∈ M_K over a finite weighted point set.
#[derive(Clone, Debug)]
pub struct MagicModel<S> {
    n: usize,
    dim: usize,
    weights: Vec<Rational>,
    // per point, the n² entries in row-major order
    points: Vec<Vec<Matrix<S>>>,
    orbits: Option<OrbitStructure>,
}

impl<S: Scalar> MagicModel<S> {
    pub fn new(n: usize, dim: usize, weights: Vec<Rational>, points: Vec<Vec<Matrix<S>>>) -> Result<Self> {
        validate_weights(&weights)?;
        if weights.len() != points.len() {
            return Err(Error::ShapeMismatch("one entry table per point required".into()));
        }
        for p in &points {
            if p.len() != n * n {
                return Err(Error::ShapeMismatch(format!("expected {} entries per point, found {}", n * n, p.len())));
            }
            if p.iter().any(|m| m.rows() != dim || m.cols() != dim) {
                return Err(Error::ShapeMismatch(format!("entries must be {dim}x{dim}")));
            }
        }
        Ok(MagicModel { n, dim, weights, points, orbits: None })
    }

    /// A model over a single point of weight 1.
    pub fn single(n: usize, dim: usize, entries: Vec<Matrix<S>>) -> Result<Self> {
        Self::new(n, dim, vec![Rational::from_integer(1.into())], vec![entries])
    }

    pub fn with_orbits(mut self, orbits: OrbitStructure) -> Self {
        self.orbits = Some(orbits);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn orbits(&self) -> Option<&OrbitStructure> {
        self.orbits.as_ref()
    }

    /// P_ij at point x, 0-based indices.
    pub fn fiber(&self, x: usize, i: usize, j: usize) -> &Matrix<S> {
        &self.points[x][i * self.n + j]
    }

    pub fn point_entries(&self, x: usize) -> &[Matrix<S>] {
        &self.points[x]
    }

    /// u_ij as a function on the point set, 0-based indices.
    pub fn entry(&self, i: usize, j: usize) -> FnMatrix<S> {
        let fibers = self.points.iter().map(|p| p[i * self.n + j].clone()).collect();
        FnMatrix::new(self.weights.clone(), fibers).expect("validated on construction")
    }

    pub fn map_entries(&self, mut f: impl FnMut(usize, usize, usize, &Matrix<S>) -> Matrix<S>) -> Self {
        let points = self
            .points
            .iter()
            .enumerate()
            .map(|(x, p)| p.iter().enumerate().map(|(e, m)| f(x, e / self.n, e % self.n, m)).collect())
            .collect();
        MagicModel { points, ..self.clone() }
    }

    pub fn to_float(&self) -> MagicModel<num_complex::Complex64> {
        MagicModel {
            n: self.n,
            dim: self.dim,
            weights: self.weights.clone(),
            points: self.points.iter().map(|p| p.iter().map(Matrix::to_float).collect()).collect(),
            orbits: self.orbits.clone(),
        }
    }
}

impl<S: Scalar> PartialEq for MagicModel<S> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.dim == other.dim
            && self.weights == other.weights
            && self.points == other.points
            && self.orbits == other.orbits
    }
}

#[derive(Serialize, Deserialize)]
struct PointRepr {
    #[serde(with = "crate::exact::rational::serde_rational")]
    weight: Rational,
    entries: Vec<Vec<Matrix<Cyc>>>,
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    n: usize,
    dim: usize,
    points: Vec<PointRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    orbits: Option<OrbitStructure>,
}

impl Serialize for MagicModel<Cyc> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        ModelRepr {
            n: self.n,
            dim: self.dim,
            points: self
                .weights
                .iter()
                .zip(&self.points)
                .map(|(w, p)| PointRepr { weight: w.clone(), entries: p.chunks(self.n).map(<[_]>::to_vec).collect() })
                .collect(),
            orbits: self.orbits.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MagicModel<Cyc> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ModelRepr::deserialize(d)?;
        let n = repr.n;
        let mut weights = Vec::new();
        let mut points = Vec::new();
        for p in repr.points {
            if p.entries.len() != n || p.entries.iter().any(|row| row.len() != n) {
                return Err(serde::de::Error::custom(format!("entries must be an {n}x{n} array of matrices")));
            }
            weights.push(p.weight);
            points.push(p.entries.into_iter().flatten().collect());
        }
        let model = MagicModel::new(n, repr.dim, weights, points).map_err(serde::de::Error::custom)?;
        Ok(match repr.orbits {
            Some(o) => model.with_orbits(o),
            None => model,
        })
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MagicViolation {
    NotProjection { point: usize, i: usize, j: usize },
    RowSum { point: usize, i: usize },
    ColumnSum { point: usize, j: usize },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MagicReport {
    pub pass: bool,
    pub violations: Vec<MagicViolation>,
}

/// Checks that every fiber is a magic unitary: projections with all row and
/// column sums equal to the identity. Indices in the report are 1-based.
pub fn verify_magic<S: Scalar>(model: &MagicModel<S>, tol: f64) -> MagicReport {
    let n = model.n();
    let id = Matrix::<S>::identity(model.dim());
    let mut violations = Vec::new();
    for x in 0..model.point_count() {
        for i in 0..n {
            for j in 0..n {
                if !model.fiber(x, i, j).is_projection(tol) {
                    violations.push(MagicViolation::NotProjection { point: x, i: i + 1, j: j + 1 });
                }
            }
        }
        let sum = |idx: &mut dyn Iterator<Item = (usize, usize)>| {
            idx.fold(Matrix::<S>::zeros(model.dim(), model.dim()), |acc, (i, j)| {
                acc.try_add(model.fiber(x, i, j)).expect("square entries")
            })
        };
        for i in 0..n {
            if !sum(&mut (0..n).map(|j| (i, j))).approx_eq(&id, tol) {
                violations.push(MagicViolation::RowSum { point: x, i: i + 1 });
            }
        }
        for j in 0..n {
            if !sum(&mut (0..n).map(|i| (i, j))).approx_eq(&id, tol) {
                violations.push(MagicViolation::ColumnSum { point: x, j: j + 1 });
            }
        }
    }
    MagicReport { pass: violations.is_empty(), violations }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitSource {
    Classical,
    Dual,
    /// Derived from nonvanishing model entries; may be finer than the true
    /// orbit relation.
    ModelLowerBound,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrbitStructure {
    /// 1-based blocks, each sorted, ordered by their minimum.
    pub blocks: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    pub quasi_transitive: bool,
    pub common_size: Option<usize>,
    pub source: OrbitSource,
}

impl OrbitStructure {
    pub fn from_blocks(mut blocks: Vec<Vec<usize>>, source: OrbitSource) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b.first().copied());
        let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
        let quasi_transitive = !sizes.is_empty() && sizes.iter().all(|&s| s == sizes[0]);
        let common_size = quasi_transitive.then(|| sizes[0]);
        OrbitStructure { blocks, sizes, quasi_transitive, common_size, source }
    }

    pub fn classical(g: &PermGroup) -> Self {
        Self::from_blocks(orbits_classical(g), OrbitSource::Classical)
    }

    /// Consecutive index ranges of the given sizes.
    pub fn dual(sizes: &[usize]) -> Self {
        let mut start = 1;
        let blocks = sizes
            .iter()
            .map(|&k| {
                let b = (start..start + k).collect();
                start += k;
                b
            })
            .collect();
        Self::from_blocks(blocks, OrbitSource::Dual)
    }

    /// Transitive closure of {(i, j) : P_ij(x) ≠ 0 for some x}.
    pub fn from_model<S: Scalar>(model: &MagicModel<S>, tol: f64) -> Self {
        let n = model.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for i in 0..n {
            for j in 0..n {
                if (0..model.point_count()).any(|x| !model.fiber(x, i, j).is_zero(tol)) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[r]].push(i + 1);
        }
        Self::from_blocks(blocks, OrbitSource::ModelLowerBound)
    }

    /// Degree of the underlying index set.
    pub fn degree(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Block number of a 1-based index.
    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&i))
    }

    /// Whether 1-based indices i and j lie in the same block.
    pub fn related(&self, i: usize, j: usize) -> bool {
        matches!((self.block_of(i), self.block_of(j)), (Some(a), Some(b)) if a == b)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RankWitness {
    pub point: usize,
    pub i: usize,
    pub j: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QuasiFlatReport {
    pub quasi_flat: bool,
    pub witnesses: Vec<RankWitness>,
}

/// Every P_ij(x) with i ∼ j must have rank exactly one.
pub fn quasi_flat_check<S: Scalar>(
    model: &MagicModel<S>,
    orbits: &OrbitStructure,
    tol: f64,
) -> Result<QuasiFlatReport> {
    if !orbits.quasi_transitive || orbits.common_size != Some(model.dim()) || orbits.degree() != model.n() {
        return Err(Error::NotQuasiTransitive);
    }
    let n = model.n();
    let mut witnesses = Vec::new();
    for x in 0..model.point_count() {
        for i in 0..n {
            for j in 0..n {
                if orbits.related(i + 1, j + 1) {
                    let rank = model.fiber(x, i, j).rank(tol);
                    if rank != 1 {
                        witnesses.push(RankWitness { point: x, i: i + 1, j: j + 1, rank });
                    }
                }
            }
        }
    }
    Ok(QuasiFlatReport { quasi_flat: witnesses.is_empty(), witnesses })
}
