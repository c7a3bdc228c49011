use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::model::{quasi_flat_check, MagicModel, OrbitStructure};
use crate::error::{Error, Result};
use crate::exact::{Cyc, Matrix, Rational, Scalar};
use crate::group::{Perm, PermGroup};

/// Index word ((i_1,j_1),…,(i_k,j_k)), 1-based, standing for u_{i_1 j_1}⋯u_{i_k j_k}.
/// Default word-length bound for stationarity of magic models.
pub const DEFAULT_WORD_LEN: usize = 3;

pub type Word = Vec<(usize, usize)>;

/// Letter code of u_ij (0-based): i·N + j. A word of length k is coded in
/// base N² with its first letter most significant, so codes enumerate words
/// lexicographically.
fn letter(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

pub fn decode_word(n: usize, len: usize, mut code: usize) -> Word {
    let mut out = vec![(0, 0); len];
    for slot in out.iter_mut().rev() {
        let l = code % (n * n);
        code /= n * n;
        *slot = (l / n + 1, l % n + 1);
    }
    out
}

pub fn format_word(word: &[(usize, usize)]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|(i, j)| format!("u({i},{j})")).collect::<Vec<_>>().join("")
}

/// A state evaluated on every index word of length ≤ ℓ.
#[derive(Clone, Debug, PartialEq)]
pub struct StateOnWords<S> {
    n: usize,
    max_len: usize,
    // tables[k][code] for words of length k
    tables: Vec<Vec<S>>,
}

impl<S: Scalar> StateOnWords<S> {
    fn from_tables(n: usize, tables: Vec<Vec<S>>) -> Self {
        StateOnWords { n, max_len: tables.len() - 1, tables }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Value on a 1-based word; `None` beyond the bound or out of range.
    pub fn get(&self, word: &[(usize, usize)]) -> Option<&S> {
        if word.len() > self.max_len || word.iter().any(|&(i, j)| i == 0 || j == 0 || i > self.n || j > self.n) {
            return None;
        }
        let code = word.iter().fold(0, |acc, &(i, j)| acc * self.n * self.n + letter(self.n, i - 1, j - 1));
        Some(&self.tables[word.len()][code])
    }

    pub fn table(&self, len: usize) -> &[S] {
        &self.tables[len]
    }

    pub fn word_count(&self) -> usize {
        self.tables.iter().map(Vec::len).sum()
    }
}

fn word_table_sizes(n: usize, max_len: usize) -> Vec<usize> {
    (0..=max_len).map(|k| (n * n).pow(k as u32)).collect()
}

/// (1/|G|)·|{σ ∈ G : σ(j_a) = i_a for all a}|.
pub fn haar_word_classical(g: &PermGroup, word: &[(usize, usize)]) -> Rational {
    let hits = g.elements().iter().filter(|s| word.iter().all(|&(i, j)| s.apply(j) == i)).count();
    Rational::new((hits as i64).into(), (g.order() as i64).into())
}

/// Haar state of a classical G ⊂ S_N on all words up to `max_len`.
pub fn haar_state_classical(g: &PermGroup, max_len: usize) -> StateOnWords<Cyc> {
    let n = g.degree();
    let sizes = word_table_sizes(n, max_len);
    let order = Rational::from_integer((g.order() as i64).into());
    let mut tables: Vec<Vec<Cyc>> = sizes.iter().map(|&s| vec![Cyc::zero(); s]).collect();
    let all: Vec<usize> = (0..g.order()).collect();
    // depth-first over words, carrying the elements consistent with the prefix
    let mut stack = vec![(0usize, 0usize, all)];
    while let Some((len, code, alive)) = stack.pop() {
        tables[len][code] = Cyc::rational(Rational::from_integer((alive.len() as i64).into()) / &order);
        if len == max_len || alive.is_empty() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let next: Vec<usize> = alive.iter().copied().filter(|&s| g.element(s).apply0(j) == i).collect();
                if !next.is_empty() {
                    stack.push((len + 1, code * n * n + letter(n, i, j), next));
                }
            }
        }
    }
    StateOnWords::from_tables(n, tables)
}

/// A group dual presented by generators g_1..g_M of orders K_1..K_M, with
/// coordinates u in block i given by (1/K_i) Σ_a ζ^{(c−r)a} g_i^a.
#[derive(Clone, Debug)]
pub struct DualPresentation {
    gamma: PermGroup,
    generators: Vec<usize>,
    sizes: Vec<usize>,
}

impl DualPresentation {
    pub fn new(gamma: &PermGroup, generators: &[Perm]) -> Result<Self> {
        let idx = generators.iter().map(|g| gamma.index_of(g).ok_or(Error::NotInGroup)).collect::<Result<Vec<_>>>()?;
        let sizes = generators.iter().map(Perm::order).collect();
        Ok(DualPresentation { gamma: gamma.clone(), generators: idx, sizes })
    }

    pub fn gamma(&self) -> &PermGroup {
        &self.gamma
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn orbits(&self) -> OrbitStructure {
        OrbitStructure::dual(&self.sizes)
    }

    /// u_ij as a sparse group-algebra element, 0-based indices.
    pub fn coordinate(&self, i: usize, j: usize) -> Vec<(usize, Cyc)> {
        let mut start = 0;
        for (b, &k) in self.sizes.iter().enumerate() {
            if i >= start && i < start + k {
                if j < start || j >= start + k {
                    return Vec::new();
                }
                let (r, c) = ((i - start) as i64, (j - start) as i64);
                let g = self.generators[b];
                let inv_k = Rational::new(1.into(), (k as i64).into());
                let mut power = 0usize;
                let mut out = Vec::with_capacity(k);
                for a in 0..k as i64 {
                    out.push((power, Cyc::root_of_unity(k, (c - r) * a).scale(&inv_k)));
                    power = self.gamma.mul_idx(power, g);
                }
                return out;
            }
            start += k;
        }
        Vec::new()
    }

    /// ∫ = coefficient of the identity, on all words up to `max_len`.
    pub fn haar_state(&self, max_len: usize) -> StateOnWords<Cyc> {
        let n = self.n();
        let coords: Vec<Vec<(usize, Cyc)>> = (0..n * n).map(|l| self.coordinate(l / n, l % n)).collect();
        let sizes = word_table_sizes(n, max_len);
        let mut tables: Vec<Vec<Cyc>> = sizes.iter().map(|&s| vec![Cyc::zero(); s]).collect();
        let mut unit = vec![Cyc::zero(); self.gamma.order()];
        unit[0] = Cyc::one();
        let mut stack = vec![(0usize, 0usize, unit)];
        while let Some((len, code, elem)) = stack.pop() {
            tables[len][code] = elem[0].clone();
            if len == max_len {
                continue;
            }
            for (l, coord) in coords.iter().enumerate() {
                if coord.is_empty() {
                    continue;
                }
                let mut next = vec![Cyc::zero(); elem.len()];
                for (x, a) in elem.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (y, b) in coord {
                        let z = self.gamma.mul_idx(x, *y);
                        next[z] = &next[z] + &(a * b);
                    }
                }
                if next.iter().any(|c| !c.is_zero()) {
                    stack.push((len + 1, code * n * n + l, next));
                }
            }
        }
        StateOnWords::from_tables(n, tables)
    }
}

/// The reference quantum group of a stationarity check.
#[derive(Clone, Debug)]
pub enum Reference {
    Classical(PermGroup),
    Dual(DualPresentation),
}

impl Reference {
    pub fn n(&self) -> usize {
        match self {
            Reference::Classical(g) => g.degree(),
            Reference::Dual(d) => d.n(),
        }
    }

    pub fn orbits(&self) -> OrbitStructure {
        match self {
            Reference::Classical(g) => OrbitStructure::classical(g),
            Reference::Dual(d) => d.orbits(),
        }
    }

    pub fn haar_state(&self, max_len: usize) -> StateOnWords<Cyc> {
        match self {
            Reference::Classical(g) => haar_state_classical(g, max_len),
            Reference::Dual(d) => d.haar_state(max_len),
        }
    }
}

/// φ = (tr ⊗ ∫_X)π on all words up to `max_len`.
pub fn model_state<S: Scalar>(model: &MagicModel<S>, max_len: usize) -> StateOnWords<S> {
    let n = model.n();
    let nn = n * n;
    let weights: Vec<S> = model.weights().iter().map(S::from_rational).collect();
    let mut tables: Vec<Vec<S>> = vec![vec![S::one()]];
    if max_len == 0 {
        return StateOnWords::from_tables(n, tables);
    }
    // one task per first letter; each fills the slice of codes it owns
    let per_letter: Vec<Vec<Vec<S>>> = (0..nn)
        .into_par_iter()
        .map(|first| {
            let mut part: Vec<Vec<S>> = (1..=max_len).map(|k| vec![S::zero(); nn.pow(k as u32 - 1)]).collect();
            for (x, w) in weights.iter().enumerate() {
                let entries = model.point_entries(x);
                let mut stack = vec![(1usize, 0usize, entries[first].clone())];
                while let Some((len, rel, prod)) = stack.pop() {
                    if prod.is_zero(0.0) {
                        continue;
                    }
                    part[len - 1][rel] = part[len - 1][rel].add(&w.mul(&prod.ntrace()));
                    if len < max_len {
                        for (l, m) in entries.iter().enumerate() {
                            stack.push((len + 1, rel * nn + l, &prod * m));
                        }
                    }
                }
            }
            part
        })
        .collect();
    for k in 1..=max_len {
        tables.push(per_letter.iter().flat_map(|p| p[k - 1].iter().cloned()).collect());
    }
    StateOnWords::from_tables(n, tables)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WordMismatch {
    pub word: String,
    pub model: Value,
    pub reference: Value,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct StationarityCertificate {
    pub stationary: bool,
    pub max_word_len: usize,
    pub words_checked: usize,
    pub first_mismatch: Option<WordMismatch>,
    /// For single-point models of quasi-transitive references whose state
    /// matched up to length ≥ 2: the quasi-flatness that stationarity forces.
    pub quasi_flat_cross_check: Option<bool>,
}

/// Compares two states word by word in code order and reports the first
/// disagreement.
pub fn compare_states<S: Scalar>(
    model: &StateOnWords<S>,
    reference: &StateOnWords<Cyc>,
    tol: f64,
) -> Option<WordMismatch> {
    for len in 0..=model.max_len().min(reference.max_len()) {
        for (code, (a, b)) in model.table(len).iter().zip(reference.table(len)).enumerate() {
            let b = S::from_cyc(b);
            if !a.approx_eq(&b, tol) {
                return Some(WordMismatch {
                    word: format_word(&decode_word(model.n(), len, code)),
                    model: a.to_json(),
                    reference: b.to_json(),
                });
            }
        }
    }
    None
}

/// Certifies ∫_G = (tr ⊗ ∫_X)π on every word of length ≤ `max_len`.
pub fn stationarity_check<S: Scalar>(
    reference: &Reference,
    model: &MagicModel<S>,
    max_len: usize,
    tol: f64,
) -> Result<StationarityCertificate> {
    if reference.n() != model.n() {
        return Err(Error::ShapeMismatch(format!("reference has N = {}, model has N = {}", reference.n(), model.n())));
    }
    let phi = model_state(model, max_len);
    let haar = reference.haar_state(max_len);
    let first_mismatch = compare_states(&phi, &haar, tol);
    let stationary = first_mismatch.is_none();
    let orbits = reference.orbits();
    let quasi_flat_cross_check = (stationary
        && max_len >= 2
        && model.point_count() == 1
        && orbits.quasi_transitive
        && orbits.common_size == Some(model.dim()))
    .then(|| quasi_flat_check(model, &orbits, tol).map(|r| r.quasi_flat))
    .transpose()?;
    Ok(StationarityCertificate {
        stationary,
        max_word_len: max_len,
        words_checked: phi.word_count(),
        first_mismatch,
        quasi_flat_cross_check,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConvolutionFailure {
    pub word: String,
    pub value: Value,
    pub convolved: Value,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IdempotencyReport {
    pub idempotent: bool,
    pub max_word_len: usize,
    pub first_failure: Option<ConvolutionFailure>,
}

/// Checks φ∗φ = φ on words of length ≤ `max_len`, where
/// (φ∗φ)(u_{i_1 j_1}⋯u_{i_k j_k}) = Σ_m φ(u_{i_1 m_1}⋯u_{i_k m_k}) φ(u_{m_1 j_1}⋯u_{m_k j_k}).
pub fn convolution_idempotency<S: Scalar>(phi: &StateOnWords<S>, max_len: usize, tol: f64) -> IdempotencyReport {
    let n = phi.n();
    let max_len = max_len.min(phi.max_len());
    for len in 1..=max_len {
        let table = phi.table(len);
        let failure = (0..table.len())
            .into_par_iter()
            .find_first(|&code| !convolve_at(table, n, len, code).approx_eq(&table[code], tol));
        if let Some(code) = failure {
            return IdempotencyReport {
                idempotent: false,
                max_word_len: max_len,
                first_failure: Some(ConvolutionFailure {
                    word: format_word(&decode_word(n, len, code)),
                    value: table[code].to_json(),
                    convolved: convolve_at(table, n, len, code).to_json(),
                }),
            };
        }
    }
    IdempotencyReport { idempotent: true, max_word_len: max_len, first_failure: None }
}

fn convolve_at<S: Scalar>(table: &[S], n: usize, len: usize, code: usize) -> S {
    let word: Vec<(usize, usize)> = decode_word(n, len, code).into_iter().map(|(i, j)| (i - 1, j - 1)).collect();
    let mut acc = S::zero();
    for m in 0..n.pow(len as u32) {
        let mut left = 0;
        let mut right = 0;
        for (t, &(i, j)) in word.iter().enumerate() {
            let mid = (m / n.pow((len - 1 - t) as u32)) % n;
            left = left * n * n + letter(n, i, mid);
            right = right * n * n + letter(n, mid, j);
        }
        acc = acc.add(&table[left].mul(&table[right]));
    }
    acc
}

#[derive(Clone, Debug)]
pub struct FixedPointReport<S> {
    pub q: Matrix<S>,
    pub is_projection: bool,
    pub fixes_all_one: bool,
    /// Q_ij = 1/|orbit| on related pairs and 0 elsewhere.
    pub matches_orbits: bool,
}

/// Q_ij = φ(u_ij), checked against the orbit prediction.
pub fn fixed_point_matrix<S: Scalar>(phi: &StateOnWords<S>, orbits: &OrbitStructure, tol: f64) -> FixedPointReport<S> {
    let n = phi.n();
    let q = Matrix::from_fn(n, n, |i, j| phi.get(&[(i + 1, j + 1)]).expect("length-one words").clone());
    let predicted = Matrix::from_fn(n, n, |i, j| match orbits.block_of(i + 1) {
        Some(b) if orbits.related(i + 1, j + 1) => {
            S::from_rational(&Rational::new(1.into(), (orbits.sizes[b] as i64).into()))
        }
        _ => S::zero(),
    });
    let eta = Matrix::from_fn(n, 1, |_, _| S::one());
    FixedPointReport {
        is_projection: q.is_projection(tol),
        fixes_all_one: (&q * &eta).approx_eq(&eta, tol),
        matches_orbits: q.approx_eq(&predicted, tol),
        q,
    }
}

/// Fixed-point projection of a classical group from its Haar integrals.
pub fn fixed_point_matrix_classical(g: &PermGroup) -> FixedPointReport<Cyc> {
    fixed_point_matrix(&haar_state_classical(g, 1), &OrbitStructure::classical(g), 0.0)
}
