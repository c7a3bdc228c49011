//! Stationary models of virtually abelian groups from induced
//! representations.
//!
//! For Λ ◁ Γ abelian with finite quotient Φ = Γ/Λ and coset representatives
//! g_1 = e, …, g_{|Φ|}, the model sends g to the |Φ|×|Φ| monomial matrix with
//! entry `[x⁻¹ g y]` at (x, y) whenever `x⁻¹ g y ∈ Λ`. Functions on Λ̂ are
//! handled through Fourier duality as elements of the group algebra of Λ,
//! so integrating over Λ̂ is reading off the coefficient of the identity.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, Cyc, ExactMatrix, Matrix, Rational};
use crate::group::abelian::{abelian_dual, coordinatize, AbelianCoordinates, AbelianGroup, CharacterOf, Element};
use crate::group::{is_normal, quotient_data, Perm, PermGroup};

/// Default word-length bound for infinite (split) inputs.
pub const DEFAULT_MAX_WORD_LEN: usize = 4;

/// A group Γ with a designated abelian normal subgroup Λ of finite index.
pub trait VirtuallyAbelian: Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    /// Λ in coordinates.
    fn lattice(&self) -> &AbelianGroup;
    /// |Φ|.
    fn coset_count(&self) -> usize;
    /// g_x, with g_0 the identity.
    fn representative(&self, x: usize) -> &Self::Elem;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn contains(&self, g: &Self::Elem) -> bool;
    /// Coordinates of g when g ∈ Λ.
    fn lambda_coords(&self, g: &Self::Elem) -> Option<Element>;
    fn is_identity(&self, g: &Self::Elem) -> bool;
    /// Elements on which stationarity is certified: all of Γ when finite,
    /// otherwise every word of length ≤ `max_word_len` in the generators
    /// and their inverses.
    fn test_elements(&self, max_word_len: usize) -> Vec<Self::Elem>;
    fn describe(&self, g: &Self::Elem) -> String;
}

/// A finitely supported element of the group algebra of Λ.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentElement {
    terms: BTreeMap<Element, Rational>,
}

impl LaurentElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(lambda: Element) -> Self {
        LaurentElement { terms: BTreeMap::from([(lambda, Rational::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &Rational)> {
        self.terms.iter()
    }

    /// The single monomial, if the element is `1·[λ]`.
    pub fn as_monomial(&self) -> Option<&Element> {
        match self.terms.iter().next() {
            Some((k, c)) if self.terms.len() == 1 && c.is_one() => Some(k),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let slot = terms.entry(k.clone()).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(k);
            }
        }
        LaurentElement { terms }
    }

    pub fn mul(&self, other: &Self, group: &AbelianGroup) -> Self {
        let mut out = LaurentElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let term = LaurentElement { terms: BTreeMap::from([(group.add(a, b), x * y)]) };
                out = out.add(&term);
            }
        }
        out
    }

    /// The Haar functional: coefficient of the identity.
    pub fn coefficient_of_identity(&self, group: &AbelianGroup) -> Rational {
        self.terms.get(&group.identity()).cloned().unwrap_or_else(Rational::zero)
    }

    /// Evaluation of the Fourier transform at a character of a finite Λ.
    pub fn evaluate(&self, group: &AbelianGroup, chi: &CharacterOf) -> Result<Cyc> {
        if !group.is_finite() {
            return Err(Error::FreePartPresent);
        }
        Ok(self.terms.iter().fold(Cyc::zero(), |acc, (k, c)| &acc + &chi.eval(group, k).scale(c)))
    }
}

/// A |Φ|×|Φ| matrix over the group algebra of Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMatrix {
    size: usize,
    entries: Vec<LaurentElement>,
}

impl InducedMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, x: usize, y: usize) -> &LaurentElement {
        &self.entries[x * self.size + y]
    }

    pub fn mul(&self, other: &InducedMatrix, group: &AbelianGroup) -> InducedMatrix {
        let n = self.size;
        let mut entries = vec![LaurentElement::zero(); n * n];
        for x in 0..n {
            for y in 0..n {
                let a = self.entry(x, y);
                if a.is_zero() {
                    continue;
                }
                for z in 0..n {
                    let b = other.entry(y, z);
                    if !b.is_zero() {
                        entries[x * n + z] = entries[x * n + z].add(&a.mul(b, group));
                    }
                }
            }
        }
        InducedMatrix { size: n, entries }
    }

    /// Exactly one nonzero entry, a monomial, in each row and column.
    pub fn is_monomial(&self) -> bool {
        let n = self.size;
        let row_ok = (0..n).all(|x| {
            let nz: Vec<_> = (0..n).filter(|&y| !self.entry(x, y).is_zero()).collect();
            nz.len() == 1 && self.entry(x, nz[0]).as_monomial().is_some()
        });
        let col_ok = (0..n).all(|y| (0..n).filter(|&x| !self.entry(x, y).is_zero()).count() == 1);
        row_ok && col_ok
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> LaurentElement {
        (0..self.size).fold(LaurentElement::zero(), |acc, x| acc.add(self.entry(x, x)))
    }
}

/// The induced model at g.
pub fn induce<D: VirtuallyAbelian>(data: &D, g: &D::Elem) -> Result<InducedMatrix> {
    if !data.contains(g) {
        return Err(Error::NotInGroup);
    }
    let n = data.coset_count();
    let mut entries = Vec::with_capacity(n * n);
    for x in 0..n {
        let xi = data.inv(data.representative(x));
        let left = data.mul(&xi, g);
        for y in 0..n {
            let h = data.mul(&left, data.representative(y));
            entries.push(match data.lambda_coords(&h) {
                Some(lambda) => LaurentElement::monomial(lambda),
                None => LaurentElement::zero(),
            });
        }
    }
    Ok(InducedMatrix { size: n, entries })
}

/// Replaces each group-algebra entry by its value at χ.
pub fn evaluate_at_character(m: &InducedMatrix, group: &AbelianGroup, chi: &CharacterOf) -> Result<ExactMatrix> {
    let n = m.size();
    let data = (0..n * n).map(|i| m.entries[i].evaluate(group, chi)).collect::<Result<Vec<_>>>()?;
    Matrix::new(n, n, data)
}

/// Σ_x δ(x⁻¹gx ∈ Λ) χ(x⁻¹gx) over the coset representatives.
pub fn frobenius_trace<D: VirtuallyAbelian>(data: &D, chi: &CharacterOf, g: &D::Elem) -> Result<Cyc> {
    let group = data.lattice();
    if !group.is_finite() {
        return Err(Error::FreePartPresent);
    }
    if !data.contains(g) {
        return Err(Error::NotInGroup);
    }
    let mut acc = Cyc::zero();
    for x in 0..data.coset_count() {
        let r = data.representative(x);
        let conj = data.mul(&data.mul(&data.inv(r), g), r);
        if let Some(lambda) = data.lambda_coords(&conj) {
            acc = &acc + &chi.eval(group, &lambda);
        }
    }
    Ok(acc)
}

/// (1/|Λ̂|) Σ_χ Tr(π(g)(χ)), computed by summing over all characters.
pub fn averaged_character_trace<D: VirtuallyAbelian>(data: &D, g: &D::Elem) -> Result<Cyc> {
    let group = data.lattice();
    let dual = abelian_dual(group)?;
    let m = induce(data, g)?;
    let mut acc = Cyc::zero();
    for chi in &dual {
        acc = &acc + &evaluate_at_character(&m, group, chi)?.trace();
    }
    Ok(acc.scale(&Rational::new(1.into(), (dual.len() as i64).into())))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ElementValue {
    pub element: String,
    pub value: String,
    pub expected: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ThomaCertificate {
    pub stationary: bool,
    pub index: usize,
    pub lambda_factors: Vec<u64>,
    pub lambda_free_rank: usize,
    pub elements_checked: usize,
    /// `(1/|Φ|) Σ_x ∫ π(g)_{xx}` for every checked element.
    pub values: Vec<ElementValue>,
    pub first_failure: Option<ElementValue>,
    /// Frobenius formula versus the induced-matrix trace over all (g, χ);
    /// `None` when Λ has a free part.
    pub frobenius_agrees: Option<bool>,
    /// Character-averaged trace versus |Φ|·δ_{g,e}; `None` when Λ has a free part.
    pub character_average_agrees: Option<bool>,
    /// Every π(g) had one monomial per row and column.
    pub monomial: bool,
}

/// Certifies `(tr ⊗ ∫_Λ̂) π(g) = δ_{g,e}` by coefficient extraction.
pub fn check_stationarity<D: VirtuallyAbelian>(data: &D, max_word_len: usize) -> Result<ThomaCertificate> {
    let group = data.lattice();
    let phi = data.coset_count();
    let phi_q = Rational::from_integer((phi as i64).into());
    let elements = data.test_elements(max_word_len);
    let dual = if group.is_finite() { Some(abelian_dual(group)?) } else { None };

    struct PerElement {
        value: ElementValue,
        ok: bool,
        monomial: bool,
        frobenius: Option<bool>,
        average: Option<bool>,
    }

    let rows: Vec<PerElement> = elements
        .par_iter()
        .map(|g| -> Result<PerElement> {
            let m = induce(data, g)?;
            let diag_sum = (0..phi).fold(Rational::zero(), |acc, x| acc + m.entry(x, x).coefficient_of_identity(group));
            let value = diag_sum / &phi_q;
            let expected = if data.is_identity(g) { Rational::one() } else { Rational::zero() };
            let ok = value == expected;
            let (frobenius, average) = match &dual {
                Some(dual) => {
                    let mut agree = true;
                    let mut total = Cyc::zero();
                    for chi in dual {
                        let tr = evaluate_at_character(&m, group, chi)?.trace();
                        agree &= frobenius_trace(data, chi, g)? == tr;
                        total = &total + &tr;
                    }
                    let avg = total.scale(&Rational::new(1.into(), (dual.len() as i64).into()));
                    (Some(agree), Some(avg == Cyc::rational(&expected * &phi_q)))
                }
                None => (None, None),
            };
            Ok(PerElement {
                value: ElementValue {
                    element: data.describe(g),
                    value: format_rational(&value),
                    expected: format_rational(&expected),
                },
                ok,
                monomial: m.is_monomial(),
                frobenius,
                average,
            })
        })
        .collect::<Result<_>>()?;

    let first_failure = rows.iter().find(|r| !r.ok).map(|r| r.value.clone());
    let all = |f: fn(&PerElement) -> Option<bool>| -> Option<bool> {
        rows.iter().map(f).collect::<Option<Vec<bool>>>().map(|v| v.into_iter().all(|b| b))
    };
    Ok(ThomaCertificate {
        stationary: first_failure.is_none(),
        index: phi,
        lambda_factors: group.factors().to_vec(),
        lambda_free_rank: group.free_rank(),
        elements_checked: rows.len(),
        frobenius_agrees: if dual.is_some() { all(|r| r.frobenius) } else { None },
        character_average_agrees: if dual.is_some() { all(|r| r.average) } else { None },
        monomial: rows.iter().all(|r| r.monomial),
        values: rows.into_iter().map(|r| r.value).collect(),
        first_failure,
    })
}

/// Γ a finite permutation group with an abelian normal subgroup Λ.
#[derive(Clone, Debug)]
pub struct FiniteData {
    gamma: PermGroup,
    lambda: PermGroup,
    coords: AbelianCoordinates,
    representatives: Vec<Perm>,
}

impl FiniteData {
    pub fn new(gamma: PermGroup, lambda: PermGroup) -> Result<Self> {
        if !is_normal(&lambda, &gamma)? {
            return Err(Error::NotNormal);
        }
        let coords = coordinatize(&lambda)?;
        let representatives = quotient_data(&gamma, &lambda)?.representatives;
        Ok(FiniteData { gamma, lambda, coords, representatives })
    }

    pub fn gamma(&self) -> &PermGroup {
        &self.gamma
    }

    pub fn lambda(&self) -> &PermGroup {
        &self.lambda
    }

    pub fn representatives(&self) -> &[Perm] {
        &self.representatives
    }
}

impl VirtuallyAbelian for FiniteData {
    type Elem = Perm;

    fn lattice(&self) -> &AbelianGroup {
        self.coords.group()
    }
    fn coset_count(&self) -> usize {
        self.representatives.len()
    }
    fn representative(&self, x: usize) -> &Perm {
        &self.representatives[x]
    }
    fn identity(&self) -> Perm {
        Perm::identity(self.gamma.degree())
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }
    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }
    fn contains(&self, g: &Perm) -> bool {
        self.gamma.contains(g)
    }
    fn lambda_coords(&self, g: &Perm) -> Option<Element> {
        self.lambda.index_of(g).map(|i| self.coords.coords(i).to_vec())
    }
    fn is_identity(&self, g: &Perm) -> bool {
        g.is_identity()
    }
    fn test_elements(&self, _max_word_len: usize) -> Vec<Perm> {
        self.gamma.elements().to_vec()
    }
    fn describe(&self, g: &Perm) -> String {
        g.to_string()
    }
}

/// Λ ⋊ Φ with Λ = Z^d × (finite abelian) and Φ acting by integer matrices.
#[derive(Clone, Debug)]
pub struct SplitData {
    lambda: AbelianGroup,
    phi: PermGroup,
    // action matrix of each element of Φ, by element index
    action: Vec<Vec<Vec<i64>>>,
    generators: Vec<SplitElem>,
    representatives: Vec<SplitElem>,
}

/// An element (λ, φ) of Λ ⋊ Φ; φ is an element index of Φ.
pub type SplitElem = (Element, usize);

impl SplitData {
    /// `action[i]` is the matrix (acting on column vectors) of the i-th
    /// generator of Φ; `generators` are the chosen generators of Γ.
    pub fn new(
        lambda: AbelianGroup,
        phi: PermGroup,
        action: Vec<Vec<Vec<i64>>>,
        generators: Vec<(Element, Perm)>,
    ) -> Result<Self> {
        let r = lambda.rank();
        if action.len() != phi.generators().len() {
            return Err(Error::NotWellDefined("one action matrix per generator of Φ".into()));
        }
        for a in &action {
            if a.len() != r || a.iter().any(|row| row.len() != r) {
                return Err(Error::ShapeMismatch(format!("action matrices must be {r}x{r}")));
            }
            check_respects_torsion(&lambda, a)?;
        }
        let mut all: Vec<Option<Vec<Vec<i64>>>> = vec![None; phi.order()];
        all[0] = Some(identity_matrix(r));
        let mut queue = VecDeque::from([0usize]);
        let gens = phi.generator_indices();
        while let Some(x) = queue.pop_front() {
            for (gi, a) in gens.iter().zip(&action) {
                let y = phi.mul_idx(x, *gi);
                let target = reduce_matrix(&lambda, &mat_mul(all[x].as_ref().expect("visited"), a));
                match &all[y] {
                    None => {
                        all[y] = Some(target);
                        queue.push_back(y);
                    }
                    Some(existing) if *existing != target => {
                        return Err(Error::NotWellDefined(format!("action of {} is inconsistent", phi.element(y))));
                    }
                    Some(_) => {}
                }
            }
        }
        let action: Vec<_> = all.into_iter().map(|m| m.expect("reached")).collect();
        let generators = generators
            .into_iter()
            .map(|(l, p)| -> Result<SplitElem> {
                if l.len() != r {
                    return Err(Error::ShapeMismatch(format!("Λ-part must have {r} coordinates")));
                }
                Ok((lambda.normalize(l), phi.index_of(&p).ok_or(Error::NotInGroup)?))
            })
            .collect::<Result<_>>()?;
        let representatives = (0..phi.order()).map(|x| (lambda.identity(), x)).collect();
        Ok(SplitData { lambda, phi, action, generators, representatives })
    }

    fn act(&self, phi_idx: usize, v: &[i64]) -> Element {
        let a = &self.action[phi_idx];
        self.lambda.normalize(a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect())
    }
}

fn identity_matrix(r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = a.len();
    (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Reduces the torsion rows modulo their factors so equal actions compare equal.
fn reduce_matrix(group: &AbelianGroup, a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let f = group.free_rank();
    a.iter()
        .enumerate()
        .map(|(i, row)| {
            if i < f {
                row.clone()
            } else {
                let d = group.factors()[i - f] as i64;
                row.iter().map(|x| x.rem_euclid(d)).collect()
            }
        })
        .collect()
}

/// The matrix must send each torsion relation d_j e_j to zero in Λ.
fn check_respects_torsion(group: &AbelianGroup, a: &[Vec<i64>]) -> Result<()> {
    let f = group.free_rank();
    for (jj, &dj) in group.factors().iter().enumerate() {
        let j = f + jj;
        let mut v = vec![0i64; group.rank()];
        for (i, row) in a.iter().enumerate() {
            v[i] = row[j] * dj as i64;
        }
        if !group.is_identity(&v) {
            return Err(Error::NotWellDefined(format!("action does not preserve the order of coordinate {j}")));
        }
    }
    Ok(())
}

impl VirtuallyAbelian for SplitData {
    type Elem = SplitElem;

    fn lattice(&self) -> &AbelianGroup {
        &self.lambda
    }
    fn coset_count(&self) -> usize {
        self.phi.order()
    }
    fn representative(&self, x: usize) -> &SplitElem {
        &self.representatives[x]
    }
    fn identity(&self) -> SplitElem {
        (self.lambda.identity(), 0)
    }
    fn mul(&self, a: &SplitElem, b: &SplitElem) -> SplitElem {
        (self.lambda.add(&a.0, &self.act(a.1, &b.0)), self.phi.mul_idx(a.1, b.1))
    }
    fn inv(&self, a: &SplitElem) -> SplitElem {
        let pi = self.phi.inv_idx(a.1);
        (self.lambda.neg(&self.act(pi, &a.0)), pi)
    }
    fn contains(&self, g: &SplitElem) -> bool {
        g.0.len() == self.lambda.rank() && g.1 < self.phi.order()
    }
    fn lambda_coords(&self, g: &SplitElem) -> Option<Element> {
        (g.1 == 0).then(|| g.0.clone())
    }
    fn is_identity(&self, g: &SplitElem) -> bool {
        g.1 == 0 && self.lambda.is_identity(&g.0)
    }
    fn test_elements(&self, max_word_len: usize) -> Vec<SplitElem> {
        let mut letters = self.generators.clone();
        letters.extend(self.generators.iter().map(|g| self.inv(g)));
        let id = self.identity();
        let mut seen = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut frontier = vec![id];
        for _ in 0..max_word_len {
            let mut next = Vec::new();
            for x in &frontier {
                for l in &letters {
                    let y = self.mul(x, l);
                    if seen.insert(y.clone()) {
                        out.push(y.clone());
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        out
    }
    fn describe(&self, g: &SplitElem) -> String {
        format!("({:?}, {})", g.0, self.phi.element(g.1))
    }
}
