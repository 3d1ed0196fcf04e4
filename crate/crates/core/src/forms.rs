//! Polynomial-coefficient exterior calculus on `C^m`.
//!
//! A [`DiffForm`] stores its components sparsely, keyed by strictly
//! increasing index tuples. Any tuple passed in is sorted on insertion and
//! the permutation sign is folded into the coefficient; tuples with a repeated
//! index are dropped.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::poly::{default_names, q, Monomial, Poly, QuasiDegree, Weights, Q};

/// Coordinate of a form jet for linear algebra: coefficient monomial first,
/// then the differential index tuple.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FormKey {
    pub mono: Monomial,
    pub dx: Vec<usize>,
}

/// Sorts `idx` in place, returning the permutation sign, or `None` when an
/// index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

/// A differential `p`-form with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiffForm {
    nvars: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Poly>,
}

impl DiffForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        DiffForm {
            nvars,
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn function(f: Poly) -> Self {
        let mut w = DiffForm::zero(f.nvars(), 0);
        w.add_component(Vec::new(), f);
        w
    }

    /// The 1-form `dx_i`.
    pub fn dx(nvars: usize, i: usize) -> Self {
        DiffForm::monomial(nvars, &[i], Poly::one(nvars)).expect("single index")
    }

    /// `coeff * dx_{idx[0]} ^ ... ^ dx_{idx[p-1]}`; the indices need not be
    /// sorted.
    pub fn monomial(nvars: usize, idx: &[usize], coeff: Poly) -> Result<Self> {
        DiffForm::from_components(nvars, idx.len(), [(idx.to_vec(), coeff)])
    }

    pub fn from_components<I>(nvars: usize, degree: usize, comps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Poly)>,
    {
        let mut w = DiffForm::zero(nvars, degree);
        for (idx, f) in comps {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: idx.len(),
                });
            }
            if f.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: f.nvars(),
                });
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= nvars) {
                return Err(Error::Malformed(format!(
                    "differential index {bad} out of range for {nvars} variables"
                )));
            }
            w.add_component(idx, f);
        }
        Ok(w)
    }

    fn add_component(&mut self, mut idx: Vec<usize>, f: Poly) {
        if f.is_zero() {
            return;
        }
        let Some(neg) = sort_with_sign(&mut idx) else {
            return;
        };
        let f = if neg { -&f } else { f };
        let entry = self
            .comps
            .entry(idx)
            .or_insert_with(|| Poly::zero(self.nvars));
        *entry = &*entry + &f;
        self.comps.retain(|_, c| !c.is_zero());
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, Poly> {
        &self.comps
    }

    /// Coefficient of `dx_idx` for a strictly increasing `idx`.
    pub fn component(&self, idx: &[usize]) -> Poly {
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// The coefficient of a 0-form.
    pub fn as_function(&self) -> Option<Poly> {
        (self.degree == 0).then(|| self.component(&[]))
    }

    fn check_same_space(&self, other: &DiffForm) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DiffForm) -> Result<DiffForm> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (idx, f) in &other.comps {
            out.add_component(idx.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffForm) -> Result<DiffForm> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Q) -> DiffForm {
        self.map_coefficients(|f| f.scale(c))
    }

    /// `g * self` for a function `g`.
    pub fn mul_poly(&self, g: &Poly) -> Result<DiffForm> {
        if g.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: g.nvars(),
            });
        }
        Ok(self.map_coefficients(|f| f * g))
    }

    fn map_coefficients(&self, op: impl Fn(&Poly) -> Poly) -> DiffForm {
        DiffForm {
            nvars: self.nvars,
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .map(|(k, f)| (k.clone(), op(f)))
                .filter(|(_, f)| !f.is_zero())
                .collect(),
        }
    }

    /// Drops coefficient terms of total degree above `d`.
    pub fn truncate(&self, d: u32) -> DiffForm {
        self.map_coefficients(|f| f.truncate(d as u64, None))
    }

    /// Lowest total degree among the coefficients; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.comps.values().filter_map(Poly::order).min()
    }

    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut out = DiffForm::zero(self.nvars, self.degree + other.degree);
        if self.degree + other.degree > self.nvars {
            return Ok(out);
        }
        for (i, f) in &self.comps {
            for (j, g) in &other.comps {
                if i.iter().any(|a| j.contains(a)) {
                    continue;
                }
                let idx: Vec<usize> = i.iter().chain(j).copied().collect();
                out.add_component(idx, f * g);
            }
        }
        Ok(out)
    }

    /// Exterior derivative.
    pub fn d(&self) -> DiffForm {
        let mut out = DiffForm::zero(self.nvars, self.degree + 1);
        for (idx, f) in &self.comps {
            for j in 0..self.nvars {
                if idx.contains(&j) {
                    continue;
                }
                let df = f.derivative(j);
                if df.is_zero() {
                    continue;
                }
                let mut new_idx = Vec::with_capacity(idx.len() + 1);
                new_idx.push(j);
                new_idx.extend_from_slice(idx);
                out.add_component(new_idx, df);
            }
        }
        out
    }

    /// Contraction `X ⌟ ω`.
    pub fn interior(&self, x: &VectorField) -> Result<DiffForm> {
        if self.degree == 0 {
            return Err(Error::InteriorOfFunction);
        }
        if x.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: x.nvars(),
            });
        }
        let mut out = DiffForm::zero(self.nvars, self.degree - 1);
        for (idx, f) in &self.comps {
            for (k, &i) in idx.iter().enumerate() {
                let xi = &x.comps[i];
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(k);
                let c = f * xi;
                out.add_component(rest, if k % 2 == 1 { -&c } else { c });
            }
        }
        Ok(out)
    }

    /// Lie derivative by Cartan's formula `L_X = d ι_X + ι_X d`.
    pub fn lie_derivative(&self, x: &VectorField) -> Result<DiffForm> {
        let via_d = self.d().interior(x)?;
        if self.degree == 0 {
            return Ok(via_d);
        }
        via_d.checked_add(&self.interior(x)?.d())
    }

    /// Pullback along `phi`, with coefficients truncated at total degree
    /// `trunc`.
    pub fn pullback(&self, phi: &PolyMap, trunc: u32) -> Result<DiffForm> {
        if phi.target_vars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: phi.target_vars(),
            });
        }
        let s = phi.source_vars();
        let mut dphi: Vec<Option<DiffForm>> = vec![None; self.nvars];
        let mut out = DiffForm::zero(s, self.degree);
        for (idx, f) in &self.comps {
            let coeff = f.compose(phi.components(), s, Some(trunc))?;
            if coeff.is_zero() {
                continue;
            }
            let mut acc = DiffForm::function(coeff);
            for &i in idx {
                let di = dphi[i].get_or_insert_with(|| {
                    DiffForm::function(phi.components()[i].clone()).d().truncate(trunc)
                });
                acc = acc.wedge(di)?.truncate(trunc);
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    /// Quasi-degree, counting the weight of every differential `dx_i` as
    /// `lambda_i`.
    pub fn quasi_degree(&self, w: &Weights) -> Result<QuasiDegree> {
        if w.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: w.len(),
            });
        }
        let parts = self.weighted_parts(w);
        Ok(match parts.len() {
            0 => QuasiDegree::Zero,
            1 => QuasiDegree::Degree(*parts.keys().next().expect("one part")),
            _ => QuasiDegree::Inhomogeneous,
        })
    }

    /// Splits into quasi-homogeneous pieces keyed by quasi-degree.
    pub fn weighted_parts(&self, w: &Weights) -> BTreeMap<u64, DiffForm> {
        let mut out: BTreeMap<u64, DiffForm> = BTreeMap::new();
        for (idx, f) in &self.comps {
            let shift: u64 = idx.iter().map(|&i| w.as_slice()[i]).sum();
            for (deg, part) in f.weighted_parts(w) {
                out.entry(deg + shift)
                    .or_insert_with(|| DiffForm::zero(self.nvars, self.degree))
                    .add_component(idx.clone(), part);
            }
        }
        out
    }

    /// Coordinates as a sparse vector over [`FormKey`]s.
    pub fn to_sparse(&self) -> SparseVec<FormKey> {
        let mut v = SparseVec::new();
        for (idx, f) in &self.comps {
            for (m, c) in f.terms() {
                v.insert(
                    FormKey {
                        mono: m.clone(),
                        dx: idx.clone(),
                    },
                    c.clone(),
                );
            }
        }
        v
    }

    pub fn from_sparse(nvars: usize, degree: usize, v: &SparseVec<FormKey>) -> DiffForm {
        let mut comps: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
        for (k, c) in v {
            let f = comps
                .entry(k.dx.clone())
                .or_insert_with(|| Poly::zero(nvars));
            f.add_term(k.mono.clone(), c.clone());
        }
        comps.retain(|_, f| !f.is_zero());
        DiffForm {
            nvars,
            degree,
            comps,
        }
    }

    /// Value at the origin of a 2-form as a skew-symmetric matrix.
    pub fn constant_matrix(&self) -> Result<Vec<Vec<Q>>> {
        if self.degree != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: self.degree,
            });
        }
        let mut m = vec![vec![Q::zero(); self.nvars]; self.nvars];
        for (idx, f) in &self.comps {
            let c = f.constant_term();
            m[idx[0]][idx[1]] = c.clone();
            m[idx[1]][idx[0]] = -c;
        }
        Ok(m)
    }

    /// Renders as text accepted by the form parser, e.g.
    /// `-z*dy + 2*y*dz` or `(y + z)*dy^dz`.
    pub fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.degree == 0 {
            return self.component(&[]).render(names);
        }
        if self.comps.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (idx, f)) in self.comps.iter().enumerate() {
            let block = idx
                .iter()
                .map(|&i| format!("d{}", names[i].as_ref()))
                .collect::<Vec<_>>()
                .join("^");
            let (neg, body) = if f.num_terms() == 1 {
                let (m, c) = f.terms().iter().next().expect("one term");
                let mono = crate::poly::render_monomial(m, names);
                let abs = c.abs();
                let mut parts = Vec::new();
                if !abs.is_one() {
                    parts.push(abs.to_string());
                }
                if !mono.is_empty() {
                    parts.push(mono);
                }
                parts.push(block);
                (c.is_negative(), parts.join("*"))
            } else {
                (false, format!("({})*{}", f.render(names), block))
            };
            match (n, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.nvars)))
    }
}

impl<'a> Add<&'a DiffForm> for &'a DiffForm {
    type Output = DiffForm;
    /// Panics when the forms live in different spaces; see
    /// [`DiffForm::checked_add`].
    fn add(self, rhs: &'a DiffForm) -> DiffForm {
        self.checked_add(rhs).expect("form space mismatch")
    }
}

impl<'a> Sub<&'a DiffForm> for &'a DiffForm {
    type Output = DiffForm;
    fn sub(self, rhs: &'a DiffForm) -> DiffForm {
        self.checked_sub(rhs).expect("form space mismatch")
    }
}

impl Neg for &DiffForm {
    type Output = DiffForm;
    fn neg(self) -> DiffForm {
        self.scale(&q(-1))
    }
}

/// A polynomial vector field `sum X_i d/dx_i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField {
    comps: Vec<Poly>,
}

impl VectorField {
    pub fn new(comps: Vec<Poly>) -> Result<Self> {
        let n = comps.len();
        if let Some(c) = comps.iter().find(|c| c.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.nvars(),
            });
        }
        Ok(VectorField { comps })
    }

    pub fn zero(nvars: usize) -> Self {
        VectorField {
            comps: vec![Poly::zero(nvars); nvars],
        }
    }

    /// `sum lambda_i x_i d/dx_i`.
    pub fn euler(w: &Weights) -> Self {
        let n = w.len();
        VectorField {
            comps: w
                .as_slice()
                .iter()
                .enumerate()
                .map(|(i, &l)| Poly::var(n, i).scale(&q(l as i64)))
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// The derivation applied to a function.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        if f.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: f.nvars(),
            });
        }
        let mut out = Poly::zero(self.nvars());
        for (i, xi) in self.comps.iter().enumerate() {
            if !xi.is_zero() {
                out = &out + &(xi * &f.derivative(i));
            }
        }
        Ok(out)
    }

    pub fn mul_poly(&self, g: &Poly) -> VectorField {
        VectorField {
            comps: self.comps.iter().map(|c| c * g).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> VectorField {
        VectorField {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Ok(VectorField {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({})*d/d{}", c.render(names), names[i].as_ref()))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// A polynomial map germ `(C^s, 0) -> (C^m, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMap {
    source_vars: usize,
    comps: Vec<Poly>,
}

impl PolyMap {
    /// Components are polynomials in `source_vars` variables, each vanishing at
    /// the origin.
    pub fn new(source_vars: usize, comps: Vec<Poly>) -> Result<Self> {
        for (i, c) in comps.iter().enumerate() {
            if c.nvars() != source_vars {
                return Err(Error::DimensionMismatch {
                    expected: source_vars,
                    found: c.nvars(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(Error::MapNotAtOrigin(i));
            }
        }
        Ok(PolyMap { source_vars, comps })
    }

    pub fn identity(nvars: usize) -> Self {
        PolyMap {
            source_vars: nvars,
            comps: (0..nvars).map(|i| Poly::var(nvars, i)).collect(),
        }
    }

    /// The weighted scaling `x_i -> t^{lambda_i} x_i`.
    pub fn scaling(w: &Weights, t: &Q) -> Self {
        let n = w.len();
        PolyMap {
            source_vars: n,
            comps: w
                .as_slice()
                .iter()
                .enumerate()
                .map(|(i, &l)| Poly::var(n, i).scale(&num_traits::pow(t.clone(), l as usize)))
                .collect(),
        }
    }

    pub fn source_vars(&self) -> usize {
        self.source_vars
    }

    pub fn target_vars(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    /// `f ∘ self`, truncated at total degree `trunc` when given.
    pub fn pull_function(&self, f: &Poly, trunc: Option<u32>) -> Result<Poly> {
        f.compose(&self.comps, self.source_vars, trunc)
    }

    /// The composite `self ∘ inner`.
    pub fn compose(&self, inner: &PolyMap, trunc: Option<u32>) -> Result<PolyMap> {
        let comps = self
            .comps
            .iter()
            .map(|c| inner.pull_function(c, trunc))
            .collect::<Result<Vec<_>>>()?;
        PolyMap::new(inner.source_vars, comps)
    }
}
