//! Algebraic restrictions of `p`-forms to an ideal.
//!
//! Everything is computed on `T`-jets, `T` the nilpotency order of the ideal:
//! since `m^T ⊆ I`, all forms with coefficients in `m^T` already lie in
//! `IΛ^p`, so nothing is lost by truncating.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{DiffForm, FormKey, VectorField};
use crate::ideals::FGIdeal;
use crate::linalg::{Echelon, PivotOrder, SparseVec};
use crate::poly::{Monomial, Poly, Weights, Q};

/// Strictly increasing `k`-subsets of `0..n`, lexicographically.
pub fn index_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The quotient `Λ^p / A^p_0(I)`, or its closed part.
#[derive(Clone, Debug)]
pub struct RestrictionSpace {
    ideal: FGIdeal,
    degree: usize,
    trunc: u32,
    closed_only: bool,
    a0: Echelon<FormKey>,
    // closed mode: reduced echelon of closed jets modulo A0, smallest pivots
    closed: Option<Echelon<FormKey>>,
    basis_keys: Vec<FormKey>,
    quotient_basis: Vec<DiffForm>,
}

/// Coordinates of `[ω]_I` in the quotient basis of a space.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgRestriction<'a> {
    space: &'a RestrictionSpace,
    coords: Vec<Q>,
}

impl<'a> AlgRestriction<'a> {
    pub fn space(&self) -> &'a RestrictionSpace {
        self.space
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn representative(&self) -> DiffForm {
        self.space.representative(&self.coords)
    }
}

impl PartialEq for RestrictionSpace {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
    }
}

impl RestrictionSpace {
    /// Builds the space at `T = nilpotency_order(I)`, checking that the
    /// quotient dimension agrees at `T + 1`.
    pub fn build(ideal: &FGIdeal, p: usize, closed_only: bool) -> Result<Self> {
        let t = ideal.nilpotency()?;
        let low = Self::build_with_trunc(ideal, p, closed_only, t)?;
        let high = Self::build_with_trunc(ideal, p, closed_only, t + 1)?;
        if low.dimension() != high.dimension() {
            return Err(Error::UnstableTruncation {
                low: t,
                low_dim: low.dimension(),
                high: t + 1,
                high_dim: high.dimension(),
            });
        }
        Ok(low)
    }

    /// Builds the space on `trunc`-jets. `trunc` must be at least the
    /// nilpotency order.
    pub fn build_with_trunc(
        ideal: &FGIdeal,
        p: usize,
        closed_only: bool,
        trunc: u32,
    ) -> Result<Self> {
        let n = ideal.nvars();
        if p > n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: p,
            });
        }
        match ideal.nilpotency_order(trunc) {
            Some(_) => {}
            None => return Err(Error::NotZeroDimensional { cap: trunc }),
        }

        let mut a0 = Echelon::new(PivotOrder::Largest);
        let top = index_sets(n, p);
        for g in ideal.jets(trunc).basis() {
            for idx in &top {
                a0.insert(&DiffForm::monomial(n, idx, g.clone())?.to_sparse());
            }
        }
        if p > 0 {
            let lower = index_sets(n, p - 1);
            for g in ideal.jets(trunc + 1).basis() {
                for idx in &lower {
                    let dg = DiffForm::monomial(n, idx, g.clone())?.d().truncate(trunc);
                    a0.insert(&dg.to_sparse());
                }
            }
        }

        let mut space = RestrictionSpace {
            ideal: ideal.clone(),
            degree: p,
            trunc,
            closed_only,
            a0,
            closed: None,
            basis_keys: Vec::new(),
            quotient_basis: Vec::new(),
        };

        if closed_only {
            let mut w = Echelon::new(PivotOrder::Smallest);
            if p == 0 {
                w.insert(&space.a0.reduce(&DiffForm::function(Poly::one(n)).to_sparse()));
            } else {
                let lower = index_sets(n, p - 1);
                for m in Monomial::up_to_degree(n, trunc + 1) {
                    for idx in &lower {
                        let f = Poly::term(m.clone(), Q::one());
                        let dm = DiffForm::monomial(n, idx, f)?.d().truncate(trunc);
                        w.insert(&space.a0.reduce(&dm.to_sparse()));
                    }
                }
            }
            w.fully_reduce();
            for (k, row) in w.rows() {
                space.basis_keys.push(k.clone());
                space.quotient_basis.push(DiffForm::from_sparse(n, p, row));
            }
            space.closed = Some(w);
        } else {
            let mut keys: Vec<FormKey> = Vec::new();
            for m in Monomial::up_to_degree(n, trunc) {
                for idx in &top {
                    let k = FormKey {
                        mono: m.clone(),
                        dx: idx.clone(),
                    };
                    if !space.a0.is_pivot(&k) {
                        keys.push(k);
                    }
                }
            }
            keys.sort();
            for k in keys {
                let v: SparseVec<FormKey> = [(k.clone(), Q::one())].into_iter().collect();
                space.quotient_basis.push(DiffForm::from_sparse(n, p, &v));
                space.basis_keys.push(k);
            }
        }
        Ok(space)
    }

    pub fn ideal(&self) -> &FGIdeal {
        &self.ideal
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn closed_only(&self) -> bool {
        self.closed_only
    }

    pub fn dimension(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn quotient_basis(&self) -> &[DiffForm] {
        &self.quotient_basis
    }

    /// Echelon rows spanning the jets of `A^p_0`.
    pub fn a0_basis(&self) -> Vec<DiffForm> {
        self.a0
            .rows()
            .values()
            .map(|r| DiffForm::from_sparse(self.ideal.nvars(), self.degree, r))
            .collect()
    }

    fn check_form(&self, omega: &DiffForm) -> Result<()> {
        if omega.nvars() != self.ideal.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ideal.nvars(),
                found: omega.nvars(),
            });
        }
        if omega.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: omega.degree(),
            });
        }
        Ok(())
    }

    /// Normal form of the jet of `omega` modulo `A^p_0`. Two forms have the
    /// same algebraic restriction iff their residues agree.
    pub fn residue(&self, omega: &DiffForm) -> Result<DiffForm> {
        self.check_form(omega)?;
        let r = self.a0.reduce(&omega.truncate(self.trunc).to_sparse());
        Ok(DiffForm::from_sparse(omega.nvars(), self.degree, &r))
    }

    pub fn reduce(&self, omega: &DiffForm) -> Result<AlgRestriction<'_>> {
        let r = self.residue(omega)?.to_sparse();
        let coords = match &self.closed {
            None => self
                .basis_keys
                .iter()
                .map(|k| r.get(k).cloned().unwrap_or_else(Q::zero))
                .collect(),
            Some(w) => {
                let (rest, used) = w.reduce_tracking(&r);
                if !rest.is_empty() {
                    return Err(Error::NotClosedRepresentable);
                }
                let mut coords = vec![Q::zero(); self.dimension()];
                for (k, c) in used {
                    let i = self.basis_keys.binary_search(&k).expect("pivot of a basis row");
                    coords[i] += c;
                }
                coords
            }
        };
        Ok(AlgRestriction {
            space: self,
            coords,
        })
    }

    pub fn is_zero_restriction(&self, omega: &DiffForm) -> Result<bool> {
        Ok(self.reduce(omega)?.is_zero())
    }

    /// Largest `k` such that the class of `omega` has a closed representative
    /// with coefficients in `m^k`; `None` when the class is zero.
    pub fn closed_vanishing_order(&self, omega: &DiffForm) -> Result<Option<u32>> {
        if self.degree == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        let target = self.residue(omega)?.to_sparse();
        if target.is_empty() {
            return Ok(None);
        }
        let n = self.ideal.nvars();
        let lower = index_sets(n, self.degree - 1);
        let mut span = self.a0.clone();
        // closed jets of order >= k are d of monomials of degree >= k + 1
        for k in (0..=self.trunc).rev() {
            for m in Monomial::of_degree(n, k + 1) {
                for idx in &lower {
                    let f = Poly::term(m.clone(), Q::one());
                    span.insert(&DiffForm::monomial(n, idx, f)?.d().to_sparse());
                }
            }
            if span.contains(&target) {
                return Ok(Some(k));
            }
        }
        Err(Error::NotClosedRepresentable)
    }

    /// `sum(coords[i] * quotient_basis[i])`.
    pub fn representative(&self, coords: &[Q]) -> DiffForm {
        let mut out = DiffForm::zero(self.ideal.nvars(), self.degree);
        for (c, e) in coords.iter().zip(&self.quotient_basis) {
            if !c.is_zero() {
                out = out.checked_add(&e.scale(c)).expect("same space");
            }
        }
        out
    }
}

/// A primitive `α ∈ IΛ^{p-1}` of a closed `ω ∈ IΛ^p`, for quasi-homogeneous
/// `I`: `α = Σ (1/δ) ι_E ω_δ` over the quasi-homogeneous pieces `ω_δ`.
pub fn homotopy_primitive(omega: &DiffForm, ideal: &FGIdeal) -> Result<DiffForm> {
    let n = ideal.nvars();
    if omega.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: omega.nvars(),
        });
    }
    let w = ideal.weights().ok_or(Error::NotQuasiHomogeneous)?;
    if omega.degree() == 0 {
        return Err(Error::Malformed("primitive of a 0-form".into()));
    }
    if !omega.d().is_zero() {
        return Err(Error::NotClosed);
    }
    let nil = ideal.nilpotency()?;
    let top = omega
        .components()
        .values()
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0);
    let jets = ideal.jets(top.max(nil));
    if !omega.components().values().all(|f| jets.contains(f)) {
        return Err(Error::NotInIdeal);
    }
    graded_primitive(omega, w)
}

/// `Σ (1/δ) ι_E ω_δ` for any closed form of positive degree, `E` the Euler
/// field of `w`. Satisfies `dα = ω` without reference to an ideal.
pub fn graded_primitive(omega: &DiffForm, w: &Weights) -> Result<DiffForm> {
    if omega.degree() == 0 {
        return Err(Error::Malformed("primitive of a 0-form".into()));
    }
    if !omega.d().is_zero() {
        return Err(Error::NotClosed);
    }
    let euler = VectorField::euler(w);
    let mut alpha = DiffForm::zero(omega.nvars(), omega.degree() - 1);
    for (delta, piece) in omega.weighted_parts(w) {
        if delta == 0 {
            return Err(Error::Malformed("quasi-degree zero piece".into()));
        }
        let inv = Q::one() / Q::from_integer(delta.into());
        alpha = alpha.checked_add(&piece.interior(&euler)?.scale(&inv))?;
    }
    Ok(alpha)
}
