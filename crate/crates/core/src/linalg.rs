//! Exact sparse row reduction over the rationals.
//!
//! Vectors are `BTreeMap`s from an ordered key type to nonzero rationals, so
//! the same machinery handles polynomial jets (keyed by monomial), form jets
//! (keyed by monomial and differential index set) and plain column indices.

use std::collections::BTreeMap;
use std::ops::Bound;

use num_traits::{One, Zero};

use crate::poly::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

/// Which end of a row carries its pivot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PivotOrder {
    Largest,
    Smallest,
}

/// `acc -= c * row`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(acc: &mut SparseVec<K>, c: &Q, row: &SparseVec<K>) {
    for (k, v) in row {
        let delta = c * v;
        match acc.get_mut(k) {
            Some(x) => {
                *x -= delta;
                if x.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                acc.insert(k.clone(), -delta);
            }
        }
    }
}

/// A row-echelon basis. Each row is normalized to coefficient one at its
/// pivot, and every other key of the row lies strictly on the far side of the
/// pivot (below it for [`PivotOrder::Largest`]). Rows are not necessarily
/// fully reduced against each other until [`Echelon::fully_reduce`] is called.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    order: PivotOrder,
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(order: PivotOrder) -> Self {
        Echelon {
            order,
            rows: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> PivotOrder {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    /// Rows keyed by pivot, ascending.
    pub fn rows(&self) -> &BTreeMap<K, SparseVec<K>> {
        &self.rows
    }

    fn next_pivot_hit(&self, r: &SparseVec<K>, cursor: Option<&K>) -> Option<(K, Q)> {
        let hit = |(k, c): (&K, &Q)| {
            if self.rows.contains_key(k) {
                Some((k.clone(), c.clone()))
            } else {
                None
            }
        };
        match (self.order, cursor) {
            (PivotOrder::Largest, None) => r.iter().rev().find_map(hit),
            (PivotOrder::Largest, Some(c)) => r.range(..c.clone()).rev().find_map(hit),
            (PivotOrder::Smallest, None) => r.iter().find_map(hit),
            (PivotOrder::Smallest, Some(c)) => r
                .range((Bound::Excluded(c.clone()), Bound::Unbounded))
                .find_map(hit),
        }
    }

    /// Reduces `v` against the basis. Returns the remainder, which contains no
    /// pivot key, and the multiplier used for each row: `v = sum(m_k * row_k) +
    /// remainder`.
    pub fn reduce_tracking(&self, v: &SparseVec<K>) -> (SparseVec<K>, Vec<(K, Q)>) {
        let mut r = v.clone();
        let mut used = Vec::new();
        let mut cursor: Option<K> = None;
        while let Some((k, c)) = self.next_pivot_hit(&r, cursor.as_ref()) {
            axpy(&mut r, &c, &self.rows[&k]);
            used.push((k.clone(), c));
            cursor = Some(k);
        }
        (r, used)
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        self.reduce_tracking(v).0
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    fn pivot_key(&self, v: &SparseVec<K>) -> Option<K> {
        match self.order {
            PivotOrder::Largest => v.keys().next_back().cloned(),
            PivotOrder::Smallest => v.keys().next().cloned(),
        }
    }

    /// Adds `v` to the span. Returns `false` when it was already contained.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some(p) = self.pivot_key(&r) else {
            return false;
        };
        let inv = Q::one() / &r[&p];
        let row: SparseVec<K> = r.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.rows.insert(p, row);
        true
    }

    /// Brings the basis to reduced row-echelon form: no row contains another
    /// row's pivot.
    pub fn fully_reduce(&mut self) {
        let pivots: Vec<K> = match self.order {
            PivotOrder::Largest => self.rows.keys().cloned().collect(),
            PivotOrder::Smallest => self.rows.keys().rev().cloned().collect(),
        };
        for p in pivots {
            let mut tail = self.rows.remove(&p).expect("pivot present");
            tail.remove(&p);
            let mut row = self.reduce(&tail);
            row.insert(p.clone(), Q::one());
            self.rows.insert(p, row);
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Augmented<K> {
    Tag(usize),
    Image(K),
}

/// Basis of the kernel of the linear map sending the `j`-th unknown to
/// `images[j]`. Each kernel vector is dense over the unknowns.
pub fn kernel<K: Ord + Clone>(images: &[SparseVec<K>]) -> Vec<Vec<Q>> {
    let mut ech: Echelon<Augmented<K>> = Echelon::new(PivotOrder::Largest);
    for (j, img) in images.iter().enumerate() {
        let mut v: SparseVec<Augmented<K>> = img
            .iter()
            .map(|(k, c)| (Augmented::Image(k.clone()), c.clone()))
            .collect();
        v.insert(Augmented::Tag(j), Q::one());
        ech.insert(&v);
    }
    ech.fully_reduce();
    ech.rows()
        .iter()
        .filter(|(p, _)| matches!(p, Augmented::Tag(_)))
        .map(|(_, row)| {
            let mut dense = vec![Q::zero(); images.len()];
            for (k, c) in row {
                if let Augmented::Tag(j) = k {
                    dense[*j] = c.clone();
                }
            }
            dense
        })
        .collect()
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut ech: Echelon<usize> = Echelon::new(PivotOrder::Largest);
    for r in rows {
        let v: SparseVec<usize> = r
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        ech.insert(&v);
    }
    ech.rank()
}
