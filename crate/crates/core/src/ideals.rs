//! Finitely generated ideals of function germs at the origin.
//!
//! Membership is decided on jets: the `d`-jet of `f` lies in the span of the
//! `d`-jets of `x^b * f_i`. Once `d + 1` reaches the nilpotency order
//! (`m^N ⊆ I`) this is exact membership in the germ ideal.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::forms::PolyMap;
use crate::linalg::{kernel, rank, Echelon, PivotOrder, SparseVec};
use crate::poly::{Monomial, Poly, QuasiDegree, Weights, Q};

/// Default bound on the nilpotency-order search.
pub const DEFAULT_TRUNC_CAP: u32 = 24;

/// Largest free weight tried when the weight system has several degrees of
/// freedom.
const WEIGHT_GRID: u64 = 64;

/// Weights making every generator quasi-homogeneous, with the generators'
/// quasi-degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QhData {
    pub weights: Weights,
    pub degrees: Vec<u64>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FGIdeal {
    nvars: usize,
    gens: Vec<Poly>,
    qh: Option<QhData>,
    trunc_cap: u32,
}

/// Rank of the generators' linear parts and the common kernel of those
/// linear parts (the tangent space at 0 of a minimal smooth submanifold whose
/// ideal the given ideal contains).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmbeddingCodim {
    pub codim: usize,
    pub tangent_basis: Vec<Vec<Q>>,
}

impl EmbeddingCodim {
    /// Dimension of the minimal submanifold.
    pub fn dim(&self) -> usize {
        self.tangent_basis.len()
    }
}

impl FGIdeal {
    /// Validates the generators and looks for quasi-homogeneous weights in the
    /// given coordinates.
    pub fn new(nvars: usize, gens: Vec<Poly>) -> Result<Self> {
        if gens.is_empty() && nvars > 0 {
            return Err(Error::Malformed("ideal needs at least one generator".into()));
        }
        Self::validate(nvars, &gens)?;
        let qh = if gens.iter().any(Poly::is_zero) {
            None
        } else {
            find_weights(&gens).unwrap_or(None)
        };
        Ok(FGIdeal {
            nvars,
            gens,
            qh,
            trunc_cap: DEFAULT_TRUNC_CAP,
        })
    }

    /// As [`FGIdeal::new`] with prescribed weights, which must make every
    /// generator quasi-homogeneous.
    pub fn with_weights(nvars: usize, gens: Vec<Poly>, weights: Weights) -> Result<Self> {
        Self::validate(nvars, &gens)?;
        let mut degrees = Vec::with_capacity(gens.len());
        for g in &gens {
            match g.quasi_degree(&weights)? {
                QuasiDegree::Degree(d) => degrees.push(d),
                _ => return Err(Error::NotQuasiHomogeneous),
            }
        }
        Ok(FGIdeal {
            nvars,
            gens,
            qh: Some(QhData { weights, degrees }),
            trunc_cap: DEFAULT_TRUNC_CAP,
        })
    }

    fn validate(nvars: usize, gens: &[Poly]) -> Result<()> {
        for (i, g) in gens.iter().enumerate() {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
            if !g.constant_term().is_zero() {
                return Err(Error::GeneratorNotAtOrigin(i));
            }
        }
        Ok(())
    }

    /// Sets the largest jet degree searched for the nilpotency order.
    pub fn with_trunc_cap(mut self, cap: u32) -> Self {
        self.trunc_cap = cap;
        self
    }

    pub fn trunc_cap(&self) -> u32 {
        self.trunc_cap
    }

    /// [`FGIdeal::nilpotency_order`] at the ideal's own cap, as an error when
    /// the ideal is not zero-dimensional.
    pub fn nilpotency(&self) -> Result<u32> {
        self.nilpotency_order(self.trunc_cap)
            .ok_or(Error::NotZeroDimensional { cap: self.trunc_cap })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn qh(&self) -> Option<&QhData> {
        self.qh.as_ref()
    }

    pub fn weights(&self) -> Option<&Weights> {
        self.qh.as_ref().map(|d| &d.weights)
    }

    /// The `d`-jets of the ideal, ready for repeated membership queries.
    pub fn jets(&self, d: u32) -> IdealJets {
        IdealJets::new(self, d)
    }

    /// Smallest `N <= cap` with `m^N ⊆ I`.
    ///
    /// Checks degree-`N` monomials against `I + m^(N+1)`; by Nakayama's lemma
    /// `m^N ⊆ I + m^(N+1)` already forces `m^N ⊆ I`.
    pub fn nilpotency_order(&self, cap: u32) -> Option<u32> {
        if self.nvars == 0 {
            return Some(0);
        }
        // Each axis must carry a pure power of its variable.
        for i in 0..self.nvars {
            let on_axis = self.gens.iter().any(|g| {
                g.terms()
                    .keys()
                    .any(|m| m.exponents().iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
            });
            if !on_axis {
                return None;
            }
        }
        (1..=cap).find(|&n| {
            let jets = self.jets(n);
            Monomial::of_degree(self.nvars, n)
                .into_iter()
                .all(|m| jets.contains(&Poly::term(m, Q::one())))
        })
    }

    pub fn embedding_codim(&self) -> EmbeddingCodim {
        let linear: Vec<Vec<Q>> = self
            .gens
            .iter()
            .map(|g| {
                (0..self.nvars)
                    .map(|j| g.coeff(&Monomial::var(self.nvars, j)))
                    .collect()
            })
            .collect();
        let codim = rank(&linear);
        let columns: Vec<SparseVec<usize>> = (0..self.nvars)
            .map(|j| {
                linear
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| !row[j].is_zero())
                    .map(|(i, row)| (i, row[j].clone()))
                    .collect()
            })
            .collect();
        EmbeddingCodim {
            codim,
            tangent_basis: kernel(&columns),
        }
    }

    /// Appends `extra` new coordinates as generators, with weight 1.
    pub fn suspend(&self, extra: usize) -> FGIdeal {
        let n = self.nvars + extra;
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| g.extend_vars(n)).collect();
        gens.extend((self.nvars..n).map(|i| Poly::var(n, i)));
        let qh = self.qh.as_ref().map(|d| {
            let mut w = d.weights.as_slice().to_vec();
            w.resize(n, 1);
            let mut degrees = d.degrees.clone();
            degrees.resize(gens.len(), 1);
            QhData {
                weights: Weights::new(w).expect("extended primitive weights stay primitive"),
                degrees,
            }
        });
        FGIdeal {
            nvars: n,
            gens,
            qh,
            trunc_cap: self.trunc_cap,
        }
    }

    /// `I|_M` for `M` parametrized by `graph`: substitutes, truncates at
    /// `trunc` and drops generators that vanish.
    pub fn restrict_to_graph(&self, graph: &PolyMap, trunc: u32) -> Result<FGIdeal> {
        if graph.target_vars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: graph.target_vars(),
            });
        }
        let mut gens = Vec::new();
        for g in &self.gens {
            let r = graph.pull_function(g, Some(trunc))?;
            if !r.is_zero() {
                gens.push(r);
            }
        }
        let s = graph.source_vars();
        let qh = if gens.is_empty() {
            None
        } else {
            find_weights(&gens).unwrap_or(None)
        };
        Ok(FGIdeal {
            nvars: s,
            gens,
            qh,
            trunc_cap: self.trunc_cap,
        })
    }

    /// Renders the generator list, e.g. `<y^2, z^4>`.
    pub fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        let gens: Vec<String> = self.gens.iter().map(|g| g.render(names)).collect();
        format!("<{}>", gens.join(", "))
    }
}

/// Whether the `d`-jet of `f` lies in the `d`-jet of the ideal.
pub fn jet_membership(f: &Poly, ideal: &FGIdeal, d: u32) -> Result<bool> {
    if f.nvars() != ideal.nvars {
        return Err(Error::DimensionMismatch {
            expected: ideal.nvars,
            found: f.nvars(),
        });
    }
    Ok(ideal.jets(d).contains(f))
}

/// Echelon basis of `(I + m^(d+1)) / m^(d+1)`.
#[derive(Clone, Debug)]
pub struct IdealJets {
    nvars: usize,
    trunc: u32,
    basis: Echelon<Monomial>,
}

impl IdealJets {
    pub fn new(ideal: &FGIdeal, d: u32) -> Self {
        let mut basis = Echelon::new(PivotOrder::Largest);
        for g in &ideal.gens {
            let Some(ord) = g.order() else { continue };
            if ord > d {
                continue;
            }
            for m in Monomial::up_to_degree(ideal.nvars, d - ord) {
                let row = g.mul_monomial(&m).truncate(d as u64, None);
                basis.insert(row.terms());
            }
        }
        IdealJets {
            nvars: ideal.nvars,
            trunc: d,
            basis,
        }
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    /// Dimension of the jet of the ideal.
    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// Normal form of the `d`-jet of `f` modulo the ideal jets.
    pub fn reduce(&self, f: &Poly) -> Poly {
        let jet = f.truncate(self.trunc as u64, None);
        let r = self.basis.reduce(jet.terms());
        Poly::from_terms(self.nvars, r).expect("same variable count")
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    /// Echelon rows spanning the jet of the ideal.
    pub fn basis(&self) -> impl Iterator<Item = Poly> + '_ {
        self.basis
            .rows()
            .values()
            .map(|r| Poly::from_terms(self.nvars, r.clone()).expect("same variable count"))
    }
}

/// Finds positive integer weights making every generator quasi-homogeneous
/// in the given coordinates. `Ok(None)` when no positive solution exists.
///
/// Weights giving all generators the same quasi-degree are preferred when
/// they exist; otherwise only the per-generator constraints are imposed. Among
/// the admissible weights the lexicographically smallest primitive one is
/// returned.
pub fn find_weights(gens: &[Poly]) -> Result<Option<QhData>> {
    let Some(first) = gens.first() else {
        return Err(Error::Malformed("no generators".into()));
    };
    let n = first.nvars();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.nvars(),
            });
        }
        if g.is_zero() {
            return Err(Error::Malformed(format!("generator {i} is zero")));
        }
        let mut mons = g.terms().keys();
        let base = mons.next().expect("nonzero");
        rows.extend(mons.map(|m| exponent_difference(m, base)));
    }
    let first_base = first.terms().keys().next().expect("nonzero");
    let mut equalized = rows.clone();
    equalized.extend(
        gens[1..]
            .iter()
            .map(|g| exponent_difference(g.terms().keys().next().expect("nonzero"), first_base)),
    );

    let lambda = match solve_weight_system(n, &equalized) {
        Ok(Some(l)) => l,
        _ => match solve_weight_system(n, &rows)? {
            Some(l) => l,
            None => return Ok(None),
        },
    };
    let weights = Weights::primitive(lambda)?;
    let degrees = gens
        .iter()
        .map(|g| {
            g.quasi_degree(&weights)?
                .value()
                .ok_or(Error::NotQuasiHomogeneous)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(QhData { weights, degrees }))
}

fn exponent_difference(a: &Monomial, b: &Monomial) -> Vec<i64> {
    a.exponents()
        .iter()
        .zip(b.exponents())
        .map(|(&x, &y)| x as i64 - y as i64)
        .collect()
}

/// Lexicographically smallest positive integer `lambda` with
/// `row . lambda = 0` for every row.
fn solve_weight_system(n: usize, rows: &[Vec<i64>]) -> Result<Option<Vec<u64>>> {
    // Variables linked through a common constraint share a component;
    // components are solved independently.
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for row in rows {
        let vars: Vec<usize> = (0..n).filter(|&j| row[j] != 0).collect();
        for w in vars.windows(2) {
            let (a, b) = (root(&mut parent, w[0]), root(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let mut lambda = vec![0u64; n];
    for r in 0..n {
        let comp: Vec<usize> = (0..n).filter(|&j| root(&mut parent, j) == r).collect();
        if comp.is_empty() {
            continue;
        }
        let columns: Vec<SparseVec<usize>> = comp
            .iter()
            .map(|&j| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, row)| row[j] != 0)
                    .map(|(i, row)| (i, crate::poly::q(row[j])))
                    .collect()
            })
            .collect();
        let Some(sol) = smallest_positive_solution(&kernel(&columns))? else {
            return Ok(None);
        };
        for (&j, v) in comp.iter().zip(sol) {
            lambda[j] = v;
        }
    }
    Ok(Some(lambda))
}

/// Lexicographically smallest positive integer vector in the span of a
/// reduced kernel basis.
fn smallest_positive_solution(basis: &[Vec<Q>]) -> Result<Option<Vec<u64>>> {
    match basis.len() {
        0 => Ok(None),
        1 => {
            let v = &basis[0];
            let lcm = v.iter().fold(num_bigint::BigInt::one(), |l, c| l.lcm(c.denom()));
            let ints: Vec<num_bigint::BigInt> = v.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
            let g = ints.iter().fold(num_bigint::BigInt::zero(), |g, c| g.gcd(c));
            let sign = if ints.iter().all(|c| c.is_positive()) {
                1
            } else if ints.iter().all(|c| c.is_negative()) {
                -1
            } else {
                return Ok(None);
            };
            Ok(Some(
                ints.iter()
                    .map(|c| (c * num_bigint::BigInt::from(sign) / &g).to_u64().expect("weight fits in u64"))
                    .collect(),
            ))
        }
        k if k <= 3 => {
            // Reduced basis: vector j has a 1 at its free coordinate and the
            // other basis vectors vanish there, so free coordinates are the
            // scan parameters. Scaled to integers: lambda = sum(t_j B_j) / den.
            let n = basis[0].len();
            let den = basis
                .iter()
                .flatten()
                .fold(num_bigint::BigInt::one(), |l, c| l.lcm(c.denom()));
            let scaled: Option<Vec<Vec<i128>>> = basis
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|c| (c * Q::from_integer(den.clone())).to_integer().to_i128())
                        .collect()
                })
                .collect();
            let (Some(scaled), Some(den)) = (scaled, den.to_i128()) else {
                return Err(Error::WeightSearchTooLarge(k));
            };
            let mut best: Option<Vec<u64>> = None;
            let mut params = vec![1i128; k];
            loop {
                let cand: Vec<i128> = (0..n)
                    .map(|i| scaled.iter().zip(&params).map(|(b, &t)| b[i] * t).sum())
                    .collect();
                if cand.iter().all(|&c| c > 0 && c % den == 0) {
                    let v: Vec<u64> = cand.iter().map(|&c| (c / den) as u64).collect();
                    if best.as_ref().is_none_or(|b| v < *b) {
                        best = Some(v);
                    }
                }
                let mut i = 0;
                while i < k && params[i] == WEIGHT_GRID as i128 {
                    params[i] = 1;
                    i += 1;
                }
                if i == k {
                    break;
                }
                params[i] += 1;
            }
            Ok(best)
        }
        k => Err(Error::WeightSearchTooLarge(k)),
    }
}
