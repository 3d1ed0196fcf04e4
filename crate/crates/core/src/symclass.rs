//! Symplectic classification of the zero-dimensional ICIS catalog.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{DiffForm, PolyMap, VectorField};
use crate::ideals::FGIdeal;
use crate::linalg::{kernel, rank, Echelon, PivotOrder, SparseVec};
use crate::poly::{Monomial, Poly, Q};
use crate::restrictions::{AlgRestriction, RestrictionSpace};

/// A closed 2-form on `C^{2n}`, nondegenerate at the origin. Coordinates are
/// ordered `p_1..p_n, q_1..q_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticForm {
    form: DiffForm,
    n: usize,
}

impl SymplecticForm {
    pub fn new(form: DiffForm) -> Result<Self> {
        if form.degree() != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: form.degree(),
            });
        }
        if !form.nvars().is_multiple_of(2) {
            return Err(Error::NotSymplectic("odd dimension".into()));
        }
        if !form.d().is_zero() {
            return Err(Error::NotSymplectic("not closed".into()));
        }
        if rank(&form.constant_matrix()?) != form.nvars() {
            return Err(Error::NotSymplectic("degenerate at the origin".into()));
        }
        let n = form.nvars() / 2;
        Ok(SymplecticForm { form, n })
    }

    /// `sum dp_i ^ dq_i`.
    pub fn standard(n: usize) -> Self {
        let m = 2 * n;
        let mut form = DiffForm::zero(m, 2);
        for i in 0..n {
            let t = DiffForm::monomial(m, &[i, n + i], Poly::one(m)).expect("valid indices");
            form = form.checked_add(&t).expect("same space");
        }
        SymplecticForm { form, n }
    }

    pub fn form(&self) -> &DiffForm {
        &self.form
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// `p1..pn, q1..qn`.
pub fn symplectic_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("p{i}"))
        .chain((1..=n).map(|i| format!("q{i}")))
        .collect()
}

/// A form and an ideal transported to a smooth submanifold `M` with
/// `I(M) ⊆ I`, parametrized as a graph over the free coordinates.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub form: DiffForm,
    pub ideal: FGIdeal,
    pub graph: PolyMap,
    /// Original indices of the coordinates parametrizing `M`.
    pub free: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum LinKey {
    Var(usize),
    Tag(usize),
}

/// Solves the generators with independent linear parts for the leftmost
/// possible variables, then pulls `omega` and `ideal` back to the graph.
pub fn reduce_to_submanifold(omega: &DiffForm, ideal: &FGIdeal) -> Result<Reduction> {
    let m = ideal.nvars();
    if omega.nvars() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: omega.nvars(),
        });
    }
    let t = ideal.nilpotency()?;

    let mut ech: Echelon<LinKey> = Echelon::new(PivotOrder::Smallest);
    for (j, g) in ideal.generators().iter().enumerate() {
        let mut v: SparseVec<LinKey> = (0..m)
            .map(|i| (LinKey::Var(i), g.coeff(&Monomial::var(m, i))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        v.insert(LinKey::Tag(j), Q::one());
        ech.insert(&v);
    }
    ech.fully_reduce();

    // each dependent variable with the generator combination solved for it
    let mut solved: Vec<(usize, Poly)> = Vec::new();
    for (k, row) in ech.rows() {
        let LinKey::Var(d) = k else { continue };
        let mut g = Poly::zero(m);
        for (key, c) in row {
            if let LinKey::Tag(j) = key {
                g = &g + &ideal.generators()[*j].scale(c);
            }
        }
        solved.push((*d, g));
    }
    let dependent: Vec<usize> = solved.iter().map(|(d, _)| *d).collect();
    let free: Vec<usize> = (0..m).filter(|i| !dependent.contains(i)).collect();
    let r = free.len();

    let mut subs: Vec<Poly> = vec![Poly::zero(r); m];
    for (k, &i) in free.iter().enumerate() {
        subs[i] = Poly::var(r, k);
    }
    // x_d = x_d - g(x) is a contraction on jets: each pass fixes one degree
    for _ in 0..=t {
        let mut next = subs.clone();
        for (d, g) in &solved {
            let rest = &Poly::var(m, *d) - g;
            next[*d] = rest.compose(&subs, r, Some(t))?;
        }
        subs = next;
    }
    let graph = PolyMap::new(r, subs)?;
    let form = omega.pullback(&graph, t)?;
    let reduced = ideal.restrict_to_graph(&graph, t)?;
    Ok(Reduction {
        form,
        ideal: reduced,
        graph,
        free,
    })
}

/// Jets of degree `<= trunc` of vector fields `X` with `X(I) ⊆ I`.
pub fn derlog(ideal: &FGIdeal, trunc: u32) -> Result<Vec<VectorField>> {
    let n = ideal.nvars();
    let nil = ideal.nilpotency()?;
    let jets = ideal.jets(nil);
    let gens = ideal.generators();
    let partials: Vec<Vec<Poly>> = gens
        .iter()
        .map(|g| (0..n).map(|i| g.derivative(i)).collect())
        .collect();
    let monos = Monomial::up_to_degree(n, trunc);
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    let mut images: Vec<SparseVec<(usize, Monomial)>> = Vec::new();
    for i in 0..n {
        for mono in &monos {
            let mut img = SparseVec::new();
            for (j, dg) in partials.iter().enumerate() {
                let r = jets.reduce(&dg[i].mul_monomial(mono));
                for (k, c) in r.terms() {
                    img.insert((j, k.clone()), c.clone());
                }
            }
            unknowns.push((i, mono.clone()));
            images.push(img);
        }
    }
    Ok(kernel(&images)
        .into_iter()
        .map(|coeffs| {
            let mut comps = vec![Poly::zero(n); n];
            for ((i, mono), c) in unknowns.iter().zip(coeffs) {
                if !c.is_zero() {
                    comps[*i] = &comps[*i] + &Poly::term(mono.clone(), c);
                }
            }
            VectorField::new(comps).expect("components in n variables")
        })
        .collect())
}

/// Codimension of the orbit of `ar` under symmetries of its ideal: the
/// quotient dimension minus the rank of `{[L_X ω] : X ∈ Derlog}`.
pub fn symplectic_multiplicity(ar: &AlgRestriction<'_>) -> Result<usize> {
    let space = ar.space();
    let ideal = space.ideal();
    if ideal.weights().is_none() {
        return Err(Error::NotQuasiHomogeneous);
    }
    let omega = ar.representative();
    let mut tangent: Vec<Vec<Q>> = Vec::new();
    for x in derlog(ideal, space.trunc() + 1)? {
        let lx = omega.lie_derivative(&x)?;
        tangent.push(space.reduce(&lx)?.into_coords());
    }
    Ok(space.dimension() - rank(&tangent))
}

/// Index of isotropy.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Iota {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Iota {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Iota::Finite(k) => write!(f, "{k}"),
            Iota::Infinite => write!(f, "inf"),
        }
    }
}

/// Maximal vanishing order of a closed representative of `ar`.
pub fn index_of_isotropy(ar: &AlgRestriction<'_>) -> Result<Iota> {
    Ok(
        match ar.space().closed_vanishing_order(&ar.representative())? {
            Some(k) => Iota::Finite(k),
            None => Iota::Infinite,
        },
    )
}

/// Whether `ar`, computed on a reduced problem, is the restriction of a
/// symplectic form on `C^{2n}` whose ideal is `full`.
pub fn realizable(ar: &AlgRestriction<'_>, full: &FGIdeal, n: usize) -> Result<bool> {
    if full.nvars() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            found: full.nvars(),
        });
    }
    let r = 2 * n - full.embedding_codim().codim;
    let theta = ar.representative();
    if theta.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: theta.degree(),
        });
    }
    let omega0 = theta.constant_matrix()?;
    let tangent = ar.space().ideal().embedding_codim().tangent_basis;
    let restricted: Vec<Vec<Q>> = tangent
        .iter()
        .map(|u| {
            tangent
                .iter()
                .map(|v| {
                    let mut s = Q::zero();
                    for (i, ui) in u.iter().enumerate() {
                        for (j, vj) in v.iter().enumerate() {
                            s += ui * &omega0[i][j] * vj;
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    Ok(rank(&restricted) as i64 >= 2 * r as i64 - 2 * n as i64)
}

/// The five V-simple families of map germs `C^2 -> C^2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Family {
    Iab,
    I2a1,
    I2a4,
    Ia5,
    I10Star,
}

/// Family parameters; unused ones are `None`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Default)]
pub struct Params {
    pub a: Option<u32>,
    pub b: Option<u32>,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Iab,
        Family::I2a1,
        Family::I2a4,
        Family::Ia5,
        Family::I10Star,
    ];

    /// Identifier used on the command line and in JSON.
    pub fn id(self) -> &'static str {
        match self {
            Family::Iab => "Iab",
            Family::I2a1 => "I2a+1",
            Family::I2a4 => "I2a+4",
            Family::Ia5 => "Ia+5",
            Family::I10Star => "I10star",
        }
    }

    /// Mathematical label, e.g. `I_{a+5}`.
    pub fn label(self) -> &'static str {
        match self {
            Family::Iab => "I_{a,b}",
            Family::I2a1 => "I_{2a+1}",
            Family::I2a4 => "I_{2a+4}",
            Family::Ia5 => "I_{a+5}",
            Family::I10Star => "I*_{10}",
        }
    }

    /// Dimension of the space of restrictions of closed 2-forms.
    pub fn quotient_dim(self) -> usize {
        match self {
            Family::Iab => 1,
            Family::I2a1 | Family::I2a4 | Family::Ia5 => 2,
            Family::I10Star => 3,
        }
    }

    pub fn num_classes(self) -> usize {
        self.quotient_dim() + 1
    }

    /// Checks the parameter constraints of the family.
    pub fn validate(self, params: Params) -> Result<Params> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match (self, params.a, params.b) {
            (Family::Iab, Some(a), Some(b)) if a >= b && b >= 2 => Ok(params),
            (Family::Iab, Some(a), Some(b)) => bad(format!("I_{{a,b}} needs a >= b >= 2, got a={a}, b={b}")),
            (Family::Iab, _, _) => bad("I_{a,b} needs both a and b".into()),
            (Family::I10Star, None, None) => Ok(params),
            (Family::I10Star, _, _) => bad("I*_{10} takes no parameters".into()),
            (f, Some(a), None) => {
                let min = match f {
                    Family::I2a1 => 3,
                    Family::I2a4 => 2,
                    _ => 4,
                };
                if a >= min {
                    Ok(params)
                } else {
                    bad(format!("{} needs a >= {min}, got a={a}", f.label()))
                }
            }
            (f, _, _) => bad(format!("{} takes exactly the parameter a", f.label())),
        }
    }

    /// The two generators with `y`, `z` substituted.
    pub fn template(self, params: Params, y: &Poly, z: &Poly) -> [Poly; 2] {
        let a = params.a.unwrap_or(0);
        let b = params.b.unwrap_or(0);
        match self {
            Family::Iab => [y * z, &y.pow(a) + &z.pow(b)],
            Family::I2a1 => [&y.pow(2) + &z.pow(3), z.pow(a)],
            Family::I2a4 => [&y.pow(2) + &z.pow(3), y * &z.pow(a)],
            Family::Ia5 => [&y.pow(2) + &z.pow(a), y * &z.pow(2)],
            Family::I10Star => [y.pow(2), z.pow(4)],
        }
    }

    /// Normal form of symplectic class `k` on `C^{2n}`.
    pub fn normal_form(self, params: Params, n: usize, k: usize) -> Result<Vec<Poly>> {
        self.validate(params)?;
        if n == 0 || k >= self.num_classes() || (k > 0 && n < 2) {
            return Err(Error::InvalidParameters(format!(
                "{} has no class {k} for n = {n}",
                self.label()
            )));
        }
        let m = 2 * n;
        let p = |i: usize| Poly::var(m, i - 1);
        let qv = |i: usize| Poly::var(m, n + i - 1);
        let mut gens = Vec::with_capacity(m);
        if k == 0 {
            gens.extend(self.template(params, &p(1), &qv(1)));
            for i in 2..=n {
                gens.push(p(i));
                gens.push(qv(i));
            }
        } else {
            gens.extend(self.template(params, &p(1), &p(2)));
            gens.push(qv(1));
            if k == self.quotient_dim() {
                gens.push(qv(2));
            } else {
                gens.push(&qv(2) + &(&p(1) * &p(2).pow(k as u32)));
            }
            for i in 3..=n {
                gens.push(p(i));
                gens.push(qv(i));
            }
        }
        Ok(gens)
    }

    /// Class label such as `I_{a+5}^2`.
    pub fn class_label(self, k: usize) -> String {
        format!("{}^{k}", self.label())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Iab" | "I_{a,b}" => Ok(Family::Iab),
            "I2a+1" | "I2a1" | "I_{2a+1}" => Ok(Family::I2a1),
            "I2a+4" | "I2a4" | "I_{2a+4}" => Ok(Family::I2a4),
            "Ia+5" | "Ia5" | "I_{a+5}" => Ok(Family::Ia5),
            "I10star" | "I10*" | "I*_{10}" => Ok(Family::I10Star),
            _ => Err(Error::InvalidParameters(format!("unknown family {s:?}"))),
        }
    }
}

/// Matches a two-variable ideal against the catalog templates, trying both
/// coordinate assignments and both generator orders.
pub fn recognize(ideal: &FGIdeal) -> Result<(Family, Params)> {
    let unrecognized = || Error::UnrecognizedIdeal(ideal.render(&["u", "v"]));
    if ideal.nvars() != 2 || ideal.generators().len() != 2 {
        return Err(unrecognized());
    }
    let gens = ideal.generators();
    let top = gens.iter().filter_map(Poly::degree).max().unwrap_or(0);
    let (u, v) = (Poly::var(2, 0), Poly::var(2, 1));
    for family in Family::ALL {
        let candidates: Vec<Params> = match family {
            Family::I10Star => vec![Params::default()],
            Family::Iab => (2..=top)
                .flat_map(|a| (2..=a).map(move |b| Params { a: Some(a), b: Some(b) }))
                .collect(),
            _ => (2..=top).map(|a| Params { a: Some(a), b: None }).collect(),
        };
        for params in candidates {
            if family.validate(params).is_err() {
                continue;
            }
            for (y, z) in [(&u, &v), (&v, &u)] {
                let t = family.template(params, y, z);
                if (gens[0] == t[0] && gens[1] == t[1]) || (gens[0] == t[1] && gens[1] == t[0]) {
                    return Ok((family, params));
                }
            }
        }
    }
    Err(unrecognized())
}

/// One symplectic class of a catalog family.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassRecord {
    pub family: Family,
    pub params: Params,
    pub n: usize,
    pub class_index: usize,
    pub normal_form: Vec<Poly>,
    pub cod: usize,
    pub mu: usize,
    pub iota: Iota,
    pub realizable: bool,
    /// Coordinates of the reduced restriction in the quotient basis.
    pub coords: Vec<Q>,
}

impl ClassRecord {
    pub fn label(&self) -> String {
        self.family.class_label(self.class_index)
    }
}

/// Discrete invariants of a restriction on a reduced problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Invariants {
    pub coords: Vec<Q>,
    pub mu: usize,
    pub iota: Iota,
    pub realizable: bool,
}

/// Reduces `omega` to a minimal submanifold and computes the invariants of
/// its closed restriction. `full` must live on `C^{2n}`.
pub fn invariants(omega: &DiffForm, full: &FGIdeal, n: usize) -> Result<(Reduction, Invariants)> {
    let red = reduce_to_submanifold(omega, full)?;
    let space = RestrictionSpace::build(&red.ideal, 2, true)?;
    let ar = space.reduce(&red.form)?;
    let inv = Invariants {
        mu: symplectic_multiplicity(&ar)?,
        iota: index_of_isotropy(&ar)?,
        realizable: realizable(&ar, full, n)?,
        coords: ar.into_coords(),
    };
    Ok((red, inv))
}

/// Classifies the germ of `ideal` on the symplectic space `(C^{2n}, omega)`.
pub fn classify(omega: &SymplecticForm, ideal: &FGIdeal) -> Result<ClassRecord> {
    let n = omega.n();
    if ideal.nvars() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            found: ideal.nvars(),
        });
    }
    let red = reduce_to_submanifold(omega.form(), ideal)?;
    let (family, params) = recognize(&red.ideal)?;
    let (_, inv) = invariants(omega.form(), ideal, n)?;
    let class_index = inv
        .coords
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(inv.coords.len());
    if !inv.realizable || (n == 1 && class_index > 0) {
        return Err(Error::NotRealizable);
    }
    Ok(ClassRecord {
        family,
        params,
        n,
        class_index,
        normal_form: family.normal_form(params, n, class_index)?,
        cod: inv.mu,
        mu: inv.mu,
        iota: inv.iota,
        realizable: inv.realizable,
        coords: inv.coords,
    })
}

/// All classes of a family on `C^{2n}`, each obtained by classifying its own
/// normal form under the standard symplectic form.
pub fn table_rows(family: Family, params: Params, n: usize) -> Result<Vec<ClassRecord>> {
    let params = family.validate(params)?;
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let omega = SymplecticForm::standard(n);
    let classes = if n == 1 { 1 } else { family.num_classes() };
    let mut rows = Vec::with_capacity(classes);
    for k in 0..classes {
        let ideal = FGIdeal::new(2 * n, family.normal_form(params, n, k)?)?;
        let rec = classify(&omega, &ideal)?;
        assert_eq!(
            (rec.family, rec.class_index),
            (family, k),
            "normal form of class {k} classified as {}",
            rec.label()
        );
        rows.push(rec);
    }
    Ok(rows)
}

/// Remarks attached to a printed table.
pub fn table_notes(family: Family) -> Vec<String> {
    let mut notes = vec!["cod is reported equal to mu_sympl".to_string()];
    if family == Family::Ia5 {
        notes.push("the third I_{a+5} class is labelled I_{a+5}^2, matching its codimension".into());
    }
    notes
}

/// Coordinate Lagrangian planes `{x_{c_1} = ... = x_{c_n} = 0}`, one of `p_i`,
/// `q_i` per `i`, whose vanishing ideal lies in `ideal`.
pub fn coordinate_lagrangians_in(ideal: &FGIdeal, n: usize) -> Result<Vec<Vec<usize>>> {
    if ideal.nvars() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            found: ideal.nvars(),
        });
    }
    let nil = ideal.nilpotency()?;
    let jets = ideal.jets(nil);
    let member: Vec<bool> = (0..2 * n).map(|i| jets.contains(&Poly::var(2 * n, i))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        let coords: Vec<usize> = (0..n)
            .map(|i| if mask >> i & 1 == 1 { i } else { n + i })
            .collect();
        if coords.iter().all(|&c| member[c]) {
            out.push(coords);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn mono(e: &[u32]) -> Poly {
        Poly::term(Monomial::new(e.to_vec()), q(1))
    }

    fn i10star() -> FGIdeal {
        FGIdeal::new(2, vec![mono(&[2, 0]), mono(&[0, 4])]).unwrap()
    }

    fn dydz(f: Poly) -> DiffForm {
        DiffForm::monomial(2, &[0, 1], f).unwrap()
    }

    #[test]
    fn symplectic_form_checks() {
        let w = SymplecticForm::standard(2);
        assert_eq!(w.form().render(&symplectic_names(2)), "dp1^dq1 + dp2^dq2");
        assert!(SymplecticForm::new(dydz(mono(&[1, 0]))).is_err());
        let non_closed = DiffForm::monomial(3, &[0, 1], mono(&[0, 0, 1])).unwrap();
        assert!(SymplecticForm::new(non_closed).is_err());
    }

    #[test]
    fn reduction_examples() {
        let w = SymplecticForm::standard(2);
        let p1 = Poly::var(4, 0);
        let p2 = Poly::var(4, 1);
        let ideal = FGIdeal::new(
            4,
            vec![p1.pow(2), p2.pow(4), Poly::var(4, 2), &Poly::var(4, 3) + &(&p1 * &p2)],
        )
        .unwrap();
        let red = reduce_to_submanifold(w.form(), &ideal).unwrap();
        assert_eq!(red.free, vec![0, 1]);
        assert_eq!(red.form, dydz(mono(&[0, 1])));
        assert_eq!(red.ideal.generators(), i10star().generators());
        assert_eq!(red.graph.components()[3], -&mono(&[1, 1]));

        let ideal = FGIdeal::new(4, vec![p1.pow(2), p2.pow(4), Poly::var(4, 2), Poly::var(4, 3)]).unwrap();
        let red = reduce_to_submanifold(w.form(), &ideal).unwrap();
        assert!(red.form.is_zero());
        assert_eq!(red.form.degree(), 2);

        let red = reduce_to_submanifold(SymplecticForm::standard(1).form(), &i10star()).unwrap();
        assert_eq!(red.form, dydz(Poly::one(2)));
        assert_eq!(red.graph, PolyMap::identity(2));
    }

    #[test]
    fn nonlinear_graph_is_solved() {
        // x2 + x0^2 + x2^2 = 0 solved to order 4 on <x0^3, x1^3, ...>
        let g = &(&Poly::var(3, 2) + &mono(&[2, 0, 0])) + &mono(&[0, 0, 2]);
        let ideal = FGIdeal::new(3, vec![mono(&[3, 0, 0]), mono(&[0, 3, 0]), g.clone()]).unwrap();
        let t = ideal.nilpotency_order(24).unwrap();
        let red = reduce_to_submanifold(&DiffForm::zero(3, 2), &ideal).unwrap();
        let back = red.graph.pull_function(&g, Some(t)).unwrap();
        assert!(back.is_zero());
    }

    #[test]
    fn derlog_examples() {
        let i = i10star();
        let fields = derlog(&i, 5).unwrap();
        let span_contains = |x: &VectorField| {
            let mut e: Echelon<(usize, Monomial)> = Echelon::new(PivotOrder::Largest);
            let key = |v: &VectorField| -> SparseVec<(usize, Monomial)> {
                v.components()
                    .iter()
                    .enumerate()
                    .flat_map(|(i, c)| c.terms().iter().map(move |(m, k)| ((i, m.clone()), k.clone())))
                    .collect()
            };
            for f in &fields {
                e.insert(&key(f));
            }
            e.contains(&key(x))
        };
        let y_dy = VectorField::new(vec![mono(&[1, 0]), Poly::zero(2)]).unwrap();
        assert!(span_contains(&y_dy));
        assert!(span_contains(&VectorField::euler(i.weights().unwrap())));
        let z_dy = VectorField::new(vec![mono(&[0, 1]), Poly::zero(2)]).unwrap();
        assert!(!span_contains(&z_dy));

        let ia5 = FGIdeal::new(2, vec![&mono(&[2, 0]) + &mono(&[0, 4]), mono(&[1, 2])]).unwrap();
        // primitive weights (2, 1); 4y d/dy + 2z d/dz is twice the Euler field
        let e = VectorField::euler(ia5.weights().unwrap()).scale(&q(2));
        assert_eq!(e.components()[0], mono(&[1, 0]).scale(&q(4)));
        assert_eq!(e.components()[1], mono(&[0, 1]).scale(&q(2)));
        let jets = ia5.jets(ia5.nilpotency_order(24).unwrap());
        for x in [e.clone(), e.mul_poly(&Poly::var(2, 1))] {
            for g in ia5.generators() {
                assert!(jets.contains(&x.apply(g).unwrap()));
            }
        }

        let max = FGIdeal::new(2, vec![Poly::var(2, 0), Poly::var(2, 1)]).unwrap();
        // all fields vanishing at 0 of degree <= 2: 2 * (2 + 3)
        assert_eq!(derlog(&max, 2).unwrap().len(), 10);
    }

    #[test]
    fn i10star_invariants() {
        let s = RestrictionSpace::build(&i10star(), 2, true).unwrap();
        let expect = [(0, Iota::Finite(0)), (1, Iota::Finite(1)), (2, Iota::Finite(2))];
        for (k, (mu, iota)) in expect.into_iter().enumerate() {
            let w = dydz(Poly::term(Monomial::new(vec![0, k as u32]), q(1)));
            let ar = s.reduce(&w).unwrap();
            assert_eq!(symplectic_multiplicity(&ar).unwrap(), mu);
            assert_eq!(index_of_isotropy(&ar).unwrap(), iota);
        }
        let zero = s.reduce(&DiffForm::zero(2, 2)).unwrap();
        assert_eq!(symplectic_multiplicity(&zero).unwrap(), 3);
        assert_eq!(index_of_isotropy(&zero).unwrap(), Iota::Infinite);
    }

    #[test]
    fn realizability() {
        let s = RestrictionSpace::build(&i10star(), 2, true).unwrap();
        let full1 = i10star();
        let full2 = i10star().suspend(2);
        for (coords, n1) in [([0, 1, 0], false), ([1, 0, 0], true), ([0, 0, 0], false)] {
            let w = s.representative(&coords.map(q));
            let ar = s.reduce(&w).unwrap();
            assert_eq!(realizable(&ar, &full1, 1).unwrap(), n1);
            assert!(realizable(&ar, &full2, 2).unwrap());
        }
    }

    #[test]
    fn family_constraints() {
        let p = |a: Option<u32>, b: Option<u32>| Params { a, b };
        assert!(Family::Iab.validate(p(Some(2), Some(2))).is_ok());
        assert!(Family::Iab.validate(p(Some(2), Some(3))).is_err());
        assert!(Family::I2a1.validate(p(Some(2), None)).is_err());
        assert!(Family::I2a4.validate(p(Some(2), None)).is_ok());
        assert!(Family::Ia5.validate(p(Some(3), None)).is_err());
        assert!(Family::I10Star.validate(p(None, None)).is_ok());
        assert!(Family::I10Star.validate(p(Some(1), None)).is_err());
        for f in Family::ALL {
            assert_eq!(f.id().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn recognizes_both_orientations() {
        let swapped = FGIdeal::new(2, vec![mono(&[0, 2]), mono(&[4, 0])]).unwrap();
        assert_eq!(recognize(&swapped).unwrap().0, Family::I10Star);
        let iab = FGIdeal::new(2, vec![&mono(&[2, 0]) + &mono(&[0, 3]), mono(&[1, 1])]).unwrap();
        let (f, params) = recognize(&iab).unwrap();
        assert_eq!((f, params.a, params.b), (Family::Iab, Some(3), Some(2)));
        let other = FGIdeal::new(2, vec![mono(&[2, 0]), mono(&[0, 5])]).unwrap();
        assert!(matches!(recognize(&other), Err(Error::UnrecognizedIdeal(_))));
    }

    #[test]
    fn classify_examples() {
        let w2 = SymplecticForm::standard(2);
        let nf = |k| FGIdeal::new(4, Family::I10Star.normal_form(Params::default(), 2, k).unwrap()).unwrap();
        let r = classify(&w2, &nf(1)).unwrap();
        assert_eq!((r.class_index, r.cod, r.mu, r.iota), (1, 1, 1, Iota::Finite(1)));
        let r = classify(&w2, &nf(2)).unwrap();
        assert_eq!((r.class_index, r.cod, r.mu, r.iota), (2, 2, 2, Iota::Finite(2)));

        let w1 = SymplecticForm::standard(1);
        let p1 = Poly::var(2, 0);
        let q1 = Poly::var(2, 1);
        let i22 = FGIdeal::new(2, vec![&p1 * &q1, &p1.pow(2) + &q1.pow(2)]).unwrap();
        let r = classify(&w1, &i22).unwrap();
        assert_eq!((r.family, r.class_index, r.mu, r.iota), (Family::Iab, 0, 0, Iota::Finite(0)));
    }

    #[test]
    fn table_examples() {
        let rows = table_rows(Family::I10Star, Params::default(), 2).unwrap();
        let mu: Vec<usize> = rows.iter().map(|r| r.mu).collect();
        let iota: Vec<Iota> = rows.iter().map(|r| r.iota).collect();
        assert_eq!(mu, vec![0, 1, 2, 3]);
        assert_eq!(
            iota,
            vec![Iota::Finite(0), Iota::Finite(1), Iota::Finite(2), Iota::Infinite]
        );
        let rows = table_rows(Family::Ia5, Params { a: Some(4), b: None }, 2).unwrap();
        let got: Vec<(usize, Iota)> = rows.iter().map(|r| (r.mu, r.iota)).collect();
        assert_eq!(got, vec![(0, Iota::Finite(0)), (1, Iota::Finite(1)), (2, Iota::Infinite)]);
        let rows = table_rows(Family::Iab, Params { a: Some(2), b: Some(2) }, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].class_index, 0);
    }

    #[test]
    fn lagrangian_containment() {
        let nf = |k| FGIdeal::new(4, Family::I10Star.normal_form(Params::default(), 2, k).unwrap()).unwrap();
        assert_eq!(coordinate_lagrangians_in(&nf(3), 2).unwrap(), vec![vec![2, 3]]);
        for k in 0..3 {
            assert!(coordinate_lagrangians_in(&nf(k), 2).unwrap().is_empty());
        }
    }
}
