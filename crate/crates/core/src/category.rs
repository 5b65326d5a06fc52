//! The finite full subcategory `FI^m_{≤t}` and its category algebra.

use std::fmt;

use crate::error::{usage, Result};
use crate::fi::{enumerate_morphisms, FimObject, Generator, MorTuple};
use crate::linalg::{BasisExtension, Rat, RatMatrix, Subspace};
use crate::module::FunctorModule;

/// The bound `t` of a truncation; the category has all objects `S ≤ t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Truncation(FimObject);

impl Truncation {
    pub fn new(bound: Vec<usize>) -> Self {
        assert!(!bound.is_empty(), "arity must be at least 1");
        Truncation(FimObject(bound))
    }

    pub fn bound(&self) -> &FimObject {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.arity()
    }

    pub fn contains(&self, s: &FimObject) -> bool {
        s.le(&self.0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Truncation) -> bool {
        self.0.le(&other.0)
    }

    pub fn object_count(&self) -> usize {
        self.0 .0.iter().map(|&t| t + 1).product()
    }

    /// Position of `s` in the lexicographic object order.
    pub fn index_of(&self, s: &FimObject) -> Option<usize> {
        if !self.contains(s) {
            return None;
        }
        Some(
            s.0.iter()
                .zip(&self.0 .0)
                .fold(0, |acc, (&x, &t)| acc * (t + 1) + x),
        )
    }

    pub fn object(&self, mut idx: usize) -> FimObject {
        let m = self.m();
        let mut parts = vec![0; m];
        for i in (0..m).rev() {
            let r = self.0 .0[i] + 1;
            parts[i] = idx % r;
            idx /= r;
        }
        FimObject(parts)
    }

    /// All objects `S ≤ t` in lexicographic order. Lex order refines `≤`.
    pub fn objects(&self) -> Vec<FimObject> {
        (0..self.object_count()).map(|k| self.object(k)).collect()
    }

    /// The canonical generator list: objects in order, and for each object
    /// the output of [`Generator::all_from`].
    pub fn generators(&self) -> Vec<Generator> {
        self.objects()
            .iter()
            .flat_map(|s| Generator::all_from(s, &self.0))
            .collect()
    }

    /// `t - e_i`, if `t_i ≥ 1`.
    pub fn shrink(&self, i: usize) -> Option<Truncation> {
        self.0.drop_one(i).map(Truncation)
    }

    /// `t + e_i`.
    pub fn grow(&self, i: usize) -> Truncation {
        Truncation(self.0.bump(i))
    }

    /// Total number of morphisms of the truncated category.
    pub fn morphism_count(&self) -> usize {
        let objs = self.objects();
        objs.iter()
            .map(|s| objs.iter().map(|t| s.hom_count(t)).sum::<usize>())
            .sum()
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `FI^m_{≤t}` with every hom-set enumerated in canonical order.
#[derive(Clone, Debug)]
pub struct TruncatedCategory {
    t: Truncation,
    objects: Vec<FimObject>,
    homs: Vec<Vec<MorTuple>>,
}

impl TruncatedCategory {
    pub fn build(t: &Truncation) -> Self {
        let objects = t.objects();
        let n = objects.len();
        let mut homs = Vec::with_capacity(n * n);
        for s in &objects {
            for u in &objects {
                homs.push(enumerate_morphisms(s, u));
            }
        }
        TruncatedCategory {
            t: t.clone(),
            objects,
            homs,
        }
    }

    pub fn truncation(&self) -> &Truncation {
        &self.t
    }

    pub fn m(&self) -> usize {
        self.t.m()
    }

    pub fn objects(&self) -> &[FimObject] {
        &self.objects
    }

    /// `Hom(objects[s], objects[u])` in canonical order.
    pub fn homs(&self, s: usize, u: usize) -> &[MorTuple] {
        &self.homs[s * self.objects.len() + u]
    }

    /// Every endomorphism is an automorphism.
    pub fn is_ei(&self) -> bool {
        (0..self.objects.len()).all(|s| self.homs(s, s).iter().all(MorTuple::is_iso))
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().map(Vec::len).sum()
    }
}

/// The category algebra: basis all morphisms, product `g · f = g ∘ f` when
/// composable and zero otherwise.
///
/// Basis order: source object, then target object (both lexicographic),
/// then the canonical hom-set order.
#[derive(Clone, Debug)]
pub struct CategoryAlgebra {
    cat: TruncatedCategory,
    offsets: Vec<usize>,
    basis: Vec<MorTuple>,
    /// Row-major products, `NO_PRODUCT` for zero; only kept for small
    /// algebras.
    table: Option<Vec<u32>>,
}

/// Largest algebra dimension whose full product table is stored.
pub const TABLE_LIMIT: usize = 5000;
const NO_PRODUCT: u32 = u32::MAX;

impl CategoryAlgebra {
    pub fn new(cat: TruncatedCategory) -> Self {
        let n = cat.objects.len();
        let mut offsets = Vec::with_capacity(n * n);
        let mut basis = Vec::new();
        for s in 0..n {
            for u in 0..n {
                offsets.push(basis.len());
                basis.extend(cat.homs(s, u).iter().cloned());
            }
        }
        let mut alg = CategoryAlgebra {
            cat,
            offsets,
            basis,
            table: None,
        };
        let d = alg.dim();
        if d <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(d * d);
            for a in 0..d {
                for b in 0..d {
                    table.push(alg.compute_product(a, b).map_or(NO_PRODUCT, |c| c as u32));
                }
            }
            alg.table = Some(table);
        }
        alg
    }

    pub fn category(&self) -> &TruncatedCategory {
        &self.cat
    }

    pub fn truncation(&self) -> &Truncation {
        &self.cat.t
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MorTuple] {
        &self.basis
    }

    pub fn index_of(&self, f: &MorTuple) -> Option<usize> {
        let s = self.cat.t.index_of(&f.source())?;
        let u = self.cat.t.index_of(&f.target())?;
        Some(self.offsets[s * self.cat.objects.len() + u] + f.rank())
    }

    /// Basis product `basis[a] · basis[b]`, or `None` for zero.
    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        match &self.table {
            Some(t) => {
                let c = t[a * self.dim() + b];
                (c != NO_PRODUCT).then_some(c as usize)
            }
            None => self.compute_product(a, b),
        }
    }

    fn compute_product(&self, a: usize, b: usize) -> Option<usize> {
        let (g, f) = (&self.basis[a], &self.basis[b]);
        if g.source() != f.target() {
            return None;
        }
        let gf = g.compose(f).expect("composable by check");
        self.index_of(&gf)
    }

    pub fn unit(&self) -> Vec<Rat> {
        let mut u = vec![Rat::zero(); self.dim()];
        for s in self.cat.objects() {
            let idx = self.index_of(&MorTuple::identity(s)).expect("identity in range");
            u[idx] = Rat::one();
        }
        u
    }

    pub fn multiply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if let Some(c) = self.product(a, b) {
                    out[c] += &(xa * yb);
                }
            }
        }
        out
    }

    /// `trace(L_c)` for every basis element `c`, where `L_c` is left
    /// multiplication.
    fn left_traces(&self) -> Vec<i64> {
        let d = self.dim();
        (0..d)
            .map(|c| (0..d).filter(|&b| self.product(c, b) == Some(b)).count() as i64)
            .collect()
    }

    /// The full structure table (`product` for every basis pair).
    pub fn structure_table(&self) -> Vec<Vec<Option<usize>>> {
        let d = self.dim();
        (0..d)
            .map(|a| (0..d).map(|b| self.product(a, b)).collect())
            .collect()
    }
}

/// The Jacobson radical, computed as the radical of the trace form
/// `(a, b) ↦ trace(L_{ab})`; valid in characteristic zero. Columns of the
/// result span the radical inside the morphism basis.
pub fn radical(a: &CategoryAlgebra) -> RatMatrix {
    let traces = a.left_traces();
    let d = a.dim();
    let mut gram = RatMatrix::zeros(d, d);
    for x in 0..d {
        for y in 0..d {
            if let Some(c) = a.product(x, y) {
                if traces[c] != 0 {
                    gram[(x, y)] = Rat::from_int(traces[c]);
                }
            }
        }
    }
    gram.kernel_basis()
}

/// Smallest `N` with `rad^N = 0`, searching up to `max_power`; `None` when the
/// span does not vanish by then.
pub fn nilpotency_index(a: &CategoryAlgebra, rad: &RatMatrix, max_power: usize) -> Option<usize> {
    let gens = rad.columns();
    if gens.is_empty() {
        return Some(1);
    }
    let mut power = gens.clone();
    for n in 2..=max_power + 1 {
        let mut next = Subspace::new(a.dim());
        for r in &gens {
            for x in &power {
                next.insert(&a.multiply(r, x));
            }
        }
        if next.dim() == 0 {
            return Some(n);
        }
        power = next.basis().columns();
    }
    None
}

/// The left module `A / rad A`, as a functor module: its value at `S` is
/// `e_S · (A / rad A)`, spanned by the morphisms with target `S` modulo the
/// radical.
pub fn semisimple_quotient_module(a: &CategoryAlgebra) -> FunctorModule {
    let rad = radical(a);
    let t = a.truncation().clone();
    let objects = t.objects();
    // Morphisms with target S, as basis indices.
    let into: Vec<Vec<usize>> = objects
        .iter()
        .map(|u| {
            (0..a.dim())
                .filter(|&i| &a.basis()[i].target() == u)
                .collect()
        })
        .collect();
    // e_S · rad, restricted to coordinates of morphisms into S.
    let mut frames = Vec::with_capacity(objects.len());
    for idx in &into {
        let mut sub = Subspace::new(idx.len());
        for r in rad.columns() {
            let v: Vec<Rat> = idx.iter().map(|&i| r[i].clone()).collect();
            sub.insert(&v);
        }
        frames.push(BasisExtension::new(&sub.basis()).expect("echelon basis is independent"));
    }
    let dims: Vec<usize> = frames.iter().map(BasisExtension::quotient_dim).collect();
    FunctorModule::from_generator_fn(&t, dims, |g| {
        let s = t.index_of(g.source()).unwrap();
        let u = t.index_of(&g.target()).unwrap();
        let f = g.morphism();
        let fi = a.index_of(&f).unwrap();
        let pos_in_u = |basis_idx: usize| into[u].iter().position(|&j| j == basis_idx).unwrap();
        // Left multiplication by f, from morphisms into S to morphisms into U.
        let mut left = RatMatrix::zeros(into[u].len(), into[s].len());
        for (col, &b) in into[s].iter().enumerate() {
            let c = a.product(fi, b).expect("f composes with every morphism into its source");
            left[(pos_in_u(c), col)] = Rat::one();
        }
        frames[u].projection().mul(&left).mul(&frames[s].section())
    })
    .expect("quotient of a module by a two-sided ideal is a module")
}

/// Checks that the structure constants of `FI^m_{≤t}` are the Kronecker
/// product of those of the `FI_{≤t_i}`, under the basis bijection sending a
/// tuple of morphisms to its coordinates.
pub fn algebra_kronecker_check(t: &Truncation) -> Result<bool> {
    if t.m() == 0 {
        return Err(usage!("arity must be at least 1"));
    }
    let big = CategoryAlgebra::new(TruncatedCategory::build(t));
    let parts: Vec<CategoryAlgebra> = t
        .bound()
        .parts()
        .iter()
        .map(|&ti| CategoryAlgebra::new(TruncatedCategory::build(&Truncation::new(vec![ti]))))
        .collect();
    let dims: Vec<usize> = parts.iter().map(CategoryAlgebra::dim).collect();
    if dims.iter().product::<usize>() != big.dim() {
        return Ok(false);
    }
    // Kronecker index of a tuple of coordinate basis indices.
    let kron_index = |coords: &[usize]| coords.iter().zip(&dims).fold(0, |acc, (&c, &d)| acc * d + c);
    let coords_of = |f: &MorTuple| -> Vec<usize> {
        f.parts()
            .iter()
            .zip(&parts)
            .map(|(inj, alg)| alg.index_of(&MorTuple::new(vec![inj.clone()])).unwrap())
            .collect()
    };
    let mut to_kron = vec![0; big.dim()];
    let mut seen = vec![false; big.dim()];
    for (i, f) in big.basis().iter().enumerate() {
        let k = kron_index(&coords_of(f));
        if seen[k] {
            return Ok(false);
        }
        seen[k] = true;
        to_kron[i] = k;
    }
    let tables: Vec<Vec<Vec<Option<usize>>>> = parts.iter().map(CategoryAlgebra::structure_table).collect();
    for a in 0..big.dim() {
        let ca = coords_of(&big.basis()[a]);
        for b in 0..big.dim() {
            let cb = coords_of(&big.basis()[b]);
            let expected: Option<Vec<usize>> = (0..t.m())
                .map(|i| tables[i][ca[i]][cb[i]])
                .collect();
            let actual = big.product(a, b).map(|c| to_kron[c]);
            if actual != expected.map(|e| kron_index(&e)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fi::{injection_count, Injection};

    fn alg(t: &[usize]) -> CategoryAlgebra {
        CategoryAlgebra::new(TruncatedCategory::build(&Truncation::new(t.to_vec())))
    }

    #[test]
    fn build_examples() {
        let a = alg(&[1]);
        assert_eq!(a.category().objects().len(), 2);
        assert_eq!(a.category().homs(0, 0).len(), 1);
        assert_eq!(a.category().homs(0, 1).len(), 1);
        assert_eq!(a.category().homs(1, 1).len(), 1);
        assert_eq!(a.category().homs(1, 0).len(), 0);
        assert_eq!(a.dim(), 3);

        // sum of b!/(b-a)! over a ≤ b ≤ 2
        let oracle: usize = (0..=2).flat_map(|b| (0..=b).map(move |a| injection_count(a, b))).sum();
        assert_eq!(oracle, 8);
        assert_eq!(alg(&[2]).dim(), oracle);

        let a2 = alg(&[1, 1]);
        assert_eq!(a2.category().objects().len(), 4);
        assert_eq!(a2.dim(), 9);
    }

    #[test]
    fn hom_sizes_ei_and_object_order() {
        for t in [vec![3], vec![2, 2], vec![3, 1]] {
            let trunc = Truncation::new(t);
            let cat = TruncatedCategory::build(&trunc);
            assert!(cat.is_ei());
            assert_eq!(cat.objects().len(), trunc.object_count());
            for (i, s) in cat.objects().iter().enumerate() {
                assert_eq!(trunc.index_of(s), Some(i));
                for (j, u) in cat.objects().iter().enumerate() {
                    assert_eq!(cat.homs(i, j).len(), s.hom_count(u));
                    if s.le(u) && s != u {
                        assert!(i < j, "lex order refines ≤");
                    }
                }
            }
            assert_eq!(cat.morphism_count(), trunc.morphism_count());
        }
    }

    #[test]
    fn unit_and_identity_laws() {
        for t in [vec![1], vec![2], vec![1, 1]] {
            let a = alg(&t);
            let u = a.unit();
            for i in 0..a.dim() {
                let mut x = vec![Rat::zero(); a.dim()];
                x[i] = Rat::one();
                assert_eq!(a.multiply(&u, &x), x);
                assert_eq!(a.multiply(&x, &u), x);
            }
        }
        // e_S · f = f iff target(f) = S
        let a = alg(&[2]);
        for s in a.category().objects() {
            let e = a.index_of(&MorTuple::identity(s)).unwrap();
            for f in 0..a.dim() {
                let p = a.product(e, f);
                assert_eq!(p == Some(f), &a.basis()[f].target() == s);
            }
        }
    }

    #[test]
    fn inclusion_squares_to_zero() {
        let a = alg(&[1]);
        let j = MorTuple::new(vec![Injection::standard(0, 1)]);
        let ji = a.index_of(&j).unwrap();
        assert_eq!(a.product(ji, ji), None);
    }

    #[test]
    fn associativity_exhaustive_small() {
        for t in [vec![2], vec![1, 1], vec![3]] {
            let a = alg(&t);
            let d = a.dim();
            assert!(d <= 200);
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        let l = a.product(x, y).and_then(|xy| a.product(xy, z));
                        let r = a.product(y, z).and_then(|yz| a.product(x, yz));
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn radical_examples() {
        let a = alg(&[1]);
        let rad = radical(&a);
        assert_eq!(rad.cols(), 1);
        let j = a.index_of(&MorTuple::new(vec![Injection::standard(0, 1)])).unwrap();
        let mut expected = vec![Rat::zero(); 3];
        expected[j] = Rat::one();
        assert_eq!(rad.column(0), expected);

        // FI_{≤2} has 4 non-endomorphisms: [0]->[1], [0]->[2] and two maps
        // [1]->[2]. The radical is exactly their span.
        let a = alg(&[2]);
        let rad = radical(&a);
        assert_eq!(rad.cols(), 4);
        let mut span = Subspace::new(a.dim());
        for c in rad.columns() {
            span.insert(&c);
        }
        for (i, f) in a.basis().iter().enumerate() {
            let mut e = vec![Rat::zero(); a.dim()];
            e[i] = Rat::one();
            assert_eq!(span.contains(&e), !f.is_iso());
        }
    }

    #[test]
    fn radical_is_nilpotent_and_quotient_semisimple() {
        for t in [vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1]] {
            let trunc = Truncation::new(t.clone());
            let a = alg(&t);
            let rad = radical(&a);
            let bound = 1 + t.iter().sum::<usize>();
            let n = nilpotency_index(&a, &rad, bound).expect("radical is nilpotent");
            assert!(n <= bound);
            // group-algebra blocks meet the radical trivially
            let top = a.truncation().objects().len() - 1;
            let mut span = Subspace::new(a.dim());
            for c in rad.columns() {
                span.insert(&c);
            }
            for f in a.category().homs(top, top) {
                let mut e = vec![Rat::zero(); a.dim()];
                e[a.index_of(f).unwrap()] = Rat::one();
                assert!(!span.contains(&e));
            }
            let q = semisimple_quotient_module(&a);
            assert_eq!(q.total_dim(), a.dim() - rad.cols());
            assert!(q.validate().is_empty());
            for g in trunc.generators() {
                if matches!(g, Generator::Inclusion { .. }) {
                    assert!(q.generator_action(&g).is_zero());
                }
            }
        }
    }

    #[test]
    fn semisimple_quotient_example() {
        let a = alg(&[1]);
        let q = semisimple_quotient_module(&a);
        assert_eq!(q.dims(), &[1, 1]);
    }

    #[test]
    fn kronecker_identity_of_structure_tables() {
        assert!(algebra_kronecker_check(&Truncation::new(vec![2])).unwrap());
        assert!(algebra_kronecker_check(&Truncation::new(vec![1, 1])).unwrap());
        assert!(algebra_kronecker_check(&Truncation::new(vec![2, 1])).unwrap());
        assert_eq!(alg(&[1, 1]).dim(), alg(&[1]).dim().pow(2));
    }
}
