//! Representations of `FI^m_{≤t}` stored by their generator matrices, and the
//! linear algebra of module homomorphisms between them.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::Truncation;
use crate::error::{invariant, usage, Result};
use crate::fi::{enumerate_morphisms, factorize, recompose, FimObject, Generator, MorTuple};
use crate::linalg::{BasisExtension, Rat, RatMatrix, Subspace};

/// Above this many composable pairs, `validate` samples pairs instead of
/// checking all of them.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 10_000;
const SAMPLED_PAIRS: usize = 2_000;

/// A functor `FI^m_{≤t} → Vect`, given by a dimension per object and a matrix
/// per generating morphism. Other morphisms act through [`factorize`].
pub struct FunctorModule {
    t: Truncation,
    dims: Vec<usize>,
    generators: Arc<Vec<Generator>>,
    gen_index: Arc<HashMap<Generator, usize>>,
    actions: Vec<RatMatrix>,
    cache: RwLock<HashMap<MorTuple, Arc<RatMatrix>>>,
}

impl Clone for FunctorModule {
    fn clone(&self) -> Self {
        FunctorModule {
            t: self.t.clone(),
            dims: self.dims.clone(),
            generators: self.generators.clone(),
            gen_index: self.gen_index.clone(),
            actions: self.actions.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for FunctorModule {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t && self.dims == other.dims && self.actions == other.actions
    }
}

impl Eq for FunctorModule {}

impl std::fmt::Debug for FunctorModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctorModule")
            .field("t", &self.t)
            .field("dims", &self.dims)
            .finish_non_exhaustive()
    }
}

impl FunctorModule {
    /// Builds a module from generator matrices listed in the order of
    /// [`Truncation::generators`].
    pub fn new(t: &Truncation, dims: Vec<usize>, actions: Vec<RatMatrix>) -> Result<Self> {
        if dims.len() != t.object_count() {
            return Err(usage!(
                "{} dimensions given for {} objects",
                dims.len(),
                t.object_count()
            ));
        }
        let generators = t.generators();
        if actions.len() != generators.len() {
            return Err(usage!(
                "{} action matrices given for {} generators",
                actions.len(),
                generators.len()
            ));
        }
        for (g, a) in generators.iter().zip(&actions) {
            let s = dims[t.index_of(g.source()).unwrap()];
            let u = dims[t.index_of(&g.target()).unwrap()];
            if a.shape() != (u, s) {
                return Err(usage!(
                    "matrix for {g} has shape {}x{}, expected {u}x{s}",
                    a.rows(),
                    a.cols()
                ));
            }
        }
        let gen_index = generators
            .iter()
            .enumerate()
            .map(|(k, g)| (g.clone(), k))
            .collect();
        Ok(FunctorModule {
            t: t.clone(),
            dims,
            generators: Arc::new(generators),
            gen_index: Arc::new(gen_index),
            actions,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn from_generator_fn<F>(t: &Truncation, dims: Vec<usize>, mut f: F) -> Result<Self>
    where
        F: FnMut(&Generator) -> RatMatrix,
    {
        let actions = t.generators().iter().map(&mut f).collect();
        Self::new(t, dims, actions)
    }

    pub fn zero(t: &Truncation) -> Self {
        let dims = vec![0; t.object_count()];
        Self::from_generator_fn(t, dims, |_| RatMatrix::zeros(0, 0)).expect("zero shapes")
    }

    pub fn truncation(&self) -> &Truncation {
        &self.t
    }

    pub fn m(&self) -> usize {
        self.t.m()
    }

    /// Dimensions per object, in object order.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, idx: usize) -> usize {
        self.dims[idx]
    }

    /// `dim V(S)`, zero outside the truncation.
    pub fn dim_at(&self, s: &FimObject) -> usize {
        self.t.index_of(s).map_or(0, |i| self.dims[i])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn actions(&self) -> &[RatMatrix] {
        &self.actions
    }

    pub fn generator_action(&self, g: &Generator) -> &RatMatrix {
        &self.actions[self.gen_index[g]]
    }

    fn object_index(&self, s: &FimObject) -> Result<usize> {
        self.t
            .index_of(s)
            .ok_or_else(|| usage!("object {s} outside truncation {}", self.t))
    }

    /// The matrix of `V(f)`.
    pub fn action(&self, f: &MorTuple) -> Result<Arc<RatMatrix>> {
        if f.arity() != self.m() {
            return Err(usage!("morphism {f} has arity {}, module has {}", f.arity(), self.m()));
        }
        let s = self.object_index(&f.source())?;
        self.object_index(&f.target())?;
        if let Some(a) = self.cache.read().unwrap().get(f) {
            return Ok(a.clone());
        }
        let mut word = factorize(f);
        let result = match word.pop() {
            None => RatMatrix::identity(self.dims[s]),
            Some(last) => {
                let prefix = recompose(&f.source(), &word)?;
                let pa = self.action(&prefix)?;
                self.generator_action(&last).mul(&pa)
            }
        };
        let result = Arc::new(result);
        self.cache
            .write()
            .unwrap()
            .insert(f.clone(), result.clone());
        Ok(result)
    }

    /// `V(g) v` for every morphism `g` out of `objects[s]`, indexed by target
    /// object and then by the canonical hom order. Each vector costs one
    /// matrix-vector product.
    pub fn orbit(&self, s: usize, v: &[Rat]) -> Vec<Vec<Vec<Rat>>> {
        let src = self.t.object(s);
        let mut memo: HashMap<MorTuple, Vec<Rat>> = HashMap::new();
        memo.insert(MorTuple::identity(&src), v.to_vec());
        let mut out = Vec::with_capacity(self.dims.len());
        for u in self.t.objects() {
            let homs = enumerate_morphisms(&src, &u);
            let vecs = homs.iter().map(|g| self.orbit_one(g, &mut memo)).collect();
            out.push(vecs);
        }
        out
    }

    fn orbit_one(&self, g: &MorTuple, memo: &mut HashMap<MorTuple, Vec<Rat>>) -> Vec<Rat> {
        if let Some(v) = memo.get(g) {
            return v.clone();
        }
        let mut word = factorize(g);
        let last = word.pop().expect("identity is memoized");
        let prefix = recompose(&g.source(), &word).expect("factorization recomposes");
        let w = self.orbit_one(&prefix, memo);
        let r = self.generator_action(&last).mul_vec(&w);
        memo.insert(g.clone(), r.clone());
        r
    }

    /// Functoriality violations; empty when the generator matrices define a
    /// functor. Uses seed 0 for sampled checks.
    pub fn validate(&self) -> Vec<String> {
        self.validate_seeded(0)
    }

    /// Checks `V(g ∘ f) = V(g) V(f)` for every generator `g` and every
    /// morphism `f` into its source, which already forces word independence.
    /// Also checks all composable pairs of morphisms when there are at most
    /// [`EXHAUSTIVE_PAIR_LIMIT`], and a seeded sample otherwise.
    pub fn validate_seeded(&self, seed: u64) -> Vec<String> {
        let mut out = Vec::new();
        let objects = self.t.objects();
        for (g, a) in self.generators.iter().zip(&self.actions) {
            let gm = g.morphism();
            for s in objects.iter().filter(|s| (*s).le(g.source())) {
                for f in enumerate_morphisms(s, g.source()) {
                    let gf = gm.compose(&f).expect("composable");
                    let lhs = self.action(&gf).expect("in range");
                    let rhs = a.mul(&self.action(&f).expect("in range"));
                    if *lhs != rhs {
                        out.push(format!("V({g} ∘ {f}) differs from V({g})·V({f})"));
                    }
                }
            }
        }
        let pair_count: usize = objects
            .iter()
            .map(|u| {
                let into: usize = objects.iter().map(|s| s.hom_count(u)).sum();
                let out_of: usize = objects.iter().map(|w| u.hom_count(w)).sum();
                into * out_of
            })
            .sum();
        let mut check = |f: &MorTuple, g: &MorTuple| {
            let gf = g.compose(f).expect("composable");
            let lhs = self.action(&gf).expect("in range");
            let rhs = self.action(g).expect("in range").mul(&self.action(f).expect("in range"));
            if *lhs != rhs {
                out.push(format!("V({g} ∘ {f}) differs from V({g})·V({f})"));
            }
        };
        if pair_count <= EXHAUSTIVE_PAIR_LIMIT {
            for s in &objects {
                for u in objects.iter().filter(|u| s.le(u)) {
                    for w in objects.iter().filter(|w| u.le(w)) {
                        for f in enumerate_morphisms(s, u) {
                            for g in enumerate_morphisms(u, w) {
                                check(&f, &g);
                            }
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = objects.len();
            let mut done = 0;
            while done < SAMPLED_PAIRS {
                let s = &objects[rng.gen_range(0..n)];
                let u = &objects[rng.gen_range(0..n)];
                let w = &objects[rng.gen_range(0..n)];
                if !(s.le(u) && u.le(w)) {
                    continue;
                }
                let f = MorTuple::unrank(s, u, rng.gen_range(0..s.hom_count(u)));
                let g = MorTuple::unrank(u, w, rng.gen_range(0..u.hom_count(w)));
                check(&f, &g);
                done += 1;
            }
        }
        out
    }
}

/// A natural transformation, one matrix per object (object order of the
/// truncation). Source and target modules are passed to the methods that
/// need them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    pub mats: Vec<RatMatrix>,
}

impl ModuleHom {
    pub fn new(mats: Vec<RatMatrix>) -> Self {
        ModuleHom { mats }
    }

    pub fn identity(v: &FunctorModule) -> Self {
        ModuleHom::new(v.dims().iter().map(|&d| RatMatrix::identity(d)).collect())
    }

    pub fn zero(v: &FunctorModule, w: &FunctorModule) -> Self {
        ModuleHom::new(
            v.dims()
                .iter()
                .zip(w.dims())
                .map(|(&a, &b)| RatMatrix::zeros(b, a))
                .collect(),
        )
    }

    pub fn mat(&self, idx: usize) -> &RatMatrix {
        &self.mats[idx]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleHom) -> ModuleHom {
        ModuleHom::new(self.mats.iter().zip(&first.mats).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        ModuleHom::new(self.mats.iter().zip(&other.mats).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, c: &Rat) -> ModuleHom {
        ModuleHom::new(self.mats.iter().map(|a| a.scale(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(RatMatrix::is_zero)
    }

    /// Shape check plus the intertwining identity over every generator.
    pub fn is_valid(&self, v: &FunctorModule, w: &FunctorModule) -> bool {
        self.violations(v, w).is_empty()
    }

    pub fn violations(&self, v: &FunctorModule, w: &FunctorModule) -> Vec<String> {
        let mut out = Vec::new();
        if v.truncation() != w.truncation() || self.mats.len() != v.dims().len() {
            out.push("hom between modules over different truncations".to_string());
            return out;
        }
        for (i, m) in self.mats.iter().enumerate() {
            if m.shape() != (w.dim(i), v.dim(i)) {
                out.push(format!("matrix at object {} has the wrong shape", v.truncation().object(i)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let t = v.truncation();
        for g in v.generators() {
            let s = t.index_of(g.source()).unwrap();
            let u = t.index_of(&g.target()).unwrap();
            let lhs = self.mats[u].mul(v.generator_action(g));
            let rhs = w.generator_action(g).mul(&self.mats[s]);
            if lhs != rhs {
                out.push(format!("hom does not commute with {g}"));
            }
        }
        out
    }

    pub fn is_injective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.rows())
    }

    /// Every per-object matrix is square and invertible.
    pub fn iso_check(&self) -> bool {
        self.mats
            .iter()
            .all(|m| m.rows() == m.cols() && m.rank() == m.rows())
    }

    /// The per-object inverse of an isomorphism.
    pub fn inverse(&self) -> Option<ModuleHom> {
        self.mats
            .iter()
            .map(RatMatrix::inverse)
            .collect::<Option<Vec<_>>>()
            .map(ModuleHom::new)
    }
}

/// `iso_check` as a free function.
pub fn iso_check(h: &ModuleHom) -> bool {
    h.iso_check()
}

fn same_truncation(v: &FunctorModule, w: &FunctorModule) -> Result<()> {
    if v.truncation() != w.truncation() {
        return Err(usage!(
            "modules over different truncations {} and {}",
            v.truncation(),
            w.truncation()
        ));
    }
    Ok(())
}

/// The free module `M(S) = k Hom(S, -)` with the canonical morphism basis.
pub fn free_module(s: &FimObject, t: &Truncation) -> Result<FunctorModule> {
    if s.arity() != t.m() || !t.contains(s) {
        return Err(usage!("object {s} is not ≤ {t}"));
    }
    let dims = t.objects().iter().map(|u| s.hom_count(u)).collect();
    FunctorModule::from_generator_fn(t, dims, |g| {
        let gm = g.morphism();
        let src = enumerate_morphisms(s, g.source());
        let tgt = g.target();
        let mut a = RatMatrix::zeros(s.hom_count(&tgt), src.len());
        for (col, h) in src.iter().enumerate() {
            a[(gm.compose(h).unwrap().rank(), col)] = Rat::one();
        }
        a
    })
}

/// The module equal to `k` (trivial automorphism action) at `S` and zero
/// elsewhere.
pub fn concentrated(s: &FimObject, t: &Truncation) -> Result<FunctorModule> {
    if s.arity() != t.m() || !t.contains(s) {
        return Err(usage!("object {s} is not ≤ {t}"));
    }
    let dims = t.objects().iter().map(|u| usize::from(u == s)).collect();
    FunctorModule::from_generator_fn(t, dims, |g| match g {
        Generator::Transposition { obj, .. } if obj == s => RatMatrix::identity(1),
        _ => RatMatrix::zeros(
            usize::from(&g.target() == s),
            usize::from(g.source() == s),
        ),
    })
}

/// The dual of the regular module: value at `S` is the dual of the span of
/// all morphisms with source `S`, with `(f·φ)(b) = φ(b ∘ f)`.
pub fn coregular(t: &Truncation) -> FunctorModule {
    let objects = t.objects();
    // Morphisms out of each object, indexed by (target, rank) offsets.
    let offsets: Vec<Vec<usize>> = objects
        .iter()
        .map(|s| {
            let mut acc = 0;
            objects
                .iter()
                .map(|u| {
                    let o = acc;
                    acc += s.hom_count(u);
                    o
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = objects
        .iter()
        .map(|s| objects.iter().map(|u| s.hom_count(u)).sum())
        .collect();
    FunctorModule::from_generator_fn(t, dims.clone(), |g| {
        let s = t.index_of(g.source()).unwrap();
        let tgt = g.target();
        let u = t.index_of(&tgt).unwrap();
        let gm = g.morphism();
        let mut a = RatMatrix::zeros(dims[u], dims[s]);
        for (w, obj) in objects.iter().enumerate() {
            for b in enumerate_morphisms(&tgt, obj) {
                let h = b.compose(&gm).unwrap();
                a[(offsets[u][w] + b.rank(), offsets[s][w] + h.rank())] = Rat::one();
            }
        }
        a
    })
    .expect("coregular shapes")
}

fn split_generator(g: &Generator, m_left: usize, left: &FimObject, right: &FimObject) -> (bool, Generator) {
    let c = g.coord();
    let (is_left, obj, coord) = if c < m_left {
        (true, left.clone(), c)
    } else {
        (false, right.clone(), c - m_left)
    };
    let r = match g {
        Generator::Transposition { pos, .. } => Generator::Transposition { obj, coord, pos: *pos },
        Generator::Inclusion { .. } => Generator::Inclusion { obj, coord },
    };
    (is_left, r)
}

/// `V ⊠ W` over the concatenated truncation, for modules of any arity.
/// Values are `V(S) ⊗ W(T)` in the Kronecker convention (left factor most
/// significant).
pub fn external_tensor_pair(v: &FunctorModule, w: &FunctorModule) -> FunctorModule {
    let mut bound = v.truncation().bound().0.clone();
    bound.extend(w.truncation().bound().0.iter());
    let t = Truncation::new(bound);
    let mv = v.m();
    let dims: Vec<usize> = t
        .objects()
        .iter()
        .map(|o| {
            v.dim_at(&FimObject(o.0[..mv].to_vec())) * w.dim_at(&FimObject(o.0[mv..].to_vec()))
        })
        .collect();
    FunctorModule::from_generator_fn(&t, dims, |g| {
        let o = g.source();
        let left = FimObject(o.0[..mv].to_vec());
        let right = FimObject(o.0[mv..].to_vec());
        let (is_left, h) = split_generator(g, mv, &left, &right);
        if is_left {
            v.generator_action(&h)
                .kronecker(&RatMatrix::identity(w.dim_at(&right)))
        } else {
            RatMatrix::identity(v.dim_at(&left)).kronecker(w.generator_action(&h))
        }
    })
    .expect("tensor shapes")
}

/// `V₁ ⊠ ⋯ ⊠ V_m` for FI-modules `V_i`.
pub fn external_tensor(factors: &[&FunctorModule]) -> Result<FunctorModule> {
    let Some((first, rest)) = factors.split_first() else {
        return Err(usage!("external tensor of no factors"));
    };
    if let Some(bad) = factors.iter().find(|f| f.m() != 1) {
        return Err(usage!("external tensor factor has arity {}, expected 1", bad.m()));
    }
    Ok(rest
        .iter()
        .fold((*first).clone(), |acc, f| external_tensor_pair(&acc, f)))
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FunctorModule,
    pub injections: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

/// `V₁ ⊕ ⋯ ⊕ V_k`, summands stacked in order at every object.
pub fn direct_sum(summands: &[&FunctorModule]) -> Result<DirectSum> {
    let Some(first) = summands.first() else {
        return Err(usage!("direct sum of no summands"));
    };
    for s in summands {
        same_truncation(first, s)?;
    }
    let t = first.truncation();
    let n = t.object_count();
    let dims: Vec<usize> = (0..n)
        .map(|i| summands.iter().map(|s| s.dim(i)).sum())
        .collect();
    let module = FunctorModule::from_generator_fn(t, dims.clone(), |g| {
        summands
            .iter()
            .map(|s| s.generator_action(g).clone())
            .reduce(|a, b| a.direct_sum(&b))
            .unwrap()
    })?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offsets = vec![0; n];
    for s in summands {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for i in 0..n {
            let mut a = RatMatrix::zeros(dims[i], s.dim(i));
            for k in 0..s.dim(i) {
                a[(offsets[i] + k, k)] = Rat::one();
            }
            proj.push(a.transpose());
            inj.push(a);
            offsets[i] += s.dim(i);
        }
        injections.push(ModuleHom::new(inj));
        projections.push(ModuleHom::new(proj));
    }
    Ok(DirectSum {
        module,
        injections,
        projections,
    })
}

/// The submodule whose value at each object is the column span of
/// `bases[i]` (independent columns), with its inclusion. Fails if the spans
/// are not closed under the action.
pub fn submodule_from_bases(v: &FunctorModule, bases: Vec<RatMatrix>) -> Result<(FunctorModule, ModuleHom)> {
    let t = v.truncation();
    let frames = bases
        .iter()
        .map(BasisExtension::new)
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let dims = bases.iter().map(RatMatrix::cols).collect();
    let mut failure = None;
    let u = FunctorModule::from_generator_fn(t, dims, |g| {
        let s = t.index_of(g.source()).unwrap();
        let k = t.index_of(&g.target()).unwrap();
        let img = v.generator_action(g).mul(&bases[s]);
        frames[k].coords(&img).unwrap_or_else(|| {
            failure.get_or_insert_with(|| format!("subspaces not closed under {g}"));
            RatMatrix::zeros(bases[k].cols(), bases[s].cols())
        })
    })?;
    if let Some(msg) = failure {
        return Err(invariant!("{msg}"));
    }
    Ok((u, ModuleHom::new(bases)))
}

/// The submodule generated by `seeds`, given as `(object index, vector)`.
pub fn submodule_span(v: &FunctorModule, seeds: &[(usize, Vec<Rat>)]) -> Result<(FunctorModule, ModuleHom)> {
    let t = v.truncation();
    let n = t.object_count();
    for (i, s) in seeds {
        if *i >= n || s.len() != v.dim(*i) {
            return Err(usage!("seed vector does not live in a value of the module"));
        }
    }
    let mut spans: Vec<Subspace> = (0..n).map(|i| Subspace::new(v.dim(i))).collect();
    // Lex order refines ≤, so one pass in object order sees every source
    // before its targets.
    for i in 0..n {
        for (j, s) in seeds {
            if *j == i {
                spans[i].insert(s);
            }
        }
        close_under_automorphisms(v, i, &mut spans[i]);
        let obj = t.object(i);
        let basis = spans[i].basis().columns();
        for g in Generator::all_from(&obj, t.bound()) {
            if let Generator::Inclusion { .. } = g {
                let k = t.index_of(&g.target()).unwrap();
                let a = v.generator_action(&g);
                for b in &basis {
                    spans[k].insert(&a.mul_vec(b));
                }
            }
        }
    }
    let bases = spans
        .iter()
        .map(|s| s.basis())
        .collect();
    submodule_from_bases(v, bases)
}

/// Grows `span` (inside `V(objects[i])`) until it is stable under the
/// transposition generators at that object.
fn close_under_automorphisms(v: &FunctorModule, i: usize, span: &mut Subspace) {
    let obj = v.truncation().object(i);
    let swaps: Vec<&RatMatrix> = Generator::all_from(&obj, v.truncation().bound())
        .iter()
        .filter(|g| matches!(g, Generator::Transposition { .. }))
        .map(|g| v.generator_action(g))
        .collect();
    if swaps.is_empty() {
        return;
    }
    let mut queue = span.basis().columns();
    while let Some(x) = queue.pop() {
        for a in &swaps {
            let y = a.mul_vec(&x);
            if span.insert(&y) {
                queue.push(y);
            }
        }
    }
}

/// `V / U` for a submodule given by its inclusion, with the projection.
pub fn quotient(v: &FunctorModule, incl: &ModuleHom) -> Result<(FunctorModule, ModuleHom)> {
    let t = v.truncation();
    if incl.mats.len() != t.object_count() {
        return Err(usage!("inclusion has the wrong number of components"));
    }
    let frames = incl
        .mats
        .iter()
        .map(BasisExtension::new)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| invariant!("submodule inclusion is not injective"))?;
    let proj: Vec<RatMatrix> = frames.iter().map(BasisExtension::projection).collect();
    let sec: Vec<RatMatrix> = frames.iter().map(BasisExtension::section).collect();
    let mut failure = None;
    let dims = frames.iter().map(BasisExtension::quotient_dim).collect();
    let q = FunctorModule::from_generator_fn(t, dims, |g| {
        let s = t.index_of(g.source()).unwrap();
        let k = t.index_of(&g.target()).unwrap();
        let a = v.generator_action(g);
        if !proj[k].mul(&a.mul(&incl.mats[s])).is_zero() {
            failure.get_or_insert_with(|| format!("submodule not closed under {g}"));
        }
        proj[k].mul(a).mul(&sec[s])
    })?;
    if let Some(msg) = failure {
        return Err(invariant!("{msg}"));
    }
    Ok((q, ModuleHom::new(proj)))
}

/// Kernel of `h: V → W`, with its inclusion into `V`.
pub fn kernel(h: &ModuleHom, v: &FunctorModule, w: &FunctorModule) -> Result<(FunctorModule, ModuleHom)> {
    same_truncation(v, w)?;
    submodule_from_bases(v, h.mats.iter().map(RatMatrix::kernel_basis).collect())
}

/// Image of `h: V → W`, with its inclusion into `W`.
pub fn image(h: &ModuleHom, v: &FunctorModule, w: &FunctorModule) -> Result<(FunctorModule, ModuleHom)> {
    same_truncation(v, w)?;
    submodule_from_bases(w, h.mats.iter().map(RatMatrix::column_space).collect())
}

/// Generators of `V`: at each object in order, the span of images from
/// smaller objects is closed under automorphisms, then standard basis
/// vectors outside it are added one at a time (each followed by another
/// closure). Returned as `(object index, vector)`.
pub fn cover_generators(v: &FunctorModule) -> Vec<(usize, Vec<Rat>)> {
    let t = v.truncation();
    let n = t.object_count();
    let mut spans: Vec<Subspace> = (0..n).map(|i| Subspace::new(v.dim(i))).collect();
    let mut gens = Vec::new();
    for i in 0..n {
        close_under_automorphisms(v, i, &mut spans[i]);
        for k in 0..v.dim(i) {
            if spans[i].is_full() {
                break;
            }
            let mut e = vec![Rat::zero(); v.dim(i)];
            e[k] = Rat::one();
            if spans[i].insert(&e) {
                gens.push((i, e));
                close_under_automorphisms(v, i, &mut spans[i]);
            }
        }
        let obj = t.object(i);
        let basis = spans[i].basis().columns();
        for g in Generator::all_from(&obj, t.bound()) {
            if let Generator::Inclusion { .. } = g {
                let k = t.index_of(&g.target()).unwrap();
                let a = v.generator_action(&g);
                for b in &basis {
                    spans[k].insert(&a.mul_vec(b));
                }
            }
        }
    }
    gens
}

/// The map `⊕_j M(S_j)(U) → V(U)` at every object `U`, for generators
/// `(S_j, v_j)`: the column for a basis morphism `g: S_j → U` is `V(g) v_j`.
/// Columns are ordered by generator, then by the canonical hom order.
pub fn cover_matrices(v: &FunctorModule, gens: &[(usize, Vec<Rat>)]) -> Vec<RatMatrix> {
    let n = v.truncation().object_count();
    let orbits: Vec<Vec<Vec<Vec<Rat>>>> = gens.iter().map(|(s, x)| v.orbit(*s, x)).collect();
    (0..n)
        .map(|u| {
            let cols: Vec<Vec<Rat>> = orbits.iter().flat_map(|o| o[u].iter().cloned()).collect();
            RatMatrix::from_columns(v.dim(u), &cols)
        })
        .collect()
}

/// A basis of `Hom(V, W)` together with the data needed to find coordinates
/// of an arbitrary homomorphism in it.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub basis: Vec<ModuleHom>,
    /// Generators of `V` used to parametrize homomorphisms.
    pub generators: Vec<(usize, Vec<Rat>)>,
    /// Column `k`: the values of `basis[k]` on the generators, stacked.
    pub gen_values: RatMatrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Values of `h` on the generators, stacked.
    pub fn evaluate(&self, h: &ModuleHom) -> Vec<Rat> {
        self.generators
            .iter()
            .flat_map(|(s, x)| h.mats[*s].mul_vec(x))
            .collect()
    }

    /// Coordinates of `h` in `basis`; `None` if `h` is not in the span.
    pub fn coordinates(&self, h: &ModuleHom) -> Option<Vec<Rat>> {
        if self.basis.is_empty() {
            return h.is_zero().then(Vec::new);
        }
        let c = self.gen_values.solve(&self.evaluate(h)).ok()??;
        let check = self.combine(&c);
        (check == *h).then_some(c)
    }

    /// `Σ c_k basis[k]`, or the zero hom with the given shapes when the basis
    /// is empty.
    pub fn combine(&self, c: &[Rat]) -> ModuleHom {
        let mut acc: Option<ModuleHom> = None;
        for (b, x) in self.basis.iter().zip(c) {
            let term = b.scale(x);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.expect("combine needs a nonempty basis")
    }
}

/// `Hom(V, W)`: unknowns are the images `w_j ∈ W(S_j)` of cover generators of
/// `V`; every relation among the generators at every object gives linear
/// conditions on them.
pub fn hom_space(v: &FunctorModule, w: &FunctorModule) -> Result<HomSpace> {
    same_truncation(v, w)?;
    let t = v.truncation();
    let n = t.object_count();
    let gens = cover_generators(v);
    let covers = cover_matrices(v, &gens);
    let offsets: Vec<usize> = gens
        .iter()
        .scan(0, |acc, (s, _)| {
            let o = *acc;
            *acc += w.dim(*s);
            Some(o)
        })
        .collect();
    let unknowns: usize = gens.iter().map(|(s, _)| w.dim(*s)).sum();
    let objects = t.objects();
    let mut relations = Subspace::new(unknowns);
    // W(g) for each generator source and target, in cover-column order.
    let w_images = |u: usize| -> Vec<(usize, Arc<RatMatrix>)> {
        let mut out = Vec::new();
        for (j, (s, _)) in gens.iter().enumerate() {
            for g in enumerate_morphisms(&objects[*s], &objects[u]) {
                out.push((j, w.action(&g).expect("in range")));
            }
        }
        out
    };
    for u in 0..n {
        if w.dim(u) == 0 || unknowns == 0 {
            continue;
        }
        let ker = covers[u].kernel_basis();
        if ker.cols() == 0 {
            continue;
        }
        let images = w_images(u);
        for k in ker.columns() {
            let mut rows = vec![vec![Rat::zero(); unknowns]; w.dim(u)];
            for ((j, wg), c) in images.iter().zip(&k) {
                if c.is_zero() {
                    continue;
                }
                let base = offsets[*j];
                for (r, row) in rows.iter_mut().enumerate() {
                    for l in 0..wg.cols() {
                        let x = &wg[(r, l)];
                        if !x.is_zero() {
                            row[base + l] += &(c * x);
                        }
                    }
                }
            }
            for row in rows {
                relations.insert(&row);
            }
        }
    }
    let solutions = relations.basis().transpose().kernel_basis();
    // For each U, an invertible set of cover columns and the W-images of
    // the corresponding basis morphisms.
    let mut basis = vec![Vec::with_capacity(n); solutions.cols()];
    for u in 0..n {
        if v.dim(u) == 0 {
            for b in basis.iter_mut() {
                b.push(RatMatrix::zeros(w.dim(u), 0));
            }
            continue;
        }
        let (_, pivots) = covers[u].rref();
        let inv = covers[u]
            .select_columns(&pivots)
            .inverse()
            .ok_or_else(|| invariant!("cover is not surjective"))?;
        let images = w_images(u);
        for (b, sol) in basis.iter_mut().zip(solutions.columns()) {
            let cols: Vec<Vec<Rat>> = pivots
                .iter()
                .map(|&p| {
                    let (j, wg) = &images[p];
                    let wj = &sol[offsets[*j]..offsets[*j] + wg.cols()];
                    wg.mul_vec(wj)
                })
                .collect();
            b.push(RatMatrix::from_columns(w.dim(u), &cols).mul(&inv));
        }
    }
    Ok(HomSpace {
        basis: basis.into_iter().map(ModuleHom::new).collect(),
        generators: gens,
        gen_values: solutions,
    })
}

/// Outcome of a randomized isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoSearch {
    Found(ModuleHom),
    /// Dimensions differ at some object: certainly not isomorphic.
    DimensionMismatch,
    /// No witness found; says nothing about isomorphism.
    Unknown,
}

/// Tries small-integer combinations of a basis of `Hom(V, W)`.
pub fn iso_search(v: &FunctorModule, w: &FunctorModule, trials: usize, seed: u64) -> Result<IsoSearch> {
    same_truncation(v, w)?;
    if v.dims() != w.dims() {
        return Ok(IsoSearch::DimensionMismatch);
    }
    if v.is_zero() {
        return Ok(IsoSearch::Found(ModuleHom::zero(v, w)));
    }
    let hs = hom_space(v, w)?;
    if hs.dim() == 0 {
        return Ok(IsoSearch::Unknown);
    }
    for b in &hs.basis {
        if b.iso_check() {
            return Ok(IsoSearch::Found(b.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let c: Vec<Rat> = (0..hs.dim())
            .map(|_| Rat::from_int(rng.gen_range(-3..=3)))
            .collect();
        if c.iter().all(Rat::is_zero) {
            continue;
        }
        let h = hs.combine(&c);
        if h.iso_check() {
            return Ok(IsoSearch::Found(h));
        }
    }
    Ok(IsoSearch::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fi::Injection;

    fn t1(n: usize) -> Truncation {
        Truncation::new(vec![n])
    }

    fn obj(p: &[usize]) -> FimObject {
        FimObject(p.to_vec())
    }

    #[test]
    fn free_module_dims_and_action() {
        let m1 = free_module(&obj(&[1]), &t1(3)).unwrap();
        assert_eq!(m1.dims(), &[0, 1, 2, 3]);
        assert!(m1.validate().is_empty());
        let f = MorTuple::new(vec![Injection::new(2, vec![2]).unwrap()]);
        let a = m1.action(&f).unwrap();
        // Yoneda: column of id_[1] maps to the basis morphism f itself.
        let mut expected = RatMatrix::zeros(2, 1);
        expected[(f.rank(), 0)] = Rat::one();
        assert_eq!(*a, expected);

        let m0 = free_module(&obj(&[0]), &t1(3)).unwrap();
        assert_eq!(m0.dims(), &[1, 1, 1, 1]);
        for g in m0.generators() {
            assert!(m0.generator_action(g).is_identity());
        }

        let m11 = free_module(&obj(&[1, 1]), &Truncation::new(vec![2, 2])).unwrap();
        assert_eq!(m11.dim_at(&obj(&[2, 2])), 4);
        assert!(m11.validate().is_empty());
        assert!(free_module(&obj(&[4]), &t1(3)).is_err());
    }

    #[test]
    fn negated_transposition_is_caught() {
        let m = free_module(&obj(&[0]), &t1(2)).unwrap();
        let mut actions = m.actions().to_vec();
        let idx = m
            .generators()
            .iter()
            .position(|g| matches!(g, Generator::Transposition { obj, .. } if obj.0 == vec![2]))
            .unwrap();
        actions[idx] = actions[idx].scale(&Rat::from_int(-1));
        let bad = FunctorModule::new(m.truncation(), m.dims().to_vec(), actions).unwrap();
        assert!(!bad.validate().is_empty());
        assert!(FunctorModule::zero(&t1(3)).validate().is_empty());
    }

    #[test]
    fn hom_space_yoneda_and_naive_oracle() {
        let t = t1(3);
        let corpus = [
            free_module(&obj(&[0]), &t).unwrap(),
            free_module(&obj(&[1]), &t).unwrap(),
            concentrated(&obj(&[1]), &t).unwrap(),
            coregular(&t1(2)),
        ];
        for v in &corpus {
            let vt = v.truncation();
            for s in vt.objects() {
                let ms = free_module(&s, vt).unwrap();
                let hs = hom_space(&ms, v).unwrap();
                assert_eq!(hs.dim(), v.dim_at(&s), "Yoneda at {s}");
                for h in &hs.basis {
                    assert!(h.is_valid(&ms, v));
                }
            }
        }
        let a = free_module(&obj(&[1]), &t).unwrap();
        let b = free_module(&obj(&[0]), &t).unwrap();
        assert_eq!(hom_space(&a, &b).unwrap().dim(), 1);
        assert_eq!(hom_space(&a, &FunctorModule::zero(&t)).unwrap().dim(), 0);
    }

    #[test]
    fn coregular_is_a_module() {
        let d = coregular(&Truncation::new(vec![1, 1]));
        assert!(d.validate().is_empty());
        assert!(coregular(&t1(2)).validate().is_empty());
        assert_eq!(coregular(&t1(1)).dims(), &[2, 1]);
    }

    #[test]
    fn tensor_of_free_is_free_with_same_basis() {
        let a = free_module(&obj(&[1]), &t1(2)).unwrap();
        let b = free_module(&obj(&[1]), &t1(2)).unwrap();
        let ab = external_tensor(&[&a, &b]).unwrap();
        let m = free_module(&obj(&[1, 1]), &Truncation::new(vec![2, 2])).unwrap();
        assert_eq!(ab, m);
    }

    #[test]
    fn submodules_quotients_kernels() {
        let t = t1(3);
        let m0 = free_module(&obj(&[0]), &t).unwrap();
        let m1 = free_module(&obj(&[1]), &t).unwrap();
        let ds = direct_sum(&[&m0, &m1]).unwrap();
        let v = &ds.module;
        assert!(v.validate().is_empty());
        let (u, incl) = submodule_span(v, &[(0, vec![Rat::one()])]).unwrap();
        assert_eq!(u.dims(), &[1, 1, 1, 1]);
        assert!(incl.is_valid(&u, v));
        let (q, proj) = quotient(v, &incl).unwrap();
        assert_eq!(q.dims(), m1.dims());
        assert!(proj.compose(&incl).is_zero());
        assert!(q.validate().is_empty());

        let (k, _) = kernel(&ModuleHom::identity(v), v, v).unwrap();
        assert!(k.is_zero());
        let (i, _) = image(&proj, v, &q).unwrap();
        assert_eq!(i.dims(), q.dims());

        let (all, _) = submodule_span(&m1, &[(1, vec![Rat::one()])]).unwrap();
        assert_eq!(all.dims(), m1.dims());
        let (none, _) = submodule_span(&m1, &[]).unwrap();
        assert!(none.is_zero());
    }

    #[test]
    fn iso_search_examples() {
        let t = t1(3);
        let m1 = free_module(&obj(&[1]), &t).unwrap();
        let m2 = free_module(&obj(&[2]), &t).unwrap();
        assert!(matches!(iso_search(&m1, &m2, 10, 0).unwrap(), IsoSearch::DimensionMismatch));
        match iso_search(&m1, &m1, 10, 0).unwrap() {
            IsoSearch::Found(h) => assert!(h.iso_check() && h.is_valid(&m1, &m1)),
            other => panic!("expected a witness, got {other:?}"),
        }
    }
}
