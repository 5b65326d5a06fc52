//! Presentations, Ext¹, injectivity over the truncated algebra, torsion, and
//! the Nakayama functor.

use std::fmt;
use std::str::FromStr;

use crate::category::{semisimple_quotient_module, CategoryAlgebra, TruncatedCategory, Truncation};
use crate::error::{invariant, usage, Error, Result};
use crate::fi::{enumerate_morphisms, FimObject, MorTuple};
use crate::linalg::{Rat, RatMatrix, Subspace};
use crate::module::{
    concentrated, coregular, cover_generators, cover_matrices, direct_sum, free_module, hom_space,
    kernel, quotient, submodule_from_bases, FunctorModule, HomSpace, ModuleHom,
};

/// `0 → K → F → V → 0` with `F = ⊕_j M(S_j)` free.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub v: FunctorModule,
    pub f: FunctorModule,
    /// `(object index, vector)` generators of `V`, one per summand of `F`.
    pub generators: Vec<(usize, Vec<Rat>)>,
    pub cover: ModuleHom,
    pub k: Option<FunctorModule>,
    pub incl: Option<ModuleHom>,
}

/// A free module surjecting onto `V`, generated object by object as a
/// complement of the images from smaller objects.
pub fn free_cover(v: &FunctorModule) -> Result<Presentation> {
    let t = v.truncation();
    let generators = cover_generators(v);
    let summands = generators
        .iter()
        .map(|(s, _)| free_module(&t.object(*s), t))
        .collect::<Result<Vec<_>>>()?;
    let f = if summands.is_empty() {
        FunctorModule::zero(t)
    } else {
        let refs: Vec<&FunctorModule> = summands.iter().collect();
        direct_sum(&refs)?.module
    };
    let cover = ModuleHom::new(cover_matrices(v, &generators));
    if !cover.is_surjective() {
        return Err(invariant!("free cover is not surjective"));
    }
    Ok(Presentation {
        v: v.clone(),
        f,
        generators,
        cover,
        k: None,
        incl: None,
    })
}

/// Fills in the syzygy `K = ker(F → V)`.
pub fn syzygy(mut p: Presentation) -> Result<Presentation> {
    let (k, incl) = kernel(&p.cover, &p.f, &p.v)?;
    p.k = Some(k);
    p.incl = Some(incl);
    Ok(p)
}

/// `Ext¹(V, W) ≅ Hom(K, W) / im Hom(F, W)`.
#[derive(Clone, Debug)]
pub struct Ext1Result {
    pub dim: usize,
    /// Homomorphisms `K → W` whose classes form a basis of `Ext¹`.
    pub reps: Vec<ModuleHom>,
    pub hom_k_w: usize,
    pub restriction_rank: usize,
}

pub fn ext1(v: &FunctorModule, w: &FunctorModule) -> Result<Ext1Result> {
    if v.truncation() != w.truncation() {
        return Err(usage!("Ext¹ of modules over different truncations"));
    }
    let p = syzygy(free_cover(v)?)?;
    let k = p.k.as_ref().unwrap();
    let incl = p.incl.as_ref().unwrap();
    let hkw = hom_space(k, w)?;
    if hkw.dim() == 0 {
        return Ok(Ext1Result {
            dim: 0,
            reps: Vec::new(),
            hom_k_w: 0,
            restriction_rank: 0,
        });
    }
    let restricted = restriction_coordinates(&p, incl, &hkw, w)?;
    let mut image = Subspace::new(hkw.dim());
    for c in &restricted {
        image.insert(c);
    }
    let restriction_rank = image.dim();
    let mut reps = Vec::new();
    for j in 0..hkw.dim() {
        let mut e = vec![Rat::zero(); hkw.dim()];
        e[j] = Rat::one();
        if image.insert(&e) {
            reps.push(hkw.basis[j].clone());
        }
    }
    Ok(Ext1Result {
        dim: hkw.dim() - restriction_rank,
        reps,
        hom_k_w: hkw.dim(),
        restriction_rank,
    })
}

/// Coordinates in `Hom(K, W)` of the restrictions of a basis of
/// `Hom(F, W) = ⊕_j W(S_j)`.
fn restriction_coordinates(
    p: &Presentation,
    incl: &ModuleHom,
    hkw: &HomSpace,
    w: &FunctorModule,
) -> Result<Vec<Vec<Rat>>> {
    let t = w.truncation();
    let objects = t.objects();
    // For each K-generator, its image in F split into per-summand blocks.
    let mut per_gen = Vec::new();
    for (u, kv) in &hkw.generators {
        let y = incl.mats[*u].mul_vec(kv);
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (s, _) in &p.generators {
            let homs = enumerate_morphisms(&objects[*s], &objects[*u]);
            // Σ_g y[g] W(g): the value on this K-generator of the Yoneda maps
            // from this summand, one column per basis vector of W(S_j).
            let mut acc = RatMatrix::zeros(w.dim(*u), w.dim(*s));
            for g in &homs {
                let c = &y[offset + g.rank()];
                if !c.is_zero() {
                    acc = acc.add(&w.action(g)?.scale(c));
                }
            }
            offset += homs.len();
            blocks.push(acc);
        }
        per_gen.push(blocks);
    }
    let mut out = Vec::new();
    for (j, (s, _)) in p.generators.iter().enumerate() {
        for l in 0..w.dim(*s) {
            let values: Vec<Rat> = per_gen.iter().flat_map(|b| b[j].column(l)).collect();
            let c = hkw
                .gen_values
                .solve(&values)?
                .ok_or_else(|| invariant!("restricted map is not a homomorphism K → W"))?;
            out.push(c);
        }
    }
    Ok(out)
}

/// Injectivity over the truncated algebra: `Ext¹(A / rad A, E) = 0`.
pub fn is_injective_trunc(e: &FunctorModule) -> Result<bool> {
    let a = CategoryAlgebra::new(TruncatedCategory::build(e.truncation()));
    Ok(ext1(&semisimple_quotient_module(&a), e)?.dim == 0)
}

/// Componentwise maximum of the support, or `None` for the zero module.
pub fn upbound(v: &FunctorModule) -> Option<FimObject> {
    let t = v.truncation();
    let mut out: Option<Vec<usize>> = None;
    for (i, s) in t.objects().iter().enumerate() {
        if v.dim(i) == 0 {
            continue;
        }
        out = Some(match out {
            None => s.0.clone(),
            Some(b) => b.iter().zip(&s.0).map(|(&a, &c)| a.max(c)).collect(),
        });
    }
    out.map(FimObject)
}

/// The torsion submodule with its inclusion.
#[derive(Clone, Debug)]
pub struct TorsionPart {
    pub sub: FunctorModule,
    pub incl: ModuleHom,
    /// Whether the torsion dimensions agree with those computed one step
    /// lower (at `t - (1, …, 1)`) on objects detectable there; `None` when
    /// some coordinate of `t` is 0.
    pub stable: Option<bool>,
}

fn torsion_bases(v: &FunctorModule) -> Result<Vec<RatMatrix>> {
    let t = v.truncation();
    let top = t.bound();
    t.objects()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if s == top {
                Ok(RatMatrix::zeros(v.dim(i), 0))
            } else {
                Ok(v.action(&MorTuple::standard(s, top))?.kernel_basis())
            }
        })
        .collect()
}

/// `V_T(S) = ker V(S → t)` for `S ≠ t` and `0` at `t`. Any two morphisms
/// `S → t` differ by an automorphism of `t`, so the standard inclusion
/// detects every element killed inside the truncation.
pub fn torsion_submodule(v: &FunctorModule) -> Result<TorsionPart> {
    let t = v.truncation();
    let (sub, incl) = submodule_from_bases(v, torsion_bases(v)?)?;
    let lower: Option<Truncation> = t
        .bound()
        .0
        .iter()
        .map(|&x| x.checked_sub(1))
        .collect::<Option<Vec<_>>>()
        .map(Truncation::new);
    let stable = match lower {
        None => None,
        Some(lt) => {
            let small = crate::functors::pullback(v, &lt)?;
            let small_bases = torsion_bases(&small)?;
            Some(lt.objects().iter().enumerate().all(|(k, s)| {
                s == lt.bound() || small_bases[k].cols() == sub.dim_at(s)
            }))
        }
    };
    Ok(TorsionPart { sub, incl, stable })
}

/// `V / V_T` with the projection.
pub fn torsion_free_part(v: &FunctorModule) -> Result<(FunctorModule, ModuleHom)> {
    let tp = torsion_submodule(v)?;
    quotient(v, &tp.incl)
}

/// `ν(V)(S) = D Hom(V, M(S))`; a morphism `α: S → T` acts by the transpose of
/// postcomposition with `M(T) → M(S)`, `g ↦ g ∘ α`.
pub fn nakayama(v: &FunctorModule) -> Result<FunctorModule> {
    let t = v.truncation();
    let objects = t.objects();
    let spaces = objects
        .iter()
        .map(|s| hom_space(v, &free_module(s, t)?))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
    let mut failure = None;
    let out = FunctorModule::from_generator_fn(t, dims.clone(), |g| {
        let s = t.index_of(g.source()).unwrap();
        let u = t.index_of(&g.target()).unwrap();
        let alpha = g.morphism();
        // Rows: basis of Hom(V, M(S)); columns: basis of Hom(V, M(T)).
        let mut post = RatMatrix::zeros(dims[s], dims[u]);
        for (col, phi) in spaces[u].basis.iter().enumerate() {
            let values: Vec<Rat> = spaces[s]
                .generators
                .iter()
                .flat_map(|(w, e)| {
                    let img = phi.mats[*w].mul_vec(e);
                    restrict_along(&objects[u], &objects[s], &alpha, &objects[*w], &img)
                })
                .collect();
            match spaces[s].gen_values.solve(&values) {
                Ok(Some(c)) => {
                    for (row, x) in c.into_iter().enumerate() {
                        post[(row, col)] = x;
                    }
                }
                _ => {
                    failure.get_or_insert_with(|| invariant!("postcomposition left Hom(V, M(S))"));
                }
            }
        }
        post.transpose()
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Applies `M(T)(W) → M(S)(W)`, `g ↦ g ∘ α`, to a vector.
fn restrict_along(t: &FimObject, s: &FimObject, alpha: &MorTuple, w: &FimObject, x: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); s.hom_count(w)];
    for g in enumerate_morphisms(t, w) {
        let c = &x[g.rank()];
        if !c.is_zero() {
            out[g.compose(alpha).expect("composable").rank()] += c;
        }
    }
    out
}

/// The injective `I(U) = D kHom(-, U)`: value at `S` is the dual of
/// `kHom(S, U)`, and `f: S → S'` acts by the transpose of `h ↦ h ∘ f`.
pub fn dual_free(u: &FimObject, t: &Truncation) -> Result<FunctorModule> {
    if !t.contains(u) {
        return Err(usage!("object {u} is not ≤ {t}"));
    }
    let dims = t.objects().iter().map(|s| s.hom_count(u)).collect();
    FunctorModule::from_generator_fn(t, dims, |g| {
        let f = g.morphism();
        let tgt = g.target();
        let mut a = RatMatrix::zeros(tgt.hom_count(u), g.source().hom_count(u));
        for h in enumerate_morphisms(&tgt, u) {
            a[(h.rank(), h.compose(&f).unwrap().rank())] = Rat::one();
        }
        a
    })
}

/// `ν⁻¹(V)(U) = Hom_{C^op}(DV, kHom(-, U))`, computed through duality as
/// `Hom_C(I(U), V)`. A morphism `α: U → U'` acts by precomposition with
/// `I(U') → I(U)`, the dual of `h ↦ α ∘ h`.
pub fn inverse_nakayama(v: &FunctorModule) -> Result<FunctorModule> {
    let t = v.truncation();
    if let Some(b) = upbound(v) {
        if &b == t.bound() {
            return Err(usage!(
                "inverse Nakayama needs a module bounded strictly below {t}, upbound is {b}"
            ));
        }
    }
    let objects = t.objects();
    let injectives = objects
        .iter()
        .map(|u| dual_free(u, t))
        .collect::<Result<Vec<_>>>()?;
    let spaces = injectives
        .iter()
        .map(|i| hom_space(i, v))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = spaces.iter().map(HomSpace::dim).collect();
    let mut failure = None;
    let out = FunctorModule::from_generator_fn(t, dims.clone(), |g| {
        let s = t.index_of(g.source()).unwrap();
        let u = t.index_of(&g.target()).unwrap();
        let alpha = g.morphism();
        let mut a = RatMatrix::zeros(dims[u], dims[s]);
        // I(U') → I(U) at object W: dual of kHom(W, U) → kHom(W, U'), h ↦ α∘h.
        let moved: Vec<(usize, Vec<Rat>)> = spaces[u]
            .generators
            .iter()
            .map(|(w, e)| {
                let wo = &objects[*w];
                let mut y = vec![Rat::zero(); wo.hom_count(&objects[s])];
                for h in enumerate_morphisms(wo, &objects[s]) {
                    y[h.rank()] = e[alpha.compose(&h).unwrap().rank()].clone();
                }
                (*w, y)
            })
            .collect();
        for (col, phi) in spaces[s].basis.iter().enumerate() {
            let values: Vec<Rat> = moved
                .iter()
                .flat_map(|(w, y)| phi.mats[*w].mul_vec(y))
                .collect();
            match spaces[u].gen_values.solve(&values) {
                Ok(Some(c)) => {
                    for (row, x) in c.into_iter().enumerate() {
                        a[(row, col)] = x;
                    }
                }
                _ => {
                    failure.get_or_insert_with(|| invariant!("precomposition left Hom(I(U), V)"));
                }
            }
        }
        a
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Both sides of `ker ν = torsion` for one module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuKernelReport {
    pub nu_dims: Vec<usize>,
    pub nu_is_zero: bool,
    pub is_torsion: bool,
    pub torsion_stable: Option<bool>,
}

impl NuKernelReport {
    pub fn holds(&self) -> bool {
        self.nu_is_zero == self.is_torsion
    }
}

pub fn kernel_nu_check(v: &FunctorModule) -> Result<NuKernelReport> {
    let nu = nakayama(v)?;
    let tp = torsion_submodule(v)?;
    Ok(NuKernelReport {
        nu_dims: nu.dims().to_vec(),
        nu_is_zero: nu.is_zero(),
        is_torsion: tp.sub.dims() == v.dims(),
        torsion_stable: tp.stable,
    })
}

/// A module constructor parameterized by the truncation, so that "the same"
/// module exists at every truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// `M(S)`.
    Free(FimObject),
    /// `k` at `S`, zero elsewhere.
    Concentrated(FimObject),
    /// `ν(M(S))`, bounded with upbound `S`.
    NakayamaFree(FimObject),
    /// The dual of the regular module.
    Coregular,
    Zero,
}

impl Recipe {
    /// The module at truncation `t`, or `None` if the recipe's object does not
    /// fit under `t`.
    pub fn build(&self, t: &Truncation) -> Result<Option<FunctorModule>> {
        let fits = |s: &FimObject| s.arity() == t.m() && t.contains(s);
        Ok(match self {
            Recipe::Free(s) if fits(s) => Some(free_module(s, t)?),
            Recipe::Concentrated(s) if fits(s) => Some(concentrated(s, t)?),
            Recipe::NakayamaFree(s) if fits(s) => Some(nakayama(&free_module(s, t)?)?),
            Recipe::Coregular => Some(coregular(t)),
            Recipe::Zero => Some(FunctorModule::zero(t)),
            _ => None,
        })
    }

    pub fn arity(&self) -> Option<usize> {
        match self {
            Recipe::Free(s) | Recipe::Concentrated(s) | Recipe::NakayamaFree(s) => Some(s.arity()),
            Recipe::Coregular | Recipe::Zero => None,
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let obj = |s: &FimObject| s.0.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self {
            Recipe::Free(s) => write!(f, "free:{}", obj(s)),
            Recipe::Concentrated(s) => write!(f, "conc:{}", obj(s)),
            Recipe::NakayamaFree(s) => write!(f, "nu-free:{}", obj(s)),
            Recipe::Coregular => write!(f, "coregular"),
            Recipe::Zero => write!(f, "zero"),
        }
    }
}

impl FromStr for Recipe {
    type Err = Error;

    /// Accepts `free:1,1`, `conc:2`, `nu-free:1`, `coregular`, `zero`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = match s.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let parse_obj = |a: Option<&str>| -> Result<FimObject> {
            let a = a.ok_or_else(|| usage!("recipe {s} needs an object, e.g. {kind}:1,1"))?;
            let parts = a
                .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| usage!("bad object in recipe {s}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(FimObject(parts))
        };
        match kind {
            "free" => Ok(Recipe::Free(parse_obj(arg)?)),
            "conc" => Ok(Recipe::Concentrated(parse_obj(arg)?)),
            "nu-free" => Ok(Recipe::NakayamaFree(parse_obj(arg)?)),
            "coregular" => Ok(Recipe::Coregular),
            "zero" => Ok(Recipe::Zero),
            _ => Err(usage!("unknown recipe {s}")),
        }
    }
}

/// `dim Ext¹(V_t, W_t)` along a list of truncations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationTable {
    pub rows: Vec<(Truncation, usize)>,
    /// The last two entries agree.
    pub stable: bool,
}

impl StabilizationTable {
    pub fn stable_value(&self) -> Option<usize> {
        if self.stable {
            self.rows.last().map(|r| r.1)
        } else {
            None
        }
    }
}

/// Truncations where a recipe does not fit are skipped.
pub fn ext_stabilization(v: &Recipe, w: &Recipe, ts: &[Truncation]) -> Result<StabilizationTable> {
    let mut rows = Vec::new();
    for t in ts {
        if let (Some(vm), Some(wm)) = (v.build(t)?, w.build(t)?) {
            rows.push((t.clone(), ext1(&vm, &wm)?.dim));
        }
    }
    let n = rows.len();
    let stable = n >= 2 && rows[n - 1].1 == rows[n - 2].1;
    Ok(StabilizationTable { rows, stable })
}
