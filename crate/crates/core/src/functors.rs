//! Truncation functors, the shift `Σ_i`, coinduction `coind_i`, and the
//! comparison map `θ` for external tensor products.

use crate::category::Truncation;
use crate::error::{invariant, usage, Result};
use crate::fi::{
    alpha_y, enumerate_morphisms, epsilon, epsilon_split, iota_i, remove_point, star, FimObject,
    Injection, MorTuple,
};
use crate::homological::ext1;
use crate::linalg::{Rat, RatMatrix};
use crate::module::{
    direct_sum, external_tensor_pair, free_module, hom_space, DirectSum, FunctorModule, HomSpace,
    ModuleHom,
};

/// Restriction of `V` (over `t'`) to the subcategory `≤ t`.
pub fn pullback(v: &FunctorModule, t: &Truncation) -> Result<FunctorModule> {
    if t.m() != v.m() || !t.le(v.truncation()) {
        return Err(usage!("cannot pull back from {} to {t}", v.truncation()));
    }
    let dims = t.objects().iter().map(|s| v.dim_at(s)).collect();
    FunctorModule::from_generator_fn(t, dims, |g| v.generator_action(g).clone())
}

/// Extension by zero of `W` (over `t`) to `ambient ≥ t`.
pub fn pushforward(w: &FunctorModule, ambient: &Truncation) -> Result<FunctorModule> {
    let t = w.truncation();
    if t.m() != ambient.m() || !t.le(ambient) {
        return Err(usage!("cannot push forward from {t} to {ambient}"));
    }
    let dims = ambient.objects().iter().map(|s| w.dim_at(s)).collect();
    FunctorModule::from_generator_fn(ambient, dims, |g| {
        if t.contains(&g.target()) {
            w.generator_action(g).clone()
        } else {
            RatMatrix::zeros(0, w.dim_at(g.source()))
        }
    })
}

/// Bookkeeping for `Σ_i`: a module over `original` shifts to one over
/// `result = original - e_coord`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedTruncation {
    pub original: Truncation,
    pub coord: usize,
    pub result: Truncation,
}

impl ShiftedTruncation {
    pub fn new(t: &Truncation, i: usize) -> Result<Self> {
        if i >= t.m() {
            return Err(usage!("coordinate {i} out of range for arity {}", t.m()));
        }
        let result = t
            .shrink(i)
            .ok_or_else(|| usage!("cannot shift {t} in coordinate {i}: bound is 0"))?;
        Ok(ShiftedTruncation {
            original: t.clone(),
            coord: i,
            result,
        })
    }
}

/// `Σ_i V = V ∘ ι_i`, over `t - e_i`.
pub fn shift(v: &FunctorModule, i: usize) -> Result<FunctorModule> {
    let st = ShiftedTruncation::new(v.truncation(), i)?;
    let dims = st
        .result
        .objects()
        .iter()
        .map(|s| v.dim_at(&s.bump(i)))
        .collect();
    let mut failure = None;
    let out = FunctorModule::from_generator_fn(&st.result, dims, |g| {
        let f = iota_i(&g.morphism(), i).expect("coordinate checked");
        match v.action(&f) {
            Ok(a) => (*a).clone(),
            Err(e) => {
                failure.get_or_insert(e);
                RatMatrix::zeros(v.dim_at(&g.target().bump(i)), v.dim_at(&g.source().bump(i)))
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// `Σ_i` on a homomorphism.
pub fn shift_hom(h: &ModuleHom, t: &Truncation, i: usize) -> Result<ModuleHom> {
    let st = ShiftedTruncation::new(t, i)?;
    Ok(ModuleHom::new(
        st.result
            .objects()
            .iter()
            .map(|s| h.mats[t.index_of(&s.bump(i)).unwrap()].clone())
            .collect(),
    ))
}

/// `S^x` in coordinate `i`.
fn remove_in(s: &FimObject, i: usize, x: usize) -> FimObject {
    s.with(i, remove_point(s.0[i], x))
}

/// Replaces coordinate `i` of `f`.
fn with_coord(f: &MorTuple, i: usize, inj: Injection) -> MorTuple {
    let mut parts = f.0.clone();
    parts[i] = inj;
    MorTuple(parts)
}

/// `ε_x` placed in coordinate `i` of `S`, identities elsewhere.
fn epsilon_at(s: &FimObject, i: usize, x: usize) -> Result<MorTuple> {
    Ok(with_coord(&MorTuple::identity(s), i, epsilon(s.0[i], x)?))
}

/// The ε_x-decomposition `Σ_i M(S) ≅ ⊕_{x ∈ Ŝ_i} M(S^x)`, both directions.
#[derive(Clone, Debug)]
pub struct ShiftDecomposition {
    pub shifted: FunctorModule,
    /// Summands in the order `x = 1, …, |S_i|, *`; a summand whose object
    /// leaves the truncation is the zero module.
    pub sum: DirectSum,
    pub summand_objects: Vec<FimObject>,
    pub fwd: ModuleHom,
    pub bwd: ModuleHom,
}

/// Decomposes `Σ_i M(S)` (with `M(S)` over `t`).
pub fn decompose_shift_free(s: &FimObject, i: usize, t: &Truncation) -> Result<ShiftDecomposition> {
    let m = free_module(s, t)?;
    let shifted = shift(&m, i)?;
    let small = shifted.truncation().clone();
    let n = s.0[i];
    let summand_objects: Vec<FimObject> = (1..=star(n)).map(|x| remove_in(s, i, x)).collect();
    let summands = summand_objects
        .iter()
        .map(|o| {
            if small.contains(o) {
                free_module(o, &small)
            } else {
                Ok(FunctorModule::zero(&small))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&FunctorModule> = summands.iter().collect();
    let sum = direct_sum(&refs)?;
    let mut fwd = Vec::new();
    let mut bwd = Vec::new();
    for (u_idx, u) in small.objects().iter().enumerate() {
        let offsets: Vec<usize> = summands
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d.dim(u_idx);
                Some(o)
            })
            .collect();
        let total = sum.module.dim(u_idx);
        let mut f = RatMatrix::zeros(total, shifted.dim(u_idx));
        for g in enumerate_morphisms(s, &u.bump(i)) {
            let (x, beta) = epsilon_split(&g.0[i])?;
            let b = with_coord(&g, i, beta);
            f[(offsets[x - 1] + b.rank(), g.rank())] = Rat::one();
        }
        // The inverse, built independently: β ↦ ι_i(β) ∘ ε_x.
        let mut h = RatMatrix::zeros(shifted.dim(u_idx), total);
        for (k, o) in summand_objects.iter().enumerate() {
            if summands[k].dim(u_idx) == 0 {
                continue;
            }
            let e = epsilon_at(s, i, k + 1)?;
            for beta in enumerate_morphisms(o, u) {
                let g = iota_i(&beta, i)?.compose(&e)?;
                h[(g.rank(), offsets[k] + beta.rank())] = Rat::one();
            }
        }
        fwd.push(f);
        bwd.push(h);
    }
    Ok(ShiftDecomposition {
        shifted,
        sum,
        summand_objects,
        fwd: ModuleHom::new(fwd),
        bwd: ModuleHom::new(bwd),
    })
}

/// `coind_i(V)` together with the hom-spaces realizing its values.
#[derive(Clone, Debug)]
pub struct Coinduction {
    pub module: FunctorModule,
    pub coord: usize,
    /// Per object `S` of the result: `Σ_i M(S)` restricted to the truncation
    /// of `V`.
    pub sources: Vec<FunctorModule>,
    /// Per object `S`: the basis of `Hom(Σ_i M(S), V)` giving coordinates on
    /// the value at `S`.
    pub homs: Vec<HomSpace>,
}

impl Coinduction {
    /// Coordinates of a homomorphism `Σ_i M(S) → V` in the value at `S`.
    pub fn coordinates(&self, s_idx: usize, h: &ModuleHom) -> Option<Vec<Rat>> {
        self.homs[s_idx].coordinates(h)
    }
}

/// `coind_i(V)` over `t ≥ t(V)`: the value at `S ≤ t` is
/// `Hom(Σ_i M(S), V)`, with `Σ_i M(S)` formed over `t + e_i` and restricted to
/// the truncation of `V`, and a morphism `r: S → T` acts by
/// `α ↦ (g ↦ α(g ∘ r))`.
///
/// Taking `t = t(V) + e_i` gives the truncated right adjoint of
/// `Σ_i: Mod(≤ t) → Mod(≤ t - e_i)`.
pub fn coind_on(v: &FunctorModule, i: usize, t: &Truncation) -> Result<Coinduction> {
    let tv = v.truncation();
    if i >= t.m() || t.m() != tv.m() || !tv.le(t) {
        return Err(usage!("cannot coinduce from {tv} to {t} in coordinate {i}"));
    }
    let big = t.grow(i);
    let objects = t.objects();
    let mut sources = Vec::with_capacity(objects.len());
    let mut homs = Vec::with_capacity(objects.len());
    for s in &objects {
        let p = pullback(&shift(&free_module(s, &big)?, i)?, tv)?;
        homs.push(hom_space(&p, v)?);
        sources.push(p);
    }
    let dims: Vec<usize> = homs.iter().map(HomSpace::dim).collect();
    let mut failure = None;
    let module = FunctorModule::from_generator_fn(t, dims.clone(), |g| {
        let s = t.index_of(g.source()).unwrap();
        let u = t.index_of(&g.target()).unwrap();
        let r = g.morphism();
        let mut out = RatMatrix::zeros(dims[u], dims[s]);
        if dims[u] == 0 || dims[s] == 0 {
            return out;
        }
        // ρ_r : Σ M(U) → Σ M(S), g ↦ g ∘ r, evaluated at the generator
        // objects of Σ M(U).
        let target_space = &homs[u];
        let moved: Vec<(usize, Vec<Rat>)> = target_space
            .generators
            .iter()
            .map(|(w, e)| {
                let rho = precompose_matrix(&g.target(), g.source(), &r, &tv.object(*w), i);
                (*w, rho.mul_vec(e))
            })
            .collect();
        for (col, alpha) in homs[s].basis.iter().enumerate() {
            let values: Vec<Rat> = moved
                .iter()
                .flat_map(|(w, e)| alpha.mats[*w].mul_vec(e))
                .collect();
            match target_space.gen_values.solve(&values) {
                Ok(Some(c)) => {
                    for (row, x) in c.into_iter().enumerate() {
                        out[(row, col)] = x;
                    }
                }
                _ => {
                    failure.get_or_insert_with(|| invariant!("r·α left Hom(ΣM(T), V) for r = {g}"));
                }
            }
        }
        out
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Coinduction {
        module,
        coord: i,
        sources,
        homs,
    })
}

/// Matrix of `Σ_i M(T)(W) → Σ_i M(S)(W)`, `g ↦ g ∘ r`, for `r: S → T`.
fn precompose_matrix(t: &FimObject, s: &FimObject, r: &MorTuple, w: &FimObject, i: usize) -> RatMatrix {
    let wb = w.bump(i);
    let mut a = RatMatrix::zeros(s.hom_count(&wb), t.hom_count(&wb));
    for g in enumerate_morphisms(t, &wb) {
        let h = g.compose(r).expect("composable");
        a[(h.rank(), g.rank())] = Rat::one();
    }
    a
}

/// `coind_i(V)` over the truncation of `V` itself.
pub fn coind_definitional(v: &FunctorModule, i: usize) -> Result<FunctorModule> {
    Ok(coind_on(v, i, v.truncation())?.module)
}

/// `v̄ˣ`: the homomorphism `Σ_i M(S) → V` sending `ε_y` to `δ_{xy} v`,
/// with `v ∈ V(S^x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarElement {
    pub s: FimObject,
    pub x: usize,
    pub v: Vec<Rat>,
}

impl BarElement {
    pub fn object(&self, i: usize) -> FimObject {
        remove_in(&self.s, i, self.x)
    }
}

/// Realizes `b` as a homomorphism `Σ_i M(S) → V` (restricted to the
/// truncation of `V`), via the ε_x-decomposition of basis morphisms.
pub fn bar_hom_map(b: &BarElement, v: &FunctorModule, i: usize) -> Result<ModuleHom> {
    let tv = v.truncation();
    let n = b.s.0[i];
    if b.x == 0 || b.x > star(n) {
        return Err(usage!("bar element index {} outside [{n}]^", b.x));
    }
    let sx = b.object(i);
    if b.v.len() != v.dim_at(&sx) {
        return Err(usage!("bar element vector has the wrong length"));
    }
    let mut mats = Vec::new();
    for u in tv.objects() {
        let homs = enumerate_morphisms(&b.s, &u.bump(i));
        let mut a = RatMatrix::zeros(v.dim_at(&u), homs.len());
        if sx.le(&u) {
            for g in &homs {
                let (y, beta) = epsilon_split(&g.0[i])?;
                if y != b.x {
                    continue;
                }
                let beta = with_coord(g, i, beta);
                let col = v.action(&beta)?.mul_vec(&b.v);
                for (row, c) in col.into_iter().enumerate() {
                    a[(row, g.rank())] = c;
                }
            }
        }
        mats.push(a);
    }
    Ok(ModuleHom::new(mats))
}

/// `v̄ˣ` as a vector of the value of `coind_i(V)` at `S`.
pub fn bar_hom(b: &BarElement, c: &Coinduction, v: &FunctorModule) -> Result<Vec<Rat>> {
    let t = c.module.truncation();
    let s_idx = t
        .index_of(&b.s)
        .ok_or_else(|| usage!("object {} outside {t}", b.s))?;
    let h = bar_hom_map(b, v, c.coord)?;
    c.coordinates(s_idx, &h)
        .ok_or_else(|| invariant!("bar element is not a homomorphism out of ΣM({})", b.s))
}

/// The action of `α: S → T` on `v̄ˣ`: a single term at `y = α_i(x)` when `x`
/// is a point of `S_i`, and one term for each `y ∈ T̂_i` outside the image of
/// `α_i` when `x = *`. Each term carries `V(α^y) v`.
pub fn bar_action(alpha: &MorTuple, b: &BarElement, v: &FunctorModule, i: usize) -> Result<Vec<BarElement>> {
    if alpha.source() != b.s {
        return Err(usage!("{alpha} does not start at {}", b.s));
    }
    let t = alpha.target();
    let ai = &alpha.0[i];
    let ys: Vec<usize> = if b.x == star(b.s.0[i]) {
        (1..=star(t.0[i])).filter(|&y| ai.preimage(y).is_none()).collect()
    } else {
        vec![ai.apply(b.x)]
    };
    ys.into_iter()
        .map(|y| {
            let (x, restricted) = alpha_y(ai, y)?;
            debug_assert_eq!(x, b.x);
            let ay = with_coord(alpha, i, restricted);
            let vv = if v.truncation().contains(&ay.target()) {
                v.action(&ay)?.mul_vec(&b.v)
            } else {
                Vec::new()
            };
            Ok(BarElement { s: t.clone(), x: y, v: vv })
        })
        .collect()
}

/// The explicit isomorphism `M(S) ⊕ M(S + e_i) → coind_i(M(S))`, sending the
/// two identities to the Yoneda elements `v̄*` (at `S`, with `v = id_S`) and
/// `v̄ˣ` (at `S + e_i`, `x` the new point, `v = id_S`).
#[derive(Clone, Debug)]
pub struct CoindFreeFormula {
    pub sum: DirectSum,
    pub coind: FunctorModule,
    pub iso: ModuleHom,
}

pub fn coind_free_formula(s: &FimObject, i: usize, t: &Truncation) -> Result<CoindFreeFormula> {
    let s2 = s.bump(i);
    if !t.contains(&s2) {
        return Err(usage!("{s2} is not ≤ {t}: the second summand leaves the truncation"));
    }
    let m = free_module(s, t)?;
    let m2 = free_module(&s2, t)?;
    let sum = direct_sum(&[&m, &m2])?;
    let c = coind_on(&m, i, t)?;
    // id_S is the first basis morphism of M(S)(S).
    let mut id = vec![Rat::zero(); s.aut_order()];
    id[0] = Rat::one();
    let xi1 = bar_hom(
        &BarElement {
            s: s.clone(),
            x: star(s.0[i]),
            v: id.clone(),
        },
        &c,
        &m,
    )?;
    let xi2 = bar_hom(
        &BarElement {
            s: s2.clone(),
            x: s2.0[i],
            v: id,
        },
        &c,
        &m,
    )?;
    let mut mats = Vec::new();
    for u in t.objects() {
        let mut cols = Vec::new();
        for g in enumerate_morphisms(s, &u) {
            cols.push(c.module.action(&g)?.mul_vec(&xi1));
        }
        for g in enumerate_morphisms(&s2, &u) {
            cols.push(c.module.action(&g)?.mul_vec(&xi2));
        }
        mats.push(RatMatrix::from_columns(c.module.dim_at(&u), &cols));
    }
    Ok(CoindFreeFormula {
        sum,
        coind: c.module,
        iso: ModuleHom::new(mats),
    })
}

/// How `θ` splits a coefficient matrix into elementary tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorSplit {
    /// Left factors are pivot columns (column reduction).
    Columns,
    /// Right factors are pivot rows.
    Rows,
}

/// Writes `c` as `Σ_k v_k w_kᵀ` with independent `v_k`.
fn elementary_tensors(c: &RatMatrix, split: TensorSplit) -> Vec<(Vec<Rat>, Vec<Rat>)> {
    match split {
        TensorSplit::Columns => {
            let (r, piv) = c.rref();
            piv.iter()
                .enumerate()
                .map(|(k, &p)| (c.column(p), r.row(k).to_vec()))
                .collect()
        }
        TensorSplit::Rows => {
            let (r, piv) = c.transpose().rref();
            piv.iter()
                .enumerate()
                .map(|(k, &p)| (r.row(k).to_vec(), c.row(p).to_vec()))
                .collect()
        }
    }
}

/// The comparison `θ: coind(V ⊠ W) → coind(V) ⊠ W`, coinduction in the first
/// coordinate of `V`. `V` and `W` may have any arity, so the general case is
/// reached by currying.
#[derive(Clone, Debug)]
pub struct Theta {
    pub source: FunctorModule,
    pub target: FunctorModule,
    pub map: ModuleHom,
}

pub fn theta(v: &FunctorModule, w: &FunctorModule) -> Result<Theta> {
    theta_with(v, w, TensorSplit::Columns)
}

pub fn theta_with(v: &FunctorModule, w: &FunctorModule, split: TensorSplit) -> Result<Theta> {
    let vw = external_tensor_pair(v, w);
    let t = vw.truncation().clone();
    let cvw = coind_on(&vw, 0, &t)?;
    let cv = coind_on(v, 0, v.truncation())?;
    let target = external_tensor_pair(&cv.module, w);
    let mv = v.m();
    let mut mats = Vec::new();
    for (st_idx, st) in t.objects().iter().enumerate() {
        let s = FimObject(st.0[..mv].to_vec());
        let tt = FimObject(st.0[mv..].to_vec());
        let dw = w.dim_at(&tt);
        let mut a = RatMatrix::zeros(target.dim(st_idx), cvw.module.dim(st_idx));
        for (col, phi) in cvw.homs[st_idx].basis.iter().enumerate() {
            let mut acc = vec![Rat::zero(); target.dim(st_idx)];
            for x in 1..=star(s.0[0]) {
                let sx = remove_in(&s, 0, x);
                let dv = v.dim_at(&sx);
                if dv == 0 || dw == 0 {
                    continue;
                }
                let mut u = sx.0.clone();
                u.extend(tt.0.iter());
                let u = FimObject(u);
                let e = epsilon_at(st, 0, x)?;
                let value = phi.mats[t.index_of(&u).unwrap()].column(e.rank());
                let coeff = RatMatrix::from_vec(dv, dw, value)?;
                for (vk, wk) in elementary_tensors(&coeff, split) {
                    let bar = bar_hom(
                        &BarElement {
                            s: s.clone(),
                            x,
                            v: vk,
                        },
                        &cv,
                        v,
                    )?;
                    let term = RatMatrix::column_vector(&bar).kronecker(&RatMatrix::column_vector(&wk));
                    for (k, val) in term.entries().iter().enumerate() {
                        acc[k] += val;
                    }
                }
            }
            for (row, x) in acc.into_iter().enumerate() {
                a[(row, col)] = x;
            }
        }
        mats.push(a);
    }
    Ok(Theta {
        source: cvw.module,
        target,
        map: ModuleHom::new(mats),
    })
}

/// Dimensions on both sides of `Σ_i ⊣ coind_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// `dim Hom(Σ_i V, W)` over `t - e_i`.
    pub hom_shift: usize,
    /// `dim Hom(V, coind_i W)` over `t`.
    pub hom_coind: usize,
    /// `dim Ext¹(Σ_i V, W)` and `dim Ext¹(V, coind_i W)`, when requested.
    pub ext: Option<(usize, usize)>,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.hom_shift == self.hom_coind && self.ext.is_none_or(|(a, b)| a == b)
    }
}

/// Compares `Hom(Σ_i V, W)` with `Hom(V, coind_i W)` for `V, W` over `t`; `W`
/// enters the left side restricted to `t - e_i` and the coinduction is taken
/// from there back up to `t`.
pub fn adjunction_check(v: &FunctorModule, w: &FunctorModule, i: usize, with_ext: bool) -> Result<AdjunctionReport> {
    let t = v.truncation();
    if w.truncation() != t {
        return Err(usage!("adjunction check needs both modules over the same truncation"));
    }
    let st = ShiftedTruncation::new(t, i)?;
    let sv = shift(v, i)?;
    let w_small = pullback(w, &st.result)?;
    let cw = coind_on(&w_small, i, t)?.module;
    let hom_shift = hom_space(&sv, &w_small)?.dim();
    let hom_coind = hom_space(v, &cw)?.dim();
    let ext = if with_ext {
        Some((ext1(&sv, &w_small)?.dim, ext1(v, &cw)?.dim))
    } else {
        None
    };
    Ok(AdjunctionReport {
        hom_shift,
        hom_coind,
        ext,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(p: &[usize]) -> FimObject {
        FimObject(p.to_vec())
    }

    fn t(p: &[usize]) -> Truncation {
        Truncation::new(p.to_vec())
    }

    #[test]
    fn pullback_pushforward_shift_examples() {
        let m1 = free_module(&obj(&[1]), &t(&[3])).unwrap();
        assert_eq!(pullback(&m1, &t(&[2])).unwrap().dims(), &[0, 1, 2]);
        assert_eq!(pullback(&m1, &t(&[3])).unwrap(), m1);
        assert!(pullback(&m1, &t(&[4])).is_err());

        let c = crate::module::concentrated(&obj(&[1]), &t(&[1])).unwrap();
        let p = pushforward(&c, &t(&[2])).unwrap();
        assert_eq!(p.dims(), &[0, 1, 0]);
        assert!(p.validate().is_empty());
        assert_eq!(pullback(&p, &t(&[1])).unwrap(), c);

        let s = shift(&m1, 0).unwrap();
        assert_eq!(s.dims(), &[1, 2, 3]);
        assert!(s.validate().is_empty());
        let m0 = free_module(&obj(&[0]), &t(&[3])).unwrap();
        assert_eq!(shift(&m0, 0).unwrap(), free_module(&obj(&[0]), &t(&[2])).unwrap());
        assert!(shift(&free_module(&obj(&[0, 0]), &t(&[1, 0])).unwrap(), 1).is_err());
    }

    #[test]
    fn shift_decomposition_examples() {
        let d = decompose_shift_free(&obj(&[1]), 0, &t(&[3])).unwrap();
        assert_eq!(d.summand_objects, vec![obj(&[0]), obj(&[1])]);
        assert_eq!(d.shifted.dim_at(&obj(&[2])), 3);
        let d = decompose_shift_free(&obj(&[2]), 0, &t(&[3])).unwrap();
        assert_eq!(d.summand_objects, vec![obj(&[1]), obj(&[1]), obj(&[2])]);
        assert_eq!(d.shifted.dim_at(&obj(&[1])), 2);
        for d in [
            decompose_shift_free(&obj(&[2]), 0, &t(&[3])).unwrap(),
            decompose_shift_free(&obj(&[1, 1]), 0, &t(&[2, 2])).unwrap(),
        ] {
            assert!(d.fwd.is_valid(&d.shifted, &d.sum.module));
            assert!(d.bwd.is_valid(&d.sum.module, &d.shifted));
            assert_eq!(d.fwd.compose(&d.bwd), ModuleHom::identity(&d.sum.module));
            assert_eq!(d.bwd.compose(&d.fwd), ModuleHom::identity(&d.shifted));
        }
    }

    #[test]
    fn coind_examples() {
        let tt = t(&[2]);
        let c0 = coind_definitional(&free_module(&obj(&[0]), &tt).unwrap(), 0).unwrap();
        assert_eq!(c0.dims(), &[1, 2, 3]);
        assert!(c0.validate().is_empty());
        let c1 = coind_definitional(&free_module(&obj(&[1]), &tt).unwrap(), 0).unwrap();
        assert_eq!(c1.dim_at(&obj(&[2])), 4);
        assert!(coind_definitional(&FunctorModule::zero(&tt), 0).unwrap().is_zero());
    }

    #[test]
    fn coind_free_formula_examples() {
        let f = coind_free_formula(&obj(&[1]), 0, &t(&[3])).unwrap();
        assert_eq!(f.coind.dims(), &[0, 1, 4, 9]);
        assert!(f.iso.iso_check());
        assert!(f.iso.is_valid(&f.sum.module, &f.coind));
        let f = coind_free_formula(&obj(&[1, 0]), 0, &t(&[2, 1])).unwrap();
        assert!(f.iso.iso_check());
        assert!(f.iso.is_valid(&f.sum.module, &f.coind));
        assert!(coind_free_formula(&obj(&[3]), 0, &t(&[3])).is_err());
    }

    #[test]
    fn bar_action_cases() {
        let v = free_module(&obj(&[0]), &t(&[2])).unwrap();
        let one = vec![Rat::one()];
        let id1 = MorTuple::identity(&obj(&[1]));
        let b = BarElement { s: obj(&[1]), x: 1, v: one.clone() };
        assert_eq!(bar_action(&id1, &b, &v, 0).unwrap().len(), 1);
        let inc = MorTuple::standard(&obj(&[1]), &obj(&[2]));
        let b = BarElement { s: obj(&[1]), x: 2, v: one };
        assert_eq!(bar_action(&inc, &b, &v, 0).unwrap().len(), 2);
    }

    #[test]
    fn theta_small() {
        let v = free_module(&obj(&[1]), &t(&[2])).unwrap();
        let w = free_module(&obj(&[0]), &t(&[1])).unwrap();
        let th = theta(&v, &w).unwrap();
        assert!(th.map.is_valid(&th.source, &th.target));
        assert!(th.map.iso_check());
        assert_eq!(th.source.dim_at(&obj(&[1, 0])), 1);
        let alt = theta_with(&v, &w, TensorSplit::Rows).unwrap();
        assert_eq!(alt.map, th.map);
    }

    #[test]
    fn adjunction_examples() {
        let tt = t(&[3]);
        let m1 = free_module(&obj(&[1]), &tt).unwrap();
        let r = adjunction_check(&m1, &m1, 0, true).unwrap();
        assert_eq!((r.hom_shift, r.hom_coind), (1, 1));
        assert!(r.holds());
        let z = FunctorModule::zero(&tt);
        let r = adjunction_check(&m1, &z, 0, false).unwrap();
        assert_eq!((r.hom_shift, r.hom_coind), (0, 0));
    }
}
