//! Brute-force `Ext¹(V, W)` by parametrizing extensions.
//!
//! An extension `0 → W → X → V → 0` splits over the field at every object,
//! so `X(S) = W(S) ⊕ V(S)` and each generator acts by `[[W(g), c_g], [0, V(g)]]`.
//! Functoriality of `X` is linear in the blocks `c`, so the cocycles form a
//! subspace; two cocycles give isomorphic extensions exactly when they differ
//! by `c_g = W(g) h_S - h_T V(g)` for some family `h_S: V(S) → W(S)`.
//! Nothing here goes through free covers or hom-space solvers.

#![allow(dead_code)]

use fimhom_core::fi::enumerate_morphisms;
use fimhom_core::linalg::{Rat, RatMatrix};
use fimhom_core::module::FunctorModule;

/// Offsets of the unknown blocks `c_g`, one per generator, stored row-major.
fn block_offsets(v: &FunctorModule, w: &FunctorModule) -> (Vec<usize>, usize) {
    let mut offsets = Vec::new();
    let mut n = 0;
    for g in v.generators() {
        offsets.push(n);
        n += w.dim_at(&g.target()) * v.dim_at(g.source());
    }
    (offsets, n)
}

fn extension(v: &FunctorModule, w: &FunctorModule, c: &[Rat], offsets: &[usize]) -> FunctorModule {
    let t = v.truncation();
    let dims: Vec<usize> = (0..t.object_count()).map(|i| w.dim(i) + v.dim(i)).collect();
    let actions = v
        .generators()
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let (ws, vs) = (w.dim_at(g.source()), v.dim_at(g.source()));
            let (wt, vt) = (w.dim_at(&g.target()), v.dim_at(&g.target()));
            let mut a = RatMatrix::zeros(wt + vt, ws + vs);
            a.set_block(0, 0, &w.actions()[k]);
            a.set_block(wt, ws, &v.actions()[k]);
            for r in 0..wt {
                for col in 0..vs {
                    a[(r, ws + col)] = c[offsets[k] + r * vs + col].clone();
                }
            }
            a
        })
        .collect();
    FunctorModule::new(t, dims, actions).expect("extension shapes")
}

/// Top-right blocks of `X(g ∘ f) - X(g) X(f)` over every generator `g` and
/// every morphism `f` into its source, flattened.
fn residual(x: &FunctorModule, v: &FunctorModule, w: &FunctorModule) -> Vec<Rat> {
    let t = x.truncation();
    let mut out = Vec::new();
    for (k, g) in x.generators().iter().enumerate() {
        let gm = g.morphism();
        let wt = w.dim_at(&g.target());
        for s in t.objects() {
            if !s.le(g.source()) {
                continue;
            }
            let (ws, vs) = (w.dim_at(&s), v.dim_at(&s));
            for f in enumerate_morphisms(&s, g.source()) {
                let lhs = x.action(&gm.compose(&f).unwrap()).unwrap();
                let rhs = x.actions()[k].mul(&x.action(&f).unwrap());
                let d = lhs.sub(&rhs);
                for r in 0..wt {
                    for col in 0..vs {
                        out.push(d[(r, ws + col)].clone());
                    }
                }
            }
        }
    }
    out
}

/// `dim Ext¹(V, W)` over the truncation shared by `V` and `W`.
pub fn ext1_by_extensions(v: &FunctorModule, w: &FunctorModule) -> usize {
    assert_eq!(v.truncation(), w.truncation());
    let (offsets, n) = block_offsets(v, w);
    if n == 0 {
        return 0;
    }
    let zero = vec![Rat::zero(); n];
    let base = residual(&extension(v, w, &zero, &offsets), v, w);
    assert!(base.iter().all(Rat::is_zero), "V or W is not a functor");
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut c = zero.clone();
        c[k] = Rat::one();
        cols.push(residual(&extension(v, w, &c, &offsets), v, w));
    }
    let cocycle_map = RatMatrix::from_columns(base.len(), &cols);
    let cocycles = n - cocycle_map.rank();

    // Coboundaries: one column per entry of some h_S.
    let t = v.truncation();
    let mut bcols = Vec::new();
    for (si, s) in t.objects().iter().enumerate() {
        for r in 0..w.dim(si) {
            for col in 0..v.dim(si) {
                let mut h = RatMatrix::zeros(w.dim(si), v.dim(si));
                h[(r, col)] = Rat::one();
                let mut c = zero.clone();
                for (k, g) in v.generators().iter().enumerate() {
                    let vs = v.dim_at(g.source());
                    let wt = w.dim_at(&g.target());
                    let mut blk = RatMatrix::zeros(wt, vs);
                    if g.source() == s {
                        blk = blk.add(&w.actions()[k].mul(&h));
                    }
                    if &g.target() == s {
                        blk = blk.sub(&h.mul(&v.actions()[k]));
                    }
                    for rr in 0..wt {
                        for cc in 0..vs {
                            c[offsets[k] + rr * vs + cc] = blk[(rr, cc)].clone();
                        }
                    }
                }
                bcols.push(c);
            }
        }
    }
    let coboundaries = if bcols.is_empty() {
        0
    } else {
        RatMatrix::from_columns(n, &bcols).rank()
    };
    cocycles - coboundaries
}
