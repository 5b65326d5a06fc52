//! Named test modules used by the suites: free, concentrated, sign,
//! Nakayama images, mixed sums, seeded cyclic submodules and their
//! quotients, and external tensors.

use fimhom_core::category::Truncation;
use fimhom_core::fi::{FimObject, Generator};
use fimhom_core::homological::nakayama;
use fimhom_core::linalg::{Rat, RatMatrix};
use fimhom_core::module::{
    concentrated, direct_sum, external_tensor, free_module, quotient, submodule_span, FunctorModule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

#[derive(Clone, Debug)]
pub struct Named {
    pub name: String,
    pub module: FunctorModule,
}

impl Named {
    fn new(name: impl Into<String>, module: FunctorModule) -> Self {
        Named {
            name: name.into(),
            module,
        }
    }
}

/// Objects `S ≤ t` with every part at most `cap`, in canonical order.
pub fn objects_capped(t: &Truncation, cap: usize) -> Vec<FimObject> {
    t.objects()
        .into_iter()
        .filter(|s| s.0.iter().all(|&x| x <= cap))
        .collect()
}

/// The one-dimensional module at `S` on which transpositions act by `-1`.
pub fn sign_concentrated(s: &FimObject, t: &Truncation) -> Result<FunctorModule> {
    let dims = t.objects().iter().map(|u| usize::from(u == s)).collect();
    Ok(FunctorModule::from_generator_fn(t, dims, |g| match g {
        Generator::Transposition { obj, .. } if obj == s => RatMatrix::from_ints(&[&[-1]]),
        _ => RatMatrix::zeros(usize::from(&g.target() == s), usize::from(g.source() == s)),
    })?)
}

fn obj_name(s: &FimObject) -> String {
    s.to_string()
}

/// A seeded cyclic submodule of `M(S)` generated in degree `S + e_0`, and
/// the corresponding quotient of `M(S)`.
fn cyclic_pair(s: &FimObject, t: &Truncation, rng: &mut ChaCha8Rng) -> Result<Option<(Named, Named)>> {
    let u = s.bump(0);
    let Some(u_idx) = t.index_of(&u) else {
        return Ok(None);
    };
    let m = free_module(s, t)?;
    let v: Vec<Rat> = (0..m.dim(u_idx))
        .map(|_| Rat::from_int(rng.gen_range(-2..=2)))
        .collect();
    if v.iter().all(Rat::is_zero) {
        return Ok(None);
    }
    let (sub, incl) = submodule_span(&m, &[(u_idx, v)])?;
    let (q, _) = quotient(&m, &incl)?;
    let n = obj_name(s);
    Ok(Some((Named::new(format!("cyclic{n}"), sub), Named::new(format!("quot{n}"), q))))
}

/// The corpus over `t`, with free and Nakayama modules restricted to objects
/// whose parts are at most `cap`.
pub fn corpus(t: &Truncation, cap: usize, seed: u64) -> Result<Vec<Named>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let small = objects_capped(t, cap);
    for s in &small {
        out.push(Named::new(format!("free{}", obj_name(s)), free_module(s, t)?));
    }
    for s in t.objects() {
        out.push(Named::new(format!("conc{}", obj_name(&s)), concentrated(&s, t)?));
        if s.0.iter().any(|&x| x >= 2) && s.0.iter().all(|&x| x <= cap) {
            out.push(Named::new(format!("sign{}", obj_name(&s)), sign_concentrated(&s, t)?));
        }
    }
    for s in &small {
        let m = free_module(s, t)?;
        out.push(Named::new(format!("nu-free{}", obj_name(s)), nakayama(&m)?));
    }
    let zero = FimObject::zero(t.m());
    let one = zero.bump(0);
    if t.contains(&one) {
        let a = free_module(&zero, t)?;
        let b = concentrated(&one, t)?;
        out.push(Named::new(
            format!("free{}+conc{}", obj_name(&zero), obj_name(&one)),
            direct_sum(&[&a, &b])?.module,
        ));
    }
    for s in &small {
        if let Some((c, q)) = cyclic_pair(s, t, &mut rng)? {
            out.push(c);
            out.push(q);
        }
    }
    if t.m() == 2 {
        let t0 = Truncation::new(vec![t.bound().0[0]]);
        let t1 = Truncation::new(vec![t.bound().0[1]]);
        let f = |n: usize, tt: &Truncation| FimObject(vec![n.min(tt.bound().0[0])]);
        let a = free_module(&f(1, &t0), &t0)?;
        let b = concentrated(&f(1, &t1), &t1)?;
        out.push(Named::new("tensor[free(1),conc(1)]", external_tensor(&[&a, &b])?));
        let c = concentrated(&f(0, &t0), &t0)?;
        let d = free_module(&f(0, &t1), &t1)?;
        out.push(Named::new("tensor[conc(0),free(0)]", external_tensor(&[&c, &d])?));
    }
    Ok(out)
}
