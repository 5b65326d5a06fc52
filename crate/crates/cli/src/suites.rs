//! Verification suites. Each suite turns one statement about truncated
//! FI^m-modules into exact checks over a finite range of objects.

use std::ops::RangeInclusive;
use std::thread;

use fimhom_core::category::{algebra_kronecker_check, Truncation};
use fimhom_core::fi::{enumerate_morphisms, star, FimObject};
use fimhom_core::functors::{
    adjunction_check, bar_action, bar_hom, coind_definitional, coind_free_formula, coind_on,
    decompose_shift_free, pullback, shift, theta, theta_with, BarElement, TensorSplit,
};
use fimhom_core::homological::{
    ext1, ext_stabilization, inverse_nakayama, is_injective_trunc, kernel_nu_check, nakayama,
    upbound, Recipe,
};
use fimhom_core::linalg::{Rat, RatMatrix};
use fimhom_core::module::{
    concentrated, coregular, direct_sum, external_tensor, external_tensor_pair, free_module,
    iso_search, FunctorModule, IsoSearch, ModuleHom,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus::{corpus, objects_capped, sign_concentrated, Named};
use crate::error::{CliError, Result};
use crate::report::{Case, Cases, Report, Status};

pub const SUITES: &[&str] = &[
    "shift-decomp",
    "coind-free",
    "bar-formula",
    "theta",
    "adjunction",
    "tensor-sum",
    "kron-algebra",
    "injectivity",
    "ext-stability",
    "tensor-injective",
    "nakayama-kernel",
    "nakayama-dims",
];

/// Trials for randomized isomorphism searches.
const ISO_TRIALS: usize = 64;

/// A requested run. Unset fields take per-suite defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub suite: String,
    pub m: Option<usize>,
    pub t: Option<Vec<usize>>,
    pub t_range: Option<(usize, usize)>,
    pub max_n: Option<usize>,
    pub seed: u64,
}

/// A fully resolved run of one suite at one arity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    pub suite: String,
    pub m: usize,
    pub t: Vec<usize>,
    pub t_range: (usize, usize),
    pub max_n: usize,
    pub seed: u64,
}

impl Run {
    fn truncation(&self) -> Truncation {
        Truncation::new(self.t.clone())
    }

    fn range(&self) -> RangeInclusive<usize> {
        self.t_range.0..=self.t_range.1
    }
}

fn arities(suite: &str) -> &'static [usize] {
    match suite {
        "theta" | "tensor-sum" | "kron-algebra" | "tensor-injective" => &[2],
        _ => &[1, 2],
    }
}

fn min_arity(suite: &str) -> usize {
    arities(suite)[0]
}

/// Default `(t, max_n)` for a suite; `t` has one entry per coordinate.
fn defaults(suite: &str, m: usize) -> (Vec<usize>, usize) {
    let (t1, t2, n1, n2) = match suite {
        "shift-decomp" | "coind-free" => (4, 3, 3, 2),
        "bar-formula" => (2, 2, 2, 2),
        "theta" => (3, 3, 2, 2),
        "adjunction" | "nakayama-kernel" | "nakayama-dims" => (3, 2, 2, 1),
        "injectivity" => (4, 2, 4, 2),
        "ext-stability" => (5, 4, 2, 1),
        _ => (2, 2, 2, 2),
    };
    match m {
        1 => (vec![t1], n1),
        2 => (vec![t2; 2], n2),
        _ => (vec![1; m], 1),
    }
}

fn default_range(m: usize) -> (usize, usize) {
    if m == 1 {
        (2, 5)
    } else {
        (2, 4)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Resolves a requested configuration into concrete runs. `all` without an
/// explicit arity runs every suite at every arity it supports.
pub fn resolve(cfg: &SuiteConfig) -> Result<Vec<Run>> {
    let names: Vec<&str> = if cfg.suite == "all" {
        SUITES.to_vec()
    } else if let Some(s) = SUITES.iter().find(|s| **s == cfg.suite) {
        vec![*s]
    } else {
        return Err(usage(format!(
            "unknown suite {:?}; known suites: all, {}",
            cfg.suite,
            SUITES.join(", ")
        )));
    };
    let m_req = match (&cfg.m, &cfg.t) {
        (Some(m), Some(t)) if t.len() != *m => {
            return Err(usage(format!("--t has {} entries but --m is {m}", t.len())))
        }
        (Some(m), _) => Some(*m),
        (None, Some(t)) => Some(t.len()),
        (None, None) => None,
    };
    if m_req == Some(0) {
        return Err(usage("arity must be positive"));
    }
    if cfg.max_n == Some(0) {
        return Err(usage("--max-n must be positive"));
    }
    if let Some((a, b)) = cfg.t_range {
        if a > b {
            return Err(usage(format!("empty --t-range {a}..{b}")));
        }
    }
    let mut runs = Vec::new();
    for name in names {
        let ms: Vec<usize> = match m_req {
            Some(m) if m >= min_arity(name) => vec![m],
            Some(m) if cfg.suite != "all" => {
                return Err(usage(format!(
                    "suite {name} needs arity at least {}, got {m}",
                    min_arity(name)
                )))
            }
            Some(_) => continue,
            None => arities(name).to_vec(),
        };
        for m in ms {
            let (t, max_n) = defaults(name, m);
            runs.push(Run {
                suite: name.to_string(),
                m,
                t: cfg.t.clone().unwrap_or(t),
                t_range: cfg.t_range.unwrap_or_else(|| default_range(m)),
                max_n: cfg.max_n.unwrap_or(max_n),
                seed: cfg.seed,
            });
        }
    }
    Ok(runs)
}

/// Runs every resolved run, concurrently, and assembles one report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    let runs = resolve(cfg)?;
    let results: Vec<Result<Vec<Case>>> = thread::scope(|scope| {
        let handles: Vec<_> = runs
            .iter()
            .map(|r| scope.spawn(move || execute(r)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(CliError::Invariant("suite thread panicked".into())))
            })
            .collect()
    });
    let mut cases = Vec::new();
    for r in results {
        cases.extend(r?);
    }
    let config = json!({ "requested": cfg, "runs": runs });
    Ok(Report::new(cfg.suite.clone(), config, cases))
}

/// Runs one resolved suite; case names are prefixed with `suite/m=..`.
pub fn execute(run: &Run) -> Result<Vec<Case>> {
    let mut cases = Cases::new(format!("{}/m={}", run.suite, run.m));
    match run.suite.as_str() {
        "shift-decomp" => shift_decomp(run, &mut cases)?,
        "coind-free" => coind_free(run, &mut cases)?,
        "bar-formula" => bar_formula(run, &mut cases)?,
        "theta" => theta_suite(run, &mut cases)?,
        "adjunction" => adjunction(run, &mut cases)?,
        "tensor-sum" => tensor_sum(run, &mut cases)?,
        "kron-algebra" => kron_algebra(run, &mut cases)?,
        "injectivity" => injectivity(run, &mut cases)?,
        "ext-stability" => ext_stability(run, &mut cases)?,
        "tensor-injective" => tensor_injective(run, &mut cases)?,
        "nakayama-kernel" => nakayama_kernel(run, &mut cases)?,
        "nakayama-dims" => nakayama_dims(run, &mut cases)?,
        other => return Err(usage(format!("unknown suite {other:?}"))),
    }
    Ok(cases.cases)
}

fn is_identity(h: &ModuleHom) -> bool {
    h.mats.iter().all(RatMatrix::is_identity)
}

fn dims_table(t: &Truncation, cols: &[(&str, &[usize])]) -> Value {
    t.objects()
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let mut row = serde_json::Map::new();
            row.insert("obj".into(), json!(s.0));
            for (name, d) in cols {
                row.insert((*name).into(), json!(d[k]));
            }
            Value::Object(row)
        })
        .collect()
}

fn iso_status(found: &IsoSearch) -> (Status, &'static str) {
    match found {
        IsoSearch::Found(_) => (Status::Pass, "isomorphic"),
        IsoSearch::DimensionMismatch => (Status::Fail, "dimension mismatch"),
        IsoSearch::Unknown => (Status::Unknown, "no witness found"),
    }
}

/// Coordinates `i` with `t_i ≥ 1`, so that shifting is defined.
fn shiftable(t: &Truncation) -> Vec<usize> {
    (0..t.m()).filter(|&i| t.bound().0[i] >= 1).collect()
}

fn shift_decomp(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    for s in objects_capped(&t, run.max_n) {
        for i in shiftable(&t) {
            let d = decompose_shift_free(&s, i, &t)?;
            let valid = d.fwd.is_valid(&d.shifted, &d.sum.module) && d.bwd.is_valid(&d.sum.module, &d.shifted);
            let round_trip = is_identity(&d.fwd.compose(&d.bwd)) && is_identity(&d.bwd.compose(&d.fwd));
            // Yoneda: dim Σ_i M(S)(U) = |Hom(S, U + e_i)|.
            let small = d.shifted.truncation().clone();
            let oracle: Vec<usize> = small.objects().iter().map(|u| s.hom_count(&u.bump(i))).collect();
            let summands: Vec<Vec<usize>> = d.summand_objects.iter().map(|o| o.0.clone()).collect();
            cases.check(
                format!("S={s} i={}", i + 1),
                valid && round_trip && d.shifted.dims() == oracle.as_slice(),
                json!({
                    "valid": valid,
                    "round_trip": round_trip,
                    "summands": summands,
                    "dims": dims_table(&small, &[("shifted", d.shifted.dims()), ("oracle", &oracle)]),
                }),
            );
        }
    }
    Ok(())
}

fn coind_free(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    for s in objects_capped(&t, run.max_n) {
        for i in 0..t.m() {
            if !t.contains(&s.bump(i)) {
                continue;
            }
            let name = format!("S={s} i={}", i + 1);
            let f = coind_free_formula(&s, i, &t)?;
            let valid = f.iso.is_valid(&f.sum.module, &f.coind);
            let iso = f.iso.iso_check();
            let m = free_module(&s, &t)?;
            let definitional = coind_definitional(&m, i)? == f.coind;
            // Yoneda on Σ_i M(U) ≅ ⊕_x M(U^x): U_i copies of M(S)(U - e_i)
            // plus M(S)(U).
            let oracle: Vec<usize> = t
                .objects()
                .iter()
                .map(|u| {
                    let below = u.drop_one(i).map_or(0, |d| u.0[i] * s.hom_count(&d));
                    below + s.hom_count(u)
                })
                .collect();
            cases.check(
                &name,
                valid && iso && definitional && f.coind.dims() == oracle.as_slice(),
                json!({
                    "valid": valid,
                    "iso_check": iso,
                    "matches_definitional": definitional,
                    "dims": dims_table(&t, &[
                        ("coind", f.coind.dims()),
                        ("sum", f.sum.module.dims()),
                        ("oracle", &oracle),
                    ]),
                }),
            );
            // Recompute one step down and compare below t - 2e_i.
            let Some(lower) = t.shrink(i) else { continue };
            let Some(lower2) = lower.shrink(i) else { continue };
            let small = coind_definitional(&free_module(&s, &lower)?, i)?;
            let here = pullback(&f.coind, &lower2)?;
            let there = pullback(&small, &lower2)?;
            cases.check(
                format!("{name} truncation-stable"),
                here.dims() == there.dims(),
                json!({ "at_t": here.dims(), "at_t_minus": there.dims(), "compared_on": lower2.bound().0 }),
            );
        }
    }
    Ok(())
}

/// FI^m modules on which the Lemma 3.3 formulas are compared.
fn bar_modules(t: &Truncation) -> Result<Vec<Named>> {
    let mut out = Vec::new();
    let zero = FimObject::zero(t.m());
    let mut objs = vec![zero.clone()];
    for i in 0..t.m() {
        if t.contains(&zero.bump(i)) {
            objs.push(zero.bump(i));
        }
    }
    for s in &objs {
        out.push(Named {
            name: format!("free{s}"),
            module: free_module(s, t)?,
        });
    }
    for s in objs.iter().skip(1) {
        out.push(Named {
            name: format!("conc{s}"),
            module: concentrated(s, t)?,
        });
    }
    let two = zero.with(0, 2);
    if t.contains(&two) {
        out.push(Named {
            name: format!("sign{two}"),
            module: sign_concentrated(&two, t)?,
        });
    }
    Ok(out)
}

fn bar_formula(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    let objects = t.objects();
    for named in bar_modules(&t)? {
        let v = &named.module;
        for i in 0..t.m() {
            let c = coind_on(v, i, &t)?;
            let mut checked = 0usize;
            let mut mismatches = Vec::new();
            for s in &objects {
                for x in 1..=star(s.0[i]) {
                    let sx = BarElement { s: s.clone(), x, v: Vec::new() }.object(i);
                    let d = v.dim_at(&sx);
                    for k in 0..d {
                        let mut e = vec![Rat::zero(); d];
                        e[k] = Rat::one();
                        let b = BarElement { s: s.clone(), x, v: e };
                        let val = bar_hom(&b, &c, v)?;
                        for u in objects.iter().filter(|u| s.le(u)) {
                            for alpha in enumerate_morphisms(s, u) {
                                let lhs = c.module.action(&alpha)?.mul_vec(&val);
                                let mut rhs = vec![Rat::zero(); lhs.len()];
                                for term in bar_action(&alpha, &b, v, i)? {
                                    for (acc, y) in rhs.iter_mut().zip(bar_hom(&term, &c, v)?) {
                                        *acc += &y;
                                    }
                                }
                                checked += 1;
                                if lhs != rhs && mismatches.len() < 5 {
                                    mismatches.push(format!("{alpha} on bar({s}, x={x}, e{k})"));
                                }
                            }
                        }
                    }
                }
            }
            cases.check(
                format!("V={} i={}", named.name, i + 1),
                mismatches.is_empty(),
                json!({ "checked": checked, "mismatches": mismatches }),
            );
        }
    }
    Ok(())
}

fn theta_suite(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    let tv = Truncation::new(vec![t.bound().0[0]]);
    let tw = Truncation::new(t.bound().0[1..].to_vec());
    let vs: Vec<FimObject> = objects_capped(&tv, run.max_n);
    let ws: Vec<FimObject> = objects_capped(&tw, run.max_n);
    for a in &vs {
        for b in &ws {
            let v = free_module(a, &tv)?;
            let w = free_module(b, &tw)?;
            let th = theta(&v, &w)?;
            let alt = theta_with(&v, &w, TensorSplit::Rows)?;
            let valid = th.map.is_valid(&th.source, &th.target);
            let bijective = th.map.iso_check();
            let splits_agree = alt.map == th.map;
            let full = th.source.truncation().clone();
            // Yoneda: coind(M(a) ⊠ M(b))(S, T) has dimension
            // (S_1 |Hom(a, S - e_1)| + |Hom(a, S)|) |Hom(b, T)|.
            let oracle: Vec<usize> = full
                .objects()
                .iter()
                .map(|st| {
                    let s = FimObject(vec![st.0[0]]);
                    let tt = FimObject(st.0[1..].to_vec());
                    let below = s.drop_one(0).map_or(0, |d| s.0[0] * a.hom_count(&d));
                    (below + a.hom_count(&s)) * b.hom_count(&tt)
                })
                .collect();
            let dims_ok = th.source.dims() == oracle.as_slice() && th.target.dims() == oracle.as_slice();
            cases.check(
                format!("V=M{a} W=M{b}"),
                valid && bijective && splits_agree && dims_ok,
                json!({
                    "valid": valid,
                    "bijective": bijective,
                    "splits_agree": splits_agree,
                    "dims": dims_table(&full, &[
                        ("source", th.source.dims()),
                        ("target", th.target.dims()),
                        ("oracle", &oracle),
                    ]),
                }),
            );
        }
    }
    Ok(())
}

/// Corpus pairs for the adjunction suite: every ordered pair whose total
/// dimension is at most `limit`.
fn small_pairs(corpus: &[Named], limit: usize) -> Vec<(&Named, &Named)> {
    let mut out = Vec::new();
    for v in corpus {
        for w in corpus {
            if v.module.total_dim() + w.module.total_dim() <= limit {
                out.push((v, w));
            }
        }
    }
    out
}

fn adjunction(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    let corpus = corpus(&t, run.max_n, run.seed)?;
    let limit = if run.m == 1 { 10 } else { 8 };
    for (v, w) in small_pairs(&corpus, limit) {
        for i in shiftable(&t) {
            let r = adjunction_check(&v.module, &w.module, i, true)?;
            cases.check(
                format!("V={} W={} i={}", v.name, w.name, i + 1),
                r.holds(),
                json!({
                    "hom_shift": r.hom_shift,
                    "hom_coind": r.hom_coind,
                    "ext_shift": r.ext.map(|e| e.0),
                    "ext_coind": r.ext.map(|e| e.1),
                }),
            );
        }
    }
    Ok(())
}

/// `f_1 ⊠ ⋯ ⊠ f_m` for homomorphisms of FI-modules over `ts`.
fn tensor_hom(homs: &[&ModuleHom], ts: &[Truncation]) -> ModuleHom {
    let bound: Vec<usize> = ts.iter().map(|t| t.bound().0[0]).collect();
    let full = Truncation::new(bound);
    let mats = full
        .objects()
        .iter()
        .map(|o| {
            o.0.iter()
                .zip(homs.iter().zip(ts))
                .map(|(&n, (h, t))| h.mat(t.index_of(&FimObject(vec![n])).unwrap()).clone())
                .reduce(|a, b| a.kronecker(&b))
                .expect("arity ≥ 1")
        })
        .collect();
    ModuleHom::new(mats)
}

fn tensor_sum(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    let ts: Vec<Truncation> = t.bound().0.iter().map(|&n| Truncation::new(vec![n])).collect();
    let pick = |n: usize, tt: &Truncation| FimObject(vec![n.min(tt.bound().0[0])]);
    let base: Vec<FunctorModule> = ts
        .iter()
        .map(|tt| free_module(&pick(1, tt), tt))
        .collect::<fimhom_core::error::Result<_>>()?;
    for slot in 0..t.m() {
        let u = concentrated(&pick(run.max_n.min(1), &ts[slot]), &ts[slot])?;
        let sum = direct_sum(&[&base[slot], &u])?;
        let with = |x: &FunctorModule| -> Result<FunctorModule> {
            let f: Vec<&FunctorModule> = (0..t.m()).map(|k| if k == slot { x } else { &base[k] }).collect();
            Ok(external_tensor(&f)?)
        };
        let lhs = with(&sum.module)?;
        let a = with(&base[slot])?;
        let b = with(&u)?;
        let rhs = direct_sum(&[&a, &b])?;
        let ids: Vec<ModuleHom> = base.iter().map(ModuleHom::identity).collect();
        let leg = |inj: &ModuleHom| {
            let hs: Vec<&ModuleHom> = (0..t.m()).map(|k| if k == slot { inj } else { &ids[k] }).collect();
            tensor_hom(&hs, &ts)
        };
        let (la, lb) = (leg(&sum.injections[0]), leg(&sum.injections[1]));
        let map = ModuleHom::new(la.mats.iter().zip(&lb.mats).map(|(x, y)| x.hstack(y)).collect());
        let valid = map.is_valid(&rhs.module, &lhs);
        let iso = map.iso_check();
        cases.check(
            format!("slot={}", slot + 1),
            valid && iso,
            json!({ "valid": valid, "iso_check": iso, "dims": lhs.dims() }),
        );
    }
    // Σ_i commutes with direct sums on the nose.
    let a = external_tensor(&base.iter().collect::<Vec<_>>())?;
    let b = concentrated(&FimObject::zero(t.m()), &t)?;
    let s = direct_sum(&[&a, &b])?;
    for i in shiftable(&t) {
        let lhs = shift(&s.module, i)?;
        let rhs = direct_sum(&[&shift(&a, i)?, &shift(&b, i)?])?.module;
        cases.check(format!("shift i={}", i + 1), lhs == rhs, json!({ "dims": lhs.dims() }));
    }
    Ok(())
}

fn kron_algebra(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    for s in t.objects() {
        if s.0.contains(&0) {
            continue;
        }
        let ok = algebra_kronecker_check(&Truncation::new(s.0.clone()))?;
        cases.check(format!("t={s}"), ok, json!({ "kronecker": ok }));
    }
    Ok(())
}

/// Objects `u` with `lo ≤ u ≤ hi`.
fn between(lo: &FimObject, hi: &Truncation) -> Vec<FimObject> {
    hi.objects().into_iter().filter(|u| lo.le(u)).collect()
}

fn injectivity(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    if run.m == 1 {
        // M([1]) stops being injective once truncated at [2].
        let t2 = Truncation::new(vec![2]);
        let w = pullback(&free_module(&FimObject(vec![1]), &Truncation::new(vec![4]))?, &t2)?;
        let c = concentrated(&FimObject(vec![1]), &t2)?;
        let e = ext1(&c, &w)?;
        cases.check(
            "negative control ext1(conc(1), M(1)) at t=(2) nonzero",
            e.dim > 0,
            json!({ "dim": e.dim }),
        );
        let inj = is_injective_trunc(&w)?;
        cases.check(
            "truncated M([1]) not injective",
            !inj,
            json!({ "injective": inj }),
        );
    }
    let co = coregular(&t);
    let inj = is_injective_trunc(&co)?;
    cases.check("coregular injective", inj, json!({ "injective": inj, "dims": co.dims() }));

    // Bounded modules: the verdict must not depend on the truncation once
    // it contains the upbound.
    let mut bounded = Vec::new();
    for s in t.objects() {
        bounded.push((format!("conc{s}"), concentrated(&s, &t)?));
        if s.0.iter().all(|&x| x <= run.max_n) {
            bounded.push((format!("nu-free{s}"), nakayama(&free_module(&s, &t)?)?));
        }
        if s.0.iter().any(|&x| x >= 2) {
            bounded.push((format!("sign{s}"), sign_concentrated(&s, &t)?));
        }
    }
    for (name, v) in bounded {
        let ub = upbound(&v).unwrap_or_else(|| FimObject::zero(t.m()));
        let mut verdicts = Vec::new();
        for u in between(&ub, &t) {
            let r = pullback(&v, &Truncation::new(u.0.clone()))?;
            verdicts.push((u.0.clone(), is_injective_trunc(&r)?));
        }
        let consistent = verdicts.windows(2).all(|w| w[0].1 == w[1].1);
        cases.check(
            format!("lemma-2.8 {name}"),
            consistent,
            json!({ "upbound": ub.0, "verdicts": verdicts }),
        );
    }
    Ok(())
}

fn ext_stability(run: &Run, cases: &mut Cases) -> Result<()> {
    let ts: Vec<Truncation> = run.range().map(|k| Truncation::new(vec![k; run.m])).collect();
    let cap = Truncation::new(vec![run.max_n; run.m]);
    for a in cap.objects() {
        for b in cap.objects() {
            let v = Recipe::Concentrated(a.clone());
            let w = Recipe::Free(b.clone());
            let table = ext_stabilization(&v, &w, &ts)?;
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|(t, d)| json!({ "t": t.bound().0, "ext1": d }))
                .collect();
            cases.check(
                format!("V={v} W={w}"),
                table.stable_value() == Some(0),
                json!({ "table": rows, "stable": table.stable, "stable_value": table.stable_value() }),
            );
        }
    }
    Ok(())
}

fn tensor_injective(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    let factors: Vec<FunctorModule> = t
        .bound()
        .0
        .iter()
        .map(|&n| coregular(&Truncation::new(vec![n])))
        .collect();
    let e = external_tensor(&factors.iter().collect::<Vec<_>>())?;
    let inj = is_injective_trunc(&e)?;
    cases.check("tensor of coregular injective", inj, json!({ "injective": inj, "dims": e.dims() }));
    let found = iso_search(&e, &coregular(&t), ISO_TRIALS, run.seed)?;
    let (status, verdict) = iso_status(&found);
    cases.push("tensor of coregular iso coregular", status, json!({ "verdict": verdict }));
    for s in t.objects() {
        if s.0.contains(&0) {
            continue;
        }
        let ok = algebra_kronecker_check(&Truncation::new(s.0.clone()))?;
        cases.check(format!("kronecker t={s}"), ok, json!({ "kronecker": ok }));
    }
    // The pairwise tensor also covers the curried form.
    if t.m() == 2 {
        let pair = external_tensor_pair(&factors[0], &factors[1]);
        cases.check("pairwise tensor agrees", pair == e, json!({}));
    }
    Ok(())
}

/// Quotients of free modules are only recorded: an element can be killed
/// by a morphism leaving the truncation, which the truncated torsion test
/// cannot see, while `ν` already vanishes.
fn nakayama_kernel(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    for named in corpus(&t, run.max_n, run.seed)? {
        let r = kernel_nu_check(&named.module)?;
        let status = if named.name.starts_with("quot") {
            Status::Recorded
        } else {
            Status::from_check(r.holds())
        };
        cases.push(
            &named.name,
            status,
            json!({
                "holds": r.holds(),
                "nu_dims": r.nu_dims,
                "nu_is_zero": r.nu_is_zero,
                "is_torsion": r.is_torsion,
                "torsion_stable": r.torsion_stable,
            }),
        );
    }
    Ok(())
}

fn nakayama_dims(run: &Run, cases: &mut Cases) -> Result<()> {
    let t = run.truncation();
    for s in t.objects() {
        let nu = nakayama(&free_module(&s, &t)?)?;
        let golden: Vec<usize> = t.objects().iter().map(|u| u.hom_count(&s)).collect();
        cases.check(
            format!("nu(M{s}) dims"),
            nu.dims() == golden.as_slice(),
            json!({ "dims": dims_table(&t, &[("nu", nu.dims()), ("golden", &golden)]) }),
        );
        if &s == t.bound() {
            continue;
        }
        let back = inverse_nakayama(&nu)?;
        let m = free_module(&s, &t)?;
        let found = iso_search(&back, &m, ISO_TRIALS, run.seed)?;
        let (status, verdict) = iso_status(&found);
        let asserted = s.0.iter().all(|&x| x <= 1);
        cases.push(
            format!("nu^-1 nu(M{s})"),
            if asserted { status } else { Status::Recorded },
            json!({
                "verdict": verdict,
                "dims": dims_table(&t, &[("nu_inv_nu", back.dims()), ("free", m.dims())]),
            }),
        );
    }
    Ok(())
}
