//! Objects and morphisms of FI and FI^m as plain combinatorics.
//!
//! Every finite set is a skeletal `[n] = {1, ..., n}`. For `S = [n]` the
//! extended set `Ŝ` is `[n + 1]` with the adjoined point `*` encoded as
//! `n + 1`, and for `x ∈ Ŝ` the set `S^x = S \ {x}` is `[n - 1]` via the
//! order-preserving relabeling (or `S` itself when `x = *`).
//!
//! Injection values and set elements are 1-based; coordinate indices of FI^m
//! tuples are 0-based in this API.

use std::fmt;
use std::str::FromStr;

use crate::error::{invariant, usage, Error, Result};

/// Number of injections `[a] -> [b]`, i.e. `b! / (b - a)!`.
pub fn injection_count(a: usize, b: usize) -> usize {
    if a > b {
        return 0;
    }
    ((b - a + 1)..=b).product()
}

/// The encoded adjoined point of `[n]^`.
pub fn star(n: usize) -> usize {
    n + 1
}

/// An injection `[source] -> [target]`; `values[i]` is the image of `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Injection {
    target: usize,
    values: Vec<usize>,
}

impl Injection {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; target + 1];
        for &v in &values {
            if v == 0 || v > target {
                return Err(usage!("value {v} outside [1, {target}]"));
            }
            if seen[v] {
                return Err(usage!("value {v} repeated; not injective"));
            }
            seen[v] = true;
        }
        Ok(Injection { target, values })
    }

    pub fn identity(n: usize) -> Self {
        Injection {
            target: n,
            values: (1..=n).collect(),
        }
    }

    /// The order-preserving inclusion `[a] -> [b]`.
    pub fn standard(a: usize, b: usize) -> Self {
        assert!(a <= b);
        Injection {
            target: b,
            values: (1..=a).collect(),
        }
    }

    /// The adjacent transposition `(pos pos+1)` on `[n]`.
    pub fn transposition(n: usize, pos: usize) -> Self {
        assert!(pos >= 1 && pos < n);
        let mut values: Vec<usize> = (1..=n).collect();
        values.swap(pos - 1, pos);
        Injection { target: n, values }
    }

    pub fn source(&self) -> usize {
        self.values.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Image of the element `a` (1-based).
    pub fn apply(&self, a: usize) -> usize {
        self.values[a - 1]
    }

    pub fn is_bijective(&self) -> bool {
        self.source() == self.target
    }

    pub fn is_identity(&self) -> bool {
        self.is_bijective() && self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Preimage of `z` if it lies in the image.
    pub fn preimage(&self, z: usize) -> Option<usize> {
        self.values.iter().position(|&v| v == z).map(|i| i + 1)
    }

    /// Position of this injection in the lexicographic enumeration of all
    /// injections `[source] -> [target]`.
    pub fn rank(&self) -> usize {
        let (a, b) = (self.source(), self.target);
        let mut used = vec![false; b + 1];
        let mut rank = 0;
        for (k, &v) in self.values.iter().enumerate() {
            let smaller = (1..v).filter(|&u| !used[u]).count();
            rank += smaller * injection_count(a - k - 1, b - k - 1);
            used[v] = true;
        }
        rank
    }

    /// Inverse of [`Injection::rank`].
    pub fn unrank(a: usize, b: usize, mut index: usize) -> Self {
        assert!(index < injection_count(a, b), "rank out of range");
        let mut free: Vec<usize> = (1..=b).collect();
        let mut values = Vec::with_capacity(a);
        for k in 0..a {
            let block = injection_count(a - k - 1, b - k - 1);
            let q = index / block;
            index %= block;
            values.push(free.remove(q));
        }
        Injection { target: b, values }
    }
}

impl fmt::Display for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}->{}:[{}]", self.source(), self.target, vals.join(","))
    }
}

impl FromStr for Injection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || usage!("malformed injection {s:?}; expected \"a->b:[v1,...]\"");
        let (head, body) = s.split_once(':').ok_or_else(bad)?;
        let (a, b) = head.split_once("->").ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        let body = body
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(bad)?;
        let values: Vec<usize> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|v| v.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        if values.len() != a {
            return Err(usage!("injection {s:?} lists {} values for source [{a}]", values.len()));
        }
        Injection::new(b, values)
    }
}

/// All injections `[a] -> [b]` in lexicographic order of their value lists.
pub fn enumerate_injections(a: usize, b: usize) -> Vec<Injection> {
    if a > b {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(injection_count(a, b));
    let mut current = Vec::with_capacity(a);
    let mut used = vec![false; b + 1];
    fn rec(
        a: usize,
        b: usize,
        current: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Injection>,
    ) {
        if current.len() == a {
            out.push(Injection {
                target: b,
                values: current.clone(),
            });
            return;
        }
        for v in 1..=b {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(a, b, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(a, b, &mut current, &mut used, &mut out);
    out
}

/// `g ∘ f`.
pub fn compose(g: &Injection, f: &Injection) -> Result<Injection> {
    if f.target != g.source() {
        return Err(usage!("cannot compose {g} after {f}"));
    }
    Ok(Injection {
        target: g.target,
        values: f.values.iter().map(|&v| g.values[v - 1]).collect(),
    })
}

/// The self-embedding: `ι(f) : [a+1] -> [b+1]` agrees with `f` on `[a]` and
/// sends the adjoined point to the adjoined point.
pub fn iota(f: &Injection) -> Injection {
    let mut values = f.values.clone();
    values.push(f.target + 1);
    Injection {
        target: f.target + 1,
        values,
    }
}

/// Relabels `a ∈ [n] \ {x}` onto `[n - 1]` (identity when `x = *`).
fn relabel_out(n: usize, x: usize, a: usize) -> usize {
    debug_assert!(a != x);
    if x == star(n) || a < x {
        a
    } else {
        a - 1
    }
}

/// Inverse of [`relabel_out`]: lifts `a' ∈ [n]^x` back into `[n]`.
fn relabel_in(n: usize, x: usize, a: usize) -> usize {
    if x == star(n) || a < x {
        a
    } else {
        a + 1
    }
}

/// Size of `S^x` for `S = [n]`, `x ∈ Ŝ`.
pub fn remove_point(n: usize, x: usize) -> usize {
    if x == star(n) {
        n
    } else {
        n - 1
    }
}

fn check_hat_element(n: usize, x: usize) -> Result<()> {
    if x == 0 || x > star(n) {
        return Err(usage!("element {x} outside [{n}]^ = [1, {}]", star(n)));
    }
    Ok(())
}

/// `ε_x : S -> (S^x)^`, sending `x` to the adjoined point and the rest of `S`
/// order-preservingly; the standard inclusion when `x = *`.
pub fn epsilon(n: usize, x: usize) -> Result<Injection> {
    check_hat_element(n, x)?;
    if x == star(n) {
        return Ok(Injection::standard(n, n + 1));
    }
    let values = (1..=n)
        .map(|a| if a == x { n } else { relabel_out(n, x, a) })
        .collect();
    Ok(Injection { target: n, values })
}

/// `α^{-1}(z)`: the preimage of `z ∈ T̂` under `α`, or the adjoined point of
/// `Ŝ` when `z` is not hit.
pub fn alpha_inv(alpha: &Injection, z: usize) -> Result<usize> {
    check_hat_element(alpha.target, z)?;
    Ok(alpha
        .preimage(z)
        .unwrap_or_else(|| star(alpha.source())))
}

/// For `α : S -> T` and `y ∈ T̂`, returns `x = α^{-1}(y)` together with the
/// restriction `α^y : S^x -> T^y`, the unique morphism satisfying
/// `ε_y ∘ α = ι(α^y) ∘ ε_x`.
pub fn alpha_y(alpha: &Injection, y: usize) -> Result<(usize, Injection)> {
    let x = alpha_inv(alpha, y)?;
    let (s, t) = (alpha.source(), alpha.target);
    let sx = remove_point(s, x);
    let ty = remove_point(t, y);
    let values = (1..=sx)
        .map(|a| relabel_out(t, y, alpha.apply(relabel_in(s, x, a))))
        .collect();
    let restricted = Injection { target: ty, values };
    debug_assert_eq!(
        compose(&epsilon(t, y)?, alpha)?,
        compose(&iota(&restricted), &epsilon(s, x)?)?,
        "ε_y α = ι(α^y) ε_x failed for α = {alpha}, y = {y}"
    );
    Ok((x, restricted))
}

/// Writes `g : S -> T̂` as `ι(β) ∘ ε_x`, where `x = g^{-1}(*)` (the adjoined
/// point of `Ŝ` when `*` is not hit). Returns `x` and `β : S^x -> T`.
pub fn epsilon_split(g: &Injection) -> Result<(usize, Injection)> {
    if g.target == 0 {
        return Err(usage!("{g} does not land in an extended set"));
    }
    let n = g.source();
    let t = g.target - 1;
    let x = g.preimage(star(t)).unwrap_or(star(n));
    let values = (1..=remove_point(n, x))
        .map(|a| g.apply(relabel_in(n, x, a)))
        .collect();
    let beta = Injection { target: t, values };
    debug_assert_eq!(compose(&iota(&beta), &epsilon(n, x)?)?, *g);
    Ok((x, beta))
}

/// An object of FI^m: an m-tuple of set sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FimObject(pub Vec<usize>);

impl FimObject {
    pub fn new(parts: Vec<usize>) -> Self {
        FimObject(parts)
    }

    pub fn zero(m: usize) -> Self {
        FimObject(vec![0; m])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Componentwise `≤`, i.e. `Hom(self, other)` is nonempty.
    pub fn le(&self, other: &FimObject) -> bool {
        self.arity() == other.arity() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self + e_i`.
    pub fn bump(&self, i: usize) -> FimObject {
        let mut p = self.0.clone();
        p[i] += 1;
        FimObject(p)
    }

    /// `self - e_i`, if that stays nonnegative.
    pub fn drop_one(&self, i: usize) -> Option<FimObject> {
        let mut p = self.0.clone();
        p[i] = p[i].checked_sub(1)?;
        Some(FimObject(p))
    }

    /// Replaces coordinate `i` by `n`.
    pub fn with(&self, i: usize, n: usize) -> FimObject {
        let mut p = self.0.clone();
        p[i] = n;
        FimObject(p)
    }

    /// Number of morphisms `self -> other`.
    pub fn hom_count(&self, other: &FimObject) -> usize {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| injection_count(a, b))
            .product()
    }

    /// Order of the automorphism group.
    pub fn aut_order(&self) -> usize {
        self.0.iter().map(|&n| injection_count(n, n)).product()
    }
}

impl fmt::Display for FimObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A morphism of FI^m: one injection per coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorTuple(pub Vec<Injection>);

impl MorTuple {
    pub fn new(parts: Vec<Injection>) -> Self {
        MorTuple(parts)
    }

    pub fn identity(obj: &FimObject) -> Self {
        MorTuple(obj.0.iter().map(|&n| Injection::identity(n)).collect())
    }

    /// The coordinatewise standard inclusion `a -> b`.
    pub fn standard(a: &FimObject, b: &FimObject) -> Self {
        MorTuple(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| Injection::standard(x, y))
                .collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn parts(&self) -> &[Injection] {
        &self.0
    }

    pub fn source(&self) -> FimObject {
        FimObject(self.0.iter().map(Injection::source).collect())
    }

    pub fn target(&self) -> FimObject {
        FimObject(self.0.iter().map(Injection::target).collect())
    }

    pub fn is_iso(&self) -> bool {
        self.0.iter().all(Injection::is_bijective)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Injection::is_identity)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &MorTuple) -> Result<MorTuple> {
        if self.arity() != f.arity() {
            return Err(usage!("arity mismatch composing {self} after {f}"));
        }
        Ok(MorTuple(
            self.0
                .iter()
                .zip(&f.0)
                .map(|(g, f)| compose(g, f))
                .collect::<Result<_>>()?,
        ))
    }

    /// Position in the product-of-lex enumeration of `Hom(source, target)`,
    /// first coordinate most significant.
    pub fn rank(&self) -> usize {
        self.0.iter().fold(0, |acc, inj| {
            acc * injection_count(inj.source(), inj.target()) + inj.rank()
        })
    }

    pub fn unrank(source: &FimObject, target: &FimObject, mut index: usize) -> Self {
        let m = source.arity();
        let mut parts = vec![None; m];
        for i in (0..m).rev() {
            let c = injection_count(source.0[i], target.0[i]);
            parts[i] = Some(Injection::unrank(source.0[i], target.0[i], index % c));
            index /= c;
        }
        MorTuple(parts.into_iter().map(Option::unwrap).collect())
    }
}

impl fmt::Display for MorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl FromStr for MorTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(MorTuple(
            s.split(';')
                .map(|p| p.trim().parse())
                .collect::<Result<_>>()?,
        ))
    }
}

/// All morphisms `a -> b` in the canonical product-of-lex order.
pub fn enumerate_morphisms(a: &FimObject, b: &FimObject) -> Vec<MorTuple> {
    let n = a.hom_count(b);
    (0..n).map(|k| MorTuple::unrank(a, b, k)).collect()
}

/// `ι_i(f)`: applies the self-embedding in coordinate `i` only.
pub fn iota_i(f: &MorTuple, i: usize) -> Result<MorTuple> {
    if i >= f.arity() {
        return Err(usage!("coordinate {i} out of range for arity {}", f.arity()));
    }
    let mut parts = f.0.clone();
    parts[i] = iota(&parts[i]);
    Ok(MorTuple(parts))
}

/// `ι_i` on objects: `S + e_i`.
pub fn iota_obj(s: &FimObject, i: usize) -> FimObject {
    s.bump(i)
}

/// Generating morphisms: adjacent transpositions of a coordinate and the
/// one-step standard inclusion in a coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Swaps `pos` and `pos + 1` (1-based) in coordinate `coord` of `obj`.
    Transposition {
        obj: FimObject,
        coord: usize,
        pos: usize,
    },
    /// `obj -> obj + e_coord`, order-preserving.
    Inclusion { obj: FimObject, coord: usize },
}

impl Generator {
    pub fn source(&self) -> &FimObject {
        match self {
            Generator::Transposition { obj, .. } | Generator::Inclusion { obj, .. } => obj,
        }
    }

    pub fn target(&self) -> FimObject {
        match self {
            Generator::Transposition { obj, .. } => obj.clone(),
            Generator::Inclusion { obj, coord } => obj.bump(*coord),
        }
    }

    pub fn coord(&self) -> usize {
        match self {
            Generator::Transposition { coord, .. } | Generator::Inclusion { coord, .. } => *coord,
        }
    }

    pub fn morphism(&self) -> MorTuple {
        match self {
            Generator::Transposition { obj, coord, pos } => {
                let mut m = MorTuple::identity(obj);
                m.0[*coord] = Injection::transposition(obj.0[*coord], *pos);
                m
            }
            Generator::Inclusion { obj, coord } => MorTuple::standard(obj, &obj.bump(*coord)),
        }
    }

    /// Generators with source `obj` whose target stays `≤ bound`, in the
    /// canonical order: per coordinate, transpositions by position, then the
    /// inclusion.
    pub fn all_from(obj: &FimObject, bound: &FimObject) -> Vec<Generator> {
        let mut out = Vec::new();
        for coord in 0..obj.arity() {
            for pos in 1..obj.0[coord] {
                out.push(Generator::Transposition {
                    obj: obj.clone(),
                    coord,
                    pos,
                });
            }
            if obj.0[coord] < bound.0[coord] {
                out.push(Generator::Inclusion {
                    obj: obj.clone(),
                    coord,
                });
            }
        }
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Transposition { obj, coord, pos } => {
                write!(f, "swap{obj}[{coord}]({pos} {})", pos + 1)
            }
            Generator::Inclusion { obj, coord } => write!(f, "inc{obj}[{coord}]"),
        }
    }
}

/// Writes `f` as a word of generators in application order: first the
/// one-step inclusions taking the source to the target (coordinate by
/// coordinate), then adjacent transpositions of the target realizing the
/// remaining permutation.
pub fn factorize(f: &MorTuple) -> Vec<Generator> {
    let mut word = Vec::new();
    let mut current = f.source();
    let target = f.target();
    for coord in 0..f.arity() {
        while current.0[coord] < target.0[coord] {
            word.push(Generator::Inclusion {
                obj: current.clone(),
                coord,
            });
            current = current.bump(coord);
        }
    }
    for (coord, inj) in f.0.iter().enumerate() {
        // Extend the injection to a permutation of the target, sending the
        // new points to the complement in increasing order.
        let n = inj.target();
        let mut perm = inj.values().to_vec();
        let mut hit = vec![false; n + 1];
        for &v in &perm {
            hit[v] = true;
        }
        perm.extend((1..=n).filter(|&v| !hit[v]));
        // Bubble-sort by position swaps: perm ∘ s_{p1} ∘ ... ∘ s_{pk} = id,
        // hence perm = s_{pk} ∘ ... ∘ s_{p1}, applied p1 first.
        let mut swapped = true;
        while swapped {
            swapped = false;
            for p in 0..n.saturating_sub(1) {
                if perm[p] > perm[p + 1] {
                    perm.swap(p, p + 1);
                    word.push(Generator::Transposition {
                        obj: target.clone(),
                        coord,
                        pos: p + 1,
                    });
                    swapped = true;
                }
            }
        }
    }
    word
}

/// Composes a word (application order) starting at `source`.
pub fn recompose(source: &FimObject, word: &[Generator]) -> Result<MorTuple> {
    let mut acc = MorTuple::identity(source);
    for g in word {
        if g.source() != &acc.target() {
            return Err(invariant!("word breaks at {g}: current target {}", acc.target()));
        }
        acc = g.morphism().compose(&acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inj(target: usize, v: &[usize]) -> Injection {
        Injection::new(target, v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_injections(1, 2), vec![inj(2, &[1]), inj(2, &[2])]);
        let e = enumerate_injections(2, 3);
        assert_eq!(e.len(), 6);
        assert_eq!(e[0], inj(3, &[1, 2]));
        assert_eq!(e[5], inj(3, &[3, 2]));
        assert!(enumerate_injections(2, 1).is_empty());
        assert_eq!(enumerate_injections(0, 3), vec![inj(3, &[])]);
    }

    #[test]
    fn enumeration_counts_and_ranks() {
        for b in 0..=6 {
            for a in 0..=b {
                let e = enumerate_injections(a, b);
                let expected: usize = ((b - a + 1)..=b).product();
                assert_eq!(e.len(), expected);
                for (k, f) in e.iter().enumerate() {
                    assert_eq!(f.rank(), k);
                    assert_eq!(&Injection::unrank(a, b, k), f);
                }
                assert!(e.windows(2).all(|w| w[0].values() < w[1].values()));
            }
        }
    }

    #[test]
    fn compose_examples() {
        let g = inj(3, &[3, 1]);
        let f = inj(2, &[2]);
        assert_eq!(compose(&g, &f).unwrap(), inj(3, &[1]));
        assert_eq!(compose(&Injection::identity(2), &f).unwrap(), f);
        assert!(matches!(compose(&f, &g), Err(Error::Usage(_))));
    }

    #[test]
    fn compose_is_associative_exhaustively() {
        for a in 0..=2 {
            for b in a..=3 {
                for c in b..=4 {
                    for d in c..=4 {
                        for f in enumerate_injections(a, b) {
                            for g in enumerate_injections(b, c) {
                                for h in enumerate_injections(c, d) {
                                    let l = compose(&h, &compose(&g, &f).unwrap()).unwrap();
                                    let r = compose(&compose(&h, &g).unwrap(), &f).unwrap();
                                    assert_eq!(l, r);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn iota_examples() {
        assert_eq!(iota(&inj(2, &[2])), inj(3, &[2, 3]));
        assert_eq!(iota(&Injection::identity(3)), Injection::identity(4));
        for a in 0..=2 {
            for b in a..=3 {
                for c in b..=3 {
                    for f in enumerate_injections(a, b) {
                        for g in enumerate_injections(b, c) {
                            assert_eq!(
                                iota(&compose(&g, &f).unwrap()),
                                compose(&iota(&g), &iota(&f)).unwrap()
                            );
                        }
                    }
                }
            }
        }
        let f = MorTuple::new(vec![inj(2, &[2]), inj(1, &[1])]);
        assert_eq!(
            iota_i(&f, 1).unwrap(),
            MorTuple::new(vec![inj(2, &[2]), inj(2, &[1, 2])])
        );
        assert!(iota_i(&f, 2).is_err());
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(2, 3).unwrap(), inj(3, &[1, 2]));
        assert_eq!(epsilon(2, 1).unwrap(), inj(2, &[2, 1]));
        assert!(epsilon(2, 4).is_err());
        assert!(epsilon(2, 0).is_err());
        for n in 0..=4 {
            for x in 1..=star(n) {
                let e = epsilon(n, x).unwrap();
                assert_eq!(e.is_bijective(), x != star(n));
                // x goes to the adjoined point of (S^x)^
                if x != star(n) {
                    assert_eq!(e.apply(x), star(remove_point(n, x)));
                }
            }
        }
    }

    #[test]
    fn alpha_inverse_examples() {
        let a = inj(3, &[3, 1]);
        assert_eq!(alpha_inv(&a, 1).unwrap(), 2);
        assert_eq!(alpha_inv(&a, 2).unwrap(), 3);
        assert_eq!(alpha_inv(&a, 4).unwrap(), 3);
        assert!(alpha_inv(&a, 5).is_err());
    }

    #[test]
    fn alpha_y_examples() {
        let a = inj(3, &[3, 1]);
        let (x, ay) = alpha_y(&a, 2).unwrap();
        assert_eq!(x, 3);
        assert_eq!(ay, inj(2, &[2, 1]));
        // y = * leaves α alone
        let (x, ay) = alpha_y(&a, 4).unwrap();
        assert_eq!(x, 3);
        assert_eq!(ay, a);
        // bijective α, y ∈ T: α^y is bijective
        let b = inj(3, &[2, 3, 1]);
        for y in 1..=3 {
            assert!(alpha_y(&b, y).unwrap().1.is_bijective());
        }
    }

    #[test]
    fn defining_identity_of_alpha_y_exhaustive() {
        for s in 0..=3 {
            for t in s..=3 {
                for a in enumerate_injections(s, t) {
                    for y in 1..=star(t) {
                        let (x, ay) = alpha_y(&a, y).unwrap();
                        let lhs = compose(&epsilon(t, y).unwrap(), &a).unwrap();
                        let rhs = compose(&iota(&ay), &epsilon(s, x).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "α = {a}, y = {y}");
                    }
                    for z in 1..=s {
                        assert_eq!(alpha_inv(&a, a.apply(z)).unwrap(), z);
                    }
                }
            }
        }
    }

    #[test]
    fn factorize_examples() {
        let id = MorTuple::identity(&FimObject::new(vec![2]));
        assert!(factorize(&id).is_empty());
        let f = MorTuple::new(vec![inj(2, &[2])]);
        let w = factorize(&f);
        assert_eq!(
            w,
            vec![
                Generator::Inclusion {
                    obj: FimObject::new(vec![1]),
                    coord: 0
                },
                Generator::Transposition {
                    obj: FimObject::new(vec![2]),
                    coord: 0,
                    pos: 1
                },
            ]
        );
        assert_eq!(recompose(&f.source(), &w).unwrap(), f);
    }

    #[test]
    fn factorize_roundtrips_exhaustively_for_m2() {
        for a0 in 0..=3 {
            for a1 in 0..=3 {
                for b0 in a0..=3 {
                    for b1 in a1..=3 {
                        let s = FimObject::new(vec![a0, a1]);
                        let t = FimObject::new(vec![b0, b1]);
                        for f in enumerate_morphisms(&s, &t) {
                            let w = factorize(&f);
                            assert_eq!(recompose(&s, &w).unwrap(), f);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn text_forms() {
        let f = inj(3, &[3, 1]);
        assert_eq!(f.to_string(), "2->3:[3,1]");
        assert_eq!("2->3:[3,1]".parse::<Injection>().unwrap(), f);
        assert_eq!("0->2:[]".parse::<Injection>().unwrap(), inj(2, &[]));
        let t = MorTuple::new(vec![f.clone(), inj(1, &[1])]);
        assert_eq!(t.to_string(), "2->3:[3,1];1->1:[1]");
        assert_eq!(t.to_string().parse::<MorTuple>().unwrap(), t);
        assert!("2->3:[3,3]".parse::<Injection>().is_err());
        assert!("2->3:[3]".parse::<Injection>().is_err());
    }

    #[test]
    fn mortuple_rank_matches_enumeration() {
        let s = FimObject::new(vec![1, 2]);
        let t = FimObject::new(vec![3, 2]);
        let all = enumerate_morphisms(&s, &t);
        assert_eq!(all.len(), 3 * 2);
        for (k, f) in all.iter().enumerate() {
            assert_eq!(f.rank(), k);
        }
        // first coordinate most significant
        assert_eq!(all[1].0[0], inj(3, &[1]));
        assert_eq!(all[2].0[0], inj(3, &[2]));
    }

    proptest! {
        #[test]
        fn random_factorizations_roundtrip(a0 in 0usize..=3, a1 in 0usize..=3, d0 in 0usize..=2, d1 in 0usize..=2, k in any::<usize>()) {
            let s = FimObject::new(vec![a0, a1]);
            let t = FimObject::new(vec![(a0 + d0).min(3), (a1 + d1).min(3)]);
            let n = s.hom_count(&t);
            let f = MorTuple::unrank(&s, &t, k % n);
            prop_assert_eq!(recompose(&s, &factorize(&f)).unwrap(), f);
        }
    }
}
