//! Normal-ordering kernel for `D(a|b)`, `Cl(a|b)` and their daggered variants.
//!
//! A monomial is stored in canonical order: raising generators (`x_i`/`ξ_i`)
//! before lowering ones (`∂_i`/`η_i`), indices ascending inside each group,
//! exponent 1 at nilpotent indices. Products are formed by multiplying on the
//! right by one generator at a time, moving it to its slot and recording the
//! swap signs and contraction terms it picks up on the way.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};
use crate::weights::{AlgebraKind, Parity, Rank, RootVector, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Raising,
    Lowering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub index: i32,
}

impl Generator {
    pub fn raising(index: i32) -> Self {
        Generator {
            kind: GeneratorKind::Raising,
            index,
        }
    }

    pub fn lowering(index: i32) -> Self {
        Generator {
            kind: GeneratorKind::Lowering,
            index,
        }
    }

    pub fn name(&self, kind: AlgebraKind) -> &'static str {
        match (kind, self.kind) {
            (AlgebraKind::Weyl, GeneratorKind::Raising) => "x",
            (AlgebraKind::Weyl, GeneratorKind::Lowering) => "d",
            (AlgebraKind::Clifford, GeneratorKind::Raising) => "xi",
            (AlgebraKind::Clifford, GeneratorKind::Lowering) => "eta",
        }
    }
}

/// Shape of a canonical monomial; the coefficient lives in [`AlgebraElement`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub raising: Vec<(i32, u32)>,
    pub lowering: Vec<(i32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn total_degree(&self) -> u32 {
        self.raising
            .iter()
            .chain(&self.lowering)
            .map(|(_, e)| e)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.raising.is_empty() && self.lowering.is_empty()
    }

    /// Generators in canonical order.
    pub fn word(&self) -> Vec<Generator> {
        let mut w = Vec::with_capacity(self.total_degree() as usize);
        for (i, e) in &self.raising {
            w.extend(std::iter::repeat_n(Generator::raising(*i), *e as usize));
        }
        for (i, e) in &self.lowering {
            w.extend(std::iter::repeat_n(Generator::lowering(*i), *e as usize));
        }
        w
    }

    /// Checks canonical shape against a signature.
    pub fn is_canonical(&self, sig: &Signature) -> bool {
        let group_ok = |g: &[(i32, u32)]| {
            g.windows(2).all(|p| p[0].0 < p[1].0)
                && g.iter()
                    .all(|(i, e)| *e >= 1 && sig.contains(*i) && (*e == 1 || !sig.is_fermionic(*i)))
        };
        group_ok(&self.raising) && group_ok(&self.lowering)
    }

    pub fn gradings(&self, sig: &Signature) -> Gradings {
        let mut z = 0i64;
        let mut adj = RootVector::zero();
        let mut odd = 0i64;
        for (i, e) in &self.raising {
            z += *e as i64;
            adj.add_at(*i, *e as i64);
            if sig.is_odd(*i) {
                odd += *e as i64;
            }
        }
        for (i, e) in &self.lowering {
            z -= *e as i64;
            adj.add_at(*i, -(*e as i64));
            if sig.is_odd(*i) {
                odd += *e as i64;
            }
        }
        Gradings {
            z_degree: z,
            adjoint_weight: adj,
            parity: Parity::from_int(odd),
        }
    }

    pub fn fmt_with(&self, kind: AlgebraKind) -> String {
        let mut parts = Vec::new();
        for (g, group) in [
            (Generator::raising(0), &self.raising),
            (Generator::lowering(0), &self.lowering),
        ] {
            for (i, e) in group {
                let base = format!("{}[{i}]", g.name(kind));
                parts.push(if *e == 1 { base } else { format!("{base}^{e}") });
            }
        }
        parts.join("*")
    }
}

/// Higher total degree first, then lexicographic on the groups.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        o.total_degree()
            .cmp(&self.total_degree())
            .then_with(|| self.raising.cmp(&o.raising))
            .then_with(|| self.lowering.cmp(&o.lowering))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gradings {
    pub z_degree: i64,
    #[serde(skip)]
    pub adjoint_weight: RootVector,
    pub parity: Parity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Subalgebra {
    /// The whole algebra.
    A,
    /// Degree zero.
    A0,
    /// Even degree.
    AEV,
    /// Even Z2-parity.
    A0BAR,
    /// Degree zero and adjoint weight zero.
    #[serde(rename = "H_A")]
    HA,
}

impl std::str::FromStr for Subalgebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "A" => Subalgebra::A,
            "A0" => Subalgebra::A0,
            "AEV" => Subalgebra::AEV,
            "A0BAR" => Subalgebra::A0BAR,
            "HA" | "H_A" => Subalgebra::HA,
            _ => return Err(Error::Parse(format!("unknown subalgebra {s:?}"))),
        })
    }
}

impl fmt::Display for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subalgebra::A => "A",
            Subalgebra::A0 => "A0",
            Subalgebra::AEV => "AEV",
            Subalgebra::A0BAR => "A0BAR",
            Subalgebra::HA => "H_A",
        };
        write!(f, "{s}")
    }
}

impl Subalgebra {
    pub fn contains(self, g: &Gradings) -> bool {
        match self {
            Subalgebra::A => true,
            Subalgebra::A0 => g.z_degree == 0,
            Subalgebra::AEV => g.z_degree % 2 == 0,
            Subalgebra::A0BAR => !g.parity.is_odd(),
            Subalgebra::HA => g.z_degree == 0 && g.adjoint_weight.is_zero(),
        }
    }
}

/// Finite sum of canonical monomials with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    sig: Signature,
    terms: BTreeMap<Monomial, Q>,
}

type Terms = BTreeMap<Monomial, Q>;

fn accumulate(terms: &mut Terms, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Sign picked up by moving a generator at `k` past `group` entries with index `> k`.
fn pass_sign(sig: &Signature, group: &[(i32, u32)], k: i32) -> bool {
    group
        .iter()
        .filter(|(j, e)| *j > k && e % 2 == 1 && sig.anticommute(*j, k))
        .count()
        % 2
        == 1
}

/// Inserts one more factor at `k` into a sorted group; `None` if it squares a nilpotent.
fn insert_factor(sig: &Signature, group: &[(i32, u32)], k: i32) -> Option<Vec<(i32, u32)>> {
    let mut g = group.to_vec();
    match g.binary_search_by_key(&k, |(i, _)| *i) {
        Ok(pos) => {
            if sig.is_fermionic(k) {
                return None;
            }
            g[pos].1 += 1;
        }
        Err(pos) => g.insert(pos, (k, 1)),
    }
    Some(g)
}

/// `m · g` as at most two canonical terms.
fn mul_generator(sig: &Signature, m: &Monomial, c: &Q, g: Generator, out: &mut Vec<(Monomial, Q)>) {
    let k = g.index;
    let flip = |neg: bool, x: Q| if neg { -x } else { x };
    match g.kind {
        GeneratorKind::Lowering => {
            let neg = pass_sign(sig, &m.lowering, k);
            if let Some(lowering) = insert_factor(sig, &m.lowering, k) {
                out.push((
                    Monomial {
                        raising: m.raising.clone(),
                        lowering,
                    },
                    flip(neg, c.clone()),
                ));
            }
        }
        GeneratorKind::Raising => {
            // x_k travels left through the whole lowering group
            let right: Vec<(i32, u32)> =
                m.lowering.iter().filter(|(j, _)| *j > k).copied().collect();
            let left: Vec<(i32, u32)> =
                m.lowering.iter().filter(|(j, _)| *j < k).copied().collect();
            let hit = m
                .lowering
                .iter()
                .find(|(j, _)| *j == k)
                .map(|(_, e)| *e)
                .unwrap_or(0);
            let sign_right = pass_sign(sig, &right, k);
            let sign_left = left
                .iter()
                .filter(|(j, e)| e % 2 == 1 && sig.anticommute(*j, k))
                .count()
                % 2
                == 1;
            let self_anti = sig.anticommute(k, k);
            // ∂_k^e x_k = s^e x_k ∂_k^e + (Σ_{t<e} s^t) ∂_k^{e−1}
            if hit > 0 {
                let contraction: i64 = if self_anti {
                    (hit % 2) as i64
                } else {
                    hit as i64
                };
                if contraction != 0 {
                    let mut lowering = m.lowering.clone();
                    let pos = lowering.iter().position(|(j, _)| *j == k).unwrap();
                    if lowering[pos].1 == 1 {
                        lowering.remove(pos);
                    } else {
                        lowering[pos].1 -= 1;
                    }
                    out.push((
                        Monomial {
                            raising: m.raising.clone(),
                            lowering,
                        },
                        flip(sign_right, c * q(contraction)),
                    ));
                }
            }
            let through = sign_right ^ sign_left ^ (self_anti && hit % 2 == 1);
            let sign_raise = pass_sign(sig, &m.raising, k);
            if let Some(raising) = insert_factor(sig, &m.raising, k) {
                out.push((
                    Monomial {
                        raising,
                        lowering: m.lowering.clone(),
                    },
                    flip(through ^ sign_raise, c.clone()),
                ));
            }
        }
    }
}

impl AlgebraElement {
    pub fn zero(sig: Signature) -> Self {
        AlgebraElement {
            sig,
            terms: Terms::new(),
        }
    }

    pub fn scalar(sig: Signature, c: Q) -> Self {
        let mut terms = Terms::new();
        accumulate(&mut terms, Monomial::one(), c);
        AlgebraElement { sig, terms }
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, Q::one())
    }

    pub fn generator(sig: Signature, g: Generator) -> Result<Self> {
        normal_form(&[g], Q::one(), &sig)
    }

    pub fn x(sig: Signature, i: i32) -> Result<Self> {
        Self::generator(sig, Generator::raising(i))
    }

    pub fn d(sig: Signature, i: i32) -> Result<Self> {
        Self::generator(sig, Generator::lowering(i))
    }

    /// Builds an element from canonical terms, validating shapes.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(
        sig: Signature,
        terms: I,
    ) -> Result<Self> {
        let mut t = Terms::new();
        for (m, c) in terms {
            for (i, _) in m.raising.iter().chain(&m.lowering) {
                sig.check_index(*i)?;
            }
            if !m.is_canonical(&sig) {
                return Err(Error::Parse(format!(
                    "non-canonical monomial {}",
                    m.fmt_with(sig.kind)
                )));
            }
            accumulate(&mut t, m, c);
        }
        Ok(AlgebraElement { sig, terms: t })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// The scalar part if the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn check_sig(&self, o: &Self) -> Result<()> {
        if self.sig != o.sig {
            return Err(Error::SignatureMismatch(
                self.sig.to_string(),
                o.sig.to_string(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_sig(o)?;
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(AlgebraElement {
            sig: self.sig,
            terms,
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            accumulate(&mut terms, m.clone(), c * s);
        }
        AlgebraElement {
            sig: self.sig,
            terms,
        }
    }

    /// Right multiplication by a single generator.
    pub fn mul_generator(&self, g: Generator) -> Result<Self> {
        self.sig.check_index(g.index)?;
        let mut terms = Terms::new();
        let mut buf = Vec::with_capacity(2);
        for (m, c) in &self.terms {
            buf.clear();
            mul_generator(&self.sig, m, c, g, &mut buf);
            for (m2, c2) in buf.drain(..) {
                accumulate(&mut terms, m2, c2);
            }
        }
        Ok(AlgebraElement {
            sig: self.sig,
            terms,
        })
    }

    pub fn multiply(&self, o: &Self) -> Result<Self> {
        self.check_sig(o)?;
        let mut total = Terms::new();
        for (m2, c2) in &o.terms {
            let mut part = self.scale(c2);
            for g in m2.word() {
                part = part.mul_generator(g)?;
            }
            for (m, c) in part.terms {
                accumulate(&mut total, m, c);
            }
        }
        Ok(AlgebraElement {
            sig: self.sig,
            terms: total,
        })
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut r = Self::one(self.sig);
        for _ in 0..n {
            r = r.multiply(self)?;
        }
        Ok(r)
    }

    /// Z2-parity if every term has the same parity (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|m| m.gradings(&self.sig).parity);
        let first = ps.next().unwrap_or(Parity::EVEN);
        ps.all(|p| p == first).then_some(first)
    }

    pub fn is_member(&self, sub: Subalgebra) -> bool {
        self.terms
            .keys()
            .all(|m| sub.contains(&m.gradings(&self.sig)))
    }

    /// Same terms over the dagger-toggled signature.
    pub fn dagger_transport(&self) -> Self {
        AlgebraElement {
            sig: self.sig.dagger(),
            terms: self.terms.clone(),
        }
    }

    /// Renames every index through `rename` and re-normalizes over `target`.
    pub fn transport(&self, target: Signature, rename: impl Fn(i32) -> i32) -> Result<Self> {
        let mut out = AlgebraElement::zero(target);
        for (m, c) in &self.terms {
            let word: Vec<Generator> = m
                .word()
                .into_iter()
                .map(|g| Generator {
                    kind: g.kind,
                    index: rename(g.index),
                })
                .collect();
            out = out.add(&normal_form(&word, c.clone(), &target)?)?;
        }
        Ok(out)
    }

    pub fn text(&self) -> String {
        self.to_string()
    }
}

/// `{"signature": .., "terms": [{"coeff": "p/q", "monomial": ..}]}`, terms in
/// canonical order; the unit monomial is the empty string.
impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            coeff: String,
            monomial: String,
        }
        #[derive(Serialize)]
        struct Repr {
            signature: String,
            terms: Vec<Term>,
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Term {
                coeff: fmt_q(c),
                monomial: m.fmt_with(self.sig.kind),
            })
            .collect();
        Repr {
            signature: self.sig.to_string(),
            terms,
        }
        .serialize(s)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = m.fmt_with(self.sig.kind);
            if body.is_empty() {
                write!(f, "{}", fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{}*{body}", fmt_q(&mag))?;
            }
        }
        Ok(())
    }
}

/// The canonical element equal to `coeff · word`.
pub fn normal_form(word: &[Generator], coeff: Q, sig: &Signature) -> Result<AlgebraElement> {
    for g in word {
        sig.check_index(g.index)?;
    }
    let mut e = AlgebraElement::scalar(*sig, coeff);
    for g in word {
        e = e.mul_generator(*g)?;
    }
    Ok(e)
}

pub fn multiply(e1: &AlgebraElement, e2: &AlgebraElement) -> Result<AlgebraElement> {
    e1.multiply(e2)
}

/// `[u, v] = uv − (−1)^{|u||v|} vu` for Z2-homogeneous arguments.
pub fn super_bracket(e1: &AlgebraElement, e2: &AlgebraElement) -> Result<AlgebraElement> {
    let p1 = e1.parity().ok_or(Error::NotHomogeneous)?;
    let p2 = e2.parity().ok_or(Error::NotHomogeneous)?;
    let uv = e1.multiply(e2)?;
    let vu = e2.multiply(e1)?;
    if p1.is_odd() && p2.is_odd() {
        uv.add(&vu)
    } else {
        uv.sub(&vu)
    }
}

pub fn gradings(m: &Monomial, sig: &Signature) -> Gradings {
    m.gradings(sig)
}

pub fn subalgebra_member(e: &AlgebraElement, sub: Subalgebra) -> bool {
    e.is_member(sub)
}

pub fn dagger_transport(e: &AlgebraElement) -> AlgebraElement {
    e.dagger_transport()
}

/// `Cl(0|b) ≃ D†(b|0)` via `ξ_{−i} ↦ x_i, η_{−i} ↦ ∂_i`, and `Cl†(b|0) ≃ D(0|b)`
/// via `ξ_i ↦ x_{−i}`; each direction is accepted, as is the inverse.
pub fn cl_weyl_iso(e: &AlgebraElement) -> Result<AlgebraElement> {
    let s = e.signature();
    let empty = |r: Rank| r == Rank::Finite(0);
    let target = match (s.kind, s.daggered) {
        (AlgebraKind::Clifford, false) if empty(s.pos_rank) => Signature {
            kind: AlgebraKind::Weyl,
            pos_rank: s.neg_rank,
            neg_rank: Rank::Finite(0),
            daggered: true,
        },
        (AlgebraKind::Weyl, true) if empty(s.neg_rank) => Signature {
            kind: AlgebraKind::Clifford,
            pos_rank: Rank::Finite(0),
            neg_rank: s.pos_rank,
            daggered: false,
        },
        (AlgebraKind::Clifford, true) if empty(s.neg_rank) => Signature {
            kind: AlgebraKind::Weyl,
            pos_rank: Rank::Finite(0),
            neg_rank: s.pos_rank,
            daggered: false,
        },
        (AlgebraKind::Weyl, false) if empty(s.pos_rank) => Signature {
            kind: AlgebraKind::Clifford,
            pos_rank: s.neg_rank,
            neg_rank: Rank::Finite(0),
            daggered: true,
        },
        _ => {
            return Err(Error::SignatureMismatch(
                s.to_string(),
                "Cl(0|b), D†(b|0), Cl†(b|0) or D(0|b)".into(),
            ))
        }
    };
    e.transport(target, |i| -i)
}

/// Splits a canonical monomial as `sign · (positive part) · (negative part)`.
pub fn split_tensor(m: &Monomial, sig: &Signature) -> (Monomial, Monomial, bool) {
    let word = m.word();
    // stable partition; count anticommuting inversions (negative before positive)
    let mut negative = false;
    let mut neg_seen: Vec<i32> = Vec::new();
    for g in &word {
        if g.index > 0 {
            for j in &neg_seen {
                if sig.anticommute(*j, g.index) {
                    negative = !negative;
                }
            }
        } else {
            neg_seen.push(g.index);
        }
    }
    let side = |pos: bool| Monomial {
        raising: m
            .raising
            .iter()
            .filter(|(i, _)| (*i > 0) == pos)
            .copied()
            .collect(),
        lowering: m
            .lowering
            .iter()
            .filter(|(i, _)| (*i > 0) == pos)
            .copied()
            .collect(),
    };
    (side(true), side(false), negative)
}

/// Every canonical monomial of total degree at most `max_degree` (finite ranks).
pub fn monomials_up_to(sig: &Signature, max_degree: u32) -> Result<Vec<Monomial>> {
    let idx = sig.indices()?;
    // slots: (index, is_raising)
    let slots: Vec<(i32, bool)> = idx.iter().flat_map(|i| [(*i, true), (*i, false)]).collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; slots.len()];
    fn rec(
        sig: &Signature,
        slots: &[(i32, bool)],
        pos: usize,
        left: u32,
        exps: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if pos == slots.len() {
            let mut m = Monomial::one();
            for ((i, raising), e) in slots.iter().zip(exps.iter()) {
                if *e > 0 {
                    if *raising {
                        m.raising.push((*i, *e));
                    } else {
                        m.lowering.push((*i, *e));
                    }
                }
            }
            out.push(m);
            return;
        }
        let cap = if sig.is_fermionic(slots[pos].0) {
            left.min(1)
        } else {
            left
        };
        for e in 0..=cap {
            exps[pos] = e;
            rec(sig, slots, pos + 1, left - e, exps, out);
        }
        exps[pos] = 0;
    }
    rec(sig, &slots, 0, max_degree, &mut exps, &mut out);
    out.sort();
    Ok(out)
}
