//! Explicit multiplicity-free weight modules and their action.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{monomials_up_to, AlgebraElement, Generator, GeneratorKind, Subalgebra};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::rational::{q, Q};
use crate::weights::{is_in_h_vee, weight_parity, Parity, Signature, Weight};

use super::class::{functional_value, ClassDescriptor, Functional};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModuleKind {
    Defining,
    FModule,
    XModule,
    YModule,
    PTruncation,
    Restricted,
}

impl std::str::FromStr for ModuleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "defining" => ModuleKind::Defining,
            "f" => ModuleKind::FModule,
            "x" => ModuleKind::XModule,
            "y" => ModuleKind::YModule,
            "p" => ModuleKind::PTruncation,
            "restricted" => ModuleKind::Restricted,
            _ => return Err(Error::Parse(format!("unknown module kind {s:?}"))),
        })
    }
}

/// Absolute value range applied to every coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct WeightBox {
    pub lo: i64,
    pub hi: i64,
}

impl WeightBox {
    pub fn radius(r: i64) -> Self {
        WeightBox { lo: -r, hi: r }
    }
}

impl std::str::FromStr for WeightBox {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad box {s:?}, expected lo:hi"));
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        let lo = a.trim().parse().map_err(|_| bad())?;
        let hi = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(WeightBox { lo, hi })
    }
}

/// Finite combination of basis vectors `v_λ`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightVector(BTreeMap<Weight, Q>);

impl WeightVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(lam: Weight) -> Self {
        WeightVector([(lam, q(1))].into_iter().collect())
    }

    pub fn terms(&self) -> &BTreeMap<Weight, Q> {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, lam: Weight, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(lam).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (l, c) in &o.0 {
            r.add_term(l.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut r = Self::zero();
        for (l, c) in &self.0 {
            r.add_term(l.clone(), c * s);
        }
        r
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(l, c)| format!("{c}*v[{l}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            weight: &'a Weight,
            #[serde(with = "crate::rational::serde_q")]
            coeff: Q,
        }
        let terms: Vec<Term> = self
            .0
            .iter()
            .map(|(w, c)| Term {
                weight: w,
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

/// A weight module given by its support and closed-form action coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitModule {
    pub kind: ModuleKind,
    /// The weight the module was realized from.
    pub mu: Weight,
    /// Support, including any degree or coset constraint.
    pub support: ClassDescriptor,
    pub acting: Subalgebra,
    /// Global `Π` applied on top of the fixed parity function.
    pub parity_shift: bool,
}

/// Builds the defining, `F`, `X` or `Y` module of `mu`.
pub fn realize(
    kind: ModuleKind,
    mu: &Weight,
    sig: &Signature,
    acting: Option<Subalgebra>,
) -> Result<ExplicitModule> {
    if !is_in_h_vee(mu, sig) {
        return Err(Error::InvalidWeight(sig.to_string()));
    }
    let (mu, support, default_acting) = match kind {
        ModuleKind::Defining => {
            let zero = Weight::with_tails(q(0), q(0), 0);
            (
                zero.clone(),
                ClassDescriptor::of_weight(&zero, sig)?,
                Subalgebra::A,
            )
        }
        ModuleKind::XModule => (
            mu.clone(),
            ClassDescriptor::of_weight(mu, sig)?,
            Subalgebra::A,
        ),
        ModuleKind::FModule => (
            mu.clone(),
            ClassDescriptor::lattice(mu, sig)?,
            Subalgebra::A,
        ),
        ModuleKind::YModule => (
            mu.clone(),
            ClassDescriptor::of_weight_degree_zero(mu, sig)?,
            Subalgebra::A0,
        ),
        ModuleKind::PTruncation => {
            return Err(Error::WrongKind(
                "DEFINING, F, X or Y; P(μ) lives in induced_oracle".into(),
            ))
        }
        ModuleKind::Restricted => {
            return Err(Error::WrongKind(
                "DEFINING, F, X or Y; use restrict_to_sublattice".into(),
            ))
        }
    };
    let acting = acting.unwrap_or(default_acting);
    if kind == ModuleKind::YModule && !matches!(acting, Subalgebra::A0 | Subalgebra::HA) {
        return Err(Error::OutsideActingAlgebra(acting.to_string()));
    }
    Ok(ExplicitModule {
        kind,
        mu,
        support,
        acting,
        parity_shift: false,
    })
}

impl ExplicitModule {
    pub fn sig(&self) -> Signature {
        self.support.sig
    }

    pub fn contains(&self, lam: &Weight) -> bool {
        self.support.contains(lam)
    }

    /// Parity assigned to `v_λ`.
    pub fn parity_at(&self, lam: &Weight) -> Parity {
        weight_parity(lam, &self.sig()) + Parity(self.parity_shift)
    }

    pub fn parity_shifted(&self) -> Self {
        ExplicitModule {
            parity_shift: !self.parity_shift,
            ..self.clone()
        }
    }

    pub fn support_box(&self, bx: WeightBox) -> Vec<Weight> {
        self.support.enumerate(bx.lo, bx.hi)
    }

    /// Koszul sign for moving a generator at `i` past the occupied fermionic
    /// coordinates of `v_λ` (those differing from their tail).
    fn koszul(&self, lam: &Weight, i: i32) -> bool {
        let sig = self.sig();
        let fermionic = sig.is_fermionic(i);
        lam.entries()
            .keys()
            .filter(|&&j| sig.contains(j) && sig.is_fermionic(j))
            .filter(|&&j| {
                if fermionic {
                    j < i
                } else {
                    sig.anticommute(i, j)
                }
            })
            .count()
            % 2
            == 1
    }

    /// One generator on one basis vector, inside the unconstrained support.
    pub fn act_generator(&self, g: Generator, lam: &Weight) -> Option<(Weight, Q)> {
        if !self.support.domains_contain(lam) {
            return None;
        }
        self.step(g, lam)
    }

    /// [`Self::act_generator`] for `lam` already inside the domains: only the
    /// moved coordinate needs checking.
    fn step(&self, g: Generator, lam: &Weight) -> Option<(Weight, Q)> {
        let sig = self.sig();
        let i = g.index;
        if !sig.contains(i) {
            return None;
        }
        let li = lam.get(i);
        let (target, coeff) = match g.kind {
            GeneratorKind::Raising => {
                if sig.is_fermionic(i) && !li.is_zero() {
                    return None;
                }
                (li + q(1), q(1))
            }
            GeneratorKind::Lowering => (&li - q(1), li),
        };
        if coeff.is_zero()
            || !self
                .support
                .domain(i)
                .admits(&self.support.base.get(i), &target)
        {
            return None;
        }
        let coeff = if self.koszul(lam, i) { -coeff } else { coeff };
        let mut moved = lam.clone();
        moved.set(i, target);
        Some((moved, coeff))
    }

    fn apply_word(&self, word: &[Generator], v: &WeightVector) -> WeightVector {
        let mut cur = v.clone();
        for g in word.iter().rev() {
            let mut next = WeightVector::zero();
            for (lam, c) in cur.terms() {
                if let Some((t, k)) = self.step(*g, lam) {
                    next.add_term(t, c * k);
                }
            }
            cur = next;
            if cur.is_zero() {
                break;
            }
        }
        cur
    }

    fn apply_terms(&self, terms: &[(Vec<Generator>, Q)], v: &WeightVector) -> WeightVector {
        let mut out = WeightVector::zero();
        for (word, c) in terms {
            for (lam, k) in self.apply_word(word, v).terms() {
                out.add_term(lam.clone(), k * c);
            }
        }
        out
    }

    /// Action of `e` on `v`.
    pub fn act(&self, e: &AlgebraElement, v: &WeightVector) -> Result<WeightVector> {
        if e.signature() != self.sig() {
            return Err(Error::SignatureMismatch(
                e.signature().to_string(),
                self.sig().to_string(),
            ));
        }
        if !e.is_member(self.acting) {
            return Err(Error::OutsideActingAlgebra(self.acting.to_string()));
        }
        if !v.terms().keys().all(|l| self.contains(l)) {
            return Err(Error::OutsideModule);
        }
        Ok(self.act_unchecked(e, v))
    }

    fn act_unchecked(&self, e: &AlgebraElement, v: &WeightVector) -> WeightVector {
        self.apply_terms(&words(e), v)
    }

    /// Indices used when sweeping generators: all of them at finite rank, the
    /// window of `μ` plus one at infinite rank.
    pub fn working_signature(&self) -> Signature {
        let sig = self.sig();
        if sig.is_finite() {
            sig
        } else {
            sig.truncate(self.support.base.window().max(self.mu.window()) + 1)
        }
    }

    /// Spanning set of the acting algebra used by the relation harness.
    fn relation_generators(&self) -> Result<Vec<AlgebraElement>> {
        let sig = self.sig();
        let work = self.working_signature();
        let max_degree = if self.acting == Subalgebra::A { 1 } else { 2 };
        let mut gens = Vec::new();
        for m in monomials_up_to(&work, max_degree)? {
            if m.is_one() {
                continue;
            }
            let e = AlgebraElement::from_terms(sig, [(m, q(1))])?;
            if e.is_member(self.acting) {
                gens.push(e);
            }
        }
        Ok(gens)
    }
}

impl Serialize for ExplicitModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExplicitModule", 6)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("signature", &self.sig().to_string())?;
        st.serialize_field("mu", &self.mu)?;
        st.serialize_field("class", &self.support)?;
        st.serialize_field("acting_algebra", &self.acting.to_string())?;
        st.serialize_field("preferred", &is_preferred(self))?;
        st.end()
    }
}

pub fn act(e: &AlgebraElement, v: &WeightVector, m: &ExplicitModule) -> Result<WeightVector> {
    m.act(e, v)
}

pub fn support_box(m: &ExplicitModule, bx: WeightBox) -> Vec<Weight> {
    m.support_box(bx)
}

pub fn is_preferred(m: &ExplicitModule) -> bool {
    !m.parity_shift
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFailure {
    pub relation: String,
    pub weight: Weight,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub vectors_checked: usize,
    pub relations_checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `act(a)act(b) = act(ab)` for all pairs of a spanning set of the
/// acting algebra, parity compatibility and support closure on every basis
/// vector of the box.
fn words(e: &AlgebraElement) -> Vec<(Vec<Generator>, Q)> {
    e.terms()
        .iter()
        .map(|(m, c)| (m.word(), c.clone()))
        .collect()
}

pub fn verify_module_relations(
    m: &ExplicitModule,
    bx: WeightBox,
    exec: Exec,
) -> Result<RelationReport> {
    let gens = m.relation_generators()?;
    let gen_words: Vec<_> = gens.iter().map(words).collect();
    let mut pairs = Vec::with_capacity(gens.len() * gens.len());
    for (ia, a) in gens.iter().enumerate() {
        for (ib, b) in gens.iter().enumerate() {
            pairs.push((ia, ib, words(&a.multiply(b)?)));
        }
    }
    let parities: Vec<Parity> = gens
        .iter()
        .map(|g| g.parity().unwrap_or(Parity::EVEN))
        .collect();
    let vectors = m.support_box(bx);
    let failures = exec.flat_map(&vectors, |lam| {
        let v = WeightVector::basis(lam.clone());
        let mut out = Vec::new();
        let mut fail = |relation: String, lhs: &WeightVector, rhs: &WeightVector| {
            out.push(RelationFailure {
                relation,
                weight: lam.clone(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        };
        let images: Vec<WeightVector> = gen_words.iter().map(|w| m.apply_terms(w, &v)).collect();
        for ((g, p), w) in gens.iter().zip(&parities).zip(&images) {
            for t in w.terms().keys() {
                if !m.contains(t) {
                    fail(format!("closure of {g}"), w, &WeightVector::zero());
                } else if m.parity_at(t) != m.parity_at(lam) + *p {
                    fail(format!("parity of {g}"), w, &WeightVector::zero());
                }
            }
        }
        for (ia, ib, wab) in &pairs {
            let lhs = m.apply_terms(&gen_words[*ia], &images[*ib]);
            let rhs = m.apply_terms(wab, &v);
            if lhs != rhs {
                fail(format!("({})*({})", gens[*ia], gens[*ib]), &lhs, &rhs);
            }
        }
        out
    });
    Ok(RelationReport {
        vectors_checked: vectors.len(),
        relations_checked: pairs.len(),
        failures,
    })
}

/// Restriction to the coset of `representative` modulo the index-2 sublattice
/// cut out by `functional`.
pub fn restrict_to_sublattice(
    m: &ExplicitModule,
    functional: Functional,
    representative: &Weight,
) -> Result<ExplicitModule> {
    if m.support.coset.is_some() {
        return Err(Error::WrongKind(
            "module without a coset restriction".into(),
        ));
    }
    if !m.contains(representative) {
        return Err(Error::EmptyCoset);
    }
    let target = match functional {
        Functional::Degree => Subalgebra::AEV,
        Functional::Z2Parity => Subalgebra::A0BAR,
    };
    let acting = match (m.acting, functional) {
        (Subalgebra::A, _) => target,
        (Subalgebra::A0, Functional::Degree) | (Subalgebra::HA, _) => m.acting,
        (a, _) if a == target => a,
        (a, _) => return Err(Error::OutsideActingAlgebra(a.to_string())),
    };
    let sig = m.sig();
    let value = functional_value(functional, &sig, &m.support.base, representative)
        .ok_or(Error::EmptyCoset)?;
    Ok(ExplicitModule {
        kind: ModuleKind::Restricted,
        mu: representative.clone(),
        support: m.support.clone().with_coset(functional, value),
        acting,
        parity_shift: m.parity_shift,
    })
}

/// Class generating the simple socle of `F(μ)`: integral coordinates at
/// positive indices are moved to 0.
pub fn socle_class(f: &ExplicitModule) -> Result<ClassDescriptor> {
    let sig = f.sig();
    if f.kind != ModuleKind::FModule || sig.kind != crate::weights::AlgebraKind::Weyl {
        return Err(Error::WrongKind("F_MODULE over a Weyl signature".into()));
    }
    let mut tilde = f.mu.clone();
    for (i, v) in f.mu.entries() {
        if *i > 0 && v.is_integer() {
            tilde.set(*i, q(0));
        }
    }
    if sig.pos_rank.finite().is_none() && f.mu.pos_tail().is_integer() {
        let mut t = Weight::with_tails(q(0), f.mu.neg_tail().clone(), f.mu.window());
        for (i, v) in tilde.entries() {
            t.set(*i, v.clone());
        }
        tilde = t;
    }
    ClassDescriptor::of_weight(&tilde, &sig)
}
