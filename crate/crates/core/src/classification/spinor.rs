//! Splitting `Cl(a|b)` weight modules into spinor and oscillator factors.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modules::class::functional_value;
use crate::modules::{ClassDescriptor, Domain, ExplicitModule, Functional, WeightBox};
use crate::weights::{AlgebraKind, Parity, Rank, Signature, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TwinSide {
    Spinor,
    Oscillator,
}

impl std::str::FromStr for TwinSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spinor" => Ok(TwinSide::Spinor),
            "oscillator" => Ok(TwinSide::Oscillator),
            _ => Err(Error::Parse(format!("unknown side {s:?}"))),
        }
    }
}

/// One half of the decomposition: the support is `S × T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductPart {
    pub spinor: ClassDescriptor,
    pub oscillator: ClassDescriptor,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinorOscillatorDescriptor {
    /// Part whose spinor factor has even degree.
    pub even: Option<ProductPart>,
    /// Part whose spinor factor has odd degree.
    pub odd: Option<ProductPart>,
}

impl SpinorOscillatorDescriptor {
    pub fn s_class(&self) -> Option<&ClassDescriptor> {
        self.even.as_ref().map(|p| &p.spinor)
    }

    pub fn s_twin_class(&self) -> Option<&ClassDescriptor> {
        self.odd.as_ref().map(|p| &p.spinor)
    }

    pub fn t_class(&self) -> Option<&ClassDescriptor> {
        self.even.as_ref().map(|p| &p.oscillator)
    }

    pub fn t_twin_class(&self) -> Option<&ClassDescriptor> {
        self.odd.as_ref().map(|p| &p.oscillator)
    }
}

fn spinor_sig(sig: &Signature) -> Signature {
    Signature::new(AlgebraKind::Clifford, sig.pos_rank, Rank::Finite(0))
}

fn oscillator_sig(sig: &Signature) -> Signature {
    Signature::new(AlgebraKind::Weyl, sig.neg_rank, Rank::Finite(0))
}

/// Positive-index part, and the negative-index part renamed `i ↦ −i`.
fn split(lam: &Weight) -> (Weight, Weight) {
    let mut s = Weight::with_tails(lam.pos_tail().clone(), num::Zero::zero(), 0);
    let mut t = Weight::with_tails(lam.neg_tail().clone(), num::Zero::zero(), 0);
    for (i, v) in lam.entries() {
        if *i > 0 {
            s.set(*i, v.clone());
        } else {
            t.set(-*i, v.clone());
        }
    }
    (s, t)
}

/// Class of the first point, pinned to a degree coset when all points share one.
fn factor_class(points: &BTreeSet<Weight>, sig: &Signature) -> Result<ClassDescriptor> {
    let first = points.iter().next().expect("nonempty part");
    let class = ClassDescriptor::of_weight(first, sig)?;
    let values: BTreeSet<Option<Parity>> = points
        .iter()
        .map(|p| functional_value(Functional::Degree, sig, &class.base, p))
        .collect();
    match values.into_iter().collect::<Vec<_>>().as_slice() {
        [Some(p)] => Ok(class.with_coset(Functional::Degree, *p)),
        _ => Ok(class),
    }
}

fn product_part(points: &[Weight], sig: &Signature, bx: WeightBox) -> Result<Option<ProductPart>> {
    if points.is_empty() {
        return Ok(None);
    }
    let (ss, ts): (BTreeSet<Weight>, BTreeSet<Weight>) = points.iter().map(split).unzip();
    let spinor = factor_class(&ss, &spinor_sig(sig))?;
    let oscillator = factor_class(&ts, &oscillator_sig(sig))?;
    let have: BTreeSet<(Weight, Weight)> = points.iter().map(split).collect();
    let s_box = spinor.enumerate(bx.lo, bx.hi);
    let t_box = oscillator.enumerate(bx.lo, bx.hi);
    let mut want = BTreeSet::new();
    for s in &s_box {
        for t in &t_box {
            want.insert((s.clone(), t.clone()));
        }
    }
    if have != want {
        return Err(Error::NonProductSupport);
    }
    Ok(Some(ProductPart {
        spinor,
        oscillator,
        size: have.len(),
    }))
}

/// Splits the boxed support of a `Cl(a|b)` module by the degree parity of its
/// spinor factor and checks that each half is a product `S × T`.
pub fn decompose_even_odd(m: &ExplicitModule, bx: WeightBox) -> Result<SpinorOscillatorDescriptor> {
    let sig = m.sig();
    if sig.kind != AlgebraKind::Clifford || sig.daggered {
        return Err(Error::WrongKind(
            "module over an undaggered Clifford signature".into(),
        ));
    }
    if !sig.is_finite() {
        return Err(Error::InfiniteRank);
    }
    let (mut even, mut odd) = (Vec::new(), Vec::new());
    for lam in m.support_box(bx) {
        let deg: i64 = lam
            .entries()
            .iter()
            .filter(|(i, _)| **i > 0)
            .map(|(_, v)| crate::rational::floor_i64(v))
            .sum();
        if deg % 2 == 0 {
            even.push(lam);
        } else {
            odd.push(lam);
        }
    }
    Ok(SpinorOscillatorDescriptor {
        even: product_part(&even, &sig, bx)?,
        odd: product_part(&odd, &sig, bx)?,
    })
}

/// The twin class: the other degree coset of the same simple module, or the
/// class itself when no coset is pinned (the odd orthogonal spinor case).
pub fn twin_of(class: &ClassDescriptor, side: TwinSide) -> Result<ClassDescriptor> {
    let sig = class.sig;
    let shape_ok = match side {
        TwinSide::Spinor => {
            sig.kind == AlgebraKind::Clifford
                && class.domains.values().all(|d| *d == Domain::Fermion01)
        }
        TwinSide::Oscillator => {
            sig.kind == AlgebraKind::Weyl && class.domains.values().all(|d| *d != Domain::Fermion01)
        }
    };
    if !shape_ok || sig.neg_rank != Rank::Finite(0) || class.degree.is_some() {
        return Err(Error::NotTwinType);
    }
    match class.coset {
        None => Ok(class.clone()),
        Some((Functional::Degree, _)) => Ok(class.flipped_coset().expect("coset is set")),
        Some(_) => Err(Error::NotTwinType),
    }
}
