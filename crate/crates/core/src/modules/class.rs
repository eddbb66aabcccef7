//! `≈`-classes of weights as coordinatewise domains.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{floor_i64, fmt_q, is_int, q, Q};
use crate::weights::{is_in_h_vee, weight_parity, Parity, RootVector, Signature, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Domain {
    NonnegIntLine,
    NegIntLine,
    /// `μ_i + ℤ` at a non-integral coordinate.
    FullShiftLine,
    Fermion01,
    Frozen,
}

impl Domain {
    /// Domain of the `≈`-class through value `v` at index `i`.
    pub fn of_value(sig: &Signature, i: i32, v: &Q) -> Domain {
        if sig.is_fermionic(i) {
            Domain::Fermion01
        } else if !is_int(v) {
            Domain::FullShiftLine
        } else if v >= &Q::zero() {
            Domain::NonnegIntLine
        } else {
            Domain::NegIntLine
        }
    }

    fn canonical(self, v: &Q) -> Q {
        match self {
            Domain::NonnegIntLine | Domain::Fermion01 => q(0),
            Domain::NegIntLine => q(-1),
            Domain::FullShiftLine => v - q(floor_i64(v)),
            Domain::Frozen => v.clone(),
        }
    }

    pub(crate) fn admits(self, base: &Q, v: &Q) -> bool {
        match self {
            Domain::NonnegIntLine => is_int(v) && v >= &Q::zero(),
            Domain::NegIntLine => is_int(v) && v < &Q::zero(),
            Domain::FullShiftLine => is_int(&(v - base)),
            Domain::Fermion01 => v.is_zero() || v == &q(1),
            Domain::Frozen => v == base,
        }
    }

    /// Values admitted inside `[lo, hi]`; fermionic coordinates ignore the box.
    pub fn values_in(self, base: &Q, lo: i64, hi: i64) -> Vec<Q> {
        match self {
            Domain::NonnegIntLine => (lo.max(0)..=hi).map(q).collect(),
            Domain::NegIntLine => (lo..=hi.min(-1)).map(q).collect(),
            Domain::FullShiftLine => {
                let frac = base - q(floor_i64(base));
                (lo..=hi)
                    .map(|k| &frac + q(k))
                    .filter(|v| v <= &q(hi) && v >= &q(lo))
                    .collect()
            }
            Domain::Fermion01 => vec![q(0), q(1)],
            Domain::Frozen => vec![base.clone()],
        }
    }
}

/// Index-2 sublattices of `Q_A`, given by a parity functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    /// Total degree mod 2; the sublattice acted on by `A_ev`.
    Degree,
    /// Z2-parity; the sublattice acted on by `A_0̄`.
    Z2Parity,
}

impl std::str::FromStr for Functional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" => Ok(Functional::Degree),
            "parity" | "z2" => Ok(Functional::Z2Parity),
            _ => Err(Error::Parse(format!("unknown functional {s:?}"))),
        }
    }
}

/// Value of `τ(λ − base)`.
pub fn functional_value(
    f: Functional,
    sig: &Signature,
    base: &Weight,
    lam: &Weight,
) -> Option<Parity> {
    let diff = lam.diff(base)?;
    Some(match f {
        Functional::Degree => Parity::from_int(diff.degree()),
        Functional::Z2Parity => weight_parity(lam, sig) + weight_parity(base, sig),
    })
}

/// A set of weights cut out by coordinate domains, plus optional degree and
/// coset constraints measured from the canonical base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassDescriptor {
    pub sig: Signature,
    pub base: Weight,
    pub domains: BTreeMap<i32, Domain>,
    /// `Σ(λ_i − base_i)` is pinned to this value.
    pub degree: Option<i64>,
    /// `τ(λ − base)` is pinned to this parity.
    pub coset: Option<(Functional, Parity)>,
    /// Domain of bosonic coordinates outside `domains`; derived from the base when unset.
    pub default_domain: Option<Domain>,
}

/// Indices an explicit descriptor must cover: all of them at finite rank, the
/// window at infinite rank.
fn covered_indices(sig: &Signature, w: &Weight) -> Vec<i32> {
    match sig.indices() {
        Ok(v) => v,
        Err(_) => {
            let n = w.window().max(1);
            sig.truncate(n)
                .indices()
                .expect("truncated ranks are finite")
        }
    }
}

impl ClassDescriptor {
    /// The `≈`-class of `mu`, in canonical form.
    pub fn of_weight(mu: &Weight, sig: &Signature) -> Result<Self> {
        if !is_in_h_vee(mu, sig) {
            return Err(Error::InvalidWeight(sig.to_string()));
        }
        let mut base = mu.clone();
        let mut domains = BTreeMap::new();
        for i in covered_indices(sig, mu) {
            let v = mu.get(i);
            let d = Domain::of_value(sig, i, &v);
            base.set(i, d.canonical(&v));
            domains.insert(i, d);
        }
        Ok(ClassDescriptor {
            sig: *sig,
            base,
            domains,
            degree: None,
            coset: None,
            default_domain: None,
        })
    }

    /// The class of `mu` cut by `Σ(λ − μ) = 0`, i.e. `≈₀`.
    pub fn of_weight_degree_zero(mu: &Weight, sig: &Signature) -> Result<Self> {
        let mut c = Self::of_weight(mu, sig)?;
        let d = mu.diff(&c.base).expect("canonical base is in the block");
        c.degree = Some(d.degree());
        Ok(c)
    }

    /// Class with explicit domains around `base`, canonicalized.
    pub fn from_domains(
        sig: &Signature,
        base: &Weight,
        domains: BTreeMap<i32, Domain>,
    ) -> Result<Self> {
        let mut b = base.clone();
        let mut all = BTreeMap::new();
        for i in covered_indices(sig, base)
            .into_iter()
            .chain(domains.keys().copied())
        {
            sig.check_index(i)?;
            let v = base.get(i);
            let d = domains
                .get(&i)
                .copied()
                .unwrap_or_else(|| Domain::of_value(sig, i, &v));
            if !d.admits(&v, &v) {
                return Err(Error::InvalidWeight(format!(
                    "{sig}: {v} at {i} not in {d:?}"
                )));
            }
            b.set(i, d.canonical(&v));
            all.insert(i, d);
        }
        Ok(ClassDescriptor {
            sig: *sig,
            base: b,
            domains: all,
            degree: None,
            coset: None,
            default_domain: None,
        })
    }

    /// The lattice `μ + Q_A` inside `h^vee`, a union of classes.
    pub fn lattice(mu: &Weight, sig: &Signature) -> Result<Self> {
        if !is_in_h_vee(mu, sig) {
            return Err(Error::InvalidWeight(sig.to_string()));
        }
        let mut base = mu.clone();
        let mut domains = BTreeMap::new();
        for i in covered_indices(sig, mu) {
            let d = if sig.is_fermionic(i) {
                Domain::Fermion01
            } else {
                Domain::FullShiftLine
            };
            base.set(i, d.canonical(&mu.get(i)));
            domains.insert(i, d);
        }
        Ok(ClassDescriptor {
            sig: *sig,
            base,
            domains,
            degree: None,
            coset: None,
            default_domain: Some(Domain::FullShiftLine),
        })
    }

    pub fn domain(&self, i: i32) -> Domain {
        if let Some(d) = self.domains.get(&i) {
            return *d;
        }
        match self.default_domain {
            Some(d) if !self.sig.is_fermionic(i) => d,
            _ => Domain::of_value(&self.sig, i, &self.base.get(i)),
        }
    }

    pub fn with_coset(mut self, f: Functional, value: Parity) -> Self {
        self.coset = Some((f, value));
        self
    }

    pub fn contains(&self, lam: &Weight) -> bool {
        let Some(diff) = self.admits(lam) else {
            return false;
        };
        if self.degree.is_some_and(|d| d != diff.degree()) {
            return false;
        }
        match self.coset {
            Some((f, p)) => functional_value(f, &self.sig, &self.base, lam) == Some(p),
            None => true,
        }
    }

    /// Whether the unconstrained class (ignoring degree and coset) contains `lam`.
    pub fn domains_contain(&self, lam: &Weight) -> bool {
        self.admits(lam).is_some()
    }

    /// Offset from the base when every coordinate lies in its domain.
    fn admits(&self, lam: &Weight) -> Option<RootVector> {
        if lam.pos_tail() != self.base.pos_tail() || lam.neg_tail() != self.base.neg_tail() {
            return None;
        }
        let keys: BTreeSet<i32> = self
            .base
            .support_union(lam)
            .into_iter()
            .chain(self.domains.keys().copied())
            .collect();
        for i in keys {
            let v = lam.get(i);
            if !self.sig.contains(i) {
                if !v.is_zero() {
                    return None;
                }
                continue;
            }
            if !self.domain(i).admits(&self.base.get(i), &v) {
                return None;
            }
        }
        lam.diff(&self.base)
    }

    pub fn enumerate(&self, lo: i64, hi: i64) -> Vec<Weight> {
        let coords: Vec<(i32, Vec<Q>)> = self
            .domains
            .keys()
            .map(|&i| (i, self.domain(i).values_in(&self.base.get(i), lo, hi)))
            .collect();
        let mut out = Vec::new();
        let mut cur = self.base.clone();
        fn rec(
            c: &ClassDescriptor,
            coords: &[(i32, Vec<Q>)],
            k: usize,
            cur: &mut Weight,
            out: &mut Vec<Weight>,
        ) {
            if k == coords.len() {
                if c.contains(cur) {
                    out.push(cur.clone());
                }
                return;
            }
            let (i, vals) = &coords[k];
            for v in vals {
                cur.set(*i, v.clone());
                rec(c, coords, k + 1, cur, out);
            }
        }
        rec(self, &coords, 0, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Same class with the coset parity flipped.
    pub fn flipped_coset(&self) -> Option<Self> {
        let (f, p) = self.coset?;
        Some(self.clone().with_coset(f, p + Parity::ODD))
    }

    pub fn is_integral_at(&self, i: i32) -> bool {
        matches!(self.domain(i), Domain::NonnegIntLine | Domain::NegIntLine)
    }
}

impl fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .domains
            .iter()
            .map(|(i, d)| {
                let tag = match d {
                    Domain::NonnegIntLine => "Z>=0".to_string(),
                    Domain::NegIntLine => "Z<0".to_string(),
                    Domain::FullShiftLine => format!("{}+Z", fmt_q(&self.base.get(*i))),
                    Domain::Fermion01 => "{0,1}".to_string(),
                    Domain::Frozen => format!("={}", fmt_q(&self.base.get(*i))),
                };
                format!("{i}:{tag}")
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))?;
        if let Some(d) = self.degree {
            write!(f, " deg={d}")?;
        }
        if let Some((func, p)) = self.coset {
            let name = match func {
                Functional::Degree => "degree",
                Functional::Z2Parity => "parity",
            };
            write!(f, " {name}={}", p.0 as u8)?;
        }
        Ok(())
    }
}

impl Serialize for ClassDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = 3 + self.degree.is_some() as usize + self.coset.is_some() as usize;
        let mut m = s.serialize_map(Some(n))?;
        m.serialize_entry("signature", &self.sig.to_string())?;
        m.serialize_entry("base", &self.base)?;
        let ordered: Vec<(String, Domain)> = self
            .domains
            .iter()
            .map(|(i, d)| (i.to_string(), *d))
            .collect();
        m.serialize_entry("domains", &OrderedDomains(&ordered))?;
        if let Some(d) = self.degree {
            m.serialize_entry("degree", &d)?;
        }
        if let Some((f, p)) = self.coset {
            m.serialize_entry("coset", &(f, p.0 as u8))?;
        }
        m.end()
    }
}

struct OrderedDomains<'a>(&'a [(String, Domain)]);

impl Serialize for OrderedDomains<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}
