//! Algebra signatures, weights of `h^vee`, the lattice `Q_A`, the parity
//! function and the equivalence relations used by the classification.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Add;

use num::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{floor_i64, fmt_q, is_nonneg_int, parse_q, q, Q};
use crate::roots::{AffineClassical, HighestWeight, Hom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Weyl,
    Clifford,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl Rank {
    pub fn contains(self, k: u32) -> bool {
        match self {
            Rank::Finite(n) => k <= n,
            Rank::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Rank::Finite(n) => Some(n),
            Rank::Infinite => None,
        }
    }

    /// Does this side have coordinates beyond the explicit window `w`?
    fn extends_past(self, w: u32) -> bool {
        match self {
            Rank::Finite(n) => n > w,
            Rank::Infinite => true,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(n) => write!(f, "{n}"),
            Rank::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Rank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Rank::Infinite);
        }
        s.parse()
            .map(Rank::Finite)
            .map_err(|_| Error::Parse(format!("bad rank {s:?}")))
    }
}

impl Serialize for Rank {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rank {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Which superalgebra: `D(a|b)`, `Cl(a|b)` or a daggered variant.
///
/// `pos_rank` is the number of positive indices, `neg_rank` of negative ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub kind: AlgebraKind,
    pub pos_rank: Rank,
    pub neg_rank: Rank,
    pub daggered: bool,
}

impl Signature {
    pub fn new(kind: AlgebraKind, pos_rank: Rank, neg_rank: Rank) -> Self {
        Signature {
            kind,
            pos_rank,
            neg_rank,
            daggered: false,
        }
    }

    pub fn weyl(a: u32, b: u32) -> Self {
        Self::new(AlgebraKind::Weyl, Rank::Finite(a), Rank::Finite(b))
    }

    pub fn clifford(a: u32, b: u32) -> Self {
        Self::new(AlgebraKind::Clifford, Rank::Finite(a), Rank::Finite(b))
    }

    pub fn dagger(self) -> Self {
        Signature {
            daggered: !self.daggered,
            ..self
        }
    }

    pub fn contains(&self, i: i32) -> bool {
        match i.cmp(&0) {
            Ordering::Greater => self.pos_rank.contains(i as u32),
            Ordering::Less => self.neg_rank.contains(i.unsigned_abs()),
            Ordering::Equal => false,
        }
    }

    pub fn check_index(&self, i: i32) -> Result<()> {
        if i == 0 {
            Err(Error::ZeroIndex)
        } else if !self.contains(i) {
            Err(Error::IndexOutOfRank {
                index: i,
                signature: self.to_string(),
            })
        } else {
            Ok(())
        }
    }

    /// Nilpotent side: negative indices for Weyl, positive for Clifford.
    pub fn is_fermionic(&self, i: i32) -> bool {
        match self.kind {
            AlgebraKind::Weyl => i < 0,
            AlgebraKind::Clifford => i > 0,
        }
    }

    /// Z2-parity of the generators at index `i` (odd = true).
    pub fn is_odd(&self, i: i32) -> bool {
        (i < 0) ^ (self.daggered && i > 0)
    }

    /// Whether distinct generators at indices `i`, `j` anticommute (`uv = −vu`).
    ///
    /// The dagger regrades the generators but keeps the multiplication, so the
    /// sign is taken from the undaggered parities.
    pub fn anticommute(&self, i: i32, j: i32) -> bool {
        let both_odd = i < 0 && j < 0;
        match self.kind {
            AlgebraKind::Weyl => both_odd,
            AlgebraKind::Clifford => !both_odd,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.pos_rank.finite().is_some() && self.neg_rank.finite().is_some()
    }

    /// All indices, ascending; fails at infinite rank.
    pub fn indices(&self) -> Result<Vec<i32>> {
        let a = self.pos_rank.finite().ok_or(Error::InfiniteRank)? as i32;
        let b = self.neg_rank.finite().ok_or(Error::InfiniteRank)? as i32;
        Ok((-b..=-1).chain(1..=a).collect())
    }

    /// The same signature with infinite ranks replaced by `n`.
    pub fn truncate(&self, n: u32) -> Signature {
        let cut = |r: Rank| match r {
            Rank::Infinite => Rank::Finite(n),
            r => r,
        };
        Signature {
            pos_rank: cut(self.pos_rank),
            neg_rank: cut(self.neg_rank),
            ..*self
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            AlgebraKind::Weyl => "D",
            AlgebraKind::Clifford => "Cl",
        };
        let dag = if self.daggered { "†" } else { "" };
        write!(f, "{name}{dag}({}|{})", self.pos_rank, self.neg_rank)
    }
}

/// Element of `Z_2`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct Parity(pub bool);

impl Parity {
    pub const EVEN: Parity = Parity(false);
    pub const ODD: Parity = Parity(true);

    pub fn from_int(n: i64) -> Parity {
        Parity(n.rem_euclid(2) == 1)
    }

    pub fn is_odd(self) -> bool {
        self.0
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Parity {
    type Output = Parity;

    fn add(self, o: Parity) -> Parity {
        Parity(self.0 ^ o.0)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

/// Finitely supported element of `Q_A = ⊕ Z ζ_i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVector {
    entries: BTreeMap<i32, i64>,
}

impl RootVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn zeta(i: i32) -> Self {
        Self::from_pairs([(i, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i32, i64)>>(pairs: I) -> Self {
        let mut v = Self::zero();
        for (i, c) in pairs {
            v.add_at(i, c);
        }
        v
    }

    pub fn add_at(&mut self, i: i32, c: i64) {
        let e = self.entries.entry(i).or_insert(0);
        *e += c;
        if *e == 0 {
            self.entries.remove(&i);
        }
    }

    pub fn get(&self, i: i32) -> i64 {
        self.entries.get(&i).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<i32, i64> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, o: &RootVector) -> RootVector {
        let mut v = self.clone();
        for (i, c) in &o.entries {
            v.add_at(*i, *c);
        }
        v
    }

    pub fn neg(&self) -> RootVector {
        RootVector::from_pairs(self.entries.iter().map(|(i, c)| (*i, -c)))
    }

    /// Total coordinate sum; zero exactly on `Q_{A_0}`.
    pub fn degree(&self) -> i64 {
        self.entries.values().sum()
    }

    /// `p(α)`: negative-index coordinates count, plus positive ones when daggered.
    pub fn parity(&self, sig: &Signature) -> Parity {
        Parity::from_int(
            self.entries
                .iter()
                .filter(|(i, _)| sig.is_odd(**i))
                .map(|(_, c)| c)
                .sum(),
        )
    }

    pub fn l1(&self) -> i64 {
        self.entries.values().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(i, c)| format!("{c}*z[{i}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Tail-constant weight: explicit entries inside `|i| ≤ window`, constant tails
/// beyond it on each side. Entries equal to their side's tail are never stored.
#[derive(Debug, Clone)]
pub struct Weight {
    entries: BTreeMap<i32, Q>,
    window: u32,
    pos_tail: Q,
    neg_tail: Q,
}

impl Weight {
    pub fn zero() -> Self {
        Weight {
            entries: BTreeMap::new(),
            window: 0,
            pos_tail: Q::zero(),
            neg_tail: Q::zero(),
        }
    }

    pub fn with_tails(pos_tail: Q, neg_tail: Q, window: u32) -> Self {
        Weight {
            entries: BTreeMap::new(),
            window,
            pos_tail,
            neg_tail,
        }
    }

    pub fn zeta(i: i32) -> Self {
        Self::from_pairs([(i, q(1))])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i32, Q)>>(pairs: I) -> Self {
        let mut w = Self::zero();
        for (i, v) in pairs {
            w.set(i, v);
        }
        w
    }

    pub fn from_ints<I: IntoIterator<Item = (i32, i64)>>(pairs: I) -> Self {
        Self::from_pairs(pairs.into_iter().map(|(i, v)| (i, q(v))))
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn pos_tail(&self) -> &Q {
        &self.pos_tail
    }

    pub fn neg_tail(&self) -> &Q {
        &self.neg_tail
    }

    pub fn tail(&self, i: i32) -> &Q {
        if i > 0 {
            &self.pos_tail
        } else {
            &self.neg_tail
        }
    }

    /// Stored entries (those differing from their tail).
    pub fn entries(&self) -> &BTreeMap<i32, Q> {
        &self.entries
    }

    pub fn get(&self, i: i32) -> Q {
        self.entries
            .get(&i)
            .cloned()
            .unwrap_or_else(|| self.tail(i).clone())
    }

    /// Sets coordinate `i`, widening the window if needed.
    pub fn set(&mut self, i: i32, v: Q) {
        assert!(i != 0, "index must be nonzero");
        self.window = self.window.max(i.unsigned_abs());
        if &v == self.tail(i) {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, v);
        }
    }

    pub fn add_root(&self, alpha: &RootVector) -> Weight {
        let mut w = self.clone();
        for (i, c) in alpha.entries() {
            let v = w.get(*i) + q(*c);
            w.set(*i, v);
        }
        w
    }

    pub fn shift(&self, i: i32, c: i64) -> Weight {
        self.add_root(&RootVector::from_pairs([(i, c)]))
    }

    /// Indices stored in either weight.
    pub fn support_union(&self, o: &Weight) -> BTreeSet<i32> {
        self.entries
            .keys()
            .chain(o.entries.keys())
            .copied()
            .collect()
    }

    /// `self − o` when it lies in `Q_A`.
    pub fn diff(&self, o: &Weight) -> Option<RootVector> {
        if self.pos_tail != o.pos_tail || self.neg_tail != o.neg_tail {
            return None;
        }
        let mut v = RootVector::zero();
        for i in self.support_union(o) {
            let d = self.get(i) - o.get(i);
            if !d.is_integer() {
                return None;
            }
            v.add_at(i, crate::rational::to_i64(&d)?);
        }
        Some(v)
    }

    /// Coordinate sum over stored entries relative to the tails.
    pub fn finite_degree(&self) -> Q {
        self.entries.iter().map(|(i, v)| v - self.tail(*i)).sum()
    }

    fn key(&self) -> (&BTreeMap<i32, Q>, &Q, &Q) {
        (&self.entries, &self.pos_tail, &self.neg_tail)
    }
}

impl PartialEq for Weight {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}

impl Eq for Weight {}

impl Hash for Weight {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.key().hash(h)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Weight {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(i, v)| format!("{i}={}", fmt_q(v)))
            .collect();
        write!(f, "{{{}}}", parts.join(","))?;
        if !self.pos_tail.is_zero() || !self.neg_tail.is_zero() {
            write!(
                f,
                "[tails +{} -{}]",
                fmt_q(&self.pos_tail),
                fmt_q(&self.neg_tail)
            )?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WeightRepr {
    entries: BTreeMap<String, String>,
    window: u32,
    pos_tail: String,
    neg_tail: String,
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // keys sorted by index value, not lexicographically
        let mut map = s.serialize_struct("Weight", 4)?;
        use serde::ser::SerializeStruct;
        map.serialize_field("entries", &OrderedEntries(&self.entries))?;
        map.serialize_field("window", &self.window)?;
        map.serialize_field("pos_tail", &fmt_q(&self.pos_tail))?;
        map.serialize_field("neg_tail", &fmt_q(&self.neg_tail))?;
        map.end()
    }
}

struct OrderedEntries<'a>(&'a BTreeMap<i32, Q>);

impl Serialize for OrderedEntries<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (i, v) in self.0 {
            m.serialize_entry(&i.to_string(), &fmt_q(v))?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WeightRepr::deserialize(d)?;
        let rat =
            |s: &str| parse_q(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")));
        let mut w = Weight::with_tails(rat(&r.pos_tail)?, rat(&r.neg_tail)?, r.window);
        for (k, v) in &r.entries {
            let i: i32 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad index {k:?}")))?;
            if i == 0 {
                return Err(D::Error::custom("index must be nonzero"));
            }
            if i.unsigned_abs() > r.window {
                return Err(D::Error::custom(format!(
                    "index {i} outside window {}",
                    r.window
                )));
            }
            w.set(i, rat(v)?);
        }
        Ok(w)
    }
}

/// Membership in `h^vee`: fermionic coordinates (tails included) lie in `{0,1}`
/// and every nonzero entry sits at an index of the signature.
pub fn is_in_h_vee(mu: &Weight, sig: &Signature) -> bool {
    let in_01 = |v: &Q| v.is_zero() || v.is_one();
    for (i, v) in mu.entries() {
        if !sig.contains(*i) && !v.is_zero() {
            return false;
        }
        if sig.contains(*i) && sig.is_fermionic(*i) && !in_01(v) {
            return false;
        }
    }
    let fermionic_tail_ok = |side_positive: bool, rank: Rank, tail: &Q| {
        let fermionic = sig.is_fermionic(if side_positive { 1 } else { -1 });
        !fermionic || !rank.extends_past(mu.window) || in_01(tail)
    };
    fermionic_tail_ok(true, sig.pos_rank, mu.pos_tail())
        && fermionic_tail_ok(false, sig.neg_rank, mu.neg_tail())
}

/// `μ ∼ ν`: the difference lies in `Q_A`.
pub fn same_block(mu: &Weight, nu: &Weight) -> bool {
    mu.diff(nu).is_some()
}

/// `μ ≈ ν`: same block and the same set of coordinates in `Z_{≥0}`.
pub fn approx_equiv(mu: &Weight, nu: &Weight) -> bool {
    same_block(mu, nu)
        && mu
            .support_union(nu)
            .into_iter()
            .all(|i| is_nonneg_int(&mu.get(i)) == is_nonneg_int(&nu.get(i)))
}

/// `μ ≈₀ ν`: `μ ≈ ν` and the difference has total degree zero.
pub fn approx_equiv_zero(mu: &Weight, nu: &Weight) -> bool {
    approx_equiv(mu, nu) && mu.diff(nu).is_some_and(|d| d.degree() == 0)
}

/// Fixed extension of the parity function to `h^vee`:
/// `Σ_{i<0} ⌊μ_i − tail⌋ mod 2` (and over `i>0` too for daggered signatures).
pub fn weight_parity(mu: &Weight, sig: &Signature) -> Parity {
    let s: i64 = mu
        .entries()
        .iter()
        .filter(|(i, _)| sig.is_odd(**i))
        .map(|(i, v)| floor_i64(&(v - mu.tail(*i))))
        .sum();
    Parity::from_int(s)
}

/// The affine map `h_A^* → h^*` induced by a homomorphism, `f(μ+α) = f(μ) + f_lin(α)`.
///
/// `f(0) = τ` for `Φ, Ψ, Θ` and the linear part sends `ζ_i` to minus the
/// matching `ε`/`δ`; for `Υ±` the map is the plain index renaming.
pub fn f_correspondence(mu: &Weight, hom: Hom, sig: &Signature) -> Result<AffineClassical> {
    if !mu.pos_tail().is_zero() || !mu.neg_tail().is_zero() {
        return Err(Error::InfiniteRank);
    }
    let mut linear = HighestWeight::zero();
    for (i, v) in mu.entries() {
        sig.check_index(*i)?;
        let (idx, s) = hom.zeta_image(*i);
        linear.add_coeff(idx, &(v * q(s)));
    }
    Ok(AffineClassical {
        tau: hom.tau_offset(),
        linear,
    })
}
