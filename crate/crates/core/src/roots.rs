//! Classical root data for `osp(2m|2n)`, `osp(2m+1|2n)` and `gl/sl(m|n)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, Q};

/// Classical coordinate: `ε_i` or `δ_j` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassIdx {
    Eps(u32),
    Delta(u32),
}

impl fmt::Display for ClassIdx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassIdx::Eps(i) => write!(f, "e{i}"),
            ClassIdx::Delta(j) => write!(f, "d{j}"),
        }
    }
}

impl FromStr for ClassIdx {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad classical index {s:?}"));
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: u32 = tail.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match head {
            "e" => Ok(ClassIdx::Eps(n)),
            "d" => Ok(ClassIdx::Delta(n)),
            _ => Err(bad()),
        }
    }
}

/// The fixed invariant form: `(ε_i,ε_j)=δ_ij`, `(δ_i,δ_j)=−δ_ij`, mixed terms zero.
pub fn form_sign(i: ClassIdx) -> i64 {
    match i {
        ClassIdx::Eps(_) => 1,
        ClassIdx::Delta(_) => -1,
    }
}

/// Finitely supported rational combination of `ε_i`, `δ_j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HighestWeight {
    coeffs: BTreeMap<ClassIdx, Q>,
}

impl HighestWeight {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (ClassIdx, Q)>>(pairs: I) -> Self {
        let mut w = Self::zero();
        for (i, c) in pairs {
            w.add_coeff(i, &c);
        }
        w
    }

    pub fn unit(i: ClassIdx) -> Self {
        Self::from_pairs([(i, q(1))])
    }

    pub fn coeff(&self, i: ClassIdx) -> Q {
        self.coeffs.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<ClassIdx, Q> {
        &self.coeffs
    }

    pub fn add_coeff(&mut self, i: ClassIdx, c: &Q) {
        let v = self.coeff(i) + c;
        if v.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for (i, c) in &other.coeffs {
            w.add_coeff(*i, c);
        }
        w
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::from_pairs(self.coeffs.iter().map(|(i, c)| (*i, c * s)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    pub fn add_root(&self, r: &Root, times: i64) -> Self {
        let mut w = self.clone();
        for (i, c) in &r.coeffs {
            w.add_coeff(*i, &q(c * times));
        }
        w
    }

    pub fn pair_root(&self, r: &Root) -> Q {
        r.coeffs
            .iter()
            .map(|(i, c)| self.coeff(*i) * q(c * form_sign(*i)))
            .sum()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| format!("{i}={}", fmt_q(c)))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `e1=1/2,d2=-3/2`; the empty string or `0` is the zero weight.
impl FromStr for HighestWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Self::zero());
        }
        let mut w = Self::zero();
        for part in s.split(',') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected index=value in {part:?}")))?;
            let c = parse_q(v).ok_or_else(|| Error::Parse(format!("bad rational {v:?}")))?;
            w.add_coeff(k.trim().parse()?, &c);
        }
        Ok(w)
    }
}

impl Serialize for HighestWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> = self
            .coeffs
            .iter()
            .map(|(i, c)| (i.to_string(), fmt_q(c)))
            .collect();
        m.serialize(s)
    }
}

/// Affine classical weight `t·τ + λ` with `τ = ½(Σε_i − Σδ_j)` kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineClassical {
    #[serde(with = "crate::rational::serde_q")]
    pub tau: Q,
    pub linear: HighestWeight,
}

impl fmt::Display for AffineClassical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*tau + {}", fmt_q(&self.tau), self.linear)
    }
}

/// Integral root `Σ c_i ε_i + Σ d_j δ_j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    coeffs: BTreeMap<ClassIdx, i64>,
}

impl Root {
    pub fn from_pairs<I: IntoIterator<Item = (ClassIdx, i64)>>(pairs: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, c) in pairs {
            *coeffs.entry(i).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Root { coeffs }
    }

    pub fn eps(i: u32) -> Self {
        Self::from_pairs([(ClassIdx::Eps(i), 1)])
    }

    pub fn delta(j: u32) -> Self {
        Self::from_pairs([(ClassIdx::Delta(j), 1)])
    }

    pub fn coeffs(&self) -> &BTreeMap<ClassIdx, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, i: ClassIdx) -> i64 {
        self.coeffs.get(&i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Root) -> Root {
        Root::from_pairs(
            self.coeffs
                .iter()
                .chain(&other.coeffs)
                .map(|(i, c)| (*i, *c)),
        )
    }

    pub fn neg(&self) -> Root {
        Root::from_pairs(self.coeffs.iter().map(|(i, c)| (*i, -c)))
    }

    pub fn sub(&self, other: &Root) -> Root {
        self.add(&other.neg())
    }

    pub fn form(&self, other: &Root) -> i64 {
        self.coeffs
            .iter()
            .map(|(i, c)| c * other.coeff(*i) * form_sign(*i))
            .sum()
    }

    pub fn to_weight(&self) -> HighestWeight {
        HighestWeight::from_pairs(self.coeffs.iter().map(|(i, c)| (*i, q(*c))))
    }

    fn touches(&self, pred: impl Fn(&ClassIdx) -> bool) -> bool {
        self.coeffs.keys().any(pred)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (n, (i, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if *c < 0 {
                out.push('-');
            } else if n > 0 {
                out.push('+');
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&i.to_string());
        }
        write!(f, "{out}")
    }
}

/// Parses `e1-d2`, `-2d1`, `e1+e2`.
impl FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad root {s:?}"));
        let mut pairs = Vec::new();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let mut sign = 1;
            if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            }
            let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let mag: i64 = if digits == 0 {
                1
            } else {
                rest[..digits].parse().map_err(|_| bad())?
            };
            rest = &rest[digits..];
            let end = rest
                .char_indices()
                .skip(1)
                .find(|(_, c)| !c.is_ascii_digit())
                .map(|(k, _)| k)
                .unwrap_or(rest.len());
            let idx: ClassIdx = rest[..end].parse().map_err(|_| bad())?;
            pairs.push((idx, sign * mag));
            rest = &rest[end..];
        }
        Ok(Root::from_pairs(pairs))
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RootFamily {
    /// `osp(2m|2n)`
    OspEven,
    /// `osp(2m+1|2n)`
    OspOdd,
    Gl,
    Sl,
}

/// `rank_eps` counts the `ε` coordinates, `rank_delta` the `δ` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootSystem {
    pub family: RootFamily,
    pub rank_eps: u32,
    pub rank_delta: u32,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n) = (self.rank_eps, self.rank_delta);
        match self.family {
            RootFamily::OspEven => write!(f, "osp({}|{})", 2 * m, 2 * n),
            RootFamily::OspOdd => write!(f, "osp({}|{})", 2 * m + 1, 2 * n),
            RootFamily::Gl => write!(f, "gl({m}|{n})"),
            RootFamily::Sl => write!(f, "sl({m}|{n})"),
        }
    }
}

impl RootSystem {
    pub fn new(family: RootFamily, rank_eps: u32, rank_delta: u32) -> Self {
        RootSystem {
            family,
            rank_eps,
            rank_delta,
        }
    }

    /// All roots, sorted.
    pub fn roots(&self) -> Vec<Root> {
        use ClassIdx::{Delta, Eps};
        let (m, n) = (self.rank_eps, self.rank_delta);
        let mut out = Vec::new();
        let signs = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
        match self.family {
            RootFamily::OspEven | RootFamily::OspOdd => {
                for i in 1..=m {
                    for k in i + 1..=m {
                        for (s, t) in signs {
                            out.push(Root::from_pairs([(Eps(i), s), (Eps(k), t)]));
                        }
                    }
                }
                for j in 1..=n {
                    for l in j + 1..=n {
                        for (s, t) in signs {
                            out.push(Root::from_pairs([(Delta(j), s), (Delta(l), t)]));
                        }
                    }
                    out.push(Root::from_pairs([(Delta(j), 2)]));
                    out.push(Root::from_pairs([(Delta(j), -2)]));
                }
                for i in 1..=m {
                    for j in 1..=n {
                        for (s, t) in signs {
                            out.push(Root::from_pairs([(Eps(i), s), (Delta(j), t)]));
                        }
                    }
                }
                if self.family == RootFamily::OspOdd {
                    for i in 1..=m {
                        out.push(Root::eps(i));
                        out.push(Root::eps(i).neg());
                    }
                    for j in 1..=n {
                        out.push(Root::delta(j));
                        out.push(Root::delta(j).neg());
                    }
                }
            }
            RootFamily::Gl | RootFamily::Sl => {
                for i in 1..=m {
                    for k in 1..=m {
                        if i != k {
                            out.push(Root::eps(i).sub(&Root::eps(k)));
                        }
                    }
                }
                for j in 1..=n {
                    for l in 1..=n {
                        if j != l {
                            out.push(Root::delta(j).sub(&Root::delta(l)));
                        }
                    }
                }
                for i in 1..=m {
                    for j in 1..=n {
                        out.push(Root::eps(i).sub(&Root::delta(j)));
                        out.push(Root::delta(j).sub(&Root::eps(i)));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.roots().binary_search(r).is_ok()
    }

    /// Odd iff the root mixes `ε` and `δ`, or is `±δ_j` in `osp(2m+1|2n)`.
    pub fn is_odd(&self, r: &Root) -> bool {
        let has_eps = r.touches(|i| matches!(i, ClassIdx::Eps(_)));
        let has_delta = r.touches(|i| matches!(i, ClassIdx::Delta(_)));
        let short_delta = self.family == RootFamily::OspOdd
            && r.coeffs.len() == 1
            && has_delta
            && r.coeffs.values().all(|c| c.abs() == 1);
        (has_eps && has_delta) || short_delta
    }

    pub fn is_isotropic(&self, r: &Root) -> bool {
        r.form(r) == 0
    }

    pub fn check_root(&self, r: &Root) -> Result<()> {
        if self.is_root(r) {
            Ok(())
        } else {
            Err(Error::NotARoot(r.to_string(), self.to_string()))
        }
    }

    pub fn is_finite_sum(&self, w: &HighestWeight) -> bool {
        w.coeffs.keys().all(|i| match i {
            ClassIdx::Eps(k) => *k <= self.rank_eps,
            ClassIdx::Delta(k) => *k <= self.rank_delta,
        })
    }
}

/// The homomorphisms `Φ, Ψ, Θ, Υ±` into Weyl or Clifford superalgebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Hom {
    /// `U(osp(2b|2a)) → D(a|b)`
    Phi,
    /// `U(osp(2a|2b)) → Cl(a|b)`
    Psi,
    /// `U(osp(2a+1|2b)) → Cl(a|b)`
    Theta,
    /// `U(sl(a|b)) → D(a|b)_0`
    UpsilonPlus,
    /// `U(sl(a|b)) → D(b|a)_0`
    UpsilonMinus,
}

impl Hom {
    pub const ALL: [Hom; 5] = [
        Hom::Phi,
        Hom::Psi,
        Hom::Theta,
        Hom::UpsilonPlus,
        Hom::UpsilonMinus,
    ];

    /// Source root system for the ranks `(a, b)` of the homomorphism.
    pub fn source(self, a: u32, b: u32) -> RootSystem {
        match self {
            Hom::Phi => RootSystem::new(RootFamily::OspEven, b, a),
            Hom::Psi => RootSystem::new(RootFamily::OspEven, a, b),
            Hom::Theta => RootSystem::new(RootFamily::OspOdd, a, b),
            Hom::UpsilonPlus | Hom::UpsilonMinus => RootSystem::new(RootFamily::Sl, a, b),
        }
    }

    /// Target algebra signature for the ranks `(a, b)`.
    pub fn target(self, a: u32, b: u32) -> crate::weights::Signature {
        use crate::weights::Signature;
        match self {
            Hom::Phi | Hom::UpsilonPlus => Signature::weyl(a, b),
            Hom::Psi | Hom::Theta => Signature::clifford(a, b),
            Hom::UpsilonMinus => Signature::weyl(b, a),
        }
    }

    /// Linear part of the weight correspondence on a single `ζ_i` of the target.
    pub fn zeta_image(self, i: i32) -> (ClassIdx, i64) {
        let k = i.unsigned_abs();
        match (self, i > 0) {
            (Hom::Psi | Hom::Theta, true) => (ClassIdx::Eps(k), -1),
            (Hom::Psi | Hom::Theta, false) => (ClassIdx::Delta(k), -1),
            (Hom::Phi, true) => (ClassIdx::Delta(k), -1),
            (Hom::Phi, false) => (ClassIdx::Eps(k), -1),
            (Hom::UpsilonPlus, true) => (ClassIdx::Eps(k), 1),
            (Hom::UpsilonPlus, false) => (ClassIdx::Delta(k), 1),
            (Hom::UpsilonMinus, true) => (ClassIdx::Delta(k), 1),
            (Hom::UpsilonMinus, false) => (ClassIdx::Eps(k), 1),
        }
    }

    /// Coefficient of `τ` in `f(0)`: affine for `Φ, Ψ, Θ`, linear for `Υ±`.
    pub fn tau_offset(self) -> Q {
        match self {
            Hom::Phi | Hom::Psi | Hom::Theta => q(1),
            Hom::UpsilonPlus | Hom::UpsilonMinus => Q::zero(),
        }
    }
}

impl fmt::Display for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Hom::Phi => "phi",
            Hom::Psi => "psi",
            Hom::Theta => "theta",
            Hom::UpsilonPlus => "upsilon+",
            Hom::UpsilonMinus => "upsilon-",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Hom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "phi" => Hom::Phi,
            "psi" => Hom::Psi,
            "theta" => Hom::Theta,
            "upsilon+" | "upsilon-plus" => Hom::UpsilonPlus,
            "upsilon-" | "upsilon-minus" => Hom::UpsilonMinus,
            _ => return Err(Error::Parse(format!("unknown homomorphism {s:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        // osp(4|4): even 4+4+4 (ε pair, δ pair, ±2δ), odd 16
        assert_eq!(RootSystem::new(RootFamily::OspEven, 2, 2).roots().len(), 28);
        assert_eq!(RootSystem::new(RootFamily::OspOdd, 2, 2).roots().len(), 36);
        assert_eq!(RootSystem::new(RootFamily::Sl, 3, 3).roots().len(), 30);
    }

    #[test]
    fn parity_and_isotropy() {
        let rs = RootSystem::new(RootFamily::OspOdd, 2, 2);
        let a: Root = "e1-d2".parse().unwrap();
        assert!(rs.is_odd(&a) && rs.is_isotropic(&a));
        let d: Root = "d1".parse().unwrap();
        assert!(rs.is_odd(&d) && !rs.is_isotropic(&d));
        let e: Root = "-e2".parse().unwrap();
        assert!(!rs.is_odd(&e));
        assert!(!rs.is_odd(&"2d1".parse().unwrap()));
    }

    #[test]
    fn root_text() {
        for s in ["e1-d2", "-2d1", "e1+e2", "-e1-d1", "d3"] {
            let r: Root = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        let w: HighestWeight = "e1=1/2,d1=-3/2".parse().unwrap();
        assert_eq!(w.to_string(), "e1=1/2,d1=-3/2");
    }
}
