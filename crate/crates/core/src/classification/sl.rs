//! Integrable and bounded modules for `sl(∞|∞)` through `Υ±`, support
//! comparisons and the bounded primitive ideal lists.

use std::collections::BTreeSet;

use num::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modules::{realize, ModuleKind, WeightBox};
use crate::rational::{is_int, q, Q};
use crate::weights::{is_in_h_vee, same_block, Rank, Signature, Weight};

/// One entry `(a_n, b_n)` of the sequence defining a Schur-power limit.
pub type SchurPair = (u32, u8);

/// `μ_A` in the `Υ−` convention over `D(n|n)`: `ζ_{−i}` carries `b_i`,
/// `ζ_i` carries `a_i − a_{i−1} − b_i`.
pub fn mu_a(pairs: &[SchurPair], n_max: usize) -> Result<Weight> {
    let mut prev: Option<SchurPair> = None;
    for (k, &(a, b)) in pairs.iter().enumerate() {
        if a == 0 || b > 1 {
            return Err(Error::InvalidPairs(format!(
                "entry {} must have a ≥ 1 and b ∈ {{0,1}}",
                k + 1
            )));
        }
        if let Some((pa, pb)) = prev {
            if a < pa {
                return Err(Error::InvalidPairs(format!(
                    "a decreases at entry {}",
                    k + 1
                )));
            }
            if a == pa && b != pb {
                return Err(Error::InvalidPairs(format!(
                    "b changes while a is constant at entry {}",
                    k + 1
                )));
            }
        }
        prev = Some((a, b));
    }
    let mut mu = Weight::zero();
    let mut a_prev = 0i64;
    for (k, &(a, b)) in pairs.iter().take(n_max).enumerate() {
        let i = k as i32 + 1;
        mu.set(-i, q(b as i64));
        mu.set(i, q(a as i64 - a_prev - b as i64));
        a_prev = a as i64;
    }
    Ok(mu)
}

/// Weights of `Π^b S^a V_n`: degree-`a` monomials in `n` odd variables (exponent
/// at most 1, coordinates `ζ_{−i}`) and `n` even ones (coordinates `ζ_i`).
pub fn schur_power_weights(a: u32, n: u32) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    let mut exps = vec![0u32; 2 * n as usize];
    fn rec(pos: usize, left: u32, n: u32, exps: &mut Vec<u32>, out: &mut BTreeSet<Weight>) {
        if pos == exps.len() {
            if left == 0 {
                let w = Weight::from_ints((0..n as usize).flat_map(|k| {
                    let i = k as i32 + 1;
                    [(-i, exps[k] as i64), (i, exps[n as usize + k] as i64)]
                }));
                out.insert(w);
            }
            return;
        }
        let cap = if pos < n as usize { left.min(1) } else { left };
        for e in 0..=cap {
            exps[pos] = e;
            rec(pos + 1, left - e, n, exps, out);
        }
        exps[pos] = 0;
    }
    rec(0, a, n, &mut exps, &mut out);
    out
}

/// Boxed support of `Y(mu)` over `D(n|n)`.
pub fn y_support(mu: &Weight, n: u32, bx: WeightBox) -> Result<BTreeSet<Weight>> {
    let y = realize(ModuleKind::YModule, mu, &Signature::weyl(n, n), None)?;
    Ok(y.support_box(bx).into_iter().collect())
}

/// Compares the boxed support of `Y(mu)` with the monomial weights of
/// `Π^b S^a V_n`.
pub fn schur_support_matches(mu: &Weight, a: u32, n: u32, bx: WeightBox) -> Result<bool> {
    let inside = |w: &Weight| {
        w.entries()
            .values()
            .all(|v| v >= &q(bx.lo) && v <= &q(bx.hi))
    };
    let expected: BTreeSet<Weight> = schur_power_weights(a, n)
        .into_iter()
        .filter(inside)
        .collect();
    Ok(y_support(mu, n, bx)? == expected)
}

pub fn schur_power_support_check(pairs: &[SchurPair], n: u32, bx: WeightBox) -> Result<bool> {
    let used = pairs
        .get(n as usize - 1)
        .ok_or_else(|| Error::InvalidPairs(format!("need at least {n} entries")))?;
    let mu = mu_a(pairs, n as usize)?;
    schur_support_matches(&mu, used.0, n, bx)
}

fn bosonic_values(mu: &Weight, sig: &Signature) -> Vec<Q> {
    let mut vals: Vec<Q> = sig
        .truncate(mu.window().max(1))
        .indices()
        .unwrap_or_default()
        .into_iter()
        .filter(|&i| !sig.is_fermionic(i))
        .map(|i| mu.get(i))
        .collect();
    for (side, rank) in [(1, sig.pos_rank), (-1, sig.neg_rank)] {
        if rank == Rank::Infinite && !sig.is_fermionic(side) {
            vals.push(mu.tail(side).clone());
        }
    }
    vals
}

/// All bosonic coordinates, tails included, in `ℤ_{≥0}`, or all in `ℤ_{<0}`.
pub fn is_integrable_y(mu: &Weight, sig: &Signature) -> Result<bool> {
    if !is_in_h_vee(mu, sig) {
        return Err(Error::InvalidWeight(sig.to_string()));
    }
    let vals = bosonic_values(mu, sig);
    let nonneg = vals.iter().all(|v| is_int(v) && !v.is_negative());
    let neg = vals.iter().all(|v| is_int(v) && v.is_negative());
    Ok(nonneg || neg)
}

/// How far the other coordinates can move up and down in total.
#[derive(Debug, Clone, Copy, Default)]
struct Capacity {
    up: Option<i64>,
    down: Option<i64>,
}

fn add_cap(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

/// `(can rise without bound, can fall without bound, slack up, slack down)`,
/// `None` slack meaning unbounded.
fn coordinate_room(fermionic: bool, v: &Q) -> (bool, bool, Option<i64>, Option<i64>) {
    if fermionic {
        let one = v == &q(1);
        return (false, false, Some(i64::from(!one)), Some(i64::from(one)));
    }
    if !is_int(v) {
        return (true, true, None, None);
    }
    let n = crate::rational::to_i64(v).expect("integral");
    if n >= 0 {
        (true, false, None, Some(n))
    } else {
        (false, true, Some(-1 - n), None)
    }
}

/// Whether `Y(μ)` over `D(∞|∞)` is faithful: some bosonic coordinate takes
/// infinitely many values on the support. Exact: a coordinate is unbounded
/// upward iff its domain allows it and the remaining coordinates can absorb an
/// unbounded decrease of the total degree, and symmetrically downward.
pub fn is_faithful_y(mu: &Weight, sig: &Signature) -> Result<bool> {
    if sig.pos_rank != Rank::Infinite || sig.neg_rank != Rank::Infinite {
        return Err(Error::FiniteRank);
    }
    if !is_in_h_vee(mu, sig) {
        return Err(Error::InvalidWeight(sig.to_string()));
    }
    let work = sig.truncate(mu.window().max(1));
    let mut coords: Vec<(bool, bool, Option<i64>, Option<i64>)> = work
        .indices()?
        .into_iter()
        .map(|i| coordinate_room(sig.is_fermionic(i), &mu.get(i)))
        .collect();
    // a tail stands for infinitely many copies of one coordinate
    for side in [1, -1] {
        let (u, d, su, sd) = coordinate_room(sig.is_fermionic(side), mu.tail(side));
        let inf = |s: Option<i64>| if s == Some(0) { Some(0) } else { None };
        coords.push((u, d, inf(su), inf(sd)));
        // one extra finite copy so the tail can also play the moving coordinate
        coords.push((u, d, su, sd));
    }
    let total = coords.iter().fold(
        Capacity {
            up: Some(0),
            down: Some(0),
        },
        |c, x| Capacity {
            up: add_cap(c.up, x.2),
            down: add_cap(c.down, x.3),
        },
    );
    let others = |x: &(bool, bool, Option<i64>, Option<i64>)| Capacity {
        up: total.up.map(|t| t - x.2.unwrap_or(0)),
        down: total.down.map(|t| t - x.3.unwrap_or(0)),
    };
    Ok(coords.iter().any(|x| {
        let rest = others(x);
        (x.0 && rest.down.is_none()) || (x.1 && rest.up.is_none())
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IsoVerdict {
    IsomorphicUpToPi,
    NotIsomorphic,
    InconclusiveBox,
}

/// A support listing together with the box it was computed in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxedSupport {
    pub bx: WeightBox,
    pub weights: BTreeSet<Weight>,
}

/// Equal boxed supports decide isomorphism up to `Π` once the box reaches
/// past `0` on both sides, where every class has a window.
pub fn modules_isomorphic_by_support(s1: &BoxedSupport, s2: &BoxedSupport) -> Result<IsoVerdict> {
    if s1.bx != s2.bx {
        return Err(Error::BoxMismatch);
    }
    Ok(if s1.weights != s2.weights {
        IsoVerdict::NotIsomorphic
    } else if s1.bx.lo <= -1 && s1.bx.hi >= 1 {
        IsoVerdict::IsomorphicUpToPi
    } else {
        IsoVerdict::InconclusiveBox
    })
}

/// Extensions between `M(μ)` and `M(ν)` (each possibly parity shifted) are
/// excluded when the weights lie in different blocks or the parity patterns
/// disagree on the common block.
pub fn parity_ext_obstruction(mu: &Weight, shift_mu: bool, nu: &Weight, shift_nu: bool) -> bool {
    !same_block(mu, nu) || shift_mu != shift_nu
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdealFamily {
    SlInf,
    OspInfOdd,
    OspInfEven,
}

impl std::str::FromStr for IdealFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl" | "sl_inf" => Ok(IdealFamily::SlInf),
            "osp_odd" | "osp_inf_odd" => Ok(IdealFamily::OspInfOdd),
            "osp_even" | "osp_inf_even" => Ok(IdealFamily::OspInfEven),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealDescriptor {
    pub name: &'static str,
    pub construction: &'static str,
}

pub fn bounded_primitive_ideal_list(family: IdealFamily) -> Vec<IdealDescriptor> {
    let d = |name, construction| IdealDescriptor { name, construction };
    match family {
        IdealFamily::OspInfOdd => vec![
            d("augmentation", "kernel of the counit"),
            d("Ann V", "annihilator of the natural module"),
            d("ker Theta", "kernel of theta into Cl(inf|inf)"),
        ],
        IdealFamily::OspInfEven => vec![
            d("augmentation", "kernel of the counit"),
            d("Ann V", "annihilator of the natural module"),
            d("ker Psi", "kernel of psi into Cl(inf|inf)"),
        ],
        IdealFamily::SlInf => vec![
            d(
                "Ann S_lambda V",
                "annihilator of a Schur functor of the natural module, one per partition",
            ),
            d(
                "Ann S_lambda V_*",
                "annihilator of a Schur functor of the conatural module, one per partition",
            ),
            d("ker Upsilon+", "kernel of upsilon+ into D(inf|inf)"),
            d("ker Upsilon-", "kernel of upsilon- into D(inf|inf)"),
        ],
    }
}
