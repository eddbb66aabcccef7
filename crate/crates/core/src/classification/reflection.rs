//! Odd reflections and the bounded highest-weight patterns for `osp`.

use num::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{frac, q, Q};
use crate::roots::{ClassIdx, HighestWeight, Root, RootFamily, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Typicality {
    Typical,
    Atypical,
}

/// Reflection of `lambda` through the odd isotropic root `alpha`.
pub fn odd_reflect(
    lambda: &HighestWeight,
    alpha: &Root,
    rs: &RootSystem,
) -> Result<(HighestWeight, Typicality)> {
    rs.check_root(alpha)?;
    if !rs.is_odd(alpha) || !rs.is_isotropic(alpha) {
        return Err(Error::NotOddIsotropic(alpha.to_string()));
    }
    if lambda.pair_root(alpha).is_zero() {
        Ok((lambda.clone(), Typicality::Atypical))
    } else {
        Ok((lambda.add_root(alpha, -1), Typicality::Typical))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionStep {
    pub lambda: HighestWeight,
    pub root: Root,
    pub typical: bool,
}

/// Applies the chain in order; the trace lists the weight after each step.
pub fn reflect_chain(
    lambda: &HighestWeight,
    chain: &[Root],
    rs: &RootSystem,
) -> Result<Vec<ReflectionStep>> {
    let mut cur = lambda.clone();
    let mut trace = Vec::with_capacity(chain.len());
    for alpha in chain {
        let (next, t) = odd_reflect(&cur, alpha, rs)?;
        trace.push(ReflectionStep {
            lambda: next.clone(),
            root: alpha.clone(),
            typical: t == Typicality::Typical,
        });
        cur = next;
    }
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdealClass {
    Augmentation,
    DefiningAnnihilator,
    SpinorOscillatorKernel,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundedClassification {
    pub class: IdealClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Matches `lambda` against the terminal shapes: zero, a defining weight
/// `±ε_i`/`±δ_j`, or a spinor-oscillator weight with all `|ε| = ½` and all
/// `|δ| = ½` (one `|δ| = 3/2` allowed for `osp(2m|2n)`).
pub fn classify_bounded_hw(
    lambda: &HighestWeight,
    rs: &RootSystem,
) -> Result<BoundedClassification> {
    if !matches!(rs.family, RootFamily::OspEven | RootFamily::OspOdd) {
        return Err(Error::WrongKind("osp root system".into()));
    }
    if !rs.is_finite_sum(lambda) {
        return Err(Error::InvalidWeight(rs.to_string()));
    }
    let plain = |class| Ok(BoundedClassification { class, note: None });
    if lambda.is_zero() {
        return plain(IdealClass::Augmentation);
    }
    let abs: Vec<(ClassIdx, Q)> = lambda.coeffs().iter().map(|(i, c)| (*i, c.abs())).collect();
    if abs.len() == 1 && abs[0].1 == q(1) {
        return plain(IdealClass::DefiningAnnihilator);
    }
    let half = frac(1, 2);
    let eps_ok = (1..=rs.rank_eps).all(|i| lambda.coeff(ClassIdx::Eps(i)).abs() == half);
    let mut deltas: Vec<Q> = (1..=rs.rank_delta)
        .map(|j| lambda.coeff(ClassIdx::Delta(j)).abs())
        .collect();
    deltas.sort();
    let big = deltas.iter().filter(|d| **d == frac(3, 2)).count();
    let small = deltas.iter().filter(|d| **d == half).count();
    if eps_ok && small + big == deltas.len() {
        match (big, rs.family) {
            (0, _) | (1, RootFamily::OspEven) => return plain(IdealClass::SpinorOscillatorKernel),
            (1, _) => {
                return Ok(BoundedClassification {
                    class: IdealClass::Other,
                    note: Some("near miss: the 3/2 shape needs an even orthogonal part".into()),
                })
            }
            _ => {}
        }
    }
    plain(IdealClass::Other)
}
