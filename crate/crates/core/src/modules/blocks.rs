//! Block sizes and isomorphism tests for simple weight modules.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::weights::{approx_equiv, approx_equiv_zero, is_in_h_vee, Signature, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimpleCount {
    Finite(u64),
    Infinite,
}

impl fmt::Display for SimpleCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleCount::Finite(n) => write!(f, "{n}"),
            SimpleCount::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for SimpleCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SimpleCount::Finite(n) => s.serialize_u64(*n),
            SimpleCount::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Number of `≈`-classes in the block of `gamma`: a factor 2 for each integral
/// bosonic coordinate. At infinite rank without `truncation` an integral
/// bosonic tail gives infinitely many.
pub fn count_simples_in_block(
    gamma: &Weight,
    sig: &Signature,
    truncation: Option<u32>,
) -> Result<SimpleCount> {
    if !is_in_h_vee(gamma, sig) {
        return Err(Error::InvalidWeight(sig.to_string()));
    }
    let work = match truncation {
        Some(n) => sig.truncate(n.max(gamma.window())),
        None if sig.is_finite() => *sig,
        None => {
            for (side, rank) in [(1, sig.pos_rank), (-1, sig.neg_rank)] {
                if rank.finite().is_none()
                    && !sig.is_fermionic(side)
                    && gamma.tail(side).is_integer()
                {
                    return Ok(SimpleCount::Infinite);
                }
            }
            sig.truncate(gamma.window().max(1))
        }
    };
    let integral = work
        .indices()?
        .into_iter()
        .filter(|&i| !work.is_fermionic(i) && gamma.get(i).is_integer())
        .count();
    Ok(SimpleCount::Finite(1u64 << integral))
}

/// `X(μ) ≅ X(ν)`.
pub fn is_isomorphic(mu: &Weight, nu: &Weight) -> bool {
    approx_equiv(mu, nu)
}

/// `Y(μ) ≅ Y(ν)`.
pub fn y_is_isomorphic(mu: &Weight, nu: &Weight) -> bool {
    approx_equiv_zero(mu, nu)
}
