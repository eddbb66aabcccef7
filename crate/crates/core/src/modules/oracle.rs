//! Brute-force weight-space dimensions of `X(μ) = P(μ)/N` from truncated
//! linear algebra in `A`.

use std::collections::BTreeMap;

use num::Zero;

use crate::algebra::{monomials_up_to, AlgebraElement, Monomial};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::rational::{q, Q};
use crate::weights::{is_in_h_vee, RootVector, Signature, Weight};

/// Largest degree cap accepted by [`induced_oracle`].
pub const MAX_ORACLE_CAP: usize = 8;

fn as_row(e: &AlgebraElement) -> BTreeMap<Monomial, Q> {
    e.terms()
        .iter()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// Dimensions of the weight spaces of `X(μ)` at `μ + α` for `|α|_1 < cap`.
///
/// `P(μ)_{μ+α}` is spanned by monomials of adjoint weight `α` modulo the left
/// ideal generated by `u_i − μ_i`. A vector survives in `X(μ)` iff some
/// monomial of weight `−α` carries it back to a nonzero multiple of `1`, so
/// the dimension is the rank of that pairing.
pub fn induced_oracle(mu: &Weight, sig: &Signature, cap: usize) -> Result<BTreeMap<Weight, usize>> {
    if cap > MAX_ORACLE_CAP {
        return Err(Error::CapExceeded(cap, MAX_ORACLE_CAP));
    }
    let indices = sig.indices()?;
    if !is_in_h_vee(mu, sig) {
        return Err(Error::InvalidWeight(sig.to_string()));
    }
    let mut buckets: BTreeMap<RootVector, Vec<Monomial>> = BTreeMap::new();
    for m in monomials_up_to(sig, 2 * cap as u32)? {
        buckets
            .entry(m.gradings(sig).adjoint_weight)
            .or_default()
            .push(m);
    }
    let elem = |m: &Monomial| AlgebraElement::from_terms(*sig, [(m.clone(), q(1))]);

    // relations m·(u_i − μ_i) in weight zero
    let mut ideal = Echelon::new();
    let weight_zero = buckets
        .get(&RootVector::zero())
        .cloned()
        .unwrap_or_default();
    for m in weight_zero
        .iter()
        .filter(|m| m.total_degree() + 2 <= 2 * cap as u32)
    {
        let e = elem(m)?;
        for &i in &indices {
            let u = AlgebraElement::x(*sig, i)?.multiply(&AlgebraElement::d(*sig, i)?)?;
            let rel = e.multiply(&u)?.sub(&e.scale(&mu.get(i)))?;
            ideal.insert(as_row(&rel));
        }
    }
    let one = Monomial::one();
    let evaluate = |e: &AlgebraElement| -> Result<Q> {
        let r = ideal.reduce(as_row(e));
        if r.keys().any(|m| m != &one) {
            return Err(Error::Multiplicity(
                r.len(),
                format!("{mu} (weight-zero quotient)"),
            ));
        }
        Ok(r.get(&one).cloned().unwrap_or_else(Q::zero))
    };
    if evaluate(&AlgebraElement::one(*sig))?.is_zero() {
        return Err(Error::InvalidWeight(sig.to_string()));
    }

    let mut out = BTreeMap::new();
    let short = |m: &&Monomial| m.total_degree() as usize <= cap;
    for (alpha, cols) in &buckets {
        if alpha.l1() as usize >= cap {
            continue;
        }
        let lam = mu.add_root(alpha);
        if !is_in_h_vee(&lam, sig) {
            continue;
        }
        let rows = buckets
            .get(&alpha.neg())
            .map(Vec::as_slice)
            .unwrap_or_default();
        let mut pairing = Echelon::new();
        for m in cols.iter().filter(short) {
            let em = elem(m)?;
            let mut column = BTreeMap::new();
            for (k, a) in rows.iter().filter(short).enumerate() {
                let c = evaluate(&elem(a)?.multiply(&em)?)?;
                if !c.is_zero() {
                    column.insert(k, c);
                }
            }
            pairing.insert(column);
        }
        let dim = pairing.rank();
        if dim > 1 {
            return Err(Error::Multiplicity(dim, lam.to_string()));
        }
        out.insert(lam, dim);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_line() {
        let sig = Signature::weyl(1, 0);
        let dims = induced_oracle(&Weight::from_ints([(1, -1)]), &sig, 5).unwrap();
        for (w, d) in dims {
            let expect = usize::from(w.get(1) < q(0));
            assert_eq!(d, expect, "{w}");
        }
    }

    #[test]
    fn grassmann_pair() {
        let sig = Signature::weyl(0, 1);
        let dims = induced_oracle(&Weight::from_ints([(-1, 1)]), &sig, 3).unwrap();
        assert_eq!(dims.get(&Weight::from_ints([(-1, 1)])), Some(&1));
        assert_eq!(dims.get(&Weight::zero()), Some(&1));
    }

    #[test]
    fn cap_is_bounded() {
        let sig = Signature::weyl(1, 0);
        assert!(matches!(
            induced_oracle(&Weight::zero(), &sig, 99),
            Err(Error::CapExceeded(..))
        ));
    }
}
