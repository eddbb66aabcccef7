//! Generator tables of `Φ, Ψ, Θ, Υ±` and their machine verification.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use crate::algebra::{
    monomials_up_to, normal_form, super_bracket, AlgebraElement, Generator, Monomial, Subalgebra,
};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::par::Exec;
use crate::rational::{q, Q};
use crate::roots::{ClassIdx, Hom, Root, RootSystem};
use crate::weights::{RootVector, Signature};

/// Images of the Chevalley generators `e_α` under one homomorphism.
#[derive(Debug, Clone)]
pub struct GeneratorTable {
    pub hom: Hom,
    pub a: u32,
    pub b: u32,
    /// Scalar per root; missing roots use 1.
    pub normalization: BTreeMap<Root, Q>,
    overrides: BTreeMap<Root, Vec<Generator>>,
}

fn x(i: i32) -> Generator {
    Generator::raising(i)
}

fn d(i: i32) -> Generator {
    Generator::lowering(i)
}

/// Signed coordinates of a root as `(ε-part, δ-part)` lists of `(index, coeff)`.
fn split_root(r: &Root) -> (Vec<(i32, i64)>, Vec<(i32, i64)>) {
    let mut e = Vec::new();
    let mut dl = Vec::new();
    for (k, c) in r.coeffs() {
        match k {
            ClassIdx::Eps(i) => e.push((*i as i32, *c)),
            ClassIdx::Delta(j) => dl.push((*j as i32, *c)),
        }
    }
    (e, dl)
}

impl GeneratorTable {
    pub fn new(hom: Hom, a: u32, b: u32) -> Self {
        GeneratorTable {
            hom,
            a,
            b,
            normalization: BTreeMap::new(),
            overrides: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> RootSystem {
        self.hom.source(self.a, self.b)
    }

    pub fn target(&self) -> Signature {
        self.hom.target(self.a, self.b)
    }

    /// A copy whose image of `root` has the sign of one generator index flipped.
    pub fn with_index_flip(&self, root: &Root) -> Result<Self> {
        let mut word = self.tabulated(root)?;
        let sig = self.target();
        let slot = word
            .iter()
            .position(|g| sig.contains(-g.index))
            .ok_or_else(|| Error::NotARoot(root.to_string(), "flippable table entry".into()))?;
        word[slot].index = -word[slot].index;
        let mut t = self.clone();
        t.overrides.insert(root.clone(), word);
        Ok(t)
    }

    /// The tabulated word for `e_α` before normalization.
    pub fn tabulated(&self, alpha: &Root) -> Result<Vec<Generator>> {
        self.source().check_root(alpha)?;
        if let Some(w) = self.overrides.get(alpha) {
            return Ok(w.clone());
        }
        let (e, dl) = split_root(alpha);
        let word = match self.hom {
            Hom::Phi => phi_word(&e, &dl),
            Hom::Psi | Hom::Theta => psi_word(&e, &dl),
            Hom::UpsilonPlus => upsilon_word(&e, &dl, 1),
            Hom::UpsilonMinus => upsilon_word(&e, &dl, -1),
        };
        word.ok_or_else(|| Error::NotARoot(alpha.to_string(), self.source().to_string()))
    }

    pub fn image(&self, alpha: &Root) -> Result<AlgebraElement> {
        let word = self.tabulated(alpha)?;
        let s = self
            .normalization
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| q(1));
        normal_form(&word, s, &self.target())
    }

    /// `[e_α, e_{−α}]`, the coroot image in `H_A`.
    pub fn cartan_image(&self, alpha: &Root) -> Result<AlgebraElement> {
        super_bracket(&self.image(alpha)?, &self.image(&alpha.neg())?)
    }
}

fn phi_word(e: &[(i32, i64)], dl: &[(i32, i64)]) -> Option<Vec<Generator>> {
    Some(match (e, dl) {
        ([(k, 1), (l, -1)], []) => vec![x(-l), d(-k)],
        ([(k, -1), (l, 1)], []) => vec![x(-k), d(-l)],
        ([(k, -1), (l, -1)], []) => vec![x(-k), x(-l)],
        ([(k, 1), (l, 1)], []) => vec![d(-k), d(-l)],
        ([], [(i, -1), (j, -1)]) => vec![x(*i), x(*j)],
        ([], [(i, 1), (j, 1)]) => vec![d(*i), d(*j)],
        ([], [(i, 1), (j, -1)]) => vec![x(*j), d(*i)],
        ([], [(i, -1), (j, 1)]) => vec![x(*i), d(*j)],
        ([], [(i, -2)]) => vec![x(*i), x(*i)],
        ([], [(i, 2)]) => vec![d(*i), d(*i)],
        ([(k, -1)], [(i, 1)]) => vec![x(-k), d(*i)],
        ([(k, 1)], [(i, -1)]) => vec![x(*i), d(-k)],
        ([(k, -1)], [(i, -1)]) => vec![x(-k), x(*i)],
        ([(k, 1)], [(i, 1)]) => vec![d(-k), d(*i)],
        _ => return None,
    })
}

/// `Ψ` table, with the linear `Θ` entries for `±ε_k`, `±δ_i`.
fn psi_word(e: &[(i32, i64)], dl: &[(i32, i64)]) -> Option<Vec<Generator>> {
    Some(match (e, dl) {
        ([(k, 1), (l, -1)], []) => vec![x(*l), d(*k)],
        ([(k, -1), (l, 1)], []) => vec![x(*k), d(*l)],
        ([(k, -1), (l, -1)], []) => vec![x(*k), x(*l)],
        ([(k, 1), (l, 1)], []) => vec![d(*k), d(*l)],
        ([], [(i, -1), (j, -1)]) => vec![x(-i), x(-j)],
        ([], [(i, 1), (j, 1)]) => vec![d(-i), d(-j)],
        ([], [(i, 1), (j, -1)]) => vec![x(-j), d(-i)],
        ([], [(i, -1), (j, 1)]) => vec![x(-i), d(-j)],
        ([], [(i, -2)]) => vec![x(-i), x(-i)],
        ([], [(i, 2)]) => vec![d(-i), d(-i)],
        ([(k, -1)], [(i, 1)]) => vec![x(*k), d(-i)],
        ([(k, 1)], [(i, -1)]) => vec![d(*k), x(-i)],
        ([(k, -1)], [(i, -1)]) => vec![x(*k), x(-i)],
        ([(k, 1)], [(i, 1)]) => vec![d(*k), d(-i)],
        ([(k, 1)], []) => vec![d(*k)],
        ([(k, -1)], []) => vec![x(*k)],
        ([], [(i, -1)]) => vec![x(-i)],
        ([], [(i, 1)]) => vec![d(-i)],
        _ => return None,
    })
}

/// `Υ+` puts `ε` on positive indices and `δ` on negative ones; `Υ−` swaps them.
fn upsilon_word(e: &[(i32, i64)], dl: &[(i32, i64)], side: i32) -> Option<Vec<Generator>> {
    let ep = |i: i32| side * i;
    let dp = |j: i32| -side * j;
    Some(match (e, dl) {
        ([(i, 1), (j, -1)], []) => vec![x(ep(*i)), d(ep(*j))],
        ([(i, -1), (j, 1)], []) => vec![x(ep(*j)), d(ep(*i))],
        ([], [(i, 1), (j, -1)]) => vec![x(dp(*i)), d(dp(*j))],
        ([], [(i, -1), (j, 1)]) => vec![x(dp(*j)), d(dp(*i))],
        ([(i, 1)], [(j, -1)]) => vec![x(ep(*i)), d(dp(*j))],
        ([(i, -1)], [(j, 1)]) => vec![x(dp(*j)), d(ep(*i))],
        _ => return None,
    })
}

/// `Some(c)` with `a = c·b`; a zero `b` only matches a zero `a`.
pub fn proportional(a: &AlgebraElement, b: &AlgebraElement) -> Option<Q> {
    if b.is_zero() {
        return a.is_zero().then(Q::zero);
    }
    let (m, cb) = b.terms().iter().next()?;
    let c = a.coeff(m) / cb;
    (a.sub(&b.scale(&c)).ok()?.is_zero()).then_some(c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub pair: Vec<Root>,
    pub status: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub pairs_checked: usize,
    pub failures: Vec<PairFailure>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn fail(pair: Vec<Root>, status: &str, witness: &AlgebraElement) -> PairFailure {
    PairFailure {
        pair,
        status: status.to_string(),
        witness: witness.to_string(),
    }
}

/// Image of an adjoint weight under the linear part of the weight correspondence.
fn classical_of(hom: Hom, w: &RootVector) -> Root {
    Root::from_pairs(w.entries().iter().map(|(i, c)| {
        let (idx, s) = hom.zeta_image(*i);
        (idx, c * s)
    }))
}

/// Whether a Cartan image is `Σ c_i u_i` with zero supertrace (`Υ±` only).
fn in_sl_cartan(table: &GeneratorTable, h: &AlgebraElement) -> bool {
    let eps_side_positive = table.hom == Hom::UpsilonPlus;
    let mut str_sum = Q::zero();
    for (m, c) in h.terms() {
        let [(i, 1)] = m.raising.as_slice() else {
            return false;
        };
        if m.lowering.as_slice() != [(*i, 1)] {
            return false;
        }
        if (*i > 0) == eps_side_positive {
            str_sum += c;
        } else {
            str_sum -= c;
        }
    }
    str_sum.is_zero()
}

/// Checks closure of brackets on all ordered root pairs, adjoint weights,
/// subalgebra placement and Cartan eigenvalue consistency.
pub fn verify_homomorphism(table: &GeneratorTable, exec: Exec) -> HomReport {
    let rs = table.source();
    let roots = rs.roots();
    let images: BTreeMap<Root, AlgebraElement> = roots
        .iter()
        .map(|r| {
            (
                r.clone(),
                table.image(r).expect("root of the source system"),
            )
        })
        .collect();
    let failures = exec.flat_map(&roots, |alpha| {
        let mut out = Vec::new();
        let ia = &images[alpha];
        // adjoint weights and placement
        for m in ia.terms().keys() {
            let g = m.gradings(&ia.signature());
            if &classical_of(table.hom, &g.adjoint_weight) != alpha {
                out.push(fail(
                    vec![alpha.clone()],
                    "adjoint weight does not map to the root",
                    ia,
                ));
            }
        }
        let placed = match table.hom {
            Hom::Phi | Hom::Psi => ia.is_member(Subalgebra::AEV),
            Hom::Theta => true,
            Hom::UpsilonPlus | Hom::UpsilonMinus => ia.is_member(Subalgebra::A0),
        };
        if !placed || ia.is_zero() {
            out.push(fail(
                vec![alpha.clone()],
                "image is zero or outside its subalgebra",
                ia,
            ));
        }
        let h = match super_bracket(ia, &images[&alpha.neg()]) {
            Ok(h) => h,
            Err(_) => {
                out.push(fail(
                    vec![alpha.clone(), alpha.neg()],
                    "inhomogeneous image",
                    ia,
                ));
                return out;
            }
        };
        if h.is_zero() || !h.is_member(Subalgebra::HA) {
            out.push(fail(
                vec![alpha.clone(), alpha.neg()],
                "Cartan image zero or outside H_A",
                &h,
            ));
        }
        if matches!(table.hom, Hom::UpsilonPlus | Hom::UpsilonMinus) && !in_sl_cartan(table, &h) {
            out.push(fail(
                vec![alpha.clone(), alpha.neg()],
                "Cartan image outside the sl Cartan span",
                &h,
            ));
        }
        let mut scale: Option<Q> = None;
        for beta in &roots {
            let ib = &images[beta];
            let pair = vec![alpha.clone(), beta.clone()];
            let Ok(br) = super_bracket(ia, ib) else {
                out.push(fail(pair, "inhomogeneous image", ib));
                continue;
            };
            let sum = alpha.add(beta);
            if sum.is_zero() {
                // covered by the Cartan check above
            } else if rs.is_root(&sum) {
                match proportional(&br, &images[&sum]) {
                    Some(c) if !c.is_zero() => {}
                    _ => out.push(fail(
                        pair.clone(),
                        "bracket is not a nonzero multiple of the sum image",
                        &br,
                    )),
                }
            } else if !br.is_zero() {
                out.push(fail(pair.clone(), "bracket should vanish", &br));
            }
            // Cartan eigenvalue on e_β is k_α·(β, α) for one k_α
            let Ok(hb) = super_bracket(&h, ib) else {
                continue;
            };
            let Some(c) = proportional(&hb, ib) else {
                out.push(fail(
                    pair,
                    "e_beta is not an eigenvector of the Cartan image",
                    &hb,
                ));
                continue;
            };
            let pairing = q(beta.form(alpha));
            let consistent = if pairing.is_zero() {
                c.is_zero()
            } else {
                let k = c / &pairing;
                match &scale {
                    Some(s) => *s == k,
                    None => {
                        scale = Some(k);
                        true
                    }
                }
            };
            if !consistent {
                out.push(fail(
                    pair,
                    "Cartan eigenvalue not proportional to the form",
                    &hb,
                ));
            }
        }
        out
    });
    HomReport {
        pairs_checked: roots.len() * roots.len(),
        failures,
    }
}

/// Products of at most `factors` images, plus 1.
fn generated_span(table: &GeneratorTable, factors: u32) -> Result<Echelon<Monomial>> {
    let sig = table.target();
    let roots = table.source().roots();
    let images: Vec<AlgebraElement> = roots
        .iter()
        .map(|r| table.image(r))
        .collect::<Result<_>>()?;
    let mut span = Echelon::new();
    let mut layer = vec![AlgebraElement::one(sig)];
    let to_vec = |e: &AlgebraElement| {
        e.terms()
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    };
    span.insert(to_vec(&layer[0]));
    for _ in 0..factors {
        let mut next = Vec::new();
        for p in &layer {
            for img in &images {
                let prod = p.multiply(img)?;
                if span.insert(to_vec(&prod)) {
                    next.push(prod);
                }
            }
        }
        layer = next;
    }
    Ok(span)
}

fn even_blocks_spanned(span: &Echelon<Monomial>, sig: &Signature, degree: u32) -> Result<bool> {
    Ok(monomials_up_to(sig, degree)?
        .into_iter()
        .filter(|m| m.gradings(sig).z_degree % 2 == 0)
        .all(|m| span.contains(&[(m, q(1))].into_iter().collect())))
}

/// Whether products of images span every even-degree block of total degree
/// `≤ 2·cap`. Products of up to `cap + 1` factors are used: Cartan monomials
/// such as `x[1]*d[1]` only arise from two-factor products.
pub fn even_subalgebra_generation_check(hom: Hom, a: u32, b: u32, cap: u32) -> Result<bool> {
    let table = GeneratorTable::new(hom, a, b);
    let span = generated_span(&table, cap + 1)?;
    even_blocks_spanned(&span, &table.target(), 2 * cap)
}

/// Largest even `d` such that products of at most `factors` images span all
/// even-degree monomials of total degree `≤ d`.
pub fn spanned_degree(hom: Hom, a: u32, b: u32, factors: u32) -> Result<u32> {
    let table = GeneratorTable::new(hom, a, b);
    let span = generated_span(&table, factors)?;
    let sig = table.target();
    let mut d = 0;
    while d < 2 * factors + 2 && even_blocks_spanned(&span, &sig, d + 2)? {
        d += 2;
    }
    Ok(d)
}

/// Dimension of the span of products of at most `factors` images, plus 1.
pub fn span_rank(hom: Hom, a: u32, b: u32, factors: u32) -> Result<usize> {
    Ok(generated_span(&GeneratorTable::new(hom, a, b), factors)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_samples() {
        let phi = GeneratorTable::new(Hom::Phi, 2, 2);
        let r: Root = "-d1-d2".parse().unwrap();
        assert_eq!(phi.image(&r).unwrap().to_string(), "x[1]*x[2]");
        let theta = GeneratorTable::new(Hom::Theta, 2, 2);
        assert_eq!(theta.image(&Root::eps(1)).unwrap().to_string(), "eta[1]");
        let up = GeneratorTable::new(Hom::UpsilonPlus, 3, 3);
        let r: Root = "e1-e2".parse().unwrap();
        assert_eq!(up.image(&r).unwrap().to_string(), "x[1]*d[2]");
        assert_eq!(
            up.cartan_image(&r).unwrap().to_string(),
            "x[1]*d[1] - x[2]*d[2]"
        );
    }

    #[test]
    fn rejects_non_roots() {
        let phi = GeneratorTable::new(Hom::Phi, 2, 2);
        assert!(phi.image(&"e1".parse().unwrap()).is_err());
        assert!(phi.image(&"e3-e1".parse().unwrap()).is_err());
    }

    #[test]
    fn all_tables_verify() {
        for (hom, a, b) in [
            (Hom::Phi, 2, 2),
            (Hom::Phi, 1, 2),
            (Hom::Psi, 2, 2),
            (Hom::Psi, 2, 1),
            (Hom::Theta, 2, 2),
            (Hom::Theta, 1, 1),
            (Hom::UpsilonPlus, 3, 3),
            (Hom::UpsilonPlus, 2, 1),
            (Hom::UpsilonMinus, 3, 3),
            (Hom::UpsilonMinus, 1, 2),
        ] {
            let rep = verify_homomorphism(&GeneratorTable::new(hom, a, b), Exec::default());
            assert!(
                rep.passed(),
                "{hom} {a}|{b}: {:?}",
                &rep.failures[..rep.failures.len().min(3)]
            );
        }
    }

    #[test]
    fn index_flip_is_detected() {
        let t = GeneratorTable::new(Hom::Phi, 2, 2);
        let bad = t.with_index_flip(&"e1-d1".parse().unwrap()).unwrap();
        assert!(!verify_homomorphism(&bad, Exec::Sequential).passed());
    }

    #[test]
    fn even_generation() {
        // x[1]*d[1] only appears once products are allowed
        assert_eq!(spanned_degree(Hom::Phi, 1, 1, 1).unwrap(), 0);
        assert_eq!(spanned_degree(Hom::Phi, 1, 1, 2).unwrap(), 2);
        assert_eq!(spanned_degree(Hom::Phi, 1, 1, 3).unwrap(), 4);
        let ranks: Vec<usize> = (0..3)
            .map(|f| span_rank(Hom::Phi, 1, 1, f).unwrap())
            .collect();
        assert!(ranks[0] < ranks[1] && ranks[1] < ranks[2], "{ranks:?}");
        assert!(even_subalgebra_generation_check(Hom::Phi, 1, 1, 2).unwrap());
    }
}
