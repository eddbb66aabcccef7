use proptest::prelude::*;
use superalg_core::classification::{
    classify_bounded_hw, decompose_even_odd, mu_a, odd_reflect, reflect_chain,
    schur_power_support_check, schur_power_weights, twin_of, IdealClass, TwinSide, Typicality,
};
use superalg_core::modules::{
    realize, restrict_to_sublattice, ClassDescriptor, Functional, ModuleKind, WeightBox,
};
use superalg_core::rational::{frac, q};
use superalg_core::roots::{ClassIdx, HighestWeight, Root, RootFamily, RootSystem};
use superalg_core::weights::is_in_h_vee;
use superalg_core::{Parity, Signature, Weight};

fn spinor_oscillator(rs: &RootSystem) -> HighestWeight {
    HighestWeight::from_pairs(
        (1..=rs.rank_eps)
            .map(|i| (ClassIdx::Eps(i), frac(1, 2)))
            .chain((1..=rs.rank_delta).map(|j| (ClassIdx::Delta(j), frac(-1, 2)))),
    )
}

#[test]
fn atypical_chains() {
    for family in [RootFamily::OspOdd, RootFamily::OspEven] {
        let rs = RootSystem::new(family, 2, 2);
        let so = spinor_oscillator(&rs);
        let chain: Vec<Root> = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| Root::eps(i).sub(&Root::delta(j))))
            .collect();
        let trace = reflect_chain(&so, &chain, &rs).unwrap();
        assert!(trace.iter().all(|s| !s.typical && s.lambda == so));

        let down: Vec<Root> = (1..=2)
            .rev()
            .map(|i| Root::eps(i).sub(&Root::delta(1)))
            .collect();
        let trace = reflect_chain(&HighestWeight::unit(ClassIdx::Eps(1)), &down, &rs).unwrap();
        assert_eq!(trace.iter().filter(|s| s.typical).count(), 1);
        assert_eq!(
            trace.last().unwrap().lambda,
            HighestWeight::unit(ClassIdx::Delta(1))
        );

        let c = |w: &HighestWeight| classify_bounded_hw(w, &rs).unwrap().class;
        assert_eq!(c(&HighestWeight::zero()), IdealClass::Augmentation);
        assert_eq!(
            c(&HighestWeight::unit(ClassIdx::Delta(2))),
            IdealClass::DefiningAnnihilator
        );
        assert_eq!(c(&so), IdealClass::SpinorOscillatorKernel);
    }
}

#[test]
fn grassmann_halves_are_products() {
    for a in [2, 3] {
        let sig = Signature::clifford(a, 2);
        let m = realize(ModuleKind::Defining, &Weight::zero(), &sig, None).unwrap();
        let odd_rep = Weight::from_ints([(1, 1)]);
        for rep in [Weight::zero(), odd_rep] {
            let half = restrict_to_sublattice(&m, Functional::Degree, &rep).unwrap();
            let d = decompose_even_odd(&half, WeightBox::radius(3)).unwrap();
            for c in [d.s_class(), d.s_twin_class()].into_iter().flatten() {
                let t = twin_of(c, TwinSide::Spinor).unwrap();
                assert_eq!(&twin_of(&t, TwinSide::Spinor).unwrap(), c);
            }
            for c in [d.t_class(), d.t_twin_class()].into_iter().flatten() {
                let t = twin_of(c, TwinSide::Oscillator).unwrap();
                assert_eq!(&twin_of(&t, TwinSide::Oscillator).unwrap(), c);
            }
        }
    }
}

#[test]
fn schur_limits() {
    let bx = WeightBox::radius(3);
    assert!(schur_power_support_check(&[(1, 0), (2, 0), (3, 0)], 3, bx).unwrap());
    assert!(schur_power_support_check(&[(1, 1), (2, 1), (3, 1)], 3, bx).unwrap());
    // a stalled sequence with b = 1 puts −1 on a δ coordinate
    let stalled = mu_a(&[(1, 1), (1, 1)], 2).unwrap();
    assert_eq!(stalled.get(2), q(-1));
    assert!(!schur_power_support_check(&[(1, 1), (1, 1)], 2, bx).unwrap());
    assert_eq!(schur_power_weights(2, 1).len(), 2);
}

fn pair_sequence() -> impl Strategy<Value = Vec<(u32, u8)>> {
    prop::collection::vec((0u32..=2, 0u8..=1), 1..=3).prop_map(|steps| {
        let mut a = 0;
        steps
            .into_iter()
            .map(|(inc, b)| {
                // step at least b so the δ coordinate stays ≥ 0
                a += inc.max(b as u32).max(1);
                (a, b)
            })
            .collect()
    })
}

fn osp_root(rs: RootSystem) -> impl Strategy<Value = Root> {
    let roots: Vec<Root> = rs
        .roots()
        .into_iter()
        .filter(|r| rs.is_odd(r) && rs.is_isotropic(r))
        .collect();
    prop::sample::select(roots)
}

proptest! {
    #[test]
    fn reflection_moves_by_zero_or_minus_alpha(
        alpha in osp_root(RootSystem::new(RootFamily::OspOdd, 2, 2)),
        cs in prop::collection::vec(-4i64..=4, 4),
    ) {
        let rs = RootSystem::new(RootFamily::OspOdd, 2, 2);
        let lam = HighestWeight::from_pairs([
            (ClassIdx::Eps(1), frac(cs[0], 2)), (ClassIdx::Eps(2), frac(cs[1], 2)),
            (ClassIdx::Delta(1), frac(cs[2], 2)), (ClassIdx::Delta(2), frac(cs[3], 2)),
        ]);
        let (next, t) = odd_reflect(&lam, &alpha, &rs).unwrap();
        let d = next.sub(&lam);
        match t {
            Typicality::Atypical => prop_assert!(d.is_zero()),
            Typicality::Typical => prop_assert_eq!(d, alpha.to_weight().scale(&q(-1))),
        }
    }

    #[test]
    fn mu_a_is_a_weight(pairs in pair_sequence()) {
        let n = pairs.len() as u32;
        let mu = mu_a(&pairs, n as usize).unwrap();
        prop_assert!(is_in_h_vee(&mu, &Signature::weyl(n, n)));
        prop_assert!((1..=n as i32).all(|i| mu.get(-i) == q(0) || mu.get(-i) == q(1)));
        prop_assert!(schur_power_support_check(&pairs, n, WeightBox::radius(3)).unwrap());
    }

    #[test]
    fn twin_is_an_involution(bits in prop::collection::vec(0i64..=1, 1..=4), odd in any::<bool>()) {
        let sig = Signature::clifford(bits.len() as u32, 0);
        let w = Weight::from_ints(bits.iter().enumerate().map(|(k, &b)| (k as i32 + 1, b)));
        let c = ClassDescriptor::of_weight(&w, &sig).unwrap().with_coset(Functional::Degree, Parity(odd));
        let t = twin_of(&c, TwinSide::Spinor).unwrap();
        prop_assert_ne!(&t, &c);
        prop_assert_eq!(twin_of(&t, TwinSide::Spinor).unwrap(), c);
    }
}
