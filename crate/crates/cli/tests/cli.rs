use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use superalg_cli::{parse_element, run};
use superalg_core::algebra::normal_form;
use superalg_core::rational::frac;
use superalg_core::{AlgebraElement, Generator, Signature};

fn sa(args: &str) -> Vec<String> {
    std::iter::once("superalg".to_string())
        .chain(args.split_whitespace().map(String::from))
        .collect()
}

/// Golden cases: file stem and argument line.
const GOLDEN: &[(&str, &str)] = &[
    ("nf_relation", "nf d[1]*x[1] --a 1 --json"),
    (
        "mul_clifford",
        "mul xi[1] eta[1] --alg clifford --a 2 --b 1 --json",
    ),
    ("filtration_d3", "filtration 0 --a 3 --box -1:1 --json"),
    ("verify_phi", "verify-hom phi --a 1 --b 1 --json"),
    (
        "reflect_chain",
        "reflect e1=1 --chain e2-d1,e1-d1 --family osp-odd --m 2 --n 2 --json",
    ),
    (
        "mu_a_check",
        "mu-a 1:1,2:1,3:1 --n 3 --check --box -3:3 --json",
    ),
    (
        "decompose_cl2",
        "decompose 0 --alg clifford --a 2 --box -1:1 --json",
    ),
    ("block_count", "block-count 1=1/2 --a 2 --json"),
    ("ideals_osp", "ideals osp_odd --json"),
    ("support_y", "support y 1=1 --a 2 --b 1 --box 0:2 --json"),
];

fn golden_path(stem: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{stem}.json"))
}

#[test]
fn golden_outputs_are_stable() {
    for (stem, args) in GOLDEN {
        let out = run(sa(args));
        assert_eq!(out.code, 0, "{args}: {}", out.stderr);
        let want = std::fs::read_to_string(golden_path(stem))
            .unwrap_or_else(|_| panic!("missing golden {stem}"));
        assert_eq!(out.stdout, want, "{stem}");
        assert_eq!(run(sa(args)).stdout, out.stdout);
    }
}

#[test]
fn exit_codes() {
    let cases = [
        ("nf d[1]*x[1] --a 1", 0),
        ("schur-deg 2,1", 0),
        ("nf d[1] --alg clifford", 1),
        ("nf x[0]", 1),
        ("nf x[1]+", 1),
        ("nf x[3] --a 2", 1),
        ("socle 0 --a inf", 1),
        ("is_faithful 0", 2),
        ("nf", 2),
        ("nf x[1] --a -1", 2),
        ("support x 0 --box 3:1", 2),
        ("reflect e1=1 --chain e1 --family osp-odd --m 2 --n 2", 1),
        ("verify-hom psi --a inf", 1),
        ("--help", 0),
    ];
    for (args, code) in cases {
        let out = run(sa(args));
        assert_eq!(out.code, code, "{args}: {}{}", out.stdout, out.stderr);
        if code == 1 {
            assert!(out.stderr.starts_with("error: "));
        }
    }
    let out = run(sa("nf x[0] --json"));
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "domain");
}

#[test]
fn spec_examples() {
    assert_eq!(
        run(sa("nf --alg weyl --a 1 --b 0 d[1]*x[1]")).stdout,
        "x[1]*d[1] + 1\n"
    );
    assert_eq!(run(sa("schur-deg 2,1")).stdout, "2\n");
    let out = run(sa("verify-hom phi --a 2 --b 2 --json"));
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["failures"], serde_json::json!([]));
}

fn random_element(rng: &mut StdRng, sig: Signature) -> AlgebraElement {
    let coeffs = [
        frac(1, 1),
        frac(-1, 1),
        frac(1, 2),
        frac(-3, 2),
        frac(2, 1),
        frac(5, 3),
    ];
    let mut e = AlgebraElement::zero(sig);
    for _ in 0..rng.random_range(1..=5) {
        let word: Vec<Generator> = (0..rng.random_range(0..=4))
            .map(|_| {
                let i = if rng.random_bool(0.5) {
                    rng.random_range(1..=2)
                } else {
                    -rng.random_range(1..=2)
                };
                if rng.random_bool(0.5) {
                    Generator::raising(i)
                } else {
                    Generator::lowering(i)
                }
            })
            .collect();
        let c = coeffs[rng.random_range(0..coeffs.len())].clone();
        e = e.add(&normal_form(&word, c, &sig).unwrap()).unwrap();
    }
    e
}

#[test]
fn printing_is_a_parse_fixed_point() {
    let mut rng = StdRng::seed_from_u64(7);
    let sigs = [
        Signature::weyl(2, 2),
        Signature::clifford(2, 2),
        Signature::weyl(2, 2).dagger(),
    ];
    for k in 0..200 {
        let sig = sigs[k % sigs.len()];
        let e = random_element(&mut rng, sig);
        let text = e.to_string();
        let back = parse_element(&text, &sig).unwrap().element;
        assert_eq!(back, e, "{text}");
        assert_eq!(back.to_string(), text);
    }
}

/// Core operation reached by each invocation.
const COVERAGE: &[(&str, &str)] = &[
    ("normal_form", "nf x[1]*d[1]"),
    (
        "cl_weyl_iso",
        "nf xi[-1]*eta[-1] --alg clifford --a 0 --b 1 --to iso",
    ),
    ("dagger_transport", "nf x[1] --to dagger"),
    ("multiply", "mul x[1] d[1]"),
    ("super_bracket", "bracket d[1] x[1]"),
    ("subalgebra_member", "member x[1]*d[1] --sub H_A"),
    ("realize", "support x 1=1/2"),
    ("f_correspondence", "support x 1=1 --hom phi"),
    ("verify_module_relations", "support f 0 --verify --box -1:1"),
    ("is_integrable_y", "support y 0 --a 2"),
    (
        "is_faithful_y",
        "support y 0 --a inf --b inf --trunc 1 --box 0:1",
    ),
    ("act", "act x 1=1/2 x[1] --at 1=1/2"),
    ("induced_oracle", "oracle 1=-1 --cap 3"),
    ("condensation_filtration", "filtration 0 --a 2 --box -1:1"),
    ("socle_class", "socle 0 --a 2"),
    ("count_simples_in_block", "block-count 0 --a 2"),
    (
        "restrict_to_sublattice",
        "decompose 0 --alg clifford --a 2 --b 1 --restrict degree --box -1:1",
    ),
    (
        "decompose_even_odd",
        "decompose 0 --alg clifford --a 2 --box -1:1",
    ),
    ("twin_of", "twin 0 --alg clifford --a 2 --side spinor"),
    (
        "reflect_chain",
        "reflect e1=1 --chain e1-d1 --family osp-odd --m 1 --n 1",
    ),
    (
        "classify_bounded_hw",
        "classify-hw e1=1 --family osp-even --m 1 --n 1",
    ),
    ("verify_homomorphism", "verify-hom upsilon+ --a 2 --b 1"),
    (
        "even_subalgebra_generation_check",
        "verify-hom phi --a 1 --b 1 --even-cap 1",
    ),
    ("mu_a", "mu-a 1:0,2:0 --n 2"),
    (
        "schur_power_support_check",
        "mu-a 1:0,2:0 --n 2 --check --box 0:2",
    ),
    ("schur_degree", "schur-deg 3,1"),
    (
        "modules_isomorphic_by_support",
        "iso-support y 1=1/2 y 1=3/2 --a 1",
    ),
    ("parity_ext_obstruction", "iso-support x 0 x 1=1/2 --shift1"),
    ("bounded_primitive_ideal_list", "ideals sl"),
];

#[test]
fn coverage_audit() {
    let commands = [
        "nf",
        "mul",
        "bracket",
        "member",
        "support",
        "act",
        "oracle",
        "filtration",
        "socle",
        "block-count",
        "decompose",
        "twin",
        "reflect",
        "classify-hw",
        "verify-hom",
        "mu-a",
        "schur-deg",
        "iso-support",
        "ideals",
    ];
    let mut ops = std::collections::BTreeSet::new();
    for (op, args) in COVERAGE {
        assert!(ops.insert(*op), "{op} listed twice");
        let out = run(sa(args));
        assert_eq!(out.code, 0, "{op}: {}", out.stderr);
    }
    for c in commands {
        assert!(
            COVERAGE
                .iter()
                .any(|(_, a)| a.split_whitespace().next() == Some(c)),
            "{c} unused"
        );
    }
}
