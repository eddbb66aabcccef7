use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use superalg_core::algebra::{cl_weyl_iso, dagger_transport, super_bracket};
use superalg_core::chevalley::{
    even_subalgebra_generation_check, verify_homomorphism, GeneratorTable,
};
use superalg_core::classification::{
    bounded_primitive_ideal_list, classify_bounded_hw, decompose_even_odd, is_faithful_y,
    is_integrable_y, modules_isomorphic_by_support, mu_a, parity_ext_obstruction, reflect_chain,
    schur_degree, schur_power_support_check, twin_of, BoxedSupport, IdealFamily, TwinSide,
};
use superalg_core::modules::{
    count_simples_in_block, induced_oracle, is_isomorphic, realize, restrict_to_sublattice,
    socle_class, verify_module_relations, y_is_isomorphic, ActionGraph, ClassDescriptor,
    ExplicitModule, Functional, ModuleKind, WeightBox, WeightVector,
};
use superalg_core::par::Exec;
use superalg_core::roots::{HighestWeight, Hom, Root, RootFamily, RootSystem};
use superalg_core::weights::f_correspondence;
use superalg_core::{AlgebraKind, Parity, Rank, Signature, Subalgebra, Weight};

use crate::parse::{parse_element, parse_pairs, parse_partition, parse_weight};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    Weyl,
    Clifford,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Transport {
    Iso,
    Dagger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    OspOdd,
    OspEven,
    Sl,
    Gl,
}

impl From<Family> for RootFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::OspOdd => RootFamily::OspOdd,
            Family::OspEven => RootFamily::OspEven,
            Family::Sl => RootFamily::Sl,
            Family::Gl => RootFamily::Gl,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CosetArg {
    Even,
    Odd,
}

#[derive(Debug, Parser)]
#[command(
    name = "superalg",
    about = "Weyl and Clifford superalgebras, their weight modules and osp/sl images"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value = "weyl")]
    alg: Alg,
    /// Rank of the positive side, or `inf`.
    #[arg(long, global = true, default_value = "1")]
    a: Rank,
    /// Rank of the negative side, or `inf`.
    #[arg(long, global = true, default_value = "0")]
    b: Rank,
    /// Use the daggered grading.
    #[arg(long, global = true)]
    dagger: bool,
    /// Coordinate range for enumerations, `lo:hi`.
    #[arg(
        long = "box",
        global = true,
        default_value = "-3:3",
        allow_hyphen_values = true
    )]
    bx: WeightBox,
    /// Replace infinite ranks by this many indices.
    #[arg(long, global = true)]
    trunc: Option<u32>,
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Normal form of an element.
    Nf {
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(long, value_enum)]
        to: Option<Transport>,
    },
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Super bracket of two homogeneous elements.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Membership in a subalgebra: A, A0, AEV, A0BAR, H_A.
    Member {
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value = "A")]
        sub: Subalgebra,
    },
    /// Boxed support of a module, plus Y-module criteria.
    Support {
        kind: ModuleKind,
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        acting: Option<Subalgebra>,
        /// Report the classical weight under this homomorphism.
        #[arg(long)]
        hom: Option<Hom>,
        /// Also run the relation sweep on the box.
        #[arg(long)]
        verify: bool,
    },
    /// Action of an element on the basis vector at a weight.
    Act {
        kind: ModuleKind,
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(allow_hyphen_values = true)]
        element: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Weight-space dimensions of the induced module by linear algebra.
    Oracle {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
    Filtration {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "f")]
        kind: ModuleKind,
    },
    Socle {
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    BlockCount {
        #[arg(allow_hyphen_values = true)]
        mu: String,
    },
    /// Spinor-oscillator split of a Clifford module.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "defining")]
        kind: ModuleKind,
        /// Restrict to the coset of `--rep` under this functional first.
        #[arg(long)]
        restrict: Option<Functional>,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        rep: String,
    },
    /// Twin of the class of a weight with a pinned degree coset.
    Twin {
        #[arg(allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        side: TwinSide,
        #[arg(long, value_enum, default_value = "even")]
        coset: CosetArg,
    },
    /// Odd reflections along a chain of roots.
    Reflect {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        /// Comma-separated odd roots, applied left to right.
        #[arg(long, allow_hyphen_values = true)]
        chain: String,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    ClassifyHw {
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Check a generator table; ranks come from --a and --b.
    VerifyHom {
        hom: Hom,
        /// Corrupt the image of this root first.
        #[arg(long, allow_hyphen_values = true)]
        flip: Option<Root>,
        #[arg(long)]
        even_cap: Option<u32>,
    },
    MuA {
        pairs: String,
        #[arg(long)]
        n: usize,
        /// Compare supports against monomial enumeration.
        #[arg(long)]
        check: bool,
    },
    SchurDeg {
        parts: String,
    },
    /// Compare two modules by boxed support.
    IsoSupport {
        kind1: ModuleKind,
        #[arg(allow_hyphen_values = true)]
        mu1: String,
        kind2: ModuleKind,
        #[arg(allow_hyphen_values = true)]
        mu2: String,
        #[arg(long)]
        shift1: bool,
        #[arg(long)]
        shift2: bool,
    },
    Ideals {
        family: IdealFamily,
    },
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    json: Value,
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("domain values serialize")
}

fn report<T: Serialize>(text: impl Into<String>, v: &T) -> Result<Report, CliError> {
    Ok(Report {
        text: text.into(),
        json: to_json(v),
    })
}

fn lines<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("\n")
}

impl Cli {
    fn signature(&self) -> Signature {
        let kind = match self.alg {
            Alg::Weyl => AlgebraKind::Weyl,
            Alg::Clifford => AlgebraKind::Clifford,
        };
        let s = Signature::new(kind, self.a, self.b);
        if self.dagger {
            s.dagger()
        } else {
            s
        }
    }

    /// The signature with infinite ranks cut at `--trunc`.
    fn finite_signature(&self) -> Result<Signature, CliError> {
        let s = self.signature();
        if s.is_finite() {
            return Ok(s);
        }
        self.trunc
            .map(|n| s.truncate(n))
            .ok_or(CliError::NeedsTruncation)
    }

    fn finite_ranks(&self) -> Result<(u32, u32), CliError> {
        match (self.a.finite(), self.b.finite()) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(CliError::NeedsTruncation),
        }
    }
}

fn module(
    kind: ModuleKind,
    mu: &str,
    sig: &Signature,
    acting: Option<Subalgebra>,
) -> Result<ExplicitModule, CliError> {
    Ok(realize(kind, &parse_weight(mu)?, sig, acting)?)
}

fn roots(family: Family, m: u32, n: u32) -> RootSystem {
    RootSystem::new(family.into(), m, n)
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.cmd {
        Cmd::Nf { element, to } => {
            let e = parse_element(element, &cli.signature())?.element;
            let e = match to {
                None => e,
                Some(Transport::Iso) => cl_weyl_iso(&e)?,
                Some(Transport::Dagger) => dagger_transport(&e),
            };
            report(e.to_string(), &e)
        }
        Cmd::Mul { left, right } => {
            let sig = cli.signature();
            let e = parse_element(left, &sig)?
                .element
                .multiply(&parse_element(right, &sig)?.element)?;
            report(e.to_string(), &e)
        }
        Cmd::Bracket { left, right } => {
            let sig = cli.signature();
            let e = super_bracket(
                &parse_element(left, &sig)?.element,
                &parse_element(right, &sig)?.element,
            )?;
            report(e.to_string(), &e)
        }
        Cmd::Member { element, sub } => {
            let e = parse_element(element, &cli.signature())?.element;
            let member = e.is_member(*sub);
            let parity = e.parity();
            let v = json!({ "subalgebra": sub.to_string(), "member": member, "parity": parity.map(|p| p.to_string()) });
            Ok(Report {
                text: member.to_string(),
                json: v,
            })
        }
        Cmd::Support {
            kind,
            mu,
            acting,
            hom,
            verify,
        } => {
            let sig = cli.signature();
            let weight = parse_weight(mu)?;
            let mut v = serde_json::Map::new();
            let mut text = Vec::new();
            if *kind == ModuleKind::YModule {
                let integrable = is_integrable_y(&weight, &sig)?;
                v.insert("integrable".into(), json!(integrable));
                text.push(format!("integrable: {integrable}"));
                if !sig.is_finite() {
                    let faithful = is_faithful_y(&weight, &sig)?;
                    v.insert("faithful".into(), json!(faithful));
                    text.push(format!("faithful: {faithful}"));
                }
            }
            let fsig = cli.finite_signature()?;
            let m = realize(*kind, &weight, &fsig, *acting)?;
            if let Some(h) = hom {
                let c = f_correspondence(&weight, *h, &fsig)?;
                text.push(format!("classical: {c}"));
                v.insert("classical".into(), to_json(&c));
            }
            if *verify {
                let r = verify_module_relations(&m, cli.bx, Exec::default())?;
                text.push(format!(
                    "relations: {} checked, {} failures",
                    r.relations_checked,
                    r.failures.len()
                ));
                v.insert("relations".into(), to_json(&r));
            }
            let support = m.support_box(cli.bx);
            text.push(format!("class: {}", m.support));
            text.push(format!(
                "preferred: {}",
                superalg_core::modules::is_preferred(&m)
            ));
            text.push(lines(&support));
            v.insert("module".into(), to_json(&m));
            v.insert("support".into(), to_json(&support));
            Ok(Report {
                text: text.join("\n"),
                json: Value::Object(v),
            })
        }
        Cmd::Act {
            kind,
            mu,
            element,
            at,
        } => {
            let sig = cli.finite_signature()?;
            let m = module(*kind, mu, &sig, None)?;
            let e = parse_element(element, &m.working_signature())?.element;
            let w = m.act(&e, &WeightVector::basis(parse_weight(at)?))?;
            report(w.to_string(), &w)
        }
        Cmd::Oracle { mu, cap } => {
            let dims = induced_oracle(&parse_weight(mu)?, &cli.finite_signature()?, *cap)?;
            let rows: Vec<Value> = dims
                .iter()
                .map(|(w, d)| json!({ "weight": to_json(w), "dim": d }))
                .collect();
            let text = lines(
                &dims
                    .iter()
                    .map(|(w, d)| format!("{w} {d}"))
                    .collect::<Vec<_>>(),
            );
            Ok(Report {
                text,
                json: Value::Array(rows),
            })
        }
        Cmd::Filtration { mu, kind } => {
            let m = module(*kind, mu, &cli.finite_signature()?, None)?;
            let layers = ActionGraph::build(&m, cli.bx)?.filtration()?;
            report(lines(&layers), &layers)
        }
        Cmd::Socle { mu } => {
            let m = module(ModuleKind::FModule, mu, &cli.finite_signature()?, None)?;
            let c = socle_class(&m)?;
            report(c.to_string(), &c)
        }
        Cmd::BlockCount { mu } => {
            let n = count_simples_in_block(&parse_weight(mu)?, &cli.signature(), cli.trunc)?;
            report(n.to_string(), &n)
        }
        Cmd::Decompose {
            mu,
            kind,
            restrict,
            rep,
        } => {
            let mut m = module(*kind, mu, &cli.finite_signature()?, None)?;
            if let Some(f) = restrict {
                m = restrict_to_sublattice(&m, *f, &parse_weight(rep)?)?;
            }
            let d = decompose_even_odd(&m, cli.bx)?;
            let part = |p: &Option<superalg_core::classification::ProductPart>| {
                p.as_ref().map_or("none".to_string(), |p| {
                    format!("{} x {} ({})", p.spinor, p.oscillator, p.size)
                })
            };
            report(
                format!("even: {}\nodd: {}", part(&d.even), part(&d.odd)),
                &d,
            )
        }
        Cmd::Twin { mu, side, coset } => {
            let sig = cli.finite_signature()?;
            let parity = Parity(*coset == CosetArg::Odd);
            let c = ClassDescriptor::of_weight(&parse_weight(mu)?, &sig)?
                .with_coset(Functional::Degree, parity);
            let t = twin_of(&c, *side)?;
            let v = json!({ "class": to_json(&c), "twin": to_json(&t) });
            Ok(Report {
                text: t.to_string(),
                json: v,
            })
        }
        Cmd::Reflect {
            lambda,
            chain,
            family,
            m,
            n,
        } => {
            let lam: HighestWeight = lambda.parse()?;
            let chain = chain
                .split(',')
                .map(str::parse)
                .collect::<Result<Vec<Root>, _>>()?;
            let trace = reflect_chain(&lam, &chain, &roots(*family, *m, *n))?;
            let text = trace
                .iter()
                .map(|s| {
                    format!(
                        "{} {} {}",
                        s.root,
                        if s.typical { "typical" } else { "atypical" },
                        s.lambda
                    )
                })
                .collect::<Vec<_>>();
            report(lines(&text), &trace)
        }
        Cmd::ClassifyHw {
            lambda,
            family,
            m,
            n,
        } => {
            let c = classify_bounded_hw(&lambda.parse()?, &roots(*family, *m, *n))?;
            let text = match &c.note {
                Some(note) => format!("{:?} ({note})", c.class),
                None => format!("{:?}", c.class),
            };
            report(text, &c)
        }
        Cmd::VerifyHom {
            hom,
            flip,
            even_cap,
        } => {
            let (a, b) = cli.finite_ranks()?;
            let mut table = GeneratorTable::new(*hom, a, b);
            if let Some(r) = flip {
                table = table.with_index_flip(r)?;
            }
            let r = verify_homomorphism(&table, Exec::default());
            let mut v = to_json(&r);
            let mut text = format!(
                "pairs checked: {}, failures: {}",
                r.pairs_checked,
                r.failures.len()
            );
            if let Some(cap) = even_cap {
                let ok = even_subalgebra_generation_check(*hom, a, b, *cap)?;
                v["even_generation"] = json!(ok);
                text.push_str(&format!("\neven generation at cap {cap}: {ok}"));
            }
            Ok(Report { text, json: v })
        }
        Cmd::MuA { pairs, n, check } => {
            let pairs = parse_pairs(pairs)?;
            let w = mu_a(&pairs, *n)?;
            let mut v = json!({ "mu": to_json(&w) });
            let mut text = w.to_string();
            if *check {
                let ok = schur_power_support_check(&pairs, *n as u32, cli.bx)?;
                v["support_matches"] = json!(ok);
                text.push_str(&format!("\nsupport matches: {ok}"));
            }
            Ok(Report { text, json: v })
        }
        Cmd::SchurDeg { parts } => {
            let d = schur_degree(&parse_partition(parts)?)?;
            Ok(Report {
                text: d.to_string(),
                json: json!({ "degree": d.to_string() }),
            })
        }
        Cmd::IsoSupport {
            kind1,
            mu1,
            kind2,
            mu2,
            shift1,
            shift2,
        } => {
            let sig = cli.finite_signature()?;
            let (w1, w2) = (parse_weight(mu1)?, parse_weight(mu2)?);
            let boxed = |k, w: &Weight| -> Result<BoxedSupport, CliError> {
                let m = realize(k, w, &sig, None)?;
                Ok(BoxedSupport {
                    bx: cli.bx,
                    weights: m.support_box(cli.bx).into_iter().collect(),
                })
            };
            let verdict =
                modules_isomorphic_by_support(&boxed(*kind1, &w1)?, &boxed(*kind2, &w2)?)?;
            let by_class = match (kind1, kind2) {
                (ModuleKind::YModule, ModuleKind::YModule) => Some(y_is_isomorphic(&w1, &w2)),
                (ModuleKind::XModule, ModuleKind::XModule) => Some(is_isomorphic(&w1, &w2)),
                _ => None,
            };
            let obstructed = parity_ext_obstruction(&w1, *shift1, &w2, *shift2);
            let v = json!({ "verdict": to_json(&verdict), "by_class": by_class, "ext_obstructed": obstructed });
            let text = format!(
                "{}\next obstructed: {obstructed}",
                to_json(&verdict).as_str().unwrap_or_default()
            );
            Ok(Report { text, json: v })
        }
        Cmd::Ideals { family } => {
            let list = bounded_primitive_ideal_list(*family);
            report(
                lines(
                    &list
                        .iter()
                        .map(|d| format!("{}: {}", d.name, d.construction))
                        .collect::<Vec<_>>(),
                ),
                &list,
            )
        }
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values render");
    s.push('\n');
    s
}

/// Parses `argv` (program name first), runs the command and collects output.
/// Exit codes: 0 success, 1 domain error, 2 usage error.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result = execute(&cli).and_then(|r| {
        if let Some(path) = &cli.out {
            std::fs::write(path, render(&r.json))?;
        }
        Ok(r)
    });
    match result {
        Ok(r) => {
            let mut stdout = if cli.json { render(&r.json) } else { r.text };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stdout = if cli.json {
                render(&json!({ "error": { "kind": e.kind(), "message": e.to_string() } }))
            } else {
                String::new()
            };
            Outcome {
                code: e.exit_code(),
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}
