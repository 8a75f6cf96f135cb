mod args;

use anyhow::{anyhow, Context};
use args::{ClassCommand, Cli, Command, Input, Predicate, RuleArg, RuleCommand};
use clap::Parser;
use nflab::classlab::{
    class_membership, product_class_check, run_theorem_suite, splitting_check, ClassSpec, Closure, SUITES,
};
use nflab::horn::{
    builtin_rule, entails_class, find_countermodel, find_violation, holds_report, parse_implication, Builtin,
    FilterClass, Implication, Search,
};
use nflab::nfilter::{
    decompose_prime_n_filter, generate_n_filter, generate_n_filter_oracle, is_m_prime_element, is_m_prime_n_filter,
    min_filter_degree, n_filter_violation, prime_violation, separate_prime_n_filter, Degree,
};
use nflab::poset::export_dot;
use nflab::structures::{
    canonical, direct_product, dual_product, find_embedding, find_hom, Canonical, HomSearch, Signature, Structure,
};
use nflab::{BitSet, Error, FinitePoset};
use serde_json::{json, Value};
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

/// What a command prints and whether it counts as success.
enum Outcome {
    Json(Value, bool),
    Raw(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: cannot start {j} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Outcome::Raw(text)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Ok(Outcome::Json(value, ok)) => {
            if cli.text {
                print!("{}", render_text(&value));
            } else {
                println!("{value}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn render_text(v: &Value) -> String {
    let show = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {}\n", show(v))).collect(),
        other => format!("{}\n", show(other)),
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path) -> anyhow::Result<Structure> {
    Structure::from_json(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn names(p: &FinitePoset, list: &str) -> anyhow::Result<BitSet> {
    let items: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(p.elems_of(&items)?)
}

fn load_input(input: &Input) -> anyhow::Result<Structure> {
    let s = load(&input.structure)?;
    match &input.upset {
        None => Ok(s),
        Some(list) => {
            let u = names(s.algebra(), list)?;
            Ok(s.with_designated(u)?)
        }
    }
}

fn set_names(p: &FinitePoset, set: &BitSet) -> Value {
    json!(set.iter().map(|x| p.name(x)).collect::<Vec<_>>())
}

fn elems(p: &FinitePoset, xs: &[usize]) -> Value {
    json!(xs.iter().map(|&x| p.name(x)).collect::<Vec<_>>())
}

fn degree(text: &str) -> anyhow::Result<Degree> {
    Ok(text.parse::<Degree>()?)
}

fn rule_of(arg: &RuleArg) -> anyhow::Result<Implication> {
    match (&arg.rule, &arg.builtin) {
        (Some(text), _) => Ok(parse_implication(text)?),
        (None, Some(name)) => Ok(builtin_rule(name.parse::<Builtin>()?)?),
        (None, None) => Err(anyhow!("give --rule or --builtin")),
    }
}

fn structure_value(s: &Structure) -> Value {
    serde_json::from_str(&s.to_json()).expect("structure json")
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Check { predicate, input, n, m, element } => check(predicate, &input, &n, m, element.as_deref()),
        Command::Generate { input, n, oracle } => {
            let s = load_input(&input)?;
            let p = s.algebra();
            let n = degree(&n)?;
            let g = if oracle {
                generate_n_filter_oracle(p, s.designated(), n)?
            } else {
                generate_n_filter(p, s.designated(), n)?
            };
            Ok(Outcome::Json(json!({"n": n, "upset": set_names(p, &g)}), true))
        }
        Command::Decompose { input } => {
            let s = load_input(&input)?;
            let p = s.algebra();
            match decompose_prime_n_filter(p, s.designated()) {
                Ok(d) => {
                    let parts: Vec<Value> = d.parts.iter().map(|f| set_names(p, f)).collect();
                    Ok(Outcome::Json(json!({"decomposable": true, "parts": parts}), true))
                }
                Err(e @ (Error::NoDecomposition(_) | Error::NotPrime)) => {
                    Ok(Outcome::Json(json!({"decomposable": false, "reason": e.to_string()}), false))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Separate { input, ideal, n } => {
            let s = load_input(&input)?;
            let p = s.algebra();
            let i = names(p, &ideal)?;
            let g = separate_prime_n_filter(p, s.designated(), &i, degree(&n)?)?;
            Ok(Outcome::Json(json!({"separator": set_names(p, &g)}), true))
        }
        Command::Hom { source, target, strict, injective } => {
            let (a, b) = (load(&source)?, load(&target)?);
            let h = find_hom(&a, &b, HomSearch { strict, injective, ..Default::default() })?;
            Ok(hom_outcome(&a, &b, h))
        }
        Command::Embed { source, target } => {
            let (a, b) = (load(&source)?, load(&target)?);
            let h = find_embedding(&a, &b)?;
            Ok(hom_outcome(&a, &b, h))
        }
        Command::Product { structures } => {
            let parts = structures.iter().map(|p| load(p)).collect::<anyhow::Result<Vec<_>>>()?;
            Ok(Outcome::Raw(direct_product(&parts)?.to_json()))
        }
        Command::Dualproduct { structures } => {
            let parts = structures.iter().map(|p| load(p)).collect::<anyhow::Result<Vec<_>>>()?;
            Ok(Outcome::Raw(dual_product(&parts)?.to_json()))
        }
        Command::Rule(r) => rule(r),
        Command::Class(c) => class(c),
        Command::Verify { suite, max_size } => {
            if suite == "list" {
                let list: Vec<Value> = SUITES.iter().map(|(n, b)| json!({"suite": n, "default_bound": b})).collect();
                return Ok(Outcome::Json(json!(list), true));
            }
            let bound = match max_size {
                Some(b) => b,
                None => SUITES
                    .iter()
                    .find(|(n, _)| *n == suite)
                    .map(|&(_, b)| b)
                    .ok_or_else(|| Error::UnknownSuite(suite.clone()))?,
            };
            let report = run_theorem_suite(&suite, bound)?;
            let ok = report.passed();
            Ok(Outcome::Json(serde_json::to_value(&report)?, ok))
        }
        Command::Gallery { name, n, m } => {
            if name == "list" {
                return Ok(Outcome::Json(json!(Canonical::NAMES), true));
            }
            let s = canonical(&Canonical::parse(&name, n, m)?)?;
            Ok(Outcome::Raw(s.to_json()))
        }
        Command::ExportDot { input } => {
            let s = load_input(&input)?;
            Ok(Outcome::Raw(export_dot(s.algebra(), s.designated())))
        }
    }
}

fn check(predicate: Predicate, input: &Input, n: &str, m: usize, element: Option<&str>) -> anyhow::Result<Outcome> {
    let s = load_input(input)?;
    let (p, f) = (s.algebra(), s.designated());
    Ok(match predicate {
        Predicate::NFilter => {
            let n = degree(n)?;
            let w = n_filter_violation(p, f, n)?;
            let holds = w.is_none();
            Outcome::Json(json!({"holds": holds, "n": n, "witness": w.map(|w| elems(p, &w))}), holds)
        }
        Predicate::Prime => {
            let w = prime_violation(p, f)?;
            let holds = w.is_none();
            Outcome::Json(json!({"holds": holds, "witness": w.map(|(a, b)| elems(p, &[a, b]))}), holds)
        }
        Predicate::MPrimeNFilter => {
            let n = degree(n)?;
            let holds = is_m_prime_n_filter(p, f, m, n)?;
            Outcome::Json(json!({"holds": holds, "m": m, "n": n}), holds)
        }
        Predicate::MPrimeElement => {
            let name = element.ok_or_else(|| anyhow!("m-prime-element needs --element"))?;
            let holds = is_m_prime_element(p, p.elem(name)?, m)?;
            Outcome::Json(json!({"holds": holds, "element": name, "m": m}), holds)
        }
        Predicate::Degree => Outcome::Json(json!({"degree": min_filter_degree(p, f)?}), true),
        Predicate::Kind => Outcome::Json(serde_json::to_value(p.kind())?, true),
    })
}

fn hom_outcome(a: &Structure, b: &Structure, h: Option<nflab::structures::Homomorphism>) -> Outcome {
    match h {
        Some(h) => Outcome::Json(json!({"found": true, "hom": h.to_json(a.algebra(), b.algebra())}), true),
        None => Outcome::Json(json!({"found": false, "hom": null}), false),
    }
}

fn rule(command: RuleCommand) -> anyhow::Result<Outcome> {
    match command {
        RuleCommand::Holds { rule, input } => {
            let r = rule_of(&rule)?;
            let s = load_input(&input)?;
            let w = find_violation(&s, &r)?;
            Ok(Outcome::Json(holds_report(&s, &r, w.as_deref()), w.is_none()))
        }
        RuleCommand::Countermodel { rule, max_size, signature } => {
            let r = rule_of(&rule)?;
            let search = match max_size {
                None => Search::Gallery,
                Some(max_size) => Search::Exhaustive { max_size, signature: signature.parse::<Signature>()? },
            };
            Ok(match find_countermodel(&r, search)? {
                None => Outcome::Json(json!({"found": false}), true),
                Some(cm) => {
                    let report = holds_report(&cm.structure, &r, Some(&cm.witness));
                    Outcome::Json(
                        json!({"found": true, "name": cm.name, "structure": structure_value(&cm.structure),
                               "witness": report["witness"]}),
                        false,
                    )
                }
            })
        }
        RuleCommand::Entails { rule, class } => {
            let r = rule_of(&rule)?;
            let class: FilterClass = class.parse()?;
            let entailed = entails_class(&r, class)?;
            Ok(Outcome::Json(json!({"class": class.to_string(), "rule": r.to_string(), "entailed": entailed}), entailed))
        }
        RuleCommand::Builtin { name } => {
            let b: Builtin = name.parse()?;
            let r = builtin_rule(b)?;
            Ok(Outcome::Json(json!({"name": b.to_string(), "rule": r.to_string(), "signature": r.signature}), true))
        }
    }
}

fn class(command: ClassCommand) -> anyhow::Result<Outcome> {
    match command {
        ClassCommand::Member { generators, input, logical } => {
            let gens = generators.iter().map(|p| load(p)).collect::<anyhow::Result<Vec<_>>>()?;
            let closure = if logical { Closure::LogicalClass } else { Closure::FilterClass };
            let spec = ClassSpec::new(gens, closure)?;
            let member = class_membership(&spec, &load_input(&input)?)?;
            Ok(Outcome::Json(json!({"member": member, "closure": closure}), member))
        }
        ClassCommand::Split { input, n } => match splitting_check(&load_input(&input)?, n) {
            Ok(branch) => Ok(Outcome::Json(json!({"branch": branch.to_string(), "n": n}), true)),
            Err(Error::DichotomyViolated(msg)) => Ok(Outcome::Json(json!({"branch": null, "error": msg}), false)),
            Err(e) => Err(e.into()),
        },
        ClassCommand::ProductClass { input, m, n } => {
            let member = product_class_check(&load_input(&input)?, m, n)?;
            Ok(Outcome::Json(json!({"member": member, "m": m, "n": n}), member))
        }
    }
}
