use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use intensity_core::distortion::DEFAULT_BUDGET;
use intensity_core::format::{format_metric_csv, format_profile, parse_profile_draft};
use intensity_core::instances::{
    generate_with_budget, intense_bound, line_general_bound, reversed_bound, two_alt_mild_bound,
};
use intensity_core::line::{conjecture_sweep, sweep_csv};
use intensity_core::matching::{general_guarantee, robust_guarantee};
use intensity_core::scoring_game::{distortion_bound, rank_vector, verify_equilibrium};
use intensity_core::{
    distortion, distortion_all, general_winner, intensity_aware_opt, intensity_oblivious_opt,
    payoff_matrix, poii_report, psm_winner, recurrences, robust_winner, tal_winner, verify,
    ElicitationMode, InstanceKind, LowerBoundInstance, Profile, Rational, ScoringVector,
};

use crate::args::*;
use crate::render::{alpha_list, rational_arg, usage, usize_list, Renderer};

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Distortion(a) => cmd_distortion(a),
        Command::Opt(a) => cmd_opt(a),
        Command::Poii(a) => cmd_poii(a),
        Command::Rule(a) => cmd_rule(a),
        Command::Game(a) => cmd_game(a),
        Command::Instance(a) => cmd_instance(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Conjecture(a) => cmd_conjecture(a),
    }
}

fn renderer(o: &Output) -> Renderer {
    Renderer { decimal: o.decimal }
}

fn load_profile(a: &ProfileArgs) -> Result<Profile> {
    let text = fs::read_to_string(&a.profile)
        .with_context(|| format!("reading {}", a.profile.display()))?;
    let alpha = a
        .alpha
        .as_deref()
        .map(|s| rational_arg("alpha", s))
        .transpose()?;
    let mode = a
        .mode
        .as_deref()
        .map(|s| {
            s.parse::<ElicitationMode>()
                .map_err(|e| usage(format!("--mode: {e}")))
        })
        .transpose()?;
    let draft =
        parse_profile_draft(&text).with_context(|| format!("parsing {}", a.profile.display()))?;
    Ok(draft.finish(alpha, mode)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_distortion(a: DistortionArgs) -> Result<()> {
    let p = load_profile(&a.profile)?;
    let r = renderer(&a.output);
    if let Some(name) = &a.alt {
        let alt = p.alternative(name)?;
        println!("{}", r.ext(&distortion(&p, alt)?));
        return Ok(());
    }
    for (name, d) in p.alternative_names().iter().zip(distortion_all(&p)?) {
        println!("{name}: {}", r.ext(&d));
    }
    Ok(())
}

fn cmd_opt(a: OptArgs) -> Result<()> {
    let p = load_profile(&a.profile)?;
    let r = renderer(&a.output);
    let names = p.alternative_names();
    match a.kind {
        OptKind::Aware => {
            if a.budget.is_some() {
                return Err(usage("--budget only applies to `opt oblivious`"));
            }
            let (alt, d) = intensity_aware_opt(&p)?;
            println!("opt: {}", names[alt]);
            println!("distortion: {}", r.ext(&d));
        }
        OptKind::Oblivious => {
            let ob = intensity_oblivious_opt(&p, a.budget.unwrap_or(DEFAULT_BUDGET))?;
            println!("opt: {}", names[ob.alternative]);
            println!("worst_poii: {}", r.ext(&ob.worst_poii));
            println!("assignments: {}", ob.assignments);
            for (name, v) in names.iter().zip(&ob.per_alternative) {
                println!("{name}: {}", r.ext(v));
            }
        }
    }
    Ok(())
}

fn cmd_poii(a: PoiiArgs) -> Result<()> {
    let p = load_profile(&a.profile)?;
    let r = renderer(&a.output);
    let names = p.alternative_names();
    let rep = poii_report(&p, a.budget.unwrap_or(DEFAULT_BUDGET))?;
    println!("oblivious: {}", names[rep.oblivious]);
    println!("aware: {}", names[rep.aware]);
    println!("oblivious_distortion: {}", r.num(&rep.oblivious_distortion));
    println!("aware_distortion: {}", r.num(&rep.aware_distortion));
    println!("poii: {}", r.num(&rep.value));
    Ok(())
}

fn cmd_rule(a: RuleArgs) -> Result<()> {
    let p = load_profile(&a.profile)?;
    let r = renderer(&a.output);
    let names = p.alternative_names();
    match (a.rule, a.k, a.ell) {
        (RuleKind::Psm, Some(k), None) => {
            let s = ScoringVector::padded(rank_vector(k, p.alpha())?, p.num_alternatives())?;
            println!("winner: {}", names[psm_winner(&p, &s)?]);
            println!("guarantee: {}", r.num(&distortion_bound(k, p.alpha())?));
        }
        (RuleKind::Psm, None, _) => return Err(usage("`rule psm` needs --k")),
        (RuleKind::Robust, None, Some(ell)) => {
            println!("winner: {}", names[robust_winner(&p, ell)?]);
            println!("guarantee: {}", r.num(&robust_guarantee(&p, ell)?));
        }
        (RuleKind::Robust, _, None) => return Err(usage("`rule robust` needs --ell")),
        (RuleKind::General, None, None) => {
            println!("winner: {}", names[general_winner(&p)?]);
            println!("guarantee: {}", r.num(&general_guarantee(&p)?));
        }
        (RuleKind::Tal, None, None) => {
            let (alt, d) = tal_winner(&p)?;
            println!("winner: {}", names[alt]);
            println!("distortion: {}", r.ext(&d));
        }
        (rule, _, _) => {
            return Err(usage(
                format!("unexpected --k or --ell for `rule {rule:?}`").to_lowercase(),
            ))
        }
    }
    Ok(())
}

fn join(r: &Renderer, vs: &[Rational]) -> String {
    vs.iter().map(|v| r.num(v)).collect::<Vec<_>>().join(" ")
}

fn cmd_game(a: GameArgs) -> Result<()> {
    let alpha = rational_arg("alpha", &a.alpha)?;
    let r = renderer(&a.output);
    match a.action {
        GameKind::Recurrence => {
            let sol = recurrences(a.k, &alpha)?;
            println!("w: {}", join(&r, &sol.w));
            println!("t: {}", join(&r, &sol.t));
            println!("r: {}", join(&r, &rank_vector(a.k, &alpha)?));
        }
        GameKind::Matrix => {
            for row in payoff_matrix(a.k, &alpha)?.entries {
                println!("{}", join(&r, &row));
            }
        }
        GameKind::Verify => {
            let t = verify_equilibrium(a.k, &alpha)?;
            println!("t_{}: {}", a.k, r.num(&t));
            println!("equilibrium: OK");
        }
    }
    Ok(())
}

fn build_instance(a: &InstanceArgs) -> Result<LowerBoundInstance> {
    let kind: InstanceKind = a.kind.parse().map_err(|e| usage(format!("--kind: {e}")))?;
    let alpha = rational_arg("alpha", &a.alpha)?;
    Ok(generate_with_budget(
        kind,
        a.m,
        a.k,
        alpha,
        a.budget.unwrap_or(DEFAULT_BUDGET),
    )?)
}

fn cmd_instance(a: InstanceArgs) -> Result<()> {
    let inst = build_instance(&a)?;
    let r = renderer(&a.output);
    let names = inst.profile.alternative_names();
    match a.action {
        InstanceAction::Generate => {
            println!("kind: {}", inst.kind);
            println!("m: {}", inst.params.m);
            if let Some(k) = inst.params.k {
                println!("k: {k}");
            }
            println!("alpha: {}", inst.params.alpha);
            println!("chosen: {}", names[inst.witness_pair.0]);
            println!("optimum: {}", names[inst.witness_pair.1]);
            println!("witness_ratio: {}", r.num(&inst.witness_ratio));
            println!("expected_ratio: {}", r.num(&inst.expected_ratio));
            if let Some(reference) = inst.reference {
                println!("reference: {}", names[reference]);
            }
            print!("{}", format_profile(&inst.profile));
        }
        InstanceAction::Verify => {
            let report = verify(&inst)?;
            print!("{report}");
            if !report.passed() {
                anyhow::bail!("{} check(s) failed", report.failures().count());
            }
        }
        InstanceAction::Dump => {
            let prof = format_profile(&inst.profile);
            let csv = inst
                .witness_metric
                .as_ref()
                .map(|w| format_metric_csv(w, names));
            match &a.out {
                Some(dir) => {
                    fs::create_dir_all(dir)
                        .with_context(|| format!("creating {}", dir.display()))?;
                    let stem = format!("{}-m{}", inst.kind.name(), inst.params.m);
                    emit(Some(&dir.join(format!("{stem}.prof"))), &prof)?;
                    if let Some(csv) = csv {
                        emit(Some(&dir.join(format!("{stem}.csv"))), &csv)?;
                    }
                }
                None => {
                    print!("{prof}");
                    if let Some(csv) = csv {
                        println!();
                        print!("{csv}");
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    let r = renderer(&a.output);
    let ms = usize_list("m", &a.m)?;
    if ms.iter().any(|&m| m < 2) {
        return Err(usage("--m: every value must be at least 2"));
    }
    let alphas = match (&a.alphas, a.kind) {
        (Some(s), _) => alpha_list(s)?,
        (None, SweepKind::Bounds) => alpha_list("0:1:1/100")?,
        (None, _) => alpha_list("1/100:1:1/100")?,
    };
    let mut csv = String::new();
    match a.kind {
        SweepKind::Bounds => {
            let [m] = ms[..] else {
                return Err(usage("`sweep bounds` takes a single --m"));
            };
            csv.push_str("alpha,lemma_left,lemma_right,max\n");
            for alpha in &alphas {
                check_unit("alphas", alpha, true)?;
                let left = reversed_bound(m, alpha);
                let right = intense_bound(alpha);
                let max = if left > right {
                    left.clone()
                } else {
                    right.clone()
                };
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    r.num(alpha),
                    r.num(&left),
                    r.num(&right),
                    r.num(&max)
                ));
            }
        }
        SweepKind::Upper => {
            csv.push_str("alpha,ell,t_ell,bound\n");
            let ells = usize_list("ell", &a.ell)?;
            for &ell in &ells {
                for alpha in &alphas {
                    check_unit("alphas", alpha, false)?;
                    let t = intensity_core::game_value(ell, alpha)?;
                    let bound = distortion_bound(ell, alpha)?;
                    csv.push_str(&format!(
                        "{},{ell},{},{}\n",
                        r.num(alpha),
                        r.num(&t),
                        r.num(&bound)
                    ));
                }
            }
        }
        SweepKind::Line => {
            csv.push_str("alpha,m,two_alternative,general\n");
            for &m in &ms {
                for alpha in &alphas {
                    check_unit("alphas", alpha, false)?;
                    let mild = two_alt_mild_bound(alpha);
                    let intense = intense_bound(alpha);
                    let two = if mild > intense { mild } else { intense };
                    let general = line_general_bound(m, alpha);
                    csv.push_str(&format!(
                        "{},{m},{},{}\n",
                        r.num(alpha),
                        r.num(&two),
                        r.num(&general)
                    ));
                }
            }
        }
    }
    emit(a.out.as_deref(), &csv)
}

fn check_unit(flag: &str, alpha: &Rational, allow_zero: bool) -> Result<()> {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let low_ok = if allow_zero {
        *alpha >= zero
    } else {
        *alpha > zero
    };
    if low_ok && *alpha <= one {
        Ok(())
    } else {
        let domain = if allow_zero { "[0, 1]" } else { "(0, 1]" };
        Err(intensity_core::Error::AlphaOutOfDomain {
            alpha: alpha.to_string(),
            domain,
        })
        .with_context(|| format!("--{flag}"))
    }
}

fn cmd_conjecture(a: ConjectureArgs) -> Result<()> {
    let r = renderer(&a.output);
    let alphas = alpha_list(&a.alphas)?;
    let rows = conjecture_sweep(a.total, &alphas)?;
    emit(a.out.as_deref(), &sweep_csv(&rows, |v| r.num(v)))
}
