use std::collections::{BTreeMap, BTreeSet};
use std::env;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::Value;
use sinrsched_core::format::{parse_schedule, serialize_instance, serialize_schedule, ScheduleDoc};
use sinrsched_core::gen::{self, InstanceParams};
use sinrsched_core::graphs::{separation_params, sufficient_separation};
use sinrsched_core::metric::{c_prime, equilength_ratio_bound, z1, z2, MetricSpec};
use sinrsched_core::oracle::{
    opt_capacity, opt_schedule, opt_weighted_capacity, Feasibility, OracleBudget,
};
use sinrsched_core::schedule::{self as sched, run_warnings, CapacityResult, Schedule};
use sinrsched_core::sinr::{is_p_signal, is_sinr_feasible, max_affectance, pc_feasible};
use sinrsched_core::{Instance, PowerAssignment, SinrError};

use crate::args::*;
use crate::report::*;

/// What a command prints, and whether it counts as success.
pub struct Output {
    pub reports: Vec<Report>,
    pub ok: bool,
    pub format: Format,
    /// Raw text that replaces the reports (an instance written to stdout).
    pub raw: Option<String>,
}

impl Output {
    fn one(report: Report, ok: bool, format: Format) -> Self {
        Self { reports: vec![report], ok, format, raw: None }
    }
}

pub const ORACLE_MAX_ENV: &str = "SINRSCHED_ORACLE_MAX";

fn budget_from_env() -> CliResult<OracleBudget> {
    match env::var(ORACLE_MAX_ENV) {
        Ok(s) => {
            let k: usize = s
                .trim()
                .parse()
                .map_err(|e| CliError::Usage(format!("{ORACLE_MAX_ENV}={s:?}: {e}")))?;
            OracleBudget::with_max_links(k).map_err(|e| CliError::Usage(e.to_string()))
        }
        Err(_) => Ok(OracleBudget::default()),
    }
}

fn usage(e: SinrError) -> CliError {
    CliError::Usage(e.to_string())
}

fn elapsed_ms(start: Instant) -> Value {
    finite(start.elapsed().as_secs_f64() * 1e3)
}

fn instance_params(phys: &PhysArgs) -> CliResult<InstanceParams> {
    let packing_constant = match phys.packing_constant {
        Some(c) => c,
        None => MetricSpec::with_default_constant(phys.dim).map_err(usage)?.packing_constant,
    };
    Ok(InstanceParams {
        alpha: phys.alpha,
        beta: phys.beta,
        noise: phys.noise,
        mode: phys.mode.into(),
        dim: phys.dim,
        packing_constant,
    })
}

fn with_mode(inst: Instance, mode: Option<ModeArg>) -> Instance {
    match mode {
        Some(m) => inst.with_mode(m.into()),
        None => inst,
    }
}

fn affectance_values(xs: Vec<f64>) -> Value {
    Value::Array(xs.into_iter().map(finite).collect())
}

pub fn gen(a: &GenArgs) -> CliResult<Output> {
    let params = instance_params(&a.phys)?;
    let inst = match a.kind {
        GenKind::Random => gen::gen_random(a.n, a.side, a.len_min, a.len_max, a.seed, &params),
        GenKind::Equilength => gen::gen_equilength(a.n, a.side, a.len, a.seed, &params),
        GenKind::Dispersed => gen::gen_dispersed(a.n, a.len_min, a.len_max, a.min_sep, a.seed, &params),
        GenKind::Grid => gen::gen_grid(a.m, a.q, &params),
        GenKind::Lowerbound => gen::gen_lowerbound(a.n, a.t, a.c1, a.phys.alpha, a.variant.into()),
    }
    .map_err(usage)?;
    let text = serialize_instance(&inst);
    let Some(path) = &a.output else {
        return Ok(Output { reports: vec![], ok: true, format: Format::Json, raw: Some(text) });
    };
    write_file(path, &text)?;
    let mut r = Report::new("gen");
    r.set("digest", digest(&inst))
        .set("n", inst.len())
        .set("output", path.display().to_string())
        .set("precision", serde_json::to_value(inst.precision).expect("serializable"));
    Ok(Output::one(r, true, Format::Json))
}

/// Checks one slot: SINR (noise included) and the certified signal level
/// under fixed power, or spectral feasibility under power control.
fn check_slot(inst: &Instance, power: Option<&PowerAssignment>, slot: &[usize], p: f64) -> CliResult<(bool, f64)> {
    if slot.is_empty() {
        return Ok((true, 0.0));
    }
    match power {
        Some(pw) => {
            let sinr = is_sinr_feasible(inst, pw, slot)?;
            let signal = is_p_signal(inst, pw, slot, p)?;
            Ok((sinr && signal, max_affectance(inst, pw, slot)))
        }
        None => match pc_feasible(inst, slot) {
            Ok(ok) => Ok((ok, f64::NAN)),
            Err(SinrError::Colocation(..)) => Ok((false, f64::NAN)),
            Err(e) => Err(e.into()),
        },
    }
}

pub fn check(a: &CheckArgs) -> CliResult<Output> {
    let mut inst = load_instance(&a.input)?;
    let power_override = a.power.as_deref().map(|s| parse_power(s, inst.alpha())).transpose()?;
    let (slots, power, p_certified) = if let Some(path) = &a.schedule {
        let doc = parse_schedule(&read_file(path)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        inst = inst.with_mode(doc.mode);
        let slots = doc
            .resolve_slots(&inst)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        (slots, power_override.unwrap_or(doc.power), doc.p_certified)
    } else {
        let ids = a.subset.as_deref().unwrap_or_default();
        let slot = ids
            .iter()
            .map(|&id| inst.index_of_id(id).ok_or_else(|| CliError::Usage(format!("unknown link id {id}"))))
            .collect::<CliResult<Vec<_>>>()?;
        (vec![slot], power_override.unwrap_or(Some(PowerAssignment::uniform())), inst.beta)
    };
    if let Some(p) = &power {
        p.validate_for(&inst)?;
    }

    let mut seen = BTreeSet::new();
    let repeated: Vec<u64> = slots
        .iter()
        .flatten()
        .filter(|&&v| !seen.insert(v))
        .map(|&v| inst.links[v].id)
        .collect();
    let mut bad_slots = Vec::new();
    let mut maxima = Vec::new();
    for (k, slot) in slots.iter().enumerate() {
        let (ok, worst) = check_slot(&inst, power.as_ref(), slot, p_certified)?;
        if !ok {
            bad_slots.push(k);
        }
        maxima.push(worst);
    }
    let ok = repeated.is_empty() && bad_slots.is_empty();

    let mut r = Report::new("check");
    r.set("digest", digest(&inst))
        .set("feasible", ok)
        .set("power", power_label(power.as_ref(), inst.alpha()))
        .set("p_certified", finite(p_certified))
        .set("slots", slots.len())
        .set("infeasible_slots", bad_slots)
        .set("repeated_ids", repeated)
        .set("slot_max_affectance", affectance_values(maxima));
    Ok(Output::one(r, ok, a.format))
}

fn native_power(algo: Algo, alpha: f64) -> PowerAssignment {
    match algo {
        Algo::Mean => PowerAssignment::mean(alpha),
        Algo::Udg | Algo::Groups | Algo::Online => PowerAssignment::uniform(),
    }
}

fn check_native_power(a: &RunArgs, alpha: f64) -> CliResult<()> {
    let Some(spec) = &a.power else { return Ok(()) };
    let native = native_power(a.algo, alpha);
    if parse_power(spec, alpha)? != Some(native) {
        return Err(CliError::Usage(format!(
            "--algo {} runs with power {}, not {spec}",
            a.algo.name(),
            power_label(Some(&native), alpha)
        )));
    }
    Ok(())
}

fn run_params(a: &RunArgs, inst: &Instance, p: Option<f64>) -> BTreeMap<String, Value> {
    let mut params = BTreeMap::new();
    params.insert("mode".to_string(), Value::from(inst.mode.to_string()));
    if let Some(p) = p {
        params.insert("p".to_string(), finite(p));
    }
    if let Some(seed) = a.seed {
        params.insert("seed".to_string(), Value::from(seed));
    }
    params
}

/// Runs a scheduling algorithm on every link of `inst`.
pub fn run_schedule(inst: &Instance, algo: Algo, p: Option<f64>, seed: Option<u64>) -> CliResult<Schedule> {
    let all = inst.all();
    let s = match algo {
        Algo::Udg => sched::schedule_equilength_udg(inst, &all, p.unwrap_or(inst.beta))?,
        Algo::Groups => sched::schedule_lengthgroups_uniform(inst, &all)?,
        Algo::Online => {
            let stream = match seed {
                Some(seed) => gen::arrival_order(inst.len(), seed),
                None => all,
            };
            sched::online_schedule(inst, &stream)?
        }
        Algo::Mean => sched::schedule_meanpower(inst, &inst.all())?,
    };
    s.verify(inst).map_err(|e| CliError::Failed(format!("emitted schedule failed verification: {e}")))?;
    Ok(s)
}

fn emit_doc(doc: &mut ScheduleDoc, inst: &Instance, r: &mut Report, output: &Option<std::path::PathBuf>) -> CliResult<()> {
    doc.diagnostics.warnings = run_warnings(inst);
    r.set("warnings", doc.diagnostics.warnings.clone());
    if let Some(path) = output {
        write_file(path, &serialize_schedule(doc))?;
    }
    Ok(())
}

pub fn schedule(a: &RunArgs) -> CliResult<Output> {
    let inst = with_mode(load_instance(&a.input)?, a.mode);
    check_native_power(a, inst.alpha())?;
    if a.p.is_some() && a.algo != Algo::Udg {
        return Err(CliError::Usage("--p applies to --algo udg only".into()));
    }
    let p = (a.algo == Algo::Udg).then(|| a.p.unwrap_or(inst.beta));
    let start = Instant::now();
    let s = run_schedule(&inst, a.algo, p, a.seed)?;
    let wall = elapsed_ms(start);
    let params = run_params(a, &inst, p);
    let mut doc = ScheduleDoc::from_schedule(&inst, &s, a.algo.name(), params.clone());
    let mut r = Report::new("schedule");
    r.set("digest", digest(&inst))
        .set("algorithm", a.algo.name())
        .set("params", Value::Object(params.into_iter().collect()))
        .set("seed", a.seed.map_or(Value::Null, Value::from))
        .set("n", inst.len())
        .set("slots", s.slot_count())
        .set("power", power_label(Some(&s.power), inst.alpha()))
        .set("p_certified", finite(s.p_certified))
        .set("slot_max_affectance", affectance_values(s.slot_max_affectance(&inst)))
        .set("wall_ms", wall);
    emit_doc(&mut doc, &inst, &mut r, &a.output)?;
    Ok(Output::one(r, true, a.format))
}

pub fn capacity(c: &CapacityArgs) -> CliResult<Output> {
    let a = &c.run;
    let inst = with_mode(load_instance(&a.input)?, a.mode);
    check_native_power(a, inst.alpha())?;
    if a.p.is_some() {
        return Err(CliError::Usage("--p applies to schedule --algo udg only".into()));
    }
    let all = inst.all();
    let start = Instant::now();
    let res: CapacityResult = match (a.algo, c.weighted) {
        (Algo::Udg, false) => sched::capacity_equilength(&inst, &all)?,
        (Algo::Udg, true) => sched::weighted_capacity_equilength(&inst, &all)?,
        (Algo::Groups, false) => sched::capacity_random_group(&inst, &all, a.seed.unwrap_or(0))?,
        (Algo::Mean, false) => sched::capacity_meanpower(&inst, &all)?,
        (Algo::Mean, true) => sched::weighted_capacity_meanpower(&inst, &all)?,
        (algo, weighted) => {
            return Err(CliError::Usage(format!(
                "no {}capacity algorithm for --algo {}",
                if weighted { "weighted " } else { "" },
                algo.name()
            )))
        }
    };
    let wall = elapsed_ms(start);
    res.verify(&inst).map_err(|e| CliError::Failed(format!("emitted capacity set failed verification: {e}")))?;
    let mut params = run_params(a, &inst, None);
    params.insert("weighted".into(), Value::from(c.weighted));
    let name = a.algo.name();
    let mut doc = ScheduleDoc::from_capacity(&inst, &res, name, params.clone());
    let mut r = Report::new("capacity");
    r.set("digest", digest(&inst))
        .set("algorithm", name)
        .set("params", Value::Object(params.into_iter().collect()))
        .set("seed", a.seed.map_or(Value::Null, Value::from))
        .set("n", inst.len())
        .set("size", res.size())
        .set("total_weight", finite(res.total_weight))
        .set("power", power_label(Some(&res.power), inst.alpha()))
        .set("slot_max_affectance", affectance_values(vec![max_affectance(&inst, &res.power, &res.chosen)]))
        .set("wall_ms", wall);
    emit_doc(&mut doc, &inst, &mut r, &a.output)?;
    Ok(Output::one(r, true, a.format))
}

fn feasibility(spec: Option<&str>, alpha: f64) -> CliResult<Feasibility> {
    Ok(match parse_power(spec.unwrap_or("control"), alpha)? {
        Some(p) => Feasibility::Fixed(p),
        None => Feasibility::PowerControl,
    })
}

fn oracle_doc(inst: &Instance, feas: &Feasibility, slots: Vec<Vec<usize>>, kind: &str) -> ScheduleDoc {
    let params = BTreeMap::from([("mode".to_string(), Value::from(inst.mode.to_string()))]);
    let mut doc = match feas {
        Feasibility::Fixed(p) => {
            let s = Schedule { slots, power: *p, mode: inst.mode, p_certified: inst.beta };
            ScheduleDoc::from_schedule(inst, &s, "oracle", params)
        }
        Feasibility::PowerControl => ScheduleDoc::from_power_control(inst, &slots, "oracle", params),
    };
    doc.kind = kind.into();
    doc
}

pub fn oracle(a: &OracleArgs) -> CliResult<Output> {
    let inst = with_mode(load_instance(&a.input)?, a.mode);
    let budget = budget_from_env()?;
    let feas = feasibility(a.power.as_deref(), inst.alpha())?;
    let power = match &feas {
        Feasibility::Fixed(p) => {
            p.validate_for(&inst)?;
            Some(*p)
        }
        Feasibility::PowerControl => None,
    };
    let all = inst.all();
    let start = Instant::now();
    let mut r = Report::new("oracle");
    r.set("digest", digest(&inst)).set("n", inst.len()).set("power", power_label(power.as_ref(), inst.alpha()));
    let doc = match a.objective {
        Objective::Schedule => {
            let opt = opt_schedule(&inst, &all, &feas, &budget)?;
            r.set("objective", "schedule").set("value", opt.len());
            oracle_doc(&inst, &feas, opt.slots, "schedule")
        }
        Objective::Capacity | Objective::Weighted => {
            let weighted = a.objective == Objective::Weighted;
            let opt = if weighted {
                opt_weighted_capacity(&inst, &all, &feas, &budget)?
            } else {
                opt_capacity(&inst, &all, &feas, &budget)?
            };
            r.set("objective", if weighted { "weighted" } else { "capacity" })
                .set("value", finite(opt.value))
                .set("chosen", inst.ids(&opt.chosen));
            oracle_doc(&inst, &feas, vec![opt.chosen], "capacity")
        }
    };
    r.set("wall_ms", elapsed_ms(start));
    if let Some(path) = &a.output {
        write_file(path, &serialize_schedule(&doc))?;
    }
    Ok(Output::one(r, true, a.format))
}

/// Parses `a..b` (half open) or `a..=b`.
pub fn parse_seeds(s: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::Usage(format!("seed range {s:?} is not a..b or a..=b"));
    let (lo, hi, inclusive) = if let Some((lo, hi)) = s.split_once("..=") {
        (lo, hi, true)
    } else {
        let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
        (lo, hi, false)
    };
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    Ok(if inclusive { (lo..=hi).collect() } else { (lo..hi).collect() })
}

fn compare_one(inst: &Instance, algo: Algo, feas: &Feasibility, budget: &OracleBudget, seed: Option<u64>) -> Report {
    let mut r = Report::new("compare");
    r.set("algorithm", algo.name())
        .set("digest", digest(inst))
        .set("n", inst.len())
        .set("seed", seed.map_or(Value::Null, Value::from))
        .set("oracle_power", power_label(match feas {
            Feasibility::Fixed(p) => Some(p),
            Feasibility::PowerControl => None,
        }, inst.alpha()));
    let start = Instant::now();
    let result = run_schedule(inst, algo, None, None).and_then(|s| {
        let opt = opt_schedule(inst, &inst.all(), feas, budget)?;
        Ok((s, opt.len()))
    });
    match result {
        Ok((s, opt)) => {
            let ratio = if opt == 0 { Value::Null } else { finite(s.slot_count() as f64 / opt as f64) };
            r.set("alg_slots", s.slot_count())
                .set("opt_slots", opt)
                .set("ratio", ratio)
                .set("slot_max_affectance", affectance_values(s.slot_max_affectance(inst)));
        }
        Err(e) => {
            r.set("error", e.to_string());
        }
    }
    r.set("wall_ms", elapsed_ms(start));
    r
}

pub fn compare(a: &CompareArgs) -> CliResult<Output> {
    let budget = budget_from_env()?;
    let runs: Vec<(Option<u64>, Instance)> = match (&a.input, &a.seeds) {
        (Some(path), _) => vec![(None, load_instance(path)?)],
        (None, Some(spec)) => {
            let params = instance_params(&a.phys)?;
            parse_seeds(spec)?
                .into_iter()
                .map(|seed| {
                    let inst = if a.algo == Algo::Udg {
                        gen::gen_equilength(a.n, a.side, a.len_min, seed, &params)
                    } else {
                        gen::gen_random(a.n, a.side, a.len_min, a.len_max, seed, &params)
                    };
                    inst.map(|i| (Some(seed), i)).map_err(usage)
                })
                .collect::<CliResult<_>>()?
        }
        (None, None) => return Err(CliError::Usage("compare needs --input or --seeds".into())),
    };
    let alpha = runs.first().map_or(a.phys.alpha, |(_, i)| i.alpha());
    let feas = feasibility(a.power.as_deref(), alpha)?;
    if let Some((_, big)) = runs.iter().find(|(_, i)| i.len() > budget.max_links) {
        return Err(SinrError::OracleScale { size: big.len(), limit: budget.max_links }.into());
    }
    let reports: Vec<Report> = runs
        .par_iter()
        .map(|(seed, inst)| compare_one(inst, a.algo, &feas, &budget, *seed))
        .collect();
    let ok = reports.iter().all(|r| r.get("error").is_none());
    Ok(Output { reports, ok, format: a.format, raw: None })
}

pub fn bound(a: &BoundArgs) -> CliResult<Output> {
    let inst = load_instance(&a.input)?;
    let p = a.p.unwrap_or(inst.beta);
    let f = &inst.fading;
    let (tau, lambda_sep, m) = separation_params(&inst);
    let ratio = equilength_ratio_bound(p, inst.beta, f);
    let mut r = Report::new("bound");
    r.set("digest", digest(&inst))
        .set("n", inst.len())
        .set("p", finite(p))
        .set("c_prime", finite(c_prime(f)?))
        .set("z1", finite(z1(p, f)?))
        .set("z2", finite(z2(p, inst.alpha())?))
        .set("separation", finite(sufficient_separation(p, &inst)?))
        .set("tau", finite(tau))
        .set("lambda", finite(lambda_sep))
        .set("m", m)
        .set("equilength_ratio_bound", ratio.as_ref().map_or(Value::Null, |&x| finite(x)));
    if let Err(e) = ratio {
        r.set("note", e.to_string());
    }
    Ok(Output::one(r, true, a.format))
}
