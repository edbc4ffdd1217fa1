use clonelab::capacity::q_upper_bound;
use clonelab::cloner::{isotropic_shrink, ClonerRegistry};
use clonelab::figures::{figure_table, Figure};
use clonelab::format::g12;
use clonelab::qmath::{fidelity_pure, seeded_rng, trace_distance, BlochVector, StateVector, C64};
use clonelab::teleport::{run_teleport_clone, BellOutcome, KrausGroupLabel};
use clonelab::verify::{SuiteRegistry, VerifyContext};
use serde_json::{json, Value};

use crate::output::{config_json, csv_line, density_json, envelope, matrix_text};
use crate::{Common, Format, StateSpec};

pub struct Outcome {
    pub body: String,
    pub checks_failed: bool,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, checks_failed: false }
    }
}

/// Anything that is not a failed check is reported as a usage error.
pub enum Failure {
    Usage(String),
}

impl From<clonelab::Error> for Failure {
    fn from(e: clonelab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn numbers(s: &str, want: usize, what: &str) -> Result<Vec<f64>, Failure> {
    let v: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    match v {
        Ok(v) if v.len() == want && v.iter().all(|x| x.is_finite()) => Ok(v),
        _ => Err(Failure::Usage(format!("{what} expects {want} comma-separated numbers, got '{s}'"))),
    }
}

pub fn parse_state(spec: &StateSpec) -> Result<StateVector, Failure> {
    if let Some(s) = &spec.state {
        let v = numbers(s, 3, "--state")?;
        return Ok(StateVector::from_bloch(&BlochVector { x: v[0], y: v[1], z: v[2] })?);
    }
    if let Some(s) = &spec.angles {
        let v = numbers(s, 2, "--angles")?;
        return Ok(StateVector::from_angles(v[0], v[1]));
    }
    if let Some(s) = &spec.amplitudes {
        let v = numbers(s, 4, "--amplitudes")?;
        return Ok(StateVector::normalized(vec![C64::new(v[0], v[1]), C64::new(v[2], v[3])])?);
    }
    Err(Failure::Usage("one of --state, --angles, --amplitudes is required".into()))
}

fn bloch_json(b: &BlochVector) -> Value {
    json!([b.x, b.y, b.z])
}

fn bloch_text(b: &BlochVector) -> String {
    format!("{} {} {}", g12(b.x), g12(b.y), g12(b.z))
}

pub fn universal(common: &Common, spec: &StateSpec, cloner: &str) -> Result<Outcome, Failure> {
    let psi = parse_state(spec)?;
    let registry = ClonerRegistry::standard();
    let machine = registry.get(cloner)?;
    let pair = machine.clone_state(&psi)?;
    let fidelity = fidelity_pure(&pair.first, &psi)?;
    let fidelity2 = fidelity_pure(&pair.second, &psi)?;
    // Machines that are not isotropic at this input have no single η.
    let eta = isotropic_shrink(&psi, &[&pair.first, &pair.second]).ok();
    let distance = trace_distance(&pair.first, &pair.second)?;
    let s_in = psi.projector().bloch()?;
    let (s1, s2) = (pair.first.bloch()?, pair.second.bloch()?);
    let body = match common.format {
        Some(Format::Json) => envelope(
            "universal",
            config_json(common, json!({ "cloner": cloner })),
            json!({
                "input_bloch": bloch_json(&s_in),
                "rho1": density_json(&pair.first),
                "rho2": density_json(&pair.second),
                "bloch1": bloch_json(&s1),
                "bloch2": bloch_json(&s2),
                "eta": eta,
                "fidelity": fidelity,
                "fidelity2": fidelity2,
                "trace_distance": distance,
            }),
            json!([]),
        ),
        Some(Format::Csv) => {
            let mut s = csv_line(&["quantity".into(), "value".into()]);
            let mut row = |k: &str, v: f64| s.push_str(&csv_line(&[k.into(), g12(v)]));
            row("fidelity", fidelity);
            row("fidelity2", fidelity2);
            row("eta", eta.unwrap_or(f64::NAN));
            row("trace_distance", distance);
            for (k, v) in ["bloch1_x", "bloch1_y", "bloch1_z"].iter().zip(s1.components()) {
                row(k, v);
            }
            s
        }
        None => {
            let mut s = format!("cloner: {}\ninput bloch: {}\n", machine.name(), bloch_text(&s_in));
            s.push_str("rho1:\n");
            s.push_str(&matrix_text(pair.first.matrix(), "  "));
            s.push_str("rho2:\n");
            s.push_str(&matrix_text(pair.second.matrix(), "  "));
            s.push_str(&format!("eta: {}\n", eta.map_or("not isotropic".to_string(), g12)));
            s.push_str(&format!("F: {}\n", g12(fidelity)));
            s
        }
    };
    Ok(Outcome::ok(body))
}

pub fn figures(common: &Common, which: &str) -> Result<Outcome, Failure> {
    let figure: Figure = which.parse()?;
    let table = figure_table(figure, common.grid as usize)?;
    let body = match common.format {
        Some(Format::Json) => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| Value::Object(table.header.iter().zip(r).map(|(h, v)| (h.to_string(), json!(v))).collect()))
                .collect();
            envelope("figures", config_json(common, json!({ "figure": figure.name() })), json!(rows), json!([]))
        }
        _ => table.to_csv(),
    };
    Ok(Outcome::ok(body))
}

pub fn verify(common: &Common, suite: &str) -> Result<Outcome, Failure> {
    let registry = SuiteRegistry::standard();
    let mut ctx = VerifyContext::new(common.seed, common.shots);
    for (name, value) in &common.tol {
        ctx = ctx.with_tolerance(name.clone(), *value);
    }
    let report = registry.run(suite, &ctx)?;
    let body = match common.format {
        Some(Format::Json) => {
            let checks = serde_json::to_value(&report.checks).expect("serializable");
            envelope(
                "verify",
                config_json(common, json!({ "suite": suite })),
                json!({ "passed": report.passed(), "failures": report.failures(), "total": report.checks.len() }),
                checks,
            )
        }
        Some(Format::Csv) => {
            let mut s = csv_line(&["name,value,expected,tolerance,relation,pass".into()]);
            for c in &report.checks {
                let relation = serde_json::to_value(c.relation).expect("serializable");
                s.push_str(&csv_line(&[
                    format!("\"{}\"", c.name.replace('"', "\"\"")),
                    g12(c.value),
                    g12(c.expected),
                    g12(c.tolerance),
                    relation.as_str().unwrap_or_default().to_string(),
                    c.pass.to_string(),
                ]));
            }
            s
        }
        None => report.to_text(),
    };
    Ok(Outcome { body, checks_failed: !report.passed() })
}

pub fn capacity(common: &Common, etas: Option<&str>, continuity: bool) -> Result<Outcome, Failure> {
    let values: Vec<f64> = match etas {
        Some(list) => list
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| Failure::Usage(format!("bad eta value '{p}'"))))
            .collect::<Result<_, _>>()?,
        None => {
            let n = common.grid as usize;
            (0..n).map(|k| k as f64 / (n - 1) as f64).collect()
        }
    };
    let bounds = values.iter().map(|&e| q_upper_bound(e, continuity)).collect::<Result<Vec<_>, _>>()?;
    let body = match common.format {
        Some(Format::Json) => envelope(
            "capacity",
            config_json(common, json!({ "continuity": continuity })),
            serde_json::to_value(&bounds).expect("serializable"),
            json!([]),
        ),
        _ => {
            let mut header = vec!["eta".to_string(), "regime".into(), "bound".into()];
            if continuity {
                header.push("conditional_bound".into());
            }
            let mut s = csv_line(&header);
            for b in &bounds {
                let regime = serde_json::to_value(b.regime).expect("serializable");
                let mut row = vec![g12(b.eta), regime.as_str().unwrap_or_default().to_string(), g12(b.bound)];
                if let Some(c) = b.conditional_linear_bound {
                    row.push(g12(c));
                }
                s.push_str(&csv_line(&row));
            }
            s
        }
    };
    Ok(Outcome::ok(body))
}

pub fn teleport(common: &Common, spec: &StateSpec) -> Result<Outcome, Failure> {
    let psi = parse_state(spec)?;
    let run = run_teleport_clone(&psi, common.shots, &mut seeded_rng(common.seed))?;
    let f_bob = fidelity_pure(&run.bob_average, &psi)?;
    let f_sampled = fidelity_pure(&run.bob_sampled, &psi)?;
    let phi = run.group_frequency(KrausGroupLabel::Phi);
    let body = match common.format {
        Some(Format::Json) => {
            let outcomes: Vec<Value> = BellOutcome::ALL
                .iter()
                .enumerate()
                .map(|(k, o)| json!({ "outcome": o.label(), "count": run.counts[k], "probability": run.probabilities[k] }))
                .collect();
            envelope(
                "teleport",
                config_json(common, json!({ "input_bloch": bloch_json(&psi.projector().bloch()?) })),
                json!({
                    "outcomes": outcomes,
                    "phi_group_frequency": phi,
                    "bob_average": density_json(&run.bob_average),
                    "charlie_average": density_json(&run.charlie_average),
                    "bob_sampled": density_json(&run.bob_sampled),
                    "bob_fidelity": f_bob,
                    "bob_sampled_fidelity": f_sampled,
                }),
                json!([]),
            )
        }
        Some(Format::Csv) => {
            let mut s = csv_line(&["outcome,count,probability,frequency".into()]);
            for (k, o) in BellOutcome::ALL.iter().enumerate() {
                let freq = run.counts[k] as f64 / run.shots as f64;
                s.push_str(&csv_line(&[
                    o.label().into(),
                    run.counts[k].to_string(),
                    g12(run.probabilities[k]),
                    g12(freq),
                ]));
            }
            s
        }
        None => {
            let mut s = format!("shots: {}\n", run.shots);
            for (k, o) in BellOutcome::ALL.iter().enumerate() {
                s.push_str(&format!(
                    "{}: count {} probability {}\n",
                    o.label(),
                    run.counts[k],
                    g12(run.probabilities[k])
                ));
            }
            s.push_str(&format!("Phi group frequency: {}\n", g12(phi)));
            s.push_str("bob average:\n");
            s.push_str(&matrix_text(run.bob_average.matrix(), "  "));
            s.push_str(&format!("F(bob): {}\nF(bob, sampled): {}\n", g12(f_bob), g12(f_sampled)));
            s
        }
    };
    Ok(Outcome::ok(body))
}
