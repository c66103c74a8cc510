//! One function per subcommand. Each returns `Ok(false)` when a checked
//! claim fails, and an [`InputError`](crate::output::InputError) for bad input.

use anyhow::{Context, Result};
use hiddenq::calibration::{calibrated_ptms, full_tuneup, gate_fidelities, CalibratedGateSet, GateFidelities, TuneupOptions};
use hiddenq::controllability::{
    controllability_claims, hidden_reachability, lie_closure, reachability_claims, two_qubit_gate,
    verify_sqrt_swap_completeness, Claim, GeneratorSpec, DEFAULT_MAX_DEPTH,
};
use hiddenq::device::DeviceModel;
use hiddenq::qcore::ptm::average_fidelity_ptm;
use hiddenq::qvolume::{default_grids, layer_cost, qv_map as build_qv_map, sample_pairing, GridTopology, OpKind, QvConfig};
use hiddenq::tomography::{
    collect_gate_datasets, gauge_fix, ptm_to_csv, qpt_lstsq, self_consistent_qpt, GateSetEstimate, SelfConsistentOptions,
    TomoGate,
};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::output::{emit, input_error, load_config, num, require_seed, sibling, to_csv, to_json};
use crate::{Format, RunArgs};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorConfig {
    generators: Vec<GeneratorSpec>,
}

#[derive(Debug, Serialize)]
struct ClosureReport {
    generators: Vec<String>,
    dimension: usize,
    universal: bool,
}

#[derive(Debug, Serialize)]
struct ClaimReport {
    claims: Vec<Claim>,
    all_hold: bool,
}

fn emit_claims(args: &RunArgs, claims: Vec<Claim>) -> Result<bool> {
    let all_hold = claims.iter().all(Claim::holds);
    for c in claims.iter().filter(|c| !c.holds()) {
        eprintln!("claim failed: {} (expected {}, observed {}; {})", c.name, c.expected, c.observed, c.detail);
    }
    let body = match args.format {
        Format::Json => to_json(&ClaimReport { claims, all_hold })?,
        Format::Csv => to_csv(
            &["claim", "expected", "observed", "holds", "detail"],
            claims.iter().map(|c| {
                vec![
                    c.name.clone(),
                    c.expected.to_string(),
                    c.observed.to_string(),
                    c.holds().to_string(),
                    c.detail.clone(),
                ]
            }),
        )?,
    };
    emit(args, &body)?;
    Ok(all_hold)
}

pub fn controllability(args: &RunArgs) -> Result<bool> {
    if let Some(cfg) = load_config::<GeneratorConfig>(args)? {
        let gens = cfg
            .generators
            .iter()
            .map(GeneratorSpec::build)
            .collect::<hiddenq::Result<Vec<_>>>()
            .map_err(|e| input_error(format!("bad generator: {e}")))?;
        let (dimension, _) = lie_closure(&gens, 15).map_err(|e| input_error(e.to_string()))?;
        let report = ClosureReport {
            generators: cfg.generators.iter().map(|g| g.label.clone()).collect(),
            dimension,
            universal: dimension == 15,
        };
        let body = match args.format {
            Format::Json => to_json(&report)?,
            Format::Csv => to_csv(
                &["generators", "dimension", "universal"],
                [vec![report.generators.join(";"), dimension.to_string(), report.universal.to_string()]],
            )?,
        };
        emit(args, &body)?;
        return Ok(true);
    }
    let mut claims = controllability_claims();
    claims.extend(reachability_claims(DEFAULT_MAX_DEPTH));
    let complete = verify_sqrt_swap_completeness();
    claims.push(Claim {
        name: "complete: sqrtSWAP alone and every pair of cPHASE, iSWAP, SWAP".into(),
        expected: true,
        observed: complete,
        detail: String::new(),
    });
    emit_claims(args, claims)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReachConfig {
    two_qubit: Vec<String>,
    #[serde(default = "default_depth")]
    max_depth: usize,
}

fn default_depth() -> usize {
    DEFAULT_MAX_DEPTH
}

pub fn reachability(args: &RunArgs) -> Result<bool> {
    let Some(cfg) = load_config::<ReachConfig>(args)? else {
        return emit_claims(args, reachability_claims(DEFAULT_MAX_DEPTH));
    };
    if let Some(bad) = cfg.two_qubit.iter().find(|n| two_qubit_gate(n).is_none()) {
        return Err(input_error(format!("unknown two-qubit gate '{bad}' (known: iSWAP, cPHASE, SWAP, sqrtSWAP)")));
    }
    let names: Vec<&str> = cfg.two_qubit.iter().map(String::as_str).collect();
    let report = hidden_reachability(&names, cfg.max_depth);
    let body = match args.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let labels = report.reachable.iter().map(|l| (l, true)).chain(report.unreachable.iter().map(|l| (l, false)));
            to_csv(
                &["pauli", "reachable", "witness"],
                labels.map(|(l, r)| {
                    let w = report.witness_sequences.get(l).map(|w| w.notation()).unwrap_or_default();
                    vec![l.clone(), r.to_string(), w]
                }),
            )?
        }
    };
    emit(args, &body)?;
    Ok(true)
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Preset {
    #[default]
    Default,
    Noiseless,
    Experimental,
}

/// Device and pipeline settings shared by `tuneup` and `qpt`.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct PipelineConfig {
    preset: Preset,
    /// Overrides the preset when present.
    model: Option<DeviceModel>,
    options: TuneupOptions,
    /// Shots per tomography outcome; exact probabilities when absent.
    tomography_shots: Option<u64>,
    lambda: Option<f64>,
    max_iter: Option<usize>,
}

impl PipelineConfig {
    fn load(args: &RunArgs) -> Result<(Self, DeviceModel)> {
        let mut cfg = load_config::<PipelineConfig>(args)?.unwrap_or_default();
        let model = match (&cfg.model, cfg.preset) {
            (Some(m), _) => m.clone(),
            (None, Preset::Default) => DeviceModel::default(),
            (None, Preset::Noiseless) => DeviceModel::noiseless(),
            (None, Preset::Experimental) => DeviceModel::experimental_regime(),
        };
        model.validate().map_err(|e| input_error(format!("device model: {e}")))?;
        cfg.options.validate().map_err(|e| input_error(format!("tune-up options: {e}")))?;
        if cfg.options.shots.is_some() || cfg.tomography_shots.is_some() {
            let seed = require_seed(args, "when shots are simulated")?;
            cfg.options.seed = seed;
        } else if let Some(seed) = args.seed {
            cfg.options.seed = seed;
        }
        if cfg.tomography_shots == Some(0) {
            return Err(input_error("tomography_shots must be positive"));
        }
        Ok((cfg, model))
    }
}

#[derive(Debug, Serialize)]
struct TuneupReport {
    gate_set: CalibratedGateSet,
    fidelities: GateFidelities,
}

pub fn tuneup(args: &RunArgs) -> Result<bool> {
    let (cfg, model) = PipelineConfig::load(args)?;
    let gate_set = full_tuneup(&model, &cfg.options).context("tune-up")?;
    let fidelities = gate_fidelities(&model, &gate_set).context("fidelity evaluation")?;
    let body = match args.format {
        Format::Json => to_json(&TuneupReport { gate_set, fidelities })?,
        Format::Csv => {
            let (s, c, f) = (&gate_set.iswap, &gate_set.cphase, &fidelities);
            let rows = [
                ("iswap_length", s.length),
                ("iswap_detuning", s.detuning),
                ("iswap_sigma", s.sigma),
                ("iswap_beta", s.beta),
                ("iswap_delta1", s.delta1),
                ("iswap_delta2", s.delta2),
                ("cphase_length", c.length),
                ("cphase_detuning", c.detuning),
                ("cphase_gamma01", c.gamma01),
                ("cphase_gamma10", c.gamma10),
                ("cphase_delta_at_zero", c.delta_at_zero),
                ("fidelity_x90", f.x90),
                ("fidelity_y90", f.y90),
                ("fidelity_iswap", f.iswap),
                ("fidelity_cphase", f.cphase),
                ("fidelity_gauge", f.gauge),
            ];
            to_csv(&["quantity", "value"], rows.iter().map(|(k, v)| vec![k.to_string(), num(*v)]))?
        }
    };
    emit(args, &body)?;
    Ok(true)
}

#[derive(Debug, Serialize)]
struct FidelityRow {
    gate: TomoGate,
    truth: f64,
    before: f64,
    after: f64,
}

#[derive(Debug, Serialize)]
struct QptReport {
    gates: Vec<FidelityRow>,
    gauge_phi: f64,
    residual_history: Vec<f64>,
}

fn file_label(g: TomoGate) -> &'static str {
    match g {
        TomoGate::X90 => "x90",
        TomoGate::Y90 => "y90",
        TomoGate::Iswap => "iswap",
        TomoGate::Cphase => "cphase",
    }
}

pub fn qpt(args: &RunArgs) -> Result<bool> {
    let (cfg, model) = PipelineConfig::load(args)?;
    let mut sc_opts = SelfConsistentOptions::default();
    if let Some(l) = cfg.lambda {
        if !(l > 0.0 && l <= 1.0) {
            return Err(input_error("lambda must lie in (0, 1]"));
        }
        sc_opts.lambda = l;
    }
    if let Some(n) = cfg.max_iter {
        sc_opts.max_iter = n;
    }

    let set = full_tuneup(&model, &cfg.options).context("tune-up")?;
    let truth_f = gate_fidelities(&model, &set).context("ground-truth fidelities")?;
    let truth = gauge_fix(&GateSetEstimate::from_processes(calibrated_ptms(&model, &set).context("ground-truth processes")?));
    let data =
        collect_gate_datasets(&model, &set, cfg.tomography_shots, cfg.options.seed).context("dataset collection")?;
    let ideal = GateSetEstimate::ideal();
    let first: Vec<_> = data
        .iter()
        .map(|d| qpt_lstsq(d, &ideal))
        .collect::<hiddenq::Result<_>>()
        .context("first-round QPT")?;
    let before = gauge_fix(&GateSetEstimate::from_processes([first[0], first[1], first[2], first[3]]));
    let after = self_consistent_qpt(&data, &sc_opts).context("self-consistent QPT")?;

    let truth_by_gate = [truth_f.x90, truth_f.y90, truth_f.iswap, truth_f.cphase];
    let rows: Vec<FidelityRow> = TomoGate::ALL
        .iter()
        .map(|&g| FidelityRow {
            gate: g,
            truth: truth_by_gate[g.index()],
            before: average_fidelity_ptm(before.get(g), ideal.get(g)),
            after: average_fidelity_ptm(after.get(g), ideal.get(g)),
        })
        .collect();

    if let Some(out) = &args.out {
        for g in TomoGate::ALL {
            for (stage, est) in [("truth", &truth), ("before", &before), ("after", &after)] {
                let path = sibling(out, &format!("ptm_{}_{stage}.csv", file_label(g)));
                std::fs::write(&path, ptm_to_csv(est.get(g))?).with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }
    let body = match args.format {
        Format::Json => to_json(&QptReport {
            gates: rows,
            gauge_phi: after.gauge_phi,
            residual_history: after.residual_history.clone(),
        })?,
        Format::Csv => to_csv(
            &["gate", "truth", "before", "after"],
            rows.iter().map(|r| {
                let gate = serde_json::to_value(r.gate).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
                vec![gate, num(r.truth), num(r.before), num(r.after)]
            }),
        )?,
    };
    emit(args, &body)?;
    Ok(true)
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct QvMapConfig {
    /// Explicit `[k, h]` grids; otherwise every default grid up to `max_lines`.
    grids: Option<Vec<[usize; 2]>>,
    max_lines: usize,
    samples: usize,
    /// Error models; the uniform and differential presets when absent.
    configs: Option<Vec<QvConfig>>,
}

impl Default for QvMapConfig {
    fn default() -> Self {
        QvMapConfig {
            grids: None,
            max_lines: 240,
            samples: 200,
            configs: None,
        }
    }
}

pub fn qv_map(args: &RunArgs) -> Result<bool> {
    let seed = require_seed(args, "for qv-map")?;
    let cfg = load_config::<QvMapConfig>(args)?.unwrap_or_default();
    let grids = match &cfg.grids {
        Some(g) => g
            .iter()
            .map(|&[k, h]| GridTopology::new(k, h))
            .collect::<hiddenq::Result<Vec<_>>>()
            .map_err(|e| input_error(e.to_string()))?,
        None => default_grids(cfg.max_lines),
    };
    if grids.is_empty() {
        return Err(input_error("no grids selected"));
    }
    let configs: Vec<QvConfig> = match cfg.configs {
        Some(cs) => cs.into_iter().map(|c| QvConfig { seed, ..c }).collect(),
        None => QvConfig::presets(cfg.samples, seed),
    };
    for c in &configs {
        c.validate().map_err(|e| input_error(format!("qv config: {e}")))?;
    }
    let map = build_qv_map(&grids, &configs).map_err(|e| input_error(e.to_string()))?;
    let body = match args.format {
        Format::Json => {
            let mut s = map.to_json()?;
            s.push('\n');
            s
        }
        Format::Csv => map.to_csv()?,
    };
    emit(args, &body)?;
    Ok(true)
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RouteConfig {
    k: usize,
    h: usize,
}

impl Default for RouteConfig {
    fn default() -> Self {
        RouteConfig { k: 2, h: 4 }
    }
}

fn kind_label(k: OpKind) -> &'static str {
    match k {
        OpKind::HiddenSwap => "hidden-swap",
        OpKind::GridSwap => "grid-swap",
        OpKind::Entangle => "entangle",
    }
}

pub fn route_demo(args: &RunArgs) -> Result<bool> {
    let seed = require_seed(args, "for route-demo")?;
    let cfg = load_config::<RouteConfig>(args)?.unwrap_or_default();
    let topo = GridTopology::new(cfg.k, cfg.h).map_err(|e| input_error(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairing = sample_pairing(&topo, &mut rng).map_err(|e| input_error(e.to_string()))?;
    let (_, _, plan) = layer_cost(&pairing, &topo).context("routing")?;
    plan.validate().context("plan replay")?;
    let body = match args.format {
        Format::Json => {
            let mut s = plan.to_json()?;
            s.push('\n');
            s
        }
        Format::Csv => to_csv(
            &["layer", "kind", "slot_a", "slot_b"],
            plan.layers.iter().enumerate().flat_map(|(i, layer)| {
                layer.iter().map(move |op| {
                    vec![i.to_string(), kind_label(op.kind).to_string(), op.slots[0].to_string(), op.slots[1].to_string()]
                })
            }),
        )?,
    };
    emit(args, &body)?;
    Ok(true)
}
