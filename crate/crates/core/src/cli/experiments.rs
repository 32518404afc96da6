//! Dispatch from an [`Experiment`] to the library, producing CSV and JSON artifacts.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use super::config::{Experiment, ExperimentConfig, SetSpec};
use crate::error::{Error, Result};
use crate::explore::{
    centred_block, check_invariants, derive_params, exact_merge, practical_params, run_exploration, Arena, DeriveOptions,
    Mode, PracticalOptions,
};
use crate::graph::{generate, FiniteGraph, GraphSpec};
use crate::iso::{geometry_check, phi_of_set, phi_profile, radius_of, radius_schedule, ProfileOptions};
use crate::percolation::{coupling_check, exact_coupling_residual};
use crate::renorm;
use crate::rng::stream_id;
use crate::sets::{VertexId, VertexSet};
use crate::tail::{analytic_bound, collect_mass_experiment, fit_decay, solve_v_n, tail_curves, PhiModel};
use crate::{curve::TailCurve, explore};

/// One output file body, before the config-hash comment is attached.
pub enum Artifact {
    Csv { name: String, body: String },
    Json { name: String, value: Value },
}

fn csv(name: &str, body: String) -> Artifact {
    Artifact::Csv { name: name.into(), body }
}

fn js(name: &str, value: Value) -> Artifact {
    Artifact::Json { name: name.into(), value }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn need(x: Option<f64>, what: &str) -> Result<f64> {
    x.ok_or_else(|| Error::invalid(format!("percolation.{what} is required by this experiment")))
}

fn graph_of(cfg: &ExperimentConfig) -> Result<(GraphSpec, FiniteGraph)> {
    let spec = cfg.graph.clone().ok_or_else(|| Error::invalid("a [graph] section is required by this experiment"))?;
    let g = generate(&spec)?;
    Ok((spec, g))
}

fn resolve_set(g: &FiniteGraph, s: &SetSpec) -> Result<VertexSet> {
    let set = match s {
        SetSpec::Origin => g.vertex_set([g.origin()]),
        SetSpec::Block { half_side } => centred_block(g, *half_side)?,
        SetSpec::Coords { points } => {
            let mut out = g.empty_vertex_set();
            for x in points {
                out.insert(g.vertex_at(x).ok_or_else(|| Error::invalid(format!("point {x:?} is not in the graph")))?);
            }
            out
        }
        SetSpec::Ids { ids } => {
            if ids.iter().any(|&v| v as usize >= g.vertex_count()) {
                return Err(Error::invalid("vertex id out of range"));
            }
            g.vertex_set(ids.iter().map(|&v| VertexId(v)))
        }
    };
    if set.is_empty() {
        return Err(Error::invalid("vertex set is empty"));
    }
    Ok(set)
}

fn curve_csv(c: &TailCurve) -> String {
    c.csv_rows()
}

fn halve_grid(grid: &[u64]) -> Vec<u64> {
    let mut g: Vec<u64> = grid.iter().map(|&n| (n / 2).max(1)).collect();
    g.dedup();
    g
}

/// `fast` halves tail grids and truncation radii.
pub fn run_experiment(cfg: &ExperimentConfig, seed: u64, fast: bool) -> Result<Vec<Artifact>> {
    let perc = &cfg.percolation;
    let out = match &cfg.experiment {
        Experiment::PhiProfile { n_max, exhaustive_max_n } => {
            let spec = cfg.graph.clone().ok_or_else(|| Error::invalid("a [graph] section is required by this experiment"))?;
            let mut opts = ProfileOptions::default();
            if let Some(m) = exhaustive_max_n {
                opts.exhaustive_max_n = *m;
            }
            let prof = phi_profile(&spec, *n_max, &opts)?;
            let mut body = String::from("n,phi\n");
            for (n, v) in &prof.exact {
                let _ = writeln!(body, "{n},{v}");
            }
            vec![csv("phi_profile.csv", body), js("phi_profile.json", to_value(&prof))]
        }
        Experiment::PhiOfSet { set, steps } => {
            let (_, g) = graph_of(cfg)?;
            let s = resolve_set(&g, set)?;
            let rad = radius_of(&g, &s).ok_or_else(|| Error::precondition("set is unreachable from the origin"))?;
            let cert = phi_of_set(&g, &s, &radius_schedule(rad, *steps))?;
            let mut body = String::from("R,value\n");
            for (r, v) in &cert.history {
                let _ = writeln!(body, "{r},{v}");
            }
            vec![csv("phi_of_set.csv", body), js("phi_of_set.json", to_value(&cert))]
        }
        Experiment::GeometryCheck { set, epsilon } => {
            let (_, g) = graph_of(cfg)?;
            let s = resolve_set(&g, set)?;
            let diag = geometry_check(&g, &s, *epsilon)?;
            let mut body = String::from("k,r\n");
            for (k, r) in diag.radii.iter().enumerate() {
                let _ = writeln!(body, "{k},{}", r.map_or(String::from("none"), |r| r.to_string()));
            }
            vec![csv("geometry_check.csv", body), js("geometry_check.json", to_value(&diag))]
        }
        Experiment::LayersCheck { samples, exact_edges } => {
            let (_, g) = graph_of(cfg)?;
            let (p, q) = (need(perc.p, "p")?, need(perc.q, "q")?);
            let check = coupling_check(&g, p, q, *samples, seed)?;
            let exact = exact_edges.map(|m| exact_coupling_residual(p, q, m)).transpose()?;
            let mut body = String::from("edge,frequency,q,samples\n");
            for (e, f) in &check.frequencies {
                let _ = writeln!(body, "{e},{f:.12e},{q},{samples}");
            }
            vec![
                csv("layers_check.csv", body),
                js("layers_check.json", json!({ "p": p, "q": q, "samples": samples, "max_z": check.max_z, "exact_tv_residual": exact })),
            ]
        }
        Experiment::VolumeTail { radius, grid, samples } | Experiment::RadiusTail { radius, grid, samples } => {
            let (_, g) = graph_of(cfg)?;
            let p = need(perc.p, "p")?;
            let volume = matches!(cfg.experiment, Experiment::VolumeTail { .. });
            let (grid, radius) = if fast { (halve_grid(grid), (*radius / 2).max(1)) } else { (grid.clone(), *radius) };
            let (v, r) = if volume {
                tail_curves(&g, p, &grid, &[], radius, *samples, seed)?
            } else {
                tail_curves(&g, p, &[], &grid, radius, *samples, seed)?
            };
            let (c, name) = if volume { (v, "volume_tail") } else { (r, "radius_tail") };
            vec![csv(&format!("{name}.csv"), curve_csv(&c)), js(&format!("{name}.json"), to_value(&c))]
        }
        Experiment::DecayFit { radius, grid, samples, curve, model, profile_n_max } => {
            let (spec, g) = graph_of(cfg)?;
            let p = need(perc.p, "p")?;
            let (grid, radius) = if fast { (halve_grid(grid), (*radius / 2).max(1)) } else { (grid.clone(), *radius) };
            let model = match model {
                Some(m) => m.clone(),
                None => PhiModel::from_profile(&phi_profile(&spec, *profile_n_max, &ProfileOptions::default())?),
            };
            let c = match curve.as_str() {
                "volume" => tail_curves(&g, p, &grid, &[], radius, *samples, seed)?.0,
                "radius" => tail_curves(&g, p, &[], &grid, radius, *samples, seed)?.1,
                other => return Err(Error::invalid(format!("unknown curve `{other}` (volume or radius)"))),
            };
            let (phi_fit, n_fit) = fit_decay(&c, &model)?;
            vec![
                csv("decay_curve.csv", curve_csv(&c)),
                js("decay_fit.json", json!({ "curve": c, "model": model, "phi_fit": phi_fit, "n_fit": n_fit })),
            ]
        }
        Experiment::Psi { set, radii, samples } => {
            let (_, g) = graph_of(cfg)?;
            let q = need(perc.q, "q")?;
            let s = resolve_set(&g, set)?;
            let est = explore::estimate_psi(&s, q, &g, radii, *samples, seed)?;
            let mut body = String::new();
            for (i, c) in est.curves.iter().enumerate() {
                let rows = c.csv_rows();
                let mut lines = rows.lines();
                if i == 0 {
                    let _ = writeln!(body, "{}", lines.next().unwrap_or_default().replace("n,", "t,"));
                } else {
                    lines.next();
                }
                for l in lines {
                    let _ = writeln!(body, "{l}");
                }
            }
            vec![csv("psi.csv", body), js("psi.json", to_value(&est))]
        }
        Experiment::MergeBound { set, t, samples } => {
            let (_, g) = graph_of(cfg)?;
            let (p, q) = (need(perc.p, "p")?, need(perc.q, "q")?);
            let s = resolve_set(&g, set)?;
            let shell = explore::far_shell(&g);
            let mc = explore::verify_merge_bound(&g, &s, &shell, p, q, *t, *samples, seed)?;
            let exact = if g.edge_count() <= 12 { Some(exact_merge(&g, &s, &shell, p, q, *t)?) } else { None };
            let body = format!(
                "p,q,epsilon,t,frequency,ci_low,ci_high,bound,samples\n{p},{q},{:.12e},{t},{:.12e},{:.12e},{:.12e},{:.12e},{samples}\n",
                mc.epsilon, mc.frequency.estimate, mc.frequency.lower, mc.frequency.upper, mc.bound
            );
            vec![csv("merge_bound.csv", body), js("merge_bound.json", json!({ "monte_carlo": mc, "exact": exact }))]
        }
        Experiment::Explore { set, radius, t, runs, mode, r, ell, delta, estimator_samples, r_max } => {
            let (_, g) = graph_of(cfg)?;
            let (p, q) = (need(perc.p, "p")?, need(perc.q, "q")?);
            let eps = perc.epsilon.unwrap_or(0.5);
            let s = resolve_set(&g, set)?;
            let params = match mode {
                Mode::Practical => practical_params(
                    p,
                    q,
                    eps,
                    &g,
                    &PracticalOptions { r: *r, ell: *ell, delta: *delta, estimator_samples: *estimator_samples },
                )?,
                Mode::Rigorous => derive_params(
                    p,
                    q,
                    eps,
                    &g,
                    &DeriveOptions { alpha: None, samples: *estimator_samples, r_max: r_max.unwrap_or(8), seed },
                )?,
            };
            let arena = Arena::new(Arc::new(g), s, *radius, *t)?;
            let mut body = String::from("run,seed,status,rounds,final_touches,invariants\n");
            let mut transcripts = Vec::new();
            let mut reached = 0u64;
            for i in 0..*runs {
                let run_seed = stream_id("explore-run", &[seed, i]);
                let st = run_exploration(&arena, &params, run_seed)?;
                let inv = check_invariants(&st, &arena, &params);
                reached += u64::from(st.reached());
                let status = serde_json::to_value(st.status).expect("status serializes");
                let _ = writeln!(
                    body,
                    "{i},{run_seed},{},{},{},{}",
                    status.as_str().unwrap_or_default(),
                    st.rounds.len(),
                    st.touches.last().copied().unwrap_or(0),
                    if inv.is_ok() { "ok".to_string() } else { inv.clone().unwrap_err().replace(',', ";") }
                );
                transcripts.push(json!({ "run": i, "invariants": inv.err(), "state": st }));
            }
            vec![
                csv("explore_runs.csv", body),
                js("explore.json", json!({ "params": params, "runs": runs, "reached": reached, "transcripts": transcripts })),
            ]
        }
        Experiment::VN { size_s, c, model, n_max, degree } => {
            let sched = solve_v_n(*size_s, *c, model, *n_max, *degree)?;
            let bound = analytic_bound(*size_s, *c, model);
            let mut body = String::from("n,v_n\n");
            for (n, v) in sched.v.iter().enumerate() {
                let _ = writeln!(body, "{n},{v:.15e}");
            }
            vec![csv("v_n.csv", body), js("v_n.json", json!({ "schedule": sched, "bound": bound }))]
        }
        Experiment::CollectMass { set, c, n_max, samples, model, profile_n_max } => {
            let (spec, g) = graph_of(cfg)?;
            let p = need(perc.p, "p")?;
            let s = resolve_set(&g, set)?;
            let model = match model {
                Some(m) => m.clone(),
                None => PhiModel::from_profile(&phi_profile(&spec, *profile_n_max, &ProfileOptions::default())?),
            };
            let rep = collect_mass_experiment(&g, &s, p, *c, &model, *n_max, *samples, seed)?;
            let mut body = String::from("n,v_n\n");
            for (n, v) in rep.schedule.v.iter().enumerate() {
                let _ = writeln!(body, "{n},{v:.15e}");
            }
            vec![csv("collect_mass.csv", body), js("collect_mass.json", to_value(&rep))]
        }
        Experiment::BlockScan { d, k, n_grid, c, samples, uniqueness } => {
            let p = need(perc.p, "p")?;
            let mut body = String::from("d,k,n,C,event,estimate,ci_low,ci_high,samples\n");
            let mut rows = Vec::new();
            for &n in n_grid {
                let conn = renorm::block_connection_prob(p, *k, n, *c, *d, *samples, seed)?;
                let _ = writeln!(body, "{d},{k},{n},{c},connection,{:.12e},{:.12e},{:.12e},{samples}", conn.estimate, conn.lower, conn.upper);
                let uniq = if *uniqueness { Some(renorm::uniqueness_event_prob(p, *d, *k, n, *samples, seed)?) } else { None };
                if let Some(u) = &uniq {
                    let _ = writeln!(body, "{d},{k},{n},{c},uniqueness,{:.12e},{:.12e},{:.12e},{samples}", u.estimate, u.lower, u.upper);
                }
                rows.push(json!({ "n": n, "connection": conn, "uniqueness": uniq }));
            }
            vec![csv("block_scan.csv", body), js("block_scan.json", json!({ "p": p, "d": d, "k": k, "C": c, "rows": rows }))]
        }
        Experiment::CoarseGrain { d, k, n, c, window, samples } => {
            let p = need(perc.p, "p")?;
            let cg = renorm::coarse_grain(p, *d, *k, *n, *c, *window, *samples, seed)?;
            let mut body = String::from("edge,u,v,marginal,samples\n");
            for (i, (&(u, v), m)) in cg.edges.iter().zip(&cg.marginals).enumerate() {
                let _ = writeln!(body, "{i},{u},{v},{m:.12e},{samples}");
            }
            vec![csv("coarse_marginals.csv", body), js("coarse_grain.json", to_value(&cg))]
        }
        Experiment::DensityScan { d, k, n_grid, delta, samples } => {
            let p = need(perc.p, "p")?;
            let rows = renorm::gm_density_scan(p, *d, *k, n_grid, *delta, *samples, seed)?;
            let mut body = String::from("n,C,i,density,se,fill,all_dense,some_pair_meets,violations,samples\n");
            for r in &rows {
                for i in 0..r.c as usize {
                    let _ = writeln!(
                        body,
                        "{},{},{i},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{},{}",
                        r.n, r.c, r.density_mean[i], r.density_se[i], r.fill_mean[i], r.all_dense.estimate, r.some_pair_meets.estimate, r.violations, r.samples
                    );
                }
            }
            vec![csv("density_scan.csv", body), js("density_scan.json", to_value(&rows))]
        }
        Experiment::SlabCrossing { d, ell, lengths, samples } => {
            let p = need(perc.p, "p")?;
            let diag = renorm::slab_crossing(*d, *ell, p, lengths, *samples, seed)?;
            let mut body = String::from("L,thickness,estimate,ci_low,ci_high,samples\n");
            for row in &diag.rows {
                for (j, pr) in row.by_thickness.iter().enumerate() {
                    let _ = writeln!(body, "{},{j},{:.12e},{:.12e},{:.12e},{samples}", row.length, pr.estimate, pr.lower, pr.upper);
                }
            }
            vec![csv("slab_crossing.csv", body), js("slab_crossing.json", to_value(&diag))]
        }
        Experiment::HalfSpace { d, n, c0, samples } => {
            let p = need(perc.p, "p")?;
            let rep = renorm::half_space_touch_fraction(*d, p, *n, *c0, *samples, seed)?;
            let body = format!(
                "d,n,mean_fraction,se,c0,at_least_c0,samples\n{d},{n},{:.12e},{:.12e},{c0},{:.12e},{samples}\n",
                rep.mean_fraction, rep.std_err, rep.at_least_c0.estimate
            );
            vec![csv("half_space.csv", body), js("half_space.json", to_value(&rep))]
        }
    };
    Ok(out)
}
