use landspec_core::extensions::{stability_matrix, unbalanced_path};
use landspec_core::monetary::{
    determinacy_report, monetary_assumptions, solve_bgp_monetary, solve_landless,
};
use landspec_core::open::{
    epsilon_bar, simulate as simulate_open, solve_bgp, temporary_shock, Belief, OpenModel,
    PathState, PhiStart,
};
use landspec_core::statics::{default_grid, linspace, proposition_suite, sign_map};
use landspec_core::table::{real, Table};
use landspec_core::{
    check_assumptions, scenario, AssumptionReport, Economy, ModelError, Param, ScenarioParams,
};
use rayon::prelude::*;

use crate::args::{
    BeliefArg, CheckArgs, Common, EconomyArg, SimulateArgs, SolveArgs, SweepArgs, WrtArg,
};
use crate::output::{resolve_outdir, Outdir};
use crate::Failure;

fn load(common: &Common) -> Result<(ScenarioParams, Outdir), Failure> {
    let params = scenario::load(&common.scenario)?;
    let out = Outdir::create(resolve_outdir(&common.out))?;
    Ok((params, out))
}

fn pick_economy(params: &ScenarioParams, flag: Option<EconomyArg>) -> Result<Economy, Failure> {
    let economy = match flag {
        Some(EconomyArg::Open) => Economy::Open,
        Some(EconomyArg::Monetary) => Economy::Monetary,
        None => match (params.gross_r.is_some(), params.gross_mu.is_some()) {
            (true, false) => Economy::Open,
            (false, true) => Economy::Monetary,
            _ => {
                return Err(Failure::usage(
                    "scenario sets both r and mu; choose one with --economy",
                ))
            }
        },
    };
    if !params.supports(economy) {
        let key = match economy {
            Economy::Open => "r",
            Economy::Monetary => "mu",
        };
        return Err(Failure::usage(format!(
            "the {economy} economy needs `{key}` in the scenario"
        )));
    }
    Ok(economy)
}

fn bool_str(b: bool) -> String {
    b.to_string()
}

fn assumption_rows(table: &mut Table, economy: Economy, rep: &AssumptionReport) {
    for r in &rep.records {
        table.push(vec![
            economy.to_string(),
            r.id.to_string(),
            bool_str(r.holds),
            real(r.lhs),
            real(r.rhs),
            real(r.slack),
        ]);
    }
}

fn assumption_table() -> Table {
    Table::new(&["economy", "id", "holds", "lhs", "rhs", "slack"])
}

pub fn solve(args: &SolveArgs) -> Result<(), Failure> {
    let (params, out) = load(&args.common)?;
    let economy = pick_economy(&params, args.economy)?;
    out.manifest("solve", &args.common.scenario)?;
    let mut assumptions = assumption_table();
    match economy {
        Economy::Open => {
            let pre = check_assumptions(&params, economy, None);
            assumption_rows(&mut assumptions, economy, &pre);
            out.write("assumptions.csv", &assumptions)?;
            let bgp = solve_bgp(&params)?;
            let eps_bar = epsilon_bar(&params.with_epsilon(0.0))?;
            let mut t = Table::new(&[
                "economy",
                "epsilon",
                "phi_star",
                "gross_growth",
                "g_star",
                "gross_r",
                "phi_bar",
                "residual",
                "land_gdp_ratio",
                "rx_star",
                "lambda",
                "capital_leverage",
                "land_downpayment",
                "epsilon_bar",
            ]);
            t.push(vec![
                economy.to_string(),
                real(params.epsilon),
                real(bgp.phi_star),
                real(bgp.gross_growth),
                real(bgp.gross_growth - 1.0),
                real(params.gross_r()?),
                real(bgp.phi_bar),
                real(bgp.residual),
                real(bgp.land_gdp_ratio),
                real(bgp.rx_star),
                real(bgp.returns.lambda),
                real(bgp.returns.capital_leverage),
                real(bgp.returns.land_downpayment),
                real(eps_bar),
            ]);
            out.write("bgp.csv", &t)?;

            let model = OpenModel::new(&params)?;
            let mut map = Table::new(&["phi_t", "phi_next"]);
            let top = 0.999 * bgp.phi_bar;
            for i in 0..=200 {
                let phi = top * i as f64 / 200.0;
                map.push(vec![real(phi), real(model.map(phi))]);
            }
            out.write("phi_map.csv", &map)?;
            println!(
                "open: phi* = {:.10}  1+g* = {:.10}  Rx* = {:.10}  phi_bar = {:.10}",
                bgp.phi_star, bgp.gross_growth, bgp.rx_star, bgp.phi_bar
            );
        }
        Economy::Monetary => {
            let result = solve_bgp_monetary(&params);
            let phi = result.as_ref().ok().map(|b| b.phi_star);
            assumption_rows(
                &mut assumptions,
                economy,
                &monetary_assumptions(&params, phi),
            );
            out.write("assumptions.csv", &assumptions)?;
            let bgp = result?;
            let landless = solve_landless(&params)?;
            let optional = |x: Option<f64>| real(x.unwrap_or(f64::NAN));
            let mut t = Table::new(&[
                "economy",
                "epsilon",
                "phi_star",
                "gross_growth",
                "g_star",
                "gross_r",
                "r_star",
                "rc",
                "credit_gdp",
                "min_e",
                "money_coefficient",
                "q0m0_per_k0",
                "residual",
                "rx_star",
                "landless_gross_r",
                "landless_gross_growth",
            ]);
            t.push(vec![
                economy.to_string(),
                real(params.epsilon),
                real(bgp.phi_star),
                real(bgp.gross_growth),
                real(bgp.gross_growth - 1.0),
                real(bgp.gross_r),
                real(bgp.gross_r - 1.0),
                real(bgp.ordering.rc),
                real(bgp.credit_gdp),
                real(bgp.min_e),
                optional(bgp.money_coefficient),
                optional(bgp.money_coefficient.map(|c| c * params.productivity())),
                real(bgp.residual),
                real(bgp.returns.rx),
                real(landless.gross_r),
                real(landless.gross_growth),
            ]);
            out.write("bgp.csv", &t)?;

            let det = determinacy_report(&params)?;
            let mut d = Table::new(&[
                "e",
                "j11",
                "j12",
                "j21",
                "j22",
                "modulus_small",
                "modulus_large",
                "locally_determinate",
                "inconclusive",
            ]);
            d.push(vec![
                real(det.e),
                real(det.jacobian[0][0]),
                real(det.jacobian[0][1]),
                real(det.jacobian[1][0]),
                real(det.jacobian[1][1]),
                real(det.eigen_moduli.0),
                real(det.eigen_moduli.1),
                bool_str(det.locally_determinate),
                bool_str(det.inconclusive),
            ]);
            out.write("determinacy.csv", &d)?;
            println!(
                "monetary: phi* = {:.10}  1+r* = {:.10}  1+g* = {:.10}  credit/GDP = {:.10}",
                bgp.phi_star, bgp.gross_r, bgp.gross_growth, bgp.credit_gdp
            );
        }
    }
    Ok(())
}

fn wrt_param(w: WrtArg) -> Param {
    match w {
        WrtArg::Theta => Param::Theta,
        WrtArg::ThetaX => Param::ThetaX,
        WrtArg::R => Param::R,
        WrtArg::Mu => Param::Mu,
        WrtArg::Epsilon => Param::Epsilon,
    }
}

pub fn sweep(args: &SweepArgs) -> Result<(), Failure> {
    let (params, out) = load(&args.common)?;
    let economy = pick_economy(&params, args.economy)?;
    let wrt = wrt_param(args.wrt);
    if !wrt.applies_to(economy) {
        return Err(Failure::usage(format!(
            "--wrt {wrt} does not apply to the {economy} economy"
        )));
    }
    if !(args.eps_from.is_finite() && args.eps_from >= 0.0) {
        return Err(Failure::usage("--eps-from must be a finite number >= 0"));
    }
    let eps_to = match args.eps_to {
        Some(v) => v,
        None => *default_grid(&params, economy, 2)?.last().unwrap_or(&1.0),
    };
    if !(eps_to.is_finite() && eps_to >= args.eps_from) {
        return Err(Failure::usage("--eps-to must be finite and >= --eps-from"));
    }
    let eps = linspace(args.eps_from, eps_to, args.steps);
    out.manifest("sweep", &args.common.scenario)?;

    let run = || {
        let records = sign_map(&params, economy, wrt, &eps);
        let levels: Vec<Option<(f64, f64, f64, f64)>> = match economy {
            Economy::Monetary => eps
                .par_iter()
                .map(|&e| {
                    solve_bgp_monetary(&params.with_epsilon(e))
                        .ok()
                        .map(|b| (b.phi_star, b.gross_r, b.gross_growth, b.credit_gdp))
                })
                .collect(),
            Economy::Open => Vec::new(),
        };
        (records, levels)
    };
    let (records, levels) = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Failure::usage(format!("cannot start thread pool: {e}")))?
            .install(run),
        None => run(),
    };

    let mut t = Table::new(&[
        "epsilon",
        "g_star",
        "phi_star",
        "gross_r",
        "derivative",
        "sign",
        "feasible",
        "reason",
    ]);
    for r in &records {
        t.push(vec![
            real(r.epsilon),
            real(r.gross_growth - 1.0),
            real(r.phi_star),
            real(r.gross_r),
            real(r.derivative),
            r.sign.to_string(),
            bool_str(r.feasible),
            r.reason.clone(),
        ]);
    }
    out.write("sweep.csv", &t)?;

    if economy == Economy::Monetary {
        let mut m = Table::new(&[
            "epsilon",
            "theta",
            "theta_x",
            "mu",
            "phi_star",
            "gross_r",
            "gross_growth",
            "credit_gdp",
        ]);
        for (e, lv) in eps.iter().zip(&levels) {
            let (phi, r, g, c) = lv.unwrap_or((f64::NAN, f64::NAN, f64::NAN, f64::NAN));
            m.push(vec![
                real(*e),
                real(params.theta),
                real(params.theta_x),
                real(Param::Mu.get(&params)),
                real(phi),
                real(r),
                real(g),
                real(c),
            ]);
        }
        out.write("monetary_sweep.csv", &m)?;
    }
    let feasible = records.iter().filter(|r| r.feasible).count();
    println!(
        "sweep: {} points, {feasible} feasible, d(1+g*)/d{wrt}",
        records.len()
    );
    Ok(())
}

fn path_row(p: &PathState) -> Vec<String> {
    vec![
        p.t.to_string(),
        real(p.k),
        real(p.p),
        real(p.phi),
        real(p.g),
        real(p.w),
        real(p.y),
    ]
}

const PATH_HEADER: [&str; 7] = ["t", "K", "P", "phi", "g", "w", "Y"];

pub fn simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let (params, out) = load(&args.common)?;
    let economy = pick_economy(&params, args.economy)?;
    out.manifest("simulate", &args.common.scenario)?;
    if economy == Economy::Monetary {
        return simulate_monetary(&params, args, &out);
    }
    if let Some(d) = args.d {
        let up = unbalanced_path(&params, d, args.n0, args.periods)?;
        let pv = up.price_over_value(d);
        let mut t = Table::new(&["t", "phi", "n", "g", "P_over_V"]);
        for (i, s) in up.path.iter().enumerate() {
            t.push(vec![
                i.to_string(),
                real(s.phi),
                real(s.n),
                real(up.growth[i] - 1.0),
                real(pv[i]),
            ]);
        }
        out.write("unbalanced.csv", &t)?;
        let stab = stability_matrix(&params, d)?;
        println!(
            "unbalanced: phi0 = {:.10}  phi** = {:.10}  converged = {}  trace = {:.10}  det = {:.10}",
            up.phi0, up.phi_double_star, up.converged, stab.trace, stab.det
        );
        return Ok(());
    }
    if let Some(eps_high) = args.shock_eps {
        let s = args
            .shock_at
            .ok_or_else(|| Failure::usage("--shock-eps needs --shock-at"))?;
        let belief = match args.belief {
            BeliefArg::BelievedPermanent => Belief::BelievedPermanent,
            BeliefArg::AnticipatedTemporary => Belief::AnticipatedTemporary,
        };
        let sp = temporary_shock(&params, eps_high, s, args.k0, args.periods, belief)?;
        let mut header = vec!["branch"];
        header.extend(PATH_HEADER);
        let mut t = Table::new(&header);
        for (branch, path) in [("baseline", &sp.baseline), ("shocked", &sp.shocked)] {
            for p in path.iter() {
                let mut row = vec![branch.to_string()];
                row.extend(path_row(p));
                t.push(row);
            }
        }
        out.write("path.csv", &t)?;
        println!("shock: epsilon {} -> {eps_high} at t = {s}", params.epsilon);
        return Ok(());
    }
    let start = match args.phi0 {
        Some(phi) => PhiStart::Explicit(phi),
        None => PhiStart::JumpToBgp,
    };
    let path = simulate_open(&params, args.k0, args.periods, start)?;
    let mut t = Table::new(&PATH_HEADER);
    for p in &path {
        t.push(path_row(p));
    }
    out.write("path.csv", &t)?;
    println!("path: {} periods", args.periods);
    Ok(())
}

fn simulate_monetary(
    params: &ScenarioParams,
    args: &SimulateArgs,
    out: &Outdir,
) -> Result<(), Failure> {
    if args.d.is_some() || args.shock_eps.is_some() || args.phi0.is_some() {
        return Err(Failure::usage(
            "--d, --shock-eps and --phi0 apply to the open economy only",
        ));
    }
    if args.periods < 1 || args.k0.is_nan() || args.k0 <= 0.0 {
        return Err(ModelError::InvalidArgument("need periods >= 1 and k0 > 0".into()).into());
    }
    let bgp = solve_bgp_monetary(params)?;
    let a_big = params.productivity();
    let s = params.dividend_ratio();
    let mu = Param::Mu.get(params);
    let mut header = PATH_HEADER.to_vec();
    header.extend(["gross_r", "QM", "transfer"]);
    let mut t = Table::new(&header);
    let mut k = args.k0;
    for step in 0..=args.periods {
        let ak = a_big * k;
        let qm = bgp.money_coefficient.map_or(f64::NAN, |c| c * ak);
        let state = PathState {
            t: step,
            k,
            p: bgp.phi_star * ak,
            phi: bgp.phi_star,
            g: bgp.gross_growth - 1.0,
            w: (1.0 - params.alpha) * ak,
            y: (1.0 + s) * ak,
        };
        let mut row = path_row(&state);
        row.extend([real(bgp.gross_r), real(qm), real(mu * qm)]);
        t.push(row);
        k *= bgp.gross_growth;
    }
    out.write("path.csv", &t)?;
    println!("monetary path: {} periods", args.periods);
    Ok(())
}

pub fn check(args: &CheckArgs) -> Result<(), Failure> {
    let (params, out) = load(&args.common)?;
    out.manifest("check", &args.common.scenario)?;
    let economies: Vec<Economy> = match args.economy {
        Some(_) => vec![pick_economy(&params, args.economy)?],
        None => [Economy::Open, Economy::Monetary]
            .into_iter()
            .filter(|e| params.supports(*e))
            .collect(),
    };
    let reports: Vec<(Economy, AssumptionReport)> = economies
        .iter()
        .map(|&economy| {
            let rep = match economy {
                Economy::Open => check_assumptions(&params, economy, None),
                Economy::Monetary => {
                    let phi = solve_bgp_monetary(&params).ok().map(|b| b.phi_star);
                    monetary_assumptions(&params, phi)
                }
            };
            (economy, rep)
        })
        .collect();
    let all_hold = reports.iter().all(|(_, r)| r.all_hold());
    let mut assumptions = assumption_table();
    for (economy, rep) in &reports {
        assumption_rows(&mut assumptions, *economy, rep);
    }
    out.write("assumptions.csv", &assumptions)?;

    let open = economies.contains(&Economy::Open).then_some(&params);
    let monetary = economies.contains(&Economy::Monetary).then_some(&params);
    let suite = proposition_suite(open, monetary);
    let mut props = Table::new(&["id", "claim", "value", "pass", "error"]);
    for c in &suite.checks {
        props.push(vec![
            c.id.clone(),
            c.claim.clone(),
            real(c.value),
            bool_str(c.pass),
            c.error.clone().unwrap_or_default(),
        ]);
    }
    out.write("propositions.csv", &props)?;

    println!("economy    id   holds             lhs            rhs");
    for (economy, rep) in &reports {
        for r in &rep.records {
            println!(
                "{:<10} {:<4} {:<6} {:>14.6e} {:>14.6e}",
                economy.to_string(),
                r.id.to_string(),
                r.holds,
                r.lhs,
                r.rhs
            );
        }
    }
    println!();
    println!("{:<36} {:<28} {:>14} pass", "id", "claim", "value");
    for c in &suite.checks {
        println!("{:<36} {:<28} {:>14.6e} {}", c.id, c.claim, c.value, c.pass);
    }
    if all_hold && suite.all_pass() {
        Ok(())
    } else {
        Err(Failure {
            code: Failure::CHECK,
            message: "one or more checks failed".into(),
        })
    }
}
