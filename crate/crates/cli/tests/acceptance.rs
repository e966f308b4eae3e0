//! End-to-end acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail in this
//! simulator; they are still evaluated and reported as FAIL. The run errors
//! on any unexpected failure and on any known failure that starts passing.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gut_core::explore::{energy_utility, AgentState, ArenaConfig, CombatParams, Command as Order, Side, Vec2, WorldState};
use gut_core::gut::{descend, fixed_levels_tree, flatten, joint_probability, random_levels};
use gut_core::harness::suites::{table4_scenario, table5_scenario, table8_scenario};
use gut_core::harness::{run_batch, two_mountains, BatchSummary, ScenarioConfig, THREADS_ENV};
use gut_core::matgame::{best_response_gap, find_pure_saddle, solve, solve_mixed, PayoffMatrix, DEFAULT_EPS};
use gut_core::policy::{predict_linear, predict_poly, InfoMode, PolicyKind, RegressionCoeffs};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(criterion, reason)` for criteria this simulator does not meet.
const KNOWN_FAILURES: &[(usize, &str)] = &[(
    9,
    "with random aliens the two-obstacle arena lowers explorer energy and HP costs at equal win rate",
)];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> PayoffMatrix {
    let entries = (0..rows * cols).map(|_| rng.random_range(-10.0..=10.0)).collect();
    PayoffMatrix::new(rows, cols, entries).unwrap()
}

/// Exhaustive saddle search: a cell that is the minimum of its row and the
/// maximum of its column.
fn has_saddle(m: &PayoffMatrix) -> bool {
    (0..m.rows()).any(|r| {
        (0..m.cols()).any(|c| {
            let v = m.get(r, c);
            (0..m.cols()).all(|k| m.get(r, k) >= v) && (0..m.rows()).all(|g| m.get(g, c) <= v)
        })
    })
}

fn solver_soundness() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst_gap, mut saddles, mut worst_saddle) = (0.0f64, 0, 0.0f64);
    for _ in 0..500 {
        let (r, c) = (rng.random_range(2..=6), rng.random_range(2..=6));
        let m = random_matrix(&mut rng, r, c);
        let Ok(s) = solve(&m, DEFAULT_EPS) else {
            return verdict(false, "solver error");
        };
        let (gr, gc) = best_response_gap(&m, &s.row_strategy, &s.col_strategy).unwrap();
        worst_gap = worst_gap.max(gr).max(gc);
        if has_saddle(&m) {
            saddles += 1;
            let Some(p) = find_pure_saddle(&m) else {
                return verdict(false, "saddle missed");
            };
            let mixed = solve_mixed(&m, DEFAULT_EPS).unwrap();
            worst_saddle = worst_saddle.max((p.value - mixed.value).abs());
        }
    }
    let t = start.elapsed();
    verdict(
        worst_gap <= 1e-6 && worst_saddle <= 1e-9 && t < Duration::from_secs(10),
        format!("max gap {worst_gap:.1e}, {saddles} saddles, max value diff {worst_saddle:.1e}, {t:.2?}"),
    )
}

fn canonical_games() -> Verdict {
    let pennies = solve(&PayoffMatrix::from_rows(&[[1.0, -1.0], [-1.0, 1.0]]).unwrap(), DEFAULT_EPS).unwrap();
    let rps = solve(
        &PayoffMatrix::from_rows(&[[0.0, -1.0, 1.0], [1.0, 0.0, -1.0], [-1.0, 1.0, 0.0]]).unwrap(),
        DEFAULT_EPS,
    )
    .unwrap();
    let near = |s: &[f64], p: f64| s.iter().all(|x| (x - p).abs() <= 1e-9);
    let ok = pennies.value.abs() <= 1e-9
        && near(pennies.row_strategy.probabilities(), 0.5)
        && near(pennies.col_strategy.probabilities(), 0.5)
        && rps.value.abs() <= 1e-9
        && near(rps.row_strategy.probabilities(), 1.0 / 3.0)
        && near(rps.col_strategy.probabilities(), 1.0 / 3.0);
    verdict(ok, format!("pennies value {:.1e}, rps value {:.1e}", pennies.value, rps.value))
}

fn descent_positivity() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut min_p, mut worst_gap) = (f64::INFINITY, 0.0f64);
    for _ in 0..1000 {
        let depth = rng.random_range(1..=4);
        let shapes: Vec<(usize, usize)> = (0..depth).map(|_| (rng.random_range(2..=4), rng.random_range(2..=4))).collect();
        let tree = fixed_levels_tree(&shapes).unwrap();
        let ctx = random_levels(&shapes, &mut rng);
        let Ok(series) = descend(&tree, &ctx, DEFAULT_EPS) else {
            return verdict(false, "descent error");
        };
        min_p = min_p.min(joint_probability(&series));
        for l in &series.levels {
            let (gr, gc) = best_response_gap(&l.payoffs, &l.solution.row_strategy, &l.solution.col_strategy).unwrap();
            worst_gap = worst_gap.max(gr).max(gc);
        }
    }
    let t = start.elapsed();
    verdict(
        min_p > 0.0 && worst_gap <= DEFAULT_EPS && t < Duration::from_secs(30),
        format!("min joint probability {min_p:.3e}, max level gap {worst_gap:.1e}, {t:.2?}"),
    )
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

fn tree_speedup() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let shapes = [(3, 3); 3];
    let tree = fixed_levels_tree(&shapes).unwrap();
    let (mut gut, mut flat) = (Vec::new(), Vec::new());
    for _ in 0..100 {
        let ctx = random_levels(&shapes, &mut rng);
        let m = flatten(&tree, &ctx).unwrap();
        assert_eq!((m.rows(), m.cols()), (27, 27));
        let t = Instant::now();
        std::hint::black_box(descend(&tree, &ctx, DEFAULT_EPS).unwrap());
        gut.push(t.elapsed());
        let t = Instant::now();
        std::hint::black_box(solve(&m, DEFAULT_EPS).unwrap());
        flat.push(t.elapsed());
    }
    let (g, f) = (median(gut), median(flat));
    let ratio = g.as_secs_f64() / f.as_secs_f64();
    verdict(ratio <= 0.5, format!("descend {g:.2?} vs flat {f:.2?}, ratio {ratio:.3}"))
}

/// Composite Simpson rule for the Gaussian-weighted linear integrand.
fn gaussian_mean(n: usize, m: usize, d: f64, b0: f64, b1: f64) -> f64 {
    let (lo, hi, steps) = (d - 12.0, d + 12.0, 4000);
    let h = (hi - lo) / steps as f64;
    let f = |x: f64| {
        let z = x - d;
        (b0 + b1 * (n as f64 - m as f64) * x) * (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
    };
    let mut s = f(lo) + f(hi);
    for i in 1..steps {
        s += f(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn energy_closed_form() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (n, m) = (rng.random_range(1..=30), rng.random_range(1..=30));
        let d = rng.random_range(0.0..10.0);
        let (b0, b1) = (rng.random_range(-5.0..5.0), rng.random_range(-2.0..2.0));
        worst = worst.max((energy_utility(n, m, d, b0, b1) - gaussian_mean(n, m, d, b0, b1)).abs());
    }
    verdict(worst <= 1e-6, format!("max deviation {worst:.1e}"))
}

fn combat_bookkeeping() -> Verdict {
    let duel = || {
        let agents = vec![
            AgentState::new(0, Side::Explorer, Vec2::new(1.0, 1.0), 1.0, 0.5),
            AgentState::new(1, Side::Alien, Vec2::new(1.2, 1.0), 1.0, 0.5),
        ];
        WorldState::new(ArenaConfig::default(), agents, 10, 0.05).unwrap()
    };
    let p = CombatParams::default();
    let mut ok = true;
    // Explorer strikes alone, alien strikes alone, then both at once.
    for (e_hits, a_hits) in [(true, false), (false, true), (true, true)] {
        let mut w = duel();
        let mut orders = Vec::new();
        if e_hits {
            orders.push((0, Order::attack(1)));
        }
        if a_hits {
            orders.push((1, Order::attack(0)));
        }
        gut_core::explore::step(&mut w, &orders, &p).unwrap();
        let (e, a) = (&w.agents[0], &w.agents[1]);
        ok &= e.energy == if e_hits { 100.0 - 0.01 } else { 100.0 };
        ok &= a.hp == if e_hits { 100.0 - 0.05 } else { 100.0 };
        ok &= a.energy == if a_hits { 100.0 - 0.03 } else { 100.0 };
        ok &= e.hp == if a_hits { 100.0 - 0.15 } else { 100.0 };
    }
    verdict(ok, "explorer -0.01 energy / -0.15 HP, alien -0.03 energy / -0.05 HP")
}

fn predictors() -> Verdict {
    let quiet = RegressionCoeffs {
        noise: 0.0,
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let lin = predict_linear(1.0, 0.0, &quiet, &mut rng);
    let poly = predict_poly(10.0, 10.0, &quiet, &mut rng);
    let ok = (lin.e_uc - 0.08).abs() <= 1e-12
        && (lin.e_el - 100.0).abs() <= 1e-12
        && (poly.e_uc - 0.31).abs() <= 1e-12
        && (poly.e_el - 99.996).abs() <= 1e-12;
    verdict(
        ok,
        format!("linear ({}, {}), poly ({}, {})", lin.e_uc, lin.e_el, poly.e_uc, poly.e_el),
    )
}

fn batch(cfg: &ScenarioConfig) -> BatchSummary {
    run_batch(cfg).unwrap_or_else(|e| panic!("{}: {e}", cfg.name))
}

fn table4() -> Verdict {
    let start = Instant::now();
    let wr = |e, a, p| batch(&table4_scenario(e, a, p, 0)).win_rate;
    let (nc, pc, fc) = (
        wr(20, 30, PolicyKind::GutNC),
        wr(20, 30, PolicyKind::GutPC),
        wr(20, 30, PolicyKind::GutFC),
    );
    let strong: Vec<f64> = [
        PolicyKind::GutNC,
        PolicyKind::GreedyQmixPC,
        PolicyKind::GutPC,
        PolicyKind::GutFC,
    ]
    .into_iter()
    .map(|p| wr(30, 20, p))
    .collect();
    let t = start.elapsed();
    let soft = |v: f64, target: f64| if (v - target).abs() <= 0.2 { "in" } else { "out" };
    verdict(
        fc > pc && pc >= nc && strong.iter().all(|&w| w >= 0.9) && t < Duration::from_secs(600),
        format!(
            "20v30 FC {fc:.2} > PC {pc:.2} >= NC {nc:.2} (soft targets: FC {}, PC {}, NC {}); 30v20 {strong:?}; {t:.1?}",
            soft(fc, 0.7),
            soft(pc, 0.5),
            soft(nc, 0.4)
        ),
    )
}

fn table5() -> Verdict {
    let runs: Vec<(BatchSummary, BatchSummary)> = InfoMode::ALL
        .iter()
        .map(|&info| {
            let open = table5_scenario(25, 25, info, 0);
            let mut walled = open.clone();
            walled.arena.obstacles = two_mountains();
            (batch(&open), batch(&walled))
        })
        .collect();
    let wr: Vec<f64> = runs.iter().map(|(o, _)| o.win_rate).collect();
    let ordered = wr[0] >= wr[1] && wr[1] >= wr[2];
    let mut obstacle_ok = true;
    let mut notes = Vec::new();
    for (o, w) in &runs {
        obstacle_ok &= w.win_rate <= o.win_rate
            && w.mean_system_energy_cost >= o.mean_system_energy_cost
            && w.mean_system_hp_cost >= o.mean_system_hp_cost;
        notes.push(format!(
            "{}: WR {:.2}->{:.2}, C_e {:.0}->{:.0}, C_hp {:.0}->{:.0}",
            o.info, o.win_rate, w.win_rate, o.mean_system_energy_cost, w.mean_system_energy_cost, o.mean_system_hp_cost, w.mean_system_hp_cost
        ));
    }
    verdict(
        ordered && obstacle_ok,
        format!("WR {wr:?} ordered={ordered}; obstacles [{}]", notes.join("; ")),
    )
}

fn table8() -> Verdict {
    let run = |p| batch(&table8_scenario(4, 3, true, p, 0));
    let (r, g, u) = (
        run(PolicyKind::RandomBaseline),
        run(PolicyKind::GreedyOneLevel),
        run(PolicyKind::GutFC),
    );
    let ok = u.win_rate >= g.win_rate
        && g.win_rate >= r.win_rate
        && u.explorers_lost_per_round <= g.explorers_lost_per_round
        && g.explorers_lost_per_round <= r.explorers_lost_per_round;
    verdict(
        ok,
        format!(
            "WR GUT {:.2} / Greedy {:.2} / Random {:.2}; lost GUT {:.1} / Greedy {:.1} / Random {:.1}",
            u.win_rate, g.win_rate, r.win_rate, u.explorers_lost_per_round, g.explorers_lost_per_round, r.explorers_lost_per_round
        ),
    )
}

fn cli_batch(threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_gut"))
        .args(["batch", "--suite", "paper-table4", "--seed", "0"])
        .env(THREADS_ENV, threads)
        .output()
        .expect("run gut");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn reproducibility() -> Verdict {
    let runs = [cli_batch("1"), cli_batch("1"), cli_batch("4")];
    let same = runs.iter().all(|r| r == &runs[0]) && !runs[0].is_empty();
    verdict(same, format!("{} bytes, threads 1/1/4", runs[0].len()))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("solver soundness", solver_soundness),
        ("canonical games", canonical_games),
        ("descent positivity", descent_positivity),
        ("tree vs flat timing", tree_speedup),
        ("energy utility closed form", energy_closed_form),
        ("combat bookkeeping", combat_bookkeeping),
        ("predictor values", predictors),
        ("cooperation ordering", table4),
        ("information ordering and obstacles", table5),
        ("baseline ordering", table8),
        ("reproducible batch output", reproducibility),
    ];
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        let v = check();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n);
        let tag = if v.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {n:>2}. {name}: {}", v.detail);
        match (v.pass, known) {
            (false, Some((_, why))) => println!("        known failure: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => {
                println!("        listed as a known failure but passed; update KNOWN_FAILURES");
                unexpected += 1;
            }
            (true, None) => {}
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
