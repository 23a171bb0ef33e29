//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sparse_maxcut::gauss::{self, QuadSpec, WedgeParams};
use sparse_maxcut::graph::{self, named, Cut, MultiGraph};
use sparse_maxcut::oracles::{self, MomentQuery, OccupancySpec};
use sparse_maxcut::{first_moment, report, second_moment};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: sparse_maxcut::Error) -> String {
    e.to_string()
}

fn c1_upper_bound() -> Check {
    let start = Instant::now();
    let u = first_moment::solve_xu(1e-8).map_err(err)?;
    let dt = start.elapsed();
    ensure((u.x_u - 0.55909).abs() <= 5e-5, format!("x_u = {}", u.x_u))?;
    ensure(
        (u.theta_u + 0.11079).abs() <= 5e-5,
        format!("theta_u = {}", u.theta_u),
    )?;
    ensure(dt < Duration::from_secs(1), format!("took {dt:?}"))?;
    Ok(format!(
        "x_u = {:.7}, theta_u = {:.7}, {dt:.2?}",
        u.x_u, u.theta_u
    ))
}

fn c2_lower_bound() -> Check {
    let start = Instant::now();
    let r = report::bounds(Some(100.0), 1e-8, 1e-5).map_err(err)?;
    let dt = start.elapsed();
    ensure((r.x_l - 0.47523).abs() <= 2e-4, format!("x_l = {}", r.x_l))?;
    ensure(dt < Duration::from_secs(600), format!("took {dt:?}"))?;
    Ok(format!("x_l = {:.7}, {dt:.1?}", r.x_l))
}

fn c3_anchors() -> Check {
    let a = first_moment::w_value(0.3761).map_err(err)?;
    let b = first_moment::w_value(0.5887).map_err(err)?;
    ensure((a - 0.19721).abs() <= 1e-4, format!("w(0.3761) = {a}"))?;
    ensure((b + 0.05595).abs() <= 1e-4, format!("w(0.5887) = {b}"))?;
    Ok(format!("w(0.3761) = {a:.6}, w(0.5887) = {b:.6}"))
}

fn c4_quadrature_identity() -> Check {
    let q = QuadSpec::default();
    let mut worst = 0.0f64;
    for theta in [-3.0, -1.5, -0.4, 0.3, 1.2] {
        for a2 in [0.0, 0.25, 0.8, 1.7, 3.0] {
            let p = WedgeParams::new(theta, 1.0, a2).map_err(err)?;
            let lhs = gauss::q_integral(&p, &q).map_err(err)?.value / std::f64::consts::PI;
            let e = 1.0 + gauss::erf((theta + a2) / 2.0);
            worst = worst.max((lhs - e * e / 4.0).abs());
        }
    }
    ensure(worst <= 1e-10, format!("max deviation {worst:e}"))?;
    Ok(format!("25 points, max deviation {worst:.1e}"))
}

fn c5_quarter_consistency() -> Check {
    let mut worst = [0.0f64; 3];
    for x in [0.40, 0.47523, 0.55] {
        let s = second_moment::solve_saddle(x, 0.25, 1e-11).map_err(err)?;
        let f = first_moment::solve_theta(x, 1e-14).map_err(err)?;
        let d = [
            (s.theta1 - 2.0 * f.theta).abs(),
            (s.t - x / 2.0).abs(),
            (s.w_big - 2.0 * f.w).abs(),
        ];
        ensure(
            d[0] <= 1e-6 && d[1] <= 1e-6 && d[2] <= 1e-8,
            format!("x = {x}: deviations {d:?}"),
        )?;
        for (w, v) in worst.iter_mut().zip(d) {
            *w = w.max(v);
        }
    }
    Ok(format!(
        "max |theta1-2theta| = {:.1e}, |t-x/2| = {:.1e}, |W-2w| = {:.1e}",
        worst[0], worst[1], worst[2]
    ))
}

fn scan_max_gap(x: f64) -> std::result::Result<(f64, usize, Duration), String> {
    let start = Instant::now();
    let rows = second_moment::scan(x, 0.01, 0.49, 97).map_err(err)?;
    let dt = start.elapsed();
    let failed = rows.iter().filter(|r| r.gap.is_none()).count();
    let max = rows
        .iter()
        .filter_map(|r| r.gap)
        .fold(f64::NEG_INFINITY, f64::max);
    ensure(
        dt < Duration::from_secs(300),
        format!("scan at x = {x} took {dt:?}"),
    )?;
    Ok((max, failed, dt))
}

fn c6_scans() -> Check {
    let (g1, f1, t1) = scan_max_gap(0.47523)?;
    let (g2, f2, t2) = scan_max_gap(0.5)?;
    ensure(f1 == 0 && f2 == 0, format!("failed rows: {f1} and {f2}"))?;
    ensure(g1 <= 1e-4, format!("max gap at 0.47523 is {g1:e}"))?;
    ensure(g2 > 0.0, format!("max gap at 0.5 is {g2:e}"))?;
    Ok(format!(
        "max gap {g1:.2e} ({t1:.1?}) at x = 0.47523, {g2:.2e} ({t2:.1?}) at x = 0.5"
    ))
}

/// Counts assignments of labelled balls (group `j` has `mu[j]` balls) to `n`
/// bins whose per-bin group counts all satisfy `accept`.
fn enumerate(n: usize, mu: &[usize], accept: fn(&[usize]) -> bool) -> u64 {
    let groups = mu.len();
    let owner: Vec<usize> = mu
        .iter()
        .enumerate()
        .flat_map(|(j, &k)| std::iter::repeat_n(j, k))
        .collect();
    let mut bin = vec![0usize; owner.len()];
    let mut counts = vec![0usize; n * groups];
    for &j in &owner {
        counts[j] += 1;
    }
    let ok = |counts: &[usize]| counts.chunks_exact(groups).all(accept);
    let mut hits = ok(&counts) as u64;
    loop {
        let mut i = owner.len();
        loop {
            if i == 0 {
                return hits;
            }
            i -= 1;
            counts[bin[i] * groups + owner[i]] -= 1;
            bin[i] = (bin[i] + 1) % n;
            counts[bin[i] * groups + owner[i]] += 1;
            if bin[i] != 0 {
                break;
            }
        }
        hits += ok(&counts) as u64;
    }
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn state_space(n: usize, balls: usize) -> f64 {
    (n as f64).powi(balls as i32)
}

fn k2_accept(c: &[usize]) -> bool {
    c[0] >= c[1]
}

fn k4_accept(c: &[usize]) -> bool {
    c[1] as i64 - c[3] as i64 >= (c[0] as i64 - c[2] as i64).abs()
}

/// Every occupancy spec with `n^{Σμ} ≤ limit` for `n ≤ max_bins`; one bin
/// carries up to `max_one_bin` balls.
fn occupancy_specs(
    parts: usize,
    max_bins: usize,
    limit: f64,
    max_one_bin: usize,
) -> Vec<(usize, Vec<usize>)> {
    let mut specs = Vec::new();
    for n in 1..=max_bins {
        let mut s = 0;
        while (n == 1 && s <= max_one_bin) || (n > 1 && state_space(n, s) <= limit) {
            for mu in compositions(s, parts) {
                specs.push((n, mu));
            }
            s += 1;
        }
    }
    specs
}

fn c7_oracles() -> Check {
    let mut notes = Vec::new();

    // labelled-ball enumeration, independent of the DP
    for (parts, limit, exact) in [
        (2usize, 1e6, oracles::k2_exact as fn(&OccupancySpec) -> _),
        (4, 1e6, oracles::k4_exact),
    ] {
        let accept = if parts == 2 { k2_accept } else { k4_accept };
        let specs = occupancy_specs(parts, 12, limit, 12);
        for (n, mu) in &specs {
            let k = exact(&OccupancySpec::new(*n, mu.clone())).map_err(err)?;
            let s: usize = mu.iter().sum();
            let hits = enumerate(*n, mu, accept);
            let brute = BigRational::new(BigInt::from(hits), num_traits::pow(BigInt::from(*n), s));
            ensure(
                k == brute,
                format!("k{parts} mismatch at n = {n}, mu = {mu:?}: {k} vs {brute}"),
            )?;
        }
        notes.push(format!("k{parts} {} specs", specs.len()));
    }

    let mut poisson = 0;
    for n in 1..=4 {
        for mu in 0..=6 {
            for t in compositions(mu, n) {
                let p = oracles::poissonization_identity(n, mu, &t).map_err(err)?;
                ensure(
                    p.lhs == p.rhs,
                    format!("Poissonization fails at n = {n}, t = {t:?}"),
                )?;
                poisson += 1;
            }
        }
    }
    notes.push(format!("Poisson {poisson} vectors"));

    let mut worst_z = 0.0f64;
    for (n, m) in [(6usize, 6usize), (8, 8)] {
        let est = oracles::moment_mc(n, m, 1_000_000, 42).map_err(err)?;
        for zn in 0..=m {
            let q = MomentQuery::new(n, m, zn);
            let exact = oracles::first_moment_exact(&q).map_err(err)?;
            let z = est.first[zn].z_score(exact.total.to_f64().unwrap());
            ensure(z <= 3.0, format!("first moment ({n},{m},{zn}): z = {z}"))?;
            worst_z = worst_z.max(z);
            if n == 6 {
                let second = oracles::second_moment_exact(&q).map_err(err)?;
                let z = est.second[zn].z_score(second.to_f64().unwrap());
                ensure(z <= 3.0, format!("second moment ({n},{m},{zn}): z = {z}"))?;
                worst_z = worst_z.max(z);
            }
        }
    }
    notes.push(format!("MC max z {worst_z:.2}"));

    let mut queries = 0;
    for (n, m) in [(2usize, 2usize), (4, 3), (4, 4), (6, 6), (6, 8), (8, 8)] {
        for zn in 0..=m {
            let q = MomentQuery::new(n, m, zn);
            let first = oracles::first_moment_exact(&q).map_err(err)?.balanced;
            let second = oracles::second_moment_exact(&q).map_err(err)?;
            ensure(
                second >= &first * &first,
                format!("E[X^2] < E[X]^2 at {q:?}"),
            )?;
            queries += 1;
        }
    }
    notes.push(format!("E[X^2] >= E[X]^2 on {queries} queries"));
    Ok(notes.join(", "))
}

fn brute_force_cut_value(g: &MultiGraph) -> usize {
    (0..1u64 << g.n())
        .map(|mask| {
            g.edges()
                .iter()
                .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                .count()
        })
        .max()
        .unwrap_or(0)
}

fn c8_graphs() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    for trial in 0..200u64 {
        let n = rng.gen_range(2..=40);
        let m = rng.gen_range(0..=3 * n);
        let g = graph::gen_config_multigraph(n, m, trial).map_err(err)?;
        let init = Cut::new(&g, (0..n).map(|_| rng.gen()).collect()).map_err(err)?;
        let cut = graph::local_flip_search(&g, &init, trial).map_err(err)?;
        ensure(
            graph::is_locally_optimal(&g, &cut),
            format!("flip output not locally optimal (trial {trial})"),
        )?;
        ensure(
            2 * cut.value >= g.non_loop_count(),
            format!("flip value {} below m/2", cut.value),
        )?;
    }

    let mut maximizers = 0;
    for trial in 0..200u64 {
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(0..=2 * n);
        let g = graph::gen_config_multigraph(n, m, 10_000 + trial).map_err(err)?;
        let best = graph::maxcut_bruteforce(&g).map_err(err)?;
        for cut in best.cuts(&g) {
            ensure(
                graph::is_locally_optimal(&g, &cut),
                format!("max cut not locally optimal (trial {trial})"),
            )?;
            maximizers += 1;
        }
    }

    let mut cubic: Vec<MultiGraph> = vec![named::complete(4), named::k33(), named::petersen()];
    for _ in 0..100 {
        let n = 2 * rng.gen_range(2..=9);
        cubic.push(named::random_cubic(n, &mut rng).map_err(err)?);
    }
    for (i, g) in cubic.iter().enumerate() {
        let set = graph::max_induced_bipartite_bruteforce(g).map_err(err)?;
        let cut = graph::cubic_extend_coloring(g, &set, i as u64).map_err(err)?;
        let u = g.n() - set.len();
        ensure(
            2 * cut.value + 2 * u >= 3 * g.n(),
            format!("cubic graph {i}: value {} with u = {u}", cut.value),
        )?;
    }

    let p = named::petersen();
    let mc = graph::maxcut_bruteforce(&p).map_err(err)?.value;
    let direct = brute_force_cut_value(&p);
    ensure(
        mc == direct && mc == 12,
        format!("Petersen max cut {mc} vs enumeration {direct}"),
    )?;
    Ok(format!(
        "200 flip runs, {maximizers} maximizers, {} cubic graphs, Petersen max cut {mc}",
        cubic.len()
    ))
}

fn run_cli(args: &[&str], workers: Option<&str>) -> std::result::Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sparse-maxcut"));
    cmd.args(args).env_remove("SPARSE_MAXCUT_WORKERS");
    if let Some(k) = workers {
        cmd.env("SPARSE_MAXCUT_WORKERS", k);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure(
        out.status.success(),
        format!("{args:?} exited with {}", out.status),
    )?;
    Ok(out.stdout)
}

fn c9_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let petersen = dir.path().join("petersen.txt");
    graph::io::write_graph(&petersen, &named::petersen()).map_err(err)?;
    let petersen = petersen.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "simulate", "--n", "2000", "--c", "16", "--trials", "50", "--seed", "7",
        ],
        vec!["scan", "--x", "0.5", "--steps", "25"],
        vec![
            "oracle",
            "moment1",
            "--n",
            "6",
            "--m",
            "6",
            "--zn",
            "4",
            "--samples",
            "200000",
            "--seed",
            "9",
        ],
        vec![
            "oracle",
            "moment2",
            "--n",
            "6",
            "--m",
            "6",
            "--zn",
            "4",
            "--samples",
            "200000",
            "--seed",
            "9",
        ],
        vec!["cubic", "--graph", petersen, "--bruteforce", "--seed", "3"],
    ];
    for args in &commands {
        let reference = run_cli(args, None)?;
        for workers in [None, Some("1"), Some("2")] {
            let again = run_cli(args, workers)?;
            ensure(
                again == reference,
                format!("{args:?} differs with workers {workers:?}"),
            )?;
        }
    }
    Ok(format!(
        "{} seeded commands identical across runs and 1/2/default workers",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("upper-bound constant", c1_upper_bound),
        ("lower-bound constant", c2_lower_bound),
        ("first-moment anchors", c3_anchors),
        ("quadrature identity", c4_quadrature_identity),
        ("beta = 1/4 consistency", c5_quarter_consistency),
        ("beta scans", c6_scans),
        ("oracle equivalence", c7_oracles),
        ("graph properties", c8_graphs),
        ("determinism", c9_determinism),
    ];
    assert!(Path::new(env!("CARGO_BIN_EXE_sparse-maxcut")).exists());
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} acceptance criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", criteria.len());
}
