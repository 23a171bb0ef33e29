use num_traits::ToPrimitive;
use proptest::prelude::*;

use sparse_maxcut::first_moment;
use sparse_maxcut::gauss::{self, QuadSpec, WedgeParams};
use sparse_maxcut::graph::{self, Cut, MultiGraph};
use sparse_maxcut::oracles::{self, OccupancySpec};
use sparse_maxcut::second_moment::{self, SecondMomentConfig};
use sparse_maxcut::Error;

fn ln_q(theta: f64, a1: f64, a2: f64) -> f64 {
    gauss::q_integral(
        &WedgeParams::new(theta, a1, a2).unwrap(),
        &QuadSpec::default(),
    )
    .unwrap()
    .ln_value
}

fn multigraph() -> impl Strategy<Value = MultiGraph> {
    (1usize..14).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n)
            .prop_map(move |e| MultiGraph::new(n, e).unwrap())
    })
}

fn graph_and_sides() -> impl Strategy<Value = (MultiGraph, Vec<bool>)> {
    multigraph().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), prop::collection::vec(any::<bool>(), n))
    })
}

proptest! {
    #[test]
    fn q_is_monotone(theta in -4.0f64..3.0, a1 in 0.05f64..5.0, a2 in 0.0f64..4.0, h in 0.01f64..0.5) {
        let base = ln_q(theta, a1, a2);
        prop_assert!(ln_q(theta + h, a1, a2) > base);
        prop_assert!(ln_q(theta, a1, a2 + h) > base);
        prop_assert!(ln_q(theta, a1 + h, a2) < base);
    }

    #[test]
    fn q_log_is_consistent(theta in -30.0f64..5.0, a1 in 0.0f64..8.0, a2 in 0.0f64..6.0) {
        let v = gauss::q_integral(&WedgeParams::new(theta, a1, a2).unwrap(), &QuadSpec::default()).unwrap();
        if v.value > 1e-300 {
            prop_assert!((v.value.ln() - v.ln_value).abs() <= 1e-9);
        }
    }

    #[test]
    fn q_theta_and_shift_derivatives_agree(theta in -3.0f64..2.0, a1 in 0.1f64..4.0, a2 in 0.0f64..3.0) {
        let h = 1e-5;
        let d_theta = (ln_q(theta + h, a1, a2) - ln_q(theta - h, a1, a2)) / (2.0 * h);
        let d_shift = (ln_q(theta, a1, a2 + h) - ln_q(theta, a1, a2 - h)) / (2.0 * h);
        prop_assert!((d_theta - d_shift).abs() <= 1e-6);
    }

    #[test]
    fn unit_slope_closed_form(theta in -4.0f64..3.0, a2 in 0.0f64..4.0) {
        let lhs = ln_q(theta, 1.0, a2).exp() / std::f64::consts::PI;
        let e = 1.0 + gauss::erf((theta + a2) / 2.0);
        prop_assert!((lhs - e * e / 4.0).abs() <= 1e-10);
    }

    #[test]
    fn cut_value_recounts((g, side) in graph_and_sides()) {
        let cut = Cut::new(&g, side).unwrap();
        prop_assert_eq!(cut.value, cut.recount(&g));
        prop_assert!(cut.is_consistent(&g));
        prop_assert!(cut.value <= g.non_loop_count());
    }

    #[test]
    fn degree_sum_is_twice_edge_count(g in multigraph()) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.m());
        prop_assert_eq!(g.loop_count() + g.non_loop_count(), g.m());
    }

    #[test]
    fn flip_search_climbs_to_local_optimum((g, side) in graph_and_sides(), seed in any::<u64>()) {
        let init = Cut::new(&g, side).unwrap();
        let (cut, trace) = graph::local_flip_trace(&g, &init, seed).unwrap();
        prop_assert!(graph::is_locally_optimal(&g, &cut));
        prop_assert!(2 * cut.value >= g.non_loop_count());
        prop_assert!(trace.len() <= g.m());
        let mut values = vec![init.value];
        values.extend(trace.iter().copied());
        prop_assert!(values.windows(2).all(|w| w[0] < w[1]), "{:?}", values);
        prop_assert_eq!(*values.last().unwrap(), cut.value);
        prop_assert_eq!(cut.value, cut.recount(&g));
    }

    #[test]
    fn generator_respects_shape(n in 1usize..50, m in 0usize..120, seed in any::<u64>()) {
        let g = graph::gen_config_multigraph(n, m, seed).unwrap();
        prop_assert_eq!((g.n(), g.m()), (n, m));
        prop_assert!(g.edges().iter().all(|&(u, v)| u < n && v < n));
        prop_assert_eq!(g, graph::gen_config_multigraph(n, m, seed).unwrap());
    }

    #[test]
    fn graph_text_round_trip(g in multigraph()) {
        let text = graph::io::format_graph(&g);
        prop_assert_eq!(graph::io::parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn k2_nonincreasing_in_second_group(n in 1usize..5, mu1 in 0usize..7, mu2 in 0usize..6) {
        let a = oracles::k2_exact(&OccupancySpec::new(n, vec![mu1, mu2])).unwrap();
        let b = oracles::k2_exact(&OccupancySpec::new(n, vec![mu1, mu2 + 1])).unwrap();
        prop_assert!(b <= a);
    }

    #[test]
    fn poissonization_holds(t in prop::collection::vec(0usize..5, 1..5)) {
        let mu = t.iter().sum();
        let p = oracles::poissonization_identity(t.len(), mu, &t).unwrap();
        prop_assert_eq!(p.lhs, p.rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_stays_in_bracket(x in 0.37613f64..0.58870) {
        let s = first_moment::solve_theta(x, 1e-12).unwrap();
        prop_assert!(s.theta > -x && s.theta < 0.0);
        prop_assert!(s.residual.abs() <= 1e-12);
    }

    #[test]
    fn w_strictly_decreasing(x1 in 0.37613f64..0.58870, x2 in 0.37613f64..0.58870) {
        prop_assume!((x1 - x2).abs() > 1e-6);
        let (lo, hi) = if x1 < x2 { (x1, x2) } else { (x2, x1) };
        prop_assert!(first_moment::w_value(lo).unwrap() > first_moment::w_value(hi).unwrap());
    }

    #[test]
    fn saddle_residuals_and_symmetry(x in 0.40f64..0.58, beta in 0.02f64..0.48) {
        let a = second_moment::solve_saddle(x, beta, 1e-11).unwrap();
        prop_assert!(a.t >= 0.0 && a.t <= x);
        prop_assert!(a.max_residual() <= 1e-7, "{:?}", a.residuals);
        let b = second_moment::solve_saddle(x, 0.5 - beta, 1e-11).unwrap();
        prop_assert!((a.w_big - b.w_big).abs() <= 1e-9);
        prop_assert!((a.t - (x - b.t)).abs() <= 1e-6);
        // pointwise W can sit far below 2w; only the value at β = 1/4 attains it
        let two_w = 2.0 * first_moment::w_value(x).unwrap();
        let quarter = second_moment::solve_saddle(x, 0.25, 1e-11).unwrap();
        prop_assert!(quarter.w_big - two_w >= -1e-9);
        prop_assert!(quarter.w_big >= a.w_big - 1e-9 || x > 0.475);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn t_residual_decreases(x in 0.40f64..0.58, beta in 0.03f64..0.47) {
        let cfg = SecondMomentConfig::default();
        let ts: Vec<f64> = (1..=16).map(|i| x * (i as f64 - 0.5) / 16.0).collect();
        // a diverging tilt near an end stands for the infinite limit there
        let r: Vec<f64> = ts
            .iter()
            .map(|&t| match second_moment::t_residual(x, beta, t, &cfg) {
                Ok(v) => v,
                Err(Error::Divergence { .. }) if t < x / 2.0 => f64::INFINITY,
                Err(Error::Divergence { .. }) => f64::NEG_INFINITY,
                Err(e) => panic!("{e}"),
            })
            .collect();
        prop_assert!(r.iter().filter(|v| v.is_finite()).count() >= 8, "{:?}", r);
        prop_assert!(r.windows(2).all(|w| w[0] > w[1] || (w[0].is_infinite() && w[0] == w[1])), "{:?}", r);
    }
}

fn ln_poisson(lam: f64, k: usize) -> f64 {
    -lam + k as f64 * lam.ln() - (1..=k).map(|i| (i as f64).ln()).sum::<f64>()
}

/// `P[B ≥ C]` for independent Poisson variables with means `l1`, `l2`.
fn poisson_ge(l1: f64, l2: f64) -> f64 {
    let mut cdf = 0.0;
    let mut total = 0.0;
    for k in 0..=80 {
        cdf += ln_poisson(l2, k).exp();
        total += ln_poisson(l1, k).exp() * cdf;
    }
    total
}

fn golden_min(lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    for _ in 0..80 {
        let (c, d) = (b - g * (b - a), a + g * (b - a));
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}

#[test]
fn k2_over_tilted_poisson_bound_is_sublinear() {
    // μ₁ = 2n, μ₂ = n. For any means λ, K ≤ P_λ[B ≥ C]ⁿ / (P_λ[ΣB = μ₁] P_λ[ΣC = μ₂]);
    // at the tightest λ the remaining factor is only polynomial in n.
    let (a, b) = (2.0, 1.0);
    let phi = |l1: f64, l2: f64| poisson_ge(l1, l2).ln() + l1 - a * l1.ln() + l2 - b * l2.ln();
    let mut lam = (a, b);
    for _ in 0..30 {
        lam.0 = golden_min(0.5, 5.0, |l| phi(l, lam.1));
        lam.1 = golden_min(0.05, 3.0, |l| phi(lam.0, l));
    }
    let p = poisson_ge(lam.0, lam.1);
    let d: Vec<f64> = (2..=10)
        .map(|n| {
            let k = oracles::k2_exact(&OccupancySpec::new(n, vec![2 * n, n])).unwrap();
            let nf = n as f64;
            k.to_f64().unwrap().ln() - nf * p.ln()
                + ln_poisson(nf * lam.0, 2 * n)
                + ln_poisson(nf * lam.1, n)
        })
        .collect();
    assert!(d.iter().all(|v| *v <= 1e-9), "bound violated: {d:?}");
    let steps: Vec<f64> = d.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(
        steps.windows(2).all(|w| w[1].abs() < w[0].abs()),
        "{steps:?}"
    );
    assert!(
        steps.last().unwrap().abs() < 0.5 * steps[0].abs(),
        "{steps:?}"
    );
}

#[test]
fn w_matches_envelope_grid_search() {
    for x in [0.40, 0.47523, 0.55] {
        let w = first_moment::w_value(x).unwrap();
        let best = (0..=40_000)
            .map(|i| {
                let theta = -2.0 + 1e-4 * i as f64;
                -theta * theta - gauss::ln_one_plus_erf(2.0 * x + theta)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let envelope = -2.0 * x * x - best;
        assert!((w - envelope).abs() <= 1e-6, "x = {x}: {w} vs {envelope}");
    }
}
