use std::collections::BTreeSet;

use intensity_core::distortion::{argmin, distortion_all, ExtendedValue};
use intensity_core::format::{format_profile, parse_profile};
use intensity_core::line::{d_branches, tal_from_counts, worst_case_metrics, LineCounts};
use intensity_core::lp::{solve, solve_zero_sum, LpOutcome, LpProblem, Relation, Sense};
use intensity_core::matching::{
    has_fractional_perfect_matching, matching_winner, positional_weights, DominationGraph, ScoringVector,
};
use intensity_core::metric::{check_consistency, social_cost, ConsistencyMode, MetricMatrix, ViolationKind};
use intensity_core::rational::{int, ratio};
use intensity_core::scoring_game::{distortion_bound, game_value};
use intensity_core::*;
use proptest::prelude::*;

fn alpha_strategy() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![ratio(1, 4), ratio(1, 2), ratio(3, 4), ratio(1, 3), ratio(9, 10)])
}

fn pref_strategy(m: usize) -> impl Strategy<Value = IntensivePreference> {
    (Just((0..m).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), m - 1)).prop_map(
        |(ranking, bits)| {
            let flags = bits.into_iter().map(|b| if b { Intensity::Intense } else { Intensity::Mild }).collect();
            IntensivePreference::new(ranking, flags).unwrap()
        },
    )
}

fn profile_strategy(max_n: usize, max_m: usize) -> impl Strategy<Value = Profile> {
    (1..=max_n, 2..=max_m, alpha_strategy(), any::<bool>()).prop_flat_map(|(n, m, alpha, voluntary)| {
        let mode = if voluntary { ElicitationMode::Voluntary } else { ElicitationMode::Mandatory };
        prop::collection::vec(pref_strategy(m), n)
            .prop_map(move |prefs| Profile::with_default_names(prefs, alpha.clone(), mode).unwrap())
    })
}

fn metric_for(profile: &Profile) -> impl Strategy<Value = MetricMatrix> {
    let (n, m) = (profile.num_agents(), profile.num_alternatives());
    prop::collection::vec(prop::collection::vec(0i64..8, m), n)
        .prop_map(|rows| MetricMatrix::new(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap())
}

fn with_mode(p: &Profile, mode: ElicitationMode) -> Profile {
    p.with_mode(mode)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_text_round_trips(p in profile_strategy(5, 6)) {
        let text = format_profile(&p);
        prop_assert_eq!(parse_profile(&text).unwrap(), p);
    }

    #[test]
    fn consistency_modes_are_nested((p, d) in profile_strategy(3, 4).prop_flat_map(|p| { let s = metric_for(&p); (Just(p), s) })) {
        let strict = check_consistency(&p, &d, ConsistencyMode::MandatoryStrict).unwrap().is_empty();
        let closed = check_consistency(&p, &d, ConsistencyMode::MandatoryClosed).unwrap().is_empty();
        let voluntary = check_consistency(&p, &d, ConsistencyMode::Voluntary).unwrap().is_empty();
        prop_assert!(!strict || closed);
        prop_assert!(!closed || voluntary);
    }

    #[test]
    fn order_violations_match_monotone_distances((p, d) in profile_strategy(3, 5).prop_flat_map(|p| { let s = metric_for(&p); (Just(p), s) })) {
        let violations = check_consistency(&p, &d, ConsistencyMode::Voluntary).unwrap();
        for (i, pref) in p.preferences().iter().enumerate() {
            let sorted = pref.ranking().windows(2).all(|w| d.get(i, w[0]) <= d.get(i, w[1]));
            let flagged = violations.iter().any(|v| v.agent == i && v.kind == ViolationKind::Order);
            prop_assert_eq!(sorted, !flagged);
        }
    }

    #[test]
    fn social_cost_scales_linearly(rows in prop::collection::vec(prop::collection::vec(0i64..20, 3), 1..5), c in 0i64..7, alt in 0usize..3) {
        let base = MetricMatrix::new(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap();
        let scaled_rows = rows.iter().map(|r| r.iter().enumerate().map(|(j, &v)| if j == alt { int(v * c) } else { int(v) }).collect()).collect();
        let scaled = MetricMatrix::new(scaled_rows).unwrap();
        prop_assert_eq!(social_cost(&scaled, alt), social_cost(&base, alt) * int(c));
    }

    #[test]
    fn intensity_rank_marks_first_intense_flag(pref in (2usize..7).prop_flat_map(pref_strategy)) {
        let k = intensity_rank(&pref).unwrap();
        let flags = pref.intensities();
        prop_assert!(flags[..k].iter().all(|&f| f == Intensity::Mild));
        if k < flags.len() {
            prop_assert_eq!(flags[k], Intensity::Intense);
        }
    }

    #[test]
    fn lp_solutions_are_exact_and_bounded_by_the_dual(
        a in prop::collection::vec(prop::collection::vec(0i64..6, 3), 1..5),
        b in prop::collection::vec(1i64..10, 4),
        c in prop::collection::vec(-3i64..6, 3),
    ) {
        let mut lp = LpProblem::new(3, c.iter().map(|&v| int(v)).collect(), Sense::Maximize);
        for (row, rhs) in a.iter().zip(&b) {
            lp.add(row.iter().map(|&v| int(v)).collect(), Relation::Le, int(*rhs));
        }
        // Box the region so the primal is bounded.
        for j in 0..3 {
            let mut e = vec![int(0); 3];
            e[j] = int(1);
            lp.add(e, Relation::Le, int(10));
        }
        let LpOutcome::Optimal { value, assignment } = solve(&lp) else { panic!("bounded feasible LP") };
        let recomputed = assignment.iter().zip(&lp.objective).fold(int(0), |s, (x, c)| s + x * c);
        prop_assert_eq!(&recomputed, &value);
        for con in &lp.constraints {
            let lhs = con.coefficients.iter().zip(&assignment).fold(int(0), |s, (a, x)| s + a * x);
            prop_assert!(lhs <= con.rhs);
        }
        // Dual: min b.y s.t. A^T y >= c, y >= 0.
        let rows = lp.constraints.len();
        let mut dual = LpProblem::new(rows, lp.constraints.iter().map(|k| k.rhs.clone()).collect(), Sense::Minimize);
        for j in 0..3 {
            dual.add(lp.constraints.iter().map(|k| k.coefficients[j].clone()).collect(), Relation::Ge, lp.objective[j].clone());
        }
        let LpOutcome::Optimal { value: dual_value, .. } = solve(&dual) else { panic!("dual feasible") };
        prop_assert_eq!(dual_value, value);
    }

    #[test]
    fn zero_sum_strategies_attain_the_value(entries in (1usize..5).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(-5i64..6, k), k))) {
        let cols = entries.len();
        let matrix: Vec<Vec<Rational>> = entries.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        let g = solve_zero_sum(&matrix);
        let row_payoffs: Vec<Rational> = (0..cols).map(|j| matrix.iter().zip(&g.row_strategy).fold(int(0), |s, (r, p)| s + &r[j] * p)).collect();
        let col_payoffs: Vec<Rational> = matrix.iter().map(|r| r.iter().zip(&g.col_strategy).fold(int(0), |s, (v, q)| s + v * q)).collect();
        prop_assert_eq!(row_payoffs.iter().max().unwrap(), &g.value);
        prop_assert_eq!(col_payoffs.iter().min().unwrap(), &g.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mandatory_never_exceeds_voluntary(p in profile_strategy(3, 3)) {
        let vol = match distortion_all(&with_mode(&p, ElicitationMode::Voluntary)) {
            Err(Error::DegenerateProfile) => {
                prop_assert_eq!(distortion_all(&with_mode(&p, ElicitationMode::Mandatory)), Err(Error::DegenerateProfile));
                return Ok(());
            }
            v => v.unwrap(),
        };
        if let Ok(man) = distortion_all(&with_mode(&p, ElicitationMode::Mandatory)) {
            for (m, v) in man.iter().zip(&vol) {
                prop_assert!(m <= v, "{} > {}", m, v);
            }
        }
    }

    #[test]
    fn aware_optimum_is_the_minimum(p in profile_strategy(3, 3)) {
        if let Ok(d) = distortion_all(&p) {
            let best = &d[argmin(&d)];
            prop_assert!(d.iter().all(|v| best <= v));
        }
    }

    #[test]
    fn alpha_monotonicity_two_by_two(r1 in any::<bool>(), r2 in any::<bool>(), intense in any::<bool>(), lo in 1i64..5, hi in 5i64..10) {
        let flag = if intense { Intensity::Intense } else { Intensity::Mild };
        let rank = |flip: bool| if flip { vec![1, 0] } else { vec![0, 1] };
        let prefs = vec![
            IntensivePreference::new(rank(r1), vec![flag]).unwrap(),
            IntensivePreference::new(rank(r2), vec![flag]).unwrap(),
        ];
        let at = |a: Rational| {
            Profile::with_default_names(prefs.clone(), a, ElicitationMode::Mandatory).ok().and_then(|p| distortion_all(&p).ok())
        };
        if let (Some(small), Some(large)) = (at(ratio(lo, 10)), at(ratio(hi, 10))) {
            for (s, l) in small.iter().zip(&large) {
                if intense {
                    prop_assert!(s <= l);
                } else {
                    prop_assert!(s >= l);
                }
            }
        }
    }
}

/// Largest sc ratio over grid metrics with entries `j/g`, `j <= 2g`, that fit the profile.
fn grid_distortion(p: &Profile, alt: usize, g: i64) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    let vals: Vec<Rational> = (0..=2 * g).map(|j| ratio(j, g)).collect();
    for a in &vals {
        for b in &vals {
            for c in &vals {
                for d in &vals {
                    let metric = MetricMatrix::new(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]]).unwrap();
                    if !check_triangle(&metric).is_empty() || !check_consistency(p, &metric, ConsistencyMode::MandatoryClosed).unwrap().is_empty() {
                        continue;
                    }
                    let other = 1 - alt;
                    let den = social_cost(&metric, alt).min(social_cost(&metric, other));
                    if den == int(0) {
                        continue;
                    }
                    let r = social_cost(&metric, alt) / den;
                    best = Some(best.map_or(r.clone(), |x: Rational| x.max(r)));
                }
            }
        }
    }
    best
}

#[test]
fn grid_search_approaches_the_lp_from_below() {
    let h = ratio(1, 2);
    let cases = [
        (vec![0, 1], Intensity::Intense, vec![1, 0], Intensity::Mild),
        (vec![0, 1], Intensity::Mild, vec![1, 0], Intensity::Mild),
        (vec![0, 1], Intensity::Mild, vec![0, 1], Intensity::Intense),
    ];
    for (r1, f1, r2, f2) in cases {
        let p = Profile::with_default_names(
            vec![IntensivePreference::new(r1, vec![f1]).unwrap(), IntensivePreference::new(r2, vec![f2]).unwrap()],
            h.clone(),
            ElicitationMode::Mandatory,
        )
        .unwrap();
        let lp = distortion_all(&p).unwrap();
        for alt in 0..2 {
            let ExtendedValue::Finite(bound) = &lp[alt] else { continue };
            let coarse = grid_distortion(&p, alt, 2);
            let fine = grid_distortion(&p, alt, 4);
            if let (Some(c), Some(f)) = (&coarse, &fine) {
                assert!(c <= f, "nested grids refine upward");
                assert!(f <= bound, "grid {f} above LP {bound}");
            }
        }
    }
}

#[test]
fn scoring_game_values_are_monotone_and_bounded() {
    for alpha in [ratio(1, 10), ratio(1, 4), ratio(1, 3), ratio(1, 2), ratio(2, 3), ratio(3, 4), ratio(9, 10), int(1)] {
        let mut prev: Option<Rational> = None;
        for k in 1..=10 {
            let t = game_value(k, &alpha).unwrap();
            if alpha < int(1) {
                assert!(t > int(0) && t < int(1), "t_{k}({alpha}) = {t}");
                assert!(distortion_bound(k, &alpha).unwrap() < int(3));
            } else {
                let lp = solve_zero_sum(&payoff_matrix(k, &alpha).unwrap().entries).value;
                assert_eq!(t, lp);
                if k == 1 {
                    assert_eq!(t, int(0));
                }
            }
            if let Some(p) = &prev {
                assert!(p <= &t, "t is nondecreasing in k at alpha {alpha}");
            }
            prev = Some(t);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn some_alternative_admits_a_matching(p in profile_strategy(5, 5), raw in prop::collection::vec(0i64..5, 5)) {
        let m = p.num_alternatives();
        let raw: Vec<i64> = raw[..m].iter().map(|v| v + 1).collect();
        let total: i64 = raw.iter().sum();
        let q: Vec<Rational> = raw.iter().map(|&v| ratio(v, total)).collect();
        let winner = matching_winner(&p, &q).unwrap();
        let n = p.num_agents();
        let graph = DominationGraph::build(&p, winner, vec![ratio(1, n as i64); n], q.clone());
        let found = has_fractional_perfect_matching(&graph);
        prop_assert!(found.feasible);
        let weights = found.weights.unwrap();
        let edges: BTreeSet<_> = graph.edges.iter().copied().collect();
        let mut agent_load = vec![int(0); n];
        let mut alt_load = vec![int(0); m];
        for (&(i, c), w) in &weights {
            prop_assert!(w >= &int(0));
            prop_assert!(edges.contains(&(i, c)));
            agent_load[i] += w;
            alt_load[c] += w;
        }
        prop_assert_eq!(agent_load, vec![ratio(1, n as i64); n]);
        prop_assert_eq!(alt_load, q);
    }

    #[test]
    fn plurality_weights_are_plurality_shares(p in profile_strategy(5, 5)) {
        let q = positional_weights(&p, &ScoringVector::plurality(p.num_alternatives())).unwrap();
        let n = p.num_agents() as i64;
        let expected: Vec<Rational> = (0..p.num_alternatives()).map(|a| ratio(plurality_score(&p, a) as i64, n)).collect();
        prop_assert_eq!(q, expected);
    }

    #[test]
    fn closed_form_matches_line_witnesses(n in prop::collection::vec(0u64..6, 4), a in prop::sample::select(vec![ratio(1, 10), ratio(1, 2), ratio(9, 10), int(1)])) {
        prop_assume!(n.iter().sum::<u64>() > 0);
        let counts = LineCounts::new(n[0], n[1], n[2], n[3]).unwrap();
        let (first, second) = d_branches(&counts, &a).unwrap();
        let (m1, m2) = worst_case_metrics(&counts, &a, 0).unwrap();
        let ratio_of = |e: &intensity_core::line::LineEmbedding<Rational>| {
            let d = e.metric();
            ExtendedValue::ratio(social_cost(&d, 0), social_cost(&d, 1))
        };
        prop_assert_eq!(ratio_of(&m1), first);
        prop_assert_eq!(m2.as_ref().map(ratio_of), second);
    }

    #[test]
    fn tal_value_is_symmetric_and_optimal(n in prop::collection::vec(0u64..6, 4), a in prop::sample::select(vec![ratio(1, 10), ratio(1, 2), ratio(9, 10), int(1)])) {
        prop_assume!(n.iter().sum::<u64>() > 0);
        let counts = LineCounts::new(n[0], n[1], n[2], n[3]).unwrap();
        let (w, d) = tal_from_counts(&counts, &a).unwrap();
        let (w2, d2) = tal_from_counts(&counts.swapped(), &a).unwrap();
        prop_assert_eq!(&d, &d2);
        let other = eval_d(&counts.toward(1 - w), &a).unwrap();
        prop_assert!(d <= other);
        if d < other {
            prop_assert_eq!(w2, 1 - w);
        }
    }
}

#[test]
fn polar_exactness_for_even_m() {
    use intensity_core::instances::{mandatory_polar_certificate, polar_profile, polar_value};
    for m in [2, 4, 6, 8] {
        for alpha in [ratio(1, 4), ratio(1, 2), ratio(3, 4)] {
            let p = polar_profile(m, alpha.clone(), ElicitationMode::Mandatory).unwrap();
            let expected = polar_value(m, &alpha);
            assert_eq!(distortion(&p, 0).unwrap(), ExtendedValue::Finite(expected.clone()), "m={m} alpha={alpha}");
            let cert = mandatory_polar_certificate(m, &alpha).unwrap();
            assert_eq!(verify_dual_certificate(&cert).unwrap(), expected);
        }
    }
}
