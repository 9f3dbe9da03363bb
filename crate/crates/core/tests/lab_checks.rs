mod common;

use househunt::lab::{
    dropout_time, exact_initial_gap, ignorance_retention, initial_gap_expectation, nest_delta_distribution,
    ratio_growth, recruit_success_rate, relative_gap, Cohort, GapMode, LabError, ScenarioSpec,
};
use househunt::model::{DEFAULT_C, DEFAULT_D};
use househunt::{exact_distribution, NestId, RecruitCall};
use num_rational::Ratio;

#[test]
fn oracle_agrees_with_exact_enumeration() {
    for calls in common::small_configurations(4) {
        let oracle = common::pairing_oracle(&calls);
        let exact = exact_distribution(&calls).unwrap();
        for (i, c) in calls.iter().enumerate() {
            let mut p = [0.0; 3];
            for (outcome, w) in &exact {
                let recruiter = outcome.pairs.iter().any(|&(r, q)| r == c.ant && q != c.ant);
                let recruited = outcome.pairs.iter().any(|&(r, q)| q == c.ant && r != c.ant);
                let slot = if recruiter { 2 } else if recruited { 0 } else { 1 };
                p[slot] += *w.numer() as f64 / *w.denom() as f64;
            }
            for (got, want) in p.iter().zip(&oracle.indicator[i]) {
                assert!((got - want).abs() < 1e-12, "{calls:?}");
            }
        }
    }
}

#[test]
fn success_rate_matches_oracle_at_four() {
    let home = vec![Cohort::active(1, 2), Cohort::passive(2, 2)];
    let spec = ScenarioSpec::new(home, 100_000, 3);
    let calls = spec.calls();
    let expected = common::pairing_oracle(&calls).indicator[0][2];
    let report = recruit_success_rate(&spec).unwrap();
    let e = report.get("p_success").unwrap();
    assert!((e.value - expected).abs() <= 3.0 * e.std_error.max(1e-3), "{} vs {expected}", e.value);
}

#[test]
fn success_rate_bound_with_sixteen_active() {
    let spec = ScenarioSpec::active_sizes(&[16], 20_000, 1);
    let report = recruit_success_rate(&spec).unwrap();
    assert!(report.pass);
    assert!(report.get("p_success").unwrap().value >= 1.0 / 16.0);
}

#[test]
fn success_rate_needs_an_active_ant() {
    let spec = ScenarioSpec::new(vec![Cohort::passive(1, 4)], 10, 0);
    assert!(matches!(recruit_success_rate(&spec), Err(LabError::Degenerate(_))));
}

#[test]
fn retention_full_spread_takes_several_rounds() {
    let report = ignorance_retention(1024, 200, 300, 2).unwrap();
    assert!(report.pass, "{}", report.to_json());
    assert!(report.get("rounds_to_full_min").unwrap().value >= 5.0);
    assert_eq!(report.get("unfinished_trials").unwrap().value, 0.0);
}

#[test]
fn nest_delta_subset_cohort_loses_sometimes() {
    let spec = ScenarioSpec::active_sizes(&[20, 10], 100_000, 1);
    let report = nest_delta_distribution(&spec).unwrap();
    assert!(report.pass, "{}", report.to_json());
    for nest in [1, 2] {
        let p_neg = report.get(&format!("nest{nest}.p_neg")).unwrap();
        assert!(p_neg.value >= 1.0 / 66.0);
        let total: f64 = ["p_neg", "p_zero", "p_pos"]
            .iter()
            .map(|s| report.get(&format!("nest{nest}.{s}")).unwrap().value)
            .sum();
        assert!((total - 1.0).abs() < 1e-9);
    }
}

#[test]
fn nest_delta_rejects_passive_and_single_nest() {
    let passive = ScenarioSpec::new(vec![Cohort::active(1, 3), Cohort::passive(2, 3)], 10, 0);
    assert!(matches!(nest_delta_distribution(&passive), Err(LabError::Degenerate(_))));
    let single = ScenarioSpec::active_sizes(&[6], 10, 0);
    assert!(matches!(nest_delta_distribution(&single), Err(LabError::SingleNest)));
}

/// Averages the gap over all `2^n` search outcomes with exact arithmetic.
fn brute_gap(n: usize) -> Ratio<i128> {
    let mut total = Ratio::from_integer(0i128);
    for mask in 0u32..1 << n {
        let a = mask.count_ones() as i128;
        let b = n as i128 - a;
        if a > 0 && b > 0 {
            total += Ratio::new(a.max(b), a.min(b)) - 1;
        }
    }
    total / (1i128 << n)
}

#[test]
fn exact_gap_matches_brute_force() {
    for n in 1..=14 {
        assert_eq!(exact_initial_gap(n).unwrap().unconditioned, brute_gap(n), "n = {n}");
    }
    assert_eq!(relative_gap(3, 0), None);
    assert_eq!(relative_gap(2, 4), Some(1.0));
}

#[test]
fn monte_carlo_gap_agrees_with_exact() {
    let exact = initial_gap_expectation(8, 2, GapMode::Exact, 1, 0).unwrap();
    let mc = initial_gap_expectation(8, 2, GapMode::MonteCarlo, 1_000_000, 5).unwrap();
    let (x, m) = (exact.get("unconditioned").unwrap(), mc.get("unconditioned").unwrap());
    assert!((x.value - m.value).abs() <= 3.0 * m.std_error, "{} vs {}", x.value, m.value);
    assert!(exact.pass && mc.pass);
    assert!(initial_gap_expectation(8, 3, GapMode::Exact, 1, 0).is_err());
    assert!(initial_gap_expectation(1, 2, GapMode::MonteCarlo, 10, 0).is_err());
}

#[test]
fn ratio_grows_between_large_nests() {
    let report = ratio_growth(4096, 2, (2400, 1696), 10_000, 4, DEFAULT_D).unwrap();
    assert!(report.pass, "{}", report.to_json());
    assert!(report.get("growth_factor").unwrap().value > 1.0);
    assert!(matches!(ratio_growth(4096, 2, (4090, 6), 10, 0, DEFAULT_D), Err(LabError::Threshold(_))));
}

#[test]
fn small_nest_drops_out() {
    let report = dropout_time(1024, 2, 8, 200, 6, DEFAULT_C, DEFAULT_D).unwrap();
    assert!(report.pass, "{}", report.to_json());
    assert!(report.get("mean_delta_per_recruit_round").unwrap().value < 0.0);
    assert!(matches!(dropout_time(1024, 2, 9, 10, 0, DEFAULT_C, DEFAULT_D), Err(LabError::Threshold(_))));
}

#[test]
fn scenario_calls_follow_cohorts() {
    let spec = ScenarioSpec::new(vec![Cohort::active(1, 2), Cohort::passive(3, 1)], 1, 0);
    let calls = spec.calls();
    assert_eq!(
        calls,
        vec![
            RecruitCall::new(0, true, NestId(1)),
            RecruitCall::new(1, true, NestId(1)),
            RecruitCall::new(2, false, NestId(3)),
        ]
    );
}
