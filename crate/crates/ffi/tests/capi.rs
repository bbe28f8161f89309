use std::ffi::CStr;
use std::ptr;

use nspso_ffi::*;

fn last_error() -> String {
    let p = nspso_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn problem(number: u32, dim: usize) -> *mut NspsoProblem {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { nspso_problem_new(number, dim, 0, &mut p) }, NspsoStatus::Ok);
    p
}

#[test]
fn evaluates_scalar_and_bi_objective_problems() {
    unsafe {
        let f1 = problem(1, 3);
        assert_eq!(nspso_problem_dimension(f1), 3);
        assert!(!nspso_problem_is_multi_objective(f1));
        let mut f = f64::NAN;
        let x = [1.0, 2.0, 3.0];
        assert_eq!(nspso_problem_evaluate(f1, x.as_ptr(), 3, &mut f), NspsoStatus::Ok);
        assert_eq!(f, 14.0);

        let (mut lo, mut hi) = ([0.0; 3], [0.0; 3]);
        assert_eq!(nspso_problem_bounds(f1, lo.as_mut_ptr(), hi.as_mut_ptr(), 3), NspsoStatus::Ok);
        assert_eq!((lo[0], hi[0]), (-100.0, 100.0));

        assert_eq!(nspso_problem_evaluate(f1, x.as_ptr(), 2, &mut f), NspsoStatus::InvalidArgument);
        let (mut a, mut b) = (0.0, 0.0);
        assert_eq!(nspso_problem_evaluate_mmf(f1, x.as_ptr(), 3, &mut a, &mut b), NspsoStatus::WrongArity);
        nspso_problem_free(f1);

        let mmf1 = problem(15, 2);
        assert!(nspso_problem_is_multi_objective(mmf1));
        let x = [2.0, 0.0];
        assert_eq!(nspso_problem_evaluate_mmf(mmf1, x.as_ptr(), 2, &mut a, &mut b), NspsoStatus::Ok);
        assert_eq!(a, 0.0);
        assert!((b - 1.0).abs() < 1e-12);
        assert_eq!(nspso_problem_evaluate(mmf1, x.as_ptr(), 2, &mut f), NspsoStatus::WrongArity);
        let outside = [0.0, 0.0];
        assert_eq!(nspso_problem_evaluate_mmf(mmf1, outside.as_ptr(), 2, &mut a, &mut b), NspsoStatus::Domain);
        assert!(last_error().contains("f15"));
        nspso_problem_free(mmf1);
    }
}

#[test]
fn bad_arguments_report_status_and_message() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(nspso_problem_new(18, 2, 0, &mut p), NspsoStatus::InvalidArgument);
        assert!(p.is_null());
        assert!(last_error().contains("18"));
        assert_eq!(nspso_problem_new(1, 2, 0, ptr::null_mut()), NspsoStatus::NullPointer);

        let mut f = 0.0;
        assert_eq!(nspso_problem_evaluate(ptr::null(), ptr::null(), 0, &mut f), NspsoStatus::NullPointer);
        assert_eq!(nspso_novelty_score(1.0, 0.0, &mut f), NspsoStatus::InvalidArgument);
        assert_eq!(nspso_problem_dimension(ptr::null()), 0);
        nspso_problem_free(ptr::null_mut());
        nspso_result_free(ptr::null_mut());
    }
}

#[test]
fn novelty_scores_follow_the_table() {
    for (d, want) in [(0.0, 0.0), (0.5, 25.0), (1.0, 50.0), (1.5, 75.0), (2.0, 100.0), (5.0, 100.0)] {
        let mut ns = -1.0;
        assert_eq!(unsafe { nspso_novelty_score(d, 1.0, &mut ns) }, NspsoStatus::Ok);
        assert_eq!(ns, want);
    }
}

#[test]
fn runs_and_reads_results() {
    unsafe {
        let p = problem(1, 4);
        let mut cfg = std::mem::zeroed::<NspsoRunConfig>();
        assert_eq!(nspso_run_config_default(4, &mut cfg), NspsoStatus::Ok);
        assert_eq!(cfg.leader_count, 7);
        assert_eq!(cfg.max_fes, 1_200_000);
        cfg.max_fes = 20_000;
        cfg.seed = 3;

        let mut r = ptr::null_mut();
        assert_eq!(nspso_run(p, &cfg, false, &mut r), NspsoStatus::Ok);
        let best = nspso_result_best_fitness(r);
        assert!(best.is_finite() && best >= 0.0);
        assert!(nspso_result_evaluations(r) <= 20_000);
        assert!(nspso_result_igd(r).is_nan());
        let mut reason = NspsoStopReason::AllLowNovel;
        assert_eq!(nspso_result_stop_reason(r, &mut reason), NspsoStatus::Ok);

        let mut pos = [0.0; 4];
        assert_eq!(nspso_result_best_position(r, pos.as_mut_ptr(), 4), NspsoStatus::Ok);
        let mut f = 0.0;
        nspso_problem_evaluate(p, pos.as_ptr(), 4, &mut f);
        assert_eq!(f, best);
        assert_eq!(nspso_result_best_position(r, pos.as_mut_ptr(), 3), NspsoStatus::InvalidArgument);

        let n = nspso_result_trace_len(r);
        assert!(n >= 1);
        let (mut evals, mut fit, mut leader) = (0u64, 0.0, 0usize);
        assert_eq!(nspso_result_trace_entry(r, n - 1, &mut evals, &mut fit, &mut leader), NspsoStatus::Ok);
        assert_eq!(fit, best);
        assert!(leader < 7);
        assert_eq!(nspso_result_trace_entry(r, n, &mut evals, &mut fit, &mut leader), NspsoStatus::OutOfRange);

        let mut again = ptr::null_mut();
        assert_eq!(nspso_run(p, &cfg, false, &mut again), NspsoStatus::Ok);
        assert_eq!(nspso_result_best_fitness(again), best);
        nspso_result_free(again);
        nspso_result_free(r);

        cfg.swarm_size = 1;
        assert_eq!(nspso_run(p, &cfg, false, &mut r), NspsoStatus::Config);
        nspso_problem_free(p);
    }
}

#[test]
fn bi_objective_runs_report_igd() {
    unsafe {
        let p = problem(15, 2);
        let mut cfg = std::mem::zeroed::<NspsoRunConfig>();
        nspso_run_config_default(2, &mut cfg);
        cfg.max_fes = 5_000;
        cfg.radius_initial = 0.05;
        let mut r = ptr::null_mut();
        assert_eq!(nspso_run(p, &cfg, false, &mut r), NspsoStatus::Ok);
        let igd = nspso_result_igd(r);
        assert!(igd.is_finite() && igd >= 0.0);
        nspso_result_free(r);
        nspso_problem_free(p);
    }
}

#[test]
fn rank_sum_through_the_c_interface() {
    let a: Vec<f64> = (0..10).map(f64::from).collect();
    let b: Vec<f64> = (100..110).map(f64::from).collect();
    let mut out = NspsoRankSum { h: 9, rank_sum: 0.0, z: 0.0, p_value: 0.0 };
    let s = unsafe { nspso_wilcoxon_rank_sum(a.as_ptr(), a.len(), b.as_ptr(), b.len(), 0.05, &mut out) };
    assert_eq!(s, NspsoStatus::Ok);
    assert_eq!(out.h, 1);
    assert_eq!(out.rank_sum, 55.0);
    let s = unsafe { nspso_wilcoxon_rank_sum(a.as_ptr(), 3, b.as_ptr(), 3, 0.05, &mut out) };
    assert_eq!(s, NspsoStatus::InvalidArgument);
}
