use area_core::area::{run_area, AreaConfig};
use area_core::metrics::igd;
use area_core::moead::{run_moead, MoeadConfig};
use area_core::pareto::dominates;
use area_core::problems::make_problem;

fn mutually_nondominated(front: &[Vec<f64>]) -> bool {
    front
        .iter()
        .all(|a| front.iter().all(|b| !dominates(a, b).unwrap()))
}

#[test]
fn area_uses_exact_budget_and_returns_nondominated_front() {
    let problem = make_problem("DTLZ2", 3).unwrap();
    let result = run_area(&AreaConfig::new(problem.clone(), 28, 3000, 1)).unwrap();
    assert_eq!(result.fe_used, 3000);
    assert_eq!(result.final_population.len(), 28);
    assert!(!result.final_archive.is_empty() && result.final_archive.len() <= 28);
    assert!(mutually_nondominated(&result.final_archive));
    for s in &result.final_population {
        assert!(s
            .x
            .iter()
            .zip(problem.bounds())
            .all(|(v, (l, h))| l <= v && v <= h));
    }
}

#[test]
fn area_is_reproducible_from_seed() {
    let problem = make_problem("F2", 2).unwrap();
    let run = |seed| {
        run_area(&AreaConfig::new(problem.clone(), 20, 2000, seed))
            .unwrap()
            .final_archive
    };
    assert_eq!(run(5), run(5));
    assert_ne!(run(5), run(6));
}

#[test]
fn both_algorithms_approach_the_dtlz2_front() {
    let problem = make_problem("DTLZ2", 2).unwrap();
    let pf = problem.pf_sample(500).unwrap();
    let area = run_area(&AreaConfig::new(problem.clone(), 50, 10_000, 3)).unwrap();
    let moead = run_moead(&MoeadConfig::new(problem.clone(), 50, 10_000, 3)).unwrap();
    assert_eq!(moead.fe_used, 10_000);
    assert_eq!(moead.final_archive.len(), 50);
    assert!(igd(&area.final_archive, &pf).unwrap() < 0.02);
    assert!(igd(&moead.final_archive, &pf).unwrap() < 0.02);
}
