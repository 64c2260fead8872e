use super::*;
use crate::pareto::dominates;
use crate::problems::make_problem;
use crate::testutil::cheb;

fn unit_ideal(m: usize) -> IdealPoints {
    IdealPoints {
        lower: vec![0.0; m],
        upper: vec![1.0; m],
    }
}

fn member(f: &[f64], target: usize) -> Individual {
    Individual {
        x: vec![target as f64],
        f: f.to_vec(),
        target,
    }
}

#[test]
fn no_replacement_when_incumbents_are_closer() {
    let refs = crate::reference::initial_reference_set(2, 5, 3);
    let mut pop: Vec<Individual> = refs
        .points
        .iter()
        .enumerate()
        .map(|(i, r)| member(&[r[0] + 0.5, r[1] + 0.5], i))
        .collect();
    let y = Solution::new(vec![9.0], vec![0.9, 0.9]);
    assert_eq!(
        replace_in_neighbourhood(
            &y,
            &refs,
            &mut pop,
            &unit_ideal(2),
            ReplacementRule::Neighbourhood
        ),
        0
    );
}

#[test]
fn offspring_on_its_reference_replaces_whole_neighbourhood() {
    let refs = crate::reference::initial_reference_set(2, 5, 3);
    let mut pop: Vec<Individual> = (0..5).map(|i| member(&[5.0, 5.0], i)).collect();
    let target = refs.points[2].clone();
    let y = Solution::new(vec![9.0], target.clone());
    let n = replace_in_neighbourhood(
        &y,
        &refs,
        &mut pop,
        &unit_ideal(2),
        ReplacementRule::Neighbourhood,
    );
    assert_eq!(n, 3);
    for &s in &refs.neighbours[2] {
        assert_eq!(pop[s].f, target);
        assert_eq!(pop[s].target, s);
    }
    let mut pop: Vec<Individual> = (0..5).map(|i| member(&[5.0, 5.0], i)).collect();
    assert_eq!(
        replace_in_neighbourhood(&y, &refs, &mut pop, &unit_ideal(2), ReplacementRule::Single),
        1
    );
}

#[test]
fn replacement_matches_straight_line_oracle() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let z = unit_ideal(2);
    for _ in 0..200 {
        let refs = crate::reference::initial_reference_set(2, 5, 2);
        let pop: Vec<Individual> = (0..5).map(|i| member(&[rng.gen(), rng.gen()], i)).collect();
        let y = Solution::new(vec![-1.0], vec![rng.gen(), rng.gen()]);
        let mut nearest = 0;
        for j in 0..5 {
            if cheb(&y.f, &refs.points[j]) < cheb(&y.f, &refs.points[nearest]) {
                nearest = j;
            }
        }
        let d = cheb(&y.f, &refs.points[nearest]);
        let expect: Vec<usize> = refs.neighbours[nearest]
            .iter()
            .copied()
            .filter(|&s| d < cheb(&pop[s].f, &refs.points[nearest]))
            .collect();
        let mut after = pop.clone();
        let count =
            replace_in_neighbourhood(&y, &refs, &mut after, &z, ReplacementRule::Neighbourhood);
        assert_eq!(count, expect.len());
        for s in 0..5 {
            let swapped = after[s].f == y.f;
            assert_eq!(swapped, expect.contains(&s) || pop[s].f == y.f);
        }
    }
}

fn check_structure(state: &GenerationState<'_>, n: usize) {
    assert_eq!(state.population.len(), n);
    assert_eq!(state.references.len(), n);
    for (i, p) in state.population.iter().enumerate() {
        assert_eq!(p.target, i);
    }
    for p in &state.references.points {
        assert!(p.iter().sum::<f64>().abs() < 1e-10);
    }
    let members = state.archive.members();
    assert!(members.len() <= state.archive.capacity());
    for a in members {
        for b in members {
            assert!(!dominates(&a.f, &b.f).unwrap());
        }
    }
    for (l, u) in state.ideal.lower.iter().zip(&state.ideal.upper) {
        assert!(l <= u);
    }
}

#[test]
fn smoke_run_keeps_structure() {
    let cfg = AreaConfig::new(make_problem("DTLZ2", 3).unwrap(), 105, 2100, 1);
    let mut modes = Vec::new();
    let mut last_lower: Option<Vec<f64>> = None;
    let r = run_area_observed(&cfg, |s| {
        check_structure(s, 105);
        if let Some(prev) = &last_lower {
            assert!(s.ideal.lower.iter().zip(prev).all(|(a, b)| a <= b));
        }
        last_lower = Some(s.ideal.lower.clone());
        modes.push(s.mode);
    })
    .unwrap();
    assert_eq!(r.final_population.len(), 105);
    assert!(r.fe_used <= 2100);
    assert_eq!(r.fe_used, 2100);
    assert!(r.final_archive.len() <= 105);
    // interval is 105 evaluations, so every generation toggles the mode
    assert!(modes.contains(&Mode::Fixed) && modes.contains(&Mode::Evolving));
}

#[test]
fn same_seed_same_result() {
    let cfg = AreaConfig::new(make_problem("DTLZ1", 3).unwrap(), 28, 1000, 5);
    let a = run_area(&cfg).unwrap();
    let b = run_area(&cfg).unwrap();
    assert_eq!(a.final_population, b.final_population);
    assert_eq!(a.final_archive, b.final_archive);
    let mut other = cfg.clone();
    other.seed = 6;
    assert_ne!(run_area(&other).unwrap().final_archive, a.final_archive);
}

#[test]
fn rejects_budget_below_one_generation() {
    let cfg = AreaConfig::new(make_problem("DTLZ2", 3).unwrap(), 105, 200, 1);
    assert!(matches!(run_area(&cfg), Err(Error::Config(_))));
}

#[test]
fn fixed_only_and_evolving_only_schedules() {
    let base = AreaConfig::new(make_problem("DTLZ5", 3).unwrap(), 28, 1400, 2);
    let mut fixed = base.clone();
    fixed.f_r = 1.0;
    run_area_observed(&fixed, |s| {
        check_structure(s, 28);
        assert_eq!(s.mode, Mode::Fixed);
    })
    .unwrap();
    let mut evolving = base.clone();
    evolving.schedule = ReferenceSchedule::EvolvingOnly;
    let r = run_area_observed(&evolving, |s| {
        check_structure(s, 28);
        assert_eq!(s.mode, Mode::Evolving);
    })
    .unwrap();
    assert_eq!(r.fe_used, 1400);
}

#[test]
fn de_operator_and_single_replacement_run() {
    let mut cfg = AreaConfig::new(make_problem("MOP1", 2).unwrap(), 20, 800, 4);
    cfg.operator = OperatorParams::de();
    cfg.replacement = ReplacementRule::Single;
    let r = run_area_observed(&cfg, |s| check_structure(s, 20)).unwrap();
    assert_eq!(r.fe_used, 800);
}

#[test]
fn trajectory_is_sampled_with_increasing_fe() {
    let p = make_problem("DTLZ2", 3).unwrap();
    let reference = p.pf_sample(200).unwrap();
    let mut cfg = AreaConfig::new(p, 15, 600, 1);
    cfg.trajectory = Some(Trajectory {
        every: 100,
        reference,
    });
    let r = run_area(&cfg).unwrap();
    assert!(r.igd_trajectory.len() >= 6);
    assert!(r.igd_trajectory.windows(2).all(|w| w[0].0 < w[1].0));
    assert_eq!(r.igd_trajectory.last().unwrap().0, 600);
}
