mod common;

use common::*;
use latgen::generators::{
    choose_sigma, generating_set, project_and_lift, saturation_algorithm, saturation_support, Algorithm,
    GeneratorOptions,
};
use latgen::int::Int;
use latgen::lattice::{Lattice, LatticeVector, ProjectionMap};
use latgen::oracle::{default_sample, enumerate_fiber, verify_generating_set};

fn lattice() -> Lattice {
    Lattice::span(6, &running_example().iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn forced_move_fiber_has_two_points() {
    let basis = rows(&running_example());
    let fiber = brute_fiber(&basis, &[0, 0, 0, 0, 1, 1], 30);
    assert_eq!(fiber, vec![vec![0, 0, 0, 0, 1, 1], vec![0, 1, 3, 1, 0, 0]]);
    let lib = enumerate_fiber(&lattice(), &ints(&[0, 0, 0, 0, 1, 1]), &Int::from(10));
    assert_eq!(lib.points.iter().map(|p| small(p)).collect::<Vec<_>>(), fiber);
}

#[test]
fn every_algorithm_and_mode_contains_the_forced_move() {
    let forced = LatticeVector::from_i64(&[0, 1, 3, 1, -1, -1]);
    for opts in [GeneratorOptions::default(), GeneratorOptions::unreduced()] {
        for alg in [Algorithm::Saturation, Algorithm::ProjectAndLift, Algorithm::LiftAndProject] {
            let run = generating_set(&running_example(), alg, &opts).unwrap();
            assert!(run.generators.contains_up_to_sign(&forced), "{alg:?} {opts:?}");
            let sample = default_sample(&run.generators, 50, 6, 1);
            let r = verify_generating_set(&lattice(), &run.generators, &sample, &Int::from(8));
            assert!(r.passed(), "{alg:?} {opts:?}: {:?}", r.failures.first());
        }
    }
}

#[test]
fn saturation_final_set_matches_the_example() {
    let run = saturation_algorithm(&running_example(), &GeneratorOptions::unreduced()).unwrap();
    assert_eq!(run.sigma, vec![0, 5]);
    assert!(same_up_to_sign(
        &run.generators,
        &[
            &[0, 1, 3, 1, -1, -1],
            &[-1, 1, 1, 3, 1, -2],
            &[-1, 0, -2, 2, 2, -1],
            &[-1, -1, -5, 1, 3, 0],
            &[1, 2, 8, 0, -4, -1],
        ]
    ));
}

#[test]
fn first_saturation_stage_is_saturated_on_the_first_coordinate() {
    // relaxing the last coordinate, the stage output must connect fibers
    let run = saturation_algorithm(&running_example(), &GeneratorOptions::unreduced()).unwrap();
    let first = &run.stages[0].result;
    let proj = ProjectionMap::new(6, [5]);
    let pl = proj.project_lattice(&lattice());
    let ps = proj.project_set(first);
    let sample = default_sample(&ps, 50, 6, 3);
    let r = verify_generating_set(&pl, &ps, &sample, &Int::from(8));
    assert!(r.passed(), "{:?}", r.failures.first());

    // the spanning set alone does not
    let s = proj.project_set(&running_example());
    let r = verify_generating_set(&pl, &s, &sample, &Int::from(8));
    assert!(!r.passed());
}

#[test]
fn project_and_lift_stages() {
    let s = running_example();
    let plan = choose_sigma(lattice().basis()).unwrap();
    assert_eq!(plan.sigma, vec![2, 3, 5]);
    let run = project_and_lift(&s, &GeneratorOptions::default()).unwrap();
    let lifts: Vec<_> = run.stages.iter().filter(|st| st.label.starts_with("lift")).collect();
    assert_eq!(lifts.len(), 3);
    assert!(same_up_to_sign(&lifts[0].completed, &[&[0, -1, 1], &[1, -2, 0]]));
    assert!(same_up_to_sign(&lifts[0].result, &[&[0, -1, -3, 1], &[1, -2, -4, 0]]));
    assert!(same_up_to_sign(&lifts[1].result, &[&[0, -1, -3, -1, 1], &[1, -2, -4, -4, 0]]));
    // the example's final set minus (1,2,8,0,-4,-1), which it notes is unneeded
    assert!(same_up_to_sign(
        &lifts[2].result,
        &[
            &[0, 1, 3, 1, -1, -1],
            &[-1, 1, 1, 3, 1, -2],
            &[-1, 0, -2, 2, 2, -1],
            &[-1, -1, -5, 1, 3, 0],
        ]
    ));
}

#[test]
fn saturation_support_of_the_example() {
    assert_eq!(saturation_support(&running_example()), vec![0, 5]);
    assert!(saturation_bound_holds(&running_example()));
}
