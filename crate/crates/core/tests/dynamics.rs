use lzc_core::analytic::two_state_survival;
use lzc_core::hamiltonian::adiabatic_energies;
use lzc_core::propagator::{convergence_report, evolve, initial_state};
use lzc_core::{
    distribution, propagate, survival_probability, transition_probability, DiabaticModel,
    HamiltonianBuilder, LzcModel, Profile, PropagationConfig,
};

fn config(dt: f64) -> PropagationConfig {
    PropagationConfig::new(1e-4, 400.0, dt).unwrap()
}

#[test]
fn fig3a_survival_with_fine_grid() {
    let m = LzcModel::from_pairs(0.7, &[(0.3, 1.0), (0.3, 0.5)]).unwrap();
    let r = propagate(&m, &initial_state(3, 0).unwrap(), &config(1e-4)).unwrap();
    let numeric = r.final_probabilities.survival();
    assert!((numeric - 0.485).abs() < 1e-3, "{numeric}");
    assert!((numeric - survival_probability(&m).unwrap()).abs() < 1e-3);
}

#[test]
fn two_state_examples_match_propagation() {
    let up = LzcModel::from_pairs(0.5, &[(1.0, 1.0)]).unwrap();
    let r = propagate(&up, &initial_state(2, 0).unwrap(), &config(1e-3)).unwrap();
    assert!((r.final_probabilities.p[1] - 0.792).abs() < 1e-3);
    assert!((r.final_probabilities.p[1] - transition_probability(&up, 1).unwrap()).abs() < 1e-3);

    let down = LzcModel::from_pairs(0.5, &[(1.0, -1.0)]).unwrap();
    let r = propagate(&down, &initial_state(2, 0).unwrap(), &config(1e-3)).unwrap();
    assert!((r.final_probabilities.survival() - 0.835).abs() < 1e-3);
    assert!((r.final_probabilities.survival() - two_state_survival(0.5, 1.0, -1.0).unwrap()).abs() < 1e-3);
}

#[test]
fn coulomb_term_delays_transitions() {
    let m = LzcModel::from_pairs(0.7, &[(0.3, 1.0), (0.3, 0.5)]).unwrap();
    let mut psi = initial_state(3, 0).unwrap().into_amplitudes();
    let mut t = 1e-4;
    let mut leaked = Vec::new();
    for stop in [0.01, 0.03, 0.1, 2.0] {
        let steps = ((stop - t) / 1e-5f64).round() as usize;
        evolve(&m, &mut psi, t, stop, steps, |_, _, _, _| {}).unwrap();
        t = stop;
        leaked.push(psi[1].norm_sqr().max(psi[2].norm_sqr()));
    }
    assert!(leaked[..3].iter().all(|&p| p < 1e-3), "{leaked:?}");
    assert!(leaked[3] > 1e-3, "{leaked:?}");
}

#[test]
fn uncoupled_model_has_no_deviation() {
    let m = LzcModel::from_pairs(0.7, &[(0.0, 1.0), (0.0, 0.5)]).unwrap();
    let report = convergence_report(&m, &initial_state(3, 0).unwrap(), &config(1e-2)).unwrap();
    assert!(report.dt_deviation < 1e-12);
    assert!(report.tail_deviation < 1e-12);
    assert!((report.probabilities[0] - 1.0).abs() < 1e-12);
}

#[test]
fn fig3a_halving_deviation_is_small() {
    let m = LzcModel::from_pairs(0.7, &[(0.3, 1.0), (1.0, 0.5)]).unwrap();
    let report = convergence_report(&m, &initial_state(3, 0).unwrap(), &config(1e-3)).unwrap();
    assert!(report.dt_deviation < 1e-3, "{report:?}");
    let exact = distribution(&m).unwrap();
    let err = exact.p.iter().zip(&report.probabilities).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(err < 1e-3, "{err}");
}

#[test]
fn power_law_tail_has_settled() {
    let g = 1.0;
    let mut diag = vec![Profile::PowerLaw { q: 0.2, r: 2.0 }];
    diag.extend([1.5, 1.25, 1.0, 0.75].map(|beta| Profile::Linear { beta }));
    let m = DiabaticModel::new(diag, vec![g; 4]).unwrap();
    let report = convergence_report(&m, &initial_state(5, 0).unwrap(), &config(1e-3)).unwrap();
    assert!(report.tail_deviation < 5e-3, "{report:?}");
}

#[test]
fn fig1_spectrum_has_no_exact_crossings() {
    let slopes = [-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0];
    let pairs: Vec<(f64, f64)> = slopes.iter().map(|&b| (0.2, b)).collect();
    let m = LzcModel::from_pairs(1.0, &pairs).unwrap();
    let mut min_gap = f64::INFINITY;
    for i in 0..2000 {
        let t = 0.05 + 4.95 * i as f64 / 1999.0;
        let e = adiabatic_energies(&m.at(t).unwrap());
        for w in e.windows(2) {
            min_gap = min_gap.min(w[1] - w[0]);
        }
    }
    assert!(min_gap > 1e-3, "{min_gap}");
}
