use langcomp_core::analysis::{basin_map, ic_grid, IC_MARGIN};
use langcomp_core::dynamics::{converge, integrate, IntegratorOptions, Method};
use langcomp_core::equilibria::{e7_coords, EquilibriumKind};
use langcomp_core::model::{ModelParams, PopulationState};

fn fig_e7_1() -> ModelParams {
    ModelParams::standard(0.1, 1.1, 3.6).unwrap()
}

#[test]
fn low_status_run_loses_bilinguals() {
    let p = ModelParams::standard(0.1, 2.0, 1.1).unwrap();
    let ic = PopulationState::new(0.5, 0.1, 0.4).unwrap();
    let traj = integrate(&p, &ic, &IntegratorOptions::attractor_matching()).unwrap();
    let last = traj.final_state();
    assert!(last.b() < 1e-4, "{last:?}");
    assert!((last.m1() + last.m2() - 1.0).abs() < 1e-4);
    assert!(traj.max_simplex_drift < 1e-9);
}

#[test]
fn coexistence_attracts_whole_grid() {
    let p = fig_e7_1();
    let e7 = e7_coords(&p).unwrap();
    for ic in ic_grid(11, IC_MARGIN).unwrap() {
        let c = converge(&p, &ic, &IntegratorOptions::default()).unwrap();
        assert_eq!(c.matched, Some(EquilibriumKind::E7), "{ic:?}");
        assert!(c.final_state.distance(&e7) < 1e-6);
    }
}

#[test]
fn halving_rk4_step_keeps_every_match() {
    for p in [fig_e7_1(), ModelParams::standard(0.3, 1.0, 1.1).unwrap()] {
        for ic in ic_grid(10, IC_MARGIN).unwrap() {
            let coarse = IntegratorOptions::default().with_method(Method::Rk4 { step: 2e-3 });
            let fine = IntegratorOptions::default().with_method(Method::Rk4 { step: 1e-3 });
            let a = converge(&p, &ic, &coarse).unwrap();
            let b = converge(&p, &ic, &fine).unwrap();
            assert!(a.matched.is_some());
            assert_eq!(a.matched, b.matched, "{ic:?}");
        }
    }
}

#[test]
fn lambda_rescales_time() {
    let p = fig_e7_1();
    let q = p.with_lambda(4.0 * p.lambda);
    let ic = PopulationState::new(0.2, 0.2, 0.6).unwrap();
    let a = integrate(&p, &ic, &IntegratorOptions::default().with_max_time(0.02)).unwrap();
    let b = integrate(&q, &ic, &IntegratorOptions::default().with_max_time(0.005)).unwrap();
    assert!(a.final_state().distance(&b.final_state()) < 1e-9);
}

#[test]
fn adaptive_and_fixed_schemes_agree() {
    let p = ModelParams::standard(0.6, 1.8, 1.1).unwrap();
    let ic = PopulationState::new(0.3, 0.3, 0.4).unwrap();
    let opts = IntegratorOptions::default().with_max_time(1.0);
    let a = integrate(&p, &ic, &opts).unwrap().final_state();
    let b = integrate(&p, &ic, &opts.with_method(Method::Rk4 { step: 2e-4 })).unwrap().final_state();
    assert!(a.distance(&b) < 1e-8);
}

/// The lattice with `2n − 1` points per side contains the `n` lattice, so
/// shared points can be compared directly.
#[test]
fn refining_basin_grid_only_moves_separatrix_cells() {
    let p = ModelParams::standard(0.5, 4.0, 1.1).unwrap();
    let opts = IntegratorOptions::attractor_matching();
    let coarse = basin_map(&p, 10, &opts).unwrap();
    let fine = basin_map(&p, 19, &opts).unwrap();
    let h = fine.cells[1].ic.m2() - fine.cells[0].ic.m2();
    let label_at = |m1: f64, m2: f64| {
        fine.cells
            .iter()
            .find(|c| (c.ic.m1() - m1).abs() < 1e-9 && (c.ic.m2() - m2).abs() < 1e-9)
            .map(|c| c.label)
    };
    let mut differing = 0;
    for cell in &coarse.cells {
        let here = label_at(cell.ic.m1(), cell.ic.m2()).expect("nested lattice");
        if here == cell.label {
            continue;
        }
        differing += 1;
        let neighbours = [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h), (h, -h), (-h, h)];
        let on_boundary = neighbours
            .iter()
            .filter_map(|(a, b)| label_at(cell.ic.m1() + a, cell.ic.m2() + b))
            .any(|l| l != here);
        assert!(on_boundary, "interior cell changed label at {:?}", cell.ic);
    }
    assert!(differing <= coarse.cells.len() / 4);
}
