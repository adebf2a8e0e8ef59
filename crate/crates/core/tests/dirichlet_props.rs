use proptest::prelude::*;

use willmore::dirichlet::{enumerate_dirichlet, solve_dirichlet_branch};
use willmore::oracle::{verify_solution, ProblemRef, Tolerances};
use willmore::quad::gauss_kronrod;
use willmore::{DirichletBranch, DirichletProblem, Point, Sign, SymmetryClass};

fn problem() -> impl Strategy<Value = DirichletProblem> {
    (-2.0f64..2.0, -2.0f64..2.0, 0.3f64..4.0, -3.1f64..3.1, -1.5f64..1.5, -1.5f64..1.5).prop_map(
        |(x, y, d, phi, t1, t2)| {
            let a = Point::new(x, y);
            DirichletProblem::new(a, a + Point::new(phi.cos(), phi.sin()) * d, phi + t1, phi + t2).unwrap()
        },
    )
}

fn wrap(x: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    x - two_pi * (x / two_pi).round()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn boundary_tangents_and_turning(p in problem()) {
        let tol = Tolerances::default();
        for s in enumerate_dirichlet(&p, 2).unwrap() {
            let c = &s.params;
            let r = verify_solution(ProblemRef::Dirichlet(&p), &s, &tol);
            prop_assert!(r.pass, "{:?}: {r:?}", s.dirichlet);
            let t0 = c.tangent_direction(0.0).unwrap();
            let t1 = c.tangent_direction(c.length).unwrap();
            prop_assert!(wrap(t0.angle() - p.theta1).abs() < 1e-9);
            prop_assert!(wrap(t1.angle() - p.theta2).abs() < 1e-9);
            let turning: f64 = gauss_kronrod(|t: f64| c.curvature(t).unwrap(), 0.0, c.length, 1e-13, 1e-13);
            prop_assert!(wrap(turning - (p.theta2 - p.theta1)).abs() < 1e-8, "{turning}");
        }
    }

    #[test]
    fn solutions_are_distinct(p in problem()) {
        let all = enumerate_dirichlet(&p, 2).unwrap();
        for (i, x) in all.iter().enumerate() {
            for y in &all[i + 1..] {
                let same = (x.params.a - y.params.a).abs() < 1e-7 * x.params.a
                    && (x.length - y.length).abs() < 1e-7 * x.length
                    && (x.params.b - y.params.b).abs() < 1e-7;
                prop_assert!(!same);
            }
        }
    }
}

fn graph_problem(beta: f64) -> DirichletProblem {
    let theta = beta.atan();
    DirichletProblem::new(Point::new(0.0, 0.0), Point::new(1.0, 0.0), theta, -theta).unwrap()
}

#[test]
fn symmetric_graph_solution() {
    for beta in [0.5, 1.0, 2.0] {
        let p = graph_problem(beta);
        let sols = solve_dirichlet_branch(&p, DirichletBranch::new(Sign::Plus, Sign::Minus, 0, Sign::Minus)).unwrap();
        assert_eq!(sols.len(), 1, "beta = {beta}");
        let s = &sols[0];
        assert_eq!(s.symmetry, SymmetryClass::AxiallySymmetric);
        // graph over the chord: the tangent keeps a positive x-component
        let n = 400;
        let min_tx = (0..=n)
            .map(|i| s.params.tangent_direction(s.length * i as f64 / n as f64).unwrap().x)
            .fold(f64::INFINITY, f64::min);
        assert!(min_tx > 1e-6, "beta = {beta}: {min_tx}");
    }
}

#[test]
fn companion_branch_is_not_a_graph() {
    for beta in [0.5, 1.0, 2.0] {
        let p = graph_problem(beta);
        let sols = solve_dirichlet_branch(&p, DirichletBranch::new(Sign::Plus, Sign::Minus, 0, Sign::Plus)).unwrap();
        assert!(!sols.is_empty(), "beta = {beta}");
        for s in &sols {
            assert_eq!(s.symmetry, SymmetryClass::AxiallySymmetric);
            let tx = |t: f64| s.params.tangent_direction(t.clamp(0.0, s.length)).unwrap().x.abs();
            let n = 2000;
            let h = s.length / n as f64;
            let i = (0..=n).min_by(|&i, &j| tx(h * i as f64).total_cmp(&tx(h * j as f64))).unwrap();
            // refine the sampled minimum of |t_x| by ternary search on the neighbouring cells
            let (mut lo, mut hi) = (h * (i as f64 - 1.0), h * (i as f64 + 1.0));
            for _ in 0..200 {
                let (m1, m2) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
                if tx(m1) < tx(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            let min_tx = tx(0.5 * (lo + hi));
            assert!(min_tx < 1e-6, "beta = {beta}: {min_tx}");
        }
    }
}

#[test]
fn family_energies_increase() {
    let p = graph_problem(1.0);
    let mut energies = Vec::new();
    for j in 0..=5 {
        let sols = solve_dirichlet_branch(&p, DirichletBranch::new(Sign::Plus, Sign::Minus, j, Sign::Plus)).unwrap();
        let z1 = p.theta1.cos().sqrt();
        let s = sols.iter().find(|s| (s.dirichlet.as_ref().unwrap().z - z1).abs() < 1e-9).expect("family member");
        energies.push(s.energy);
    }
    assert!(energies.windows(2).all(|w| w[1] > w[0]), "{energies:?}");
}

#[test]
fn coincident_endpoints_are_rejected() {
    let p = Point::new(0.0, 0.0);
    assert!(DirichletProblem::new(p, p, 0.0, 1.0).is_err());
}
