use affine_mechanics::affine_values::{
    alpha_map, beta_inverse, beta_map, gamma_map, phi_map, sigma, PElement, TangentNP,
    UniversalDynamics, WElement,
};
use affine_mechanics::homogeneous::HomogeneousDynamics;
use affine_mechanics::inhomogeneous::{frame_momentum, FrameDynamics, InhomState};
use affine_mechanics::spacetime::{
    pair, Event, FourCovector, FourVector, Frame, SpatialVector, U_REF,
};
use affine_mechanics::{Mass, Potential};
use approx::assert_abs_diff_eq;
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -2.0..=2.0f64
}

fn spatial() -> impl Strategy<Value = [f64; 3]> {
    [coord(), coord(), coord()]
}

fn frame() -> impl Strategy<Value = Frame> {
    spatial().prop_map(|b| Frame::from_boost(SpatialVector::from_array(b)))
}

fn mass() -> impl Strategy<Value = Mass> {
    (0.5..=3.0f64).prop_map(|m| Mass::new(m).unwrap())
}

fn event() -> impl Strategy<Value = Event> {
    [coord(), coord(), coord(), coord()].prop_map(Event::from_array)
}

fn vector() -> impl Strategy<Value = FourVector> {
    [coord(), coord(), coord(), coord()].prop_map(FourVector::from_array)
}

fn covector() -> impl Strategy<Value = FourCovector> {
    [coord(), coord(), coord(), coord()].prop_map(FourCovector::from_array)
}

fn future() -> impl Strategy<Value = FourVector> {
    (0.1..=3.0f64, spatial()).prop_map(|(s, w)| FourVector::new(s, w[0], w[1], w[2]))
}

fn potential() -> impl Strategy<Value = Potential> {
    prop_oneof![
        Just(Potential::Zero),
        covector().prop_map(Potential::uniform),
        (0.1..=2.0f64, event()).prop_map(|(k, c)| Potential::harmonic(k, c).unwrap()),
    ]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn spatial_of(v: FourVector) -> [f64; 3] {
    [v.dx, v.dy, v.dz]
}

proptest! {
    #[test]
    fn sigma_has_closed_form(a in frame(), b in frame()) {
        let (ba, bb) = (a.velocity().to_array(), b.velocity().to_array());
        let expected = FourCovector::new(
            -(dot3(ba, ba) - dot3(bb, bb)) / 2.0,
            ba[0] - bb[0],
            ba[1] - bb[1],
            ba[2] - bb[2],
        );
        prop_assert!((sigma(a, b) - expected).max_abs() <= 1e-13);
    }

    #[test]
    fn sigma_cocycle(a in frame(), b in frame(), c in frame()) {
        prop_assert!((sigma(c, b) + sigma(b, a) - sigma(c, a)).max_abs() <= 1e-12);
        prop_assert!((sigma(a, b) + sigma(b, a)).max_abs() <= 1e-12);
    }

    #[test]
    fn legendre_class_has_frame_free_closed_form(
        m in mass(), phi in potential(), u in frame(), x in event(), v in future()
    ) {
        let nu = spatial_of(v).map(|c| c / v.dt);
        let expected = FourCovector::new(
            -m.get() * dot3(nu, nu) / 2.0 - phi.value(x),
            m.get() * nu[0],
            m.get() * nu[1],
            m.get() * nu[2],
        );
        let class = UniversalDynamics::new(m, phi).legendre_in(u, x, v).unwrap();
        prop_assert!((class.reference_momentum() - expected).max_abs() <= 1e-11);
    }

    #[test]
    fn affine_lagrangian_has_frame_free_closed_form(
        m in mass(), phi in potential(), u in frame(), x in event(), v in future()
    ) {
        let w = spatial_of(v);
        let expected = m.get() * dot3(w, w) / (2.0 * v.dt) - v.dt * phi.value(x);
        let value = UniversalDynamics::new(m, phi).lagrangian_in(u, x, v).unwrap();
        prop_assert!((value.reference_value() - expected).abs() <= 1e-11);
        prop_assert_eq!(value.zeta(), v);
    }

    #[test]
    fn legendre_lands_on_shell_and_inverts(
        m in mass(), phi in potential(), u in frame(), x in event(), v in future(), lam in 0.1..10.0f64
    ) {
        let d = HomogeneousDynamics::new(u, m, phi);
        let p = d.legendre(x, v).unwrap();
        prop_assert!(d.mass_shell_residual(x, p).abs() <= 1e-12);
        prop_assert!((d.fiber_critical_velocity(p, v.dt).unwrap() - v).max_abs() <= 1e-10);
        prop_assert!((d.legendre(x, v * lam).unwrap() - p).max_abs() <= 1e-11);
    }

    #[test]
    fn transport_preserves_shell(
        m in mass(), phi in potential(), u in frame(), u2 in frame(), x in event(), p in covector()
    ) {
        let from = HomogeneousDynamics::new(u, m, phi);
        let to = HomogeneousDynamics::new(u2, m, phi);
        let moved = phi_map(m, u, u2, p);
        prop_assert!((to.mass_shell_residual(x, moved) - from.mass_shell_residual(x, p)).abs() <= 1e-10);
        prop_assert!((PElement::new(m, u, p).reference_momentum() - PElement::new(m, u2, moved).reference_momentum()).max_abs() <= 1e-12);
    }

    #[test]
    fn w_class_arithmetic(
        m in mass(), u in frame(), u2 in frame(), v in vector(), v2 in vector(), r in coord(), r2 in coord(), lam in coord()
    ) {
        let a = WElement::new(m, u, v, r);
        let b = WElement::new(m, u2, v2, r2);
        let sum = a.checked_add(b).unwrap();
        prop_assert_eq!(sum.zeta(), v + v2);
        // representatives in any frame add componentwise
        let (_, ra) = a.representative(u2);
        prop_assert!((sum.representative(u2).1 - (ra + r2)).abs() <= 1e-11);
        prop_assert!(a.scale(lam).distance(&WElement::new(m, u, v * lam, r * lam)) <= 1e-12);
    }

    #[test]
    fn affine_function_is_translation_covariant(
        m in mass(), u in frame(), v in vector(), r in coord(), p in covector(), pi in covector()
    ) {
        let w = WElement::new(m, u, v, r);
        let point = PElement::new(m, u, p);
        let shifted = w.affine_function(point.translate(pi)).unwrap();
        prop_assert!((shifted - w.affine_function(point).unwrap() - pair(pi, v)).abs() <= 1e-12);
    }

    #[test]
    fn morse_is_stationary_only_on_dynamics(
        m in mass(), phi in potential(), u in frame(), x in event(), v in future()
    ) {
        let universal = UniversalDynamics::new(m, phi);
        let point = universal.legendre_in(u, x, v).unwrap();
        prop_assert!(universal.morse_h(x, point, v).unwrap().abs() <= 1e-12);
        let h = 1e-6;
        for i in 0..4 {
            let mut e = [0.0; 4];
            e[i] = h;
            let e = FourVector::from_array(e);
            let fd = (universal.morse_h(x, point, v + e).unwrap() - universal.morse_h(x, point, v - e).unwrap()) / (2.0 * h);
            prop_assert!(fd.abs() <= 1e-5);
        }
    }

    #[test]
    fn triple_maps_compose(m in mass(), u in frame(), x in event(), p in covector(), v in vector(), a in covector()) {
        let t = TangentNP { x, p: PElement::new(m, u, p), v, a };
        prop_assert_eq!(gamma_map(beta_map(t)), alpha_map(t));
        prop_assert_eq!(beta_inverse(beta_map(t)), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn world_lines_do_not_depend_on_frame(
        m in mass(), phi in potential(), u in frame(), u2 in frame(), x in event(), w in frame()
    ) {
        let run = |f: Frame| {
            FrameDynamics::new(f, m, phi)
                .integrate(InhomState { x, p: frame_momentum(m, f, w) }, 1e-3, 500)
                .unwrap()
        };
        let (a, b) = (run(u), run(u2));
        for (ra, rb) in a.iter().zip(&b) {
            prop_assert!((ra.state.x - rb.state.x).max_abs() <= 1e-6);
        }
    }
}

#[test]
fn rest_frame_energy_conserved_for_static_potentials() {
    let m = Mass::new(1.7).unwrap();
    let phi = Potential::harmonic(0.8, Event::new(0.3, -1.0, 0.5, 0.0)).unwrap();
    for b in [0.0, 0.7, -1.9] {
        let u = Frame::from_boost(SpatialVector::new(b, 0.4, 0.0));
        let d = FrameDynamics::new(u, m, phi);
        let s0 = InhomState {
            x: Event::new(0.0, 1.0, -1.0, 0.5),
            p: frame_momentum(m, u, Frame::from_boost(SpatialVector::new(0.2, 0.0, -0.3))),
        };
        let traj = d.integrate(s0, 1e-3, 2000).unwrap();
        let e0 = d.rest_frame_energy(s0, U_REF);
        for r in &traj {
            assert_abs_diff_eq!(d.rest_frame_energy(r.state, U_REF), e0, epsilon = 1e-9);
        }
    }
}
