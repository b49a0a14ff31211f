use hermdecay::gaussians::closed_form_coefficients;
use hermdecay::hermite::required_order;
use hermdecay::{extremal_function, gauss_hermite, hermite_coefficients, GaussianEnvelopePair, TestFunction};

const PAIRS: [(f64, f64); 3] = [(0.6, 0.6), (0.3, 1.2), (2.0, 0.25)];

#[test]
fn quadrature_matches_closed_form_extremal() {
    let n_max = 60;
    let rule = gauss_hermite(required_order(n_max)).unwrap();
    for (a, b) in PAIRS {
        let g = extremal_function(&GaussianEnvelopePair::new(a, b).unwrap()).unwrap();
        let exact = closed_form_coefficients(&g, n_max).unwrap();
        let quad = hermite_coefficients(&TestFunction::Gaussian(g), n_max, &rule).unwrap();
        let mut worst = 0.0f64;
        for n in (0..=n_max).step_by(2) {
            let e = exact.entries()[n];
            let q = quad.entries()[n];
            let rel = ((q.log_abs - e.log_abs).exp() - 1.0).abs();
            worst = worst.max(rel);
            let dphi = (q.phase - e.phase).sin().abs();
            assert!(dphi < 1e-8, "({a},{b}) n={n} phase {dphi:e}");
        }
        println!("({a},{b}) worst rel {worst:e}");
        assert!(worst < 1e-8, "({a},{b}) worst {worst:e}");
        assert!(quad.entries().iter().skip(1).step_by(2).all(|c| c.is_zero()));
    }
}
