use std::f64::consts::PI;

use covkit::checks::random_contraction;
use covkit::groups::{AffineElement, Group, Su11Element};
use covkit::operators::{mobius_apply, spectral_radius};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn affine() -> impl Strategy<Value = AffineElement> {
    (0.05f64..20.0, -10.0f64..10.0).prop_map(|(a, b)| AffineElement::new(a, b).unwrap())
}

fn su11() -> impl Strategy<Value = Su11Element> {
    (0.0f64..2.5, -PI..PI, -PI..PI).prop_map(|(r, phi, psi)| Su11Element::from_polar(r, phi, psi))
}

proptest! {
    #[test]
    fn affine_law_is_associative_with_inverses(g in affine(), h in affine(), k in affine(), x in -5.0f64..5.0) {
        let lhs = g.compose(&h).compose(&k);
        let rhs = g.compose(&h.compose(&k));
        prop_assert!(lhs.distance(&rhs) < 1e-9 * (1.0 + lhs.b().abs()));
        prop_assert!(g.compose(&g.inverse()).distance(&AffineElement::identity()) < 1e-12);
        // the action is a left action
        prop_assert!((g.compose(&h).act(x) - g.act(h.act(x))).abs() < 1e-9 * (1.0 + x.abs()));
    }

    #[test]
    fn mobius_keeps_the_spectrum_inside_the_disc(g in su11(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_contraction(&mut rng, 3).unwrap();
        let image = mobius_apply(&g, &a).unwrap();
        prop_assert!(spectral_radius(&image).unwrap() < 1.0 + 1e-10);
    }
}
