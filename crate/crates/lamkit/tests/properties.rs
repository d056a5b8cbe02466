//! Randomised properties of the circle, slice and coding layers.

use proptest::prelude::*;

use lamkit::canonical::canonical_lam_quadgap;
use lamkit::circle::{chords_linked, orbit_info, sigma, sigma_n, Angle, Chord};
use lamkit::cubioid::{psi_lift, psi_project, PsiCoding};
use lamkit::lamination::LaminationSlice;
use lamkit::quad_gaps::QuadGap;
use lamkit::render::{count_leaves, render_svg, RenderSpec};

fn angle() -> impl Strategy<Value = Angle> {
    (1i64..500).prop_flat_map(|den| (0..den).prop_map(move |j| Angle::frac_of(j, den)))
}

fn chord() -> impl Strategy<Value = Chord> {
    (angle(), angle()).prop_filter("degenerate", |(x, y)| x != y).prop_map(|(x, y)| Chord::new(x, y))
}

/// Binary angles with short preperiod and period.
fn binary_angle() -> impl Strategy<Value = Angle> {
    (0u32..4, 1u32..6).prop_flat_map(|(pre, per)| {
        let den = (1i64 << pre) * ((1i64 << per) - 1);
        (0..den).prop_map(move |j| Angle::frac_of(j, den))
    })
}

proptest! {
    #[test]
    fn orbit_closes_up(x in angle(), d in 2u32..5) {
        let info = orbit_info(d, &x);
        prop_assert_eq!(info.orbit.len(), info.preperiod + info.period);
        let last = sigma(d, info.orbit.last().unwrap());
        prop_assert_eq!(&last, &info.orbit[info.preperiod]);
        prop_assert_eq!(sigma_n(d, info.orbit.len(), &x), last);
    }

    #[test]
    fn chord_is_unordered(x in angle(), y in angle()) {
        prop_assert_eq!(Chord::new(x.clone(), y.clone()), Chord::new(y, x));
    }

    #[test]
    fn chord_text_round_trip(c in chord()) {
        prop_assert_eq!(c.to_string().parse::<Chord>().unwrap(), c);
    }

    #[test]
    fn linking_is_symmetric(u in chord(), v in chord()) {
        prop_assert_eq!(chords_linked(&u, &v).unwrap(), chords_linked(&v, &u).unwrap());
        prop_assert!(!chords_linked(&u, &u).unwrap());
    }

    #[test]
    fn image_of_chord_is_chord_of_images(c in chord(), d in 2u32..4) {
        let img = c.image(d);
        let (x, y) = (sigma(d, c.lo()), sigma(d, c.hi()));
        prop_assert_eq!(img, Chord::new(x, y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn psi_lift_then_project(t in binary_angle(), which in 0usize..3) {
        let u = match which {
            0 => QuadGap::fa(),
            1 => QuadGap::fb(),
            _ => QuadGap::periodic("3/4".parse().unwrap(), "1/8".parse().unwrap()).unwrap(),
        };
        let coding = PsiCoding::quad(&u).unwrap();
        let x = psi_lift(&coding, &t).unwrap();
        prop_assert!(coding.in_base(&x));
        prop_assert_eq!(psi_project(&coding, &x).unwrap(), t.clone());
        prop_assert_eq!(psi_project(&coding, &coding.return_map(&x)).unwrap(), sigma(2, &t));
    }

    #[test]
    fn slice_json_round_trip(chords in prop::collection::vec(chord(), 0..30), depth in 0usize..6) {
        let s = LaminationSlice::from_chords(3, depth, chords, vec![]);
        let back = LaminationSlice::from_json(&s.to_json()).unwrap();
        prop_assert_eq!(&back, &s);
        let text = serde_json::to_string(&s.to_json()).unwrap();
        prop_assert_eq!(LaminationSlice::from_json_str(&text).unwrap(), s);
    }

    #[test]
    fn render_is_deterministic(chords in prop::collection::vec(chord(), 0..30)) {
        let s = LaminationSlice::from_chords(3, 1, chords, vec![]);
        let spec = RenderSpec::default();
        let svg = render_svg(&s, &spec);
        prop_assert_eq!(&svg, &render_svg(&s.clone(), &spec));
        prop_assert_eq!(count_leaves(&svg), s.len());
        prop_assert!(roxmltree::Document::parse(&svg).is_ok());
    }
}

#[test]
fn canonical_slice_survives_json() {
    let s = canonical_lam_quadgap(&QuadGap::fa(), 4).unwrap();
    let back = LaminationSlice::from_json_str(&serde_json::to_string(&s.to_json()).unwrap()).unwrap();
    assert_eq!(back, s);
    assert_eq!(back.generators(), s.generators());
}
