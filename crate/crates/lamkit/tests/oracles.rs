//! Library results against brute-force enumerations.

use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;

use lamkit::canonical::canonical_quadratic;
use lamkit::circle::{chords_linked, exact_period, fixed_points, in_closed_arc, orbit_info, sigma, Angle, Chord};
use lamkit::lamination::check_unlinked_chords;
use lamkit::quad_gaps::{gap_edge_layers, vassal, QuadGap};
use lamkit::rotational::{rotational_orbits, rotational_sets};

fn a(s: &str) -> Angle {
    s.parse().unwrap()
}

/// Orbit of `j/n` under `x -> d x mod n` in machine integers.
fn int_orbit(d: u64, j: u64, n: u64) -> (usize, usize) {
    let mut seen = vec![usize::MAX; n as usize];
    let mut x = j;
    let mut i = 0;
    while seen[x as usize] == usize::MAX {
        seen[x as usize] = i;
        x = x * d % n;
        i += 1;
    }
    (seen[x as usize], i - seen[x as usize])
}

#[test]
fn orbit_info_matches_integer_orbits() {
    for d in [2u64, 3] {
        for n in 1..=60u64 {
            for j in 0..n {
                let (pre, per) = int_orbit(d, j, n);
                let info = orbit_info(d as u32, &Angle::frac_of(j as i64, n as i64));
                assert_eq!((info.preperiod, info.period), (pre, per), "{j}/{n} under {d}x");
            }
        }
    }
}

#[test]
fn fixed_point_census() {
    for d in [2u32, 3] {
        for k in 1..=6usize {
            let pts = fixed_points(d, k);
            let n = (d as i64).pow(k as u32) - 1;
            assert_eq!(pts.len() as i64, n);
            let brute: BTreeSet<Angle> = (0..n).map(|j| Angle::frac_of(j, n)).collect();
            assert_eq!(pts.into_iter().collect::<BTreeSet<_>>(), brute);
        }
    }
}

/// Cyclic order of four distinct points decides linking.
fn linked_by_order(c1: &Chord, c2: &Chord) -> bool {
    let mut pts = vec![(c1.lo(), 1), (c1.hi(), 1), (c2.lo(), 2), (c2.hi(), 2)];
    pts.sort_by(|x, y| x.0.cmp(y.0));
    if pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return false;
    }
    pts[0].1 != pts[1].1 && pts[1].1 != pts[2].1 && pts[2].1 != pts[3].1
}

#[test]
fn linking_matches_cyclic_order() {
    let pts: Vec<Angle> = (0..14).map(|j| Angle::frac_of(j, 14)).collect();
    let chords: Vec<Chord> = pts
        .iter()
        .flat_map(|x| pts.iter().filter(move |y| x < *y).map(move |y| Chord::new(x.clone(), y.clone())))
        .collect();
    for u in &chords {
        for v in &chords {
            assert_eq!(chords_linked(u, v).unwrap(), linked_by_order(u, v), "{u} {v}");
        }
    }
}

#[test]
fn unlinked_report_matches_pairwise_scan() {
    // Mixed denominators so both the machine-integer and the exact path run.
    for den in [30i64, 77, 1_000_003] {
        let pts: Vec<Angle> = (0..40).map(|j| Angle::frac_of((j * 7919) % den, den)).collect();
        let chords: Vec<Chord> = pts.chunks(2).map(|w| Chord::new(w[0].clone(), w[1].clone())).collect();
        let mut want = HashSet::new();
        for (i, u) in chords.iter().enumerate() {
            for v in &chords[i + 1..] {
                if linked_by_order(u, v) {
                    want.insert((u.clone().min(v.clone()), u.clone().max(v.clone())));
                }
            }
        }
        let got: HashSet<(Chord, Chord)> = check_unlinked_chords(chords.iter())
            .violations
            .into_iter()
            .map(|(u, v)| (u.clone().min(v.clone()), u.max(v)))
            .collect();
        assert_eq!(got, want, "denominator {den}");
    }
}

#[test]
fn rotational_orbits_by_enumeration() {
    for q in 2..=5usize {
        let n = 3i64.pow(q as u32) - 1;
        let mut brute = BTreeSet::new();
        for j in 0..n {
            let x = Angle::frac_of(j, n);
            if exact_period(3, &x) != Some(q) {
                continue;
            }
            let mut orb: Vec<Angle> = orbit_info(3, &x).orbit;
            orb.sort();
            // Rotation: sigma acts as a cyclic shift of the sorted orbit.
            let s = orb.iter().position(|y| y == &sigma(3, &orb[0])).unwrap();
            if s != 0 && (0..q).all(|i| sigma(3, &orb[i]) == orb[(i + s) % q]) {
                brute.insert(orb);
            }
        }
        let lib: BTreeSet<Vec<Angle>> = rotational_orbits(3, q).into_iter().map(|o| o.points).collect();
        assert_eq!(lib, brute, "period {q}");
    }
}

#[test]
fn rotational_set_census() {
    // Frozen from the enumeration above: one- and two-orbit sets per period.
    let counts: Vec<usize> = (1..=4).map(|q| rotational_sets(3, q).len()).collect();
    assert_eq!(counts, vec![0, 5, 19, 37]);
}

/// Leaves of the 1/2-rotation quadratic lamination: chords landing on
/// `{1/3, 2/3}` after `m` steps whose earlier images each lie in one of the
/// four closed arcs cut out by the two majors.
fn basilica_brute(depth: usize) -> BTreeSet<Chord> {
    let seed = Chord::new(a("1/3"), a("2/3"));
    let sibling = Chord::new(a("1/6"), a("5/6"));
    let cuts = [a("1/6"), a("1/3"), a("2/3"), a("5/6")];
    // Chords joining endpoints of different majors would cross the critical gap.
    let side = |c: &Chord| {
        *c == sibling
            || !(cuts.contains(c.lo()) && cuts.contains(c.hi()))
            && (0..4).any(|i| {
            let (s, e) = (&cuts[i], &cuts[(i + 1) % 4]);
            in_closed_arc(s, e, c.lo()) && in_closed_arc(s, e, c.hi())
        })
    };
    let den = 3 * (1i64 << depth);
    let pts: Vec<Angle> = (0..den).map(|j| Angle::frac_of(j, den)).collect();
    let mut out = BTreeSet::new();
    for x in &pts {
        for y in pts.iter().filter(|y| *y > x) {
            let mut c = Chord::new(x.clone(), y.clone());
            for _ in 0..=depth {
                if c == seed {
                    out.insert(Chord::new(x.clone(), y.clone()));
                    break;
                }
                if !side(&c) {
                    break;
                }
                c = c.image(2);
                if c.is_degenerate() {
                    break;
                }
            }
        }
    }
    out
}

#[test]
fn quadratic_half_rotation_by_enumeration() {
    let half = BigRational::new(1.into(), 2.into());
    for depth in 0..=6 {
        let s = canonical_quadratic(Some(&half), depth).unwrap();
        let got: BTreeSet<Chord> = s.chords().cloned().collect();
        assert_eq!(got, basilica_brute(depth), "depth {depth}");
    }
}

#[test]
fn canonical_quadratic_leaf_counts() {
    // Frozen at depth 8.
    for (p, q, n) in [(1, 2, 256), (1, 3, 768), (2, 5, 1280)] {
        let r = BigRational::new(p.into(), q.into());
        assert_eq!(canonical_quadratic(Some(&r), 8).unwrap().leaves().len(), n, "{p}/{q}");
    }
    assert!(canonical_quadratic(None, 8).unwrap().is_empty());
}

/// Points of `[b, a]` whose orbit stays out of the hole, to a given denominator.
fn base_points(u: &QuadGap, den: i64) -> BTreeSet<Angle> {
    (0..den)
        .map(|j| Angle::frac_of(j, den))
        .filter(|x| orbit_info(3, x).orbit.iter().all(|p| !lamkit::circle::in_open_arc(u.a(), u.b(), p)))
        .collect()
}

#[test]
fn gap_edges_bound_the_base() {
    // Every edge endpoint is a base point, and both ends of each edge lie in
    // the base computed by direct orbit scanning.
    for u in [QuadGap::fa(), QuadGap::periodic(a("3/4"), a("1/8")).unwrap()] {
        let layers = gap_edge_layers(&u, 3);
        for e in layers.iter().flatten() {
            let den = e.chord.lo().denom().max(e.chord.hi().denom()).clone();
            let den: i64 = den.try_into().unwrap();
            let base = base_points(&u, den * 8);
            assert!(base.contains(e.chord.lo()) && base.contains(e.chord.hi()), "{u}: edge {}", e.chord);
            // No base point strictly inside the hole of the edge.
            assert!(!base.iter().any(|x| e.hole.contains(x) && x != e.chord.lo() && x != e.chord.hi()));
        }
    }
}

#[test]
fn vassal_layer_census() {
    // The vassal of a period-2 gap has 2^n edges in generation n + 1.
    let u = QuadGap::periodic(a("3/4"), a("1/8")).unwrap();
    let v = vassal(&u, 6).unwrap();
    assert_eq!(v.period, 2);
    for (n, l) in v.layers.iter().enumerate().skip(1) {
        assert_eq!(l.len(), 1 << (n - 1), "generation {n}");
    }
}

fn example_d() -> lamkit::rotational::RotationalSet {
    let o = vec![vec![a("7/26"), a("21/26"), a("11/26")], vec![a("4/13"), a("12/13"), a("10/13")]];
    lamkit::rotational::build_rotational_set(3, &o).unwrap()
}

#[test]
fn type_d_contains_both_major_gap_laminations() {
    use lamkit::canonical::{canonical_lam_quadgap, canonical_lam_rotational};
    let g = canonical_lam_rotational(&example_d(), 5).unwrap();
    for (x, y) in [("12/13", "7/26"), ("11/26", "10/13")] {
        let w = canonical_lam_quadgap(&QuadGap::periodic(a(x), a(y)).unwrap(), 5).unwrap();
        let missing: Vec<&Chord> = w.chords().filter(|c| !g.contains(c)).collect();
        assert!(missing.is_empty(), "U({x},{y}): {} of {} leaves missing", missing.len(), w.len());
        assert!(g.len() > w.len());
    }
}

#[test]
fn permissive_rotational_laminations_are_laminations() {
    use lamkit::canonical::{canonical_lam_rotational_with, CanonicalOptions};
    use lamkit::lamination::check_unlinked;
    let opts = CanonicalOptions { permissive_shared_vertex: true };
    for set in rotational_sets(3, 3) {
        let s = canonical_lam_rotational_with(&set, 5, opts).unwrap();
        assert!(check_unlinked(&s).ok(), "{:?}", set.orbits());
        for e in set.edges() {
            assert!(s.contains(&e));
        }
    }
}
