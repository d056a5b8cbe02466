//! Quadratic invariant gaps of `sigma_3` built from critical chords.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use serde_json::json;

use crate::circle::{exact_period, in_closed_arc, in_open_arc, is_periodic, orbit_info, sigma, sigma_n, third, Angle, Arc, Chord};
use crate::error::{Error, Result};
use crate::lamination::GapEdge;

/// Upper bound on the period searched by default.
pub const DEFAULT_PERIOD_LIMIT: usize = 12;

fn pow3(k: usize) -> BigInt {
    BigInt::from(3u32).pow(k as u32)
}

/// `3^(k-1) / (3^k - 1)`, the major hole length of a period-`k` gap.
pub fn periodic_hole_length(k: usize) -> BigRational {
    BigRational::new(pow3(k - 1), pow3(k) - 1)
}

/// A chord whose endpoints differ by exactly `1/3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CriticalChord {
    chord: Chord,
    /// Start of the short side: `H(c) = (x, x + 1/3)`.
    x: Angle,
}

impl CriticalChord {
    pub fn new(chord: Chord) -> Result<CriticalChord> {
        let l = chord.lo().dist_to(chord.hi());
        if l == third() {
            Ok(CriticalChord { x: chord.lo().clone(), chord })
        } else if l == BigRational::one() - third() {
            Ok(CriticalChord { x: chord.hi().clone(), chord })
        } else {
            Err(Error::ValidationFailed(format!("{chord} is not critical")))
        }
    }

    pub fn from_endpoint(x: Angle) -> CriticalChord {
        let y = x.shift(&third());
        CriticalChord { chord: Chord::new(x.clone(), y), x }
    }

    pub fn chord(&self) -> &Chord {
        &self.chord
    }

    pub fn x(&self) -> &Angle {
        &self.x
    }

    pub fn y(&self) -> Angle {
        self.x.shift(&third())
    }

    pub fn image_point(&self) -> Angle {
        sigma(3, &self.x)
    }

    pub fn co_critical(&self) -> Angle {
        self.x.shift(&(third() * BigInt::from(2)))
    }

    /// Open short arc `(x, x+1/3)`.
    pub fn short_arc(&self) -> Arc {
        Arc::open(self.x.clone(), self.y())
    }

    /// Closed long arc `[x+1/3, x]` of length `2/3`.
    pub fn long_arc(&self) -> Arc {
        Arc::closed(self.y(), self.x.clone())
    }
}

impl fmt::Display for CriticalChord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.chord.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CriticalClass {
    RegularCritical,
    Caterpillar,
    PeriodicType(usize),
    BoundaryDegenerate,
}

/// Forward orbit of `x` stays in the closed long arc of `c`.
pub fn pi_membership(c: &CriticalChord, x: &Angle) -> bool {
    let h = c.short_arc();
    orbit_info(3, x).orbit.iter().all(|p| !h.contains(p))
}

pub fn classify_critical_chord(c: &CriticalChord) -> CriticalClass {
    let h = c.short_arc();
    let (x, y) = (c.x().clone(), c.y());
    let orbit = orbit_info(3, &c.image_point()).orbit;
    let mut touches = false;
    for (i, p) in orbit.iter().enumerate() {
        if h.contains(p) {
            return CriticalClass::PeriodicType(i + 1);
        }
        if p == &x || p == &y {
            touches = true;
        }
    }
    if !touches {
        CriticalClass::RegularCritical
    } else if is_periodic(3, &x) || is_periodic(3, &y) {
        CriticalClass::Caterpillar
    } else {
        CriticalClass::BoundaryDegenerate
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GapType {
    RegularCritical,
    PeriodicType(usize),
    /// Major `{0,1/2}` with the gap in `[0,1/2]`.
    SpecialFa,
    /// Major `{0,1/2}` with the gap in `[1/2,0]`.
    SpecialFb,
}

/// Quadratic gap `U` with major `M = {a,b}`: the hole is `(a,b)` and the gap
/// lies over `[b,a]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadGap {
    a: Angle,
    b: Angle,
    kind: GapType,
    seed: Option<CriticalChord>,
}

impl QuadGap {
    pub fn regular(c: &CriticalChord) -> Result<QuadGap> {
        match classify_critical_chord(c) {
            CriticalClass::RegularCritical => Ok(QuadGap {
                a: c.x().clone(),
                b: c.y(),
                kind: GapType::RegularCritical,
                seed: Some(c.clone()),
            }),
            CriticalClass::Caterpillar => Err(Error::CaterpillarInput(c.to_string())),
            CriticalClass::BoundaryDegenerate => Err(Error::BoundaryDegenerate(c.to_string())),
            CriticalClass::PeriodicType(_) => {
                Err(Error::ValidationFailed(format!("{c} is not regular critical")))
            }
        }
    }

    /// Rebuilds a gap from its oriented major: hole length `1/3` gives the
    /// regular critical gap, anything else must be of periodic type.
    pub fn from_major(a: Angle, b: Angle) -> Result<QuadGap> {
        if a.dist_to(&b) == third() {
            let u = QuadGap::regular(&CriticalChord::from_endpoint(a.clone()))?;
            debug_assert_eq!(u.a, a);
            Ok(u)
        } else {
            QuadGap::periodic(a, b)
        }
    }

    pub fn fa() -> QuadGap {
        QuadGap { a: Angle::half(), b: Angle::zero(), kind: GapType::SpecialFa, seed: None }
    }

    pub fn fb() -> QuadGap {
        QuadGap { a: Angle::zero(), b: Angle::half(), kind: GapType::SpecialFb, seed: None }
    }

    /// Periodic-type gap with hole `(a,b)`; both endpoints must have the
    /// same exact period `k`, the hole must have the right length and the
    /// endpoint orbits must avoid it.
    pub fn periodic(a: Angle, b: Angle) -> Result<QuadGap> {
        let k = exact_period(3, &a).ok_or_else(|| Error::NotPeriodic(a.to_string()))?;
        if exact_period(3, &b) != Some(k) {
            return Err(Error::ValidationFailed(format!("{a} and {b} have different periods")));
        }
        if a.dist_to(&b) != periodic_hole_length(k) {
            return Err(Error::ValidationFailed(format!(
                "hole ({a},{b}) does not have length {}",
                periodic_hole_length(k)
            )));
        }
        for e in [&a, &b] {
            for j in 1..k {
                let p = sigma_n(3, j, e);
                if in_open_arc(&a, &b, &p) {
                    return Err(Error::ValidationFailed(format!("orbit of {e} enters the hole ({a},{b})")));
                }
            }
        }
        let kind = if a.is_zero() && b == Angle::half() {
            GapType::SpecialFb
        } else if b.is_zero() && a == Angle::half() {
            GapType::SpecialFa
        } else {
            GapType::PeriodicType(k)
        };
        Ok(QuadGap { a, b, kind, seed: None })
    }

    pub fn a(&self) -> &Angle {
        &self.a
    }

    pub fn b(&self) -> &Angle {
        &self.b
    }

    /// `a'' = a + 1/3`.
    pub fn a2(&self) -> Angle {
        self.a.shift(&third())
    }

    /// `b'' = b - 1/3`.
    pub fn b2(&self) -> Angle {
        self.b.shift(&-third())
    }

    pub fn kind(&self) -> GapType {
        self.kind
    }

    pub fn seed(&self) -> Option<&CriticalChord> {
        self.seed.as_ref()
    }

    pub fn is_regular(&self) -> bool {
        self.kind == GapType::RegularCritical
    }

    /// Period of the major; `None` for regular critical gaps.
    pub fn period(&self) -> Option<usize> {
        match self.kind {
            GapType::RegularCritical => None,
            GapType::PeriodicType(k) => Some(k),
            GapType::SpecialFa | GapType::SpecialFb => Some(1),
        }
    }

    pub fn major(&self) -> Chord {
        Chord::new(self.a.clone(), self.b.clone())
    }

    pub fn hole(&self) -> Arc {
        Arc::open(self.a.clone(), self.b.clone())
    }

    pub fn hole_length(&self) -> BigRational {
        self.a.dist_to(&self.b)
    }

    pub fn sibling_major(&self) -> Chord {
        if self.is_regular() {
            self.major()
        } else {
            Chord::new(self.b2(), self.a2())
        }
    }

    /// Major cycle `M, sigma(M), ...` with holes; a single critical edge for
    /// regular gaps.
    pub fn major_cycle(&self) -> Vec<GapEdge> {
        let k = self.period().unwrap_or(1);
        (0..k)
            .map(|j| {
                let (x, y) = (sigma_n(3, j, &self.a), sigma_n(3, j, &self.b));
                GapEdge { chord: Chord::new(x.clone(), y.clone()), hole: Arc::open(x, y) }
            })
            .collect()
    }

    /// Boundary point test: the full forward orbit avoids the open hole.
    pub fn in_base(&self, x: &Angle) -> bool {
        orbit_info(3, x).orbit.iter().all(|p| !in_open_arc(&self.a, &self.b, p))
    }

    /// A chord lies in the closure of a complementary component of `U`
    /// other than `U` itself: one of its arcs eventually maps injectively
    /// into the closed major hole.
    pub fn admits(&self, c: &Chord) -> bool {
        if c.is_degenerate() {
            return true;
        }
        let one_third = third();
        let hole = self.hole_length();
        for (x, y) in [(c.lo(), c.hi()), (c.hi(), c.lo())] {
            let (mut x, mut y) = (x.clone(), y.clone());
            let mut len = x.dist_to(&y);
            loop {
                if in_closed_arc(&self.a, &self.b, &x) && self.a.dist_to(&x) + &len <= hole {
                    return true;
                }
                if len >= one_third {
                    break;
                }
                x = sigma(3, &x);
                y = sigma(3, &y);
                len *= BigRational::from_integer(3.into());
            }
        }
        false
    }

    pub fn to_json(&self, depth: usize) -> serde_json::Value {
        let kind = match self.kind {
            GapType::RegularCritical => "regular",
            GapType::PeriodicType(_) => "periodic",
            GapType::SpecialFa => "Fa",
            GapType::SpecialFb => "Fb",
        };
        let mut v = json!({
            "major": self.major(),
            "hole": self.hole().to_string(),
            "type": kind,
            "period": self.period(),
            "sibling_major": self.sibling_major(),
            "edges": gap_edges(self, depth),
        });
        if let Ok(vg) = vassal(self, depth) {
            v["vassal"] = vg.to_json();
        }
        v
    }
}

impl fmt::Display for QuadGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GapType::SpecialFa => write!(f, "Fa"),
            GapType::SpecialFb => write!(f, "Fb"),
            _ => write!(f, "U({},{})", self.a, self.b),
        }
    }
}

/// Builds `U(c)`. For periodic type the major joins the `sigma^k`-fixed
/// points closest to the endpoints of `c` inside `L(c)`.
pub fn build_quad_gap(c: &CriticalChord) -> Result<QuadGap> {
    build_quad_gap_bounded(c, DEFAULT_PERIOD_LIMIT)
}

pub fn build_quad_gap_bounded(c: &CriticalChord, period_limit: usize) -> Result<QuadGap> {
    match classify_critical_chord(c) {
        CriticalClass::RegularCritical => QuadGap::regular(c),
        CriticalClass::Caterpillar => Err(Error::CaterpillarInput(c.to_string())),
        CriticalClass::BoundaryDegenerate => Err(Error::BoundaryDegenerate(c.to_string())),
        CriticalClass::PeriodicType(k) => {
            if k > period_limit {
                return Err(Error::BoundExceeded(format!("period {k} of {c} exceeds {period_limit}")));
            }
            let n = BigRational::from_integer(pow3(k) - 1);
            let xs = c.x().value() * &n;
            let ys = (c.x().value() + third()) * &n;
            let a = Angle::from_ratio(xs.floor() / &n);
            let b = Angle::from_ratio(ys.ceil() / &n);
            let mut u = QuadGap::periodic(a, b)?;
            if u.period() != Some(k) {
                return Err(Error::ValidationFailed(format!("major of {c} has period {:?}, expected {k}", u.period())));
            }
            u.seed = Some(c.clone());
            Ok(u)
        }
    }
}

fn edge_from_arc(start: Angle, len: &BigRational) -> GapEdge {
    let end = start.shift(len);
    GapEdge { chord: Chord::new(start.clone(), end.clone()), hole: Arc::open(start, end) }
}

/// Three arcs of length `|h|/3` mapped onto `h` by `sigma_3`.
fn preimage_holes(h: &Arc) -> Vec<GapEdge> {
    let len = h.length() / BigRational::from_integer(3.into());
    let s = h.start.value() / BigRational::from_integer(3.into());
    (0..3)
        .map(|i| edge_from_arc(Angle::from_ratio(&s + BigRational::new(i.into(), 3.into())), &len))
        .collect()
}

/// Edges of `U` grouped by generation: generation 0 is the major cycle,
/// generation `n` the edges reached by `n` pullbacks.
pub fn gap_edge_layers(u: &QuadGap, depth: usize) -> Vec<Vec<GapEdge>> {
    let mut seen: HashSet<Chord> = HashSet::new();
    let mut layers = vec![u.major_cycle()];
    for e in &layers[0] {
        seen.insert(e.chord.clone());
    }
    for _ in 0..depth {
        let mut next: Vec<GapEdge> = Vec::new();
        for e in layers.last().unwrap() {
            for p in preimage_holes(&e.hole) {
                let ok = !in_open_arc(&u.a, &u.b, &p.hole.start) && !in_open_arc(&u.a, &u.b, &p.hole.end);
                if ok && seen.insert(p.chord.clone()) {
                    next.push(p);
                }
            }
        }
        next.sort_by(|x, y| x.chord.cmp(&y.chord));
        layers.push(next);
    }
    layers
}

/// Edges of `U` up to the given pullback depth, in canonical order.
pub fn gap_edges(u: &QuadGap, depth: usize) -> Vec<Chord> {
    let set: BTreeSet<Chord> = gap_edge_layers(u, depth).into_iter().flatten().map(|e| e.chord).collect();
    set.into_iter().collect()
}

/// The periodic quadratic gap of period `k` in the strip between `M(U)`
/// and `M''(U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VassalGap {
    pub owner: QuadGap,
    pub period: usize,
    pub a2: Angle,
    pub b2: Angle,
    /// Generation 0 is `M(U)`, generation 1 is `M''(U)`.
    pub layers: Vec<Vec<Chord>>,
}

impl VassalGap {
    pub fn edges(&self) -> Vec<Chord> {
        let set: BTreeSet<Chord> = self.layers.iter().flatten().cloned().collect();
        set.into_iter().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "period": self.period,
            "a2": self.a2,
            "b2": self.b2,
            "edges": self.edges(),
        })
    }
}

/// The two inverse branches of `sigma^k` onto the wings `[a,b'']` and `[a'',b]`.
pub(crate) fn horseshoe_branches(u: &QuadGap, k: usize) -> impl Fn(&Angle, bool) -> Angle + '_ {
    let scale = BigRational::new(BigInt::one(), pow3(k));
    move |t: &Angle, left: bool| {
        let base = if left { u.a2() } else { u.a.clone() };
        base.shift(&(u.a.dist_to(t) * &scale))
    }
}

pub fn vassal(u: &QuadGap, depth: usize) -> Result<VassalGap> {
    let k = u.period().ok_or_else(|| Error::RegularCriticalInput(u.major().to_string()))?;
    let beta = horseshoe_branches(u, k);
    let mut layers = vec![vec![u.major()]];
    if depth >= 1 {
        layers.push(vec![u.sibling_major()]);
    }
    let mut frontier = vec![(u.b2(), u.a2())];
    for _ in 2..=depth {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for (x, y) in &frontier {
            for left in [false, true] {
                next.push((beta(x, left), beta(y, left)));
            }
        }
        let mut chords: Vec<Chord> = next.iter().map(|(x, y)| Chord::new(x.clone(), y.clone())).collect();
        chords.sort();
        layers.push(chords);
        frontier = next;
    }
    Ok(VassalGap { owner: u.clone(), period: k, a2: u.a2(), b2: u.b2(), layers })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaterpillarGap {
    pub head: Chord,
    pub critical_edge: Chord,
    /// `l_{-1}, l_{-2}, ...`
    pub edges: Vec<Chord>,
}

pub fn caterpillar_edges(u: &QuadGap, side: Side, depth: usize) -> Result<CaterpillarGap> {
    let k = u.period().ok_or_else(|| Error::RegularCriticalInput(u.major().to_string()))?;
    let beta = horseshoe_branches(u, k);
    let (mut x, mut y, left) = match side {
        Side::A => (u.a.clone(), u.a2(), true),
        Side::B => (u.b2(), u.b.clone(), false),
    };
    let critical_edge = Chord::new(x.clone(), y.clone());
    let mut edges = Vec::with_capacity(depth);
    for _ in 0..depth {
        edges.push(Chord::new(x.clone(), y.clone()));
        let (nx, ny) = (beta(&x, left), beta(&y, left));
        x = nx;
        y = ny;
    }
    Ok(CaterpillarGap { head: u.major(), critical_edge, edges })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wings {
    pub right: Arc,
    pub left: Arc,
}

pub fn wings(u: &QuadGap) -> Wings {
    if u.is_regular() {
        return Wings { right: Arc::point(u.a.clone()), left: Arc::point(u.b.clone()) };
    }
    Wings { right: Arc::closed(u.a.clone(), u.b2()), left: Arc::closed(u.a2(), u.b.clone()) }
}

/// Decides whether a periodic leaf is the major of a periodic-type
/// quadratic gap: its orbit leaves are pairwise unlinked, bound one
/// common complementary region, and its own hole is longer than `1/3`.
pub fn is_periodic_type_major(l: &Chord) -> Result<bool> {
    for e in [l.lo(), l.hi()] {
        if l.is_degenerate() || !is_periodic(3, e) {
            return Err(Error::NotPeriodic(l.to_string()));
        }
    }
    let (x, y) = (l.lo().clone(), l.hi().clone());
    if sigma(3, &x) == y && sigma(3, &y) == x {
        return Ok(false);
    }
    let mut orbit = vec![l.clone()];
    let (mut px, mut py) = (sigma(3, &x), sigma(3, &y));
    while !(px == x && py == y) {
        if (px == y && py == x) || px == py {
            return Ok(false);
        }
        orbit.push(Chord::new(px.clone(), py.clone()));
        px = sigma(3, &px);
        py = sigma(3, &py);
        if orbit.len() > 4096 {
            return Err(Error::BoundExceeded(format!("orbit of {l}")));
        }
    }
    // Endpoints of a leaf only return to themselves, so swaps mid-orbit would
    // have been caught above; the orbit of chords is closed now.
    if !crate::lamination::check_unlinked_chords(orbit.iter()).ok() {
        return Ok(false);
    }
    let points: Vec<Angle> = orbit.iter().flat_map(|c| [c.lo().clone(), c.hi().clone()]).collect();
    let side_empty = |s: &Angle, t: &Angle| !points.iter().any(|p| in_open_arc(s, t, p));
    for c in &orbit {
        if !side_empty(c.lo(), c.hi()) && !side_empty(c.hi(), c.lo()) {
            return Ok(false);
        }
    }
    let third = third();
    let own = if orbit.len() == 1 {
        l.lo().dist_to(l.hi()).max(l.hi().dist_to(l.lo()))
    } else if side_empty(&x, &y) {
        x.dist_to(&y)
    } else {
        y.dist_to(&x)
    };
    Ok(own > third)
}

/// Hole of a periodic-type major as an oriented pair `(a,b)`.
pub fn major_orientation(l: &Chord) -> Option<(Angle, Angle)> {
    let k = exact_period(3, l.lo())?;
    let h = periodic_hole_length(k);
    let (x, y) = (l.lo().clone(), l.hi().clone());
    if x.dist_to(&y) == h {
        Some((x, y))
    } else if y.dist_to(&x) == h {
        Some((y, x))
    } else {
        None
    }
}

/// Every periodic-type gap whose major has exact period `k`.
pub fn periodic_type_gaps(k: usize) -> Vec<QuadGap> {
    let h = periodic_hole_length(k);
    crate::circle::periodic_points(3, k)
        .into_iter()
        .filter_map(|a| {
            let b = a.shift(&h);
            QuadGap::periodic(a, b).ok()
        })
        .collect()
}

impl QuadGap {
    pub fn is_special(&self) -> bool {
        matches!(self.kind, GapType::SpecialFa | GapType::SpecialFb)
    }

    /// The other orientation of `{0,1/2}`.
    pub fn special_partner(&self) -> Option<QuadGap> {
        match self.kind {
            GapType::SpecialFa => Some(QuadGap::fb()),
            GapType::SpecialFb => Some(QuadGap::fa()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn c(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn cc(s: &str) -> CriticalChord {
        CriticalChord::new(c(s)).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn critical_chord_parts() {
        let k = cc("1/3-2/3");
        assert_eq!(k.image_point(), a("0"));
        assert_eq!(k.co_critical(), a("0"));
        assert_eq!(k.long_arc().length(), r(2, 3));
        let k = cc("1/6-1/2");
        assert_eq!(k.x(), &a("1/6"));
        let k = cc("1/6-5/6");
        assert_eq!(k.x(), &a("5/6"));
        assert_eq!(k.y(), a("1/6"));
        assert!(CriticalChord::new(c("0-1/2")).is_err());
    }

    #[test]
    fn pi_examples() {
        let k = cc("1/3-2/3");
        assert!(pi_membership(&k, &a("0")));
        assert!(!pi_membership(&k, &a("1/2")));
        assert!(pi_membership(&k, &a("1/9")));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_critical_chord(&cc("1/3-2/3")), CriticalClass::RegularCritical);
        assert_eq!(classify_critical_chord(&cc("1/6-1/2")), CriticalClass::Caterpillar);
        assert_eq!(classify_critical_chord(&cc("1/12-5/12")), CriticalClass::PeriodicType(1));
    }

    #[test]
    fn build_examples() {
        let u = build_quad_gap(&cc("1/12-5/12")).unwrap();
        assert_eq!(u.major(), c("0-1/2"));
        assert_eq!(u.kind(), GapType::SpecialFb);
        let u = build_quad_gap(&cc("1/3-2/3")).unwrap();
        assert_eq!(u.sibling_major(), u.major());
        assert!(matches!(build_quad_gap(&cc("1/6-1/2")), Err(Error::CaterpillarInput(_))));
        let u = QuadGap::periodic(a("7/8"), a("1/4")).unwrap();
        assert_eq!(u.hole_length(), r(3, 8));
        assert_eq!(u.period(), Some(2));
    }

    #[test]
    fn regular_edges() {
        let u = build_quad_gap(&cc("1/3-2/3")).unwrap();
        let e = gap_edges(&u, 1);
        assert_eq!(e, vec![c("1/9-2/9"), c("1/3-2/3"), c("7/9-8/9")]);
    }

    #[test]
    fn special_edges() {
        let layers = gap_edge_layers(&QuadGap::fa(), 2);
        assert_eq!(layers[1].iter().map(|e| e.chord.clone()).collect::<Vec<_>>(), vec![c("1/6-1/3")]);
        assert_eq!(
            layers[2].iter().map(|e| e.chord.clone()).collect::<Vec<_>>(),
            vec![c("1/18-1/9"), c("7/18-4/9")]
        );
    }

    #[test]
    fn vassal_of_fb() {
        let v = vassal(&QuadGap::fb(), 6).unwrap();
        assert_eq!(v.layers[1], vec![c("1/6-1/3")]);
        assert_eq!(v.edges(), gap_edges(&QuadGap::fa(), 6));
        let u = build_quad_gap(&cc("1/3-2/3")).unwrap();
        assert!(matches!(vassal(&u, 2), Err(Error::RegularCriticalInput(_))));
    }

    #[test]
    fn caterpillar_of_diameter() {
        let g = caterpillar_edges(&QuadGap::fb(), Side::B, 3).unwrap();
        assert_eq!(g.critical_edge, c("1/6-1/2"));
        assert_eq!(g.edges, vec![c("1/6-1/2"), c("1/18-1/6"), c("1/54-1/18")]);
        assert!(g.edges[0].image(3).is_degenerate());
    }

    #[test]
    fn wing_examples() {
        assert_eq!(wings(&QuadGap::fb()).right, Arc::closed(a("0"), a("1/6")));
        let w = wings(&QuadGap::periodic(a("7/8"), a("1/4")).unwrap());
        assert_eq!(w.right, Arc::closed(a("7/8"), a("11/12")));
        assert_eq!(w.right.length(), r(1, 24));
        let u = build_quad_gap(&cc("1/3-2/3")).unwrap();
        assert!(wings(&u).right.is_degenerate());
    }

    #[test]
    fn major_detection() {
        assert!(is_periodic_type_major(&c("1/4-7/8")).unwrap());
        assert!(!is_periodic_type_major(&c("1/8-3/8")).unwrap());
        assert!(is_periodic_type_major(&c("0-1/2")).unwrap());
        assert!(is_periodic_type_major(&c("7/26-12/13")).unwrap());
        assert!(!is_periodic_type_major(&c("5/8-3/4")).unwrap());
        assert!(matches!(is_periodic_type_major(&c("1/6-1/3")), Err(Error::NotPeriodic(_))));
    }

    #[test]
    fn admits_edges_and_rejects_diagonals() {
        let u = build_quad_gap(&cc("1/3-2/3")).unwrap();
        assert!(u.admits(&c("1/3-2/3")));
        assert!(u.admits(&c("1/9-2/9")));
        assert!(u.admits(&c("4/9-5/9")));
        assert!(!u.admits(&c("0-1/3")));
        assert!(!u.admits(&c("1/9-8/9")));
    }
}
