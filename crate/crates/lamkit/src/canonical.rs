//! Pullback construction of finite-depth canonical laminations.
//!
//! The engine works on an integer grid: every endpoint reachable within the
//! requested depth has a denominator dividing `Q = lcm(inputs) * d^(depth+2)`,
//! so angles become exact `u128` residues mod `Q` and all comparisons are
//! integer ones. Results are converted back to exact angles.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::circle::{Angle, Chord};
use crate::error::{Error, Result};
use crate::lamination::{
    FiniteGap, GapDescriptor, GapKind, Generator, LaminationSlice, Leaf, Provenance, SpecialGap,
};
use crate::quad_gaps::{GapType, QuadGap};
use crate::rotational::{rotational_orbits, GapCycle, RotationalSet};

/// Default number of pullback generations.
pub const DEFAULT_DEPTH: usize = 8;

/// A region whose interior pullbacks must not cross.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// An invariant quadratic gap of `sigma_3`.
    QuadGap(QuadGap),
    /// A cycle of Fatou gaps (vassal cycles, gaps attached to a polygon).
    Cycle(GapCycle),
    /// A finite gap. Strict: only its edges and chords inside one open hole
    /// pass. Permissive: chords inside one closed hole pass.
    Finite { gap: FiniteGap, strict: bool },
    /// `inner`, except that the listed chords always pass.
    Relaxed { inner: Box<Constraint>, allowed: Vec<Chord> },
}

impl Constraint {
    /// Exact check on angles, independent of the grid.
    pub fn admits(&self, c: &Chord) -> bool {
        match self {
            Constraint::QuadGap(u) => u.admits(c),
            Constraint::Cycle(g) => g.admits(c),
            Constraint::Finite { gap, strict } => finite_admits(gap, *strict, c),
            Constraint::Relaxed { inner, allowed } => allowed.contains(c) || inner.admits(c),
        }
    }

    fn angles(&self) -> Vec<Angle> {
        match self {
            Constraint::QuadGap(u) => vec![u.a().clone(), u.b().clone(), u.a2(), u.b2()],
            Constraint::Cycle(g) => g.regions().iter().flat_map(|r| [r.p.clone(), r.q.clone()]).collect(),
            Constraint::Finite { gap, .. } => gap.vertices().to_vec(),
            Constraint::Relaxed { inner, allowed } => {
                let mut v = inner.angles();
                v.extend(allowed.iter().flat_map(|c| [c.lo().clone(), c.hi().clone()]));
                v
            }
        }
    }

    pub fn descriptor(&self) -> GapDescriptor {
        match self {
            Constraint::QuadGap(u) => match u.kind() {
                GapType::SpecialFa => GapDescriptor { kind: GapKind::Special { which: SpecialGap::Fa }, label: "U".into() },
                GapType::SpecialFb => GapDescriptor { kind: GapKind::Special { which: SpecialGap::Fb }, label: "U".into() },
                GapType::RegularCritical => GapDescriptor {
                    kind: GapKind::Fatou { degree: 2, period: 1, major: u.major(), rule: "regular-critical".into() },
                    label: "U".into(),
                },
                GapType::PeriodicType(_) => GapDescriptor {
                    kind: GapKind::Fatou { degree: 2, period: 1, major: u.major(), rule: "periodic-type".into() },
                    label: "U".into(),
                },
            },
            Constraint::Cycle(g) => {
                let r = &g.regions()[0];
                GapDescriptor {
                    kind: GapKind::Fatou {
                        degree: g.return_degree(0) as u32,
                        period: g.period_of(0),
                        major: r.owner(),
                        rule: "cycle".into(),
                    },
                    label: "F".into(),
                }
            }
            Constraint::Finite { gap, .. } => {
                GapDescriptor { kind: GapKind::Finite { vertices: gap.vertices().to_vec() }, label: "G".into() }
            }
            Constraint::Relaxed { inner, .. } => inner.descriptor(),
        }
    }
}

fn finite_admits(gap: &FiniteGap, strict: bool, c: &Chord) -> bool {
    let edges: HashSet<Chord> = gap.edges().into_iter().map(|e| e.chord).collect();
    if edges.contains(c) {
        return true;
    }
    let n = gap.len();
    let holes = |x: &Angle| -> Vec<usize> {
        match gap.vertices().binary_search(x) {
            Ok(_) if strict => vec![],
            Ok(i) => vec![(i + n - 1) % n, i],
            Err(i) => vec![(i + n - 1) % n],
        }
    };
    let (hx, hy) = (holes(c.lo()), holes(c.hi()));
    hx.iter().any(|h| hy.contains(h))
}

/// Integer model of the circle `Z / qZ`.
struct Grid {
    q: u128,
    qb: BigInt,
}

impl Grid {
    fn new(angles: &[Angle], d: u32, depth: usize) -> Result<Grid> {
        let mut l = BigInt::one();
        for a in angles {
            l = l.lcm(a.denom());
        }
        let qb = l * BigInt::from(d).pow(depth as u32 + 2);
        let q = qb
            .to_u128()
            .filter(|q| *q < (1u128 << 120))
            .ok_or_else(|| Error::BoundExceeded(format!("common denominator {qb} is too large")))?;
        Ok(Grid { q, qb })
    }

    fn of(&self, a: &Angle) -> u128 {
        let (k, r) = self.qb.div_rem(a.denom());
        debug_assert!(r.is_zero());
        (a.numer() * k).to_u128().expect("grid value fits")
    }

    fn dist(&self, a: u128, b: u128) -> u128 {
        if b >= a {
            b - a
        } else {
            b + self.q - a
        }
    }

    fn in_closed(&self, a: u128, b: u128, x: u128) -> bool {
        self.dist(a, x) <= self.dist(a, b)
    }
}

struct GRegion {
    p: u128,
    q: u128,
    len: u128,
    next: usize,
    sheets: u128,
    piece: u128,
}

enum GridC {
    Quad { a: u128, hole: u128, d: u128 },
    Cycle { regions: Vec<GRegion>, d: u128, step: u128 },
    Finite { verts: Vec<u128>, edges: HashSet<(u128, u128)>, strict: bool },
    Relaxed { inner: Box<GridC>, allowed: HashSet<(u128, u128)> },
}

fn ordered(x: u128, y: u128) -> (u128, u128) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

impl GridC {
    fn compile(c: &Constraint, g: &Grid) -> GridC {
        match c {
            Constraint::QuadGap(u) => GridC::Quad { a: g.of(u.a()), hole: g.dist(g.of(u.a()), g.of(u.b())), d: 3 },
            Constraint::Cycle(cy) => {
                let d = cy.degree() as u128;
                let len = |p: u128, q: u128| if p == q { g.q } else { g.dist(p, q) };
                let regs = cy.regions();
                let regions = regs
                    .iter()
                    .map(|r| {
                        let (p, q) = (g.of(&r.p), g.of(&r.q));
                        let nr = &regs[r.next];
                        let nlen = len(g.of(&nr.p), g.of(&nr.q));
                        GRegion { p, q, len: len(p, q), next: r.next, sheets: r.sheets as u128, piece: nlen / d }
                    })
                    .collect();
                GridC::Cycle { regions, d, step: g.q / d }
            }
            Constraint::Finite { gap, strict } => {
                let verts: Vec<u128> = gap.vertices().iter().map(|v| g.of(v)).collect();
                let edges = gap.edges().iter().map(|e| ordered(g.of(e.chord.lo()), g.of(e.chord.hi()))).collect();
                GridC::Finite { verts, edges, strict: *strict }
            }
            Constraint::Relaxed { inner, allowed } => GridC::Relaxed {
                inner: Box::new(GridC::compile(inner, g)),
                allowed: allowed.iter().map(|c| ordered(g.of(c.lo()), g.of(c.hi()))).collect(),
            },
        }
    }

    fn admits(&self, g: &Grid, x: u128, y: u128) -> bool {
        match self {
            GridC::Quad { a, hole, d } => {
                for (s0, e0) in [(x, y), (y, x)] {
                    let mut s = s0;
                    let mut len = g.dist(s0, e0);
                    loop {
                        if g.dist(*a, s) + len <= *hole {
                            return true;
                        }
                        if len * d >= g.q {
                            break;
                        }
                        s = (s * d) % g.q;
                        len *= d;
                    }
                }
                false
            }
            GridC::Cycle { regions, d, step } => {
                (0..regions.len()).all(|j| cycle_region_admits(g, regions, *d, *step, j, x, y))
            }
            GridC::Finite { verts, edges, strict } => {
                if edges.contains(&(x, y)) {
                    return true;
                }
                let n = verts.len();
                let holes = |p: u128| -> Vec<usize> {
                    match verts.binary_search(&p) {
                        Ok(_) if *strict => vec![],
                        Ok(i) => vec![(i + n - 1) % n, i],
                        Err(i) => vec![(i + n - 1) % n],
                    }
                };
                let hy = holes(y);
                holes(x).iter().any(|h| hy.contains(h))
            }
            GridC::Relaxed { inner, allowed } => allowed.contains(&(x, y)) || inner.admits(g, x, y),
        }
    }
}

fn cycle_region_admits(g: &Grid, regions: &[GRegion], d: u128, step: u128, j: usize, x: u128, y: u128) -> bool {
    let r = &regions[j];
    if g.in_closed(r.q, r.p, x) && g.in_closed(r.q, r.p, y) {
        return true;
    }
    let (ox, oy) = (g.dist(r.p, x), g.dist(r.p, y));
    if ox > r.len || oy > r.len {
        return false;
    }
    let (mut lo, mut len) = if ox <= oy { (ox, oy - ox) } else { (oy, ox - oy) };
    let mut j = j;
    loop {
        let r = &regions[j];
        let mut next = None;
        for i in 0..=r.sheets {
            let s = i * step;
            let e = s + r.piece;
            if lo >= s && lo + len <= e {
                if lo == s && len == r.piece {
                    return false;
                }
                next = Some((lo - s) * d);
                break;
            }
            if i < r.sheets && lo >= e && lo + len <= s + step {
                return true;
            }
        }
        match next {
            None => return false,
            Some(l) => {
                lo = l;
                len *= d;
                j = r.next;
            }
        }
    }
}

/// Endpoint index of committed leaves for crossing queries.
#[derive(Default)]
struct LinkIndex {
    partners: BTreeMap<u128, Vec<u128>>,
}

impl LinkIndex {
    fn insert(&mut self, x: u128, y: u128) {
        self.partners.entry(x).or_default().push(y);
        self.partners.entry(y).or_default().push(x);
    }

    /// A committed leaf has exactly one endpoint strictly inside `(x,y)` and
    /// the other strictly outside `[x,y]`. Scans the inside and the outside
    /// in lockstep and stops once either side is exhausted.
    fn crosses(&self, x: u128, y: u128) -> bool {
        let mut inside = self.partners.range(x + 1..y);
        let mut outside = self.partners.range(y + 1..).chain(self.partners.range(..x));
        loop {
            match inside.next() {
                None => return false,
                Some((_, ps)) => {
                    if ps.iter().any(|&p| p < x || p > y) {
                        return true;
                    }
                }
            }
            match outside.next() {
                None => return false,
                Some((_, ps)) => {
                    if ps.iter().any(|&p| p > x && p < y) {
                        return true;
                    }
                }
            }
        }
    }
}

/// Generation-synchronous pullback: each leaf of generation `n` spawns its
/// `d^2` preimage chords; a preimage is kept iff every constraint admits it
/// and it does not cross a leaf committed earlier (previous generations, or
/// this generation in canonical order).
pub fn pullback_engine(d: u32, seeds: &[Chord], forbidden: &[Constraint], depth: usize) -> Result<LaminationSlice> {
    let seed_set: BTreeSet<Chord> = seeds.iter().filter(|c| !c.is_degenerate()).cloned().collect();
    for s in &seed_set {
        let img = s.image(d);
        if !img.is_degenerate() && !seed_set.contains(&img) {
            return Err(Error::SeedNotForwardInvariant(format!("{s} maps to {img}")));
        }
    }
    let mut generators: Vec<Generator> = seed_set.iter().cloned().map(Generator::Leaf).collect();
    generators.extend(forbidden.iter().map(|c| Generator::Gap(c.descriptor())));
    if seed_set.is_empty() {
        return Ok(LaminationSlice::new(d, depth, Vec::new(), generators));
    }
    let mut angles: Vec<Angle> = seed_set.iter().flat_map(|c| [c.lo().clone(), c.hi().clone()]).collect();
    for c in forbidden {
        angles.extend(c.angles());
    }
    let grid = Grid::new(&angles, d, depth)?;
    let checks: Vec<GridC> = forbidden.iter().map(|c| GridC::compile(c, &grid)).collect();

    let mut index = LinkIndex::default();
    let mut present: HashSet<(u128, u128)> = HashSet::new();
    let mut out: Vec<(u128, u128, Provenance)> = Vec::new();
    let mut frontier: Vec<(u128, u128)> = Vec::new();
    for s in &seed_set {
        let (x, y) = ordered(grid.of(s.lo()), grid.of(s.hi()));
        index.insert(x, y);
        present.insert((x, y));
        out.push((x, y, Provenance::Generator));
        frontier.push((x, y));
    }
    let du = d as u128;
    for n in 1..=depth {
        let mut cands: BTreeSet<(u128, u128)> = BTreeSet::new();
        for &(x, y) in &frontier {
            for i in 0..du {
                let px = (x + i * grid.q) / du;
                for j in 0..du {
                    let py = (y + j * grid.q) / du;
                    let c = ordered(px, py);
                    if !present.contains(&c) {
                        cands.insert(c);
                    }
                }
            }
        }
        let mut next = Vec::new();
        for (x, y) in cands {
            if !checks.iter().all(|c| c.admits(&grid, x, y)) || index.crosses(x, y) {
                continue;
            }
            index.insert(x, y);
            present.insert((x, y));
            out.push((x, y, Provenance::Pullback(n)));
            next.push((x, y));
        }
        frontier = next;
    }
    // The grid is order preserving, so sorting the integers sorts the chords.
    out.sort_unstable_by_key(|&(x, y, _)| (x, y));
    let leaves = out
        .into_iter()
        .map(|(x, y, provenance)| Leaf {
            chord: Chord::new(Angle::from_grid(x, grid.q), Angle::from_grid(y, grid.q)),
            provenance,
        })
        .collect();
    Ok(LaminationSlice::from_sorted(d, depth, leaves, generators))
}

/// Seeds and constraints of the canonical lamination of `U`.
pub fn quadgap_setup(u: &QuadGap) -> Result<(Vec<Chord>, Vec<Constraint>)> {
    let seeds: Vec<Chord> = u.major_cycle().into_iter().map(|e| e.chord).collect();
    let mut cons = vec![Constraint::QuadGap(u.clone())];
    if !u.is_regular() {
        cons.push(Constraint::Cycle(GapCycle::vassal_cycle(u)?));
    }
    Ok((seeds, cons))
}

pub fn canonical_lam_quadgap(u: &QuadGap, depth: usize) -> Result<LaminationSlice> {
    let (seeds, cons) = quadgap_setup(u)?;
    pullback_engine(3, &seeds, &cons, depth)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonicalOptions {
    /// Admit pullbacks that share a vertex with the polygon.
    pub permissive_shared_vertex: bool,
}

impl Default for CanonicalOptions {
    fn default() -> Self {
        CanonicalOptions { permissive_shared_vertex: false }
    }
}

/// Seeds and constraints of the canonical lamination of a rotational set.
pub fn rotational_setup(g: &RotationalSet, opts: CanonicalOptions) -> Result<(Vec<Chord>, Vec<Constraint>)> {
    let cycle = GapCycle::attached(g.gap(), g.degree())?.critical_part();
    let cons = vec![
        Constraint::Finite { gap: g.gap().clone(), strict: !opts.permissive_shared_vertex },
        Constraint::Cycle(cycle),
    ];
    Ok((g.edges(), cons))
}

pub fn canonical_lam_rotational(g: &RotationalSet, depth: usize) -> Result<LaminationSlice> {
    canonical_lam_rotational_with(g, depth, CanonicalOptions::default())
}

pub fn canonical_lam_rotational_with(g: &RotationalSet, depth: usize, opts: CanonicalOptions) -> Result<LaminationSlice> {
    let (seeds, cons) = rotational_setup(g, opts)?;
    pullback_engine(g.degree(), &seeds, &cons, depth)
}

/// Largest denominator accepted for quadratic rotation numbers.
pub const QUADRATIC_PERIOD_BOUND: usize = 14;

/// The unique `sigma_2` cycle with rotation number `p/q`.
pub fn quadratic_rotational_set(rot: &BigRational) -> Result<RotationalSet> {
    let q = rot.denom().to_usize().unwrap_or(usize::MAX);
    if rot.is_zero() || q < 2 || rot >= &BigRational::one() || rot < &BigRational::zero() {
        return Err(Error::NotRotational(format!("rotation number {rot}")));
    }
    if q > QUADRATIC_PERIOD_BOUND {
        return Err(Error::BoundExceeded(format!("period {q} exceeds {QUADRATIC_PERIOD_BOUND}")));
    }
    let hits: Vec<_> = rotational_orbits(2, q).into_iter().filter(|o| &o.rotation == rot).collect();
    if hits.len() != 1 {
        return Err(Error::ValidationFailed(format!("{} sigma_2 orbits with rotation {rot}", hits.len())));
    }
    crate::rotational::build_rotational_set(2, &[hits[0].points.clone()])
}

/// Canonical quadratic lamination of rotation number `p/q`; `None` gives the
/// empty lamination.
pub fn canonical_quadratic(rot: Option<&BigRational>, depth: usize) -> Result<LaminationSlice> {
    match rot {
        None => Ok(LaminationSlice::new(2, depth, Vec::new(), Vec::new())),
        Some(r) => canonical_lam_rotational(&quadratic_rotational_set(r)?, depth),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamination::{check_sibling_invariant, check_unlinked};
    use crate::quad_gaps::{build_quad_gap, CriticalChord};

    fn c(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn regular() -> QuadGap {
        build_quad_gap(&CriticalChord::new(c("1/3-2/3")).unwrap()).unwrap()
    }

    #[test]
    fn regular_depth_two() {
        let s = canonical_lam_quadgap(&regular(), 2).unwrap();
        assert!(s.contains(&c("1/9-2/9")) && s.contains(&c("7/9-8/9")));
        assert!(s.contains(&c("4/9-5/9")));
        for l in s.chords() {
            let mut x = l.clone();
            let mut hit = false;
            for _ in 0..=2 {
                if x == c("1/3-2/3") {
                    hit = true;
                }
                x = x.image(3);
            }
            assert!(hit, "{l}");
        }
        assert!(check_unlinked(&s).ok());
        assert!(check_sibling_invariant(&s).ok());
    }

    #[test]
    fn empty_seeds() {
        let s = pullback_engine(3, &[], &[], 4).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn seeds_must_be_invariant() {
        let e = pullback_engine(3, &[c("1/9-2/9")], &[], 2);
        assert!(matches!(e, Err(Error::SeedNotForwardInvariant(_))));
    }

    #[test]
    fn quadratic_sets() {
        let g = quadratic_rotational_set(&BigRational::new(1.into(), 3.into())).unwrap();
        assert_eq!(g.edges(), vec![c("1/7-2/7"), c("1/7-4/7"), c("2/7-4/7")]);
        let m = g.majors();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].chord, c("1/7-4/7"));
        let g = quadratic_rotational_set(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(g.edges(), vec![c("1/3-2/3")]);
    }

    #[test]
    fn quadratic_slices_are_laminations() {
        for (p, q) in [(1, 2), (1, 3), (2, 5)] {
            let s = canonical_quadratic(Some(&BigRational::new(p.into(), q.into())), 6).unwrap();
            assert!(check_unlinked(&s).ok(), "{p}/{q}");
            let rep = check_sibling_invariant(&s);
            assert!(rep.ok(), "{p}/{q}: {rep:?}");
        }
    }

    #[test]
    fn strict_and_permissive_finite() {
        let g = FiniteGap::new(vec!["1/7".parse().unwrap(), "2/7".parse().unwrap(), "4/7".parse().unwrap()]).unwrap();
        let strict = Constraint::Finite { gap: g.clone(), strict: true };
        let perm = Constraint::Finite { gap: g, strict: false };
        assert!(strict.admits(&c("1/7-2/7")));
        assert!(!strict.admits(&c("1/7-3/14")));
        assert!(perm.admits(&c("1/7-3/14")));
        assert!(!perm.admits(&c("1/7-1/2")));
    }
}
