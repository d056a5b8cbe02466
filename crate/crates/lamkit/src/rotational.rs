//! Finite rotational sets, their classification, and cycles of Fatou gaps
//! hanging off edges of a periodic polygon.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::json;

use crate::circle::{exact_period, in_closed_arc, sigma, sigma_n, Angle, Arc, Chord};
use crate::error::{Error, Result};
use crate::lamination::{majors, rotation_number, FiniteGap, GapEdge};
use crate::quad_gaps::QuadGap;

/// Default period bound for enumeration.
pub const DEFAULT_ROTATIONAL_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationalOrbit {
    pub points: Vec<Angle>,
    #[serde(serialize_with = "ser_ratio")]
    pub rotation: BigRational,
}

pub(crate) fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ser_ratio<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

/// All `sigma_d` cycles of exact period `q` on which the map acts as a
/// nonzero rotation in cyclic order.
pub fn rotational_orbits(d: u32, q: usize) -> Vec<RotationalOrbit> {
    let n = (d as u64).pow(q as u32) - 1;
    let step = |j: u64| (j * d as u64) % n;
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for j in 0..n {
        if seen[j as usize] {
            continue;
        }
        let mut cyc = vec![j];
        let mut x = step(j);
        while x != j {
            cyc.push(x);
            x = step(x);
        }
        for &c in &cyc {
            seen[c as usize] = true;
        }
        if cyc.len() != q || q < 2 {
            continue;
        }
        let mut sorted = cyc.clone();
        sorted.sort_unstable();
        let pos: HashMap<u64, usize> = sorted.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let shift = pos[&step(sorted[0])];
        if (0..q).all(|i| pos[&step(sorted[i])] == (i + shift) % q) {
            out.push(RotationalOrbit {
                points: sorted.iter().map(|&v| Angle::new(BigInt::from(v), BigInt::from(n)).unwrap()).collect(),
                rotation: BigRational::new(BigInt::from(shift), BigInt::from(q)),
            });
        }
    }
    out.sort_by(|a, b| a.points.cmp(&b.points));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RotationalType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for RotationalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationalSet {
    gap: FiniteGap,
    degree: u32,
    rotation: BigRational,
    orbits: Vec<Vec<Angle>>,
}

impl RotationalSet {
    pub fn gap(&self) -> &FiniteGap {
        &self.gap
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rotation(&self) -> &BigRational {
        &self.rotation
    }

    pub fn orbits(&self) -> &[Vec<Angle>] {
        &self.orbits
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn period(&self) -> usize {
        self.orbits[0].len()
    }

    /// The invariant diameter `{0,1/2}`, admitted with rotation number zero.
    pub fn is_diameter(&self) -> bool {
        self.degree == 3 && self.gap.vertices() == [Angle::zero(), Angle::half()]
    }

    pub fn edges(&self) -> Vec<Chord> {
        let set: BTreeSet<Chord> = self.gap.edges().into_iter().map(|e| e.chord).collect();
        set.into_iter().collect()
    }

    pub fn majors(&self) -> Vec<GapEdge> {
        majors(&self.gap, self.degree)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "vertices": self.gap.vertices(),
            "rotation": ratio_string(&self.rotation),
            "orbits": self.orbits.len(),
            "period": self.period(),
            "type": classify_rotational(self).to_string(),
            "majors": self.majors().iter().map(|e| e.chord.clone()).collect::<Vec<_>>(),
        })
    }
}

fn orbit_of(d: u32, pts: &[Angle]) -> Result<Vec<Angle>> {
    let mut v = pts.to_vec();
    v.sort();
    v.dedup();
    if v.is_empty() {
        return Err(Error::NotRotational("empty orbit".into()));
    }
    let set: HashSet<&Angle> = v.iter().collect();
    let k = exact_period(d, &v[0]).ok_or_else(|| Error::NotRotational(format!("{} is not periodic", v[0])))?;
    if k != v.len() || v.iter().any(|x| !set.contains(&sigma(d, x))) {
        return Err(Error::NotRotational(format!("{:?} is not one periodic orbit", v)));
    }
    Ok(v)
}

/// Validates one cycle, or two alternating cycles with equal period and
/// rotation number, as a rotational set.
pub fn build_rotational_set(d: u32, orbits: &[Vec<Angle>]) -> Result<RotationalSet> {
    if orbits.is_empty() || orbits.len() > 2 {
        return Err(Error::NotRotational(format!("{} orbits given", orbits.len())));
    }
    let orbits: Vec<Vec<Angle>> = orbits.iter().map(|o| orbit_of(d, o)).collect::<Result<_>>()?;
    if orbits.len() == 2 {
        if orbits[0].len() != orbits[1].len() {
            return Err(Error::PeriodMismatch(format!("{} vs {}", orbits[0].len(), orbits[1].len())));
        }
        if orbits[0] == orbits[1] {
            return Err(Error::NotRotational("the two orbits coincide".into()));
        }
    }
    let mut all: Vec<(Angle, usize)> =
        orbits.iter().enumerate().flat_map(|(i, o)| o.iter().map(move |a| (a.clone(), i))).collect();
    all.sort();
    if orbits.len() == 2 && (0..all.len()).any(|i| all[i].1 == all[(i + 1) % all.len()].1) {
        return Err(Error::NotAlternating(format!("{:?} / {:?}", orbits[0], orbits[1])));
    }
    let gap = FiniteGap::new(all.into_iter().map(|(a, _)| a).collect())?;
    gap.check_invariant(d)?;
    let rot = rotation_number(&gap, d)?;
    for o in &orbits {
        let r = rotation_number(&FiniteGap::new(o.clone()).unwrap_or_else(|_| gap.clone()), d);
        if o.len() > 1 && r.as_ref().ok() != Some(&rot) {
            return Err(Error::NotRotational("orbits have different rotation numbers".into()));
        }
    }
    let set = RotationalSet { gap, degree: d, rotation: rot, orbits };
    if set.rotation.is_zero() && !set.is_diameter() {
        return Err(Error::NotRotational(format!("{} has rotation number 0", set.gap)));
    }
    Ok(set)
}

/// Convenience: split the vertex list into orbits and build.
pub fn rotational_set_from_vertices(d: u32, vertices: &[Angle]) -> Result<RotationalSet> {
    let mut rest: BTreeSet<Angle> = vertices.iter().cloned().collect();
    let mut orbits = Vec::new();
    while let Some(x) = rest.iter().next().cloned() {
        let mut o = vec![x.clone()];
        rest.remove(&x);
        let mut y = sigma(d, &x);
        while y != x {
            if !rest.remove(&y) {
                return Err(Error::NotInvariant(format!("{y} is not among the vertices")));
            }
            o.push(y.clone());
            y = sigma(d, &y);
        }
        orbits.push(o);
    }
    build_rotational_set(d, &orbits)
}

/// Index of the edge `sigma(edge i)` in hole order.
fn edge_successor(g: &FiniteGap, d: u32) -> Vec<usize> {
    let v = g.vertices();
    let pos: HashMap<&Angle, usize> = v.iter().enumerate().map(|(i, a)| (a, i)).collect();
    (0..v.len()).map(|i| pos[&sigma(d, &v[i])]).collect()
}

pub fn classify_rotational(g: &RotationalSet) -> RotationalType {
    if g.is_diameter() {
        return RotationalType::D;
    }
    let edges = g.gap.edges();
    let maj: Vec<usize> = (0..edges.len())
        .filter(|&i| edges[i].hole.length() * BigRational::from_integer(g.degree.into()) >= BigRational::from_integer(1.into()))
        .collect();
    if maj.len() <= 1 {
        return RotationalType::A;
    }
    let succ = edge_successor(&g.gap, g.degree);
    let mut i = succ[maj[0]];
    while i != maj[0] {
        if i == maj[1] {
            return RotationalType::B;
        }
        i = succ[i];
    }
    RotationalType::D
}

/// Every rotational set of period at most `qmax`: single cycles and
/// alternating pairs of cycles with the same rotation number.
pub fn rotational_sets(d: u32, qmax: usize) -> Vec<RotationalSet> {
    let mut out = Vec::new();
    for q in 2..=qmax {
        let orbits = rotational_orbits(d, q);
        for o in &orbits {
            if let Ok(s) = build_rotational_set(d, std::slice::from_ref(&o.points)) {
                out.push(s);
            }
        }
        for (i, o1) in orbits.iter().enumerate() {
            for o2 in &orbits[i + 1..] {
                if o1.rotation == o2.rotation {
                    if let Ok(s) = build_rotational_set(d, &[o1.points.clone(), o2.points.clone()]) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

/// One closed arc `[p,q]` of a cycle of regions. `sigma_d` maps it onto
/// the next region after wrapping `sheets` times around the circle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub p: Angle,
    pub q: Angle,
    pub next: usize,
    pub sheets: usize,
}

impl Region {
    pub fn length(&self) -> BigRational {
        let l = self.p.dist_to(&self.q);
        if l.is_zero() {
            BigRational::from_integer(1.into())
        } else {
            l
        }
    }

    pub fn arc(&self) -> Arc {
        Arc::closed(self.p.clone(), self.q.clone())
    }

    pub fn owner(&self) -> Chord {
        Chord::new(self.p.clone(), self.q.clone())
    }
}

/// A cycle of Fatou gaps `F_j`, each sitting in the region `R_j` behind
/// its owner edge `{p_j, q_j}`. Each gap's boundary is the set of points
/// whose orbit visits `R_j, R_next(j), ...` through the pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCycle {
    degree: u32,
    regions: Vec<Region>,
}

impl GapCycle {
    pub fn new(degree: u32, arcs: Vec<(Angle, Angle)>) -> Result<GapCycle> {
        let index: HashMap<(Angle, Angle), usize> =
            arcs.iter().cloned().enumerate().map(|(i, pq)| (pq, i)).collect();
        let one = BigRational::from_integer(1.into());
        let mut regions = Vec::with_capacity(arcs.len());
        for (p, q) in &arcs {
            let img = (sigma(degree, p), sigma(degree, q));
            let next = *index
                .get(&img)
                .ok_or_else(|| Error::NotInvariant(format!("region [{p},{q}] maps onto [{},{}]", img.0, img.1)))?;
            let len = |a: &Angle, b: &Angle| {
                let l = a.dist_to(b);
                if l.is_zero() {
                    one.clone()
                } else {
                    l
                }
            };
            let m = len(p, q) * BigRational::from_integer(degree.into()) - len(&arcs[next].0, &arcs[next].1);
            if !m.is_integer() || m < BigRational::zero() {
                return Err(Error::ValidationFailed(format!("region [{p},{q}] does not cover its image")));
            }
            regions.push(Region { p: p.clone(), q: q.clone(), next, sheets: m.to_integer().to_usize().unwrap() });
        }
        Ok(GapCycle { degree, regions })
    }

    /// The cycle of `V(U)`: regions are the closed holes of `sigma^j(M(U))`.
    pub fn vassal_cycle(u: &QuadGap) -> Result<GapCycle> {
        let k = u.period().ok_or_else(|| Error::RegularCriticalInput(u.major().to_string()))?;
        GapCycle::new(3, (0..k).map(|j| (sigma_n(3, j, u.a()), sigma_n(3, j, u.b()))).collect())
    }

    /// Regions behind every edge of a finite invariant gap.
    pub fn attached(g: &FiniteGap, d: u32) -> Result<GapCycle> {
        GapCycle::new(d, g.edges().into_iter().map(|e| (e.hole.start, e.hole.end)).collect())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    /// Number of regions in the cycle through `j`.
    pub fn period_of(&self, j: usize) -> usize {
        let mut n = 1;
        let mut i = self.regions[j].next;
        while i != j {
            i = self.regions[i].next;
            n += 1;
        }
        n
    }

    /// Degree of the first return map on the gap in region `j`.
    pub fn return_degree(&self, j: usize) -> usize {
        let mut deg = self.regions[j].sheets + 1;
        let mut i = self.regions[j].next;
        while i != j {
            deg *= self.regions[i].sheets + 1;
            i = self.regions[i].next;
        }
        deg
    }

    /// Keeps only the regions on cycles that contain a critical region.
    pub fn critical_part(&self) -> GapCycle {
        let keep: Vec<usize> = (0..self.regions.len()).filter(|&j| self.return_degree(j) > 1).collect();
        let arcs = keep.iter().map(|&j| (self.regions[j].p.clone(), self.regions[j].q.clone())).collect();
        GapCycle::new(self.degree, arcs).expect("sub-cycle of a valid cycle")
    }

    fn d_rat(&self) -> BigRational {
        BigRational::from_integer(self.degree.into())
    }

    /// Start offsets of the pieces of region `j`, together with the piece length.
    fn pieces(&self, j: usize) -> (Vec<BigRational>, BigRational) {
        let r = &self.regions[j];
        let piece = self.regions[r.next].length() / self.d_rat();
        let starts = (0..=r.sheets).map(|i| BigRational::new(i.into(), self.degree.into())).collect();
        (starts, piece)
    }

    /// Edges of the gap in each region, by generation: generation 0 holds
    /// the owner edges, generation `n+1` the pullbacks of generation `n`.
    pub fn edge_layers(&self, depth: usize) -> Vec<Vec<Vec<GapEdge>>> {
        let n = self.regions.len();
        let mut seen: Vec<HashSet<Chord>> = vec![HashSet::new(); n];
        // (edge, is_owner)
        let mut layers: Vec<Vec<Vec<(GapEdge, bool)>>> = vec![Vec::new(); n];
        for (j, r) in self.regions.iter().enumerate() {
            let e = GapEdge { chord: r.owner(), hole: Arc::open(r.q.clone(), r.p.clone()) };
            seen[j].insert(e.chord.clone());
            layers[j].push(vec![(e, true)]);
        }
        let preds: Vec<Vec<usize>> =
            (0..n).map(|t| (0..n).filter(|&j| self.regions[j].next == t).collect()).collect();
        for g in 0..depth {
            let mut fresh: Vec<Vec<(GapEdge, bool)>> = vec![Vec::new(); n];
            for t in 0..n {
                for (e, owner) in &layers[t][g] {
                    for &j in &preds[t] {
                        let r = &self.regions[j];
                        let (starts, piece) = self.pieces(j);
                        let cands: Vec<GapEdge> = if *owner {
                            starts
                                .windows(2)
                                .map(|w| {
                                    let s = r.p.shift(&(&w[0] + &piece));
                                    let t = r.p.shift(&w[1]);
                                    GapEdge { chord: Chord::new(s.clone(), t.clone()), hole: Arc::open(s, t) }
                                })
                                .collect()
                        } else {
                            let off = self.regions[t].p.dist_to(&e.hole.start) / self.d_rat();
                            let len = e.hole.length() / self.d_rat();
                            starts
                                .iter()
                                .map(|s0| {
                                    let s = r.p.shift(&(s0 + &off));
                                    let t = s.shift(&len);
                                    GapEdge { chord: Chord::new(s.clone(), t.clone()), hole: Arc::open(s, t) }
                                })
                                .collect()
                        };
                        for c in cands {
                            if seen[j].insert(c.chord.clone()) {
                                fresh[j].push((c, false));
                            }
                        }
                    }
                }
            }
            for (j, mut f) in fresh.into_iter().enumerate() {
                f.sort_by(|x, y| x.0.chord.cmp(&y.0.chord));
                layers[j].push(f);
            }
        }
        layers
            .into_iter()
            .map(|l| l.into_iter().map(|g| g.into_iter().map(|(e, _)| e).collect()).collect())
            .collect()
    }

    /// Edges of the gap in region `j` up to the given depth.
    pub fn edges(&self, j: usize, depth: usize) -> Vec<Chord> {
        let layers = self.edge_layers(depth);
        let set: BTreeSet<Chord> = layers[j].iter().flatten().map(|e| e.chord.clone()).collect();
        set.into_iter().collect()
    }

    /// All edges of all gaps of the cycle up to depth.
    pub fn all_edges(&self, depth: usize) -> Vec<Chord> {
        let set: BTreeSet<Chord> =
            self.edge_layers(depth).into_iter().flatten().flatten().map(|e| e.chord).collect();
        set.into_iter().collect()
    }

    /// The chord does not cross the interior of the gap in region `j`.
    pub fn region_admits(&self, j: usize, c: &Chord) -> bool {
        let (x, y) = (c.lo(), c.hi());
        let r = &self.regions[j];
        if x == y || (in_closed_arc(&r.q, &r.p, x) && in_closed_arc(&r.q, &r.p, y)) {
            return true;
        }
        if !(r.arc().contains(x) && r.arc().contains(y)) {
            return false;
        }
        let (ox, oy) = (r.p.dist_to(x), r.p.dist_to(y));
        let (mut lo, mut len) = if ox <= oy { (ox.clone(), oy - ox) } else { (oy.clone(), ox - oy) };
        let d = self.d_rat();
        let mut j = j;
        // Follow the arc between the endpoints; it either lands in a sheet
        // gap (a hole of the gap) or escapes every piece.
        loop {
            let (starts, piece) = self.pieces(j);
            let mut next = None;
            for (i, s) in starts.iter().enumerate() {
                let e = s + &piece;
                if &lo >= s && &lo + &len <= e {
                    if &lo == s && len == piece {
                        return false;
                    }
                    next = Some((&lo - s) * &d);
                    break;
                }
                if i + 1 < starts.len() && lo >= e && &lo + &len <= starts[i + 1] {
                    return true;
                }
            }
            match next {
                None => return false,
                Some(l) => {
                    lo = l;
                    len *= &d;
                    j = self.regions[j].next;
                }
            }
        }
    }

    /// The chord crosses no gap of the cycle.
    pub fn admits(&self, c: &Chord) -> bool {
        (0..self.regions.len()).all(|j| self.region_admits(j, c))
    }

    /// `x` lies on the boundary of the gap in region `j`.
    pub fn in_base(&self, j: usize, x: &Angle) -> bool {
        let mut seen: HashSet<(usize, Angle)> = HashSet::new();
        let (mut j, mut x) = (j, x.clone());
        loop {
            if !seen.insert((j, x.clone())) {
                return true;
            }
            let r = &self.regions[j];
            if !r.arc().contains(&x) {
                return false;
            }
            let off = r.p.dist_to(&x);
            let (starts, piece) = self.pieces(j);
            if !starts.iter().any(|s| &off >= s && off <= s + &piece) {
                return false;
            }
            x = sigma(self.degree, &x);
            j = r.next;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttachedFatouGap {
    pub owner: Chord,
    pub region: usize,
    pub period: usize,
    pub critical: bool,
    pub return_degree: usize,
    pub edges: Vec<Chord>,
}

/// One attached Fatou gap per edge of `G`, edges truncated at `depth`.
pub fn attached_fatou_gaps(g: &RotationalSet, depth: usize) -> Result<Vec<AttachedFatouGap>> {
    let cyc = GapCycle::attached(&g.gap, g.degree)?;
    let layers = cyc.edge_layers(depth);
    Ok(cyc
        .regions()
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let set: BTreeSet<Chord> = layers[j].iter().flatten().map(|e| e.chord.clone()).collect();
            AttachedFatouGap {
                owner: r.owner(),
                region: j,
                period: cyc.period_of(j),
                critical: r.sheets > 0,
                return_degree: cyc.return_degree(j),
                edges: set.into_iter().collect(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad_gaps::vassal;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn c(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn pts(v: &[&str]) -> Vec<Angle> {
        v.iter().map(|s| a(s)).collect()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ex41() -> RotationalSet {
        build_rotational_set(3, &[pts(&["7/26", "21/26", "11/26"]), pts(&["4/13", "10/13", "12/13"])]).unwrap()
    }

    #[test]
    fn orbit_enumeration() {
        let o = rotational_orbits(3, 3);
        let want = pts(&["7/26", "11/26", "21/26"]);
        let hit = o.iter().find(|x| x.points == want).unwrap();
        assert_eq!(hit.rotation, r(2, 3));
        let o2 = rotational_orbits(2, 3);
        let one_third: Vec<_> = o2.iter().filter(|x| x.rotation == r(1, 3)).collect();
        assert_eq!(one_third.len(), 1);
        assert_eq!(one_third[0].points, pts(&["1/7", "2/7", "4/7"]));
        assert!(rotational_orbits(3, 1).is_empty());
    }

    #[test]
    fn examples_classify() {
        let g = ex41();
        assert_eq!(g.gap().len(), 6);
        assert_eq!(classify_rotational(&g), RotationalType::D);
        let g = build_rotational_set(3, &[pts(&["7/26", "11/26", "21/26"])]).unwrap();
        assert_eq!(classify_rotational(&g), RotationalType::B);
        let g = build_rotational_set(3, &[pts(&["1/26", "3/26", "9/26"])]).unwrap();
        assert_eq!(classify_rotational(&g), RotationalType::A);
        let m = g.majors();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].chord, c("1/26-9/26"));
        assert!(m[0].hole.contains(&a("0")) && m[0].hole.contains(&a("1/2")));
    }

    #[test]
    fn build_errors() {
        let e = build_rotational_set(3, &[pts(&["1/8", "3/8"]), pts(&["5/8", "7/8"])]);
        assert!(matches!(e, Err(Error::NotAlternating(_))));
        let e = build_rotational_set(3, &[pts(&["1/8", "3/8"]), pts(&["7/26", "21/26", "11/26"])]);
        assert!(matches!(e, Err(Error::PeriodMismatch(_))));
        assert!(matches!(build_rotational_set(3, &[pts(&["1/8"])]), Err(Error::NotRotational(_))));
        let d = build_rotational_set(3, &[pts(&["0"]), pts(&["1/2"])]).unwrap();
        assert_eq!(classify_rotational(&d), RotationalType::D);
    }

    #[test]
    fn two_orbit_period_two() {
        let g = build_rotational_set(3, &[pts(&["1/8", "3/8"]), pts(&["1/4", "3/4"])]).unwrap();
        assert_eq!(classify_rotational(&g), RotationalType::D);
        let g = build_rotational_set(3, &[pts(&["1/8", "3/8"])]).unwrap();
        assert_eq!(classify_rotational(&g), RotationalType::A);
        let g = build_rotational_set(3, &[pts(&["1/4", "3/4"])]).unwrap();
        assert_eq!(classify_rotational(&g), RotationalType::B);
    }

    #[test]
    fn attached_gaps_of_examples() {
        let g = ex41();
        let gaps = attached_fatou_gaps(&g, 6).unwrap();
        assert_eq!(gaps.len(), 6);
        let crit: Vec<_> = gaps.iter().filter(|x| x.critical).map(|x| x.owner.clone()).collect();
        assert_eq!(crit.len(), 2);
        assert!(crit.contains(&c("7/26-12/13")));
        // The critical gap at a type D major is the vassal of the periodic gap with that major.
        let w = QuadGap::periodic(a("12/13"), a("7/26")).unwrap();
        let cyc = GapCycle::attached(g.gap(), 3).unwrap();
        let j = cyc.regions().iter().position(|r| r.p == a("12/13")).unwrap();
        let v = vassal(&w, 3).unwrap().edges();
        let att: BTreeSet<Chord> = cyc.edges(j, 9).into_iter().collect();
        assert!(v.iter().all(|e| att.contains(e)));
        let v4: BTreeSet<Chord> = vassal(&w, 4).unwrap().edges().into_iter().collect();
        assert!(att.iter().all(|e| v4.contains(e)));

        let g = build_rotational_set(3, &[pts(&["1/26", "3/26", "9/26"])]).unwrap();
        let gaps = attached_fatou_gaps(&g, 3).unwrap();
        let crit: Vec<_> = gaps.iter().filter(|x| x.critical).collect();
        assert_eq!(crit.len(), 1);
        assert_eq!(crit[0].owner, c("1/26-9/26"));
        assert_eq!(crit[0].return_degree, 3);
    }

    #[test]
    fn vassal_cycle_matches_vassal() {
        let u = QuadGap::fb();
        let cyc = GapCycle::vassal_cycle(&u).unwrap();
        assert_eq!(cyc.edges(0, 5), vassal(&u, 5).unwrap().edges());
        assert!(cyc.in_base(0, &a("1/6")));
        assert!(!cyc.in_base(0, &a("1/4")));
        assert!(cyc.admits(&c("1/18-1/9")));
        assert!(!cyc.admits(&c("0-1/3")));
        assert!(!cyc.admits(&c("0-1/6")));
        assert!(!cyc.admits(&c("1/54-1/18")));
        assert!(cyc.admits(&c("1/6-1/3")));
        assert!(cyc.admits(&c("2/3-5/6")));
    }
}
