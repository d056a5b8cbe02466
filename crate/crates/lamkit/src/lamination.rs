//! Finite-depth lamination slices, finite gaps and the basic checkers.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::circle::{exact_period, fixed_points, sigma, Angle, Arc, Chord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    Generator,
    Pullback(usize),
    /// Inserted by a tuning; the number is the depth of the source leaf.
    Lifted(usize),
}

impl Provenance {
    pub fn depth(&self) -> usize {
        match self {
            Provenance::Generator => 0,
            Provenance::Pullback(n) | Provenance::Lifted(n) => *n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Leaf {
    pub chord: Chord,
    pub provenance: Provenance,
}

/// Cyclically ordered vertex list; stored increasing from the smallest angle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteGap {
    vertices: Vec<Angle>,
}

/// One edge of a finite gap together with the hole behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapEdge {
    pub chord: Chord,
    pub hole: Arc,
}

impl FiniteGap {
    pub fn new(mut vertices: Vec<Angle>) -> Result<FiniteGap> {
        vertices.sort();
        vertices.dedup();
        if vertices.len() < 2 {
            return Err(Error::ValidationFailed("a finite gap needs two distinct vertices".into()));
        }
        Ok(FiniteGap { vertices })
    }

    pub fn vertices(&self) -> &[Angle] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges in hole order: edge `i` runs from vertex `i` to vertex `i+1`.
    pub fn edges(&self) -> Vec<GapEdge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i].clone();
                let b = self.vertices[(i + 1) % n].clone();
                GapEdge { chord: Chord::new(a.clone(), b.clone()), hole: Arc::open(a, b) }
            })
            .collect()
    }

    pub fn contains_vertex(&self, x: &Angle) -> bool {
        self.vertices.binary_search(x).is_ok()
    }

    /// Index of the open hole containing `x`, `None` for vertices.
    pub fn hole_index(&self, x: &Angle) -> Option<usize> {
        match self.vertices.binary_search(x) {
            Ok(_) => None,
            Err(0) => Some(self.vertices.len() - 1),
            Err(i) => Some(i - 1),
        }
    }

    pub fn image(&self, d: u32) -> Result<FiniteGap> {
        FiniteGap::new(self.vertices.iter().map(|v| sigma(d, v)).collect())
    }

    /// Vertex set invariant and every hole maps to a hole or collapses.
    pub fn check_invariant(&self, d: u32) -> Result<()> {
        let img: Vec<Angle> = self.vertices.iter().map(|v| sigma(d, v)).collect();
        let mut sorted = img.clone();
        sorted.sort();
        sorted.dedup();
        if sorted != self.vertices {
            return Err(Error::NotInvariant(format!("vertex set of {self} is not mapped onto itself")));
        }
        let holes: HashSet<(Angle, Angle)> =
            self.edges().into_iter().map(|e| (e.hole.start, e.hole.end)).collect();
        for e in self.edges() {
            let (a, b) = (sigma(d, &e.hole.start), sigma(d, &e.hole.end));
            if a != b && !holes.contains(&(a.clone(), b.clone())) {
                return Err(Error::NotInvariant(format!("hole {} maps onto ({a},{b}), not a hole", e.hole)));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FiniteGap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.vertices.iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

pub fn holes(g: &FiniteGap) -> Vec<Arc> {
    g.edges().into_iter().map(|e| e.hole).collect()
}

/// Edges whose hole is at least `1/d` long.
pub fn majors(g: &FiniteGap, d: u32) -> Vec<GapEdge> {
    let bound = BigRational::new(BigInt::one(), BigInt::from(d));
    g.edges().into_iter().filter(|e| e.hole.length() >= bound).collect()
}

/// Combinatorial rotation number of `sigma_d` on the vertices, as `p/q` in `[0,1)`.
pub fn rotation_number(g: &FiniteGap, d: u32) -> Result<BigRational> {
    let v = g.vertices();
    let n = v.len();
    let pos: HashMap<&Angle, usize> = v.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut perm = Vec::with_capacity(n);
    for x in v {
        let y = sigma(d, x);
        match pos.get(&y) {
            Some(&j) => perm.push(j),
            None => return Err(Error::NotInvariant(format!("{x} maps to {y} outside {g}"))),
        }
    }
    let mut seen = perm.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != n {
        return Err(Error::NotInvariant(format!("sigma_{d} is not a bijection on {g}")));
    }
    let shift = (perm[0] + n) % n;
    if (0..n).any(|i| perm[i] != (i + shift) % n) {
        return Err(Error::OrderNotPreserved(g.to_string()));
    }
    Ok(BigRational::new(BigInt::from(shift), BigInt::from(n)))
}

/// Chords whose endpoint set is `sigma_d`-invariant (fixed pairs and swapped
/// period-two pairs).
pub fn invariant_leaves(d: u32) -> Vec<Chord> {
    let pts = fixed_points(d, 2);
    let mut out = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            let (sx, sy) = (sigma(d, x), sigma(d, y));
            if (&sx == x && &sy == y) || (&sx == y && &sy == x) {
                out.push(Chord::new(x.clone(), y.clone()));
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialGap {
    Fa,
    Fb,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GapKind {
    Finite { vertices: Vec<Angle> },
    Fatou { degree: u32, period: usize, major: Chord, rule: String },
    Special { which: SpecialGap },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapDescriptor {
    #[serde(flatten)]
    pub kind: GapKind,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Generator {
    Leaf(Chord),
    Gap(GapDescriptor),
}

/// A finite-depth piece of an invariant lamination. Leaves are kept in
/// canonical order without degenerate ones.
#[derive(Clone, Debug)]
pub struct LaminationSlice {
    degree: u32,
    depth: usize,
    leaves: Vec<Leaf>,
    generators: Vec<Generator>,
    index: HashSet<Chord>,
}

#[derive(Serialize, Deserialize)]
struct SliceJson {
    degree: u32,
    depth: usize,
    leaves: Vec<Chord>,
    #[serde(default)]
    generators: Vec<Generator>,
}

impl PartialEq for LaminationSlice {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.depth == other.depth && self.leaves == other.leaves
    }
}

impl LaminationSlice {
    pub fn new(degree: u32, depth: usize, leaves: Vec<Leaf>, generators: Vec<Generator>) -> LaminationSlice {
        let mut best: HashMap<Chord, Provenance> = HashMap::new();
        for l in leaves {
            if l.chord.is_degenerate() {
                continue;
            }
            let e = best.entry(l.chord).or_insert(l.provenance);
            if l.provenance.depth() < e.depth() {
                *e = l.provenance;
            }
        }
        let mut leaves: Vec<Leaf> =
            best.into_iter().map(|(chord, provenance)| Leaf { chord, provenance }).collect();
        leaves.sort_by(|a, b| a.chord.cmp(&b.chord));
        let index = leaves.iter().map(|l| l.chord.clone()).collect();
        LaminationSlice { degree, depth, leaves, generators, index }
    }

    /// Trusts `leaves` to be sorted, distinct and non-degenerate.
    pub(crate) fn from_sorted(degree: u32, depth: usize, leaves: Vec<Leaf>, generators: Vec<Generator>) -> LaminationSlice {
        let index = leaves.iter().map(|l| l.chord.clone()).collect();
        LaminationSlice { degree, depth, leaves, generators, index }
    }

    pub fn empty(degree: u32) -> LaminationSlice {
        LaminationSlice::new(degree, 0, Vec::new(), Vec::new())
    }

    /// Builds a slice from bare chords, recovering provenance from the
    /// generator leaves by forward iteration.
    pub fn from_chords(degree: u32, depth: usize, chords: Vec<Chord>, generators: Vec<Generator>) -> LaminationSlice {
        let seeds: HashSet<Chord> = generators
            .iter()
            .filter_map(|g| match g {
                Generator::Leaf(c) => Some(c.clone()),
                Generator::Gap(_) => None,
            })
            .collect();
        let leaves = chords
            .into_iter()
            .map(|chord| {
                let provenance = if seeds.contains(&chord) {
                    Provenance::Generator
                } else {
                    let mut c = chord.clone();
                    let mut found = None;
                    for n in 1..=depth {
                        c = c.image(degree);
                        if seeds.contains(&c) {
                            found = Some(n);
                            break;
                        }
                    }
                    match found {
                        Some(n) => Provenance::Pullback(n),
                        None => Provenance::Lifted(depth),
                    }
                };
                Leaf { chord, provenance }
            })
            .collect();
        LaminationSlice::new(degree, depth, leaves, generators)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn chords(&self) -> impl Iterator<Item = &Chord> {
        self.leaves.iter().map(|l| &l.chord)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn contains(&self, c: &Chord) -> bool {
        self.index.contains(c)
    }

    pub fn chord_set(&self) -> &HashSet<Chord> {
        &self.index
    }

    /// Leaves up to the given depth.
    pub fn truncate(&self, depth: usize) -> LaminationSlice {
        let leaves = self.leaves.iter().filter(|l| l.provenance.depth() <= depth).cloned().collect();
        LaminationSlice::new(self.degree, depth.min(self.depth), leaves, self.generators.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SliceJson {
            degree: self.degree,
            depth: self.depth,
            leaves: self.chords().cloned().collect(),
            generators: self.generators.clone(),
        })
        .expect("slice serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LaminationSlice> {
        let s: SliceJson = serde_json::from_value(v.clone())?;
        Ok(LaminationSlice::from_chords(s.degree, s.depth, s.leaves, s.generators))
    }

    pub fn from_json_str(s: &str) -> Result<LaminationSlice> {
        LaminationSlice::from_json(&serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct UnlinkedReport {
    pub violations: Vec<(Chord, Chord)>,
}

impl UnlinkedReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Common denominator of the chords and the chords scaled to it, when it
/// leaves room for one multiplication by `d` in 128 bits.
fn scaled(chords: &[&Chord], d: u32) -> Option<(u128, Vec<(u128, u128)>)> {
    let mut dens: HashSet<&BigInt> = HashSet::new();
    for c in chords {
        dens.insert(c.lo().denom());
        dens.insert(c.hi().denom());
    }
    let mut q: u128 = 1;
    for den in dens {
        let den = den.to_u128()?;
        q = q.checked_mul(den / q.gcd(&den))?;
    }
    q.checked_mul(d.max(2) as u128)?;
    let conv = |a: &Angle| a.numer().to_u128().expect("in range") * (q / a.denom().to_u128().expect("in range"));
    Some((q, chords.iter().map(|c| (conv(c.lo()), conv(c.hi()))).collect()))
}

fn pairs_linked<T: Ord>(a: &(T, T), b: &(T, T)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

fn pairs_disjoint<T: Ord>(a: &(T, T), b: &(T, T)) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1 && !pairs_linked(a, b)
}

/// Sweep over pairs sorted by `(lo asc, hi desc)`; a nested stack of open
/// intervals detects the first crossing in `O(n log n)`.
fn has_crossing<T: Ord>(keys: &[(T, T)], order: &[usize]) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort_by(|&a, &b| keys[a].0.cmp(&keys[b].0).then_with(|| keys[b].1.cmp(&keys[a].1)));
    let mut stack: Vec<&(T, T)> = Vec::new();
    for i in sorted {
        let c = &keys[i];
        while let Some(top) = stack.last() {
            if top.1 <= c.0 {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(top) = stack.last() {
            if top.1 < c.1 && top.0 < c.0 {
                return true;
            }
        }
        stack.push(c);
    }
    false
}

/// Index pairs of crossing keys, each key counted once.
fn crossings<T: Ord>(keys: &[(T, T)]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    order.dedup_by(|a, b| keys[*a] == keys[*b]);
    if !has_crossing(keys, &order) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (n, &i) in order.iter().enumerate() {
        for &j in &order[n + 1..] {
            if keys[j].0 >= keys[i].1 {
                break;
            }
            if pairs_linked(&keys[i], &keys[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn check_unlinked_chords<'a>(chords: impl IntoIterator<Item = &'a Chord>) -> UnlinkedReport {
    let v: Vec<&Chord> = chords.into_iter().filter(|c| !c.is_degenerate()).collect();
    let hits = match scaled(&v, 2) {
        Some((_, keys)) => crossings(&keys),
        None => crossings(&v.iter().map(|c| (c.lo(), c.hi())).collect::<Vec<_>>()),
    };
    UnlinkedReport { violations: hits.into_iter().map(|(i, j)| (v[i].clone(), v[j].clone())).collect() }
}

/// First pair `(extra chord, slice leaf)` that cross, if any.
pub fn crossing_with(extra: &[Chord], s: &LaminationSlice) -> Option<(Chord, Chord)> {
    let report = check_unlinked_chords(extra.iter().chain(s.chords()));
    report.violations.into_iter().find_map(|(x, y)| match (s.contains(&x), s.contains(&y)) {
        (false, true) => Some((x, y)),
        (true, false) => Some((y, x)),
        _ => None,
    })
}

pub fn check_unlinked(s: &LaminationSlice) -> UnlinkedReport {
    check_unlinked_chords(s.chords())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SiblingReport {
    /// Leaves whose image is neither degenerate nor a leaf.
    pub forward_failures: Vec<Chord>,
    /// Leaves without `d` pairwise disjoint leaves sharing their image.
    pub sibling_failures: Vec<Chord>,
    /// Leaves below the frontier without a preimage leaf.
    pub preimage_failures: Vec<Chord>,
    /// Leaves at the depth frontier, exempt from the preimage requirement.
    pub frontier_exempt: usize,
}

impl SiblingReport {
    pub fn ok(&self) -> bool {
        self.forward_failures.is_empty() && self.sibling_failures.is_empty() && self.preimage_failures.is_empty()
    }
}

fn has_disjoint_family<T: Ord>(keys: &[(T, T)], first: usize, group: &[usize], need: usize) -> bool {
    fn go<T: Ord>(keys: &[(T, T)], chosen: &mut Vec<usize>, rest: &[usize], need: usize) -> bool {
        if chosen.len() == need {
            return true;
        }
        for (n, &c) in rest.iter().enumerate() {
            if chosen.iter().all(|&x| pairs_disjoint(&keys[x], &keys[c])) {
                chosen.push(c);
                if go(keys, chosen, &rest[n + 1..], need) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let rest: Vec<usize> = group.iter().copied().filter(|&c| c != first).collect();
    go(keys, &mut vec![first], &rest, need)
}

/// Failure indices (forward, sibling, preimage) and the frontier count.
fn sibling_core<T: Ord + std::hash::Hash>(
    keys: &[(T, T)],
    images: &[Option<(T, T)>],
    exempt: &[bool],
    d: usize,
) -> [Vec<usize>; 3] {
    let present: HashSet<&(T, T)> = keys.iter().collect();
    let mut by_image: HashMap<&(T, T), Vec<usize>> = HashMap::new();
    for (i, img) in images.iter().enumerate() {
        if let Some(img) = img {
            by_image.entry(img).or_default().push(i);
        }
    }
    let mut out: [Vec<usize>; 3] = Default::default();
    for i in 0..keys.len() {
        if let Some(img) = &images[i] {
            if !present.contains(img) {
                out[0].push(i);
            }
            if !has_disjoint_family(keys, i, &by_image[img], d) {
                out[1].push(i);
            }
        }
        if !exempt[i] && !by_image.contains_key(&keys[i]) {
            out[2].push(i);
        }
    }
    out
}

pub fn check_sibling_invariant(s: &LaminationSlice) -> SiblingReport {
    let d = s.degree();
    let chords: Vec<&Chord> = s.chords().collect();
    let exempt: Vec<bool> = s.leaves().iter().map(|l| l.provenance.depth() >= s.depth()).collect();
    let fails = match scaled(&chords, d) {
        Some((q, keys)) => {
            let du = d as u128;
            let images: Vec<Option<(u128, u128)>> = keys
                .iter()
                .map(|&(x, y)| {
                    let (a, b) = ((x * du) % q, (y * du) % q);
                    (a != b).then(|| (a.min(b), a.max(b)))
                })
                .collect();
            sibling_core(&keys, &images, &exempt, d as usize)
        }
        None => {
            let keys: Vec<(Angle, Angle)> = chords.iter().map(|c| (c.lo().clone(), c.hi().clone())).collect();
            let images: Vec<Option<(Angle, Angle)>> = chords
                .iter()
                .map(|c| {
                    let img = c.image(d);
                    (!img.is_degenerate()).then(|| (img.lo().clone(), img.hi().clone()))
                })
                .collect();
            sibling_core(&keys, &images, &exempt, d as usize)
        }
    };
    let pick = |v: &[usize]| v.iter().map(|&i| chords[i].clone()).collect::<Vec<Chord>>();
    SiblingReport {
        forward_failures: pick(&fails[0]),
        sibling_failures: pick(&fails[1]),
        preimage_failures: pick(&fails[2]),
        frontier_exempt: exempt.iter().filter(|&&e| e).count(),
    }
}

/// Leaves with a periodic endpoint whose other endpoint is not periodic of
/// the same period.
pub fn check_period_matching(s: &LaminationSlice) -> Vec<Chord> {
    let d = s.degree();
    s.chords()
        .filter(|c| {
            let (p, q) = (exact_period(d, c.lo()), exact_period(d, c.hi()));
            (p.is_some() || q.is_some()) && p != q
        })
        .cloned()
        .collect()
}

/// Hole length of `x -> y` in the positive direction.
pub fn positive_length(a: &Angle, b: &Angle) -> BigRational {
    let l = a.dist_to(b);
    if l.is_zero() {
        BigRational::one()
    } else {
        l
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

    fn gap(v: &[&str]) -> FiniteGap {
        FiniteGap::new(v.iter().map(|s| a(s)).collect()).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn holes_of_small_gaps() {
        let h = holes(&gap(&["1/26", "3/26", "9/26"]));
        assert_eq!(h.len(), 3);
        assert_eq!(h[2], Arc::open(a("9/26"), a("1/26")));
        let h = holes(&gap(&["0", "1/2"]));
        assert!(h.iter().all(|x| x.length() == r(1, 2)));
    }

    #[test]
    fn majors_of_examples() {
        let g = gap(&["7/26", "4/13", "11/26", "10/13", "21/26", "12/13"]);
        let m: HashSet<Chord> = majors(&g, 3).into_iter().map(|e| e.chord).collect();
        assert_eq!(m, [c("12/13-7/26"), c("11/26-10/13")].into_iter().collect());
        let m = majors(&gap(&["1/26", "3/26", "9/26"]), 3);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].chord, c("9/26-1/26"));
        assert_eq!(m[0].hole.length(), r(18, 26));
        assert_eq!(majors(&gap(&["0", "1/2"]), 3).len(), 2);
    }

    #[test]
    fn rotation_numbers() {
        assert_eq!(rotation_number(&gap(&["7/26", "11/26", "21/26"]), 3).unwrap(), r(2, 3));
        assert_eq!(rotation_number(&gap(&["0", "1/2"]), 3).unwrap(), r(0, 1));
        assert_eq!(rotation_number(&gap(&["1/7", "2/7", "4/7"]), 2).unwrap(), r(1, 3));
        assert!(matches!(rotation_number(&gap(&["1/7", "1/2"]), 2), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn invariant_leaf_list() {
        let want: Vec<Chord> = ["0-1/2", "1/8-3/8", "1/4-3/4", "5/8-7/8"].iter().map(|s| c(s)).collect();
        assert_eq!(invariant_leaves(3), want);
        assert_eq!(c("1/8-3/8").image(3), c("1/8-3/8"));
    }

    #[test]
    fn unlinked_reports() {
        let s = LaminationSlice::from_chords(3, 0, vec![c("0-1/2")], vec![]);
        assert!(check_unlinked(&s).ok());
        let s = LaminationSlice::from_chords(3, 0, vec![c("0-1/2"), c("1/4-3/4")], vec![]);
        assert_eq!(check_unlinked(&s).violations, vec![(c("0-1/2"), c("1/4-3/4"))]);
    }

    #[test]
    fn sibling_reports() {
        let s = LaminationSlice::from_chords(3, 1, vec![c("1/9-2/9")], vec![]);
        let rep = check_sibling_invariant(&s);
        assert!(!rep.ok());
        assert_eq!(rep.sibling_failures, vec![c("1/9-2/9")]);
        assert!(check_sibling_invariant(&LaminationSlice::empty(3)).ok());
        let leaves = ["1/3-2/3", "1/9-2/9", "4/9-5/9", "7/9-8/9"].iter().map(|s| c(s)).collect();
        let s = LaminationSlice::from_chords(3, 1, leaves, vec![Generator::Leaf(c("1/3-2/3"))]);
        let rep = check_sibling_invariant(&s);
        assert!(rep.ok(), "{rep:?}");
        assert_eq!(rep.frontier_exempt, 3);
    }

    #[test]
    fn invariance_check() {
        assert!(gap(&["7/26", "11/26", "21/26"]).check_invariant(3).is_ok());
        assert!(gap(&["1/26", "3/26", "9/26"]).check_invariant(3).is_ok());
        assert!(gap(&["0", "1/4"]).check_invariant(3).is_err());
    }

    #[test]
    fn json_round_trip() {
        let leaves = vec![c("1/3-2/3"), c("1/9-2/9")];
        let s = LaminationSlice::from_chords(3, 1, leaves, vec![Generator::Leaf(c("1/3-2/3"))]);
        let v = s.to_json();
        assert_eq!(v["leaves"][0], "1/9-2/9");
        let back = LaminationSlice::from_json(&v).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.leaves()[0].provenance, Provenance::Pullback(1));
    }
}
