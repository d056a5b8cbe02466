//! Degree-two codings of quadratic gaps, tuning, and the Main Cardioid and
//! Main Cubioid predicates.
//!
//! A coding `psi` collapses the edges of a gap whose return map has degree
//! two and turns that return map into angle doubling. Base points are
//! coded by their bit itinerary: bit 0 on the half-open arc from the anchor
//! to the cut point, bit 1 on the rest.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::canonical::{canonical_lam_quadgap, canonical_lam_rotational, pullback_engine, quadgap_setup, Constraint};
use crate::circle::{exact_period, fixed_points, in_open_arc, is_periodic, orbit_info, sigma, sigma_n, Angle, Arc, Chord};
use crate::error::{Error, Result};
use crate::lamination::{crossing_with, FiniteGap, GapKind, Generator, LaminationSlice, SpecialGap};
use crate::quad_gaps::{
    build_quad_gap, gap_edges, is_periodic_type_major, major_orientation, vassal, classify_critical_chord, CriticalChord, CriticalClass, QuadGap,
};
use crate::rotational::{ratio_string, rotational_set_from_vertices, GapCycle, RotationalSet};

// ---------------------------------------------------------------------------
// Codings

/// The gap carried by a coding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodedGap {
    /// An invariant quadratic gap of `sigma_3`; the return map is `sigma_3`.
    Quad(QuadGap),
    /// The gap in one region of a cycle; the return map is `sigma_d^n`, `n`
    /// the length of the cycle through that region.
    Cycle { cycle: GapCycle, region: usize },
}

#[derive(Clone, Debug)]
pub struct PsiCoding {
    gap: CodedGap,
    degree: u32,
    n: usize,
    anchor: Angle,
    cut: Angle,
}

impl PsiCoding {
    pub fn quad(u: &QuadGap) -> Result<PsiCoding> {
        PsiCoding::build(CodedGap::Quad(u.clone()), 3, 1)
    }

    /// Coding of `V(U)` for a gap of periodic type.
    pub fn vassal(u: &QuadGap) -> Result<PsiCoding> {
        PsiCoding::cycle(GapCycle::vassal_cycle(u)?, 0)
    }

    pub fn cycle(cycle: GapCycle, region: usize) -> Result<PsiCoding> {
        if region >= cycle.len() {
            return Err(Error::ValidationFailed(format!("no region {region} in a cycle of {}", cycle.len())));
        }
        let deg = cycle.return_degree(region);
        if deg != 2 {
            return Err(Error::ValidationFailed(format!("return map of region {region} has degree {deg}, not 2")));
        }
        let (d, n) = (cycle.degree(), cycle.period_of(region));
        PsiCoding::build(CodedGap::Cycle { cycle, region }, d, n)
    }

    fn build(gap: CodedGap, degree: u32, n: usize) -> Result<PsiCoding> {
        let mut c = PsiCoding { gap, degree, n, anchor: Angle::zero(), cut: Angle::zero() };
        let start = c.owner_start();
        c.anchor = if c.return_map(&start) == start {
            start
        } else {
            if n > 10 {
                return Err(Error::BoundExceeded(format!("fixed points of sigma^{n}")));
            }
            fixed_points(degree, n)
                .into_iter()
                .filter(|x| c.in_base(x))
                .min_by_key(|x| start.dist_to(x))
                .ok_or_else(|| Error::ValidationFailed("no fixed point of the return map on the gap".into()))?
        };
        let anchor = c.anchor.clone();
        c.cut = c
            .preimages(&anchor)
            .into_iter()
            .filter(|x| x != &anchor)
            .min_by_key(|x| anchor.dist_to(x))
            .ok_or_else(|| Error::ValidationFailed(format!("{anchor} has a single preimage on the gap")))?;
        Ok(c)
    }

    pub fn gap(&self) -> &CodedGap {
        &self.gap
    }

    /// The base point sent to angle 0.
    pub fn anchor(&self) -> &Angle {
        &self.anchor
    }

    /// The other preimage of the anchor; bits switch from 0 to 1 here.
    pub fn cut_point(&self) -> &Angle {
        &self.cut
    }

    /// `n` such that the return map is `sigma_d^n`.
    pub fn return_time(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Bit 0 arc `[anchor, cut)` and bit 1 arc `[cut, anchor)`.
    pub fn bit_arcs(&self) -> [Arc; 2] {
        [
            Arc::new(self.anchor.clone(), self.cut.clone(), true, false),
            Arc::new(self.cut.clone(), self.anchor.clone(), true, false),
        ]
    }

    fn owner_start(&self) -> Angle {
        match &self.gap {
            CodedGap::Quad(u) => u.a().clone(),
            CodedGap::Cycle { cycle, region } => cycle.regions()[*region].p.clone(),
        }
    }

    pub fn return_map(&self, x: &Angle) -> Angle {
        sigma_n(self.degree, self.n, x)
    }

    pub fn bit(&self, x: &Angle) -> u8 {
        u8::from(self.anchor.dist_to(x) >= self.anchor.dist_to(&self.cut))
    }

    /// `x` lies on the boundary of the gap.
    pub fn in_base(&self, x: &Angle) -> bool {
        match self.model([x.denom()]) {
            Some(m) => m.itinerary(m.of(x)).is_some(),
            None => false,
        }
    }

    /// Preimages of a base point `y` under the return map that lie on the
    /// gap boundary.
    pub fn preimages(&self, y: &Angle) -> Vec<Angle> {
        match &self.gap {
            CodedGap::Quad(u) => {
                let three = BigRational::from_integer(3.into());
                (0..3)
                    .map(|i| Angle::from_ratio((y.value() + BigRational::from_integer(i.into())) / &three))
                    .filter(|x| !in_open_arc(u.a(), u.b(), x))
                    .collect()
            }
            CodedGap::Cycle { cycle, region } => {
                let regs = cycle.regions();
                let d = BigRational::from_integer(self.degree.into());
                let mut seq = vec![*region];
                while seq.len() < self.n {
                    seq.push(regs[*seq.last().unwrap()].next);
                }
                let mut pts = vec![y.clone()];
                let mut t = *region;
                for &i in seq.iter().rev() {
                    let r = &regs[i];
                    let p_t = regs[t].p.clone();
                    pts = pts
                        .iter()
                        .flat_map(|w| {
                            let off = p_t.dist_to(w) / &d;
                            (0..=r.sheets)
                                .map(|s| r.p.shift(&(BigRational::new(s.into(), self.degree.into()) + &off)))
                                .collect::<Vec<_>>()
                        })
                        .collect();
                    t = i;
                }
                pts
            }
        }
    }

    /// Preimage of `y` on the bit arc `bit`; the flag reports a choice
    /// between several (the endpoints of a collapsed edge).
    fn branch(&self, y: &Angle, bit: u8) -> Result<(Angle, bool)> {
        let start = if bit == 0 { &self.anchor } else { &self.cut };
        let mut c: Vec<Angle> = self.preimages(y).into_iter().filter(|x| self.bit(x) == bit).collect();
        c.sort_by_key(|x| start.dist_to(x));
        let amb = c.len() > 1;
        c.into_iter().next().map(|x| (x, amb)).ok_or_else(|| Error::NotInBase(format!("{y} has no preimage with bit {bit}")))
    }

    fn model<'a>(&'a self, extra: impl IntoIterator<Item = &'a BigInt>) -> Option<IntModel> {
        IntModel::new(self, extra)
    }
}

/// The coding on the integer circle `Z / qZ`.
struct IntModel {
    q: u128,
    d: u128,
    n: usize,
    shape: IntShape,
    anchor: u128,
    cut: u128,
}

struct IntRegion {
    p: u128,
    len: u128,
    next: usize,
    sheets: u128,
    piece: u128,
}

enum IntShape {
    Quad { a: u128, hole: u128 },
    Cycle { regions: Vec<IntRegion>, start: usize, step: u128 },
}

impl IntModel {
    fn new<'a>(c: &'a PsiCoding, extra: impl IntoIterator<Item = &'a BigInt>) -> Option<IntModel> {
        let mut own: Vec<&Angle> = vec![&c.anchor, &c.cut];
        match &c.gap {
            CodedGap::Quad(u) => own.extend([u.a(), u.b()]),
            CodedGap::Cycle { cycle, .. } => own.extend(cycle.regions().iter().flat_map(|r| [&r.p, &r.q])),
        }
        let mut l: u128 = 1;
        let mut seen: HashSet<&BigInt> = HashSet::new();
        for den in own.iter().map(|a| a.denom()).chain(extra) {
            if seen.insert(den) {
                let den = den.to_u128()?;
                l = l.checked_mul(den / l.gcd(&den))?;
            }
        }
        let d = c.degree as u128;
        let q = l.checked_mul(d)?;
        q.checked_mul(d)?;
        let of = |a: &Angle| a.numer().to_u128().unwrap() * (q / a.denom().to_u128().unwrap());
        let dist = |a: u128, b: u128| if b >= a { b - a } else { b + q - a };
        let shape = match &c.gap {
            CodedGap::Quad(u) => IntShape::Quad { a: of(u.a()), hole: dist(of(u.a()), of(u.b())) },
            CodedGap::Cycle { cycle, region } => {
                let regs = cycle.regions();
                let len = |p: u128, e: u128| if p == e { q } else { dist(p, e) };
                let regions = regs
                    .iter()
                    .map(|r| {
                        let nr = &regs[r.next];
                        IntRegion {
                            p: of(&r.p),
                            len: len(of(&r.p), of(&r.q)),
                            next: r.next,
                            sheets: r.sheets as u128,
                            piece: len(of(&nr.p), of(&nr.q)) / d,
                        }
                    })
                    .collect();
                IntShape::Cycle { regions, start: *region, step: q / d }
            }
        };
        Some(IntModel { q, d, n: c.n, shape, anchor: of(&c.anchor), cut: of(&c.cut) })
    }

    fn of(&self, a: &Angle) -> u128 {
        a.numer().to_u128().expect("in range") * (self.q / a.denom().to_u128().expect("in range"))
    }

    fn dist(&self, a: u128, b: u128) -> u128 {
        if b >= a {
            b - a
        } else {
            b + self.q - a
        }
    }

    fn start(&self) -> usize {
        match &self.shape {
            IntShape::Quad { .. } => 0,
            IntShape::Cycle { start, .. } => *start,
        }
    }

    /// One step of `sigma`, or `None` when `x` is off the gap pieces.
    fn step(&self, j: usize, x: u128) -> Option<(usize, u128)> {
        match &self.shape {
            IntShape::Quad { a, hole } => {
                let o = self.dist(*a, x);
                if o > 0 && o < *hole {
                    return None;
                }
                Some((0, x * self.d % self.q))
            }
            IntShape::Cycle { regions, step, .. } => {
                let r = &regions[j];
                let o = self.dist(r.p, x);
                if o > r.len {
                    return None;
                }
                if !(0..=r.sheets).any(|i| o >= i * step && o <= i * step + r.piece) {
                    return None;
                }
                Some((r.next, x * self.d % self.q))
            }
        }
    }

    fn bit(&self, x: u128) -> u8 {
        u8::from(self.dist(self.anchor, x) >= self.dist(self.anchor, self.cut))
    }

    /// Preperiodic and periodic bits of `x` under the return map, or `None`
    /// when the orbit leaves the gap.
    fn itinerary(&self, x: u128) -> Option<(Vec<u8>, Vec<u8>)> {
        let mut seen: HashMap<u128, usize> = HashMap::new();
        let mut bits = Vec::new();
        let mut x = x;
        loop {
            if let Some(&i) = seen.get(&x) {
                let cyc = bits.split_off(i);
                return Some((bits, cyc));
            }
            seen.insert(x, bits.len());
            bits.push(self.bit(x));
            let mut j = self.start();
            for _ in 0..self.n {
                (j, x) = self.step(j, x)?;
            }
        }
    }
}

/// Exact value of the binary expansion `0.pre cyc cyc ...`.
fn bits_value(pre: &[u8], cyc: &[u8]) -> Angle {
    let int = |bits: &[u8]| bits.iter().fold(BigInt::zero(), |acc, &b| (acc << 1) + BigInt::from(b));
    let per = (BigInt::one() << cyc.len()) - 1;
    let num = int(pre) * &per + int(cyc);
    Angle::new(num, per << pre.len()).expect("nonzero denominator")
}

/// Binary itinerary of `t` under doubling.
fn binary_itinerary(t: &Angle) -> (Vec<u8>, Vec<u8>) {
    let info = orbit_info(2, t);
    let half = Angle::half();
    let mut bits: Vec<u8> = info.orbit.iter().map(|x| u8::from(x >= &half)).collect();
    let cyc = bits.split_off(info.preperiod);
    (bits, cyc)
}

pub fn psi_project(c: &PsiCoding, x: &Angle) -> Result<Angle> {
    let m = c.model([x.denom()]).ok_or_else(|| Error::BoundExceeded(format!("denominator of {x}")))?;
    let (pre, cyc) = m.itinerary(m.of(x)).ok_or_else(|| Error::NotInBase(x.to_string()))?;
    Ok(bits_value(&pre, &cyc))
}

/// Lifts with memoisation; `lift(t) = branch(lift(2t))` off the cycle.
struct Lifter<'a> {
    coding: &'a PsiCoding,
    memo: HashMap<Angle, (Angle, bool)>,
}

impl<'a> Lifter<'a> {
    fn new(coding: &'a PsiCoding) -> Lifter<'a> {
        Lifter { coding, memo: HashMap::new() }
    }

    fn lift(&mut self, t: &Angle) -> Result<(Angle, bool)> {
        if let Some(v) = self.memo.get(t) {
            return Ok(v.clone());
        }
        let mut path = Vec::new();
        let mut s = t.clone();
        let info = orbit_info(2, t);
        let cycle: HashSet<&Angle> = info.cycle().iter().collect();
        while !self.memo.contains_key(&s) && !cycle.contains(&s) {
            path.push(s.clone());
            s = sigma(2, &s);
        }
        if !self.memo.contains_key(&s) {
            self.lift_cycle(&s)?;
        }
        for p in path.into_iter().rev() {
            let (y, amb) = self.memo[&sigma(2, &p)].clone();
            let bit = u8::from(p >= Angle::half());
            let (x, a) = self.coding.branch(&y, bit)?;
            self.memo.insert(p, (x, amb || a));
        }
        Ok(self.memo[t].clone())
    }

    /// Solves `y = B_{c_0} o ... o B_{c_(p-1)} (y)` exactly. Each branch is
    /// `y -> (y + j) / N` for an integer `j`, so once the `j`'s settle the
    /// fixed point is `J / (N^p - 1)`.
    fn lift_cycle(&mut self, t: &Angle) -> Result<()> {
        let c = self.coding;
        let (_, bits) = binary_itinerary(t);
        let p = bits.len();
        let big_n = BigInt::from(c.degree).pow(c.n as u32);
        let n_rat = BigRational::from_integer(big_n.clone());
        let mut y = c.anchor.clone();
        for _ in 0..64 {
            let mut js = vec![BigInt::zero(); p];
            let mut amb = false;
            for i in (0..p).rev() {
                let (x, a) = c.branch(&y, bits[i])?;
                amb |= a;
                let j = x.value() * &n_rat - y.value();
                debug_assert!(j.is_integer());
                js[i] = j.to_integer();
                y = x;
            }
            let big_j = js.iter().fold(BigInt::zero(), |acc, j| acc * &big_n + j);
            let cand = Angle::new(big_j, big_n.pow(p as u32) - 1)?;
            if c.in_base(&cand) && psi_project(c, &cand)? == *t {
                let mut x = cand;
                let mut s = t.clone();
                for _ in 0..p {
                    self.memo.insert(s.clone(), (x.clone(), amb));
                    x = c.return_map(&x);
                    s = sigma(2, &s);
                }
                return Ok(());
            }
        }
        Err(Error::ValidationFailed(format!("lift of the cycle through {t} did not settle")))
    }
}

/// A base point whose itinerary is the binary itinerary of `t`.
pub fn psi_lift(c: &PsiCoding, t: &Angle) -> Result<Angle> {
    let (x, _) = Lifter::new(c).lift(t)?;
    let back = psi_project(c, &x)?;
    if &back != t {
        return Err(Error::ValidationFailed(format!("lift {x} of {t} projects to {back}")));
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Certified slices

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FatouCycleMeta {
    pub period: usize,
    pub return_degree: usize,
    /// Edges of the periodic structure the gaps are attached to.
    pub owners: Vec<Chord>,
    pub edges: Vec<Chord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetaGap {
    Quad(QuadGap),
    Rotational(FiniteGap),
    FatouCycle(FatouCycleMeta),
}

impl MetaGap {
    pub fn to_json(&self) -> Value {
        match self {
            MetaGap::Quad(u) => json!({ "kind": "quad", "a": u.a(), "b": u.b() }),
            MetaGap::Rotational(g) => json!({ "kind": "rotational", "vertices": g.vertices() }),
            MetaGap::FatouCycle(f) => json!({
                "kind": "fatou_cycle",
                "period": f.period,
                "return_degree": f.return_degree,
                "owners": f.owners,
                "edges": f.edges,
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<MetaGap> {
        let bad = || Error::Parse { what: "metadata", input: v.to_string() };
        let angle = |k: &str| -> Result<Angle> { v[k].as_str().ok_or_else(bad)?.parse() };
        let chords = |k: &str| -> Result<Vec<Chord>> { Ok(serde_json::from_value(v[k].clone())?) };
        match v["kind"].as_str() {
            Some("quad") => Ok(MetaGap::Quad(QuadGap::from_major(angle("a")?, angle("b")?)?)),
            Some("rotational") => Ok(MetaGap::Rotational(FiniteGap::new(serde_json::from_value(v["vertices"].clone())?)?)),
            Some("fatou_cycle") => Ok(MetaGap::FatouCycle(FatouCycleMeta {
                period: v["period"].as_u64().ok_or_else(bad)? as usize,
                return_degree: v["return_degree"].as_u64().ok_or_else(bad)? as usize,
                owners: chords("owners")?,
                edges: chords("edges")?,
            })),
            _ => Err(bad()),
        }
    }
}

/// A finite slice together with the gap structure it was built from.
#[derive(Clone, Debug)]
pub struct CertifiedSlice {
    pub slice: LaminationSlice,
    pub metadata: Vec<MetaGap>,
}

/// One entry per cycle of regions.
fn cycle_metas(cycle: &GapCycle, depth: usize) -> Vec<MetaGap> {
    let layers = cycle.edge_layers(depth);
    let mut done = vec![false; cycle.len()];
    let mut out = Vec::new();
    for j in 0..cycle.len() {
        if done[j] {
            continue;
        }
        let mut members = vec![j];
        let mut i = cycle.regions()[j].next;
        while i != j {
            members.push(i);
            i = cycle.regions()[i].next;
        }
        let mut owners = Vec::new();
        let mut edges = BTreeSet::new();
        for &m in &members {
            done[m] = true;
            owners.push(cycle.regions()[m].owner());
            edges.extend(layers[m].iter().flatten().map(|e| e.chord.clone()));
        }
        owners.sort();
        out.push(MetaGap::FatouCycle(FatouCycleMeta {
            period: members.len(),
            return_degree: cycle.return_degree(j),
            owners,
            edges: edges.into_iter().collect(),
        }));
    }
    out
}

fn quad_metadata(u: &QuadGap, depth: usize) -> Result<Vec<MetaGap>> {
    let mut out = vec![MetaGap::Quad(u.clone())];
    if !u.is_regular() {
        out.extend(cycle_metas(&GapCycle::vassal_cycle(u)?, depth));
    }
    Ok(out)
}

fn rotational_metadata(g: &RotationalSet, depth: usize) -> Result<Vec<MetaGap>> {
    let mut out = vec![MetaGap::Rotational(g.gap().clone())];
    out.extend(cycle_metas(&GapCycle::attached(g.gap(), g.degree())?.critical_part(), depth));
    Ok(out)
}

impl CertifiedSlice {
    pub fn canonical_quadgap(u: &QuadGap, depth: usize) -> Result<CertifiedSlice> {
        Ok(CertifiedSlice { slice: canonical_lam_quadgap(u, depth)?, metadata: quad_metadata(u, depth)? })
    }

    pub fn canonical_rotational(g: &RotationalSet, depth: usize) -> Result<CertifiedSlice> {
        Ok(CertifiedSlice { slice: canonical_lam_rotational(g, depth)?, metadata: rotational_metadata(g, depth)? })
    }

    /// Recovers metadata from the gap generators of a canonical slice.
    pub fn from_slice(slice: LaminationSlice) -> Result<CertifiedSlice> {
        let depth = slice.depth();
        let mut metadata = Vec::new();
        for g in slice.generators() {
            let Generator::Gap(desc) = g else { continue };
            match &desc.kind {
                GapKind::Special { which: SpecialGap::Fa } => metadata.extend(quad_metadata(&QuadGap::fa(), depth)?),
                GapKind::Special { which: SpecialGap::Fb } => metadata.extend(quad_metadata(&QuadGap::fb(), depth)?),
                GapKind::Fatou { major, rule, .. } if rule == "regular-critical" => {
                    let u = QuadGap::regular(&CriticalChord::new(major.clone())?)?;
                    metadata.extend(quad_metadata(&u, depth)?);
                }
                GapKind::Fatou { major, rule, .. } if rule == "periodic-type" => {
                    let (a, b) = major_orientation(major)
                        .ok_or_else(|| Error::ValidationFailed(format!("{major} is not a periodic-type major")))?;
                    metadata.extend(quad_metadata(&QuadGap::periodic(a, b)?, depth)?);
                }
                GapKind::Finite { vertices } => match rotational_set_from_vertices(slice.degree(), vertices) {
                    Ok(g) => metadata.extend(rotational_metadata(&g, depth)?),
                    Err(_) => metadata.push(MetaGap::Rotational(FiniteGap::new(vertices.clone())?)),
                },
                _ => {}
            }
        }
        Ok(CertifiedSlice { slice, metadata })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.slice.to_json();
        v["metadata"] = Value::Array(self.metadata.iter().map(MetaGap::to_json).collect());
        v
    }

    /// Uses the `metadata` field when present, otherwise the generators.
    pub fn from_json(v: &Value) -> Result<CertifiedSlice> {
        let slice = LaminationSlice::from_json(v)?;
        match v.get("metadata").and_then(Value::as_array) {
            Some(list) => {
                let metadata = list.iter().map(MetaGap::from_json).collect::<Result<_>>()?;
                Ok(CertifiedSlice { slice, metadata })
            }
            None => CertifiedSlice::from_slice(slice),
        }
    }

    fn quad_gaps(&self) -> impl Iterator<Item = &QuadGap> {
        self.metadata.iter().filter_map(|m| match m {
            MetaGap::Quad(u) => Some(u),
            _ => None,
        })
    }

    /// `(period, owner edges)` of every Fatou gap cycle in the metadata. An
    /// invariant quadratic gap is a Fatou gap of period 1 attached to its
    /// major cycle.
    fn attached_cycles(&self) -> Vec<(usize, HashSet<Chord>)> {
        self.metadata
            .iter()
            .filter_map(|m| match m {
                MetaGap::Quad(u) => Some((1, u.major_cycle().into_iter().map(|e| e.chord).collect())),
                MetaGap::FatouCycle(f) => Some((f.period, f.owners.iter().cloned().collect())),
                MetaGap::Rotational(_) => None,
            })
            .collect()
    }

    /// Edges the metadata claims, to slice depth.
    fn metadata_edges(&self) -> Vec<Chord> {
        let mut out = BTreeSet::new();
        for m in &self.metadata {
            match m {
                MetaGap::Quad(u) => out.extend(gap_edges(u, self.slice.depth())),
                MetaGap::Rotational(g) => out.extend(g.edges().into_iter().map(|e| e.chord)),
                MetaGap::FatouCycle(f) => out.extend(f.owners.iter().chain(&f.edges).cloned()),
            }
        }
        out.into_iter().collect()
    }
}

// ---------------------------------------------------------------------------
// Periodic structure

fn ser_opt_ratio<S: serde::Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&ratio_string(r)),
        None => s.serialize_none(),
    }
}

/// A connected component of the periodic leaves of a slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicClass {
    pub vertices: Vec<Angle>,
    /// Common period of the vertices (their lcm if they disagree).
    pub vertex_period: usize,
    /// Least `m` with `sigma^m` mapping the class onto itself.
    pub class_period: usize,
    /// Rotation number of the first return, `None` if it is not a cyclic
    /// rotation of the vertices.
    #[serde(serialize_with = "ser_opt_ratio")]
    pub rotation: Option<BigRational>,
}

impl PeriodicClass {
    pub fn is_rotational(&self) -> bool {
        self.rotation.as_ref().is_some_and(|r| !r.is_zero())
    }

    /// Boundary edges of the convex hull.
    pub fn edges(&self) -> Vec<Chord> {
        let n = self.vertices.len();
        if n == 2 {
            return vec![Chord::new(self.vertices[0].clone(), self.vertices[1].clone())];
        }
        (0..n).map(|i| Chord::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone())).collect()
    }
}

/// Components of the endpoint graph of leaves with both endpoints periodic.
pub fn periodic_classes(s: &LaminationSlice) -> Vec<PeriodicClass> {
    let d = s.degree();
    let periodic: Vec<&Chord> = s.chords().filter(|c| is_periodic(d, c.lo()) && is_periodic(d, c.hi())).collect();
    let mut index: HashMap<&Angle, usize> = HashMap::new();
    let mut points: Vec<&Angle> = Vec::new();
    for c in &periodic {
        for x in [c.lo(), c.hi()] {
            index.entry(x).or_insert_with(|| {
                points.push(x);
                points.len() - 1
            });
        }
    }
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let nx = p[x];
            p[x] = r;
            x = nx;
        }
        r
    }
    for c in &periodic {
        let (i, j) = (find(&mut parent, index[c.lo()]), find(&mut parent, index[c.hi()]));
        parent[i] = j;
    }
    let mut groups: HashMap<usize, Vec<Angle>> = HashMap::new();
    for (i, x) in points.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push((*x).clone());
    }
    let mut out: Vec<PeriodicClass> = groups
        .into_values()
        .map(|mut v| {
            v.sort();
            classify_class(d, v)
        })
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

fn classify_class(d: u32, vertices: Vec<Angle>) -> PeriodicClass {
    let vertex_period = vertices.iter().map(|v| exact_period(d, v).unwrap_or(1)).fold(1, |a, b| a.lcm(&b));
    let set: HashSet<&Angle> = vertices.iter().collect();
    let mut class_period = vertex_period;
    for m in 1..=vertex_period {
        if vertices.iter().all(|v| set.contains(&sigma_n(d, m, v))) {
            class_period = m;
            break;
        }
    }
    let r = vertices.len();
    let img: Vec<Angle> = vertices.iter().map(|v| sigma_n(d, class_period, v)).collect();
    let rotation = vertices.iter().position(|v| v == &img[0]).and_then(|s| {
        (0..r).all(|i| img[i] == vertices[(i + s) % r]).then(|| BigRational::new(s.into(), r.into()))
    });
    PeriodicClass { vertices, vertex_period, class_period, rotation }
}

// ---------------------------------------------------------------------------
// Cardioid

/// Main Cardioid membership of a quadratic slice: at most one rotational
/// class, fixed, and the slice is its canonical lamination.
pub fn car_membership(q: &LaminationSlice) -> Result<bool> {
    if q.degree() != 2 {
        return Err(Error::ValidationFailed(format!("degree {} slice", q.degree())));
    }
    if q.is_empty() {
        return Ok(true);
    }
    let rot: Vec<PeriodicClass> = periodic_classes(q).into_iter().filter(PeriodicClass::is_rotational).collect();
    match rot.len() {
        0 => Err(Error::DepthInsufficient("no rotational class in a non-empty quadratic slice".into())),
        1 => {
            if rot[0].class_period != 1 {
                return Ok(false);
            }
            let g = rotational_set_from_vertices(2, &rot[0].vertices)?;
            let canon = canonical_lam_rotational(&g, q.depth())?;
            Ok(canon.chord_set() == q.chord_set())
        }
        _ => Ok(false),
    }
}

// ---------------------------------------------------------------------------
// Projection and tuning

/// Removes the grand orbit of critical chords (diameters) that sit inside a
/// finite class, and of critical quadrilaterals.
fn clean(chords: Vec<Chord>) -> Vec<Chord> {
    let half = BigRational::new(1.into(), 2.into());
    let set: HashSet<Chord> = chords.iter().cloned().collect();
    let mut adj: HashMap<&Angle, Vec<&Angle>> = HashMap::new();
    for c in &chords {
        adj.entry(c.lo()).or_default().push(c.hi());
        adj.entry(c.hi()).or_default().push(c.lo());
    }
    // Connected without using the chord itself.
    let bypass = |c: &Chord| {
        let mut stack = vec![c.lo()];
        let mut seen: HashSet<&Angle> = HashSet::from([c.lo()]);
        while let Some(x) = stack.pop() {
            for &y in adj.get(x).into_iter().flatten() {
                if (x == c.lo() && y == c.hi()) || (x == c.hi() && y == c.lo()) {
                    continue;
                }
                if y == c.hi() {
                    return true;
                }
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        false
    };
    let mut critical: HashSet<Chord> = HashSet::new();
    for c in &chords {
        if c.lo().dist_to(c.hi()) == half && bypass(c) {
            critical.insert(c.clone());
        }
    }
    for c in &chords {
        // Quadrilateral {x1,x2,x1+1/2,x2+1/2} with all four sides present.
        let (x1, x2) = (c.lo(), c.hi());
        let (x3, x4) = (x1.shift(&half), x2.shift(&half));
        if x1.dist_to(x2) >= half {
            continue;
        }
        let sides = [Chord::new(x2.clone(), x3.clone()), Chord::new(x3.clone(), x4.clone()), Chord::new(x4, x1.clone())];
        if sides.iter().all(|s| set.contains(s)) {
            critical.insert(c.clone());
            critical.extend(sides);
        }
    }
    if critical.is_empty() {
        return chords;
    }
    let forward: HashSet<Chord> =
        critical.iter().map(|c| c.image(2)).filter(|c| !c.is_degenerate() && set.contains(c)).collect();
    chords
        .into_iter()
        .filter(|c| {
            if forward.contains(c) {
                return false;
            }
            let mut x = c.clone();
            for _ in 0..64 {
                if critical.contains(&x) {
                    return false;
                }
                x = x.image(2);
                if x.is_degenerate() || !set.contains(&x) {
                    return true;
                }
            }
            true
        })
        .collect()
}

fn project_slice(u: &QuadGap, slice: &LaminationSlice) -> Result<LaminationSlice> {
    let depth = slice.depth();
    if let Some((e, l)) = crossing_with(&gap_edges(u, depth), slice) {
        return Err(Error::NotCoexisting(format!("leaf {l} crosses edge {e} of {u}")));
    }
    let coding = PsiCoding::quad(u)?;
    let dens: HashSet<&BigInt> = slice.chords().flat_map(|c| [c.lo().denom(), c.hi().denom()]).collect();
    let m = coding.model(dens).ok_or_else(|| Error::BoundExceeded("common denominator of the slice".into()))?;
    let mut cache: HashMap<&Angle, Option<Angle>> = HashMap::new();
    let proj = |x: &'_ Angle| -> Option<Angle> { m.itinerary(m.of(x)).map(|(p, c)| bits_value(&p, &c)) };
    let mut chords = BTreeSet::new();
    for c in slice.chords() {
        let px = cache.entry(c.lo()).or_insert_with(|| proj(c.lo())).clone();
        let py = cache.entry(c.hi()).or_insert_with(|| proj(c.hi())).clone();
        if let (Some(x), Some(y)) = (px, py) {
            if x != y {
                chords.insert(Chord::new(x, y));
            }
        }
    }
    let chords = clean(chords.into_iter().collect());
    let generators = chords
        .iter()
        .filter(|c| is_periodic(2, c.lo()) && is_periodic(2, c.hi()))
        .cloned()
        .map(Generator::Leaf)
        .collect();
    Ok(LaminationSlice::from_chords(2, depth, chords, generators))
}

/// `psi_U`-images of the slice leaves on the boundary of `U`, cleaned.
pub fn project_lamination(u: &QuadGap, s: &CertifiedSlice) -> Result<LaminationSlice> {
    project_slice(u, &s.slice)
}

/// Inserts the Cardioid slice `quad` into `U`: its leaves are lifted by
/// `psi_U` and everything is pulled back together with the canonical
/// lamination of `U`.
pub fn tune(u: &QuadGap, quad: &LaminationSlice, depth: usize) -> Result<CertifiedSlice> {
    if quad.degree() != 2 {
        return Err(Error::NotCardioidMember(format!("degree {} slice", quad.degree())));
    }
    if quad.is_empty() {
        return CertifiedSlice::canonical_quadgap(u, depth);
    }
    match car_membership(quad) {
        Ok(true) => {}
        Ok(false) => return Err(Error::NotCardioidMember("slice fails the Cardioid test".into())),
        Err(e) => return Err(Error::NotCardioidMember(e.to_string())),
    }
    if quad.depth() < depth {
        return Err(Error::DepthInsufficient(format!("quadratic slice has depth {} < {depth}", quad.depth())));
    }
    let rot = periodic_classes(quad).into_iter().find(PeriodicClass::is_rotational).expect("member has one");
    let g2 = rotational_set_from_vertices(2, &rot.vertices)?;

    let coding = PsiCoding::quad(u)?;
    let mut lifter = Lifter::new(&coding);
    let mut lift = |c: &Chord| -> Result<Chord> {
        let (x, ax) = lifter.lift(c.lo())?;
        let (y, ay) = lifter.lift(c.hi())?;
        if ax || ay {
            return Err(Error::ValidationFailed(format!("lift of {c} lands on an edge of {u}")));
        }
        Ok(Chord::new(x, y))
    };
    let allowed: Vec<Chord> =
        quad.leaves().iter().filter(|l| l.provenance.depth() <= depth).map(|l| lift(&l.chord)).collect::<Result<_>>()?;
    let g3_vertices: Vec<Angle> = g2
        .gap()
        .vertices()
        .iter()
        .map(|v| lift(&Chord::new(v.clone(), v.clone())).map(|c| c.lo().clone()))
        .collect::<Result<_>>()?;
    let g3 = FiniteGap::new(g3_vertices)?;
    let attached = cycle_metas(&GapCycle::attached(g2.gap(), 2)?.critical_part(), depth);
    let mut lifted_meta = Vec::new();
    for m in attached {
        if let MetaGap::FatouCycle(f) = m {
            lifted_meta.push(MetaGap::FatouCycle(FatouCycleMeta {
                period: f.period,
                return_degree: f.return_degree,
                owners: f.owners.iter().map(&mut lift).collect::<Result<_>>()?,
                edges: f.edges.iter().map(&mut lift).collect::<Result<_>>()?,
            }));
        }
    }
    let model = coding.model(allowed.iter().flat_map(|c| [c.lo().denom(), c.hi().denom()]));
    let model = model.ok_or_else(|| Error::BoundExceeded("denominators of the lifted leaves".into()))?;
    for (c, l) in allowed.iter().zip(quad.leaves().iter().filter(|l| l.provenance.depth() <= depth)) {
        for (x, t) in [(c.lo(), l.chord.lo()), (c.hi(), l.chord.hi())] {
            let back = model.itinerary(model.of(x)).map(|(p, q)| bits_value(&p, &q));
            let back = back.ok_or_else(|| Error::NotInBase(x.to_string()))?;
            if &back != t && &back != l.chord.lo() && &back != l.chord.hi() {
                return Err(Error::ValidationFailed(format!("lift {x} projects to {back}")));
            }
        }
    }

    let (mut seeds, mut cons) = quadgap_setup(u)?;
    seeds.extend(g3.edges().into_iter().map(|e| e.chord));
    let inner = Box::new(cons.remove(0));
    cons.insert(0, Constraint::Relaxed { inner, allowed });
    cons.push(Constraint::Finite { gap: g3.clone(), strict: true });
    let slice = pullback_engine(3, &seeds, &cons, depth)?;

    let mut metadata = quad_metadata(u, depth)?;
    metadata.push(MetaGap::Rotational(g3));
    metadata.extend(lifted_meta);
    Ok(CertifiedSlice { slice, metadata })
}

// ---------------------------------------------------------------------------
// Cubioid

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "diagnostic", rename_all = "snake_case")]
pub enum CubioidDiagnostic {
    Empty,
    Member { rotational_sets: usize, periodic_classes: usize },
    TooManyRotational { count: usize, classes: Vec<Vec<Angle>> },
    RotationalNotFixed { class: Vec<Angle>, class_period: usize },
    MissingAttachedGap { class: Vec<Angle>, period: usize },
    InconsistentMetadata { edge: Chord, leaf: Chord },
}

impl fmt::Display for CubioidDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Angle]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
        match self {
            CubioidDiagnostic::Empty => write!(f, "empty slice"),
            CubioidDiagnostic::Member { rotational_sets, periodic_classes } => {
                write!(f, "member: {rotational_sets} rotational set(s), {periodic_classes} periodic class(es)")
            }
            CubioidDiagnostic::TooManyRotational { count, .. } => write!(f, "{count} rotational periodic sets"),
            CubioidDiagnostic::RotationalNotFixed { class, class_period } => {
                write!(f, "rotational class {{{}}} has period {class_period}, not 1", list(class))
            }
            CubioidDiagnostic::MissingAttachedGap { class, period } => {
                write!(f, "periodic class {{{}}} has no attached Fatou gap of period {period}", list(class))
            }
            CubioidDiagnostic::InconsistentMetadata { edge, leaf } => {
                write!(f, "metadata edge {edge} crosses leaf {leaf}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubioidVerdict {
    pub member: bool,
    #[serde(flatten)]
    pub diagnostic: CubioidDiagnostic,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CubioidOptions {
    /// Largest vertex period scanned; default `2 * generator period + 6`.
    pub period_bound: Option<usize>,
}

fn generator_period(s: &LaminationSlice) -> usize {
    s.generators()
        .iter()
        .filter_map(|g| match g {
            Generator::Leaf(c) => Some(orbit_info(s.degree(), c.lo()).period.max(orbit_info(s.degree(), c.hi()).period)),
            Generator::Gap(_) => None,
        })
        .max()
        .unwrap_or(0)
}

fn scan(s: &CertifiedSlice, opts: CubioidOptions) -> Result<std::result::Result<Vec<PeriodicClass>, CubioidDiagnostic>> {
    if let Some((edge, leaf)) = crossing_with(&s.metadata_edges(), &s.slice) {
        return Ok(Err(CubioidDiagnostic::InconsistentMetadata { edge, leaf }));
    }
    let bound = opts.period_bound.unwrap_or(2 * generator_period(&s.slice) + 6);
    let classes = periodic_classes(&s.slice);
    if let Some(c) = classes.iter().find(|c| c.vertex_period > bound) {
        return Err(Error::DepthInsufficient(format!("periodic class of period {} above bound {bound}", c.vertex_period)));
    }
    if classes.is_empty() && s.metadata.is_empty() {
        return Err(Error::DepthInsufficient("no periodic leaves and no metadata".into()));
    }
    Ok(Ok(classes))
}

pub fn is_cubioid_member(s: &CertifiedSlice) -> Result<CubioidVerdict> {
    is_cubioid_member_with(s, CubioidOptions::default())
}

pub fn is_cubioid_member_with(s: &CertifiedSlice, opts: CubioidOptions) -> Result<CubioidVerdict> {
    let no = |diagnostic| Ok(CubioidVerdict { member: false, diagnostic });
    if s.slice.is_empty() {
        return Ok(CubioidVerdict { member: true, diagnostic: CubioidDiagnostic::Empty });
    }
    let classes = match scan(s, opts)? {
        Ok(c) => c,
        Err(diag) => return no(diag),
    };
    let mut rot: Vec<&PeriodicClass> = classes.iter().filter(|c| c.is_rotational()).collect();
    let known: HashSet<&Vec<Angle>> = rot.iter().map(|c| &c.vertices).collect();
    let extra: Vec<PeriodicClass> = s
        .metadata
        .iter()
        .filter_map(|m| match m {
            MetaGap::Rotational(g) if !known.contains(&g.vertices().to_vec()) => {
                Some(classify_class(s.slice.degree(), g.vertices().to_vec()))
            }
            _ => None,
        })
        .filter(PeriodicClass::is_rotational)
        .collect();
    rot.extend(extra.iter());
    if rot.len() > 1 {
        return no(CubioidDiagnostic::TooManyRotational {
            count: rot.len(),
            classes: rot.iter().map(|c| c.vertices.clone()).collect(),
        });
    }
    if let Some(c) = rot.first() {
        if c.class_period != 1 {
            return no(CubioidDiagnostic::RotationalNotFixed { class: c.vertices.clone(), class_period: c.class_period });
        }
    }
    let attached = s.attached_cycles();
    for c in &classes {
        let edges = c.edges();
        let ok = attached.iter().any(|(p, owners)| *p == c.vertex_period && edges.iter().any(|e| owners.contains(e)));
        if !ok {
            return no(CubioidDiagnostic::MissingAttachedGap { class: c.vertices.clone(), period: c.vertex_period });
        }
    }
    Ok(CubioidVerdict {
        member: true,
        diagnostic: CubioidDiagnostic::Member { rotational_sets: rot.len(), periodic_classes: classes.len() },
    })
}

/// Every periodic leaf of vertex period `n` has a Fatou gap of period `n`
/// attached to it.
pub fn corollary_check(s: &CertifiedSlice) -> Result<bool> {
    if s.slice.is_empty() {
        return Ok(true);
    }
    if scan(s, CubioidOptions::default())?.is_err() {
        return Ok(false);
    }
    let d = s.slice.degree();
    let attached = s.attached_cycles();
    for c in s.slice.chords() {
        let (Some(p), Some(q)) = (exact_period(d, c.lo()), exact_period(d, c.hi())) else { continue };
        if p != q || !attached.iter().any(|(n, owners)| *n == p && owners.contains(c)) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Classification witness

#[derive(Clone, Debug)]
pub struct Witness {
    pub gap: QuadGap,
    /// 1: weak tuning on a regular critical gap whose edges are not leaves;
    /// 2: tuning of the canonical lamination of the gap.
    pub case: u8,
    pub projected: LaminationSlice,
    /// Which search stage produced the gap.
    pub source: &'static str,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({
            "gap": { "a": self.gap.a(), "b": self.gap.b(), "major": self.gap.major(), "type": format!("{:?}", self.gap.kind()) },
            "case": self.case,
            "source": self.source,
            "projected": self.projected.to_json(),
        })
    }
}

fn evaluate(u: &QuadGap, s: &CertifiedSlice, source: &'static str) -> std::result::Result<Witness, String> {
    let depth = s.slice.depth();
    let edges = gap_edges(u, depth);
    if let Some((e, l)) = crossing_with(&edges, &s.slice) {
        return Err(format!("{u}: edge {e} crosses leaf {l}"));
    }
    let tuned = u.major_cycle().iter().all(|e| s.slice.contains(&e.chord));
    let case = if tuned { 2 } else { 1 };
    if case == 1 && !u.is_regular() {
        return Err(format!("{u}: periodic type but its major is not a leaf"));
    }
    if case == 1 {
        if let Some(e) = edges.iter().find(|e| s.slice.contains(e)) {
            return Err(format!("{u}: edge {e} is a leaf but the major is not"));
        }
    }
    if case == 2 && !u.is_regular() {
        let v = vassal(u, depth).map_err(|e| e.to_string())?;
        if let Some((e, l)) = crossing_with(&v.edges(), &s.slice) {
            return Err(format!("{u}: vassal edge {e} crosses leaf {l}"));
        }
    }
    let projected = project_slice(u, &s.slice).map_err(|e| format!("{u}: {e}"))?;
    match car_membership(&projected) {
        Ok(true) => Ok(Witness { gap: u.clone(), case, projected, source }),
        Ok(false) => Err(format!("{u}: projection is not in the Cardioid")),
        Err(e) => Err(format!("{u}: {e}")),
    }
}

/// Regular critical chords `{x, x+1/3}` inside the critical regions of a
/// cycle, with image of denominator `3^k (3^m - 1)`. In a gap of return
/// degree two a periodic image makes the chord caterpillar, so preperiodic
/// images are needed there.
fn critical_chords_in(cycle: &GapCycle) -> Vec<CriticalChord> {
    let third = BigRational::new(1.into(), 3.into());
    let mut dens: Vec<i64> = (0..=3u32).flat_map(|k| (1..=4u32).map(move |m| 3i64.pow(k) * (3i64.pow(m) - 1))).collect();
    dens.sort_unstable();
    dens.dedup();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for den in dens {
        for i in 0..den {
            let w = Angle::frac_of(i, den);
            if !seen.insert(w.clone()) {
                continue;
            }
            for (j, r) in cycle.regions().iter().enumerate() {
                if r.sheets == 0 || !cycle.in_base(r.next, &w) {
                    continue;
                }
                for k in 0..3 {
                    let x = Angle::from_ratio((w.value() + BigRational::from_integer(k.into())) * &third);
                    if !cycle.in_base(j, &x) || !cycle.in_base(j, &x.shift(&third)) {
                        continue;
                    }
                    let cc = CriticalChord::from_endpoint(x);
                    if classify_critical_chord(&cc) == CriticalClass::RegularCritical && !out.contains(&cc) {
                        out.push(cc);
                    }
                }
            }
        }
    }
    out
}

fn search(s: &CertifiedSlice, all: bool) -> Result<(Vec<Witness>, Vec<String>)> {
    let verdict = is_cubioid_member(s)?;
    if !verdict.member {
        return Err(Error::NoWitnessFound(format!("not a cubioid member: {}", verdict.diagnostic)));
    }
    let mut found: Vec<Witness> = Vec::new();
    let mut notes = Vec::new();
    let mut tried: HashSet<QuadGap> = HashSet::new();
    let mut try_gap = |u: QuadGap, source: &'static str, found: &mut Vec<Witness>| -> bool {
        if !tried.insert(u.clone()) {
            return false;
        }
        match evaluate(&u, s, source) {
            Ok(w) => {
                found.push(w);
                !all
            }
            Err(e) => {
                notes.push(e);
                false
            }
        }
    };

    for u in s.quad_gaps() {
        if try_gap(u.clone(), "metadata", &mut found) {
            return Ok((found, notes));
        }
    }
    let classes = periodic_classes(&s.slice);
    let mut majors = BTreeSet::new();
    for c in &classes {
        for e in c.edges() {
            if s.slice.contains(&e) && is_periodic_type_major(&e).unwrap_or(false) {
                majors.insert(e);
            }
        }
    }
    for m in majors {
        let Some((a, b)) = major_orientation(&m) else { continue };
        let Ok(u) = QuadGap::periodic(a, b) else { continue };
        let partner = u.special_partner();
        for u in std::iter::once(u).chain(partner) {
            if try_gap(u, "periodic-major", &mut found) {
                return Ok((found, notes));
            }
        }
    }
    let third = BigRational::new(1.into(), 3.into());
    let crit: Vec<&Chord> = s
        .slice
        .chords()
        .filter(|c| {
            let l = c.lo().dist_to(c.hi());
            l == third || l == BigRational::one() - &third
        })
        .collect();
    for c in crit {
        let Ok(cc) = CriticalChord::new(c.clone()) else { continue };
        let Ok(u) = build_quad_gap(&cc) else { continue };
        if try_gap(u, "critical-leaf", &mut found) {
            return Ok((found, notes));
        }
    }
    let mut cycles = Vec::new();
    for m in &s.metadata {
        match m {
            MetaGap::Rotational(g) => {
                if let Ok(c) = GapCycle::attached(g, s.slice.degree()) {
                    cycles.push(c.critical_part());
                }
            }
            MetaGap::Quad(u) if !u.is_regular() => cycles.extend(GapCycle::vassal_cycle(u).ok()),
            _ => {}
        }
    }
    for cycle in &cycles {
        for cc in critical_chords_in(cycle) {
            let Ok(u) = QuadGap::regular(&cc) else { continue };
            if try_gap(u, "critical-gap", &mut found) {
                return Ok((found, notes));
            }
        }
    }
    Ok((found, notes))
}

/// A quadratic invariant gap `U` realising the classification of `s`.
pub fn main_theorem_witness(s: &CertifiedSlice) -> Result<Witness> {
    let (found, notes) = search(s, false)?;
    found.into_iter().next().ok_or_else(|| {
        let mut msg = format!("{} candidate gap(s) rejected", notes.len());
        for n in notes.iter().take(8) {
            msg.push_str("; ");
            msg.push_str(n);
        }
        Error::NoWitnessFound(msg)
    })
}

/// Every candidate gap that passes, in search order.
pub fn witness_candidates(s: &CertifiedSlice) -> Result<Vec<Witness>> {
    Ok(search(s, true)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_quadratic;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn c(s: &str) -> Chord {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn slice(d: u32, chords: &[&str]) -> LaminationSlice {
        let v: Vec<Chord> = chords.iter().map(|s| c(s)).collect();
        LaminationSlice::from_chords(d, 4, v.clone(), v.into_iter().map(Generator::Leaf).collect())
    }

    #[test]
    fn fa_coding_values() {
        let k = PsiCoding::quad(&QuadGap::fa()).unwrap();
        assert_eq!(psi_project(&k, &a("0")).unwrap(), a("0"));
        assert_eq!(psi_project(&k, &a("1/2")).unwrap(), a("0"));
        assert_eq!(psi_project(&k, &a("1/8")).unwrap(), a("1/3"));
        assert_eq!(psi_project(&k, &a("3/8")).unwrap(), a("2/3"));
        assert!(matches!(psi_project(&k, &a("3/4")), Err(Error::NotInBase(_))));
    }

    #[test]
    fn coding_semiconjugates() {
        let k = PsiCoding::quad(&QuadGap::fb()).unwrap();
        for x in ["1/2", "5/8", "7/8", "13/24", "23/24"] {
            let x = a(x);
            let t = psi_project(&k, &x).unwrap();
            assert_eq!(psi_project(&k, &sigma(3, &x)).unwrap(), sigma(2, &t));
        }
    }

    #[test]
    fn lift_round_trips() {
        let k = PsiCoding::quad(&QuadGap::fa()).unwrap();
        for t in ["0", "1/3", "2/3", "1/5", "3/7", "5/12", "1/6"] {
            let x = psi_lift(&k, &a(t)).unwrap();
            assert!(QuadGap::fa().in_base(&x));
            assert_eq!(psi_project(&k, &x).unwrap(), a(t));
        }
    }

    #[test]
    fn vassal_coding_needs_degree_two() {
        let u = QuadGap::periodic(a("3/4"), a("1/8")).unwrap();
        let k = PsiCoding::vassal(&u).unwrap();
        assert_eq!(k.return_time(), 2);
        let x = k.anchor().clone();
        assert_eq!(k.return_map(&x), x);
        assert!(PsiCoding::vassal(&QuadGap::regular(&CriticalChord::from_endpoint(a("1/3"))).unwrap()).is_err());
    }

    #[test]
    fn bits_value_is_exact() {
        assert_eq!(bits_value(&[], &[0, 1]), a("1/3"));
        assert_eq!(bits_value(&[1], &[0]), a("1/2"));
        assert_eq!(bits_value(&[0, 1], &[1, 0]), a("1/4").shift(&r(1, 6)));
    }

    #[test]
    fn periodic_class_rotation() {
        let s = slice(3, &["1/8-3/8"]);
        let k = periodic_classes(&s);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].rotation, Some(r(1, 2)));
        assert_eq!(k[0].class_period, 1);
        let s = slice(2, &["1/7-2/7", "2/7-4/7", "1/7-4/7"]);
        let k = periodic_classes(&s);
        assert_eq!(k[0].rotation, Some(r(1, 3)));
        let s = slice(2, &["1/5-2/5"]);
        assert!(!periodic_classes(&s)[0].is_rotational() || periodic_classes(&s)[0].class_period != 1);
    }

    #[test]
    fn cardioid_membership() {
        assert!(car_membership(&LaminationSlice::from_chords(2, 4, vec![], vec![])).unwrap());
        let q = canonical_quadratic(Some(&r(1, 3)), 6).unwrap();
        assert!(car_membership(&q).unwrap());
        let mut broken: Vec<Chord> = q.chords().cloned().collect();
        broken.pop();
        let b = LaminationSlice::from_chords(2, 6, broken, q.generators().to_vec());
        assert!(!car_membership(&b).unwrap());
        let two = slice(2, &["1/3-2/3", "1/7-2/7", "2/7-4/7", "1/7-4/7"]);
        assert!(!car_membership(&two).unwrap());
    }

    #[test]
    fn negative_fixtures() {
        let s = CertifiedSlice { slice: slice(3, &["1/8-3/8", "5/8-7/8"]), metadata: vec![] };
        let v = is_cubioid_member(&s).unwrap();
        assert!(!v.member);
        assert!(matches!(v.diagnostic, CubioidDiagnostic::TooManyRotational { count: 2, .. }));
        let s = CertifiedSlice { slice: slice(3, &["7/8-1/4", "5/8-3/4"]), metadata: vec![] };
        let v = is_cubioid_member(&s).unwrap();
        assert!(matches!(v.diagnostic, CubioidDiagnostic::MissingAttachedGap { .. }));
        assert!(!corollary_check(&s).unwrap());
    }

    #[test]
    fn canonical_slices_are_members() {
        let s = CertifiedSlice::canonical_quadgap(&QuadGap::fb(), 5).unwrap();
        assert!(is_cubioid_member(&s).unwrap().member);
        assert!(corollary_check(&s).unwrap());
        let g = rotational_set_from_vertices(3, &[a("1/8"), a("3/8")]).unwrap();
        let s = CertifiedSlice::canonical_rotational(&g, 5).unwrap();
        assert!(is_cubioid_member(&s).unwrap().member);
    }

    #[test]
    fn metadata_json_round_trip() {
        let s = CertifiedSlice::canonical_quadgap(&QuadGap::periodic(a("3/4"), a("1/8")).unwrap(), 3).unwrap();
        let back = CertifiedSlice::from_json(&s.to_json()).unwrap();
        assert_eq!(back.metadata, s.metadata);
        assert_eq!(back.slice.chord_set(), s.slice.chord_set());
    }

    #[test]
    fn tuning_projects_back() {
        let u = QuadGap::fb();
        let q = canonical_quadratic(Some(&r(1, 2)), 5).unwrap();
        let t = tune(&u, &q, 5).unwrap();
        assert_eq!(project_lamination(&u, &t).unwrap().chord_set(), q.chord_set());
        assert!(is_cubioid_member(&t).unwrap().member);
        let w = main_theorem_witness(&t).unwrap();
        assert_eq!(w.case, 2);
    }

    #[test]
    fn tune_rejects_non_members() {
        let q = slice(2, &["1/3-2/3", "1/7-2/7", "2/7-4/7", "1/7-4/7"]);
        assert!(matches!(tune(&QuadGap::fa(), &q, 4), Err(Error::NotCardioidMember(_))));
    }

    #[test]
    fn witness_for_type_b() {
        let g = rotational_set_from_vertices(3, &[a("1/4"), a("3/4")]).unwrap();
        let s = CertifiedSlice::canonical_rotational(&g, 5).unwrap();
        let w = main_theorem_witness(&s).unwrap();
        assert_eq!(w.case, 1);
        assert!(w.gap.is_regular());
    }

    #[test]
    fn clean_drops_critical_diameters() {
        let v = clean(vec![c("1/3-2/3"), c("1/6-1/3"), c("1/6-2/3"), c("0-1/2")]);
        assert!(v.contains(&c("1/3-2/3")));
        let v = clean(vec![c("1/4-3/4"), c("1/4-1/2"), c("1/2-3/4")]);
        assert!(!v.contains(&c("1/4-3/4")));
    }
}
