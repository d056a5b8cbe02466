//! Angles on the circle R/Z as exact rationals, arcs, chords and the maps
//! `t -> d*t mod 1`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Fractional part, always in `[0, 1)`.
pub fn frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `1/3`, used all over the cubic machinery.
pub fn third() -> BigRational {
    rat(1, 3)
}

/// A point of the circle, stored as a reduced rational in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

impl Angle {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Angle> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Parse { what: "angle", input: "zero denominator".into() });
        }
        Ok(Angle(frac(&BigRational::new(num.into(), den))))
    }

    /// Small-integer convenience constructor; panics on a zero denominator.
    pub fn frac_of(num: i64, den: i64) -> Angle {
        Angle::new(num, den).expect("nonzero denominator")
    }

    pub fn from_ratio(r: BigRational) -> Angle {
        if !r.is_negative() && r < BigRational::one() {
            Angle(r)
        } else {
            Angle(frac(&r))
        }
    }

    /// `x / q` for `x < q`, reduced in machine integers.
    pub(crate) fn from_grid(x: u128, q: u128) -> Angle {
        let g = num_integer::Integer::gcd(&x, &q);
        Angle(BigRational::new_raw(BigInt::from(x / g), BigInt::from(q / g)))
    }

    pub fn zero() -> Angle {
        Angle(BigRational::zero())
    }

    pub fn half() -> Angle {
        Angle(rat(1, 2))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Rotate by `r` (any rational).
    pub fn shift(&self, r: &BigRational) -> Angle {
        Angle::from_ratio(&self.0 + r)
    }

    /// Positive distance travelled from `self` to `other`, in `[0, 1)`.
    pub fn dist_to(&self, other: &Angle) -> BigRational {
        let d = &other.0 - &self.0;
        if d.is_negative() {
            d + BigRational::one()
        } else {
            d
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Angle> {
        let bad = || Error::Parse { what: "angle", input: s.to_string() };
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if !d.is_positive() {
            return Err(bad());
        }
        Angle::new(n, d)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Angle, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `sigma_d(a) = d*a mod 1`.
pub fn sigma(d: u32, a: &Angle) -> Angle {
    Angle(frac(&(&a.0 * BigInt::from(d))))
}

pub fn sigma_n(d: u32, n: usize, a: &Angle) -> Angle {
    if n == 0 {
        return a.clone();
    }
    let m = BigInt::from(d).pow(n as u32);
    Angle(frac(&(&a.0 * m)))
}

/// A rational is `sigma_d`-periodic exactly when its reduced denominator is
/// coprime to `d`.
pub fn is_periodic(d: u32, a: &Angle) -> bool {
    a.denom().gcd(&BigInt::from(d)).is_one()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitInfo {
    pub preperiod: usize,
    pub period: usize,
    /// `a, sigma(a), ...` up to and including the last point of the first cycle.
    pub orbit: Vec<Angle>,
}

impl OrbitInfo {
    pub fn cycle(&self) -> &[Angle] {
        &self.orbit[self.preperiod..]
    }
}

pub fn orbit_info(d: u32, a: &Angle) -> OrbitInfo {
    let mut seen: HashMap<Angle, usize> = HashMap::new();
    let mut orbit = Vec::new();
    let mut x = a.clone();
    loop {
        if let Some(&i) = seen.get(&x) {
            let period = orbit.len() - i;
            return OrbitInfo { preperiod: i, period, orbit };
        }
        seen.insert(x.clone(), orbit.len());
        let next = sigma(d, &x);
        orbit.push(x);
        x = next;
    }
}

/// Exact `sigma_d`-period of a periodic angle, `None` if preperiodic.
pub fn exact_period(d: u32, a: &Angle) -> Option<usize> {
    if !is_periodic(d, a) {
        return None;
    }
    let mut x = sigma(d, a);
    let mut n = 1;
    while &x != a {
        x = sigma(d, &x);
        n += 1;
    }
    Some(n)
}

/// True iff `x` lies in the open positively oriented arc from `a` to `b`.
/// For `a == b` that arc is the circle minus one point.
pub fn in_open_arc(a: &Angle, b: &Angle, x: &Angle) -> bool {
    let ox = a.dist_to(x);
    if ox.is_zero() {
        return false;
    }
    let ob = a.dist_to(b);
    ob.is_zero() || ox < ob
}

/// True iff `x` lies in the closed arc `[a, b]`.
pub fn in_closed_arc(a: &Angle, b: &Angle, x: &Angle) -> bool {
    x == a || x == b || in_open_arc(a, b, x)
}

/// A positively oriented arc with explicit endpoint conventions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arc {
    pub start: Angle,
    pub end: Angle,
    pub include_start: bool,
    pub include_end: bool,
    /// Set when `start == end` denotes the whole circle rather than a point.
    pub full: bool,
}

impl Arc {
    pub fn new(start: Angle, end: Angle, include_start: bool, include_end: bool) -> Arc {
        Arc { start, end, include_start, include_end, full: false }
    }

    pub fn open(start: Angle, end: Angle) -> Arc {
        let full = start == end;
        Arc { start, end, include_start: false, include_end: false, full }
    }

    pub fn closed(start: Angle, end: Angle) -> Arc {
        Arc::new(start, end, true, true)
    }

    pub fn point(a: Angle) -> Arc {
        Arc::new(a.clone(), a, true, true)
    }

    pub fn full_circle(at: Angle) -> Arc {
        Arc { start: at.clone(), end: at, include_start: true, include_end: true, full: true }
    }

    pub fn length(&self) -> BigRational {
        if self.full {
            BigRational::one()
        } else {
            self.start.dist_to(&self.end)
        }
    }

    pub fn is_degenerate(&self) -> bool {
        !self.full && self.start == self.end
    }

    pub fn closure(&self) -> Arc {
        Arc { include_start: true, include_end: true, ..self.clone() }
    }

    pub fn interior(&self) -> Arc {
        Arc { include_start: false, include_end: false, ..self.clone() }
    }

    pub fn contains(&self, x: &Angle) -> bool {
        let off = self.start.dist_to(x);
        if off.is_zero() {
            return if self.full || !self.is_degenerate() {
                self.include_start || (self.full && self.include_end)
            } else {
                self.include_start && self.include_end
            };
        }
        let len = self.length();
        match off.cmp(&len) {
            Ordering::Less => true,
            Ordering::Equal => self.include_end,
            Ordering::Greater => false,
        }
    }

    /// Image under `sigma_d`, assuming the arc is shorter than `1/d` so the
    /// map is injective on it.
    pub fn image(&self, d: u32) -> Arc {
        Arc { start: sigma(d, &self.start), end: sigma(d, &self.end), ..self.clone() }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.include_start { '[' } else { '(' };
        let r = if self.include_end { ']' } else { ')' };
        write!(f, "{}{},{}{}", l, self.start, self.end, r)
    }
}

pub fn arc_contains(arc: &Arc, a: &Angle) -> bool {
    arc.contains(a)
}

/// `[x, x+len_a] ⊆ [p, p+len_r]` for closed arcs given by start and length.
pub fn closed_arc_within(x: &Angle, len_a: &BigRational, p: &Angle, len_r: &BigRational) -> bool {
    let off = p.dist_to(x);
    &off + len_a <= *len_r
}

/// Unordered pair of angles, stored with `lo <= hi`; the derived order is the
/// canonical leaf order (smaller endpoint first, then larger).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    lo: Angle,
    hi: Angle,
}

impl Chord {
    pub fn new(a: Angle, b: Angle) -> Chord {
        if a <= b {
            Chord { lo: a, hi: b }
        } else {
            Chord { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &Angle {
        &self.lo
    }

    pub fn hi(&self) -> &Angle {
        &self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn has_endpoint(&self, x: &Angle) -> bool {
        &self.lo == x || &self.hi == x
    }

    pub fn shares_endpoint(&self, other: &Chord) -> bool {
        self.has_endpoint(&other.lo) || self.has_endpoint(&other.hi)
    }

    /// The endpoint other than `x`; `None` when `x` is not an endpoint.
    pub fn other(&self, x: &Angle) -> Option<&Angle> {
        if &self.lo == x {
            Some(&self.hi)
        } else if &self.hi == x {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn image(&self, d: u32) -> Chord {
        Chord::new(sigma(d, &self.lo), sigma(d, &self.hi))
    }

    pub fn image_n(&self, d: u32, n: usize) -> Chord {
        Chord::new(sigma_n(d, n, &self.lo), sigma_n(d, n, &self.hi))
    }

    /// Length of the shorter complementary arc.
    pub fn short_length(&self) -> BigRational {
        let l = self.lo.dist_to(&self.hi);
        let r = BigRational::one() - &l;
        l.min(r)
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl fmt::Debug for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Chord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Chord> {
        let (a, b) = s
            .trim()
            .split_once('-')
            .ok_or_else(|| Error::Parse { what: "chord", input: s.to_string() })?;
        Ok(Chord::new(a.parse()?, b.parse()?))
    }
}

impl Serialize for Chord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Chord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Chord, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Crossing test for non-degenerate chords; shared endpoints do not link.
pub(crate) fn linked(c1: &Chord, c2: &Chord) -> bool {
    let (l1, h1, l2, h2) = (&c1.lo, &c1.hi, &c2.lo, &c2.hi);
    (l1 < l2 && l2 < h1 && h1 < h2) || (l2 < l1 && l1 < h2 && h2 < h1)
}

pub fn chords_linked(c1: &Chord, c2: &Chord) -> Result<bool> {
    for c in [c1, c2] {
        if c.is_degenerate() {
            return Err(Error::DegenerateChord(c.to_string()));
        }
    }
    Ok(linked(c1, c2))
}

/// All `d^k - 1` points fixed by `sigma_d^k`, in increasing order.
pub fn fixed_points(d: u32, k: usize) -> Vec<Angle> {
    let n: BigInt = BigInt::from(d).pow(k as u32) - 1;
    let count = n.to_u64().expect("fixed point count fits in u64");
    (0..count).map(|j| Angle::new(BigInt::from(j), n.clone()).unwrap()).collect()
}

/// Points of exact period `k`.
pub fn periodic_points(d: u32, k: usize) -> Vec<Angle> {
    fixed_points(d, k)
        .into_iter()
        .filter(|a| exact_period(d, a) == Some(k))
        .collect()
}
