use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::finite::FiniteMap;
use super::piecewise::PiecewiseLinearMap;
use super::point::{Point, SymbolicPoint};
use super::shift::{self, ShiftSft};
use crate::eps::Dyadic;
use crate::error::{Error, Result};

/// A forward-invariant compact subset used by [`SystemModel::Restriction`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantSubset {
    /// Explicit point set of a finite map; invariance is checked.
    Points { indices: Vec<usize> },
    /// Sub-SFT given by a transition matrix entrywise below the base matrix.
    SubShift { transitions: Vec<Vec<u8>> },
    /// Closed interval declared invariant (not checked).
    Interval { lo: f64, hi: f64 },
}

/// A compact metric space with a continuous self-map whose preimages can be
/// enumerated exactly.
///
/// Values are immutable once built; all operations are pure.
#[derive(Debug, Clone, PartialEq)]
pub enum SystemModel {
    Finite(FiniteMap),
    Shift(ShiftSft),
    Piecewise(PiecewiseLinearMap),
    Product(Box<SystemModel>, Box<SystemModel>),
    Power {
        base: Box<SystemModel>,
        exponent: usize,
    },
    Restriction {
        base: Box<SystemModel>,
        subset: Restricted,
    },
}

/// A validated [`InvariantSubset`] in lookup-friendly form.
#[derive(Debug, Clone, PartialEq)]
pub enum Restricted {
    Points(Vec<bool>),
    SubShift(ShiftSft),
    Interval(f64, f64),
}

impl Restricted {
    pub fn descriptor(&self) -> InvariantSubset {
        match self {
            Restricted::Points(mask) => InvariantSubset::Points {
                indices: mask
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &b)| b.then_some(i))
                    .collect(),
            },
            Restricted::SubShift(s) => InvariantSubset::SubShift {
                transitions: s.transitions().to_vec(),
            },
            Restricted::Interval(lo, hi) => InvariantSubset::Interval { lo: *lo, hi: *hi },
        }
    }
}

/// Opaque grouping key; candidates with different keys are always
/// `(n, ε)`-separated.
pub type SeparationKey = Vec<u16>;

impl SystemModel {
    pub fn full_shift(m: usize) -> Result<Self> {
        Ok(SystemModel::Shift(ShiftSft::full(m)?))
    }

    pub fn golden_mean() -> Self {
        SystemModel::Shift(ShiftSft::golden_mean())
    }

    pub fn product(a: SystemModel, b: SystemModel) -> Self {
        SystemModel::Product(Box::new(a), Box::new(b))
    }

    pub fn power(base: SystemModel, exponent: usize) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::domain("power exponent must be at least 1"));
        }
        Ok(SystemModel::Power {
            base: Box::new(base),
            exponent,
        })
    }

    pub fn restrict(base: SystemModel, subset: InvariantSubset) -> Result<Self> {
        let restricted = match (&base, subset) {
            (SystemModel::Finite(f), InvariantSubset::Points { indices }) => {
                let mut mask = vec![false; f.len()];
                for &i in &indices {
                    if i >= f.len() {
                        return Err(Error::domain(format!("subset index {i} out of range")));
                    }
                    mask[i] = true;
                }
                if indices.is_empty() {
                    return Err(Error::domain("invariant subset must be nonempty"));
                }
                if let Some(&i) = indices.iter().find(|&&i| !mask[f.image(i)]) {
                    return Err(Error::domain(format!(
                        "subset is not forward invariant: T({i}) = {} leaves it",
                        f.image(i)
                    )));
                }
                Restricted::Points(mask)
            }
            (SystemModel::Shift(s), InvariantSubset::SubShift { transitions }) => {
                let sub = ShiftSft::new(transitions)?;
                if !sub.is_subshift_of(s) {
                    return Err(Error::domain(
                        "sub-SFT matrix is not entrywise below the base",
                    ));
                }
                Restricted::SubShift(sub)
            }
            (SystemModel::Piecewise(_), InvariantSubset::Interval { lo, hi }) => {
                if !(0.0 <= lo && lo <= hi && hi <= 1.0) {
                    return Err(Error::domain("invariant interval must lie in [0,1]"));
                }
                Restricted::Interval(lo, hi)
            }
            (SystemModel::Restriction { .. }, _) => {
                return Err(Error::domain("nested restrictions are not supported"))
            }
            (_, subset) => {
                return Err(Error::domain(format!(
                    "subset {subset:?} does not match the base system variant"
                )))
            }
        };
        Ok(SystemModel::Restriction {
            base: Box::new(base),
            subset: restricted,
        })
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            SystemModel::Finite(_) => "finite_map",
            SystemModel::Shift(_) => "shift_sft",
            SystemModel::Piecewise(_) => "piecewise_linear",
            SystemModel::Product(..) => "product",
            SystemModel::Power { .. } => "power",
            SystemModel::Restriction { .. } => "restriction",
        }
    }

    /// Whether `x` is a point of this system's phase space.
    pub fn contains(&self, x: &Point) -> bool {
        match (self, x) {
            (SystemModel::Finite(f), Point::Finite { index }) => *index < f.len(),
            (SystemModel::Shift(s), Point::Symbolic(p)) => s.contains(p),
            (SystemModel::Piecewise(p), Point::Real { x }) => p.contains(*x),
            (SystemModel::Product(a, b), Point::Pair { first, second }) => {
                a.contains(first) && b.contains(second)
            }
            (SystemModel::Power { base, .. }, _) => base.contains(x),
            (SystemModel::Restriction { base, subset }, _) => {
                base.contains(x)
                    && match (subset, x) {
                        (Restricted::Points(mask), Point::Finite { index }) => mask[*index],
                        (Restricted::SubShift(s), Point::Symbolic(p)) => s.contains(p),
                        (Restricted::Interval(lo, hi), Point::Real { x }) => {
                            (*lo..=*hi).contains(x)
                        }
                        _ => false,
                    }
            }
            _ => false,
        }
    }

    pub(crate) fn check(&self, x: &Point) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "point {x} is outside the {} phase space",
                self.variant_name()
            )))
        }
    }

    /// `T(x)`; for a power system the `m`-fold composition of the base map.
    pub fn step(&self, x: &Point) -> Result<Point> {
        self.check(x)?;
        self.step_unchecked(x)
    }

    pub(crate) fn step_unchecked(&self, x: &Point) -> Result<Point> {
        Ok(match (self, x) {
            (SystemModel::Finite(f), Point::Finite { index }) => Point::finite(f.image(*index)),
            (SystemModel::Shift(_), Point::Symbolic(p)) => Point::Symbolic(p.shifted()),
            (SystemModel::Piecewise(p), Point::Real { x }) => Point::real(p.step(*x)?),
            (SystemModel::Product(a, b), Point::Pair { first, second }) => {
                Point::pair(a.step_unchecked(first)?, b.step_unchecked(second)?)
            }
            (SystemModel::Power { base, exponent }, _) => {
                let mut y = x.clone();
                for _ in 0..*exponent {
                    y = base.step_unchecked(&y)?;
                }
                y
            }
            (SystemModel::Restriction { base, .. }, _) => base.step_unchecked(x)?,
            _ => {
                return Err(Error::domain(format!(
                    "point {x} does not match the system"
                )))
            }
        })
    }

    /// `T^j(x)`
    pub fn iterate(&self, x: &Point, j: usize) -> Result<Point> {
        self.check(x)?;
        let mut y = x.clone();
        for _ in 0..j {
            y = self.step_unchecked(&y)?;
        }
        Ok(y)
    }

    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        self.check(x)?;
        self.check(y)?;
        self.distance_unchecked(x, y)
    }

    pub(crate) fn distance_unchecked(&self, x: &Point, y: &Point) -> Result<f64> {
        Ok(match (self, x, y) {
            (SystemModel::Finite(f), Point::Finite { index: i }, Point::Finite { index: j }) => {
                f.distance(*i, *j)
            }
            (SystemModel::Shift(_), Point::Symbolic(a), Point::Symbolic(b)) => shift::rho(a, b),
            (SystemModel::Piecewise(p), Point::Real { x: a }, Point::Real { x: b }) => {
                p.distance(*a, *b)
            }
            (SystemModel::Product(a, b), Point::Pair { .. }, Point::Pair { .. }) => {
                let (x1, x2) = x.as_pair().expect("pair");
                let (y1, y2) = y.as_pair().expect("pair");
                a.distance_unchecked(x1, y1)?
                    .max(b.distance_unchecked(x2, y2)?)
            }
            (SystemModel::Power { base, .. }, _, _)
            | (SystemModel::Restriction { base, .. }, _, _) => base.distance_unchecked(x, y)?,
            _ => return Err(Error::domain("points belong to different systems")),
        })
    }

    /// Bowen distance `max_{0≤j<n} d(T^j x, T^j y)`.
    pub fn bowen_distance(&self, x: &Point, y: &Point, n: usize) -> Result<f64> {
        if n > 0 && self.contains(x) && self.contains(y) {
            if let Some(d) = self.symbolic_bowen(x, y, n, 1) {
                return Ok(d);
            }
        }
        self.bowen_distance_with(x, y, n, |a, b| self.distance_unchecked(a, b))
    }

    /// Bowen distance for points already known to lie in the system.
    pub(crate) fn bowen_distance_unchecked(&self, x: &Point, y: &Point, n: usize) -> Result<f64> {
        match self.symbolic_bowen(x, y, n, 1) {
            Some(d) => Ok(d),
            None => self.bowen_distance(x, y, n),
        }
    }

    fn symbolic_bowen(&self, x: &Point, y: &Point, n: usize, stride: usize) -> Option<f64> {
        match (self, x, y) {
            (SystemModel::Shift(_), Point::Symbolic(a), Point::Symbolic(b)) => {
                Some(shift::bowen_rho(a, b, n, stride))
            }
            (SystemModel::Power { base, exponent }, _, _) => {
                base.symbolic_bowen(x, y, n, stride * exponent)
            }
            (SystemModel::Restriction { base, .. }, _, _) => base.symbolic_bowen(x, y, n, stride),
            (SystemModel::Product(a, b), Point::Pair { .. }, Point::Pair { .. }) => {
                let (x1, x2) = x.as_pair()?;
                let (y1, y2) = y.as_pair()?;
                Some(
                    a.symbolic_bowen(x1, y1, n, stride)?
                        .max(b.symbolic_bowen(x2, y2, n, stride)?),
                )
            }
            _ => None,
        }
    }

    /// Bowen distance built on an arbitrary base metric over this system's
    /// orbits.
    pub fn bowen_distance_with<F>(&self, x: &Point, y: &Point, n: usize, metric: F) -> Result<f64>
    where
        F: Fn(&Point, &Point) -> Result<f64>,
    {
        if n == 0 {
            return Err(Error::domain("window length n must be at least 1"));
        }
        self.check(x)?;
        self.check(y)?;
        let mut a = x.clone();
        let mut b = y.clone();
        let mut best = metric(&a, &b)?;
        for _ in 1..n {
            a = self.step_unchecked(&a)?;
            b = self.step_unchecked(&b)?;
            best = best.max(metric(&a, &b)?);
        }
        Ok(best)
    }

    /// The exact preimage set `T^{-k}(x)`, deduplicated, possibly empty.
    /// Points of an interval map come sorted by coordinate.
    pub fn preimage_set(&self, x: &Point, k: usize) -> Result<Vec<Point>> {
        self.check(x)?;
        let raw = self.preimages_unchecked(x, k)?;
        Ok(dedup(raw))
    }

    fn preimages_unchecked(&self, x: &Point, k: usize) -> Result<Vec<Point>> {
        Ok(match (self, x) {
            (SystemModel::Finite(f), Point::Finite { index }) => {
                let mut level = vec![*index];
                for _ in 0..k {
                    level = level.iter().flat_map(|&i| f.preimages_once(i)).collect();
                }
                level.sort_unstable();
                level.into_iter().map(Point::finite).collect()
            }
            (SystemModel::Shift(s), Point::Symbolic(p)) => {
                s.preimages(p, k).into_iter().map(Point::Symbolic).collect()
            }
            (SystemModel::Piecewise(p), Point::Real { x }) => {
                let mut level = vec![*x];
                for _ in 0..k {
                    level = level.iter().flat_map(|&y| p.preimages_once(y)).collect();
                }
                level.into_iter().map(Point::real).collect()
            }
            (SystemModel::Product(a, b), Point::Pair { first, second }) => {
                let pa = dedup(a.preimages_unchecked(first, k)?);
                let pb = dedup(b.preimages_unchecked(second, k)?);
                let mut out = Vec::with_capacity(pa.len() * pb.len());
                for u in &pa {
                    for v in &pb {
                        out.push(Point::pair(u.clone(), v.clone()));
                    }
                }
                out
            }
            (SystemModel::Power { base, exponent }, _) => {
                base.preimages_unchecked(x, k * exponent)?
            }
            (SystemModel::Restriction { base, .. }, _) => {
                let mut out = Vec::new();
                self.restricted_preimages(base, x, k, &mut out)?;
                out
            }
            _ => {
                return Err(Error::domain(format!(
                    "point {x} does not match the system"
                )))
            }
        })
    }

    // level by level so intermediate points also stay inside the subset
    fn restricted_preimages(
        &self,
        base: &SystemModel,
        x: &Point,
        k: usize,
        out: &mut Vec<Point>,
    ) -> Result<()> {
        let mut level = vec![x.clone()];
        for _ in 0..k {
            let mut next = Vec::new();
            for y in &level {
                for z in base.preimages_unchecked(y, 1)? {
                    if self.contains(&z) {
                        next.push(z);
                    }
                }
            }
            level = dedup(next);
        }
        out.extend(level);
        Ok(())
    }

    /// A key such that candidates with different keys are `(n, ε)`-separated.
    ///
    /// `None` when no such cheap certificate exists for this system.
    pub fn separation_key(&self, x: &Point, n: usize, eps: Dyadic) -> Option<SeparationKey> {
        let windows: Vec<usize> = (0..n).collect();
        self.key_for_windows(x, &windows, eps)
    }

    fn key_for_windows(&self, x: &Point, windows: &[usize], eps: Dyadic) -> Option<SeparationKey> {
        match (self, x) {
            (SystemModel::Shift(_), Point::Symbolic(p)) => {
                // a lone disagreement at p is certified when some window w ≤ p
                // sees it at relative depth below the separating depth
                let depth = eps.separating_depth();
                if depth == 0 {
                    return Some(Vec::new());
                }
                let last = *windows.last()?;
                let mut key = Vec::new();
                for pos in 0..last + depth {
                    let certified = windows
                        .iter()
                        .filter(|&&w| w <= pos)
                        .any(|&w| pos - w < depth);
                    if certified {
                        key.push(p.symbol(pos) as u16);
                    }
                }
                Some(key)
            }
            (SystemModel::Product(a, b), Point::Pair { first, second }) => {
                let ka = a.key_for_windows(first, windows, eps);
                let kb = b.key_for_windows(second, windows, eps);
                match (ka, kb) {
                    (None, None) => None,
                    (ka, kb) => {
                        let mut key = Vec::new();
                        if let Some(k) = ka {
                            key.push(k.len() as u16);
                            key.extend(k);
                        }
                        key.push(u16::MAX);
                        if let Some(k) = kb {
                            key.extend(k);
                        }
                        Some(key)
                    }
                }
            }
            (SystemModel::Power { base, exponent }, _) => {
                let scaled: Vec<usize> = windows.iter().map(|w| w * exponent).collect();
                base.key_for_windows(x, &scaled, eps)
            }
            (SystemModel::Restriction { base, .. }, _) => base.key_for_windows(x, windows, eps),
            _ => None,
        }
    }

    /// A real coordinate `c(x)` with `|c(x) - c(y)|` (or its circle version)
    /// bounded above by `d(x, y)`, used to prune pair comparisons.
    pub fn sweep_coordinate(&self, x: &Point) -> Option<f64> {
        match (self, x) {
            (SystemModel::Piecewise(_), Point::Real { x }) => Some(*x),
            (SystemModel::Product(a, _), Point::Pair { first, .. }) => a.sweep_coordinate(first),
            (SystemModel::Power { base, .. }, _) | (SystemModel::Restriction { base, .. }, _) => {
                base.sweep_coordinate(x)
            }
            _ => None,
        }
    }

    /// Whether the sweep coordinate lives on a circle.
    pub fn sweep_is_circle(&self) -> bool {
        match self {
            SystemModel::Piecewise(p) => p.is_circle(),
            SystemModel::Product(a, _) => a.sweep_is_circle(),
            SystemModel::Power { base, .. } | SystemModel::Restriction { base, .. } => {
                base.sweep_is_circle()
            }
            _ => false,
        }
    }

    /// Whether distances are computed in binary64 from real coordinates.
    pub fn is_real_valued(&self) -> bool {
        match self {
            SystemModel::Piecewise(_) => true,
            SystemModel::Finite(_) | SystemModel::Shift(_) => false,
            SystemModel::Product(a, b) => a.is_real_valued() || b.is_real_valued(),
            SystemModel::Power { base, .. } | SystemModel::Restriction { base, .. } => {
                base.is_real_valued()
            }
        }
    }
}

impl SystemModel {
    /// Points over which suprema in `x` are sampled.
    pub fn default_samples(&self) -> Vec<Point> {
        match self {
            SystemModel::Finite(f) => (0..f.len()).map(Point::finite).collect(),
            SystemModel::Shift(s) => (0..s.alphabet() as u8)
                .filter_map(|a| s.point_starting_with(a))
                .map(Point::Symbolic)
                .collect(),
            SystemModel::Piecewise(p) => {
                let mut pts: Vec<f64> = (0..8).map(|i| i as f64 / 8.0).collect();
                pts.extend(p.endpoints());
                pts.retain(|&x| p.contains(x));
                pts.sort_by(f64::total_cmp);
                pts.dedup_by(|a, b| a.to_bits() == b.to_bits());
                pts.into_iter().map(Point::real).collect()
            }
            SystemModel::Product(a, b) => {
                let sb = b.default_samples();
                a.default_samples()
                    .into_iter()
                    .flat_map(|x| sb.iter().map(move |y| Point::pair(x.clone(), y.clone())))
                    .collect()
            }
            SystemModel::Power { base, .. } => base.default_samples(),
            SystemModel::Restriction { base, subset } => match subset {
                Restricted::SubShift(sub) => SystemModel::Shift(sub.clone()).default_samples(),
                _ => base
                    .default_samples()
                    .into_iter()
                    .filter(|x| self.contains(x))
                    .collect(),
            },
        }
    }

    /// Upper bound on `|T^{-k}(x)|` computed without enumerating, saturating
    /// at `u128::MAX`.
    pub fn preimage_count_bound(&self, x: &Point, k: usize) -> u128 {
        match (self, x) {
            (SystemModel::Finite(f), Point::Finite { index }) => {
                let mut level = vec![*index];
                for _ in 0..k {
                    level = level.iter().flat_map(|&i| f.preimages_once(i)).collect();
                }
                level.len() as u128
            }
            (SystemModel::Shift(s), Point::Symbolic(p)) => shift_word_count(s, p.first(), k),
            (SystemModel::Piecewise(p), _) => {
                (p.branches().len() as u128).saturating_pow(k.min(u32::MAX as usize) as u32)
            }
            (SystemModel::Product(a, b), Point::Pair { first, second }) => a
                .preimage_count_bound(first, k)
                .saturating_mul(b.preimage_count_bound(second, k)),
            (SystemModel::Power { base, exponent }, _) => {
                base.preimage_count_bound(x, k.saturating_mul(*exponent))
            }
            (SystemModel::Restriction { base, subset }, _) => match (subset, x) {
                (Restricted::SubShift(sub), Point::Symbolic(p)) => {
                    shift_word_count(sub, p.first(), k)
                }
                _ => base.preimage_count_bound(x, k),
            },
            _ => 0,
        }
    }

    /// A finite sample of the whole space that is `ε/2`-dense in `d_{T,n}`,
    /// or `None` when it would exceed `cap` points.
    pub fn space_sample(&self, n: usize, eps: Dyadic, cap: usize) -> Option<Vec<Point>> {
        self.space_sample_windows(n.saturating_sub(1), eps, cap)
    }

    // `last` is the largest window offset in base steps
    fn space_sample_windows(&self, last: usize, eps: Dyadic, cap: usize) -> Option<Vec<Point>> {
        match self {
            SystemModel::Finite(f) => Some((0..f.len()).map(Point::finite).collect()),
            SystemModel::Shift(s) => shift_cylinder_sample(s, last, eps, cap),
            SystemModel::Piecewise(p) => {
                // a grid of spacing h is (lip^last * h / 2)-dense
                let lip = p.lipschitz().max(1.0);
                let spacing = eps.value() / lip.powi(last as i32);
                let count = (1.0 / spacing).ceil();
                if !(count <= cap as f64) {
                    return None;
                }
                let count = count as usize;
                let pts: Vec<Point> = (0..=count)
                    .map(|i| i as f64 / count as f64)
                    .filter(|&x| p.contains(x))
                    .map(Point::real)
                    .collect();
                Some(pts)
            }
            SystemModel::Product(a, b) => {
                let sa = a.space_sample_windows(last, eps, cap)?;
                let sb = b.space_sample_windows(last, eps, cap)?;
                if sa.len().saturating_mul(sb.len()) > cap {
                    return None;
                }
                Some(
                    sa.iter()
                        .flat_map(|x| sb.iter().map(move |y| Point::pair(x.clone(), y.clone())))
                        .collect(),
                )
            }
            SystemModel::Power { base, exponent } => {
                base.space_sample_windows(last * exponent, eps, cap)
            }
            SystemModel::Restriction { base, subset } => match subset {
                Restricted::SubShift(sub) => shift_cylinder_sample(sub, last, eps, cap),
                _ => Some(
                    base.space_sample_windows(last, eps, cap)?
                        .into_iter()
                        .filter(|x| self.contains(x))
                        .collect(),
                ),
            },
        }
    }
}

/// Number of admissible words `w` of length `k` with `w_{k-1} → first`.
fn shift_word_count(s: &ShiftSft, first: u8, k: usize) -> u128 {
    let m = s.alphabet();
    let mut counts = vec![0u128; m];
    counts[first as usize] = 1;
    for _ in 0..k {
        let mut next = vec![0u128; m];
        for a in 0..m {
            for b in 0..m {
                if s.allowed(a as u8, b as u8) {
                    next[a] = next[a].saturating_add(counts[b]);
                }
            }
        }
        counts = next;
    }
    counts
        .into_iter()
        .fold(0u128, |acc, c| acc.saturating_add(c))
}

/// One admissible point per cylinder of length `last + c + 2` with
/// `c = ceil(log2(1/ε))`. Two sequences sharing that cylinder agree on the
/// first `c + 2` symbols of every window, so their Bowen distance is at most
/// `2^-(c+1) ≤ ε/2`.
fn shift_cylinder_sample(s: &ShiftSft, last: usize, eps: Dyadic, cap: usize) -> Option<Vec<Point>> {
    let len = last + eps.ceil_log2_inverse() + 2;
    let total = (0..s.alphabet() as u8)
        .map(|a| shift_word_count(s, a, len.saturating_sub(1)))
        .fold(0u128, |acc, c| acc.saturating_add(c));
    if total > cap as u128 {
        return None;
    }
    let tails: Vec<Option<SymbolicPoint>> = (0..s.alphabet() as u8)
        .map(|a| s.point_starting_with(a))
        .collect();
    let mut out = Vec::new();
    for w in s.words(len) {
        let last_symbol = *w.last().expect("nonempty word");
        if let Some(tail) = &tails[last_symbol as usize] {
            out.push(Point::Symbolic(tail.prepend(&w[..w.len() - 1])));
        }
    }
    Some(out)
}

// first occurrence wins; real points end up sorted by coordinate
fn dedup(points: Vec<Point>) -> Vec<Point> {
    let mut seen = HashSet::with_capacity(points.len());
    let mut out: Vec<Point> = points
        .into_iter()
        .filter(|p| seen.insert(p.clone()))
        .collect();
    if out.iter().all(|p| matches!(p, Point::Real { .. })) {
        out.sort_by(|a, b| match (a, b) {
            (Point::Real { x: a }, Point::Real { x: b }) => a.total_cmp(b),
            _ => std::cmp::Ordering::Equal,
        });
    }
    out
}
