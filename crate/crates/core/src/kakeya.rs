//! Point sets in `F_q^n`, the Kakeya and (δ,γ)-Kakeya verifiers, and set constructions.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::rational::{ceil_mul, check_unit_interval, Rational};
use crate::space::{Direction, LineRecord, Space};

/// A finite subset of `F_q^n`, stored as sorted point encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    space: Space,
    members: Vec<u64>,
}

impl PointSet {
    /// Builds a set from encodings; duplicates are merged.
    pub fn from_encodings(space: &Space, mut members: Vec<u64>) -> Result<Self> {
        if let Some(&c) = members.iter().find(|&&c| c >= space.size()) {
            return Err(Error::usage(format!("encoding {c} outside F_q^n")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(PointSet {
            space: space.clone(),
            members,
        })
    }

    pub fn from_points<P: AsRef<[FieldElement]>>(
        spec: &FieldSpec,
        n: usize,
        points: impl IntoIterator<Item = P>,
    ) -> Result<Self> {
        let space = Space::new(spec, n)?;
        let codes = points
            .into_iter()
            .map(|p| space.try_encode(p.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_encodings(&space, codes)
    }

    /// Convenience constructor from raw coordinate values.
    pub fn from_values(spec: &FieldSpec, n: usize, points: &[Vec<u32>]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|p| p.iter().map(|&v| spec.element(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(spec, n, pts)
    }

    pub fn empty(spec: &FieldSpec, n: usize) -> Result<Self> {
        Ok(PointSet {
            space: Space::new(spec, n)?,
            members: Vec::new(),
        })
    }

    pub fn full(spec: &FieldSpec, n: usize) -> Result<Self> {
        let space = Space::new(spec, n)?;
        let members = (0..space.size()).collect();
        Ok(PointSet { space, members })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn spec(&self) -> &FieldSpec {
        self.space.spec()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted encodings.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, code: u64) -> bool {
        self.members.binary_search(&code).is_ok()
    }

    pub fn contains_point(&self, p: &[FieldElement]) -> bool {
        p.len() == self.dim() && self.contains(self.space.encode(p))
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
        self.members.iter().map(|&c| self.space.decode(c))
    }

    pub fn point_values(&self) -> Vec<Vec<u32>> {
        self.members.iter().map(|&c| self.space.decode_values(c)).collect()
    }

    /// Number of members on each line of the parallel class of `dir`, keyed by
    /// the transversal base encoding. Lines missing from the map meet the set nowhere.
    fn line_counts(&self, dir: &Direction) -> HashMap<u64, u32> {
        let mut counts = HashMap::new();
        for p in self.points() {
            let base = self.space.line_base(&p, dir);
            *counts.entry(self.space.encode(&base)).or_insert(0) += 1;
        }
        counts
    }

    /// Largest `|L ∩ K|` over lines `L` in direction `dir`, with the smallest
    /// base encoding achieving it.
    fn best_line(&self, dir: &Direction) -> (u64, u32) {
        let counts = self.line_counts(dir);
        let fallback = self.space.encode(&self.space.transversal_point(dir, 0));
        counts
            .into_iter()
            .fold((fallback, 0), |(bb, bc), (b, c)| {
                if c > bc || (c == bc && b < bb) {
                    (b, c)
                } else {
                    (bb, bc)
                }
            })
    }
}

/// Dense membership bitmap over `[0, q^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Bitmap {
    words: Vec<u64>,
}

impl Bitmap {
    pub fn new(size: u64) -> Self {
        Bitmap {
            words: vec![0; size.div_ceil(64) as usize],
        }
    }

    #[inline]
    pub fn contains(&self, c: u64) -> bool {
        self.words[(c / 64) as usize] >> (c % 64) & 1 == 1
    }

    /// Returns true if `c` was newly inserted.
    #[inline]
    pub fn insert(&mut self, c: u64) -> bool {
        let w = &mut self.words[(c / 64) as usize];
        let bit = 1u64 << (c % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i as u64 * 64 + b)
        })
    }
}

/// Outcome of [`is_kakeya`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KakeyaReport {
    pub is_kakeya: bool,
    /// One contained line per canonical direction that has one, in canonical order.
    pub witnesses: Vec<LineRecord>,
    /// The first canonical direction without a contained line.
    pub failing_direction: Option<Vec<u32>>,
}

/// Checks that `k` contains a full line in every canonical direction.
/// The zero direction is not considered: its "line" is a single point.
pub fn is_kakeya(k: &PointSet) -> KakeyaReport {
    let sp = k.space();
    let q = sp.spec().order();
    let dirs = sp.canonical_directions();
    let found: Vec<Option<u64>> = dirs
        .par_iter()
        .map(|d| {
            k.line_counts(d)
                .into_iter()
                .filter(|&(_, c)| c == q)
                .map(|(b, _)| b)
                .min()
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut failing_direction = None;
    for (d, base) in dirs.iter().zip(found) {
        match base {
            Some(b) => witnesses.push(LineRecord {
                direction: d.values(),
                base: sp.decode_values(b),
            }),
            None if failing_direction.is_none() => failing_direction = Some(d.values()),
            None => {}
        }
    }
    KakeyaReport {
        is_kakeya: failing_direction.is_none(),
        witnesses,
        failing_direction,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub direction: Vec<u32>,
    /// Transversal base of a line achieving `count`, smallest encoding on ties.
    pub base: Vec<u32>,
    /// `max |L ∩ K|` over lines `L` in this direction.
    pub count: u32,
}

/// Per-direction maximum line intersections, in canonical direction order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionProfile {
    pub entries: Vec<ProfileEntry>,
}

impl DirectionProfile {
    /// `m(x)` for any nonzero vector `x`, via its canonical representative.
    pub fn count_for(&self, spec: &FieldSpec, x: &[FieldElement]) -> Result<u32> {
        let d = Direction::canonicalize(spec, x)?.values();
        self.entries
            .iter()
            .find(|e| e.direction == d)
            .map(|e| e.count)
            .ok_or_else(|| Error::usage("direction not in profile"))
    }
}

pub fn direction_profile(k: &PointSet) -> DirectionProfile {
    let sp = k.space();
    let entries = sp
        .canonical_directions()
        .par_iter()
        .map(|d| {
            let (base, count) = k.best_line(d);
            ProfileEntry {
                direction: d.values(),
                base: sp.decode_values(base),
                count,
            }
        })
        .collect();
    DirectionProfile { entries }
}

/// Outcome of [`check_delta_gamma`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaGammaReport {
    pub holds: bool,
    /// `ceil(γ q)`: the intersection size a line must reach.
    pub threshold: u32,
    /// Canonical directions whose best line reaches the threshold.
    pub qualifying_directions: u64,
    /// Nonzero vectors counted individually (`(q - 1)` per qualifying direction),
    /// plus the zero vector when it qualifies.
    pub qualifying_vectors: u64,
    pub zero_vector_qualifies: bool,
    /// `δ q^n`, the number of vectors required.
    pub required: String,
    /// `(q^n - 1) / q^n`: the largest δ any set can satisfy at thresholds above 1.
    pub delta_max: String,
    /// First canonical direction below the threshold, if any.
    pub failing_direction: Option<Vec<u32>>,
    pub profile: DirectionProfile,
}

/// Decides whether `k` is (δ,γ)-Kakeya, counting direction vectors (not
/// projective classes) toward `δ q^n`.
pub fn check_delta_gamma(k: &PointSet, delta: Rational, gamma: Rational) -> Result<DeltaGammaReport> {
    check_unit_interval("delta", delta)?;
    check_unit_interval("gamma", gamma)?;
    let sp = k.space();
    let q = sp.spec().order() as u64;
    let threshold = ceil_mul(gamma, q) as u32;
    let profile = direction_profile(k);
    let qualifying_directions = profile.entries.iter().filter(|e| e.count >= threshold).count() as u64;
    let failing_direction = profile
        .entries
        .iter()
        .find(|e| e.count < threshold)
        .map(|e| e.direction.clone());
    // the zero vector's line is the single point y
    let zero_vector_qualifies = !k.is_empty() && threshold <= 1;
    let qualifying_vectors = qualifying_directions * (q - 1) + zero_vector_qualifies as u64;
    let required = delta * Rational::from_integer(sp.size());
    Ok(DeltaGammaReport {
        holds: Rational::from_integer(qualifying_vectors) >= required,
        threshold,
        qualifying_directions,
        qualifying_vectors,
        zero_vector_qualifies,
        required: required.to_string(),
        delta_max: Rational::new(sp.size() - 1, sp.size()).to_string(),
        failing_direction,
        profile,
    })
}

/// `{c x : x ∈ K, c ∈ F}`.
pub fn cone_closure(k: &PointSet) -> PointSet {
    let sp = k.space();
    let mut out = Vec::with_capacity(k.len() * sp.spec().order() as usize);
    for p in k.points() {
        for c in sp.spec().elements() {
            out.push(sp.encode(&sp.scale(c, &p)));
        }
    }
    PointSet::from_encodings(sp, out).expect("scalar multiples stay in the space")
}

/// Default cap on `|K|^r * (n r)` for [`product_set`].
pub const DEFAULT_PRODUCT_LIMIT: u64 = 1 << 24;

/// The Cartesian power `K^r ⊂ F_q^{n r}`.
pub fn product_set(k: &PointSet, r: usize, limit: u64) -> Result<PointSet> {
    if r == 0 {
        return Err(Error::usage("product power must be at least 1"));
    }
    let n = k.dim();
    (k.len() as u64)
        .checked_pow(r as u32)
        .and_then(|s| s.checked_mul((n * r) as u64))
        .filter(|&w| w <= limit)
        .ok_or_else(|| {
            Error::Resource(format!(
                "|K|^r * n r for |K| = {}, r = {r}, n = {n} exceeds {limit}",
                k.len()
            ))
        })?;
    let big = Space::new(k.spec(), n * r)?;
    let shift = k.space().size();
    let mut codes = vec![0u64];
    for _ in 0..r {
        codes = codes
            .iter()
            .flat_map(|&prefix| k.members().iter().map(move |&c| prefix * shift + c))
            .collect();
    }
    PointSet::from_encodings(&big, codes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Full,
    GreedyLines,
    UnionRandomLines,
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Construction::Full),
            "greedy" | "greedy_lines" | "greedy-lines" => Ok(Construction::GreedyLines),
            "random" | "union_random_lines" | "union-random-lines" => Ok(Construction::UnionRandomLines),
            _ => Err(Error::usage(format!("unknown construction {s:?}"))),
        }
    }
}

pub fn construct(kind: Construction, spec: &FieldSpec, n: usize, seed: u64) -> Result<PointSet> {
    let sp = Space::new(spec, n)?;
    match kind {
        Construction::Full => PointSet::full(spec, n),
        Construction::GreedyLines => {
            let dirs = sp.canonical_directions();
            let order: Vec<usize> = (0..dirs.len()).collect();
            Ok(greedy_lines(&sp, &dirs, &order).0)
        }
        Construction::UnionRandomLines => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut codes = Vec::new();
            for d in sp.canonical_directions() {
                let base = sp.transversal_point(&d, rng.gen_range(0..sp.transversal_len()));
                codes.extend(sp.line(&base, d.coords()));
            }
            PointSet::from_encodings(&sp, codes)
        }
    }
}

/// Adds one line per direction, visiting `dirs` in `order`, each time taking
/// the line that adds the fewest new points (smallest base encoding on ties).
pub(crate) fn greedy_lines(sp: &Space, dirs: &[Direction], order: &[usize]) -> (PointSet, Vec<LineRecord>) {
    let mut have = Bitmap::new(sp.size());
    let mut chosen = Vec::with_capacity(order.len());
    for &i in order {
        let d = &dirs[i];
        let mut best: Option<(usize, Vec<u64>, Vec<FieldElement>)> = None;
        for t in 0..sp.transversal_len() {
            let base = sp.transversal_point(d, t);
            let line = sp.line(&base, d.coords());
            let fresh = line.iter().filter(|&&c| !have.contains(c)).count();
            if best.as_ref().is_none_or(|(bf, _, _)| fresh < *bf) {
                best = Some((fresh, line, base));
                if fresh == 0 {
                    break;
                }
            }
        }
        let (_, line, base) = best.expect("every direction has at least one line");
        for c in line {
            have.insert(c);
        }
        chosen.push(LineRecord {
            direction: d.values(),
            base: base.iter().map(|c| c.value()).collect(),
        });
    }
    let set = PointSet::from_encodings(sp, have.iter().collect()).expect("codes below q^n");
    (set, chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(s: &str) -> FieldSpec {
        FieldSpec::parse(s).unwrap()
    }

    fn set(s: &str, n: usize, pts: &[&[u32]]) -> PointSet {
        let v: Vec<Vec<u32>> = pts.iter().map(|p| p.to_vec()).collect();
        PointSet::from_values(&gf(s), n, &v).unwrap()
    }

    /// Oracle: enumerate every (base, direction) pair over all of F^n and test containment.
    fn brute_force_kakeya(k: &PointSet) -> bool {
        let sp = k.space();
        sp.canonical_directions().iter().all(|d| {
            sp.points()
                .any(|y| sp.line(&y, d.coords()).iter().all(|&c| k.contains(c)))
        })
    }

    fn brute_force_max(k: &PointSet, x: &[FieldElement]) -> u32 {
        let sp = k.space();
        sp.points()
            .map(|y| sp.line(&y, x).iter().filter(|&&c| k.contains(c)).count() as u32)
            .max()
            .unwrap()
    }

    #[test]
    fn kakeya_examples() {
        assert!(is_kakeya(&PointSet::full(&gf("3"), 2).unwrap()).is_kakeya);
        let k = set("2", 2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let r = is_kakeya(&k);
        assert!(r.is_kakeya);
        assert_eq!(r.witnesses.len(), 3);
        assert!(brute_force_kakeya(&k));
        let single = set("3", 2, &[&[0, 0]]);
        let r = is_kakeya(&single);
        assert!(!r.is_kakeya);
        assert_eq!(r.failing_direction, Some(vec![0, 1]));
    }

    #[test]
    fn kakeya_matches_brute_force() {
        let f = gf("3");
        let sp = Space::new(&f, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let codes: Vec<u64> = (0..sp.size()).filter(|_| rng.gen_bool(0.7)).collect();
            let k = PointSet::from_encodings(&sp, codes).unwrap();
            assert_eq!(is_kakeya(&k).is_kakeya, brute_force_kakeya(&k));
        }
    }

    #[test]
    fn profile_examples() {
        let f = gf("3");
        let p = direction_profile(&PointSet::full(&f, 2).unwrap());
        assert!(p.entries.iter().all(|e| e.count == 3));
        let line = set("3", 2, &[&[0, 0], &[1, 0], &[2, 0]]);
        let p = direction_profile(&line);
        for e in &p.entries {
            let expect = if e.direction == vec![1, 0] { 3 } else { 1 };
            assert_eq!(e.count, expect, "{:?}", e.direction);
        }
        let p = direction_profile(&PointSet::empty(&f, 2).unwrap());
        assert!(p.entries.iter().all(|e| e.count == 0));
    }

    #[test]
    fn profile_is_scalar_invariant() {
        for s in ["2", "3", "5", "2^2 mod=1,1,1"] {
            let f = gf(s);
            let sp = Space::new(&f, 2).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..10 {
                let codes: Vec<u64> = (0..sp.size()).filter(|_| rng.gen_bool(0.4)).collect();
                let k = PointSet::from_encodings(&sp, codes).unwrap();
                let prof = direction_profile(&k);
                for x in sp.points().filter(|x| x.iter().any(|c| !c.is_zero())) {
                    let m = brute_force_max(&k, &x);
                    assert_eq!(prof.count_for(&f, &x).unwrap(), m);
                    for c in f.nonzero_elements() {
                        assert_eq!(brute_force_max(&k, &sp.scale(c, &x)), m);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_gamma_examples() {
        let f = gf("3");
        let full = PointSet::full(&f, 2).unwrap();
        let r = check_delta_gamma(&full, Rational::new(8, 9), Rational::from_integer(1)).unwrap();
        assert!(r.holds);
        assert_eq!(r.qualifying_vectors, 8);
        let r = check_delta_gamma(&full, Rational::from_integer(1), Rational::from_integer(1)).unwrap();
        assert!(!r.holds);
        assert_eq!(r.delta_max, "8/9");
        let empty = PointSet::empty(&f, 2).unwrap();
        let r = check_delta_gamma(&empty, Rational::new(1, 9), Rational::new(1, 3)).unwrap();
        assert!(!r.holds);
        assert!(check_delta_gamma(&full, Rational::new(0, 1), Rational::new(1, 2)).is_err());
    }

    #[test]
    fn zero_vector_counts_only_at_threshold_one() {
        let k = set("3", 2, &[&[1, 2]]);
        let r = check_delta_gamma(&k, Rational::from_integer(1), Rational::new(1, 3)).unwrap();
        assert!(r.zero_vector_qualifies);
        assert_eq!(r.qualifying_vectors, 9);
        assert!(r.holds);
    }

    #[test]
    fn kakeya_implies_delta_max_gamma_one() {
        for kind in [Construction::GreedyLines, Construction::UnionRandomLines, Construction::Full] {
            for (s, n) in [("2", 3), ("3", 2), ("5", 2), ("2^2 mod=1,1,1", 2)] {
                let f = gf(s);
                let k = construct(kind, &f, n, 3).unwrap();
                assert!(is_kakeya(&k).is_kakeya);
                let size = k.space().size();
                let r = check_delta_gamma(&k, Rational::new(size - 1, size), Rational::from_integer(1)).unwrap();
                assert!(r.holds);
            }
        }
    }

    #[test]
    fn cone_closure_examples() {
        let f = gf("3");
        let k = set("3", 2, &[&[1, 1]]);
        assert_eq!(cone_closure(&k).point_values(), vec![vec![0, 0], vec![1, 1], vec![2, 2]]);
        let z = set("3", 2, &[&[0, 0]]);
        assert_eq!(cone_closure(&z), z);
        let full = PointSet::full(&f, 2).unwrap();
        assert_eq!(cone_closure(&full), full);
        let k = set("5", 2, &[&[1, 3], &[2, 0], &[4, 4]]);
        let c = cone_closure(&k);
        assert_eq!(cone_closure(&c), c);
        assert!(c.len() <= 4 * k.len() + 1);
    }

    #[test]
    fn product_examples() {
        let k = set("2", 2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let k2 = product_set(&k, 2, DEFAULT_PRODUCT_LIMIT).unwrap();
        assert_eq!(k2.len(), 9);
        assert_eq!(k2.dim(), 4);
        assert!(is_kakeya(&k2).is_kakeya);
        assert_eq!(product_set(&k, 1, DEFAULT_PRODUCT_LIMIT).unwrap(), k);
        let g = construct(Construction::GreedyLines, &gf("3"), 2, 0).unwrap();
        assert!(is_kakeya(&product_set(&g, 2, DEFAULT_PRODUCT_LIMIT).unwrap()).is_kakeya);
        assert!(matches!(product_set(&k, 2, 10), Err(Error::Resource(_))));
        assert!(product_set(&k, 0, 10).is_err());
    }

    #[test]
    fn construction_examples() {
        let f = gf("2");
        assert_eq!(construct(Construction::Full, &f, 2, 0).unwrap().len(), 4);
        let g = construct(Construction::GreedyLines, &f, 2, 0).unwrap();
        assert!(g.len() <= 4);
        assert!(is_kakeya(&g).is_kakeya);
        let f5 = gf("5");
        let a = construct(Construction::UnionRandomLines, &f5, 2, 99).unwrap();
        let b = construct(Construction::UnionRandomLines, &f5, 2, 99).unwrap();
        assert_eq!(a, b);
        assert!(is_kakeya(&a).is_kakeya);
    }

    #[test]
    fn bitmap_basics() {
        let mut b = Bitmap::new(130);
        assert!(b.insert(129));
        assert!(!b.insert(129));
        assert!(b.insert(3));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![3, 129]);
    }
}
