//! The adjoint braid arrangement: special hyperplanes, chambers and their
//! exact witnesses, and the on-disk chamber cache.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::functional::{steinmann_relations, SteinmannRelation};
use crate::error::{Error, Result};
use crate::labels::LabelSet;
use crate::preposet::{AdjointFamily, TwoBlock};
use crate::ratgeom::{feasible, LinearSystem, Point, Relation};
use crate::rational::{format, int, parse, Rational};

/// Cache format version; bump to invalidate files on disk.
pub const CACHE_FORMAT: u32 = 1;

/// Default bound on the size of grounds whose chambers are enumerated.
pub const DEFAULT_MAX_N: usize = 6;

/// Largest ground the `u64` sign vectors can hold.
pub const HARD_MAX_N: usize = 7;

/// Special hyperplanes of `ground` in canonical order: proper subsets `S`
/// containing the lowest label, ordered by their sorted label lists.
pub fn hyperplanes(ground: LabelSet) -> Vec<LabelSet> {
    let Some(i0) = ground.lowest() else { return Vec::new() };
    let mut hs: Vec<LabelSet> = ground.subsets().filter(|&s| s.contains(i0) && s != ground).collect();
    hs.sort_by_key(|s| s.iter().collect::<Vec<_>>());
    hs
}

/// Sign string, `'+'` where bit `k` is set.
pub fn sign_string(signs: u64, len: usize) -> String {
    (0..len).map(|k| if signs >> k & 1 == 1 { '+' } else { '-' }).collect()
}

pub fn parse_signs(s: &str, len: usize) -> Result<u64> {
    if s.chars().count() != len {
        return Err(Error::UnknownChamber(format!("{s:?} should have {len} signs")));
    }
    let mut v = 0u64;
    for (k, c) in s.chars().enumerate() {
        match c {
            '+' => v |= 1 << k,
            '-' => {}
            _ => return Err(Error::UnknownChamber(format!("{s:?} contains {c:?}"))),
        }
    }
    Ok(v)
}

/// Strict sign vector of a generic coweight; `None` if it lies on a
/// hyperplane.
pub fn signs_of(h: &Point, hyperplanes: &[LabelSet]) -> Option<u64> {
    let mut v = 0u64;
    for (k, &u) in hyperplanes.iter().enumerate() {
        let x = h.sum_over(u);
        if x.is_zero() {
            return None;
        }
        if x.is_positive() {
            v |= 1 << k;
        }
    }
    Some(v)
}

/// An adjoint chamber: its sign vector and an exact interior point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chamber {
    signs: u64,
    witness: Point,
}

impl Chamber {
    pub fn signs(&self) -> u64 {
        self.signs
    }

    pub fn witness(&self) -> &Point {
        &self.witness
    }

    /// Whether hyperplane `k` has the chamber on its positive side.
    pub fn positive(&self, k: usize) -> bool {
        self.signs >> k & 1 == 1
    }
}

/// Positive sides `(S,T)` with `⟨h, λ_S⟩ > 0`, in hyperplane order.
pub fn signature_blocks(ground: LabelSet, hyperplanes: &[LabelSet], signs: u64) -> Vec<TwoBlock> {
    hyperplanes
        .iter()
        .enumerate()
        .map(|(k, &u)| {
            let (s, t) = if signs >> k & 1 == 1 { (u, ground - u) } else { (ground - u, u) };
            TwoBlock::new(s, t).expect("proper split")
        })
        .collect()
}

/// System of the face with the given strict signs on `strict` hyperplanes and
/// `h` vanishing on the `zero` ones.
pub(crate) fn face_system(ground: LabelSet, hyperplanes: &[LabelSet], signs: u64, zero: &[usize]) -> LinearSystem {
    let n = ground.len();
    let labels: Vec<usize> = ground.iter().collect();
    let mut sys = LinearSystem::new(n);
    sys.add(vec![int(1); n], Relation::Eq, int(0)).expect("dimension");
    for (k, &u) in hyperplanes.iter().enumerate() {
        let row: Vec<Rational> = labels.iter().map(|&i| int(u.contains(i) as i64)).collect();
        if zero.contains(&k) {
            sys.add(row, Relation::Eq, int(0)).expect("dimension");
        } else {
            let row = if signs >> k & 1 == 1 { row } else { row.into_iter().map(|x| -x).collect() };
            sys.add(row, Relation::Gt, int(0)).expect("dimension");
        }
    }
    sys
}

/// The chambers of one ground, sorted by sign string.
#[derive(Debug)]
pub struct Arrangement {
    ground: LabelSet,
    hyperplanes: Vec<LabelSet>,
    chambers: Vec<Chamber>,
    index: HashMap<u64, usize>,
}

impl Arrangement {
    fn from_chambers(ground: LabelSet, mut chambers: Vec<Chamber>) -> Self {
        let hyperplanes = hyperplanes(ground);
        let len = hyperplanes.len();
        chambers.sort_by_cached_key(|c| sign_string(c.signs, len));
        let index = chambers.iter().enumerate().map(|(k, c)| (c.signs, k)).collect();
        Arrangement { ground, hyperplanes, chambers, index }
    }

    /// Enumerates all chambers by wall-crossing from the generic seed point.
    pub fn enumerate(ground: LabelSet) -> Result<Self> {
        if ground.len() > HARD_MAX_N {
            return Err(Error::ResourceLimit { n: ground.len(), max: HARD_MAX_N });
        }
        let hs = hyperplanes(ground);
        let seed = Point::generic_coweight(ground, 0);
        let start = signs_of(&seed, &hs).expect("seed point is generic");
        let mut found: HashMap<u64, Chamber> = HashMap::new();
        let mut rejected: HashSet<u64> = HashSet::new();
        let first = chamber_for(ground, &hs, start).expect("seed chamber is realizable");
        found.insert(start, first);
        let mut queue = VecDeque::from([start]);
        while let Some(signs) = queue.pop_front() {
            for k in 0..hs.len() {
                let flipped = signs ^ (1 << k);
                if found.contains_key(&flipped) || rejected.contains(&flipped) {
                    continue;
                }
                if !is_pre_adjoint_signs(ground, &hs, flipped) {
                    rejected.insert(flipped);
                    continue;
                }
                match chamber_for(ground, &hs, flipped) {
                    Some(c) => {
                        found.insert(flipped, c);
                        queue.push_back(flipped);
                    }
                    None => {
                        rejected.insert(flipped);
                    }
                }
            }
        }
        Ok(Arrangement::from_chambers(ground, found.into_values().collect()))
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn hyperplanes(&self) -> &[LabelSet] {
        &self.hyperplanes
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn chamber(&self, id: usize) -> &Chamber {
        &self.chambers[id]
    }

    pub fn id_of(&self, signs: u64) -> Option<usize> {
        self.index.get(&signs).copied()
    }

    pub fn sign_string(&self, id: usize) -> String {
        sign_string(self.chambers[id].signs, self.hyperplanes.len())
    }

    /// Looks a chamber up by its sign string.
    pub fn find(&self, signs: &str) -> Result<usize> {
        let v = parse_signs(signs, self.hyperplanes.len())?;
        self.id_of(v).ok_or_else(|| Error::UnknownChamber(format!("{signs:?} is not a chamber")))
    }

    /// The chamber containing a generic coweight.
    pub fn locate(&self, h: &Point) -> Result<usize> {
        if h.ground() != self.ground {
            return Err(Error::GroundMismatch(h.ground(), self.ground));
        }
        let v = signs_of(h, &self.hyperplanes)
            .ok_or_else(|| Error::InvalidPoint("point lies on a special hyperplane".into()))?;
        self.id_of(v).ok_or_else(|| Error::UnknownChamber(sign_string(v, self.hyperplanes.len())))
    }

    /// Index of the hyperplane of the split `{S, I∖S}`.
    pub fn hyperplane_of(&self, s: LabelSet) -> Option<usize> {
        let i0 = self.ground.lowest()?;
        let u = if s.contains(i0) { s } else { self.ground - s };
        self.hyperplanes.iter().position(|&h| h == u)
    }

    /// The adjoint signature of a chamber.
    pub fn signature(&self, id: usize) -> AdjointFamily {
        let blocks = signature_blocks(self.ground, &self.hyperplanes, self.chambers[id].signs);
        AdjointFamily::new(self.ground, blocks).expect("blocks over the ground")
    }

    pub fn signature_blocks(&self, id: usize) -> Vec<TwoBlock> {
        signature_blocks(self.ground, &self.hyperplanes, self.chambers[id].signs)
    }

    /// The same arrangement over another ground of the same size, through the
    /// monotone bijection; hyperplane order is preserved.
    pub fn transport(&self, ground: LabelSet) -> Result<Arrangement> {
        if ground.len() != self.ground.len() {
            return Err(Error::Dimension { expected: self.ground.len(), got: ground.len() });
        }
        let chambers = self
            .chambers
            .iter()
            .map(|c| Chamber { signs: c.signs, witness: Point::new(ground, c.witness.coords().to_vec()).unwrap() })
            .collect();
        Ok(Arrangement::from_chambers(ground, chambers))
    }
}

/// Exact witness of the strict sign vector, or `None` if unrealizable.
fn chamber_for(ground: LabelSet, hs: &[LabelSet], signs: u64) -> Option<Chamber> {
    let sys = face_system(ground, hs, signs, &[]);
    let x = feasible(&sys).point()?;
    Some(Chamber { signs, witness: Point::new(ground, x).expect("dimension") })
}

/// Whether the positive sides of `signs` are closed under the partial
/// product. Every chamber signature is; most non-walls fail it.
fn is_pre_adjoint_signs(ground: LabelSet, hs: &[LabelSet], signs: u64) -> bool {
    let positive: HashSet<LabelSet> =
        hs.iter().enumerate().map(|(k, &u)| if signs >> k & 1 == 1 { u } else { ground - u }).collect();
    // λ_A + λ_C = λ_{A∪C} for disjoint A, C, and ≡ λ_{A∩C} when A ∪ C = I.
    for &a in &positive {
        for &c in &positive {
            if a.is_disjoint(c) && (a | c) != ground && !positive.contains(&(a | c)) {
                return false;
            }
            if (a | c) == ground && !(a & c).is_empty() && !positive.contains(&(a & c)) {
                return false;
            }
        }
    }
    true
}

#[derive(Serialize, Deserialize)]
struct CacheHeader {
    format: u32,
    n: usize,
    hyperplanes: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    signs: String,
    witness: Vec<String>,
}

fn header_for(n: usize) -> CacheHeader {
    let hs = hyperplanes(LabelSet::first(n));
    CacheHeader { format: CACHE_FORMAT, n, hyperplanes: hs.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect() }
}

/// Path of the cache file for `n` labels.
pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("chambers-n{n}.jsonl"))
}

/// Writes the chambers of `LabelSet::first(n)` atomically.
pub fn write_cache(dir: &Path, arr: &Arrangement) -> Result<()> {
    let n = arr.ground.len();
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let w = tmp.as_file_mut();
        writeln!(w, "{}", serde_json::to_string(&header_for(n))?)?;
        for (id, c) in arr.chambers.iter().enumerate() {
            let line =
                CacheLine { signs: arr.sign_string(id), witness: c.witness.coords().iter().map(format).collect() };
            writeln!(w, "{}", serde_json::to_string(&line)?)?;
        }
        w.flush()?;
    }
    tmp.persist(cache_path(dir, n)).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

/// Reads a cache file, returning `None` if it is missing, stale or fails
/// validation.
pub fn read_cache(dir: &Path, n: usize) -> Option<Arrangement> {
    let file = fs::File::open(cache_path(dir, n)).ok()?;
    let mut lines = BufReader::new(file).lines();
    let header: CacheHeader = serde_json::from_str(&lines.next()?.ok()?).ok()?;
    let expect = header_for(n);
    if header.format != expect.format || header.n != n || header.hyperplanes != expect.hyperplanes {
        return None;
    }
    let ground = LabelSet::first(n);
    let hs = hyperplanes(ground);
    let mut chambers = Vec::new();
    let mut seen = HashSet::new();
    for line in lines {
        let line: CacheLine = serde_json::from_str(&line.ok()?).ok()?;
        let signs = parse_signs(&line.signs, hs.len()).ok()?;
        let coords: Vec<Rational> = line.witness.iter().map(|s| parse(s)).collect::<Result<_>>().ok()?;
        let witness = Point::new(ground, coords).ok()?;
        if !witness.is_coweight() || signs_of(&witness, &hs) != Some(signs) || !seen.insert(signs) {
            return None;
        }
        chambers.push(Chamber { signs, witness });
    }
    Some(Arrangement::from_chambers(ground, chambers))
}

/// Arrangements by ground, computed once and optionally persisted.
#[derive(Debug)]
pub struct Atlas {
    cache_dir: Option<PathBuf>,
    max_n: usize,
    standard: Mutex<HashMap<usize, Arc<Arrangement>>>,
    by_ground: Mutex<HashMap<LabelSet, Arc<Arrangement>>>,
    relations: Mutex<HashMap<usize, Arc<Vec<SteinmannRelation>>>>,
}

impl Default for Atlas {
    fn default() -> Self {
        Atlas::new(None, DEFAULT_MAX_N)
    }
}

impl Atlas {
    pub fn new(cache_dir: Option<PathBuf>, max_n: usize) -> Self {
        Atlas {
            cache_dir,
            max_n: max_n.min(HARD_MAX_N),
            standard: Mutex::new(HashMap::new()),
            by_ground: Mutex::new(HashMap::new()),
            relations: Mutex::new(HashMap::new()),
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    fn standard(&self, n: usize) -> Result<Arc<Arrangement>> {
        if n > self.max_n {
            return Err(Error::ResourceLimit { n, max: self.max_n });
        }
        if let Some(a) = self.standard.lock().unwrap().get(&n) {
            return Ok(a.clone());
        }
        let cached = self.cache_dir.as_deref().and_then(|d| read_cache(d, n));
        let arr = match cached {
            Some(a) => a,
            None => {
                let a = Arrangement::enumerate(LabelSet::first(n))?;
                if let Some(dir) = &self.cache_dir {
                    write_cache(dir, &a)?;
                }
                a
            }
        };
        let arr = Arc::new(arr);
        self.standard.lock().unwrap().insert(n, arr.clone());
        Ok(arr)
    }

    /// The arrangement over `ground`.
    pub fn arrangement(&self, ground: LabelSet) -> Result<Arc<Arrangement>> {
        if let Some(a) = self.by_ground.lock().unwrap().get(&ground) {
            return Ok(a.clone());
        }
        let n = ground.len();
        let std = self.standard(n)?;
        let arr = if ground == LabelSet::first(n) { std } else { Arc::new(std.transport(ground)?) };
        self.by_ground.lock().unwrap().insert(ground, arr.clone());
        Ok(arr)
    }

    /// The Steinmann relations over `ground`. Transport keeps chamber ids, so
    /// they are computed once per size.
    pub fn relations(&self, ground: LabelSet) -> Result<Arc<Vec<SteinmannRelation>>> {
        let n = ground.len();
        if let Some(r) = self.relations.lock().unwrap().get(&n) {
            return Ok(r.clone());
        }
        let rels = Arc::new(steinmann_relations(&*self.arrangement(LabelSet::first(n))?));
        self.relations.lock().unwrap().insert(n, rels.clone());
        Ok(rels)
    }
}
