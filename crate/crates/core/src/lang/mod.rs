//! Tile sets, strictly locally testable languages and tiling systems.
//!
//! Tiles are stored compiled: symbol ids (`0` is `#`, `i ≥ 1` is the
//! `i`-th alphabet symbol in canonical order) laid out row-major, one tile
//! per stride of `k²`, sorted lexicographically. Sorting makes every window
//! prefix a contiguous range, which the search engine narrows cell by cell.

mod count;
mod local;
mod search;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{Alphabet, GridError, Picture, Symbol};

pub use count::{count_language, BlockMonitor, SizeCount};
pub use local::slt_to_local;

/// Default search budget in backtracking nodes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("symbol {0:?} is not in the alphabet")]
    Alphabet(String),
    #[error("tile has size {rows}x{cols}, expected {k}x{k}")]
    TileShape { rows: usize, cols: usize, k: usize },
    #[error("the all-# tile is not allowed")]
    BorderTile,
    #[error("tile size must be at least 2, got {0}")]
    TileSize(usize),
    #[error("alphabet of {0} symbols exceeds the compiled id range")]
    TooManySymbols(usize),
    #[error("no pictures given")]
    EmptyInput,
    #[error("projection is not total: {0}")]
    Projection(String),
    #[error("search budget of {budget} nodes exhausted at size {rows}x{cols}")]
    Budget { budget: u64, rows: usize, cols: usize },
}

/// Converts a symbol to its compiled id.
pub(crate) fn symbol_id(alphabet: &Alphabet, s: &Symbol) -> Option<u16> {
    if s.is_border() {
        Some(0)
    } else {
        alphabet.index_of(s).map(|i| i as u16 + 1)
    }
}

pub(crate) fn id_symbol(alphabet: &Alphabet, id: u16) -> Symbol {
    if id == 0 {
        Symbol::border()
    } else {
        alphabet.symbols()[id as usize - 1].clone()
    }
}

pub(crate) fn picture_ids(alphabet: &Alphabet, p: &Picture) -> Result<Vec<u16>, LangError> {
    p.cells().iter().map(|s| symbol_id(alphabet, s).ok_or_else(|| LangError::Alphabet(s.to_string()))).collect()
}

pub(crate) fn ids_picture(alphabet: &Alphabet, rows: usize, cols: usize, ids: &[u16]) -> Picture {
    let cells = ids.iter().map(|&i| id_symbol(alphabet, i)).collect();
    Picture::new(rows, cols, cells).expect("id buffer matches size")
}

/// A finite set of `k×k` tiles over `alphabet ∪ {#}`.
#[derive(Clone, PartialEq, Eq)]
pub struct TileSet {
    k: usize,
    alphabet: Alphabet,
    data: Vec<u16>,
}

impl std::fmt::Debug for TileSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TileSet(k={}, |alphabet|={}, {} tiles)", self.k, self.alphabet.len(), self.len())
    }
}

impl TileSet {
    pub fn new<I: IntoIterator<Item = Picture>>(k: usize, alphabet: Alphabet, tiles: I) -> Result<TileSet, LangError> {
        if k < 2 {
            return Err(LangError::TileSize(k));
        }
        if alphabet.len() >= u16::MAX as usize {
            return Err(LangError::TooManySymbols(alphabet.len()));
        }
        let mut data = Vec::new();
        for t in tiles {
            if t.size() != (k, k) {
                return Err(LangError::TileShape { rows: t.rows(), cols: t.cols(), k });
            }
            let ids = picture_ids(&alphabet, &t)?;
            if ids.iter().all(|&i| i == 0) {
                return Err(LangError::BorderTile);
            }
            data.extend_from_slice(&ids);
        }
        Ok(TileSet::from_raw(k, alphabet, data))
    }

    /// Builds from compiled windows; sorts, dedups and drops all-# windows.
    pub(crate) fn from_raw(k: usize, alphabet: Alphabet, data: Vec<u16>) -> TileSet {
        let kk = k * k;
        let mut rows: Vec<&[u16]> = data.chunks_exact(kk).filter(|t| t.iter().any(|&x| x != 0)).collect();
        rows.par_sort_unstable();
        rows.dedup();
        let data = rows.concat();
        TileSet { k, alphabet, data }
    }

    pub fn empty(k: usize, alphabet: Alphabet) -> TileSet {
        TileSet { k, alphabet, data: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.data.len() / (self.k * self.k)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.data
    }

    pub(crate) fn raw_tile(&self, t: usize) -> &[u16] {
        let kk = self.k * self.k;
        &self.data[t * kk..(t + 1) * kk]
    }

    pub(crate) fn contains_raw(&self, w: &[u16]) -> bool {
        let n = self.len();
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.raw_tile(mid).cmp(w) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn contains(&self, tile: &Picture) -> bool {
        tile.size() == (self.k, self.k)
            && picture_ids(&self.alphabet, tile).map(|w| self.contains_raw(&w)).unwrap_or(false)
    }

    /// Tiles in canonical order.
    pub fn tiles(&self) -> impl Iterator<Item = Picture> + '_ {
        (0..self.len()).map(move |t| ids_picture(&self.alphabet, self.k, self.k, self.raw_tile(t)))
    }

    /// The union with more tiles over the same alphabet.
    pub fn with_tiles<I: IntoIterator<Item = Picture>>(&self, more: I) -> Result<TileSet, LangError> {
        let extra = TileSet::new(self.k, self.alphabet.clone(), more)?;
        let mut data = self.data.clone();
        data.extend_from_slice(&extra.data);
        Ok(TileSet::from_raw(self.k, self.alphabet.clone(), data))
    }

    /// Keeps the tiles satisfying `keep`.
    pub fn filter<F: Fn(&Picture) -> bool>(&self, keep: F) -> TileSet {
        let kk = self.k * self.k;
        let mut data = Vec::new();
        for (t, p) in self.tiles().enumerate() {
            if keep(&p) {
                data.extend_from_slice(&self.data[t * kk..(t + 1) * kk]);
            }
        }
        TileSet { k: self.k, alphabet: self.alphabet.clone(), data }
    }

    /// Re-expresses the tiles over a larger alphabet.
    pub fn over_alphabet(&self, alphabet: Alphabet) -> Result<TileSet, LangError> {
        TileSet::new(self.k, alphabet, self.tiles())
    }
}

/// Whether every `k×k` window of the thick-bordered picture is a tile.
pub fn slt_member(p: &Picture, t: &TileSet) -> Result<bool, LangError> {
    if p.contains_border() {
        return Err(GridError::ReservedSymbol.into());
    }
    let ids = picture_ids(t.alphabet(), p)?;
    Ok(slt_member_ids(p.rows(), p.cols(), &ids, t))
}

pub(crate) fn slt_member_ids(m: usize, n: usize, ids: &[u16], t: &TileSet) -> bool {
    let k = t.k();
    let (rr, cc) = ((m + 2).max(k), (n + 2).max(k));
    let mut g = vec![0u16; rr * cc];
    for i in 0..m {
        g[(i + 1) * cc + 1..(i + 1) * cc + 1 + n].copy_from_slice(&ids[i * n..(i + 1) * n]);
    }
    let mut w = vec![0u16; k * k];
    for a in 0..=rr - k {
        for b in 0..=cc - k {
            for r in 0..k {
                w[r * k..(r + 1) * k].copy_from_slice(&g[(a + r) * cc + b..(a + r) * cc + b + k]);
            }
            if !t.contains_raw(&w) {
                return false;
            }
        }
    }
    true
}

/// The union of the `k`-tiles of the thick-bordered pictures.
pub fn tileset_from_pictures<'a, I>(ps: I, k: usize, alphabet: &Alphabet) -> Result<TileSet, LangError>
where
    I: IntoIterator<Item = &'a Picture>,
{
    let mut tiles = BTreeSet::new();
    let mut any = false;
    for p in ps {
        any = true;
        tiles.extend(p.thick_bordered(k)?.k_tiles(k));
    }
    if !any {
        return Err(LangError::EmptyInput);
    }
    TileSet::new(k, alphabet.clone(), tiles)
}

/// A tiling system `(Σ, Γ, T, π)`; `Γ` is the tile set's alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingSystem {
    terminal: Alphabet,
    tileset: TileSet,
    projection: BTreeMap<Symbol, Symbol>,
}

impl TilingSystem {
    pub fn new(
        terminal: Alphabet,
        tileset: TileSet,
        projection: BTreeMap<Symbol, Symbol>,
    ) -> Result<TilingSystem, LangError> {
        for g in tileset.alphabet().iter() {
            match projection.get(g) {
                None => return Err(LangError::Projection(format!("no image for {g}"))),
                Some(s) if !terminal.contains(s) => {
                    return Err(LangError::Projection(format!("{g} -> {s} leaves the terminal alphabet")))
                }
                _ => {}
            }
        }
        if let Some(extra) = projection.keys().find(|g| !tileset.alphabet().contains(g)) {
            return Err(LangError::Projection(format!("{extra} is not a local symbol")));
        }
        Ok(TilingSystem { terminal, tileset, projection })
    }

    /// The identity system recognizing `L(tileset)` itself.
    pub fn identity(tileset: TileSet) -> TilingSystem {
        let projection = tileset.alphabet().iter().map(|s| (s.clone(), s.clone())).collect();
        TilingSystem { terminal: tileset.alphabet().clone(), tileset, projection }
    }

    pub fn terminal(&self) -> &Alphabet {
        &self.terminal
    }

    pub fn local(&self) -> &Alphabet {
        self.tileset.alphabet()
    }

    pub fn tileset(&self) -> &TileSet {
        &self.tileset
    }

    pub fn k(&self) -> usize {
        self.tileset.k()
    }

    pub fn projection(&self) -> &BTreeMap<Symbol, Symbol> {
        &self.projection
    }

    /// Local symbols projecting to `s`, in canonical order.
    pub fn fiber(&self, s: &Symbol) -> Vec<Symbol> {
        self.local().iter().filter(|g| self.projection.get(*g) == Some(s)).cloned().collect()
    }

    pub fn project(&self, p: &Picture) -> Result<Picture, LangError> {
        Ok(p.project(&self.projection)?)
    }

    /// Local id to terminal id.
    pub(crate) fn projection_ids(&self) -> Vec<u16> {
        let mut v = vec![0u16; self.local().len() + 1];
        for (i, g) in self.local().iter().enumerate() {
            v[i + 1] = symbol_id(&self.terminal, &self.projection[g]).expect("projection checked");
        }
        v
    }
}

/// `|Γ| / |Σ|` as an exact fraction.
pub fn alphabetic_ratio(s: &TilingSystem) -> Ratio<usize> {
    Ratio::new(s.local().len(), s.terminal().len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preimage {
    Found(Picture),
    Absent,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(Picture),
    No,
    Unknown,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Membership::Yes(_) => "yes",
            Membership::No => "no",
            Membership::Unknown => "unknown",
        }
    }
}

/// Backtracking search for a local pre-image of `p`.
pub fn preimage_search(p: &Picture, s: &TilingSystem, budget: u64) -> Result<Preimage, LangError> {
    if p.contains_border() {
        return Err(GridError::ReservedSymbol.into());
    }
    let mut fibers: HashMap<&Symbol, Vec<u16>> = HashMap::new();
    let mut cells = Vec::with_capacity(p.cells().len());
    for x in p.cells() {
        if !s.terminal().contains(x) {
            return Err(LangError::Alphabet(x.to_string()));
        }
        let f =
            fibers.entry(x).or_insert_with(|| s.fiber(x).iter().map(|g| symbol_id(s.local(), g).unwrap()).collect());
        if f.is_empty() {
            return Ok(Preimage::Absent);
        }
        cells.push(f.clone());
    }
    let cands = search::Candidates::PerCell(cells);
    match search::find_one(s.tileset(), p.rows(), p.cols(), &cands, budget) {
        search::Found::Some(ids) => Ok(Preimage::Found(ids_picture(s.local(), p.rows(), p.cols(), &ids))),
        search::Found::None => Ok(Preimage::Absent),
        search::Found::Budget => Ok(Preimage::Exhausted),
    }
}

/// Tri-state membership in `π(L(T))`.
pub fn ts_member(p: &Picture, s: &TilingSystem, budget: u64) -> Result<Membership, LangError> {
    Ok(match preimage_search(p, s, budget)? {
        Preimage::Found(q) => Membership::Yes(q),
        Preimage::Absent => Membership::No,
        Preimage::Exhausted => Membership::Unknown,
    })
}

/// What a language specification recognizes: a tile set or a tiling system.
#[derive(Clone, Copy, Debug)]
pub enum LangSpec<'a> {
    Slt(&'a TileSet),
    Ts(&'a TilingSystem),
}

impl<'a> From<&'a TileSet> for LangSpec<'a> {
    fn from(t: &'a TileSet) -> Self {
        LangSpec::Slt(t)
    }
}

impl<'a> From<&'a TilingSystem> for LangSpec<'a> {
    fn from(s: &'a TilingSystem) -> Self {
        LangSpec::Ts(s)
    }
}

impl LangSpec<'_> {
    fn tileset(&self) -> &TileSet {
        match self {
            LangSpec::Slt(t) => t,
            LangSpec::Ts(s) => s.tileset(),
        }
    }

    fn output_alphabet(&self) -> &Alphabet {
        match self {
            LangSpec::Slt(t) => t.alphabet(),
            LangSpec::Ts(s) => s.terminal(),
        }
    }
}

/// Every picture of the language with the given size.
pub fn enumerate_size<'a>(
    spec: impl Into<LangSpec<'a>>,
    rows: usize,
    cols: usize,
    budget: u64,
) -> Result<BTreeSet<Picture>, LangError> {
    enumerate_sizes(spec, &[(rows, cols)], budget)
}

/// Sizes with at most this many terminal pictures are enumerated by one
/// pre-image search per terminal picture instead of by local enumeration.
const TERMINAL_SWEEP: u128 = 1 << 12;

/// Every picture of the language whose size is in `sizes`.
pub fn enumerate_sizes<'a>(
    spec: impl Into<LangSpec<'a>>,
    sizes: &[(usize, usize)],
    budget: u64,
) -> Result<BTreeSet<Picture>, LangError> {
    let spec = spec.into();
    let per_size: Vec<Result<Vec<Picture>, LangError>> =
        sizes.par_iter().map(|&(m, n)| enumerate_one_size(spec, m, n, budget)).collect();
    let mut out = BTreeSet::new();
    for r in per_size {
        out.extend(r?);
    }
    Ok(out)
}

fn enumerate_one_size(spec: LangSpec<'_>, m: usize, n: usize, budget: u64) -> Result<Vec<Picture>, LangError> {
    let t = spec.tileset();
    let exhausted = LangError::Budget { budget, rows: m, cols: n };
    if let LangSpec::Ts(s) = spec {
        let sigma = s.terminal().len() as u128;
        let cells = (m * n) as u32;
        if sigma.checked_pow(cells).is_some_and(|c| c <= TERMINAL_SWEEP) {
            let fibers: Vec<Vec<u16>> = s
                .terminal()
                .iter()
                .map(|x| s.fiber(x).iter().map(|g| symbol_id(s.local(), g).unwrap()).collect())
                .collect();
            let mut out = Vec::new();
            for code in 0..sigma.pow(cells) {
                let mut digits = Vec::with_capacity(m * n);
                let mut c = code;
                for _ in 0..cells {
                    digits.push((c % sigma) as usize);
                    c /= sigma;
                }
                let cands = search::Candidates::PerCell(digits.iter().map(|&d| fibers[d].clone()).collect());
                match search::find_one(t, m, n, &cands, budget) {
                    search::Found::Some(_) => {
                        let ids: Vec<u16> = digits.iter().map(|&d| d as u16 + 1).collect();
                        out.push(ids_picture(s.terminal(), m, n, &ids));
                    }
                    search::Found::None => {}
                    search::Found::Budget => return Err(exhausted),
                }
            }
            return Ok(out);
        }
    }
    let proj = match spec {
        LangSpec::Slt(_) => None,
        LangSpec::Ts(s) => Some(s.projection_ids()),
    };
    let all: Vec<u16> = (1..=t.alphabet().len() as u16).collect();
    let cands = search::Candidates::Uniform(all);
    let found = search::find_all(t, m, n, &cands, proj.as_deref(), budget).ok_or(exhausted)?;
    Ok(found.iter().map(|ids| ids_picture(spec.output_alphabet(), m, n, ids)).collect())
}

/// Every picture of the language of size at most `(max_rows, max_cols)`.
pub fn enumerate_language<'a>(
    spec: impl Into<LangSpec<'a>>,
    max_rows: usize,
    max_cols: usize,
    budget: u64,
) -> Result<BTreeSet<Picture>, LangError> {
    let sizes: Vec<(usize, usize)> = (1..=max_rows).flat_map(|m| (1..=max_cols).map(move |n| (m, n))).collect();
    enumerate_sizes(spec, &sizes, budget)
}

/// Pictures separating two languages within bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Comparison {
    pub only_a: BTreeSet<Picture>,
    pub only_b: BTreeSet<Picture>,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        self.only_a.is_empty() && self.only_b.is_empty()
    }
}

pub fn compare_languages<'a, 'b>(
    a: impl Into<LangSpec<'a>>,
    b: impl Into<LangSpec<'b>>,
    max_rows: usize,
    max_cols: usize,
    budget: u64,
) -> Result<Comparison, LangError> {
    let la = enumerate_language(a, max_rows, max_cols, budget)?;
    let lb = enumerate_language(b, max_rows, max_cols, budget)?;
    Ok(Comparison { only_a: la.difference(&lb).cloned().collect(), only_b: lb.difference(&la).cloned().collect() })
}
