//! Frame symbols over `k`-blocks and the 2-tile set that glues them.

use std::collections::BTreeSet;
use std::fmt;

use super::pad::pad_local_picture;
use super::ReduceError;
use crate::grid::{Alphabet, Frame, Picture, Symbol};
use crate::lang::{enumerate_language, ids_picture, picture_ids, TileSet, TilingSystem};

/// A `k`-block summarized by its frame and its projected face.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrameSymbol {
    pub frame: Frame,
    pub face: Picture,
}

impl fmt::Display for FrameSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |w: &[Symbol]| w.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ");
        let face: Vec<String> = (1..=self.face.rows()).map(|i| word(self.face.row(i))).collect();
        write!(
            f,
            "N[{}] E[{}] S[{}] W[{}] face[{}]",
            word(&self.frame.north),
            word(&self.frame.east),
            word(&self.frame.south),
            word(&self.frame.west),
            face.join(" / ")
        )
    }
}

/// Which `k`-blocks feed the frame alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FrameSource {
    /// Every `k×k` picture whose 2×2 windows are interior tiles.
    #[default]
    Local,
    /// The blocks of padded pre-images of every source picture up to the
    /// given size.
    Realized { max_rows: usize, max_cols: usize },
}

/// The symbols `B`, named `B000`, `B001`, … in sorted order, and their frames `Q`.
#[derive(Clone, Debug)]
pub struct FrameAlphabet {
    k: usize,
    symbols: Vec<FrameSymbol>,
    alphabet: Alphabet,
    frames: BTreeSet<Frame>,
}

impl FrameAlphabet {
    pub fn new(k: usize, symbols: BTreeSet<FrameSymbol>) -> Result<FrameAlphabet, ReduceError> {
        if let Some(x) = symbols.iter().find(|x| x.frame.k() != k || x.face.size() != (k, k)) {
            return Err(ReduceError::Domain(format!("frame symbol of size {} in a size-{k} alphabet", x.frame.k())));
        }
        let symbols: Vec<FrameSymbol> = symbols.into_iter().collect();
        let width = symbols.len().saturating_sub(1).to_string().len().max(3);
        let alphabet = Alphabet::new("frames", (0..symbols.len()).map(|i| format!("B{i:0width$}")))?;
        let frames = symbols.iter().map(|x| x.frame.clone()).collect();
        Ok(FrameAlphabet { k, symbols, alphabet, frames })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn symbols(&self) -> &[FrameSymbol] {
        &self.symbols
    }

    /// Names of the symbols, index-aligned with [`FrameAlphabet::symbols`].
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn frames(&self) -> &BTreeSet<Frame> {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name_of(&self, x: &FrameSymbol) -> Option<&Symbol> {
        self.symbols.binary_search(x).ok().map(|i| &self.alphabet.symbols()[i])
    }

    pub fn symbol(&self, name: &Symbol) -> Option<&FrameSymbol> {
        self.alphabet.index_of(name).map(|i| &self.symbols[i])
    }

    /// The face picture `π_k(q)` of a picture over `B`.
    pub fn faces(&self, q: &Picture) -> Result<Picture, ReduceError> {
        self.assemble(q, |x| &x.face)
    }

    fn assemble<'a, F: Fn(&'a FrameSymbol) -> &'a Picture>(
        &'a self,
        q: &Picture,
        part: F,
    ) -> Result<Picture, ReduceError> {
        let mut rows: Option<Picture> = None;
        for i in 1..=q.rows() {
            let mut row: Option<Picture> = None;
            for j in 1..=q.cols() {
                let x = self
                    .symbol(q.get(i, j))
                    .ok_or_else(|| ReduceError::Domain(format!("{} is not a frame symbol", q.get(i, j))))?;
                let b = part(x);
                row = Some(match row {
                    None => b.clone(),
                    Some(r) => r.concat_h(b)?,
                });
            }
            let row = row.expect("non-empty row");
            rows = Some(match rows {
                None => row,
                Some(r) => r.concat_v(&row)?,
            });
        }
        Ok(rows.expect("non-empty picture"))
    }
}

fn frame_symbol(block: &Picture, s: &TilingSystem) -> Result<FrameSymbol, ReduceError> {
    Ok(FrameSymbol { frame: Frame::of(block)?, face: s.project(block)? })
}

/// The block of `p` at block coordinates `(a, b)`, 1-based, as a frame symbol.
pub fn block_symbol(p: &Picture, k: usize, a: usize, b: usize, s: &TilingSystem) -> Result<FrameSymbol, ReduceError> {
    let block = p.subpicture((a - 1) * k + 1, (b - 1) * k + 1, a * k, b * k)?;
    frame_symbol(&block, s)
}

/// Collects the frame alphabet of `p`, the padded system of `s`.
pub fn frame_alphabet(
    s: &TilingSystem,
    p: &TilingSystem,
    k: usize,
    source: FrameSource,
    budget: u64,
) -> Result<FrameAlphabet, ReduceError> {
    if p.k() != 2 || k < 2 {
        return Err(ReduceError::Domain(format!("frames need a 2-tiling system and k >= 2, got {} and {k}", p.k())));
    }
    let mut symbols = BTreeSet::new();
    match source {
        FrameSource::Local => {
            for block in local_blocks(p.tileset(), k, budget)? {
                symbols.insert(frame_symbol(&block, p)?);
            }
        }
        FrameSource::Realized { max_rows, max_cols } => {
            for q in enumerate_language(s.tileset(), max_rows, max_cols, budget)? {
                let padded = pad_local_picture(&q, k)?;
                for block in padded.tessellate(k)?.blocks() {
                    symbols.insert(frame_symbol(block, p)?);
                }
            }
        }
    }
    FrameAlphabet::new(k, symbols)
}

/// All `k×k` pictures whose 2×2 windows lie in `t`, by row-major extension.
fn local_blocks(t: &TileSet, k: usize, budget: u64) -> Result<Vec<Picture>, ReduceError> {
    let letters: Vec<u16> = (1..=t.alphabet().len() as u16).collect();
    let mut cells = vec![0u16; k * k];
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn go(
        pos: usize,
        k: usize,
        t: &TileSet,
        letters: &[u16],
        cells: &mut Vec<u16>,
        out: &mut Vec<Vec<u16>>,
        nodes: &mut u64,
        budget: u64,
    ) -> bool {
        if pos == k * k {
            out.push(cells.clone());
            return true;
        }
        let (i, j) = (pos / k, pos % k);
        for &c in letters {
            *nodes += 1;
            if *nodes > budget {
                return false;
            }
            cells[pos] = c;
            if i > 0 && j > 0 {
                let w = [cells[pos - k - 1], cells[pos - k], cells[pos - 1], c];
                if !t.contains_raw(&w) {
                    continue;
                }
            }
            if !go(pos + 1, k, t, letters, cells, out, nodes, budget) {
                return false;
            }
        }
        true
    }
    let mut raw = Vec::new();
    if !go(0, k, t, &letters, &mut cells, &mut raw, &mut nodes, budget) {
        return Err(ReduceError::Budget { budget, what: "local k-blocks" });
    }
    Ok(raw.iter().map(|ids| ids_picture(t.alphabet(), k, k, ids)).collect())
}

/// The perimeter words of each frame symbol as ids in the local alphabet.
struct Sides {
    n: Vec<u16>,
    e: Vec<u16>,
    s: Vec<u16>,
    w: Vec<u16>,
}

/// The 2-tile set `M_2` over the frame alphabet.
///
/// Two blocks may touch when every 2×2 window straddling their common edge
/// is a tile of `t`; four blocks may meet when additionally the window at
/// the shared corner is a tile. A block on the picture border also needs
/// the windows between its outer side and the border row or column, so
/// pictures one block thick are checked like any other.
pub fn frame_tileset(b: &FrameAlphabet, t: &TileSet) -> Result<TileSet, ReduceError> {
    let k = b.k();
    let g = t.alphabet();
    let ids =
        |w: &[Symbol]| -> Result<Vec<u16>, ReduceError> { Ok(picture_ids(g, &Picture::new(1, w.len(), w.to_vec())?)?) };
    let sides: Vec<Sides> = b
        .symbols()
        .iter()
        .map(|x| {
            Ok(Sides {
                n: ids(&x.frame.north)?,
                e: ids(&x.frame.east)?,
                s: ids(&x.frame.south)?,
                w: ids(&x.frame.west)?,
            })
        })
        .collect::<Result<_, ReduceError>>()?;
    let hash = 0u16;
    let tile = |a: u16, b: u16, c: u16, d: u16| t.contains_raw(&[a, b, c, d]);
    // x left of y.
    let h = |x: &Sides, y: &Sides| (0..k - 1).all(|i| tile(x.e[i], y.w[i], x.e[i + 1], y.w[i + 1]));
    // x above z.
    let v = |x: &Sides, z: &Sides| (0..k - 1).all(|j| tile(x.s[j], x.s[j + 1], z.n[j], z.n[j + 1]));
    let top = |x: &Sides| (0..k - 1).all(|j| tile(hash, hash, x.n[j], x.n[j + 1]));
    let bottom = |x: &Sides| (0..k - 1).all(|j| tile(x.s[j], x.s[j + 1], hash, hash));
    let left = |x: &Sides| (0..k - 1).all(|i| tile(hash, x.w[i], hash, x.w[i + 1]));
    let right = |x: &Sides| (0..k - 1).all(|i| tile(x.e[i], hash, x.e[i + 1], hash));

    let nb = sides.len();
    // Compiled ids: `#` is 0 and symbol `x` is `x + 1`.
    let id = |x: usize| x as u16 + 1;
    let mut raw: Vec<u16> = Vec::new();
    let mut push = |a: u16, b: u16, c: u16, d: u16| raw.extend_from_slice(&[a, b, c, d]);
    let right_of: Vec<Vec<usize>> = (0..nb).map(|x| (0..nb).filter(|&y| h(&sides[x], &sides[y])).collect()).collect();
    let below: Vec<Vec<usize>> = (0..nb).map(|x| (0..nb).filter(|&z| v(&sides[x], &sides[z])).collect()).collect();
    let below_set: Vec<BTreeSet<usize>> = below.iter().map(|zs| zs.iter().copied().collect()).collect();

    for x in 0..nb {
        let sx = &sides[x];
        for &y in &right_of[x] {
            let sy = &sides[y];
            for &z in &below[x] {
                let sz = &sides[z];
                for &tt in &right_of[z] {
                    let st = &sides[tt];
                    if below_set[y].contains(&tt) && tile(sx.s[k - 1], sy.s[0], sz.n[k - 1], st.n[0]) {
                        push(id(x), id(y), id(z), id(tt));
                    }
                }
            }
            if top(sx) && top(sy) && tile(hash, hash, sx.n[k - 1], sy.n[0]) {
                push(hash, hash, id(x), id(y));
            }
            if bottom(sx) && bottom(sy) && tile(sx.s[k - 1], sy.s[0], hash, hash) {
                push(id(x), id(y), hash, hash);
            }
        }
        for &z in &below[x] {
            let sz = &sides[z];
            if left(sx) && left(sz) && tile(hash, sx.w[k - 1], hash, sz.w[0]) {
                push(hash, id(x), hash, id(z));
            }
            if right(sx) && right(sz) && tile(sx.e[k - 1], hash, sz.e[0], hash) {
                push(id(x), hash, id(z), hash);
            }
        }
        if top(sx) && left(sx) && tile(hash, hash, hash, sx.n[0]) {
            push(hash, hash, hash, id(x));
        }
        if top(sx) && right(sx) && tile(hash, hash, sx.n[k - 1], hash) {
            push(hash, hash, id(x), hash);
        }
        if bottom(sx) && left(sx) && tile(hash, sx.s[0], hash, hash) {
            push(hash, id(x), hash, hash);
        }
        if bottom(sx) && right(sx) && tile(sx.s[k - 1], hash, hash, hash) {
            push(id(x), hash, hash, hash);
        }
    }
    Ok(TileSet::from_raw(2, b.alphabet().clone(), raw))
}
