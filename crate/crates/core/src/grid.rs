//! Rectangular pictures over token alphabets.
//!
//! Coordinates in the public API are 1-based, `(row, col)`. The reserved
//! token `#` is the border symbol and never belongs to a user alphabet.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The reserved border token.
pub const BORDER: &str = "#";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("invalid symbol token {0:?}")]
    InvalidToken(String),
    #[error("the border symbol '#' is reserved")]
    ReservedSymbol,
    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index ({i},{j})..({i2},{j2}) out of range for a {rows}x{cols} picture")]
    Index { i: usize, j: usize, i2: usize, j2: usize, rows: usize, cols: usize },
    #[error("cannot tessellate a {rows}x{cols} picture into {k}x{k} blocks")]
    Tessellation { rows: usize, cols: usize, k: usize },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("no image for symbol {0:?} under projection")]
    Projection(String),
}

/// An alphabet letter. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    /// A user symbol: non-empty, whitespace-free and not `#`.
    pub fn new(name: &str) -> Result<Symbol, GridError> {
        if name == BORDER {
            return Err(GridError::ReservedSymbol);
        }
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(GridError::InvalidToken(name.to_string()));
        }
        Ok(Symbol(Arc::from(name)))
    }

    pub fn border() -> Symbol {
        Symbol(Arc::from(BORDER))
    }

    /// Parses a cell token, accepting `#`.
    pub fn cell(name: &str) -> Result<Symbol, GridError> {
        if name == BORDER {
            Ok(Symbol::border())
        } else {
            Symbol::new(name)
        }
    }

    /// The product letter `(a,b)`.
    pub fn pair(a: &Symbol, b: &Symbol) -> Symbol {
        Symbol(Arc::from(format!("({},{})", a.0, b.0)))
    }

    pub fn is_border(&self) -> bool {
        &*self.0 == BORDER
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Symbol::cell(&s).map_err(serde::de::Error::custom)
    }
}

/// A named finite set of symbols. Iteration order is the canonical token
/// order, which every downstream canonical ordering inherits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    name: String,
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(name: &str, tokens: I) -> Result<Alphabet, GridError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for t in tokens {
            let s = Symbol::new(t.as_ref())?;
            if !set.insert(s) {
                return Err(GridError::DuplicateSymbol(t.as_ref().to_string()));
            }
        }
        Ok(Alphabet { name: name.to_string(), symbols: set.into_iter().collect() })
    }

    /// Builds from symbols, dropping duplicates.
    pub fn from_symbols<I: IntoIterator<Item = Symbol>>(name: &str, symbols: I) -> Result<Alphabet, GridError> {
        let set: BTreeSet<Symbol> = symbols.into_iter().collect();
        if set.iter().any(Symbol::is_border) {
            return Err(GridError::ReservedSymbol);
        }
        Ok(Alphabet { name: name.to_string(), symbols: set.into_iter().collect() })
    }

    /// The product alphabet of pair letters `(a,b)`.
    pub fn product(name: &str, a: &Alphabet, b: &Alphabet) -> Alphabet {
        let set: BTreeSet<Symbol> = a.iter().flat_map(|x| b.iter().map(move |y| Symbol::pair(x, y))).collect();
        Alphabet { name: name.to_string(), symbols: set.into_iter().collect() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.symbols.iter()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.symbols.binary_search(s).is_ok()
    }

    /// Position in canonical order.
    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.symbols.binary_search(s).ok()
    }

    pub fn get(&self, token: &str) -> Option<&Symbol> {
        self.symbols.iter().find(|s| s.as_str() == token)
    }

    pub fn with_name(mut self, name: &str) -> Alphabet {
        self.name = name.to_string();
        self
    }
}

/// A rectangular array of symbols, stored row-major.
///
/// The derived order compares `rows`, then `cols`, then the cell sequence,
/// which is the canonical picture order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Picture {
    rows: usize,
    cols: usize,
    cells: Vec<Symbol>,
}

impl Picture {
    pub fn new(rows: usize, cols: usize, cells: Vec<Symbol>) -> Result<Picture, GridError> {
        if rows == 0 || cols == 0 {
            return Err(GridError::Dimension(format!("empty size ({rows},{cols})")));
        }
        if cells.len() != rows * cols {
            return Err(GridError::Dimension(format!("{} cells for size ({rows},{cols})", cells.len())));
        }
        Ok(Picture { rows, cols, cells })
    }

    pub fn uniform(rows: usize, cols: usize, s: &Symbol) -> Picture {
        assert!(rows > 0 && cols > 0, "pictures are non-empty");
        Picture { rows, cols, cells: vec![s.clone(); rows * cols] }
    }

    /// Builds from token rows; `#` is accepted.
    pub fn from_rows<R, S>(rows: &[R]) -> Result<Picture, GridError>
    where
        R: AsRef<[S]>,
        S: AsRef<str>,
    {
        let m = rows.len();
        let n = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut cells = Vec::with_capacity(m * n);
        for r in rows {
            if r.as_ref().len() != n {
                return Err(GridError::Dimension("ragged rows".into()));
            }
            for t in r.as_ref() {
                cells.push(Symbol::cell(t.as_ref())?);
            }
        }
        Picture::new(m, n, cells)
    }

    /// Parses whitespace-separated tokens, one picture row per line.
    pub fn parse_rows(text: &str) -> Result<Picture, GridError> {
        let rows: Vec<Vec<&str>> = text
            .lines()
            .map(str::split_whitespace)
            .map(Iterator::collect)
            .filter(|r: &Vec<&str>| !r.is_empty())
            .collect();
        Picture::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn size(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    /// Cell at 1-based `(i, j)`. Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> &Symbol {
        assert!((1..=self.rows).contains(&i) && (1..=self.cols).contains(&j), "cell ({i},{j}) out of range");
        &self.cells[(i - 1) * self.cols + (j - 1)]
    }

    /// Row `i` (1-based) as a slice.
    pub fn row(&self, i: usize) -> &[Symbol] {
        &self.cells[(i - 1) * self.cols..i * self.cols]
    }

    /// Column `j` (1-based).
    pub fn col(&self, j: usize) -> Vec<Symbol> {
        (1..=self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn contains_border(&self) -> bool {
        self.cells.iter().any(Symbol::is_border)
    }

    /// The set of distinct symbols, `#` included.
    pub fn symbol_set(&self) -> BTreeSet<Symbol> {
        self.cells.iter().cloned().collect()
    }

    pub fn transpose(&self) -> Picture {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                cells.push(self.cells[i * self.cols + j].clone());
            }
        }
        Picture { rows: self.cols, cols: self.rows, cells }
    }

    /// Horizontal concatenation `self ⦶ q`.
    pub fn concat_h(&self, q: &Picture) -> Result<Picture, GridError> {
        if self.rows != q.rows {
            return Err(GridError::Dimension(format!("horizontal concatenation of {} and {} rows", self.rows, q.rows)));
        }
        let cols = self.cols + q.cols;
        let mut cells = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            cells.extend_from_slice(&self.cells[i * self.cols..(i + 1) * self.cols]);
            cells.extend_from_slice(&q.cells[i * q.cols..(i + 1) * q.cols]);
        }
        Ok(Picture { rows: self.rows, cols, cells })
    }

    /// Vertical concatenation `self ⊖ q`.
    pub fn concat_v(&self, q: &Picture) -> Result<Picture, GridError> {
        if self.cols != q.cols {
            return Err(GridError::Dimension(format!(
                "vertical concatenation of {} and {} columns",
                self.cols, q.cols
            )));
        }
        let mut cells = Vec::with_capacity(self.cells.len() + q.cells.len());
        cells.extend_from_slice(&self.cells);
        cells.extend_from_slice(&q.cells);
        Ok(Picture { rows: self.rows + q.rows, cols: self.cols, cells })
    }

    /// `self^{⊖h}`: `h ≥ 1` copies stacked vertically.
    pub fn power_v(&self, h: usize) -> Picture {
        assert!(h >= 1);
        let mut cells = Vec::with_capacity(self.cells.len() * h);
        for _ in 0..h {
            cells.extend_from_slice(&self.cells);
        }
        Picture { rows: self.rows * h, cols: self.cols, cells }
    }

    /// `self^{⦶h}`: `h ≥ 1` copies side by side.
    pub fn power_h(&self, h: usize) -> Picture {
        assert!(h >= 1);
        let mut cells = Vec::with_capacity(self.cells.len() * h);
        for i in 0..self.rows {
            for _ in 0..h {
                cells.extend_from_slice(&self.cells[i * self.cols..(i + 1) * self.cols]);
            }
        }
        Picture { rows: self.rows, cols: self.cols * h, cells }
    }

    /// `p̂`: surrounded by a width-1 frame of `#`.
    pub fn bordered(&self) -> Result<Picture, GridError> {
        self.padded_with_border(self.rows + 2, self.cols + 2)
    }

    /// The thick border: `p̂` extended with the fewest all-`#` rows at the
    /// bottom and columns at the right so that it is at least `k×k`.
    pub fn thick_bordered(&self, k: usize) -> Result<Picture, GridError> {
        self.padded_with_border((self.rows + 2).max(k), (self.cols + 2).max(k))
    }

    fn padded_with_border(&self, rr: usize, cc: usize) -> Result<Picture, GridError> {
        if self.contains_border() {
            return Err(GridError::ReservedSymbol);
        }
        let border = Symbol::border();
        let mut cells = vec![border; rr * cc];
        for i in 0..self.rows {
            for j in 0..self.cols {
                cells[(i + 1) * cc + j + 1] = self.cells[i * self.cols + j].clone();
            }
        }
        Ok(Picture { rows: rr, cols: cc, cells })
    }

    /// The inclusive block `(i,j)..=(i2,j2)`, 1-based.
    pub fn subpicture(&self, i: usize, j: usize, i2: usize, j2: usize) -> Result<Picture, GridError> {
        if i < 1 || j < 1 || i > i2 || j > j2 || i2 > self.rows || j2 > self.cols {
            return Err(GridError::Index { i, j, i2, j2, rows: self.rows, cols: self.cols });
        }
        let cols = j2 - j + 1;
        let mut cells = Vec::with_capacity((i2 - i + 1) * cols);
        for r in i..=i2 {
            let base = (r - 1) * self.cols;
            cells.extend_from_slice(&self.cells[base + j - 1..base + j2]);
        }
        Ok(Picture { rows: i2 - i + 1, cols, cells })
    }

    /// The `h×w` window at 0-based `(i, j)`; the caller guarantees range.
    pub(crate) fn window(&self, i: usize, j: usize, h: usize, w: usize) -> Picture {
        let mut cells = Vec::with_capacity(h * w);
        for r in i..i + h {
            let base = r * self.cols;
            cells.extend_from_slice(&self.cells[base + j..base + j + w]);
        }
        Picture { rows: h, cols: w, cells }
    }

    /// All distinct `k×k` subpictures.
    pub fn k_tiles(&self, k: usize) -> BTreeSet<Picture> {
        let mut out = BTreeSet::new();
        if k == 0 || k > self.rows || k > self.cols {
            return out;
        }
        for i in 0..=self.rows - k {
            for j in 0..=self.cols - k {
                out.insert(self.window(i, j, k, k));
            }
        }
        out
    }

    /// The aligned `k×k` block partition.
    pub fn tessellate(&self, k: usize) -> Result<Tessellation, GridError> {
        if k == 0 || !self.rows.is_multiple_of(k) || !self.cols.is_multiple_of(k) {
            return Err(GridError::Tessellation { rows: self.rows, cols: self.cols, k });
        }
        let (br, bc) = (self.rows / k, self.cols / k);
        let mut blocks = Vec::with_capacity(br * bc);
        for a in 0..br {
            for b in 0..bc {
                blocks.push(self.window(a * k, b * k, k, k));
            }
        }
        Ok(Tessellation { k, block_rows: br, block_cols: bc, blocks })
    }

    pub fn frame_of(&self) -> Result<Frame, GridError> {
        Frame::of(self)
    }

    /// Cellwise pairing `self ⊗ q` into product letters.
    pub fn merge(&self, q: &Picture) -> Result<Picture, GridError> {
        if self.size() != q.size() {
            return Err(GridError::Dimension(format!("merge of sizes {:?} and {:?}", self.size(), q.size())));
        }
        let cells = self.cells.iter().zip(&q.cells).map(|(a, b)| Symbol::pair(a, b)).collect();
        Ok(Picture { rows: self.rows, cols: self.cols, cells })
    }

    /// Letter-to-letter image. `#` always maps to itself.
    pub fn project(&self, map: &BTreeMap<Symbol, Symbol>) -> Result<Picture, GridError> {
        self.map_cells(|s| if s.is_border() { Some(s.clone()) } else { map.get(s).cloned() })
    }

    /// Letter-to-letter image under a partial function.
    pub fn map_cells<F: FnMut(&Symbol) -> Option<Symbol>>(&self, mut f: F) -> Result<Picture, GridError> {
        let cells = self
            .cells
            .iter()
            .map(|s| f(s).ok_or_else(|| GridError::Projection(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Picture { rows: self.rows, cols: self.cols, cells })
    }
}

impl fmt::Display for Picture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row = &self.cells[i * self.cols..(i + 1) * self.cols];
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(s.as_str())?;
            }
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Picture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Picture({}x{}; ", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(" / ")?;
            }
            let row: Vec<&str> = self.row(i + 1).iter().map(Symbol::as_str).collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str(")")
    }
}

/// The `k`-tessellation of a picture: a grid of aligned `k×k` blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tessellation {
    k: usize,
    block_rows: usize,
    block_cols: usize,
    blocks: Vec<Picture>,
}

impl Tessellation {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    pub fn block_cols(&self) -> usize {
        self.block_cols
    }

    /// Block at 1-based block coordinates.
    pub fn get(&self, a: usize, b: usize) -> &Picture {
        &self.blocks[(a - 1) * self.block_cols + (b - 1)]
    }

    pub fn blocks(&self) -> &[Picture] {
        &self.blocks
    }

    /// `⟦p⟧_{k,k}` as a set.
    pub fn block_set(&self) -> BTreeSet<Picture> {
        self.blocks.iter().cloned().collect()
    }

    /// Concatenates the blocks back into one picture.
    pub fn reassemble(&self) -> Picture {
        let mut acc: Option<Picture> = None;
        for a in 1..=self.block_rows {
            let mut row = self.get(a, 1).clone();
            for b in 2..=self.block_cols {
                row = row.concat_h(self.get(a, b)).expect("blocks share height");
            }
            acc = Some(match acc {
                None => row,
                Some(top) => top.concat_v(&row).expect("block rows share width"),
            });
        }
        acc.expect("at least one block")
    }
}

/// The four perimeter words of a square picture, each read left to right or
/// top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Frame {
    pub north: Vec<Symbol>,
    pub east: Vec<Symbol>,
    pub south: Vec<Symbol>,
    pub west: Vec<Symbol>,
}

impl Frame {
    pub fn of(p: &Picture) -> Result<Frame, GridError> {
        let k = p.rows;
        if p.cols != k || k < 2 {
            return Err(GridError::Shape(format!("frame of a {}x{} picture", p.rows, p.cols)));
        }
        Ok(Frame { north: p.row(1).to_vec(), east: p.col(k), south: p.row(k).to_vec(), west: p.col(1) })
    }

    pub fn k(&self) -> usize {
        self.north.len()
    }

    /// Checks the shared-corner equalities.
    pub fn is_consistent(&self) -> bool {
        let k = self.k();
        k >= 2
            && [&self.east, &self.south, &self.west].iter().all(|w| w.len() == k)
            && self.north[0] == self.west[0]
            && self.north[k - 1] == self.east[0]
            && self.south[0] == self.west[k - 1]
            && self.south[k - 1] == self.east[k - 1]
    }
}
