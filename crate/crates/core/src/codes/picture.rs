//! Uniform picture codes and their comma-freeness.
//!
//! A window at offset `(di, dj)` inside a 2×2 assembly `[[A, B], [C, D]]`
//! splits into four rectangles, each a corner of exactly one block. Since the
//! blocks are chosen independently, some assembly contains a code picture `x`
//! at that offset iff each of the four rectangles of `x` appears as the
//! matching corner of some code picture. This turns the `|X|⁴` check into a
//! few set lookups per code picture and offset.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::CodeError;
use crate::grid::{Alphabet, Picture, Symbol};

/// A set of `k×k` pictures with an optional coding from a source alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PictureCode {
    k: usize,
    alphabet: Alphabet,
    pictures: Vec<Picture>,
    coding: Option<BTreeMap<Symbol, Picture>>,
}

impl PictureCode {
    /// Pictures are kept in canonical order; duplicates are rejected.
    pub fn new(k: usize, alphabet: Alphabet, pictures: Vec<Picture>) -> Result<PictureCode, CodeError> {
        if k == 0 {
            return Err(CodeError::Domain("code pictures must be at least 1x1".into()));
        }
        let mut set = BTreeSet::new();
        for p in pictures {
            if p.size() != (k, k) {
                return Err(CodeError::Domain(format!(
                    "code picture of size {}x{}, expected {k}x{k}",
                    p.rows(),
                    p.cols()
                )));
            }
            if let Some(s) = p.cells().iter().find(|s| s.is_border() || !alphabet.contains(s)) {
                return Err(CodeError::Domain(format!("symbol {s} outside the code alphabet")));
            }
            if !set.insert(p) {
                return Err(CodeError::Domain("duplicate code picture".into()));
            }
        }
        Ok(PictureCode { k, alphabet, pictures: set.into_iter().collect(), coding: None })
    }

    /// Attaches an injective coding whose images are code pictures.
    pub fn with_coding(mut self, coding: BTreeMap<Symbol, Picture>) -> Result<PictureCode, CodeError> {
        let images: BTreeSet<&Picture> = coding.values().collect();
        if images.len() != coding.len() {
            return Err(CodeError::Domain("coding is not injective".into()));
        }
        if let Some((s, _)) = coding.iter().find(|(_, p)| !self.contains(p)) {
            return Err(CodeError::Domain(format!("coding of {s} is not a code picture")));
        }
        if coding.keys().any(Symbol::is_border) {
            return Err(CodeError::Domain("the border symbol cannot be coded".into()));
        }
        self.coding = Some(coding);
        Ok(self)
    }

    /// Codes the source symbols, in order, by the first code pictures.
    pub fn assign_coding(self, source: &Alphabet) -> Result<PictureCode, CodeError> {
        if source.len() > self.len() {
            return Err(CodeError::Insufficient { needed: source.len(), available: self.len() });
        }
        let coding = source.iter().cloned().zip(self.pictures.iter().cloned()).collect();
        self.with_coding(coding)
    }

    /// The code restricted to the images of the coding.
    pub fn coded_subcode(&self) -> Result<PictureCode, CodeError> {
        let coding = self.require_coding()?;
        PictureCode::new(self.k, self.alphabet.clone(), coding.values().cloned().collect())?.with_coding(coding.clone())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pictures(&self) -> &[Picture] {
        &self.pictures
    }

    pub fn len(&self) -> usize {
        self.pictures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pictures.is_empty()
    }

    pub fn contains(&self, p: &Picture) -> bool {
        self.pictures.binary_search(p).is_ok()
    }

    /// 1-based index of a code picture in canonical order.
    pub fn id_of(&self, p: &Picture) -> Option<usize> {
        self.pictures.binary_search(p).ok().map(|i| i + 1)
    }

    pub fn coding(&self) -> Option<&BTreeMap<Symbol, Picture>> {
        self.coding.as_ref()
    }

    /// The symbols coded, in canonical order.
    pub fn source_symbols(&self) -> Vec<Symbol> {
        self.coding.iter().flat_map(|c| c.keys().cloned()).collect()
    }

    fn require_coding(&self) -> Result<&BTreeMap<Symbol, Picture>, CodeError> {
        self.coding.as_ref().ok_or_else(|| CodeError::Domain("code has no coding".into()))
    }

    /// Replaces every cell by its code picture.
    pub fn encode(&self, p: &Picture) -> Result<Picture, CodeError> {
        let coding = self.require_coding()?;
        let k = self.k;
        let mut cells = Vec::with_capacity(p.rows() * p.cols() * k * k);
        for i in 1..=p.rows() {
            let row: Vec<&Picture> = p
                .row(i)
                .iter()
                .map(|s| coding.get(s).ok_or_else(|| CodeError::Domain(format!("symbol {s} has no coding"))))
                .collect::<Result<_, _>>()?;
            for r in 1..=k {
                for x in &row {
                    cells.extend_from_slice(x.row(r));
                }
            }
        }
        Ok(Picture::new(p.rows() * k, p.cols() * k, cells)?)
    }

    /// Inverse of [`encode`](Self::encode); `None` if some aligned block is not a coded picture.
    pub fn decode(&self, p: &Picture) -> Result<Option<Picture>, CodeError> {
        let coding = self.require_coding()?;
        let inverse: BTreeMap<&Picture, &Symbol> = coding.iter().map(|(s, x)| (x, s)).collect();
        let t = p.tessellate(self.k)?;
        let mut cells = Vec::with_capacity(t.blocks().len());
        for b in t.blocks() {
            match inverse.get(b) {
                Some(s) => cells.push((*s).clone()),
                None => return Ok(None),
            }
        }
        Ok(Some(Picture::new(t.block_rows(), t.block_cols(), cells)?))
    }
}

/// Comma-freeness over all `k²-1` non-aligned offsets, by corner matching.
pub fn is_comma_free_picture_code(x: &PictureCode) -> bool {
    let k = x.k();
    let pics = x.pictures();
    for di in 0..k {
        for dj in 0..k {
            if (di, dj) == (0, 0) {
                continue;
            }
            let (h, w) = (k - di, k - dj);
            // Rectangles of a window, each with the block corner it must match.
            let parts = [(0, 0, h, w, di, dj), (0, w, h, dj, di, 0), (h, 0, di, w, 0, dj), (h, w, di, dj, 0, 0)];
            let corners: Vec<HashSet<Picture>> = parts
                .iter()
                .map(|&(_, _, ph, pw, ci, cj)| {
                    if ph == 0 || pw == 0 {
                        HashSet::new()
                    } else {
                        pics.iter().map(|p| p.window(ci, cj, ph, pw)).collect()
                    }
                })
                .collect();
            let hit = pics.iter().any(|q| {
                parts
                    .iter()
                    .zip(&corners)
                    .all(|(&(wi, wj, ph, pw, _, _), set)| ph == 0 || pw == 0 || set.contains(&q.window(wi, wj, ph, pw)))
            });
            if hit {
                return false;
            }
        }
    }
    true
}

/// Literal check over every 2×2 assembly and every non-aligned window.
pub fn is_comma_free_brute_force(x: &PictureCode, budget: u64) -> Result<bool, CodeError> {
    let n = x.len() as u128;
    let required = n.pow(4);
    if required > budget as u128 {
        return Err(CodeError::Budget { budget, required, what: "assemblies" });
    }
    let k = x.k();
    let pics = x.pictures();
    let set: HashSet<&Picture> = pics.iter().collect();
    for a in pics {
        for b in pics {
            let top = a.concat_h(b)?;
            for c in pics {
                for d in pics {
                    let p = top.concat_v(&c.concat_h(d)?)?;
                    for di in 0..k {
                        for dj in 0..k {
                            if (di, dj) != (0, 0) && set.contains(&p.window(di, dj, k, k)) {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// 1-based positions of the `k×k` windows of `p` that are code pictures.
pub fn code_occurrences(p: &Picture, x: &PictureCode) -> Vec<(usize, usize)> {
    let k = x.k();
    if p.rows() < k || p.cols() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..=p.rows() - k {
        for j in 0..=p.cols() - k {
            if x.contains(&p.window(i, j, k, k)) {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}
