//! Padding to multiples of `k` and the tiling system of the padded language.

use std::collections::{BTreeMap, BTreeSet};

use super::ReduceError;
use crate::grid::{Alphabet, GridError, Picture, Symbol};
use crate::lang::{TileSet, TilingSystem};

/// The terminal padding letter.
pub const DOLLAR: &str = "$";
/// The local filler letter inside padding blocks.
pub const FLAT: &str = "♭";

pub fn dollar() -> Symbol {
    Symbol::new(DOLLAR).expect("valid token")
}

/// Smallest multiple of `k` strictly above `n`.
pub fn padded_len(n: usize, k: usize) -> usize {
    (n / k + 1) * k
}

/// `p` extended by `$` rows below and `$` columns at the right, as few as
/// possible but at least one of each, to sides divisible by `k`.
pub fn pad_picture(p: &Picture, k: usize) -> Result<Picture, ReduceError> {
    if k < 2 {
        return Err(ReduceError::Domain(format!("padding size {k} is below 2")));
    }
    let d = dollar();
    if p.cells().contains(&d) {
        return Err(GridError::ReservedSymbol.into());
    }
    let (m, n) = p.size();
    let v = Picture::uniform(padded_len(m, k) - m, n, &d);
    let h = Picture::uniform(padded_len(m, k), padded_len(n, k) - n, &d);
    Ok(p.concat_v(&v)?.concat_h(&h)?)
}

/// The padding alphabet `Δ = {♭, 1, …, k}`.
pub fn delta(k: usize) -> Vec<Symbol> {
    std::iter::once(FLAT.to_string())
        .chain((1..=k).map(|i| i.to_string()))
        .map(|t| Symbol::new(&t).expect("valid token"))
        .collect()
}

/// Local letter at a padding cell with 1-based residues `ri`, `cj` in `1..=k`:
/// the last column of a block counts rows, the last row counts columns.
fn pad_symbol(ri: usize, cj: usize, k: usize) -> Symbol {
    let t = if cj == k {
        ri.to_string()
    } else if ri == k {
        cj.to_string()
    } else {
        FLAT.to_string()
    };
    Symbol::new(&t).expect("valid token")
}

/// The padded local picture: `q` in the top-left corner, `Δ` letters elsewhere.
pub fn pad_local_picture(q: &Picture, k: usize) -> Result<Picture, ReduceError> {
    let (m, n) = q.size();
    let (mm, nn) = (padded_len(m, k), padded_len(n, k));
    let mut cells = Vec::with_capacity(mm * nn);
    for i in 1..=mm {
        for j in 1..=nn {
            if i <= m && j <= n {
                cells.push(q.get(i, j).clone());
            } else {
                cells.push(pad_symbol((i - 1) % k + 1, (j - 1) % k + 1, k));
            }
        }
    }
    Ok(Picture::new(mm, nn, cells)?)
}

/// A template cell: border, some real local letter, or a fixed padding letter.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Tc {
    Border,
    Real,
    Pad(Symbol),
}

/// The tiling system of the padded language over `Γ' ∪ Δ`.
///
/// Tiles away from the east and south sides are those of `s`. Every other
/// tile is read off bordered padding templates whose real part has each
/// size in `1..2k`, which covers every residue of the real size modulo `k`.
/// A template tile with real cells is instantiated by each tile of `s`
/// that has `#` exactly where the template has padding or border.
pub fn padded_system(s: &TilingSystem, k: usize) -> Result<TilingSystem, ReduceError> {
    if s.k() != 2 {
        return Err(ReduceError::Domain(format!("expected a 2-tiling system, got size {}", s.k())));
    }
    if k < 2 {
        return Err(ReduceError::Domain(format!("padding size {k} is below 2")));
    }
    let d = dollar();
    if s.terminal().contains(&d) {
        return Err(GridError::ReservedSymbol.into());
    }
    let deltas = delta(k);
    if let Some(x) = deltas.iter().find(|x| s.local().contains(x)) {
        return Err(ReduceError::Domain(format!("local symbol {x} clashes with the padding alphabet")));
    }
    let gamma = Alphabet::from_symbols(s.local().name(), s.local().iter().cloned().chain(deltas.iter().cloned()))?;
    let src: Vec<Picture> = s.tileset().tiles().collect();
    let is_border_line = |a: &Symbol, b: &Symbol| a.is_border() && b.is_border();
    let mut tiles: BTreeSet<Picture> = src
        .iter()
        .filter(|t| !is_border_line(t.get(1, 2), t.get(2, 2)) && !is_border_line(t.get(2, 1), t.get(2, 2)))
        .cloned()
        .collect();
    let mut templates: BTreeSet<Vec<Tc>> = BTreeSet::new();
    for m in 1..2 * k {
        for n in 1..2 * k {
            let (mm, nn) = (padded_len(m, k), padded_len(n, k));
            let cell = |i: usize, j: usize| -> Tc {
                if i == 0 || j == 0 || i > mm || j > nn {
                    Tc::Border
                } else if i <= m && j <= n {
                    Tc::Real
                } else {
                    Tc::Pad(pad_symbol((i - 1) % k + 1, (j - 1) % k + 1, k))
                }
            };
            for i in 0..=mm {
                for j in 0..=nn {
                    let w = vec![cell(i, j), cell(i, j + 1), cell(i + 1, j), cell(i + 1, j + 1)];
                    if w.iter().any(|c| matches!(c, Tc::Pad(_))) {
                        templates.insert(w);
                    }
                }
            }
        }
    }
    let border = Symbol::border();
    for w in &templates {
        let fill = |real: &[&Symbol]| -> Result<Picture, GridError> {
            let cells = w
                .iter()
                .zip(real)
                .map(|(c, r)| match c {
                    Tc::Border => border.clone(),
                    Tc::Pad(x) => x.clone(),
                    Tc::Real => (*r).clone(),
                })
                .collect();
            Picture::new(2, 2, cells)
        };
        if !w.contains(&Tc::Real) {
            tiles.insert(fill(&[&border; 4])?);
            continue;
        }
        for t in &src {
            let matches = w.iter().zip(t.cells()).all(|(c, x)| (*c == Tc::Real) != x.is_border());
            if matches {
                let real: Vec<&Symbol> = t.cells().iter().collect();
                tiles.insert(fill(&real)?);
            }
        }
    }
    let tileset = TileSet::new(2, gamma.clone(), tiles)?;
    let terminal = Alphabet::from_symbols(s.terminal().name(), s.terminal().iter().cloned().chain([d.clone()]))?;
    let mut projection: BTreeMap<Symbol, Symbol> = s.projection().clone();
    projection.extend(deltas.into_iter().map(|x| (x, d.clone())));
    Ok(TilingSystem::new(terminal, tileset, projection)?)
}
