//! Tile sets of size `2k` for code-picture languages.
//!
//! A `2k×2k` window of a bordered picture tessellated by `k×k` blocks meets
//! at most three block rows and three block columns. Every window therefore
//! already occurs in a bordered picture of at most 3×3 blocks, with the
//! border present exactly on the sides the window touches.

use std::collections::{HashMap, HashSet};

use super::{CodeError, PictureCode};
use crate::grid::Picture;
use crate::lang::{picture_ids, symbol_id, TileSet};

/// Block coordinates, and the inclusive offset rectangle `(i0, j0, i1, j1)` inside a block.
type Pos = (usize, usize);
type Rect = (usize, usize, usize, usize);

/// Default cap on harvested tiles.
pub const DEFAULT_TILE_BUDGET: u64 = 20_000_000;

/// A cell of a bordered layout of `r×c` blocks: border, or block and offset.
#[derive(Clone, Copy)]
enum Cell {
    Border,
    Block { bi: usize, bj: usize, oi: usize, oj: usize },
}

fn layout_axis(blocks: usize, k: usize) -> Vec<Option<(usize, usize)>> {
    let len = (blocks * k + 2).max(2 * k);
    (0..len).map(|g| if g == 0 || g > blocks * k { None } else { Some(((g - 1) / k, (g - 1) % k)) }).collect()
}

/// The `2k`-tiles of bordered pictures over `X^{++}`.
pub fn closure_tileset(x: &PictureCode, max_tiles: u64) -> Result<TileSet, CodeError> {
    let k = x.k();
    let big = 2 * k;
    let alphabet = x.alphabet().clone();
    let raw: Vec<Vec<u16>> = x.pictures().iter().map(|p| picture_ids(&alphabet, p)).collect::<Result<_, _>>()?;
    // Distinct contents of a sub-rectangle across the code, memoized.
    let mut rects: HashMap<(usize, usize, usize, usize), Vec<Vec<u16>>> = HashMap::new();
    let mut data: Vec<u16> = Vec::new();
    let mut produced = 0u64;
    for r in 1..=3 {
        for c in 1..=3 {
            let rows = layout_axis(r, k);
            let cols = layout_axis(c, k);
            for a in 0..=rows.len() - big {
                for b in 0..=cols.len() - big {
                    let cells: Vec<Cell> = (a..a + big)
                        .flat_map(|g| (b..b + big).map(move |h| (g, h)))
                        .map(|(g, h)| match (rows[g], cols[h]) {
                            (Some((bi, oi)), Some((bj, oj))) => Cell::Block { bi, bj, oi, oj },
                            _ => Cell::Border,
                        })
                        .collect();
                    // Touched blocks with the rectangle each contributes.
                    let mut touched: Vec<(Pos, Rect)> = Vec::new();
                    for cell in &cells {
                        if let Cell::Block { bi, bj, oi, oj } = *cell {
                            match touched.iter_mut().find(|(blk, _)| *blk == (bi, bj)) {
                                Some((_, rect)) => {
                                    rect.0 = rect.0.min(oi);
                                    rect.1 = rect.1.min(oj);
                                    rect.2 = rect.2.max(oi);
                                    rect.3 = rect.3.max(oj);
                                }
                                None => touched.push(((bi, bj), (oi, oj, oi, oj))),
                            }
                        }
                    }
                    for &(_, rect) in &touched {
                        rects.entry(rect).or_insert_with(|| {
                            let (i0, j0, i1, j1) = rect;
                            let mut v: Vec<Vec<u16>> = raw
                                .iter()
                                .map(|p| (i0..=i1).flat_map(|i| (j0..=j1).map(move |j| p[i * k + j])).collect())
                                .collect();
                            v.sort_unstable();
                            v.dedup();
                            v
                        });
                    }
                    let options: Vec<&Vec<Vec<u16>>> = touched.iter().map(|(_, rect)| &rects[rect]).collect();
                    let count: u128 = options.iter().map(|o| o.len() as u128).product();
                    produced = produced.saturating_add(count.min(u64::MAX as u128) as u64);
                    if produced > max_tiles {
                        return Err(CodeError::Budget { budget: max_tiles, required: produced as u128, what: "tiles" });
                    }
                    if count == 0 {
                        continue;
                    }
                    let mut idx = vec![0usize; touched.len()];
                    loop {
                        for cell in &cells {
                            match *cell {
                                Cell::Border => data.push(0),
                                Cell::Block { bi, bj, oi, oj } => {
                                    let t = touched.iter().position(|(blk, _)| *blk == (bi, bj)).expect("touched");
                                    let (i0, j0, _, j1) = touched[t].1;
                                    let w = j1 - j0 + 1;
                                    data.push(options[t][idx[t]][(oi - i0) * w + (oj - j0)]);
                                }
                            }
                        }
                        if !advance(&mut idx, &options) {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(TileSet::from_raw(big, alphabet, data))
}

fn advance(idx: &mut [usize], options: &[&Vec<Vec<u16>>]) -> bool {
    for t in (0..idx.len()).rev() {
        idx[t] += 1;
        if idx[t] < options[t].len() {
            return true;
        }
        idx[t] = 0;
    }
    false
}

/// `closure_tileset(X)` minus the encodings of the border-free forbidden
/// 2-tiles. Border constraints of `T2` are not expressed by this set.
pub fn closure_minus_forbidden(t2: &TileSet, x: &PictureCode, max_tiles: u64) -> Result<TileSet, CodeError> {
    check_bijection(t2, x)?;
    let closure = closure_tileset(x, max_tiles)?;
    let gamma = t2.alphabet().symbols();
    let n = gamma.len();
    if (n as u128).pow(4) > max_tiles as u128 {
        return Err(CodeError::Budget { budget: max_tiles, required: (n as u128).pow(4), what: "forbidden tiles" });
    }
    let mut forbidden: HashSet<Picture> = HashSet::new();
    for v in 0..n.pow(4) {
        let cells = (0..4).map(|d| gamma[v / n.pow(d) % n].clone()).collect();
        let tile = Picture::new(2, 2, cells)?;
        if !t2.contains(&tile) {
            forbidden.insert(x.encode(&tile)?);
        }
    }
    Ok(closure.filter(|p| !forbidden.contains(p)))
}

fn check_bijection(t2: &TileSet, x: &PictureCode) -> Result<(), CodeError> {
    if t2.k() != 2 {
        return Err(CodeError::Domain(format!("expected a 2-tile set, got size {}", t2.k())));
    }
    let coding = x.coding().ok_or_else(|| CodeError::Domain("code has no coding".into()))?;
    let gamma = t2.alphabet();
    if x.len() != gamma.len() || coding.len() != gamma.len() || !gamma.iter().all(|s| coding.contains_key(s)) {
        return Err(CodeError::Domain(format!(
            "coding must be a bijection from the {} local symbols onto the code ({} pictures, {} coded)",
            gamma.len(),
            x.len(),
            coding.len()
        )));
    }
    Ok(())
}

/// Geometry of one patch shape: size and which sides carry the border.
#[derive(Clone, Copy, Debug)]
struct Side {
    len: usize,
    before: bool,
    after: bool,
}

/// Shapes along one axis: three cells with any border, or fewer cells with both.
fn sides() -> Vec<Side> {
    let mut v = Vec::new();
    for before in [false, true] {
        for after in [false, true] {
            v.push(Side { len: 3, before, after });
        }
    }
    v.push(Side { len: 1, before: true, after: true });
    v.push(Side { len: 2, before: true, after: true });
    v
}

/// The `2k`-tiles of the encodings of `L(t2)`.
///
/// Tiles are harvested from the encodings of all bordered patches of at most
/// 3×3 local symbols whose 2×2 windows are in `t2`. Every window of an
/// encoded picture lies in such a patch, and every tile encodes a patch
/// consistent with `t2`, so the tile set recognizes exactly the encodings
/// whenever the code is comma-free.
pub fn encoded_local_tileset(t2: &TileSet, x: &PictureCode, max_tiles: u64) -> Result<TileSet, CodeError> {
    check_bijection(t2, x)?;
    let k = x.k();
    let big = 2 * k;
    let lambda = x.alphabet().clone();
    let gamma = t2.alphabet();
    let coding = x.coding().expect("checked");
    // Code picture ids, indexed by local symbol id.
    let mut blocks: Vec<Vec<u16>> = vec![Vec::new()];
    for s in gamma.iter() {
        blocks.push(picture_ids(&lambda, &coding[s])?);
    }
    debug_assert!(gamma.iter().enumerate().all(|(i, s)| symbol_id(gamma, s) == Some(i as u16 + 1)));
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut data: Vec<u16> = Vec::new();
    for rs in sides() {
        for cs in sides() {
            let eh = rs.len + rs.before as usize + rs.after as usize;
            let ew = cs.len + cs.before as usize + cs.after as usize;
            let (pi, pj) = (rs.before as usize, cs.before as usize);
            // Windows to check once a patch cell is placed: those whose last patch cell it is.
            let mut checks: Vec<Vec<usize>> = vec![Vec::new(); rs.len * cs.len];
            for a in 0..eh - 1 {
                for b in 0..ew - 1 {
                    let last = [(a + 1, b + 1), (a + 1, b), (a, b + 1), (a, b)]
                        .into_iter()
                        .filter(|&(i, j)| (pi..pi + rs.len).contains(&i) && (pj..pj + cs.len).contains(&j))
                        .map(|(i, j)| (i - pi) * cs.len + (j - pj))
                        .max();
                    if let Some(l) = last {
                        checks[l].push(a * ew + b);
                    }
                }
            }
            let mut grid = vec![0u16; eh * ew];
            let mut patch = Vec::with_capacity(rs.len * cs.len);
            let mut emit = |grid: &[u16]| -> Result<(), CodeError> {
                harvest(grid, rs, cs, ew, k, &blocks, &mut seen, &mut data);
                if seen.len() as u64 > max_tiles {
                    return Err(CodeError::Budget { budget: max_tiles, required: seen.len() as u128, what: "tiles" });
                }
                Ok(())
            };
            fill(t2, &mut grid, &mut patch, rs, cs, ew, &checks, &mut emit)?;
        }
    }
    drop(seen);
    Ok(TileSet::from_raw(big, lambda, data))
}

#[allow(clippy::too_many_arguments)]
fn fill(
    t2: &TileSet,
    grid: &mut [u16],
    patch: &mut Vec<u16>,
    rs: Side,
    cs: Side,
    ew: usize,
    checks: &[Vec<usize>],
    emit: &mut dyn FnMut(&[u16]) -> Result<(), CodeError>,
) -> Result<(), CodeError> {
    let d = patch.len();
    if d == rs.len * cs.len {
        return emit(grid);
    }
    let (i, j) = (d / cs.len + rs.before as usize, d % cs.len + cs.before as usize);
    for s in 1..=t2.alphabet().len() as u16 {
        grid[i * ew + j] = s;
        let ok = checks[d].iter().all(|&w| {
            let tile = [grid[w], grid[w + 1], grid[w + ew], grid[w + ew + 1]];
            t2.contains_raw(&tile)
        });
        if ok {
            patch.push(s);
            fill(t2, grid, patch, rs, cs, ew, checks, emit)?;
            patch.pop();
        }
    }
    grid[i * ew + j] = 0;
    Ok(())
}

/// Encodes a complete patch and collects its `2k` windows.
#[allow(clippy::too_many_arguments)]
fn harvest(
    grid: &[u16],
    rs: Side,
    cs: Side,
    ew: usize,
    k: usize,
    blocks: &[Vec<u16>],
    seen: &mut HashSet<Vec<u16>>,
    data: &mut Vec<u16>,
) {
    let big = 2 * k;
    let axis = |s: Side| -> Vec<Option<(usize, usize)>> {
        let mut v: Vec<Option<(usize, usize)>> = Vec::new();
        if s.before {
            v.push(None);
        }
        for b in 0..s.len {
            for o in 0..k {
                v.push(Some((b, o)));
            }
        }
        if s.after {
            v.push(None);
            // Thick border for pictures shorter than a tile.
            while s.before && v.len() < big {
                v.push(None);
            }
        }
        v
    };
    let (rows, cols) = (axis(rs), axis(cs));
    if rows.len() < big || cols.len() < big {
        return;
    }
    let (pi, pj) = (rs.before as usize, cs.before as usize);
    let pic: Vec<u16> = rows
        .iter()
        .flat_map(|r| cols.iter().map(move |c| (r, c)))
        .map(|(r, c)| match (r, c) {
            (Some((bi, oi)), Some((bj, oj))) => blocks[grid[(bi + pi) * ew + bj + pj] as usize][oi * k + oj],
            _ => 0,
        })
        .collect();
    let w = cols.len();
    for a in 0..=rows.len() - big {
        for b in 0..=w - big {
            let win: Vec<u16> = (a..a + big).flat_map(|i| pic[i * w + b..i * w + b + big].iter().copied()).collect();
            if seen.insert(win.clone()) {
                data.extend_from_slice(&win);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::family::tests::x3;
    use crate::codes::picture::tests::singleton4;
    use crate::grid::{Alphabet, Symbol};
    use crate::lang::tests::pic;
    use crate::lang::{enumerate_language, slt_member, tileset_from_pictures, DEFAULT_BUDGET};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn singleton_closure_language() {
        let s = singleton4();
        let t = closure_tileset(&s, 1_000_000).unwrap();
        let lang = enumerate_language(&t, 8, 8, DEFAULT_BUDGET).unwrap();
        let x = &s.pictures()[0];
        let expected: BTreeSet<Picture> = [
            x.clone(),
            x.concat_h(x).unwrap(),
            x.concat_v(x).unwrap(),
            x.concat_h(x).unwrap().concat_v(&x.concat_h(x).unwrap()).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(lang, expected);
    }

    #[test]
    fn closure_contains_harvested_tiles() {
        let x = x3();
        let t = x3_closure();
        assert_eq!(t.len(), 925_776);
        let p = &x.pictures()[3];
        let q = &x.pictures()[11];
        let big = p.concat_h(q).unwrap().concat_v(&q.concat_h(p).unwrap()).unwrap();
        let direct = tileset_from_pictures([&big], 6, x.alphabet()).unwrap();
        assert!(direct.tiles().all(|tile| t.contains(&tile)));
        assert!(slt_member(&big, t).unwrap());
    }

    fn checker_t2() -> (TileSet, PictureCode) {
        let g = Alphabet::new("G", ["p", "q"]).unwrap();
        let board = pic("p q p q\nq p q p\np q p q\nq p q p");
        let mut tiles = BTreeSet::new();
        for r in 1..=4 {
            for c in 1..=4 {
                tiles.extend(board.subpicture(1, 1, r, c).unwrap().thick_bordered(2).unwrap().k_tiles(2));
            }
        }
        let t2 = TileSet::new(2, g.clone(), tiles).unwrap();
        let x = x3();
        let sub = PictureCode::new(3, x.alphabet().clone(), vec![x.pictures()[0].clone(), x.pictures()[9].clone()])
            .unwrap()
            .assign_coding(&g)
            .unwrap();
        (t2, sub)
    }

    #[test]
    fn encoded_local_language_matches_encodings() {
        let (t2, x) = checker_t2();
        let m = encoded_local_tileset(&t2, &x, DEFAULT_TILE_BUDGET).unwrap();
        let local = enumerate_language(&t2, 3, 3, DEFAULT_BUDGET).unwrap();
        let encoded: BTreeSet<Picture> = local.iter().map(|p| x.encode(p).unwrap()).collect();
        let lang = enumerate_language(&m, 9, 9, DEFAULT_BUDGET).unwrap();
        assert_eq!(lang, encoded);
    }

    #[test]
    fn empty_local_set_gives_empty_language() {
        let (t2, x) = checker_t2();
        let empty = TileSet::empty(2, t2.alphabet().clone());
        let m = encoded_local_tileset(&empty, &x, DEFAULT_TILE_BUDGET).unwrap();
        assert!(m.is_empty());
    }

    #[test]
    fn bijection_is_required() {
        let (t2, _) = checker_t2();
        let g = t2.alphabet().clone();
        let x = x3().assign_coding(&g).unwrap();
        assert!(encoded_local_tileset(&t2, &x, 1000).is_err());
    }

    fn x3_closure() -> &'static TileSet {
        static T: std::sync::OnceLock<TileSet> = std::sync::OnceLock::new();
        T.get_or_init(|| closure_tileset(&x3(), DEFAULT_TILE_BUDGET).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn flipped_bit_breaks_membership(seed in proptest::collection::vec(0usize..16, 4), pos in 0usize..36) {
            let x = x3();
            let t = x3_closure();
            let b: Vec<&Picture> = seed.iter().map(|&i| &x.pictures()[i]).collect();
            let p = b[0].concat_h(b[1]).unwrap().concat_v(&b[2].concat_h(b[3]).unwrap()).unwrap();
            let (i, j) = (pos / 6 + 1, pos % 6 + 1);
            let flipped = p.map_cells({
                let mut n = 0;
                move |s| {
                    n += 1;
                    if n == (i - 1) * 6 + j {
                        Some(Symbol::new(if s.as_str() == "0" { "1" } else { "0" }).unwrap())
                    } else {
                        Some(s.clone())
                    }
                }
            }).unwrap();
            let blocks = flipped.tessellate(3).unwrap().block_set();
            let in_code = blocks.iter().all(|blk| x.contains(blk));
            prop_assert_eq!(slt_member(&flipped, t).unwrap(), in_code);
        }
    }
}
