//! From a `k`-tiling system to an equivalent 2-tiling system.
//!
//! The picture cell `(i, j)` carries the `k×k` window of the `#`-extended
//! pre-image whose top-left corner is the cell's north-west neighbour, so the
//! cell's own pixel sits at window position `(1, 1)`. Windows that fit the
//! thick-bordered grid must be tiles; the others are `#`-shifted tiles and
//! only need to agree with their neighbours. The 2-tiles demand overlap
//! agreement between adjacent windows and the right `#` fringe at borders.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{id_symbol, symbol_id, LangError, TileSet, TilingSystem};
use crate::grid::{Alphabet, Symbol};

#[derive(Clone, Copy)]
struct Shape {
    top: bool,
    left: bool,
    /// First row offset `≥ 1` that is `#`; `k` when none.
    r0: usize,
    c0: usize,
}

fn shape(w: &[u16], k: usize) -> Option<Shape> {
    if w[k + 1] == 0 {
        return None;
    }
    let top = w[1] == 0;
    let left = w[k] == 0;
    let r0 = (1..k).find(|&r| w[r * k + 1] == 0).unwrap_or(k);
    let c0 = (1..k).find(|&c| w[k + c] == 0).unwrap_or(k);
    for r in 0..k {
        for c in 0..k {
            let hash = (top && r == 0) || (left && c == 0) || r >= r0 || c >= c0;
            if (w[r * k + c] == 0) != hash {
                return None;
            }
        }
    }
    Some(Shape { top, left, r0, c0 })
}

/// A window lies inside the thick-bordered grid.
fn is_real(s: Shape, k: usize) -> bool {
    (s.top || s.r0 + 1 >= k) && (s.left || s.c0 + 1 >= k)
}

fn shift(t: &[u16], k: usize, dr: usize, dc: usize) -> Vec<u16> {
    let mut w = vec![0u16; k * k];
    for r in 0..k - dr {
        for c in 0..k - dc {
            w[r * k + c] = t[(r + dr) * k + c + dc];
        }
    }
    w
}

/// Drops the first column and compares with the second window without its last.
fn h_compat(x: &[u16], y: &[u16], k: usize) -> bool {
    (0..k).all(|r| x[r * k + 1..(r + 1) * k] == y[r * k..(r + 1) * k - 1])
}

fn v_compat(x: &[u16], z: &[u16], k: usize) -> bool {
    x[k..] == z[..k * (k - 1)]
}

pub fn slt_to_local(s: &TilingSystem) -> Result<TilingSystem, LangError> {
    let t = s.tileset();
    let k = t.k();
    let mut windows: BTreeSet<Vec<u16>> = BTreeSet::new();
    for i in 0..t.len() {
        let tile = t.raw_tile(i);
        for dr in 0..k {
            for dc in 0..k {
                let w = shift(tile, k, dr, dc);
                if let Some(sh) = shape(&w, k) {
                    if !is_real(sh, k) || t.contains_raw(&w) {
                        windows.insert(w);
                    }
                }
            }
        }
    }
    let windows: Vec<Vec<u16>> = windows.into_iter().collect();
    let shapes: Vec<Shape> = windows.iter().map(|w| shape(w, k).expect("filtered")).collect();
    let width = windows.len().to_string().len();
    let names: Vec<Symbol> = windows
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let pixel = id_symbol(t.alphabet(), w[k + 1]);
            Symbol::new(&format!("{pixel}@{i:0width$}")).expect("valid token")
        })
        .collect();
    let local = Alphabet::from_symbols("local", names.iter().cloned())?;
    let ids: Vec<u16> = names.iter().map(|n| symbol_id(&local, n).unwrap()).collect();

    let in_t = |w: &Vec<u16>| t.contains_raw(w);
    let k2_ok_up = |x: usize| k != 2 || in_t(&shift(&windows[x], k, 1, 0));
    let k2_ok_left = |x: usize| k != 2 || in_t(&shift(&windows[x], k, 0, 1));
    let k2_ok_corner = |x: usize| k != 2 || in_t(&shift(&windows[x], k, 1, 1));
    let top = |x: usize| shapes[x].top;
    let left = |x: usize| shapes[x].left;
    let bottom = |x: usize| shapes[x].r0 == 2;
    let right = |x: usize| shapes[x].c0 == 2;

    let mut by_left: HashMap<Vec<u16>, Vec<usize>> = HashMap::new();
    let mut by_top: HashMap<Vec<u16>, Vec<usize>> = HashMap::new();
    for (i, w) in windows.iter().enumerate() {
        let lk: Vec<u16> = (0..k).flat_map(|r| w[r * k..(r + 1) * k - 1].to_vec()).collect();
        by_left.entry(lk).or_default().push(i);
        by_top.entry(w[..k * (k - 1)].to_vec()).or_default().push(i);
    }
    let empty = Vec::new();
    let h_next = |x: usize| -> &Vec<usize> {
        let w = &windows[x];
        let key: Vec<u16> = (0..k).flat_map(|r| w[r * k + 1..(r + 1) * k].to_vec()).collect();
        by_left.get(&key).unwrap_or(&empty)
    };
    let v_next = |x: usize| -> &Vec<usize> { by_top.get(&windows[x][k..]).unwrap_or(&empty) };

    let mut data: Vec<u16> = Vec::new();
    let mut push = |a: u16, b: u16, c: u16, d: u16| data.extend_from_slice(&[a, b, c, d]);
    let n = windows.len();
    for x in 0..n {
        let ix = ids[x];
        for &y in h_next(x) {
            for &z in v_next(x) {
                for &w in h_next(z) {
                    if v_compat(&windows[y], &windows[w], k) {
                        push(ix, ids[y], ids[z], ids[w]);
                    }
                }
            }
            if top(x) && top(y) {
                push(0, 0, ix, ids[y]);
            }
            if bottom(x) && bottom(y) && k2_ok_up(x) && k2_ok_up(y) {
                push(ix, ids[y], 0, 0);
            }
        }
        for &z in v_next(x) {
            if left(x) && left(z) {
                push(0, ix, 0, ids[z]);
            }
            if right(x) && right(z) && k2_ok_left(x) && k2_ok_left(z) {
                push(ix, 0, ids[z], 0);
            }
        }
        if top(x) && left(x) {
            push(0, 0, 0, ix);
        }
        if top(x) && right(x) && k2_ok_left(x) {
            push(0, 0, ix, 0);
        }
        if left(x) && bottom(x) && k2_ok_up(x) {
            push(0, ix, 0, 0);
        }
        if bottom(x) && right(x) && k2_ok_up(x) && k2_ok_left(x) && k2_ok_corner(x) {
            push(ix, 0, 0, 0);
        }
    }
    debug_assert!(windows.iter().enumerate().all(|(x, _)| h_next(x).iter().all(|&y| h_compat(
        &windows[x],
        &windows[y],
        k
    ))));
    let tiles = TileSet::from_raw(2, local.clone(), data);
    let projection: BTreeMap<Symbol, Symbol> = windows
        .iter()
        .zip(&names)
        .map(|(w, name)| (name.clone(), s.projection()[&id_symbol(t.alphabet(), w[k + 1])].clone()))
        .collect();
    TilingSystem::new(s.terminal().clone(), tiles, projection)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Picture;
    use crate::lang::tests::{ex1_k2, ex1_k3, gamma2};
    use crate::lang::{compare_languages, tileset_from_pictures, DEFAULT_BUDGET};
    use proptest::prelude::*;

    #[test]
    fn three_tile_example_becomes_local() {
        let s3 = ex1_k3();
        let s2 = slt_to_local(&s3).unwrap();
        assert_eq!(s2.k(), 2);
        assert!(s2.local().len() <= s3.local().len() * s3.tileset().len());
        assert!(compare_languages(&s2, &s3, 5, 10, DEFAULT_BUDGET).unwrap().equal());
    }

    #[test]
    fn local_input_is_preserved() {
        let s = ex1_k2();
        let out = slt_to_local(&s).unwrap();
        assert!(compare_languages(&out, &s, 4, 6, DEFAULT_BUDGET).unwrap().equal());
    }

    fn arb_picture() -> impl Strategy<Value = Picture> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0..2u8, r * c).prop_map(move |v| {
                let cells = v.iter().map(|x| Symbol::new(["n", "→"][*x as usize]).unwrap()).collect();
                Picture::new(r, c, cells).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn random_k_systems_keep_their_language(p in arb_picture(), q in arb_picture(), k in 2usize..5) {
            let t = tileset_from_pictures([&p, &q], k, &gamma2()).unwrap();
            let s = TilingSystem::identity(t);
            let out = slt_to_local(&s).unwrap();
            let cmp = compare_languages(&out, &s, 4, 5, DEFAULT_BUDGET).unwrap();
            prop_assert!(cmp.equal(), "{:?}", cmp);
        }
    }
}
