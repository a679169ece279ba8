//! Exact language counting by a cell-by-cell transfer over window residuals.
//!
//! The tiles form a trie; minimizing it identifies window prefixes with the
//! same set of completions. A partial picture is summarized by the residual
//! node of every open window, which is all the remaining cells can observe.
//! Counting therefore scales with the number of distinct residual profiles
//! rather than with the number of pictures.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::{picture_ids, LangError, TileSet};
use crate::grid::Picture;

const NONE: u32 = u32::MAX;
const LEAF: u32 = 0;

/// Minimized trie over equal-length words.
struct Dawg {
    children: Vec<Vec<(u16, u32)>>,
    root: u32,
}

impl Dawg {
    /// `words` is sorted, flat, with stride `len`.
    fn build(words: &[u16], len: usize) -> Dawg {
        let mut children: Vec<Vec<(u16, u32)>> = vec![Vec::new()];
        let mut intern: HashMap<Vec<(u16, u32)>, u32> = HashMap::new();
        let count = words.len() / len;
        let root = if count == 0 { NONE } else { Self::node(words, len, 0, count, 0, &mut children, &mut intern) };
        Dawg { children, root }
    }

    fn node(
        words: &[u16],
        len: usize,
        lo: usize,
        hi: usize,
        depth: usize,
        children: &mut Vec<Vec<(u16, u32)>>,
        intern: &mut HashMap<Vec<(u16, u32)>, u32>,
    ) -> u32 {
        if depth == len {
            return LEAF;
        }
        let mut kids = Vec::new();
        let mut i = lo;
        while i < hi {
            let s = words[i * len + depth];
            let mut j = i;
            while j < hi && words[j * len + depth] == s {
                j += 1;
            }
            kids.push((s, Self::node(words, len, i, j, depth + 1, children, intern)));
            i = j;
        }
        if let Some(&id) = intern.get(&kids) {
            return id;
        }
        let id = children.len() as u32;
        children.push(kids.clone());
        intern.insert(kids, id);
        id
    }

    fn step(&self, node: u32, s: u16) -> Option<u32> {
        let kids = &self.children[node as usize];
        kids.binary_search_by_key(&s, |&(x, _)| x).ok().map(|i| kids[i].1)
    }
}

/// Checks that complete aligned `k×k` blocks of each picture lie in a set.
#[derive(Clone, Debug)]
pub struct BlockMonitor {
    pub k: usize,
    pub blocks: BTreeSet<Picture>,
}

/// Pictures of one size: all of them, and those passing the monitor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCount {
    pub rows: usize,
    pub cols: usize,
    pub total: u128,
    pub good: u128,
}

/// Counts `L(t)` at every size up to the bounds.
pub fn count_language(
    t: &TileSet,
    max_rows: usize,
    max_cols: usize,
    monitor: Option<&BlockMonitor>,
) -> Result<Vec<SizeCount>, LangError> {
    let windows = Dawg::build(t.raw(), t.k() * t.k());
    let blocks = match monitor {
        None => None,
        Some(mon) => {
            let mut flat: Vec<Vec<u16>> =
                mon.blocks.iter().map(|b| picture_ids(t.alphabet(), b)).collect::<Result<_, _>>()?;
            flat.sort();
            Some((mon.k, Dawg::build(&flat.concat(), mon.k * mon.k)))
        }
    };
    let sizes: Vec<(usize, usize)> = (1..=max_rows).flat_map(|m| (1..=max_cols).map(move |n| (m, n))).collect();
    Ok(sizes.par_iter().map(|&(m, n)| count_size(t, &windows, blocks.as_ref(), m, n)).collect())
}

fn count_size(t: &TileSet, win: &Dawg, blocks: Option<&(usize, Dawg)>, m: usize, n: usize) -> SizeCount {
    let k = t.k();
    let (rr, cc) = ((m + 2).max(k), (n + 2).max(k));
    let wc = cc - k + 1;
    let nw = k * wc;
    let (kb, bdawg, bcols, brows) = match blocks {
        Some((kb, d)) => (*kb, Some(d), n / kb, m / kb),
        None => (1, None, 0, 0),
    };
    // Layout: window slots, block slots, bad flag.
    let width = nw + bcols + 1;
    let mut states: HashMap<Vec<u32>, u128> = HashMap::new();
    if win.root != NONE {
        let mut init = vec![NONE; width];
        init[width - 1] = 0;
        states.insert(init, 1);
    }
    let alphabet: Vec<u16> = (1..=t.alphabet().len() as u16).collect();
    for r in 0..rr {
        for c in 0..cc {
            let interior = (1..=m).contains(&r) && (1..=n).contains(&c);
            let syms: &[u16] = if interior { &alphabet } else { &[0] };
            let mut next: HashMap<Vec<u32>, u128> = HashMap::with_capacity(states.len());
            for (state, count) in &states {
                'sym: for &s in syms {
                    let mut st = state.clone();
                    for a in r.saturating_sub(k - 1)..=r.min(rr - k) {
                        for b in c.saturating_sub(k - 1)..=c.min(cc - k) {
                            let slot = (a % k) * wc + b;
                            let d = (r - a) * k + (c - b);
                            let cur = if d == 0 { win.root } else { st[slot] };
                            match win.step(cur, s) {
                                None => continue 'sym,
                                Some(nx) => st[slot] = if d + 1 == k * k { NONE } else { nx },
                            }
                        }
                    }
                    if let Some(bd) = bdawg {
                        let (i, j) = (r.wrapping_sub(1), c.wrapping_sub(1));
                        if interior && i < brows * kb && j < bcols * kb && st[width - 1] == 0 {
                            let slot = nw + j / kb;
                            let d = (i % kb) * kb + j % kb;
                            let cur = if d == 0 { bd.root } else { st[slot] };
                            match bd.step(cur, s) {
                                None => {
                                    for x in &mut st[nw..width - 1] {
                                        *x = NONE;
                                    }
                                    st[width - 1] = 1;
                                }
                                Some(nx) => st[slot] = if d + 1 == kb * kb { NONE } else { nx },
                            }
                        }
                    }
                    *next.entry(st).or_insert(0) += count;
                }
            }
            states = next;
        }
    }
    let total: u128 = states.values().sum();
    let good: u128 = states.iter().filter(|(s, _)| s[width - 1] == 0).map(|(_, c)| c).sum();
    SizeCount { rows: m, cols: n, total, good }
}
