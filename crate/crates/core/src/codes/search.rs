//! Searches for binary comma-free word codes and small comma-free picture codes.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::picture::is_comma_free_picture_code;
use super::words::binary_alphabet;
use super::{eastman_count, is_prime, CodeError, PictureCode, WordCode};
use crate::grid::{Alphabet, Picture};

/// Outcome of a bounded word-code search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordCodeSearch {
    Found(WordCode),
    /// The budget ran out before the search space was exhausted.
    Unknown {
        nodes: u64,
    },
}

fn rotate(w: u32, k: usize, r: usize) -> u32 {
    let mask = (1u32 << k) - 1;
    if r == 0 {
        w
    } else {
        ((w << r) | (w >> (k - r))) & mask
    }
}

/// Words are `k`-bit integers, most significant bit first.
struct WordSet {
    k: usize,
    words: Vec<u32>,
}

impl WordSet {
    fn contains(&self, w: u32) -> bool {
        self.words.contains(&w)
    }

    fn internal_factors(&self, x: u32, z: u32) -> impl Iterator<Item = u32> {
        let k = self.k;
        let xz = ((x as u64) << k) | z as u64;
        let mask = (1u64 << k) - 1;
        (1..k).map(move |o| ((xz >> (k - o)) & mask) as u32)
    }

    /// Whether adding `w` keeps the set comma-free, given that it already is.
    fn accepts(&self, w: u32) -> bool {
        let mut all = self.words.clone();
        all.push(w);
        for &x in &all {
            for &z in &all {
                let touches = x == w || z == w;
                for f in self.internal_factors(x, z) {
                    if f == w || (touches && self.contains(f)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Representatives of the primitive conjugacy classes of binary words.
fn primitive_classes(k: usize) -> Vec<u32> {
    (0..1u32 << k)
        .filter(|&w| {
            let rots: Vec<u32> = (0..k).map(|r| rotate(w, k, r)).collect();
            rots.iter().all(|&r| r >= w) && (1..k).all(|r| rots[r] != w)
        })
        .collect()
}

/// Backtracks over primitive classes, choosing at most one rotation of each.
pub fn find_comma_free_word_code(k: usize, target: usize, budget: u64) -> Result<WordCodeSearch, CodeError> {
    if k == 0 || k > 24 {
        return Err(CodeError::Domain(format!("word length {k} outside 1..=24")));
    }
    let alphabet = binary_alphabet();
    let to_code = |ws: &[u32]| -> Result<WordCode, CodeError> {
        let strs: Vec<String> = ws.iter().map(|w| format!("{w:0k$b}")).collect();
        WordCode::from_strs(&alphabet, &strs)
    };
    if target == 0 {
        return Err(CodeError::Domain("target must be positive".into()));
    }
    if is_prime(k as u64) {
        let nu = eastman_count(k as u32)? as usize;
        if target > nu {
            return Err(CodeError::Infeasible { k, target, reason: format!("the maximum size is {nu}") });
        }
    }
    let classes = primitive_classes(k);
    if target > classes.len() {
        return Err(CodeError::Infeasible {
            k,
            target,
            reason: format!("only {} primitive conjugacy classes exist", classes.len()),
        });
    }
    let mut set = WordSet { k, words: Vec::new() };
    let mut nodes = 0u64;
    match backtrack(&classes, 0, target, &mut set, &mut nodes, budget) {
        Some(true) => Ok(WordCodeSearch::Found(to_code(&set.words)?)),
        Some(false) => Err(CodeError::Infeasible { k, target, reason: "exhaustive class search failed".into() }),
        None => Ok(WordCodeSearch::Unknown { nodes }),
    }
}

/// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
fn backtrack(
    classes: &[u32],
    next: usize,
    target: usize,
    set: &mut WordSet,
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    if set.words.len() == target {
        return Some(true);
    }
    if set.words.len() + classes.len() - next < target {
        return Some(false);
    }
    *nodes += 1;
    if *nodes > budget {
        return None;
    }
    let rep = classes[next];
    let mut rots: Vec<u32> = (0..set.k).map(|r| rotate(rep, set.k, r)).collect();
    rots.sort_unstable();
    rots.dedup();
    for w in rots {
        if set.accepts(w) {
            set.words.push(w);
            let r = backtrack(classes, next + 1, target, set, nodes, budget);
            if r != Some(false) {
                return r;
            }
            set.words.pop();
        }
    }
    backtrack(classes, next + 1, target, set, nodes, budget)
}

/// Greedy random search: scans all `k×k` pictures in a seeded order, keeping
/// each one that leaves the set comma-free, until `target` are kept.
pub fn search_comma_free_picture_code(
    alphabet: &Alphabet,
    k: usize,
    target: usize,
    seed: u64,
) -> Result<PictureCode, CodeError> {
    let n = alphabet.len();
    let cells = k * k;
    let total = (n as f64).powi(cells as i32);
    if total > 1e6 {
        return Err(CodeError::Budget { budget: 1_000_000, required: total as u128, what: "candidate pictures" });
    }
    let mut order: Vec<usize> = (0..total as usize).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut chosen: Vec<Picture> = Vec::new();
    for idx in order {
        if chosen.len() == target {
            break;
        }
        let mut v = idx;
        let cells: Vec<_> = (0..cells)
            .map(|_| {
                let s = alphabet.symbols()[v % n].clone();
                v /= n;
                s
            })
            .collect();
        chosen.push(Picture::new(k, k, cells)?);
        let trial = PictureCode::new(k, alphabet.clone(), chosen.clone())?;
        if !is_comma_free_picture_code(&trial) {
            chosen.pop();
        }
    }
    PictureCode::new(k, alphabet.clone(), chosen)
}
