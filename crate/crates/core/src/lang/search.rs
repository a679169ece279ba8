//! Row-major backtracking over the thick-bordered grid.
//!
//! Every `k×k` window keeps the range of sorted tiles matching its cells
//! assigned so far; a window whose range empties fails at once. At each row
//! start, the last `k-1` rows determine every pending window, so states that
//! already failed there are memoized as dead.

use std::collections::HashSet;

use super::TileSet;

pub(crate) enum Candidates {
    /// The same symbols at every picture cell.
    Uniform(Vec<u16>),
    /// Row-major per picture cell.
    PerCell(Vec<Vec<u16>>),
}

impl Candidates {
    fn at(&self, i: usize, j: usize, n: usize) -> &[u16] {
        match self {
            Candidates::Uniform(v) => v,
            Candidates::PerCell(v) => &v[i * n + j],
        }
    }
}

pub(crate) enum Found {
    Some(Vec<u16>),
    None,
    Budget,
}

struct Budget;

struct Engine<'a> {
    data: &'a [u16],
    ntiles: u32,
    k: usize,
    kk: usize,
    m: usize,
    n: usize,
    rr: usize,
    cc: usize,
    wc: usize,
    grid: Vec<u16>,
    lo: Vec<u32>,
    hi: Vec<u32>,
    undo: Vec<(u32, u32, u32)>,
    nodes: u64,
    budget: u64,
    dead: HashSet<(usize, Vec<u16>)>,
    first_only: bool,
    proj: Option<&'a [u16]>,
    solutions: HashSet<Vec<u16>>,
    found: u64,
}

impl<'a> Engine<'a> {
    fn new(t: &'a TileSet, m: usize, n: usize, budget: u64, first_only: bool, proj: Option<&'a [u16]>) -> Self {
        let k = t.k();
        let (rr, cc) = ((m + 2).max(k), (n + 2).max(k));
        let (wr, wc) = (rr - k + 1, cc - k + 1);
        Engine {
            data: t.raw(),
            ntiles: t.len() as u32,
            k,
            kk: k * k,
            m,
            n,
            rr,
            cc,
            wc,
            grid: vec![0; rr * cc],
            lo: vec![0; wr * wc],
            hi: vec![0; wr * wc],
            undo: Vec::new(),
            nodes: 0,
            budget,
            dead: HashSet::new(),
            first_only,
            proj,
            solutions: HashSet::new(),
            found: 0,
        }
    }

    /// Narrows every window containing `(r, c)` by symbol `s`.
    fn assign(&mut self, r: usize, c: usize, s: u16) -> bool {
        let k = self.k;
        let a0 = r.saturating_sub(k - 1);
        let a1 = r.min(self.rr - k);
        let b0 = c.saturating_sub(k - 1);
        let b1 = c.min(self.cc - k);
        for a in a0..=a1 {
            for b in b0..=b1 {
                let w = a * self.wc + b;
                let d = (r - a) * k + (c - b);
                let (mut lo, mut hi) = if d == 0 { (0, self.ntiles) } else { (self.lo[w], self.hi[w]) };
                let (data, kk) = (self.data, self.kk);
                let at = |t: u32| data[t as usize * kk + d];
                // First tile with symbol >= s, then first with symbol > s.
                let (mut l, mut h) = (lo, hi);
                while l < h {
                    let mid = (l + h) / 2;
                    if at(mid) < s {
                        l = mid + 1
                    } else {
                        h = mid
                    }
                }
                lo = l;
                h = hi;
                while l < h {
                    let mid = (l + h) / 2;
                    if at(mid) <= s {
                        l = mid + 1
                    } else {
                        h = mid
                    }
                }
                hi = l;
                self.undo.push((w as u32, self.lo[w], self.hi[w]));
                self.lo[w] = lo;
                self.hi[w] = hi;
                if lo >= hi {
                    return false;
                }
            }
        }
        true
    }

    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let (w, lo, hi) = self.undo.pop().unwrap();
            self.lo[w as usize] = lo;
            self.hi[w as usize] = hi;
        }
    }

    fn record(&mut self) {
        self.found += 1;
        let mut out = Vec::with_capacity(self.m * self.n);
        for i in 1..=self.m {
            for j in 1..=self.n {
                let s = self.grid[i * self.cc + j];
                out.push(match self.proj {
                    Some(p) => p[s as usize],
                    None => s,
                });
            }
        }
        self.solutions.insert(out);
    }

    /// Returns `Ok(true)` when the search should stop.
    fn dfs(&mut self, cands: &Candidates, pos: usize) -> Result<bool, Budget> {
        if pos == self.rr * self.cc {
            self.record();
            return Ok(self.first_only);
        }
        let (r, c) = (pos / self.cc, pos % self.cc);
        let key = if c == 0 && r >= 1 && r <= self.m {
            let from = r.saturating_sub(self.k - 1) * self.cc;
            let key = (r, self.grid[from..r * self.cc].to_vec());
            if self.dead.contains(&key) {
                return Ok(false);
            }
            Some(key)
        } else {
            None
        };
        let before = self.found;
        let interior = (1..=self.m).contains(&r) && (1..=self.n).contains(&c);
        let border = [0u16];
        let options: &[u16] = if interior { cands.at(r - 1, c - 1, self.n) } else { &border };
        for &s in options {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Budget);
            }
            let mark = self.undo.len();
            if self.assign(r, c, s) {
                self.grid[pos] = s;
                if self.dfs(cands, pos + 1)? {
                    return Ok(true);
                }
            }
            self.rollback(mark);
        }
        if let Some(key) = key {
            if self.found == before {
                self.dead.insert(key);
            }
        }
        Ok(false)
    }
}

/// The first solution in canonical order, as picture-cell ids.
pub(crate) fn find_one(t: &TileSet, m: usize, n: usize, cands: &Candidates, budget: u64) -> Found {
    if t.is_empty() {
        return Found::None;
    }
    let mut e = Engine::new(t, m, n, budget, true, None);
    match e.dfs(cands, 0) {
        Err(Budget) => Found::Budget,
        Ok(_) => match e.solutions.into_iter().next() {
            Some(s) => Found::Some(s),
            None => Found::None,
        },
    }
}

/// All solutions, mapped through `proj` when given; `None` on budget.
pub(crate) fn find_all(
    t: &TileSet,
    m: usize,
    n: usize,
    cands: &Candidates,
    proj: Option<&[u16]>,
    budget: u64,
) -> Option<HashSet<Vec<u16>>> {
    if t.is_empty() {
        return Some(HashSet::new());
    }
    let mut e = Engine::new(t, m, n, budget, false, proj);
    match e.dfs(cands, 0) {
        Err(Budget) => None,
        Ok(_) => Some(e.solutions),
    }
}
