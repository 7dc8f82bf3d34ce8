//! Backtracking search for homomorphisms with bitset domains and arc consistency.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;

/// A homomorphism problem `G -> H` with per-vertex allowed values.
#[derive(Clone, Debug)]
pub(crate) struct Problem<'a> {
    g: &'a Graph,
    words: usize,
    /// closed neighbourhoods of H (a loop puts `x` in its own row)
    nh: Vec<u64>,
    /// arc-consistent initial domains, or `None` if some domain is empty
    init: Option<Vec<u64>>,
}

fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + b)
        })
    })
}

fn popcount(row: &[u64]) -> u32 {
    row.iter().map(|w| w.count_ones()).sum()
}

impl<'a> Problem<'a> {
    /// `allowed(v, x)` restricts the value of `v`; adjacency and loops of `G` are added on top.
    pub fn new(g: &'a Graph, h: &Graph, allowed: impl Fn(usize, usize) -> bool) -> Self {
        let m = h.n();
        let words = m.div_ceil(64).max(1);
        let mut nh = vec![0u64; m * words];
        for x in 0..m {
            let row = &mut nh[x * words..(x + 1) * words];
            for &y in h.neighbors(x) {
                row[y / 64] |= 1 << (y % 64);
            }
            if h.has_loop(x) {
                row[x / 64] |= 1 << (x % 64);
            }
        }
        let mut dom = vec![0u64; g.n() * words];
        for v in 0..g.n() {
            for x in 0..m {
                if allowed(v, x) && (!g.has_loop(v) || h.has_loop(x)) {
                    dom[v * words + x / 64] |= 1 << (x % 64);
                }
            }
        }
        let mut p = Problem { g, words, nh, init: None };
        let init = {
            let mut s = Search::new(&p, dom);
            let all: Vec<usize> = (0..g.n()).collect();
            let ok = all.iter().all(|&v| popcount(s.row(v)) > 0) && s.propagate(&all);
            ok.then_some(s.dom)
        };
        p.init = init;
        p
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// Values left for vertex `v` after the initial propagation.
    pub fn initial_values(&self, v: usize) -> Vec<usize> {
        match &self.init {
            Some(d) => bits(&d[v * self.words..(v + 1) * self.words]).collect(),
            None => Vec::new(),
        }
    }

    /// Search state starting from the initial domains with `v` fixed to `x`.
    fn fixed_state(&self, v: usize, x: usize) -> Option<Search<'_>> {
        let mut s = Search::new(self, self.init.clone()?);
        s.assign(v, x).then_some(s)
    }
}

/// Shared stop conditions for a (possibly parallel) search.
pub(crate) struct Control {
    pub nodes: AtomicU64,
    pub max_nodes: u64,
    pub maps: AtomicUsize,
    pub max_maps: usize,
    pub stop: AtomicBool,
}

impl Control {
    pub fn new(max_nodes: u64, max_maps: usize) -> Self {
        Control { nodes: AtomicU64::new(0), max_nodes, maps: AtomicUsize::new(0), max_maps, stop: AtomicBool::new(false) }
    }

    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.max_nodes {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn found(&self) -> bool {
        if self.maps.fetch_add(1, Ordering::Relaxed) >= self.max_maps {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

struct Search<'p> {
    p: &'p Problem<'p>,
    dom: Vec<u64>,
    trail: Vec<(usize, u64)>,
    support: Vec<u64>,
    queue: Vec<usize>,
    queued: Vec<bool>,
}

impl<'p> Search<'p> {
    fn new(p: &'p Problem<'p>, dom: Vec<u64>) -> Self {
        let n = p.g.n();
        Search { p, dom, trail: Vec::new(), support: vec![0; p.words], queue: Vec::new(), queued: vec![false; n] }
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.dom[v * self.p.words..(v + 1) * self.p.words]
    }

    fn value(&self, v: usize) -> usize {
        bits(self.row(v)).next().expect("nonempty domain")
    }

    fn set_word(&mut self, idx: usize, val: u64) {
        self.trail.push((idx, self.dom[idx]));
        self.dom[idx] = val;
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (idx, old) = self.trail.pop().unwrap();
            self.dom[idx] = old;
        }
    }

    fn assign(&mut self, v: usize, x: usize) -> bool {
        let w = self.p.words;
        for k in 0..w {
            let keep = if k == x / 64 { self.dom[v * w + k] & (1 << (x % 64)) } else { 0 };
            if keep != self.dom[v * w + k] {
                self.set_word(v * w + k, keep);
            }
        }
        if popcount(self.row(v)) == 0 {
            return false;
        }
        self.propagate(&[v])
    }

    /// AC-3 from the given changed vertices; false on a wiped-out domain.
    fn propagate(&mut self, changed: &[usize]) -> bool {
        let w = self.p.words;
        for &v in changed {
            if !self.queued[v] {
                self.queued[v] = true;
                self.queue.push(v);
            }
        }
        let mut ok = true;
        while let Some(u) = self.queue.pop() {
            self.queued[u] = false;
            if !ok {
                continue;
            }
            self.support.iter_mut().for_each(|s| *s = 0);
            for x in bits(&self.dom[u * w..(u + 1) * w]).collect::<Vec<_>>() {
                for k in 0..w {
                    self.support[k] |= self.p.nh[x * w + k];
                }
            }
            for &t in self.p.g.neighbors(u) {
                let mut changed = false;
                let mut empty = true;
                for k in 0..w {
                    let old = self.dom[t * w + k];
                    let new = old & self.support[k];
                    if new != old {
                        self.set_word(t * w + k, new);
                        changed = true;
                    }
                    empty &= new == 0;
                }
                if empty {
                    ok = false;
                    break;
                }
                if changed && !self.queued[t] {
                    self.queued[t] = true;
                    self.queue.push(t);
                }
            }
        }
        ok
    }

    fn solution(&self) -> Vec<usize> {
        (0..self.p.g.n()).map(|v| self.value(v)).collect()
    }

    /// Static-order exhaustive search from vertex `v` on. Returns false when stopped.
    fn enumerate_from(&mut self, v: usize, ctl: &Control, emit: &mut dyn FnMut(Vec<usize>)) -> bool {
        if v == self.p.g.n() {
            if !ctl.found() {
                return false;
            }
            emit(self.solution());
            return true;
        }
        let values: Vec<usize> = bits(self.row(v)).collect();
        for x in values {
            if !ctl.tick() {
                return false;
            }
            let mark = self.trail.len();
            if self.assign(v, x) && !self.enumerate_from(v + 1, ctl, emit) {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }

    /// Randomised search: smallest domain first, random tie-break and value order.
    fn sample<R: Rng>(&mut self, rng: &mut R, nodes: &mut u64, max_nodes: u64) -> SampleOutcome {
        let w = self.p.words;
        let n = self.p.g.n();
        let mut best = u32::MAX;
        let mut pick = usize::MAX;
        let mut ties = 0u32;
        for v in 0..n {
            let c = popcount(&self.dom[v * w..(v + 1) * w]);
            if c < 2 {
                continue;
            }
            if c < best {
                best = c;
                pick = v;
                ties = 1;
            } else if c == best {
                ties += 1;
                if rng.gen_range(0..ties) == 0 {
                    pick = v;
                }
            }
        }
        if pick == usize::MAX {
            return SampleOutcome::Found(self.solution());
        }
        let mut values: Vec<usize> = bits(self.row(pick)).collect();
        values.shuffle(rng);
        for x in values {
            *nodes += 1;
            if *nodes > max_nodes {
                return SampleOutcome::OutOfBudget;
            }
            let mark = self.trail.len();
            if self.assign(pick, x) {
                match self.sample(rng, nodes, max_nodes) {
                    SampleOutcome::Exhausted => {}
                    other => return other,
                }
            }
            self.undo(mark);
        }
        SampleOutcome::Exhausted
    }
}

pub(crate) enum SampleOutcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

/// All solutions in lexicographic order, searched in parallel by the value of vertex 0.
/// Returns the solutions found and whether the search ran to completion.
pub(crate) fn enumerate(p: &Problem<'_>, ctl: &Control) -> (Vec<Vec<usize>>, bool) {
    use rayon::prelude::*;
    if p.init.is_none() {
        return (Vec::new(), true);
    }
    if p.n() == 0 {
        let complete = ctl.found();
        return (if complete { vec![Vec::new()] } else { Vec::new() }, complete);
    }
    let parts: Vec<(Vec<Vec<usize>>, bool)> = p
        .initial_values(0)
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            if !ctl.tick() {
                return (out, false);
            }
            let Some(mut s) = p.fixed_state(0, x) else { return (out, true) };
            let done = s.enumerate_from(1, ctl, &mut |m| out.push(m));
            (out, done)
        })
        .collect();
    let complete = parts.iter().all(|(_, d)| *d) && !ctl.stopped();
    (parts.into_iter().flat_map(|(o, _)| o).collect(), complete)
}

/// Counts solutions without storing them.
pub(crate) fn count(p: &Problem<'_>, ctl: &Control) -> (u64, bool) {
    use rayon::prelude::*;
    if p.init.is_none() {
        return (0, true);
    }
    if p.n() == 0 {
        return (1, true);
    }
    let parts: Vec<(u64, bool)> = p
        .initial_values(0)
        .into_par_iter()
        .map(|x| {
            if !ctl.tick() {
                return (0, false);
            }
            let Some(mut s) = p.fixed_state(0, x) else { return (0, true) };
            let mut c = 0u64;
            let done = s.enumerate_from(1, ctl, &mut |_| c += 1);
            (c, done)
        })
        .collect();
    let complete = parts.iter().all(|(_, d)| *d) && !ctl.stopped();
    (parts.iter().map(|(c, _)| c).sum(), complete)
}

pub(crate) fn sample_one<R: Rng>(p: &Problem<'_>, rng: &mut R, max_nodes: u64) -> SampleOutcome {
    let Some(dom) = p.init.clone() else { return SampleOutcome::Exhausted };
    let mut s = Search::new(p, dom);
    let mut nodes = 0;
    s.sample(rng, &mut nodes, max_nodes)
}
