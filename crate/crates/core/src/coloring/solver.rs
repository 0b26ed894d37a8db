//! Exact backtracking search for conditional colorings.
//!
//! Vertices are picked by smallest live domain, ties broken by more colored
//! neighbors, then higher degree, then id. A vertex `u` is *tight* when every
//! uncolored neighbor must contribute a color not yet present around `u`;
//! tight vertices shrink their neighbors' domains. With three colors and
//! `r >= 2`, a path `s - p - q - t` whose inner vertices have degree 2 sees
//! three distinct colors on `s, p, q` and on `p, q, t`, so `t` must repeat the
//! color of `s`; these pairs are linked up front. Unless disabled, a fresh color may only be the next
//! unused index, which removes the `k!` relabeling orbit.
//!
//! When looking for a single coloring, the uncolored vertices are split at
//! every node into groups that share no constraint: two uncolored vertices
//! interact when adjacent or when they share a colored neighbor whose C2
//! demand is still open. Groups are solved one after another, and a group
//! with no coloring fails the whole node without revisiting earlier groups.

use std::cmp::Reverse;

use super::{ColoringParams, ConditionalColoring};
use crate::graph::Graph;

const UNCOLORED: usize = usize::MAX;

/// Domain size, then most colored neighbors, then highest degree.
type SelectKey = (usize, Reverse<usize>, Reverse<usize>);

pub struct Search<'g> {
    g: &'g Graph,
    k: usize,
    required: Vec<usize>,
    color: Vec<usize>,
    nb_count: Vec<u32>,
    distinct: Vec<usize>,
    uncolored_nb: Vec<usize>,
    colored: usize,
    used: usize,
    symmetry_breaking: bool,
    trail: Vec<usize>,
    /// Trail index of each colored vertex (first-solution search only).
    position: Vec<usize>,
    /// Vertices forced to share a color with this one.
    twins: Vec<Vec<usize>>,
    nodes: u64,
}

fn period_three_twins(g: &Graph, params: ColoringParams) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut twins = vec![Vec::new(); n];
    if params.k != 3 || params.r < 2 {
        return twins;
    }
    for p in (0..n).filter(|&p| g.degree(p) == 2) {
        for (i, &q) in g.neighbors(p).iter().enumerate() {
            if g.degree(q) != 2 {
                continue;
            }
            let s = g.neighbors(p)[1 - i];
            let t = g
                .neighbors(q)
                .iter()
                .copied()
                .find(|&t| t != p)
                .expect("degree 2");
            if s != t && !twins[s].contains(&t) {
                twins[s].push(t);
                twins[t].push(s);
            }
        }
    }
    twins
}

impl<'g> Search<'g> {
    pub fn new(g: &'g Graph, params: ColoringParams) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            k: params.k,
            required: (0..n).map(|v| g.degree(v).min(params.r)).collect(),
            color: vec![UNCOLORED; n],
            nb_count: vec![0; n * params.k],
            distinct: vec![0; n],
            uncolored_nb: (0..n).map(|v| g.degree(v)).collect(),
            colored: 0,
            used: 0,
            symmetry_breaking: true,
            trail: Vec::new(),
            position: vec![0; n],
            twins: period_three_twins(g, params),
            nodes: 0,
        }
    }

    /// With symmetry breaking off, every valid coloring is visited, not one
    /// representative per color relabeling.
    pub fn symmetry_breaking(mut self, on: bool) -> Self {
        self.symmetry_breaking = on;
        self
    }

    /// Calls `visit` on each valid coloring until it returns `false`.
    /// Returns `false` iff the visitor stopped the search.
    pub fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if !(0..self.g.vertex_count()).all(|v| self.satisfiable_at(v)) {
            return true;
        }
        self.descend(visit)
    }

    /// Number of color assignments tried so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Some valid coloring, or `None` when there is none.
    pub fn first(&mut self) -> Option<Vec<usize>> {
        let n = self.g.vertex_count();
        if !(0..n).all(|v| self.satisfiable_at(v)) {
            return None;
        }
        let all: Vec<usize> = (0..n).collect();
        self.solve_group(&all).ok().map(|()| self.color.clone())
    }

    /// Whether the C2 requirement at `u` can still be met.
    fn satisfiable_at(&self, u: usize) -> bool {
        let own = usize::from(self.color[u] != UNCOLORED);
        let fresh = self.k.saturating_sub(self.distinct[u] + own);
        self.distinct[u] + self.uncolored_nb[u].min(fresh) >= self.required[u]
    }

    fn tight(&self, u: usize) -> bool {
        self.distinct[u] + self.uncolored_nb[u] <= self.required[u]
    }

    fn allowed(&self, v: usize, c: usize) -> bool {
        if self.nb_count[v * self.k + c] != 0 {
            return false;
        }
        if self.twins[v]
            .iter()
            .any(|&t| self.color[t] != UNCOLORED && self.color[t] != c)
        {
            return false;
        }
        self.g
            .neighbors(v)
            .iter()
            .all(|&u| !self.tight(u) || self.nb_count[u * self.k + c] == 0)
    }

    fn color_limit(&self) -> usize {
        if self.symmetry_breaking {
            (self.used + 1).min(self.k)
        } else {
            self.k
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.nodes += 1;
        self.color[v] = c;
        self.colored += 1;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.nb_count[u * self.k + c];
            if *slot == 0 {
                self.distinct[u] += 1;
            }
            *slot += 1;
            self.uncolored_nb[u] -= 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        for &u in self.g.neighbors(v) {
            let slot = &mut self.nb_count[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.distinct[u] -= 1;
            }
            self.uncolored_nb[u] += 1;
        }
        self.color[v] = UNCOLORED;
        self.colored -= 1;
    }

    /// Picks the uncolored vertex with the fewest admissible colors.
    /// `Err(v)` names a vertex with none left.
    fn select(&self, candidates: impl Iterator<Item = usize>) -> Result<usize, usize> {
        let limit = self.color_limit();
        let mut best: Option<(usize, SelectKey)> = None;
        for v in candidates {
            if self.color[v] != UNCOLORED {
                continue;
            }
            // Unused colors are interchangeable, so scanning up to `limit`
            // sees every distinct option.
            let size = (0..limit).filter(|&c| self.allowed(v, c)).count();
            if size == 0 {
                return Err(v);
            }
            let degree = self.g.degree(v);
            let key = (
                size,
                Reverse(degree - self.uncolored_nb[v]),
                Reverse(degree),
            );
            if best.is_none_or(|(_, b)| key < b) {
                best = Some((v, key));
            }
        }
        best.map(|(v, _)| v).ok_or(usize::MAX)
    }

    fn descend(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if self.colored == self.g.vertex_count() {
            return visit(&self.color);
        }
        let Ok(v) = self.select(0..self.g.vertex_count()) else {
            return true;
        };
        let limit = self.color_limit();
        for c in 0..limit {
            if !self.allowed(v, c) {
                continue;
            }
            self.assign(v, c);
            let ok = self.satisfiable_at(v)
                && self.g.neighbors(v).iter().all(|&u| self.satisfiable_at(u));
            let prev_used = self.used;
            self.used = self.used.max(c + 1);
            let keep_going = !ok || self.descend(visit);
            self.used = prev_used;
            self.unassign(v, c);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Copy)]
enum Reason {
    Single(usize),
    /// The colored neighbors of a tight vertex.
    Around(usize),
}

/// Assigned vertices that jointly explain a failure.
#[derive(Clone)]
struct Conflict(Vec<u64>);

impl Conflict {
    fn empty(n: usize) -> Self {
        Conflict(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn merge(&mut self, other: &Conflict) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

impl Search<'_> {
    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail longer than mark");
            let c = self.color[v];
            self.unassign(v, c);
        }
    }

    /// Colored vertices among `u` and its neighbors.
    fn blame_closed(&self, u: usize, into: &mut Conflict) {
        if self.color[u] != UNCOLORED {
            into.insert(u);
        }
        self.blame_open(u, into);
    }

    fn blame_open(&self, u: usize, into: &mut Conflict) {
        for &w in self.g.neighbors(u) {
            if self.color[w] != UNCOLORED {
                into.insert(w);
            }
        }
    }

    fn blame_trail(&self, into: &mut Conflict) {
        for &w in &self.trail {
            into.insert(w);
        }
    }

    /// Adds to `into` one set of assignments that rules out color `c` at
    /// `v` before `v` is colored, preferring the set assigned earliest.
    fn blame_excluded(&self, v: usize, c: usize, into: &mut Conflict) {
        if c >= self.color_limit() {
            self.blame_trail(into);
            return;
        }
        // (latest trail index in the reason, single culprit or tight vertex)
        let mut best: Option<(usize, Reason)> = None;
        let mut offer = |age: usize, reason: Reason| {
            if best.is_none_or(|(b, _)| age < b) {
                best = Some((age, reason));
            }
        };
        for &t in &self.twins[v] {
            if self.color[t] != UNCOLORED && self.color[t] != c {
                offer(self.position[t], Reason::Single(t));
            }
        }
        for &u in self.g.neighbors(v) {
            if self.color[u] == c {
                offer(self.position[u], Reason::Single(u));
            } else if self.tight(u) && self.nb_count[u * self.k + c] != 0 {
                let age = self
                    .g
                    .neighbors(u)
                    .iter()
                    .filter(|&&w| self.color[w] != UNCOLORED)
                    .map(|&w| self.position[w])
                    .max()
                    .unwrap_or(0);
                offer(age, Reason::Around(u));
            }
        }
        match best {
            Some((_, Reason::Single(u))) => into.insert(u),
            Some((_, Reason::Around(u))) => self.blame_open(u, into),
            None => {}
        }
    }

    /// Adds the reasons why `v` has no admissible color left.
    fn blame_wipeout(&self, v: usize, into: &mut Conflict) {
        for c in 0..self.k {
            self.blame_excluded(v, c, into);
        }
    }

    /// Splits the uncolored part of `group` into independent pieces.
    fn split(&self, group: &[usize]) -> Vec<Vec<usize>> {
        let n = self.g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        };
        for &v in group {
            if self.color[v] != UNCOLORED {
                continue;
            }
            for &u in self.g.neighbors(v) {
                if self.color[u] == UNCOLORED {
                    union(&mut parent, u, v);
                } else if self.distinct[u] < self.required[u] {
                    for &w in self.g.neighbors(u) {
                        if self.color[w] == UNCOLORED {
                            union(&mut parent, v, w);
                        }
                    }
                }
            }
        }
        let mut index = vec![usize::MAX; n];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in group {
            if self.color[v] != UNCOLORED {
                continue;
            }
            let root = find(&mut parent, v);
            if index[root] == usize::MAX {
                index[root] = groups.len();
                groups.push(Vec::new());
            }
            groups[index[root]].push(v);
        }
        groups
    }

    /// Colors every uncolored vertex of `group`, keeping the assignment on
    /// success and leaving the state untouched on failure.
    fn solve_group(&mut self, group: &[usize]) -> Result<(), Conflict> {
        let pieces = self.split(group);
        let mark = self.trail.len();
        let base = self.used;
        for piece in &pieces {
            self.used = base;
            if let Err(conflict) = self.branch(piece) {
                self.used = base;
                self.rollback(mark);
                return Err(conflict);
            }
        }
        self.used = base;
        Ok(())
    }

    fn branch(&mut self, group: &[usize]) -> Result<(), Conflict> {
        let n = self.g.vertex_count();
        let v = match self.select(group.iter().copied()) {
            Ok(v) => v,
            Err(dead) => {
                let mut conflict = Conflict::empty(n);
                self.blame_wipeout(dead, &mut conflict);
                return Err(conflict);
            }
        };
        let mut conflict = Conflict::empty(n);
        let limit = self.color_limit();
        let base = self.used;
        for c in 0..self.k {
            if c >= limit || !self.allowed(v, c) {
                self.blame_excluded(v, c, &mut conflict);
                continue;
            }
            let mark = self.trail.len();
            self.assign(v, c);
            self.position[v] = self.trail.len();
            self.trail.push(v);
            let broken = std::iter::once(v)
                .chain(self.g.neighbors(v).iter().copied())
                .find(|&u| !self.satisfiable_at(u));
            let outcome = match broken {
                Some(u) => {
                    let mut local = Conflict::empty(n);
                    self.blame_closed(u, &mut local);
                    Err(local)
                }
                None => {
                    self.used = base.max(c + 1);
                    self.solve_group(group)
                }
            };
            match outcome {
                Ok(()) => return Ok(()),
                Err(child) => {
                    self.used = base;
                    self.rollback(mark);
                    if !child.contains(v) {
                        return Err(child);
                    }
                    conflict.merge(&child);
                }
            }
        }
        conflict.remove(v);
        Err(conflict)
    }
}

/// Decides whether `g` has a conditional coloring with at most `p.k` colors.
pub fn solve_kr(g: &Graph, p: ColoringParams) -> Option<ConditionalColoring> {
    Search::new(g, p)
        .first()
        .map(|colors| ConditionalColoring::new(colors, p))
}

/// Visits every valid coloring (no symmetry reduction). Stops early when
/// `visit` returns `false`.
pub fn for_each_coloring(g: &Graph, p: ColoringParams, mut visit: impl FnMut(&[usize]) -> bool) {
    Search::new(g, p).symmetry_breaking(false).run(&mut visit);
}

pub fn count_colorings(g: &Graph, p: ColoringParams) -> u64 {
    let mut count = 0;
    for_each_coloring(g, p, |_| {
        count += 1;
        true
    });
    count
}

/// Smallest `k` admitting a conditional `(k, r)`-coloring, with a witness
/// using exactly `k` colors. The empty graph reports 0.
pub fn chi_r(g: &Graph, r: usize) -> (usize, ConditionalColoring) {
    assert!(r >= 1, "order r must be positive");
    let n = g.vertex_count();
    if n == 0 {
        return (
            0,
            ConditionalColoring::new(Vec::new(), ColoringParams { k: 1, r }),
        );
    }
    for k in 1..=n {
        let p = ColoringParams { k, r };
        if let Some(c) = solve_kr(g, p) {
            let c = c.compacted();
            debug_assert_eq!(c.colors_used(), k);
            return (k, c);
        }
    }
    unreachable!("all-distinct coloring always satisfies both conditions")
}
