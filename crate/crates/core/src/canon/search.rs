//! Individualization-refinement search over the incidence structure of
//! distinct nonzero columns ("points") and nonzero codewords.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Deterministic 64-bit mixing; traces must not depend on the std hasher.
pub(crate) fn mix(h: u64, v: u64) -> u64 {
    let mut z = h ^ v.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) struct Graph {
    pub np: usize,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Points are `0..np`, codeword `m` (message `m + 1`) is vertex `np + m`.
    pub fn new(points: &[u64], k: usize) -> Self {
        let np = points.len();
        let nc = (1usize << k) - 1;
        let mut adj = vec![Vec::new(); np + nc];
        for m in 0..nc {
            let msg = (m + 1) as u64;
            for (p, &pt) in points.iter().enumerate() {
                if (msg & pt).count_ones() & 1 == 1 {
                    adj[p].push((np + m) as u32);
                    adj[np + m].push(p as u32);
                }
            }
        }
        Self { np, adj }
    }
}

#[derive(Clone)]
pub(crate) struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    /// Initial ordered partition from integer colours (ascending).
    pub fn from_colours(colours: &[u64]) -> Self {
        let mut idx: Vec<usize> = (0..colours.len()).collect();
        idx.sort_by_key(|&v| (colours[v], v));
        let mut cells: Vec<Vec<usize>> = Vec::new();
        let mut last = None;
        for v in idx {
            if last != Some(colours[v]) {
                cells.push(Vec::new());
                last = Some(colours[v]);
            }
            cells.last_mut().expect("pushed").push(v);
        }
        let mut p = Self {
            cells,
            cell_of: vec![0; colours.len()],
        };
        p.reindex();
        p
    }

    fn reindex(&mut self) {
        for (ci, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                self.cell_of[v] = ci;
            }
        }
    }

    /// Colour refinement: cells are split by a multiset hash of the
    /// neighbouring cells until stable. Returns a trace hash.
    pub fn refine(&mut self, g: &Graph) -> u64 {
        let nv = self.cell_of.len();
        let mut h = 0u64;
        let mut sig = vec![0u64; nv];
        let weight: Vec<u64> = (0..nv as u64).map(|c| mix(0x5bd1_e995, c)).collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(nv);
        loop {
            for (v, s) in sig.iter_mut().enumerate() {
                *s = g.adj[v]
                    .iter()
                    .fold(0u64, |a, &u| a.wrapping_add(weight[self.cell_of[u as usize]]));
            }
            let mut split = false;
            next.clear();
            for cell in &mut self.cells {
                if cell.len() == 1 {
                    next.push(std::mem::take(cell));
                    continue;
                }
                cell.sort_unstable_by_key(|&v| (sig[v], v));
                let start = next.len();
                let mut prev = None;
                for &v in cell.iter() {
                    if prev != Some(sig[v]) {
                        next.push(Vec::new());
                        h = mix(h, sig[v]);
                        prev = Some(sig[v]);
                    }
                    next.last_mut().expect("pushed").push(v);
                }
                if next.len() - start > 1 {
                    split = true;
                }
                for c in &next[start..] {
                    h = mix(h, c.len() as u64);
                }
            }
            std::mem::swap(&mut self.cells, &mut next);
            self.reindex();
            h = mix(h, self.cells.len() as u64);
            if !split {
                return h;
            }
        }
    }

    /// Moves `v` into its own cell placed just before the rest of its cell.
    pub fn individualize(&mut self, v: usize) {
        let ci = self.cell_of[v];
        let rest: Vec<usize> = self.cells[ci].iter().copied().filter(|&u| u != v).collect();
        self.cells[ci] = vec![v];
        self.cells.insert(ci + 1, rest);
        self.reindex();
    }

    fn target_cell(&self, np: usize) -> Option<&[usize]> {
        self.cells
            .iter()
            .find(|c| c.len() > 1 && c[0] < np)
            .map(|c| c.as_slice())
    }

    fn point_order(&self, np: usize) -> Vec<usize> {
        self.cells
            .iter()
            .filter(|c| c[0] < np)
            .map(|c| c[0])
            .collect()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Leaf {
    pub traces: Vec<u64>,
    pub encoding: Vec<u64>,
    pub order: Vec<usize>,
}

impl Leaf {
    fn key_cmp(&self, other: &Leaf) -> Ordering {
        self.traces
            .cmp(&other.traces)
            .then_with(|| self.encoding.cmp(&other.encoding))
    }
}

enum Flow {
    Continue,
    Jump(usize),
}

/// Coordinates of each point (in `order`) with respect to the first `k`
/// linearly independent points of `order`.
pub(crate) fn leaf_coordinates(points: &[u64], order: &[usize], k: usize) -> Vec<u64> {
    // (reduced vector, pivot bit, combination of basis indices)
    let mut basis: Vec<(u64, u64, u64)> = Vec::with_capacity(k);
    let reduce = |basis: &[(u64, u64, u64)], mut v: u64| {
        let mut comb = 0u64;
        for &(b, piv, c) in basis {
            if v & piv != 0 {
                v ^= b;
                comb ^= c;
            }
        }
        (v, comb)
    };
    let mut coords = Vec::with_capacity(order.len());
    for &p in order {
        let (r, comb) = reduce(&basis, points[p]);
        if r == 0 {
            coords.push(comb);
        } else {
            let idx = basis.len();
            let piv = 1u64 << (63 - r.leading_zeros());
            let c = comb ^ (1u64 << idx);
            for e in basis.iter_mut() {
                if e.0 & piv != 0 {
                    e.0 ^= r;
                    e.2 ^= c;
                }
            }
            basis.push((r, piv, c));
            coords.push(1u64 << idx);
        }
    }
    coords
}

pub(crate) struct Outcome {
    pub best: Leaf,
    pub generators: Vec<Vec<usize>>,
    pub orbit_sizes: Vec<usize>,
}

pub(crate) struct Searcher<'a> {
    g: &'a Graph,
    points: &'a [u64],
    mult: &'a [usize],
    k: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    gens: Vec<Vec<usize>>,
    first_path: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'a> Searcher<'a> {
    pub fn new(g: &'a Graph, points: &'a [u64], mult: &'a [usize], k: usize, budget: u64) -> Self {
        Self {
            g,
            points,
            mult,
            k,
            first: None,
            best: None,
            gens: Vec::new(),
            first_path: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    pub fn run(mut self, mut root: Partition) -> Result<Outcome> {
        let t = root.refine(self.g);
        let mut traces = vec![t];
        let mut prefix = Vec::new();
        self.search(root, &mut prefix, &mut traces)?;
        let orbit_sizes = (0..self.first_path.len())
            .map(|l| {
                let fixing = self.fixing(&self.first_path[..l]);
                orbit(self.g.np, &fixing, self.first_path[l]).len()
            })
            .collect();
        Ok(Outcome {
            best: self.best.expect("search reaches a leaf"),
            generators: self.gens,
            orbit_sizes,
        })
    }

    fn fixing(&self, prefix: &[usize]) -> Vec<&Vec<usize>> {
        self.gens
            .iter()
            .filter(|g| prefix.iter().all(|&p| g[p] == p))
            .collect()
    }

    fn on_first_path(&self, prefix: &[usize]) -> bool {
        self.first.is_none() || self.first_path.starts_with(prefix)
    }

    fn search(&mut self, part: Partition, prefix: &mut Vec<usize>, traces: &mut Vec<u64>) -> Result<Flow> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { limit: self.budget });
        }
        let on_first = self.on_first_path(prefix);
        if let (Some(first), Some(best)) = (&self.first, &self.best) {
            if !on_first {
                let eq_first = first.traces.starts_with(traces);
                let n = traces.len().min(best.traces.len());
                let worse = traces[..n] > best.traces[..n];
                if !eq_first && worse {
                    return Ok(Flow::Continue);
                }
            }
        }
        let level = prefix.len();
        let cell = match part.target_cell(self.g.np) {
            Some(c) => c.to_vec(),
            None => return Ok(self.leaf(&part, prefix, traces)),
        };
        for &c in &cell {
            let fixing = self.fixing(prefix);
            if !fixing.is_empty() && orbit(self.g.np, &fixing, c).iter().any(|&u| u < c) {
                continue;
            }
            if self.first.is_none() {
                self.first_path.push(c);
            }
            let mut child = part.clone();
            child.individualize(c);
            let t = child.refine(self.g);
            prefix.push(c);
            traces.push(t);
            let flow = self.search(child, prefix, traces);
            prefix.pop();
            traces.pop();
            match flow? {
                Flow::Jump(l) if l < level => return Ok(Flow::Jump(l)),
                _ => {}
            }
        }
        Ok(Flow::Continue)
    }

    fn leaf(&mut self, part: &Partition, prefix: &[usize], traces: &[u64]) -> Flow {
        let order = part.point_order(self.g.np);
        let coords = leaf_coordinates(self.points, &order, self.k);
        let encoding = coords
            .iter()
            .zip(&order)
            .flat_map(|(&c, &p)| [c, self.mult[p] as u64])
            .collect();
        let leaf = Leaf {
            traces: traces.to_vec(),
            encoding,
            order,
        };
        let Some(first) = &self.first else {
            self.first = Some(leaf.clone());
            self.best = Some(leaf);
            return Flow::Continue;
        };
        if leaf.key_cmp(first) == Ordering::Equal {
            self.gens.push(mapping(&first.order, &leaf.order, self.g.np));
            let common = prefix
                .iter()
                .zip(&self.first_path)
                .take_while(|(a, b)| a == b)
                .count();
            return Flow::Jump(common);
        }
        let best = self.best.as_ref().expect("set with first");
        match leaf.key_cmp(best) {
            Ordering::Less => self.best = Some(leaf),
            Ordering::Equal => {
                let g = mapping(&best.order, &leaf.order, self.g.np);
                self.gens.push(g);
            }
            Ordering::Greater => {}
        }
        Flow::Continue
    }
}

/// Permutation sending `from[i]` to `to[i]`.
fn mapping(from: &[usize], to: &[usize], np: usize) -> Vec<usize> {
    let mut g = vec![0; np];
    for (&a, &b) in from.iter().zip(to) {
        g[a] = b;
    }
    g
}

/// Orbit of `v` under the group generated by `gens`, sorted.
pub(crate) fn orbit(np: usize, gens: &[&Vec<usize>], v: usize) -> Vec<usize> {
    let mut seen = vec![false; np];
    seen[v] = true;
    let mut stack = vec![v];
    let mut out = vec![v];
    while let Some(u) = stack.pop() {
        for g in gens {
            let w = g[u];
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
                out.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Orbit representative (minimum element) of every point.
pub(crate) fn orbit_ids(np: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let refs: Vec<&Vec<usize>> = gens.iter().collect();
    let mut id = vec![usize::MAX; np];
    for v in 0..np {
        if id[v] == usize::MAX {
            for u in orbit(np, &refs, v) {
                id[u] = v;
            }
        }
    }
    id
}
