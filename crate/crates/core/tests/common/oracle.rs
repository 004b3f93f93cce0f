//! Brute-force reference implementations over vertex subsets. Everything
//! here works on bitmasks of at most 20 vertices and never calls the
//! library's detectors.

use starsep::Graph;

pub struct Small {
    /// `vs[i]` is the graph vertex behind bit `i`.
    pub vs: Vec<usize>,
    pub adj: Vec<u32>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Kinds {
    pub wheel: bool,
    pub line_wheel: bool,
    pub even_wheel: bool,
    pub twin_wheel: bool,
    pub short_pyramid: bool,
    pub proper: bool,
    pub universal: bool,
}

impl Kinds {
    pub fn or(self, o: Kinds) -> Kinds {
        Kinds {
            wheel: self.wheel | o.wheel,
            line_wheel: self.line_wheel | o.line_wheel,
            even_wheel: self.even_wheel | o.even_wheel,
            twin_wheel: self.twin_wheel | o.twin_wheel,
            short_pyramid: self.short_pyramid | o.short_pyramid,
            proper: self.proper | o.proper,
            universal: self.universal | o.universal,
        }
    }
}

fn bits(m: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

impl Small {
    pub fn new(g: &Graph) -> Small {
        let vs = g.vertices().to_vec();
        assert!(vs.len() <= 20, "oracle is exhaustive");
        let adj = vs
            .iter()
            .map(|&u| vs.iter().enumerate().filter(|&(_, &v)| g.adjacent(u, v)).fold(0u32, |m, (j, _)| m | 1 << j))
            .collect();
        Small { vs, adj }
    }

    pub fn n(&self) -> usize {
        self.vs.len()
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.n()) - 1) as u32
    }

    pub fn mask_of(&self, vs: impl IntoIterator<Item = usize>) -> u32 {
        vs.into_iter().map(|v| 1u32 << self.vs.iter().position(|&x| x == v).unwrap()).fold(0, |a, b| a | b)
    }

    pub fn unmask(&self, m: u32) -> Vec<usize> {
        bits(m).map(|i| self.vs[i]).collect()
    }

    fn deg(&self, v: usize, m: u32) -> u32 {
        (self.adj[v] & m).count_ones()
    }

    fn edges_in(&self, m: u32) -> u32 {
        bits(m).map(|v| self.deg(v, m)).sum::<u32>() / 2
    }

    pub fn connected(&self, m: u32) -> bool {
        if m == 0 {
            return true;
        }
        let mut seen = m & m.wrapping_neg();
        loop {
            let grow = bits(seen).fold(seen, |s, v| s | (self.adj[v] & m));
            if grow == seen {
                return seen == m;
            }
            seen = grow;
        }
    }

    pub fn components(&self, m: u32) -> Vec<u32> {
        let mut rest = m;
        let mut out = Vec::new();
        while rest != 0 {
            let mut c = rest & rest.wrapping_neg();
            loop {
                let grow = bits(c).fold(c, |s, v| s | (self.adj[v] & rest));
                if grow == c {
                    break;
                }
                c = grow;
            }
            out.push(c);
            rest &= !c;
        }
        out
    }

    fn subsets_of_size(&self, k: u32) -> impl Iterator<Item = u32> + '_ {
        (0..=self.full()).filter(move |m| m.count_ones() == k)
    }

    pub fn is_hole(&self, m: u32) -> bool {
        m.count_ones() >= 4 && bits(m).all(|v| self.deg(v, m) == 2) && self.connected(m)
    }

    pub fn holes(&self) -> Vec<u32> {
        (0..=self.full()).filter(|&m| self.is_hole(m)).collect()
    }

    pub fn has_c4(&self) -> bool {
        self.subsets_of_size(4).any(|m| self.is_hole(m))
    }

    pub fn has_diamond(&self) -> bool {
        self.subsets_of_size(4).any(|m| self.edges_in(m) == 5)
    }

    pub fn has_clique(&self, k: usize) -> bool {
        let k = k as u32;
        self.subsets_of_size(k).any(|m| self.edges_in(m) == k * k.saturating_sub(1) / 2)
    }

    pub fn clique_number(&self) -> usize {
        (0..=self.full()).filter(|&m| self.edges_in(m) * 2 == m.count_ones() * m.count_ones().saturating_sub(1)).map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// Branch paths of `G[m]` between its degree-3 vertices, as
    /// `(end, end, edge count)`. `None` unless every degree is 2 or 3, the
    /// subgraph is connected, and no path closes back on its start.
    fn branches(&self, m: u32) -> Option<(u32, Vec<(usize, usize, usize)>)> {
        if !self.connected(m) || bits(m).any(|v| !(2..=3).contains(&self.deg(v, m))) {
            return None;
        }
        let d: u32 = bits(m).filter(|&v| self.deg(v, m) == 3).fold(0, |a, v| a | 1 << v);
        let mut out = Vec::new();
        let mut covered = d;
        for a in bits(d) {
            for first in bits(self.adj[a] & m) {
                let (mut prev, mut cur, mut len) = (a, first, 1);
                while d >> cur & 1 == 0 {
                    covered |= 1 << cur;
                    let next = bits(self.adj[cur] & m & !(1 << prev)).next().unwrap();
                    (prev, cur, len) = (cur, next, len + 1);
                }
                if cur == a {
                    return None;
                }
                // each path is walked from both ends
                if a < cur {
                    out.push((a, cur, len));
                }
            }
        }
        (covered == m).then_some((d, out))
    }

    pub fn is_theta(&self, m: u32) -> bool {
        let Some((d, br)) = self.branches(m) else { return false };
        d.count_ones() == 2 && br.len() == 3 && br.iter().all(|&(_, _, l)| l >= 2)
    }

    pub fn is_pyramid(&self, m: u32) -> bool {
        let Some((d, br)) = self.branches(m) else { return false };
        if d.count_ones() != 4 || br.len() != 6 {
            return false;
        }
        bits(d).any(|apex| {
            let (at, off): (Vec<_>, Vec<_>) = br.iter().partition(|&&(a, b, _)| a == apex || b == apex);
            at.len() == 3
                && off.iter().all(|&&(_, _, l)| l == 1)
                && at.iter().filter(|&&&(_, _, l)| l == 1).count() <= 1
                && {
                    let mut ends: Vec<usize> = at.iter().map(|&&(a, b, _)| if a == apex { b } else { a }).collect();
                    ends.sort_unstable();
                    ends.dedup();
                    ends.len() == 3
                }
        })
    }

    pub fn is_prism(&self, m: u32) -> bool {
        let Some((d, br)) = self.branches(m) else { return false };
        if d.count_ones() != 6 || br.len() != 9 {
            return false;
        }
        let ds: Vec<usize> = bits(d).collect();
        let tri = |t: u32| bits(t).all(|v| (self.adj[v] & t).count_ones() == 2);
        (0..64u32).filter(|s| s.count_ones() == 3).any(|s| {
            let t1: u32 = (0..6).filter(|i| s >> i & 1 == 1).fold(0, |a, i| a | 1 << ds[i]);
            let t2 = d & !t1;
            if !tri(t1) || !tri(t2) {
                return false;
            }
            let cross: Vec<_> =
                br.iter().filter(|&&(a, b, _)| (t1 >> a & 1 == 1) != (t1 >> b & 1 == 1)).collect();
            let touched = cross.iter().fold(0u32, |acc, &&(a, b, _)| acc | 1 << a | 1 << b);
            cross.len() == 3 && touched == d
        })
    }

    pub fn has_theta(&self) -> bool {
        (0..=self.full()).any(|m| self.is_theta(m))
    }

    pub fn has_pyramid(&self) -> bool {
        (0..=self.full()).any(|m| self.is_pyramid(m))
    }

    pub fn has_prism(&self) -> bool {
        (0..=self.full()).any(|m| self.is_prism(m))
    }

    /// Kind flags of `(hole, x)`, read off the neighbor set directly.
    pub fn kinds(&self, hole: u32, x: usize) -> Kinds {
        if hole >> x & 1 == 1 {
            return Kinds::default();
        }
        let nb = self.adj[x] & hole;
        let c = nb.count_ones();
        let e = self.edges_in(nb);
        let nv: Vec<usize> = bits(nb).collect();
        let wheel = (0..nv.len()).any(|i| {
            (i + 1..nv.len()).any(|j| {
                (j + 1..nv.len()).any(|k| self.edges_in(1 << nv[i] | 1 << nv[j] | 1 << nv[k]) == 0)
            })
        });
        let line_wheel = c == 4 && e == 2 && bits(nb).all(|v| self.deg(v, nb) == 1);
        let twin_wheel = c == 3 && e == 2;
        let short_pyramid = c == 3 && e == 1;
        Kinds {
            wheel,
            line_wheel,
            even_wheel: line_wheel || (wheel && c % 2 == 0),
            twin_wheel,
            short_pyramid,
            proper: c >= 3 && !twin_wheel && !short_pyramid,
            universal: nb == hole,
        }
    }

    /// Union of kind flags over all (hole, vertex) pairs.
    pub fn all_kinds(&self) -> Kinds {
        let mut k = Kinds::default();
        for h in self.holes() {
            for x in 0..self.n() {
                k = k.or(self.kinds(h, x));
            }
        }
        k
    }

    /// Vertices of `within` centering a wheel whose hole lies in `within`.
    pub fn hubs(&self, within: u32) -> Vec<usize> {
        let holes: Vec<u32> = self.holes().into_iter().filter(|&h| h & !within == 0).collect();
        let hub: u32 = bits(within).filter(|&x| holes.iter().any(|&h| self.kinds(h, x).wheel)).fold(0, |a, x| a | 1 << x);
        self.unmask(hub)
    }

    /// Treewidth by trying every elimination order. Only for tiny graphs.
    pub fn treewidth(&self) -> usize {
        let n = self.n();
        if n == 0 {
            return 0;
        }
        let mut order: Vec<usize> = (0..n).collect();
        let mut best = n - 1;
        permute(&mut order, 0, &mut |ord| {
            let mut adj = self.adj.clone();
            let mut width = 0;
            let mut alive = self.full();
            for &v in ord {
                let nb = adj[v] & alive & !(1 << v);
                width = width.max(nb.count_ones() as usize);
                for u in bits(nb) {
                    adj[u] |= nb & !(1 << u);
                }
                alive &= !(1 << v);
            }
            best = best.min(width);
        });
        best
    }

    /// Largest component weight after deleting `x`, with weights per bit.
    pub fn max_component<W: Copy + Default + std::ops::Add<Output = W> + PartialOrd>(&self, x: u32, w: &[W]) -> W {
        self.components(self.full() & !x)
            .into_iter()
            .map(|c| bits(c).fold(W::default(), |a, v| a + w[v]))
            .fold(W::default(), |a, b| if b > a { b } else { a })
    }
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}
