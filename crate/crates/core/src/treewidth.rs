//! Exact treewidth for small graphs, tree decompositions, and `P_q` by
//! dynamic programming over a nice tree decomposition.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::homopoly::complement_transform;
use crate::poly::{y_index, Polynomial, VarSpace};

/// Largest vertex count for [`exact_treewidth`].
pub const MAX_TREEWIDTH_VERTICES: usize = 16;

/// Bags of vertices joined into a rooted tree by parent links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<u32>,
    /// `None` for the root only.
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    /// Largest bag size minus one; zero for an empty decomposition.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.count_ones() as usize)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// The decomposition from eliminating vertices in `order`: vertex `v`
    /// gets the bag of `v` and its later neighbours in the filled graph, and
    /// hangs below the bag of the earliest of those neighbours.
    pub fn from_elimination_order(g: &Graph, order: &[usize]) -> Result<TreeDecomposition> {
        let n = g.n();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(Error::InvalidDecomposition(format!(
                    "{order:?} is not an ordering of 0..{n}"
                )));
            }
            pos[v] = i;
        }
        if order.len() != n {
            return Err(Error::InvalidDecomposition(format!(
                "{order:?} is not an ordering of 0..{n}"
            )));
        }
        let mut eliminated = 0u32;
        let mut bags = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        for &v in order {
            let later = fill_neighbours(g, eliminated, v);
            bags.push(later | 1 << v);
            if let Some(w) = bits(later).min_by_key(|&w| pos[w]) {
                parent[pos[v]] = Some(pos[w]);
            }
            eliminated |= 1 << v;
        }
        // join the roots of a forest into one tree
        let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
        if let Some((&last, rest)) = roots.split_last() {
            for &r in rest {
                parent[r] = Some(last);
            }
        }
        Ok(TreeDecomposition { bags, parent })
    }

    /// Checks that the parent links form one rooted tree, every vertex and
    /// edge is covered, and the bags holding each vertex are connected.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let k = self.bags.len();
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if self.parent.len() != k {
            return bad("bag and parent counts differ".into());
        }
        if k == 0 {
            return bad("no bags".into());
        }
        let roots = self.parent.iter().filter(|p| p.is_none()).count();
        if roots != 1 {
            return bad(format!("{roots} roots"));
        }
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= k {
                    return bad(format!("bag {i} has parent {p} out of range"));
                }
            }
            // walking up must reach the root within k steps
            let mut at = i;
            let mut steps = 0;
            while let Some(p) = self.parent[at] {
                at = p;
                steps += 1;
                if steps > k {
                    return bad(format!("cycle through bag {i}"));
                }
            }
        }
        let all = g.vertex_mask();
        for (i, &b) in self.bags.iter().enumerate() {
            if b & !all != 0 {
                return bad(format!("bag {i} names a vertex outside the graph"));
            }
        }
        for v in 0..g.n() {
            let holding: Vec<usize> = (0..k).filter(|&i| self.bags[i] >> v & 1 == 1).collect();
            if holding.is_empty() {
                return bad(format!("vertex {v} is in no bag"));
            }
            // connected iff exactly one holding bag has a parent outside
            let tops = holding
                .iter()
                .filter(|&&i| self.parent[i].is_none_or(|p| self.bags[p] >> v & 1 == 0))
                .count();
            if tops != 1 {
                return bad(format!("bags holding vertex {v} are not connected"));
            }
        }
        for (u, v) in g.edges() {
            let both = 1u32 << u | 1 << v;
            if !self.bags.iter().any(|&b| b & both == both) {
                return bad(format!("edge ({u}, {v}) is in no bag"));
            }
        }
        Ok(())
    }

    /// PACE-style text: `s td <bags> <largest bag> <n>`, one `b <i> <vertices>`
    /// line per bag, then one line per tree edge. Numbering starts at 1.
    pub fn to_pace(&self, n: usize) -> String {
        let mut out = String::new();
        let largest = self.bags.iter().map(|b| b.count_ones()).max().unwrap_or(0);
        writeln!(out, "s td {} {} {}", self.bags.len(), largest, n).unwrap();
        for (i, &b) in self.bags.iter().enumerate() {
            write!(out, "b {}", i + 1).unwrap();
            for v in bits(b) {
                write!(out, " {}", v + 1).unwrap();
            }
            out.push('\n');
        }
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                writeln!(out, "{} {}", p + 1, i + 1).unwrap();
            }
        }
        out
    }

    /// Converts to a nice decomposition rooted at an empty bag.
    pub fn nice(&self) -> NiceDecomposition {
        let k = self.bags.len();
        let mut children = vec![Vec::new(); k];
        let mut root = 0;
        for (i, p) in self.parent.iter().enumerate() {
            match p {
                Some(p) => children[*p].push(i),
                None => root = i,
            }
        }
        let mut nodes = Vec::new();
        let top = build_nice(self, &children, root, &mut nodes);
        let top = transition(&mut nodes, top, self.bags[root], 0);
        NiceDecomposition { nodes, root: top }
    }
}

/// Later neighbours of `v` in the graph filled by eliminating `eliminated`:
/// vertices outside `eliminated` reachable from `v` through it.
fn fill_neighbours(g: &Graph, eliminated: u32, v: usize) -> u32 {
    let comp = g.reach(v, eliminated | 1 << v);
    let mut out = 0;
    for w in bits(comp) {
        out |= g.adj(w);
    }
    out & !eliminated & !(1 << v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: u32,
    pub kind: NiceKind,
}

/// Nodes are stored children first, so index order is a valid bottom-up
/// evaluation order.
#[derive(Clone, Debug)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

fn build_nice(td: &TreeDecomposition, children: &[Vec<usize>], at: usize, nodes: &mut Vec<NiceNode>) -> usize {
    let bag = td.bags[at];
    let mut branches = Vec::new();
    for &c in &children[at] {
        let sub = build_nice(td, children, c, nodes);
        branches.push(transition(nodes, sub, td.bags[c], bag));
    }
    if branches.is_empty() {
        nodes.push(NiceNode {
            bag: 0,
            kind: NiceKind::Leaf,
        });
        return transition(nodes, nodes.len() - 1, 0, bag);
    }
    let mut acc = branches[0];
    for &b in &branches[1..] {
        nodes.push(NiceNode {
            bag,
            kind: NiceKind::Join { left: acc, right: b },
        });
        acc = nodes.len() - 1;
    }
    acc
}

/// Forgets `from \ to` and then introduces `to \ from` above `node`.
fn transition(nodes: &mut Vec<NiceNode>, mut node: usize, from: u32, to: u32) -> usize {
    let mut bag = from;
    for v in bits(from & !to) {
        bag &= !(1 << v);
        nodes.push(NiceNode {
            bag,
            kind: NiceKind::Forget { vertex: v, child: node },
        });
        node = nodes.len() - 1;
    }
    for v in bits(to & !from) {
        bag |= 1 << v;
        nodes.push(NiceNode {
            bag,
            kind: NiceKind::Introduce { vertex: v, child: node },
        });
        node = nodes.len() - 1;
    }
    node
}

/// Optimal treewidth and a decomposition of that width.
///
/// Dynamic program over vertex sets `S` eliminated first:
/// `TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|)` where `Q` is
/// the set of later neighbours of `v` in the filled graph.
pub fn exact_treewidth(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n > MAX_TREEWIDTH_VERTICES {
        return Err(Error::Budget {
            what: "exact treewidth".into(),
            needed: format!("2^{n} vertex sets"),
            budget: 1 << MAX_TREEWIDTH_VERTICES,
        });
    }
    let size = 1usize << n;
    let mut tw = vec![i32::MAX; size];
    let mut last = vec![0u8; size];
    tw[0] = -1;
    for s in 1..size {
        for v in bits(s as u32) {
            let prev = s & !(1 << v);
            let q = fill_neighbours(g, prev as u32, v).count_ones() as i32;
            let w = tw[prev].max(q);
            if w < tw[s] {
                tw[s] = w;
                last[s] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = size - 1;
    while s != 0 {
        let v = last[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let td = TreeDecomposition::from_elimination_order(g, &order)?;
    td.validate(g)?;
    let width = tw[size - 1].max(0) as usize;
    debug_assert_eq!(width, td.width());
    Ok((width, td))
}

/// `P_q(G)` from a tree decomposition of `g`.
///
/// Tables map colourings of the current bag to partial polynomials. A
/// vertex contributes its `x` weight, and a `y` weight for every edge to a
/// bag neighbour still present, at the moment it is forgotten. Each edge is
/// then weighed exactly once, by whichever end is forgotten first, so join
/// nodes simply multiply the two tables entrywise.
pub fn dp_hom_poly(g: &Graph, td: &TreeDecomposition, q: usize) -> Result<Polynomial> {
    if q < 2 {
        return Err(Error::Order(q));
    }
    td.validate(g)?;
    let n = g.n();
    // coefficients count colourings, at most q^n
    if (n as f64) * (q as f64).log2() >= 127.0 || q > 15 {
        return Err(Error::Budget {
            what: "decomposition DP colouring count, in bits".into(),
            needed: format!("log2({q}^{n})"),
            budget: 126,
        });
    }
    let nvars = 2 * q + q * (q - 1) / 2;
    let yidx: Vec<Vec<usize>> = (0..q)
        .map(|a| (0..q).map(|b| y_index(q, a + 1, b + 1)).collect())
        .collect();
    let nice = td.nice();
    // colouring key: four bits per vertex, only bag vertices set
    type Table = FxHashMap<u64, FxHashMap<Vec<u16>, u128>>;
    let colour = |key: u64, v: usize| (key >> (4 * v) & 15) as usize;
    let mut tables: Vec<Option<Table>> = vec![None; nice.nodes.len()];
    for (i, node) in nice.nodes.iter().enumerate() {
        let table: Table = match node.kind {
            NiceKind::Leaf => {
                let mut t = Table::default();
                t.entry(0).or_default().insert(vec![0u16; nvars], 1);
                t
            }
            NiceKind::Introduce { vertex, child } => {
                let prev = tables[child].take().expect("child evaluated");
                let mut t = Table::default();
                for (key, poly) in prev {
                    for c in 0..q {
                        t.insert(key | (c as u64) << (4 * vertex), poly.clone());
                    }
                }
                t
            }
            NiceKind::Forget { vertex, child } => {
                let prev = tables[child].take().expect("child evaluated");
                let mut t = Table::default();
                let nbrs = g.adj(vertex) & node.bag;
                for (key, poly) in prev {
                    let c = colour(key, vertex);
                    let mut shift = vec![0u16; nvars];
                    shift[c] += 1;
                    for w in bits(nbrs) {
                        shift[yidx[c][colour(key, w)]] += 1;
                    }
                    let out = t.entry(key & !(15u64 << (4 * vertex))).or_default();
                    for (mono, coeff) in poly {
                        let m: Vec<u16> = mono.iter().zip(&shift).map(|(a, b)| a + b).collect();
                        *out.entry(m).or_insert(0) += coeff;
                    }
                }
                t
            }
            NiceKind::Join { left, right } => {
                let a = tables[left].take().expect("child evaluated");
                let b = tables[right].take().expect("child evaluated");
                let mut t = Table::default();
                for (key, pa) in a {
                    let Some(pb) = b.get(&key) else { continue };
                    let mut out: FxHashMap<Vec<u16>, u128> = FxHashMap::default();
                    for (ma, ca) in &pa {
                        for (mb, cb) in pb {
                            let m: Vec<u16> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                            *out.entry(m).or_insert(0) += ca * cb;
                        }
                    }
                    t.insert(key, out);
                }
                t
            }
        };
        tables[i] = Some(table);
    }
    let root = tables[nice.root].take().expect("root evaluated");
    let space = VarSpace::homomorphism(q);
    let terms = root
        .into_values()
        .flatten()
        .map(|(m, c)| (m.into_iter().map(i32::from).collect(), BigInt::from(c)));
    Ok(Polynomial::from_terms(&space, terms))
}

/// Which graph [`best_side`] ran the decomposition DP on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Graph,
    Complement,
}

/// `P_q(G)` through the decomposition DP on whichever of `g` and its
/// complement has smaller treewidth, transforming back in the second case.
pub fn best_side(g: &Graph, q: usize) -> Result<Polynomial> {
    Ok(best_side_with_choice(g, q)?.0)
}

pub fn best_side_with_choice(g: &Graph, q: usize) -> Result<(Polynomial, Side)> {
    let (w, td) = exact_treewidth(g)?;
    let co = g.complement();
    let (wc, tdc) = exact_treewidth(&co)?;
    if wc < w {
        let p = dp_hom_poly(&co, &tdc, q)?;
        Ok((complement_transform(&p, g.n())?, Side::Complement))
    } else {
        Ok((dp_hom_poly(g, &td, q)?, Side::Graph))
    }
}
