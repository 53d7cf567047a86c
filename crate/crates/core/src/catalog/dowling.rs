//! Dowling geometries of finite groups, built from their circuits on a gain
//! graph and cross-checked against the frame-matroid rank formula.

use crate::error::{MatroidError, Result};
use crate::layout::PartLayout;
use crate::mask::{SubsetMask, MAX_GROUND};
use crate::matroid::{matroid_from_circuits, Matroid};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self> {
        let g = mul.len();
        let bad = |msg: String| Err(MatroidError::Precondition(msg));
        if g == 0 {
            return bad("a group needs at least one element".into());
        }
        if mul.iter().any(|row| row.len() != g || row.iter().any(|&x| x >= g)) {
            return bad("multiplication table is not closed".into());
        }
        for a in 0..g {
            for b in 0..g {
                for c in 0..g {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return bad(format!("({a}*{b})*{c} != {a}*({b}*{c})"));
                    }
                }
            }
        }
        let Some(identity) = (0..g).find(|&e| (0..g).all(|a| mul[e][a] == a && mul[a][e] == a))
        else {
            return bad("no identity element".into());
        };
        let mut inverse = Vec::with_capacity(g);
        for a in 0..g {
            match (0..g).find(|&b| mul[a][b] == identity && mul[b][a] == identity) {
                Some(b) => inverse.push(b),
                None => return bad(format!("{a} has no inverse")),
            }
        }
        Ok(GroupTable {
            mul,
            identity,
            inverse,
        })
    }

    /// `Z_g` with elements `0..g` under addition mod `g`.
    pub fn cyclic(g: usize) -> Result<Self> {
        Self::new((0..g).map(|a| (0..g).map(|b| (a + b) % g).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// An oriented edge `tail -> head` with gain `label`; loops have
/// `tail == head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GainEdge {
    pub tail: usize,
    pub head: usize,
    pub label: usize,
}

impl GainEdge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug)]
pub struct GainGraph {
    pub group: GroupTable,
    pub vertices: usize,
    pub edges: Vec<GainEdge>,
}

impl GainGraph {
    /// The Dowling gain graph on `n` vertices: for each pair `u < v`, one edge
    /// `u -> v` per group element, then at each vertex one loop per
    /// non-identity element. Edges are numbered in that order.
    pub fn dowling(group: &GroupTable, n: usize) -> Result<Self> {
        let g = group.order();
        let size = n * n.saturating_sub(1) / 2 * g + n * (g - 1);
        if n == 0 || size == 0 {
            return Err(MatroidError::EmptyGround);
        }
        if size > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(size));
        }
        let mut edges = Vec::with_capacity(size);
        for u in 0..n {
            for v in u + 1..n {
                edges.extend((0..g).map(|label| GainEdge { tail: u, head: v, label }));
            }
        }
        for v in 0..n {
            edges.extend(
                (0..g)
                    .filter(|&l| l != group.identity())
                    .map(|label| GainEdge { tail: v, head: v, label }),
            );
        }
        Ok(GainGraph {
            group: group.clone(),
            vertices: n,
            edges,
        })
    }

    fn ground(&self) -> usize {
        self.edges.len()
    }

    fn touched(&self, x: SubsetMask) -> u32 {
        x.elements()
            .fold(0u32, |acc, i| acc | 1 << self.edges[i].tail | 1 << self.edges[i].head)
    }

    /// Degrees (a loop counts twice) of the subgraph `x`.
    fn degrees(&self, x: SubsetMask) -> Vec<usize> {
        let mut deg = vec![0; self.vertices];
        for i in x.elements() {
            deg[self.edges[i].tail] += 1;
            deg[self.edges[i].head] += 1;
        }
        deg
    }

    fn connected(&self, x: SubsetMask) -> bool {
        let verts = self.touched(x);
        if verts == 0 {
            return false;
        }
        let mut reached = 1u32 << verts.trailing_zeros();
        loop {
            let before = reached;
            for i in x.elements() {
                let GainEdge { tail, head, .. } = self.edges[i];
                if reached >> tail & 1 == 1 || reached >> head & 1 == 1 {
                    reached |= 1 << tail | 1 << head;
                }
            }
            if reached == before {
                return reached == verts;
            }
        }
    }

    fn is_cycle(&self, x: SubsetMask) -> bool {
        !x.is_empty()
            && self.connected(x)
            && self.touched(x).count_ones() as usize == x.len()
            && self.degrees(x).iter().all(|&d| d == 0 || d == 2)
    }

    /// Gain of a cycle, read by walking it once.
    fn cycle_gain(&self, x: SubsetMask) -> usize {
        let grp = &self.group;
        let first = x.elements().next().expect("non-empty cycle");
        let start = self.edges[first];
        let mut gain = start.label;
        let mut at = start.head;
        let mut prev = first;
        while at != start.tail {
            let next = x
                .elements()
                .find(|&i| {
                    i != prev && (self.edges[i].tail == at || self.edges[i].head == at)
                })
                .expect("cycle is 2-regular");
            let e = self.edges[next];
            if e.tail == at {
                gain = grp.mul(gain, e.label);
                at = e.head;
            } else {
                gain = grp.mul(gain, grp.inv(e.label));
                at = e.tail;
            }
            prev = next;
        }
        gain
    }

    fn is_positive_cycle(&self, x: SubsetMask) -> bool {
        self.is_cycle(x) && self.cycle_gain(x) == self.group.identity()
    }

    /// Connected, `|E| = |V| + 1`, no vertex of degree 1 (a theta or a
    /// handcuff), and every cycle inside it negative.
    fn is_bicycle(&self, x: SubsetMask) -> bool {
        self.connected(x)
            && x.len() == self.touched(x).count_ones() as usize + 1
            && self.degrees(x).iter().all(|&d| d != 1)
            && !x.subsets().any(|y| self.is_positive_cycle(y))
    }
}

/// Every circuit of the Dowling matroid: positive cycles and bicycles whose
/// cycles are all negative.
pub fn dowling_circuits(graph: &GainGraph) -> Vec<SubsetMask> {
    (1..1u32 << graph.ground())
        .map(SubsetMask)
        .filter(|&x| graph.is_positive_cycle(x) || graph.is_bicycle(x))
        .collect()
}

/// Frame-matroid rank `|V(X)| - b(X)`, where `b(X)` counts the balanced
/// components of `X`. A component is balanced when vertex potentials with
/// `p(head) = p(tail) * label` exist on it; loops are never balanced.
pub fn bias_rank_table(graph: &GainGraph) -> Vec<u8> {
    let grp = &graph.group;
    (0..1u32 << graph.ground())
        .map(|x| {
            let x = SubsetMask(x);
            let mut potential: Vec<Option<usize>> = vec![None; graph.vertices];
            let mut verts = graph.touched(x);
            let touched = verts.count_ones() as usize;
            let mut balanced = 0;
            while verts != 0 {
                let root = verts.trailing_zeros() as usize;
                potential[root] = Some(grp.identity());
                let mut comp = 1u32 << root;
                let mut ok = true;
                loop {
                    let before = comp;
                    for i in x.elements() {
                        let e = graph.edges[i];
                        let (t, h) = (comp >> e.tail & 1 == 1, comp >> e.head & 1 == 1);
                        if e.is_loop() {
                            ok &= !t;
                            continue;
                        }
                        match (potential[e.tail], potential[e.head]) {
                            (Some(pt), None) if t => {
                                potential[e.head] = Some(grp.mul(pt, e.label));
                                comp |= 1 << e.head;
                            }
                            (None, Some(ph)) if h => {
                                potential[e.tail] = Some(grp.mul(ph, grp.inv(e.label)));
                                comp |= 1 << e.tail;
                            }
                            (Some(pt), Some(ph)) if t && h => {
                                ok &= grp.mul(pt, e.label) == ph;
                            }
                            _ => {}
                        }
                    }
                    if comp == before {
                        break;
                    }
                }
                balanced += ok as usize;
                verts &= !comp;
            }
            (touched - balanced) as u8
        })
        .collect()
}

fn layout(graph: &GainGraph) -> PartLayout {
    let mut out = PartLayout::new();
    for (i, e) in graph.edges.iter().enumerate() {
        let name = if e.is_loop() {
            format!("l{}_g{}", e.tail, e.label)
        } else {
            format!("e{}_{}_g{}", e.tail, e.head, e.label)
        };
        out.insert(name, SubsetMask::singleton(i));
    }
    out
}

/// The Dowling geometry of `group` on `n` vertices.
pub fn dowling(group: &GroupTable, n: usize) -> Result<Matroid> {
    let graph = GainGraph::dowling(group, n)?;
    let rank = if group.order() > 1 { n } else { n - 1 };
    let m = matroid_from_circuits(
        graph.ground(),
        rank,
        &dowling_circuits(&graph),
        format!("Q{n}(Z{})", group.order()),
    )?;
    if m.table() != bias_rank_table(&graph).as_slice() {
        return Err(MatroidError::Precondition(
            "Dowling circuit table disagrees with the bias rank formula".into(),
        ));
    }
    Ok(m.with_layout(Some(layout(&graph))))
}
