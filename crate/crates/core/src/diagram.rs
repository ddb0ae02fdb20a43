//! Oriented, ordered link diagrams in PD form, and the diagram-level
//! operations: validation, Reidemeister I/II reduction, crossing
//! switch/smoothing, linking numbers, sublinks, connected sum, and the
//! closure / band-sum constructions (compiled from slice presentations
//! by [`crate::scene`]).
//!
//! A crossing stores its four incident arcs counterclockwise starting
//! from the incoming under-arc, plus its sign. The under-strand always
//! flows slot 0 → slot 2; the over-strand flows 3 → 1 at a positive
//! crossing and 1 → 3 at a negative one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scene;
use crate::slices::{IndexSequence, StringLinkSlices};

pub type ArcId = u32;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    /// Incident arcs, counterclockwise from the incoming under-arc.
    pub arcs: [ArcId; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn over_in_slot(&self) -> usize {
        if self.sign > 0 {
            3
        } else {
            1
        }
    }

    pub fn over_out_slot(&self) -> usize {
        if self.sign > 0 {
            1
        } else {
            3
        }
    }
}

/// An oriented link diagram with ordered components.
///
/// `components[i]` lists the arcs of component `i` in traversal order;
/// a crossing-free component is a single arc incident to no crossing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    pub components: Vec<Vec<ArcId>>,
    pub n_arcs: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DiagramError {
    BadArcId { arc: ArcId, n_arcs: u32 },
    BadSign { crossing: usize },
    ArcUsage { arc: ArcId, detail: &'static str },
    BrokenCycle { component: usize },
    NotPlanar { piece_crossings: usize, faces: usize },
    ComponentCount { have: usize, want: usize },
    NoSuchCrossing { crossing: usize },
    EmptyDiagram,
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::BadArcId { arc, n_arcs } => {
                write!(f, "arc id {} out of range (n_arcs = {})", arc, n_arcs)
            }
            DiagramError::BadSign { crossing } => write!(f, "crossing {} has sign not in {{-1,+1}}", crossing),
            DiagramError::ArcUsage { arc, detail } => write!(f, "arc {}: {}", arc, detail),
            DiagramError::BrokenCycle { component } => {
                write!(f, "component {} is not a consistent closed cycle", component)
            }
            DiagramError::NotPlanar { piece_crossings, faces } => write!(
                f,
                "face count {} does not match planar expectation for a {}-crossing piece",
                faces, piece_crossings
            ),
            DiagramError::ComponentCount { have, want } => {
                write!(f, "diagram has {} components, expected {}", have, want)
            }
            DiagramError::NoSuchCrossing { crossing } => write!(f, "no crossing {}", crossing),
            DiagramError::EmptyDiagram => write!(f, "diagram has no components"),
        }
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: u32) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, a: u32) -> u32 {
        let mut a = a;
        while self.parent[a as usize] != a {
            let p = self.parent[a as usize];
            self.parent[a as usize] = self.parent[p as usize];
            a = self.parent[a as usize];
        }
        a
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Where each arc leaves from / arrives at.
pub struct ArcFlow {
    /// `tail[a]` = (crossing, slot) the arc exits, if any.
    pub tail: Vec<Option<(u32, u8)>>,
    /// `head[a]` = (crossing, slot) the arc enters, if any.
    pub head: Vec<Option<(u32, u8)>>,
}

impl LinkDiagram {
    /// Zero-crossing unknot.
    pub fn unknot() -> LinkDiagram {
        LinkDiagram {
            crossings: Vec::new(),
            components: vec![vec![0]],
            n_arcs: 1,
        }
    }

    /// Crossing-free diagram of the `r`-component unlink.
    pub fn unlink(r: usize) -> LinkDiagram {
        LinkDiagram {
            crossings: Vec::new(),
            components: (0..r as u32).map(|a| vec![a]).collect(),
            n_arcs: r as u32,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Build the arc flow maps; errors on inconsistent usage.
    pub fn flow(&self) -> Result<ArcFlow, DiagramError> {
        let mut tail = vec![None; self.n_arcs as usize];
        let mut head = vec![None; self.n_arcs as usize];
        for (ci, c) in self.crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(DiagramError::BadSign { crossing: ci });
            }
            let ins = [(0usize, c.arcs[0]), (c.over_in_slot(), c.arcs[c.over_in_slot()])];
            let outs = [(2usize, c.arcs[2]), (c.over_out_slot(), c.arcs[c.over_out_slot()])];
            for (slot, a) in ins {
                if a >= self.n_arcs {
                    return Err(DiagramError::BadArcId { arc: a, n_arcs: self.n_arcs });
                }
                if head[a as usize].is_some() {
                    return Err(DiagramError::ArcUsage { arc: a, detail: "enters two crossings" });
                }
                head[a as usize] = Some((ci as u32, slot as u8));
            }
            for (slot, a) in outs {
                if a >= self.n_arcs {
                    return Err(DiagramError::BadArcId { arc: a, n_arcs: self.n_arcs });
                }
                if tail[a as usize].is_some() {
                    return Err(DiagramError::ArcUsage { arc: a, detail: "leaves two crossings" });
                }
                tail[a as usize] = Some((ci as u32, slot as u8));
            }
        }
        for a in 0..self.n_arcs as usize {
            if tail[a].is_some() != head[a].is_some() {
                return Err(DiagramError::ArcUsage {
                    arc: a as u32,
                    detail: "arc has one end at a crossing and one loose end",
                });
            }
        }
        Ok(ArcFlow { tail, head })
    }

    /// The arc following `a` along its component.
    fn next_arc(&self, flow: &ArcFlow, a: ArcId) -> Option<ArcId> {
        let (c, slot) = flow.head[a as usize]?;
        let cr = &self.crossings[c as usize];
        Some(if slot == 0 {
            cr.arcs[2]
        } else {
            cr.arcs[cr.over_out_slot()]
        })
    }

    /// Full validation: arc usage, component cycles, and planarity of
    /// every connected piece by face count.
    pub fn validate(&self) -> Result<(), DiagramError> {
        if self.components.is_empty() {
            return Err(DiagramError::EmptyDiagram);
        }
        let flow = self.flow()?;
        // components partition the arcs and close up
        let mut seen = vec![false; self.n_arcs as usize];
        for (ci, cycle) in self.components.iter().enumerate() {
            if cycle.is_empty() {
                return Err(DiagramError::BrokenCycle { component: ci });
            }
            for (k, &a) in cycle.iter().enumerate() {
                if a >= self.n_arcs {
                    return Err(DiagramError::BadArcId { arc: a, n_arcs: self.n_arcs });
                }
                if seen[a as usize] {
                    return Err(DiagramError::ArcUsage { arc: a, detail: "arc in two components" });
                }
                seen[a as usize] = true;
                let succ = cycle[(k + 1) % cycle.len()];
                match self.next_arc(&flow, a) {
                    Some(b) if b == succ => {}
                    None if cycle.len() == 1 => {}
                    _ => return Err(DiagramError::BrokenCycle { component: ci }),
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(DiagramError::ArcUsage {
                arc: seen.iter().position(|&s| !s).unwrap() as u32,
                detail: "arc not in any component",
            });
        }
        self.check_planarity(&flow)
    }

    /// Euler-characteristic planarity check per connected piece:
    /// a 4-valent piece with `v` crossings must trace `v + 2` faces.
    fn check_planarity(&self, flow: &ArcFlow) -> Result<(), DiagramError> {
        if self.crossings.is_empty() {
            return Ok(());
        }
        // group crossings into connected pieces via shared arcs
        let mut piece = vec![usize::MAX; self.crossings.len()];
        let mut n_pieces = 0;
        for start in 0..self.crossings.len() {
            if piece[start] != usize::MAX {
                continue;
            }
            let id = n_pieces;
            n_pieces += 1;
            let mut stack = vec![start];
            piece[start] = id;
            while let Some(c) = stack.pop() {
                for &a in &self.crossings[c].arcs {
                    for end in [flow.tail[a as usize], flow.head[a as usize]] {
                        if let Some((c2, _)) = end {
                            if piece[c2 as usize] == usize::MAX {
                                piece[c2 as usize] = id;
                                stack.push(c2 as usize);
                            }
                        }
                    }
                }
            }
        }
        let faces = self.faces(flow);
        let mut face_count = vec![0usize; n_pieces];
        for face in &faces {
            let (arc, _) = face[0];
            let c = flow.head[arc as usize]
                .or(flow.tail[arc as usize])
                .expect("face dart on a free loop");
            face_count[piece[c.0 as usize]] += 1;
        }
        let mut crossing_count = vec![0usize; n_pieces];
        for &p in &piece {
            crossing_count[p] += 1;
        }
        for p in 0..n_pieces {
            if face_count[p] != crossing_count[p] + 2 {
                return Err(DiagramError::NotPlanar {
                    piece_crossings: crossing_count[p],
                    faces: face_count[p],
                });
            }
        }
        Ok(())
    }

    /// Faces of the underlying 4-valent map, as cycles of darts
    /// `(arc, with_orientation)`. Free-loop arcs are skipped.
    pub fn faces(&self, flow: &ArcFlow) -> Vec<Vec<(ArcId, bool)>> {
        // dart (a, true) points into head[a]; (a, false) into tail[a].
        let mut visited: BTreeSet<(ArcId, bool)> = BTreeSet::new();
        let mut faces = Vec::new();
        let darts: Vec<(ArcId, bool)> = (0..self.n_arcs)
            .flat_map(|a| [(a, true), (a, false)])
            .filter(|&(a, with)| {
                if with {
                    flow.head[a as usize].is_some()
                } else {
                    flow.tail[a as usize].is_some()
                }
            })
            .collect();
        for &start in &darts {
            if visited.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            loop {
                visited.insert(d);
                face.push(d);
                let (a, with) = d;
                let (c, slot) = if with {
                    flow.head[a as usize].unwrap()
                } else {
                    flow.tail[a as usize].unwrap()
                };
                let cr = &self.crossings[c as usize];
                let next_slot = ((slot as usize) + 1) % 4;
                let b = cr.arcs[next_slot];
                // the next dart points away from c along b
                let b_with = match flow.tail[b as usize] {
                    Some((c2, s2)) if c2 == c && s2 as usize == next_slot => true,
                    _ => false,
                };
                d = (b, b_with);
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    // -----------------------------------------------------------------
    // Rebuilding after local modifications
    // -----------------------------------------------------------------

    /// Rebuild with the given arc identifications and crossing set
    /// removed. Component order is inherited from the old components.
    fn rebuild(&self, merge: &mut UnionFind, drop_crossings: &BTreeSet<usize>, drop_components: &BTreeSet<usize>) -> LinkDiagram {
        // map union-find classes of surviving arcs to fresh ids
        let mut class_id: BTreeMap<u32, u32> = BTreeMap::new();
        let mut crossings = Vec::new();
        let mut fresh = 0u32;
        let mut id_of = |class_id: &mut BTreeMap<u32, u32>, fresh: &mut u32, root: u32| -> u32 {
            *class_id.entry(root).or_insert_with(|| {
                let id = *fresh;
                *fresh += 1;
                id
            })
        };
        let mut cross_map = vec![usize::MAX; self.crossings.len()];
        for (ci, c) in self.crossings.iter().enumerate() {
            if drop_crossings.contains(&ci) {
                continue;
            }
            cross_map[ci] = crossings.len();
            let arcs = [
                id_of(&mut class_id, &mut fresh, merge.find(c.arcs[0])),
                id_of(&mut class_id, &mut fresh, merge.find(c.arcs[1])),
                id_of(&mut class_id, &mut fresh, merge.find(c.arcs[2])),
                id_of(&mut class_id, &mut fresh, merge.find(c.arcs[3])),
            ];
            crossings.push(Crossing { arcs, sign: c.sign });
        }
        // trace components in inherited order
        let mut interim = LinkDiagram {
            crossings,
            components: Vec::new(),
            n_arcs: fresh,
        };
        let mut used: BTreeSet<u32> = BTreeSet::new();
        let mut loop_classes: BTreeSet<u32> = BTreeSet::new();
        let flow = interim.flow().expect("rebuild produced inconsistent arcs");
        let mut components = Vec::new();
        for (ci, cycle) in self.components.iter().enumerate() {
            if drop_components.contains(&ci) {
                continue;
            }
            for &old_arc in cycle {
                let root = merge.find(old_arc);
                match class_id.get(&root) {
                    Some(&a) => {
                        if used.contains(&a) {
                            continue;
                        }
                        let mut comp = Vec::new();
                        let mut cur = a;
                        loop {
                            used.insert(cur);
                            comp.push(cur);
                            cur = interim
                                .next_arc(&flow, cur)
                                .expect("arc chain leaves the crossing set");
                            if cur == a {
                                break;
                            }
                        }
                        components.push(comp);
                    }
                    None => {
                        // class without crossings: a crossing-free circle
                        if loop_classes.insert(root) {
                            let id = fresh;
                            fresh += 1;
                            interim.n_arcs = fresh;
                            components.push(vec![id]);
                        }
                    }
                }
            }
        }
        LinkDiagram {
            crossings: interim.crossings,
            components,
            n_arcs: fresh,
        }
    }

    // -----------------------------------------------------------------
    // Skein moves
    // -----------------------------------------------------------------

    /// Negate the sign of crossing `c`, exchanging its over- and
    /// under-strand. Arcs and components are unchanged.
    pub fn switch_crossing(&self, c: usize) -> Result<LinkDiagram, DiagramError> {
        let cr = *self
            .crossings
            .get(c)
            .ok_or(DiagramError::NoSuchCrossing { crossing: c })?;
        let arcs = if cr.sign > 0 {
            // incoming over becomes incoming under
            [cr.arcs[3], cr.arcs[0], cr.arcs[1], cr.arcs[2]]
        } else {
            [cr.arcs[1], cr.arcs[2], cr.arcs[3], cr.arcs[0]]
        };
        let mut out = self.clone();
        out.crossings[c] = Crossing { arcs, sign: -cr.sign };
        Ok(out)
    }

    /// Replace crossing `c` by the oriented smoothing. The component
    /// count changes by ±1.
    pub fn smooth_crossing(&self, c: usize) -> Result<LinkDiagram, DiagramError> {
        let cr = *self
            .crossings
            .get(c)
            .ok_or(DiagramError::NoSuchCrossing { crossing: c })?;
        let mut merge = UnionFind::new(self.n_arcs);
        if cr.sign > 0 {
            // join in-under(0) -> out-over(1), in-over(3) -> out-under(2)
            merge.union(cr.arcs[0], cr.arcs[1]);
            merge.union(cr.arcs[3], cr.arcs[2]);
        } else {
            merge.union(cr.arcs[0], cr.arcs[3]);
            merge.union(cr.arcs[1], cr.arcs[2]);
        }
        let mut drop = BTreeSet::new();
        drop.insert(c);
        Ok(self.rebuild(&mut merge, &drop, &BTreeSet::new()))
    }

    // -----------------------------------------------------------------
    // Reidemeister I/II reduction
    // -----------------------------------------------------------------

    /// One reduction step: remove a kink or a reducible bigon.
    /// Returns None when fully reduced.
    fn reduce_step(&self) -> Option<LinkDiagram> {
        // kinks: an arc occupying two cyclically adjacent slots
        for (ci, c) in self.crossings.iter().enumerate() {
            for s in 0..4 {
                if c.arcs[s] == c.arcs[(s + 1) % 4] {
                    let loop_arc = c.arcs[s];
                    let p = c.arcs[(s + 2) % 4];
                    let q = c.arcs[(s + 3) % 4];
                    let mut merge = UnionFind::new(self.n_arcs);
                    merge.union(p, loop_arc);
                    merge.union(loop_arc, q);
                    let mut drop = BTreeSet::new();
                    drop.insert(ci);
                    return Some(self.rebuild(&mut merge, &drop, &BTreeSet::new()));
                }
            }
        }
        // bigons with alternating over/under
        let flow = self.flow().expect("reduce on invalid diagram");
        let slot_of = |a: ArcId, c: u32| -> Option<usize> {
            let cr = &self.crossings[c as usize];
            (0..4).find(|&s| {
                cr.arcs[s] == a && {
                    // match the specific end of the arc
                    let here = (c, s as u8);
                    flow.head[a as usize] == Some(here) || flow.tail[a as usize] == Some(here)
                }
            })
        };
        for face in self.faces(&flow) {
            if face.len() != 2 {
                continue;
            }
            let (x, x_with) = face[0];
            let (y, _) = face[1];
            if x == y {
                continue;
            }
            // endpoints of x: the crossing it points into along the face, and the other one
            let (c, sxc) = if x_with {
                flow.head[x as usize].unwrap()
            } else {
                flow.tail[x as usize].unwrap()
            };
            let (d, sxd) = if x_with {
                flow.tail[x as usize].unwrap()
            } else {
                flow.head[x as usize].unwrap()
            };
            if c == d {
                continue;
            }
            let x_over_c = sxc == 1 || sxc == 3;
            let x_over_d = sxd == 1 || sxd == 3;
            if x_over_c != x_over_d {
                continue; // clasp, not removable
            }
            // continuations beyond the bigon
            let a = self.crossings[c as usize].arcs[(sxc as usize + 2) % 4];
            let b = self.crossings[d as usize].arcs[(sxd as usize + 2) % 4];
            let syc = slot_of(y, c).expect("bigon side missing at crossing");
            let syd = slot_of(y, d).expect("bigon side missing at crossing");
            let e = self.crossings[c as usize].arcs[(syc + 2) % 4];
            let f = self.crossings[d as usize].arcs[(syd + 2) % 4];
            let mut merge = UnionFind::new(self.n_arcs);
            merge.union(a, x);
            merge.union(x, b);
            merge.union(e, y);
            merge.union(y, f);
            let mut drop = BTreeSet::new();
            drop.insert(c as usize);
            drop.insert(d as usize);
            return Some(self.rebuild(&mut merge, &drop, &BTreeSet::new()));
        }
        None
    }

    /// Monotone Reidemeister I/II reduction to a local fixed point.
    /// Invariant-preserving; never increases the crossing count.
    pub fn simplify(&self) -> LinkDiagram {
        let mut d = self.clone();
        while let Some(next) = d.reduce_step() {
            d = next;
        }
        d
    }

    // -----------------------------------------------------------------
    // Linking numbers and sublinks
    // -----------------------------------------------------------------

    /// 0-based component id of each arc.
    pub fn component_of_arcs(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n_arcs as usize];
        for (ci, cycle) in self.components.iter().enumerate() {
            for &a in cycle {
                comp[a as usize] = ci;
            }
        }
        comp
    }

    /// Half the signed count of crossings between components `i` and
    /// `j` (1-based).
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64, DiagramError> {
        if i == 0 || j == 0 || i > self.components.len() || j > self.components.len() || i == j {
            return Err(DiagramError::ComponentCount {
                have: self.components.len(),
                want: i.max(j),
            });
        }
        let comp = self.component_of_arcs();
        let (i, j) = (i - 1, j - 1);
        let mut total = 0i64;
        for c in &self.crossings {
            let cu = comp[c.arcs[0] as usize];
            let co = comp[c.arcs[c.over_in_slot()] as usize];
            if (cu == i && co == j) || (cu == j && co == i) {
                total += c.sign as i64;
            }
        }
        debug_assert!(total % 2 == 0);
        Ok(total / 2)
    }

    /// Total linking `Lk = Σ_{i<j} lk(i,j)`.
    pub fn total_linking(&self) -> i64 {
        let n = self.components.len();
        let mut lk = 0;
        for i in 1..=n {
            for j in (i + 1)..=n {
                lk += self.linking_number(i, j).unwrap();
            }
        }
        lk
    }

    /// The sublink of the given (1-based) components, as a diagram.
    /// Crossings with exactly one kept strand dissolve.
    pub fn keep_components(&self, keep: &[usize]) -> LinkDiagram {
        let comp = self.component_of_arcs();
        let kept = |a: ArcId| keep.contains(&(comp[a as usize] + 1));
        let mut merge = UnionFind::new(self.n_arcs);
        let mut drop_crossings = BTreeSet::new();
        for (ci, c) in self.crossings.iter().enumerate() {
            let under_kept = kept(c.arcs[0]);
            let over_kept = kept(c.arcs[c.over_in_slot()]);
            match (under_kept, over_kept) {
                (true, true) => {}
                (false, false) => {
                    drop_crossings.insert(ci);
                }
                (true, false) => {
                    merge.union(c.arcs[0], c.arcs[2]);
                    drop_crossings.insert(ci);
                }
                (false, true) => {
                    merge.union(c.arcs[c.over_in_slot()], c.arcs[c.over_out_slot()]);
                    drop_crossings.insert(ci);
                }
            }
        }
        let drop_components: BTreeSet<usize> = (0..self.components.len())
            .filter(|ci| !keep.contains(&(ci + 1)))
            .collect();
        self.rebuild(&mut merge, &drop_crossings, &drop_components)
    }

    /// Connected sum of two knot diagrams, spliced at the first arc of
    /// each.
    pub fn connect_sum(&self, other: &LinkDiagram) -> Result<LinkDiagram, DiagramError> {
        if self.component_count() != 1 || other.component_count() != 1 {
            return Err(DiagramError::ComponentCount {
                have: self.component_count().max(other.component_count()),
                want: 1,
            });
        }
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        let off = self.n_arcs;
        let coff = self.crossings.len();
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            arcs: [
                c.arcs[0] + off,
                c.arcs[1] + off,
                c.arcs[2] + off,
                c.arcs[3] + off,
            ],
            sign: c.sign,
        }));
        let x = self.components[0][0];
        let y = other.components[0][0] + off;
        // cut x and y and cross-join: x now flows into y's head, y into x's head
        let flow_a = self.flow()?;
        let flow_b = other.flow()?;
        let (cx, sx) = flow_a.head[x as usize].expect("knot with crossings has arc heads");
        let (cy, sy) = flow_b.head[(y - off) as usize].expect("knot with crossings has arc heads");
        crossings[cx as usize].arcs[sx as usize] = y;
        crossings[cy as usize + coff].arcs[sy as usize] = x;
        // re-trace the single component
        let interim = LinkDiagram {
            crossings,
            components: vec![],
            n_arcs: self.n_arcs + other.n_arcs,
        };
        let flow = interim.flow()?;
        let mut comp = Vec::new();
        let mut cur = x;
        loop {
            comp.push(cur);
            cur = interim.next_arc(&flow, cur).expect("spliced arc chain breaks");
            if cur == x {
                break;
            }
        }
        let n = comp.len();
        if n as u32 != interim.n_arcs {
            return Err(DiagramError::BrokenCycle { component: 0 });
        }
        Ok(LinkDiagram {
            crossings: interim.crossings,
            components: vec![comp],
            n_arcs: n as u32,
        })
    }

    /// Split into connected pieces (sets of 1-based component ids); a
    /// piece shares no crossing with the rest.
    pub fn split_pieces(&self) -> Vec<Vec<usize>> {
        let n = self.components.len();
        let comp = self.component_of_arcs();
        let mut uf = UnionFind::new(n as u32);
        for c in &self.crossings {
            let a = comp[c.arcs[0] as usize] as u32;
            let b = comp[c.arcs[c.over_in_slot()] as usize] as u32;
            uf.union(a, b);
        }
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            groups.entry(uf.find(i as u32)).or_default().push(i + 1);
        }
        let mut pieces: Vec<Vec<usize>> = groups.into_values().collect();
        pieces.sort_by_key(|p| p[0]);
        pieces
    }
}

// ---------------------------------------------------------------------------
// Closure and band-sum constructions
// ---------------------------------------------------------------------------

/// A band-sum pattern: the chain order in which the listed components
/// are fused through a disk whose connectors run below the diagram,
/// nested and passing under everything.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FusionSpec {
    seq: IndexSequence,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FusionError {
    RepeatedIndex,
    OutOfRange { index: u8, width: usize },
    NotASubsequence,
    Slice(crate::slices::SliceError),
}

impl fmt::Display for FusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionError::RepeatedIndex => write!(f, "fusion sequence has a repeated index"),
            FusionError::OutOfRange { index, width } => {
                write!(f, "index {} out of range for width {}", index, width)
            }
            FusionError::NotASubsequence => write!(f, "not a subsequence of the fusion sequence"),
            FusionError::Slice(e) => write!(f, "{}", e),
        }
    }
}

impl From<crate::slices::SliceError> for FusionError {
    fn from(e: crate::slices::SliceError) -> FusionError {
        FusionError::Slice(e)
    }
}

impl FusionSpec {
    /// A fusion pattern for the distinct indices of `seq`, chained in
    /// the order they appear there.
    pub fn new(seq: &[u8]) -> Result<FusionSpec, FusionError> {
        let mut seen = BTreeSet::new();
        for &i in seq {
            if !seen.insert(i) {
                return Err(FusionError::RepeatedIndex);
            }
        }
        Ok(FusionSpec { seq: seq.to_vec() })
    }

    pub fn sequence(&self) -> &[u8] {
        &self.seq
    }

    /// All subsequences, in bitmask order (empty first, full last).
    pub fn subsequences(&self) -> Vec<IndexSequence> {
        let m = self.seq.len();
        (0..(1u32 << m))
            .map(|mask| {
                (0..m)
                    .filter(|k| mask & (1 << k) != 0)
                    .map(|k| self.seq[k])
                    .collect()
            })
            .collect()
    }
}

/// Closure of a string link: each strand closed by a crossing-free
/// return arc around the left of the diagram. Component order is
/// inherited from the strand order.
pub fn closure(t: &StringLinkSlices) -> Result<LinkDiagram, crate::slices::SliceError> {
    let tr = t.validate()?;
    Ok(scene::compile_closure(t, &tr))
}

/// Closure of an arbitrary braid-like presentation (components may
/// permute positions). Used for the diagram corpus.
pub fn braid_closure(t: &StringLinkSlices) -> Result<LinkDiagram, crate::slices::SliceError> {
    let tr = t.trace()?;
    Ok(scene::compile_closure(t, &tr))
}

/// The band-sum knot determined by a fusion pattern: keep the strands
/// listed in `sub`, cut each closure arc at its attachment segment, and
/// splice consecutive components (in chain order) through connectors
/// that dip below the diagram.
///
/// `sub` must be a subsequence of the pattern; the empty subsequence
/// yields a zero-crossing unknot.
pub fn fusion_knot(
    t: &StringLinkSlices,
    spec: &FusionSpec,
    sub: &[u8],
) -> Result<LinkDiagram, FusionError> {
    for &i in spec.sequence() {
        if i == 0 || i as usize > t.width {
            return Err(FusionError::OutOfRange { index: i, width: t.width });
        }
    }
    if !crate::slices::is_subsequence(sub, spec.sequence()) {
        return Err(FusionError::NotASubsequence);
    }
    if sub.is_empty() {
        return Ok(LinkDiagram::unknot());
    }
    let keep: Vec<usize> = {
        let mut v: Vec<usize> = sub.iter().map(|&i| i as usize).collect();
        v.sort_unstable();
        v
    };
    let reduced = t.delete_strands(&keep)?;
    let tr = reduced.validate()?;
    // chain order: positions of the kept strands in the reduced link,
    // in the order the subsequence lists them
    let chain: Vec<usize> = sub
        .iter()
        .map(|&i| keep.iter().position(|&k| k == i as usize).unwrap() + 1)
        .collect();
    Ok(scene::compile_fusion(&reduced, &tr, &chain))
}
