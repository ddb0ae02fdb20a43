//! Slice (Morse) presentations of string links, and the constructions
//! that operate on them: stacking, mirror-reverse, strand deletion,
//! cabling, and the index-sequence bookkeeping for cabling.
//!
//! A width-`n` presentation is an ordered list of events read bottom to
//! top. `Cross { pos, kind }` acts on adjacent positions `pos, pos+1`
//! (1-based); `kind = Pos` means the strand entering from the left
//! passes over, which is a positive crossing when both strands are
//! oriented upward. `Cap(pos)` joins positions `pos, pos+1` in a local
//! maximum; `Cup(pos)` inserts a fresh arc at positions `pos, pos+1`.
//!
//! [`Trace`] is the structural analysis everything else consumes: it
//! identifies the strand and orientation of every edge, orders each
//! strand's crossing visits, and computes crossing signs from the
//! traced orientations.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CrossKind {
    /// Left strand over (`x+` in the DSL).
    Pos,
    /// Left strand under (`x-`).
    Neg,
}

impl CrossKind {
    pub fn flip(self) -> CrossKind {
        match self {
            CrossKind::Pos => CrossKind::Neg,
            CrossKind::Neg => CrossKind::Pos,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SliceEvent {
    Cross { pos: usize, kind: CrossKind },
    Cap { pos: usize },
    Cup { pos: usize },
}

/// A string link (or more general tangle in the same shape) as a slice
/// presentation. Validity as a string link is checked by [`Trace`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StringLinkSlices {
    pub width: usize,
    pub events: Vec<SliceEvent>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SliceError {
    ZeroWidth,
    BadPosition { event: usize, pos: usize, slots: usize },
    WidthMismatch { top: usize, width: usize },
    ClosedLoop,
    NotAPermutation,
    NotAStringLink { strand: usize, exits_at: usize },
}

impl fmt::Display for SliceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceError::ZeroWidth => write!(f, "width must be at least 1"),
            SliceError::BadPosition { event, pos, slots } => write!(
                f,
                "event {}: position {} out of range for {} slots",
                event, pos, slots
            ),
            SliceError::WidthMismatch { top, width } => write!(
                f,
                "{} strands at the top, expected {} (unbalanced caps/cups)",
                top, width
            ),
            SliceError::ClosedLoop => write!(f, "presentation contains a closed loop"),
            SliceError::NotAPermutation => write!(f, "strand endpoints do not match up"),
            SliceError::NotAStringLink { strand, exits_at } => write!(
                f,
                "strand {} exits at position {}, not a string link",
                strand, exits_at
            ),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    Over,
    Under,
}

/// One crossing of the presentation, with edges named in sweep order
/// (`*_in` below the crossing, `*_out` above).
#[derive(Clone, Copy, Debug)]
pub struct TraceCrossing {
    pub event: usize,
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
    /// Crossing sign from the traced orientations.
    pub sign: i8,
}

/// One step of a strand traversal through a crossing, in strand order.
#[derive(Clone, Copy, Debug)]
pub struct Visit {
    pub crossing: usize,
    pub role: Role,
    pub from_edge: usize,
    pub to_edge: usize,
}

/// A strand traversal as an alternating edge / junction sequence.
#[derive(Clone, Copy, Debug)]
pub enum StrandStep {
    Edge { edge: usize, up: bool },
    Crossing { crossing: usize, role: Role },
    Turn,
}

#[derive(Clone, Copy, Debug)]
enum Conn {
    Crossing { c: usize, side: Role },
    Turn { partner: usize },
    Boundary { pos: usize },
}

/// Full structural analysis of a presentation.
#[derive(Clone, Debug)]
pub struct Trace {
    pub width: usize,
    pub n_edges: usize,
    pub crossings: Vec<TraceCrossing>,
    /// 0-based strand id per edge.
    pub strand_of_edge: Vec<usize>,
    /// True when the strand traverses the edge upward.
    pub edge_up: Vec<bool>,
    /// Per strand, crossing visits in strand order.
    pub visits: Vec<Vec<Visit>>,
    /// Per strand, the full alternating edge/junction walk.
    pub path: Vec<Vec<StrandStep>>,
    /// `permutation[i]` = 0-based top position reached by bottom strand `i`.
    pub permutation: Vec<usize>,
    /// First (bottom) edge of each strand.
    pub first_edge: Vec<usize>,
}

impl StringLinkSlices {
    pub fn trivial(width: usize) -> StringLinkSlices {
        StringLinkSlices {
            width,
            events: Vec::new(),
        }
    }

    pub fn new(width: usize, events: Vec<SliceEvent>) -> StringLinkSlices {
        StringLinkSlices { width, events }
    }

    /// Trace the presentation, computing strands, orientations and
    /// crossing signs. This is the shared validity check: a successful
    /// trace means the events form a tangle whose components each run
    /// from a bottom position to a top position.
    pub fn trace(&self) -> Result<Trace, SliceError> {
        if self.width == 0 {
            return Err(SliceError::ZeroWidth);
        }
        // Sweep, building edges and their end connections.
        let mut top_conn: Vec<Option<Conn>> = Vec::new();
        let mut bottom_conn: Vec<Option<Conn>> = Vec::new();
        let mut new_edge = |top: &mut Vec<Option<Conn>>, bot: &mut Vec<Option<Conn>>| -> usize {
            top.push(None);
            bot.push(None);
            top.len() - 1
        };
        let mut slots: Vec<usize> = Vec::new();
        for i in 0..self.width {
            let e = new_edge(&mut top_conn, &mut bottom_conn);
            bottom_conn[e] = Some(Conn::Boundary { pos: i });
            slots.push(e);
        }
        let mut crossings: Vec<TraceCrossing> = Vec::new();
        for (idx, ev) in self.events.iter().enumerate() {
            match *ev {
                SliceEvent::Cross { pos, kind } => {
                    if pos == 0 || pos + 1 > slots.len() {
                        return Err(SliceError::BadPosition {
                            event: idx,
                            pos,
                            slots: slots.len(),
                        });
                    }
                    let a = slots[pos - 1];
                    let b = slots[pos];
                    let a2 = new_edge(&mut top_conn, &mut bottom_conn);
                    let b2 = new_edge(&mut top_conn, &mut bottom_conn);
                    let c = crossings.len();
                    let (over_in, over_out, under_in, under_out) = match kind {
                        CrossKind::Pos => (a, a2, b, b2),
                        CrossKind::Neg => (b, b2, a, a2),
                    };
                    top_conn[over_in] = Some(Conn::Crossing { c, side: Role::Over });
                    bottom_conn[over_out] = Some(Conn::Crossing { c, side: Role::Over });
                    top_conn[under_in] = Some(Conn::Crossing { c, side: Role::Under });
                    bottom_conn[under_out] = Some(Conn::Crossing { c, side: Role::Under });
                    crossings.push(TraceCrossing {
                        event: idx,
                        over_in,
                        over_out,
                        under_in,
                        under_out,
                        sign: 0,
                    });
                    // the left edge lands on the right and vice versa
                    slots[pos - 1] = b2;
                    slots[pos] = a2;
                }
                SliceEvent::Cap { pos } => {
                    if pos == 0 || pos + 1 > slots.len() {
                        return Err(SliceError::BadPosition {
                            event: idx,
                            pos,
                            slots: slots.len(),
                        });
                    }
                    let a = slots[pos - 1];
                    let b = slots[pos];
                    top_conn[a] = Some(Conn::Turn { partner: b });
                    top_conn[b] = Some(Conn::Turn { partner: a });
                    slots.remove(pos);
                    slots.remove(pos - 1);
                }
                SliceEvent::Cup { pos } => {
                    if pos == 0 || pos > slots.len() + 1 {
                        return Err(SliceError::BadPosition {
                            event: idx,
                            pos,
                            slots: slots.len(),
                        });
                    }
                    let u = new_edge(&mut top_conn, &mut bottom_conn);
                    let v = new_edge(&mut top_conn, &mut bottom_conn);
                    bottom_conn[u] = Some(Conn::Turn { partner: v });
                    bottom_conn[v] = Some(Conn::Turn { partner: u });
                    slots.insert(pos - 1, u);
                    slots.insert(pos, v);
                }
            }
        }
        if slots.len() != self.width {
            return Err(SliceError::WidthMismatch {
                top: slots.len(),
                width: self.width,
            });
        }
        for (i, &e) in slots.iter().enumerate() {
            top_conn[e] = Some(Conn::Boundary { pos: i });
        }

        // Trace each strand from its bottom endpoint.
        let n_edges = top_conn.len();
        let mut strand_of_edge = vec![usize::MAX; n_edges];
        let mut edge_up = vec![true; n_edges];
        let mut visits: Vec<Vec<Visit>> = vec![Vec::new(); self.width];
        let mut path: Vec<Vec<StrandStep>> = vec![Vec::new(); self.width];
        let mut permutation = vec![usize::MAX; self.width];
        let mut first_edge = vec![usize::MAX; self.width];
        for s in 0..self.width {
            let mut edge = s; // bottom edges were created first, in order
            let mut up = true;
            first_edge[s] = edge;
            loop {
                if strand_of_edge[edge] != usize::MAX {
                    return Err(SliceError::NotAPermutation);
                }
                strand_of_edge[edge] = s;
                edge_up[edge] = up;
                path[s].push(StrandStep::Edge { edge, up });
                let conn = if up { top_conn[edge] } else { bottom_conn[edge] };
                match conn.expect("edge end left unconnected") {
                    Conn::Crossing { c, side } => {
                        let cr = &crossings[c];
                        let next = if up {
                            match side {
                                Role::Over => cr.over_out,
                                Role::Under => cr.under_out,
                            }
                        } else {
                            match side {
                                Role::Over => cr.over_in,
                                Role::Under => cr.under_in,
                            }
                        };
                        visits[s].push(Visit {
                            crossing: c,
                            role: side,
                            from_edge: edge,
                            to_edge: next,
                        });
                        path[s].push(StrandStep::Crossing { crossing: c, role: side });
                        edge = next;
                    }
                    Conn::Turn { partner } => {
                        path[s].push(StrandStep::Turn);
                        edge = partner;
                        up = !up;
                    }
                    Conn::Boundary { pos } => {
                        if up {
                            permutation[s] = pos;
                            break;
                        }
                        // walked down into a bottom endpoint: two bottom
                        // endpoints joined, so tops cannot all match up
                        return Err(SliceError::NotAPermutation);
                    }
                }
            }
        }
        if strand_of_edge.iter().any(|&s| s == usize::MAX) {
            return Err(SliceError::ClosedLoop);
        }

        // Crossing signs from the traced orientations.
        for cr in crossings.iter_mut() {
            let kind = match self.events[cr.event] {
                SliceEvent::Cross { kind, .. } => kind,
                _ => unreachable!(),
            };
            // left-in edge is over_in for Pos, under_in for Neg
            let (left, right) = match kind {
                CrossKind::Pos => (cr.over_in, cr.under_in),
                CrossKind::Neg => (cr.under_in, cr.over_in),
            };
            let ea = if edge_up[left] { 1i8 } else { -1 };
            let eb = if edge_up[right] { 1i8 } else { -1 };
            let k = match kind {
                CrossKind::Pos => 1i8,
                CrossKind::Neg => -1,
            };
            cr.sign = k * ea * eb;
        }

        Ok(Trace {
            width: self.width,
            n_edges,
            crossings,
            strand_of_edge,
            edge_up,
            visits,
            path,
            permutation,
            first_edge,
        })
    }

    /// Validate the string-link condition: a clean trace whose strands
    /// return to their own positions.
    pub fn validate(&self) -> Result<Trace, SliceError> {
        let tr = self.trace()?;
        for (s, &p) in tr.permutation.iter().enumerate() {
            if p != s {
                return Err(SliceError::NotAStringLink {
                    strand: s + 1,
                    exits_at: p + 1,
                });
            }
        }
        Ok(tr)
    }

    /// Stacking product: `other` above `self`. Associative, with the
    /// trivial string link as unit.
    pub fn stack(&self, other: &StringLinkSlices) -> Result<StringLinkSlices, SliceError> {
        if self.width != other.width {
            return Err(SliceError::WidthMismatch {
                top: other.width,
                width: self.width,
            });
        }
        let mut events = self.events.clone();
        events.extend_from_slice(&other.events);
        Ok(StringLinkSlices {
            width: self.width,
            events,
        })
    }

    /// Horizontal mirror image with the orientation reversed: the slice
    /// list upside down, caps and cups exchanged, every crossing kind
    /// flipped (so every crossing sign is negated).
    pub fn mirror_reverse(&self) -> StringLinkSlices {
        let events = self
            .events
            .iter()
            .rev()
            .map(|ev| match *ev {
                SliceEvent::Cross { pos, kind } => SliceEvent::Cross {
                    pos,
                    kind: kind.flip(),
                },
                SliceEvent::Cap { pos } => SliceEvent::Cup { pos },
                SliceEvent::Cup { pos } => SliceEvent::Cap { pos },
            })
            .collect();
        StringLinkSlices {
            width: self.width,
            events,
        }
    }

    /// Keep only the strands in `keep` (1-based ids), erasing every
    /// event that touches a deleted strand. Positions renumber
    /// preserving order.
    pub fn delete_strands(&self, keep: &[usize]) -> Result<StringLinkSlices, SliceError> {
        let tr = self.trace()?;
        let kept = |s: usize| keep.contains(&(s + 1));
        let mut slots: Vec<usize> = (0..self.width).collect(); // edge ids as in trace
        // re-run the sweep in lockstep with the traced edge ids
        let mut next_edge = self.width;
        let mut out = Vec::new();
        for ev in &self.events {
            match *ev {
                SliceEvent::Cross { pos, kind } => {
                    let a = slots[pos - 1];
                    let b = slots[pos];
                    let (ka, kb) = (kept(tr.strand_of_edge[a]), kept(tr.strand_of_edge[b]));
                    if ka && kb {
                        let newpos = slots[..pos - 1]
                            .iter()
                            .filter(|&&e| kept(tr.strand_of_edge[e]))
                            .count()
                            + 1;
                        out.push(SliceEvent::Cross { pos: newpos, kind });
                    }
                    let a2 = next_edge;
                    let b2 = next_edge + 1;
                    next_edge += 2;
                    // first continuation = left strand, landing right
                    slots[pos - 1] = b2;
                    slots[pos] = a2;
                }
                SliceEvent::Cap { pos } => {
                    let a = slots[pos - 1];
                    if kept(tr.strand_of_edge[a]) {
                        let newpos = slots[..pos - 1]
                            .iter()
                            .filter(|&&e| kept(tr.strand_of_edge[e]))
                            .count()
                            + 1;
                        out.push(SliceEvent::Cap { pos: newpos });
                    }
                    slots.remove(pos);
                    slots.remove(pos - 1);
                }
                SliceEvent::Cup { pos } => {
                    let u = next_edge;
                    let v = next_edge + 1;
                    next_edge += 2;
                    if kept(tr.strand_of_edge[u]) {
                        let newpos = slots[..pos - 1]
                            .iter()
                            .filter(|&&e| kept(tr.strand_of_edge[e]))
                            .count()
                            + 1;
                        out.push(SliceEvent::Cup { pos: newpos });
                    }
                    slots.insert(pos - 1, u);
                    slots.insert(pos, v);
                }
            }
        }
        let width = (0..self.width).filter(|&s| kept(s)).count();
        Ok(StringLinkSlices { width, events: out })
    }

    /// Signed count of self-crossings of strand `i` (1-based).
    pub fn self_writhe(&self, i: usize) -> Result<i64, SliceError> {
        let tr = self.trace()?;
        Ok(tr.self_writhe(i))
    }

    /// Half the signed count of crossings between strands `i` and `j`.
    pub fn linking(&self, i: usize, j: usize) -> Result<i64, SliceError> {
        let tr = self.trace()?;
        Ok(tr.linking(i, j))
    }

    /// Replace strand `i` by `mult[i-1]` zero-framed parallel copies.
    ///
    /// Blackboard duplication of every event, followed by `-w_i` full
    /// twists at the top of each cable (`w_i` = self-writhe of strand
    /// `i`), so that every pair of copies of a strand has linking
    /// number zero in the closure. Strands with multiplicity 0 are
    /// deleted. Output strands are ordered by (strand, copy).
    pub fn cable(&self, mult: &[usize]) -> Result<StringLinkSlices, SliceError> {
        assert_eq!(mult.len(), self.width, "one multiplicity per strand");
        let keep: Vec<usize> = (1..=self.width).filter(|&i| mult[i - 1] > 0).collect();
        let kept_mult: Vec<usize> = (1..=self.width)
            .filter(|&i| mult[i - 1] > 0)
            .map(|i| mult[i - 1])
            .collect();
        let base = self.delete_strands(&keep)?;
        let tr = base.trace()?;

        let mut out: Vec<SliceEvent> = Vec::new();
        // slot state: (edge id for the original sweep, multiplicity)
        let mut slots: Vec<(usize, usize)> = (0..base.width)
            .map(|s| (s, kept_mult[s]))
            .collect();
        let mut next_edge = base.width;
        let start_of = |slots: &[(usize, usize)], idx: usize| -> usize {
            slots[..idx].iter().map(|&(_, m)| m).sum::<usize>() + 1
        };
        for ev in &base.events {
            match *ev {
                SliceEvent::Cross { pos, kind } => {
                    let (_a_edge, a_m) = slots[pos - 1];
                    let (_b_edge, b_m) = slots[pos];
                    let base_x = start_of(&slots, pos - 1);
                    // move each strand of the left block right past the right block
                    for i in 0..a_m {
                        let from = base_x + (a_m - 1 - i);
                        for j in 0..b_m {
                            out.push(SliceEvent::Cross {
                                pos: from + j,
                                kind,
                            });
                        }
                    }
                    let a2 = next_edge;
                    let b2 = next_edge + 1;
                    next_edge += 2;
                    slots[pos - 1] = (b2, b_m);
                    slots[pos] = (a2, a_m);
                }
                SliceEvent::Cap { pos } => {
                    let (_, r) = slots[pos - 1];
                    let base_x = start_of(&slots, pos - 1);
                    for k in (0..r).rev() {
                        out.push(SliceEvent::Cap { pos: base_x + k });
                    }
                    slots.remove(pos);
                    slots.remove(pos - 1);
                }
                SliceEvent::Cup { pos } => {
                    let u = next_edge;
                    let v = next_edge + 1;
                    next_edge += 2;
                    let r = kept_mult[tr.strand_of_edge[u]];
                    let base_x = start_of(&slots, pos - 1);
                    for k in 0..r {
                        out.push(SliceEvent::Cup { pos: base_x + k });
                    }
                    slots.insert(pos - 1, (u, r));
                    slots.insert(pos, (v, r));
                }
            }
        }
        // framing correction: -w full twists on each cable at the top
        let mut start = 1usize;
        for s in 0..base.width {
            let r = kept_mult[s];
            let w = tr.self_writhe(s + 1);
            if r >= 2 && w != 0 {
                let kind = if w > 0 { CrossKind::Neg } else { CrossKind::Pos };
                for _ in 0..w.unsigned_abs() {
                    for _ in 0..r {
                        for p in start..start + r - 1 {
                            out.push(SliceEvent::Cross { pos: p, kind });
                        }
                    }
                }
            }
            start += r;
        }
        Ok(StringLinkSlices {
            width: kept_mult.iter().sum(),
            events: out,
        })
    }
}

impl Trace {
    pub fn self_writhe(&self, strand_1b: usize) -> i64 {
        let s = strand_1b - 1;
        self.crossings
            .iter()
            .filter(|c| {
                self.strand_of_edge[c.over_in] == s && self.strand_of_edge[c.under_in] == s
            })
            .map(|c| c.sign as i64)
            .sum()
    }

    pub fn linking(&self, i_1b: usize, j_1b: usize) -> i64 {
        let (i, j) = (i_1b - 1, j_1b - 1);
        let total: i64 = self
            .crossings
            .iter()
            .filter(|c| {
                let a = self.strand_of_edge[c.over_in];
                let b = self.strand_of_edge[c.under_in];
                (a == i && b == j) || (a == j && b == i)
            })
            .map(|c| c.sign as i64)
            .sum();
        debug_assert!(total % 2 == 0, "inter-strand crossing signs must pair up");
        total / 2
    }
}

// ---------------------------------------------------------------------------
// Index sequences
// ---------------------------------------------------------------------------

/// A sequence of (possibly repeating) strand indices from `1..=n`.
pub type IndexSequence = Vec<u8>;

/// Render like `1324`, with commas once indices exceed one digit.
pub fn render_sequence(seq: &[u8]) -> String {
    use core::fmt::Write as _;
    let mut s = String::new();
    if seq.iter().any(|&i| i > 9) {
        for (k, &i) in seq.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            let _ = write!(s, "{}", i);
        }
    } else {
        for &i in seq {
            let _ = write!(s, "{}", i);
        }
    }
    s
}

/// The nonrepeating sequence induced by cabling: each `i` is replaced
/// by `(i,1)..(i,r_i)` in order of appearance, then pairs are
/// renumbered lexicographically.
pub fn d_sequence(seq: &[u8]) -> IndexSequence {
    let mut count: alloc::collections::BTreeMap<u8, u8> = alloc::collections::BTreeMap::new();
    let pairs: Vec<(u8, u8)> = seq
        .iter()
        .map(|&i| {
            let c = count.entry(i).or_insert(0);
            *c += 1;
            (i, *c)
        })
        .collect();
    let mut sorted = pairs.clone();
    sorted.sort_unstable();
    pairs
        .iter()
        .map(|p| (sorted.binary_search(p).unwrap() + 1) as u8)
        .collect()
}

/// Multiplicity vector of a sequence over strands `1..=n`.
pub fn multiplicities(seq: &[u8], n: usize) -> Vec<usize> {
    let mut m = vec![0usize; n];
    for &i in seq {
        m[i as usize - 1] += 1;
    }
    m
}

/// True if `sub` is a subsequence of `seq`.
pub fn is_subsequence(sub: &[u8], seq: &[u8]) -> bool {
    let mut it = seq.iter();
    sub.iter().all(|x| it.any(|y| y == x))
}

// ---------------------------------------------------------------------------
// Local moves, used to generate isotopic variants for invariance tests.
// ---------------------------------------------------------------------------

/// Insert a kink (first Reidemeister move) on the strand occupying
/// position `pos` at event index `at`. Changes the self-writhe by ±1.
pub fn insert_kink(t: &StringLinkSlices, at: usize, pos: usize, kind: CrossKind) -> StringLinkSlices {
    let mut events = t.events.clone();
    events.splice(
        at..at,
        [
            SliceEvent::Cup { pos: pos + 1 },
            SliceEvent::Cross { pos, kind },
            SliceEvent::Cap { pos: pos + 1 },
        ],
    );
    StringLinkSlices {
        width: t.width,
        events,
    }
}

/// Insert a cancelling crossing pair (second Reidemeister move) at
/// positions `pos, pos+1`.
pub fn insert_wiggle(t: &StringLinkSlices, at: usize, pos: usize, kind: CrossKind) -> StringLinkSlices {
    let mut events = t.events.clone();
    events.splice(
        at..at,
        [
            SliceEvent::Cross { pos, kind },
            SliceEvent::Cross { pos, kind: kind.flip() },
        ],
    );
    StringLinkSlices {
        width: t.width,
        events,
    }
}

/// Swap two adjacent crossings acting on disjoint positions (planar
/// isotopy). Returns None when the swap is not legal.
pub fn commute_distant(t: &StringLinkSlices, at: usize) -> Option<StringLinkSlices> {
    if at + 1 >= t.events.len() {
        return None;
    }
    let (a, b) = (t.events[at], t.events[at + 1]);
    // only handle pairs that keep slot numbering untouched
    let span = |e: SliceEvent| match e {
        SliceEvent::Cross { pos, .. } | SliceEvent::Cap { pos } | SliceEvent::Cup { pos } => {
            (pos, pos + 1)
        }
    };
    let shifts = |e: SliceEvent| !matches!(e, SliceEvent::Cross { .. });
    if shifts(a) || shifts(b) {
        return None;
    }
    let (a0, a1) = span(a);
    let (b0, b1) = span(b);
    if a1 < b0 || b1 < a0 {
        let mut events = t.events.clone();
        events.swap(at, at + 1);
        Some(StringLinkSlices {
            width: t.width,
            events,
        })
    } else {
        None
    }
}

/// Rewrite a braid-relation triple (third Reidemeister move) when one
/// occurs at `at`: `σ_p^e σ_{p+1}^e σ_p^e → σ_{p+1}^e σ_p^e σ_{p+1}^e`.
pub fn triple_slide(t: &StringLinkSlices, at: usize) -> Option<StringLinkSlices> {
    if at + 2 >= t.events.len() {
        return None;
    }
    match (t.events[at], t.events[at + 1], t.events[at + 2]) {
        (
            SliceEvent::Cross { pos: p1, kind: k1 },
            SliceEvent::Cross { pos: p2, kind: k2 },
            SliceEvent::Cross { pos: p3, kind: k3 },
        ) if k1 == k2 && k2 == k3 && p1 == p3 && p2 == p1 + 1 => {
            let mut events = t.events.clone();
            events[at] = SliceEvent::Cross { pos: p2, kind: k1 };
            events[at + 1] = SliceEvent::Cross { pos: p1, kind: k1 };
            events[at + 2] = SliceEvent::Cross { pos: p2, kind: k1 };
            Some(StringLinkSlices {
                width: t.width,
                events,
            })
        }
        _ => None,
    }
}
