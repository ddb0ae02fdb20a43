//! Skein-tree evaluation of the HOMFLYPT polynomial.
//!
//! Defined by `P(unknot) = 1` and `t⁻¹ P(L₊) − t P(L₋) = z P(L₀)`.
//! The evaluation strategy is the descending-diagram recursion: fix
//! basepoints and component order, traverse, and at the first crossing
//! met first on its under-strand branch into the switched and smoothed
//! diagrams. A diagram that is descending with respect to its own
//! traversal is an unlink and evaluates to `((t⁻¹−t)/z)^{r−1}`.
//!
//! Every node is simplified first, split unions factor through
//! `P(A ⊔ B) = δ · P(A) · P(B)`, and results are memoized under a
//! relabeling-invariant key, so the exponential skein tree collapses
//! heavily in practice. The memo store is abstracted so callers can
//! share one table across threads.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::diagram::{DiagramError, LinkDiagram};
use crate::poly::{BiLaurent, Laurent1, PolyError};

/// `δ = (t⁻¹ − t) / z`, the per-component unlink factor.
pub fn unlink_factor() -> BiLaurent {
    BiLaurent::from_terms(&[(1, -1, -1), (-1, 1, -1)])
}

/// Shared cache of canonical diagram key → polynomial. Implementations
/// must tolerate concurrent insert-or-get; values for equal keys are
/// equal by construction, so last-writer-wins is fine.
pub trait MemoStore {
    fn lookup(&self, key: &[u32]) -> Option<BiLaurent>;
    fn store(&self, key: Vec<u32>, value: &BiLaurent);
}

/// Single-threaded memo table.
#[derive(Default)]
pub struct SkeinMemo {
    table: RefCell<BTreeMap<Vec<u32>, BiLaurent>>,
}

impl SkeinMemo {
    pub fn new() -> SkeinMemo {
        SkeinMemo::default()
    }

    pub fn len(&self) -> usize {
        self.table.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.borrow().is_empty()
    }
}

impl MemoStore for SkeinMemo {
    fn lookup(&self, key: &[u32]) -> Option<BiLaurent> {
        self.table.borrow().get(key).cloned()
    }

    fn store(&self, key: Vec<u32>, value: &BiLaurent) {
        self.table.borrow_mut().insert(key, value.clone());
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HomflyError {
    Diagram(DiagramError),
    NotAKnot { components: usize },
    Poly(PolyError),
}

impl core::fmt::Display for HomflyError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            HomflyError::Diagram(e) => write!(f, "{}", e),
            HomflyError::NotAKnot { components } => {
                write!(f, "expected a knot, got {} components", components)
            }
            HomflyError::Poly(e) => write!(f, "{}", e),
        }
    }
}

impl From<DiagramError> for HomflyError {
    fn from(e: DiagramError) -> HomflyError {
        HomflyError::Diagram(e)
    }
}

impl From<PolyError> for HomflyError {
    fn from(e: PolyError) -> HomflyError {
        HomflyError::Poly(e)
    }
}

/// The HOMFLYPT polynomial of a validated diagram.
pub fn homflypt<M: MemoStore>(d: &LinkDiagram, memo: &M) -> Result<BiLaurent, HomflyError> {
    d.validate()?;
    let p = eval(d.clone(), memo);
    // z-exponents of an r-component link all have the parity of r-1
    debug_assert!({
        let r = d.component_count() as i32;
        p.z_exponents()
            .iter()
            .all(|&e| (e - (1 - r)).rem_euclid(2) == 0)
    });
    Ok(p)
}

fn eval<M: MemoStore>(d: LinkDiagram, memo: &M) -> BiLaurent {
    let d = d.simplify();
    if d.crossing_count() == 0 {
        return unlink_factor().pow(d.component_count() as u32 - 1);
    }
    let pieces = d.split_pieces();
    if pieces.len() > 1 {
        let mut p = unlink_factor().pow(pieces.len() as u32 - 1);
        for piece in pieces {
            p = p.mul(&eval(d.keep_components(&piece), memo));
        }
        return p;
    }
    let key = canonical_key(&d);
    if let Some(hit) = memo.lookup(&key) {
        return hit;
    }
    let value = match first_bad_crossing(&d) {
        None => unlink_factor().pow(d.component_count() as u32 - 1),
        Some(c) => {
            let sign = d.crossings[c].sign;
            let switched = eval(d.switch_crossing(c).expect("crossing exists"), memo);
            let smoothed = eval(d.smooth_crossing(c).expect("crossing exists"), memo);
            if sign > 0 {
                // this diagram is L+: P = t^2 P(L-) + t z P(L0)
                switched.shift(2, 0).add(&smoothed.shift(1, 1))
            } else {
                // this diagram is L-: P = t^-2 P(L+) - t^-1 z P(L0)
                switched.shift(-2, 0).sub(&smoothed.shift(-1, 1))
            }
        }
    };
    memo.store(key, &value);
    value
}

/// Traverse components in label order, each from its lowest arc id.
/// Returns the first crossing met first on its under-strand.
fn first_bad_crossing(d: &LinkDiagram) -> Option<usize> {
    let flow = d.flow().expect("validated diagram");
    let mut seen = alloc::vec![false; d.crossings.len()];
    for cycle in &d.components {
        let start = cycle
            .iter()
            .enumerate()
            .min_by_key(|&(_, &a)| a)
            .map(|(i, _)| i)
            .unwrap();
        for k in 0..cycle.len() {
            let a = cycle[(start + k) % cycle.len()];
            let (c, slot) = flow.head[a as usize].expect("arc in a crossing cycle");
            if !seen[c as usize] {
                seen[c as usize] = true;
                if slot == 0 {
                    return Some(c as usize);
                }
            }
        }
    }
    None
}

/// Relabeling-invariant key: a signed Gauss code with over/under bits,
/// components in order, each starting from the rotation that
/// lexicographically minimizes its own code given the crossing numbers
/// committed so far.
fn canonical_key(d: &LinkDiagram) -> Vec<u32> {
    let flow = d.flow().expect("validated diagram");
    let mut assigned: BTreeMap<u32, u32> = BTreeMap::new();
    let mut key: Vec<u32> = Vec::new();
    for cycle in &d.components {
        let mut best: Option<(Vec<u32>, BTreeMap<u32, u32>)> = None;
        for start in 0..cycle.len() {
            let mut local = assigned.clone();
            let mut code = Vec::with_capacity(cycle.len());
            for k in 0..cycle.len() {
                let a = cycle[(start + k) % cycle.len()];
                let (c, slot) = flow.head[a as usize].expect("arc in a crossing cycle");
                let n = local.len() as u32;
                let num = *local.entry(c).or_insert(n);
                let under = (slot == 0) as u32;
                let pos = (d.crossings[c as usize].sign > 0) as u32;
                code.push(num * 4 + under * 2 + pos);
            }
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                best = Some((code, local));
            }
        }
        let (code, local) = best.unwrap();
        key.extend_from_slice(&code);
        key.push(u32::MAX);
        assigned = local;
    }
    key
}

/// Lowest coefficient polynomial `P_{1-r}` of an `r`-component link.
pub fn p_lowest<M: MemoStore>(d: &LinkDiagram, memo: &M) -> Result<Laurent1, HomflyError> {
    let p = homflypt(d, memo)?;
    let r = d.component_count() as i32;
    Ok(p.z_coefficient(1 - r))
}

/// `P₀` of a knot; its value at `t = 1` is always 1.
pub fn p0<M: MemoStore>(d: &LinkDiagram, memo: &M) -> Result<Laurent1, HomflyError> {
    if d.component_count() != 1 {
        return Err(HomflyError::NotAKnot {
            components: d.component_count(),
        });
    }
    let p = p_lowest(d, memo)?;
    debug_assert_eq!(p.eval_at_one(), 1);
    Ok(p)
}

/// `l`th derivative of `P₀` at `t = 1`.
pub fn p0_deriv<M: MemoStore>(d: &LinkDiagram, l: u32, memo: &M) -> Result<i64, HomflyError> {
    Ok(p0(d, memo)?.deriv_at_one(l))
}

/// `m`th derivative of `log P₀` at `t = 1`.
pub fn logp0_deriv<M: MemoStore>(d: &LinkDiagram, m: u32, memo: &M) -> Result<i64, HomflyError> {
    Ok(p0(d, memo)?.log_deriv_at_one(m)?)
}

/// Check `P_{1-r} = t^{2Lk} (t⁻¹−t)^{r-1} Π P₀(components)`.
pub fn check_lowest_identity<M: MemoStore>(d: &LinkDiagram, memo: &M) -> Result<bool, HomflyError> {
    let lhs = p_lowest(d, memo)?;
    let r = d.component_count();
    let lk = d.total_linking();
    let mut rhs = Laurent1::term(1, (2 * lk) as i32);
    rhs = rhs.mul(&Laurent1::from_terms(&[(1, -1), (-1, 1)]).pow(r as u32 - 1));
    for i in 1..=r {
        let ki = d.keep_components(&[i]);
        rhs = rhs.mul(&p0(&ki, memo)?);
    }
    Ok(lhs == rhs)
}
