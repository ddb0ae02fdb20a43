//! Milnor invariants of string links via the Magnus expansion of
//! longitudes.
//!
//! Every arc of the presentation carries a meridian word in the base
//! meridians `m_1..m_n`, represented directly by its truncated Magnus
//! series. The Wirtinger rule at an underpass with over-arc meridian
//! `O` and crossing sign `s` sends the incoming meridian `M` to
//! `O^s M O^{-s}`; over-passes and turnbacks transport meridians
//! unchanged. Since an arc's conjugator can depend on arcs higher up
//! its own strand, the assignment is solved by fixpoint iteration:
//! each full propagation pass in strand order is exact one degree
//! further, so `q` passes pin everything modulo degree `q+1`.
//!
//! The `j`th longitude is then the ordered product of `O^s` over the
//! underpasses of strand `j`, times `m_j^{-w_j}` for the self-writhe
//! `w_j` (the zero-framing correction), and `μ(i₁…i_{k−1} j)` is the
//! coefficient of `X_{i₁}…X_{i_{k−1}}` in its expansion.

use alloc::vec;
use alloc::vec::Vec;

use crate::magnus::{MagnusError, TruncNCSeries};
use crate::slices::{IndexSequence, Role, SliceError, StringLinkSlices, Trace};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MilnorError {
    SequenceTooShort { len: usize },
    IndexOutOfRange { index: u8, width: usize },
    Slice(SliceError),
    Magnus(MagnusError),
}

impl core::fmt::Display for MilnorError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MilnorError::SequenceTooShort { len } => {
                write!(f, "sequence of length {} is too short (need at least 2)", len)
            }
            MilnorError::IndexOutOfRange { index, width } => {
                write!(f, "index {} out of range for width {}", index, width)
            }
            MilnorError::Slice(e) => write!(f, "{}", e),
            MilnorError::Magnus(e) => write!(f, "{}", e),
        }
    }
}

impl From<SliceError> for MilnorError {
    fn from(e: SliceError) -> MilnorError {
        MilnorError::Slice(e)
    }
}

impl From<MagnusError> for MilnorError {
    fn from(e: MagnusError) -> MilnorError {
        MilnorError::Magnus(e)
    }
}

/// Magnus expansions of all longitudes at one truncation degree.
#[derive(Clone, Debug)]
pub struct LongitudeSet {
    pub q: u32,
    /// `series[j]` = E(λ_{j+1}).
    pub series: Vec<TruncNCSeries>,
    /// Self-writhe used for the framing correction of each strand.
    pub self_writhe: Vec<i64>,
}

/// A Milnor number with its indeterminacy.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MilnorResult {
    /// The raw string-link invariant.
    pub mu: i64,
    /// gcd of the shorter invariants; 0 means none.
    pub delta: u64,
    /// Canonical residue of `mu` in `[0, delta)`, or `mu` when `delta = 0`.
    pub mu_bar: i64,
}

/// Magnus expansions of the longitudes of a valid string link.
pub fn longitudes(t: &StringLinkSlices, q: u32) -> Result<LongitudeSet, MilnorError> {
    let tr = t.validate()?;
    Ok(longitudes_traced(t, &tr, q))
}

fn longitudes_traced(t: &StringLinkSlices, tr: &Trace, q: u32) -> LongitudeSet {
    let n = t.width as u8;
    // meridian estimate per arc, initialised to the base meridian of
    // its strand (exact in degree 1)
    let mut m: Vec<TruncNCSeries> = (0..tr.n_edges)
        .map(|e| TruncNCSeries::meridian(n, q, tr.strand_of_edge[e] as u8 + 1).unwrap())
        .collect();
    for _pass in 0..q {
        for s in 0..t.width {
            let mut cur = TruncNCSeries::meridian(n, q, s as u8 + 1).unwrap();
            m[tr.first_edge[s]] = cur.clone();
            for v in &tr.visits[s] {
                match v.role {
                    Role::Over => {}
                    Role::Under => {
                        let c = &tr.crossings[v.crossing];
                        let over = &m[c.over_in];
                        let conj = over.unit_pow(-(c.sign as i64)).unwrap();
                        cur = conj
                            .mul(&cur)
                            .unwrap()
                            .mul(&conj.invert().unwrap())
                            .unwrap();
                    }
                }
                m[v.to_edge] = cur.clone();
            }
        }
    }
    let mut series = Vec::with_capacity(t.width);
    let mut self_writhe = Vec::with_capacity(t.width);
    for s in 0..t.width {
        let mut lam = TruncNCSeries::one(n, q);
        for v in &tr.visits[s] {
            if v.role == Role::Under {
                let c = &tr.crossings[v.crossing];
                lam = lam
                    .mul(&m[c.over_in].unit_pow(c.sign as i64).unwrap())
                    .unwrap();
            }
        }
        let w = tr.self_writhe(s + 1);
        if w != 0 {
            let corr = TruncNCSeries::meridian(n, q, s as u8 + 1)
                .unwrap()
                .unit_pow(-w)
                .unwrap();
            lam = lam.mul(&corr).unwrap();
        }
        debug_assert_eq!(lam.coefficient(&[s as u8 + 1]).unwrap_or(0), 0);
        series.push(lam);
        self_writhe.push(w);
    }
    LongitudeSet { q, series, self_writhe }
}

fn check_sequence(t: &StringLinkSlices, seq: &[u8]) -> Result<(), MilnorError> {
    if seq.len() < 2 {
        return Err(MilnorError::SequenceTooShort { len: seq.len() });
    }
    for &i in seq {
        if i == 0 || i as usize > t.width {
            return Err(MilnorError::IndexOutOfRange { index: i, width: t.width });
        }
    }
    Ok(())
}

/// `μ(I)` for `I = i₁…i_{k−1} j`: the coefficient of
/// `X_{i₁}…X_{i_{k−1}}` in `E(λ_j)`, at internal truncation `|I|`.
pub fn mu(t: &StringLinkSlices, seq: &[u8]) -> Result<i64, MilnorError> {
    check_sequence(t, seq)?;
    let ls = longitudes(t, seq.len() as u32)?;
    Ok(mu_from(&ls, seq))
}

/// `μ(I)` read off an already-computed longitude set.
pub fn mu_from(ls: &LongitudeSet, seq: &[u8]) -> i64 {
    let (head, last) = seq.split_at(seq.len() - 1);
    ls.series[last[0] as usize - 1]
        .coefficient(head)
        .expect("truncation too low for sequence")
}

/// All sequences obtained from `seq` by deleting at least one index
/// (keeping at least two) and cyclically permuting the rest.
pub fn deletion_cyclic_family(seq: &[u8]) -> Vec<IndexSequence> {
    let n = seq.len();
    let mut out: Vec<IndexSequence> = Vec::new();
    for mask in 1u32..(1 << n) {
        let kept: Vec<u8> = (0..n)
            .filter(|k| mask & (1 << k) == 0)
            .map(|k| seq[k])
            .collect();
        if kept.len() < 2 {
            continue;
        }
        for r in 0..kept.len() {
            let mut rot = kept[r..].to_vec();
            rot.extend_from_slice(&kept[..r]);
            if !out.contains(&rot) {
                out.push(rot);
            }
        }
    }
    out
}

/// `Δ(I)`: gcd of `|μ(J)|` over the deletion/cyclic family of `I`;
/// 0 when the family is empty or all members vanish.
pub fn delta(t: &StringLinkSlices, seq: &[u8]) -> Result<u64, MilnorError> {
    check_sequence(t, seq)?;
    let family = deletion_cyclic_family(seq);
    if family.is_empty() {
        return Ok(0);
    }
    // one longitude computation at the full truncation serves them all
    let ls = longitudes(t, seq.len() as u32)?;
    let mut g: u64 = 0;
    for j in &family {
        g = gcd(g, mu_from(&ls, j).unsigned_abs());
    }
    Ok(g)
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `μ`, `Δ` and the canonical residue `μ̄`.
pub fn mu_bar(t: &StringLinkSlices, seq: &[u8]) -> Result<MilnorResult, MilnorError> {
    check_sequence(t, seq)?;
    let ls = longitudes(t, seq.len() as u32)?;
    let raw = mu_from(&ls, seq);
    let family = deletion_cyclic_family(seq);
    let mut d: u64 = 0;
    for j in &family {
        d = gcd(d, mu_from(&ls, j).unsigned_abs());
    }
    let residue = if d == 0 {
        raw
    } else {
        raw.rem_euclid(d as i64)
    };
    Ok(MilnorResult {
        mu: raw,
        delta: d,
        mu_bar: residue,
    })
}
