//! Both sides of the band-sum formulas: the alternating sums of
//! derivative invariants over fusion knots, their comparison with the
//! Milnor numbers computed by the Magnus engine, and the resulting
//! link-homotopy tests.
//!
//! All verdicts clear denominators: the length-(m+1) congruence is
//! checked as `m!·2^m·μ + Σ ≡ 0 (mod m!·2^m·Δ)`, so no integrality of
//! the rational right-hand side is assumed beyond what the statements
//! promise.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{fusion_knot, FusionError, FusionSpec, LinkDiagram};
use crate::homflypt::{logp0_deriv, p0_deriv, HomflyError, MemoStore};
use crate::milnor::{mu, mu_bar, MilnorError, MilnorResult};
use crate::rat::Rat;
use crate::slices::{d_sequence, multiplicities, IndexSequence, SliceError, StringLinkSlices};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TheoremError {
    LengthOutOfRange { len: usize, k: u32 },
    RepeatedIndex,
    WidthMismatch,
    Fusion(FusionError),
    Milnor(MilnorError),
    Homfly(HomflyError),
    Slice(SliceError),
}

impl core::fmt::Display for TheoremError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TheoremError::LengthOutOfRange { len, k } => {
                write!(f, "sequence length {} out of range for k = {}", len, k)
            }
            TheoremError::RepeatedIndex => write!(f, "sequence must have distinct entries"),
            TheoremError::WidthMismatch => write!(f, "string links have different widths"),
            TheoremError::Fusion(e) => write!(f, "{}", e),
            TheoremError::Milnor(e) => write!(f, "{}", e),
            TheoremError::Homfly(e) => write!(f, "{}", e),
            TheoremError::Slice(e) => write!(f, "{}", e),
        }
    }
}

impl From<FusionError> for TheoremError {
    fn from(e: FusionError) -> Self {
        TheoremError::Fusion(e)
    }
}

impl From<MilnorError> for TheoremError {
    fn from(e: MilnorError) -> Self {
        TheoremError::Milnor(e)
    }
}

impl From<HomflyError> for TheoremError {
    fn from(e: HomflyError) -> Self {
        TheoremError::Homfly(e)
    }
}

impl From<SliceError> for TheoremError {
    fn from(e: SliceError) -> Self {
        TheoremError::Slice(e)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SumMode {
    /// Derivatives of `log P₀`.
    Log,
    /// Plain derivatives of `P₀`.
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisViolated,
}

/// Outcome of checking one band-sum identity.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub sequence: IndexSequence,
    pub lhs: MilnorResult,
    /// `Σ_{J<I} (−1)^{|J|} D(L_J)` before division.
    pub rhs_sum: i64,
    /// `−rhs_sum / (m! 2^m)`.
    pub rhs: Rat,
    /// Whether `rhs` is an integer.
    pub rhs_exact: bool,
    pub hypothesis_ok: bool,
    /// Largest length whose invariants were all verified to vanish.
    pub verified_vanishing: u32,
    pub verdict: Verdict,
}

fn factorial_pow(m: u32) -> i64 {
    let mut v: i64 = 1;
    for j in 1..=m as i64 {
        v *= j;
    }
    v << m
}

/// Every fusion knot of the pattern, paired with its subsequence.
pub fn fusion_diagrams(
    t: &StringLinkSlices,
    spec: &FusionSpec,
) -> Result<Vec<(IndexSequence, LinkDiagram)>, TheoremError> {
    spec.subsequences()
        .into_iter()
        .map(|sub| {
            let d = fusion_knot(t, spec, &sub)?;
            Ok((sub, d))
        })
        .collect()
}

/// Combine per-subsequence derivative values into the alternating sum.
pub fn combine_alternating(values: &[(usize, i64)]) -> i64 {
    values
        .iter()
        .map(|&(len, v)| if len % 2 == 0 { v } else { -v })
        .sum()
}

/// `Σ_{J<I} (−1)^{|J|} D(L_J)` with `D` the `m`th (log-)derivative of
/// the lowest coefficient polynomial.
pub fn rhs_alternating_sum<M: MemoStore>(
    t: &StringLinkSlices,
    spec: &FusionSpec,
    mode: SumMode,
    m: u32,
    memo: &M,
) -> Result<i64, TheoremError> {
    let mut values = Vec::new();
    for (sub, d) in fusion_diagrams(t, spec)? {
        let v = match mode {
            SumMode::Log => logp0_deriv(&d, m, memo)?,
            SumMode::Plain => p0_deriv(&d, m, memo)?,
        };
        values.push((sub.len(), v));
    }
    Ok(combine_alternating(&values))
}

/// All sequences over `1..=n` of the given length, lexicographic.
pub fn all_sequences(n: usize, len: usize) -> Vec<IndexSequence> {
    let mut out = Vec::new();
    let mut cur = vec![1u8; len];
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n as u8 {
                cur[i] += 1;
                for c in cur[i + 1..].iter_mut() {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// Nonrepeating sequences over `1..=n` of the given length.
pub fn nonrepeating_sequences(n: usize, len: usize) -> Vec<IndexSequence> {
    all_sequences(n, len)
        .into_iter()
        .filter(|s| {
            let mut seen = [false; 256];
            s.iter().all(|&i| {
                let fresh = !seen[i as usize];
                seen[i as usize] = true;
                fresh
            })
        })
        .collect()
}

/// Check that every Milnor invariant of length `2..=k` vanishes;
/// `repeats` controls whether repeated-index sequences are included.
pub fn vanishing_up_to(
    t: &StringLinkSlices,
    k: u32,
    repeats: bool,
) -> Result<(bool, u32), TheoremError> {
    let n = t.width;
    let mut verified = 1u32;
    for len in 2..=k as usize {
        let seqs = if repeats {
            all_sequences(n, len)
        } else {
            nonrepeating_sequences(n, len)
        };
        for seq in seqs {
            if mu(t, &seq)? != 0 {
                return Ok((false, verified));
            }
        }
        verified = len as u32;
    }
    Ok((true, verified))
}

fn congruence_report(
    seq: &[u8],
    lhs: MilnorResult,
    rhs_sum: i64,
    m: u32,
    hypothesis_ok: bool,
    verified: u32,
    require_exact: bool,
) -> TheoremReport {
    let div = factorial_pow(m);
    let rhs = Rat::new(-(rhs_sum as i128), div as i128);
    let rhs_exact = rhs.is_integer();
    let verdict = if !hypothesis_ok {
        Verdict::HypothesisViolated
    } else if require_exact {
        // exact integer equality, no indeterminacy allowed
        if lhs.delta == 0 && rhs_exact && rhs.to_integer() == lhs.mu as i128 {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else {
        // m!2^m·mu + rhs_sum ≡ 0 (mod m!2^m·delta)
        let residual = div
            .checked_mul(lhs.mu)
            .and_then(|v| v.checked_add(rhs_sum))
            .expect("congruence overflow");
        let modulus = div
            .checked_mul(lhs.delta as i64)
            .expect("congruence overflow");
        let ok = if modulus == 0 {
            residual == 0
        } else {
            residual % modulus == 0
        };
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    };
    TheoremReport {
        sequence: seq.to_vec(),
        lhs,
        rhs_sum,
        rhs,
        rhs_exact,
        hypothesis_ok,
        verified_vanishing: verified,
        verdict,
    }
}

/// Congruence form: for `I` of length `m+1` with `3 ≤ m+1 ≤ 2k+1` and
/// all nonrepeated invariants of length ≤ k vanishing, the alternating
/// log-derivative sum recovers `μ̄(I)` modulo `Δ(I)`.
pub fn verify_theorem1<M: MemoStore>(
    t: &StringLinkSlices,
    seq: &[u8],
    k: u32,
    memo: &M,
) -> Result<TheoremReport, TheoremError> {
    let len = seq.len();
    if len < 3 || len > 2 * k as usize + 1 {
        return Err(TheoremError::LengthOutOfRange { len, k });
    }
    let spec = FusionSpec::new(seq)?;
    let m = len as u32 - 1;
    let (hyp, verified) = vanishing_up_to(t, k, false)?;
    let lhs = mu_bar(t, seq)?;
    let rhs_sum = rhs_alternating_sum(t, &spec, SumMode::Log, m, memo)?;
    Ok(congruence_report(seq, lhs, rhs_sum, m, hyp, verified, false))
}

/// First-nonvanishing form: for `I` of length `k+1`, the plain sum is
/// exactly divisible and equals `μ(I)` as an integer.
pub fn verify_theorem2<M: MemoStore>(
    t: &StringLinkSlices,
    seq: &[u8],
    k: u32,
    memo: &M,
) -> Result<TheoremReport, TheoremError> {
    let len = seq.len();
    if k < 2 || len != k as usize + 1 {
        return Err(TheoremError::LengthOutOfRange { len, k });
    }
    let spec = FusionSpec::new(seq)?;
    let (hyp, verified) = vanishing_up_to(t, k, false)?;
    let lhs = mu_bar(t, seq)?;
    let rhs_sum = rhs_alternating_sum(t, &spec, SumMode::Plain, k, memo)?;
    Ok(congruence_report(seq, lhs, rhs_sum, k, hyp, verified, true))
}

/// Repeated-index form: cable by the multiplicities of `I`, fuse along
/// the induced nonrepeating sequence, and compare against `μ̄(I)`
/// computed directly on `t`. Uses the exact form when `|I| = k+1`,
/// the congruence form otherwise.
pub fn verify_theorem3<M: MemoStore>(
    t: &StringLinkSlices,
    seq: &[u8],
    k: u32,
    memo: &M,
) -> Result<TheoremReport, TheoremError> {
    let len = seq.len();
    if len < 3 || len > 2 * k as usize + 1 {
        return Err(TheoremError::LengthOutOfRange { len, k });
    }
    let mult = multiplicities(seq, t.width);
    let cabled = t.cable(&mult)?;
    let dseq = d_sequence(seq);
    let spec = FusionSpec::new(&dseq)?;
    let m = len as u32 - 1;
    // hypothesis quantifies over all sequences, repeats included
    let (hyp, verified) = vanishing_up_to(t, k, true)?;
    let lhs = mu_bar(t, seq)?;
    let mode = if len == k as usize + 1 {
        SumMode::Plain
    } else {
        SumMode::Log
    };
    let rhs_sum = rhs_alternating_sum(&cabled, &spec, mode, m, memo)?;
    let require_exact = len == k as usize + 1;
    Ok(congruence_report(seq, lhs, rhs_sum, m, hyp, verified, require_exact))
}

/// The band-sum average `f = (−1/(m! 2^m)) Σ_{J<I} (−1)^{|J|} P₀^{(m)}(L_J)`.
pub fn f_fusion<M: MemoStore>(
    t: &StringLinkSlices,
    spec: &FusionSpec,
    memo: &M,
) -> Result<Rat, TheoremError> {
    let m = spec.sequence().len() as u32 - 1;
    let sum = rhs_alternating_sum(t, spec, SumMode::Plain, m, memo)?;
    Ok(Rat::new(-(sum as i128), factorial_pow(m) as i128))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CompareOutcome {
    Equal,
    DistinguishedBy(IndexSequence),
    LinkingMismatch(usize, usize),
}

/// Link-homotopy comparison: equal linking numbers, then the band-sum
/// averages of the product with the reversed mirror image, over every
/// nonrepeated sequence of length 3..width, in lexicographic order.
pub fn link_homotopy_compare<M: MemoStore>(
    t1: &StringLinkSlices,
    t2: &StringLinkSlices,
    memo: &M,
) -> Result<CompareOutcome, TheoremError> {
    if t1.width != t2.width {
        return Err(TheoremError::WidthMismatch);
    }
    let n = t1.width;
    for i in 1..=n {
        for j in (i + 1)..=n {
            if mu(t1, &[i as u8, j as u8])? != mu(t2, &[i as u8, j as u8])? {
                return Ok(CompareOutcome::LinkingMismatch(i, j));
            }
        }
    }
    let product = t1.stack(&t2.mirror_reverse())?;
    for len in 3..=n {
        for seq in nonrepeating_sequences(n, len) {
            let spec = FusionSpec::new(&seq)?;
            let f = f_fusion(&product, &spec, memo)?;
            if !f.is_zero() {
                return Ok(CompareOutcome::DistinguishedBy(seq));
            }
        }
    }
    Ok(CompareOutcome::Equal)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MilnorCompareOutcome {
    IndistinguishableUpTo(usize),
    DistinguishedBy(IndexSequence),
    LinkingMismatch(usize, usize),
}

/// Milnor-equivalence comparison through cabled band sums, for all
/// sequences (repeats allowed) up to `max_length`. A finite bound
/// gives a semi-decision: the full criterion quantifies over all
/// sequences.
pub fn milnor_equiv_compare<M: MemoStore>(
    t1: &StringLinkSlices,
    t2: &StringLinkSlices,
    max_length: usize,
    memo: &M,
) -> Result<MilnorCompareOutcome, TheoremError> {
    if t1.width != t2.width {
        return Err(TheoremError::WidthMismatch);
    }
    let n = t1.width;
    for i in 1..=n {
        for j in (i + 1)..=n {
            if mu(t1, &[i as u8, j as u8])? != mu(t2, &[i as u8, j as u8])? {
                return Ok(MilnorCompareOutcome::LinkingMismatch(i, j));
            }
        }
    }
    let product = t1.stack(&t2.mirror_reverse())?;
    for len in 3..=max_length {
        for seq in all_sequences(n, len) {
            let mult = multiplicities(&seq, n);
            let cabled = product.cable(&mult)?;
            let dseq = d_sequence(&seq);
            let spec = FusionSpec::new(&dseq)?;
            let f = f_fusion(&cabled, &spec, memo)?;
            if !f.is_zero() {
                return Ok(MilnorCompareOutcome::DistinguishedBy(seq));
            }
        }
    }
    Ok(MilnorCompareOutcome::IndistinguishableUpTo(max_length))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::homflypt::SkeinMemo;

    #[test]
    fn sequence_enumeration() {
        assert_eq!(all_sequences(2, 2).len(), 4);
        assert_eq!(nonrepeating_sequences(3, 2).len(), 6);
        assert_eq!(nonrepeating_sequences(3, 3).len(), 6);
        assert_eq!(nonrepeating_sequences(4, 3).len(), 24);
    }

    #[test]
    fn trivial_links_pass_everything() {
        let memo = SkeinMemo::new();
        let t = StringLinkSlices::trivial(3);
        let spec = FusionSpec::new(&[1, 2, 3]).unwrap();
        assert_eq!(
            rhs_alternating_sum(&t, &spec, SumMode::Log, 2, &memo).unwrap(),
            0
        );
        let r = verify_theorem1(&t, &[1, 2, 3], 2, &memo).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.rhs_sum, 0);
        let r2 = verify_theorem2(&t, &[1, 2, 3], 2, &memo).unwrap();
        assert_eq!(r2.verdict, Verdict::Pass);
        assert_eq!(f_fusion(&t, &spec, &memo).unwrap(), Rat::ZERO);
    }

    #[test]
    fn worked_example_split_pair() {
        let memo = SkeinMemo::new();
        let t = builtins::split_hopf_pair();
        let spec = FusionSpec::new(&[1, 3, 2, 4]).unwrap();
        let sum_log = rhs_alternating_sum(&t, &spec, SumMode::Log, 3, &memo).unwrap();
        let sum_plain = rhs_alternating_sum(&t, &spec, SumMode::Plain, 3, &memo).unwrap();
        // the full-subsequence band sum is the only nonzero term; its
        // lowest polynomial is the trefoil's, so both sums are -24
        assert_eq!(sum_log, -24);
        assert_eq!(sum_plain, -24);
        // 48 does not divide the sum
        assert_eq!(sum_log.rem_euclid(48), 24);
        let r = verify_theorem1(&t, &[1, 3, 2, 4], 1, &memo);
        assert!(r.is_err(), "k = 1 puts length 4 out of range");
        let r = verify_theorem1(&t, &[1, 3, 2, 4], 2, &memo).unwrap();
        assert_eq!(r.verdict, Verdict::HypothesisViolated);
        assert!(!r.rhs_exact);
        let f = f_fusion(&t, &spec, &memo).unwrap();
        assert_eq!(f, Rat::new(1, 2));
    }

    #[test]
    fn borromean_cross_engine() {
        let memo = SkeinMemo::new();
        let b = builtins::borromean();
        let r = verify_theorem2(&b, &[1, 2, 3], 2, &memo).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "report {:?}", r);
        assert!(r.hypothesis_ok);
        assert_eq!(r.lhs.mu.abs(), 1);
        assert!(r.rhs_exact);
        // plain-mode sum equals -(2! 2^2) mu
        let spec = FusionSpec::new(&[1, 2, 3]).unwrap();
        let sum = rhs_alternating_sum(&b, &spec, SumMode::Plain, 2, &memo).unwrap();
        assert_eq!(sum, -8 * r.lhs.mu);
        // theorem1 congruence holds too
        let r1 = verify_theorem1(&b, &[1, 2, 3], 2, &memo).unwrap();
        assert_eq!(r1.verdict, Verdict::Pass);
        // f agrees with mu
        let f = f_fusion(&b, &spec, &memo).unwrap();
        assert_eq!(f, Rat::from_int(r.lhs.mu as i128));
    }

    #[test]
    fn theorem3_identity_cabling_matches_theorem2() {
        let memo = SkeinMemo::new();
        let b = builtins::borromean();
        let r2 = verify_theorem2(&b, &[1, 2, 3], 2, &memo).unwrap();
        let r3 = verify_theorem3(&b, &[1, 2, 3], 2, &memo).unwrap();
        assert_eq!(r3.verdict, Verdict::Pass);
        assert_eq!(r2.rhs_sum, r3.rhs_sum);
        assert_eq!(r2.lhs.mu, r3.lhs.mu);
    }

    #[test]
    fn compare_borromean_with_trivial() {
        let memo = SkeinMemo::new();
        let b = builtins::borromean();
        let u = StringLinkSlices::trivial(3);
        assert_eq!(
            link_homotopy_compare(&b, &u, &memo).unwrap(),
            CompareOutcome::DistinguishedBy(vec![1, 2, 3])
        );
        assert_eq!(
            link_homotopy_compare(&builtins::clasp(), &StringLinkSlices::trivial(2), &memo)
                .unwrap(),
            CompareOutcome::LinkingMismatch(1, 2)
        );
        assert_eq!(
            link_homotopy_compare(&b, &b, &memo).unwrap(),
            CompareOutcome::Equal
        );
    }
}
