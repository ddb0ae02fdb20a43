//! Truncated integer power series in non-commuting variables
//! `X_1, ..., X_n`.
//!
//! This is the coefficient ring of the Magnus expansion: the free group
//! on meridians embeds by `m_i ↦ 1 + X_i`, `m_i⁻¹ ↦ 1 − X_i + X_i² − ⋯`.
//! Monomials are index sequences; all products are truncated beyond
//! total degree `q`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

/// A monomial key: the sequence of variable indices, each in `1..=n`.
type Mono = Vec<u8>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncNCSeries {
    n: u8,
    q: u32,
    /// Monomial → coefficient; no zero entries, keys of length ≤ q.
    coeffs: BTreeMap<Mono, i64>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MagnusError {
    Mismatch,
    VariableOutOfRange { i: u8, n: u8 },
    NotAUnit,
    DegreeTooHigh { len: usize, q: u32 },
}

impl fmt::Display for MagnusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagnusError::Mismatch => write!(f, "operands have different variable count or degree bound"),
            MagnusError::VariableOutOfRange { i, n } => write!(f, "variable X{} out of range 1..={}", i, n),
            MagnusError::NotAUnit => write!(f, "series has constant term != 1"),
            MagnusError::DegreeTooHigh { len, q } => {
                write!(f, "monomial length {} exceeds degree bound {}", len, q)
            }
        }
    }
}

impl TruncNCSeries {
    pub fn zero(n: u8, q: u32) -> TruncNCSeries {
        TruncNCSeries {
            n,
            q,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: u8, q: u32) -> TruncNCSeries {
        let mut s = TruncNCSeries::zero(n, q);
        s.coeffs.insert(Vec::new(), 1);
        s
    }

    /// The Magnus image `1 + X_i` of the `i`th meridian.
    pub fn meridian(n: u8, q: u32, i: u8) -> Result<TruncNCSeries, MagnusError> {
        if i == 0 || i > n {
            return Err(MagnusError::VariableOutOfRange { i, n });
        }
        let mut s = TruncNCSeries::one(n, q);
        if q >= 1 {
            s.coeffs.insert(alloc::vec![i], 1);
        }
        Ok(s)
    }

    /// `1 − X_i + X_i² − ⋯`, the truncated geometric inverse of `1 + X_i`.
    pub fn meridian_inv(n: u8, q: u32, i: u8) -> Result<TruncNCSeries, MagnusError> {
        if i == 0 || i > n {
            return Err(MagnusError::VariableOutOfRange { i, n });
        }
        let mut s = TruncNCSeries::zero(n, q);
        for d in 0..=q as usize {
            let key: Mono = core::iter::repeat(i).take(d).collect();
            s.coeffs.insert(key, if d % 2 == 0 { 1 } else { -1 });
        }
        Ok(s)
    }

    pub fn vars(&self) -> u8 {
        self.n
    }

    pub fn degree_bound(&self) -> u32 {
        self.q
    }

    pub fn constant_term(&self) -> i64 {
        self.coeffs.get(&Vec::new() as &Mono).copied().unwrap_or(0)
    }

    pub fn coefficient(&self, s: &[u8]) -> Result<i64, MagnusError> {
        if s.len() > self.q as usize {
            return Err(MagnusError::DegreeTooHigh { len: s.len(), q: self.q });
        }
        for &i in s {
            if i == 0 || i > self.n {
                return Err(MagnusError::VariableOutOfRange { i, n: self.n });
            }
        }
        Ok(self.coeffs.get(s).copied().unwrap_or(0))
    }

    fn insert(&mut self, key: Mono, c: i64) {
        if c == 0 || key.len() > self.q as usize {
            return;
        }
        match self.coeffs.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(c).expect("series coefficient overflow");
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, rhs: &TruncNCSeries) -> Result<(), MagnusError> {
        if self.n != rhs.n || self.q != rhs.q {
            return Err(MagnusError::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &TruncNCSeries) -> Result<TruncNCSeries, MagnusError> {
        self.check(rhs)?;
        let mut out = self.clone();
        for (k, &c) in &rhs.coeffs {
            out.insert(k.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> TruncNCSeries {
        let mut out = TruncNCSeries::zero(self.n, self.q);
        for (k, &c) in &self.coeffs {
            out.coeffs.insert(k.clone(), -c);
        }
        out
    }

    pub fn mul(&self, rhs: &TruncNCSeries) -> Result<TruncNCSeries, MagnusError> {
        self.check(rhs)?;
        let mut out = TruncNCSeries::zero(self.n, self.q);
        for (k1, &c1) in &self.coeffs {
            for (k2, &c2) in &rhs.coeffs {
                if k1.len() + k2.len() > self.q as usize {
                    continue;
                }
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                out.insert(key, c1.checked_mul(c2).expect("series coefficient overflow"));
            }
        }
        Ok(out)
    }

    /// Inverse in the group of units with constant term 1.
    pub fn invert(&self) -> Result<TruncNCSeries, MagnusError> {
        if self.constant_term() != 1 {
            return Err(MagnusError::NotAUnit);
        }
        // (1 + u)^-1 = 1 - u + u^2 - ... truncated at q.
        let mut u = self.clone();
        u.coeffs.remove(&Vec::new() as &Mono);
        let mut out = TruncNCSeries::one(self.n, self.q);
        let mut pow = TruncNCSeries::one(self.n, self.q);
        for d in 1..=self.q {
            pow = pow.mul(&u)?;
            if pow.coeffs.is_empty() {
                break;
            }
            let signed = if d % 2 == 1 { pow.neg() } else { pow.clone() };
            out = out.add(&signed)?;
        }
        Ok(out)
    }

    /// `w · m · w⁻¹` for a unit `w`.
    pub fn conjugate(w: &TruncNCSeries, m: &TruncNCSeries) -> Result<TruncNCSeries, MagnusError> {
        w.mul(m)?.mul(&w.invert()?)
    }

    /// Integer power of a unit (negative exponents via `invert`).
    pub fn unit_pow(&self, e: i64) -> Result<TruncNCSeries, MagnusError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut out = TruncNCSeries::one(self.n, self.q);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    /// Re-truncate to a smaller degree bound.
    pub fn truncate(&self, q: u32) -> TruncNCSeries {
        let mut out = TruncNCSeries::zero(self.n, q);
        for (k, &c) in &self.coeffs {
            if k.len() <= q as usize {
                out.coeffs.insert(k.clone(), c);
            }
        }
        out
    }

    /// Debug rendering like `1 + X1 X2 - X2 X1`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return String::from("0");
        }
        let mut keys: Vec<&Mono> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
        let mut out = String::new();
        for (idx, k) in keys.iter().enumerate() {
            let c = self.coeffs[*k];
            if idx == 0 {
                if c < 0 {
                    out.push_str("- ");
                }
            } else if c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.unsigned_abs();
            if mag != 1 || k.is_empty() {
                let _ = write!(out, "{}", mag);
                if !k.is_empty() {
                    out.push(' ');
                }
            }
            for (j, &i) in k.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "X{}", i);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(i: u8) -> TruncNCSeries {
        TruncNCSeries::meridian(3, 3, i).unwrap()
    }

    #[test]
    fn product_and_noncommutativity() {
        let p = m(1).mul(&m(2)).unwrap();
        assert_eq!(p.coefficient(&[]).unwrap(), 1);
        assert_eq!(p.coefficient(&[1]).unwrap(), 1);
        assert_eq!(p.coefficient(&[2]).unwrap(), 1);
        assert_eq!(p.coefficient(&[1, 2]).unwrap(), 1);
        assert_eq!(p.coefficient(&[2, 1]).unwrap(), 0);
    }

    #[test]
    fn geometric_inverse() {
        // (1+X1)(1-X1+X1^2) at q=2 is exactly 1
        let a = TruncNCSeries::meridian(1, 2, 1).unwrap();
        let b = TruncNCSeries::meridian_inv(1, 2, 1).unwrap();
        assert_eq!(a.mul(&b).unwrap(), TruncNCSeries::one(1, 2));
        // meridian_inv at q=3 is 1 - X1 + X1^2 - X1^3
        let c = TruncNCSeries::meridian_inv(1, 3, 1).unwrap();
        assert_eq!(c.coefficient(&[1, 1, 1]).unwrap(), -1);
        // meridian * meridian_inv = 1 at any q
        for q in 0..6 {
            let a = TruncNCSeries::meridian(2, q, 1).unwrap();
            let b = TruncNCSeries::meridian_inv(2, q, 1).unwrap();
            assert_eq!(a.mul(&b).unwrap(), TruncNCSeries::one(2, q));
        }
    }

    #[test]
    fn invert_examples() {
        assert_eq!(
            TruncNCSeries::one(2, 3).invert().unwrap(),
            TruncNCSeries::one(2, 3)
        );
        // invert(1 + X1 + X2) at q = 2
        let mut s = TruncNCSeries::one(2, 2);
        s.insert(vec![1], 1);
        s.insert(vec![2], 1);
        let inv = s.invert().unwrap();
        assert_eq!(inv.coefficient(&[1]).unwrap(), -1);
        assert_eq!(inv.coefficient(&[2]).unwrap(), -1);
        for key in [[1u8, 1], [1, 2], [2, 1], [2, 2]] {
            assert_eq!(inv.coefficient(&key).unwrap(), 1);
        }
        assert_eq!(s.mul(&inv).unwrap(), TruncNCSeries::one(2, 2));
    }

    #[test]
    fn conjugation() {
        // conjugate(1+X1, 1+X2) at q=2 -> 1 + X2 + X1X2 - X2X1
        let w = TruncNCSeries::meridian(2, 2, 1).unwrap();
        let x = TruncNCSeries::meridian(2, 2, 2).unwrap();
        let c = TruncNCSeries::conjugate(&w, &x).unwrap();
        assert_eq!(c.coefficient(&[2]).unwrap(), 1);
        assert_eq!(c.coefficient(&[1, 2]).unwrap(), 1);
        assert_eq!(c.coefficient(&[2, 1]).unwrap(), -1);
        assert_eq!(c.coefficient(&[1]).unwrap(), 0);
        assert_eq!(c.constant_term(), 1);
        // conjugate(1, m) = m
        let one = TruncNCSeries::one(2, 2);
        assert_eq!(TruncNCSeries::conjugate(&one, &x).unwrap(), x);
    }

    #[test]
    fn group_laws_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for q in 1..=5u32 {
            for _ in 0..10 {
                let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let mut s = TruncNCSeries::one(3, q);
                    for _ in 0..rng.gen_range(1..5) {
                        let len = rng.gen_range(1..=q) as usize;
                        let key: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=3)).collect();
                        s.insert(key, rng.gen_range(-2..3));
                    }
                    s
                };
                let a = mk(&mut rng);
                let b = mk(&mut rng);
                let c = mk(&mut rng);
                let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
                let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                let one = TruncNCSeries::one(3, q);
                assert_eq!(a.mul(&one).unwrap(), a);
                assert_eq!(a.mul(&a.invert().unwrap()).unwrap(), one);
                assert_eq!(a.invert().unwrap().invert().unwrap(), a);
            }
        }
    }

    #[test]
    fn truncation_consistency() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mk = |rng: &mut rand_chacha::ChaCha8Rng, q: u32| {
                let mut s = TruncNCSeries::one(2, q);
                for _ in 0..4 {
                    let len = rng.gen_range(1..=3usize);
                    let key: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=2)).collect();
                    s.insert(key, rng.gen_range(-2..3));
                }
                s
            };
            let a5 = mk(&mut rng, 5);
            let b5 = mk(&mut rng, 5);
            let a3 = a5.truncate(3);
            let b3 = b5.truncate(3);
            assert_eq!(a5.mul(&b5).unwrap().truncate(3), a3.mul(&b3).unwrap());
            assert_eq!(a5.invert().unwrap().truncate(3), a3.invert().unwrap());
        }
    }

    #[test]
    fn rendering() {
        let w = TruncNCSeries::meridian(2, 2, 1).unwrap();
        let x = TruncNCSeries::meridian(2, 2, 2).unwrap();
        let c = TruncNCSeries::conjugate(&w, &x).unwrap();
        assert_eq!(c.render(), "1 + X2 + X1 X2 - X2 X1");
    }
}
