//! Exact integer Laurent polynomials in `t` and in `(t, z)`, and
//! derivative / log-derivative evaluation at `t = 1`.
//!
//! [`Laurent1`] holds the coefficient polynomials `P_k(·; t)`;
//! [`BiLaurent`] holds the full two-variable polynomial `P(·; t, z)`.
//! Both store sparse exponent→coefficient maps with no zero entries.
//!
//! Derivatives at `t = 1` never leave the integers: the `l`th
//! derivative of `t^e` at 1 is the falling factorial `e(e−1)⋯(e−l+1)`.
//! Log-derivatives go through a truncated rational series in `h`
//! (where `t = 1 + h`) and assert integrality of the final value.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rat::Rat;

/// Integer Laurent polynomial in one variable `t`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Laurent1 {
    coeffs: BTreeMap<i32, i64>,
}

/// Integer Laurent polynomial in two variables `t`, `z`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiLaurent {
    coeffs: BTreeMap<(i32, i32), i64>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolyError {
    /// `log` requested of a polynomial with `p(1) != 1`.
    LogRequiresUnitValue { at_one: i64 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::LogRequiresUnitValue { at_one } => {
                write!(f, "log-derivative requires p(1) = 1, got p(1) = {}", at_one)
            }
        }
    }
}

fn falling(e: i64, l: u32) -> i64 {
    let mut acc: i64 = 1;
    for k in 0..l as i64 {
        acc = acc.checked_mul(e - k).expect("derivative overflow");
    }
    acc
}

impl Laurent1 {
    pub fn zero() -> Laurent1 {
        Laurent1::default()
    }

    pub fn one() -> Laurent1 {
        Laurent1::term(1, 0)
    }

    /// `c * t^e`.
    pub fn term(c: i64, e: i32) -> Laurent1 {
        let mut p = Laurent1::default();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: &[(i64, i32)]) -> Laurent1 {
        let mut p = Laurent1::default();
        for &(c, e) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add(&self, rhs: &Laurent1) -> Laurent1 {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }

    pub fn neg(&self) -> Laurent1 {
        let mut out = Laurent1::default();
        for (&e, &c) in &self.coeffs {
            out.add_term(e, -c);
        }
        out
    }

    pub fn sub(&self, rhs: &Laurent1) -> Laurent1 {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Laurent1) -> Laurent1 {
        let mut out = Laurent1::default();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }

    pub fn scalar_mul(&self, s: i64) -> Laurent1 {
        let mut out = Laurent1::default();
        for (&e, &c) in &self.coeffs {
            out.add_term(e, c.checked_mul(s).expect("coefficient overflow"));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Laurent1 {
        let mut out = Laurent1::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Value at `t = 1`, i.e. the coefficient sum.
    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// `l`th derivative evaluated at `t = 1`.
    ///
    /// Equals `l! ×` (coefficient of `h^l` in `p(1+h)`).
    pub fn deriv_at_one(&self, l: u32) -> i64 {
        let mut acc: i64 = 0;
        for (&e, &c) in &self.coeffs {
            acc = acc
                .checked_add(c.checked_mul(falling(e as i64, l)).expect("derivative overflow"))
                .expect("derivative overflow");
        }
        acc
    }

    /// `m`th derivative of `log p(t)` evaluated at `t = 1`.
    ///
    /// Requires `p(1) = 1`; the result is an integer for integer
    /// Laurent `p` and the final division is asserted exact.
    pub fn log_deriv_at_one(&self, m: u32) -> Result<i64, PolyError> {
        let at_one = self.eval_at_one();
        if at_one != 1 {
            return Err(PolyError::LogRequiresUnitValue { at_one });
        }
        if m == 0 {
            return Ok(0);
        }
        let series = TruncSeries1::from_laurent(self, m);
        let log = series.log();
        let c = log.coeff(m);
        let mut fact = Rat::ONE;
        for k in 1..=m as i128 {
            fact = fact * Rat::from_int(k);
        }
        let val = c * fact;
        assert!(val.is_integer(), "log-derivative came out non-integral");
        Ok(i64::try_from(val.to_integer()).expect("log-derivative overflow"))
    }
}

/// Truncated power series in `h` with rational coefficients, used to
/// evaluate `p(1+h)` and its logarithm up to a fixed degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries1 {
    /// Degree bound; `coeffs.len() == q + 1`.
    q: u32,
    coeffs: Vec<Rat>,
}

impl TruncSeries1 {
    pub fn new(q: u32) -> TruncSeries1 {
        TruncSeries1 {
            q,
            coeffs: vec![Rat::ZERO; q as usize + 1],
        }
    }

    /// `p(1+h)` truncated at degree `q`.
    pub fn from_laurent(p: &Laurent1, q: u32) -> TruncSeries1 {
        let mut s = TruncSeries1::new(q);
        for (e, c) in p.terms() {
            // (1+h)^e = sum_k falling(e,k)/k! h^k, valid for negative e too.
            let mut binom = Rat::ONE;
            for k in 0..=q {
                if k > 0 {
                    binom = binom * Rat::new(e as i128 - (k as i128 - 1), k as i128);
                }
                s.coeffs[k as usize] = s.coeffs[k as usize] + Rat::from_int(c as i128) * binom;
            }
        }
        s
    }

    pub fn degree_bound(&self) -> u32 {
        self.q
    }

    pub fn coeff(&self, k: u32) -> Rat {
        if k <= self.q {
            self.coeffs[k as usize]
        } else {
            Rat::ZERO
        }
    }

    pub fn mul(&self, rhs: &TruncSeries1) -> TruncSeries1 {
        assert_eq!(self.q, rhs.q, "degree bound mismatch");
        let mut out = TruncSeries1::new(self.q);
        for i in 0..=self.q as usize {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(self.q as usize - i) {
                out.coeffs[i + j] = out.coeffs[i + j] + self.coeffs[i] * rhs.coeffs[j];
            }
        }
        out
    }

    /// `log` of a series with constant term 1.
    pub fn log(&self) -> TruncSeries1 {
        assert_eq!(self.coeffs[0], Rat::ONE, "log needs constant term 1");
        // log(1+u) = u - u^2/2 + u^3/3 - ...
        let mut u = self.clone();
        u.coeffs[0] = Rat::ZERO;
        let mut out = TruncSeries1::new(self.q);
        let mut upow = u.clone();
        for j in 1..=self.q as i128 {
            if j > 1 {
                upow = upow.mul(&u);
            }
            let sign = if j % 2 == 1 { Rat::ONE } else { -Rat::ONE };
            for k in 0..=self.q as usize {
                out.coeffs[k] = out.coeffs[k] + sign * upow.coeffs[k] / Rat::from_int(j);
            }
        }
        out
    }
}

impl BiLaurent {
    pub fn zero() -> BiLaurent {
        BiLaurent::default()
    }

    pub fn one() -> BiLaurent {
        BiLaurent::term(1, 0, 0)
    }

    /// `c * t^a * z^b`.
    pub fn term(c: i64, a: i32, b: i32) -> BiLaurent {
        let mut p = BiLaurent::default();
        p.add_term(a, b, c);
        p
    }

    pub fn from_terms(terms: &[(i64, i32, i32)]) -> BiLaurent {
        let mut p = BiLaurent::default();
        for &(c, a, b) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    fn add_term(&mut self, a: i32, b: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry((a, b)).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.coeffs.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, a: i32, b: i32) -> i64 {
        self.coeffs.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn add(&self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (&(a, b), &c) in &rhs.coeffs {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn neg(&self) -> BiLaurent {
        let mut out = BiLaurent::default();
        for (&(a, b), &c) in &self.coeffs {
            out.add_term(a, b, -c);
        }
        out
    }

    pub fn sub(&self, rhs: &BiLaurent) -> BiLaurent {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::default();
        for (&(a1, b1), &c1) in &self.coeffs {
            for (&(a2, b2), &c2) in &rhs.coeffs {
                out.add_term(
                    a1 + a2,
                    b1 + b2,
                    c1.checked_mul(c2).expect("coefficient overflow"),
                );
            }
        }
        out
    }

    pub fn scalar_mul(&self, s: i64) -> BiLaurent {
        let mut out = BiLaurent::default();
        for (&(a, b), &c) in &self.coeffs {
            out.add_term(a, b, c.checked_mul(s).expect("coefficient overflow"));
        }
        out
    }

    pub fn pow(&self, n: u32) -> BiLaurent {
        let mut out = BiLaurent::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Multiply by `t^a z^b`.
    pub fn shift(&self, a: i32, b: i32) -> BiLaurent {
        let mut out = BiLaurent::default();
        for (&(a1, b1), &c) in &self.coeffs {
            out.add_term(a1 + a, b1 + b, c);
        }
        out
    }

    /// The one-variable polynomial multiplying `z^e`.
    pub fn z_coefficient(&self, e: i32) -> Laurent1 {
        let mut p = Laurent1::default();
        for (&(a, b), &c) in &self.coeffs {
            if b == e {
                p.add_term(a, c);
            }
        }
        p
    }

    /// The set of `z`-exponents with nonzero coefficient polynomial.
    pub fn z_exponents(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.coeffs.keys().map(|&(_, b)| b).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn from_laurent1_z(p: &Laurent1, z_exp: i32) -> BiLaurent {
        let mut out = BiLaurent::default();
        for (e, c) in p.terms() {
            out.add_term(e, z_exp, c);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Text rendering and parsing.
//
// Terms are written `c*t^a*z^b` with unit factors elided (`t` for `t^1`,
// no `t` factor for `t^0`, coefficient shown only when it is not ±1 or
// the term is constant), ordered by decreasing t-exponent then
// decreasing z-exponent. `parse` accepts exactly what `Display` emits,
// plus arbitrary whitespace around `+`/`-`.
// ---------------------------------------------------------------------------

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: i64, factors: &[(char, i32)]) -> fmt::Result {
    if first {
        if c < 0 {
            write!(f, "-")?;
        }
    } else if c < 0 {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let mag = c.unsigned_abs();
    let vars: Vec<&(char, i32)> = factors.iter().filter(|&&(_, e)| e != 0).collect();
    let mut wrote = false;
    if mag != 1 || vars.is_empty() {
        write!(f, "{}", mag)?;
        wrote = true;
    }
    for &&(v, e) in &vars {
        if wrote {
            write!(f, "*")?;
        }
        if e == 1 {
            write!(f, "{}", v)?;
        } else {
            write!(f, "{}^{}", v, e)?;
        }
        wrote = true;
    }
    Ok(())
}

impl fmt::Display for Laurent1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(i32, i64)> = self.terms().collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        for (i, &(e, c)) in terms.iter().enumerate() {
            write_term(f, i == 0, c, &[('t', e)])?;
        }
        Ok(())
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<((i32, i32), i64)> = self.terms().collect();
        terms.sort_by(|a, b| (b.0 .0, b.0 .1).cmp(&(a.0 .0, a.0 .1)));
        for (i, &((a, b), c)) in terms.iter().enumerate() {
            write_term(f, i == 0, c, &[('t', a), ('z', b)])?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyParseError {
    pub at: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polynomial syntax error at byte {}: {}", self.at, self.message)
    }
}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn err<T>(&self, message: &str) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            at: self.pos,
            message: String::from(message),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<i64, PolyParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected an integer");
        }
        core::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<i64>().ok())
            .map_or_else(|| self.err("integer out of range"), Ok)
    }

    /// One term: optional coefficient, then `*`-joined variable powers.
    fn term(&mut self, sign: i64) -> Result<(i64, i32, i32), PolyParseError> {
        let mut coeff: Option<i64> = None;
        let mut t_exp: i32 = 0;
        let mut z_exp: i32 = 0;
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    if coeff.is_some() || any {
                        return self.err("unexpected number");
                    }
                    coeff = Some(self.integer()?);
                }
                Some(b't') | Some(b'z') => {
                    let var = self.peek().unwrap();
                    self.pos += 1;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let v = self.integer()?;
                        i32::try_from(v).map_err(|_| PolyParseError {
                            at: self.pos,
                            message: String::from("exponent out of range"),
                        })?
                    } else {
                        1
                    };
                    let slot = if var == b't' { &mut t_exp } else { &mut z_exp };
                    if *slot != 0 {
                        return self.err("repeated variable in term");
                    }
                    *slot = e;
                }
                _ => return self.err("expected a term"),
            }
            any = true;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let c = coeff.unwrap_or(1).checked_mul(sign).expect("coefficient overflow");
        Ok((c, t_exp, z_exp))
    }

    fn poly(&mut self) -> Result<Vec<(i64, i32, i32)>, PolyParseError> {
        self.skip_ws();
        if self.s.is_empty() {
            return self.err("empty input");
        }
        let mut terms = Vec::new();
        let mut sign = 1i64;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        }
        loop {
            terms.push(self.term(sign)?);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return self.err("expected '+', '-' or end of input"),
            }
        }
        Ok(terms)
    }
}

impl Laurent1 {
    pub fn parse(input: &str) -> Result<Laurent1, PolyParseError> {
        if input.trim() == "0" {
            return Ok(Laurent1::zero());
        }
        let mut p = PolyParser { s: input.as_bytes(), pos: 0 };
        let terms = p.poly()?;
        let mut out = Laurent1::default();
        for (c, a, b) in terms {
            if b != 0 {
                return Err(PolyParseError {
                    at: 0,
                    message: String::from("unexpected variable z in one-variable polynomial"),
                });
            }
            out.add_term(a, c);
        }
        Ok(out)
    }
}

impl BiLaurent {
    pub fn parse(input: &str) -> Result<BiLaurent, PolyParseError> {
        if input.trim() == "0" {
            return Ok(BiLaurent::zero());
        }
        let mut p = PolyParser { s: input.as_bytes(), pos: 0 };
        let terms = p.poly()?;
        let mut out = BiLaurent::default();
        for (c, a, b) in terms {
            out.add_term(a, b, c);
        }
        Ok(out)
    }
}
