//! Finite fields F_{p^α} in a polynomial basis.
//!
//! An element is stored as its *code*: the coefficient tuple `(c0, c1, ..,
//! c_{α-1})` read as a base-p number with `c0` as the most significant digit.
//! Integer order on codes is therefore the lexicographic order on coefficient
//! tuples (constant term first), which is the one total order every
//! canonicalisation in this crate relies on. For α = 1 the code is just the
//! residue.
//!
//! Field construction is deterministic: the modulus is the lexicographically
//! smallest monic irreducible polynomial of degree α and ω is the smallest
//! element of multiplicative order q − 1. Both can be overridden.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order supported; addition is table driven (q² entries).
pub const MAX_FIELD_ORDER: u64 = 1 << 12;

/// An element of a particular [`FieldParams`], identified by its code.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic operations accepted by [`FieldParams::arith`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Pow(u64),
}

struct Tables {
    add: Vec<u32>,
    neg: Vec<u32>,
    /// exp[k] = ω^k for k in [0, q-1)
    exp: Vec<u32>,
    /// log[a] for a ≠ 0; log[0] is unused
    log: Vec<u32>,
}

/// A constructed field together with its distinguished elements.
#[derive(Clone)]
pub struct FieldParams {
    p: u32,
    alpha: u32,
    q: u32,
    modulus: Vec<u32>,
    omega: FieldElement,
    i_elem: Option<FieldElement>,
    one: FieldElement,
    tables: Arc<Tables>,
}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParams")
            .field("p", &self.p)
            .field("alpha", &self.alpha)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .field("omega", &self.coeffs(self.omega))
            .field("i_elem", &self.i_elem.map(|i| self.coeffs(i)))
            .finish()
    }
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.alpha == other.alpha
            && self.modulus == other.modulus
            && self.omega == other.omega
    }
}

impl Eq for FieldParams {}

/// Optional overrides for [`FieldParams::create`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldOptions {
    /// Monic modulus, coefficients low degree first, length α + 1.
    pub modulus: Option<Vec<u32>>,
    /// Generator as a coefficient tuple (length α, constant term first).
    pub generator: Option<Vec<u32>>,
}

impl FieldOptions {
    /// Parses the field-spec line `p alpha c0 c1 .. c_alpha`.
    pub fn parse_modulus_line(line: &str) -> Result<(u32, u32, Vec<u32>)> {
        let nums: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
            .collect::<Result<_>>()?;
        if nums.len() < 3 {
            return Err(Error::Parse(format!("field spec {line:?} is too short")));
        }
        let (p, alpha) = (nums[0], nums[1]);
        let coeffs = nums[2..].to_vec();
        if coeffs.len() != alpha as usize + 1 {
            return Err(Error::WrongDegree { expected: alpha, got: coeffs.len().saturating_sub(1) });
        }
        Ok((p, alpha, coeffs))
    }
}

impl FieldParams {
    /// Builds F_{p^α} with the default modulus and generator.
    pub fn new(p: u32, alpha: u32) -> Result<Self> {
        Self::create(p, alpha, &FieldOptions::default())
    }

    /// Builds F_q for a prime power q.
    pub fn for_order(q: u64) -> Result<Self> {
        let (p, alpha) = prime_power(q).ok_or(Error::BadCongruence(format!("{q} is not a prime power")))?;
        Self::new(p as u32, alpha)
    }

    pub fn create(p: u32, alpha: u32, opts: &FieldOptions) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if alpha == 0 {
            return Err(Error::WrongDegree { expected: 1, got: 0 });
        }
        let q64 = (p as u64).checked_pow(alpha).ok_or(Error::TooLarge(u64::MAX))?;
        if q64 > MAX_FIELD_ORDER {
            return Err(Error::TooLarge(q64));
        }
        let q = q64 as u32;

        let modulus = match &opts.modulus {
            Some(m) => {
                if m.len() != alpha as usize + 1 || m[alpha as usize] != 1 {
                    return Err(Error::WrongDegree { expected: alpha, got: m.len().saturating_sub(1) });
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::Parse(format!("modulus coefficient out of range for p = {p}")));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(m.clone()));
                }
                m.clone()
            }
            None => smallest_irreducible(p, alpha),
        };

        let mut f = FieldParams {
            p,
            alpha,
            q,
            modulus,
            omega: FieldElement(0),
            i_elem: None,
            one: FieldElement(0),
            tables: Arc::new(Tables { add: Vec::new(), neg: Vec::new(), exp: Vec::new(), log: Vec::new() }),
        };
        f.one = f.from_coeffs(&[1]);

        // additive tables from coefficient vectors
        let qs = q as usize;
        let digits: Vec<Vec<u32>> = (0..q).map(|c| f.coeffs(FieldElement(c))).collect();
        let mut add = vec![0u32; qs * qs];
        let mut neg = vec![0u32; qs];
        let mut buf = vec![0u32; alpha as usize];
        for a in 0..qs {
            for b in 0..qs {
                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = (digits[a][k] + digits[b][k]) % p;
                }
                add[a * qs + b] = f.from_coeffs(&buf).0;
            }
            for (k, slot) in buf.iter_mut().enumerate() {
                *slot = (p - digits[a][k]) % p;
            }
            neg[a] = f.from_coeffs(&buf).0;
        }

        let order = q64 - 1;
        let primes = prime_divisors(order);
        let is_generator = |g: &[u32]| -> bool {
            if g.iter().all(|&c| c == 0) {
                return false;
            }
            let one = poly_one(alpha as usize);
            poly_powmod(g, order, &f.modulus, p) == one
                && primes.iter().all(|&l| poly_powmod(g, order / l, &f.modulus, p) != one)
        };
        let omega_coeffs = match &opts.generator {
            Some(g) => {
                let mut g = g.clone();
                if g.len() > alpha as usize || g.iter().any(|&c| c >= p) {
                    return Err(Error::Parse(format!("generator {g:?} is not an element of F_{q}")));
                }
                g.resize(alpha as usize, 0);
                if !is_generator(&g) {
                    return Err(Error::NotGenerator(format!("{g:?}")));
                }
                g
            }
            None => (1..q)
                .map(|c| digits[c as usize].clone())
                .find(|g| is_generator(g))
                .expect("a finite field always has a primitive element"),
        };
        f.omega = f.from_coeffs(&omega_coeffs);

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; qs];
        let mut cur = poly_one(alpha as usize);
        for k in 0..order as usize {
            let code = f.from_coeffs(&cur).0;
            exp[k] = code;
            log[code as usize] = k as u32;
            cur = poly_mulmod(&cur, &omega_coeffs, &f.modulus, p);
        }
        f.tables = Arc::new(Tables { add, neg, exp, log });
        if q % 4 == 1 {
            f.i_elem = Some(f.omega_pow((q as u64 - 1) / 4));
        }
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn omega(&self) -> FieldElement {
        self.omega
    }

    /// The fourth root of unity ω^((q−1)/4), present iff q ≡ 1 (mod 4).
    pub fn i_elem(&self) -> Option<FieldElement> {
        self.i_elem
    }

    /// Like [`Self::i_elem`] but an error when q ≢ 1 (mod 4).
    pub fn fourth_root(&self) -> Result<FieldElement> {
        self.i_elem.ok_or(Error::MissingFourthRoot(self.q as u64))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        self.one
    }

    /// All q elements in increasing (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Coefficients of `e`, constant term first.
    pub fn coeffs(&self, e: FieldElement) -> Vec<u32> {
        let mut out = vec![0u32; self.alpha as usize];
        let mut c = e.0;
        for slot in out.iter_mut().rev() {
            *slot = c % self.p;
            c /= self.p;
        }
        out
    }

    /// Element with the given coefficients (constant term first, missing
    /// high coefficients are zero). Coefficients are reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let mut code = 0u32;
        for k in 0..self.alpha as usize {
            let c = coeffs.get(k).copied().unwrap_or(0) % self.p;
            code = code * self.p + c;
        }
        FieldElement(code)
    }

    /// Image of an integer under Z → F_p ⊂ F_q.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_coeffs(&[n.rem_euclid(self.p as i64) as u32])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.tables.add[a.0 as usize * self.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.tables.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &self.tables;
        let k = t.log[a.0 as usize] + t.log[b.0 as usize];
        let m = self.q - 1;
        FieldElement(t.exp[(if k >= m { k - m } else { k }) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.q - 1;
        let k = self.tables.log[a.0 as usize];
        Ok(FieldElement(self.tables.exp[((m - k) % m) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let m = (self.q - 1) as u64;
        let k = (self.tables.log[a.0 as usize] as u64 * (e % m)) % m;
        FieldElement(self.tables.exp[k as usize])
    }

    pub fn omega_pow(&self, k: u64) -> FieldElement {
        FieldElement(self.tables.exp[(k % (self.q as u64 - 1)) as usize])
    }

    /// Discrete log base ω.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.tables.log[a.0 as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Result<u64> {
        let k = self.log(a).ok_or(Error::DivisionByZero)? as u64;
        let m = (self.q - 1) as u64;
        Ok(m / num_integer::gcd(k, m))
    }

    /// The Frobenius map a ↦ a^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Binary and unary operations behind one entry point. The second
    /// operand is ignored for unary kinds.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement> {
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Pow(e) => self.pow(a, e),
        })
    }

    /// Whether 1 + j = −j for one of the two fourth roots j ∈ {i, −i}.
    ///
    /// In characteristic 5 the fourth roots are 2 and 3 and only j = 2
    /// satisfies the identity, so which of i, −i works depends on the
    /// generator. Testing both makes the answer "p = 5" for every choice.
    pub fn is_char5_identity(&self) -> Result<bool> {
        let i = self.fourth_root()?;
        let holds = |j: FieldElement| self.add(self.one, j) == self.neg(j);
        Ok(holds(i) || holds(self.neg(i)))
    }

    /// The literal test 1 + i = −i for the distinguished root i.
    pub fn one_plus_i_is_minus_i(&self) -> Result<bool> {
        let i = self.fourth_root()?;
        Ok(self.add(self.one, i) == self.neg(i))
    }

    /// Human-readable rendering, e.g. `2+x` or `3`.
    pub fn display(&self, e: FieldElement) -> String {
        if self.alpha == 1 {
            return e.0.to_string();
        }
        let c = self.coeffs(e);
        let mut terms = Vec::new();
        for (k, &ck) in c.iter().enumerate() {
            if ck == 0 {
                continue;
            }
            terms.push(match (k, ck) {
                (0, _) => ck.to_string(),
                (1, 1) => "x".to_string(),
                (1, _) => format!("{ck}x"),
                (_, 1) => format!("x^{k}"),
                _ => format!("{ck}x^{k}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// The field-spec line `p alpha c0 .. c_alpha` for this field.
    pub fn modulus_line(&self) -> String {
        let mut s = format!("{} {}", self.p, self.alpha);
        for c in &self.modulus {
            s.push_str(&format!(" {c}"));
        }
        s
    }
}

// ---- polynomials over F_p as coefficient vectors (low degree first) ----

fn poly_one(len: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    v[0] = 1;
    v
}

fn trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn modinv(a: u32, p: u32) -> u32 {
    // p is prime, Fermat
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo `m` (m with nonzero leading coefficient).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let p64 = p as u64;
    let mut r = a.to_vec();
    if r.len() > dm {
        let lead_inv = modinv(m[dm], p) as u64;
        for top in (dm..r.len()).rev() {
            let factor = r[top] as u64 * lead_inv % p64;
            if factor == 0 {
                continue;
            }
            let shift = top - dm;
            for (k, &mk) in m.iter().enumerate() {
                let sub = factor * mk as u64 % p64;
                r[shift + k] = ((r[shift + k] as u64 + p64 - sub) % p64) as u32;
            }
        }
    }
    r.truncate(dm.max(1));
    r
}

/// Product of two residues modulo the degree-α modulus; result has length α.
fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let alpha = m.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = poly_rem(&prod, m, p);
    r.resize(alpha, 0);
    r
}

fn poly_powmod(g: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let alpha = m.len() - 1;
    let mut result = poly_one(alpha);
    let mut base = g.to_vec();
    base.resize(alpha, 0);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

/// Irreducibility of a monic polynomial by trial division with every monic
/// polynomial of degree 1..=deg/2.
pub fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut div = vec![0u32; d + 1];
            let mut x = t;
            for slot in div.iter_mut().take(d) {
                *slot = (x % p as u64) as u32;
                x /= p as u64;
            }
            div[d] = 1;
            let r = poly_rem(m, &div, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree α,
/// comparing coefficient tuples constant term first.
pub fn smallest_irreducible(p: u32, alpha: u32) -> Vec<u32> {
    let a = alpha as usize;
    let total = (p as u64).pow(alpha);
    for t in 0..total {
        // c0 is the most significant digit so that t runs in lex order
        let mut m = vec![0u32; a + 1];
        let mut x = t;
        for k in (0..a).rev() {
            m[k] = (x % p as u64) as u32;
            x /= p as u64;
        }
        m[a] = 1;
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// ---- small integer helpers ----

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes q = p^α, or `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let ps = prime_divisors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut alpha = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        alpha += 1;
    }
    Some((p, alpha))
}
