//! Closed forms: design parameters, group orders and the number of
//! Frobenius orbits on F_q^× / μ₄, which fixes the class count of the
//! scheme of PΣL(2,q) × ⟨σ⟩.
//!
//! Everything here is exact integer or rational arithmetic.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::design::{DesignParams, PairClass};
use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::gf::{is_prime, prime_power, FieldParams};
use crate::pgroup::group_order;

pub type Rational = Ratio<i128>;

/// A validated pair (p, n) with p^n ≡ 1 (mod 4).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCountInput {
    pub p: u64,
    pub n: u32,
}

impl OrbitCountInput {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::BadCongruence("exponent must be positive".into()));
        }
        if p % 4 == 1 || (p % 4 == 3 && n % 2 == 0) {
            Ok(Self { p, n })
        } else {
            Err(Error::BadCongruence(format!("{p}^{n} is not 1 mod 4")))
        }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.n)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCount {
    /// |P/F|
    pub count: u64,
    /// 2·|P/F| − 1
    pub m_min: u64,
}

pub fn euler_phi(n: u64) -> u64 {
    crate::gf::prime_divisors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// h(d) = |H¹(⟨φ^d⟩, μ₄)| for p ≡ 1 (mod 4), and that order divided by
/// |μ₄^⟨φ^d⟩| for p ≡ 3 (mod 4).
pub fn h_factor(p: u64, n: u32, d: u32) -> Result<Rational> {
    let input = OrbitCountInput::new(p, n)?;
    if d == 0 || n % d != 0 {
        return Err(Error::NotDivisor { n, d });
    }
    let k = (n / d) as i128;
    let r = if input.p % 4 == 1 {
        Rational::from_integer(k.gcd(&4))
    } else if d % 2 == 1 || k % 4 == 0 {
        Rational::from_integer(1)
    } else if k % 4 == 2 {
        Rational::new(1, 2)
    } else {
        Rational::new(1, 4)
    };
    Ok(r)
}

/// Burnside count of Frobenius orbits on F_q^× / μ₄, q = p^n.
pub fn orbit_count_pf(p: u64, n: u32) -> Result<OrbitCount> {
    let input = OrbitCountInput::new(p, n)?;
    let divisor = if input.p % 4 == 1 { 4 } else { 1 };
    let mut total = Rational::from_integer(0);
    for d in divisors(n) {
        let fixed = (p as i128).pow(d) - 1;
        total += Rational::from_integer(euler_phi((n / d) as u64) as i128)
            * h_factor(p, n, d)?
            * Rational::new(fixed, divisor);
    }
    let count = total / Rational::from_integer(n as i128);
    if !count.is_integer() || count <= Rational::from_integer(0) {
        return Err(Error::NonIntegerResult(format!("p = {p}, n = {n}: {count}")));
    }
    let count = count.to_integer() as u64;
    Ok(OrbitCount { count, m_min: 2 * count - 1 })
}

/// Frobenius orbits on F_q^× / μ₄ by direct enumeration: the classes
/// {a, −a, ia, −ia} are merged along a ↦ a^p with union-find.
pub fn orbit_count_direct(f: &FieldParams) -> Result<u64> {
    let i = f.fourth_root()?;
    let q = f.q() as usize;
    let mut class_of = vec![u32::MAX; q];
    let mut classes = 0u32;
    for a in f.elements().skip(1) {
        if class_of[a.0 as usize] != u32::MAX {
            continue;
        }
        let mut x = a;
        for _ in 0..4 {
            class_of[x.0 as usize] = classes;
            x = f.mul(i, x);
        }
        classes += 1;
    }
    let mut dsu = DisjointSet::new(classes as usize);
    for a in f.elements().skip(1) {
        dsu.union(class_of[a.0 as usize], class_of[f.frobenius(a).0 as usize]);
    }
    Ok(dsu.canonical_labels().1 as u64)
}

/// Closed-form description of the design for q = p^α.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub q: u64,
    pub params: DesignParams,
    pub group_order: u64,
    pub block_stabilizer_order: u64,
    pub point_stabilizer_order: u64,
    /// q(q²−1)/8 edges and as many diagonals when p ≠ 5
    pub edges: Option<u64>,
    pub diagonals: Option<u64>,
    /// q(q²−1)/8 adjacent pairs when p = 5
    pub adjacent_pairs: Option<u64>,
}

pub fn closed_form_params(p: u64, alpha: u32) -> Result<ClosedForm> {
    let input = OrbitCountInput::new(p, alpha)?;
    let q = input.q();
    if q < 5 {
        return Err(Error::BadCongruence(format!("q = {q} is too small")));
    }
    let v = (q * q - 1) / 4;
    let g = group_order(q);
    let pairs = q * (q * q - 1) / 8;
    let mut lambda_values = BTreeMap::new();
    let (stab, r, edges, diagonals, adjacent) = if p == 5 {
        lambda_values.insert(PairClass::Adjacent, 1);
        (60, q / 5, None, None, Some(pairs))
    } else {
        lambda_values.insert(PairClass::Edge, 4);
        lambda_values.insert(PairClass::Diagonal, 1);
        (12, q, Some(pairs), Some(pairs), None)
    };
    // the q = 5 design is a single block, so no pair has λ = 0
    if q > 5 {
        lambda_values.insert(PairClass::Null, 0);
    }
    Ok(ClosedForm {
        q,
        params: DesignParams { v, b: g / stab, r, k: 6, lambda_values, m: (q - 3) / 2 },
        group_order: g,
        block_stabilizer_order: stab,
        point_stabilizer_order: 2 * q,
        edges,
        diagonals,
        adjacent_pairs: adjacent,
    })
}

/// Prime powers q ≡ 1 (mod 4) with 5 ≤ q ≤ max_q, increasing.
pub fn admissible_orders(max_q: u64) -> Vec<u64> {
    (5..=max_q).filter(|&q| q % 4 == 1 && prime_power(q).is_some()).collect()
}
