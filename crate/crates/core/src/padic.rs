//! Truncated p-adic arithmetic: residues modulo `p^k` for `k <= 4` with the
//! p-adic valuation carried separately, so that products and quotients of
//! factorials whose arguments exceed `p` stay exact to the working precision.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Highest precision any claim asks for.
pub const MAX_PRECISION: u32 = 4;

/// Largest prime whose fourth power fits in a `u64`.
pub const MAX_PRIME: u64 = 65521;

/// p-adic valuation of an exact rational. `Infinite` stands for exact zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, k: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

fn strip(n: &mut BigInt, p: &BigInt) -> i64 {
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        *n = q;
        count += 1;
    }
}

/// `v_p(numerator) - v_p(denominator)`, or `Infinite` for zero.
pub fn valuation(r: &Rational, p: u64) -> Valuation {
    if r.is_zero() {
        return Valuation::Infinite;
    }
    let pb = BigInt::from(p);
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    Valuation::Finite(strip(&mut num, &pb) - strip(&mut den, &pb))
}

/// The ring `Z/p^k` for an odd prime `p < 65536` and `1 <= k <= 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    p: u64,
    precision: u32,
    value: u64,
}

impl Modulus {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if p < 3
            || p.is_multiple_of(2)
            || p > MAX_PRIME
            || precision == 0
            || precision > MAX_PRECISION
        {
            return Err(Error::UnsupportedPrime { p });
        }
        Ok(Modulus {
            p,
            precision,
            value: p.pow(precision),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^k`.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// The same prime at a lower (or equal) precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Modulus::new(self.p, precision)
    }

    pub fn reduce(&self, a: u64) -> u64 {
        a % self.value
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        (a as i128).rem_euclid(self.value as i128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.value as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.value - b % self.value)
    }

    pub fn neg(&self, a: u64) -> u64 {
        self.sub(0, a)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.value as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.value;
        base %= self.value;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        mod_inverse(a, self.p, self.precision)
    }

    /// `v_p` of a residue known modulo `p^k`; zero yields `k` (a lower bound).
    pub fn residue_valuation(&self, a: u64) -> u32 {
        let mut a = a % self.value;
        if a == 0 {
            return self.precision;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }
}

/// Inverse of `a` modulo `p^k` by the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, p: u64, k: u32) -> Result<u64> {
    let m = p.pow(k) as i128;
    let a_red = (a as i128).rem_euclid(m);
    if a_red % p as i128 == 0 {
        return Err(Error::NotInvertible {
            value: a,
            p,
            precision: k,
        });
    }
    let (mut old_r, mut r) = (a_red, m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    Ok(old_s.rem_euclid(m) as u64)
}

fn bigint_mod(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("reduced value fits")
}

/// The residue `c` in `[0, p^k)` with `r = c (mod p^k)`.
pub fn residue_of_rational(r: &Rational, p: u64, k: u32) -> Result<u64> {
    let m = p.pow(k);
    let den = bigint_mod(r.denom(), m);
    if den.is_multiple_of(p) {
        return Err(Error::NotPIntegral { p });
    }
    let num = bigint_mod(r.numer(), m);
    let inv = mod_inverse(den, p, k)?;
    Ok(((num as u128 * inv as u128) % m as u128) as u64)
}

/// A p-integral value `p^valuation * unit` truncated to precision `p^k`.
///
/// The unit is known modulo `p^k`; the value it represents is therefore known
/// modulo `p^(k + valuation)`. Exact zero carries `valuation == None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicResidue {
    modulus: Modulus,
    valuation: Option<u32>,
    unit: u64,
}

impl PadicResidue {
    pub fn zero(modulus: Modulus) -> Self {
        PadicResidue {
            modulus,
            valuation: None,
            unit: 0,
        }
    }

    pub fn one(modulus: Modulus) -> Self {
        PadicResidue {
            modulus,
            valuation: Some(0),
            unit: 1 % modulus.value(),
        }
    }

    pub fn from_parts(modulus: Modulus, valuation: u32, unit: u64) -> Self {
        debug_assert!(!unit.is_multiple_of(modulus.p()));
        PadicResidue {
            modulus,
            valuation: Some(valuation),
            unit: modulus.reduce(unit),
        }
    }

    pub fn from_i64(modulus: Modulus, n: i64) -> Self {
        if n == 0 {
            return PadicResidue::zero(modulus);
        }
        let p = modulus.p() as i64;
        let mut n = n;
        let mut v = 0;
        while n % p == 0 {
            n /= p;
            v += 1;
        }
        PadicResidue::from_parts(modulus, v, modulus.from_i64(n))
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `None` for exact zero.
    pub fn valuation(&self) -> Option<u32> {
        self.valuation
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self.valuation, other.valuation) {
            (Some(a), Some(b)) => PadicResidue {
                modulus: self.modulus,
                valuation: Some(a + b),
                unit: self.modulus.mul(self.unit, other.unit),
            },
            _ => PadicResidue::zero(self.modulus),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        match self.valuation {
            Some(v) => PadicResidue {
                modulus: self.modulus,
                valuation: Some(v * e),
                unit: self.modulus.pow(self.unit, e as u64),
            },
            None if e == 0 => PadicResidue::one(self.modulus),
            None => *self,
        }
    }

    /// Quotient; fails unless `v_p(other) <= v_p(self)`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let p = self.modulus.p();
        let Some(vb) = other.valuation else {
            return Err(Error::NotInvertible {
                value: 0,
                p,
                precision: self.modulus.precision(),
            });
        };
        match self.valuation {
            None => Ok(*self),
            Some(va) if va < vb => Err(Error::NotPIntegral { p }),
            Some(va) => Ok(PadicResidue {
                modulus: self.modulus,
                valuation: Some(va - vb),
                unit: self.modulus.mul(self.unit, self.modulus.inv(other.unit)?),
            }),
        }
    }

    pub fn neg(&self) -> Self {
        PadicResidue {
            unit: self.modulus.neg(self.unit),
            ..*self
        }
    }

    /// The represented value as an ordinary residue in `[0, p^k)`.
    pub fn to_residue(&self) -> u64 {
        match self.valuation {
            Some(v) if v < self.modulus.precision() => self
                .modulus
                .mul(self.modulus.pow(self.modulus.p(), v as u64), self.unit),
            _ => 0,
        }
    }
}

/// `n!` split as `p^valuation * unit` with the unit reduced mod `p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PadicFactorial {
    pub n: u64,
    pub valuation: u64,
    pub unit: u64,
}

/// Factorials `0!, 1!, ..., n!` modulo `p^k` with valuations, built in one
/// pass of `n` modular multiplications and shared read-only afterwards.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    modulus: Modulus,
    valuations: Vec<u64>,
    units: Vec<u64>,
}

impl FactorialTable {
    pub fn new(modulus: Modulus, n_max: u64) -> Self {
        let p = modulus.p();
        let mut valuations = Vec::with_capacity(n_max as usize + 1);
        let mut units = Vec::with_capacity(n_max as usize + 1);
        let (mut v, mut u) = (0u64, 1 % modulus.value());
        valuations.push(v);
        units.push(u);
        for i in 1..=n_max {
            let mut c = i;
            while c % p == 0 {
                c /= p;
                v += 1;
            }
            u = modulus.mul(u, c);
            valuations.push(v);
            units.push(u);
        }
        FactorialTable {
            modulus,
            valuations,
            units,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn n_max(&self) -> u64 {
        self.units.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> PadicFactorial {
        let i = n as usize;
        assert!(
            i < self.units.len(),
            "factorial table covers only 0..={}",
            self.n_max()
        );
        PadicFactorial {
            n,
            valuation: self.valuations[i],
            unit: self.units[i],
        }
    }

    pub fn factorial(&self, n: u64) -> PadicResidue {
        let f = self.get(n);
        PadicResidue::from_parts(self.modulus, f.valuation as u32, f.unit)
    }

    /// `binom(a, b)` for `0 <= b <= a <= n_max`.
    pub fn binomial(&self, a: u64, b: u64) -> PadicResidue {
        assert!(b <= a, "binomial_padic requires b <= a");
        let (fa, fb, fc) = (self.get(a), self.get(b), self.get(a - b));
        let m = self.modulus;
        let den = m.mul(fb.unit, fc.unit);
        let inv = m.inv(den).expect("factorial units are coprime to p");
        PadicResidue::from_parts(
            m,
            (fa.valuation - fb.valuation - fc.valuation) as u32,
            m.mul(fa.unit, inv),
        )
    }

    /// `(4k)! / k!^4`.
    pub fn multinomial4(&self, k: u64) -> PadicResidue {
        let m = self.modulus;
        let (top, part) = (self.get(4 * k), self.get(k));
        let den = m.pow(part.unit, 4);
        PadicResidue::from_parts(
            m,
            (top.valuation - 4 * part.valuation) as u32,
            m.mul(top.unit, m.inv(den).expect("unit")),
        )
    }
}

pub fn factorial_padic(n: u64, p: u64, k: u32) -> Result<PadicFactorial> {
    Ok(FactorialTable::new(Modulus::new(p, k)?, n).get(n))
}

pub fn binomial_padic(a: u64, b: u64, p: u64, k: u32) -> Result<PadicResidue> {
    Ok(FactorialTable::new(Modulus::new(p, k)?, a).binomial(a, b))
}
