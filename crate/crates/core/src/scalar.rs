//! Fixed-precision p-adic scalars.
//!
//! A [`PadicScalar`] stores `p^v * u` with `u` a unit modulo `p^d`. The
//! relative precision `d` is the cap `N` of its [`Zp`] ring handle unless
//! cancellation in a sum has used up digits. Values whose digits
//! all vanish up to the working absolute precision are kept as
//! "below precision" together with the absolute floor they are known to, so
//! that norms degrade to upper bounds instead of claiming an exact zero.

use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Square root of `c` modulo an odd prime `p` (Tonelli-Shanks).
pub(crate) fn sqrt_mod_prime(c: u64, p: u64) -> Option<u64> {
    let c = c % p;
    if c == 0 {
        return Some(0);
    }
    if pow_mod(c, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c_pow = pow_mod(z, q, p);
    let mut t = pow_mod(c, q, p);
    let mut r = pow_mod(c, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c_pow, 1u64 << (m - i - 1), p);
        m = i;
        c_pow = mul_mod(b, b, p);
        t = mul_mod(t, c_pow, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// `v_p(n!)` by Legendre's formula.
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

/// Splits `x = p^k * rest` with `rest` prime to `p`. `x` must be nonzero.
fn strip_prime(x: &BigUint, p: &BigUint) -> (i64, BigUint) {
    let mut k = 0;
    let mut rest = x.clone();
    loop {
        let (q, r) = rest.div_rem(p);
        if !r.is_zero() {
            return (k, rest);
        }
        rest = q;
        k += 1;
    }
}

struct RingData {
    prime: u64,
    precision: u32,
    prime_big: BigUint,
    /// `p^0, ..., p^N`.
    powers: Vec<BigUint>,
}

/// Handle on `Z_p` (and its fraction field) at a fixed relative precision.
///
/// Cloning is cheap; all scalars created from a handle share its power table.
#[derive(Clone)]
pub struct Zp(Arc<RingData>);

impl PartialEq for Zp {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.prime == other.0.prime && self.0.precision == other.0.precision)
    }
}

impl Eq for Zp {}

impl fmt::Debug for Zp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{} (N = {})", self.0.prime, self.0.precision)
    }
}

impl Zp {
    pub fn new(prime: u64, precision: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        if precision == 0 {
            return Err(Error::InvalidPrecision);
        }
        let prime_big = BigUint::from(prime);
        let mut powers = Vec::with_capacity(precision as usize + 1);
        powers.push(BigUint::one());
        for k in 1..=precision as usize {
            let next = &powers[k - 1] * &prime_big;
            powers.push(next);
        }
        Ok(Zp(Arc::new(RingData { prime, precision, prime_big, powers })))
    }

    pub fn prime(&self) -> u64 {
        self.0.prime
    }

    pub fn precision(&self) -> u32 {
        self.0.precision
    }

    /// `p^N`.
    pub fn modulus(&self) -> &BigUint {
        &self.0.powers[self.0.precision as usize]
    }

    fn power(&self, k: u32) -> &BigUint {
        &self.0.powers[k as usize]
    }

    fn n(&self) -> i64 {
        self.0.precision as i64
    }

    /// The canonical zero: below precision with floor `N`.
    pub fn zero(&self) -> PadicScalar {
        self.below(self.n())
    }

    pub fn one(&self) -> PadicScalar {
        self.unit(0, BigUint::one())
    }

    /// A value known only to vanish modulo `p^floor`.
    pub fn below(&self, floor: i64) -> PadicScalar {
        PadicScalar { ring: self.clone(), digits: Digits::Below(floor) }
    }

    fn unit(&self, valuation: i64, mantissa: BigUint) -> PadicScalar {
        self.unit_prec(valuation, mantissa, self.0.precision)
    }

    fn unit_prec(&self, valuation: i64, mantissa: BigUint, prec: u32) -> PadicScalar {
        let mantissa = mantissa % self.power(prec);
        PadicScalar { ring: self.clone(), digits: Digits::Value { valuation, mantissa, prec } }
    }

    pub fn from_integer(&self, n: i64) -> PadicScalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> PadicScalar {
        self.from_parts(0, n)
    }

    /// `p^valuation * unit`, where `unit` may be any integer: factors of `p`
    /// are absorbed into the valuation and the rest is reduced mod `p^N`.
    pub fn from_parts(&self, valuation: i64, unit: &BigInt) -> PadicScalar {
        if unit.is_zero() {
            return self.below(valuation + self.n());
        }
        let (k, rest) = strip_prime(unit.magnitude(), &self.0.prime_big);
        let m = BigInt::from(self.modulus().clone());
        let signed = if unit.sign() == Sign::Minus { -BigInt::from(rest) } else { BigInt::from(rest) };
        let mantissa = signed.mod_floor(&m).to_biguint().expect("non-negative after mod_floor");
        self.unit(valuation + k, mantissa)
    }

    /// `num / den` as an element of `Q_p`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<PadicScalar> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let d = self.from_integer(den);
        Ok(&self.from_integer(num) * &d.recip()?)
    }

    /// Teichmüller representative of a nonzero residue class mod `p`.
    pub fn teichmuller(&self, residue: u64) -> Result<PadicScalar> {
        if residue.is_multiple_of(self.prime()) {
            return Err(Error::NotAUnit);
        }
        let m = self.modulus();
        let p = BigUint::from(self.prime());
        let mut w = BigUint::from(residue % self.prime());
        for _ in 0..self.precision() {
            w = w.modpow(&p, m);
        }
        Ok(self.unit(0, w))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Digits {
    Below(i64),
    /// `mantissa` is a unit known modulo `p^prec`, `1 <= prec <= N`.
    Value { valuation: i64, mantissa: BigUint, prec: u32 },
}

/// An element of `Q_p` known to finitely many `p`-adic digits.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicScalar {
    ring: Zp,
    digits: Digits,
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.digits {
            Digits::Below(floor) => write!(f, "O({}^{})", self.ring.prime(), floor),
            Digits::Value { valuation, mantissa, prec } => {
                write!(f, "{}^{} * {}", self.ring.prime(), valuation, mantissa)?;
                if *prec < self.ring.0.precision {
                    write!(f, " + O({}^{})", self.ring.prime(), valuation + *prec as i64)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for PadicScalar {
    /// Integral values print as their balanced representative modulo the
    /// absolute precision, fractional ones as `u/p^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.ring.prime();
        match &self.digits {
            Digits::Below(floor) => write!(f, "O({}^{})", p, floor),
            Digits::Value { valuation, mantissa, .. } if *valuation < 0 => {
                write!(f, "{}/{}^{}", mantissa, p, -valuation)
            }
            Digits::Value { .. } => write!(f, "{}", self.balanced().expect("integral")),
        }
    }
}

impl PadicScalar {
    /// Convenience constructor matching the free-standing form `n in Z_p at precision N`.
    pub fn from_integer(n: i64, prime: u64, precision: u32) -> Result<Self> {
        Ok(Zp::new(prime, precision)?.from_integer(n))
    }

    pub fn ring(&self) -> &Zp {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }

    pub fn precision(&self) -> u32 {
        self.ring.precision()
    }

    /// `None` when the value is below precision.
    pub fn valuation(&self) -> Option<i64> {
        match &self.digits {
            Digits::Below(_) => None,
            Digits::Value { valuation, .. } => Some(*valuation),
        }
    }

    pub fn mantissa(&self) -> Option<&BigUint> {
        match &self.digits {
            Digits::Below(_) => None,
            Digits::Value { mantissa, .. } => Some(mantissa),
        }
    }

    /// Number of known digits past the valuation; at most `N`, lower after
    /// cancellation.
    pub fn relative_precision(&self) -> Option<u32> {
        match &self.digits {
            Digits::Below(_) => None,
            Digits::Value { prec, .. } => Some(*prec),
        }
    }

    /// Forgets all but the first `digits` known digits.
    pub fn truncated(&self, digits: u32) -> Self {
        match &self.digits {
            Digits::Value { valuation, mantissa, prec } if digits < *prec => {
                if digits == 0 {
                    self.ring.below(*valuation)
                } else {
                    self.ring.unit_prec(*valuation, mantissa.clone(), digits)
                }
            }
            _ => self.clone(),
        }
    }

    pub fn is_below_precision(&self) -> bool {
        matches!(self.digits, Digits::Below(_))
    }

    /// Floor `F` of a below-precision value.
    pub fn below_floor(&self) -> Option<i64> {
        match self.digits {
            Digits::Below(floor) => Some(floor),
            Digits::Value { .. } => None,
        }
    }

    /// Below precision with a floor of at least `N`, the same as `zero()`
    /// as far as any integral computation can tell.
    pub fn is_negligible(&self) -> bool {
        matches!(self.digits, Digits::Below(floor) if floor >= self.ring.n())
    }

    /// Exponent `k` such that the value is known modulo `p^k`.
    pub fn absolute_precision(&self) -> i64 {
        match &self.digits {
            Digits::Below(floor) => *floor,
            Digits::Value { valuation, prec, .. } => valuation + *prec as i64,
        }
    }

    /// Lowest digit position that may be nonzero.
    fn low(&self) -> i64 {
        match &self.digits {
            Digits::Below(floor) => *floor,
            Digits::Value { valuation, .. } => *valuation,
        }
    }

    /// Whether the value lies in `Z_p` as far as the stored digits tell.
    pub fn is_integral(&self) -> bool {
        self.low() >= 0
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    pub fn norm(&self) -> NormValue {
        match &self.digits {
            Digits::Below(floor) => NormValue::upper_bound(*floor),
            Digits::Value { valuation, .. } => NormValue::exact(*valuation),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.prime(), self.precision(), other.prime(), other.precision()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let cap = min(self.absolute_precision(), other.absolute_precision());
        let lo = min(self.low(), other.low());
        if cap <= lo {
            return self.ring.below(cap);
        }
        // A nonzero result needs a genuine value at `lo`, so `cap - lo <= N`;
        // digits lost to cancellation shrink the relative precision.
        let width = (cap - lo) as u32;
        let m = self.ring.power(width);
        let shifted = |s: &Self| -> BigUint {
            match &s.digits {
                Digits::Below(_) => BigUint::zero(),
                Digits::Value { valuation, mantissa, .. } => {
                    let shift = valuation - lo;
                    if shift >= width as i64 {
                        BigUint::zero()
                    } else {
                        (mantissa * self.ring.power(shift as u32)) % m
                    }
                }
            }
        };
        let sum = (shifted(self) + shifted(other)) % m;
        if sum.is_zero() {
            return self.ring.below(cap);
        }
        let (w, mantissa) = strip_prime(&sum, &self.ring.0.prime_big);
        self.ring.unit_prec(lo + w, mantissa, width - w as u32)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        match (&self.digits, &other.digits) {
            (
                Digits::Value { valuation: va, mantissa: ua, prec: pa },
                Digits::Value { valuation: vb, mantissa: ub, prec: pb },
            ) => self.ring.unit_prec(va + vb, ua * ub, min(*pa, *pb)),
            // O(p^F) * p^v u is known modulo p^(F+v), likewise for two bounds.
            _ => self.ring.below(self.low() + other.low()),
        }
    }

    /// Inverse of a unit of `Z_p`.
    pub fn invert(&self) -> Result<Self> {
        match &self.digits {
            Digits::Value { valuation: 0, .. } => self.recip(),
            _ => Err(Error::NotAUnit),
        }
    }

    /// Inverse in `Q_p` of a value that is not below precision.
    pub fn recip(&self) -> Result<Self> {
        match &self.digits {
            Digits::Below(_) => Err(Error::NotAUnit),
            Digits::Value { valuation, mantissa, prec } => {
                let inv = mod_inverse(mantissa, self.ring.power(*prec)).ok_or(Error::NotAUnit)?;
                Ok(self.ring.unit_prec(-valuation, inv, *prec))
            }
        }
    }

    /// Multiplies by `p^k` (k may be negative).
    pub fn shift(&self, k: i64) -> Self {
        match &self.digits {
            Digits::Below(floor) => self.ring.below(floor + k),
            Digits::Value { valuation, mantissa, prec } => self.ring.unit_prec(valuation + k, mantissa.clone(), *prec),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Representative of an integral value modulo `p^k`, built from the
    /// stored digits (digits past the absolute precision read as zero).
    pub fn residue(&self, k: u32) -> Option<BigUint> {
        if !self.is_integral() {
            return None;
        }
        let p = BigUint::from(self.prime());
        let m = p.pow(k);
        Some(match &self.digits {
            Digits::Below(_) => BigUint::zero(),
            Digits::Value { valuation, mantissa, .. } => {
                if *valuation >= k as i64 {
                    BigUint::zero()
                } else {
                    (mantissa * p.pow(*valuation as u32)) % m
                }
            }
        })
    }

    /// Balanced integer representative modulo `p^abs_precision`.
    pub fn balanced(&self) -> Option<BigInt> {
        if !self.is_integral() {
            return None;
        }
        let k = max(self.absolute_precision(), 0) as u32;
        let r = BigInt::from(self.residue(k)?);
        let m = BigInt::from(BigUint::from(self.prime()).pow(k));
        Some(if &r * 2 > m { r - m } else { r })
    }

    /// Whether `self` and the integer `n` agree modulo `p^k`.
    pub fn congruent_to(&self, n: &BigInt, k: u32) -> bool {
        let m = BigInt::from(BigUint::from(self.prime()).pow(k));
        match self.residue(k) {
            Some(r) => BigInt::from(r) == n.mod_floor(&m),
            None => false,
        }
    }

    /// Square root of a unit by Hensel lifting the smallest residue root.
    pub fn hensel_sqrt(&self) -> Result<Self> {
        let p = self.prime();
        if p == 2 {
            return Err(Error::UnsupportedPrime);
        }
        let (mantissa, prec) = match &self.digits {
            Digits::Value { valuation: 0, mantissa, prec } => (mantissa, *prec),
            _ => return Err(Error::NotAUnit),
        };
        let c0 = (mantissa % p).to_u64().expect("residue fits");
        let r0 = sqrt_mod_prime(c0, p).ok_or(Error::NoSquareRoot(p))?;
        let r0 = min(r0, p - r0);
        let m = self.ring.power(prec);
        let two = BigUint::from(2u32);
        let mut r = BigUint::from(r0);
        // Newton: r <- r - (r^2 - c) / (2r); each step doubles the known digits.
        for _ in 0..64 {
            let sq = (&r * &r) % m;
            if &sq == mantissa {
                break;
            }
            let diff = (sq + m - mantissa) % m;
            let inv = mod_inverse(&((&two * &r) % m), m).ok_or(Error::NotAUnit)?;
            r = (&r + m - (diff * inv) % m) % m;
        }
        Ok(self.ring.unit_prec(0, r, prec))
    }

    /// `binom(self, n)` for `self` in `Z_p`.
    pub fn binomial(&self, n: u64) -> Result<Self> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let mut numerator = self.ring.one();
        for k in 0..n {
            let term = self.add_unchecked(&self.ring.from_integer(-(k as i64)));
            numerator = &numerator * &term;
        }
        numerator.div_factorial(n)
    }

    /// Exact division by `n!`; the caller guarantees divisibility.
    pub fn div_factorial(&self, n: u64) -> Result<Self> {
        let p = self.prime();
        let w = factorial_valuation(n, p) as i64;
        if w >= self.ring.n() {
            return Err(Error::PrecisionLoss(format!(
                "v_{}({}!) = {} reaches the working precision {}",
                p,
                n,
                w,
                self.ring.n()
            )));
        }
        match &self.digits {
            Digits::Below(floor) => {
                if floor - w < 0 {
                    return Err(Error::PrecisionLoss(format!(
                        "dividing O({}^{}) by {}! leaves no known digits",
                        p, floor, n
                    )));
                }
                Ok(self.ring.below(floor - w))
            }
            Digits::Value { valuation, mantissa, prec } => {
                if *valuation < w {
                    return Err(Error::NotIntegral);
                }
                let m = self.ring.power(*prec);
                let mut unit_part = BigUint::one();
                for k in 1..=n {
                    let (_, rest) = strip_prime(&BigUint::from(k), &self.ring.0.prime_big);
                    unit_part = (unit_part * rest) % m;
                }
                let inv = mod_inverse(&unit_part, m).expect("prime-to-p part is a unit");
                Ok(self.ring.unit_prec(valuation - w, mantissa * inv, *prec))
            }
        }
    }
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let egcd = a.extended_gcd(&m);
    if !egcd.gcd.is_one() {
        return None;
    }
    egcd.x.mod_floor(&m).to_biguint()
}

impl Add for &PadicScalar {
    type Output = PadicScalar;

    /// Panics if the operands come from different rings; use
    /// [`PadicScalar::checked_add`] on unvalidated input.
    fn add(self, other: &PadicScalar) -> PadicScalar {
        self.checked_add(other).expect("ring mismatch")
    }
}

impl Sub for &PadicScalar {
    type Output = PadicScalar;

    fn sub(self, other: &PadicScalar) -> PadicScalar {
        self.checked_sub(other).expect("ring mismatch")
    }
}

impl Mul for &PadicScalar {
    type Output = PadicScalar;

    fn mul(self, other: &PadicScalar) -> PadicScalar {
        self.checked_mul(other).expect("ring mismatch")
    }
}

impl Neg for &PadicScalar {
    type Output = PadicScalar;

    fn neg(self) -> PadicScalar {
        match &self.digits {
            Digits::Below(_) => self.clone(),
            Digits::Value { valuation, mantissa, prec } => {
                self.ring.unit_prec(*valuation, self.ring.power(*prec) - mantissa, *prec)
            }
        }
    }
}

/// Mahler coefficients `c_n = (Δ^n f)(0)` of the sampled values `f(0), ..., f(n_max)`.
pub fn mahler_coefficients(values: &[PadicScalar]) -> Result<Vec<PadicScalar>> {
    if let Some(first) = values.first() {
        for v in values {
            first.check_ring(v)?;
        }
    }
    let mut row = values.to_vec();
    let mut coeffs = Vec::with_capacity(values.len());
    while let Some(head) = row.first() {
        coeffs.push(head.clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    Ok(coeffs)
}

/// Integer binomial coefficient.
pub fn binomial_integer(k: u64, n: u64) -> BigUint {
    if n > k {
        return BigUint::zero();
    }
    let n = min(n, k - n);
    let mut acc = BigUint::one();
    for i in 0..n {
        acc = acc * BigUint::from(k - i) / BigUint::from(i + 1);
    }
    acc
}

/// `sum_n c_n binom(k, n)`, the Mahler series evaluated at a natural number.
pub fn mahler_reconstruct(coeffs: &[PadicScalar], k: u64) -> Option<PadicScalar> {
    let ring = coeffs.first()?.ring.clone();
    let mut acc = ring.zero();
    for (n, c) in coeffs.iter().enumerate().take(k as usize + 1) {
        let b = ring.from_bigint(&BigInt::from(binomial_integer(k, n as u64)));
        acc = &acc + &(c * &b);
    }
    Some(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NormKind {
    Exact,
    UpperBound,
}

/// A norm value `p^{-exponent}`, either exact or an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormValue {
    pub kind: NormKind,
    pub exponent: i64,
}

impl NormValue {
    pub fn exact(exponent: i64) -> Self {
        NormValue { kind: NormKind::Exact, exponent }
    }

    pub fn upper_bound(exponent: i64) -> Self {
        NormValue { kind: NormKind::UpperBound, exponent }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == NormKind::Exact
    }

    /// Product of norms; exact only if both factors are.
    pub fn times(self, other: NormValue) -> NormValue {
        let kind = if self.is_exact() && other.is_exact() { NormKind::Exact } else { NormKind::UpperBound };
        NormValue { kind, exponent: self.exponent + other.exponent }
    }

    /// Maximum of two norms. The result is exact only when an exact value
    /// dominates every upper bound.
    pub fn max(self, other: NormValue) -> NormValue {
        match (self.kind, other.kind) {
            (NormKind::Exact, NormKind::Exact) => NormValue::exact(min(self.exponent, other.exponent)),
            (NormKind::UpperBound, NormKind::UpperBound) => {
                NormValue::upper_bound(min(self.exponent, other.exponent))
            }
            _ => {
                let (e, b) = if self.is_exact() { (self, other) } else { (other, self) };
                if e.exponent <= b.exponent {
                    e
                } else {
                    b
                }
            }
        }
    }

    /// `self <= other`, comparing the largest value `self` may take with
    /// the value (or bound) `other` stands for.
    pub fn at_most(&self, other: &NormValue) -> bool {
        self.exponent >= other.exponent
    }

    /// Human-readable form, e.g. `1`, `1/2`, `<= 5^-32`.
    pub fn display(&self, prime: u64) -> String {
        let value = if self.exponent == 0 {
            "1".to_string()
        } else {
            let mag = self.exponent.unsigned_abs();
            let power = if mag <= 20 { (prime as u128).checked_pow(mag as u32) } else { None };
            match (power, self.exponent > 0) {
                (Some(v), true) if v <= 1_000_000 => format!("1/{}", v),
                (Some(v), false) if v <= 1_000_000 => format!("{}", v),
                _ => format!("{}^{}", prime, -self.exponent),
            }
        };
        match self.kind {
            NormKind::Exact => value,
            NormKind::UpperBound => format!("<= {}", value),
        }
    }
}

/// Fold of [`NormValue::max`] over an iterator; `None` for an empty iterator.
pub fn max_norm<I: IntoIterator<Item = NormValue>>(norms: I) -> Option<NormValue> {
    norms.into_iter().reduce(NormValue::max)
}

/// `|n|_p` as a norm exponent: `v_p(n)`.
pub fn integer_valuation(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    Some(strip_prime(&n.abs().to_biguint().expect("abs"), &BigUint::from(p)).0)
}
