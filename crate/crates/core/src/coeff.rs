//! Exact coefficient arithmetic: rationals with a tracked `p`-adic valuation,
//! the localisation `Z_(p)` and the residue field `F_p`.
//!
//! The fraction field `K` is modelled by `Q` with the `p`-adic valuation and
//! its valuation ring `R` by `Z` localised at `p`. The uniformiser is the
//! prime itself.

use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division primality test; primes used here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= p {
        if p % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// A `p`-adic valuation: an integer or `+∞` (for zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
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

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// An exact rational number `p^e * a / b` with `a`, `b` prime to `p`.
///
/// `a / b` is kept in lowest terms with `b > 0`; zero is `0 / 1` with `e = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalRational {
    prime: u64,
    exponent: i64,
    num: BigInt,
    den: BigInt,
}

/// Removes every factor `p` from `n`, returning the multiplicity.
fn strip_prime(n: &mut BigInt, p: &BigInt) -> i64 {
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

impl LocalRational {
    /// Builds `num / den`, rejecting denominators divisible by `p`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>, prime: u64) -> Result<Self> {
        check_prime(prime)?;
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let den_reduced = if g.is_zero() { den.clone() } else { &den / &g };
        if !num.is_zero() && (&den_reduced % BigInt::from(prime)).is_zero() {
            return Err(Error::DenominatorDivisibleByPrime(prime));
        }
        Ok(Self::normalized(prime, 0, num, den))
    }

    /// Builds `p^k * num / den` for any integer `k`; the result may have
    /// negative valuation.
    pub fn with_p_power(k: i64, num: impl Into<BigInt>, den: impl Into<BigInt>, prime: u64) -> Result<Self> {
        check_prime(prime)?;
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(prime, k, num.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>, prime: u64) -> Result<Self> {
        Self::new(n, 1, prime)
    }

    /// `p^k`.
    pub fn p_power(k: i64, prime: u64) -> Result<Self> {
        Self::with_p_power(k, 1, 1, prime)
    }

    pub fn zero(prime: u64) -> Result<Self> {
        Self::from_integer(0, prime)
    }

    pub fn one(prime: u64) -> Result<Self> {
        Self::from_integer(1, prime)
    }

    // Internal constructor; `prime` is assumed prime and `den != 0`.
    fn normalized(prime: u64, exponent: i64, mut num: BigInt, mut den: BigInt) -> Self {
        if num.is_zero() {
            return LocalRational {
                prime,
                exponent: 0,
                num,
                den: BigInt::one(),
            };
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        let pb = BigInt::from(prime);
        let up = strip_prime(&mut num, &pb);
        let down = strip_prime(&mut den, &pb);
        LocalRational {
            prime,
            exponent: exponent + up - down,
            num,
            den,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.num.is_one() && self.den.is_one()
    }

    /// The exponent of `p`; `+∞` for zero.
    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(self.exponent)
        }
    }

    /// True when the valuation is non-negative (an element of `Z_(p)`).
    pub fn is_integral(&self) -> bool {
        self.is_zero() || self.exponent >= 0
    }

    /// The `p`-free part `a / b`.
    pub fn unit_part(&self) -> Self {
        LocalRational {
            prime: self.prime,
            exponent: 0,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// Numerator of the value in lowest terms (sign included).
    pub fn numerator(&self) -> BigInt {
        if self.exponent > 0 {
            &self.num * BigInt::from(self.prime).pow(self.exponent as u32)
        } else {
            self.num.clone()
        }
    }

    /// Positive denominator of the value in lowest terms.
    pub fn denominator(&self) -> BigInt {
        if self.exponent < 0 {
            &self.den * BigInt::from(self.prime).pow((-self.exponent) as u32)
        } else {
            self.den.clone()
        }
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let m = self.exponent.min(other.exponent);
        let pb = BigInt::from(self.prime);
        let a = &self.num * &other.den * pb.pow((self.exponent - m) as u32);
        let b = &other.num * &self.den * pb.pow((other.exponent - m) as u32);
        Self::normalized(self.prime, m, a + b, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        LocalRational {
            prime: self.prime,
            exponent: self.exponent,
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::normalized(self.prime, 0, BigInt::zero(), BigInt::one());
        }
        // Unit parts are p-free, so only the gcd needs fixing.
        Self::normalized(
            self.prime,
            self.exponent + other.exponent,
            &self.num * &other.num,
            &self.den * &other.den,
        )
    }

    /// Multiplicative inverse in `Q`; may have negative valuation.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(
            self.prime,
            -self.exponent,
            self.den.clone(),
            self.num.clone(),
        ))
    }

    /// Inverse that must stay inside `Z_(p)`: only units qualify.
    pub fn inv_integral(&self) -> Result<Self> {
        let inv = self.inv()?;
        if inv.is_integral() {
            Ok(inv)
        } else {
            Err(Error::NegativeValuation)
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.exponent += k;
        out
    }

    /// The image in `F_p` of an element of `Z_(p)`.
    pub fn residue(&self) -> Result<ResidueElement> {
        if self.is_zero() {
            return Ok(ResidueElement::zero(self.prime));
        }
        if self.exponent < 0 {
            return Err(Error::NegativeValuation);
        }
        if self.exponent > 0 {
            return Ok(ResidueElement::zero(self.prime));
        }
        let pb = BigInt::from(self.prime);
        let n = self.num.mod_floor(&pb).to_u64().unwrap_or(0);
        let d = self.den.mod_floor(&pb).to_u64().unwrap_or(0);
        let n = ResidueElement::new_unchecked(n, self.prime);
        let d = ResidueElement::new_unchecked(d, self.prime);
        n.mul(&d.inv()?)
    }
}

impl fmt::Debug for LocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (p={})", self, self.prime)
    }
}

impl fmt::Display for LocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator();
        let den = self.denominator();
        if den.is_one() {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

/// An element of the residue field `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueElement {
    value: u64,
    prime: u64,
}

impl ResidueElement {
    pub fn new(value: i64, prime: u64) -> Result<Self> {
        check_prime(prime)?;
        let v = (value as i128).rem_euclid(prime as i128) as u64;
        Ok(ResidueElement { value: v, prime })
    }

    pub(crate) fn new_unchecked(value: u64, prime: u64) -> Self {
        ResidueElement {
            value: value % prime,
            prime,
        }
    }

    pub fn zero(prime: u64) -> Self {
        ResidueElement { value: 0, prime }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        let s = (self.value as u128 + other.value as u128) % self.prime as u128;
        ResidueElement {
            value: s as u64,
            prime: self.prime,
        }
    }

    pub fn neg(&self) -> Self {
        ResidueElement {
            value: if self.value == 0 { 0 } else { self.prime - self.value },
            prime: self.prime,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let s = (self.value as u128 * other.value as u128) % self.prime as u128;
        ResidueElement {
            value: s as u64,
            prime: self.prime,
        }
    }

    /// Inverse via the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.prime as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(ResidueElement {
            value: t0.rem_euclid(self.prime as i128) as u64,
            prime: self.prime,
        })
    }
}

impl fmt::Debug for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.prime)
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Which coefficient domain an algebra is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientMode {
    /// `Q` with the `p`-adic valuation (and its valuation ring).
    LocalField,
    /// The residue field `F_p`.
    ResidueField,
}

/// Ring context shared by the polynomial and Gröbner machinery.
///
/// Besides the ring operations, a coefficient ring tells the Gröbner engine
/// when one leading coefficient divides another and how to form the lcm of
/// two coefficients. Over a field every nonzero element divides every other;
/// over `Z_(p)` divisibility is comparison of valuations.
pub trait CoeffRing: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + core::hash::Hash + Send + Sync;

    fn prime(&self) -> u64;
    fn mode(&self) -> CoefficientMode;
    fn is_field(&self) -> bool;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// `a / b` when `b` divides `a` in this ring.
    fn checked_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// A unit `u` such that `u * a` is the canonical associate of `a`
    /// (`1` over a field, `p^v` over `Z_(p)`).
    fn normalizing_unit(&self, a: &Self::Elem) -> Self::Elem;

    /// `(s, t)` with `s * a = t * b` a least common multiple of `a` and `b`.
    fn lcm_cofactors(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Division with a canonical remainder: `a = q * b + r`. Over a field the
    /// remainder is zero; over `Z_(p)` it is the least non-negative integer
    /// representative of `a` modulo the ideal generated by `b`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        match self.checked_div(a, b) {
            Some(q) => (q, self.zero()),
            None => (self.zero(), a.clone()),
        }
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }
}

/// The residue field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn elem(&self, v: i64) -> ResidueElement {
        ResidueElement::new_unchecked((v as i128).rem_euclid(self.p as i128) as u64, self.p)
    }
}

impl CoeffRing for PrimeField {
    type Elem = ResidueElement;

    fn prime(&self) -> u64 {
        self.p
    }
    fn mode(&self) -> CoefficientMode {
        CoefficientMode::ResidueField
    }
    fn is_field(&self) -> bool {
        true
    }
    fn zero(&self) -> ResidueElement {
        ResidueElement::zero(self.p)
    }
    fn one(&self) -> ResidueElement {
        ResidueElement::new_unchecked(1, self.p)
    }
    fn from_int(&self, n: &BigInt) -> ResidueElement {
        let pb = BigInt::from(self.p);
        ResidueElement::new_unchecked(n.mod_floor(&pb).to_u64().unwrap_or(0), self.p)
    }
    fn is_zero(&self, a: &ResidueElement) -> bool {
        a.value == 0
    }
    fn add(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        a.add_unchecked(b)
    }
    fn neg(&self, a: &ResidueElement) -> ResidueElement {
        ResidueElement::neg(a)
    }
    fn mul(&self, a: &ResidueElement, b: &ResidueElement) -> ResidueElement {
        a.mul_unchecked(b)
    }
    fn checked_div(&self, a: &ResidueElement, b: &ResidueElement) -> Option<ResidueElement> {
        b.inv().ok().map(|bi| a.mul_unchecked(&bi))
    }
    fn normalizing_unit(&self, a: &ResidueElement) -> ResidueElement {
        a.inv().unwrap_or_else(|_| self.one())
    }
    fn lcm_cofactors(&self, a: &ResidueElement, b: &ResidueElement) -> (ResidueElement, ResidueElement) {
        (self.normalizing_unit(a), self.normalizing_unit(b))
    }
}

/// `Q` viewed as a field, with valuations tracked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalField {
    p: u64,
}

impl RationalField {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(RationalField { p })
    }

    pub fn elem(&self, n: i64) -> LocalRational {
        LocalRational::normalized(self.p, 0, BigInt::from(n), BigInt::one())
    }

    pub fn p_power(&self, k: i64) -> LocalRational {
        LocalRational::normalized(self.p, k, BigInt::one(), BigInt::one())
    }
}

/// `Z` localised at `p`: a discrete valuation ring with uniformiser `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalIntegers {
    p: u64,
}

impl LocalIntegers {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(LocalIntegers { p })
    }

    pub fn p_power(&self, k: i64) -> LocalRational {
        LocalRational::normalized(self.p, k, BigInt::one(), BigInt::one())
    }
}

macro_rules! rational_ring_common {
    () => {
        type Elem = LocalRational;

        fn prime(&self) -> u64 {
            self.p
        }
        fn mode(&self) -> CoefficientMode {
            CoefficientMode::LocalField
        }
        fn zero(&self) -> LocalRational {
            LocalRational::normalized(self.p, 0, BigInt::zero(), BigInt::one())
        }
        fn one(&self) -> LocalRational {
            LocalRational::normalized(self.p, 0, BigInt::one(), BigInt::one())
        }
        fn from_int(&self, n: &BigInt) -> LocalRational {
            LocalRational::normalized(self.p, 0, n.clone(), BigInt::one())
        }
        fn is_zero(&self, a: &LocalRational) -> bool {
            a.is_zero()
        }
        fn add(&self, a: &LocalRational, b: &LocalRational) -> LocalRational {
            a.add_unchecked(b)
        }
        fn neg(&self, a: &LocalRational) -> LocalRational {
            a.neg()
        }
        fn mul(&self, a: &LocalRational, b: &LocalRational) -> LocalRational {
            a.mul_unchecked(b)
        }
    };
}

impl CoeffRing for RationalField {
    rational_ring_common!();

    fn is_field(&self) -> bool {
        true
    }
    fn checked_div(&self, a: &LocalRational, b: &LocalRational) -> Option<LocalRational> {
        b.inv().ok().map(|bi| a.mul_unchecked(&bi))
    }
    fn normalizing_unit(&self, a: &LocalRational) -> LocalRational {
        a.inv().unwrap_or_else(|_| self.one())
    }
    fn lcm_cofactors(&self, a: &LocalRational, b: &LocalRational) -> (LocalRational, LocalRational) {
        (self.normalizing_unit(a), self.normalizing_unit(b))
    }
}

impl CoeffRing for LocalIntegers {
    rational_ring_common!();

    fn is_field(&self) -> bool {
        false
    }
    fn checked_div(&self, a: &LocalRational, b: &LocalRational) -> Option<LocalRational> {
        if b.is_zero() {
            return None;
        }
        if a.valuation() < b.valuation() {
            return None;
        }
        b.inv().ok().map(|bi| a.mul_unchecked(&bi))
    }
    fn normalizing_unit(&self, a: &LocalRational) -> LocalRational {
        a.unit_part().inv().unwrap_or_else(|_| self.one())
    }
    fn div_rem(&self, a: &LocalRational, b: &LocalRational) -> (LocalRational, LocalRational) {
        if let Some(q) = self.checked_div(a, b) {
            return (q, self.zero());
        }
        let v = match b.valuation() {
            Valuation::Finite(v) if v > 0 && a.exponent >= 0 => v,
            _ => return (self.zero(), a.clone()),
        };
        let modulus = BigInt::from(self.p).pow(v as u32);
        let num = a.numerator().mod_floor(&modulus);
        let den = a.denominator().mod_floor(&modulus);
        let inv = mod_inverse(&den, &modulus);
        let r = self.from_int(&(num * inv).mod_floor(&modulus));
        let q = a.add_unchecked(&r.neg()).mul_unchecked(&b.inv().unwrap_or_else(|_| self.one()));
        (q, r)
    }
    fn lcm_cofactors(&self, a: &LocalRational, b: &LocalRational) -> (LocalRational, LocalRational) {
        let va = a.valuation().finite().unwrap_or(0);
        let vb = b.valuation().finite().unwrap_or(0);
        let l = self.p_power(va.max(vb));
        (
            l.mul_unchecked(&a.inv().unwrap_or_else(|_| self.one())),
            l.mul_unchecked(&b.inv().unwrap_or_else(|_| self.one())),
        )
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Parses the textual forms `a`, `a/b`, `p^k*a/b` (with `k >= 0`).
pub fn parse_local_rational(text: &str, prime: u64) -> Result<LocalRational> {
    let s = text.trim();
    let (k, rest) = if let Some(r) = s.strip_prefix("p^") {
        let (kpart, tail) = r.split_once('*').unwrap_or((r, "1"));
        let k: i64 = kpart
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(s.to_string()))?;
        (k, tail.trim())
    } else if s == "p" {
        (1, "1")
    } else {
        (0, s)
    };
    let (n, d) = rest.split_once('/').unwrap_or((rest, "1"));
    let n = BigInt::parse_bytes(n.trim().as_bytes(), 10).ok_or_else(|| Error::InvalidInput(s.to_string()))?;
    let d = BigInt::parse_bytes(d.trim().as_bytes(), 10).ok_or_else(|| Error::InvalidInput(s.to_string()))?;
    if d.sign() == Sign::NoSign {
        return Err(Error::DivisionByZero);
    }
    let base = LocalRational::new(n, d, prime)?;
    Ok(base.shift(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr(n: i64, d: i64, p: u64) -> LocalRational {
        LocalRational::new(n, d, p).unwrap()
    }

    #[test]
    fn valuation_reads_exponent() {
        let a = lr(49 * 3, 5, 7);
        assert_eq!(a.valuation(), Valuation::Finite(2));
        assert_eq!(LocalRational::zero(7).unwrap().valuation(), Valuation::Infinite);
    }

    #[test]
    fn denominator_divisible_by_p_rejected() {
        assert_eq!(
            LocalRational::new(1, 3, 3),
            Err(Error::DenominatorDivisibleByPrime(3))
        );
        // 3/3 reduces to 1 first
        assert!(LocalRational::new(3, 3, 3).unwrap().is_one());
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(LocalRational::new(1, 1, 6), Err(Error::NotPrime(6)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn residues() {
        assert_eq!(lr(3, 5, 7).residue().unwrap().value(), 2);
        assert_eq!(lr(7, 1, 7).residue().unwrap().value(), 0);
        assert_eq!(lr(1, 1, 7).residue().unwrap().value(), 1);
        let neg = LocalRational::p_power(-1, 7).unwrap();
        assert_eq!(neg.residue(), Err(Error::NegativeValuation));
    }

    #[test]
    fn arithmetic_examples() {
        let half = lr(1, 2, 5);
        assert!(half.add(&half).unwrap().is_one());
        let a = lr(3, 4, 5).shift(1);
        let b = lr(2, 7, 5).shift(1);
        assert_eq!(a.mul(&b).unwrap().valuation(), Valuation::Finite(2));
        let three = ResidueElement::new(3, 7).unwrap();
        assert_eq!(three.inv().unwrap().value(), 5);
        assert_eq!(ResidueElement::zero(7).inv(), Err(Error::DivisionByZero));
        assert_eq!(LocalRational::zero(7).unwrap().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn integral_inverse_only_for_units() {
        assert!(lr(3, 1, 5).inv_integral().is_ok());
        assert_eq!(lr(5, 1, 5).inv_integral(), Err(Error::NegativeValuation));
    }

    #[test]
    fn mixed_primes_rejected() {
        assert_eq!(lr(1, 1, 3).add(&lr(1, 1, 5)), Err(Error::PrimeMismatch));
    }

    #[test]
    fn textual_forms() {
        let a = parse_local_rational("p^2*3/5", 7).unwrap();
        assert_eq!(a, lr(147, 5, 7));
        assert_eq!(parse_local_rational("-4/6", 5).unwrap(), lr(-2, 3, 5));
        assert!(parse_local_rational("1/3", 3).is_err());
        assert_eq!(a.to_string(), "147/5");
    }

    #[test]
    fn local_ring_divisibility() {
        let z = LocalIntegers::new(3).unwrap();
        let three = lr(3, 1, 3);
        let two = lr(2, 1, 3);
        assert!(z.checked_div(&two, &three).is_none());
        assert_eq!(z.checked_div(&three, &two).unwrap(), lr(3, 2, 3));
        let (s, t) = z.lcm_cofactors(&three, &lr(18, 1, 3));
        assert_eq!(z.mul(&s, &three), z.mul(&t, &lr(18, 1, 3)));
        assert_eq!(z.mul(&s, &three).valuation(), Valuation::Finite(2));
    }

    #[test]
    fn canonical_remainders() {
        let z = LocalIntegers::new(3).unwrap();
        let nine = lr(9, 1, 3);
        let (q, r) = z.div_rem(&lr(1, 2, 3), &nine);
        // 1/2 = 5 mod 9
        assert_eq!(r, lr(5, 1, 3));
        assert_eq!(z.add(&z.mul(&q, &nine), &r), lr(1, 2, 3));
        let (q, r) = z.div_rem(&lr(18, 1, 3), &nine);
        assert!(r.is_zero());
        assert_eq!(q, lr(2, 1, 3));
    }
}
