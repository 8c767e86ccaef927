//! Exact arithmetic over prime fields GF(p) and over the rationals.
//!
//! Solvers work with [`PrimeField`], whose elements are canonical residues
//! stored in a byte. [`Rationals`] exists so that representations over the
//! reals with rational entries can be checked exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported prime, so that every residue fits in a `u8`.
pub const MAX_PRIME: u32 = 251;

/// Operations shared by all supported fields.
pub trait Field: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, v: i64) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// GF(p) for a prime `p <= 251`.
#[derive(Clone, Copy)]
pub struct PrimeField {
    p: u8,
    inv: [u8; 256],
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not a prime in [2, {MAX_PRIME}]")));
        }
        let mut inv = [0u8; 256];
        for a in 1..p {
            // a^(p-2)
            let mut acc = 1u32;
            let mut base = a;
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            inv[a as usize] = acc as u8;
        }
        Ok(PrimeField { p: p as u8, inv })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.p as usize
    }

    /// Inner product of two residue slices of equal length.
    #[inline]
    pub fn dot(&self, x: &[u8], y: &[u8]) -> u8 {
        debug_assert_eq!(x.len(), y.len());
        let p = self.p as u32;
        let mut acc = 0u32;
        for (&a, &b) in x.iter().zip(y) {
            acc += a as u32 * b as u32;
            if acc >= 1 << 24 {
                acc %= p;
            }
        }
        (acc % p) as u8
    }

    /// Scales `x` so that its first nonzero coordinate is 1.
    pub fn normalize(&self, x: &mut [u8]) {
        if let Some(&lead) = x.iter().find(|&&c| c != 0) {
            if lead != 1 {
                let s = self.inv[lead as usize];
                for c in x.iter_mut() {
                    *c = self.mul(c, &s);
                }
            }
        }
    }

    pub fn is_normalized(&self, x: &[u8]) -> bool {
        x.iter().find(|&&c| c != 0).is_none_or(|&c| c == 1)
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl Field for PrimeField {
    type Elem = u8;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u8 {
        0
    }
    #[inline]
    fn one(&self) -> u8 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u8, b: &u8) -> u8 {
        ((*a as u16 + *b as u16) % self.p as u16) as u8
    }
    #[inline]
    fn sub(&self, a: &u8, b: &u8) -> u8 {
        ((*a as u16 + self.p as u16 - *b as u16) % self.p as u16) as u8
    }
    #[inline]
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        ((*a as u16 * *b as u16) % self.p as u16) as u8
    }
    #[inline]
    fn neg(&self, a: &u8) -> u8 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    #[inline]
    fn inv(&self, a: &u8) -> Option<u8> {
        if *a == 0 {
            None
        } else {
            Some(self.inv[*a as usize])
        }
    }
    fn from_int(&self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }
}

/// The field of rationals, with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_int(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Names a field: GF(p) or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Prime(u8),
    Rationals,
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        PrimeField::new(p).map(|f| FieldSpec::Prime(f.p))
    }

    /// The finite field behind this spec, if any.
    pub fn finite(&self) -> Option<PrimeField> {
        match self {
            FieldSpec::Prime(p) => PrimeField::new(*p as u32).ok(),
            FieldSpec::Rationals => None,
        }
    }

    /// Number of elements; `None` for the rationals.
    pub fn order(&self) -> Option<usize> {
        match self {
            FieldSpec::Prime(p) => Some(*p as usize),
            FieldSpec::Rationals => None,
        }
    }

    pub fn elem(&self, v: i64) -> FieldElem {
        match self {
            FieldSpec::Prime(p) => FieldElem::Mod {
                p: *p,
                v: v.rem_euclid(*p as i64) as u8,
            },
            FieldSpec::Rationals => FieldElem::Rat(Rationals.from_int(v)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let p: u32 = s
            .parse()
            .map_err(|_| Error::InvalidField(format!("cannot parse field {s:?}")))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldSpec::Prime(p) => s.serialize_u8(*p),
            FieldSpec::Rationals => s.serialize_str("Q"),
        }
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        let spec = match Raw::deserialize(d)? {
            Raw::Num(p) => FieldSpec::prime(p),
            Raw::Text(s) => s.parse(),
        };
        spec.map_err(serde::de::Error::custom)
    }
}

/// A field element tagged with its field, for the dynamically checked API.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldElem {
    Mod { p: u8, v: u8 },
    Rat(BigRational),
}

impl FieldElem {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElem::Mod { p, .. } => FieldSpec::Prime(*p),
            FieldElem::Rat(_) => FieldSpec::Rationals,
        }
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem::Rat(BigRational::new(num.into(), den.into())))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Mod { v, .. } => *v == 0,
            FieldElem::Rat(r) => r.is_zero(),
        }
    }

    fn binary(
        &self,
        other: &FieldElem,
        modular: impl Fn(&PrimeField, &u8, &u8) -> u8,
        rational: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<FieldElem> {
        match (self, other) {
            (FieldElem::Mod { p, v: a }, FieldElem::Mod { p: q, v: b }) if p == q => {
                let f = PrimeField::new(*p as u32)?;
                Ok(FieldElem::Mod {
                    p: *p,
                    v: modular(&f, a, b),
                })
            }
            (FieldElem::Rat(a), FieldElem::Rat(b)) => Ok(FieldElem::Rat(rational(a, b))),
            _ => Err(Error::MixedField(self.spec().to_string(), other.spec().to_string())),
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binary(other, |f, a, b| f.add(a, b), |a, b| a + b)
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binary(other, |f, a, b| f.sub(a, b), |a, b| a - b)
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.binary(other, |f, a, b| f.mul(a, b), |a, b| a * b)
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Mod { p, v } => FieldElem::Mod {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
            FieldElem::Rat(r) => FieldElem::Rat(-r),
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Mod { p, v } => {
                let f = PrimeField::new(*p as u32)?;
                FieldElem::Mod {
                    p: *p,
                    v: f.inv(v).expect("nonzero"),
                }
            }
            FieldElem::Rat(r) => FieldElem::Rat(r.recip()),
        })
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Mod { v, .. } => write!(f, "{v}"),
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// `<x, y> = sum x_i y_i`, with no conjugation in any field.
pub fn inner_product<F: Field>(field: &F, x: &[F::Elem], y: &[F::Elem]) -> Result<F::Elem> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.iter()
        .zip(y)
        .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b))))
}

/// Inner product over tagged elements; every entry must share one field.
pub fn inner_product_elems(x: &[FieldElem], y: &[FieldElem]) -> Result<FieldElem> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let spec = match x.first().or(y.first()) {
        Some(e) => e.spec(),
        None => return Err(Error::Precondition("empty vectors carry no field".into())),
    };
    x.iter()
        .zip(y)
        .try_fold(spec.elem(0), |acc, (a, b)| acc.add(&a.mul(b)?))
}

/// Parses `"n"` or `"n/d"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse {
        line: 0,
        msg: format!("bad rational {s:?}"),
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Renders a rational as `"n"` or `"n/d"` with a positive denominator.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.denom().is_negative() {
        format!("{}/{}", -r.numer(), -r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn modular_examples() {
        assert_eq!(gf(5).add(&3, &4), 2);
        assert_eq!(gf(2).add(&1, &1), 0);
        assert_eq!(gf(5).inv(&2), Some(3));
        assert_eq!(gf(2).inv(&1), Some(1));
        assert_eq!(gf(7).inv(&3), Some(5));
        assert_eq!(gf(7).inv(&0), None);
        assert_eq!(gf(7).from_int(-1), 6);
    }

    #[test]
    fn rational_example() {
        let a = FieldElem::rational(1, 2).unwrap();
        let b = FieldElem::rational(1, 3).unwrap();
        assert_eq!(a.add(&b).unwrap(), FieldElem::rational(5, 6).unwrap());
        assert_eq!(FieldElem::rational(2, -4).unwrap().to_string(), "-1/2");
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = FieldSpec::Prime(5).elem(1);
        let b = FieldSpec::Prime(7).elem(1);
        assert!(matches!(a.add(&b), Err(Error::MixedField(..))));
        let r = FieldSpec::Rationals.elem(1);
        assert!(matches!(a.mul(&r), Err(Error::MixedField(..))));
    }

    #[test]
    fn zero_inverse_is_an_error() {
        assert_eq!(FieldSpec::Prime(3).elem(0).inv(), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::Rationals.elem(0).inv(), Err(Error::DivisionByZero));
        assert_eq!(gf(3).div(&1, &0), Err(Error::DivisionByZero));
    }

    #[test]
    fn fermat_little_theorem_exhaustive() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let f = gf(p);
            for a in 1..p as u8 {
                let mut acc = 1u8;
                for _ in 0..p - 1 {
                    acc = f.mul(&acc, &a);
                }
                assert_eq!(acc, 1, "a={a} p={p}");
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert!("4".parse::<FieldSpec>().is_err());
        assert!("257".parse::<FieldSpec>().is_err());
        assert!(FieldSpec::prime(251).is_ok());
        let json = serde_json::to_string(&FieldSpec::Prime(7)).unwrap();
        assert_eq!(json, "7");
        let back: FieldSpec = serde_json::from_str("\"Q\"").unwrap();
        assert_eq!(back, FieldSpec::Rationals);
    }

    #[test]
    fn inner_product_examples() {
        let f2 = gf(2);
        assert_eq!(inner_product(&f2, &[1, 1, 0], &[1, 1, 0]).unwrap(), 0);
        assert_eq!(inner_product(&f2, &[1, 1, 1], &[1, 1, 1]).unwrap(), 1);
        assert_eq!(inner_product(&gf(3), &[1, 2], &[2, 1]).unwrap(), 1);
        assert_eq!(inner_product(&f2, &[1, 0], &[1]), Err(Error::LengthMismatch(2, 1)));
        let x: Vec<FieldElem> = [1, 2].iter().map(|&v| FieldSpec::Prime(3).elem(v)).collect();
        let y: Vec<FieldElem> = [2, 1].iter().map(|&v| FieldSpec::Prime(3).elem(v)).collect();
        assert_eq!(inner_product_elems(&x, &y).unwrap(), FieldSpec::Prime(3).elem(1));
    }

    #[test]
    fn rational_text_round_trip() {
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("5").unwrap()), "5");
        assert!(parse_rational("1/0").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn inner_product_symmetric_bilinear(
                p in prop::sample::select(vec![2u32, 3, 5, 7, 11]),
                seed in prop::collection::vec(0u8..=250, 12),
                a in 0u8..=250,
            ) {
                let f = gf(p);
                let v: Vec<u8> = seed.iter().map(|&s| s % f.p() as u8).collect();
                let (x, rest) = v.split_at(4);
                let (y, z) = rest.split_at(4);
                let a = a % p as u8;
                let ip = |u: &[u8], w: &[u8]| inner_product(&f, u, w).unwrap();
                prop_assert_eq!(ip(x, y), ip(y, x));
                let ax_plus_z: Vec<u8> = x.iter().zip(z).map(|(xi, zi)| f.add(&f.mul(&a, xi), zi)).collect();
                prop_assert_eq!(ip(&ax_plus_z, y), f.add(&f.mul(&a, &ip(x, y)), &ip(z, y)));
                prop_assert_eq!(f.dot(x, y), ip(x, y));
            }

            #[test]
            fn gf2_self_product_is_weight_parity(x in prop::collection::vec(0u8..2, 0..20)) {
                let f = gf(2);
                let weight = x.iter().filter(|&&b| b == 1).count() as u8;
                prop_assert_eq!(inner_product(&f, &x, &x).unwrap(), weight % 2);
            }
        }
    }
}
