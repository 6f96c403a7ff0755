//! Composite-order symmetric bilinear groups with two interchangeable
//! backends.
//!
//! * `Curve`: the supersingular curve y² = x³ + x over F_p with
//!   p = h·N − 1, paired through the distortion map. Real group arithmetic
//!   at desk scale.
//! * `Symbolic`: every element is its discrete log relative to a fixed
//!   abstract generator, so the pairing is multiplication of exponents
//!   mod N. This backend is an exact oracle for every identity the schemes
//!   rely on.
//!
//! Parameters below [`TOY_PRIME_BITS`] bits per prime factor are **toy
//! parameters**: deliberately insecure, intended for tests, demos, and the
//! self-test harness only.

mod curve;
mod fp;
mod fp2;
mod paramgen;

pub use curve::{CurveGroup, CurvePoint};
pub use fp2::Fp2;

#[cfg(test)]
pub(crate) use fp::is_prime;
pub(crate) use fp::next_prime;

use crate::error::{Error, Result};
use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::RngCore;
use std::fmt;

/// Prime factors narrower than this many bits mark the whole parameter set
/// as toy parameters.
pub const TOY_PRIME_BITS: u64 = 256;

const TAG_INFINITY: u8 = 0x00;
const TAG_AFFINE: u8 = 0x04;
const TAG_SYMBOLIC: u8 = 0x53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Curve,
    Symbolic,
}

impl Backend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Backend::Curve => "curve",
            Backend::Symbolic => "symbolic",
        }
    }

    pub fn parse(s: &str) -> Result<Backend> {
        match s {
            "curve" => Ok(Backend::Curve),
            "symbolic" => Ok(Backend::Symbolic),
            other => Err(Error::InvalidParameter(format!("unknown backend {other}"))),
        }
    }

    pub(crate) fn tag(&self) -> u8 {
        match self {
            Backend::Curve => 1,
            Backend::Symbolic => 2,
        }
    }

    pub(crate) fn from_tag(t: u8) -> Result<Backend> {
        match t {
            1 => Ok(Backend::Curve),
            2 => Ok(Backend::Symbolic),
            other => Err(Error::MalformedEncoding(format!("backend tag {other}"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Nonempty subset of the three prime factors, identifying a subgroup of G.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeSubset {
    mask: u8,
}

impl PrimeSubset {
    pub const P1: PrimeSubset = PrimeSubset { mask: 0b001 };
    pub const P2: PrimeSubset = PrimeSubset { mask: 0b010 };
    pub const P3: PrimeSubset = PrimeSubset { mask: 0b100 };
    pub const P1P2: PrimeSubset = PrimeSubset { mask: 0b011 };
    pub const P1P3: PrimeSubset = PrimeSubset { mask: 0b101 };
    pub const ALL: PrimeSubset = PrimeSubset { mask: 0b111 };

    /// Builds a subset from 1-based factor indices.
    pub fn from_indices(indices: &[u8]) -> Result<PrimeSubset> {
        let mut mask = 0u8;
        for &i in indices {
            if !(1..=3).contains(&i) {
                return Err(Error::InvalidParameter(format!("prime index {i}")));
            }
            mask |= 1 << (i - 1);
        }
        if mask == 0 {
            return Err(Error::InvalidParameter("empty prime subset".into()));
        }
        Ok(PrimeSubset { mask })
    }

    pub fn contains(&self, index: u8) -> bool {
        (1..=3).contains(&index) && self.mask & (1 << (index - 1)) != 0
    }

    pub fn indices(&self) -> Vec<u8> {
        (1..=3).filter(|&i| self.contains(i)).collect()
    }
}

/// A composite-order bilinear group description: N = p₁p₂p₃ plus backend
/// data. The factorization is retained (this toolkit is a desk-scale
/// artifact; hiding the factors is not one of its goals).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupParams {
    backend: Backend,
    n: BigUint,
    factors: [BigUint; 3],
    curve: Option<CurveGroup>,
}

/// An exponent in Z_N. No operation in this crate inverts a scalar: inverses
/// mod composite N need not exist and the schemes never require one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(BigUint);

impl Scalar {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Element of the source group G.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GElem {
    Curve(CurvePoint),
    Symbolic(BigUint),
}

/// Element of the target group G_T.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GTElem {
    Curve(Fp2),
    Symbolic(BigUint),
}

impl GElem {
    pub fn backend(&self) -> Backend {
        match self {
            GElem::Curve(_) => Backend::Curve,
            GElem::Symbolic(_) => Backend::Symbolic,
        }
    }

    /// Discrete log relative to the abstract generator; symbolic backend only.
    pub fn symbolic_exponent(&self) -> Option<&BigUint> {
        match self {
            GElem::Symbolic(e) => Some(e),
            GElem::Curve(_) => None,
        }
    }
}

impl GTElem {
    pub fn backend(&self) -> Backend {
        match self {
            GTElem::Curve(_) => Backend::Curve,
            GTElem::Symbolic(_) => Backend::Symbolic,
        }
    }

    pub fn symbolic_exponent(&self) -> Option<&BigUint> {
        match self {
            GTElem::Symbolic(e) => Some(e),
            GTElem::Curve(_) => None,
        }
    }
}

impl GroupParams {
    /// Deterministically generates a parameter set from a seed: three
    /// distinct odd primes below 2^prime_bits, and for the curve backend the
    /// smallest cofactor h ≡ 0 (mod 4) with p = h·N − 1 prime together with
    /// a base point of exact order N.
    pub fn generate(backend: Backend, prime_bits: u32, seed: &[u8]) -> Result<GroupParams> {
        if seed.is_empty() {
            return Err(Error::InvalidParameter("empty seed".into()));
        }
        let mut rng = crate::rng::seeded_rng(seed);
        let primes = paramgen::sample_primes(&mut rng, prime_bits)?;
        Self::from_primes(backend, &primes[0], &primes[1], &primes[2])
    }

    /// Builds a parameter set from explicit primes. The primes must be
    /// pairwise distinct and odd.
    pub fn from_primes(
        backend: Backend,
        p1: &BigUint,
        p2: &BigUint,
        p3: &BigUint,
    ) -> Result<GroupParams> {
        for p in [p1, p2, p3] {
            if !fp::is_prime(p) || (p % BigUint::from(2u8)).is_zero() {
                return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
            }
        }
        if p1 == p2 || p2 == p3 || p1 == p3 {
            return Err(Error::InvalidParameter("primes must be distinct".into()));
        }
        let n = p1 * p2 * p3;
        let factors = [p1.clone(), p2.clone(), p3.clone()];
        let curve = match backend {
            Backend::Symbolic => None,
            Backend::Curve => {
                let (cofactor, p) = paramgen::find_cofactor(&n)?;
                let base = paramgen::derive_base_point(&p, &cofactor, &n, &factors)?;
                Some(CurveGroup {
                    p,
                    cofactor,
                    order: n.clone(),
                    base,
                })
            }
        };
        Ok(GroupParams {
            backend,
            n,
            factors,
            curve,
        })
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn modulus(&self) -> &BigUint {
        &self.n
    }

    pub fn factors(&self) -> &[BigUint; 3] {
        &self.factors
    }

    pub fn factor(&self, index: u8) -> &BigUint {
        &self.factors[(index - 1) as usize]
    }

    pub fn curve(&self) -> Option<&CurveGroup> {
        self.curve.as_ref()
    }

    /// True when any prime factor is narrower than [`TOY_PRIME_BITS`].
    /// Toy parameters give no cryptographic security whatsoever.
    pub fn is_toy(&self) -> bool {
        self.factors.iter().any(|p| p.bits() < TOY_PRIME_BITS)
    }

    /// Width of a scalar / symbolic-exponent encoding in bytes.
    pub fn scalar_byte_len(&self) -> usize {
        (self.n.bits() as usize).div_ceil(8)
    }

    /// Width of one field coordinate in bytes (curve backend).
    pub fn field_byte_len(&self) -> usize {
        match &self.curve {
            Some(c) => (c.p.bits() as usize).div_ceil(8),
            None => 0,
        }
    }

    pub fn g_encoded_len(&self) -> usize {
        match self.backend {
            Backend::Curve => 1 + 2 * self.field_byte_len(),
            Backend::Symbolic => 1 + self.scalar_byte_len(),
        }
    }

    pub fn gt_encoded_len(&self) -> usize {
        match self.backend {
            Backend::Curve => 2 * self.field_byte_len(),
            Backend::Symbolic => 1 + self.scalar_byte_len(),
        }
    }

    // ---- element constructors -------------------------------------------

    /// The canonical full-order generator of G.
    pub fn generator(&self) -> GElem {
        match self.backend {
            Backend::Curve => GElem::Curve(self.curve.as_ref().unwrap().base.clone()),
            Backend::Symbolic => GElem::Symbolic(BigUint::one()),
        }
    }

    pub fn identity_g(&self) -> GElem {
        match self.backend {
            Backend::Curve => GElem::Curve(CurvePoint::Infinity),
            Backend::Symbolic => GElem::Symbolic(BigUint::zero()),
        }
    }

    pub fn identity_gt(&self) -> GTElem {
        match self.backend {
            Backend::Curve => GTElem::Curve(Fp2::one()),
            Backend::Symbolic => GTElem::Symbolic(BigUint::zero()),
        }
    }

    pub fn is_identity_g(&self, a: &GElem) -> bool {
        match a {
            GElem::Curve(pt) => pt.is_infinity(),
            GElem::Symbolic(e) => e.is_zero(),
        }
    }

    pub fn is_identity_gt(&self, a: &GTElem) -> bool {
        match a {
            GTElem::Curve(z) => z.is_one(),
            GTElem::Symbolic(e) => e.is_zero(),
        }
    }

    /// g^(N / ∏_{i ∈ primes} p_i): a generator of the subgroup of order
    /// ∏ p_i, derived from the canonical full-order generator.
    pub fn subgroup_generator(&self, primes: PrimeSubset) -> GElem {
        let mut m = BigUint::one();
        for i in primes.indices() {
            m *= self.factor(i);
        }
        let e = &self.n / m;
        self.g_exp(&self.generator(), &self.scalar_from_uint(&e))
            .expect("same backend")
    }

    pub fn scalar_from_uint(&self, v: &BigUint) -> Scalar {
        Scalar(v % &self.n)
    }

    pub fn scalar_from_u64(&self, v: u64) -> Scalar {
        self.scalar_from_uint(&BigUint::from(v))
    }

    // ---- scalar arithmetic (no inversion by design) ----------------------

    pub fn scalar_add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar(fp::add_mod(&a.0, &b.0, &self.n))
    }

    pub fn scalar_sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar(fp::sub_mod(&a.0, &b.0, &self.n))
    }

    pub fn scalar_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Scalar(fp::mul_mod(&a.0, &b.0, &self.n))
    }

    /// a^k mod N for the chain constructions.
    pub fn scalar_pow(&self, a: &Scalar, k: u32) -> Scalar {
        Scalar(a.0.modpow(&BigUint::from(k), &self.n))
    }

    // ---- group operations -------------------------------------------------

    pub fn g_exp(&self, base: &GElem, s: &Scalar) -> Result<GElem> {
        match base {
            GElem::Curve(pt) => {
                let c = self.curve_or_mismatch()?;
                Ok(GElem::Curve(c.scalar_mul(pt, &s.0)))
            }
            GElem::Symbolic(e) => {
                self.expect_backend(Backend::Symbolic)?;
                Ok(GElem::Symbolic(fp::mul_mod(e, &s.0, &self.n)))
            }
        }
    }

    pub fn g_mul(&self, a: &GElem, b: &GElem) -> Result<GElem> {
        match (a, b) {
            (GElem::Curve(x), GElem::Curve(y)) => {
                let c = self.curve_or_mismatch()?;
                Ok(GElem::Curve(c.add(x, y)))
            }
            (GElem::Symbolic(x), GElem::Symbolic(y)) => {
                self.expect_backend(Backend::Symbolic)?;
                Ok(GElem::Symbolic(fp::add_mod(x, y, &self.n)))
            }
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn g_inv(&self, a: &GElem) -> Result<GElem> {
        match a {
            GElem::Curve(pt) => {
                let c = self.curve_or_mismatch()?;
                Ok(GElem::Curve(c.neg(pt)))
            }
            GElem::Symbolic(e) => {
                self.expect_backend(Backend::Symbolic)?;
                Ok(GElem::Symbolic(fp::neg_mod(e, &self.n)))
            }
        }
    }

    /// Product over an iterator; the empty product is the identity.
    pub fn g_product<'a, I: IntoIterator<Item = &'a GElem>>(&self, items: I) -> Result<GElem> {
        let mut acc = self.identity_g();
        for item in items {
            acc = self.g_mul(&acc, item)?;
        }
        Ok(acc)
    }

    pub fn pair(&self, a: &GElem, b: &GElem) -> Result<GTElem> {
        match (a, b) {
            (GElem::Curve(x), GElem::Curve(y)) => {
                let c = self.curve_or_mismatch()?;
                Ok(GTElem::Curve(c.pairing(x, y)))
            }
            (GElem::Symbolic(x), GElem::Symbolic(y)) => {
                self.expect_backend(Backend::Symbolic)?;
                Ok(GTElem::Symbolic(fp::mul_mod(x, y, &self.n)))
            }
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn gt_exp(&self, base: &GTElem, s: &Scalar) -> Result<GTElem> {
        match base {
            GTElem::Curve(z) => {
                let c = self.curve_or_mismatch()?;
                Ok(GTElem::Curve(z.pow(&s.0, &c.p)))
            }
            GTElem::Symbolic(e) => {
                self.expect_backend(Backend::Symbolic)?;
                Ok(GTElem::Symbolic(fp::mul_mod(e, &s.0, &self.n)))
            }
        }
    }

    pub fn gt_mul(&self, a: &GTElem, b: &GTElem) -> Result<GTElem> {
        match (a, b) {
            (GTElem::Curve(x), GTElem::Curve(y)) => {
                let c = self.curve_or_mismatch()?;
                Ok(GTElem::Curve(x.mul(y, &c.p)))
            }
            (GTElem::Symbolic(x), GTElem::Symbolic(y)) => {
                self.expect_backend(Backend::Symbolic)?;
                Ok(GTElem::Symbolic(fp::add_mod(x, y, &self.n)))
            }
            _ => Err(Error::BackendMismatch),
        }
    }

    pub fn gt_inv(&self, a: &GTElem) -> Result<GTElem> {
        match a {
            GTElem::Curve(z) => {
                // Pairing outputs live in μ_{p+1}, where the inverse is the
                // conjugate.
                let c = self.curve_or_mismatch()?;
                Ok(GTElem::Curve(z.conjugate(&c.p)))
            }
            GTElem::Symbolic(e) => {
                self.expect_backend(Backend::Symbolic)?;
                Ok(GTElem::Symbolic(fp::neg_mod(e, &self.n)))
            }
        }
    }

    /// e(g, g) for the canonical generator.
    pub fn gt_generator(&self) -> GTElem {
        self.pair(&self.generator(), &self.generator())
            .expect("same backend")
    }

    /// a^m = identity?
    pub fn g_order_divides(&self, a: &GElem, m: &BigUint) -> bool {
        let r = self
            .g_exp(a, &Scalar(m % &self.n))
            .expect("backend consistent");
        // For exponents that are true multiples of N the reduction above
        // would collapse to 0; handle m ≥ N by exact exponentiation instead.
        if m >= &self.n {
            match a {
                GElem::Curve(pt) => {
                    let c = self.curve.as_ref().unwrap();
                    return c.scalar_mul(pt, m).is_infinity();
                }
                GElem::Symbolic(e) => {
                    return fp::mul_mod(e, m, &self.n).is_zero();
                }
            }
        }
        self.is_identity_g(&r)
    }

    pub fn gt_order_divides(&self, a: &GTElem, m: &BigUint) -> bool {
        match a {
            GTElem::Curve(z) => {
                let c = self.curve.as_ref().unwrap();
                z.pow(m, &c.p).is_one()
            }
            GTElem::Symbolic(e) => fp::mul_mod(e, m, &self.n).is_zero(),
        }
    }

    // ---- sampling ----------------------------------------------------------

    pub fn random_scalar<R: RngCore>(&self, rng: &mut R) -> Scalar {
        Scalar(rng.gen_biguint_below(&self.n))
    }

    /// Uniform element of the designated subgroup (the subgroup generator
    /// raised to a uniform exponent).
    pub fn random_element<R: RngCore>(&self, rng: &mut R, primes: PrimeSubset) -> GElem {
        let g = self.subgroup_generator(primes);
        let r = self.random_scalar(rng);
        self.g_exp(&g, &r).expect("same backend")
    }

    /// Uniform *generator* of the designated subgroup: the exponent is
    /// redrawn until it is nonzero modulo every selected prime, so the
    /// result has exact order ∏ p_i.
    pub fn random_subgroup_generator<R: RngCore>(&self, rng: &mut R, primes: PrimeSubset) -> GElem {
        let g = self.subgroup_generator(primes);
        loop {
            let r = self.random_scalar(rng);
            if primes
                .indices()
                .iter()
                .all(|&i| !(r.value() % self.factor(i)).is_zero())
            {
                return self.g_exp(&g, &r).expect("same backend");
            }
        }
    }

    // ---- canonical encodings ----------------------------------------------

    pub fn encode_scalar(&self, s: &Scalar) -> Vec<u8> {
        be_fixed(&s.0, self.scalar_byte_len())
    }

    pub fn decode_scalar(&self, bytes: &[u8]) -> Result<Scalar> {
        if bytes.len() != self.scalar_byte_len() {
            return Err(Error::MalformedEncoding(format!(
                "scalar length {} != {}",
                bytes.len(),
                self.scalar_byte_len()
            )));
        }
        let v = BigUint::from_bytes_be(bytes);
        if v >= self.n {
            return Err(Error::MalformedEncoding("scalar not reduced mod N".into()));
        }
        Ok(Scalar(v))
    }

    pub fn encode_g(&self, a: &GElem) -> Result<Vec<u8>> {
        match a {
            GElem::Curve(pt) => {
                let c = self.curve_or_mismatch()?;
                let w = self.field_byte_len();
                let mut out = Vec::with_capacity(1 + 2 * w);
                match pt {
                    CurvePoint::Infinity => {
                        out.push(TAG_INFINITY);
                        out.extend(std::iter::repeat_n(0u8, 2 * w));
                    }
                    CurvePoint::Affine { x, y } => {
                        out.push(TAG_AFFINE);
                        out.extend(be_fixed(x, w));
                        out.extend(be_fixed(y, w));
                    }
                }
                debug_assert_eq!(out.len(), self.g_encoded_len());
                let _ = c;
                Ok(out)
            }
            GElem::Symbolic(e) => {
                self.expect_backend(Backend::Symbolic)?;
                let mut out = Vec::with_capacity(self.g_encoded_len());
                out.push(TAG_SYMBOLIC);
                out.extend(be_fixed(e, self.scalar_byte_len()));
                Ok(out)
            }
        }
    }

    /// Decodes and validates a G element: shape, field range, curve
    /// membership, and order-N subgroup membership (multiply by N, expect
    /// the identity).
    pub fn decode_g(&self, bytes: &[u8]) -> Result<GElem> {
        if bytes.len() != self.g_encoded_len() {
            return Err(Error::MalformedEncoding(format!(
                "G element length {} != {}",
                bytes.len(),
                self.g_encoded_len()
            )));
        }
        match self.backend {
            Backend::Symbolic => {
                if bytes[0] != TAG_SYMBOLIC {
                    return Err(Error::MalformedEncoding(format!("tag {:#04x}", bytes[0])));
                }
                let e = BigUint::from_bytes_be(&bytes[1..]);
                if e >= self.n {
                    return Err(Error::MalformedEncoding(
                        "exponent not reduced mod N".into(),
                    ));
                }
                Ok(GElem::Symbolic(e))
            }
            Backend::Curve => {
                let c = self.curve.as_ref().unwrap();
                let w = self.field_byte_len();
                match bytes[0] {
                    TAG_INFINITY => {
                        if bytes[1..].iter().any(|&b| b != 0) {
                            return Err(Error::MalformedEncoding(
                                "nonzero payload on infinity tag".into(),
                            ));
                        }
                        Ok(GElem::Curve(CurvePoint::Infinity))
                    }
                    TAG_AFFINE => {
                        let x = BigUint::from_bytes_be(&bytes[1..1 + w]);
                        let y = BigUint::from_bytes_be(&bytes[1 + w..]);
                        if x >= c.p || y >= c.p {
                            return Err(Error::MalformedEncoding(
                                "coordinate out of field range".into(),
                            ));
                        }
                        let pt = CurvePoint::Affine { x, y };
                        if !c.on_curve(&pt) {
                            return Err(Error::MalformedEncoding("point not on curve".into()));
                        }
                        if !c.scalar_mul(&pt, &self.n).is_infinity() {
                            return Err(Error::NotInSubgroup);
                        }
                        Ok(GElem::Curve(pt))
                    }
                    other => Err(Error::MalformedEncoding(format!("tag {other:#04x}"))),
                }
            }
        }
    }

    pub fn encode_gt(&self, a: &GTElem) -> Result<Vec<u8>> {
        match a {
            GTElem::Curve(z) => {
                self.curve_or_mismatch()?;
                let w = self.field_byte_len();
                let mut out = Vec::with_capacity(2 * w);
                out.extend(be_fixed(&z.a, w));
                out.extend(be_fixed(&z.b, w));
                Ok(out)
            }
            GTElem::Symbolic(e) => {
                self.expect_backend(Backend::Symbolic)?;
                let mut out = Vec::with_capacity(self.gt_encoded_len());
                out.push(TAG_SYMBOLIC);
                out.extend(be_fixed(e, self.scalar_byte_len()));
                Ok(out)
            }
        }
    }

    pub fn decode_gt(&self, bytes: &[u8]) -> Result<GTElem> {
        if bytes.len() != self.gt_encoded_len() {
            return Err(Error::MalformedEncoding(format!(
                "GT element length {} != {}",
                bytes.len(),
                self.gt_encoded_len()
            )));
        }
        match self.backend {
            Backend::Symbolic => {
                if bytes[0] != TAG_SYMBOLIC {
                    return Err(Error::MalformedEncoding(format!("tag {:#04x}", bytes[0])));
                }
                let e = BigUint::from_bytes_be(&bytes[1..]);
                if e >= self.n {
                    return Err(Error::MalformedEncoding(
                        "exponent not reduced mod N".into(),
                    ));
                }
                Ok(GTElem::Symbolic(e))
            }
            Backend::Curve => {
                let c = self.curve.as_ref().unwrap();
                let w = self.field_byte_len();
                let a = BigUint::from_bytes_be(&bytes[..w]);
                let b = BigUint::from_bytes_be(&bytes[w..]);
                if a >= c.p || b >= c.p {
                    return Err(Error::MalformedEncoding(
                        "coordinate out of field range".into(),
                    ));
                }
                let z = Fp2::new(a, b);
                if !z.pow(&self.n, &c.p).is_one() {
                    return Err(Error::NotInSubgroup);
                }
                Ok(GTElem::Curve(z))
            }
        }
    }

    // ---- internals ----------------------------------------------------------

    fn curve_or_mismatch(&self) -> Result<&CurveGroup> {
        self.curve.as_ref().ok_or(Error::BackendMismatch)
    }

    fn expect_backend(&self, b: Backend) -> Result<()> {
        if self.backend == b {
            Ok(())
        } else {
            Err(Error::BackendMismatch)
        }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} backend, N = {} = {} * {} * {}",
            self.backend, self.n, self.factors[0], self.factors[1], self.factors[2]
        )?;
        if let Some(c) = &self.curve {
            write!(f, ", p = {}, h = {}", c.p, c.cofactor)?;
        }
        if self.is_toy() {
            write!(f, " [toy parameters - no security]")?;
        }
        Ok(())
    }
}

fn be_fixed(v: &BigUint, width: usize) -> Vec<u8> {
    let raw = v.to_bytes_be();
    debug_assert!(raw.len() <= width, "value wider than encoding");
    let mut out = vec![0u8; width];
    out[width - raw.len()..].copy_from_slice(&raw);
    out
}

/// Shared randomized relation suite: algebraic identities that must hold on
/// every backend. Returns one named verdict per relation so cross-backend
/// agreement can be asserted verbatim.
pub fn relation_suite(params: &GroupParams, seed: &[u8]) -> Vec<(&'static str, bool)> {
    let mut rng = crate::rng::seeded_rng(seed);
    let g = params.generator();
    let mut out = Vec::new();

    // Bilinearity over random exponent pairs.
    let mut bilinear = true;
    for _ in 0..16 {
        let a = params.random_scalar(&mut rng);
        let b = params.random_scalar(&mut rng);
        let lhs = params
            .pair(
                &params.g_exp(&g, &a).unwrap(),
                &params.g_exp(&g, &b).unwrap(),
            )
            .unwrap();
        let rhs = params
            .gt_exp(&params.gt_generator(), &params.scalar_mul(&a, &b))
            .unwrap();
        bilinear &= lhs == rhs;
    }
    out.push(("bilinearity", bilinear));

    // Non-degeneracy: e(g, g) has exact order N.
    let e_gg = params.gt_generator();
    let mut nondegen = params.gt_order_divides(&e_gg, params.modulus());
    for i in 1..=3u8 {
        nondegen &= !params.gt_order_divides(&e_gg, &(params.modulus() / params.factor(i)));
    }
    out.push(("non-degeneracy", nondegen));

    // Orthogonality of distinct prime-order subgroups.
    let mut ortho = true;
    for (i, j) in [(1u8, 2u8), (1, 3), (2, 3)] {
        let hi = params.random_element(&mut rng, PrimeSubset::from_indices(&[i]).unwrap());
        let hj = params.random_element(&mut rng, PrimeSubset::from_indices(&[j]).unwrap());
        ortho &= params.is_identity_gt(&params.pair(&hi, &hj).unwrap());
    }
    out.push(("orthogonality", ortho));

    // Subgroup orders: sampled elements are killed by their subgroup order.
    let mut orders = true;
    for i in 1..=3u8 {
        let h = params.random_element(&mut rng, PrimeSubset::from_indices(&[i]).unwrap());
        orders &= params.g_order_divides(&h, params.factor(i));
    }
    let h12 = params.random_element(&mut rng, PrimeSubset::P1P2);
    orders &= params.g_order_divides(&h12, &(params.factor(1) * params.factor(2)));
    out.push(("subgroup-orders", orders));

    // Inverse and identity laws.
    let a = params.random_element(&mut rng, PrimeSubset::ALL);
    let inv_law = params.is_identity_g(&params.g_mul(&a, &params.g_inv(&a).unwrap()).unwrap());
    let zero_exp = params.is_identity_g(&params.g_exp(&g, &params.scalar_from_u64(0)).unwrap());
    let degenerate_pair = params.is_identity_gt(&params.pair(&params.identity_g(), &a).unwrap());
    out.push(("inverse-law", inv_law));
    out.push(("zero-exponent", zero_exp));
    out.push(("degenerate-pairing", degenerate_pair));

    // Pairing determinism (repeated evaluation).
    let b = params.random_element(&mut rng, PrimeSubset::ALL);
    let det = params.pair(&a, &b).unwrap() == params.pair(&a, &b).unwrap();
    out.push(("pairing-determinism", det));

    out
}
