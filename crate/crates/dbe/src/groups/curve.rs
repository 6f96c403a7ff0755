//! The supersingular curve E: y² = x³ + x over F_p with p ≡ 3 (mod 4).
//!
//! E(F_p) is cyclic of order p + 1 = h·N, so the order-N subgroup is unique
//! and membership is exactly "N·P = ∞". The symmetric pairing is the reduced
//! Tate pairing composed with the distortion map φ(x, y) = (−x, i·y) into
//! E(F_{p²}); the Miller loop drops vertical lines because their values land
//! in F_p* and die in the final exponentiation (p − 1 divides (p² − 1)/N).

use super::fp;
use super::fp2::Fp2;
use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigUint, y: BigUint },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

/// Curve-side data of a parameter set: the field prime, the cofactor h with
/// p + 1 = h·N, and a base point of exact order N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGroup {
    pub p: BigUint,
    pub cofactor: BigUint,
    pub order: BigUint,
    pub base: CurvePoint,
}

impl CurveGroup {
    /// Checks y² = x³ + x.
    pub fn on_curve(&self, pt: &CurvePoint) -> bool {
        match pt {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                let lhs = fp::mul_mod(y, y, &self.p);
                let x3 = fp::mul_mod(&fp::mul_mod(x, x, &self.p), x, &self.p);
                let rhs = fp::add_mod(&x3, x, &self.p);
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, pt: &CurvePoint) -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: fp::neg_mod(y, &self.p),
            },
        }
    }

    pub fn add(&self, lhs: &CurvePoint, rhs: &CurvePoint) -> CurvePoint {
        let p = &self.p;
        match (lhs, rhs) {
            (CurvePoint::Infinity, _) => rhs.clone(),
            (_, CurvePoint::Infinity) => lhs.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                if x1 == x2 {
                    if *y1 == fp::neg_mod(y2, p) {
                        return CurvePoint::Infinity;
                    }
                    return self.double(lhs);
                }
                let slope = fp::mul_mod(
                    &fp::sub_mod(y2, y1, p),
                    &fp::inv_mod_prime(&fp::sub_mod(x2, x1, p), p),
                    p,
                );
                self.chord_result(x1, y1, x2, &slope)
            }
        }
    }

    pub fn double(&self, pt: &CurvePoint) -> CurvePoint {
        match pt {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                if y.is_zero() {
                    return CurvePoint::Infinity;
                }
                let slope = self.tangent_slope(x, y);
                self.chord_result(x, y, x, &slope)
            }
        }
    }

    /// x3 = λ² − x1 − x2, y3 = λ(x1 − x3) − y1.
    fn chord_result(
        &self,
        x1: &BigUint,
        y1: &BigUint,
        x2: &BigUint,
        slope: &BigUint,
    ) -> CurvePoint {
        let p = &self.p;
        let x3 = fp::sub_mod(&fp::sub_mod(&fp::mul_mod(slope, slope, p), x1, p), x2, p);
        let y3 = fp::sub_mod(&fp::mul_mod(slope, &fp::sub_mod(x1, &x3, p), p), y1, p);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// λ = (3x² + 1) / 2y for the coefficient-one curve.
    fn tangent_slope(&self, x: &BigUint, y: &BigUint) -> BigUint {
        let p = &self.p;
        let num = fp::add_mod(
            &fp::mul_mod(&BigUint::from(3u8), &fp::mul_mod(x, x, p), p),
            &BigUint::one(),
            p,
        );
        fp::mul_mod(
            &num,
            &fp::inv_mod_prime(&fp::mul_mod(&BigUint::from(2u8), y, p), p),
            p,
        )
    }

    pub fn scalar_mul(&self, pt: &CurvePoint, k: &BigUint) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        for idx in (0..k.bits()).rev() {
            acc = self.double(&acc);
            if k.bit(idx) {
                acc = self.add(&acc, pt);
            }
        }
        acc
    }

    /// Reduced Tate pairing with distortion map, into μ_N ⊂ F_{p²}*.
    pub fn pairing(&self, lhs: &CurvePoint, rhs: &CurvePoint) -> Fp2 {
        let (xq, yq) = match rhs {
            CurvePoint::Infinity => return Fp2::one(),
            CurvePoint::Affine { x, y } => (x.clone(), y.clone()),
        };
        if lhs.is_infinity() {
            return Fp2::one();
        }
        let f = self.miller_loop(lhs, &xq, &yq);
        self.final_exponentiation(&f)
    }

    /// f_{N,P} evaluated at φ(Q) = (−x_q, i·y_q), vertical lines dropped.
    fn miller_loop(&self, point: &CurvePoint, xq: &BigUint, yq: &BigUint) -> Fp2 {
        let p = &self.p;
        let n = &self.order;
        let mut f = Fp2::one();
        let mut t = point.clone();
        for idx in (0..n.bits() - 1).rev() {
            f = f.square(p);
            let (line, next) = self.double_with_line(&t, xq, yq);
            if let Some(l) = line {
                f = f.mul(&l, p);
            }
            t = next;
            if n.bit(idx) {
                let (line, next) = self.add_with_line(&t, point, xq, yq);
                if let Some(l) = line {
                    f = f.mul(&l, p);
                }
                t = next;
            }
        }
        f
    }

    /// Tangent line at T evaluated at φ(Q). `None` marks a vertical line
    /// (F_p-valued, eliminated).
    fn double_with_line(
        &self,
        t: &CurvePoint,
        xq: &BigUint,
        yq: &BigUint,
    ) -> (Option<Fp2>, CurvePoint) {
        match t {
            CurvePoint::Infinity => (None, CurvePoint::Infinity),
            CurvePoint::Affine { x, y } => {
                if y.is_zero() {
                    return (None, CurvePoint::Infinity);
                }
                let slope = self.tangent_slope(x, y);
                let line = self.line_at_phi_q(x, y, &slope, xq, yq);
                (Some(line), self.double(t))
            }
        }
    }

    /// Chord through T and P evaluated at φ(Q).
    fn add_with_line(
        &self,
        t: &CurvePoint,
        point: &CurvePoint,
        xq: &BigUint,
        yq: &BigUint,
    ) -> (Option<Fp2>, CurvePoint) {
        let p = &self.p;
        match (t, point) {
            (CurvePoint::Infinity, _) => (None, point.clone()),
            (_, CurvePoint::Infinity) => (None, t.clone()),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                if x1 == x2 {
                    if *y1 == fp::neg_mod(y2, p) {
                        // T = −P: vertical chord.
                        return (None, CurvePoint::Infinity);
                    }
                    // T = P: the chord degenerates to the tangent.
                    return self.double_with_line(t, xq, yq);
                }
                let slope = fp::mul_mod(
                    &fp::sub_mod(y2, y1, p),
                    &fp::inv_mod_prime(&fp::sub_mod(x2, x1, p), p),
                    p,
                );
                let line = self.line_at_phi_q(x1, y1, &slope, xq, yq);
                (Some(line), self.add(t, point))
            }
        }
    }

    /// Value of the line through (x1, y1) with the given slope at
    /// φ(Q) = (−x_q, i·y_q): real part λ(x_q + x1) − y1, imaginary part y_q.
    fn line_at_phi_q(
        &self,
        x1: &BigUint,
        y1: &BigUint,
        slope: &BigUint,
        xq: &BigUint,
        yq: &BigUint,
    ) -> Fp2 {
        let p = &self.p;
        let real = fp::sub_mod(&fp::mul_mod(slope, &fp::add_mod(xq, x1, p), p), y1, p);
        Fp2::new(real, yq.clone())
    }

    /// z ↦ z^((p²−1)/N) computed as (conj(z)·z⁻¹)^h with h = (p+1)/N.
    fn final_exponentiation(&self, z: &Fp2) -> Fp2 {
        let p = &self.p;
        let w = z.conjugate(p).mul(&z.invert(p), p);
        w.pow(&self.cofactor, p)
    }
}
