//! Software extended-precision arithmetic: double-double numbers built from
//! error-free transformations, giving roughly 32 significant decimal digits
//! (a 106-bit significand) without hardware support beyond ordinary 64-bit
//! floats.
//!
//! Used as the high-precision reference path by the experiment modules when
//! the policy is `PrecisionSpec::Extended`.

use crate::error::{Error, Result};

/// Largest angle magnitude accepted by [`sincos`]; beyond this the
/// three-term reduction of pi/2 no longer carries enough slack.
pub const SINCOS_WINDOW: f64 = std::f64::consts::TAU * 1.0e4;

// ---------------------------------------------------------------------------
// Error-free transformations
// ---------------------------------------------------------------------------

/// Error-free addition: `s = fl(a + b)` and `s + e == a + b` exactly.
pub fn two_sum(a: f64, b: f64) -> Result<(f64, f64)> {
    debug_assert!(a.is_finite() && b.is_finite());
    let (s, e) = two_sum_raw(a, b);
    if s.is_finite() {
        Ok((s, e))
    } else {
        Err(Error::Overflow { step: 0 })
    }
}

/// Error-free multiplication: `p = fl(a * b)` and `p + e == a * b` exactly.
///
/// Fails when the product overflows, or lands in the subnormal range where
/// the error term can no longer be represented.
pub fn two_prod(a: f64, b: f64) -> Result<(f64, f64)> {
    debug_assert!(a.is_finite() && b.is_finite());
    let (p, e) = two_prod_raw(a, b);
    if !p.is_finite() || e.is_nan() {
        return Err(Error::Overflow { step: 0 });
    }
    if a != 0.0 && b != 0.0 && (p == 0.0 || p.is_subnormal()) {
        return Err(Error::Overflow { step: 0 });
    }
    Ok((p, e))
}

/// Knuth's branch-free two-sum.
#[inline]
fn two_sum_raw(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Two-sum that assumes |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[cfg(target_feature = "fma")]
#[inline]
fn two_prod_raw(a: f64, b: f64) -> (f64, f64) {
    two_prod_fma(a, b)
}

#[cfg(not(target_feature = "fma"))]
#[inline]
fn two_prod_raw(a: f64, b: f64) -> (f64, f64) {
    two_prod_split(a, b)
}

/// Product and residual through a fused multiply-add. Exact whenever the
/// platform provides `fma` (in hardware or as a correctly-rounded call).
#[inline]
pub(crate) fn two_prod_fma(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

/// Dekker's splitting variant: no fused multiply-add required.
///
/// The splitter multiplication overflows for |operand| >= 2^996 even when
/// the product itself is harmless; those magnitudes fall back to the
/// (exact, software) fused multiply-add.
#[inline]
pub(crate) fn two_prod_split(a: f64, b: f64) -> (f64, f64) {
    const SPLIT_LIMIT: f64 = 6.696928794914171e299; // 2^996
    if a.abs() >= SPLIT_LIMIT || b.abs() >= SPLIT_LIMIT {
        return two_prod_fma(a, b);
    }
    let p = a * b;
    let (ah, al) = veltkamp_split(a);
    let (bh, bl) = veltkamp_split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

/// Splits a float into high and low halves of at most 26 bits each.
#[inline]
fn veltkamp_split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

// ---------------------------------------------------------------------------
// DoubleDouble
// ---------------------------------------------------------------------------

/// An unevaluated sum `hi + lo` of two floats with `hi = fl(hi + lo)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[allow(clippy::should_implement_trait)] // operator traits forward to these
impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    /// Builds from raw bit patterns; used for precomputed constants.
    pub const fn from_bits(hi: u64, lo: u64) -> Self {
        DoubleDouble {
            hi: f64::from_bits(hi),
            lo: f64::from_bits(lo),
        }
    }

    /// Renormalizing constructor.
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum_raw(hi, lo);
        DoubleDouble { hi: h, lo: l }
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Narrows to the nearest native float.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    /// Accurate double-double addition (error within a few units of 2^-106).
    #[inline]
    pub fn add(self, other: Self) -> Self {
        let (sh, sl) = two_sum_raw(self.hi, other.hi);
        let (th, tl) = two_sum_raw(self.lo, other.lo);
        let (vh, vl) = quick_two_sum(sh, sl + th);
        let (zh, zl) = quick_two_sum(vh, tl + vl);
        DoubleDouble { hi: zh, lo: zl }
    }

    #[inline]
    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Self) -> Self {
        let (ph, pl) = two_prod_raw(self.hi, other.hi);
        let t = self.hi * other.lo + self.lo * other.hi + pl;
        let (zh, zl) = quick_two_sum(ph, t);
        DoubleDouble { hi: zh, lo: zl }
    }

    #[inline]
    pub fn mul_f64(self, other: f64) -> Self {
        let (ph, pl) = two_prod_raw(self.hi, other);
        let (zh, zl) = quick_two_sum(ph, self.lo * other + pl);
        DoubleDouble { hi: zh, lo: zl }
    }

    /// Long division with two refinement terms.
    pub fn div(self, other: Self) -> Self {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (h, l) = quick_two_sum(q1, q2);
        DoubleDouble::new(h, l + q3)
    }

    pub fn div_f64(self, other: f64) -> Self {
        self.div(DoubleDouble::from(other))
    }

    /// Square root by Newton refinement of the native estimate.
    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return DoubleDouble::ZERO;
        }
        let x = self.hi.sqrt();
        let y = DoubleDouble::from(x);
        let y2 = y.mul(y);
        let err = self.sub(y2);
        let dx = err.hi / (2.0 * x);
        let refined = y.add(DoubleDouble::from(dx));
        // second pass tightens the low word to full double-double accuracy
        let y2 = refined.mul(refined);
        let err = self.sub(y2);
        let dx = err.hi / (2.0 * refined.hi);
        refined.add(DoubleDouble::from(dx))
    }

    /// Checks the non-overlap invariant `hi = fl(hi + lo)`.
    pub fn is_normalized(&self) -> bool {
        let (h, _) = two_sum_raw(self.hi, self.lo);
        h == self.hi || (h.is_nan() && self.hi.is_nan())
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }
}

impl std::ops::Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        DoubleDouble::add(self, rhs)
    }
}

impl std::ops::Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        DoubleDouble::sub(self, rhs)
    }
}

impl std::ops::Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        DoubleDouble::mul(self, rhs)
    }
}

impl std::ops::Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        DoubleDouble::div(self, rhs)
    }
}

impl std::ops::Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Constants (generated with 400-bit arithmetic, stored as bit patterns)
// ---------------------------------------------------------------------------

/// pi.
pub const PI: DoubleDouble = DoubleDouble::from_bits(0x400921fb54442d18, 0x3ca1a62633145c07);

/// pi / 2.
pub const PI_OVER_2: DoubleDouble = DoubleDouble::from_bits(0x3ff921fb54442d18, 0x3c91a62633145c07);

/// pi / 180.
pub const DEG_TO_RAD: DoubleDouble =
    DoubleDouble::from_bits(0x3f91df46a2529d39, 0x3c15c1d8becdd291);

/// pi/2 as three non-overlapping floats (about 160 significant bits),
/// consumed by the argument reduction.
const PI_OVER_2_EXT: [f64; 3] = [
    f64::from_bits(0x3ff921fb54442d18),
    f64::from_bits(0x3c91a62633145c07),
    f64::from_bits(0xb91f1976b7ed8fbc),
];

/// Coefficients of `sin(x)/x = 1 + sum s_k x^(2k)`, k = 1..=15.
const SIN_COEFFS: [DoubleDouble; 15] = [
    DoubleDouble::from_bits(0xbfc5555555555555, 0xbc65555555555555), // -1/3!
    DoubleDouble::from_bits(0x3f81111111111111, 0x3c01111111111111), // 1/5!
    DoubleDouble::from_bits(0xbf2a01a01a01a01a, 0xbb6a01a01a01a01a), // -1/7!
    DoubleDouble::from_bits(0x3ec71de3a556c734, 0xbb6c154f8ddc6c00), // 1/9!
    DoubleDouble::from_bits(0xbe5ae64567f544e4, 0x3afc062e06d1f209), // -1/11!
    DoubleDouble::from_bits(0x3de6124613a86d09, 0x3a8f28e0cc748ebe), // 1/13!
    DoubleDouble::from_bits(0xbd6ae7f3e733b81f, 0xb9e1d8656b0ee8cb), // -1/15!
    DoubleDouble::from_bits(0x3ce952c77030ad4a, 0x398ac981465ddc6c), // 1/17!
    DoubleDouble::from_bits(0xbc62f49b46814157, 0xb8f2650f61dbdcb4), // -1/19!
    DoubleDouble::from_bits(0x3bd71b8ef6dcf572, 0xb87d043ae40c4647), // 1/21!
    DoubleDouble::from_bits(0xbb4761b41316381a, 0x37d3423c7d91404f), // -1/23!
    DoubleDouble::from_bits(0x3ab3f3ccdd165fa9, 0xb7458ddadf344487), // 1/25!
    DoubleDouble::from_bits(0xba1d1ab1c2dccea3, 0xb6a054d0c78aea14), // -1/27!
    DoubleDouble::from_bits(0x398259f98b4358ad, 0x362eaf8c39dd9bc5), // 1/29!
    DoubleDouble::from_bits(0xb8e434d2e783f5bc, 0xb580b87b91be9aff), // -1/31!
];

/// Coefficients of `cos(x) = 1 + sum c_k x^(2k)`, k = 1..=15.
const COS_COEFFS: [DoubleDouble; 15] = [
    DoubleDouble::from_bits(0xbfe0000000000000, 0x0000000000000000), // -1/2!
    DoubleDouble::from_bits(0x3fa5555555555555, 0x3c45555555555555), // 1/4!
    DoubleDouble::from_bits(0xbf56c16c16c16c17, 0x3bef49f49f49f49f), // -1/6!
    DoubleDouble::from_bits(0x3efa01a01a01a01a, 0x3b3a01a01a01a01a), // 1/8!
    DoubleDouble::from_bits(0xbe927e4fb7789f5c, 0xbb3cbbc05b4fa99a), // -1/10!
    DoubleDouble::from_bits(0x3e21eed8eff8d898, 0xbac2aec959e14c06), // 1/12!
    DoubleDouble::from_bits(0xbda93974a8c07c9d, 0xba305d6f8a2efd1f), // -1/14!
    DoubleDouble::from_bits(0x3d2ae7f3e733b81f, 0x39a1d8656b0ee8cb), // 1/16!
    DoubleDouble::from_bits(0xbca6827863b97d97, 0xb94eec01221a8b0b), // -1/18!
    DoubleDouble::from_bits(0x3c1e542ba4020225, 0x387ea72b4afe3c2f), // 1/20!
    DoubleDouble::from_bits(0xbb90ce396db7f853, 0x383aebcdbd20331c), // -1/22!
    DoubleDouble::from_bits(0x3aff2cf01972f578, 0xb789ada5fcc1ab14), // 1/24!
    DoubleDouble::from_bits(0xba688e85fc6a4e5a, 0x37071c37ebd16540), // -1/26!
    DoubleDouble::from_bits(0x39d0a18a2635085d, 0x366b9e2e28e1aa54), // 1/28!
    DoubleDouble::from_bits(0xb933932c5047d60e, 0xb5d832b7b530a627), // -1/30!
];

// ---------------------------------------------------------------------------
// sincos
// ---------------------------------------------------------------------------

/// Double-double sine and cosine of `theta` radians.
///
/// The argument is reduced modulo pi/2 against the three-term constant, and
/// the residual (|r| <= pi/4) is fed to Taylor polynomials evaluated in
/// double-double. Valid for `|theta| <= 2 * pi * 10^4`.
pub fn sincos(theta: DoubleDouble) -> Result<(DoubleDouble, DoubleDouble)> {
    let t = theta.to_f64();
    if !t.is_finite() {
        return Err(Error::NonFinite(t));
    }
    if t.abs() > SINCOS_WINDOW {
        return Err(Error::Parameter(format!(
            "angle {t} outside the reduction window (|theta| <= {SINCOS_WINDOW})"
        )));
    }

    let k = (t / std::f64::consts::FRAC_PI_2).round();
    let mut r = theta;
    for (i, &part) in PI_OVER_2_EXT.iter().enumerate() {
        if i < 2 {
            let (p, e) = two_prod_raw(k, part);
            r = r.sub(DoubleDouble::new(p, e));
        } else {
            r = r.sub(DoubleDouble::from(k * part));
        }
    }

    let (sin_r, cos_r) = sincos_reduced(r);
    let quadrant = (k as i64).rem_euclid(4);
    Ok(match quadrant {
        0 => (sin_r, cos_r),
        1 => (cos_r, sin_r.neg()),
        2 => (sin_r.neg(), cos_r.neg()),
        _ => (cos_r.neg(), sin_r),
    })
}

/// Taylor evaluation for |r| <= pi/4.
fn sincos_reduced(r: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let x2 = r.mul(r);

    let mut ps = SIN_COEFFS[14];
    for k in (0..14).rev() {
        ps = ps.mul(x2).add(SIN_COEFFS[k]);
    }
    let sin = r.mul(DoubleDouble::ONE.add(x2.mul(ps)));

    let mut pc = COS_COEFFS[14];
    for k in (0..14).rev() {
        pc = pc.mul(x2).add(COS_COEFFS[k]);
    }
    let cos = DoubleDouble::ONE.add(x2.mul(pc));

    (sin, cos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dyadic_oracle::{exact_add, exact_mul, exact_pair, Dyadic};

    #[test]
    fn two_sum_spec_examples() {
        let tiny = (2.0f64).powi(-60);
        assert_eq!(two_sum(1.0, tiny).unwrap(), (1.0, tiny));
        assert_eq!(two_sum(1.0, 1.0).unwrap(), (2.0, 0.0));
        let (s, e) = two_sum(0.1, 0.2).unwrap();
        assert!(exact_add(s, e).eq_value(&exact_add(0.1, 0.2)));
    }

    #[test]
    fn two_prod_spec_examples() {
        for &x in &[3.7, -1e100, 0.125] {
            assert_eq!(two_prod(1.0, x).unwrap(), (x, 0.0));
        }
        assert_eq!(two_prod(0.0, 12345.678).unwrap(), (0.0, 0.0));
        let big = (1u64 << 27) as f64 + 1.0;
        let (p, e) = two_prod(big, big).unwrap();
        assert_eq!(p, ((1u128 << 54) + (1u128 << 28)) as f64);
        assert_eq!(e, 1.0);
        assert!(exact_pair(p, e).eq_value(&exact_mul(big, big)));
    }

    #[test]
    fn two_prod_both_paths_are_exact() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            // map to a float in about [-1e3, 1e3]
            ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 2.0e3
        };
        for _ in 0..5000 {
            let (a, b) = (next(), next());
            let exact = exact_mul(a, b);
            let (p1, e1) = two_prod_fma(a, b);
            let (p2, e2) = two_prod_split(a, b);
            assert!(exact_pair(p1, e1).eq_value(&exact), "fma path a={a} b={b}");
            assert!(
                exact_pair(p2, e2).eq_value(&exact),
                "split path a={a} b={b}"
            );
            assert_eq!(p1, p2);
        }
    }

    #[test]
    fn two_sum_range_error_on_overflow() {
        assert!(two_sum(f64::MAX, f64::MAX).is_err());
        assert!(two_prod(1e200, 1e200).is_err());
        assert!(two_prod(1e-200, 1e-200).is_err());
    }

    #[test]
    fn two_prod_handles_extreme_operands_with_sane_products() {
        // operands beyond the Dekker splitter's range, products near 1
        let (p, e) = two_prod(1e290, 1e-290).unwrap();
        assert!(exact_pair(p, e).eq_value(&exact_mul(1e290, 1e-290)));
        let big = (2.0f64).powi(600);
        let (p, e) = two_prod(big, 1.0 / big).unwrap();
        assert_eq!((p, e), (1.0, 0.0));
        let (p, e) = two_prod_split(-8.5e300, 3.25e-299);
        assert!(exact_pair(p, e).eq_value(&exact_mul(-8.5e300, 3.25e-299)));
    }

    #[test]
    fn dd_identities() {
        let one = DoubleDouble::from(1.0);
        let r = one.add(DoubleDouble::ZERO);
        assert_eq!((r.hi(), r.lo()), (1.0, 0.0));
        assert_eq!(DoubleDouble::from(7.5).to_f64(), 7.5);
    }

    #[test]
    fn sqrt_two_squared_is_two() {
        let sqrt2 = DoubleDouble::from(2.0).sqrt();
        let prod = sqrt2.mul(sqrt2);
        let err = prod.sub(DoubleDouble::from(2.0));
        assert!(
            err.to_f64().abs() < (2.0f64).powi(-100),
            "residual {}",
            err.to_f64()
        );
    }

    #[test]
    fn dd_mul_matches_oracle() {
        let a = DoubleDouble::from(0.1);
        let b = DoubleDouble::from(10.0);
        let prod = a.mul(b);
        let exact = exact_mul(0.1, 10.0);
        let diff = exact_pair(prod.hi(), prod.lo()).sub(&exact).abs();
        assert!(diff.abs_le(&Dyadic::pow2(-104)));
    }

    #[test]
    fn operations_keep_the_invariant() {
        let a = DoubleDouble::from(std::f64::consts::PI).div_f64(7.0);
        let b = DoubleDouble::from(0.1).mul_f64(3.0);
        for v in [a.add(b), a.sub(b), a.mul(b), a.div(b), a.sqrt()] {
            assert!(v.is_normalized(), "{v:?}");
        }
    }

    #[test]
    fn sincos_at_zero_and_quadrants() {
        let (s, c) = sincos(DoubleDouble::ZERO).unwrap();
        assert_eq!((s.hi(), s.lo()), (0.0, 0.0));
        assert_eq!((c.hi(), c.lo()), (1.0, 0.0));

        let tol = (2.0f64).powi(-98);
        let (s, c) = sincos(PI_OVER_2).unwrap();
        assert!((s.to_f64() - 1.0).abs() < tol);
        assert!(c.to_f64().abs() < tol);

        let quarter = PI.div_f64(4.0);
        let (s, _) = sincos(quarter).unwrap();
        let sqrt2_over_2 = DoubleDouble::from(2.0).sqrt().div_f64(2.0);
        assert!(s.sub(sqrt2_over_2).to_f64().abs() < tol);
    }

    #[test]
    fn sincos_against_reference() {
        // Random angles across the reduction window, checked to 8 units of
        // the double-double last place (2^-105 relative, plus series slack).
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 2.0 * SINCOS_WINDOW
        };
        for _ in 0..200 {
            let theta = next();
            let dd = DoubleDouble::from(theta);
            let (s, c) = sincos(dd).unwrap();
            let (rs, rc) = dyadic_oracle::sincos(&Dyadic::from_f64(theta));
            for (got, want) in [(s, rs), (c, rc)] {
                let diff = exact_pair(got.hi(), got.lo()).sub(&want).abs();
                // 8 dd ulps relative, with an absolute floor near zeros
                let bound = want.abs().mul(&Dyadic::pow2(-102)).add(&Dyadic::pow2(-140));
                assert!(diff.abs_le(&bound), "theta = {theta}");
            }
        }
    }

    #[test]
    fn sincos_window_enforced() {
        let theta = DoubleDouble::from(SINCOS_WINDOW * 1.01);
        assert!(matches!(sincos(theta), Err(Error::Parameter(_))));
    }

    #[test]
    fn pythagorean_identity_random_angles() {
        let tol = (2.0f64).powi(-98);
        let mut state = 0x13198a2e03707344u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 2.0 * SINCOS_WINDOW
        };
        for _ in 0..10_000 {
            let (s, c) = sincos(DoubleDouble::from(next())).unwrap();
            let sum = s.mul(s).add(c.mul(c));
            let resid = sum.sub(DoubleDouble::ONE).to_f64().abs();
            assert!(resid < tol, "residual {resid}");
        }
    }

    #[test]
    fn commutativity_is_bit_exact() {
        let pairs = [
            (
                DoubleDouble::from(0.1).div_f64(3.0),
                DoubleDouble::from(7.3),
            ),
            (PI, DEG_TO_RAD),
            (
                DoubleDouble::from(-2.5e10),
                DoubleDouble::from(1.0).div_f64(7.0),
            ),
        ];
        for (a, b) in pairs {
            let ab = a.add(b);
            let ba = b.add(a);
            assert_eq!(
                (ab.hi().to_bits(), ab.lo().to_bits()),
                (ba.hi().to_bits(), ba.lo().to_bits())
            );
            let ab = a.mul(b);
            let ba = b.mul(a);
            assert_eq!(
                (ab.hi().to_bits(), ab.lo().to_bits()),
                (ba.hi().to_bits(), ba.lo().to_bits())
            );
        }
    }

    #[test]
    fn pi_constants_consistent() {
        assert_eq!(PI.to_f64(), std::f64::consts::PI);
        let half = PI.div_f64(2.0);
        assert!(half.sub(PI_OVER_2).to_f64().abs() < 1e-32);
        let deg = PI.div_f64(180.0);
        assert!(deg.sub(DEG_TO_RAD).to_f64().abs() < 1e-34);
    }
}
