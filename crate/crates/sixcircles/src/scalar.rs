//! Numeric tower: exact rationals plus configurable-precision binary floats.
//!
//! Every quantity in the pipeline is a [`Scalar`] carrying one of two
//! profiles. The EXACT profile is an arbitrary-precision rational and its
//! arithmetic is error-free. The APPROX profile is a binary float with a
//! mantissa of `w >= 53` bits, rounded to nearest-even; for a fixed width the
//! results are deterministic down to the bit. Mixing the profiles promotes
//! the exact side to the float side's width with correct rounding.
//!
//! Square roots and trigonometric values are irrational in general, so those
//! operations always land in the APPROX profile at an explicitly supplied
//! width. Conversions back to the EXACT profile are lossless: every finite
//! binary float is a rational number.

use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::{Complete, Float, Rational};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Mantissa width in bits for the APPROX profile. At least 53.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prec(u32);

impl Prec {
    /// IEEE double mantissa width; the default run precision.
    pub const DOUBLE: Prec = Prec(53);

    /// Creates a width. Widths below 53 bits are rejected.
    pub fn new(bits: u32) -> Option<Prec> {
        (bits >= 53).then_some(Prec(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `2^(-w + shift)` as an exact dyadic scalar; the building block for
    /// width-relative tolerances.
    pub fn eps(self, shift: i64) -> Scalar {
        Scalar::exact_pow2(shift - i64::from(self.0))
    }
}

impl fmt::Display for Prec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A real number under the EXACT or APPROX profile.
#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(Rational),
    Approx(Float),
}

use Scalar::{Approx, Exact};

impl Scalar {
    pub fn zero() -> Scalar {
        Exact(Rational::new())
    }

    pub fn one() -> Scalar {
        Exact(Rational::from(1))
    }

    pub fn from_int(v: i64) -> Scalar {
        Exact(Rational::from(v))
    }

    /// Exact ratio `num/den`; panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Exact(Rational::from((num, den)))
    }

    pub fn from_rational(q: Rational) -> Scalar {
        Exact(q)
    }

    /// The exact value of a finite `f64` (every finite float is rational).
    pub fn exact_from_f64(v: f64) -> Scalar {
        Exact(Rational::from_f64(v).expect("finite float"))
    }

    /// `2^e` as an exact rational.
    pub fn exact_pow2(e: i64) -> Scalar {
        let mut q = Rational::from(1);
        if e >= 0 {
            q <<= e as u32;
        } else {
            q >>= (-e) as u32;
        }
        Exact(q)
    }

    /// Rounds `v` into the APPROX profile at width `prec`.
    pub fn approx_from_f64(v: f64, prec: Prec) -> Scalar {
        Approx(Float::with_val(prec.bits(), v))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Exact(_))
    }

    /// Width of the APPROX payload, if any.
    pub fn prec(&self) -> Option<Prec> {
        match self {
            Exact(_) => None,
            Approx(f) => Some(Prec(f.prec())),
        }
    }

    /// Lossless conversion to a rational. Exact for both profiles.
    pub fn to_exact(&self) -> Rational {
        match self {
            Exact(q) => q.clone(),
            Approx(f) => {
                if f.is_zero() {
                    return Rational::new();
                }
                let (m, e) = f.to_integer_exp().expect("finite float");
                let mut q = Rational::from(m);
                if e >= 0 {
                    q <<= e as u32;
                } else {
                    q >>= (-e) as u32;
                }
                q
            }
        }
    }

    /// Correctly rounded conversion to the APPROX profile at width `prec`.
    /// An APPROX input already at that width passes through unchanged.
    pub fn to_approx(&self, prec: Prec) -> Float {
        match self {
            Exact(q) => Float::with_val(prec.bits(), q),
            Approx(f) => {
                if f.prec() == prec.bits() {
                    f.clone()
                } else {
                    Float::with_val(prec.bits(), f)
                }
            }
        }
    }

    /// The value moved into the APPROX profile at width `prec` (correctly
    /// rounded).
    pub fn round_to(&self, prec: Prec) -> Scalar {
        Approx(self.to_approx(prec))
    }

    /// Nearest `f64`.
    pub fn to_f64(&self) -> f64 {
        match self {
            Exact(q) => q.to_f64(),
            Approx(f) => f.to_f64(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn signum(&self) -> i8 {
        match self {
            Exact(q) => q.cmp0() as i8,
            Approx(f) => match f.cmp0() {
                Some(Ordering::Less) => -1,
                Some(Ordering::Equal) => 0,
                Some(Ordering::Greater) => 1,
                None => panic!("NaN scalar"),
            },
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Square root, always APPROX at width `prec`. The input must be
    /// non-negative.
    ///
    /// An exact input that fits a binary mantissa (in particular any dyadic
    /// rational, which covers squared distances of float coordinates) is
    /// rounded once, so the result is the correctly rounded square root of
    /// the exact operand.
    pub fn sqrt(&self, prec: Prec) -> Scalar {
        debug_assert!(!self.is_negative(), "sqrt of negative scalar");
        let f = match self {
            Exact(q) => {
                let need = exact_float_bits(q);
                let p = need.unwrap_or(0).max(prec.bits() + 64);
                Float::with_val(p, q)
            }
            Approx(f) => f.clone(),
        };
        Approx(f.sqrt_ref().complete(prec.bits()))
    }

    /// `atan2(y, x)` at width `prec`, in radians.
    pub fn atan2(y: &Scalar, x: &Scalar, prec: Prec) -> Scalar {
        let g = Prec(prec.bits() + 32);
        let fy = y.to_approx(g);
        let fx = x.to_approx(g);
        Approx(fy.atan2_ref(&fx).complete(prec.bits()))
    }

    pub fn cos(&self, prec: Prec) -> Scalar {
        let g = Prec(prec.bits() + 32);
        Approx(self.to_approx(g).cos_ref().complete(prec.bits()))
    }

    pub fn sin(&self, prec: Prec) -> Scalar {
        let g = Prec(prec.bits() + 32);
        Approx(self.to_approx(g).sin_ref().complete(prec.bits()))
    }

    pub fn tan(&self, prec: Prec) -> Scalar {
        let g = Prec(prec.bits() + 32);
        Approx(self.to_approx(g).tan_ref().complete(prec.bits()))
    }

    /// π at width `prec`.
    pub fn pi(prec: Prec) -> Scalar {
        Approx(Float::with_val(prec.bits(), Constant::Pi))
    }

    /// Total exact ordering across profiles (floats compare as the rationals
    /// they are). Panics on NaN, which the pipeline never constructs.
    pub fn cmp_scalar(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Exact(a), Exact(b)) => a.cmp(b),
            (Approx(a), Approx(b)) => a.partial_cmp(b).expect("NaN scalar"),
            (Exact(a), Approx(b)) => b.partial_cmp(a).expect("NaN scalar").reverse(),
            (Approx(a), Exact(b)) => a.partial_cmp(b).expect("NaN scalar"),
        }
    }

    /// `|a - b| / max(|a|, |b|)`, the relative residual used throughout the
    /// verification reports. Zero when both sides are exactly equal.
    pub fn rel_residual(a: &Scalar, b: &Scalar) -> Scalar {
        let diff = (a - b).abs();
        let scale = a.abs().max(b.abs());
        if scale.is_zero() {
            Scalar::zero()
        } else {
            diff / scale
        }
    }
}

/// Bits needed to hold `q` exactly in a binary mantissa, when a finite
/// representation exists (power-of-two denominator) and is reasonably small.
fn exact_float_bits(q: &Rational) -> Option<u32> {
    if q.denom().count_ones() != Some(1) {
        return None;
    }
    let bits = q.numer().significant_bits().max(1);
    (bits <= 16_384).then_some(bits)
}

impl Scalar {
    /// The value as a binary float without any rounding, when such a
    /// representation exists within `max_bits` of mantissa. APPROX values
    /// qualify as-is; EXACT values qualify when dyadic and small enough.
    pub(crate) fn as_exact_float(&self, max_bits: u32) -> Option<Float> {
        match self {
            Approx(f) => Some(f.clone()),
            Exact(q) => {
                let bits = exact_float_bits(q)?;
                (bits <= max_bits).then(|| Float::with_val(bits.max(2), q))
            }
        }
    }
}

/// The exact operand as a float for a mixed-profile operation: lossless for
/// dyadic rationals, correctly rounded at the float side's width otherwise.
fn mixed_operand(q: &Rational, float_width: u32) -> Float {
    match exact_float_bits(q) {
        Some(bits) if bits <= float_width.saturating_mul(2) + 64 => {
            Float::with_val(bits.max(2), q)
        }
        _ => Float::with_val(float_width, q),
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Exact(a), Exact(b)) => Exact(a.$method(b).complete()),
                    (Approx(a), Approx(b)) => {
                        let p = a.prec().max(b.prec());
                        Approx(a.$method(b).complete(p))
                    }
                    (Exact(a), Approx(b)) => {
                        let p = b.prec();
                        let fa = mixed_operand(a, p);
                        Approx((&fa).$method(b).complete(p))
                    }
                    (Approx(a), Exact(b)) => {
                        let p = a.prec();
                        let fb = mixed_operand(b, p);
                        Approx(a.$method(&fb).complete(p))
                    }
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        match (self, rhs) {
            (Exact(a), Exact(b)) => Exact(a.div(b).complete()),
            (Approx(a), Approx(b)) => {
                let p = a.prec().max(b.prec());
                Approx(a.div(b).complete(p))
            }
            (Exact(a), Approx(b)) => {
                let p = b.prec();
                let fa = mixed_operand(a, p);
                Approx((&fa).div(b).complete(p))
            }
            (Approx(a), Exact(b)) => {
                let p = a.prec();
                let fb = mixed_operand(b, p);
                Approx(a.div(&fb).complete(p))
            }
        }
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self) / (&rhs)
    }
}

impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        (&self) / rhs
    }
}

impl Div<Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self / (&rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Exact(q) => Exact(q.neg().complete()),
            Approx(f) => Approx(f.neg().complete(f.prec())),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        self.cmp_scalar(other) == Ordering::Equal
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Scalar) -> Option<Ordering> {
        Some(self.cmp_scalar(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact(q) => write!(f, "{}", q),
            Approx(x) => write!(f, "{}", x),
        }
    }
}

/// Exact square root of a rational, when it is a perfect square. Used by
/// tests and oracles.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.cmp0() == Ordering::Less {
        return None;
    }
    let sn = q.numer().sqrt_ref().complete();
    let sd = q.denom().sqrt_ref().complete();
    if (&sn * &sn).complete() == *q.numer() && (&sd * &sd).complete() == *q.denom() {
        Some(Rational::from((sn, sd)))
    } else {
        None
    }
}
