//! Exact arithmetic in the ring Z[1/n].
//!
//! A value is stored as `num / n^exp` in canonical form: `exp` is zero when
//! `num` is zero, and `n` does not divide `num` whenever `exp > 0`. For the
//! degenerate bases `n = 1` and `n = -1` the ring collapses to Z and `exp` is
//! always zero, so canonical values compare field-wise in every base.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The base `n` of Z[1/n], fixed for a computation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Base {
    n: i64,
    big: BigInt,
}

/// An element of Z[1/n]; the base is carried by the surrounding [`Base`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NAdic {
    num: BigInt,
    exp: u64,
}

impl NAdic {
    pub fn zero() -> Self {
        NAdic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    /// An integer value; integers are always canonical.
    pub fn from_int(v: impl Into<BigInt>) -> Self {
        NAdic {
            num: v.into(),
            exp: 0,
        }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn exp(&self) -> u64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn neg(&self) -> Self {
        NAdic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl Base {
    pub fn new(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroBase);
        }
        Ok(Base {
            n,
            big: BigInt::from(n),
        })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.big
    }

    /// `|n| = 1`, where Z[1/n] = Z.
    pub fn is_unit(&self) -> bool {
        self.n == 1 || self.n == -1
    }

    pub fn is_even(&self) -> bool {
        self.n % 2 == 0
    }

    /// `n^k` as an integer.
    pub fn pow(&self, k: u64) -> BigInt {
        match self.n {
            1 => BigInt::one(),
            -1 => {
                if k.is_multiple_of(2) {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }
            }
            _ => num_traits::pow::pow(self.big.clone(), to_usize(k)),
        }
    }

    /// `|n|^k` as an integer.
    pub fn abs_pow(&self, k: u64) -> BigInt {
        num_traits::pow::pow(self.big.abs(), to_usize(k))
    }

    /// The canonical representative of `num / n^exp`; a negative `exp`
    /// multiplies by `n^|exp|`.
    pub fn canonicalize(&self, num: BigInt, exp: i64) -> NAdic {
        if num.is_zero() {
            return NAdic::zero();
        }
        if exp < 0 {
            return NAdic {
                num: num * self.pow(exp.unsigned_abs()),
                exp: 0,
            };
        }
        let mut num = num;
        let mut exp = exp as u64;
        if self.is_unit() {
            // 1/n = n when n = -1
            if self.n == -1 && exp % 2 == 1 {
                num = -num;
            }
            return NAdic { num, exp: 0 };
        }
        while exp > 0 {
            let (q, r) = num.div_rem(&self.big);
            if !r.is_zero() {
                break;
            }
            num = q;
            exp -= 1;
        }
        NAdic { num, exp }
    }

    pub fn add(&self, x: &NAdic, y: &NAdic) -> NAdic {
        if x.is_zero() {
            return y.clone();
        }
        if y.is_zero() {
            return x.clone();
        }
        let exp = x.exp.max(y.exp);
        let xs = &x.num * self.pow(exp - x.exp);
        let ys = &y.num * self.pow(exp - y.exp);
        self.canonicalize(xs + ys, exp as i64)
    }

    pub fn sub(&self, x: &NAdic, y: &NAdic) -> NAdic {
        self.add(x, &y.neg())
    }

    pub fn mul(&self, x: &NAdic, y: &NAdic) -> NAdic {
        self.canonicalize(&x.num * &y.num, (x.exp + y.exp) as i64)
    }

    pub fn mul_int(&self, x: &NAdic, m: &BigInt) -> NAdic {
        self.canonicalize(&x.num * m, x.exp as i64)
    }

    /// `x * n^k`; `k` may be negative.
    pub fn scale_pow(&self, x: &NAdic, k: i64) -> NAdic {
        if x.is_zero() {
            return NAdic::zero();
        }
        if self.is_unit() {
            return if self.n == -1 && k.rem_euclid(2) == 1 {
                x.neg()
            } else {
                x.clone()
            };
        }
        self.canonicalize(x.num.clone(), x.exp as i64 - k)
    }

    /// `n^l * x` as an exact integer.
    pub fn to_integer(&self, x: &NAdic, l: u64) -> Result<BigInt> {
        if l < x.exp {
            return Err(Error::InsufficientClearing {
                exp: x.exp,
                power: l,
            });
        }
        Ok(&x.num * self.pow(l - x.exp))
    }

    /// `x / d` when the quotient lies in Z[1/n].
    pub fn div_int(&self, x: &NAdic, d: &BigInt) -> Option<NAdic> {
        if d.is_zero() {
            return None;
        }
        if x.is_zero() {
            return Some(NAdic::zero());
        }
        // d = d' * e with e | n^j; the quotient exists iff d' | num
        let mut scaled = x.num.clone();
        let mut extra = 0u64;
        let limit = d.bits() + 1;
        loop {
            let (q, r) = scaled.div_rem(d);
            if r.is_zero() {
                return Some(self.canonicalize(q, (x.exp + extra) as i64));
            }
            if self.is_unit() || extra >= limit {
                return None;
            }
            scaled *= &self.big;
            extra += 1;
        }
    }

    /// Strip from `m` every prime factor it shares with `n`.
    pub fn coprime_part(&self, m: &BigInt) -> BigInt {
        let mut m = m.abs();
        if m.is_zero() || self.is_unit() {
            return m;
        }
        loop {
            let g = m.gcd(&self.big);
            if g.is_one() {
                return m;
            }
            while (&m % &g).is_zero() {
                m /= &g;
            }
        }
    }

    /// `|x| < |n|^k`, exactly.
    pub fn abs_lt_pow(&self, x: &NAdic, k: u64) -> bool {
        x.num.abs() < self.abs_pow(k + x.exp)
    }

    /// Render as `num/n^exp`, or plain `num` for integers.
    pub fn render(&self, x: &NAdic) -> String {
        if x.exp == 0 {
            x.num.to_string()
        } else if self.n < 0 {
            format!("{}/({})^{}", x.num, self.n, x.exp)
        } else {
            format!("{}/{}^{}", x.num, self.n, x.exp)
        }
    }

    /// Inverse of [`Base::render`]; also accepts non-canonical input.
    pub fn parse(&self, text: &str) -> Result<NAdic> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::Syntax {
            pos: 0,
            msg: format!("{msg} in `{text}`"),
        };
        let (num_part, den_part) = match text.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (text.as_str(), None),
        };
        let num: BigInt = num_part.parse().map_err(|_| bad("bad numerator"))?;
        let exp = match den_part {
            None => 0,
            Some(den) => {
                let (b, e) = den.split_once('^').ok_or_else(|| bad("missing `^`"))?;
                let b = b.trim_start_matches('(').trim_end_matches(')');
                let b: i64 = b.parse().map_err(|_| bad("bad base"))?;
                if b != self.n {
                    return Err(bad(&format!("base {b} does not match n = {}", self.n)));
                }
                let e: i64 = e.parse().map_err(|_| bad("bad exponent"))?;
                e
            }
        };
        Ok(self.canonicalize(num, exp))
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

fn to_usize(k: u64) -> usize {
    usize::try_from(k).expect("exponent exceeds address space")
}
