use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussianRational, Poly, ScalarError};

/// A rational function in the parameter `a` with ℚ(i) coefficients.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, zero is `0/1`. Two
/// scalars are equal exactly when their representations are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    /// Builds the canonical form of `num / den`.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDivisor);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.leading().unwrap().inv().expect("den is nonzero");
            return Self {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let inv = den.leading().unwrap().inv().expect("den is nonzero");
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// `num / den` for a pair already known to be coprime; only the
    /// leading coefficient of `den` is normalized.
    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lead = den.leading().expect("den is nonzero").clone();
        if lead.is_one() {
            return Self { num, den };
        }
        let inv = lead.inv().expect("den is nonzero");
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::from_ratio(num, den))
    }

    pub fn i() -> Self {
        Self::constant(GaussianRational::i())
    }

    /// The formal parameter `a`.
    pub fn param() -> Self {
        Self::from_poly(Poly::param())
    }

    pub fn from_poly(num: Poly) -> Self {
        Self {
            num,
            den: Poly::one(),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    /// True when the value does not depend on the parameter.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The ℚ(i) value of a parameter-free scalar.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::ZeroDivisor);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `a := t`.
    pub fn eval(&self, t: &GaussianRational) -> Result<GaussianRational, ScalarError> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(ScalarError::Pole(t.to_string()));
        }
        Ok(&self.num.eval(t) / &d)
    }

    /// `eval`, lifted back into a (constant) scalar.
    pub fn specialize(&self, t: &GaussianRational) -> Result<Self, ScalarError> {
        if self.is_constant() {
            return Ok(self.clone());
        }
        self.eval(t).map(Self::constant)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Scalar {
    /// Writes the value so it can be juxtaposed with a following factor.
    pub(crate) fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_constant() {
            return c.fmt_factor(f);
        }
        if self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
            let s = self.num.to_string();
            if !s.starts_with('-') {
                return f.write_str(&s);
            }
        }
        write!(f, "({self})")
    }

    pub fn factor_string(&self) -> String {
        struct Factor<'a>(&'a Scalar);
        impl fmt::Display for Factor<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_factor(f)
            }
        }
        Factor(self).to_string()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, c, d) = (&self.num, &self.den, &rhs.num, &rhs.den);
        match (b.is_one(), d.is_one()) {
            (true, true) => return Scalar::from_poly(a + c),
            // a + c/d = (ad + c)/d is already in lowest terms
            (true, false) => return Scalar::canonical(&(a * d) + c, d.clone()),
            (false, true) => return Scalar::canonical(a + &(c * b), b.clone()),
            (false, false) => {}
        }
        if b == d {
            return Scalar::reduce(a + c, b.clone());
        }
        let g = b.gcd(d);
        if g.is_one() {
            return Scalar::canonical(&(a * d) + &(c * b), b * d);
        }
        let (b1, d1) = (b.exact_div(&g), d.exact_div(&g));
        let t = &(a * &d1) + &(c * &b1);
        if t.is_zero() {
            return Scalar::zero();
        }
        // t is coprime to b1 and d1, so only factors of g can cancel
        let g2 = t.gcd(&g);
        let den = &(&b1 * &d1) * &g.exact_div(&g2);
        Scalar::canonical(t.exact_div(&g2), den)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        if let Some(k) = self.as_constant() {
            return Scalar::canonical(rhs.num.scale(&k), rhs.den.clone());
        }
        if let Some(k) = rhs.as_constant() {
            return Scalar::canonical(self.num.scale(&k), self.den.clone());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        Scalar::canonical(
            &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2),
            &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1),
        )
    }
}

/// Panics on a zero divisor; use [`Scalar::checked_div`] otherwise.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("zero divisor")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);
