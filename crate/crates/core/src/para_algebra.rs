//! The algebra B = R + tau R with tau^2 = 1.
//!
//! Elements are stored in the basis (1, tau). The idempotents
//! e+ = (1 + tau)/2 and e- = (1 - tau)/2 split B as R x R, and most
//! operations are easiest there: `plus = re + im`, `minus = re - im`.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Component, Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ParaComplex {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Analytic {
    Cos,
    Cosh,
    Arccosh,
    Exp,
    Log,
    Sqrt,
}

impl Analytic {
    pub const ALL: [Analytic; 6] =
        [Analytic::Cos, Analytic::Cosh, Analytic::Arccosh, Analytic::Exp, Analytic::Log, Analytic::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Analytic::Cos => "cos",
            Analytic::Cosh => "cosh",
            Analytic::Arccosh => "arccosh",
            Analytic::Exp => "exp",
            Analytic::Log => "log",
            Analytic::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "cos" => Analytic::Cos,
            "cosh" => Analytic::Cosh,
            "arccosh" | "acosh" => Analytic::Arccosh,
            "exp" => Analytic::Exp,
            "log" | "ln" => Analytic::Log,
            "sqrt" => Analytic::Sqrt,
            _ => return None,
        })
    }

    /// Real function, or `None` outside its domain.
    pub fn eval_real(self, x: f64) -> Option<f64> {
        match self {
            Analytic::Cos => Some(libm::cos(x)),
            Analytic::Cosh => Some(libm::cosh(x)),
            Analytic::Exp => Some(libm::exp(x)),
            Analytic::Arccosh => (x >= 1.0).then(|| libm::acosh(x)),
            Analytic::Log => (x > 0.0).then(|| libm::log(x)),
            Analytic::Sqrt => (x > 0.0).then(|| libm::sqrt(x)),
        }
    }
}

impl ParaComplex {
    pub const ZERO: Self = Self { re: 0.0, im: 0.0 };
    pub const ONE: Self = Self { re: 1.0, im: 0.0 };
    pub const TAU: Self = Self { re: 0.0, im: 1.0 };
    pub const E_PLUS: Self = Self { re: 0.5, im: 0.5 };
    pub const E_MINUS: Self = Self { re: 0.5, im: -0.5 };

    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn from_idempotent(plus: f64, minus: f64) -> Self {
        Self { re: 0.5 * (plus + minus), im: 0.5 * (plus - minus) }
    }

    #[inline]
    pub fn plus(self) -> f64 {
        self.re + self.im
    }

    #[inline]
    pub fn minus(self) -> f64 {
        self.re - self.im
    }

    pub fn conj(self) -> Self {
        Self { re: self.re, im: -self.im }
    }

    pub fn sq_norm(self) -> f64 {
        self.re * self.re - self.im * self.im
    }

    pub fn is_invertible(self) -> bool {
        self.plus() != 0.0 && self.minus() != 0.0
    }

    pub fn inv(self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::DivisionByZeroDivisor);
        }
        Ok(Self::from_idempotent(1.0 / self.plus(), 1.0 / self.minus()))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if !rhs.is_invertible() {
            return Err(Error::DivisionByZeroDivisor);
        }
        Ok(Self::from_idempotent(self.plus() / rhs.plus(), self.minus() / rhs.minus()))
    }

    pub fn scale(self, s: f64) -> Self {
        Self { re: s * self.re, im: s * self.im }
    }

    pub fn analytic(self, f: Analytic) -> Result<Self> {
        b_analytic(f, self)
    }

    pub fn cos(self) -> Self {
        Self::from_idempotent(libm::cos(self.plus()), libm::cos(self.minus()))
    }
}

pub fn b_arith(x: ParaComplex, y: ParaComplex, op: ArithOp) -> Result<ParaComplex> {
    match op {
        ArithOp::Add => Ok(x + y),
        ArithOp::Sub => Ok(x - y),
        ArithOp::Mul => Ok(x * y),
        ArithOp::Div => x.checked_div(y),
    }
}

pub fn b_sq_norm(x: ParaComplex) -> f64 {
    x.sq_norm()
}

/// `f(x.plus) e+ + f(x.minus) e-`.
pub fn b_analytic(f: Analytic, x: ParaComplex) -> Result<ParaComplex> {
    let p = x.plus();
    let m = x.minus();
    let fp = f.eval_real(p).ok_or(Error::DomainError {
        function: f.name(),
        component: Component::Plus,
        value: p,
    })?;
    let fm = f.eval_real(m).ok_or(Error::DomainError {
        function: f.name(),
        component: Component::Minus,
        value: m,
    })?;
    Ok(ParaComplex::from_idempotent(fp, fm))
}

impl Add for ParaComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ParaComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for ParaComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self { re: self.re * rhs.re + self.im * rhs.im, im: self.re * rhs.im + self.im * rhs.re }
    }
}

impl Mul<f64> for ParaComplex {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

/// Panics on a zero divisor; use [`ParaComplex::checked_div`] otherwise.
impl Div for ParaComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(rhs).expect("division by a zero divisor")
    }
}

impl Neg for ParaComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl From<f64> for ParaComplex {
    fn from(re: f64) -> Self {
        Self { re, im: 0.0 }
    }
}

impl core::fmt::Display for ParaComplex {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.im < 0.0 {
            write!(f, "{} - {}τ", self.re, -self.im)
        } else {
            write!(f, "{} + {}τ", self.re, self.im)
        }
    }
}
