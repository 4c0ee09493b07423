use super::{int, rational_sqrt, ExactError, Poly, Rational};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Name of the expansion variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    /// Face weight.
    G,
    /// `t = g^2`.
    T,
    /// Auxiliary parametrization variable.
    X,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::G => "g",
            Var::T => "t",
            Var::X => "x",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Truncated Laurent series `sum_{n=val}^{order} c_n v^n + O(v^{order+1})`.
///
/// `coeffs[i]` is the coefficient of `v^(val+i)`. Binary operations keep the
/// smallest order that is fully determined by the operands; nothing is ever
/// extended implicitly.
#[derive(Clone, Debug)]
pub struct GSeries {
    var: Var,
    val: i64,
    order: i64,
    coeffs: Vec<Rational>,
}

impl GSeries {
    /// Power series with coefficients listed from `v^0`, known through `v^order`.
    pub fn new(var: Var, coeffs: Vec<Rational>, order: i64) -> Self {
        Self::laurent(var, 0, coeffs, order)
    }

    /// Series whose first stored coefficient sits at `v^val`.
    pub fn laurent(var: Var, val: i64, mut coeffs: Vec<Rational>, order: i64) -> Self {
        if order < val {
            return Self::zero_laurent(var, order);
        }
        let len = (order - val + 1) as usize;
        coeffs.resize(len, Rational::zero());
        GSeries {
            var,
            val,
            order,
            coeffs,
        }
    }

    pub fn from_ints(var: Var, c: &[i64], order: i64) -> Self {
        Self::new(var, c.iter().map(|&v| int(v)).collect(), order)
    }

    pub fn from_poly(var: Var, p: &Poly, order: i64) -> Self {
        Self::new(var, p.coeffs().to_vec(), order)
    }

    pub fn zero(var: Var, order: i64) -> Self {
        Self::new(var, Vec::new(), order)
    }

    fn zero_laurent(var: Var, order: i64) -> Self {
        GSeries {
            var,
            val: order + 1,
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(var: Var, c: Rational, order: i64) -> Self {
        Self::new(var, vec![c], order)
    }

    pub fn one(var: Var, order: i64) -> Self {
        Self::constant(var, Rational::one(), order)
    }

    /// `c * v^e`.
    pub fn monomial(var: Var, c: Rational, e: i64, order: i64) -> Self {
        Self::laurent(var, e, vec![c], order)
    }

    /// The variable itself.
    pub fn variable(var: Var, order: i64) -> Self {
        Self::monomial(var, Rational::one(), 1, order)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Index of the first stored coefficient.
    pub fn offset(&self) -> i64 {
        self.val
    }

    /// Coefficient of `v^n`; panics above the stored order.
    pub fn coeff(&self, n: i64) -> Rational {
        assert!(n <= self.order, "coefficient {n} beyond order {}", self.order);
        if n < self.val {
            Rational::zero()
        } else {
            self.coeffs[(n - self.val) as usize].clone()
        }
    }

    /// Coefficients of `v^0..=v^order`; panics if the series has negative powers.
    pub fn coeffs_from_zero(&self) -> Vec<Rational> {
        assert!(self.valuation().map_or(true, |v| v >= 0), "series has a pole");
        (0..=self.order).map(|n| self.coeff(n)).collect()
    }

    /// True valuation, `None` when zero to stored order.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.val + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// Same series with leading zero coefficients dropped.
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            None => Self::zero_laurent(self.var, self.order),
            Some(v) => GSeries {
                var: self.var,
                val: v,
                order: self.order,
                coeffs: self.coeffs[(v - self.val) as usize..].to_vec(),
            },
        }
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        if order < self.val {
            return Self::zero_laurent(self.var, order);
        }
        let mut c = self.coeffs.clone();
        c.truncate((order - self.val + 1) as usize);
        GSeries {
            var: self.var,
            val: self.val,
            order,
            coeffs: c,
        }
    }

    /// Relabels the variable.
    pub fn with_var(&self, var: Var) -> Self {
        GSeries { var, ..self.clone() }
    }

    /// Multiplies by `v^e`.
    pub fn shift(&self, e: i64) -> Self {
        GSeries {
            var: self.var,
            val: self.val + e,
            order: self.order + e,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        GSeries {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    fn check_var(&self, o: &GSeries) -> Result<(), ExactError> {
        if self.var != o.var {
            Err(ExactError::VarMismatch(self.var, o.var))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &GSeries) -> Result<GSeries, ExactError> {
        self.check_var(o)?;
        let val = self.val.min(o.val);
        let order = self.order.min(o.order);
        if order < val {
            return Ok(Self::zero_laurent(self.var, order));
        }
        let coeffs = (val..=order).map(|n| self.coeff(n) + o.coeff(n)).collect();
        Ok(GSeries {
            var: self.var,
            val,
            order,
            coeffs,
        })
    }

    pub fn try_sub(&self, o: &GSeries) -> Result<GSeries, ExactError> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &GSeries) -> Result<GSeries, ExactError> {
        self.check_var(o)?;
        let a = self.normalized();
        let b = o.normalized();
        let val = a.val + b.val;
        let order = (a.order + b.val).min(b.order + a.val);
        if order < val {
            return Ok(Self::zero_laurent(self.var, order));
        }
        let len = (order - val + 1) as usize;
        let mut c = vec![Rational::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                c[i + j] += x * y;
            }
        }
        Ok(GSeries {
            var: self.var,
            val,
            order,
            coeffs: c,
        })
    }

    pub fn inv(&self) -> Result<GSeries, ExactError> {
        let a = self.normalized();
        if a.coeffs.is_empty() {
            return Err(ExactError::DivisionByZero);
        }
        let r = a.order - a.val;
        let inv0 = Rational::one() / &a.coeffs[0];
        let mut b: Vec<Rational> = Vec::with_capacity(r as usize + 1);
        b.push(inv0.clone());
        for m in 1..=r as usize {
            let mut s = Rational::zero();
            for k in 1..=m {
                s += &a.coeffs[k] * &b[m - k];
            }
            b.push(-s * &inv0);
        }
        Ok(GSeries {
            var: a.var,
            val: -a.val,
            order: -a.val + r,
            coeffs: b,
        })
    }

    pub fn try_div(&self, o: &GSeries) -> Result<GSeries, ExactError> {
        self.check_var(o)?;
        self.try_mul(&o.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<GSeries, ExactError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        if n == 0 {
            let v = self.valuation().unwrap_or(self.order + 1);
            return Ok(GSeries::one(self.var, (self.order - v).max(0)));
        }
        let mut result: Option<GSeries> = None;
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.try_mul(&base)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result.expect("n > 0"))
    }

    /// `f^(p/q)` for a power series with constant term 1.
    pub fn pow_ratio(&self, p: i64, q: i64) -> Result<GSeries, ExactError> {
        let f = self.normalized();
        if f.val != 0 || !f.coeffs[0].is_one() {
            return Err(ExactError::NeedsUnitConstant);
        }
        let r = Rational::new(p.into(), q.into());
        let n_max = f.order as usize;
        let mut y: Vec<Rational> = vec![Rational::one()];
        for n in 1..=n_max {
            let mut s = Rational::zero();
            for k in 1..=n {
                if f.coeffs[k].is_zero() {
                    continue;
                }
                let w = &r * int(k as i64) + int(k as i64 - n as i64);
                s += w * &f.coeffs[k] * &y[n - k];
            }
            y.push(s / int(n as i64));
        }
        Ok(GSeries::new(f.var, y, f.order))
    }

    /// Square root with positive leading coefficient.
    pub fn sqrt(&self) -> Result<GSeries, ExactError> {
        let f = self.normalized();
        if f.coeffs.is_empty() {
            return Err(ExactError::DivisionByZero);
        }
        let v = f.val;
        let c0 = f.coeffs[0].clone();
        if v % 2 != 0 {
            return Err(ExactError::NotASquare(c0));
        }
        let s0 = rational_sqrt(&c0).ok_or_else(|| ExactError::NotASquare(c0.clone()))?;
        let unit = f.shift(-v).scale(&(Rational::one() / &c0));
        Ok(unit.pow_ratio(1, 2)?.scale(&s0).shift(v / 2))
    }

    pub fn derivative(&self) -> GSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * int(self.val + i as i64))
            .collect();
        let d = GSeries {
            var: self.var,
            val: self.val - 1,
            order: self.order - 1,
            coeffs,
        };
        d.normalized()
    }

    /// `self(inner(v))`; `inner` must have positive valuation.
    pub fn compose(&self, inner: &GSeries) -> Result<GSeries, ExactError> {
        let h = inner.normalized();
        let vi = match h.valuation() {
            Some(v) if v >= 1 => v,
            _ => return Err(ExactError::NotReversible),
        };
        let f = self.normalized();
        let s = f.val.min(0);
        let p = f.shift(-s);
        let op = p.order;
        let target = (vi * (op + 1) - 1).min(h.order);
        let mut acc = GSeries::zero(h.var, target);
        for n in (0..=op).rev() {
            acc = acc.try_mul(&h)?.truncate(target);
            acc = acc.try_add(&GSeries::constant(h.var, p.coeff(n), target))?;
        }
        if s < 0 {
            acc = acc.try_mul(&h.pow(s)?)?;
        }
        Ok(acc)
    }

    /// Value of the series at a float, treating it as a polynomial.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| super::to_f64(c) * x.powi((self.val + i as i64) as i32))
            .sum()
    }
}

impl PartialEq for GSeries {
    fn eq(&self, o: &GSeries) -> bool {
        if self.var != o.var || self.order != o.order {
            return false;
        }
        let lo = self.val.min(o.val);
        (lo..=self.order).all(|n| self.coeff(n) == o.coeff(n))
    }
}

impl fmt::Display for GSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.name();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.val + i as i64;
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match n {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{n}"),
            };
            if n == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O({v}^{})", self.order + 1)
    }
}

impl Neg for &GSeries {
    type Output = GSeries;
    fn neg(self) -> GSeries {
        GSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ..self.clone()
        }
    }
}

macro_rules! series_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &GSeries {
            type Output = GSeries;
            /// Panics on a variable mismatch or division by zero; use the
            /// `try_` form to recover.
            fn $m(self, o: &GSeries) -> GSeries {
                self.$try(o).expect("series arithmetic")
            }
        }
        impl $tr for GSeries {
            type Output = GSeries;
            fn $m(self, o: GSeries) -> GSeries {
                (&self).$m(&o)
            }
        }
    };
}
series_op!(Add, add, try_add);
series_op!(Sub, sub, try_sub);
series_op!(Mul, mul, try_mul);
series_op!(Div, div, try_div);

/// Exact truncated arithmetic on two series.
pub fn series_arith(a: &GSeries, b: &GSeries, op: SeriesOp) -> Result<GSeries, ExactError> {
    match op {
        SeriesOp::Add => a.try_add(b),
        SeriesOp::Sub => a.try_sub(b),
        SeriesOp::Mul => a.try_mul(b),
        SeriesOp::Div => a.try_div(b),
    }
}

/// Compositional inverse: returns `h` with `f(h(v)) = v` to the stored order.
pub fn series_reversion(f: &GSeries) -> Result<GSeries, ExactError> {
    let f = f.normalized();
    if f.valuation() != Some(1) {
        return Err(ExactError::NotReversible);
    }
    let f1 = f.coeff(1);
    let r = f.order;
    let mut h: Vec<Rational> = vec![Rational::zero(); r as usize + 1];
    h[1] = Rational::one() / &f1;
    for n in 2..=r {
        let hs = GSeries::new(f.var, h.clone(), r);
        let e = f.compose(&hs)?.coeff(n);
        h[n as usize] -= e / &f1;
    }
    Ok(GSeries::new(f.var, h, r))
}

/// Series root `y(v)` of `sum_i coeffs[i] * y^i = 0` with `y(0) = y0`.
///
/// Newton iteration in the `v`-adic metric; the seed must be a simple root of
/// the constant-term equation.
pub fn newton_root(coeffs: &[GSeries], y0: &Rational) -> Result<GSeries, ExactError> {
    let var = coeffs[0].var;
    let order = coeffs.iter().map(|c| c.order).min().unwrap_or(0);
    let c0: Vec<Rational> = coeffs.iter().map(|c| c.coeff(0)).collect();
    let f0 = eval_rat(&c0, y0);
    let df0 = eval_rat(&deriv_rat(&c0), y0);
    if coeffs.iter().any(|c| c.valuation().is_some_and(|v| v < 0)) || !f0.is_zero() || df0.is_zero() {
        return Err(ExactError::NonSimpleRoot);
    }
    let dcoeffs: Vec<GSeries> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&int(i as i64)))
        .collect();
    let mut y = GSeries::constant(var, y0.clone(), order);
    for _ in 0..64 {
        let fy = eval_series(coeffs, &y)?;
        if fy.is_zero() {
            return Ok(y);
        }
        let dfy = eval_series(&dcoeffs, &y)?;
        y = (&y - &fy.try_div(&dfy)?).truncate(order);
    }
    Err(ExactError::NonSimpleRoot)
}

/// [`newton_root`] for a bivariate polynomial given as `f[i]` = coefficient of `y^i`
/// (a polynomial in the series variable).
pub fn series_newton_root(f: &[Poly], y0: &Rational, var: Var, order: i64) -> Result<GSeries, ExactError> {
    let coeffs: Vec<GSeries> = f.iter().map(|p| GSeries::from_poly(var, p, order)).collect();
    newton_root(&coeffs, y0)
}

fn eval_series(coeffs: &[GSeries], y: &GSeries) -> Result<GSeries, ExactError> {
    let mut acc = GSeries::zero(y.var, y.order);
    for c in coeffs.iter().rev() {
        acc = acc.try_mul(y)?.try_add(c)?;
    }
    Ok(acc.truncate(y.order))
}

fn eval_rat(c: &[Rational], y: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * y + a)
}

fn deriv_rat(c: &[Rational]) -> Vec<Rational> {
    c.iter().enumerate().skip(1).map(|(i, a)| a * int(i as i64)).collect()
}
