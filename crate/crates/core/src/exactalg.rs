//! Exact rational arithmetic: sparse multivariate polynomials, univariate
//! rational functions, Pochhammer symbols and truncated bivariate series.
//!
//! Polynomials live over the fixed symbol set `s < z < w < u < v` and are
//! stored sparsely in graded-lex order. Rational functions are univariate and
//! kept reduced with a monic denominator, so structural equality is equality
//! of functions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exact rational number backed by arbitrary precision integers.
pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Formal variables. The derived order is the variable order used for
/// monomial comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    S,
    Z,
    W,
    U,
    V,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::S, Symbol::Z, Symbol::W, Symbol::U, Symbol::V];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::S => "s",
            Symbol::Z => "z",
            Symbol::W => "w",
            Symbol::U => "u",
            Symbol::V => "v",
        }
    }
}

/// Exponent vector indexed by [`Symbol`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 5]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; 5])
    }

    pub fn var(sym: Symbol, e: u32) -> Self {
        let mut m = [0; 5];
        m[sym.index()] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, sym: Symbol) -> u32 {
        self.0[sym.index()]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }
}

// Graded lex: total degree first, then exponents in symbol order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(sym: Symbol) -> Self {
        Poly::monomial(Rational::one(), Monomial::var(sym, 1))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// `slope * sym + offset`.
    pub fn linear(sym: Symbol, slope: Rational, offset: Rational) -> Self {
        let mut p = Poly::constant(offset);
        p.add_term(Monomial::var(sym, 1), slope);
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, sym: Symbol) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(sym)).max()
    }

    /// Symbols that occur with a positive exponent.
    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL
            .into_iter()
            .filter(|s| self.terms.keys().any(|m| m.exp(*s) > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replace `sym` by the polynomial `value`.
    pub fn substitute(&self, sym: Symbol, value: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(sym) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.0;
            rest[sym.index()] = 0;
            let t = Poly::monomial(c.clone(), Monomial(rest));
            out = &out + &(&t * &powers[e]);
        }
        out
    }

    /// Evaluate at a full or partial assignment; unassigned symbols must
    /// not occur.
    pub fn eval(&self, assign: &[(Symbol, Rational)]) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for sym in Symbol::ALL {
                let e = m.exp(sym);
                if e == 0 {
                    continue;
                }
                let val = assign
                    .iter()
                    .find(|(s, _)| *s == sym)
                    .map(|(_, v)| v)
                    .ok_or_else(|| Error::Domain(format!("no value for {}", sym.name())))?;
                t *= pow_rat(val, e as i64);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Convert to a dense univariate polynomial in `sym`.
    pub fn to_uni(&self, sym: Symbol) -> Result<UniPoly> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if Symbol::ALL.iter().any(|s| *s != sym && m.exp(*s) > 0) {
                return Err(Error::Domain(format!(
                    "polynomial is not univariate in {}",
                    sym.name()
                )));
            }
            let e = m.exp(sym) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] += c;
        }
        Ok(UniPoly::new(coeffs))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for sym in Symbol::ALL {
                match m.exp(sym) {
                    0 => {}
                    1 => mono.push_str(sym.name()),
                    e => mono.push_str(&format!("{}^{}", sym.name(), e)),
                }
            }
            write_term(f, c, &mono, first)?;
            first = false;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, c: &Rational, mono: &str, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    if mono.is_empty() {
        write!(f, "{}", abs)
    } else if abs.is_one() {
        write!(f, "{}", mono)
    } else if abs.is_integer() {
        write!(f, "{}*{}", abs, mono)
    } else {
        write!(f, "({})*{}", abs, mono)
    }
}

/// `x^e` for integer `e`; `x` must be nonzero when `e < 0`.
pub fn pow_rat(x: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Dense univariate polynomial, coefficients from the constant term up.
/// Trailing zeros are trimmed so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|c| int(*c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `slope * x + offset`.
    pub fn linear(slope: Rational, offset: Rational) -> Self {
        UniPoly::new(vec![offset, slope])
    }

    pub fn x() -> Self {
        UniPoly::linear(Rational::one(), Rational::zero())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => self.scale(&l.recip()),
            None => UniPoly::zero(),
        }
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    /// `p(a*x + b)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> UniPoly {
        let inner = UniPoly::linear(a.clone(), b.clone());
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; `d` must be nonzero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] * &inv;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Multiplicity of `r` as a root; `None` for the zero polynomial.
    pub fn root_multiplicity(&self, r: &Rational) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let lin = UniPoly::linear(Rational::one(), -r.clone());
        let mut p = self.clone();
        let mut k = 0;
        loop {
            let (q, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                return Some(k);
            }
            p = q;
            k += 1;
        }
    }

    pub fn to_poly(&self, sym: Symbol) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(sym, e as u32), c.clone());
        }
        p
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            c[i] += a;
        }
        for (i, a) in rhs.coeffs.iter().enumerate() {
            c[i] += a;
        }
        UniPoly::new(c)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(c)
    }
}

/// Reduced univariate rational function `num/den` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFun {
    var: Symbol,
    num: UniPoly,
    den: UniPoly,
}

impl RatFun {
    pub fn new(var: Symbol, num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFun::zero(var));
        }
        let g = num.gcd(&den);
        let (mut n, _) = num.div_rem(&g);
        let (mut d, _) = den.div_rem(&g);
        let l = d.lead().unwrap().clone();
        let inv = l.recip();
        n = n.scale(&inv);
        d = d.scale(&inv);
        Ok(RatFun { var, num: n, den: d })
    }

    pub fn zero(var: Symbol) -> Self {
        RatFun { var, num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn one(var: Symbol) -> Self {
        RatFun::constant(var, Rational::one())
    }

    pub fn constant(var: Symbol, c: Rational) -> Self {
        RatFun { var, num: UniPoly::constant(c), den: UniPoly::one() }
    }

    pub fn from_uni(var: Symbol, p: UniPoly) -> Self {
        RatFun { var, num: p, den: UniPoly::one() }
    }

    pub fn var(&self) -> Symbol {
        self.var
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value if this is a constant function.
    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(&self.num.coeffs[0] / &self.den.coeffs[0]),
            _ => None,
        }
    }

    fn check(&self, other: &RatFun) {
        assert_eq!(self.var, other.var, "rational functions in different variables");
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        self.check(other);
        let n = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFun::new(self.var, n, &self.den * &other.den).unwrap()
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun { var: self.var, num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        self.check(other);
        RatFun::new(self.var, &self.num * &other.num, &self.den * &other.den).unwrap()
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun> {
        self.check(other);
        RatFun::new(self.var, &self.num * &other.den, &self.den * &other.num)
    }

    pub fn recip(&self) -> Result<RatFun> {
        RatFun::new(self.var, self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i64) -> Result<RatFun> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(RatFun { var: self.var, num: base.num.pow(k), den: base.den.pow(k) })
    }

    pub fn scale(&self, c: &Rational) -> RatFun {
        RatFun::new(self.var, self.num.scale(c), self.den.clone()).unwrap()
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Substitute `var -> a*var + b`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> RatFun {
        RatFun::new(self.var, self.num.compose_affine(a, b), self.den.compose_affine(a, b))
            .unwrap()
    }

    /// Order of vanishing at `x`; negative for a pole. Zero function gives `None`.
    pub fn order_at(&self, x: &Rational) -> Option<i64> {
        let zn = self.num.root_multiplicity(x)? as i64;
        let zd = self.den.root_multiplicity(x).unwrap_or(0) as i64;
        Some(zn - zd)
    }

    /// Equality by cross multiplication, without assuming reduction.
    pub fn same_as_fraction(num: &UniPoly, den: &UniPoly, other: &RatFun) -> bool {
        num * &other.den == &other.num * den
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.to_poly(self.var);
        if self.den.degree() == Some(0) {
            write!(f, "{}", n)
        } else {
            write!(f, "({})/({})", n, self.den.to_poly(self.var))
        }
    }
}

/// Reduce `n/d` where both are univariate in the same symbol.
pub fn ratfun_reduce(n: &Poly, d: &Poly) -> Result<RatFun> {
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let mut syms = n.symbols();
    syms.extend(d.symbols());
    syms.sort();
    syms.dedup();
    let var = match syms.as_slice() {
        [] => Symbol::S,
        [v] => *v,
        _ => {
            return Err(Error::Domain(
                "rational functions are supported in one variable only".into(),
            ))
        }
    };
    RatFun::new(var, n.to_uni(var)?, d.to_uni(var)?)
}

/// Rising factorial `(base)_k = base (base+1) ... (base+k-1)`.
pub fn pochhammer(base: &Poly, k: u32) -> Poly {
    let mut acc = Poly::one();
    for i in 0..k {
        acc = &acc * &(base + &Poly::constant(int(i as i64)));
    }
    acc
}

/// Univariate rising factorial of `slope*x + offset`.
pub fn pochhammer_uni(slope: &Rational, offset: &Rational, k: u32) -> UniPoly {
    let mut acc = UniPoly::one();
    for i in 0..k {
        acc = &acc * &UniPoly::linear(slope.clone(), offset + int(i as i64));
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Affine form `slope * s + offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Affine {
    pub slope: Rational,
    pub offset: Rational,
}

impl Affine {
    pub fn new(slope: Rational, offset: Rational) -> Self {
        Affine { slope, offset }
    }

    /// `a*s + b` from integers.
    pub fn ints(a: i64, b: i64) -> Self {
        Affine::new(int(a), int(b))
    }

    pub fn constant(c: Rational) -> Self {
        Affine::new(Rational::zero(), c)
    }

    pub fn zero() -> Self {
        Affine::constant(Rational::zero())
    }

    pub fn add(&self, o: &Affine) -> Affine {
        Affine::new(&self.slope + &o.slope, &self.offset + &o.offset)
    }

    pub fn sub(&self, o: &Affine) -> Affine {
        Affine::new(&self.slope - &o.slope, &self.offset - &o.offset)
    }

    pub fn scale(&self, c: &Rational) -> Affine {
        Affine::new(&self.slope * c, &self.offset * c)
    }

    pub fn shift(&self, c: &Rational) -> Affine {
        Affine::new(self.slope.clone(), &self.offset + c)
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        &self.slope * s + &self.offset
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        rational_to_f64(&self.slope) * s + rational_to_f64(&self.offset)
    }

    /// Substitute `s -> a*s + b`.
    pub fn compose(&self, a: &Rational, b: &Rational) -> Affine {
        Affine::new(&self.slope * a, &self.slope * b + &self.offset)
    }

    pub fn to_uni(&self) -> UniPoly {
        UniPoly::linear(self.slope.clone(), self.offset.clone())
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Poly::linear(Symbol::S, self.slope.clone(), self.offset.clone());
        write!(f, "{}", p)
    }
}

/// Truncated power series in `u, v` whose coefficients are polynomials
/// (typically in `w`). Only terms of total degree `<= cutoff` are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    cutoff: u32,
    coeffs: BTreeMap<(u32, u32), Poly>,
}

impl TruncSeries {
    pub fn zero(cutoff: u32) -> Self {
        TruncSeries { cutoff, coeffs: BTreeMap::new() }
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Coefficient of `u^j v^k`.
    pub fn coeff(&self, j: u32, k: u32) -> Poly {
        self.coeffs.get(&(j, k)).cloned().unwrap_or_else(Poly::zero)
    }

    fn add_to(&mut self, j: u32, k: u32, c: &Poly) {
        if j + k > self.cutoff || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((j, k)).or_insert_with(Poly::zero);
        *e = &*e + c;
        if e.is_zero() {
            self.coeffs.remove(&(j, k));
        }
    }

    /// Split a polynomial in `u, v` (other symbols allowed in coefficients).
    pub fn from_poly(p: &Poly, cutoff: u32) -> Self {
        let mut out = TruncSeries::zero(cutoff);
        for (m, c) in p.terms() {
            let (j, k) = (m.exp(Symbol::U), m.exp(Symbol::V));
            let mut rest = m.0;
            rest[Symbol::U.index()] = 0;
            rest[Symbol::V.index()] = 0;
            out.add_to(j, k, &Poly::monomial(c.clone(), Monomial(rest)));
        }
        out
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = TruncSeries::zero(cutoff);
        for ((j1, k1), c1) in &self.coeffs {
            for ((j2, k2), c2) in &other.coeffs {
                if j1 + j2 + k1 + k2 <= cutoff {
                    out.add_to(j1 + j2, k1 + k2, &(c1 * c2));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let mut out = self.clone();
        out.cutoff = self.cutoff.min(other.cutoff);
        out.coeffs.retain(|(j, k), _| j + k <= out.cutoff);
        for ((j, k), c) in &other.coeffs {
            out.add_to(*j, *k, c);
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> TruncSeries {
        let mut out = TruncSeries::zero(self.cutoff);
        for ((j, k), a) in &self.coeffs {
            out.add_to(*j, *k, &(a * c));
        }
        out
    }

    /// Substitute a rational value for `sym` in every coefficient.
    pub fn instantiate(&self, sym: Symbol, value: &Rational) -> TruncSeries {
        let mut out = TruncSeries::zero(self.cutoff);
        let c = Poly::constant(value.clone());
        for ((j, k), a) in &self.coeffs {
            out.add_to(*j, *k, &a.substitute(sym, &c));
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Poly)> {
        self.coeffs.iter()
    }
}

/// `(1 - base)^(-w) = sum_k (w)_k base^k / k!` truncated at total degree
/// `cutoff` in `u, v`. `base` must be a polynomial in `u, v` without
/// constant term.
pub fn series_pow(base: &Poly, cutoff: u32) -> Result<TruncSeries> {
    if base.symbols().iter().any(|s| *s != Symbol::U && *s != Symbol::V) {
        return Err(Error::Domain("series base must involve only u and v".into()));
    }
    if !base.coeff(&Monomial::one()).is_zero() {
        return Err(Error::Domain("series base must have zero constant term".into()));
    }
    let b = TruncSeries::from_poly(base, cutoff);
    let w = Poly::var(Symbol::W);
    let mut out = TruncSeries::from_poly(&Poly::one(), cutoff);
    let mut power = TruncSeries::from_poly(&Poly::one(), cutoff);
    for k in 1..=cutoff {
        power = power.mul(&b);
        let coeff = pochhammer(&w, k).scale(&Rational::new(BigInt::one(), factorial(k)));
        out = out.add(&power.scale(&coeff));
    }
    Ok(out)
}

/// Largest `e` with `p^e | n` for nonzero `n`.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(e);
        }
        n = q;
        e += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn valuation(x: &Rational, p: u64) -> Option<i64> {
    Some(int_valuation(x.numer(), p)? - int_valuation(x.denom(), p)?)
}

/// Reduce a p-integral rational modulo `m` (a power of `p`) to `0..m`.
pub fn reduce_mod(x: &Rational, m: u64) -> Result<u64> {
    let m_big = BigInt::from(m);
    let den = x.denom().mod_floor(&m_big);
    let inv = mod_inverse(&den, &m_big)
        .ok_or_else(|| Error::Domain(format!("{} is not integral modulo {}", x, m)))?;
    let r = (x.numer().mod_floor(&m_big) * inv).mod_floor(&m_big);
    Ok(r.to_u64().unwrap())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
