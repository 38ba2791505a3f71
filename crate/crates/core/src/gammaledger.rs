//! Symbolic products of Gamma factors.
//!
//! A [`GammaExpr`] is a rational function of `s` times `2^(affine)`,
//! `pi^(affine)`, integer powers of `Gamma(affine)` and integer powers of the
//! completed zeta function `Lambda(affine)`, which is kept opaque. Every
//! rewrite is an exact identity, so two expressions agree up to a constant
//! exactly when their normal forms differ by a constant.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::{int, rat, rational_to_f64, Affine, RatFun, Rational, Symbol, UniPoly};
use crate::{Error, Result};

/// Product of Gamma and completed-zeta factors with an exact prefactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaExpr {
    pub prefactor: RatFun,
    pub two_exp: Affine,
    pub pi_exp: Affine,
    pub gammas: BTreeMap<Affine, i64>,
    pub lambdas: BTreeMap<Affine, i64>,
}

/// Constant `rational * 2^two_exp * pi^pi_exp`, with `two_exp` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaConstant {
    pub rational: Rational,
    pub two_exp: Rational,
    pub pi_exp: Rational,
}

impl GammaConstant {
    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.two_exp.is_zero() && self.pi_exp.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational)
            * 2f64.powf(rational_to_f64(&self.two_exp))
            * std::f64::consts::PI.powf(rational_to_f64(&self.pi_exp))
    }
}

impl fmt::Display for GammaConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        if !self.two_exp.is_zero() {
            write!(f, "*2^({})", self.two_exp)?;
        }
        if !self.pi_exp.is_zero() {
            write!(f, "*pi^({})", self.pi_exp)?;
        }
        Ok(())
    }
}

/// Direction of the duplication formula
/// `Gamma(z) Gamma(z+1/2) = 2^(1-2z) sqrt(pi) Gamma(2z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Duplication {
    /// Merge `Gamma(z) Gamma(z+1/2)` into `Gamma(2z)`.
    Merge,
    /// Split `Gamma(2z)` into `Gamma(z) Gamma(z+1/2)`.
    Split,
}

fn floor_rat(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

fn frac_rat(x: &Rational) -> Rational {
    x - Rational::from_integer(floor_rat(x))
}

impl GammaExpr {
    pub fn one() -> Self {
        GammaExpr {
            prefactor: RatFun::one(Symbol::S),
            two_exp: Affine::zero(),
            pi_exp: Affine::zero(),
            gammas: BTreeMap::new(),
            lambdas: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        GammaExpr::ratfun(RatFun::constant(Symbol::S, c))
    }

    pub fn ratfun(r: RatFun) -> Self {
        assert_eq!(r.var(), Symbol::S, "prefactor must be a function of s");
        GammaExpr { prefactor: r, ..GammaExpr::one() }
    }

    pub fn poly(p: UniPoly) -> Self {
        GammaExpr::ratfun(RatFun::from_uni(Symbol::S, p))
    }

    pub fn gamma(arg: Affine) -> Self {
        let mut e = GammaExpr::one();
        e.gammas.insert(arg, 1);
        e
    }

    pub fn lambda(arg: Affine) -> Self {
        let mut e = GammaExpr::one();
        e.lambdas.insert(arg, 1);
        e
    }

    pub fn two_pow(a: Affine) -> Self {
        GammaExpr { two_exp: a, ..GammaExpr::one() }
    }

    pub fn pi_pow(a: Affine) -> Self {
        GammaExpr { pi_exp: a, ..GammaExpr::one() }
    }

    /// `Gamma_R(x) = pi^(-x/2) Gamma(x/2)`.
    pub fn gamma_r(x: Affine) -> Self {
        let half = x.scale(&rat(1, 2));
        GammaExpr::pi_pow(half.scale(&int(-1))).mul(&GammaExpr::gamma(half))
    }

    /// `Gamma_C(x) = 2 (2 pi)^(-x) Gamma(x)`.
    pub fn gamma_c(x: Affine) -> Self {
        let neg = x.scale(&int(-1));
        GammaExpr::two_pow(neg.shift(&int(1)))
            .mul(&GammaExpr::pi_pow(neg))
            .mul(&GammaExpr::gamma(x))
    }

    pub fn mul(&self, o: &GammaExpr) -> GammaExpr {
        let mut out = GammaExpr {
            prefactor: self.prefactor.mul(&o.prefactor),
            two_exp: self.two_exp.add(&o.two_exp),
            pi_exp: self.pi_exp.add(&o.pi_exp),
            gammas: self.gammas.clone(),
            lambdas: self.lambdas.clone(),
        };
        for (a, e) in &o.gammas {
            bump(&mut out.gammas, a.clone(), *e);
        }
        for (a, e) in &o.lambdas {
            bump(&mut out.lambdas, a.clone(), *e);
        }
        out
    }

    pub fn pow(&self, k: i64) -> Result<GammaExpr> {
        Ok(GammaExpr {
            prefactor: self.prefactor.pow(k)?,
            two_exp: self.two_exp.scale(&int(k)),
            pi_exp: self.pi_exp.scale(&int(k)),
            gammas: self
                .gammas
                .iter()
                .filter(|_| k != 0)
                .map(|(a, e)| (a.clone(), e * k))
                .collect(),
            lambdas: self
                .lambdas
                .iter()
                .filter(|_| k != 0)
                .map(|(a, e)| (a.clone(), e * k))
                .collect(),
        })
    }

    pub fn inv(&self) -> Result<GammaExpr> {
        self.pow(-1)
    }

    pub fn div(&self, o: &GammaExpr) -> Result<GammaExpr> {
        Ok(self.mul(&o.inv()?))
    }

    /// Substitute `s -> a*s + b` everywhere.
    pub fn compose(&self, a: &Rational, b: &Rational) -> GammaExpr {
        GammaExpr {
            prefactor: self.prefactor.compose_affine(a, b),
            two_exp: self.two_exp.compose(a, b),
            pi_exp: self.pi_exp.compose(a, b),
            gammas: self.gammas.iter().map(|(x, e)| (x.compose(a, b), *e)).collect(),
            lambdas: self.lambdas.iter().map(|(x, e)| (x.compose(a, b), *e)).collect(),
        }
    }

    /// Canonical form: every Gamma argument shifted so its constant term lies
    /// in `[0, 1)`, constant Gamma values folded into the prefactor where they
    /// are rational multiples of powers of pi, the integer part of the
    /// power of two folded into the prefactor, and Lambda arguments
    /// canonicalised.
    pub fn normalize(&self) -> Result<GammaExpr> {
        let mut num = UniPoly::one();
        let mut den = UniPoly::one();
        let mut two_exp = self.two_exp.clone();
        let mut pi_exp = self.pi_exp.clone();
        let mut gammas = BTreeMap::new();

        for (arg, &e) in &self.gammas {
            if e == 0 {
                continue;
            }
            let n = floor_rat(&arg.offset);
            let base = Affine::new(arg.slope.clone(), frac_rat(&arg.offset));
            if arg.slope.is_zero() && base.offset.is_zero() {
                // Gamma(n) = (n-1)! for a positive integer n.
                if !n.is_positive() {
                    return Err(Error::Domain(format!("Gamma pole at constant {}", arg.offset)));
                }
                let mut f = BigInt::one();
                let mut k = BigInt::one();
                while k < n {
                    f *= &k;
                    k += 1;
                }
                apply_power(&mut num, &mut den, &UniPoly::constant(Rational::from_integer(f)), e);
                continue;
            }
            // Gamma(base + n) = Gamma(base) * prod, with prod a rising or
            // falling product of linear factors.
            let steps = n.to_i64().ok_or_else(|| Error::Domain("shift too large".into()))?;
            let mut prod = UniPoly::one();
            if steps >= 0 {
                for k in 0..steps {
                    prod = &prod * &base.shift(&int(k)).to_uni();
                }
                apply_power(&mut num, &mut den, &prod, e);
            } else {
                for k in 1..=(-steps) {
                    prod = &prod * &base.shift(&int(-k)).to_uni();
                }
                apply_power(&mut num, &mut den, &prod, -e);
            }
            if base.slope.is_zero() && base.offset == rat(1, 2) {
                pi_exp = pi_exp.add(&Affine::constant(rat(e, 2)));
                continue;
            }
            bump(&mut gammas, base, e);
        }

        let n2 = floor_rat(&two_exp.offset);
        two_exp.offset -= Rational::from_integer(n2.clone());
        let two_pow = crate::exactalg::pow_rat(&int(2), n2.to_i64().unwrap());
        num = num.scale(&two_pow);

        let pre = RatFun::new(Symbol::S, num, den)?;
        let mut out = GammaExpr {
            prefactor: self.prefactor.mul(&pre),
            two_exp,
            pi_exp: std::mem::replace(&mut pi_exp, Affine::zero()),
            gammas,
            lambdas: BTreeMap::new(),
        };
        for (arg, &e) in &self.lambdas {
            bump(&mut out.lambdas, lambda_canonical(arg), e);
        }
        Ok(out)
    }

    /// Replace every Lambda argument by its canonical representative under
    /// `Lambda(u) = Lambda(1-u)`.
    pub fn lambda_canonicalize(&self) -> GammaExpr {
        let mut out = self.clone();
        out.lambdas = BTreeMap::new();
        for (arg, &e) in &self.lambdas {
            bump(&mut out.lambdas, lambda_canonical(arg), e);
        }
        out
    }

    /// Apply the duplication formula once at `z` (the argument of the first
    /// Gamma factor of the pair). Fails if the normalised expression has no
    /// matching factors.
    pub fn apply_duplication(&self, z: &Affine, dir: Duplication) -> Result<GammaExpr> {
        let e = self.normalize()?;
        let key = |a: &Affine| Affine::new(a.slope.clone(), frac_rat(&a.offset));
        let sign = match dir {
            Duplication::Merge => {
                let e1 = e.gammas.get(&key(z)).copied().unwrap_or(0);
                let e2 = e.gammas.get(&key(&z.shift(&rat(1, 2)))).copied().unwrap_or(0);
                if e1 == 0 || e2 == 0 || e1.signum() != e2.signum() {
                    return Err(Error::NoDuplicationPair(z.to_string()));
                }
                e1.signum()
            }
            Duplication::Split => {
                let e1 = e.gammas.get(&key(&z.scale(&int(2)))).copied().unwrap_or(0);
                if e1 == 0 {
                    return Err(Error::NoDuplicationPair(z.to_string()));
                }
                -e1.signum()
            }
        };
        e.mul(&duplication_identity(z).pow(sign)?).normalize()
    }

    /// Split every Gamma factor whose argument has the given slope into
    /// half-argument pairs. Used to compare expressions modulo duplication.
    pub fn split_all(&self, slope: &Rational) -> Result<GammaExpr> {
        let mut out = self.clone();
        for (arg, &e) in &self.gammas {
            if &arg.slope == slope {
                let z = arg.scale(&rat(1, 2));
                out = out.mul(&duplication_identity(&z).pow(-e)?);
            }
        }
        out.normalize()
    }

    /// Returns the constant `c` with `self = c * other` if the ratio is
    /// constant in `s`, comparing normal forms.
    pub fn equal_up_to_constant(&self, other: &GammaExpr) -> Result<Option<GammaConstant>> {
        let q = self.div(other)?.normalize()?;
        if !q.gammas.is_empty()
            || !q.lambdas.is_empty()
            || !q.two_exp.slope.is_zero()
            || !q.pi_exp.slope.is_zero()
        {
            return Ok(None);
        }
        Ok(q.prefactor.as_constant().map(|r| GammaConstant {
            rational: r,
            two_exp: q.two_exp.offset,
            pi_exp: q.pi_exp.offset,
        }))
    }

    /// Like [`GammaExpr::equal_up_to_constant`], after splitting every Gamma
    /// factor with slope 2 or 1 down to slope 1/2 on both sides.
    pub fn equal_modulo_duplication(&self, other: &GammaExpr) -> Result<Option<GammaConstant>> {
        let reduce = |e: &GammaExpr| -> Result<GammaExpr> {
            e.normalize()?.split_all(&int(2))?.split_all(&int(1))
        };
        reduce(self)?.equal_up_to_constant(&reduce(other)?)
    }

    /// Order of the pole at `s0` (negative for a zero). Lambda is treated as
    /// having simple poles at arguments 0 and 1 only.
    pub fn pole_order_at(&self, s0: &Rational) -> Result<i64> {
        let mut order = 0;
        for (arg, &e) in &self.gammas {
            if arg.slope.is_zero() {
                continue;
            }
            let x = arg.eval(s0);
            if x.is_integer() && !x.is_positive() {
                order += e;
            }
        }
        for (arg, &e) in &self.lambdas {
            let x = arg.eval(s0);
            if x.is_zero() || x.is_one() {
                order += e;
            }
        }
        let pre = self
            .prefactor
            .order_at(s0)
            .ok_or_else(|| Error::Domain("zero prefactor".into()))?;
        Ok(order - pre)
    }

    /// Numeric value at real `s`. Expressions containing Lambda factors are
    /// rejected since zeta is not evaluated here.
    pub fn eval_f64(&self, s: f64) -> Result<f64> {
        if !self.lambdas.is_empty() {
            return Err(Error::Domain("cannot evaluate Lambda factors numerically".into()));
        }
        let pre = self.prefactor.eval_f64(s);
        let mut ln = pre.abs().ln();
        let mut sign = pre.signum();
        ln += self.two_exp.eval_f64(s) * std::f64::consts::LN_2;
        ln += self.pi_exp.eval_f64(s) * std::f64::consts::PI.ln();
        for (arg, &e) in &self.gammas {
            let (l, sg) = ln_gamma_signed(arg.eval_f64(s))?;
            ln += e as f64 * l;
            if e % 2 != 0 {
                sign *= sg;
            }
        }
        Ok(sign * ln.exp())
    }
}

/// `Gamma(2z) 2^(1-2z) sqrt(pi) / (Gamma(z) Gamma(z+1/2))`, identically 1.
fn duplication_identity(z: &Affine) -> GammaExpr {
    let two_z = z.scale(&int(2));
    GammaExpr::gamma(two_z.clone())
        .mul(&GammaExpr::two_pow(two_z.scale(&int(-1)).shift(&int(1))))
        .mul(&GammaExpr::pi_pow(Affine::constant(rat(1, 2))))
        .mul(&GammaExpr::gamma(z.clone()).pow(-1).unwrap())
        .mul(&GammaExpr::gamma(z.shift(&rat(1, 2))).pow(-1).unwrap())
}

fn bump(map: &mut BTreeMap<Affine, i64>, key: Affine, e: i64) {
    let entry = map.entry(key.clone()).or_insert(0);
    *entry += e;
    if *entry == 0 {
        map.remove(&key);
    }
}

fn apply_power(num: &mut UniPoly, den: &mut UniPoly, p: &UniPoly, e: i64) {
    let pe = p.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        *num = &*num * &pe;
    } else {
        *den = &*den * &pe;
    }
}

/// Canonical representative of `{u, 1-u}`: positive slope, or for constant
/// arguments the larger value.
pub fn lambda_canonical(u: &Affine) -> Affine {
    let reflected = Affine::new(-u.slope.clone(), Rational::one() - &u.offset);
    let keep = if u.slope.is_zero() {
        u.offset >= reflected.offset
    } else {
        u.slope.is_positive()
    };
    if keep {
        u.clone()
    } else {
        reflected
    }
}

/// `ln|Gamma(x)|` and the sign of `Gamma(x)`; fails at the poles.
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x > 0.0 {
        return Ok((statrs::function::gamma::ln_gamma(x), 1.0));
    }
    if x == x.floor() {
        return Err(Error::Domain(format!("Gamma pole at {}", x)));
    }
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    let sin = (std::f64::consts::PI * x).sin();
    let ln = std::f64::consts::PI.ln() - sin.abs().ln() - statrs::function::gamma::ln_gamma(1.0 - x);
    Ok((ln, sin.signum()))
}

pub fn gamma_f64(x: f64) -> f64 {
    match ln_gamma_signed(x) {
        Ok((l, s)) => s * l.exp(),
        Err(_) => f64::INFINITY,
    }
}

pub fn gamma_r_f64(x: f64) -> f64 {
    std::f64::consts::PI.powf(-x / 2.0) * gamma_f64(x / 2.0)
}

pub fn gamma_c_f64(x: f64) -> f64 {
    2.0 * (2.0 * std::f64::consts::PI).powf(-x) * gamma_f64(x)
}

fn check_weight(ell: u32) -> Result<()> {
    if ell < 2 || ell % 2 != 0 {
        return Err(Error::Domain(format!("weight {} must be even and at least 2", ell)));
    }
    Ok(())
}

/// Archimedean factor
/// `Gamma_C(s+l-1) Gamma_C(s+l) Gamma_C(s+2l-1) Gamma_R(s+1)`.
pub fn arch_l_factor(ell: u32) -> Result<GammaExpr> {
    check_weight(ell)?;
    let l = ell as i64;
    Ok(GammaExpr::gamma_c(Affine::ints(1, l - 1))
        .mul(&GammaExpr::gamma_c(Affine::ints(1, l)))
        .mul(&GammaExpr::gamma_c(Affine::ints(1, 2 * l - 1)))
        .mul(&GammaExpr::gamma_r(Affine::ints(1, 1))))
}

/// Orders of the trivial zeros of the finite L-function at `s = -n`, read
/// off as pole orders of the archimedean factor. Only `n >= 2l-1` is
/// supported.
pub fn trivial_zero_orders(ell: u32, ns: impl IntoIterator<Item = u32>) -> Result<BTreeMap<i64, i64>> {
    let arch = arch_l_factor(ell)?.normalize()?;
    let mut out = BTreeMap::new();
    for n in ns {
        if n < 2 * ell - 1 {
            return Err(Error::Domain(format!(
                "trivial zero order at -{} requires n >= {}",
                n,
                2 * ell - 1
            )));
        }
        let s0 = int(-(n as i64));
        out.insert(-(n as i64), arch.pole_order_at(&s0)?);
    }
    Ok(out)
}

/// Both sides of the normalisation identity
/// `Gamma_R(s-1)^2 Gamma_R(s) Gamma_R(2s-4) Gamma(s+l-1)Gamma(s+l-2)/(Gamma(s-1)Gamma(s-2))`
/// versus `2^s Gamma_R(s-1) Gamma_C(s+l-1) Gamma_C(s+l-2)`.
pub fn normalization_sides(ell: u32) -> Result<(GammaExpr, GammaExpr)> {
    check_weight(ell)?;
    let l = ell as i64;
    let lhs = GammaExpr::gamma_r(Affine::ints(1, -1))
        .pow(2)?
        .mul(&GammaExpr::gamma_r(Affine::ints(1, 0)))
        .mul(&GammaExpr::gamma_r(Affine::ints(2, -4)))
        .mul(&GammaExpr::gamma(Affine::ints(1, l - 1)))
        .mul(&GammaExpr::gamma(Affine::ints(1, l - 2)))
        .div(&GammaExpr::gamma(Affine::ints(1, -1)))?
        .div(&GammaExpr::gamma(Affine::ints(1, -2)))?;
    let rhs = GammaExpr::two_pow(Affine::ints(1, 0))
        .mul(&GammaExpr::gamma_r(Affine::ints(1, -1)))
        .mul(&GammaExpr::gamma_c(Affine::ints(1, l - 1)))
        .mul(&GammaExpr::gamma_c(Affine::ints(1, l - 2)));
    Ok((lhs, rhs))
}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prefactor)?;
        if self.two_exp != Affine::zero() {
            write!(f, " * 2^({})", self.two_exp)?;
        }
        if self.pi_exp != Affine::zero() {
            write!(f, " * pi^({})", self.pi_exp)?;
        }
        for (a, e) in &self.gammas {
            write!(f, " * Gamma({})", a)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        for (a, e) in &self.lambdas {
            write!(f, " * Lambda({})", a)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> GammaExpr {
        GammaExpr::gamma(Affine::ints(a, b))
    }

    #[test]
    fn shift_to_canonical_representative() {
        let e = g(1, 3).normalize().unwrap();
        let expected = GammaExpr::poly(UniPoly::from_ints(&[0, 2, 3, 1])).mul(&g(1, 0));
        assert_eq!(e, expected.normalize().unwrap());
        assert_eq!(e.gammas.keys().next().unwrap(), &Affine::ints(1, 0));
    }

    #[test]
    fn constant_gammas_collapse() {
        let lhs = GammaExpr::gamma(Affine::constant(int(1)))
            .mul(&GammaExpr::gamma(Affine::constant(rat(3, 2))));
        let rhs = GammaExpr::two_pow(Affine::constant(int(-1)))
            .mul(&GammaExpr::pi_pow(Affine::constant(rat(1, 2))))
            .mul(&GammaExpr::gamma(Affine::constant(int(2))));
        let c = lhs.equal_up_to_constant(&rhs).unwrap().unwrap();
        assert!(c.is_one(), "{}", c);
    }

    #[test]
    fn lambda_canonical_choices() {
        assert_eq!(lambda_canonical(&Affine::ints(-1, 4)), Affine::ints(1, -3));
        assert_eq!(lambda_canonical(&Affine::ints(2, -5)), Affine::ints(2, -5));
        assert_eq!(lambda_canonical(&Affine::constant(rat(1, 3))), Affine::constant(rat(2, 3)));
    }

    #[test]
    fn merge_half_pair() {
        let half = Affine::new(rat(1, 2), int(0));
        let e = GammaExpr::gamma(half.clone()).mul(&GammaExpr::gamma(half.shift(&rat(1, 2))));
        let merged = e.apply_duplication(&half, Duplication::Merge).unwrap();
        assert_eq!(merged.gammas.len(), 1);
        assert_eq!(merged.gammas.get(&Affine::ints(1, 0)), Some(&1));
        let back = merged.apply_duplication(&half, Duplication::Split).unwrap();
        assert_eq!(back, e.normalize().unwrap());
    }

    #[test]
    fn duplication_requires_pair() {
        let e = g(1, 0);
        let z = Affine::new(rat(1, 3), int(0));
        assert!(matches!(
            e.apply_duplication(&z, Duplication::Merge),
            Err(Error::NoDuplicationPair(_))
        ));
    }

    #[test]
    fn trivial_zeros_weight_four() {
        let orders = trivial_zero_orders(4, [10, 11]).unwrap();
        assert_eq!(orders[&-10], 3);
        assert_eq!(orders[&-11], 4);
        assert!(trivial_zero_orders(4, [3]).is_err());
    }

    #[test]
    fn pole_order_sees_prefactor() {
        let e = g(1, 3).normalize().unwrap();
        assert_eq!(e.pole_order_at(&int(-1)).unwrap(), 0);
        assert_eq!(e.pole_order_at(&int(-3)).unwrap(), 1);
    }

    #[test]
    fn numeric_evaluation_matches_normal_form() {
        let e = g(1, 3).div(&g(1, -2)).unwrap().mul(&GammaExpr::gamma_c(Affine::ints(1, 1)));
        let n = e.normalize().unwrap();
        for s in [2.5, 3.7, 5.25] {
            let a = e.eval_f64(s).unwrap();
            let b = n.eval_f64(s).unwrap();
            assert!(((a - b) / a).abs() < 1e-12);
        }
    }

    #[test]
    fn normalization_sides_differ_by_weight_constant() {
        for ell in [2u32, 4, 6] {
            let (lhs, rhs) = normalization_sides(ell).unwrap();
            let c = lhs.equal_modulo_duplication(&rhs).unwrap().unwrap();
            let l = ell as i64;
            let expected = GammaConstant {
                rational: crate::exactalg::pow_rat(&int(2), 2 * l - 3),
                two_exp: int(0),
                pi_exp: int(2 * l),
            };
            assert_eq!(c, expected);
        }
    }
}
