//! Unramified local zeta integral bookkeeping over cosets `h GL2(Z_p)`.
//!
//! For a coset `h` with `v = val(det h)` and `c` the content of
//! `f_max.h`, the generating polynomial is `P_h = z^(v-c) (1 - z^(c+1))`
//! when `c >= 0` and zero otherwise. The Hecke combination `M_h` and the
//! polynomial `B0(z) P_h - z^2 M_h` are computed exactly and compared with
//! their closed forms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::cubicforms::{
    act_left, act_right, closure_test, content, dagger_condition, discriminant, index_p_reps,
    roots_in_p1, zero_count, BinaryCubic, FactorType, GL2Mat,
};
use crate::exactalg::{int, pow_rat, reduce_mod, valuation, Rational};
use crate::{Error, Result};

/// Laurent polynomial in `z` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZPoly {
    terms: BTreeMap<i64, i64>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly::default()
    }

    pub fn one() -> Self {
        ZPoly::monomial(1, 0)
    }

    /// `c z^e`.
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut p = ZPoly::zero();
        p.add_term(e, c);
        p
    }

    /// From coefficients of `z^0, z^1, ...`.
    pub fn from_coeffs(c: &[i64]) -> Self {
        let mut p = ZPoly::zero();
        for (e, x) in c.iter().enumerate() {
            p.add_term(e as i64, *x);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let t = self.terms.entry(e).or_insert(0);
        *t += c;
        if *t == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, *c);
        }
        out
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> ZPoly {
        let mut out = ZPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        let mut out = ZPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> ZPoly {
        ZPoly { terms: self.terms.iter().map(|(e, c)| (e + k, *c)).collect() }
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| int(*c) * pow_rat(z, *e))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let sign = if *c < 0 { "-" } else { "+" };
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            let a = c.abs();
            match (*e, a) {
                (0, _) => write!(f, "{}", a)?,
                (_, 1) => write!(f, "z^{}", e)?,
                _ => write!(f, "{}*z^{}", a, e)?,
            }
        }
        Ok(())
    }
}

/// A prime and the form of a maximal unramified order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSetting {
    pub p: u64,
    pub f_max: BinaryCubic,
}

impl LocalSetting {
    /// Requires `f_max` to be integral with unit discriminant at `p`.
    pub fn new(p: u64, f_max: BinaryCubic) -> Result<Self> {
        if !f_max.is_integral(p) || valuation(&discriminant(&f_max), p) != Some(0) {
            return Err(Error::Domain(format!("{} is not a maximal unramified form at {}", f_max, p)));
        }
        Ok(LocalSetting { p, f_max })
    }

    /// The split setting with `f_max = wz(w+z)`.
    pub fn split(p: u64) -> Self {
        LocalSetting::new(p, BinaryCubic::split()).unwrap()
    }

    fn pp(&self) -> i64 {
        self.p as i64
    }

    /// `f_max.h` (right action).
    pub fn form_of(&self, h: &GL2Mat) -> BinaryCubic {
        act_right(&self.f_max, h)
    }

    /// Content of `f_max.h`.
    pub fn content_of(&self, h: &GL2Mat) -> i64 {
        content(&self.form_of(h), self.p).unwrap()
    }

    /// `N(f_max.h)`: zeros in `P^1(F_p)`, `p+1` if the form vanishes mod p,
    /// and 0 for non-integral forms.
    pub fn zero_count_of(&self, h: &GL2Mat) -> i64 {
        zero_count(&self.form_of(h), self.p).map(|n| n as i64).unwrap_or(0)
    }
}

/// Hermite representative `(p^alpha, beta; 0, p^delta)` of a right coset
/// `h GL2(Z_p)`, with `0 <= beta < p^alpha`, and its cached invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetRep {
    pub alpha: u32,
    pub beta: u64,
    pub delta: u32,
    pub mat: GL2Mat,
    /// Valuation of the determinant.
    pub v: i64,
    /// Content of `f_max.h`.
    pub c: i64,
    /// Minimum valuation of the entries.
    pub val_h: i64,
    /// Zero count of `f_max.x0` where `x0 = p^-val(h) h`, if of content 0.
    pub x0_count: Option<usize>,
    pub x0_type: Option<FactorType>,
    /// 1 if `x0` lies in `GL2(Z_p)`, else 2.
    pub eps: i64,
}

impl CosetRep {
    pub fn new(setting: &LocalSetting, alpha: u32, beta: u64, delta: u32) -> Self {
        let p = setting.p;
        let pa = (p as i64).pow(alpha);
        let pd = (p as i64).pow(delta);
        let mat = GL2Mat::from_ints(pa, beta as i64, 0, pd).unwrap();
        let val_h = mat.valuation(p);
        let x0 = mat.scale(&pow_rat(&int(p as i64), -val_h));
        let fx0 = setting.form_of(&x0);
        let roots = if content(&fx0, p).ok() == Some(0) { roots_in_p1(&fx0, p).ok() } else { None };
        CosetRep {
            alpha,
            beta,
            delta,
            v: (alpha + delta) as i64,
            c: setting.content_of(&mat),
            val_h,
            x0_count: roots.map(|r| r.0),
            x0_type: roots.map(|r| r.1),
            eps: if x0.is_unit(p) { 1 } else { 2 },
            mat,
        }
    }

    /// Hermite representative of the coset of an integral matrix.
    pub fn canonical(setting: &LocalSetting, h: &GL2Mat) -> Result<Self> {
        let p = setting.p;
        if !h.is_integral(p) {
            return Err(Error::Domain(format!("{} is not integral at {}", h, p)));
        }
        // Column operations clear the (2,1) entry.
        let (mut a, mut b, r, mut d) = (h.p.clone(), h.q.clone(), h.r.clone(), h.s.clone());
        let vr = valuation(&r, p);
        let vd = valuation(&d, p);
        let swap = match (vr, vd) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(x), Some(y)) => x < y,
        };
        if swap {
            // Swap the columns so the second row is (d, r).
            std::mem::swap(&mut a, &mut b);
            let t = &a - &b * (&d / &r);
            a = t;
            d = r;
        } else if !r.is_zero() {
            a = &a - &b * (&r / &d);
        }
        let alpha = valuation(&a, p).unwrap();
        let delta = valuation(&d, p).unwrap();
        let pd = pow_rat(&int(p as i64), delta);
        let b = b * &pd / &d;
        let modulus = p.pow(alpha as u32);
        let beta = if alpha == 0 { 0 } else { reduce_mod(&b, modulus)? };
        Ok(CosetRep::new(setting, alpha as u32, beta, delta as u32))
    }
}

/// All Hermite representatives with `val(det) <= max_det_val`, ordered by
/// determinant valuation, then `alpha`, then `beta`.
pub fn coset_reps(setting: &LocalSetting, max_det_val: u32) -> Vec<CosetRep> {
    let mut out = Vec::new();
    for n in 0..=max_det_val {
        for alpha in (0..=n).rev() {
            let delta = n - alpha;
            for beta in 0..setting.p.pow(alpha) {
                out.push(CosetRep::new(setting, alpha, beta, delta));
            }
        }
    }
    out
}

fn p_formula(v: i64, c: i64) -> ZPoly {
    // z^(v-c) (1 - z^(c+1))
    ZPoly::monomial(1, v - c).sub(&ZPoly::monomial(1, v + 1))
}

/// `P_h = z^(v-c)(1 - z^(c+1))` if `c >= 0`, else 0.
pub fn p_poly(setting: &LocalSetting, h: &GL2Mat) -> ZPoly {
    let c = setting.content_of(h);
    if c < 0 {
        return ZPoly::zero();
    }
    p_formula(h.det_valuation(setting.p), c)
}

/// `P_h` without the indicator on `c >= 0`.
pub fn p_poly_raw(setting: &LocalSetting, h: &GL2Mat) -> ZPoly {
    p_formula(h.det_valuation(setting.p), setting.content_of(h))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeckeOp {
    /// `T(p)`: `h g` for the index-p representatives `g`.
    Tp,
    /// `T(p^-1)`: the same representatives scaled by `1/p`.
    TpInv,
}

pub fn hecke_translates(setting: &LocalSetting, h: &GL2Mat, op: HeckeOp) -> Vec<GL2Mat> {
    let scale = match op {
        HeckeOp::Tp => Rational::one(),
        HeckeOp::TpInv => Rational::new(1.into(), setting.p.into()),
    };
    index_p_reps(setting.p).iter().map(|g| h.mul(g).scale(&scale)).collect()
}

fn m_poly_with(setting: &LocalSetting, h: &GL2Mat, p_of: impl Fn(&GL2Mat) -> ZPoly) -> ZPoly {
    let p = setting.pp();
    let pr = int(p);
    let hp = h.scale(&pr);
    let hpinv = h.scale(&pr.recip());
    let mut m = p_of(&hp).scale(p * p).add(&p_of(&hpinv));
    m = m.add(&p_of(h).scale(setting.zero_count_of(h) - 1));
    for t in hecke_translates(setting, h, HeckeOp::Tp) {
        m = m.add(&p_of(&t).scale(p));
    }
    for t in hecke_translates(setting, h, HeckeOp::TpInv) {
        m = m.add(&p_of(&t));
    }
    m
}

/// `M_h = p^2 P_hp + P_hp^-1 + (N(f_max.h) - 1) P_h + p sum P_{h T(p)} + sum P_{h T(p^-1)}`.
pub fn m_poly_h(setting: &LocalSetting, h: &GL2Mat) -> ZPoly {
    m_poly_with(setting, h, |x| p_poly(setting, x))
}

/// `M_h` evaluated with every `P` taken from its formula, ignoring the
/// indicator on the content.
pub fn m_poly_h_raw(setting: &LocalSetting, h: &GL2Mat) -> ZPoly {
    m_poly_with(setting, h, |x| p_poly_raw(setting, x))
}

/// `B0(z) = 1 + (p+1)z + p z^2 + (p^2+p) z^3 + p^2 z^4`.
pub fn b0(p: u64) -> ZPoly {
    let p = p as i64;
    ZPoly::from_coeffs(&[1, p + 1, p, p * p + p, p * p])
}

/// `B0(z) P_h - z^2 M_h`.
pub fn b0_minus_shifted_m(setting: &LocalSetting, h: &GL2Mat) -> ZPoly {
    b0(setting.p)
        .mul(&p_poly(setting, h))
        .sub(&m_poly_h(setting, h).shift(2))
}

/// Closed form of `B0 P_h - z^2 M_h` for a coset of content 0, by the
/// reduction type of `f_max.h`.
pub fn c0_closed_form(kind: FactorType, v: i64, p: u64) -> ZPoly {
    let one_pz = ZPoly::from_coeffs(&[1, p as i64]);
    let one_m_z = ZPoly::from_coeffs(&[1, -1]);
    let zv = ZPoly::monomial(1, v);
    match kind {
        FactorType::Irreducible => zv.mul(&one_pz).mul(&ZPoly::from_coeffs(&[1, 0, 0, -1])),
        FactorType::LineTimesIrreducibleQuadratic => {
            zv.mul(&one_pz).mul(&ZPoly::from_coeffs(&[1, 0, -1]))
        }
        FactorType::ThreeLines => zv
            .mul(&one_pz)
            .mul(&one_m_z)
            .mul(&one_m_z)
            .mul(&ZPoly::from_coeffs(&[1, 2])),
        FactorType::DoubleLineTimesLine => zv
            .mul(&one_pz)
            .mul(&one_m_z)
            .mul(&ZPoly::from_coeffs(&[1, 0, -1])),
        FactorType::TripleLine => ZPoly::zero(),
    }
}

/// `g(z) = p^2 z^(v-c+1)(1-z^(c+2)) + z^(v-c-1)(1-z^c) + p z^(v-c)(1-z^(c+1))`,
/// the value of `p^2 P_hp + P_hp^-1 + (N-1) P_h` once `c >= 1`.
pub fn three_term_g(v: i64, c: i64, p: u64) -> ZPoly {
    let p = p as i64;
    p_formula(v + 2, c + 1)
        .scale(p * p)
        .add(&p_formula(v - 2, c - 1))
        .add(&p_formula(v, c).scale(p))
}

/// `p^2 P_hp + P_hp^-1 + (N(f_max.h) - 1) P_h` computed directly.
pub fn three_term_direct(setting: &LocalSetting, h: &GL2Mat) -> ZPoly {
    let p = setting.pp();
    let pr = int(p);
    p_poly(setting, &h.scale(&pr))
        .scale(p * p)
        .add(&p_poly(setting, &h.scale(&pr.recip())))
        .add(&p_poly(setting, h).scale(setting.zero_count_of(h) - 1))
}

/// The conditions defining the inner integral after unfolding, with
/// `f0 = w^2 z + w z^2`: `lambda` integral, `h' = lambda^-1 h~` integral,
/// `h'.f0` integral, and the mod-3 congruence for `h'`.
pub fn a0_bullets(p: u64, lambda: &Rational, h: &GL2Mat) -> bool {
    if valuation(lambda, p).map_or(true, |v| v < 0) {
        return false;
    }
    let f0 = BinaryCubic::split();
    let hp = h.tilde().scale(&lambda.recip());
    hp.is_integral(p) && act_left(&hp, &f0).is_integral(p) && dagger_condition(&f0, &hp, p)
}

/// The same conditions restated through the content: `T(h)` is a ring and
/// `0 <= val(lambda) <= c(T(h))`.
pub fn a0_content(p: u64, lambda: &Rational, h: &GL2Mat) -> bool {
    let setting = LocalSetting::split(p);
    let Some(vl) = valuation(lambda, p) else { return false };
    let ring = closure_test(&setting.f_max, &h.tilde(), p).unwrap_or(false);
    ring && vl >= 0 && vl <= setting.content_of(h)
}

/// Integrand of the unramified computation:
/// `|det(lambda^-1 h)|^-1` times the indicator that `h` is integral,
/// `val(lambda^-1 h)` is 0 or 1 and `T(x0)` is a ring, times 1 (valuation
/// 0) or `N(f_max) - eps(x0)` (valuation 1), with `x0 = p^-val(h) h`.
pub fn dchi_eval(setting: &LocalSetting, lambda: &Rational, h: &GL2Mat) -> Result<Rational> {
    let p = setting.p;
    if lambda.is_zero() {
        return Err(Error::Domain("lambda must be nonzero".into()));
    }
    let g = h.scale(&lambda.recip());
    let vg = g.valuation(p);
    if !h.is_integral(p) || !(vg == 0 || vg == 1) {
        return Ok(Rational::zero());
    }
    let x0 = h.scale(&pow_rat(&int(p as i64), -h.valuation(p)));
    if !closure_test(&setting.f_max, &x0.tilde(), p)? {
        return Ok(Rational::zero());
    }
    let weight = pow_rat(&int(p as i64), g.det_valuation(p));
    if vg == 0 {
        return Ok(weight);
    }
    let n = zero_count(&setting.f_max, p)? as i64;
    let eps = if x0.is_unit(p) { 1 } else { 2 };
    Ok(weight * int(n - eps))
}

/// Coset table as CSV.
pub fn coset_table_csv(setting: &LocalSetting, max_det_val: u32) -> String {
    let mut out = String::from("alpha,beta,delta,v,c,x0_count,x0_type,P\n");
    for r in coset_reps(setting, max_det_val) {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.alpha,
            r.beta,
            r.delta,
            r.v,
            r.c,
            r.x0_count.map(|n| n.to_string()).unwrap_or_default(),
            r.x0_type.map(|t| t.name()).unwrap_or(""),
            p_poly(setting, &r.mat),
        ));
    }
    out
}
