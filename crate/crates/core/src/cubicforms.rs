//! Binary cubic forms, the cubic rings they parametrise, and the p-adic
//! invariants used by the local zeta integral.
//!
//! A form `f = a w^3 + b w^2 z + c w z^2 + d z^3` determines a ring with
//! basis `{1, omega, theta}`. Matrices act on the left by
//! `g.f = det(g)^-1 f((w,z) g)` and on the right by `f.g = g~.f` where
//! `g~ = det(g) g^-1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::exactalg::{int, rat, reduce_mod, valuation, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryCubic {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl BinaryCubic {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        BinaryCubic { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        BinaryCubic::new(int(a), int(b), int(c), int(d))
    }

    /// `wz(w+z)`, the form of the split maximal order.
    pub fn split() -> Self {
        BinaryCubic::from_ints(0, 1, 1, 0)
    }

    fn from_array(v: [Rational; 4]) -> Self {
        let [a, b, c, d] = v;
        BinaryCubic { a, b, c, d }
    }

    pub fn coeffs(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        BinaryCubic::new(&self.a * k, &self.b * k, &self.c * k, &self.d * k)
    }

    /// Substitute linear forms for `w` and `z`; each is `(coeff of w, coeff of z)`.
    fn substitute(&self, lw: (&Rational, &Rational), lz: (&Rational, &Rational)) -> [Rational; 4] {
        let mut out: [Rational; 4] = Default::default();
        for (i, coeff) in self.coeffs().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            // w^(3-i) z^i as a binary form, dense in w-degree descending.
            let mut form = vec![(*coeff).clone()];
            for k in 0..3 {
                let l = if k < 3 - i { lw } else { lz };
                let mut next = vec![Rational::zero(); form.len() + 1];
                for (j, x) in form.iter().enumerate() {
                    next[j] += x * l.0;
                    next[j + 1] += x * l.1;
                }
                form = next;
            }
            for (o, x) in out.iter_mut().zip(form) {
                *o += x;
            }
        }
        out
    }

    pub fn is_integral(&self, p: u64) -> bool {
        self.coeffs().iter().all(|x| valuation(x, p).map_or(true, |v| v >= 0))
    }
}

impl fmt::Display for BinaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.a, self.b, self.c, self.d)
    }
}

/// 2x2 matrix `(p q; r s)` with nonzero determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GL2Mat {
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
    pub s: Rational,
}

impl GL2Mat {
    pub fn new(p: Rational, q: Rational, r: Rational, s: Rational) -> Result<Self> {
        let m = GL2Mat { p, q, r, s };
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(m)
    }

    pub fn from_ints(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        GL2Mat::new(int(p), int(q), int(r), int(s))
    }

    pub fn identity() -> Self {
        GL2Mat::from_ints(1, 0, 0, 1).unwrap()
    }

    pub fn diag(x: Rational, y: Rational) -> Result<Self> {
        GL2Mat::new(x, Rational::zero(), Rational::zero(), y)
    }

    pub fn det(&self) -> Rational {
        &self.p * &self.s - &self.q * &self.r
    }

    pub fn mul(&self, o: &GL2Mat) -> GL2Mat {
        GL2Mat {
            p: &self.p * &o.p + &self.q * &o.r,
            q: &self.p * &o.q + &self.q * &o.s,
            r: &self.r * &o.p + &self.s * &o.r,
            s: &self.r * &o.q + &self.s * &o.s,
        }
    }

    pub fn scale(&self, k: &Rational) -> GL2Mat {
        GL2Mat {
            p: &self.p * k,
            q: &self.q * k,
            r: &self.r * k,
            s: &self.s * k,
        }
    }

    /// `g~ = (s -q; -r p) = det(g) g^-1`.
    pub fn tilde(&self) -> GL2Mat {
        GL2Mat {
            p: self.s.clone(),
            q: -self.q.clone(),
            r: -self.r.clone(),
            s: self.p.clone(),
        }
    }

    pub fn inverse(&self) -> GL2Mat {
        self.tilde().scale(&self.det().recip())
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.p, &self.q, &self.r, &self.s]
    }

    /// Minimum p-adic valuation of the entries.
    pub fn valuation(&self, p: u64) -> i64 {
        self.entries().iter().filter_map(|x| valuation(x, p)).min().unwrap()
    }

    pub fn is_integral(&self, p: u64) -> bool {
        self.valuation(p) >= 0
    }

    /// Membership in `GL2(Z_p)`.
    pub fn is_unit(&self, p: u64) -> bool {
        self.is_integral(p) && valuation(&self.det(), p) == Some(0)
    }

    pub fn det_valuation(&self, p: u64) -> i64 {
        valuation(&self.det(), p).unwrap()
    }

    /// Apply to a column vector.
    pub fn apply(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        (&self.p * x + &self.q * y, &self.r * x + &self.s * y)
    }
}

impl fmt::Display for GL2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.p, self.q, self.r, self.s)
    }
}

/// `g.f = det(g)^-1 f((w,z) g)`.
pub fn act_left(g: &GL2Mat, f: &BinaryCubic) -> BinaryCubic {
    // (w,z) g = (p w + r z, q w + s z)
    let v = f.substitute((&g.p, &g.r), (&g.q, &g.s));
    BinaryCubic::from_array(v).scale(&g.det().recip())
}

/// `f.g = g~.f = det(g)^2 f((w,z) g^-1)`.
pub fn act_right(f: &BinaryCubic, g: &GL2Mat) -> BinaryCubic {
    act_left(&g.tilde(), f)
}

/// Invariant symplectic pairing `ad' - bc'/3 + cb'/3 - da'`.
pub fn pairing(f: &BinaryCubic, g: &BinaryCubic) -> Rational {
    &f.a * &g.d - &f.b * &g.c / int(3) + &f.c * &g.b / int(3) - &f.d * &g.a
}

/// The quartic invariant, computed from two equivalent expressions that
/// must agree.
pub fn quartic_q(f: &BinaryCubic) -> Result<Rational> {
    let (a, b, c, d) = (&f.a, &f.b, &f.c, &f.d);
    let t = a * d - b * c / int(3);
    let q1 = &t * &t + rat(4, 27) * a * c * c * c + rat(4, 27) * d * b * b * b
        - rat(4, 27) * b * b * c * c;
    let inner = int(-27) * a * a * d * d + int(18) * a * b * c * d + b * b * c * c
        - int(4) * a * c * c * c
        - int(4) * d * b * b * b;
    let q2 = rat(-1, 27) * inner;
    if q1 != q2 {
        return Err(Error::Inconsistent(format!("quartic forms disagree: {} vs {}", q1, q2)));
    }
    Ok(q1)
}

/// Discriminant `b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd`.
pub fn discriminant(f: &BinaryCubic) -> Rational {
    quartic_q(f).unwrap() * int(-27)
}

/// Coordinates `(a, b/3, c/3, d)` in which the pairing is standard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WCoords(pub [Rational; 4]);

pub fn to_w_coords(f: &BinaryCubic) -> WCoords {
    WCoords([f.a.clone(), &f.b / int(3), &f.c / int(3), f.d.clone()])
}

pub fn from_w_coords(x: &WCoords) -> BinaryCubic {
    BinaryCubic::new(x.0[0].clone(), &x.0[1] * int(3), &x.0[2] * int(3), x.0[3].clone())
}

/// Ring element in the basis `{1, omega, theta}`.
pub type RingElt = [Rational; 3];

/// Multiplication table of the cubic ring attached to a form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicRingTable {
    pub form: BinaryCubic,
    /// `table[i][j]` is `e_i e_j` with `e = (1, omega, theta)`.
    pub table: [[RingElt; 3]; 3],
}

fn elt(x: Rational, y: Rational, z: Rational) -> RingElt {
    [x, y, z]
}

pub fn ring_from_cubic(f: &BinaryCubic) -> CubicRingTable {
    let (a, b, c, d) = (&f.a, &f.b, &f.c, &f.d);
    let z = Rational::zero;
    let one = elt(Rational::one(), z(), z());
    let om = elt(z(), Rational::one(), z());
    let th = elt(z(), z(), Rational::one());
    let omth = elt(-(a * d), z(), z());
    let om2 = elt(-(a * c), -b.clone(), a.clone());
    let th2 = elt(-(b * d), -d.clone(), c.clone());
    let table = [
        [one, om.clone(), th.clone()],
        [om, om2, omth.clone()],
        [th, omth, th2],
    ];
    CubicRingTable { form: f.clone(), table }
}

impl CubicRingTable {
    pub fn mul(&self, x: &RingElt, y: &RingElt) -> RingElt {
        let mut out: RingElt = Default::default();
        for i in 0..3 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..3 {
                    out[k] += &c * &self.table[i][j][k];
                }
            }
        }
        out
    }

    /// Commutativity and associativity on all basis triples.
    pub fn is_commutative_associative(&self) -> bool {
        let basis: Vec<RingElt> = (0..3)
            .map(|i| {
                let mut e: RingElt = Default::default();
                e[i] = Rational::one();
                e
            })
            .collect();
        for x in &basis {
            for y in &basis {
                if self.mul(x, y) != self.mul(y, x) {
                    return false;
                }
                for z in &basis {
                    if self.mul(&self.mul(x, y), z) != self.mul(x, &self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Products of the trace-zero elements `omega0 = omega + b/3` and
    /// `theta0 = theta - c/3`, in the basis `{1, omega0, theta0}`, compared
    /// with the closed forms
    /// `omega0 theta0 = (b/3)theta0 - (c/3)omega0 + (bc/9 - ad)`,
    /// `omega0^2 = a theta0 - (b/3)omega0 + 2(b^2 - 3ac)/9`,
    /// `theta0^2 = (c/3)theta0 - d omega0 + 2(c^2 - 3bd)/9`.
    pub fn trace_zero_table_holds(&self) -> bool {
        let f = &self.form;
        let (a, b, c, d) = (&f.a, &f.b, &f.c, &f.d);
        let b3 = b / int(3);
        let c3 = c / int(3);
        let om0 = elt(b3.clone(), Rational::one(), Rational::zero());
        let th0 = elt(-c3.clone(), Rational::zero(), Rational::one());
        // Convert x + y omega0 + z theta0 to the original basis.
        let from0 = |x: Rational, y: Rational, z: Rational| -> RingElt {
            elt(x + &y * &b3 - &z * &c3, y, z)
        };
        let e1 = from0(&b3 * &c3 - a * d, -c3.clone(), b3.clone());
        let e2 = from0(rat(2, 9) * (b * b - int(3) * a * c), -b3.clone(), a.clone());
        let e3 = from0(rat(2, 9) * (c * c - int(3) * b * d), -d.clone(), c3.clone());
        self.mul(&om0, &th0) == e1 && self.mul(&om0, &om0) == e2 && self.mul(&th0, &th0) == e3
    }
}

fn require_integral(f: &BinaryCubic, p: u64) -> Result<()> {
    if !f.is_integral(p) {
        return Err(Error::Domain(format!("form {} is not {}-integral", f, p)));
    }
    Ok(())
}

fn is_integral_rat(x: &Rational, p: u64) -> bool {
    valuation(x, p).map_or(true, |v| v >= 0)
}

/// The congruence `(b'; -c') = m (b; -c) mod 3` with `f' = m.f`; vacuous
/// unless `p = 3`.
pub fn dagger_condition(f: &BinaryCubic, m: &GL2Mat, p: u64) -> bool {
    if p != 3 {
        return true;
    }
    let f1 = act_left(m, f);
    let (x, y) = m.apply(&f.b, &-f.c.clone());
    let dx = &f1.b - x;
    let dy = -f1.c.clone() - y;
    let div3 = |t: &Rational| valuation(t, 3).map_or(true, |v| v >= 1);
    div3(&dx) && div3(&dy)
}

/// Whether `T_m = span{1, m11 omega + m12 theta, m21 omega + m22 theta}`
/// is closed under multiplication, via integrality of `m.f` and the
/// mod-3 congruence.
pub fn closure_test(f: &BinaryCubic, m: &GL2Mat, p: u64) -> Result<bool> {
    require_integral(f, p)?;
    let f1 = act_left(m, f);
    Ok(f1.is_integral(p) && dagger_condition(f, m, p))
}

/// Closure of `T_m` decided directly: multiply spanning elements in the
/// ring tensored with Q and test membership in the lattice.
pub fn closure_by_multiplication(f: &BinaryCubic, m: &GL2Mat, p: u64) -> Result<bool> {
    require_integral(f, p)?;
    let ring = ring_from_cubic(f);
    let x = elt(Rational::zero(), m.p.clone(), m.q.clone());
    let y = elt(Rational::zero(), m.r.clone(), m.s.clone());
    let inv = m.inverse();
    for prod in [ring.mul(&x, &x), ring.mul(&x, &y), ring.mul(&y, &y)] {
        // Coordinates in {1, x, y}: constant term, then solve with m^-1.
        let (cx, cy) = (
            &prod[1] * &inv.p + &prod[2] * &inv.r,
            &prod[1] * &inv.q + &prod[2] * &inv.s,
        );
        if ![&prod[0], &cx, &cy].iter().all(|t| is_integral_rat(t, p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimum p-adic valuation of the coefficients.
pub fn content(f: &BinaryCubic, p: u64) -> Result<i64> {
    f.coeffs()
        .iter()
        .filter_map(|x| valuation(x, p))
        .min()
        .ok_or_else(|| Error::Domain("content of the zero form".into()))
}

/// Factorisation pattern of a nonzero cubic over `F_p` on `P^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorType {
    Irreducible,
    LineTimesIrreducibleQuadratic,
    ThreeLines,
    DoubleLineTimesLine,
    TripleLine,
}

impl FactorType {
    pub const ALL: [FactorType; 5] = [
        FactorType::Irreducible,
        FactorType::LineTimesIrreducibleQuadratic,
        FactorType::ThreeLines,
        FactorType::DoubleLineTimesLine,
        FactorType::TripleLine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FactorType::Irreducible => "irreducible",
            FactorType::LineTimesIrreducibleQuadratic => "line-times-quadratic",
            FactorType::ThreeLines => "three-lines",
            FactorType::DoubleLineTimesLine => "double-line-times-line",
            FactorType::TripleLine => "triple-line",
        }
    }
}

/// Coefficients of a p-integral form modulo `p`.
pub fn reduce_mod_p(f: &BinaryCubic, p: u64) -> Result<[u64; 4]> {
    let mut out = [0; 4];
    for (o, x) in out.iter_mut().zip(f.coeffs()) {
        *o = reduce_mod(x, p)?;
    }
    Ok(out)
}

/// Number of zeros in `P^1(F_p)` and the factorisation type, for a form
/// of content 0.
pub fn roots_in_p1(f: &BinaryCubic, p: u64) -> Result<(usize, FactorType)> {
    if content(f, p)? != 0 {
        return Err(Error::Domain(format!("form {} does not have content 0", f)));
    }
    let [a, b, c, d] = reduce_mod_p(f, p)?;
    // Dehomogenise at z = 1: g(t) = a t^3 + b t^2 + c t + d.
    let g = vec![d, c, b, a];
    let deg = g.iter().rposition(|x| *x != 0).unwrap();
    let mut mults = Vec::new();
    if deg < 3 {
        mults.push(3 - deg);
    }
    for t in 0..p {
        let mut poly = g[..=deg].to_vec();
        let mut k = 0;
        while poly.len() > 1 {
            let (q, r) = synthetic_div(&poly, t, p);
            if r != 0 {
                break;
            }
            poly = q;
            k += 1;
        }
        if k > 0 {
            mults.push(k);
        }
    }
    mults.sort_unstable_by(|x, y| y.cmp(x));
    let total: usize = mults.iter().sum();
    let kind = match (total, mults.as_slice()) {
        (0, _) => FactorType::Irreducible,
        (1, _) => FactorType::LineTimesIrreducibleQuadratic,
        (3, [1, 1, 1]) => FactorType::ThreeLines,
        (3, [2, 1]) => FactorType::DoubleLineTimesLine,
        (3, [3]) => FactorType::TripleLine,
        _ => return Err(Error::Inconsistent(format!("root multiplicities {:?}", mults))),
    };
    Ok((mults.len(), kind))
}

/// Divide `poly` (constant term first) by `(t - root)` over `F_p`.
fn synthetic_div(poly: &[u64], root: u64, p: u64) -> (Vec<u64>, u64) {
    let n = poly.len();
    let mut q = vec![0; n - 1];
    let mut carry = 0;
    for i in (0..n).rev() {
        let v = (poly[i] + carry * root) % p;
        if i == 0 {
            return (q, v);
        }
        q[i - 1] = v;
        carry = v;
    }
    unreachable!()
}

/// Number of zeros in `P^1(F_p)` of a p-integral form: `p + 1` if the form
/// vanishes mod p.
pub fn zero_count(f: &BinaryCubic, p: u64) -> Result<usize> {
    match content(f, p)? {
        0 => Ok(roots_in_p1(f, p)?.0),
        c if c > 0 => Ok(p as usize + 1),
        _ => Err(Error::Domain(format!("form {} is not {}-integral", f, p))),
    }
}

/// Representatives `g` of the right cosets `g GL2(Z_p)` with
/// `det g` of valuation 1: `diag(1, p)` and `(p j; 0 1)` for `0 <= j < p`.
pub fn index_p_reps(p: u64) -> Vec<GL2Mat> {
    let pp = p as i64;
    let mut reps = vec![GL2Mat::from_ints(1, 0, 0, pp).unwrap()];
    for j in 0..pp {
        reps.push(GL2Mat::from_ints(pp, j, 0, 1).unwrap());
    }
    reps
}

/// The `p + 1` forms `f.g` attached to the index-p sublattices, with their
/// contents.
pub fn index_p_sublattices(f: &BinaryCubic, p: u64) -> Result<Vec<(BinaryCubic, i64)>> {
    index_p_reps(p)
        .iter()
        .map(|g| {
            let h = act_right(f, g);
            let c = content(&h, p)?;
            Ok((h, c))
        })
        .collect()
}

/// Sorted contents of the index-p sublattice forms predicted for
/// `f = p^c f0`, by the factorisation type of `f0` mod p.
pub fn predicted_sublattice_contents(kind: FactorType, c: i64, p: u64) -> Vec<i64> {
    let p = p as usize;
    let mut v = match kind {
        FactorType::Irreducible => vec![c - 1; p + 1],
        FactorType::LineTimesIrreducibleQuadratic => {
            let mut v = vec![c];
            v.extend(vec![c - 1; p]);
            v
        }
        FactorType::ThreeLines => {
            let mut v = vec![c; 3];
            v.extend(vec![c - 1; p - 2]);
            v
        }
        FactorType::DoubleLineTimesLine => {
            let mut v = vec![c + 1, c];
            v.extend(vec![c - 1; p - 1]);
            v
        }
        FactorType::TripleLine => {
            let mut v = vec![c + 2];
            v.extend(vec![c - 1; p]);
            v
        }
    };
    v.sort_unstable();
    v
}

/// Splitting type of an unramified etale cubic algebra over `Q_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EtaleKind {
    Split,
    LinearTimesQuadratic,
    CubicField,
}

impl EtaleKind {
    pub const ALL: [EtaleKind; 3] =
        [EtaleKind::Split, EtaleKind::LinearTimesQuadratic, EtaleKind::CubicField];

    pub fn factor_type(self) -> FactorType {
        match self {
            EtaleKind::Split => FactorType::ThreeLines,
            EtaleKind::LinearTimesQuadratic => FactorType::LineTimesIrreducibleQuadratic,
            EtaleKind::CubicField => FactorType::Irreducible,
        }
    }
}

/// A form whose ring is the maximal order of the unramified etale algebra
/// of the given kind: `wz(w+z)` when split, otherwise the first small form
/// with unit discriminant and the right reduction type.
pub fn maximal_form(kind: EtaleKind, p: u64) -> BinaryCubic {
    if kind == EtaleKind::Split {
        return BinaryCubic::split();
    }
    let range = -2i64..=2;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    let f = BinaryCubic::from_ints(a, b, c, d);
                    if f.is_zero() || valuation(&discriminant(&f), p) != Some(0) {
                        continue;
                    }
                    if matches!(roots_in_p1(&f, p), Ok((_, t)) if t == kind.factor_type()) {
                        return f;
                    }
                }
            }
        }
    }
    unreachable!("no small maximal form for p = {}", p)
}

/// Random element of `GL2(Z)` that is a unit at `p`, with small entries.
pub fn random_unit<R: Rng>(p: u64, rng: &mut R) -> GL2Mat {
    loop {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-6..=6)).collect();
        if let Ok(m) = GL2Mat::from_ints(e[0], e[1], e[2], e[3]) {
            if m.is_unit(p) {
                return m;
            }
        }
    }
}

/// One row of the subring count table for `Z^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubringRow {
    pub index: u64,
    pub count: usize,
    /// Histogram of the integer content (gcd of coefficients of `m.f`).
    pub contents: BTreeMap<BigInt, usize>,
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Subrings of `Z^3` containing 1, counted by index: sublattices of the
/// span of `omega, theta` for the split form, kept when closed at every
/// prime dividing the index.
pub fn subring_counts(max_index: u64) -> Result<Vec<SubringRow>> {
    let f = BinaryCubic::split();
    let mut rows = Vec::new();
    for n in 1..=max_index {
        let primes = prime_divisors(n);
        let mut row = SubringRow { index: n, count: 0, contents: BTreeMap::new() };
        for a in (1..=n).filter(|a| n % a == 0) {
            let d = n / a;
            for b in 0..d {
                let m = GL2Mat::from_ints(a as i64, b as i64, 0, d as i64)?;
                let mut closed = true;
                for &p in &primes {
                    if !closure_test(&f, &m, p)? {
                        closed = false;
                        break;
                    }
                }
                if !closed {
                    continue;
                }
                row.count += 1;
                let g = act_left(&m, &f);
                let k = g
                    .coeffs()
                    .iter()
                    .map(|x| x.to_integer())
                    .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
                *row.contents.entry(k.abs()).or_insert(0) += 1;
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// CSV with columns `index,count,contents_histogram`; the histogram is
/// `content:count` pairs separated by `;`.
pub fn subring_csv(rows: &[SubringRow]) -> String {
    let mut out = String::from("index,count,contents_histogram\n");
    for r in rows {
        let hist: Vec<String> = r.contents.iter().map(|(k, v)| format!("{}:{}", k, v)).collect();
        out.push_str(&format!("{},{},{}\n", r.index, r.count, hist.join(";")));
    }
    out
}
