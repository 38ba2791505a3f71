//! Brute-force oracles written independently of the library internals.

#![allow(dead_code)]

use g2l_core::cubicforms::{BinaryCubic, FactorType, GL2Mat};
use g2l_core::exactalg::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// p-adic valuation of a nonzero integer.
pub fn val_i128(mut x: i128, p: i128) -> i64 {
    assert!(x != 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn val_rat(x: &Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut v = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            v += 1;
        }
        v
    };
    Some(count(x.numer().abs()) - count(x.denom().abs()))
}

fn p_integral(x: &Rational, p: u64) -> bool {
    val_rat(x, p).map_or(true, |v| v >= 0)
}

/// Coefficients of `f(x u + y v)` for integer vectors `u`, `v` and
/// `f = [a, b, c, d]`, by expanding the four monomials.
pub fn restrict_form(f: &[i128; 4], u: (i128, i128), v: (i128, i128)) -> [i128; 4] {
    // w = u.0 x + v.0 y, z = u.1 x + v.1 y as coefficient pairs in (x, y).
    let mul = |p: &[i128], q: &[i128]| -> Vec<i128> {
        let mut out = vec![0; p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    // Polynomials in x/y indexed by power of y.
    let w = [u.0, v.0];
    let z = [u.1, v.1];
    let monos = [
        mul(&mul(&w, &w), &w),
        mul(&mul(&w, &w), &z),
        mul(&mul(&w, &z), &z),
        mul(&mul(&z, &z), &z),
    ];
    let mut out = [0i128; 4];
    for (coef, m) in f.iter().zip(&monos) {
        for k in 0..4 {
            out[k] += coef * m[k];
        }
    }
    out
}

/// Contents of the forms attached to the `p + 1` index-p sublattices of
/// `Z_p^2`, found by restricting `f` to each sublattice and removing one
/// factor of `p` for the index. Sorted.
pub fn sublattice_contents_oracle(f: &[i128; 4], p: i128) -> Vec<i64> {
    let mut bases = vec![((p, 0), (0, 1))];
    for t in 0..p {
        bases.push(((1, t), (0, p)));
    }
    let mut out: Vec<i64> = bases
        .into_iter()
        .map(|(u, v)| {
            let g = restrict_form(f, u, v);
            g.iter().filter(|c| **c != 0).map(|c| val_i128(*c, p)).min().unwrap() - 1
        })
        .collect();
    out.sort_unstable();
    out
}

/// Factorisation type of a cubic form modulo p from its zeros on
/// `P^1(F_p)` and their multiplicities. Requires content 0.
pub fn factor_type_oracle(f: &[i128; 4], p: i128) -> FactorType {
    let m = |x: i128| x.rem_euclid(p);
    let [a, b, c, d] = f.map(m);
    assert!(a != 0 || b != 0 || c != 0 || d != 0);
    let g = |t: i128| m(((a * t + b) * t + c) * t + d);
    let dg = |t: i128| m((3 * a * t + 2 * b) * t + c);
    let mut roots = 0;
    let mut repeated = false;
    for t in 0..p {
        if g(t) == 0 {
            roots += 1;
            repeated |= dg(t) == 0;
        }
    }
    // The point at infinity is a zero when a = 0, a double zero when also b = 0.
    if a == 0 {
        roots += 1;
        repeated |= b == 0;
    }
    match (roots, repeated) {
        (0, _) => FactorType::Irreducible,
        (1, false) => FactorType::LineTimesIrreducibleQuadratic,
        (1, true) => FactorType::TripleLine,
        (2, _) => FactorType::DoubleLineTimesLine,
        (3, _) => FactorType::ThreeLines,
        _ => unreachable!(),
    }
}

/// Multiplication in the cubic ring of `f = (a, b, c, d)` with basis
/// `1, omega, theta`:
/// `omega theta = -ad`, `omega^2 = -ac - b omega + a theta`,
/// `theta^2 = -bd - d omega + c theta`.
fn ring_mul(f: &[Rational; 4], x: &[Rational; 3], y: &[Rational; 3]) -> [Rational; 3] {
    let [a, b, c, d] = f;
    let (x0, x1, x2) = (&x[0], &x[1], &x[2]);
    let (y0, y1, y2) = (&y[0], &y[1], &y[2]);
    let om2 = x1 * y1;
    let th2 = x2 * y2;
    let mixed = x1 * y2 + x2 * y1;
    [
        x0 * y0 - &mixed * a * d - &om2 * a * c - &th2 * b * d,
        x0 * y1 + x1 * y0 - &om2 * b - &th2 * d,
        x0 * y2 + x2 * y0 + &om2 * a + &th2 * c,
    ]
}

/// Whether `span{1, m11 omega + m12 theta, m21 omega + m22 theta}` over
/// `Z_(p)` is closed under multiplication, by multiplying generators and
/// solving for coordinates.
pub fn closure_oracle(f: &BinaryCubic, m: &GL2Mat, p: u64) -> bool {
    let fc = [f.a.clone(), f.b.clone(), f.c.clone(), f.d.clone()];
    let z = Rational::zero();
    let gens = [
        [z.clone(), m.p.clone(), m.q.clone()],
        [z.clone(), m.r.clone(), m.s.clone()],
    ];
    let det = &m.p * &m.s - &m.q * &m.r;
    for i in 0..2 {
        for j in i..2 {
            let prod = ring_mul(&fc, &gens[i], &gens[j]);
            // prod[1..] = s * row0 + t * row1 (Cramer's rule).
            let s = (&prod[1] * &m.s - &prod[2] * &m.r) / &det;
            let t = (&m.p * &prod[2] - &m.q * &prod[1]) / &det;
            if ![&prod[0], &s, &t].iter().all(|x| p_integral(x, p)) {
                return false;
            }
        }
    }
    true
}

/// Membership in the lattice with upper triangular basis rows.
fn in_lattice(h: &[[i64; 3]; 3], v: [i64; 3]) -> bool {
    let mut v = v;
    for i in 0..3 {
        if v[i] % h[i][i] != 0 {
            return false;
        }
        let k = v[i] / h[i][i];
        for j in i..3 {
            v[j] -= k * h[i][j];
        }
    }
    true
}

/// Subrings of `Z^3` (componentwise product, containing `(1,1,1)`) of
/// index `n`, by running over all Hermite normal forms.
pub fn subring_count_oracle(n: i64) -> usize {
    let mut count = 0;
    for a in (1..=n).filter(|a| n % a == 0) {
        for b in (1..=n / a).filter(|b| (n / a) % b == 0) {
            let c = n / a / b;
            for x in 0..b {
                for y in 0..c {
                    for z in 0..c {
                        let h = [[a, x, y], [0, b, z], [0, 0, c]];
                        if !in_lattice(&h, [1, 1, 1]) {
                            continue;
                        }
                        let closed = (0..3).all(|i| {
                            (i..3).all(|j| {
                                let prod = [h[i][0] * h[j][0], h[i][1] * h[j][1], h[i][2] * h[j][2]];
                                in_lattice(&h, prod)
                            })
                        });
                        if closed {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    count
}

/// `gcd` of integer coefficients.
pub fn int_content(f: &[i128; 4]) -> i128 {
    f.iter().fold(0i128, |g, x| g.gcd(x))
}

pub fn to_form(f: &[i128; 4]) -> BinaryCubic {
    let r = |x: i128| Rational::from_integer(BigInt::from(x));
    BinaryCubic::new(r(f[0]), r(f[1]), r(f[2]), r(f[3]))
}

pub fn one() -> Rational {
    Rational::one()
}
