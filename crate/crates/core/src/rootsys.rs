//! The D4 root system in the coordinates `r1..r4`, characters affine in
//! `s`, and the reflection walk along the reduced word of the long
//! intertwining operator.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactalg::{int, Affine, Rational};
use crate::gammaledger::GammaExpr;
use crate::Result;

/// Integer vector in the `r1..r4` coordinates.
pub type Root = [i64; 4];

/// Simple roots `a1 = r1-r2`, `a2 = r3+r4`, `a3 = r3-r4`, `a4 = r2-r3`.
pub const SIMPLE_ROOTS: [Root; 4] = [[1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1], [0, 1, -1, 0]];

/// Roots of the Heisenberg unipotent radical, all made negative by the
/// long element.
pub const HEISENBERG_ROOTS: [Root; 9] = [
    [1, 0, -1, 0],
    [1, 0, 0, -1],
    [1, 0, 0, 1],
    [1, 0, 1, 0],
    [0, 1, -1, 0],
    [0, 1, 0, -1],
    [0, 1, 0, 1],
    [0, 1, 1, 0],
    [1, 1, 0, 0],
];

/// The reduced word, applied right to left.
pub const LONG_WORD: [usize; 9] = [4, 1, 2, 4, 3, 4, 2, 1, 4];
/// A second spelling of the same Weyl group element.
pub const LONG_WORD_ALT: [usize; 9] = [4, 1, 2, 3, 4, 3, 2, 1, 4];

/// Character `sum c_i r_i` with coefficients affine in `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character(pub [Affine; 4]);

impl Character {
    /// `lambda_s = (s-3) r1 + (s-2) r2 - r3`.
    pub fn lambda_s() -> Self {
        Character([Affine::ints(1, -3), Affine::ints(1, -2), Affine::ints(0, -1), Affine::zero()])
    }

    /// `delta_B^(1/2) = 3 r1 + 2 r2 + r3`.
    pub fn rho() -> Self {
        Character([Affine::ints(0, 3), Affine::ints(0, 2), Affine::ints(0, 1), Affine::zero()])
    }

    /// Euclidean pairing with an integer root.
    pub fn pair(&self, root: &Root) -> Affine {
        let mut acc = Affine::zero();
        for (c, r) in self.0.iter().zip(root) {
            acc = acc.add(&c.scale(&int(*r)));
        }
        acc
    }

    /// `lambda - <alpha_j, lambda> alpha_j`, for the simple root `j` in 1..=4.
    pub fn reflect(&self, j: usize) -> Character {
        let a = &SIMPLE_ROOTS[j - 1];
        let k = self.pair(a);
        let mut out = self.0.clone();
        for (c, r) in out.iter_mut().zip(a) {
            *c = c.sub(&k.scale(&int(*r)));
        }
        Character(out)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            if *c == Affine::zero() {
                continue;
            }
            let simple = c.slope.is_zero() || c.offset.is_zero();
            let coeff = if c.slope.is_zero() && c.offset == -Rational::one() {
                "-".to_string()
            } else if c.slope.is_zero() && c.offset.is_one() {
                String::new()
            } else if simple && c.slope.is_zero() {
                c.offset.to_string()
            } else {
                format!("({})", c)
            };
            parts.push(format!("{}r{}", coeff, i + 1));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Which family of operator a reflection contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// Diagonal in the `x, y` monomial basis.
    XY,
    /// Diagonal in the `x+y, x-y` basis.
    PlusMinus,
}

/// One step of the reflection walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRow {
    pub reflection: usize,
    pub pairing: Affine,
    pub new_char: Character,
    pub kind: OperatorKind,
}

impl WalkRow {
    /// `Lambda(pairing) / Lambda(pairing + 1)`.
    pub fn lambda_ratio(&self) -> GammaExpr {
        GammaExpr::lambda(self.pairing.clone())
            .div(&GammaExpr::lambda(self.pairing.shift(&int(1))))
            .unwrap()
    }
}

/// Apply the word right to left starting from `lambda_s`.
pub fn table1_walk() -> Vec<WalkRow> {
    walk(&LONG_WORD, Character::lambda_s())
}

pub fn walk(word: &[usize], start: Character) -> Vec<WalkRow> {
    let mut ch = start;
    let mut rows = Vec::new();
    for &j in word.iter().rev() {
        let pairing = ch.pair(&SIMPLE_ROOTS[j - 1]);
        ch = ch.reflect(j);
        rows.push(WalkRow {
            reflection: j,
            pairing,
            new_char: ch.clone(),
            kind: if j == 4 { OperatorKind::PlusMinus } else { OperatorKind::XY },
        });
    }
    rows
}

/// Product of the Lambda ratios along the walk.
pub fn lambda_ratio_product() -> GammaExpr {
    table1_walk()
        .iter()
        .fold(GammaExpr::one(), |acc, r| acc.mul(&r.lambda_ratio()))
}

/// Expected product `Lambda(s-3)^2 Lambda(s-4) Lambda(2s-5) / (Lambda(s-1)^2 Lambda(s) Lambda(2s-4))`.
pub fn expected_lambda_product() -> Result<GammaExpr> {
    let l = |a, b| GammaExpr::lambda(Affine::ints(a, b));
    l(1, -3)
        .pow(2)?
        .mul(&l(1, -4))
        .mul(&l(2, -5))
        .div(&l(1, -1).pow(2)?)?
        .div(&l(1, 0))?
        .div(&l(2, -4))
}

fn reflect_root(x: &Root, j: usize) -> Root {
    let a = &SIMPLE_ROOTS[j - 1];
    let k: i64 = x.iter().zip(a).map(|(u, v)| u * v).sum();
    let mut out = *x;
    for (o, r) in out.iter_mut().zip(a) {
        *o -= k * r;
    }
    out
}

/// Apply the word (right to left) to a vector.
pub fn apply_word(word: &[usize], x: &Root) -> Root {
    word.iter().rev().fold(*x, |acc, &j| reflect_root(&acc, j))
}

/// Positive roots `r_i - r_j` and `r_i + r_j` for `i < j`.
pub fn positive_roots() -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for sign in [-1, 1] {
                let mut r = [0; 4];
                r[i] = 1;
                r[j] = sign;
                out.push(r);
            }
        }
    }
    out
}

fn is_positive(x: &Root) -> bool {
    x.iter().find(|c| **c != 0).map_or(false, |c| *c > 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordReport {
    pub length: usize,
    /// Positive roots sent to negative roots.
    pub inversions: Vec<Root>,
    /// The word length equals the number of inversions.
    pub reduced: bool,
    /// The inversion set is exactly the Heisenberg roots.
    pub negates_heisenberg: bool,
}

pub fn word_check(word: &[usize]) -> WordReport {
    let mut inversions: Vec<Root> = positive_roots()
        .into_iter()
        .filter(|r| !is_positive(&apply_word(word, r)))
        .collect();
    inversions.sort();
    let mut heis = HEISENBERG_ROOTS.to_vec();
    heis.sort();
    WordReport {
        length: word.len(),
        reduced: inversions.len() == word.len(),
        negates_heisenberg: inversions == heis,
        inversions,
    }
}

/// Whether two words give the same linear map.
pub fn same_element(w1: &[usize], w2: &[usize]) -> bool {
    (0..4).all(|i| {
        let mut e = [0; 4];
        e[i] = 1;
        apply_word(w1, &e) == apply_word(w2, &e)
    })
}

/// Text rendering of the walk, one row per reflection.
pub fn render_table() -> String {
    let mut out = String::from("step  refl  pairing   new character\n");
    for (i, r) in table1_walk().iter().enumerate() {
        out.push_str(&format!(
            "{:>4}  [{}]   {:<8}  {}\n",
            i + 1,
            r.reflection,
            r.pairing.to_string(),
            r.new_char
        ));
    }
    out
}
