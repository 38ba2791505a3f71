//! The verification suites behind `g2verify run`.

use std::time::Instant;

use g2l_core::archnum::{
    istar_ratios, istar_symbolic, jacobian_and_quartic_check, jprime_check, sl2_check, QuadSpec,
};
use g2l_core::cubicforms::{
    act_left, act_right, closure_by_multiplication, closure_test, content, index_p_sublattices, maximal_form,
    pairing, predicted_sublattice_contents, quartic_q, random_unit, ring_from_cubic, roots_in_p1,
    subring_counts, BinaryCubic, EtaleKind, FactorType, GL2Mat,
};
use g2l_core::exactalg::{int, pow_rat, rat, Affine, Rational};
use g2l_core::gammaledger::{normalization_sides, trivial_zero_orders, GammaExpr};
use g2l_core::intertwiner::{eigencheck, eisenstein_fe_check, fuv_check, rank_two_check};
use g2l_core::localzeta::{
    a0_bullets, a0_content, c0_closed_form, coset_reps, hecke_translates, b0_minus_shifted_m, m_poly_h,
    m_poly_h_raw, three_term_direct, three_term_g, HeckeOp, LocalSetting,
};
use g2l_core::rootsys::{
    expected_lambda_product, lambda_ratio_product, positive_roots, same_element, table1_walk, word_check,
    Character, LONG_WORD, LONG_WORD_ALT, SIMPLE_ROOTS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::SuiteConfig;
use crate::report::{Case, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SuiteName {
    Cubicforms,
    Localzeta,
    Rootsys,
    Intertwiner,
    Gammaledger,
    Archnum,
    All,
}

impl SuiteName {
    pub const MODULES: [SuiteName; 6] = [
        SuiteName::Cubicforms,
        SuiteName::Localzeta,
        SuiteName::Rootsys,
        SuiteName::Intertwiner,
        SuiteName::Gammaledger,
        SuiteName::Archnum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Cubicforms => "cubicforms",
            SuiteName::Localzeta => "localzeta",
            SuiteName::Rootsys => "rootsys",
            SuiteName::Intertwiner => "intertwiner",
            SuiteName::Gammaledger => "gammaledger",
            SuiteName::Archnum => "archnum",
            SuiteName::All => "all",
        }
    }

    fn cases(self, cfg: &SuiteConfig) -> Vec<Case> {
        match self {
            SuiteName::Cubicforms => cubicforms(cfg),
            SuiteName::Localzeta => localzeta(cfg),
            SuiteName::Rootsys => rootsys(),
            SuiteName::Intertwiner => intertwiner(cfg),
            SuiteName::Gammaledger => gammaledger(cfg),
            SuiteName::Archnum => archnum(cfg),
            SuiteName::All => SuiteName::MODULES.par_iter().flat_map(|s| s.cases(cfg)).collect(),
        }
    }
}

/// Run a suite; cases come back sorted by id.
pub fn run_suite(name: SuiteName, cfg: &SuiteConfig) -> Report {
    let start = Instant::now();
    let cases = name.cases(cfg);
    Report::new(name.as_str(), cfg.clone(), cases, start.elapsed().as_millis() as u64)
}

fn rng_for(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn tally(id: String, anchor: &str, total: usize, failures: Vec<String>) -> Case {
    let ok = failures.is_empty();
    let actual = if ok {
        format!("{} of {} hold", total, total)
    } else {
        format!("{} of {} fail; first: {}", failures.len(), total, failures[0])
    };
    Case::new(id, anchor, ok, format!("{} of {} hold", total, total), actual)
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-30..=30), rng.gen_range(1..=6))
}

fn random_form<R: Rng>(rng: &mut R) -> BinaryCubic {
    BinaryCubic::new(random_rational(rng), random_rational(rng), random_rational(rng), random_rational(rng))
}

fn random_matrix<R: Rng>(rng: &mut R) -> GL2Mat {
    loop {
        let e: Vec<Rational> = (0..4).map(|_| random_rational(rng)).collect();
        if let Ok(g) = GL2Mat::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
            return g;
        }
    }
}

fn settings(p: u64) -> Vec<(EtaleKind, LocalSetting)> {
    EtaleKind::ALL
        .iter()
        .map(|k| (*k, LocalSetting::new(p, maximal_form(*k, p)).expect("maximal fixture")))
        .collect()
}

fn kind_name(k: EtaleKind) -> &'static str {
    match k {
        EtaleKind::Split => "split",
        EtaleKind::LinearTimesQuadratic => "linear-quadratic",
        EtaleKind::CubicField => "cubic-field",
    }
}

fn sorted_contents(f: &BinaryCubic, p: u64) -> Result<Vec<i64>, String> {
    let mut v: Vec<i64> = index_p_sublattices(f, p).map_err(|e| e.to_string())?.into_iter().map(|x| x.1).collect();
    v.sort_unstable();
    Ok(v)
}

fn cubicforms(cfg: &SuiteConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    let mut rng = rng_for(cfg, 1);
    let n = cfg.samples;

    let mut fails = Vec::new();
    for _ in 0..n {
        let (f, f2, g) = (random_form(&mut rng), random_form(&mut rng), random_matrix(&mut rng));
        let det = g.det();
        if pairing(&act_left(&g, &f), &act_left(&g, &f2)) != &det * pairing(&f, &f2) {
            fails.push(format!("pairing, f={} g={}", f, g));
        }
        if pairing(&f, &act_left(&g, &f2)) != pairing(&act_right(&f, &g), &f2) {
            fails.push(format!("adjoint, f={} g={}", f, g));
        }
        match (quartic_q(&act_left(&g, &f)), quartic_q(&f)) {
            (Ok(a), Ok(b)) if a == &det * &det * &b => {}
            _ => fails.push(format!("quartic, f={} g={}", f, g)),
        }
    }
    cases.push(tally("cubicforms.equivariance".into(), "pairing and quartic invariant under GL2", n, fails));

    for &p in &cfg.primes {
        let mut fails = Vec::new();
        for _ in 0..n {
            let f = BinaryCubic::from_ints(
                rng.gen_range(-12..=12),
                rng.gen_range(-12..=12),
                rng.gen_range(-12..=12),
                rng.gen_range(-12..=12),
            );
            let a = rng.gen_range(0..3);
            let d = rng.gen_range(0..3);
            let m = GL2Mat::from_ints((p as i64).pow(a), rng.gen_range(0..4), 0, (p as i64).pow(d))
                .unwrap()
                .mul(&random_unit(p, &mut rng));
            match (closure_test(&f, &m, p), closure_by_multiplication(&f, &m, p)) {
                (Ok(x), Ok(y)) if x == y => {}
                other => fails.push(format!("f={} m={}: {:?}", f, m, other)),
            }
        }
        cases.push(tally(
            format!("cubicforms.closure.p{}", p),
            "subring closure: integrality and congruence vs multiplication",
            n,
            fails,
        ));
    }

    let examples = [
        ("split", BinaryCubic::split(), 2, vec![0, 0, 0]),
        ("cube", BinaryCubic::from_ints(1, 0, 0, 0), 2, vec![-1, -1, 2]),
        ("irreducible", BinaryCubic::from_ints(1, 1, 0, 1), 2, vec![-1, -1, -1]),
    ];
    for (name, f, p, want) in examples {
        let got = sorted_contents(&f, p).map(|v| format!("{:?}", v)).unwrap_or_else(|e| e);
        cases.push(Case::compare(
            format!("cubicforms.sublattice.example.{}", name),
            "contents of index-p sublattices",
            format!("{:?}", want),
            got,
        ));
    }

    for &p in &cfg.primes {
        let mut found: Vec<(FactorType, BinaryCubic)> = Vec::new();
        for (_, s) in settings(p) {
            for r in coset_reps(&s, 3).iter().flat_map(|r| [r.clone(), r.clone()]) {
                let h = r.mat.mul(&random_unit(p, &mut rng));
                let f = s.form_of(&h);
                if content(&f, p).ok() == Some(0) {
                    if let Ok((_, t)) = roots_in_p1(&f, p) {
                        if !found.iter().any(|(k, _)| *k == t) {
                            found.push((t, f));
                        }
                    }
                }
            }
        }
        for t in FactorType::ALL {
            let Some((_, f0)) = found.iter().find(|(k, _)| *k == t) else {
                cases.push(Case::skip(
                    format!("cubicforms.sublattice.p{}.{}", p, t.name()),
                    "index-p sublattice contents by reduction type",
                    "no sample",
                ));
                continue;
            };
            for c in 0..3 {
                let f = f0.scale(&pow_rat(&int(p as i64), c));
                let got = sorted_contents(&f, p).map(|v| format!("{:?}", v)).unwrap_or_else(|e| e);
                cases.push(Case::compare(
                    format!("cubicforms.sublattice.p{}.{}.c{}", p, t.name(), c),
                    "index-p sublattice contents by reduction type",
                    format!("{:?}", predicted_sublattice_contents(t, c, p)),
                    got,
                ));
            }
        }
    }

    let mut fails = Vec::new();
    for _ in 0..n.min(200) {
        let f = random_form(&mut rng);
        let t = ring_from_cubic(&f);
        if !t.is_commutative_associative() || !t.trace_zero_table_holds() {
            fails.push(f.to_string());
        }
    }
    cases.push(tally("cubicforms.ring-table".into(), "cubic ring multiplication table", n.min(200), fails));

    let max = cfg.primes.iter().copied().max().unwrap_or(2);
    match subring_counts(max) {
        Ok(rows) => {
            for &p in &cfg.primes {
                cases.push(Case::compare(
                    format!("cubicforms.subrings.index{}", p),
                    "subrings of Z^3 of prime index",
                    3,
                    rows[p as usize - 1].count,
                ));
            }
        }
        Err(e) => cases.push(Case::error("cubicforms.subrings", "subrings of Z^3", e)),
    }
    cases
}

fn localzeta(cfg: &SuiteConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    let mut rng = rng_for(cfg, 2);
    let vb = cfg.val_bound;
    for &p in &cfg.primes {
        let split = LocalSetting::split(p);
        let reps = coset_reps(&split, vb);
        for v in 0..=vb {
            let count = reps.iter().filter(|r| r.v == v as i64).count();
            let want: u64 = (0..=v).map(|k| p.pow(k)).sum();
            cases.push(Case::compare(
                format!("localzeta.cosets.p{}.v{}", p, v),
                "right cosets with given determinant valuation",
                want,
                count,
            ));
        }

        let mut c0: Vec<(FactorType, usize, Vec<String>)> = FactorType::ALL.iter().map(|t| (*t, 0, vec![])).collect();
        let mut three = (0, Vec::new());
        let mut collapse = (0, Vec::new());
        let mut hecke = (0, Vec::new());
        for (kind, s) in settings(p) {
            let reps = coset_reps(&s, vb);
            for r in &reps {
                for k in 0..=(cfg.samples / 100) {
                    let h = if k == 0 { r.mat.clone() } else { r.mat.mul(&random_unit(p, &mut rng)) };
                    let c = s.content_of(&h);
                    let v = h.det_valuation(p);
                    if c == 0 {
                        let t = roots_in_p1(&s.form_of(&h), p).unwrap().1;
                        let entry = c0.iter_mut().find(|e| e.0 == t).unwrap();
                        entry.1 += 1;
                        let got = b0_minus_shifted_m(&s, &h);
                        let want = c0_closed_form(t, v, p);
                        if got != want {
                            entry.2.push(format!("{} h={}: {} vs {}", kind_name(kind), h, got, want));
                        }
                    }
                    if c >= 1 {
                        three.0 += 1;
                        if three_term_direct(&s, &h) != three_term_g(v, c, p) {
                            three.1.push(format!("h={}", h));
                        }
                        collapse.0 += 1;
                        if m_poly_h(&s, &h) != m_poly_h_raw(&s, &h) {
                            collapse.1.push(format!("h={}", h));
                        }
                    }
                    if c >= 0 {
                        let f0 = s.form_of(&h).scale(&pow_rat(&int(p as i64), -c));
                        let t = roots_in_p1(&f0, p).unwrap().1;
                        let mut got: Vec<i64> =
                            hecke_translates(&s, &h, HeckeOp::Tp).iter().map(|g| s.content_of(g)).collect();
                        got.sort_unstable();
                        hecke.0 += 1;
                        if got != predicted_sublattice_contents(t, c, p) {
                            hecke.1.push(format!("h={}: {:?}", h, got));
                        }
                    }
                }
            }
        }
        for (t, total, fails) in c0 {
            let id = format!("localzeta.c0.p{}.{}", p, t.name());
            if total == 0 {
                cases.push(Case::skip(id, "content-zero identity", "no coset of this type within the bound"));
            } else {
                cases.push(tally(id, "content-zero identity for B0 P_h - z^2 M_h", total, fails));
            }
        }
        cases.push(tally(format!("localzeta.three-term.p{}", p), "three-term sum g(z) for positive content", three.0, three.1));
        cases.push(tally(
            format!("localzeta.content-one.p{}", p),
            "indicator on content is immaterial once c >= 1",
            collapse.0,
            collapse.1,
        ));
        cases.push(tally(format!("localzeta.hecke-contents.p{}", p), "contents of Hecke translates", hecke.0, hecke.1));

        let mut a0 = (0, Vec::new());
        for r in &reps {
            for k in 0..=4u32 {
                let lambda = int((p as i64).pow(k));
                a0.0 += 1;
                if a0_bullets(p, &lambda, &r.mat) != a0_content(p, &lambda, &r.mat) {
                    a0.1.push(format!("h={} lambda={}", r.mat, lambda));
                }
            }
        }
        cases.push(tally(format!("localzeta.support.p{}", p), "support conditions restated by content", a0.0, a0.1));
    }
    cases
}

fn rootsys() -> Vec<Case> {
    let mut cases = Vec::new();
    let expected: [(usize, &str, &str); 9] = [
        (4, "s - 1", "(s - 3)r1 - r2 + (s - 2)r3"),
        (1, "s - 2", "-r1 + (s - 3)r2 + (s - 2)r3"),
        (2, "s - 2", "-r1 + (s - 3)r2 + (-s + 2)r4"),
        (4, "s - 3", "-r1 + (s - 3)r3 + (-s + 2)r4"),
        (3, "2*s - 5", "-r1 + (-s + 2)r3 + (s - 3)r4"),
        (4, "s - 2", "-r1 + (-s + 2)r2 + (s - 3)r4"),
        (2, "s - 3", "-r1 + (-s + 2)r2 + (-s + 3)r3"),
        (1, "s - 3", "(-s + 2)r1 - r2 + (-s + 3)r3"),
        (4, "s - 4", "(-s + 2)r1 + (-s + 3)r2 - r3"),
    ];
    for (i, (row, (j, pair, ch))) in table1_walk().iter().zip(expected).enumerate() {
        let id = |col: &str| format!("rootsys.walk.row{}.{}", i + 1, col);
        cases.push(Case::compare(id("reflection"), "simple reflection of the walk", j, row.reflection));
        cases.push(Case::compare(id("pairing"), "coroot pairing", pair, &row.pairing));
        cases.push(Case::compare(id("character"), "new character", ch, &row.new_char));
    }
    let w = word_check(&LONG_WORD);
    cases.push(Case::new("rootsys.word.reduced", "long word is reduced of length 9", w.reduced && w.length == 9, "length 9, reduced", format!("length {}, {} inversions", w.length, w.inversions.len())));
    cases.push(Case::new("rootsys.word.heisenberg", "inversions are the Heisenberg roots", w.negates_heisenberg, true, w.negates_heisenberg));
    cases.push(Case::compare("rootsys.word.spellings", "two spellings of the long word agree", true, same_element(&LONG_WORD, &LONG_WORD_ALT)));
    let short = word_check(&[4]);
    cases.push(Case::compare("rootsys.word.short", "a single reflection is not the long word", false, short.negates_heisenberg));
    let same = expected_lambda_product()
        .and_then(|e| lambda_ratio_product().equal_up_to_constant(&e))
        .map(|c| c.map_or(false, |c| c.is_one()));
    cases.push(Case::new("rootsys.lambda-product", "product of Lambda ratios along the walk", same.as_ref().map_or(false, |x| *x), "equal", format!("{:?}", same)));
    let rho_ok = SIMPLE_ROOTS.iter().all(|a| Character::rho().pair(a) == Affine::ints(0, 1));
    cases.push(Case::compare("rootsys.rho", "half-sum pairs to 1 with simple coroots", true, rho_ok));
    let roots: Vec<_> = positive_roots().into_iter().flat_map(|r| [r, r.map(|x| -x)]).collect();
    let preserved = (1..=4).all(|j| roots.iter().all(|r| roots.contains(&g2l_core::rootsys::apply_word(&[j], r))));
    cases.push(Case::compare("rootsys.reflections-preserve-roots", "reflections permute the 24 roots", true, preserved));
    let lam = Character::lambda_s();
    let involution = (1..=4).all(|j| lam.reflect(j).reflect(j) == lam);
    cases.push(Case::compare("rootsys.involution", "reflections are involutions", true, involution));
    cases
}

fn intertwiner(cfg: &SuiteConfig) -> Vec<Case> {
    let mut cases: Vec<Case> = cfg
        .weights
        .par_iter()
        .flat_map(|&l| {
            let mut out = Vec::new();
            let id = |x: &str| format!("intertwiner.{}.l{:02}", x, l);
            match eigencheck(l) {
                Ok(r) => out.push(Case::new(
                    id("eigenvalue"),
                    "polynomial intertwiner eigenvalue on x^l y^l",
                    r.ok(),
                    "eigenvector matching both closed forms",
                    format!(
                        "eigenvector {}, product form {}, Gamma form {}",
                        r.is_eigenvector, r.matches_product_form, r.matches_gamma_form
                    ),
                )),
                Err(e) => out.push(Case::error(id("eigenvalue"), "", e)),
            }
            match rank_two_check(l) {
                Ok(r) => out.push(Case::compare(id("rank-two"), "rank-two compositions", "(true, true)", format!("{:?}", r))),
                Err(e) => out.push(Case::error(id("rank-two"), "", e)),
            }
            match eisenstein_fe_check(l) {
                Ok(Some(c)) => out.push(Case::new(id("functional-equation"), "N(s) c_l(s) = N(5-s)", c.is_one(), "constant 1", c)),
                Ok(None) => out.push(Case::new(id("functional-equation"), "N(s) c_l(s) = N(5-s)", false, "constant 1", "ratio not constant")),
                Err(e) => out.push(Case::error(id("functional-equation"), "", e)),
            }
            out
        })
        .collect();
    match fuv_check(10) {
        Ok(r) => cases.push(Case::new(
            "intertwiner.series",
            "coefficients of the two-variable power series",
            r.series_matches && r.recurrence_holds,
            "series, closed form and recurrence agree",
            format!("series {}, recurrence {}", r.series_matches, r.recurrence_holds),
        )),
        Err(e) => cases.push(Case::error("intertwiner.series", "", e)),
    }
    cases
}

fn gammaledger(cfg: &SuiteConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    for &l in &cfg.weights {
        let id = |x: &str| format!("gammaledger.{}.l{:02}", x, l);
        match trivial_zero_orders(l, (2 * l - 1)..(2 * l + 12)) {
            Ok(m) => {
                let bad: Vec<_> = m.iter().filter(|(s, k)| **k != if *s % 2 == 0 { 3 } else { 4 }).collect();
                cases.push(Case::new(id("trivial-zeros"), "orders of trivial zeros", bad.is_empty(), "3 at even, 4 at odd", format!("{:?}", m)));
            }
            Err(e) => cases.push(Case::error(id("trivial-zeros"), "", e)),
        }
        let norm = normalization_sides(l).and_then(|(a, b)| a.equal_modulo_duplication(&b));
        let anchor = "normalisation of the Eisenstein series Gamma factors";
        match norm {
            Ok(Some(c)) => cases.push(Case::new(id("normalisation"), anchor, c.is_one(), "constant 1", c)),
            Ok(None) => cases.push(Case::new(id("normalisation"), anchor, false, "constant 1", "ratio not constant")),
            Err(e) => cases.push(Case::error(id("normalisation"), anchor, e)),
        }
    }
    let g = |a, b| GammaExpr::gamma(Affine::new(rat(a, 1), rat(b, 2)));
    let merged = g(1, 0).mul(&g(1, 1));
    let doubled = GammaExpr::gamma(Affine::ints(2, 0))
        .mul(&GammaExpr::two_pow(Affine::ints(-2, 1)))
        .mul(&GammaExpr::pi_pow(Affine::new(int(0), rat(1, 2))));
    let ok = merged.equal_modulo_duplication(&doubled).map(|c| c.map_or(false, |c| c.is_one()));
    cases.push(Case::new("gammaledger.duplication", "Legendre duplication", ok.as_ref().map_or(false, |x| *x), "equal", format!("{:?}", ok)));
    cases
}

fn archnum(cfg: &SuiteConfig) -> Vec<Case> {
    let mut cases = Vec::new();
    let spec = QuadSpec::default();
    for s in [1.5, 2.0, 3.0] {
        for j in [0, 2, 4] {
            let id = format!("archnum.sl2.s{}.j{}", s, j);
            let anchor = "SL2 integral against Gamma closed form";
            match sl2_check(s, j, &spec) {
                Ok(r) => {
                    let gap = r.pochhammer_gap.unwrap_or(0.0);
                    cases.push(Case::new(
                        id,
                        anchor,
                        r.error <= cfg.tol && gap <= cfg.tol,
                        format!("{:.12e}", r.closed.0),
                        format!("{:.12e} (error {:.1e})", r.numeric.0, r.error),
                    ))
                }
                Err(e) => cases.push(Case::error(id, anchor, e)),
            }
        }
    }
    match jprime_check(&[1.0, 1.25, 1.5, 2.0], &QuadSpec::cubature()) {
        Ok(r) => cases.push(Case::new(
            "archnum.jprime",
            "angular integral over its closed form is constant",
            r.spread <= 1e-4,
            "spread <= 1e-4",
            format!("ratio {:.10}, spread {:.1e}", r.ratios[0], r.spread),
        )),
        Err(e) => cases.push(Case::error("archnum.jprime", "", e)),
    }
    let mut rng = rng_for(cfg, 6);
    match jacobian_and_quartic_check(cfg.samples.min(100), &mut rng) {
        Ok((a, b)) => {
            cases.push(Case::compare("archnum.root-jacobian", "Jacobian of the root coordinates", true, a));
            cases.push(Case::compare("archnum.root-quartic", "quartic invariant in root coordinates", true, b));
        }
        Err(e) => cases.push(Case::error("archnum.root-jacobian", "", e)),
    }
    for &l in cfg.weights.iter().filter(|l| (4..=10).contains(*l)) {
        let id = format!("archnum.istar.l{:02}", l);
        let anchor = "archimedean zeta integral against Gamma target";
        let numeric = istar_ratios(l, &[2.5, 3.0, 3.5], Some(&QuadSpec::cubature()));
        let symbolic = istar_symbolic(l);
        match (numeric, symbolic) {
            (Ok(r), Ok(Some(c))) => cases.push(Case::new(
                id,
                anchor,
                r.spread <= 1e-6,
                "constant ratio",
                format!("symbolic constant {}, numeric spread {:.1e}", c, r.spread),
            )),
            (Ok(_), Ok(None)) => cases.push(Case::new(id, anchor, false, "constant ratio", "symbolic ratio not constant")),
            (Err(e), _) | (_, Err(e)) => cases.push(Case::error(id, anchor, e)),
        }
    }
    cases
}
