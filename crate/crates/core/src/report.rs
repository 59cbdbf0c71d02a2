//! Fixture report: every reference value the library is expected to
//! reproduce, grouped by acceptance criterion, with the origin of the expected
//! value and a pass / fail / known-deviation status.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::exact_arith::{mpoly_derivative, solve};
use crate::fusion::{
    descent_operator, determine_b, indicial_polynomial, ope_level2_coefficient, solve_euler,
    EulerOperator, FixtureCase, LogSeries,
};
use crate::virasoro::{bracket, central_coefficient, UEAElement, VirMode};
use crate::vir_modules::{
    check_hom_pair, singular_vectors, BasisLabel, DensityModule, DensityVector, JordanVermaModule,
    ModeAction, ModuleVector,
};
use crate::wlog::{
    check_jacobi, cocycle, cocycle_residue, deviations_report, generation_check, pairing,
    Cocycle, Gen, Polarization, WLogWord,
};
use crate::{Poly, QMatrix, Rational, Symbol};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
    KnownDeviation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::KnownDeviation => "known-deviation",
        })
    }
}

/// Where the expected value comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Source {
    /// Printed in the reference text.
    Published,
    /// Worked out independently (by hand or by a second method).
    Derived,
    /// A structural identity that must hold exactly.
    Invariant,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Published => "published",
            Source::Derived => "derived",
            Source::Invariant => "invariant",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixtureResult {
    pub id: String,
    pub criterion: u8,
    pub source: Source,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

fn fixture(
    criterion: u8,
    name: &str,
    source: Source,
    expected: impl fmt::Display,
    computed: impl fmt::Display,
    ok: bool,
) -> FixtureResult {
    FixtureResult {
        id: format!("c{criterion}/{name}"),
        criterion,
        source,
        expected: expected.to_string(),
        computed: computed.to_string(),
        status: if ok { Status::Pass } else { Status::Fail },
    }
}

fn deviation(mut r: FixtureResult) -> FixtureResult {
    if r.status == Status::Fail {
        r.status = Status::KnownDeviation;
    }
    r
}

fn failed(criterion: u8, name: &str, source: Source, expected: &str, err: impl fmt::Display) -> FixtureResult {
    fixture(criterion, name, source, expected, format!("error: {err}"), false)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn p(s: &str) -> Poly {
    s.parse().expect("fixture polynomial")
}

/// The level-3 Gram matrix of M_2(c,h) in the basis
/// L(-1)^3 v, L(-1)L(-2) v, L(-3) v, then the same on w.
pub fn reference_level3_matrix() -> Vec<Vec<Poly>> {
    let s = [
        ["48h^3 + 72h^2 + 24h", "36h^2 + 36h", "24h"],
        ["36h^2 + 36h", "8h^2 + ch + 34h + 2c", "16h + 2c"],
        ["24h", "16h + 2c", "6h + 2c"],
    ];
    let ds = [
        ["144h^2 + 144h + 24", "72h + 36", "24"],
        ["72h + 36", "16h + 34 + c", "16"],
        ["24", "16", "6"],
    ];
    let mut rows = vec![];
    for i in 0..3 {
        let mut r: Vec<Poly> = s[i].iter().map(|t| p(t)).collect();
        r.extend(ds[i].iter().map(|t| p(t)));
        rows.push(r);
    }
    for row in &s {
        let mut r = vec![Poly::zero(); 3];
        r.extend(row.iter().map(|t| p(t)));
        rows.push(r);
    }
    rows
}

fn criterion1() -> Vec<FixtureResult> {
    let name = "level3-gram-matrix";
    let m = match JordanVermaModule::symbolic(2).and_then(|m| m.shapovalov_matrix(3)) {
        Ok(m) => m,
        Err(e) => return vec![failed(1, name, Source::Published, "6x6 table", e)],
    };
    let want = reference_level3_matrix();
    let mut first_bad = None;
    for (i, row) in want.iter().enumerate() {
        for (j, w) in row.iter().enumerate() {
            if first_bad.is_none() && m.get(i, j) != w {
                first_bad = Some(format!("entry ({i},{j}) = {} != {w}", m.get(i, j)));
            }
        }
    }
    let ok = first_bad.is_none() && m.rows() == 6;
    vec![fixture(
        1,
        name,
        Source::Published,
        "6x6 table, exact",
        first_bad.unwrap_or_else(|| "all 36 entries equal".into()),
        ok,
    )]
}

fn criterion2() -> Vec<FixtureResult> {
    let name = "level3-determinant";
    let f1 = p("16h^2 + 2ch - 10h + c");
    let f2 = p("3h^2 + ch - 7h + 2 + c");
    let want = &(&p("2304h^4") * &f1.pow(2)) * &f2.pow(2);
    let expected = "48^2 h^4 (16h^2 + 2ch - 10h + c)^2 (3h^2 + ch - 7h + 2 + c)^2";
    match JordanVermaModule::symbolic(2).and_then(|m| m.shapovalov_determinant(3)) {
        Ok(d) => {
            let ok = d == want;
            let computed = if ok { "equal after expansion".to_string() } else { d.to_string() };
            vec![fixture(2, name, Source::Published, expected, computed, ok)]
        }
        Err(e) => vec![failed(2, name, Source::Published, expected, e)],
    }
}

fn criterion3() -> Vec<FixtureResult> {
    (1..=5usize)
        .into_par_iter()
        .map(|level| {
            let name = format!("square-law-level{level}");
            let expected = "block [[S, dS/dh], [0, S]] and det = (det S)^2";
            let run = || -> crate::Result<(bool, bool)> {
                let s = JordanVermaModule::symbolic(1)?.shapovalov_matrix(level)?;
                let s2m = JordanVermaModule::symbolic(2)?;
                let s2 = s2m.shapovalov_matrix(level)?;
                let n = s.rows();
                let mut block = s2.rows() == 2 * n;
                for i in 0..n {
                    for j in 0..n {
                        block &= s2.get(i, j) == s.get(i, j)
                            && s2.get(n + i, n + j) == s.get(i, j)
                            && s2.get(n + i, j).is_zero()
                            && *s2.get(i, n + j) == mpoly_derivative(s.get(i, j), "h")?;
                    }
                }
                let d = JordanVermaModule::symbolic(1)?.shapovalov_determinant(level)?;
                let square = s2m.shapovalov_determinant(level)? == d.pow(2);
                Ok((block, square))
            };
            match run() {
                Ok((block, square)) => fixture(
                    3,
                    &name,
                    Source::Derived,
                    expected,
                    format!("block {}, square law {}", ok_word(block), ok_word(square)),
                    block && square,
                ),
                Err(e) => failed(3, &name, Source::Derived, expected, e),
            }
        })
        .collect()
}

fn ok_word(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "FAILS"
    }
}

fn label_vector(level: usize, terms: &[(&[u32], usize, i64)]) -> ModuleVector {
    ModuleVector::from_terms(
        level,
        terms
            .iter()
            .map(|&(parts, top, c)| (BasisLabel::new(parts.to_vec(), top), Poly::from_i64(c))),
    )
}

/// The two level-3 singular vectors of M_2(1,1).
pub fn reference_singular_pair() -> (ModuleVector, ModuleVector) {
    let s1 = label_vector(3, &[(&[1, 1, 1], 1, 1), (&[1, 2], 1, -4), (&[3], 1, 6)]);
    let s2 = label_vector(
        3,
        &[
            (&[1, 2], 1, -2),
            (&[3], 1, 5),
            (&[1, 1, 1], 2, 1),
            (&[1, 2], 2, -4),
            (&[3], 2, 6),
        ],
    );
    (s1, s2)
}

fn in_span(space: &[ModuleVector], v: &ModuleVector, basis: &[BasisLabel]) -> bool {
    let Some(cols) = space.iter().map(|s| s.coords(basis)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let Some(target) = v.coords(basis) else {
        return false;
    };
    let m = QMatrix::from_fn(basis.len(), cols.len(), |i, j| cols[j][i].clone());
    solve(&m, &target).is_some()
}

fn criterion4() -> Vec<FixtureResult> {
    let mut out = vec![];
    let (s1, s2) = reference_singular_pair();
    let m11 = JordanVermaModule::numeric(q(1, 1), q(1, 1), 2).expect("module");
    match singular_vectors(&m11, 3) {
        Ok(sing) => {
            let basis = m11.level_basis(3);
            let (a, b) = (in_span(&sing, &s1, &basis), in_span(&sing, &s2, &basis));
            out.push(fixture(
                4,
                "c1-h1-level3-singular-space",
                Source::Published,
                "dimension 2, containing both printed vectors",
                format!("dimension {}, first {}, second {}", sing.len(), in_word(a), in_word(b)),
                sing.len() == 2 && a && b,
            ));
        }
        Err(e) => out.push(failed(4, "c1-h1-level3-singular-space", Source::Published, "dimension 2", e)),
    }
    match check_hom_pair(&m11, &s1, &s2) {
        Ok(ok) => out.push(fixture(
            4,
            "hom-m2-1-4-to-m2-1-1",
            Source::Published,
            "homomorphism certified",
            if ok { "certified" } else { "rejected" },
            ok,
        )),
        Err(e) => out.push(failed(4, "hom-m2-1-4-to-m2-1-1", Source::Published, "certified", e)),
    }
    let m00 = JordanVermaModule::numeric(q(0, 1), q(0, 1), 2).expect("module");
    let want = vec![label_vector(1, &[(&[1], 1, 1)])];
    match singular_vectors(&m00, 1) {
        Ok(sing) => {
            let shown: Vec<String> = sing.iter().map(|v| v.to_string()).collect();
            out.push(fixture(
                4,
                "c0-h0-level1-singular-space",
                Source::Published,
                "span{L(-1)v1}",
                format!("span{{{}}}", shown.join(", ")),
                sing == want,
            ))
        }
        Err(e) => out.push(failed(4, "c0-h0-level1-singular-space", Source::Published, "span{L(-1)v1}", e)),
    }
    out
}

fn in_word(b: bool) -> &'static str {
    if b {
        "in span"
    } else {
        "NOT in span"
    }
}

fn roots_text(roots: &[(Rational, usize)]) -> String {
    let parts: Vec<String> = roots.iter().map(|(r, m)| format!("{r}^{m}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn case_indicial(case: FixtureCase) -> crate::Result<(EulerOperator, crate::fusion::IndicialData)> {
    let (c, h1, h2, level) = case.params()?;
    let m = JordanVermaModule::numeric(c, h2.clone(), 1)?;
    let sing = singular_vectors(&m, level)?;
    let v = sing
        .first()
        .ok_or_else(|| crate::Error::OutsideFamily(format!("{case}: no singular vector")))?;
    let op = descent_operator(v, &Poly::constant(h1.clone()))?;
    let d = indicial_polynomial(&op, &Poly::constant(h1), &Poly::constant(h2))?;
    Ok((op, d))
}

fn resonant_op() -> EulerOperator {
    let mut op = EulerOperator::term(0, 2, Poly::one());
    op.add_term(1, 1, Poly::constant(q(3, 2)));
    op.add_term(2, 0, Poly::constant(q(-15, 16)));
    op
}

fn criterion5() -> Vec<FixtureResult> {
    let mut out = vec![];
    match case_indicial(FixtureCase::C0 { p: 2 }) {
        Ok((op, d)) => {
            out.push(fixture(
                5,
                "c0-operator",
                Source::Published,
                resonant_op(),
                &op,
                op == resonant_op(),
            ));
            let want = vec![(q(0, 1), 1), (q(2, 1), 1)];
            out.push(fixture(
                5,
                "c0-roots",
                Source::Published,
                roots_text(&want),
                roots_text(&d.roots),
                d.roots == want && !d.logarithmic,
            ));
        }
        Err(e) => out.push(failed(5, "c0-operator", Source::Published, &resonant_op().to_string(), e)),
    }
    match case_indicial(FixtureCase::CMinus2) {
        Ok((_, d)) => out.push(fixture(
            5,
            "cminus2-double-root",
            Source::Published,
            "{0^2}, logarithmic",
            format!("{}, logarithmic = {}", roots_text(&d.roots), d.logarithmic),
            d.roots == vec![(q(0, 1), 2)] && d.logarithmic,
        )),
        Err(e) => out.push(failed(5, "cminus2-double-root", Source::Published, "{0^2}", e)),
    }
    for (m, n) in [(1u32, 1u32), (2, 1), (2, 2), (3, 1)] {
        let case = FixtureCase::C1 { m, n };
        let name = format!("c1-{m}-{n}-roots");
        let (mi, ni) = (m as i64, n as i64);
        let want: Vec<Rational> = ((mi - ni).abs()..=mi + ni)
            .step_by(2)
            .map(|i| q(i * i, 4))
            .collect();
        let want_text = format!(
            "{{{}}}",
            want.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")
        );
        match case_indicial(case) {
            Ok((_, d)) => {
                let got: Vec<Rational> = d.roots.iter().map(|(r, _)| r.clone()).collect();
                out.push(fixture(5, &name, Source::Published, want_text, roots_text(&d.roots), got == want));
            }
            Err(e) => out.push(failed(5, &name, Source::Published, &want_text, e)),
        }
    }
    out
}

fn criterion6() -> Vec<FixtureResult> {
    let mut out = vec![];
    let b = Poly::var(Symbol::B);
    let rhs = LogSeries::term(q(-5, 4), 0, b.scale(&q(2, 3)));
    let want = LogSeries::term(q(3, 4), 1, b.scale(&q(1, 3)));
    match solve_euler(&resonant_op(), &rhs) {
        Ok(sol) => out.push(fixture(
            6,
            "resonant-particular-solution",
            Source::Published,
            &want,
            &sol.particular,
            sol.particular == want,
        )),
        Err(e) => out.push(failed(6, "resonant-particular-solution", Source::Published, &want.to_string(), e)),
    }
    match determine_b(&q(5, 8)) {
        Ok(v) => out.push(fixture(6, "b-at-five-eighths", Source::Published, "5/2", &v, v == q(5, 2))),
        Err(e) => out.push(failed(6, "b-at-five-eighths", Source::Published, "5/2", e)),
    }
    out
}

fn random_rational(rng: &mut ChaCha8Rng, span: i64, den: i64) -> Rational {
    q(rng.gen_range(-span..=span), rng.gen_range(1..=den))
}

fn criterion7() -> Vec<FixtureResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = vec![];
    for _ in 0..20 {
        let mut c = random_rational(&mut rng, 30, 7);
        if c.is_zero() {
            c = q(1, 2);
        }
        let h = random_rational(&mut rng, 30, 9);
        let want = &h * q(2, 1) / &c;
        match ope_level2_coefficient(&c, &h) {
            Ok(a) if a == want => {}
            Ok(a) => bad.push(format!("(c,h)=({c},{h}): {a}")),
            Err(e) => bad.push(format!("(c,h)=({c},{h}): {e}")),
        }
    }
    let mut out = vec![fixture(
        7,
        "ope-coefficient-20-samples",
        Source::Published,
        "a = 2h/c",
        if bad.is_empty() { "20/20 agree".to_string() } else { bad.join("; ") },
        bad.is_empty(),
    )];
    let at_zero = ope_level2_coefficient(&q(0, 1), &q(5, 8));
    out.push(fixture(
        7,
        "ope-coefficient-c0-error",
        Source::Derived,
        "error",
        match &at_zero {
            Ok(a) => a.to_string(),
            Err(e) => format!("error: {e}"),
        },
        at_zero.is_err(),
    ));
    out
}

/// [[L(a),L(b)],L(c)] + cyclic = 0 in U(Vir) for |a|,|b|,|c| <= range.
pub fn virasoro_jacobi_violations(range: i64) -> Vec<(i64, i64, i64)> {
    let comm = |x: &UEAElement, y: &UEAElement| x.mul(y).add(&y.mul(x).scale(&-Poly::one()));
    let one = |m| UEAElement::from_word(&[VirMode::L(m)]);
    (-range..=range)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut bad = vec![];
            for b in -range..=range {
                let ab = bracket(VirMode::L(a), VirMode::L(b));
                if ab != comm(&one(a), &one(b)) {
                    bad.push((a, b, 0));
                }
                for c in -range..=range {
                    let j = comm(&comm(&one(a), &one(b)), &one(c))
                        .add(&comm(&comm(&one(b), &one(c)), &one(a)))
                        .add(&comm(&comm(&one(c), &one(a)), &one(b)));
                    if !j.is_zero() {
                        bad.push((a, b, c));
                    }
                }
            }
            bad
        })
        .collect()
}

/// L(m)L(n)u - L(n)L(m)u = (m-n)L(m+n)u + δ_{m+n,0} (m^3-m)/12 c u on random
/// vectors of M_2(c,h); returns the number of failing samples.
pub fn module_commutator_failures(samples: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<_> = (0..samples)
        .map(|_| {
            let c = random_rational(&mut rng, 12, 5);
            let h = random_rational(&mut rng, 12, 5);
            let level = rng.gen_range(0..=4usize);
            let (m, n) = (rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64));
            let coeffs: Vec<i64> = (0..12).map(|_| rng.gen_range(-3..=3)).collect();
            (c, h, level, m, n, coeffs)
        })
        .collect();
    cases
        .into_par_iter()
        .filter(|(c, h, level, m, n, coeffs)| {
            let module = JordanVermaModule::numeric(c.clone(), h.clone(), 2).expect("module");
            let basis = module.level_basis(*level);
            let u = ModuleVector::from_terms(
                *level,
                basis.iter().zip(coeffs).map(|(l, &k)| (l.clone(), Poly::from_i64(k))),
            );
            let mut act = ModeAction::new(&module);
            let nu = act.apply(*n, &u);
            let mu = act.apply(*m, &u);
            let lhs = act.apply(*m, &nu).sub(&act.apply(*n, &mu));
            let mut rhs = act.apply(m + n, &u).scale(&Poly::from_i64(m - n));
            if m + n == 0 {
                let k = central_coefficient(*m) * c;
                rhs = rhs.add(&u.scale(&Poly::constant(k)));
            }
            lhs != rhs
        })
        .count()
}

/// Witt relation on the density module, symbolic in λ, μ, β.
pub fn density_bracket_violations(range: i64) -> Vec<(i64, i64, i64, usize)> {
    let f = DensityModule::symbolic(1);
    (-range..=range)
        .into_par_iter()
        .flat_map_iter(|m| {
            let f = &f;
            let mut bad = vec![];
            for n in -range..=range {
                for r in -range..=range {
                    for i in 0..=1 {
                        let u = DensityVector::basis(r, i);
                        let ok = (|| -> crate::Result<bool> {
                            let lhs = f
                                .apply(m, &f.apply(n, &u)?)?
                                .add(&f.apply(n, &f.apply(m, &u)?)?.scale(&-Poly::one()));
                            let rhs = f.apply(m + n, &u)?.scale(&Poly::from_i64(m - n));
                            Ok(lhs == rhs)
                        })()
                        .unwrap_or(false);
                        if !ok {
                            bad.push((m, n, r, i));
                        }
                    }
                }
            }
            bad
        })
        .collect()
}

/// Largest singular space of M_2(c,h) over random (c,h) at levels 1..=max_level,
/// with a few points on reducibility curves mixed in.
pub fn max_singular_count(samples: usize, max_level: usize, seed: u64) -> crate::Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(Rational, Rational)> = (0..samples)
        .map(|k| match k % 4 {
            // h = 0 and the level-2 curve 16h^2 + 2ch - 10h + c = 0 at c = 0
            0 => (random_rational(&mut rng, 10, 3), q(0, 1)),
            1 if k % 8 == 1 => (q(0, 1), q(5, 8)),
            _ => (random_rational(&mut rng, 10, 3), random_rational(&mut rng, 10, 4)),
        })
        .collect();
    let counts: Vec<crate::Result<usize>> = points
        .into_par_iter()
        .map(|(c, h)| {
            let m = JordanVermaModule::numeric(c, h, 2)?;
            let mut best = 0;
            for level in 1..=max_level {
                best = best.max(singular_vectors(&m, level)?.len());
            }
            Ok(best)
        })
        .collect();
    counts.into_iter().try_fold(0, |acc, c| Ok(acc.max(c?)))
}

fn criterion8() -> Vec<FixtureResult> {
    let mut out = vec![];
    let v = virasoro_jacobi_violations(6);
    out.push(fixture(
        8,
        "virasoro-jacobi",
        Source::Invariant,
        "no violations for |m| <= 6",
        format!("{} violations", v.len()),
        v.is_empty(),
    ));
    let f = module_commutator_failures(100, 8);
    out.push(fixture(
        8,
        "module-commutator-100-samples",
        Source::Invariant,
        "0 failures",
        format!("{f} failures"),
        f == 0,
    ));
    let d = density_bracket_violations(4);
    out.push(fixture(
        8,
        "density-bracket",
        Source::Invariant,
        "no violations for |m|,|n| <= 4",
        format!("{} violations", d.len()),
        d.is_empty(),
    ));
    match max_singular_count(200, 4, 8) {
        Ok(k) => out.push(fixture(
            8,
            "singular-count-bound",
            Source::Invariant,
            "at most 2 over 200 points",
            format!("max {k}"),
            k <= 2,
        )),
        Err(e) => out.push(failed(8, "singular-count-bound", Source::Invariant, "at most 2", e)),
    }
    out
}

fn word(s: &str) -> WLogWord {
    s.parse().expect("fixture word")
}

fn criterion9() -> Vec<FixtureResult> {
    let mut out = vec![];
    let r = check_jacobi(3, Cocycle::None);
    out.push(fixture(
        9,
        "jacobi-uncentered",
        Source::Invariant,
        "no violations for |i|,|m| <= 3",
        format!("{} checked, {} violations", r.checked, r.violations.len()),
        r.passed(),
    ));
    let r = check_jacobi(3, Cocycle::Residue);
    out.push(fixture(
        9,
        "cocycle-identity-residue",
        Source::Invariant,
        "no violations for |i|,|m| <= 3",
        format!("{} checked, {} violations", r.checked, r.violations.len()),
        r.passed() && r.skipped == 0,
    ));
    let r = check_jacobi(3, Cocycle::Closed);
    out.push(deviation(fixture(
        9,
        "cocycle-identity-closed",
        Source::Derived,
        "no violations inside the closed form's domain",
        format!("{} checked, {} skipped, {} violations", r.checked, r.skipped, r.violations.len()),
        r.passed(),
    )));
    let mut horizontal = 0;
    for m in -6..=6 {
        for n in -6..=6 {
            for mode in [Cocycle::Residue, Cocycle::Closed] {
                if !cocycle(Gen::new(0, m), Gen::new(0, n), mode).is_ok_and(|v| v.is_zero()) {
                    horizontal += 1;
                }
            }
        }
    }
    out.push(fixture(
        9,
        "horizontal-cocycle-zero",
        Source::Published,
        "0 for |m|,|n| <= 6",
        format!("{horizontal} nonzero"),
        horizontal == 0,
    ));

    let b = Poly::var(Symbol::B);
    let two_thirds = b.scale(&q(2, 3));
    let (l, rgt) = (word("t(-1,-2)"), word("t(0,-2)"));
    match pairing(&l, &rgt, Cocycle::Residue, Polarization::ModeSign) {
        Ok(v) => out.push(fixture(
            9,
            "vev-first-pairing-magnitude",
            Source::Published,
            "|value| = 2b/3",
            &v,
            v == two_thirds || v == -two_thirds.clone(),
        )),
        Err(e) => out.push(failed(9, "vev-first-pairing-magnitude", Source::Published, "2b/3", e)),
    }
    match pairing(&l, &rgt, Cocycle::Residue, Polarization::LogIndex) {
        Ok(v) => out.push(deviation(fixture(
            9,
            "vev-first-pairing-log-polarization",
            Source::Published,
            "2b/3",
            &v,
            v == two_thirds,
        ))),
        Err(e) => out.push(failed(9, "vev-first-pairing-log-polarization", Source::Published, "2b/3", e)),
    }
    match pairing(&l, &word("t(1,-2)"), Cocycle::Residue, Polarization::ModeSign) {
        Ok(v) => out.push(deviation(fixture(
            9,
            "vev-second-pairing",
            Source::Published,
            "0",
            &v,
            v.is_zero(),
        ))),
        Err(e) => out.push(failed(9, "vev-second-pairing", Source::Published, "0", e)),
    }
    let vertical = cocycle_residue(Gen::new(3, 0), Gen::new(-1, 0));
    out.push(deviation(fixture(
        9,
        "vertical-central-charge",
        Source::Published,
        "0",
        format!("c(t^3, t^-1) = {vertical}"),
        vertical.is_zero(),
    )));
    let closed_example = cocycle(Gen::new(-1, 2), Gen::new(0, -2), Cocycle::Closed);
    out.push(fixture(
        9,
        "closed-form-hand-value",
        Source::Derived,
        "2/3",
        match &closed_example {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        },
        closed_example.as_ref().is_ok_and(|v| *v == q(2, 3)),
    ));
    let devs = deviations_report(3);
    let sample = devs
        .first()
        .map(|d| format!("; first {} {}: closed {} residue {}", d.a, d.b, d.closed, d.residue))
        .unwrap_or_default();
    out.push(deviation(fixture(
        9,
        "closed-vs-residue",
        Source::Derived,
        "closed form equals residue on its domain",
        format!("{} differing pairs{sample}", devs.len()),
        devs.is_empty(),
    )));
    let g = generation_check(&[-1, 0, 1], 3);
    out.push(fixture(
        9,
        "generation",
        Source::Published,
        "t(i,m), |i|,|m| <= 3, in the generated span",
        format!("{} missing", g.missing.len()),
        g.passed(),
    ));
    out
}

pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

pub fn run_criterion(n: u8) -> Vec<FixtureResult> {
    match n {
        1 => criterion1(),
        2 => criterion2(),
        3 => criterion3(),
        4 => criterion4(),
        5 => criterion5(),
        6 => criterion6(),
        7 => criterion7(),
        8 => criterion8(),
        9 => criterion9(),
        _ => vec![],
    }
}

/// All fixtures, ordered by identifier.
pub fn run_all() -> Vec<FixtureResult> {
    let mut all: Vec<FixtureResult> = CRITERIA
        .par_iter()
        .flat_map_iter(|&n| run_criterion(n))
        .collect();
    all.sort_by(|a, b| a.id.cmp(&b.id));
    all
}

pub fn any_failed(results: &[FixtureResult]) -> bool {
    results.iter().any(|r| r.status == Status::Fail)
}

pub fn render_table(results: &[FixtureResult]) -> String {
    let header = ["fixture", "source", "status", "expected", "computed"];
    let rows: Vec<[String; 5]> = results
        .iter()
        .map(|r| {
            [
                r.id.clone(),
                r.source.to_string(),
                r.status.to_string(),
                r.expected.clone(),
                r.computed.clone(),
            ]
        })
        .collect();
    let mut width = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join(" | ").trim_end().to_string()
    };
    let mut out = vec![line(&header.map(String::from))];
    out.push(width.map(|w| "-".repeat(w)).join("-+-"));
    out.extend(rows.iter().map(|r| line(r)));
    let count = |s| results.iter().filter(|r| r.status == s).count();
    out.push(format!(
        "{} fixtures: {} pass, {} known-deviation, {} fail",
        results.len(),
        count(Status::Pass),
        count(Status::KnownDeviation),
        count(Status::Fail)
    ));
    out.join("\n") + "\n"
}

pub fn report_to_json(results: &[FixtureResult]) -> Value {
    Value::Array(
        results
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "criterion": r.criterion,
                    "source": r.source.to_string(),
                    "expected": r.expected,
                    "computed": r.computed,
                    "status": r.status.to_string(),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_criteria_pass() {
        for n in [1, 2, 4, 5, 6, 7] {
            for r in run_criterion(n) {
                assert_eq!(r.status, Status::Pass, "{r:?}");
            }
        }
    }

    #[test]
    fn known_deviations_are_wlog_only() {
        for r in run_criterion(9) {
            assert_ne!(r.status, Status::Fail, "{r:?}");
        }
        for n in [1, 4, 6] {
            assert!(run_criterion(n).iter().all(|r| r.status != Status::KnownDeviation));
        }
    }

    #[test]
    fn table_layout() {
        let rs = vec![
            fixture(1, "a", Source::Published, "x", "x", true),
            deviation(fixture(9, "b", Source::Derived, "0", "1", false)),
        ];
        let t = render_table(&rs);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "fixture | source    | status          | expected | computed");
        assert_eq!(lines[2], "c1/a    | published | pass            | x        | x");
        assert!(t.contains("known-deviation"));
        assert!(t.ends_with("2 fixtures: 1 pass, 1 known-deviation, 0 fail\n"));
        assert!(!any_failed(&rs));
        assert_eq!(report_to_json(&rs)[1]["status"], "known-deviation");
    }
}
