//! JSON encodings of result types. Rationals are strings "p/q" (or "p"),
//! polynomials are {"vars":[...],"terms":[{"coeff":"p/q","exps":[...]}]}
//! with terms in descending graded-lex order. Objects are emitted with sorted
//! keys, so output is byte-deterministic.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_arith::{parse_rational, Monomial, UniPoly, NSYM};
use crate::fusion::{EulerOperator, IndicialData, LogSeries};
use crate::virasoro::{PBWWord, UEAElement};
use crate::vir_modules::{BasisLabel, JordanVermaModule, ModuleVector};
use crate::wlog::{Deviation, Gen, WLogElement};
use crate::{Poly, PolyMatrix, QPoly, Rational, SymPoly, Symbol};

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(&format!("field {key:?}"), v))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

fn int(v: &Value) -> Result<i64> {
    v.as_i64().ok_or_else(|| bad("integer", v))
}

fn uint(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| bad("non-negative integer", v))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    parse_rational(v.as_str().ok_or_else(|| bad("rational string", v))?)
}

pub fn poly_to_json(p: &Poly) -> Value {
    let vars = p.symbols();
    let terms: Vec<Value> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let exps: Vec<u16> = vars.iter().map(|&s| m.exp(s)).collect();
            json!({"coeff": rational_to_json(c), "exps": exps})
        })
        .collect();
    let names: Vec<&str> = vars.iter().map(|s| s.name()).collect();
    json!({"vars": names, "terms": terms})
}

pub fn poly_from_json(v: &Value) -> Result<Poly> {
    let vars: Vec<Symbol> = array(field(v, "vars")?, "vars array")?
        .iter()
        .map(|s| s.as_str().ok_or_else(|| bad("symbol name", s))?.parse())
        .collect::<Result<_>>()?;
    let mut out = Poly::zero();
    for t in array(field(v, "terms")?, "terms array")? {
        let c = rational_from_json(field(t, "coeff")?)?;
        let exps = array(field(t, "exps")?, "exps array")?;
        if exps.len() != vars.len() {
            return Err(bad("one exponent per var", t));
        }
        let mut e = [0u16; NSYM];
        for (s, x) in vars.iter().zip(exps) {
            e[s.index()] = u16::try_from(uint(x)?).map_err(|_| bad("small exponent", x))?;
        }
        out.add_term(Monomial(e), c);
    }
    Ok(out)
}

/// Univariate polynomials reuse the polynomial schema with their variable.
pub fn qpoly_to_json(p: &QPoly) -> Value {
    poly_to_json(&p.to_symbolic().to_mpoly())
}

pub fn qpoly_from_json(v: &Value, var: Symbol) -> Result<QPoly> {
    let p = poly_from_json(v)?;
    UniPoly::from_mpoly(&p, var)
        .to_numeric()
        .ok_or_else(|| bad(&format!("polynomial in {var} alone"), v))
}

pub fn sympoly_to_json(p: &SymPoly) -> Value {
    poly_to_json(&p.to_mpoly())
}

pub fn sympoly_from_json(v: &Value, var: Symbol) -> Result<SymPoly> {
    Ok(UniPoly::from_mpoly(&poly_from_json(v)?, var))
}

/// Row-major array of rows.
pub fn matrix_to_json(m: &PolyMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(poly_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<PolyMatrix> {
    let rows = array(v, "matrix rows")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(poly_from_json).collect())
        .collect::<Result<Vec<Vec<Poly>>>>()?;
    PolyMatrix::from_rows(rows)
}

fn module_to_json(m: &JordanVermaModule) -> Value {
    json!({"c": m.c().to_string(), "h": m.h().to_string(), "jordan": m.jordan()})
}

fn module_from_json(v: &Value) -> Result<JordanVermaModule> {
    let text = |k: &str| -> Result<Poly> {
        let s = field(v, k)?;
        s.as_str().ok_or_else(|| bad("polynomial string", s))?.parse()
    };
    JordanVermaModule::new(text("c")?, text("h")?, uint(field(v, "jordan")?)?)
}

/// Coefficients are polynomial strings; "word" lists the parts largest first.
pub fn module_vector_to_json(m: &JordanVermaModule, v: &ModuleVector) -> Value {
    let terms: Vec<Value> = v
        .terms()
        .map(|(l, c)| {
            let word: Vec<u32> = l.parts.iter().rev().copied().collect();
            json!({"word": word, "top": l.top, "coeff": c.to_string()})
        })
        .collect();
    json!({"module": module_to_json(m), "level": v.level(), "terms": terms})
}

pub fn module_vector_from_json(v: &Value) -> Result<(JordanVermaModule, ModuleVector)> {
    let module = module_from_json(field(v, "module")?)?;
    let level = uint(field(v, "level")?)?;
    let mut out = ModuleVector::zero(level);
    for t in array(field(v, "terms")?, "terms array")? {
        let parts = array(field(t, "word")?, "word")?
            .iter()
            .map(|p| Ok(uint(p)? as u32))
            .collect::<Result<Vec<u32>>>()?;
        let label = BasisLabel::new(parts, uint(field(t, "top")?)?);
        if label.level() != level || label.top == 0 || label.top > module.jordan() {
            return Err(Error::LabelOutOfRange(label.to_string()));
        }
        let c = field(t, "coeff")?;
        out.add_term(label, c.as_str().ok_or_else(|| bad("coefficient", c))?.parse()?);
    }
    Ok((module, out))
}

fn roots_to_json(roots: &[(Rational, usize)]) -> Value {
    Value::Array(
        roots
            .iter()
            .map(|(r, m)| json!([rational_to_json(r), m]))
            .collect(),
    )
}

fn roots_from_json(v: &Value) -> Result<Vec<(Rational, usize)>> {
    array(v, "roots")?
        .iter()
        .map(|pair| match array(pair, "[root, multiplicity]")?.as_slice() {
            [r, m] => Ok((rational_from_json(r)?, uint(m)?)),
            _ => Err(bad("[root, multiplicity]", pair)),
        })
        .collect()
}

pub fn indicial_to_json(d: &IndicialData) -> Value {
    json!({
        "level": d.level,
        "indicial": sympoly_to_json(&d.indicial),
        "fusion_h3": sympoly_to_json(&d.fusion_h3),
        "roots": roots_to_json(&d.roots),
        "residual": qpoly_to_json(&d.residual),
        "logarithmic": d.logarithmic,
    })
}

pub fn indicial_from_json(v: &Value) -> Result<IndicialData> {
    let logarithmic = field(v, "logarithmic")?;
    Ok(IndicialData {
        level: uint(field(v, "level")?)?,
        indicial: sympoly_from_json(field(v, "indicial")?, Symbol::S)?,
        fusion_h3: sympoly_from_json(field(v, "fusion_h3")?, Symbol::H3)?,
        roots: roots_from_json(field(v, "roots")?)?,
        residual: qpoly_from_json(field(v, "residual")?, Symbol::H3)?,
        logarithmic: logarithmic.as_bool().ok_or_else(|| bad("bool", logarithmic))?,
    })
}

fn gen_to_json(g: Gen) -> Value {
    json!([g.log, g.mode])
}

fn gen_from_json(v: &Value) -> Result<Gen> {
    match array(v, "[i, m]")?.as_slice() {
        [i, m] => Ok(Gen::new(int(i)?, int(m)?)),
        _ => Err(bad("[i, m]", v)),
    }
}

pub fn deviations_to_json(d: &[Deviation]) -> Value {
    Value::Array(
        d.iter()
            .map(|x| {
                json!({
                    "pair": [gen_to_json(x.a), gen_to_json(x.b)],
                    "closed": rational_to_json(&x.closed),
                    "residue": rational_to_json(&x.residue),
                })
            })
            .collect(),
    )
}

pub fn deviations_from_json(v: &Value) -> Result<Vec<Deviation>> {
    array(v, "deviations")?
        .iter()
        .map(|x| {
            let pair = field(x, "pair")?;
            let [a, b] = array(pair, "pair")?.as_slice() else {
                return Err(bad("pair of generators", pair));
            };
            Ok(Deviation {
                a: gen_from_json(a)?,
                b: gen_from_json(b)?,
                closed: rational_from_json(field(x, "closed")?)?,
                residue: rational_from_json(field(x, "residue")?)?,
            })
        })
        .collect()
}

pub fn wlog_element_to_json(e: &WLogElement) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(g, c)| json!({"gen": gen_to_json(*g), "coeff": poly_to_json(c)}))
        .collect();
    json!({"terms": terms, "central": poly_to_json(e.central_coeff())})
}

pub fn wlog_element_from_json(v: &Value) -> Result<WLogElement> {
    let mut out = WLogElement::central(poly_from_json(field(v, "central")?)?);
    for t in array(field(v, "terms")?, "terms array")? {
        out.add_term(gen_from_json(field(t, "gen")?)?, poly_from_json(field(t, "coeff")?)?);
    }
    Ok(out)
}

/// List of terms {"modes":[n...],"central":k,"coeff":{poly}}.
pub fn uea_to_json(e: &UEAElement) -> Value {
    Value::Array(
        e.terms()
            .map(|(w, c)| {
                json!({"modes": w.modes(), "central": w.central(), "coeff": poly_to_json(c)})
            })
            .collect(),
    )
}

pub fn uea_from_json(v: &Value) -> Result<UEAElement> {
    let mut out = UEAElement::zero();
    for t in array(v, "terms array")? {
        let modes = array(field(t, "modes")?, "modes")?
            .iter()
            .map(int)
            .collect::<Result<Vec<i64>>>()?;
        if !crate::virasoro::is_canonical(&modes) {
            return Err(bad("canonical word", t));
        }
        let central = uint(field(t, "central")?)? as u32;
        out.add_term(PBWWord::new(modes, central), poly_from_json(field(t, "coeff")?)?);
    }
    Ok(out)
}

/// List of terms {"k":k,"j":j,"coeff":{poly}} for a x^{-k} D^j.
pub fn euler_to_json(op: &EulerOperator) -> Value {
    Value::Array(
        op.terms()
            .map(|(k, j, a)| json!({"k": k, "j": j, "coeff": poly_to_json(a)}))
            .collect(),
    )
}

pub fn euler_from_json(v: &Value) -> Result<EulerOperator> {
    let mut op = EulerOperator::zero();
    for t in array(v, "terms array")? {
        let j = uint(field(t, "j")?)? as u32;
        op.add_term(int(field(t, "k")?)?, j, poly_from_json(field(t, "coeff")?)?);
    }
    Ok(op)
}

/// List of terms {"exp":"p/q","log":k,"coeff":{poly}} for a x^s log^k(x).
pub fn log_series_to_json(f: &LogSeries) -> Value {
    Value::Array(
        f.terms()
            .map(|(s, k, a)| json!({"exp": rational_to_json(s), "log": k, "coeff": poly_to_json(a)}))
            .collect(),
    )
}

pub fn log_series_from_json(v: &Value) -> Result<LogSeries> {
    let mut f = LogSeries::zero();
    for t in array(v, "terms array")? {
        let k = uint(field(t, "log")?)? as u32;
        f.add_term(
            rational_from_json(field(t, "exp")?)?,
            k,
            poly_from_json(field(t, "coeff")?)?,
        );
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| q(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((arb_rational(), proptest::array::uniform4(0u16..=3)), 0..6)
            .prop_map(|terms| {
                let syms = [Symbol::C, Symbol::H, Symbol::B, Symbol::Lambda];
                let mut p = Poly::zero();
                for (c, e) in terms {
                    let mut m = [0u16; NSYM];
                    for (s, x) in syms.iter().zip(e) {
                        m[s.index()] = x;
                    }
                    p.add_term(Monomial(m), c);
                }
                p
            })
    }

    #[test]
    fn rational_and_poly_shapes() {
        assert_eq!(rational_to_json(&q(5, 2)).to_string(), "\"5/2\"");
        let p: Poly = "16h^2 + 2ch - 10h + c".parse().unwrap();
        assert_eq!(
            poly_to_json(&p).to_string(),
            r#"{"terms":[{"coeff":"2","exps":[1,1]},{"coeff":"16","exps":[0,2]},{"coeff":"1","exps":[1,0]},{"coeff":"-10","exps":[0,1]}],"vars":["c","h"]}"#
        );
        assert_eq!(poly_to_json(&Poly::zero()).to_string(), r#"{"terms":[],"vars":[]}"#);
    }

    #[test]
    fn module_vector_schema() {
        let m = JordanVermaModule::numeric(q(1, 1), q(1, 1), 2).unwrap();
        let v = ModuleVector::from_terms(
            3,
            [
                (BasisLabel::new(vec![1, 2], 1), Poly::from_i64(-2)),
                (BasisLabel::new(vec![1, 1, 1], 2), Poly::one()),
            ],
        );
        let j = module_vector_to_json(&m, &v);
        assert_eq!(j["module"]["jordan"], 2);
        assert_eq!(j["terms"][0]["word"], json!([2, 1]));
        let (m2, v2) = module_vector_from_json(&j).unwrap();
        assert_eq!((m2, v2), (m, v));
        let mut broken = j.clone();
        broken["terms"][0]["top"] = json!(3);
        assert!(module_vector_from_json(&broken).is_err());
    }

    #[test]
    fn indicial_roundtrip() {
        let mut op = EulerOperator::term(0, 2, Poly::one());
        op.add_term(1, 1, Poly::constant(q(1, 2)));
        op.add_term(2, 0, Poly::constant(q(1, 16)));
        let h = Poly::constant(q(-1, 8));
        let d = crate::fusion::indicial_polynomial(&op, &h, &h).unwrap();
        let j = indicial_to_json(&d);
        assert_eq!(j["roots"], json!([["0", 2]]));
        assert_eq!(j["logarithmic"], json!(true));
        assert_eq!(indicial_from_json(&j).unwrap(), d);
    }

    #[test]
    fn deviations_roundtrip() {
        let d = vec![Deviation {
            a: Gen::new(-1, 2),
            b: Gen::new(0, -2),
            closed: q(2, 3),
            residue: q(-2, 3),
        }];
        let j = deviations_to_json(&d);
        assert_eq!(
            j.to_string(),
            r#"[{"closed":"2/3","pair":[[-1,2],[0,-2]],"residue":"-2/3"}]"#
        );
        assert_eq!(deviations_from_json(&j).unwrap(), d);
    }

    #[test]
    fn rejects_malformed() {
        assert!(poly_from_json(&json!({"vars":["c"],"terms":[{"coeff":"1.5","exps":[1]}]})).is_err());
        assert!(poly_from_json(&json!({"vars":["q"],"terms":[]})).is_err());
        assert!(poly_from_json(&json!({"vars":["c"],"terms":[{"coeff":"1","exps":[]}]})).is_err());
        assert!(uea_from_json(&json!([{"modes":[0,-1],"central":0,"coeff":{"vars":[],"terms":[]}}])).is_err());
    }

    proptest! {
        #[test]
        fn poly_roundtrip(p in arb_poly()) {
            let j = poly_to_json(&p);
            prop_assert_eq!(poly_from_json(&j).unwrap(), p.clone());
            // text rendering also round-trips
            prop_assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        }

        #[test]
        fn matrix_roundtrip(entries in proptest::collection::vec(arb_poly(), 4)) {
            let m = PolyMatrix::from_rows(vec![entries[..2].to_vec(), entries[2..].to_vec()]).unwrap();
            prop_assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
        }

        #[test]
        fn wlog_element_roundtrip(
            terms in proptest::collection::vec((-3i64..=3, -3i64..=3, arb_poly()), 0..4),
            central in arb_poly(),
        ) {
            let mut e = WLogElement::central(central);
            for (i, m, c) in terms {
                e.add_term(Gen::new(i, m), c);
            }
            prop_assert_eq!(wlog_element_from_json(&wlog_element_to_json(&e)).unwrap(), e);
        }

        #[test]
        fn uea_roundtrip(words in proptest::collection::vec((proptest::collection::vec(-3i64..=3, 0..4), 0u32..2, arb_poly()), 0..4)) {
            let mut e = UEAElement::zero();
            for (modes, central, c) in words {
                let mut w: Vec<crate::virasoro::VirMode> = modes.into_iter().map(crate::virasoro::VirMode::L).collect();
                w.extend(std::iter::repeat_n(crate::virasoro::VirMode::Central, central as usize));
                e = e.add(&UEAElement::from_word(&w).scale(&c));
            }
            prop_assert_eq!(uea_from_json(&uea_to_json(&e)).unwrap(), e);
        }

        #[test]
        fn euler_and_series_roundtrip(
            ops in proptest::collection::vec((-3i64..=3, 0u32..=3, arb_poly()), 0..5),
            series in proptest::collection::vec((arb_rational(), 0u32..=2, arb_poly()), 0..5),
        ) {
            let mut op = EulerOperator::zero();
            for (k, j, a) in ops {
                op.add_term(k, j, a);
            }
            prop_assert_eq!(euler_from_json(&euler_to_json(&op)).unwrap(), op);
            let mut f = LogSeries::zero();
            for (s, k, a) in series {
                f.add_term(s, k, a);
            }
            prop_assert_eq!(log_series_from_json(&log_series_to_json(&f)).unwrap(), f);
        }

        #[test]
        fn module_vector_roundtrip(
            coeffs in proptest::collection::vec(arb_rational(), 10),
            level in 0usize..=3,
        ) {
            let m = JordanVermaModule::symbolic(2).unwrap();
            let basis = m.level_basis(level);
            let v = ModuleVector::from_coords(level, &basis, &coeffs[..basis.len()]);
            let (m2, v2) = module_vector_from_json(&module_vector_to_json(&m, &v)).unwrap();
            prop_assert_eq!(m2, m);
            prop_assert_eq!(v2, v);
        }
    }
}
