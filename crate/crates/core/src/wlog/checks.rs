use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use super::{cocycle, cocycle_closed_form, cocycle_residue, Cocycle, Gen};
use crate::Rational;

fn gens(r: i64) -> Vec<Gen> {
    (-r..=r)
        .flat_map(|i| (-r..=r).map(move |m| Gen::new(i, m)))
        .collect()
}

type IntComb = BTreeMap<Gen, i64>;

fn add_int(v: &mut IntComb, g: Gen, c: i64) {
    if c == 0 {
        return;
    }
    let e = v.entry(g).or_insert(0);
    *e += c;
    if *e == 0 {
        v.remove(&g);
    }
}

fn witt_int(a: Gen, b: Gen) -> IntComb {
    let mut out = IntComb::new();
    add_int(&mut out, Gen::new(a.log + b.log, a.mode + b.mode), a.mode - b.mode);
    add_int(&mut out, Gen::new(a.log + b.log - 1, a.mode + b.mode), b.log - a.log);
    out
}

/// Outcome of an exhaustive Jacobi check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JacobiReport {
    pub cocycle: Cocycle,
    pub range: i64,
    pub checked: usize,
    /// Triples where the closed form is undefined for some pair.
    pub skipped: usize,
    pub violations: Vec<[Gen; 3]>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// [[a,b],c] + [[b,c],a] + [[c,a],b] = 0 for every triple of generators with
/// |i|, |m| <= range. The central part is the cocycle identity
/// c([a,b],c) + c([b,c],a) + c([c,a],b) = 0.
pub fn check_jacobi(range: i64, mode: Cocycle) -> JacobiReport {
    let g = gens(range);
    // cocycle values c(x, y) for x in any bracket output, y in the range
    let table: HashMap<(Gen, Gen), Option<Rational>> = if mode == Cocycle::None {
        HashMap::new()
    } else {
        let mut outs: Vec<Gen> = g
            .iter()
            .flat_map(|&a| g.iter().flat_map(move |&b| witt_int(a, b).into_keys()))
            .collect();
        outs.sort();
        outs.dedup();
        outs.par_iter()
            .flat_map_iter(|&x| {
                g.iter()
                    .map(move |&y| ((x, y), cocycle(x, y, mode).ok()))
            })
            .collect()
    };

    let per_a: Vec<(usize, usize, Vec<[Gen; 3]>)> = g
        .par_iter()
        .map(|&a| {
            let (mut checked, mut skipped, mut bad) = (0, 0, vec![]);
            for &b in &g {
                for &c in &g {
                    let mut total = IntComb::new();
                    let mut central = Some(Rational::zero());
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (w, k) in witt_int(x, y) {
                            for (u, l) in witt_int(w, z) {
                                add_int(&mut total, u, k * l);
                            }
                            if mode != Cocycle::None {
                                central = match (central, &table[&(w, z)]) {
                                    (Some(s), Some(v)) => Some(s + v * Rational::from_integer(k.into())),
                                    _ => None,
                                };
                            }
                        }
                    }
                    match central {
                        None => skipped += 1,
                        Some(s) => {
                            checked += 1;
                            if !total.is_empty() || !s.is_zero() {
                                bad.push([a, b, c]);
                            }
                        }
                    }
                }
            }
            (checked, skipped, bad)
        })
        .collect();

    let mut report = JacobiReport {
        cocycle: mode,
        range,
        checked: 0,
        skipped: 0,
        violations: vec![],
    };
    for (c, s, v) in per_a {
        report.checked += c;
        report.skipped += s;
        report.violations.extend(v);
    }
    report
}

/// A pair on which the printed closed form and the residue disagree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Deviation {
    pub a: Gen,
    pub b: Gen,
    pub closed: Rational,
    pub residue: Rational,
}

/// All pairs with |i|, |m| <= range inside the closed form's domain where it
/// differs from the residue cocycle, in (a, b) order.
pub fn deviations_report(range: i64) -> Vec<Deviation> {
    let g = gens(range);
    g.par_iter()
        .flat_map_iter(|&a| {
            g.iter().filter_map(move |&b| {
                let closed = cocycle_closed_form(a, b).ok()?;
                let residue = cocycle_residue(a, b);
                (closed != residue).then_some(Deviation {
                    a,
                    b,
                    closed,
                    residue,
                })
            })
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenerationReport {
    pub seeds: Vec<i64>,
    pub range: i64,
    pub span_dim: usize,
    /// Targets |i|, |m| <= range not reached.
    pub missing: Vec<Gen>,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
    }
}

type Vector = BTreeMap<Gen, Rational>;

/// Fully reduced echelon basis keyed by pivot.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<Gen, Vector>,
}

impl Echelon {
    fn reduce(&self, mut v: Vector) -> Vector {
        for (p, row) in &self.rows {
            if let Some(k) = v.get(p).cloned() {
                for (g, c) in row {
                    let e = v.entry(*g).or_insert_with(Rational::zero);
                    *e -= &k * c;
                    if e.is_zero() {
                        v.remove(g);
                    }
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vector) -> bool {
        let v = self.reduce(v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let lead = lead.clone();
        let v: Vector = v.into_iter().map(|(g, c)| (g, c / &lead)).collect();
        for row in self.rows.values_mut() {
            if let Some(k) = row.get(&p).cloned() {
                for (g, c) in &v {
                    let e = row.entry(*g).or_insert_with(Rational::zero);
                    *e -= &k * c;
                    if e.is_zero() {
                        row.remove(g);
                    }
                }
            }
        }
        self.rows.insert(p, v);
        true
    }

    fn contains(&self, g: Gen) -> bool {
        self.reduce(Vector::from([(g, Rational::from_integer(1.into()))]))
            .is_empty()
    }
}

/// Span of iterated brackets of the generators t^{(s)}(m), s in `seeds`,
/// inside the window |i|, |m| <= range + 1. Elements leaving the window are
/// discarded, so a reported miss means "not reached within the window".
pub fn generation_check(seeds: &[i64], range: i64) -> GenerationReport {
    let w = range + 1;
    let inside = |g: &Gen| g.log.abs() <= w && g.mode.abs() <= w;
    let seed_gens: Vec<Gen> = seeds
        .iter()
        .flat_map(|&s| (-w..=w).map(move |m| Gen::new(s, m)))
        .collect();
    let mut span = Echelon::default();
    for &s in &seed_gens {
        span.insert(Vector::from([(s, Rational::from_integer(1.into()))]));
    }
    loop {
        let basis: Vec<Vector> = span.rows.values().cloned().collect();
        let mut grew = false;
        for s in &seed_gens {
            for v in &basis {
                let mut out = Vector::new();
                for (g, c) in v {
                    for (u, k) in witt_int(*s, *g) {
                        let e = out.entry(u).or_insert_with(Rational::zero);
                        *e += c * Rational::from_integer(k.into());
                        if e.is_zero() {
                            out.remove(&u);
                        }
                    }
                }
                if !out.is_empty() && out.keys().all(inside) && span.insert(out) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let missing = gens(range)
        .into_iter()
        .filter(|&g| !span.contains(g))
        .collect();
    GenerationReport {
        seeds: seeds.to_vec(),
        range,
        span_dim: span.rows.len(),
        missing,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_uncentered_and_residue() {
        let r = check_jacobi(2, Cocycle::None);
        assert!(r.passed());
        assert_eq!(r.checked, 25 * 25 * 25);
        let r = check_jacobi(2, Cocycle::Residue);
        assert!(r.passed(), "{:?}", &r.violations[..r.violations.len().min(5)]);
        assert_eq!(r.skipped, 0);
    }

    #[test]
    fn jacobi_closed_form_skips_outside_domain() {
        let r = check_jacobi(2, Cocycle::Closed);
        assert!(r.skipped > 0);
        assert_eq!(r.checked + r.skipped, 25 * 25 * 25);
    }

    #[test]
    fn deviations_are_deterministic_and_in_domain() {
        let d = deviations_report(2);
        assert_eq!(d, deviations_report(2));
        for x in &d {
            assert!(x.a.log <= 1 && x.b.log <= 1);
            assert_ne!(x.closed, x.residue);
        }
    }

    #[test]
    fn closed_form_antisymmetric_in_domain() {
        for a in gens(4) {
            for b in gens(4) {
                if let (Ok(x), Ok(y)) = (cocycle_closed_form(a, b), cocycle_closed_form(b, a)) {
                    assert_eq!(x, -y, "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn generation_from_three_log_levels() {
        let r = generation_check(&[-1, 0, 1], 3);
        assert!(r.passed(), "missing {:?}", r.missing);
    }

    #[test]
    fn nonpositive_seeds_stay_nonpositive() {
        // brackets of t^{(i)}, t^{(j)} with i, j <= 0 only reach logs <= 0
        let r = generation_check(&[-1, 0], 2);
        assert!(r.missing.iter().all(|g| g.log > 0));
        assert!(r.missing.contains(&Gen::new(1, 0)));
    }
}
