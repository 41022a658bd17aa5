//! Verification suites over the potential and the localization assembly.
//! The change-of-variable suites live in [`crate::pcrc`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::localization::{
    assemble_even, assembly_odd, closed_form, literal_odd, odd_formula_without_automorphism,
    resummed_even, resummed_odd, WeightTable,
};
use crate::potentials::{
    classical_part, degree0_triple, g_series, quantum_part, q_slice, standard_varset, symmetry_factor, t_sum,
    CohClass,
};
use crate::rational;
use crate::report::{Case, Report};
use crate::series::{Series, Var, VarSet};
use crate::Result;

const CLASSES: [CohClass; 3] = [CohClass::One, CohClass::H, CohClass::S];

/// Every cubic monomial `z0^a z1^b z2^c` as exponents and classes.
pub fn cubic_monomials() -> Vec<([u32; 3], [CohClass; 3])> {
    let mut out = Vec::new();
    for a in (0..=3u32).rev() {
        for b in (0..=3 - a).rev() {
            let c = 3 - a - b;
            let mut classes = Vec::new();
            for (k, n) in [a, b, c].into_iter().enumerate() {
                classes.extend(core::iter::repeat_n(CLASSES[k], n as usize));
            }
            out.push(([a, b, c], [classes[0], classes[1], classes[2]]));
        }
    }
    out
}

/// Classical coefficients against triple intersections, and the leading
/// coefficients of `G`.
pub fn verify_degree0() -> Result<Report> {
    let vs = standard_varset(0, 3);
    let f = classical_part(&vs)?;
    let mut report = Report::new("degree0");
    for (e, classes) in cubic_monomials() {
        let coeff = f.coeff(&[(Var::Z0, e[0]), (Var::Z1, e[1]), (Var::Z2, e[2])])?;
        let scaled = coeff.scale(&symmetry_factor(&e).into());
        let triple = degree0_triple(classes[0], classes[1], classes[2]);
        let pass = scaled == triple;
        report.push(Case::new(
            format!("z0^{} z1^{} z2^{}", e[0], e[1], e[2]),
            pass,
            format!("potential {} vs localization {}", scaled, triple),
        ));
    }
    let g = g_series(6);
    for (k, want) in [(0, (0, 1)), (1, (0, 1)), (2, (0, 1)), (3, (0, 1)), (4, (1, 96)), (6, (1, 5760))] {
        let got = g.coeff(&[(Var::Z2, k)])?;
        let want = crate::RatFun::frac(want.0, want.1);
        report.push(Case::new(format!("G z2^{}", k), got == want, format!("{}", got)));
    }
    Ok(report)
}

/// For each degree, the `q^d z1^0` slice of the quantum part equals
/// `(t1+t2)` times the resummed sine or cosine series.
pub fn verify_resummation(qmax: u32, order: u32) -> Result<Report> {
    let vs = VarSet::new(&[(Var::Z1, 0), (Var::Z2, order), (Var::Q, qmax)]);
    let zs = VarSet::new(&[(Var::Z2, order)]);
    let quantum = quantum_part(&vs)?;
    let mut report = Report::new("resummation");
    for d in 1..=qmax {
        let slice = q_slice(&quantum, d)?;
        let stripped = Series::from_terms(&zs, slice.terms().map(|(e, c)| (alloc::vec![e[1]], c.clone())))?;
        let closed = if d % 2 == 1 { resummed_odd(d, order)? } else { resummed_even(d, order)? };
        let expected = closed.scale(&t_sum());
        report.push(Case::series(format!("d={}", d), stripped.first_difference(&expected)?));
    }
    Ok(report)
}

/// Assembled fixed-locus contributions against the closed forms: odd
/// `d ≤ dmax` with `0 ≤ g ≤ gmax`, even `d ≤ dmax` with `-1 ≤ g ≤ gmax`.
pub fn verify_assembly(dmax: u32, gmax: u32) -> Result<Report> {
    let mut report = Report::new("assembly");
    let table = WeightTable::standard();
    for d in 1..=dmax {
        if d % 2 == 1 {
            for g in 0..=gmax {
                let a = assembly_odd(d, g, &table)?;
                let total = a.total();
                let want = closed_form(d, 2 * g + 1)?;
                let pass = total.half_power == 0 && total.coeff == want;
                let literal = literal_odd(d, g)?
                    .value
                    .map(|v| rational::to_string(&v))
                    .unwrap_or_else(|| String::from("undefined"));
                report.push(Case::new(
                    format!("d={},g={}", d, g),
                    pass,
                    format!(
                        "assembled {} s^({}/2), closed form {}, without 1/d {}, literal {}",
                        rational::to_string(&total.coeff),
                        total.half_power,
                        rational::to_string(&want),
                        rational::to_string(&odd_formula_without_automorphism(d, g)),
                        literal
                    ),
                ));
            }
        } else {
            for g in -1..=gmax as i64 {
                let want = closed_form(d, (2 * g + 2) as u32)?;
                let got = assemble_even(d, g);
                let pass = got.as_ref() == Ok(&want);
                report.push(Case::new(
                    format!("d={},g={}", d, g),
                    pass,
                    format!("assembled {:?}, closed form {}", got.map(|v| rational::to_string(&v)), rational::to_string(&want)),
                ));
            }
        }
    }
    Ok(report)
}
