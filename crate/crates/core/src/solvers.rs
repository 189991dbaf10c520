//! Decision procedures for the three standard forms, dispatch, solution
//! construction and verification.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::eqnorm::{
    self, pull_back, to_standard_form, Assignment, EquationAst, Kind, SfSolution, StandardForm,
    Substitution,
};
use crate::error::{Error, Result};
use crate::expsolve::{bezout_bounded, find_exact, multiplicative_order, solve_congruence, Limits};
use crate::group::{exp_sums, Element, Group, Word};
use crate::nadic::NAdic;

/// `solution_size ≤ SIZE_C · |W|^3` for every emitted solution.
pub const SIZE_C: u64 = 1;
/// `solution_size ≤ SIZE_C_LINEAR · |W|` for orientable and genus ≥ 2 solutions.
pub const SIZE_C_LINEAR: u64 = 5;

/// Outcome of a standard-form solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfVerdict {
    pub solvable: bool,
    pub case: &'static str,
    pub certificate: Vec<(String, String)>,
    pub solution: Option<SfSolution>,
}

impl SfVerdict {
    fn no(case: &'static str, certificate: Vec<(String, String)>) -> Self {
        SfVerdict {
            solvable: false,
            case,
            certificate,
            solution: None,
        }
    }
}

fn wrong_kind(expected: &'static str, sf: &StandardForm) -> Error {
    Error::WrongKind {
        expected,
        found: format!("{} genus {}", sf.kind, sf.genus),
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `n^{|b|} - 1` and `n^{|b|} + 1` with the sign of `n` kept.
fn pow_minus_one(grp: &Group, b: i64) -> BigInt {
    grp.base().pow(b.unsigned_abs()) - 1
}

/// Exponents making `Σ α_i n^{x_i} ≡ 0 (mod K)` in Z[1/n]; exact when `K = 0`.
fn find_exponents(
    grp: &Group,
    alphas: &[NAdic],
    modulus: &BigInt,
    limits: &Limits,
    cert: &mut Vec<(String, String)>,
) -> Result<Option<Vec<u64>>> {
    let k = alphas.len();
    let e = alphas.iter().map(|a| a.exp()).max().unwrap_or(0);
    let q: Vec<BigInt> = alphas
        .iter()
        .map(|a| grp.base().to_integer(a, e))
        .collect::<Result<_>>()?;
    if modulus.is_zero() {
        cert.push(("search".into(), "exact".into()));
        return find_exact(&q, grp.n(), limits);
    }
    let m = grp.base().coprime_part(modulus);
    cert.push(("modulus".into(), m.to_string()));
    if m.is_one() {
        return Ok(Some(vec![0; k]));
    }
    let limit = limits.max_states.max(limits.max_exponent);
    let p = multiplicative_order(grp.n(), &m, limit).ok_or(Error::CapExceeded {
        what: "multiplicative order",
        cap: limit,
    })?;
    cert.push(("period".into(), p.to_string()));
    match solve_congruence(&q, grp.n(), &m, p, limits.max_states) {
        Err(Error::CapExceeded { .. }) => {
            // residues out of reach: an exact solution still decides YES
            cert.push(("search".into(), "exact lift".into()));
            match find_exact(&q, grp.n(), limits)? {
                Some(x) => Ok(Some(x)),
                None => Err(Error::CapExceeded {
                    what: "congruence search",
                    cap: limits.max_states,
                }),
            }
        }
        other => {
            cert.push(("search".into(), "residues".into()));
            other
        }
    }
}

/// Constants `(α_i, β_i)` split out of the form.
fn parts(sf: &StandardForm) -> (Vec<NAdic>, Vec<i64>) {
    (
        sf.constants.iter().map(|c| c.alpha.clone()).collect(),
        sf.constants.iter().map(|c| c.beta).collect(),
    )
}

/// Conjugators `z_i = (v_i, y_i)` realising `Σ n^{x_i} v_i (n^{-β_i} - 1) = -h Σ s_i m_i`.
fn conjugators(
    grp: &Group,
    betas: &[i64],
    x: &[u64],
    s: &[BigInt],
    h: &NAdic,
    shift: i64,
) -> Vec<Element> {
    let b = grp.base();
    let mut before = 0i64;
    let mut out = Vec::with_capacity(betas.len());
    for i in 0..betas.len() {
        let hs = b.mul_int(h, &s[i]);
        let xi = x[i] as i64;
        let v = if betas[i] > 0 {
            b.scale_pow(&hs, betas[i] - xi)
        } else {
            b.scale_pow(&hs, -xi).neg()
        };
        out.push(Element::new(v, xi + before + shift));
        before += betas[i];
    }
    out
}

pub fn solve_spherical(grp: &Group, sf: &StandardForm, limits: &Limits) -> Result<SfVerdict> {
    if sf.kind != Kind::Spherical {
        return Err(wrong_kind("spherical", sf));
    }
    let (alphas, betas) = parts(sf);
    let mut cert = Vec::new();
    let sigma: i64 = betas.iter().sum();
    if sigma != 0 {
        cert.push(("sigma_t".into(), sigma.to_string()));
        return Ok(SfVerdict::no("spherical", cert));
    }
    let m: Vec<BigInt> = betas.iter().map(|&b| pow_minus_one(grp, b)).collect();
    let big_k = m.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let case = if big_k.is_zero() {
        "spherical-exact"
    } else {
        "spherical-bezout"
    };
    let Some(x) = find_exponents(grp, &alphas, &big_k, limits, &mut cert)? else {
        return Ok(SfVerdict::no(case, cert));
    };
    cert.push(("exponents".into(), join(&x)));
    let b = grp.base();
    let z = if big_k.is_zero() {
        let mut before = 0i64;
        x.iter()
            .zip(&betas)
            .map(|(&xi, &bi)| {
                let z = Element::t_pow(xi as i64 + before);
                before += bi;
                z
            })
            .collect()
    } else {
        let t = alphas
            .iter()
            .zip(&x)
            .fold(NAdic::zero(), |acc, (a, &xi)| {
                b.add(&acc, &b.scale_pow(a, xi as i64))
            });
        let h = b
            .div_int(&t, &big_k)
            .ok_or_else(|| Error::Internal("congruence solution not divisible".into()))?;
        let (s, _) = bezout_bounded(&m)?;
        cert.push(("bezout".into(), join(&s)));
        cert.push(("h".into(), b.render(&h)));
        conjugators(grp, &betas, &x, &s, &h, 0)
    };
    let sol = SfSolution {
        x: vec![],
        y: vec![],
        z,
    };
    check_sf(grp, sf, &sol)?;
    Ok(SfVerdict {
        solvable: true,
        case,
        certificate: cert,
        solution: Some(sol),
    })
}

pub fn solve_orientable(grp: &Group, sf: &StandardForm) -> Result<SfVerdict> {
    if sf.kind != Kind::Orientable || sf.genus == 0 {
        return Err(wrong_kind("orientable of positive genus", sf));
    }
    let prod = sf.constant_product(grp);
    let mut cert = vec![("product".into(), grp.render_element(&prod))];
    if !grp.in_derived_subgroup(&prod) {
        return Ok(SfVerdict::no("orientable", cert));
    }
    let (x1, y1) = grp.commutator_express(&grp.inv(&prod))?;
    cert.push((
        "commutator".into(),
        format!("{} {}", grp.render_element(&x1), grp.render_element(&y1)),
    ));
    let mut sol = SfSolution::identity(sf);
    sol.x[0] = x1;
    sol.y[0] = y1;
    check_sf(grp, sf, &sol)?;
    Ok(SfVerdict {
        solvable: true,
        case: "orientable",
        certificate: cert,
        solution: Some(sol),
    })
}

pub fn solve_nonorientable_genus1(
    grp: &Group,
    sf: &StandardForm,
    limits: &Limits,
) -> Result<SfVerdict> {
    if sf.kind != Kind::Nonorientable || sf.genus != 1 {
        return Err(wrong_kind("nonorientable genus 1", sf));
    }
    let (alphas, betas) = parts(sf);
    let mut cert = Vec::new();
    let sigma: i64 = betas.iter().sum();
    if sigma % 2 != 0 {
        cert.push(("sigma_t".into(), sigma.to_string()));
        return Ok(SfVerdict::no("genus1", cert));
    }
    let beta_x = -sigma / 2;
    // m_x = n^{|β_x|} + 1 first, then n^{|β_i|} - 1
    let mut m = vec![grp.base().pow(beta_x.unsigned_abs()) + 1];
    m.extend(betas.iter().map(|&b| pow_minus_one(grp, b)));
    let big_k = m.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let case = if big_k.is_zero() {
        "genus1-exact"
    } else {
        "genus1-bezout"
    };
    let Some(x) = find_exponents(grp, &alphas, &big_k, limits, &mut cert)? else {
        return Ok(SfVerdict::no(case, cert));
    };
    cert.push(("exponents".into(), join(&x)));
    cert.push(("beta_x".into(), beta_x.to_string()));
    let b = grp.base();
    let (xe, z) = if big_k.is_zero() {
        let mut before = 2 * beta_x;
        let z = x
            .iter()
            .zip(&betas)
            .map(|(&xi, &bi)| {
                let z = Element::t_pow(xi as i64 + before);
                before += bi;
                z
            })
            .collect();
        (Element::t_pow(beta_x), z)
    } else {
        let t = alphas
            .iter()
            .zip(&x)
            .fold(NAdic::zero(), |acc, (a, &xi)| {
                b.add(&acc, &b.scale_pow(a, xi as i64))
            });
        let h = b
            .div_int(&t, &big_k)
            .ok_or_else(|| Error::Internal("congruence solution not divisible".into()))?;
        let (s, _) = bezout_bounded(&m)?;
        cert.push(("bezout".into(), join(&s)));
        cert.push(("h".into(), b.render(&h)));
        let hs = b.mul_int(&h, &s[0]).neg();
        let ax = if beta_x >= 0 {
            b.scale_pow(&hs, beta_x)
        } else {
            hs
        };
        (
            Element::new(ax, beta_x),
            conjugators(grp, &betas, &x, &s[1..], &h, 2 * beta_x),
        )
    };
    let sol = SfSolution {
        x: vec![xe],
        y: vec![],
        z,
    };
    check_sf(grp, sf, &sol)?;
    Ok(SfVerdict {
        solvable: true,
        case,
        certificate: cert,
        solution: Some(sol),
    })
}

pub fn solve_nonorientable_genus2plus(grp: &Group, sf: &StandardForm) -> Result<SfVerdict> {
    if sf.kind != Kind::Nonorientable || sf.genus < 2 {
        return Err(wrong_kind("nonorientable genus ≥ 2", sf));
    }
    let prod = sf.constant_product(grp);
    let mut cert = vec![("product".into(), grp.render_element(&prod))];
    if !grp.in_squares_subgroup(&prod) {
        return Ok(SfVerdict::no("genus2plus", cert));
    }
    let (x1, x2) = grp.squares_express(&grp.inv(&prod))?;
    cert.push((
        "squares".into(),
        format!("{} {}", grp.render_element(&x1), grp.render_element(&x2)),
    ));
    let mut sol = SfSolution::identity(sf);
    sol.x[0] = x1;
    sol.x[1] = x2;
    check_sf(grp, sf, &sol)?;
    Ok(SfVerdict {
        solvable: true,
        case: "genus2plus",
        certificate: cert,
        solution: Some(sol),
    })
}

fn check_sf(grp: &Group, sf: &StandardForm, sol: &SfSolution) -> Result<()> {
    if sf.evaluate(grp, sol).is_identity() {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "{} construction failed to verify",
            sf.kind
        )))
    }
}

/// Dispatch on kind and genus.
pub fn solve_standard_form(grp: &Group, sf: &StandardForm, limits: &Limits) -> Result<SfVerdict> {
    match (sf.kind, sf.genus) {
        (Kind::Trivial, _) => Ok(SfVerdict {
            solvable: true,
            case: "trivial",
            certificate: vec![],
            solution: Some(SfSolution::identity(sf)),
        }),
        (Kind::Spherical, _) => solve_spherical(grp, sf, limits),
        (Kind::Orientable, _) => solve_orientable(grp, sf),
        (Kind::Nonorientable, 1) => solve_nonorientable_genus1(grp, sf, limits),
        (Kind::Nonorientable, _) => solve_nonorientable_genus2plus(grp, sf),
    }
}

/// Values for the original variables with their rendered words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub assignment: Assignment,
    pub words: BTreeMap<String, Word>,
}

impl Solution {
    pub fn from_assignment(grp: &Group, assignment: Assignment) -> Self {
        let words = assignment
            .iter()
            .map(|(k, v)| (k.clone(), grp.element_to_word(v)))
            .collect();
        Solution { assignment, words }
    }

    /// Values read back from rendered words.
    pub fn from_words(grp: &Group, words: BTreeMap<String, Word>) -> Self {
        let assignment = words
            .iter()
            .map(|(k, w)| (k.clone(), grp.eval_word(w)))
            .collect();
        Solution { assignment, words }
    }

    pub fn size(&self) -> BigUint {
        solution_size(self)
    }
}

pub fn solution_size(sol: &Solution) -> BigUint {
    sol.words.values().map(|w| w.len()).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub solvable: bool,
    pub kind: Kind,
    pub genus: usize,
    pub k: usize,
    pub case: &'static str,
    pub certificate: Vec<(String, String)>,
    pub solution: Option<Solution>,
    /// `|W|` of the input.
    pub length: BigUint,
}

impl Verdict {
    /// `SIZE_C · |W|^3`.
    pub fn bound(&self) -> BigUint {
        let w = self.length.clone().max(BigUint::one());
        w.pow(3) * SIZE_C
    }

    pub fn size(&self) -> Option<BigUint> {
        self.solution.as_ref().map(solution_size)
    }

    /// Line-oriented `key: value` record.
    pub fn render_record(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "solvable: {}", self.solvable);
        let _ = writeln!(s, "case: {}", self.case);
        let _ = writeln!(s, "kind: {}", self.kind);
        let _ = writeln!(s, "genus: {}", self.genus);
        let _ = writeln!(s, "constants: {}", self.k);
        for (k, v) in &self.certificate {
            let _ = writeln!(s, "witness.{k}: {v}");
        }
        if let Some(sol) = &self.solution {
            for (k, w) in &sol.words {
                let _ = writeln!(s, "solution.{k}: {w}");
            }
            let _ = writeln!(s, "size: {}", solution_size(sol));
        }
        let _ = writeln!(s, "length: {}", self.length);
        let _ = writeln!(s, "bound: {}", self.bound());
        s
    }

    pub fn render_human(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} ({} form, genus {}, {} constants, case {})",
            if self.solvable { "solvable" } else { "unsolvable" },
            self.kind,
            self.genus,
            self.k,
            self.case
        );
        if let Some(sol) = &self.solution {
            for (k, w) in &sol.words {
                let _ = writeln!(s, "  {k} = {w}");
            }
            let _ = writeln!(
                s,
                "size {} (bound {})",
                solution_size(sol),
                self.bound()
            );
        }
        s
    }
}

/// Read `solution.<var>: <word>` lines; other keys are ignored.
pub fn parse_solution_record(grp: &Group, text: &str) -> Result<Solution> {
    let mut words = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| Error::Syntax {
            pos: i,
            msg: format!("line {} is not `key: value`", i + 1),
        })?;
        if let Some(var) = key.trim().strip_prefix("solution.") {
            let w: Word = value.trim().parse()?;
            words.insert(var.to_string(), w);
        }
    }
    Ok(Solution::from_words(grp, words))
}

/// Parse, normalize, decide, construct, pull back and verify.
pub fn solve(grp: &Group, ast: &EquationAst, limits: &Limits) -> Result<Verdict> {
    let (sf, sub) = to_standard_form(grp, ast)?;
    solve_normalized(grp, ast, &sf, &sub, limits)
}

pub fn solve_text(grp: &Group, text: &str, limits: &Limits) -> Result<Verdict> {
    solve(grp, &eqnorm::parse_equation(text)?, limits)
}

pub fn solve_normalized(
    grp: &Group,
    ast: &EquationAst,
    sf: &StandardForm,
    sub: &Substitution,
    limits: &Limits,
) -> Result<Verdict> {
    let v = solve_standard_form(grp, sf, limits)?;
    let solution = match &v.solution {
        Some(s) => {
            let back = pull_back(grp, sub, sf, s)?;
            let sol = Solution::from_assignment(grp, back);
            if !verify(grp, ast, &sol)? {
                return Err(Error::Internal(
                    "pulled-back solution failed to verify".into(),
                ));
            }
            Some(sol)
        }
        None => None,
    };
    Ok(Verdict {
        solvable: v.solvable,
        kind: sf.kind,
        genus: sf.genus,
        k: sf.k(),
        case: v.case,
        certificate: v.certificate,
        solution,
        length: ast.length(),
    })
}

/// Substitute and evaluate; true iff the result is the identity.
pub fn verify(grp: &Group, ast: &EquationAst, sol: &Solution) -> Result<bool> {
    Ok(eqnorm::evaluate(grp, ast, &sol.assignment)?.is_identity())
}

/// Linear-time decision for orientable genus ≥ 1 and nonorientable genus ≥ 2,
/// read off the exponent sums of the constants; `None` for the other forms.
pub fn decide_linear(grp: &Group, ast: &EquationAst) -> Result<Option<bool>> {
    let topo = eqnorm::topology(ast)?;
    let linear = if topo.orientable {
        topo.genus >= 1
    } else {
        topo.genus >= 2
    };
    if !linear {
        return Ok(None);
    }
    let (sa, st) = exp_sums(&ast.constant_word());
    let n = grp.n();
    let yes = if topo.orientable {
        let m = BigInt::from(n - 1).abs();
        st.is_zero() && if m.is_zero() { sa.is_zero() } else { sa.is_multiple_of(&m) }
    } else {
        st.is_even() && (n % 2 == 0 || sa.is_even())
    };
    Ok(Some(yes))
}

/// Solve many equations; verdicts come back in input order.
pub fn solve_batch(
    grp: &Group,
    asts: &[EquationAst],
    limits: &Limits,
    exec: crate::par::Exec,
) -> Vec<Result<Verdict>> {
    exec.map(asts, |ast| solve(grp, ast, limits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqnorm::parse_equation;

    fn el(grp: &Group, a: i64, e: i64, b: i64) -> Element {
        Element::new(grp.base().canonicalize(a.into(), e), b)
    }

    fn sf_with(kind: Kind, genus: usize, constants: Vec<Element>) -> StandardForm {
        let nx = match kind {
            Kind::Orientable | Kind::Nonorientable => genus,
            _ => 0,
        };
        let ny = if kind == Kind::Orientable { genus } else { 0 };
        let k = constants.len();
        StandardForm {
            kind,
            genus,
            x: (0..nx).collect(),
            y: (nx..nx + ny).collect(),
            z: (nx + ny..nx + ny + k).collect(),
            const_words: vec![Word::new(); k],
            constants,
        }
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn spherical_examples() {
        let g = Group::new(2).unwrap();
        let sf = sf_with(
            Kind::Spherical,
            0,
            vec![el(&g, 1, 0, 0), el(&g, 1, 0, 0), el(&g, -4, 0, 0)],
        );
        let v = solve_spherical(&g, &sf, &lim()).unwrap();
        assert!(v.solvable);
        assert_eq!(
            v.solution.unwrap().z,
            vec![Element::t_pow(1), Element::t_pow(1), Element::identity()]
        );
        let sf = sf_with(Kind::Spherical, 0, vec![el(&g, 1, 0, 0); 3]);
        assert!(!solve_spherical(&g, &sf, &lim()).unwrap().solvable);
        let sf = sf_with(Kind::Spherical, 0, vec![el(&g, 1, 0, 1), el(&g, 1, 0, -1)]);
        let v = solve_spherical(&g, &sf, &lim()).unwrap();
        assert!(v.solvable);
        assert_eq!(v.case, "spherical-bezout");
    }

    #[test]
    fn orientable_examples() {
        let g = Group::new(3).unwrap();
        let sf = sf_with(Kind::Orientable, 1, vec![el(&g, 2, 0, 0)]);
        assert!(solve_orientable(&g, &sf).unwrap().solvable);
        let sf = sf_with(Kind::Orientable, 1, vec![el(&g, 1, 0, 0)]);
        assert!(!solve_orientable(&g, &sf).unwrap().solvable);
        let sf = sf_with(Kind::Orientable, 2, vec![]);
        let v = solve_orientable(&g, &sf).unwrap();
        assert!(v.solvable);
        assert!(v.solution.unwrap().x.iter().all(|e| e.is_identity()));
        assert!(solve_orientable(&g, &sf_with(Kind::Spherical, 0, vec![])).is_err());
    }

    #[test]
    fn genus1_examples() {
        let g = Group::new(2).unwrap();
        let sf = sf_with(Kind::Nonorientable, 1, vec![el(&g, 1, 0, 0)]);
        assert!(solve_nonorientable_genus1(&g, &sf, &lim()).unwrap().solvable);
        let g3 = Group::new(3).unwrap();
        let sf = sf_with(Kind::Nonorientable, 1, vec![el(&g3, 1, 0, 0)]);
        assert!(!solve_nonorientable_genus1(&g3, &sf, &lim()).unwrap().solvable);
        let gm = Group::new(-1).unwrap();
        let sf = sf_with(
            Kind::Nonorientable,
            1,
            vec![el(&gm, 1, 0, 1), el(&gm, 1, 0, 1)],
        );
        assert!(solve_nonorientable_genus1(&gm, &sf, &lim()).unwrap().solvable);
        let sf = sf_with(Kind::Nonorientable, 1, vec![el(&gm, 1, 0, 1), el(&gm, 2, 0, 1)]);
        assert!(!solve_nonorientable_genus1(&gm, &sf, &lim()).unwrap().solvable);
    }

    #[test]
    fn genus1_all_bases_small() {
        // construction verifies whenever the decision says yes
        for n in [-3i64, -2, -1, 1, 2, 3, 4] {
            let g = Group::new(n).unwrap();
            for a1 in -3..=3 {
                for b1 in -2..=2 {
                    for b2 in -2..=2 {
                        let sf = sf_with(
                            Kind::Nonorientable,
                            1,
                            vec![el(&g, a1, 0, b1), el(&g, 1, 1, b2)],
                        );
                        solve_nonorientable_genus1(&g, &sf, &lim()).unwrap();
                        let sf = sf_with(
                            Kind::Spherical,
                            0,
                            vec![el(&g, a1, 0, b1), el(&g, 1, 1, b2), el(&g, 2, 0, -b1 - b2)],
                        );
                        solve_spherical(&g, &sf, &lim()).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn genus2_examples() {
        let g = Group::new(2).unwrap();
        let sf = sf_with(Kind::Nonorientable, 2, vec![el(&g, -1, 0, 0)]);
        assert!(solve_nonorientable_genus2plus(&g, &sf).unwrap().solvable);
        let g3 = Group::new(3).unwrap();
        let sf = sf_with(Kind::Nonorientable, 2, vec![el(&g3, 1, 0, 0)]);
        assert!(!solve_nonorientable_genus2plus(&g3, &sf).unwrap().solvable);
        let sf = sf_with(Kind::Nonorientable, 2, vec![el(&g3, 2, 0, 2)]);
        assert!(solve_nonorientable_genus2plus(&g3, &sf).unwrap().solvable);
    }

    #[test]
    fn end_to_end() {
        let g = Group::new(2).unwrap();
        let v = solve_text(&g, "z^-1 a z w^-1 a w v^-1 a^-4 v", &lim()).unwrap();
        assert!(v.solvable);
        assert!(v.size().unwrap() <= v.bound());
        let g3 = Group::new(3).unwrap();
        assert!(!solve_text(&g3, "[x,y] u^-1 a u", &lim()).unwrap().solvable);
        assert!(solve_text(&g, "x a x a", &lim()).is_ok());
        assert!(solve_text(&g, "x a x x", &lim()).is_err());
    }

    #[test]
    fn verify_examples() {
        let g = Group::new(2).unwrap();
        let ast = parse_equation("z^-1 a z w^-1 a w v^-1 a^-4 v").unwrap();
        let mut words = BTreeMap::new();
        words.insert("z".to_string(), "t".parse::<Word>().unwrap());
        words.insert("w".to_string(), "t".parse::<Word>().unwrap());
        words.insert("v".to_string(), Word::new());
        let sol = Solution::from_words(&g, words.clone());
        assert!(verify(&g, &ast, &sol).unwrap());
        assert_eq!(solution_size(&sol), BigUint::from(2u32));
        for w in words.values_mut() {
            *w = Word::new();
        }
        let sol = Solution::from_words(&g, words.clone());
        assert!(!verify(&g, &ast, &sol).unwrap());
        words.remove("v");
        assert!(verify(&g, &ast, &Solution::from_words(&g, words)).is_err());
        assert_eq!(
            solution_size(&Solution::from_words(&g, BTreeMap::new())),
            BigUint::zero()
        );
    }

    #[test]
    fn record_round_trip() {
        let g = Group::new(2).unwrap();
        let ast = parse_equation("x a x a t^2").unwrap();
        let v = solve(&g, &ast, &lim()).unwrap();
        let rec = v.render_record();
        if v.solvable {
            let sol = parse_solution_record(&g, &rec).unwrap();
            assert!(verify(&g, &ast, &sol).unwrap());
        }
    }

    #[test]
    fn linear_decision_matches_solver() {
        let cases = [
            "[x,y] a", "[x,y] a^2", "[x,y] t", "x^2 y^2 a", "x^2 y^2 t a^2", "x a y x t y",
            "x y X Y u v U V a^-6 t T",
        ];
        for n in [-2i64, 2, 3] {
            let g = Group::new(n).unwrap();
            for text in cases {
                let ast = parse_equation(text).unwrap();
                let v = solve(&g, &ast, &lim()).unwrap();
                if let Some(d) = decide_linear(&g, &ast).unwrap() {
                    assert_eq!(d, v.solvable, "{text} over {n}");
                }
            }
        }
    }
}
