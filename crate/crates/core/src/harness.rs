//! Verification suites, deterministic reports and matrix export.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use dashu_int::IBig;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bkl::{self, CBkl};
use crate::braid::{self, forget_last_strand, pure_generator, BraidWord, OverStrand, Perm};
use crate::error::{Error, Result};
use crate::fox::{magnus_in_gamma_basis, reduced_magnus_matrix};
use crate::gassner::{self, forget_last_variable, gamma, induced_gassner, Gassner};
use crate::graded::{braid_relation_pairs, colored_relation_failures, induced_relation_failures, GradedMap};
use crate::lawrence::{self, CLawrence};
use crate::matrix::Matrix;
use crate::quantum::{self, check_conjugation, QuantSign, PINNED_SIGN};
use crate::ring::{LaurentPoly, Substitution, VarSet};

pub const SUITES: [&str; 10] = [
    "ring-axioms",
    "braid-relations-gassner",
    "conjugation",
    "bkl-kernel",
    "bkl-relations",
    "lawrence-relations",
    "p-basis",
    "specializations",
    "fadell-neuwirth",
    "pure-multiplicativity",
];

pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub seed: Option<u64>,
    pub max_n: Option<usize>,
    pub max_m: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    /// Nonzero residual entries (0 when the failure is not a residual).
    pub nonzero_entries: usize,
    /// (row, col, term count) of the first nonzero entry.
    pub first_entry: Option<(usize, usize, usize)>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub max_n: Option<usize>,
    pub max_m: Option<u32>,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| {
                json!({
                    "case": f.case,
                    "nonzero_entries": f.nonzero_entries,
                    "first_entry": f.first_entry.map(|(i, j, t)| json!({"row": i, "col": j, "terms": t})),
                    "note": f.note,
                })
            })
            .collect();
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "bounds": {"max_n": self.max_n, "max_m": self.max_m},
            "cases": self.cases,
            "failures": failures,
            "passed": self.passed(),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string_pretty(&self.to_json()).expect("serialisable"))
    }
}

/// What one case produced.
enum Check {
    Zero(Matrix),
    ZeroMap(GradedMap),
    Holds(bool, &'static str),
}

type CaseFn = Box<dyn Fn() -> Result<Vec<Check>> + Send + Sync>;

struct Case {
    id: String,
    run: CaseFn,
}

fn case(id: impl Into<String>, run: impl Fn() -> Result<Vec<Check>> + Send + Sync + 'static) -> Case {
    Case {
        id: id.into(),
        run: Box::new(run),
    }
}

fn evaluate(c: &Case) -> Option<Failure> {
    let fail = |nz, first, note: Option<String>| Failure {
        case: c.id.clone(),
        nonzero_entries: nz,
        first_entry: first,
        note,
    };
    match (c.run)() {
        Err(e) => Some(fail(0, None, Some(format!("error: {e}")))),
        Ok(checks) => checks.into_iter().find_map(|ch| match ch {
            Check::Zero(m) => {
                let (nz, first) = m.residual_summary();
                (nz > 0).then(|| fail(nz, first, None))
            }
            Check::ZeroMap(g) => {
                let mut nz = 0;
                let mut first = None;
                let mut at = None;
                for (src, b) in g.blocks() {
                    let (k, f) = b.matrix.residual_summary();
                    if k > 0 && first.is_none() {
                        first = f;
                        at = Some(format!("block {src}"));
                    }
                    nz += k;
                }
                (nz > 0).then(|| fail(nz, first, at))
            }
            Check::Holds(ok, what) => (!ok).then(|| fail(0, None, Some(what.to_string()))),
        }),
    }
}

/// Run a named suite. Cases are evaluated in parallel; failures keep case order.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<VerificationReport> {
    let seed = params.seed.unwrap_or(DEFAULT_SEED);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (max_n, max_m, cases) = match name {
        "ring-axioms" => {
            let k = params.max_n.unwrap_or(3);
            (Some(k), None, ring_axioms(&mut rng, k.max(1))?)
        }
        "braid-relations-gassner" => {
            let n = params.max_n.unwrap_or(5);
            (Some(n), None, gassner_relations(n))
        }
        "conjugation" => {
            let n = params.max_n.unwrap_or(4);
            (Some(n), None, conjugation(n))
        }
        "bkl-kernel" => {
            let n = params.max_n.unwrap_or(5);
            (Some(n), None, bkl_kernel(n))
        }
        "bkl-relations" => {
            let n = params.max_n.unwrap_or(5);
            (Some(n), None, bkl_relations(n))
        }
        "lawrence-relations" => {
            let n = params.max_n.unwrap_or(5);
            let m = params.max_m.unwrap_or(3);
            (Some(n), Some(m), lawrence_relations(n, m))
        }
        "p-basis" => (None, None, p_basis()),
        "specializations" => {
            let n = params.max_n.unwrap_or(4);
            let m = params.max_m.unwrap_or(2);
            (Some(n), Some(m), specializations(&mut rng, n.max(3), m))
        }
        "fadell-neuwirth" => {
            let n = params.max_n.unwrap_or(4);
            (Some(n), None, fadell_neuwirth(&mut rng, n.max(3)))
        }
        "pure-multiplicativity" => {
            let n = params.max_n.unwrap_or(4);
            let m = params.max_m.unwrap_or(2);
            (Some(n), Some(m), pure_multiplicativity(&mut rng, n.max(2), m))
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let failures: Vec<Failure> = cases.par_iter().filter_map(evaluate).collect();
    Ok(VerificationReport {
        suite: name.to_string(),
        seed,
        max_n,
        max_m,
        cases: cases.len(),
        failures,
    })
}

fn random_poly<R: Rng>(rng: &mut R, vars: &Arc<VarSet>) -> LaurentPoly {
    let terms = rng.random_range(0..=4);
    let k = vars.len();
    LaurentPoly::from_terms(
        vars,
        (0..terms).map(|_| {
            let e: Vec<i32> = (0..k).map(|_| rng.random_range(-2..=2)).collect();
            (e.into_iter().collect(), IBig::from(rng.random_range(-5i64..=5)))
        }),
    )
    .expect("matching lengths")
}

fn random_unit<R: Rng>(rng: &mut R, vars: &Arc<VarSet>) -> LaurentPoly {
    let e: Vec<i32> = (0..vars.len()).map(|_| rng.random_range(-2..=2)).collect();
    let c = if rng.random_bool(0.5) { 1 } else { -1 };
    LaurentPoly::monomial(vars, e.into_iter().collect(), c)
}

fn ring_axioms(rng: &mut ChaCha8Rng, k: usize) -> Result<Vec<Case>> {
    let vars = VarSet::indexed("x", k, &[])?;
    let target = VarSet::indexed("y", k, &[])?;
    let mut out = Vec::new();
    for c in 0..100 {
        let (a, b, d) = (random_poly(rng, &vars), random_poly(rng, &vars), random_poly(rng, &vars));
        let sub = (1..=k).try_fold(Substitution::new(&vars, &target), |s, i| {
            let img = if i % 2 == 0 {
                random_unit(rng, &target)
            } else {
                &random_unit(rng, &target) + &random_unit(rng, &target)
            };
            s.set(&format!("x{i}"), img)
        })?;
        let vars = vars.clone();
        out.push(case(format!("ring {c}"), move || {
            let one = LaurentPoly::one(&vars);
            let ab = &a * &b;
            let mut checks = vec![
                Check::Holds(&(&a + &b) + &d == &a + &(&b + &d), "additive associativity"),
                Check::Holds(&a + &b == &b + &a, "additive commutativity"),
                Check::Holds(&ab * &d == &a * &(&b * &d), "multiplicative associativity"),
                Check::Holds(ab == &b * &a, "multiplicative commutativity"),
                Check::Holds(&a * &(&b + &d) == &ab + &(&a * &d), "distributivity"),
                Check::Holds((&a - &a).is_zero() && &a * &one == a, "identities"),
                Check::Holds(LaurentPoly::parse(&vars, &a.to_string())? == a, "display/parse round trip"),
                Check::Holds(LaurentPoly::from_json(&a.to_json())? == a, "json round trip"),
            ];
            if !b.is_zero() {
                checks.push(Check::Holds(ab.div_exact(&b)? == a, "exact division"));
            }
            // images of odd variables are not units, so only substitute when
            // those variables occur with non-negative exponents
            if let (Ok(sa), Ok(sb), Ok(sab)) = (sub.apply(&a), sub.apply(&b), sub.apply(&ab)) {
                checks.push(Check::Holds(sab == &sa * &sb, "substitution is multiplicative"));
            }
            Ok(checks)
        }));
    }
    Ok(out)
}

fn gassner_relations(max_n: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.push(case(format!("induced gassner n={n}"), move || {
            Ok(induced_relation_failures(&Gassner::new(n))?
                .into_iter()
                .map(|(_, r)| Check::Zero(r))
                .collect())
        }));
        out.push(case(format!("gamma n={n}"), move || {
            Ok(colored_relation_failures(&Gassner::new(n), OverStrand::RightSlot)?
                .into_iter()
                .map(|(_, r)| Check::Zero(r))
                .collect())
        }));
    }
    out
}

fn conjugation(max_n: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for i in 1..n {
            for inverse in [false, true] {
                let e = if inverse { -(i as i64) } else { i as i64 };
                out.push(case(format!("n={n} sigma {e}"), move || {
                    let w = BraidWord::from_signed(n, &[e])?;
                    Ok(vec![Check::ZeroMap(check_conjugation(&w, PINNED_SIGN)?)])
                }));
            }
        }
        out.push(case(format!("quant relations n={n}"), move || {
            Ok(induced_relation_failures(&quantum::Quant::new(n, PINNED_SIGN))?
                .into_iter()
                .map(|(_, r)| Check::Zero(r))
                .collect())
        }));
    }
    let n = max_n.max(3);
    out.push(case(format!("other sign fails n={n}"), move || {
        let other = QuantSign::both().into_iter().find(|&s| s != PINNED_SIGN).expect("two signs");
        let mut any = false;
        for i in 1..n {
            any |= !check_conjugation(&BraidWord::from_signed(n, &[i as i64])?, other)?.is_zero();
        }
        Ok(vec![Check::Holds(any, "the unpinned sign should fail")])
    }));
    out
}

fn bkl_kernel(max_n: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        out.push(case(format!("boundary n={n}"), move || {
            let a = bkl::boundary_matrix(n)?;
            let b = bkl::boundary_from_relators(n)?;
            Ok(vec![Check::Zero(a.matrix.sub(&b.matrix)?)])
        }));
        for f in bkl::fork_basis(n) {
            out.push(case(format!("kernel n={n} {f}"), move || {
                let bd = bkl::boundary_matrix(n)?;
                let img = bd.apply(&bkl::kernel_column(&bd, f.j, f.k)?)?;
                let col = Matrix::from_rows(bd.matrix.vars(), img.into_iter().map(|x| vec![x]).collect())?;
                Ok(vec![Check::Zero(col)])
            }));
        }
    }
    out
}

fn convention_cases<F>(label: String, n: usize, make: F, pinned: OverStrand) -> Vec<Case>
where
    F: Fn() -> Result<Box<dyn crate::graded::ColoredFamily>> + Send + Sync + Clone + 'static,
{
    let mut out = Vec::new();
    for (rel, a, b) in braid_relation_pairs(n) {
        let mk = make.clone();
        out.push(case(format!("{label} n={n} {rel}"), move || {
            let fam = mk()?;
            let l = crate::graded::colored_product(fam.as_ref(), &a, pinned)?;
            let r = crate::graded::colored_product(fam.as_ref(), &b, pinned)?;
            Ok(vec![Check::Zero(l.sub(&r)?)])
        }));
    }
    if n >= 3 {
        out.push(case(format!("{label} n={n} {} fails", pinned.other()), move || {
            let fam = make()?;
            let f = colored_relation_failures(fam.as_ref(), pinned.other())?;
            Ok(vec![Check::Holds(!f.is_empty(), "the other convention should fail")])
        }));
    }
    out
}

fn bkl_relations(max_n: usize) -> Vec<Case> {
    (3..=max_n)
        .flat_map(|n| {
            convention_cases("cbkl".into(), n, move || Ok(Box::new(CBkl::new(n)) as Box<_>), OverStrand::LeftSlot)
        })
        .collect()
}

fn lawrence_relations(max_n: usize, max_m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for m in 1..=max_m {
            for (rel, a, b) in braid_relation_pairs(n) {
                out.push(case(format!("lawrence n={n} m={m} {rel}"), move || {
                    Ok(vec![Check::Zero(lawrence::lawrence_matrix(&a, m)?.sub(&lawrence::lawrence_matrix(&b, m)?)?)])
                }));
            }
        }
    }
    for n in 3..=max_n.min(4) {
        for m in 1..=max_m {
            out.extend(convention_cases(
                format!("claw m={m}"),
                n,
                move || Ok(Box::new(CLawrence::new(n, m)?) as Box<_>),
                OverStrand::LeftSlot,
            ));
        }
    }
    out
}

fn p_basis() -> Vec<Case> {
    let lv = lawrence::uncolored_vars();
    let bv = bkl::uncolored_vars();
    let l1 = Matrix::parse_rows(&lv, &[&["s^2*t^-1", "-s^2*(1+t^-1)", "s^2"], &["0", "-s", "s"], &["0", "0", "1"]]);
    let l2 = Matrix::parse_rows(&lv, &[&["1", "0", "0"], &["1", "-s", "0"], &["1", "-s*(1+t^-1)", "s^2*t^-1"]]);
    let b1 = Matrix::parse_rows(&bv, &[&["q^2*t", "0", "q^2-q"], &["0", "0", "q"], &["0", "1", "1-q"]]);
    let b2 = Matrix::parse_rows(&bv, &[&["0", "q", "0"], &["1", "1-q", "0"], &["0", "t*(q^2-q)", "q^2*t"]]);
    let displayed = [("L1", 1, l1, true), ("L2", 2, l2, true), ("BKL1", 1, b1, false), ("BKL2", 2, b2, false)];
    let mut out: Vec<Case> = displayed
        .into_iter()
        .map(|(name, i, want, is_law)| {
            case(format!("displayed {name}"), move || {
                let want = want.clone()?;
                let got = if is_law {
                    lawrence::lawrence_uncolored(3, 2, i)?
                } else {
                    bkl::bkl_uncolored(3, i)?
                };
                Ok(vec![Check::Zero(got.sub(&want)?)])
            })
        })
        .collect();
    out.push(case("P relation", || {
        Ok(lawrence::p_relation_residuals()?.into_iter().map(Check::Zero).collect())
    }));
    out.push(case("F13 column of P", || {
        let p = lawrence::change_of_basis_p();
        let col: Vec<_> = (0..3).map(|r| p.get(r, 1).clone()).collect();
        Ok(vec![Check::Holds(lawrence::fork_f13_on_code_sequences()? == col, "column mismatch")])
    }));
    out.push(case("pairing identification", || {
        let v = bkl::bkl_vars(4);
        let want: Vec<LaurentPoly> = ["q1^2-q1", "q1", "1-q1"]
            .iter()
            .map(|s| LaurentPoly::parse(&v, s))
            .collect::<Result<_>>()?;
        Ok(vec![Check::Holds(bkl::pairing::solve_identification()? == want, "A, B, C")])
    }));
    out
}

fn specializations(rng: &mut ChaCha8Rng, max_n: usize, m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for c in 0..10 {
        let n = rng.random_range(3..=max_n);
        let len = rng.random_range(1..=8);
        let w = braid::random_word(rng, n, len);
        out.push(case(format!("cbkl to bkl {c}: n={n} [{w}]"), {
            let w = w.clone();
            move || {
                let a = bkl::cbkl(&w)?.substitute(&bkl::to_uncolored(w.n()))?;
                Ok(vec![Check::Zero(a.sub(&bkl::bkl_matrix(&w)?)?)])
            }
        }));
        out.push(case(format!("claw to lawrence {c}: n={n} [{w}]"), {
            let w = w.clone();
            move || {
                let a = lawrence::claw(&w, m)?.substitute(&lawrence::to_uncolored(w.n()))?;
                Ok(vec![Check::Zero(a.sub(&lawrence::lawrence_matrix(&w, m)?)?)])
            }
        }));
        out.push(case(format!("gamma to burau {c}: n={n} [{w}]"), move || {
            let a = gamma(&w)?.substitute(&gassner::to_burau(w.n()))?;
            Ok(vec![Check::Zero(a.sub(&gassner::burau_matrix(&w)?)?)])
        }));
    }
    for n in 2..=max_n.max(6) {
        out.push(case(format!("level one n={n}"), move || {
            Ok(lawrence::level_one_residuals(n)?.into_iter().map(Check::Zero).collect())
        }));
    }
    for n in 3..=max_n.max(4) {
        for r in 1..n {
            for s in r + 1..=n {
                out.push(case(format!("fox vs gamma n={n} A{r},{s}"), move || {
                    let w = pure_generator(n, r, s)?;
                    let g = gamma(&w)?;
                    let f = magnus_in_gamma_basis(&w)?;
                    let to_b = gassner::to_burau(n);
                    let burau = gassner::burau_matrix(&w)?;
                    Ok(vec![
                        Check::Zero(f.sub(&g)?),
                        Check::Zero(f.substitute(&to_b)?.sub(&burau)?),
                        Check::Zero(g.substitute(&to_b)?.sub(&burau)?),
                        Check::Holds(reduced_magnus_matrix(&w).is_ok(), "g-basis reduction"),
                    ])
                }));
            }
        }
    }
    out
}

fn fadell_neuwirth(rng: &mut ChaCha8Rng, n: usize) -> Vec<Case> {
    (0..20)
        .map(|c| {
            let w = braid::random_pure(rng, n);
            case(format!("forget {c}: [{w}]"), move || {
                let lhs = forget_last_variable(&gamma(&w)?)?;
                let rhs = gamma(&forget_last_strand(&w)?)?;
                Ok(vec![Check::Zero(lhs.sub(&rhs)?)])
            })
        })
        .collect()
}

fn pure_multiplicativity(rng: &mut ChaCha8Rng, n: usize, m: u32) -> Vec<Case> {
    let mut out = Vec::new();
    for c in 0..50 {
        let u = braid::random_pure(rng, n);
        let v = braid::random_pure(rng, n);
        out.push(case(format!("pair {c}: [{u}] [{v}]"), move || {
            let uv = u.concat(&v)?;
            let mut checks = Vec::new();
            checks.push(Check::Zero(bkl::cbkl(&uv)?.sub(&bkl::cbkl(&u)?.mul(&bkl::cbkl(&v)?)?)?));
            checks.push(Check::Zero(
                lawrence::claw(&uv, m)?.sub(&lawrence::claw(&u, m)?.mul(&lawrence::claw(&v, m)?)?)?,
            ));
            checks.push(Check::Zero(gamma(&uv)?.sub(&gamma(&u)?.mul(&gamma(&v)?)?)?));
            Ok(checks)
        }));
    }
    for c in 0..50 {
        let w = if c % 2 == 0 {
            braid::random_pure(rng, n)
        } else {
            let len = rng.random_range(1..=10);
            braid::random_word(rng, n, len)
        };
        out.push(case(format!("purity gate {c}: [{w}]"), move || {
            let id = Perm::identity(w.n());
            let g = induced_gassner(&w, Some(std::slice::from_ref(&id)))?;
            let blk = g.block(&id).expect("requested block");
            let fixes = blk.dst == id;
            let mut checks = vec![Check::Holds(fixes == w.is_pure(), "identity block fixed iff pure")];
            if fixes {
                checks.push(Check::Zero(blk.matrix.sub(&gamma(&w)?)?));
            }
            Ok(checks)
        }));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Latex,
    CsvMonomial,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "latex" => Ok(Self::Latex),
            "csv-monomial" => Ok(Self::CsvMonomial),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

fn csv_header(vars: &VarSet, lead: &str) -> String {
    let mut h = format!("{lead}row,col,coeff");
    for v in vars.names() {
        h.push(',');
        h.push_str(v);
    }
    h.push('\n');
    h
}

pub fn export_matrix(m: &Matrix, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => format!("{}\n", m.to_json_with_vars()),
        ExportFormat::Latex => format!("{}\n", m.to_latex()),
        ExportFormat::CsvMonomial => {
            let mut out = csv_header(m.vars(), "");
            m.to_csv_monomials(&mut out, "");
            out
        }
    }
}

fn perm_field(p: &Perm) -> String {
    p.images().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn export_graded(g: &GradedMap, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => format!("{}\n", g.to_json()),
        ExportFormat::Latex => {
            let mut out = String::new();
            for (src, b) in g.blocks() {
                out.push_str(&format!("% [{}] -> [{}]\n{}\n", perm_field(src), perm_field(&b.dst), b.matrix.to_latex()));
            }
            out
        }
        ExportFormat::CsvMonomial => {
            let mut out = csv_header(g.vars(), "src,dst,");
            for (src, b) in g.blocks() {
                b.matrix.to_csv_monomials(&mut out, &format!("{},{},", perm_field(src), perm_field(&b.dst)));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names() {
        assert!(matches!(run_suite("nope", &SuiteParams::default()), Err(Error::UnknownSuite(_))));
        assert!(matches!("xml".parse::<ExportFormat>(), Err(Error::UnknownFormat(_))));
    }

    #[test]
    fn deterministic_reports() {
        let p = SuiteParams {
            seed: Some(7),
            ..Default::default()
        };
        let a = run_suite("ring-axioms", &p).unwrap();
        let b = run_suite("ring-axioms", &p).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn identity_export() {
        let v = VarSet::new(["t"]).unwrap();
        let id = Matrix::identity(&v, 2);
        assert_eq!(
            export_matrix(&id, ExportFormat::Json),
            "{\"cols\":2,\"matrix\":[[[{\"coeff\":\"1\",\"exps\":[0]}],[]],[[],[{\"coeff\":\"1\",\"exps\":[0]}]]],\"rows\":2,\"vars\":[\"t\"]}\n"
        );
        assert_eq!(export_matrix(&id, ExportFormat::CsvMonomial), "row,col,coeff,t\n0,0,1,0\n1,1,1,0\n");
    }
}
