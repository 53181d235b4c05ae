//! Weight-one quantum sl2 data: truncated Verma modules, the R-matrix on the
//! weight ≤ 1 part of V ⊗ V, the action Quant_n on τ ⊗ f_i and the diagonal
//! map Φ intertwining it with the induced Gassner representation.

use std::sync::Arc;

use crate::braid::{BraidWord, Perm};
use crate::error::{Error, Result};
use crate::gassner::induced_gassner;
use crate::graded::{induced, GradedMap, InducedFamily};
use crate::matrix::Matrix;
use crate::ring::{q_binomial, LaurentPoly, Substitution, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VermaGen {
    K,
    E,
    /// Divided power F^{(k)}.
    F(u32),
}

/// V^s truncated to v_0, …, v_M over ℤ[q^{±1}, s^{±1}] (or any ring
/// containing the given `q` and `s`).
#[derive(Clone, Debug)]
pub struct VermaTrunc {
    cutoff: usize,
    q: LaurentPoly,
    s: LaurentPoly,
}

impl VermaTrunc {
    pub fn new(cutoff: usize, q: &LaurentPoly, s: &LaurentPoly) -> Result<Self> {
        if **q.vars() != **s.vars() {
            return Err(Error::VarSetMismatch {
                left: q.vars().to_string(),
                right: s.vars().to_string(),
            });
        }
        if !q.is_unit() || !s.is_unit() {
            return Err(Error::NotAUnit("q and s must be monomials".into()));
        }
        Ok(Self {
            cutoff,
            q: q.clone(),
            s: s.clone(),
        })
    }

    /// Default cutoff 2 over the variables {q, s}.
    pub fn standard() -> Self {
        let v = VarSet::new(["q", "s"]).expect("names");
        let q = LaurentPoly::var(&v, "q").expect("q");
        let s = LaurentPoly::var(&v, "s").expect("s");
        Self::new(2, &q, &s).expect("units")
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        self.q.vars()
    }

    /// Coefficients (length M+1) of `gen · v_j`.
    pub fn action(&self, gen: VermaGen, j: usize) -> Result<Vec<LaurentPoly>> {
        if j > self.cutoff {
            return Err(Error::InvalidBounds(format!("v_{j} beyond cutoff {}", self.cutoff)));
        }
        let vars = self.vars();
        let mut out = vec![LaurentPoly::zero(vars); self.cutoff + 1];
        match gen {
            VermaGen::K => out[j] = &self.s * &self.q.pow(-2 * j as i64)?,
            VermaGen::E => {
                if j > 0 {
                    out[j - 1] = LaurentPoly::one(vars);
                }
            }
            VermaGen::F(k) => {
                let k = k as usize;
                if j + k > self.cutoff {
                    return Err(Error::InvalidBounds(format!(
                        "F^({k}) v_{j} lands beyond cutoff {}",
                        self.cutoff
                    )));
                }
                let mut c = q_binomial((k + j) as u32, j as u32, &self.q)?;
                let sinv = self.s.unit_inverse()?;
                for m in 0..k as i64 {
                    let a = &self.s * &self.q.pow(-m - j as i64)?;
                    let b = &sinv * &self.q.pow(j as i64 + m)?;
                    c = c * (a - b);
                }
                out[j + k] = c;
            }
        }
        Ok(out)
    }

    /// Matrix of `gen` on v_0..v_M (columns are images).
    pub fn matrix(&self, gen: VermaGen) -> Result<Matrix> {
        let m = self.cutoff + 1;
        let mut out = Matrix::zeros(self.vars(), m, m);
        for j in 0..m {
            let col = match self.action(gen, j) {
                Ok(c) => c,
                Err(Error::InvalidBounds(_)) if matches!(gen, VermaGen::F(_)) => continue,
                Err(e) => return Err(e),
            };
            for (i, c) in col.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }
}

/// Basis of the weight ≤ 1 part of V ⊗ V used below.
pub const WEIGHT1_BASIS: [(usize, usize); 3] = [(0, 0), (1, 0), (0, 1)];

fn weight1_index(a: usize, b: usize) -> usize {
    WEIGHT1_BASIS.iter().position(|&x| x == (a, b)).expect("weight <= 1")
}

/// The R-matrix on span{v_0⊗v_0, v_1⊗v_0, v_0⊗v_1} exactly as tabulated:
/// v_0v_0 ↦ v_0v_0, v_1v_0 ↦ s_1 v_0v_1 + (s_2²−1) v_1v_0, v_0v_1 ↦ s_2 v_1v_0.
pub fn r_matrix_weight1(s1: &LaurentPoly, s2: &LaurentPoly) -> Result<Matrix> {
    let vars = s1.vars();
    let one = LaurentPoly::one(vars);
    let mut m = Matrix::zeros(vars, 3, 3);
    m.set(0, 0, one.clone());
    m.set(weight1_index(0, 1), weight1_index(1, 0), s1.clone());
    m.set(weight1_index(1, 0), weight1_index(1, 0), s2.checked_mul(s2)? - one);
    m.set(weight1_index(1, 0), weight1_index(0, 1), s2.clone());
    Ok(m)
}

/// Braiding flip ∘ q^{H⊗H/2} Σ_n q^{n(n−1)/2} E^n ⊗ F^{(n)} on the weight ≤ 1
/// part, built from the Verma actions with the colour-only scalar q^{αα'/2}
/// dropped. On v_i ⊗ v_j the Cartan part contributes s_2^{-i} s_1^{-j} q^{2ij}.
pub fn braiding_from_definition(q: &LaurentPoly, s1: &LaurentPoly, s2: &LaurentPoly) -> Result<Matrix> {
    let v1 = VermaTrunc::new(1, q, s1)?;
    let v2 = VermaTrunc::new(1, q, s2)?;
    let vars = q.vars();
    let weight = |i: usize, j: usize| -> Result<LaurentPoly> {
        Ok(s2.pow(-(i as i64))? * s1.pow(-(j as i64))? * q.pow(2 * (i * j) as i64)?)
    };
    let mut m = Matrix::zeros(vars, 3, 3);
    for (col, &(i, j)) in WEIGHT1_BASIS.iter().enumerate() {
        // n = 0 term
        let mut terms: Vec<((usize, usize), LaurentPoly)> = vec![((i, j), LaurentPoly::one(vars))];
        // n = 1 term: E v_i ⊗ F v_j
        if i >= 1 && j < 1 {
            let e = v1.action(VermaGen::E, i)?;
            let f = v2.action(VermaGen::F(1), j)?;
            for (a, ca) in e.iter().enumerate() {
                for (b, cb) in f.iter().enumerate() {
                    if !ca.is_zero() && !cb.is_zero() {
                        terms.push(((a, b), ca * cb));
                    }
                }
            }
        }
        for ((a, b), c) in terms {
            // flip the tensor factors after the Cartan part
            let row = weight1_index(b, a);
            let v = m.get(row, col) + &(c * weight(a, b)?);
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// Operator on span{v_0v_0v_0, v_1v_0v_0, v_0v_1v_0, v_0v_0v_1} applying a
/// weight-one two-factor operator on slots (k, k+1).
pub fn on_triple(r: &Matrix, k: usize) -> Matrix {
    let basis: [[usize; 3]; 4] = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let idx = |b: [usize; 3]| basis.iter().position(|&x| x == b).unwrap();
    let vars = r.vars();
    let mut m = Matrix::zeros(vars, 4, 4);
    for (col, b) in basis.iter().enumerate() {
        let src = weight1_index(b[k - 1], b[k]);
        for (row2, &(x, y)) in WEIGHT1_BASIS.iter().enumerate() {
            let c = r.get(row2, src);
            if c.is_zero() {
                continue;
            }
            let mut nb = *b;
            nb[k - 1] = x;
            nb[k] = y;
            let row = idx(nb);
            let v = m.get(row, col) + c;
            m.set(row, col, v);
        }
    }
    m
}

/// R₁R₂R₁ − R₂R₁R₂ on the weight ≤ 1 part of V^{⊗3}.
pub fn yang_baxter_residual(r: &Matrix) -> Result<Matrix> {
    let (a, b) = (on_triple(r, 1), on_triple(r, 2));
    a.mul(&b)?.mul(&a)?.sub(&b.mul(&a)?.mul(&b)?)
}

/// Resolves the ∓ in the f-basis action; only `Plus` makes the Φ-conjugation hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuantSign {
    Plus,
    Minus,
}

impl QuantSign {
    pub fn both() -> [Self; 2] {
        [Self::Plus, Self::Minus]
    }

    fn apply(self, x: LaurentPoly) -> LaurentPoly {
        match self {
            Self::Plus => x,
            Self::Minus => -x,
        }
    }
}

pub const PINNED_SIGN: QuantSign = QuantSign::Plus;

pub fn quant_vars(n: usize) -> Arc<VarSet> {
    VarSet::indexed("s", n, &[]).expect("names")
}

pub struct Quant {
    n: usize,
    sign: QuantSign,
    vars: Arc<VarSet>,
}

impl Quant {
    pub fn new(n: usize, sign: QuantSign) -> Self {
        Self {
            n,
            sign,
            vars: quant_vars(n),
        }
    }

    fn s(&self, strand: usize) -> LaurentPoly {
        LaurentPoly::var(&self.vars, &format!("s{strand}")).expect("strand in range")
    }
}

impl InducedFamily for Quant {
    fn n(&self) -> usize {
        self.n
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }
    /// σ_k on τ⊗f: f_k ↦ (1−s_a²) f_k ± s_b f_{k+1}, f_{k+1} ↦ ± s_a f_k, with
    /// a = τ^{-1}(k), b = τ^{-1}(k+1); other f_i fixed.
    fn generator(&self, k: usize, tau: &Perm) -> Result<Matrix> {
        if !(1 <= k && k < self.n) {
            return Err(Error::InvalidBounds(format!("σ_{k} needs 1 <= k < {}", self.n)));
        }
        let inv = tau.inverse();
        let (sa, sb) = (self.s(inv.apply(k)), self.s(inv.apply(k + 1)));
        let one = LaurentPoly::one(&self.vars);
        let mut m = Matrix::identity(&self.vars, self.n);
        m.set(k - 1, k - 1, &one - &(&sa * &sa));
        m.set(k, k - 1, self.sign.apply(sb));
        m.set(k - 1, k, self.sign.apply(sa));
        m.set(k, k, LaurentPoly::zero(&self.vars));
        Ok(m)
    }
}

pub fn quant(w: &BraidWord, sign: QuantSign, sources: Option<&[Perm]>) -> Result<GradedMap> {
    induced(&Quant::new(w.n(), sign), w, sources)
}

/// Diagonal Φ: τ⊗f_i ↦ (1 − s²_{τ^{-1}(i)}) / Π_{j≥i} s_{τ^{-1}(j)} · τ⊗g_i.
pub fn phi(n: usize) -> GradedMap {
    let vars = quant_vars(n);
    let mut g = GradedMap::new(n, n, &vars);
    let one = LaurentPoly::one(&vars);
    for tau in Perm::all(n) {
        let inv = tau.inverse();
        let s = |i: usize| LaurentPoly::var(&vars, &format!("s{}", inv.apply(i))).expect("in range");
        let mut m = Matrix::zeros(&vars, n, n);
        for i in 1..=n {
            let mut den = one.clone();
            for j in i..=n {
                den = den * s(j);
            }
            let num = &one - &(s(i) * s(i));
            m.set(i - 1, i - 1, num * den.unit_inverse().expect("monomial"));
        }
        g.insert(tau.clone(), tau, m).expect("square block");
    }
    g
}

/// t_i ↦ s_i².
pub fn t_to_s_squared(n: usize) -> Substitution {
    let src = crate::fox::gassner_vars(n);
    let dst = quant_vars(n);
    (1..=n).fold(Substitution::new(&src, &dst), |sub, k| {
        sub.set_str(&format!("t{k}"), &format!("s{k}^2")).expect("known variable")
    })
}

/// Gassner_n(w) ∘ Φ − Φ ∘ Quant_n(w) block by block (t_i = s_i²).
pub fn check_conjugation(w: &BraidWord, sign: QuantSign) -> Result<GradedMap> {
    let n = w.n();
    let g = induced_gassner(w, None)?.substitute(&t_to_s_squared(n))?;
    let q = quant(w, sign, None)?;
    let p = phi(n);
    GradedMap::compose(&g, &p)?.difference(&GradedMap::compose(&p, &q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs() -> (Arc<VarSet>, LaurentPoly, LaurentPoly, LaurentPoly) {
        let v = VarSet::new(["q", "s1", "s2"]).unwrap();
        let q = LaurentPoly::var(&v, "q").unwrap();
        let s1 = LaurentPoly::var(&v, "s1").unwrap();
        let s2 = LaurentPoly::var(&v, "s2").unwrap();
        (v, q, s1, s2)
    }

    #[test]
    fn verma_examples() {
        let vm = VermaTrunc::standard();
        let v = vm.vars().clone();
        let p = |s: &str| LaurentPoly::parse(&v, s).unwrap();
        assert!(vm.action(VermaGen::E, 0).unwrap().iter().all(LaurentPoly::is_zero));
        assert_eq!(vm.action(VermaGen::F(1), 0).unwrap()[1], p("s - s^-1"));
        assert_eq!(vm.action(VermaGen::K, 1).unwrap()[1], p("s*q^-2"));
        assert_eq!(vm.action(VermaGen::E, 2).unwrap()[1], p("1"));
        assert!(matches!(vm.action(VermaGen::F(2), 1), Err(Error::InvalidBounds(_))));
        // F^{(2)} v_0 = [2,0] (s − s^{-1})(s q^{-1} − s^{-1} q) v_2
        assert_eq!(
            vm.action(VermaGen::F(2), 0).unwrap()[2],
            p("(s - s^-1)*(s*q^-1 - s^-1*q)")
        );
    }

    #[test]
    fn k_is_diagonal_and_commutes_correctly() {
        let vm = VermaTrunc::standard();
        let k = vm.matrix(VermaGen::K).unwrap();
        let e = vm.matrix(VermaGen::E).unwrap();
        for (i, j, x) in k.entries() {
            assert!(i == j || x.is_zero());
        }
        // K E = q² E K
        let q2 = LaurentPoly::parse(vm.vars(), "q^2").unwrap();
        assert_eq!(k.mul(&e).unwrap(), e.mul(&k).unwrap().scale(&q2));
    }

    #[test]
    fn tabulated_r_matrix() {
        let (v, _, s1, s2) = qs();
        let r = r_matrix_weight1(&s1, &s2).unwrap();
        let p = |s: &str| LaurentPoly::parse(&v, s).unwrap();
        assert!(r.get(0, 0).is_one());
        assert_eq!(r.get(2, 1), &p("s1"));
        assert_eq!(r.get(1, 1), &p("s2^2 - 1"));
        assert_eq!(r.get(1, 2), &p("s2"));
    }

    #[test]
    fn definition_braiding() {
        let (v, q, s1, s2) = qs();
        let c = braiding_from_definition(&q, &s1, &s2).unwrap();
        let p = |s: &str| LaurentPoly::parse(&v, s).unwrap();
        assert!(c.get(0, 0).is_one());
        assert_eq!(c.get(2, 1), &p("s2^-1"));
        assert_eq!(c.get(1, 1), &p("s1^-1*(s2 - s2^-1)"));
        assert_eq!(c.get(1, 2), &p("s1^-1"));
        // tabulated weight-one lines are s1·s2 times these
        let r = r_matrix_weight1(&s1, &s2).unwrap();
        let s1s2 = &s1 * &s2;
        for col in 1..3 {
            for row in 0..3 {
                assert_eq!(r.get(row, col), &(c.get(row, col) * &s1s2));
            }
        }
    }

    #[test]
    fn yang_baxter() {
        let (v, q, _, _) = qs();
        let s = LaurentPoly::var(&v, "s1").unwrap();
        let c = braiding_from_definition(&q, &s, &s).unwrap();
        assert!(yang_baxter_residual(&c).unwrap().is_zero());
        // the tabulated matrix normalises v_0⊗v_0 differently and is off by 2(s²−1)²
        let r = r_matrix_weight1(&s, &s).unwrap();
        let res = yang_baxter_residual(&r).unwrap();
        let (nz, _) = res.residual_summary();
        assert_eq!(nz, 1);
        let bad = res.entries().find(|(_, _, e)| !e.is_zero()).unwrap().2.clone();
        assert_eq!(bad, LaurentPoly::parse(&v, "2*(s1^2 - 1)^2").unwrap());
        // rescaling v_0⊗v_0 by s² repairs it
        let mut fixed = r.clone();
        fixed.set(0, 0, &s * &s);
        assert!(yang_baxter_residual(&fixed).unwrap().is_zero());
    }

    #[test]
    fn quant_examples() {
        let v = quant_vars(3);
        let p = |s: &str| LaurentPoly::parse(&v, s).unwrap();
        let w = BraidWord::parse(3, "1").unwrap();
        for sign in QuantSign::both() {
            let g = quant(&w, sign, None).unwrap();
            let b = g.block(&Perm::identity(3)).unwrap();
            assert_eq!(b.dst, Perm::transposition(3, 1));
            // f_3 fixed
            assert!(b.matrix.get(2, 2).is_one() && b.matrix.get(0, 2).is_zero());
            let sgn = if sign == QuantSign::Plus { p("1") } else { p("-1") };
            assert_eq!(b.matrix.get(0, 1), &(&sgn * &p("s1")));
            assert_eq!(b.matrix.get(0, 0), &p("1 - s1^2"));
            assert_eq!(b.matrix.get(1, 0), &(&sgn * &p("s2")));
        }
    }

    #[test]
    fn phi_examples() {
        let n = 3;
        let v = quant_vars(n);
        let p = phi(n);
        let b = p.block(&Perm::identity(n)).unwrap();
        assert_eq!(b.matrix.get(2, 2), &LaurentPoly::parse(&v, "(1 - s3^2)*s3^-1").unwrap());
        assert_eq!(
            b.matrix.get(0, 0),
            &LaurentPoly::parse(&v, "(1 - s1^2)*s1^-1*s2^-1*s3^-1").unwrap()
        );
        for (_, blk) in p.blocks() {
            for (i, j, e) in blk.matrix.entries() {
                assert!(i == j || e.is_zero());
            }
        }
    }

    #[test]
    fn conjugation_identity_and_generators() {
        assert!(check_conjugation(&BraidWord::identity(3), QuantSign::Plus).unwrap().is_zero());
        for i in 1..3 {
            let w = BraidWord::parse(3, &i.to_string()).unwrap();
            assert!(check_conjugation(&w, QuantSign::Plus).unwrap().is_zero());
            assert!(!check_conjugation(&w, QuantSign::Minus).unwrap().is_zero());
        }
    }
}
