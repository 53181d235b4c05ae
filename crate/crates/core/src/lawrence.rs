//! Coloured Lawrence representations on code sequences U(k_1, …, k_{n−1}),
//! Σ k_i = m, and the n = 3, m = 2 comparison with BKL.

use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::bkl::bkl_generator_matrix;
use crate::braid::{BraidWord, OverStrand, Perm};
use crate::error::{Error, Result};
use crate::gassner::{burau_vars, reduced_burau_generator};
use crate::graded::{colored_product, colour_of, induced, induced_block, Block, ColoredFamily, GradedMap, InducedFamily};
use crate::matrix::Matrix;
use crate::ring::{t_factorial, LaurentPoly, Substitution, TNumbers, VarSet};

/// A composition (k_1, …, k_{n−1}) of m.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeSequenceIndex {
    pub ks: Vec<u32>,
}

impl CodeSequenceIndex {
    pub fn weight(&self) -> u32 {
        self.ks.iter().sum()
    }
}

impl fmt::Display for CodeSequenceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ks.iter().map(u32::to_string).collect();
        write!(f, "U({})", parts.join(","))
    }
}

/// All compositions of m into n−1 parts, reverse-lexicographic.
pub fn enumerate(n: usize, m: u32) -> Result<Vec<CodeSequenceIndex>> {
    if n < 2 {
        return Err(Error::InvalidBounds(format!("need n >= 2, got {n}")));
    }
    fn go(parts: usize, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<CodeSequenceIndex>) {
        if parts == 1 {
            prefix.push(m);
            out.push(CodeSequenceIndex { ks: prefix.clone() });
            prefix.pop();
            return;
        }
        for a in (0..=m).rev() {
            prefix.push(a);
            go(parts - 1, m - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n - 1, m, &mut Vec::new(), &mut out);
    Ok(out)
}

/// s_1, …, s_n, t.
pub fn colored_vars(n: usize) -> Arc<VarSet> {
    VarSet::indexed("s", n, &["t"]).expect("valid names")
}

/// s, t.
pub fn uncolored_vars() -> Arc<VarSet> {
    VarSet::new(["s", "t"]).expect("valid names")
}

/// σ_i on the code sequences of weight m with colour variable `s`:
/// U(k) ↦ (−1)^{k_i} t^{−k_i(k_i−1)/2} Σ_{l1 ≤ k_{i−1}, l2 ≤ k_{i+1}}
///   s^{k_i+l2} (k_i+l1+l2; k_i, l1, l2)_{t^{-1}} U(…, k_{i−1}−l1, k_i+l1+l2, k_{i+1}−l2, …)
/// where k_{i−1} (resp. k_{i+1}) is absent, hence 0, for i = 1 (resp. i = n−1).
pub fn lawrence_generator_matrix(n: usize, m: u32, i: usize, s: &LaurentPoly, t: &LaurentPoly) -> Result<Matrix> {
    if !(1 <= i && i < n) {
        return Err(Error::InvalidBounds(format!("σ_{i} needs 1 <= i < {n}")));
    }
    let basis = enumerate(n, m)?;
    let index: FxHashMap<&[u32], usize> = basis.iter().enumerate().map(|(p, b)| (b.ks.as_slice(), p)).collect();
    let vars = s.vars();
    let t_inv = t.unit_inverse()?;
    let mut tri = TNumbers::new(&t_inv);
    let mut m_out = Matrix::zeros(vars, basis.len(), basis.len());
    let ii = i - 1;
    for (c, b) in basis.iter().enumerate() {
        let k = &b.ks;
        let ki = k[ii];
        let sign = if ki % 2 == 0 { 1 } else { -1 };
        let twist = -((ki * ki.saturating_sub(1) / 2) as i64);
        let pre = t.pow(twist)?.scale(&sign.into());
        let cap1 = if i >= 2 { k[ii - 1] } else { 0 };
        let cap2 = if i + 1 < n { k[ii + 1] } else { 0 };
        for l1 in 0..=cap1 {
            for l2 in 0..=cap2 {
                let mut nk = k.clone();
                if i >= 2 {
                    nk[ii - 1] -= l1;
                }
                nk[ii] += l1 + l2;
                if i + 1 < n {
                    nk[ii + 1] -= l2;
                }
                let r = *index.get(nk.as_slice()).expect("target stays a composition of m");
                let coeff = &(&pre * &s.pow(i64::from(ki + l2))?) * &tri.trinomial(ki + l1 + l2, ki, l1, l2)?;
                let cur = m_out.get(r, c) + &coeff;
                m_out.set(r, c, cur);
            }
        }
    }
    Ok(m_out)
}

/// Uncoloured L_i(s, t).
pub fn lawrence_uncolored(n: usize, m: u32, i: usize) -> Result<Matrix> {
    let v = uncolored_vars();
    lawrence_generator_matrix(n, m, i, &LaurentPoly::var(&v, "s")?, &LaurentPoly::var(&v, "t")?)
}

/// Uncoloured Lawrence matrix of a word.
pub fn lawrence_matrix(w: &BraidWord, m: u32) -> Result<Matrix> {
    let n = w.n();
    let dim = enumerate(n, m)?.len();
    let mut pos: FxHashMap<usize, Matrix> = FxHashMap::default();
    let mut neg: FxHashMap<usize, Matrix> = FxHashMap::default();
    let mut factors = Vec::with_capacity(w.len());
    for l in w.letters() {
        if !pos.contains_key(&l.index) {
            pos.insert(l.index, lawrence_uncolored(n, m, l.index)?);
        }
        let g = if l.positive {
            pos[&l.index].clone()
        } else {
            if !neg.contains_key(&l.index) {
                neg.insert(l.index, pos[&l.index].inverse()?);
            }
            neg[&l.index].clone()
        };
        factors.push(g);
    }
    Matrix::product(&uncolored_vars(), dim, factors)
}

pub struct CLawrence {
    n: usize,
    m: u32,
    dim: usize,
    vars: Arc<VarSet>,
}

impl CLawrence {
    pub fn new(n: usize, m: u32) -> Result<Self> {
        Ok(Self {
            n,
            m,
            dim: enumerate(n, m)?.len(),
            vars: colored_vars(n),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }
}

impl InducedFamily for CLawrence {
    fn n(&self) -> usize {
        self.n
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }
    fn generator(&self, i: usize, tau: &Perm) -> Result<Matrix> {
        self.colored_generator(i, colour_of(self.convention(), i, tau))
    }
}

impl ColoredFamily for CLawrence {
    fn colored_generator(&self, i: usize, strand: usize) -> Result<Matrix> {
        let s = LaurentPoly::var(&self.vars, &format!("s{strand}"))?;
        let t = LaurentPoly::var(&self.vars, "t")?;
        lawrence_generator_matrix(self.n, self.m, i, &s, &t)
    }
    fn convention(&self) -> OverStrand {
        OverStrand::LeftSlot
    }
}

/// σ_i on source block τ; uncoloured blocks ignore τ apart from the grading.
pub fn lawrence_generator_action(n: usize, m: u32, i: usize, colored: bool, tau: &Perm) -> Result<Block> {
    let w = BraidWord::from_signed(n, &[i as i64])?;
    if colored {
        induced_block(&CLawrence::new(n, m)?, &w, tau)
    } else {
        Ok(Block {
            dst: tau.swap_slots(i),
            matrix: lawrence_uncolored(n, m, i)?,
        })
    }
}

pub fn claw(w: &BraidWord, m: u32) -> Result<Matrix> {
    claw_with(w, m, OverStrand::LeftSlot)
}

pub fn claw_with(w: &BraidWord, m: u32, conv: OverStrand) -> Result<Matrix> {
    colored_product(&CLawrence::new(w.n(), m)?, w, conv)
}

pub fn induced_lawrence(w: &BraidWord, m: u32, sources: Option<&[Perm]>) -> Result<GradedMap> {
    induced(&CLawrence::new(w.n(), m)?, w, sources)
}

/// s_1, …, s_n ↦ s.
pub fn to_uncolored(n: usize) -> Substitution {
    let src = colored_vars(n);
    let dst = uncolored_vars();
    let s = LaurentPoly::var(&dst, "s").expect("s");
    (1..=n).fold(Substitution::new(&src, &dst), |sub, k| {
        sub.set(&format!("s{k}"), s.clone()).expect("known variable")
    })
}

/// Code sequences to forks for n = 3, m = 2, over {s, t}.
pub fn change_of_basis_p() -> Matrix {
    let v = uncolored_vars();
    Matrix::parse_rows(&v, &[&["1+t", "1+t", "0"], &["0", "1+t", "0"], &["0", "1+t", "1+t"]]).expect("literal")
}

/// P·BKL_i(s, t^{-1}) − L_i(s, t)·P for i = 1, 2 (both zero when the
/// change of basis holds).
pub fn p_relation_residuals() -> Result<Vec<Matrix>> {
    let v = uncolored_vars();
    let s = LaurentPoly::var(&v, "s")?;
    let t = LaurentPoly::var(&v, "t")?;
    let p = change_of_basis_p();
    (1..=2)
        .map(|i| {
            let b = bkl_generator_matrix(3, i, &s, &t.unit_inverse()?)?;
            p.mul(&b)?.sub(&lawrence_uncolored(3, 2, i)?.mul(&p)?)
        })
        .collect()
}

/// Π_i (k_i)_t!: the weight relating multiforks F(k) to code sequences U(k).
pub fn multifork_weights(n: usize, m: u32) -> Result<Vec<LaurentPoly>> {
    let v = uncolored_vars();
    let t = LaurentPoly::var(&v, "t")?;
    Ok(enumerate(n, m)?
        .iter()
        .map(|b| b.ks.iter().fold(LaurentPoly::one(&v), |acc, &k| &acc * &t_factorial(k, &t)))
        .collect())
}

/// F_{1,3} = F(2,0) + (1+t) F(1,1) + F(0,2), expressed on code sequences.
pub fn fork_f13_on_code_sequences() -> Result<Vec<LaurentPoly>> {
    let v = uncolored_vars();
    let multifork = [LaurentPoly::parse(&v, "1")?, LaurentPoly::parse(&v, "1+t")?, LaurentPoly::parse(&v, "1")?];
    Ok(multifork_weights(3, 2)?.iter().zip(&multifork).map(|(w, c)| w * c).collect())
}

/// Level one against reduced Burau: D = diag(t, t², …, t^{n−1}).
pub fn level_one_dictionary(n: usize) -> Matrix {
    let v = burau_vars();
    let mut d = Matrix::zeros(&v, n - 1, n - 1);
    for j in 0..n - 1 {
        d.set(j, j, LaurentPoly::var_pow(&v, "t", j as i32 + 1).expect("t"));
    }
    d
}

/// D·L_i(s = t) − R_i·D for each generator, R_i the reduced Burau matrix.
pub fn level_one_residuals(n: usize) -> Result<Vec<Matrix>> {
    let bv = burau_vars();
    let sub = Substitution::parse_assignments(&uncolored_vars(), &bv, "s=t")?;
    let d = level_one_dictionary(n);
    (1..n)
        .map(|i| {
            let l = lawrence_uncolored(n, 1, i)?.substitute(&sub)?;
            d.mul(&l)?.sub(&reduced_burau_generator(n, i)?.mul(&d)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::colored_relation_failures;

    fn u(n: usize, m: u32, i: usize) -> Matrix {
        lawrence_uncolored(n, m, i).unwrap()
    }

    #[test]
    fn enumeration() {
        let e: Vec<Vec<u32>> = enumerate(3, 2).unwrap().into_iter().map(|c| c.ks).collect();
        assert_eq!(e, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(enumerate(4, 3).unwrap().len(), 10);
        assert_eq!(enumerate(2, 5).unwrap(), vec![CodeSequenceIndex { ks: vec![5] }]);
        assert!(enumerate(4, 3).unwrap().iter().all(|c| c.weight() == 3));
        assert!(enumerate(1, 1).is_err());
    }

    #[test]
    fn displayed_generators() {
        let v = uncolored_vars();
        let l1 = Matrix::parse_rows(
            &v,
            &[&["s^2*t^-1", "-s^2*(1+t^-1)", "s^2"], &["0", "-s", "s"], &["0", "0", "1"]],
        )
        .unwrap();
        let l2 = Matrix::parse_rows(
            &v,
            &[&["1", "0", "0"], &["1", "-s", "0"], &["1", "-s*(1+t^-1)", "s^2*t^-1"]],
        )
        .unwrap();
        assert_eq!(u(3, 2, 1), l1);
        assert_eq!(u(3, 2, 2), l2);
    }

    /// The four-strand σ_2 formula written out with factorial-ratio
    /// trinomials, independently of the recursive ones.
    #[test]
    fn four_strand_middle_generator() {
        let v = uncolored_vars();
        let s = LaurentPoly::var(&v, "s").unwrap();
        let t = LaurentPoly::var(&v, "t").unwrap();
        let ti = t.unit_inverse().unwrap();
        let fact = |k: u32| t_factorial(k, &ti);
        for m in 0..=3 {
            let basis = enumerate(4, m).unwrap();
            let got = u(4, m, 2);
            let mut want = Matrix::zeros(&v, basis.len(), basis.len());
            for (c, b) in basis.iter().enumerate() {
                let (k1, k2, k3) = (b.ks[0], b.ks[1], b.ks[2]);
                for l1 in 0..=k1 {
                    for l2 in 0..=k3 {
                        let tri = fact(k2 + l1 + l2).div_exact(&(&(&fact(k2) * &fact(l1)) * &fact(l2))).unwrap();
                        let mut coeff = &t.pow(-i64::from(k2 * k2.saturating_sub(1) / 2)).unwrap()
                            * &s.pow(i64::from(k2 + l2)).unwrap();
                        coeff = &coeff * &tri;
                        if k2 % 2 == 1 {
                            coeff = -coeff;
                        }
                        let target = [k1 - l1, k2 + l1 + l2, k3 - l2];
                        let r = basis.iter().position(|x| x.ks == target).unwrap();
                        let cur = want.get(r, c) + &coeff;
                        want.set(r, c, cur);
                    }
                }
            }
            assert_eq!(got, want, "m = {m}");
        }
    }

    #[test]
    fn p_relation_and_fork_column() {
        for r in p_relation_residuals().unwrap() {
            assert!(r.is_zero(), "{r}");
        }
        let p = change_of_basis_p();
        let col: Vec<_> = (0..3).map(|r| p.get(r, 1).clone()).collect();
        assert_eq!(fork_f13_on_code_sequences().unwrap(), col);
    }

    #[test]
    fn level_one_is_reduced_burau() {
        for n in 2..=6 {
            for r in level_one_residuals(n).unwrap() {
                assert!(r.is_zero(), "n = {n}: {r}");
            }
        }
    }

    #[test]
    fn colored_relations() {
        let fam = CLawrence::new(3, 2).unwrap();
        assert!(colored_relation_failures(&fam, OverStrand::LeftSlot).unwrap().is_empty());
        assert!(!colored_relation_failures(&fam, OverStrand::RightSlot).unwrap().is_empty());
        let w = BraidWord::parse(3, "1 1 -2 1").unwrap();
        assert_eq!(claw(&w, 2).unwrap().substitute(&to_uncolored(3)).unwrap(), lawrence_matrix(&w, 2).unwrap());
        assert!(claw(&BraidWord::parse(3, "1 -1").unwrap(), 2).unwrap().is_identity());
    }
}
