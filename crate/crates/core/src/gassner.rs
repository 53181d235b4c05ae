//! Burau blocks, the over-strand coloured Γ and the induced Gassner
//! representation on ℛ[S_n] ⊗ ℛ^n.

use std::sync::Arc;

use crate::braid::{BraidWord, OverStrand, Perm};
use crate::error::{Error, Result};
use crate::fox::gassner_vars;
use crate::graded::{colored_product, colour_of, induced, ColoredFamily, GradedMap, InducedFamily};
use crate::matrix::Matrix;
use crate::ring::{LaurentPoly, Substitution, VarSet};

/// Identity with `[[1−x, 1], [x, 0]]` in rows/columns i, i+1.
pub fn burau_block(n: usize, i: usize, x: &LaurentPoly) -> Result<Matrix> {
    if !(1 <= i && i < n) {
        return Err(Error::InvalidBounds(format!("σ_{i} needs 1 <= i < {n}")));
    }
    let vars = x.vars();
    let mut m = Matrix::identity(vars, n);
    let one = LaurentPoly::one(vars);
    m.set(i - 1, i - 1, &one - x);
    m.set(i - 1, i, one);
    m.set(i, i - 1, x.clone());
    m.set(i, i, LaurentPoly::zero(vars));
    Ok(m)
}

pub fn burau_vars() -> Arc<VarSet> {
    VarSet::new(["t"]).expect("valid name")
}

/// Uncoloured Burau matrix of a word over ℤ[t^{±1}].
pub fn burau_matrix(w: &BraidWord) -> Result<Matrix> {
    let vars = burau_vars();
    let t = LaurentPoly::var(&vars, "t")?;
    let n = w.n();
    let mut acc = Matrix::identity(&vars, n);
    for l in w.letters() {
        let b = burau_block(n, l.index, &t)?;
        acc = acc.mul(&if l.positive { b } else { b.inverse()? })?;
    }
    Ok(acc)
}

/// Burau on the invariant subspace spanned by e_j − e_{j+1}.
pub fn reduced_burau_generator(n: usize, i: usize) -> Result<Matrix> {
    let vars = burau_vars();
    let t = LaurentPoly::var(&vars, "t")?;
    let full = burau_block(n, i, &t)?;
    // columns of the full image of b_j = e_j − e_{j+1}, re-expanded in the b's:
    // a vector v with coordinates summing to 0 equals Σ_j (v_1+…+v_j) b_j.
    let mut m = Matrix::zeros(&vars, n - 1, n - 1);
    for j in 0..n - 1 {
        let col: Vec<LaurentPoly> = (0..n).map(|r| full.get(r, j) - full.get(r, j + 1)).collect();
        let mut partial = LaurentPoly::zero(&vars);
        for (r, c) in col.iter().take(n - 1).enumerate() {
            partial += c;
            m.set(r, j, partial.clone());
        }
        let total = &partial + &col[n - 1];
        if !total.is_zero() {
            return Err(Error::DimensionMismatch("image left the reduced subspace".into()));
        }
    }
    Ok(m)
}

pub fn reduced_burau_matrix(w: &BraidWord) -> Result<Matrix> {
    let n = w.n();
    let mut acc = Matrix::identity(&burau_vars(), n - 1);
    for l in w.letters() {
        let b = reduced_burau_generator(n, l.index)?;
        acc = acc.mul(&if l.positive { b } else { b.inverse()? })?;
    }
    Ok(acc)
}

/// Gassner family: σ_i on block τ is U_{n,i}(t_{τ^{-1}(i+1)}).
pub struct Gassner {
    n: usize,
    vars: Arc<VarSet>,
}

impl Gassner {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            vars: gassner_vars(n),
        }
    }
}

impl InducedFamily for Gassner {
    fn n(&self) -> usize {
        self.n
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }
    fn generator(&self, i: usize, tau: &Perm) -> Result<Matrix> {
        self.colored_generator(i, colour_of(self.convention(), i, tau))
    }
}

impl ColoredFamily for Gassner {
    fn colored_generator(&self, i: usize, strand: usize) -> Result<Matrix> {
        let t = LaurentPoly::var(&self.vars, &format!("t{strand}"))?;
        burau_block(self.n, i, &t)
    }
    fn convention(&self) -> OverStrand {
        OverStrand::RightSlot
    }
}

/// Γ(w) = Π U_{n,i_α}(t_{j_α})^{ε_α} with the pinned over-strand convention.
pub fn gamma(w: &BraidWord) -> Result<Matrix> {
    gamma_with(w, OverStrand::RightSlot)
}

pub fn gamma_with(w: &BraidWord, conv: OverStrand) -> Result<Matrix> {
    colored_product(&Gassner::new(w.n()), w, conv)
}

pub fn induced_gassner(w: &BraidWord, sources: Option<&[Perm]>) -> Result<GradedMap> {
    induced(&Gassner::new(w.n()), w, sources)
}

/// t_1, …, t_n ↦ t.
pub fn to_burau(n: usize) -> Substitution {
    let src = gassner_vars(n);
    let dst = burau_vars();
    let t = LaurentPoly::var(&dst, "t").expect("t");
    (1..=n).fold(Substitution::new(&src, &dst), |s, k| {
        s.set(&format!("t{k}"), t.clone()).expect("known variable")
    })
}

/// Set t_n = 1 and delete the last row and column.
pub fn forget_last_variable(m: &Matrix) -> Result<Matrix> {
    let n = m.rows();
    let src = m.vars().clone();
    let dst = gassner_vars(n - 1);
    let sub = Substitution::new(&src, &dst).set(&format!("t{n}"), LaurentPoly::one(&dst))?;
    let keep: Vec<usize> = (0..n - 1).collect();
    m.submatrix(&keep, &keep).substitute(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::pure_generator;

    #[test]
    fn displayed_block() {
        let v = burau_vars();
        let t = LaurentPoly::var(&v, "t").unwrap();
        let b = burau_block(2, 1, &t).unwrap();
        assert_eq!(b, Matrix::parse_rows(&v, &[&["1-t", "1"], &["t", "0"]]).unwrap());
        assert_eq!(b.determinant().unwrap(), LaurentPoly::parse(&v, "-t").unwrap());
        let b3 = burau_block(3, 2, &t).unwrap();
        assert_eq!(
            b3,
            Matrix::parse_rows(&v, &[&["1", "0", "0"], &["0", "1-t", "1"], &["0", "t", "0"]]).unwrap()
        );
        assert!(burau_block(3, 3, &t).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert!(gamma(&BraidWord::parse(3, "1 -1").unwrap()).unwrap().is_identity());
        let g = gamma(&pure_generator(2, 1, 2).unwrap()).unwrap();
        let v = gassner_vars(2);
        // U(t_1) · U(t_2): the right-hand crossing is read first, strand 2 over
        let expected = Matrix::parse_rows(&v, &[&["1-t1", "1"], &["t1", "0"]])
            .unwrap()
            .mul(&Matrix::parse_rows(&v, &[&["1-t2", "1"], &["t2", "0"]]).unwrap())
            .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn induced_examples() {
        let w = BraidWord::parse(2, "1").unwrap();
        let g = induced_gassner(&w, None).unwrap();
        let blk = g.block(&Perm::identity(2)).unwrap();
        assert_eq!(blk.dst, Perm::transposition(2, 1));
        assert_eq!(blk.matrix.get(1, 0), &LaurentPoly::var(&gassner_vars(2), "t2").unwrap());
        let id = induced_gassner(&BraidWord::identity(3), None).unwrap();
        assert_eq!(id, GradedMap::identity(3, 3, &gassner_vars(3)));
    }

    #[test]
    fn reduced_burau_shape() {
        let r = reduced_burau_generator(3, 1).unwrap();
        let v = burau_vars();
        assert_eq!(r, Matrix::parse_rows(&v, &[&["-t", "1"], &["0", "1"]]).unwrap());
    }
}
