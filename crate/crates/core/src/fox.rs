//! Free group ring, Fox derivatives and the Magnus (Gassner) matrices.
//!
//! The Artin action sends σ_i: x_i ↦ x_i x_{i+1} x_i^{-1}, x_{i+1} ↦ x_i.
//! A word acts letter by letter from the left, as substitutions:
//! φ_{uv} = φ_v ∘ φ_u.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use dashu_int::IBig;

use crate::braid::{is_pure, BraidWord};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{LaurentPoly, VarSet};

/// Freely reduced word in x_1..x_n; letters are (generator, ±1).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<(u32, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(j: u32) -> Self {
        Self {
            letters: vec![(j, 1)],
        }
    }

    /// From signed indices, reducing as it goes: `[1, 2, -1]` is x₁x₂x₁^{-1}.
    pub fn from_signed(xs: &[i32]) -> Self {
        let mut w = Self::identity();
        for &x in xs {
            assert!(x != 0, "generator index 0");
            w.push((x.unsigned_abs(), x.signum() as i8));
        }
        w
    }

    fn push(&mut self, l: (u32, i8)) {
        if self.letters.last() == Some(&(l.0, -l.1)) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[(u32, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut w = self.clone();
        for &l in &o.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&(j, e)| (j, -e)).collect(),
        }
    }

    /// Replace every generator by its image (images indexed from x_1).
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut w = Self::identity();
        for &(j, e) in &self.letters {
            let img = &images[j as usize - 1];
            if e > 0 {
                for &l in &img.letters {
                    w.push(l);
                }
            } else {
                for &(k, f) in img.letters.iter().rev() {
                    w.push((k, -f));
                }
            }
        }
        w
    }

    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.0).max().unwrap_or(0)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(j, e)| if e > 0 { format!("x{j}") } else { format!("x{j}^-1") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of ℤF_n.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, IBig>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        Self::from_terms([(w, IBig::ONE)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (FreeWord, IBig)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    fn add_term(&mut self, w: FreeWord, c: IBig) {
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &IBig)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// ∂w/∂x_j, extended linearly: each x_j contributes its prefix, each
/// x_j^{-1} contributes minus its prefix including itself.
pub fn fox_derivative(e: &GroupRingElement, j: u32) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for (w, c) in &e.terms {
        let mut prefix = FreeWord::identity();
        for &(g, s) in &w.letters {
            if g == j {
                if s > 0 {
                    out.add_term(prefix.clone(), c.clone());
                    prefix.push((g, s));
                } else {
                    prefix.push((g, s));
                    out.add_term(prefix.clone(), -c);
                }
            } else {
                prefix.push((g, s));
            }
        }
    }
    out
}

fn letter_images(n: usize, i: usize, positive: bool) -> Vec<FreeWord> {
    let mut imgs: Vec<FreeWord> = (1..=n as u32).map(FreeWord::generator).collect();
    let (a, b) = (i as i32, i as i32 + 1);
    if positive {
        imgs[i - 1] = FreeWord::from_signed(&[a, b, -a]);
        imgs[i] = FreeWord::from_signed(&[a]);
    } else {
        imgs[i - 1] = FreeWord::from_signed(&[b]);
        imgs[i] = FreeWord::from_signed(&[-b, a, b]);
    }
    imgs
}

/// Images φ_w(x_1), …, φ_w(x_n).
pub fn artin_images(w: &BraidWord) -> Vec<FreeWord> {
    let n = w.n();
    let mut imgs: Vec<FreeWord> = (1..=n as u32).map(FreeWord::generator).collect();
    for l in w.letters() {
        let step = letter_images(n, l.index, l.positive);
        imgs = imgs.iter().map(|x| x.substitute(&step)).collect();
    }
    imgs
}

pub fn artin_action(w: &BraidWord, x: &FreeWord) -> FreeWord {
    x.substitute(&artin_images(w))
}

/// Monomial of the exponent sums, `x_i ↦ t_i` with `target` = (t_1, …).
pub fn abelianize(e: &GroupRingElement, target: &Arc<VarSet>) -> Result<LaurentPoly> {
    let terms = e.terms.iter().map(|(w, c)| {
        let mut exps = crate::ring::Exponents::from_elem(0, target.len());
        for &(g, s) in &w.letters {
            exps[g as usize - 1] += s as i32;
        }
        (exps, c.clone())
    });
    for (w, _) in &e.terms {
        if w.max_generator() as usize > target.len() {
            return Err(Error::DimensionMismatch("word uses more generators than variables".into()));
        }
    }
    LaurentPoly::from_terms(target, terms)
}

/// `𝔞(∂w/∂x_j)` without materialising the group ring element; `weights[g-1]`
/// is the exponent vector of 𝔞(x_g).
pub fn fox_abelian(w: &FreeWord, j: u32, weights: &[Vec<i32>], vars: &Arc<VarSet>) -> LaurentPoly {
    let k = vars.len();
    let mut cur = vec![0i32; k];
    let mut terms = Vec::new();
    for &(g, s) in &w.letters {
        let wt = &weights[g as usize - 1];
        if s > 0 {
            if g == j {
                terms.push((cur.iter().copied().collect(), IBig::ONE));
            }
            cur.iter_mut().zip(wt).for_each(|(a, b)| *a += b);
        } else {
            cur.iter_mut().zip(wt).for_each(|(a, b)| *a -= b);
            if g == j {
                terms.push((cur.iter().copied().collect(), IBig::NEG_ONE));
            }
        }
    }
    LaurentPoly::from_terms(vars, terms).expect("lengths agree")
}

pub fn gassner_vars(n: usize) -> Arc<VarSet> {
    VarSet::indexed("t", n, &[]).expect("valid names")
}

/// Entry (i, j) = 𝔞(∂φ_w(x_i)/∂x_j) over ℤ[t_1^{±1}, …, t_n^{±1}].
pub fn magnus_matrix(w: &BraidWord) -> Matrix {
    let n = w.n();
    let vars = gassner_vars(n);
    let weights: Vec<Vec<i32>> = (0..n)
        .map(|g| (0..n).map(|k| i32::from(k == g)).collect())
        .collect();
    let imgs = artin_images(w);
    let mut m = Matrix::zeros(&vars, n, n);
    for (i, img) in imgs.iter().enumerate() {
        for j in 0..n {
            m.set(i, j, fox_abelian(img, j as u32 + 1, &weights, &vars));
        }
    }
    m
}

/// Rewrites a word in x's into g_i = x_1⋯x_i, using x_i = g_{i−1}^{-1} g_i.
fn to_g_basis(w: &FreeWord) -> FreeWord {
    let mut out = FreeWord::identity();
    for &(j, s) in &w.letters {
        let img = if j > 1 {
            FreeWord::from_signed(&[-(j as i32 - 1), j as i32])
        } else {
            FreeWord::generator(1)
        };
        let img = if s > 0 { img } else { img.inverse() };
        out = out.mul(&img);
    }
    out
}

/// Magnus matrix in the basis g_i = x_1⋯x_i, with 𝔞(g_j) = t_1⋯t_j.
pub fn g_basis_magnus_matrix(w: &BraidWord) -> Matrix {
    let n = w.n();
    let vars = gassner_vars(n);
    let weights: Vec<Vec<i32>> = (0..n)
        .map(|g| (0..n).map(|k| i32::from(k <= g)).collect())
        .collect();
    let imgs = artin_images(w);
    let mut m = Matrix::zeros(&vars, n, n);
    let mut prod = FreeWord::identity();
    for (i, img) in imgs.iter().enumerate() {
        prod = prod.mul(img);
        let gi = to_g_basis(&prod);
        for j in 0..n {
            m.set(i, j, fox_abelian(&gi, j as u32 + 1, &weights, &vars));
        }
    }
    m
}

/// The (n−1)×(n−1) Gassner matrix: g-basis Magnus matrix with its trivial
/// last row removed together with the last column.
pub fn reduced_magnus_matrix(w: &BraidWord) -> Result<Matrix> {
    if !is_pure(w) {
        return Err(Error::NotPure);
    }
    let n = w.n();
    let m = g_basis_magnus_matrix(w);
    for j in 0..n {
        let e = m.get(n - 1, j);
        let ok = if j == n - 1 { e.is_one() } else { e.is_zero() };
        if !ok {
            return Err(Error::NotReducible(format!("last row entry {j} is {e}")));
        }
    }
    let keep: Vec<usize> = (0..n - 1).collect();
    Ok(m.submatrix(&keep, &keep))
}

/// `D = diag(1, t_1, t_1 t_2, …)`, with Γ(w) = D · magnus_matrix(w) · D^{-1}
/// (checked on pure braids).
pub fn gamma_dictionary(n: usize) -> (Matrix, Matrix) {
    let vars = gassner_vars(n);
    let mut d = Matrix::identity(&vars, n);
    let mut di = Matrix::identity(&vars, n);
    for i in 0..n {
        let exps = (0..n).map(|k| i32::from(k < i)).collect();
        let mono = LaurentPoly::monomial(&vars, exps, 1);
        di.set(i, i, mono.unit_inverse().expect("monomial"));
        d.set(i, i, mono);
    }
    (d, di)
}

pub fn magnus_in_gamma_basis(w: &BraidWord) -> Result<Matrix> {
    let (d, di) = gamma_dictionary(w.n());
    d.mul(&magnus_matrix(w))?.mul(&di)
}
