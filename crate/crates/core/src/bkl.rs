//! Coloured BKL representation: the chain-level boundary of the Cayley
//! complex, its rank-one kernels v_{j,k}, the generator action on the
//! v_{j,k} and the coloured/induced assemblies.

use std::fmt;
use std::sync::Arc;

use crate::braid::{BraidWord, OverStrand, Perm};
use crate::error::{Error, Result};
use crate::fox::{fox_abelian, FreeWord};
use crate::graded::{colored_product, colour_of, induced, induced_block, Block, ColoredFamily, GradedMap, InducedFamily};
use crate::matrix::Matrix;
use crate::ring::{LaurentPoly, Substitution, VarSet};

/// q_1, …, q_n, t.
pub fn bkl_vars(n: usize) -> Arc<VarSet> {
    VarSet::indexed("q", n, &["t"]).expect("valid names")
}

/// q, t.
pub fn uncolored_vars() -> Arc<VarSet> {
    VarSet::new(["q", "t"]).expect("valid names")
}

/// Basis label v_{j,k}, 1 ≤ j < k ≤ n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForkBasisIndex {
    pub j: usize,
    pub k: usize,
}

impl fmt::Display for ForkBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{},{}", self.j, self.k)
    }
}

/// Lexicographic on (j, k).
pub fn fork_basis(n: usize) -> Vec<ForkBasisIndex> {
    (1..=n)
        .flat_map(|j| (j + 1..=n).map(move |k| ForkBasisIndex { j, k }))
        .collect()
}

/// Position of v_{j,k} in `fork_basis(n)`.
pub fn fork_position(n: usize, j: usize, k: usize) -> Option<usize> {
    if !(1 <= j && j < k && k <= n) {
        return None;
    }
    // rows before j contribute (n−1) + … + (n−j+1)
    Some((j - 1) * (2 * n - j) / 2 + (k - j - 1))
}

/// ∂: C₂ → C₁, rows x_1..x_n, y; columns r_{j,k} (j ≤ k) in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryData {
    pub n: usize,
    pub columns: Vec<(usize, usize)>,
    pub matrix: Matrix,
}

impl BoundaryData {
    pub fn column_of(&self, j: usize, k: usize) -> Option<usize> {
        self.columns.iter().position(|&c| c == (j, k))
    }

    /// ∂ applied to a coefficient vector over the r_{j,k}.
    pub fn apply(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        if v.len() != self.columns.len() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients, got {}",
                self.columns.len(),
                v.len()
            )));
        }
        let col = Matrix::from_rows(self.matrix.vars(), v.iter().map(|x| vec![x.clone()]).collect())?;
        let out = self.matrix.mul(&col)?;
        Ok((0..out.rows()).map(|r| out.get(r, 0).clone()).collect())
    }
}

fn relator_columns(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|j| (j..=n).map(move |k| (j, k))).collect()
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidBounds(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

/// The closed-form boundary columns.
pub fn boundary_matrix(n: usize) -> Result<BoundaryData> {
    check_n(n)?;
    let vars = bkl_vars(n);
    let p = |s: &str| LaurentPoly::parse(&vars, s).expect("well-formed");
    let columns = relator_columns(n);
    let mut m = Matrix::zeros(&vars, n + 1, columns.len());
    for (c, &(j, k)) in columns.iter().enumerate() {
        if j == k {
            let f = p(&format!("q{j}*t + 1"));
            m.set(j - 1, c, &f * &p("1 - t"));
            m.set(n, c, &f * &p(&format!("q{j} - 1")));
        } else {
            m.set(j - 1, c, p(&format!("1 - q{k}")));
            m.set(k - 1, c, p(&format!("t*(q{j} - 1)")));
            m.set(n, c, p(&format!("(1 - q{k})*(q{j} - 1)")));
        }
    }
    Ok(BoundaryData { n, columns, matrix: m })
}

/// Independent route: abelianised Fox derivatives of the relators
/// r_{j,j} = [x_j, y x_j y] and r_{j,k} = [x_j, y x_k y^{-1}], with
/// [a, b] = a b a^{-1} b^{-1}, x_j ↦ q_j and y ↦ t.
pub fn boundary_from_relators(n: usize) -> Result<BoundaryData> {
    check_n(n)?;
    let vars = bkl_vars(n);
    let y = n as u32 + 1;
    let weights: Vec<Vec<i32>> = (0..=n)
        .map(|g| (0..=n).map(|v| i32::from(v == g)).collect())
        .collect();
    let x = |j: usize| FreeWord::generator(j as u32);
    let yy = FreeWord::generator(y);
    let comm = |a: &FreeWord, b: &FreeWord| a.mul(b).mul(&a.inverse()).mul(&b.inverse());
    let columns = relator_columns(n);
    let mut m = Matrix::zeros(&vars, n + 1, columns.len());
    for (c, &(j, k)) in columns.iter().enumerate() {
        let b = if j == k {
            yy.mul(&x(j)).mul(&yy)
        } else {
            yy.mul(&x(k)).mul(&yy.inverse())
        };
        let r = comm(&x(j), &b);
        for g in 1..=y {
            m.set(g as usize - 1, c, fox_abelian(&r, g, &weights, &vars));
        }
    }
    Ok(BoundaryData { n, columns, matrix: m })
}

/// Coefficients of v_{j,k} on (f_{j,j}, f_{j,k}, f_{k,k}).
pub fn kernel_vector(n: usize, j: usize, k: usize) -> Result<[LaurentPoly; 3]> {
    if !(1 <= j && j < k && k <= n) {
        return Err(Error::InvalidBounds(format!("need 1 <= j < k <= {n}, got ({j}, {k})")));
    }
    let vars = bkl_vars(n);
    let p = |s: String| LaurentPoly::parse(&vars, &s).expect("well-formed");
    Ok([
        p(format!("-(1 - q{k})*(q{k}*t + 1)")),
        p(format!("(1 - t)*(q{k}*t + 1)*(q{j}*t + 1)")),
        p(format!("-t*(q{j} - 1)*(q{j}*t + 1)")),
    ])
}

/// v_{j,k} as a full vector over the boundary's columns.
pub fn kernel_column(bd: &BoundaryData, j: usize, k: usize) -> Result<Vec<LaurentPoly>> {
    let [a, b, c] = kernel_vector(bd.n, j, k)?;
    let mut v = vec![LaurentPoly::zero(bd.matrix.vars()); bd.columns.len()];
    let idx = |x, y| bd.column_of(x, y).expect("column exists");
    v[idx(j, j)] = a;
    v[idx(j, k)] = b;
    v[idx(k, k)] = c;
    Ok(v)
}

/// Matrix of σ_i on the v_{j,k} with colour variable `q` (columns are images).
pub fn bkl_generator_matrix(n: usize, i: usize, q: &LaurentPoly, t: &LaurentPoly) -> Result<Matrix> {
    check_n(n)?;
    if !(1 <= i && i < n) {
        return Err(Error::InvalidBounds(format!("σ_{i} needs 1 <= i < {n}")));
    }
    let vars = q.vars();
    let one = LaurentPoly::one(vars);
    let q2 = q * q;
    let basis = fork_basis(n);
    let mut m = Matrix::zeros(vars, basis.len(), basis.len());
    let add = |m: &mut Matrix, (a, b): (usize, usize), c: usize, v: LaurentPoly| {
        let r = fork_position(n, a, b).expect("target in range");
        let cur = m.get(r, c) + &v;
        m.set(r, c, cur);
    };
    for (c, &ForkBasisIndex { j, k }) in basis.iter().enumerate() {
        if i == j && j + 1 == k {
            add(&mut m, (j, k), c, t * &q2);
        } else if i + 1 == j {
            add(&mut m, (i, k), c, q.clone());
            add(&mut m, (i, j), c, &q2 - q);
            add(&mut m, (j, k), c, &one - q);
        } else if i == j {
            add(&mut m, (j + 1, k), c, one.clone());
        } else if i + 1 == k {
            add(&mut m, (j, i), c, q.clone());
            add(&mut m, (j, k), c, &one - q);
            add(&mut m, (i, k), c, &(&q2 - q) * t);
        } else if i == k {
            add(&mut m, (j, k + 1), c, one.clone());
        } else {
            add(&mut m, (j, k), c, one.clone());
        }
    }
    Ok(m)
}

/// Uncoloured BKL_i(q, t).
pub fn bkl_uncolored(n: usize, i: usize) -> Result<Matrix> {
    let v = uncolored_vars();
    bkl_generator_matrix(n, i, &LaurentPoly::var(&v, "q")?, &LaurentPoly::var(&v, "t")?)
}

/// Uncoloured BKL matrix of a word.
pub fn bkl_matrix(w: &BraidWord) -> Result<Matrix> {
    let n = w.n();
    let dim = fork_basis(n).len();
    let mut pos: Vec<Option<Matrix>> = vec![None; n];
    let mut neg: Vec<Option<Matrix>> = vec![None; n];
    let mut factors = Vec::with_capacity(w.len());
    for l in w.letters() {
        if pos[l.index].is_none() {
            pos[l.index] = Some(bkl_uncolored(n, l.index)?);
        }
        let g = if l.positive {
            pos[l.index].clone().expect("filled")
        } else {
            if neg[l.index].is_none() {
                neg[l.index] = Some(pos[l.index].as_ref().expect("filled").inverse()?);
            }
            neg[l.index].clone().expect("filled")
        };
        factors.push(g);
    }
    Matrix::product(&uncolored_vars(), dim, factors)
}

pub struct CBkl {
    n: usize,
    vars: Arc<VarSet>,
    dim: usize,
}

impl CBkl {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            vars: bkl_vars(n),
            dim: fork_basis(n).len(),
        }
    }
}

impl InducedFamily for CBkl {
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

impl ColoredFamily for CBkl {
    fn colored_generator(&self, i: usize, strand: usize) -> Result<Matrix> {
        let q = LaurentPoly::var(&self.vars, &format!("q{strand}"))?;
        let t = LaurentPoly::var(&self.vars, "t")?;
        bkl_generator_matrix(self.n, i, &q, &t)
    }
    fn convention(&self) -> OverStrand {
        OverStrand::LeftSlot
    }
}

/// σ_i on the source block τ, landing in (i,i+1)∘τ.
pub fn bkl_generator_action(n: usize, i: usize, tau: &Perm) -> Result<Block> {
    let w = BraidWord::from_signed(n, &[i as i64])?;
    induced_block(&CBkl::new(n), &w, tau)
}

pub fn cbkl(w: &BraidWord) -> Result<Matrix> {
    cbkl_with(w, OverStrand::LeftSlot)
}

pub fn cbkl_with(w: &BraidWord, conv: OverStrand) -> Result<Matrix> {
    colored_product(&CBkl::new(w.n()), w, conv)
}

pub fn induced_bkl(w: &BraidWord, sources: Option<&[Perm]>) -> Result<GradedMap> {
    induced(&CBkl::new(w.n()), w, sources)
}

/// q_1, …, q_n ↦ q.
pub fn to_uncolored(n: usize) -> Substitution {
    let src = bkl_vars(n);
    let dst = uncolored_vars();
    let q = LaurentPoly::var(&dst, "q").expect("q");
    (1..=n).fold(Substitution::new(&src, &dst), |s, k| {
        s.set(&format!("q{k}"), q.clone()).expect("known variable")
    })
}

/// Noodle–fork intersection data for the four-puncture identification of
/// σ_1(F_{2,4}) in the block τ = (1 2). Pairings are recorded values, not
/// computed geometrically.
pub mod pairing {
    use super::*;

    /// ⟨N_i, F_{j,k}⟩ with q the colour of puncture i.
    pub fn noodle_fork(i: usize, j: usize, k: usize, q: &LaurentPoly, t: &LaurentPoly) -> Result<LaurentPoly> {
        let vars = q.vars();
        let one = LaurentPoly::one(vars);
        let qti = &q.unit_inverse()? * &t.unit_inverse()?;
        Ok(if i == j {
            -q
        } else if i == k {
            qti
        } else if j < i && i < k {
            &(&(&qti - &t.unit_inverse()?) + &one) + q
        } else {
            LaurentPoly::zero(vars)
        })
    }

    /// Rows N_1, N_3, N_{2,3}; columns F^τ_{1,2}, F^τ_{1,4}, F^τ_{2,4}; and
    /// the pairings of σ_1(F_{2,4}) with the same noodles.
    pub fn identification_system() -> Result<(Matrix, Vec<LaurentPoly>)> {
        let vars = bkl_vars(4);
        let p = |s: &str| LaurentPoly::parse(&vars, s).expect("well-formed");
        let t = p("t");
        // target block: puncture 1 carries colour 2, puncture 2 colour 1
        let colour = |i: usize| p(&format!("q{}", [2, 1, 3, 4][i - 1]));
        let forks = [(1, 2), (1, 4), (2, 4)];
        let mut m = Matrix::zeros(&vars, 3, 3);
        for (r, i) in [1usize, 3].into_iter().enumerate() {
            for (c, &(j, k)) in forks.iter().enumerate() {
                m.set(r, c, noodle_fork(i, j, k, &colour(i), &t)?);
            }
        }
        m.set(2, 0, p("q1^-1*q3^-1*t^-1"));
        m.set(2, 1, p("q1^-1*q3^-1*t^-1 - t^-1 + 1 - q1*q3"));
        m.set(2, 2, p("-q1*q3"));
        let rhs = vec![
            p("-q2*q1^2"),
            noodle_fork(3, 1, 4, &p("q3"), &t)?,
            p("q1*q3^-1*t^-1 - q1*t^-1 + q1 - q1*q3"),
        ];
        Ok((m, rhs))
    }

    /// Cramer's rule over the Laurent ring; every quotient must be exact.
    pub fn solve_identification() -> Result<Vec<LaurentPoly>> {
        let (m, rhs) = identification_system()?;
        let det = m.determinant()?;
        (0..3)
            .map(|c| {
                let mut mc = m.clone();
                for (r, v) in rhs.iter().enumerate() {
                    mc.set(r, c, v.clone());
                }
                mc.determinant()?.div_exact(&det)
            })
            .collect()
    }
}
