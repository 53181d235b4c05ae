//! Dense matrices over a Laurent ring. Matrices act on column vectors: column
//! `j` holds the image of the `j`-th basis vector.

use std::fmt;
use std::sync::Arc;

use dashu_int::IBig;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::packed::{sum_of_products as packed_sum, Packed};
use crate::ring::{LaurentPoly, Substitution, VarSet};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    vars: Arc<VarSet>,
    rows: usize,
    cols: usize,
    data: Vec<LaurentPoly>,
}

impl Matrix {
    pub fn zeros(vars: &Arc<VarSet>, rows: usize, cols: usize) -> Self {
        Self {
            vars: vars.clone(),
            rows,
            cols,
            data: vec![LaurentPoly::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Arc<VarSet>, n: usize) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            m.data[i * n + i] = LaurentPoly::one(vars);
        }
        m
    }

    pub fn from_rows(vars: &Arc<VarSet>, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for e in row {
                data.push(e.embed(vars)?);
            }
        }
        Ok(Self {
            vars: vars.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Rows of polynomial text, e.g. `[["1-t", "1"], ["t", "0"]]`.
    pub fn parse_rows(vars: &Arc<VarSet>, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| LaurentPoly::parse(vars, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(vars, rows)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert!(**v.vars() == *self.vars, "entry over a different variable set");
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, e)| (k / self.cols, k % self.cols, e))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.entries().all(|(i, j, e)| if i == j { e.is_one() } else { e.is_zero() })
    }

    /// Number of nonzero entries and the term count of the first one (row-major).
    pub fn residual_summary(&self) -> (usize, Option<(usize, usize, usize)>) {
        let nz: Vec<_> = self.entries().filter(|(_, _, e)| !e.is_zero()).collect();
        let first = nz.first().map(|&(i, j, e)| (i, j, e.num_terms()));
        (nz.len(), first)
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if *self.vars != *o.vars {
            return Err(Error::VarSetMismatch {
                left: self.vars.to_string(),
                right: o.vars.to_string(),
            });
        }
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(self.zip_with(o, |a, b| a + b))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        Ok(self.zip_with(o, |a, b| a - b))
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e)
    }

    pub fn scale(&self, k: &LaurentPoly) -> Self {
        self.map(|e| e * k)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if *self.vars != *o.vars {
            return Err(Error::VarSetMismatch {
                left: self.vars.to_string(),
                right: o.vars.to_string(),
            });
        }
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let pack = |m: &Self| -> Option<Vec<Packed>> { m.data.iter().map(Packed::new).collect() };
        let packed = pack(self).zip(pack(o));
        let row = |i: usize| -> Vec<LaurentPoly> {
            (0..o.cols)
                .map(|j| {
                    let ks = (0..self.cols).filter(|&k| !self.get(i, k).is_zero() && !o.get(k, j).is_zero());
                    if let Some((pa, pb)) = &packed {
                        let pairs: Vec<(&Packed, &Packed)> =
                            ks.clone().map(|k| (&pa[i * self.cols + k], &pb[k * o.cols + j])).collect();
                        if let Some(p) = packed_sum(&self.vars, &pairs) {
                            return p;
                        }
                    }
                    let pairs: Vec<(&LaurentPoly, &LaurentPoly)> = ks.map(|k| (self.get(i, k), o.get(k, j))).collect();
                    LaurentPoly::fused_general(&self.vars, &pairs)
                })
                .collect()
        };
        let work = self.rows * self.cols * o.cols;
        let rows: Vec<Vec<LaurentPoly>> = if work >= 4096 {
            (0..self.rows).into_par_iter().map(row).collect()
        } else {
            (0..self.rows).map(row).collect()
        };
        Ok(Self {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: o.cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Ordered product of `factors` (identity of size `dim` when empty), as a
    /// balanced tree so that the work concentrates in a few large products.
    pub fn product(vars: &Arc<VarSet>, dim: usize, factors: Vec<Matrix>) -> Result<Self> {
        let mut level = factors;
        if level.is_empty() {
            return Ok(Self::identity(vars, dim));
        }
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len().div_ceil(2));
            let mut it = level.into_iter();
            while let Some(a) = it.next() {
                next.push(match it.next() {
                    Some(b) => a.mul(&b)?,
                    None => a,
                });
            }
            level = next;
        }
        Ok(level.pop().expect("non-empty"))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            vars: self.vars.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|e| sub.apply(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            vars: sub.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|e| e.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            vars: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            vars: self.vars.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn trace(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(&self.vars);
        for i in 0..self.rows.min(self.cols) {
            acc += self.get(i, i);
        }
        acc
    }

    /// Characteristic polynomial coefficients and adjugate data by
    /// Faddeev–LeVerrier; every division is by an integer and exact.
    fn faddeev_leverrier(&self) -> Result<(LaurentPoly, Self)> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        let n = self.rows;
        let id = Self::identity(&self.vars, n);
        let mut m = Self::zeros(&self.vars, n, n);
        let mut c = LaurentPoly::one(&self.vars);
        for k in 1..=n {
            m = self.mul(&m)?.add(&id.scale(&c))?;
            let tr = self.mul(&m)?.trace();
            c = (-tr).div_integer_exact(&IBig::from(k))?;
        }
        // c is now c_0 with det = (-1)^n c_0 and A·M_n = -c_0·I
        let det = if n % 2 == 0 { c.clone() } else { -c.clone() };
        let adj = if n % 2 == 0 { m.neg() } else { m };
        Ok((det, adj))
    }

    pub fn determinant(&self) -> Result<LaurentPoly> {
        if self.rows == 0 && self.cols == 0 {
            return Ok(LaurentPoly::one(&self.vars));
        }
        Ok(self.faddeev_leverrier()?.0)
    }

    /// Inverse inside the Laurent ring; exists iff the determinant is a unit.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows == 0 && self.cols == 0 {
            return Ok(self.clone());
        }
        let (det, adj) = self.faddeev_leverrier()?;
        let inv_det = det.unit_inverse()?;
        Ok(adj.scale(&inv_det))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(&self.vars, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Row-major nested arrays of term lists.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array((0..self.cols).map(|j| self.get(i, j).to_json_terms()).collect()))
                .collect(),
        )
    }

    pub fn to_json_with_vars(&self) -> Value {
        json!({"vars": self.vars.names(), "rows": self.rows, "cols": self.cols, "matrix": self.to_json()})
    }

    pub fn from_json(vars: &Arc<VarSet>, v: &Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Json("matrix must be an array of rows".into()))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Json("row must be an array".into()))?
                    .iter()
                    .map(|e| LaurentPoly::from_json_terms(vars, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(vars, rows)
    }

    pub fn to_latex(&self) -> String {
        let body: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).to_latex())
                    .collect::<Vec<_>>()
                    .join(" & ")
            })
            .collect();
        format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}", body.join(" \\\\\n"))
    }

    /// One line per nonzero term: `row,col,coeff,e1,…,ek`.
    pub fn to_csv_monomials(&self, out: &mut String, prefix: &str) {
        for (i, j, e) in self.entries() {
            for (exps, c) in e.terms() {
                out.push_str(prefix);
                out.push_str(&format!("{i},{j},{c}"));
                for x in exps {
                    out.push_str(&format!(",{x}"));
                }
                out.push('\n');
            }
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over [{}]", self.rows, self.cols, self.vars)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Arc<VarSet> {
        VarSet::new(["s", "t"]).unwrap()
    }

    #[test]
    fn burau_block_inverse() {
        let b = Matrix::parse_rows(&v(), &[&["1-t", "1"], &["t", "0"]]).unwrap();
        let inv = b.inverse().unwrap();
        assert_eq!(inv, Matrix::parse_rows(&v(), &[&["0", "t^-1"], &["1", "1-t^-1"]]).unwrap());
        assert!(b.mul(&inv).unwrap().is_identity());
        assert_eq!(b.determinant().unwrap(), LaurentPoly::parse(&v(), "-t").unwrap());
    }

    #[test]
    fn non_unit_determinant() {
        let p = Matrix::parse_rows(&v(), &[&["1+t", "1+t"], &["0", "1+t"]]).unwrap();
        assert!(matches!(p.inverse(), Err(Error::NotAUnit(_))));
        assert_eq!(p.determinant().unwrap(), LaurentPoly::parse(&v(), "(1+t)^2").unwrap());
    }

    #[test]
    fn inverse_of_three_by_three() {
        let l1 = Matrix::parse_rows(
            &v(),
            &[
                &["s^2*t^-1", "-s^2*(1+t^-1)", "s^2"],
                &["0", "-s", "s"],
                &["0", "0", "1"],
            ],
        )
        .unwrap();
        let inv = l1.inverse().unwrap();
        assert!(l1.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&l1).unwrap().is_identity());
        assert!(l1.pow(-3).unwrap().mul(&l1.pow(3).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn dimension_errors() {
        let a = Matrix::zeros(&v(), 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.inverse().is_err());
        assert!(a.add(&Matrix::zeros(&v(), 3, 2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let b = Matrix::parse_rows(&v(), &[&["1-t", "s^-1"], &["t", "0"]]).unwrap();
        assert_eq!(Matrix::from_json(&v(), &b.to_json()).unwrap(), b);
    }
}
