//! Balanced quantum numbers in a unit `q`, and the unbalanced t-numbers,
//! built from sums and Pascal-type recursions only (no division).

use rustc_hash::FxHashMap;

use super::poly::LaurentPoly;
use crate::error::{Error, Result};

fn require_unit(x: &LaurentPoly) -> Result<()> {
    if x.is_unit() {
        Ok(())
    } else {
        Err(Error::NotAUnit(x.to_string()))
    }
}

/// `[i]_q = q^{i-1} + q^{i-3} + … + q^{1-i}`.
pub fn q_number(i: u32, q: &LaurentPoly) -> Result<LaurentPoly> {
    require_unit(q)?;
    let mut acc = LaurentPoly::zero(q.vars());
    for k in 0..i as i64 {
        acc += &q.pow(i as i64 - 1 - 2 * k)?;
    }
    Ok(acc)
}

pub fn q_factorial(i: u32, q: &LaurentPoly) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one(q.vars());
    for k in 1..=i {
        acc = acc * q_number(k, q)?;
    }
    Ok(acc)
}

/// `[k, l]_q` by `[k,l] = q^{-l}[k-1,l] + q^{k-l}[k-1,l-1]`.
pub fn q_binomial(k: u32, l: u32, q: &LaurentPoly) -> Result<LaurentPoly> {
    require_unit(q)?;
    if l > k {
        return Err(Error::InvalidBounds(format!("q-binomial [{k}, {l}] needs k >= l")));
    }
    let one = LaurentPoly::one(q.vars());
    let mut row = vec![one.clone()];
    for n in 1..=k as i64 {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(one.clone());
        for j in 1..n {
            let a = q.pow(-j)? * &row[j as usize];
            let b = q.pow(n - j)? * &row[j as usize - 1];
            next.push(a + b);
        }
        next.push(one.clone());
        row = next;
    }
    Ok(row.swap_remove(l as usize))
}

/// `(i)_x = 1 + x + … + x^{i-1}`; `x` may be any polynomial, e.g. `t^{-1}`.
pub fn t_number(i: u32, x: &LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(x.vars());
    let mut p = LaurentPoly::one(x.vars());
    for _ in 0..i {
        acc += &p;
        p = p * x;
    }
    acc
}

pub fn t_factorial(i: u32, x: &LaurentPoly) -> LaurentPoly {
    (1..=i).fold(LaurentPoly::one(x.vars()), |acc, k| acc * t_number(k, x))
}

/// Memoised t-binomials and trinomials in a fixed base `x`.
pub struct TNumbers {
    x: LaurentPoly,
    x_pows: Vec<LaurentPoly>,
    binom: Vec<Vec<LaurentPoly>>,
    trinom: FxHashMap<(u32, u32, u32), LaurentPoly>,
}

impl TNumbers {
    pub fn new(x: &LaurentPoly) -> Self {
        let one = LaurentPoly::one(x.vars());
        Self {
            x: x.clone(),
            x_pows: vec![one.clone()],
            binom: vec![vec![one]],
            trinom: FxHashMap::default(),
        }
    }

    fn x_pow(&mut self, e: u32) -> LaurentPoly {
        while self.x_pows.len() <= e as usize {
            let next = self.x_pows.last().unwrap() * &self.x;
            self.x_pows.push(next);
        }
        self.x_pows[e as usize].clone()
    }

    /// `(k, l)_x` by `(k,l) = (k-1,l-1) + x^l (k-1,l)`.
    pub fn binomial(&mut self, k: u32, l: u32) -> Result<LaurentPoly> {
        if l > k {
            return Err(Error::InvalidBounds(format!("t-binomial ({k}, {l}) needs k >= l")));
        }
        while self.binom.len() <= k as usize {
            let n = self.binom.len();
            let prev = self.binom[n - 1].clone();
            let one = LaurentPoly::one(self.x.vars());
            let mut row = vec![one.clone()];
            for j in 1..n {
                let shifted = self.x_pow(j as u32) * &prev[j];
                row.push(&prev[j - 1] + shifted);
            }
            row.push(one);
            self.binom.push(row);
        }
        Ok(self.binom[k as usize][l as usize].clone())
    }

    /// `(i+j+k)_x! / ((i)_x! (j)_x! (k)_x!)`, by splitting off the last letter:
    /// `T(i,j,k) = T(i-1,j,k) + x^i T(i,j-1,k) + x^{i+j} T(i,j,k-1)`.
    pub fn trinomial(&mut self, n: u32, i: u32, j: u32, k: u32) -> Result<LaurentPoly> {
        if i + j + k != n {
            return Err(Error::InvalidBounds(format!(
                "trinomial ({n}; {i}, {j}, {k}) is not a composition"
            )));
        }
        Ok(self.tri(i, j, k))
    }

    fn tri(&mut self, i: u32, j: u32, k: u32) -> LaurentPoly {
        if [i, j, k].iter().filter(|&&v| v == 0).count() >= 2 {
            return LaurentPoly::one(self.x.vars());
        }
        if let Some(v) = self.trinom.get(&(i, j, k)) {
            return v.clone();
        }
        let mut acc = LaurentPoly::zero(self.x.vars());
        if i > 0 {
            acc += &self.tri(i - 1, j, k);
        }
        if j > 0 {
            let t = self.x_pow(i) * self.tri(i, j - 1, k);
            acc += &t;
        }
        if k > 0 {
            let t = self.x_pow(i + j) * self.tri(i, j, k - 1);
            acc += &t;
        }
        self.trinom.insert((i, j, k), acc.clone());
        acc
    }
}

pub fn t_binomial(k: u32, l: u32, x: &LaurentPoly) -> Result<LaurentPoly> {
    TNumbers::new(x).binomial(k, l)
}

pub fn t_trinomial(n: u32, i: u32, j: u32, k: u32, x: &LaurentPoly) -> Result<LaurentPoly> {
    TNumbers::new(x).trinomial(n, i, j, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::VarSet;
    use std::sync::Arc;

    fn vars() -> Arc<VarSet> {
        VarSet::new(["q", "t"]).unwrap()
    }
    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(&vars(), s).unwrap()
    }

    #[test]
    fn small_q_numbers() {
        let q = p("q");
        assert_eq!(q_number(2, &q).unwrap(), p("q + q^-1"));
        assert!(q_number(0, &q).unwrap().is_zero());
        assert!(q_factorial(0, &q).unwrap().is_one());
        assert_eq!(q_number(3, &q).unwrap(), p("q^2 + 1 + q^-2"));
        assert!(q_number(2, &p("1+q")).is_err());
    }

    #[test]
    fn q_binomial_matches_factorial_ratio() {
        let q = p("q");
        assert_eq!(q_binomial(2, 1, &q).unwrap(), p("q + q^-1"));
        for k in 0..=7 {
            for l in 0..=k {
                let ratio = q_factorial(k, &q)
                    .unwrap()
                    .div_exact(&(q_factorial(l, &q).unwrap() * q_factorial(k - l, &q).unwrap()))
                    .unwrap();
                assert_eq!(q_binomial(k, l, &q).unwrap(), ratio, "[{k},{l}]");
            }
        }
        assert!(matches!(q_binomial(1, 2, &q), Err(Error::InvalidBounds(_))));
    }

    #[test]
    fn small_t_numbers() {
        assert_eq!(t_number(3, &p("t")), p("1 + t + t^2"));
        assert_eq!(t_binomial(2, 1, &p("t^-1")).unwrap(), p("1 + t^-1"));
        assert_eq!(t_trinomial(2, 1, 1, 0, &p("t")).unwrap(), p("1 + t"));
        assert!(t_trinomial(3, 1, 1, 0, &p("t")).is_err());
    }

    #[test]
    fn t_binomial_matches_factorial_ratio() {
        for x in [p("t"), p("t^-1")] {
            let mut tn = TNumbers::new(&x);
            for k in 0..=8 {
                for l in 0..=k {
                    let ratio = t_factorial(k, &x)
                        .div_exact(&(t_factorial(l, &x) * t_factorial(k - l, &x)))
                        .unwrap();
                    assert_eq!(tn.binomial(k, l).unwrap(), ratio);
                }
            }
        }
    }

    #[test]
    fn pascal_identity() {
        let x = p("t");
        let mut tn = TNumbers::new(&x);
        for k in 1..=8u32 {
            for l in 1..k {
                let rhs = tn.binomial(k - 1, l - 1).unwrap()
                    + x.pow(l as i64).unwrap() * tn.binomial(k - 1, l).unwrap();
                assert_eq!(tn.binomial(k, l).unwrap(), rhs);
            }
        }
    }

    #[test]
    fn trinomial_factorial_reading() {
        let x = p("t^-1");
        let mut tn = TNumbers::new(&x);
        for n in 0..=6u32 {
            for i in 0..=n {
                for j in 0..=n - i {
                    let k = n - i - j;
                    let tri = tn.trinomial(n, i, j, k).unwrap();
                    let split = tn.binomial(n, i).unwrap() * tn.binomial(n - i, j).unwrap();
                    assert_eq!(tri, split, "({n};{i},{j},{k})");
                    let den = t_factorial(i, &x) * t_factorial(j, &x) * t_factorial(k, &x);
                    assert_eq!(t_factorial(n, &x).div_exact(&den).unwrap(), tri);
                }
            }
        }
    }

    #[test]
    fn non_factorial_reading_is_not_polynomial() {
        let x = p("t");
        // (3)_t / ((1)_t (2)_t) = (1+t+t^2)/(1+t)
        let den = t_number(1, &x) * t_number(2, &x);
        assert_eq!(t_number(3, &x).div_exact(&den), Err(Error::InexactDivision));
    }
}
