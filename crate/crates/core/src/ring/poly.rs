use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use dashu_int::IBig;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::varset::{same_vars, VarSet};
use crate::error::{Error, Result};

pub type Exponents = SmallVec<[i32; 8]>;

/// Element of ℤ[x₁^{±1},…,x_k^{±1}]. Terms are kept sorted by exponent
/// vector (lexicographic, ascending) with no zero coefficients, so derived
/// equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Arc<VarSet>,
    terms: Vec<(Exponents, IBig)>,
}

impl LaurentPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        Self {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &Arc<VarSet>) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &Arc<VarSet>, c: impl Into<IBig>) -> Self {
        Self::monomial(vars, zero_exps(vars.len()), c)
    }

    pub fn monomial(vars: &Arc<VarSet>, exps: Exponents, c: impl Into<IBig>) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let c = c.into();
        let terms = if c.is_zero() { vec![] } else { vec![(exps, c)] };
        Self {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        Self::var_pow(vars, name, 1)
    }

    pub fn var_pow(vars: &Arc<VarSet>, name: &str, e: i32) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = zero_exps(vars.len());
        exps[idx] = e;
        Ok(Self::monomial(vars, exps, 1))
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I>(vars: &Arc<VarSet>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, IBig)>,
    {
        let mut acc: FxHashMap<Exponents, IBig> = FxHashMap::default();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    vars.len()
                )));
            }
            *acc.entry(e).or_insert(IBig::ZERO) += c;
        }
        Ok(Self::from_map(vars, acc))
    }

    fn from_map(vars: &Arc<VarSet>, acc: FxHashMap<Exponents, IBig>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Self {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> &[(Exponents, IBig)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> IBig {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or(IBig::ZERO)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Units of the Laurent ring are ±(monomial).
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && {
            let c = &self.terms[0].1;
            c.is_one() || (-c).is_one()
        }
    }

    pub fn unit_inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let (e, c) = &self.terms[0];
        Ok(Self::monomial(
            &self.vars,
            e.iter().map(|x| -x).collect(),
            c.clone(),
        ))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_vars(&self.vars, &other.vars)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_vars(&self.vars, &other.vars)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(e, c)| {
            let c = if negate { -c } else { c.clone() };
            (e.clone(), c)
        }));
        Self {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        same_vars(&self.vars, &other.vars)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.vars);
        }
        // a single term just shifts and scales, order is preserved
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let (mono, poly) = if self.terms.len() == 1 {
                (&self.terms[0], other)
            } else {
                (&other.terms[0], self)
            };
            let terms = poly
                .terms
                .iter()
                .map(|(e, c)| (add_exps(e, &mono.0), c * &mono.1))
                .collect();
            return Self {
                vars: self.vars.clone(),
                terms,
            };
        }
        Self::fused(&self.vars, &[(self, other)])
    }

    /// `Σ a_k b_k` accumulated in one pass; all operands must share `vars`.
    pub fn sum_of_products(vars: &Arc<VarSet>, pairs: &[(&Self, &Self)]) -> Result<Self> {
        for (a, b) in pairs {
            same_vars(vars, &a.vars)?;
            same_vars(vars, &b.vars)?;
        }
        Ok(Self::fused(vars, pairs))
    }

    fn fused(vars: &Arc<VarSet>, pairs: &[(&Self, &Self)]) -> Self {
        let packed: Option<Vec<_>> = pairs
            .iter()
            .map(|(a, b)| Some((packed::Packed::new(a)?, packed::Packed::new(b)?)))
            .collect();
        if let Some(packed) = packed {
            let refs: Vec<_> = packed.iter().map(|(a, b)| (a, b)).collect();
            if let Some(p) = packed::sum_of_products(vars, &refs) {
                return p;
            }
        }
        Self::fused_general(vars, pairs)
    }

    pub(crate) fn fused_general(vars: &Arc<VarSet>, pairs: &[(&Self, &Self)]) -> Self {
        let mut acc: FxHashMap<Exponents, IBig> = FxHashMap::default();
        for (a, b) in pairs {
            for (ea, ca) in &a.terms {
                for (eb, cb) in &b.terms {
                    *acc.entry(add_exps(ea, eb)).or_insert(IBig::ZERO) += ca * cb;
                }
            }
        }
        Self::from_map(vars, acc)
    }

    pub fn scale(&self, k: &IBig) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Negative exponents are allowed for units only.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.unit_inverse()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one(&self.vars);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// Per-variable (min, max) exponents; `None` for the zero polynomial.
    pub fn degree_box(&self) -> Option<Vec<(i32, i32)>> {
        let first = self.terms.first()?;
        let mut out: Vec<(i32, i32)> = first.0.iter().map(|&e| (e, e)).collect();
        for (e, _) in &self.terms[1..] {
            for (b, &x) in out.iter_mut().zip(e.iter()) {
                b.0 = b.0.min(x);
                b.1 = b.1.max(x);
            }
        }
        Some(out)
    }

    /// Exact quotient `self / d` in the Laurent ring, or `InexactDivision`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        same_vars(&self.vars, &d.vars)?;
        if d.is_zero() {
            return Err(Error::InexactDivision);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let (ba, bd) = (self.degree_box().unwrap(), d.degree_box().unwrap());
        // degrees in each single variable are additive over an integral domain,
        // so every quotient exponent lies in this box
        let bound: Vec<(i32, i32)> = ba
            .iter()
            .zip(&bd)
            .map(|(a, d)| (a.0 - d.0, a.1 - d.1))
            .collect();
        if bound.iter().any(|(lo, hi)| lo > hi) {
            return Err(Error::InexactDivision);
        }
        let (ld_e, ld_c) = d.terms.last().unwrap();
        let mut r = self.clone();
        let mut q_terms: Vec<(Exponents, IBig)> = Vec::new();
        while let Some((re, rc)) = r.terms.last() {
            let qe: Exponents = re.iter().zip(ld_e.iter()).map(|(a, b)| a - b).collect();
            if qe.iter().zip(&bound).any(|(&x, &(lo, hi))| x < lo || x > hi) {
                return Err(Error::InexactDivision);
            }
            let (qc, rem) = (rc / ld_c, rc % ld_c);
            if !rem.is_zero() {
                return Err(Error::InexactDivision);
            }
            let t = Self::monomial(&self.vars, qe.clone(), qc.clone());
            r = r.merge(&t.mul_unchecked(d), true);
            q_terms.push((qe, qc));
        }
        q_terms.reverse();
        Ok(Self {
            vars: self.vars.clone(),
            terms: q_terms,
        })
    }

    /// Divide every coefficient by `k`, failing unless all divisions are exact.
    pub fn div_integer_exact(&self, k: &IBig) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::InexactDivision);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            if !(c % k).is_zero() {
                return Err(Error::InexactDivision);
            }
            terms.push((e.clone(), c / k));
        }
        Ok(Self {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Same polynomial over a superset of variables (matched by name).
    pub fn embed(&self, target: &Arc<VarSet>) -> Result<Self> {
        if Arc::ptr_eq(&self.vars, target) || *self.vars == **target {
            return Ok(Self {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
            .collect::<Result<_>>()?;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut ne = zero_exps(target.len());
            for (k, &x) in e.iter().enumerate() {
                ne[map[k]] = x;
            }
            (ne, c.clone())
        });
        Self::from_terms(target, terms)
    }
}

pub(crate) fn zero_exps(n: usize) -> Exponents {
    SmallVec::from_elem(0, n)
}

/// Products with exponents packed into 16-bit fields of a `u128`, variable 0
/// most significant, so integer order on keys is lexicographic order on
/// exponent vectors. Gives up (returns `None`) on more than 8 variables,
/// operand exponents outside [−2^14, 2^14), coefficients outside i64 or an
/// i128 overflow while accumulating.
pub(crate) mod packed {
    use super::*;

    const HALF: i32 = 1 << 14;
    const FULL: i32 = 1 << 15;
    const DENSE_LIMIT: usize = 1 << 24;
    const MERGE_RUNS: usize = 16;

    /// Terms as (packed exponents, coefficient), ascending, with the degree
    /// box of the (biased) fields.
    pub(crate) struct Packed {
        terms: Vec<(u128, i64)>,
        lo: [i32; 8],
        hi: [i32; 8],
    }

    fn fields(mut key: u128, k: usize) -> [i32; 8] {
        let mut f = [0; 8];
        for slot in f[..k].iter_mut().rev() {
            *slot = (key & 0xffff) as i32;
            key >>= 16;
        }
        f
    }

    impl Packed {
        pub(crate) fn new(p: &LaurentPoly) -> Option<Self> {
            let k = p.vars.len();
            if k > 8 {
                return None;
            }
            let mut lo = [i32::MAX; 8];
            let mut hi = [i32::MIN; 8];
            let terms = p
                .terms
                .iter()
                .map(|(e, c)| {
                    let c = i64::try_from(c).ok()?;
                    let mut key = 0u128;
                    for (v, &x) in e.iter().enumerate() {
                        if !(-HALF..HALF).contains(&x) {
                            return None;
                        }
                        lo[v] = lo[v].min(x + HALF);
                        hi[v] = hi[v].max(x + HALF);
                        key = (key << 16) | (x + HALF) as u128;
                    }
                    Some((key, c))
                })
                .collect::<Option<Vec<_>>>()?;
            Some(Packed { terms, lo, hi })
        }
    }

    fn unpack(key: u128, k: usize) -> Exponents {
        fields(key, k)[..k].iter().map(|f| f - FULL).collect()
    }

    /// `Σ a_k b_k` over `vars`, or `None` on i128 overflow.
    pub(crate) fn sum_of_products(vars: &Arc<VarSet>, pairs: &[(&Packed, &Packed)]) -> Option<LaurentPoly> {
        let k = vars.len();
        let pairs: Vec<_> = pairs.iter().filter(|(a, b)| !a.terms.is_empty() && !b.terms.is_empty()).collect();
        let total: usize = pairs.iter().map(|(a, b)| a.terms.len() * b.terms.len()).sum();
        let runs: usize = pairs.iter().map(|(a, b)| a.terms.len().min(b.terms.len())).sum();
        if pairs.is_empty() {
            return Some(LaurentPoly::zero(vars));
        }
        // box of the product fields
        let mut lo = [i32::MAX; 8];
        let mut hi = [i32::MIN; 8];
        for (a, b) in &pairs {
            for v in 0..k {
                lo[v] = lo[v].min(a.lo[v] + b.lo[v]);
                hi[v] = hi[v].max(a.hi[v] + b.hi[v]);
            }
        }
        let volume = (0..k).try_fold(1usize, |acc, v| acc.checked_mul((hi[v] - lo[v] + 1) as usize));
        let terms = match volume {
            Some(vol) if vol <= DENSE_LIMIT && vol <= 4 * total + 64 => dense(k, &pairs, &lo, &hi, vol)?,
            _ if runs <= MERGE_RUNS => merged(&pairs, total)?,
            _ => hashed(&pairs)?,
        };
        Some(LaurentPoly {
            vars: vars.clone(),
            terms: terms.into_iter().map(|(key, c)| (unpack(key, k), IBig::from(c))).collect(),
        })
    }

    /// Mixed-radix index with variable 0 most significant, so index order is
    /// lexicographic order; index(a·b) = offset(a) + offset(b).
    fn dense(k: usize, pairs: &[&(&Packed, &Packed)], lo: &[i32; 8], hi: &[i32; 8], vol: usize) -> Option<Vec<(u128, i128)>> {
        let mut stride = [0i64; 8];
        let mut s = 1i64;
        for v in (0..k).rev() {
            stride[v] = s;
            s *= i64::from(hi[v] - lo[v] + 1);
        }
        let offset = |key: u128, base: &[i32; 8]| -> i64 {
            let f = fields(key, k);
            (0..k).map(|v| i64::from(f[v] - base[v]) * stride[v]).sum()
        };
        let zero = [0i32; 8];
        let mut acc = vec![0i128; vol];
        for (a, b) in pairs {
            let oa: Vec<(i64, i128)> = a.terms.iter().map(|&(key, c)| (offset(key, lo), i128::from(c))).collect();
            let ob: Vec<(i64, i128)> = b.terms.iter().map(|&(key, c)| (offset(key, &zero), i128::from(c))).collect();
            for &(xa, ca) in &oa {
                for &(xb, cb) in &ob {
                    let slot = &mut acc[(xa + xb) as usize];
                    *slot = slot.checked_add(ca * cb)?;
                }
            }
        }
        let mut out = Vec::new();
        let mut f = [0i32; 8];
        f[..k].copy_from_slice(&lo[..k]);
        for (idx, &c) in acc.iter().enumerate() {
            if c != 0 {
                let mut rem = idx as i64;
                let mut key = 0u128;
                for v in 0..k {
                    let q = rem / stride[v];
                    rem -= q * stride[v];
                    key = (key << 16) | (lo[v] as i64 + q) as u128;
                }
                out.push((key, c));
            }
        }
        Some(out)
    }

    /// Each term of the shorter factor gives an ascending run; the stable
    /// sort merges them.
    fn merged(pairs: &[&(&Packed, &Packed)], total: usize) -> Option<Vec<(u128, i128)>> {
        let mut terms: Vec<(u128, i128)> = Vec::with_capacity(total);
        for (a, b) in pairs {
            let (short, long) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
            for &(ks, cs) in &short.terms {
                terms.extend(long.terms.iter().map(|&(kl, cl)| (ks + kl, i128::from(cs) * i128::from(cl))));
            }
        }
        terms.sort_by_key(|&(key, _)| key);
        let mut w = 0;
        for r in 0..terms.len() {
            if w > 0 && terms[w - 1].0 == terms[r].0 {
                terms[w - 1].1 = terms[w - 1].1.checked_add(terms[r].1)?;
            } else {
                terms[w] = terms[r];
                w += 1;
            }
        }
        terms.truncate(w);
        terms.retain(|&(_, c)| c != 0);
        Some(terms)
    }

    fn hashed(pairs: &[&(&Packed, &Packed)]) -> Option<Vec<(u128, i128)>> {
        let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
        for (a, b) in pairs {
            for &(ka, ca) in &a.terms {
                for &(kb, cb) in &b.terms {
                    let v = acc.entry(ka + kb).or_insert(0);
                    *v = v.checked_add(i128::from(ca) * i128::from(cb))?;
                }
            }
        }
        let mut terms: Vec<(u128, i128)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by_key(|&(key, _)| key);
        Some(terms)
    }

    #[cfg(test)]
    mod tests {
        use super::*;
        use rand::{RngExt, SeedableRng};

        fn random(rng: &mut rand_chacha::ChaCha8Rng, vars: &Arc<VarSet>, spread: i32) -> LaurentPoly {
            let n = rng.random_range(0..12);
            LaurentPoly::from_terms(
                vars,
                (0..n).map(|_| {
                    let e: Exponents = (0..vars.len()).map(|_| rng.random_range(-spread..=spread)).collect();
                    (e, IBig::from(rng.random_range(-9i64..=9)))
                }),
            )
            .unwrap()
        }

        #[test]
        fn strategies_agree_with_general_path() {
            let vars = VarSet::indexed("x", 3, &["t"]).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
            for round in 0..200 {
                let spread = if round % 2 == 0 { 2 } else { 40 };
                let polys: Vec<_> = (0..6).map(|_| random(&mut rng, &vars, spread)).collect();
                let pairs: Vec<(&LaurentPoly, &LaurentPoly)> = polys.chunks(2).map(|c| (&c[0], &c[1])).collect();
                let want = LaurentPoly::fused_general(&vars, &pairs);
                let packed: Vec<_> = pairs.iter().map(|(a, b)| (Packed::new(a).unwrap(), Packed::new(b).unwrap())).collect();
                let refs: Vec<_> = packed.iter().map(|(a, b)| (a, b)).collect();
                let live: Vec<_> = refs.iter().filter(|(a, b)| !a.terms.is_empty() && !b.terms.is_empty()).collect();
                assert_eq!(sum_of_products(&vars, &refs).unwrap(), want);
                if live.is_empty() {
                    continue;
                }
                let k = vars.len();
                let mut lo = [i32::MAX; 8];
                let mut hi = [i32::MIN; 8];
                for (a, b) in &live {
                    for v in 0..k {
                        lo[v] = lo[v].min(a.lo[v] + b.lo[v]);
                        hi[v] = hi[v].max(a.hi[v] + b.hi[v]);
                    }
                }
                let vol: usize = (0..k).map(|v| (hi[v] - lo[v] + 1) as usize).product();
                let total = live.iter().map(|(a, b)| a.terms.len() * b.terms.len()).sum();
                let as_poly = |t: Vec<(u128, i128)>| LaurentPoly {
                    vars: vars.clone(),
                    terms: t.into_iter().map(|(key, c)| (unpack(key, k), IBig::from(c))).collect(),
                };
                if vol <= 1 << 16 {
                    assert_eq!(as_poly(dense(k, &live, &lo, &hi, vol).unwrap()), want);
                }
                assert_eq!(as_poly(merged(&live, total).unwrap()), want);
                assert_eq!(as_poly(hashed(&live).unwrap()), want);
            }
        }

        #[test]
        fn falls_back_outside_the_packed_range() {
            let vars = VarSet::new(["x"]).unwrap();
            let big = LaurentPoly::var_pow(&vars, "x", 20_000).unwrap();
            assert!(Packed::new(&big).is_none());
            let sq = &big * &big;
            assert_eq!(sq, LaurentPoly::var_pow(&vars, "x", 40_000).unwrap());
            let huge = LaurentPoly::constant(&vars, IBig::from(1u8) << 80);
            assert!(Packed::new(&huge).is_none());
            assert_eq!((&huge * &huge).constant_term(), IBig::from(1u8) << 160);
        }
    }
}

fn add_exps(a: &Exponents, b: &Exponents) -> Exponents {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Plain text form accepted back by the parser, highest term first,
/// e.g. `2*s^2*t^-1 - t + 1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.signum() < IBig::ZERO;
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .zip(self.vars.names())
                .filter(|(&x, _)| x != 0)
                .map(|(&x, n)| if x == 1 { n.clone() } else { format!("{n}^{x}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("operands over different variable sets")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self - rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs() -> Arc<VarSet> {
        VarSet::new(["s", "t"]).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(&vs(), s).unwrap()
    }

    #[test]
    fn additive_inverse() {
        assert!((p("t") + p("-t")).is_zero());
        assert_eq!(p("1+t") + p("t"), p("1+2*t"));
        assert_eq!(p("s^2*t^-1") + p("s^2"), p("s^2 + s^2*t^-1"));
    }

    #[test]
    fn products() {
        assert_eq!(p("1+t") * p("1+t^-1"), p("t^-1 + 2 + t"));
        assert_eq!(p("1-t") * p("1+t+t^2"), p("1-t^3"));
        assert_eq!(p("s*t^2") * p("s^-3*t"), p("s^-2*t^3"));
    }

    #[test]
    fn mismatched_vars() {
        let other = VarSet::new(["q"]).unwrap();
        let q = LaurentPoly::var(&other, "q").unwrap();
        assert!(matches!(
            p("t").checked_add(&q),
            Err(Error::VarSetMismatch { .. })
        ));
    }

    #[test]
    fn pow_and_units() {
        assert_eq!(p("1+t").pow(2).unwrap(), p("1+2*t+t^2"));
        assert_eq!(p("-s*t").pow(-2).unwrap(), p("s^-2*t^-2"));
        assert!(matches!(p("1+t").pow(-1), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn exact_division() {
        let a = p("1-t^3");
        assert_eq!(a.div_exact(&p("1-t")).unwrap(), p("1+t+t^2"));
        assert_eq!(p("s^2-s*t").div_exact(&p("s^2*t-s*t^2")).unwrap(), p("t^-1"));
        assert_eq!(p("1+t").div_exact(&p("1-t")), Err(Error::InexactDivision));
        assert_eq!(p("2+2*t").div_exact(&p("2")).unwrap(), p("1+t"));
        assert_eq!(p("1+t").div_exact(&p("2")), Err(Error::InexactDivision));
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "1", "-1", "s^2*t^-1 - t + 3", "-2*s*t^3 + s^-1"] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x);
        }
        assert_eq!(p("1 - t").to_string(), "-t + 1");
    }

    #[test]
    fn embed_into_superset() {
        let big = VarSet::new(["a", "t", "s"]).unwrap();
        let e = p("s*t^2").embed(&big).unwrap();
        assert_eq!(e, LaurentPoly::parse(&big, "t^2*s").unwrap());
        let small = VarSet::new(["t"]).unwrap();
        assert!(p("s").embed(&small).is_err());
    }
}
