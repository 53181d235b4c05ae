use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::poly::{zero_exps, LaurentPoly};
use super::varset::VarSet;
use crate::error::{Error, Result};

/// Ring homomorphism between Laurent rings, given by the image of every
/// source variable. Unset variables map to the same-named target variable.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Arc<VarSet>,
    target: Arc<VarSet>,
    images: Vec<Option<LaurentPoly>>,
}

impl Substitution {
    pub fn new(source: &Arc<VarSet>, target: &Arc<VarSet>) -> Self {
        Self {
            source: source.clone(),
            target: target.clone(),
            images: vec![None; source.len()],
        }
    }

    pub fn set(mut self, name: &str, image: LaurentPoly) -> Result<Self> {
        let idx = self
            .source
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let image = image.embed(&self.target)?;
        self.images[idx] = Some(image);
        Ok(self)
    }

    /// `set` with the image given as text over the target variables.
    pub fn set_str(self, name: &str, image: &str) -> Result<Self> {
        let img = LaurentPoly::parse(&self.target, image)?;
        self.set(name, img)
    }

    /// Parses `name=expr` assignments separated by commas, e.g. `q1=q,q2=q`.
    pub fn parse_assignments(source: &Arc<VarSet>, target: &Arc<VarSet>, text: &str) -> Result<Self> {
        let mut sub = Self::new(source, target);
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, expr) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=expr, got `{part}`")))?;
            sub = sub.set_str(name.trim(), expr)?;
        }
        Ok(sub)
    }

    pub fn source(&self) -> &Arc<VarSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VarSet> {
        &self.target
    }

    // images of variables absent from `a` are never used, so they need not exist in the target
    fn resolved(&self, a: &LaurentPoly) -> Result<Vec<LaurentPoly>> {
        self.images
            .iter()
            .zip(self.source.names())
            .enumerate()
            .map(|(k, (img, name))| match img {
                Some(p) => Ok(p.clone()),
                None if a.terms().iter().all(|(e, _)| e[k] == 0) => Ok(LaurentPoly::one(&self.target)),
                None => LaurentPoly::var(&self.target, name),
            })
            .collect()
    }

    pub fn apply(&self, a: &LaurentPoly) -> Result<LaurentPoly> {
        if **a.vars() != *self.source {
            return Err(Error::VarSetMismatch {
                left: a.vars().to_string(),
                right: self.source.to_string(),
            });
        }
        let images = self.resolved(a)?;
        // a variable occurring negatively needs a unit image
        for (k, img) in images.iter().enumerate() {
            if !img.is_unit() && a.terms().iter().any(|(e, _)| e[k] < 0) {
                return Err(Error::NonInvertibleImage(self.source.names()[k].clone()));
            }
        }
        if images.iter().all(|p| p.is_unit()) {
            return Ok(self.apply_monomial(a, &images));
        }
        let mut cache: FxHashMap<(usize, i32), LaurentPoly> = FxHashMap::default();
        let mut acc = LaurentPoly::zero(&self.target);
        for (e, c) in a.terms() {
            let mut t = LaurentPoly::constant(&self.target, c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let pw = match cache.get(&(k, x)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[k].pow(x as i64)?;
                        cache.insert((k, x), p.clone());
                        p
                    }
                };
                t = t * pw;
            }
            acc += &t;
        }
        Ok(acc)
    }

    fn apply_monomial(&self, a: &LaurentPoly, images: &[LaurentPoly]) -> LaurentPoly {
        let n = self.target.len();
        let terms = a.terms().iter().map(|(e, c)| {
            let mut ne = zero_exps(n);
            let mut coeff = c.clone();
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let (ie, ic) = &images[k].terms()[0];
                for (d, &y) in ne.iter_mut().zip(ie.iter()) {
                    *d += x * y;
                }
                if !ic.is_one() && x % 2 != 0 {
                    coeff = -coeff;
                }
            }
            (ne, coeff)
        });
        LaurentPoly::from_terms(&self.target, terms).expect("lengths agree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_to_s_squared() {
        let src = VarSet::new(["t1"]).unwrap();
        let dst = VarSet::new(["s1"]).unwrap();
        let sub = Substitution::new(&src, &dst).set_str("t1", "s1^2").unwrap();
        let a = LaurentPoly::parse(&src, "1 - t1").unwrap();
        assert_eq!(sub.apply(&a).unwrap(), LaurentPoly::parse(&dst, "1 - s1^2").unwrap());
    }

    #[test]
    fn invert_variable() {
        let v = VarSet::new(["s", "t"]).unwrap();
        let sub = Substitution::new(&v, &v).set_str("t", "t^-1").unwrap();
        let a = LaurentPoly::parse(&v, "s^2*t^-1").unwrap();
        assert_eq!(sub.apply(&a).unwrap(), LaurentPoly::parse(&v, "s^2*t").unwrap());
    }

    #[test]
    fn non_unit_image_rejected_only_when_needed() {
        let v = VarSet::new(["t"]).unwrap();
        let sub = Substitution::new(&v, &v).set_str("t", "1+t").unwrap();
        let pos = LaurentPoly::parse(&v, "t^2").unwrap();
        assert_eq!(sub.apply(&pos).unwrap(), LaurentPoly::parse(&v, "(1+t)^2").unwrap());
        let neg = LaurentPoly::parse(&v, "t^-1").unwrap();
        assert_eq!(sub.apply(&neg), Err(Error::NonInvertibleImage("t".into())));
    }

    #[test]
    fn negative_unit_image() {
        let v = VarSet::new(["t"]).unwrap();
        let sub = Substitution::new(&v, &v).set_str("t", "-t").unwrap();
        let a = LaurentPoly::parse(&v, "t^-3 + t^2").unwrap();
        assert_eq!(sub.apply(&a).unwrap(), LaurentPoly::parse(&v, "-t^-3 + t^2").unwrap());
    }
}
