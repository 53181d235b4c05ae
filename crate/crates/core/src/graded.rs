//! Permutation-graded linear maps: one matrix block per source permutation τ,
//! landing in the block of the permutation reached after the braid acts.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::braid::{over_strand_labels, BraidWord, OverStrand, Perm};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Substitution, VarSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub dst: Perm,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    n: usize,
    dim: usize,
    vars: Arc<VarSet>,
    blocks: BTreeMap<Perm, Block>,
}

impl GradedMap {
    pub fn new(n: usize, dim: usize, vars: &Arc<VarSet>) -> Self {
        Self {
            n,
            dim,
            vars: vars.clone(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, dim: usize, vars: &Arc<VarSet>) -> Self {
        let mut g = Self::new(n, dim, vars);
        for p in Perm::all(n) {
            g.blocks.insert(
                p.clone(),
                Block {
                    dst: p,
                    matrix: Matrix::identity(vars, dim),
                },
            );
        }
        g
    }

    pub fn insert(&mut self, src: Perm, dst: Perm, matrix: Matrix) -> Result<()> {
        if src.n() != self.n || dst.n() != self.n {
            return Err(Error::GradingMismatch("permutation size".into()));
        }
        if matrix.rows() != self.dim || matrix.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "block must be {0}x{0}",
                self.dim
            )));
        }
        self.blocks.insert(src, Block { dst, matrix });
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn block(&self, src: &Perm) -> Option<&Block> {
        self.blocks.get(src)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Perm, &Block)> {
        self.blocks.iter()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `a ∘ b`: for every source of `b`, continue with `a` from `b`'s target.
    pub fn compose(a: &Self, b: &Self) -> Result<Self> {
        if a.n != b.n || a.dim != b.dim {
            return Err(Error::GradingMismatch("different n or block size".into()));
        }
        let mut out = Self::new(a.n, a.dim, &a.vars);
        for (src, blk) in &b.blocks {
            let next = a.blocks.get(&blk.dst).ok_or_else(|| {
                Error::GradingMismatch(format!("left map has no block at {}", blk.dst))
            })?;
            out.blocks.insert(
                src.clone(),
                Block {
                    dst: next.dst.clone(),
                    matrix: next.matrix.mul(&blk.matrix)?,
                },
            );
        }
        Ok(out)
    }

    /// Block-wise `self − other`; both must have the same sources and targets.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        if self.blocks.len() != other.blocks.len() {
            return Err(Error::GradingMismatch("different block sets".into()));
        }
        let mut out = Self::new(self.n, self.dim, &self.vars);
        for (src, a) in &self.blocks {
            let b = other
                .blocks
                .get(src)
                .ok_or_else(|| Error::GradingMismatch(format!("no block at {src}")))?;
            if a.dst != b.dst {
                return Err(Error::GradingMismatch(format!(
                    "block {src} targets {} vs {}",
                    a.dst, b.dst
                )));
            }
            out.blocks.insert(
                src.clone(),
                Block {
                    dst: a.dst.clone(),
                    matrix: a.matrix.sub(&b.matrix)?,
                },
            );
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.matrix.is_zero())
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<Self> {
        let mut out = Self::new(self.n, self.dim, sub.target());
        for (src, b) in &self.blocks {
            out.blocks.insert(
                src.clone(),
                Block {
                    dst: b.dst.clone(),
                    matrix: b.matrix.substitute(sub)?,
                },
            );
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "vars": self.vars.names(),
            "blocks": self.blocks.iter().map(|(src, b)| json!({
                "src": src.images(),
                "dst": b.dst.images(),
                "matrix": b.matrix.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Json("missing `n`".into()))? as usize;
        let names: Vec<String> = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing `vars`".into()))?
            .iter()
            .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| Error::Json("bad variable".into())))
            .collect::<Result<_>>()?;
        let vars = VarSet::new(names)?;
        let perm = |x: &Value| -> Result<Perm> {
            let imgs: Vec<usize> = x
                .as_array()
                .ok_or_else(|| Error::Json("permutation must be an array".into()))?
                .iter()
                .map(|y| y.as_u64().map(|y| y as usize).ok_or_else(|| Error::Json("bad image".into())))
                .collect::<Result<_>>()?;
            Perm::from_images(&imgs)
        };
        let blocks = v
            .get("blocks")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Json("missing `blocks`".into()))?;
        let mut out: Option<Self> = None;
        for b in blocks {
            let src = perm(&b["src"])?;
            let dst = perm(&b["dst"])?;
            let m = Matrix::from_json(&vars, &b["matrix"])?;
            let g = out.get_or_insert_with(|| Self::new(n, m.rows(), &vars));
            g.insert(src, dst, m)?;
        }
        Ok(out.unwrap_or_else(|| Self::new(n, 0, &vars)))
    }
}

/// A family of generator matrices graded by the permutation of the source
/// block. `generator(i, τ)` is the matrix of σ_i on block τ, landing in block
/// `(i,i+1)∘τ`; σ_i^{-1} on τ is the inverse of σ_i on `(i,i+1)∘τ`.
pub trait InducedFamily: Sync {
    fn n(&self) -> usize;
    fn dim(&self) -> usize;
    fn vars(&self) -> &Arc<VarSet>;
    fn generator(&self, i: usize, tau: &Perm) -> Result<Matrix>;
}

struct GenCache<'a, F: InducedFamily + ?Sized> {
    fam: &'a F,
    pos: FxHashMap<(usize, Perm), Matrix>,
    neg: FxHashMap<(usize, Perm), Matrix>,
}

impl<'a, F: InducedFamily + ?Sized> GenCache<'a, F> {
    fn new(fam: &'a F) -> Self {
        Self {
            fam,
            pos: FxHashMap::default(),
            neg: FxHashMap::default(),
        }
    }

    fn positive(&mut self, i: usize, tau: &Perm) -> Result<Matrix> {
        if let Some(m) = self.pos.get(&(i, tau.clone())) {
            return Ok(m.clone());
        }
        let m = self.fam.generator(i, tau)?;
        self.pos.insert((i, tau.clone()), m.clone());
        Ok(m)
    }

    fn negative(&mut self, i: usize, tau: &Perm) -> Result<Matrix> {
        if let Some(m) = self.neg.get(&(i, tau.clone())) {
            return Ok(m.clone());
        }
        let m = self.positive(i, &tau.swap_slots(i))?.inverse()?;
        self.neg.insert((i, tau.clone()), m.clone());
        Ok(m)
    }
}

/// Block of `w` starting at source `tau`, with the letters read right to left.
pub fn induced_block<F: InducedFamily + ?Sized>(fam: &F, w: &BraidWord, tau: &Perm) -> Result<Block> {
    let mut cache = GenCache::new(fam);
    walk(&mut cache, w, tau)
}

fn walk<F: InducedFamily + ?Sized>(cache: &mut GenCache<'_, F>, w: &BraidWord, tau: &Perm) -> Result<Block> {
    let fam = cache.fam;
    if w.n() != fam.n() || tau.n() != fam.n() {
        return Err(Error::GradingMismatch(format!(
            "family on {} strands, braid on {}",
            fam.n(),
            w.n()
        )));
    }
    let mut factors = Vec::with_capacity(w.len());
    let mut rho = tau.clone();
    for l in w.letters().iter().rev() {
        factors.push(if l.positive {
            cache.positive(l.index, &rho)?
        } else {
            cache.negative(l.index, &rho)?
        });
        rho = rho.swap_slots(l.index);
    }
    factors.reverse();
    let matrix = Matrix::product(fam.vars(), fam.dim(), factors)?;
    Ok(Block { dst: rho, matrix })
}

/// The induced map of `w` on the given source blocks (all n! when `None`).
pub fn induced<F: InducedFamily + ?Sized>(fam: &F, w: &BraidWord, sources: Option<&[Perm]>) -> Result<GradedMap> {
    let all;
    let sources = match sources {
        Some(s) => s,
        None => {
            all = Perm::all(fam.n());
            &all
        }
    };
    let blocks: Vec<(Perm, Block)> = sources
        .par_iter()
        .map(|tau| {
            let mut cache = GenCache::new(fam);
            walk(&mut cache, w, tau).map(|b| (tau.clone(), b))
        })
        .collect::<Result<_>>()?;
    let mut g = GradedMap::new(fam.n(), fam.dim(), fam.vars());
    for (src, b) in blocks {
        g.blocks.insert(src, b);
    }
    Ok(g)
}

/// Families whose generator on block τ only depends on the colour of one strand.
pub trait ColoredFamily: InducedFamily {
    /// Matrix of σ_i with the crossing coloured by `strand`.
    fn colored_generator(&self, i: usize, strand: usize) -> Result<Matrix>;
    /// Convention under which the induced and coloured models agree.
    fn convention(&self) -> OverStrand;
}

/// Slot whose strand colours σ_i on block τ under `conv`.
pub fn colour_of(conv: OverStrand, i: usize, tau: &Perm) -> usize {
    let slot = match conv {
        OverStrand::LeftSlot => i,
        OverStrand::RightSlot => i + 1,
    };
    tau.inverse().apply(slot)
}

/// `Π_m G_{i_m}(colour_m)^{ε_m}` in word order, colours from `over_strand_labels`.
pub fn colored_product<F: ColoredFamily + ?Sized>(fam: &F, w: &BraidWord, conv: OverStrand) -> Result<Matrix> {
    if w.n() != fam.n() {
        return Err(Error::GradingMismatch(format!(
            "family on {} strands, braid on {}",
            fam.n(),
            w.n()
        )));
    }
    let labels = over_strand_labels(w, conv);
    let mut pos: FxHashMap<(usize, usize), Matrix> = FxHashMap::default();
    let mut neg: FxHashMap<(usize, usize), Matrix> = FxHashMap::default();
    let mut factors = Vec::with_capacity(w.len());
    for (l, lab) in w.letters().iter().zip(&labels) {
        let key = (l.index, lab.over_strand);
        let g = match pos.get(&key) {
            Some(g) => g.clone(),
            None => {
                let g = fam.colored_generator(l.index, lab.over_strand)?;
                pos.insert(key, g.clone());
                g
            }
        };
        let g = if l.positive {
            g
        } else if let Some(gi) = neg.get(&key) {
            gi.clone()
        } else {
            let gi = g.inverse()?;
            neg.insert(key, gi.clone());
            gi
        };
        factors.push(g);
    }
    Matrix::product(fam.vars(), fam.dim(), factors)
}

/// Braid relations on n strands as (label, lhs, rhs): σ_iσ_{i+1}σ_i against
/// σ_{i+1}σ_iσ_{i+1}, and σ_iσ_j against σ_jσ_i for |i−j| ≥ 2.
pub fn braid_relation_pairs(n: usize) -> Vec<(String, BraidWord, BraidWord)> {
    let w = |xs: &[i64]| BraidWord::from_signed(n, xs).expect("indices in range");
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) as i64 {
        out.push((format!("braid {i},{}", i + 1), w(&[i, i + 1, i]), w(&[i + 1, i, i + 1])));
    }
    for i in 1..n as i64 {
        for j in i + 2..n as i64 {
            out.push((format!("commute {i},{j}"), w(&[i, j]), w(&[j, i])));
        }
    }
    out
}

/// Relations whose coloured products differ under `conv`, with residuals.
pub fn colored_relation_failures<F: ColoredFamily + ?Sized>(fam: &F, conv: OverStrand) -> Result<Vec<(String, Matrix)>> {
    let mut out = Vec::new();
    for (label, a, b) in braid_relation_pairs(fam.n()) {
        let r = colored_product(fam, &a, conv)?.sub(&colored_product(fam, &b, conv)?)?;
        if !r.is_zero() {
            out.push((label, r));
        }
    }
    Ok(out)
}

/// Relations violated by the induced map on some source block.
pub fn induced_relation_failures<F: InducedFamily + ?Sized>(fam: &F) -> Result<Vec<(String, Matrix)>> {
    let mut out = Vec::new();
    for (label, a, b) in braid_relation_pairs(fam.n()) {
        let d = induced(fam, &a, None)?.difference(&induced(fam, &b, None)?)?;
        for (src, blk) in d.blocks() {
            if !blk.matrix.is_zero() {
                out.push((format!("{label} on {src}"), blk.matrix.clone()));
            }
        }
    }
    Ok(out)
}
