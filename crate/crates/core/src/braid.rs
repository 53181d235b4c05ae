//! Braid words, permutations and over-strand labels.
//!
//! Conventions: a word acts right to left, `perm_of(uv) = perm_of(u) ∘ perm_of(v)`,
//! and a `Perm` sends a strand (its initial slot) to the slot where it ends.

use std::fmt;

use rand::{Rng, RngExt};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    /// 1-based generator index.
    pub index: usize,
    pub positive: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Self { index, positive: true }
    }

    pub fn neg(index: usize) -> Self {
        Self { index, positive: false }
    }

    pub fn inverse(self) -> Self {
        Self {
            index: self.index,
            positive: !self.positive,
        }
    }

    pub fn signed(self) -> i64 {
        if self.positive {
            self.index as i64
        } else {
            -(self.index as i64)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBounds("a braid needs at least one strand".into()));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= n) {
            return Err(Error::InvalidBounds(format!(
                "generator {} out of range for {n} strands",
                l.index
            )));
        }
        Ok(Self { n, letters })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, letters: vec![] }
    }

    pub fn from_signed(n: usize, letters: &[i64]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&x| {
                if x == 0 {
                    Err(Error::Parse("generator index 0".into()))
                } else {
                    Ok(Letter {
                        index: x.unsigned_abs() as usize,
                        positive: x > 0,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    /// Whitespace-separated signed generator indices, e.g. `"1 2 -1"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let ints = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad braid letter `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_signed(n, &ints)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "braids on {} and {} strands",
                self.n, other.n
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { n: self.n, letters })
    }

    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn perm(&self) -> Perm {
        perm_of(self)
    }

    pub fn is_pure(&self) -> bool {
        is_pure(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.signed().to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Bijection of {1..n}, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidBounds(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Self {
            images: images.iter().map(|x| x - 1).collect(),
        })
    }

    /// The transposition (i, i+1), 1-based.
    pub fn transposition(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of a 1-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x] = k;
        }
        Self { images: inv }
    }

    /// `(i, i+1) ∘ self`, i.e. swap the strands sitting in slots i and i+1.
    pub fn swap_slots(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        for x in images.iter_mut() {
            if *x == i - 1 {
                *x = i;
            } else if *x == i {
                *x = i - 1;
            }
        }
        Self { images }
    }

    /// All permutations of {1..n} in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

pub fn perm_of(w: &BraidWord) -> Perm {
    w.letters
        .iter()
        .rev()
        .fold(Perm::identity(w.n), |p, l| p.swap_slots(l.index))
}

pub fn is_pure(w: &BraidWord) -> bool {
    perm_of(w).is_identity()
}

/// `A_{r,s} = σ_{s−1}⋯σ_{r+1} σ_r² σ_{r+1}^{-1}⋯σ_{s−1}^{-1}`.
pub fn pure_generator(n: usize, r: usize, s: usize) -> Result<BraidWord> {
    if !(1 <= r && r < s && s <= n) {
        return Err(Error::InvalidBounds(format!(
            "A_{{{r},{s}}} needs 1 <= r < s <= {n}"
        )));
    }
    let mut letters: Vec<Letter> = (r + 1..s).rev().map(Letter::pos).collect();
    letters.push(Letter::pos(r));
    letters.push(Letter::pos(r));
    letters.extend((r + 1..s).map(Letter::neg));
    BraidWord::new(n, letters)
}

/// Which of the two strands entering a positive crossing σ_i passes over.
/// For σ_i^{-1} the roles are exchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverStrand {
    /// The strand in slot i (left) is over in σ_i.
    LeftSlot,
    /// The strand in slot i+1 (right) is over in σ_i.
    RightSlot,
}

impl OverStrand {
    pub fn other(self) -> Self {
        match self {
            Self::LeftSlot => Self::RightSlot,
            Self::RightSlot => Self::LeftSlot,
        }
    }

    /// Slot (i or i+1) of the over strand of `l`.
    pub fn over_slot(self, l: Letter) -> usize {
        match (self, l.positive) {
            (Self::LeftSlot, true) | (Self::RightSlot, false) => l.index,
            _ => l.index + 1,
        }
    }
}

impl fmt::Display for OverStrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::LeftSlot => "left-slot",
            Self::RightSlot => "right-slot",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossingLabel {
    pub position: usize,
    /// Initial index (colour) of the strand passing over, 1-based.
    pub over_strand: usize,
    /// The other strand in the crossing.
    pub under_strand: usize,
}

/// Labels every crossing, tracking strands through the word from right to left.
pub fn over_strand_labels(w: &BraidWord, conv: OverStrand) -> Vec<CrossingLabel> {
    // slots[p] = strand currently at slot p+1
    let mut slots: Vec<usize> = (1..=w.n).collect();
    let mut out = vec![
        CrossingLabel {
            position: 0,
            over_strand: 0,
            under_strand: 0
        };
        w.len()
    ];
    for (pos, l) in w.letters.iter().enumerate().rev() {
        let i = l.index;
        let over = conv.over_slot(*l);
        let under = if over == i { i + 1 } else { i };
        out[pos] = CrossingLabel {
            position: pos,
            over_strand: slots[over - 1],
            under_strand: slots[under - 1],
        };
        slots.swap(i - 1, i);
    }
    out
}

/// Deletes strand n from a pure braid: crossings involving it vanish, the
/// others are re-indexed.
pub fn forget_last_strand(w: &BraidWord) -> Result<BraidWord> {
    if !is_pure(w) {
        return Err(Error::NotPure);
    }
    let n = w.n;
    if n < 2 {
        return Err(Error::InvalidBounds("need at least two strands".into()));
    }
    let mut slots: Vec<usize> = (1..=n).collect();
    let mut kept: Vec<Letter> = Vec::with_capacity(w.len());
    for l in w.letters.iter().rev() {
        let i = l.index;
        if slots[i - 1] != n && slots[i] != n {
            let p = slots.iter().position(|&x| x == n).unwrap() + 1;
            let ni = if p < i { i - 1 } else { i };
            kept.push(Letter {
                index: ni,
                positive: l.positive,
            });
        }
        slots.swap(i - 1, i);
    }
    kept.reverse();
    BraidWord::new(n - 1, kept)
}

/// Cancels adjacent σ_i^ε σ_i^{-ε} pairs until none remain.
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    BraidWord {
        n: w.n,
        letters: out,
    }
}

/// Product of `len` random `A_{r,s}^{±1}`.
pub fn random_pure_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    let mut w = BraidWord::identity(n);
    for _ in 0..len {
        let r = rng.random_range(1..n);
        let s = rng.random_range(r + 1..=n);
        let g = pure_generator(n, r, s).expect("valid bounds");
        let g = if rng.random_bool(0.5) { g } else { g.inverse() };
        w = w.concat(&g).expect("same strand count");
    }
    w
}

/// Random pure word with 3–8 factors.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BraidWord {
    let len = rng.random_range(3..=8);
    random_pure_word(rng, n, len)
}

pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| Letter {
            index: rng.random_range(1..n),
            positive: rng.random_bool(0.5),
        })
        .collect();
    BraidWord { n, letters }
}
