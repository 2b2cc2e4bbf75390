//! The symmetric group `S_n` as the Weyl group of type `A_{n−1}`.
//!
//! Elements are permutations in one-line notation; the simple reflection
//! `s_i` (1-based, `1 ≤ i < n`) swaps `i` and `i+1`. Products compose as
//! functions, `(uw)(j) = u(w(j))`, so right multiplication by `s_i` swaps
//! the entries at positions `i` and `i+1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits;

/// A permutation of `{1, …, n}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    one_line: Vec<u8>,
}

/// A word in the simple reflections, letters 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            one_line: (0..n as u8).collect(),
        }
    }

    /// Build from 1-based one-line notation; fails unless the input is a
    /// bijection of `{1, …, n}`.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in values {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Parse(format!("{values:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Perm {
            one_line: values.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    /// The simple reflection `s_i` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "simple reflection s_{i} out of range for S_{n}");
        let mut p = Self::identity(n);
        p.one_line.swap(i - 1, i);
        p
    }

    /// The longest element `w₀ = n ⋯ 2 1`.
    pub fn longest(n: usize) -> Self {
        Perm {
            one_line: (0..n as u8).rev().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.one_line.len()
    }

    /// Image of `j` (0-based).
    pub fn apply(&self, j: usize) -> usize {
        self.one_line[j] as usize
    }

    /// 0-based one-line notation as `usize`s.
    pub fn images(&self) -> Vec<usize> {
        self.one_line.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.rank(), other.rank(), "rank mismatch in compose");
        Perm {
            one_line: other.one_line.iter().map(|&j| self.one_line[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.rank()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Perm { one_line: inv }
    }

    /// `self · s_i`.
    pub fn mul_simple_right(&self, i: usize) -> Perm {
        let mut p = self.clone();
        p.one_line.swap(i - 1, i);
        p
    }

    /// `s_i · self`.
    pub fn mul_simple_left(&self, i: usize) -> Perm {
        let mut p = self.clone();
        for v in p.one_line.iter_mut() {
            if *v as usize == i - 1 {
                *v = i as u8;
            } else if *v as usize == i {
                *v = (i - 1) as u8;
            }
        }
        p
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.rank();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.one_line[i] > self.one_line[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `{i : ℓ(w s_i) < ℓ(w)}`.
    pub fn right_descents(&self) -> BTreeSet<usize> {
        (1..self.rank())
            .filter(|&i| self.one_line[i - 1] > self.one_line[i])
            .collect()
    }

    /// `{i : ℓ(s_i w) < ℓ(w)}`.
    pub fn left_descents(&self) -> BTreeSet<usize> {
        self.inverse().right_descents()
    }

    /// One reduced word, lexicographically smallest among those found by
    /// peeling the smallest right descent.
    pub fn reduced_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(&i) = w.right_descents().iter().next() {
            letters.push(i);
            w = w.mul_simple_right(i);
        }
        letters.reverse();
        Word(letters)
    }

    /// Every reduced word of `self`.
    pub fn reduced_words(&self) -> BTreeSet<Word> {
        if self.is_identity() {
            return BTreeSet::from([Word::default()]);
        }
        let mut out = BTreeSet::new();
        for i in self.right_descents() {
            for mut word in self.mul_simple_right(i).reduced_words() {
                word.0.push(i);
                out.insert(word);
            }
        }
        out
    }

    /// Bruhat order `self ≤ w`, by the lifting property: for a right
    /// descent `s` of `w`, `x ≤ w` iff `min(x, xs) ≤ ws`.
    pub fn bruhat_leq(&self, w: &Perm) -> bool {
        assert_eq!(self.rank(), w.rank(), "rank mismatch in Bruhat comparison");
        let mut x = self.clone();
        let mut w = w.clone();
        loop {
            if x.length() > w.length() {
                return false;
            }
            let Some(&s) = w.right_descents().iter().next() else {
                return x.is_identity();
            };
            if x.right_descents().contains(&s) {
                x = x.mul_simple_right(s);
            }
            w = w.mul_simple_right(s);
        }
    }

    pub fn bruhat_lt(&self, w: &Perm) -> bool {
        self != w && self.bruhat_leq(w)
    }
}

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Fails if a letter is outside `1..n`.
    pub fn check_rank(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i == 0 || i >= n) {
            Some(i) => Err(Error::Parse(format!("letter {i} out of range for S_{n}"))),
            None => Ok(()),
        }
    }

    /// `s_{a₁} s_{a₂} ⋯ s_{a_l}` in `S_n`.
    pub fn evaluate(&self, n: usize) -> Perm {
        self.0
            .iter()
            .fold(Perm::identity(n), |w, &i| w.mul_simple_right(i))
    }

    /// Fold with `w ∗ s = ws` if `ws > w`, else `w`.
    pub fn demazure_product(&self, n: usize) -> Perm {
        self.0.iter().fold(Perm::identity(n), |w, &i| {
            if w.right_descents().contains(&i) {
                w
            } else {
                w.mul_simple_right(i)
            }
        })
    }

    pub fn is_reduced(&self, n: usize) -> bool {
        self.evaluate(n).length() == self.len()
    }
}

/// All of `S_n`, sorted by length and then one-line notation.
pub fn all_elements(n: usize) -> Result<Vec<Perm>> {
    limits::check_rank(n)?;
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permutations(&mut current, 0, &mut out);
    out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn permutations(current: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == current.len() {
        out.push(Perm {
            one_line: current.iter().map(|&v| v as u8).collect(),
        });
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permutations(current, k + 1, out);
        current.swap(k, i);
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.one_line {
            if self.rank() <= 9 {
                write!(f, "{}", v + 1)?;
            } else {
                write!(f, "{},", v + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// One-line notation with single digits, e.g. `"321"`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad permutation {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        Perm::from_one_line(&values)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Comma-separated letters, e.g. `"1,2,1"`; the empty string is the
    /// empty word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Word::default());
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}
