//! Multivariate polynomials `F[x₁, …, x_n]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Field;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<F> {
    nvars: usize,
    terms: BTreeMap<Exponents, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    /// The variable `x_i`, 0-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, F::one())
    }

    pub fn monomial(exps: Exponents, c: F) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Elementary symmetric polynomial `e_k(x₁, …, x_n)`.
    pub fn elementary_symmetric(nvars: usize, k: usize) -> Self {
        let mut p = Self::zero(nvars);
        if k > nvars {
            return p;
        }
        let mut chosen = vec![false; nvars];
        fn rec<F: Field>(
            p: &mut MultiPoly<F>,
            chosen: &mut Vec<bool>,
            start: usize,
            left: usize,
        ) {
            if left == 0 {
                let e = chosen.iter().map(|&b| b as u32).collect();
                p.add_term(e, F::one());
                return;
            }
            for i in start..chosen.len() {
                chosen[i] = true;
                rec(p, chosen, i + 1, left - 1);
                chosen[i] = false;
            }
        }
        rec(&mut p, &mut chosen, 0, k);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Exponents, c: F) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length mismatch");
        if c.is_negligible() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_negligible() {
                    self.terms.remove(&exps);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree of the highest term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.clone() * c.clone());
        }
        out
    }

    /// Permute variables: `w · x_i = x_{w(i)}` for a 0-based one-line
    /// permutation `w`. This is a left action: `(uw)·p = u·(w·p)`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars, "permutation degree mismatch");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, &a) in e.iter().enumerate() {
                ne[perm[i]] = a;
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Swap `x_i` and `x_{i+1}` (0-based `i`).
    pub fn swap_adjacent(&self, i: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(i, i + 1);
        self.permute(&perm)
    }

    /// Divided difference `(p − s_i p)/(x_i − x_{i+1})`, 0-based `i`,
    /// computed monomial by monomial.
    pub fn divided_difference(&self, i: usize) -> Self {
        assert!(i + 1 < self.nvars, "divided difference index out of range");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let (a, b) = (e[i], e[i + 1]);
            if a == b {
                continue;
            }
            // x^a y^b = (xy)^m · x^{a-m} y^{b-m}; ∂(x^k) = Σ_{j<k} x^j y^{k-1-j},
            // ∂(y^k) = −∂(x^k).
            let m = a.min(b);
            let k = a.max(b) - m;
            let sign = if a > b { c.clone() } else { -c.clone() };
            for j in 0..k {
                let mut ne = e.clone();
                ne[i] = m + j;
                ne[i + 1] = m + k - 1 - j;
                out.add_term(ne, sign.clone());
            }
        }
        out
    }
}

impl<F: Field> Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

/// Prints `3*x1^2*x2 - 1/2*x1`, terms in descending monomial order.
impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.terms.iter().rev().map(|(e, c)| (c, e.as_slice())))
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

pub(crate) fn monomial_string(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| {
            if a == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, a)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub(crate) fn write_linear_combination<'a, F: Field + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a F, &'a [u32])>,
) -> fmt::Result {
    let mut first = true;
    for (c, e) in terms {
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(r) => (true, r.to_string()),
            None => (false, s),
        };
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
            (true, false) => {}
        }
        first = false;
        let mono = monomial_string(e);
        if mono == "1" {
            write!(f, "{mag}")?;
        } else if mag == "1" {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use crate::{QPoly, Rational};
    use num_traits::One;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> QPoly {
        QPoly::var(n, i)
    }

    #[test]
    fn permute_examples() {
        let p = &x(2, 0) * &x(2, 1);
        assert_eq!(p.permute(&[0, 1]), p);
        assert_eq!(x(2, 0).permute(&[1, 0]), x(2, 1));
        assert_eq!(p.permute(&[1, 0]), p);
    }

    #[test]
    fn permutation_action_composes() {
        // w = 231 (0-based [1,2,0]), u = 213 ([1,0,2]); uw = u∘w.
        let w = [1usize, 2, 0];
        let u = [1usize, 0, 2];
        let uw: Vec<usize> = w.iter().map(|&i| u[i]).collect();
        let p = &(&x(3, 0) * &x(3, 0)) + &x(3, 2);
        assert_eq!(p.permute(&uw), p.permute(&w).permute(&u));
    }

    #[test]
    fn elementary_symmetric_small() {
        let e2 = QPoly::elementary_symmetric(3, 2);
        assert_eq!(e2.terms().count(), 3);
        assert_eq!(QPoly::elementary_symmetric(3, 0), QPoly::one(3));
        assert!(QPoly::elementary_symmetric(2, 3).is_zero());
    }

    #[test]
    fn divided_difference_examples() {
        assert!(QPoly::one(2).divided_difference(0).is_zero());
        assert_eq!(x(2, 0).divided_difference(0), QPoly::one(2));
        assert_eq!(x(2, 1).divided_difference(0), QPoly::one(2).scale(&-Rational::one()));
    }

    #[test]
    fn display_format() {
        let p = &(&x(2, 0) * &x(2, 0)).scale(&Rational::from_integer(3.into())) * &x(2, 1);
        let q = &p - &x(2, 0).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(q.to_string(), "3*x1^2*x2 - 1/2*x1");
        assert_eq!(QPoly::zero(2).to_string(), "0");
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = QPoly> {
        prop::collection::vec((prop::collection::vec(0u32..=2, n), -5i64..=5), 0..5).prop_map(
            move |ts| {
                let mut p = QPoly::zero(n);
                for (e, c) in ts {
                    // keep total degree ≤ 4
                    let mut e = e;
                    while e.iter().sum::<u32>() > 4 {
                        let k = e.iter().position(|&a| a > 0).unwrap();
                        e[k] -= 1;
                    }
                    p.add_term(e, Rational::from_integer(c.into()));
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn multiplication_commutes(p in arb_poly(3), q in arb_poly(3)) {
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn multiplication_associates(p in arb_poly(3), q in arb_poly(3), r in arb_poly(3)) {
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        }

        #[test]
        fn divided_difference_inverts_multiplication(p in arb_poly(3), i in 0usize..2) {
            // (x_i − x_{i+1}) · ∂_i p = p − s_i p
            let root = &x(3, i) - &x(3, i + 1);
            let lhs = &root * &p.divided_difference(i);
            prop_assert_eq!(lhs, &p - &p.swap_adjacent(i));
        }
    }
}
