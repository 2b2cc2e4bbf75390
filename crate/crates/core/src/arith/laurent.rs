//! Laurent polynomials in one variable `v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// `Σ c_k v^k` with finitely many nonzero `c_k`. No zero coefficient is
/// ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<R> {
    coeffs: BTreeMap<i32, R>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(R::one(), 0)
    }

    /// `c · v^k`.
    pub fn monomial(c: R, k: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    /// `v^k`.
    pub fn v_pow(k: i32) -> Self {
        Self::monomial(R::one(), k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, R)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, k: i32, c: R) {
        if c.is_negligible() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_negligible() {
                    self.coeffs.remove(&k);
                } else {
                    *x = s;
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    pub fn coeff(&self, k: i32) -> R {
        self.coeffs.get(&k).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &R)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Substitute `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&k, x)| (k, x.clone() * c.clone())))
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> R {
        self.coeffs.values().fold(R::zero(), |acc, c| acc + c.clone())
    }

    /// Map coefficients into another ring.
    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentPoly<S> {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(&k, c)| (k, f(c))))
    }
}

impl<R: Ring + PartialOrd> LaurentPoly<R> {
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| *c >= R::zero())
    }
}

impl<R: Ring> Add for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn add(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl<R: Ring> Sub for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn sub(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl<R: Ring> Neg for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn neg(self) -> LaurentPoly<R> {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl<R: Ring> Mul for &LaurentPoly<R> {
    type Output = LaurentPoly<R>;
    fn mul(self, rhs: &LaurentPoly<R>) -> LaurentPoly<R> {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, x.clone() * y.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Ring> $tr for LaurentPoly<R> {
            type Output = LaurentPoly<R>;
            fn $m(self, rhs: LaurentPoly<R>) -> LaurentPoly<R> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Ring> Zero for LaurentPoly<R> {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for LaurentPoly<R> {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

/// Sparse canonical form, ascending exponents: `v^-1+2v^3`, `1-v`, `0`.
impl<R: Ring> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.coeffs.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let unit = mag == "1";
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "v")?;
                    } else {
                        write!(f, "v^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Parses the format produced by `Display`.
impl<R: Ring + FromStr> FromStr for LaurentPoly<R> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid Laurent polynomial {s:?}"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut out = LaurentPoly::zero();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut i = 1;
        let mut pieces = Vec::new();
        while i <= bytes.len() {
            // split before a sign that is not an exponent sign
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                pieces.push(&s[start..i]);
                start = i;
            }
            i += 1;
        }
        for piece in pieces {
            let (neg, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            let (coef_str, exp) = match body.find('v') {
                None => (body, 0),
                Some(p) => {
                    let rest = &body[p + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i32>()
                            .map_err(|_| bad())?
                    };
                    (&body[..p], exp)
                }
            };
            let coef_str = coef_str.trim_end_matches('*');
            let mut c = if coef_str.is_empty() {
                R::one()
            } else {
                coef_str.parse::<R>().map_err(|_| bad())?
            };
            if neg {
                c = -c;
            }
            out.add_term(exp, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use crate::{IntLaurent, Integer};
    use proptest::prelude::*;

    fn lp(terms: &[(i32, i64)]) -> IntLaurent {
        IntLaurent::from_terms(terms.iter().map(|&(k, c)| (k, Integer::from(c))))
    }

    #[test]
    fn bar_examples() {
        assert_eq!(lp(&[(1, 1)]).bar(), lp(&[(-1, 1)]));
        let sym = lp(&[(1, 1), (-1, 1)]);
        assert_eq!(sym.bar(), sym);
        assert_eq!(lp(&[(3, 2), (0, 1)]).bar(), lp(&[(-3, 2), (0, 1)]));
    }

    #[test]
    fn display_canonical() {
        assert_eq!(lp(&[(1, 1), (-1, 1)]).to_string(), "v^-1+v");
        assert_eq!(lp(&[(-1, 1), (3, 2)]).to_string(), "v^-1+2v^3");
        assert_eq!(lp(&[(0, 1), (1, -1)]).to_string(), "1-v");
        assert_eq!(lp(&[]).to_string(), "0");
        assert_eq!(lp(&[(0, -3), (2, -1)]).to_string(), "-3-v^2");
    }

    #[test]
    fn parse_examples() {
        for s in ["v^-1+v", "v^-1+2v^3", "1-v", "-3-v^2", "0"] {
            let p: IntLaurent = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        let p: IntLaurent = "v^3+v".parse().unwrap();
        assert_eq!(p.to_string(), "v+v^3");
        assert!("v^".parse::<IntLaurent>().is_err());
        assert!("".parse::<IntLaurent>().is_err());
    }

    #[test]
    fn zero_coefficients_never_stored() {
        let p = &lp(&[(2, 1)]) - &lp(&[(2, 1)]);
        assert!(p.is_zero());
        assert_eq!(lp(&[(1, 0)]).terms().count(), 0);
    }

    fn arb_laurent() -> impl Strategy<Value = IntLaurent> {
        prop::collection::vec((-6i32..=6, -9i64..=9), 0..6).prop_map(|t| lp(&t))
    }

    proptest! {
        #[test]
        fn bar_is_involutive(p in arb_laurent()) {
            prop_assert_eq!(p.bar().bar(), p);
        }

        #[test]
        fn bar_is_multiplicative(p in arb_laurent(), q in arb_laurent()) {
            prop_assert_eq!((&p * &q).bar(), &p.bar() * &q.bar());
        }

        #[test]
        fn display_parse_roundtrip(p in arb_laurent()) {
            let back: IntLaurent = p.to_string().parse().unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
