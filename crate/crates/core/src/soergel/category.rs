use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use super::decompose::{summands_from_kl, Decomposition, Remainder, Summand};
use super::endo::GradedAlgebra;
use super::hom::hom_graded;
use super::induct::induct;
use super::module::{GradedModule, ModuleMap};
use crate::coinvariant::CoinvariantRing;
use crate::error::{Error, Result};
use crate::hecke::{HeckeAlgebra, HeckeElement};
use crate::weyl::{Perm, Word};
use crate::IntLaurent;

/// Soergel modules for `S_n`: the coinvariant ring, the Hecke algebra used
/// as an oracle, and a cache of the indecomposables `D_w`.
pub struct SoergelCategory {
    ring: CoinvariantRing,
    hecke: HeckeAlgebra,
    indecomposables: RwLock<HashMap<Perm, Arc<GradedModule>>>,
}

impl SoergelCategory {
    pub fn new(n: usize) -> Result<Self> {
        Ok(SoergelCategory {
            ring: CoinvariantRing::build(n)?,
            hecke: HeckeAlgebra::new(n)?,
            indecomposables: RwLock::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn ring(&self) -> &CoinvariantRing {
        &self.ring
    }

    pub fn hecke(&self) -> &HeckeAlgebra {
        &self.hecke
    }

    pub fn trivial_module(&self) -> GradedModule {
        GradedModule::trivial(self.rank())
    }

    /// `C` as a module over itself, unshifted.
    pub fn regular_module(&self) -> GradedModule {
        let r = &self.ring;
        let degrees = (0..r.dim()).map(|i| r.basis_degree(i)).collect();
        let actions = (1..=r.rank()).map(|i| r.multiplication_matrix(i).clone()).collect();
        GradedModule::from_parts_unchecked(degrees, actions)
    }

    pub fn induct(&self, i: usize, m: &GradedModule) -> Result<GradedModule> {
        induct(&self.ring, i, m)
    }

    /// `Ind_{s_1} ⋯ Ind_{s_l} Q`, whose class is `b_{s_1} ⋯ b_{s_l}`.
    pub fn bott_samelson(&self, word: &Word) -> Result<GradedModule> {
        word.check_rank(self.rank())?;
        let mut m = self.trivial_module();
        for &i in word.letters().iter().rev() {
            m = self.induct(i, &m)?;
        }
        Ok(m)
    }

    /// `D_w`, cut out of the Bott–Samelson module of a reduced word of `w`.
    pub fn indecomposable(&self, w: &Perm) -> Result<Arc<GradedModule>> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: w.rank() });
        }
        if let Some(d) = self.indecomposables.read().expect("cache poisoned").get(w) {
            return Ok(d.clone());
        }
        let d = Arc::new(self.compute_indecomposable(w)?);
        let mut cache = self.indecomposables.write().expect("cache poisoned");
        Ok(cache.entry(w.clone()).or_insert(d).clone())
    }

    fn compute_indecomposable(&self, w: &Perm) -> Result<GradedModule> {
        if w.is_identity() {
            return Ok(self.trivial_module());
        }
        let word = w.reduced_word();
        let bs = self.bott_samelson(&word)?;
        let mut expected = summands_from_kl(&self.hecke.kl_expand(&self.hecke.product_bs(&word)?)?)?;
        let top = Summand::new(w.clone(), 0);
        let pos = expected
            .iter()
            .position(|s| *s == top)
            .ok_or_else(|| Error::Invariant(format!("b_{w} missing from its Bott–Samelson product")))?;
        expected.remove(pos);

        let mut rem = Remainder::new(&bs);
        for s in &expected {
            let d = self.indecomposable(&s.w)?;
            let (p, j) = rem
                .find_split(&d, &s.w, s.shift)?
                .ok_or_else(|| no_split(s, "expected summand not found"))?;
            rem.peel(&p, &j)?;
        }
        let d = rem.module;
        let expected_char = self.hecke.kl_basis(w)?.graded_dimension();
        if d.character() != expected_char {
            return Err(Error::Invariant(format!(
                "D_{w} has character {}, expected {expected_char}",
                d.character()
            )));
        }
        if hom_graded(&d, &d, 0)?.len() != 1 {
            return Err(Error::Invariant(format!("End⁰(D_{w}) is not one-dimensional")));
        }
        Ok(d)
    }

    /// `D_w⟨k⟩`.
    pub fn shifted_indecomposable(&self, s: &Summand) -> Result<GradedModule> {
        Ok(self.indecomposable(&s.w)?.shift(s.shift))
    }

    /// Split `M` into the given summands, failing loudly if any is missing or
    /// something is left over.
    pub fn decompose_expected(&self, m: &GradedModule, expected: &[Summand]) -> Result<Decomposition> {
        let mut rem = Remainder::new(m);
        let mut out = Decomposition {
            summands: Vec::new(),
            inclusions: Vec::new(),
            projections: Vec::new(),
        };
        for s in expected {
            let d = self.indecomposable(&s.w)?;
            let (p, j) = rem
                .find_split(&d, &s.w, s.shift)?
                .ok_or_else(|| no_split(s, "expected summand not found"))?;
            let (p, j) = rem.peel(&p, &j)?;
            out.summands.push(s.clone());
            out.projections.push(p);
            out.inclusions.push(j);
        }
        if rem.module.dim() != 0 {
            return Err(Error::Invariant(format!(
                "leftover of character {} after the expected summands",
                rem.module.character()
            )));
        }
        Ok(out)
    }

    /// Decompose a Bott–Samelson module using the KL expansion of its class
    /// for the expected summand list.
    pub fn decompose_bott_samelson(&self, word: &Word) -> Result<(GradedModule, Decomposition)> {
        let bs = self.bott_samelson(word)?;
        let expected = summands_from_kl(&self.hecke.kl_expand(&self.hecke.product_bs(word)?)?)?;
        let dec = self.decompose_expected(&bs, &expected)?;
        Ok((bs, dec))
    }

    /// Decompose without an oracle, by searching over every `D_x⟨k⟩` that
    /// fits inside the character of what is left.
    pub fn decompose(&self, m: &GradedModule) -> Result<Decomposition> {
        if m.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: m.rank() });
        }
        let mut rem = Remainder::new(m);
        let mut out = Decomposition {
            summands: Vec::new(),
            inclusions: Vec::new(),
            projections: Vec::new(),
        };
        let mut candidates = self.hecke.elements().to_vec();
        candidates.reverse();
        for x in &candidates {
            let d = self.indecomposable(x)?;
            let l = x.length() as i32;
            loop {
                let Some((&lo, &hi)) = rem.module.degrees().first().zip(rem.module.degrees().last()) else {
                    break;
                };
                let mut found = None;
                for k in (l - hi)..=(-l - lo) {
                    if !fits(&d.character().shift(-k), &rem.module.character()) {
                        continue;
                    }
                    if let Some(pj) = rem.find_split(&d, x, k)? {
                        found = Some((k, pj));
                        break;
                    }
                }
                let Some((k, (p, j))) = found else { break };
                let (p, j) = rem.peel(&p, &j)?;
                out.summands.push(Summand::new(x.clone(), k));
                out.projections.push(p);
                out.inclusions.push(j);
            }
        }
        if rem.module.dim() != 0 {
            return Err(Error::Invariant(format!(
                "no indecomposable splits off the remainder of character {}",
                rem.module.character()
            )));
        }
        Ok(out)
    }

    /// `Σ v^{−k} b_w` over the summands `D_w⟨k⟩` found by [`Self::decompose`].
    pub fn hecke_class(&self, m: &GradedModule) -> Result<HeckeElement> {
        let dec = self.decompose(m)?;
        let mut coords: BTreeMap<Perm, IntLaurent> = BTreeMap::new();
        for s in dec.summands {
            let c = coords.entry(s.w).or_insert_with(IntLaurent::zero);
            *c = &*c + &IntLaurent::v_pow(-s.shift);
        }
        Ok(self.hecke.from_kl_coords(&coords))
    }

    /// `Hom(D_x, D_y)` in degree `d`.
    pub fn hom_indecomposables(&self, x: &Perm, y: &Perm, d: i32) -> Result<Vec<ModuleMap>> {
        hom_graded(&*self.indecomposable(x)?, &*self.indecomposable(y)?, d)
    }

    /// `End(⊕ D_w⟨k⟩)` over the listed summands.
    pub fn endo_algebra(&self, objects: &[Summand]) -> Result<GradedAlgebra> {
        let modules = objects
            .iter()
            .map(|s| self.shifted_indecomposable(s))
            .collect::<Result<Vec<_>>>()?;
        GradedAlgebra::build(objects.to_vec(), modules)
    }

    /// `End(⊕_w D_w)` over all of `S_n`, objects in the order of
    /// [`HeckeAlgebra::elements`].
    pub fn full_endo_algebra(&self) -> Result<GradedAlgebra> {
        let objects: Vec<Summand> = self
            .hecke
            .elements()
            .iter()
            .map(|w| Summand::new(w.clone(), 0))
            .collect();
        self.endo_algebra(&objects)
    }
}

fn no_split(s: &Summand, reason: &str) -> Error {
    Error::NoSplitting {
        w: s.w.clone(),
        shift: s.shift,
        reason: reason.into(),
    }
}

/// Coefficientwise `a ≤ b`.
fn fits(a: &IntLaurent, b: &IntLaurent) -> bool {
    a.terms().all(|(k, c)| b.coeff(k) >= *c)
}
