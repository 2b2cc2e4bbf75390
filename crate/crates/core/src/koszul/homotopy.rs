//! Hom in the homotopy category of formal complexes.

use crate::arith::SparseEchelon;
use crate::error::{Error, Result};
use crate::koszul::formal::{flatten, FormalCategory, FormalComplex, FormalMatrix, HomSpace};
use crate::{q, QMatrix, Rational};

use std::collections::BTreeMap;
use std::sync::Arc;

/// One block of unknowns: coefficients of a map `X^c[s] → Y^{c+k}[t]`.
struct Block {
    c: i32,
    s: usize,
    t: usize,
    offset: usize,
    space: Arc<HomSpace>,
}

struct Unknowns {
    blocks: Vec<Block>,
    index: BTreeMap<(i32, usize, usize), usize>,
    len: usize,
}

impl Unknowns {
    fn new(cat: &FormalCategory, x: &FormalComplex, y: &FormalComplex, k: i32) -> Result<Self> {
        let side = x.side();
        let mut blocks = Vec::new();
        let mut index = BTreeMap::new();
        let mut len = 0;
        for (&c, src) in x.terms() {
            for (t, tg) in y.term(c + k).iter().enumerate() {
                for (s, sg) in src.iter().enumerate() {
                    let space = cat.hom_rule(side, sg, tg)?;
                    if space.dim() == 0 {
                        continue;
                    }
                    index.insert((c, s, t), blocks.len());
                    blocks.push(Block { c, s, t, offset: len, space: space.clone() });
                    len += space.dim();
                }
            }
        }
        Ok(Unknowns { blocks, index, len })
    }

    fn block(&self, c: i32, s: usize, t: usize) -> Option<&Block> {
        self.index.get(&(c, s, t)).map(|&i| &self.blocks[i])
    }
}

fn sign(k: i32) -> Rational {
    if k % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

/// `dim Hom_{K^b}(X, Y[k])`: chain maps `f: X^c → Y^{c+k}` with
/// `(−1)^k d_Y f = f d_X`, modulo `(−1)^k d_Y h + h d_X`.
pub fn hom_homotopy_formal(cat: &FormalCategory, x: &FormalComplex, y: &FormalComplex, k: i32) -> Result<usize> {
    if x.side() != y.side() {
        return Err(Error::SideMismatch(format!("{} vs {}", x.side(), y.side())));
    }
    let f = Unknowns::new(cat, x, y, k)?;
    if f.len == 0 {
        return Ok(0);
    }
    let eps = sign(k);
    let dx: BTreeMap<i32, FormalMatrix> = x
        .terms()
        .keys()
        .map(|&c| Ok((c, cat.differential(x, c)?)))
        .collect::<Result<_>>()?;
    let dy: BTreeMap<i32, FormalMatrix> = y
        .terms()
        .keys()
        .map(|&c| Ok((c - 1, cat.differential(y, c - 1)?)))
        .chain(y.terms().keys().map(|&c| Ok((c, cat.differential(y, c)?))))
        .collect::<Result<_>>()?;

    // Cycle condition, one matrix equation per (c, s, t') with t' ∈ Y^{c+k+1}.
    // Column of unknown j holds the flattened contribution of basis map j.
    let mut cycles = SparseEchelon::<Rational>::new(f.len);
    for (&c, src) in x.terms() {
        for s in 0..src.len() {
            for tp in 0..y.term(c + k + 1).len() {
                let mut columns: Vec<(usize, QMatrix)> = Vec::new();
                if let Some(d) = dy.get(&(c + k)) {
                    for t in 0..y.term(c + k).len() {
                        let e = &d.entries[tp][t];
                        if e.is_zero() {
                            continue;
                        }
                        if let Some(b) = f.block(c, s, t) {
                            for (j, m) in b.space.basis.iter().enumerate() {
                                columns.push((b.offset + j, e.matmul(m).scale(&eps)));
                            }
                        }
                    }
                }
                if let Some(d) = dx.get(&c) {
                    for sp in 0..x.term(c + 1).len() {
                        let e = &d.entries[sp][s];
                        if e.is_zero() {
                            continue;
                        }
                        if let Some(b) = f.block(c + 1, sp, tp) {
                            for (j, m) in b.space.basis.iter().enumerate() {
                                columns.push((b.offset + j, -&m.matmul(e)));
                            }
                        }
                    }
                }
                add_equations(&mut cycles, &columns);
            }
        }
    }
    let cycle_dim = f.len - cycles.rank();
    if cycle_dim == 0 {
        return Ok(0);
    }

    // Boundaries: image of each homotopy basis map, in f-coordinates.
    let h = Unknowns::new(cat, x, y, k - 1)?;
    let mut boundaries = SparseEchelon::<Rational>::new(f.len);
    for hb in &h.blocks {
        for m in &hb.space.basis {
            let mut image: Vec<(usize, Rational)> = Vec::new();
            // (−1)^k d_Y ∘ h at position (c, s) → Y^{c+k}[t2]
            if let Some(d) = dy.get(&(hb.c + k - 1)) {
                for t2 in 0..y.term(hb.c + k).len() {
                    let e = &d.entries[t2][hb.t];
                    if !e.is_zero() {
                        push_coords(&f, hb.c, hb.s, t2, &e.matmul(m).scale(&eps), &mut image)?;
                    }
                }
            }
            // h ∘ d_X at position (c − 1, s0) → Y^{c+k−1}[t]
            if let Some(d) = dx.get(&(hb.c - 1)) {
                for s0 in 0..x.term(hb.c - 1).len() {
                    let e = &d.entries[hb.s][s0];
                    if !e.is_zero() {
                        push_coords(&f, hb.c - 1, s0, hb.t, &m.matmul(e), &mut image)?;
                    }
                }
            }
            boundaries.insert(image);
        }
    }
    Ok(cycle_dim - boundaries.rank())
}

fn add_equations(sys: &mut SparseEchelon<Rational>, columns: &[(usize, QMatrix)]) {
    let Some((_, first)) = columns.first() else {
        return;
    };
    let entries = first.rows() * first.cols();
    let flat: Vec<(usize, Vec<Rational>)> = columns.iter().map(|(j, m)| (*j, flatten(m))).collect();
    for e in 0..entries {
        let row: Vec<(usize, Rational)> = flat
            .iter()
            .filter(|(_, v)| v[e] != q(0))
            .map(|(j, v)| (*j, v[e].clone()))
            .collect();
        if !row.is_empty() {
            sys.insert(row);
        }
    }
}

fn push_coords(
    f: &Unknowns,
    c: i32,
    s: usize,
    t: usize,
    m: &QMatrix,
    out: &mut Vec<(usize, Rational)>,
) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let b = f
        .block(c, s, t)
        .ok_or_else(|| Error::Invariant("homotopy image outside the allowed Hom space".into()))?;
    let coords = b
        .space
        .coords(m)
        .ok_or_else(|| Error::Invariant("homotopy image outside the allowed Hom space".into()))?;
    out.extend(coords.into_iter().enumerate().map(|(j, x)| (b.offset + j, x)));
    Ok(())
}
