//! Operation tables over the carrier of one algebra, indexed in
//! [`ChainProduct::elements`] order.

use crate::mv::{ChainProduct, MvElement};

use super::model::Model;

pub(crate) struct Tables {
    pub n: usize,
    pub elems: Vec<MvElement>,
    oplus: Vec<u32>,
    neg: Vec<u32>,
}

impl Tables {
    pub fn new(model: &dyn Model, alg: &ChainProduct) -> Self {
        let elems: Vec<MvElement> = alg.elements().collect();
        let n = elems.len();
        let neg = elems.iter().map(|a| model.neg(a).index() as u32).collect();
        let mut oplus = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                oplus.push(model.oplus(a, b).index() as u32);
            }
        }
        Tables {
            n,
            elems,
            oplus,
            neg,
        }
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.oplus[a * self.n + b] as usize
    }

    #[inline]
    pub fn ng(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn odot(&self, a: usize, b: usize) -> usize {
        self.ng(self.op(self.ng(a), self.ng(b)))
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.op(self.ng(self.op(self.ng(a), b)), b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.ng(self.join(self.ng(a), self.ng(b)))
    }

    #[inline]
    pub fn sigma(&self, a: usize) -> usize {
        self.op(self.odot(a, self.op(a, a)), self.odot(a, a))
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.n - 1
    }

    /// Index of the element with the given numerators.
    pub fn index_of(&self, numerators: impl Iterator<Item = u32>) -> usize {
        let ds = self.elems[0].algebra().denominators();
        numerators
            .zip(ds.iter())
            .fold(0usize, |acc, (k, &d)| acc * (d as usize + 1) + k as usize)
    }
}

/// `⊑` as a bit matrix: row `x` holds `{y : x ⊑ y}`.
pub(crate) struct BelowBits {
    words: usize,
    bits: Vec<u64>,
}

impl BelowBits {
    pub fn new(model: &dyn Model, elems: &[MvElement]) -> Self {
        let n = elems.len();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (x, ex) in elems.iter().enumerate() {
            for (y, ey) in elems.iter().enumerate() {
                if model.below(ex, ey) {
                    bits[x * words + y / 64] |= 1 << (y % 64);
                }
            }
        }
        BelowBits { words, bits }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }

    pub fn row(&self, x: usize) -> &[u64] {
        &self.bits[x * self.words..(x + 1) * self.words]
    }

    /// Members of row `x`, ascending.
    pub fn ones(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(x).iter().enumerate().flat_map(|(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
    }
}
