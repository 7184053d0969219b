//! The operations a suite is run against: the real ones, or a corrupted copy.

use std::cmp::Ordering;

use crate::mv::MvElement;

/// Primitive operations plus the derived ones, defined exactly as the
/// algebra defines them from `⊕`, `¬` and `⊑`.
pub trait Model: Sync {
    fn name(&self) -> String;
    fn oplus(&self, a: &MvElement, b: &MvElement) -> MvElement;
    fn neg(&self, a: &MvElement) -> MvElement;
    fn below(&self, x: &MvElement, y: &MvElement) -> bool;

    fn odot(&self, a: &MvElement, b: &MvElement) -> MvElement {
        self.neg(&self.oplus(&self.neg(a), &self.neg(b)))
    }

    /// `¬(¬a ⊕ b) ⊕ b`
    fn join(&self, a: &MvElement, b: &MvElement) -> MvElement {
        self.oplus(&self.neg(&self.oplus(&self.neg(a), b)), b)
    }

    fn meet(&self, a: &MvElement, b: &MvElement) -> MvElement {
        self.neg(&self.join(&self.neg(a), &self.neg(b)))
    }

    fn distance(&self, a: &MvElement, b: &MvElement) -> MvElement {
        self.oplus(&self.odot(a, &self.neg(b)), &self.odot(b, &self.neg(a)))
    }

    fn is_boolean(&self, a: &MvElement) -> bool {
        &self.oplus(a, a) == a
    }

    fn is_characteristic(&self, a: &MvElement) -> bool {
        self.meet(a, &self.neg(a)).is_zero()
    }

    fn natural_leq(&self, a: &MvElement, b: &MvElement) -> bool {
        self.oplus(&self.neg(a), b).is_one()
    }

    /// `(a ⊙ (a ⊕ a)) ⊕ (a ⊙ a)`
    fn sigma(&self, a: &MvElement) -> MvElement {
        let aa = self.oplus(a, a);
        self.oplus(&self.odot(a, &aa), &self.odot(a, a))
    }

    /// σ-iterates of `a` up to `cap` steps: the trace and the stabilization
    /// index if reached.
    fn trace(&self, a: &MvElement, cap: usize) -> (Vec<MvElement>, Option<usize>) {
        let mut steps = vec![a.clone()];
        for k in 0..=cap {
            let next = self.sigma(&steps[k]);
            let stable = next == steps[k];
            steps.push(next);
            if stable {
                return (steps, Some(k));
            }
        }
        (steps, None)
    }
}

/// The library's own operations.
#[derive(Clone, Copy, Debug, Default)]
pub struct Standard;

impl Model for Standard {
    fn name(&self) -> String {
        "standard".into()
    }

    fn oplus(&self, a: &MvElement, b: &MvElement) -> MvElement {
        a.oplus(b).expect("suites combine elements of one algebra")
    }

    fn neg(&self, a: &MvElement) -> MvElement {
        a.neg()
    }

    fn below(&self, x: &MvElement, y: &MvElement) -> bool {
        crate::spectra::below_order(x, y).expect("suites combine elements of one algebra")
    }
}

/// Single-operation corruptions used to show the suites can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// `⊕` truncates at `1 - 1/d` instead of 1.
    OplusBound,
    /// `¬a = 1 - a + 1/d`, clamped to 1.
    NegOffset,
    /// `⊑` with both implications reversed.
    BelowFlip,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::OplusBound, Mutation::NegOffset, Mutation::BelowFlip];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::OplusBound => "oplus-bound",
            Mutation::NegOffset => "neg-offset",
            Mutation::BelowFlip => "below-flip",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Mutant(pub Mutation);

fn rebuild(a: &MvElement, f: impl Fn(u32, u32, usize) -> u32) -> MvElement {
    let ds = a.algebra().denominators();
    let ks = (0..a.rank()).map(|i| f(a.numerators()[i], ds[i], i)).collect();
    a.algebra().element_from_numerators(ks).expect("mutant stays in carrier")
}

impl Model for Mutant {
    fn name(&self) -> String {
        format!("mutant:{}", self.0.name())
    }

    fn oplus(&self, a: &MvElement, b: &MvElement) -> MvElement {
        match self.0 {
            Mutation::OplusBound => rebuild(a, |x, d, i| (x + b.numerators()[i]).min(d - 1)),
            _ => Standard.oplus(a, b),
        }
    }

    fn neg(&self, a: &MvElement) -> MvElement {
        match self.0 {
            Mutation::NegOffset => rebuild(a, |x, d, _| (d - x + 1).min(d)),
            _ => Standard.neg(a),
        }
    }

    fn below(&self, x: &MvElement, y: &MvElement) -> bool {
        match self.0 {
            Mutation::BelowFlip => (0..x.rank()).all(|i| {
                let (xi, yi) = (x.numerators()[i], y.numerators()[i]);
                match y.side_of_half(i) {
                    Ordering::Less => xi >= yi,
                    Ordering::Greater => xi <= yi,
                    Ordering::Equal => true,
                }
            }),
            _ => Standard.below(x, y),
        }
    }
}
