use super::Crystal;
use crate::rootsys::Weight;

/// `C₁ ⊗ ⋯ ⊗ C_r` with Kashiwara's convention: `f_i` lands on the leftmost
/// factor `b_k` with `φ_i(b_k) > ε_i(b_{k+1} ⊗ ⋯ ⊗ b_r)`, `e_i` on the
/// leftmost factor with `φ_i(b_k) ≥ ε_i(b_{k+1} ⊗ ⋯ ⊗ b_r)`.
#[derive(Clone, Debug)]
pub struct TensorCrystal<C> {
    factors: Vec<C>,
}

impl<C: Crystal> TensorCrystal<C> {
    pub fn new(factors: Vec<C>) -> Self {
        assert!(!factors.is_empty(), "tensor product needs at least one factor");
        let rank = factors[0].rank();
        assert!(factors.iter().all(|c| c.rank() == rank), "mixed root systems");
        TensorCrystal { factors }
    }

    pub fn factors(&self) -> &[C] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    // ε_i of each suffix b_k ⊗ ⋯ ⊗ b_r, with a trailing 0 for the empty suffix.
    fn suffix_epsilon(&self, b: &[C::Elem], i: usize) -> Vec<i64> {
        let r = b.len();
        let mut out = vec![0; r + 1];
        for k in (0..r).rev() {
            let c = &self.factors[k];
            let own = c.epsilon(&b[k], i);
            if k == r - 1 {
                out[k] = own;
            } else {
                let pair = c.phi(&b[k], i) - c.epsilon(&b[k], i);
                out[k] = own.max(out[k + 1] - pair);
            }
        }
        out
    }

    fn act(
        &self,
        b: &[C::Elem],
        i: usize,
        choose: impl Fn(i64, i64) -> bool,
        op: impl Fn(&C, &C::Elem) -> Option<C::Elem>,
    ) -> Option<Vec<C::Elem>> {
        let suffix = self.suffix_epsilon(b, i);
        let r = b.len();
        for k in 0..r {
            if k == r - 1 || choose(self.factors[k].phi(&b[k], i), suffix[k + 1]) {
                let moved = op(&self.factors[k], &b[k])?;
                let mut out = b.to_vec();
                out[k] = moved;
                return Some(out);
            }
        }
        unreachable!()
    }
}

impl<C: Crystal> Crystal for TensorCrystal<C> {
    type Elem = Vec<C::Elem>;

    fn rank(&self) -> usize {
        self.factors[0].rank()
    }

    fn f(&self, b: &Vec<C::Elem>, i: usize) -> Option<Vec<C::Elem>> {
        self.act(b, i, |phi, eps| phi > eps, |c, x| c.f(x, i))
    }

    fn e(&self, b: &Vec<C::Elem>, i: usize) -> Option<Vec<C::Elem>> {
        self.act(b, i, |phi, eps| phi >= eps, |c, x| c.e(x, i))
    }

    fn epsilon(&self, b: &Vec<C::Elem>, i: usize) -> i64 {
        self.suffix_epsilon(b, i)[0]
    }

    fn phi(&self, b: &Vec<C::Elem>, i: usize) -> i64 {
        let wt = self.wt(b);
        self.epsilon(b, i) + wt.coords()[i - 1]
    }

    fn wt(&self, b: &Vec<C::Elem>) -> Weight {
        let mut acc = self.factors[0].wt(&b[0]);
        for (c, x) in self.factors.iter().zip(b).skip(1) {
            acc = &acc + &c.wt(x);
        }
        acc
    }
}
