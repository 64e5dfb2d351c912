use num_traits::Zero;

use super::scalar::Scalar;

/// Dense bilinear map `X × Y → Z` in fixed bases: entry `(i, j, k)` is the
/// coefficient of `z_k` in the product of `x_i` and `y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    left: usize,
    right: usize,
    out: usize,
    data: Vec<Scalar>,
}

impl Bilinear {
    pub fn zeros(left: usize, right: usize, out: usize) -> Self {
        Bilinear { left, right, out, data: vec![Scalar::zero(); left * right * out] }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let idx = self.index(i, j, k);
        self.data[idx] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, v: &Scalar) {
        let idx = self.index(i, j, k);
        self.data[idx] += v;
    }

    /// Product of two basis vectors.
    pub fn basis(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.right + j) * self.out;
        &self.data[start..start + self.out]
    }

    pub fn set_basis(&mut self, i: usize, j: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.out);
        let start = (i * self.right + j) * self.out;
        self.data[start..start + self.out].clone_from_slice(v);
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.left);
        assert_eq!(y.len(), self.right);
        let mut out = vec![Scalar::zero(); self.out];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, v) in out.iter_mut().zip(self.basis(i, j)) {
                    if !v.is_zero() {
                        *o += &c * v;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Scalar)> {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(idx, v)| {
            let k = idx % self.out;
            let j = (idx / self.out) % self.right;
            let i = idx / (self.out * self.right);
            ((i, j, k), v)
        })
    }

    /// Structure constants in new bases. Columns of `left` and `right` are the
    /// new basis vectors in old coordinates; `out_inv` converts old output
    /// coordinates to new ones.
    pub fn change_basis(
        &self,
        left: &super::Matrix,
        right: &super::Matrix,
        out_inv: &super::Matrix,
    ) -> Bilinear {
        let mut b = Bilinear::zeros(left.cols(), right.cols(), out_inv.rows());
        for i in 0..b.left {
            let xi: Vec<Scalar> = (0..self.left).map(|r| left.get(r, i)).collect();
            for j in 0..b.right {
                let yj: Vec<Scalar> = (0..self.right).map(|r| right.get(r, j)).collect();
                let z = out_inv.apply(&self.apply(&xi, &yj));
                b.set_basis(i, j, &z);
            }
        }
        b
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        assert!(i < self.left && j < self.right && k < self.out, "tensor index out of range");
        (i * self.right + j) * self.out + k
    }
}
