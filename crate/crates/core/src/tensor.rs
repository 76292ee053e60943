//! Dense multilinear maps stored row-major, output coordinate fastest.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{axpy, zero_vec, Scalar, Vector};

/// Odometer over `{0..d}^n` in row-major order.
pub struct Tuples {
    d: usize,
    cur: Vec<usize>,
    done: bool,
}

pub fn tuples(d: usize, n: usize) -> Tuples {
    Tuples { d, cur: vec![0; n], done: d == 0 && n > 0 }
}

impl Iterator for Tuples {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut k = self.cur.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.cur[k] += 1;
            if self.cur[k] < self.d {
                break;
            }
            self.cur[k] = 0;
        }
        Some(out)
    }
}

/// Flat position of a basis tuple whose slots have the given sizes.
pub fn flat_index(sizes: &[usize], tuple: &[usize]) -> usize {
    sizes.iter().zip(tuple).fold(0, |acc, (&s, &t)| acc * s + t)
}

/// Evaluates the multilinear map `t` (input slot sizes `sizes`, output
/// dimension `out`) on arbitrary vectors, branching only on nonzero
/// coordinates.
pub fn eval(t: &[Scalar], sizes: &[usize], out: usize, args: &[&[Scalar]]) -> Vector {
    debug_assert_eq!(sizes.len(), args.len());
    let mut acc = zero_vec(out);
    eval_rec(t, sizes, out, args, 0, 0, &Scalar::from_integer(1.into()), &mut acc);
    acc
}

#[allow(clippy::too_many_arguments)]
fn eval_rec(
    t: &[Scalar],
    sizes: &[usize],
    out: usize,
    args: &[&[Scalar]],
    slot: usize,
    offset: usize,
    coeff: &Scalar,
    acc: &mut [Scalar],
) {
    if slot == sizes.len() {
        axpy(acc, coeff, &t[offset * out..(offset + 1) * out]);
        return;
    }
    for (i, x) in args[slot].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let c = coeff * x;
        eval_rec(t, sizes, out, args, slot + 1, offset * sizes[slot] + i, &c, acc);
    }
}

pub fn bilinear(t: &[Scalar], na: usize, nb: usize, out: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
    eval(t, &[na, nb], out, &[x, y])
}

pub fn basis_value<'a>(t: &'a [Scalar], sizes: &[usize], out: usize, tuple: &[usize]) -> &'a [Scalar] {
    let i = flat_index(sizes, tuple);
    &t[i * out..(i + 1) * out]
}

/// A multilinear map with its slot sizes and output dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multilinear {
    sizes: Vec<usize>,
    out: usize,
    data: Vec<Scalar>,
}

fn multilinear_len(sizes: &[usize], out: usize) -> Result<usize> {
    sizes
        .iter()
        .try_fold(out, |acc, &s| acc.checked_mul(s))
        .ok_or_else(|| Error::Invalid("multilinear map too large".into()))
}

impl Multilinear {
    pub fn new(sizes: Vec<usize>, out: usize, data: Vec<Scalar>) -> Result<Self> {
        let need = multilinear_len(&sizes, out)?;
        if data.len() != need {
            return Err(Error::Dimension(format!(
                "map of shape {sizes:?} -> {out} needs {need} entries, got {}",
                data.len()
            )));
        }
        Ok(Multilinear { sizes, out, data })
    }

    pub fn zeros(sizes: Vec<usize>, out: usize) -> Self {
        let n = multilinear_len(&sizes, out).expect("size");
        Multilinear { sizes, out, data: zero_vec(n) }
    }

    pub fn from_fn(sizes: Vec<usize>, out: usize, mut f: impl FnMut(&[usize]) -> Vector) -> Self {
        let mut m = Self::zeros(sizes, out);
        let mut k = 0;
        for t in box_tuples(&m.sizes) {
            let v = f(&t);
            assert_eq!(v.len(), out, "value length");
            for x in v {
                m.data[k] = x;
                k += 1;
            }
        }
        m
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn out(&self) -> usize {
        self.out
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn at(&self, tuple: &[usize]) -> &[Scalar] {
        basis_value(&self.data, &self.sizes, self.out, tuple)
    }

    pub fn eval(&self, args: &[&[Scalar]]) -> Vector {
        eval(&self.data, &self.sizes, self.out, args)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn same_shape(&self, other: &Multilinear) -> bool {
        self.sizes == other.sizes && self.out == other.out
    }
}

/// Odometer over a box with per-slot sizes.
pub struct BoxTuples {
    sizes: Vec<usize>,
    cur: Vec<usize>,
    done: bool,
}

pub fn box_tuples(sizes: &[usize]) -> BoxTuples {
    BoxTuples { sizes: sizes.to_vec(), cur: vec![0; sizes.len()], done: sizes.contains(&0) }
}

impl Iterator for BoxTuples {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let mut k = self.cur.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.cur[k] += 1;
            if self.cur[k] < self.sizes[k] {
                break;
            }
            self.cur[k] = 0;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{int, unit_vec};

    #[test]
    fn odometer_order() {
        let all: Vec<_> = tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0).count(), 1);
        assert_eq!(tuples(0, 2).count(), 0);
        assert_eq!(tuples(3, 3).count(), 27);
    }

    #[test]
    fn eval_matches_basis_lookup() {
        // t(e_i, e_j) = (i + 2j) e_0 on a 2x2 -> 1 map.
        let t: Vec<Scalar> = (0..4).map(|p| int((p / 2 + 2 * (p % 2)) as i64)).collect();
        for i in 0..2 {
            for j in 0..2 {
                let v = bilinear(&t, 2, 2, 1, &unit_vec(2, i), &unit_vec(2, j));
                assert_eq!(v, basis_value(&t, &[2, 2], 1, &[i, j]).to_vec());
            }
        }
        let x = vec![int(1), int(3)];
        let y = vec![int(2), int(-1)];
        // sum_ij x_i y_j (i + 2j)
        let expected = int(1 * 2 * 0 + 1 * -1 * 2 + 3 * 2 * 1 + 3 * -1 * 3);
        assert_eq!(bilinear(&t, 2, 2, 1, &x, &y), vec![expected]);
    }

    #[test]
    fn multilinear_box_order() {
        let m = Multilinear::from_fn(vec![2, 3], 1, |t| vec![int((10 * t[0] + t[1]) as i64)]);
        assert_eq!(m.at(&[1, 2]), &[int(12)]);
        assert_eq!(m.data().len(), 6);
        assert_eq!(m.eval(&[&unit_vec(2, 1), &[int(1), int(1), int(0)]]), vec![int(21)]);
        assert_eq!(box_tuples(&[2, 0]).count(), 0);
        assert!(Multilinear::new(vec![2], 2, vec![int(0)]).is_err());
    }
}
