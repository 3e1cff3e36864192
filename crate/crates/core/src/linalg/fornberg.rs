//! Finite-difference weights on arbitrary integer offsets.

use num_traits::{FromPrimitive, Num};

use crate::error::{domain, invalid, Result};

/// Weights for the derivative of order `order` at offset 0.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilWeights<T> {
    pub offsets: Vec<i64>,
    pub weights: Vec<T>,
}

impl<T: Clone + Num> StencilWeights<T> {
    /// Applies the stencil to samples indexed relative to the centre.
    pub fn apply<F: Fn(i64) -> T>(&self, f: F) -> T {
        self.offsets
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&o, w)| acc + w.clone() * f(o))
    }
}

/// Fornberg's recursion for weights of the `order`-th derivative at 0 on
/// nodes `offsets` (unit spacing). Works over any field, so exact rational
/// weights are available.
pub fn fornberg_weights<T>(order: usize, offsets: &[i64]) -> Result<StencilWeights<T>>
where
    T: Clone + Num + FromPrimitive,
{
    let n = offsets.len();
    if n <= order {
        return Err(invalid(format!(
            "{n} nodes cannot resolve a derivative of order {order}"
        )));
    }
    for (i, a) in offsets.iter().enumerate() {
        if offsets[..i].contains(a) {
            return Err(domain(format!("duplicate stencil offset {a}")));
        }
    }
    let num = |v: i64| T::from_i64(v).expect("integer fits scalar");
    let z: Vec<T> = offsets.iter().map(|&o| num(o)).collect();
    let mut c = vec![vec![T::zero(); order + 1]; n];
    c[0][0] = T::one();
    let mut c1 = T::one();
    let mut c4 = z[0].clone();
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = T::one();
        let c5 = c4.clone();
        c4 = z[i].clone();
        for j in 0..i {
            let c3 = z[i].clone() - z[j].clone();
            c2 = c2 * c3.clone();
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    let kk = num(k as i64);
                    c[i][k] = c1.clone()
                        * (kk * c[i - 1][k - 1].clone() - c5.clone() * c[i - 1][k].clone())
                        / c2.clone();
                }
                c[i][0] = T::zero() - c1.clone() * c5.clone() * c[i - 1][0].clone() / c2.clone();
            }
            for k in (1..=mn).rev() {
                let kk = num(k as i64);
                c[j][k] = (c4.clone() * c[j][k].clone() - kk * c[j][k - 1].clone()) / c3.clone();
            }
            c[j][0] = c4.clone() * c[j][0].clone() / c3.clone();
        }
        c1 = c2;
    }
    Ok(StencilWeights {
        offsets: offsets.to_vec(),
        weights: c.into_iter().map(|row| row[order].clone()).collect(),
    })
}
