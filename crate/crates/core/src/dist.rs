//! Finite joint distributions over subsets of the variables (X, U, Y, Z)
//! with marginal/conditional extraction and information functionals in nats.

use crate::logdomain::{ln_p, log_sum_exp, xlnx};
use crate::ChannelError;
use serde::{Deserialize, Serialize};

/// Variable roles a [`JointDist`] axis can carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    U,
    Y,
    Z,
}

/// A pmf over the cartesian product of a list of named axes, stored row-major.
///
/// Conditional extraction follows the `0/0 = 0` convention: conditioning on an
/// event of zero probability yields an all-zero (unnormalized) slice.
#[derive(Clone, Debug)]
pub struct JointDist {
    axes: Vec<Var>,
    dims: Vec<usize>,
    pmf: Vec<f64>,
}

pub const MASS_TOL: f64 = 1e-12;

impl JointDist {
    pub fn new(axes: Vec<Var>, dims: Vec<usize>, pmf: Vec<f64>) -> Result<Self, ChannelError> {
        assert_eq!(axes.len(), dims.len());
        let n: usize = dims.iter().product();
        if pmf.len() != n {
            return Err(ChannelError::Shape(format!(
                "pmf has {} entries, dims {:?} require {}",
                pmf.len(),
                dims,
                n
            )));
        }
        if let Some((i, &v)) = pmf.iter().enumerate().find(|(_, &v)| !(v >= 0.0)) {
            return Err(ChannelError::Shape(format!(
                "pmf entry {} is negative or NaN ({})",
                i, v
            )));
        }
        let mass: f64 = pmf.iter().sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(ChannelError::Mass {得: mass });
        }
        Ok(Self { axes, dims, pmf })
    }

    pub fn axes(&self) -> &[Var] {
        &self.axes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    fn axis_index(&self, v: Var) -> usize {
        self.axes
            .iter()
            .position(|&a| a == v)
            .unwrap_or_else(|| panic!("axis {:?} not present in {:?}", v, self.axes))
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.dims[i + 1];
        }
        s
    }

    fn flat(&self, idx: &[usize]) -> usize {
        let strides = self.strides();
        idx.iter().zip(&strides).map(|(i, s)| i * s).sum()
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.pmf[self.flat(idx)]
    }

    fn for_each(&self, mut f: impl FnMut(&[usize], f64)) {
        let mut idx = vec![0usize; self.dims.len()];
        for (flat, &p) in self.pmf.iter().enumerate() {
            let mut rem = flat;
            for (k, &d) in self.dims.iter().enumerate().rev() {
                idx[k] = rem % d;
                rem /= d;
            }
            f(&idx, p);
        }
    }

    /// Marginal over `keep`, in the order given.
    pub fn marginal(&self, keep: &[Var]) -> JointDist {
        let kidx: Vec<usize> = keep.iter().map(|&v| self.axis_index(v)).collect();
        let kdims: Vec<usize> = kidx.iter().map(|&i| self.dims[i]).collect();
        let mut out = vec![0.0; kdims.iter().product()];
        let mut strides = vec![1usize; kdims.len()];
        for i in (0..kdims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * kdims[i + 1];
        }
        self.for_each(|idx, p| {
            let f: usize = kidx
                .iter()
                .zip(&strides)
                .map(|(&ai, &st)| idx[ai] * st)
                .sum();
            out[f] += p;
        });
        JointDist {
            axes: keep.to_vec(),
            dims: kdims,
            pmf: out,
        }
    }

    /// Table `P(target | given)` addressed as `[given-index][target-letter]`,
    /// where the given-index runs row-major over the `given` axes. Rows whose
    /// conditioning event has zero mass are all-zero.
    pub fn conditional(&self, target: Var, given: &[Var]) -> Vec<Vec<f64>> {
        let mut order = given.to_vec();
        order.push(target);
        let joint = self.marginal(&order);
        let tdim = *joint.dims.last().unwrap();
        let rows: usize = joint.dims[..joint.dims.len() - 1].iter().product();
        let mut out = vec![vec![0.0; tdim]; rows.max(1)];
        for r in 0..rows.max(1) {
            let base = r * tdim;
            let mass: f64 = joint.pmf[base..base + tdim].iter().sum();
            if mass > 0.0 {
                for t in 0..tdim {
                    out[r][t] = joint.pmf[base + t] / mass;
                }
            }
        }
        out
    }

    /// Joint entropy `H(axes)` in nats.
    pub fn entropy(&self) -> f64 {
        -self.pmf.iter().map(|&p| xlnx(p)).sum::<f64>()
    }

    /// Conditional entropy `H(targets | given)` in nats.
    pub fn cond_entropy(&self, targets: &[Var], given: &[Var]) -> f64 {
        let mut all = given.to_vec();
        all.extend_from_slice(targets);
        let hj = self.marginal(&all).entropy();
        let hg = self.marginal(given).entropy();
        hj - hg
    }

    /// Mutual information `I(a; b)` in nats.
    pub fn mutual_information(&self, a: Var, b: Var) -> f64 {
        let ha = self.marginal(&[a]).entropy();
        self.marginal(&[b]).entropy() + ha - self.marginal(&[a, b]).entropy()
    }

    /// `E_Q[log W]` for a log-weight table aligned with this distribution's
    /// axes. Returns `-inf` iff the distribution puts mass on a `-inf` cell;
    /// with `forbid_unsupported` that case is an error instead.
    pub fn expect_log(
        &self,
        log_weights: &[f64],
        forbid_unsupported: bool,
    ) -> Result<f64, ChannelError> {
        assert_eq!(log_weights.len(), self.pmf.len());
        let mut acc = 0.0;
        for (&p, &lw) in self.pmf.iter().zip(log_weights) {
            if p > 0.0 {
                if lw == f64::NEG_INFINITY {
                    if forbid_unsupported {
                        return Err(ChannelError::UnsupportedMass);
                    }
                    return Ok(f64::NEG_INFINITY);
                }
                acc += p * lw;
            }
        }
        Ok(acc)
    }

    /// Log of the probability that an iid draw lands anywhere the pmf does,
    /// mostly here for diagnostics.
    pub fn log_support_mass(&self, log_weights: &[f64]) -> f64 {
        let terms: Vec<f64> = self
            .pmf
            .iter()
            .zip(log_weights)
            .filter(|(&p, _)| p > 0.0)
            .map(|(&p, &lw)| ln_p(p) + lw)
            .collect();
        log_sum_exp(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logdomain::LN_2;

    fn uniform_pair() -> JointDist {
        JointDist::new(
            vec![Var::X, Var::U],
            vec![2, 2],
            vec![0.25, 0.25, 0.25, 0.25],
        )
        .unwrap()
    }

    #[test]
    fn independent_uniform_pair() {
        let q = uniform_pair();
        assert!((q.entropy() - 2.0 * LN_2).abs() < 1e-14);
        assert!(q.mutual_information(Var::X, Var::U).abs() < 1e-14);
    }

    #[test]
    fn copy_pair_has_full_mutual_information() {
        let q = JointDist::new(vec![Var::X, Var::U], vec![2, 2], vec![0.5, 0.0, 0.0, 0.5])
            .unwrap();
        assert!(q.cond_entropy(&[Var::X], &[Var::U]).abs() < 1e-14);
        assert!((q.mutual_information(Var::X, Var::U) - LN_2).abs() < 1e-14);
    }

    #[test]
    fn expected_log_conditional_is_channel_entropy() {
        // Q = P(u) P(x|u) for a symmetric binary pair with crossover 0.1.
        let b = 0.1;
        let pmf = vec![0.5 * (1.0 - b), 0.5 * b, 0.5 * b, 0.5 * (1.0 - b)];
        let q = JointDist::new(vec![Var::U, Var::X], vec![2, 2], pmf).unwrap();
        let lw = vec![
            (1.0_f64 - b).ln(),
            b.ln(),
            b.ln(),
            (1.0_f64 - b).ln(),
        ];
        let e = q.expect_log(&lw, false).unwrap();
        let h = -(b * b.ln() + (1.0 - b) * (1.0 - b).ln());
        assert!((e + h).abs() < 1e-14);
    }

    #[test]
    fn unsupported_mass_detected() {
        let q = uniform_pair();
        let lw = vec![0.0, f64::NEG_INFINITY, 0.0, 0.0];
        assert_eq!(q.expect_log(&lw, false).unwrap(), f64::NEG_INFINITY);
        assert!(q.expect_log(&lw, true).is_err());
    }

    #[test]
    fn conditional_zero_mass_row_is_zero() {
        let q = JointDist::new(vec![Var::X, Var::Z], vec![2, 2], vec![0.5, 0.5, 0.0, 0.0])
            .unwrap();
        let c = q.conditional(Var::Z, &[Var::X]);
        assert_eq!(c[1], vec![0.0, 0.0]);
        assert!((c[0][0] - 0.5).abs() < 1e-15);
    }
}
