//! Trainable parameters: value + gradient + Adadelta accumulators, a
//! name-indexed set of them, and the scratch buffer backprop writes into.

use crate::{Error, Matrix, Real, Result};

/// One trainable matrix with its gradient and Adadelta state.
#[derive(Debug, Clone)]
pub struct Param {
    pub value: Matrix,
    pub grad: Matrix,
    /// Running average of squared gradients.
    pub acc_grad: Matrix,
    /// Running average of squared updates.
    pub acc_update: Matrix,
}

impl Param {
    pub fn new(value: Matrix) -> Self {
        let (r, c) = value.shape();
        Param {
            value,
            grad: Matrix::zeros(r, c),
            acc_grad: Matrix::zeros(r, c),
            acc_update: Matrix::zeros(r, c),
        }
    }
}

/// Standard Adadelta update scaled by `lr`, applied in place.
///
/// The gradient is consumed (zeroed) by the step, so a fixed point with
/// zero gradient only decays the accumulators.
pub fn adadelta_step(p: &mut Param, rho: Real, eps: Real, lr: Real) -> Result<()> {
    debug_assert!(rho > 0.0 && rho < 1.0 && eps > 0.0);
    if !p.grad.is_finite() {
        return Err(Error::DivergentGradient("<unnamed>".into()));
    }
    let n = p.value.data().len();
    for i in 0..n {
        let g = p.grad.data()[i];
        let acc_g = rho * p.acc_grad.data()[i] + (1.0 - rho) * g * g;
        let delta = -((p.acc_update.data()[i] + eps).sqrt() / (acc_g + eps).sqrt()) * g;
        let acc_u = rho * p.acc_update.data()[i] + (1.0 - rho) * delta * delta;
        p.acc_grad.data_mut()[i] = acc_g;
        p.acc_update.data_mut()[i] = acc_u;
        p.value.data_mut()[i] += lr * delta;
        p.grad.data_mut()[i] = 0.0;
    }
    Ok(())
}

/// Opaque handle into a [`ParamSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParamId(usize);

impl ParamId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Name-indexed collection of [`Param`]s. Registration order is the
/// serialization order.
#[derive(Debug, Clone, Default)]
pub struct ParamSet {
    params: Vec<Param>,
    names: Vec<String>,
}

impl ParamSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: &str, value: Matrix) -> ParamId {
        assert!(
            !self.names.iter().any(|n| n == name),
            "duplicate parameter name {name}"
        );
        self.params.push(Param::new(value));
        self.names.push(name.to_string());
        ParamId(self.params.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn get(&self, id: ParamId) -> &Param {
        &self.params[id.0]
    }

    pub fn get_mut(&mut self, id: ParamId) -> &mut Param {
        &mut self.params[id.0]
    }

    pub fn value(&self, id: ParamId) -> &Matrix {
        &self.params[id.0].value
    }

    pub fn name(&self, id: ParamId) -> &str {
        &self.names[id.0]
    }

    pub fn id_of(&self, name: &str) -> Option<ParamId> {
        self.names.iter().position(|n| n == name).map(ParamId)
    }

    pub fn ids(&self) -> impl Iterator<Item = ParamId> {
        (0..self.params.len()).map(ParamId)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Param)> {
        self.names.iter().map(|n| n.as_str()).zip(&self.params)
    }

    pub fn iter_mut(&mut self) -> impl Iterator<Item = (&str, &mut Param)> {
        self.names
            .iter()
            .map(|n| n.as_str())
            .zip(&mut self.params)
    }

    pub fn zero_grads(&mut self) {
        for p in &mut self.params {
            p.grad.fill(0.0);
        }
    }

    /// Adds a scratch gradient buffer into the stored gradients.
    pub fn accumulate_grads(&mut self, buf: &GradBuffer) {
        assert_eq!(buf.grads.len(), self.params.len());
        for (p, g) in self.params.iter_mut().zip(&buf.grads) {
            p.grad
                .add_assign(g)
                .expect("gradient buffer shape drifted from parameter set");
        }
    }

    pub fn grad_global_norm(&self) -> Real {
        self.params
            .iter()
            .map(|p| p.grad.sq_norm())
            .sum::<Real>()
            .sqrt()
    }

    /// Scales all gradients so their global norm is at most `max_norm`.
    pub fn clip_global_norm(&mut self, max_norm: Real) {
        let norm = self.grad_global_norm();
        if norm > max_norm && norm > 0.0 {
            let s = max_norm / norm;
            for p in &mut self.params {
                p.grad.scale_assign(s);
            }
        }
    }

    /// One Adadelta step over every parameter; errors carry the name of
    /// the first parameter with a non-finite gradient.
    pub fn adadelta_step_all(&mut self, rho: Real, eps: Real, lr: Real) -> Result<()> {
        for (name, p) in self.names.iter().zip(&mut self.params) {
            adadelta_step(p, rho, eps, lr)
                .map_err(|_| Error::DivergentGradient(name.clone()))?;
        }
        Ok(())
    }
}

/// Gradient scratch space mirroring a [`ParamSet`]'s shapes. Backward
/// passes accumulate here while reading weights from the set, then the
/// buffer is folded in with [`ParamSet::accumulate_grads`].
#[derive(Debug, Clone)]
pub struct GradBuffer {
    grads: Vec<Matrix>,
}

impl GradBuffer {
    pub fn zeros_like(set: &ParamSet) -> Self {
        GradBuffer {
            grads: set
                .params
                .iter()
                .map(|p| {
                    let (r, c) = p.value.shape();
                    Matrix::zeros(r, c)
                })
                .collect(),
        }
    }

    pub fn zero(&mut self) {
        for g in &mut self.grads {
            g.fill(0.0);
        }
    }

    pub fn grad_mut(&mut self, id: ParamId) -> &mut Matrix {
        &mut self.grads[id.index()]
    }

    /// `g[id] += x^T . y`
    pub fn add_outer(&mut self, id: ParamId, x: &[Real], y: &[Real]) {
        crate::matrix::add_outer(&mut self.grads[id.index()], x, y);
    }

    /// Adds `v` into row `row` of the gradient (embedding update).
    pub fn add_row(&mut self, id: ParamId, row: usize, v: &[Real]) {
        for (g, x) in self.grads[id.index()].row_mut(row).iter_mut().zip(v) {
            *g += x;
        }
    }
}
