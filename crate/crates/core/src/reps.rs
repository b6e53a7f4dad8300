//! Matrix models of the weight modules `S_n`, `V_α` and `τ`.
//!
//! Bases start at the highest weight vector: `s_0`, `v_0`. `F` lowers,
//! `E` raises, `H` and `K` are diagonal.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::Mat;
use crate::qcore::{nearest_integer, QParams};
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModuleKind {
    /// `S_n`, `0 ≤ n ≤ r−1`.
    Simple(u32),
    /// `V_α`; typical unless `α ∈ ℤ∖rℤ`.
    Typical(Scalar),
    /// The one-dimensional module of weight `r`.
    Tau,
}

#[derive(Debug, Clone)]
pub struct WeightModule {
    params: QParams,
    kind: ModuleKind,
    weights: Vec<Scalar>,
    e: Mat,
    f: Mat,
}

impl PartialEq for WeightModule {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.kind == other.kind
    }
}

impl WeightModule {
    /// `S_n`: weights `n−2i`, `F s_i = s_{i+1}`, `E s_i = {i}{n+1−i}/{1}² s_{i−1}`.
    pub fn simple(params: QParams, n: u32) -> Result<Self> {
        if n >= params.r() {
            return Err(Error::OutOfRange { what: "simple module index", value: n as i64 });
        }
        let d = n as usize + 1;
        let weights = (0..d).map(|i| Scalar::new(n as f64 - 2.0 * i as f64, 0.0)).collect();
        let one2 = params.qnum_re(1.0).powu(2);
        let e_coeff = |i: usize| params.qnum_re(i as f64) * params.qnum_re((n as usize + 1 - i) as f64) / one2;
        Ok(Self::from_action(params, ModuleKind::Simple(n), weights, e_coeff))
    }

    /// `V_α`: weights `α+r−1−2i`, `F v_i = v_{i+1}`, `E v_i = {i}{i−α}/{1}² v_{i−1}`.
    pub fn typical(params: QParams, alpha: Scalar) -> Self {
        let r = params.r() as usize;
        let weights = (0..r).map(|i| alpha + (r as f64 - 1.0 - 2.0 * i as f64)).collect();
        let one2 = params.qnum_re(1.0).powu(2);
        let e_coeff = |i: usize| params.qnum_re(i as f64) * params.qnum(Scalar::new(i as f64, 0.0) - alpha) / one2;
        Self::from_action(params, ModuleKind::Typical(alpha), weights, e_coeff)
    }

    /// `τ`: `E = F = 0`, `H = r`.
    pub fn tau(params: QParams) -> Self {
        let weights = alloc::vec![Scalar::new(params.r() as f64, 0.0)];
        Self::from_action(params, ModuleKind::Tau, weights, |_| Scalar::new(0.0, 0.0))
    }

    fn from_action(
        params: QParams,
        kind: ModuleKind,
        weights: Vec<Scalar>,
        e_coeff: impl Fn(usize) -> Scalar,
    ) -> Self {
        let d = weights.len();
        let mut e = Mat::zeros(d, d);
        let mut f = Mat::zeros(d, d);
        for i in 1..d {
            e[(i - 1, i)] = e_coeff(i);
            f[(i, i - 1)] = Scalar::new(1.0, 0.0);
        }
        Self { params, kind, weights, e, f }
    }

    pub fn params(&self) -> QParams {
        self.params
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn mat_e(&self) -> &Mat {
        &self.e
    }

    pub fn mat_f(&self) -> &Mat {
        &self.f
    }

    pub fn mat_h(&self) -> Mat {
        Mat::diag(&self.weights)
    }

    pub fn mat_k(&self) -> Mat {
        Mat::diag(&self.k_diag(1.0))
    }

    pub fn mat_k_inv(&self) -> Mat {
        Mat::diag(&self.k_diag(-1.0))
    }

    /// `K^{1−r}`.
    pub fn mat_pivot(&self) -> Mat {
        Mat::diag(&self.pivot_diag())
    }

    /// Diagonal of `K^s`.
    pub fn k_diag(&self, s: f64) -> Vec<Scalar> {
        self.weights.iter().map(|&w| self.params.qpow(w * s)).collect()
    }

    pub fn pivot_diag(&self) -> Vec<Scalar> {
        self.k_diag(1.0 - self.params.r() as f64)
    }

    /// `qdim = tr(K^{1−r})`.
    pub fn qdim(&self) -> Scalar {
        self.pivot_diag().into_iter().sum()
    }

    /// Absolutely irreducible modules have scalar (1-1)-tangle invariants.
    /// All modules built here are; atypical `V_k` needs the cut vector `v_0`.
    pub fn is_typical(&self) -> bool {
        match self.kind {
            ModuleKind::Typical(a) => !self.params.is_pole(a),
            _ => false,
        }
    }

    /// The `ℂ/2ℤ` class containing every weight.
    pub fn degree(&self) -> crate::Degree {
        crate::Degree::new(self.weights[0]).canonical()
    }

    /// Entry sizes of the defining relations:
    /// `[H,E]−2E`, `[H,F]+2F`, `KEK⁻¹−q²E`, `[E,F]−(K−K⁻¹)/{1}`, `E^r`, `F^r`.
    pub fn relation_residuals(&self) -> [f64; 6] {
        let h = self.mat_h();
        let k = self.mat_k();
        let kinv = self.mat_k_inv();
        let q2 = self.params.qpow_re(2.0);
        let one = self.params.qnum_re(1.0);
        let r = self.params.r();
        let he = &h.commutator(&self.e) - &self.e.scale(Scalar::new(2.0, 0.0));
        let hf = &h.commutator(&self.f) + &self.f.scale(Scalar::new(2.0, 0.0));
        let kek = &(&(&k * &self.e) * &kinv) - &self.e.scale(q2);
        let ef = &self.e.commutator(&self.f) - &(&k - &kinv).scale(one.inv());
        [he.max_abs(), hf.max_abs(), kek.max_abs(), ef.max_abs(), self.e.pow(r).max_abs(), self.f.pow(r).max_abs()]
    }

    /// For integral `V_k` with `0 ≤ k ≤ r−1`, the span of `v_k, …, v_{r−1}`
    /// is the image of `S_{r−1−k}`. Returns how far `E`, `F` leak out of it.
    pub fn submodule_leak(&self, first: usize) -> Result<f64> {
        if first > self.dim() {
            return Err(Error::Shape(format!("basis index {first} beyond dimension {}", self.dim())));
        }
        let mut leak: f64 = 0.0;
        for m in [&self.e, &self.f] {
            for col in first..self.dim() {
                for row in 0..first {
                    leak = leak.max(m[(row, col)].norm());
                }
            }
        }
        Ok(leak)
    }

    /// `V_k` for an integer `k`, if this is one.
    pub fn integral_label(&self) -> Option<i64> {
        match self.kind {
            ModuleKind::Typical(a) => nearest_integer(a),
            _ => None,
        }
    }
}
