//! Derivative tables ("jets") with exact arithmetic rules.
//!
//! A [`Jet`] stores f(x), f′(x), …, f⁽ᴷ⁾(x) for one scalar function at one
//! point. Products follow the Leibniz rule, quotients invert it, and
//! composition goes through truncated Taylor series, so every derivative
//! entry is analytic rather than a finite difference.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Div, Mul, Neg, Sub};

/// Value and derivatives of a scalar function at a single point.
///
/// `coeffs[k]` holds the k-th derivative; the order K is `coeffs.len() - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    x: f64,
    coeffs: Vec<f64>,
}

impl Jet {
    /// Builds a jet from raw derivative entries. `coeffs` must be non-empty.
    pub fn new(x: f64, coeffs: Vec<f64>) -> Jet {
        assert!(!coeffs.is_empty(), "a jet needs at least the order-0 entry");
        Jet { x, coeffs }
    }

    /// The constant function `value`.
    pub fn constant(x: f64, value: f64, order: usize) -> Jet {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Jet { x, coeffs }
    }

    /// The identity function t ↦ t, evaluated at `x`.
    pub fn identity(x: f64, order: usize) -> Jet {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = x;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Jet { x, coeffs }
    }

    /// The affine function t ↦ a·t + b, evaluated at `x`.
    pub fn affine(x: f64, a: f64, b: f64, order: usize) -> Jet {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = a * x + b;
        if order >= 1 {
            coeffs[1] = a;
        }
        Jet { x, coeffs }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// Highest derivative order carried by this jet.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// f(x).
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// f⁽ᵏ⁾(x). Panics if `k` exceeds the carried order.
    pub fn deriv(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Copy restricted to derivatives `0..=order`.
    pub fn truncate(&self, order: usize) -> Jet {
        assert!(order <= self.order(), "cannot extend a jet by truncation");
        Jet {
            x: self.x,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// The jet of f′, one order lower.
    pub fn derivative(&self) -> Jet {
        assert!(self.order() >= 1, "derivative needs at least order 1");
        Jet {
            x: self.x,
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            x: self.x,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Integer power by repeated squaring. `powi(0)` is the constant 1.
    pub fn powi(&self, n: u32) -> Jet {
        let mut acc = Jet::constant(self.x, 1.0, self.order());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// 1/f. The caller is responsible for keeping f away from zero.
    pub fn recip(&self) -> Jet {
        &Jet::constant(self.x, 1.0, self.order()) / self
    }

    /// exp(f) via the recurrence h⁽ⁿ⁺¹⁾ = Σₖ C(n,k) f⁽ᵏ⁺¹⁾ h⁽ⁿ⁻ᵏ⁾.
    pub fn exp(&self) -> Jet {
        let order = self.order();
        let mut h = vec![0.0; order + 1];
        h[0] = libm::exp(self.coeffs[0]);
        for n in 0..order {
            let mut acc = 0.0;
            let mut binom = 1.0;
            for k in 0..=n {
                acc += binom * self.coeffs[k + 1] * h[n - k];
                binom = binom * (n - k) as f64 / (k + 1) as f64;
            }
            h[n + 1] = acc;
        }
        Jet {
            x: self.x,
            coeffs: h,
        }
    }

    /// Chain rule: the jet of g∘u at x, where `outer` is the jet of g at
    /// u₀ = `inner.value()` and `inner` is the jet of u at x.
    ///
    /// Implemented by Horner evaluation of the outer Taylor series in the
    /// truncated polynomial algebra of the inner series.
    pub fn compose(outer: &Jet, inner: &Jet) -> Jet {
        debug_assert!(
            outer.x == inner.value(),
            "outer jet must sit at the inner jet's value"
        );
        let order = outer.order().min(inner.order());
        let b = taylor_from_derivs(&outer.coeffs[..=order]);
        let mut a = taylor_from_derivs(&inner.coeffs[..=order]);
        a[0] = 0.0; // expand around u0
        let mut r = vec![0.0; order + 1];
        r[0] = b[order];
        for j in (0..order).rev() {
            r = taylor_mul(&r, &a, order);
            r[0] += b[j];
        }
        Jet {
            x: inner.x,
            coeffs: derivs_from_taylor(&r),
        }
    }
}

fn taylor_from_derivs(derivs: &[f64]) -> Vec<f64> {
    let mut fact = 1.0;
    derivs
        .iter()
        .enumerate()
        .map(|(k, d)| {
            if k > 0 {
                fact *= k as f64;
            }
            d / fact
        })
        .collect()
}

fn derivs_from_taylor(taylor: &[f64]) -> Vec<f64> {
    let mut fact = 1.0;
    taylor
        .iter()
        .enumerate()
        .map(|(k, t)| {
            if k > 0 {
                fact *= k as f64;
            }
            t * fact
        })
        .collect()
}

fn taylor_mul(a: &[f64], b: &[f64], order: usize) -> Vec<f64> {
    let mut out = vec![0.0; order + 1];
    for (i, ai) in a.iter().enumerate().take(order + 1) {
        if *ai == 0.0 {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn common_order(a: &Jet, b: &Jet) -> usize {
    debug_assert!(
        a.x == b.x,
        "jet arithmetic requires matching evaluation points"
    );
    a.order().min(b.order())
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let order = common_order(self, rhs);
        Jet {
            x: self.x,
            coeffs: (0..=order)
                .map(|k| self.coeffs[k] + rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let order = common_order(self, rhs);
        Jet {
            x: self.x,
            coeffs: (0..=order)
                .map(|k| self.coeffs[k] - rhs.coeffs[k])
                .collect(),
        }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let order = common_order(self, rhs);
        let mut coeffs = vec![0.0; order + 1];
        for (n, c) in coeffs.iter_mut().enumerate() {
            let mut acc = 0.0;
            let mut binom = 1.0;
            for k in 0..=n {
                acc += binom * self.coeffs[k] * rhs.coeffs[n - k];
                binom = binom * (n - k) as f64 / (k + 1) as f64;
            }
            *c = acc;
        }
        Jet { x: self.x, coeffs }
    }
}

impl Div for &Jet {
    type Output = Jet;
    fn div(self, rhs: &Jet) -> Jet {
        let order = common_order(self, rhs);
        let g0 = rhs.coeffs[0];
        let mut h = vec![0.0; order + 1];
        for n in 0..=order {
            let mut acc = self.coeffs[n];
            let mut binom = 1.0;
            for k in 0..n {
                acc -= binom * h[k] * rhs.coeffs[n - k];
                binom = binom * (n - k) as f64 / (k + 1) as f64;
            }
            h[n] = acc / g0;
        }
        Jet {
            x: self.x,
            coeffs: h,
        }
    }
}
