use std::sync::Arc;

use crate::matgrp::{matrix, FiniteField};

/// Largest supported encoded element, in bytes.
pub const MAX_WIDTH: usize = 256;

/// How group elements are encoded as byte strings and multiplied.
#[derive(Clone, Debug)]
pub enum Representation {
    /// Image tables, `out[i] = b[a[i]]` (left factor acts first).
    Perm { degree: usize },
    /// Row-major matrices over a finite field.
    Matrix { n: usize, field: Arc<FiniteField> },
    /// Cosets of a central subgroup; each coset is stored as its
    /// lexicographically least element `z·g`.
    Quotient {
        base: Box<Representation>,
        center: Vec<Vec<u8>>,
    },
}

impl Representation {
    /// Encoded size of one element.
    pub fn width(&self) -> usize {
        match self {
            Representation::Perm { degree } => *degree,
            Representation::Matrix { n, .. } => n * n,
            Representation::Quotient { base, .. } => base.width(),
        }
    }

    pub fn identity(&self) -> Vec<u8> {
        match self {
            Representation::Perm { degree } => (0..*degree).map(|i| i as u8).collect(),
            Representation::Matrix { n, .. } => {
                let mut v = vec![0u8; n * n];
                for i in 0..*n {
                    v[i * n + i] = 1;
                }
                v
            }
            Representation::Quotient { base, .. } => base.identity(),
        }
    }

    /// Writes `a·b` into `out`, which must have length [`Self::width`].
    pub fn multiply(&self, a: &[u8], b: &[u8], out: &mut [u8]) {
        match self {
            Representation::Perm { .. } => {
                for (o, &x) in out.iter_mut().zip(a) {
                    *o = b[x as usize];
                }
            }
            Representation::Matrix { n, field } => matrix::mul_into(field, *n, a, b, out),
            Representation::Quotient { base, .. } => {
                base.multiply(a, b, out);
                self.canonicalize(out);
            }
        }
    }

    /// Replaces `x` by the canonical representative of its coset. A no-op
    /// outside quotients.
    pub fn canonicalize(&self, x: &mut [u8]) {
        if let Representation::Quotient { base, center } = self {
            let w = x.len();
            let mut best = [0u8; MAX_WIDTH];
            let mut tmp = [0u8; MAX_WIDTH];
            best[..w].copy_from_slice(x);
            for z in center {
                base.multiply(z, x, &mut tmp[..w]);
                if tmp[..w] < best[..w] {
                    best[..w].copy_from_slice(&tmp[..w]);
                }
            }
            x.copy_from_slice(&best[..w]);
        }
    }

    /// The representation elements are ultimately stored in.
    pub fn base(&self) -> &Representation {
        match self {
            Representation::Quotient { base, .. } => base.base(),
            other => other,
        }
    }
}
