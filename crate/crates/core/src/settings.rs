/// Resource caps for Gröbner computations. Exceeding either is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest total degree of an S-pair lcm that may be processed.
    pub max_degree: u32,
    /// Largest number of S-pairs reduced in a single computation.
    pub max_pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_degree: 40, max_pairs: 200_000 }
    }
}

/// Knobs shared by the local-algebra and intersection layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub budget: Budget,
    /// Hilbert–Samuel values are sampled for `n = 1..=max_n`.
    pub max_n: usize,
    /// Number of consecutive equal differences required for stabilization.
    pub window: usize,
    /// Degrees `0..=certificate_degree` checked by the tangent-cone certificate.
    pub certificate_degree: usize,
    /// Degrees `0..=convolution_degree` compared by the Samuel check.
    pub convolution_degree: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            budget: Budget::default(),
            max_n: 24,
            window: 3,
            certificate_degree: 12,
            convolution_degree: 15,
        }
    }
}
