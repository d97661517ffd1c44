//! Float math routed through std or libm depending on features.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("natcorpus-core needs either the `std` (default) or `libm` feature");

#[cfg(feature = "std")]
mod imp {
    pub fn log2(x: f64) -> f64 {
        x.log2()
    }

    pub fn ln(x: f64) -> f64 {
        x.ln()
    }

    pub fn exp(x: f64) -> f64 {
        x.exp()
    }

    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }

    pub fn round(x: f64) -> f64 {
        x.round()
    }
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
mod imp {
    pub fn log2(x: f64) -> f64 {
        libm::log2(x)
    }

    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }

    pub fn exp(x: f64) -> f64 {
        libm::exp(x)
    }

    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }

    pub fn round(x: f64) -> f64 {
        libm::round(x)
    }
}

pub(crate) use imp::{exp, ln, log2, round, sqrt};
