//! Benchmark-only crate; see `benches/kernels.rs`.
//!
//! Shared fixture spaces live here so benchmarks stay in sync with the
//! library's construction paths.

use neareuclid::{NormSpec, Space};

/// Regular hexagon gauge on the plane.
pub fn hexagon() -> Space {
    let spec = NormSpec::polytope(vec![
        vec![1.0, 0.0],
        vec![0.5, 0.75_f64.sqrt()],
        vec![-0.5, 0.75_f64.sqrt()],
    ])
    .expect("hexagon functionals span the plane");
    Space::new(2, spec).expect("hexagon gauge is a norm")
}

/// Blend `(1 - t) l2 + t l4` in dimension `dim`.
pub fn blend_l2_l4(t: f64, dim: usize) -> Space {
    let spec = NormSpec::blend(
        NormSpec::pnorm(2.0).expect("p = 2"),
        NormSpec::pnorm(4.0).expect("p = 4"),
        t,
    )
    .expect("valid blend");
    Space::new(dim, spec).expect("blend of norms is a norm")
}
