//! Special functions and quadrature/Monte-Carlo engines.

pub mod gamma;
pub mod quadrature;
pub mod semiline;
pub mod sphere;
pub mod tanhsinh;

pub use gamma::{beta_fn, log_gamma, sphere_area};
pub use quadrature::{gauss_jacobi, gauss_jacobi_01, KahanSum, Quadrature1D};
pub use semiline::{de_semiline_n, de_semiline_n_c, integrate_semiline};
pub use sphere::{mc_sphere, sphere_integrate_zonal, SphereRule};
pub use tanhsinh::{tanh_sinh, tanh_sinh_offsets};
