//! CODATA 2018 exact and recommended values, SI units.

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Apéry's constant ζ(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_2;
