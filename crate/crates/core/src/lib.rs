//! Exact symbolic toolkit for the conic-bundle parametrization of genus-6
//! Prym curves: intersection rings, Riemann-Roch, determinantal sextics and
//! the divisor-class ledger behind the slope bounds on the boundary of A6.

pub mod chow;
pub mod cli;
pub mod conicbundle;
pub mod exactalg;
pub mod moduli;
