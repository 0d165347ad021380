//! Exact and Monte Carlo entanglement statistics of random unitary channels
//! and random pure states.
//!
//! The library has five layers:
//!
//! * [`symgroup`] — permutations, cycle statistics, Catalan numbers, genus
//!   census of the symmetric group, Möbius weights.
//! * [`weingarten`] — exact rational Weingarten functions of the unitary
//!   group, symmetric-group characters, and irrep dimensions.
//! * [`entropy`] — unified entropy families on spectra and density matrices,
//!   Choi-state reductions of a unitary, majorization and continuity helpers.
//! * [`moments`] — exact design-averaged trace-power moments for channels
//!   (Choi states) and pure bipartite states, plus analytic bound reports.
//! * [`ensembles`] — seeded samplers (Haar unitaries, Haar states, Pauli,
//!   Clifford, local circuits, partial scramblers), frame potentials, and
//!   reproducible Monte Carlo estimation.

pub mod ensembles;
pub mod entropy;
pub mod jsonio;
pub mod moments;
pub mod symgroup;
pub mod weingarten;
