#pragma once

#include <algorithm>

// One tolerance policy for the whole library. Adjacency matrices are tiny
// integer matrices, so these are loose at the scales we run (n <= 62 for
// spectral code, n <= 24 for game code).
namespace energame::tol {

// Eigensolver residual / orthonormality budget scales with n.
inline constexpr double kEigCoeff = 1e-10;
// Scalar sums and cross-path comparisons.
inline constexpr double kSum = 1e-8;
// Symmetry of reconstructed matrices.
inline constexpr double kSym = 1e-9;
// A violation only counts as a counterexample if it survives recomputation
// at this threshold with the tightened high-precision solver.
inline constexpr double kReverify = 1e-10;
// Default for core(); see below.
inline constexpr double kCoreDefault = 1e-8;

inline double eig(int n) { return kEigCoeff * std::max(1, n); }

// Core / audit slack tolerance: 1e-8 absolute unless the ENERGAME_TOL
// environment variable overrides it (parsed once, for experiments).
double core();

}  // namespace energame::tol
