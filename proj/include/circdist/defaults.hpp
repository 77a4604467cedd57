#pragma once

#include <cstddef>

namespace circdist::defaults {

// Antiderivative tables for quadrature-defined map families.
inline constexpr std::size_t kTableSamples = std::size_t{1} << 16;

// Composite-Simpson subintervals for metric integrals.
inline constexpr std::size_t kQuadIntervals = std::size_t{1} << 14;

// Grid for sup-norm estimates (one refinement doubling is applied on top).
inline constexpr std::size_t kSupGrid = std::size_t{1} << 12;

// Grid for periodic-point scans.
inline constexpr std::size_t kPeriodicGrid = std::size_t{1} << 12;

// Inversion: bracketed bisection down to this width, then Newton polish.
inline constexpr double kInvertBisectTol = 1e-8;
inline constexpr double kInvertNewtonTol = 1e-12;
inline constexpr int kInvertMaxIter = 200;

// Rotation number estimation.
inline constexpr int kRotationIters = 10000;
inline constexpr double kRotationTol = 1e-7;
inline constexpr int kRationalQMax = 1000;
inline constexpr double kPeriodicResidualTol = 1e-8;

// Hyperbolicity threshold on |log multiplier|.
inline constexpr double kTolHyp = 1e-6;

// Distortion report defaults.
inline constexpr int kNMaxDefault = 256;
inline constexpr double kDistortedThreshold = 1e-2;
inline constexpr double kUndistortedThreshold = 5e-2;

// Orbit-sum lower bound (Lemma-style criterion).
inline constexpr double kLemmaTailTol = 1e-8;
inline constexpr long kLemmaMaxIntervals = 100000;

// Theorem-3 style construction search.
inline constexpr int kMSearchStart = 4;
inline constexpr int kMSearchCap = 1 << 18;

}  // namespace circdist::defaults
