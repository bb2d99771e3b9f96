#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fnn/kgt.hpp"

namespace fnn {

struct OptimizationResult {
  std::vector<double> best_angles;
  double best_value = 0.0;
  std::string objective;
  long long evaluations = 0;
};

using AngleFunction = std::function<double(std::span<const double>)>;

// Deterministic derivative-free max-min search: a uniform grid per free
// dimension (64 points for one or two dimensions, coarser for more), then
// coordinate-wise golden-section refinement of the best grid cells until the
// point moves by less than 1e-10. Ties are broken toward the
// lexicographically smallest angle vector.
OptimizationResult maximize_min(const std::vector<AngleFunction>& objectives,
                                int dims, std::span<const double> lo,
                                std::span<const double> hi, std::string label);

struct SweepRecord {
  double g = 0.0;
  double r1 = 0.0;  // Alice-Bob-Charlie1 witness (min of the pair)
  double r2 = 0.0;  // Alice-Bob-Charlie2 witness (min of the pair)
  double r_m = 0.0; // min(r1, r2)
  std::array<double, 6> angles{};
};

// Charlie1 maximizes his own violation (theta1=pi/2, theta2=0,
// theta3=-theta4=arccos(3/sqrt13)), then Charlie2 optimizes theta5=-theta6
// against the leftover state. Closed forms cross-checked against the
// pipeline at 1e-9.
SweepRecord passive_analysis(double g, double v1 = 1.0, double v2 = 1.0);

// Charlie1 cooperates: maximize min of all four witness values over
// (theta3, theta5) on the tied slice theta1=pi/2, theta2=0, theta4=-theta3,
// theta6=-theta5, followed by an alternating balance polish. At the optimum
// the two witnesses agree whenever the trade-off curve crosses.
SweepRecord active_analysis(double g, double v1 = 1.0, double v2 = 1.0);

/// Witness values at fixed (theta3, theta5) on the tied slice, per grid g.
std::vector<SweepRecord> fixed_angle_sweep(double theta3, double theta5,
                                           std::span<const double> g_grid,
                                           double v1 = 1.0, double v2 = 1.0);

// g-interval on which both witnesses exceed 3 with both angles held fixed.
// Located by bisection to width 1e-5; returns (lo, hi), lo > hi if empty.
std::pair<double, double> fixed_angle_window(double theta3, double theta5,
                                             double v1 = 1.0, double v2 = 1.0);

// Same interval when theta5 is re-optimized at every g (theta3 still fixed),
// i.e. the Charlie2 witness is taken at its per-g maximum sqrt(K^2+T^2).
std::pair<double, double> fixed_theta3_window(double theta3, double v1 = 1.0,
                                              double v2 = 1.0);

/// Lower edge of the g-window where the active max-min exceeds 3.
double active_window_lower_edge(double v1 = 1.0, double v2 = 1.0);

// Standard-scenario maximum at g=1: optimize theta3 on the tied slice
// theta1=pi/2, theta2=0, theta4=-theta3. best_angles holds {theta3}.
OptimizationResult standard_max(double v1 = 1.0, double v2 = 1.0);

/// Balanced active optimum value without the full search machinery.
double active_optimum_value(double g, double v1 = 1.0, double v2 = 1.0);

/// Peak of the active max-min over g in [0,1]; returns (g_peak, value).
std::pair<double, double> active_peak(double v1 = 1.0, double v2 = 1.0);

enum class NoiseMode { kStandardFnn, kActiveSharing };

// Critical visibility V (with v1 = v2 = V, so V = sqrt(V1 V2)) above which
// the mode's optimal witness value exceeds 3. Bisection to width 1e-5.
double noise_threshold(NoiseMode mode);

}  // namespace fnn
