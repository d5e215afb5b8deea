#pragma once

#include <cmath>
#include <random>

#include "kglab/geometry.hpp"
#include "kglab/phase.hpp"
#include "kglab/system.hpp"

namespace kglab::test {

inline SystemConfig single_species(double c = 1.0, double b = 1.0, double coupling = 1.0) {
    return SystemConfig({{c, b}}, {coupling});
}

inline SystemConfig two_species(double c1, double b1, double c2, double b2) {
    return SystemConfig({{c1, b1}, {c2, b2}});
}

/// The degenerate triple of the mass-cancellation counterexample:
/// species 1: c = 1, b = 1; species 2: c = sqrt(2), b = 2; the phase uses
/// (sigma, mu, nu) = (+1, +2, -1) so that b_s - b_m - b_n = 0.
inline SystemConfig degenerate_system() { return two_species(1.0, 1.0, std::sqrt(2.0), 2.0); }
inline PhaseTriple degenerate_triple() { return {1, 2, -1}; }

inline Vec2 random_vec(std::mt19937_64& rng, double lo = -3.0, double hi = 3.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng)};
}

/// |a - b| relative to max(1, |a|).
inline double rel_err(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(a)); }
inline double rel_err(Vec2 a, Vec2 b) { return norm(a - b) / std::max(1.0, norm(a)); }

}  // namespace kglab::test
