#pragma once

// Dispersion relations of the signed species,
//
//   Lambda_s(xi) = sgn(s) * sqrt(c^2 |xi|^2 + b^2),
//
// together with their gradient and Hessian in closed form. The sign of a
// SpeciesRef's mass encodes the sign of the species index, so a single
// formula covers both orientations.

#include <cmath>

#include "kglab/geometry.hpp"
#include "kglab/system.hpp"

namespace kglab {

inline double sign_of(const SpeciesRef& s) { return s.mass < 0.0 ? -1.0 : 1.0; }

/// sqrt(c^2 r^2 + b^2) -- always positive; radial profile of |Lambda|.
inline double lambda_weight(const SpeciesRef& s, double r) {
    return std::sqrt(s.speed * s.speed * r * r + s.mass * s.mass);
}

/// Lambda_s at radius r (1D evaluations on collinear slices).
inline double lambda_radial(const SpeciesRef& s, double r) {
    return sign_of(s) * lambda_weight(s, r);
}

inline double lambda(const SpeciesRef& s, Vec2 xi) { return lambda_radial(s, norm(xi)); }

/// d/dr of sqrt(c^2 r^2 + b^2) with the species sign: the collinear group
/// velocity. Odd in r and bounded by the speed c.
inline double grad_lambda_radial(const SpeciesRef& s, double r) {
    return sign_of(s) * s.speed * s.speed * r / lambda_weight(s, r);
}

inline Vec2 grad_lambda(const SpeciesRef& s, Vec2 xi) {
    const double c2 = s.speed * s.speed;
    return (sign_of(s) * c2 / lambda_weight(s, norm(xi))) * xi;
}

/// Hessian of Lambda_s: sgn(s) * (c^2/W) * (I - c^2 xi xi^T / W^2),
/// W = sqrt(c^2|xi|^2 + b^2). Positive definite for positive species.
inline SymMat2 hessian_lambda(const SpeciesRef& s, Vec2 xi) {
    const double c2 = s.speed * s.speed;
    const double w = lambda_weight(s, norm(xi));
    const double a = sign_of(s) * c2 / w;
    const double q = c2 / (w * w);
    return {a * (1.0 - q * xi.x * xi.x), a * (-q * xi.x * xi.y), a * (1.0 - q * xi.y * xi.y)};
}

// Convenience overloads resolving a signed index against the system.

inline double lambda(const SystemConfig& cfg, int sigma, Vec2 xi) {
    return lambda(cfg.signed_species(sigma), xi);
}
inline Vec2 grad_lambda(const SystemConfig& cfg, int sigma, Vec2 xi) {
    return grad_lambda(cfg.signed_species(sigma), xi);
}
inline SymMat2 hessian_lambda(const SystemConfig& cfg, int sigma, Vec2 xi) {
    return hessian_lambda(cfg.signed_species(sigma), xi);
}

}  // namespace kglab
