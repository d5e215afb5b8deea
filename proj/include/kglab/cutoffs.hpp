#pragma once

// Littlewood-Paley cutoff family built from one fixed even bump
//
//   phi = 1 on [-1.1, 1.1],  supp phi = [-1.2, 1.2],
//
// smooth on the bridge via the standard exp(-1/t) step. Derived families:
//
//   phi_k(x)      = phi(x/2^k) - phi(x/2^(k-1))      (dyadic annulus at 2^k)
//   phi_le(c, x)  = phi(x/2^c)                       (= sum_{m<=c} phi_m)
//   phi_ge(c, x)  = 1 - phi(x/2^(c-1))               (= sum_{m>=c} phi_m)
//   phi_win(a,b,j,x): phi_j for a<j<b, phi_le(a) at j=a, phi_ge(b) at j=b
//   phi_tilde(k,j,x): the spatial family paired with P_k; for fixed k,
//       sum over j >= -min(k,0) equals 1 everywhere.

#include <cmath>

#include "kglab/errors.hpp"

namespace kglab {

struct CutoffFamily {
    static constexpr double plateau = 1.1;
    static constexpr double support = 1.2;

    /// The base bump.
    double operator()(double x) const { return bump(x); }

    static double bump(double x) {
        const double a = (std::fabs(x) - plateau) / (support - plateau);
        if (a <= 0.0) return 1.0;
        if (a >= 1.0) return 0.0;
        const double e0 = std::exp(-1.0 / a);
        const double e1 = std::exp(-1.0 / (1.0 - a));
        return e1 / (e0 + e1);
    }

    static double phi_k(int k, double x) {
        return bump(x / std::ldexp(1.0, k)) - bump(x / std::ldexp(1.0, k - 1));
    }

    static double phi_le(double c, double x) { return bump(x / std::exp2(c)); }
    static double phi_lt(double c, double x) { return phi_le(c - 1.0, x); }
    static double phi_ge(double c, double x) { return 1.0 - bump(x / std::exp2(c - 1.0)); }
    static double phi_gt(double c, double x) { return phi_ge(c + 1.0, x); }

    /// phi^{[a,b]}_j: interval family with absorbing endpoints.
    static double phi_win(int a, int b, int j, double x) {
        if (j <= a) return phi_le(a, x);
        if (j >= b) return phi_ge(b, x);
        return phi_k(j, x);
    }

    /// Spatial family tilde{phi}_j^{(k)} for (k, j) with j >= 0, k + j >= 0.
    static double phi_tilde(int k, int j, double x) {
        if (j < 0 || k + j < 0) throw config_error("phi_tilde: (k, j) outside the index set");
        if (k + j == 0 && k <= 0) return phi_le(-k, x);
        if (j == 0 && k >= 0) return phi_le(0, x);
        return phi_k(j, x);
    }
};

inline CutoffFamily make_cutoff() { return {}; }

}  // namespace kglab
