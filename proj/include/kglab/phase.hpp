#pragma once

// The trilinear interaction phase
//
//   Phi_{s,m,n}(xi, eta) = Lambda_s(xi) - Lambda_m(xi - eta) - Lambda_n(eta)
//
// and its first and second derivatives in closed form:
//
//   grad_xi  Phi = grad Lambda_s(xi) - grad Lambda_m(xi - eta)
//   grad_eta Phi = grad Lambda_m(xi - eta) - grad Lambda_n(eta)
//   hess_eta Phi = -hess Lambda_m(xi - eta) - hess Lambda_n(eta)
//   mixed    Phi = d^2 Phi / dxi deta = +hess Lambda_m(xi - eta)
//
// Omega_eta Phi is the derivative of Phi along the rotation flow in eta,
//   Omega_eta Phi = sgn(m) * c_m^2 / sqrt(c_m^2|xi-eta|^2 + b_m^2) * <xi, eta_perp>,
// which vanishes exactly when xi is parallel to eta (or either is zero).
//
// Upsilon is the curvature quantity
//   Upsilon = mixed Phi [ perp(grad_xi Phi), perp(grad_eta Phi) ].

#include "kglab/dispersion.hpp"
#include "kglab/geometry.hpp"
#include "kglab/system.hpp"

namespace kglab {

/// Signed indices (sigma, mu, nu) selecting one phase Phi_{sigma mu nu}.
struct PhaseTriple {
    int sigma = 1;
    int mu = 1;
    int nu = 1;
};

inline PhaseTriple conjugate(PhaseTriple t) { return {-t.sigma, -t.mu, -t.nu}; }

/// Phase evaluator with the three species resolved once up front.
/// Pure value type; safe to share across threads.
class Phase {
public:
    Phase(const SystemConfig& cfg, PhaseTriple t)
        : s_(cfg.signed_species(t.sigma)),
          m_(cfg.signed_species(t.mu)),
          n_(cfg.signed_species(t.nu)),
          triple_(t) {}

    Phase(SpeciesRef s, SpeciesRef m, SpeciesRef n) : s_(s), m_(m), n_(n) {}

    PhaseTriple triple() const { return triple_; }
    const SpeciesRef& sigma() const { return s_; }
    const SpeciesRef& mu() const { return m_; }
    const SpeciesRef& nu() const { return n_; }

    double operator()(Vec2 xi, Vec2 eta) const {
        return lambda(s_, xi) - lambda(m_, xi - eta) - lambda(n_, eta);
    }

    Vec2 grad_xi(Vec2 xi, Vec2 eta) const {
        return grad_lambda(s_, xi) - grad_lambda(m_, xi - eta);
    }

    Vec2 grad_eta(Vec2 xi, Vec2 eta) const {
        return grad_lambda(m_, xi - eta) - grad_lambda(n_, eta);
    }

    /// Derivative of Phi along theta -> Phi(xi, R_theta eta) at theta = 0.
    double omega_eta(Vec2 xi, Vec2 eta) const {
        const double c2 = m_.speed * m_.speed;
        return sign_of(m_) * c2 / lambda_weight(m_, norm(xi - eta)) * dot(xi, perp(eta));
    }

    SymMat2 hess_eta(Vec2 xi, Vec2 eta) const {
        return -hessian_lambda(m_, xi - eta) - hessian_lambda(n_, eta);
    }

    SymMat2 hess_xi(Vec2 xi, Vec2 eta) const {
        return hessian_lambda(s_, xi) - hessian_lambda(m_, xi - eta);
    }

    /// Mixed Hessian d^2 Phi / dxi deta; only the middle term survives.
    SymMat2 hess_mixed(Vec2 xi, Vec2 eta) const { return hessian_lambda(m_, xi - eta); }

    double upsilon(Vec2 xi, Vec2 eta) const {
        return quad_form(hess_mixed(xi, eta), perp(grad_xi(xi, eta)), perp(grad_eta(xi, eta)));
    }

    /// Collinear slice xi = (s,0), eta = (r,0): the eta-gradient points along
    /// the axis; this is its scalar component.
    double grad_eta_collinear(double s, double r) const {
        return grad_lambda_radial(m_, s - r) - grad_lambda_radial(n_, r);
    }

    /// d/dr of grad_eta_collinear (used by Newton continuation).
    double grad_eta_collinear_deriv(double s, double r) const {
        return -hess_radial(m_, s - r) - hess_radial(n_, r);
    }

private:
    static double hess_radial(const SpeciesRef& sp, double x) {
        // second derivative of sgn*sqrt(c^2 x^2 + b^2) in 1D
        const double c2 = sp.speed * sp.speed;
        const double w = lambda_weight(sp, x);
        return sign_of(sp) * c2 / w * (1.0 - c2 * x * x / (w * w));
    }

    SpeciesRef s_, m_, n_;
    PhaseTriple triple_{};
};

// Free-function spellings over (config, triple).

inline double phi(const SystemConfig& cfg, PhaseTriple t, Vec2 xi, Vec2 eta) {
    return Phase(cfg, t)(xi, eta);
}
inline Vec2 grad_xi_phi(const SystemConfig& cfg, PhaseTriple t, Vec2 xi, Vec2 eta) {
    return Phase(cfg, t).grad_xi(xi, eta);
}
inline Vec2 grad_eta_phi(const SystemConfig& cfg, PhaseTriple t, Vec2 xi, Vec2 eta) {
    return Phase(cfg, t).grad_eta(xi, eta);
}
inline double omega_eta_phi(const SystemConfig& cfg, PhaseTriple t, Vec2 xi, Vec2 eta) {
    return Phase(cfg, t).omega_eta(xi, eta);
}
inline SymMat2 hessian_eta_phi(const SystemConfig& cfg, PhaseTriple t, Vec2 xi, Vec2 eta) {
    return Phase(cfg, t).hess_eta(xi, eta);
}
inline double upsilon(const SystemConfig& cfg, PhaseTriple t, Vec2 xi, Vec2 eta) {
    return Phase(cfg, t).upsilon(xi, eta);
}

}  // namespace kglab
