#pragma once

// Resonance geometry of the phases Phi_{sigma mu nu}:
//
//   * the nondegeneracy conditions
//         b_s - b_m - b_n != 0,   (c_m - c_n)(c_m^2 b_n - c_n^2 b_m) >= 0;
//   * the space-resonance map p(xi) = p_plus(|xi|) xi/|xi| solving
//         grad_eta Phi(xi, p(xi)) = 0
//     (collinear reduction: on the slice xi = (s,0) the eta-gradient is
//     collinear, so the 2D root find reduces to a bracketed 1D solve);
//   * the reduced phase Psi(s) = Phi((s,0), (p_plus(s),0)), its roots
//     gamma_i (the space-time resonant radii) and the Hessian determinants
//     det[hess_eta Phi] at the roots;
//   * the weighted distance-to-resonance Psi*_sigma and its radial tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kglab/errors.hpp"
#include "kglab/phase.hpp"
#include "kglab/system.hpp"

namespace kglab {

// ---------------------------------------------------------------------------
// Nondegeneracy conditions (the hypotheses of every lemma downstream).

struct NondegeneracyEntry {
    int sigma = 0, mu = 0, nu = 0;
    double mass_gap = 0.0;    // b_s - b_m - b_n
    double speed_mass = 0.0;  // (c_m - c_n)(c_m^2 b_n - c_n^2 b_m)
    bool pass_mass = false;   // condition (i)
    bool pass_speed = false;  // condition (ii)
};

struct NondegeneracyReport {
    std::vector<NondegeneracyEntry> unsigned_entries;  // indices in {1..d}
    std::vector<NondegeneracyEntry> signed_entries;    // all signed combinations
    bool pass_unsigned = true;  // the literal conditions; the verdict
    bool pass_signed = true;    // informational
};

inline NondegeneracyEntry nondegeneracy_entry(const SystemConfig& cfg, int sigma, int mu, int nu) {
    NondegeneracyEntry e;
    e.sigma = sigma;
    e.mu = mu;
    e.nu = nu;
    const double bs = cfg.mass(sigma), bm = cfg.mass(mu), bn = cfg.mass(nu);
    const double cm = cfg.speed(mu), cn = cfg.speed(nu);
    e.mass_gap = bs - bm - bn;
    e.speed_mass = (cm - cn) * (cm * cm * bn - cn * cn * bm);
    e.pass_mass = e.mass_gap != 0.0;
    e.pass_speed = e.speed_mass >= 0.0;
    return e;
}

inline NondegeneracyReport check_nondegeneracy(const SystemConfig& cfg) {
    NondegeneracyReport rep;
    const int d = cfg.dim();
    for (int s = 1; s <= d; ++s)
        for (int m = 1; m <= d; ++m)
            for (int n = 1; n <= d; ++n) {
                rep.unsigned_entries.push_back(nondegeneracy_entry(cfg, s, m, n));
                const auto& e = rep.unsigned_entries.back();
                rep.pass_unsigned = rep.pass_unsigned && e.pass_mass && e.pass_speed;
            }
    auto signed_indices = [d] {
        std::vector<int> v;
        for (int a = -d; a <= d; ++a)
            if (a != 0) v.push_back(a);
        return v;
    }();
    for (int s : signed_indices)
        for (int m : signed_indices)
            for (int n : signed_indices) {
                rep.signed_entries.push_back(nondegeneracy_entry(cfg, s, m, n));
                const auto& e = rep.signed_entries.back();
                rep.pass_signed = rep.pass_signed && e.pass_mass && e.pass_speed;
            }
    return rep;
}

// ---------------------------------------------------------------------------
// p_plus, Psi and its roots.

struct ResonanceParams {
    double root_tol = 1e-10;       // accepted |grad_eta Phi| at a critical point
    double det_tol = 1e-6;         // Hessian determinant pass threshold
    double d0 = 10.0;              // 2^D0 weight in Psi*
    double bracket_factor = 8.0;   // p_plus search interval [-R, R], R = 8 max(1, s)
    int p_scan_points = 512;       // bracket pre-scan resolution
    int psi_scan_points = 10000;   // Psi root scan resolution
    double tangency_tol = 1e-6;    // |Psi| below this without a sign change
};

inline bool is_conjugate_pair(const SpeciesRef& m, const SpeciesRef& n) {
    return m.speed == n.speed && m.mass == -n.mass;
}

namespace detail {

/// Bisect grad_eta_collinear(s, .) on a bracket with a sign change.
inline double bisect_collinear(const Phase& ph, double s, double lo, double hi) {
    double flo = ph.grad_eta_collinear(s, lo);
    if (flo == 0.0) return lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = ph.grad_eta_collinear(s, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Collinear critical point of eta -> Phi((s,0), (r,0)): the radius r with
/// grad_eta Phi = 0, found by a bracketed scan + bisection over
/// [-R, R], R = bracket_factor * max(1, |s|). Returns nothing when no sign
/// change is bracketed. Throws for conjugate pairs mu + nu = 0 (no critical
/// point away from xi = 0).
inline std::optional<double> solve_p_plus(const Phase& ph, double s,
                                          const ResonanceParams& prm = {}) {
    if (is_conjugate_pair(ph.mu(), ph.nu()))
        throw config_error("solve_p_plus: mu + nu = 0 has no space resonance away from xi = 0");
    const double R = prm.bracket_factor * std::max(1.0, std::fabs(s));
    const int N = std::max(16, prm.p_scan_points);
    const double dr = 2.0 * R / N;

    std::optional<double> best;
    double best_res = std::numeric_limits<double>::infinity();
    double prev_r = -R;
    double prev_h = ph.grad_eta_collinear(s, prev_r);
    for (int i = 1; i <= N; ++i) {
        const double r = -R + i * dr;
        const double h = ph.grad_eta_collinear(s, r);
        if (prev_h == 0.0 || (prev_h < 0.0) != (h < 0.0)) {
            const double root = prev_h == 0.0 ? prev_r : detail::bisect_collinear(ph, s, prev_r, r);
            const double res = norm(ph.grad_eta({s, 0.0}, {root, 0.0}));
            if (res <= prm.root_tol &&
                (res < best_res || (res == best_res && std::fabs(root) < std::fabs(*best)))) {
                best = root;
                best_res = res;
            }
        }
        prev_r = r;
        prev_h = h;
    }
    return best;
}

/// Reduced phase Psi(s) = Phi((s,0), p(s,0)). Throws when the critical point
/// cannot be located.
inline double psi(const Phase& ph, double s, const ResonanceParams& prm = {}) {
    const auto p = solve_p_plus(ph, s, prm);
    if (!p) throw numeric_error("psi: no space-resonance point bracketed at s = " + std::to_string(s));
    return lambda_radial(ph.sigma(), s) - lambda_radial(ph.mu(), s - *p) -
           lambda_radial(ph.nu(), *p);
}

/// Radial resonance scan of one triple: p_plus and Psi tabulated on a uniform
/// grid, Psi roots (simple sign changes), Hessian determinants at the roots,
/// and suspected non-simple roots (|Psi| dips below tangency_tol without a
/// sign change).
struct RadialResonance {
    PhaseTriple triple;
    std::vector<double> s_grid;
    std::vector<double> p_plus;  // NaN where no critical point was bracketed
    std::vector<double> psi;     // NaN likewise
    std::vector<double> roots;   // sorted gamma_i
    std::vector<double> root_p;  // p_plus(gamma_i)
    std::vector<double> hessian_dets;
    std::vector<bool> det_pass;
    std::vector<double> suspected_tangencies;
};

namespace detail {

/// p_plus with Newton continuation from a nearby previous value; falls back
/// to the bracketed solve when Newton wanders.
inline std::optional<double> p_plus_continue(const Phase& ph, double s, double guess,
                                             const ResonanceParams& prm) {
    double r = guess;
    for (int it = 0; it < 50; ++it) {
        const double h = ph.grad_eta_collinear(s, r);
        const double hp = ph.grad_eta_collinear_deriv(s, r);
        if (hp == 0.0 || !std::isfinite(hp)) break;
        const double step = h / hp;
        r -= step;
        if (!std::isfinite(r)) break;
        if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(r))) {
            if (norm(ph.grad_eta({s, 0.0}, {r, 0.0})) <= prm.root_tol) return r;
            break;
        }
    }
    return solve_p_plus(ph, s, prm);
}

}  // namespace detail

inline RadialResonance scan_radial_resonance(const SystemConfig& cfg, PhaseTriple t, double s_max,
                                             const ResonanceParams& prm = {}) {
    Phase ph(cfg, t);
    RadialResonance rr;
    rr.triple = t;
    const int N = std::max(16, prm.psi_scan_points);
    rr.s_grid.resize(N);
    rr.p_plus.assign(N, std::numeric_limits<double>::quiet_NaN());
    rr.psi.assign(N, std::numeric_limits<double>::quiet_NaN());

    std::optional<double> prev;
    for (int i = 0; i < N; ++i) {
        const double s = s_max * (i + 1) / N;
        rr.s_grid[i] = s;
        std::optional<double> p = prev ? detail::p_plus_continue(ph, s, *prev, prm)
                                       : solve_p_plus(ph, s, prm);
        if (p) {
            rr.p_plus[i] = *p;
            rr.psi[i] = lambda_radial(ph.sigma(), s) - lambda_radial(ph.mu(), s - *p) -
                        lambda_radial(ph.nu(), *p);
        }
        prev = p;
    }

    // Simple roots: bisect each sign change of Psi.
    auto psi_at = [&](double s) { return psi(ph, s, prm); };
    for (int i = 0; i + 1 < N; ++i) {
        const double a = rr.psi[i], b = rr.psi[i + 1];
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        if (a == 0.0 || (a < 0.0) != (b < 0.0)) {
            double lo = rr.s_grid[i], hi = rr.s_grid[i + 1];
            double fa = a;
            if (fa == 0.0) {
                rr.roots.push_back(lo);
                continue;
            }
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi || hi - lo < 1e-13 * std::max(1.0, hi)) break;
                const double fm = psi_at(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    lo = mid;
                    fa = fm;
                } else {
                    hi = mid;
                }
            }
            rr.roots.push_back(0.5 * (lo + hi));
        }
    }
    std::sort(rr.roots.begin(), rr.roots.end());

    // Tangency diagnostics: interior |Psi| minima below tol with no sign change.
    for (int i = 1; i + 1 < N; ++i) {
        const double a = rr.psi[i - 1], b = rr.psi[i], c = rr.psi[i + 1];
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) continue;
        if (std::fabs(b) <= std::fabs(a) && std::fabs(b) <= std::fabs(c) &&
            std::fabs(b) < prm.tangency_tol && (a < 0.0) == (b < 0.0) && (b < 0.0) == (c < 0.0)) {
            bool near_root = false;
            for (double g : rr.roots)
                if (std::fabs(g - rr.s_grid[i]) < 4.0 * (rr.s_grid[1] - rr.s_grid[0])) near_root = true;
            if (!near_root) rr.suspected_tangencies.push_back(rr.s_grid[i]);
        }
    }

    // Hessian determinants at the roots.
    for (double g : rr.roots) {
        const auto p = solve_p_plus(ph, g, prm);
        const double pv = p ? *p : std::numeric_limits<double>::quiet_NaN();
        rr.root_p.push_back(pv);
        const double d = p ? det(ph.hess_eta({g, 0.0}, {pv, 0.0}))
                           : std::numeric_limits<double>::quiet_NaN();
        rr.hessian_dets.push_back(d);
        rr.det_pass.push_back(std::isfinite(d) && std::fabs(d) > prm.det_tol);
    }
    return rr;
}

inline std::vector<double> find_psi_roots(const SystemConfig& cfg, PhaseTriple t, double s_max,
                                          const ResonanceParams& prm = {}) {
    return scan_radial_resonance(cfg, t, s_max, prm).roots;
}

// ---------------------------------------------------------------------------
// Psi*_sigma: the weighted distance-to-resonance of (2.2),
//   Psi*_sigma(xi) = 2^D0 (1 + |xi|) inf_{mu,nu : b_mu + b_nu != 0} |Psi_{sigma mu nu}(|xi|)|.

inline std::vector<std::pair<int, int>> admissible_pairs(const SystemConfig& cfg) {
    std::vector<std::pair<int, int>> pairs;
    const int d = cfg.dim();
    for (int m = -d; m <= d; ++m) {
        if (m == 0) continue;
        for (int n = -d; n <= d; ++n) {
            if (n == 0 || n == -m) continue;
            pairs.emplace_back(m, n);
        }
    }
    return pairs;
}

/// Exact evaluation (one root solve per admissible pair per call).
inline double psi_star(const SystemConfig& cfg, int sigma, double r, double d0,
                       const ResonanceParams& prm = {}) {
    double inf = std::numeric_limits<double>::infinity();
    for (auto [m, n] : admissible_pairs(cfg)) {
        Phase ph(cfg, {sigma, m, n});
        const auto p = solve_p_plus(ph, r, prm);
        if (!p) continue;
        const double v = std::fabs(lambda_radial(ph.sigma(), r) - lambda_radial(ph.mu(), r - *p) -
                                   lambda_radial(ph.nu(), *p));
        inf = std::min(inf, v);
    }
    if (!std::isfinite(inf)) throw numeric_error("psi_star: no admissible pair had a resonance point");
    return std::exp2(d0) * (1.0 + std::fabs(r)) * inf;
}

/// Radial table of Psi*_sigma for lattice-side operators: the signed Psi of
/// each admissible pair is sampled on a uniform grid and interpolated with a
/// local cubic (Catmull-Rom), the infimum and weight applied per evaluation.
class PsiStarTable {
public:
    static PsiStarTable build(const SystemConfig& cfg, int sigma, double d0, double s_max,
                              int samples = 4096, const ResonanceParams& prm = {}) {
        PsiStarTable t;
        t.sigma_ = sigma;
        t.d0_ = d0;
        t.s_max_ = s_max;
        t.ds_ = s_max / (samples - 1);
        for (auto [m, n] : admissible_pairs(cfg)) {
            Phase ph(cfg, {sigma, m, n});
            std::vector<double> vals(samples);
            std::optional<double> prev;
            bool ok = true;
            for (int i = 0; i < samples && ok; ++i) {
                const double s = i * t.ds_;
                std::optional<double> p;
                if (i == 0) {
                    vals[0] = cfg.mass(sigma) - cfg.mass(m) - cfg.mass(n);  // p_plus(0) = 0
                    prev = 0.0;
                    continue;
                }
                p = prev ? detail::p_plus_continue(ph, s, *prev, prm) : solve_p_plus(ph, s, prm);
                if (!p) {
                    ok = false;
                    break;
                }
                vals[i] = lambda_radial(ph.sigma(), s) - lambda_radial(ph.mu(), s - *p) -
                          lambda_radial(ph.nu(), *p);
                prev = p;
            }
            if (ok) t.tables_.push_back(std::move(vals));
        }
        if (t.tables_.empty()) throw numeric_error("PsiStarTable: no admissible pair tabulated");
        return t;
    }

    int sigma() const { return sigma_; }
    double d0() const { return d0_; }
    double s_max() const { return s_max_; }

    double operator()(double r) const {
        r = std::fabs(r);
        double inf = std::numeric_limits<double>::infinity();
        for (const auto& tab : tables_) inf = std::min(inf, std::fabs(interp(tab, r)));
        return std::exp2(d0_) * (1.0 + r) * inf;
    }

private:
    double interp(const std::vector<double>& tab, double r) const {
        const int n = static_cast<int>(tab.size());
        double u = std::min(r, s_max_) / ds_;
        int i = std::min(static_cast<int>(u), n - 2);
        const double f = u - i;
        // Catmull-Rom with clamped end handling
        const double p0 = tab[std::max(i - 1, 0)];
        const double p1 = tab[i];
        const double p2 = tab[i + 1];
        const double p3 = tab[std::min(i + 2, n - 1)];
        return p1 + 0.5 * f * (p2 - p0 + f * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                              f * (3.0 * (p1 - p2) + p3 - p0)));
    }

    int sigma_ = 1;
    double d0_ = 10.0;
    double s_max_ = 1.0;
    double ds_ = 1.0;
    std::vector<std::vector<double>> tables_;
};

}  // namespace kglab
