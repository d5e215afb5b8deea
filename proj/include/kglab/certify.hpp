#pragma once

// Empirical certification of the elementary phase bounds over bounded dyadic
// regions. For each bound the combined quantity is minimized over a sample
// of (xi, eta) with |xi| ~ 2^k, |xi-eta| ~ 2^k1, |eta| ~ 2^k2 and over all
// signed triples; the sampled minimum is the certified constant candidate.
// Writing kbar = max(k, k1, k2, 0), the quantities are
//
//   "6.1"     min(k,k1,k2) <= -split :  max(|Phi|, 2^{3 kbar} |grad_eta Phi|)
//   "6.2"     max(k,k1,k2) >= +split :  max(2^{kbar} |Phi|, 2^{3 kbar} |grad_eta Phi|)
//   "6.3"     mu + nu = 0 triples    :  2^{4 kbar} |grad_eta Phi|
//   "6.4a"    max(k,k1,k2) <= split  :  2^{3 kbar} |Phi| + |grad_xi Phi| + |grad_eta Phi|
//   "6.4b"    all annuli             :  2^{3 kbar} |Phi| + |grad_xi Phi| + 2^{4 kbar} |grad_eta Phi|
//   "6.6a-eta"  eta = 0 ray          :  |Phi(xi,0)| + |grad_eta Phi(xi,0)|
//   "6.6a-xi"   eta = 0 ray          :  |Phi(xi,0)| + |grad_xi Phi(xi,0)|
//
// plus the zero count of s -> Phi((s,0), 0) along the ray ("6.6b").
// Certification is empirical over the scanned region only; it proves nothing
// outside it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kglab/phase.hpp"
#include "kglab/resonance.hpp"
#include "kglab/system.hpp"

namespace kglab {

struct CertifyRegion {
    int k_lo = -20;
    int k_hi = 10;
    double split = 6.0;   // dyadic threshold separating "very low"/"very high" annuli
    int n_xi = 3;         // radial samples for |xi| per annulus
    int n_eta = 6;        // radial samples for |eta| per annulus
    int n_theta = 12;     // angular samples for eta
    int refine = 1;       // resolution multiplier
    int n_ray = 4096;     // samples along the eta = 0 ray (6.6)
};

struct LemmaCertificate {
    std::string name;
    double constant = std::numeric_limits<double>::infinity();
    PhaseTriple argmin_triple;
    Vec2 argmin_xi, argmin_eta;
    long long samples = 0;
    bool hypotheses_ok = true;
};

struct RayZeroCount {
    PhaseTriple triple;
    int zeros = 0;
};

struct CertificationReport {
    bool hypotheses_ok = true;  // the (1.2) verdict for the scanned config
    std::vector<LemmaCertificate> certificates;
    std::vector<RayZeroCount> ray_zero_counts;  // per signed triple, "6.6b"
    int max_ray_zeros = 0;
};

namespace detail {

struct MinAccum {
    double value = std::numeric_limits<double>::infinity();
    PhaseTriple triple;
    Vec2 xi, eta;
    long long samples = 0;

    void offer(double v, PhaseTriple t, Vec2 x, Vec2 e) {
        ++samples;
        if (v < value) {
            value = v;
            triple = t;
            xi = x;
            eta = e;
        }
    }

    void merge(const MinAccum& o) {
        samples += o.samples;
        if (o.value < value) {
            value = o.value;
            triple = o.triple;
            xi = o.xi;
            eta = o.eta;
        }
    }
};

inline std::vector<PhaseTriple> all_signed_triples(const SystemConfig& cfg) {
    std::vector<PhaseTriple> ts;
    const int d = cfg.dim();
    for (int s = -d; s <= d; ++s) {
        if (s == 0) continue;
        for (int m = -d; m <= d; ++m) {
            if (m == 0) continue;
            for (int n = -d; n <= d; ++n) {
                if (n == 0) continue;
                ts.push_back({s, m, n});
            }
        }
    }
    return ts;
}

}  // namespace detail

inline CertificationReport certify_lower_bounds(const SystemConfig& cfg,
                                                const CertifyRegion& region = {}) {
    CertificationReport rep;
    rep.hypotheses_ok = check_nondegeneracy(cfg).pass_unsigned;

    const auto triples = detail::all_signed_triples(cfg);
    const int n_xi = region.n_xi * region.refine;
    const int n_eta = region.n_eta * region.refine;
    const int n_theta = region.n_theta * region.refine;

    enum { L61, L62, L63, L64A, L64B, NCERT };
    std::vector<detail::MinAccum> acc(NCERT);

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<detail::MinAccum> local(NCERT);
#ifdef _OPENMP
#pragma omp for schedule(dynamic)
#endif
        for (int ti = 0; ti < static_cast<int>(triples.size()); ++ti) {
            const PhaseTriple t = triples[ti];
            const Phase ph(cfg, t);
            const bool conj = is_conjugate_pair(ph.mu(), ph.nu());
            for (int k = region.k_lo; k <= region.k_hi; ++k) {
                for (int k1 = region.k_lo; k1 <= region.k_hi; ++k1) {
                    for (int k2 = region.k_lo; k2 <= region.k_hi; ++k2) {
                        // dyadic triangle compatibility
                        const double lo_k = std::ldexp(1.0, k - 1), hi_k = std::ldexp(1.0, k + 1);
                        const double lo_1 = std::ldexp(1.0, k1 - 1), hi_1 = std::ldexp(1.0, k1 + 1);
                        const double lo_2 = std::ldexp(1.0, k2 - 1), hi_2 = std::ldexp(1.0, k2 + 1);
                        if (lo_k > hi_1 + hi_2 || lo_1 > hi_k + hi_2 || lo_2 > hi_k + hi_1) continue;

                        const int kbar = std::max({k, k1, k2, 0});
                        const double w3 = std::ldexp(1.0, 3 * kbar);
                        const double w4 = std::ldexp(1.0, 4 * kbar);
                        const double w1 = std::ldexp(1.0, kbar);
                        const bool in61 = std::min({k, k1, k2}) <= -region.split;
                        const bool in62 = std::max({k, k1, k2}) >= region.split;
                        const bool in64a = std::max({k, k1, k2}) <= region.split;

                        for (int ia = 0; ia < n_xi; ++ia) {
                            const double s = lo_k * std::pow(4.0, (ia + 0.5) / n_xi);
                            const Vec2 xi{s, 0.0};
                            for (int ib = 0; ib < n_eta; ++ib) {
                                const double r = lo_2 * std::pow(4.0, (ib + 0.5) / n_eta);
                                for (int ic = 0; ic < n_theta; ++ic) {
                                    const double th = M_PI * (ic + 0.5) / n_theta;
                                    const Vec2 eta{r * std::cos(th), r * std::sin(th)};
                                    const double r1 = norm(xi - eta);
                                    if (r1 < lo_1 || r1 > hi_1) continue;

                                    const double aphi = std::fabs(ph(xi, eta));
                                    const double geta = norm(ph.grad_eta(xi, eta));
                                    const double gxi = norm(ph.grad_xi(xi, eta));
                                    if (in61)
                                        local[L61].offer(std::max(aphi, w3 * geta), t, xi, eta);
                                    if (in62)
                                        local[L62].offer(std::max(w1 * aphi, w3 * geta), t, xi, eta);
                                    if (conj) local[L63].offer(w4 * geta, t, xi, eta);
                                    if (in64a)
                                        local[L64A].offer(w3 * aphi + gxi + geta, t, xi, eta);
                                    local[L64B].offer(w3 * aphi + gxi + w4 * geta, t, xi, eta);
                                }
                            }
                        }
                    }
                }
            }
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        for (int i = 0; i < NCERT; ++i) acc[i].merge(local[i]);
    }

    // eta = 0 ray: Prop 6.6 quantities and zero counts.
    detail::MinAccum ray_eta, ray_xi;
    const double s_hi = std::ldexp(1.0, region.k_hi + 1);
    const int n_ray = region.n_ray * region.refine;
    for (const PhaseTriple& t : triples) {
        const Phase ph(cfg, t);
        int zeros = 0;
        double prev = 0.0;
        bool have_prev = false;
        for (int i = 0; i < n_ray; ++i) {
            const double s = s_hi * (i + 0.5) / n_ray;
            const Vec2 xi{s, 0.0};
            const double v = ph(xi, {0.0, 0.0});
            ray_eta.offer(std::fabs(v) + norm(ph.grad_eta(xi, {0.0, 0.0})), t, xi, {0, 0});
            ray_xi.offer(std::fabs(v) + norm(ph.grad_xi(xi, {0.0, 0.0})), t, xi, {0, 0});
            if (have_prev && (prev < 0.0) != (v < 0.0)) ++zeros;
            prev = v;
            have_prev = true;
        }
        rep.ray_zero_counts.push_back({t, zeros});
        rep.max_ray_zeros = std::max(rep.max_ray_zeros, zeros);
    }

    auto push = [&rep](const std::string& name, const detail::MinAccum& a, bool hyp) {
        LemmaCertificate c;
        c.name = name;
        c.constant = a.value;
        c.argmin_triple = a.triple;
        c.argmin_xi = a.xi;
        c.argmin_eta = a.eta;
        c.samples = a.samples;
        c.hypotheses_ok = hyp;
        rep.certificates.push_back(c);
    };
    push("6.1", acc[L61], rep.hypotheses_ok);
    push("6.2", acc[L62], rep.hypotheses_ok);
    push("6.3", acc[L63], rep.hypotheses_ok);
    push("6.4a", acc[L64A], rep.hypotheses_ok);
    push("6.4b", acc[L64B], rep.hypotheses_ok);
    push("6.6a-eta", ray_eta, rep.hypotheses_ok);
    push("6.6a-xi", ray_xi, rep.hypotheses_ok);
    return rep;
}

}  // namespace kglab
