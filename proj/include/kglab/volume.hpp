#pragma once

// Monte-Carlo estimates of the level-set measures behind the volume bounds:
//
//   PhiSublevel      E   = { max(|xi|,|eta|) <= 2^k, |Phi| <= 2^{-k} eps }
//   PhiAndUpsilon    E1' = E  with  |Upsilon| <= 2^{-3k} eps',
//                                   |grad_eta Phi| >= 2^{-D0}
//                    (transposed set uses the grad_xi floor)
//   PhiAndOmega      E'  = { |Phi| <= eps, |Omega_eta Phi| <= kappa_theta }
//                    weighted by phi_k(xi) phi_k1(xi-eta) phi_k2(eta)
//
// Each estimate is  sup_xi integral 1_E(xi, eta) d eta  over a grid of xi
// radii (the phases are rotation-equivariant, so xi can be pinned to the
// positive axis), together with the transposed sup_eta integral. Sampling is
// counter-seeded, so results are independent of the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "kglab/cutoffs.hpp"
#include "kglab/phase.hpp"
#include "kglab/rng.hpp"
#include "kglab/system.hpp"

namespace kglab {

enum class LevelSetQuantity { PhiSublevel, PhiAndUpsilon, PhiAndOmega };

inline std::string to_string(LevelSetQuantity q) {
    switch (q) {
        case LevelSetQuantity::PhiSublevel: return "phi";
        case LevelSetQuantity::PhiAndUpsilon: return "phi-upsilon";
        case LevelSetQuantity::PhiAndOmega: return "phi-omega";
    }
    return "?";
}

struct VolumeParams {
    long long samples = 1'000'000;  // per (outer point, eps) cell
    std::uint64_t seed = 20260809;
    int outer_points = 24;       // grid for the sup over the outer variable
    double d0_floor = 10.0;      // gradient floor 2^{-D0} in PhiAndUpsilon
    double eps_prime = 0.25;     // Upsilon threshold: |Upsilon| <= 2^{-3k} eps'
    double kappa_theta = 0.0625; // angular threshold in PhiAndOmega
    int k1 = 0, k2 = 0;          // companion annuli for PhiAndOmega
    double ci_rel_warn = 0.2;    // CI half-width / estimate warning level
};

struct VolumeEstimate {
    double sup_eta_integral = 0.0;  // sup_xi of the eta-integral
    double sup_xi_integral = 0.0;   // transposed
    double ci_eta = 0.0;            // 95% binomial CI half-width at the argmax
    double ci_xi = 0.0;
    double argmax_xi_radius = 0.0;
    double argmax_eta_radius = 0.0;
    long long samples_per_cell = 0;
    bool ci_warning = false;
};

namespace detail {

struct CellResult {
    double integral = 0.0;
    double ci = 0.0;
};

/// One Monte-Carlo cell: the eta-integral (or the transposed xi-integral when
/// `transposed`) of the selected indicator for a fixed outer point.
inline CellResult volume_cell(const Phase& ph, LevelSetQuantity q, double eps, int k,
                              const VolumeParams& prm, double outer_radius, bool transposed,
                              std::uint64_t stream) {
    const double kpow = std::ldexp(1.0, k);
    CellResult out;

    if (q == LevelSetQuantity::PhiAndOmega) {
        // sample in the support annulus of the inner cutoff (eta lives in the
        // k2 ring, xi in the k ring)
        const int k_in = transposed ? k : prm.k2;
        const double r_lo = CutoffFamily::plateau * std::ldexp(1.0, k_in - 1);
        const double r_hi = CutoffFamily::support * std::ldexp(1.0, k_in);
        const double area = M_PI * (r_hi * r_hi - r_lo * r_lo);
        double wsum = 0.0, wsq = 0.0;
        const Vec2 fixed{outer_radius, 0.0};
        for (long long i = 0; i < prm.samples; ++i) {
            const double u = CounterRng::uniform(prm.seed, stream, i, 0);
            const double th = 2.0 * M_PI * CounterRng::uniform(prm.seed, stream, i, 1);
            const double r = std::sqrt(r_lo * r_lo + u * (r_hi * r_hi - r_lo * r_lo));
            const Vec2 pt{r * std::cos(th), r * std::sin(th)};
            const Vec2 xi = transposed ? pt : fixed;
            const Vec2 eta = transposed ? fixed : pt;
            double w = CutoffFamily::phi_k(k, norm(xi)) * CutoffFamily::phi_k(prm.k1, norm(xi - eta)) *
                       CutoffFamily::phi_k(prm.k2, norm(eta));
            if (w != 0.0) {
                if (std::fabs(ph(xi, eta)) > eps || std::fabs(ph.omega_eta(xi, eta)) > prm.kappa_theta)
                    w = 0.0;
            }
            wsum += w;
            wsq += w * w;
        }
        const double mean = wsum / prm.samples;
        const double var = std::max(0.0, wsq / prm.samples - mean * mean);
        out.integral = area * mean;
        out.ci = area * 1.96 * std::sqrt(var / prm.samples);
        return out;
    }

    // disk |.| <= 2^k domains
    const double area = M_PI * kpow * kpow;
    const double thr_phi = eps / kpow;
    const double thr_ups = prm.eps_prime / (kpow * kpow * kpow);
    const double grad_floor = std::exp2(-prm.d0_floor);
    long long hits = 0;
    const Vec2 fixed{outer_radius, 0.0};
    for (long long i = 0; i < prm.samples; ++i) {
        const double u = CounterRng::uniform(prm.seed, stream, i, 0);
        const double th = 2.0 * M_PI * CounterRng::uniform(prm.seed, stream, i, 1);
        const double r = kpow * std::sqrt(u);
        const Vec2 pt{r * std::cos(th), r * std::sin(th)};
        const Vec2 xi = transposed ? pt : fixed;
        const Vec2 eta = transposed ? fixed : pt;
        if (std::fabs(ph(xi, eta)) > thr_phi) continue;
        if (q == LevelSetQuantity::PhiAndUpsilon) {
            if (std::fabs(ph.upsilon(xi, eta)) > thr_ups) continue;
            const double g = transposed ? norm(ph.grad_xi(xi, eta)) : norm(ph.grad_eta(xi, eta));
            if (g < grad_floor) continue;
        }
        ++hits;
    }
    const double p = static_cast<double>(hits) / prm.samples;
    out.integral = area * p;
    out.ci = area * 1.96 * std::sqrt(std::max(0.0, p * (1.0 - p)) / prm.samples);
    return out;
}

}  // namespace detail

inline VolumeEstimate level_set_volume(const SystemConfig& cfg, PhaseTriple t, LevelSetQuantity q,
                                       double eps, int k, const VolumeParams& prm = {}) {
    if (!(eps > 0.0) || eps > 0.5) throw config_error("level_set_volume: eps must lie in (0, 1/2]");
    const Phase ph(cfg, t);
    const double kpow = std::ldexp(1.0, k);
    VolumeEstimate est;
    est.samples_per_cell = prm.samples;

    const int m = std::max(2, prm.outer_points);
    std::vector<detail::CellResult> eta_cells(m), xi_cells(m);
    // Outer radius grids: the fixed variable is xi (k ring/disk) for the
    // eta-integral and eta (k2 ring / k disk) for the transposed one.
    std::vector<double> radii_xi(m), radii_eta(m);
    for (int i = 0; i < m; ++i) {
        if (q == LevelSetQuantity::PhiAndOmega) {
            auto ring = [&](int kk) {
                const double lo = CutoffFamily::plateau * std::ldexp(1.0, kk - 1);
                const double hi = CutoffFamily::support * std::ldexp(1.0, kk);
                return lo + (hi - lo) * (i + 0.5) / m;
            };
            radii_xi[i] = ring(k);
            radii_eta[i] = ring(prm.k2);
        } else {
            radii_xi[i] = radii_eta[i] = kpow * (i + 0.5) / m;
        }
    }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < 2 * m; ++i) {
        const bool transposed = i >= m;
        const int idx = i % m;
        const double outer = transposed ? radii_eta[idx] : radii_xi[idx];
        const auto cell = detail::volume_cell(ph, q, eps, k, prm, outer, transposed,
                                              static_cast<std::uint64_t>(i + 1));
        if (transposed)
            xi_cells[idx] = cell;
        else
            eta_cells[idx] = cell;
    }

    for (int i = 0; i < m; ++i) {
        if (eta_cells[i].integral >= est.sup_eta_integral) {
            est.sup_eta_integral = eta_cells[i].integral;
            est.ci_eta = eta_cells[i].ci;
            est.argmax_xi_radius = radii_xi[i];
        }
        if (xi_cells[i].integral >= est.sup_xi_integral) {
            est.sup_xi_integral = xi_cells[i].integral;
            est.ci_xi = xi_cells[i].ci;
            est.argmax_eta_radius = radii_eta[i];
        }
    }
    est.ci_warning = (est.sup_eta_integral > 0.0 &&
                      est.ci_eta > prm.ci_rel_warn * est.sup_eta_integral) ||
                     (est.sup_xi_integral > 0.0 && est.ci_xi > prm.ci_rel_warn * est.sup_xi_integral);
    return est;
}

struct VolumeTableRow {
    double eps = 0.0;
    VolumeEstimate estimate;
    double ratio_to_eps_log = 0.0;  // volume / (eps log(1/eps))
};

inline std::vector<VolumeTableRow> volume_table(const SystemConfig& cfg, PhaseTriple t,
                                                LevelSetQuantity q, const std::vector<double>& eps,
                                                int k, const VolumeParams& prm = {}) {
    std::vector<VolumeTableRow> rows;
    for (double e : eps) {
        VolumeTableRow row;
        row.eps = e;
        row.estimate = level_set_volume(cfg, t, q, e, k, prm);
        row.ratio_to_eps_log = row.estimate.sup_eta_integral / (e * std::log(1.0 / e));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace kglab
