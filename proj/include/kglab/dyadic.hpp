#pragma once

// Littlewood-Paley machinery on FourierFields:
//
//   P_k     multiply fhat by phi_k(|xi|)
//   Q_jk    multiply P_k f by tilde{phi}_j^{(k)}(|x|) in physical space
//   A_n     multiply fhat by phi^{[-j-1,0]}_{-n}(Psi*_sigma(|xi|))
//           (bucket n of the distance-to-resonance decomposition; buckets
//            0..j+1 partition unity by construction)
//   Omega^a spectral rotation powers: the rotation generator commutes with
//           the Fourier transform, so Omega in xi is applied through the
//           conjugate domain as xi1 * wh(x2 f) - xi2 * wh(x1 f) (times -i),
//           with exact coordinate products and exact frequency multipliers;
//           spectrally accurate for fields whose physical representation
//           decays inside the box
//
// plus the Sobolev, H^{N1}_Omega, B^sigma_j and Z norms over discrete data.
// All norms are physical-side L^2 normalized (Parseval).
//
// The paper-scale regularity constants (delta = 4e-7, N0 = 400/delta^2,
// N1 = 8/delta^2) are representable in DyadicParams but the defaults are
// desk-scale; weights and rotation powers are evaluated with the configured
// values.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "kglab/cutoffs.hpp"
#include "kglab/errors.hpp"
#include "kglab/field.hpp"
#include "kglab/resonance.hpp"

namespace kglab {

struct DyadicParams {
    double delta = 0.01;  // paper: 4e-7
    double n0 = 8.0;      // Sobolev exponent; paper: 400/delta^2
    double n1 = 8.0;      // rotation regularity; paper: 8/delta^2
    int a_max = 8;        // largest rotation power the lattice machinery applies
    double d0 = 10.0;     // 2^D0 weight inside Psi*
};

/// Index set J = {(k, j): j >= 0, k + j >= 0}.
inline bool in_index_set(int k, int j) { return j >= 0 && k + j >= 0; }

// ---------------------------------------------------------------------------
// Projections.

/// P_k: dyadic annulus restriction. Marks the output "truncated" when the
/// annulus is not resolved by the lattice (inner scale below the frequency
/// spacing or outer scale beyond Nyquist).
inline FourierField project_pk(const FourierField& f, int k) {
    FourierField out = multiply(f, [k](Vec2 xi) { return CutoffFamily::phi_k(k, norm(xi)); });
    if (std::ldexp(1.0, k - 1) < f.dxi() || std::ldexp(1.0, k + 1) > f.nyquist())
        out.add_flag("truncated");
    return out;
}

inline FourierField project_p_le(const FourierField& f, double c) {
    return multiply(f, [c](Vec2 xi) { return CutoffFamily::phi_le(c, norm(xi)); });
}

/// Q_{jk}: spatial localization of P_k f at scale 2^j. Flagged when the
/// cutoff support leaks outside the box.
inline FourierField project_qjk(const FourierField& f, int j, int k) {
    if (!in_index_set(k, j)) throw config_error("project_qjk: (k, j) outside the index set");
    FourierField pk = project_pk(f, k);
    std::vector<cplx> phys = to_physical(pk);
    for (int iy = 0; iy < f.n; ++iy)
        for (int ix = 0; ix < f.n; ++ix)
            phys[static_cast<std::size_t>(iy) * f.n + ix] *=
                CutoffFamily::phi_tilde(k, j, norm(f.x_at(ix, iy)));
    from_physical(pk, std::move(phys));
    if (CutoffFamily::support * std::ldexp(1.0, j) > f.box_len) pk.add_flag("leaks outside box");
    return pk;
}

/// A^sigma_{n,(j)}: bucket n in {0, ..., j+1} of the Psi* decomposition.
inline FourierField project_an(const FourierField& f, const PsiStarTable& table, int n, int j) {
    if (n < 0 || n > j + 1) throw config_error("project_an: bucket n must lie in {0..j+1}");
    return multiply(f, [&](Vec2 xi) { return CutoffFamily::phi_win(-j - 1, 0, -n, table(norm(xi))); });
}

// ---------------------------------------------------------------------------
// Rotation vector field Omega = x1 d2 - x2 d1. The generator commutes with
// the Fourier transform, so on frequency data
//
//   (Omega fhat)(xi) = xi1 d_xi2 fhat - xi2 d_xi1 fhat
//                    = -i [ xi1 wh(x2 f)(xi) - xi2 wh(x1 f)(xi) ],
//
// with the coordinate products taken on the physical lattice. Both factors
// are exact lattice operations; the only approximation is the box
// periodization, negligible for fields that decay inside the box.

namespace detail {

inline FourierField rotate_once(const FourierField& f) {
    const std::vector<cplx> phys = to_physical(f);
    FourierField f1 = make_field(f.n, f.box_len, f.species);
    FourierField f2 = make_field(f.n, f.box_len, f.species);
    std::vector<cplx> g(phys.size());
    for (int iy = 0; iy < f.n; ++iy)
        for (int ix = 0; ix < f.n; ++ix)
            g[static_cast<std::size_t>(iy) * f.n + ix] =
                phys[static_cast<std::size_t>(iy) * f.n + ix] * f.pos(ix);
    from_physical(f1, g);  // wh(x1 f)
    for (int iy = 0; iy < f.n; ++iy)
        for (int ix = 0; ix < f.n; ++ix)
            g[static_cast<std::size_t>(iy) * f.n + ix] =
                phys[static_cast<std::size_t>(iy) * f.n + ix] * f.pos(iy);
    from_physical(f2, g);  // wh(x2 f)

    FourierField out = make_field(f.n, f.box_len, f.species);
    out.flags = f.flags;
    const cplx minus_i{0.0, -1.0};
    for (int iy = 0; iy < f.n; ++iy)
        for (int ix = 0; ix < f.n; ++ix) {
            const Vec2 xi = f.xi_at(ix, iy);
            out.at(ix, iy) = minus_i * (xi.x * f2.at(ix, iy) - xi.y * f1.at(ix, iy));
        }
    return out;
}

}  // namespace detail

/// Omega^a f, applied one generator power at a time.
inline FourierField rotation_apply(const FourierField& f, int a, const DyadicParams& prm = {}) {
    if (a < 0 || a > prm.a_max)
        throw config_error("rotation_apply: power exceeds a_max = " + std::to_string(prm.a_max));
    FourierField out = f;
    for (int i = 0; i < a; ++i) out = detail::rotate_once(out);
    return out;
}

// ---------------------------------------------------------------------------
// Norms (physical-side L^2 normalization throughout).

inline double sobolev_norm(const FourierField& f, double n_reg) {
    double s = 0.0;
    for (int iy = 0; iy < f.n; ++iy)
        for (int ix = 0; ix < f.n; ++ix)
            s += std::pow(1.0 + norm_sq(f.xi_at(ix, iy)), n_reg) * std::norm(f.at(ix, iy));
    return std::sqrt(s) * f.dxi() / (2.0 * M_PI);
}

inline double h_omega_norm(const FourierField& f, double n1, const DyadicParams& prm = {}) {
    const int top = std::min(static_cast<int>(n1), prm.a_max);
    double best = 0.0;
    for (int m = 0; m <= top; ++m) best = std::max(best, l2_phys(rotation_apply(f, m, prm)));
    return best;
}

/// B^sigma_j norm: 2^{(1-20 delta) j} sup_n 2^{-(1/2-19 delta) n} ||A_{n,(j)} g||.
inline double b_norm(const FourierField& g, int j, const PsiStarTable& table,
                     const DyadicParams& prm = {}) {
    double sup = 0.0;
    for (int n = 0; n <= j + 1; ++n) {
        const double w = std::exp2(-(0.5 - 19.0 * prm.delta) * n);
        sup = std::max(sup, w * l2_phys(project_an(g, table, n, j)));
    }
    return std::exp2((1.0 - 20.0 * prm.delta) * j) * sup;
}

/// Lattice-representable index ranges for the (k, j) sup.
struct DyadicRange {
    int k_lo = 0, k_hi = 0, j_hi = 0;
};

inline DyadicRange lattice_range(const FourierField& f) {
    DyadicRange r;
    r.k_lo = static_cast<int>(std::ceil(std::log2(f.dxi()))) + 1;
    r.k_hi = static_cast<int>(std::floor(std::log2(f.nyquist()))) - 1;
    r.j_hi = static_cast<int>(std::floor(std::log2(f.box_len / CutoffFamily::support)));
    return r;
}

/// Z^sigma_1 norm: sup over lattice-representable (k, j) of
/// 2^{6 k_+} || Q_{jk} f ||_{B^sigma_j}.
inline double z1_norm(const FourierField& f, const PsiStarTable& table,
                      const DyadicParams& prm = {}) {
    const DyadicRange r = lattice_range(f);
    double sup = 0.0;
#ifdef _OPENMP
#pragma omp parallel for collapse(2) schedule(dynamic) reduction(max : sup)
#endif
    for (int k = r.k_lo; k <= r.k_hi; ++k) {
        for (int j = 0; j <= r.j_hi; ++j) {
            if (!in_index_set(k, j) || j < -std::min(k, 0)) continue;
            const double v =
                std::exp2(6.0 * std::max(k, 0)) * b_norm(project_qjk(f, j, k), j, table, prm);
            sup = std::max(sup, v);
        }
    }
    return sup;
}

/// Z norm of a profile vector: sup_{m <= min(N1/2, a_max)} sum_sigma
/// || Omega^m f_sigma ||_{Z^sigma_1}.
inline double z_norm(const std::vector<FourierField>& fields,
                     const std::vector<PsiStarTable>& tables, const DyadicParams& prm = {}) {
    if (fields.size() != tables.size()) throw config_error("z_norm: field/table count mismatch");
    const int top = std::min(static_cast<int>(prm.n1 / 2.0), prm.a_max);
    double sup = 0.0;
    for (int m = 0; m <= top; ++m) {
        double sum = 0.0;
        for (std::size_t i = 0; i < fields.size(); ++i)
            sum += z1_norm(rotation_apply(fields[i], m, prm), tables[i], prm);
        sup = std::max(sup, sum);
    }
    return sup;
}

}  // namespace kglab
