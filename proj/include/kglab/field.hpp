#pragma once

// FourierField: samples of a continuous-convention Fourier transform
//
//   fhat(xi) = integral f(x) e^{-i x.xi} dx
//
// on the uniform lattice xi in (pi/L) {-n/2, ..., n/2 - 1}^2, stored
// row-major in natural (ascending frequency) order. The physical domain is
// the box [-L, L]^2 sampled at x in -L + (2L/n) {0, ..., n-1}.
//
// Discrete transforms carry the quadrature weights of the continuous
// convention, so Parseval reads
//
//   sum |f(x)|^2 h^2  =  (2 pi)^{-2} sum |fhat(xi)|^2 dxi^2     (exactly).
//
// Binary layout (documented for external tools): u32 n, f64 L, then n*n
// complex samples row-major, each two little-endian f64 (re, im). A JSON
// sidecar carries the species tag and flags.

#include <complex>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kglab/errors.hpp"
#include "kglab/fft.hpp"
#include "kglab/geometry.hpp"

namespace kglab {

using cplx = std::complex<double>;

struct FourierField {
    int n = 0;            // grid size per axis, power of two >= 4
    double box_len = 0.0; // L; physical domain [-L, L]^2
    std::vector<cplx> values;  // values[iy * n + ix]
    std::optional<int> species;
    std::vector<std::string> flags;

    double dx() const { return 2.0 * box_len / n; }
    double dxi() const { return M_PI / box_len; }
    double freq(int i) const { return dxi() * (i - n / 2); }
    double pos(int i) const { return -box_len + dx() * i; }
    Vec2 xi_at(int ix, int iy) const { return {freq(ix), freq(iy)}; }
    Vec2 x_at(int ix, int iy) const { return {pos(ix), pos(iy)}; }
    double nyquist() const { return dxi() * (n / 2); }

    cplx& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * n + ix]; }
    const cplx& at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * n + ix]; }

    bool has_flag(const std::string& f) const {
        for (const auto& g : flags)
            if (g == f) return true;
        return false;
    }
    void add_flag(const std::string& f) {
        if (!has_flag(f)) flags.push_back(f);
    }
};

inline FourierField make_field(int n, double box_len, std::optional<int> species = {}) {
    if (n < 4 || (n & (n - 1)) != 0)
        throw config_error("FourierField: n must be a power of two >= 4");
    if (!(box_len > 0.0)) throw config_error("FourierField: box length must be positive");
    FourierField f;
    f.n = n;
    f.box_len = box_len;
    f.species = species;
    f.values.assign(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
    return f;
}

namespace detail {

/// Checkerboard (-1)^{ix+iy} in place; the phase bookkeeping that maps the
/// centered lattice onto FFTW's 0-based transform.
inline void checkerboard(int n, std::vector<cplx>& v) {
    for (int iy = 0; iy < n; ++iy)
        for (int ix = (iy & 1) ? 0 : 1; ix < n; ix += 2)
            v[static_cast<std::size_t>(iy) * n + ix] = -v[static_cast<std::size_t>(iy) * n + ix];
}

}  // namespace detail

/// Physical samples f(x_j) from the frequency samples (natural order both sides).
inline std::vector<cplx> to_physical(const FourierField& f) {
    std::vector<cplx> tmp = f.values;
    detail::checkerboard(f.n, tmp);
    std::vector<cplx> out(tmp.size());
    Fft::transform_2d(f.n, tmp.data(), out.data(), FFTW_BACKWARD);
    detail::checkerboard(f.n, out);
    const double scale = f.dxi() * f.dxi() / (4.0 * M_PI * M_PI);
    for (auto& z : out) z *= scale;
    return out;
}

/// Fill the frequency samples from physical samples (inverse of to_physical).
inline void from_physical(FourierField& f, std::vector<cplx> phys) {
    if (phys.size() != f.values.size()) throw numeric_error("from_physical: size mismatch");
    detail::checkerboard(f.n, phys);
    Fft::transform_2d(f.n, phys.data(), f.values.data(), FFTW_FORWARD);
    detail::checkerboard(f.n, f.values);
    const double scale = f.dx() * f.dx();
    for (auto& z : f.values) z *= scale;
}

/// || fhat ||_{L^2(dxi)} by lattice quadrature.
inline double l2_hat(const FourierField& f) {
    double s = 0.0;
    for (const auto& z : f.values) s += std::norm(z);
    return std::sqrt(s) * f.dxi();
}

/// || f ||_{L^2(dx)} via Parseval.
inline double l2_phys(const FourierField& f) { return l2_hat(f) / (2.0 * M_PI); }

inline double linf_phys(const FourierField& f) {
    double m = 0.0;
    for (const auto& z : to_physical(f)) m = std::max(m, std::abs(z));
    return m;
}

/// Largest Hermitian-symmetry defect max |fhat(-xi) - conj(fhat(xi))| over
/// lattice points whose mirror is on the lattice.
inline double hermitian_defect(const FourierField& f) {
    const int n = f.n;
    double d = 0.0;
    for (int iy = 1; iy < n; ++iy)
        for (int ix = 1; ix < n; ++ix)
            d = std::max(d, std::abs(f.at(n - ix, n - iy) - std::conj(f.at(ix, iy))));
    return d;
}

template <class Fn>  // Fn: (Vec2 xi) -> double or cplx multiplier
inline FourierField multiply(const FourierField& f, Fn&& fn) {
    FourierField out = f;
    for (int iy = 0; iy < f.n; ++iy)
        for (int ix = 0; ix < f.n; ++ix) out.at(ix, iy) *= fn(f.xi_at(ix, iy));
    return out;
}

inline double max_abs(const FourierField& f) {
    double m = 0.0;
    for (const auto& z : f.values) m = std::max(m, std::abs(z));
    return m;
}

inline bool all_finite(const FourierField& f) {
    for (const auto& z : f.values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Binary + sidecar I/O.

inline void save_field(const FourierField& f, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw numeric_error("save_field: cannot open " + path);
    const std::uint32_t n32 = static_cast<std::uint32_t>(f.n);
    std::fwrite(&n32, sizeof n32, 1, fp);
    std::fwrite(&f.box_len, sizeof f.box_len, 1, fp);
    std::fwrite(f.values.data(), sizeof(cplx), f.values.size(), fp);
    std::fclose(fp);

    nlohmann::json sidecar;
    sidecar["n"] = f.n;
    sidecar["box"] = f.box_len;
    if (f.species) sidecar["species"] = *f.species;
    sidecar["flags"] = f.flags;
    std::FILE* sp = std::fopen((path + ".json").c_str(), "w");
    if (!sp) throw numeric_error("save_field: cannot open sidecar for " + path);
    const std::string text = sidecar.dump(2);
    std::fwrite(text.data(), 1, text.size(), sp);
    std::fclose(sp);
}

inline FourierField load_field(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw numeric_error("load_field: cannot open " + path);
    std::uint32_t n32 = 0;
    double box = 0.0;
    if (std::fread(&n32, sizeof n32, 1, fp) != 1 || std::fread(&box, sizeof box, 1, fp) != 1) {
        std::fclose(fp);
        throw numeric_error("load_field: truncated header in " + path);
    }
    FourierField f = make_field(static_cast<int>(n32), box);
    if (std::fread(f.values.data(), sizeof(cplx), f.values.size(), fp) != f.values.size()) {
        std::fclose(fp);
        throw numeric_error("load_field: truncated payload in " + path);
    }
    std::fclose(fp);

    std::FILE* sp = std::fopen((path + ".json").c_str(), "r");
    if (sp) {
        std::string text;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, sp)) > 0) text.append(buf, got);
        std::fclose(sp);
        const auto sidecar = nlohmann::json::parse(text, nullptr, false);
        if (!sidecar.is_discarded()) {
            if (sidecar.contains("species")) f.species = sidecar["species"].get<int>();
            if (sidecar.contains("flags"))
                for (const auto& g : sidecar["flags"]) f.flags.push_back(g.get<std::string>());
        }
    }
    return f;
}

}  // namespace kglab
