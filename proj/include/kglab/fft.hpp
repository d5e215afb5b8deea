#pragma once

// Thin FFTW wrapper: cached plans per (size, direction), created with
// FFTW_UNALIGNED so the new-array execute calls work on any buffer. Plan
// creation is serialized behind a mutex (FFTW planning is not thread-safe);
// execution on distinct buffers is.

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include "kglab/errors.hpp"

namespace kglab {

class Fft {
public:
    /// Unnormalized 2D transform of n x n row-major complex data, out-of-place.
    static void transform_2d(int n, const std::complex<double>* in, std::complex<double>* out,
                             int sign) {
        if (in == out) throw numeric_error("Fft: in-place transform not supported");
        fftw_execute_dft(plan_2d(n, sign),
                         reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

    /// Unnormalized 1D transform of length n, out-of-place.
    static void transform_1d(int n, const std::complex<double>* in, std::complex<double>* out,
                             int sign) {
        if (in == out) throw numeric_error("Fft: in-place transform not supported");
        fftw_execute_dft(plan_1d(n, sign),
                         reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    static fftw_plan plan_2d(int n, int sign) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, fftw_plan> cache;
        std::lock_guard<std::mutex> lock(mu);
        const auto key = std::make_pair(n, sign);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::vector<std::complex<double>> a(static_cast<std::size_t>(n) * n),
            b(static_cast<std::size_t>(n) * n);
        fftw_plan p = fftw_plan_dft_2d(n, n, reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw numeric_error("Fft: planning failed");
        cache.emplace(key, p);
        return p;
    }

    static fftw_plan plan_1d(int n, int sign) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, fftw_plan> cache;
        std::lock_guard<std::mutex> lock(mu);
        const auto key = std::make_pair(n, sign);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::vector<std::complex<double>> a(n), b(n);
        fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw numeric_error("Fft: planning failed");
        cache.emplace(key, p);
        return p;
    }
};

}  // namespace kglab
