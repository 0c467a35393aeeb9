#include "pudtai/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace pudtai {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft is.
// Plans are cached per (size, sign) with FFTW_ESTIMATE so results do not
// depend on run-to-run plan selection.
std::mutex g_plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
    static std::unordered_map<std::size_t, fftw_plan> fwd, bwd;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& cache = (sign == FFTW_FORWARD) ? fwd : bwd;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(n, p);
    return p;
}

void run_fft(std::vector<cplx>& data, int sign) {
    fftw_plan p = plan_for(data.size(), sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

// Centered DFT with explicit phase ramps:
//   F_k = scale * e^{-i w_k x_0} * DFT_j[ f_j e^{-i w_0' x_j} ]   (forward)
// where w_0' folds the conjugate-grid origin into the input. Both grids are
// centered, so the ramps are linear phases evaluated exactly.
SampledField centered_transform(const SampledField& f, int sign) {
    const std::size_t n = f.size();
    if (n < 2) throw std::invalid_argument("fft needs at least 2 samples");
    const double dx = f.step;
    const double dw = kTwoPi / (static_cast<double>(n) * dx);
    const double w0 = -0.5 * static_cast<double>(n) * dw;
    const double x0 = f.start;
    const double s = (sign == FFTW_FORWARD) ? -1.0 : 1.0;

    SampledField out;
    out.domain = conjugate_domain(f.domain);
    out.step = dw;
    out.start = w0;
    out.samples.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double ph = s * w0 * f.coord(j);
        out.samples[j] = f.samples[j] * cplx{std::cos(ph), std::sin(ph)};
    }
    run_fft(out.samples, sign);
    const double scale = dx / std::sqrt(kTwoPi);
    for (std::size_t k = 0; k < n; ++k) {
        const double ph = s * static_cast<double>(k) * dw * x0;
        out.samples[k] *= scale * cplx{std::cos(ph), std::sin(ph)};
    }
    return out;
}

}  // namespace

Domain conjugate_domain(Domain d) {
    switch (d) {
        case Domain::time: return Domain::frequency;
        case Domain::frequency: return Domain::time;
        case Domain::position: return Domain::wavevector;
        case Domain::wavevector: return Domain::position;
    }
    return Domain::time;
}

SampledField fft_forward(const SampledField& f) {
    return centered_transform(f, FFTW_FORWARD);
}

SampledField fft_inverse(const SampledField& F) {
    return centered_transform(F, FFTW_BACKWARD);
}

SampledField upsample(const SampledField& f, std::size_t factor) {
    if (factor <= 1) return f;
    SampledField F = fft_forward(f);
    const std::size_t n = f.size();
    const std::size_t m = n * factor;
    SampledField Fp;
    Fp.domain = F.domain;
    Fp.step = F.step;
    Fp.start = -0.5 * static_cast<double>(m) * F.step;
    Fp.samples.assign(m, cplx{0.0, 0.0});
    const std::size_t off = (m - n) / 2;
    for (std::size_t i = 0; i < n; ++i) Fp.samples[off + i] = F.samples[i];
    SampledField out = fft_inverse(Fp);
    out.domain = f.domain;
    return out;
}

}  // namespace pudtai
