#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pudtai {

using cplx = std::complex<double>;

enum class Domain { time, frequency, position, wavevector };

// Complex envelope sampled on a uniform 1-D grid. coord(i) = start + i*step.
struct SampledField {
    Domain domain = Domain::time;
    double start = 0.0;
    double step = 1.0;
    std::vector<cplx> samples;

    std::size_t size() const { return samples.size(); }
    double coord(std::size_t i) const { return start + static_cast<double>(i) * step; }

    // sum |s|^2 * step
    double norm2() const {
        double acc = 0.0;
        for (const cplx& v : samples) acc += std::norm(v);
        return acc * step;
    }

    void require(Domain d, const char* what) const {
        if (domain != d) throw std::invalid_argument(what);
    }
};

// Centered uniform grid: n points, x_i = -half + i*step, step = 2*half/n.
// The rightmost point half - step stays off the upper edge; the grid is
// symmetric about zero for even n (x_{n/2} = 0).
inline SampledField make_field(Domain d, std::size_t n, double half) {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 samples");
    SampledField f;
    f.domain = d;
    f.step = 2.0 * half / static_cast<double>(n);
    f.start = -half;
    f.samples.assign(n, cplx{0.0, 0.0});
    return f;
}

inline double overlap_re(const SampledField& a, const SampledField& b) {
    if (a.size() != b.size()) throw std::invalid_argument("field size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += (std::conj(a.samples[i]) * b.samples[i]).real();
    return acc * a.step;
}

}  // namespace pudtai
