#include "pudtai/phasespace.hpp"

#include <cmath>

#include "pudtai/fft.hpp"

namespace pudtai {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double profile_phase(const PhaseProfile& pr, double x) {
    switch (pr.kind) {
        case PhaseKind::lens:
            return pr.strength * x * x / 2.0;
        case PhaseKind::propagation:
            return pr.strength * x * x / 2.0;
        case PhaseKind::dual_lens:
            return -pr.strength * x * std::abs(x) / 2.0;
        case PhaseKind::bidirectional_propagation:
            return square_wave(pr.strength * x * x / 2.0 + pr.phase_offset);
    }
    return 0.0;
}

bool domain_compatible(PhaseDomain pd, Domain d) {
    if (pd == PhaseDomain::temporal)
        return d == Domain::time || d == Domain::wavevector;
    return d == Domain::frequency || d == Domain::position;
}

// bilinear lookup with zero outside the grid
double sample_grid(const WignerGrid& g, double q, double p) {
    const std::size_t nq = g.q_axis.size(), np = g.p_axis.size();
    const double q0 = g.q_axis.front(), dq = g.q_axis[1] - g.q_axis[0];
    const double p0 = g.p_axis.front(), dp = g.p_axis[1] - g.p_axis[0];
    const double fq = (q - q0) / dq, fp = (p - p0) / dp;
    const double iqf = std::floor(fq), ipf = std::floor(fp);
    if (iqf < 0 || ipf < 0 || iqf >= static_cast<double>(nq - 1) ||
        ipf >= static_cast<double>(np - 1))
        return 0.0;
    const std::size_t iq = static_cast<std::size_t>(iqf);
    const std::size_t ip = static_cast<std::size_t>(ipf);
    const double aq = fq - iqf, ap = fp - ipf;
    return (1 - aq) * (1 - ap) * g.at(iq, ip) + aq * (1 - ap) * g.at(iq + 1, ip) +
           (1 - aq) * ap * g.at(iq, ip + 1) + aq * ap * g.at(iq + 1, ip + 1);
}

}  // namespace

double square_wave(double xi) {
    const double m = std::floor(xi / kPi);
    const bool even = std::fmod(m, 2.0) == 0.0;
    return even ? kPi : 0.0;
}

double WignerGrid::total() const {
    const double dq = q_axis[1] - q_axis[0];
    const double dp = p_axis[1] - p_axis[0];
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc * dq * dp;
}

std::vector<double> WignerGrid::q_marginal() const {
    const double dp = p_axis[1] - p_axis[0];
    std::vector<double> out(q_axis.size(), 0.0);
    for (std::size_t iq = 0; iq < q_axis.size(); ++iq) {
        double acc = 0.0;
        for (std::size_t ip = 0; ip < p_axis.size(); ++ip) acc += at(iq, ip);
        out[iq] = acc * dp;
    }
    return out;
}

std::vector<double> WignerGrid::p_marginal() const {
    const double dq = q_axis[1] - q_axis[0];
    std::vector<double> out(p_axis.size(), 0.0);
    for (std::size_t ip = 0; ip < p_axis.size(); ++ip) {
        double acc = 0.0;
        for (std::size_t iq = 0; iq < q_axis.size(); ++iq) acc += at(iq, ip);
        out[ip] = acc * dq;
    }
    return out;
}

WignerGrid wigner(const SampledField& field) {
    const std::size_t n = field.size();
    if (n < 16) throw std::invalid_argument("wigner needs at least 16 samples");
    const double dx = field.step;
    const std::size_t m = 2 * n;  // zero-padded correlation length

    WignerGrid w;
    w.q_axis.resize(n);
    for (std::size_t i = 0; i < n; ++i) w.q_axis[i] = field.coord(i);

    // correlation grid xi_l = 2*l*dx, l in [-n, n): half = m*dx gives step 2*dx
    SampledField corr = make_field(field.domain, m, static_cast<double>(m) * dx);

    bool have_axis = false;
    w.values.assign(n * m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < m; ++l) corr.samples[l] = 0.0;
        const std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(i);
        // corr index l holds offset (l - n): Q(q + off*dx) Q*(q - off*dx)
        for (std::ptrdiff_t off = -static_cast<std::ptrdiff_t>(n); off < static_cast<std::ptrdiff_t>(n); ++off) {
            const std::ptrdiff_t ja = ii + off, jb = ii - off;
            if (ja < 0 || jb < 0 || ja >= static_cast<std::ptrdiff_t>(n) ||
                jb >= static_cast<std::ptrdiff_t>(n))
                continue;
            corr.samples[static_cast<std::size_t>(off + static_cast<std::ptrdiff_t>(n))] =
                field.samples[static_cast<std::size_t>(ja)] *
                std::conj(field.samples[static_cast<std::size_t>(jb)]);
        }
        SampledField row = fft_forward(corr);
        if (!have_axis) {
            w.p_axis.resize(m);
            for (std::size_t k = 0; k < m; ++k) w.p_axis[k] = row.coord(k);
            have_axis = true;
        }
        const double scale = 1.0 / std::sqrt(kTwoPi);
        for (std::size_t k = 0; k < m; ++k)
            w.values[i * m + k] = scale * row.samples[k].real();
    }
    return w;
}

SampledField apply_phase(const SampledField& field, const PhaseProfile& profile) {
    if (!domain_compatible(profile.domain, field.domain))
        throw std::invalid_argument("phase profile domain does not match field domain");
    SampledField out = field;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double ph = profile_phase(profile, out.coord(i));
        out.samples[i] *= cplx{std::cos(ph), std::sin(ph)};
    }
    return out;
}

WignerGrid wigner_shear_check(const PhaseProfile& profile, const WignerGrid& grid) {
    if (profile.kind == PhaseKind::bidirectional_propagation)
        throw std::invalid_argument("order splitting is not a single shear");
    WignerGrid out = grid;
    for (std::size_t iq = 0; iq < grid.q_axis.size(); ++iq) {
        const double q = grid.q_axis[iq];
        for (std::size_t ip = 0; ip < grid.p_axis.size(); ++ip) {
            const double p = grid.p_axis[ip];
            double qs = q, ps = p;
            switch (profile.kind) {
                case PhaseKind::lens:           // active p -> p + a q
                    ps = p - profile.strength * q;
                    break;
                case PhaseKind::propagation:    // active q -> q - b p
                    qs = q + profile.strength * p;
                    break;
                case PhaseKind::dual_lens:      // active p -> p - a |q|
                    ps = p + profile.strength * std::abs(q);
                    break;
                default:
                    break;
            }
            out.values[iq * grid.p_axis.size() + ip] = sample_grid(grid, qs, ps);
        }
    }
    return out;
}

SampledField coordinate_map(const SampledField& field, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("gradient slope must be positive");
    SampledField out = field;
    switch (field.domain) {
        case Domain::frequency:  // z = w / beta
            out.domain = Domain::position;
            out.start = field.start / beta;
            out.step = field.step / beta;
            break;
        case Domain::position:
            out.domain = Domain::frequency;
            out.start = field.start * beta;
            out.step = field.step * beta;
            break;
        case Domain::time:  // k_z = beta * t
            out.domain = Domain::wavevector;
            out.start = field.start * beta;
            out.step = field.step * beta;
            break;
        case Domain::wavevector:
            out.domain = Domain::time;
            out.start = field.start / beta;
            out.step = field.step / beta;
            break;
    }
    return out;
}

}  // namespace pudtai
