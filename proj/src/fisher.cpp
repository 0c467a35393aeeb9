#include "pudtai/fisher.hpp"

#include <cmath>
#include <stdexcept>

#include "pudtai/signals.hpp"

namespace pudtai {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

double fisher_of_probs(const std::vector<double>& p, const std::vector<double>& dp,
                       double prob_floor, double* excluded) {
    double acc = 0.0, out = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < prob_floor) {
            out += p[i];
            continue;
        }
        acc += dp[i] * dp[i] / p[i];
    }
    if (excluded) *excluded = out;
    return acc;
}
}  // namespace

double qfi() { return 0.25; }

double f_sliver(double eps, double visibility) {
    const double v = visibility;
    if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("visibility must be in (0, 1]");
    const double g = std::exp(-eps * eps / 8.0);
    const double pa = 0.5 * (1.0 - v * g);
    const double ps = 1.0 - pa;
    const double dpa = v * (eps / 8.0) * g;
    if (pa <= 0.0) {  // v = 1, eps = 0: take the limit
        const double b = small_eps_slope(0.0);
        return b / 4.0;
    }
    return dpa * dpa * (1.0 / pa + 1.0 / ps);
}

double f_pudtai(double eps, const DeviceCalibration& cal) {
    const double t = cal.t_a_sigma;
    const double f0 = clipped_norm(t);
    const double b = small_eps_slope(t);
    const double e2 = eps * eps;

    if (std::abs(eps) < 1e-4) {
        // 2 p_-+ to quadratic order
        const double pm2 = f0 * (1.0 - cal.v_minus) + cal.v_minus * e2 * b / 8.0;
        const double pp2 = f0 * (1.0 + cal.v_plus) - cal.v_plus * e2 * b / 8.0;
        double term_m;
        if (e2 == 0.0)
            term_m = (pm2 == 0.0) ? b / 4.0 : 0.0;
        else
            term_m = cal.v_minus * cal.v_minus * e2 * b * b / (32.0 * pm2);
        const double term_p = cal.eta_plus * cal.v_plus * cal.v_plus * e2 * b * b / (32.0 * pp2);
        return term_m + term_p;
    }

    const double f = aux_f(t, eps);
    const double base =
        std::sqrt(8.0 / kPi) * std::exp(-2.0 * t * t + e2 / 8.0) * std::sin(t * eps) + eps * f;
    const double shared = std::exp(-e2 / 4.0) * base * base;
    const PortProbabilities p = port_probabilities(eps, cal);
    double out = 0.0;
    if (p.p_minus > 0.0) out += cal.v_minus * cal.v_minus * shared / (64.0 * p.p_minus);
    if (p.p_plus > 0.0)
        out += cal.eta_plus * cal.eta_plus * cal.v_plus * cal.v_plus * shared / (64.0 * p.p_plus);
    return out;
}

double f_di(double eps) {
    const double e = std::abs(eps);
    const double half = 10.0 + e;
    const std::size_t n = 8001;
    const double dw = 2.0 * half / static_cast<double>(n - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = -half + dw * static_cast<double>(i);
        const double a = normal_pdf(w - 0.5 * e), bb = normal_pdf(w + 0.5 * e);
        const double p = 0.5 * (a + bb);
        if (p < 1e-290) continue;
        const double dp = 0.25 * ((w - 0.5 * e) * a - (w + 0.5 * e) * bb);
        const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += weight * dp * dp / p;
    }
    return acc * dw;
}

NumericFisher fisher_numeric(const std::function<std::vector<double>(double)>& probs,
                             double eps, double d_eps, double prob_floor) {
    if (!(d_eps > 0.0)) throw std::invalid_argument("step must be positive");
    const std::vector<double> p0 = probs(eps);
    auto diff = [&](double h) {
        const std::vector<double> hi = probs(eps + h), lo = probs(eps - h);
        std::vector<double> d(hi.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = (hi[i] - lo[i]) / (2.0 * h);
        return d;
    };
    const std::vector<double> d1 = diff(d_eps), d2 = diff(0.5 * d_eps);
    std::vector<double> dp(p0.size());
    for (std::size_t i = 0; i < dp.size(); ++i) dp[i] = (4.0 * d2[i] - d1[i]) / 3.0;
    NumericFisher out;
    out.value = fisher_of_probs(p0, dp, prob_floor, &out.excluded_mass);
    return out;
}

NumericFisher fisher_numeric_density(const std::function<std::vector<double>(double)>& density,
                                     double measure, double eps, double d_eps,
                                     double prob_floor) {
    auto probs = [&](double e) {
        std::vector<double> p = density(e);
        for (double& x : p) x *= measure;
        return p;
    };
    return fisher_numeric(probs, eps, d_eps, prob_floor);
}

FiDensityCurve fi_density(double eps, const DeviceCalibration& cal, const SampledField& time_grid) {
    time_grid.require(Domain::time, "fi_density");
    FiDensityCurve out;
    const std::size_t n = time_grid.size();
    out.time.resize(n);
    out.minus.assign(n, 0.0);
    out.plus.assign(n, 0.0);
    out.total.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = time_grid.coord(i);
        out.time[i] = t;
        if (std::abs(t) < cal.t_a_sigma) continue;
        const double env = gaussian_time(t, 1.0);
        const double w2 = env * env;
        const double c = std::cos(eps * t), s = std::sin(eps * t);
        const double dm = 0.5 * w2 * cal.v_minus * t * s;
        const double dp = -0.5 * w2 * cal.eta_plus * cal.v_plus * t * s;
        const double pm = 0.5 * w2 * (1.0 - cal.v_minus * c);
        const double pp = 0.5 * w2 * cal.eta_plus * (1.0 + cal.v_plus * c);
        if (pm > 0.0) out.minus[i] = dm * dm / pm;
        if (pp > 0.0) out.plus[i] = dp * dp / pp;
        out.total[i] = out.minus[i] + out.plus[i];
    }
    return out;
}

std::pair<double, double> aperture_flux_efficiencies(double t_a_sigma) {
    return {small_eps_slope(t_a_sigma), clipped_norm(t_a_sigma)};
}

double resolved_fi_efficiency(double t_a_sigma) {
    const double y = 2.0 * t_a_sigma * t_a_sigma;
    const double ry = std::sqrt(y);
    const double ey = std::exp(-y);
    const double g52 = 0.75 * std::sqrt(kPi) * std::erfc(ry) + (1.5 + y) * ry * ey;
    return g52 / (0.75 * std::sqrt(kPi));
}

double s_factor(const std::function<double(double)>& fisher, double eps_probe) {
    if (!(eps_probe > 0.0)) throw std::invalid_argument("probe separation must be positive");
    auto ratio = [&](double e) { return fisher(e) * 8.0 / (e * e); };
    const double s1 = ratio(eps_probe);
    const double s2 = ratio(0.5 * eps_probe);
    return s2 + (s2 - s1) / 3.0;  // O(eps^2) error cancelled
}

double s_sliver_closed_form(double visibility) {
    const double v = visibility;
    if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("visibility must be in (0, 1)");
    return v * v / (2.0 * (1.0 - v * v));
}

double s_pudtai_closed_form(const DeviceCalibration& cal) {
    if (!(cal.v_minus < 1.0)) throw std::invalid_argument("minus-port visibility must be below 1");
    const double f0 = clipped_norm(cal.t_a_sigma);
    const double b = small_eps_slope(cal.t_a_sigma);
    const double bracket = cal.v_minus * cal.v_minus / (1.0 - cal.v_minus) +
                           cal.eta_plus * cal.v_plus * cal.v_plus / (1.0 + cal.v_plus);
    return b * b / (4.0 * f0) * bracket;
}

double di_spectrometer_s(const SpectrometerSpec& spec) {
    if (!(spec.sigma > 0.0)) throw std::invalid_argument("line width must be positive");
    const double s2 = spec.sigma * spec.sigma + spec.sigma_rl * spec.sigma_rl;
    const double x = spec.bandwidth / std::sqrt(s2);
    const double t = std::erf(x / std::sqrt(2.0)) -
                     x * (x * x + 1.0) * std::exp(-0.5 * x * x) / kSqrt2Pi;
    return spec.sigma * spec.sigma / s2 * t;
}

FisherCurve fisher_curve(const std::function<double(double)>& fisher,
                         const std::vector<double>& epsilon) {
    FisherCurve out;
    out.epsilon = epsilon;
    out.value.reserve(epsilon.size());
    for (double e : epsilon) out.value.push_back(fisher(e));
    return out;
}

}  // namespace pudtai
