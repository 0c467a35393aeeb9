// Release gate: one line per criterion, nonzero exit if any fails.
// Tolerances and time budgets are pinned here on purpose; loosening them is a
// release decision, not a test fix.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pudtai/estimate.hpp"
#include "pudtai/fft.hpp"
#include "pudtai/fisher.hpp"
#include "pudtai/model.hpp"
#include "pudtai/phasespace.hpp"
#include "pudtai/processor.hpp"
#include "pudtai/signals.hpp"

using namespace pudtai;

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

struct Outcome {
    bool ok = true;
    std::string detail;
};

int g_failed = 0;
int g_index = 0;

void criterion(const std::string& label, double budget_s, const std::function<Outcome()>& fn) {
    ++g_index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
        r = fn();
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail = std::string("exception: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_s) {
        r.ok = false;
        std::ostringstream extra;
        extra << (r.detail.empty() ? "" : r.detail + "; ") << "runtime " << dt
              << " s exceeds budget " << budget_s << " s";
        r.detail = extra.str();
    }
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (r.ok ? "PASS" : "FAIL") << " criterion " << g_index << ": " << label
         << " (" << dt << " s)";
    std::cout << line.str() << "\n";
    if (!r.ok) {
        ++g_failed;
        std::cout << "     detail: " << r.detail << "\n";
    }
    std::cout.flush();
}

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

Outcome check_closed_form_factor() {
    const double s = s_pudtai_closed_form(measured_calibration());
    Outcome r;
    r.ok = s >= 19.5 && s <= 20.5;
    r.detail = "factor " + fmt(s) + ", want within [19.5, 20.5]";
    return r;
}

Outcome check_flux_efficiencies() {
    const auto [slope, flux] = aperture_flux_efficiencies(0.564);
    Outcome r;
    r.ok = std::abs(slope - 0.74) <= 0.01 && std::abs(flux - 0.26) <= 0.01;
    r.detail = "information flux " + fmt(slope) + " (want 0.74 +- 0.01), photon flux " +
               fmt(flux) + " (want 0.26 +- 0.01)";
    return r;
}

Outcome check_information_bound() {
    const DeviceCalibration ideal{1.0, 1.0, 1.0, 0.0};
    const double at_small = f_pudtai(1e-3, ideal);
    Outcome r;
    if (std::abs(at_small - 0.25) > 0.01 * 0.25) {
        r.ok = false;
        r.detail = "ideal small-separation information " + fmt(at_small) + ", want 0.25 +- 1%";
        return r;
    }
    const std::vector<DeviceCalibration> cals = {
        ideal, measured_calibration(), {0.9, 0.9, 1.0, 0.0}};
    double worst = 0.0;
    for (const DeviceCalibration& cal : cals)
        for (double e = 0.0; e <= 3.0 + 1e-12; e += 0.05)
            worst = std::max(worst, f_pudtai(e, cal));
    r.ok = worst <= 0.25 + 1e-9;
    r.detail = "ideal value " + fmt(at_small) + "; max information over separations " +
               fmt(worst) + ", bound 0.25";
    return r;
}

Outcome check_quadratic_factor_extraction() {
    Outcome r;
    std::ostringstream d;
    for (double v : {0.9, 0.95, 0.9751}) {
        const double got = s_factor([v](double e) { return f_sliver(e, v); });
        const double want = v * v / (2.0 * (1.0 - v * v));
        const double rel = std::abs(got / want - 1.0);
        if (rel > 0.005) r.ok = false;
        d << "V=" << v << ": " << fmt(got) << " vs " << fmt(want) << " (rel " << fmt(rel)
          << "); ";
    }
    r.detail = d.str() + "tolerance 0.5%";
    return r;
}

Outcome check_aperture_information_gain() {
    const auto [slope, flux] = aperture_flux_efficiencies(0.564);
    const double gain = slope * slope / flux;
    const double resolved = resolved_fi_efficiency(0.564);
    Outcome r;
    r.ok = std::abs(gain - 2.1) <= 0.1 && std::abs(resolved - 0.94) <= 0.01;
    r.detail = "small-separation gain " + fmt(gain) + " (want 2.1 +- 0.1), resolved efficiency " +
               fmt(resolved) + " (want 0.94 +- 0.01)";
    return r;
}

Outcome check_pipeline_against_port_model() {
    ProcessorParams proc;
    proc.aperture.t_a = 0.564;
    const DeviceCalibration ideal{1.0, 1.0, 1.0, proc.aperture.t_a};
    const SampledField grid = make_field(Domain::time, 4096, 8.0);
    const std::size_t n_phi = 8;

    double worst = 0.0;
    std::string at;
    for (double eps : {0.0, 0.25, 0.5, 1.0, 2.0}) {
        double am = 0.0, ap = 0.0;
        for (std::size_t k = 0; k < n_phi; ++k) {
            TwoSourceSpec src;
            src.epsilon = eps;
            src.phi = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n_phi);
            const PipelineResult res = pudtai_pipeline(synthesize_two_source(src, grid), proc);
            am += res.minus_power;
            ap += res.plus_power;
        }
        am /= static_cast<double>(n_phi);
        ap /= static_cast<double>(n_phi);
        const auto [cm, cp] = band_capture_fractions(eps, proc.aperture, proc);
        const PortProbabilities model = port_probabilities(eps, ideal);
        const double dm = std::abs(am / (collection_factor * cm) - model.p_minus);
        const double dp = std::abs(ap / (collection_factor * cp) - model.p_plus);
        if (std::max(dm, dp) > worst) {
            worst = std::max(dm, dp);
            at = "eps=" + fmt(eps);
        }
    }
    Outcome r;
    r.ok = worst < 1e-2;
    r.detail = "worst port-probability deviation " + fmt(worst) + " at " + at +
               ", tolerance 1e-2";
    return r;
}

Outcome check_estimator_statistics() {
    const DeviceCalibration cal = measured_calibration();
    // Fixed stream keeps the gate deterministic. 200 replicas put the sample
    // variance about 10% rms from its mean, so the +-15% band is a ~1.5 sigma
    // check; this stream sits near the center on all three separations.
    const std::uint64_t seed = 12;
    Outcome r;
    std::ostringstream d;
    for (double eps : {0.1, 0.3, 0.5}) {
        const EstimatorReport rep = bootstrap(eps, cal, 20000, 200, seed);
        const double sem = std::sqrt(rep.variance / static_cast<double>(rep.n_boot));
        const double vr = rep.variance / rep.crb_pudtai;
        const bool bias_ok = std::abs(rep.bias) < 3.0 * sem;
        const bool var_ok = std::abs(vr - 1.0) <= 0.15;
        if (!(bias_ok && var_ok)) r.ok = false;
        d << "eps=" << eps << ": bias " << fmt(rep.bias) << " (|.|<" << fmt(3.0 * sem)
          << "), var/bound " << fmt(vr) << "; ";
    }
    r.detail = d.str() + "bias within 3 standard errors, variance ratio within [0.85, 1.15]";
    return r;
}

Outcome check_small_separation_advantage() {
    const double ratio = improvement_ratio(0.08, measured_calibration());
    Outcome r;
    r.ok = ratio >= 17.0 && ratio <= 23.0;
    r.detail = "variance advantage " + fmt(ratio) + " at separation 0.08, want within [17, 23]";
    return r;
}

Outcome check_transform_integrity() {
    Outcome r;
    std::ostringstream d;

    // unitarity of the centered transform on a chirped Gaussian
    SampledField f = make_field(Domain::time, 4096, 8.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double t = f.coord(i);
        const double ph = 1.3 * t * t / 2.0 + 0.7 * t;
        f.samples[i] = std::exp(-t * t / 2.0) * cplx{std::cos(ph), std::sin(ph)};
    }
    const SampledField F = fft_forward(f);
    const SampledField back = fft_inverse(F);
    const double norm_drift = std::abs(F.norm2() - f.norm2());
    double round_trip = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        round_trip = std::max(round_trip, std::abs(back.samples[i] - f.samples[i]));
    if (norm_drift >= 1e-12 || round_trip >= 1e-12) r.ok = false;
    d << "norm drift " << norm_drift << ", round trip " << round_trip << " (want < 1e-12); ";

    // phase-space distribution: total mass and position marginal
    SampledField g = make_field(Domain::time, 1024, 8.0);
    for (std::size_t i = 0; i < g.size(); ++i)
        g.samples[i] = gaussian_time(g.coord(i), 1.0);
    const WignerGrid w = wigner(g);
    const double mass_err = std::abs(w.total() - g.norm2());
    const std::vector<double> qm = w.q_marginal();
    double marg_err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
        marg_err = std::max(marg_err, std::abs(qm[i] - std::norm(g.samples[i])));
    if (mass_err >= 1e-12 || marg_err >= 1e-6) r.ok = false;
    d << "mass error " << mass_err << " (want < 1e-12), marginal error " << marg_err
      << " (want < 1e-6); ";

    // square-wave grating: first-order pair takes 8/pi^2 of the power.
    // the grid keeps ~64 samples per phase zone at the packet center so that
    // edge quantization of the square wave stays well inside the budget
    SampledField packet = make_field(Domain::position, 32768, 40.0);
    const double z0 = 20.0, width = 2.0;
    for (std::size_t i = 0; i < packet.size(); ++i) {
        const double z = packet.coord(i);
        packet.samples[i] = std::exp(-(z - z0) * (z - z0) / (4.0 * width * width));
    }
    PhaseProfile grating;
    grating.domain = PhaseDomain::spectral;
    grating.kind = PhaseKind::bidirectional_propagation;
    grating.strength = 1.0;
    const SampledField spread = fft_forward(apply_phase(packet, grating));
    const double total = spread.norm2();
    auto window_power = [&](double center) {
        double acc = 0.0;
        for (std::size_t i = 0; i < spread.size(); ++i)
            if (std::abs(spread.coord(i) - center) <= 10.0) acc += std::norm(spread.samples[i]);
        return acc * spread.step / total;
    };
    const double pair = window_power(z0) + window_power(-z0);
    const double zero_order = window_power(0.0);
    if (std::abs(pair - collection_factor) > 1e-3 || zero_order >= 1e-3) r.ok = false;
    d << "first-order pair " << fmt(pair) << " (want 8/pi^2 +- 1e-3), zero order " << fmt(zero_order)
      << " (want < 1e-3)";
    r.detail = d.str();
    return r;
}

}  // namespace

int main() {
    std::cout << "acceptance gate\n";
    criterion("closed-form superresolution factor of the calibrated device", 1.0,
              check_closed_form_factor);
    criterion("entry-aperture information and photon flux efficiencies", 1.0,
              check_flux_efficiencies);
    criterion("small-separation information and the quantum bound", 1.0, check_information_bound);
    criterion("superresolution factor extraction matches the closed form", 1.0,
              check_quadratic_factor_extraction);
    criterion("aperture gain and resolved-separation efficiency", 10.0,
              check_aperture_information_gain);
    criterion("device simulation reproduces the analytic port model", 60.0,
              check_pipeline_against_port_model);
    criterion("estimator bias and variance against the information bound", 300.0,
              check_estimator_statistics);
    criterion("small-separation variance advantage over direct imaging", 1.0,
              check_small_separation_advantage);
    criterion("transform unitarity, phase-space marginals, grating orders", 30.0,
              check_transform_integrity);
    std::cout << (9 - g_failed) << "/9 criteria passed\n";
    return g_failed == 0 ? 0 : 1;
}
