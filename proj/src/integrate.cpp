#include "platvol/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace platvol {

VolumeSample volume_sample(const KappaSystem& sys, const IntersectionPoint& x, const VolumeOptions& opt) {
    Transversality tr = transversality(sys, x.theta, x.P, x.P2, opt);
    if (tr.kernel_dim != 1) throw NotRegular("point is not regular");
    if (tr.kernel.size() == 0) throw DegenerateBasis("curve tangent is vertical in theta");
    VolumeSample s;
    s.point = x;
    s.u = tr.kernel;
    s.omega = omega_value(tr, tr.kernel, sys.n(), opt);
    s.sign = s.omega > 0 ? 1 : (s.omega < 0 ? -1 : 0);
    return s;
}

std::vector<VolumeSample> sample_arc(const KappaSystem& sys, const RegularArc& arc, const VolumeOptions& opt) {
    std::vector<VolumeSample> out;
    for (const auto& x : arc.samples) out.push_back(volume_sample(sys, x, opt));
    return out;
}

std::vector<int> orientation_sign(const KappaSystem& sys, const RegularArc& arc, const VolumeOptions& opt) {
    std::vector<int> out;
    for (const auto& s : sample_arc(sys, arc, opt)) out.push_back(s.sign);
    return out;
}

IntegralResult integrate_arc(const KappaSystem& sys, const RegularArc& arc, const SolverConfig& cfg,
                             const VolumeOptions& vopt, const IntegrationOptions& iopt) {
    if (arc.samples.empty()) throw DomainError("empty arc");
    IntegralResult res;
    res.theta_lo = arc.theta_lo();
    res.theta_hi = arc.theta_hi();
    // Orientation is theta_m increasing whatever the order of the samples.
    auto [mn, mx] = std::minmax_element(arc.samples.begin(), arc.samples.end(),
                                        [](const auto& a, const auto& b) { return a.theta < b.theta; });
    const double first = mn->theta, last = mx->theta;

    // Between the extrapolated endpoint and the last traced sample the curve is
    // not resolved; omega is taken from the closest traced point there.
    auto omega_at = [&](double theta) {
        double th = std::clamp(theta, first, last);
        IntersectionPoint x = arc_point_at(sys, arc, th, cfg);
        ++res.evaluations;
        return omega_dtheta(sys, x.theta, x.P, x.P2, vopt);
    };

    for (int end = 0; end < 2; ++end) {
        const double base = end == 0 ? res.theta_lo : res.theta_hi;
        const double dir = end == 0 ? 1.0 : -1.0;
        double far = std::abs(omega_at(base + dir * iopt.tail_far));
        try {
            double near = std::abs(omega_at(base + dir * iopt.tail_near));
            if (near > 100.0 * far + 1.0) res.divergent = true;
        } catch (const NotRegular&) {
            res.divergent = true;  // transversality degenerates at the end
        }
    }
    if (res.divergent) {
        res.value = std::numeric_limits<double>::quiet_NaN();
        res.error = std::numeric_limits<double>::infinity();
        return res;
    }

    const double lo = res.theta_lo, hi = res.theta_hi, w = hi - lo;
    // theta = lo + w (1 - cos(pi x)) / 2 clusters nodes at both endpoints.
    auto integrand = [&](double x) {
        double theta = lo + 0.5 * w * (1.0 - std::cos(M_PI * x));
        double jac = 0.5 * w * M_PI * std::sin(M_PI * x);
        if (jac == 0.0) return 0.0;
        return omega_at(theta) * jac;
    };
    res.value = adaptive_simpson(integrand, 0.0, 1.0, iopt.tol, iopt.max_depth, res.error, res.evaluations);
    return res;
}

}  // namespace platvol
