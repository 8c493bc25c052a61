#pragma once

#include <vector>

#include "platvol/solver.hpp"
#include "platvol/volume.hpp"

namespace platvol {

struct VolumeSample {
    IntersectionPoint point;
    Eigen::VectorXd u;   // kernel tangent with d theta_m(u) = 1
    double omega = 0.0;  // omega(u)
    int sign = 0;
};

VolumeSample volume_sample(const KappaSystem& sys, const IntersectionPoint& x, const VolumeOptions& opt = {});
std::vector<VolumeSample> sample_arc(const KappaSystem& sys, const RegularArc& arc, const VolumeOptions& opt = {});

// sign(omega(d/d theta_m)) at every sample of the arc.
std::vector<int> orientation_sign(const KappaSystem& sys, const RegularArc& arc, const VolumeOptions& opt = {});

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
    bool divergent = false;
    double theta_lo = 0.0, theta_hi = 0.0;
    int evaluations = 0;
};

struct IntegrationOptions {
    double tol = 1e-9;
    int max_depth = 40;
    double tail_near = 1e-6;   // divergence probe offsets from each endpoint
    double tail_far = 1e-2;
};

// Integral of omega over the arc oriented by increasing theta_m (independent of
// the order in which samples are stored).  Divergent tails are flagged, not summed.
IntegralResult integrate_arc(const KappaSystem& sys, const RegularArc& arc, const SolverConfig& cfg,
                             const VolumeOptions& vopt = {}, const IntegrationOptions& iopt = {});

// Adaptive Simpson on [a, b] with Richardson correction; error is the summed estimate.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth, double& error, int& evals);

}  // namespace platvol

#include "platvol/detail/simpson.hpp"
