#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "platvol/rep_space.hpp"

namespace platvol {

struct VolumeOptions {
    TraceChart chart = TraceChart::Angle;
    int ambient = 1;          // ambient orientation of S^3; -1 flips every omega
    double rank_rel = 1e-7;   // relative singular-value threshold for the transversality rank
    std::uint64_t mix_seed = 0;  // nonzero: randomize complement/section choices (independence checks)
};

// Columns are tangent vectors in chart coordinates (dc, then two frame
// coordinates per axis).  det[orbit | vectors] = 1 for handlebodies; for the
// punctured sphere det[orbit | vectors | s] / det(Dphi s) = 1.
struct QuotientBasis {
    Eigen::MatrixXd vectors;
    Eigen::MatrixXd orbit;
    double normalization = 1.0;  // factor applied to the first raw complement vector
};

QuotientBasis handlebody_quotient_basis(const HandlebodyPoint& p, std::uint64_t mix_seed = 0);

// 3 x (1 + 2m): differential of the product map prod_j (cos theta + sin theta Q_j).
Eigen::MatrixXd product_differential(const SpherePointTuple& x, TraceChart chart);

QuotientBasis punctured_sphere_quotient_basis(const SpherePointTuple& x, TraceChart chart, std::uint64_t mix_seed = 0,
                                              double constraint_tol = 1e-8);

struct Transversality {
    QuotientBasis hb1, hb2, sphere;
    SpherePointTuple image;
    Eigen::MatrixXd J1, J2;   // kappa_bar jacobians
    Eigen::MatrixXd T;        // (4n-5) x (4n-4): quotient middle space -> sphere quotient
    Eigen::VectorXd singular_values;
    int rank = 0;
    int kernel_dim = 0;
    Eigen::VectorXd kernel;   // quotient coordinates, d theta_m(kernel) = 1
    Eigen::VectorXd lift1, lift2;  // chart coordinates of the kernel on each handlebody
    double projection_residual = 0.0;
};

Transversality transversality(const KappaSystem& sys, double theta, const std::vector<SpherePoint>& P,
                              const std::vector<SpherePoint>& P2, const VolumeOptions& opt = {});

// d theta_m of a quotient middle-space vector.
double dtheta_of(const Transversality& tr, const Eigen::VectorXd& u, double theta, TraceChart chart);

// omega(u) for u in the kernel of T (quotient middle coordinates).  Throws NotRegular.
double omega_value(const Transversality& tr, const Eigen::VectorXd& u, int n, const VolumeOptions& opt = {});

// omega(d/d theta_m) at a point.
double omega_dtheta(const KappaSystem& sys, double theta, const std::vector<SpherePoint>& P,
                    const std::vector<SpherePoint>& P2, const VolumeOptions& opt = {});

// Derivative along the kernel tangent of Tr(rho(w)) for words in the t-generators.
std::vector<double> trace_derivatives(const KappaSystem& sys, const Transversality& tr, double theta,
                                      const std::vector<SpherePoint>& P, const std::vector<SpherePoint>& P2,
                                      const std::vector<FreeWord>& words, TraceChart chart);

}  // namespace platvol
