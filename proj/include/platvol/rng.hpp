#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "platvol/su2.hpp"

namespace platvol {

// Seeded generator whose output does not depend on the standard library's
// distribution implementations (only on mt19937_64 bits).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    SpherePoint sphere() {
        Su2Vector v;
        do {
            v = Su2Vector(normal(), normal(), normal());
        } while (v.norm() < 1e-8);
        return v.normalized();
    }

    Eigen::MatrixXd gaussian(int rows, int cols) {
        Eigen::MatrixXd m(rows, cols);
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) m(r, c) = normal();
        return m;
    }

    // Uniformly random rotation of R^k with determinant +1.
    Eigen::MatrixXd rotation(int k) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(k, k));
        Eigen::MatrixXd q = qr.householderQ();
        if (q.determinant() < 0) q.col(0) *= -1;
        return q;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace platvol
