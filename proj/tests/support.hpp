// support.hpp: Seeded generators and reference computations shared by the test suites

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "htc/analysis.hpp"
#include "htc/eigensolver.hpp"
#include "htc/model.hpp"

namespace testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    double normal() { return std::normal_distribution<double>()(engine_); }
    std::mt19937_64& engine() { return engine_; }

    Eigen::MatrixXd orthogonal(Eigen::Index n)
    {
        Eigen::MatrixXd g(n, n);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            g.data()[i] = normal();
        }
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
        return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    }

    Eigen::MatrixXd symmetric(Eigen::Index n, double scale = 1.0)
    {
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            m.data()[i] = scale * normal();
        }
        return 0.5 * (m + m.transpose());
    }

    std::vector<std::uint16_t> permutation(int n)
    {
        std::vector<std::uint16_t> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), std::uint16_t{0});
        std::shuffle(p.begin(), p.end(), engine_);
        return p;
    }

private:
    std::mt19937_64 engine_;
};

/// Small, well-conditioned model drawn at random; resonant cavity, unit vibrational quantum.
inline htc::ModelParams random_model(Rng& rng, int max_molecules = 3)
{
    const int n = rng.integer(1, max_molecules);
    const double rabi = rng.uniform(0.2, 2.0);
    const double huang_rhys = rng.uniform(0.05, 1.0);
    const double kappa = rng.uniform(0.1, 1.0);
    const double n_gamma0 = rng.uniform(0.1, 1.0);
    return htc::ModelParams::resonant(n, rabi, huang_rhys, kappa, n_gamma0);
}

/// Rotates the eigenvectors inside every cluster of (near-)equal eigenvalues by a random orthogonal matrix.
inline void remix_degenerate(htc::EigenSystem& es, double tol, Rng& rng)
{
    for (const auto& level : htc::degeneracy_census(es.values, tol)) {
        if (level.multiplicity < 2) {
            continue;
        }
        const auto m = static_cast<Eigen::Index>(level.multiplicity);
        const Eigen::MatrixXd block = es.vectors.middleCols(level.first, m);
        es.vectors.middleCols(level.first, m) = block * rng.orthogonal(m);
    }
}

/// Normalised Hermite function of order n at x, from the three-term recurrence.
inline double hermite_function(unsigned n, double x)
{
    double prev = 0.0;
    double cur = std::exp(-0.5 * x * x) / std::pow(std::numbers::pi, 0.25);
    for (unsigned k = 0; k < n; ++k) {
        const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Overlap of an undisplaced and a displaced oscillator eigenfunction by direct quadrature.
inline double overlap_by_quadrature(unsigned nu, unsigned nu_tilde, double lambda)
{
    const double shift = std::sqrt(2.0) * lambda;
    const double lo = -14.0;
    const double hi = 14.0;
    const int n = 8000;
    const double h = (hi - lo) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + i * h;
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        sum += w * hermite_function(nu, x) * hermite_function(nu_tilde, x + shift);
    }
    return sum * h;
}

inline double max_abs_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    if (a.size() != b.size()) {
        return INFINITY;
    }
    return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

} // namespace testing
