// franck_condon.cpp: Displaced-oscillator overlaps: Laguerre closed form and ladder recurrence

#include "htc/franck_condon.hpp"

#include <cmath>

#include "htc/error.hpp"

namespace htc {

namespace {

constexpr double kRescale = 1e100;

// Generalized Laguerre L_n^{(k)}(x) via the three-term recurrence. The value is
// returned as mantissa * exp(log_scale) so large degrees cannot overflow.
double laguerre_scaled(unsigned n, unsigned k, double x, double& log_scale)
{
    log_scale = 0.0;
    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double cur = 1.0 + k - x;
    for (unsigned j = 1; j < n; ++j) {
        const double next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            prev /= kRescale;
            log_scale += std::log(kRescale);
        }
    }
    return cur;
}

} // namespace

double franck_condon(unsigned nu, unsigned nu_tilde, double lambda)
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ParamError("franck_condon: lambda must be finite and >= 0");
    }
    if (lambda == 0.0) {
        return nu == nu_tilde ? 1.0 : 0.0;
    }
    // |nu~> = D(-lambda)|nu~ as number state>. For m >= n:
    //   <m|D(a)|n> = sqrt(n!/m!) a^(m-n) exp(-a^2/2) L_n^(m-n)(a^2)
    // and <m|D(a)|n> = <n|D(-a)|m> for m < n.
    const bool lower = nu >= nu_tilde;
    const unsigned big = lower ? nu : nu_tilde;
    const unsigned small = lower ? nu_tilde : nu;
    const unsigned diff = big - small;
    const double x = lambda * lambda;

    double log_scale = 0.0;
    const double lag = laguerre_scaled(small, diff, x, log_scale);
    if (lag == 0.0) {
        return 0.0;
    }
    const double log_mag = 0.5 * (std::lgamma(small + 1.0) - std::lgamma(big + 1.0))
        + diff * std::log(lambda) - 0.5 * x + log_scale + std::log(std::abs(lag));
    double sign = lag < 0.0 ? -1.0 : 1.0;
    if (lower && (diff % 2 == 1)) {
        sign = -sign;
    }
    return sign * std::exp(log_mag);
}

FranckCondonTable::FranckCondonTable(double lambda, unsigned max_quanta)
    : lambda_(lambda)
    , max_quanta_(max_quanta)
    , amplitudes_(Eigen::MatrixXd::Zero(max_quanta + 1, max_quanta + 1))
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ParamError("FranckCondonTable: lambda must be finite and >= 0");
    }
    auto& f = amplitudes_;
    f(0, 0) = std::exp(-0.5 * lambda * lambda);
    for (unsigned nu = 1; nu <= max_quanta; ++nu) {
        f(nu, 0) = -lambda / std::sqrt(static_cast<double>(nu)) * f(nu - 1, 0);
    }
    for (unsigned col = 0; col < max_quanta; ++col) {
        const double norm = 1.0 / std::sqrt(col + 1.0);
        for (unsigned nu = 0; nu <= max_quanta; ++nu) {
            const double down = nu > 0 ? std::sqrt(static_cast<double>(nu)) * f(nu - 1, col) : 0.0;
            f(nu, col + 1) = norm * (down + lambda * f(nu, col));
        }
    }
}

} // namespace htc
