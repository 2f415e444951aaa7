// franck_condon.hpp: Overlaps between undisplaced and displaced harmonic-oscillator eigenstates

#pragma once

#include <Eigen/Dense>

namespace htc {

/// <nu|nu~> between the ground-potential eigenstate |nu> and the excited-potential
/// eigenstate |nu~>, whose minimum is displaced by lambda. Sign convention:
/// <0|nu~> = exp(-lambda^2/2) lambda^nu~ / sqrt(nu~!) >= 0.
///
/// Evaluated from the associated-Laguerre closed form with the prefactor kept in
/// log space, so quanta far beyond the factorial range (170) stay finite.
double franck_condon(unsigned nu, unsigned nu_tilde, double lambda);

/// Dense table f(nu, nu~) for 0 <= nu, nu~ <= max_quanta built by the
/// ladder-operator recurrence
///   sqrt(nu~+1) f(nu, nu~+1) = sqrt(nu) f(nu-1, nu~) + lambda f(nu, nu~).
class FranckCondonTable {
public:
    FranckCondonTable(double lambda, unsigned max_quanta);

    double lambda() const { return lambda_; }
    unsigned max_quanta() const { return max_quanta_; }
    const Eigen::MatrixXd& amplitudes() const { return amplitudes_; }
    double operator()(unsigned nu, unsigned nu_tilde) const { return amplitudes_(nu, nu_tilde); }

private:
    double lambda_;
    unsigned max_quanta_;
    Eigen::MatrixXd amplitudes_;
};

} // namespace htc
