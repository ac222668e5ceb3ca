#pragma once

#include <Eigen/Dense>
#include <span>

namespace dlab::spectral {

/// Wigner small-d functions d^j_{m,m'}(beta) for every j from
/// max(|m|, |m'|) to j_max, evaluated on a batch of angles by the
/// three-term recurrence in j. Quantum numbers are passed doubled so
/// half-integers are exact: j = two_j / 2 and so on. Requires |m| >= |m'|.
///
/// Row r of the result holds j = j_min + r; column i holds beta[i].
Eigen::MatrixXd wigner_d_ladder(int two_m, int two_mp, int two_j_max,
                                std::span<const double> beta);

}  // namespace dlab::spectral
