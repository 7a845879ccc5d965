#pragma once

#include <Eigen/Dense>

namespace latdpp {

// Hermitian eigendecompositions via LAPACK (?syevd / ?heevd), ascending
// eigenvalue order as returned by LAPACK.  Throws Error on convergence
// failure.  LAPACK threading is pinned to one thread at first use so results
// do not depend on the environment.
void eigh_inplace(Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues);
void eigh_inplace(Eigen::MatrixXcd& a, Eigen::VectorXd& eigenvalues);

}  // namespace latdpp
