#pragma once

#include "mlz/spin.hpp"

#include <Eigen/Dense>

namespace mlz {

// Rotation about the y axis in the spin-j representation:
//   d(m', m) = <m'| exp(+i theta J_y) |m>,   rows/cols ordered m = +j ... -j.
// Note the +i sign; the more common exp(-i beta J_y) convention is wigner_d(j, -beta).
struct WignerMatrix {
    HalfInteger j;
    double theta{0.0};
    Eigen::MatrixXd d;
};

// Factorial-sum formula with log-factorial coefficients.
WignerMatrix wigner_d(HalfInteger j, double theta);

}  // namespace mlz
