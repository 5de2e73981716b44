// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace sumaug {

/// Row-major double matrix; rows are sequence positions.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVec = Eigen::Matrix<double, 1, Eigen::Dynamic>;

}  // namespace sumaug
