#pragma once

#include <Eigen/Dense>

namespace hexstab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat83 = Eigen::Matrix<double, 8, 3>;
using Vec24 = Eigen::Matrix<double, 24, 1>;
using Mat24 = Eigen::Matrix<double, 24, 24>;
using Mat6x24 = Eigen::Matrix<double, 6, 24>;
using Mat9x24 = Eigen::Matrix<double, 9, 24>;

/// Physical coordinates of the 8 element nodes, one row per node, in
/// canonical node order (see refelem.hpp).
using NodeCoords = Eigen::Matrix<double, 8, 3>;

}  // namespace hexstab
