#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace gaq {

using Index = Eigen::Index;
using NodeId = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// Membership mask of length n: true for queried nodes.
std::vector<bool> node_mask(Index n, const std::vector<NodeId>& nodes);

}  // namespace gaq
