#pragma once

// Kernels shared between the threaded implementation and the serial reference.

#include <span>

#include "rosenau/operator.hpp"

namespace rosenau::detail {

void add_node_block(const NodeStencil& s, int row, int col, double a_scale,
                    const PenaltyParams* penalty, std::span<double> block);

} // namespace rosenau::detail
