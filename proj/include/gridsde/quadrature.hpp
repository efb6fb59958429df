#pragma once

#include "gridsde/types.hpp"

#include <string>
#include <vector>

namespace gridsde {

// Quadrature rule on the unit cube [0,1]^d: sum_i w_i f(u_i) with sum w_i = 1.
struct UnitCubeRule {
    int d = 1;
    std::vector<Vec> nodes;
    std::vector<double> weights;
    std::string description;

    template <typename F>
    auto integrate(F&& f) const -> decltype(f(nodes[0]) * 1.0) {
        auto acc = f(nodes[0]) * weights[0];
        for (std::size_t i = 1; i < nodes.size(); ++i) acc += f(nodes[i]) * weights[i];
        return acc;
    }
};

// Gauss-Legendre nodes/weights on [0,1], weights summing to 1.
void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Tensor Gauss-Legendre rule (order^d nodes).
UnitCubeRule gauss_legendre_cube(int d, int order = 16);

// Randomized low-discrepancy rule: Halton sequence with a fixed
// Cranley-Patterson rotation derived from rotation_seed. Equal weights.
UnitCubeRule halton_cube(int d, int n = 1024, std::uint64_t rotation_seed = 0x5eedcafeULL);

// Default u-quadrature: tensor Gauss-Legendre (order 16) for d <= 2,
// 2^10 rotated Halton nodes for d >= 3.
UnitCubeRule default_cube_rule(int d);

}  // namespace gridsde
