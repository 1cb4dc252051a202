#pragma once

#include <string>

#include "tcm/model.hpp"

namespace tcm {

/// Binary state snapshot. Layout (little-endian): magic "TCM1",
/// u32 version, u32 n1 n2 n3, f64 l1 l2 l3, f64 alpha beta time, then seven
/// f64 arrays in physical space, x1-fastest: u1 u2 u3 v1 v2 v3 theta.
struct Checkpoint {
    State state; // physical representation
    double alpha = 0.0;
    double beta = 0.0;
};

void save_checkpoint(const State& state, double alpha, double beta,
                     const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

} // namespace tcm
