#pragma once

#include <vector>

#include "terraquad/instance_gen.hpp"
#include "terraquad/terrain.hpp"

namespace tq_test {

using terraquad::Point;
using terraquad::Terrain;

inline Terrain t0() { return terraquad::validate({{0, 0}, {1, 2}, {3, 2}, {4, 0}}); }
inline Terrain t4() { return terraquad::validate({{0, 0}, {1, 2}, {2, 1.2}, {3, 2}, {4, 0}}); }
inline Terrain triangle() { return terraquad::validate({{0, 0}, {2, 2}, {4, 0}}); }

/// Instance mapping shared by the randomized tests.
inline Terrain random_terrain(int i, int n_lo, int n_span, std::uint64_t base_seed) {
    terraquad::GenConfig g;
    g.n = n_lo + i % n_span;
    g.seed = base_seed + static_cast<std::uint64_t>(i);
    g.profile = static_cast<terraquad::Profile>(i % 4);
    return terraquad::generate(g);
}

}  // namespace tq_test
