#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypam/hyperbolic.hpp"

namespace hypam {

/// Cloud of ball-model points with optional per-point piece/source tags.
struct PointCloud {
    std::vector<BallPoint> points;
    std::vector<int> piece;               // empty or one tag per point
    std::string generator;
    std::uint64_t seed = 0;

    std::size_t size() const { return points.size(); }
    void add(const BallPoint& p, int tag = -1) {
        points.push_back(p);
        if (tag >= 0) {
            if (piece.size() < points.size() - 1) piece.resize(points.size() - 1, -1);
            piece.push_back(tag);
        } else if (!piece.empty()) {
            piece.push_back(-1);
        }
    }
};

/// Binary little-endian PLY, vertex-only: x,y,z float64 (+ int32 piece when tagged).
void write_ply(const PointCloud& cloud, const std::string& path);

/// CSV with header x,y,z[,piece].
void write_csv(const PointCloud& cloud, const std::string& path);

} // namespace hypam
