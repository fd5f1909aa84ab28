#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcres/errors.hpp"

namespace mcres {

/// H x W binary grid, row-major.
struct Mask {
    int h = 0, w = 0;
    std::vector<std::uint8_t> cells;

    static Mask zeros(int h, int w) {
        Mask m;
        m.h = h;
        m.w = w;
        m.cells.assign(static_cast<std::size_t>(h) * w, 0);
        return m;
    }
    std::uint8_t& at(int r, int c) { return cells[static_cast<std::size_t>(r) * w + c]; }
    std::uint8_t at(int r, int c) const { return cells[static_cast<std::size_t>(r) * w + c]; }
    int count() const {
        int n = 0;
        for (auto v : cells) n += v;
        return n;
    }
    bool operator==(const Mask& o) const = default;
};

struct SceneObject {
    std::string shape;
    std::string color;
    bool large = false;  // small = 1x1 footprint, large = 2x2
    int r = 0, c = 0;    // anchor cell (top-left of footprint)

    int extent() const { return large ? 2 : 1; }
    // centers doubled to stay integral: small (2r+1), large (2r+2)
    int center2_r() const { return 2 * r + extent(); }
    int center2_c() const { return 2 * c + extent(); }
    bool covers(int rr, int cc) const {
        return rr >= r && rr < r + extent() && cc >= c && cc < c + extent();
    }
};

struct SceneSpec {
    int h = 0, w = 0;
    std::vector<SceneObject> objects;
    int referent = -1;

    bool in_bounds(const SceneObject& o) const {
        return o.r >= 0 && o.c >= 0 && o.r + o.extent() <= h && o.c + o.extent() <= w;
    }

    Mask footprint_mask(int obj_index) const {
        Mask m = Mask::zeros(h, w);
        const SceneObject& o = objects[static_cast<std::size_t>(obj_index)];
        for (int rr = o.r; rr < o.r + o.extent(); ++rr)
            for (int cc = o.c; cc < o.c + o.extent(); ++cc) m.at(rr, cc) = 1;
        return m;
    }
};

/// Fixed per-config feature layout: one-hot shape, one-hot color, one-hot
/// size, then two normalized coordinates.
struct FeatureLayout {
    std::vector<std::string> shapes;
    std::vector<std::string> colors;

    int dim() const { return static_cast<int>(shapes.size() + colors.size()) + 2 + 2; }

    int shape_index(const std::string& s) const {
        for (std::size_t i = 0; i < shapes.size(); ++i)
            if (shapes[i] == s) return static_cast<int>(i);
        throw Error("unknown shape word: '" + s + "'");
    }
    int color_index(const std::string& s) const {
        for (std::size_t i = 0; i < colors.size(); ++i)
            if (colors[i] == s) return static_cast<int>(i);
        throw Error("unknown color word: '" + s + "'");
    }
};

/// Per-cell feature grid, row-major, `layout.dim()` doubles per cell.
struct FeatureGrid {
    int h = 0, w = 0, dim = 0;
    std::vector<double> values;

    const double* cell(int r, int c) const {
        return values.data() + (static_cast<std::size_t>(r) * w + c) * dim;
    }
};

/// Renders a scene into its feature grid. Each cell encodes at most one
/// object; overlapping footprints raise OverlapViolation. Empty cells carry
/// only the coordinate channels.
inline FeatureGrid render(const SceneSpec& scene, const FeatureLayout& layout) {
    FeatureGrid grid;
    grid.h = scene.h;
    grid.w = scene.w;
    grid.dim = layout.dim();
    grid.values.assign(static_cast<std::size_t>(scene.h) * scene.w * grid.dim, 0.0);

    const int ns = static_cast<int>(layout.shapes.size());
    const int nc = static_cast<int>(layout.colors.size());
    std::vector<std::uint8_t> occupied(static_cast<std::size_t>(scene.h) * scene.w, 0);

    for (const SceneObject& o : scene.objects) {
        if (!scene.in_bounds(o)) throw Error("object footprint outside grid");
        const int si = layout.shape_index(o.shape);
        const int ci = layout.color_index(o.color);
        for (int r = o.r; r < o.r + o.extent(); ++r) {
            for (int c = o.c; c < o.c + o.extent(); ++c) {
                std::size_t flat = static_cast<std::size_t>(r) * scene.w + c;
                if (occupied[flat])
                    throw OverlapViolation("cell (" + std::to_string(r) + "," +
                                           std::to_string(c) + ") covered twice");
                occupied[flat] = 1;
                double* f = grid.values.data() + flat * grid.dim;
                f[si] = 1.0;
                f[ns + ci] = 1.0;
                f[ns + nc + (o.large ? 1 : 0)] = 1.0;
            }
        }
    }
    for (int r = 0; r < scene.h; ++r) {
        for (int c = 0; c < scene.w; ++c) {
            double* f = grid.values.data() + (static_cast<std::size_t>(r) * scene.w + c) * grid.dim;
            f[ns + nc + 2] = (r + 0.5) / scene.h;
            f[ns + nc + 3] = (c + 0.5) / scene.w;
        }
    }
    return grid;
}

}  // namespace mcres
