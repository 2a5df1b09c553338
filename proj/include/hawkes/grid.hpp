#pragma once

#include <stdexcept>
#include <vector>

namespace hawkes {

/// Uniform mesh on [0, T] with M intervals; nodes t_m = m * tau(), m = 0..M.
struct Grid {
    double T = 1.0;
    int M = 1;

    Grid() = default;
    Grid(double horizon, int intervals) : T(horizon), M(intervals) {
        if (!(T > 0.0)) throw std::invalid_argument("Grid: horizon T must be > 0");
        if (M < 1) throw std::invalid_argument("Grid: interval count M must be >= 1");
    }

    double tau() const noexcept { return T / M; }
    double node(int m) const noexcept { return m * tau(); }
    int nodes() const noexcept { return M + 1; }

    bool operator==(const Grid& o) const noexcept { return T == o.T && M == o.M; }
    bool operator!=(const Grid& o) const noexcept { return !(*this == o); }
};

/// Samples of a matrix-valued function of one time variable on a Grid.
/// Storage is node-major, entries row-major: value(m, i, j).
struct GridFn {
    Grid grid;
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    GridFn() = default;
    GridFn(const Grid& g, int r, int c)
        : grid(g), rows(r), cols(c), v(static_cast<std::size_t>(g.nodes()) * r * c, 0.0) {}

    double at(int m, int i, int j) const {
        return v[(static_cast<std::size_t>(m) * rows + i) * cols + j];
    }
    double& at(int m, int i, int j) {
        return v[(static_cast<std::size_t>(m) * rows + i) * cols + j];
    }
    // Scalar convenience for 1x1 functions.
    double at(int m) const { return v[static_cast<std::size_t>(m)]; }

    bool same_shape(const GridFn& o) const noexcept {
        return grid == o.grid && rows == o.rows && cols == o.cols;
    }
};

inline GridFn transpose(const GridFn& f) {
    GridFn t(f.grid, f.cols, f.rows);
    for (int m = 0; m <= f.grid.M; ++m)
        for (int i = 0; i < f.rows; ++i)
            for (int j = 0; j < f.cols; ++j) t.at(m, j, i) = f.at(m, i, j);
    return t;
}

inline double max_abs_entry(const GridFn& f) {
    double mx = 0.0;
    for (double x : f.v) {
        double a = x < 0 ? -x : x;
        if (a > mx) mx = a;
    }
    return mx;
}

} // namespace hawkes
