#include "dks/wigner.hpp"

#include "dks/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace dks {

namespace {

simd::WignerTables tables_for(const FockState& state) {
    if (state.n_trunc() > kMaxWignerTruncation)
        fail(ErrorCode::StateTooLarge, "Wigner evaluation is capped at n_trunc = " +
                                           std::to_string(kMaxWignerTruncation) + " (got " +
                                           std::to_string(state.n_trunc()) + ")");
    const auto mod = state.moduli();
    const auto ph = state.phases();
    // Amplitudes below 1e-17 of the largest cannot move W at double precision.
    const double peak = *std::max_element(mod.begin(), mod.end());
    std::size_t dim = mod.size();
    while (dim > 1 && mod[dim - 1] < 1e-17 * peak)
        --dim;
    std::vector<double> re(dim), im(dim);
    for (std::size_t n = 0; n < dim; ++n) {
        re[n] = mod[n] * std::cos(ph[n]);
        im[n] = mod[n] * std::sin(ph[n]);
    }
    return simd::make_wigner_tables(re, im);
}

void check_finite(const std::vector<double>& values) {
    for (double v : values)
        if (!std::isfinite(v))
            fail(ErrorCode::NumericalOverflow, "Wigner value is not finite; Laguerre scaling exhausted");
}

void evaluate_rows(const simd::WignerTables& t, WignerGrid& grid, int parallelism, simd::Backend backend) {
    const int res = grid.resolution;
    std::vector<double> xs(static_cast<std::size_t>(res));
    for (int i = 0; i < res; ++i)
        xs[static_cast<std::size_t>(i)] = grid.x(i);
    const auto rows = [&](int first, int stride) {
        std::vector<double> ys(static_cast<std::size_t>(res));
        for (int j = first; j < res; j += stride) {
            std::fill(ys.begin(), ys.end(), grid.y(j));
            std::span<double> out(grid.values.data() + static_cast<std::size_t>(j) * res, static_cast<std::size_t>(res));
            simd::wigner_points(t, xs, ys, out, backend);
        }
    };
    const int threads = std::clamp(parallelism, 1, res);
    if (threads == 1) {
        rows(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    for (int t0 = 0; t0 < threads; ++t0)
        pool.emplace_back(rows, t0, threads);
    for (auto& th : pool)
        th.join();
}

WignerGrid make_grid(std::pair<double, double> xr, std::pair<double, double> yr, int res) {
    WignerGrid g;
    g.x_range = xr;
    g.y_range = yr;
    g.resolution = res;
    g.values.assign(static_cast<std::size_t>(res) * res, 0.0);
    return g;
}

} // namespace

const char* to_string(WindowMode mode) noexcept {
    switch (mode) {
    case WindowMode::Auto: return "auto";
    case WindowMode::Mean: return "mean";
    case WindowMode::Explicit: return "explicit";
    }
    return "unknown";
}

double WignerGrid::x(int i) const {
    return resolution > 1 ? x_range.first + i * dx() : 0.5 * (x_range.first + x_range.second);
}
double WignerGrid::y(int j) const {
    return resolution > 1 ? y_range.first + j * dy() : 0.5 * (y_range.first + y_range.second);
}
double WignerGrid::dx() const { return (x_range.second - x_range.first) / (resolution - 1); }
double WignerGrid::dy() const { return (y_range.second - y_range.first) / (resolution - 1); }

std::pair<std::pair<double, double>, std::pair<double, double>> wigner_window(const FockState& state,
                                                                              const GridSpec& spec) {
    switch (spec.window) {
    case WindowMode::Explicit:
        return {spec.x_range, spec.y_range};
    case WindowMode::Mean: {
        const cplx m = field_moment(state, 0, 1);
        const double h = spec.half_width;
        return {{m.real() - h, m.real() + h}, {m.imag() - h, m.imag() + h}};
    }
    case WindowMode::Auto:
        break;
    }
    const double reach = std::sqrt(number_moments(state).mean) + 6.0;
    WignerGrid coarse = make_grid({-reach, reach}, {-reach, reach}, 65);
    evaluate_rows(tables_for(state), coarse, spec.parallelism, spec.backend);
    check_finite(coarse.values);
    const double cut = 1e-4 * grid_max_abs(coarse);
    double x0 = reach, x1 = -reach, y0 = reach, y1 = -reach;
    for (int j = 0; j < coarse.resolution; ++j)
        for (int i = 0; i < coarse.resolution; ++i)
            if (std::abs(coarse.at(i, j)) > cut) {
                x0 = std::min(x0, coarse.x(i));
                x1 = std::max(x1, coarse.x(i));
                y0 = std::min(y0, coarse.y(j));
                y1 = std::max(y1, coarse.y(j));
            }
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    const double h = 0.5 * std::max(x1 - x0, y1 - y0) + 1.5;
    return {{cx - h, cx + h}, {cy - h, cy + h}};
}

WignerGrid wigner(const FockState& state, const GridSpec& spec) {
    if (spec.resolution < 2)
        fail(ErrorCode::InvalidArgument, "grid resolution must be >= 2");
    const auto [xr, yr] = wigner_window(state, spec);
    for (double v : {xr.first, xr.second, yr.first, yr.second, spec.half_width})
        if (!std::isfinite(v))
            fail(ErrorCode::InvalidArgument, "grid window must be finite");
    if (!(xr.second > xr.first) || !(yr.second > yr.first))
        fail(ErrorCode::InvalidArgument, "grid ranges must be increasing");
    const simd::WignerTables t = tables_for(state);
    WignerGrid grid = make_grid(xr, yr, spec.resolution);
    evaluate_rows(t, grid, spec.parallelism, spec.backend);
    check_finite(grid.values);
    return grid;
}

double wigner_at(const FockState& state, cplx point, simd::Backend backend) {
    const simd::WignerTables t = tables_for(state);
    const double re = point.real(), im = point.imag();
    double out = 0.0;
    simd::wigner_points(t, {&re, 1}, {&im, 1}, {&out, 1}, backend);
    if (!std::isfinite(out))
        fail(ErrorCode::NumericalOverflow, "Wigner value is not finite");
    return out;
}

double grid_integral(const WignerGrid& grid) {
    double sum = 0.0;
    for (double v : grid.values)
        sum += v;
    return sum * grid.dx() * grid.dy();
}

std::vector<double> marginal_over_imag(const WignerGrid& grid) {
    std::vector<double> m(static_cast<std::size_t>(grid.resolution), 0.0);
    for (int j = 0; j < grid.resolution; ++j)
        for (int i = 0; i < grid.resolution; ++i)
            m[static_cast<std::size_t>(i)] += grid.at(i, j);
    for (double& v : m)
        v *= grid.dy();
    return m;
}

double grid_max_abs(const WignerGrid& grid) {
    double m = 0.0;
    for (double v : grid.values)
        m = std::max(m, std::abs(v));
    return m;
}

} // namespace dks
