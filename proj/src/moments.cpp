#include "hawkes/moments.hpp"

#include <cmath>
#include <limits>

namespace hawkes {

namespace {

GridFn add(const GridFn& a, const GridFn& b) {
    GridFn out = a;
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += b.v[i];
    return out;
}

void check_series(const ModelSpec& model, const FundamentalSeries& series) {
    if (series.psi.rows != model.d || series.psi.cols != model.d)
        throw std::invalid_argument("moments: series dimension does not match model");
    if (!series.converged)
        throw std::runtime_error("moments: fundamental series did not converge");
}

} // namespace

BaseMoments base_moments(const ModelSpec& model, const FundamentalSeries& series,
                         ConvRule rule) {
    check_series(model, series);
    const GridFn Phi = sample_kernel_primitive(model, series.psi.grid);
    BaseMoments out;
    out.m_base = series.psi;
    out.M_base = add(Phi, conv(series.psi, Phi, rule));
    return out;
}

FullMoments full_moments(const ModelSpec& model, const FundamentalSeries& series,
                         ConvRule rule) {
    check_series(model, series);
    const GridFn lam = sample_baseline(model, series.psi.grid);
    const GridFn Lam = sample_baseline_primitive(model, series.psi.grid);
    FullMoments out;
    out.m_full = add(lam, conv(series.psi, lam, rule));
    out.M_full = add(Lam, conv(series.psi, Lam, rule));
    return out;
}

MomentTable moment_table(const ModelSpec& model, const FundamentalSeries& series,
                         ConvRule rule) {
    MomentTable t;
    t.grid = series.psi.grid;
    auto base = base_moments(model, series, rule);
    auto full = full_moments(model, series, rule);
    t.m_base = std::move(base.m_base);
    t.M_base = std::move(base.M_base);
    t.m_full = std::move(full.m_full);
    t.M_full = std::move(full.M_full);
    return t;
}

GridFn intensity_ratios(const GridFn& m_base) {
    GridFn out(m_base.grid, m_base.rows, m_base.cols);
    for (int m = 0; m <= m_base.grid.M; ++m)
        for (int jp = 0; jp < m_base.cols; ++jp) {
            double total = 0.0;
            for (int i = 0; i < m_base.rows; ++i) total += m_base.at(m, i, jp);
            for (int i = 0; i < m_base.rows; ++i)
                out.at(m, i, jp) = total > 0.0
                                       ? m_base.at(m, i, jp) / total
                                       : std::numeric_limits<double>::quiet_NaN();
        }
    return out;
}

} // namespace hawkes
