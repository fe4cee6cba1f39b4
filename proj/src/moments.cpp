#include "enkfsmcs/moments.hpp"

#include <algorithm>

#include "enkfsmcs/errors.hpp"

namespace enkfsmcs {

MomentEstimate weighted_moments(const Matrix& rows, const Vector& weights) {
    const auto m = rows.rows();
    const auto d = rows.cols();
    if (weights.size() != m)
        throw std::invalid_argument("weighted_moments: weight count mismatch");
    if (m < 2) throw DegenerateEnsemble("weighted_moments: need at least 2 particles");

    double sum_sq = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) sum_sq += weights[i] * weights[i];
    const double ess = 1.0 / sum_sq;
    if (!(ess >= 2.0))
        throw DegenerateEnsemble("weighted_moments: effective sample size below 2");

    MomentEstimate est;
    est.ess = ess;
    est.mean = rows.transpose() * weights;

    Matrix cov = Matrix::Zero(d, d);
    Vector dev(d);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (weights[i] == 0.0) continue;
        dev = rows.row(i).transpose() - est.mean;
        cov.selfadjointView<Eigen::Lower>().rankUpdate(dev, weights[i]);
    }
    cov = Matrix(cov.selfadjointView<Eigen::Lower>());
    est.cov = symmetrize(cov / (1.0 - sum_sq));
    return est;
}

MeanStd weighted_mean_std(const Matrix& rows, const Vector& weights) {
    MeanStd out;
    out.mean = rows.transpose() * weights;
    double sum_sq = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) sum_sq += weights[i] * weights[i];
    const double denom = std::max(1.0 - sum_sq, 1e-300);
    Vector var = Vector::Zero(rows.cols());
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        if (weights[i] == 0.0) continue;
        var += weights[i] * (rows.row(i).transpose() - out.mean).array().square().matrix();
    }
    out.stddev = (var / denom).cwiseSqrt();
    return out;
}

void median_fill_rows(Matrix& rows, const std::vector<char>& bad) {
    const auto m = rows.rows();
    std::vector<Eigen::Index> good;
    good.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i)
        if (!bad[static_cast<std::size_t>(i)]) good.push_back(i);
    if (good.empty() || good.size() == static_cast<std::size_t>(m)) return;

    Vector median(rows.cols());
    std::vector<double> column(good.size());
    for (Eigen::Index j = 0; j < rows.cols(); ++j) {
        for (std::size_t i = 0; i < good.size(); ++i) column[i] = rows(good[i], j);
        auto mid = column.begin() + static_cast<std::ptrdiff_t>(column.size() / 2);
        std::nth_element(column.begin(), mid, column.end());
        median[j] = *mid;
    }
    for (Eigen::Index i = 0; i < m; ++i)
        if (bad[static_cast<std::size_t>(i)]) rows.row(i) = median.transpose();
}

} // namespace enkfsmcs
