#include "enkfsmcs/linalg.hpp"

#include <cmath>
#include <limits>

namespace enkfsmcs {

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

bool is_symmetric(const Matrix& a, double rel_tol) {
    if (a.rows() != a.cols()) return false;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

Matrix cholesky_factor(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("cholesky_factor: matrix must be square");
    if (!a.allFinite())
        throw std::invalid_argument("cholesky_factor: matrix has non-finite entries");
    if (!is_symmetric(a))
        throw std::invalid_argument("cholesky_factor: matrix not symmetric within tolerance");

    const auto d = a.rows();
    double base = a.trace() / static_cast<double>(d);
    if (!(base > 0.0)) base = 1.0;

    double jitter = 0.0;
    for (int attempt = 0; attempt <= 7; ++attempt) {
        Matrix candidate = a;
        if (jitter > 0.0) candidate.diagonal().array() += jitter;
        Eigen::LLT<Matrix> llt(candidate);
        if (llt.info() == Eigen::Success) {
            Matrix lower = llt.matrixL();
            if (lower.allFinite()) return lower;
        }
        jitter = (attempt == 0) ? 1e-12 * base : jitter * 10.0;
        if (jitter > 1e-6 * base * (1.0 + 1e-12)) break;
    }
    throw NotPositiveDefinite("cholesky_factor: not positive definite after maximum jitter");
}

Matrix solve_spd(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve_spd: dimension mismatch");
    const Matrix lower = cholesky_factor(a);
    Matrix y = lower.triangularView<Eigen::Lower>().solve(b);
    return lower.transpose().triangularView<Eigen::Upper>().solve(y);
}

double log_sum_exp(const Vector& v) {
    const double hi = v.maxCoeff();
    if (!std::isfinite(hi)) return hi; // all -inf (or a nan leaks through)
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::exp(v[i] - hi);
    return hi + std::log(acc);
}

} // namespace enkfsmcs
