#include "ccm/svd.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccm {
namespace {

using EMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMat to_eigen(const DenseMatrix& a) {
    for (double v : a.data())
        if (!std::isfinite(v)) throw std::invalid_argument("svd: non-finite entry");
    return Eigen::Map<const EMat>(a.data().data(), a.size(), a.size());
}

DenseMatrix from_eigen(const EMat& m) {
    DenseMatrix out(m.rows());
    Eigen::Map<EMat>(out.data().data(), m.rows(), m.cols()) = m;
    return out;
}

}  // namespace

SvdResult svd(const DenseMatrix& a) {
    Eigen::JacobiSVD<EMat> j(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult r;
    r.u = from_eigen(j.matrixU());
    r.v = from_eigen(j.matrixV());
    r.s.assign(j.singularValues().data(), j.singularValues().data() + j.singularValues().size());
    return r;
}

Vector singular_values(const DenseMatrix& a) {
    Eigen::JacobiSVD<EMat> j(to_eigen(a));
    return Vector(j.singularValues().data(), j.singularValues().data() + j.singularValues().size());
}

namespace {

// Singular values of the stored matrix in extended precision; rank cutoff at
// m times the extended unit roundoff.
struct Extremes {
    long double smax = 0, smin = 0;
    bool singular = true;
};

Extremes extremes(const DenseMatrix& a) {
    using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const EMat d = to_eigen(a);
    Eigen::JacobiSVD<LMat> j(d.cast<long double>().eval());
    const auto& s = j.singularValues();
    Extremes e;
    if (s.size() == 0) return e;
    e.smax = s(0);
    e.smin = s(s.size() - 1);
    e.singular = e.smax == 0 ||
                 e.smin <= e.smax * static_cast<long double>(a.size()) * std::numeric_limits<long double>::epsilon();
    return e;
}

}  // namespace

double condition_number(const DenseMatrix& a, const Precision&) {
    if (a.size() == 0) return 1.0;
    const Extremes e = extremes(a);
    if (e.singular) return std::numeric_limits<double>::infinity();
    return static_cast<double>(e.smax / e.smin);
}

double condition_number(const AnyMatrix& w, const Precision& prec) {
    return condition_number(to_dense(w), prec);
}

double inverse_norm2(const DenseMatrix& a, const Precision&) {
    const Extremes e = extremes(a);
    if (e.singular) return std::numeric_limits<double>::infinity();
    return static_cast<double>(1 / e.smin);
}

}  // namespace ccm
