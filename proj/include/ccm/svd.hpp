#pragma once

#include "ccm/matrix.hpp"
#include "ccm/precision.hpp"

namespace ccm {

struct SvdResult {
    DenseMatrix u;
    Vector s;  // descending
    DenseMatrix v;
};

SvdResult svd(const DenseMatrix& a);
Vector singular_values(const DenseMatrix& a);

/// sigma_max / sigma_min of the stored matrix, from an extended-precision SVD;
/// +inf once sigma_min <= m u sigma_max, u the extended unit roundoff.
double condition_number(const DenseMatrix& a, const Precision& prec = {});
double condition_number(const AnyMatrix& w, const Precision& prec = {});

/// Spectral norm of the inverse (1 / sigma_min), same SVD and cutoff.
double inverse_norm2(const DenseMatrix& a, const Precision& prec = {});

}  // namespace ccm
