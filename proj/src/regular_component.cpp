#include "ccm/regular_component.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ccm {

bool RatioSequence::any_perturbed() const {
    return std::any_of(perturbed.begin(), perturbed.end(), [](bool b) { return b; });
}

double perturb_singular_zero(double value, double scale, const Precision& prec) {
    if (value != 0.0) return value;
    return prec.eps1 * std::max(1.0, std::fabs(scale));
}

double entry_scale(const TridiagonalMatrix& c, std::size_t lo, std::size_t hi) {
    double s = 1.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        s = std::max({s, std::fabs(c.p(i)), std::fabs(c.q(i)), std::fabs(c.r(i))});
    }
    return s;
}

namespace {

RatioSequence lambda_impl(const TridiagonalMatrix& c, std::size_t s, const Precision* prec) {
    const std::size_t m = c.size();
    if (s < 1 || s > m) throw std::out_of_range("lambda_sequence: start row out of range");
    RatioSequence seq;
    seq.first = s + 1;
    const std::size_t n = m - s + 1;  // Lambda_{s+1} .. Lambda_{m+1}
    seq.values.assign(n, 0.0);
    seq.defined.assign(n, true);
    seq.perturbed.assign(n, false);
    const double scale = prec ? entry_scale(c, 1, m) : 1.0;
    for (std::size_t u = s + 1; u <= m + 1; ++u) {
        const std::size_t t = u - 1;  // Lambda_u from Lambda_t
        const std::size_t k = u - seq.first;
        double v;
        bool def = true;
        if (t == s) {
            v = c.q(s);
        } else if (!seq.defined[k - 1]) {
            v = c.q(t);
        } else if (seq.values[k - 1] == 0.0) {
            v = 0.0;
            def = false;
        } else {
            v = c.q(t) - c.p(t) * c.r(t) / seq.values[k - 1];
        }
        if (prec && def && v == 0.0 && c.p(u) * c.r(u) == 0.0) {
            v = perturb_singular_zero(0.0, scale, *prec);
            seq.perturbed[k] = true;
        }
        seq.values[k] = v;
        seq.defined[k] = def;
    }
    return seq;
}

}  // namespace

RatioSequence lambda_sequence(const TridiagonalMatrix& c, std::size_t start_row) {
    return lambda_impl(c, start_row, nullptr);
}

RatioSequence lambda_sequence_regularized(const TridiagonalMatrix& c, std::size_t start_row,
                                          const Precision& prec) {
    return lambda_impl(c, start_row, &prec);
}

GChain::GChain(const TridiagonalMatrix& c, std::size_t bottom, const RatioSequence* lambda,
               const Precision* prec)
    : c_(&c), bottom_(bottom), lambda_(lambda), prec_(prec), lowest_(bottom) {
    if (bottom < 1 || bottom > c.size()) throw std::out_of_range("GChain: block bottom out of range");
    all_.first = 0;
    all_.values.assign(bottom, 0.0);
    all_.defined.assign(bottom, true);
    all_.perturbed.assign(bottom, false);
}

void GChain::extend_to_row(std::size_t i) {
    if (i < 1) throw std::out_of_range("GChain: row out of range");
    while (lowest_ > i - 1) {
        const std::size_t t = lowest_;  // G_{t-1} from G_t
        const std::size_t s = t - 1;
        double v;
        bool def = true;
        if (t == bottom_) {
            v = c_->q(t);
        } else if (!all_.defined[t]) {
            v = c_->q(t);
        } else if (all_.values[t] == 0.0) {
            v = 0.0;
            def = false;
        } else {
            v = c_->q(t) - c_->r(t + 1) * c_->p(t + 1) / all_.values[t];
        }
        if (prec_ && def && v == 0.0 && s >= 1) {
            const bool ambiguous = c_->r(s + 1) * c_->p(s + 1) == 0.0;
            const bool both = lambda_ && lambda_->is_zero(s);
            if (ambiguous || both) {
                v = perturb_singular_zero(0.0, entry_scale(*c_, s, bottom_), *prec_);
                all_.perturbed[s] = true;
                perturbed_ = true;
            }
        }
        all_.values[s] = v;
        all_.defined[s] = def;
        lowest_ = s;
    }
}

RatioSequence GChain::sequence() const {
    RatioSequence out;
    out.first = lowest_;
    out.values.assign(all_.values.begin() + lowest_, all_.values.end());
    out.defined.assign(all_.defined.begin() + lowest_, all_.defined.end());
    out.perturbed.assign(all_.perturbed.begin() + lowest_, all_.perturbed.end());
    return out;
}

RatioSequence g_sequence(const TridiagonalMatrix& c, std::size_t top, std::size_t bottom) {
    if (top < 1 || top > bottom) throw std::out_of_range("g_sequence: bad block bounds");
    GChain g(c, bottom, nullptr, nullptr);
    g.extend_to_row(top);
    return g.sequence();
}

BlockRows::BlockRows(const TridiagonalMatrix& c, const RatioSequence& lambda, std::size_t bottom,
                     const Precision& prec, bool regularize)
    : c_(&c),
      lambda_(&lambda),
      prec_(&prec),
      regularize_(regularize),
      g_(c, bottom, &lambda, regularize ? &prec : nullptr),
      diag_cache_(bottom + 1, 0.0),
      diag_known_(bottom + 1, false) {
    if (lambda.first != 2) throw std::invalid_argument("BlockRows: Lambda must start at row 1");
}

double BlockRows::diagonal(std::size_t i) {
    if (diag_known_.at(i)) return diag_cache_[i];
    g_.extend_to_row(i);
    double b;
    if (!lambda_defined(i + 1) || !g_.is_defined(i - 1)) {
        b = 0.0;
    } else {
        // Lambda_{i+1} + G_{i-1} - q_i with the q_i cancellation done exactly.
        double den = (*lambda_)[i + 1];
        double coupling = 0.0;
        if (i < bottom() && g_.is_defined(i)) coupling = c_->r(i + 1) * c_->p(i + 1) / g_.value(i);
        den -= coupling;
        // A pivot that is a structural zero inverts to zero, as for a scalar
        // pseudo-inverse; the perturbed value only keeps the recurrences going.
        const bool structural = den == 0.0 || (lambda_perturbed(i + 1) && coupling == 0.0);
        if (structural && regularize_) {
            b = 0.0;
            perturbed_ = true;
        } else {
            b = 1.0 / den;
        }
    }
    diag_cache_[i] = b;
    diag_known_[i] = true;
    return b;
}

double BlockRows::beta(std::size_t xi) const {
    const double p = c_->p(xi);
    if (lambda_zero(xi)) return -p;
    if (lambda_zero(xi - 1)) return -p / (-c_->p(xi - 1) * c_->r(xi - 1));
    return -p / (*lambda_)[xi];
}

double BlockRows::beta_hat(std::size_t xi) {
    g_.extend_to_row(xi);
    const double r = c_->r(xi);
    if (g_.is_zero(xi - 1)) return -r;
    if (g_.is_zero(xi)) return -r / (-c_->r(xi + 1) * c_->p(xi + 1));
    const double g = xi == bottom() ? c_->q(xi) : g_.value(xi - 1);
    return -r / g;
}

double BlockRows::omega_lower(std::size_t i) {
    if (lambda_zero(i)) return 1.0 / (-c_->p(i) * c_->r(i));
    return diagonal(i);
}

double BlockRows::omega_upper(std::size_t i) {
    g_.extend_to_row(i);
    if (g_.is_zero(i)) return 1.0 / (-c_->r(i + 1) * c_->p(i + 1));
    return diagonal(i);
}

void BlockRows::row(std::size_t i, std::span<double> out) {
    const std::size_t l = bottom();
    if (i < 1 || i > l) throw std::out_of_range("BlockRows::row: row outside block");
    if (out.size() < l) throw std::invalid_argument("BlockRows::row: output too short");
    out[i - 1] = diagonal(i);

    if (g_.is_zero(i)) {
        std::fill(out.begin(), out.begin() + (i - 1), 0.0);
    } else {
        double prod = omega_lower(i);
        std::size_t j = i - 1;
        for (; j >= 1; --j) {
            prod *= beta(j + 1);
            out[j - 1] = lambda_zero(j) ? 0.0 : prod;
            if (prod == 0.0) break;
        }
        if (j >= 1) std::fill(out.begin(), out.begin() + (j - 1), 0.0);
    }

    if (lambda_zero(i)) {
        std::fill(out.begin() + i, out.begin() + l, 0.0);
    } else {
        double prod = omega_upper(i);
        std::size_t j = i + 1;
        for (; j <= l; ++j) {
            prod *= beta_hat(j);
            out[j - 1] = g_.is_zero(j) ? 0.0 : prod;
            if (prod == 0.0) break;
        }
        if (j <= l) std::fill(out.begin() + j, out.begin() + l, 0.0);
    }
}

StructureElements structure_elements(const TridiagonalMatrix& c, std::size_t top,
                                     std::size_t bottom, const Precision& prec) {
    if (top < 1 || top > bottom || bottom > c.size())
        throw std::out_of_range("structure_elements: bad block bounds");
    const RatioSequence lambda = lambda_sequence_regularized(c, 1, prec);
    BlockRows rows(c, lambda, bottom, prec, true);
    StructureElements s;
    s.top = top;
    s.bottom = bottom;
    for (std::size_t xi = 2; xi <= bottom; ++xi) s.beta.push_back(rows.beta(xi));
    for (std::size_t i = bottom; i >= top; --i) {
        rows.diagonal(i);
        if (i == 1) break;
    }
    for (std::size_t xi = top + 1; xi <= bottom; ++xi) s.beta_hat.push_back(rows.beta_hat(xi));
    for (std::size_t i = top; i <= bottom; ++i) {
        s.omega.push_back(rows.omega_lower(i));
        s.omega_hat.push_back(rows.omega_upper(i));
    }
    return s;
}

BlockInverse block_inverse(const TridiagonalMatrix& c, std::size_t top, std::size_t bottom,
                           const Precision& prec) {
    if (top < 1 || top > bottom || bottom > c.size())
        throw std::out_of_range("block_inverse: bad block bounds");
    const RatioSequence lambda = lambda_sequence_regularized(c, 1, prec);
    BlockRows rows(c, lambda, bottom, prec, true);
    BlockInverse b;
    b.top = top;
    b.bottom = bottom;
    b.values.assign((bottom - top + 1) * bottom, 0.0);
    for (std::size_t i = bottom; i >= top; --i) {
        std::span<double> out(b.values.data() + (i - top) * bottom, bottom);
        rows.row(i, out);
        for (double v : out) {
            if (!std::isfinite(v)) {
                throw std::overflow_error("block_inverse: non-finite element in row " +
                                          std::to_string(i));
            }
            b.rho = std::max(b.rho, std::fabs(v));
        }
        if (i == 1) break;
    }
    b.perturbed = rows.perturbed() || lambda.any_perturbed();
    return b;
}

double coupled_diagonal(double q_next, double p_next, double r_next, double b_last) {
    return q_next - p_next * b_last * r_next;
}

DenseMatrix regular_matrix(const TridiagonalMatrix& c, const std::vector<std::size_t>& partition) {
    const std::size_t m = c.size();
    if (partition.empty() || partition.front() != m)
        throw std::invalid_argument("regular_matrix: partition must start at m");
    DenseMatrix a = to_dense(c);
    const Precision prec;
    const RatioSequence lambda = lambda_sequence_regularized(c, 1, prec);
    for (std::size_t k = 1; k < partition.size(); ++k) {
        const std::size_t l = partition[k];
        if (l >= partition[k - 1] || l < 1) throw std::invalid_argument("regular_matrix: bad partition");
        BlockRows rows(c, lambda, l, prec, true);
        a(l - 1, l) = 0.0;
        a(l, l) = coupled_diagonal(c.q(l + 1), c.p(l + 1), c.r(l + 1), rows.diagonal(l));
    }
    return a;
}

}  // namespace ccm
