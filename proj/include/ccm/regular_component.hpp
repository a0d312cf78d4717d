#pragma once

// Building blocks of the regular component: the leading (Lambda) and trailing
// (G) minor-ratio recurrences, the structure elements beta / beta_hat / omega,
// rows of the block inverses B^(k) and the coupled diagonals q~.
//
// All indices are 1-based paper indices. Block k covers rows top..bottom
// (bottom = l_k, top = l_{k+1} + 1); its inverse rows span columns 1..bottom.

#include <cstddef>
#include <span>
#include <vector>

#include "ccm/matrix.hpp"
#include "ccm/precision.hpp"

namespace ccm {

/// Values of Lambda_i or G_i on a contiguous index range. An entry following a
/// zero is undefined (the minor ratio has a zero denominator).
struct RatioSequence {
    std::size_t first = 0;  // paper index of values[0]
    std::vector<double> values;
    std::vector<bool> defined;
    std::vector<bool> perturbed;

    bool contains(std::size_t idx) const { return idx >= first && idx < first + values.size(); }
    std::size_t last() const { return first + values.size() - 1; }
    bool is_defined(std::size_t idx) const { return defined.at(idx - first); }
    // Defined and exactly zero.
    bool is_zero(std::size_t idx) const {
        return contains(idx) && defined[idx - first] && values[idx - first] == 0.0;
    }
    double operator[](std::size_t idx) const { return values.at(idx - first); }
    bool any_perturbed() const;
};

/// Replacement for a structural zero: eps1 * scale, always positive.
double perturb_singular_zero(double value, double scale, const Precision& prec);

/// max(1, max |p|, |q|, |r|) over rows lo..hi.
double entry_scale(const TridiagonalMatrix& c, std::size_t lo, std::size_t hi);

/// Lambda_{s+1} .. Lambda_{m+1} starting at row s: Lambda_{s+1} = q_s,
/// Lambda_{i+1} = q_i - p_i r_i / Lambda_i, restarting after a zero.
RatioSequence lambda_sequence(const TridiagonalMatrix& c, std::size_t start_row);

/// Same recurrence, with zeros that would make the sequence ambiguous
/// (p_i r_i = 0 right after, or Lambda_{m+1} = 0) replaced by a tiny value.
RatioSequence lambda_sequence_regularized(const TridiagonalMatrix& c, std::size_t start_row,
                                          const Precision& prec);

/// Incremental G recurrence of one block, grown upward from the block bottom.
class GChain {
public:
    GChain(const TridiagonalMatrix& c, std::size_t bottom, const RatioSequence* lambda,
           const Precision* prec);

    std::size_t bottom() const { return bottom_; }
    /// Extends the chain so that G_{i-1} is available.
    void extend_to_row(std::size_t i);
    /// G_{lowest}..G_{bottom-1} computed so far.
    RatioSequence sequence() const;
    double value(std::size_t idx) const { return all_.values.at(idx); }
    bool is_zero(std::size_t idx) const { return idx >= lowest_ && idx < bottom_ && all_.is_zero(idx); }
    bool is_defined(std::size_t idx) const { return idx >= bottom_ || all_.defined.at(idx); }
    bool perturbed() const { return perturbed_; }

private:
    const TridiagonalMatrix* c_;
    std::size_t bottom_;
    const RatioSequence* lambda_;
    const Precision* prec_;
    RatioSequence all_;  // indexed directly by paper index, valid from lowest_ up
    std::size_t lowest_;
    bool perturbed_ = false;
};

/// G_{top-1} .. G_{bottom-1} of block top..bottom, no perturbation.
RatioSequence g_sequence(const TridiagonalMatrix& c, std::size_t top, std::size_t bottom);

/// Produces rows of B^(k) for one block, bottom-up.
class BlockRows {
public:
    /// `lambda` must start at row 1 and outlive this object.
    BlockRows(const TridiagonalMatrix& c, const RatioSequence& lambda, std::size_t bottom,
              const Precision& prec, bool regularize);

    std::size_t bottom() const { return g_.bottom(); }

    /// Fills out[0..bottom-1] with B_{i,1..bottom}. Rows must be requested in
    /// non-increasing order of i.
    void row(std::size_t i, std::span<double> out);

    double diagonal(std::size_t i);
    double beta(std::size_t xi) const;
    double beta_hat(std::size_t xi);
    double omega_lower(std::size_t i);
    double omega_upper(std::size_t i);

    const GChain& g() const { return g_; }
    bool perturbed() const { return perturbed_ || g_.perturbed(); }

private:
    const TridiagonalMatrix* c_;
    const RatioSequence* lambda_;
    const Precision* prec_;
    bool regularize_;
    GChain g_;
    bool perturbed_ = false;

    std::vector<double> diag_cache_;
    std::vector<bool> diag_known_;

    bool lambda_zero(std::size_t idx) const { return lambda_->is_zero(idx); }
    bool lambda_perturbed(std::size_t idx) const {
        return lambda_->contains(idx) && lambda_->perturbed[idx - lambda_->first];
    }
    bool lambda_defined(std::size_t idx) const { return !lambda_->contains(idx) || lambda_->is_defined(idx); }
};

struct StructureElements {
    std::size_t top = 0, bottom = 0;
    std::vector<double> beta;       // beta_{2..bottom}, index xi - 2
    std::vector<double> beta_hat;   // beta_hat_{top+1..bottom}, index xi - top - 1
    std::vector<double> omega;      // omega_{top..bottom} as used by the lower products
    std::vector<double> omega_hat;  // omega_{top..bottom} as used by the upper products
};

StructureElements structure_elements(const TridiagonalMatrix& c, std::size_t top,
                                     std::size_t bottom, const Precision& prec = {});

/// Dense rectangle of B^(k): rows top..bottom, columns 1..bottom.
struct BlockInverse {
    std::size_t top = 0, bottom = 0;
    std::vector<double> values;  // row-major, (bottom - top + 1) x bottom
    double rho = 0.0;            // max |B_ij|
    bool perturbed = false;

    double at(std::size_t i, std::size_t j) const { return values.at((i - top) * bottom + (j - 1)); }
};

/// B^(k) for block top..bottom of c. Throws std::overflow_error on a
/// non-finite element.
BlockInverse block_inverse(const TridiagonalMatrix& c, std::size_t top, std::size_t bottom,
                           const Precision& prec = {});

/// q~ = q - p * b_last * r.
double coupled_diagonal(double q_next, double p_next, double r_next, double b_last);

/// The regular-component matrix for a partition l_1 = m > l_2 > ... > l_n:
/// super-diagonal couplings r_{l_k+1} removed and block-top diagonals coupled.
DenseMatrix regular_matrix(const TridiagonalMatrix& c, const std::vector<std::size_t>& partition);

}  // namespace ccm
