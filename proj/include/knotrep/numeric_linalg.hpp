#pragma once

#include <vector>

#include "knotrep/matrix.hpp"

namespace knotrep {

// Rank thresholding for the numeric backend: a singular value counts as
// nonzero when s > scale * 2^{-eps_exp} with scale = max(|M|, scale_floor).
// The floor keeps matrices that are exactly zero up to rounding noise from
// being read as full rank; the module actions here are O(1) by construction.
// Values inside the multiplicative band [tau * 2^{-band_bits}, tau * 2^{band_bits}]
// make the rank indeterminate (reported, not guessed). eps_exp = 0 means
// "half the working precision".
struct NumericOptions {
    int eps_exp = 0;
    int band_bits = 32;
    double scale_floor = 1.0;

    long effective_eps_exp() const {
        return eps_exp > 0 ? eps_exp : working_precision_bits() / 2;
    }
};

struct JacobiSvd {
    std::vector<BigFloat> sigma;  // descending
    Matrix<BigComplex> rotated;   // A * V (columns scale to left singular vectors)
    Matrix<BigComplex> v;         // right singular vectors (accumulated rotations)
    std::vector<int> order;       // column permutation applied when sorting
};

JacobiSvd jacobi_svd(Matrix<BigComplex> a);

BigFloat frobenius_norm(const Matrix<BigComplex>& a);

int rank_numeric(const Matrix<BigComplex>& a, const NumericOptions& opt = {});

// orthonormal basis of the numeric kernel, as matrix columns
Matrix<BigComplex> nullspace_numeric(const Matrix<BigComplex>& a, const NumericOptions& opt = {});

// minimum-norm least-squares solution of A x = b
std::vector<BigComplex> lstsq_min_norm(const Matrix<BigComplex>& a, const std::vector<BigComplex>& b,
                                       const NumericOptions& opt = {});

// Gram-Schmidt orthonormalization of the columns; near-dependent columns dropped
Matrix<BigComplex> orthonormalize_columns(const Matrix<BigComplex>& a, const NumericOptions& opt = {});

inline BigComplex hermitian_dot(const std::vector<BigComplex>& x, const std::vector<BigComplex>& y) {
    BigComplex s;
    for (size_t i = 0; i < x.size(); ++i) s += x[i].conj() * y[i];
    return s;
}

} // namespace knotrep
