#pragma once

#include <span>
#include <vector>

#include "gosper/numeric.hpp"

namespace gosper {

// Element of the group of (n+1)x(n+1) block matrices [[A, u], [0, 1]] with
// A an invertible n x n block and u an n-vector.  Only A and u are stored.
// Row/column indices are 0-based from the top-left, so u(0) is the *top*
// entry of the last column.
class GosperMatrix {
public:
    GosperMatrix(int n, std::vector<Scalar> a, std::vector<Scalar> u);
    static GosperMatrix identity(int n);

    int dim() const { return n_; }
    const Scalar& a(int i, int j) const { return a_[index(i, j)]; }
    Scalar& a(int i, int j) { return a_[index(i, j)]; }
    const Scalar& u(int i) const;
    Scalar& u(int i);

    const std::vector<Scalar>& a_data() const { return a_; }
    const std::vector<Scalar>& u_data() const { return u_; }

private:
    size_t index(int i, int j) const;

    int n_;
    std::vector<Scalar> a_;  // row-major n x n
    std::vector<Scalar> u_;  // length n
};

// Group operation: A = A1*A2, u = A1*u2 + u1.  DimensionError on mismatch.
GosperMatrix multiply(const GosperMatrix& m1, const GosperMatrix& m2);

// Group inverse: [[A^-1, -A^-1 u], [0, 1]].  A is inverted by Gauss-Jordan
// elimination with column pivot search; a singular A raises DomainError
// naming the offending column.
GosperMatrix inverse(const GosperMatrix& m);

// Left-to-right product of factors.  The empty product needs an explicit
// dimension to produce an identity; the span overload without one rejects
// empty input.
GosperMatrix finite_product(std::span<const GosperMatrix> factors);
GosperMatrix finite_product(std::span<const GosperMatrix> factors, int dim);

// Same product, evaluated as `segments` contiguous partial products that are
// then combined in order.  With parallel = true the segments run on separate
// threads.  Exact backends give bit-identical results to finite_product by
// associativity; this exists to cross-check that and to exploit multicore.
GosperMatrix finite_product_segmented(std::span<const GosperMatrix> factors,
                                      int dim, size_t segments,
                                      bool parallel = false);

}  // namespace gosper
