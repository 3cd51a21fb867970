#pragma once

#include <vector>

#include "gosper/numeric.hpp"

namespace gosper {

// Streaming elementary (e) and complete homogeneous (h) symmetric functions
// in the variables 1/j^s for j = 1, ..., k-1, maintained incrementally up to
// a fixed maximum order.  Starting state (k = 1) has no variables, so
// e_0 = h_0 = 1 and every higher order is 0; advance() appends the variable
// 1/k^s and moves to k+1.  One advance costs O(max_order) rational ops.
class SymState {
public:
    SymState(int s, int max_order);

    // Append 1/k^s for the current k, then increment k.
    void advance();
    void advance_to(long k_target);

    long k() const { return k_; }
    int exponent() const { return s_; }
    int max_order() const { return max_order_; }

    // e_ell and h_m of the current variable set; order in [0, max_order].
    const Rational& e(int ell) const;
    const Rational& h(int m) const;

private:
    int s_;
    int max_order_;
    long k_;
    std::vector<Rational> e_;
    std::vector<Rational> h_;
};

// One-shot helpers: the symmetric functions of {1/j^s : 1 <= j <= k-1}.
Rational elem_sym(int ell, int s, long k);
Rational complete_hom(int m, int s, long k);

// Generalized harmonic number H_n^(r) = sum_{j=1}^n 1/j^r, with H_0 = 0.
Rational harmonic(long n, int r);

}  // namespace gosper
