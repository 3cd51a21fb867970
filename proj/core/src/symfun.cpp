#include "gosper/symfun.hpp"

namespace gosper {

SymState::SymState(int s, int max_order) : s_(s), max_order_(max_order), k_(1) {
    if (max_order < 0) throw DomainError("symmetric function order must be >= 0");
    e_.assign(static_cast<size_t>(max_order) + 1, Rational(0));
    h_.assign(static_cast<size_t>(max_order) + 1, Rational(0));
    e_[0] = Rational(1);
    h_[0] = Rational(1);
}

void SymState::advance() {
    Rational x = Rational(k_).pow(s_).invert();
    // e_ell gains e_{ell-1} * x; descending order so each e_{ell-1} is still
    // the value before this variable was added.
    for (int ell = max_order_; ell >= 1; --ell)
        e_[static_cast<size_t>(ell)] += e_[static_cast<size_t>(ell) - 1] * x;
    // h_m gains x * h_{m-1} *including* the new variable; ascending order so
    // h_{m-1} has already been updated.
    for (int m = 1; m <= max_order_; ++m)
        h_[static_cast<size_t>(m)] += x * h_[static_cast<size_t>(m) - 1];
    ++k_;
}

void SymState::advance_to(long k_target) {
    if (k_target < k_)
        throw DomainError("symmetric function state cannot rewind");
    while (k_ < k_target) advance();
}

const Rational& SymState::e(int ell) const {
    if (ell < 0 || ell > max_order_)
        throw DomainError("symmetric function order out of range");
    return e_[static_cast<size_t>(ell)];
}

const Rational& SymState::h(int m) const {
    if (m < 0 || m > max_order_)
        throw DomainError("symmetric function order out of range");
    return h_[static_cast<size_t>(m)];
}

Rational elem_sym(int ell, int s, long k) {
    if (k < 1) throw DomainError("symmetric functions need k >= 1");
    SymState st(s, ell);
    st.advance_to(k);
    return st.e(ell);
}

Rational complete_hom(int m, int s, long k) {
    if (k < 1) throw DomainError("symmetric functions need k >= 1");
    SymState st(s, m);
    st.advance_to(k);
    return st.h(m);
}

Rational harmonic(long n, int r) {
    if (n < 0) throw DomainError("harmonic number needs n >= 0");
    Rational sum(0);
    for (long j = 1; j <= n; ++j) sum += Rational(j).pow(r).invert();
    return sum;
}

}  // namespace gosper
