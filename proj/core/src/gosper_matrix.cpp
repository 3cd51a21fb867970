#include "gosper/gosper_matrix.hpp"

#include <future>
#include <string>

namespace gosper {

GosperMatrix::GosperMatrix(int n, std::vector<Scalar> a, std::vector<Scalar> u)
    : n_(n), a_(std::move(a)), u_(std::move(u)) {
    if (n < 1) throw DimensionError("matrix dimension must be >= 1");
    if (a_.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
        throw DimensionError("A block has wrong size");
    if (u_.size() != static_cast<size_t>(n))
        throw DimensionError("u vector has wrong size");
}

GosperMatrix GosperMatrix::identity(int n) {
    if (n < 1) throw DimensionError("matrix dimension must be >= 1");
    std::vector<Scalar> a(static_cast<size_t>(n) * n, Scalar(Rational(0)));
    for (int i = 0; i < n; ++i)
        a[static_cast<size_t>(i) * n + i] = Scalar(Rational(1));
    return GosperMatrix(n, std::move(a), std::vector<Scalar>(n, Scalar(Rational(0))));
}

size_t GosperMatrix::index(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw DimensionError("matrix index out of range");
    return static_cast<size_t>(i) * n_ + static_cast<size_t>(j);
}

const Scalar& GosperMatrix::u(int i) const {
    if (i < 0 || i >= n_) throw DimensionError("vector index out of range");
    return u_[static_cast<size_t>(i)];
}

Scalar& GosperMatrix::u(int i) {
    if (i < 0 || i >= n_) throw DimensionError("vector index out of range");
    return u_[static_cast<size_t>(i)];
}

GosperMatrix multiply(const GosperMatrix& m1, const GosperMatrix& m2) {
    if (m1.dim() != m2.dim())
        throw DimensionError("cannot multiply matrices of dimension " +
                             std::to_string(m1.dim()) + " and " +
                             std::to_string(m2.dim()));
    const int n = m1.dim();
    std::vector<Scalar> a(static_cast<size_t>(n) * n);
    std::vector<Scalar> u(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Scalar acc = mul(m1.a(i, 0), m2.a(0, j));
            for (int t = 1; t < n; ++t)
                acc = add(acc, mul(m1.a(i, t), m2.a(t, j)));
            a[static_cast<size_t>(i) * n + j] = std::move(acc);
        }
        Scalar acc = mul(m1.a(i, 0), m2.u(0));
        for (int t = 1; t < n; ++t) acc = add(acc, mul(m1.a(i, t), m2.u(t)));
        u[static_cast<size_t>(i)] = add(acc, m1.u(i));
    }
    return GosperMatrix(n, std::move(a), std::move(u));
}

GosperMatrix inverse(const GosperMatrix& m) {
    const int n = m.dim();
    // Gauss-Jordan on [A | I].
    std::vector<Scalar> w(m.a_data());
    GosperMatrix inv = GosperMatrix::identity(n);
    auto at = [&](int i, int j) -> Scalar& {
        return w[static_cast<size_t>(i) * n + j];
    };
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (!at(row, col).is_zero()) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0)
            throw DomainError("matrix is singular: no pivot in column " +
                              std::to_string(col));
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(at(pivot, j), at(col, j));
                std::swap(inv.a(pivot, j), inv.a(col, j));
            }
        }
        Scalar d = invert(at(col, col));
        for (int j = 0; j < n; ++j) {
            at(col, j) = mul(at(col, j), d);
            inv.a(col, j) = mul(inv.a(col, j), d);
        }
        for (int row = 0; row < n; ++row) {
            if (row == col || at(row, col).is_zero()) continue;
            Scalar f = at(row, col);
            for (int j = 0; j < n; ++j) {
                at(row, j) = sub(at(row, j), mul(f, at(col, j)));
                inv.a(row, j) = sub(inv.a(row, j), mul(f, inv.a(col, j)));
            }
        }
    }
    // u' = -A^-1 u.
    for (int i = 0; i < n; ++i) {
        Scalar acc = mul(inv.a(i, 0), m.u(0));
        for (int t = 1; t < n; ++t) acc = add(acc, mul(inv.a(i, t), m.u(t)));
        inv.u(i) = neg(acc);
    }
    return inv;
}

GosperMatrix finite_product(std::span<const GosperMatrix> factors) {
    if (factors.empty())
        throw DimensionError("empty product needs an explicit dimension");
    return finite_product(factors, factors.front().dim());
}

GosperMatrix finite_product(std::span<const GosperMatrix> factors, int dim) {
    GosperMatrix acc = GosperMatrix::identity(dim);
    for (const GosperMatrix& f : factors) acc = multiply(acc, f);
    return acc;
}

GosperMatrix finite_product_segmented(std::span<const GosperMatrix> factors,
                                      int dim, size_t segments, bool parallel) {
    if (segments < 1) throw DomainError("segment count must be >= 1");
    if (segments > factors.size() && !factors.empty()) segments = factors.size();
    if (factors.empty()) return GosperMatrix::identity(dim);

    // Balanced contiguous split: the first (size % segments) chunks get one
    // extra factor.
    std::vector<std::span<const GosperMatrix>> chunks;
    size_t base = factors.size() / segments;
    size_t extra = factors.size() % segments;
    size_t offset = 0;
    for (size_t c = 0; c < segments; ++c) {
        size_t len = base + (c < extra ? 1 : 0);
        chunks.push_back(factors.subspan(offset, len));
        offset += len;
    }

    std::vector<GosperMatrix> partials;
    partials.reserve(segments);
    if (parallel) {
        std::vector<std::future<GosperMatrix>> jobs;
        jobs.reserve(segments);
        for (auto chunk : chunks)
            jobs.push_back(std::async(std::launch::async, [chunk, dim] {
                return finite_product(chunk, dim);
            }));
        for (auto& job : jobs) partials.push_back(job.get());
    } else {
        for (auto chunk : chunks) partials.push_back(finite_product(chunk, dim));
    }
    return finite_product(std::span<const GosperMatrix>(partials), dim);
}

}  // namespace gosper
