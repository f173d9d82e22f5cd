#ifndef INTDIFF_MATRIX_HPP
#define INTDIFF_MATRIX_HPP

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "intdiff/rational.hpp"

namespace intdiff {

// Dense matrix over Q; all elimination below is exact.
class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rational(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    static QMatrix identity(int n) {
        QMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        QMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == 0) continue;
                for (int j = 0; j < b.cols_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return c;
    }
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

  private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

// Row-reduce in place; returns the pivot column of each pivot row
// (leftmost-column, topmost-row pivots).
inline std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivot_cols;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
        Rational inv = Rational(1) / m.at(r, c);
        for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            Rational f = m.at(i, c);
            for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

inline int rank(QMatrix m) { return static_cast<int>(rref(m).size()); }

// Basis of { v : Mv = 0 }, one vector per free column, already in
// reduced (echelonized) form.
inline std::vector<std::vector<Rational>> nullspace(QMatrix m) {
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        std::vector<Rational> v(static_cast<size_t>(m.cols()), Rational(0));
        v[static_cast<size_t>(free)] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[static_cast<size_t>(pivots[r])] = -m.at(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One exact solution of Mv = rhs with free variables set to zero, or
// nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_linear(QMatrix m, std::vector<Rational> rhs) {
    QMatrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = rhs[static_cast<size_t>(i)];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<Rational> v(static_cast<size_t>(m.cols()), Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r) v[static_cast<size_t>(pivots[r])] = aug.at(static_cast<int>(r), m.cols());
    return v;
}

inline std::optional<QMatrix> inverse(const QMatrix& m) {
    int n = m.rows();
    QMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) < n || (n > 0 && pivots[static_cast<size_t>(n) - 1] >= n)) return std::nullopt;
    QMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

inline Rational det(QMatrix m) {
    int n = m.rows();
    Rational d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        Rational inv = Rational(1) / m.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (m.at(i, c) == 0) continue;
            Rational f = m.at(i, c) * inv;
            for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return d;
}

// Rows r such that some column combination has its highest nonzero
// entry at r (the "profile" of the column space). The complement of
// the profile indexes a monomial basis of the cokernel.
inline std::set<int> column_top_profile(const QMatrix& m) {
    std::vector<std::vector<Rational>> pivots(static_cast<size_t>(m.rows()));
    std::set<int> profile;
    auto top = [&](const std::vector<Rational>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
            if (v[static_cast<size_t>(i)] != 0) return i;
        return -1;
    };
    for (int c = 0; c < m.cols(); ++c) {
        std::vector<Rational> v(static_cast<size_t>(m.rows()));
        for (int r = 0; r < m.rows(); ++r) v[static_cast<size_t>(r)] = m.at(r, c);
        int t = top(v);
        while (t >= 0 && profile.count(t)) {
            Rational f = v[static_cast<size_t>(t)] / pivots[static_cast<size_t>(t)][static_cast<size_t>(t)];
            const auto& pv = pivots[static_cast<size_t>(t)];
            for (size_t i = 0; i < v.size(); ++i) v[i] -= f * pv[i];
            t = top(v);
        }
        if (t >= 0) {
            profile.insert(t);
            pivots[static_cast<size_t>(t)] = std::move(v);
        }
    }
    return profile;
}

// Canonical reduced basis of the span of the given row vectors; two
// spans are equal iff these agree.
inline std::vector<std::vector<Rational>> span_basis(const std::vector<std::vector<Rational>>& vecs, int dim) {
    QMatrix m(static_cast<int>(vecs.size()), dim);
    for (size_t i = 0; i < vecs.size(); ++i)
        for (int j = 0; j < dim && j < static_cast<int>(vecs[i].size()); ++j) m.at(static_cast<int>(i), j) = vecs[i][static_cast<size_t>(j)];
    std::vector<int> pivots = rref(m);
    std::vector<std::vector<Rational>> basis;
    for (size_t r = 0; r < pivots.size(); ++r) {
        std::vector<Rational> v(static_cast<size_t>(dim));
        for (int j = 0; j < dim; ++j) v[static_cast<size_t>(j)] = m.at(static_cast<int>(r), j);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline bool spans_equal(const std::vector<std::vector<Rational>>& a, const std::vector<std::vector<Rational>>& b, int dim) {
    return span_basis(a, dim) == span_basis(b, dim);
}

}  // namespace intdiff

#endif
