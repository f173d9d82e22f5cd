#ifndef INTDIFF_ACTION_HPP
#define INTDIFF_ACTION_HPP

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "intdiff/matrix.hpp"
#include "intdiff/operator.hpp"

namespace intdiff {

// ----- coordinates in the divided basis x^[s] = x^s/s! ---------------------

inline std::vector<Rational> to_divided(const XPoly& p, int len) {
    std::vector<Rational> v(static_cast<size_t>(len), Rational(0));
    for (int s = 0; s <= p.degree() && s < len; ++s)
        v[static_cast<size_t>(s)] = p.coeff(s) * Rational(factorial(static_cast<unsigned long>(s)));
    return v;
}

inline XPoly from_divided(const std::vector<Rational>& v) {
    std::vector<Rational> c(v.size());
    for (size_t s = 0; s < v.size(); ++s) c[s] = v[s] / Rational(factorial(static_cast<unsigned long>(s)));
    return XPoly(std::move(c));
}

// ----- the action on K[x] ---------------------------------------------------

// a*p, exactly. Monomials transform as v_k * x^s = (s!/(s+k)!) x^{s+k}
// (dying when s+k < 0), b(H) x^m = b(m+1) x^m, e_ij x^s = delta_js (j!/i!) x^i.
inline XPoly apply(const Operator& a, const XPoly& p) {
    std::vector<Rational> out;
    auto bump = [&](int deg, const Rational& c) {
        if (c == 0) return;
        if (static_cast<int>(out.size()) <= deg) out.resize(static_cast<size_t>(deg) + 1, Rational(0));
        out[static_cast<size_t>(deg)] += c;
    };
    for (int s = 0; s <= p.degree(); ++s) {
        Rational ps = p.coeff(s);
        if (ps == 0) continue;
        for (const auto& [k, b] : a.graded()) {
            int m = s + k;
            if (m < 0) continue;
            Rational c = ps * factorial_ratio(static_cast<unsigned long>(s), static_cast<unsigned long>(m));
            bump(m, c * b.eval(Rational(m + 1)));
        }
        for (const auto& [ij, c] : a.fpart().entries())
            if (ij.second == s) bump(ij.first, ps * c * factorial_ratio(static_cast<unsigned long>(ij.second), static_cast<unsigned long>(ij.first)));
    }
    return XPoly(std::move(out));
}

// ----- certified truncations -------------------------------------------------

// Window of the infinite matrix of a in the divided basis: entry (t, s)
// is the coefficient of x^[t] in a*x^[s], i.e. b_{t-s}(t+1) + lambda_{ts}.
struct TruncMatrix {
    int rows = 0;
    int cols = 0;
    QMatrix entries;
};

inline TruncMatrix truncation(const Operator& a, int cols) {
    int p_plus = a.graded().empty() ? 0 : std::max(a.pi_plus(), 0);
    TruncMatrix t;
    t.cols = cols;
    t.rows = cols + p_plus;
    t.entries = QMatrix(t.rows, t.cols);
    for (const auto& [k, b] : a.graded())
        for (int s = 0; s < t.cols; ++s) {
            int row = s + k;
            if (row < 0 || row >= t.rows) continue;
            t.entries.at(row, s) = t.entries.at(row, s) + b.eval(Rational(row + 1));
        }
    for (const auto& [ij, c] : a.fpart().entries())
        if (ij.first < t.rows && ij.second < t.cols) t.entries.at(ij.first, ij.second) = t.entries.at(ij.first, ij.second) + c;
    return t;
}

// ----- Fredholm data ---------------------------------------------------------

struct AnalysisReport {
    int index = 0;
    std::vector<XPoly> kernel_basis;
    std::vector<XPoly> cokernel_basis;  // divided-basis monomial representatives of a complement of the image
    bool injective = false;
    bool surjective = false;
    bool bijective = false;
    int window_used = 0;
};

struct SolutionSet {
    std::optional<XPoly> particular;
    std::vector<XPoly> homogeneous_basis;
};

inline int index(const Operator& a) {
    if (a.is_compact()) throw DomainError("index undefined for compact operators");
    return -a.pi_plus();
}

namespace detail {

inline void require_fredholm(const Operator& a) {
    if (a.is_compact()) throw DomainError("not Fredholm on K[x]");
}

// Largest column beyond which a*x^[s] is guaranteed a nonzero top term
// at s + pi_plus: past all finite-part rows and all integer roots of
// the leading graded coefficient.
inline int staircase_start(const Operator& a) {
    int p = a.pi_plus();
    const HPoly lead = a.graded_coeff(p);
    int m0 = a.deg_f();
    for (long r : integer_roots(lead)) {
        long s = r - p - 1;
        if (s >= 0) m0 = std::max<int>(m0, static_cast<int>(s));
    }
    return m0;
}

inline std::vector<std::vector<Rational>> kernel_vectors(const Operator& a, int window) {
    TruncMatrix t = truncation(a, window + 1);
    return nullspace(t.entries);
}

// Monic polynomial from a divided-coordinate vector.
inline XPoly monic_from_divided(const std::vector<Rational>& v) {
    XPoly q = from_divided(v);
    return q.is_zero() ? q : (Rational(1) / q.leading()) * q;
}

}  // namespace detail

// Exact kernel basis, cokernel representatives and classification of the
// action of a on K[x]. The window W = m0 + 2|p| + 2 (m0 from the
// staircase bound above) makes the kernel computation provably complete;
// the cokernel echelon carries a runtime certificate and the window
// doubles on certificate failure.
inline AnalysisReport analyze(const Operator& a, int window_hint = 0) {
    detail::require_fredholm(a);
    int p = a.pi_plus();
    int m0 = detail::staircase_start(a);
    int w = std::max(m0 + 2 * std::abs(p) + 2, window_hint);
    for (; w < (1 << 20); w *= 2) {
        auto ker_vecs = detail::kernel_vectors(a, w);

        int cok_cols = w + std::abs(p) + 2;
        TruncMatrix tc = truncation(a, cok_cols);
        std::set<int> profile = column_top_profile(tc.entries);
        std::vector<int> cok_rows;
        for (int t = 0; t < cok_cols + p; ++t)
            if (!profile.count(t)) cok_rows.push_back(t);

        bool cert = static_cast<int>(ker_vecs.size()) - static_cast<int>(cok_rows.size()) == -p;
        for (int t : cok_rows)
            if (t > w + p) cert = false;
        if (!cert) continue;

        AnalysisReport rep;
        rep.index = -p;
        rep.window_used = w;
        for (const auto& v : ker_vecs) rep.kernel_basis.push_back(detail::monic_from_divided(v));
        for (int t : cok_rows) {
            std::vector<Rational> mono(static_cast<size_t>(t) + 1, Rational(0));
            mono.back() = Rational(factorial(static_cast<unsigned long>(t)));  // monic representative of the x^[t] line
            rep.cokernel_basis.push_back(from_divided(mono));
        }
        rep.injective = rep.kernel_basis.empty();
        rep.surjective = rep.cokernel_basis.empty();
        rep.bijective = rep.injective && rep.surjective;
        return rep;
    }
    throw DomainError("analysis window grew beyond the certification limit");
}

struct ClassificationFlags {
    bool injective = false;
    bool surjective = false;
    bool bijective = false;
};

namespace detail {

// The unique factor a' with a = a' I^n: graded degrees drop by n,
// finite-part columns rise by n.
inline Operator unshift_integral(const Operator& a, int n) {
    Operator r;
    for (const auto& [k, b] : a.graded()) r = r + Operator::graded_term(k - n, b);
    for (const auto& [ij, c] : a.fpart().entries()) r = r + Operator::e(ij.first, ij.second + n, c);
    return r;
}

}  // namespace detail

// Injective/surjective/bijective from the structural criteria alone:
// integer-root tests on the relevant K[H] coefficient plus finite block
// checks, never a large truncation.
inline ClassificationFlags classify_structural(const Operator& a) {
    detail::require_fredholm(a);
    int p = a.pi_plus();
    ClassificationFlags flags;

    // Surjectivity: needs index -p >= 0; with n = -p and d = deg_F(a),
    // the leading coefficient may vanish only at arguments <= d+1, and
    // when a finite part is present the rows [0..d] must be covered by
    // the columns [0..d+n].
    if (p <= 0) {
        int n = -p;
        const HPoly lead = a.graded_coeff(p);
        int d = a.deg_f();
        long root_floor = a.fpart().empty() ? 1 : d + 2;
        bool roots_ok = true;
        for (long r : integer_roots(lead))
            if (r >= root_floor) roots_ok = false;
        if (a.fpart().empty()) {
            flags.surjective = roots_ok;
        } else if (roots_ok) {
            TruncMatrix t = truncation(a, d + n + 1);
            QMatrix blockm(d + 1, d + n + 1);
            for (int i = 0; i <= d; ++i)
                for (int j = 0; j <= d + n; ++j) blockm.at(i, j) = t.entries.at(i, j);
            flags.surjective = rank(blockm) == d + 1;
        }
    }

    // Injectivity: needs index -p <= 0; with a = a' I^n (n = p), the
    // kernel of a' lives inside the finite window of its staircase bound
    // m, and a is injective iff that kernel misses x^n K[x].
    if (p >= 0) {
        int n = p;
        Operator ap = detail::unshift_integral(a, n);
        int m = detail::staircase_start(ap);
        if (m < 0) {
            flags.injective = true;
        } else {
            TruncMatrix t = truncation(ap, m + 1);
            int extra = std::min(n, m + 1);
            QMatrix stacked(t.rows + extra, t.cols);
            for (int i = 0; i < t.rows; ++i)
                for (int j = 0; j < t.cols; ++j) stacked.at(i, j) = t.entries.at(i, j);
            for (int i = 0; i < extra; ++i) stacked.at(t.rows + i, i) = 1;
            flags.injective = nullspace(stacked).empty();
        }
    }

    flags.bijective = flags.injective && flags.surjective;
    return flags;
}

// The unique preimage under a bijective action, via the block inversion:
// finite block on K[x]_{<=d}, terminating Neumann series of a0^{-1} a_-
// on the complement (a_- strictly lowers degree).
inline XPoly apply_inverse(const Operator& a, const XPoly& p) {
    if (a.is_compact() || !classify_structural(a).bijective) throw DomainError("not invertible on K[x]");
    int d = a.deg_f();
    const HPoly a0 = a.graded_coeff(0);

    int len = std::max(p.degree() + 1, d + 1);
    std::vector<Rational> rhs = to_divided(p, len);

    Operator a_minus;
    for (const auto& [k, b] : a.graded())
        if (k < 0) a_minus = a_minus + Operator::graded_term(k, b);

    auto a0_inv_high = [&](const std::vector<Rational>& v) {
        std::vector<Rational> r(v.size(), Rational(0));
        for (int s = d + 1; s < static_cast<int>(v.size()); ++s)
            if (v[static_cast<size_t>(s)] != 0) r[static_cast<size_t>(s)] = v[static_cast<size_t>(s)] / a0.eval(Rational(s + 1));
        return r;
    };
    auto high_part = [&](const XPoly& q) {
        // a_minus lowers degree, so len coordinates always suffice
        std::vector<Rational> v = to_divided(q, len);
        for (int s = 0; s <= d; ++s) v[static_cast<size_t>(s)] = 0;
        return v;
    };

    std::vector<Rational> high_rhs = rhs;
    for (int s = 0; s <= d; ++s) high_rhs[static_cast<size_t>(s)] = 0;
    std::vector<Rational> q_high(len, Rational(0));
    std::vector<Rational> term = a0_inv_high(high_rhs);
    while (true) {
        bool zero = true;
        for (size_t i = 0; i < term.size(); ++i) {
            if (term[i] == 0) continue;
            zero = false;
            q_high[i] += term[i];
        }
        if (zero) break;
        term = a0_inv_high(high_part(apply(a_minus, from_divided(term))));
        for (auto& v : term) v = -v;
    }

    XPoly q = from_divided(q_high);
    if (d >= 0) {
        std::vector<Rational> w = to_divided(apply(a, q), len);
        std::vector<Rational> low_rhs(static_cast<size_t>(d) + 1);
        for (int s = 0; s <= d; ++s) low_rhs[static_cast<size_t>(s)] = rhs[static_cast<size_t>(s)] - w[static_cast<size_t>(s)];
        TruncMatrix t = truncation(a, d + 1);
        QMatrix blockm(d + 1, d + 1);
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) blockm.at(i, j) = t.entries.at(i, j);
        auto sol = solve_linear(blockm, low_rhs);
        if (!sol) throw DomainError("block inversion failed on an operator classified bijective");
        std::vector<Rational> q_low = *sol;
        q_low.resize(static_cast<size_t>(len), Rational(0));
        q = q + from_divided(q_low);
    }
    if (apply(a, q) != p) throw DomainError("inverse application failed verification");
    return q;
}

// Affine solution set of a*q = p: a particular solution (present iff p
// lies in the image) plus the kernel basis.
inline SolutionSet solve(const Operator& a, const XPoly& p, int window_hint = 0) {
    detail::require_fredholm(a);
    ClassificationFlags flags = classify_structural(a);
    SolutionSet sol;
    if (flags.bijective) {
        sol.particular = apply_inverse(a, p);
        return sol;
    }
    AnalysisReport rep = analyze(a, window_hint);
    sol.homogeneous_basis = rep.kernel_basis;
    int pp = a.pi_plus();
    int cols = std::max(rep.window_used, p.degree() - pp) + 1;
    TruncMatrix t = truncation(a, cols);
    if (p.degree() >= t.rows) throw DomainError("internal: solve window misses the right-hand side");
    std::vector<Rational> rhs = to_divided(p, t.rows);
    auto v = solve_linear(t.entries, rhs);
    if (v) {
        XPoly q = from_divided(*v);
        if (apply(a, q) != p) throw DomainError("solver residual check failed");
        sol.particular = q;
    }
    return sol;
}

namespace detail {

// 1 + F unit whose block on K[x]_{<=size-1} sends x^[j] to the j-th of
// the given divided-coordinate columns, completed greedily by standard
// basis vectors; identity beyond the block.
inline std::pair<Operator, Operator> block_conjugator(const std::vector<std::vector<Rational>>& first_cols, int size) {
    QMatrix b(size, size);
    int placed = 0;
    for (const auto& col : first_cols) {
        for (int i = 0; i < size; ++i) b.at(i, placed) = i < static_cast<int>(col.size()) ? col[static_cast<size_t>(i)] : Rational(0);
        ++placed;
    }
    for (int cand = 0; cand < size && placed < size; ++cand) {
        b.at(cand, placed) = 1;
        QMatrix probe(size, placed + 1);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j <= placed; ++j) probe.at(i, j) = b.at(i, j);
        if (rank(probe) == placed + 1) {
            ++placed;
        } else {
            b.at(cand, placed) = 0;
        }
    }
    auto binv = inverse(b);
    if (placed < size || !binv) throw DomainError("conjugator block is singular");
    QMatrix id = QMatrix::identity(size);
    QMatrix bm(size, size), bim(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) {
            bm.at(i, j) = b.at(i, j) - id.at(i, j);
            bim.at(i, j) = binv->at(i, j) - id.at(i, j);
        }
    Operator s = Operator::one() + Operator::from_fpart(FPart::from_block(bm));
    Operator s_inv = Operator::one() + Operator::from_fpart(FPart::from_block(bim));
    return {s, s_inv};
}

inline bool spans_match(const std::vector<XPoly>& a, const std::vector<XPoly>& b) {
    int dim = 1;
    for (const auto& q : a) dim = std::max(dim, q.degree() + 1);
    for (const auto& q : b) dim = std::max(dim, q.degree() + 1);
    std::vector<std::vector<Rational>> va, vb;
    for (const auto& q : a) va.push_back(to_divided(q, dim));
    for (const auto& q : b) vb.push_back(to_divided(q, dim));
    return spans_equal(va, vb, dim);
}

}  // namespace detail

// c = D^n + f (n = dim coker) with c*a surjective and ker(c*a) = ker(a);
// f = 0 whenever the cokernel representatives are exactly 1..x^{n-1},
// otherwise a (1+F)* conjugate s D^n s^{-1} built over the finite block.
inline Operator left_regularizer(const Operator& a) {
    detail::require_fredholm(a);
    AnalysisReport rep = analyze(a);
    int n = static_cast<int>(rep.cokernel_basis.size());
    Operator c;
    if (n == 0) {
        c = Operator::one();
    } else {
        std::vector<int> rows;
        for (const auto& q : rep.cokernel_basis) rows.push_back(q.degree());
        bool plain = true;
        for (int j = 0; j < n; ++j)
            if (rows[static_cast<size_t>(j)] != j) plain = false;
        if (plain) {
            c = Operator::d().pow(n);
        } else {
            int size = std::max(rows.back() + 1, n);
            std::vector<std::vector<Rational>> cols;
            for (int t : rows) {
                std::vector<Rational> v(static_cast<size_t>(size), Rational(0));
                v[static_cast<size_t>(t)] = 1;
                cols.push_back(std::move(v));
            }
            auto [s, s_inv] = detail::block_conjugator(cols, size);
            c = s * Operator::d().pow(n) * s_inv;
        }
    }
    AnalysisReport check = analyze(c * a);
    if (!check.surjective || !detail::spans_match(check.kernel_basis, rep.kernel_basis))
        throw DomainError("left regularizer failed verification");
    return c;
}

// c = I^m + g (m = dim ker) with a*c injective and im(a*c) = im(a).
inline Operator right_regularizer(const Operator& a) {
    detail::require_fredholm(a);
    AnalysisReport rep = analyze(a);
    int m = static_cast<int>(rep.kernel_basis.size());
    Operator c;
    if (m == 0) {
        c = Operator::one();
    } else {
        bool plain = true;
        for (int j = 0; j < m; ++j)
            if (rep.kernel_basis[static_cast<size_t>(j)].degree() != j) plain = false;
        if (plain) {
            c = Operator::integral().pow(m);
        } else {
            int size = m;
            for (const auto& q : rep.kernel_basis) size = std::max(size, q.degree() + 1);
            std::vector<std::vector<Rational>> cols;
            for (const auto& q : rep.kernel_basis) cols.push_back(to_divided(q, size));
            auto [s, s_inv] = detail::block_conjugator(cols, size);
            c = s * Operator::integral().pow(m) * s_inv;
        }
    }
    AnalysisReport check = analyze(a * c);
    bool image_matches = check.cokernel_basis.size() == rep.cokernel_basis.size() &&
                         detail::spans_match(check.cokernel_basis, rep.cokernel_basis);
    if (!check.injective || !image_matches) throw DomainError("right regularizer failed verification");
    return c;
}

// Idempotent f in F with im(f on K[x]) = ker(a on K[x]): the projection
// onto the kernel along a greedy monomial complement of the spanning block.
inline Operator kernel_idempotent(const Operator& a) {
    detail::require_fredholm(a);
    AnalysisReport rep = analyze(a);
    int r = static_cast<int>(rep.kernel_basis.size());
    if (r == 0) return Operator::zero();
    int size = r;
    for (const auto& q : rep.kernel_basis) size = std::max(size, q.degree() + 1);
    std::vector<std::vector<Rational>> cols;
    for (const auto& q : rep.kernel_basis) cols.push_back(to_divided(q, size));
    QMatrix basis(size, size);
    {
        auto [s, s_inv] = detail::block_conjugator(cols, size);
        QMatrix proj(size, size);
        for (int i = 0; i < r; ++i) proj.at(i, i) = 1;
        QMatrix smat = s.fpart().block(size), simat = s_inv.fpart().block(size);
        for (int i = 0; i < size; ++i) {
            smat.at(i, i) += 1;
            simat.at(i, i) += 1;
        }
        basis = smat * proj * simat;
    }
    Operator f = Operator::from_fpart(FPart::from_block(basis));
    if (f * f != f) throw DomainError("kernel idempotent is not idempotent");
    std::vector<XPoly> image;
    for (int s = 0; s < size + 1; ++s) {
        std::vector<Rational> mono(static_cast<size_t>(s) + 1, Rational(0));
        mono.back() = 1;
        XPoly im = apply(f, from_divided(mono));
        if (!im.is_zero()) image.push_back(im);
    }
    if (!detail::spans_match(image, rep.kernel_basis)) throw DomainError("kernel idempotent has wrong image");
    return f;
}

}  // namespace intdiff

#endif
