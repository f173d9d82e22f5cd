#ifndef INTDIFF_UNITS_HPP
#define INTDIFF_UNITS_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "intdiff/action.hpp"
#include "intdiff/operator.hpp"

namespace intdiff {

struct OneSidedWitness {
    enum class Kind { Left, Right };
    Kind kind = Kind::Left;
    int n = 0;
    Operator unit_factor;  // kind=Left: input = unit_factor * I^n;  kind=Right: input = D^n * unit_factor
    Operator inverse;      // verified one-sided inverse
};

struct RegularityFlags {
    bool left_regular = false;
    bool right_regular = false;
    bool regular = false;
};

namespace detail {

inline void require_k_plus_f(const Operator& a, const char* what) {
    if (!a.in_k_plus_f()) throw DomainError(what);
}

}  // namespace detail

// det(lambda + f) := 0 when lambda = 0, else lambda * det of the finite
// identity-plus-lambda^{-1} f block; basis-independent (e_ij and E_ij
// blocks are conjugate by the diagonal matrix of factorials).
inline Rational det_kf(const Operator& a) {
    detail::require_k_plus_f(a, "determinant defined only on K+F");
    Rational lambda = a.scalar_part();
    if (lambda == 0) return Rational(0);
    int d = a.deg_f();
    QMatrix block = a.fpart().block(d + 1);
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; j <= d; ++j) block.at(i, j) /= lambda;
        block.at(i, i) += 1;
    }
    return lambda * det(block);
}

// Same determinant computed over the monomial-basis units E_ij.
inline Rational det_kf_in_E_basis(const Operator& a) {
    detail::require_k_plus_f(a, "determinant defined only on K+F");
    Rational lambda = a.scalar_part();
    if (lambda == 0) return Rational(0);
    int d = a.deg_f();
    QMatrix block(d + 1, d + 1);
    for (const auto& [ij, c] : a.fpart().entries_in_E_basis()) block.at(ij.first, ij.second) = c / lambda;
    for (int i = 0; i <= d; ++i) block.at(i, i) += 1;
    return lambda * det(block);
}

inline bool is_unit(const Operator& a) { return a.in_k_plus_f() && det_kf(a) != 0; }

// Two-sided inverse of a unit, by finite block inversion inside K+F.
inline Operator unit_inverse(const Operator& u) {
    if (!u.in_k_plus_f()) throw DomainError("not a unit: element outside K+F");
    Rational dv = det_kf(u);
    if (dv == 0) throw DomainError("not a unit: det = " + rat_to_string(dv));
    Rational lambda = u.scalar_part();
    int d = u.deg_f();
    QMatrix block = u.fpart().block(d + 1);
    for (int i = 0; i <= d; ++i) block.at(i, i) += lambda;
    auto binv = inverse(block);
    if (!binv) throw DomainError("unit block inversion failed");
    Rational li = Rational(1) / lambda;
    for (int i = 0; i <= d; ++i) binv->at(i, i) -= li;
    Operator r = Operator::scalar(li) + Operator::from_fpart(FPart::from_block(*binv));
    if (u * r != Operator::one() || r * u != Operator::one()) throw DomainError("unit inverse failed verification");
    return r;
}

// Left-invertibility witness: a in L(I1) iff a = a' I^n with a' in K*+F
// and a injective on K[x]. The unit factor completes the (independent)
// columns n, n+1, ... of a' to a unit by greedy choice of standard basis
// vectors in columns 0..n-1; those columns are killed by I^n, so the
// factorization is preserved and the inverse D^n u^{-1} is exact.
inline std::optional<OneSidedWitness> left_inverse(const Operator& a) {
    if (a.graded().size() != 1) return std::nullopt;
    auto [n, lead] = *a.graded().begin();
    if (n < 0 || !lead.is_constant()) return std::nullopt;
    if (!classify_structural(a).injective) return std::nullopt;
    Rational lambda = lead.coeff(0);

    Operator a_prime = Operator::scalar(lambda);
    for (const auto& [ij, c] : a.fpart().entries()) a_prime = a_prime + Operator::e(ij.first, ij.second + n, c);

    Operator u = a_prime;
    if (n > 0) {
        int dp = a_prime.deg_f() + n + 1;
        QMatrix block = a_prime.fpart().block(dp + 1);
        for (int i = 0; i <= dp; ++i) block.at(i, i) += lambda;
        // columns 0..n-1 are free to change; re-pick them greedily
        for (int j = 0; j < n; ++j)
            for (int i = 0; i <= dp; ++i) block.at(i, j) = 0;
        int placed = dp + 1 - n;  // columns n..dp stay, independent since a is injective
        for (int j = 0; j < n; ++j) {
            for (int cand = 0; cand <= dp; ++cand) {
                block.at(cand, j) = 1;
                QMatrix probe(dp + 1, placed + j + 1);
                int col = 0;
                for (int jj = 0; jj <= j; ++jj, ++col)
                    for (int i = 0; i <= dp; ++i) probe.at(i, col) = block.at(i, jj);
                for (int jj = n; jj <= dp; ++jj, ++col)
                    for (int i = 0; i <= dp; ++i) probe.at(i, col) = block.at(i, jj);
                if (rank(probe) == placed + j + 1) break;
                block.at(cand, j) = 0;
            }
        }
        for (int i = 0; i <= dp; ++i) block.at(i, i) -= lambda;
        u = Operator::scalar(lambda) + Operator::from_fpart(FPart::from_block(block));
    }

    OneSidedWitness w;
    w.kind = OneSidedWitness::Kind::Left;
    w.n = n;
    w.unit_factor = u;
    w.inverse = Operator::d().pow(n) * unit_inverse(u);
    if (u * Operator::integral().pow(n) != a) throw DomainError("left inverse factorization failed");
    if (w.inverse * a != Operator::one()) throw DomainError("left inverse failed verification");
    return w;
}

// Star-dual of left_inverse: b in R(I1) iff b* in L(I1), witnesses map
// through the involution.
inline std::optional<OneSidedWitness> right_inverse(const Operator& b) {
    auto w = left_inverse(b.star());
    if (!w) return std::nullopt;
    OneSidedWitness r;
    r.kind = OneSidedWitness::Kind::Right;
    r.n = w->n;
    r.unit_factor = w->unit_factor.star();
    r.inverse = w->inverse.star();
    if (b * r.inverse != Operator::one()) throw DomainError("right inverse failed verification");
    return r;
}

// Deterministic sample of distinct left inverses (D^n + h) u^{-1} with h
// running over zero and then single entries e_ij, j < n. For n = 0 the
// set is the singleton {u^{-1}}.
inline std::vector<Operator> left_inverse_set_sample(const Operator& a, int k) {
    auto w = left_inverse(a);
    if (!w) throw DomainError("element admits no left inverse");
    std::vector<Operator> out;
    if (k <= 0) return out;
    Operator uinv = unit_inverse(w->unit_factor);
    Operator dn = Operator::d().pow(w->n);
    out.push_back(dn * uinv);
    if (w->n == 0) return out;  // unique inverse of a unit
    for (int i = 0; static_cast<int>(out.size()) < k; ++i)
        for (int j = 0; j < w->n && static_cast<int>(out.size()) < k; ++j)
            out.push_back((dn + Operator::e(i, j)) * uinv);
    for (const auto& v : out)
        if (v * a != Operator::one()) throw DomainError("left inverse sample failed verification");
    return out;
}

// kappa^n on K+F: the scalar part is fixed and the finite part shifts n
// steps down the diagonal, kappa^n(lambda + f) = lambda + I^n f D^n.
// Satisfies I^n u = kappa^n(u) I^n and det(kappa(u)) = det(u).
inline Operator kappa_shift(const Operator& u, int n) {
    detail::require_k_plus_f(u, "kappa defined only on K+F");
    Operator r = Operator::scalar(u.scalar_part());
    for (const auto& [ij, c] : u.fpart().entries()) r = r + Operator::e(ij.first + n, ij.second + n, c);
    return r;
}

// right_regular <=> a acts injectively on K[x]; left_regular <=> a* does
// (elements of F are two-sided zero divisors, all flags false).
inline RegularityFlags regularity(const Operator& a) {
    RegularityFlags f;
    if (a.is_compact()) return f;
    f.right_regular = classify_structural(a).injective;
    f.left_regular = classify_structural(a.star()).injective;
    f.regular = f.left_regular && f.right_regular;
    return f;
}

}  // namespace intdiff

#endif
