#ifndef INTDIFF_CENTRALIZER_HPP
#define INTDIFF_CENTRALIZER_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "intdiff/matrix.hpp"
#include "intdiff/operator.hpp"

namespace intdiff {

struct CentralizerDescription {
    enum class Kind { D1PlusPairs, PolyInD, PolyInI, PolyInX, Truncated };
    Kind kind = Kind::Truncated;
    // For D1PlusPairs: each (i, j) denotes K e_ij (+ the conjugate K e_ji),
    // on top of D_1 = K[H] + sum K e_ii.
    std::vector<std::pair<int, int>> pair_basis;
    std::vector<Operator> basis;  // for Truncated
};

inline bool commutes(const Operator& a, const Operator& b) { return a * b == b * a; }

// Cen(alpha(H)) = D_1 + sum K e_{s-1,t-1} + conjugates, over integer
// pairs s > t >= 1 with alpha(s) = alpha(t).  Pairs only exist below the
// Cauchy bound of alpha' (alpha is strictly monotone past every critical
// point), so t is enumerated up to that bound and matching s come from
// integer_roots(alpha(X) - alpha(t)).
inline CentralizerDescription centralizer_hpoly(const HPoly& alpha) {
    if (alpha.is_constant()) throw DomainError("centralizer is all of I1: scalar element");
    CentralizerDescription desc;
    desc.kind = CentralizerDescription::Kind::D1PlusPairs;
    long tmax = rat_ceil_long(cauchy_bound(alpha.derivative()) + 1);
    for (long t = 1; t <= tmax; ++t) {
        HPoly shifted = alpha - HPoly(alpha.eval(Rational(t)));
        for (long s : integer_roots(shifted))
            if (s > t) desc.pair_basis.emplace_back(static_cast<int>(s) - 1, static_cast<int>(t) - 1);
    }
    return desc;
}

// Exact basis of { f in F_{<=N} : [a, f] = 0 }: the commutator is linear
// in the e_st coordinates of f, so this is one rational nullspace.
inline std::vector<Operator> commutant_in_f(const Operator& a, int n) {
    int vars = (n + 1) * (n + 1);
    std::vector<Operator> commutators;
    std::map<std::pair<int, int>, int> row_of;
    for (int s = 0; s <= n; ++s)
        for (int t = 0; t <= n; ++t) {
            Operator est = Operator::e(s, t);
            Operator c = a * est - est * a;
            commutators.push_back(c);
            for (const auto& [ij, coeff] : c.fpart().entries())
                row_of.emplace(ij, static_cast<int>(row_of.size()));
        }
    QMatrix m(static_cast<int>(row_of.size()), vars);
    for (int s = 0; s <= n; ++s)
        for (int t = 0; t <= n; ++t) {
            int col = s * (n + 1) + t;
            for (const auto& [ij, coeff] : commutators[static_cast<size_t>(col)].fpart().entries())
                m.at(row_of.at(ij), col) = coeff;
        }
    std::vector<Operator> basis;
    for (const auto& v : span_basis(nullspace(m), vars)) {
        Operator f;
        for (int s = 0; s <= n; ++s)
            for (int t = 0; t <= n; ++t) f = f + Operator::e(s, t, v[static_cast<size_t>(s * (n + 1) + t)]);
        basis.push_back(f);
    }
    return basis;
}

// Closed-form centralizers: scalar multiples of D^i, I^i, x^i (i >= 1)
// and nonconstant alpha(H). Everything else gets no claim.
inline std::optional<CentralizerDescription> centralizer_closed_form(const Operator& a) {
    if (!a.fpart().empty() || a.graded().size() != 1) return std::nullopt;
    auto [k, b] = *a.graded().begin();
    CentralizerDescription desc;
    if (k == 0) {
        if (b.is_constant()) return std::nullopt;
        return centralizer_hpoly(b);
    }
    if (k < 0) {
        if (!b.is_constant()) return std::nullopt;
        desc.kind = CentralizerDescription::Kind::PolyInD;
        return desc;
    }
    if (b.is_constant()) {
        desc.kind = CentralizerDescription::Kind::PolyInI;
        return desc;
    }
    // x^k = (H-1)(H-2)...(H-k) I^k
    HPoly fall(Rational(1));
    for (int i = 1; i <= k; ++i) fall = fall * poly_shift(hpoly_var(), -i);
    auto [q, r] = b.divmod(fall);
    if (r.is_zero() && q.is_constant()) {
        desc.kind = CentralizerDescription::Kind::PolyInX;
        return desc;
    }
    return std::nullopt;
}

}  // namespace intdiff

#endif
