#ifndef INTDIFF_B1_HPP
#define INTDIFF_B1_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "intdiff/operator.hpp"
#include "intdiff/poly.hpp"

namespace intdiff {

// Element of the quotient B_1 = K[H][D, D^{-1}; tau], tau(H) = H+1,
// stored as sum_k D^k beta_k with the coefficient on the RIGHT of D^k
// (so negative degrees read D^{-m} beta_{-m}, the normal-form shape).
// Canonical: no zero coefficients; equality is coefficient-wise.
struct B1Element {
    std::map<int, HPoly> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    HPoly coeff(int k) const {
        auto it = coeffs.find(k);
        return it == coeffs.end() ? HPoly() : it->second;
    }
    void add(int k, const HPoly& p) {
        if (p.is_zero()) return;
        auto it = coeffs.find(k);
        if (it == coeffs.end()) {
            coeffs.emplace(k, p);
        } else {
            it->second = it->second + p;
            if (it->second.is_zero()) coeffs.erase(it);
        }
    }
    friend bool operator==(const B1Element& a, const B1Element& b) { return a.coeffs == b.coeffs; }
    friend bool operator!=(const B1Element& a, const B1Element& b) { return !(a == b); }

    static B1Element scalar(const HPoly& p) {
        B1Element r;
        r.add(0, p);
        return r;
    }
    static B1Element dpow(int k) {
        B1Element r;
        r.add(k, HPoly(Rational(1)));
        return r;
    }
};

// The canonical projection I1 -> I1/F = B_1 (D -> D, I -> D^{-1},
// H -> H): drop the finite part and move each left coefficient to the
// right, b(H) D^j = D^j b(H-j).
inline B1Element project(const Operator& a) {
    B1Element r;
    for (const auto& [g, b] : a.graded()) r.add(-g, poly_shift(b, g));
    return r;
}

// Skew product: (D^i b)(D^j c) = D^{i+j} b(H-j) c.
inline B1Element b1_mul(const B1Element& u, const B1Element& v) {
    B1Element r;
    for (const auto& [i, b] : u.coeffs)
        for (const auto& [j, c] : v.coeffs) r.add(i + j, poly_shift(b, -j) * c);
    return r;
}

inline B1Element b1_add(const B1Element& u, const B1Element& v) {
    B1Element r = u;
    for (const auto& [k, p] : v.coeffs) r.add(k, p);
    return r;
}

// deg in D^{-1}: the index formula reads ind(a) = -deg_{D^{-1}}(a+F).
inline int b1_deg_dinv(const B1Element& u) {
    if (u.is_zero()) throw DomainError("degree of the zero element");
    return -u.coeffs.begin()->first;
}

// ----- Kronecker-style irreducibility over Q --------------------------------

namespace detail {

// Integer polynomial (content removed) proportional to p.
inline std::vector<Integer> primitive_integer_coeffs(const HPoly& p) {
    Integer den_lcm = 1;
    for (int i = 0; i <= p.degree(); ++i)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), p.coeff(i).get_den().get_mpz_t());
    std::vector<Integer> c(static_cast<size_t>(p.degree()) + 1);
    Integer content = 0;
    for (int i = 0; i <= p.degree(); ++i) {
        c[static_cast<size_t>(i)] = Rational(p.coeff(i) * den_lcm).get_num();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c[static_cast<size_t>(i)].get_mpz_t());
    }
    for (auto& v : c) v /= content;
    return c;
}

inline std::vector<Integer> signed_divisors(const Integer& n) {
    std::vector<Integer> out;
    for (const Integer& d : divisors(n)) {
        out.push_back(d);
        out.push_back(-d);
    }
    return out;
}

}  // namespace detail

// Exact irreducibility test over Q by Kronecker's method: a factor of
// degree d is determined by its values at d+1 integer points, which must
// divide the values of p there; all divisor tuples are interpolated and
// tried. Fine for the small degrees this module meets; guarded by a
// tuple budget so the search is always finite.
inline bool is_irreducible_q(const HPoly& p) {
    if (p.degree() <= 0) return false;
    if (p.degree() == 1) return true;
    std::vector<Integer> pc = detail::primitive_integer_coeffs(p);
    HPoly prim;
    {
        std::vector<Rational> rc(pc.size());
        for (size_t i = 0; i < pc.size(); ++i) rc[i] = Rational(pc[i]);
        prim = HPoly(std::move(rc));
    }
    long budget = 2000000;
    for (int d = 1; d <= p.degree() / 2; ++d) {
        std::vector<long> points;
        std::vector<std::vector<Integer>> choices;
        for (long t = 0; static_cast<int>(points.size()) < d + 1; ++t) {
            long pt = (t % 2 == 0) ? t / 2 : -(t / 2 + 1);
            Rational v = prim.eval(Rational(pt));
            if (v == 0) return false;  // integer root, degree >= 2
            points.push_back(pt);
            choices.push_back(detail::signed_divisors(v.get_num()));
        }
        std::vector<size_t> idx(static_cast<size_t>(d) + 1, 0);
        while (true) {
            if (--budget < 0) throw DomainError("irreducibility search budget exceeded");
            // Lagrange interpolation through (points[i], value choices[idx])
            HPoly cand;
            for (int i = 0; i <= d; ++i) {
                HPoly li(Rational(1));
                Rational denom = 1;
                for (int j = 0; j <= d; ++j) {
                    if (i == j) continue;
                    li = li * (hpoly_var() - HPoly(Rational(points[static_cast<size_t>(j)])));
                    denom *= Rational(points[static_cast<size_t>(i)] - points[static_cast<size_t>(j)]);
                }
                cand = cand + (Rational(choices[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]]) / denom) * li;
            }
            if (cand.degree() >= 1 && cand.degree() < p.degree() && cand.divides(prim)) return false;
            int carry = d;
            while (carry >= 0) {
                if (++idx[static_cast<size_t>(carry)] < choices[static_cast<size_t>(carry)].size()) break;
                idx[static_cast<size_t>(carry)] = 0;
                --carry;
            }
            if (carry < 0) break;
        }
    }
    return true;
}

// ----- orbit comparison of maximal ideals -----------------------------------

// For irreducible f, g: the unique integer i with g(H) = f(H+i), when
// the ideals (f), (g) lie in one tau-orbit; nullopt otherwise.
inline std::optional<long> orbit_shift(const HPoly& f, const HPoly& g) {
    if (f.is_zero() || g.is_zero()) throw DomainError("orbit shift of the zero polynomial");
    if (!is_irreducible_q(f) || !is_irreducible_q(g)) throw DomainError("orbit shift requires irreducible polynomials");
    HPoly fm = f.monic(), gm = g.monic();
    if (fm.degree() != gm.degree()) return std::nullopt;
    long bound = root_bound(fm) + root_bound(gm);
    for (long i = -bound; i <= bound; ++i)
        if (poly_shift(fm, i) == gm) return i;
    return std::nullopt;
}

// alpha < beta in the orbit order on Max K[H]: every Z-comparable pair
// of irreducible factors (f | alpha, g | beta, g = f(H+i)) has i > 0;
// vacuously true with no comparable pairs. Comparable shifts are root
// differences, so |shift| is bounded by the two Cauchy bounds and a
// finite gcd scan decides the order without any factoring.
inline bool poly_less(const HPoly& alpha, const HPoly& beta) {
    if (alpha.is_zero() || beta.is_zero()) throw DomainError("orbit order undefined for the zero polynomial");
    if (alpha.is_constant() || beta.is_constant()) return true;
    long bound = root_bound(alpha) + root_bound(beta);
    for (long k = 0; k <= bound; ++k)
        if (poly_gcd(alpha, poly_shift(beta, k)).degree() >= 1) return false;
    return true;
}

// ----- normal elements -------------------------------------------------------

namespace detail {

struct NormalShape {
    int m = 0;  // b = D^{-m} beta_{-m} + ... + beta_0
};

inline NormalShape normal_shape(const B1Element& b) {
    if (b.is_zero() || b.coeffs.rbegin()->first != 0 || b.coeffs.begin()->first >= 0)
        throw DomainError("not of normal-candidate shape: need D^-m beta_-m + ... + beta_0 with m > 0");
    return {-b.coeffs.begin()->first};
}

}  // namespace detail

inline bool is_normal(const B1Element& b) {
    auto shape = detail::normal_shape(b);
    return poly_less(b.coeff(0), b.coeff(-shape.m));
}

struct Normalization {
    HPoly alpha;
    HPoly beta;
    B1Element normalized;  // beta * b * alpha^{-1}
};

// beta b alpha^{-1}, computed inside B_1 by exact per-coefficient
// division: writing beta*b = sum_k D^{-k} gamma_k, each gamma_k must be
// exactly divisible by alpha. Candidates alpha = prod_{-s<=i<=0}
// tau^i(beta_0), beta = prod_{-m-s<=j<=-1} tau^j(beta_0) are tried for
// s = 0, 1, 2, ... and certified (divisibility, is_normal, and the
// clearing identity beta*b = b'*alpha) rather than trusted.
inline Normalization normalize(const B1Element& b) {
    auto shape = detail::normal_shape(b);
    if (is_normal(b)) return {HPoly(Rational(1)), HPoly(Rational(1)), b};
    const HPoly beta0 = b.coeff(0);
    const HPoly beta_m = b.coeff(-shape.m);
    // the two order conditions hold for every s past the largest
    // Z-comparable root gap, and root magnitudes sit under the Cauchy bounds
    long cap = 2 * root_bound(beta0) + root_bound(beta_m) + 2;
    for (long s = 0; s <= cap; ++s) {
        HPoly shifted = poly_shift(beta0, -s);
        if (!poly_less(shifted, beta_m) || !poly_less(shifted, beta0)) continue;
        HPoly alpha(Rational(1)), beta(Rational(1));
        for (long i = -s; i <= 0; ++i) alpha = alpha * poly_shift(beta0, i);
        for (long j = -shape.m - s; j <= -1; ++j) beta = beta * poly_shift(beta0, j);
        B1Element prod = b1_mul(B1Element::scalar(beta), b);
        B1Element result;
        bool divides_all = true;
        for (const auto& [k, gamma] : prod.coeffs) {
            auto [q, r] = gamma.divmod(alpha);
            if (!r.is_zero()) {
                divides_all = false;
                break;
            }
            result.add(k, q);
        }
        if (!divides_all) continue;
        if (!is_normal(result)) continue;
        if (b1_mul(result, B1Element::scalar(alpha)) != prod) throw DomainError("normalization clearing identity failed");
        return {alpha, beta, result};
    }
    throw DomainError("normalization search exhausted: no certified (alpha, beta) up to the shift cap");
}

}  // namespace intdiff

#endif
