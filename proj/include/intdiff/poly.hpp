#ifndef INTDIFF_POLY_HPP
#define INTDIFF_POLY_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "intdiff/rational.hpp"

namespace intdiff {

// Dense univariate polynomial over Q. The tag keeps polynomials in H
// (operator coefficients) and polynomials in x (module elements) as
// distinct types; they never mix.
//
// Invariants: the trailing stored coefficient is nonzero; the zero
// polynomial stores no coefficients and reports degree() == -1, the
// "minus infinity" marker shared with deg_F.
template <class Tag>
class Poly {
  public:
    Poly() = default;
    explicit Poly(const Rational& c) {
        if (c != 0) coeffs_.push_back(c);
    }
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly variable() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_constant() const { return coeffs_.size() <= 1; }

    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
        return coeffs_[static_cast<size_t>(k)];
    }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

    Rational eval(const Rational& v) const {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * v + *it;
        return acc;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const {
        std::vector<Rational> c = coeffs_;
        for (auto& v : c) v = -v;
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const Rational& s, const Poly& p) { return Poly(Rational(s)) * p; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<Rational> c(coeffs_.size() - 1);
        for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = Rational(static_cast<long>(i)) * coeffs_[i];
        return Poly(std::move(c));
    }

    // Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        Poly r = *this;
        std::vector<Rational> q(std::max<int>(degree() - d.degree() + 1, 0), Rational(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int shift = r.degree() - d.degree();
            Rational f = r.leading() / d.leading();
            q[static_cast<size_t>(shift)] = f;
            std::vector<Rational> sub(static_cast<size_t>(shift), Rational(0));
            sub.insert(sub.end(), d.coeffs_.begin(), d.coeffs_.end());
            for (auto& v : sub) v *= f;
            r = r - Poly(std::move(sub));
        }
        return {Poly(std::move(q)), r};
    }

    bool divides(const Poly& dividend) const { return dividend.divmod(*this).second.is_zero(); }

    Poly monic() const {
        if (is_zero()) return *this;
        std::vector<Rational> c = coeffs_;
        Rational l = leading();
        for (auto& v : c) v /= l;
        return Poly(std::move(c));
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

struct HTag {};
struct XTag {};
using HPoly = Poly<HTag>;
using XPoly = Poly<XTag>;

inline HPoly hpoly_var() { return HPoly::variable(); }
inline XPoly xpoly_var() { return XPoly::variable(); }

inline Rational poly_eval(const HPoly& p, const Rational& v) { return p.eval(v); }

// p(H+k), the k-th power of the shift automorphism tau(H) = H+1.
inline HPoly poly_shift(const HPoly& p, long k) {
    HPoly acc;
    HPoly h_plus_k(std::vector<Rational>{Rational(k), Rational(1)});
    for (int i = p.degree(); i >= 0; --i) acc = acc * h_plus_k + HPoly(p.coeff(i));
    return acc;
}

template <class Tag>
Poly<Tag> poly_gcd(Poly<Tag> a, Poly<Tag> b) {
    while (!b.is_zero()) {
        Poly<Tag> r = a.divmod(b).second;
        a = b;
        b = r.monic();
    }
    return a.monic();
}

// 1 + max |a_i / a_d|; every complex root has absolute value below this.
template <class Tag>
Rational cauchy_bound(const Poly<Tag>& p) {
    if (p.is_zero()) throw DomainError("Cauchy bound of the zero polynomial");
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i) / p.leading())));
    return m + 1;
}

namespace detail {

// Smallest integer r >= 0 with r^k >= n (n >= 0).
inline Integer ceil_kth_root(const Integer& n, unsigned long k) {
    if (n <= 0) return 0;
    Integer r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    Integer check;
    mpz_pow_ui(check.get_mpz_t(), r.get_mpz_t(), k);
    if (check < n) r += 1;
    return r;
}

}  // namespace detail

// Integer B >= 1 with every complex root inside |z| <= B: the smaller of
// the Cauchy bound and the Fujiwara bound 2 max_k |a_{d-k}/a_d|^{1/k}.
// Fujiwara stays tight on products of shifted factors, where Cauchy
// overshoots by orders of magnitude.
template <class Tag>
long root_bound(const Poly<Tag>& p) {
    if (p.is_zero()) throw DomainError("root bound of the zero polynomial");
    long cauchy = rat_ceil_long(cauchy_bound(p));
    Integer fuji = 0;
    for (int k = 1; k <= p.degree(); ++k) {
        Rational t = abs(p.coeff(p.degree() - k) / p.leading());
        Integer tc;
        mpz_cdiv_q(tc.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
        fuji = std::max(fuji, detail::ceil_kth_root(tc, static_cast<unsigned long>(k)));
    }
    fuji = 2 * fuji;
    long bound = cauchy;
    if (fuji.fits_slong_p()) bound = std::min(bound, fuji.get_si());
    return std::max(bound, 1L);
}

namespace detail {
// Divisors of |n| (n != 0), unsigned, unsorted.
inline std::vector<Integer> divisors(const Integer& n) {
    Integer a = abs(n);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            small.push_back(d);
            if (d * d != a) large.push_back(a / d);
        }
    }
    small.insert(small.end(), large.begin(), large.end());
    return small;
}
}  // namespace detail

// Exactly the integers n with p(n) = 0, sorted ascending. Clears
// denominators, strips the power of H, and filters divisors of the
// trailing coefficient by exact evaluation.
template <class Tag>
std::vector<long> integer_roots(const Poly<Tag>& p) {
    if (p.is_zero()) throw DomainError("infinite root set: integer roots of the zero polynomial");
    Integer den_lcm = 1;
    for (int i = 0; i <= p.degree(); ++i)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), p.coeff(i).get_den().get_mpz_t());
    int val = 0;
    while (p.coeff(val) == 0) ++val;
    std::vector<long> roots;
    if (val > 0) roots.push_back(0);
    Integer trailing = Rational(p.coeff(val) * den_lcm).get_num();
    for (const Integer& d : detail::divisors(trailing)) {
        for (int sign : {1, -1}) {
            if (p.eval(Rational(sign * d)) != 0) continue;
            if (!d.fits_slong_p()) throw DomainError("integer root exceeds machine range");
            roots.push_back(sign * d.get_si());
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace intdiff

#endif
