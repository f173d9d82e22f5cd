#ifndef INTDIFF_OPERATOR_HPP
#define INTDIFF_OPERATOR_HPP

#include <algorithm>
#include <map>
#include <utility>

#include "intdiff/fpart.hpp"
#include "intdiff/poly.hpp"
#include "intdiff/rational.hpp"

namespace intdiff {

// Canonical form of a polynomial integro-differential operator:
//
//     a  =  sum_k b_k(H) v_k  +  finite part,      v_k = I^k (k>0), 1 (k=0), D^|k| (k<0)
//
// with H-polynomial coefficients written on the LEFT of v_k and the
// finite part expanded over the matrix units e_ij. This sum is unique,
// so equality of operators is coefficient-wise equality. No zero
// coefficients are stored. The generator x is represented as (H-1)I.
class Operator {
  public:
    Operator() = default;

    static Operator zero() { return Operator(); }
    static Operator one() { return scalar(Rational(1)); }
    static Operator scalar(const Rational& c) {
        Operator a;
        a.add_graded(0, HPoly(c));
        return a;
    }
    static Operator d() {
        Operator a;
        a.add_graded(-1, HPoly(Rational(1)));
        return a;
    }
    static Operator integral() {
        Operator a;
        a.add_graded(1, HPoly(Rational(1)));
        return a;
    }
    static Operator h() {
        Operator a;
        a.add_graded(0, hpoly_var());
        return a;
    }
    // x = I*H in canonical (left-coefficient) form.
    static Operator x() {
        Operator a;
        a.add_graded(1, poly_shift(hpoly_var(), -1));
        return a;
    }
    static Operator e(int i, int j, const Rational& c = Rational(1)) {
        Operator a;
        a.fpart_.add(i, j, c);
        return a;
    }
    static Operator hpoly(const HPoly& p) {
        Operator a;
        a.add_graded(0, p);
        return a;
    }
    // b(H) v_k, coefficient on the left.
    static Operator graded_term(int k, const HPoly& b) {
        Operator a;
        a.add_graded(k, b);
        return a;
    }
    static Operator from_fpart(const FPart& f) {
        Operator a;
        a.fpart_ = f;
        return a;
    }

    const std::map<int, HPoly>& graded() const { return graded_; }
    const FPart& fpart() const { return fpart_; }
    HPoly graded_coeff(int k) const {
        auto it = graded_.find(k);
        return it == graded_.end() ? HPoly() : it->second;
    }

    bool is_zero() const { return graded_.empty() && fpart_.empty(); }
    bool is_compact() const { return graded_.empty(); }
    bool in_k_plus_f() const { return graded_.empty() || (graded_.size() == 1 && graded_.begin()->first == 0 && graded_.begin()->second.is_constant()); }
    bool in_kh_plus_f() const { return graded_.empty() || (graded_.size() == 1 && graded_.begin()->first == 0); }
    // The scalar part (only meaningful together with in_k_plus_f()).
    Rational scalar_part() const {
        auto it = graded_.find(0);
        return it == graded_.end() ? Rational(0) : it->second.coeff(0);
    }

    int deg_f() const { return fpart_.deg(); }

    // (pi_-, pi_+): minimal and maximal graded degree present.
    std::pair<int, int> support_bounds() const {
        if (graded_.empty()) throw DomainError("no graded part: support bounds require an element outside F");
        return {graded_.begin()->first, graded_.rbegin()->first};
    }
    int pi_plus() const { return support_bounds().second; }

    Rational trace_f() const {
        if (!is_compact()) throw DomainError("trace defined only on F");
        return fpart_.trace();
    }

    friend Operator operator+(const Operator& a, const Operator& b) {
        Operator r = a;
        for (const auto& [k, p] : b.graded_) r.add_graded(k, p);
        r.fpart_ = r.fpart_ + b.fpart_;
        return r;
    }
    Operator operator-() const {
        Operator r;
        for (const auto& [k, p] : graded_) r.add_graded(k, -p);
        r.fpart_ = -fpart_;
        return r;
    }
    friend Operator operator-(const Operator& a, const Operator& b) { return a + (-b); }
    friend bool operator==(const Operator& a, const Operator& b) { return a.graded_ == b.graded_ && a.fpart_ == b.fpart_; }
    friend bool operator!=(const Operator& a, const Operator& b) { return !(a == b); }

    friend Operator operator*(const Rational& s, const Operator& a) { return scalar(s) * a; }

    // Bilinear expansion over (graded | e) term pairs, each pair reduced
    // by the relation table:
    //   v_i b(H) = b(H-i) v_i
    //   v_i v_j  = v_{i+j}                 (same sign, or D-powers times I-powers)
    //   I^i D^j  = v_{i-j} - sum_{k=1..min} e_{i-k, j-k}
    //   b(H) e_st = b(s+1) e_st,  e_st b(H) = b(t+1) e_st
    //   v_i e_st = e_{s+i, t},  e_st v_j = e_{s, t-j}   (negative indices annihilate)
    friend Operator operator*(const Operator& a, const Operator& b) {
        Operator r;
        for (const auto& [i, alpha] : a.graded_) {
            for (const auto& [j, beta] : b.graded_) {
                HPoly coeff = alpha * poly_shift(beta, -i);
                if (i > 0 && j < 0) {
                    int m = std::min(i, -j);
                    r.add_graded(i + j, coeff);
                    for (int k = 1; k <= m; ++k) {
                        int s = i - k, t = -j - k;
                        r.fpart_.add(s, t, -coeff.eval(Rational(s + 1)));
                    }
                } else {
                    r.add_graded(i + j, coeff);
                }
            }
            for (const auto& [st, c] : b.fpart_.entries()) {
                int s = st.first + i;
                if (s < 0) continue;
                r.fpart_.add(s, st.second, c * alpha.eval(Rational(s + 1)));
            }
        }
        for (const auto& [st, c] : a.fpart_.entries()) {
            for (const auto& [j, beta] : b.graded_) {
                int t = st.second - j;
                if (t < 0) continue;
                r.fpart_.add(st.first, t, c * beta.eval(Rational(st.second + 1)));
            }
        }
        r.fpart_ = r.fpart_ + a.fpart_ * b.fpart_;
        return r;
    }

    Operator pow(int e) const {
        Operator r = one();
        for (int i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    // The involution: D* = I, I* = D, H* = H, e_ij* = e_ji.
    // On a graded term, (b(H) v_k)* = v_{-k} b(H) = b(H+k) v_{-k}.
    Operator star() const {
        Operator r;
        for (const auto& [k, p] : graded_) r.add_graded(-k, poly_shift(p, k));
        r.fpart_ = fpart_.star();
        return r;
    }

    // Homogeneous component of Z-degree k (e_ij sits in degree i-j).
    Operator graded_component(int k) const {
        Operator r;
        auto it = graded_.find(k);
        if (it != graded_.end()) r.add_graded(k, it->second);
        for (const auto& [ij, c] : fpart_.entries())
            if (ij.first - ij.second == k) r.fpart_.add(ij.first, ij.second, c);
        return r;
    }

  private:
    void add_graded(int k, const HPoly& p) {
        if (p.is_zero()) return;
        auto it = graded_.find(k);
        if (it == graded_.end()) {
            graded_.emplace(k, p);
        } else {
            it->second = it->second + p;
            if (it->second.is_zero()) graded_.erase(it);
        }
    }

    std::map<int, HPoly> graded_;
    FPart fpart_;
};

inline Operator star(const Operator& a) { return a.star(); }
inline bool is_compact(const Operator& a) { return a.is_compact(); }
inline int deg_f(const Operator& a) { return a.deg_f(); }
inline Rational trace_f(const Operator& a) { return a.trace_f(); }
inline std::pair<int, int> support_bounds(const Operator& a) { return a.support_bounds(); }
inline Operator graded_component(const Operator& a, int k) { return a.graded_component(k); }

}  // namespace intdiff

#endif
