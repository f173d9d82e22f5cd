#ifndef INTDIFF_FPART_HPP
#define INTDIFF_FPART_HPP

#include <map>
#include <utility>

#include "intdiff/matrix.hpp"
#include "intdiff/rational.hpp"

namespace intdiff {

// Finite matrix over the units e_ij (divided-power basis x^[s] = x^s/s!).
// No zero coefficients are ever stored.
class FPart {
  public:
    using Key = std::pair<int, int>;

    bool empty() const { return entries_.empty(); }
    const std::map<Key, Rational>& entries() const { return entries_; }

    Rational coeff(int i, int j) const {
        auto it = entries_.find({i, j});
        return it == entries_.end() ? Rational(0) : it->second;
    }

    void add(int i, int j, const Rational& c) {
        if (i < 0 || j < 0 || c == 0) return;  // out-of-range matrix units annihilate
        auto it = entries_.find({i, j});
        if (it == entries_.end()) {
            entries_.emplace(Key{i, j}, c);
        } else {
            it->second += c;
            if (it->second == 0) entries_.erase(it);
        }
    }

    // max(i, j) over stored entries, -1 when empty (same marker as deg of 0).
    int deg() const {
        int d = -1;
        for (const auto& [k, c] : entries_) d = std::max({d, k.first, k.second});
        return d;
    }

    Rational trace() const {
        Rational t = 0;
        for (const auto& [k, c] : entries_)
            if (k.first == k.second) t += c;
        return t;
    }

    FPart star() const {
        FPart r;
        for (const auto& [k, c] : entries_) r.add(k.second, k.first, c);
        return r;
    }

    friend FPart operator+(const FPart& a, const FPart& b) {
        FPart r = a;
        for (const auto& [k, c] : b.entries_) r.add(k.first, k.second, c);
        return r;
    }
    FPart operator-() const {
        FPart r;
        for (const auto& [k, c] : entries_) r.add(k.first, k.second, -c);
        return r;
    }
    friend bool operator==(const FPart& a, const FPart& b) { return a.entries_ == b.entries_; }

    // e_ij e_kl = delta_jk e_il
    friend FPart operator*(const FPart& a, const FPart& b) {
        FPart r;
        for (const auto& [ka, ca] : a.entries_)
            for (const auto& [kb, cb] : b.entries_)
                if (ka.second == kb.first) r.add(ka.first, kb.second, ca * cb);
        return r;
    }

    // The [0..n) x [0..n) block as a dense matrix (divided-basis coordinates).
    QMatrix block(int n) const {
        QMatrix m(n, n);
        for (const auto& [k, c] : entries_)
            if (k.first < n && k.second < n) m.at(k.first, k.second) = c;
        return m;
    }

    static FPart from_block(const QMatrix& m) {
        FPart f;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) f.add(i, j, m.at(i, j));
        return f;
    }

    // Coefficients over the monomial-basis units E_ij = (i!/j!) e_ij.
    std::map<Key, Rational> entries_in_E_basis() const {
        std::map<Key, Rational> r;
        for (const auto& [k, c] : entries_)
            r.emplace(k, c * factorial_ratio(static_cast<unsigned long>(k.second), static_cast<unsigned long>(k.first)));
        return r;
    }

  private:
    std::map<Key, Rational> entries_;
};

}  // namespace intdiff

#endif
