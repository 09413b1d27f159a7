#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sst/bigint.hpp"

namespace sst {

/// A cohomology class in the coordinates of the working lattice basis.
using CohClass = std::vector<long long>;

inline CohClass negated(const CohClass& x) {
    CohClass y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
    return y;
}

inline CohClass added(const CohClass& x, const CohClass& y) {
    CohClass z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return z;
}

inline bool is_zero_class(const CohClass& x) {
    for (long long c : x)
        if (c != 0) return false;
    return true;
}

inline std::string class_to_string(const CohClass& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(x[i]);
    }
    s += ")";
    return s;
}

/// Working sublattice of H^2(X;Z)/torsion with its intersection pairing.
/// The stored lattice need not be unimodular; it must contain all basic
/// classes, the chosen lift and any surgery classes isometrically.
class IntersectionLattice {
  public:
    IntersectionLattice() = default;

    IntersectionLattice(std::initializer_list<std::initializer_list<long long>> rows) {
        std::vector<std::vector<long long>> g;
        g.reserve(rows.size());
        for (const auto& r : rows) g.emplace_back(r);
        *this = IntersectionLattice(std::move(g));
    }

    explicit IntersectionLattice(std::vector<std::vector<long long>> gram)
        : gram_(std::move(gram)) {
        const std::size_t n = gram_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (gram_[i].size() != n)
                throw InputError("gram matrix is not square: row " + std::to_string(i) +
                                 " has " + std::to_string(gram_[i].size()) + " entries, expected " +
                                 std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (gram_[i][j] != gram_[j][i])
                    throw InputError("gram matrix is not symmetric at (" + std::to_string(i) +
                                     "," + std::to_string(j) + "): " + std::to_string(gram_[i][j]) +
                                     " vs " + std::to_string(gram_[j][i]));
    }

    std::size_t rank() const { return gram_.size(); }
    long long gram(std::size_t i, std::size_t j) const { return gram_[i][j]; }
    const std::vector<std::vector<long long>>& gram_rows() const { return gram_; }

    /// Intersection pairing x.y = x^T G y, exact.
    Integer pairing(const CohClass& x, const CohClass& y) const {
        require_rank(x);
        require_rank(y);
        Integer acc = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            Integer row = 0;
            for (std::size_t j = 0; j < rank(); ++j)
                if (y[j] != 0) row += Integer(gram_[i][j]) * y[j];
            acc += Integer(x[i]) * row;
        }
        return acc;
    }

    Integer self_pairing(const CohClass& x) const { return pairing(x, x); }

    /// True when the given basis direction pairs to zero with everything.
    bool is_null_direction(std::size_t i) const {
        for (std::size_t j = 0; j < rank(); ++j)
            if (gram_[i][j] != 0) return false;
        return true;
    }

    bool operator==(const IntersectionLattice& o) const { return gram_ == o.gram_; }
    bool operator!=(const IntersectionLattice& o) const { return !(*this == o); }

    void require_rank(const CohClass& x) const {
        if (x.size() != rank())
            throw InputError("class has " + std::to_string(x.size()) +
                             " coordinates, lattice rank is " + std::to_string(rank()));
    }

  private:
    std::vector<std::vector<long long>> gram_;
};

/// Integral lift of w2 on the working lattice (Wu condition against the
/// basis vectors).
struct CharacteristicLift {
    CohClass upsilon;
};

inline bool is_characteristic(const IntersectionLattice& L, const CohClass& upsilon) {
    L.require_rank(upsilon);
    for (std::size_t i = 0; i < L.rank(); ++i) {
        CohClass e(L.rank(), 0);
        e[i] = 1;
        Integer d = L.pairing(upsilon, e) - L.gram(i, i);
        if (is_odd(d)) return false;
    }
    return true;
}

/// The twisting factor (-1)^{(v^2 + v.x)/2} of the series. Throws when the
/// exponent numerator is odd (class not compatible with the lift).
inline int sign_factor(const IntersectionLattice& L, const CharacteristicLift& lift,
                       const CohClass& x) {
    Integer e = L.self_pairing(lift.upsilon) + L.pairing(lift.upsilon, x);
    if (is_odd(e))
        throw ConsistencyError("class " + class_to_string(x) +
                               " not compatible with lift: (v^2+v.x) is odd");
    return parity_sign(e / 2);
}

}  // namespace sst
