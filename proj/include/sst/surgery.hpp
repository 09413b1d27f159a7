#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/lattice.hpp"
#include "sst/model.hpp"
#include "sst/series.hpp"

namespace sst {

namespace detail {

/// Rebuild raw SW values from a twisted series under the given lift.
inline void untwist_into(FourManifoldModel& M, const SWSeries& twisted) {
    M.basic_classes.clear();
    for (const auto& [x, c] : twisted.terms())
        M.basic_classes[x] = Integer(sign_factor(M.lattice, M.lift, x)) * c;
}

/// Index of the basis direction carried by T, which must be +-(basis vector)
/// with an all-zero gram row. Surgery multipliers live on such directions.
inline std::size_t null_basis_direction(const IntersectionLattice& L, const CohClass& T,
                                        const char* op, int& orientation) {
    L.require_rank(T);
    std::size_t idx = L.rank();
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (T[i] == 0) continue;
        if (idx != L.rank() || std::abs(T[i]) != 1)
            throw InputError(std::string(op) +
                             ": lattice identification failure, torus class " +
                             class_to_string(T) + " is not a basis direction");
        idx = i;
        orientation = T[i] > 0 ? +1 : -1;
    }
    if (idx == L.rank())
        throw InputError(std::string(op) + ": torus class is zero");
    if (!L.is_null_direction(idx))
        throw InputError(std::string(op) +
                         ": lattice identification failure, torus direction pairs "
                         "nontrivially inside the working lattice");
    return idx;
}

inline void require_null(const FourManifoldModel& M, const CohClass& T, const char* op) {
    if (M.lattice.self_pairing(T) != 0)
        throw InputError(std::string(op) + ": torus class " + class_to_string(T) +
                         " has nonzero self-intersection " +
                         M.lattice.self_pairing(T).str());
}

}  // namespace detail

/// Minimal elliptic fibration without multiple fibers: working lattice
/// span{f} with f^2 = 0, lift the canonical class (chi_h + 2g - 2) f, and
/// series (2 sinh(z f))^{chi_h + 2g - 2}. Betti data uses b1 = 2g and the
/// elliptic signature sigma = -8 chi_h.
inline FourManifoldModel elliptic_surface(long long chi_h, long long genus = 0) {
    if (chi_h < 1 || genus < 0 || chi_h + 2 * genus - 2 < 0)
        throw InputError("elliptic_surface: exponent chi_h + 2g - 2 is negative");
    const long long d = chi_h + 2 * genus - 2;

    FourManifoldModel M;
    M.name = genus == 0 ? "E(" + std::to_string(chi_h) + ")"
                        : "E(" + std::to_string(chi_h) + ";g=" + std::to_string(genus) + ")";
    M.b1 = 2 * genus;
    M.b2plus = 2 * chi_h - 1 + 2 * genus;
    M.b2minus = 10 * chi_h - 1 + 2 * genus;
    M.lattice = IntersectionLattice({{0}});
    M.lift.upsilon = {d};
    Integer binom = 1;
    for (long long i = 0; i <= d; ++i) {
        // twisted coefficient of e^{(d-2i) z f} in (e^{zf} - e^{-zf})^d;
        // the f-direction is null, so raw SW equals the twisted coefficient.
        M.basic_classes[{d - 2 * i}] = (i % 2 == 0 ? binom : -binom);
        binom = binom * (d - i) / (i + 1);
    }
    M.provenance = "elliptic fibration, no multiple fibers; series (2 sinh(zf))^" +
                   std::to_string(d);
    return M;
}

/// Blowup: lattice gains an exceptional direction E with E^2 = -1, the lift
/// becomes v + E, and the twisted series is multiplied by -2 sinh(zE).
inline FourManifoldModel blowup(const FourManifoldModel& M) {
    const std::size_t r = M.lattice.rank();
    std::vector<std::vector<long long>> gram(r + 1, std::vector<long long>(r + 1, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) gram[i][j] = M.lattice.gram(i, j);
    gram[r][r] = -1;

    FourManifoldModel R;
    R.name = M.name + "#CP2bar";
    R.b1 = M.b1;
    R.b2plus = M.b2plus;
    R.b2minus = M.b2minus + 1;
    R.lattice = IntersectionLattice(gram);
    R.lift.upsilon = M.lift.upsilon;
    R.lift.upsilon.push_back(1);
    R.provenance = M.provenance.empty() ? "blowup" : M.provenance + "; blowup";

    SWSeries old_twisted = twisted_series(M);
    SWSeries twisted(R.lattice);
    for (const auto& [x, c] : old_twisted.terms()) {
        CohClass lo = x, hi = x;
        lo.push_back(-1);
        hi.push_back(+1);
        twisted.add_term(lo, c);   // e^{-zE} part of -2 sinh(zE)
        twisted.add_term(hi, -c);  // -e^{+zE}
    }
    detail::untwist_into(R, twisted);
    return R;
}

/// Fiber sum along square-zero tori T1 in M1 and T2 in M2. The working
/// lattice of the result is the orthogonal sum with the two torus directions
/// identified; chi and sigma add, b1 is caller-supplied. The twisted series
/// is +4 (sinh zT)^2 times the product (the global sign is fixed to +).
inline FourManifoldModel fiber_sum(const FourManifoldModel& M1, const CohClass& T1,
                                   const FourManifoldModel& M2, const CohClass& T2,
                                   long long b1_result = 0) {
    detail::require_null(M1, T1, "fiber_sum");
    detail::require_null(M2, T2, "fiber_sum");
    int o1 = +1, o2 = +1;
    const std::size_t a = detail::null_basis_direction(M1.lattice, T1, "fiber_sum", o1);
    const std::size_t b = detail::null_basis_direction(M2.lattice, T2, "fiber_sum", o2);

    const std::size_t r1 = M1.lattice.rank(), r2 = M2.lattice.rank();
    const std::size_t rank = r1 + r2 - 1;
    // Result basis: [T, M1 basis without a, M2 basis without b].
    std::vector<std::vector<long long>> gram(rank, std::vector<long long>(rank, 0));
    std::vector<std::size_t> map1(r1), map2(r2);
    {
        std::size_t pos = 1;
        for (std::size_t i = 0; i < r1; ++i) map1[i] = (i == a) ? 0 : pos++;
        for (std::size_t i = 0; i < r2; ++i) map2[i] = (i == b) ? 0 : pos++;
    }
    for (std::size_t i = 0; i < r1; ++i)
        for (std::size_t j = 0; j < r1; ++j)
            if (i != a && j != a) gram[map1[i]][map1[j]] = M1.lattice.gram(i, j);
    for (std::size_t i = 0; i < r2; ++i)
        for (std::size_t j = 0; j < r2; ++j)
            if (i != b && j != b) gram[map2[i]][map2[j]] = M2.lattice.gram(i, j);

    auto embed1 = [&](const CohClass& x) {
        CohClass y(rank, 0);
        for (std::size_t i = 0; i < r1; ++i) y[map1[i]] += (i == a ? o1 * x[i] : x[i]);
        return y;
    };
    auto embed2 = [&](const CohClass& x) {
        CohClass y(rank, 0);
        for (std::size_t i = 0; i < r2; ++i) y[map2[i]] += (i == b ? o2 * x[i] : x[i]);
        return y;
    };

    const long long chi = M1.euler() + M2.euler();
    const long long sigma = M1.signature() + M2.signature();
    const long long twice_b2plus = chi - 2 + 2 * b1_result + sigma;
    if (twice_b2plus % 2 != 0)
        throw InputError("fiber_sum: resulting Betti data is not integral");
    FourManifoldModel R;
    R.name = M1.name + "#_T" + M2.name;
    R.b1 = b1_result;
    R.b2plus = twice_b2plus / 2;
    R.b2minus = (chi - 2 + 2 * b1_result - sigma) / 2;
    if (R.b2plus < 0 || R.b2minus < 0)
        throw InputError("fiber_sum: negative b2 in the result");
    R.lattice = IntersectionLattice(gram);
    R.lift.upsilon = added(embed1(M1.lift.upsilon), embed2(M2.lift.upsilon));
    R.provenance = "fiber sum of [" + M1.name + "] and [" + M2.name +
                   "] along c-embedded tori; global sign fixed to +4 (sinh zT)^2";

    SWSeries s1 = twisted_series(M1), s2 = twisted_series(M2);
    SWSeries prod(R.lattice);
    for (const auto& [x, cx] : s1.terms())
        for (const auto& [y, cy] : s2.terms())
            prod.add_term(added(embed1(x), embed2(y)), cx * cy);

    SWSeries mult(R.lattice);  // 4 sinh^2(zT) = e^{2zT} - 2 + e^{-2zT}
    CohClass t2(rank, 0);
    t2[0] = 2;
    mult.add_term(t2, 1);
    mult.add_term(CohClass(rank, 0), -2);
    mult.add_term(negated(t2), 1);

    detail::untwist_into(R, multiply(mult, prod));
    return R;
}

/// Knot surgery along a square-zero torus: the twisted series is multiplied
/// by the Alexander polynomial at t = e^{2zT}. Coefficients run a_{-d}..a_d,
/// must be symmetric and sum to +-1. External-formula operation: the
/// multiplier is the Fintushel-Stern product formula, not rederived here.
inline FourManifoldModel knot_surgery(const FourManifoldModel& M, const CohClass& T,
                                      const std::vector<long long>& alexander) {
    detail::require_null(M, T, "knot_surgery");
    int o = +1;
    (void)detail::null_basis_direction(M.lattice, T, "knot_surgery", o);
    if (alexander.empty() || alexander.size() % 2 == 0)
        throw InputError("knot_surgery: coefficient list must have odd length a_{-d}..a_d");
    const long long d = static_cast<long long>(alexander.size() / 2);
    long long at_one = 0;
    for (std::size_t i = 0; i < alexander.size(); ++i) {
        if (alexander[i] != alexander[alexander.size() - 1 - i])
            throw InputError("knot_surgery: Alexander coefficients are not symmetric");
        at_one += alexander[i];
    }
    if (at_one != 1 && at_one != -1)
        throw InputError("knot_surgery: |Delta(1)| = " + std::to_string(std::abs(at_one)) +
                         " != 1");

    FourManifoldModel R = M;
    R.name = M.name + "_K";
    R.provenance = (M.provenance.empty() ? std::string() : M.provenance + "; ") +
                   "knot surgery (external-formula), lift kept unchanged";

    SWSeries mult(M.lattice);
    for (long long i = -d; i <= d; ++i) {
        const long long ai = alexander[static_cast<std::size_t>(i + d)];
        if (ai == 0) continue;
        CohClass x(M.lattice.rank(), 0);
        for (std::size_t j = 0; j < T.size(); ++j) x[j] = 2 * i * T[j];
        mult.add_term(x, ai);
    }
    detail::untwist_into(R, multiply(mult, twisted_series(M)));
    return R;
}

/// Generalized log transform of multiplicity p along a square-zero torus:
/// the lattice is refined so T = p T_p, and the twisted series is multiplied
/// by sinh(p z T_p)/sinh(z T_p). Betti data, chi_h and c1^2 are unchanged.
/// External-formula operation, with the lift rewritten in the refined basis.
inline FourManifoldModel log_transform(const FourManifoldModel& M, const CohClass& T,
                                       long long p) {
    if (p < 1) throw InputError("log_transform: multiplicity p must be >= 1");
    detail::require_null(M, T, "log_transform");
    int o = +1;
    const std::size_t a = detail::null_basis_direction(M.lattice, T, "log_transform", o);

    FourManifoldModel R = M;
    R.name = M.name + "_logt" + std::to_string(p);
    R.provenance = (M.provenance.empty() ? std::string() : M.provenance + "; ") +
                   "log transform p=" + std::to_string(p) +
                   " (external-formula), lift rewritten in the refined basis";
    if (p == 1) return R;

    // Refined basis replaces the torus direction by T_p with T = p T_p; the
    // direction is null, so the gram matrix is unchanged and coordinates
    // along it scale by p (with T's orientation).
    auto refine = [&](const CohClass& x) {
        CohClass y = x;
        y[a] = o * p * x[a];
        return y;
    };
    R.lift.upsilon = refine(M.lift.upsilon);

    SWSeries old_twisted = twisted_series(M);
    SWSeries embedded(R.lattice);
    for (const auto& [x, c] : old_twisted.terms()) embedded.add_term(refine(x), c);

    SWSeries mult(R.lattice);  // sum_{i=0}^{p-1} e^{(p-1-2i) z T_p}
    for (long long i = 0; i < p; ++i) {
        CohClass x(M.lattice.rank(), 0);
        x[a] = p - 1 - 2 * i;
        mult.add_term(x, 1);
    }
    detail::untwist_into(R, multiply(mult, embedded));
    return R;
}

}  // namespace sst
