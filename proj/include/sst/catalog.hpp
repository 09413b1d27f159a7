#pragma once

#include <regex>
#include <string>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/model.hpp"
#include "sst/surgery.hpp"

namespace sst {

/// Rational-blowdown exotic manifold Y(n), n >= 4: one basic-class pair with
/// SW value +-1 and c1^2 = chi_h - 3. The working lattice is spanned by the
/// basic class itself. The SW value is external catalog data.
inline FourManifoldModel catalog_Y(long long n) {
    if (n < 4) throw InputError("Y(n) requires n >= 4");
    FourManifoldModel M;
    M.name = "Y(" + std::to_string(n) + ")";
    M.b1 = 0;
    M.b2plus = 2 * n - 1;
    M.b2minus = 9 * n + 2;  // c1^2 = n - 3 with chi_h = n
    M.lattice = IntersectionLattice({{n - 3}});
    M.lift.upsilon = {1};
    M.basic_classes[{1}] = 1;
    M.basic_classes[{-1}] = (n % 2 == 0) ? 1 : -1;
    M.provenance = "rational blowdown of E(" + std::to_string(n) +
                   ") along C_(n-2) (external-provenance SW data, one basic-class pair)";
    return M;
}

/// Simple-type model with the single class 0 and SW = 1 on Betti data with
/// chi_h = n, c1^2 = 0: fails the sum rules at order 0, hence not SST.
inline FourManifoldModel catalog_synthetic_non_sst(long long n) {
    if (n < 4 || n % 2 != 0)
        throw InputError("synthetic-nonSST(n) requires even n >= 4 (odd n breaks the "
                         "involution sign relation for the single zero class)");
    FourManifoldModel M;
    M.name = "synthetic-nonSST(" + std::to_string(n) + ")";
    M.b1 = 0;
    M.b2plus = 2 * n - 1;
    M.b2minus = 10 * n - 1;
    M.lattice = IntersectionLattice({{0}});
    M.lift.upsilon = {0};
    M.basic_classes[{0}] = 1;
    M.provenance = "synthetic counterexample: single basic class 0, chi_h = " +
                   std::to_string(n) + ", required vanishing order " + std::to_string(n - 3);
    return M;
}

/// Looks up a model by catalog name:
///   K3, E(n) for n >= 2, E(n)+kbl (k blowups), Y(n) for n >= 4,
///   synthetic-nonSST(n) for even n >= 4.
inline FourManifoldModel catalog(const std::string& name) {
    static const std::regex en_re(R"(^E\((\d+)\)$)");
    static const std::regex enbl_re(R"(^E\((\d+)\)\+(\d+)bl$)");
    static const std::regex y_re(R"(^Y\((\d+)\)$)");
    static const std::regex syn_re(R"(^synthetic-nonSST\((\d+)\)$)");

    std::smatch m;
    if (name == "K3") {
        FourManifoldModel M = elliptic_surface(2, 0);
        M.name = "K3";
        return M;
    }
    if (std::regex_match(name, m, en_re)) {
        const long long n = std::stoll(m[1]);
        if (n < 2) throw InputError("E(n) requires n >= 2 (b2+ > 1)");
        return elliptic_surface(n, 0);
    }
    if (std::regex_match(name, m, enbl_re)) {
        const long long n = std::stoll(m[1]);
        const long long k = std::stoll(m[2]);
        if (n < 2) throw InputError("E(n) requires n >= 2 (b2+ > 1)");
        if (k < 1 || k > 64) throw InputError("blowup count out of range 1..64");
        FourManifoldModel M = elliptic_surface(n, 0);
        for (long long i = 0; i < k; ++i) M = blowup(M);
        M.name = name;
        return M;
    }
    if (std::regex_match(name, m, y_re)) return catalog_Y(std::stoll(m[1]));
    if (std::regex_match(name, m, syn_re)) return catalog_synthetic_non_sst(std::stoll(m[1]));
    throw InputError("unknown catalog name '" + name +
                     "' (known: K3, E(n), E(n)+kbl, Y(n), synthetic-nonSST(n))");
}

/// Concrete entries enumerated by `catalog list` and the default corpus.
inline std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    names.push_back("K3");
    for (int n = 2; n <= 12; ++n) names.push_back("E(" + std::to_string(n) + ")");
    names.push_back("E(2)+1bl");
    names.push_back("E(3)+2bl");
    for (int n = 4; n <= 10; ++n) names.push_back("Y(" + std::to_string(n) + ")");
    names.push_back("synthetic-nonSST(8)");
    return names;
}

}  // namespace sst
