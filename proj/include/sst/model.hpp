#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/lattice.hpp"
#include "sst/series.hpp"

namespace sst {

/// Central record: Betti data, working intersection lattice, characteristic
/// lift and the raw Seiberg-Witten values on basic classes. Raw values plus
/// the lift are canonical storage; twisted coefficients are derived.
struct FourManifoldModel {
    std::string name;
    long long b1 = 0;
    long long b2plus = 0;
    long long b2minus = 0;
    IntersectionLattice lattice;
    CharacteristicLift lift;
    std::map<CohClass, Integer> basic_classes;  // raw SW values, all nonzero
    std::string provenance;

    long long euler() const { return 2 - 2 * b1 + b2plus + b2minus; }
    long long signature() const { return b2plus - b2minus; }
    long long c1_squared() const { return 2 * euler() + 3 * signature(); }
    /// chi + sigma = 4 chi_h; always even, chi_h itself may be half-integral.
    long long chi_h_times4() const { return euler() + signature(); }
    bool chi_h_integral() const { return chi_h_times4() % 4 == 0; }
    long long chi_h() const {
        if (!chi_h_integral())
            throw ConsistencyError("chi_h is not an integer for model '" + name + "'");
        return chi_h_times4() / 4;
    }
    double chi_h_value() const { return static_cast<double>(chi_h_times4()) / 4.0; }
};

struct ValidationIssue {
    std::string check;
    std::string message;
    bool warning = false;  // strict-mode findings downgrade to warnings in lenient mode
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const {
        for (const auto& i : issues)
            if (!i.warning) return false;
        return true;
    }

    std::string summary() const {
        std::ostringstream os;
        for (const auto& i : issues)
            os << (i.warning ? "warning" : "error") << " [" << i.check << "] " << i.message
               << "\n";
        return os.str();
    }
};

/// Model-level consistency checks: characteristic lift, sign-factor parity,
/// involution closure of the basic-class set, Noether condition, and (strict
/// mode) the simple-type condition x^2 = c1^2.
inline ValidationReport validate_model(const FourManifoldModel& M, bool strict = false) {
    ValidationReport rep;
    auto issue = [&](const std::string& check, const std::string& msg, bool warn = false) {
        rep.issues.push_back({check, msg, warn});
    };

    if (M.b2plus <= 1)
        issue("betti", "b2+ = " + std::to_string(M.b2plus) + " violates the standing hypothesis b2+ > 1");

    if (M.lift.upsilon.size() != M.lattice.rank()) {
        issue("lift", "lift has wrong coordinate length");
        return rep;
    }
    if (!is_characteristic(M.lattice, M.lift.upsilon))
        issue("lift", "lift is not characteristic on the working lattice");

    bool all_even = true;
    for (const auto& [x, sw] : M.basic_classes) {
        if (x.size() != M.lattice.rank()) {
            issue("classes", "class " + class_to_string(x) + " has wrong coordinate length");
            return rep;
        }
        if (sw == 0) issue("classes", "class " + class_to_string(x) + " stores SW = 0");
        Integer e = M.lattice.self_pairing(M.lift.upsilon) + M.lattice.pairing(M.lift.upsilon, x);
        if (is_odd(e)) {
            all_even = false;
            issue("parity", "(v^2+v.x) odd for class " + class_to_string(x));
        }
    }

    const bool noether_ok = M.basic_classes.empty() || M.chi_h_integral();
    if (!noether_ok)
        issue("noether", "basic classes present but chi_h = " +
                             std::to_string(M.chi_h_times4()) + "/4 is not an integer");

    // Involution closure with the Wu-formula sign relation.
    if (noether_ok && all_even && M.chi_h_integral()) {
        const int eps = (M.chi_h() + M.signature()) % 2 == 0 ? +1 : -1;
        for (const auto& [x, sw] : M.basic_classes) {
            CohClass mx = negated(x);
            auto it = M.basic_classes.find(mx);
            if (it == M.basic_classes.end()) {
                issue("involution", "class " + class_to_string(x) + " has no partner -x");
                continue;
            }
            Integer expected = Integer(eps * sign_factor(M.lattice, M.lift, x) *
                                       sign_factor(M.lattice, M.lift, mx)) *
                               sw;
            if (it->second != expected)
                issue("involution", "SW(" + class_to_string(mx) + ") = " + it->second.str() +
                                        " violates the sign relation (expected " +
                                        expected.str() + ")");
        }
    }

    for (const auto& [x, sw] : M.basic_classes) {
        if (M.lattice.self_pairing(x) != M.c1_squared())
            issue("simple-type",
                  "x^2 = " + M.lattice.self_pairing(x).str() + " != c1^2 = " +
                      std::to_string(M.c1_squared()) + " for class " + class_to_string(x),
                  /*warning=*/!strict);
    }

    return rep;
}

inline void require_valid(const FourManifoldModel& M, bool strict = false) {
    ValidationReport rep = validate_model(M, strict);
    if (!rep.ok())
        throw ConsistencyError("model '" + M.name + "' failed validation:\n" + rep.summary());
}

/// The twisted series with coefficients sign_factor(v,x) * SW(x).
inline SWSeries twisted_series(const FourManifoldModel& M) {
    require_valid(M, /*strict=*/false);
    SWSeries s(M.lattice);
    for (const auto& [x, sw] : M.basic_classes)
        s.add_term(x, Integer(sign_factor(M.lattice, M.lift, x)) * sw);
    return s;
}

/// Default moment cutoff: slightly past the sum-rule threshold so the actual
/// order is visible beyond it.
inline long long default_kmax(const FourManifoldModel& M) {
    long long required = M.chi_h_integral() ? M.chi_h() - M.c1_squared() - 3 : 0;
    long long kmax = required - 1;  // sum rules run to required - 1
    if (kmax < 0) kmax = 0;
    return kmax + 2;
}

struct SstVerdict {
    bool is_sst = false;
    long long required_order = 0;
    VanishingOrder actual_order;
    /// actual - required when the actual order is finite and exact;
    /// absent for the zero series (infinite margin).
    std::optional<long long> margin;
    bool probabilistic = false;
};

/// Superconformal-simple-type verdict: the twisted series must vanish at
/// z = 0 to order >= chi_h - c1^2 - 3 (vacuous when that threshold is <= 0,
/// and for the zero series).
inline SstVerdict sst_check(const FourManifoldModel& M) {
    require_valid(M, /*strict=*/false);
    SstVerdict v;
    SWSeries s = twisted_series(M);
    if (s.empty()) {
        v.required_order = M.chi_h_integral() ? M.chi_h() - M.c1_squared() - 3 : 0;
        v.actual_order = VanishingOrder::infinite();
        v.is_sst = true;
        return v;
    }
    v.required_order = M.chi_h() - M.c1_squared() - 3;
    OrderResult ord = order_of(s);
    v.actual_order = ord.order;
    v.probabilistic = ord.probabilistic;
    v.is_sst = v.required_order <= 0 || v.actual_order.at_least_bound(v.required_order);
    if (v.actual_order.is_exact()) v.margin = v.actual_order.value - v.required_order;
    return v;
}

struct InvolutionParityReport {
    bool ok = true;
    std::vector<std::string> violations;
    int relation_sign = +1;  // (-1)^{chi_h + sigma}
};

/// Verifies the twisted-coefficient involution c_{-x} = (-1)^{chi_h+sigma} c_x
/// and the forced vanishing of moments of the wrong parity. Runs on any
/// model; inconsistencies are reported, not thrown.
inline InvolutionParityReport involution_and_parity_check(const FourManifoldModel& M) {
    InvolutionParityReport rep;
    if (!M.basic_classes.empty() && !M.chi_h_integral()) {
        rep.ok = false;
        rep.violations.push_back("chi_h is not an integer; parity undefined");
        return rep;
    }
    if (M.basic_classes.empty()) return rep;

    const int eps = (M.chi_h() + M.signature()) % 2 == 0 ? +1 : -1;
    rep.relation_sign = eps;
    SWSeries s(M.lattice);
    for (const auto& [x, sw] : M.basic_classes) {
        try {
            s.add_term(x, Integer(sign_factor(M.lattice, M.lift, x)) * sw);
        } catch (const ConsistencyError& e) {
            rep.ok = false;
            rep.violations.push_back(e.what());
        }
    }
    for (const auto& [x, c] : s.terms()) {
        Integer cmx = s.coeff(negated(x));
        if (cmx != Integer(eps) * c) {
            rep.ok = false;
            rep.violations.push_back("c_{-x} != " + std::string(eps > 0 ? "+" : "-") +
                                     "c_x at x = " + class_to_string(x));
        }
    }

    long long kmax = default_kmax(M);
    MomentReport mr = moments_and_order(s, kmax);
    if (!mr.probabilistic) {
        for (long long k = 0; k <= kmax; ++k) {
            const bool must_vanish = (eps == +1) ? (k % 2 == 1) : (k % 2 == 0);
            if (must_vanish && !mr.tensors[static_cast<std::size_t>(k)].is_zero()) {
                rep.ok = false;
                rep.violations.push_back("moment M_" + std::to_string(k) +
                                         " nonzero despite parity");
            }
        }
    }
    return rep;
}

/// Change of lift v -> v + 2h multiplies the twisted series by (-1)^{h^2}.
/// Returns that sign after verifying the rebuilt series term by term.
inline int relift_sign(const FourManifoldModel& M, const CohClass& h) {
    M.lattice.require_rank(h);
    CohClass upsilon2 = M.lift.upsilon;
    for (std::size_t i = 0; i < h.size(); ++i) upsilon2[i] += 2 * h[i];
    if (!is_characteristic(M.lattice, upsilon2))
        throw ConsistencyError("v + 2h is not characteristic");

    const int sign = parity_sign(M.lattice.self_pairing(h));
    FourManifoldModel M2 = M;
    M2.lift.upsilon = upsilon2;
    SWSeries s1 = twisted_series(M);
    SWSeries s2 = twisted_series(M2);
    SWSeries expected = sign > 0 ? s1 : s1.negated();
    if (!(s2 == expected))
        throw ConsistencyError(
            "relift sign law violated: series for v+2h is not (-1)^{h^2} times the original "
            "(the working sublattice does not see h.x = h.v mod 2 for all basic classes)");
    return sign;
}

}  // namespace sst
