#pragma once

#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/model.hpp"

namespace sst {

struct NumericalInvariants {
    long long chi = 0;
    long long sigma = 0;
    long long c1sq = 0;
    long long chi_h_times4 = 0;  // chi + sigma
    bool chi_h_integral = false;
    double chi_h = 0.0;
};

/// chi = 2 - 2b1 + b2+ + b2-, sigma = b2+ - b2-, chi_h = (chi+sigma)/4,
/// c1^2 = 2chi + 3sigma, cross-checked against 4 - 4b1 + 5b2+ - b2-.
inline NumericalInvariants numerical_invariants(const FourManifoldModel& M) {
    NumericalInvariants inv;
    inv.chi = M.euler();
    inv.sigma = M.signature();
    inv.c1sq = 2 * inv.chi + 3 * inv.sigma;
    const long long c1sq_b = 4 - 4 * M.b1 + 5 * M.b2plus - M.b2minus;
    if (inv.c1sq != c1sq_b)
        throw ConsistencyError("c1^2 cross-check failed (internal arithmetic)");
    inv.chi_h_times4 = inv.chi + inv.sigma;
    inv.chi_h_integral = inv.chi_h_times4 % 4 == 0;
    inv.chi_h = static_cast<double>(inv.chi_h_times4) / 4.0;
    return inv;
}

struct GeographyRecord {
    std::string name;
    NumericalInvariants inv;
    long long B = 0;  // |basic classes / {x ~ -x}|, the zero class counted once
    long long required_order = 0;
    VanishingOrder actual_order;
    bool is_sst = false;
    bool bound_satisfied = false;      // B = 0 or B >= floor((chi_h - c1^2)/2)
    bool corollary_satisfied = false;  // c1^2 >= chi_h - 2B - 1
    bool probabilistic = false;
    bool valid = false;
    std::string error;
};

inline long long count_basic_class_pairs(const FourManifoldModel& M) {
    std::set<CohClass> reps;
    for (const auto& [x, sw] : M.basic_classes) {
        CohClass mx = negated(x);
        reps.insert(x < mx ? mx : x);
    }
    return static_cast<long long>(reps.size());
}

/// Basic-class count modulo the involution and the generalized Noether
/// inequality B >= [(chi_h - c1^2)/2] (vacuous at B = 0), together with the
/// corollary c1^2 >= chi_h - 2B - 1. Brackets are the mathematical floor.
inline GeographyRecord count_B_and_bound(const FourManifoldModel& M) {
    GeographyRecord rec;
    rec.name = M.name;
    try {
        rec.inv = numerical_invariants(M);
        rec.B = count_basic_class_pairs(M);
        // (chi_h - c1^2)/2 = (chi + sigma - 4 c1^2)/8, floored exactly.
        const long long floor_half_gap = floor_div(rec.inv.chi_h_times4 - 4 * rec.inv.c1sq, 8);
        rec.bound_satisfied = rec.B == 0 || rec.B >= floor_half_gap;
        // c1^2 >= chi_h - 2B - 1  <=>  4 c1^2 >= (chi+sigma) - 8B - 4.
        rec.corollary_satisfied =
            rec.B == 0 || 4 * rec.inv.c1sq >= rec.inv.chi_h_times4 - 8 * rec.B - 4;
        SstVerdict v = sst_check(M);
        rec.required_order = v.required_order;
        rec.actual_order = v.actual_order;
        rec.is_sst = v.is_sst;
        rec.probabilistic = v.probabilistic;
        rec.valid = true;
    } catch (const std::exception& e) {
        rec.valid = false;
        rec.error = e.what();
    }
    return rec;
}

struct GeographyReport {
    std::vector<GeographyRecord> records;

    /// True when any model fails validation, the SST check or the bound.
    bool any_violation() const {
        for (const auto& r : records)
            if (!r.valid || !r.is_sst || !r.bound_satisfied || !r.corollary_satisfied)
                return true;
        return false;
    }
};

inline GeographyReport geography_report(const std::vector<FourManifoldModel>& models) {
    GeographyReport rep;
    rep.records.reserve(models.size());
    for (const auto& M : models) rep.records.push_back(count_B_and_bound(M));
    return rep;
}

inline std::string format_chi_h(const NumericalInvariants& inv) {
    if (inv.chi_h_integral) return std::to_string(inv.chi_h_times4 / 4);
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << inv.chi_h;
    return os.str();
}

/// Scatter dataset: one row per model, fixed columns, header included.
inline void write_geography_csv(std::ostream& os, const GeographyReport& rep) {
    os << "name,chi_h,c1sq,B,order,sst,bound\n";
    for (const auto& r : rep.records) {
        if (!r.valid) {
            os << r.name << ",,,,,invalid,invalid\n";
            continue;
        }
        os << r.name << "," << format_chi_h(r.inv) << "," << r.inv.c1sq << "," << r.B << ","
           << r.actual_order.to_string() << "," << (r.is_sst ? "true" : "false") << ","
           << (r.bound_satisfied ? "true" : "false") << "\n";
    }
}

}  // namespace sst
