#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/model.hpp"
#include "sst/numeric.hpp"
#include "sst/sw_curve.hpp"

namespace sst {

struct ContourError : std::runtime_error {
    double theta;
    ContourError(const std::string& msg, double th)
        : std::runtime_error(msg + " at theta = " + std::to_string(th)), theta(th) {}
};

/// Partition-function input: the manifold model plus the degree-4 observable
/// coefficient p and the degree-2 direction S (complex coordinates in the
/// working lattice basis; pairings extend complex-bilinearly).
struct ZdwInput {
    FourManifoldModel model;
    std::complex<double> p{0.0, 0.0};
    std::vector<std::complex<double>> S;  // empty = zero direction
    std::complex<double> normalization_k{1.0, 0.0};
};

enum class BranchAssignment { Principal, Flipped };

namespace zdw_detail {

constexpr double kAbsFloor = 1e-300;

template <class C>
struct EvalData {
    long long chi_h = 0;
    long long c1sq = 0;
    long long varpi_exp = 0;  // 7 chi_h - c1^2
    bool odd_exp = false;
    bool any_Sx = false;
    C p, k, S2;
    std::vector<std::pair<C, C>> classes;  // (twisted coefficient, (S,x))

    static EvalData prepare(const ZdwInput& in) {
        require_valid(in.model, /*strict=*/false);
        EvalData ed;
        ed.chi_h = in.model.chi_h();
        ed.c1sq = in.model.c1_squared();
        ed.varpi_exp = 7 * ed.chi_h - ed.c1sq;
        ed.odd_exp = ((ed.varpi_exp % 2) + 2) % 2 == 1;
        ed.p = num::make<C>(in.p.real(), in.p.imag());
        ed.k = num::make<C>(in.normalization_k.real(), in.normalization_k.imag());

        const std::size_t rank = in.model.lattice.rank();
        std::vector<C> S(rank, num::make<C>(0.0));
        if (!in.S.empty()) {
            if (in.S.size() != rank)
                throw InputError("observable direction S has wrong coordinate length");
            for (std::size_t i = 0; i < rank; ++i)
                S[i] = num::make<C>(in.S[i].real(), in.S[i].imag());
        }
        ed.S2 = num::make<C>(0.0);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j)
                ed.S2 += S[i] * static_cast<double>(in.model.lattice.gram(i, j)) * S[j];

        for (const auto& [x, sw] : in.model.basic_classes) {
            const int sgn = sign_factor(in.model.lattice, in.model.lift, x);
            C tc = num::make<C>(to_double(sw) * sgn);
            C Sx = num::make<C>(0.0);
            for (std::size_t i = 0; i < rank; ++i)
                for (std::size_t j = 0; j < rank; ++j)
                    Sx += S[i] * static_cast<double>(in.model.lattice.gram(i, j)) *
                          static_cast<double>(x[j]);
            if (Sx != num::make<C>(0.0)) ed.any_Sx = true;
            ed.classes.emplace_back(tc, Sx);
        }
        return ed;
    }
};

template <class C>
struct TrackedFiber {
    FiberData<C> data;
    C varpi;  // continuously tracked square root of period_sq
};

/// Canonical order [plus, minus, spectator] of the three cusp-frame roots.
template <class C>
std::array<C, 3> canonical_roots(const C& z) {
    std::array<C, 3> s = solve_shifted_cubic(z);
    std::array<std::complex<double>, 3> u;
    for (std::size_t i = 0; i < 3; ++i)
        u[i] = num::to_std(num::make<C>(3.0) + z * 2.0 + s[i]);
    std::array<std::size_t, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(u[a] - 3.0) < std::abs(u[b] - 3.0);
    });
    const std::complex<double> zd = num::to_std(z);
    const std::complex<double> ref = std::pow(zd, 1.5) * std::sqrt(32.0 / 27.0);
    std::size_t plus = idx[0], minus = idx[1];
    const std::complex<double> sp = num::to_std(s[plus]), sm = num::to_std(s[minus]);
    if (std::abs(sm - ref) < std::abs(sp - ref)) std::swap(plus, minus);
    return {s[plus], s[minus], s[idx[2]]};
}

template <class C>
std::array<TrackedFiber<C>, 3> initial_fibers(const C& z, BranchAssignment branch) {
    using std::sqrt;
    std::array<C, 3> s = canonical_roots(z);
    std::array<TrackedFiber<C>, 3> out;
    for (std::size_t j = 0; j < 3; ++j) {
        out[j].data = fiber_eval(z, s[j]);
        out[j].varpi = sqrt(out[j].data.period_sq);
        if (branch == BranchAssignment::Flipped) out[j].varpi = -out[j].varpi;
    }
    return out;
}

template <class C>
void advance_fibers(std::array<TrackedFiber<C>, 3>& fib, const C& z, double theta) {
    using std::sqrt;
    std::array<C, 3> s = solve_shifted_cubic(z);
    std::array<std::complex<double>, 3> u_new, u_prev;
    for (std::size_t i = 0; i < 3; ++i) {
        u_new[i] = num::to_std(num::make<C>(3.0) + z * 2.0 + s[i]);
        u_prev[i] = num::to_std(fib[i].data.u);
    }

    static constexpr std::array<std::array<std::size_t, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    double best_cost = 1e300;
    std::array<std::size_t, 3> best = perms[0];
    for (const auto& pm : perms) {
        double cost = 0.0;
        for (std::size_t j = 0; j < 3; ++j) cost += std::abs(u_new[pm[j]] - u_prev[j]);
        if (cost < best_cost) {
            best_cost = cost;
            best = pm;
        }
    }

    double max_move = 0.0, min_sep = 1e300;
    for (std::size_t j = 0; j < 3; ++j) {
        max_move = std::max(max_move, std::abs(u_new[best[j]] - u_prev[j]));
        for (std::size_t i = j + 1; i < 3; ++i)
            min_sep = std::min(min_sep, std::abs(u_new[i] - u_new[j]));
    }
    if (max_move > 0.5 * min_sep + 1e-13)
        throw ContourError("root-tracking discontinuity (increase samples or shrink radius)",
                           theta);

    for (std::size_t j = 0; j < 3; ++j) {
        TrackedFiber<C>& f = fib[j];
        f.data = fiber_eval(z, s[best[j]]);
        C w = sqrt(f.data.period_sq);
        const double dplus = num::abs_double(w - f.varpi);
        const double dminus = num::abs_double(w + f.varpi);
        if (dminus < dplus) w = -w;
        if (std::min(dplus, dminus) > 0.8 * std::max(dplus, dminus))
            throw ContourError("period branch tracking ambiguous", theta);
        f.varpi = w;
    }
}

template <class C>
C fiber_value(const EvalData<C>& ed, const TrackedFiber<C>& f) {
    const C g2cubed = f.data.g2 * f.data.g2 * f.data.g2;
    C pref = num::pow_int(g2cubed / f.data.delta_prime, ed.chi_h);
    if (ed.odd_exp)
        pref *= num::pow_int(f.data.period_sq, (ed.varpi_exp - 1) / 2) * f.varpi;
    else
        pref *= num::pow_int(f.data.period_sq, ed.varpi_exp / 2);

    using std::exp;
    const C I = num::make<C>(0.0, 1.0);
    C base_arg = ed.p * f.data.u * 2.0 + ed.S2 * f.data.T;
    C inner = num::make<C>(0.0);
    for (const auto& [tc, Sx] : ed.classes) {
        C arg = base_arg;
        if (ed.any_Sx) arg -= I * Sx / (f.varpi * 2.0);
        inner += tc * exp(arg);
    }
    return pref * inner;
}

template <class C>
C total_value(const EvalData<C>& ed, const std::array<TrackedFiber<C>, 3>& fib) {
    C acc = num::make<C>(0.0);
    for (const auto& f : fib) acc += fiber_value(ed, f);
    return acc * ed.k;
}

template <class R>
R pi_value() {
    using std::atan;
    return atan(R(1)) * 4;
}

/// Tracked values over the doubled contour theta_z in [0, 4pi]; index t has
/// theta_z = 2 pi t / N, t = 0..2N inclusive.
template <class C>
std::vector<C> trace_contour(const EvalData<C>& ed, double radius, long long N,
                             BranchAssignment branch) {
    using R = num::real_of<C>;
    using std::cos;
    using std::sin;
    const R pi = pi_value<R>();
    std::vector<C> values;
    values.reserve(static_cast<std::size_t>(2 * N + 1));

    auto z_at = [&](long long t) {
        R theta = pi * 2 * R(t) / R(N);
        return C(R(radius) * cos(theta), R(radius) * sin(theta));
    };

    std::array<TrackedFiber<C>, 3> fib = initial_fibers(z_at(0), branch);
    values.push_back(total_value(ed, fib));
    for (long long t = 1; t <= 2 * N; ++t) {
        double theta = 2.0 * 3.141592653589793 * static_cast<double>(t) / static_cast<double>(N);
        advance_fibers(fib, z_at(t), theta);
        values.push_back(total_value(ed, fib));
    }
    return values;
}

}  // namespace zdw_detail

struct ZdwFiberContribution {
    std::complex<double> u;
    std::complex<double> value;
    RootTag tag = RootTag::Spectator;
};

struct ZdwValue {
    std::complex<double> value{0.0, 0.0};
    std::array<ZdwFiberContribution, 3> fibers;
};

/// Pointwise three-fiber sum at m (principal period branch). Typed scalar
/// version: instantiate with MpComplex for the extended-precision oracle.
template <class C>
ZdwValue zdw_eval_typed(const ZdwInput& in, std::complex<double> m) {
    using namespace zdw_detail;
    EvalData<C> ed = EvalData<C>::prepare(in);
    const C z = num::make<C>(m.real() - 1.5, m.imag());
    if (z == num::make<C>(0.0))
        throw InputError("zdw_eval: m = 3/2 is the superconformal point (singular input)");

    std::array<TrackedFiber<C>, 3> fib = initial_fibers(z, BranchAssignment::Principal);
    double min_sep = 1e300;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
            min_sep = std::min(min_sep,
                               std::abs(num::to_std(fib[i].data.u) - num::to_std(fib[j].data.u)));
    if (min_sep == 0.0) throw InputError("zdw_eval: degenerate discriminant roots");

    ZdwValue out;
    static constexpr std::array<RootTag, 3> tags = {RootTag::Plus, RootTag::Minus,
                                                    RootTag::Spectator};
    C total = num::make<C>(0.0);
    for (std::size_t j = 0; j < 3; ++j) {
        C v = fiber_value(ed, fib[j]) * ed.k;
        total += v;
        out.fibers[j] = {num::to_std(fib[j].data.u), num::to_std(v), tags[j]};
    }
    out.value = num::to_std(total);
    return out;
}

inline ZdwValue zdw_eval_detailed(const ZdwInput& in, std::complex<double> m) {
    return zdw_eval_typed<std::complex<double>>(in, m);
}

inline std::complex<double> zdw_eval(const ZdwInput& in, std::complex<double> m) {
    return zdw_eval_detailed(in, m).value;
}

/// Significance: above 1e-7 of the largest resolved coefficient and stable
/// across the two radii at 1e-4 relative.
inline constexpr double kSignificanceRel = 1e-7;
inline constexpr double kStabilityTol = 1e-4;

struct LaurentOptions {
    double radius = 1e-2;
    double radius2 = 5e-3;
    long long samples = 512;
    int nmax = 8;
    BranchAssignment branch = BranchAssignment::Principal;
};

/// Contour-extracted Laurent data of Z_DW in z = m - 3/2 with cross-radius
/// stability metadata and the self-consistency residuals used as engine
/// health checks.
///
/// Extracting c_k from a contour of radius r amplifies sample rounding noise
/// by r^{-k}; at double precision the large-positive-k slots of a small
/// contour are pure noise. Each coefficient therefore carries a per-k noise
/// floor, and only coefficients resolved above the floor on both contours
/// enter max_abs_coeff and the significance logic.
struct LaurentSpectrum {
    std::complex<double> center{1.5, 0.0};
    double radius = 0.0;
    double radius2 = 0.0;
    long long samples = 0;
    int nmax = 0;
    BranchAssignment branch = BranchAssignment::Principal;
    std::map<int, std::complex<double>> coeff;      // primary radius
    std::map<int, std::complex<double>> coeff_alt;  // second radius
    std::map<int, double> stability;                // per-k relative deviation
    std::map<int, double> noise_floor;              // per-k, primary radius
    std::map<int, double> noise_floor_alt;          // per-k, second radius
    std::map<int, bool> resolved;                   // above the floor on both contours
    double max_abs_coeff = 0.0;                     // over resolved coefficients
    double single_valued_residual = 0.0;   // theta = 0 vs 2 pi, both contours
    double half_integer_residual = 0.0;    // odd-harmonic content in w = sqrt(z) sampling
    double reconstruction_residual = 0.0;  // inverse-transform check on the samples
};

template <class C = std::complex<double>>
LaurentSpectrum laurent_spectrum(const ZdwInput& in, const LaurentOptions& opt = {}) {
    using namespace zdw_detail;
    using R = num::real_of<C>;
    using std::cos;
    using std::exp;
    using std::pow;
    using std::sin;
    using std::sqrt;

    if (opt.nmax < 0) throw InputError("laurent_spectrum: nmax must be nonnegative");
    if (opt.samples < 8 * static_cast<long long>(opt.nmax) || opt.samples < 8)
        throw InputError("laurent_spectrum: samples must be at least 8*nmax");
    if ((opt.samples & (opt.samples - 1)) != 0)
        throw InputError("laurent_spectrum: samples must be a power of two");
    if (!(opt.radius > 0.0) || !(opt.radius2 > 0.0) || opt.radius == opt.radius2)
        throw InputError("laurent_spectrum: need two distinct positive radii");

    EvalData<C> ed = EvalData<C>::prepare(in);
    const long long N = opt.samples;
    const R pi = pi_value<R>();

    LaurentSpectrum spec;
    spec.radius = opt.radius;
    spec.radius2 = opt.radius2;
    spec.samples = N;
    spec.nmax = opt.nmax;
    spec.branch = opt.branch;

    auto extract = [&](double radius, const std::vector<C>& vals) {
        std::map<int, std::complex<double>> out;
        for (int k = -opt.nmax; k <= opt.nmax; ++k) {
            C acc = num::make<C>(0.0);
            for (long long t = 0; t < N; ++t) {
                R theta = pi * 2 * R(t) / R(N);
                C kern(cos(theta * R(-k)), sin(theta * R(-k)));
                acc += vals[static_cast<std::size_t>(t)] * kern;
            }
            acc /= R(N);
            acc /= num::pow_int(num::make<C>(radius), k);
            out[k] = num::to_std(acc);
        }
        return out;
    };

    auto scale_of = [&](const std::vector<C>& vals) {
        double s = 0.0;
        for (const auto& v : vals) s = std::max(s, num::abs_double(v));
        return s;
    };

    std::vector<C> vals1 = trace_contour(ed, opt.radius, N, opt.branch);
    std::vector<C> vals2 = trace_contour(ed, opt.radius2, N, opt.branch);
    spec.coeff = extract(opt.radius, vals1);
    spec.coeff_alt = extract(opt.radius2, vals2);

    const double raw_scale1 = scale_of(vals1);
    const double raw_scale2 = scale_of(vals2);
    const double eps = num::epsilon<C>();
    for (int k = -opt.nmax; k <= opt.nmax; ++k) {
        spec.noise_floor[k] = eps * raw_scale1 * std::pow(opt.radius, -k);
        spec.noise_floor_alt[k] = eps * raw_scale2 * std::pow(opt.radius2, -k);
        // A coefficient participates in verdicts only when the extraction
        // noise of BOTH contours is comfortably below the stability
        // tolerance; anything weaker cannot be adjudicated at this precision.
        const double adjudicable =
            (4.0 / kStabilityTol) * std::max(spec.noise_floor.at(k), spec.noise_floor_alt.at(k));
        spec.resolved[k] = std::abs(spec.coeff.at(k)) > adjudicable &&
                           std::abs(spec.coeff_alt.at(k)) > adjudicable;
        if (spec.resolved.at(k))
            spec.max_abs_coeff = std::max(spec.max_abs_coeff, std::abs(spec.coeff.at(k)));
    }

    for (const auto& [k, c1] : spec.coeff) {
        const std::complex<double> c2 = spec.coeff_alt.at(k);
        const double denom = std::max({std::abs(c1), std::abs(c2), kAbsFloor});
        spec.stability[k] = std::abs(c1 - c2) / denom;
    }

    const double scale1 = std::max(raw_scale1, kAbsFloor);
    const double scale2 = std::max(raw_scale2, kAbsFloor);
    spec.single_valued_residual = std::max(
        num::abs_double(vals1[static_cast<std::size_t>(N)] - vals1[0]) / scale1,
        num::abs_double(vals2[static_cast<std::size_t>(N)] - vals2[0]) / scale2);

    // Half-integer refinement: the doubled contour is a single loop in
    // w = sqrt(z), where Z must be even. The odd part of the samples bounds
    // every odd w-coefficient at the contour radius without the r^{-k}
    // amplification of the raw transform.
    {
        double worst = 0.0;
        for (long long t = 0; t < N; ++t) {
            const C odd = (vals1[static_cast<std::size_t>(t)] -
                           vals1[static_cast<std::size_t>(t + N)]) *
                          0.5;
            worst = std::max(worst, num::abs_double(odd) / scale1);
        }
        spec.half_integer_residual = worst;
    }

    // Inverse transform: the coefficients must reproduce the samples.
    {
        double worst = 0.0;
        for (long long t = 0; t < N; ++t) {
            R theta = pi * 2 * R(t) / R(N);
            C rec = num::make<C>(0.0);
            for (int k = -opt.nmax; k <= opt.nmax; ++k) {
                const std::complex<double> ck = spec.coeff.at(k);
                C kern(cos(theta * R(k)), sin(theta * R(k)));
                rec += num::make<C>(ck.real(), ck.imag()) *
                       num::pow_int(num::make<C>(opt.radius), k) * kern;
            }
            worst = std::max(worst,
                             num::abs_double(vals1[static_cast<std::size_t>(t)] - rec) / scale1);
        }
        spec.reconstruction_residual = worst;
    }

    return spec;
}

struct RegularityVerdict {
    long long pole_order_detected = 0;
    long long pole_bound = 0;  // max(0, floor((chi_h - c1^2)/4)), integer powers only
    bool consistent_with_sst = true;
    bool consistent_with_bound = true;
    bool inconclusive = false;  // a would-be significant coefficient is radius-unstable
    std::vector<int> significant_ks;
};

inline RegularityVerdict regularity_verdict(const LaurentSpectrum& spec,
                                            const FourManifoldModel& model) {
    RegularityVerdict v;
    const long long gap = model.chi_h() - model.c1_squared();
    v.pole_bound = std::max<long long>(0, floor_div(gap, 4));

    const double thresh = kSignificanceRel * spec.max_abs_coeff;
    for (const auto& [k, c] : spec.coeff) {
        if (spec.max_abs_coeff == 0.0 || !spec.resolved.at(k) || std::abs(c) <= thresh) continue;
        if (spec.stability.at(k) >= kStabilityTol) {
            v.inconclusive = true;
            continue;
        }
        v.significant_ks.push_back(k);
        if (k < 0) v.pole_order_detected = std::max(v.pole_order_detected, static_cast<long long>(-k));
    }

    v.consistent_with_bound =
        v.pole_order_detected == 0 || 4 * v.pole_order_detected <= gap;
    SstVerdict sv = sst_check(model);
    v.consistent_with_sst = !sv.is_sst || v.pole_order_detected == 0;
    return v;
}

/// Runs the engine on both period-branch assignments when the branch matters
/// (odd varpi exponent, or S pairing nontrivially with a basic class) and
/// combines the verdicts; otherwise a single principal-branch run.
struct RegularityAnalysis {
    LaurentSpectrum principal;
    std::optional<LaurentSpectrum> flipped;
    RegularityVerdict verdict_principal;
    std::optional<RegularityVerdict> verdict_flipped;
    RegularityVerdict combined;
    bool dual_branch = false;
};

template <class C = std::complex<double>>
RegularityAnalysis regularity_analysis(const ZdwInput& in, LaurentOptions opt = {}) {
    using namespace zdw_detail;
    RegularityAnalysis out;
    opt.branch = BranchAssignment::Principal;
    out.principal = laurent_spectrum<C>(in, opt);
    out.verdict_principal = regularity_verdict(out.principal, in.model);
    out.combined = out.verdict_principal;

    EvalData<C> ed = EvalData<C>::prepare(in);
    out.dual_branch = ed.odd_exp || ed.any_Sx;
    if (out.dual_branch) {
        opt.branch = BranchAssignment::Flipped;
        out.flipped = laurent_spectrum<C>(in, opt);
        out.verdict_flipped = regularity_verdict(*out.flipped, in.model);
        out.combined.pole_order_detected = std::max(out.combined.pole_order_detected,
                                                    out.verdict_flipped->pole_order_detected);
        out.combined.consistent_with_sst &= out.verdict_flipped->consistent_with_sst;
        out.combined.consistent_with_bound &= out.verdict_flipped->consistent_with_bound;
        out.combined.inconclusive |= out.verdict_flipped->inconclusive;
    }
    return out;
}

}  // namespace sst
