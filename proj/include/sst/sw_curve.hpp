#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/numeric.hpp"

namespace sst {

// SU(2), Nf=1 Seiberg-Witten family y^2 = x^2(x-u) + 2mx - 1 in standard
// Weierstrass form:
//   g2 = (4/3)(u^2 - 6m),  g3 = (1/27)(8u^3 - 72mu + 108),
//   Delta = g2^3 - 27 g3^2 = -64u^3 + 64m^2 u^2 + 576 m u - 512 m^3 - 432.
// The superconformal cusp sits at (u,m) = (3, 3/2). All fiber evaluations
// near it are done in the cusp frame z = m - 3/2, s = u - 3 - 2z, where the
// polynomials below are exact re-expansions with no cancellation between
// O(1) terms.

template <class C>
C g2_of(const C& u, const C& m) {
    return (u * u - m * 6.0) * (4.0 / 3.0);
}

template <class C>
C g3_of(const C& u, const C& m) {
    return (u * u * u * 8.0 - m * u * 72.0 + 108.0 * num::make<C>(1.0)) / 27.0;
}

/// Hard-coded closed cubic for Delta(u;m).
template <class C>
C discriminant_closed(const C& u, const C& m) {
    return u * u * u * (-64.0) + m * m * u * u * 64.0 + m * u * 576.0 - m * m * m * 512.0 -
           432.0 * num::make<C>(1.0);
}

/// dDelta/du from the closed cubic.
template <class C>
C discriminant_du(const C& u, const C& m) {
    return u * u * (-192.0) + m * m * u * 128.0 + m * 576.0;
}

namespace curve_detail {

/// Coefficients of Delta as a cubic in s at fixed z (cusp frame).
template <class C>
struct ShiftedCubic {
    C c3, c2, c1, c0;

    static ShiftedCubic at(const C& z) {
        ShiftedCubic q;
        q.c3 = num::make<C>(-64.0);
        q.c2 = z * z * 64.0 - z * 192.0 - 432.0 * num::make<C>(1.0);
        q.c1 = z * z * z * 256.0 + z * z * 384.0;
        q.c0 = z * z * z * z * 256.0 + z * z * z * 512.0;
        return q;
    }

    C eval(const C& s) const { return ((c3 * s + c2) * s + c1) * s + c0; }
    C deriv(const C& s) const { return (c3 * 3.0 * s + c2 * 2.0) * s + c1; }

    C newton_polish(C s) const {
        C best = s;
        double best_f = num::abs_double(eval(s));
        const double tiny = num::epsilon<C>();
        for (int it = 0; it < 40; ++it) {
            C df = deriv(s);
            if (df == num::make<C>(0.0)) break;
            C step = eval(s) / df;
            s -= step;
            double f = num::abs_double(eval(s));
            if (f < best_f) {
                best_f = f;
                best = s;
            }
            if (num::abs_double(step) <= tiny * (1.0 + num::abs_double(s))) break;
        }
        return best;
    }
};

template <class C>
std::array<C, 3> cardano_monic(const C& A, const C& B, const C& Cc) {
    using std::sqrt;
    const C zero = num::make<C>(0.0);
    C p = B - A * A / 3.0;
    C q = A * A * A * (2.0 / 27.0) - A * B / 3.0 + Cc;
    C D = q * q / 4.0 + p * p * p / 27.0;
    C sq = sqrt(D);
    C w3a = q * (-0.5) + sq;
    C w3b = q * (-0.5) - sq;
    C w3 = num::abs_double(w3a) >= num::abs_double(w3b) ? w3a : w3b;
    std::array<C, 3> t;
    if (w3 == zero) {
        t = {zero, zero, zero};
    } else {
        C w = num::cbrt(w3);
        const C omega = num::make<C>(-0.5, 0.8660254037844386467637231707529362);
        C wk = w;
        for (int k = 0; k < 3; ++k) {
            t[static_cast<std::size_t>(k)] = wk - p / (wk * 3.0);
            wk *= omega;
        }
    }
    for (auto& tk : t) tk -= A / 3.0;
    return t;
}

}  // namespace curve_detail

/// The three roots of Delta(.;m) in cusp-frame coordinates s = u - 3 - 2z.
/// Cardano seeds, then the most isolated root is Newton-polished, the pair is
/// recovered by deflation and polished on the exact cubic. This keeps the
/// nearly-colliding pair at full relative accuracy down to |z| ~ 1e-12.
template <class C>
std::array<C, 3> solve_shifted_cubic(const C& z) {
    using curve_detail::ShiftedCubic;
    const C zero = num::make<C>(0.0);
    ShiftedCubic<C> cub = ShiftedCubic<C>::at(z);
    const C A = cub.c2 / cub.c3;
    const C B = cub.c1 / cub.c3;
    const C Cc = cub.c0 / cub.c3;

    if (cub.c0 == zero && cub.c1 == zero) {
        // double root at s = 0 (z = 0 or the degenerate companion)
        return {zero, zero, cub.newton_polish(-A)};
    }

    std::array<C, 3> s = curve_detail::cardano_monic(A, B, Cc);

    // most isolated seed
    std::size_t iso = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        double d = 1e300;
        for (std::size_t j = 0; j < 3; ++j)
            if (j != i) d = std::min(d, num::abs_double(s[i] - s[j]));
        if (d > best) {
            best = d;
            iso = i;
        }
    }
    C r_iso = cub.newton_polish(s[iso]);

    // deflate: s^3 + A s^2 + B s + C = (s - r)(s^2 + beta s + gamma)
    using std::sqrt;
    C beta = A + r_iso;
    C gamma = B + beta * r_iso;
    C disc = beta * beta - gamma * 4.0;
    C sq = sqrt(disc);
    // sign choice maximizing |beta + sq| for a stable quadratic split
    if ((beta.real() * sq.real() + beta.imag() * sq.imag()) < num::real_of<C>(0)) sq = -sq;
    C r1 = (beta + sq) * (-0.5);
    C r2 = (r1 == zero) ? (sq - beta) * 0.5 : gamma / r1;
    r1 = cub.newton_polish(r1);
    r2 = cub.newton_polish(r2);
    return {r1, r2, r_iso};
}

/// Per-fiber numerics at a discriminant root, evaluated in the cusp frame.
template <class C>
struct FiberData {
    C z, s, u;
    C g2, g3, delta_prime, period_sq, T;
};

template <class C>
FiberData<C> fiber_eval(const C& z, const C& s) {
    FiberData<C> f;
    f.z = z;
    f.s = s;
    f.u = num::make<C>(3.0) + z * 2.0 + s;
    f.g2 = s * s * (4.0 / 3.0) + s * z * (16.0 / 3.0) + s * 8.0 + z * z * (16.0 / 3.0) + z * 8.0;
    f.g3 = s * s * s * (8.0 / 27.0) + s * s * z * (16.0 / 9.0) + s * s * (8.0 / 3.0) +
           s * z * z * (32.0 / 9.0) + s * z * 8.0 + s * 4.0 + z * z * z * (64.0 / 27.0) +
           z * z * (16.0 / 3.0);
    f.delta_prime = s * s * (-192.0) + (z * z * 128.0 - z * 384.0 - 864.0 * num::make<C>(1.0)) * s +
                    z * z * z * 256.0 + z * z * 384.0;
    f.period_sq = f.g2 / (f.g3 * 36.0);
    // T = -(1/24)(1/period_sq - 8u), with 1/period_sq written as 36 g3/g2
    f.T = (f.g3 * 36.0 / f.g2 - f.u * 8.0) * (-1.0 / 24.0);
    return f;
}

/// One singular fiber of the family at a given (u, m), public double API.
struct WeierstrassFiberData {
    std::complex<double> u, m;
    std::complex<double> g2, g3, delta, delta_prime;
    std::complex<double> period_sq, T;
    bool cusp_flag = false;  // g3 = 0: finite period undefined
};

/// Direct closed-form evaluation at an arbitrary point of the (u,m) plane.
inline WeierstrassFiberData weierstrass_data(std::complex<double> u, std::complex<double> m) {
    WeierstrassFiberData d;
    d.u = u;
    d.m = m;
    d.g2 = g2_of(u, m);
    d.g3 = g3_of(u, m);
    d.delta = discriminant_closed(u, m);
    d.delta_prime = discriminant_du(u, m);
    if (d.g3 == std::complex<double>(0.0)) {
        d.cusp_flag = true;
        d.period_sq = 0.0;
        d.T = 0.0;
    } else {
        d.period_sq = d.g2 / (36.0 * d.g3);
        // 1/period_sq blows up where g2 = 0 (period_sq = 0); T follows suit.
        d.T = d.g2 == std::complex<double>(0.0)
                  ? std::complex<double>(INFINITY, 0.0)
                  : (36.0 * d.g3 / d.g2 - 8.0 * u) * (-1.0 / 24.0);
    }
    return d;
}

enum class RootTag { Plus, Minus, Spectator, Degenerate };

inline const char* to_string(RootTag t) {
    switch (t) {
        case RootTag::Plus: return "u+";
        case RootTag::Minus: return "u-";
        case RootTag::Spectator: return "spectator";
        default: return "degenerate";
    }
}

/// The three discriminant roots u_j(m) with the colliding pair u_+- near the
/// cusp separated from the spectator.
struct FiberSet {
    std::complex<double> m;
    std::array<std::complex<double>, 3> roots;   // ordered [plus, minus, spectator]
    std::array<std::complex<double>, 3> s;       // cusp-frame coordinates
    std::array<RootTag, 3> tags;
};

inline FiberSet discriminant_roots(std::complex<double> m) {
    using C = std::complex<double>;
    const C z = m - 1.5;
    std::array<C, 3> s = solve_shifted_cubic(z);
    std::array<C, 3> u;
    for (int i = 0; i < 3; ++i) u[static_cast<std::size_t>(i)] = 3.0 + 2.0 * z + s[static_cast<std::size_t>(i)];

    // the two roots nearest u = 3 form the pair, the third is the spectator
    std::array<std::size_t, 3> idx = {0, 1, 2};
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(u[a] - 3.0) < std::abs(u[b] - 3.0); });

    FiberSet fs;
    fs.m = m;
    const std::size_t pa = idx[0], pb = idx[1], spec = idx[2];
    if (s[pa] == s[pb]) {
        fs.roots = {u[pa], u[pb], u[spec]};
        fs.s = {s[pa], s[pb], s[spec]};
        fs.tags = {RootTag::Degenerate, RootTag::Degenerate, RootTag::Spectator};
        return fs;
    }
    // u_+ is the pair root on the principal branch s ~ +sqrt(32/27) z^{3/2}
    const C ref = std::pow(z, 1.5) * std::sqrt(32.0 / 27.0);
    std::size_t plus = pa, minus = pb;
    if (std::abs(s[pb] - ref) < std::abs(s[pa] - ref)) std::swap(plus, minus);
    fs.roots = {u[plus], u[minus], u[spec]};
    fs.s = {s[plus], s[minus], s[spec]};
    fs.tags = {RootTag::Plus, RootTag::Minus, RootTag::Spectator};
    return fs;
}

enum class ScalingQuantity { Period, G2AtCuspRoots, DeltaPrime, DeltaU };

inline const char* to_string(ScalingQuantity q) {
    switch (q) {
        case ScalingQuantity::Period: return "period";
        case ScalingQuantity::G2AtCuspRoots: return "g2_at_cusp_roots";
        case ScalingQuantity::DeltaPrime: return "delta_prime";
        default: return "delta_u";
    }
}

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    int samples = 0;
};

/// Least-squares slope of log|quantity(u_+)| against log z along real
/// positive z = radius. Expected: period -1/4, g2 +1, Delta' and delta-u +3/2.
inline ScalingFit cusp_scaling_fit(ScalingQuantity q, std::span<const double> radii) {
    if (radii.size() < 3) throw InputError("cusp_scaling_fit: need at least 3 radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw InputError("cusp_scaling_fit: radii must be positive");
        if (i && !(radii[i] < radii[i - 1]))
            throw InputError("cusp_scaling_fit: radii must be strictly decreasing");
    }

    std::vector<double> xs, ys;
    for (double r : radii) {
        FiberSet fs = discriminant_roots(std::complex<double>(1.5 + r, 0.0));
        if (fs.tags[0] != RootTag::Plus) continue;  // degenerate sample, skip
        auto fd = fiber_eval(std::complex<double>(r, 0.0), fs.s[0]);
        double v = 0.0;
        switch (q) {
            case ScalingQuantity::Period: v = 0.5 * std::log(std::abs(fd.period_sq)); break;
            case ScalingQuantity::G2AtCuspRoots: v = std::log(std::abs(fd.g2)); break;
            case ScalingQuantity::DeltaPrime: v = std::log(std::abs(fd.delta_prime)); break;
            case ScalingQuantity::DeltaU: v = std::log(std::abs(fd.s)); break;
        }
        if (!std::isfinite(v)) continue;
        xs.push_back(std::log(r));
        ys.push_back(v);
    }
    if (xs.size() < 3) throw InputError("cusp_scaling_fit: fewer than 3 valid samples");

    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    ScalingFit fit;
    fit.samples = static_cast<int>(xs.size());
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
    return fit;
}

}  // namespace sst
