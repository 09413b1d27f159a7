#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sst/bigint.hpp"
#include "sst/lattice.hpp"

namespace sst {

/// Finite group-ring element sum c_x e^{x} over lattice classes with exact
/// integer coefficients. Zero coefficients are never stored.
class SWSeries {
  public:
    SWSeries() = default;
    explicit SWSeries(IntersectionLattice lattice) : lattice_(std::move(lattice)) {}

    static SWSeries unit(IntersectionLattice lattice) {
        SWSeries s(std::move(lattice));
        s.add_term(CohClass(s.lattice_.rank(), 0), 1);
        return s;
    }

    const IntersectionLattice& lattice() const { return lattice_; }
    const std::map<CohClass, Integer>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Integer coeff(const CohClass& x) const {
        auto it = terms_.find(x);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    void add_term(const CohClass& x, const Integer& c) {
        lattice_.require_rank(x);
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(x, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SWSeries negated() const {
        SWSeries r(lattice_);
        for (const auto& [x, c] : terms_) r.terms_.emplace(x, -c);
        return r;
    }

    bool operator==(const SWSeries& o) const {
        return lattice_ == o.lattice_ && terms_ == o.terms_;
    }

    /// Group-ring convolution; both factors must live on the same lattice.
    friend SWSeries multiply(const SWSeries& a, const SWSeries& b) {
        if (a.lattice_ != b.lattice_)
            throw InputError("series multiplication across different lattices");
        SWSeries r(a.lattice_);
        for (const auto& [x, cx] : a.terms_)
            for (const auto& [y, cy] : b.terms_) r.add_term(added(x, y), cx * cy);
        return r;
    }

  private:
    IntersectionLattice lattice_;
    std::map<CohClass, Integer> terms_;
};

inline SWSeries operator*(const SWSeries& a, const SWSeries& b) { return multiply(a, b); }

/// a == b or a == -b (surgery identities are fixed only up to one global sign).
inline bool equal_up_to_global_sign(const SWSeries& a, const SWSeries& b) {
    return a == b || a == b.negated();
}

/// Rank-k symmetric tensor sum c_x x^{(x)k} stored densely over sorted index
/// tuples in the working basis (the basis coordinates represent the functional
/// against dual classes of the ambient unimodular lattice).
class MomentTensor {
  public:
    MomentTensor(std::size_t rank, std::size_t order) : rank_(rank), order_(order) {
        std::vector<std::size_t> idx(order, 0);
        init_entries(idx, 0, 0);
    }

    std::size_t rank() const { return rank_; }
    std::size_t order() const { return order_; }
    const std::map<std::vector<std::size_t>, Integer>& entries() const { return entries_; }

    void accumulate(const CohClass& x, const Integer& c) {
        for (auto& [idx, val] : entries_) {
            Integer prod = c;
            for (std::size_t i : idx) prod *= x[i];
            val += prod;
        }
    }

    bool is_zero() const {
        for (const auto& [idx, val] : entries_)
            if (val != 0) return false;
        return true;
    }

    Integer entry(const std::vector<std::size_t>& sorted_idx) const {
        auto it = entries_.find(sorted_idx);
        if (it == entries_.end()) throw InputError("moment tensor index out of range");
        return it->second;
    }

    /// Full contraction with v^{(x)k}, counting each sorted tuple with its
    /// permutation multiplicity. Equals sum_x c_x <x,v>^k.
    Integer contract_power(const std::vector<long long>& v) const {
        if (v.size() != rank_) throw InputError("probe vector has wrong length");
        Integer acc = 0;
        for (const auto& [idx, val] : entries_) {
            if (val == 0) continue;
            Integer prod = val * multiplicity(idx);
            for (std::size_t i : idx) prod *= v[i];
            acc += prod;
        }
        return acc;
    }

  private:
    void init_entries(std::vector<std::size_t>& idx, std::size_t pos, std::size_t lo) {
        if (pos == order_) {
            entries_.emplace(idx, Integer(0));
            return;
        }
        for (std::size_t i = lo; i < rank_; ++i) {
            idx[pos] = i;
            init_entries(idx, pos + 1, i);
        }
    }

    static Integer multiplicity(const std::vector<std::size_t>& sorted_idx) {
        Integer m = 1;
        for (std::size_t i = 1; i <= sorted_idx.size(); ++i) m *= i;
        std::size_t run = 1;
        for (std::size_t i = 1; i < sorted_idx.size(); ++i) {
            if (sorted_idx[i] == sorted_idx[i - 1]) {
                ++run;
                m /= static_cast<long long>(run);
            } else {
                run = 1;
            }
        }
        return m;
    }

    std::size_t rank_ = 0;
    std::size_t order_ = 0;
    std::map<std::vector<std::size_t>, Integer> entries_;
};

/// Order of vanishing at z = 0. `Exact k`, `AtLeast k` (all tensors up to the
/// requested cutoff vanished) or `Infinite` (the zero series).
struct VanishingOrder {
    enum class Kind { Exact, AtLeast, Infinite } kind = Kind::Infinite;
    long long value = 0;

    static VanishingOrder exact(long long k) { return {Kind::Exact, k}; }
    static VanishingOrder at_least(long long k) { return {Kind::AtLeast, k}; }
    static VanishingOrder infinite() { return {Kind::Infinite, 0}; }

    bool is_infinite() const { return kind == Kind::Infinite; }
    bool is_exact() const { return kind == Kind::Exact; }

    /// True when the order is known to be >= k.
    bool at_least_bound(long long k) const {
        return kind == Kind::Infinite || value >= k;
    }

    std::string to_string() const {
        switch (kind) {
            case Kind::Infinite: return "inf";
            case Kind::AtLeast: return ">=" + std::to_string(value);
            default: return std::to_string(value);
        }
    }

    bool operator==(const VanishingOrder& o) const = default;
};

struct MomentReport {
    std::vector<MomentTensor> tensors;  // k = 0..kmax; empty in probabilistic mode
    VanishingOrder order;
    bool probabilistic = false;  // rank > 8 fallback: randomized probe verdict
};

namespace detail {

constexpr std::size_t kDenseMomentRankLimit = 8;
constexpr int kMomentProbeCount = 50;
constexpr unsigned kMomentProbeSeed = 0x53535400u;

inline std::vector<std::vector<long long>> probe_vectors(std::size_t rank) {
    std::mt19937 rng(kMomentProbeSeed);
    std::uniform_int_distribution<long long> dist(-9, 9);
    std::vector<std::vector<long long>> out(kMomentProbeCount, std::vector<long long>(rank));
    for (auto& v : out)
        for (auto& c : v) c = dist(rng);
    return out;
}

/// sum_x c_x <x,v>^k with the raw coordinate dot product (dual-basis probe).
inline Integer power_sum_probe(const SWSeries& s, const std::vector<long long>& v, long long k) {
    Integer acc = 0;
    for (const auto& [x, c] : s.terms()) {
        Integer dot = 0;
        for (std::size_t i = 0; i < v.size(); ++i) dot += Integer(x[i]) * v[i];
        Integer p = 1;
        for (long long j = 0; j < k; ++j) p *= dot;
        acc += c * p;
    }
    return acc;
}

}  // namespace detail

/// Moment tensors M_k for k = 0..kmax together with the least k at which a
/// tensor is nonzero. For lattices of rank > 8 the dense tensors are not
/// materialized; vanishing is decided by 50 deterministic integer probes and
/// the verdict is flagged probabilistic.
inline MomentReport moments_and_order(const SWSeries& s, long long kmax) {
    if (kmax < 0) throw InputError("kmax must be nonnegative");
    MomentReport rep;
    if (s.empty()) {
        rep.order = VanishingOrder::infinite();
        if (s.lattice().rank() <= detail::kDenseMomentRankLimit)
            for (long long k = 0; k <= kmax; ++k)
                rep.tensors.emplace_back(s.lattice().rank(), static_cast<std::size_t>(k));
        return rep;
    }

    const std::size_t rank = s.lattice().rank();
    std::optional<long long> first_nonzero;
    if (rank <= detail::kDenseMomentRankLimit) {
        for (long long k = 0; k <= kmax; ++k) {
            MomentTensor t(rank, static_cast<std::size_t>(k));
            for (const auto& [x, c] : s.terms()) t.accumulate(x, c);
            if (!first_nonzero && !t.is_zero()) first_nonzero = k;
            rep.tensors.push_back(std::move(t));
        }
    } else {
        rep.probabilistic = true;
        const auto probes = detail::probe_vectors(rank);
        for (long long k = 0; k <= kmax && !first_nonzero; ++k)
            for (const auto& v : probes)
                if (detail::power_sum_probe(s, v, k) != 0) {
                    first_nonzero = k;
                    break;
                }
    }
    rep.order = first_nonzero ? VanishingOrder::exact(*first_nonzero)
                              : VanishingOrder::at_least(kmax + 1);
    return rep;
}

struct OrderResult {
    VanishingOrder order;
    bool probabilistic = false;
};

/// Exact vanishing order of a finite series, computed incrementally: one
/// moment level at a time, stopping at the first nonzero tensor. A nonzero
/// series on n classes vanishes to order at most n-1, which bounds the loop.
inline OrderResult order_of(const SWSeries& s) {
    if (s.empty()) return {VanishingOrder::infinite(), false};
    const std::size_t rank = s.lattice().rank();
    const long long bound = static_cast<long long>(s.size()) - 1;
    if (rank <= detail::kDenseMomentRankLimit) {
        for (long long k = 0; k <= bound; ++k) {
            MomentTensor t(rank, static_cast<std::size_t>(k));
            for (const auto& [x, c] : s.terms()) t.accumulate(x, c);
            if (!t.is_zero()) return {VanishingOrder::exact(k), false};
        }
        return {VanishingOrder::at_least(bound + 1), false};
    }
    const auto probes = detail::probe_vectors(rank);
    for (long long k = 0; k <= bound; ++k)
        for (const auto& v : probes)
            if (detail::power_sum_probe(s, v, k) != 0) return {VanishingOrder::exact(k), true};
    return {VanishingOrder::at_least(bound + 1), true};
}

inline VanishingOrder exact_order(const SWSeries& s) { return order_of(s).order; }

}  // namespace sst
