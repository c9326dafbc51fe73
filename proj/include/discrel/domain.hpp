#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "discrel/errors.hpp"

namespace discrel {

using State = unsigned;
using Ordinal = std::uint64_t;

/// Largest hypercube (q^k cells) a domain may describe unless overridden.
inline constexpr std::uint64_t default_max_cells = std::uint64_t{1} << 32;

/// Point names are short identifiers: [A-Za-z_][A-Za-z0-9_]*.
inline bool is_point_name(std::string_view name) noexcept {
    if (name.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!alpha(name.front())) return false;
    for (char c : name)
        if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
    return true;
}

/// Ordered set of named points sharing one state alphabet {0, ..., q-1}.
///
/// Point order fixes bit-table indexing, so two domains are equal only when
/// they list the same names in the same order with the same q.
class Domain {
  public:
    Domain(std::vector<std::string> points, unsigned q, std::uint64_t max_cells = default_max_cells)
        : points_(std::move(points)), q_(q), max_cells_(max_cells) {
        if (q_ < 2) throw DomainError("state count q must be at least 2, got " + std::to_string(q_));
        cells_ = 1;
        for (std::size_t i = 0; i < points_.size(); ++i) {
            const auto& name = points_[i];
            if (!is_point_name(name)) throw DomainError("invalid point name '" + name + "'");
            if (!index_.emplace(name, i).second) throw DomainError("duplicate point '" + name + "'");
            if (cells_ > max_cells_ / q_)
                throw DomainError("hypercube " + std::to_string(q_) + "^" + std::to_string(points_.size()) +
                                  " exceeds the cell limit " + std::to_string(max_cells_));
            cells_ *= q_;
        }
    }

    [[nodiscard]] const std::vector<std::string>& points() const noexcept { return points_; }
    [[nodiscard]] std::size_t arity() const noexcept { return points_.size(); }
    [[nodiscard]] unsigned states() const noexcept { return q_; }
    /// q^k
    [[nodiscard]] std::uint64_t cell_count() const noexcept { return cells_; }
    [[nodiscard]] std::uint64_t max_cells() const noexcept { return max_cells_; }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    [[nodiscard]] bool contains(std::string_view name) const { return find(name).has_value(); }
    [[nodiscard]] std::size_t index_of(std::string_view name) const {
        if (auto i = find(name)) return *i;
        throw DomainError("point '" + std::string(name) + "' is not in the domain");
    }

    /// Same q and cell limit, different point list.
    [[nodiscard]] Domain with_points(std::vector<std::string> points) const {
        return Domain(std::move(points), q_, max_cells_);
    }

    /// True iff every point of *this also belongs to other (order ignored).
    [[nodiscard]] bool is_subset_of(const Domain& other) const {
        for (const auto& p : points_)
            if (!other.contains(p)) return false;
        return true;
    }

    friend bool operator==(const Domain& a, const Domain& b) noexcept {
        return a.q_ == b.q_ && a.points_ == b.points_;
    }

  private:
    std::vector<std::string> points_;
    unsigned q_;
    std::uint64_t max_cells_;
    std::uint64_t cells_ = 1;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Little-endian base-q ordinal of a state tuple: sum of states[j] * q^j.
inline Ordinal encode_point(std::span<const State> states, unsigned q) {
    if (q < 2) throw DomainError("state count q must be at least 2");
    Ordinal ordinal = 0;
    Ordinal weight = 1;
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (states[j] >= q)
            throw DomainError("state " + std::to_string(states[j]) + " at position " + std::to_string(j) +
                              " is outside [0, " + std::to_string(q) + ")");
        ordinal += states[j] * weight;
        weight *= q;
    }
    return ordinal;
}

inline Ordinal encode_point(std::initializer_list<State> states, unsigned q) {
    return encode_point(std::span<const State>(states.begin(), states.size()), q);
}

/// Inverse of encode_point for k-tuples.
inline std::vector<State> decode_point(Ordinal ordinal, std::size_t k, unsigned q) {
    if (q < 2) throw DomainError("state count q must be at least 2");
    std::vector<State> states(k);
    for (std::size_t j = 0; j < k; ++j) {
        states[j] = static_cast<State>(ordinal % q);
        ordinal /= q;
    }
    if (ordinal != 0) throw DomainError("ordinal out of range for " + std::to_string(k) + " points");
    return states;
}

namespace detail {

/// offsets[u] = sum_j digit_j(u) * q^positions[j], u running over q^m cells of
/// the sub-hypercube spanned by `positions` (little-endian in u).
inline std::vector<Ordinal> cell_offsets(unsigned q, std::span<const std::size_t> positions) {
    std::vector<Ordinal> offsets{0};
    for (std::size_t pos : positions) {
        Ordinal stride = 1;
        for (std::size_t i = 0; i < pos; ++i) stride *= q;
        const std::size_t old = offsets.size();
        offsets.resize(old * q);
        for (unsigned s = 1; s < q; ++s)
            for (std::size_t u = 0; u < old; ++u) offsets[s * old + u] = offsets[u] + s * stride;
    }
    return offsets;
}

} // namespace detail

} // namespace discrel
