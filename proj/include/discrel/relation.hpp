#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "discrel/bit_table.hpp"
#include "discrel/domain.hpp"
#include "discrel/errors.hpp"

namespace discrel {

/// A subset of the hypercube S^domain, stored as its bit table: bit i is set
/// iff the tuple with little-endian ordinal i belongs to the relation.
///
/// Immutable after construction; every operation returns a new relation.
class Relation {
  public:
    Relation(Domain domain, BitTable bits) : domain_(std::move(domain)), bits_(std::move(bits)) {
        if (bits_.size() != domain_.cell_count())
            throw FormatError("bit table has " + std::to_string(bits_.size()) + " bits, expected q^k = " +
                              std::to_string(domain_.cell_count()));
    }

    static Relation empty(Domain d) {
        const auto n = d.cell_count();
        return {std::move(d), BitTable(n, false)};
    }
    static Relation trivial(Domain d) {
        const auto n = d.cell_count();
        return {std::move(d), BitTable(n, true)};
    }

    /// Members are the tuples for which pred(states) holds.
    template <typename Pred>
    static Relation from_predicate(Domain d, Pred&& pred) {
        const auto n = d.cell_count();
        BitTable bits(n);
        std::vector<State> t(d.arity(), 0);
        for (Ordinal i = 0; i < n; ++i) {
            if (pred(std::span<const State>(t))) bits.set(i);
            for (std::size_t j = 0; j < t.size() && ++t[j] == d.states(); ++j) t[j] = 0;
        }
        return {std::move(d), std::move(bits)};
    }

    [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
    [[nodiscard]] const BitTable& bits() const noexcept { return bits_; }
    [[nodiscard]] const std::vector<std::string>& points() const noexcept { return domain_.points(); }
    [[nodiscard]] std::size_t arity() const noexcept { return domain_.arity(); }
    [[nodiscard]] unsigned states() const noexcept { return domain_.states(); }

    [[nodiscard]] bool contains(std::span<const State> states) const {
        if (states.size() != arity())
            throw DomainError("tuple has " + std::to_string(states.size()) + " states, domain has " +
                              std::to_string(arity()) + " points");
        return bits_.test(encode_point(states, domain_.states()));
    }
    [[nodiscard]] bool contains(std::initializer_list<State> states) const {
        return contains(std::span<const State>(states.begin(), states.size()));
    }
    [[nodiscard]] bool contains_ordinal(Ordinal i) const noexcept { return bits_.test(i); }

    [[nodiscard]] std::size_t cardinality() const noexcept { return bits_.count(); }
    [[nodiscard]] bool is_empty() const noexcept { return bits_.none(); }
    [[nodiscard]] bool is_trivial() const noexcept { return bits_.all(); }

    /// Same-domain inclusion.
    [[nodiscard]] bool is_subset_of(const Relation& other) const {
        require_same_domain(other);
        return bits_.is_subset_of(other.bits_);
    }

    [[nodiscard]] std::string to_string() const { return bits_.to_string(); }

    void require_same_domain(const Relation& other) const {
        if (!(domain_ == other.domain_)) throw DomainError("relations are defined on different domains");
    }

    friend bool operator==(const Relation& a, const Relation& b) noexcept {
        return a.domain_ == b.domain_ && a.bits_ == b.bits_;
    }

  private:
    Domain domain_;
    BitTable bits_;
};

/// Validating constructor from a {0,1} string of length q^k.
inline Relation make_relation(Domain domain, std::string_view bits) {
    auto table = BitTable::from_string(bits);
    return {std::move(domain), std::move(table)};
}

inline Relation make_relation(std::vector<std::string> points, unsigned q, std::string_view bits) {
    return make_relation(Domain(std::move(points), q), bits);
}

inline Relation intersect(const Relation& a, const Relation& b) {
    a.require_same_domain(b);
    return {a.domain(), a.bits() & b.bits()};
}

inline Relation unite(const Relation& a, const Relation& b) {
    a.require_same_domain(b);
    return {a.domain(), a.bits() | b.bits()};
}

inline Relation complement(const Relation& a) { return {a.domain(), ~a.bits()}; }

inline Relation operator&(const Relation& a, const Relation& b) { return intersect(a, b); }
inline Relation operator|(const Relation& a, const Relation& b) { return unite(a, b); }
inline Relation operator~(const Relation& a) { return complement(a); }

namespace detail {

inline void require_same_q(const Domain& a, const Domain& b) {
    if (a.states() != b.states())
        throw DomainError("state counts differ: " + std::to_string(a.states()) + " vs " + std::to_string(b.states()));
}

/// Positions in `outer` of the points of `inner`, in inner's order.
inline std::vector<std::size_t> positions_in(const Domain& inner, const Domain& outer) {
    std::vector<std::size_t> pos;
    pos.reserve(inner.arity());
    for (const auto& p : inner.points()) pos.push_back(outer.index_of(p));
    return pos;
}

/// Positions of `outer` not occupied by `taken`.
inline std::vector<std::size_t> remaining_positions(std::size_t arity, std::span<const std::size_t> taken) {
    std::vector<bool> used(arity, false);
    for (auto t : taken) used[t] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < arity; ++i)
        if (!used[i]) rest.push_back(i);
    return rest;
}

} // namespace detail

/// Cylinder R x S^(superdomain \ R.domain): a tuple belongs to the result iff
/// its restriction to R's points belongs to R.
inline Relation extend(const Relation& r, const Domain& superdomain) {
    detail::require_same_q(r.domain(), superdomain);
    if (!r.domain().is_subset_of(superdomain))
        throw DomainError("extension target does not contain every point of the relation");
    const auto inner = detail::positions_in(r.domain(), superdomain);
    const auto base = detail::cell_offsets(superdomain.states(), inner);
    const auto fiber =
        detail::cell_offsets(superdomain.states(), detail::remaining_positions(superdomain.arity(), inner));
    BitTable out(superdomain.cell_count());
    r.bits().for_each_set([&](std::size_t u) {
        for (auto f : fiber) out.set(base[u] + f);
    });
    return {superdomain, std::move(out)};
}

/// Existential projection: the smallest relation on `subdomain` whose
/// extension back to R's domain contains R.
inline Relation project(const Relation& r, const Domain& subdomain) {
    detail::require_same_q(r.domain(), subdomain);
    if (!subdomain.is_subset_of(r.domain()))
        throw DomainError("projection face contains points outside the relation's domain");
    const auto inner = detail::positions_in(subdomain, r.domain());
    const auto base = detail::cell_offsets(r.states(), inner);
    const auto fiber = detail::cell_offsets(r.states(), detail::remaining_positions(r.arity(), inner));
    BitTable out(subdomain.cell_count());
    for (std::size_t u = 0; u < base.size(); ++u) {
        for (auto f : fiber) {
            if (r.bits().test(base[u] + f)) {
                out.set(u);
                break;
            }
        }
    }
    return {subdomain, std::move(out)};
}

inline Relation project(const Relation& r, std::vector<std::string> face) {
    return project(r, r.domain().with_points(std::move(face)));
}

/// Same relation, bit table laid out for `target`, which must list exactly
/// R's points in some order.
inline Relation reorder(const Relation& r, const Domain& target) {
    if (target.arity() != r.arity()) throw DomainError("reorder target has a different point set");
    return project(r, target);
}

/// Moves the role of point i to point images[i] (images aligned with the
/// domain's point order). The result lives on the same domain; with pi the
/// map point -> image, a tuple v (read as point -> state) is a member iff
/// v o pi is a member of R.
inline Relation permute_points(const Relation& r, std::span<const std::string> images) {
    const auto& d = r.domain();
    if (images.size() != d.arity()) throw DomainError("permutation must list one image per point");
    std::vector<std::size_t> target(d.arity());
    std::vector<bool> hit(d.arity(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
        target[i] = d.index_of(images[i]);
        if (hit[target[i]]) throw DomainError("permutation is not a bijection: '" + images[i] + "' repeated");
        hit[target[i]] = true;
    }
    // Point i's state goes to position target[i].
    const auto moved = detail::cell_offsets(d.states(), target);
    BitTable out(d.cell_count());
    r.bits().for_each_set([&](std::size_t u) { out.set(moved[u]); });
    return {d, std::move(out)};
}

inline Relation permute_points(const Relation& r, std::initializer_list<std::string> images) {
    return permute_points(r, std::span<const std::string>(images.begin(), images.size()));
}

} // namespace discrel
