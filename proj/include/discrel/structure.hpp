#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "discrel/relation.hpp"
#include "discrel/simplicial_complex.hpp"

namespace discrel {

/// Mutually exclusive structural classes of a relation.
///
/// `prime` relations have no proper consequences at all; `irreducible` ones
/// have some but cannot be rebuilt from them; `reducible` ones can.
enum class Status { empty, trivial, prime, irreducible, reducible };

inline std::string_view to_string(Status s) noexcept {
    switch (s) {
    case Status::empty: return "empty";
    case Status::trivial: return "trivial";
    case Status::prime: return "prime";
    case Status::irreducible: return "irreducible";
    case Status::reducible: return "reducible";
    }
    return "?";
}

/// Thrown by operations undefined on empty or trivial relations.
class StatusError : public DomainError {
  public:
    StatusError(Status status, const std::string& op)
        : DomainError(op + " is undefined for a" + std::string(status == Status::empty ? "n " : " ") +
                      std::string(to_string(status)) + " relation"),
          status_(status) {}
    [[nodiscard]] Status status() const noexcept { return status_; }

  private:
    Status status_;
};

/// A nontrivial relation on a proper face whose extension contains the parent.
struct ConsequenceEntry {
    Relation relation;

    [[nodiscard]] const Domain& face() const noexcept { return relation.domain(); }
};

struct CanonicalDecomposition {
    Relation source;
    std::vector<ConsequenceEntry> consequences;
    Relation principal_factor;
};

namespace detail {

using FaceMask = std::uint64_t;

inline std::vector<std::string> face_points(const Domain& d, FaceMask mask) {
    std::vector<std::string> pts;
    for (std::size_t i = 0; i < d.arity(); ++i)
        if (mask >> i & 1U) pts.push_back(d.points()[i]);
    return pts;
}

inline FaceMask full_mask(std::size_t k) {
    if (k >= 64) throw DomainError("structure analysis supports at most 63 points");
    return (FaceMask{1} << k) - 1;
}

inline void require_informative(const Relation& r, const char* op) {
    if (r.is_empty()) throw StatusError(Status::empty, op);
    if (r.is_trivial()) throw StatusError(Status::trivial, op);
}

/// Nontrivial projections onto the co-dimension-1 faces, dropping points in
/// domain order.
inline std::vector<ConsequenceEntry> codim1_consequences(const Relation& r) {
    std::vector<ConsequenceEntry> out;
    if (r.arity() < 2) return out;
    for (std::size_t drop = 0; drop < r.arity(); ++drop) {
        std::vector<std::string> face;
        for (std::size_t i = 0; i < r.arity(); ++i)
            if (i != drop) face.push_back(r.points()[i]);
        auto p = project(r, std::move(face));
        if (!p.is_trivial()) out.push_back({std::move(p)});
    }
    return out;
}

} // namespace detail

/// Intersection of the extensions of all inputs to the union of their
/// domains (points in first-appearance order). An empty result means the
/// system is incompatible.
inline Relation base_relation(std::span<const Relation> relations) {
    if (relations.empty()) throw DomainError("base relation of an empty system");
    const unsigned q = relations.front().states();
    std::vector<std::string> points;
    std::uint64_t max_cells = relations.front().domain().max_cells();
    for (const auto& r : relations) {
        if (r.states() != q) throw DomainError("relations use different state counts");
        max_cells = std::max(max_cells, r.domain().max_cells());
        for (const auto& p : r.points())
            if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(p);
    }
    const Domain all(std::move(points), q, max_cells);
    auto result = Relation::trivial(all);
    for (const auto& r : relations) {
        result = intersect(result, extend(r, all));
        if (result.is_empty()) break;
    }
    return result;
}

inline Relation base_relation(std::initializer_list<Relation> relations) {
    return base_relation(std::span<const Relation>(relations.begin(), relations.size()));
}

/// Scope of proper_consequences().
enum class FaceScope {
    all,            ///< every nonempty proper face
    codimension_one ///< faces missing exactly one point
};

/// Projections of R onto proper faces that are nontrivial. Faces come largest
/// first, and within a size in lexicographic order of their point positions.
inline std::vector<ConsequenceEntry> proper_consequences(const Relation& r, FaceScope scope = FaceScope::all) {
    if (r.is_empty()) throw StatusError(Status::empty, "proper_consequences");
    if (scope == FaceScope::codimension_one) return detail::codim1_consequences(r);
    const auto k = r.arity();
    const auto full = detail::full_mask(k);
    std::vector<detail::FaceMask> masks;
    for (detail::FaceMask m = 1; m < full; ++m) masks.push_back(m);
    auto positions_of = [](detail::FaceMask m) {
        std::vector<int> v;
        for (int i = 0; m; ++i, m >>= 1)
            if (m & 1U) v.push_back(i);
        return v;
    };
    std::stable_sort(masks.begin(), masks.end(), [&](auto a, auto b) {
        const int ca = std::popcount(a), cb = std::popcount(b);
        return ca != cb ? ca > cb : positions_of(a) < positions_of(b);
    });
    std::vector<ConsequenceEntry> out;
    for (auto m : masks) {
        auto p = project(r, detail::face_points(r.domain(), m));
        if (!p.is_trivial()) out.push_back({std::move(p)});
    }
    return out;
}

/// Drops entries whose face lies strictly inside another entry's face; those
/// are projections of the larger entry and add no information.
inline std::vector<ConsequenceEntry> prune_implied(const std::vector<ConsequenceEntry>& entries) {
    std::vector<ConsequenceEntry> out;
    for (const auto& e : entries) {
        const bool implied = std::any_of(entries.begin(), entries.end(), [&](const ConsequenceEntry& o) {
            return o.face().arity() > e.face().arity() && e.face().is_subset_of(o.face());
        });
        if (!implied) out.push_back(e);
    }
    return out;
}

/// R together with the complement of the intersection of the consequences'
/// extensions: the largest relation that still restores R when intersected
/// with the consequences.
inline Relation principal_factor(const Relation& r, std::span<const ConsequenceEntry> consequences) {
    auto common = Relation::trivial(r.domain());
    for (const auto& c : consequences) {
        auto e = extend(c.relation, r.domain());
        if (!r.is_subset_of(e))
            throw ContractViolation("relation on face {" + [&] {
                std::string s;
                for (const auto& p : c.face().points()) s += (s.empty() ? "" : ",") + p;
                return s;
            }() + "} is not a consequence: its extension misses members of the relation");
        common = intersect(common, e);
    }
    return unite(r, complement(common));
}

inline Relation principal_factor(const Relation& r, const std::vector<ConsequenceEntry>& consequences) {
    return principal_factor(r, std::span<const ConsequenceEntry>(consequences));
}

/// R = PR & (intersection of co-dimension-1 consequences).
inline CanonicalDecomposition canonical_decomposition(const Relation& r) {
    detail::require_informative(r, "canonical_decomposition");
    auto cons = detail::codim1_consequences(r);
    auto factor = principal_factor(r, cons);
    return {r, std::move(cons), std::move(factor)};
}

/// Intersection of the extensions of the given consequences with the factor.
inline Relation reconstruct(const CanonicalDecomposition& d) {
    auto out = d.principal_factor;
    for (const auto& c : d.consequences) out = intersect(out, extend(c.relation, d.source.domain()));
    return out;
}

inline bool is_reducible(const Relation& r) {
    detail::require_informative(r, "is_reducible");
    return canonical_decomposition(r).principal_factor.is_trivial();
}

/// Every nonempty proper face has a trivial projection. By projection
/// composition it suffices to look at the co-dimension-1 faces.
inline bool is_prime(const Relation& r) {
    detail::require_informative(r, "is_prime");
    return detail::codim1_consequences(r).empty();
}

/// Total status, never throws.
inline Status classify(const Relation& r) {
    if (r.is_empty()) return Status::empty;
    if (r.is_trivial()) return Status::trivial;
    auto cons = detail::codim1_consequences(r);
    if (cons.empty()) return Status::prime;
    return principal_factor(r, cons).is_trivial() ? Status::reducible : Status::irreducible;
}

/// 2^(q^k - |R|): every superset of R on its own domain, R and S^k included.
inline boost::multiprecision::cpp_int count_consequences(const Relation& r) {
    const auto exponent = r.domain().cell_count() - r.cardinality();
    return boost::multiprecision::cpp_int(1) << static_cast<unsigned long long>(exponent);
}

// ---------------------------------------------------------------------------
// Recursive decomposition

struct DecompositionNode {
    Relation relation;
    Status status;
    /// Nontrivial co-dimension-1 projections; shared between parents.
    std::vector<std::shared_ptr<const DecompositionNode>> children;
    /// Set for reducible (then trivial) and irreducible nodes.
    std::optional<Relation> principal_factor;
};

/// Decomposition of a relation and, recursively, of its consequences down to
/// prime relations. Nodes are memoized by face, so the tree is really a DAG
/// with one node per face that carries a nontrivial projection.
class DecompositionTree {
  public:
    explicit DecompositionTree(const Relation& r) : root_domain_(r.domain()) {
        root_ = build(r, detail::full_mask(r.arity()));
    }

    [[nodiscard]] const DecompositionNode& root() const noexcept { return *root_; }
    [[nodiscard]] std::shared_ptr<const DecompositionNode> root_ptr() const noexcept { return root_; }

    /// Every distinct node, keyed by face (bit i set = i-th root point present).
    [[nodiscard]] const std::map<std::uint64_t, std::shared_ptr<const DecompositionNode>>& nodes() const noexcept {
        return memo_;
    }

    /// Prime nodes in face order; empty for empty or trivial roots.
    [[nodiscard]] std::vector<std::shared_ptr<const DecompositionNode>> prime_leaves() const {
        std::vector<std::shared_ptr<const DecompositionNode>> out;
        for (const auto& [mask, node] : memo_)
            if (node->status == Status::prime) out.push_back(node);
        return out;
    }

    [[nodiscard]] std::size_t depth() const { return depth_of(*root_); }

    /// Relations whose extensions reconstruct the root: irreducible (incl.
    /// prime) nodes reached through reducible ones, on inclusion-maximal faces.
    [[nodiscard]] std::vector<Relation> irreducible_components() const {
        std::map<std::uint64_t, const DecompositionNode*> found;
        collect(*root_, found);
        std::vector<Relation> out;
        for (const auto& [mask, node] : found) {
            const bool dominated = std::any_of(found.begin(), found.end(), [m = mask](const auto& o) {
                return o.first != m && (o.first & m) == m;
            });
            if (!dominated) out.push_back(node->relation);
        }
        return out;
    }

  private:
    std::shared_ptr<const DecompositionNode> build(const Relation& r, std::uint64_t mask) {
        if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
        auto node = std::make_shared<DecompositionNode>(DecompositionNode{r, Status::empty, {}, std::nullopt});
        if (r.is_empty() || r.is_trivial()) {
            node->status = r.is_empty() ? Status::empty : Status::trivial;
        } else {
            for (std::size_t drop = 0; drop < root_domain_.arity(); ++drop) {
                if (!(mask >> drop & 1U) || std::popcount(mask) < 2) continue;
                const auto sub = mask & ~(std::uint64_t{1} << drop);
                std::shared_ptr<const DecompositionNode> child;
                if (auto it = memo_.find(sub); it != memo_.end()) {
                    child = it->second;
                } else {
                    if (trivial_faces_.count(sub)) continue;
                    auto p = project(r, detail::face_points(root_domain_, sub));
                    if (p.is_trivial()) {
                        trivial_faces_.insert(sub);
                        continue;
                    }
                    child = build(p, sub);
                }
                node->children.push_back(std::move(child));
            }
            if (node->children.empty()) {
                node->status = Status::prime;
            } else {
                std::vector<ConsequenceEntry> cons;
                for (const auto& c : node->children) cons.push_back({c->relation});
                node->principal_factor = principal_factor(r, cons);
                node->status = node->principal_factor->is_trivial() ? Status::reducible : Status::irreducible;
            }
        }
        memo_.emplace(mask, node);
        return node;
    }

    static std::size_t depth_of(const DecompositionNode& n) {
        std::size_t d = 0;
        for (const auto& c : n.children) d = std::max(d, 1 + depth_of(*c));
        return d;
    }

    void collect(const DecompositionNode& n, std::map<std::uint64_t, const DecompositionNode*>& found) const {
        if (n.status == Status::prime || n.status == Status::irreducible) {
            found.emplace(mask_of(n), &n);
        } else if (n.status == Status::reducible) {
            for (const auto& c : n.children) collect(*c, found);
        }
    }

    std::uint64_t mask_of(const DecompositionNode& n) const {
        std::uint64_t m = 0;
        for (const auto& p : n.relation.points()) m |= std::uint64_t{1} << root_domain_.index_of(p);
        return m;
    }

    Domain root_domain_;
    std::map<std::uint64_t, std::shared_ptr<const DecompositionNode>> memo_;
    std::set<std::uint64_t> trivial_faces_;
    std::shared_ptr<const DecompositionNode> root_;
};

inline DecompositionTree decomposition_tree(const Relation& r) { return DecompositionTree(r); }

/// Simplicial structure induced by R: its maximal simplices are the faces of
/// R's irreducible components. A trivial R yields isolated vertices only.
inline SimplicialComplex impose_topology(const Relation& r) {
    if (r.is_empty()) throw StatusError(Status::empty, "impose_topology");
    std::vector<std::vector<std::string>> faces;
    for (const auto& c : DecompositionTree(r).irreducible_components()) faces.push_back(c.points());
    return SimplicialComplex(r.points(), faces);
}

// ---------------------------------------------------------------------------
// Symmetry grouping

namespace detail {

/// Permutation-invariant fingerprint of an entry under renamings of the
/// symmetric points: fixed points of the face, number of symmetric points, and
/// the member histogram keyed by (fixed-point states, sorted symmetric states).
inline std::vector<std::uint64_t> symmetry_signature(const ConsequenceEntry& e,
                                                     const std::vector<std::string>& symmetric,
                                                     std::vector<std::string>& fixed_names) {
    const auto& pts = e.face().points();
    std::vector<std::size_t> fixed, sym;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (std::find(symmetric.begin(), symmetric.end(), pts[i]) != symmetric.end())
            sym.push_back(i);
        else
            fixed.push_back(i);
    }
    fixed_names.clear();
    for (auto i : fixed) fixed_names.push_back(pts[i]);
    const unsigned q = e.relation.states();
    std::map<std::vector<State>, std::uint64_t> hist;
    e.relation.bits().for_each_set([&](std::size_t u) {
        auto t = decode_point(u, pts.size(), q);
        std::vector<State> key;
        for (auto i : fixed) key.push_back(t[i]);
        std::vector<State> s;
        for (auto i : sym) s.push_back(t[i]);
        std::sort(s.begin(), s.end());
        key.push_back(static_cast<State>(q)); // separator
        key.insert(key.end(), s.begin(), s.end());
        ++hist[key];
    });
    std::vector<std::uint64_t> sig{sym.size()};
    for (const auto& [k, n] : hist) {
        sig.insert(sig.end(), k.begin(), k.end());
        sig.push_back(n);
    }
    return sig;
}

/// True iff some bijection of the symmetric points of a onto those of b maps
/// a's relation onto b's.
inline bool equivalent_under(const ConsequenceEntry& a, const ConsequenceEntry& b,
                             const std::vector<std::string>& symmetric) {
    auto is_sym = [&](const std::string& p) {
        return std::find(symmetric.begin(), symmetric.end(), p) != symmetric.end();
    };
    std::vector<std::string> sym_b;
    for (const auto& p : b.face().points())
        if (is_sym(p)) sym_b.push_back(p);
    std::sort(sym_b.begin(), sym_b.end());
    do {
        std::vector<std::string> renamed;
        std::size_t next = 0;
        for (const auto& p : a.face().points()) renamed.push_back(is_sym(p) ? sym_b[next++] : p);
        const Relation moved(b.face().with_points(renamed), a.relation.bits());
        if (reorder(moved, b.face()) == b.relation) return true;
    } while (std::next_permutation(sym_b.begin(), sym_b.end()));
    return false;
}

} // namespace detail

/// Partitions entries into classes related by a permutation of `symmetric`
/// (points outside it stay fixed). Classes keep first-appearance order.
inline std::vector<std::vector<ConsequenceEntry>> group_by_symmetry(const std::vector<ConsequenceEntry>& entries,
                                                                    const std::vector<std::string>& symmetric) {
    struct Class {
        std::vector<std::uint64_t> signature;
        std::vector<std::string> fixed;
        std::vector<ConsequenceEntry> members;
    };
    std::vector<Class> classes;
    for (const auto& e : entries) {
        std::vector<std::string> fixed;
        auto sig = detail::symmetry_signature(e, symmetric, fixed);
        auto it = std::find_if(classes.begin(), classes.end(), [&](const Class& c) {
            return c.signature == sig && c.fixed == fixed &&
                   detail::equivalent_under(c.members.front(), e, symmetric);
        });
        if (it == classes.end())
            classes.push_back({std::move(sig), std::move(fixed), {e}});
        else
            it->members.push_back(e);
    }
    std::vector<std::vector<ConsequenceEntry>> out;
    for (auto& c : classes) out.push_back(std::move(c.members));
    return out;
}

} // namespace discrel
