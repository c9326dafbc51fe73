#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "discrel/structure.hpp"

namespace discrel {

// ---------------------------------------------------------------------------
// Elementary rules
//
// The local rule s = f(p, q, r) lives on the 4-set (p, q, r, s): p, q, r are
// the left, center and right cells at time t and s is the center at t + 1.
// Rule numbers are big-endian in the neighborhood: f(p, q, r) is bit
// 4p + 2q + r of the number.

inline const std::vector<std::string>& elementary_points() {
    static const std::vector<std::string> pts{"p", "q", "r", "s"};
    return pts;
}

struct ElementaryRule {
    int number;
    Relation relation;

    [[nodiscard]] State next(State left, State center, State right) const noexcept {
        return static_cast<State>((number >> (4 * left + 2 * center + right)) & 1);
    }
};

inline ElementaryRule wolfram_relation(int n) {
    if (n < 0 || n > 255) throw DomainError("elementary rule number must be in [0, 256), got " + std::to_string(n));
    auto rel = Relation::from_predicate(Domain(elementary_points(), 2), [n](std::span<const State> t) {
        return t[3] == static_cast<State>((n >> (4 * t[0] + 2 * t[1] + t[2])) & 1);
    });
    return {n, std::move(rel)};
}

/// Life's local rule on x0..x9: x0..x7 the neighbors, x8 the cell, x9 the
/// cell one step later.
inline Relation life_relation() {
    std::vector<std::string> pts;
    for (int i = 0; i < 10; ++i) pts.push_back("x" + std::to_string(i));
    return Relation::from_predicate(Domain(std::move(pts), 2), [](std::span<const State> x) {
        const auto alive = std::accumulate(x.begin(), x.begin() + 8, 0U);
        if (alive == 3) return x[9] == 1;
        if (alive == 2) return x[8] == x[9];
        return x[9] == 0;
    });
}

/// Rebuilds Life from its projections onto the face without x8 and onto the
/// faces without x_i for the seven indices i != omitted (0 <= omitted < 8).
inline bool life_reconstructs(const Relation& life, int omitted) {
    if (omitted < 0 || omitted > 7) throw DomainError("omitted neighbor must be in [0, 8)");
    auto without = [&](int i) {
        std::vector<std::string> face;
        for (const auto& p : life.points())
            if (p != "x" + std::to_string(i)) face.push_back(p);
        return project(life, face);
    };
    std::vector<Relation> parts{without(8)};
    for (int i = 0; i < 8; ++i)
        if (i != omitted) parts.push_back(without(i));
    return reorder(base_relation(parts), life.domain()) == life;
}

/// True iff the state of `output` is determined by the other points: every
/// assignment to them extends to exactly one member.
inline bool is_functional_in(const Relation& r, std::string_view output) {
    const auto out = r.domain().index_of(output);
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < r.arity(); ++i)
        if (i != out) rest.push_back(r.points()[i]);
    const auto fiber = detail::cell_offsets(r.states(), std::vector<std::size_t>{out});
    std::vector<std::size_t> rest_pos;
    for (std::size_t i = 0; i < r.arity(); ++i)
        if (i != out) rest_pos.push_back(i);
    const auto base = detail::cell_offsets(r.states(), rest_pos);
    for (auto b : base) {
        std::size_t hits = 0;
        for (auto f : fiber) hits += r.contains_ordinal(b + f);
        if (hits != 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Classification of all 256 rules

struct RuleClassification {
    int number;
    Status status;
    /// Inclusion-maximal faces of the irreducible components.
    std::vector<std::vector<std::string>> maximal_simplices;
};

struct ClassificationSummary {
    std::vector<RuleClassification> rules; ///< indexed by rule number
    std::size_t reducible = 0;
    std::size_t irreducible = 0; ///< includes the prime ones
    std::vector<int> primes;
};

inline ClassificationSummary classify_all_rules() {
    ClassificationSummary out;
    out.rules.reserve(256);
    for (int n = 0; n < 256; ++n) {
        const auto rule = wolfram_relation(n);
        const auto status = classify(rule.relation);
        out.rules.push_back({n, status, impose_topology(rule.relation).maximal_simplices()});
        if (status == Status::reducible) {
            ++out.reducible;
        } else {
            ++out.irreducible;
            if (status == Status::prime) out.primes.push_back(n);
        }
    }
    return out;
}

/// Rules whose projection onto at least one of `faces` equals `bits`.
inline std::vector<int> rules_with_face_consequence(std::string_view bits,
                                                    const std::vector<std::vector<std::string>>& faces) {
    std::vector<int> out;
    for (int n = 0; n < 256; ++n) {
        const auto rule = wolfram_relation(n);
        const bool hit = std::any_of(faces.begin(), faces.end(), [&](const auto& f) {
            return project(rule.relation, f).to_string() == bits;
        });
        if (hit) out.push_back(n);
    }
    return out;
}

/// The faces {p,s}, {q,s}, {r,s} joining one cell of the neighborhood to the
/// next state.
inline std::vector<std::vector<std::string>> neighbor_output_faces() {
    return {{"p", "s"}, {"q", "s"}, {"r", "s"}};
}

/// Externally reported list of the rules carrying a `1101` consequence on one
/// of the neighbor/output faces. Only used to diff against the computed sets.
inline std::vector<int> reported_1101_rules() {
    std::vector<int> out{2,   4,   8,   10,  16,  32,  34,  40,  42,  48,  64,  72,  76,  80,  96,  112,
                         128, 130, 132, 136, 138, 140, 144, 160, 162, 168, 171, 186, 187, 196, 200, 205,
                         206, 208, 220};
    for (int n = 174; n <= 176; ++n) out.push_back(n);
    for (int n = 190; n <= 192; ++n) out.push_back(n);
    for (int n = 222; n <= 224; ++n) out.push_back(n);
    for (int n = 234; n <= 239; ++n) out.push_back(n);
    for (int n = 241; n <= 254; ++n) out.push_back(n);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Space-time trajectories

/// grid[t][x] for t in [0, steps], x in Z_width.
struct Trajectory {
    std::size_t width = 0;
    std::size_t steps = 0;
    std::vector<std::vector<std::uint8_t>> grid;

    [[nodiscard]] std::uint8_t at(long x, std::size_t t) const {
        const auto w = static_cast<long>(width);
        return grid[t][static_cast<std::size_t>(((x % w) + w) % w)];
    }
};

inline Trajectory simulate(const ElementaryRule& rule, std::span<const std::uint8_t> init, std::size_t steps) {
    if (init.size() < 3) throw DomainError("lattice width must be at least 3, got " + std::to_string(init.size()));
    for (auto v : init)
        if (v > 1) throw DomainError("initial row must contain only 0 and 1");
    Trajectory tr{init.size(), steps, {}};
    tr.grid.reserve(steps + 1);
    tr.grid.emplace_back(init.begin(), init.end());
    const auto w = init.size();
    for (std::size_t t = 0; t < steps; ++t) {
        const auto& row = tr.grid.back();
        std::vector<std::uint8_t> next(w);
        for (std::size_t x = 0; x < w; ++x)
            next[x] = static_cast<std::uint8_t>(rule.next(row[(x + w - 1) % w], row[x], row[(x + 1) % w]));
        tr.grid.push_back(std::move(next));
    }
    return tr;
}

inline std::vector<std::uint8_t> random_row(std::size_t width, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> row(width);
    for (auto& c : row) c = coin(rng) ? 1 : 0;
    return row;
}

/// A cell-evolution rule with no spatial neighbors, given by its relation on
/// (u(t), u(t+1)).
enum class ZeroDimensional { always_zero, oscillating, constant, always_one };

inline Relation zero_dimensional_relation(ZeroDimensional kind) {
    static constexpr std::array<const char*, 4> tables{"1100", "0110", "1001", "0011"};
    return make_relation({"u", "v"}, 2, tables[static_cast<std::size_t>(kind)]);
}

/// General solution u(t) of a zero-dimensional automaton (t >= 1 for the
/// constant rules, whose u(0) is free).
inline std::uint8_t zero_dimensional_solution(ZeroDimensional kind, std::uint8_t u0, std::size_t t) {
    switch (kind) {
    case ZeroDimensional::always_zero: return t == 0 ? u0 : 0;
    case ZeroDimensional::oscillating: return static_cast<std::uint8_t>((u0 + t) % 2);
    case ZeroDimensional::constant: return u0;
    case ZeroDimensional::always_one: return t == 0 ? u0 : 1;
    }
    return 0;
}

/// Closed-form state u(x, t) of rules 15 and 90 on a periodic lattice whose
/// initial row is `init`.
///   rule 15: u(x,t) = u(x - t, 0) + t mod 2
///   rule 90: u(x,t) = sum_k C(t,k) u(x - t + 2k, 0) mod 2
inline std::uint8_t closed_form(int rule, std::span<const std::uint8_t> init, long x, std::size_t t) {
    const auto w = static_cast<long>(init.size());
    if (w == 0) throw DomainError("empty initial row");
    auto u0 = [&](long at) { return init[static_cast<std::size_t>(((at % w) + w) % w)]; };
    const auto tl = static_cast<long>(t);
    switch (rule) {
    case 15: return static_cast<std::uint8_t>((u0(x - tl) + t) % 2);
    case 90: {
        unsigned sum = 0;
        for (std::size_t k = 0; k <= t; ++k)
            if ((k & t) == k) sum ^= u0(x - tl + 2 * static_cast<long>(k)); // Lucas: C(t,k) odd iff k subset of t
        return static_cast<std::uint8_t>(sum);
    }
    default: throw UnsupportedError("no closed form for rule " + std::to_string(rule));
    }
}

struct WindowViolation {
    long x;
    std::size_t t;
    /// -1 for the rule relation itself, otherwise an index into the checked consequences.
    int consequence;
};

struct TrajectoryReport {
    std::size_t windows_checked = 0;
    std::vector<WindowViolation> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Checks every window ((x-1,t), (x,t), (x+1,t), (x,t+1)) against the rule's
/// relation and against each given consequence, whose faces must use the
/// points p, q, r, s.
inline TrajectoryReport check_trajectory(const ElementaryRule& rule, const Trajectory& traj,
                                         const std::vector<ConsequenceEntry>& consequences = {}) {
    const Domain window(elementary_points(), 2);
    std::vector<std::vector<std::size_t>> slots;
    for (const auto& c : consequences) {
        std::vector<std::size_t> s;
        for (const auto& p : c.face().points()) s.push_back(window.index_of(p));
        slots.push_back(std::move(s));
    }
    TrajectoryReport report;
    for (std::size_t t = 0; t + 1 < traj.grid.size(); ++t) {
        for (long x = 0; x < static_cast<long>(traj.width); ++x) {
            const std::array<State, 4> win{traj.at(x - 1, t), traj.at(x, t), traj.at(x + 1, t), traj.at(x, t + 1)};
            ++report.windows_checked;
            if (!rule.relation.contains(win)) report.violations.push_back({x, t, -1});
            for (std::size_t c = 0; c < consequences.size(); ++c) {
                std::vector<State> sub;
                for (auto i : slots[c]) sub.push_back(win[i]);
                if (!consequences[c].relation.contains(sub))
                    report.violations.push_back({x, t, static_cast<int>(c)});
            }
        }
    }
    return report;
}

/// Connected components of the space-time lattice (width x (steps + 1),
/// periodic in x) when only the ties inside `simplices` are kept. Each simplex
/// is a set of window points from {p, q, r, s}.
inline std::size_t lattice_components(const std::vector<std::vector<std::string>>& simplices, std::size_t width,
                                      std::size_t steps) {
    const auto rows = steps + 1;
    std::vector<std::size_t> parent(width * rows);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto node = [&](long x, std::size_t t) {
        const auto w = static_cast<long>(width);
        return t * width + static_cast<std::size_t>(((x % w) + w) % w);
    };
    const Domain window(elementary_points(), 2);
    for (const auto& s : simplices) {
        std::vector<std::size_t> idx;
        for (const auto& p : s) idx.push_back(window.index_of(p));
        for (std::size_t t = 0; t + 1 < rows; ++t) {
            for (long x = 0; x < static_cast<long>(width); ++x) {
                const std::array<std::size_t, 4> cell{node(x - 1, t), node(x, t), node(x + 1, t), node(x, t + 1)};
                for (std::size_t i = 1; i < idx.size(); ++i) {
                    auto a = find(cell[idx[0]]), b = find(cell[idx[i]]);
                    if (a != b) parent[a] = b;
                }
            }
        }
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) count += find(i) == i;
    return count;
}

} // namespace discrel
