#pragma once

// Closed-form GF(2) polynomials of the Life relation and of its consequences,
// written with elementary symmetric sums over the neighbor points. Shared by
// the unit and acceptance suites.

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "discrel/polynomial.hpp"

namespace lifepoly {

using discrel::Polynomial;

inline std::string x(int i) { return "x" + std::to_string(i); }

/// x0..x7 without the listed indices.
inline std::vector<std::string> neighbors_without(std::initializer_list<int> skip) {
    std::vector<std::string> out;
    for (int i = 0; i < 8; ++i)
        if (std::find(skip.begin(), skip.end(), i) == skip.end()) out.push_back(x(i));
    return out;
}

/// Ring over `neighbors` followed by whichever of x8, x9 are requested.
struct Ring {
    std::vector<std::string> neighbors;
    std::vector<std::string> variables;

    Ring(std::vector<std::string> nb, bool with_x8, bool with_x9) : neighbors(std::move(nb)), variables(neighbors) {
        if (with_x8) variables.push_back(x(8));
        if (with_x9) variables.push_back(x(9));
    }

    [[nodiscard]] Polynomial one() const { return Polynomial::constant(2, variables, 1); }
    [[nodiscard]] Polynomial var(int i) const { return Polynomial::variable(2, variables, x(i)); }
    [[nodiscard]] Polynomial sigma(std::size_t k) const {
        return discrel::elementary_symmetric_polynomial(k, neighbors, 2, variables);
    }
    [[nodiscard]] Polynomial sigmas(std::initializer_list<std::size_t> ks, bool plus_one = false) const {
        Polynomial out(2, variables);
        for (auto k : ks) out += sigma(k);
        if (plus_one) out += one();
        return out;
    }
};

// Full Life rule on x0..x9.
inline Polynomial life() {
    Ring r(neighbors_without({}), true, true);
    return r.var(9) + r.var(8) * r.sigmas({7, 6, 3, 2}) + r.sigmas({7, 3});
}

// Relation on the 9 points without x_i.
inline Polynomial r1(int i) {
    Ring r(neighbors_without({i}), true, true);
    return r.var(8) * r.var(9) * r.sigmas({6, 5, 2, 1}) + r.var(9) * r.sigmas({6, 2}, true) +
           r.var(8) * r.sigmas({7, 6, 3, 2});
}

// Relation on the 9 points without x8.
inline Polynomial r2() {
    Ring r(neighbors_without({}), false, true);
    return r.var(9) * r.sigmas({7, 6, 3, 2}, true) + r.sigmas({7, 3});
}

// Relation on the 8 points without x_i, x_j.
inline Polynomial r11(int i, int j) {
    Ring r(neighbors_without({i, j}), true, true);
    return r.var(8) * r.var(9) * r.sigmas({6, 5, 4, 3, 2, 1}, true) + r.var(9) * r.sigmas({6, 5, 3, 2, 1}, true);
}

// Relation on the 8 points without x_i, x8.
inline Polynomial r12(int i) {
    Ring r(neighbors_without({i}), false, true);
    return r.var(9) * r.sigmas({7, 6, 5, 3, 2, 1}, true);
}

// Prime relation on {x_a, x_b, x_c, x_d, x9}.
inline Polynomial prime(int a, int b, int c, int d) {
    Ring r({x(a), x(b), x(c), x(d)}, false, true);
    return r.var(9) * r.sigma(4);
}

// Reduced system, each on the full 10-point ring.
inline Ring full() { return Ring(neighbors_without({}), true, true); }

inline Polynomial on_full(const Ring& sub, const Polynomial& p) {
    // Re-embed a polynomial written over a sub-ring into the 10-point ring.
    const auto f = full();
    Polynomial out(2, f.variables);
    for (const auto& [m, c] : p.terms()) {
        discrel::Monomial big(f.variables.size(), 0);
        for (std::size_t v = 0; v < m.size(); ++v)
            if (m[v]) big[out.index_of(sub.variables[v])] = m[v];
        out.add_term(big, c);
    }
    return out;
}

inline Polynomial reduced_1(int i) {
    Ring r(neighbors_without({i}), true, true);
    return on_full(r, r.var(8) * r.var(9) * r.sigmas({2, 1}) + r.var(9) * r.sigmas({2}, true) +
                          r.var(8) * r.sigmas({7, 6, 3, 2}));
}

inline Polynomial reduced_2() {
    Ring r(neighbors_without({}), false, true);
    return on_full(r, r.var(9) * r.sigmas({3, 2}, true) + r.sigmas({7, 3}));
}

inline Polynomial reduced_11(int i, int j) {
    Ring r(neighbors_without({i, j}), true, true);
    return on_full(r, (r.var(8) * r.var(9) + r.var(9)) * r.sigmas({3, 2, 1}, true));
}

inline Polynomial reduced_12(int i) {
    Ring r(neighbors_without({i}), false, true);
    return on_full(r, r.var(9) * r.sigmas({3, 2, 1}, true));
}

inline Polynomial reduced_prime(int a, int b, int c, int d) {
    Ring r({x(a), x(b), x(c), x(d)}, false, true);
    return on_full(r, r.var(9) * r.sigma(4));
}

} // namespace lifepoly
