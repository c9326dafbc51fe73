#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "discrel/relation.hpp"

namespace discrel {

inline bool is_prime_modulus(std::uint64_t p) noexcept {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

namespace detail {

// Moduli are `unsigned`, so reduced operands multiply without overflow.
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a % p) * (b % p) % p; }

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1U) r = mul_mod(r, b, p);
        b = mul_mod(b, b, p);
        e >>= 1U;
    }
    return r;
}

/// x^e with x^p = x folded in: exponents stay in [0, p).
inline unsigned reduce_exponent(std::uint64_t e, unsigned p) {
    if (e == 0) return 0;
    return static_cast<unsigned>((e - 1) % (p - 1) + 1);
}

} // namespace detail

/// Exponent vector aligned with Polynomial::variables().
using Monomial = std::vector<unsigned>;

/// Graded order, larger total degree first, ties broken lexicographically by
/// variable position (earlier variables dominate). This is also print order.
struct GradedLexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const {
        unsigned da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da > db;
        return a > b;
    }
};

/// Polynomial over GF(p) in normal form: every exponent below p, no zero
/// coefficients. Its zero set is the relation it represents.
class Polynomial {
  public:
    using Terms = std::map<Monomial, std::uint64_t, GradedLexDescending>;

    Polynomial(unsigned p, std::vector<std::string> variables) : p_(p), vars_(std::move(variables)) {
        if (!is_prime_modulus(p_)) throw UnsupportedError("polynomials need a prime modulus, got " + std::to_string(p_));
    }

    static Polynomial constant(unsigned p, std::vector<std::string> variables, std::uint64_t c) {
        Polynomial out(p, std::move(variables));
        out.add_term(Monomial(out.vars_.size(), 0), c);
        return out;
    }
    static Polynomial variable(unsigned p, std::vector<std::string> variables, std::string_view name) {
        Polynomial out(p, std::move(variables));
        Monomial m(out.vars_.size(), 0);
        m[out.index_of(name)] = 1;
        out.add_term(std::move(m), 1);
        return out;
    }

    [[nodiscard]] unsigned modulus() const noexcept { return p_; }
    [[nodiscard]] const std::vector<std::string>& variables() const noexcept { return vars_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

    [[nodiscard]] std::size_t index_of(std::string_view name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) throw DomainError("unknown variable '" + std::string(name) + "'");
        return static_cast<std::size_t>(it - vars_.begin());
    }

    /// Adds c * monomial, reducing exponents and the coefficient mod p.
    void add_term(Monomial m, std::uint64_t c) {
        if (m.size() != vars_.size()) throw DomainError("monomial arity does not match the variable list");
        for (auto& e : m) e = detail::reduce_exponent(e, p_);
        c %= p_;
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second = (it->second + c) % p_;
            if (it->second == 0) terms_.erase(it);
        }
    }

    [[nodiscard]] std::uint64_t evaluate(std::span<const State> values) const {
        if (values.size() != vars_.size())
            throw DomainError("evaluation point has " + std::to_string(values.size()) + " values, polynomial has " +
                              std::to_string(vars_.size()) + " variables");
        std::uint64_t sum = 0;
        for (const auto& [m, c] : terms_) {
            std::uint64_t prod = c;
            for (std::size_t i = 0; i < m.size() && prod; ++i)
                if (m[i]) prod = detail::mul_mod(prod, detail::pow_mod(values[i], m[i], p_), p_);
            sum = (sum + prod) % p_;
        }
        return sum;
    }

    Polynomial& operator+=(const Polynomial& o) {
        require_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        require_compatible(o);
        for (const auto& [m, c] : o.terms_) add_term(m, p_ - c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_compatible(b);
        Polynomial out(a.p_, a.vars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                out.add_term(std::move(m), detail::mul_mod(ca, cb, a.p_));
            }
        return out;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.p_ == b.p_ && a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

  private:
    void require_compatible(const Polynomial& o) const {
        if (p_ != o.p_ || vars_ != o.vars_)
            throw DomainError("polynomials live in different rings (modulus or variable list differ)");
    }

    unsigned p_;
    std::vector<std::string> vars_;
    Terms terms_;
};

/// Characteristic polynomial of R: zero exactly on R and 1 everywhere else,
/// built by multivariate Lagrange interpolation one axis at a time.
inline Polynomial relation_to_polynomial(const Relation& r) {
    const unsigned p = r.states();
    if (!is_prime_modulus(p))
        throw UnsupportedError("polynomial form needs a prime state count, got q = " + std::to_string(p));
    // basis[a][e]: coefficient of x^e in 1 - (x - a)^(p-1).
    std::vector<std::vector<std::uint64_t>> basis(p, std::vector<std::uint64_t>(p, 0));
    {
        // C(p-1, e) = (-1)^e mod p
        std::vector<std::uint64_t> binom(p);
        for (unsigned e = 0; e < p; ++e) binom[e] = e % 2 ? p - 1 : 1;
        for (unsigned a = 0; a < p; ++a) {
            const std::uint64_t minus_a = (p - a) % p;
            for (unsigned e = 0; e < p; ++e) {
                const auto term = detail::mul_mod(binom[e], detail::pow_mod(minus_a, p - 1 - e, p), p);
                basis[a][e] = ((e == 0 ? 1U : 0U) + p - term) % p;
            }
        }
    }
    const auto cells = r.domain().cell_count();
    std::vector<std::uint64_t> coeff(cells);
    for (Ordinal i = 0; i < cells; ++i) coeff[i] = r.contains_ordinal(i) ? 0 : 1;

    std::vector<std::uint64_t> fiber(p);
    Ordinal stride = 1;
    for (std::size_t axis = 0; axis < r.arity(); ++axis, stride *= p) {
        for (Ordinal block = 0; block < cells; block += stride * p) {
            for (Ordinal off = 0; off < stride; ++off) {
                const Ordinal start = block + off;
                for (unsigned e = 0; e < p; ++e) {
                    std::uint64_t acc = 0;
                    for (unsigned a = 0; a < p; ++a)
                        if (coeff[start + a * stride] && basis[a][e])
                            acc = (acc + detail::mul_mod(coeff[start + a * stride], basis[a][e], p)) % p;
                    fiber[e] = acc;
                }
                for (unsigned e = 0; e < p; ++e) coeff[start + e * stride] = fiber[e];
            }
        }
    }

    Polynomial out(p, r.points());
    for (Ordinal i = 0; i < cells; ++i) {
        if (!coeff[i]) continue;
        auto exps = decode_point(i, r.arity(), p);
        out.add_term(Monomial(exps.begin(), exps.end()), coeff[i]);
    }
    return out;
}

/// Zero set of P on `domain`. P's variables must all be points of the domain;
/// domain points P does not mention are unconstrained.
inline Relation polynomial_to_relation(const Polynomial& poly, const Domain& domain) {
    if (domain.states() != poly.modulus())
        throw DomainError("domain has q = " + std::to_string(domain.states()) + " but the polynomial is over GF(" +
                          std::to_string(poly.modulus()) + ")");
    std::vector<std::size_t> pos;
    for (const auto& v : poly.variables()) pos.push_back(domain.index_of(v));
    std::vector<State> values(pos.size());
    return Relation::from_predicate(domain, [&](std::span<const State> t) {
        for (std::size_t i = 0; i < pos.size(); ++i) values[i] = t[pos[i]];
        return poly.evaluate(values) == 0;
    });
}

inline Relation polynomial_to_relation(const Polynomial& poly) {
    return polynomial_to_relation(poly, Domain(poly.variables(), poly.modulus()));
}

inline std::uint64_t eval_polynomial(const Polynomial& poly, std::span<const State> values) {
    return poly.evaluate(values);
}

/// sigma_k(values) mod p: sum over k-subsets of the product of their entries.
inline std::uint64_t elementary_symmetric(std::size_t k, std::span<const State> values, unsigned p) {
    if (k > values.size())
        throw DomainError("elementary symmetric degree " + std::to_string(k) + " exceeds arity " +
                          std::to_string(values.size()));
    std::vector<std::uint64_t> e(k + 1, 0);
    e[0] = 1 % p;
    for (auto v : values)
        for (std::size_t j = k; j >= 1; --j) e[j] = (e[j] + detail::mul_mod(e[j - 1], v, p)) % p;
    return e[k];
}

/// sigma_k over the named subset of a polynomial ring's variables.
inline Polynomial elementary_symmetric_polynomial(std::size_t k, const std::vector<std::string>& over, unsigned p,
                                                  const std::vector<std::string>& variables) {
    if (k > over.size())
        throw DomainError("elementary symmetric degree " + std::to_string(k) + " exceeds " +
                          std::to_string(over.size()) + " variables");
    Polynomial out(p, variables);
    std::vector<std::size_t> idx;
    for (const auto& v : over) idx.push_back(out.index_of(v));
    std::vector<bool> pick(over.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        Monomial m(variables.size(), 0);
        for (std::size_t i = 0; i < pick.size(); ++i)
            if (pick[i]) m[idx[i]] += 1;
        out.add_term(std::move(m), 1);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Text form

namespace detail {

inline bool single_char_names(const std::vector<std::string>& vars) {
    return std::all_of(vars.begin(), vars.end(), [](const std::string& v) { return v.size() == 1; });
}

inline std::string monomial_text(const Monomial& m, const std::vector<std::string>& vars, bool compact) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!out.empty() && !compact) out += '*';
        out += vars[i];
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

inline std::string term_text(const Monomial& m, std::uint64_t c, const std::vector<std::string>& vars, bool compact) {
    auto mono = monomial_text(m, vars, compact);
    if (mono.empty()) return std::to_string(c);
    if (c == 1) return mono;
    return std::to_string(c) + (compact ? "" : "*") + mono;
}

} // namespace detail

/// Expanded normal form, terms in graded lexicographic order joined by '+'.
/// Variables are concatenated when every name is one character (`qr+p+q`),
/// joined by '*' otherwise (`x8*x9+x9`).
inline std::string to_string(const Polynomial& poly) {
    if (poly.is_zero()) return "0";
    const bool compact = detail::single_char_names(poly.variables());
    std::string out;
    for (const auto& [m, c] : poly.terms()) {
        if (!out.empty()) out += '+';
        out += detail::term_text(m, c, poly.variables(), compact);
    }
    return out;
}

/// Display form that folds complete elementary symmetric sums over the
/// `symmetric` variables into `sigmaK`, grouped by the remaining factor:
/// `x8*(sigma7+sigma6) + x9 + sigma3`. Display only; terms that do not form a
/// complete sum are printed as plain monomials.
inline std::string to_symmetric_string(const Polynomial& poly, const std::vector<std::string>& symmetric) {
    if (poly.is_zero()) return "0";
    const auto& vars = poly.variables();
    std::vector<bool> is_sym(vars.size(), false);
    std::size_t n = 0;
    for (const auto& s : symmetric) {
        auto it = std::find(vars.begin(), vars.end(), s);
        if (it != vars.end() && !is_sym[static_cast<std::size_t>(it - vars.begin())]) {
            is_sym[static_cast<std::size_t>(it - vars.begin())] = true;
            ++n;
        }
    }
    const bool compact = detail::single_char_names(vars);
    auto choose = [](std::size_t a, std::size_t b) {
        std::uint64_t r = 1;
        for (std::size_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };

    // rest monomial -> degree in symmetric vars -> terms
    struct Bucket {
        std::map<std::size_t, std::vector<std::pair<Monomial, std::uint64_t>>, std::greater<>> by_degree;
        std::vector<std::pair<Monomial, std::uint64_t>> loose;
    };
    std::map<Monomial, Bucket, GradedLexDescending> groups;
    for (const auto& [m, c] : poly.terms()) {
        Monomial rest = m;
        std::size_t degree = 0;
        bool multilinear = true;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!is_sym[i]) continue;
            rest[i] = 0;
            degree += m[i];
            multilinear = multilinear && m[i] <= 1;
        }
        if (multilinear)
            groups[rest].by_degree[degree].emplace_back(m, c);
        else
            groups[rest].loose.emplace_back(m, c);
    }

    std::vector<std::string> pieces;
    for (auto& [rest, bucket] : groups) {
        std::vector<std::string> items;
        std::vector<std::pair<Monomial, std::uint64_t>> raw;
        for (auto& [degree, list] : bucket.by_degree) {
            const bool complete = n > 0 && list.size() == choose(n, degree) &&
                                  std::all_of(list.begin(), list.end(), [&](const auto& t) {
                                      return t.second == list.front().second;
                                  });
            if (complete) {
                const auto c = list.front().second;
                const std::string sigma = degree == 0 ? "1" : "sigma" + std::to_string(degree);
                items.push_back(c == 1 ? sigma : std::to_string(c) + "*" + sigma);
            } else {
                raw.insert(raw.end(), list.begin(), list.end());
            }
        }
        raw.insert(raw.end(), bucket.loose.begin(), bucket.loose.end());
        const auto rest_text = detail::monomial_text(rest, vars, compact);
        if (!items.empty()) {
            if (rest_text.empty()) {
                pieces.insert(pieces.end(), items.begin(), items.end());
            } else if (items.size() == 1) {
                pieces.push_back(items.front() == "1" ? rest_text : rest_text + "*" + items.front());
            } else {
                std::string joined;
                for (const auto& it : items) joined += (joined.empty() ? "" : "+") + it;
                pieces.push_back(rest_text + "*(" + joined + ")");
            }
        }
        for (const auto& [m, c] : raw) pieces.push_back(detail::term_text(m, c, vars, compact));
    }
    std::string out;
    for (const auto& p : pieces) out += (out.empty() ? "" : " + ") + p;
    return out;
}

/// Parses sums of monomials such as `pqr+qr+s+r+q`, `x8*x9 + 2x1^2`, `1`, `0`.
/// Variable names inside a monomial are matched longest-first against
/// `variables`; `*` and spaces between factors are optional. `-` subtracts.
inline Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables, unsigned p) {
    Polynomial out(p, variables);
    std::vector<std::size_t> by_length(variables.size());
    for (std::size_t i = 0; i < by_length.size(); ++i) by_length[i] = i;
    std::stable_sort(by_length.begin(), by_length.end(),
                     [&](auto a, auto b) { return variables[a].size() > variables[b].size(); });

    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto read_int = [&]() -> std::uint64_t {
        std::uint64_t v = 0;
        const auto start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (v > 100'000'000'000'000'000ULL) throw FormatError("number too large at offset " + std::to_string(start));
            v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
        }
        if (pos == start) throw FormatError("expected a number at offset " + std::to_string(start));
        return v;
    };
    auto fail = [&](const std::string& msg) -> void {
        throw FormatError(msg + " at offset " + std::to_string(pos) + " in '" + std::string(text) + "'");
    };

    bool negate = false;
    skip_space();
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negate = text[pos++] == '-';
    while (true) {
        skip_space();
        std::uint64_t coeff = 1;
        Monomial m(variables.size(), 0);
        bool any = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = read_int() % p;
            any = true;
        }
        while (true) {
            skip_space();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                skip_space();
            }
            if (pos >= text.size() || text[pos] == '+' || text[pos] == '-') break;
            bool matched = false;
            for (auto i : by_length) {
                const auto& v = variables[i];
                if (text.substr(pos, v.size()) == v) {
                    pos += v.size();
                    std::uint64_t e = 1;
                    skip_space();
                    if (pos < text.size() && text[pos] == '^') {
                        ++pos;
                        skip_space();
                        e = read_int();
                    }
                    m[i] = detail::reduce_exponent(m[i] + e, p);
                    matched = true;
                    any = true;
                    break;
                }
            }
            if (!matched) {
                if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    coeff = detail::mul_mod(coeff, read_int() % p, p);
                    any = true;
                    continue;
                }
                fail("unknown variable or symbol");
            }
        }
        if (!any) fail("empty term");
        out.add_term(std::move(m), negate ? (p - coeff % p) % p : coeff);
        if (pos >= text.size()) break;
        negate = text[pos++] == '-';
    }
    return out;
}

} // namespace discrel
