#pragma once

#include <cctype>
#include <optional>
#include <span>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "discrel/relation.hpp"

namespace discrel {

// Relation text format
// --------------------
// A file holds one or more records separated by blank lines. Each record is a
// list of `key = value` lines; `#` starts a comment line.
//
//     # rule 90, reduced
//     q = 2
//     points = p r s
//     bits = 10010110
//
// Required keys: `q`, `points` (names separated by spaces or commas) and
// exactly one of `bits` (q^k characters over {0,1}, ordinal 0 first) or
// `bits_hex`. In `bits_hex` every hex digit covers four consecutive ordinals,
// the most significant bit of the first digit being ordinal 0; the last digit
// is zero-padded. Any other key is kept verbatim as a record attribute.

/// A parsed record: the relation plus every non-structural key, in file order.
struct RelationRecord {
    std::vector<std::pair<std::string, std::string>> attributes;
    Relation relation;

    [[nodiscard]] const std::string* attribute(std::string_view key) const {
        for (const auto& [k, v] : attributes)
            if (k == key) return &v;
        return nullptr;
    }
};

inline std::string to_hex(const BitTable& bits) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) nibble = (nibble << 1) | ((i + j < bits.size() && bits.test(i + j)) ? 1U : 0U);
        out.push_back(digits[nibble]);
    }
    return out;
}

inline BitTable from_hex(std::string_view hex, std::size_t size) {
    if (hex.size() != (size + 3) / 4)
        throw FormatError("bits_hex has " + std::to_string(hex.size()) + " digits, expected " +
                          std::to_string((size + 3) / 4));
    BitTable bits(size);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[d])));
        unsigned nibble;
        if (c >= '0' && c <= '9')
            nibble = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            nibble = static_cast<unsigned>(c - 'a' + 10);
        else
            throw FormatError("bits_hex contains non-hex character '" + std::string(1, hex[d]) + "'");
        for (std::size_t j = 0; j < 4; ++j) {
            const bool bit = (nibble >> (3 - j)) & 1U;
            const std::size_t i = d * 4 + j;
            if (i < size)
                bits.set(i, bit);
            else if (bit)
                throw FormatError("bits_hex padding bits must be zero");
        }
    }
    return bits;
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace detail

/// Splits "a, b c" into names; used for `points` values and CLI face lists.
inline std::vector<std::string> split_names(std::string_view text) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) names.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) names.push_back(std::move(cur));
    return names;
}

inline std::vector<RelationRecord> read_relations(std::istream& in, std::uint64_t max_cells = default_max_cells) {
    std::vector<RelationRecord> records;
    struct Pending {
        std::vector<std::pair<std::string, std::string>> attrs;
        std::string q, points, bits, hex;
        std::size_t first_line = 0, q_line = 0, points_line = 0, bits_line = 0;
    } cur;

    auto flush = [&] {
        if (cur.first_line == 0) return;
        const auto at = cur.first_line;
        if (cur.q.empty()) throw FormatError("record is missing field 'q'", at);
        if (cur.points_line == 0) throw FormatError("record is missing field 'points'", at);
        if (cur.bits.empty() == cur.hex.empty())
            throw FormatError("record needs exactly one of 'bits' or 'bits_hex'", at);
        unsigned long q = 0;
        try {
            std::size_t used = 0;
            q = std::stoul(cur.q, &used);
            if (used != cur.q.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw FormatError("field 'q' is not an integer: '" + cur.q + "'", cur.q_line);
        }
        std::optional<Domain> domain;
        try {
            domain.emplace(split_names(cur.points), static_cast<unsigned>(q), max_cells);
        } catch (const DomainError& e) {
            throw FormatError(std::string("field 'points': ") + e.what(), cur.points_line);
        }
        BitTable bits;
        try {
            bits = cur.hex.empty() ? BitTable::from_string(cur.bits) : from_hex(cur.hex, domain->cell_count());
        } catch (const FormatError& e) {
            throw FormatError(std::string("field 'bits': ") + e.what(), cur.bits_line);
        }
        if (bits.size() != domain->cell_count())
            throw FormatError("field 'bits' has length " + std::to_string(bits.size()) + ", expected q^k = " +
                                  std::to_string(domain->cell_count()),
                              cur.bits_line);
        records.push_back({std::move(cur.attrs), Relation(std::move(*domain), std::move(bits))});
        cur = Pending{};
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto text = detail::trim(line);
        if (text.empty()) {
            flush();
            continue;
        }
        if (text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw FormatError("expected 'key = value', got '" + text + "'", lineno);
        auto key = detail::trim(std::string_view(text).substr(0, eq));
        auto value = detail::trim(std::string_view(text).substr(eq + 1));
        if (!is_point_name(key)) throw FormatError("invalid key '" + key + "'", lineno);
        if (cur.first_line == 0) cur.first_line = lineno;
        auto once = [&](std::string& slot, std::size_t& where) {
            if (where != 0) throw FormatError("duplicate field '" + key + "'", lineno);
            slot = std::move(value);
            where = lineno;
        };
        if (key == "q") {
            once(cur.q, cur.q_line);
        } else if (key == "points") {
            once(cur.points, cur.points_line);
        } else if (key == "bits" || key == "bits_hex") {
            if (cur.bits_line != 0) throw FormatError("duplicate bit table field", lineno);
            if (value.empty()) throw FormatError("field '" + key + "' is empty", lineno);
            (key == "bits" ? cur.bits : cur.hex) = std::move(value);
            cur.bits_line = lineno;
        } else {
            cur.attrs.emplace_back(std::move(key), std::move(value));
        }
    }
    flush();
    return records;
}

inline std::vector<RelationRecord> parse_relations(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_relations(in);
}

/// Reads exactly one relation from a file.
inline Relation load_relation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    auto records = read_relations(in);
    if (records.size() != 1)
        throw FormatError("'" + path + "' holds " + std::to_string(records.size()) + " records, expected 1");
    return std::move(records.front().relation);
}

enum class BitEncoding { binary, hex };

inline void write_relation(std::ostream& out, const Relation& r,
                           std::span<const std::pair<std::string, std::string>> attributes = {},
                           BitEncoding encoding = BitEncoding::binary) {
    for (const auto& [k, v] : attributes) out << k << " = " << v << '\n';
    out << "q = " << r.states() << '\n' << "points =";
    for (const auto& p : r.points()) out << ' ' << p;
    out << '\n';
    if (encoding == BitEncoding::hex)
        out << "bits_hex = " << to_hex(r.bits()) << '\n';
    else
        out << "bits = " << r.to_string() << '\n';
}

} // namespace discrel
