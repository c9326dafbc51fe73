#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "discrel/errors.hpp"

namespace discrel {

/// Abstract simplicial complex given by its maximal simplices.
///
/// Simplices are point-name lists kept in the order of `points()`. Vertices
/// that lie in no maximal simplex are isolated; they carry no constraint.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    /// Keeps only the inclusion-maximal candidates (duplicates collapse).
    SimplicialComplex(std::vector<std::string> points, const std::vector<std::vector<std::string>>& candidates)
        : points_(std::move(points)) {
        std::vector<std::vector<std::size_t>> faces;
        for (const auto& c : candidates) faces.push_back(positions(c));
        std::sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() > b.size() : a < b;
        });
        std::vector<std::vector<std::size_t>> kept;
        for (const auto& f : faces) {
            const bool covered = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
                return std::includes(k.begin(), k.end(), f.begin(), f.end());
            });
            if (!covered && !f.empty()) kept.push_back(f);
        }
        std::sort(kept.begin(), kept.end());
        for (const auto& f : kept) {
            std::vector<std::string> names;
            for (auto i : f) names.push_back(points_[i]);
            maximal_.push_back(std::move(names));
        }
    }

    [[nodiscard]] const std::vector<std::string>& points() const noexcept { return points_; }
    [[nodiscard]] const std::vector<std::vector<std::string>>& maximal_simplices() const noexcept { return maximal_; }

    /// Largest simplex dimension (|simplex| - 1); 0 for a complex of isolated vertices.
    [[nodiscard]] std::size_t dimension() const noexcept {
        std::size_t d = 0;
        for (const auto& s : maximal_) d = std::max(d, s.size() - 1);
        return d;
    }

    /// True iff `face` is contained in some maximal simplex (vertices always are).
    [[nodiscard]] bool contains_simplex(const std::vector<std::string>& face) const {
        auto f = positions(face);
        if (f.size() <= 1) return true;
        return std::any_of(maximal_.begin(), maximal_.end(), [&](const auto& s) {
            auto m = positions(s);
            return std::includes(m.begin(), m.end(), f.begin(), f.end());
        });
    }

    [[nodiscard]] std::vector<std::string> isolated_points() const {
        std::vector<std::string> out;
        for (const auto& p : points_) {
            const bool used = std::any_of(maximal_.begin(), maximal_.end(), [&](const auto& s) {
                return std::find(s.begin(), s.end(), p) != s.end();
            });
            if (!used) out.push_back(p);
        }
        return out;
    }

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

  private:
    std::vector<std::size_t> positions(const std::vector<std::string>& names) const {
        std::vector<std::size_t> pos;
        for (const auto& n : names) {
            auto it = std::find(points_.begin(), points_.end(), n);
            if (it == points_.end()) throw DomainError("simplex point '" + n + "' is not a vertex of the complex");
            pos.push_back(static_cast<std::size_t>(it - points_.begin()));
        }
        std::sort(pos.begin(), pos.end());
        pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
        return pos;
    }

    std::vector<std::string> points_;
    std::vector<std::vector<std::string>> maximal_;
};

} // namespace discrel
