#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace mol {

/// Parameters of the quasi-uniform map x = c * eta / (d - eta).
///
/// The uniform mesh eta_n = n / N, n = 0..N, is mapped to [0, c / (d - 1)];
/// one extra point eta_tail is appended and its image is the truncation
/// point L = c * eta_tail / (d - eta_tail).
struct GridSpec {
    std::size_t n_interior = 100;
    double c = 110.0;
    double d = 1.2;
    double eta_tail = 1.1;
    /// Spots that must appear as exact nodes (typically S0).
    std::vector<double> eval_points;

    /// Truncation point L.
    double truncation() const { return c * eta_tail / (d - eta_tail); }

    /// Throws DomainError when an invariant is violated.
    void validate() const;
};

/// Immutable spatial mesh x_0 = 0 < x_1 < ... < x_M < x_{M+1} = L.
///
/// Nodes 1..M are the unknowns of the semi-discrete system; nodes 0 and
/// M + 1 carry the frozen boundary values.
class Mesh {
public:
    /// Validates monotonicity and that every eval point maps to its node.
    Mesh(std::vector<double> nodes, std::map<double, std::size_t> eval_indices,
         std::vector<bool> inserted);

    std::span<const double> nodes() const { return nodes_; }
    double node(std::size_t i) const { return nodes_.at(i); }

    /// Number of interior nodes M.
    std::size_t interior_size() const { return nodes_.size() - 2; }

    /// h_i = x_i - x_{i-1}, valid for i = 1..M+1.
    double spacing(std::size_t i) const;

    /// Truncation point L = x_{M+1}.
    double length() const { return nodes_.back(); }

    /// Node index (into nodes()) of each requested eval point.
    const std::map<double, std::size_t>& eval_indices() const { return eval_indices_; }

    /// Node index of an eval point; throws DomainError for unknown points.
    std::size_t eval_index(double point) const;

    /// Position of an eval point inside the interior value vector (node index - 1).
    std::size_t interior_index(double point) const { return eval_index(point) - 1; }

    /// True when node i was inserted for an eval point rather than generated
    /// by the map.
    bool is_inserted(std::size_t i) const { return inserted_.at(i); }

private:
    std::vector<double> nodes_;
    std::map<double, std::size_t> eval_indices_;
    std::vector<bool> inserted_;
};

/// Builds the truncated quasi-uniform mesh described by spec, inserting the
/// eval points at their sorted positions. An eval point within 1e-12
/// (relative) of a generated node reuses that node.
Mesh build_mesh(const GridSpec& spec);

/// Uniform mesh of n_interior interior nodes on [0, length]; the identity-map
/// counterpart of build_mesh, used to check the stencils' uniform limit.
Mesh build_uniform_mesh(std::size_t n_interior, double length,
                        const std::vector<double>& eval_points = {});

} // namespace mol
