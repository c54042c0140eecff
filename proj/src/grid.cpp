#include "molpricer/grid.hpp"

#include "molpricer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mol {

namespace {

constexpr double kDuplicateTolerance = 1e-12;

bool same_node(double a, double b)
{
    return std::abs(a - b) <= kDuplicateTolerance * std::max(std::abs(a), std::abs(b));
}

// Inserts each eval point into the (sorted) generated nodes. Points that land
// on an existing node snap that node to the requested value.
Mesh insert_eval_points(std::vector<double> generated, const std::vector<double>& points)
{
    const double length = generated.back();
    std::vector<bool> inserted(generated.size(), false);

    for (double p : points) {
        if (!(p > 0.0 && p < length)) {
            std::ostringstream msg;
            msg << "eval point " << p << " outside (0, " << length << ")";
            throw DomainError(msg.str());
        }
        auto it = std::lower_bound(generated.begin(), generated.end(), p);
        auto pos = static_cast<std::size_t>(it - generated.begin());
        if (pos < generated.size() && same_node(generated[pos], p)) {
            generated[pos] = p;
        } else if (pos > 0 && same_node(generated[pos - 1], p)) {
            generated[pos - 1] = p;
        } else {
            generated.insert(it, p);
            inserted.insert(inserted.begin() + static_cast<std::ptrdiff_t>(pos), true);
        }
    }

    std::map<double, std::size_t> indices;
    for (double p : points) {
        auto it = std::lower_bound(generated.begin(), generated.end(), p);
        indices[p] = static_cast<std::size_t>(it - generated.begin());
    }
    return Mesh(std::move(generated), std::move(indices), std::move(inserted));
}

} // namespace

void GridSpec::validate() const
{
    if (n_interior < 1)
        throw DomainError("grid needs at least one interior node");
    if (!(c > 0.0))
        throw DomainError("grid parameter c must be positive");
    if (!(d > 1.0))
        throw DomainError("grid parameter d must exceed 1");
    if (!(eta_tail > 1.0 && eta_tail < d))
        throw DomainError("eta_tail must lie in (1, d)");
    const double length = truncation();
    for (double p : eval_points) {
        if (!(p > 0.0 && p < length)) {
            std::ostringstream msg;
            msg << "eval point " << p << " outside (0, " << length << ")";
            throw DomainError(msg.str());
        }
    }
}

Mesh::Mesh(std::vector<double> nodes, std::map<double, std::size_t> eval_indices,
           std::vector<bool> inserted)
    : nodes_(std::move(nodes)), eval_indices_(std::move(eval_indices)), inserted_(std::move(inserted))
{
    if (nodes_.size() < 3)
        throw DomainError("mesh needs at least one interior node");
    if (inserted_.size() != nodes_.size())
        throw DomainError("mesh insertion flags do not match node count");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!(nodes_[i] > nodes_[i - 1]))
            throw DomainError("mesh nodes must be strictly increasing");
    }
    for (const auto& [point, index] : eval_indices_) {
        if (index == 0 || index + 1 >= nodes_.size() || nodes_[index] != point)
            throw DomainError("eval point is not an interior node");
    }
}

double Mesh::spacing(std::size_t i) const
{
    if (i == 0 || i >= nodes_.size())
        throw DomainError("spacing index out of range");
    return nodes_[i] - nodes_[i - 1];
}

std::size_t Mesh::eval_index(double point) const
{
    auto it = eval_indices_.find(point);
    if (it == eval_indices_.end()) {
        std::ostringstream msg;
        msg << point << " is not an eval point of this mesh";
        throw DomainError(msg.str());
    }
    return it->second;
}

Mesh build_mesh(const GridSpec& spec)
{
    spec.validate();
    const auto n = spec.n_interior;
    std::vector<double> nodes(n + 2);
    for (std::size_t i = 0; i <= n; ++i) {
        const double eta = static_cast<double>(i) / static_cast<double>(n);
        nodes[i] = spec.c * eta / (spec.d - eta);
    }
    nodes[n + 1] = spec.truncation();
    return insert_eval_points(std::move(nodes), spec.eval_points);
}

Mesh build_uniform_mesh(std::size_t n_interior, double length, const std::vector<double>& eval_points)
{
    if (n_interior < 1)
        throw DomainError("grid needs at least one interior node");
    if (!(length > 0.0))
        throw DomainError("uniform mesh length must be positive");
    std::vector<double> nodes(n_interior + 2);
    const double h = length / static_cast<double>(n_interior + 1);
    for (std::size_t i = 0; i < nodes.size(); ++i)
        nodes[i] = h * static_cast<double>(i);
    nodes.back() = length;
    return insert_eval_points(std::move(nodes), eval_points);
}

} // namespace mol
