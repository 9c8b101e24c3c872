#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "event2vec/events.hpp"

namespace event2vec {

/// Per-type object embedding matrices, row-aligned with IncidentMatrices
/// node order. Objects in no event get an all-zero row and appear in
/// `excluded`; evaluation skips them.
struct ObjectEmbeddings {
    std::vector<std::string> types;
    std::vector<std::vector<NodeRef>> nodes;
    std::vector<Eigen::MatrixXd> y; // |V^t| x d
    std::vector<NodeRef> excluded;

    int dim() const { return y.empty() ? 0 : static_cast<int>(y[0].cols()); }
    bool is_excluded(const NodeRef& node) const;

    /// Row for one object, or nullopt if the object is unknown.
    std::optional<Eigen::VectorXd> vector_of(const NodeRef& node) const;
};

/// Y^t = (D_v^t)^-1 H^t Z per type, with zero-degree rows set to zero and
/// listed in `excluded`.
ObjectEmbeddings object_embeddings(const Eigen::MatrixXd& z, const IncidentMatrices& matrices);

/// Standard cosine similarity. Throws EvalError on a zero-norm vector.
double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

} // namespace event2vec
