#include "event2vec/object_embedding.hpp"

#include <algorithm>
#include <cmath>

#include "event2vec/errors.hpp"

namespace event2vec {

bool ObjectEmbeddings::is_excluded(const NodeRef& node) const {
    return std::find(excluded.begin(), excluded.end(), node) != excluded.end();
}

std::optional<Eigen::VectorXd> ObjectEmbeddings::vector_of(const NodeRef& node) const {
    for (std::size_t t = 0; t < types.size(); ++t) {
        if (types[t] != node.type) continue;
        auto it = std::find(nodes[t].begin(), nodes[t].end(), node);
        if (it == nodes[t].end()) return std::nullopt;
        return Eigen::VectorXd(y[t].row(it - nodes[t].begin()));
    }
    return std::nullopt;
}

ObjectEmbeddings object_embeddings(const Eigen::MatrixXd& z, const IncidentMatrices& matrices) {
    if (static_cast<std::size_t>(z.rows()) != matrices.event_count())
        throw ShapeError("event embedding rows != event count");
    ObjectEmbeddings out;
    out.types = matrices.types;
    out.nodes = matrices.nodes;
    for (std::size_t t = 0; t < matrices.h.size(); ++t) {
        // Y^t = (D_v^t)^-1 H^t Z, pseudo-inverse convention on zero-degree rows
        Eigen::MatrixXd yt = matrices.h[t] * z;
        for (Eigen::Index r = 0; r < yt.rows(); ++r) {
            double deg = matrices.degree[t](r);
            if (deg > 0.0) {
                yt.row(r) /= deg;
            } else {
                yt.row(r).setZero();
                out.excluded.push_back(matrices.nodes[t][static_cast<std::size_t>(r)]);
            }
        }
        out.y.push_back(std::move(yt));
    }
    return out;
}

double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    double nu = u.norm();
    double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) throw EvalError("cosine of a zero-norm vector is undefined");
    return u.dot(v) / (nu * nv);
}

} // namespace event2vec
