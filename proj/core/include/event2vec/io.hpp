#pragma once

#include <iosfwd>

#include "event2vec/autoencoder.hpp"
#include "event2vec/object_embedding.hpp"

namespace event2vec {

/// Binary model checkpoint: versioned header (d, depth, per-type sizes,
/// beta, alpha, seed) followed by row-major little-endian f64 parameter
/// blocks. Round-trip is bit-exact.
void save_checkpoint(std::ostream& out, const AutoencoderParams& params,
                     const TrainConfig& config);

struct Checkpoint {
    AutoencoderParams params;
    TrainConfig config; // d, depth, beta, alpha, seed restored from header
};

Checkpoint load_checkpoint(std::istream& in);

/// Text embedding file: "d <tab> N" header, one "type <tab> count" line per
/// type, then "id <tab> type <tab> v1 v2 ..." rows at 17 significant digits.
void write_object_embeddings(std::ostream& out, const ObjectEmbeddings& embeddings);
ObjectEmbeddings read_object_embeddings(std::istream& in);

/// Event embedding rows in EventSet order: "event_id <tab> v1 v2 ...".
void write_event_embeddings(std::ostream& out, const Eigen::MatrixXd& z);

} // namespace event2vec
