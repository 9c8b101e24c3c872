#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "event2vec/events.hpp"

namespace event2vec {

struct TrainConfig {
    int d = 64;                   // embedding dimension (hidden layer size)
    double beta = 2.0;            // penalty on nonzero incidence entries, >= 1
    double alpha = 1e-4;          // L2 weight penalty, >= 0
    double learning_rate = 0.025;
    int epochs = 500;
    int batch_size = 16;
    std::uint64_t seed = 0;
    int depth = 1;                // hidden layers; >1 is experimental
    double min_rel_improvement = 0.0; // optional early stop, 0 disables
};

/// Per-type encoder/decoder weights plus optional shared interior layers
/// (used only when depth > 1).
struct AutoencoderParams {
    std::vector<Eigen::MatrixXd> enc_w; // d x |V^t|
    std::vector<Eigen::VectorXd> enc_b; // d
    std::vector<Eigen::MatrixXd> dec_w; // |V^t| x d
    std::vector<Eigen::VectorXd> dec_b; // |V^t|
    std::vector<Eigen::MatrixXd> mid_enc_w; // d x d, depth-1 of them
    std::vector<Eigen::VectorXd> mid_enc_b;
    std::vector<Eigen::MatrixXd> mid_dec_w;
    std::vector<Eigen::VectorXd> mid_dec_b;

    int dim() const { return enc_b.empty() ? 0 : static_cast<int>(enc_b[0].size()); }
    std::size_t type_count() const { return enc_w.size(); }

    static AutoencoderParams zeros(const std::vector<Eigen::Index>& type_sizes, int d,
                                   int depth = 1);

    AutoencoderParams& axpy(double scale, const AutoencoderParams& other);
    bool all_finite() const;
};

/// Seeded uniform init in [-1/sqrt(fan_in), +1/sqrt(fan_in)] per matrix,
/// zero biases.
AutoencoderParams init_params(const std::vector<Eigen::Index>& type_sizes, int d,
                              std::uint64_t seed, int depth = 1);

double sigmoid(double x);

/// Z_i = sum over types of sigmoid(W_t h_t + b_t); interior layers applied on
/// top when depth > 1.
Eigen::VectorXd encode(const AutoencoderParams& params,
                       const std::vector<Eigen::VectorXd>& columns);

/// Per-type reconstruction sigmoid(W^_t z + b^_t), entries in (0,1).
std::vector<Eigen::VectorXd> decode(const AutoencoderParams& params, const Eigen::VectorXd& z);

/// Weighted reconstruction error of one batch of events plus the L2 weight
/// regularizer; nonzero incidence entries carry weight beta.
double loss(const AutoencoderParams& params, const IncidentMatrices& matrices,
            std::span<const std::size_t> batch, const TrainConfig& config);

/// Exact analytic gradient of loss over the same batch, parameter-shaped.
AutoencoderParams gradients(const AutoencoderParams& params, const IncidentMatrices& matrices,
                            std::span<const std::size_t> batch, const TrainConfig& config);

struct TrainResult {
    AutoencoderParams params;
    Eigen::MatrixXd event_embeddings;            // |Omega| x d, EventSet order
    std::vector<std::pair<int, double>> epoch_loss; // full-set loss after each epoch
};

/// Mini-batch SGD over shuffled events. Deterministic given (config,
/// matrices). Throws DivergenceError on non-finite loss.
TrainResult train(const IncidentMatrices& matrices, const TrainConfig& config);

/// Encode every event column under fixed params.
Eigen::MatrixXd encode_all(const AutoencoderParams& params, const IncidentMatrices& matrices);

} // namespace event2vec
