#include "event2vec/autoencoder.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "event2vec/errors.hpp"

namespace event2vec {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

namespace {

Eigen::VectorXd sigmoid_vec(const Eigen::VectorXd& x) {
    return x.unaryExpr([](double v) { return sigmoid(v); });
}

// Uniform in [0,1) from the top 53 bits; identical across platforms.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void fill_uniform(Eigen::MatrixXd& m, double bound, std::mt19937_64& rng) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            m(i, j) = bound * (2.0 * uniform01(rng) - 1.0);
}

struct Forward {
    std::vector<Eigen::VectorXd> branch;   // sigmoid(W_t h_t + b_t), per type
    std::vector<Eigen::VectorXd> enc_mid;  // hidden stack activations, enc_mid[0] = branch sum
    std::vector<Eigen::VectorXd> dec_mid;  // decoder-side stack, dec_mid[0] = embedding
    std::vector<Eigen::VectorXd> recon;    // per-type reconstructions

    const Eigen::VectorXd& embedding() const { return enc_mid.back(); }
};

Forward forward_pass(const AutoencoderParams& p, const std::vector<Eigen::VectorXd>& cols) {
    if (cols.size() != p.type_count()) throw ShapeError("column count != type count");
    Forward f;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(p.dim());
    for (std::size_t t = 0; t < cols.size(); ++t) {
        if (cols[t].size() != p.enc_w[t].cols())
            throw ShapeError("type " + std::to_string(t) + ": column length " +
                             std::to_string(cols[t].size()) + " != " +
                             std::to_string(p.enc_w[t].cols()));
        f.branch.push_back(sigmoid_vec(p.enc_w[t] * cols[t] + p.enc_b[t]));
        sum += f.branch.back();
    }
    f.enc_mid.push_back(std::move(sum));
    for (std::size_t l = 0; l < p.mid_enc_w.size(); ++l)
        f.enc_mid.push_back(sigmoid_vec(p.mid_enc_w[l] * f.enc_mid.back() + p.mid_enc_b[l]));
    f.dec_mid.push_back(f.enc_mid.back());
    for (std::size_t l = 0; l < p.mid_dec_w.size(); ++l)
        f.dec_mid.push_back(sigmoid_vec(p.mid_dec_w[l] * f.dec_mid.back() + p.mid_dec_b[l]));
    for (std::size_t t = 0; t < cols.size(); ++t)
        f.recon.push_back(sigmoid_vec(p.dec_w[t] * f.dec_mid.back() + p.dec_b[t]));
    return f;
}

// lambda_j = beta where the incidence entry is nonzero, 1 elsewhere
Eigen::VectorXd penalty_weights(const Eigen::VectorXd& column, double beta) {
    return column.unaryExpr([beta](double v) { return v != 0.0 ? beta : 1.0; });
}

} // namespace

AutoencoderParams AutoencoderParams::zeros(const std::vector<Eigen::Index>& type_sizes, int d,
                                           int depth) {
    AutoencoderParams p;
    for (auto n : type_sizes) {
        p.enc_w.push_back(Eigen::MatrixXd::Zero(d, n));
        p.enc_b.push_back(Eigen::VectorXd::Zero(d));
        p.dec_w.push_back(Eigen::MatrixXd::Zero(n, d));
        p.dec_b.push_back(Eigen::VectorXd::Zero(n));
    }
    for (int l = 1; l < depth; ++l) {
        p.mid_enc_w.push_back(Eigen::MatrixXd::Zero(d, d));
        p.mid_enc_b.push_back(Eigen::VectorXd::Zero(d));
        p.mid_dec_w.push_back(Eigen::MatrixXd::Zero(d, d));
        p.mid_dec_b.push_back(Eigen::VectorXd::Zero(d));
    }
    return p;
}

AutoencoderParams& AutoencoderParams::axpy(double scale, const AutoencoderParams& o) {
    for (std::size_t t = 0; t < enc_w.size(); ++t) {
        enc_w[t] += scale * o.enc_w[t];
        enc_b[t] += scale * o.enc_b[t];
        dec_w[t] += scale * o.dec_w[t];
        dec_b[t] += scale * o.dec_b[t];
    }
    for (std::size_t l = 0; l < mid_enc_w.size(); ++l) {
        mid_enc_w[l] += scale * o.mid_enc_w[l];
        mid_enc_b[l] += scale * o.mid_enc_b[l];
        mid_dec_w[l] += scale * o.mid_dec_w[l];
        mid_dec_b[l] += scale * o.mid_dec_b[l];
    }
    return *this;
}

bool AutoencoderParams::all_finite() const {
    auto ok = [](const auto& m) { return m.allFinite(); };
    for (std::size_t t = 0; t < enc_w.size(); ++t)
        if (!ok(enc_w[t]) || !ok(enc_b[t]) || !ok(dec_w[t]) || !ok(dec_b[t])) return false;
    for (std::size_t l = 0; l < mid_enc_w.size(); ++l)
        if (!ok(mid_enc_w[l]) || !ok(mid_enc_b[l]) || !ok(mid_dec_w[l]) || !ok(mid_dec_b[l]))
            return false;
    return true;
}

AutoencoderParams init_params(const std::vector<Eigen::Index>& type_sizes, int d,
                              std::uint64_t seed, int depth) {
    AutoencoderParams p = AutoencoderParams::zeros(type_sizes, d, depth);
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < type_sizes.size(); ++t) {
        double fan_in = std::max<double>(1.0, static_cast<double>(type_sizes[t]));
        fill_uniform(p.enc_w[t], 1.0 / std::sqrt(fan_in), rng);
        fill_uniform(p.dec_w[t], 1.0 / std::sqrt(static_cast<double>(d)), rng);
    }
    for (std::size_t l = 0; l < p.mid_enc_w.size(); ++l) {
        fill_uniform(p.mid_enc_w[l], 1.0 / std::sqrt(static_cast<double>(d)), rng);
        fill_uniform(p.mid_dec_w[l], 1.0 / std::sqrt(static_cast<double>(d)), rng);
    }
    return p;
}

Eigen::VectorXd encode(const AutoencoderParams& params,
                       const std::vector<Eigen::VectorXd>& columns) {
    Forward f = forward_pass(params, columns);
    return f.embedding();
}

std::vector<Eigen::VectorXd> decode(const AutoencoderParams& params, const Eigen::VectorXd& z) {
    if (z.size() != params.dim()) throw ShapeError("embedding length != d");
    Eigen::VectorXd cur = z;
    for (std::size_t l = 0; l < params.mid_dec_w.size(); ++l)
        cur = sigmoid_vec(params.mid_dec_w[l] * cur + params.mid_dec_b[l]);
    std::vector<Eigen::VectorXd> out;
    for (std::size_t t = 0; t < params.type_count(); ++t)
        out.push_back(sigmoid_vec(params.dec_w[t] * cur + params.dec_b[t]));
    return out;
}

double loss(const AutoencoderParams& params, const IncidentMatrices& matrices,
            std::span<const std::size_t> batch, const TrainConfig& config) {
    double total = 0.0;
    for (auto i : batch) {
        auto cols = matrices.event_columns(i);
        Forward f = forward_pass(params, cols);
        for (std::size_t t = 0; t < cols.size(); ++t) {
            Eigen::VectorXd weighted =
                (cols[t] - f.recon[t]).cwiseProduct(penalty_weights(cols[t], config.beta));
            total += weighted.squaredNorm();
        }
    }
    for (std::size_t t = 0; t < params.type_count(); ++t)
        total += config.alpha * (params.enc_w[t].squaredNorm() + params.dec_w[t].squaredNorm());
    for (std::size_t l = 0; l < params.mid_enc_w.size(); ++l)
        total += config.alpha *
                 (params.mid_enc_w[l].squaredNorm() + params.mid_dec_w[l].squaredNorm());
    return total;
}

AutoencoderParams gradients(const AutoencoderParams& params, const IncidentMatrices& matrices,
                            std::span<const std::size_t> batch, const TrainConfig& config) {
    AutoencoderParams g =
        AutoencoderParams::zeros(matrices.type_sizes(), params.dim(),
                                 static_cast<int>(params.mid_enc_w.size()) + 1);
    for (auto i : batch) {
        auto cols = matrices.event_columns(i);
        Forward f = forward_pass(params, cols);

        // output layer
        Eigen::VectorXd d_dec_in = Eigen::VectorXd::Zero(params.dim());
        for (std::size_t t = 0; t < cols.size(); ++t) {
            Eigen::VectorXd lam2 =
                penalty_weights(cols[t], config.beta).array().square().matrix();
            Eigen::VectorXd d_recon = 2.0 * lam2.cwiseProduct(f.recon[t] - cols[t]);
            Eigen::VectorXd d_pre = d_recon.cwiseProduct(
                f.recon[t].cwiseProduct(Eigen::VectorXd::Ones(f.recon[t].size()) - f.recon[t]));
            g.dec_w[t] += d_pre * f.dec_mid.back().transpose();
            g.dec_b[t] += d_pre;
            d_dec_in += params.dec_w[t].transpose() * d_pre;
        }

        // decoder-side interior stack
        for (std::size_t l = params.mid_dec_w.size(); l-- > 0;) {
            const Eigen::VectorXd& act = f.dec_mid[l + 1];
            Eigen::VectorXd d_pre = d_dec_in.cwiseProduct(
                act.cwiseProduct(Eigen::VectorXd::Ones(act.size()) - act));
            g.mid_dec_w[l] += d_pre * f.dec_mid[l].transpose();
            g.mid_dec_b[l] += d_pre;
            d_dec_in = params.mid_dec_w[l].transpose() * d_pre;
        }

        // encoder-side interior stack
        Eigen::VectorXd d_enc = d_dec_in;
        for (std::size_t l = params.mid_enc_w.size(); l-- > 0;) {
            const Eigen::VectorXd& act = f.enc_mid[l + 1];
            Eigen::VectorXd d_pre =
                d_enc.cwiseProduct(act.cwiseProduct(Eigen::VectorXd::Ones(act.size()) - act));
            g.mid_enc_w[l] += d_pre * f.enc_mid[l].transpose();
            g.mid_enc_b[l] += d_pre;
            d_enc = params.mid_enc_w[l].transpose() * d_pre;
        }

        // per-type encoder branches; the branch sum passes d_enc through unchanged
        for (std::size_t t = 0; t < cols.size(); ++t) {
            const Eigen::VectorXd& act = f.branch[t];
            Eigen::VectorXd d_pre =
                d_enc.cwiseProduct(act.cwiseProduct(Eigen::VectorXd::Ones(act.size()) - act));
            g.enc_w[t] += d_pre * cols[t].transpose();
            g.enc_b[t] += d_pre;
        }
    }

    for (std::size_t t = 0; t < params.type_count(); ++t) {
        g.enc_w[t] += 2.0 * config.alpha * params.enc_w[t];
        g.dec_w[t] += 2.0 * config.alpha * params.dec_w[t];
    }
    for (std::size_t l = 0; l < params.mid_enc_w.size(); ++l) {
        g.mid_enc_w[l] += 2.0 * config.alpha * params.mid_enc_w[l];
        g.mid_dec_w[l] += 2.0 * config.alpha * params.mid_dec_w[l];
    }
    return g;
}

Eigen::MatrixXd encode_all(const AutoencoderParams& params, const IncidentMatrices& matrices) {
    const auto n = matrices.event_count();
    Eigen::MatrixXd z(static_cast<Eigen::Index>(n), params.dim());
    for (std::size_t i = 0; i < n; ++i)
        z.row(static_cast<Eigen::Index>(i)) = encode(params, matrices.event_columns(i));
    return z;
}

TrainResult train(const IncidentMatrices& matrices, const TrainConfig& config) {
    const auto n = matrices.event_count();
    if (n == 0) throw ShapeError("cannot train on an empty event set");

    AutoencoderParams params =
        init_params(matrices.type_sizes(), config.d, config.seed, config.depth);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(config.seed);

    TrainResult result;
    double prev_loss = std::numeric_limits<double>::infinity();
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        // Fisher-Yates with the raw generator keeps the permutation
        // reproducible across standard libraries.
        for (std::size_t i = n; i > 1; --i)
            std::swap(order[i - 1], order[rng() % i]);

        int batch_index = 0;
        for (std::size_t start = 0; start < n; start += config.batch_size, ++batch_index) {
            std::size_t len = std::min<std::size_t>(config.batch_size, n - start);
            std::span<const std::size_t> batch(order.data() + start, len);
            AutoencoderParams grad = gradients(params, matrices, batch, config);
            params.axpy(-config.learning_rate, grad);
            if (!params.all_finite()) throw DivergenceError(epoch, batch_index);
        }

        double epoch_loss = loss(params, matrices, order, config);
        if (!std::isfinite(epoch_loss)) throw DivergenceError(epoch, batch_index - 1);
        result.epoch_loss.emplace_back(epoch, epoch_loss);
        if (config.min_rel_improvement > 0.0 && std::isfinite(prev_loss) && prev_loss > 0.0 &&
            (prev_loss - epoch_loss) / prev_loss < config.min_rel_improvement)
            break;
        prev_loss = epoch_loss;
    }

    result.event_embeddings = encode_all(params, matrices);
    result.params = std::move(params);
    return result;
}

} // namespace event2vec
