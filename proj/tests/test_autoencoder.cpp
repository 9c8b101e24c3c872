#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "event2vec/autoencoder.hpp"
#include "event2vec/synth.hpp"

using namespace event2vec;

namespace {

// tiny random instance: per-type sizes <= 5, random binary incidence
IncidentMatrices random_instance(std::mt19937_64& rng, int types, int events) {
    IncidentMatrices m;
    for (int t = 0; t < types; ++t) {
        m.types.push_back("t" + std::to_string(t));
        int size = 1 + static_cast<int>(rng() % 5);
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size, events);
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < events; ++c) h(r, c) = (rng() % 2) ? 1.0 : 0.0;
        std::vector<NodeRef> nodes;
        for (int r = 0; r < size; ++r) nodes.push_back({"n" + std::to_string(r), m.types.back()});
        m.nodes.push_back(nodes);
        m.h.push_back(h);
        m.degree.push_back(h.rowwise().sum());
    }
    return m;
}

double max_fd_error(const AutoencoderParams& params, const IncidentMatrices& m,
                    std::span<const std::size_t> batch, const TrainConfig& cfg) {
    const double h = 1e-5;
    AutoencoderParams analytic = gradients(params, m, batch, cfg);
    double worst = 0.0;
    auto check_block = [&](auto get_mut, const auto& grad_block) {
        AutoencoderParams p = params;
        auto& block = get_mut(p);
        for (Eigen::Index i = 0; i < block.size(); ++i) {
            double original = block(i);
            block(i) = original + h;
            double lp = loss(p, m, batch, cfg);
            block(i) = original - h;
            double lm = loss(p, m, batch, cfg);
            block(i) = original;
            double fd = (lp - lm) / (2.0 * h);
            double err = std::abs(grad_block(i) - fd) /
                         std::max({std::abs(fd), std::abs(grad_block(i)), 1e-6});
            worst = std::max(worst, err);
        }
    };
    for (std::size_t t = 0; t < params.type_count(); ++t) {
        check_block([t](AutoencoderParams& p) -> Eigen::MatrixXd& { return p.enc_w[t]; },
                    analytic.enc_w[t]);
        check_block([t](AutoencoderParams& p) -> Eigen::VectorXd& { return p.enc_b[t]; },
                    analytic.enc_b[t]);
        check_block([t](AutoencoderParams& p) -> Eigen::MatrixXd& { return p.dec_w[t]; },
                    analytic.dec_w[t]);
        check_block([t](AutoencoderParams& p) -> Eigen::VectorXd& { return p.dec_b[t]; },
                    analytic.dec_b[t]);
    }
    for (std::size_t l = 0; l < params.mid_enc_w.size(); ++l) {
        check_block([l](AutoencoderParams& p) -> Eigen::MatrixXd& { return p.mid_enc_w[l]; },
                    analytic.mid_enc_w[l]);
        check_block([l](AutoencoderParams& p) -> Eigen::VectorXd& { return p.mid_enc_b[l]; },
                    analytic.mid_enc_b[l]);
        check_block([l](AutoencoderParams& p) -> Eigen::MatrixXd& { return p.mid_dec_w[l]; },
                    analytic.mid_dec_w[l]);
        check_block([l](AutoencoderParams& p) -> Eigen::VectorXd& { return p.mid_dec_b[l]; },
                    analytic.mid_dec_b[l]);
    }
    return worst;
}


bool exact_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

} // namespace

TEST_CASE("encode with zero params gives half per branch") {
    auto params = AutoencoderParams::zeros({3, 2, 4}, 4);
    std::vector<Eigen::VectorXd> cols{Eigen::VectorXd::Zero(3), Eigen::VectorXd::Ones(2),
                                      Eigen::VectorXd::Zero(4)};
    Eigen::VectorXd z = encode(params, cols);
    REQUIRE(z.size() == 4);
    for (Eigen::Index i = 0; i < z.size(); ++i) CHECK(z(i) == 3 * 0.5);
}

TEST_CASE("scalar encode matches a hand sigmoid") {
    auto params = AutoencoderParams::zeros({2}, 1);
    params.enc_w[0] << 1.0, 1.0;
    Eigen::VectorXd col(2);
    col << 1.0, 0.0;
    Eigen::VectorXd z = encode(params, {col});
    CHECK(z(0) == doctest::Approx(0.7310586).epsilon(1e-7));
}

TEST_CASE("encode output length is d regardless of type sizes") {
    auto params = init_params({7, 3, 11, 2}, 64, 5);
    std::vector<Eigen::VectorXd> cols{Eigen::VectorXd::Zero(7), Eigen::VectorXd::Zero(3),
                                      Eigen::VectorXd::Ones(11), Eigen::VectorXd::Zero(2)};
    CHECK(encode(params, cols).size() == 64);
}

TEST_CASE("mismatched column length is a shape error") {
    auto params = AutoencoderParams::zeros({3}, 2);
    CHECK_THROWS_AS(encode(params, {Eigen::VectorXd::Zero(4)}), ShapeError);
    CHECK_THROWS_AS(decode(params, Eigen::VectorXd::Zero(5)), ShapeError);
}

TEST_CASE("decode with zero params gives half everywhere") {
    auto params = AutoencoderParams::zeros({3, 2}, 4);
    auto recon = decode(params, Eigen::VectorXd::Zero(4));
    REQUIRE(recon.size() == 2);
    CHECK(recon[0].size() == 3);
    CHECK(recon[1].size() == 2);
    for (const auto& r : recon)
        for (Eigen::Index i = 0; i < r.size(); ++i) CHECK(r(i) == 0.5);
}

TEST_CASE("scalar decode arithmetic identity") {
    auto params = AutoencoderParams::zeros({1}, 1);
    params.dec_w[0] << 2.0;
    params.dec_b[0] << -2.0;
    Eigen::VectorXd z(1);
    z << 1.0;
    CHECK(decode(params, z)[0](0) == 0.5);
}

TEST_CASE("decode(encode(x)) preserves per-type lengths") {
    auto params = init_params({4, 2, 6}, 3, 99);
    std::vector<Eigen::VectorXd> cols{Eigen::VectorXd::Ones(4), Eigen::VectorXd::Zero(2),
                                      Eigen::VectorXd::Ones(6)};
    auto recon = decode(params, encode(params, cols));
    REQUIRE(recon.size() == cols.size());
    for (std::size_t t = 0; t < cols.size(); ++t) CHECK(recon[t].size() == cols[t].size());
}

TEST_CASE("single-entry loss with beta weighting") {
    // one type, one object, the event contains it; zero params reconstruct 0.5
    IncidentMatrices m;
    m.types = {"t0"};
    m.nodes = {{{"n0", "t0"}}};
    m.h = {Eigen::MatrixXd::Ones(1, 1)};
    m.degree = {Eigen::VectorXd::Ones(1)};
    auto params = AutoencoderParams::zeros({1}, 1);
    std::vector<std::size_t> batch{0};

    TrainConfig cfg;
    cfg.d = 1;
    cfg.beta = 2.0;
    cfg.alpha = 0.0;
    CHECK(loss(params, m, batch, cfg) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("beta=1 reduces the weighted loss to the plain one") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        auto m = random_instance(rng, 2, 4);
        auto params = init_params(m.type_sizes(), 3, rng());
        std::vector<std::size_t> batch(m.event_count());
        std::iota(batch.begin(), batch.end(), std::size_t{0});

        TrainConfig weighted;
        weighted.d = 3;
        weighted.beta = 1.0;
        weighted.alpha = 0.0;

        // plain reconstruction error, summed in the same event/type order
        double plain = 0.0;
        for (auto i : batch) {
            auto cols = m.event_columns(i);
            auto recon = decode(params, encode(params, cols));
            for (std::size_t t = 0; t < cols.size(); ++t)
                plain += (cols[t] - recon[t]).squaredNorm();
        }
        CHECK(loss(params, m, batch, weighted) == plain);
    }
}

TEST_CASE("loss is nonnegative and strictly increasing in beta") {
    std::mt19937_64 rng(17);
    auto m = random_instance(rng, 2, 5);
    auto params = init_params(m.type_sizes(), 3, 5);
    std::vector<std::size_t> batch(m.event_count());
    std::iota(batch.begin(), batch.end(), std::size_t{0});

    double previous = -1.0;
    for (double beta : {1.0, 2.0, 4.0, 8.0}) {
        TrainConfig cfg;
        cfg.d = 3;
        cfg.beta = beta;
        cfg.alpha = 0.0;
        double value = loss(params, m, batch, cfg);
        CHECK(value >= 0.0);
        CHECK(value > previous);
        previous = value;
    }
}

TEST_CASE("regularizer contributes exactly 2*alpha*W to the gradient") {
    std::mt19937_64 rng(23);
    auto m = random_instance(rng, 2, 3);
    auto params = init_params(m.type_sizes(), 2, 7);
    std::vector<std::size_t> batch(m.event_count());
    std::iota(batch.begin(), batch.end(), std::size_t{0});

    TrainConfig with_reg;
    with_reg.d = 2;
    with_reg.alpha = 0.1;
    TrainConfig without = with_reg;
    without.alpha = 0.0;

    auto g1 = gradients(params, m, batch, with_reg);
    auto g0 = gradients(params, m, batch, without);
    for (std::size_t t = 0; t < params.type_count(); ++t) {
        CHECK((g1.enc_w[t] - g0.enc_w[t] - 0.2 * params.enc_w[t]).norm() ==
              doctest::Approx(0.0).epsilon(1e-12));
        CHECK((g1.dec_w[t] - g0.dec_w[t] - 0.2 * params.dec_w[t]).norm() ==
              doctest::Approx(0.0).epsilon(1e-12));
        CHECK((g1.enc_b[t] - g0.enc_b[t]).norm() == 0.0); // biases unregularized
        CHECK((g1.dec_b[t] - g0.dec_b[t]).norm() == 0.0);
    }
}

TEST_CASE("analytic gradients match central finite differences") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        auto m = random_instance(rng, 1 + static_cast<int>(rng() % 3), 3);
        TrainConfig cfg;
        cfg.d = 1 + static_cast<int>(rng() % 3);
        cfg.beta = 2.0;
        cfg.alpha = 0.05;
        auto params = init_params(m.type_sizes(), cfg.d, rng());
        std::vector<std::size_t> batch(m.event_count());
        std::iota(batch.begin(), batch.end(), std::size_t{0});
        CHECK(max_fd_error(params, m, batch, cfg) < 1e-4);
    }
}

TEST_CASE("finite differences also cover the experimental depth stack") {
    std::mt19937_64 rng(43);
    auto m = random_instance(rng, 2, 3);
    TrainConfig cfg;
    cfg.d = 2;
    cfg.beta = 2.0;
    cfg.alpha = 0.01;
    cfg.depth = 3;
    auto params = init_params(m.type_sizes(), cfg.d, 13, cfg.depth);
    std::vector<std::size_t> batch(m.event_count());
    std::iota(batch.begin(), batch.end(), std::size_t{0});
    CHECK(max_fd_error(params, m, batch, cfg) < 1e-4);
}

TEST_CASE("zero epochs returns the initialization") {
    std::mt19937_64 rng(51);
    auto m = random_instance(rng, 2, 4);
    TrainConfig cfg;
    cfg.d = 3;
    cfg.epochs = 0;
    cfg.seed = 9;
    auto result = train(m, cfg);
    auto init = init_params(m.type_sizes(), cfg.d, cfg.seed);
    for (std::size_t t = 0; t < init.type_count(); ++t) {
        CHECK(exact_equal(result.params.enc_w[t], init.enc_w[t]));
        CHECK(exact_equal(result.params.dec_w[t], init.dec_w[t]));
    }
    CHECK(exact_equal(result.event_embeddings, encode_all(init, m)));
    CHECK(result.epoch_loss.empty());
}

TEST_CASE("training is deterministic per seed") {
    std::mt19937_64 rng(57);
    auto m = random_instance(rng, 2, 6);
    TrainConfig cfg;
    cfg.d = 3;
    cfg.epochs = 20;
    cfg.batch_size = 2;
    cfg.seed = 77;
    auto a = train(m, cfg);
    auto b = train(m, cfg);
    CHECK(exact_equal(a.event_embeddings, b.event_embeddings));
    CHECK(a.epoch_loss == b.epoch_loss);

    cfg.seed = 78;
    auto c = train(m, cfg);
    CHECK_FALSE(exact_equal(a.event_embeddings, c.event_embeddings));
}

TEST_CASE("training reduces the weighted reconstruction loss on fig2a") {
    auto syn = generate({SynthSpec::Template::fig2a});
    auto events = generate_events(syn.hin, {syn.anchor_type});
    auto m = build_incident_matrices(events, syn.hin);

    TrainConfig cfg;
    cfg.d = 8;
    cfg.beta = 2.0;
    cfg.alpha = 1e-4;
    cfg.learning_rate = 0.025;
    cfg.epochs = 500;
    cfg.batch_size = 2;
    cfg.seed = 1;

    std::vector<std::size_t> all(m.event_count());
    std::iota(all.begin(), all.end(), std::size_t{0});
    double initial = loss(init_params(m.type_sizes(), cfg.d, cfg.seed), m, all, cfg);
    auto result = train(m, cfg);
    double final_loss = loss(result.params, m, all, cfg);
    CHECK(final_loss < initial);
    CHECK(result.epoch_loss.back().second < result.epoch_loss.front().second);
}

TEST_CASE("events with identical membership share an embedding") {
    // two identical incidence columns
    IncidentMatrices m;
    m.types = {"t0", "t1"};
    m.nodes = {{{"x", "t0"}, {"y", "t0"}}, {{"u", "t1"}}};
    Eigen::MatrixXd h0(2, 3);
    h0 << 1, 1, 0, 0, 0, 1;
    Eigen::MatrixXd h1(1, 3);
    h1 << 1, 1, 1;
    m.h = {h0, h1};
    m.degree = {h0.rowwise().sum(), h1.rowwise().sum()};

    auto params = init_params(m.type_sizes(), 4, 3);
    auto z = encode_all(params, m);
    CHECK(exact_equal(z.row(0), z.row(1)));
    CHECK_FALSE(exact_equal(z.row(0), z.row(2)));
}

TEST_CASE("exploding regularizer updates raise a divergence error") {
    std::mt19937_64 rng(61);
    auto m = random_instance(rng, 2, 4);
    TrainConfig cfg;
    cfg.d = 3;
    cfg.alpha = 1e4;
    cfg.learning_rate = 10.0;
    cfg.epochs = 200;
    cfg.seed = 5;
    CHECK_THROWS_AS(train(m, cfg), DivergenceError);
}

TEST_CASE("optional early stop halts before the epoch budget") {
    std::mt19937_64 rng(67);
    auto m = random_instance(rng, 2, 4);
    TrainConfig cfg;
    cfg.d = 3;
    cfg.epochs = 500;
    cfg.min_rel_improvement = 0.05;
    cfg.seed = 2;
    auto result = train(m, cfg);
    CHECK(result.epoch_loss.size() < 500);
}
