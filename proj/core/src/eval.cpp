#include "event2vec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "event2vec/errors.hpp"

namespace event2vec {

namespace {

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

MetricValue mean_std(const std::vector<double>& values) {
    MetricValue m;
    if (values.empty()) return m;
    m.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    double var = 0.0;
    for (double v : values) var += (v - m.mean) * (v - m.mean);
    m.std_dev = std::sqrt(var / values.size());
    return m;
}

} // namespace

LabeledNodes LabeledNodes::load(std::istream& in) {
    LabeledNodes out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) fields.push_back(field);
        if (fields.size() < 3) throw ParseError(line_no, "expected id, type, label...");
        NodeRef node{fields[0], fields[1]};
        for (std::size_t i = 2; i < fields.size(); ++i) out.labels[node].insert(fields[i]);
    }
    out.single_label = std::all_of(out.labels.begin(), out.labels.end(),
                                   [](const auto& kv) { return kv.second.size() == 1; });
    return out;
}

std::vector<std::string> LabeledNodes::label_set() const {
    std::set<std::string> all;
    for (const auto& [node, ls] : labels) all.insert(ls.begin(), ls.end());
    return {all.begin(), all.end()};
}

void EvalReport::write(std::ostream& out) const {
    out << "task\t" << task << '\n';
    out << "split\t" << split_desc << '\n';
    out << "seed\t" << seed << '\n';
    out << "runs\t" << runs << '\n';
    if (skipped_links > 0) out << "skipped_links\t" << skipped_links << '\n';
    for (const auto& [name, value] : metrics)
        out << name << '\t' << value.mean << '\t' << value.std_dev << '\n';
}

double auc(std::span<const double> positive_scores, std::span<const double> negative_scores) {
    if (positive_scores.empty() || negative_scores.empty())
        throw EvalError("auc needs at least one positive and one negative score");

    struct Entry {
        double score;
        bool positive;
    };
    std::vector<Entry> entries;
    entries.reserve(positive_scores.size() + negative_scores.size());
    for (double s : positive_scores) entries.push_back({s, true});
    for (double s : negative_scores) entries.push_back({s, false});
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.score < b.score; });

    // midrank sum over positives
    double rank_sum = 0.0;
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i;
        while (j < entries.size() && entries[j].score == entries[i].score) ++j;
        double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (entries[k].positive) rank_sum += midrank;
        i = j;
    }
    const double np = static_cast<double>(positive_scores.size());
    const double nn = static_cast<double>(negative_scores.size());
    return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

namespace {

// Type-matched uniform negative sampling: copy the endpoint-type pair of a
// random positive, draw one node of each type, reject pairs that are linked
// in the universe or lack a usable embedding.
std::vector<double> sample_negative_scores(const Hin& universe,
                                           const std::vector<const Link*>& positives,
                                           std::size_t count, std::mt19937_64& rng,
                                           const ObjectEmbeddings& embeddings) {
    std::vector<double> scores;
    scores.reserve(count);
    const std::size_t max_attempts = 200 * std::max<std::size_t>(count, 1) + 10000;
    std::size_t attempts = 0;
    while (scores.size() < count) {
        if (++attempts > max_attempts)
            throw EvalError("could not sample " + std::to_string(count) +
                            " negative pairs; network too dense");
        const Link* proto = positives[uniform_index(rng, positives.size())];
        const auto& pool_a = universe.nodes_of_type(proto->a.type);
        const auto& pool_b = universe.nodes_of_type(proto->b.type);
        if (pool_a.empty() || pool_b.empty()) continue;
        const NodeRef& u = pool_a[uniform_index(rng, pool_a.size())];
        const NodeRef& v = pool_b[uniform_index(rng, pool_b.size())];
        if (u == v || universe.has_link(u, v)) continue;
        auto eu = embeddings.vector_of(u);
        auto ev = embeddings.vector_of(v);
        if (!eu || !ev || embeddings.is_excluded(u) || embeddings.is_excluded(v)) continue;
        scores.push_back(cosine(*eu, *ev));
    }
    return scores;
}

// Positives scored by endpoint cosine; links without usable embeddings are
// skipped and counted.
std::pair<std::vector<double>, std::size_t> score_links(const std::vector<Link>& links,
                                                        const ObjectEmbeddings& embeddings,
                                                        std::vector<const Link*>* usable) {
    std::vector<double> scores;
    std::size_t skipped = 0;
    for (const auto& link : links) {
        auto ea = embeddings.vector_of(link.a);
        auto eb = embeddings.vector_of(link.b);
        if (!ea || !eb || embeddings.is_excluded(link.a) || embeddings.is_excluded(link.b)) {
            ++skipped;
            continue;
        }
        scores.push_back(cosine(*ea, *eb));
        if (usable) usable->push_back(&link);
    }
    return {scores, skipped};
}

} // namespace

EvalReport reconstruct_network(const Hin& hin, const ObjectEmbeddings& embeddings,
                               double negative_ratio, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<const Link*> usable;
    auto [pos_scores, skipped] = score_links(hin.links(), embeddings, &usable);
    if (pos_scores.empty()) throw EvalError("no scorable links for reconstruction");
    std::size_t neg_count = static_cast<std::size_t>(
        std::llround(negative_ratio * static_cast<double>(pos_scores.size())));
    auto neg_scores = sample_negative_scores(hin, usable, neg_count, rng, embeddings);

    EvalReport report;
    report.task = "reconstruction";
    report.split_desc = "full network, negative_ratio=" + std::to_string(negative_ratio);
    report.seed = seed;
    report.skipped_links = skipped;
    report.metrics["auc"] = {auc(pos_scores, neg_scores), 0.0};
    return report;
}

std::pair<Hin, std::vector<Link>> split_links(const Hin& hin, const SplitSpec& spec) {
    const auto& links = hin.links();
    std::vector<std::size_t> order(links.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

    auto train_count = static_cast<std::size_t>(
        std::llround(spec.train_ratio * static_cast<double>(links.size())));
    std::vector<bool> in_train(links.size(), false);
    for (std::size_t i = 0; i < train_count && i < order.size(); ++i) in_train[order[i]] = true;

    Hin train(hin.type_set());
    for (const auto& type : hin.type_set())
        for (const auto& node : hin.nodes_of_type(type)) train.add_node(node);
    std::vector<Link> test;
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (in_train[i])
            train.add_link(links[i]);
        else
            test.push_back(links[i]);
    }
    return {std::move(train), std::move(test)};
}

EvalReport link_prediction(const Hin& hin, const SplitSpec& spec, const TrainConfig& train_config,
                           const EventIdentifierRule& rule, double negative_ratio) {
    auto [train_hin, test_links] = split_links(hin, spec);
    auto events = generate_events(train_hin, rule);
    auto matrices = build_incident_matrices(events, train_hin);
    auto trained = train(matrices, train_config);
    auto embeddings = object_embeddings(trained.event_embeddings, matrices);

    std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<const Link*> usable;
    auto [pos_scores, skipped] = score_links(test_links, embeddings, &usable);
    if (pos_scores.empty()) throw EvalError("no scorable test links");
    std::size_t neg_count = static_cast<std::size_t>(
        std::llround(negative_ratio * static_cast<double>(pos_scores.size())));
    // negatives are non-links of the full network
    auto neg_scores = sample_negative_scores(hin, usable, neg_count, rng, embeddings);

    EvalReport report;
    report.task = "link_prediction";
    report.split_desc = "train_ratio=" + std::to_string(spec.train_ratio) +
                        ", negative_ratio=" + std::to_string(negative_ratio);
    report.seed = spec.seed;
    report.skipped_links = skipped;
    report.metrics["auc"] = {auc(pos_scores, neg_scores), 0.0};
    return report;
}

void LogisticOvR::fit(const Eigen::MatrixXd& features,
                      const std::vector<std::set<std::string>>& labels,
                      const std::vector<std::string>& label_set, double l2, int epochs,
                      double lr) {
    if (static_cast<std::size_t>(features.rows()) != labels.size())
        throw ShapeError("feature rows != label count");
    if (label_set.empty()) throw EvalError("empty label set");
    label_set_ = label_set;

    const Eigen::Index n = features.rows();
    const Eigen::Index d = features.cols();
    const auto nl = static_cast<Eigen::Index>(label_set_.size());

    Eigen::MatrixXd x(n, d + 1);
    x.leftCols(d) = features;
    x.col(d).setOnes();

    Eigen::MatrixXd targets = Eigen::MatrixXd::Zero(n, nl);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index c = 0; c < nl; ++c)
            if (labels[static_cast<std::size_t>(i)].count(label_set_[static_cast<std::size_t>(c)]))
                targets(i, c) = 1.0;

    weights_ = Eigen::MatrixXd::Zero(d + 1, nl);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int epoch = 0; epoch < epochs; ++epoch) {
        Eigen::MatrixXd p =
            ((x * weights_).array().unaryExpr([](double v) { return sigmoid(v); })).matrix();
        Eigen::MatrixXd grad = x.transpose() * (p - targets) * inv_n;
        grad.topRows(d) += l2 * weights_.topRows(d); // intercept unregularized
        weights_ -= lr * grad;
    }
}

Eigen::MatrixXd LogisticOvR::scores(const Eigen::MatrixXd& features) const {
    Eigen::MatrixXd x(features.rows(), features.cols() + 1);
    x.leftCols(features.cols()) = features;
    x.col(features.cols()).setOnes();
    return ((x * weights_).array().unaryExpr([](double v) { return sigmoid(v); })).matrix();
}

double micro_f1(const std::vector<std::set<std::string>>& truth,
                const std::vector<std::set<std::string>>& predicted) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        for (const auto& l : predicted[i]) {
            if (truth[i].count(l))
                ++tp;
            else
                ++fp;
        }
        for (const auto& l : truth[i])
            if (!predicted[i].count(l)) ++fn;
    }
    double denom = static_cast<double>(2 * tp + fp + fn);
    return denom == 0.0 ? 0.0 : 2.0 * static_cast<double>(tp) / denom;
}

double macro_f1(const std::vector<std::set<std::string>>& truth,
                const std::vector<std::set<std::string>>& predicted,
                const std::vector<std::string>& label_set) {
    double sum = 0.0;
    std::size_t counted = 0;
    for (const auto& label : label_set) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            bool t = truth[i].count(label) > 0;
            bool p = predicted[i].count(label) > 0;
            if (t && p) ++tp;
            if (!t && p) ++fp;
            if (t && !p) ++fn;
        }
        if (2 * tp + fp + fn == 0) continue; // label absent from truth and prediction
        sum += 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
        ++counted;
    }
    return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

EvalReport node_classification(const ObjectEmbeddings& embeddings, const LabeledNodes& labels,
                               double train_fraction, std::uint64_t seed, int runs,
                               const ClassifierConfig& clf) {
    if (labels.labels.empty()) throw EvalError("no labeled objects");

    // labeled objects with a usable embedding
    std::vector<NodeRef> objects;
    std::vector<Eigen::VectorXd> feats;
    std::vector<std::set<std::string>> truth;
    for (const auto& [node, ls] : labels.labels) {
        auto v = embeddings.vector_of(node);
        if (!v || embeddings.is_excluded(node)) continue;
        objects.push_back(node);
        feats.push_back(*v);
        truth.push_back(ls);
    }
    if (objects.empty()) throw EvalError("no labeled object has an embedding");
    auto label_set = labels.label_set();

    const std::size_t n = objects.size();
    auto train_count = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(n)));
    if (train_count == 0 || train_count >= n)
        throw EvalError("train fraction " + std::to_string(train_fraction) +
                        " leaves an empty split for " + std::to_string(n) + " objects");

    std::map<std::string, std::vector<double>> runs_metrics;
    int degenerate_runs = 0;
    for (int run = 0; run < runs; ++run) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(run));
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);

        const std::size_t d = static_cast<std::size_t>(feats[0].size());
        Eigen::MatrixXd x_train(train_count, d), x_test(n - train_count, d);
        std::vector<std::set<std::string>> y_train, y_test;
        for (std::size_t i = 0; i < n; ++i) {
            if (i < train_count) {
                x_train.row(static_cast<Eigen::Index>(i)) = feats[order[i]];
                y_train.push_back(truth[order[i]]);
            } else {
                x_test.row(static_cast<Eigen::Index>(i - train_count)) = feats[order[i]];
                y_test.push_back(truth[order[i]]);
            }
        }

        if (labels.single_label) {
            std::set<std::string> seen;
            for (const auto& ls : y_train) seen.insert(ls.begin(), ls.end());
            if (seen.size() < 2) {
                ++degenerate_runs;
                continue; // reseeded splits may still succeed
            }
        }

        LogisticOvR model;
        model.fit(x_train, y_train, label_set, clf.l2, clf.epochs, clf.lr);
        Eigen::MatrixXd s = model.scores(x_test);

        if (labels.single_label) {
            std::size_t correct = 0;
            for (Eigen::Index i = 0; i < s.rows(); ++i) {
                Eigen::Index best;
                s.row(i).maxCoeff(&best);
                if (y_test[static_cast<std::size_t>(i)].count(
                        label_set[static_cast<std::size_t>(best)]))
                    ++correct;
            }
            runs_metrics["precision"].push_back(static_cast<double>(correct) /
                                                static_cast<double>(s.rows()));

            // macro one-vs-rest AUC over labels present on both sides
            double auc_sum = 0.0;
            std::size_t auc_labels = 0;
            for (std::size_t c = 0; c < label_set.size(); ++c) {
                std::vector<double> pos, neg;
                for (Eigen::Index i = 0; i < s.rows(); ++i) {
                    double score = s(i, static_cast<Eigen::Index>(c));
                    if (y_test[static_cast<std::size_t>(i)].count(label_set[c]))
                        pos.push_back(score);
                    else
                        neg.push_back(score);
                }
                if (pos.empty() || neg.empty()) continue;
                auc_sum += auc(pos, neg);
                ++auc_labels;
            }
            if (auc_labels > 0)
                runs_metrics["auc"].push_back(auc_sum / static_cast<double>(auc_labels));
        } else {
            std::vector<std::set<std::string>> predicted(y_test.size());
            for (Eigen::Index i = 0; i < s.rows(); ++i)
                for (std::size_t c = 0; c < label_set.size(); ++c)
                    if (s(i, static_cast<Eigen::Index>(c)) >= 0.5)
                        predicted[static_cast<std::size_t>(i)].insert(label_set[c]);
            runs_metrics["micro_f1"].push_back(micro_f1(y_test, predicted));
            runs_metrics["macro_f1"].push_back(macro_f1(y_test, predicted, label_set));
        }
    }

    if (degenerate_runs == runs)
        throw EvalError("every training split contained a single class");

    EvalReport report;
    report.task = "node_classification";
    report.split_desc = "train_fraction=" + std::to_string(train_fraction);
    report.seed = seed;
    report.runs = runs;
    for (const auto& [name, values] : runs_metrics) report.metrics[name] = mean_std(values);
    return report;
}

} // namespace event2vec
