#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "event2vec/autoencoder.hpp"
#include "event2vec/hin.hpp"
#include "event2vec/object_embedding.hpp"

namespace event2vec {

struct SplitSpec {
    double train_ratio = 0.8; // in (0,1)
    std::uint64_t seed = 0;
};

struct LabeledNodes {
    std::map<NodeRef, std::set<std::string>> labels;
    bool single_label = true;

    /// Tab-separated lines: id, type, label [, label...]. single_label is
    /// inferred (true iff every object carries exactly one label).
    static LabeledNodes load(std::istream& in);
    std::vector<std::string> label_set() const;
};

struct MetricValue {
    double mean = 0.0;
    double std_dev = 0.0;
};

struct EvalReport {
    std::string task;
    std::map<std::string, MetricValue> metrics;
    std::string split_desc;
    std::uint64_t seed = 0;
    int runs = 1;
    std::size_t skipped_links = 0;

    /// Key-value block followed by "metric <tab> mean <tab> std" lines.
    void write(std::ostream& out) const;
};

/// Mann-Whitney AUC with midrank tie handling:
/// P(pos > neg) + 0.5 P(pos == neg). Throws EvalError on an empty side.
double auc(std::span<const double> positive_scores, std::span<const double> negative_scores);

/// Score observed links by endpoint cosine against type-matched sampled
/// non-links. Links touching excluded objects are skipped and counted.
EvalReport reconstruct_network(const Hin& hin, const ObjectEmbeddings& embeddings,
                               double negative_ratio, std::uint64_t seed);

/// Uniform link-level split. The train Hin keeps every node.
std::pair<Hin, std::vector<Link>> split_links(const Hin& hin, const SplitSpec& spec);

/// Full pipeline: events and training on the train split only, then AUC of
/// test links against sampled negatives.
EvalReport link_prediction(const Hin& hin, const SplitSpec& spec, const TrainConfig& train_config,
                           const EventIdentifierRule& rule, double negative_ratio);

/// One-vs-rest L2-regularized logistic regression trained by full-batch
/// gradient descent.
class LogisticOvR {
public:
    void fit(const Eigen::MatrixXd& features, const std::vector<std::set<std::string>>& labels,
             const std::vector<std::string>& label_set, double l2, int epochs, double lr);

    /// Per-label sigmoid scores, columns aligned with label_set order.
    Eigen::MatrixXd scores(const Eigen::MatrixXd& features) const;
    const std::vector<std::string>& labels() const { return label_set_; }

private:
    std::vector<std::string> label_set_;
    Eigen::MatrixXd weights_; // (dim+1) x labels, last row is the intercept
};

/// Multi-label F1 over parallel truth/prediction label sets.
double micro_f1(const std::vector<std::set<std::string>>& truth,
                const std::vector<std::set<std::string>>& predicted);
double macro_f1(const std::vector<std::set<std::string>>& truth,
                const std::vector<std::set<std::string>>& predicted,
                const std::vector<std::string>& label_set);

struct ClassifierConfig {
    double l2 = 1e-4;
    double lr = 0.1;
    int epochs = 200;
};

/// Embeddings-as-features classification, averaged over `runs` reseeded
/// splits. Single-label mode reports precision (argmax accuracy) and macro
/// one-vs-rest AUC; multi-label mode reports micro/macro F1 at threshold 0.5.
EvalReport node_classification(const ObjectEmbeddings& embeddings, const LabeledNodes& labels,
                               double train_fraction, std::uint64_t seed, int runs,
                               const ClassifierConfig& clf = {});

} // namespace event2vec
