#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "event2vec/eval.hpp"
#include "event2vec/io.hpp"
#include "event2vec/proximity.hpp"
#include "event2vec/synth.hpp"

namespace fs = std::filesystem;
using namespace event2vec;

namespace {

// Exit codes: 0 ok, 1 usage/IO, 2 rule violation, 3 divergence.
constexpr int kExitUsage = 1;
constexpr int kExitRule = 2;
constexpr int kExitDivergence = 3;

struct RunConfig {
    std::string edges_path;
    std::string schema_path;
    std::string labels_path;
    std::string template_name;
    std::string embeddings_path;
    std::string out_dir = ".";
    std::string anchor = "paper";
    bool dedup = false;

    TrainConfig train;

    std::vector<double> train_ratios;
    double negative_ratio = 1.0;
    int runs = 10;
    double train_fraction = 0.5;

    // random template knobs
    int synth_events = 50;
    int synth_groups = 5;
};

Hin load_input(const RunConfig& config, std::string* anchor_out) {
    if (!config.template_name.empty()) {
        SynthSpec spec;
        spec.tmpl = parse_template(config.template_name);
        spec.events = config.synth_events;
        spec.groups = config.synth_groups;
        spec.seed = config.train.seed;
        auto result = generate(spec);
        if (anchor_out) *anchor_out = result.anchor_type;
        return std::move(result.hin);
    }
    std::ifstream schema_in(config.schema_path);
    if (!schema_in) throw std::runtime_error("cannot open schema file " + config.schema_path);
    auto schema = Hin::load_schema(schema_in);
    std::ifstream edges_in(config.edges_path);
    if (!edges_in) throw std::runtime_error("cannot open edge list " + config.edges_path);
    if (anchor_out) *anchor_out = config.anchor;
    return Hin::load_edge_list(edges_in, schema, config.dedup);
}

// Echo the resolved configuration next to the artifacts for provenance.
void echo_config(const RunConfig& config, const std::string& subcommand) {
    fs::create_directories(config.out_dir);
    std::ofstream out(fs::path(config.out_dir) / "run_config.txt");
    out << "subcommand=" << subcommand << '\n'
        << "edges=" << config.edges_path << '\n'
        << "schema=" << config.schema_path << '\n'
        << "labels=" << config.labels_path << '\n'
        << "template=" << config.template_name << '\n'
        << "anchor=" << config.anchor << '\n'
        << "d=" << config.train.d << '\n'
        << "beta=" << config.train.beta << '\n'
        << "alpha=" << config.train.alpha << '\n'
        << "learning_rate=" << config.train.learning_rate << '\n'
        << "epochs=" << config.train.epochs << '\n'
        << "batch_size=" << config.train.batch_size << '\n'
        << "depth=" << config.train.depth << '\n'
        << "seed=" << config.train.seed << '\n'
        << "negative_ratio=" << config.negative_ratio << '\n'
        << "runs=" << config.runs << '\n'
        << "train_fraction=" << config.train_fraction << '\n';
}

struct Pipeline {
    Hin hin;
    EventSet events;
    IncidentMatrices matrices;
    TrainResult trained;
    ObjectEmbeddings embeddings;
};

Pipeline run_pipeline(const RunConfig& config, bool print_loss) {
    Pipeline p;
    std::string anchor;
    p.hin = load_input(config, &anchor);
    p.events = generate_events(p.hin, {anchor});
    p.matrices = build_incident_matrices(p.events, p.hin);
    p.trained = train(p.matrices, config.train);
    if (print_loss)
        for (auto [epoch, value] : p.trained.epoch_loss)
            std::cout << epoch << '\t' << value << '\n';
    p.embeddings = object_embeddings(p.trained.event_embeddings, p.matrices);
    return p;
}

int cmd_events(const RunConfig& config) {
    std::string anchor;
    Hin hin = load_input(config, &anchor);
    auto events = generate_events(hin, {anchor});
    echo_config(config, "events");
    std::ofstream out(fs::path(config.out_dir) / "events.tsv");
    write_event_dump(out, events);
    std::cout << "events\t" << events.size() << '\n';
    return 0;
}

int cmd_train(const RunConfig& config) {
    echo_config(config, "train");
    Pipeline p = run_pipeline(config, /*print_loss=*/true);

    fs::path dir(config.out_dir);
    {
        std::ofstream out(dir / "checkpoint.bin", std::ios::binary);
        save_checkpoint(out, p.trained.params, config.train);
    }
    {
        std::ofstream out(dir / "event_embeddings.tsv");
        write_event_embeddings(out, p.trained.event_embeddings);
    }
    {
        std::ofstream out(dir / "object_embeddings.tsv");
        write_object_embeddings(out, p.embeddings);
    }
    {
        std::ofstream out(dir / "events.tsv");
        write_event_dump(out, p.events);
    }
    return 0;
}

LabeledNodes load_labels(const RunConfig& config) {
    std::ifstream in(config.labels_path);
    if (!in) throw std::runtime_error("cannot open labels file " + config.labels_path);
    return LabeledNodes::load(in);
}

int cmd_eval(const RunConfig& config, const std::string& task) {
    echo_config(config, "eval." + task);
    fs::path dir(config.out_dir);
    std::vector<EvalReport> reports;

    if (task == "reconstruction") {
        std::string anchor;
        Hin hin = load_input(config, &anchor);
        ObjectEmbeddings embeddings;
        if (!config.embeddings_path.empty()) {
            std::ifstream in(config.embeddings_path);
            if (!in)
                throw std::runtime_error("cannot open embeddings " + config.embeddings_path);
            embeddings = read_object_embeddings(in);
        } else {
            Pipeline p = run_pipeline(config, false);
            embeddings = std::move(p.embeddings);
        }
        reports.push_back(
            reconstruct_network(hin, embeddings, config.negative_ratio, config.train.seed));
    } else if (task == "linkpred") {
        std::string anchor;
        Hin hin = load_input(config, &anchor);
        auto ratios = config.train_ratios;
        if (ratios.empty()) ratios.push_back(0.8);
        for (double ratio : ratios)
            reports.push_back(link_prediction(hin, {ratio, config.train.seed}, config.train,
                                              {anchor}, config.negative_ratio));
    } else if (task == "classification") {
        if (config.labels_path.empty())
            throw std::runtime_error("classification requires --labels");
        auto labels = load_labels(config);
        ObjectEmbeddings embeddings;
        if (!config.embeddings_path.empty()) {
            std::ifstream in(config.embeddings_path);
            if (!in)
                throw std::runtime_error("cannot open embeddings " + config.embeddings_path);
            embeddings = read_object_embeddings(in);
        } else {
            Pipeline p = run_pipeline(config, false);
            embeddings = std::move(p.embeddings);
        }
        reports.push_back(node_classification(embeddings, labels, config.train_fraction,
                                              config.train.seed, config.runs));
    } else {
        throw std::runtime_error("unknown task '" + task + "'");
    }

    std::ofstream out(dir / ("report_" + task + ".tsv"));
    for (const auto& report : reports) {
        report.write(out);
        report.write(std::cout);
    }
    return 0;
}

int cmd_sweep(RunConfig config, const std::string& parameter,
              const std::vector<double>& values) {
    echo_config(config, "sweep." + parameter);
    fs::path dir(config.out_dir);
    std::ofstream out(dir / ("sweep_" + parameter + ".tsv"));

    for (double value : values) {
        if (parameter == "d")
            config.train.d = static_cast<int>(value);
        else if (parameter == "beta")
            config.train.beta = value;
        else if (parameter == "depth")
            config.train.depth = static_cast<int>(value);
        else
            throw std::runtime_error("unknown sweep parameter '" + parameter + "'");

        Pipeline p = run_pipeline(config, false);
        EvalReport report;
        if (!config.labels_path.empty()) {
            auto labels = load_labels(config);
            report = node_classification(p.embeddings, labels, config.train_fraction,
                                         config.train.seed, config.runs);
        } else {
            report = reconstruct_network(p.hin, p.embeddings, config.negative_ratio,
                                         config.train.seed);
        }
        for (const auto& [metric, mv] : report.metrics) {
            out << parameter << '\t' << value << '\t' << metric << '\t' << mv.mean << '\t'
                << mv.std_dev << '\n';
            std::cout << parameter << '\t' << value << '\t' << metric << '\t' << mv.mean << '\t'
                      << mv.std_dev << '\n';
        }
    }
    return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--edges", config.edges_path, "Tab-separated edge list");
    cmd->add_option("--schema", config.schema_path, "Schema file, one type tag per line");
    cmd->add_option("--template", config.template_name,
                    "Synthetic network template: fig2a, fig2b, fig3a, random");
    cmd->add_option("--labels", config.labels_path, "Tab-separated label file");
    cmd->add_option("--out", config.out_dir, "Output directory");
    cmd->add_option("--anchor", config.anchor, "Event identifier (anchor) object type");
    cmd->add_flag("--dedup", config.dedup, "Drop duplicate links on load");
    cmd->add_option("-d,--dim", config.train.d, "Embedding dimension");
    cmd->add_option("--beta", config.train.beta, "Nonzero-entry reconstruction penalty");
    cmd->add_option("--alpha", config.train.alpha, "L2 weight penalty");
    cmd->add_option("--lr", config.train.learning_rate, "SGD learning rate");
    cmd->add_option("--epochs", config.train.epochs, "Training epochs");
    cmd->add_option("--batch-size", config.train.batch_size, "Mini-batch size");
    cmd->add_option("--depth", config.train.depth, "Hidden layers (experimental beyond 1)");
    cmd->add_option("--seed", config.train.seed, "RNG seed");
    cmd->add_option("--min-rel-improvement", config.train.min_rel_improvement,
                    "Optional early-stop threshold on relative loss improvement");
    cmd->add_option("--negative-ratio", config.negative_ratio,
                    "Sampled negatives per positive link");
    cmd->add_option("--runs", config.runs, "Evaluation repetitions");
    cmd->add_option("--train-fraction", config.train_fraction,
                    "Labeled-object training fraction for classification");
    cmd->add_option("--synth-events", config.synth_events, "Events in the random template");
    cmd->add_option("--synth-groups", config.synth_groups, "Community blocks in the random template");
    cmd->set_config("--config", "", "Flat key=value config file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-based heterogeneous information network embedding toolkit"};
    app.require_subcommand(1);

    RunConfig config;
    std::string eval_task = "reconstruction";
    std::string sweep_parameter;
    std::vector<double> sweep_values;

    auto* events_cmd = app.add_subcommand("events", "Generate and dump events");
    add_common_options(events_cmd, config);

    auto* train_cmd = app.add_subcommand("train", "Train embeddings end to end");
    add_common_options(train_cmd, config);

    auto* eval_cmd = app.add_subcommand("eval", "Run an evaluation task");
    add_common_options(eval_cmd, config);
    eval_cmd->add_option("--task", eval_task,
                         "reconstruction, linkpred, or classification");
    eval_cmd->add_option("--train-ratios", config.train_ratios,
                         "Link-level train ratios for linkpred");
    eval_cmd->add_option("--embeddings", config.embeddings_path,
                         "Reuse a stored object embedding file");

    auto* sweep_cmd = app.add_subcommand("sweep", "Re-run the pipeline over parameter values");
    add_common_options(sweep_cmd, config);
    sweep_cmd->add_option("--parameter", sweep_parameter, "d, beta, or depth")->required();
    sweep_cmd->add_option("--values", sweep_values, "Parameter values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (events_cmd->parsed()) return cmd_events(config);
        if (train_cmd->parsed()) return cmd_train(config);
        if (eval_cmd->parsed()) return cmd_eval(config, eval_task);
        if (sweep_cmd->parsed()) {
            if (sweep_values.empty()) {
                std::cerr << "error: empty sweep value list\n";
                return kExitUsage;
            }
            return cmd_sweep(config, sweep_parameter, sweep_values);
        }
    } catch (const RuleViolation& e) {
        std::cerr << "rule violation: " << e.what() << '\n';
        return kExitRule;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
