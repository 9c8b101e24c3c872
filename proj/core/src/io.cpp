#include "event2vec/io.hpp"

#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "event2vec/errors.hpp"

namespace event2vec {

namespace {

constexpr char kMagic[4] = {'E', '2', 'V', 'C'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw ParseError(0, "truncated checkpoint");
    return value;
}

void put_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) put<double>(out, m(r, c));
}

void get_matrix(std::istream& in, Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = get<double>(in);
}

void put_vector(std::ostream& out, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) put<double>(out, v(i));
}

void get_vector(std::istream& in, Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = get<double>(in);
}

} // namespace

void save_checkpoint(std::ostream& out, const AutoencoderParams& params,
                     const TrainConfig& config) {
    out.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(params.dim()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(params.mid_enc_w.size() + 1));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(params.type_count()));
    for (std::size_t t = 0; t < params.type_count(); ++t)
        put<std::uint64_t>(out, static_cast<std::uint64_t>(params.enc_w[t].cols()));
    put<double>(out, config.beta);
    put<double>(out, config.alpha);
    put<std::uint64_t>(out, config.seed);
    for (std::size_t t = 0; t < params.type_count(); ++t) {
        put_matrix(out, params.enc_w[t]);
        put_vector(out, params.enc_b[t]);
        put_matrix(out, params.dec_w[t]);
        put_vector(out, params.dec_b[t]);
    }
    for (std::size_t l = 0; l < params.mid_enc_w.size(); ++l) {
        put_matrix(out, params.mid_enc_w[l]);
        put_vector(out, params.mid_enc_b[l]);
        put_matrix(out, params.mid_dec_w[l]);
        put_vector(out, params.mid_dec_b[l]);
    }
}

Checkpoint load_checkpoint(std::istream& in) {
    char magic[4];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ParseError(0, "not a checkpoint file");
    auto version = get<std::uint32_t>(in);
    if (version != kVersion)
        throw ParseError(0, "unsupported checkpoint version " + std::to_string(version));

    Checkpoint ckpt;
    auto d = static_cast<int>(get<std::uint32_t>(in));
    auto depth = static_cast<int>(get<std::uint32_t>(in));
    auto num_types = get<std::uint32_t>(in);
    std::vector<Eigen::Index> sizes;
    for (std::uint32_t t = 0; t < num_types; ++t)
        sizes.push_back(static_cast<Eigen::Index>(get<std::uint64_t>(in)));
    ckpt.config.d = d;
    ckpt.config.depth = depth;
    ckpt.config.beta = get<double>(in);
    ckpt.config.alpha = get<double>(in);
    ckpt.config.seed = get<std::uint64_t>(in);

    ckpt.params = AutoencoderParams::zeros(sizes, d, depth);
    for (std::size_t t = 0; t < sizes.size(); ++t) {
        get_matrix(in, ckpt.params.enc_w[t]);
        get_vector(in, ckpt.params.enc_b[t]);
        get_matrix(in, ckpt.params.dec_w[t]);
        get_vector(in, ckpt.params.dec_b[t]);
    }
    for (int l = 0; l < depth - 1; ++l) {
        get_matrix(in, ckpt.params.mid_enc_w[static_cast<std::size_t>(l)]);
        get_vector(in, ckpt.params.mid_enc_b[static_cast<std::size_t>(l)]);
        get_matrix(in, ckpt.params.mid_dec_w[static_cast<std::size_t>(l)]);
        get_vector(in, ckpt.params.mid_dec_b[static_cast<std::size_t>(l)]);
    }
    return ckpt;
}

void write_object_embeddings(std::ostream& out, const ObjectEmbeddings& embeddings) {
    std::ostringstream buf;
    buf.precision(17);
    buf << "d\t" << embeddings.dim() << "\ttypes\t" << embeddings.types.size() << '\n';
    for (std::size_t t = 0; t < embeddings.types.size(); ++t)
        buf << embeddings.types[t] << '\t' << embeddings.nodes[t].size() << '\n';
    for (std::size_t t = 0; t < embeddings.types.size(); ++t) {
        for (std::size_t r = 0; r < embeddings.nodes[t].size(); ++r) {
            buf << embeddings.nodes[t][r].id << '\t' << embeddings.types[t] << '\t';
            for (Eigen::Index c = 0; c < embeddings.y[t].cols(); ++c) {
                if (c > 0) buf << ' ';
                buf << embeddings.y[t](static_cast<Eigen::Index>(r), c);
            }
            buf << '\n';
        }
    }
    out << buf.str();
}

ObjectEmbeddings read_object_embeddings(std::istream& in) {
    ObjectEmbeddings out;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing embedding header");
    int d = 0;
    std::size_t num_types = 0;
    {
        std::stringstream ss(line);
        std::string key;
        ss >> key >> d >> key >> num_types;
        if (d <= 0) throw ParseError(1, "bad embedding header");
    }
    std::vector<std::size_t> counts;
    for (std::size_t t = 0; t < num_types; ++t) {
        if (!std::getline(in, line)) throw ParseError(2 + t, "missing type header");
        std::stringstream ss(line);
        std::string name;
        std::size_t count;
        ss >> name >> count;
        out.types.push_back(name);
        counts.push_back(count);
        out.nodes.emplace_back();
        out.y.emplace_back(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(count), d));
    }
    std::size_t line_no = 1 + num_types;
    for (std::size_t t = 0; t < num_types; ++t) {
        for (std::size_t r = 0; r < counts[t]; ++r) {
            if (!std::getline(in, line)) throw ParseError(++line_no, "missing embedding row");
            ++line_no;
            auto first_tab = line.find('\t');
            auto second_tab = line.find('\t', first_tab + 1);
            if (first_tab == std::string::npos || second_tab == std::string::npos)
                throw ParseError(line_no, "malformed embedding row");
            NodeRef node{line.substr(0, first_tab),
                         line.substr(first_tab + 1, second_tab - first_tab - 1)};
            if (node.type != out.types[t]) throw ParseError(line_no, "type out of order");
            out.nodes[t].push_back(node);
            std::stringstream ss(line.substr(second_tab + 1));
            for (int c = 0; c < d; ++c) ss >> out.y[t](static_cast<Eigen::Index>(r), c);
            if (out.y[t].row(static_cast<Eigen::Index>(r)).isZero(0.0))
                out.excluded.push_back(node);
        }
    }
    return out;
}

void write_event_embeddings(std::ostream& out, const Eigen::MatrixXd& z) {
    std::ostringstream buf;
    buf.precision(17);
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
        buf << r << '\t';
        for (Eigen::Index c = 0; c < z.cols(); ++c) {
            if (c > 0) buf << ' ';
            buf << z(r, c);
        }
        buf << '\n';
    }
    out << buf.str();
}

} // namespace event2vec
