#include "event2vec/hin.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace event2vec {

std::pair<std::string, std::string> link_type(const Link& link) {
    auto lo = std::min(link.a.type, link.b.type);
    auto hi = std::max(link.a.type, link.b.type);
    return {lo, hi};
}

Hin::Hin(std::vector<std::string> schema) : types_(std::move(schema)) {
    nodes_by_type_.resize(types_.size());
    index_.resize(types_.size());
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        auto pos = line.find('\t', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

} // namespace

Hin Hin::load_edge_list(std::istream& in, const std::vector<std::string>& schema, bool dedup) {
    Hin hin(schema);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() < 4)
            throw ParseError(line_no, "expected >=4 tab-separated fields, got " +
                                          std::to_string(fields.size()));
        NodeRef src{fields[0], fields[1]};
        NodeRef dst{fields[2], fields[3]};
        for (const auto& node : {src, dst}) {
            if (!hin.has_type(node.type))
                throw SchemaError("undeclared type tag '" + node.type + "' at line " +
                                  std::to_string(line_no));
        }
        Link link{src, dst};
        if (dedup && hin.has_link(src, dst)) {
            hin.add_node(src);
            hin.add_node(dst);
            continue;
        }
        hin.add_link(link);
    }
    return hin;
}

std::vector<std::string> Hin::load_schema(std::istream& in) {
    std::vector<std::string> schema;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        schema.push_back(line);
    }
    return schema;
}

std::size_t Hin::type_index(const std::string& type) const {
    auto it = std::find(types_.begin(), types_.end(), type);
    if (it == types_.end()) throw SchemaError("undeclared type tag '" + type + "'");
    return static_cast<std::size_t>(it - types_.begin());
}

bool Hin::has_type(const std::string& type) const {
    return std::find(types_.begin(), types_.end(), type) != types_.end();
}

void Hin::add_node(const NodeRef& node) {
    auto t = type_index(node.type);
    auto [it, inserted] = index_[t].try_emplace(node.id, nodes_by_type_[t].size());
    if (inserted) nodes_by_type_[t].push_back(node);
}

void Hin::add_link(const Link& link) {
    add_node(link.a);
    add_node(link.b);
    links_.push_back(link);
    link_keys_.insert(std::minmax(link.a, link.b));
}

bool Hin::heterogeneous() const {
    std::set<std::pair<std::string, std::string>> edge_types;
    std::set<std::string> node_types;
    for (const auto& link : links_) {
        edge_types.insert(link_type(link));
        node_types.insert(link.a.type);
        node_types.insert(link.b.type);
    }
    for (const auto& nodes : nodes_by_type_)
        if (!nodes.empty()) node_types.insert(nodes.front().type);
    return node_types.size() + edge_types.size() > 2;
}

std::size_t Hin::node_count() const {
    std::size_t total = 0;
    for (const auto& nodes : nodes_by_type_) total += nodes.size();
    return total;
}

std::map<std::string, std::size_t> Hin::node_counts() const {
    std::map<std::string, std::size_t> counts;
    for (std::size_t t = 0; t < types_.size(); ++t) counts[types_[t]] = nodes_by_type_[t].size();
    return counts;
}

const std::vector<NodeRef>& Hin::nodes_of_type(const std::string& type) const {
    return nodes_by_type_[type_index(type)];
}

std::optional<std::size_t> Hin::index_of(const NodeRef& node) const {
    auto it = std::find(types_.begin(), types_.end(), node.type);
    if (it == types_.end()) return std::nullopt;
    const auto& idx = index_[static_cast<std::size_t>(it - types_.begin())];
    auto found = idx.find(node.id);
    if (found == idx.end()) return std::nullopt;
    return found->second;
}

bool Hin::has_link(const NodeRef& u, const NodeRef& v) const {
    return link_keys_.count(std::minmax(u, v)) > 0;
}

void Hin::write_edge_list(std::ostream& out) const {
    for (const auto& link : links_)
        out << link.a.id << '\t' << link.a.type << '\t' << link.b.id << '\t' << link.b.type
            << '\n';
}

} // namespace event2vec
