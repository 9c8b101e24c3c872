#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "event2vec/errors.hpp"

namespace event2vec {

/// A typed object reference. Identity is the (id, type) pair, so the same id
/// string under two types names two distinct objects.
struct NodeRef {
    std::string id;
    std::string type;

    bool operator==(const NodeRef&) const = default;
    auto operator<=>(const NodeRef&) const = default;
};

/// An undirected link between two typed objects. The link type is the
/// unordered pair of endpoint types.
struct Link {
    NodeRef a;
    NodeRef b;
};

/// Unordered endpoint-type pair identifying the link type.
std::pair<std::string, std::string> link_type(const Link& link);

/// Typed multigraph. Immutable after construction; safe to share read-only
/// across threads.
class Hin {
public:
    Hin() = default;
    explicit Hin(std::vector<std::string> schema);

    /// Parse a tab-separated edge list: src_id, src_type, dst_id, dst_type.
    /// Lines starting with '#' and blank lines are skipped. Duplicate lines
    /// produce duplicate links unless `dedup` is set.
    static Hin load_edge_list(std::istream& in, const std::vector<std::string>& schema,
                              bool dedup = false);

    /// Schema file: one type tag per line, '#' comments allowed.
    static std::vector<std::string> load_schema(std::istream& in);

    void add_node(const NodeRef& node);
    void add_link(const Link& link);

    const std::vector<std::string>& type_set() const { return types_; }
    const std::vector<Link>& links() const { return links_; }

    /// |T_V| + |T_E| > 2
    bool heterogeneous() const;

    std::size_t node_count() const;
    std::map<std::string, std::size_t> node_counts() const;

    bool has_type(const std::string& type) const;

    /// Nodes of one type in first-appearance order.
    const std::vector<NodeRef>& nodes_of_type(const std::string& type) const;

    /// Index of a node within its type's ordering, or nullopt if absent.
    std::optional<std::size_t> index_of(const NodeRef& node) const;

    bool has_node(const NodeRef& node) const { return index_of(node).has_value(); }

    /// True if a link joins the two nodes in either orientation.
    bool has_link(const NodeRef& u, const NodeRef& v) const;

    /// Serialize back to the edge-list format (one line per stored link).
    void write_edge_list(std::ostream& out) const;

private:
    std::size_t type_index(const std::string& type) const;

    std::vector<std::string> types_;
    std::vector<std::vector<NodeRef>> nodes_by_type_;       // aligned with types_
    std::vector<std::map<std::string, std::size_t>> index_; // id -> position, per type
    std::vector<Link> links_;
    std::set<std::pair<NodeRef, NodeRef>> link_keys_;       // canonical (min,max) pairs
};

} // namespace event2vec
