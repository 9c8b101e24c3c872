#include "event2vec/events.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>

namespace event2vec {

bool Event::contains(const NodeRef& node) const {
    return std::binary_search(members.begin(), members.end(), node);
}

const std::vector<std::size_t>& EventSet::events_of(const NodeRef& node) const {
    static const std::vector<std::size_t> empty;
    auto it = per_object_index.find(node);
    return it == per_object_index.end() ? empty : it->second;
}

EventSet generate_events(const Hin& hin, const EventIdentifierRule& rule) {
    if (!hin.has_type(rule.anchor_type))
        throw RuleViolation("anchor type '" + rule.anchor_type + "' not in the type set");

    EventSet out;
    std::map<NodeRef, std::size_t> event_of_anchor;
    for (const auto& link : hin.links()) {
        const bool a_anchor = link.a.type == rule.anchor_type;
        const bool b_anchor = link.b.type == rule.anchor_type;
        if (a_anchor == b_anchor)
            throw RuleViolation("link " + link.a.id + ":" + link.a.type + " -- " + link.b.id +
                                ":" + link.b.type + " has " + (a_anchor ? "two" : "zero") +
                                " anchor-type endpoints");
        const NodeRef& anchor = a_anchor ? link.a : link.b;
        const NodeRef& other = a_anchor ? link.b : link.a;
        auto [it, inserted] = event_of_anchor.try_emplace(anchor, out.events.size());
        if (inserted) {
            Event e;
            e.event_id = out.events.size();
            e.identifier = anchor;
            e.members = {anchor};
            out.events.push_back(std::move(e));
        }
        auto& members = out.events[it->second].members;
        auto pos = std::lower_bound(members.begin(), members.end(), other);
        if (pos == members.end() || *pos != other) members.insert(pos, other);
    }

    for (const auto& event : out.events)
        for (const auto& member : event.members)
            out.per_object_index[member].push_back(event.event_id);
    return out;
}

std::vector<Eigen::Index> IncidentMatrices::type_sizes() const {
    std::vector<Eigen::Index> sizes;
    sizes.reserve(h.size());
    for (const auto& m : h) sizes.push_back(m.rows());
    return sizes;
}

std::vector<Eigen::VectorXd> IncidentMatrices::event_columns(std::size_t event_id) const {
    std::vector<Eigen::VectorXd> columns;
    columns.reserve(h.size());
    for (const auto& m : h) columns.push_back(m.col(static_cast<Eigen::Index>(event_id)));
    return columns;
}

IncidentMatrices build_incident_matrices(const EventSet& events, const Hin& hin) {
    IncidentMatrices out;
    out.types = hin.type_set();
    const auto cols = static_cast<Eigen::Index>(events.size());
    for (const auto& type : out.types) {
        const auto& nodes = hin.nodes_of_type(type);
        out.nodes.push_back(nodes);
        out.h.emplace_back(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nodes.size()), cols));
    }
    for (const auto& event : events.events) {
        for (const auto& member : event.members) {
            auto t = std::find(out.types.begin(), out.types.end(), member.type) -
                     out.types.begin();
            auto row = hin.index_of(member);
            out.h[static_cast<std::size_t>(t)](static_cast<Eigen::Index>(*row),
                                               static_cast<Eigen::Index>(event.event_id)) = 1.0;
        }
    }
    for (const auto& m : out.h) out.degree.push_back(m.rowwise().sum());
    return out;
}

void write_event_dump(std::ostream& out, const EventSet& events) {
    for (const auto& event : events.events) {
        out << event.event_id << '\t' << event.identifier.id << ':' << event.identifier.type;
        for (const auto& member : event.members) out << '\t' << member.id << ':' << member.type;
        out << '\n';
    }
}

} // namespace event2vec
