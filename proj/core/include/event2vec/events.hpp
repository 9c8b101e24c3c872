#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "event2vec/hin.hpp"

namespace event2vec {

/// Maps each link to its event identifier: the endpoint whose type equals
/// anchor_type. The anchor rule is the single shipped identifier rule; custom
/// rules can be added by extending generate_events.
struct EventIdentifierRule {
    std::string anchor_type;
};

/// An indecomposable multi-object relation. members is sorted, duplicate-free,
/// and contains the identifier.
struct Event {
    std::size_t event_id = 0;
    NodeRef identifier;
    std::vector<NodeRef> members;

    bool contains(const NodeRef& node) const;
};

struct EventSet {
    std::vector<Event> events; // ordered by first appearance of identifiers
    std::map<NodeRef, std::vector<std::size_t>> per_object_index; // object -> sorted event ids

    std::size_t size() const { return events.size(); }

    /// Event ids containing the object; empty if event-free.
    const std::vector<std::size_t>& events_of(const NodeRef& node) const;
};

/// Merge links sharing an event identifier into events. Deterministic given
/// link order. Throws RuleViolation if a link has zero or two anchor-type
/// endpoints, or if the anchor type is not declared.
EventSet generate_events(const Hin& hin, const EventIdentifierRule& rule);

/// Per-type binary object-by-event membership matrices with their row-sum
/// degree diagonals. Row order matches Hin::nodes_of_type; column order
/// matches EventSet order.
struct IncidentMatrices {
    std::vector<std::string> types;
    std::vector<std::vector<NodeRef>> nodes; // row labels, per type
    std::vector<Eigen::MatrixXd> h;          // |V^t| x |Omega|, entries in {0,1}
    std::vector<Eigen::VectorXd> degree;     // row sums of h[t]

    std::size_t event_count() const { return h.empty() ? 0 : static_cast<std::size_t>(h[0].cols()); }
    std::vector<Eigen::Index> type_sizes() const;

    /// Incidence columns of one event, one vector per type.
    std::vector<Eigen::VectorXd> event_columns(std::size_t event_id) const;
};

IncidentMatrices build_incident_matrices(const EventSet& events, const Hin& hin);

/// Event dump line format: event_id <tab> identifier (id:type) <tab> one
/// id:type field per member.
void write_event_dump(std::ostream& out, const EventSet& events);

} // namespace event2vec
