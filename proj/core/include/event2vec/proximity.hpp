#pragma once

#include "event2vec/events.hpp"

namespace event2vec {

/// Brute-force event-driven proximity measures over raw event membership.
/// Quadratic in the number of events; intended for tests and small analyses.

/// First-order proximity: |Omega_i ∩ Omega_j| / |Omega_i ∪ Omega_j|.
/// Throws UndefinedProximity when both objects are event-free.
double efp(const NodeRef& i, const NodeRef& j, const EventSet& events);

/// Cosine of the binary membership vectors of two events:
/// |e ∩ k| / sqrt(|e| * |k|).
double event_cosine(const Event& e, const Event& k);

/// Second-order proximity: (1/|Omega_i ∪ Omega_j|) * sum over pairs
/// (e in Omega_i, k in Omega_j, e != k) of event_cosine(e, k).
double esp(const NodeRef& i, const NodeRef& j, const EventSet& events);

} // namespace event2vec
