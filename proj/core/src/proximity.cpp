#include "event2vec/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace event2vec {

namespace {

std::size_t union_size(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u.size();
}

} // namespace

double efp(const NodeRef& i, const NodeRef& j, const EventSet& events) {
    const auto& wi = events.events_of(i);
    const auto& wj = events.events_of(j);
    if (wi.empty() && wj.empty())
        throw UndefinedProximity("both " + i.id + ":" + i.type + " and " + j.id + ":" + j.type +
                                 " are event-free");
    std::vector<std::size_t> inter;
    std::set_intersection(wi.begin(), wi.end(), wj.begin(), wj.end(), std::back_inserter(inter));
    return static_cast<double>(inter.size()) / static_cast<double>(union_size(wi, wj));
}

double event_cosine(const Event& e, const Event& k) {
    std::vector<NodeRef> shared;
    std::set_intersection(e.members.begin(), e.members.end(), k.members.begin(), k.members.end(),
                          std::back_inserter(shared));
    return static_cast<double>(shared.size()) /
           std::sqrt(static_cast<double>(e.members.size()) *
                     static_cast<double>(k.members.size()));
}

double esp(const NodeRef& i, const NodeRef& j, const EventSet& events) {
    const auto& wi = events.events_of(i);
    const auto& wj = events.events_of(j);
    if (wi.empty() && wj.empty())
        throw UndefinedProximity("both " + i.id + ":" + i.type + " and " + j.id + ":" + j.type +
                                 " are event-free");
    double total = 0.0;
    for (auto e : wi)
        for (auto k : wj) {
            if (e == k) continue;
            total += event_cosine(events.events[e], events.events[k]);
        }
    return total / static_cast<double>(union_size(wi, wj));
}

} // namespace event2vec
