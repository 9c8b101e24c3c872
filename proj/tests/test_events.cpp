#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "event2vec/events.hpp"
#include "event2vec/synth.hpp"

using namespace event2vec;

namespace {

std::set<NodeRef> member_set(const Event& e) { return {e.members.begin(), e.members.end()}; }

// membership sets keyed by identifier, for order-insensitive comparison
std::map<NodeRef, std::set<NodeRef>> canonical(const EventSet& events) {
    std::map<NodeRef, std::set<NodeRef>> out;
    for (const auto& e : events.events) out[e.identifier] = member_set(e);
    return out;
}

} // namespace

TEST_CASE("fig2a network merges into two events") {
    auto syn = generate({SynthSpec::Template::fig2a});
    auto events = generate_events(syn.hin, {"paper"});
    REQUIRE(events.size() == 2);
    CHECK(member_set(events.events[0]) ==
          std::set<NodeRef>{{"a1", "author"}, {"a2", "author"}, {"p1", "paper"}, {"c1", "venue"}});
    CHECK(member_set(events.events[1]) ==
          std::set<NodeRef>{{"a1", "author"}, {"a2", "author"}, {"p2", "paper"}, {"c1", "venue"}});
}

TEST_CASE("a single link forms a minimal event") {
    Hin hin(std::vector<std::string>{"author", "paper"});
    hin.add_link({{"a1", "author"}, {"p1", "paper"}});
    auto events = generate_events(hin, {"paper"});
    REQUIRE(events.size() == 1);
    CHECK(member_set(events.events[0]) == std::set<NodeRef>{{"a1", "author"}, {"p1", "paper"}});
    CHECK(events.events[0].identifier == NodeRef{"p1", "paper"});
}

TEST_CASE("fig3a yields one event per paper") {
    auto syn = generate({SynthSpec::Template::fig3a});
    auto events = generate_events(syn.hin, {"paper"});
    CHECK(events.size() == 5);
    for (const auto& e : events.events) CHECK(e.identifier.type == "paper");
}

TEST_CASE("link with no anchor endpoint violates the rule") {
    Hin hin(std::vector<std::string>{"author", "paper", "venue"});
    hin.add_link({{"a1", "author"}, {"c1", "venue"}});
    CHECK_THROWS_WITH_AS(generate_events(hin, {"paper"}), doctest::Contains("a1"),
                         RuleViolation);
}

TEST_CASE("link with two anchor endpoints violates the rule") {
    Hin hin(std::vector<std::string>{"paper"});
    hin.add_link({{"p1", "paper"}, {"p2", "paper"}});
    CHECK_THROWS_AS(generate_events(hin, {"paper"}), RuleViolation);
}

TEST_CASE("anchor type outside the type set violates the rule") {
    Hin hin(std::vector<std::string>{"author", "paper"});
    CHECK_THROWS_AS(generate_events(hin, {"venue"}), RuleViolation);
}

TEST_CASE("identifier is a member and per_object_index inverts membership") {
    auto syn = generate({SynthSpec::Template::fig3a});
    auto events = generate_events(syn.hin, {"paper"});
    for (const auto& e : events.events) CHECK(e.contains(e.identifier));
    for (const auto& [node, ids] : events.per_object_index)
        for (auto id : ids) CHECK(events.events[id].contains(node));
    for (const auto& e : events.events)
        for (const auto& m : e.members) {
            const auto& ids = events.events_of(m);
            CHECK(std::find(ids.begin(), ids.end(), e.event_id) != ids.end());
        }
}

TEST_CASE("permuted link streams yield the same membership sets") {
    auto syn = generate({SynthSpec::Template::fig3a});
    auto base = canonical(generate_events(syn.hin, {"paper"}));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        auto links = syn.hin.links();
        for (std::size_t i = links.size(); i > 1; --i) std::swap(links[i - 1], links[rng() % i]);
        Hin shuffled(syn.hin.type_set());
        for (const auto& l : links) shuffled.add_link(l);
        CHECK(canonical(generate_events(shuffled, {"paper"})) == base);
    }
}

TEST_CASE("fig2a incident matrix for authors is all ones") {
    auto syn = generate({SynthSpec::Template::fig2a});
    auto events = generate_events(syn.hin, {"paper"});
    auto m = build_incident_matrices(events, syn.hin);
    auto t = std::find(m.types.begin(), m.types.end(), "author") - m.types.begin();
    const auto& h = m.h[static_cast<std::size_t>(t)];
    REQUIRE(h.rows() == 2);
    REQUIRE(h.cols() == 2);
    CHECK(h.isOnes());
}

TEST_CASE("fig2b incident matrix for authors is the identity pattern") {
    auto syn = generate({SynthSpec::Template::fig2b});
    auto events = generate_events(syn.hin, {"paper"});
    auto m = build_incident_matrices(events, syn.hin);
    auto t = std::find(m.types.begin(), m.types.end(), "author") - m.types.begin();
    const auto& h = m.h[static_cast<std::size_t>(t)];
    CHECK(h(0, 0) == 1.0);
    CHECK(h(0, 1) == 0.0);
    CHECK(h(1, 0) == 0.0);
    CHECK(h(1, 1) == 1.0);
}

TEST_CASE("empty event set gives zero-column matrices") {
    Hin hin(std::vector<std::string>{"author", "paper"});
    EventSet events;
    auto m = build_incident_matrices(events, hin);
    for (const auto& h : m.h) CHECK(h.cols() == 0);
    CHECK(m.event_count() == 0);
}

TEST_CASE("column sums equal event member counts and degrees sum to total membership") {
    auto syn = generate({SynthSpec::Template::fig3a});
    auto events = generate_events(syn.hin, {"paper"});
    auto m = build_incident_matrices(events, syn.hin);

    for (std::size_t j = 0; j < events.size(); ++j) {
        double column_total = 0.0;
        for (const auto& h : m.h) column_total += h.col(static_cast<Eigen::Index>(j)).sum();
        CHECK(column_total == static_cast<double>(events.events[j].members.size()));
    }

    double degree_total = 0.0;
    for (const auto& d : m.degree) degree_total += d.sum();
    double member_total = 0.0;
    for (const auto& e : events.events) member_total += static_cast<double>(e.members.size());
    CHECK(degree_total == member_total);

    for (std::size_t t = 0; t < m.types.size(); ++t)
        for (std::size_t r = 0; r < m.nodes[t].size(); ++r)
            CHECK(m.degree[t](static_cast<Eigen::Index>(r)) ==
                  static_cast<double>(events.events_of(m.nodes[t][r]).size()));
}

TEST_CASE("event dump lists identifier then sorted members") {
    auto syn = generate({SynthSpec::Template::fig2b});
    auto events = generate_events(syn.hin, {"paper"});
    std::ostringstream out;
    write_event_dump(out, events);
    CHECK(out.str() == "0\tp1:paper\ta1:author\tc1:venue\tp1:paper\tt1:term\n"
                       "1\tp2:paper\ta2:author\tc1:venue\tp2:paper\tt1:term\n");
}
