#include "event2vec/synth.hpp"

#include <algorithm>
#include <random>

#include "event2vec/errors.hpp"

namespace event2vec {

namespace {

Event make_event(std::size_t id, NodeRef identifier, std::vector<NodeRef> members) {
    Event e;
    e.event_id = id;
    e.identifier = std::move(identifier);
    e.members = std::move(members);
    std::sort(e.members.begin(), e.members.end());
    e.members.erase(std::unique(e.members.begin(), e.members.end()), e.members.end());
    return e;
}

void index_events(EventSet& events) {
    for (const auto& event : events.events)
        for (const auto& member : event.members)
            events.per_object_index[member].push_back(event.event_id);
}

NodeRef author(int i) { return {"a" + std::to_string(i), "author"}; }
NodeRef paper(int i) { return {"p" + std::to_string(i), "paper"}; }
NodeRef venue(int i) { return {"c" + std::to_string(i), "venue"}; }
NodeRef term(int i) { return {"t" + std::to_string(i), "term"}; }

// One paper with its authors, venue, and terms; links in author, venue, term
// order. Appends the matching ground-truth event.
void add_publication(Hin& hin, EventSet& events, const NodeRef& p,
                     const std::vector<NodeRef>& authors, const std::vector<NodeRef>& venues,
                     const std::vector<NodeRef>& terms) {
    std::vector<NodeRef> members{p};
    for (const auto& a : authors) {
        hin.add_link({a, p});
        members.push_back(a);
    }
    for (const auto& c : venues) {
        hin.add_link({p, c});
        members.push_back(c);
    }
    for (const auto& t : terms) {
        hin.add_link({p, t});
        members.push_back(t);
    }
    events.events.push_back(make_event(events.events.size(), p, std::move(members)));
}

SynthResult make_fig2a() {
    SynthResult out;
    out.anchor_type = "paper";
    out.hin = Hin({"author", "paper", "venue"});
    add_publication(out.hin, out.expected_events, paper(1), {author(1), author(2)}, {venue(1)},
                    {});
    add_publication(out.hin, out.expected_events, paper(2), {author(1), author(2)}, {venue(1)},
                    {});
    index_events(out.expected_events);
    return out;
}

SynthResult make_fig2b() {
    SynthResult out;
    out.anchor_type = "paper";
    out.hin = Hin({"author", "paper", "venue", "term"});
    add_publication(out.hin, out.expected_events, paper(1), {author(1)}, {venue(1)}, {term(1)});
    add_publication(out.hin, out.expected_events, paper(2), {author(2)}, {venue(1)}, {term(1)});
    index_events(out.expected_events);
    return out;
}

// Two author groups: a1 and a2 publish solo papers sharing a venue and topic
// term; a3, a4, a5 co-author pairwise in a second venue and topic. Five
// papers, hence five events.
SynthResult make_fig3a() {
    SynthResult out;
    out.anchor_type = "paper";
    out.hin = Hin({"author", "paper", "venue", "term"});
    auto& ev = out.expected_events;
    add_publication(out.hin, ev, paper(1), {author(1)}, {venue(1)}, {term(1)});
    add_publication(out.hin, ev, paper(2), {author(2)}, {venue(1)}, {term(1)});
    add_publication(out.hin, ev, paper(3), {author(3), author(4)}, {venue(2)}, {term(2)});
    add_publication(out.hin, ev, paper(4), {author(4), author(5)}, {venue(2)}, {term(2)});
    add_publication(out.hin, ev, paper(5), {author(3), author(5)}, {venue(2)}, {term(2)});
    index_events(ev);
    return out;
}

int size_or(const SynthSpec& spec, const std::string& type, int fallback) {
    auto it = spec.sizes.find(type);
    return it == spec.sizes.end() ? fallback : it->second;
}

SynthResult make_random(const SynthSpec& spec) {
    SynthResult out;
    out.anchor_type = "paper";
    out.hin = Hin({"author", "paper", "venue", "term"});
    if (spec.events <= 0) return out;

    const int n_authors = std::max(1, size_or(spec, "author", 20));
    const int n_venues = std::max(1, size_or(spec, "venue", 4));
    const int n_terms = std::max(1, size_or(spec, "term", 10));
    int groups = std::clamp(spec.groups, 1, std::min({n_authors, n_venues, n_terms}));

    std::mt19937_64 rng(spec.seed);
    auto pick_in_group = [&](int pool, int g) {
        // members of group g are the pool indices congruent to g
        int count = (pool - g + groups - 1) / groups;
        int k = static_cast<int>(rng() % static_cast<std::uint64_t>(count));
        return g + k * groups;
    };

    for (int j = 0; j < spec.events; ++j) {
        int g = j % groups;
        std::vector<NodeRef> authors;
        int n_auth = 1 + static_cast<int>(rng() % 3);
        for (int k = 0; k < n_auth; ++k) authors.push_back(author(pick_in_group(n_authors, g)));
        std::sort(authors.begin(), authors.end());
        authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
        std::vector<NodeRef> venues{venue(pick_in_group(n_venues, g))};
        std::vector<NodeRef> terms;
        int n_term = static_cast<int>(rng() % 3);
        for (int k = 0; k < n_term; ++k) terms.push_back(term(pick_in_group(n_terms, g)));
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        add_publication(out.hin, out.expected_events, paper(j), authors, venues, terms);
    }
    index_events(out.expected_events);
    return out;
}

} // namespace

SynthSpec::Template parse_template(const std::string& name) {
    if (name == "fig2a") return SynthSpec::Template::fig2a;
    if (name == "fig2b") return SynthSpec::Template::fig2b;
    if (name == "fig3a") return SynthSpec::Template::fig3a;
    if (name == "random") return SynthSpec::Template::random_net;
    throw SchemaError("unknown template '" + name + "'");
}

SynthResult generate(const SynthSpec& spec) {
    switch (spec.tmpl) {
    case SynthSpec::Template::fig2a: return make_fig2a();
    case SynthSpec::Template::fig2b: return make_fig2b();
    case SynthSpec::Template::fig3a: return make_fig3a();
    case SynthSpec::Template::random_net: return make_random(spec);
    }
    throw SchemaError("invalid template");
}

} // namespace event2vec
