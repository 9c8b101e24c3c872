#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "event2vec/events.hpp"
#include "event2vec/hin.hpp"

namespace event2vec {

/// Deterministic toy-network generators. Each template emits the edge list
/// plus the ground-truth event set, so event generation can be checked
/// against it.
struct SynthSpec {
    enum class Template { fig2a, fig2b, fig3a, random_net };

    Template tmpl = Template::fig2a;
    // random_net only:
    std::map<std::string, int> sizes; // objects per type
    int events = 0;
    int groups = 5;                   // community blocks; membership stays within a block
    std::uint64_t seed = 0;
};

struct SynthResult {
    Hin hin;
    EventSet expected_events;
    std::string anchor_type;
};

SynthResult generate(const SynthSpec& spec);

/// Parse a template name ("fig2a", "fig2b", "fig3a", "random").
SynthSpec::Template parse_template(const std::string& name);

} // namespace event2vec
