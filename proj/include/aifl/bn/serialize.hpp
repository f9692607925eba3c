#pragma once

#include <iosfwd>
#include <string>

#include "aifl/bn/bayes_net.hpp"

namespace aifl::bn {

/// Human-readable snapshot: vertex list (name, cardinality, role), edge list,
/// and per-vertex pseudo-count tables. Numbers use shortest round-trip text.
void write_net(std::ostream& os, const BayesNet& net);
std::string to_text(const BayesNet& net);

}  // namespace aifl::bn
