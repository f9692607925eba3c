#include "aifl/bn/serialize.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

namespace aifl::bn {

namespace {

void put_double(std::ostream& os, double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  os.write(buf, end - buf);
  (void)ec;
}

}  // namespace

void write_net(std::ostream& os, const BayesNet& net) {
  os << "bayesnet v1\n";
  os << "variables " << net.dag.size() << "\n";
  for (const Variable& v : net.dag.vars) {
    os << v.name << " " << v.cardinality << " " << to_string(v.role) << "\n";
  }
  os << "edges " << net.dag.edges.size() << "\n";
  for (const auto& [p, c] : net.dag.edges) {
    os << net.dag.vars[p].name << " -> " << net.dag.vars[c].name << "\n";
  }
  for (const Cpd& cpd : net.cpds) {
    os << "cpd " << net.dag.vars[cpd.child].name;
    if (!cpd.parents.empty()) {
      os << " |";
      for (int p : cpd.parents) os << " " << net.dag.vars[p].name;
    }
    os << "\n";
    os << "counts " << cpd.child_card << " " << cpd.parent_joint() << "\n";
    for (int s = 0; s < cpd.child_card; ++s) {
      for (int pj = 0; pj < cpd.parent_joint(); ++pj) {
        if (pj > 0) os << " ";
        put_double(os, cpd.count(s, pj));
      }
      os << "\n";
    }
  }
}

std::string to_text(const BayesNet& net) {
  std::ostringstream os;
  write_net(os, net);
  return os.str();
}

}  // namespace aifl::bn
