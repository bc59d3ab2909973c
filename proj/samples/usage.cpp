// Builds the 8-cycle instance, computes maximin shares, and solves a small
// random tree with the dispatcher.
#include <iostream>

#include "cfd/cfd.hpp"

int main() {
  const auto cycle = cfd::fixture_cycle8();
  const auto mms = cfd::oracle_mms_values(cycle);
  for (int i = 0; i < cycle.agent_count(); ++i) std::cout << cycle.agent(i).name << " mms " << mms[i] << "\n";
  std::cout << "MMS allocation exists: " << (cfd::oracle_mms_exists(cycle).decision ? "yes" : "no") << "\n";

  const auto tree = cfd::gen_random(7, cfd::GraphKind::tree, 8, 3, 10);
  for (auto problem : {cfd::Problem::prop, cfd::Problem::mms}) {
    const auto report = cfd::dispatch(tree, problem);
    std::cout << cfd::report_to_json(tree, report).dump() << "\n";
  }
}
