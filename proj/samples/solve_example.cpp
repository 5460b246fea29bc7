// Calibrates the built-in formulas, then solves the multiplicities of
// lambda_1 + lambda_2 + lambda_6 with each valid formula on its own.
#include <iostream>

#include "anmult/anmult.hpp"

using namespace anmult;

int main() {
  const Calibration cal = calibrate_builtin();
  const auto top = Partition::parse("3,2,1,1,1,1");

  for (const auto& spec : builtin_formulas()) {
    if (!cal.is_valid(spec.id)) {
      std::cout << spec.id.compact() << ": skipped (" << cal.diagnosis(spec.id)->summary << ")\n";
      continue;
    }
    const auto r = solve_multiplicities(top, {identity_of(spec, cal)}, {{8, 9, 10, 11, 12}, false});
    std::cout << spec.id.compact() << ":";
    for (const auto& [label, m] : r.solution->entries()) std::cout << "  m(" << label.to_string() << ")=" << m;
    std::cout << "\n";
  }

  std::cout << "dim at N=7: " << weyl_dimension(to_dynkin(top, 7)) << "\n";
}
