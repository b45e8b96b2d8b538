// Builds a small family by hand, computes its certified resultant and
// compares the height with E(A).

#include "sparseres/io.hpp"
#include "sparseres/measures.hpp"

#include <iostream>

int main() {
  using namespace sparseres;
  using P = LatticePoint;
  // Two generic conics and a line in the plane.
  const SupportFamily family(2,
                             {Support({P({0, 0}), P({1, 0}), P({0, 1}), P({2, 0}), P({1, 1}), P({0, 2})}),
                              Support({P({0, 0}), P({2, 0}), P({0, 2})}),
                              Support({P({0, 0}), P({1, 0}), P({0, 1})})},
                             "conics-and-line");
  const ResultantCertificate cert = compute_resultant(family, 1);
  BoundsReport r = basic_report(family);
  add_resultant(r, cert);
  std::cout << report_to_json(r).dump(2) << "\n";
  std::cout << "resultant has " << cert.polynomial.size() << " terms, certified: " << std::boolalpha
            << cert.all_passed() << "\n";
}
