// Prints H, E and q for the dense Sylvester resultant of two degree-d
// polynomials, d = 2..5.

#include "sparseres/measures.hpp"

#include <iostream>

int main() {
  using namespace sparseres;
  for (std::size_t d = 2; d <= 5; ++d) {
    const SupportFamily family = sylvester_family(d, d);
    BoundsReport r = basic_report(family);
    add_resultant(r, sylvester_resultant(d, d));
    std::cout << "d=" << d << "  H=" << *r.H << "  E=" << r.E << "  q=" << format_q(*r.q) << "\n";
  }
}
