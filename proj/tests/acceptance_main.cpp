// Acceptance suite: every shipped guarantee, one pass/fail line each.
// Exit code = number of failed criteria.

#include <cstdlib>
#include <iostream>

#include "qcavity/acceptance.hpp"

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const auto results = qcavity::run_acceptance(only);
  return qcavity::print_acceptance(std::cout, results);
}
