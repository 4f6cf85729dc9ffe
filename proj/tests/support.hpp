#pragma once

#include <string>

#include "latkit/io.hpp"
#include "latkit/lattice.hpp"

inline std::string fixture(const std::string& name) { return std::string(LATKIT_FIXTURES) + "/" + name; }

inline latkit::FiniteLattice load_fixture(const std::string& name) { return latkit::load_lattice(fixture(name)); }

inline latkit::Mask set_of(const latkit::FiniteLattice& l, std::initializer_list<const char*> labels) {
  latkit::Mask m = 0;
  for (const char* s : labels) m |= latkit::bit(l.element(s));
  return m;
}

/// Same labels in the same order and the same covering pairs; names may differ.
inline bool same_structure(const latkit::FiniteLattice& a, const latkit::FiniteLattice& b) {
  return a.labels() == b.labels() && a.covers() == b.covers();
}
