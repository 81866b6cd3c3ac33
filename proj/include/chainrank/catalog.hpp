#pragma once

#include <string>
#include <vector>

namespace chainrank {

// Built-in verification catalog: small groups with known orders, chosen so
// the oracle suites finish in minutes. Expressions use the DSL grammar.
struct CatalogEntry {
  std::string name;
  std::string expression;
  std::size_t expected_order;
};

inline const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<CatalogEntry> c;
    for (std::size_t n = 1; n <= 32; ++n)
      c.push_back({"C" + std::to_string(n), "C(" + std::to_string(n) + ")", n});
    for (std::size_t n = 2; n <= 16; ++n)
      c.push_back({"D" + std::to_string(n), "D(" + std::to_string(n) + ")", 2 * n});
    c.push_back({"S3", "S(3)", 6});
    c.push_back({"S4", "S(4)", 24});
    c.push_back({"S5", "S(5)", 120});
    c.push_back({"A4", "A(4)", 12});
    c.push_back({"A5", "A(5)", 60});
    c.push_back({"Q8", "Q8", 8});
    c.push_back({"E22", "E(2,2)", 4});
    c.push_back({"E23", "E(2,3)", 8});
    c.push_back({"E24", "E(2,4)", 16});
    c.push_back({"E32", "E(3,2)", 9});
    c.push_back({"E52", "E(5,2)", 25});
    c.push_back({"C2xC4", "C(2)*C(4)", 8});
    c.push_back({"S3xC2", "S(3)*C(2)", 12});
    c.push_back({"D4xC2", "D(4)*C(2)", 16});
    c.push_back({"Q8xC2", "Q8*C(2)", 16});
    c.push_back({"A4xC2", "A(4)*C(2)", 24});
    c.push_back({"S3xS3", "S(3)*S(3)", 36});
    c.push_back({"C2wrC2", "C(2) wr C(2)", 8});
    c.push_back({"C2wrC3", "C(2) wr C(3)", 24});
    c.push_back({"C3wrC2", "C(3) wr C(2)", 18});
    return c;
  }();
  return catalog;
}

}  // namespace chainrank
