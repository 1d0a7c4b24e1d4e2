#pragma once

#include <string>

#include <json.hpp>

#include "gl2/constructions.hpp"
#include "gl2/hecke.hpp"

namespace gl2 {

struct RunConfig {
  int p = 3;
  int ell = 2;
  RingFlavor flavor = RingFlavor::zmod;
  int t = -1;
  int chi = -1;        // -1 = sweep all central characters
  int chi1 = -1, chi2 = -1, chiprime = -1;
  uint64_t seed = 0;
  uint64_t budget_elems = 1000000;
  std::string format = "json";  // json | md
  std::string h1, phi1, h2, phi2;  // for the hom verb
  int max_spectral_dim = 1500;
};

struct Report {
  nlohmann::ordered_json body;
  // exit code semantics: 0 = success and no verified mismatch,
  // 1 = verified mismatch against the reference values, 2 = usage/budget
  int exit_code = 0;
  std::string markdown;
};

// Table 1 reference data (ell >= 2).
struct Table1Row {
  std::string type;
  long long count;
  long long dim;
};
std::vector<Table1Row> table1_reference(int q, int ell);

// Printed multiplicity-bound table with the two entries whose printed values
// conflict with the rest of the source; `resolved` carries the values forced
// by the block structures.
struct Cor16Entry {
  int t, ell;
  long long printed;
  long long resolved;
  bool disputed;
};
std::vector<Cor16Entry> cor16_reference(int q);

Report run_verb(const std::string& verb, const RunConfig& cfg);

// Byte-stable serialization of a report.
std::string emit(const Report& report, const std::string& format);

}  // namespace gl2
