#pragma once
// Commands behind the gpi tool. Each returns a report whose JSON form has a
// stable field order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gpi/corpus.hpp"
#include "gpi/exec.hpp"
#include "gpi/fp.hpp"
#include "gpi/group.hpp"
#include "gpi/oracle.hpp"

namespace gpi {

struct RunReport {
  std::string command;
  std::string strategy;
  std::optional<bool> verdict;
  std::optional<std::vector<Elem>> witness;
  bool witness_valid = false;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  double seconds = 0;
  exec::Counters counters;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

// HEE, HprodE, HAE, CentralRadicalSimple, CentralRadicalPerfectBounded.
std::vector<std::string> classify_tags(const CayleyTable& G);

// strategy: auto | coprime | central | centrad | oracle. auto classifies
// both groups and dispatches; it throws NotInAnyClass when neither group
// lies in a supported class. A witness is always re-validated.
RunReport cmd_iso(const CayleyTable& G1, const CayleyTable& G2, const std::string& strategy = "auto",
                  int guard = kDefaultGuard);
RunReport cmd_classify(const CayleyTable& G);
// |Aut(G)| by generator enumeration.
RunReport cmd_oracle_aut(const CayleyTable& G, int guard = kDefaultGuard);
RunReport cmd_codeq(const FpMatrix& A, const FpMatrix& B);

// Span and work of code_equivalence on seeded random codes of length m over
// F_p with d rows, and the constant C = max span / m^3 over the runs.
struct SpanProfile {
  std::vector<int> m;
  std::vector<exec::Counters> counters;
  double C = 0;
};
SpanProfile profile_code_equivalence(const std::vector<int>& ms, int d, int p, std::uint64_t seed);
RunReport cmd_profile(const std::vector<int>& ms, int d, int p, std::uint64_t seed);

// Writes one .cayley file per group and manifest.json into dir.
void write_corpus(const Corpus& c, const std::string& dir);

}  // namespace gpi
