#pragma once
// Test corpora of groups given by descriptors, with pairwise expectations.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpi/group.hpp"

namespace gpi {

struct CorpusGroup {
  std::string name;        // file stem
  std::string descriptor;  // rebuilds the table
  CayleyTable table;
};

struct CorpusPair {
  int a = 0, b = 0;               // indices into groups, a < b
  std::optional<bool> expected;   // oracle verdict, when within the guard
};

struct Corpus {
  std::vector<CorpusGroup> groups;
  std::vector<CorpusPair> pairs;  // every pair of equal order
};

// Z_q^l acting on Z_p^k for q != p in {2,3,5,7}, q^l p^k <= max_order:
// the trivial action plus up to per_shape - 1 sampled actions per shape,
// with exact repeats dropped. Also the named small families (order 18, 21
// and 30). Groups needing more than max_gens generators are skipped so the
// oracle stays cheap.
Corpus coprime_corpus(std::uint64_t seed = 1, int max_order = 200, int per_shape = 6, int max_gens = 3);
// The two central extensions of Z_2 by A_5, each with a relabeled copy.
Corpus central_corpus();
// One descriptor per line; blank lines and lines starting with '#' skipped.
Corpus corpus_from_lines(const std::string& text);

// All pairs of equal order.
void pair_up(Corpus& c);
// Fills expected by oracle_iso for pairs whose order is within guard.
void oracle_expectations(Corpus& c, int guard);

}  // namespace gpi
