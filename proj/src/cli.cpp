#include "gpi/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <random>

#include "gpi/centrad.hpp"
#include "gpi/codeq.hpp"
#include "gpi/cohom.hpp"
#include "gpi/coprime.hpp"
#include "gpi/io.hpp"
#include "gpi/perm.hpp"

namespace gpi {
namespace {

using Json = nlohmann::ordered_json;

// Runs body under a fresh counting frame and records time and counters.
template <class F>
void measured(RunReport& r, F&& body) {
  exec::SpanScope scope;
  auto t0 = std::chrono::steady_clock::now();
  body();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.counters = scope.counters();
}

bool has(const std::vector<std::string>& tags, const std::string& t) {
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

void set_witness(RunReport& r, const CayleyTable& G1, const CayleyTable& G2,
                 const std::optional<std::vector<Elem>>& w) {
  r.witness = w;
  r.witness_valid = w && is_isomorphism(G1, G2, *w);
  if (w && !r.witness_valid) throw Error("InvalidWitness", "strategy " + r.strategy + " returned a non-isomorphism");
}

void coset_summary(RunReport& r, int n, const std::vector<std::vector<Elem>>& gens) {
  r.details["aut_generators"] = gens.size();
  r.details["aut_order"] = PermGroup(n, gens).order();
}

void run_coprime(RunReport& r, const CayleyTable& G1, const CayleyTable& G2) {
  auto c1 = classify_coprime(G1), c2 = classify_coprime(G2);
  CoprimeVerdict v;
  if (c1.hee && c2.hee) {
    r.strategy = "coprime:HEE";
    v = iso_HEE(G1, G2);
  } else if (c1.hprode && c2.hprode) {
    r.strategy = "coprime:HprodE";
    v = iso_HprodE(G1, G2);
  } else {
    r.strategy = "coprime:HAE";
    v = iso_HAE(G1, G2);
  }
  r.verdict = v.iso;
  r.details["code_instances"] = v.instances;
  set_witness(r, G1, G2, v.witness);
}

void run_central(RunReport& r, const CayleyTable& G1, const CayleyTable& G2) {
  r.strategy = "central";
  auto res = iso_coset_central_elemab(G1, G2);
  r.verdict = res.iso.has_value();
  set_witness(r, G1, G2, res.iso);
  coset_summary(r, G1.order(), res.aut_gens);
}

void run_centrad(RunReport& r, const CayleyTable& G1, const CayleyTable& G2) {
  r.strategy = "centrad";
  auto res = aut_coset_centrad(G1, G2);
  r.verdict = res.iso.has_value();
  set_witness(r, G1, G2, res.iso);
  coset_summary(r, G1.order(), res.aut_gens);
}

void run_oracle(RunReport& r, const CayleyTable& G1, const CayleyTable& G2, int guard) {
  r.strategy = "oracle";
  auto w = oracle_iso(G1, G2, guard);
  r.verdict = w.has_value();
  set_witness(r, G1, G2, w);
}

Json tags_json(const std::vector<std::string>& t) {
  Json j = Json::array();
  for (const auto& s : t) j.push_back(s);
  return j;
}

}  // namespace

Json RunReport::to_json() const {
  Json j;
  j["command"] = command;
  j["strategy"] = strategy;
  j["verdict"] = verdict ? Json(*verdict) : Json(nullptr);
  j["witness"] = witness ? Json(*witness) : Json(nullptr);
  j["witness_valid"] = witness_valid;
  j["details"] = details;
  j["seconds"] = seconds;
  j["work"] = counters.work;
  j["span"] = counters.span;
  return j;
}

std::string RunReport::to_text() const {
  std::string s = command + "\n";
  if (!strategy.empty()) s += "strategy: " + strategy + "\n";
  if (verdict) s += std::string("verdict: ") + (*verdict ? "isomorphic" : "not isomorphic") + "\n";
  if (witness) s += std::string("witness: ") + (witness_valid ? "verified" : "unverified") + "\n";
  for (const auto& [k, v] : details.items()) s += k + ": " + v.dump() + "\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "time: %.3f s  work: %llu  span: %llu\n", seconds,
                static_cast<unsigned long long>(counters.work), static_cast<unsigned long long>(counters.span));
  return s + buf;
}

std::vector<std::string> classify_tags(const CayleyTable& G) {
  std::vector<std::string> tags;
  auto c = classify_coprime(G);
  if (c.hee) tags.push_back("HEE");
  if (c.hprode) tags.push_back("HprodE");
  if (c.hae) tags.push_back("HAE");
  std::string t = centrad_tag(G);
  if (!t.empty()) tags.push_back(t);
  return tags;
}

RunReport cmd_iso(const CayleyTable& G1, const CayleyTable& G2, const std::string& strategy, int guard) {
  RunReport r;
  r.command = "iso --strategy=" + strategy;
  measured(r, [&] {
    if (strategy == "coprime") {
      run_coprime(r, G1, G2);
    } else if (strategy == "central") {
      run_central(r, G1, G2);
    } else if (strategy == "centrad") {
      run_centrad(r, G1, G2);
    } else if (strategy == "oracle") {
      run_oracle(r, G1, G2, guard);
    } else if (strategy == "auto") {
      auto t1 = classify_tags(G1), t2 = classify_tags(G2);
      r.details["tags1"] = tags_json(t1);
      r.details["tags2"] = tags_json(t2);
      bool cop = has(t1, "HAE") && has(t2, "HAE");
      bool cr1 = has(t1, "CentralRadicalSimple") || has(t1, "CentralRadicalPerfectBounded");
      bool cr2 = has(t2, "CentralRadicalSimple") || has(t2, "CentralRadicalPerfectBounded");
      if (cop) {
        run_coprime(r, G1, G2);
      } else if (cr1 && cr2) {
        run_centrad(r, G1, G2);
      } else if (t1.empty() && t2.empty()) {
        throw Error("NotInAnyClass", "tags: none for either group");
      } else {
        // class membership is an isomorphism invariant
        r.strategy = "classification";
        r.verdict = false;
      }
    } else {
      throw Error("BadStrategy", strategy);
    }
  });
  return r;
}

RunReport cmd_classify(const CayleyTable& G) {
  RunReport r;
  r.command = "classify";
  measured(r, [&] { r.details["tags"] = tags_json(classify_tags(G)); });
  return r;
}

RunReport cmd_oracle_aut(const CayleyTable& G, int guard) {
  RunReport r;
  r.command = "oracle";
  r.strategy = "oracle";
  measured(r, [&] { r.details["aut_order"] = oracle_aut(G, guard).size(); });
  return r;
}

RunReport cmd_codeq(const FpMatrix& A, const FpMatrix& B) {
  RunReport r;
  r.command = "codeq";
  r.strategy = "code_equivalence";
  measured(r, [&] {
    auto c = code_equivalence(A, B);
    r.verdict = !c.empty();
    if (c.rep) {
      r.details["permutation"] = *c.rep;
      r.details["coset_size"] = c.group.order();
    }
  });
  return r;
}

SpanProfile profile_code_equivalence(const std::vector<int>& ms, int d, int p, std::uint64_t seed) {
  SpanProfile prof;
  std::mt19937_64 rng(seed);
  for (int m : ms) {
    FpMatrix A(p, d, m);
    for (int& x : A.a) x = int(rng() % p);
    Perm s = perm_identity(m);
    std::shuffle(s.begin(), s.end(), rng);
    FpMatrix B = permute_columns(A, s);
    exec::SpanScope scope;
    code_equivalence(A, B);
    auto c = scope.counters();
    prof.m.push_back(m);
    prof.counters.push_back(c);
    prof.C = std::max(prof.C, double(c.span) / std::pow(double(m), 3));
  }
  return prof;
}

RunReport cmd_profile(const std::vector<int>& ms, int d, int p, std::uint64_t seed) {
  RunReport r;
  r.command = "profile";
  r.strategy = "code_equivalence";
  measured(r, [&] {
    auto prof = profile_code_equivalence(ms, d, p, seed);
    Json runs = Json::array();
    for (std::size_t i = 0; i < prof.m.size(); ++i)
      runs.push_back(Json{{"m", prof.m[i]}, {"work", prof.counters[i].work}, {"span", prof.counters[i].span}});
    r.details["runs"] = runs;
    r.details["C"] = prof.C;
  });
  return r;
}

void write_corpus(const Corpus& c, const std::string& dir) {
  std::filesystem::create_directories(dir);
  Json groups = Json::array(), pairs = Json::array();
  for (const auto& g : c.groups) {
    write_cayley(g.table, (std::filesystem::path(dir) / (g.name + ".cayley")).string());
    groups.push_back(Json{{"file", g.name + ".cayley"}, {"descriptor", g.descriptor}, {"order", g.table.order()}});
  }
  for (const auto& p : c.pairs)
    pairs.push_back(Json{{"a", c.groups[p.a].name},
                         {"b", c.groups[p.b].name},
                         {"expected", p.expected ? Json(*p.expected) : Json(nullptr)}});
  Json m;
  m["groups"] = groups;
  m["pairs"] = pairs;
  write_file((std::filesystem::path(dir) / "manifest.json").string(), m.dump(2) + "\n");
}

}  // namespace gpi
