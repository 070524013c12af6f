#include "gpi/corpus.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "gpi/build.hpp"
#include "gpi/exec.hpp"
#include "gpi/fp.hpp"
#include "gpi/oracle.hpp"

namespace gpi {
namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Multiplicative order of an invertible matrix, 0 past the cap.
long long mat_order(const FpMatrix& M, long long cap = 20000) {
  FpMatrix I = FpMatrix::identity(M.p, M.rows), X = M;
  for (long long o = 1; o <= cap; ++o) {
    if (X == I) return o;
    X = mat_mul(X, M);
  }
  return 0;
}

// Power of g of order exactly q, or nullopt.
std::optional<FpMatrix> order_q_part(const FpMatrix& g, int q) {
  long long o = mat_order(g);
  if (o == 0 || o % q != 0) return std::nullopt;
  return mat_pow(g, o / q);
}

// Basis of the matrices commuting with every element of S, as flat vectors.
std::vector<FpMatrix> centralizer_basis(const std::vector<FpMatrix>& S, int p, int k) {
  int kk = k * k;
  FpMatrix L(p, int(S.size()) * kk, kk);
  for (int e = 0; e < kk; ++e) {
    FpMatrix E(p, k, k);
    E.a[e] = 1;
    for (std::size_t s = 0; s < S.size(); ++s) {
      FpMatrix C = mat_add(mat_mul(E, S[s]), mat_scale(mat_mul(S[s], E), p - 1));
      for (int t = 0; t < kk; ++t) L(int(s) * kk + t, e) = C.a[t];
    }
  }
  FpMatrix N = right_nullspace(L);
  std::vector<FpMatrix> out;
  for (int r = 0; r < N.rows; ++r) {
    FpMatrix X(p, k, k);
    for (int t = 0; t < kk; ++t) X.a[t] = N(r, t);
    out.push_back(X);
  }
  return out;
}

std::optional<FpMatrix> sample_commuting(const std::vector<FpMatrix>& S, int p, int k, int q,
                                         std::mt19937_64& rng) {
  auto basis = centralizer_basis(S, p, k);
  for (int t = 0; t < 40; ++t) {
    FpMatrix X(p, k, k);
    for (const auto& b : basis) X = mat_add(X, mat_scale(b, int(rng() % p)));
    if (rank(X) < k) continue;
    if (auto m = order_q_part(X, q)) return m;
  }
  return std::nullopt;
}

std::string matrix_str(const FpMatrix& M) {
  std::string s = "[";
  for (int r = 0; r < M.rows; ++r) {
    s += r ? ",[" : "[";
    for (int c = 0; c < M.cols; ++c) s += (c ? "," : "") + std::to_string(M(r, c));
    s += "]";
  }
  return s + "]";
}

std::string semidirect_desc(int q, int l, int p, int k, const std::vector<FpMatrix>& act) {
  std::string a;
  if (l == 1) {
    a = matrix_str(act[0]);
  } else {
    a = "[";
    for (int i = 0; i < l; ++i) a += (i ? "," : "") + matrix_str(act[i]);
    a += "]";
  }
  std::ostringstream s;
  s << "semidirect(q=" << q << ",l=" << l << ",p=" << p << ",k=" << k << ",action=" << a << ")";
  return s.str();
}

void add_group(Corpus& c, const std::string& desc) {
  CorpusGroup g;
  g.descriptor = desc;
  g.table = build_group(desc);
  g.name = "g" + std::to_string(c.groups.size()) + "_o" + std::to_string(g.table.order());
  c.groups.push_back(std::move(g));
}

}  // namespace

Corpus coprime_corpus(std::uint64_t seed, int max_order, int per_shape, int max_gens) {
  Corpus c;
  std::mt19937_64 rng(seed);
  const int primes[] = {2, 3, 5, 7};
  std::set<std::string> seen;
  for (int q : primes)
    for (int p : primes) {
      if (q == p) continue;
      for (int l = 1; ipow(q, l) * p <= max_order; ++l)
        for (int k = 1; ipow(q, l) * ipow(p, k) <= max_order; ++k) {
          std::vector<std::string> descs;
          descs.push_back(semidirect_desc(q, l, p, k, std::vector<FpMatrix>(l, FpMatrix::identity(p, k))));
          for (int t = 0; t < 30 * per_shape && int(descs.size()) < per_shape; ++t) {
            FpMatrix g(p, k, k);
            for (int& x : g.a) x = int(rng() % p);
            if (rank(g) < k) continue;
            auto m1 = order_q_part(g, q);
            if (!m1) continue;
            std::vector<FpMatrix> act{*m1};
            bool ok = true;
            while (ok && int(act.size()) < l) {
              // identity, a power of the first generator, or a fresh commuting element
              int mode = int(rng() % 3);
              if (mode == 0) {
                act.push_back(FpMatrix::identity(p, k));
              } else if (mode == 1) {
                act.push_back(mat_pow(act[0], 1 + int(rng() % q)));
              } else if (auto m = sample_commuting(act, p, k, q, rng)) {
                act.push_back(*m);
              } else {
                ok = false;
              }
            }
            if (!ok) continue;
            std::string d = semidirect_desc(q, l, p, k, act);
            if (std::find(descs.begin(), descs.end(), d) == descs.end()) descs.push_back(d);
          }
          for (const auto& d : descs) {
            if (!seen.insert(d).second) continue;
            CayleyTable G = build_group(d);
            if (int(small_generating_set(G).size()) > max_gens) continue;
            add_group(c, d);
          }
        }
    }
  // named families
  for (const char* d : {"cyclic(18)", "semidirect(q=2,l=1,p=3,k=2,action=[[1,0],[0,2]])",
                        "semidirect(q=2,l=1,p=3,k=2,action=[[2,0],[0,2]])", "cyclic(21)",
                        "semidirect(q=3,l=1,p=7,k=1,action=[[2]])", "cyclic(30)",
                        "semidirect(q=2,l=1,p=3,k=2,action=[[2,0],[0,4]],n=[3,5])",
                        "semidirect(q=2,l=1,p=3,k=2,action=[[1,0],[0,4]],n=[3,5])",
                        "semidirect(q=2,l=1,p=3,k=2,action=[[2,0],[0,1]],n=[3,5])"})
    if (seen.insert(d).second) add_group(c, d);
  pair_up(c);
  return c;
}

Corpus central_corpus() {
  Corpus c;
  for (const char* d : {"central_ext(Q=alt(5),A=[2],cocycle=lift(sl2(5)))", "direct_product(cyclic(2),alt(5))",
                        "relabel(central_ext(Q=alt(5),A=[2],cocycle=lift(sl2(5))),7)",
                        "relabel(direct_product(cyclic(2),alt(5)),7)"})
    add_group(c, d);
  pair_up(c);
  return c;
}

Corpus corpus_from_lines(const std::string& text) {
  Corpus c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    add_group(c, line.substr(b, e - b + 1));
  }
  pair_up(c);
  return c;
}

void pair_up(Corpus& c) {
  c.pairs.clear();
  for (int a = 0; a < int(c.groups.size()); ++a)
    for (int b = a + 1; b < int(c.groups.size()); ++b)
      if (c.groups[a].table.order() == c.groups[b].table.order()) c.pairs.push_back({a, b, std::nullopt});
}

void oracle_expectations(Corpus& c, int guard) {
  exec::parallel_for(std::int64_t(c.pairs.size()), [&](std::int64_t i) {
    auto& pr = c.pairs[i];
    const auto& G = c.groups[pr.a].table;
    if (G.order() > guard) return;
    pr.expected = oracle_iso(G, c.groups[pr.b].table, guard).has_value();
  });
}

}  // namespace gpi
