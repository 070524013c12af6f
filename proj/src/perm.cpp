#include "gpi/perm.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "gpi/exec.hpp"

namespace gpi {

// ------------------------------------------------------------- perms

Perm perm_identity(int m) {
  Perm p(m);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm perm_inv(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = int(i);
  return c;
}

bool perm_is_identity(const Perm& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != int(i)) return false;
  return true;
}

bool perm_is_valid(const Perm& a) {
  std::vector<char> seen(a.size(), 0);
  for (int x : a) {
    if (x < 0 || x >= int(a.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

std::string perm_str(const Perm& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + "]";
}

Perm parse_perm(const std::string& s) {
  Perm p;
  std::string t;
  for (char c : s) t += (c == '[' || c == ']' || c == ',') ? ' ' : c;
  std::istringstream in(t);
  int x;
  while (in >> x) p.push_back(x);
  if (!perm_is_valid(p)) throw Error("ParseError", "not a permutation: " + s);
  return p;
}

namespace {

void word_append(Word& w, const Word& tail) {
  for (int x : tail) {
    if (!w.empty() && w.back() == -x)
      w.pop_back();
    else
      w.push_back(x);
  }
}

Word word_inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

int first_moved(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != int(i)) return int(i);
  return -1;
}

}  // namespace

Perm eval_word(const Word& w, const std::vector<Perm>& gens, int m) {
  Perm r = perm_identity(m);
  for (int x : w) r = perm_mul(r, x > 0 ? gens[x - 1] : perm_inv(gens[-x - 1]));
  return r;
}

// ----------------------------------------------------------- BSGS

PermGroup::PermGroup(int m, const std::vector<Perm>& gens, const std::vector<int>& prefix,
                     bool track_words)
    : m_(m), words_(track_words), gens_(gens) {
  for (const auto& g : gens)
    if (int(g.size()) != m || !perm_is_valid(g))
      throw Error("DegreeMismatch", "generator of wrong degree");
  std::set<Perm> seen;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (perm_is_identity(gens[i]) || !seen.insert(gens[i]).second) continue;
    strong_.push_back(gens[i]);
    sword_.push_back(Word{int(i) + 1});
  }
  for (int b : prefix) add_level(b);
  for (const auto& s : strong_) {
    bool fixes = true;
    for (int b : base_) fixes = fixes && s[b] == b;
    if (fixes) add_level(first_moved(s));
  }
  for (int i = 0; i < levels(); ++i) {
    for (std::size_t s = 0; s < strong_.size(); ++s) {
      bool ok = true;
      for (int j = 0; j < i; ++j) ok = ok && strong_[s][base_[j]] == base_[j];
      if (ok) lv_[i].sgens.push_back(int(s));
    }
    compute_orbit(i);
  }
  schreier_sims();
}

void PermGroup::add_level(int pt) {
  base_.push_back(pt);
  lv_.emplace_back();
  lv_.back().idx.assign(m_, -1);
  lv_.back().orbit = {pt};
  lv_.back().idx[pt] = 0;
  lv_.back().u = {perm_identity(m_)};
  lv_.back().uinv = {perm_identity(m_)};
  lv_.back().uw = {Word{}};
}

void PermGroup::compute_orbit(int i) {
  Level& L = lv_[i];
  // extend the existing Schreier tree with the current generators
  for (std::size_t k = 0; k < L.orbit.size(); ++k) {
    int x = L.orbit[k];
    for (int s : L.sgens) {
      int y = strong_[s][x];
      if (L.idx[y] >= 0) continue;
      L.idx[y] = int(L.orbit.size());
      L.orbit.push_back(y);
      Perm u = perm_mul(strong_[s], L.u[k]);
      L.uinv.push_back(perm_inv(u));
      L.u.push_back(std::move(u));
      if (words_) {
        Word w = sword_[s];
        word_append(w, L.uw[k]);
        L.uw.push_back(std::move(w));
      } else {
        L.uw.emplace_back();
      }
    }
  }
}

std::pair<Perm, int> PermGroup::sift(Perm g, int start) const {
  for (int i = start; i < levels(); ++i) {
    int b = g[base_[i]];
    if (lv_[i].idx[b] < 0) return {g, i};
    g = perm_mul(lv_[i].uinv[lv_[i].idx[b]], g);
  }
  return {g, levels()};
}

void PermGroup::schreier_sims() {
  int i = levels() - 1;
  while (i >= 0) {
    bool restarted = false;
    Level& L = lv_[i];
    for (std::size_t k = 0; !restarted && k < L.orbit.size(); ++k) {
      for (std::size_t t = 0; !restarted && t < L.sgens.size(); ++t) {
        int s = L.sgens[t];
        int y = strong_[s][L.orbit[k]];
        int ky = L.idx[y];
        Perm sg = perm_mul(L.uinv[ky], perm_mul(strong_[s], L.u[k]));
        if (perm_is_identity(sg)) continue;
        exec::tick();
        auto [h, j] = sift(sg, i + 1);
        if (perm_is_identity(h)) continue;
        Word hw;
        if (words_) {
          // h = uinv(levels..)∘sg; recover its word by replaying the sift
          Word w = word_inverse(L.uw[ky]);
          word_append(w, sword_[s]);
          word_append(w, L.uw[k]);
          Perm g = sg;
          for (int l = i + 1; l < j; ++l) {
            int b = g[base_[l]];
            int kb = lv_[l].idx[b];
            Word pre = word_inverse(lv_[l].uw[kb]);
            word_append(pre, w);
            w = std::move(pre);
            g = perm_mul(lv_[l].uinv[kb], g);
          }
          hw = std::move(w);
        }
        strong_.push_back(h);
        sword_.push_back(hw);
        int sidx = int(strong_.size()) - 1;
        if (j == levels()) add_level(first_moved(h));
        for (int l = i + 1; l <= j; ++l) {
          lv_[l].sgens.push_back(sidx);
          compute_orbit(l);
        }
        i = j;
        restarted = true;
      }
    }
    if (!restarted) --i;
  }
}

std::vector<Perm> PermGroup::level_generators(int i) const {
  std::vector<Perm> out;
  if (i >= levels()) return out;
  for (int s : lv_[i].sgens) out.push_back(strong_[s]);
  return out;
}

std::uint64_t PermGroup::order() const {
  unsigned __int128 o = 1;
  for (const auto& L : lv_) {
    o *= L.orbit.size();
    if (o > ~std::uint64_t(0)) throw Error("Overflow", "group order exceeds 64 bits");
  }
  return std::uint64_t(o);
}

bool PermGroup::contains(const Perm& g) const {
  if (int(g.size()) != m_) return false;
  return perm_is_identity(sift(g).first);
}

std::optional<Word> PermGroup::word_of(const Perm& g0) const {
  if (!words_) throw Error("Internal", "group built without words");
  Perm g = g0;
  Word w;  // g0 = u_0 u_1 ... residue
  for (int i = 0; i < levels(); ++i) {
    int b = g[base_[i]];
    int k = lv_[i].idx[b];
    if (k < 0) return std::nullopt;
    word_append(w, lv_[i].uw[k]);
    g = perm_mul(lv_[i].uinv[k], g);
  }
  if (!perm_is_identity(g)) return std::nullopt;
  return w;
}

std::vector<Perm> PermGroup::elements(std::size_t cap) const {
  if (order() > cap) throw Error("TooLarge", "element enumeration cap");
  std::vector<Perm> out;
  std::function<void(int, const Perm&)> rec = [&](int i, const Perm& g) {
    if (i == levels()) {
      out.push_back(g);
      return;
    }
    for (const auto& u : lv_[i].u) rec(i + 1, perm_mul(g, u));
  };
  rec(0, perm_identity(m_));
  std::sort(out.begin(), out.end());
  return out;
}

bool PermCoset::contains(const Perm& g) const {
  if (!rep) return false;
  return group.contains(perm_mul(perm_inv(*rep), g));
}

// ----------------------------------------------------------- suite

PermGroup bsgs_build(const std::vector<Perm>& gens, int m) { return PermGroup(m, gens); }

std::optional<Word> membership(const PermGroup& G, const Perm& g) {
  if (int(g.size()) != G.degree()) throw Error("DegreeMismatch", "membership");
  if (!G.contains(g)) return std::nullopt;
  PermGroup W(G.degree(), G.generators(), {}, true);
  return W.word_of(g);
}

PermGroup pointwise_stabilizer(const PermGroup& G, const std::vector<int>& B) {
  PermGroup H(G.degree(), G.strong_generators(), B);
  return PermGroup(G.degree(), H.level_generators(int(B.size())));
}

PermGroup kernel_of_action(const PermGroup& G, const std::vector<int>& act) {
  int m = G.degree();
  if (int(act.size()) != m) throw Error("NotAnAction", "action map size");
  int m2 = 0;
  for (int a : act) m2 = std::max(m2, a + 1);
  std::vector<Perm> comb;
  for (const auto& g : G.strong_generators()) {
    Perm bar(m2, -1);
    for (int x = 0; x < m; ++x) {
      if (act[x] < 0) continue;
      int y = act[g[x]];
      if (y < 0 || (bar[act[x]] >= 0 && bar[act[x]] != y))
        throw Error("NotAnAction", "action not compatible with the group");
      bar[act[x]] = y;
    }
    for (int a = 0; a < m2; ++a)
      if (bar[a] < 0) bar[a] = a;
    if (!perm_is_valid(bar)) throw Error("NotAnAction", "induced map not a permutation");
    Perm c(m2 + m);
    for (int a = 0; a < m2; ++a) c[a] = bar[a];
    for (int x = 0; x < m; ++x) c[m2 + x] = m2 + g[x];
    comb.push_back(c);
  }
  std::vector<int> prefix(m2);
  std::iota(prefix.begin(), prefix.end(), 0);
  PermGroup C(m2 + m, comb, prefix);
  std::vector<Perm> ker;
  for (const auto& c : C.level_generators(m2)) {
    Perm g(m);
    for (int x = 0; x < m; ++x) g[x] = c[m2 + x] - m2;
    ker.push_back(g);
  }
  return PermGroup(m, ker);
}

std::vector<Perm> reduce_generators(const PermGroup& G) {
  std::vector<Perm> kept;
  PermGroup cur(G.degree());
  std::uint64_t target = G.order();
  auto consider = [&](const Perm& g) {
    if (cur.order() == target) return;
    if (cur.contains(g)) return;
    kept.push_back(g);
    cur = PermGroup(G.degree(), kept);
  };
  for (const auto& g : G.generators()) consider(g);
  for (const auto& g : G.strong_generators()) consider(g);
  return kept;
}

std::vector<std::vector<int>> orbits_of(const std::vector<Perm>& gens, int m) {
  std::vector<int> par(m);
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
  for (const auto& g : gens)
    for (int x = 0; x < m; ++x) {
      int a = find(x), b = find(g[x]);
      if (a != b) par[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, std::vector<int>> cls;
  for (int x = 0; x < m; ++x) cls[find(x)].push_back(x);
  std::vector<std::vector<int>> out;
  for (auto& [r, v] : cls) out.push_back(v);
  return out;
}

std::vector<std::vector<int>> orbits(const PermGroup& G) {
  return orbits_of(G.generators(), G.degree());
}

std::optional<std::vector<std::vector<int>>> minimal_blocks_on(const std::vector<Perm>& gens,
                                                               const std::vector<int>& pts) {
  if (pts.size() <= 2) return std::nullopt;
  int m = gens.empty() ? (*std::max_element(pts.begin(), pts.end()) + 1) : int(gens[0].size());
  int alpha = *std::min_element(pts.begin(), pts.end());
  std::vector<std::vector<int>> best;
  std::vector<int> best_block;
  for (int gamma : pts) {
    if (gamma == alpha) continue;
    std::vector<int> par(m);
    std::iota(par.begin(), par.end(), 0);
    std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
    std::deque<std::pair<int, int>> q{{alpha, gamma}};
    par[gamma] = alpha;
    while (!q.empty()) {
      auto [a, b] = q.front();
      q.pop_front();
      for (const auto& g : gens) {
        int x = find(g[a]), y = find(g[b]);
        if (x != y) {
          par[std::max(x, y)] = std::min(x, y);
          q.push_back({x, y});
        }
      }
    }
    std::map<int, std::vector<int>> cls;
    for (int x : pts) cls[find(x)].push_back(x);
    if (cls.size() == 1) continue;
    std::vector<int> blk = cls[find(alpha)];
    if (best.empty() || blk.size() < best_block.size() ||
        (blk.size() == best_block.size() && blk < best_block)) {
      best_block = blk;
      best.clear();
      for (auto& [r, v] : cls) best.push_back(v);
    }
  }
  if (best.empty()) return std::nullopt;
  return best;
}

std::optional<std::vector<std::vector<int>>> minimal_blocks(const PermGroup& G) {
  if (orbits(G).size() != 1) throw Error("NotTransitive", "minimal_blocks");
  std::vector<int> pts(G.degree());
  std::iota(pts.begin(), pts.end(), 0);
  return minimal_blocks_on(G.generators(), pts);
}

namespace {

// Depth-first search over G's stabilizer chain for g with z∘g ∈ H, where Hb
// is H's chain built with G's base as prefix. Levels below `start` are
// already fixed by g_partial/h_partial.
struct CosetSearch {
  const PermGroup& G;
  const PermGroup& Hb;
  const Perm& z;
  const Perm& x;  // witnesses are reported as x∘g; candidates ordered by their images

  std::optional<Perm> dfs(int i, const Perm& g, const Perm& h) const {
    int r = G.levels();
    if (i == r) {
      exec::tick();
      Perm t = perm_mul(perm_inv(h), perm_mul(z, g));
      if (perm_is_identity(Hb.sift(t, r).first)) return g;
      return std::nullopt;
    }
    int b = G.base()[i];
    std::vector<std::pair<int, int>> cand;  // (image of b under x∘g, gamma)
    for (int gamma : G.orbit(i)) cand.push_back({x[g[gamma]], gamma});
    std::sort(cand.begin(), cand.end());
    Perm hinv = perm_inv(h);
    for (auto [img, gamma] : cand) {
      Perm g2 = perm_mul(g, G.transversal_elem(i, gamma));
      int pt = z[g2[b]];
      int y = hinv[pt];
      if (!Hb.in_orbit(i, y)) continue;
      Perm h2 = perm_mul(h, Hb.transversal_elem(i, y));
      if (auto r2 = dfs(i + 1, g2, h2)) return r2;
    }
    return std::nullopt;
  }
};

}  // namespace

PermGroup intersect(const PermGroup& G, const PermGroup& H) {
  int m = G.degree();
  if (H.degree() != m) throw Error("DegreeMismatch", "intersect");
  PermGroup Hb(m, H.strong_generators(), G.base());
  Perm id = perm_identity(m);
  CosetSearch cs{G, Hb, id, id};
  std::vector<Perm> K;
  for (int i = G.levels() - 1; i >= 0; --i) {
    int b = G.base()[i];
    std::vector<int> pts(G.orbit(i).begin(), G.orbit(i).end());
    std::sort(pts.begin(), pts.end());
    auto orbitK = [&]() {
      std::vector<char> in(m, 0);
      std::vector<int> o{b};
      in[b] = 1;
      for (std::size_t k = 0; k < o.size(); ++k)
        for (const auto& s : K)
          if (!in[s[o[k]]]) {
            in[s[o[k]]] = 1;
            o.push_back(s[o[k]]);
          }
      return in;
    };
    auto inK = orbitK();
    for (int gamma : pts) {
      if (inK[gamma]) continue;
      Perm g = G.transversal_elem(i, gamma);
      if (!Hb.in_orbit(i, gamma)) continue;
      Perm h = Hb.transversal_elem(i, gamma);
      if (auto r = cs.dfs(i + 1, g, h)) {
        K.push_back(*r);
        inK = orbitK();
      }
    }
  }
  return PermGroup(m, K);
}

PermCoset coset_intersection(const PermCoset& c1, const PermCoset& c2) {
  int m = c1.group.degree();
  if (c2.group.degree() != m) throw Error("DegreeMismatch", "coset_intersection");
  PermCoset out;
  out.group = PermGroup(m);
  if (!c1.rep || !c2.rep) return out;
  const PermGroup& G = c1.group;
  PermGroup Hb(m, c2.group.strong_generators(), G.base());
  Perm z = perm_mul(perm_inv(*c2.rep), *c1.rep);
  CosetSearch cs{G, Hb, z, *c1.rep};
  Perm id = perm_identity(m);
  auto g = cs.dfs(0, id, id);
  if (!g) return out;
  out.rep = perm_mul(*c1.rep, *g);
  out.group = intersect(c1.group, c2.group);
  return out;
}

Perm canonical_coset_rep(const PermGroup& H, const Perm& g) {
  Perm c = g;
  for (int j = 0; j < H.levels(); ++j) {
    int best = -1, bv = 0;
    for (int y : H.orbit(j))
      if (best < 0 || c[y] < bv) {
        best = y;
        bv = c[y];
      }
    c = perm_mul(c, H.transversal_elem(j, best));
  }
  return c;
}

namespace {
struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : p) h = (h ^ std::size_t(x)) * 1099511628211ull;
    return h;
  }
};
}  // namespace

std::vector<Perm> transversal(const PermGroup& G, const PermGroup& H, std::size_t cap) {
  for (const auto& h : H.generators())
    if (!G.contains(h)) throw Error("NotSubgroup", "transversal");
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> reps{canonical_coset_rep(H, perm_identity(G.degree()))};
  seen.insert(reps[0]);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const auto& s : G.generators()) {
      Perm c = canonical_coset_rep(H, perm_mul(s, reps[i]));
      if (seen.insert(c).second) {
        if (reps.size() >= cap) throw Error("IndexGuardExceeded", "transversal cap reached");
        reps.push_back(std::move(c));
      }
    }
  return reps;
}

std::vector<Perm> symmetric_generators(const std::vector<int>& cell, int m) {
  std::vector<Perm> out;
  if (cell.size() < 2) return out;
  Perm t = perm_identity(m);
  std::swap(t[cell[0]], t[cell[1]]);
  out.push_back(t);
  if (cell.size() > 2) {
    Perm c = perm_identity(m);
    for (std::size_t i = 0; i < cell.size(); ++i) c[cell[i]] = cell[(i + 1) % cell.size()];
    out.push_back(c);
  }
  return out;
}

}  // namespace gpi
