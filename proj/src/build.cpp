#include "gpi/build.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "gpi/oracle.hpp"

namespace gpi {

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Descriptor parse() {
    Descriptor d = node();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return d;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw Error("ParseError", "descriptor at offset " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    std::size_t b = i_;
    while (i_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
      ++i_;
    if (b == i_ || std::isdigit(static_cast<unsigned char>(s_[b]))) fail("identifier expected");
    return s_.substr(b, i_ - b);
  }
  Descriptor node() {
    Descriptor d;
    d.name = ident();
    if (!eat('(')) return d;
    if (eat(')')) return d;
    do {
      skip();
      std::size_t save = i_;
      if (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) {
        std::string key = ident();
        if (eat('=')) {
          d.named.push_back({key, value()});
          continue;
        }
        i_ = save;
      }
      d.args.push_back(value());
    } while (eat(','));
    if (!eat(')')) fail("')' expected");
    return d;
  }
  DescValue value() {
    skip();
    DescValue v;
    if (eat('[')) {
      v.kind = DescValue::List;
      if (eat(']')) return v;
      do v.list.push_back(value());
      while (eat(','));
      if (!eat(']')) fail("']' expected");
      return v;
    }
    if (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) {
      std::size_t b = i_++;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      v.kind = DescValue::Int;
      v.i = std::stoll(s_.substr(b, i_ - b));
      return v;
    }
    v.kind = DescValue::Node;
    v.node = std::make_shared<Descriptor>(node());
    return v;
  }
};

std::string value_str(const DescValue& v) {
  if (v.kind == DescValue::Int) return std::to_string(v.i);
  if (v.kind == DescValue::Node) return v.node->str();
  std::string s = "[";
  for (std::size_t i = 0; i < v.list.size(); ++i)
    s += (i ? "," : "") + value_str(v.list[i]);
  return s + "]";
}

long long as_int(const DescValue* v, const std::string& what) {
  if (!v || v->kind != DescValue::Int) throw Error("ParseError", what + ": integer expected");
  return v->i;
}

std::vector<int> as_int_list(const DescValue* v, const std::string& what) {
  if (!v || v->kind != DescValue::List) throw Error("ParseError", what + ": list expected");
  std::vector<int> out;
  for (const auto& x : v->list) out.push_back(int(as_int(&x, what)));
  return out;
}

int list_depth(const DescValue& v) {
  if (v.kind != DescValue::List) return 0;
  if (v.list.empty()) return 1;
  return 1 + list_depth(v.list[0]);
}

IntMatrix as_matrix(const DescValue& v) {
  IntMatrix M;
  for (const auto& r : v.list) {
    std::vector<long long> row;
    for (const auto& x : r.list) row.push_back(as_int(&x, "matrix entry"));
    M.push_back(row);
  }
  return M;
}

}  // namespace

const DescValue* Descriptor::get(const std::string& key, std::size_t pos) const {
  for (const auto& [k, v] : named)
    if (k == key) return &v;
  if (pos < args.size()) return &args[pos];
  return nullptr;
}

std::string Descriptor::str() const {
  std::string s = name + "(";
  bool first = true;
  for (const auto& a : args) {
    s += (first ? "" : ",") + value_str(a);
    first = false;
  }
  for (const auto& [k, v] : named) {
    s += (first ? "" : ",") + k + "=" + value_str(v);
    first = false;
  }
  return s + ")";
}

Descriptor parse_descriptor(const std::string& text) { return Parser(text).parse(); }

// ------------------------------------------------------------ constructors

namespace {

CayleyTable from_mul(int n, const std::function<int(int, int)>& m) {
  std::vector<int> grid(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) grid[std::size_t(a) * n + b] = m(a, b);
  return CayleyTable::unchecked(n, grid);
}

// mixed-radix index with the first coordinate most significant
struct Radix {
  std::vector<int> mod;
  int size() const {
    int s = 1;
    for (int m : mod) s *= m;
    return s;
  }
  std::vector<int> decode(int x) const {
    std::vector<int> v(mod.size());
    for (int i = int(mod.size()) - 1; i >= 0; --i) {
      v[i] = x % mod[i];
      x /= mod[i];
    }
    return v;
  }
  int encode(const std::vector<int>& v) const {
    int x = 0;
    for (std::size_t i = 0; i < mod.size(); ++i) x = x * mod[i] + v[i];
    return x;
  }
};

CayleyTable perm_group_table(const std::vector<std::vector<int>>& perms) {
  std::map<std::vector<int>, int> idx;
  for (std::size_t i = 0; i < perms.size(); ++i) idx[perms[i]] = int(i);
  int n = int(perms.size());
  int d = perms.empty() ? 0 : int(perms[0].size());
  return from_mul(n, [&](int a, int b) {
    std::vector<int> c(d);
    for (int i = 0; i < d; ++i) c[i] = perms[a][perms[b][i]];
    return idx.at(c);
  });
}

bool even_perm(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 == 0;
}

}  // namespace

CayleyTable cyclic_group(int n) {
  if (n < 1) throw Error("BadDescriptor", "cyclic order");
  return from_mul(n, [n](int a, int b) { return (a + b) % n; });
}

CayleyTable abelian_group(const std::vector<int>& moduli) {
  Radix R{moduli};
  return from_mul(R.size(), [&](int a, int b) {
    auto x = R.decode(a), y = R.decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % moduli[i];
    return R.encode(x);
  });
}

CayleyTable elem_abelian_group(int p, int k) {
  return abelian_group(std::vector<int>(k, p));
}

CayleyTable sym_group(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return perm_group_table(perms);
}

CayleyTable alt_group(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do
    if (even_perm(p)) perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return perm_group_table(perms);
}

CayleyTable dihedral_group(int n) {
  if (n < 2 || n % 2) throw Error("BadDescriptor", "dihedral order must be even");
  int m = n / 2;
  // index j*m + i represents r^i s^j
  return from_mul(n, [m](int a, int b) {
    int ja = a / m, ia = a % m, jb = b / m, ib = b % m;
    int i = ja ? (ia - ib + m) % m : (ia + ib) % m;
    return ((ja + jb) % 2) * m + i;
  });
}

CayleyTable sl2_group(int p) {
  if (!is_prime(p)) throw Error("BadDescriptor", "sl2 needs a prime");
  std::vector<std::array<int, 4>> el;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d)
          if (((a * d - b * c) % p + p) % p == 1) el.push_back({a, b, c, d});
  std::array<int, 4> id{1, 0, 0, 1};
  auto it = std::find(el.begin(), el.end(), id);
  std::rotate(el.begin(), it, it + 1);
  std::map<std::array<int, 4>, int> idx;
  for (std::size_t i = 0; i < el.size(); ++i) idx[el[i]] = int(i);
  return from_mul(int(el.size()), [&](int x, int y) {
    auto& A = el[x];
    auto& B = el[y];
    std::array<int, 4> C{(A[0] * B[0] + A[1] * B[2]) % p, (A[0] * B[1] + A[1] * B[3]) % p,
                         (A[2] * B[0] + A[3] * B[2]) % p, (A[2] * B[1] + A[3] * B[3]) % p};
    return idx.at(C);
  });
}

CayleyTable direct_product(const std::vector<CayleyTable>& fs) {
  Radix R;
  for (const auto& f : fs) R.mod.push_back(f.order());
  return from_mul(R.size(), [&](int a, int b) {
    auto x = R.decode(a), y = R.decode(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = fs[i].mul(x[i], y[i]);
    return R.encode(x);
  });
}

CayleyTable semidirect_group(int q, int l, const std::vector<int>& moduli,
                             const std::vector<IntMatrix>& action) {
  int k = int(moduli.size());
  if (int(action.size()) != l) throw Error("BadAction", "need one matrix per generator of H");
  Radix N{moduli};
  Radix H{std::vector<int>(l, q)};
  int nN = N.size(), nH = H.size();
  // each matrix as a map on N
  auto apply = [&](const IntMatrix& M, const std::vector<int>& x) {
    std::vector<int> y(k, 0);
    for (int i = 0; i < k; ++i) {
      long long s = 0;
      for (int j = 0; j < k; ++j) s += M[i][j] * x[j];
      y[i] = int(((s % moduli[i]) + moduli[i]) % moduli[i]);
    }
    return y;
  };
  std::vector<std::vector<int>> gen_maps;
  for (const auto& M : action) {
    if (int(M.size()) != k) throw Error("BadAction", "matrix size");
    for (const auto& r : M)
      if (int(r.size()) != k) throw Error("BadAction", "matrix size");
    // well-defined: n_j * column j vanishes
    for (int j = 0; j < k; ++j) {
      std::vector<int> e(k, 0);
      e[j] = 1;
      auto c = apply(M, e);
      for (int i = 0; i < k; ++i)
        if ((static_cast<long long>(c[i]) * moduli[j]) % moduli[i] != 0)
          throw Error("BadAction", "matrix does not define an endomorphism");
    }
    std::vector<int> mp(nN);
    std::vector<char> hit(nN, 0);
    for (int x = 0; x < nN; ++x) {
      mp[x] = N.encode(apply(M, N.decode(x)));
      if (hit[mp[x]]++) throw Error("BadAction", "matrix not invertible");
    }
    gen_maps.push_back(mp);
  }
  for (const auto& a : gen_maps) {
    std::vector<int> p(nN);
    std::iota(p.begin(), p.end(), 0);
    for (int t = 0; t < q; ++t) p = compose_maps(a, p);
    for (int x = 0; x < nN; ++x)
      if (p[x] != x) throw Error("BadAction", "matrix order does not divide q");
    for (const auto& b : gen_maps)
      if (compose_maps(a, b) != compose_maps(b, a))
        throw Error("BadAction", "action matrices do not commute");
  }
  std::vector<std::vector<int>> theta(nH);
  for (int h = 0; h < nH; ++h) {
    auto hv = H.decode(h);
    std::vector<int> p(nN);
    std::iota(p.begin(), p.end(), 0);
    for (int j = 0; j < l; ++j)
      for (int t = 0; t < hv[j]; ++t) p = compose_maps(gen_maps[j], p);
    theta[h] = p;
  }
  auto nadd = [&](int x, int y) {
    auto a = N.decode(x), b = N.decode(y);
    for (int i = 0; i < k; ++i) a[i] = (a[i] + b[i]) % moduli[i];
    return N.encode(a);
  };
  auto hadd = [&](int x, int y) {
    auto a = H.decode(x), b = H.decode(y);
    for (int i = 0; i < l; ++i) a[i] = (a[i] + b[i]) % q;
    return H.encode(a);
  };
  return from_mul(nH * nN, [&](int a, int b) {
    int h1 = a / nN, x1 = a % nN, h2 = b / nN, x2 = b % nN;
    return hadd(h1, h2) * nN + nadd(x1, theta[h1][x2]);
  });
}

CayleyTable central_ext_group(const CayleyTable& Q, const CocycleMatrix& f) {
  if (f.qn != Q.order()) throw Error("BadCocycle", "cocycle size");
  if (!is_normalized(f)) throw Error("BadCocycle", "cocycle not normalized");
  if (!is_cocycle(Q, f)) throw Error("BadCocycle", "cocycle identity fails");
  Radix A{f.moduli};
  int nA = A.size(), k = f.k(), qn = Q.order(), n = qn * nA;
  // addition in A and the encoded cocycle values, then a direct fill
  std::vector<int> add(std::size_t(nA) * nA);
  for (int a = 0; a < nA; ++a) {
    auto av = A.decode(a);
    for (int b = 0; b < nA; ++b) {
      auto bv = A.decode(b);
      for (int i = 0; i < k; ++i) bv[i] = (bv[i] + av[i]) % f.moduli[i];
      add[std::size_t(a) * nA + b] = A.encode(bv);
    }
  }
  std::vector<int> fenc(std::size_t(qn) * qn);
  std::vector<int> v(k);
  for (int q1 = 0; q1 < qn; ++q1)
    for (int q2 = 0; q2 < qn; ++q2) {
      for (int i = 0; i < k; ++i) v[i] = f.at(i, q1, q2);
      fenc[std::size_t(q1) * qn + q2] = A.encode(v);
    }
  std::vector<int> grid(std::size_t(n) * n);
  for (int x = 0; x < n; ++x) {
    int q1 = x / nA, a = x % nA;
    for (int y = 0; y < n; ++y) {
      int q2 = y / nA, b = y % nA;
      int s = add[std::size_t(add[std::size_t(a) * nA + b]) * nA + fenc[std::size_t(q1) * qn + q2]];
      grid[std::size_t(x) * n + y] = Q.mul(q1, q2) * nA + s;
    }
  }
  return CayleyTable::unchecked(n, grid);
}

CayleyTable permute_group(const CayleyTable& G, const std::vector<Elem>& perm) {
  int n = G.order();
  std::vector<int> grid(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      grid[std::size_t(perm[a]) * n + perm[b]] = perm[G.mul(a, b)];
  return CayleyTable::unchecked(n, grid);
}

CayleyTable relabel_group(const CayleyTable& G, std::uint64_t seed,
                          std::vector<Elem>* map_out) {
  int n = G.order();
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i >= 2; --i) {
    std::uniform_int_distribution<int> dist(1, i);
    std::swap(perm[i], perm[dist(rng)]);
  }
  if (map_out) *map_out = perm;
  return permute_group(G, perm);
}

CocycleMatrix lift_cocycle(const CayleyTable& Q, const std::vector<int>& moduli,
                           const CayleyTable& D) {
  Subgroup Z = center(D);
  AbelianBasis B = abelian_basis(D, Z);
  auto sorted = moduli;
  std::sort(sorted.begin(), sorted.end());
  if (B.orders != sorted)
    throw Error("BadCocycle", "center of the lifted group has other invariants");
  Quotient R = quotient(D, Z);
  auto iso = oracle_iso(Q, R.table, 100000);
  if (!iso) throw Error("BadCocycle", "lifted group's central quotient differs from Q");
  auto coords = coordinate_table(D, B);
  // B.orders is a sorted copy of moduli; match coordinates to moduli order
  std::vector<int> slot(moduli.size());
  std::vector<char> used(moduli.size(), 0);
  for (std::size_t i = 0; i < moduli.size(); ++i)
    for (std::size_t j = 0; j < B.orders.size(); ++j)
      if (!used[j] && B.orders[j] == moduli[i]) {
        slot[i] = int(j);
        used[j] = 1;
        break;
      }
  int n = Q.order();
  CocycleMatrix f;
  f.moduli = moduli;
  f.qn = n;
  f.rows.assign(moduli.size(), std::vector<int>(std::size_t(n) * n, 0));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Elem sp = R.reps[(*iso)[p]], sq = R.reps[(*iso)[q]], spq = R.reps[(*iso)[Q.mul(p, q)]];
      Elem a = D.mul(D.mul(sp, sq), D.inv(spq));
      for (std::size_t i = 0; i < moduli.size(); ++i)
        f.rows[i][std::size_t(p) * n + q] = coords[a][slot[i]];
    }
  return f;
}

// ------------------------------------------------------------ descriptors

namespace {

CocycleMatrix cocycle_from(const DescValue* spec, const Descriptor& qd,
                           const CayleyTable& Q, const std::vector<int>& moduli) {
  int n = Q.order();
  CocycleMatrix f;
  f.moduli = moduli;
  f.qn = n;
  f.rows.assign(moduli.size(), std::vector<int>(std::size_t(n) * n, 0));
  if (!spec) return f;
  if (spec->kind == DescValue::List) {
    for (std::size_t i = 0; i < moduli.size() && i < spec->list.size(); ++i)
      f.rows[i] = as_int_list(&spec->list[i], "cocycle row");
    return f;
  }
  if (spec->kind != DescValue::Node) throw Error("BadCocycle", "cocycle spec");
  const Descriptor& c = *spec->node;
  if (c.name == "zero") return f;
  if (c.name == "rows") {
    for (std::size_t i = 0; i < moduli.size() && i < c.args.size(); ++i)
      f.rows[i] = as_int_list(&c.args[i], "cocycle row");
    return f;
  }
  if (c.name == "lift") {
    if (c.args.empty() || c.args[0].kind != DescValue::Node)
      throw Error("BadCocycle", "lift needs a group descriptor");
    return lift_cocycle(Q, moduli, build_group(*c.args[0].node));
  }
  if (c.name == "factors") {
    if (qd.name != "direct_product" || qd.args.size() != c.args.size())
      throw Error("BadCocycle", "factors needs Q = direct_product with matching arity");
    std::vector<CayleyTable> fq;
    std::vector<CocycleMatrix> fc;
    for (std::size_t j = 0; j < qd.args.size(); ++j) {
      fq.push_back(build_group(*qd.args[j].node));
      fc.push_back(cocycle_from(&c.args[j], *qd.args[j].node, fq.back(), moduli));
    }
    Radix R;
    for (auto& t : fq) R.mod.push_back(t.order());
    std::vector<std::vector<int>> dec(n);
    for (int p = 0; p < n; ++p) dec[p] = R.decode(p);
    for (int p = 0; p < n; ++p) {
      const auto& pv = dec[p];
      for (int q = 0; q < n; ++q) {
        const auto& qv = dec[q];
        for (std::size_t i = 0; i < moduli.size(); ++i) {
          int s = 0;
          for (std::size_t j = 0; j < fq.size(); ++j) s += fc[j].at(int(i), pv[j], qv[j]);
          f.rows[i][std::size_t(p) * n + q] = s % moduli[i];
        }
      }
    }
    return f;
  }
  throw Error("BadCocycle", "unknown cocycle form " + c.name);
}

}  // namespace

CayleyTable build_group(const Descriptor& d) {
  const std::string& k = d.name;
  if (k == "cyclic") return cyclic_group(int(as_int(d.get("n", 0), "cyclic")));
  if (k == "abelian") return abelian_group(as_int_list(d.get("n", 0), "abelian"));
  if (k == "elem_abelian")
    return elem_abelian_group(int(as_int(d.get("p", 0), "p")), int(as_int(d.get("k", 1), "k")));
  if (k == "sym") return sym_group(int(as_int(d.get("n", 0), "sym")));
  if (k == "alt") return alt_group(int(as_int(d.get("n", 0), "alt")));
  if (k == "dihedral") return dihedral_group(int(as_int(d.get("n", 0), "dihedral")));
  if (k == "sl2") return sl2_group(int(as_int(d.get("p", 0), "sl2")));
  if (k == "direct_product") {
    std::vector<CayleyTable> fs;
    auto add = [&](const DescValue& v) {
      if (v.kind != DescValue::Node) throw Error("ParseError", "direct_product factor");
      fs.push_back(build_group(*v.node));
    };
    for (const auto& a : d.args) {
      if (a.kind == DescValue::List)
        for (const auto& x : a.list) add(x);
      else
        add(a);
    }
    return direct_product(fs);
  }
  if (k == "semidirect") {
    int q = int(as_int(d.get("q", 0), "q"));
    int l = int(as_int(d.get("l", 1), "l"));
    int p = int(as_int(d.get("p", 2), "p"));
    int kk = int(as_int(d.get("k", 3), "k"));
    std::vector<int> moduli(kk, p);
    if (const DescValue* nv = d.get("n", 99)) moduli = as_int_list(nv, "n");
    const DescValue* av = d.get("action", 4);
    if (!av || av->kind != DescValue::List) throw Error("BadAction", "action list expected");
    std::vector<IntMatrix> mats;
    if (list_depth(*av) == 2 && l == 1)
      mats.push_back(as_matrix(*av));
    else
      for (const auto& m : av->list) mats.push_back(as_matrix(m));
    return semidirect_group(q, l, moduli, mats);
  }
  if (k == "central_ext") {
    const DescValue* qv = d.get("Q", 0);
    if (!qv || qv->kind != DescValue::Node) throw Error("ParseError", "central_ext Q");
    CayleyTable Q = build_group(*qv->node);
    auto moduli = as_int_list(d.get("A", 1), "A");
    CocycleMatrix f = cocycle_from(d.get("cocycle", 2), *qv->node, Q, moduli);
    return central_ext_group(Q, f);
  }
  if (k == "relabel") {
    const DescValue* gv = d.get("G", 0);
    if (!gv || gv->kind != DescValue::Node) throw Error("ParseError", "relabel group");
    auto seed = static_cast<std::uint64_t>(as_int(d.get("seed", 1), "seed"));
    return relabel_group(build_group(*gv->node), seed);
  }
  throw Error("ParseError", "unknown constructor " + k);
}

CayleyTable build_group(const std::string& text) { return build_group(parse_descriptor(text)); }

}  // namespace gpi
