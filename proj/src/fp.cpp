#include "gpi/fp.hpp"

#include <algorithm>

namespace gpi {

long long mod_norm(long long a, long long m) {
  a %= m;
  return a < 0 ? a + m : a;
}

long long inv_mod(long long a, long long m) {
  long long old_r = m, r = mod_norm(a, m), old_s = 0, s = 1;
  while (r) {
    long long q = old_r / r, t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error("NotInvertible", "no inverse modulo " + std::to_string(m));
  return mod_norm(old_s, m);
}

long long pow_mod(long long a, long long e, long long m) {
  long long r = 1 % m;
  a = mod_norm(a, m);
  while (e > 0) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

FpMatrix FpMatrix::identity(int p, int n) {
  FpMatrix I(p, n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

FpMatrix FpMatrix::from_rows(int p, const std::vector<std::vector<int>>& r, int cols) {
  int c = cols >= 0 ? cols : (r.empty() ? 0 : int(r[0].size()));
  FpMatrix M(p, int(r.size()), c);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < c; ++j) M(i, j) = int(mod_norm(r[i][j], p));
  return M;
}

std::vector<int> FpMatrix::row(int i) const {
  return std::vector<int>(a.begin() + std::size_t(i) * cols, a.begin() + std::size_t(i + 1) * cols);
}

std::vector<std::vector<int>> FpMatrix::to_rows() const {
  std::vector<std::vector<int>> r;
  for (int i = 0; i < rows; ++i) r.push_back(row(i));
  return r;
}

FpMatrix mat_mul(const FpMatrix& A, const FpMatrix& B) {
  if (A.cols != B.rows) throw Error("ShapeMismatch", "mat_mul");
  FpMatrix C(A.p, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      int x = A(i, k);
      if (!x) continue;
      for (int j = 0; j < B.cols; ++j) C(i, j) = (C(i, j) + x * B(k, j)) % A.p;
    }
  return C;
}

FpMatrix mat_add(const FpMatrix& A, const FpMatrix& B) {
  FpMatrix C = A;
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = (A.a[i] + B.a[i]) % A.p;
  return C;
}

FpMatrix mat_transpose(const FpMatrix& A) {
  FpMatrix T(A.p, A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

FpMatrix mat_pow(const FpMatrix& A, long long e) {
  FpMatrix R = FpMatrix::identity(A.p, A.rows), B = A;
  while (e > 0) {
    if (e & 1) R = mat_mul(R, B);
    B = mat_mul(B, B);
    e >>= 1;
  }
  return R;
}

FpMatrix mat_scale(const FpMatrix& A, int c) {
  FpMatrix C = A;
  for (int& x : C.a) x = int(mod_norm(1LL * x * c, A.p));
  return C;
}

std::vector<int> mat_vec(const FpMatrix& A, const std::vector<int>& x) {
  std::vector<int> y(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    long long s = 0;
    for (int j = 0; j < A.cols; ++j) s += 1LL * A(i, j) * x[j];
    y[i] = int(s % A.p);
  }
  return y;
}

FpMatrix select_columns(const FpMatrix& A, const std::vector<int>& cols) {
  FpMatrix S(A.p, A.rows, int(cols.size()));
  for (int i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) S(i, int(j)) = A(i, cols[j]);
  return S;
}

FpMatrix hstack(const std::vector<FpMatrix>& parts) {
  int r = parts.empty() ? 0 : parts[0].rows, c = 0;
  for (const auto& P : parts) c += P.cols;
  FpMatrix M(parts.empty() ? 2 : parts[0].p, r, c);
  int off = 0;
  for (const auto& P : parts) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < P.cols; ++j) M(i, off + j) = P(i, j);
    off += P.cols;
  }
  return M;
}

FpMatrix vstack(const std::vector<FpMatrix>& parts) {
  int c = parts.empty() ? 0 : parts[0].cols, r = 0;
  for (const auto& P : parts) r += P.rows;
  FpMatrix M(parts.empty() ? 2 : parts[0].p, r, c);
  int off = 0;
  for (const auto& P : parts) {
    std::copy(P.a.begin(), P.a.end(), M.a.begin() + std::size_t(off) * c);
    off += P.rows;
  }
  return M;
}

Rref rref(const FpMatrix& M) {
  Rref out;
  out.R = M;
  FpMatrix& R = out.R;
  int p = M.p, r = 0;
  for (int c = 0; c < R.cols && r < R.rows; ++c) {
    int piv = -1;
    for (int i = r; i < R.rows; ++i)
      if (R(i, c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      for (int j = 0; j < R.cols; ++j) std::swap(R(piv, j), R(r, j));
      out.ops.push_back({RowOp::Swap, r, piv, 0});
    }
    int iv = int(inv_mod(R(r, c), p));
    if (iv != 1) {
      for (int j = 0; j < R.cols; ++j) R(r, j) = R(r, j) * iv % p;
      out.ops.push_back({RowOp::Scale, r, 0, iv});
    }
    for (int i = 0; i < R.rows; ++i) {
      if (i == r || !R(i, c)) continue;
      int f = p - R(i, c);
      for (int j = 0; j < R.cols; ++j) R(i, j) = (R(i, j) + f * R(r, j)) % p;
      out.ops.push_back({RowOp::AddMul, i, r, f});
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

FpMatrix undo_ops(const FpMatrix& R0, const std::vector<RowOp>& ops) {
  FpMatrix R = R0;
  int p = R.p;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const RowOp& o = *it;
    if (o.kind == RowOp::Swap) {
      for (int j = 0; j < R.cols; ++j) std::swap(R(o.i, j), R(o.j, j));
    } else if (o.kind == RowOp::Scale) {
      int iv = int(inv_mod(o.c, p));
      for (int j = 0; j < R.cols; ++j) R(o.i, j) = R(o.i, j) * iv % p;
    } else {
      for (int j = 0; j < R.cols; ++j) R(o.i, j) = int(mod_norm(R(o.i, j) - o.c * R(o.j, j), p));
    }
  }
  return R;
}

FpMatrix rref_transform(const Rref& R, int k) {
  int p = R.R.p;
  FpMatrix P = FpMatrix::identity(p, k);
  for (const auto& op : R.ops) {
    if (op.kind == RowOp::Swap) {
      for (int j = 0; j < k; ++j) std::swap(P(op.i, j), P(op.j, j));
    } else if (op.kind == RowOp::Scale) {
      for (int j = 0; j < k; ++j) P(op.i, j) = int(1LL * P(op.i, j) * op.c % p);
    } else {
      for (int j = 0; j < k; ++j) P(op.i, j) = int(mod_norm(P(op.i, j) + 1LL * op.c * P(op.j, j), p));
    }
  }
  return P;
}

int rank(const FpMatrix& M) {
  StreamEchelon E(M.p, M.cols);
  for (int i = 0; i < M.rows; ++i) E.insert(M.row(i));
  return E.rank();
}

std::optional<FpMatrix> inverse(const FpMatrix& M) {
  if (M.rows != M.cols) return std::nullopt;
  int n = M.rows;
  if (n == 0) return M;
  auto R = rref(hstack({M, FpMatrix::identity(M.p, n)}));
  for (int i = 0; i < n; ++i)
    if (R.R(i, i) != 1) return std::nullopt;
  if (R.rank < n || R.pivots[n - 1] != n - 1) return std::nullopt;
  FpMatrix I(M.p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) I(i, j) = R.R(i, n + j);
  return I;
}

FpMatrix right_nullspace(const FpMatrix& M) {
  auto R = rref(M);
  std::vector<char> is_piv(M.cols, 0);
  for (int c : R.pivots) is_piv[c] = 1;
  std::vector<std::vector<int>> basis;
  for (int f = 0; f < M.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<int> x(M.cols, 0);
    x[f] = 1;
    for (int i = 0; i < R.rank; ++i) x[R.pivots[i]] = int(mod_norm(-R.R(i, f), M.p));
    basis.push_back(x);
  }
  return FpMatrix::from_rows(M.p, basis, M.cols);
}

FpMatrix left_nullspace(const FpMatrix& M) { return right_nullspace(mat_transpose(M)); }

std::optional<FpMatrix> solve_right(const FpMatrix& A, const FpMatrix& B) {
  if (A.rows != B.rows) throw Error("ShapeMismatch", "solve_right");
  auto R = rref(hstack({A, B}));
  FpMatrix X(A.p, A.cols, B.cols);
  for (int i = 0; i < R.rank; ++i) {
    int c = R.pivots[i];
    if (c >= A.cols) return std::nullopt;
    for (int j = 0; j < B.cols; ++j) X(c, j) = R.R(i, A.cols + j);
  }
  return X;
}

std::optional<FpMatrix> solve_left(const FpMatrix& A, const FpMatrix& B) {
  auto X = solve_right(mat_transpose(A), mat_transpose(B));
  if (!X) return std::nullopt;
  return mat_transpose(*X);
}

FpMatrix row_space(const FpMatrix& M) {
  auto R = rref(M);
  FpMatrix S(M.p, R.rank, M.cols);
  std::copy(R.R.a.begin(), R.R.a.begin() + std::size_t(R.rank) * M.cols, S.a.begin());
  return S;
}

std::vector<int> charpoly(const FpMatrix& M) {
  int n = M.rows, p = M.p;
  FpMatrix H = M;
  auto h = [&](int i, int j) -> int& { return H(i - 1, j - 1); };  // 1-indexed
  for (int m = 2; m <= n - 1; ++m) {
    int i = 0;
    for (int r = m; r <= n; ++r)
      if (h(r, m - 1)) {
        i = r;
        break;
      }
    if (!i) continue;
    if (i != m) {
      for (int j = 1; j <= n; ++j) std::swap(h(i, j), h(m, j));
      for (int j = 1; j <= n; ++j) std::swap(h(j, i), h(j, m));
    }
    int t = int(inv_mod(h(m, m - 1), p));
    for (int r = m + 1; r <= n; ++r) {
      int u = int(1LL * h(r, m - 1) * t % p);
      if (!u) continue;
      for (int j = 1; j <= n; ++j) h(r, j) = int(mod_norm(h(r, j) - 1LL * u * h(m, j), p));
      for (int j = 1; j <= n; ++j) h(j, m) = int((h(j, m) + 1LL * u * h(j, r)) % p);
    }
  }
  std::vector<std::vector<int>> P(n + 1);
  P[0] = {1};
  for (int m = 1; m <= n; ++m) {
    std::vector<int> q(m + 1, 0);
    // (x - h_mm) P_{m-1}
    for (int d = 0; d < m; ++d) {
      q[d + 1] = (q[d + 1] + P[m - 1][d]) % p;
      q[d] = int(mod_norm(q[d] - 1LL * h(m, m) * P[m - 1][d], p));
    }
    long long prod = 1;
    for (int i = m - 1; i >= 1; --i) {
      prod = prod * h(i + 1, i) % p;
      long long c = prod * h(i, m) % p;
      if (!c) continue;
      for (int d = 0; d < int(P[i - 1].size()); ++d)
        q[d] = int(mod_norm(q[d] - c * P[i - 1][d], p));
    }
    P[m] = q;
  }
  return P[n];
}

// ------------------------------------------------------ stream echelon

StreamEchelon::StreamEchelon(int p, int n)
    : p_(p), n_(n), words_((n + 63) / 64), pivot_row_(n, -1) {}

bool StreamEchelon::insert(std::vector<int> v) {
  if (p_ == 2) {
    std::vector<std::uint64_t> b(words_, 0);
    for (int j = 0; j < n_; ++j)
      if (v[j] & 1) b[j >> 6] |= std::uint64_t(1) << (j & 63);
    for (int w = 0; w < words_; ++w) {
      while (b[w]) {
        int c = w * 64 + __builtin_ctzll(b[w]);
        int r = pivot_row_[c];
        if (r < 0) {
          pivot_row_[c] = int(bits_.size());
          bits_.push_back(std::move(b));
          ++rank_;
          return true;
        }
        const auto& row = bits_[r];
        for (int k = w; k < words_; ++k) b[k] ^= row[k];
      }
    }
    return false;
  }
  for (int& x : v) x = int(mod_norm(x, p_));
  for (int c = 0; c < n_; ++c) {
    if (!v[c]) continue;
    int r = pivot_row_[c];
    if (r < 0) {
      int iv = int(inv_mod(v[c], p_));
      for (int j = c; j < n_; ++j) v[j] = v[j] * iv % p_;
      pivot_row_[c] = int(rows_.size());
      rows_.push_back(std::move(v));
      ++rank_;
      return true;
    }
    int f = v[c];
    const auto& row = rows_[r];
    for (int j = c; j < n_; ++j) v[j] = int(mod_norm(v[j] - 1LL * f * row[j], p_));
  }
  return false;
}

// ----------------------------------------------------------- Howell

namespace {

int valuation(long long x, int p, int e) {
  if (x == 0) return e;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

std::vector<std::vector<long long>> howell_form(std::vector<std::vector<long long>> A, int cols,
                                                int p, int e) {
  long long N = 1;
  for (int i = 0; i < e; ++i) N *= p;
  for (auto& r : A) {
    r.resize(cols, 0);
    for (auto& x : r) x = mod_norm(x, N);
  }
  std::vector<int> pivcol;
  std::size_t r = 0;
  for (int c = 0; c < cols; ++c) {
    std::size_t best = A.size();
    int bv = e;
    for (std::size_t i = r; i < A.size(); ++i) {
      int v = valuation(A[i][c], p, e);
      if (v < bv) {
        bv = v;
        best = i;
      }
    }
    if (best == A.size()) continue;
    std::swap(A[r], A[best]);
    long long pv = 1;
    for (int i = 0; i < bv; ++i) pv *= p;
    long long unit = A[r][c] / pv;
    long long ui = inv_mod(unit, N);
    for (auto& x : A[r]) x = x * ui % N;
    for (std::size_t i = r + 1; i < A.size(); ++i) {
      long long f = A[i][c] / pv;
      if (!f) continue;
      for (int j = 0; j < cols; ++j) A[i][j] = mod_norm(A[i][j] - f * A[r][j], N);
    }
    if (bv > 0) {
      long long ann = N / pv;
      std::vector<long long> extra(cols);
      bool nz = false;
      for (int j = 0; j < cols; ++j) {
        extra[j] = A[r][j] * ann % N;
        nz = nz || extra[j];
      }
      if (nz) A.push_back(extra);
    }
    pivcol.push_back(c);
    ++r;
  }
  A.resize(r);
  for (std::size_t j = 0; j < r; ++j) {
    int c = pivcol[j];
    long long pv = A[j][c];
    for (std::size_t i = 0; i < j; ++i) {
      long long f = A[i][c] / pv;
      if (!f) continue;
      for (int k = 0; k < cols; ++k) A[i][k] = mod_norm(A[i][k] - f * A[j][k], N);
    }
  }
  return A;
}

namespace {

int leading(const std::vector<long long>& row) {
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j]) return int(j);
  return -1;
}

}  // namespace

bool howell_contains(const std::vector<std::vector<long long>>& H, std::vector<long long> v, int p, int e) {
  long long N = 1;
  for (int i = 0; i < e; ++i) N *= p;
  for (auto& x : v) x = mod_norm(x, N);
  for (const auto& row : H) {
    int c = leading(row);
    if (c < 0) continue;
    if (v[c] % row[c]) return false;
    long long f = v[c] / row[c];
    if (!f) continue;
    for (std::size_t j = c; j < v.size(); ++j) v[j] = mod_norm(v[j] - f * row[j], N);
  }
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

int howell_log_size(const std::vector<std::vector<long long>>& H, int p, int e) {
  int s = 0;
  for (const auto& row : H) {
    int c = leading(row);
    if (c >= 0) s += e - valuation(row[c], p, e);
  }
  return s;
}

std::vector<std::vector<long long>> left_kernel_mod(const std::vector<std::vector<long long>>& M,
                                                    int cols, int p, int e) {
  int r = int(M.size());
  std::vector<std::vector<long long>> aug;
  for (int i = 0; i < r; ++i) {
    std::vector<long long> row(M[i]);
    row.resize(cols, 0);
    for (int j = 0; j < r; ++j) row.push_back(i == j);
    aug.push_back(row);
  }
  auto H = howell_form(aug, cols + r, p, e);
  std::vector<std::vector<long long>> ker;
  for (auto& row : H) {
    bool zero = true;
    for (int j = 0; j < cols && zero; ++j) zero = row[j] == 0;
    if (zero) ker.emplace_back(row.begin() + cols, row.end());
  }
  return ker;
}

}  // namespace gpi
