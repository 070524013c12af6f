#pragma once
// Dense linear algebra over F_p and Z/p^e.

#include <cstdint>
#include <optional>
#include <vector>

#include "gpi/error.hpp"

namespace gpi {

long long mod_norm(long long a, long long m);
long long inv_mod(long long a, long long m);  // throws if not a unit
long long pow_mod(long long a, long long e, long long m);

struct FpMatrix {
  int p = 2;
  int rows = 0, cols = 0;
  std::vector<int> a;

  FpMatrix() = default;
  FpMatrix(int p_, int r, int c) : p(p_), rows(r), cols(c), a(std::size_t(r) * c, 0) {}
  static FpMatrix identity(int p, int n);
  static FpMatrix from_rows(int p, const std::vector<std::vector<int>>& r, int cols = -1);
  int& operator()(int i, int j) { return a[std::size_t(i) * cols + j]; }
  int operator()(int i, int j) const { return a[std::size_t(i) * cols + j]; }
  std::vector<int> row(int i) const;
  std::vector<std::vector<int>> to_rows() const;
  bool operator==(const FpMatrix& o) const {
    return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
  }
  bool operator!=(const FpMatrix& o) const { return !(*this == o); }
  bool operator<(const FpMatrix& o) const { return a < o.a; }
};

FpMatrix mat_mul(const FpMatrix& A, const FpMatrix& B);
FpMatrix mat_add(const FpMatrix& A, const FpMatrix& B);
FpMatrix mat_transpose(const FpMatrix& A);
FpMatrix mat_pow(const FpMatrix& A, long long e);
FpMatrix mat_scale(const FpMatrix& A, int c);
std::vector<int> mat_vec(const FpMatrix& A, const std::vector<int>& x);
FpMatrix select_columns(const FpMatrix& A, const std::vector<int>& cols);
FpMatrix hstack(const std::vector<FpMatrix>& parts);
FpMatrix vstack(const std::vector<FpMatrix>& parts);

struct RowOp {
  enum Kind { Swap, Scale, AddMul } kind;
  int i, j, c;  // Swap(i,j); Scale row i by c; row i += c * row j
};

struct Rref {
  FpMatrix R;
  std::vector<RowOp> ops;
  int rank = 0;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

Rref rref(const FpMatrix& M);
// Applies the inverse of the recorded operations to R.
FpMatrix undo_ops(const FpMatrix& R, const std::vector<RowOp>& ops);
// The k x k matrix P with P·M = R, from the recorded operations.
FpMatrix rref_transform(const Rref& R, int k);
int rank(const FpMatrix& M);
std::optional<FpMatrix> inverse(const FpMatrix& M);
// Rows form a basis of {x : M x = 0}.
FpMatrix right_nullspace(const FpMatrix& M);
// Rows form a basis of {y : y M = 0}.
FpMatrix left_nullspace(const FpMatrix& M);
// Some X with X A = B, or nullopt.
std::optional<FpMatrix> solve_left(const FpMatrix& A, const FpMatrix& B);
// Some X with A X = B, or nullopt.
std::optional<FpMatrix> solve_right(const FpMatrix& A, const FpMatrix& B);
// Canonical basis (RREF, zero rows dropped) of the row space.
FpMatrix row_space(const FpMatrix& M);
std::vector<int> charpoly(const FpMatrix& M);  // coefficients low to high, monic

// Incremental echelon basis of a subspace of F_p^n. Uses packed words when
// p = 2, so it scales to the cocycle systems of order-60 quotients.
class StreamEchelon {
 public:
  StreamEchelon(int p, int n);
  // Reduces v against the basis; returns true and stores it if independent.
  bool insert(std::vector<int> v);
  int rank() const { return rank_; }
  int dim() const { return n_; }

 private:
  int p_, n_, rank_ = 0, words_;
  std::vector<int> pivot_row_;  // column -> row index or -1
  std::vector<std::vector<int>> rows_;
  std::vector<std::vector<std::uint64_t>> bits_;
};

// Howell normal form over Z/p^e of the row module spanned by `rows`.
// Canonical: equal modules give identical outputs. Zero rows are dropped.
std::vector<std::vector<long long>> howell_form(std::vector<std::vector<long long>> rows,
                                                int cols, int p, int e);
// Membership of v in the module whose Howell form is H.
bool howell_contains(const std::vector<std::vector<long long>>& H, std::vector<long long> v, int p, int e);
// log_p of the module's order.
int howell_log_size(const std::vector<std::vector<long long>>& H, int p, int e);
// Generators of {y : y M = 0 mod p^e}, M given as rows (r x c).
std::vector<std::vector<long long>> left_kernel_mod(const std::vector<std::vector<long long>>& M,
                                                    int cols, int p, int e);

}  // namespace gpi
