#pragma once

// Truth tables, polynomial representations and their statistics.
//
// Index convention: for an n-bit input x = x_0 x_1 ... x_{n-1}, x_0 is the
// most significant bit of the table index. Subsets S of [n] are bitmasks under
// the same convention, so variable i corresponds to bit (n - 1 - i).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace cdsynth {

using Mask = std::uint32_t;

inline constexpr int kMaxArity = 24;
inline constexpr double kCoefficientCutoff = 1e-12;

constexpr Mask variable_bit(int n, int i) noexcept { return Mask{1} << (n - 1 - i); }

// Variables contained in S, in increasing order.
std::vector<int> mask_variables(int n, Mask s);
int mask_size(Mask s) noexcept;

class RealFunction;

class BooleanFunction {
 public:
  BooleanFunction(int n, std::vector<std::uint8_t> table);

  template <class Predicate>
  static BooleanFunction from(int n, Predicate&& predicate) {
    std::vector<std::uint8_t> table(std::size_t{1} << n);
    for (std::size_t x = 0; x < table.size(); ++x) table[x] = predicate(static_cast<Mask>(x)) ? 1 : 0;
    return BooleanFunction(n, std::move(table));
  }

  int arity() const noexcept { return n_; }
  std::size_t size() const noexcept { return table_.size(); }
  bool operator()(Mask x) const { return table_.at(x) != 0; }
  std::span<const std::uint8_t> table() const noexcept { return table_; }
  RealFunction to_real() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int n_;
  std::vector<std::uint8_t> table_;
};

class RealFunction {
 public:
  RealFunction(int n, std::vector<double> table);

  int arity() const noexcept { return n_; }
  std::size_t size() const noexcept { return table_.size(); }
  double operator()(Mask x) const { return table_.at(x); }
  std::span<const double> table() const noexcept { return table_; }

 private:
  int n_;
  std::vector<double> table_;
};

enum class Basis { FourierPM1, ZeroOne, F2 };

// Coefficient map S -> c with no stored zeros.
class SparsePolynomial {
 public:
  SparsePolynomial(int n, Basis basis);

  // Stores c at S, or erases S when |c| < kCoefficientCutoff.
  void set(Mask s, double c);
  double coefficient(Mask s) const;

  int arity() const noexcept { return n_; }
  Basis basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::map<Mask, double>& terms() const noexcept { return terms_; }

 private:
  int n_;
  Basis basis_;
  std::map<Mask, double> terms_;
};

SparsePolynomial fourier_transform(const RealFunction& f);
SparsePolynomial mobius_transform(const RealFunction& f);
SparsePolynomial anf_transform(const BooleanFunction& f);

double evaluate(const SparsePolynomial& p, Mask x);
// Evaluates p on every input in O(n 2^n).
RealFunction evaluate_all(const SparsePolynomial& p);

struct SupportStats {
  std::vector<Mask> support;
  std::vector<Mask> support_above;  // |S| > k
  std::vector<Mask> support_at;     // |S| = k
  int degree = 0;
  double one_norm = 0.0;
  double one_norm_above = 0.0;
  Mask union_above = 0;  // union of S over support_above
};

SupportStats support_stats(const SparsePolynomial& p, int k);

struct JuntaStructure {
  int n = 0;
  Mask J = 0;
  Mask Jbar = 0;
  int t = 0;
  std::vector<int> jbar_variables;  // increasing; restriction bit 0 (MSB) is jbar_variables[0]
  std::vector<Mask> per_restriction;  // indexed by z in [2^t]
  int r = 0;

  // Input bits that fix the variables outside J to the restriction z.
  Mask restriction_input(Mask z) const;
};

// `same(x, y)` decides whether the function agrees on inputs x and y.
JuntaStructure junta_structure(int n, Mask J, const std::function<bool(Mask, Mask)>& same);
JuntaStructure junta_structure(const RealFunction& f, Mask J);

struct SparseApproximation {
  SparsePolynomial poly;
  double max_error = 0.0;
  std::size_t samples = 0;
  bool exact_tail = false;
  int attempts = 0;
};

// Sparse Fourier approximation of f above degree k with sup-norm error below eps_prime.
SparseApproximation approx_sparse(const RealFunction& f, double eps_prime, int k, std::uint64_t seed);

BooleanFunction and_function(int n);
BooleanFunction or_function(int n);
BooleanFunction parity_function(int n);
BooleanFunction majority_function(int n);
BooleanFunction exact_function(int n, int weight);
BooleanFunction threshold_function(int n, int weight);
// Memory selection f(x, i) = x_i over n data bits followed by log2(n) address bits.
BooleanFunction selection_function(int n);

int log2_exact(int n);  // throws unless n is a power of two

using TruthTable = std::variant<BooleanFunction, RealFunction>;
TruthTable parse_truth_table(std::string_view text);

}  // namespace cdsynth
