#include "cdsynth/boolean.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "cdsynth/error.hpp"

namespace cdsynth {
namespace {

void check_arity(int n) {
  if (n < 1 || n > kMaxArity) throw Error("arity " + std::to_string(n) + " outside [1, 24]");
}

Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1); }

// Unnormalized Walsh-Hadamard butterfly.
void walsh_hadamard(std::vector<double>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double u = a[j];
        const double v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
}

template <class Combine>
void subset_transform(std::vector<double>& a, Combine combine) {
  for (std::size_t bit = 1; bit < a.size(); bit <<= 1) {
    for (std::size_t x = 0; x < a.size(); ++x) {
      if (x & bit) a[x] = combine(a[x], a[x ^ bit]);
    }
  }
}

SparsePolynomial collect(int n, Basis basis, const std::vector<double>& values) {
  SparsePolynomial p(n, basis);
  for (std::size_t s = 0; s < values.size(); ++s) p.set(static_cast<Mask>(s), values[s]);
  return p;
}

}  // namespace

std::vector<int> mask_variables(int n, Mask s) {
  std::vector<int> vars;
  for (int i = 0; i < n; ++i) {
    if (s & variable_bit(n, i)) vars.push_back(i);
  }
  return vars;
}

int mask_size(Mask s) noexcept { return std::popcount(s); }

BooleanFunction::BooleanFunction(int n, std::vector<std::uint8_t> table) : n_(n), table_(std::move(table)) {
  check_arity(n);
  if (table_.size() != (std::size_t{1} << n)) throw Error("truth table length mismatch");
  for (auto& v : table_) {
    if (v > 1) throw Error("Boolean table entries must be 0 or 1");
  }
}

RealFunction BooleanFunction::to_real() const {
  return RealFunction(n_, std::vector<double>(table_.begin(), table_.end()));
}

RealFunction::RealFunction(int n, std::vector<double> table) : n_(n), table_(std::move(table)) {
  check_arity(n);
  if (table_.size() != (std::size_t{1} << n)) throw Error("table length mismatch");
  for (double v : table_) {
    if (!std::isfinite(v)) throw Error("table entries must be finite");
  }
}

SparsePolynomial::SparsePolynomial(int n, Basis basis) : n_(n), basis_(basis) {
  if (n < 0 || n > kMaxArity) throw Error("polynomial arity outside [0, 24]");
}

void SparsePolynomial::set(Mask s, double c) {
  if (s & ~full_mask(n_)) throw Error("subset outside the variable range");
  if (basis_ == Basis::F2) {
    const double bit = std::fmod(std::fabs(std::round(c)), 2.0);
    if (std::fabs(c - std::round(c)) > kCoefficientCutoff) throw Error("F2 coefficients must be bits");
    c = bit;
  }
  if (std::fabs(c) < kCoefficientCutoff) {
    terms_.erase(s);
  } else {
    terms_[s] = c;
  }
}

double SparsePolynomial::coefficient(Mask s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? 0.0 : it->second;
}

SparsePolynomial fourier_transform(const RealFunction& f) {
  std::vector<double> a(f.table().begin(), f.table().end());
  walsh_hadamard(a);
  const double scale = std::ldexp(1.0, -f.arity());
  for (double& v : a) v *= scale;
  return collect(f.arity(), Basis::FourierPM1, a);
}

SparsePolynomial mobius_transform(const RealFunction& f) {
  std::vector<double> a(f.table().begin(), f.table().end());
  subset_transform(a, [](double hi, double lo) { return hi - lo; });
  return collect(f.arity(), Basis::ZeroOne, a);
}

SparsePolynomial anf_transform(const BooleanFunction& f) {
  std::vector<double> a(f.table().begin(), f.table().end());
  subset_transform(a, [](double hi, double lo) { return static_cast<double>(static_cast<int>(hi) ^ static_cast<int>(lo)); });
  return collect(f.arity(), Basis::F2, a);
}

double evaluate(const SparsePolynomial& p, Mask x) {
  if (x & ~full_mask(p.arity())) throw Error("input wider than polynomial arity");
  double value = 0.0;
  int bit = 0;
  for (const auto& [s, c] : p.terms()) {
    switch (p.basis()) {
      case Basis::FourierPM1:
        value += (std::popcount(s & x) & 1) ? -c : c;
        break;
      case Basis::ZeroOne:
        if ((s & x) == s) value += c;
        break;
      case Basis::F2:
        if ((s & x) == s) bit ^= 1;
        break;
    }
  }
  return p.basis() == Basis::F2 ? bit : value;
}

RealFunction evaluate_all(const SparsePolynomial& p) {
  check_arity(p.arity());
  std::vector<double> a(std::size_t{1} << p.arity(), 0.0);
  for (const auto& [s, c] : p.terms()) a[s] = c;
  switch (p.basis()) {
    case Basis::FourierPM1:
      walsh_hadamard(a);
      break;
    case Basis::ZeroOne:
      subset_transform(a, [](double hi, double lo) { return hi + lo; });
      break;
    case Basis::F2:
      subset_transform(a, [](double hi, double lo) { return static_cast<double>(static_cast<int>(hi) ^ static_cast<int>(lo)); });
      break;
  }
  return RealFunction(p.arity(), std::move(a));
}

SupportStats support_stats(const SparsePolynomial& p, int k) {
  SupportStats st;
  for (const auto& [s, c] : p.terms()) {
    const int size = mask_size(s);
    st.support.push_back(s);
    st.degree = std::max(st.degree, size);
    st.one_norm += std::fabs(c);
    if (size > k) {
      st.support_above.push_back(s);
      st.one_norm_above += std::fabs(c);
      st.union_above |= s;
    } else if (size == k) {
      st.support_at.push_back(s);
    }
  }
  return st;
}

Mask JuntaStructure::restriction_input(Mask z) const {
  Mask x = 0;
  for (int k = 0; k < t; ++k) {
    if (z & (Mask{1} << (t - 1 - k))) x |= variable_bit(n, jbar_variables[k]);
  }
  return x;
}

JuntaStructure junta_structure(int n, Mask J, const std::function<bool(Mask, Mask)>& same) {
  check_arity(n);
  if (J & ~full_mask(n)) throw Error("junta set outside the variable range");
  JuntaStructure js;
  js.n = n;
  js.J = J;
  js.Jbar = full_mask(n) & ~J;
  js.jbar_variables = mask_variables(n, js.Jbar);
  js.t = static_cast<int>(js.jbar_variables.size());
  js.per_restriction.assign(std::size_t{1} << js.t, 0);
  const auto jvars = mask_variables(n, J);
  for (Mask z = 0; z < (Mask{1} << js.t); ++z) {
    const Mask base = js.restriction_input(z);
    Mask relevant = 0;
    for (int i : jvars) {
      const Mask bit = variable_bit(n, i);
      // Enumerate every assignment of the J variables.
      Mask y = J;
      while (true) {
        const Mask x = base | y;
        if (!(x & bit) && !same(x, x | bit)) {
          relevant |= bit;
          break;
        }
        if (y == 0) break;
        y = (y - 1) & J;
      }
    }
    js.per_restriction[z] = relevant;
    js.r = std::max(js.r, mask_size(relevant));
  }
  return js;
}

JuntaStructure junta_structure(const RealFunction& f, Mask J) {
  return junta_structure(f.arity(), J, [&](Mask x, Mask y) { return f(x) == f(y); });
}

SparseApproximation approx_sparse(const RealFunction& f, double eps_prime, int k, std::uint64_t seed) {
  if (!(eps_prime > 0.0)) throw Error("approximation target must be positive");
  const int n = f.arity();
  const SparsePolynomial spectrum = fourier_transform(f);
  SparsePolynomial tail(n, Basis::FourierPM1);
  std::vector<Mask> subsets;
  std::vector<double> weights;
  double l1 = 0.0;
  for (const auto& [s, c] : spectrum.terms()) {
    if (mask_size(s) > k) {
      tail.set(s, c);
      subsets.push_back(s);
      weights.push_back(std::fabs(c));
      l1 += std::fabs(c);
    }
  }
  SparseApproximation out{SparsePolynomial(n, Basis::FourierPM1), 0.0, 0, false, 0};
  const double bound = std::ceil(4.0 * n * l1 * l1 / (eps_prime * eps_prime));
  if (subsets.empty() || bound >= static_cast<double>(subsets.size())) {
    out.poly = tail;
    out.samples = subsets.size();
    out.exact_tail = true;
    return out;
  }
  const RealFunction target = evaluate_all(tail);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  auto samples = static_cast<std::size_t>(bound);
  constexpr int kRetryBudget = 16;
  for (int attempt = 1; attempt <= kRetryBudget; ++attempt) {
    if (samples >= subsets.size()) {
      out.poly = tail;
      out.samples = subsets.size();
      out.exact_tail = true;
      out.attempts = attempt;
      return out;
    }
    std::map<Mask, double> acc;
    const double weight = l1 / static_cast<double>(samples);
    for (std::size_t draw = 0; draw < samples; ++draw) {
      const std::size_t idx = pick(rng);
      acc[subsets[idx]] += spectrum.coefficient(subsets[idx]) > 0 ? weight : -weight;
    }
    SparsePolynomial candidate(n, Basis::FourierPM1);
    for (const auto& [s, c] : acc) candidate.set(s, c);
    const RealFunction approx = evaluate_all(candidate);
    double err = 0.0;
    for (std::size_t x = 0; x < approx.size(); ++x) err = std::max(err, std::fabs(approx.table()[x] - target.table()[x]));
    if (err < eps_prime) {
      out.poly = std::move(candidate);
      out.max_error = err;
      out.samples = samples;
      out.attempts = attempt;
      return out;
    }
    samples *= 2;
  }
  throw Error("sparse approximation failed verification after the retry budget");
}

BooleanFunction and_function(int n) {
  return BooleanFunction::from(n, [n](Mask x) { return x == full_mask(n); });
}

BooleanFunction or_function(int n) {
  return BooleanFunction::from(n, [](Mask x) { return x != 0; });
}

BooleanFunction parity_function(int n) {
  return BooleanFunction::from(n, [](Mask x) { return (std::popcount(x) & 1) != 0; });
}

BooleanFunction majority_function(int n) {
  return BooleanFunction::from(n, [n](Mask x) { return 2 * std::popcount(x) > n; });
}

BooleanFunction exact_function(int n, int weight) {
  return BooleanFunction::from(n, [weight](Mask x) { return std::popcount(x) == weight; });
}

BooleanFunction threshold_function(int n, int weight) {
  return BooleanFunction::from(n, [weight](Mask x) { return std::popcount(x) >= weight; });
}

int log2_exact(int n) {
  if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n))) {
    throw Error("size " + std::to_string(n) + " is not a power of two");
  }
  return std::countr_zero(static_cast<unsigned>(n));
}

BooleanFunction selection_function(int n) {
  const int logn = log2_exact(n);
  if (n < 2) throw Error("memory size must be at least 2");
  return BooleanFunction::from(n + logn, [n, logn](Mask x) {
    const Mask data = x >> logn;
    const Mask address = x & ((Mask{1} << logn) - 1);
    return ((data >> (n - 1 - static_cast<int>(address))) & 1) != 0;
  });
}

TruthTable parse_truth_table(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string current;
    std::istringstream in{std::string(text)};
    while (std::getline(in, current)) {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(current);
    }
  }
  if (lines.empty() || lines[0].rfind("n=", 0) != 0) throw ParseError("expected header 'n=<arity>'", 1, 1);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(lines[0].substr(2), &used);
    if (used != lines[0].size() - 2) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw ParseError("malformed arity in header", 1, 3);
  }
  if (n < 1 || n > kMaxArity) throw ParseError("arity outside [1, 24]", 1, 3);
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::pair<int, std::string>> data;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (!lines[i].empty()) data.emplace_back(static_cast<int>(i + 1), lines[i]);
  }
  if (data.size() == 1 && data[0].second.size() == size &&
      data[0].second.find_first_not_of("01") == std::string::npos) {
    std::vector<std::uint8_t> table(size);
    for (std::size_t x = 0; x < size; ++x) table[x] = data[0].second[x] == '1';
    return BooleanFunction(n, std::move(table));
  }
  if (data.size() == 1) {
    const auto bad = data[0].second.find_first_not_of("01");
    if (bad != std::string::npos && data[0].second.size() == size) {
      throw ParseError("invalid character in truth table", data[0].first, static_cast<int>(bad) + 1);
    }
  }
  if (data.size() != size) {
    throw ParseError("expected " + std::to_string(size) + " values, found " + std::to_string(data.size()),
                     data.empty() ? 2 : data.back().first, 0);
  }
  std::vector<double> table(size);
  for (std::size_t x = 0; x < size; ++x) {
    const auto& [line, value] = data[x];
    try {
      std::size_t used = 0;
      table[x] = std::stod(value, &used);
      if (value.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("malformed decimal '" + value + "'", line, 1);
    }
  }
  return RealFunction(n, std::move(table));
}

}  // namespace cdsynth
