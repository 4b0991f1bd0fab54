#include "cdsynth/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "cdsynth/error.hpp"

namespace cdsynth {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBranchCutoff = 1e-12;

Complex cis(double half_turns) { return std::polar(1.0, kPi * half_turns); }

double half_turns_of(Complex z) { return std::arg(z) / kPi; }

}  // namespace

double reduce_angle(double theta) {
  double r = std::fmod(theta, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r <= -1.0) r += 2.0;
  if (std::fabs(r + 1.0) < kBranchCutoff) r = 1.0;
  return r;
}

Unitary2::Unitary2(const std::array<Complex, 4>& entries) : m_(entries) {
  const auto& a = m_;
  const Complex g00 = std::conj(a[0]) * a[0] + std::conj(a[2]) * a[2];
  const Complex g01 = std::conj(a[0]) * a[1] + std::conj(a[2]) * a[3];
  const Complex g11 = std::conj(a[1]) * a[1] + std::conj(a[3]) * a[3];
  if (std::abs(g00 - 1.0) > kUnitarityTolerance || std::abs(g11 - 1.0) > kUnitarityTolerance ||
      std::abs(g01) > kUnitarityTolerance) {
    throw Error("matrix is not unitary");
  }
}

Unitary2 Unitary2::identity() { return Unitary2({1.0, 0.0, 0.0, 1.0}, Unchecked{}); }
Unitary2 Unitary2::pauli_x() { return Unitary2({0.0, 1.0, 1.0, 0.0}, Unchecked{}); }
Unitary2 Unitary2::hadamard() {
  const double h = std::numbers::sqrt2 / 2.0;
  return Unitary2({h, h, h, -h}, Unchecked{});
}
Unitary2 Unitary2::phase(double theta) { return Unitary2({1.0, 0.0, 0.0, cis(theta)}, Unchecked{}); }

Unitary2 Unitary2::adjoint() const {
  return Unitary2({std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])}, Unchecked{});
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
  return Unitary2({a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                   a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)},
                  Unitary2::Unchecked{});
}

ZDecomp z_decompose(const Unitary2& u) {
  const double c = std::abs(u(0, 0));
  const double s = std::abs(u(1, 0));
  ZDecomp d;
  if (s < kBranchCutoff) {
    d.alpha = half_turns_of(u(0, 0));
    d.beta = half_turns_of(u(1, 1) / u(0, 0));
  } else if (c < kBranchCutoff) {
    d.gamma = 1.0;
    d.alpha = half_turns_of(u(0, 1));
    d.beta = half_turns_of(u(1, 0) / u(0, 1));
  } else {
    // U00 = K cos, U01 = -i K sin D, U10 = -i K sin B with K = e^{i pi (alpha + gamma/2)}.
    d.gamma = 2.0 / kPi * std::acos(std::clamp(c, 0.0, 1.0));
    const Complex k = u(0, 0) / c;
    const Complex scale = Complex(0.0, -1.0) * k * s;
    d.delta = half_turns_of(u(0, 1) / scale);
    d.beta = half_turns_of(u(1, 0) / scale);
    d.alpha = half_turns_of(k) - d.gamma / 2.0;
  }
  d.alpha = reduce_angle(d.alpha);
  d.beta = reduce_angle(d.beta);
  d.gamma = reduce_angle(d.gamma);
  d.delta = reduce_angle(d.delta);
  return d;
}

Unitary2 z_recompose(const ZDecomp& d) {
  const Complex g = cis(d.gamma);
  const Complex a = cis(d.alpha);
  const Complex b = cis(d.beta);
  const Complex e = cis(d.delta);
  // Z(beta) H Z(gamma) H Z(delta) = 1/2 [[1+g, (1-g)e], [b(1-g), b e (1+g)]].
  return Unitary2({a * 0.5 * (1.0 + g), a * 0.5 * (1.0 - g) * e, a * 0.5 * b * (1.0 - g), a * 0.5 * b * e * (1.0 + g)});
}

double spectral_distance(const Unitary2& u, const Unitary2& v) {
  const Complex d00 = u(0, 0) - v(0, 0);
  const Complex d01 = u(0, 1) - v(0, 1);
  const Complex d10 = u(1, 0) - v(1, 0);
  const Complex d11 = u(1, 1) - v(1, 1);
  const double a = std::norm(d00) + std::norm(d10);
  const double dd = std::norm(d01) + std::norm(d11);
  const Complex b = std::conj(d00) * d01 + std::conj(d10) * d11;
  const double half_gap = (a - dd) / 2.0;
  const double top = (a + dd) / 2.0 + std::sqrt(half_gap * half_gap + std::norm(b));
  return std::sqrt(std::max(top, 0.0));
}

UnitaryFunction::UnitaryFunction(int n, std::vector<Unitary2> table) : n_(n), table_(std::move(table)) {
  if (n < 1 || n > kMaxArity) throw Error("arity outside [1, 24]");
  if (table_.size() != (std::size_t{1} << n)) throw Error("unitary table length mismatch");
}

UnitaryFunction UnitaryFunction::from_boolean(const BooleanFunction& f) {
  std::vector<Unitary2> table;
  table.reserve(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    table.push_back(f(static_cast<Mask>(x)) ? Unitary2::pauli_x() : Unitary2::identity());
  }
  return UnitaryFunction(f.arity(), std::move(table));
}

const RealFunction& ZTables::component(int index) const {
  switch (index) {
    case 0:
      return alpha;
    case 1:
      return beta;
    case 2:
      return gamma;
    case 3:
      return delta;
  }
  throw Error("component index outside 0..3");
}

ZTables decompose_function(const UnitaryFunction& f) {
  std::array<std::vector<double>, 4> cols;
  for (auto& col : cols) col.resize(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    const ZDecomp d = z_decompose(f(static_cast<Mask>(x)));
    cols[0][x] = d.alpha;
    cols[1][x] = d.beta;
    cols[2][x] = d.gamma;
    cols[3][x] = d.delta;
  }
  const int n = f.arity();
  return ZTables{RealFunction(n, std::move(cols[0])), RealFunction(n, std::move(cols[1])),
                 RealFunction(n, std::move(cols[2])), RealFunction(n, std::move(cols[3]))};
}

JuntaStructure junta_structure(const UnitaryFunction& f, Mask J) {
  return junta_structure(f.arity(), J, [&](Mask x, Mask y) {
    const auto& a = f(x).entries();
    const auto& b = f(y).entries();
    for (int i = 0; i < 4; ++i) {
      if (std::abs(a[i] - b[i]) > 1e-12) return false;
    }
    return true;
  });
}

UnitaryFunction parse_unitary_function(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Unitary2> table;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (n < 0) {
      if (line.rfind("n=", 0) != 0) throw ParseError("expected header 'n=<arity>'", line_no, 1);
      try {
        n = std::stoi(line.substr(2));
      } catch (const std::exception&) {
        throw ParseError("malformed arity in header", line_no, 3);
      }
      if (n < 1 || n > kMaxArity) throw ParseError("arity outside [1, 24]", line_no, 3);
      continue;
    }
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream fields(line);
    std::vector<double> values;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError("malformed decimal '" + token + "'", line_no, static_cast<int>(line.find(token)) + 1);
      }
    }
    try {
      if (values.size() == 8) {
        table.emplace_back(std::array<Complex, 4>{Complex(values[0], values[1]), Complex(values[2], values[3]),
                                                  Complex(values[4], values[5]), Complex(values[6], values[7])});
      } else if (values.size() == 4) {
        table.push_back(z_recompose(ZDecomp{values[0], values[1], values[2], values[3]}));
      } else {
        throw ParseError("expected 8 or 4 values per line", line_no, 1);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no, 1);
    }
  }
  if (n < 0) throw ParseError("empty input", 1, 1);
  if (table.size() != (std::size_t{1} << n)) {
    throw ParseError("expected " + std::to_string(std::size_t{1} << n) + " rows, found " + std::to_string(table.size()),
                     line_no, 0);
  }
  return UnitaryFunction(n, std::move(table));
}

}  // namespace cdsynth
