#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace rkhs {

using Complex = std::complex<double>;

/// An element of a kernel's underlying set: a complex scalar (disk, plane),
/// a complex n-vector (unit ball), optionally tagged with the side of a
/// disjoint-union domain.
struct Point {
  std::vector<Complex> coords;
  std::uint8_t side = 0;  // 0 = left / only component, 1 = right

  Point() = default;
  Point(Complex z) : coords{z} {}  // NOLINT: implicit on purpose
  Point(double x) : coords{Complex(x, 0.0)} {}
  Point(std::initializer_list<Complex> cs) : coords(cs) {}
  explicit Point(std::vector<Complex> cs) : coords(std::move(cs)) {}

  static Point on_side(std::uint8_t s, Point p) {
    p.side = s;
    return p;
  }

  int dim() const { return static_cast<int>(coords.size()); }

  /// Scalar coordinate; only meaningful for dim() == 1 points.
  Complex z() const { return coords.empty() ? Complex(0) : coords[0]; }

  double norm() const {
    double s = 0;
    for (const auto& c : coords) s += std::norm(c);
    return std::sqrt(s);
  }

  bool operator==(const Point& o) const {
    return side == o.side && coords == o.coords;
  }

  std::string to_string() const;
};

/// Hermitian inner product sum_i z_i conj(w_i) of two same-dimension points.
Complex hermitian_dot(const Point& z, const Point& w);

}  // namespace rkhs
