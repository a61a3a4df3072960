#include "rkhs/point.hpp"

#include <cstdio>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {
std::string fmt_complex(Complex c) {
  char buf[80];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", c.real());
  } else {
    std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", c.real(), c.imag());
  }
  return buf;
}
}  // namespace

std::string Point::to_string() const {
  std::string s;
  if (side != 0) s += "side" + std::to_string(side) + ":";
  if (coords.size() == 1) return s + fmt_complex(coords[0]);
  s += "[";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += fmt_complex(coords[i]);
  }
  return s + "]";
}

Complex hermitian_dot(const Point& z, const Point& w) {
  if (z.dim() != w.dim())
    throw ValidationError("inner product of points of different dimension");
  Complex s = 0;
  for (int i = 0; i < z.dim(); ++i) s += z.coords[i] * std::conj(w.coords[i]);
  return s;
}

}  // namespace rkhs
