#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rkhs/kernel.hpp"

namespace rkhs {

inline constexpr const char* kReportSchema = "rkhs-geometry/1";

/// Minimal JSON writer with byte-stable output: fields keep insertion order,
/// and every floating-point value is printed with 17 significant digits.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(long v);
  JsonWriter& value(int v) { return value(static_cast<long>(v)); }
  JsonWriter& null();
  JsonWriter& value_complex(Complex v);  // [re, im]
  JsonWriter& value_point(const Point& p);
  JsonWriter& value_optional(std::optional<double> v);

  const std::string& str() const { return out_; }

 private:
  void separator();
  std::string out_;
  std::vector<bool> needs_comma_;
  bool after_key_ = false;
};

std::string format_double(double v);  // %.17g

/// CSV rows with a fixed header; numeric cells at 17 significant digits,
/// undefined values rendered as NA.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  std::string cell(double v) const { return format_double(v); }
  std::string cell_na() const { return "NA"; }
  const std::string& str() const { return out_; }

 private:
  std::string out_;
  std::size_t width_;
};

/// Point list parsing shared by the CLI: a point is a number, an [re, im]
/// pair, an array of coordinates for ball domains, or
/// {"side": s, "point": ...} for disjoint unions. Scalar-domain kernels read
/// [a, b] as the complex number a + bi.
std::vector<Point> parse_points_json(const std::string& text, const Kernel& k);

}  // namespace rkhs
