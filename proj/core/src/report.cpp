#include "rkhs/report.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>

namespace rkhs {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void JsonWriter::separator() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!needs_comma_.empty()) {
    if (needs_comma_.back()) out_ += ",";
    needs_comma_.back() = true;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += "{";
  needs_comma_.push_back(false);
  return *this;
}
JsonWriter& JsonWriter::end_object() {
  out_ += "}";
  needs_comma_.pop_back();
  return *this;
}
JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += "[";
  needs_comma_.push_back(false);
  return *this;
}
JsonWriter& JsonWriter::end_array() {
  out_ += "]";
  needs_comma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separator();
  out_ += "\"" + k + "\":";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separator();
  if (std::isfinite(v))
    out_ += format_double(v);
  else
    out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separator();
  out_ += "\"";
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += c;
        }
    }
  }
  out_ += "\"";
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separator();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(long v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::null() {
  separator();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::value_complex(Complex v) {
  begin_array();
  value(v.real());
  value(v.imag());
  return end_array();
}

JsonWriter& JsonWriter::value_point(const Point& p) {
  if (p.side != 0) {
    begin_object();
    key("side").value(long(p.side));
    key("point");
    Point q = p;
    q.side = 0;
    value_point(q);
    return end_object();
  }
  if (p.dim() == 1) return value_complex(p.z());
  begin_array();
  for (const auto& c : p.coords) value_complex(c);
  return end_array();
}

JsonWriter& JsonWriter::value_optional(std::optional<double> v) {
  return v.has_value() ? value(*v) : null();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ",";
    out_ += header[i];
  }
  out_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_)
    throw ValidationError("csv row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ += ",";
    out_ += cells[i];
  }
  out_ += "\n";
}

namespace {

Point point_from_json(const nlohmann::json& j, bool scalar_domain) {
  if (j.is_number()) return Point(j.get<double>());
  if (j.is_object()) {
    Point p = point_from_json(j.at("point"), scalar_domain);
    p.side = static_cast<std::uint8_t>(j.at("side").get<int>());
    return p;
  }
  if (!j.is_array() || j.empty())
    throw ValidationError("point: expected number, array, or {side, point}");
  if (scalar_domain) {
    if (j.size() == 2 && j.at(0).is_number() && j.at(1).is_number())
      return Point(Complex(j.at(0).get<double>(), j.at(1).get<double>()));
    throw ValidationError(
        "point: scalar domains take a number or an [re, im] pair");
  }
  std::vector<Complex> cs;
  for (const auto& e : j) {
    if (e.is_number())
      cs.emplace_back(e.get<double>(), 0.0);
    else
      cs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  }
  return Point(std::move(cs));
}

}  // namespace

std::vector<Point> parse_points_json(const std::string& text, const Kernel& k) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("points: invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw ValidationError("points: expected a JSON array");
  bool scalar = k.domain().scalar();
  if (k.domain().kind == Domain::Kind::disjoint_union ||
      k.domain().kind == Domain::Kind::finite_set)
    scalar = true;  // union sides and custom sets are scalar in this artifact
  std::vector<Point> out;
  for (const auto& e : j) {
    Point p = point_from_json(e, scalar);
    k.validate_point(p);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace rkhs
