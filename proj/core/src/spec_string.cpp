#include "rkhs/spec_string.hpp"

#include <cctype>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace rkhs {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Cursor {
  std::string s;  // whitespace stripped
  std::size_t i = 0;

  explicit Cursor(const std::string& raw) {
    s.reserve(raw.size());
    for (char c : raw)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }

  bool eat(const std::string& tok) {
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (i >= s.size() || s[i] != c)
      throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
  }
  bool done() const { return i >= s.size(); }

  double number() {
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(s.substr(i), &used);
    } catch (const std::exception&) {
      throw ParseError("expected a number", i);
    }
    i += used;
    return v;
  }

  long integer() {
    std::size_t used = 0;
    long v;
    try {
      v = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw ParseError("expected an integer", i);
    }
    i += used;
    return v;
  }

  // a complex literal: <float> or (<float>,<float>)
  Complex complex_lit() {
    if (i < s.size() && s[i] == '(') {
      ++i;
      const double re = number();
      expect(',');
      const double im = number();
      expect(')');
      return {re, im};
    }
    return {number(), 0.0};
  }

  std::vector<Complex> complex_list() {
    expect('[');
    std::vector<Complex> out;
    if (i < s.size() && s[i] == ']') {
      ++i;
      return out;
    }
    while (true) {
      out.push_back(complex_lit());
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      expect(']');
      return out;
    }
  }

  // reads up to the next ',' or ')' at depth 0 (for file paths)
  std::string path_token() {
    std::string out;
    while (i < s.size() && s[i] != ',' && s[i] != ')') out += s[i++];
    if (out.empty()) throw ParseError("expected a file path", i);
    return out;
  }
};

Eigen::MatrixXcd json_matrix(const nlohmann::json& m) {
  const auto rows = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd out(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = m.at(r);
    if (static_cast<Eigen::Index>(row.size()) != rows)
      throw ValidationError("custom: gram matrix is not square");
    for (Eigen::Index c = 0; c < rows; ++c) {
      const auto& e = row.at(c);
      if (e.is_array())
        out(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      else
        out(r, c) = Complex(e.get<double>(), 0.0);
    }
  }
  return out;
}

Point json_point(const nlohmann::json& j) {
  if (j.is_number()) return Point(j.get<double>());
  if (j.is_array()) {
    if (j.size() == 2 && j.at(0).is_number() && j.at(1).is_number())
      return Point(Complex(j.at(0).get<double>(), j.at(1).get<double>()));
    std::vector<Complex> cs;
    for (const auto& e : j) {
      if (e.is_number())
        cs.emplace_back(e.get<double>(), 0.0);
      else
        cs.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    }
    return Point(std::move(cs));
  }
  if (j.is_object()) {
    Point p = json_point(j.at("point"));
    p.side = static_cast<std::uint8_t>(j.at("side").get<int>());
    return p;
  }
  throw ValidationError("unrecognized point encoding: " + j.dump());
}

Kernel parse_spec(Cursor& c, const FileLoader& loader) {
  if (c.eat("dhb:alpha=")) return Kernel::dhb(c.number());
  if (c.eat("fock:beta=")) return Kernel::fock(c.number());
  if (c.eat("da:n=")) return Kernel::drury_arveson(static_cast<int>(c.integer()));
  if (c.eat("finite-length-example")) return Kernel::finite_length_example();
  if (c.eat("radial-bergman:moments=")) {
    std::vector<double> m;
    for (Complex z : c.complex_list()) m.push_back(z.real());
    return Kernel::radial_bergman(std::move(m));
  }
  if (c.eat("radial-bergman:file=")) {
    const auto j = nlohmann::json::parse(loader(c.path_token()));
    const auto& arr = j.is_object() ? j.at("moments") : j;
    std::vector<double> m;
    for (const auto& e : arr) m.push_back(e.get<double>());
    return Kernel::radial_bergman(std::move(m));
  }
  if (c.eat("custom:file=")) {
    const auto j = nlohmann::json::parse(loader(c.path_token()));
    std::vector<Point> pts;
    for (const auto& e : j.at("points")) pts.push_back(json_point(e));
    return Kernel::custom(std::move(pts), json_matrix(j.at("matrix")));
  }
  if (c.eat("product(")) {
    Kernel a = parse_spec(c, loader);
    c.expect(',');
    Kernel b = parse_spec(c, loader);
    c.expect(')');
    return Kernel::product(std::move(a), std::move(b));
  }
  if (c.eat("power(")) {
    Kernel a = parse_spec(c, loader);
    c.expect(',');
    const double e = c.number();
    c.expect(')');
    return Kernel::power(std::move(a), e);
  }
  if (c.eat("rescale(")) {
    Kernel a = parse_spec(c, loader);
    c.expect(',');
    std::string name;
    while (c.i < c.s.size() && c.s[c.i] != ')') name += c.s[c.i++];
    c.expect(')');
    return Kernel::rescale(std::move(a), ScalingFunction::builtin(name));
  }
  if (c.eat("direct-sum(")) {
    Kernel a = parse_spec(c, loader);
    c.expect(',');
    Kernel b = parse_spec(c, loader);
    c.expect(')');
    return Kernel::direct_sum(std::move(a), std::move(b));
  }
  throw ParseError("unrecognized kernel spec", c.i);
}

}  // namespace

Kernel parse_kernel_spec(const std::string& text, FileLoader loader) {
  if (!loader) loader = read_file;
  Cursor c(text);
  Kernel k = parse_spec(c, loader);
  if (!c.done()) throw ParseError("trailing input after kernel spec", c.i);
  return k;
}

SubspaceSpecString parse_subspace_spec(const std::string& text) {
  Cursor c(text);
  SubspaceSpecString out;
  if (c.eat("vanish:points=")) {
    out.kind = SubspaceSpecString::Kind::vanish_on;
    out.points = c.complex_list();
    if (c.eat(";orders=")) {
      c.expect('[');
      while (true) {
        out.orders.push_back(static_cast<int>(c.integer()));
        if (c.i < c.s.size() && c.s[c.i] == ',') {
          ++c.i;
          continue;
        }
        c.expect(']');
        break;
      }
    }
  } else if (c.eat("hardy-inner:zeros=")) {
    out.kind = SubspaceSpecString::Kind::hardy_inner;
    out.points = c.complex_list();
  } else {
    throw ParseError("unrecognized subspace spec", c.i);
  }
  if (!c.done()) throw ParseError("trailing input after subspace spec", c.i);
  return out;
}

}  // namespace rkhs
