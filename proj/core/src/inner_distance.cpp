#include "rkhs/inner_distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <memory>
#include <queue>
#include <unordered_map>

namespace rkhs {

namespace {

struct Region {
  bool disk = true;
  double rmax = 0.997;
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;

  bool contains(Complex z) const {
    if (disk) return std::abs(z) <= rmax;
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 &&
           z.imag() <= y1;
  }
};

Region make_region(const Kernel* domain, Complex a, Complex b) {
  Region r;
  if (domain != nullptr && domain->domain().kind == Domain::Kind::disk) {
    r.disk = true;
    r.rmax = std::min(0.9995,
                      std::max({0.997, std::abs(a) + 1e-3, std::abs(b) + 1e-3}));
    r.x0 = r.y0 = -r.rmax;
    r.x1 = r.y1 = r.rmax;
    return r;
  }
  r.disk = false;
  const double margin = 1.0 + std::abs(a - b);
  r.x0 = std::min(a.real(), b.real()) - margin;
  r.x1 = std::max(a.real(), b.real()) + margin;
  r.y0 = std::min(a.imag(), b.imag()) - margin;
  r.y1 = std::max(a.imag(), b.imag()) + margin;
  return r;
}

using EdgeWeight = std::function<double(Complex, Complex)>;

std::vector<Complex> grid_shortest_path(const Region& reg, int n, Complex a,
                                        Complex b, const EdgeWeight& weight) {
  const double dx = (reg.x1 - reg.x0) / n, dy = (reg.y1 - reg.y0) / n;
  std::vector<int> node_of(static_cast<std::size_t>(n) * n, -1);
  std::vector<Complex> pos;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Complex z(reg.x0 + (i + 0.5) * dx, reg.y0 + (j + 0.5) * dy);
      if (reg.contains(z)) {
        node_of[std::size_t(j) * n + i] = static_cast<int>(pos.size());
        pos.push_back(z);
      }
    }
  const int start = static_cast<int>(pos.size());
  const int goal = start + 1;
  pos.push_back(a);
  pos.push_back(b);

  // adjacency: grid cells reach neighbors within radius 2 cells; the exact
  // endpoints connect to every cell within 2.5 cell widths
  const double link = 2.5 * std::max(dx, dy);
  const auto neighbors = [&](int u, auto&& visit) {
    if (u >= start) {
      const Complex c = pos[u];
      const int i0 = static_cast<int>((c.real() - reg.x0) / dx);
      const int j0 = static_cast<int>((c.imag() - reg.y0) / dy);
      for (int j = std::max(0, j0 - 3); j <= std::min(n - 1, j0 + 3); ++j)
        for (int i = std::max(0, i0 - 3); i <= std::min(n - 1, i0 + 3); ++i) {
          const int v = node_of[std::size_t(j) * n + i];
          if (v >= 0 && std::abs(pos[v] - c) <= link) visit(v);
        }
      // endpoints link each other only when they share a neighborhood;
      // a global shortcut edge would defeat the search (the triangle
      // inequality makes the one-hop path always win)
      const int other = u == start ? goal : start;
      if (std::abs(pos[other] - c) <= link) visit(other);
      return;
    }
    const Complex c = pos[u];
    const int gi = static_cast<int>(std::lround((c.real() - reg.x0) / dx - 0.5));
    const int gj = static_cast<int>(std::lround((c.imag() - reg.y0) / dy - 0.5));
    for (int dj = -2; dj <= 2; ++dj)
      for (int di = -2; di <= 2; ++di) {
        if (di == 0 && dj == 0) continue;
        const int i = gi + di, j = gj + dj;
        if (i < 0 || i >= n || j < 0 || j >= n) continue;
        const int v = node_of[std::size_t(j) * n + i];
        if (v >= 0) visit(v);
      }
    for (int e = start; e <= goal; ++e)
      if (std::abs(pos[e] - c) <= link) visit(e);
  };

  const int m = static_cast<int>(pos.size());
  std::vector<double> dist(m, std::numeric_limits<double>::infinity());
  std::vector<int> prev(m, -1);
  using QE = std::pair<double, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
  dist[start] = 0.0;
  pq.emplace(0.0, start);
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    if (u == goal) break;
    neighbors(u, [&](int v) {
      const double w = weight(pos[u], pos[v]);
      if (dist[u] + w < dist[v]) {
        dist[v] = dist[u] + w;
        prev[v] = u;
        pq.emplace(dist[v], v);
      }
    });
  }
  if (!std::isfinite(dist[goal]))
    throw ValidationError(
        "inner distance: grid too coarse to connect the endpoints inside "
        "the domain");

  std::vector<Complex> path;
  for (int u = goal; u != -1; u = prev[u]) path.push_back(pos[u]);
  std::reverse(path.begin(), path.end());
  return path;
}

// length of the straight chord between a and b, approximated by a short
// subdivision of the edge-weight functional (keeps the smoothing objective a
// length proxy, not a chord metric)
double chord_length(const EdgeWeight& weight, Complex a, Complex b, int sub) {
  double s = 0;
  Complex p = a;
  for (int i = 1; i <= sub; ++i) {
    const Complex q = a + (b - a) * (double(i) / sub);
    s += weight(p, q);
    p = q;
  }
  return s;
}

void smooth_passes(std::vector<Complex>& v, const Region& reg,
                   const EdgeWeight& weight, double step, int max_passes) {
  static const Complex dirs[8] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                  {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  double scale = step;
  for (int pass = 0; pass < max_passes; ++pass) {
    double improved = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      const Complex a = v[i - 1], b = v[i + 1];
      Complex best = v[i];
      double best_len =
          chord_length(weight, a, v[i], 4) + chord_length(weight, v[i], b, 4);
      const auto consider = [&](Complex c) {
        if (!reg.contains(c)) return;
        const double l =
            chord_length(weight, a, c, 4) + chord_length(weight, c, b, 4);
        if (l < best_len) {
          improved += best_len - l;
          best_len = l;
          best = c;
        }
      };
      consider(0.5 * (a + b));
      for (const Complex& d : dirs) consider(v[i] + scale * d);
      v[i] = best;
    }
    scale *= 0.85;
    if (improved < 1e-13 && pass > 8) break;
  }
}

// redistributes the vertices uniformly in arclength; smoothing alone lets
// them slide tangentially and bunch up
std::vector<Complex> resample_uniform(const std::vector<Complex>& v,
                                      const EdgeWeight& weight) {
  if (v.size() < 3) return v;
  std::vector<double> cum(v.size(), 0.0);
  for (std::size_t i = 1; i < v.size(); ++i)
    cum[i] = cum[i - 1] + chord_length(weight, v[i - 1], v[i], 2);
  const double total = cum.back();
  if (!(total > 0)) return v;
  std::vector<Complex> out;
  out.reserve(v.size());
  out.push_back(v.front());
  std::size_t seg = 0;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    const double target = total * double(k) / double(v.size() - 1);
    while (seg + 1 < v.size() - 1 && cum[seg + 1] < target) ++seg;
    const double lo = cum[seg], hi = cum[seg + 1];
    const double f = hi > lo ? (target - lo) / (hi - lo) : 0.0;
    out.push_back(v[seg] + f * (v[seg + 1] - v[seg]));
  }
  out.push_back(v.back());
  return out;
}

void elastic_smooth(std::vector<Complex>& v, const Region& reg,
                    const EdgeWeight& weight, double step) {
  if (v.size() < 3) return;
  for (int round = 0; round < 3; ++round) {
    smooth_passes(v, reg, weight, step * std::pow(0.5, round), 50);
    v = resample_uniform(v, weight);
  }
  smooth_passes(v, reg, weight, 0.15 * step, 40);
  v = resample_uniform(v, weight);  // smoothing lets vertices bunch up again
}

GeodesicResult finish(const std::vector<Complex>& path, const Point& x,
                      const Point& y, double direct,
                      const std::function<LengthResult(const Curve&)>& len) {
  std::vector<Point> pts;
  pts.reserve(path.size());
  for (Complex z : path) pts.emplace_back(z);
  GeodesicResult out;
  out.direct = direct;
  out.path = pts;
  if (path.size() < 2) {
    out.distance = 0.0;
    out.converged = true;
    return out;
  }
  const LengthResult lr = len(Curve::polyline(pts));
  out.distance = lr.value;
  out.converged = lr.converged;
  if (out.distance < direct - 1e-9)
    throw InconsistencyError(
        "inner distance fell below the direct metric value");
  (void)x;
  (void)y;
  return out;
}

}  // namespace

GeodesicResult inner_distance(const DistanceFn& sigma, const Kernel* domain,
                              const Point& x, const Point& y, int grid) {
  if (x.dim() != 1 || y.dim() != 1)
    throw UnsupportedError("inner distance: scalar domains only");
  if (grid < 16 || grid > 400)
    throw ValidationError("inner distance: grid must be in [16, 400]");
  if (domain != nullptr) {
    domain->validate_point(x);
    domain->validate_point(y);
  }
  const double direct = sigma(x, y);
  if (x == y) return {0.0, 0.0, true, {x}};

  const Region reg = make_region(domain, x.z(), y.z());
  const EdgeWeight w = [&sigma](Complex a, Complex b) {
    return sigma(Point(a), Point(b));
  };
  auto path = grid_shortest_path(reg, grid, x.z(), y.z(), w);
  elastic_smooth(path, reg, w, (reg.x1 - reg.x0) / grid);
  return finish(path, x, y, direct, [&](const Curve& c) {
    return curve_length(sigma, c, 1e-8);
  });
}

GeodesicResult bs_geodesic_distance(const Kernel& k, const Point& x,
                                    const Point& y, int grid) {
  if (!k.domain().scalar())
    throw UnsupportedError("bs geodesic: scalar domains only");
  if (grid < 16 || grid > 400)
    throw ValidationError("bs geodesic: grid must be in [16, 400]");
  k.validate_point(x);
  k.validate_point(y);
  if (x == y) return {0.0, 0.0, true, {x}};

  const Region reg = make_region(&k, x.z(), y.z());
  // trapezoid of sqrt(T) along the chord; densities are memoized since the
  // grid search revisits each node many times
  auto cache = std::make_shared<std::unordered_map<std::uint64_t, double>>();
  const auto sqrt_density = [&k, cache](Complex z) {
    std::uint64_t key = 0;
    const float fr = static_cast<float>(z.real());
    const float fi = static_cast<float>(z.imag());
    std::uint32_t hr, hi;
    std::memcpy(&hr, &fr, 4);
    std::memcpy(&hi, &fi, 4);
    key = (std::uint64_t(hr) << 32) | hi;
    if (auto it = cache->find(key); it != cache->end()) return it->second;
    const double v = std::sqrt(bs_density(k, Point(z)));
    (*cache)[key] = v;
    return v;
  };
  const EdgeWeight w = [sqrt_density](Complex a, Complex b) {
    return 0.5 * (sqrt_density(a) + sqrt_density(b)) * std::abs(b - a);
  };
  auto path = grid_shortest_path(reg, grid, x.z(), y.z(), w);
  elastic_smooth(path, reg, w, (reg.x1 - reg.x0) / grid);
  const double direct = 0.0;  // there is no pointwise bs metric to compare to
  return finish(path, x, y, direct, [&](const Curve& c) {
    return bs_length(k, c, 1e-9);
  });
}

}  // namespace rkhs
