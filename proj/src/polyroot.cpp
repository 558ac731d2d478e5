#include "copdyn/polyroot.hpp"

#include <algorithm>
#include <cmath>

namespace copdyn::polyroot {
namespace {

constexpr double kCoeffEps = 1e-13;

void normalize(Poly& p) {
  double scale = 0.0;
  for (double c : p) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return;
  for (double& c : p) {
    c /= scale;
    if (std::abs(c) < kCoeffEps) c = 0.0;
  }
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
}

// -(a mod b), the Sturm chain step.
Poly negative_remainder(Poly a, const Poly& b) {
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0.0)) {
    const double factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
    a.back() = 0.0;
    while (a.size() > 1 && std::abs(a.back()) < kCoeffEps) a.pop_back();
    if (a.size() < b.size()) break;
  }
  for (double& c : a) c = -c;
  normalize(a);
  return a;
}

std::vector<Poly> sturm_chain(Poly p) {
  std::vector<Poly> chain;
  normalize(p);
  if (degree(p) <= 0) return chain;
  chain.push_back(p);
  Poly d = derivative(p);
  normalize(d);
  chain.push_back(d);
  while (degree(chain.back()) > 0) {
    Poly r = negative_remainder(chain[chain.size() - 2], chain.back());
    if (r.size() == 1 && r[0] == 0.0) break;  // gcd reached (multiple roots)
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

int variations(const std::vector<Poly>& chain, double x) {
  int count = 0, last = 0;
  for (const Poly& p : chain) {
    const int s = sign_of(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

double cauchy_bound(const Poly& p) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, std::abs(p[i]));
  return 1.0 + m / std::abs(p.back());
}

// Distinct roots in (a, b].
int roots_between(const std::vector<Poly>& chain, double a, double b) {
  return variations(chain, a) - variations(chain, b);
}

void isolate(const std::vector<Poly>& chain, double a, double b, int count,
             std::vector<double>& out, int depth) {
  if (count <= 0) return;
  if (b - a < 1e-12 * (1.0 + std::abs(a)) || depth > 200) {
    const double root = 0.5 * (a + b);
    for (int i = 0; i < count; ++i) out.push_back(root);  // coincident at tol
    return;
  }
  const double mid = 0.5 * (a + b);
  const int left = roots_between(chain, a, mid);
  isolate(chain, a, mid, left, out, depth + 1);
  isolate(chain, mid, b, count - left, out, depth + 1);
}

}  // namespace

Poly trimmed(Poly p) {
  while (p.size() > 1 && p.back() == 0.0) p.pop_back();
  if (p.empty()) p.push_back(0.0);
  return p;
}

int degree(const Poly& p) {
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] != 0.0) return static_cast<int>(i);
  }
  return 0;
}

double eval(const Poly& p, double x) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Poly derivative(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
  return d;
}

std::vector<double> real_roots(const Poly& p) {
  std::vector<double> out;
  const auto chain = sturm_chain(p);
  if (chain.empty()) return out;
  const double bound = cauchy_bound(chain.front());
  const int total = roots_between(chain, -bound, bound);
  isolate(chain, -bound, bound, total, out, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) {
                          return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a));
                        }),
            out.end());
  return out;
}

int count_real_roots(const Poly& p) { return static_cast<int>(real_roots(p).size()); }

bool positive_everywhere(const Poly& p) {
  Poly q = trimmed(p);
  if (degree(q) == 0) return q[0] > 0.0;
  if (degree(q) % 2 != 0) return false;
  return count_real_roots(q) == 0 && eval(q, 0.0) > 0.0;
}

bool nonnegative_everywhere(const Poly& p) {
  Poly q = trimmed(p);
  if (degree(q) == 0) return q[0] >= 0.0;
  if (degree(q) % 2 != 0) return false;
  if (q.back() < 0.0) return false;
  const auto roots = real_roots(q);
  if (roots.empty()) return eval(q, 0.0) > 0.0;
  // Sign must stay >= 0 between and outside the roots.
  const double bound = 1.0 + std::abs(roots.front()) + std::abs(roots.back());
  std::vector<double> probes = {-bound, bound};
  for (std::size_t i = 0; i + 1 < roots.size(); ++i)
    probes.push_back(0.5 * (roots[i] + roots[i + 1]));
  for (double x : probes) {
    if (eval(q, x) < -1e-9 * (1.0 + std::abs(eval(q, 0.0)))) return false;
  }
  return true;
}

}  // namespace copdyn::polyroot
