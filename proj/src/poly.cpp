#include "sigstab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sigstab {

namespace {

void strip(std::vector<double>& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
}

RealPoly normalized(const RealPoly& p) {
  const double m = p.max_abs();
  return m > 0.0 ? p.scaled(1.0 / m) : p;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Sturm chain s_0 = p, s_1 = p', s_{k+1} = -rem(s_{k-1}, s_k). Each member is
/// scaled to max|c| = 1, which leaves signs untouched.
std::vector<RealPoly> sturm_chain(const RealPoly& p) {
  std::vector<RealPoly> chain{normalized(p)};
  if (p.degree() == 0) return chain;
  chain.push_back(normalized(p.derivative()));
  while (chain.back().degree() > 0) {
    const RealPoly& a = chain[chain.size() - 2];
    const RealPoly& b = chain.back();
    auto [q, r] = divmod(a, b);
    std::vector<double> rc = r.coeffs();
    const double scale = std::max(a.max_abs(), q.max_abs() * b.max_abs());
    for (double& v : rc)
      if (std::abs(v) <= kGcdCutoff * scale) v = 0.0;
    RealPoly rem(rc);
    if (rem.is_zero()) break;
    chain.push_back(normalized(rem.scaled(-1.0)));
  }
  return chain;
}

int variations(const std::vector<RealPoly>& chain, double x) {
  int count = 0;
  int last = 0;
  for (const auto& s : chain) {
    const int sg = sign_of(s.eval(x));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

struct Bracket {
  double lo;
  double hi;
  int count;
};

class Isolator {
 public:
  Isolator(const RealPoly& s, double tol) : chain_(sturm_chain(s)), s_(chain_.front()), tol_(tol) {}

  std::vector<Bracket> isolate(double a, double b) {
    std::vector<Bracket> out;
    recurse(a, b, variations(chain_, a), variations(chain_, b), 0, out);
    return out;
  }

  int count(double a, double b) const { return variations(chain_, a) - variations(chain_, b); }

  const RealPoly& square_free() const { return s_; }

 private:
  void recurse(double a, double b, int va, int vb, int depth, std::vector<Bracket>& out) {
    const int n = va - vb;
    if (n <= 0) return;
    if (n == 1) {
      out.push_back({a, b, 1});
      return;
    }
    double mid = 0.5 * (a + b);
    if (b - a <= tol_ || depth > 200 || mid <= a || mid >= b) {
      // Unresolvable cluster; report it as one root.
      out.push_back({a, b, n});
      return;
    }
    for (int nudge = 1; s_.eval(mid) == 0.0 && nudge < 8; ++nudge) mid = a + (b - a) * (0.5 + 0.01 * nudge);
    const int vm = variations(chain_, mid);
    recurse(a, mid, va, vm, depth + 1, out);
    recurse(mid, b, vm, vb, depth + 1, out);
  }

  std::vector<RealPoly> chain_;
  RealPoly s_;
  double tol_;
};

double polish(const RealPoly& s, const RealPoly& ds, double x, double lo, double hi, double tol) {
  double best = x;
  double best_res = std::abs(s.eval(x));
  for (int it = 0; it < 4 && best_res > 0.0; ++it) {
    const double d = ds.eval(best);
    if (d == 0.0) break;
    const double next = best - s.eval(best) / d;
    if (!std::isfinite(next) || next < lo - tol || next > hi + tol) break;
    const double res = std::abs(s.eval(next));
    if (res >= best_res) break;
    best = next;
    best_res = res;
  }
  return best;
}

}  // namespace

NoConvergence::NoConvergence(double lo, double hi)
    : std::runtime_error("root refinement did not converge on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]"),
      lo_(lo),
      hi_(hi) {}

RealPoly::RealPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  for (double v : c_)
    if (!std::isfinite(v)) throw std::invalid_argument("polynomial coefficient is not finite");
  strip(c_);
}

RealPoly RealPoly::with_noise_floor(std::vector<double> coeffs, double rel) {
  double m = 0.0;
  for (double v : coeffs) m = std::max(m, std::abs(v));
  for (double& v : coeffs)
    if (std::abs(v) < rel * m) v = 0.0;
  return RealPoly(std::move(coeffs));
}

RealPoly RealPoly::from_roots(std::span<const double> roots) {
  RealPoly p{1.0};
  for (double r : roots) p = p * RealPoly{-r, 1.0};
  return p;
}

double RealPoly::max_abs() const noexcept {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

double RealPoly::eval(double x) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RealPoly::eval_scale(double x) const noexcept {
  const double ax = std::abs(x);
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * ax + std::abs(*it);
  return acc;
}

RealPoly RealPoly::derivative() const {
  if (c_.size() == 1) return RealPoly{};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return RealPoly(std::move(d));
}

RealPoly RealPoly::scaled(double f) const {
  std::vector<double> c = c_;
  for (double& v : c) v *= f;
  return RealPoly(std::move(c));
}

RealPoly operator+(const RealPoly& a, const RealPoly& b) {
  std::vector<double> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return RealPoly(std::move(c));
}

RealPoly operator-(const RealPoly& a, const RealPoly& b) { return a + b.scaled(-1.0); }

RealPoly operator*(const RealPoly& a, const RealPoly& b) {
  std::vector<double> c(a.coeffs().size() + b.coeffs().size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a[i] * b[j];
  return RealPoly(std::move(c));
}

std::pair<RealPoly, RealPoly> divmod(const RealPoly& a, const RealPoly& b) {
  if (b.is_zero()) throw ZeroPolynomial();
  if (a.degree() < b.degree()) return {RealPoly{}, a};
  std::vector<double> r = a.coeffs();
  const std::size_t db = b.degree();
  std::vector<double> q(a.degree() - db + 1, 0.0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const double f = r[k + db] / b.leading();
    q[k] = f;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] -= f * b[j];
    r[k + db] = 0.0;
  }
  r.resize(std::max<std::size_t>(db, 1));
  return {RealPoly(std::move(q)), RealPoly(std::move(r))};
}

RealPoly gcd(const RealPoly& a, const RealPoly& b, double cutoff) {
  if (a.is_zero() && b.is_zero()) throw ZeroPolynomial();
  RealPoly u = normalized(a.degree() >= b.degree() ? a : b);
  RealPoly v = normalized(a.degree() >= b.degree() ? b : a);
  while (!v.is_zero()) {
    auto [q, r] = divmod(u, v);
    std::vector<double> rc = r.coeffs();
    const double scale = std::max(u.max_abs(), q.max_abs() * v.max_abs());
    for (double& x : rc)
      if (std::abs(x) <= cutoff * scale) x = 0.0;
    u = std::move(v);
    v = normalized(RealPoly(std::move(rc)));
  }
  return normalized(u);
}

int descartes_sign_changes(const RealPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  int changes = 0;
  int last = 0;
  for (double v : p.coeffs()) {
    const int sg = sign_of(v);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

int sturm_count(const RealPoly& p, double a, double b) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (p.degree() == 0 || !(a < b)) return 0;
  const auto chain = sturm_chain(p);
  return std::max(0, variations(chain, a) - variations(chain, b));
}

double cauchy_bound(const RealPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial();
  double m = 0.0;
  for (std::size_t k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p[k]));
  return 1.0 + m / std::abs(p.leading());
}

std::vector<double> RootList::values() const {
  std::vector<double> v;
  v.reserve(roots.size());
  for (const auto& r : roots) v.push_back(r.value);
  return v;
}

std::size_t RootList::count_in(double a, double b) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(roots.begin(), roots.end(), [&](const Root& r) { return r.value >= a && r.value <= b; }));
}

RootList real_roots(const RealPoly& p, const RootOptions& opts) {
  if (p.is_zero()) throw ZeroPolynomial();
  if (!(opts.tol > 0.0)) throw std::invalid_argument("root tolerance must be positive");
  RootList out;
  if (p.degree() == 0) return out;

  // Factor out x^k exactly: the root at zero needs no refinement.
  std::size_t zeros = 0;
  while (p[zeros] == 0.0) ++zeros;
  const RealPoly q(std::vector<double>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), p.coeffs().end()));

  std::vector<Root> found;
  if (q.degree() > 0) {
    RealPoly g = gcd(q, q.derivative());
    RealPoly s = q;
    if (g.degree() > 0) {
      RealPoly quotient = divmod(q, g).first;
      if (quotient.degree() > 0) s = quotient;
    }

    Isolator iso(s, opts.tol);
    const RealPoly& sf = iso.square_free();
    const RealPoly dsf = sf.derivative();
    const double bound = cauchy_bound(q);

    for (const Bracket& br : iso.isolate(-bound, bound)) {
      double lo = br.lo;
      double hi = br.hi;
      double root;
      if (br.count > 1) {
        root = 0.5 * (lo + hi);
      } else if (sf.eval(hi) == 0.0) {
        root = hi;
      } else {
        const bool sign_bracket = sign_of(sf.eval(lo)) * sign_of(sf.eval(hi)) < 0;
        int it = 0;
        for (; it < opts.max_iterations && hi - lo > opts.tol; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const double fm = sf.eval(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          bool left;
          if (sign_bracket) {
            left = sign_of(fm) != sign_of(sf.eval(lo));
          } else {
            left = iso.count(lo, mid) >= 1;
          }
          (left ? hi : lo) = mid;
        }
        const double mid = 0.5 * (lo + hi);
        if (hi - lo > opts.tol && mid > lo && mid < hi) throw NoConvergence(lo, hi);
        root = polish(sf, dsf, mid, lo, hi, opts.tol);
      }
      found.push_back({root, 0.0, br.count});
    }

    if (g.degree() > 0 && !found.empty()) {
      const RootList repeated = real_roots(g, opts);
      for (Root& r : found) {
        const double match_tol = std::max(1e-6, 1e3 * opts.tol) * std::max(1.0, std::abs(r.value));
        for (const Root& gr : repeated.roots) {
          if (std::abs(gr.value - r.value) <= match_tol) {
            r.multiplicity = std::max(r.multiplicity, 1 + gr.multiplicity);
            break;
          }
        }
      }
    }
  }
  if (zeros > 0) found.push_back({0.0, 0.0, static_cast<int>(zeros)});

  std::sort(found.begin(), found.end(), [](const Root& a, const Root& b) { return a.value < b.value; });
  int budget = static_cast<int>(p.degree());
  for (Root& r : found) {
    if (!out.roots.empty() && r.value <= out.roots.back().value) continue;
    r.multiplicity = std::clamp(r.multiplicity, 1, std::max(1, budget));
    budget -= r.multiplicity;
    r.residual = std::abs(p.eval(r.value));
    out.roots.push_back(r);
  }
  return out;
}

}  // namespace sigstab
