#include "helfrich/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <queue>
#include <sstream>

#include "helfrich/errors.hpp"

namespace helfrich {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// Point at distance tau^2 from `end` towards `other`, kept strictly inside.
// Returns the realised distance, which is exact once r is rounded, so the
// Jacobian matches the point where f is evaluated.
double toward(double end, double other, double tau, double& distance) {
  double r = end < other ? end + tau * tau : end - tau * tau;
  if (r == end) r = std::nextafter(end, other);
  if (end < other ? r >= other : r <= other) r = std::nextafter(other, end);
  distance = std::abs(r - end);
  return r;
}

// One Gauss-Kronrod panel; the error is |K15 - G7|.
template <class F>
Panel panel(const F& f, double a, double b) {
  double err = 0.0, l1 = 0.0;
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err, &l1);
  return {a, b, v, err, l1};
}

}  // namespace

QuadratureValue integrate_radial(const std::function<double(double)>& f, double a, double b, bool singular_at_a,
                                 bool singular_at_b, const std::vector<double>& breakpoints,
                                 const QuadratureOptions& options) {
  if (!(b > a)) throw DomainError("integration interval is empty");
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);
  if (singular_at_a && singular_at_b && cuts.size() == 2) cuts.insert(cuts.begin() + 1, 0.5 * (a + b));

  // Each segment is integrated in its own variable: plain r, or tau with
  // r = end -/+ tau^2 next to a singular end.
  struct Segment {
    std::function<double(double)> g;
    double lo, hi;
  };
  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const bool sa = i == 0 && singular_at_a;
    const bool sb = i + 2 == cuts.size() && singular_at_b;
    if (sb || sa) {
      const double end = sb ? hi : lo, other = sb ? lo : hi;
      segments.push_back({[&f, end, other](double tau) {
                            double d = 0.0;
                            const double r = toward(end, other, tau, d);
                            return 2.0 * std::sqrt(d) * f(r);
                          },
                          0.0, std::sqrt(hi - lo)});
    } else {
      segments.push_back({f, lo, hi});
    }
  }

  // Global adaptive refinement: always bisect the panel with the largest error.
  std::vector<std::priority_queue<Panel>> queues(segments.size());
  double total_error = 0.0, total_l1 = 0.0;
  int panels = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Panel p = panel(segments[i].g, segments[i].lo, segments[i].hi);
    queues[i].push(p);
    total_error += p.error;
    total_l1 += p.l1;
    ++panels;
  }
  auto target = [&] { return std::max(options.rel_tol * total_l1, options.abs_tol); };
  while (total_error > target()) {
    if (panels >= options.max_panels) {
      std::ostringstream os;
      os << "quadrature error estimate " << total_error << " exceeds the target " << target() << " on [" << a
         << ", " << b << "] after " << panels << " panels";
      throw QuadratureFailure(os.str());
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < queues.size(); ++i)
      if (queues[i].top().error > queues[worst].top().error) worst = i;
    const Panel p = queues[worst].top();
    queues[worst].pop();
    const double m = 0.5 * (p.a + p.b);
    const Panel left = panel(segments[worst].g, p.a, m);
    const Panel right = panel(segments[worst].g, m, p.b);
    total_error += left.error + right.error - p.error;
    total_l1 += left.l1 + right.l1 - p.l1;
    queues[worst].push(left);
    queues[worst].push(right);
    ++panels;
  }

  // Sum in a fixed order (by position) so results do not depend on refinement history.
  QuadratureValue out;
  for (auto& q : queues) {
    std::vector<Panel> seg;
    while (!q.empty()) {
      seg.push_back(q.top());
      q.pop();
    }
    std::sort(seg.begin(), seg.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const Panel& p : seg) {
      out.value += p.value;
      out.error += p.error;
    }
  }
  if (!std::isfinite(out.value)) throw QuadratureFailure("integrand produced a non-finite value");
  return out;
}

}  // namespace helfrich
