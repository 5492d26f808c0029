#include "relgs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace relgs {

ShellProfile shell_profile(const Field& w) {
  const Grid& g = w.grid();
  const double h = g.spacing();
  const double L = g.box_half_length();
  const auto nbins = static_cast<std::size_t>(std::ceil(L / h)) + 1;

  ShellProfile prof;
  prof.radii.resize(nbins);
  prof.averages.assign(nbins, 0.0);
  prof.counts.assign(nbins, 0);
  for (std::size_t b = 0; b < nbins; ++b) prof.radii[b] = (b + 0.5) * h;

  const auto& vals = w.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double r = std::sqrt(g.coord_norm_sq(i));
    const auto b = static_cast<std::size_t>(r / h);
    if (b >= nbins) continue;
    prof.averages[b] += vals[i];
    ++prof.counts[b];
  }
  for (std::size_t b = 0; b < nbins; ++b) {
    if (prof.counts[b] > 0) prof.averages[b] /= static_cast<double>(prof.counts[b]);
  }
  return prof;
}

Field radialize(const Field& w) {
  const Grid& g = w.grid();
  const auto& vals = w.values();
  // Orbits keyed by squared radius rounded to a fixed relative grain.
  std::map<long long, std::pair<double, std::size_t>> orbits;
  const double grain = 1e-9 * g.spacing() * g.spacing();
  std::vector<long long> keys(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    keys[i] = static_cast<long long>(std::llround(g.coord_norm_sq(i) / grain));
    auto& o = orbits[keys[i]];
    o.first += vals[i];
    ++o.second;
  }
  std::vector<double> out(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const auto& o = orbits[keys[i]];
    out[i] = o.first / static_cast<double>(o.second);
  }
  return Field(g, std::move(out));
}

FieldDiagnostics field_diagnostics(const Field& w) {
  FieldDiagnostics d;
  const Grid& g = w.grid();
  const double L = g.box_half_length();
  const ShellProfile prof = shell_profile(w);

  double peak = 0.0;
  for (double a : prof.averages) peak = std::max(peak, std::abs(a));

  // Tail slope: least squares on log(shell average) over [L/4, L/2].
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t npts = 0;
  bool positive = true;
  for (std::size_t b = 0; b < prof.radii.size(); ++b) {
    const double r = prof.radii[b];
    if (r < L / 4.0 || r > L / 2.0 || prof.counts[b] == 0) continue;
    const double a = prof.averages[b];
    if (!(a > peak * 1e-13)) {
      positive = false;
      continue;
    }
    const double ly = std::log(a);
    sx += r;
    sy += ly;
    sxx += r * r;
    sxy += r * ly;
    ++npts;
  }
  if (npts >= 3) {
    const double denom = npts * sxx - sx * sx;
    d.tail_slope = (npts * sxy - sx * sy) / denom;
    d.tail_reliable = positive;
  }

  // Monotonicity over shells up to L/2, ignoring the floating-noise floor.
  std::size_t pairs = 0, good = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (std::size_t b = 0; b < prof.radii.size(); ++b) {
    if (prof.radii[b] > L / 2.0 || prof.counts[b] == 0) continue;
    const double a = prof.averages[b];
    if (std::abs(a) < peak * 1e-10) continue;
    if (have_prev) {
      ++pairs;
      if (a <= prev * (1.0 + 1e-6) + peak * 1e-12) ++good;
    }
    prev = a;
    have_prev = true;
  }
  d.monotonicity_score = pairs == 0 ? 1.0
                                    : static_cast<double>(good) /
                                          static_cast<double>(pairs);

  const Field rad = radialize(w);
  double diff2 = 0.0, norm2 = 0.0;
  const auto& a = w.values();
  const auto& b = rad.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff2 += (a[i] - b[i]) * (a[i] - b[i]);
    norm2 += a[i] * a[i];
  }
  d.angular_defect = norm2 > 0.0 ? std::sqrt(diff2 / norm2) : 0.0;
  return d;
}

}  // namespace relgs
