#include "ssfield/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>

#include "ssfield/errors.hpp"

namespace ssf {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class T>
struct Panel {
  double lo, hi;
  T value;
  double err;
  int piece;
  double floor = 0;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class T>
void gk15(const Integrand<T>& f, double lo, double hi, T& result, double& err, double& floor) {
  double c = 0.5 * (lo + hi);
  double h = 0.5 * (hi - lo);
  std::array<T, 15> fv;
  fv[7] = f(c);
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - h * kXgk[j]);
    fv[14 - j] = f(c + h * kXgk[j]);
  }
  T k = kWgk[7] * fv[7];
  T g = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    T pair = fv[j] + fv[14 - j];
    k += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) g += kWg[j / 2] * pair;
  }
  T mean = 0.5 * k;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  result = k * h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  err = std::abs((k - g) * h);
  if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  floor = 50 * kEps * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50 * kEps)) err = std::max(floor, err);
  if (!std::isfinite(std::abs(result)))
    throw QuadratureError("non-finite integrand value on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
}

// Global adaptive integration over a set of pieces, each a u-interval of its
// own transformed integrand.
template <class T>
QuadResult<T> adaptive(const std::vector<Integrand<T>>& pieces,
                       const std::vector<std::pair<double, double>>& ranges,
                       const QuadOptions& opt, EvalBudget& budget) {
  std::priority_queue<Panel<T>> queue;
  T total{};
  double total_err = 0;
  T retired{};
  double retired_err = 0;
  double total_floor = 0;
  std::size_t panels = 0;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    Panel<T> pn{ranges[p].first, ranges[p].second, T{}, 0, static_cast<int>(p)};
    budget.charge(15);
    gk15(pieces[p], pn.lo, pn.hi, pn.value, pn.err, pn.floor);
    total_floor += pn.floor;
    total += pn.value;
    total_err += pn.err;
    queue.push(pn);
    ++panels;
  }
  // Requests below the rounding floor of the sum are capped at that floor.
  auto tolerance = [&] {
    return std::max({opt.abs_tol, opt.rel_tol * std::abs(total), 2.0 * total_floor});
  };
  while (!queue.empty() && total_err > tolerance()) {
    Panel<T> top = queue.top();
    queue.pop();
    double mid = 0.5 * (top.lo + top.hi);
    double width = top.hi - top.lo;
    if (top.err <= top.floor || width <= 1e3 * kEps * std::max(std::abs(top.lo), std::abs(top.hi)) ||
        mid == top.lo || mid == top.hi) {
      retired += top.value;
      retired_err += top.err;
      continue;
    }
    Panel<T> l{top.lo, mid, T{}, 0, top.piece};
    Panel<T> r{mid, top.hi, T{}, 0, top.piece};
    budget.charge(30);
    gk15(pieces[top.piece], l.lo, l.hi, l.value, l.err, l.floor);
    gk15(pieces[top.piece], r.lo, r.hi, r.value, r.err, r.floor);
    total_floor += l.floor + r.floor - top.floor;
    total += l.value + r.value - top.value;
    total_err += l.err + r.err - top.err;
    queue.push(l);
    queue.push(r);
    ++panels;
    // Periodically resum to limit drift from the running updates.
    if (panels % 64 == 0) {
      T s = retired;
      double e = retired_err;
      auto copy = queue;
      while (!copy.empty()) {
        s += copy.top().value;
        e += copy.top().err;
        copy.pop();
      }
      total = s;
      total_err = e;
    }
  }
  QuadResult<T> out;
  T s = retired;
  double e = retired_err;
  while (!queue.empty()) {
    s += queue.top().value;
    e += queue.top().err;
    queue.pop();
  }
  out.value = s;
  out.abs_error = e;
  out.panels = panels;
  out.converged = e <= std::max({opt.abs_tol, opt.rel_tol * std::abs(s), 2.0 * total_floor});
  return out;
}

double grading_power(double sigma) {
  if (sigma <= 0) return 1.0;
  return std::min(1.0 / (1.0 - std::min(sigma, 0.95)), 20.0);
}

// Adds the graded halves of [a, b] as pieces.
template <class T>
void add_graded(const Integrand<T>& f, double a, double b, EndpointBehaviour ends,
                std::vector<Integrand<T>>& pieces, std::vector<std::pair<double, double>>& ranges) {
  double pl = grading_power(ends.left);
  double pr = grading_power(ends.right);
  if (pl == 1.0 && pr == 1.0) {
    pieces.push_back(f);
    ranges.emplace_back(a, b);
    return;
  }
  double m = 0.5 * (a + b);
  double hl = m - a;
  double hr = b - m;
  if (pl == 1.0) {
    pieces.push_back(f);
    ranges.emplace_back(a, m);
  } else {
    pieces.push_back([f, a, hl, pl](double u) -> T {
      double up = std::pow(u, pl - 1.0);
      return f(a + hl * up * u) * (hl * pl * up);
    });
    ranges.emplace_back(0.0, 1.0);
  }
  if (pr == 1.0) {
    pieces.push_back(f);
    ranges.emplace_back(m, b);
  } else {
    pieces.push_back([f, b, hr, pr](double u) -> T {
      double up = std::pow(u, pr - 1.0);
      return f(b - hr * up * u) * (hr * pr * up);
    });
    ranges.emplace_back(0.0, 1.0);
  }
}

template <class T>
QuadResult<T> finish(QuadResult<T> r, const EvalBudget& b, std::size_t start) {
  r.evaluations = b.used() - start;
  return r;
}

}  // namespace

void EvalBudget::charge(std::size_t n) {
  used_ += n;
  if (used_ > max_)
    throw QuadratureError("quadrature evaluation budget of " + std::to_string(max_) +
                          " exhausted");
}

template <class T>
QuadResult<T> integrate_finite(const Integrand<T>& f, double a, double b, const QuadOptions& opt,
                               EndpointBehaviour ends, EvalBudget* budget) {
  EvalBudget local(opt.max_evals);
  EvalBudget& bud = budget ? *budget : local;
  std::size_t start = bud.used();
  if (a == b) return QuadResult<T>{T{}, 0, 0, 0, true};
  if (a > b) {
    auto r = integrate_finite<T>(f, b, a, opt, {ends.right, ends.left}, &bud);
    r.value = -r.value;
    return finish(r, bud, start);
  }
  std::vector<Integrand<T>> pieces;
  std::vector<std::pair<double, double>> ranges;
  add_graded(f, a, b, ends, pieces, ranges);
  return finish(adaptive(pieces, ranges, opt, bud), bud, start);
}

template <class T>
QuadResult<T> integrate_algebraic_tail(const Integrand<T>& f, double a, double q,
                                       const QuadOptions& opt, EvalBudget* budget,
                                       double left_sigma) {
  if (!(q > 1.0)) throw DomainError("algebraic tail needs decay exponent q > 1");
  EvalBudget local(opt.max_evals);
  EvalBudget& bud = budget ? *budget : local;
  std::size_t start = bud.used();
  double L = std::max(1.0, std::abs(a));
  std::vector<Integrand<T>> pieces;
  std::vector<std::pair<double, double>> ranges;
  double a_tail = a;
  if (left_sigma > 0) {
    add_graded<T>(f, a, a + L, {left_sigma, 0}, pieces, ranges);
    a_tail = a + L;
  }
  double r = 1.0 / (q - 1.0);
  pieces.push_back([f, a_tail, L, r](double u) -> T {
    double w = std::pow(u, -r);
    double x = a_tail + L * (w - 1.0);
    if (!std::isfinite(x)) return T{};
    return f(x) * (L * r * w / u);
  });
  ranges.emplace_back(0.0, 1.0);
  return finish(adaptive(pieces, ranges, opt, bud), bud, start);
}

template <class T>
T wynn_epsilon(const std::vector<T>& s, double* err) {
  const std::size_t n = s.size();
  if (n < 3) {
    if (err) *err = n >= 2 ? std::abs(s[n - 1] - s[n - 2]) : HUGE_VAL;
    return n ? s.back() : T{};
  }
  // e[k][j] = epsilon_k^{(j)}; keep two previous columns.
  std::vector<T> prev(n + 1, T{});  // column k-1
  std::vector<T> cur(s.begin(), s.end());  // column k = 0
  T best = s.back();
  T best_prev = s[n - 2];
  for (std::size_t k = 1; k < n; ++k) {
    std::size_t len = n - k;
    std::vector<T> next(len);
    bool ok = true;
    for (std::size_t j = 0; j < len; ++j) {
      T d = cur[j + 1] - cur[j];
      if (std::abs(d) == 0) {
        ok = false;
        break;
      }
      next[j] = prev[j + 1] + T(1.0) / d;
    }
    if (!ok) break;
    if (k % 2 == 0) {
      best_prev = len >= 2 ? next[len - 2] : best;
      best = next[len - 1];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  if (err) *err = std::abs(best - best_prev);
  return best;
}

template <class T>
QuadResult<T> integrate_oscillatory_tail(const Integrand<T>& f, double a, double omega,
                                         const QuadOptions& opt, EvalBudget* budget,
                                         double left_sigma) {
  if (!(omega > 0)) throw DomainError("oscillatory tail needs omega > 0");
  EvalBudget local(opt.max_evals);
  EvalBudget& bud = budget ? *budget : local;
  std::size_t start = bud.used();
  const double h = kPi / omega;
  const std::size_t max_cycles = 600;
  const std::size_t window = 24;
  QuadOptions cyc = opt;
  cyc.abs_tol = opt.abs_tol * 0.02;
  cyc.rel_tol = 0;
  std::vector<T> sums;
  T s{};
  double cycle_err = 0;
  std::size_t panels = 0;
  double last_est_err = HUGE_VAL;
  T est{};
  int stable = 0;
  for (std::size_t k = 0; k < max_cycles; ++k) {
    double lo = a + static_cast<double>(k) * h;
    double hi = lo + h;
    EndpointBehaviour ends{k == 0 ? left_sigma : 0.0, 0.0};
    auto r = integrate_finite<T>(f, lo, hi, cyc, ends, &bud);
    s += r.value;
    cycle_err += r.abs_error;
    panels += r.panels;
    sums.push_back(s);
    if (sums.size() < 6) continue;
    std::vector<T> tail_window(sums.end() - static_cast<long>(std::min(window, sums.size())),
                               sums.end());
    double werr = 0;
    T e = wynn_epsilon(tail_window, &werr);
    double diff = std::abs(e - est);
    est = e;
    last_est_err = std::max(werr, diff);
    if (last_est_err < opt.abs_tol * 0.5) {
      if (++stable >= 2) break;
    } else {
      stable = 0;
    }
  }
  QuadResult<T> out;
  out.value = est;
  out.abs_error = last_est_err + cycle_err;
  out.panels = panels;
  out.converged = stable >= 2 && out.abs_error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(est));
  return finish(out, bud, start);
}

template <class T>
QuadResult<T> integrate_1d(const Integrand<T>& f, Domain d, double tol, EndpointBehaviour ends,
                           TailHint tail) {
  QuadOptions opt;
  opt.abs_tol = tol;
  if (std::isfinite(d.b)) {
    auto r = integrate_finite<T>(f, d.a, d.b, opt, ends);
    if (!r.converged) throw QuadratureError("integrate_1d: tolerance not reached");
    return r;
  }
  QuadResult<T> r = tail.omega > 0
                        ? integrate_oscillatory_tail<T>(f, d.a, tail.omega, opt, nullptr, ends.left)
                        : integrate_algebraic_tail<T>(f, d.a, tail.decay_q, opt, nullptr, ends.left);
  if (!r.converged) throw QuadratureError("integrate_1d: tolerance not reached");
  return r;
}

QuadResult<Complex> integrate_power_waves(const std::vector<Wave>& waves, double a, double q,
                                          const QuadOptions& opt, EvalBudget* budget) {
  EvalBudget local(opt.max_evals);
  EvalBudget& bud = budget ? *budget : local;
  std::size_t start = bud.used();
  // Merge equal |frequencies|; e^{-i w y} pairs with e^{i w y}.
  struct Group {
    double omega;
    Complex cplus{0}, cminus{0};
  };
  std::vector<Group> groups;
  Complex zero_coef = 0;
  for (const auto& w : waves) {
    if (w.omega == 0) {
      zero_coef += w.coef;
      continue;
    }
    double om = std::abs(w.omega);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return std::abs(g.omega - om) <= 1e-14 * om; });
    if (it == groups.end()) {
      groups.push_back({om});
      it = groups.end() - 1;
    }
    (w.omega > 0 ? it->cplus : it->cminus) += w.coef;
  }
  QuadOptions sub = opt;
  std::size_t parts = groups.size() + (zero_coef != 0.0 ? 1 : 0);
  sub.abs_tol = opt.abs_tol / std::max<std::size_t>(parts, 1);
  QuadResult<Complex> out;
  out.converged = true;
  if (zero_coef != 0.0) {
    if (!(q > 1)) throw DomainError("non-oscillatory part of a power tail must have q > 1");
    Integrand<Complex> g = [q](double y) { return Complex(std::pow(y, -q)); };
    auto r = integrate_algebraic_tail<Complex>(g, a, q, sub, &bud);
    out.value += zero_coef * r.value;
    out.abs_error += std::abs(zero_coef) * r.abs_error;
    out.panels += r.panels;
    out.converged = out.converged && r.converged;
  }
  for (const auto& g : groups) {
    double scale = std::max(std::abs(g.cplus), std::abs(g.cminus));
    if (scale == 0) continue;
    QuadOptions gs = sub;
    gs.abs_tol = sub.abs_tol / scale;
    Complex cp = g.cplus, cm = g.cminus;
    double om = g.omega;
    Integrand<Complex> fn = [cp, cm, om, q](double y) {
      Complex e = std::polar(1.0, om * y);
      return (cp * e + cm * std::conj(e)) * std::pow(y, -q);
    };
    auto r = integrate_oscillatory_tail<Complex>(fn, a, om, gs, &bud);
    out.value += r.value;
    out.abs_error += r.abs_error;
    out.panels += r.panels;
    out.converged = out.converged && r.abs_error <= sub.abs_tol;
  }
  out.evaluations = bud.used() - start;
  return out;
}

template QuadResult<double> integrate_finite<double>(const Integrand<double>&, double, double,
                                                     const QuadOptions&, EndpointBehaviour,
                                                     EvalBudget*);
template QuadResult<Complex> integrate_finite<Complex>(const Integrand<Complex>&, double, double,
                                                       const QuadOptions&, EndpointBehaviour,
                                                       EvalBudget*);
template QuadResult<double> integrate_algebraic_tail<double>(const Integrand<double>&, double,
                                                             double, const QuadOptions&,
                                                             EvalBudget*, double);
template QuadResult<Complex> integrate_algebraic_tail<Complex>(const Integrand<Complex>&, double,
                                                               double, const QuadOptions&,
                                                               EvalBudget*, double);
template QuadResult<double> integrate_oscillatory_tail<double>(const Integrand<double>&, double,
                                                               double, const QuadOptions&,
                                                               EvalBudget*, double);
template QuadResult<Complex> integrate_oscillatory_tail<Complex>(const Integrand<Complex>&,
                                                                 double, double,
                                                                 const QuadOptions&, EvalBudget*,
                                                                 double);
template QuadResult<double> integrate_1d<double>(const Integrand<double>&, Domain, double,
                                                 EndpointBehaviour, TailHint);
template QuadResult<Complex> integrate_1d<Complex>(const Integrand<Complex>&, Domain, double,
                                                   EndpointBehaviour, TailHint);
template double wynn_epsilon<double>(const std::vector<double>&, double*);
template Complex wynn_epsilon<Complex>(const std::vector<Complex>&, double*);

}  // namespace ssf
