#pragma once

#include <type_traits>

namespace dlab::num {

// Fourth-order central differences of F: R^3 -> T along the coordinate
// axes. T needs +, - and multiplication by double.

template <class F, class V>
auto fd_first(const F& f, const V& x, int k, double h) -> std::decay_t<decltype(f(x))> {
  V a = x, b = x, c = x, d = x;
  a[k] += 2 * h;
  b[k] += h;
  c[k] -= h;
  d[k] -= 2 * h;
  return (f(d) - f(a) + 8.0 * (f(b) - f(c))) * (1.0 / (12.0 * h));
}

template <class F, class V>
auto fd_second(const F& f, const V& x, int k, int l, double h) -> std::decay_t<decltype(f(x))> {
  using T = std::decay_t<decltype(f(x))>;
  if (k == l) {
    V a = x, b = x, c = x, d = x;
    a[k] += 2 * h;
    b[k] += h;
    c[k] -= h;
    d[k] -= 2 * h;
    return (16.0 * (f(b) + f(c)) - f(a) - f(d) - 30.0 * f(x)) * (1.0 / (12.0 * h * h));
  }
  const auto mixed = [&](double s) -> T {
    V pp = x, pm = x, mp = x, mm = x;
    pp[k] += s; pp[l] += s;
    pm[k] += s; pm[l] -= s;
    mp[k] -= s; mp[l] += s;
    mm[k] -= s; mm[l] -= s;
    return (f(pp) - f(pm) - f(mp) + f(mm)) * (1.0 / (4.0 * s * s));
  };
  // Richardson on the second-order stencil.
  return (4.0 * mixed(h) - mixed(2 * h)) * (1.0 / 3.0);
}

}  // namespace dlab::num
