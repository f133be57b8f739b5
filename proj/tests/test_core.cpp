#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gstf/catalog.hpp"
#include "gstf/inequalities.hpp"
#include "oracles.hpp"

using namespace gstf;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("build_grid") {
  const Grid1D two = build_grid(1.0, 1);
  CHECK(two.count() == 2);
  CHECK(two.at(0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(two.at(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.step() == 2.0);

  const Grid1D g = build_grid(10.0, 10);
  CHECK(g.count() == 1024);
  CHECK(g.step() == doctest::Approx(20.0 / 1023.0).epsilon(1e-15));
  CHECK(std::abs(g.at(0) + 10.0) < 1e-13);
  CHECK(std::abs(g.at(1023) - 10.0) < 1e-13);
  CHECK(g.centered());

  CHECK(kind_of([] { build_grid(0.0, 4); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_grid(-1.0, 4); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_grid(1.0, 0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_grid(1.0, 25); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { build_grid(std::nan(""), 4); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("grid coordinates form a symmetric arithmetic progression") {
  for (double hw : {0.5, 3.0, 12.0, 100.0}) {
    const Grid1D g = build_grid(hw, 9);
    const auto c = g.coordinates();
    double max_abs = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      max_abs = std::max(max_abs, std::abs(c[j]));
      CHECK(std::abs(c[j] + c[c.size() - 1 - j]) <= 4 * 1e-16 * hw);
      if (j) CHECK(std::abs((c[j] - c[j - 1]) - g.step()) <= 1e-12 * hw);
    }
    CHECK(std::abs(max_abs - hw) <= 4e-16 * hw);
  }
}

TEST_CASE("lattices and dual grids") {
  const Grid1D l = build_lattice(0.25, 4);
  CHECK(l.count() == 9);
  CHECK(l.at(4) == 0.0);
  CHECK(l.at(8) == 1.0);
  const Grid1D g = build_grid(12.0, 10);
  const Grid1D d = dual_grid(g);
  CHECK(d.count() == 1024);
  CHECK(d.step() == doctest::Approx(2.0 * oracle::kPi / (1024 * g.step())));
  CHECK(kind_of([] { build_lattice(1.0, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("sampled functions reject bad values") {
  const Grid1D g = build_grid(1.0, 2);
  CHECK(kind_of([&] { SampledFunction(g, {1.0, 2.0}); }) == ErrorKind::GridMismatch);
  CHECK(kind_of([&] { SampledFunction(g, {1.0, std::nan(""), 0.0, 0.0}); }) == ErrorKind::NonFinite);
  CHECK(kind_of([&] { SampledFunction(g, {1.0, HUGE_VAL, 0.0, 0.0}); }) == ErrorKind::NonFinite);
  const SampledFunction z = SampledFunction::zeros(g);
  CHECK(z.sup_abs() == 0.0);
  CHECK(z.l2_norm() == 0.0);
}

TEST_CASE("GSIndex invariants") {
  CHECK(kind_of([] { GSIndex(kInf, kInf, Regularity::Roumieu); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { GSIndex(0.0, 1.0, Regularity::Roumieu); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { GSIndex(-1.0, kInf, Regularity::Beurling); }) == ErrorKind::InvalidArgument);
  const GSIndex a = GSIndex::decay(0.5, Regularity::Roumieu);
  CHECK(a.one_parameter());
  CHECK(a.name() == "S_{0.5}");
  CHECK(GSIndex::fourier(2.0, Regularity::Beurling).name() == "Sigma^{2}");
  CHECK(GSIndex(0.6, 0.6, Regularity::Beurling).name() == "Sigma_{0.6}^{0.6}");
  CHECK_FALSE(GSIndex(0.6, 0.6, Regularity::Beurling).one_parameter());
}

TEST_CASE("catalog point values") {
  const Grid1D g(0.0, 1.0, 3);  // {-1, 0, 1}
  CHECK(catalog_eval(FunctionSpec::gaussian(1.0), g)[1].real() == 1.0);
  CHECK(std::abs(catalog_eval(FunctionSpec::bump(), g)[1].real() - 0.36787944117144233) < 1e-15);
  CHECK(std::abs(catalog_eval(FunctionSpec::hermite(1), g)[2].real() - 1.2130613194252668) < 1e-14);
  CHECK(catalog_eval(FunctionSpec::bump(), g)[0] == cplx(0.0));
  CHECK(catalog_eval(FunctionSpec::bump(), g)[2] == cplx(0.0));
}

TEST_CASE("catalog matches closed forms") {
  const Grid1D g = build_grid(6.0, 8);
  for (int k = 0; k <= 4; ++k) {
    const auto f = catalog_eval(FunctionSpec::hermite(k), g);
    for (std::size_t j = 0; j < g.count(); ++j) {
      const double x = g.at(j);
      const double want = oracle::hermite_poly(k, x) * std::exp(-0.5 * x * x);
      CHECK(std::abs(f[j].real() - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
  }
  const auto s = catalog_eval(FunctionSpec::subexp(0.5, 3.0), g);
  const auto t = catalog_eval(FunctionSpec::translate(FunctionSpec::gaussian(2.0), 1.5), g);
  const auto m = catalog_eval(FunctionSpec::modulate(FunctionSpec::gaussian(1.0), 2.0), g);
  const auto c = catalog_eval(FunctionSpec::scale(FunctionSpec::gaussian(1.0), 2.0), g);
  const auto p = catalog_eval(FunctionSpec::sum(FunctionSpec::poly(2), FunctionSpec::constant(-1.0)), g);
  for (std::size_t j = 0; j < g.count(); ++j) {
    const double x = g.at(j);
    CHECK(std::abs(s[j].real() - std::exp(-3.0 * x * x)) < 1e-15);
    CHECK(std::abs(t[j].real() - oracle::gauss(2.0, x - 1.5)) < 1e-15);
    CHECK(std::abs(m[j] - std::polar(oracle::gauss(1.0, x), 2.0 * x)) < 1e-15);
    CHECK(std::abs(c[j].real() - oracle::gauss(0.25, x)) < 1e-15);
    CHECK(std::abs(p[j].real() - (x * x - 1.0)) < 1e-12);
  }
}

TEST_CASE("bump vanishes exactly outside the unit interval") {
  for (int k : {1, 2, 5}) {
    const Grid1D g = build_grid(3.0, 11);
    const auto f = catalog_eval(FunctionSpec::bump(k), g);
    for (std::size_t j = 0; j < g.count(); ++j)
      if (std::abs(g.at(j)) >= 1.0) CHECK(f[j] == cplx(0.0));
  }
  CHECK(evaluate(FunctionSpec::bump(), 1.0) == cplx(0.0));
  CHECK(evaluate(FunctionSpec::bump(), -1.0) == cplx(0.0));
}

TEST_CASE("catalog evaluation is bit-deterministic") {
  const Grid1D g = build_grid(12.0, 10);
  const auto spec = FunctionSpec::sum(FunctionSpec::product(FunctionSpec::hermite(3), FunctionSpec::gaussian(2.0)),
                                      FunctionSpec::modulate(FunctionSpec::bump(2), 0.7));
  const auto a = catalog_eval(spec, g);
  const auto b = catalog_eval(spec, g);
  for (std::size_t j = 0; j < g.count(); ++j) CHECK(a[j] == b[j]);
}

TEST_CASE("malformed and out-of-domain specs") {
  const Grid1D g = build_grid(1.0, 3);
  CHECK(kind_of([&] { catalog_eval(FunctionSpec::gaussian(0.0), g); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { catalog_eval(FunctionSpec::subexp(0.0, 1.0), g); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { catalog_eval(FunctionSpec::subexp(-1.0, 1.0), g); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { catalog_eval(FunctionSpec::scale(FunctionSpec::gaussian(1.0), 0.0), g); }) ==
        ErrorKind::DomainError);
  FunctionSpec bad = FunctionSpec::gaussian(1.0);
  bad.params.push_back(2.0);
  CHECK(kind_of([&] { catalog_eval(bad, g); }) == ErrorKind::MalformedSpec);
  FunctionSpec inf = FunctionSpec::gaussian(1.0);
  inf.params[0] = kInf;
  CHECK(kind_of([&] { catalog_eval(inf, g); }) == ErrorKind::MalformedSpec);
}

TEST_CASE("pretty_print is canonical") {
  using FS = FunctionSpec;
  CHECK(pretty_print(FS::gaussian(1.0)) == "gaussian(1)");
  CHECK(pretty_print(FS::bump()) == "bump()");
  CHECK(pretty_print(FS::bump(3)) == "bump(3)");
  CHECK(pretty_print(FS::sum(FS::product(FS::hermite(3), FS::gaussian(2.0)), FS::product(FS::constant(0.5), FS::bump()))) ==
        "hermite(3)*gaussian(2) + 0.5*bump()");
  CHECK(pretty_print(FS::difference(FS::poly(1), FS::sum(FS::poly(2), FS::poly(3)))) == "poly(1) - (poly(2) + poly(3))");
  CHECK(pretty_print(FS::product(FS::sum(FS::poly(1), FS::poly(2)), FS::poly(3))) == "(poly(1) + poly(2))*poly(3)");
}

TEST_CASE("peetre_bound_check examples") {
  auto a = peetre_bound_check(3.7, 3.7, 3);
  CHECK(a.holds);
  CHECK(a.lhs == 1.0);
  auto b = peetre_bound_check(-4.0, 9.0, 0);
  CHECK(b.holds);
  CHECK(b.lhs == 1.0);
  CHECK(b.rhs == 1.0);
  auto c = peetre_bound_check(2.0, 1.0, 1);
  CHECK(c.holds);
  CHECK(c.lhs == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.rhs == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("subexp_triangle_check examples") {
  CHECK(subexp_triangle_constant(1.0) == 2.0);
  CHECK(subexp_triangle_constant(0.5) == 3.0);
  CHECK(subexp_triangle_constant(2.0) == 2.0);
  for (double y : {-5.0, 0.0, 2.5}) {
    auto r = subexp_triangle_check(0.0, y, 1.0);
    CHECK(r.lower_holds);
    CHECK(r.upper_holds);
  }
  auto r = subexp_triangle_check(1.0, 1.0, 1.0);
  CHECK(r.lower_holds);
  CHECK(r.upper_holds);
  auto q = subexp_triangle_check(4.0, 2.0, 0.5);
  CHECK(q.lower_holds);
  CHECK(q.upper_holds);
  CHECK(q.C_used == 3.0);
}

TEST_CASE("inequality fuzz (1e5 samples each)") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  std::uniform_int_distribution<int> n(0, 16);
  int bad = 0;
  for (int i = 0; i < 100000; ++i) bad += peetre_bound_check(u(rng), u(rng), n(rng)).holds ? 0 : 1;
  CHECK(bad == 0);
  const double ss[] = {0.25, 1.0 / 3.0, 0.5, 1.0, 2.0, 4.0};
  bad = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto c = subexp_triangle_check(u(rng), u(rng), ss[i % 6]);
    bad += (c.lower_holds && c.upper_holds) ? 0 : 1;
  }
  CHECK(bad == 0);
}

TEST_CASE("subexp triangle constant is not vacuous") {
  // Near-tight configurations: y = x / 2 for p > 1 and y = 0 otherwise.
  for (double s : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double p = 1.0 / s;
    const double C = subexp_triangle_constant(s);
    const double x = 10.0, y = p > 1.0 ? x / 2.0 : 0.0;
    const double mid = std::pow(std::abs(y), p) + std::pow(std::abs(y - x), p);
    const double outer = std::pow(x, p) + std::pow(std::abs(y), p);
    CHECK(mid >= outer / C);
    CHECK(mid <= outer * C);
  }
}
