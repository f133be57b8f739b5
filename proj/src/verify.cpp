#include "gstf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "gstf/catalog.hpp"
#include "gstf/classify.hpp"
#include "gstf/inequalities.hpp"
#include "gstf/toeplitz.hpp"
#include "gstf/transforms.hpp"
#include "gstf/witnesses.hpp"

namespace gstf {

namespace {

using FS = FunctionSpec;

class Suite {
 public:
  explicit Suite(std::string name, std::vector<CheckResult>& out) : name_(std::move(name)), out_(out) {}

  void at_most(const std::string& name, double value, double tol) { push(name, value, tol, "max", value <= tol); }
  void at_least(const std::string& name, double value, double tol) { push(name, value, tol, "min", value >= tol); }

 private:
  void push(const std::string& name, double value, double tol, const char* bound, bool ok) {
    out_.push_back({name_, name, value, tol, bound, ok && std::isfinite(value)});
  }
  std::string name_;
  std::vector<CheckResult>& out_;
};

double max_rel_diff(const SampledFunction& a, const SampledFunction& b) {
  double num = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) num = std::max(num, std::abs(a[j] - b[j]));
  const double den = std::max(a.sup_abs(), b.sup_abs());
  return den > 0.0 ? num / den : num;
}

SampledFunction scaled(const SampledFunction& f, cplx c) {
  std::vector<cplx> v(f.values().begin(), f.values().end());
  for (auto& x : v) x *= c;
  return SampledFunction(f.grid(), std::move(v));
}

SampledFunction unit(const SampledFunction& f) { return scaled(f, 1.0 / f.l2_norm()); }

void identities(std::vector<CheckResult>& out) {
  Suite s("identities", out);
  const Grid1D g = build_grid(12.0, 10);
  auto ev = [&](const FS& spec) { return catalog_eval(spec, g); };
  const SampledFunction gauss = ev(FS::gaussian(1.0));
  const TFGrid tf = default_tfgrid(g);
  const TFGrid lat{tf.x, build_lattice(dual_grid(g).step(), 46)};

  s.at_most("dft_gaussian_fixed_point", max_rel_diff(dft(gauss), catalog_eval(FS::gaussian(1.0), dual_grid(g))), 1e-10);
  {
    const SampledFunction h3 = ev(FS::hermite(3));
    s.at_most("dft_unitarity_hermite3", std::abs(dft(h3).l2_norm() - h3.l2_norm()) / h3.l2_norm(), 1e-12);
    s.at_most("idft_dft_inversion_hermite3", max_rel_diff(idft(dft(h3)), h3), 1e-10);
    s.at_most("moyal_hermite3", moyal_defect(h3, gauss, tf), 1e-6);
  }
  s.at_most("stft_inversion_hermite2", stft_inversion_defect(ev(FS::hermite(2)), gauss, tf), 1e-5);
  {
    const TFR V = stft(gauss, gauss, tf);
    double dev = 0.0;
    for (std::size_t i = 0; i < V.rows(); ++i) {
      const double x = tf.x.at(i);
      for (std::size_t k = 0; k < V.cols(); ++k) {
        const double xi = tf.xi.at(k);
        dev = std::max(dev, std::abs(std::abs(V(i, k)) - std::exp(-(x * x + xi * xi) / 4.0) / std::sqrt(2.0)));
      }
    }
    s.at_most("stft_gaussian_closed_form", dev, 1e-6);
  }
  {
    // |V_phi f(x, xi)| = |V_phihat fhat(xi, -x)|.
    const SampledFunction f = ev(FS::hermite(2));
    const TFR V = stft(f, gauss, lat);
    const TFR W = stft(dft(f), dft(gauss), TFGrid{lat.xi, lat.x});
    double dev = 0.0;
    for (std::size_t i = 0; i < V.rows(); ++i)
      for (std::size_t k = 0; k < V.cols(); ++k)
        dev = std::max(dev, std::abs(std::abs(V(i, k)) - std::abs(W(k, V.rows() - 1 - i))));
    s.at_most("stft_fourier_symmetry_hermite2", dev / V.sup_abs(), 1e-6);
  }
  s.at_most("twisted_convolution_gaussian", twisted_convolution_defect(gauss, gauss, gauss, gauss, lat, 2), 1e-4);
  s.at_most("twisted_convolution_hermite1", twisted_convolution_defect(ev(FS::hermite(1)), gauss, gauss, gauss, lat, 2),
            1e-4);
  {
    // Gaussians sharper than gaussian(1.2) leave STFT mass on the frequency boundary.
    const std::vector<FS> pool = {FS::gaussian(1.0), FS::gaussian(0.8),
                                  FS::gaussian(1.2), FS::hermite(1),
                                  FS::hermite(2),    FS::hermite(3),
                                  FS::translate(FS::gaussian(1.0), 0.5), FS::modulate(FS::gaussian(1.0), 1.0)};
    std::mt19937_64 rng(20240607);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    double worst = 0.0;
    std::set<int> signs;
    for (int q = 0; q < 10; ++q) {
      const auto d = stft_product_transform_defect(ev(pool[pick(rng)]), ev(pool[pick(rng)]), ev(pool[pick(rng)]),
                                                   ev(pool[pick(rng)]), lat);
      worst = std::max(worst, std::min(d.defect_plus, d.defect_minus));
      signs.insert(d.winning_sign);
    }
    s.at_most("product_transform_min_defect_10_quadruples", worst, 1e-4);
    s.at_most("product_transform_distinct_winning_signs", static_cast<double>(signs.size()), 1.0);
    s.at_most("product_transform_winning_sign_is_minus", *signs.begin() == -1 ? 0.0 : 1.0, 0.0);
  }
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    std::uniform_int_distribution<int> n(0, 16);
    double violations = 0;
    for (int i = 0; i < 100000; ++i)
      if (!peetre_bound_check(u(rng), u(rng), n(rng)).holds) ++violations;
    s.at_most("peetre_fuzz_1e5_violations", violations, 0.0);
    const double ss[] = {0.25, 1.0 / 3.0, 0.5, 1.0, 2.0, 4.0};
    violations = 0;
    for (int i = 0; i < 100000; ++i) {
      const auto c = subexp_triangle_check(u(rng), u(rng), ss[i % 6]);
      if (!c.lower_holds || !c.upper_holds) ++violations;
    }
    s.at_most("subexp_triangle_fuzz_1e5_violations", violations, 0.0);
  }
}

void classification(std::vector<CheckResult>& out) {
  Suite s("classification", out);
  const Grid1D g = build_grid(12.0, 10);
  auto ev = [&](const FS& spec) { return catalog_eval(spec, g); };
  auto is = [](const EnvelopeReport& r, Verdict v) { return r.verdict == v ? 1.0 : 0.0; };

  s.at_most("rate_gaussian1_s_half", std::abs(fit_decay_rate(ev(FS::gaussian(1.0)), 0.5).rate - 0.5), 1e-9);
  s.at_most("rate_subexp_1_2_s_one", std::abs(fit_decay_rate(ev(FS::subexp(1.0, 2.0)), 1.0).rate - 2.0), 1e-9);
  s.at_least("gaussian1_member_S_half",
             is(classify_function(ev(FS::gaussian(1.0)), GSIndex::decay(0.5, Regularity::Roumieu)), Verdict::Member), 1);
  s.at_least("gaussian1_not_member_Sigma_half",
             is(classify_function(ev(FS::gaussian(1.0)), GSIndex::decay(0.5, Regularity::Beurling)), Verdict::NotMember),
             1);
  {
    const auto cat = reference_catalog(g);
    const auto& lorentz = std::find_if(cat.begin(), cat.end(), [](auto& n) { return n.name == "lorentzian"; })->f;
    s.at_least("lorentzian_not_member_S_half",
               is(classify_function(lorentz, GSIndex::decay(0.5, Regularity::Roumieu)), Verdict::NotMember), 1);
    double mismatches = 0;
    for (double sv : {0.5, 1.0, 2.0})
      for (const auto& [name, f] : cat)
        if (classify_function(f, GSIndex::decay(sv, Regularity::Roumieu)).verdict !=
            classify_function(dft(f), GSIndex::fourier(sv, Regularity::Roumieu)).verdict)
          ++mismatches;
    s.at_most("fourier_exchange_mismatches_36_pairs", mismatches, 0.0);
  }
  {
    const SampledFunction bump = catalog_eval(FS::bump(), build_grid(2.0, 12));
    double members = 0;
    for (double sv : {0.25, 1.0, 2.0})
      members += is(classify_function(bump, GSIndex::decay(sv, Regularity::Roumieu)), Verdict::Member);
    s.at_least("bump_member_S_s_three_indices", members, 3.0);
  }
  {
    double failures = 0, witnesses = 0, wrong_trivial = 0;
    for (auto reg : {Regularity::Roumieu, Regularity::Beurling})
      for (double sv : {0.2, 0.3, 0.5, 0.6, 1.0, 1.5, 3.0})
        for (double sg : {0.2, 0.3, 0.5, 0.6, 1.0, 1.5, 3.0}) {
          const GSIndex idx(sv, sg, reg);
          const bool trivial = reg == Regularity::Beurling ? sv + sg <= 1.0 : sv + sg < 1.0;
          try {
            const Witness w = make_witness(idx);
            ++witnesses;
            if (trivial) ++wrong_trivial;
            if (!check_witness(w, idx).passed) ++failures;
          } catch (const Error& e) {
            if ((e.kind() == ErrorKind::TrivialSpace) != trivial) ++wrong_trivial;
          }
        }
    s.at_least("witnesses_returned", witnesses, 1.0);
    s.at_most("witness_self_check_failures", failures, 0.0);
    s.at_most("trivial_space_misreports", wrong_trivial, 0.0);
    double passing = 0;
    for (double sv : {0.25, 0.5, 0.99}) passing += static_cast<double>(boundary_triviality_demo(sv).passing);
    s.at_most("boundary_demo_passing_candidates", passing, 0.0);
  }
}

void toeplitz(std::vector<CheckResult>& out) {
  Suite s("toeplitz", out);
  const Grid1D g = build_grid(12.0, 10);
  auto ev = [&](const FS& spec) { return catalog_eval(spec, g); };
  const TFGrid tf = default_tfgrid(g);
  const SampledFunction w = unit(ev(FS::gaussian(1.0)));
  const TFR one = constant_symbol(tf);

  for (const auto& [name, spec] : {std::pair{"gaussian1", FS::gaussian(1.0)}, std::pair{"hermite2", FS::hermite(2)}}) {
    const SampledFunction f = ev(spec);
    s.at_most(std::string("identity_symbol_") + name, max_rel_diff(apply_toeplitz(one, w, w, f), f), 1e-5);
  }
  {
    const SampledFunction f = ev(FS::gaussian(1.0));
    s.at_most("disk_symbol_R8_gaussian1", max_rel_diff(apply_toeplitz(disk_symbol(tf, 8.0), w, w, f), f), 1e-4);
  }
  {
    const SampledFunction f = ev(FS::hermite(1));
    const SampledFunction h = ev(FS::gaussian(2.0));
    const TFR a = gaussian_symbol(tf);
    const TFR b = polynomial_symbol(tf);
    const cplx alpha(0.3, -1.2), beta(-2.0, 0.7);
    // T(alpha f + beta h) against alpha T f + beta T h.
    std::vector<cplx> comb(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) comb[j] = alpha * f[j] + beta * h[j];
    const SampledFunction lhs = apply_toeplitz(a, w, w, SampledFunction(g, comb));
    const SampledFunction tf1 = apply_toeplitz(a, w, w, f), tf2 = apply_toeplitz(a, w, w, h);
    for (std::size_t j = 0; j < f.size(); ++j) comb[j] = alpha * tf1[j] + beta * tf2[j];
    s.at_most("linearity_in_f", max_rel_diff(lhs, SampledFunction(g, comb)), 1e-10);
    std::vector<cplx> sym(a.values().size());
    for (std::size_t j = 0; j < sym.size(); ++j) sym[j] = alpha * a.values()[j] + beta * b.values()[j];
    const SampledFunction lhs2 = apply_toeplitz(TFR(tf, sym), w, w, f);
    const SampledFunction ta = apply_toeplitz(b, w, w, f);
    for (std::size_t j = 0; j < f.size(); ++j) comb[j] = alpha * tf1[j] + beta * ta[j];
    s.at_most("linearity_in_symbol", max_rel_diff(lhs2, SampledFunction(g, comb)), 1e-10);
  }
  s.at_most("adjoint_symmetry_residual",
            toeplitz_adjoint_residual(gaussian_symbol(tf), w, unit(ev(FS::gaussian(2.0))), ev(FS::hermite(1)),
                                      ev(FS::hermite(3))),
            1e-6);
  {
    double worst = kInf;
    for (const TFR& a : {gaussian_symbol(tf), disk_symbol(tf, 3.0), polynomial_symbol(tf)})
      for (const FS& spec : {FS::gaussian(1.0), FS::hermite(1), FS::hermite(3), FS::translate(FS::gaussian(2.0), 1.0)})
        worst = std::min(worst, toeplitz_quadratic_form(a, w, ev(spec)));
    s.at_least("positivity_min_quadratic_form", worst, -1e-10);
  }
  {
    std::vector<SampledFunction> testset;
    for (const FS& spec : {FS::gaussian(1.0), FS::gaussian(2.0), FS::hermite(1), FS::hermite(2), FS::hermite(3)})
      testset.push_back(ev(spec));
    const GSIndex idx = GSIndex::decay(0.5, Regularity::Roumieu);
    const auto rep = continuity_probe(gaussian_symbol(tf), w, w, testset, idx);
    s.at_least("continuity_gaussian_symbol_member_fraction",
               static_cast<double>(rep.members_out) / static_cast<double>(rep.entries.size()), 1.0);
    const auto poly = continuity_probe(polynomial_symbol(tf), w, w, testset, idx);
    s.at_least("continuity_polynomial_symbol_member_fraction",
               static_cast<double>(poly.members_out) / static_cast<double>(poly.entries.size()), 1.0);
  }
}

}  // namespace

std::vector<NamedFunction> reference_catalog(const Grid1D& grid) {
  std::vector<NamedFunction> out;
  auto add = [&](const FS& spec) { out.push_back({pretty_print(spec), catalog_eval(spec, grid)}); };
  add(FS::gaussian(0.5));
  add(FS::gaussian(1.0));
  add(FS::gaussian(2.0));
  add(FS::hermite(1));
  add(FS::hermite(2));
  add(FS::hermite(3));
  add(FS::bump());
  add(FS::subexp(1.0, 2.0));
  add(FS::subexp(2.0, 1.0));
  std::vector<cplx> v;
  for (double x : grid.coordinates()) v.emplace_back(1.0 / (1.0 + x * x));
  out.push_back({"lorentzian", SampledFunction(grid, std::move(v))});
  add(FS::translate(FS::gaussian(1.0), 0.5));
  add(FS::modulate(FS::gaussian(1.0), 2.0));
  return out;
}

TFGrid default_tfgrid(const Grid1D& grid) {
  const std::size_t stride = grid.count() >= 128 ? 8 : 1;
  const std::size_t half = grid.count() / stride / 2 - (grid.count() % 2 == 0 ? 1 : 0);
  return {build_lattice(static_cast<double>(stride) * grid.step(), half), dual_grid(grid)};
}

std::vector<CheckResult> run_verification(std::string_view suite) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (!all && suite != "identities" && suite != "classification" && suite != "toeplitz")
    throw Error(ErrorKind::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
  if (all || suite == "identities") identities(out);
  if (all || suite == "classification") classification(out);
  if (all || suite == "toeplitz") toeplitz(out);
  return out;
}

}  // namespace gstf
